use super::*;
use crate::quadforms::SpaceKind;

fn tower(n: usize) -> Tower {
    Tower::new(n, Options::default()).unwrap()
}

fn lit(t: &Tower, s: &str) -> Polynomial {
    parse(t.table(), s)
}

#[test]
fn xi_closed_forms() {
    let ctx = XiContext::new(2, SpaceKind::OddNonsingular).unwrap();
    for j in 1..=4 {
        assert_eq!(ctx.xi[j as usize], ctx.closed_form(j).unwrap());
    }
    assert_eq!(ctx.xi[2].to_string(), Polynomial::parse("x1^4*x2+x1*x2^4+x3^4*x4+x3*x4^4", &ctx.table, Ring::F2).unwrap().to_string());
    let x0 = ctx.table.require("x0").unwrap();
    assert!(ctx.xi[1..].iter().all(|p| p.degree_in(x0) == 0));
}

#[test]
fn dickson_n1() {
    let ctx = XiContext::new(1, SpaceKind::OddNonsingular).unwrap();
    let d = DicksonData::new(&ctx).unwrap();
    let p = |s| Polynomial::parse(s, &ctx.table, Ring::F2).unwrap();
    assert_eq!(d.c[1], p("x1^2+x1*x2+x2^2"));
    assert_eq!(d.c[0], p("x1^2*x2+x1*x2^2"));
    assert!(d.c[2].is_one());
    assert_eq!(d.c[0], ctx.xi[1]);
}

#[test]
fn lambdas() {
    let t = tower(2);
    assert_eq!(t.lambda().unwrap(), &lit(&t, "xi1^5+xi2^3+xi1^2*xi3"));
    assert_eq!(t.lambda_i(2).unwrap(), &lit(&t, "xi4*xi2^2+xi3^3+xi1^9"));
    assert_eq!(t.lambda_i(0).unwrap(), &t.lambda().unwrap().square().unwrap());
    assert_eq!(t.lambda_i(4).unwrap(), t.lambda().unwrap());
    assert_eq!(tower(1).lambda_i(1).unwrap(), &lit(&tower(1), "xi2"));
    for n in 1..=4 {
        let a = xi::lambda(n, LambdaMethod::Pfaffian).unwrap();
        let b = xi::lambda(n, LambdaMethod::Matchings).unwrap();
        assert_eq!(a, b);
    }
    assert_eq!(xi::lambda(4, LambdaMethod::Matchings).unwrap().len(), 105);
}

#[test]
fn lambda_i_by_steenrod_matches_pfaffian() {
    let t = tower(2);
    for i in 0..=4 {
        assert_eq!(&t.lambda_i_steenrod(i).unwrap(), t.lambda_i(i).unwrap(), "i={i}");
    }
}

#[test]
fn omega_two() {
    let t = tower(1);
    assert_eq!(t.omega().unwrap(), &lit(&t, "xi1^2*X^4+xi2^2*X^2+xi1^4*X+xi1^3*xi2"));
    let pm = t.omega_pm().unwrap();
    assert_eq!(pm.minus, lit(&t, "xi1*X+xi2"));
    assert_eq!(pm.plus, lit(&t, "xi1*X^3+xi2*X^2+xi1^3"));
    assert_eq!(pm.alpha_plus[1], lit(&t, "X^3+xi1^2"));
}

#[test]
fn omega_four() {
    let t = tower(2);
    let x16 = t.omega().unwrap().coefficient_in(t.table().require("X").unwrap(), 16);
    assert_eq!(x16, t.lambda().unwrap().square().unwrap());
    let pm = t.omega_pm().unwrap();
    assert_eq!(pm.alpha_minus[2], lit(&t, "X^6+xi1^2*X^3+xi2*xi1*X^2+xi2^2*X+xi3*xi1"));
    assert_eq!(&pm.plus * &pm.minus, *t.omega().unwrap());
}

#[test]
fn chern_examples() {
    let t = tower(1);
    assert_eq!(t.q_abstract(false).unwrap(), lit(&t, "X+c1"));
    assert_eq!(t.q_abstract(true).unwrap(), lit(&t, "X^3+c1*X^2+xi1^2"));
    let t2 = tower(2);
    assert_eq!(t2.p_abstract(false).unwrap(), lit(&t2, "t^6+xi0*t^4+xi1*t^3+d3*t^2+xi2*t+xi1*xi0*t+d2"));
    let ch = t2.chern(SpaceKind::OddNonsingular).unwrap();
    assert_eq!((ch.a_plus, ch.a_minus), (10, 6));
}

#[test]
fn ke_and_jf_n2() {
    let t = tower(2);
    let ke = t.ke().unwrap();
    let c1 = ke.k.get(1, 0) * &t.var("c2") + ke.k.get(1, 1) * &t.var("c3") + ke.e.get(1, 0);
    assert_eq!(c1, lit(&t, "xi1^2*c3+xi3*xi2+xi2*xi1^3"));
    assert_eq!(ke.e.get(0, 0), t.lambda().unwrap());
    let jf = t.jf().unwrap();
    assert_eq!(jf.c_in_d(0, t.table()).unwrap(), lit(&t, "d2^2+xi0^2*d3^2+xi3*xi1+xi2^2*xi0"));
    assert_eq!(jf.c_in_d(1, t.table()).unwrap(), lit(&t, "d3^2+xi2*xi1+xi1^2*xi0+xi0^4"));
    assert!(jf.j.get(0, 0).is_one() && jf.j.get(1, 1).is_one());
}

#[test]
fn relations_n2() {
    let t = tower(2);
    let odd = t.relations(RelationKind::OOdd).unwrap();
    assert_eq!(odd.relators.len(), 1);
    assert_eq!(odd.relators[0], lit(&t, "xi3+xi1*d2+xi2*d3+xi1*xi0*d3+xi2*xi0^2+xi1^3"));
    assert_eq!(odd.claimed_dets["T"], lit(&t, "xi2+xi1*xi0"));
    assert_eq!(odd.claimed_dets["S"], lit(&t, "xi1"));
    let plus = t.relations(RelationKind::OPlus).unwrap();
    assert_eq!(plus.relations().len(), 1);
    assert_eq!(plus.relators[1], lit(&t, "xi0^2*d2+xi1^2*d3+xi2^2+xi2*xi1*xi0"));
    for kind in RelationKind::ALL {
        assert!(t.relations(kind).unwrap().residues_checked);
    }
}

#[test]
fn n1_systems_are_trivial() {
    let t = tower(1);
    assert!(t.relations(RelationKind::OOdd).unwrap().relations().is_empty());
    assert!(t.relations(RelationKind::OMinus).unwrap().relations().is_empty());
}

#[test]
fn identities_n1_n2() {
    for n in 1..=2 {
        let t = tower(n);
        for name in IDENTITIES {
            let r = verify_identity(name, &t).unwrap();
            assert!(r.passed, "{name} n={n}: {:?}", r.diff);
            assert!(!r.checks.is_empty(), "{name}");
        }
    }
}

#[test]
fn gates() {
    let t = Tower::new(3, Options::default()).unwrap();
    assert!(matches!(t.omega(), Err(InvariantError::SlowGated { .. })));
    assert!(t.lambda().is_ok());
    assert!(matches!(verify_identity("nope", &t), Err(InvariantError::UnknownIdentity(_))));
}
