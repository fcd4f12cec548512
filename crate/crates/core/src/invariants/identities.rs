use crate::polyring::{Polynomial, Ring};
use crate::quadforms::{even_families, SpaceKind};

use super::express::express_in_xi;
use super::tower::{all_kinds, Tower};
use super::{check_eq, xi_name, InvariantError, Result};

/// Registered identity names.
pub const IDENTITIES: &[&str] = &[
    "omega-cube",
    "p-squared",
    "nice-formulae",
    "caroline",
    "carolinex",
    "omega-vanishing",
    "mis1-restriction",
    "middle-of-omega",
    "squarexi",
    "wu-dickson",
    "lambda-sq-in-S",
    "omega-c0sq-Q",
    "alpha-odd-part",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    /// Sub-claims that were evaluated, in order.
    pub checks: Vec<String>,
    pub diff: Option<String>,
}

/// Evaluates a registered identity exactly. A false identity is reported with
/// `passed = false`; gating and construction problems are errors.
pub fn verify_identity(name: &str, tower: &Tower) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    let outcome = match name {
        "omega-cube" => omega_cube(tower, &mut checks),
        "p-squared" => p_squared(tower, &mut checks),
        "nice-formulae" => nice_formulae(tower, &mut checks),
        "caroline" => caroline(tower, &mut checks).and_then(|_| carolinex(tower, &mut checks)),
        "carolinex" => carolinex(tower, &mut checks),
        "omega-vanishing" => omega_vanishing(tower, &mut checks),
        "mis1-restriction" => mis1(tower, &mut checks),
        "middle-of-omega" => middle(tower, &mut checks),
        "squarexi" => squarexi(tower, &mut checks),
        "wu-dickson" => wu_dickson(tower, &mut checks),
        "lambda-sq-in-S" => lambda_in_s(tower, &mut checks),
        "omega-c0sq-Q" => omega_c0sq_q(tower, &mut checks),
        "alpha-odd-part" => alpha_odd(tower, &mut checks),
        other => return Err(InvariantError::UnknownIdentity(other.to_string())),
    };
    let (passed, diff) = match outcome {
        Ok(()) => (true, None),
        Err(InvariantError::IdentityFailed { name, diff }) => (false, Some(format!("{name}: {diff}"))),
        Err(e) => return Err(e),
    };
    Ok(IdentityReport { name: name.to_string(), n: tower.n(), passed, checks, diff })
}

fn eq(checks: &mut Vec<String>, what: String, lhs: &Polynomial, rhs: &Polynomial) -> Result<()> {
    check_eq(&what, lhs, rhs)?;
    checks.push(what);
    Ok(())
}

/// Identities expanded in S with Chern data stop at n = 2.
fn s_gate(tower: &Tower, what: &'static str) -> Result<()> {
    if tower.n() > 2 {
        return Err(InvariantError::SizeLimitExceeded { what, n: tower.n(), limit: 2 });
    }
    Ok(())
}

const ODD: SpaceKind = SpaceKind::OddNonsingular;

fn omega_cube(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    let pm = tower.omega_pm()?;
    let lhs = tower.lower_omega(true)?.square()? * &pm.minus + tower.lower_omega(false)?.square()? * &pm.plus;
    eq(checks, "(Ω⁺_{2n-2})²Ω⁻ + (Ω⁻_{2n-2})²Ω⁺ = Λ³".into(), &lhs, &tower.lambda()?.pow(3)?)
}

fn p_squared(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "p-squared")?;
    for kind in all_kinds() {
        let ctx = tower.ctx(kind)?;
        let ch = tower.chern(kind)?;
        let dk = tower.dickson(kind)?;
        for plus in [false, true] {
            let s = if plus { "+" } else { "-" };
            eq(checks, format!("{kind:?}: (P{s})² = Q{s}(t²+ξ₀)"), &ch.get_p(plus).square()?, &ch.q_at(ch.get_q(plus), ctx)?)?;
        }
        let mut rhs = dk.eval(&ctx.var("t"))?;
        if kind == ODD {
            rhs = rhs + dk.eval(&ctx.var("x0"))?;
        }
        eq(checks, format!("{kind:?}: P⁻P⁺ = D(t+x₀)"), &(&ch.p_minus * &ch.p_plus), &rhs)?;
    }
    Ok(())
}

/// Ω^±_{2n−2}(t²+ξ₀) in S.
fn lower_at_t(tower: &Tower, plus: bool) -> Result<Polynomial> {
    let arg = tower.var("t").square()? + tower.var("xi0");
    let p = tower.lower_omega(plus)?.substitute(&[("X", &arg)], tower.table())?;
    tower.to_s(&p, ODD)
}

fn nice_formulae(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "nice-formulae")?;
    let ctx = tower.ctx(ODD)?;
    let ch = tower.chern(ODD)?;
    let dk = tower.dickson(ODD)?;
    let (op, om) = (lower_at_t(tower, true)?, lower_at_t(tower, false)?);
    let lam = tower.to_s(tower.lambda()?, ODD)?;
    let dd = dk.eval(&ctx.var("t"))? + dk.eval(&ctx.var("x0"))?;
    eq(checks, "Ω⁺(t²+ξ₀)P⁻ + Ω⁻(t²+ξ₀)P⁺ = Λ".into(), &(&op * &ch.p_minus + &om * &ch.p_plus), &lam)?;
    let qm = ch.q_at(&ch.q_minus, ctx)?;
    let qp = ch.q_at(&ch.q_plus, ctx)?;
    eq(checks, "ΛP⁻ = Ω⁺(t²+ξ₀)Q⁻(t²+ξ₀) + Ω⁻(t²+ξ₀)(D(t)+D(x₀))".into(), &(&lam * &ch.p_minus), &(&op * &qm + &om * &dd))?;
    eq(checks, "ΛP⁺ = Ω⁻(t²+ξ₀)Q⁺(t²+ξ₀) + Ω⁺(t²+ξ₀)(D(t)+D(x₀))".into(), &(&lam * &ch.p_plus), &(&om * &qp + &op * &dd))
}

fn caroline(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "caroline")?;
    let n = tower.n();
    let ctx = tower.ctx(ODD)?;
    let ch = tower.chern(ODD)?;
    let t_idx = ctx.table.require("t")?;
    let top = (1usize << (2 * n - 1)) - (1 << (n - 1));
    let om0 = tower.to_s(&tower.at_xi0(&tower.lower_omega(false)?)?, ODD)?;
    let om_t = lower_at_t(tower, false)?;
    let p0 = ch.constant(false);
    let zero = Polynomial::zero(&ctx.table, Ring::F2);
    for j in 0..=top + 1 {
        let (pj, pj2) = if j <= top {
            let e = (top - j) as u16;
            (ch.p_minus.coefficient_in(t_idx, e), if j == 0 { zero.clone() } else { om_t.coefficient_in(t_idx, e) })
        } else {
            (zero.clone(), zero.clone())
        };
        let lhs = ctx.steenrod.sq(j as u32, &om0)?;
        eq(checks, format!("Sq^{j}Ω⁻(ξ₀) = Ω⁻(ξ₀)P_{j} + P'_{j}P⁻(0)"), &lhs, &(&om0 * &pj + &pj2 * &p0))?;
    }
    Ok(())
}

fn carolinex(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "carolinex")?;
    let n = tower.n();
    if n < 2 {
        checks.push("carolinex needs n ≥ 2".into());
        return Ok(());
    }
    let v = |s: &str| tower.var(s);
    let expr = tower.at_xi0(&tower.lower2_omega(false)?)?.square()? * v(&xi_name(2 * n - 1))
        + tower.at_xi0(&tower.lower_omega(false)?)? * v(&format!("d{}", 2 * n - 1))
        + tower.lower_lambda()? * v(&format!("d{n}"));
    let s = tower.to_s(&expr, ODD)?;
    let names: Vec<String> = (0..=2 * n - 2).map(xi_name).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    match express_in_xi(&s, &tower.generators(&names, ODD)?, false, tower.table()) {
        Ok(e) => {
            checks.push(format!("carolinex element = {e} in F₂[ξ₀…ξ_{}]", 2 * n - 2));
            Ok(())
        }
        Err(InvariantError::NotInSubring { .. }) => Err(InvariantError::IdentityFailed {
            name: "carolinex".into(),
            diff: format!("element is not in F₂[ξ₀…ξ_{}]", 2 * n - 2),
        }),
        Err(e) => Err(e),
    }
}

fn omega_vanishing(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "omega-vanishing")?;
    let kind = SpaceKind::EvenPlus;
    let ctx = tower.ctx(kind)?;
    let space = &ctx.space;
    let (plus, _) = even_families(space)?;
    let pm = tower.omega_pm()?;
    let to_s = |p: &Polynomial| tower.to_s(p, kind);
    let (op, om) = (to_s(&pm.plus)?, to_s(&pm.minus)?);
    let (lp, lm) = (to_s(&tower.lower_omega(true)?)?, to_s(&tower.lower_omega(false)?)?);
    let c0 = &tower.dickson(kind)?.c[0];
    let one = Polynomial::one(&ctx.table, Ring::F2);
    let all = space.all_vectors();
    for &y in &all {
        // q = ξ₊ + y² has the type of y; q + x² has the type of x + y
        let q = &ctx.xi[0] + &space.linear_form(y).square()?;
        let q_plus = plus.contains(&y);
        let at = |p: &Polynomial| -> Result<Polynomial> { Ok(p.substitute(&[("X", &q)], &ctx.table)?) };
        let same: Vec<u32> = all.iter().copied().filter(|&x| plus.contains(&(x ^ y)) == q_plus).collect();
        let other: Vec<u32> = all.iter().copied().filter(|&x| plus.contains(&(x ^ y)) != q_plus).collect();
        let prod = |set: &[u32], square: bool, skip_zero: bool| -> Result<Polynomial> {
            let mut acc = one.clone();
            for &x in set.iter().filter(|&&x| !(skip_zero && x == 0)) {
                let f = space.linear_form(x);
                acc = acc * if square { f.square()? } else { f };
            }
            Ok(acc)
        };
        let s = if q_plus { "+" } else { "-" };
        let (vanish, full, low) = if q_plus { (&op, &om, &lp) } else { (&om, &op, &lm) };
        eq(checks, format!("y={y:b} ({s}type): Ω{s}(q) = 0"), &at(vanish)?, &Polynomial::zero(&ctx.table, Ring::F2))?;
        eq(checks, format!("y={y:b}: Ω(q) of the other sign = c₀∏x²"), &at(full)?, &(c0 * &prod(&other, true, false)?))?;
        eq(checks, format!("y={y:b}: Ω{s}_{{2n-2}}(q) = ∏x"), &at(low)?, &prod(&same, false, true)?)?;
    }
    Ok(())
}

fn mis1(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "mis1-restriction")?;
    let n = tower.n();
    let ctx = tower.ctx(ODD)?;
    let ch = tower.chern(ODD)?;
    let t = ctx.var("t");
    let q = ch.q_minus.substitute(&[("X", &t.square()?)], &ctx.table)?;
    let even: Vec<usize> = (1..=n).map(|k| ctx.table.require(&format!("x{}", 2 * k))).collect::<Result<_, _>>()?;
    let restricted = q.mod_variables(&even);
    // W* has coordinates x1, x3, …
    let odd: Vec<Polynomial> = (0..n).map(|k| ctx.var(&format!("x{}", 2 * k + 1))).collect();
    let mut prod = Polynomial::one(&ctx.table, Ring::F2);
    for mask in 1u32..1 << n {
        let x = (0..n).filter(|k| mask >> k & 1 == 1).fold(Polynomial::zero(&ctx.table, Ring::F2), |a, k| a + &odd[k]);
        prod = prod * (&t + &x);
    }
    eq(checks, "Q⁻(t²)|W = (∏_{0≠x∈W*}(t+x))^{2^n}".into(), &restricted, &prod.frobenius(n as u32)?)
}

fn middle(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    let n = tower.n();
    let table = tower.table();
    let pm = tower.omega_pm()?;
    let idx = |names: &[String]| names.iter().map(|s| table.require(s)).collect::<Result<Vec<_>, _>>();
    let mut low: Vec<String> = vec!["X".into()];
    low.extend((1..n).map(xi_name));
    let low = idx(&low)?;
    let xi_n = tower.var(&xi_name(n));
    eq(checks, "Ω⁺ ≡ ξ_n^{2^{n+1}-1} mod X, ξ₁…ξ_{n-1}".into(), &pm.plus.mod_variables(&low), &xi_n.pow((1 << (n + 1)) - 1)?)?;
    let lnn = tower.lambda_i(n)?.mod_variables(&low);
    eq(checks, "Ω⁻ ≡ Λ_{2n,n} mod X, ξ₁…ξ_{n-1}".into(), &pm.minus.mod_variables(&low), &lnn)?;
    let low2 = idx(&(1..=n).map(xi_name).collect::<Vec<_>>())?;
    let xi_n1 = tower.var(&xi_name(n + 1));
    eq(checks, "Ω⁻ ≡ ξ_{n+1}^{2^n-1} mod ξ₁…ξ_n".into(), &pm.minus.mod_variables(&low2), &xi_n1.pow((1 << n) - 1)?)
}

fn squarexi(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    let ctx = tower.ctx(ODD)?;
    let xi = &ctx.xi;
    for i in 0..=2 * tower.n() {
        let mut rhs = &xi[i] + &xi[i + 1] + xi[i].square()?;
        if i >= 2 {
            rhs = rhs + xi[i - 1].square()?;
        }
        eq(checks, format!("Sq•ξ_{i}"), &ctx.steenrod.total_sq(&xi[i])?, &rhs)?;
    }
    Ok(())
}

fn wu_dickson(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    let ctx = tower.ctx(ODD)?;
    let c = &tower.dickson(ODD)?.c;
    let top = 1u32 << (2 * tower.n());
    let zero = Polynomial::zero(&ctx.table, Ring::F2);
    for j in 1..top {
        let lhs = ctx.steenrod.sq(j, &c[0])?;
        let rhs = match (0..=2 * tower.n()).find(|&i| top - (1 << i) == j) {
            Some(i) => &c[0] * &c[i],
            None => zero.clone(),
        };
        eq(checks, format!("Sq^{j}c₀"), &lhs, &rhs)?;
    }
    Ok(())
}

fn lambda_in_s(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    let c = &tower.dickson(ODD)?.c;
    eq(checks, "Λ_{2n} = c₀".into(), &tower.to_s(tower.lambda()?, ODD)?, &c[0])?;
    if tower.checks_in_s() {
        for (i, li) in tower.lambda_is()?.iter().enumerate() {
            eq(checks, format!("Λ_{{2n,{i}}} = c₀c_{i}"), &tower.to_s(li, ODD)?, &(&c[0] * &c[i]))?;
        }
    }
    Ok(())
}

fn omega_c0sq_q(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    s_gate(tower, "omega-c0sq-Q")?;
    let ctx = tower.ctx(ODD)?;
    let ch = tower.chern(ODD)?;
    let c0 = &tower.dickson(ODD)?.c[0];
    let om = tower.to_s(tower.omega()?, ODD)?;
    eq(checks, "Ω = c₀²Q".into(), &om, &(c0.square()? * &ch.q_plus * &ch.q_minus))?;
    let pm = tower.omega_pm()?;
    eq(checks, "Ω⁺ = c₀Q⁺".into(), &tower.to_s(&pm.plus, ODD)?, &(c0 * &ch.q_plus))?;
    eq(checks, "Ω⁻ = c₀Q⁻".into(), &tower.to_s(&pm.minus, ODD)?, &(c0 * &ch.q_minus))?;
    let arg = &ctx.xi[0] + &ctx.var("x0").square()?;
    let at = om.substitute(&[("X", &arg)], &ctx.table)?;
    eq(checks, "Ω(ξ₀+x₀²) = 0".into(), &at, &Polynomial::zero(&ctx.table, Ring::F2))
}

fn alpha_odd(tower: &Tower, checks: &mut Vec<String>) -> Result<()> {
    let n = tower.n();
    let pm = tower.omega_pm()?;
    let x_idx = tower.table().require("X")?;
    for plus in [true, false] {
        let a = &pm.alphas(plus)[n];
        let odd: Vec<_> = a.terms().iter().filter(|(m, _)| m.exponent(x_idx) % 2 == 1).map(|(m, c)| (m.clone(), *c as u64)).collect();
        let odd = Polynomial::from_terms(tower.table(), Ring::F2, odd);
        let s = if plus { "+" } else { "-" };
        eq(checks, format!("odd X-part of α{s}_n = (Ω{s}_{{2n-2}})²X"), &odd, &(tower.lower_omega(plus)?.square()? * tower.var("X")))?;
    }
    Ok(())
}
