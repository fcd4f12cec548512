//! Seeded randomized laws for polynomials, Steenrod squares and Pfaffians,
//! shared by the `properties` and `acceptance` targets.

use invforge_core::invariants::abstract_table;
use invforge_core::quadforms::{standard_space, SpaceKind};
use invforge_core::{Monomial, PolyMatrix, Polynomial, Ring, SteenrodContext, Table, VariableTable};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn table() -> Table {
    VariableTable::new([("x1", 1), ("x2", 1), ("x3", 1), ("x4", 1), ("y", 2)]).unwrap()
}

fn poly(ring: Ring, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    let t = table();
    vec((vec(0..=max_exp, 5), 1u64..4), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(&t, ring, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&t, &e), c)))
    })
}

/// Homogeneous polynomial of degree d in x1…x4.
fn homogeneous(d: u16) -> impl Strategy<Value = Polynomial> {
    let t = table();
    vec(vec(0..4usize, d as usize), 0..6).prop_map(move |terms| {
        let monos = terms.into_iter().map(|vars| {
            let mut e = vec![0u16; 5];
            for v in vars {
                e[v] += 1;
            }
            (Monomial::from_exponents(&t, &e), 1)
        });
        Polynomial::from_terms(&t, Ring::F2, monos)
    })
}

pub fn print_parse_round_trip() {
    for ring in [Ring::F2, Ring::Z4] {
        runner(1000, 1).run(&poly(ring, 8, 5), |p| {
            let text = p.to_canonical_string();
            let back = Polynomial::parse(&text, &table(), ring).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_canonical_string(), text);
            Ok(())
        })
        .unwrap();
    }
}

pub fn ring_laws() {
    for ring in [Ring::F2, Ring::Z4] {
        let s = (poly(ring, 6, 3), poly(ring, 6, 3), poly(ring, 6, 3));
        runner(1000, 2).run(&s, |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
            Ok(())
        })
        .unwrap();
    }
}

pub fn frobenius_and_exact_division() {
    let s = (poly(Ring::F2, 6, 3), poly(Ring::F2, 4, 3));
    runner(1000, 3).run(&s, |(a, b)| {
        prop_assert_eq!((&a + &b).square().unwrap(), a.square().unwrap() + b.square().unwrap());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a.clone());
        }
        Ok(())
    })
    .unwrap();
}

pub fn sqrt_of_square() {
    runner(1000, 4).run(&poly(Ring::F2, 10, 6), |p| {
        let sq = p.square().unwrap();
        prop_assert!(sq.terms().iter().all(|(m, _)| m.exponents().iter().all(|e| e % 2 == 0)));
        prop_assert_eq!(sq.sqrt_exact().unwrap(), p);
        Ok(())
    })
    .unwrap();
}

pub fn determinant_row_swap() {
    for ring in [Ring::F2, Ring::Z4] {
        runner(100, 5).run(&vec(poly(ring, 3, 2), 9), |entries| {
            let t = table();
            let m = PolyMatrix::new(&t, ring, 3, 3, entries.clone()).unwrap();
            let swapped = PolyMatrix::new(&t, ring, 3, 3, [&entries[3..6], &entries[0..3], &entries[6..9]].concat()).unwrap();
            prop_assert_eq!(swapped.determinant().unwrap(), m.determinant().unwrap().neg());
            Ok(())
        })
        .unwrap();
    }
}

pub fn cartan_formula() {
    let ctx = SteenrodContext::new(&table(), &["x1", "x2", "x3", "x4"]).unwrap();
    let s = (1u16..4).prop_flat_map(|d| (homogeneous(d), 1u16..4).prop_flat_map(move |(a, e)| (Just(a), homogeneous(e), 0u32..=(d + e) as u32)));
    runner(200, 6).run(&s, |(a, b, k)| {
        let lhs = ctx.sq(k, &(&a * &b)).unwrap();
        let mut rhs = Polynomial::zero(&table(), Ring::F2);
        for i in 0..=k {
            rhs = rhs + ctx.sq(i, &a).unwrap() * ctx.sq(k - i, &b).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
    .unwrap();
}

pub fn wu_formula_on_subsets() {
    for n in 1..=2usize {
        let space = standard_space(n, SpaceKind::OddNonsingular);
        let t = space.table().clone();
        let ctx = SteenrodContext::all_linear(&t);
        let size = 1u32 << space.dim();
        let subset = vec(1..size, 1..=6).prop_map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        });
        runner(50, 7 + n as u8).run(&subset, |vs| {
            // elementary symmetric polynomials of the chosen linear forms
            let one = Polynomial::one(&t, Ring::F2);
            let mut e = vec![one];
            for &v in &vs {
                let x = space.linear_form(v);
                let mut next = e.clone();
                next.push(Polynomial::zero(&t, Ring::F2));
                for k in 0..e.len() {
                    next[k + 1] = &next[k + 1] + &(&e[k] * &x);
                }
                e = next;
            }
            let d = vs.len();
            for i in 0..=d {
                prop_assert_eq!(ctx.sq(i as u32, &e[d]).unwrap(), &e[d] * &e[i]);
            }
            Ok(())
        })
        .unwrap();
    }
}

fn xi_matrix(t: &Table, idx: &[usize]) -> PolyMatrix {
    PolyMatrix::from_fn(t, Ring::F2, idx.len(), idx.len(), |r, c| {
        if r == c {
            return Ok(Polynomial::zero(t, Ring::F2));
        }
        let (a, b) = (idx[r], idx[c]);
        Polynomial::var(t, Ring::F2, &format!("xi{}", a.abs_diff(b)))?.frobenius(a.min(b) as u32)
    })
    .unwrap()
}

pub fn pfaffian_squared_is_determinant() {
    let t = abstract_table(4);
    let mut checked = 0;
    for mask in 1u32..256 {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let idx: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
        let m = xi_matrix(&t, &idx);
        assert_eq!(m.pfaffian().unwrap().square().unwrap(), m.determinant().unwrap(), "{idx:?}");
        checked += 1;
    }
    assert_eq!(checked, 127);
}
