use std::collections::HashMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::gf2::{solve_columns, BitRow, Solution};
use crate::polyring::{Monomial, Polynomial, Ring, Table};

use super::{InvariantError, Result};

/// A named generator of the abstract ring together with its image in S.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub image: Polynomial,
    /// Restricted to appear at most linearly (together with the other linear ones).
    pub linear: bool,
}

impl Generator {
    pub fn new(name: impl Into<String>, image: Polynomial) -> Self {
        Generator { name: name.into(), image, linear: false }
    }

    pub fn linear(name: impl Into<String>, image: Polynomial) -> Self {
        Generator { name: name.into(), image, linear: true }
    }
}

/// Writes `p` (in S) as a polynomial in the generators, returned in `target`.
///
/// Each homogeneous component is handled separately: every monomial in the
/// generators of that degree is expanded in S and the resulting F₂ system is
/// solved. With `linear_in_d` the generators flagged linear appear with total
/// degree at most one.
pub fn express_in_xi(p: &Polynomial, gens: &[Generator], linear_in_d: bool, target: &Table) -> Result<Polynomial> {
    let weights: Vec<u32> = gens
        .iter()
        .map(|g| {
            if g.image.is_zero() || !g.image.is_homogeneous() {
                Err(InvariantError::InvalidArgument(format!("generator {} is not homogeneous", g.name)))
            } else {
                Ok(g.image.degree().unwrap_or(0))
            }
        })
        .collect::<Result<_>>()?;
    if weights.iter().any(|&w| w == 0) {
        return Err(InvariantError::InvalidArgument("generators must have positive degree".into()));
    }
    let slots: Vec<usize> = gens.iter().map(|g| target.require(&g.name)).collect::<Result<_, _>>()?;
    let mut degrees: Vec<u32> = p.terms().iter().map(|(m, _)| m.degree()).collect();
    degrees.dedup();
    let mut out = Polynomial::zero(target, Ring::F2);
    for d in degrees {
        let part = p.homogeneous_component(d);
        let exps = enumerate(&weights, gens, linear_in_d, d);
        let solution = solve_degree(&part, gens, &exps)?;
        match solution {
            Solution::Unique(y) => {
                let terms = exps.iter().zip(y).filter(|(_, hit)| *hit).map(|(e, _)| {
                    let mut full = vec![0u16; target.len()];
                    for (k, &ek) in e.iter().enumerate() {
                        full[slots[k]] += ek;
                    }
                    (Monomial::from_exponents(target, &full), 1)
                });
                out = out + Polynomial::from_terms(target, Ring::F2, terms);
            }
            Solution::None => {
                let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
                return Err(InvariantError::NotInSubring { degree: d, generators: names.join(",") });
            }
            Solution::Many { nullity, .. } => return Err(InvariantError::AmbiguousExpression { degree: d, nullity }),
        }
    }
    Ok(out)
}

/// Exponent vectors of weighted degree `d`.
fn enumerate(weights: &[u32], gens: &[Generator], linear_in_d: bool, d: u32) -> Vec<Vec<u16>> {
    fn rec(
        k: usize,
        left: u32,
        linear_used: bool,
        cur: &mut Vec<u16>,
        ctx: (&[u32], &[Generator], bool),
        out: &mut Vec<Vec<u16>>,
    ) {
        let (weights, gens, lin) = ctx;
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let restricted = lin && gens[k].linear;
        let max = if restricted {
            if linear_used {
                0
            } else {
                1
            }
        } else {
            left / weights[k]
        };
        for e in 0..=max.min(left / weights[k]) {
            cur.push(e as u16);
            rec(k + 1, left - e * weights[k], linear_used || (restricted && e > 0), cur, ctx, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, false, &mut Vec::new(), (weights, gens, linear_in_d), &mut out);
    out
}

fn solve_degree(part: &Polynomial, gens: &[Generator], exps: &[Vec<u16>]) -> Result<Solution> {
    // powers of each generator, shared by all candidate monomials
    let mut powers: Vec<HashMap<u16, Polynomial>> = vec![HashMap::new(); gens.len()];
    for e in exps {
        for (k, &ek) in e.iter().enumerate() {
            if ek > 0 && !powers[k].contains_key(&ek) {
                powers[k].insert(ek, gens[k].image.pow(ek as u32)?);
            }
        }
    }
    let table = part.table();
    let images: Vec<Polynomial> = exps
        .par_iter()
        .map(|e| {
            let mut prod = Polynomial::one(table, Ring::F2);
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    prod = prod.checked_mul(&powers[k][&ek])?;
                }
            }
            Ok(prod)
        })
        .collect::<Result<_>>()?;
    let mut index: FxHashMap<&Monomial, usize> = FxHashMap::default();
    for p in images.iter().chain(std::iter::once(part)) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let len = index.len().max(1);
    let to_row = |p: &Polynomial| {
        let mut r = BitRow::zeros(len);
        for (m, _) in p.terms() {
            r.set(index[m]);
        }
        r
    };
    let cols: Vec<BitRow> = images.iter().map(to_row).collect();
    Ok(solve_columns(&cols, &to_row(part), len))
}
