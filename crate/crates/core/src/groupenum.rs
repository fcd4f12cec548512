//! Explicit enumeration of small classical groups over F₂ and their action on S.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{BitRow, EchelonBasis, F2Matrix};
use crate::polyring::{Monomial, PolyError, Polynomial, Ring, Table, VariableTable};
use crate::quadforms::{standard_space, QuadraticSpace, SpaceKind};

pub const DEFAULT_DEGREE_BOUND: u32 = 12;
const MAX_GENERATORS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("dimension {0} too large for direct enumeration")]
    DimensionTooLarge(usize),
    #[error("no orthogonal lift for an element of Sp(U)")]
    NoLiftFound,
    #[error("matrix of size {0} acting on {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("degree {0} exceeds bound {1}")]
    DegreeTooLarge(u32, u32),
    #[error("group kind does not match the space")]
    KindMismatch,
    #[error("no generating set with at most {MAX_GENERATORS} elements found")]
    GeneratorsNotFound,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Sp,
    OOdd,
    OPlus,
    OMinus,
    GL,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sp => "sp",
            GroupKind::OOdd => "o-odd",
            GroupKind::OPlus => "o-plus",
            GroupKind::OMinus => "o-minus",
            GroupKind::GL => "gl",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [GroupKind::Sp, GroupKind::OOdd, GroupKind::OPlus, GroupKind::OMinus, GroupKind::GL]
            .into_iter()
            .find(|k| k.name() == s)
    }

    /// Classical order formula for the group attached to half-rank n.
    pub fn order_formula(self, n: u32) -> u64 {
        let prod: u64 = (1..n).map(|j| (1u64 << (2 * j)) - 1).product();
        match self {
            GroupKind::Sp | GroupKind::OOdd => (1u64 << (n * n)) * prod * ((1u64 << (2 * n)) - 1),
            GroupKind::OMinus => (1u64 << (n * n - n + 1)) * ((1u64 << n) + 1) * prod,
            GroupKind::OPlus => (1u64 << (n * n - n + 1)) * ((1u64 << n) - 1) * prod,
            GroupKind::GL => (0..2 * n).map(|i| (1u64 << (2 * n)) - (1u64 << i)).product(),
        }
    }

    /// Number of transvections in the group.
    pub fn transvection_formula(self, n: u32) -> u64 {
        let big = 1u64 << (2 * n - 1);
        let small = 1u64 << (n - 1);
        match self {
            GroupKind::Sp | GroupKind::OOdd => (1u64 << (2 * n)) - 1,
            GroupKind::OMinus => big + small,
            GroupKind::OPlus => big - small,
            GroupKind::GL => ((1u64 << (2 * n)) - 1) * ((1u64 << (2 * n - 1)) - 1),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Group {
    pub kind: GroupKind,
    pub dim: usize,
    pub elements: Vec<F2Matrix>,
    pub generators: Vec<F2Matrix>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &F2Matrix) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

fn all_invertible(m: usize) -> impl Iterator<Item = F2Matrix> {
    let bits = m * m;
    (0u64..1 << bits).filter_map(move |code| {
        let rows = (0..m).map(|r| ((code >> (r * m)) & ((1 << m) - 1)) as u32).collect();
        let g = F2Matrix::from_rows(rows);
        (g.rank() == m).then_some(g)
    })
}

fn preserves_form(space: &QuadraticSpace, g: &F2Matrix) -> bool {
    let q = space.qform();
    (0..1u32 << space.dim()).all(|v| q.eval(g.apply(v)) == q.eval(v))
}

fn preserves_bilinear(b: &F2Matrix, g: &F2Matrix) -> bool {
    g.transpose().mul(b).mul(g) == *b
}

pub fn enumerate_group(space: &QuadraticSpace, kind: GroupKind) -> Result<Group, GroupError> {
    let m = space.dim();
    if kind == GroupKind::OOdd && m == 5 {
        return lift_orthogonal(2);
    }
    if m > 4 {
        return Err(GroupError::DimensionTooLarge(m));
    }
    let parity_ok = match kind {
        GroupKind::OOdd => m % 2 == 1,
        GroupKind::Sp | GroupKind::OPlus | GroupKind::OMinus => m % 2 == 0,
        GroupKind::GL => true,
    };
    if !parity_ok {
        return Err(GroupError::KindMismatch);
    }
    let mut elements: Vec<F2Matrix> = all_invertible(m)
        .filter(|g| match kind {
            GroupKind::GL => true,
            GroupKind::Sp => preserves_bilinear(space.bilinear(), g),
            _ => preserves_form(space, g),
        })
        .collect();
    elements.sort();
    finish_group(kind, m, elements)
}

fn finish_group(kind: GroupKind, dim: usize, mut elements: Vec<F2Matrix>) -> Result<Group, GroupError> {
    elements.sort();
    elements.dedup();
    let generators = find_generators(&elements)?;
    Ok(Group { kind, dim, elements, generators })
}

/// Closure of a set of matrices under multiplication.
pub fn closure(gens: &[F2Matrix], dim: usize) -> HashSet<F2Matrix> {
    let mut seen: HashSet<F2Matrix> = HashSet::new();
    let id = F2Matrix::identity(dim);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let p = g.mul(h);
            if seen.insert(p.clone()) {
                frontier.push(p);
            }
        }
    }
    seen
}

fn find_generators(elements: &[F2Matrix]) -> Result<Vec<F2Matrix>, GroupError> {
    let dim = elements.first().map_or(0, |g| g.dim());
    let mut gens: Vec<F2Matrix> = Vec::new();
    let mut current = closure(&gens, dim);
    while current.len() < elements.len() {
        if gens.len() == MAX_GENERATORS {
            return Err(GroupError::GeneratorsNotFound);
        }
        let outside: Vec<&F2Matrix> = elements.iter().filter(|g| !current.contains(*g)).collect();
        let stride = (outside.len() / 48).max(1);
        let best = outside
            .iter()
            .step_by(stride)
            .map(|g| {
                let mut trial = gens.clone();
                trial.push((*g).clone());
                (closure(&trial, dim).len(), *g)
            })
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
            .expect("nonempty");
        gens.push(best.1.clone());
        current = closure(&gens, dim);
    }
    Ok(gens)
}

/// O(V) for the standard odd space of dimension 2n+1, built from Sp(U).
pub fn lift_orthogonal(n: usize) -> Result<Group, GroupError> {
    if !(1..=2).contains(&n) {
        return Err(GroupError::DimensionTooLarge(2 * n + 1));
    }
    let u = standard_space(n, SpaceKind::EvenPlus);
    let v = standard_space(n, SpaceKind::OddNonsingular);
    let sp = enumerate_group(&u, GroupKind::Sp)?;
    let qu = u.qform();
    let mut lifted = Vec::with_capacity(sp.order());
    for h in &sp.elements {
        // coordinate 0 of V is e0; coordinates 1..=2n are those of U
        let mut g = F2Matrix::zero(2 * n + 1);
        g.set(0, 0, true);
        for j in 0..2 * n {
            let col = h.apply(1 << j);
            let a = qu.eval(col) != qu.eval(1 << j);
            g.set(0, j + 1, a);
            for i in 0..2 * n {
                g.set(i + 1, j + 1, col >> i & 1 == 1);
            }
        }
        if !preserves_form(&v, &g) {
            return Err(GroupError::NoLiftFound);
        }
        lifted.push(g);
    }
    finish_group(GroupKind::OOdd, 2 * n + 1, lifted)
}

/// The group of the given kind on its standard space at half-rank n.
pub fn standard_group(kind: GroupKind, n: usize) -> Result<Group, GroupError> {
    match kind {
        GroupKind::Sp | GroupKind::GL => enumerate_group(&standard_space(n, SpaceKind::EvenPlus), kind),
        GroupKind::OOdd => lift_orthogonal(n),
        GroupKind::OPlus => enumerate_group(&standard_space(n, SpaceKind::EvenPlus), kind),
        GroupKind::OMinus => enumerate_group(&standard_space(n, SpaceKind::EvenMinus), kind),
    }
}

/// Images of the coordinate variables under the contragredient action:
/// x_i ↦ Σ_j (g⁻¹)_{ij} x_j.
fn variable_images(g: &F2Matrix, table: &Table, coords: &[usize]) -> Vec<Option<Polynomial>> {
    let inv = g.inverse().expect("invertible");
    let mut images = vec![None; table.len()];
    for (i, &vi) in coords.iter().enumerate() {
        let terms = (0..coords.len()).filter(|&j| inv.get(i, j)).map(|j| {
            let mut e = vec![0u16; table.len()];
            e[coords[j]] = 1;
            (Monomial::from_exponents(table, &e), 1)
        });
        images[vi] = Some(Polynomial::from_terms(table, Ring::F2, terms));
    }
    images
}

/// Action of g on a polynomial in the coordinate variables `coords`.
pub fn act_on_poly_at(g: &F2Matrix, p: &Polynomial, coords: &[usize]) -> Result<Polynomial, GroupError> {
    if g.dim() != coords.len() {
        return Err(GroupError::DimensionMismatch(g.dim(), coords.len()));
    }
    let images = variable_images(g, p.table(), coords);
    Ok(p.substitute_indexed(&images, p.table())?)
}

/// Action on a polynomial whose coordinates are the weight-1 variables of its table.
pub fn act_on_poly(g: &F2Matrix, p: &Polynomial) -> Result<Polynomial, GroupError> {
    let t = p.table();
    let coords: Vec<usize> = (0..t.len()).filter(|&i| t.weight(i) == 1).collect();
    act_on_poly_at(g, p, &coords)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransvectionCount {
    pub count: usize,
    /// normal functional of the fixed hyperplane ↦ number of transvections
    pub per_hyperplane: BTreeMap<u32, usize>,
}

pub fn count_transvections(group: &Group) -> TransvectionCount {
    let id = F2Matrix::identity(group.dim);
    let mut per = BTreeMap::new();
    let mut count = 0;
    for g in &group.elements {
        let d = g.add(&id);
        if d.rank() == 1 {
            count += 1;
            let functional = d.rows().iter().copied().find(|&r| r != 0).expect("rank one");
            *per.entry(functional).or_insert(0) += 1;
        }
    }
    TransvectionCount { count, per_hyperplane: per }
}

fn monomials_of_degree(m: usize, d: u32) -> Vec<Vec<u16>> {
    fn rec(m: usize, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == m - 1 {
            cur[i] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(m, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(m, 0, d, &mut vec![0; m], &mut out);
    out
}

pub fn invariant_dimension(group: &Group, degree: u32) -> Result<usize, GroupError> {
    invariant_dimension_bounded(group, degree, DEFAULT_DEGREE_BOUND)
}

/// Dimension of the fixed space in S_d: dim S_d minus the rank of f ↦ (g f − f)_g over generators.
pub fn invariant_dimension_bounded(group: &Group, degree: u32, bound: u32) -> Result<usize, GroupError> {
    if degree > bound {
        return Err(GroupError::DegreeTooLarge(degree, bound));
    }
    let m = group.dim;
    let table = VariableTable::new((0..m).map(|i| (format!("v{i}"), 1)))?;
    let basis = monomials_of_degree(m, degree);
    let index: HashMap<&[u16], usize> = basis.iter().enumerate().map(|(k, e)| (e.as_slice(), k)).collect();
    let coords: Vec<usize> = (0..m).collect();
    let k = group.generators.len();
    let width = basis.len() * k;
    let gen_images: Vec<Vec<Polynomial>> = group
        .generators
        .iter()
        .map(|g| variable_images(g, &table, &coords).into_iter().map(|p| p.expect("coordinate")).collect())
        .collect();
    // powers of every image variable, per generator
    let powers: Vec<Vec<Vec<Polynomial>>> = gen_images
        .iter()
        .map(|imgs| {
            imgs.iter()
                .map(|l| {
                    let mut pw = vec![Polynomial::one(&table, Ring::F2)];
                    for _ in 0..degree {
                        let next = pw.last().expect("nonempty") * l;
                        pw.push(next);
                    }
                    pw
                })
                .collect()
        })
        .collect();
    let rows: Vec<BitRow> = basis
        .par_iter()
        .enumerate()
        .map(|(col, e)| {
            let mut row = BitRow::zeros(width.max(1));
            for (gi, pw) in powers.iter().enumerate() {
                let mut img = Polynomial::one(&table, Ring::F2);
                for (v, &ev) in e.iter().enumerate() {
                    if ev > 0 {
                        img = &img * &pw[v][ev as usize];
                    }
                }
                for (mono, _) in img.terms() {
                    row.flip(gi * basis.len() + index[mono.exponents()]);
                }
                row.flip(gi * basis.len() + col);
            }
            row
        })
        .collect();
    let mut ech = EchelonBasis::new();
    for r in rows {
        ech.insert(r);
    }
    Ok(basis.len() - ech.rank())
}
