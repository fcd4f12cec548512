//! Sparse multivariate polynomials over F₂ and Z/4.

mod matrix;
mod parse;

pub use matrix::PolyMatrix;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("coefficient {value} out of range at byte {position}")]
    CoefficientOutOfRange { position: usize, value: u64 },
    #[error("operands live in different variable tables")]
    TableMismatch,
    #[error("operands have different coefficient rings")]
    RingMismatch,
    #[error("variable `{0}` occurs but has no binding")]
    UnboundVariableOccurs(String),
    #[error("not a square: monomial {0} has an odd exponent")]
    NotASquare(String),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquareMatrix { rows: usize, cols: usize },
    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeLimitExceeded { what: &'static str, size: usize, limit: usize },
    #[error("matrix is not alternating at ({0},{1})")]
    NotAlternating(usize, usize),
    #[error("matrix has odd size {0}")]
    OddSize(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("operation needs coefficients in F2")]
    NotF2,
    #[error("coefficient {coeff} of {monomial} is odd; cannot halve")]
    NotEven { monomial: String, coeff: u8 },
    #[error("matrix dimensions {0}x{1} and {2}x{3} do not fit")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("{0} is not homogeneous")]
    NonHomogeneous(String),
}

pub type Result<T, E = PolyError> = std::result::Result<T, E>;

/// Coefficient ring of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    F2,
    Z4,
}

impl Ring {
    fn modulus(self) -> u8 {
        match self {
            Ring::F2 => 2,
            Ring::Z4 => 4,
        }
    }
}

/// Ordered list of named, weighted variables.
#[derive(Debug)]
pub struct VariableTable {
    names: Vec<String>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

pub type Table = Arc<VariableTable>;

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.weights == other.weights
    }
}

impl Eq for VariableTable {}

impl VariableTable {
    pub fn new<I, S>(entries: I) -> Result<Table>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut index = HashMap::new();
        for (name, w) in entries {
            let name: String = name.into();
            let valid = name.chars().next().map_or(false, |c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric());
            if !valid || w == 0 || index.contains_key(&name) {
                return Err(PolyError::SyntaxError {
                    position: names.len(),
                    message: format!("bad table entry `{name}` (weight {w})"),
                });
            }
            index.insert(name.clone(), names.len());
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(VariableTable { names, weights, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn same_as(a: &Table, b: &Table) -> bool {
        Arc::ptr_eq(a, b) || (a.names == b.names && a.weights == b.weights)
    }
}

type Exps = SmallVec<[u16; 16]>;

/// Exponent vector with cached weighted degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial { degree: 0, exps: smallvec::smallvec![0; len] }
    }

    pub fn from_exponents(table: &VariableTable, exps: &[u16]) -> Self {
        assert_eq!(exps.len(), table.len());
        let degree = exps.iter().enumerate().map(|(i, &e)| e as u32 * table.weight(i)).sum();
        Monomial { degree, exps: exps.into() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(Monomial { degree: self.degree + other.degree, exps })
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Monomial { degree: self.degree - other.degree, exps }
    }

    fn scaled(&self, k: u16) -> Monomial {
        Monomial { degree: self.degree * k as u32, exps: self.exps.iter().map(|e| e * k).collect() }
    }

    fn render(&self, table: &VariableTable) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(table.name(i).to_string()),
                _ => parts.push(format!("{}^{}", table.name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    /// Weighted degree first, then reverse lexicographic: the smaller exponent on
    /// the last differing variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; terms kept sorted in descending monomial order.
#[derive(Clone)]
pub struct Polynomial {
    table: Table,
    ring: Ring,
    terms: Vec<(Monomial, u8)>,
}

/// Hash-map accumulator for sums of products.
pub(crate) struct Acc {
    ring: Ring,
    map: FxHashMap<Monomial, u8>,
}

impl Acc {
    pub(crate) fn new(ring: Ring) -> Self {
        Acc { ring, map: FxHashMap::default() }
    }

    pub(crate) fn add(&mut self, m: Monomial, c: u8) {
        let md = self.ring.modulus();
        let e = self.map.entry(m).or_insert(0);
        *e = (*e + c) % md;
    }

    pub(crate) fn add_poly(&mut self, p: &Polynomial) {
        for (m, c) in &p.terms {
            self.add(m.clone(), *c);
        }
    }

    pub(crate) fn add_product(&mut self, a: &Polynomial, b: &Polynomial) {
        let md = self.ring.modulus() as u16;
        self.map.reserve(a.terms.len().saturating_mul(b.terms.len()).min(1 << 20));
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ((*ca as u16 * *cb as u16) % md) as u8;
                if c != 0 {
                    self.add(ma.mul(mb), c);
                }
            }
        }
    }

    pub(crate) fn finish(self, table: &Table) -> Polynomial {
        let terms = self.map.into_iter().filter(|(_, c)| *c != 0).collect();
        Polynomial::from_unsorted(table.clone(), self.ring, terms)
    }
}

impl Polynomial {
    fn from_unsorted(table: Table, ring: Ring, mut terms: Vec<(Monomial, u8)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { table, ring, terms }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs; like terms are combined.
    pub fn from_terms<I>(table: &Table, ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut acc = Acc::new(ring);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), table.len(), "monomial length does not match table");
            acc.add(m, (c % ring.modulus() as u64) as u8);
        }
        acc.finish(table)
    }

    pub fn zero(table: &Table, ring: Ring) -> Self {
        Polynomial { table: table.clone(), ring, terms: Vec::new() }
    }

    pub fn one(table: &Table, ring: Ring) -> Self {
        Self::constant(table, ring, 1)
    }

    pub fn constant(table: &Table, ring: Ring, c: u64) -> Self {
        let c = (c % ring.modulus() as u64) as u8;
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::one(table.len()), c)] };
        Polynomial { table: table.clone(), ring, terms }
    }

    pub fn var(table: &Table, ring: Ring, name: &str) -> Result<Self> {
        let i = table.require(name)?;
        Ok(Self::var_index(table, ring, i))
    }

    pub fn var_index(table: &Table, ring: Ring, i: usize) -> Self {
        let mut exps: Exps = smallvec::smallvec![0; table.len()];
        exps[i] = 1;
        let m = Monomial { degree: table.weight(i), exps };
        Polynomial { table: table.clone(), ring, terms: vec![(m, 1)] }
    }

    pub fn monomial(table: &Table, ring: Ring, m: Monomial) -> Self {
        Polynomial { table: table.clone(), ring, terms: vec![(m, 1)] }
    }

    pub fn parse(text: &str, table: &Table, ring: Ring) -> Result<Self> {
        parse::parse(text, table, ring)
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u8)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree == w[1].0.degree)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u8)> {
        self.terms.first()
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if !VariableTable::same_as(&self.table, &other.table) {
            return Err(PolyError::TableMismatch);
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let md = self.ring.modulus();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = (a[i].1 + b[j].1) % md;
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Polynomial { table: self.table.clone(), ring: self.ring, terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        let md = self.ring.modulus();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), (md - c) % md)).collect();
        Polynomial { table: self.table.clone(), ring: self.ring, terms }
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.table, self.ring));
        }
        let limit = u16::MAX as u32;
        let max_a = max_exps(&self.terms);
        let max_b = max_exps(&other.terms);
        if max_a.iter().zip(&max_b).any(|(a, b)| *a as u32 + *b as u32 > limit) {
            return Err(PolyError::ExponentOverflow);
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (single, many) = if self.terms.len() == 1 { (self, other) } else { (other, self) };
            let (ms, cs) = &single.terms[0];
            let md = self.ring.modulus() as u16;
            let terms = many
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let c = ((*c as u16 * *cs as u16) % md) as u8;
                    (c != 0).then(|| (m.mul(ms), c))
                })
                .collect();
            // multiplying by a monomial preserves the order
            return Ok(Polynomial { table: self.table.clone(), ring: self.ring, terms });
        }
        let mut acc = Acc::new(self.ring);
        acc.add_product(self, other);
        Ok(acc.finish(&self.table))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((t.checked_mul(m)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { table: self.table.clone(), ring: self.ring, terms })
    }

    pub fn scale(&self, k: u64) -> Polynomial {
        let md = self.ring.modulus() as u64;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c = ((*c as u64 * k) % md) as u8;
                (c != 0).then(|| (m.clone(), c))
            })
            .collect();
        Polynomial { table: self.table.clone(), ring: self.ring, terms }
    }

    /// Square; over F₂ this is the Frobenius map and just doubles exponents.
    pub fn square(&self) -> Result<Polynomial> {
        if self.ring == Ring::F2 {
            self.frobenius(1)
        } else {
            self.checked_mul(self)
        }
    }

    /// p^(2^k) over F₂.
    pub fn frobenius(&self, k: u32) -> Result<Polynomial> {
        if self.ring != Ring::F2 {
            return Err(PolyError::NotF2);
        }
        let f = 1u32.checked_shl(k).filter(|&f| f <= u16::MAX as u32).ok_or(PolyError::ExponentOverflow)?;
        if self.terms.iter().any(|(m, _)| m.exps.iter().any(|&e| e as u32 * f > u16::MAX as u32)) {
            return Err(PolyError::ExponentOverflow);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.scaled(f as u16), *c)).collect();
        Ok(Polynomial { table: self.table.clone(), ring: self.ring, terms })
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.table, self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square()?;
            }
        }
        Ok(result)
    }

    pub fn sqrt_exact(&self) -> Result<Polynomial> {
        if self.ring != Ring::F2 {
            return Err(PolyError::NotF2);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exps.iter().any(|e| e % 2 == 1) {
                return Err(PolyError::NotASquare(m.render(&self.table)));
            }
            let exps: Exps = m.exps.iter().map(|e| e / 2).collect();
            terms.push((Monomial { degree: m.degree / 2, exps }, *c));
        }
        Ok(Polynomial { table: self.table.clone(), ring: self.ring, terms })
    }

    /// Exact quotient by leading-term reduction.
    pub fn divide_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        self.compatible(d)?;
        if self.ring != Ring::F2 {
            return Err(PolyError::NotF2);
        }
        let Some((lead, _)) = d.terms.first() else {
            return Err(PolyError::NotDivisible("division by zero".into()));
        };
        let mut rem: BTreeMap<std::cmp::Reverse<Monomial>, ()> =
            self.terms.iter().map(|(m, _)| (std::cmp::Reverse(m.clone()), ())).collect();
        let mut quotient = Vec::new();
        while let Some((std::cmp::Reverse(top), _)) = rem.pop_first() {
            if !lead.divides(&top) {
                return Err(PolyError::NotDivisible(format!(
                    "leading monomial {} does not divide {}",
                    lead.render(&self.table),
                    top.render(&self.table)
                )));
            }
            let q = top.div(lead);
            for (m, _) in &d.terms[1..] {
                let key = std::cmp::Reverse(m.mul(&q));
                if rem.remove(&key).is_none() {
                    rem.insert(key, ());
                }
            }
            quotient.push((q, 1));
        }
        Ok(Polynomial { table: self.table.clone(), ring: self.ring, terms: quotient })
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.table.require(var)?;
        Ok(self.partial_derivative_index(i))
    }

    pub fn partial_derivative_index(&self, i: usize) -> Polynomial {
        let md = self.ring.modulus() as u32;
        let w = self.table.weight(i);
        let mut acc = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps[i];
            let k = ((e as u32 * *c as u32) % md) as u8;
            if e == 0 || k == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            acc.push((Monomial { degree: m.degree - w, exps }, k));
        }
        // lowering one exponent keeps distinct monomials distinct but may reorder them
        Polynomial::from_unsorted(self.table.clone(), self.ring, acc)
    }

    /// Highest power of variable `i` occurring; 0 for constants in that variable.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps[i]).max().unwrap_or(0)
    }

    /// Splits by powers of variable `i`: map power ↦ coefficient (variable `i` removed).
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u16, Polynomial> {
        let w = self.table.weight(i);
        let mut parts: BTreeMap<u16, Vec<(Monomial, u8)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[i];
            let mut exps = m.exps.clone();
            exps[i] = 0;
            parts.entry(e).or_default().push((Monomial { degree: m.degree - e as u32 * w, exps }, *c));
        }
        parts
            .into_iter()
            .map(|(e, terms)| (e, Polynomial::from_unsorted(self.table.clone(), self.ring, terms)))
            .collect()
    }

    pub fn coefficient_in(&self, i: usize, power: u16) -> Polynomial {
        self.coefficients_in(i)
            .remove(&power)
            .unwrap_or_else(|| Polynomial::zero(&self.table, self.ring))
    }

    /// Inverse of `coefficients_in`.
    pub fn from_coefficients_in(table: &Table, ring: Ring, i: usize, parts: &BTreeMap<u16, Polynomial>) -> Result<Polynomial> {
        let mut acc = Acc::new(ring);
        let mut exps: Exps = smallvec::smallvec![0; table.len()];
        for (&e, p) in parts {
            exps[i] = e;
            let xm = Monomial::from_exponents(table, &exps);
            for (m, c) in &p.mul_monomial(&xm)?.terms {
                acc.add(m.clone(), *c);
            }
        }
        Ok(acc.finish(table))
    }

    /// Image modulo the ideal generated by the given variables.
    pub fn mod_variables(&self, vars: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.exps[v] == 0))
            .cloned()
            .collect();
        Polynomial { table: self.table.clone(), ring: self.ring, terms }
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.degree == degree).cloned().collect();
        Polynomial { table: self.table.clone(), ring: self.ring, terms }
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn support(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&i| self.terms.iter().any(|(m, _)| m.exps[i] > 0)).collect()
    }

    /// Re-homes the polynomial into another table, matching variables by name.
    pub fn change_table(&self, target: &Table) -> Result<Polynomial> {
        if VariableTable::same_as(&self.table, target) {
            return Ok(Polynomial { table: target.clone(), ..self.clone() });
        }
        let map: Vec<Option<usize>> = self.table.names().iter().map(|n| target.index_of(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps: Exps = smallvec::smallvec![0; target.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.table.name(i).to_string()))?;
                    exps[j] = e;
                }
            }
            terms.push((Monomial::from_exponents(target, &exps), *c));
        }
        Ok(Polynomial::from_unsorted(target.clone(), self.ring, terms))
    }

    /// Reduction Z/4 → F₂.
    pub fn reduce_mod2(&self) -> Polynomial {
        let terms = self.terms.iter().filter(|(_, c)| c % 2 == 1).map(|(m, _)| (m.clone(), 1)).collect();
        Polynomial { table: self.table.clone(), ring: Ring::F2, terms }
    }

    /// For a Z/4 polynomial with all coefficients even, returns (p/2) mod 2.
    pub fn halve_to_f2(&self) -> Result<Polynomial> {
        if self.ring != Ring::Z4 {
            return Err(PolyError::RingMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if c % 2 == 1 {
                return Err(PolyError::NotEven { monomial: m.render(&self.table), coeff: *c });
            }
            terms.push((m.clone(), 1));
        }
        Ok(Polynomial { table: self.table.clone(), ring: Ring::F2, terms })
    }

    /// Lifts an F₂ polynomial to Z/4 with coefficients 1.
    pub fn lift_to_z4(&self) -> Polynomial {
        Polynomial { table: self.table.clone(), ring: Ring::Z4, terms: self.terms.clone() }
    }

    /// Ring homomorphism sending each bound variable to its image; unbound variables
    /// that occur are mapped to the same-named variable of the target table.
    pub fn substitute(&self, bindings: &[(&str, &Polynomial)], target: &Table) -> Result<Polynomial> {
        let mut images: Vec<Option<Polynomial>> = vec![None; self.table.len()];
        for (name, img) in bindings {
            let i = self.table.require(name)?;
            if !VariableTable::same_as(img.table(), target) {
                return Err(PolyError::TableMismatch);
            }
            if img.ring != self.ring {
                return Err(PolyError::RingMismatch);
            }
            images[i] = Some((*img).clone());
        }
        self.substitute_indexed(&images, target)
    }

    pub fn substitute_indexed(&self, images: &[Option<Polynomial>], target: &Table) -> Result<Polynomial> {
        let mut images = images.to_vec();
        for i in self.support() {
            if images[i].is_none() {
                let name = self.table.name(i);
                let j = target.index_of(name).ok_or_else(|| PolyError::UnboundVariableOccurs(name.to_string()))?;
                images[i] = Some(Polynomial::var_index(target, self.ring, j));
            }
        }
        let mut cache: Vec<HashMap<u16, Polynomial>> = vec![HashMap::new(); self.table.len()];
        let mut acc = Acc::new(self.ring);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, self.ring, *c as u64);
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("bound above");
                if !cache[i].contains_key(&e) {
                    let p = img.pow(e as u32)?;
                    cache[i].insert(e, p);
                }
                prod = prod.checked_mul(&cache[i][&e])?;
                if prod.is_zero() {
                    break;
                }
            }
            acc.add_poly(&prod);
        }
        Ok(acc.finish(target))
    }

    /// Evaluates an F₂ polynomial at a point given as a bitmask over the table.
    pub fn eval_bits(&self, point: u64) -> u8 {
        let mut s = 0u8;
        for (m, c) in &self.terms {
            let hit = m.exps.iter().enumerate().all(|(i, &e)| e == 0 || point >> i & 1 == 1);
            if hit {
                s = (s + c) % self.ring.modulus();
            }
        }
        s
    }

    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push('+');
            }
            if m.is_one() {
                out.push_str(&c.to_string());
            } else {
                if *c != 1 {
                    out.push_str(&c.to_string());
                }
                out.push_str(&m.render(&self.table));
            }
        }
        out
    }
}

fn max_exps(terms: &[(Monomial, u8)]) -> Exps {
    let mut out: Exps = smallvec::smallvec![0; terms.first().map_or(0, |t| t.0.exps.len())];
    for (m, _) in terms {
        for (o, e) in out.iter_mut().zip(&m.exps) {
            *o = (*o).max(*e);
        }
    }
    out
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && VariableTable::same_as(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_canonical_string())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl std::ops::$tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$checked(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Sum of a sequence of polynomials in one table.
pub fn sum<'a, I>(table: &Table, ring: Ring, items: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut acc = Acc::new(ring);
    for p in items {
        acc.add_poly(p);
    }
    acc.finish(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab() -> Table {
        VariableTable::new([("x1", 1), ("x2", 1), ("x3", 1)]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &tab(), Ring::F2).unwrap()
    }

    #[test]
    fn frobenius_is_additive() {
        assert_eq!(p("x1+x2").pow(2).unwrap(), p("x1^2+x2^2"));
        assert_eq!(&p("x1") + &p("x1"), p("0"));
    }

    #[test]
    fn sqrt_and_derivative() {
        assert_eq!(p("x1^2*x2^4").sqrt_exact().unwrap(), p("x1*x2^2"));
        assert!(matches!(p("x1*x2").sqrt_exact(), Err(PolyError::NotASquare(_))));
        assert_eq!(p("x1^2").partial_derivative("x1").unwrap(), p("0"));
        assert_eq!(p("x1*x2").partial_derivative("x1").unwrap(), p("x2"));
        let xi1 = p("x1^2*x2+x1*x2^2");
        assert_eq!(xi1.partial_derivative("x1").unwrap(), p("x2^2"));
    }

    #[test]
    fn division() {
        assert!(matches!(p("x1").divide_exact(&p("x2")), Err(PolyError::NotDivisible(_))));
        let a = p("x1^3+x2*x3+x1");
        let b = p("x2^2+x1*x3+x3");
        assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
        assert!((&(&a * &b) + &p("x1")).divide_exact(&b).is_err());
    }

    #[test]
    fn z4_arithmetic() {
        let t = tab();
        let a = Polynomial::parse("3x1+2", &t, Ring::Z4).unwrap();
        assert_eq!((&a + &a).to_string(), "2x1");
        assert_eq!(a.neg().to_string(), "x1+2");
        assert_eq!((&a * &a).to_string(), "x1^2");
        assert!(a.halve_to_f2().is_err());
        assert_eq!((&a + &a).halve_to_f2().unwrap().to_string(), "x1");
    }

    #[test]
    fn substitution_is_homomorphism() {
        let t = tab();
        let a = p("x1^2+x2*x3");
        let b = p("x1+x3^2");
        let img1 = p("x2+x3");
        let img2 = p("x1*x2");
        let bind = [("x1", &img1), ("x2", &img2)];
        let lhs = (&a * &b).substitute(&bind, &t).unwrap();
        let rhs = a.substitute(&bind, &t).unwrap() * b.substitute(&bind, &t).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(a.substitute(&[], &t).unwrap(), a);
    }

    #[test]
    fn order_reproduces_canonical_print() {
        let t = VariableTable::new([("xi1", 3), ("xi2", 5), ("xi3", 9)]).unwrap();
        let l = Polynomial::parse("xi1^2*xi3+xi2^3+xi1^5", &t, Ring::F2).unwrap();
        assert_eq!(l.to_string(), "xi1^5+xi2^3+xi1^2*xi3");
    }

    #[test]
    fn coefficient_split_round_trip() {
        let t = tab();
        let a = p("x1^3*x2+x1*x3+x2^2+x1^3");
        let parts = a.coefficients_in(0);
        assert_eq!(parts[&3], p("x2+1"));
        assert_eq!(Polynomial::from_coefficients_in(&t, Ring::F2, 0, &parts).unwrap(), a);
    }
}
