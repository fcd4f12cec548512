//! Quadratic and alternating forms over F₂.

use thiserror::Error;

use crate::gf2::{span_of, F2Matrix};
use crate::polyring::{Monomial, PolyError, Polynomial, Ring, Table, VariableTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("not a homogeneous quadratic form in the coordinate variables")]
    NotQuadratic,
    #[error("even-dimensional form is degenerate")]
    DegenerateInput,
    #[error("expected an odd-dimensional nonsingular space")]
    WrongParity,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormType {
    NonSingular,
    PlusType,
    MinusType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    OddNonsingular,
    EvenPlus,
    EvenMinus,
}

/// Quadratic form Σ diag_i x_i² + Σ_{i<j} a_ij x_i x_j stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QForm {
    dim: usize,
    diag: u32,
    upper: Vec<u32>,
}

impl QForm {
    pub fn zero(dim: usize) -> Self {
        QForm { dim, diag: 0, upper: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, v: u32) -> bool {
        let mut s = (self.diag & v).count_ones();
        for i in 0..self.dim {
            if v >> i & 1 == 1 {
                s += (self.upper[i] & v).count_ones();
            }
        }
        s & 1 == 1
    }

    /// Adds the square of the linear form with coefficient mask `x`.
    pub fn plus_square(&self, x: u32) -> QForm {
        QForm { diag: self.diag ^ x, ..self.clone() }
    }

    pub fn gram(&self) -> F2Matrix {
        let mut m = F2Matrix::zero(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.upper[i] >> j & 1 == 1 {
                    m.set(i, j, true);
                    m.set(j, i, true);
                }
            }
        }
        m
    }

    pub fn zero_count(&self, vectors: &[u32]) -> usize {
        vectors.iter().filter(|&&v| !self.eval(v)).count()
    }

    /// Reads a degree-2 polynomial whose variables are `coords` (in coordinate order).
    pub fn from_polynomial(q: &Polynomial, coords: &[usize]) -> Result<QForm, QuadError> {
        let mut f = QForm::zero(coords.len());
        let pos = |var: usize| coords.iter().position(|&c| c == var);
        for (m, _) in q.terms() {
            let mut idx = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = pos(v).ok_or(QuadError::NotQuadratic)?;
                for _ in 0..e {
                    idx.push(p);
                }
            }
            match idx.as_slice() {
                [a, b] if a == b => f.diag ^= 1 << a,
                [a, b] => {
                    let (a, b) = if a < b { (*a, *b) } else { (*b, *a) };
                    f.upper[a] ^= 1 << b;
                }
                _ => return Err(QuadError::NotQuadratic),
            }
        }
        Ok(f)
    }

    pub fn to_polynomial(&self, table: &Table, coords: &[usize]) -> Polynomial {
        let mut terms = Vec::new();
        let mono = |pairs: &[usize]| {
            let mut e = vec![0u16; table.len()];
            for &p in pairs {
                e[coords[p]] += 1;
            }
            Monomial::from_exponents(table, &e)
        };
        for i in 0..self.dim {
            if self.diag >> i & 1 == 1 {
                terms.push((mono(&[i, i]), 1));
            }
            for j in i + 1..self.dim {
                if self.upper[i] >> j & 1 == 1 {
                    terms.push((mono(&[i, j]), 1));
                }
            }
        }
        Polynomial::from_terms(table, Ring::F2, terms)
    }
}

/// Polarization of a degree-2 form in the coordinate variables `coords`.
pub fn polarize(q: &Polynomial, coords: &[usize]) -> Result<F2Matrix, QuadError> {
    if !q.is_homogeneous() || q.degree().map_or(false, |d| d != 2) {
        return Err(QuadError::NotQuadratic);
    }
    Ok(QForm::from_polynomial(q, coords)?.gram())
}

/// A vector space with basis, alternating Gram matrix and distinguished quadratic form.
#[derive(Debug, Clone)]
pub struct QuadraticSpace {
    table: Table,
    coords: Vec<usize>,
    form: QForm,
    bilinear: F2Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radical {
    pub rad_b: Vec<u32>,
    pub rad_q: Vec<u32>,
    pub nonsingular: bool,
}

impl QuadraticSpace {
    /// Space whose coordinates are the weight-1 variables of the table, in table order.
    pub fn from_form(q: &Polynomial) -> Result<Self, QuadError> {
        let table = q.table().clone();
        let coords: Vec<usize> = (0..table.len()).filter(|&i| table.weight(i) == 1).collect();
        if coords.is_empty() || coords.len() > 16 {
            return Err(QuadError::NotQuadratic);
        }
        if !q.is_zero() && (q.degree() != Some(2) || !q.is_homogeneous()) {
            return Err(QuadError::NotQuadratic);
        }
        let form = QForm::from_polynomial(q, &coords)?;
        let bilinear = form.gram();
        Ok(QuadraticSpace { table, coords, form, bilinear })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn qform(&self) -> &QForm {
        &self.form
    }

    pub fn bilinear(&self) -> &F2Matrix {
        &self.bilinear
    }

    pub fn form(&self) -> Polynomial {
        self.form.to_polynomial(&self.table, &self.coords)
    }

    pub fn coord_name(&self, k: usize) -> &str {
        self.table.name(self.coords[k])
    }

    /// Linear form with coefficient mask `x` as a polynomial.
    pub fn linear_form(&self, x: u32) -> Polynomial {
        let terms = (0..self.dim()).filter(|k| x >> k & 1 == 1).map(|k| {
            let mut e = vec![0u16; self.table.len()];
            e[self.coords[k]] = 1;
            (Monomial::from_exponents(&self.table, &e), 1)
        });
        Polynomial::from_terms(&self.table, Ring::F2, terms)
    }

    pub fn quadratic(&self, f: &QForm) -> Polynomial {
        f.to_polynomial(&self.table, &self.coords)
    }

    pub fn all_vectors(&self) -> Vec<u32> {
        (0..1u32 << self.dim()).collect()
    }

    pub fn radical(&self) -> Radical {
        let rad_b = self.bilinear.kernel();
        let span = span_of(&rad_b);
        let zeros: Vec<u32> = span.into_iter().filter(|&v| v != 0 && !self.form.eval(v)).collect();
        // q is additive on rad(b), so its zeros there form a subspace
        let rad_q = zeros.iter().fold(Vec::new(), |mut basis: Vec<u32>, &v| {
            if !span_of(&basis).contains(&v) {
                basis.push(v);
            }
            basis
        });
        let nonsingular = rad_q.is_empty();
        Radical { rad_b, rad_q, nonsingular }
    }

    pub fn classify(&self) -> Result<FormType, QuadError> {
        let rad = self.radical();
        let m = self.dim();
        if m % 2 == 1 {
            return if rad.nonsingular && rad.rad_b.len() == 1 {
                Ok(FormType::NonSingular)
            } else {
                Err(QuadError::DegenerateInput)
            };
        }
        if !rad.rad_b.is_empty() {
            return Err(QuadError::DegenerateInput);
        }
        Ok(type_by_majority(&self.form, &self.all_vectors()))
    }
}

/// Majority vote over the given vectors: zeros in the majority means +type.
pub fn type_by_majority(f: &QForm, vectors: &[u32]) -> FormType {
    if 2 * f.zero_count(vectors) > vectors.len() {
        FormType::PlusType
    } else {
        FormType::MinusType
    }
}

pub fn radical_and_singularity(space: &QuadraticSpace) -> Radical {
    space.radical()
}

pub fn classify_type(space: &QuadraticSpace) -> Result<FormType, QuadError> {
    space.classify()
}

/// Table of weight-1 coordinates x0..x_{2n} (odd) or x1..x_{2n} (even).
pub fn coordinate_table(n: usize, kind: SpaceKind) -> Table {
    let start = if kind == SpaceKind::OddNonsingular { 0 } else { 1 };
    VariableTable::new((start..=2 * n).map(|i| (format!("x{i}"), 1))).expect("valid names")
}

/// The standard form of the requested kind on the coordinates of `table`.
/// For the odd kind coordinate 0 is x0; hyperbolic pairs follow.
pub fn standard_form(n: usize, kind: SpaceKind) -> QForm {
    let odd = kind == SpaceKind::OddNonsingular;
    let dim = if odd { 2 * n + 1 } else { 2 * n };
    let off = usize::from(odd);
    let mut f = QForm::zero(dim);
    if odd {
        f.diag |= 1;
    }
    for k in 0..n {
        f.upper[off + 2 * k] |= 1 << (off + 2 * k + 1);
    }
    if kind == SpaceKind::EvenMinus {
        f.diag |= 0b11;
    }
    f
}

pub fn standard_space(n: usize, kind: SpaceKind) -> QuadraticSpace {
    standard_space_in(n, kind, &coordinate_table(n, kind))
}

/// Standard space whose coordinates are the x-variables of a larger table.
pub fn standard_space_in(n: usize, kind: SpaceKind, table: &Table) -> QuadraticSpace {
    let start = if kind == SpaceKind::OddNonsingular { 0 } else { 1 };
    let coords: Vec<usize> = (start..=2 * n).map(|i| table.require(&format!("x{i}")).expect("coordinate")).collect();
    let form = standard_form(n, kind);
    let bilinear = form.gram();
    QuadraticSpace { table: table.clone(), coords, form, bilinear }
}

/// The vectors A± and forms B± attached to an odd nonsingular space.
#[derive(Debug, Clone)]
pub struct Families {
    pub a_plus: Vec<u32>,
    pub a_minus: Vec<u32>,
    pub b_plus: Vec<QForm>,
    pub b_minus: Vec<QForm>,
}

/// Vectors of U (coordinate 0 cleared), used to classify forms not involving x0.
fn u_vectors(dim: usize) -> Vec<u32> {
    (0..1u32 << dim).filter(|v| v & 1 == 0).collect()
}

/// Type of ξ₀ + x² tested on ker x (x must involve x0).
pub fn type_on_kernel(space: &QuadraticSpace, x: u32) -> FormType {
    let f = space.form.plus_square(x);
    let ker: Vec<u32> = space.all_vectors().into_iter().filter(|&v| (v & x).count_ones() % 2 == 0).collect();
    type_by_majority(&f, &ker)
}

pub fn enumerate_families(space: &QuadraticSpace) -> Result<Families, QuadError> {
    if space.dim() % 2 == 0 || space.classify()? != FormType::NonSingular {
        return Err(QuadError::WrongParity);
    }
    // the radical of b must be e0 for the U* coordinates to be x1..x_{2n}
    if space.radical().rad_b != vec![1] {
        return Err(QuadError::WrongParity);
    }
    let uvec = u_vectors(space.dim());
    let base = space.form.plus_square(1);
    let mut fam = Families { a_plus: vec![], a_minus: vec![], b_plus: vec![], b_minus: vec![] };
    for y in uvec.iter().copied() {
        let x = y | 1;
        let q = base.plus_square(y);
        let t = type_by_majority(&q, &uvec);
        debug_assert_eq!(t, type_on_kernel(space, x));
        match t {
            FormType::PlusType => {
                fam.a_plus.push(x);
                fam.b_plus.push(q);
            }
            _ => {
                fam.a_minus.push(x);
                fam.b_minus.push(q);
            }
        }
    }
    Ok(fam)
}

/// For an even space with form ξ: the vectors x of U* with ξ + x² of +type resp. −type.
pub fn even_families(space: &QuadraticSpace) -> Result<(Vec<u32>, Vec<u32>), QuadError> {
    if space.dim() % 2 == 1 {
        return Err(QuadError::WrongParity);
    }
    space.classify()?;
    let all = space.all_vectors();
    let (mut plus, mut minus) = (vec![], vec![]);
    for &x in &all {
        match type_by_majority(&space.form.plus_square(x), &all) {
            FormType::PlusType => plus.push(x),
            _ => minus.push(x),
        }
    }
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_models() {
        let s = standard_space(1, SpaceKind::OddNonsingular);
        assert_eq!(s.form().to_string(), "x0^2+x1*x2");
        let r = s.radical();
        assert_eq!(r.rad_b, vec![1]);
        assert!(r.rad_q.is_empty() && r.nonsingular);
        assert_eq!(s.classify().unwrap(), FormType::NonSingular);
        assert_eq!(standard_space(2, SpaceKind::EvenMinus).classify().unwrap(), FormType::MinusType);
        assert_eq!(standard_space(2, SpaceKind::EvenPlus).classify().unwrap(), FormType::PlusType);
        assert_eq!(standard_space(2, SpaceKind::EvenPlus).form().to_string(), "x1*x2+x3*x4");
        assert_eq!(standard_space(1, SpaceKind::EvenMinus).form().to_string(), "x1^2+x1*x2+x2^2");
    }

    #[test]
    fn polarization() {
        let t = coordinate_table(1, SpaceKind::OddNonsingular);
        let q = Polynomial::parse("x0^2+x1*x2", &t, Ring::F2).unwrap();
        let b = polarize(&q, &[0, 1, 2]).unwrap();
        assert_eq!(b.rows(), &[0, 0b100, 0b010]);
        let sq = Polynomial::parse("x1^2", &t, Ring::F2).unwrap();
        assert_eq!(polarize(&sq, &[0, 1, 2]).unwrap(), F2Matrix::zero(3));
        assert!(polarize(&Polynomial::parse("x1", &t, Ring::F2).unwrap(), &[0, 1, 2]).is_err());
    }

    #[test]
    fn singular_odd_form() {
        let t = coordinate_table(1, SpaceKind::OddNonsingular);
        let s = QuadraticSpace::from_form(&Polynomial::parse("x1*x2", &t, Ring::F2).unwrap()).unwrap();
        let r = s.radical();
        assert_eq!(r.rad_q, vec![1]);
        assert!(!r.nonsingular);
        let t2 = VariableTable::new([("x1", 1), ("x2", 1)]).unwrap();
        let h = QuadraticSpace::from_form(&Polynomial::parse("x1*x2", &t2, Ring::F2).unwrap()).unwrap();
        assert!(h.radical().rad_b.is_empty());
        assert_eq!(h.classify().unwrap(), FormType::PlusType);
    }

    #[test]
    fn family_sizes() {
        for n in 1..=3usize {
            let fam = enumerate_families(&standard_space(n, SpaceKind::OddNonsingular)).unwrap();
            let big = 1usize << (2 * n - 1);
            let small = 1usize << (n - 1);
            assert_eq!(fam.a_plus.len(), big + small);
            assert_eq!(fam.a_minus.len(), big - small);
            assert_eq!(fam.b_plus.len(), fam.a_plus.len());
        }
        let s = standard_space(1, SpaceKind::OddNonsingular);
        let fam = enumerate_families(&s).unwrap();
        assert_eq!(fam.a_minus, vec![0b111]);
        assert_eq!(s.linear_form(0b111).to_string(), "x0+x1+x2");
        assert_eq!(s.quadratic(&fam.b_minus[0]).to_string(), "x1^2+x1*x2+x2^2");
    }

    #[test]
    fn kernel_criterion_agrees() {
        for n in 1..=2 {
            let s = standard_space(n, SpaceKind::OddNonsingular);
            let fam = enumerate_families(&s).unwrap();
            for &x in &fam.a_plus {
                assert_eq!(type_on_kernel(&s, x), FormType::PlusType);
            }
            for &x in &fam.a_minus {
                assert_eq!(type_on_kernel(&s, x), FormType::MinusType);
            }
        }
    }

    #[test]
    fn plus_minus_counts_dim4() {
        let s = standard_space(2, SpaceKind::EvenPlus);
        let (plus, minus) = even_families(&s).unwrap();
        assert_eq!((plus.len(), minus.len()), (10, 6));
        let all = s.all_vectors();
        for &x in &plus {
            assert_eq!(s.qform().plus_square(x).zero_count(&all), 10);
        }
    }
}
