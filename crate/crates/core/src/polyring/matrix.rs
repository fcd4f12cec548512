use std::fmt;

use rustc_hash::FxHashMap;

use super::{Acc, PolyError, Polynomial, Result, Ring, Table, VariableTable};

pub const DETERMINANT_LIMIT: usize = 10;
pub const PFAFFIAN_LIMIT: usize = 8;

/// Row-major matrix of polynomials sharing one table and ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    table: Table,
    ring: Ring,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(table: &Table, ring: Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(PolyError::ShapeMismatch(rows, cols, entries.len(), 1));
        }
        for e in &entries {
            if !VariableTable::same_as(e.table(), table) {
                return Err(PolyError::TableMismatch);
            }
            if e.ring() != ring {
                return Err(PolyError::RingMismatch);
            }
        }
        Ok(PolyMatrix { rows, cols, table: table.clone(), ring, entries })
    }

    pub fn from_fn<F>(table: &Table, ring: Ring, rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Polynomial>,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c)?);
            }
        }
        Self::new(table, ring, rows, cols, entries)
    }

    pub fn zeros(table: &Table, ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, table: table.clone(), ring, entries: vec![Polynomial::zero(table, ring); rows * cols] }
    }

    pub fn identity(table: &Table, ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(table, ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(table, ring);
        }
        m
    }

    pub fn column(table: &Table, ring: Ring, entries: Vec<Polynomial>) -> Result<Self> {
        let n = entries.len();
        Self::new(table, ring, n, 1, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(VariableTable::same_as(p.table(), &self.table) && p.ring() == self.ring);
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { rows: self.cols, cols: self.rows, table: self.table.clone(), ring: self.ring, entries }
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { entries, ..self.clone() })
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(PolyError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Acc::new(self.ring);
                for k in 0..self.cols {
                    acc.add_product(self.get(r, k), other.get(k, c));
                }
                entries.push(acc.finish(&self.table));
            }
        }
        Ok(PolyMatrix { rows: self.rows, cols: other.cols, table: self.table.clone(), ring: self.ring, entries })
    }

    pub fn map<F>(&self, f: F) -> Result<PolyMatrix>
    where
        F: FnMut(&Polynomial) -> Result<Polynomial>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { entries, ..self.clone() })
    }

    /// Entrywise Frobenius square, written M^{*2}.
    pub fn square_entries(&self) -> Result<PolyMatrix> {
        self.map(|p| p.square())
    }

    pub fn sqrt_entries(&self) -> Result<PolyMatrix> {
        self.map(|p| p.sqrt_exact())
    }

    /// Keeps the listed rows and columns in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { rows: rows.len(), cols: cols.len(), table: self.table.clone(), ring: self.ring, entries }
    }

    pub fn without(&self, row: Option<usize>, col: Option<usize>) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| Some(r) != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| Some(c) != col).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn append_row(&self, row: Vec<Polynomial>) -> Result<PolyMatrix> {
        if row.len() != self.cols {
            return Err(PolyError::ShapeMismatch(self.rows, self.cols, 1, row.len()));
        }
        let mut entries = self.entries.clone();
        entries.extend(row);
        PolyMatrix::new(&self.table, self.ring, self.rows + 1, self.cols, entries)
    }

    pub fn change_table(&self, target: &Table) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|p| p.change_table(target)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(target, self.ring, self.rows, self.cols, entries)
    }

    /// Cofactor expansion along rows, memoised over column subsets.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n > DETERMINANT_LIMIT {
            return Err(PolyError::SizeLimitExceeded { what: "determinant", size: n, limit: DETERMINANT_LIMIT });
        }
        if n == 0 {
            return Ok(Polynomial::one(&self.table, self.ring));
        }
        // level k holds the minors of the last k rows, keyed by column mask
        let mut level: FxHashMap<u32, Polynomial> = FxHashMap::default();
        level.insert(0, Polynomial::one(&self.table, self.ring));
        for k in 1..=n {
            let r = n - k;
            let mut next: FxHashMap<u32, Polynomial> = FxHashMap::default();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let mut acc = Acc::new(self.ring);
                let mut pos = 0;
                for c in 0..n {
                    if mask >> c & 1 == 0 {
                        continue;
                    }
                    let a = self.get(r, c);
                    if let Some(minor) = level.get(&(mask & !(1 << c))) {
                        if !a.is_zero() && !minor.is_zero() {
                            let term = a.checked_mul(minor)?;
                            if pos % 2 == 1 && self.ring == Ring::Z4 {
                                acc.add_poly(&term.neg());
                            } else {
                                acc.add_poly(&term);
                            }
                        }
                    }
                    pos += 1;
                }
                next.insert(mask, acc.finish(&self.table));
            }
            level = next;
        }
        Ok(level.remove(&((1u32 << n) - 1)).expect("full mask"))
    }

    pub fn is_alternating(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return Some((i, i));
            }
            for j in i + 1..self.cols {
                if self.get(i, j) != &self.get(j, i).neg() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Pfaffian over F₂ by first-row expansion, memoised over index subsets.
    pub fn pfaffian(&self) -> Result<Polynomial> {
        if self.ring != Ring::F2 {
            return Err(PolyError::NotF2);
        }
        if self.rows != self.cols {
            return Err(PolyError::NotSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n % 2 == 1 {
            return Err(PolyError::OddSize(n));
        }
        if n > PFAFFIAN_LIMIT {
            return Err(PolyError::SizeLimitExceeded { what: "pfaffian", size: n, limit: PFAFFIAN_LIMIT });
        }
        if let Some((i, j)) = self.is_alternating() {
            return Err(PolyError::NotAlternating(i, j));
        }
        let mut memo: FxHashMap<u32, Polynomial> = FxHashMap::default();
        self.pf_rec((1u32 << n) - 1, &mut memo)
    }

    fn pf_rec(&self, mask: u32, memo: &mut FxHashMap<u32, Polynomial>) -> Result<Polynomial> {
        if mask == 0 {
            return Ok(Polynomial::one(&self.table, self.ring));
        }
        if let Some(p) = memo.get(&mask) {
            return Ok(p.clone());
        }
        let i = mask.trailing_zeros() as usize;
        let mut acc = Acc::new(self.ring);
        for j in i + 1..self.rows {
            if mask >> j & 1 == 0 || self.get(i, j).is_zero() {
                continue;
            }
            let sub = self.pf_rec(mask & !(1 << i) & !(1 << j), memo)?;
            acc.add_product(self.get(i, j), &sub);
        }
        let p = acc.finish(&self.table);
        memo.insert(mask, p.clone());
        Ok(p)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
