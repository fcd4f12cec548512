//! Dense linear algebra over F₂ on bit-packed rows.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)] }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Incremental row-echelon basis; rows are reduced as they are inserted.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, BitRow)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &mut BitRow) {
        for (pivot, r) in &self.rows {
            if row.get(*pivot) {
                row.xor_with(r);
            }
        }
    }

    /// Inserts a row; returns whether it enlarged the span.
    pub fn insert(&mut self, mut row: BitRow) -> bool {
        self.reduce(&mut row);
        match row.first_one() {
            None => false,
            Some(p) => {
                for (_, r) in self.rows.iter_mut() {
                    if r.get(p) {
                        r.xor_with(&row);
                    }
                }
                self.rows.push((p, row));
                true
            }
        }
    }
}

pub fn rank(rows: impl IntoIterator<Item = BitRow>) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Result of solving A·y = b where A is given by its columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    None,
    Unique(Vec<bool>),
    Many { particular: Vec<bool>, nullity: usize },
}

/// Solves Σ y_j·col_j = target over F₂, columns being vectors of length `len`.
pub fn solve_columns(cols: &[BitRow], target: &BitRow, len: usize) -> Solution {
    let n = cols.len();
    // augmented rows: [row of A | b], one row per coordinate
    let mut rows: Vec<BitRow> = (0..len)
        .map(|i| {
            let mut r = BitRow::zeros(n + 1);
            for (j, c) in cols.iter().enumerate() {
                if c.get(i) {
                    r.set(j);
                }
            }
            if target.get(i) {
                r.set(n);
            }
            r
        })
        .filter(|r| !r.is_zero())
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(k) = (next..rows.len()).find(|&k| rows[k].get(col)) else { continue };
        rows.swap(next, k);
        let pivot_row = rows[next].clone();
        for (k, r) in rows.iter_mut().enumerate() {
            if k != next && r.get(col) {
                r.xor_with(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    if rows[next..].iter().any(|r| r.get(n)) {
        return Solution::None;
    }
    let mut y = vec![false; n];
    for (k, &col) in pivots.iter().enumerate() {
        y[col] = rows[k].get(n);
    }
    if pivots.len() == n {
        Solution::Unique(y)
    } else {
        Solution::Many { particular: y, nullity: n - pivots.len() }
    }
}


/// Square matrix over F₂ with at most 32 columns; row i is a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct F2Matrix {
    rows: Vec<u32>,
}

impl F2Matrix {
    pub fn from_rows(rows: Vec<u32>) -> Self {
        assert!(rows.len() <= 32);
        F2Matrix { rows }
    }

    pub fn zero(n: usize) -> Self {
        F2Matrix { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix { rows: (0..n).map(|i| 1 << i).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if v {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    /// Image of the column vector v.
    pub fn apply(&self, v: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (((r & v).count_ones() & 1) << i))
    }

    /// Row vector x times the matrix: x·M.
    pub fn apply_row(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| if x >> i & 1 == 1 { acc ^ r } else { acc })
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix { rows: self.rows.iter().map(|&r| other.apply_row(r)).collect() }
    }

    pub fn transpose(&self) -> F2Matrix {
        let n = self.rows.len();
        let mut t = F2Matrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                if self.get(r, c) {
                    t.rows[c] |= 1 << r;
                }
            }
        }
        t
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect() }
    }

    pub fn rank(&self) -> usize {
        let n = self.rows.len();
        rank(self.rows.iter().map(|&r| {
            let mut b = BitRow::zeros(n.max(1));
            for c in 0..n {
                if r >> c & 1 == 1 {
                    b.set(c);
                }
            }
            b
        }))
    }

    pub fn inverse(&self) -> Option<F2Matrix> {
        let n = self.rows.len();
        let mut a = self.rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for col in 0..n {
            let p = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, p);
            inv.swap(col, p);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(F2Matrix { rows: inv })
    }

    /// Basis of the kernel {v : Mv = 0}.
    pub fn kernel(&self) -> Vec<u32> {
        let n = self.rows.len();
        (1u32..1 << n)
            .filter(|&v| self.apply(v) == 0)
            .fold(Vec::new(), |mut basis: Vec<u32>, v| {
                let span = span_of(&basis);
                if !span.contains(&v) {
                    basis.push(v);
                }
                basis
            })
    }
}

/// All vectors in the span of the given bitmasks.
pub fn span_of(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32];
    for &b in basis {
        let extra: Vec<u32> = out.iter().map(|v| v ^ b).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out.dedup();
    out
}
