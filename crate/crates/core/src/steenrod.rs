//! Steenrod squares acting on the symmetric algebra of a space of linear forms.

use thiserror::Error;

use crate::polyring::{Monomial, PolyError, Polynomial, Ring, Table, VariableTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("variable `{0}` is not a designated linear variable")]
    NonLinearVariablePresent(String),
    #[error("input is not homogeneous")]
    NonHomogeneous,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug)]
pub struct SteenrodContext {
    table: Table,
    linear: Vec<bool>,
}

impl SteenrodContext {
    /// Designates the named weight-1 variables as elements of V*.
    pub fn new(table: &Table, linear: &[&str]) -> Result<Self, SteenrodError> {
        let mut flags = vec![false; table.len()];
        for name in linear {
            let i = table.require(name)?;
            if table.weight(i) != 1 {
                return Err(SteenrodError::NonLinearVariablePresent(name.to_string()));
            }
            flags[i] = true;
        }
        Ok(SteenrodContext { table: table.clone(), linear: flags })
    }

    /// Every weight-1 variable of the table counts as linear.
    pub fn all_linear(table: &Table) -> Self {
        let linear = (0..table.len()).map(|i| table.weight(i) == 1).collect();
        SteenrodContext { table: table.clone(), linear }
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    fn check(&self, p: &Polynomial) -> Result<(), SteenrodError> {
        if !VariableTable::same_as(p.table(), &self.table) {
            return Err(PolyError::TableMismatch.into());
        }
        if p.ring() != Ring::F2 {
            return Err(PolyError::NotF2.into());
        }
        for i in p.support() {
            if !self.linear[i] {
                return Err(SteenrodError::NonLinearVariablePresent(self.table.name(i).to_string()));
            }
        }
        Ok(())
    }

    /// Image under the ring endomorphism x ↦ x + x².
    pub fn total_sq(&self, p: &Polynomial) -> Result<Polynomial, SteenrodError> {
        self.check(p)?;
        let images: Vec<Option<Polynomial>> = (0..self.table.len())
            .map(|i| {
                self.linear[i].then(|| {
                    let x = Polynomial::var_index(&self.table, Ring::F2, i);
                    &x + &x.square().expect("small exponent")
                })
            })
            .collect();
        Ok(p.substitute_indexed(&images, &self.table)?)
    }

    /// Sq^i(p): since (1+x)^e = Σ_{k ⊆ e} x^k mod 2, the image of x^e is the sum of
    /// x^{e+k} over bitwise submasks k of e with |k| = i.
    pub fn sq(&self, i: u32, p: &Polynomial) -> Result<Polynomial, SteenrodError> {
        self.check(p)?;
        if !p.is_homogeneous() {
            return Err(SteenrodError::NonHomogeneous);
        }
        if i == 0 {
            return Ok(p.clone());
        }
        let mut out = Vec::new();
        let mut cur: Vec<u16> = Vec::new();
        for (m, _) in p.terms() {
            let exps = m.exponents();
            cur.clear();
            cur.extend_from_slice(exps);
            submasks(exps, 0, i, &mut cur, &mut |e| out.push((Monomial::from_exponents(&self.table, e), 1)));
        }
        Ok(Polynomial::from_terms(&self.table, Ring::F2, out))
    }

    /// Σ_i Sq^i applied to a possibly inhomogeneous polynomial, degree by degree.
    pub fn sq_any(&self, i: u32, p: &Polynomial) -> Result<Polynomial, SteenrodError> {
        let mut degrees: Vec<u32> = p.terms().iter().map(|(m, _)| m.degree()).collect();
        degrees.dedup();
        let mut acc = Polynomial::zero(&self.table, Ring::F2);
        for d in degrees {
            acc = &acc + &self.sq(i, &p.homogeneous_component(d))?;
        }
        Ok(acc)
    }
}

fn submasks(base: &[u16], var: usize, budget: u32, cur: &mut Vec<u16>, emit: &mut impl FnMut(&[u16])) {
    if budget == 0 {
        emit(cur);
        return;
    }
    if var == base.len() {
        return;
    }
    let remaining: u32 = base[var..].iter().map(|&e| e as u32).sum();
    if remaining < budget {
        return;
    }
    let e = base[var];
    // enumerate all submasks k of e, including 0
    let mut k = e;
    loop {
        if k as u32 <= budget {
            cur[var] = e + k;
            submasks(base, var + 1, budget - k as u32, cur, emit);
        }
        if k == 0 {
            break;
        }
        k = (k - 1) & e;
    }
    cur[var] = e;
}
