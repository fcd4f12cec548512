//! Hilbert series of the invariant rings in factored form ∏(1−t^b)/∏(1−t^a).

use num_rational::Ratio;
use thiserror::Error;

use crate::groupenum::GroupKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("series has pole order {0} at t = 1")]
    ZeroPoleOrder(i64),
    #[error("no Hilbert series for {0}")]
    UnsupportedKind(&'static str),
    #[error("expansion bound {0} exceeds 64")]
    BoundTooLarge(usize),
    #[error("n must be at least 1")]
    InvalidN,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    /// b_j in the factors (1 − t^{b_j}) of the numerator.
    pub numerator_degrees: Vec<u32>,
    /// a_i in the factors (1 − t^{a_i}) of the denominator.
    pub denominator_degrees: Vec<u32>,
}

fn xi_deg(i: u32) -> u32 {
    (1 << i) + 1
}

fn d_deg(n: u32, j: u32) -> u32 {
    (1 << (2 * n - 1)) - (1 << (j - 1))
}

fn c_deg(n: u32, j: u32) -> u32 {
    (1 << (2 * n)) - (1 << j)
}

/// Series read off the generator and relation degrees. At n = 1 the rings are
/// polynomial and the general degree lists do not apply.
pub fn series_for_group(n: u32, kind: GroupKind) -> Result<HilbertSeries, HilbertError> {
    if n == 0 {
        return Err(HilbertError::InvalidN);
    }
    if n == 1 {
        let den = match kind {
            GroupKind::OOdd => vec![1, 2, 3],
            GroupKind::OMinus => vec![2, 3],
            GroupKind::OPlus => vec![2, 1],
            GroupKind::Sp => vec![3, 2],
            GroupKind::GL => return Err(HilbertError::UnsupportedKind(kind.name())),
        };
        return Ok(HilbertSeries { numerator_degrees: vec![], denominator_degrees: den });
    }
    let xis = |r: std::ops::RangeInclusive<u32>| r.map(xi_deg).collect::<Vec<_>>();
    let (mut den, d_range, rel_top) = match kind {
        GroupKind::OOdd => (xis(0..=2 * n - 2), n..2 * n, n - 2),
        GroupKind::OMinus => (xis(0..=2 * n - 2), n + 1..2 * n, n - 2),
        GroupKind::OPlus => (xis(0..=2 * n - 2), n..2 * n, n - 1),
        GroupKind::Sp => {
            let mut den = xis(1..=2 * n - 1);
            den.extend((n..2 * n).rev().map(|j| c_deg(n, j)));
            let num = (1..n).map(|i| (1 << (2 * n)) + (1 << i)).collect();
            return Ok(HilbertSeries { numerator_degrees: num, denominator_degrees: den });
        }
        GroupKind::GL => return Err(HilbertError::UnsupportedKind(kind.name())),
    };
    den.extend(d_range.rev().map(|j| d_deg(n, j)));
    let num = (1..=rel_top).map(|j| (1 << (2 * n - 1)) + (1 << j)).collect();
    Ok(HilbertSeries { numerator_degrees: num, denominator_degrees: den })
}

impl HilbertSeries {
    pub fn pole_order(&self) -> i64 {
        self.denominator_degrees.len() as i64 - self.numerator_degrees.len() as i64
    }

    /// (|G|, r) from the expansion 1/|G|·(1−t)^{−m} + r/(2|G|)·(1−t)^{1−m} + ….
    pub fn laurent_leading(&self) -> Result<(Ratio<i128>, Ratio<i128>), HilbertError> {
        let m = self.pole_order();
        if m < 1 {
            return Err(HilbertError::ZeroPoleOrder(m));
        }
        let prod = |v: &[u32]| v.iter().map(|&a| a as i128).product::<i128>();
        let order = Ratio::new(prod(&self.denominator_degrees), prod(&self.numerator_degrees));
        let excess = |v: &[u32]| v.iter().map(|&a| a as i128 - 1).sum::<i128>();
        let refl = Ratio::from_integer(excess(&self.denominator_degrees) - excess(&self.numerator_degrees));
        Ok((order, refl))
    }

    /// Power-series coefficients in degrees 0..=bound.
    pub fn expand_coeffs(&self, bound: usize) -> Result<Vec<i64>, HilbertError> {
        if bound > 64 {
            return Err(HilbertError::BoundTooLarge(bound));
        }
        let mut c = vec![0i64; bound + 1];
        c[0] = 1;
        for &b in &self.numerator_degrees {
            for d in (b as usize..=bound).rev() {
                c[d] -= c[d - b as usize];
            }
        }
        // 1/(1−t^a) is the running sum with stride a
        for &a in &self.denominator_degrees {
            for d in a as usize..=bound {
                c[d] += c[d - a as usize];
            }
        }
        Ok(c)
    }
}
