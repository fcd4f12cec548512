use std::collections::BTreeMap;

use crate::polyring::{PolyError, PolyMatrix, Polynomial, Ring, Table};

use super::{var, xi_name, InvariantError, Result};

/// Ω^±_{2n} with the α-sequences that present them.
#[derive(Clone, Debug)]
pub struct OmegaPm {
    pub plus: Polynomial,
    pub minus: Polynomial,
    /// α⁺₀…α⁺_n.
    pub alpha_plus: Vec<Polynomial>,
    /// α⁻₀…α⁻_n.
    pub alpha_minus: Vec<Polynomial>,
}

impl OmegaPm {
    pub fn get(&self, plus: bool) -> &Polynomial {
        if plus {
            &self.plus
        } else {
            &self.minus
        }
    }

    pub fn alphas(&self, plus: bool) -> &[Polynomial] {
        if plus {
            &self.alpha_plus
        } else {
            &self.alpha_minus
        }
    }
}

/// Half the determinant of H_{2n} over Z/4, reduced mod 2.
pub(crate) fn omega_det(n: usize, table: &Table) -> Result<Polynomial> {
    let m = 2 * n + 1;
    let x = Polynomial::var(table, Ring::Z4, "X")?;
    let h = PolyMatrix::from_fn(table, Ring::Z4, m, m, |i, j| {
        if i == j {
            return Ok(x.pow(1 << i)?.scale(2));
        }
        let xi = Polynomial::var(table, Ring::Z4, &xi_name(i.abs_diff(j)))?;
        xi.pow(1 << i.min(j))
    })?;
    h.determinant()?.halve_to_f2().map_err(|e| match e {
        PolyError::NotEven { monomial, coeff } => InvariantError::HalvingFailed(format!("{coeff}*{monomial}")),
        other => other.into(),
    })
}

fn x_parts(p: &Polynomial) -> BTreeMap<u16, Polynomial> {
    p.coefficients_in(p.table().require("X").expect("X"))
}

/// Splits Ω into Ω⁺Ω⁻ given Ω^±_{2n−2}.
///
/// Writing Ω^± = ξ_{2n}A^± + B^± with A^± = (Ω^±_{2n−2})² and expanding in
/// ξ_{2n} gives Ω = ξ_{2n}²A⁺A⁻ + ξ_{2n}Ω₁ + Ω₀, and B⁻ satisfies
/// A⁺(B⁻)² + Ω₁B⁻ + A⁻Ω₀ = 0. Because Ω₁ has lower X-degree than A⁺, the
/// X-coefficients of B⁻ are determined from the top down, each as an exact
/// square root.
pub(crate) fn factor(n: usize, omega: &Polynomial, lower_plus: &Polynomial, lower_minus: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let table = omega.table();
    let top = table.require(&xi_name(2 * n))?;
    let parts = omega.coefficients_in(top);
    if parts.keys().any(|&e| e > 2) {
        return Err(InvariantError::FactorizationMismatch(format!("Ω_{} is not quadratic in ξ_{}", 2 * n, 2 * n)));
    }
    let zero = Polynomial::zero(table, Ring::F2);
    let part = |e: u16| parts.get(&e).cloned().unwrap_or_else(|| zero.clone());
    let (o2, o1, o0) = (part(2), part(1), part(0));
    let ap = lower_plus.square()?;
    let am = lower_minus.square()?;
    if o2 != &ap * &am {
        return Err(InvariantError::FactorizationMismatch(format!(
            "ξ_{0}² coefficient of Ω_{0} is not (Ω⁺Ω⁻)_{1}²",
            2 * n,
            2 * n - 2
        )));
    }
    let a = x_parts(&ap);
    let w = x_parts(&o1);
    let r = x_parts(&(&am * &o0));
    let (&deg_a, lc) = a.iter().next_back().expect("A⁺ is nonzero");
    if w.keys().next_back().is_some_and(|&dw| dw >= deg_a) {
        return Err(InvariantError::FactorizationMismatch("ξ-linear part has too large X-degree".into()));
    }
    let deg_r = r.keys().next_back().copied().unwrap_or(0);
    if deg_r < deg_a || (deg_r - deg_a) % 2 == 1 {
        return Err(InvariantError::FactorizationMismatch("incompatible X-degrees".into()));
    }
    let top_k = (deg_r - deg_a) / 2;
    let mut b: BTreeMap<u16, Polynomial> = BTreeMap::new();
    for k in (0..=top_k).rev() {
        let m = deg_a + 2 * k;
        let mut known = r.get(&m).cloned().unwrap_or_else(|| zero.clone());
        for (&i, ai) in a.range(..deg_a) {
            if (m - i) % 2 == 0 {
                if let Some(bj) = b.get(&((m - i) / 2)) {
                    known = known + ai * &bj.square()?;
                }
            }
        }
        for (&j, wj) in &w {
            if let Some(bj) = m.checked_sub(j).and_then(|e| b.get(&e)) {
                known = known + wj * bj;
            }
        }
        let bk = known
            .divide_exact(lc)
            .and_then(|q| q.sqrt_exact())
            .map_err(|e| InvariantError::FactorizationMismatch(format!("X^{k} coefficient: {e}")))?;
        if !bk.is_zero() {
            b.insert(k, bk);
        }
    }
    let x_idx = table.require("X")?;
    let bm = Polynomial::from_coefficients_in(table, Ring::F2, x_idx, &b)?;
    let minus = var(table, &xi_name(2 * n)) * &am + bm;
    let plus = omega
        .divide_exact(&minus)
        .map_err(|e| InvariantError::FactorizationMismatch(format!("Ω_{} / Ω⁻: {e}", 2 * n)))?;
    if &plus * &minus != *omega {
        return Err(InvariantError::FactorizationMismatch("Ω⁺Ω⁻ ≠ Ω".into()));
    }
    Ok((plus, minus))
}

/// α^±_n from Ω^±_{2n} = Σ_{ℓ≤n} Λ_{2n,n+ℓ}(α^±_ℓ)^{2^{n−ℓ}}, by exact division by Λ_{2n}.
pub(crate) fn next_alpha(n: usize, omega_pm: &Polynomial, lambda_is: &[Polynomial], lower: &[Polynomial]) -> Result<Polynomial> {
    let mut rest = omega_pm.clone();
    for (l, a) in lower.iter().enumerate().take(n) {
        rest = rest + &lambda_is[n + l] * &a.frobenius((n - l) as u32)?;
    }
    rest.divide_exact(&lambda_is[2 * n])
        .map_err(|e| InvariantError::Construction(format!("α_{n} is not a polynomial: {e}")))
}

/// Leading X-term of Ω^±_{2n} is Λ_{2n}X^{2^{2n−1}±2^{n−1}}.
pub(crate) fn check_leading(n: usize, p: &Polynomial, lambda: &Polynomial, plus: bool) -> Result<()> {
    let half = 1u16 << (2 * n - 1);
    let shift = 1u16 << (n - 1);
    let deg = if plus { half + shift } else { half - shift };
    let parts = x_parts(p);
    match parts.iter().next_back() {
        Some((&d, c)) if d == deg && c == lambda => Ok(()),
        _ => Err(InvariantError::FactorizationMismatch(format!(
            "leading X-term of Ω{}_{} is not Λ·X^{deg}",
            if plus { "⁺" } else { "⁻" },
            2 * n
        ))),
    }
}
