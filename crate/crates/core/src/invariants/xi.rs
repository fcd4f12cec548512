use crate::polyring::{PolyMatrix, Polynomial, Ring, Table};
use crate::quadforms::{standard_space_in, QuadraticSpace, SpaceKind};
use crate::steenrod::SteenrodContext;

use super::{abstract_table, s_table, var, xi_name, InvariantError, Result};

/// The ξ-sequence of a standard space, realised in S.
#[derive(Clone, Debug)]
pub struct XiContext {
    pub n: usize,
    pub kind: SpaceKind,
    pub space: QuadraticSpace,
    pub table: Table,
    /// ξ₀…ξ_{2n+1}; one beyond ξ_{2n} so that total squares of ξ_{2n} can be written.
    pub xi: Vec<Polynomial>,
    pub steenrod: SteenrodContext,
    pub abstract_table: Table,
}

impl XiContext {
    pub fn new(n: usize, kind: SpaceKind) -> Result<Self> {
        if n == 0 {
            return Err(InvariantError::InvalidArgument("n must be at least 1".into()));
        }
        let table = s_table(n, kind);
        let space = standard_space_in(n, kind, &table);
        let coords: Vec<String> = (0..space.dim()).map(|k| space.coord_name(k).to_string()).collect();
        let names: Vec<&str> = coords.iter().map(String::as_str).collect();
        let steenrod = SteenrodContext::new(&table, &names)?;
        let mut xi = vec![space.form()];
        for i in 0..=2 * n {
            let next = steenrod.sq(1 << i, &xi[i])?;
            xi.push(next);
        }
        Ok(XiContext { n, kind, space, table, xi, steenrod, abstract_table: abstract_table(n) })
    }

    pub fn var(&self, name: &str) -> Polynomial {
        var(&self.table, name)
    }

    /// x₁^{2^j}x₂+x₁x₂^{2^j}+… over the hyperbolic pairs of U.
    pub fn closed_form(&self, j: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.table, Ring::F2);
        for k in 0..self.n {
            let a = self.var(&format!("x{}", 2 * k + 1));
            let b = self.var(&format!("x{}", 2 * k + 2));
            acc = acc + a.frobenius(j)? * &b + a * b.frobenius(j)?;
        }
        Ok(acc)
    }

    /// Indices in S of x₁…x_{2n}.
    pub fn u_coords(&self) -> Vec<usize> {
        (1..=2 * self.n).map(|i| self.table.require(&format!("x{i}")).expect("coordinate")).collect()
    }

    /// Bindings ξᵢ ↦ S for substituting abstract polynomials.
    pub fn xi_images(&self) -> Vec<(String, Polynomial)> {
        (0..=2 * self.n).map(|i| (xi_name(i), self.xi[i].clone())).collect()
    }
}

/// Dickson coefficients of U*: ∏_{x∈U*}(X+x) = Σ cⱼX^{2^j}.
#[derive(Clone, Debug)]
pub struct DicksonData {
    pub n: usize,
    pub table: Table,
    /// Chern polynomial of U* in the variable X of S.
    pub d: Polynomial,
    /// c₀…c_{2n}, with c_{2n} = 1.
    pub c: Vec<Polynomial>,
}

impl DicksonData {
    /// Builds the coefficients through D_{k+1}(X) = D_k(X)² + D_k(y)·D_k(X).
    pub fn new(ctx: &XiContext) -> Result<Self> {
        let n = ctx.n;
        if n > 3 {
            return Err(InvariantError::SizeLimitExceeded { what: "dickson", n, limit: 3 });
        }
        let table = &ctx.table;
        let one = Polynomial::one(table, Ring::F2);
        let mut c = vec![one];
        for y in 1..=2 * n {
            let y = ctx.var(&format!("x{y}"));
            let mut dy = Polynomial::zero(table, Ring::F2);
            for (j, cj) in c.iter().enumerate() {
                dy = dy + cj * &y.frobenius(j as u32)?;
            }
            let mut next = Vec::with_capacity(c.len() + 1);
            next.push(&dy * &c[0]);
            for j in 1..c.len() {
                next.push(c[j - 1].square()? + &dy * &c[j]);
            }
            next.push(c[c.len() - 1].square()?);
            c = next;
        }
        let x = ctx.var("X");
        let mut d = Polynomial::zero(table, Ring::F2);
        for (j, cj) in c.iter().enumerate() {
            d = d + cj * &x.pow(1 << j)?;
        }
        Ok(DicksonData { n, table: table.clone(), d, c })
    }

    /// D evaluated at p: Σ cⱼ p^{2^j}.
    pub fn eval(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.table, Ring::F2);
        for (j, cj) in self.c.iter().enumerate() {
            acc = acc + cj * &p.frobenius(j as u32)?;
        }
        Ok(acc)
    }

    /// Moore matrix C₀ with entry (i, j) = x_{j+1}^{2^i}.
    pub fn moore(&self, ctx: &XiContext) -> Result<PolyMatrix> {
        let m = 2 * self.n;
        Ok(PolyMatrix::from_fn(&self.table, Ring::F2, m, m, |i, j| {
            Ok(ctx.var(&format!("x{}", j + 1)).frobenius(i as u32)?)
        })?)
    }

    /// det C₀ = c₀, and Σᵢ cᵢ x_j^{2^i} = x_j^{2^{2n}} for every coordinate.
    pub fn verify(&self, ctx: &XiContext) -> Result<()> {
        let moore = self.moore(ctx)?;
        super::check_eq("moore determinant", &moore.determinant()?, &self.c[0])?;
        let m = 2 * self.n;
        for j in 0..m {
            let x = ctx.var(&format!("x{}", j + 1));
            let mut lhs = Polynomial::zero(&self.table, Ring::F2);
            for i in 0..m {
                lhs = lhs + moore.get(i, j) * &self.c[i];
            }
            super::check_eq("prerelations", &lhs, &x.frobenius(m as u32)?)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaMethod {
    Pfaffian,
    Matchings,
}

/// Alternating matrix on indices `idx` with entry ξ_{|i−j|}^{2^{min(i,j)}}.
pub(crate) fn xi_matrix(table: &Table, idx: &[usize]) -> Result<PolyMatrix> {
    let m = idx.len();
    Ok(PolyMatrix::from_fn(table, Ring::F2, m, m, |r, c| {
        let (i, j) = (idx[r], idx[c]);
        if i == j {
            return Ok(Polynomial::zero(table, Ring::F2));
        }
        Ok(var(table, &xi_name(i.abs_diff(j))).frobenius(i.min(j) as u32)?)
    })?)
}

/// Λ_{2n} in the abstract table of level n.
pub fn lambda(n: usize, method: LambdaMethod) -> Result<Polynomial> {
    lambda_in(n, method, &abstract_table(n))
}

pub(crate) fn lambda_in(n: usize, method: LambdaMethod, table: &Table) -> Result<Polynomial> {
    if n > 4 {
        return Err(InvariantError::SizeLimitExceeded { what: "lambda", n, limit: 4 });
    }
    if n == 0 {
        return Ok(Polynomial::one(table, Ring::F2));
    }
    let idx: Vec<usize> = (0..2 * n).collect();
    match method {
        LambdaMethod::Pfaffian => Ok(xi_matrix(table, &idx)?.pfaffian()?),
        LambdaMethod::Matchings => {
            let mut acc = Vec::new();
            let one = Polynomial::one(table, Ring::F2);
            matchings(table, &idx, one, &mut acc)?;
            Ok(crate::polyring::sum(table, Ring::F2, acc.iter()))
        }
    }
}

/// Sum over perfect matchings of {1…2n}; the pair (i, j), i < j, contributes ξ_{j−i}^{2^{i−1}}.
fn matchings(table: &Table, rest: &[usize], prod: Polynomial, out: &mut Vec<Polynomial>) -> Result<()> {
    let Some((&i, tail)) = rest.split_first() else {
        out.push(prod);
        return Ok(());
    };
    for (k, &j) in tail.iter().enumerate() {
        let e = var(table, &xi_name(j - i)).frobenius(i as u32)?;
        let mut remaining = tail.to_vec();
        remaining.remove(k);
        matchings(table, &remaining, &prod * &e, out)?;
    }
    Ok(())
}

/// Λ_{2n,i} as the Pfaffian of the (2n+1)-point ξ-matrix with index i removed.
pub(crate) fn lambda_i_pfaffian(n: usize, i: usize, table: &Table) -> Result<Polynomial> {
    if i > 2 * n {
        return Err(InvariantError::InvalidArgument(format!("i={i} exceeds 2n={}", 2 * n)));
    }
    let idx: Vec<usize> = (0..=2 * n).filter(|&k| k != i).collect();
    Ok(xi_matrix(table, &idx)?.pfaffian()?)
}
