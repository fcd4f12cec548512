use crate::polyring::{Polynomial, Ring, Table};
use crate::quadforms::{enumerate_families, even_families, SpaceKind};

use super::xi::{DicksonData, XiContext};
use super::{check_eq, InvariantError, Result};

/// Chern polynomials of the ± families, in S.
#[derive(Clone, Debug)]
pub struct ChernData {
    pub n: usize,
    pub kind: SpaceKind,
    pub table: Table,
    pub p_plus: Polynomial,
    pub p_minus: Polynomial,
    pub q_plus: Polynomial,
    pub q_minus: Polynomial,
    /// d_n…d_{2n−1}.
    pub d: Vec<Polynomial>,
    pub a_plus: usize,
    pub a_minus: usize,
}

fn product<'a>(table: &Table, factors: impl Iterator<Item = Polynomial> + 'a) -> Polynomial {
    factors.fold(Polynomial::one(table, Ring::F2), |acc, f| acc * f)
}

impl ChernData {
    /// For the odd kind the families are A± ⊂ V* \ U*; for the even kinds they
    /// are the x ∈ U* with ξ + x² of ± type.
    pub fn new(ctx: &XiContext, dickson: &DicksonData) -> Result<Self> {
        let n = ctx.n;
        let table = &ctx.table;
        let t = ctx.var("t");
        let x = ctx.var("X");
        let space = &ctx.space;
        let (plus, minus) = match ctx.kind {
            SpaceKind::OddNonsingular => {
                let f = enumerate_families(space)?;
                (f.a_plus, f.a_minus)
            }
            _ => even_families(space)?,
        };
        let xi0 = &ctx.xi[0];
        let p_of = |set: &[u32]| product(table, set.iter().map(|&v| &t + &space.linear_form(v)));
        // the forms of B± are ξ₀ + x² for x in A±
        let q_of = |set: &[u32]| {
            product(table, set.iter().map(|&v| &x + xi0 + &space.linear_form(v).square().expect("small")))
        };
        let p_plus = p_of(&plus);
        let p_minus = p_of(&minus);
        let q_plus = q_of(&plus);
        let q_minus = q_of(&minus);
        let t_idx = table.require("t")?;
        let d = (n..2 * n)
            .map(|j| p_minus.coefficient_in(t_idx, ((1u32 << (j - 1)) - (1u32 << (n - 1))) as u16))
            .collect();
        let data = ChernData {
            n,
            kind: ctx.kind,
            table: table.clone(),
            p_plus,
            p_minus,
            q_plus,
            q_minus,
            d,
            a_plus: plus.len(),
            a_minus: minus.len(),
        };
        data.verify(ctx, dickson)?;
        Ok(data)
    }

    /// Q(t² + ξ₀).
    pub fn q_at(&self, q: &Polynomial, ctx: &XiContext) -> Result<Polynomial> {
        let arg = ctx.var("t").square()? + &ctx.xi[0];
        Ok(q.substitute(&[("X", &arg)], &self.table)?)
    }

    fn verify(&self, ctx: &XiContext, dickson: &DicksonData) -> Result<()> {
        check_eq("p-squared minus", &self.p_minus.square()?, &self.q_at(&self.q_minus, ctx)?)?;
        check_eq("p-squared plus", &self.p_plus.square()?, &self.q_at(&self.q_plus, ctx)?)?;
        let dt = dickson.eval(&ctx.var("t"))?.change_table(&self.table)?;
        let rhs = match self.kind {
            SpaceKind::OddNonsingular => dt + dickson.eval(&ctx.var("x0"))?,
            _ => dt,
        };
        check_eq("p-squared product", &(&self.p_minus * &self.p_plus), &rhs)
    }

    pub fn get_p(&self, plus: bool) -> &Polynomial {
        if plus {
            &self.p_plus
        } else {
            &self.p_minus
        }
    }

    pub fn get_q(&self, plus: bool) -> &Polynomial {
        if plus {
            &self.q_plus
        } else {
            &self.q_minus
        }
    }

    /// Value at t = 0.
    pub fn constant(&self, plus: bool) -> Polynomial {
        let t_idx = self.table.require("t").expect("t");
        self.get_p(plus).coefficient_in(t_idx, 0)
    }
}

/// η = ∏_{x∈A} x; checks η = P⁺(0)P⁻(0) = D(x₀).
pub(crate) fn eta(ctx: &XiContext, dickson: &DicksonData, chern: &ChernData) -> Result<Polynomial> {
    if ctx.kind != SpaceKind::OddNonsingular {
        return Err(InvariantError::InvalidArgument("η is defined for the odd space".into()));
    }
    let space = &ctx.space;
    let eta = product(&ctx.table, (0..1u32 << space.dim()).filter(|v| v & 1 == 1).map(|v| space.linear_form(v)));
    check_eq("eta product", &eta, &(chern.constant(true) * chern.constant(false)))?;
    check_eq("eta dickson", &eta, &dickson.eval(&ctx.var("x0"))?)?;
    Ok(eta)
}
