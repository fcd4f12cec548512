use once_cell::sync::OnceCell;

use crate::polyring::{Polynomial, Ring, Table};
use crate::quadforms::SpaceKind;

use super::chern::{self, ChernData};
use super::express::{express_in_xi, Generator};
use super::matrices::{self, JfMatrices, KeMatrices, RelationKind, RelationSystem};
use super::omega::{self, OmegaPm};
use super::xi::{self, DicksonData, LambdaMethod, XiContext};
use super::{abstract_table, check_eq, var, xi_name, InvariantError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Permit the n = 3 computations.
    pub allow_slow: bool,
}

impl Options {
    pub fn slow() -> Self {
        Options { allow_slow: true }
    }

    /// `INVFORGE_ALLOW_SLOW=1` turns on slow mode.
    pub fn from_env() -> Self {
        let allow_slow = std::env::var("INVFORGE_ALLOW_SLOW").is_ok_and(|v| v == "1" || v.eq_ignore_ascii_case("true"));
        Options { allow_slow }
    }
}

const KINDS: [SpaceKind; 3] = [SpaceKind::OddNonsingular, SpaceKind::EvenPlus, SpaceKind::EvenMinus];

fn slot(kind: SpaceKind) -> usize {
    KINDS.iter().position(|&k| k == kind).expect("kind")
}

/// Lazily computed invariants of one level n, in the abstract table of that level.
pub struct Tower {
    n: usize,
    opts: Options,
    table: Table,
    lower: OnceCell<Box<Tower>>,
    ctx: [OnceCell<XiContext>; 3],
    dickson: [OnceCell<DicksonData>; 3],
    chern: [OnceCell<ChernData>; 3],
    lambda: OnceCell<Polynomial>,
    lambda_is: OnceCell<Vec<Polynomial>>,
    omega: OnceCell<Polynomial>,
    omega_pm: OnceCell<OmegaPm>,
    ke: OnceCell<KeMatrices>,
    jf: OnceCell<JfMatrices>,
    relations: [OnceCell<RelationSystem>; 4],
}

impl Tower {
    pub fn new(n: usize, opts: Options) -> Result<Self> {
        if n == 0 {
            return Err(InvariantError::InvalidArgument("n must be at least 1".into()));
        }
        Ok(Tower {
            n,
            opts,
            table: abstract_table(n),
            lower: OnceCell::new(),
            ctx: Default::default(),
            dickson: Default::default(),
            chern: Default::default(),
            lambda: OnceCell::new(),
            lambda_is: OnceCell::new(),
            omega: OnceCell::new(),
            omega_pm: OnceCell::new(),
            ke: OnceCell::new(),
            jf: OnceCell::new(),
            relations: Default::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn options(&self) -> Options {
        self.opts
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    /// Everything beyond Λ is limited to n ≤ 3, and n = 3 needs slow mode.
    pub fn gate(&self, what: &'static str) -> Result<()> {
        if self.n > 3 {
            return Err(InvariantError::SizeLimitExceeded { what, n: self.n, limit: 3 });
        }
        if self.n == 3 && !self.opts.allow_slow {
            return Err(InvariantError::SlowGated { what, n: self.n });
        }
        Ok(())
    }

    /// Whether checks that expand into S are run (they are infeasible at n = 3).
    pub fn checks_in_s(&self) -> bool {
        self.n <= 2
    }

    pub fn lower(&self) -> Result<&Tower> {
        if self.n < 2 {
            return Err(InvariantError::InvalidArgument("level 0 has no tower".into()));
        }
        self.lower.get_or_try_init(|| Ok(Box::new(Tower::new(self.n - 1, self.opts)?))).map(|b| &**b)
    }

    pub fn var(&self, name: &str) -> Polynomial {
        var(&self.table, name)
    }

    pub fn lift(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(p.change_table(&self.table)?)
    }

    pub fn ctx(&self, kind: SpaceKind) -> Result<&XiContext> {
        self.ctx[slot(kind)].get_or_try_init(|| XiContext::new(self.n, kind))
    }

    pub fn dickson(&self, kind: SpaceKind) -> Result<&DicksonData> {
        self.dickson[slot(kind)].get_or_try_init(|| {
            let ctx = self.ctx(kind)?;
            let d = DicksonData::new(ctx)?;
            d.verify(ctx)?;
            Ok(d)
        })
    }

    pub fn chern(&self, kind: SpaceKind) -> Result<&ChernData> {
        self.gate("chern")?;
        self.chern[slot(kind)].get_or_try_init(|| ChernData::new(self.ctx(kind)?, self.dickson(kind)?))
    }

    pub fn eta(&self) -> Result<Polynomial> {
        if self.n > 2 {
            return Err(InvariantError::SizeLimitExceeded { what: "eta", n: self.n, limit: 2 });
        }
        let kind = SpaceKind::OddNonsingular;
        chern::eta(self.ctx(kind)?, self.dickson(kind)?, self.chern(kind)?)
    }

    pub fn lambda(&self) -> Result<&Polynomial> {
        self.lambda.get_or_try_init(|| xi::lambda_in(self.n, LambdaMethod::Pfaffian, &self.table))
    }

    /// Λ_{2n,0}…Λ_{2n,2n}. For n ≤ 2 each is Sq^{2^{2n}−2^i} of Λ_{2n} = c₀ in S,
    /// re-expressed in ξ₁…ξ_{2n}, and must agree with the Pfaffian of the ξ-matrix
    /// with index i removed; at n = 3 the Pfaffian is used directly.
    pub fn lambda_is(&self) -> Result<&Vec<Polynomial>> {
        self.lambda_is.get_or_try_init(|| {
            if self.n > 3 {
                return Err(InvariantError::SizeLimitExceeded { what: "lambda_i", n: self.n, limit: 3 });
            }
            (0..=2 * self.n)
                .map(|i| {
                    let pf = xi::lambda_i_pfaffian(self.n, i, &self.table)?;
                    if self.checks_in_s() {
                        let via_s = self.lambda_i_steenrod(i)?;
                        check_eq("lambda_i routes", &via_s, &pf)?;
                    }
                    Ok(pf)
                })
                .collect()
        })
    }

    pub fn lambda_i(&self, i: usize) -> Result<&Polynomial> {
        self.lambda_is()?.get(i).ok_or_else(|| InvariantError::InvalidArgument(format!("i={i} exceeds 2n")))
    }

    /// Sq^{2^{2n}−2^i}(Λ_{2n}) computed in S and written in ξ₁…ξ_{2n}.
    pub fn lambda_i_steenrod(&self, i: usize) -> Result<Polynomial> {
        let kind = SpaceKind::OddNonsingular;
        let ctx = self.ctx(kind)?;
        let lam = self.to_s(self.lambda()?, kind)?;
        let top = 1u32 << (2 * self.n);
        let sq = ctx.steenrod.sq(top - (1 << i), &lam)?;
        let gens: Vec<Generator> = (1..=2 * self.n).map(|k| Generator::new(xi_name(k), ctx.xi[k].clone())).collect();
        express_in_xi(&sq, &gens, false, &self.table)
    }

    pub fn omega(&self) -> Result<&Polynomial> {
        self.gate("omega")?;
        self.omega.get_or_try_init(|| omega::omega_det(self.n, &self.table))
    }

    /// Ω^±_{2n−2} in this table; Ω⁺₀ = X, Ω⁻₀ = 1.
    pub fn lower_omega(&self, plus: bool) -> Result<Polynomial> {
        if self.n == 1 {
            return Ok(if plus { self.var("X") } else { Polynomial::one(&self.table, Ring::F2) });
        }
        self.lift(self.lower()?.omega_pm()?.get(plus))
    }

    /// Ω^±_{2n−4} in this table (n ≥ 2).
    pub fn lower2_omega(&self, plus: bool) -> Result<Polynomial> {
        self.lift(&self.lower()?.lower_omega(plus)?)
    }

    pub fn lower_lambda(&self) -> Result<Polynomial> {
        if self.n == 1 {
            return Ok(Polynomial::one(&self.table, Ring::F2));
        }
        self.lift(self.lower()?.lambda()?)
    }

    pub fn omega_pm(&self) -> Result<&OmegaPm> {
        self.gate("omega_pm")?;
        self.omega_pm.get_or_try_init(|| {
            let n = self.n;
            let (plus, minus) = omega::factor(n, self.omega()?, &self.lower_omega(true)?, &self.lower_omega(false)?)?;
            let lam = self.lambda()?;
            omega::check_leading(n, &plus, lam, true)?;
            omega::check_leading(n, &minus, lam, false)?;
            let lower_alphas = |p: bool| -> Result<Vec<Polynomial>> {
                if n == 1 {
                    let a0 = if p { self.var("X") } else { Polynomial::one(&self.table, Ring::F2) };
                    return Ok(vec![a0]);
                }
                self.lower()?.omega_pm()?.alphas(p).iter().map(|a| self.lift(a)).collect()
            };
            let lis = self.lambda_is()?;
            let mut alpha_plus = lower_alphas(true)?;
            alpha_plus.push(omega::next_alpha(n, &plus, lis, &alpha_plus)?);
            let mut alpha_minus = lower_alphas(false)?;
            alpha_minus.push(omega::next_alpha(n, &minus, lis, &alpha_minus)?);
            Ok(OmegaPm { plus, minus, alpha_plus, alpha_minus })
        })
    }

    /// Image in S of an abstract polynomial. ξᵢ, cⱼ and dⱼ are bound; X and t pass
    /// through by name. d's are only bound when Chern data is available.
    pub fn to_s(&self, p: &Polynomial, kind: SpaceKind) -> Result<Polynomial> {
        let ctx = self.ctx(kind)?;
        let support: Vec<&str> = p.support().into_iter().map(|i| p.table().name(i)).collect();
        let mut images: Vec<(String, Polynomial)> = Vec::new();
        for name in support {
            if let Some(i) = name.strip_prefix("xi").and_then(|s| s.parse::<usize>().ok()) {
                let img = ctx.xi.get(i).cloned().ok_or_else(|| InvariantError::InvalidArgument(format!("no image for {name}")))?;
                images.push((name.to_string(), img));
            } else if let Some(j) = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
                images.push((name.to_string(), self.dickson(kind)?.c[j].clone()));
            } else if let Some(j) = name.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
                let d = &self.chern(kind)?.d;
                let img = j.checked_sub(self.n).and_then(|k| d.get(k)).cloned();
                images.push((name.to_string(), img.ok_or_else(|| InvariantError::InvalidArgument(format!("no image for {name}")))?));
            }
        }
        let bindings: Vec<(&str, &Polynomial)> = images.iter().map(|(n, p)| (n.as_str(), p)).collect();
        Ok(p.substitute(&bindings, &ctx.table)?)
    }

    /// Generators with their S-images, by name (ξᵢ, cⱼ, dⱼ); d's and c's are linear.
    pub fn generators(&self, names: &[&str], kind: SpaceKind) -> Result<Vec<Generator>> {
        names
            .iter()
            .map(|&name| {
                let img = self.to_s(&self.var(name), kind)?;
                Ok(if name.starts_with('c') || name.starts_with('d') {
                    Generator::linear(name, img)
                } else {
                    Generator::new(name, img)
                })
            })
            .collect()
    }

    pub fn ke(&self) -> Result<&KeMatrices> {
        self.gate("ke")?;
        self.ke.get_or_try_init(|| matrices::ke(self))
    }

    pub fn jf(&self) -> Result<&JfMatrices> {
        self.gate("jf")?;
        self.jf.get_or_try_init(|| matrices::jf(self))
    }

    pub fn relations(&self, kind: RelationKind) -> Result<&RelationSystem> {
        self.gate("relations")?;
        self.relations[kind as usize].get_or_try_init(|| matrices::relation_system(self, kind))
    }

    /// Q^±(X) = Σ_{ℓ<n} c_{n+ℓ}(α^±_ℓ)^{2^{n−ℓ}} + α^±_n, in the abstract ring.
    pub fn q_abstract(&self, plus: bool) -> Result<Polynomial> {
        let alphas = self.omega_pm()?.alphas(plus);
        let n = self.n;
        let mut acc = alphas[n].clone();
        for (l, a) in alphas.iter().enumerate().take(n) {
            acc = acc + self.var(&format!("c{}", n + l)) * a.frobenius((n - l) as u32)?;
        }
        Ok(acc)
    }

    /// P^±(t) in ξ₀…ξ_{2n−1} and the d's: the square root of Q^±(t²+ξ₀) after
    /// substituting c = J^{*2}d² + F.
    pub fn p_abstract(&self, plus: bool) -> Result<Polynomial> {
        let jf = self.jf()?;
        let n = self.n;
        let c_sub: Vec<(String, Polynomial)> = (0..n).map(|l| Ok((format!("c{}", n + l), jf.c_in_d(l, &self.table)?))).collect::<Result<_>>()?;
        let bindings: Vec<(&str, &Polynomial)> = c_sub.iter().map(|(a, b)| (a.as_str(), b)).collect();
        let q = self.q_abstract(plus)?.substitute(&bindings, &self.table)?;
        let arg = self.var("t").square()? + self.var("xi0");
        let q_t = q.substitute(&[("X", &arg)], &self.table)?;
        q_t.sqrt_exact().map_err(|_| InvariantError::SquareRootFailed { entry: format!("Q{}(t²+ξ₀)", if plus { "⁺" } else { "⁻" }) })
    }

    /// Evaluates an X-polynomial of this table at X = ξ₀.
    pub fn at_xi0(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(p.substitute(&[("X", &self.var("xi0"))], &self.table)?)
    }
}

pub(crate) fn all_kinds() -> [SpaceKind; 3] {
    KINDS
}
