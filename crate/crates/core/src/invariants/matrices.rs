use std::collections::BTreeMap;

use crate::polyring::{PolyMatrix, Polynomial, Ring, Table};
use crate::quadforms::SpaceKind;

use super::express::express_in_xi;
use super::tower::Tower;
use super::xi::xi_matrix;
use super::{check_eq, diff_summary, xi_name, InvariantError, Result};

/// c_{<n} = K·c_{≥n} + E.
#[derive(Clone, Debug)]
pub struct KeMatrices {
    pub k: PolyMatrix,
    pub e: PolyMatrix,
}

/// c_{≥n} = J^{*2}·(d²) + F, with U = J⁻¹ and V the inhomogeneous column of d² = U^{*2}c + V.
#[derive(Clone, Debug)]
pub struct JfMatrices {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub j: PolyMatrix,
    pub f: PolyMatrix,
}

impl JfMatrices {
    /// c_{n+l} written in the d's.
    pub fn c_in_d(&self, l: usize, table: &Table) -> Result<Polynomial> {
        let n = self.j.rows();
        let mut acc = self.f.get(l, 0).clone();
        for k in 0..n {
            let d = Polynomial::var(table, Ring::F2, &format!("d{}", n + k))?;
            acc = acc + self.j.get(l, k).square()? * d.square()?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Sp = 0,
    OOdd = 1,
    OMinus = 2,
    OPlus = 3,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [RelationKind::Sp, RelationKind::OOdd, RelationKind::OMinus, RelationKind::OPlus];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Sp => "sp",
            RelationKind::OOdd => "o-odd",
            RelationKind::OMinus => "o-minus",
            RelationKind::OPlus => "o-plus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// The concrete model the relators are evaluated in.
    pub fn space_kind(self) -> SpaceKind {
        match self {
            RelationKind::Sp | RelationKind::OOdd => SpaceKind::OddNonsingular,
            RelationKind::OMinus => SpaceKind::EvenMinus,
            RelationKind::OPlus => SpaceKind::EvenPlus,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationSystem {
    pub kind: RelationKind,
    pub n: usize,
    pub matrices: BTreeMap<String, PolyMatrix>,
    pub relators: Vec<Polynomial>,
    /// Per relator: the generator it solves for, when it is a definition rather than a relation.
    pub eliminates: Vec<Option<String>>,
    /// Matrix name ↦ claimed determinant (already checked).
    pub claimed_dets: BTreeMap<String, Polynomial>,
    pub residues_checked: bool,
}

impl RelationSystem {
    /// Relators that are genuine relations, i.e. do not just define a generator.
    pub fn relations(&self) -> Vec<&Polynomial> {
        self.relators.iter().zip(&self.eliminates).filter(|(_, e)| e.is_none()).map(|(r, _)| r).collect()
    }
}

fn column(table: &Table, entries: Vec<Polynomial>) -> Result<PolyMatrix> {
    Ok(PolyMatrix::column(table, Ring::F2, entries)?)
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

pub(crate) fn ke(tower: &Tower) -> Result<KeMatrices> {
    let n = tower.n();
    let table = tower.table();
    let zero = Polynomial::zero(table, Ring::F2);
    let k = if n == 1 {
        PolyMatrix::zeros(table, Ring::F2, 1, 1)
    } else {
        let low = tower.lower()?.ke()?;
        let (lk, le) = (low.k.change_table(table)?.square_entries()?, low.e.change_table(table)?.square_entries()?);
        PolyMatrix::from_fn(table, Ring::F2, n, n, |r, c| {
            Ok(match (r, c) {
                (0, _) => zero.clone(),
                (r, c) if c < n - 1 => lk.get(r - 1, c).clone(),
                (r, _) => le.get(r - 1, 0).clone(),
            })
        })?
    };
    for r in 0..n {
        for c in 0..n - r {
            if !k.get(r, c).is_zero() {
                return Err(InvariantError::Construction(format!("K_{n} is nonzero at ({r},{c}) on or above the anti-diagonal")));
            }
        }
    }
    // E = (Λ_{2n,i} + Σ K_{ik}Λ_{2n,n+k}) / Λ_{2n}, since cᵢ = Λ_{2n,i}/c₀
    let lis = tower.lambda_is()?;
    let lam = tower.lambda()?;
    let mut e = Vec::with_capacity(n);
    for i in 0..n {
        let mut num = lis[i].clone();
        for c in 0..n {
            num = num + k.get(i, c) * &lis[n + c];
        }
        let ei = num.divide_exact(lam).map_err(|err| InvariantError::NotInSubring {
            degree: num.degree().unwrap_or(0),
            generators: format!("ξ-polynomials (E_{n} entry {i}: {err})"),
        })?;
        e.push(ei);
    }
    check_eq("E top entry is Λ", &e[0], lam)?;
    if tower.checks_in_s() {
        // independent route: subtract in S and re-express
        let kind = SpaceKind::OddNonsingular;
        let c = &tower.dickson(kind)?.c;
        let names: Vec<String> = (1..=2 * n).map(xi_name).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let gens = tower.generators(&names, kind)?;
        for (i, ei) in e.iter().enumerate() {
            let mut val = c[i].clone();
            for col in 0..n {
                val = val + tower.to_s(k.get(i, col), kind)? * &c[n + col];
            }
            check_eq("E via S", &express_in_xi(&val, &gens, false, table)?, ei)?;
        }
    }
    Ok(KeMatrices { k, e: column(table, e)? })
}

pub(crate) fn jf(tower: &Tower) -> Result<JfMatrices> {
    let n = tower.n();
    let table = tower.table();
    let alphas = &tower.omega_pm()?.alpha_minus;
    let t_idx = table.require("t")?;
    let arg = tower.var("t").square()? + tower.var("xi0");
    let at = |p: &Polynomial| -> Result<Polynomial> { Ok(p.substitute(&[("X", &arg)], table)?) };
    // exponent of t carrying d_j in P⁻
    let e = |r: usize| ((1u32 << (n + r - 1)) - (1u32 << (n - 1))) as u16;
    let g: Vec<Polynomial> = (0..n).map(|l| at(&alphas[l])?.frobenius((n - l - 1) as u32).map_err(Into::into)).collect::<Result<_>>()?;
    let u = PolyMatrix::from_fn(table, Ring::F2, n, n, |r, l| Ok(g[l].coefficient_in(t_idx, e(r))))?;
    let top = at(&alphas[n])?;
    let v = column(table, (0..n).map(|r| top.coefficient_in(t_idx, 2 * e(r))).collect())?;
    for r in 0..n {
        for l in 0..=r {
            let want = if l == r { Polynomial::one(table, Ring::F2) } else { Polynomial::zero(table, Ring::F2) };
            if u.get(r, l) != &want {
                return Err(InvariantError::TriangularInversionFailed(format!("U_{n} is not upper uni-triangular at ({r},{l})")));
            }
        }
    }
    let id = PolyMatrix::identity(table, Ring::F2, n);
    let nil = u.add(&id)?;
    let mut j = id.clone();
    let mut power = id.clone();
    for _ in 1..n {
        power = power.mul(&nil)?;
        j = j.add(&power)?;
    }
    if u.mul(&j)? != id {
        return Err(InvariantError::TriangularInversionFailed("U·J ≠ I".into()));
    }
    let f = j.square_entries()?.mul(&v)?;
    let jf = JfMatrices { u, v, j, f };
    if tower.checks_in_s() {
        let kind = SpaceKind::OddNonsingular;
        let c = &tower.dickson(kind)?.c;
        for l in 0..n {
            check_eq("c = J²d² + F", &tower.to_s(&jf.c_in_d(l, table)?, kind)?, &c[n + l])?;
        }
    }
    Ok(jf)
}

fn det_check(name: &str, m: &PolyMatrix, expected: &Polynomial, dets: &mut BTreeMap<String, Polynomial>) -> Result<()> {
    let d = m.determinant()?;
    if &d != expected {
        return Err(InvariantError::DeterminantMismatch {
            matrix: name.to_string(),
            expected: format!("{expected} ({})", diff_summary(&d, expected)),
        });
    }
    dets.insert(name.to_string(), d);
    Ok(())
}

fn sqrt_entries(m: &PolyMatrix, what: &str) -> Result<PolyMatrix> {
    m.sqrt_entries().map_err(|e| InvariantError::SquareRootFailed { entry: format!("{what}: {e}") })
}

/// The square-rooted system shared by the orthogonal kinds: rows i = 1…n−1 read
/// N·d + ρ = 0 with N = √(L'K + R')·J and ρᵢ = ξ_{2n−i}^{2^{i−1}} + √(L'E + (L'K+R')F)ᵢ.
struct Fro {
    nmat: PolyMatrix,
    rho: Vec<Polynomial>,
}

fn fro(tower: &Tower, mats: &mut BTreeMap<String, PolyMatrix>) -> Result<Fro> {
    let n = tower.n();
    let table = tower.table();
    let ke = tower.ke()?;
    let jf = tower.jf()?;
    let xi = xi_matrix(table, &range(0, 2 * n))?;
    let l = xi.submatrix(&range(0, n), &range(0, n));
    let r = xi.submatrix(&range(0, n), &range(n, 2 * n));
    let lp = l.submatrix(&range(1, n), &range(0, n));
    let rp = r.submatrix(&range(1, n), &range(0, n));
    let lkr = lp.mul(&ke.k)?.add(&rp)?;
    let nmat = sqrt_entries(&lkr, "L'K+R'")?.mul(&jf.j)?;
    if n >= 2 {
        // √(L'K) = L_{n−1}(K_{n−1} | E_{n−1})
        let low = tower.lower()?;
        let lke = low.ke()?;
        let l1 = xi_matrix(table, &range(0, 2 * n - 2))?.submatrix(&range(0, n - 1), &range(0, n - 1));
        let ke1 = PolyMatrix::from_fn(table, Ring::F2, n - 1, n, |a, b| {
            let p = if b < n - 1 { lke.k.get(a, b) } else { lke.e.get(a, 0) };
            Ok(p.change_table(table)?)
        })?;
        let block = l1.mul(&ke1)?.add(&sqrt_entries(&rp, "R'")?)?.mul(&jf.j)?;
        if block != nmat {
            return Err(InvariantError::Construction("block form of N disagrees with √(L'K+R')·J".into()));
        }
    }
    let inner = lp.mul(&ke.e)?.add(&lkr.mul(&jf.f)?)?;
    let root = sqrt_entries(&inner, "L'E+(L'K+R')F")?;
    let rho = (1..n)
        .map(|i| Ok(tower.var(&xi_name(2 * n - i)).frobenius((i - 1) as u32)? + root.get(i - 1, 0)))
        .collect::<Result<_>>()?;
    for (name, m) in [("L", l), ("R", r), ("K", ke.k.clone()), ("E", ke.e.clone()), ("J", jf.j.clone()), ("F", jf.f.clone())] {
        mats.insert(name.into(), m);
    }
    mats.insert("U".into(), jf.u.clone());
    mats.insert("V".into(), jf.v.clone());
    mats.insert("N".into(), nmat.clone());
    Ok(Fro { nmat, rho })
}

fn d_vars(tower: &Tower) -> Vec<Polynomial> {
    let n = tower.n();
    (n..2 * n).map(|j| tower.var(&format!("d{j}"))).collect()
}

/// Rows of N·d + ρ.
fn rows(nmat: &PolyMatrix, d: &[Polynomial], rho: &[Polynomial]) -> Vec<Polynomial> {
    (0..nmat.rows())
        .map(|i| {
            let mut acc = rho[i].clone();
            for (k, dk) in d.iter().enumerate() {
                acc = acc + nmat.get(i, k) * dk;
            }
            acc
        })
        .collect()
}

/// f₀…f_n with P⁺(0) = Σ_{k<n} f_k d_{n+k} + f_n, from c = J^{*2}d² + F and
/// P⁺(0)² = Σ_{ℓ<n} c_{n+ℓ}α⁺_ℓ(ξ₀)^{2^{n−ℓ}} + α⁺_n(ξ₀).
pub(crate) fn f_row(tower: &Tower) -> Result<Vec<Polynomial>> {
    let n = tower.n();
    let jf = tower.jf()?;
    let a: Vec<Polynomial> = tower.omega_pm()?.alpha_plus.iter().map(|p| tower.at_xi0(p)).collect::<Result<_>>()?;
    let mut f = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut acc = Polynomial::zero(tower.table(), Ring::F2);
        for (l, al) in a.iter().enumerate().take(n) {
            acc = acc + jf.j.get(l, k) * &al.frobenius((n - l - 1) as u32)?;
        }
        f.push(acc);
    }
    let mut sq = a[n].clone();
    for (l, al) in a.iter().enumerate().take(n) {
        sq = sq + jf.f.get(l, 0) * &al.frobenius((n - l) as u32)?;
    }
    f.push(sq.sqrt_exact().map_err(|_| InvariantError::SquareRootFailed { entry: "f_n²".into() })?);
    Ok(f)
}

pub(crate) fn relation_system(tower: &Tower, kind: RelationKind) -> Result<RelationSystem> {
    let n = tower.n();
    let table = tower.table();
    let mut matrices = BTreeMap::new();
    let mut dets = BTreeMap::new();
    let (relators, eliminates) = match kind {
        RelationKind::Sp => {
            let ke = tower.ke()?;
            let xi = xi_matrix(table, &range(0, 2 * n))?;
            let l = xi.submatrix(&range(0, n), &range(0, n));
            let r = xi.submatrix(&range(0, n), &range(n, 2 * n));
            let a = l.mul(&ke.k)?.add(&r)?;
            det_check("LK+R", &a, tower.lambda()?, &mut dets)?;
            let cvec = column(table, (n..2 * n).map(|j| tower.var(&format!("c{j}"))).collect())?;
            let le = l.mul(&ke.e)?;
            let ac = a.mul(&cvec)?;
            let rel: Vec<Polynomial> = (0..n)
                .map(|i| Ok(ac.get(i, 0) + le.get(i, 0) + &tower.var(&xi_name(2 * n - i)).frobenius(i as u32)?))
                .collect::<Result<_>>()?;
            let mut elim = vec![None; n];
            elim[0] = Some(xi_name(2 * n));
            for (name, m) in [("L", l), ("R", r), ("K", ke.k.clone()), ("E", ke.e.clone())] {
                matrices.insert(name.to_string(), m);
            }
            (rel, elim)
        }
        RelationKind::OOdd | RelationKind::OMinus | RelationKind::OPlus => {
            let fro = fro(tower, &mut matrices)?;
            let mut d = d_vars(tower);
            let nm = &fro.nmat;
            let t = nm.without(None, Some(0));
            let h = nm.submatrix(&range(0, nm.rows()), &[0]);
            det_check("T", &t, &tower.at_xi0(&tower.lower_omega(false)?)?, &mut dets)?;
            matrices.insert("T".into(), t.clone());
            matrices.insert("H".into(), h);
            if kind == RelationKind::OOdd {
                let s = nm.without(None, Some(n - 1));
                let g = nm.submatrix(&range(0, nm.rows()), &[n - 1]);
                det_check("S", &s, &tower.lower_lambda()?, &mut dets)?;
                matrices.insert("S".into(), s);
                matrices.insert("G".into(), g);
            }
            if kind == RelationKind::OMinus {
                d[0] = Polynomial::zero(table, Ring::F2);
                if n >= 2 {
                    let t2 = t.without(Some(0), Some(t.cols() - 1));
                    det_check("T''", &t2, &tower.at_xi0(&tower.lower2_omega(false)?)?.square()?, &mut dets)?;
                    matrices.insert("T''".into(), t2);
                }
            }
            let mut rel = rows(nm, &d, &fro.rho);
            if kind == RelationKind::OPlus {
                let f = f_row(tower)?;
                check_f_congruences(tower, &f)?;
                let m = nm.append_row(f[..n].to_vec())?;
                det_check("M", &m, &tower.at_xi0(&tower.lower_omega(true)?)?, &mut dets)?;
                if n >= 2 {
                    let m2 = m.without(Some(0), Some(n - 1));
                    det_check("M''", &m2, &tower.at_xi0(&tower.lower2_omega(true)?)?.square()?, &mut dets)?;
                    matrices.insert("M''".into(), m2);
                }
                let mut last = f[n].clone();
                for (k, dk) in d.iter().enumerate() {
                    last = last + &f[k] * dk;
                }
                if tower.checks_in_s() {
                    check_f_in_s(tower, &last)?;
                }
                rel.push(last);
                matrices.insert("M".into(), m);
                matrices.insert("f".into(), PolyMatrix::new(table, Ring::F2, 1, n + 1, f)?);
            }
            let mut elim = vec![None; rel.len()];
            if let Some(first) = elim.first_mut() {
                *first = Some(xi_name(2 * n - 1));
            }
            (rel, elim)
        }
    };
    let residues_checked = tower.checks_in_s();
    if residues_checked {
        let space = kind.space_kind();
        for (row, r) in relators.iter().enumerate() {
            if !tower.to_s(r, space)?.is_zero() {
                return Err(InvariantError::ResidueNonzero { kind: kind.name(), row });
            }
        }
    }
    Ok(RelationSystem { kind, n, matrices, relators, eliminates, claimed_dets: dets, residues_checked })
}

/// f₀ = ξ₀^{2^{n−1}} and f_j ≡ ξ_j^{2^{n−1}} modulo ξ₀…ξ_{j−1}.
fn check_f_congruences(tower: &Tower, f: &[Polynomial]) -> Result<()> {
    let n = tower.n();
    let table = tower.table();
    for (j, fj) in f.iter().enumerate() {
        let lower: Vec<usize> = (0..j).map(|i| table.require(&xi_name(i))).collect::<Result<_, _>>()?;
        let want = tower.var(&xi_name(j)).frobenius((n - 1) as u32)?;
        check_eq(&format!("f_{j} congruence"), &fj.mod_variables(&lower), &want)?;
    }
    Ok(())
}

/// The f-row agrees with P⁺(0) of the odd model, and with its direct re-expression.
fn check_f_in_s(tower: &Tower, row: &Polynomial) -> Result<()> {
    let kind = SpaceKind::OddNonsingular;
    let p0 = tower.chern(kind)?.constant(true);
    check_eq("f-row is P⁺(0)", &tower.to_s(row, kind)?, &p0)?;
    let n = tower.n();
    let mut names: Vec<String> = (0..2 * n).map(xi_name).collect();
    names.extend((n..2 * n).map(|j| format!("d{j}")));
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    match express_in_xi(&p0, &tower.generators(&names, kind)?, true, tower.table()) {
        Ok(e) => check_eq("f-row by re-expression", &e, row),
        Err(InvariantError::AmbiguousExpression { .. }) => Ok(()),
        Err(e) => Err(e),
    }
}
