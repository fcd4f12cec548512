//! Canonical text artifacts compared byte-for-byte against the `golden/` tree.

use std::fs;
use std::path::Path;

use crate::invariants::{InvariantError, Options, RelationKind, Tower};
use crate::polyring::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    /// Relative path under the golden root, e.g. `lambda/n2.txt`.
    pub path: String,
    pub text: String,
}

fn art(path: String, p: &Polynomial) -> Artifact {
    Artifact { path, text: format!("{}\n", p.to_canonical_string()) }
}

fn sign(plus: bool) -> &'static str {
    if plus {
        "plus"
    } else {
        "minus"
    }
}

/// Every golden artifact, in a fixed order.
pub fn artifacts() -> Result<Vec<Artifact>, InvariantError> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let t = Tower::new(n, Options::default())?;
        out.push(art(format!("lambda/n{n}.txt"), t.lambda()?));
        for i in 0..2 * n {
            out.push(art(format!("lambda_i/n{n}_i{i}.txt"), t.lambda_i(i)?));
        }
    }
    for n in 1..=2 {
        let t = Tower::new(n, Options::default())?;
        out.push(art(format!("omega/n{n}.txt"), t.omega()?));
        let pm = t.omega_pm()?;
        for plus in [true, false] {
            let s = sign(plus);
            out.push(art(format!("omega_{s}/n{n}.txt"), pm.get(plus)));
            for (l, a) in pm.alphas(plus).iter().enumerate() {
                out.push(art(format!("alpha_{s}/n{n}_l{l}.txt"), a));
            }
            out.push(art(format!("chern/n{n}_q_{s}.txt"), &t.q_abstract(plus)?));
            out.push(art(format!("chern/n{n}_p_{s}.txt"), &t.p_abstract(plus)?));
        }
    }
    out.extend(relation_artifacts()?);
    Ok(out)
}

/// The n = 2 expressions of c₀, c₁, ξ₄ over the symplectic generators and of
/// c₂, c₃, ξ₃ over the orthogonal ones, plus the symplectic relation.
fn relation_artifacts() -> Result<Vec<Artifact>, InvariantError> {
    let t = Tower::new(2, Options::default())?;
    let ke = t.ke()?;
    let jf = t.jf()?;
    let mut out = Vec::new();
    for i in 0..2 {
        let mut c = ke.e.get(i, 0).clone();
        for k in 0..2 {
            c = c + ke.k.get(i, k) * &t.var(&format!("c{}", 2 + k));
        }
        out.push(art(format!("relations/n2_c{i}.txt"), &c));
    }
    for l in 0..2 {
        out.push(art(format!("relations/n2_c{}.txt", 2 + l), &jf.c_in_d(l, t.table())?));
    }
    let sp = t.relations(RelationKind::Sp)?;
    out.push(art("relations/n2_xi4.txt".into(), &(&sp.relators[0] + &t.var("xi4"))));
    out.push(art("relations/n2_sp_relation.txt".into(), &sp.relators[1]));
    let odd = t.relations(RelationKind::OOdd)?;
    out.push(art("relations/n2_xi3.txt".into(), &(&odd.relators[0] + &t.var("xi3"))));
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub mismatched: Vec<String>,
    pub missing: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.mismatched.is_empty() && self.missing.is_empty()
    }
}

pub fn check(root: &Path, arts: &[Artifact]) -> std::io::Result<CheckReport> {
    let mut rep = CheckReport::default();
    for a in arts {
        rep.checked += 1;
        match fs::read(root.join(&a.path)) {
            Ok(bytes) if bytes == a.text.as_bytes() => {}
            Ok(_) => rep.mismatched.push(a.path.clone()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => rep.missing.push(a.path.clone()),
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

/// Rewrites the tree; returns the paths whose content changed.
pub fn regenerate(root: &Path, arts: &[Artifact]) -> std::io::Result<Vec<String>> {
    let mut changed = Vec::new();
    for a in arts {
        let path = root.join(&a.path);
        if fs::read(&path).ok().as_deref() == Some(a.text.as_bytes()) {
            continue;
        }
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, &a.text)?;
        changed.push(a.path.clone());
    }
    Ok(changed)
}
