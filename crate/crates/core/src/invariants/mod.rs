//! The invariant tower: ξ-sequence, Dickson coefficients, Λ and Λᵢ, Ω and Ω±,
//! Chern data of the ± families, the K/E and J/F matrices and the relation
//! systems for Sp, O, O⁻ and O⁺.
//!
//! Two kinds of polynomial rings appear. The *abstract* ring (see
//! [`abstract_table`]) has named generators X, t, ξᵢ, cⱼ, dⱼ. The *concrete*
//! ring S is the symmetric algebra on V* plus X and t (see [`s_table`]).
//! Abstract results are checked by substituting into S.

mod chern;
mod express;
mod identities;
mod matrices;
mod omega;
mod tower;
mod xi;

use thiserror::Error;

use crate::polyring::{PolyError, Polynomial, Ring, Table, VariableTable};
use crate::quadforms::{QuadError, SpaceKind};
use crate::steenrod::SteenrodError;

pub use chern::ChernData;
pub use express::{express_in_xi, Generator};
pub use identities::{verify_identity, IdentityReport, IDENTITIES};
pub use matrices::{JfMatrices, KeMatrices, RelationKind, RelationSystem};
pub use omega::OmegaPm;
pub use tower::{Options, Tower};
pub use xi::{lambda, DicksonData, LambdaMethod, XiContext};

pub type Result<T, E = InvariantError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{what} at n={n} is slow; enable allow_slow")]
    SlowGated { what: &'static str, n: usize },
    #[error("{what} is limited to n <= {limit} (got n={n})")]
    SizeLimitExceeded { what: &'static str, n: usize, limit: usize },
    #[error("polynomial of degree {degree} is not in the subring generated by {generators}")]
    NotInSubring { degree: u32, generators: String },
    #[error("expression in degree {degree} is not unique (nullity {nullity})")]
    AmbiguousExpression { degree: u32, nullity: usize },
    #[error("determinant has an odd coefficient: {0}")]
    HalvingFailed(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("factorization mismatch: {0}")]
    FactorizationMismatch(String),
    #[error("triangular inversion failed: {0}")]
    TriangularInversionFailed(String),
    #[error("relator {row} of the {kind} system does not vanish in S")]
    ResidueNonzero { kind: &'static str, row: usize },
    #[error("determinant of {matrix} differs from {expected}")]
    DeterminantMismatch { matrix: String, expected: String },
    #[error("entry {entry} is not a square")]
    SquareRootFailed { entry: String },
    #[error("identity {name} failed: {diff}")]
    IdentityFailed { name: String, diff: String },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

pub fn xi_name(i: usize) -> String {
    format!("xi{i}")
}

/// F₂[X, t, ξ₀…ξ_{2n}, c₀…c_{2n−1}, d_n…d_{2n−1}] with the natural degrees.
///
/// The c's are not independent of the ξ's; they are present so that symplectic
/// relations and the Q± can be written down.
pub fn abstract_table(n: usize) -> Table {
    let top = 1u32 << (2 * n);
    let mut names: Vec<(String, u32)> = vec![("X".into(), 2), ("t".into(), 1)];
    names.extend((0..=2 * n).map(|i| (xi_name(i), (1u32 << i) + 1)));
    names.extend((0..2 * n).map(|j| (format!("c{j}"), top - (1 << j))));
    names.extend((n..2 * n).map(|j| (format!("d{j}"), top / 2 - (1 << j) / 2)));
    VariableTable::new(names).expect("distinct names")
}

/// Coordinates of V* (x0 only for the odd kind), then t and X.
pub fn s_table(n: usize, kind: SpaceKind) -> Table {
    let start = if kind == SpaceKind::OddNonsingular { 0 } else { 1 };
    let mut names: Vec<(String, u32)> = (start..=2 * n).map(|i| (format!("x{i}"), 1)).collect();
    names.push(("t".into(), 1));
    names.push(("X".into(), 2));
    VariableTable::new(names).expect("distinct names")
}

pub(crate) fn var(table: &Table, name: &str) -> Polynomial {
    Polynomial::var(table, Ring::F2, name).expect("variable present")
}

#[cfg(test)]
pub(crate) fn parse(table: &Table, text: &str) -> Polynomial {
    Polynomial::parse(text, table, Ring::F2).expect("valid literal")
}

/// Short rendering of p − q for failure messages.
pub fn diff_summary(p: &Polynomial, q: &Polynomial) -> String {
    let d = p + q;
    let shown: Vec<String> = d
        .terms()
        .iter()
        .take(4)
        .map(|(m, _)| Polynomial::monomial(d.table(), Ring::F2, m.clone()).to_string())
        .collect();
    format!("{} differing terms, first: {}", d.len(), shown.join(", "))
}

pub(crate) fn check_eq(name: &str, lhs: &Polynomial, rhs: &Polynomial) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(InvariantError::IdentityFailed { name: name.to_string(), diff: diff_summary(lhs, rhs) })
    }
}

#[cfg(test)]
mod tests;
