//! Invariants of symplectic and orthogonal groups over F₂: polynomial arithmetic,
//! Steenrod squares, quadratic forms, explicit groups, the invariant tower and
//! Hilbert series.

pub mod gf2;
pub mod golden;
pub mod groupenum;
pub mod hilbert;
pub mod invariants;
pub mod polyring;
pub mod quadforms;
pub mod steenrod;

pub use gf2::F2Matrix;
pub use groupenum::{Group, GroupKind};
pub use hilbert::HilbertSeries;
pub use invariants::{InvariantError, Options, RelationKind, Tower};
pub use polyring::{Monomial, PolyError, PolyMatrix, Polynomial, Ring, Table, VariableTable};
pub use quadforms::{FormType, QuadraticSpace, SpaceKind};
pub use steenrod::SteenrodContext;

/// Caps the global worker pool at `INVFORGE_THREADS` when that is set.
/// Returns the cap that was applied.
pub fn configure_threads_from_env() -> Option<usize> {
    let n = std::env::var("INVFORGE_THREADS").ok()?.parse::<usize>().ok().filter(|&n| n > 0)?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok()?;
    Some(n)
}
