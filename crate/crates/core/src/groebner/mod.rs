//! Gröbner bases of ideals and graded submodules, syzygies, free
//! resolutions, Hilbert series and Ext.

mod buchberger;
mod ext;
mod hilbert;
mod ideal;
mod module;
mod resolution;
mod syzygy;

pub use buchberger::{is_groebner_basis, module_groebner_basis};
pub use ext::{ext_module, ExtModule};
pub use hilbert::{HilbertData, HilbertSeries};
pub use ideal::{normal_form, Ideal};
pub use module::{ModuleOrder, VTerm, Vector};
pub use resolution::{free_resolution, FreeResolution, PolyMatrix};
pub use syzygy::{syzygy_module, vector_syzygies, FreeModuleElement};

use thiserror::Error;

use crate::poly::{PolyError, PolyRing};

/// Step limits for the expensive operations. Exhaustion is reported as
/// [`GroebnerError::ResourceExhausted`], never as a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pair_reductions: u64,
    pub max_resolution_length: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_pair_reductions: 2_000_000, max_resolution_length: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("step budget exhausted: more than {limit} {what}")]
    ResourceExhausted { what: &'static str, limit: u64 },
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("ring mismatch: {left:?} vs {right:?}")]
    RingMismatch { left: PolyRing, right: PolyRing },
    #[error("an ideal needs at least one generator here")]
    Empty,
    #[error("Ext index {k} outside 0..={max}")]
    ExtIndex { k: usize, max: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[cfg(test)]
mod tests;
