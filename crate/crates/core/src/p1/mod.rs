//! Concrete genus-0 engine: bundles on ℙ¹ given by transition matrices.

pub mod birkhoff;
pub mod bundle;
pub mod cohomology;
pub mod endo;
pub mod random;

use crate::exact::MatrixError;

pub use birkhoff::{birkhoff_split, split_transition, SplittingData};
pub use bundle::P1Bundle;
pub use cohomology::{
    cohomology_dims, global_sections, hn_p1, hom_sections, riemann_roch_check, serre_dual_check,
    CohomologyDims, GlobalSection,
};
pub use endo::{generic_rank, kernel_filtration, trace_pair, KernelFlag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum P1Error {
    #[error("transition is not a unit: {0}")]
    NotAUnit(String),
    #[error("transition is not square")]
    NotSquare,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("trace is not constant: {0}")]
    NonConstantTrace(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<MatrixError> for P1Error {
    fn from(e: MatrixError) -> P1Error {
        match e {
            MatrixError::NotSquare { .. } => P1Error::NotSquare,
            MatrixError::NotAUnit { det } => P1Error::NotAUnit(det),
            MatrixError::Shape(s) => P1Error::Shape(s),
        }
    }
}
