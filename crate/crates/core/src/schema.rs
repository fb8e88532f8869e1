//! JSON input schemas shared by the CLI and the C interface.
//!
//! Raw documents are parsed first so that schema errors are told apart from
//! domain validation of well-formed input.

use serde::Deserialize;
use thiserror::Error;

use crate::decision::{AlgebroidDesc, AnchorDesc};
use crate::exact::{LaurentMatrix, LaurentPoly};
use crate::formal::{Atom, CurveContext, FormalBundle};
use crate::jets::ConcreteAnchor;
use crate::p1::P1Bundle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    /// Malformed JSON, unknown fields, bad Laurent syntax, shape mismatch.
    #[error("{0}")]
    Schema(String),
    /// Well-formed input violating a mathematical precondition.
    #[error("{0}")]
    Invalid(String),
}

fn schema(what: &str, e: impl std::fmt::Display) -> InputError {
    InputError::Schema(format!("{what}: schema error: {e}"))
}

fn invalid(e: impl std::fmt::Display) -> InputError {
    InputError::Invalid(e.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawP1Bundle {
    rank: usize,
    transition: LaurentMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnchor {
    #[serde(rename = "V")]
    v: RawP1Bundle,
    phi_row: Vec<LaurentPoly>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormalBundle {
    genus: u32,
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebroid {
    #[serde(rename = "V")]
    v: RawFormalBundle,
    anchor: AnchorDesc,
}

impl RawP1Bundle {
    fn build(self) -> Result<P1Bundle, InputError> {
        let t = &self.transition;
        if t.rows() != self.rank || t.cols() != self.rank {
            return Err(InputError::Schema(format!(
                "rank {} but transition is {}x{}",
                self.rank,
                t.rows(),
                t.cols()
            )));
        }
        P1Bundle::new(self.transition).map_err(invalid)
    }
}

impl RawFormalBundle {
    fn build(self) -> Result<FormalBundle, InputError> {
        FormalBundle::new(CurveContext::new(self.genus), self.atoms).map_err(invalid)
    }
}

/// `{"rank": r, "transition": [[...]]}` on the projective line.
pub fn parse_p1_bundle(text: &str) -> Result<P1Bundle, InputError> {
    let raw: RawP1Bundle = serde_json::from_str(text).map_err(|e| schema("bundle", e))?;
    raw.build()
}

/// `{"V": <bundle>, "phi_row": [...]}`.
pub fn parse_anchor(text: &str) -> Result<ConcreteAnchor, InputError> {
    let raw: RawAnchor = serde_json::from_str(text).map_err(|e| schema("anchor", e))?;
    let v = raw.v.build()?;
    if raw.phi_row.is_empty() {
        return Err(InputError::Schema("phi_row is empty".into()));
    }
    ConcreteAnchor::new(v, LaurentMatrix::row(raw.phi_row)).map_err(invalid)
}

/// `{"genus": g, "atoms": [...]}`.
pub fn parse_formal_bundle(text: &str) -> Result<FormalBundle, InputError> {
    let raw: RawFormalBundle = serde_json::from_str(text).map_err(|e| schema("bundle", e))?;
    raw.build()
}

/// `{"V": <formal bundle>, "anchor": {"kind": ...}}`; the anchor itself is
/// validated by the decision procedure.
pub fn parse_algebroid(text: &str) -> Result<AlgebroidDesc, InputError> {
    let raw: RawAlgebroid = serde_json::from_str(text).map_err(|e| schema("algebroid", e))?;
    Ok(AlgebroidDesc {
        v: raw.v.build()?,
        anchor: raw.anchor,
    })
}
