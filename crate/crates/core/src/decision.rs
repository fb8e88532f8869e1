//! Lie algebroid descriptors `(V, φ)` and the existence criterion for Lie
//! algebroid connections, as a total case analysis with explicit reasons.
//!
//! The bracket on `V` is not stored: existence never depends on it.

use serde::{Deserialize, Serialize};

use crate::exact::LaurentPoly;
use crate::formal::{atiyah_weil, FormalBundle, FormalError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecisionError {
    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Formal(#[from] FormalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorKind {
    Zero,
    Nonzero,
    Isomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorDesc {
    pub kind: AnchorKind,
    /// Chart-0 row of `φ`, only meaningful to the genus-0 engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<LaurentPoly>>,
}

impl AnchorDesc {
    pub fn of_kind(kind: AnchorKind) -> AnchorDesc {
        AnchorDesc {
            kind,
            section: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebroidDesc {
    #[serde(rename = "V")]
    pub v: FormalBundle,
    pub anchor: AnchorDesc,
}

impl AlgebroidDesc {
    pub fn new(v: FormalBundle, kind: AnchorKind) -> AlgebroidDesc {
        AlgebroidDesc {
            v,
            anchor: AnchorDesc::of_kind(kind),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    ZeroAnchor,
    StableRankGe2,
    RankOneNotTangent,
    #[serde(rename = "AnchorIso_AW")]
    AnchorIsoAtiyahWeil,
    HypothesesUnmet,
}

impl Reason {
    pub fn citation(self) -> &'static str {
        match self {
            Reason::ZeroAnchor => "Remark (zero anchor)",
            Reason::StableRankGe2 => "Proposition 1",
            Reason::RankOneNotTangent => "Lemma 2",
            Reason::AnchorIsoAtiyahWeil => "Theorem 1(2) / Atiyah-Weil",
            Reason::HypothesesUnmet => "none (hypotheses unmet)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Exists,
    /// Exists iff every indecomposable component of `E` has degree zero; the
    /// flag records that criterion evaluated on the given `E`.
    ExistsIffAtiyahWeil(bool),
    Undecided,
}

impl Verdict {
    /// Whether a connection exists, when the verdict settles it.
    pub fn exists(self) -> Option<bool> {
        match self {
            Verdict::Exists => Some(true),
            Verdict::ExistsIffAtiyahWeil(aw) => Some(aw),
            Verdict::Undecided => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decision {
    pub verdict: Verdict,
    pub reason: Reason,
}

#[derive(Serialize, Deserialize)]
struct DecisionRepr {
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    atiyah_weil: Option<bool>,
    exists: Option<bool>,
    reason: Reason,
    citation: String,
}

impl Serialize for Decision {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (verdict, aw) = match self.verdict {
            Verdict::Exists => ("Exists", None),
            Verdict::ExistsIffAtiyahWeil(b) => ("ExistsIffAtiyahWeil", Some(b)),
            Verdict::Undecided => ("Undecided", None),
        };
        DecisionRepr {
            verdict: verdict.to_string(),
            atiyah_weil: aw,
            exists: self.verdict.exists(),
            reason: self.reason,
            citation: self.reason.citation().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decision {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Decision, D::Error> {
        use serde::de::Error;
        let r = DecisionRepr::deserialize(d)?;
        let verdict = match (r.verdict.as_str(), r.atiyah_weil) {
            ("Exists", _) => Verdict::Exists,
            ("ExistsIffAtiyahWeil", Some(b)) => Verdict::ExistsIffAtiyahWeil(b),
            ("Undecided", _) => Verdict::Undecided,
            (other, _) => return Err(D::Error::custom(format!("bad verdict `{other}`"))),
        };
        Ok(Decision {
            verdict,
            reason: r.reason,
        })
    }
}

/// Checks the anchor invariants and returns the canonical descriptor.
pub fn validate_algebroid(desc: &AlgebroidDesc) -> Result<AlgebroidDesc, DecisionError> {
    let v = &desc.v;
    let ctx = v.context();
    let invalid = |msg: String| Err(DecisionError::InvalidAnchor(msg));
    match desc.anchor.kind {
        AnchorKind::Zero => {}
        AnchorKind::Isomorphism => {
            if v.rank() != 1 {
                return invalid(format!(
                    "an isomorphism V -> TX needs rank(V) = 1, got {}",
                    v.rank()
                ));
            }
            if !v.is_tangent() {
                return invalid("an isomorphism anchor requires V to be flagged as TX".into());
            }
        }
        AnchorKind::Nonzero => {
            if v.is_tangent() {
                return invalid(
                    "a nonzero map TX -> TX is an isomorphism; declare kind `isomorphism`".into(),
                );
            }
            if anchor_forced_zero(desc) {
                return invalid(format!(
                    "slope data force H^0(Hom(V, TX)) = 0 (deg V = {}, rank V = {}, deg TX = {})",
                    v.degree(),
                    v.rank(),
                    ctx.tangent_degree()
                ));
            }
            if v.rank() == 1 && v.degree() >= ctx.tangent_degree() {
                return invalid(format!(
                    "a nonzero map from a line bundle V != TX to TX needs deg V < {}, got {}",
                    ctx.tangent_degree(),
                    v.degree()
                ));
            }
        }
    }
    if let Some(section) = &desc.anchor.section {
        if desc.anchor.kind == AnchorKind::Zero && section.iter().any(|p| !p.is_zero()) {
            return invalid("anchor kind `zero` with a nonzero section".into());
        }
        if section.len() != v.rank() as usize {
            return invalid(format!(
                "anchor section has {} entries, rank(V) = {}",
                section.len(),
                v.rank()
            ));
        }
    }
    Ok(desc.clone())
}

/// `deg 𝔻 = 2(1 − g) − deg V` for the divisor of a nonzero anchor on a line
/// bundle `V ≠ TX`.
pub fn anchor_divisor_degree(desc: &AlgebroidDesc) -> Result<i64, DecisionError> {
    let v = &desc.v;
    if v.rank() != 1 || desc.anchor.kind != AnchorKind::Nonzero || v.is_tangent() {
        return Err(DecisionError::PreconditionFailed(
            "needs rank(V) = 1, a nonzero anchor and V != TX".into(),
        ));
    }
    let d = v.context().tangent_degree() - v.degree();
    if d <= 0 {
        return Err(DecisionError::PreconditionFailed(format!(
            "deg V = {} is not below deg TX = {}",
            v.degree(),
            v.context().tangent_degree()
        )));
    }
    Ok(d)
}

/// Whether slope data alone force `φ = 0`.
pub fn anchor_forced_zero(desc: &AlgebroidDesc) -> bool {
    let v = &desc.v;
    let tx = v.context().tangent_degree();
    match v.rank() {
        1 => v.degree() > tx,
        _ => v.is_stable() && v.slope() >= tx.into(),
    }
}

/// Decides whether every / which bundles `E` admit a Lie algebroid
/// connection for `(V, φ)`. First matching case wins.
pub fn decide_connection(desc: &AlgebroidDesc, e: &FormalBundle) -> Result<Decision, DecisionError> {
    let desc = validate_algebroid(desc)?;
    if desc.v.genus() != e.genus() {
        return Err(FormalError::ContextMismatch(desc.v.genus(), e.genus()).into());
    }
    let v = &desc.v;
    let decision = |verdict, reason| Ok(Decision { verdict, reason });
    if desc.anchor.kind == AnchorKind::Zero {
        return decision(Verdict::Exists, Reason::ZeroAnchor);
    }
    if v.rank() >= 2 && v.is_stable() {
        return decision(Verdict::Exists, Reason::StableRankGe2);
    }
    if v.rank() == 1 && !v.is_tangent() {
        return decision(Verdict::Exists, Reason::RankOneNotTangent);
    }
    if desc.anchor.kind == AnchorKind::Isomorphism {
        return decision(
            Verdict::ExistsIffAtiyahWeil(atiyah_weil(e)),
            Reason::AnchorIsoAtiyahWeil,
        );
    }
    decision(Verdict::Undecided, Reason::HypothesesUnmet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{Atom, CurveContext, Stability};

    fn line_v(genus: u32, degree: i64) -> FormalBundle {
        FormalBundle::split(genus, &[degree]).unwrap()
    }

    fn v_of(genus: u32, rank: u32, degree: i64, s: Stability) -> FormalBundle {
        FormalBundle::new(CurveContext::new(genus), vec![Atom::new(rank, degree, s)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        for g in 0..4 {
            let d = AlgebroidDesc::new(FormalBundle::tangent(g), AnchorKind::Isomorphism);
            assert!(validate_algebroid(&d).is_ok());
        }
        let d = AlgebroidDesc::new(v_of(1, 2, 0, Stability::Stable), AnchorKind::Isomorphism);
        assert!(matches!(validate_algebroid(&d), Err(DecisionError::InvalidAnchor(_))));
        let d = AlgebroidDesc::new(line_v(0, 5), AnchorKind::Nonzero);
        assert!(matches!(validate_algebroid(&d), Err(DecisionError::InvalidAnchor(_))));
    }

    #[test]
    fn nonzero_anchor_on_tangent_rejected() {
        let d = AlgebroidDesc::new(FormalBundle::tangent(0), AnchorKind::Nonzero);
        assert!(validate_algebroid(&d).is_err());
        // unflagged degree-2 line bundle at genus 0 is also rejected
        let d = AlgebroidDesc::new(line_v(0, 2), AnchorKind::Nonzero);
        assert!(validate_algebroid(&d).is_err());
    }

    #[test]
    fn divisor_degree_examples() {
        let dd = |g, d| anchor_divisor_degree(&AlgebroidDesc::new(line_v(g, d), AnchorKind::Nonzero));
        assert_eq!(dd(0, -3), Ok(5));
        assert_eq!(dd(2, -3), Ok(1));
        assert_eq!(dd(0, 1), Ok(1));
        let zero = AlgebroidDesc::new(line_v(0, -3), AnchorKind::Zero);
        assert!(matches!(
            anchor_divisor_degree(&zero),
            Err(DecisionError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn forced_zero_examples() {
        let fz = |v| anchor_forced_zero(&AlgebroidDesc::new(v, AnchorKind::Zero));
        assert!(fz(v_of(1, 2, 0, Stability::Stable)));
        assert!(fz(line_v(0, 3)));
        assert!(!fz(line_v(0, -3)));
        assert!(!fz(v_of(1, 2, 0, Stability::Unknown)));
    }

    #[test]
    fn forced_zero_and_nonzero_kind_are_inconsistent() {
        for g in 0..3 {
            for d in -6..6 {
                for (rank, s) in [(1, Stability::Stable), (2, Stability::Stable), (3, Stability::Stable)] {
                    let desc = AlgebroidDesc::new(v_of(g, rank, d, s), AnchorKind::Nonzero);
                    if anchor_forced_zero(&desc) {
                        assert!(validate_algebroid(&desc).is_err(), "g={g} d={d} rank={rank}");
                    }
                }
            }
        }
    }

    #[test]
    fn decide_examples() {
        let e = FormalBundle::split(0, &[1, -1]).unwrap();
        let d = decide_connection(&AlgebroidDesc::new(line_v(0, -3), AnchorKind::Nonzero), &e).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
        assert_eq!(d.reason, Reason::RankOneNotTangent);

        let e = FormalBundle::split(2, &[1, -1]).unwrap();
        let tx = AlgebroidDesc::new(FormalBundle::tangent(2), AnchorKind::Isomorphism);
        let d = decide_connection(&tx, &e).unwrap();
        assert_eq!(d.verdict, Verdict::ExistsIffAtiyahWeil(false));

        // a nonzero anchor on a stable rank-2 V needs mu(V) < 2(1-g) = -4
        let e = FormalBundle::split(3, &[4, 0, -7]).unwrap();
        let v = AlgebroidDesc::new(v_of(3, 2, -9, Stability::Stable), AnchorKind::Nonzero);
        let d = decide_connection(&v, &e).unwrap();
        assert_eq!((d.verdict, d.reason), (Verdict::Exists, Reason::StableRankGe2));
        let forced = AlgebroidDesc::new(v_of(3, 2, 1, Stability::Stable), AnchorKind::Nonzero);
        assert!(decide_connection(&forced, &e).is_err());
        let zero = AlgebroidDesc::new(v_of(3, 2, 1, Stability::Stable), AnchorKind::Zero);
        assert_eq!(decide_connection(&zero, &e).unwrap().verdict, Verdict::Exists);

        let e = FormalBundle::split(1, &[2]).unwrap();
        let v = AlgebroidDesc::new(v_of(1, 2, 0, Stability::Unknown), AnchorKind::Nonzero);
        let d = decide_connection(&v, &e).unwrap();
        assert_eq!((d.verdict, d.reason), (Verdict::Undecided, Reason::HypothesesUnmet));
    }

    #[test]
    fn zero_anchor_on_tangent_exists() {
        let e = FormalBundle::split(0, &[3]).unwrap();
        let d = decide_connection(&AlgebroidDesc::new(FormalBundle::tangent(0), AnchorKind::Zero), &e)
            .unwrap();
        assert_eq!((d.verdict, d.reason), (Verdict::Exists, Reason::ZeroAnchor));
    }

    #[test]
    fn genus_mismatch_is_an_error() {
        let e = FormalBundle::split(1, &[0]).unwrap();
        let desc = AlgebroidDesc::new(line_v(0, -1), AnchorKind::Nonzero);
        assert!(matches!(
            decide_connection(&desc, &e),
            Err(DecisionError::Formal(FormalError::ContextMismatch(0, 1)))
        ));
    }

    #[test]
    fn decision_json() {
        let d = Decision {
            verdict: Verdict::ExistsIffAtiyahWeil(true),
            reason: Reason::AnchorIsoAtiyahWeil,
        };
        let js = serde_json::to_value(d).unwrap();
        assert_eq!(js["verdict"], "ExistsIffAtiyahWeil");
        assert_eq!(js["reason"], "AnchorIso_AW");
        assert_eq!(js["exists"], true);
        let back: Decision = serde_json::from_value(js).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn algebroid_json() {
        let js = r#"{"V": {"genus": 0, "atoms": [{"rank": 1, "degree": -3}]},
                     "anchor": {"kind": "nonzero", "section": ["1 + z^5"]}}"#;
        let desc: AlgebroidDesc = serde_json::from_str(js).unwrap();
        assert_eq!(desc.anchor.kind, AnchorKind::Nonzero);
        assert!(validate_algebroid(&desc).is_ok());
    }
}
