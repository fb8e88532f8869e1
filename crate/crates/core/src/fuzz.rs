//! Deterministic cross-check of the slope-based decision against the
//! genus-0 cohomological computation on random rank-1 algebroids.
//!
//! Case `i` draws from its own ChaCha stream `i` under the shared seed, so
//! cases are independent of each other and of evaluation order.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decision::{decide_connection, validate_algebroid, AlgebroidDesc, Verdict};
use crate::exact::LaurentPoly;
use crate::formal::FormalBundle;
use crate::jets::{construct_connection, ConcreteAnchor, ConnectionCert};
use crate::p1::random::{random_gauge, random_nonzero_poly, random_type};
use crate::p1::P1Bundle;

/// Degree bound for `V` and the summands of `E`.
pub const MAX_ABS_DEGREE: i64 = 4;
pub const MAX_RANK: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzCase {
    pub index: u64,
    pub algebroid: AlgebroidDesc,
    pub anchor: ConcreteAnchor,
    pub splitting_type: Vec<i64>,
    pub bundle: P1Bundle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: FuzzCase,
    pub decided: Option<bool>,
    pub computed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub cases: u64,
    pub mismatches: u64,
    /// Number of cases decided by each reason.
    pub by_reason: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
}

/// Outcome of one case, with the certificate when a connection was built.
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub case: FuzzCase,
    pub reason: Option<String>,
    pub cert: Option<ConnectionCert>,
    pub mismatch: Option<Counterexample>,
}

fn random_anchor(rng: &mut ChaCha8Rng) -> (ConcreteAnchor, AlgebroidDesc) {
    loop {
        let d = rng.random_range(-MAX_ABS_DEGREE..=MAX_ABS_DEGREE);
        let phi = if rng.random_bool(0.25) {
            LaurentPoly::zero()
        } else {
            random_nonzero_poly(rng, 0, (2 - d).max(0))
        };
        let Ok(anchor) = ConcreteAnchor::line(d, phi) else {
            continue;
        };
        let Ok(desc) = anchor.formal_descriptor() else {
            continue;
        };
        if let Ok(desc) = validate_algebroid(&desc) {
            return (anchor, desc);
        }
    }
}

pub fn generate_case(seed: u64, index: u64) -> FuzzCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let (anchor, algebroid) = random_anchor(&mut rng);
    let rank = rng.random_range(1..=MAX_RANK);
    let splitting_type = random_type(&mut rng, rank, -MAX_ABS_DEGREE, MAX_ABS_DEGREE);
    let split = P1Bundle::split(&splitting_type);
    let bundle = if rng.random_bool(0.5) {
        random_gauge(&mut rng, &split)
    } else {
        split
    };
    FuzzCase {
        index,
        algebroid,
        anchor,
        splitting_type,
        bundle,
    }
}

pub fn run_case(case: FuzzCase) -> CaseOutcome {
    let formal_e = FormalBundle::split(0, &case.splitting_type).expect("nonempty type");
    let decision = decide_connection(&case.algebroid, &formal_e);
    let computed = construct_connection(&case.bundle, &case.anchor);

    let reason = decision.as_ref().ok().map(|d| {
        serde_json::to_value(d.reason)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    });
    let decided = decision.as_ref().ok().and_then(|d| match d.verdict {
        Verdict::Exists => Some(true),
        Verdict::ExistsIffAtiyahWeil(aw) => Some(aw),
        Verdict::Undecided => None,
    });
    let error = match (&decision, &computed) {
        (Err(e), _) => Some(format!("decision: {e}")),
        (_, Err(e)) => Some(format!("engine: {e}")),
        _ => None,
    };
    let cert = computed.as_ref().ok().cloned().flatten();
    let exists = computed.as_ref().ok().map(Option::is_some);

    let mismatch = (error.is_some() || decided.is_none() || decided != exists).then(|| {
        Counterexample {
            case: case.clone(),
            decided,
            computed: exists,
            error,
        }
    });
    CaseOutcome {
        case,
        reason,
        cert,
        mismatch,
    }
}

/// Runs cases `0..count` and folds them into a report; `inspect` sees every
/// outcome (used to audit certificates).
pub fn run_fuzz_with(count: u64, seed: u64, mut inspect: impl FnMut(&CaseOutcome)) -> FuzzReport {
    let mut report = FuzzReport {
        seed,
        cases: count,
        mismatches: 0,
        by_reason: BTreeMap::new(),
        counterexamples: Vec::new(),
    };
    for index in 0..count {
        let outcome = run_case(generate_case(seed, index));
        inspect(&outcome);
        if let Some(r) = &outcome.reason {
            *report.by_reason.entry(r.clone()).or_default() += 1;
        }
        if let Some(m) = outcome.mismatch {
            report.mismatches += 1;
            report.counterexamples.push(m);
        }
    }
    report
}

pub fn run_fuzz(count: u64, seed: u64) -> FuzzReport {
    run_fuzz_with(count, seed, |_| {})
}
