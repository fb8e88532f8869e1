//! Global endomorphisms: nilpotency via trace powers, the kernel flag
//! `0 = W₀ ⊂ W₁ ⊂ …` with `W_k = ker θᵏ`, and the trace pairing.

use serde::{Deserialize, Serialize};

use super::bundle::P1Bundle;
use super::P1Error;
use crate::exact::{LaurentMatrix, Rat};

/// Rank over `ℚ(z)`.
///
/// Clearing denominators makes every entry a polynomial of degree at most
/// `D`, so each minor has degree at most `n·D`; among `n·D + 1` distinct
/// nonzero evaluation points one is not a root of a maximal nonzero minor.
pub fn generic_rank(m: &LaurentMatrix) -> usize {
    let full = m.rows().min(m.cols());
    if m.is_zero() {
        return 0;
    }
    let span = m.max_exp().unwrap() - m.min_exp().unwrap();
    let points = full as i64 * span + 1;
    let mut best = 0;
    for x in 1..=points {
        best = best.max(m.eval(&Rat::from_int(x)).rank());
        if best == full {
            break;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFlag {
    /// `rank W_k` for `k = 0..=rank E`.
    pub ranks: Vec<usize>,
    pub nilpotent: bool,
}

/// `theta` is the chart-0 matrix of a global section of `End(E)`.
pub fn kernel_filtration(e: &P1Bundle, theta: &LaurentMatrix) -> Result<KernelFlag, P1Error> {
    if !e.is_global_endomorphism(theta) {
        return Err(P1Error::InvalidSection(
            "theta is not a global section of End(E)".into(),
        ));
    }
    let r = e.rank();
    let mut nilpotent = true;
    let mut power = LaurentMatrix::identity(r);
    let mut ranks = vec![0];
    for _ in 1..=r {
        power = &power * theta;
        let tr = power.trace();
        // a global function on ℙ¹ is constant
        if !tr.is_constant() {
            return Err(P1Error::NonConstantTrace(tr.to_string()));
        }
        nilpotent &= tr.is_zero();
        ranks.push(r - generic_rank(&power));
    }
    assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "kernel flag must grow");
    debug_assert_eq!(nilpotent, ranks[r] == r);
    Ok(KernelFlag { ranks, nilpotent })
}

/// `trace(v ∘ w)`, a constant for global sections of `End(E)`.
pub fn trace_pair(e: &P1Bundle, v: &LaurentMatrix, w: &LaurentMatrix) -> Result<Rat, P1Error> {
    for (name, m) in [("v", v), ("w", w)] {
        if !e.is_global_endomorphism(m) {
            return Err(P1Error::InvalidSection(format!(
                "{name} is not a global section of End(E)"
            )));
        }
    }
    let tr = (v * w).trace();
    if !tr.is_constant() {
        return Err(P1Error::NonConstantTrace(tr.to_string()));
    }
    Ok(tr.coeff(0))
}
