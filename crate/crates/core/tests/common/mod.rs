//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles deliberately avoid the library's splitting, cohomology and
//! HN code: `h0_oracle` solves the two-chart holomorphy constraint as a
//! plain linear system, and `hn_first_step_oracle` searches all subsets.
#![allow(dead_code)]

use algconn_core::exact::{LaurentMatrix, LaurentPoly, Rat};
use algconn_core::jets::ConcreteAnchor;
use algconn_core::p1::random::{random_bundle, random_nonzero_poly};
use algconn_core::p1::P1Bundle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("test polynomial parses")
}

/// Rank of a dense rational matrix by fraction-based elimination.
pub fn rank_oracle(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            let pivot_row = rows[rank].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &(&f * p);
            }
        }
        rank += 1;
    }
    rank
}

/// `h⁰(E)` as the dimension of `{(f, g) : f = T·g}` with `f` polynomial
/// in `z` and `g` polynomial in `1/z`.
///
/// Degree window: `f = T·g` has exponents `≤ max_exp(T)`; `g = adj(T)·f /
/// (c·z^k)` has exponents `≥ (r−1)·min_exp(T) − k`. Since `T` is
/// invertible, `g` is determined by `f` and the solution dimension is `h⁰`.
pub fn h0_oracle(e: &P1Bundle) -> usize {
    let t = e.transition();
    let r = e.rank();
    let (t_lo, t_hi) = (t.min_exp().unwrap_or(0), t.max_exp().unwrap_or(0));
    let f_hi = t_hi.max(0);
    let g_lo = ((r as i64 - 1) * t_lo - e.degree()).min(0);
    let f_exps: Vec<i64> = (0..=f_hi).collect();
    let g_exps: Vec<i64> = (g_lo..=0).collect();

    // unknowns: f[i][a] for a in f_exps, g[j][b] for b in g_exps
    let n_f = r * f_exps.len();
    let n_unknowns = n_f + r * g_exps.len();
    // equations: coefficient of z^e in row i of f − T·g
    let e_lo = g_lo + t_lo.min(0);
    let e_hi = f_hi.max(t_hi);
    let mut equations = Vec::new();
    for i in 0..r {
        for ex in e_lo..=e_hi {
            let mut row = vec![Rat::zero(); n_unknowns];
            if let Some(a) = f_exps.iter().position(|&a| a == ex) {
                row[i * f_exps.len() + a] = Rat::one();
            }
            for j in 0..r {
                for (b_idx, &b) in g_exps.iter().enumerate() {
                    let c = t.get(i, j).coeff(ex - b);
                    if !c.is_zero() {
                        row[n_f + j * g_exps.len() + b_idx] = -c;
                    }
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                equations.push(row);
            }
        }
    }
    n_unknowns - rank_oracle(equations)
}

/// `(degree, rank, members)` of a sub-sum.
type Candidate = (i64, i64, Vec<(u32, i64)>);

/// Among all sub-sums of the atoms `(rankᵢ, degreeᵢ)`, those of maximal
/// slope, and among those the largest: the first HN step of a direct sum
/// of semistable atoms, as a sorted multiset.
pub fn hn_first_step_oracle(atoms: &[(u32, i64)]) -> Vec<(u32, i64)> {
    let n = atoms.len();
    assert!(n > 0 && n <= 16);
    let mut best: Option<Candidate> = None;
    for mask in 1u32..(1 << n) {
        let members: Vec<(u32, i64)> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| atoms[i]).collect();
        let deg: i64 = members.iter().map(|m| m.1).sum();
        let rank: i64 = members.iter().map(|m| i64::from(m.0)).sum();
        let better = match &best {
            None => true,
            // deg/rank against best_deg/best_rank without division
            Some((bd, br, _)) => deg * br > bd * rank || (deg * br == bd * rank && rank > *br),
        };
        if better {
            best = Some((deg, rank, members));
        }
    }
    let mut step = best.unwrap().2;
    step.sort_unstable();
    step
}

/// [`hn_first_step_oracle`] for line bundles `⊕O(aᵢ)`.
pub fn hn_first_step_oracle_lines(degrees: &[i64]) -> Vec<i64> {
    let atoms: Vec<(u32, i64)> = degrees.iter().map(|&d| (1, d)).collect();
    hn_first_step_oracle(&atoms).into_iter().map(|a| a.1).collect()
}

/// `O(d)` with a random nonzero anchor of degree `≤ 2 − d` (requires `d ≤ 2`).
pub fn random_line_anchor(rng: &mut ChaCha8Rng, d: i64) -> ConcreteAnchor {
    assert!(d <= 2);
    let phi = random_nonzero_poly(rng, 0, 2 - d);
    ConcreteAnchor::line(d, phi).expect("degree bound makes the anchor global")
}

/// A gauged bundle of rank `1..=max_rank`, degrees in `lo..=hi`.
pub fn bundle(rng: &mut ChaCha8Rng, max_rank: usize, lo: i64, hi: i64) -> (Vec<i64>, P1Bundle) {
    random_bundle(rng, max_rank, lo, hi)
}

pub fn coin(rng: &mut ChaCha8Rng) -> bool {
    rng.random_bool(0.5)
}

/// Strict block upper triangularity w.r.t. blocks of equal `degrees`
/// (sorted non-increasing): entry `(i, j)` may be nonzero only if
/// `degrees[i] > degrees[j]`.
pub fn strictly_block_upper(theta: &LaurentMatrix, degrees: &[i64]) -> bool {
    (0..theta.rows()).all(|i| {
        (0..theta.cols()).all(|j| theta.get(i, j).is_zero() || degrees[i] > degrees[j])
    })
}
