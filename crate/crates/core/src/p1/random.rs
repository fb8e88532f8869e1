//! Seeded random generators for bundles, gauge changes and sections.

use rand::Rng;

use super::bundle::P1Bundle;
use crate::exact::{LaurentMatrix, LaurentPoly, Rat};

/// Small nonzero integer coefficient in `[-bound, bound]`.
pub fn nonzero_coeff<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let c = rng.random_range(-bound..=bound);
        if c != 0 {
            return Rat::from_int(c);
        }
    }
}

/// Random polynomial with exponents in `lo..=hi`, possibly zero.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        (lo..=hi).map(|k| (k, Rat::from_int(rng.random_range(-2..=2)))),
    )
}

/// Random nonzero polynomial with exponents in `lo..=hi`.
pub fn random_nonzero_poly<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    loop {
        let p = random_poly(rng, lo, hi);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Product of elementary matrices `I + c·z^{±k}·E_ij`, a permutation and a
/// constant diagonal; `sign = +1` gives an element of `GL_n(ℚ[z])`, `-1` of
/// `GL_n(ℚ[1/z])`.
fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, max_deg: i64, sign: i64) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(n);
    if n == 1 {
        return m.scale(&nonzero_coeff(rng, 2));
    }
    for _ in 0..n + 1 {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.random_range(0..=max_deg) * sign;
        let c = nonzero_coeff(rng, 2);
        let mut row = m.row_vec(i);
        for (col, slot) in row.iter_mut().enumerate() {
            *slot = &*slot + &m.get(j, col).scale(&c).shift(k);
        }
        for (col, v) in row.into_iter().enumerate() {
            m.set(i, col, v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let diag: Vec<LaurentPoly> = (0..n)
        .map(|_| LaurentPoly::constant(nonzero_coeff(rng, 2)))
        .collect();
    &LaurentMatrix::diag(&diag) * &m.permute_rows(&perm)
}

pub fn random_unimodular_z<R: Rng + ?Sized>(rng: &mut R, n: usize, max_deg: i64) -> LaurentMatrix {
    random_unimodular(rng, n, max_deg, 1)
}

pub fn random_unimodular_w<R: Rng + ?Sized>(rng: &mut R, n: usize, max_deg: i64) -> LaurentMatrix {
    random_unimodular(rng, n, max_deg, -1)
}

/// `E ↦ A(z)·T·B(1/z)` with random unimodular factors of degree ≤ 1.
pub fn random_gauge<R: Rng + ?Sized>(rng: &mut R, e: &P1Bundle) -> P1Bundle {
    let a = random_unimodular_z(rng, e.rank(), 1);
    let b = random_unimodular_w(rng, e.rank(), 1);
    e.gauge(&a, &b).expect("random factors are unimodular")
}

pub fn random_type<R: Rng + ?Sized>(rng: &mut R, rank: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.random_range(lo..=hi)).collect()
}

/// A split bundle of random type (rank in `1..=max_rank`, degrees in
/// `lo..=hi`) hidden behind a random gauge change. Returns the type too.
pub fn random_bundle<R: Rng + ?Sized>(
    rng: &mut R,
    max_rank: usize,
    lo: i64,
    hi: i64,
) -> (Vec<i64>, P1Bundle) {
    let rank = rng.random_range(1..=max_rank);
    let ty = random_type(rng, rank, lo, hi);
    let e = random_gauge(rng, &P1Bundle::split(&ty));
    (ty, e)
}
