//! Exact interpolation at the nodes `1, 2, …, N` in integer arithmetic.
//!
//! Newton's forward formula `p(x) = Σₖ Δᵏy₁·C(x−1, k)` is scaled by
//! `(N−1)!` so that every basis polynomial has integer coefficients; values
//! are brought to a common denominator first, so the only rational
//! normalization happens once per output coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rat::Rat;

/// Shared basis for interpolation at `1..=n`.
pub struct Interpolator {
    /// `(n−1)!/k! · (x−1)(x−2)…(x−k)`, ascending coefficients.
    basis: Vec<Vec<BigInt>>,
    scale: BigInt,
}

impl Interpolator {
    pub fn new(n: usize) -> Interpolator {
        assert!(n >= 1, "interpolation needs at least one node");
        let mut falling: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        falling.push(vec![BigInt::one()]);
        for k in 1..n {
            // multiply the previous product by (x − k)
            let prev = &falling[k - 1];
            let mut next = vec![BigInt::zero(); prev.len() + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigInt::from(k);
            }
            falling.push(next);
        }
        let mut fact = vec![BigInt::one(); n];
        for k in 1..n {
            fact[k] = &fact[k - 1] * BigInt::from(k);
        }
        let scale = fact[n - 1].clone();
        let basis = falling
            .into_iter()
            .enumerate()
            .map(|(k, f)| {
                let w = &scale / &fact[k];
                f.into_iter().map(|c| c * &w).collect()
            })
            .collect();
        Interpolator { basis, scale }
    }

    pub fn nodes(&self) -> usize {
        self.basis.len()
    }

    /// The polynomial of degree `< n` with `p(i) = ys[i−1]`.
    pub fn interpolate(&self, ys: &[Rat]) -> LaurentPoly {
        let n = self.nodes();
        assert_eq!(ys.len(), n, "value count must match node count");
        let denom = ys.iter().fold(BigInt::one(), |acc, y| acc.lcm(y.denom()));
        let mut diffs: Vec<BigInt> = ys
            .iter()
            .map(|y| y.numer() * (&denom / y.denom()))
            .collect();
        // in place: diffs[k] becomes Δᵏ at node 1
        for level in 1..n {
            for i in (level..n).rev() {
                let d = &diffs[i] - &diffs[i - 1];
                diffs[i] = d;
            }
        }
        let mut acc = vec![BigInt::zero(); n];
        for (d, b) in diffs.iter().zip(&self.basis) {
            if d.is_zero() {
                continue;
            }
            for (slot, c) in acc.iter_mut().zip(b) {
                *slot += d * c;
            }
        }
        let total = &denom * &self.scale;
        LaurentPoly::from_terms(acc.into_iter().enumerate().map(|(k, c)| {
            (k as i64, Rat::from_big(c, total.clone()).expect("nonzero scale"))
        }))
    }
}

/// One-shot interpolation at `1..=ys.len()`.
pub fn interpolate_consecutive(ys: &[Rat]) -> LaurentPoly {
    Interpolator::new(ys.len()).interpolate(ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_polynomials() {
        let p: LaurentPoly = "3 - 1/2*z + 7*z^3 - 2*z^5".parse().unwrap();
        for n in 6..9 {
            let ys: Vec<Rat> = (1..=n).map(|x| p.eval(&Rat::from_int(x))).collect();
            assert_eq!(interpolate_consecutive(&ys), p);
        }
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(interpolate_consecutive(&[Rat::from_int(4)]), LaurentPoly::from_int(4));
        assert!(interpolate_consecutive(&[Rat::zero(), Rat::zero()]).is_zero());
    }
}
