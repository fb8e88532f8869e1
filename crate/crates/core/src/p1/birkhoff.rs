//! Birkhoff–Grothendieck factorization `U₀(z)·T·U₁(1/z) = diag(z^{aᵢ})`.
//!
//! `T` is first multiplied by `z^N` to make it polynomial. Unimodular row
//! operations over `ℚ[z]` then make the leading row-coefficient matrix
//! nonsingular (each step lowers the sum of row degrees, which is bounded
//! below by `deg det`). At that point `P = diag(z^{dᵢ})·R(1/z)` with `R`
//! unimodular over `ℚ[1/z]`, and `U₁ = R⁻¹`.

use serde::{Deserialize, Serialize};

use super::bundle::P1Bundle;
use super::P1Error;
use crate::exact::{LaurentMatrix, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    /// Non-increasing `a₁ ≥ … ≥ a_r`.
    #[serde(rename = "type")]
    pub splitting_type: Vec<i64>,
    /// Polynomial in `z`, constant nonzero determinant.
    #[serde(rename = "U0")]
    pub u0: LaurentMatrix,
    /// Polynomial in `1/z`, constant nonzero determinant.
    #[serde(rename = "U1")]
    pub u1: LaurentMatrix,
}

impl SplittingData {
    pub fn diagonal(&self) -> LaurentMatrix {
        LaurentMatrix::diag_z_powers(&self.splitting_type)
    }

    /// Checks `U₀·T·U₁ = diag(z^{aᵢ})` exactly, plus the shape of the
    /// factors and the ordering of the type.
    pub fn verify(&self, transition: &LaurentMatrix) -> bool {
        let constant_det = |m: &LaurentMatrix| matches!(m.unit_det(), Ok((_, 0)));
        self.splitting_type.windows(2).all(|w| w[0] >= w[1])
            && self.u0.is_poly_in_z()
            && self.u1.is_poly_in_w()
            && constant_det(&self.u0)
            && constant_det(&self.u1)
            && &(&self.u0 * transition) * &self.u1 == self.diagonal()
    }
}

fn row_degree(p: &LaurentMatrix, i: usize) -> i64 {
    (0..p.cols())
        .filter_map(|j| p.get(i, j).max_exp())
        .max()
        .expect("nonsingular matrix has no zero rows")
}

/// Replaces row `k` by `Σᵢ cᵢ/c_k · z^{d_k − dᵢ} · rowᵢ`.
fn combine_rows(m: &mut LaurentMatrix, k: usize, weights: &[(usize, Rat, i64)]) {
    let mut row = m.row_vec(k);
    for (i, c, shift) in weights {
        if *i == k {
            continue;
        }
        for (j, slot) in row.iter_mut().enumerate() {
            let add = m.get(*i, j).scale(c).shift(*shift);
            *slot = &*slot + &add;
        }
    }
    for (j, v) in row.into_iter().enumerate() {
        m.set(k, j, v);
    }
}

pub fn birkhoff_split(bundle: &P1Bundle) -> Result<SplittingData, P1Error> {
    split_transition(bundle.transition())
}

/// Factorization of a raw transition matrix.
pub fn split_transition(t: &LaurentMatrix) -> Result<SplittingData, P1Error> {
    t.unit_det()?;
    let n = t.rows();
    let shift = -t.min_exp().unwrap_or(0);
    let mut p = t.shift(shift);
    let mut a = LaurentMatrix::identity(n);

    loop {
        let degrees: Vec<i64> = (0..n).map(|i| row_degree(&p, i)).collect();
        // leading row coefficients, transposed so the kernel is a left kernel
        let lead_t = RatMatrix::from_rows(
            (0..n)
                .map(|j| (0..n).map(|i| p.get(i, j).coeff(degrees[i])).collect())
                .collect(),
        );
        let Some(c) = lead_t.kernel().into_iter().next() else {
            break;
        };
        let k = (0..n)
            .filter(|&i| !c[i].is_zero())
            .max_by_key(|&i| (degrees[i], std::cmp::Reverse(i)))
            .expect("kernel vector is nonzero");
        let ck = c[k].clone();
        let weights: Vec<(usize, Rat, i64)> = (0..n)
            .filter(|&i| !c[i].is_zero())
            .map(|i| (i, &c[i] / &ck, degrees[k] - degrees[i]))
            .collect();
        combine_rows(&mut p, k, &weights);
        combine_rows(&mut a, k, &weights);
    }

    let degrees: Vec<i64> = (0..n).map(|i| row_degree(&p, i)).collect();
    let r = LaurentMatrix::from_fn(n, n, |i, j| p.get(i, j).shift(-degrees[i]));
    debug_assert!(r.is_poly_in_w());
    let r_inv = r.unit_inverse()?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(degrees[i]), i));
    let data = SplittingData {
        splitting_type: order.iter().map(|&i| degrees[i] - shift).collect(),
        u0: a.permute_rows(&order),
        u1: r_inv.permute_cols(&order),
    };
    if !data.verify(t) {
        return Err(P1Error::Internal("Birkhoff factorization failed to verify".into()));
    }
    Ok(data)
}

/// `U₀⁻¹`, polynomial in `z`.
pub fn u0_inverse(data: &SplittingData) -> LaurentMatrix {
    data.u0.unit_inverse().expect("U0 is unimodular")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[&str]]) -> LaurentMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        LaurentMatrix::parse_rows(&rows).unwrap()
    }

    #[test]
    fn diagonal_input_is_already_split() {
        let d = split_transition(&t(&[&["z^2", "0"], &["0", "z^-1"]])).unwrap();
        assert_eq!(d.splitting_type, vec![2, -1]);
        assert!(d.u0.is_identity());
        assert!(d.u1.is_identity());
    }

    #[test]
    fn unipotent_upper_triangular() {
        let m = t(&[&["1", "z"], &["0", "1"]]);
        let d = split_transition(&m).unwrap();
        assert_eq!(d.splitting_type, vec![0, 0]);
        assert!(d.verify(&m));
        // the documented factorization also verifies
        let alt = SplittingData {
            splitting_type: vec![0, 0],
            u0: t(&[&["1", "-z"], &["0", "1"]]),
            u1: LaurentMatrix::identity(2),
        };
        assert!(alt.verify(&m));
    }

    #[test]
    fn nonsplit_looking_extension_is_trivial() {
        let m = t(&[&["z^-1", "1"], &["0", "z"]]);
        let d = split_transition(&m).unwrap();
        assert_eq!(d.splitting_type, vec![0, 0]);
    }

    #[test]
    fn balanced_type_from_triangular() {
        // [[1, z], [0, z^2]] is O(1) + O(1), not O(2) + O(0)
        let m = t(&[&["1", "z"], &["0", "z^2"]]);
        assert_eq!(split_transition(&m).unwrap().splitting_type, vec![1, 1]);
    }

    #[test]
    fn type_sums_to_degree() {
        let m = t(&[&["z^3", "z^-1 + 2", "0"], &["0", "z", "5"], &["0", "0", "z^-2"]]);
        let d = split_transition(&m).unwrap();
        assert_eq!(d.splitting_type.iter().sum::<i64>(), 2);
    }

    #[test]
    fn not_a_unit() {
        let m = t(&[&["z", "0"], &["0", "0"]]);
        assert!(matches!(split_transition(&m), Err(P1Error::NotAUnit(_))));
    }
}
