use serde::{Deserialize, Serialize};

use super::P1Error;
use crate::exact::{LaurentMatrix, LaurentPoly, Rat};

/// A rank-`r` bundle on ℙ¹ glued from the charts `U₀ = {z ≠ ∞}` and
/// `U₁ = {z ≠ 0}` (coordinate `w = 1/z`).
///
/// Coordinates of a section relate by `f₀(z) = T(z)·f₁(1/z)` on the
/// overlap, so `O(a)` has `T = z^a` and `degree = k` where `det T = c·z^k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "P1BundleRepr", into = "P1BundleRepr")]
pub struct P1Bundle {
    transition: LaurentMatrix,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct P1BundleRepr {
    rank: usize,
    transition: LaurentMatrix,
}

impl TryFrom<P1BundleRepr> for P1Bundle {
    type Error = P1Error;
    fn try_from(r: P1BundleRepr) -> Result<P1Bundle, P1Error> {
        if r.transition.rows() != r.rank {
            return Err(P1Error::Shape(format!(
                "rank {} but transition is {}x{}",
                r.rank,
                r.transition.rows(),
                r.transition.cols()
            )));
        }
        P1Bundle::new(r.transition)
    }
}

impl From<P1Bundle> for P1BundleRepr {
    fn from(b: P1Bundle) -> P1BundleRepr {
        P1BundleRepr {
            rank: b.rank(),
            transition: b.transition,
        }
    }
}

impl std::fmt::Debug for P1Bundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P1Bundle({:?})", self.transition)
    }
}

impl P1Bundle {
    /// Checks squareness and that `det T` is a unit `c·z^k`.
    pub fn new(transition: LaurentMatrix) -> Result<P1Bundle, P1Error> {
        let (_, k) = transition.unit_det()?;
        Ok(P1Bundle {
            transition,
            degree: k,
        })
    }

    /// `O(a)`.
    pub fn line(a: i64) -> P1Bundle {
        P1Bundle::split(&[a])
    }

    /// `O(a₁) ⊕ … ⊕ O(a_r)` with diagonal transition.
    pub fn split(types: &[i64]) -> P1Bundle {
        assert!(!types.is_empty(), "empty splitting type");
        P1Bundle {
            transition: LaurentMatrix::diag_z_powers(types),
            degree: types.iter().sum(),
        }
    }

    pub fn trivial(rank: usize) -> P1Bundle {
        P1Bundle::split(&vec![0; rank])
    }

    /// `TX = O(2)`.
    pub fn tangent() -> P1Bundle {
        P1Bundle::line(2)
    }

    /// `K = O(−2)`.
    pub fn canonical() -> P1Bundle {
        P1Bundle::line(-2)
    }

    pub fn rank(&self) -> usize {
        self.transition.rows()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn transition(&self) -> &LaurentMatrix {
        &self.transition
    }

    pub fn inverse_transition(&self) -> LaurentMatrix {
        self.transition
            .unit_inverse()
            .expect("bundle transition is a unit")
    }

    /// `E*`, transition `(T⁻¹)ᵀ`.
    pub fn dual(&self) -> P1Bundle {
        P1Bundle {
            transition: self.inverse_transition().transpose(),
            degree: -self.degree,
        }
    }

    /// `E ⊗ F`, Kronecker transition; coordinates indexed row-major `(i, k)`.
    pub fn tensor(&self, other: &P1Bundle) -> P1Bundle {
        P1Bundle {
            transition: self.transition.kron(&other.transition),
            degree: self.degree * other.rank() as i64 + other.degree * self.rank() as i64,
        }
    }

    pub fn direct_sum(&self, other: &P1Bundle) -> P1Bundle {
        P1Bundle {
            transition: self.transition.direct_sum(&other.transition),
            degree: self.degree + other.degree,
        }
    }

    /// `Hom(E, F) = F ⊗ E*`. A section is an `r_F × r_E` matrix `θ` with
    /// `θ₀ = T_F·θ₁·T_E⁻¹`; coordinates are the row-major entries of `θ`.
    pub fn hom(e: &P1Bundle, f: &P1Bundle) -> P1Bundle {
        f.tensor(&e.dual())
    }

    pub fn end(&self) -> P1Bundle {
        P1Bundle::hom(self, self)
    }

    /// Gauge change `A(z)·T·B(1/z)`; `A` must be polynomial in `z` and `B`
    /// polynomial in `1/z`, both with constant determinant.
    pub fn gauge(&self, a: &LaurentMatrix, b: &LaurentMatrix) -> Result<P1Bundle, P1Error> {
        let unimodular = |m: &LaurentMatrix| matches!(m.unit_det(), Ok((_, 0)));
        if !a.is_poly_in_z() || !unimodular(a) {
            return Err(P1Error::Shape("left gauge factor must be unimodular over Q[z]".into()));
        }
        if !b.is_poly_in_w() || !unimodular(b) {
            return Err(P1Error::Shape("right gauge factor must be unimodular over Q[1/z]".into()));
        }
        Ok(P1Bundle {
            transition: &(a * &self.transition) * b,
            degree: self.degree,
        })
    }

    /// Chart-1 coordinates `T⁻¹·f₀` of a chart-0 column.
    pub fn to_chart1(&self, chart0: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let col = LaurentMatrix::column(chart0.to_vec());
        (&self.inverse_transition() * &col).col_vec(0)
    }

    /// Whether a chart-0 column is the restriction of a global section.
    pub fn is_global_section(&self, chart0: &[LaurentPoly]) -> bool {
        chart0.len() == self.rank()
            && chart0.iter().all(LaurentPoly::is_poly_in_z)
            && self.to_chart1(chart0).iter().all(LaurentPoly::is_poly_in_w)
    }

    /// Whether a chart-0 endomorphism matrix `θ₀` is a global section of
    /// `End(E)`: `θ₀` polynomial in `z` and `T⁻¹·θ₀·T` polynomial in `1/z`.
    pub fn is_global_endomorphism(&self, theta0: &LaurentMatrix) -> bool {
        theta0.rows() == self.rank()
            && theta0.cols() == self.rank()
            && theta0.is_poly_in_z()
            && (&(&self.inverse_transition() * theta0) * &self.transition).is_poly_in_w()
    }
}

/// Row-major flattening of a matrix section into bundle coordinates.
pub fn matrix_to_coords(m: &LaurentMatrix) -> Vec<LaurentPoly> {
    m.entries().to_vec()
}

/// Inverse of [`matrix_to_coords`].
pub fn coords_to_matrix(v: &[LaurentPoly], rows: usize, cols: usize) -> LaurentMatrix {
    assert_eq!(v.len(), rows * cols, "coordinate count mismatch");
    LaurentMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone())
}

/// `c·z^k` as a 1×1 transition, e.g. `−z^{−2}` for the chain-rule frame of `K`.
pub fn line_transition(c: i64, k: i64) -> LaurentMatrix {
    LaurentMatrix::diag(&[LaurentPoly::monomial(Rat::from_int(c), k)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_from_determinant() {
        let t = LaurentMatrix::parse_rows(&[vec!["z^-1", "1"], vec!["0", "z"]]).unwrap();
        assert_eq!(P1Bundle::new(t).unwrap().degree(), 0);
        assert_eq!(P1Bundle::split(&[3, -5]).degree(), -2);
    }

    #[test]
    fn non_unit_rejected() {
        let t = LaurentMatrix::parse_rows(&[vec!["z", "0"], vec!["0", "0"]]).unwrap();
        assert!(matches!(P1Bundle::new(t), Err(P1Error::NotAUnit(_))));
    }

    #[test]
    fn tensor_dual_hom_degrees() {
        let e = P1Bundle::split(&[2, -1]);
        let f = P1Bundle::split(&[1, 1, 0]);
        assert_eq!(e.dual().degree(), -1);
        assert_eq!(e.tensor(&f).degree(), 3 + 2 * 2);
        assert_eq!(P1Bundle::hom(&e, &f).degree(), 2 * 2 - 3);
        assert_eq!(e.end().rank(), 4);
        assert_eq!(e.end().degree(), 0);
    }

    #[test]
    fn json_round_trip() {
        let js = r#"{"rank": 2, "transition": [["z^-1", "1"], ["0", "z"]]}"#;
        let b: P1Bundle = serde_json::from_str(js).unwrap();
        let again: P1Bundle = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(b, again);
        let bad = r#"{"rank": 3, "transition": [["z"]]}"#;
        assert!(serde_json::from_str::<P1Bundle>(bad).is_err());
    }

    #[test]
    fn global_section_predicate() {
        let o1 = P1Bundle::line(1);
        assert!(o1.is_global_section(&[LaurentPoly::z_pow(1)]));
        assert!(!o1.is_global_section(&[LaurentPoly::z_pow(2)]));
    }
}
