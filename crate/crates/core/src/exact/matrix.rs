//! Matrices over the Laurent ring `ℚ[z, z⁻¹]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::interp::{interpolate_consecutive, Interpolator};
use super::laurent::LaurentPoly;
use super::linalg::RatMatrix;
use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant {det} is not a unit c*z^k of the Laurent ring")]
    NotAUnit { det: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> LaurentMatrix {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> LaurentMatrix {
        LaurentMatrix::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LaurentMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<LaurentMatrix, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(MatrixError::Shape("matrix must be non-empty".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses a grid of Laurent strings.
    pub fn parse_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<LaurentMatrix, String> {
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        s.as_ref()
                            .parse::<LaurentPoly>()
                            .map_err(|e| format!("entry ({i},{j}): {e}"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        LaurentMatrix::from_rows(parsed).map_err(|e| e.to_string())
    }

    pub fn diag(d: &[LaurentPoly]) -> LaurentMatrix {
        LaurentMatrix::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    /// `diag(z^{a_1}, …, z^{a_r})`.
    pub fn diag_z_powers(a: &[i64]) -> LaurentMatrix {
        let d: Vec<LaurentPoly> = a.iter().map(|&k| LaurentPoly::z_pow(k)).collect();
        LaurentMatrix::diag(&d)
    }

    pub fn column(v: Vec<LaurentPoly>) -> LaurentMatrix {
        let n = v.len();
        LaurentMatrix {
            rows: n,
            cols: 1,
            entries: v,
        }
    }

    pub fn row(v: Vec<LaurentPoly>) -> LaurentMatrix {
        let n = v.len();
        LaurentMatrix {
            rows: 1,
            cols: n,
            entries: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn row_vec(&self, i: usize) -> Vec<LaurentPoly> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMatrix::identity(self.rows)
    }

    pub fn is_poly_in_z(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_poly_in_z)
    }

    pub fn is_poly_in_w(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_poly_in_w)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_constant)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.entries.iter().filter_map(LaurentPoly::max_exp).max()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.entries.iter().filter_map(LaurentPoly::min_exp).min()
    }

    pub fn scale(&self, c: &Rat) -> LaurentMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> LaurentMatrix {
        self.map(|q| q * p)
    }

    pub fn shift(&self, s: i64) -> LaurentMatrix {
        self.map(|p| p.shift(s))
    }

    pub fn derivative(&self) -> LaurentMatrix {
        self.map(LaurentPoly::derivative)
    }

    pub fn transpose(&self) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> LaurentPoly {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(LaurentPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Kronecker product: `(A ⊗ B)[(i,k),(j,l)] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let (br, bc) = (other.rows, other.cols);
        LaurentMatrix::from_fn(self.rows * br, self.cols * bc, |i, j| {
            self.get(i / br, j / bc) * other.get(i % br, j % bc)
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.put_block(0, 0, self);
        out.put_block(self.rows, self.cols, other);
        out
    }

    pub fn put_block(&mut self, r0: usize, c0: usize, block: &LaurentMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> LaurentMatrix {
        LaurentMatrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hcat(blocks: &[LaurentMatrix]) -> LaurentMatrix {
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "hcat row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = LaurentMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.put_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    /// Permutes rows so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], j).clone())
    }

    /// Permutes columns so that column `j` of the result is column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, perm[j]).clone())
    }

    pub fn eval(&self, at: &Rat) -> RatMatrix {
        RatMatrix::from_rows(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(at)).collect())
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> LaurentMatrix {
        let mut out = LaurentMatrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Characteristic data by Faddeev–LeVerrier: returns `(det, adj)` with
    /// `self · adj = det · I`. Only integer divisions occur, so the
    /// recurrence stays inside `ℚ[z, z⁻¹]`.
    pub fn det_and_adjugate(&self) -> Result<(LaurentPoly, LaurentMatrix), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let id = LaurentMatrix::identity(n);
        // M_k = A·M_{k-1} + c_{n-k+1}·I, c_{n-k} = -tr(A·M_k)/k
        let mut m = LaurentMatrix::zeros(n, n);
        let mut c = LaurentPoly::one();
        for k in 1..=n {
            m = &(self * &m) + &id.scale_poly(&c);
            let am = self * &m;
            c = -am.trace().scale(&Rat::new(1, k as i64).unwrap());
        }
        // c now holds c_0 = (-1)^n det(A); adj(A) = (-1)^{n-1} M_n
        let sign = if n.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        let det = c.scale(&sign);
        let adj = m.scale(&(-sign));
        Ok((det, adj))
    }

    /// Row shifts `sᵢ` making `diag(z^{sᵢ})·A` polynomial with no common
    /// `z` factor in any row, and the resulting row degrees. `None` if a
    /// row is zero.
    fn row_normalization(&self) -> Option<(LaurentMatrix, Vec<i64>, Vec<i64>)> {
        let mut shifts = Vec::with_capacity(self.rows);
        let mut degrees = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let lo = row.iter().filter_map(LaurentPoly::min_exp).min()?;
            let hi = row.iter().filter_map(LaurentPoly::max_exp).max()?;
            shifts.push(-lo);
            degrees.push(hi - lo);
        }
        let p = LaurentMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).shift(shifts[i]));
        Some((p, shifts, degrees))
    }

    /// Determinant by exact evaluation at integer points and interpolation;
    /// after row normalization its degree is at most the sum of row degrees.
    pub fn det(&self) -> Result<LaurentPoly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(LaurentPoly::one());
        }
        let Some((p, shifts, degrees)) = self.row_normalization() else {
            return Ok(LaurentPoly::zero());
        };
        let count = degrees.iter().sum::<i64>() as usize + 1;
        let ys: Vec<Rat> = (1..=count as i64)
            .map(|x| p.eval(&Rat::from_int(x)).det())
            .collect();
        Ok(interpolate_consecutive(&ys).shift(-shifts.iter().sum::<i64>()))
    }

    /// The unit `(c, k)` with `det = c·z^k`, or `NotAUnit`.
    pub fn unit_det(&self) -> Result<(Rat, i64), MatrixError> {
        let det = self.det()?;
        det.as_monomial().ok_or_else(|| MatrixError::NotAUnit {
            det: det.to_string(),
        })
    }

    /// Inverse over the Laurent ring; requires `det = c·z^k`, `c ≠ 0`.
    ///
    /// With `P = diag(z^{sᵢ})·A` row-normalized and `det P = c·z^m`, the
    /// adjugate `c·z^m·P⁻¹` is polynomial of degree at most the sum of all
    /// but the smallest row degree; it is interpolated from exact rational
    /// inverses at nonzero integer points, and `A⁻¹ = P⁻¹·diag(z^{sᵢ})`.
    pub fn unit_inverse(&self) -> Result<LaurentMatrix, MatrixError> {
        let (c, k) = self.unit_det()?;
        let n = self.rows;
        let (p, shifts, degrees) = self.row_normalization().expect("a unit has no zero row");
        let m = k + shifts.iter().sum::<i64>();
        let bound = degrees.iter().sum::<i64>() - degrees.iter().min().unwrap();
        let interp = Interpolator::new(bound as usize + 1);
        let adj_values: Vec<RatMatrix> = (1..=interp.nodes() as i64)
            .map(|x| {
                let x = Rat::from_int(x);
                let inv = p.eval(&x).inverse().expect("a unit is invertible away from 0");
                let scale = &c * &x.pow(m as i32);
                RatMatrix::from_rows(
                    (0..n)
                        .map(|i| (0..n).map(|j| inv.get(i, j) * &scale).collect())
                        .collect(),
                )
            })
            .collect();
        Ok(LaurentMatrix::from_fn(n, n, |i, j| {
            let ys: Vec<Rat> = adj_values.iter().map(|v| v.get(i, j).clone()).collect();
            interp.interpolate(&ys).div_monomial(&c, m).shift(shifts[j])
        }))
    }
}

/// Free-function form of [`LaurentMatrix::unit_inverse`].
pub fn unit_inverse(m: &LaurentMatrix) -> Result<LaurentMatrix, MatrixError> {
    m.unit_inverse()
}

impl Mul<&LaurentMatrix> for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = LaurentMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl Mul for LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: LaurentMatrix) -> LaurentMatrix {
        &self * &rhs
    }
}

impl Add<&LaurentMatrix> for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape mismatch");
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&LaurentMatrix> for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn neg(self) -> LaurentMatrix {
        self.map(|p| -p)
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl serde::Serialize for LaurentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<LaurentMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        LaurentMatrix::parse_rows(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[&str]]) -> LaurentMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        LaurentMatrix::parse_rows(&rows).unwrap()
    }

    #[test]
    fn inverse_of_identity() {
        let id = LaurentMatrix::identity(3);
        assert_eq!(id.unit_inverse().unwrap(), id);
    }

    #[test]
    fn inverse_of_diagonal() {
        let m = mat(&[&["z", "0"], &["0", "z^-1"]]);
        assert_eq!(m.unit_inverse().unwrap(), mat(&[&["z^-1", "0"], &["0", "z"]]));
    }

    #[test]
    fn inverse_of_triangular() {
        let m = mat(&[&["z", "1"], &["0", "z"]]);
        let inv = m.unit_inverse().unwrap();
        assert_eq!(inv, mat(&[&["z^-1", "-z^-2"], &["0", "z^-1"]]));
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn non_unit_and_non_square_rejected() {
        let m = mat(&[&["1 + z", "0"], &["0", "1"]]);
        assert!(matches!(m.unit_inverse(), Err(MatrixError::NotAUnit { .. })));
        let s = mat(&[&["z", "0"], &["0", "0"]]);
        assert!(matches!(s.unit_inverse(), Err(MatrixError::NotAUnit { .. })));
        let r = mat(&[&["1", "z"]]);
        assert!(matches!(r.unit_inverse(), Err(MatrixError::NotSquare { .. })));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = mat(&[
            &["z", "1", "2"],
            &["z^-1", "3", "z^2"],
            &["1", "-z", "1/2"],
        ]);
        let g = |i: usize, j: usize| m.get(i, j).clone();
        let cof = &(&g(0, 0) * &(&(&g(1, 1) * &g(2, 2)) - &(&g(1, 2) * &g(2, 1))))
            - &(&g(0, 1) * &(&(&g(1, 0) * &g(2, 2)) - &(&g(1, 2) * &g(2, 0))));
        let cof = &cof + &(&g(0, 2) * &(&(&g(1, 0) * &g(2, 1)) - &(&g(1, 1) * &g(2, 0))));
        assert_eq!(m.det().unwrap(), cof);
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = mat(&[&["1", "z"], &["0", "1"]]);
        let b = LaurentMatrix::diag_z_powers(&[2, -1]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(1, 3), &LaurentPoly::z_pow(0));
        assert_eq!(k.get(0, 2), &LaurentPoly::z_pow(3));
    }
}
