//! Jet bundles, the obstruction class of a Lie algebroid connection, and
//! explicit construction and verification of connections on ℙ¹.
//!
//! Conventions (fixed throughout):
//!
//! * Section coordinates satisfy `f₀ = T·f₁`; derivatives are `d/dz` in
//!   chart 0 and `d/dw` in chart 1, with `d/dw = −z²·d/dz`.
//! * The anchor is the chart-0 row `φ₀` with `φ(v) = (φ₀·v₀)·∂_z`, so its
//!   chart-1 row is `φ₁ = −z⁻²·φ₀·T_V` (it must be polynomial in `1/z`).
//! * A connection is `D(f)[:, k] = f′·φₖ + Aₖ·f` in each chart, where
//!   `A = [A₁ | … | A_m]` is an `r × r·m` block row (a section of
//!   `End(E) ⊗ V*`, block `k` pairing with the `k`-th frame vector of `V`).
//!
//! Matching `D₀(T f₁) = T·D₁(f₁)·T_V⁻¹` on the overlap gives the gauge law
//!
//! ```text
//! A0ₖ + φₖ·T′·T⁻¹ = Σⱼ (T_V⁻¹)ⱼₖ · T·A1ⱼ·T⁻¹
//! ```
//!
//! so `cₖ = φₖ·T′·T⁻¹` is the Čech cocycle of the obstruction class in
//! `H¹(End(E) ⊗ V*)` and connections exist iff it is a coboundary.

use serde::{Deserialize, Serialize};

use crate::decision::{AlgebroidDesc, AnchorKind};
use crate::exact::{LaurentMatrix, LaurentPoly, Rat};
use crate::formal::{Atom, CurveContext, FormalBundle};
use crate::p1::bundle::{coords_to_matrix, line_transition, matrix_to_coords};
use crate::p1::{birkhoff_split, P1Bundle, P1Error};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    P1(#[from] P1Error),
}

/// `d/dw` of a chart-1 function written in `z`: `−z²·d/dz`.
pub fn d_dw(p: &LaurentPoly) -> LaurentPoly {
    -p.derivative().shift(2)
}

/// A concrete anchor `φ: V → TX = O(2)` on ℙ¹.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AnchorRepr", into = "AnchorRepr")]
pub struct ConcreteAnchor {
    v: P1Bundle,
    phi_row: LaurentMatrix,
}

#[derive(Serialize, Deserialize)]
struct AnchorRepr {
    #[serde(rename = "V")]
    v: P1Bundle,
    phi_row: Vec<LaurentPoly>,
}

impl TryFrom<AnchorRepr> for ConcreteAnchor {
    type Error = JetError;
    fn try_from(r: AnchorRepr) -> Result<ConcreteAnchor, JetError> {
        if r.phi_row.is_empty() {
            return Err(JetError::InvalidAnchor("phi_row is empty".into()));
        }
        ConcreteAnchor::new(r.v, LaurentMatrix::row(r.phi_row))
    }
}

impl From<ConcreteAnchor> for AnchorRepr {
    fn from(a: ConcreteAnchor) -> AnchorRepr {
        AnchorRepr {
            v: a.v,
            phi_row: a.phi_row.row_vec(0),
        }
    }
}

impl ConcreteAnchor {
    pub fn new(v: P1Bundle, phi_row: LaurentMatrix) -> Result<ConcreteAnchor, JetError> {
        if phi_row.rows() != 1 || phi_row.cols() != v.rank() {
            return Err(JetError::InvalidAnchor(format!(
                "phi_row must be 1x{}, got {}x{}",
                v.rank(),
                phi_row.rows(),
                phi_row.cols()
            )));
        }
        if !phi_row.is_poly_in_z() {
            return Err(JetError::InvalidAnchor(
                "phi_row must be polynomial in z (holomorphic on chart 0)".into(),
            ));
        }
        let anchor = ConcreteAnchor { v, phi_row };
        if !anchor.chart1_row().is_poly_in_w() {
            return Err(JetError::InvalidAnchor(
                "phi_row * T_V * z^-2 is not polynomial in 1/z: not a global map V -> TX".into(),
            ));
        }
        Ok(anchor)
    }

    pub fn zero(v: P1Bundle) -> ConcreteAnchor {
        let m = v.rank();
        ConcreteAnchor {
            v,
            phi_row: LaurentMatrix::zeros(1, m),
        }
    }

    /// `V = TX = O(2)` with `φ = id`.
    pub fn tangent_identity() -> ConcreteAnchor {
        ConcreteAnchor::new(P1Bundle::tangent(), LaurentMatrix::identity(1))
            .expect("identity is a global map TX -> TX")
    }

    /// Line bundle `O(d)` with anchor given by one chart-0 polynomial.
    pub fn line(d: i64, phi: LaurentPoly) -> Result<ConcreteAnchor, JetError> {
        ConcreteAnchor::new(P1Bundle::line(d), LaurentMatrix::row(vec![phi]))
    }

    pub fn v(&self) -> &P1Bundle {
        &self.v
    }

    pub fn phi_row(&self) -> &LaurentMatrix {
        &self.phi_row
    }

    pub fn is_zero(&self) -> bool {
        self.phi_row.is_zero()
    }

    /// `φ₁ = −z⁻²·φ₀·T_V`.
    pub fn chart1_row(&self) -> LaurentMatrix {
        (&self.phi_row * self.v.transition()).shift(-2).scale(&-Rat::one())
    }

    /// The formal descriptor seen by the decision layer: atoms from the
    /// splitting type of `V`, `TX` flagged for `O(2)`, kind from `φ`.
    pub fn formal_descriptor(&self) -> Result<AlgebroidDesc, JetError> {
        let ty = birkhoff_split(&self.v)?.splitting_type;
        let tangent = ty == [2];
        let atoms = ty
            .iter()
            .map(|&d| {
                let mut a = Atom::line(d).labeled(format!("O({d})"));
                a.is_tangent = tangent;
                a
            })
            .collect();
        let v = FormalBundle::new(CurveContext::new(0), atoms).expect("split V is a valid bundle");
        let kind = match (self.is_zero(), tangent) {
            (true, _) => AnchorKind::Zero,
            (false, true) => AnchorKind::Isomorphism,
            (false, false) => AnchorKind::Nonzero,
        };
        let mut desc = AlgebroidDesc::new(v, kind);
        if self.v.transition().is_identity() || ty.len() == 1 {
            desc.anchor.section = Some(self.phi_row.row_vec(0));
        }
        Ok(desc)
    }
}

/// Čech representative of the obstruction class, `r × r·m`, in chart-0
/// frames: block `k` is `φₖ·T′·T⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCocycle {
    pub overlap_matrix: LaurentMatrix,
}

impl ObstructionCocycle {
    pub fn is_zero(&self) -> bool {
        self.overlap_matrix.is_zero()
    }
}

/// Local connection matrices on the two charts, `r × r·m` each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionCert {
    #[serde(rename = "A0")]
    pub a0: LaurentMatrix,
    #[serde(rename = "A1")]
    pub a1: LaurentMatrix,
}

/// Block row `[A₁ | … | A_m]` (`r × r·m`) to the `Hom(E, E ⊗ V*)` matrix
/// (`r·m × r`, row index `i·m + k`).
pub fn blocks_to_hom(a: &LaurentMatrix, r: usize, m: usize) -> LaurentMatrix {
    LaurentMatrix::from_fn(r * m, r, |row, j| a.get(row / m, (row % m) * r + j).clone())
}

pub fn hom_to_blocks(h: &LaurentMatrix, r: usize, m: usize) -> LaurentMatrix {
    LaurentMatrix::from_fn(r, r * m, |i, col| h.get(i * m + col / r, col % r).clone())
}

/// `End(E) ⊗ V* = Hom(E, E ⊗ V*)` as a bundle on its own.
pub fn end_twisted(e: &P1Bundle, v: &P1Bundle) -> P1Bundle {
    P1Bundle::hom(e, &e.tensor(&v.dual()))
}

fn block_coords(a: &LaurentMatrix, r: usize, m: usize) -> Vec<LaurentPoly> {
    matrix_to_coords(&blocks_to_hom(a, r, m))
}

fn coords_to_blocks(v: &[LaurentPoly], r: usize, m: usize) -> LaurentMatrix {
    hom_to_blocks(&coords_to_matrix(v, r * m, r), r, m)
}

/// `J¹(E)` with coordinates `(f′, f)`: transition
/// `[[−z⁻²·T, T′], [0, T]]`, sub-bundle `E ⊗ K`, quotient `E`.
pub fn jet1_transition(e: &P1Bundle) -> P1Bundle {
    let t = e.transition();
    let r = e.rank();
    let mut m = LaurentMatrix::zeros(2 * r, 2 * r);
    m.put_block(0, 0, &t.kron(&line_transition(-1, -2)));
    m.put_block(0, r, &t.derivative());
    m.put_block(r, r, t);
    P1Bundle::new(m).expect("block triangular with unit diagonal blocks")
}

/// `J¹_V(E) = ((E ⊗ V*) ⊕ J¹(E)) / Δ(E ⊗ K)` with coordinates `(N, f)`
/// where `N = M + f′·φ₀` absorbs the jet part. Transition
/// `[[T ⊗ T_V^{−T}, T′ ⊗ φ₀ᵀ], [0, T]]`: sub-bundle `E ⊗ V*`, quotient `E`.
pub fn jet_v_transition(e: &P1Bundle, anchor: &ConcreteAnchor) -> P1Bundle {
    let t = e.transition();
    let (r, m) = (e.rank(), anchor.v.rank());
    let sub = e.tensor(&anchor.v.dual());
    let mut out = LaurentMatrix::zeros(r * m + r, r * m + r);
    out.put_block(0, 0, sub.transition());
    out.put_block(0, r * m, &t.derivative().kron(&anchor.phi_row.transpose()));
    out.put_block(r * m, r * m, t);
    P1Bundle::new(out).expect("block triangular with unit diagonal blocks")
}

fn connection_discrepancy(e: &P1Bundle) -> LaurentMatrix {
    &e.transition().derivative() * &e.inverse_transition()
}

pub fn obstruction_cocycle(e: &P1Bundle, anchor: &ConcreteAnchor) -> ObstructionCocycle {
    ObstructionCocycle {
        overlap_matrix: anchor.phi_row.kron(&connection_discrepancy(e)),
    }
}

/// The chart-1 → chart-0 map of `End(E) ⊗ V*` applied to a block row.
pub fn twist(e: &P1Bundle, v: &P1Bundle, a1: &LaurentMatrix) -> LaurentMatrix {
    let (r, m) = (e.rank(), v.rank());
    let t = e.transition();
    let t_inv = e.inverse_transition();
    let tv_inv = v.inverse_transition();
    let blocks: Vec<LaurentMatrix> = (0..m)
        .map(|k| {
            (0..m).fold(LaurentMatrix::zeros(r, r), |acc, j| {
                let a1j = a1.block(0, j * r, r, r);
                let conj = &(t * &a1j) * &t_inv;
                &acc + &conj.scale_poly(tv_inv.get(j, k))
            })
        })
        .collect();
    LaurentMatrix::hcat(&blocks)
}

/// A splitting `L·T_F·R = diag(z^{eᵢ})` of `F = End(E) ⊗ V*` assembled
/// from splittings of `E` and `V`: if `U₀·T·U₁ = D` then
/// `U₀^{−T}·T^{−T}·U₁^{−T} = D⁻¹`, and Kronecker products of split
/// factors split the tensor product. Exponents are not sorted.
struct TwistedSplitting {
    left_inv: LaurentMatrix,
    left: LaurentMatrix,
    right: LaurentMatrix,
    exponents: Vec<i64>,
}

fn twisted_splitting(e: &P1Bundle, v: &P1Bundle) -> Result<TwistedSplitting, JetError> {
    let se = birkhoff_split(e)?;
    let sv = birkhoff_split(v)?;
    let inv = |m: &LaurentMatrix| m.unit_inverse().map_err(P1Error::from);
    let (e0_inv, e1_inv) = (inv(&se.u0)?, inv(&se.u1)?);
    let (v0_inv, v1_inv) = (inv(&sv.u0)?, inv(&sv.u1)?);
    let left = se.u0.kron(&v0_inv.transpose()).kron(&e0_inv.transpose());
    let left_inv = e0_inv.kron(&sv.u0.transpose()).kron(&se.u0.transpose());
    let right = se.u1.kron(&v1_inv.transpose()).kron(&e1_inv.transpose());
    let mut exponents = Vec::new();
    for &a in &se.splitting_type {
        for &b in &sv.splitting_type {
            for &c in &se.splitting_type {
                exponents.push(a - b - c);
            }
        }
    }
    Ok(TwistedSplitting {
        left_inv,
        left,
        right,
        exponents,
    })
}

/// Chart cochains `(b0, b1)` with `c = b0 − twist(b1)`, `b0` polynomial in
/// `z`, `b1` polynomial in `1/z`; `None` when `c` is not a coboundary.
///
/// After splitting `End(E) ⊗ V* ≅ ⊕ O(aᵢ)`, a component valued in `O(a)` is
/// a coboundary iff its coefficients at exponents `a+1, …, −1` vanish.
pub fn split_coboundary(
    c: &ObstructionCocycle,
    e: &P1Bundle,
    v: &P1Bundle,
) -> Result<Option<(LaurentMatrix, LaurentMatrix)>, JetError> {
    let (r, m) = (e.rank(), v.rank());
    let cm = &c.overlap_matrix;
    if cm.rows() != r || cm.cols() != r * m {
        return Err(JetError::ShapeMismatch(format!(
            "cocycle is {}x{}, expected {r}x{}",
            cm.rows(),
            cm.cols(),
            r * m
        )));
    }
    let split = twisted_splitting(e, v)?;
    let coords = LaurentMatrix::column(block_coords(cm, r, m));
    let reduced = (&split.left * &coords).col_vec(0);

    let mut beta0 = Vec::with_capacity(reduced.len());
    let mut beta1 = Vec::with_capacity(reduced.len());
    for (ci, &a) in reduced.iter().zip(&split.exponents) {
        if ci.terms().any(|(k, _)| k > a && k < 0) {
            return Ok(None);
        }
        let head = ci.filter_exponents(|k| k >= 0);
        let tail = ci.filter_exponents(|k| k < 0);
        beta0.push(head);
        beta1.push((-tail).shift(-a));
    }
    let b0 = (&split.left_inv * &LaurentMatrix::column(beta0)).col_vec(0);
    let b1 = (&split.right * &LaurentMatrix::column(beta1)).col_vec(0);
    let (b0, b1) = (coords_to_blocks(&b0, r, m), coords_to_blocks(&b1, r, m));
    debug_assert!(b0.is_poly_in_z() && b1.is_poly_in_w());
    Ok(Some((b0, b1)))
}

/// A certified connection when the obstruction vanishes, `None` otherwise.
pub fn construct_connection(
    e: &P1Bundle,
    anchor: &ConcreteAnchor,
) -> Result<Option<ConnectionCert>, JetError> {
    let c = obstruction_cocycle(e, anchor);
    let (r, m) = (e.rank(), anchor.v.rank());
    let cert = if c.is_zero() {
        ConnectionCert {
            a0: LaurentMatrix::zeros(r, r * m),
            a1: LaurentMatrix::zeros(r, r * m),
        }
    } else {
        match split_coboundary(&c, e, &anchor.v)? {
            None => return Ok(None),
            Some((b0, b1)) => ConnectionCert {
                a0: -&b0,
                a1: -&b1,
            },
        }
    };
    if !verify_connection(e, anchor, &cert) {
        return Err(JetError::P1(P1Error::Internal(
            "constructed connection failed verification".into(),
        )));
    }
    Ok(Some(cert))
}

pub fn connection_exists_p1(e: &P1Bundle, anchor: &ConcreteAnchor) -> Result<bool, JetError> {
    Ok(construct_connection(e, anchor)?.is_some())
}

/// Applies the local operator `f ↦ ∂f·φ + [Aₖ·f]ₖ` to a column `f`.
fn apply_operator(
    f: &[LaurentPoly],
    deriv: impl Fn(&LaurentPoly) -> LaurentPoly,
    phi: &LaurentMatrix,
    a: &LaurentMatrix,
) -> LaurentMatrix {
    let r = f.len();
    let m = phi.cols();
    let col = LaurentMatrix::column(f.to_vec());
    let df = LaurentMatrix::column(f.iter().map(deriv).collect());
    let mut out = &df * phi;
    for k in 0..m {
        let ak = a.block(0, k * r, r, r);
        let image = &ak * &col;
        for i in 0..r {
            let v = out.get(i, k) + image.get(i, 0);
            out.set(i, k, v);
        }
    }
    out
}

/// Exact checks that `cert` defines a Lie algebroid connection:
/// holomorphy of `A0`/`A1` on their charts, the gauge law as a Laurent
/// matrix identity, agreement of the two local operators on probe sections,
/// and the Leibniz rule `D(g·s) − g·D(s) = s ⊗ φ*(dg)` for constant frames
/// `s` and `g ∈ {1, z, z²}` (and `{1, w, w²}` in chart 1).
pub fn verify_connection(e: &P1Bundle, anchor: &ConcreteAnchor, cert: &ConnectionCert) -> bool {
    let (r, m) = (e.rank(), anchor.v.rank());
    let shape_ok = |a: &LaurentMatrix| a.rows() == r && a.cols() == r * m;
    if !shape_ok(&cert.a0) || !shape_ok(&cert.a1) {
        return false;
    }
    if !cert.a0.is_poly_in_z() || !cert.a1.is_poly_in_w() {
        return false;
    }

    // gauge law
    let c = obstruction_cocycle(e, anchor).overlap_matrix;
    if &cert.a0 + &c != twist(e, &anchor.v, &cert.a1) {
        return false;
    }

    let t = e.transition();
    let tv_inv = anchor.v.inverse_transition();
    let phi0 = anchor.phi_row();
    let phi1 = anchor.chart1_row();
    let d0 = |f: &[LaurentPoly]| apply_operator(f, LaurentPoly::derivative, phi0, &cert.a0);
    let d1 = |f: &[LaurentPoly]| apply_operator(f, d_dw, &phi1, &cert.a1);

    let unit = |i: usize, g: LaurentPoly| -> Vec<LaurentPoly> {
        (0..r)
            .map(|j| if j == i { g.clone() } else { LaurentPoly::zero() })
            .collect()
    };

    for i in 0..r {
        for n in 0..=2 {
            // overlap agreement on the chart-1 section w^n·e_i
            let f1 = unit(i, LaurentPoly::z_pow(-n));
            let f0 = (t * &LaurentMatrix::column(f1.clone())).col_vec(0);
            if d0(&f0) != &(t * &d1(&f1)) * &tv_inv {
                return false;
            }

            // Leibniz in both charts
            for (g, deriv_g, d, phi) in [
                (LaurentPoly::z_pow(n), LaurentPoly::z_pow(n).derivative(), &d0 as &dyn Fn(&[LaurentPoly]) -> LaurentMatrix, phi0),
                (LaurentPoly::z_pow(-n), d_dw(&LaurentPoly::z_pow(-n)), &d1, &phi1),
            ] {
                let s = unit(i, LaurentPoly::one());
                let gs: Vec<LaurentPoly> = s.iter().map(|p| p * &g).collect();
                let lhs = &d(&gs) - &d(&s).scale_poly(&g);
                let rhs = &LaurentMatrix::column(s.iter().map(|p| p * &deriv_g).collect()) * phi;
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Second route to existence: the sequence `0 → E⊗V* → J¹_V(E) → E → 0`
/// splits iff `J¹_V(E) ≅ (E ⊗ V*) ⊕ E`, which on ℙ¹ is a comparison of
/// splitting types.
pub fn jet_sequence_splits(e: &P1Bundle, anchor: &ConcreteAnchor) -> Result<bool, JetError> {
    let jet = birkhoff_split(&jet_v_transition(e, anchor))?.splitting_type;
    let mut expected = birkhoff_split(&e.tensor(&anchor.v.dual()))?.splitting_type;
    expected.extend(birkhoff_split(e)?.splitting_type);
    expected.sort_unstable_by(|a, b| b.cmp(a));
    Ok(jet == expected)
}
