//! Formal calculus of vector bundles on a genus-`g` curve, presented as
//! direct sums of indecomposable atoms carrying `(rank, degree)` and a
//! declared stability class.

use serde::{Deserialize, Serialize};

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormalError {
    #[error("invalid atom `{label}`: {msg}")]
    InvalidAtom { label: String, msg: String },
    #[error("a bundle needs at least one atom")]
    Empty,
    #[error("genus mismatch: {0} vs {1}")]
    ContextMismatch(u32, u32),
    #[error("stability of atom `{0}` is unknown")]
    UnknownStability(String),
}

/// The curve `X`; only its genus matters to the formal layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveContext {
    pub genus: u32,
}

impl CurveContext {
    pub fn new(genus: u32) -> CurveContext {
        CurveContext { genus }
    }

    /// `deg(TX) = 2(1 − g)`.
    pub fn tangent_degree(&self) -> i64 {
        2 * (1 - i64::from(self.genus))
    }

    /// `deg(K_X) = 2g − 2`.
    pub fn canonical_degree(&self) -> i64 {
        -self.tangent_degree()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Semistable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub rank: u32,
    pub degree: i64,
    #[serde(default = "unknown_stability")]
    pub stability: Stability,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub is_tangent: bool,
}

fn unknown_stability() -> Stability {
    Stability::Unknown
}

impl Atom {
    pub fn new(rank: u32, degree: i64, stability: Stability) -> Atom {
        Atom {
            rank,
            degree,
            stability,
            label: String::new(),
            is_tangent: false,
        }
    }

    /// A line bundle of the given degree.
    pub fn line(degree: i64) -> Atom {
        Atom::new(1, degree, Stability::Stable)
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Atom {
        self.label = label.into();
        self
    }

    pub fn slope(&self) -> Rat {
        Rat::new(self.degree, i64::from(self.rank)).expect("atom rank is positive")
    }

    fn check(mut self, ctx: &CurveContext) -> Result<Atom, FormalError> {
        let fail = |msg: &str| FormalError::InvalidAtom {
            label: self.label.clone(),
            msg: msg.to_string(),
        };
        if self.rank == 0 {
            return Err(fail("rank must be positive"));
        }
        if self.is_tangent && (self.rank != 1 || self.degree != ctx.tangent_degree()) {
            return Err(fail("a tangent atom must be a line bundle of degree 2(1-g)"));
        }
        // line bundles are stable
        if self.rank == 1 {
            self.stability = Stability::Stable;
        }
        Ok(self)
    }
}

/// A bundle `⊕ atoms` on a curve of the given genus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormalBundleRepr", into = "FormalBundleRepr")]
pub struct FormalBundle {
    context: CurveContext,
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct FormalBundleRepr {
    genus: u32,
    atoms: Vec<Atom>,
}

impl TryFrom<FormalBundleRepr> for FormalBundle {
    type Error = FormalError;
    fn try_from(r: FormalBundleRepr) -> Result<Self, FormalError> {
        FormalBundle::new(CurveContext::new(r.genus), r.atoms)
    }
}

impl From<FormalBundle> for FormalBundleRepr {
    fn from(b: FormalBundle) -> Self {
        FormalBundleRepr {
            genus: b.context.genus,
            atoms: b.atoms,
        }
    }
}

impl FormalBundle {
    pub fn new(context: CurveContext, atoms: Vec<Atom>) -> Result<FormalBundle, FormalError> {
        if atoms.is_empty() {
            return Err(FormalError::Empty);
        }
        let atoms = atoms
            .into_iter()
            .map(|a| a.check(&context))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FormalBundle { context, atoms })
    }

    /// `⊕ O(dᵢ)`-style bundle of line-bundle atoms.
    pub fn split(genus: u32, degrees: &[i64]) -> Result<FormalBundle, FormalError> {
        FormalBundle::new(
            CurveContext::new(genus),
            degrees.iter().map(|&d| Atom::line(d)).collect(),
        )
    }

    /// The tangent bundle `TX` as a single flagged atom.
    pub fn tangent(genus: u32) -> FormalBundle {
        let ctx = CurveContext::new(genus);
        let mut atom = Atom::line(ctx.tangent_degree()).labeled("TX");
        atom.is_tangent = true;
        FormalBundle::new(ctx, vec![atom]).expect("tangent atom is valid")
    }

    pub fn context(&self) -> CurveContext {
        self.context
    }

    pub fn genus(&self) -> u32 {
        self.context.genus
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn rank(&self) -> u32 {
        self.atoms.iter().map(|a| a.rank).sum()
    }

    pub fn degree(&self) -> i64 {
        self.atoms.iter().map(|a| a.degree).sum()
    }

    pub fn slope(&self) -> Rat {
        slope(self)
    }

    /// Stable means a single atom declared (or forced) stable: a sum of two
    /// or more atoms is at best polystable.
    pub fn is_stable(&self) -> bool {
        self.atoms.len() == 1 && self.atoms[0].stability == Stability::Stable
    }

    /// Every atom is a flagged tangent bundle, i.e. `self = TX`.
    pub fn is_tangent(&self) -> bool {
        self.atoms.len() == 1 && self.atoms[0].is_tangent
    }

    /// Semistable iff the HN filtration has a single step; `None` when some
    /// atom's stability is unknown.
    pub fn is_semistable(&self) -> Option<bool> {
        hn_filtration(self).ok().map(|hn| hn.steps.len() == 1)
    }
}

/// `degree(E) / rank(E)` in lowest terms.
pub fn slope(e: &FormalBundle) -> Rat {
    Rat::new(e.degree(), i64::from(e.rank())).expect("bundle rank is positive")
}

/// Rank and degree of a tensor product; the atoms of `E ⊗ F` are not
/// determined formally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorProfile {
    pub rank: u64,
    pub degree: i64,
}

impl TensorProfile {
    pub fn slope(&self) -> Rat {
        Rat::new(self.degree, self.rank as i64).expect("profile rank is positive")
    }
}

pub fn tensor_profile(e: &FormalBundle, f: &FormalBundle) -> Result<TensorProfile, FormalError> {
    if e.genus() != f.genus() {
        return Err(FormalError::ContextMismatch(e.genus(), f.genus()));
    }
    let (re, rf) = (i64::from(e.rank()), i64::from(f.rank()));
    Ok(TensorProfile {
        rank: (re * rf) as u64,
        degree: e.degree() * rf + re * f.degree(),
    })
}

/// Atom-wise `(rank, −degree)`; stability and labels carry over.
pub fn dual(e: &FormalBundle) -> FormalBundle {
    let ctx = e.context;
    let atoms = e
        .atoms
        .iter()
        .map(|a| Atom {
            degree: -a.degree,
            // K_X is not flagged as tangent
            is_tangent: a.is_tangent && ctx.tangent_degree() == 0,
            ..a.clone()
        })
        .collect();
    FormalBundle { context: ctx, atoms }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnStep {
    pub atoms: Vec<Atom>,
    pub slope: Rat,
}

impl HnStep {
    pub fn rank(&self) -> u32 {
        self.atoms.iter().map(|a| a.rank).sum()
    }
}

/// Successive semistable quotients of strictly decreasing slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnFiltration {
    pub steps: Vec<HnStep>,
}

impl HnFiltration {
    pub fn slopes(&self) -> Vec<Rat> {
        self.steps.iter().map(|s| s.slope.clone()).collect()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].slope > w[1].slope)
    }
}

/// Groups atoms by slope; equal-slope semistable atoms merge into one step.
pub fn hn_filtration(e: &FormalBundle) -> Result<HnFiltration, FormalError> {
    if let Some(a) = e.atoms.iter().find(|a| a.stability == Stability::Unknown) {
        return Err(FormalError::UnknownStability(a.label.clone()));
    }
    let mut atoms = e.atoms.clone();
    // stable sort keeps input order within a step
    atoms.sort_by_key(|a| std::cmp::Reverse(a.slope()));
    let mut steps: Vec<HnStep> = Vec::new();
    for atom in atoms {
        let s = atom.slope();
        match steps.last_mut() {
            Some(step) if step.slope == s => step.atoms.push(atom),
            _ => steps.push(HnStep {
                atoms: vec![atom],
                slope: s,
            }),
        }
    }
    let hn = HnFiltration { steps };
    debug_assert!(hn.is_strictly_decreasing());
    Ok(hn)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomVanishing {
    Vanishes,
    Unknown,
}

/// `H⁰(Hom(E, F)) = 0` is certified when both are semistable and
/// `μ(E) > μ(F)`; nothing is claimed otherwise.
pub fn hom_vanishes(e: &FormalBundle, f: &FormalBundle) -> HomVanishing {
    let semistable = |b: &FormalBundle| b.is_semistable() == Some(true);
    if e.genus() == f.genus() && semistable(e) && semistable(f) && e.slope() > f.slope() {
        HomVanishing::Vanishes
    } else {
        HomVanishing::Unknown
    }
}

/// Every indecomposable component has degree zero.
pub fn atiyah_weil(e: &FormalBundle) -> bool {
    e.atoms.iter().all(|a| a.degree == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn bundle(genus: u32, atoms: &[(u32, i64, Stability)]) -> FormalBundle {
        FormalBundle::new(
            CurveContext::new(genus),
            atoms
                .iter()
                .enumerate()
                .map(|(i, &(rk, d, s))| Atom::new(rk, d, s).labeled(format!("a{i}")))
                .collect(),
        )
        .unwrap()
    }

    use Stability::*;

    #[test]
    fn slope_examples() {
        assert_eq!(slope(&bundle(0, &[(1, 0, Stable)])), Rat::zero());
        assert_eq!(slope(&bundle(1, &[(2, 1, Stable)])), r(1, 2));
        assert_eq!(slope(&bundle(1, &[(2, 1, Stable), (1, 1, Stable)])), r(2, 3));
    }

    #[test]
    fn tensor_profile_examples() {
        let p = |a: (u32, i64), b: (u32, i64)| {
            tensor_profile(&bundle(1, &[(a.0, a.1, Stable)]), &bundle(1, &[(b.0, b.1, Stable)]))
                .unwrap()
        };
        assert_eq!(p((1, 0), (1, 0)), TensorProfile { rank: 1, degree: 0 });
        assert_eq!(p((2, 1), (1, -2)), TensorProfile { rank: 2, degree: -3 });
        assert_eq!(p((3, 2), (2, -5)), TensorProfile { rank: 6, degree: -11 });
    }

    #[test]
    fn tensor_profile_context_mismatch() {
        let e = bundle(0, &[(1, 0, Stable)]);
        let f = bundle(2, &[(1, 0, Stable)]);
        assert_eq!(tensor_profile(&e, &f), Err(FormalError::ContextMismatch(0, 2)));
    }

    #[test]
    fn dual_examples() {
        let d = dual(&bundle(1, &[(1, 3, Stable)]));
        assert_eq!((d.atoms()[0].rank, d.atoms()[0].degree), (1, -3));
        let d = dual(&bundle(1, &[(2, 0, Stable)]));
        assert_eq!(d.atoms()[0].stability, Stable);
        let e = bundle(3, &[(2, 5, Semistable), (1, -1, Stable)]);
        assert_eq!(dual(&dual(&e)), e);
    }

    #[test]
    fn hn_examples() {
        let hn = hn_filtration(&bundle(0, &[(1, 0, Stable)])).unwrap();
        assert_eq!(hn.slopes(), vec![Rat::zero()]);

        let e = bundle(0, &[(1, 3, Stable), (1, 1, Stable), (1, 1, Stable), (1, -2, Stable)]);
        let hn = hn_filtration(&e).unwrap();
        assert_eq!(hn.slopes(), vec![r(3, 1), r(1, 1), r(-2, 1)]);
        assert_eq!(hn.steps[1].atoms.len(), 2);

        let e = bundle(2, &[(2, 1, Semistable), (1, -1, Stable)]);
        let hn = hn_filtration(&e).unwrap();
        assert_eq!(hn.slopes(), vec![r(1, 2), r(-1, 1)]);
        assert_eq!(hn.steps[0].atoms[0].rank, 2);
    }

    #[test]
    fn hn_rejects_unknown_stability() {
        let e = bundle(1, &[(2, 0, Unknown)]);
        assert_eq!(hn_filtration(&e), Err(FormalError::UnknownStability("a0".into())));
    }

    #[test]
    fn rank_one_atoms_are_stable() {
        let e = bundle(4, &[(1, 7, Unknown)]);
        assert_eq!(e.atoms()[0].stability, Stable);
        assert!(e.is_stable());
    }

    #[test]
    fn hom_vanishing_examples() {
        let l = |d| bundle(0, &[(1, d, Stable)]);
        assert_eq!(hom_vanishes(&l(1), &l(0)), HomVanishing::Vanishes);
        assert_eq!(hom_vanishes(&l(0), &l(0)), HomVanishing::Unknown);
        assert_eq!(hom_vanishes(&l(0), &l(5)), HomVanishing::Unknown);
        let unknown = bundle(1, &[(2, 4, Unknown)]);
        assert_eq!(hom_vanishes(&unknown, &l(0)), HomVanishing::Unknown);
    }

    #[test]
    fn atiyah_weil_examples() {
        assert!(atiyah_weil(&bundle(1, &[(1, 0, Stable), (1, 0, Stable)])));
        assert!(!atiyah_weil(&bundle(1, &[(1, 1, Stable), (1, -1, Stable)])));
        assert!(atiyah_weil(&bundle(1, &[(2, 0, Unknown)])));
    }

    #[test]
    fn tangent_flag_is_checked() {
        let mut a = Atom::line(0);
        a.is_tangent = true;
        assert!(FormalBundle::new(CurveContext::new(0), vec![a.clone()]).is_err());
        assert!(FormalBundle::new(CurveContext::new(1), vec![a]).is_ok());
        assert_eq!(FormalBundle::tangent(3).degree(), -4);
    }

    #[test]
    fn json_schema() {
        let js = r#"{"genus": 2, "atoms": [{"rank": 2, "degree": 1, "stability": "semistable", "label": "E1", "is_tangent": false}, {"rank": 1, "degree": -2}]}"#;
        let e: FormalBundle = serde_json::from_str(js).unwrap();
        assert_eq!((e.rank(), e.degree(), e.genus()), (3, -1, 2));
        let back: FormalBundle = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<FormalBundle>(r#"{"genus": 0, "atoms": []}"#).is_err());
    }
}
