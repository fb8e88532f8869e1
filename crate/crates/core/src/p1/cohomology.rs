//! Cohomology of bundles on ℙ¹ read off the splitting type, global-section
//! bases, and the Riemann–Roch / Serre duality consistency checks.

use serde::{Deserialize, Serialize};

use super::birkhoff::{birkhoff_split, u0_inverse};
use super::bundle::P1Bundle;
use super::P1Error;
use crate::exact::{LaurentMatrix, LaurentPoly};
use crate::formal::{hn_filtration, FormalBundle, HnFiltration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub h0: u64,
    pub h1: u64,
}

/// `h⁰ = Σ max(0, aᵢ+1)`, `h¹ = Σ max(0, −aᵢ−1)` for `O(aᵢ)`.
pub fn dims_of_type(splitting_type: &[i64]) -> CohomologyDims {
    CohomologyDims {
        h0: splitting_type.iter().map(|&a| (a + 1).max(0) as u64).sum(),
        h1: splitting_type.iter().map(|&a| (-a - 1).max(0) as u64).sum(),
    }
}

pub fn cohomology_dims(e: &P1Bundle) -> Result<CohomologyDims, P1Error> {
    Ok(dims_of_type(&birkhoff_split(e)?.splitting_type))
}

/// A global section, given by its chart-0 coordinate column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalSection {
    pub chart0_rep: Vec<LaurentPoly>,
}

/// Basis of `H⁰(E)`: in the split frame `O(aᵢ)` has basis `zᵏ`,
/// `0 ≤ k ≤ aᵢ`; pulled back through `U₀⁻¹`.
pub fn global_sections(e: &P1Bundle) -> Result<Vec<GlobalSection>, P1Error> {
    let split = birkhoff_split(e)?;
    let back = u0_inverse(&split);
    let mut out = Vec::new();
    for (i, &a) in split.splitting_type.iter().enumerate() {
        for k in 0..=a {
            let rep: Vec<LaurentPoly> = (0..e.rank())
                .map(|row| back.get(row, i).shift(k))
                .collect();
            debug_assert!(e.is_global_section(&rep));
            out.push(GlobalSection { chart0_rep: rep });
        }
    }
    Ok(out)
}

/// `h⁰ − h¹ = deg + rank` (genus 0).
pub fn riemann_roch_check(e: &P1Bundle) -> Result<bool, P1Error> {
    let d = cohomology_dims(e)?;
    Ok(d.h0 as i64 - d.h1 as i64 == e.degree() + e.rank() as i64)
}

/// `h¹(E) = h⁰(E* ⊗ K)` with `K = O(−2)`, each side split separately.
pub fn serre_dual_check(e: &P1Bundle) -> Result<bool, P1Error> {
    let lhs = cohomology_dims(e)?.h1;
    let rhs = cohomology_dims(&e.dual().tensor(&P1Bundle::canonical()))?.h0;
    Ok(lhs == rhs)
}

/// HN filtration from the splitting type, via the formal layer.
pub fn hn_p1(e: &P1Bundle) -> Result<HnFiltration, P1Error> {
    let split = birkhoff_split(e)?;
    let formal = FormalBundle::split(0, &split.splitting_type).expect("nonempty split bundle");
    Ok(hn_filtration(&formal).expect("line bundles are stable"))
}

/// Global sections of `Hom(E, F)` as chart-0 matrices (`r_F × r_E`).
pub fn hom_sections(e: &P1Bundle, f: &P1Bundle) -> Result<Vec<LaurentMatrix>, P1Error> {
    let hom = P1Bundle::hom(e, f);
    Ok(global_sections(&hom)?
        .into_iter()
        .map(|s| super::bundle::coords_to_matrix(&s.chart0_rep, f.rank(), e.rank()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    #[test]
    fn dims_examples() {
        assert_eq!(cohomology_dims(&P1Bundle::line(0)).unwrap(), CohomologyDims { h0: 1, h1: 0 });
        assert_eq!(cohomology_dims(&P1Bundle::line(-2)).unwrap(), CohomologyDims { h0: 0, h1: 1 });
        assert_eq!(
            cohomology_dims(&P1Bundle::split(&[3, -5])).unwrap(),
            CohomologyDims { h0: 4, h1: 4 }
        );
    }

    #[test]
    fn sections_of_o1() {
        let s = global_sections(&P1Bundle::line(1)).unwrap();
        let reps: Vec<LaurentPoly> = s.into_iter().map(|g| g.chart0_rep[0].clone()).collect();
        assert_eq!(reps, vec![LaurentPoly::one(), LaurentPoly::z_pow(1)]);
        assert!(global_sections(&P1Bundle::line(-1)).unwrap().is_empty());
    }

    #[test]
    fn sections_of_trivial_rank_two() {
        let s = global_sections(&P1Bundle::trivial(2)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].chart0_rep, vec![LaurentPoly::one(), LaurentPoly::zero()]);
        assert_eq!(s[1].chart0_rep, vec![LaurentPoly::zero(), LaurentPoly::one()]);
    }

    #[test]
    fn rr_and_serre_examples() {
        for a in [-2, 0, 5] {
            let e = P1Bundle::line(a);
            assert!(riemann_roch_check(&e).unwrap());
            assert!(serre_dual_check(&e).unwrap());
        }
    }

    #[test]
    fn hn_examples() {
        let hn = hn_p1(&P1Bundle::split(&[1, 1])).unwrap();
        assert_eq!(hn.slopes(), vec![Rat::from_int(1)]);
        let hn = hn_p1(&P1Bundle::split(&[-2, 3, 1])).unwrap();
        assert_eq!(hn.slopes(), vec![Rat::from_int(3), Rat::from_int(1), Rat::from_int(-2)]);
        let hn = hn_p1(&P1Bundle::trivial(3)).unwrap();
        assert_eq!(hn.slopes(), vec![Rat::zero()]);
    }

    #[test]
    fn hom_sections_count() {
        // Hom(O(-1), O(1)) = O(2)
        let s = hom_sections(&P1Bundle::line(-1), &P1Bundle::line(1)).unwrap();
        assert_eq!(s.len(), 3);
    }
}
