//! Hodge numbers of the elliptically fibered Calabi-Yau threefolds.
//!
//! Over a rational surface base with canonical class `K`, the resolved
//! threefold has `h^{1,1} = (10 - K^2) + f + 1` where `f` counts the fibral
//! divisors of the resolution, and `h^{2,1} = h^{1,1} - chi/2` with `chi`
//! the Euler characteristic specialized to the Calabi-Yau case. Everything
//! stays polynomial in the formal intersection numbers `K^2`, `K*S`, `S^2`;
//! no concrete surface is ever fixed.
//!
//! The global sign convention is `c1(TB) = -K`. [`sign_convention_check`]
//! recomputes every stored Hodge row under that single substitution and
//! reports whether all of them reproduce.

use crate::models::{self, ModelError, ModelSpec, VerifyScope};
use crate::ring::{frac, GradedClass, Ring, RingDescriptor};

/// The ring Hodge data lives in: canonical class `K` and divisor class `S`,
/// truncated at weight 2 (a surface has no higher intersection numbers).
pub fn hodge_ring() -> Ring {
    RingDescriptor::new(&[("K", 1), ("S", 1)], 2).expect("fixed generator list is valid")
}

/// Hodge numbers and Euler characteristic of one Calabi-Yau threefold,
/// as polynomials over [`hodge_ring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgePair {
    pub h11: GradedClass,
    pub h21: GradedClass,
    pub chi: GradedClass,
}

/// Computes `h^{1,1}`, `h^{2,1}` and `chi` of the model's Calabi-Yau
/// threefold. The Euler characteristic comes from the dimension-2 pipeline
/// with `L` rewritten as `c1` and then `c1` rewritten as `-K`.
pub fn hodge_cy3(spec: &ModelSpec) -> Result<HodgePair, ModelError> {
    let ring = hodge_ring();
    let k = GradedClass::generator(&ring, "K")?;
    let chi_in_c1 = models::euler_polynomial(spec, 2, true)?;
    let chi = chi_in_c1.substitute("c1", &k.neg())?;
    let f = i64::from(spec.fibral_divisors);
    let h11 = GradedClass::from_integer(&ring, 11 + f).sub(&k.pow(2));
    let h21 = h11.sub(&chi.scale(&frac(1, 2)));
    Ok(HodgePair { h11, h21, chi })
}

/// Recomputes every stored Hodge row under the `c1 -> -K` convention and
/// returns whether all of them reproduce exactly.
pub fn sign_convention_check() -> Result<bool, ModelError> {
    let catalog = models::catalog()?;
    let report = models::verify_reference(&catalog, VerifyScope::Table15)?;
    Ok(report.all_passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FixtureSet;
    use crate::models::{catalog_with, find, ModelKey};
    use crate::parse::parse_class;

    fn the_catalog() -> Vec<ModelSpec> {
        catalog_with(&FixtureSet::embedded().unwrap()).unwrap()
    }

    fn expect(text: &str) -> GradedClass {
        parse_class(text, &hodge_ring()).unwrap()
    }

    #[test]
    fn smooth_weierstrass_row() {
        let catalog = the_catalog();
        let pair = hodge_cy3(find(&catalog, ModelKey::SmoothWeierstrass)).unwrap();
        assert_eq!(pair.h11, expect("11 - K^2"));
        assert_eq!(pair.h21, expect("11 + 29*K^2"));
        assert_eq!(pair.chi, expect("-60*K^2"));
    }

    #[test]
    fn su2_and_e8_rows() {
        let catalog = the_catalog();
        let su2 = hodge_cy3(find(&catalog, ModelKey::SU2)).unwrap();
        assert_eq!(su2.h11, expect("12 - K^2"));
        assert_eq!(su2.h21, expect("12 + 29*K^2 + 15*K*S + 3*S^2"));
        assert_eq!(su2.chi, expect("-60*K^2 - 30*K*S - 6*S^2"));
        let e8 = hodge_cy3(find(&catalog, ModelKey::E8)).unwrap();
        assert_eq!(e8.h11, expect("19 - K^2"));
        assert_eq!(e8.h21, expect("19 + 29*K^2 + 60*K*S + 30*S^2"));
    }

    #[test]
    fn so_models_lose_their_s_dependence() {
        let catalog = the_catalog();
        let so3 = hodge_cy3(find(&catalog, ModelKey::SO3)).unwrap();
        assert_eq!(so3.chi, expect("-36*K^2"));
        assert_eq!(so3.h21, expect("12 + 17*K^2"));
        let so5 = hodge_cy3(find(&catalog, ModelKey::SO5)).unwrap();
        assert_eq!(so5.h11, expect("14 - K^2"));
        assert_eq!(so5.h21, expect("14 + 9*K^2"));
        let so6 = hodge_cy3(find(&catalog, ModelKey::SO6)).unwrap();
        assert_eq!(so6.chi, expect("-12*K^2"));
    }

    #[test]
    fn chi_is_twice_the_hodge_difference() {
        let catalog = the_catalog();
        for spec in &catalog {
            let pair = hodge_cy3(spec).unwrap();
            let twice = pair.h11.sub(&pair.h21).scale(&crate::ring::rat(2));
            assert_eq!(pair.chi, twice, "{}", spec.key);
        }
    }

    #[test]
    fn h11_steps_match_rank_along_inclusions() {
        let catalog = the_catalog();
        let chain = [
            (ModelKey::SU2, ModelKey::SU3),
            (ModelKey::SU3, ModelKey::SU4),
            (ModelKey::SU4, ModelKey::SU5),
            (ModelKey::Spin7, ModelKey::Spin8),
            (ModelKey::SU5, ModelKey::Spin10),
            (ModelKey::Spin10, ModelKey::E6),
            (ModelKey::E6, ModelKey::E7),
            (ModelKey::E7, ModelKey::E8),
        ];
        for (small, large) in chain {
            let a = find(&catalog, small);
            let b = find(&catalog, large);
            let diff = hodge_cy3(b).unwrap().h11.sub(&hodge_cy3(a).unwrap().h11);
            let rank_step = i64::from(b.rank) - i64::from(a.rank);
            assert_eq!(
                diff,
                GradedClass::from_integer(&hodge_ring(), rank_step),
                "{small} -> {large}"
            );
        }
    }

    #[test]
    fn flipped_sign_convention_breaks_mixed_rows() {
        let catalog = the_catalog();
        let spec = find(&catalog, ModelKey::SU2);
        let k = GradedClass::generator(&hodge_ring(), "K").unwrap();
        let chi_in_c1 = models::euler_polynomial(spec, 2, true).unwrap();
        let flipped = chi_in_c1.substitute("c1", &k).unwrap();
        assert_ne!(flipped, expect("-60*K^2 - 30*K*S - 6*S^2"));
    }

    #[test]
    fn convention_check_passes_on_bundled_data() {
        assert!(sign_convention_check().unwrap());
    }
}
