//! Pushforward maps along blowups and along the Weierstrass P^2-bundle.
//!
//! For a blowup with smooth complete-intersection center `Z_1 .. Z_d` and
//! exceptional divisor `E`, the pushforward of a power of `E` is the
//! division-free expression
//!
//! ```text
//! f_* E^n = (-1)^(d+1) h_(n-d)(Z_1, .., Z_d) * Z_1 * .. * Z_d    (n >= 1)
//! ```
//!
//! where `h_r` is the complete homogeneous symmetric polynomial (`h_r = 0`
//! for `r < 0`, `h_0 = 1`), extracted from the series `prod_l 1/(1 - Z_l t)`.
//! A full class is pushed by splitting off powers of `E`; the `E`-free part
//! rides along unchanged by the projection formula.
//!
//! The same quantity has a second, numeric form as a moment sum
//! `sum_l Z_l^n prod_(m != l) Z_m / (Z_m - Z_l)`, defined only where the
//! `Z_l` are pairwise distinct. The two forms agree for `n >= 1` and serve
//! as independent cross-checks; the related Jacobi partial-fraction identity
//! for `h_r` is exposed as a sample-level check as well.
//!
//! The ambient projective bundle has its own pushforward, determined by its
//! two relations: monomials of fiber-degree below two die, and
//! `H^(i+2) -> (-2*(-2)^i + 3*(-3)^i) * L^i` otherwise.

use crate::ring::{rat, GradedClass, Ring, RingDescriptor};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

/// One blowup along a complete intersection of the listed center classes,
/// with its exceptional generator name and the multiplicity it contributes
/// to the proper transform of the hypersurface.
#[derive(Debug, Clone)]
pub struct BlowupStep {
    pub centers: Vec<GradedClass>,
    pub exceptional: String,
    pub multiplicity: u32,
}

/// Errors from the sample-level oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("moment formula needs pairwise distinct values; the sample repeats one")]
    CoincidentSample,
    #[error("a blowup center needs at least two classes, got {0}")]
    TooFewCenters(usize),
    #[error("Jacobi identity requires r >= -(d-1), got r = {r} with d = {d}")]
    ExponentOutOfRange { r: i64, d: usize },
}

/// Complete homogeneous symmetric polynomial `h_r` in the given classes,
/// read off as the `t^r` coefficient of `prod_l 1/(1 - Z_l t)`. Zero for
/// negative `r`.
pub fn complete_homogeneous(r: i64, centers: &[GradedClass]) -> GradedClass {
    let ring = centers
        .first()
        .expect("complete_homogeneous needs at least one class")
        .ring();
    if r < 0 {
        return GradedClass::zero(ring);
    }
    let r = r as usize;
    // Coefficients of the running product in t; multiplying by a geometric
    // series 1/(1 - Z t) is a prefix-sum against powers of Z.
    let mut series = vec![GradedClass::one(ring)];
    series.resize(r + 1, GradedClass::zero(ring));
    for z in centers {
        let mut powers = vec![GradedClass::one(ring)];
        for _ in 0..r {
            powers.push(powers.last().unwrap().mul(z));
        }
        let mut next = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let mut acc = GradedClass::zero(ring);
            for j in 0..=k {
                acc = acc.add(&series[j].mul(&powers[k - j]));
            }
            next.push(acc);
        }
        series = next;
    }
    series.pop().expect("series has r+1 entries")
}

/// Pushforward of `E^n` alone: zero for `n = 0`, otherwise
/// `(-1)^(d+1) h_(n-d) * Z_1 * .. * Z_d`.
pub fn exceptional_power_pushforward(n: u32, centers: &[GradedClass]) -> GradedClass {
    assert!(
        centers.len() >= 2,
        "a blowup center consists of at least two classes"
    );
    let ring = centers[0].ring();
    if n == 0 {
        return GradedClass::zero(ring);
    }
    let d = centers.len();
    let mut product = complete_homogeneous(i64::from(n) - d as i64, centers);
    for z in centers {
        product = product.mul(z);
    }
    if d % 2 == 0 {
        product.neg()
    } else {
        product
    }
}

/// Pushforward of a full class along one blowup. The class is split by powers
/// of the exceptional generator; the exceptional-free part passes through
/// unchanged and each positive power maps by
/// [`exceptional_power_pushforward`]. The result never mentions the
/// exceptional generator.
pub fn blowup_pushforward(a: &GradedClass, step: &BlowupStep) -> GradedClass {
    let parts = a
        .decompose_by(&step.exceptional)
        .expect("exceptional generator must belong to the ring");
    let mut out = parts[0].clone();
    for (i, alpha) in parts.iter().enumerate().skip(1) {
        if alpha.is_zero() {
            continue;
        }
        out = out.add(&alpha.mul(&exceptional_power_pushforward(i as u32, &step.centers)));
    }
    debug_assert!(!out.mentions(&step.exceptional));
    out
}

/// Pushforward along the P^2-bundle projection, with `fiber` the hyperplane
/// generator and `base` carrying the twist. Fiber-degree 0 and 1 die;
/// `fiber^(i+2) * m -> (-2*(-2)^i + 3*(-3)^i) * base^i * m`.
pub fn projective_bundle_pushforward(a: &GradedClass, fiber: &str, base: &str) -> GradedClass {
    let parts = a
        .decompose_by(fiber)
        .expect("fiber generator must belong to the ring");
    let ring = a.ring();
    let base_gen = GradedClass::generator(ring, base).expect("base generator must exist");
    let mut out = GradedClass::zero(ring);
    for (k, alpha) in parts.iter().enumerate().skip(2) {
        if alpha.is_zero() {
            continue;
        }
        let i = (k - 2) as u32;
        let weight = rat(-2) * rat(-2).pow(i as i32) + rat(3) * rat(-3).pow(i as i32);
        out = out.add(&alpha.mul(&base_gen.pow(i)).scale(&weight));
    }
    out
}

/// Numeric moment form of the pushforward of `E^n`, evaluated at a sample of
/// pairwise distinct rational center values:
/// `sum_l Z_l^n prod_(m != l) Z_m / (Z_m - Z_l)`. At `n = 0` the sum
/// telescopes to 1 (it measures the full fiber class, not `f_* E^0 = 0`).
pub fn moment_oracle(n: u32, sample: &[BigRational]) -> Result<BigRational, OracleError> {
    if sample.len() < 2 {
        return Err(OracleError::TooFewCenters(sample.len()));
    }
    for (l, zl) in sample.iter().enumerate() {
        for zm in &sample[l + 1..] {
            if zl == zm {
                return Err(OracleError::CoincidentSample);
            }
        }
    }
    let mut total = BigRational::zero();
    for (l, zl) in sample.iter().enumerate() {
        let mut term = zl.pow(n as i32);
        for (m, zm) in sample.iter().enumerate() {
            if m != l {
                term *= zm / (zm - zl);
            }
        }
        total += term;
    }
    Ok(total)
}

/// Checks the partial-fraction identity
/// `h_r(x_1..x_d) = sum_l x_l^(r+d-1) prod_(m != l) 1/(x_l - x_m)`
/// at one sample: the left side comes from the symbolic series extraction,
/// the right side is evaluated directly. Defined for `r >= -(d-1)`; below
/// that the right side is a genuinely different function.
pub fn jacobi_identity_check(r: i64, sample: &[BigRational]) -> Result<bool, OracleError> {
    let d = sample.len();
    if d < 2 {
        return Err(OracleError::TooFewCenters(d));
    }
    if r + (d as i64) - 1 < 0 {
        return Err(OracleError::ExponentOutOfRange { r, d });
    }
    for (l, xl) in sample.iter().enumerate() {
        for xm in &sample[l + 1..] {
            if xl == xm {
                return Err(OracleError::CoincidentSample);
            }
        }
    }
    let lhs = {
        let names: Vec<String> = (1..=d).map(|i| format!("Z{i}")).collect();
        let gens: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
        let degree = u32::try_from(r.max(0)).expect("small degree");
        let ring: Ring = RingDescriptor::new(&gens, degree).expect("fresh sample ring");
        let centers: Vec<GradedClass> = names
            .iter()
            .map(|n| GradedClass::generator(&ring, n).expect("generator just added"))
            .collect();
        let h = complete_homogeneous(r, &centers);
        let values: HashMap<String, BigRational> = names
            .iter()
            .cloned()
            .zip(sample.iter().cloned())
            .collect();
        h.eval(&values).expect("all generators assigned")
    };
    let mut rhs = BigRational::zero();
    for (l, xl) in sample.iter().enumerate() {
        let mut term = xl.pow((r + d as i64 - 1) as i32);
        for (m, xm) in sample.iter().enumerate() {
            if m != l {
                term *= (xl - xm).recip();
            }
        }
        rhs += term;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::frac;
    use crate::sampling::RationalSampler;

    fn z_ring(d: usize, truncation: u32) -> (Ring, Vec<GradedClass>) {
        let names: Vec<String> = (1..=d).map(|i| format!("Z{i}")).collect();
        let gens: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
        let ring = RingDescriptor::new(&gens, truncation).unwrap();
        let zs = names
            .iter()
            .map(|n| GradedClass::generator(&ring, n).unwrap())
            .collect();
        (ring, zs)
    }

    #[test]
    fn complete_homogeneous_small_cases() {
        let (ring, zs) = z_ring(3, 4);
        assert_eq!(complete_homogeneous(0, &zs), GradedClass::one(&ring));
        assert!(complete_homogeneous(-1, &zs).is_zero());
        let h1 = complete_homogeneous(1, &zs);
        assert_eq!(h1.to_string(), "Z3 + Z2 + Z1");
        let (_, zs2) = z_ring(2, 4);
        let h2 = complete_homogeneous(2, &zs2);
        assert_eq!(h2.to_string(), "Z2^2 + Z1*Z2 + Z1^2");
    }

    #[test]
    fn exceptional_powers_low_degrees_vanish() {
        let (_, zs) = z_ring(3, 6);
        assert!(exceptional_power_pushforward(0, &zs).is_zero());
        assert!(exceptional_power_pushforward(1, &zs).is_zero());
        assert!(exceptional_power_pushforward(2, &zs).is_zero());
        assert!(!exceptional_power_pushforward(3, &zs).is_zero());
    }

    #[test]
    fn codimension_two_square_is_minus_product() {
        // with centers (H+2L, H+3L): E^2 pushes to -(H+2L)(H+3L)
        let ring = RingDescriptor::new(&[("H", 1), ("L", 1)], 2).unwrap();
        let h = GradedClass::generator(&ring, "H").unwrap();
        let l = GradedClass::generator(&ring, "L").unwrap();
        let z1 = h.add(&l.scale(&rat(2)));
        let z2 = h.add(&l.scale(&rat(3)));
        let pushed = exceptional_power_pushforward(2, &[z1.clone(), z2.clone()]);
        assert_eq!(pushed, z1.mul(&z2).neg());
    }

    #[test]
    fn codimension_three_cube_and_fourth_power() {
        let (_, zs) = z_ring(3, 4);
        let product = zs[0].mul(&zs[1]).mul(&zs[2]);
        assert_eq!(exceptional_power_pushforward(3, &zs), product);
        let expected = complete_homogeneous(1, &zs).mul(&product);
        assert_eq!(exceptional_power_pushforward(4, &zs), expected);
    }

    #[test]
    fn blowup_pushforward_splits_exceptional_part() {
        let ring = RingDescriptor::new(&[("H", 1), ("L", 1), ("E1", 1)], 3).unwrap();
        let h = GradedClass::generator(&ring, "H").unwrap();
        let l = GradedClass::generator(&ring, "L").unwrap();
        let e = GradedClass::generator(&ring, "E1").unwrap();
        let step = BlowupStep {
            centers: vec![h.add(&l.scale(&rat(2))), h.add(&l.scale(&rat(3)))],
            exceptional: "E1".into(),
            multiplicity: 1,
        };
        // a = 7*H + E1^2: the E-free part survives, E1^2 maps to -(Z1*Z2)
        let a = h.scale(&rat(7)).add(&e.pow(2));
        let pushed = blowup_pushforward(&a, &step);
        let expected = h
            .scale(&rat(7))
            .sub(&step.centers[0].mul(&step.centers[1]));
        assert_eq!(pushed, expected);
        // E1 itself is below the center codimension and dies
        assert!(blowup_pushforward(&e, &step).is_zero());
    }

    #[test]
    fn bundle_pushforward_monomial_rules() {
        let ring = RingDescriptor::new(&[("H", 1), ("L", 1), ("S", 1)], 6).unwrap();
        let h = GradedClass::generator(&ring, "H").unwrap();
        let l = GradedClass::generator(&ring, "L").unwrap();
        let s = GradedClass::generator(&ring, "S").unwrap();
        let one = GradedClass::one(&ring);
        assert!(projective_bundle_pushforward(&one, "H", "L").is_zero());
        assert!(projective_bundle_pushforward(&h, "H", "L").is_zero());
        assert_eq!(projective_bundle_pushforward(&h.pow(2), "H", "L"), one);
        assert_eq!(
            projective_bundle_pushforward(&h.pow(3), "H", "L"),
            l.scale(&rat(-5))
        );
        assert_eq!(
            projective_bundle_pushforward(&h.pow(4), "H", "L"),
            l.pow(2).scale(&rat(19))
        );
        // coefficients ride along: S * H^2 -> S
        assert_eq!(projective_bundle_pushforward(&s.mul(&h.pow(2)), "H", "L"), s);
    }

    #[test]
    fn bundle_pushforward_kills_the_chow_relation() {
        // H*(H+2L)*(H+3L) is zero in the bundle's Chow ring, so its image
        // under the pushforward (and the image of all its multiples) must
        // vanish even though our ring is free
        let ring = RingDescriptor::new(&[("H", 1), ("L", 1)], 8).unwrap();
        let h = GradedClass::generator(&ring, "H").unwrap();
        let l = GradedClass::generator(&ring, "L").unwrap();
        let relation = h
            .mul(&h.add(&l.scale(&rat(2))))
            .mul(&h.add(&l.scale(&rat(3))));
        for extra in 0..4 {
            let multiple = relation.mul(&h.pow(extra)).mul(&l.pow(1));
            assert!(
                projective_bundle_pushforward(&multiple, "H", "L").is_zero(),
                "relation multiple H^{extra} survived"
            );
        }
    }

    #[test]
    fn moment_oracle_hand_value() {
        // d = 2, n = 2, sample (2, 5): 4*(5/3) + 25*(2/(2-5)) = -10
        let sample = [rat(2), rat(5)];
        assert_eq!(moment_oracle(2, &sample).unwrap(), rat(-10));
    }

    #[test]
    fn moment_oracle_total_mass_is_one() {
        // n = 0 measures the fiber class: the sum is identically 1,
        // deliberately different from the symbolic rule E^0 -> 0
        let mut sampler = RationalSampler::new(42);
        for d in 2..=4 {
            let sample = sampler.distinct(d);
            assert_eq!(moment_oracle(0, &sample).unwrap(), rat(1));
        }
    }

    #[test]
    fn moment_oracle_rejects_coincident_sample() {
        let sample = [rat(3), rat(3)];
        assert_eq!(
            moment_oracle(1, &sample).unwrap_err(),
            OracleError::CoincidentSample
        );
        assert_eq!(
            moment_oracle(1, &[rat(3)]).unwrap_err(),
            OracleError::TooFewCenters(1)
        );
    }

    #[test]
    fn symbolic_and_moment_forms_agree_on_positive_powers() {
        let mut sampler = RationalSampler::new(7);
        for d in 2..=3 {
            let (_, zs) = z_ring(d, 8);
            for n in 1..=6u32 {
                let sample = sampler.distinct(d);
                let symbolic = exceptional_power_pushforward(n, &zs);
                let values: HashMap<String, BigRational> = (1..=d)
                    .map(|i| format!("Z{i}"))
                    .zip(sample.iter().cloned())
                    .collect();
                let left = symbolic.eval(&values).unwrap();
                let right = moment_oracle(n, &sample).unwrap();
                assert_eq!(left, right, "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn jacobi_hand_value() {
        // r = 1, d = 2, sample (3, 5): h_1 = 8 and 9/(3-5) + 25/(5-3) = 8
        assert!(jacobi_identity_check(1, &[rat(3), rat(5)]).unwrap());
    }

    #[test]
    fn jacobi_negative_r_in_range_vanishes() {
        // for -(d-1) <= r < 0 both sides are zero
        let mut sampler = RationalSampler::new(11);
        for d in 2..=4usize {
            for r in -(d as i64 - 1)..0 {
                let sample = sampler.distinct(d);
                assert!(
                    jacobi_identity_check(r, &sample).unwrap(),
                    "r = {r}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn jacobi_rejects_r_below_range() {
        let sample = [frac(1, 2), rat(3)];
        assert_eq!(
            jacobi_identity_check(-2, &sample).unwrap_err(),
            OracleError::ExponentOutOfRange { r: -2, d: 2 }
        );
    }
}
