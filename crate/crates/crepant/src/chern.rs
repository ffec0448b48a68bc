//! Total Chern class bookkeeping along a resolution sequence.
//!
//! The ambient space starts as the P^2-bundle X0 = P(O + L^2 + L^3) over the
//! base, carrying the Weierstrass hypersurface Y0 of class `3H + 6L`. Each
//! blowup along a complete intersection of divisors `Z_1 .. Z_d` replaces the
//! ambient total Chern class by
//!
//! ```text
//! c(TX~) = (1 + E) * prod_i (1 + Z_i - E) / prod_i (1 + Z_i) * c(TX)
//! ```
//!
//! and the proper transform of the hypersurface picks up `-(d-1) E`. The
//! class whose pushforward computes the Euler characteristic is
//! `[Y] * c(TX) / (1 + [Y])`; the resolution is crepant precisely when the
//! weight-one part of `c(TX) / (1 + [Y])` is free of every exceptional
//! divisor, which pins the multiplicity `d - 1`.

use crate::pushforward::{blowup_pushforward, BlowupStep};
use crate::ring::{GradedClass, Ring, RingDescriptor, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChernError {
    #[error("exceptional generator `{0}` is already part of the ring")]
    ExceptionalInUse(String),
    #[error("a blowup center needs at least two classes, got {0}")]
    TooFewCenters(usize),
    #[error("every center class must be homogeneous of weight 1")]
    CenterNotDivisor,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Ambient ring for a Weierstrass model over a base of the given dimension:
/// the bundle classes `H`, `L`, the divisor `S` supporting the non-abelian
/// fibers, and the base Chern classes `c1 .. c_d`, truncated at `d + 2`.
pub fn weierstrass_ring(base_dim: u32) -> Ring {
    let mut gens: Vec<(String, u32)> = vec![
        ("H".to_string(), 1),
        ("L".to_string(), 1),
        ("S".to_string(), 1),
    ];
    for i in 1..=base_dim {
        gens.push((format!("c{i}"), i));
    }
    let refs: Vec<(&str, u32)> = gens.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    RingDescriptor::new(&refs, base_dim + 2).expect("fixed generator list is valid")
}

/// Total Chern class of the base, `1 + c1 + .. + c_d`, in the given ring.
pub fn base_chern(ring: &Ring, base_dim: u32) -> GradedClass {
    let mut c = GradedClass::one(ring);
    for i in 1..=base_dim {
        c = c.add(&GradedClass::generator(ring, &format!("c{i}")).expect("base class present"));
    }
    c
}

/// Total Chern class of the ambient bundle X0,
/// `(1 + H) (1 + H + 2L) (1 + H + 3L) * c(B)`.
pub fn ambient_chern_x0(base_dim: u32) -> GradedClass {
    let ring = weierstrass_ring(base_dim);
    let h = GradedClass::generator(&ring, "H").unwrap();
    let l = GradedClass::generator(&ring, "L").unwrap();
    let one = GradedClass::one(&ring);
    one.add(&h)
        .mul(&one.add(&h).add(&l.scale(&crate::ring::rat(2))))
        .mul(&one.add(&h).add(&l.scale(&crate::ring::rat(3))))
        .mul(&base_chern(&ring, base_dim))
}

/// The class `[Y0] * c(TX0) / (1 + [Y0])` on X0 whose pushforward to the
/// base expands the smooth Weierstrass Euler characteristic.
pub fn weierstrass_chern(base_dim: u32) -> GradedClass {
    let state = ResolutionState::weierstrass(base_dim);
    resolved_chern(&state)
}

/// Ambient total Chern class, hypersurface class and blowup history at one
/// point of a resolution sequence. Immutable: each blowup returns a new state.
#[derive(Debug, Clone)]
pub struct ResolutionState {
    ring: Ring,
    base_dim: u32,
    ambient_chern: GradedClass,
    hypersurface: GradedClass,
    steps: Vec<BlowupStep>,
}

impl ResolutionState {
    /// The unresolved Weierstrass model over a `base_dim`-dimensional base.
    pub fn weierstrass(base_dim: u32) -> Self {
        let ring = weierstrass_ring(base_dim);
        let h = GradedClass::generator(&ring, "H").unwrap();
        let l = GradedClass::generator(&ring, "L").unwrap();
        let hypersurface = h.scale(&crate::ring::rat(3)).add(&l.scale(&crate::ring::rat(6)));
        ResolutionState {
            ambient_chern: ambient_chern_x0(base_dim),
            hypersurface,
            ring,
            base_dim,
            steps: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    /// Total Chern class of the current ambient space.
    pub fn ambient_chern(&self) -> &GradedClass {
        &self.ambient_chern
    }

    /// Class of the proper transform of the hypersurface.
    pub fn hypersurface(&self) -> &GradedClass {
        &self.hypersurface
    }

    pub fn steps(&self) -> &[BlowupStep] {
        &self.steps
    }

    /// Pushes a class down through every recorded blowup, newest first. The
    /// result mentions no exceptional generator.
    pub fn push_to_x0(&self, a: &GradedClass) -> GradedClass {
        let mut acc = a.clone();
        for step in self.steps.iter().rev() {
            acc = blowup_pushforward(&acc, step);
        }
        acc
    }
}

/// Blows up along the given centers with the crepant multiplicity `d - 1`.
pub fn apply_blowup(
    state: &ResolutionState,
    centers: &[GradedClass],
    exceptional: &str,
) -> Result<ResolutionState, ChernError> {
    let m = centers.len().saturating_sub(1) as u32;
    apply_blowup_with_multiplicity(state, centers, exceptional, m)
}

/// Blows up along the given centers, subtracting `multiplicity * E` from the
/// hypersurface class. Anything other than `d - 1` breaks crepancy; the
/// knob exists so that can be demonstrated.
pub fn apply_blowup_with_multiplicity(
    state: &ResolutionState,
    centers: &[GradedClass],
    exceptional: &str,
    multiplicity: u32,
) -> Result<ResolutionState, ChernError> {
    if centers.len() < 2 {
        return Err(ChernError::TooFewCenters(centers.len()));
    }
    if state.ring.find(exceptional).is_some() {
        return Err(ChernError::ExceptionalInUse(exceptional.to_string()));
    }
    for z in centers {
        if !z.is_homogeneous_of(1) || z.is_zero() {
            return Err(ChernError::CenterNotDivisor);
        }
    }
    let mut gens: Vec<(String, u32)> = state
        .ring
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.weight))
        .collect();
    gens.push((exceptional.to_string(), 1));
    let refs: Vec<(&str, u32)> = gens.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    let ring = RingDescriptor::new(&refs, state.ring.truncation())?;

    let e = GradedClass::generator(&ring, exceptional)?;
    let one = GradedClass::one(&ring);
    let mut numerator = one.add(&e);
    let mut denominator = one.clone();
    let mut promoted_centers = Vec::with_capacity(centers.len());
    for z in centers {
        let z = z.into_ring(&ring)?;
        numerator = numerator.mul(&one.add(&z).sub(&e));
        denominator = denominator.mul(&one.add(&z));
        promoted_centers.push(z);
    }
    let ambient_chern = state
        .ambient_chern
        .into_ring(&ring)?
        .mul(&numerator)
        .mul(&denominator.invert().expect("denominator has constant term 1"));
    let hypersurface = state
        .hypersurface
        .into_ring(&ring)?
        .sub(&e.scale(&crate::ring::rat(i64::from(multiplicity))));
    let mut steps: Vec<BlowupStep> = Vec::with_capacity(state.steps.len() + 1);
    for step in &state.steps {
        steps.push(BlowupStep {
            centers: step
                .centers
                .iter()
                .map(|z| z.into_ring(&ring))
                .collect::<Result<_, _>>()?,
            exceptional: step.exceptional.clone(),
            multiplicity: step.multiplicity,
        });
    }
    steps.push(BlowupStep {
        centers: promoted_centers,
        exceptional: exceptional.to_string(),
        multiplicity,
    });
    Ok(ResolutionState {
        ring,
        base_dim: state.base_dim,
        ambient_chern,
        hypersurface,
        steps,
    })
}

/// The class `[Y] * c(TX) / (1 + [Y])` on the current ambient space; its
/// pushforward to the base computes the Euler characteristic of Y.
pub fn resolved_chern(state: &ResolutionState) -> GradedClass {
    let one = GradedClass::one(&state.ring);
    state
        .hypersurface
        .mul(&state.ambient_chern)
        .mul(&one.add(&state.hypersurface).invert().expect("1 + [Y] is a unit"))
}

/// True when the resolution is crepant: the weight-one part of
/// `c(TX) / (1 + [Y])` (the total Chern class of Y by adjunction) must not
/// mention any exceptional divisor.
pub fn crepancy_check(state: &ResolutionState) -> bool {
    let one = GradedClass::one(&state.ring);
    let adjoint = state
        .ambient_chern
        .mul(&one.add(&state.hypersurface).invert().expect("1 + [Y] is a unit"));
    let weight_one = adjoint.component(1);
    state
        .steps
        .iter()
        .all(|step| !weight_one.mentions(&step.exceptional))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_class;
    use crate::pushforward::projective_bundle_pushforward;
    use crate::ring::rat;

    fn su2_state(base_dim: u32) -> ResolutionState {
        let state = ResolutionState::weierstrass(base_dim);
        let centers = ["H + 2*L", "H + 3*L", "S"]
            .map(|t| parse_class(t, state.ring()).unwrap());
        apply_blowup(&state, &centers, "E1").unwrap()
    }

    #[test]
    fn ambient_weight_one_part() {
        let c = ambient_chern_x0(2);
        assert_eq!(c.component(1).to_string(), "c1 + 5*L + 3*H");
        assert_eq!(c.component(0), GradedClass::one(c.ring()));
    }

    #[test]
    fn weierstrass_pushforward_matches_reference_series() {
        // pi_* ([Y0] c(TX0) / (1 + [Y0])) must agree with 12L/(1+6L) c(B)
        // in every weight up to the base dimension
        for base_dim in 1..=3u32 {
            let pushed = projective_bundle_pushforward(&weierstrass_chern(base_dim), "H", "L");
            let ring = pushed.ring();
            let l = GradedClass::generator(ring, "L").unwrap();
            let one = GradedClass::one(ring);
            let series = l
                .scale(&rat(12))
                .mul(&one.add(&l.scale(&rat(6))).invert().unwrap())
                .mul(&base_chern(ring, base_dim));
            for w in 0..=base_dim {
                assert_eq!(pushed.component(w), series.component(w), "weight {w}");
            }
        }
    }

    #[test]
    fn blowup_grows_ring_and_tracks_multiplicity() {
        let resolved = su2_state(3);
        assert!(resolved.ring().find("E1").is_some());
        assert_eq!(resolved.hypersurface().to_string(), "-2*E1 + 6*L + 3*H");
        assert_eq!(resolved.steps().len(), 1);
        assert_eq!(resolved.steps()[0].multiplicity, 2);
    }

    #[test]
    fn blowup_chern_correction_first_order() {
        // the ambient correction starts at (1 - d) E + higher order
        let state = ResolutionState::weierstrass(2);
        let resolved = su2_state(2);
        let parts = resolved
            .ambient_chern()
            .component(1)
            .decompose_by("E1")
            .unwrap();
        // weight-one part: 3H + 5L + c1 + (1 - 3) E1
        assert_eq!(
            parts[0],
            state
                .ambient_chern()
                .component(1)
                .into_ring(resolved.ring())
                .unwrap()
        );
        assert_eq!(parts[1], GradedClass::from_integer(resolved.ring(), -2));
    }

    #[test]
    fn rejects_bad_blowups() {
        let state = ResolutionState::weierstrass(2);
        let z = parse_class("H + 2*L", state.ring()).unwrap();
        assert_eq!(
            apply_blowup(&state, &[z.clone()], "E1").unwrap_err(),
            ChernError::TooFewCenters(1)
        );
        let s = parse_class("S", state.ring()).unwrap();
        assert_eq!(
            apply_blowup(&state, &[z.clone(), s.clone()], "H").unwrap_err(),
            ChernError::ExceptionalInUse("H".into())
        );
        let not_divisor = parse_class("1 + S", state.ring()).unwrap();
        assert_eq!(
            apply_blowup(&state, &[z, not_divisor], "E1").unwrap_err(),
            ChernError::CenterNotDivisor
        );
        let resolved = su2_state(2);
        let z2 = parse_class("E1", resolved.ring()).unwrap();
        let s2 = parse_class("S", resolved.ring()).unwrap();
        assert_eq!(
            apply_blowup(&resolved, &[z2, s2], "E1").unwrap_err(),
            ChernError::ExceptionalInUse("E1".into())
        );
    }

    #[test]
    fn su2_euler_components_through_weight_three() {
        let resolved = su2_state(3);
        let chern = resolved_chern(&resolved);
        let pushed =
            projective_bundle_pushforward(&resolved.push_to_x0(&chern), "H", "L");
        let ring = pushed.ring();
        assert_eq!(
            pushed.component(1),
            parse_class("12*L", ring).unwrap()
        );
        assert_eq!(
            pushed.component(2),
            parse_class("6*(2*c1*L - 12*L^2 + 5*L*S - S^2)", ring).unwrap()
        );
        assert_eq!(
            pushed.component(3),
            parse_class(
                "6*(-12*c1*L^2 + 5*c1*L*S - c1*S^2 + 2*c2*L + 72*L^3 - 54*L^2*S + 15*L*S^2 - S^3)",
                ring
            )
            .unwrap()
        );
    }

    #[test]
    fn crepancy_holds_only_for_the_right_multiplicity() {
        let state = ResolutionState::weierstrass(2);
        let centers = ["H + 2*L", "H + 3*L", "S"]
            .map(|t| parse_class(t, state.ring()).unwrap());
        for m in 0..=4u32 {
            let resolved =
                apply_blowup_with_multiplicity(&state, &centers, "E1", m).unwrap();
            assert_eq!(crepancy_check(&resolved), m == 2, "multiplicity {m}");
        }
        assert!(crepancy_check(&state), "no blowups, nothing to violate");
    }
}
