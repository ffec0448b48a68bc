//! Truncated graded polynomial rings with exact rational coefficients.
//!
//! A [`RingDescriptor`] fixes an ordered list of named generators, each with a
//! positive integer weight, and a truncation degree `D`. Classes are sparse
//! polynomials over `BigRational`; every operation discards terms of total
//! weight above `D`, so products never grow past the truncation. Equality of
//! classes is structural equality of the sparse term maps, which coincides
//! with mathematical equality because terms are kept in a canonical form
//! (no zero coefficients, exponents indexed by the ring's generator order).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector, one entry per ring generator. Sixteen inline slots cover
/// every ring used by the model catalog without heap allocation.
type Expo = SmallVec<[u8; 16]>;

/// Errors reported by ring constructors and class operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have weight >= 1")]
    ZeroWeightGenerator(String),
    #[error("truncation degree {0} exceeds the supported maximum of 255")]
    TruncationTooLarge(u32),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("class has a zero constant term and no inverse in the truncated ring")]
    NotAUnit,
    #[error("substitution for `{gen}` must be homogeneous of weight {expected}")]
    InhomogeneousSubstitution { gen: String, expected: u32 },
    #[error("generator `{name}` has weight {found}, expected {expected}")]
    WeightMismatch {
        name: String,
        found: u32,
        expected: u32,
    },
    #[error("no value assigned to generator `{0}`")]
    MissingAssignment(String),
}

/// A named generator together with its grading weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

/// Immutable description of a graded ring: ordered generators plus the
/// truncation degree. Shared behind an [`Arc`] so classes stay cheap to clone.
#[derive(Debug)]
pub struct RingDescriptor {
    generators: Vec<Generator>,
    truncation: u32,
    index: HashMap<String, usize>,
}

/// Shared handle to a ring description.
pub type Ring = Arc<RingDescriptor>;

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation && self.generators == other.generators
    }
}

impl Eq for RingDescriptor {}

impl RingDescriptor {
    /// Builds a ring from `(name, weight)` pairs and a truncation degree.
    /// Generator order is significant: it fixes the exponent-vector layout and
    /// the factor order in the canonical text form.
    pub fn new(generators: &[(&str, u32)], truncation: u32) -> Result<Ring, RingError> {
        if truncation > u8::MAX as u32 {
            return Err(RingError::TruncationTooLarge(truncation));
        }
        let mut gens = Vec::with_capacity(generators.len());
        let mut index = HashMap::with_capacity(generators.len());
        for (name, weight) in generators {
            if *weight == 0 {
                return Err(RingError::ZeroWeightGenerator((*name).into()));
            }
            if index.insert((*name).to_string(), gens.len()).is_some() {
                return Err(RingError::DuplicateGenerator((*name).into()));
            }
            gens.push(Generator {
                name: (*name).to_string(),
                weight: *weight,
            });
        }
        Ok(Arc::new(RingDescriptor {
            generators: gens,
            truncation,
            index,
        }))
    }

    /// Truncation degree `D`; terms of weight above `D` are identified with zero.
    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Generators in ring order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Index of a generator by name, if present.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Total weight of an exponent vector.
    fn weight_of(&self, expo: &Expo) -> u32 {
        expo.iter()
            .zip(&self.generators)
            .map(|(e, g)| u32::from(*e) * g.weight)
            .sum()
    }

    fn zero_expo(&self) -> Expo {
        SmallVec::from_elem(0, self.generators.len())
    }
}

/// Two handles describe the same ring if they are the same allocation or are
/// structurally identical.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Element of a truncated graded ring: a sparse polynomial with exact
/// rational coefficients. Immutable; all operations return new classes.
#[derive(Debug, Clone)]
pub struct GradedClass {
    ring: Ring,
    terms: HashMap<Expo, BigRational>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

impl GradedClass {
    /// The zero class.
    pub fn zero(ring: &Ring) -> Self {
        GradedClass {
            ring: Arc::clone(ring),
            terms: HashMap::new(),
        }
    }

    /// The multiplicative unit.
    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, BigRational::one())
    }

    /// A constant (weight-zero) class.
    pub fn constant(ring: &Ring, value: BigRational) -> Self {
        let mut terms = HashMap::new();
        if !value.is_zero() {
            terms.insert(ring.zero_expo(), value);
        }
        GradedClass {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// A constant class from an integer.
    pub fn from_integer(ring: &Ring, value: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(BigInt::from(value)))
    }

    /// The class of a single generator.
    pub fn generator(ring: &Ring, name: &str) -> Result<Self, RingError> {
        let idx = ring
            .find(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.into()))?;
        let mut terms = HashMap::new();
        if ring.generators()[idx].weight <= ring.truncation() {
            let mut expo = ring.zero_expo();
            expo[idx] = 1;
            terms.insert(expo, BigRational::one());
        }
        Ok(GradedClass {
            ring: Arc::clone(ring),
            terms,
        })
    }

    /// A single monomial `coeff * prod(name^exp)`.
    pub fn monomial(
        ring: &Ring,
        factors: &[(&str, u32)],
        coeff: BigRational,
    ) -> Result<Self, RingError> {
        let mut expo = ring.zero_expo();
        for (name, exp) in factors {
            let idx = ring
                .find(name)
                .ok_or_else(|| RingError::UnknownGenerator((*name).into()))?;
            let total = u32::from(expo[idx]) + exp;
            if total > u32::from(u8::MAX) {
                // weight <= 255 is enforced by the truncation cap, so any
                // exponent this large is out of the ring anyway
                return Ok(Self::zero(ring));
            }
            expo[idx] = total as u8;
        }
        let mut terms = HashMap::new();
        if !coeff.is_zero() && ring.weight_of(&expo) <= ring.truncation() {
            terms.insert(expo, coeff);
        }
        Ok(GradedClass {
            ring: Arc::clone(ring),
            terms,
        })
    }

    /// Ring this class lives in.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero monomials.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the weight-zero monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&self.ring.zero_expo())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Smallest weight carrying a nonzero term, if any.
    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.ring.weight_of(e)).min()
    }

    /// Largest weight carrying a nonzero term, if any.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.ring.weight_of(e)).max()
    }

    /// True if every nonzero term has exactly weight `w`. The zero class is
    /// homogeneous of every weight.
    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms.keys().all(|e| self.ring.weight_of(e) == w)
    }

    /// True if the named generator appears in some term. Unknown names simply
    /// do not appear.
    pub fn mentions(&self, name: &str) -> bool {
        match self.ring.find(name) {
            Some(idx) => self.terms.keys().any(|e| e[idx] != 0),
            None => false,
        }
    }

    fn insert_term(&mut self, expo: Expo, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(expo) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum of two classes. Panics if the rings differ.
    pub fn add(&self, other: &Self) -> Self {
        assert!(
            same_ring(&self.ring, &other.ring),
            "add requires both classes in the same ring"
        );
        let mut out = self.clone();
        for (expo, coeff) in &other.terms {
            out.insert_term(expo.clone(), coeff.clone());
        }
        out
    }

    /// Difference of two classes. Panics if the rings differ.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        GradedClass {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c * factor))
            .collect();
        GradedClass {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// Product of two classes, truncated at the ring degree. Panics if the
    /// rings differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            same_ring(&self.ring, &other.ring),
            "mul requires both classes in the same ring"
        );
        let limit = self.ring.truncation();
        let lhs = bucket_by_weight(self);
        let rhs = bucket_by_weight(other);
        let mut out = Self::zero(&self.ring);
        for (wa, ta) in &lhs {
            for (wb, tb) in &rhs {
                if wa + wb > limit {
                    continue;
                }
                for (ea, ca) in ta {
                    for (eb, cb) in tb {
                        let expo: Expo = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                        out.insert_term(expo, *ca * *cb);
                    }
                }
            }
        }
        out
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.ring);
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse via the geometric series: for `a = c*(1 + n)`
    /// with `c` a nonzero rational and `n` of positive weight,
    /// `1/a = (1/c) * sum_k (-n)^k`, a finite sum in the truncated ring.
    pub fn invert(&self) -> Result<Self, RingError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(RingError::NotAUnit);
        }
        let inv_c = c.recip();
        let nilpotent = self.scale(&inv_c).sub(&Self::one(&self.ring));
        let mut acc = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        for k in 1..=self.ring.truncation() {
            power = power.mul(&nilpotent);
            if power.is_zero() {
                break;
            }
            acc = if k % 2 == 1 {
                acc.sub(&power)
            } else {
                acc.add(&power)
            };
        }
        Ok(acc.scale(&inv_c))
    }

    /// The weight-`w` graded piece.
    pub fn component(&self, w: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| self.ring.weight_of(e) == w)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        GradedClass {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// Splits `a = sum_i alpha_i * g^i` by powers of the generator `g` and
    /// returns `[alpha_0, alpha_1, ...]`; each `alpha_i` is free of `g`. The
    /// list always has at least one entry and `sum_i alpha_i * g^i == a`.
    pub fn decompose_by(&self, name: &str) -> Result<Vec<Self>, RingError> {
        let idx = self
            .ring
            .find(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.into()))?;
        let top = self
            .terms
            .keys()
            .map(|e| usize::from(e[idx]))
            .max()
            .unwrap_or(0);
        let mut parts = vec![Self::zero(&self.ring); top + 1];
        for (expo, coeff) in &self.terms {
            let k = usize::from(expo[idx]);
            let mut stripped = expo.clone();
            stripped[idx] = 0;
            parts[k].insert_term(stripped, coeff.clone());
        }
        Ok(parts)
    }

    /// Replaces generator `g` by a homogeneous class of the same weight. The
    /// replacement's ring becomes the result ring; every other generator
    /// appearing in `self` must exist there with an equal weight. A class not
    /// mentioning `g` passes through unchanged (up to the ring move), so
    /// specializations are safe to apply unconditionally.
    pub fn substitute(&self, name: &str, replacement: &Self) -> Result<Self, RingError> {
        let idx = self
            .ring
            .find(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.into()))?;
        let g_weight = self.ring.generators()[idx].weight;
        if !replacement.is_homogeneous_of(g_weight) {
            return Err(RingError::InhomogeneousSubstitution {
                gen: name.into(),
                expected: g_weight,
            });
        }
        let target = replacement.ring();
        // Map every other generator of self's ring into the target by name.
        let mut mapping: Vec<Option<usize>> = Vec::with_capacity(self.ring.generators().len());
        for (i, g) in self.ring.generators().iter().enumerate() {
            if i == idx {
                mapping.push(None);
                continue;
            }
            mapping.push(match target.find(&g.name) {
                Some(j) => {
                    let found = target.generators()[j].weight;
                    if found != g.weight {
                        return Err(RingError::WeightMismatch {
                            name: g.name.clone(),
                            found,
                            expected: g.weight,
                        });
                    }
                    Some(j)
                }
                None => None,
            });
        }
        let mut powers: Vec<Self> = vec![Self::one(target)];
        let mut out = Self::zero(target);
        for (expo, coeff) in &self.terms {
            let mut base = target.zero_expo();
            for (i, e) in expo.iter().enumerate() {
                if i == idx || *e == 0 {
                    continue;
                }
                match mapping[i] {
                    Some(j) => base[j] += e,
                    None => {
                        return Err(RingError::UnknownGenerator(
                            self.ring.generators()[i].name.clone(),
                        ))
                    }
                }
            }
            let k = usize::from(expo[idx]);
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(replacement);
                powers.push(next);
            }
            let mut piece = GradedClass {
                ring: Arc::clone(target),
                terms: HashMap::new(),
            };
            if target.weight_of(&base) <= target.truncation() {
                piece.insert_term(base, coeff.clone());
            }
            out = out.add(&piece.mul(&powers[k]));
        }
        Ok(out)
    }

    /// Moves a class into another ring by matching generator names. Weights
    /// must agree; terms above the target truncation are discarded.
    pub fn into_ring(&self, target: &Ring) -> Result<Self, RingError> {
        let mut out = Self::zero(target);
        for (expo, coeff) in &self.terms {
            let mut mapped = target.zero_expo();
            for (i, e) in expo.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let g = &self.ring.generators()[i];
                let j = target
                    .find(&g.name)
                    .ok_or_else(|| RingError::UnknownGenerator(g.name.clone()))?;
                let found = target.generators()[j].weight;
                if found != g.weight {
                    return Err(RingError::WeightMismatch {
                        name: g.name.clone(),
                        found,
                        expected: g.weight,
                    });
                }
                mapped[j] = *e;
            }
            if target.weight_of(&mapped) <= target.truncation() {
                out.insert_term(mapped, coeff.clone());
            }
        }
        Ok(out)
    }

    /// Evaluates the class at a rational point. Every generator that actually
    /// occurs must have an assigned value.
    pub fn eval(&self, values: &HashMap<String, BigRational>) -> Result<BigRational, RingError> {
        let gens = self.ring.generators();
        let mut total = BigRational::zero();
        for (expo, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, e) in expo.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let v = values
                    .get(&gens[i].name)
                    .ok_or_else(|| RingError::MissingAssignment(gens[i].name.clone()))?;
                for _ in 0..*e {
                    term *= v;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Terms in canonical order, each as a list of (generator name, exponent)
    /// factors in ring order plus the coefficient. The constant term carries
    /// an empty factor list. This is the hook for alternative renderers.
    pub fn terms_in_order(&self) -> Vec<(Vec<(&str, u32)>, &BigRational)> {
        self.sorted_terms()
            .into_iter()
            .map(|(expo, coeff)| {
                let factors = expo
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| (self.ring.generators()[i].name.as_str(), u32::from(*e)))
                    .collect();
                (factors, coeff)
            })
            .collect()
    }

    /// Terms sorted by (total weight, exponent vector), the canonical order
    /// used by the text form.
    fn sorted_terms(&self) -> Vec<(&Expo, &BigRational)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(ea, _), (eb, _)| {
            self.ring
                .weight_of(ea)
                .cmp(&self.ring.weight_of(eb))
                .then_with(|| ea.cmp(eb))
        });
        items
    }
}

/// Groups the terms of a class by total weight so products can skip pairs
/// that overflow the truncation wholesale.
fn bucket_by_weight(c: &GradedClass) -> Vec<(u32, Vec<(&Expo, &BigRational)>)> {
    let mut by_w: HashMap<u32, Vec<(&Expo, &BigRational)>> = HashMap::new();
    for (e, q) in &c.terms {
        by_w.entry(c.ring.weight_of(e)).or_default().push((e, q));
    }
    by_w.into_iter().collect()
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GradedClass {
    /// Canonical text form: terms sorted by (weight, exponent vector), each
    /// rendered as `coeff*gen1^e1*...` with unit coefficients and unit
    /// exponents omitted, joined by ` + ` / ` - `. The zero class prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (expo, coeff)) in self.sorted_terms().into_iter().enumerate() {
            let magnitude = coeff.abs();
            if pos == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let constant = expo.iter().all(|e| *e == 0);
            if !magnitude.is_one() || constant {
                write_rational(f, &magnitude)?;
            }
            let mut first_factor = !magnitude.is_one() || constant;
            for (i, e) in expo.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if first_factor {
                    write!(f, "*")?;
                }
                first_factor = true;
                write!(f, "{}", self.ring.generators()[i].name)?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

/// Convenience constructor for integer rationals.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
