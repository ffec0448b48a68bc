//! The catalog of G-models and the Euler-characteristic pipeline.
//!
//! A model is a Weierstrass hypersurface together with an ordered list of
//! blowup centers resolving its singularities. [`euler_class`] runs the whole
//! computation: build the resolution states, form `[Y] c(TX) / (1 + [Y])`,
//! push down through every blowup in reverse order, push along the ambient
//! bundle, and apply the model's `S` specialization if it has one. The result
//! is a class over the base whose weight-`d` piece is the Euler
//! characteristic of the resolved elliptic fibration over a `d`-dimensional
//! base.
//!
//! Every model also carries transcribed reference data: a rational
//! generating function in `L` and `S` plus closed-form Euler characteristics
//! and Hodge numbers at low dimension. [`verify_reference`] recomputes each
//! row from scratch and reports mismatches as entries instead of errors, so
//! a transcription slip shows up as a named failed check.

use crate::chern::{apply_blowup, base_chern, resolved_chern, ChernError, ResolutionState};
use crate::fixtures::{FixtureError, FixtureSet, TableId};
use crate::hodge;
use crate::parse::{parse_class, ParseError};
use crate::pushforward::projective_bundle_pushforward;
use crate::ring::{rat, GradedClass, Ring, RingDescriptor, RingError};
use rayon::prelude::*;

/// Keys of the cataloged models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKey {
    SmoothWeierstrass,
    SU2,
    SU3,
    USp4,
    G2,
    SU4,
    Spin7,
    Spin8,
    F4,
    SU5,
    Spin10,
    E6,
    E7,
    E8,
    SO3,
    SO5,
    SO6,
}

impl ModelKey {
    pub const ALL: [ModelKey; 17] = [
        ModelKey::SmoothWeierstrass,
        ModelKey::SU2,
        ModelKey::SU3,
        ModelKey::USp4,
        ModelKey::G2,
        ModelKey::SU4,
        ModelKey::Spin7,
        ModelKey::Spin8,
        ModelKey::F4,
        ModelKey::SU5,
        ModelKey::Spin10,
        ModelKey::E6,
        ModelKey::E7,
        ModelKey::E8,
        ModelKey::SO3,
        ModelKey::SO5,
        ModelKey::SO6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKey::SmoothWeierstrass => "SmoothWeierstrass",
            ModelKey::SU2 => "SU2",
            ModelKey::SU3 => "SU3",
            ModelKey::USp4 => "USp4",
            ModelKey::G2 => "G2",
            ModelKey::SU4 => "SU4",
            ModelKey::Spin7 => "Spin7",
            ModelKey::Spin8 => "Spin8",
            ModelKey::F4 => "F4",
            ModelKey::SU5 => "SU5",
            ModelKey::Spin10 => "Spin10",
            ModelKey::E6 => "E6",
            ModelKey::E7 => "E7",
            ModelKey::E8 => "E8",
            ModelKey::SO3 => "SO3",
            ModelKey::SO5 => "SO5",
            ModelKey::SO6 => "SO6",
        }
    }

    /// Case-insensitive key lookup.
    pub fn parse(text: &str) -> Option<ModelKey> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(text))
    }
}

impl std::fmt::Display for ModelKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

/// A reference generating function `numerator / denominator` in `L` and `S`.
/// The texts stay in their transcribed shape; [`RationalExpr::expand`] turns
/// them into a truncated series (times the base Chern class if requested).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalExpr {
    pub numerator: String,
    pub denominator: String,
}

impl RationalExpr {
    /// Numerator and denominator as classes, scaled so the denominator has
    /// constant term exactly 1.
    pub fn normalized(&self, ring: &Ring) -> Result<(GradedClass, GradedClass), ModelError> {
        let num = parse_class(&self.numerator, ring)?;
        let den = parse_class(&self.denominator, ring)?;
        let c = den.constant_term();
        if num_traits::Zero::is_zero(&c) {
            return Err(ModelError::Ring(RingError::NotAUnit));
        }
        let inv_c = c.recip();
        Ok((num.scale(&inv_c), den.scale(&inv_c)))
    }

    /// The series `numerator / denominator` in the given ring.
    pub fn expand(&self, ring: &Ring) -> Result<GradedClass, ModelError> {
        let (num, den) = self.normalized(ring)?;
        Ok(num.mul(&den.invert()?))
    }
}

/// One transcribed closed-form Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReference {
    pub table: TableId,
    pub base_dim: u32,
    pub cy: bool,
    pub text: String,
}

/// Transcribed Hodge data of the Calabi-Yau threefold, in `K` and `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeReference {
    pub h11: String,
    pub h21: String,
    pub chi: String,
}

/// A cataloged model: group data, blowup recipe, and reference rows.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub key: ModelKey,
    pub group: &'static str,
    pub algebra: &'static str,
    /// Rank of the Lie algebra.
    pub rank: u32,
    /// Number of fibral divisors entering `h^{1,1}`. Equal to the rank for
    /// every model except SO(5), whose resolution carries one extra.
    pub fibral_divisors: u32,
    /// Kodaira fiber types realizing the model.
    pub kodaira: &'static str,
    /// Center classes of each blowup, in order, as polynomial text.
    pub steps: &'static [&'static [&'static str]],
    /// `S -> k L` rewrite applied after the pushforwards, if any.
    pub s_specialization: Option<i64>,
    pub reference_genfun: Option<RationalExpr>,
    pub reference_chi: Vec<ChiReference>,
    pub reference_hodge: Option<HodgeReference>,
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("base dimension must be at least 1, got {0}")]
    BadDimension(u32),
    #[error("model {model} has no stored {table} reference")]
    MissingReference { model: ModelKey, table: String },
    #[error("fixture row for unknown model `{0}`")]
    UnknownFixtureModel(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("bad polynomial text: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Chern(#[from] ChernError),
}

struct RawModel {
    key: ModelKey,
    group: &'static str,
    algebra: &'static str,
    rank: u32,
    fibral_divisors: u32,
    kodaira: &'static str,
    steps: &'static [&'static [&'static str]],
    s_specialization: Option<i64>,
}

const STEP_XYS: &[&str] = &["H + 2*L", "H + 3*L", "S"];
const STEPS_SU2: &[&[&str]] = &[STEP_XYS];
const STEPS_SU3: &[&[&str]] = &[STEP_XYS, &["H + 3*L - E1", "E1"]];
const STEPS_SU4: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
];
const STEPS_SPIN8: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
    &["H + 2*L - E1", "E2 - E3"],
];
const STEPS_F4: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
    &["E2 - E3", "E3"],
];
const STEPS_SU5: &[&[&str]] = &[
    STEP_XYS,
    &["H + 2*L - E1", "H + 3*L - E1", "E1"],
    &["H + 3*L - E1 - E2", "E1 - E2"],
    &["H + 3*L - E1 - E2 - E3", "E2"],
];
const STEPS_SPIN10: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
    &["H + 3*L - E1 - E2", "E3"],
    &["E2 - E3", "E3 - E4"],
];
const STEPS_E6: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
    &["E2 - E3", "E3"],
    &["H + 3*L - E1 - E2", "E3 - E4"],
    &["H + 3*L - E1 - E2 - E5", "E4"],
];
const STEPS_E7: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
    &["H + 3*L - E1 - E2", "E3"],
    &["E2 - E3", "E3 - E4"],
    &["E2 - E3 - E5", "E4"],
    &["E4 - E6", "E5"],
];
const STEPS_E8: &[&[&str]] = &[
    STEP_XYS,
    &["H + 3*L - E1", "E1"],
    &["H + 2*L - E1", "E2"],
    &["H + 3*L - E1 - E2", "E3"],
    &["E2 - E3", "E3 - E4"],
    &["E4", "E5"],
    &["E2 - E3 - E5", "E4 - E6", "E6"],
    &["E4 - E6 - E7", "E7"],
];
const STEPS_SO3: &[&[&str]] = &[&["H + 2*L", "H + 3*L"]];
const STEPS_SO5: &[&[&str]] = &[
    &["H + 2*L", "H + 3*L", "2*L"],
    &["H + 2*L - E1", "H + 3*L - E1", "E1"],
];

const RAW_MODELS: [RawModel; 17] = [
    RawModel {
        key: ModelKey::SmoothWeierstrass,
        group: "-",
        algebra: "-",
        rank: 0,
        fibral_divisors: 0,
        kodaira: "-",
        steps: &[],
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SU2,
        group: "SU(2)",
        algebra: "A1",
        rank: 1,
        fibral_divisors: 1,
        kodaira: "I2s, I2ns, I3ns, III, IVns",
        steps: STEPS_SU2,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SU3,
        group: "SU(3)",
        algebra: "A2",
        rank: 2,
        fibral_divisors: 2,
        kodaira: "I3s, IVs",
        steps: STEPS_SU3,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::USp4,
        group: "USp(4)",
        algebra: "C2",
        rank: 2,
        fibral_divisors: 2,
        kodaira: "I4ns",
        steps: STEPS_SU3,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::G2,
        group: "G2",
        algebra: "G2",
        rank: 2,
        fibral_divisors: 2,
        kodaira: "I0*ns",
        steps: STEPS_SU3,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SU4,
        group: "SU(4)",
        algebra: "A3",
        rank: 3,
        fibral_divisors: 3,
        kodaira: "I4s",
        steps: STEPS_SU4,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::Spin7,
        group: "Spin(7)",
        algebra: "B3",
        rank: 3,
        fibral_divisors: 3,
        kodaira: "I0*ss",
        steps: STEPS_SU4,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::Spin8,
        group: "Spin(8)",
        algebra: "D4",
        rank: 4,
        fibral_divisors: 4,
        kodaira: "I0*s",
        steps: STEPS_SPIN8,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::F4,
        group: "F4",
        algebra: "F4",
        rank: 4,
        fibral_divisors: 4,
        kodaira: "IV*ns",
        steps: STEPS_F4,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SU5,
        group: "SU(5)",
        algebra: "A4",
        rank: 4,
        fibral_divisors: 4,
        kodaira: "I5s",
        steps: STEPS_SU5,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::Spin10,
        group: "Spin(10)",
        algebra: "D5",
        rank: 5,
        fibral_divisors: 5,
        kodaira: "I1*s",
        steps: STEPS_SPIN10,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::E6,
        group: "E6",
        algebra: "E6",
        rank: 6,
        fibral_divisors: 6,
        kodaira: "IV*s",
        steps: STEPS_E6,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::E7,
        group: "E7",
        algebra: "E7",
        rank: 7,
        fibral_divisors: 7,
        kodaira: "III*",
        steps: STEPS_E7,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::E8,
        group: "E8",
        algebra: "E8",
        rank: 8,
        fibral_divisors: 8,
        kodaira: "II*",
        steps: STEPS_E8,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SO3,
        group: "SO(3)",
        algebra: "A1",
        rank: 1,
        fibral_divisors: 1,
        kodaira: "I2ns",
        steps: STEPS_SO3,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SO5,
        group: "SO(5)",
        algebra: "B2",
        rank: 2,
        fibral_divisors: 3,
        kodaira: "I4ns",
        steps: STEPS_SO5,
        s_specialization: None,
    },
    RawModel {
        key: ModelKey::SO6,
        group: "SO(6)",
        algebra: "A3",
        rank: 3,
        fibral_divisors: 3,
        kodaira: "I4s",
        steps: STEPS_SU4,
        s_specialization: Some(2),
    },
];

/// Builds the catalog from an explicit fixture collection.
pub fn catalog_with(fixtures: &FixtureSet) -> Result<Vec<ModelSpec>, ModelError> {
    for record in fixtures.records() {
        if ModelKey::parse(&record.model).is_none() {
            return Err(ModelError::UnknownFixtureModel(record.model.clone()));
        }
    }
    let mut out = Vec::with_capacity(RAW_MODELS.len());
    for raw in &RAW_MODELS {
        let key = raw.key.as_str();
        let reference_genfun = fixtures.lookup(key, TableId::Table11).map(|r| RationalExpr {
            numerator: r.exprs[0].clone(),
            denominator: r.exprs[1].clone(),
        });
        let mut reference_chi = Vec::new();
        for table in [TableId::Table12, TableId::Table13, TableId::Table14] {
            if let Some(r) = fixtures.lookup(key, table) {
                reference_chi.push(ChiReference {
                    table,
                    base_dim: r.base_dim,
                    cy: r.cy,
                    text: r.exprs[0].clone(),
                });
            }
        }
        let reference_hodge = match (
            fixtures.lookup(key, TableId::Table15H11),
            fixtures.lookup(key, TableId::Table15H21),
            fixtures.lookup(key, TableId::Table15Chi),
        ) {
            (Some(h11), Some(h21), Some(chi)) => Some(HodgeReference {
                h11: h11.exprs[0].clone(),
                h21: h21.exprs[0].clone(),
                chi: chi.exprs[0].clone(),
            }),
            _ => None,
        };
        out.push(ModelSpec {
            key: raw.key,
            group: raw.group,
            algebra: raw.algebra,
            rank: raw.rank,
            fibral_divisors: raw.fibral_divisors,
            kodaira: raw.kodaira,
            steps: raw.steps,
            s_specialization: raw.s_specialization,
            reference_genfun,
            reference_chi,
            reference_hodge,
        });
    }
    Ok(out)
}

/// Builds the catalog with the default fixtures (embedded data, or the
/// directory named by the fixture environment variable).
pub fn catalog() -> Result<Vec<ModelSpec>, ModelError> {
    catalog_with(&FixtureSet::load()?)
}

/// Finds a model in a catalog by key. The catalog always carries every key.
pub fn find(catalog: &[ModelSpec], key: ModelKey) -> &ModelSpec {
    catalog
        .iter()
        .find(|m| m.key == key)
        .expect("catalog contains every model key")
}

/// The ring classes over the base live in: `L`, `S` and the base Chern
/// classes, truncated at the base dimension.
pub fn base_ring(base_dim: u32) -> Ring {
    let mut gens: Vec<(String, u32)> = vec![("L".to_string(), 1), ("S".to_string(), 1)];
    for i in 1..=base_dim {
        gens.push((format!("c{i}"), i));
    }
    let refs: Vec<(&str, u32)> = gens.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    RingDescriptor::new(&refs, base_dim).expect("fixed generator list is valid")
}

/// Runs the model's blowup sequence over a base of the given dimension.
pub fn resolution(spec: &ModelSpec, base_dim: u32) -> Result<ResolutionState, ModelError> {
    if base_dim == 0 {
        return Err(ModelError::BadDimension(base_dim));
    }
    let mut state = ResolutionState::weierstrass(base_dim);
    for (i, step) in spec.steps.iter().enumerate() {
        let centers: Vec<GradedClass> = step
            .iter()
            .map(|text| parse_class(text, state.ring()))
            .collect::<Result<_, _>>()?;
        state = apply_blowup(&state, &centers, &format!("E{}", i + 1))?;
    }
    Ok(state)
}

/// Euler-characteristic class of the resolved model over a base of the given
/// dimension: every pushforward applied, the `S` specialization applied if
/// the model has one, expressed in the base ring. The weight-`d` component
/// is the Euler characteristic over a `d`-dimensional base; lower components
/// reproduce the lower-dimensional answers.
pub fn euler_class(spec: &ModelSpec, base_dim: u32) -> Result<GradedClass, ModelError> {
    let state = resolution(spec, base_dim)?;
    let integrand = resolved_chern(&state);
    let on_x0 = state.push_to_x0(&integrand);
    let mut pushed = projective_bundle_pushforward(&on_x0, "H", "L");
    if let Some(k) = spec.s_specialization {
        let l = GradedClass::generator(pushed.ring(), "L")?;
        pushed = pushed.substitute("S", &l.scale(&rat(k)))?;
    }
    Ok(pushed.into_ring(&base_ring(base_dim))?)
}

fn polynomial_from(euler: &GradedClass, base_dim: u32, cy: bool) -> Result<GradedClass, ModelError> {
    let class = if cy {
        let c1 = GradedClass::generator(euler.ring(), "c1")?;
        euler.substitute("L", &c1)?
    } else {
        euler.clone()
    };
    Ok(class.component(base_dim))
}

/// The Euler characteristic over a `base_dim`-dimensional base as a closed
/// polynomial. With `cy` set, `L` is first rewritten as `c1`, the Calabi-Yau
/// condition on the fibration.
pub fn euler_polynomial(
    spec: &ModelSpec,
    base_dim: u32,
    cy: bool,
) -> Result<GradedClass, ModelError> {
    polynomial_from(&euler_class(spec, base_dim)?, base_dim, cy)
}

/// Expands the stored generating function times the base Chern class
/// through the given weight.
pub fn expand_reference(spec: &ModelSpec, order: u32) -> Result<GradedClass, ModelError> {
    if order == 0 {
        return Err(ModelError::BadDimension(order));
    }
    let genfun = spec
        .reference_genfun
        .as_ref()
        .ok_or_else(|| ModelError::MissingReference {
            model: spec.key,
            table: TableId::Table11.to_string(),
        })?;
    let ring = base_ring(order);
    Ok(genfun.expand(&ring)?.mul(&base_chern(&ring, order)))
}

/// What [`verify_reference`] should recompute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyScope {
    /// Every table plus the coincidence checks, series order 5.
    All,
    /// Generating-function series agreement through the given weight.
    Table11 { order: u32 },
    Table12,
    Table13,
    Table14,
    Table15,
    /// Models sharing a blowup recipe produce identical classes.
    Coincidences,
}

/// Outcome of one recomputed reference row.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub model: ModelKey,
    pub subject: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

impl VerifyCheck {
    fn compare(model: ModelKey, subject: String, expected: &GradedClass, actual: &GradedClass) -> Self {
        VerifyCheck {
            model,
            subject,
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn missing(model: ModelKey, subject: String) -> Self {
        VerifyCheck {
            model,
            subject,
            pass: false,
            expected: "<missing reference row>".to_string(),
            actual: String::new(),
        }
    }
}

/// Report of one verification run, in catalog order.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Recipe-sharing model pairs whose outputs must coincide exactly.
pub const COINCIDENT_PAIRS: [(ModelKey, ModelKey); 4] = [
    (ModelKey::SU3, ModelKey::USp4),
    (ModelKey::USp4, ModelKey::G2),
    (ModelKey::SU4, ModelKey::Spin7),
    (ModelKey::Spin8, ModelKey::F4),
];

fn chi_table_checks(
    spec: &ModelSpec,
    euler: &GradedClass,
    table: TableId,
    base_dim: u32,
    cy: bool,
) -> Result<Vec<VerifyCheck>, ModelError> {
    let reference = spec.reference_chi.iter().find(|r| r.table == table);
    let Some(reference) = reference else {
        return Ok(vec![VerifyCheck::missing(spec.key, table.to_string())]);
    };
    let expected = parse_class(&reference.text, &base_ring(base_dim))?;
    let actual = polynomial_from(euler, base_dim, cy)?;
    Ok(vec![VerifyCheck::compare(
        spec.key,
        table.to_string(),
        &expected,
        &actual,
    )])
}

fn hodge_checks(spec: &ModelSpec) -> Result<Vec<VerifyCheck>, ModelError> {
    let Some(reference) = spec.reference_hodge.as_ref() else {
        return Ok(vec![VerifyCheck::missing(spec.key, "Table15".to_string())]);
    };
    let ring = hodge::hodge_ring();
    let pair = hodge::hodge_cy3(spec)?;
    let rows = [
        (TableId::Table15H11, &reference.h11, &pair.h11),
        (TableId::Table15H21, &reference.h21, &pair.h21),
        (TableId::Table15Chi, &reference.chi, &pair.chi),
    ];
    let mut checks = Vec::with_capacity(rows.len());
    for (table, text, actual) in rows {
        let expected = parse_class(text, &ring)?;
        checks.push(VerifyCheck::compare(
            spec.key,
            table.to_string(),
            &expected,
            actual,
        ));
    }
    Ok(checks)
}

fn series_checks(spec: &ModelSpec, order: u32) -> Result<Vec<VerifyCheck>, ModelError> {
    if spec.reference_genfun.is_none() {
        return Ok(vec![VerifyCheck::missing(
            spec.key,
            TableId::Table11.to_string(),
        )]);
    }
    let reference = expand_reference(spec, order)?;
    let computed = euler_class(spec, order)?;
    let mut checks = Vec::with_capacity(order as usize);
    for w in 1..=order {
        checks.push(VerifyCheck::compare(
            spec.key,
            format!("{} weight {w}", TableId::Table11),
            &reference.component(w),
            &computed.component(w),
        ));
    }
    Ok(checks)
}

fn model_checks(spec: &ModelSpec, scope: VerifyScope) -> Result<Vec<VerifyCheck>, ModelError> {
    match scope {
        VerifyScope::Table11 { order } => series_checks(spec, order),
        VerifyScope::Table12 => {
            chi_table_checks(spec, &euler_class(spec, 2)?, TableId::Table12, 2, false)
        }
        VerifyScope::Table13 => {
            chi_table_checks(spec, &euler_class(spec, 3)?, TableId::Table13, 3, false)
        }
        VerifyScope::Table14 => {
            chi_table_checks(spec, &euler_class(spec, 3)?, TableId::Table14, 3, true)
        }
        VerifyScope::Table15 => hodge_checks(spec),
        VerifyScope::All => {
            let mut checks = series_checks(spec, 5)?;
            let e3 = euler_class(spec, 3)?;
            checks.extend(chi_table_checks(
                spec,
                &euler_class(spec, 2)?,
                TableId::Table12,
                2,
                false,
            )?);
            checks.extend(chi_table_checks(spec, &e3, TableId::Table13, 3, false)?);
            checks.extend(chi_table_checks(spec, &e3, TableId::Table14, 3, true)?);
            checks.extend(hodge_checks(spec)?);
            Ok(checks)
        }
        VerifyScope::Coincidences => Ok(Vec::new()),
    }
}

fn coincidence_checks(catalog: &[ModelSpec]) -> Result<Vec<VerifyCheck>, ModelError> {
    let mut checks = Vec::new();
    for (a, b) in COINCIDENT_PAIRS {
        let left = euler_class(find(catalog, a), 3)?;
        let right = euler_class(find(catalog, b), 3)?;
        checks.push(VerifyCheck {
            model: a,
            subject: format!("coincidence {a} = {b}"),
            pass: left == right,
            expected: left.to_string(),
            actual: right.to_string(),
        });
    }
    Ok(checks)
}

/// Recomputes every reference row in the scope and reports each comparison.
/// Mismatches become failed checks, not errors; errors are reserved for a
/// broken catalog or unparsable fixture data.
pub fn verify_reference(
    catalog: &[ModelSpec],
    scope: VerifyScope,
) -> Result<VerifyReport, ModelError> {
    let per_model: Vec<Vec<VerifyCheck>> = catalog
        .par_iter()
        .map(|spec| model_checks(spec, scope))
        .collect::<Result<_, _>>()?;
    let mut checks: Vec<VerifyCheck> = per_model.into_iter().flatten().collect();
    if matches!(scope, VerifyScope::All | VerifyScope::Coincidences) {
        checks.extend(coincidence_checks(catalog)?);
    }
    Ok(VerifyReport { checks })
}
