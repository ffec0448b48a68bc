//! Machine-readable output records and the LaTeX polynomial renderer.
//!
//! Every computing subcommand emits one [`OutputRecord`]; `verify` emits an
//! array of them. The JSON form is stable and round-trips losslessly, so
//! downstream tooling can parse, re-serialize, and diff without drift. The
//! LaTeX renderer exists purely to regenerate table-style rows for visual
//! comparison against typeset sources.

use crate::ring::GradedClass;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// Where a result came from: recomputed by the engine, or expanded from
/// bundled reference data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Fixture,
}

/// The subcommand inputs that shaped a result. Absent fields stay out of the
/// JSON so each operation only reports the knobs it actually has.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base_dim: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cy: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scope: Option<String>,
}

/// One unit of CLI output: which model, which operation, with which
/// parameters, producing which canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub model: String,
    pub operation: String,
    pub parameters: Parameters,
    pub result: String,
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// One row of the `list` subcommand in JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListEntry {
    pub model: String,
    pub group: String,
    pub algebra: String,
    pub rank: u32,
    pub kodaira: String,
    pub steps: usize,
}

/// A generator name with any trailing digits dropped into a subscript:
/// `c1` becomes `c_{1}`, plain names pass through.
fn latex_name(name: &str) -> String {
    let split = name
        .char_indices()
        .find(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i);
    match split {
        Some(i) if i > 0 && name[i..].chars().all(|c| c.is_ascii_digit()) => {
            format!("{}_{{{}}}", &name[..i], &name[i..])
        }
        _ => name.to_string(),
    }
}

/// Renders a class as a LaTeX math expression in the same canonical term
/// order as the text form: `12 L c_{1} - 72 L^{2}`.
pub fn latex_math(class: &GradedClass) -> String {
    let terms = class.terms_in_order();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (pos, (factors, coeff)) in terms.into_iter().enumerate() {
        let magnitude = coeff.abs();
        if pos == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut pieces: Vec<String> = Vec::new();
        if !magnitude.is_one() || factors.is_empty() {
            if magnitude.denom().is_one() {
                pieces.push(magnitude.numer().to_string());
            } else {
                pieces.push(format!(
                    "\\frac{{{}}}{{{}}}",
                    magnitude.numer(),
                    magnitude.denom()
                ));
            }
        }
        for (name, e) in factors {
            if e == 1 {
                pieces.push(latex_name(name));
            } else {
                pieces.push(format!("{}^{{{}}}", latex_name(name), e));
            }
        }
        out.push_str(&pieces.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_class;
    use crate::ring::RingDescriptor;

    #[test]
    fn record_round_trips_through_json() {
        let record = OutputRecord {
            model: "E6".to_string(),
            operation: "chi".to_string(),
            parameters: Parameters {
                base_dim: Some(3),
                cy: Some(true),
                ..Parameters::default()
            },
            result: "12*c1^3".to_string(),
            provenance: Provenance::Computed,
        };
        let json = record.to_json();
        assert_eq!(OutputRecord::from_json(&json).unwrap(), record);
        assert!(json.contains("\"provenance\": \"computed\""));
        assert!(!json.contains("order"), "absent parameters stay out: {json}");
    }

    #[test]
    fn latex_rendering_matches_table_style() {
        let ring = RingDescriptor::new(&[("L", 1), ("S", 1), ("c1", 1)], 3).unwrap();
        let class = parse_class("12*L*c1 - 72*L^2", &ring).unwrap();
        assert_eq!(latex_math(&class), "12 L c_{1} - 72 L^{2}");
        let half = parse_class("-1/2*S + c1", &ring).unwrap();
        assert_eq!(latex_math(&half), "c_{1} - \\frac{1}{2} S");
        let zero = parse_class("0", &ring).unwrap();
        assert_eq!(latex_math(&zero), "0");
        let unit = parse_class("S^2", &ring).unwrap();
        assert_eq!(latex_math(&unit), "S^{2}");
    }

    #[test]
    fn latex_names_subscript_trailing_digits() {
        assert_eq!(latex_name("c1"), "c_{1}");
        assert_eq!(latex_name("E10"), "E_{10}");
        assert_eq!(latex_name("K"), "K");
        assert_eq!(latex_name("4bad"), "4bad");
    }
}
