//! Deterministic synthetic dataset generation for oracle testing and
//! scaling runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Attribute, Dataset, Schema};
use crate::error::{Error, Result};

/// Outcome vocabulary of generated datasets.
pub const SYNTH_POSITIVE: &str = "Positive";
pub const SYNTH_NEGATIVE: &str = "Negative";

fn default_flip_rate() -> f64 {
    0.1
}

/// Recipe for a generated dataset. Attribute values are uniform over each
/// domain (`v0 .. v{cardinality-1}`); actual labels are drawn at
/// `positive_rate`, overridden by the first matching bias rule; predicted
/// labels equal the actual label flipped independently at `flip_rate`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthSpec {
    pub seed: u64,
    pub n_rows: usize,
    pub attributes: Vec<AttributeSpec>,
    pub positive_rate: f64,
    #[serde(default)]
    pub bias_rules: Vec<BiasRule>,
    #[serde(default = "default_flip_rate")]
    pub flip_rate: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub cardinality: usize,
}

/// Overrides the positive rate for rows matching every pattern item.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BiasRule {
    pub pattern: Vec<PatternItem>,
    pub positive_rate: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternItem {
    pub attribute: String,
    pub value: String,
}

impl SynthSpec {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSynthSpec(msg));
        if self.n_rows == 0 {
            return fail("n_rows must be at least 1".into());
        }
        if self.attributes.is_empty() {
            return fail("at least one attribute is required".into());
        }
        for (i, attr) in self.attributes.iter().enumerate() {
            if attr.name.is_empty() {
                return fail(format!("attribute {} has an empty name", i + 1));
            }
            if attr.cardinality < 2 {
                return fail(format!(
                    "attribute '{}' needs cardinality >= 2, got {}",
                    attr.name, attr.cardinality
                ));
            }
            if self.attributes[..i].iter().any(|a| a.name == attr.name) {
                return fail(format!("duplicate attribute name '{}'", attr.name));
            }
        }
        for rate in [self.positive_rate, self.flip_rate] {
            if !(0.0..=1.0).contains(&rate) {
                return fail(format!("rates must be in [0, 1], got {rate}"));
            }
        }
        for (r, rule) in self.bias_rules.iter().enumerate() {
            if !(0.0..=1.0).contains(&rule.positive_rate) {
                return fail(format!(
                    "bias rule {}: rates must be in [0, 1], got {}",
                    r + 1,
                    rule.positive_rate
                ));
            }
            if rule.pattern.is_empty() {
                return fail(format!("bias rule {} has an empty pattern", r + 1));
            }
            for item in &rule.pattern {
                let Some(attr) = self.attributes.iter().find(|a| a.name == item.attribute)
                else {
                    return fail(format!(
                        "bias rule {} references unknown attribute '{}'",
                        r + 1,
                        item.attribute
                    ));
                };
                if value_name_index(&item.value, attr.cardinality).is_none() {
                    return fail(format!(
                        "bias rule {} references value '{}' outside '{}' (v0..v{})",
                        r + 1,
                        item.value,
                        attr.name,
                        attr.cardinality - 1
                    ));
                }
            }
        }
        Ok(())
    }
}

fn value_name_index(value: &str, cardinality: usize) -> Option<u32> {
    let idx: usize = value.strip_prefix('v')?.parse().ok()?;
    (idx < cardinality).then_some(idx as u32)
}

/// Generate a dataset from a spec. The same spec always yields the identical
/// dataset.
pub fn synth_generate(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;

    let attributes: Vec<Attribute> = spec
        .attributes
        .iter()
        .map(|a| Attribute {
            name: a.name.clone(),
            domain: (0..a.cardinality).map(|v| format!("v{v}")).collect(),
        })
        .collect();
    let schema = Schema::new(
        attributes,
        vec![SYNTH_POSITIVE.to_string(), SYNTH_NEGATIVE.to_string()],
        SYNTH_POSITIVE.to_string(),
    )?;

    // Patterns resolved to indices up front; first matching rule wins.
    let rules: Vec<(Vec<(usize, u32)>, f64)> = spec
        .bias_rules
        .iter()
        .map(|rule| {
            let pattern = rule
                .pattern
                .iter()
                .map(|item| {
                    let a = spec
                        .attributes
                        .iter()
                        .position(|x| x.name == item.attribute)
                        .expect("validated");
                    let v = value_name_index(&item.value, spec.attributes[a].cardinality)
                        .expect("validated");
                    (a, v)
                })
                .collect();
            (pattern, rule.positive_rate)
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut columns: Vec<Vec<u32>> = vec![Vec::with_capacity(spec.n_rows); spec.attributes.len()];
    let mut predicted = Vec::with_capacity(spec.n_rows);
    let mut actual = Vec::with_capacity(spec.n_rows);
    let mut row_values = vec![0u32; spec.attributes.len()];

    for _ in 0..spec.n_rows {
        for (a, attr) in spec.attributes.iter().enumerate() {
            let v = rng.random_range(0..attr.cardinality) as u32;
            row_values[a] = v;
            columns[a].push(v);
        }
        let rate = rules
            .iter()
            .find(|(pattern, _)| pattern.iter().all(|&(a, v)| row_values[a] == v))
            .map_or(spec.positive_rate, |&(_, rate)| rate);
        let is_positive = rng.random::<f64>() < rate;
        let flip = rng.random::<f64>() < spec.flip_rate;
        let label = |positive: bool| {
            if positive { SYNTH_POSITIVE } else { SYNTH_NEGATIVE }.to_string()
        };
        actual.push(label(is_positive));
        predicted.push(label(is_positive != flip));
    }

    Dataset::new(schema, columns, predicted, actual)
}
