//! Shared fixtures for the criterion benchmarks.

use fairpriori::{synth_generate, AttributeSpec, BiasRule, Dataset, PatternItem, SynthSpec};

/// A seeded synthetic table of the given shape, with one biased subgroup so
/// metric counters are non-degenerate.
pub fn scaled_dataset(n_rows: usize, n_attributes: usize, cardinality: usize) -> Dataset {
    let spec = SynthSpec {
        seed: 0xBE4C,
        n_rows,
        attributes: (0..n_attributes)
            .map(|i| AttributeSpec {
                name: format!("a{i}"),
                cardinality,
            })
            .collect(),
        positive_rate: 0.5,
        bias_rules: vec![BiasRule {
            pattern: vec![PatternItem {
                attribute: "a0".into(),
                value: "v0".into(),
            }],
            positive_rate: 0.75,
        }],
        flip_rate: 0.1,
    };
    synth_generate(&spec).expect("valid spec")
}
