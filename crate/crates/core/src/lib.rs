//! Biased subgroup discovery over categorical datasets.
//!
//! Fuses fairness-metric computation into level-wise frequent-itemset
//! mining: one scan per level accumulates, for every candidate subgroup, its
//! row count together with the numerator and denominator of the chosen
//! fairness metric. The audit reports every sufficiently large subgroup with
//! its metric value and its deviation from the whole-dataset baseline.
//!
//! ```
//! use fairpriori::{fairpriori, load_csv, AuditConfig, FairnessMetric};
//!
//! # fn run() -> fairpriori::Result<()> {
//! let categories = vec!["Positive".to_string(), "Negative".to_string()];
//! let dataset = load_csv("people.csv", "Predicted", "Actual", &categories, "Positive")?;
//! let config = AuditConfig {
//!     metric: FairnessMetric::PredictiveParity,
//!     ..AuditConfig::default()
//! };
//! let report = fairpriori(&dataset, &config)?;
//! print!("{}", fairpriori::render(&report, fairpriori::OutputFormat::Table));
//! # Ok(())
//! # }
//! ```

pub mod dataset;
pub mod engine;
pub mod error;
pub mod metrics;
pub mod oracle;
pub mod report;
pub mod sweep;
pub mod synth;

pub use dataset::{encode_missing, load_csv, Attribute, Dataset, Schema};
pub use engine::{
    baseline_stats, count_and_score, fairpriori, generate_candidates, mine_level_1, row_matches,
    AuditConfig, FrequentLevel, Item, Itemset, SubgroupStats,
};
pub use error::{Error, Result};
pub use metrics::{classify_instance, FairnessMetric, InstanceContribution};
pub use oracle::naive_oracle;
pub use report::{order_rows, render, DatasetSummary, OutputFormat, Report, ReportRow};
pub use sweep::{run_sweep, EngineKind, SweepCell, SweepResult};
pub use synth::{synth_generate, AttributeSpec, BiasRule, PatternItem, SynthSpec};
