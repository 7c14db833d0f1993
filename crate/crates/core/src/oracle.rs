//! Brute-force subgroup enumeration, the ground truth the fused engine is
//! checked against.
//!
//! Every itemset up to `max_length` is enumerated by direct combination and
//! scored with its own full pass over the rows, the separate-computation
//! strategy the fused engine exists to avoid. The scan, the support test,
//! and the metric classification are all written out independently here
//! rather than shared with the engine, so a transcription error on either
//! side shows up as a disagreement.

use itertools::Itertools;

use crate::dataset::Dataset;
use crate::engine::{AuditConfig, Item, Itemset, SubgroupStats};
use crate::error::{Error, Result};
use crate::metrics::FairnessMetric;
use crate::report::{DatasetSummary, Report, ReportRow};

/// Refuse grids that would enumerate more candidate itemsets than this.
pub const ENUMERATION_CAP: u64 = 10_000_000;

/// Independent transcription of the metric membership table.
fn contribution(
    metric: FairnessMetric,
    predicted_positive: bool,
    actual_positive: bool,
) -> (bool, bool) {
    match metric {
        FairnessMetric::DemographicParity => (predicted_positive, true),
        FairnessMetric::PredictiveParity => {
            (predicted_positive && actual_positive, predicted_positive)
        }
        FairnessMetric::PredictiveEquality => {
            (predicted_positive && !actual_positive, predicted_positive)
        }
        FairnessMetric::EqualizedOpportunities => {
            (!predicted_positive && actual_positive, !predicted_positive)
        }
    }
}

fn scan(dataset: &Dataset, items: &[Item], metric: FairnessMetric) -> SubgroupStats {
    let mut stats = SubgroupStats::default();
    for row in 0..dataset.n_rows() {
        if !items
            .iter()
            .all(|item| dataset.value_index(item.attribute as usize, row) == item.value)
        {
            continue;
        }
        stats.count += 1;
        let (num, den) = contribution(
            metric,
            dataset.predicted_positive(row),
            dataset.actual_positive(row),
        );
        if den {
            stats.denominator += 1;
            if num {
                stats.numerator += 1;
            }
        }
    }
    stats
}

/// Enumerate and score every itemset up to `config.max_length`, filter by
/// support, and assemble the same report shape as the fused engine.
pub fn naive_oracle(dataset: &Dataset, config: &AuditConfig) -> Result<Report> {
    let schema = dataset.schema();
    config.validate(schema)?;
    let n_rows = dataset.n_rows();

    let active: Vec<usize> = (0..schema.attributes.len())
        .filter(|&a| !config.ignored_attributes.contains(&schema.attributes[a].name))
        .collect();
    let max_len = config.max_length.min(active.len());

    let mut total: u128 = 0;
    for k in 1..=max_len {
        for combo in active.iter().combinations(k) {
            total += combo
                .iter()
                .map(|&&a| schema.attributes[a].domain.len() as u128)
                .product::<u128>();
        }
    }
    if total > u128::from(ENUMERATION_CAP) {
        return Err(Error::EnumerationCap {
            candidates: total.try_into().unwrap_or(u64::MAX),
            cap: ENUMERATION_CAP,
        });
    }

    let baseline = scan(dataset, &[], config.metric);
    let baseline_metric = baseline.metric();
    let mut rows = vec![ReportRow::baseline(&baseline, n_rows)];

    for k in 1..=max_len {
        for combo in active.iter().combinations(k) {
            let domains = combo
                .iter()
                .map(|&&a| 0..schema.attributes[a].domain.len() as u32);
            for values in domains.multi_cartesian_product() {
                let items: Vec<Item> = combo
                    .iter()
                    .zip(&values)
                    .map(|(&&attribute, &value)| Item {
                        attribute: attribute as u32,
                        value,
                    })
                    .collect();
                let stats = scan(dataset, &items, config.metric);
                if stats.count as f64 / n_rows as f64 >= config.min_support {
                    let itemset = Itemset::new(items).expect("distinct attributes");
                    rows.push(ReportRow::subgroup(
                        &itemset,
                        &stats,
                        schema,
                        n_rows,
                        baseline_metric,
                    ));
                }
            }
        }
    }

    let summary = DatasetSummary {
        n_rows,
        attribute_names: schema.attributes.iter().map(|a| a.name.clone()).collect(),
        min_support: config.min_support,
        max_length: config.max_length,
        metric: config.metric,
        ignored_attributes: config.ignored_attributes.iter().cloned().collect(),
    };
    Ok(Report::new(schema.clone(), summary, rows))
}
