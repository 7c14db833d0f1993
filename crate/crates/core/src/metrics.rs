//! Fairness metrics as per-instance membership predicates.
//!
//! Every supported metric is a proportion: each instance lands in the
//! numerator, the denominator, or neither, and a subgroup's metric value is
//! the ratio of its accumulated numerator and denominator counts. Outcomes
//! are binary: any value other than the positive target label counts as
//! not-positive, for predictions and ground truth alike.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The four supported metric definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FairnessMetric {
    /// Proportion of instances predicted positive.
    #[default]
    DemographicParity,
    /// Proportion of predicted positives that are actually positive.
    PredictiveParity,
    /// Proportion of predicted positives that are actually negative.
    PredictiveEquality,
    /// Proportion of predicted negatives that are actually positive.
    EqualizedOpportunities,
}

impl FairnessMetric {
    pub const ALL: [FairnessMetric; 4] = [
        FairnessMetric::DemographicParity,
        FairnessMetric::PredictiveParity,
        FairnessMetric::PredictiveEquality,
        FairnessMetric::EqualizedOpportunities,
    ];

    /// The exact CLI/config token for this metric.
    pub fn token(self) -> &'static str {
        match self {
            FairnessMetric::DemographicParity => "demographic_parity",
            FairnessMetric::PredictiveParity => "predictive_parity",
            FairnessMetric::PredictiveEquality => "predictive_equality",
            FairnessMetric::EqualizedOpportunities => "equalized_opportunities",
        }
    }
}

impl fmt::Display for FairnessMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FairnessMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FairnessMetric::ALL
            .into_iter()
            .find(|m| m.token() == s)
            .ok_or_else(|| Error::UnknownMetric { token: s.to_string() })
    }
}

/// Whether one instance counts toward a metric's numerator and denominator.
///
/// For every supported metric the numerator set is a subset of the
/// denominator set, so `in_numerator` implies `in_denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceContribution {
    pub in_numerator: bool,
    pub in_denominator: bool,
}

/// Classify one instance given its predicted and actual outcome values.
pub fn classify_instance(
    metric: FairnessMetric,
    predicted: &str,
    actual: &str,
    positive_label: &str,
) -> InstanceContribution {
    classify_flags(metric, predicted == positive_label, actual == positive_label)
}

/// Classification on pre-computed positivity flags; the hot path used by the
/// mining scan.
pub fn classify_flags(
    metric: FairnessMetric,
    predicted_positive: bool,
    actual_positive: bool,
) -> InstanceContribution {
    let (in_numerator, in_denominator) = match metric {
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
    };
    InstanceContribution {
        in_numerator,
        in_denominator,
    }
}
