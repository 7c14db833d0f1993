//! The fused mining core: level-wise Apriori candidate generation with
//! fairness-metric accumulation folded into the same scan that counts
//! support.
//!
//! Each level makes exactly one pass over the rows. For every candidate
//! itemset the scan accumulates three integer counters at once: C (rows
//! matching the itemset), N and D (the rows among them that land in the
//! metric's numerator and denominator). Candidates below the support
//! threshold are dropped after the scan; survivors carry their metric value
//! M = N/D forward, so no per-subgroup re-scan is ever needed.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};

use crate::dataset::{Dataset, Schema};
use crate::error::{Error, Result};
use crate::metrics::{classify_flags, FairnessMetric};
use crate::report::{DatasetSummary, Report, ReportRow};

/// One (attribute, value) pair, both as 0-based indices into the bound
/// dataset's schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item {
    pub attribute: u32,
    pub value: u32,
}

/// A canonical itemset: items sorted ascending by (attribute, value), at
/// most one item per attribute. Defines the subgroup of rows matching every
/// item.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Itemset(Vec<Item>);

impl Itemset {
    /// Canonicalize a list of items. Fails if two items name the same
    /// attribute.
    pub fn new(mut items: Vec<Item>) -> Result<Self> {
        items.sort_unstable();
        for pair in items.windows(2) {
            if pair[0].attribute == pair[1].attribute {
                return Err(Error::InvalidConfig(format!(
                    "itemset repeats attribute index {}",
                    pair[0].attribute
                )));
            }
        }
        Ok(Itemset(items))
    }

    /// Items already canonical by construction.
    pub(crate) fn from_sorted(items: Vec<Item>) -> Self {
        debug_assert!(items
            .windows(2)
            .all(|p| p[0] < p[1] && p[0].attribute != p[1].attribute));
        Itemset(items)
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Render as `(attr=value, attr=value)` using the schema's names.
    pub fn label(&self, schema: &Schema) -> String {
        let mut out = String::from("(");
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let attr = &schema.attributes[item.attribute as usize];
            out.push_str(&attr.name);
            out.push('=');
            out.push_str(&attr.domain[item.value as usize]);
        }
        out.push(')');
        out
    }
}

impl Borrow<[Item]> for Itemset {
    fn borrow(&self) -> &[Item] {
        &self.0
    }
}

/// Exact integer counters for one subgroup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SubgroupStats {
    /// Rows matching the itemset.
    pub count: u64,
    /// Matching rows in the metric's numerator set.
    pub numerator: u64,
    /// Matching rows in the metric's denominator set.
    pub denominator: u64,
}

impl SubgroupStats {
    /// Metric value N/D; undefined when the denominator is empty.
    pub fn metric(&self) -> Option<f64> {
        (self.denominator > 0).then(|| self.numerator as f64 / self.denominator as f64)
    }

    pub fn support(&self, n_rows: usize) -> f64 {
        self.count as f64 / n_rows as f64
    }
}

/// All frequent itemsets of one size, with their counters.
#[derive(Debug, Clone)]
pub struct FrequentLevel {
    pub k: usize,
    pub entries: BTreeMap<Itemset, SubgroupStats>,
}

/// Audit parameters. Defaults: majority subgroups only (support >= 0.5),
/// pairs at most, demographic parity, nothing ignored.
#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub min_support: f64,
    pub max_length: usize,
    pub metric: FairnessMetric,
    pub ignored_attributes: BTreeSet<String>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            min_support: 0.5,
            max_length: 2,
            metric: FairnessMetric::default(),
            ignored_attributes: BTreeSet::new(),
        }
    }
}

impl AuditConfig {
    pub fn validate(&self, schema: &Schema) -> Result<()> {
        if !(self.min_support > 0.0 && self.min_support <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "min_support must be in (0, 1], got {}",
                self.min_support
            )));
        }
        if self.max_length < 1 {
            return Err(Error::InvalidConfig("max_length must be at least 1".into()));
        }
        for name in &self.ignored_attributes {
            if schema.attribute_index(name).is_none() {
                return Err(Error::UnknownIgnoredAttribute { name: name.clone() });
            }
        }
        Ok(())
    }
}

/// Inclusive support threshold, evaluated on the support fraction itself.
/// The brute-force oracle evaluates the same expression, so threshold
/// boundaries agree bit-for-bit between the two engines.
#[inline]
fn is_frequent(count: u64, n_rows: usize, min_support: f64) -> bool {
    count as f64 / n_rows as f64 >= min_support
}

/// Per-row numerator/denominator membership for the configured metric,
/// computed once per scan.
fn row_flags(dataset: &Dataset, metric: FairnessMetric) -> (Vec<bool>, Vec<bool>) {
    (0..dataset.n_rows())
        .map(|row| {
            let c = classify_flags(
                metric,
                dataset.predicted_positive(row),
                dataset.actual_positive(row),
            );
            (c.in_numerator, c.in_denominator)
        })
        .unzip()
}

/// True iff the row carries every item of the itemset.
pub fn row_matches(dataset: &Dataset, row: usize, itemset: &Itemset) -> bool {
    itemset
        .items()
        .iter()
        .all(|item| dataset.value_index(item.attribute as usize, row) == item.value)
}

/// One scan producing the frequent 1-itemsets over non-ignored attributes,
/// counters included.
pub fn mine_level_1(dataset: &Dataset, config: &AuditConfig) -> FrequentLevel {
    let schema = dataset.schema();
    let n_rows = dataset.n_rows();
    let (in_num, in_den) = row_flags(dataset, config.metric);

    let active: Vec<usize> = (0..schema.attributes.len())
        .filter(|&a| !config.ignored_attributes.contains(&schema.attributes[a].name))
        .collect();
    let mut counters: Vec<Vec<SubgroupStats>> = active
        .iter()
        .map(|&a| vec![SubgroupStats::default(); schema.attributes[a].domain.len()])
        .collect();

    for row in 0..n_rows {
        let (num, den) = (in_num[row], in_den[row]);
        for (slot, &a) in active.iter().enumerate() {
            let stats = &mut counters[slot][dataset.value_index(a, row) as usize];
            stats.count += 1;
            if den {
                stats.denominator += 1;
                if num {
                    stats.numerator += 1;
                }
            }
        }
    }

    let mut entries = BTreeMap::new();
    for (slot, &a) in active.iter().enumerate() {
        for (v, stats) in counters[slot].iter().enumerate() {
            if is_frequent(stats.count, n_rows, config.min_support) {
                let item = Item {
                    attribute: a as u32,
                    value: v as u32,
                };
                entries.insert(Itemset::from_sorted(vec![item]), *stats);
            }
        }
    }
    FrequentLevel { k: 1, entries }
}

/// Classic Apriori join of a frequent level with itself: pairs sharing their
/// first k-1 items combine into (k+1)-candidates, discarding same-attribute
/// collisions and any candidate with an infrequent k-subset. Output is
/// canonically sorted with no duplicates.
pub fn generate_candidates(level: &FrequentLevel) -> Vec<Itemset> {
    let sets: Vec<&Itemset> = level.entries.keys().collect();
    let k = level.k;
    let mut out = Vec::new();
    let mut subset = Vec::with_capacity(k);
    for i in 0..sets.len() {
        let a = sets[i].items();
        for other in &sets[i + 1..] {
            let b = other.items();
            if a[..k - 1] != b[..k - 1] {
                // Keys are sorted, so prefix groups are contiguous.
                break;
            }
            if a[k - 1].attribute == b[k - 1].attribute {
                continue;
            }
            let mut items = a.to_vec();
            items.push(b[k - 1]);

            // Downward closure: every k-subset must itself be frequent.
            // Dropping the last item reproduces `a`, which is known frequent.
            let closed = (0..k).all(|drop| {
                subset.clear();
                subset.extend(items.iter().enumerate().filter_map(|(p, item)| {
                    (p != drop).then_some(*item)
                }));
                level.entries.contains_key(&subset[..])
            });
            if closed {
                out.push(Itemset::from_sorted(items));
            }
        }
    }
    debug_assert!(out.windows(2).all(|p| p[0] < p[1]));
    out
}

/// Count and score a candidate level in one pass over the rows.
///
/// Candidates are bucketed by their first item so a row only visits the
/// candidates whose first item it carries. Candidates below the support
/// threshold are discarded after the scan.
pub fn count_and_score(
    dataset: &Dataset,
    candidates: &[Itemset],
    config: &AuditConfig,
) -> FrequentLevel {
    let k = candidates.first().map_or(0, Itemset::len);
    debug_assert!(candidates.iter().all(|c| c.len() == k));
    let n_rows = dataset.n_rows();
    let (in_num, in_den) = row_flags(dataset, config.metric);

    let schema = dataset.schema();
    let mut buckets: Vec<Vec<Vec<u32>>> = schema
        .attributes
        .iter()
        .map(|attr| vec![Vec::new(); attr.domain.len()])
        .collect();
    for (ci, candidate) in candidates.iter().enumerate() {
        let first = candidate.items()[0];
        buckets[first.attribute as usize][first.value as usize].push(ci as u32);
    }
    let active: Vec<usize> = (0..buckets.len())
        .filter(|&a| buckets[a].iter().any(|b| !b.is_empty()))
        .collect();

    let mut stats = vec![SubgroupStats::default(); candidates.len()];
    for row in 0..n_rows {
        let (num, den) = (in_num[row], in_den[row]);
        for &a in &active {
            let v = dataset.value_index(a, row) as usize;
            for &ci in &buckets[a][v] {
                let rest = &candidates[ci as usize].items()[1..];
                if rest
                    .iter()
                    .all(|item| dataset.value_index(item.attribute as usize, row) == item.value)
                {
                    let s = &mut stats[ci as usize];
                    s.count += 1;
                    if den {
                        s.denominator += 1;
                        if num {
                            s.numerator += 1;
                        }
                    }
                }
            }
        }
    }

    let mut entries = BTreeMap::new();
    for (candidate, s) in candidates.iter().zip(stats) {
        if is_frequent(s.count, n_rows, config.min_support) {
            entries.insert(candidate.clone(), s);
        }
    }
    FrequentLevel { k, entries }
}

/// Counters over the whole dataset, the difference baseline. Ignored
/// attributes only restrict the subgroup vocabulary, never this entry.
pub fn baseline_stats(dataset: &Dataset, config: &AuditConfig) -> SubgroupStats {
    let n_rows = dataset.n_rows();
    let (in_num, in_den) = row_flags(dataset, config.metric);
    SubgroupStats {
        count: n_rows as u64,
        numerator: in_num.iter().filter(|&&b| b).count() as u64,
        denominator: in_den.iter().filter(|&&b| b).count() as u64,
    }
}

/// Run the full audit: mine frequent itemsets level by level up to
/// `max_length` (or until a level comes up empty), prepend the whole-dataset
/// baseline row, and attach each subgroup's difference from the baseline
/// metric.
pub fn fairpriori(dataset: &Dataset, config: &AuditConfig) -> Result<Report> {
    let schema = dataset.schema();
    config.validate(schema)?;

    let baseline = baseline_stats(dataset, config);
    let mut levels = vec![mine_level_1(dataset, config)];
    loop {
        let last = levels.last().expect("at least one level");
        if last.entries.is_empty() || last.k >= config.max_length {
            break;
        }
        let candidates = generate_candidates(last);
        if candidates.is_empty() {
            break;
        }
        let next = count_and_score(dataset, &candidates, config);
        if next.entries.is_empty() {
            break;
        }
        levels.push(next);
    }

    let n_rows = dataset.n_rows();
    let baseline_metric = baseline.metric();
    let mut rows = vec![ReportRow::baseline(&baseline, n_rows)];
    for level in &levels {
        for (itemset, stats) in &level.entries {
            rows.push(ReportRow::subgroup(
                itemset,
                stats,
                schema,
                n_rows,
                baseline_metric,
            ));
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
