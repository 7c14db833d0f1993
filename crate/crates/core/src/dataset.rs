//! Loading, validation, and columnar integer encoding of tabular data.
//!
//! Attribute cells are treated as categorical text and encoded as indices
//! into per-attribute domains ordered by first occurrence. Outcome vectors
//! (predicted and actual) are validated against a closed category set and
//! stored alongside. A [`Dataset`] is immutable after construction and safe
//! to share across concurrent audits.

use std::collections::HashMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Sentinel category that missing attribute cells are mapped to. It mines
/// like any other value, so support counts always cover every row.
pub const MISSING_CATEGORY: &str = "<NA>";

/// Normalize one raw attribute cell: the empty string and the literal token
/// `NA` become the missing-value sentinel, everything else passes through.
pub fn encode_missing(raw_cell: &str) -> &str {
    if raw_cell.is_empty() || raw_cell == "NA" {
        MISSING_CATEGORY
    } else {
        raw_cell
    }
}

/// One categorical attribute and its value domain, ordered by first
/// occurrence in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub domain: Vec<String>,
}

impl Attribute {
    pub fn value_index(&self, value: &str) -> Option<u32> {
        self.domain.iter().position(|v| v == value).map(|i| i as u32)
    }
}

/// Attribute layout plus the outcome contract (permitted categories and the
/// positive target label).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub attributes: Vec<Attribute>,
    pub outcome_categories: Vec<String>,
    pub positive_label: String,
}

impl Schema {
    pub fn new(
        attributes: Vec<Attribute>,
        outcome_categories: Vec<String>,
        positive_label: String,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for attr in &attributes {
            if attr.name.is_empty() {
                return Err(Error::InvalidSchema("attribute with empty name".into()));
            }
            if seen.insert(attr.name.clone(), ()).is_some() {
                return Err(Error::InvalidSchema(format!(
                    "duplicate attribute name '{}'",
                    attr.name
                )));
            }
            if attr.domain.is_empty() {
                return Err(Error::InvalidSchema(format!(
                    "attribute '{}' has an empty domain",
                    attr.name
                )));
            }
            let mut values = HashMap::new();
            for v in &attr.domain {
                if values.insert(v.clone(), ()).is_some() {
                    return Err(Error::InvalidSchema(format!(
                        "attribute '{}' repeats domain value '{v}'",
                        attr.name
                    )));
                }
            }
        }
        if outcome_categories.is_empty() {
            return Err(Error::InvalidSchema("no outcome categories".into()));
        }
        let mut cats = HashMap::new();
        for c in &outcome_categories {
            if c.is_empty() {
                return Err(Error::InvalidSchema("empty outcome category".into()));
            }
            if cats.insert(c.clone(), ()).is_some() {
                return Err(Error::InvalidSchema(format!(
                    "duplicate outcome category '{c}'"
                )));
            }
        }
        if !outcome_categories.contains(&positive_label) {
            return Err(Error::InvalidSchema(format!(
                "positive label '{positive_label}' is not an outcome category"
            )));
        }
        Ok(Schema {
            attributes,
            outcome_categories,
            positive_label,
        })
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }
}

/// Immutable columnar table: per-attribute value-index vectors plus aligned
/// predicted/actual outcome vectors (stored as category indices).
#[derive(Debug, Clone)]
pub struct Dataset {
    schema: Schema,
    n_rows: usize,
    columns: Vec<Vec<u32>>,
    predicted: Vec<u32>,
    actual: Vec<u32>,
    positive_index: u32,
}

impl Dataset {
    /// Build a dataset from encoded columns and outcome values, checking
    /// every structural invariant.
    pub fn new(
        schema: Schema,
        columns: Vec<Vec<u32>>,
        predicted: Vec<String>,
        actual: Vec<String>,
    ) -> Result<Self> {
        let n_rows = predicted.len();
        if n_rows == 0 {
            return Err(Error::InvalidDataset("dataset has no rows".into()));
        }
        if actual.len() != n_rows {
            return Err(Error::InvalidDataset(format!(
                "predicted has {n_rows} rows but actual has {}",
                actual.len()
            )));
        }
        if columns.len() != schema.attributes.len() {
            return Err(Error::InvalidDataset(format!(
                "{} attribute columns for {} schema attributes",
                columns.len(),
                schema.attributes.len()
            )));
        }
        for (attr, column) in schema.attributes.iter().zip(&columns) {
            if column.len() != n_rows {
                return Err(Error::InvalidDataset(format!(
                    "column '{}' has {} rows, expected {n_rows}",
                    attr.name,
                    column.len()
                )));
            }
            let domain_len = attr.domain.len() as u32;
            if let Some(row) = column.iter().position(|&v| v >= domain_len) {
                return Err(Error::InvalidDataset(format!(
                    "column '{}' row {} has value index {} outside its domain",
                    attr.name,
                    row + 1,
                    column[row]
                )));
            }
        }
        let encode = |role: &str, values: Vec<String>| -> Result<Vec<u32>> {
            values
                .into_iter()
                .enumerate()
                .map(|(row, v)| {
                    schema
                        .outcome_categories
                        .iter()
                        .position(|c| *c == v)
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::OutcomeOutsideCategories {
                            column: role.to_string(),
                            row: row + 1,
                            value: v,
                        })
                })
                .collect()
        };
        let predicted = encode("predicted", predicted)?;
        let actual = encode("actual", actual)?;
        let positive_index = schema
            .outcome_categories
            .iter()
            .position(|c| *c == schema.positive_label)
            .expect("schema validated") as u32;
        Ok(Dataset {
            schema,
            n_rows,
            columns,
            predicted,
            actual,
            positive_index,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_attributes(&self) -> usize {
        self.schema.attributes.len()
    }

    /// Encoded value of `attribute` at `row`.
    #[inline]
    pub fn value_index(&self, attribute: usize, row: usize) -> u32 {
        self.columns[attribute][row]
    }

    /// Decoded cell text.
    pub fn value(&self, attribute: usize, row: usize) -> &str {
        let attr = &self.schema.attributes[attribute];
        &attr.domain[self.columns[attribute][row] as usize]
    }

    pub fn column(&self, attribute: usize) -> &[u32] {
        &self.columns[attribute]
    }

    pub fn predicted_label(&self, row: usize) -> &str {
        &self.schema.outcome_categories[self.predicted[row] as usize]
    }

    pub fn actual_label(&self, row: usize) -> &str {
        &self.schema.outcome_categories[self.actual[row] as usize]
    }

    #[inline]
    pub fn predicted_positive(&self, row: usize) -> bool {
        self.predicted[row] == self.positive_index
    }

    #[inline]
    pub fn actual_positive(&self, row: usize) -> bool {
        self.actual[row] == self.positive_index
    }
}

enum OutcomeSource {
    Column(usize),
    File(PathBuf),
}

/// Load a CSV file (UTF-8, RFC 4180, mandatory header row) into a [`Dataset`].
///
/// `predicted_source` and `actual_source` each name either a column of the
/// data file or a separate single-column CSV file; an existing file path wins
/// over a column of the same name. Columns consumed as outcome vectors are
/// excluded from the attribute list.
pub fn load_csv(
    path: impl AsRef<Path>,
    predicted_source: &str,
    actual_source: &str,
    outcome_categories: &[String],
    positive_label: &str,
) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::Reader::from_reader(file);
    let headers: Vec<String> = reader
        .headers()
        .map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?
        .iter()
        .map(str::to_string)
        .collect();
    for (index, name) in headers.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::EmptyColumnName { index: index + 1 });
        }
        if headers[..index].contains(name) {
            return Err(Error::DuplicateColumn { name: name.clone() });
        }
    }

    let resolve = |role: &'static str, source: &str| -> Result<OutcomeSource> {
        let candidate = Path::new(source);
        if candidate.is_file() {
            Ok(OutcomeSource::File(candidate.to_path_buf()))
        } else if let Some(i) = headers.iter().position(|h| h == source) {
            Ok(OutcomeSource::Column(i))
        } else {
            Err(Error::UnknownSource {
                role,
                name: source.to_string(),
            })
        }
    };
    let predicted_src = resolve("predicted", predicted_source)?;
    let actual_src = resolve("actual", actual_source)?;

    let mut rows: Vec<csv::StringRecord> = Vec::new();
    for record in reader.records() {
        rows.push(record.map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?);
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset {
            path: path.to_path_buf(),
        });
    }
    let n_rows = rows.len();

    let mut outcome_columns = Vec::new();
    if let OutcomeSource::Column(i) = predicted_src {
        outcome_columns.push(i);
    }
    if let OutcomeSource::Column(i) = actual_src {
        outcome_columns.push(i);
    }

    let extract = |source: &OutcomeSource, name: &str| -> Result<Vec<String>> {
        match source {
            OutcomeSource::Column(i) => {
                Ok(rows.iter().map(|r| r[*i].to_string()).collect())
            }
            OutcomeSource::File(p) => {
                let values = read_outcome_file(p)?;
                if values.len() != n_rows {
                    return Err(Error::OutcomeLengthMismatch {
                        column: name.to_string(),
                        expected: n_rows,
                        found: values.len(),
                    });
                }
                Ok(values)
            }
        }
    };
    let predicted = extract(&predicted_src, predicted_source)?;
    let actual = extract(&actual_src, actual_source)?;

    // Validate outcome membership here so errors carry the source name the
    // caller used, not the generic role.
    for (name, values) in [(predicted_source, &predicted), (actual_source, &actual)] {
        for (row, value) in values.iter().enumerate() {
            if !outcome_categories.iter().any(|c| c == value) {
                return Err(Error::OutcomeOutsideCategories {
                    column: name.to_string(),
                    row: row + 1,
                    value: value.clone(),
                });
            }
        }
    }

    // Encode the remaining columns as attributes, domains in first-occurrence
    // order.
    let mut attributes = Vec::new();
    let mut columns = Vec::new();
    for (col, name) in headers.iter().enumerate() {
        if outcome_columns.contains(&col) {
            continue;
        }
        let mut domain: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut encoded = Vec::with_capacity(n_rows);
        for record in &rows {
            let cell = encode_missing(&record[col]);
            let idx = match index.get(cell) {
                Some(&i) => i,
                None => {
                    let i = domain.len() as u32;
                    domain.push(cell.to_string());
                    index.insert(cell.to_string(), i);
                    i
                }
            };
            encoded.push(idx);
        }
        attributes.push(Attribute {
            name: name.clone(),
            domain,
        });
        columns.push(encoded);
    }

    let schema = Schema::new(
        attributes,
        outcome_categories.to_vec(),
        positive_label.to_string(),
    )?;
    Dataset::new(schema, columns, predicted, actual)
}

fn read_outcome_file(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::Reader::from_reader(file);
    let width = reader
        .headers()
        .map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?
        .len();
    if width != 1 {
        return Err(Error::NotSingleColumn {
            path: path.to_path_buf(),
            found: width,
        });
    }
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        values.push(record[0].to_string());
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn categories() -> Vec<String> {
        vec!["Positive".to_string(), "Negative".to_string()]
    }

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const EXAMPLE: &str = "Name,Gender,Race,Actual,Predicted\n\
        Alex,Female,Caucasian,Positive,Positive\n\
        Ben,Male,Asian,Negative,Positive\n\
        Cam,Male,Asian,Positive,Positive\n\
        Dan,Male,Asian,Negative,Negative\n";

    #[test]
    fn loads_four_row_example() {
        let f = write_temp(EXAMPLE);
        let ds = load_csv(f.path(), "Predicted", "Actual", &categories(), "Positive").unwrap();
        assert_eq!(ds.n_rows(), 4);
        assert_eq!(ds.n_attributes(), 3);
        let names: Vec<_> = ds.schema().attributes.iter().map(|a| &a.name).collect();
        assert_eq!(names, ["Name", "Gender", "Race"]);
        // First-occurrence domain ordering.
        assert_eq!(ds.schema().attributes[1].domain, ["Female", "Male"]);
        assert_eq!(ds.value(2, 0), "Caucasian");
        assert_eq!(ds.value(2, 3), "Asian");
        assert!(ds.predicted_positive(0));
        assert!(!ds.predicted_positive(3));
        assert!(!ds.actual_positive(1));
    }

    #[test]
    fn header_only_is_an_empty_dataset() {
        let f = write_temp("a,b,pred,act\n");
        let err = load_csv(f.path(), "pred", "act", &categories(), "Positive").unwrap_err();
        assert!(matches!(err, Error::EmptyDataset { .. }), "{err}");
    }

    #[test]
    fn outcome_outside_categories_names_row_and_value() {
        let csv = "a,Actual,Predicted\nx,Maybe,Positive\n";
        let f = write_temp(csv);
        let err = load_csv(f.path(), "Predicted", "Actual", &categories(), "Positive").unwrap_err();
        match err {
            Error::OutcomeOutsideCategories { column, row, value } => {
                assert_eq!(column, "Actual");
                assert_eq!(row, 1);
                assert_eq!(value, "Maybe");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_csv(
            "/definitely/not/here.csv",
            "p",
            "a",
            &categories(),
            "Positive",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn ragged_row_is_reported() {
        let f = write_temp("a,b,pred,act\n1,2,Positive,Positive\n1,2,3,Positive,Positive\n");
        let err = load_csv(f.path(), "pred", "act", &categories(), "Positive").unwrap_err();
        assert!(matches!(err, Error::Csv { .. }), "{err}");
    }

    #[test]
    fn unknown_source_is_reported() {
        let f = write_temp(EXAMPLE);
        let err = load_csv(f.path(), "nope", "Actual", &categories(), "Positive").unwrap_err();
        match err {
            Error::UnknownSource { role, name } => {
                assert_eq!(role, "predicted");
                assert_eq!(name, "nope");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn outcome_vectors_from_separate_files() {
        let data = write_temp("Gender,Race\nFemale,Caucasian\nMale,Asian\n");
        let pred = write_temp("pred\nPositive\nNegative\n");
        let act = write_temp("act\nPositive\nPositive\n");
        let ds = load_csv(
            data.path(),
            pred.path().to_str().unwrap(),
            act.path().to_str().unwrap(),
            &categories(),
            "Positive",
        )
        .unwrap();
        assert_eq!(ds.n_attributes(), 2);
        assert_eq!(ds.n_rows(), 2);
        assert!(ds.predicted_positive(0));
        assert!(!ds.predicted_positive(1));
    }

    #[test]
    fn outcome_file_length_mismatch() {
        let data = write_temp("Gender\nFemale\nMale\n");
        let pred = write_temp("pred\nPositive\n");
        let act = write_temp("act\nPositive\nPositive\n");
        let err = load_csv(
            data.path(),
            pred.path().to_str().unwrap(),
            act.path().to_str().unwrap(),
            &categories(),
            "Positive",
        )
        .unwrap_err();
        assert!(matches!(err, Error::OutcomeLengthMismatch { .. }), "{err}");
    }

    #[test]
    fn outcome_file_must_be_single_column() {
        let data = write_temp("Gender\nFemale\n");
        let pred = write_temp("pred,extra\nPositive,x\n");
        let act = write_temp("act\nPositive\n");
        let err = load_csv(
            data.path(),
            pred.path().to_str().unwrap(),
            act.path().to_str().unwrap(),
            &categories(),
            "Positive",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotSingleColumn { found: 2, .. }), "{err}");
    }

    #[test]
    fn missing_cells_become_sentinel() {
        assert_eq!(encode_missing(""), MISSING_CATEGORY);
        assert_eq!(encode_missing("NA"), MISSING_CATEGORY);
        assert_eq!(encode_missing("Asian"), "Asian");

        let f = write_temp("a,pred,act\n,Positive,Positive\nNA,Positive,Positive\nx,Negative,Negative\n");
        let ds = load_csv(f.path(), "pred", "act", &categories(), "Positive").unwrap();
        assert_eq!(ds.value(0, 0), MISSING_CATEGORY);
        assert_eq!(ds.value(0, 1), MISSING_CATEGORY);
        assert_eq!(ds.value(0, 2), "x");
        // The sentinel is a single domain value shared by both rows.
        assert_eq!(ds.schema().attributes[0].domain.len(), 2);
    }

    #[test]
    fn duplicate_header_rejected() {
        let f = write_temp("a,a,pred,act\n1,2,Positive,Positive\n");
        let err = load_csv(f.path(), "pred", "act", &categories(), "Positive").unwrap_err();
        assert!(matches!(err, Error::DuplicateColumn { .. }));
    }

    #[test]
    fn quoted_cells_round_trip() {
        let f = write_temp("a,pred,act\n\"x, y\",Positive,Positive\n\"he said \"\"hi\"\"\",Negative,Negative\n");
        let ds = load_csv(f.path(), "pred", "act", &categories(), "Positive").unwrap();
        assert_eq!(ds.value(0, 0), "x, y");
        assert_eq!(ds.value(0, 1), "he said \"hi\"");
    }

    #[test]
    fn loading_is_deterministic() {
        let f = write_temp(EXAMPLE);
        let a = load_csv(f.path(), "Predicted", "Actual", &categories(), "Positive").unwrap();
        let b = load_csv(f.path(), "Predicted", "Actual", &categories(), "Positive").unwrap();
        assert_eq!(a.schema(), b.schema());
        for attr in 0..a.n_attributes() {
            assert_eq!(a.column(attr), b.column(attr));
        }
    }

    #[test]
    fn positive_label_must_be_a_category() {
        let f = write_temp(EXAMPLE);
        let err = load_csv(f.path(), "Predicted", "Actual", &categories(), "Maybe").unwrap_err();
        assert!(matches!(err, Error::InvalidSchema(_)));
    }

    #[test]
    fn dataset_new_rejects_out_of_range_index() {
        let schema = Schema::new(
            vec![Attribute {
                name: "a".into(),
                domain: vec!["x".into()],
            }],
            categories(),
            "Positive".into(),
        )
        .unwrap();
        let err = Dataset::new(
            schema,
            vec![vec![1]],
            vec!["Positive".into()],
            vec!["Positive".into()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDataset(_)));
    }
}
