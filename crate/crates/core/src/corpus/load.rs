//! Dataset ingestion from delimiter-separated files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{LabelVector, RawRecord, EMOTIONS};
use crate::error::{Error, Result};

/// Column mapping for the input file. The file must have a header row;
/// `label_columns` follow the canonical emotion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSchema {
    pub text_column: String,
    pub label_columns: [String; 6],
    #[serde(default)]
    pub platform_column: Option<String>,
    #[serde(default)]
    pub topic_column: Option<String>,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
}

fn default_delimiter() -> char {
    ','
}

impl Default for DatasetSchema {
    /// Column names matching the emotion names, text under `text`.
    fn default() -> Self {
        Self {
            text_column: "text".to_string(),
            label_columns: EMOTIONS.map(|e| e.name().to_string()),
            platform_column: None,
            topic_column: None,
            delimiter: ',',
        }
    }
}

/// A rejected input row and why it was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRow {
    /// 1-based data-row number (header excluded).
    pub row: usize,
    pub reason: String,
}

/// Ingestion result: accepted records plus the reject report.
#[derive(Debug, Clone)]
pub struct IngestReport {
    pub records: Vec<RawRecord>,
    pub rejected: Vec<RejectedRow>,
}

/// Load a labeled comment dataset.
///
/// One [`RawRecord`] per valid data row; ids are the 0-based data-row
/// positions, so they are stable whether or not other rows are rejected.
/// Rows with empty text or label values outside {0, 1} are rejected, or
/// abort the run with a row-numbered error when `strict` is set.
pub fn load_dataset(path: &Path, schema: &DatasetSchema, strict: bool) -> Result<IngestReport> {
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    if !schema.delimiter.is_ascii() {
        return Err(Error::InvalidConfig(format!(
            "delimiter {:?} must be an ASCII character",
            schema.delimiter
        )));
    }
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter as u8)
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| Error::MalformedDocument(e.to_string()))?;

    let headers = reader
        .headers()
        .map_err(|e| Error::MalformedDocument(e.to_string()))?
        .clone();
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };

    let text_idx = column(&schema.text_column)?;
    let mut label_idx = [0usize; 6];
    for (slot, name) in label_idx.iter_mut().zip(schema.label_columns.iter()) {
        *slot = column(name)?;
    }
    let platform_idx = schema.platform_column.as_deref().map(column).transpose()?;
    let topic_idx = schema.topic_column.as_deref().map(column).transpose()?;

    let mut records = Vec::new();
    let mut rejected = Vec::new();
    for (row_pos, result) in reader.records().enumerate() {
        let row = row_pos + 1;
        let mut reject = |reason: String| -> Result<()> {
            if strict {
                Err(Error::BadRow { row, reason })
            } else {
                rejected.push(RejectedRow { row, reason });
                Ok(())
            }
        };
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                reject(format!("malformed row: {e}"))?;
                continue;
            }
        };
        let text = record.get(text_idx).unwrap_or("");
        if text.trim().is_empty() {
            reject("empty text".to_string())?;
            continue;
        }
        let mut flags = [false; 6];
        let mut bad_label = None;
        for (k, &idx) in label_idx.iter().enumerate() {
            let raw = record.get(idx).unwrap_or("").trim();
            match raw {
                "0" => flags[k] = false,
                "1" => flags[k] = true,
                other => {
                    bad_label = Some(format!(
                        "label {:?} has value {:?}, expected 0 or 1",
                        schema.label_columns[k], other
                    ));
                    break;
                }
            }
        }
        if let Some(reason) = bad_label {
            reject(reason)?;
            continue;
        }
        let optional = |idx: Option<usize>| -> Option<String> {
            idx.and_then(|i| record.get(i))
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
        };
        records.push(RawRecord {
            id: row_pos as u32,
            text: text.to_string(),
            labels: LabelVector::new(flags),
            platform: optional(platform_idx),
            topic: optional(topic_idx),
        });
    }
    Ok(IngestReport { records, rejected })
}
