//! JSONL persistence: one JSON object per line, UTF-8.
//!
//! Unknown fields are ignored with a warning rather than rejected, so
//! fixtures can grow fields without breaking older readers. Malformed lines
//! fail with the 1-based line number.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AuditPrompt, Critique, DatasetRecord, Question, QuestionResult, Solution};

/// A record kind with a named JSONL schema.
pub trait JsonlRecord: Serialize + DeserializeOwned {
    const KIND: &'static str;
    /// Known top-level field names; anything else draws a warning.
    const FIELDS: &'static [&'static str];
}

impl JsonlRecord for Question {
    const KIND: &'static str = "question";
    const FIELDS: &'static [&'static str] =
        &["id", "prompt", "ground_truth_answer", "reference_solution"];
}

impl JsonlRecord for Solution {
    const KIND: &'static str = "solution";
    const FIELDS: &'static [&'static str] = &[
        "question_id",
        "text",
        "final_answer",
        "source_tag",
        "correct",
    ];
}

impl JsonlRecord for Critique {
    const KIND: &'static str = "critique";
    const FIELDS: &'static [&'static str] = &["question_id", "solution_index", "text", "judgment"];
}

impl JsonlRecord for DatasetRecord {
    const KIND: &'static str = "dataset record";
    const FIELDS: &'static [&'static str] = &[
        "question_id",
        "solution_text",
        "critique_text",
        "label",
        "split_tag",
    ];
}

impl JsonlRecord for AuditPrompt {
    const KIND: &'static str = "audit prompt";
    const FIELDS: &'static [&'static str] = &["prompt"];
}

impl JsonlRecord for QuestionResult {
    const KIND: &'static str = "question result";
    const FIELDS: &'static [&'static str] = &[
        "question_id",
        "decision",
        "answer",
        "reason",
        "tallies",
        "selected_mean_score",
        "tau",
        "beta",
    ];
}

/// Read every record from a JSONL file, preserving order. Blank lines are
/// skipped; a malformed line fails with its line number.
pub fn read_jsonl<T: JsonlRecord>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    let mut warned: BTreeSet<String> = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let value: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| Error::JsonLine {
                path: path.to_path_buf(),
                line: line_no,
                source: e,
            })?;
        if let Some(obj) = value.as_object() {
            for key in obj.keys() {
                if !T::FIELDS.contains(&key.as_str()) && warned.insert(key.clone()) {
                    eprintln!(
                        "warning: {}:{}: ignoring unknown {} field {:?}",
                        path.display(),
                        line_no,
                        T::KIND,
                        key
                    );
                }
            }
        }
        let record: T = serde_json::from_value(value).map_err(|e| Error::JsonLine {
            path: path.to_path_buf(),
            line: line_no,
            source: e,
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Write records as one JSON object per line. Creates parent directories.
pub fn write_jsonl<T: Serialize>(records: &[T], path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = BufWriter::new(file);
    for record in records {
        let line = serde_json::to_string(record).map_err(|e| Error::JsonLine {
            path: path.to_path_buf(),
            line: 0,
            source: e,
        })?;
        writer
            .write_all(line.as_bytes())
            .and_then(|()| writer.write_all(b"\n"))
            .map_err(|e| Error::io(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}
