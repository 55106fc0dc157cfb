//! Reading messages, matrices and number lists from flags and files.

use std::path::Path;
use std::sync::Arc;

use cayley_core::ff::{FieldElement, FieldSpec};
use cayley_core::msg::{parse_rle, Message};
use cayley_core::sl2::Mat2;
use cayley_core::Error;
use serde_json::Value;

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn load_message(text: Option<&str>, file: Option<&Path>) -> Result<Message, Failure> {
    let text = match (text, file) {
        (Some(t), _) => t.to_string(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Err(Failure::Usage("one of --msg or --msg-file is required".into())),
    };
    Ok(parse_rle(&text)?)
}

pub fn load_message_lines(path: &Path) -> Result<Vec<Message>, Failure> {
    read(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_rle(l).map_err(Failure::from))
        .collect()
}

pub fn load_matrix(spec: &Arc<FieldSpec>, text: Option<&str>, file: Option<&Path>) -> Result<Option<Mat2>, Failure> {
    let text = match (text, file) {
        (Some(t), _) => t.to_string(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Ok(None),
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    Ok(Some(Mat2::from_json(spec, &value)?))
}

pub fn parse_list(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| Failure::Usage(format!("{s:?}: {e}"))))
        .collect()
}

pub fn element_json(e: &FieldElement) -> Value {
    Value::from(e.coeffs().to_vec())
}
