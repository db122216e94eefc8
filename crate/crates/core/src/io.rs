//! Matrix ingestion and emission.
//!
//! CSV: `n` data lines of `n` comma-separated non-negative tokens, diagonal
//! tokens parsing to zero. JSON: `{"teams": [..], "audience": [[..]]}` with
//! entries given as numbers or as `p/q` / decimal strings. All tokens are
//! parsed exactly.

use crate::problem::{Problem, ProblemError};
use crate::rational::{parse_rat, to_decimal_string, to_token, ParseRatError, Rat};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixFormatError {
    #[error("no data lines")]
    Empty,
    #[error("bad token at ({row}, {col}): {source}")]
    BadToken {
        row: usize,
        col: usize,
        source: ParseRatError,
    },
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("JSON matrix: {0}")]
    JsonShape(String),
}

/// Parses the CSV matrix format. Blank lines are ignored.
pub fn problem_from_csv(text: &str) -> Result<Problem, MatrixFormatError> {
    let mut rows = Vec::new();
    for (row_idx, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let mut row = Vec::new();
        for (col_idx, token) in line.split(',').enumerate() {
            let value = parse_rat(token).map_err(|source| MatrixFormatError::BadToken {
                row: row_idx + 1,
                col: col_idx + 1,
                source,
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MatrixFormatError::Empty);
    }
    Ok(Problem::new(rows)?)
}

/// Emits the CSV matrix format with shortest-exact-decimal tokens.
pub fn problem_to_csv(problem: &Problem) -> String {
    let mut out = String::new();
    for row in problem.rows() {
        let line: Vec<String> = row.iter().map(to_decimal_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses the JSON matrix format.
pub fn problem_from_json(text: &str) -> Result<Problem, MatrixFormatError> {
    let value: Value = serde_json::from_str(text)?;
    problem_from_json_value(&value)
}

pub fn problem_from_json_value(value: &Value) -> Result<Problem, MatrixFormatError> {
    let obj = value
        .as_object()
        .ok_or_else(|| MatrixFormatError::JsonShape("expected an object".into()))?;
    let audience = obj
        .get("audience")
        .ok_or_else(|| MatrixFormatError::JsonShape("missing \"audience\"".into()))?
        .as_array()
        .ok_or_else(|| MatrixFormatError::JsonShape("\"audience\" must be an array".into()))?;
    let mut rows = Vec::new();
    for (row_idx, row_value) in audience.iter().enumerate() {
        let row_array = row_value.as_array().ok_or_else(|| {
            MatrixFormatError::JsonShape(format!("audience row {} must be an array", row_idx + 1))
        })?;
        let mut row = Vec::new();
        for (col_idx, cell) in row_array.iter().enumerate() {
            row.push(json_cell_to_rat(cell, row_idx + 1, col_idx + 1)?);
        }
        rows.push(row);
    }
    let mut problem = Problem::new(rows)?;
    if let Some(teams) = obj.get("teams").and_then(Value::as_array) {
        let labels: Vec<String> = teams
            .iter()
            .map(|v| v.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| MatrixFormatError::JsonShape("\"teams\" must hold strings".into()))?;
        if labels.len() != problem.n() {
            return Err(MatrixFormatError::JsonShape(format!(
                "{} team labels for {} teams",
                labels.len(),
                problem.n()
            )));
        }
        problem = problem.with_labels(labels);
    }
    Ok(problem)
}

fn json_cell_to_rat(cell: &Value, row: usize, col: usize) -> Result<Rat, MatrixFormatError> {
    let token = match cell {
        // serde_json's arbitrary_precision keeps the literal digits, so
        // decimals like 0.1 stay exact.
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(MatrixFormatError::JsonShape(format!(
                "entry ({row}, {col}) must be a number or string, got {other}"
            )))
        }
    };
    parse_rat(&token).map_err(|source| MatrixFormatError::BadToken { row, col, source })
}

/// Emits the JSON matrix format with strict `p/q` tokens.
pub fn problem_to_json_value(problem: &Problem) -> Value {
    let audience: Vec<Value> = problem
        .rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(|r| Value::String(to_token(r))).collect()))
        .collect();
    let mut obj = serde_json::Map::new();
    if let Some(labels) = problem.labels() {
        obj.insert(
            "teams".into(),
            Value::Array(labels.iter().map(|l| Value::String(l.clone())).collect()),
        );
    }
    obj.insert("audience".into(), Value::Array(audience));
    Value::Object(obj)
}

pub fn problem_to_json(problem: &Problem) -> String {
    serde_json::to_string_pretty(&problem_to_json_value(problem)).expect("matrix JSON")
}

impl serde::Serialize for Problem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        problem_to_json_value(self).serialize(serializer)
    }
}

/// Parses either format, deciding by the first non-whitespace byte.
pub fn problem_from_str(text: &str) -> Result<Problem, MatrixFormatError> {
    if text.trim_start().starts_with('{') {
        problem_from_json(text)
    } else {
        problem_from_csv(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Team;
    use crate::rational::{rat, ratio};

    #[test]
    fn csv_round_trip() {
        let text = "0,1200,1030\n750,0,140\n630,210,0\n";
        let a = problem_from_csv(text).unwrap();
        assert_eq!(a.total(), rat(3960));
        assert_eq!(problem_to_csv(&a), text);
    }

    #[test]
    fn csv_accepts_fraction_and_decimal_tokens() {
        let a = problem_from_csv("0, 1/2, 0.25\n2,0,3\n4,5,0\n").unwrap();
        assert_eq!(a.entry(Team(1), Team(2)), &ratio(1, 2));
        assert_eq!(a.entry(Team(1), Team(3)), &ratio(1, 4));
    }

    #[test]
    fn csv_rejects_bad_cells() {
        assert!(matches!(
            problem_from_csv("0,x,1\n1,0,1\n1,1,0\n"),
            Err(MatrixFormatError::BadToken { row: 1, col: 2, .. })
        ));
        assert!(matches!(
            problem_from_csv("0,1,1\n1,2,1\n1,1,0\n"),
            Err(MatrixFormatError::Problem(ProblemError::NonzeroDiagonal { index: 2 }))
        ));
        assert!(matches!(problem_from_csv("  \n"), Err(MatrixFormatError::Empty)));
    }

    #[test]
    fn json_round_trip_with_labels() {
        let text = r#"{"teams": ["a", "b", "c"], "audience": [[0, "1/2", 2], [1, 0, 0.5], [3, 4, 0]]}"#;
        let a = problem_from_json(text).unwrap();
        assert_eq!(a.labels().unwrap(), ["a", "b", "c"]);
        assert_eq!(a.entry(Team(1), Team(2)), &ratio(1, 2));
        assert_eq!(a.entry(Team(2), Team(3)), &ratio(1, 2));

        let emitted = problem_to_json(&a);
        let back = problem_from_json(&emitted).unwrap();
        assert_eq!(back, a.clone());
        assert_eq!(back.labels(), a.labels());
    }

    #[test]
    fn json_numbers_parse_exactly() {
        let a = problem_from_json(r#"{"audience": [[0, 0.1, 0], [0, 0, 0], [0, 0, 0]]}"#).unwrap();
        assert_eq!(a.entry(Team(1), Team(2)), &ratio(1, 10));
    }

    #[test]
    fn sniffing_picks_the_right_parser() {
        assert!(problem_from_str("0,1,1\n1,0,1\n1,1,0\n").is_ok());
        assert!(problem_from_str(r#"  {"audience": [[0,1,1],[1,0,1],[1,1,0]]}"#).is_ok());
    }
}
