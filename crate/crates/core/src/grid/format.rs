//! Text and JSON grid files.
//!
//! Text:
//! ```text
//! # comment
//! n=2
//! X=0,1
//! O=1,0
//! ```
//! JSON: `{"n":2,"x":[0,1],"o":[1,0]}`. Emission is compact with keys in the
//! order `n`, `x`, `o`, so canonical input round-trips byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{GridDiagram, GridError, Marker};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {source}")]
    Invalid {
        line: usize,
        column: usize,
        source: GridError,
    },
}

impl GridParseError {
    pub fn location(&self) -> (usize, usize) {
        match *self {
            GridParseError::Syntax { line, column, .. } | GridParseError::Invalid { line, column, .. } => {
                (line, column)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridJson {
    pub n: usize,
    pub x: Vec<usize>,
    pub o: Vec<usize>,
}

impl From<&GridDiagram> for GridJson {
    fn from(g: &GridDiagram) -> Self {
        GridJson {
            n: g.size(),
            x: g.xs().to_vec(),
            o: g.os().to_vec(),
        }
    }
}

impl GridDiagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GridJson::from(self)).expect("grid serializes")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Parse a grid file in either format; JSON is recognised by a leading `{`.
pub fn parse_grid(input: &str) -> Result<GridDiagram, GridParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

fn parse_json(input: &str) -> Result<GridDiagram, GridParseError> {
    let raw: GridJson = serde_json::from_str(input).map_err(|e| GridParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    GridDiagram::new(raw.n, raw.x, raw.o).map_err(|source| GridParseError::Invalid {
        line: 1,
        column: 1,
        source,
    })
}

struct Field {
    line: usize,
    column: usize,
    // (column of each entry, value)
    entries: Vec<(usize, usize)>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GridParseError {
    GridParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_list(line: usize, offset: usize, body: &str) -> Result<Vec<(usize, usize)>, GridParseError> {
    let mut out = Vec::new();
    let mut pos = offset;
    for piece in body.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let token = piece.trim();
        let column = pos + lead + 1;
        if token.is_empty() {
            return Err(syntax(line, column, "empty list entry"));
        }
        let value = token.parse::<usize>().map_err(|_| {
            syntax(
                line,
                column,
                format!("expected a non-negative integer, found `{token}`"),
            )
        })?;
        out.push((column, value));
        pos += piece.len() + 1;
    }
    Ok(out)
}

fn parse_text(input: &str) -> Result<GridDiagram, GridParseError> {
    let mut n: Option<(usize, usize, usize)> = None;
    let mut fields: [Option<Field>; 2] = [None, None];
    let mut last_line = 0;

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let Some(eq) = content.find('=') else {
            return Err(syntax(line, lead + 1, "expected `key=value`"));
        };
        let key = content[..eq].trim();
        let body = &content[eq + 1..];
        match key {
            "n" => {
                if n.is_some() {
                    return Err(syntax(line, lead + 1, "duplicate `n` line"));
                }
                let list = parse_list(line, eq + 1, body)?;
                if list.len() != 1 {
                    return Err(syntax(line, eq + 2, "`n` takes a single integer"));
                }
                n = Some((line, lead + 1, list[0].1));
            }
            "X" | "O" => {
                let slot = usize::from(key == "O");
                if fields[slot].is_some() {
                    return Err(syntax(line, lead + 1, format!("duplicate `{key}` line")));
                }
                fields[slot] = Some(Field {
                    line,
                    column: lead + 1,
                    entries: parse_list(line, eq + 1, body)?,
                });
            }
            other => {
                return Err(syntax(line, lead + 1, format!("unknown key `{other}`")));
            }
        }
    }

    let end = last_line.max(1);
    let (n_line, n_col, n) = n.ok_or_else(|| syntax(end, 1, "missing `n=` line"))?;
    let [xf, of] = fields;
    let xf = xf.ok_or_else(|| syntax(end, 1, "missing `X=` line"))?;
    let of = of.ok_or_else(|| syntax(end, 1, "missing `O=` line"))?;

    let xs: Vec<usize> = xf.entries.iter().map(|e| e.1).collect();
    let os: Vec<usize> = of.entries.iter().map(|e| e.1).collect();
    GridDiagram::new(n, xs, os).map_err(|source| {
        let field = |m: Marker| if m == Marker::X { &xf } else { &of };
        let (line, column) = match &source {
            GridError::EmptyGrid => (n_line, n_col),
            GridError::SizeMismatch { marker, .. } => {
                let f = field(*marker);
                (f.line, f.column)
            }
            GridError::NotAPermutation { marker, column, .. } => {
                let f = field(*marker);
                (f.line, f.entries[*column].0)
            }
            GridError::SharedCell { column, .. } => (of.line, of.entries[*column].0),
            _ => (n_line, n_col),
        };
        GridParseError::Invalid { line, column, source }
    })
}
