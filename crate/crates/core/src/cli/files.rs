//! JSON input formats. Rationals are written as `"p/q"` strings; bare JSON
//! integers are accepted on input as well.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::graphs::GraphSpec;
use crate::ratmat::{int, parse_rational, RatMatrix, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Cell::Int(n) => Ok(int(*n)),
            Cell::Text(s) => Ok(parse_rational(s)?),
        }
    }
}

pub fn row_from_cells(cells: &[Cell]) -> Result<Vec<Rational>, CliError> {
    cells.iter().map(Cell::to_rational).collect()
}

pub fn matrix_from_cells(rows: &[Vec<Cell>]) -> Result<RatMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| row_from_cells(r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatMatrix::from_rows(rows)?)
}

/// `{"graph": .., "colors": [..]}` or a bare color array.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ColoringFile {
    Full {
        #[serde(default)]
        graph: Option<GraphSpec>,
        colors: Vec<usize>,
    },
    Bare(Vec<usize>),
}

impl ColoringFile {
    pub fn graph(&self) -> Option<&GraphSpec> {
        match self {
            ColoringFile::Full { graph, .. } => graph.as_ref(),
            ColoringFile::Bare(_) => None,
        }
    }

    pub fn colors(&self) -> &[usize] {
        match self {
            ColoringFile::Full { colors, .. } | ColoringFile::Bare(colors) => colors,
        }
    }
}

/// `{"graph": .., "vertices": [..]}` or a bare vertex array.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeFile {
    Full {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        graph: Option<GraphSpec>,
        vertices: Vec<usize>,
    },
    Bare(Vec<usize>),
}

impl CodeFile {
    pub fn graph(&self) -> Option<&GraphSpec> {
        match self {
            CodeFile::Full { graph, .. } => graph.as_ref(),
            CodeFile::Bare(_) => None,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        match self {
            CodeFile::Full { vertices, .. } | CodeFile::Bare(vertices) => vertices,
        }
    }
}

/// `[[..]]` or `{"s": [[..]]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MatrixFile {
    Wrapped { s: Vec<Vec<Cell>> },
    Bare(Vec<Vec<Cell>>),
}

impl MatrixFile {
    pub fn matrix(&self) -> Result<RatMatrix, CliError> {
        match self {
            MatrixFile::Wrapped { s } | MatrixFile::Bare(s) => matrix_from_cells(s),
        }
    }
}

/// `{"graph"|"matrix": .., "f": [[..]], "s": [[..]]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct StructureFile {
    #[serde(default)]
    pub graph: Option<GraphSpec>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Cell>>>,
    pub f: Vec<Vec<Cell>>,
    pub s: Vec<Vec<Cell>>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn parse_row(text: &str) -> Result<Vec<Rational>, CliError> {
    let cells: Vec<Cell> = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("row {text:?}: {e}")))?;
    row_from_cells(&cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::frac;

    #[test]
    fn cells_accept_numbers_and_strings() {
        let row = parse_row(r#"[1, "-3/6", "4"]"#).unwrap();
        assert_eq!(row, vec![int(1), frac(-1, 2), int(4)]);
        assert!(parse_row(r#"["x"]"#).is_err());
        assert!(parse_row("[1.5]").is_err());
    }

    #[test]
    fn coloring_and_code_shapes() {
        let c: ColoringFile =
            serde_json::from_str(r#"{"graph":{"gen":"hamming","n":1,"q":2},"colors":[0,1]}"#)
                .unwrap();
        assert_eq!(c.colors(), &[0, 1]);
        assert!(c.graph().is_some());
        let c: ColoringFile = serde_json::from_str("[0,0,1]").unwrap();
        assert_eq!(c.colors(), &[0, 0, 1]);

        let code: CodeFile = serde_json::from_str(r#"{"vertices":[3,1]}"#).unwrap();
        assert_eq!(code.vertices(), &[3, 1]);
        assert!(code.graph().is_none());
    }

    #[test]
    fn matrix_files() {
        let m: MatrixFile = serde_json::from_str(r#"{"s":[["0","7"],[1,6]]}"#).unwrap();
        assert_eq!(m.matrix().unwrap(), RatMatrix::from_ints(&[[0, 7], [1, 6]]));
        let m: MatrixFile = serde_json::from_str(r#"[["1/2"]]"#).unwrap();
        assert_eq!(m.matrix().unwrap().get(0, 0), &frac(1, 2));
    }
}
