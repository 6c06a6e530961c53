//! Plain-text CSV for matrices and vectors: one row per line, each value with
//! 17 significant digits so that doubles round-trip exactly.

use std::fs;
use std::path::Path;

use super::matrix::{DenseMatrix, DenseVector};
use crate::error::{Error, Result};

/// Formats a double with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn matrix_to_csv(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// A vector is written as a column: one value per line.
pub fn vector_to_csv(v: &DenseVector) -> String {
    v.iter().map(|&x| fmt_f64(x) + "\n").collect()
}

pub fn matrix_from_csv(text: &str) -> std::result::Result<DenseMatrix, String> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("line {}: {e}: {tok:?}", i + 1))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    DenseMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn vector_from_csv(text: &str) -> std::result::Result<DenseVector, String> {
    let a = matrix_from_csv(text)?;
    if a.cols() != 1 {
        return Err(format!("expected a single column, got {}", a.cols()));
    }
    DenseVector::new(a.as_slice().to_vec()).map_err(|e| e.to_string())
}

pub fn write_matrix(path: &Path, a: &DenseMatrix) -> Result<()> {
    fs::write(path, matrix_to_csv(a)).map_err(|e| Error::io(path, e))
}

pub fn write_vector(path: &Path, v: &DenseVector) -> Result<()> {
    fs::write(path, vector_to_csv(v)).map_err(|e| Error::io(path, e))
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    matrix_from_csv(&text).map_err(|message| Error::Parse {
        path: path.into(),
        message,
    })
}

pub fn read_vector(path: &Path) -> Result<DenseVector> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    vector_from_csv(&text).map_err(|message| Error::Parse {
        path: path.into(),
        message,
    })
}
