use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use ndarray::Array2;
use serde::Serialize;

/// Square matrix with exact `i64` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix(Array2<i64>);

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix(Array2::zeros((dim, dim)))
    }

    pub fn identity(dim: usize) -> Self {
        IntMatrix(Array2::eye(dim))
    }

    /// Builds a matrix from row vectors.
    ///
    /// # Panics
    ///
    /// If the rows do not form a square matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        IntMatrix(Array2::from_shape_fn((n, n), |(i, j)| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.0[(row, col)]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: i64) {
        self.0[(row, col)] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.0.outer_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> bool {
        self * other == other * self
    }
}

/// Serialized as a list of rows.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl Ord for IntMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for IntMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix(self.0.dot(&rhs.0))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .outer_iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(" "))
            })
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}
