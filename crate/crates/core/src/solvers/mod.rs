//! Welfare maximizers: exact assignment, brute-force verification, maximum
//! cardinality bipartite matching, and a greedy general-graph matcher.

mod bipartite;
mod brute;
mod graph;
mod hungarian;

pub use bipartite::{max_cardinality_bipartite, BipartiteGraph};
pub use brute::{brute_force_opt, BRUTE_FORCE_MAX_N};
pub use graph::{
    brute_force_matchings, greedy_general_matching, is_matching, Edge, EdgeWeightedGraph,
};
pub use hungarian::hungarian_max_weight;

use crate::{Error, Result};

/// Rectangular matrix of non-negative finite weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<f64>>,
}

impl WeightMatrix {
    pub fn new(data: Vec<Vec<f64>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        for row in &data {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            if let Some(w) = row.iter().find(|w| !w.is_finite() || **w < 0.0) {
                return Err(Error::InvalidParameters(format!("invalid weight {w}")));
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i][j]
    }

    pub fn data(&self) -> &[Vec<f64>] {
        &self.data
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }
}
