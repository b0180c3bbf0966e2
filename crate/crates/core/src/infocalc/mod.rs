//! Exact information measures over discrete joint distributions, and
//! Gaussian log-determinant rate terms.

mod coding;
mod gaussian;
mod joint;

pub use coding::{CodingDistribution, InputLayer, Mode, ProductInput};
pub use gaussian::{gauss_cut_rate, gauss_cut_rate_transposed, gauss_logdet_general};
pub use joint::{assemble_input_output, assemble_joint, JointDistribution, Var};

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Variable-set helpers for building MI queries.
pub mod vars {
    use super::Var;
    use crate::NodeSet;

    pub fn x(s: NodeSet) -> Vec<Var> {
        s.iter().map(Var::X).collect()
    }

    pub fn u(s: NodeSet) -> Vec<Var> {
        s.iter().map(Var::U).collect()
    }

    pub fn y(s: NodeSet) -> Vec<Var> {
        s.iter().map(Var::Y).collect()
    }

    pub fn yhat(s: NodeSet) -> Vec<Var> {
        s.iter().map(Var::Yhat).collect()
    }

    /// Concatenate variable lists.
    pub fn join(parts: &[&[Var]]) -> Vec<Var> {
        parts.iter().flat_map(|p| p.iter().copied()).collect()
    }
}
