use nalgebra::DMatrix;

use crate::netmodel::{GaussianNetwork, NodeSet};
use crate::{Error, Result};

const SYM_TOL: f64 = 1e-10;

/// `log₂ det M` for a symmetric positive-definite matrix, via Cholesky.
pub fn gauss_logdet_general(m: &DMatrix<f64>) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Invalid(
            "log-determinant needs a square matrix".into(),
        ));
    }
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (m[(i, j)], m[(j, i)]);
            if (a - b).abs() > SYM_TOL * (1.0 + a.abs().max(b.abs())) {
                return Err(Error::NotPositiveDefinite);
            }
        }
    }
    let chol = m.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l_dirty();
    Ok(2.0 * (0..n).map(|i| l[(i, i)].log2()).sum::<f64>())
}

/// `½ log₂ det(I + (P/2) G(S) G(S)ᵀ)` for a proper nonempty cut.
pub fn gauss_cut_rate(net: &GaussianNetwork, s: NodeSet) -> Result<f64> {
    let n = net.n_nodes();
    if s.is_empty() || s == NodeSet::full(n) || !s.is_subset(NodeSet::full(n)) {
        return Err(Error::Invalid(format!(
            "{s} is not a proper nonempty cut of a {n}-node network"
        )));
    }
    let g = net.gain_submatrix(s);
    let rows = g.nrows();
    let m = DMatrix::identity(rows, rows) + (&g * g.transpose()) * (net.power() / 2.0);
    Ok(0.5 * gauss_logdet_general(&m)?)
}

/// Same quantity through the `|S|×|S|` Gram matrix `G(S)ᵀ G(S)`.
pub fn gauss_cut_rate_transposed(net: &GaussianNetwork, s: NodeSet) -> Result<f64> {
    let g = net.gain_submatrix(s);
    let cols = g.ncols();
    let m = DMatrix::identity(cols, cols) + (g.transpose() * &g) * (net.power() / 2.0);
    Ok(0.5 * gauss_logdet_general(&m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn net(g: Vec<Vec<f64>>, p: f64) -> GaussianNetwork {
        let n = g.len();
        GaussianNetwork::multicast(g, p, NodeSet::full(n)).unwrap()
    }

    #[test]
    fn logdet_small_cases() {
        assert_eq!(gauss_logdet_general(&DMatrix::identity(3, 3)).unwrap(), 0.0);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 4.0]));
        assert!((gauss_logdet_general(&d).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn logdet_rejects_indefinite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert_eq!(gauss_logdet_general(&m), Err(Error::NotPositiveDefinite));
        let asym = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 2.0]);
        assert_eq!(gauss_logdet_general(&asym), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn logdet_matches_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let m = &a * a.transpose() + DMatrix::identity(n, n) * 0.1;
            let eig = m.clone().symmetric_eigen();
            let oracle: f64 = eig.eigenvalues.iter().map(|l: &f64| l.log2()).sum();
            assert!((gauss_logdet_general(&m).unwrap() - oracle).abs() < 1e-9);
        }
    }

    #[test]
    fn cut_rate_examples() {
        let scalar = net(vec![vec![0.0, 1.0], vec![0.0, 0.0]], 2.0);
        assert!((gauss_cut_rate(&scalar, NodeSet::from_mask(1)).unwrap() - 0.5).abs() < 1e-15);
        let zero = net(vec![vec![0.0; 3]; 3], 5.0);
        assert_eq!(gauss_cut_rate(&zero, NodeSet::from_mask(1)).unwrap(), 0.0);
        // G(S) = I₂ for S = {1,2} → {3,4}
        let mut g = vec![vec![0.0; 4]; 4];
        g[0][2] = 1.0;
        g[1][3] = 1.0;
        let two = net(g, 2.0);
        assert!((gauss_cut_rate(&two, NodeSet::from_mask(0b0011)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sylvester_identity_and_monotone_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            let g: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let lo = net(g.clone(), 0.5);
            let hi = net(g, 4.0);
            for s in NodeSet::full(n)
                .subsets()
                .filter(|s| !s.is_empty() && s.len() < n)
            {
                let a = gauss_cut_rate(&lo, s).unwrap();
                let b = gauss_cut_rate_transposed(&lo, s).unwrap();
                assert!((a - b).abs() < 1e-9);
                assert!(gauss_cut_rate(&hi, s).unwrap() >= a);
            }
        }
    }

    #[test]
    fn improper_cuts_rejected() {
        let g = net(vec![vec![0.0; 3]; 3], 1.0);
        assert!(gauss_cut_rate(&g, NodeSet::EMPTY).is_err());
        assert!(gauss_cut_rate(&g, NodeSet::full(3)).is_err());
    }
}
