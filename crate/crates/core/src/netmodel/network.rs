use nalgebra::DMatrix;

use super::{MixedRadix, NodeSet, MAX_NODES};
use crate::{Error, Result};

/// Cap on dense tensor sizes (channel tensors and joint distributions).
pub const MAX_JOINT_STATES: usize = 1 << 24;

const ROW_TOL: f64 = 1e-12;

/// A discrete memoryless network `p(y₁,…,y_N | x₁,…,x_N)`.
///
/// The channel is stored densely: entry `x_index * |𝒴| + y_index`, where both
/// indices are mixed-radix with the last node varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct DmNetwork {
    x_sizes: Vec<usize>,
    y_sizes: Vec<usize>,
    channel: Vec<f64>,
    dests: Vec<NodeSet>,
}

impl DmNetwork {
    pub fn new(
        x_sizes: Vec<usize>,
        y_sizes: Vec<usize>,
        channel: Vec<f64>,
        dests: Vec<NodeSet>,
    ) -> Result<Self> {
        let n = x_sizes.len();
        if n > MAX_NODES {
            return Err(Error::TooManyNodes(n));
        }
        if n == 0 || y_sizes.len() != n || dests.len() != n {
            return Err(Error::Invalid(format!(
                "inconsistent node counts: {} input alphabets, {} output alphabets, {} destination sets",
                n,
                y_sizes.len(),
                dests.len()
            )));
        }
        if x_sizes.iter().chain(&y_sizes).any(|&s| s == 0) {
            return Err(Error::Invalid("alphabet sizes must be at least 1".into()));
        }
        let full = NodeSet::full(n);
        if let Some(k) = dests.iter().position(|d| !d.is_subset(full)) {
            return Err(Error::Invalid(format!(
                "destination set of node {} names a node outside the network",
                k + 1
            )));
        }
        let nx = checked_product(&x_sizes)?;
        let ny = checked_product(&y_sizes)?;
        let count = nx as u128 * ny as u128;
        if count > MAX_JOINT_STATES as u128 {
            return Err(Error::StateOverflow {
                count,
                cap: MAX_JOINT_STATES,
            });
        }
        if channel.len() != nx * ny {
            return Err(Error::Invalid(format!(
                "channel tensor has {} entries, expected {}",
                channel.len(),
                nx * ny
            )));
        }
        for (row, probs) in channel.chunks(ny).enumerate() {
            if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
                return Err(Error::Invalid(format!(
                    "channel row {row} has a probability outside [0,1]"
                )));
            }
            let sum: f64 = probs.iter().sum();
            if (sum - 1.0).abs() > ROW_TOL {
                return Err(Error::Normalization(format!(
                    "channel row {row} sums to {sum}"
                )));
            }
        }
        Ok(DmNetwork {
            x_sizes,
            y_sizes,
            channel,
            dests,
        })
    }

    /// Build the channel tensor from a transition function `p(y^N | x^N)`.
    pub fn from_transition<F>(
        x_sizes: Vec<usize>,
        y_sizes: Vec<usize>,
        dests: Vec<NodeSet>,
        mut p: F,
    ) -> Result<Self>
    where
        F: FnMut(&[usize], &[usize]) -> f64,
    {
        let xr = radix(&x_sizes)?;
        let yr = radix(&y_sizes)?;
        let count = xr.total() as u128 * yr.total() as u128;
        if count > MAX_JOINT_STATES as u128 {
            return Err(Error::StateOverflow {
                count,
                cap: MAX_JOINT_STATES,
            });
        }
        let mut channel = Vec::with_capacity(xr.total() * yr.total());
        let mut x = vec![0; x_sizes.len()];
        loop {
            let mut y = vec![0; y_sizes.len()];
            loop {
                channel.push(p(&x, &y));
                if !yr.increment(&mut y) {
                    break;
                }
            }
            if !xr.increment(&mut x) {
                break;
            }
        }
        DmNetwork::new(x_sizes, y_sizes, channel, dests)
    }

    /// Deterministic network `y_k = g(x^N)[k]`.
    pub fn deterministic<F>(
        x_sizes: Vec<usize>,
        y_sizes: Vec<usize>,
        dests: Vec<NodeSet>,
        mut g: F,
    ) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Vec<usize>,
    {
        DmNetwork::from_transition(
            x_sizes,
            y_sizes,
            dests,
            |x, y| {
                if g(x) == y {
                    1.0
                } else {
                    0.0
                }
            },
        )
    }

    pub fn n_nodes(&self) -> usize {
        self.x_sizes.len()
    }

    pub fn x_sizes(&self) -> &[usize] {
        &self.x_sizes
    }

    pub fn y_sizes(&self) -> &[usize] {
        &self.y_sizes
    }

    pub fn dests(&self) -> &[NodeSet] {
        &self.dests
    }

    /// `⋃_k D_k`, the multicast-completion destination set.
    pub fn all_destinations(&self) -> NodeSet {
        self.dests.iter().fold(NodeSet::EMPTY, |a, d| a.union(*d))
    }

    pub fn x_radix(&self) -> MixedRadix {
        MixedRadix::new(&self.x_sizes).expect("validated at construction")
    }

    pub fn y_radix(&self) -> MixedRadix {
        MixedRadix::new(&self.y_sizes).expect("validated at construction")
    }

    /// Row of `p(· | x^N)` for the mixed-radix input index.
    pub fn channel_row(&self, x_index: usize) -> &[f64] {
        let ny = self.channel.len() / self.x_radix().total();
        &self.channel[x_index * ny..(x_index + 1) * ny]
    }

    pub fn channel(&self) -> &[f64] {
        &self.channel
    }

    pub fn with_dests(mut self, dests: Vec<NodeSet>) -> Result<Self> {
        if dests.len() != self.n_nodes() {
            return Err(Error::Invalid(
                "destination list length differs from node count".into(),
            ));
        }
        self.dests = dests;
        Ok(self)
    }
}

/// Gaussian network `Y^N = G X^N + Z^N` with unit-variance noise and a
/// per-sender power constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNetwork {
    /// `gains[j][k]` is the gain from sender `j` into receiver `k`.
    gains: Vec<Vec<f64>>,
    power: f64,
    dests: Vec<NodeSet>,
}

impl GaussianNetwork {
    pub fn new(gains: Vec<Vec<f64>>, power: f64, dests: Vec<NodeSet>) -> Result<Self> {
        let n = gains.len();
        if n > MAX_NODES {
            return Err(Error::TooManyNodes(n));
        }
        if n == 0 || gains.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(
                "gain matrix must be square and nonempty".into(),
            ));
        }
        if gains.iter().flatten().any(|g| !g.is_finite()) {
            return Err(Error::Invalid("gains must be finite".into()));
        }
        if !(power >= 0.0 && power.is_finite()) {
            return Err(Error::Invalid(format!(
                "power must be finite and nonnegative, got {power}"
            )));
        }
        if dests.len() != n {
            return Err(Error::Invalid(
                "destination list length differs from node count".into(),
            ));
        }
        Ok(GaussianNetwork {
            gains,
            power,
            dests,
        })
    }

    /// Multicast network where every node's destination set is `d`.
    pub fn multicast(gains: Vec<Vec<f64>>, power: f64, d: NodeSet) -> Result<Self> {
        let n = gains.len();
        GaussianNetwork::new(gains, power, vec![d; n])
    }

    pub fn n_nodes(&self) -> usize {
        self.gains.len()
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn gain(&self, from: usize, to: usize) -> f64 {
        self.gains[from][to]
    }

    pub fn gains(&self) -> &[Vec<f64>] {
        &self.gains
    }

    pub fn dests(&self) -> &[NodeSet] {
        &self.dests
    }

    pub fn all_destinations(&self) -> NodeSet {
        self.dests.iter().fold(NodeSet::EMPTY, |a, d| a.union(*d))
    }

    /// `G(S)`: rows are the receivers in `Sᶜ`, columns the senders in `S`.
    pub fn gain_submatrix(&self, s: NodeSet) -> DMatrix<f64> {
        let n = self.n_nodes();
        let senders: Vec<usize> = s.iter().collect();
        let receivers: Vec<usize> = s.complement(n).iter().collect();
        DMatrix::from_fn(receivers.len(), senders.len(), |r, c| {
            self.gains[senders[c]][receivers[r]]
        })
    }

    pub fn with_power(&self, power: f64) -> Result<Self> {
        GaussianNetwork::new(self.gains.clone(), power, self.dests.clone())
    }
}

fn checked_product(sizes: &[usize]) -> Result<usize> {
    Ok(radix(sizes)?.total())
}

fn radix(sizes: &[usize]) -> Result<MixedRadix> {
    MixedRadix::new(sizes).ok_or(Error::StateOverflow {
        count: u128::MAX,
        cap: MAX_JOINT_STATES,
    })
}
