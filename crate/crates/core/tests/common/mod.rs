//! Test oracles written independently of the library: brute-force joint
//! enumeration for information quantities and direct transcriptions of the
//! Gaussian rate formulas.

#![allow(dead_code)]

use std::collections::HashMap;

use nncbound::infocalc::{CodingDistribution, InputLayer};
use nncbound::{DmNetwork, NodeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random pmf with full support.
pub fn random_pmf(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-3)
        .collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|v| v / s).collect()
}

/// Uniformly random subset of `pool`.
pub fn random_subset(rng: &mut ChaCha8Rng, pool: NodeSet) -> NodeSet {
    pool.iter()
        .filter(|_| rng.gen_bool(0.5))
        .fold(NodeSet::EMPTY, NodeSet::with)
}

pub fn product(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

/// Mixed-radix digits, last position fastest.
pub fn digits(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut d = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        d[k] = index % sizes[k];
        index /= sizes[k];
    }
    d
}

pub fn random_dm(
    rng: &mut ChaCha8Rng,
    x: Vec<usize>,
    y: Vec<usize>,
    dests: Vec<NodeSet>,
) -> DmNetwork {
    let ny = product(&y);
    let channel: Vec<f64> = (0..product(&x)).flat_map(|_| random_pmf(rng, ny)).collect();
    DmNetwork::new(x, y, channel, dests).expect("valid random network")
}

/// Plain-mode coding distribution with `|Q| = 1`, stored in the oracle's own layout.
#[derive(Debug, Clone)]
pub struct PlainDist {
    /// `[k][x]`
    pub inputs: Vec<Vec<f64>>,
    /// `[k][y·|X_k| + x][ŷ]`
    pub comp: Vec<Vec<Vec<f64>>>,
}

impl PlainDist {
    pub fn yhat_sizes(&self) -> Vec<usize> {
        self.comp.iter().map(|c| c[0].len()).collect()
    }

    pub fn to_lib(&self) -> CodingDistribution {
        CodingDistribution::new(
            vec![1.0],
            InputLayer::Plain(self.inputs.iter().map(|p| vec![p.clone()]).collect()),
            self.comp.iter().map(|c| vec![c.clone()]).collect(),
            self.yhat_sizes(),
        )
        .expect("valid distribution")
    }

    pub fn uniform_identity(net: &DmNetwork) -> Self {
        let inputs = net
            .x_sizes()
            .iter()
            .map(|&s| vec![1.0 / s as f64; s])
            .collect();
        let comp = (0..net.n_nodes())
            .map(|k| {
                let (xs, ys) = (net.x_sizes()[k], net.y_sizes()[k]);
                (0..ys * xs)
                    .map(|row| {
                        (0..ys)
                            .map(|yh| f64::from(u8::from(yh == row / xs)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        PlainDist { inputs, comp }
    }
}

/// Random inputs and compression channels with `|Ŷ_k| = yhat`; with
/// probability `p_constant` a node's compression is constant.
pub fn random_plain(
    rng: &mut ChaCha8Rng,
    net: &DmNetwork,
    yhat: usize,
    p_constant: f64,
) -> PlainDist {
    let inputs = net.x_sizes().iter().map(|&s| random_pmf(rng, s)).collect();
    let comp = (0..net.n_nodes())
        .map(|k| {
            let rows = net.x_sizes()[k] * net.y_sizes()[k];
            if rng.gen_bool(p_constant) {
                vec![vec![1.0]; rows]
            } else {
                (0..rows).map(|_| random_pmf(rng, yhat)).collect()
            }
        })
        .collect();
    PlainDist { inputs, comp }
}

/// Coordinates of the oracle joint: `X_k ↦ k`, `Y_k ↦ n+k`, `Ŷ_k ↦ 2n+k`.
pub struct Joint {
    pub n: usize,
    pub atoms: Vec<(Vec<usize>, f64)>,
}

impl Joint {
    pub fn new(net: &DmNetwork, dist: &PlainDist) -> Self {
        let n = net.n_nodes();
        let (xs, ys) = (net.x_sizes().to_vec(), net.y_sizes().to_vec());
        let hs = dist.yhat_sizes();
        let (nx, ny, nh) = (product(&xs), product(&ys), product(&hs));
        let mut atoms = Vec::new();
        for xi in 0..nx {
            let x = digits(xi, &xs);
            let px: f64 = (0..n).map(|k| dist.inputs[k][x[k]]).product();
            for yi in 0..ny {
                let pyx = net.channel()[xi * ny + yi];
                if px * pyx == 0.0 {
                    continue;
                }
                let y = digits(yi, &ys);
                for hi in 0..nh {
                    let h = digits(hi, &hs);
                    let ph: f64 = (0..n)
                        .map(|k| dist.comp[k][y[k] * xs[k] + x[k]][h[k]])
                        .product();
                    let p = px * pyx * ph;
                    if p > 0.0 {
                        atoms.push(([x.clone(), y.clone(), h].concat(), p));
                    }
                }
            }
        }
        Joint { n, atoms }
    }

    pub fn x(&self, s: NodeSet) -> Vec<usize> {
        s.iter().collect()
    }

    pub fn y(&self, s: NodeSet) -> Vec<usize> {
        s.iter().map(|k| self.n + k).collect()
    }

    pub fn yhat(&self, s: NodeSet) -> Vec<usize> {
        s.iter().map(|k| 2 * self.n + k).collect()
    }

    pub fn entropy(&self, coords: &[usize]) -> f64 {
        let mut m: HashMap<Vec<usize>, f64> = HashMap::new();
        for (a, p) in &self.atoms {
            *m.entry(coords.iter().map(|&c| a[c]).collect()).or_default() += p;
        }
        m.values()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    }

    /// `I(A; B | C)`.
    pub fn mi(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let cat = |parts: &[&[usize]]| parts.concat();
        self.entropy(&cat(&[a, c])) + self.entropy(&cat(&[b, c]))
            - self.entropy(&cat(&[a, b, c]))
            - self.entropy(c)
    }

    /// Noisy network coding constraint for cut `s`, destination `d`.
    pub fn nnc(&self, s: NodeSet, d: usize) -> f64 {
        let n = self.n;
        let sc = s.complement(n);
        let yd = vec![n + d];
        let pos = self.mi(
            &self.x(s),
            &[self.yhat(sc), yd.clone()].concat(),
            &self.x(sc),
        );
        let cond = [self.x(NodeSet::full(n)), self.yhat(sc), yd].concat();
        pos - self.mi(&self.y(s), &self.yhat(s), &cond)
    }

    /// Cutset value `I(X(S); Y(Sᶜ) | X(Sᶜ))`.
    pub fn cutset(&self, s: NodeSet) -> f64 {
        let sc = s.complement(self.n);
        self.mi(&self.x(s), &self.y(sc), &self.x(sc))
    }
}

/// Rank over GF(2) by Gaussian elimination on row bitmasks.
pub fn gf2_rank(mut rows: Vec<u32>) -> usize {
    let mut rank = 0;
    for bit in 0..32 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

pub fn cap(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}

/// Log-spaced points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(move |i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
}

fn dense_max(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    log_grid(lo, hi, 400_001)
        .map(f)
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Two-way relay channel sums `(NNC, AF, CF)` by dense search.
pub fn twrc_oracle(d: f64, gamma: f64, p: f64) -> (f64, f64, f64) {
    let g12 = 1.0;
    let g13 = d.powf(-gamma / 2.0);
    let g23 = (1.0 - d).powf(-gamma / 2.0);
    let (g21, g31, g32) = (g12, g13, g23);
    let user =
        |gr: f64, gd: f64, s2: f64| cap((gr * gr * p + (1.0 + s2) * gd * gd * p) / (1.0 + s2));
    let nnc = dense_max(1e-8, 1e10, |s2| {
        let r1 = user(g13, g12, s2).min(cap(g12 * g12 * p + g32 * g32 * p) - cap(1.0 / s2));
        let r2 = user(g23, g21, s2).min(cap(g21 * g21 * p + g31 * g31 * p) - cap(1.0 / s2));
        r1.max(0.0) + r2.max(0.0)
    });
    let a_max = (p / (g13 * g13 * p + g23 * g23 * p + 1.0)).sqrt();
    let af = dense_max(a_max * 1e-8, a_max, |a| {
        let a1 = 1.0 + p * (g12 * g12 + a * a * g32 * g32 * g13 * g13) / (g32 * g32 * a * a + 1.0);
        let a2 = 1.0 + p * (g21 * g21 + a * a * g31 * g31 * g23 * g23) / (g31 * g31 * a * a + 1.0);
        let b1 = 2.0 * p * a * g32 * g13 * g12 / (g32 * g32 * a * a + 1.0);
        let b2 = 2.0 * p * a * g31 * g23 * g21 / (g31 * g31 * a * a + 1.0);
        let r = |a: f64, b: f64| (0.5 * ((a + (a * a - b * b).sqrt()) / 2.0).log2()).max(0.0);
        r(a1, b1) + r(a2, b2)
    });
    let m = (g32 * g32).min(g31 * g31) * p;
    let t1 = ((1.0 + g12 * g12 * p) * (1.0 + g13 * g13 * p) - (g12 * g13 * p).powi(2)) / m;
    let t2 = ((1.0 + g21 * g21 * p) * (1.0 + g23 * g23 * p) - (g21 * g23 * p).powi(2)) / m;
    let s_min = t1.max(t2);
    let cf = dense_max(s_min, s_min * 1e6, |s2| {
        user(g13, g12, s2).max(0.0) + user(g23, g21, s2).max(0.0)
    });
    (nnc, af, cf)
}

/// Interference relay channel sums `(NNC-T2, NNC-T3, CF, HF)` by dense search.
pub fn irc_oracle(g: [f64; 6], r0: f64, p: f64) -> (f64, f64, f64, f64) {
    let [g13, g23, g14, g24, g15, g25] = g;
    let sq = |v: f64| v * v;
    let cross1 = sq(g13 * g24 - g23 * g14) * p * p;
    let cross2 = sq(g13 * g25 - g23 * g15) * p * p;
    let aided1 = |s2: f64| cap((g13 * g13 + (1.0 + s2) * g14 * g14) * p / (1.0 + s2));
    let aided2 = |s2: f64| cap((g23 * g23 + (1.0 + s2) * g25 * g25) * p / (1.0 + s2));
    let t2 = |s2: f64| {
        let pen = cap(1.0 / s2);
        let c1 = (cap(g14 * g14 * p) + r0 - pen).min(aided1(s2)).max(0.0);
        let c2 = (cap(g25 * g25 * p) + r0 - pen).min(aided2(s2)).max(0.0);
        let sums = [
            cap((g14 * g14 + g24 * g24) * p) + r0 - pen,
            cap(
                ((g13 * g13 + g23 * g23) * p + (1.0 + s2) * (g14 * g14 + g24 * g24) * p + cross1)
                    / (1.0 + s2),
            ),
            cap((g15 * g15 + g25 * g25) * p) + r0 - pen,
            cap(
                ((g13 * g13 + g23 * g23) * p + (1.0 + s2) * (g25 * g25 + g15 * g15) * p + cross2)
                    / (1.0 + s2),
            ),
        ];
        (c1 + c2).min(sums.iter().fold(f64::INFINITY, |a, &b| a.min(b.max(0.0))))
    };
    let hashed1 = |s2: f64| {
        cap(g14 * g14 * p / (g24 * g24 * p + 1.0)) + r0
            - cap(((g23 * g23 + g24 * g24) * p + 1.0) / ((g24 * g24 * p + 1.0) * s2))
    };
    let hashed2 = |s2: f64| {
        cap(g25 * g25 * p / (g15 * g15 * p + 1.0)) + r0
            - cap(((g13 * g13 + g15 * g15) * p + 1.0) / ((g15 * g15 * p + 1.0) * s2))
    };
    let wz1 = |s2: f64| {
        cap(((g13 * g13 + (1.0 + s2) * g14 * g14) * p + cross1)
            / (1.0 + s2 + (g23 * g23 + (1.0 + s2) * g24 * g24) * p))
    };
    let wz2 = |s2: f64| {
        cap(((g23 * g23 + (1.0 + s2) * g25 * g25) * p + cross2)
            / (1.0 + s2 + (g13 * g13 + (1.0 + s2) * g15 * g15) * p))
    };
    let t3 = |s2: f64| hashed1(s2).min(wz1(s2)).max(0.0) + hashed2(s2).min(wz2(s2)).max(0.0);
    let a1 = (g13 * g13 + g14 * g14) * p + (g23 * g23 + g24 * g24) * p + 1.0;
    let a2 = (g13 * g13 + g15 * g15) * p + (g23 * g23 + g25 * g25) * p + 1.0;
    let k1 = (cross1 + a1) / (g14 * g14 * p + g24 * g24 * p + 1.0);
    let k2 = (cross2 + a2) / (g15 * g15 * p + g25 * g25 * p + 1.0);
    let scale = 1.0 / (2f64.powf(2.0 * r0) - 1.0);
    let (cf_lo, hf_hi) = (scale * k1.max(k2), scale * k1.min(k2));
    let nnc_t2 = dense_max(1e-8, 1e10, t2);
    let nnc_t3 = dense_max(1e-8, 1e10, t3);
    let cf = dense_max(cf_lo, cf_lo * 1e8, |s2| wz1(s2).max(0.0) + wz2(s2).max(0.0));
    let hf = dense_max(hf_hi * 1e-8, hf_hi, |s2| {
        hashed1(s2).max(0.0) + hashed2(s2).max(0.0)
    });
    (nnc_t2, nnc_t3, cf, hf)
}

pub const IRC_GAINS: [f64; 6] = [0.1, 0.5, 1.0, 0.5, 0.5, 1.0];

/// Read a CSV into its header and numeric rows; empty cells become NaN.
pub fn read_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r
        .headers()
        .expect("header")
        .iter()
        .map(str::to_owned)
        .collect();
    let rows = r
        .records()
        .map(|rec| {
            rec.expect("record")
                .iter()
                .map(|c| c.parse().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    (header, rows)
}

pub fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i]).collect()
}
