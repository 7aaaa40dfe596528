//! Synthetic datasets, deterministic per seed.

use super::rng::SplitMix64;
use crate::error::{Error, Result};
use crate::kernels::PointSet;

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Uniform in the unit cube [0,1)^d.
    UniformCube,
    /// `clusters` isotropic gaussians with uniform centers in [0,1)^d.
    GaussianMixture { clusters: usize, sigma: f64 },
    /// Sliding windows over a 1-D signal: row r is
    /// `signal(r*stride .. r*stride + d)` plus gaussian noise. The signal
    /// is a sum of unit sinusoids with integer periods (in samples), so a
    /// window shifted by a full period is byte-identical at zero noise.
    SignalWindows {
        periods: Vec<u64>,
        noise: f64,
        stride: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSpec {
    pub generator: Generator,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
}

/// Signal sample at integer time t: sum of sin(2π (t mod p) / p) over the
/// configured periods. The modulo keeps equal phases bit-equal.
fn signal_sample(t: u64, periods: &[u64]) -> f64 {
    periods
        .iter()
        .map(|&p| (std::f64::consts::TAU * ((t % p) as f64) / p as f64).sin())
        .sum()
}

pub fn generate(spec: &DatasetSpec) -> Result<PointSet> {
    if spec.n == 0 {
        return Err(Error::Spec("dataset needs n >= 1".into()));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let mut values = Vec::with_capacity(spec.n * spec.dim);
    match &spec.generator {
        Generator::UniformCube => {
            for _ in 0..spec.n * spec.dim {
                values.push(rng.next_f64());
            }
        }
        Generator::GaussianMixture { clusters, sigma } => {
            if *clusters == 0 {
                return Err(Error::Spec("gaussian mixture needs >= 1 cluster".into()));
            }
            let mut centers = Vec::with_capacity(clusters * spec.dim);
            for _ in 0..clusters * spec.dim {
                centers.push(rng.next_f64());
            }
            for _ in 0..spec.n {
                let c = rng.next_below(*clusters as u64) as usize;
                for t in 0..spec.dim {
                    values.push(centers[c * spec.dim + t] + sigma * rng.next_gaussian());
                }
            }
        }
        Generator::SignalWindows {
            periods,
            noise,
            stride,
        } => {
            if periods.is_empty() || periods.contains(&0) {
                return Err(Error::Spec("signal windows need nonzero periods".into()));
            }
            if *stride == 0 {
                return Err(Error::Spec("signal windows need stride >= 1".into()));
            }
            for r in 0..spec.n {
                let base = (r * stride) as u64;
                for c in 0..spec.dim {
                    let mut v = signal_sample(base + c as u64, periods);
                    if *noise > 0.0 {
                        v += noise * rng.next_gaussian();
                    }
                    values.push(v);
                }
            }
        }
    }
    PointSet::new(spec.n, spec.dim, values)
}
