//! Seeded trajectory simulation.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded through
//! `SeedableRng::seed_from_u64`. Uniform variates in `[0, 1)` take the top 53
//! bits of `next_u64`. Per-trial seeds are derived with [`mix_seed`], which
//! chains the SplitMix64 finalizer over `(seed, row, trial)`. Both algorithms
//! are fixed: changing either changes every recorded seed-based output.
//!
//! Each step samples the next state by inverse CDF over the current row in
//! ascending column order; the last column with positive probability takes
//! any residual mass left by rounding or tolerance.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::matrix::MarkovChain;

/// A sampled path `states[0] = start, ..., states[steps]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub seed: u64,
    pub start: usize,
    pub states: Vec<usize>,
}

/// A Bernoulli proportion with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalEstimate {
    pub value: f64,
    pub trials: u64,
    pub stderr: f64,
}

impl EmpiricalEstimate {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        assert!(trials > 0, "at least one trial is required");
        let value = hits as f64 / trials as f64;
        EmpiricalEstimate {
            value,
            trials,
            stderr: (value * (1.0 - value) / trials as f64).sqrt(),
        }
    }

    /// `|value - expected| <= k * stderr`.
    pub fn agrees_with(&self, expected: f64, k: f64) -> bool {
        (self.value - expected).abs() <= k * self.stderr
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `trial` of row `row` under master seed `seed`.
pub fn mix_seed(seed: u64, row: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ row) ^ trial)
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

struct Sampler<'a> {
    chain: &'a MarkovChain,
    // Last column with positive probability, per row.
    last_positive: Vec<usize>,
}

impl<'a> Sampler<'a> {
    fn new(chain: &'a MarkovChain) -> Result<Self> {
        let n = chain.dim();
        let last_positive = (0..n)
            .map(|i| {
                let mass: f64 = (0..n).map(|j| chain.prob(i, j)).sum();
                if mass <= chain.tol() {
                    return Err(Error::DegenerateRow { row: i });
                }
                Ok((0..n).rev().find(|&j| chain.prob(i, j) > 0.0).unwrap())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sampler {
            chain,
            last_positive,
        })
    }

    fn step(&self, from: usize, rng: &mut ChaCha8Rng) -> usize {
        let u = uniform(rng);
        let mut cum = 0.0;
        for j in 0..self.last_positive[from] {
            cum += self.chain.prob(from, j);
            if u < cum {
                return j;
            }
        }
        self.last_positive[from]
    }
}

/// Samples `steps` transitions from `start`.
pub fn simulate(chain: &MarkovChain, start: usize, steps: usize, seed: u64) -> Result<Trajectory> {
    chain.matrix().check_index(start)?;
    let sampler = Sampler::new(chain)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states = Vec::with_capacity(steps + 1);
    let mut here = start;
    states.push(here);
    for _ in 0..steps {
        here = sampler.step(here, &mut rng);
        states.push(here);
    }
    Ok(Trajectory {
        seed,
        start,
        states,
    })
}

/// Monte Carlo estimate of the `m`-step transition matrix.
///
/// Entry `(i, j)` is the fraction of `trials` runs from `i` that sit at `j`
/// after `m` steps. Trial `t` from row `i` uses seed `mix_seed(seed, i, t)`.
pub fn empirical_transition(
    chain: &MarkovChain,
    m: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<Vec<EmpiricalEstimate>>> {
    assert!(m >= 1, "m must be positive");
    assert!(trials >= 1, "trials must be positive");
    let sampler = Sampler::new(chain)?;
    let n = chain.dim();
    Ok((0..n)
        .map(|i| {
            let mut counts = vec![0u64; n];
            for t in 0..trials {
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, i as u64, t));
                let mut here = i;
                for _ in 0..m {
                    here = sampler.step(here, &mut rng);
                }
                counts[here] += 1;
            }
            counts
                .into_iter()
                .map(|c| EmpiricalEstimate::from_counts(c, trials))
                .collect()
        })
        .collect())
}

/// Fraction of runs from `j` that come back to `j` within `horizon` steps.
///
/// A lower-bound estimate of the return probability `f_jj`.
pub fn estimate_return_frequency(
    chain: &MarkovChain,
    j: usize,
    horizon: usize,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalEstimate> {
    chain.matrix().check_index(j)?;
    assert!(trials >= 1, "trials must be positive");
    let sampler = Sampler::new(chain)?;
    let mut returns = 0;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, j as u64, t));
        let mut here = j;
        for _ in 0..horizon {
            here = sampler.step(here, &mut rng);
            if here == j {
                returns += 1;
                break;
            }
        }
    }
    Ok(EmpiricalEstimate::from_counts(returns, trials))
}
