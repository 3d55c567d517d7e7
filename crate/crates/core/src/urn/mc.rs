//! Seeded Monte Carlo estimate of the with-replacement expectation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;

use super::dist::TypeDistribution;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard error of the mean; zero for a single trial.
    pub std_error: f64,
    pub trials: u64,
}

/// Draws `t` i.i.d. types per trial and averages the number of distinct ones.
pub fn mc_expected_types(dist: &TypeDistribution, t: u64, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let sampler =
        WeightedAliasIndex::new(dist.probs_f64().to_vec()).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // seen[i] == trial + 1 marks type i as drawn in the current trial.
    let mut seen = vec![0u64; dist.len()];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for trial in 1..=trials {
        let mut distinct = 0u64;
        for _ in 0..t {
            let i = sampler.sample(&mut rng);
            if seen[i] != trial {
                seen[i] = trial;
                distinct += 1;
            }
        }
        let d = distinct as f64;
        sum += d;
        sum_sq += d * d;
    }
    let n = trials as f64;
    let mean = sum / n;
    let std_error = if trials > 1 {
        ((sum_sq - n * mean * mean).max(0.0) / (n - 1.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        trials,
    })
}
