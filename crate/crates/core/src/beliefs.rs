//! Probability distributions over the motif catalog.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::census::MotifCensus;
use crate::error::{GmmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PmfKind {
    /// Census counts normalized to sum to one.
    #[default]
    Explicit,
    /// Truncated Poisson over catalog indices, λ = mean census count.
    PoissonLiteral,
    /// Truncated Poisson over catalog indices, λ = count-weighted mean index.
    PoissonMeanIndex,
}

impl std::str::FromStr for PmfKind {
    type Err = GmmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(PmfKind::Explicit),
            "poisson-literal" => Ok(PmfKind::PoissonLiteral),
            "poisson-mean-index" => Ok(PmfKind::PoissonMeanIndex),
            other => Err(GmmError::invalid(format!("unknown pmf {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMode {
    Literal,
    MeanIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifDistribution {
    pub kind: PmfKind,
    pub probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
}

impl MotifDistribution {
    pub fn from_census(census: &MotifCensus, kind: PmfKind) -> Result<Self> {
        match kind {
            PmfKind::Explicit => explicit_pmf(census),
            PmfKind::PoissonLiteral => poisson_pmf(census, LambdaMode::Literal),
            PmfKind::PoissonMeanIndex => poisson_pmf(census, LambdaMode::MeanIndex),
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// `probs[i] = counts[i] / Σ counts`.
pub fn explicit_pmf(census: &MotifCensus) -> Result<MotifDistribution> {
    let total = census.total();
    if total == 0 {
        return Err(GmmError::NoObservableStructure);
    }
    let probs = census
        .counts
        .iter()
        .map(|&c| c as f64 / total as f64)
        .collect();
    Ok(MotifDistribution {
        kind: PmfKind::Explicit,
        probs,
        lambda: None,
    })
}

/// Poisson mass `λ^i e^-λ / i!` on indices `0..len`, renormalized over that range.
///
/// Evaluated in log space so large λ does not overflow.
pub fn poisson_weights(lambda: f64, len: usize) -> Result<Vec<f64>> {
    if len == 0 {
        return Err(GmmError::invalid("poisson support is empty"));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(GmmError::invalid(format!(
            "poisson lambda {lambda} must be finite and >= 0"
        )));
    }
    if lambda == 0.0 {
        let mut w = vec![0.0; len];
        w[0] = 1.0;
        return Ok(w);
    }
    let ln_lambda = lambda.ln();
    let mut log_fact = 0.0;
    let logs: Vec<f64> = (0..len)
        .map(|i| {
            if i > 0 {
                log_fact += (i as f64).ln();
            }
            i as f64 * ln_lambda - lambda - log_fact
        })
        .collect();
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unnorm: Vec<f64> = logs.iter().map(|l| (l - peak).exp()).collect();
    let sum: f64 = unnorm.iter().sum();
    Ok(unnorm.into_iter().map(|w| w / sum).collect())
}

pub fn poisson_pmf(census: &MotifCensus, mode: LambdaMode) -> Result<MotifDistribution> {
    let len = census.len();
    if len == 0 {
        return Err(GmmError::invalid("census is empty"));
    }
    let (lambda, kind) = match mode {
        LambdaMode::Literal => (census.total() as f64 / len as f64, PmfKind::PoissonLiteral),
        LambdaMode::MeanIndex => {
            let total = census.total();
            if total == 0 {
                return Err(GmmError::NoObservableStructure);
            }
            let weighted: f64 = census
                .counts
                .iter()
                .enumerate()
                .map(|(i, &c)| i as f64 * c as f64)
                .sum();
            (weighted / total as f64, PmfKind::PoissonMeanIndex)
        }
    };
    Ok(MotifDistribution {
        kind,
        probs: poisson_weights(lambda, len)?,
        lambda: Some(lambda),
    })
}

/// Inverse-CDF draw. Consumes exactly one `f64` from `rng`.
pub fn sample_motif<R: Rng + ?Sized>(dist: &MotifDistribution, rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in dist.probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // Rounding left `u` above the final partial sum.
    dist.probs
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("distribution has positive mass")
}
