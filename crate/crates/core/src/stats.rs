//! Evaluation statistics: binomial degree fits, small-world ratios and
//! power-law exponents.

use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, ContinuousCDF, Discrete, StudentsT};

use crate::error::{GmmError, Result};
use crate::graph::{
    characteristic_path_length, degree_distribution, mean_clustering, DegreeDistribution, Graph,
};

/// Parameters counted by [`FitReport::aic`]: intercept, slope, error variance.
pub const FIT_PARAMETERS: f64 = 3.0;

/// Least-squares fit of observed on theoretical degree densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub coefficient: f64,
    pub intercept: f64,
    pub std_error: f64,
    pub r_squared: f64,
    pub rmse: f64,
    pub aic: f64,
    pub n_points: usize,
    /// Residual sum of squares.
    pub rss: f64,
}

/// Ordinary least squares of `y` on `x` with an intercept.
///
/// AIC is the Gaussian-likelihood form `n ln(RSS/n) + 2k` with `k = 3`; a
/// perfect fit gives `-inf`.
pub fn ols_fit(x: &[f64], y: &[f64]) -> Result<FitReport> {
    let n = x.len();
    if n != y.len() {
        return Err(GmmError::invalid("regression inputs differ in length"));
    }
    if n < 3 {
        return Err(GmmError::invalid(format!(
            "regression needs at least 3 points, got {n}"
        )));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let tss: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx <= f64::EPSILON * f64::EPSILON {
        return Err(GmmError::invalid("predictor has zero variance"));
    }
    if tss == 0.0 {
        return Err(GmmError::invalid("response has zero variance"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r_squared = (1.0 - rss / tss).clamp(0.0, 1.0);
    Ok(FitReport {
        coefficient: slope,
        intercept,
        std_error: (rss / (nf - 2.0) / sxx).sqrt(),
        r_squared,
        rmse: (rss / nf).sqrt(),
        aic: nf * (rss / nf).ln() + 2.0 * FIT_PARAMETERS,
        n_points: n,
        rss,
    })
}

/// Binomial(n-1, p) probabilities for degrees `0..n`.
pub fn binomial_density(n: usize, p: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(GmmError::EmptyGraph);
    }
    let dist = Binomial::new(p, (n - 1) as u64).map_err(|e| GmmError::invalid(e.to_string()))?;
    Ok((0..n as u64).map(|d| dist.pmf(d)).collect())
}

/// Regresses the observed degree density on the Binomial(n-1, p) density
/// over every degree bin `0..n`.
pub fn binomial_fit_report(g: &Graph, p: f64) -> Result<FitReport> {
    if !(p > 0.0 && p < 1.0) {
        return Err(GmmError::invalid(format!(
            "binomial p {p} must lie in (0, 1)"
        )));
    }
    binomial_fit_from_distribution(&degree_distribution(g)?, p)
}

/// Same fit for a precomputed distribution over `dd.size` nodes.
pub fn binomial_fit_from_distribution(dd: &DegreeDistribution, p: f64) -> Result<FitReport> {
    if !(p > 0.0 && p < 1.0) {
        return Err(GmmError::invalid(format!(
            "binomial p {p} must lie in (0, 1)"
        )));
    }
    if dd.density.len() > dd.size {
        return Err(GmmError::invalid(
            "a degree is not smaller than the node count",
        ));
    }
    let mut observed = dd.density.clone();
    observed.resize(dd.size, 0.0);
    let theoretical = binomial_density(dd.size, p)?;
    ols_fit(&theoretical, &observed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldStats {
    pub clustering: f64,
    pub path_length: f64,
    pub clustering_normalized: f64,
    pub path_length_normalized: f64,
}

/// Clustering and path length of `g`, also divided by the reference values
/// `c0` and `l0` of an unrewired lattice.
pub fn small_world_stats(g: &Graph, c0: f64, l0: f64) -> Result<SmallWorldStats> {
    if !(c0 > 0.0 && l0 > 0.0) {
        return Err(GmmError::invalid(format!(
            "normalizers must be positive, got C0={c0} L0={l0}"
        )));
    }
    let clustering = mean_clustering(g)?;
    let path_length = characteristic_path_length(g)?;
    Ok(SmallWorldStats {
        clustering,
        path_length,
        clustering_normalized: clustering / c0,
        path_length_normalized: path_length / l0,
    })
}

/// Negative slope of `ln density` against `ln degree` over nonzero bins with degree >= 1.
pub fn powerlaw_graphical(dd: &DegreeDistribution) -> Result<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = dd
        .density
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &p)| p > 0.0)
        .map(|(d, &p)| ((d as f64).ln(), p.ln()))
        .unzip();
    if xs.len() < 2 {
        return Err(GmmError::invalid(format!(
            "graphical power-law fit needs 2 occupied degree bins, found {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(-sxy / sxx)
}

/// `1 + n / Σ ln(x / lower)` over values `x >= lower`.
fn mle_alpha(tail: impl Iterator<Item = f64>, lower: f64) -> Result<f64> {
    let (mut n, mut log_sum) = (0usize, 0.0);
    for x in tail {
        n += 1;
        log_sum += (x / lower).ln();
    }
    if n < 2 {
        return Err(GmmError::invalid(format!(
            "power-law MLE needs 2 tail observations, found {n}"
        )));
    }
    if log_sum <= 0.0 {
        return Err(GmmError::invalid("power-law MLE diverges: zero log-sum"));
    }
    Ok(1.0 + n as f64 / log_sum)
}

/// Discrete power-law exponent for integer data with the half-unit shift:
/// `1 + n_tail / Σ ln(x / (x_min - 1/2))` over `x >= x_min`.
pub fn powerlaw_mle(degrees: &[usize], x_min: usize) -> Result<f64> {
    if x_min == 0 {
        return Err(GmmError::invalid("x_min must be at least 1"));
    }
    let tail: Vec<usize> = degrees.iter().copied().filter(|&d| d >= x_min).collect();
    if tail.len() >= 2 && tail.iter().all(|&d| d == x_min) {
        return Err(GmmError::invalid(format!(
            "power-law MLE diverges: every tail observation equals x_min={x_min}"
        )));
    }
    mle_alpha(tail.into_iter().map(|d| d as f64), x_min as f64 - 0.5)
}

/// Continuous power-law exponent: `1 + n_tail / Σ ln(x / x_min)`.
pub fn powerlaw_mle_continuous(samples: &[f64], x_min: f64) -> Result<f64> {
    if x_min.is_nan() || x_min <= 0.0 {
        return Err(GmmError::invalid("x_min must be positive"));
    }
    mle_alpha(samples.iter().copied().filter(|&x| x >= x_min), x_min)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha_graphical: f64,
    pub alpha_mle: f64,
    pub x_min: usize,
    pub n_tail: usize,
}

pub fn powerlaw_fit(g: &Graph, x_min: usize) -> Result<PowerLawFit> {
    let degrees: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    Ok(PowerLawFit {
        alpha_graphical: powerlaw_graphical(&degree_distribution(g)?)?,
        alpha_mle: powerlaw_mle(&degrees, x_min)?,
        x_min,
        n_tail: degrees.iter().filter(|&&d| d >= x_min).count(),
    })
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Linear-interpolation quantile (the common "type 7" definition).
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    assert!(!xs.is_empty(), "quantile of empty sample");
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

pub fn median(xs: &[f64]) -> f64 {
    quantile(xs, 0.5)
}

pub fn interquartile_range(xs: &[f64]) -> f64 {
    quantile(xs, 0.75) - quantile(xs, 0.25)
}

/// Ranks starting at 1, ties sharing their average rank.
fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub rho: f64,
    /// Two-sided, from the t approximation with `n - 2` degrees of freedom.
    pub p_value: f64,
}

pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<Correlation> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return Err(GmmError::invalid(
            "spearman needs two equal-length samples of at least 3",
        ));
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let (mx, my) = (mean(&rx), mean(&ry));
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return Err(GmmError::invalid(
            "spearman undefined for a constant sample",
        ));
    }
    let rho = cov / (vx * vy).sqrt();
    let df = (xs.len() - 2) as f64;
    let p_value = if rho.abs() >= 1.0 {
        0.0
    } else {
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df positive");
        2.0 * (1.0 - dist.cdf(t.abs()))
    };
    Ok(Correlation { rho, p_value })
}
