use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// 97.5th percentile of the standard normal; 95% two-sided intervals.
pub const Z95: f64 = 1.959963984540054;

/// Wilson score interval for k successes out of m.
pub fn wilson_interval(k: u64, m: u64) -> (f64, f64) {
    assert!(m > 0 && k <= m);
    let p = k as f64 / m as f64;
    let n = m as f64;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let spread = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = ((center - spread) / denom).max(0.0).min(p);
    let hi = ((center + spread) / denom).min(1.0).max(p);
    (lo, hi)
}

/// Failure counts at one walk length.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthStats {
    pub n: usize,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl LengthStats {
    pub fn new(n: usize, trials: u64, failures: u64) -> Self {
        let (lo, hi) = wilson_interval(failures, trials);
        LengthStats {
            n,
            trials,
            failures,
            rate: failures as f64 / trials as f64,
            wilson_lo: lo,
            wilson_hi: hi,
        }
    }
}

/// Per-length failure statistics of one experiment.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WalkStats {
    pub rows: Vec<LengthStats>,
}

impl WalkStats {
    /// CSV with the experiment configuration echoed as `#` comments.
    pub fn to_csv(&self, header: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in header {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str("n,trials,failures,rate,wilson_lo,wilson_hi\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:.6},{:.6},{:.6}\n",
                r.n, r.trials, r.failures, r.rate, r.wilson_lo, r.wilson_hi
            ));
        }
        out
    }
}

/// Least-squares exponential fit of the failure rate: log((k+1/2)/(m+1))
/// against n, with the continuity correction keeping zero-failure rows
/// defined. c_hat = exp(slope); the CI comes from the slope's standard
/// error under the normal approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    pub c_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub r2: f64,
    pub lengths_used: Vec<usize>,
}

impl DecayFit {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        let num = |x: f64| Value::from(x);
        m.insert("c_hat".into(), num(self.c_hat));
        m.insert("ci_lo".into(), num(self.ci_lo));
        m.insert("ci_hi".into(), num(self.ci_hi));
        m.insert("r2".into(), num(self.r2));
        m.insert("lengths_used".into(), Value::from(self.lengths_used.clone()));
        Value::Object(m)
    }
}

pub fn fit_exponential(stats: &WalkStats) -> Result<DecayFit> {
    let rows = &stats.rows;
    if rows.len() < 3 {
        return Err(Error::InsufficientData);
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| ((r.failures as f64 + 0.5) / (r.trials as f64 + 1.0)).ln())
        .collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData);
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let fit = intercept + slope * x;
            (y - fit) * (y - fit)
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - ybar) * (y - ybar)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    let dof = (rows.len() as f64 - 2.0).max(1.0);
    let se = (ss_res / dof / sxx).sqrt();
    Ok(DecayFit {
        c_hat: slope.exp(),
        ci_lo: (slope - Z95 * se).exp(),
        ci_hi: (slope + Z95 * se).exp(),
        r2,
        lengths_used: rows.iter().map(|r| r.n).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_basics() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && 0.5 < hi);
        let (lo0, hi0) = wilson_interval(0, 100);
        assert_eq!(lo0, 0.0);
        assert!(hi0 > 0.0 && hi0 < 0.05);
        let (lo1, hi1) = wilson_interval(100, 100);
        assert!(lo1 > 0.95);
        assert_eq!(hi1, 1.0);
    }

    #[test]
    fn doubling_trials_shrinks_width_sqrt2() {
        let (lo1, hi1) = wilson_interval(40, 200);
        let (lo2, hi2) = wilson_interval(80, 400);
        let ratio = (hi1 - lo1) / (hi2 - lo2);
        assert!((ratio - std::f64::consts::SQRT_2).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn exact_geometric_fit() {
        // rate(n) = 0.4 * 0.4^((n-10)/10): c = 0.4^(1/10)
        let m = 40_000_000u64;
        let rows = vec![
            LengthStats::new(10, m, (0.4 * m as f64) as u64),
            LengthStats::new(20, m, (0.16 * m as f64) as u64),
            LengthStats::new(30, m, (0.064 * m as f64) as u64),
        ];
        let fit = fit_exponential(&WalkStats { rows }).unwrap();
        let expect = 0.4f64.powf(0.1);
        assert!((fit.c_hat - expect).abs() / expect < 0.01, "{} vs {expect}", fit.c_hat);
        assert!(fit.r2 > 0.999);
    }

    #[test]
    fn constant_rates_fit_near_one() {
        let rows = vec![
            LengthStats::new(10, 1000, 300),
            LengthStats::new(20, 1000, 305),
            LengthStats::new(30, 1000, 295),
            LengthStats::new(40, 1000, 301),
        ];
        let fit = fit_exponential(&WalkStats { rows }).unwrap();
        assert!(fit.ci_lo < 1.0 && 1.0 < fit.ci_hi, "{fit:?}");
    }

    #[test]
    fn two_lengths_insufficient() {
        let rows = vec![LengthStats::new(10, 100, 50), LengthStats::new(20, 100, 20)];
        assert!(matches!(
            fit_exponential(&WalkStats { rows }),
            Err(Error::InsufficientData)
        ));
    }

    #[test]
    fn csv_shape() {
        let stats = WalkStats { rows: vec![LengthStats::new(5, 10, 10)] };
        let csv = stats.to_csv(&[("seed".into(), "42".into())]);
        assert!(csv.starts_with("# seed=42\nn,trials,failures,rate,wilson_lo,wilson_hi\n"));
        assert!(csv.contains("5,10,10,1.000000,"));
    }
}
