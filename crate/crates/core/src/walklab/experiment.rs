use rand_chacha::ChaCha8Rng;

use super::rng::{stream, uniform_index};
use super::stats::{LengthStats, WalkStats};
use crate::certifier::{Certifier, CertificateTier};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::freegrp::GeneratorCatalog;
use crate::polyfact::is_irreducible_q;

/// Arithmetic progression of walk lengths `min:max:step` (inclusive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthRange {
    pub min: usize,
    pub max: usize,
    pub step: usize,
}

impl LengthRange {
    pub fn parse(text: &str) -> Result<LengthRange> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!("lengths must be min:max:step, got `{text}`")));
        }
        let take = |i: usize| -> Result<usize> {
            parts[i]
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad length component `{}`", parts[i])))
        };
        let r = LengthRange { min: take(0)?, max: take(1)?, step: take(2)? };
        if r.step == 0 || r.max < r.min {
            return Err(Error::Config("length range must be nonempty with step >= 1".into()));
        }
        Ok(r)
    }

    pub fn values(&self) -> Vec<usize> {
        (self.min..=self.max).step_by(self.step).collect()
    }

    pub fn display(&self) -> String {
        format!("{}:{}:{}", self.min, self.max, self.step)
    }
}

/// Walk experiment configuration over a Torelli catalog.
#[derive(Clone, Debug)]
pub struct WalkConfig {
    pub lengths: LengthRange,
    pub trials: u64,
    pub seed: u64,
    pub tier: CertificateTier,
    pub threads: usize,
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.threads == 0 {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        Ok(())
    }

    pub fn header(&self, extra: &[(String, String)]) -> Vec<(String, String)> {
        let mut h = vec![
            ("lengths".to_string(), self.lengths.display()),
            ("trials".to_string(), self.trials.to_string()),
            ("seed".to_string(), self.seed.to_string()),
            (
                "tier".to_string(),
                match self.tier {
                    CertificateTier::IrreducibleOnly => "irreducible".to_string(),
                    CertificateTier::Either => "either".to_string(),
                },
            ),
        ];
        h.extend_from_slice(extra);
        h
    }
}

/// One uniformly random word over the (symmetric) name list; letters are
/// i.i.d. uniform on the list in its given order.
pub fn sample_word(names: &[String], n: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    (0..n).map(|_| names[uniform_index(rng, names.len())].clone()).collect()
}

/// Deterministic convenience form keyed by a bare seed.
pub fn sample_word_seeded(names: &[String], n: usize, seed: u64) -> Vec<String> {
    sample_word(names, n, &mut stream(seed, n as u64, 0))
}

/// The generating set must contain a formal inverse for every name.
pub fn validate_symmetric(names: &[String], catalog: &GeneratorCatalog) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Config("empty generating set".into()));
    }
    for n in names {
        let entry = catalog.resolve(n)?;
        let inv = entry
            .inverse
            .as_ref()
            .ok_or_else(|| Error::AsymmetricGenerators(n.clone()))?;
        if !names.contains(inv) {
            return Err(Error::AsymmetricGenerators(n.clone()));
        }
    }
    Ok(())
}

/// Runs the certificate-failure walk. The measured quantity is the rate
/// of words that do not earn the certificate, an upper bound for the
/// non-pseudo-Anosov rate. Results are bit-identical for any thread
/// count: every trial reads its own (seed, n, trial) stream and the
/// counts are merged by index.
pub fn walk_experiment(certifier: &Certifier, cfg: &WalkConfig) -> Result<WalkStats> {
    cfg.validate()?;
    let names = certifier.catalog().names();
    validate_symmetric(&names, certifier.catalog())?;
    let mut rows = Vec::new();
    for n in cfg.lengths.values() {
        let failures: u64 = run_trials(cfg.threads, cfg.trials, |trial| {
            let mut rng = stream(cfg.seed, n as u64, trial);
            let word = sample_word(&names, n, &mut rng);
            // scope errors are config errors, checked up front; failures
            // here can only be bugs
            !certifier
                .certified_at_tier(&word, cfg.tier)
                .expect("catalog already validated as in scope")
        });
        rows.push(LengthStats::new(n, cfg.trials, failures));
    }
    Ok(WalkStats { rows })
}

/// Baseline walk directly in Sp(2k, Z): failure = reducible
/// characteristic polynomial.
pub fn rivin_baseline(
    generators: &[IntMatrix],
    lengths: &LengthRange,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<WalkStats> {
    if generators.is_empty() {
        return Err(Error::Config("empty generating set".into()));
    }
    let dim = generators[0].rows();
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::Config("generators must be 2k x 2k".into()));
    }
    let j = standard_form(dim);
    for g in generators {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::Config("generators must share one dimension".into()));
        }
        if g.transpose().mul(&j).mul(g) != j {
            return Err(Error::Config("generator is not symplectic".into()));
        }
        if !generators.iter().any(|h| g.mul(h).is_identity()) {
            return Err(Error::AsymmetricGenerators(format!("{g:?}")));
        }
    }
    let mut rows = Vec::new();
    for n in lengths.values() {
        let failures: u64 = run_trials(threads, trials, |trial| {
            let mut rng = stream(seed, n as u64, trial);
            let mut acc = IntMatrix::identity(dim);
            for _ in 0..n {
                let g = &generators[uniform_index(&mut rng, generators.len())];
                acc = g.mul(&acc);
            }
            let cp = crate::exactlin::char_poly(&acc).expect("square");
            !is_irreducible_q(&cp).expect("monic")
        });
        rows.push(LengthStats::new(n, trials, failures));
    }
    Ok(WalkStats { rows })
}

/// Standard symplectic form in (e_1, f_1, e_2, f_2, ...) coordinates.
fn standard_form(dim: usize) -> IntMatrix {
    use num_bigint::BigInt;
    let mut j = IntMatrix::zero(dim, dim);
    for i in 0..dim / 2 {
        j[(2 * i, 2 * i + 1)] = BigInt::from(1);
        j[(2 * i + 1, 2 * i)] = BigInt::from(-1);
    }
    j
}

/// Counts trials where `fail` returns true, splitting the index range
/// over worker threads; the sum is order-independent.
fn run_trials(threads: usize, trials: u64, fail: impl Fn(u64) -> bool + Sync) -> u64 {
    if threads <= 1 {
        return (0..trials).filter(|&t| fail(t)).count() as u64;
    }
    std::thread::scope(|scope| {
        let fail = &fail;
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                scope.spawn(move || {
                    let mut count = 0u64;
                    let mut t = w as u64;
                    while t < trials {
                        if fail(t) {
                            count += 1;
                        }
                        t += threads as u64;
                    }
                    count
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}
