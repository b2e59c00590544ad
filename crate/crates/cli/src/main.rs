use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use prym_core::certifier::{modp_image_order, standard_transvection_generators, Certifier, CertificateTier};
use prym_core::defaults::{default_sep_catalog, default_torelli_catalog};
use prym_core::freegrp::GeneratorCatalog;
use prym_core::surface::{enumerate_covers, validate_catalog, CoverSpec};
use prym_core::twocover::CoverHomology;
use prym_core::walklab::{fit_exponential, rivin_baseline, walk_experiment, LengthRange, WalkConfig};

/// Pseudo-Anosov certificates for Torelli mapping classes from the
/// homology of double covers, plus random-walk genericity experiments.
#[derive(Parser)]
#[command(name = "prym", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the double covers of a genus with their Prym ranks.
    Covers {
        #[arg(long)]
        genus: usize,
    },
    /// Run the validation suite over a catalog file.
    CatalogValidate {
        /// Path, or `default` / `default-sep` for the built-in catalogs.
        catalog: String,
    },
    /// Certify a word of catalog generators; prints a JSON report.
    Certify {
        #[arg(long, default_value = "default")]
        catalog: String,
        /// Whitespace-separated generator names; `name^-1` inverts.
        #[arg(long, default_value = "")]
        word: String,
        /// Genus cross-check against the catalog (optional).
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Random-walk certificate-failure experiment from a config file.
    Walk {
        #[arg(long)]
        config: PathBuf,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; overrides the config file.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Baseline walk in Sp(2k, Z) over standard transvection generators.
    Rivin {
        /// Matrix dimension 2k.
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "10:50:10")]
        lengths: String,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Order of the catalog's Prym image mod q on one cover.
    Modp {
        #[arg(long)]
        prime: u64,
        /// Cover as an alpha bit-string, e.g. 001011.
        #[arg(long)]
        cover: String,
        #[arg(long, default_value = "default")]
        catalog: String,
        #[arg(long, default_value_t = 10_000_000)]
        bound: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let v = json!({"error": "usage", "message": e.to_string()});
            eprintln!("{v}");
            return ExitCode::from(2);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            let v = json!({"error": "validation", "message": e.to_string()});
            eprintln!("{v}");
            ExitCode::from(2)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal assertion failure".to_string());
            let v = json!({"error": "internal", "message": msg});
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}

fn load_catalog(spec: &str) -> Result<GeneratorCatalog, prym_core::Error> {
    match spec {
        "default" => Ok(default_torelli_catalog()),
        "default-sep" => Ok(default_sep_catalog()),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| prym_core::Error::Config(format!("cannot read `{path}`: {e}")))?;
            GeneratorCatalog::parse(&text)
        }
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn run(cli: Cli) -> Result<(), prym_core::Error> {
    match cli.command {
        Command::Covers { genus } => {
            if genus < 2 {
                return Err(prym_core::Error::Config("genus must be at least 2".into()));
            }
            for p in enumerate_covers(genus) {
                let h = CoverHomology::new(&p);
                let tau = h.tau_star();
                let tau_ok = tau.mul(tau).is_identity() && {
                    let kp = h.kp_basis();
                    (0..kp.cols()).all(|j| {
                        let img = tau.mul_vec(&kp.column(j));
                        img.iter().zip(kp.column(j).iter()).all(|(x, y)| *x == -y)
                    })
                };
                println!(
                    "{} h1_rank={} kp_rank={} tau_ok={}",
                    p.alpha_string(),
                    h.rank(),
                    h.kp_rank(),
                    tau_ok
                );
            }
            Ok(())
        }
        Command::CatalogValidate { catalog } => {
            let cat = load_catalog(&catalog)?;
            let report = validate_catalog(&cat)?;
            let mut root = Map::new();
            root.insert("genus".into(), json!(report.genus));
            root.insert("entries".into(), json!(cat.entries().len()));
            root.insert("all_torelli".into(), json!(report.all_torelli()));
            root.insert("all_mod2_torelli".into(), json!(report.all_mod2_torelli()));
            let levels: Vec<Value> = report
                .levels
                .iter()
                .map(|(n, l)| json!({"name": n, "level": l}))
                .collect();
            root.insert("levels".into(), Value::Array(levels));
            root.insert("warnings".into(), json!(report.warnings));
            println!("{}", Value::Object(root));
            Ok(())
        }
        Command::Certify { catalog, word, genus } => {
            let cat = load_catalog(&catalog)?;
            if let Some(g) = genus {
                if g != cat.genus {
                    return Err(prym_core::Error::Config(format!(
                        "catalog has genus {}, not {g}",
                        cat.genus
                    )));
                }
            }
            let engine = Certifier::new(cat)?;
            let names: Vec<String> = word.split_whitespace().map(str::to_string).collect();
            let report = engine.certify(&names)?;
            println!("{}", report.to_json());
            Ok(())
        }
        Command::Walk { config, out, threads } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| prym_core::Error::Config(format!("cannot read config: {e}")))?;
            let file = WalkFileConfig::parse(&text)?;
            let cat = load_catalog(&file.catalog)?;
            let engine = Certifier::new(cat)?;
            let cfg = WalkConfig {
                lengths: file.lengths.clone(),
                trials: file.trials,
                seed: file.seed,
                tier: file.tier,
                threads: threads.or(file.threads).unwrap_or_else(default_threads),
            };
            let stats = walk_experiment(&engine, &cfg)?;
            let header = cfg.header(&[("catalog".to_string(), file.catalog.clone())]);
            let csv = stats.to_csv(&header);
            match &out {
                Some(path) => fs::write(path, &csv)
                    .map_err(|e| prym_core::Error::Config(format!("cannot write csv: {e}")))?,
                None => print!("{csv}"),
            }
            match fit_exponential(&stats) {
                Ok(fit) => println!("{}", fit.to_json()),
                Err(e) => println!("{}", json!({"fit_error": e.to_string()})),
            }
            Ok(())
        }
        Command::Rivin { dim, lengths, trials, seed, out, threads } => {
            if dim == 0 || dim % 2 != 0 {
                return Err(prym_core::Error::Config("--dim must be a positive even number".into()));
            }
            let gens = standard_transvection_generators(dim / 2);
            let lens = LengthRange::parse(&lengths)?;
            let threads = threads.unwrap_or_else(default_threads);
            let stats = rivin_baseline(&gens, &lens, trials, seed, threads)?;
            let header = vec![
                ("dim".to_string(), dim.to_string()),
                ("lengths".to_string(), lens.display()),
                ("trials".to_string(), trials.to_string()),
                ("seed".to_string(), seed.to_string()),
                ("generators".to_string(), gens.len().to_string()),
            ];
            let csv = stats.to_csv(&header);
            match &out {
                Some(path) => fs::write(path, &csv)
                    .map_err(|e| prym_core::Error::Config(format!("cannot write csv: {e}")))?,
                None => print!("{csv}"),
            }
            match fit_exponential(&stats) {
                Ok(fit) => println!("{}", fit.to_json()),
                Err(e) => println!("{}", json!({"fit_error": e.to_string()})),
            }
            Ok(())
        }
        Command::Modp { prime, cover, catalog, bound } => {
            let cat = load_catalog(&catalog)?;
            let genus = cat.genus;
            let p = CoverSpec::parse_alpha(genus, &cover)?;
            let engine = Certifier::new(cat)?;
            let order = modp_image_order(&engine, &p, prime, bound)?;
            println!(
                "{}",
                json!({"cover": cover, "prime": prime, "order": order})
            );
            Ok(())
        }
    }
}

/// Flat key = value walk configuration.
struct WalkFileConfig {
    catalog: String,
    lengths: LengthRange,
    trials: u64,
    seed: u64,
    tier: CertificateTier,
    threads: Option<usize>,
}

impl WalkFileConfig {
    fn parse(text: &str) -> Result<Self, prym_core::Error> {
        let mut catalog = "default".to_string();
        let mut lengths = None;
        let mut trials = None;
        let mut seed = None;
        let mut tier = CertificateTier::IrreducibleOnly;
        let mut threads = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| prym_core::Error::Config(format!("expected key = value, got `{line}`")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "catalog" => catalog = v.to_string(),
                "lengths" => lengths = Some(LengthRange::parse(v)?),
                "trials" => {
                    trials = Some(v.parse().map_err(|_| {
                        prym_core::Error::Config(format!("bad trials `{v}`"))
                    })?)
                }
                "seed" => {
                    seed = Some(v.parse().map_err(|_| {
                        prym_core::Error::Config(format!("bad seed `{v}`"))
                    })?)
                }
                "tier" => {
                    tier = match v {
                        "irreducible" => CertificateTier::IrreducibleOnly,
                        "either" => CertificateTier::Either,
                        other => {
                            return Err(prym_core::Error::Config(format!(
                                "tier must be `irreducible` or `either`, got `{other}`"
                            )))
                        }
                    }
                }
                "threads" => {
                    threads = Some(v.parse().map_err(|_| {
                        prym_core::Error::Config(format!("bad threads `{v}`"))
                    })?)
                }
                other => {
                    return Err(prym_core::Error::Config(format!("unknown config key `{other}`")))
                }
            }
        }
        Ok(WalkFileConfig {
            catalog,
            lengths: lengths.ok_or_else(|| prym_core::Error::Config("missing lengths".into()))?,
            trials: trials.ok_or_else(|| prym_core::Error::Config("missing trials".into()))?,
            seed: seed.ok_or_else(|| prym_core::Error::Config("missing seed".into()))?,
            tier,
            threads,
        })
    }
}
