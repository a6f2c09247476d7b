//! Command-line front end: classification of invariant rings in the affine
//! permutation family, degreewise decomposition and cohomology tables, the
//! Frobenius-limit class vector, the surjective-number lemma battery, and
//! the characteristic-2 symmetric-group example.
//!
//! Exit codes: 0 = all invariants held, 1 = usage error, 2 = a
//! theory-falsification diagnostic fired.
//!
//! Thread count is controlled by `RAYON_NUM_THREADS`; outputs are
//! byte-identical for a fixed seed regardless of it.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use fsiglab::criteria::{
    self, classify, classify_grid, default_max_degree, CohomologyModule, CriteriaError,
};
use fsiglab::kg::orbits::{decompose_degree, scan_degree, Engine};
use fsiglab::kg::{fl_report, KgError};
use fsiglab::surjlab::{SearchConfig, SuiteConfig};
use fsiglab::agl::AffineGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Scan,
    Census,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Scan => Engine::Scan,
            EngineArg::Census => Engine::Census,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fsiglab",
    version,
    about = "Positivity criteria and classification for invariant rings of affine permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one member of the family (odd prime p, r ≥ 1).
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
        /// Degree bound for the criteria scan (default 3p).
        #[arg(long = "max-degree")]
        max_degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Classify a grid of (p, r) pairs.
    Grid {
        #[arg(long = "p-list", value_delimiter = ',', required = true)]
        p_list: Vec<u64>,
        #[arg(long = "r-list", value_delimiter = ',', required = true)]
        r_list: Vec<u64>,
        #[arg(long = "max-degree")]
        max_degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Orbit decomposition of one degree of the symmetric power.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        degree: u64,
        /// Also list every orbit with its classification.
        #[arg(long)]
        orbits: bool,
        #[arg(long, value_enum, default_value_t = EngineArg::Both)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Degreewise first cohomology table.
    Cohomology {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
        /// Coefficients: radPnu (B_d ⊗ rad P_ν), B (B_d itself), or k.
        #[arg(long)]
        module: String,
        #[arg(long = "max-degree")]
        max_degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// The Frobenius-limit class vector of the canonical module.
    Fl {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
    },
    /// Run the surjective-number lemma battery, or query one pair of
    /// preset modules when --algebra/--source/--target are given.
    Surjlab {
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
        /// Dimension cap of the exhaustive pool (0 disables it).
        #[arg(long = "f2-max-dim", default_value_t = 3)]
        f2_max_dim: usize,
        /// Target instance count of the seeded random pool (0 disables it).
        #[arg(long = "f3-target", default_value_t = 1000)]
        f3_target: u64,
        #[arg(long = "r-max", default_value_t = 4)]
        r_max: u64,
        #[arg(long = "t-max", default_value_t = 3)]
        t_max: u64,
        /// Point-count cap for exhaustive hom-space enumeration.
        #[arg(long = "exhaustion-bound", default_value_t = 1 << 20)]
        exhaustion_bound: u64,
        /// Testbed algebra preset, e.g. "F2[x]/(x^2)".
        #[arg(long)]
        algebra: Option<String>,
        /// Source module preset, e.g. "R+k" (requires --algebra).
        #[arg(long, requires = "algebra")]
        source: Option<String>,
        /// Target module preset (requires --algebra).
        #[arg(long, requires = "algebra")]
        target: Option<String>,
    },
    /// The symmetric-group example in characteristic 2.
    ExampleP2,
}

enum AppError {
    Usage(String),
    Falsified(String),
}

impl From<CriteriaError> for AppError {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::InvalidInput(msg) => AppError::Usage(msg),
            other => AppError::Falsified(other.to_string()),
        }
    }
}

impl From<KgError> for AppError {
    fn from(e: KgError) -> Self {
        AppError::Falsified(e.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not usage errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(AppError::Falsified(msg)) => {
            eprintln!("theory falsified: {msg}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.cmd {
        Cmd::Classify {
            p,
            r,
            max_degree,
            format,
        } => {
            let d = max_degree.unwrap_or_else(|| default_max_degree(p));
            let row = classify(p, r, d)?;
            let criteria = criteria::evaluate_criteria(p, r, d)?;
            match format {
                Format::Json => output::classify_json(&row, &criteria),
                Format::Csv => output::classification_csv(std::slice::from_ref(&row)),
                Format::Table => output::classify_table(&row, &criteria),
            }
        }
        Cmd::Grid {
            p_list,
            r_list,
            max_degree,
            format,
        } => {
            let rows = classify_grid(&p_list, &r_list, max_degree)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Csv => output::classification_csv(&rows),
                Format::Table => output::classification_table(&rows),
            }
        }
        Cmd::Decompose {
            p,
            r,
            degree,
            orbits,
            engine,
            format,
        } => {
            let group = AffineGroup::new(p).map_err(|e| AppError::Usage(e.to_string()))?;
            let report = decompose_degree(&group, r, degree, engine.into())?;
            let criteria = criteria::evaluate_criteria(p, r, degree)?;
            let row = criteria
                .rows
                .last()
                .expect("criteria reach the requested degree")
                .clone();
            let orbit_list = if orbits {
                Some(scan_degree(&group, r, degree, true)?.orbits)
            } else {
                None
            };
            match format {
                Format::Json => output::decompose_json(&report, &row, orbit_list.as_deref()),
                Format::Csv => output::degree_rows_csv(std::slice::from_ref(&row)),
                Format::Table => output::decompose_table(&report, &row, orbit_list.as_deref()),
            }
        }
        Cmd::Cohomology {
            p,
            r,
            module,
            max_degree,
            format,
        } => {
            let which = CohomologyModule::parse(&module)?;
            let d = max_degree.unwrap_or_else(|| default_max_degree(p));
            let rows = criteria::cohomology_table(p, r, which, d)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Csv => output::cohomology_csv(&rows),
                Format::Table => output::cohomology_table_text(&rows),
            }
        }
        Cmd::Fl { p, r } => {
            let group = AffineGroup::new(p).map_err(|e| AppError::Usage(e.to_string()))?;
            let fl = fl_report(&group)?;
            output::fl_json(p, r, &group, &fl);
        }
        Cmd::Surjlab {
            seed,
            f2_max_dim,
            f3_target,
            r_max,
            t_max,
            exhaustion_bound,
            algebra,
            source,
            target,
        } => {
            let search = SearchConfig {
                exhaustion_bound,
                seed,
                ..SearchConfig::default()
            };
            if let Some(algebra) = algebra {
                let source = source.ok_or_else(|| AppError::Usage("--source is required with --algebra".into()))?;
                let target = target.ok_or_else(|| AppError::Usage("--target is required with --algebra".into()))?;
                output::surj_pair_json(&algebra, &source, &target, r_max, &search)
                    .map_err(AppError::Usage)?;
                return Ok(());
            }
            let cfg = SuiteConfig {
                seed,
                f2_max_dim,
                f3_target,
                r_max,
                t_max,
                search,
            };
            let report = criteria::run_surjlab_suite(&cfg);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if !report.passed() {
                return Err(AppError::Falsified(format!(
                    "{} lemma violations",
                    report.total_violations
                )));
            }
        }
        Cmd::ExampleP2 => {
            let rows = criteria::example_p2();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
    Ok(())
}
