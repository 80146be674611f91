//! Command-line front end: `count`, `enumerate`, `sample`, `experiment`,
//! `verify`.
//!
//! Exit codes: 0 success or all checks passed, 1 a check or experiment failed,
//! 2 bad usage or input. Without `--output`, results go to stdout unless
//! `WIDTH2_OUT_DIR` is set, in which case they are written to a file named
//! after the command inside that directory.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::count::{count_with_cap, DEFAULT_DP_CAP};
use crate::error::{Error, Result};
use crate::oracle::{self, Census, PosetFilter, VerifyReport};
use crate::rng::stream;
use crate::sample::{SamplerMethod, WalkSampler};
use crate::stats::{self, ExperimentConfig, Tolerances};
use crate::walk::WalkPair;

pub const OUT_DIR_ENV: &str = "WIDTH2_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "width2", version, about = "Random width-2 posets via non-hitting walk pairs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest n for which the exact count table is built.
    #[arg(long, default_value_t = DEFAULT_DP_CAP, global = true)]
    pub dp_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact |B_n|, the number of non-hitting walk pairs of length n.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// List all small objects of one kind.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum)]
        what: What,
        /// Which posets to list with `--what posets`.
        #[arg(long, value_enum, default_value_t = FilterArg::OneFactor)]
        filter: FilterArg,
    },
    /// Uniform walk pairs.
    Sample {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
    },
    /// Monte Carlo checks of the limit laws.
    Experiment(ExperimentArgs),
    /// Exact brute-force checks; each runs for every size from the smallest
    /// up to `--n`.
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Posets,
    Covers,
    Walks,
    Census,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    All,
    WidthAtMost2,
    Width2,
    OneFactor,
}

impl From<FilterArg> for PosetFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => PosetFilter::All,
            FilterArg::WidthAtMost2 => PosetFilter::WidthAtMost2,
            FilterArg::Width2 => PosetFilter::Width2,
            FilterArg::OneFactor => PosetFilter::OneFactor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dp,
    Decomposed,
}

impl From<MethodArg> for SamplerMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dp => SamplerMethod::Dp,
            MethodArg::Decomposed => SamplerMethod::Decomposed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    Window,
    Height,
    Avgwindow,
    Errscaling,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub kind: ExperimentKind,
    /// Size; for `errscaling` a comma-separated increasing list.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: Vec<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Decomposed)]
    pub method: MethodArg,
    /// Average over all elements of each pair instead of one uniform element
    /// (window only). Variance reduction; changes the law under test.
    #[arg(long)]
    pub all_elements: bool,
    #[arg(long, default_value_t = Tolerances::default().ks)]
    pub ks_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().mean_rel)]
    pub mean_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().tail)]
    pub tail_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().err)]
    pub err_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyCheck {
    Bijection,
    Uniform,
    Symmetry,
    /// The corrected symmetrization identity with `max(H(t−1), H(t))`.
    SymmetryMax,
    Area,
    Errbound,
    Firstreturn,
    Factors,
    Involution,
    Windows,
    Census,
    All,
}

impl VerifyCheck {
    const EACH: [VerifyCheck; 11] = [
        VerifyCheck::Bijection,
        VerifyCheck::Uniform,
        VerifyCheck::Symmetry,
        VerifyCheck::SymmetryMax,
        VerifyCheck::Area,
        VerifyCheck::Errbound,
        VerifyCheck::Firstreturn,
        VerifyCheck::Factors,
        VerifyCheck::Involution,
        VerifyCheck::Windows,
        VerifyCheck::Census,
    ];

    fn default_n(self) -> usize {
        match self {
            VerifyCheck::Bijection => 8,
            VerifyCheck::Uniform => 6,
            VerifyCheck::Symmetry | VerifyCheck::SymmetryMax => 12,
            VerifyCheck::Area | VerifyCheck::Errbound => 10,
            VerifyCheck::Firstreturn => 12,
            VerifyCheck::Factors => 7,
            VerifyCheck::Involution => 12,
            VerifyCheck::Windows => 6,
            VerifyCheck::Census => 6,
            VerifyCheck::All => 0,
        }
    }

    fn run(self, n_max: usize) -> Result<Vec<VerifyReport>> {
        let sizes = |lo: usize| lo..=n_max;
        let each = |lo: usize, f: fn(usize) -> Result<VerifyReport>| -> Result<Vec<VerifyReport>> {
            sizes(lo).map(f).collect()
        };
        match self {
            VerifyCheck::Bijection => each(1, oracle::verify_bijection),
            VerifyCheck::Uniform => each(1, oracle::verify_uniform_cover_measure),
            VerifyCheck::Symmetry => each(1, oracle::verify_symmetrization),
            VerifyCheck::SymmetryMax => each(1, oracle::verify_symmetrization_step_max),
            VerifyCheck::Area => each(1, oracle::verify_area),
            VerifyCheck::Errbound => each(1, oracle::verify_err_bound),
            VerifyCheck::Firstreturn => Ok(vec![oracle::verify_first_return(n_max)?]),
            VerifyCheck::Factors => each(2, oracle::verify_factor_dominance),
            VerifyCheck::Involution => each(1, oracle::verify_involution),
            VerifyCheck::Windows => each(1, oracle::verify_window_identity),
            VerifyCheck::Census => each(1, oracle::verify_census),
            VerifyCheck::All => {
                let mut out = Vec::new();
                for c in Self::EACH {
                    out.extend(c.run(c.default_n())?);
                }
                Ok(out)
            }
        }
    }
}

/// What a command produced: the rendered artifact and whether it counts as
/// a pass.
struct Outcome {
    body: String,
    pass: bool,
    default_name: String,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn usize_arg(x: u64) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn run_count(n: usize, g: &GlobalOpts) -> Result<Outcome> {
    let c = count_with_cap(n, g.dp_cap)?;
    let body = match g.format {
        Format::Json => json(&serde_json::json!({ "n": n, "count": c.to_string() })),
        Format::Csv => format!("n,count\n{n},{c}\n"),
        Format::Text => format!("{c}\n"),
    };
    Ok(Outcome {
        body,
        pass: true,
        default_name: format!("count-n{n}"),
    })
}

fn run_enumerate(n: usize, what: What, filter: FilterArg, g: &GlobalOpts) -> Result<Outcome> {
    let body = match what {
        What::Posets => {
            let posets = oracle::enumerate_posets(n, filter.into())?;
            match g.format {
                Format::Json => json(&posets.iter().map(|p| p.to_json()).collect::<Vec<_>>()),
                Format::Csv | Format::Text => {
                    let mut s = if g.format == Format::Csv { String::from("index,covering_pairs\n") } else { String::new() };
                    for (i, p) in posets.iter().enumerate() {
                        let pairs: Vec<String> = p.covering_pairs().iter().map(|(a, b)| format!("{}<{}", a + 1, b + 1)).collect();
                        if g.format == Format::Csv {
                            s.push_str(&format!("{i},{}\n", pairs.join(" ")));
                        } else {
                            s.push_str(&format!("{}\n", pairs.join(" ")));
                        }
                    }
                    s
                }
            }
        }
        What::Covers => {
            let covers = oracle::enumerate_covers(n)?;
            match g.format {
                Format::Json => json(&covers.iter().map(|c| c.to_json()).collect::<Vec<_>>()),
                Format::Csv | Format::Text => {
                    let mut s = if g.format == Format::Csv { String::from("index,k,cross\n") } else { String::new() };
                    for (i, c) in covers.iter().enumerate() {
                        let cross: Vec<String> = c
                            .cross_pairs()
                            .iter()
                            .map(|&(x, y)| format!("{}<{}", c.element(x), c.element(y)))
                            .collect();
                        if g.format == Format::Csv {
                            s.push_str(&format!("{i},{},{}\n", c.k(), cross.join(" ")));
                        } else {
                            let cross = if cross.is_empty() { "-".to_string() } else { cross.join(" ") };
                            s.push_str(&format!("k={} cross {cross}\n", c.k()));
                        }
                    }
                    s
                }
            }
        }
        What::Walks => render_walks(&oracle::enumerate_walk_pairs(n)?, g.format),
        What::Census => {
            let c = Census::compute(n)?;
            match g.format {
                Format::Json => format!("{}\n", c.to_json_string()),
                Format::Csv => {
                    let k = &c.counts;
                    let mut s = String::from("n,posets,posets_width_at_most2,posets_width2,posets_one_factor,covers,walk_pairs,psi_1,psi_2\n");
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        c.n,
                        k.posets,
                        k.posets_width_at_most2,
                        k.posets_width2,
                        k.posets_one_factor,
                        k.covers,
                        k.walk_pairs,
                        c.psi_split.get(&1).copied().unwrap_or(0),
                        c.psi_split.get(&2).copied().unwrap_or(0)
                    ));
                    s
                }
                Format::Text => {
                    let k = &c.counts;
                    let mut s = format!("n                      {}\n", c.n);
                    s.push_str(&format!("posets                 {}\n", k.posets));
                    s.push_str(&format!("posets_width_at_most2  {}\n", k.posets_width_at_most2));
                    s.push_str(&format!("posets_width2          {}\n", k.posets_width2));
                    s.push_str(&format!("posets_one_factor      {}\n", k.posets_one_factor));
                    for (size, count) in &c.psi_split {
                        s.push_str(&format!("  |psi| = {size}            {count}\n"));
                    }
                    s.push_str(&format!("covers                 {}\n", k.covers));
                    s.push_str(&format!("walk_pairs             {}\n", k.walk_pairs));
                    s
                }
            }
        }
    };
    let what_name = format!("{what:?}").to_lowercase();
    Ok(Outcome {
        body,
        pass: true,
        default_name: format!("enumerate-{what_name}-n{n}"),
    })
}

fn render_walks(walks: &[WalkPair], format: Format) -> String {
    match format {
        Format::Json => json(&walks.iter().map(|w| w.to_json()).collect::<Vec<_>>()),
        Format::Csv => {
            let mut s = String::from("index,v,w\n");
            for (i, w) in walks.iter().enumerate() {
                let text = w.to_text();
                let (v, ww) = text.split_once('\n').expect("two lines");
                s.push_str(&format!("{i},{v},{ww}\n"));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for w in walks {
                s.push_str(&w.to_text());
                s.push_str("\n\n");
            }
            s
        }
    }
}

fn run_sample(n: usize, samples: usize, seed: u64, method: MethodArg, g: &GlobalOpts) -> Result<Outcome> {
    let sampler = WalkSampler::new(n, method.into(), g.dp_cap)?;
    let mut rng = stream(seed, 0);
    let walks: Vec<WalkPair> = (0..samples).map(|_| sampler.sample(&mut rng)).collect();
    Ok(Outcome {
        body: render_walks(&walks, g.format),
        pass: true,
        default_name: format!("sample-n{n}-seed{seed}"),
    })
}

fn run_experiment(a: &ExperimentArgs, g: &GlobalOpts) -> Result<Outcome> {
    let tolerances = Tolerances {
        ks: a.ks_tol,
        mean_rel: a.mean_tol,
        tail: a.tail_tol,
        err: a.err_tol,
        ..Tolerances::default()
    };
    let samples = usize_arg(a.samples);
    let kind = format!("{:?}", a.kind).to_lowercase();
    if a.kind == ExperimentKind::Errscaling {
        let ns: Vec<usize> = a.n.iter().map(|&n| usize_arg(n)).collect();
        let r = stats::experiment_err_scaling(&ns, samples, a.seed, a.method.into(), tolerances)?;
        let body = match g.format {
            Format::Json => format!("{}\n", r.to_json_string()),
            Format::Csv => r.to_csv(),
            Format::Text => r.to_text(),
        };
        return Ok(Outcome {
            body,
            pass: r.pass,
            default_name: format!("experiment-{kind}-seed{}", a.seed),
        });
    }
    let [n] = a.n[..] else {
        return Err(Error::InvalidArgument(format!("{kind} takes a single --n")));
    };
    let cfg = ExperimentConfig {
        method: a.method.into(),
        dp_cap: g.dp_cap,
        tolerances,
        all_elements: a.all_elements,
        ..ExperimentConfig::new(usize_arg(n), samples, a.seed)
    };
    let r = match a.kind {
        ExperimentKind::Window => stats::experiment_window(&cfg)?,
        ExperimentKind::Height => stats::experiment_height(&cfg)?,
        ExperimentKind::Avgwindow => stats::experiment_avg_window(&cfg)?,
        ExperimentKind::Errscaling => unreachable!("handled above"),
    };
    let body = match g.format {
        Format::Json => format!("{}\n", r.to_json_string()),
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    };
    Ok(Outcome {
        body,
        pass: r.pass,
        default_name: format!("experiment-{kind}-n{n}-seed{}", a.seed),
    })
}

fn run_verify(check: VerifyCheck, n: Option<u64>, g: &GlobalOpts) -> Result<Outcome> {
    if check == VerifyCheck::All && n.is_some() {
        return Err(Error::InvalidArgument("`verify all` uses per-check sizes; drop --n".into()));
    }
    let n_max = n.map(usize_arg).unwrap_or_else(|| check.default_n());
    let reports = check.run(n_max)?;
    let pass = reports.iter().all(|r| r.passed);
    let body = match g.format {
        Format::Json => json(&reports),
        Format::Csv => {
            let mut s = String::from("check,n,passed,checked,failures\n");
            for r in &reports {
                s.push_str(&format!("{},{},{},{},{}\n", r.check, r.n, r.passed, r.checked, r.failures));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.summary());
                s.push('\n');
            }
            s
        }
    };
    let name = format!("{check:?}").to_lowercase();
    Ok(Outcome {
        body,
        pass,
        default_name: format!("verify-{name}"),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Count { n } => run_count(usize_arg(*n), g),
        Command::Enumerate { n, what, filter } => run_enumerate(usize_arg(*n), *what, *filter, g),
        Command::Sample {
            n,
            samples,
            seed,
            method,
        } => run_sample(usize_arg(*n), usize_arg(*samples), *seed, *method, g),
        Command::Experiment(a) => run_experiment(a, g),
        Command::Verify { check, n } => run_verify(*check, *n, g),
    }
}

fn emit(outcome: &Outcome, g: &GlobalOpts) -> std::io::Result<()> {
    let path = match (&g.output, std::env::var_os(OUT_DIR_ENV)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(PathBuf::from(dir).join(format!("{}.{}", outcome.default_name, g.format.extension()))),
        (None, None) => None,
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&p, &outcome.body)?;
            eprintln!("wrote {}", p.display());
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.body.as_bytes())?;
            out.flush()
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidArgument(format!("cannot start {t} threads: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome, &cli.global) {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["width2", "count"]), 2);
        assert_eq!(run(["width2", "count", "--n", "0"]), 2);
        assert_eq!(run(["width2", "sample", "--n", "5"]), 2);
        assert_eq!(run(["width2", "frobnicate"]), 2);
        assert_eq!(run(["width2", "count", "--n", "5000"]), 2);
        assert_eq!(run(["width2", "verify", "all", "--n", "3"]), 2);
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(run(["width2", "verify", "bijection", "--n", "4"]), 0);
        assert_eq!(run(["width2", "verify", "symmetry", "--n", "1"]), 0);
        assert_eq!(run(["width2", "verify", "symmetry", "--n", "3"]), 1);
    }
}
