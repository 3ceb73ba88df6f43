//! `reversal`: poset, linear extension and expander tools.
//!
//! Exit status: 0 on success, 1 when a report contains a failed hard
//! assertion, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use reversal_core::bounds;
use reversal_core::expander::{
    check_doubling, check_vertex_expansion, double_cover, sample_configuration, CheckMode, DoublingConfig,
    DoublingVerdict, Outcome, DEFAULT_EXACT_LIMIT,
};
use reversal_core::families::{self, FamilySpec};
use reversal_core::format;
use reversal_core::linext::{
    distance, format_ratio, le_graph_neighbors, led_exact, led_local_search, reversal_ratio_pair, LedResult,
};
use reversal_core::poset::{count_linear_extensions, width_and_antichain};
use reversal_core::{LinearExtension, LocalSearchParams, Poset, Report, DEFAULT_ENUMERATION_CAP};

#[derive(Parser)]
#[command(name = "reversal", version, about = "Linear extension diameter and reversal ratio of finite posets")]
struct Cli {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a poset from a family and write it in poset format.
    Gen(GenArgs),
    /// Print the number of incomparable pairs.
    Inc { poset: PathBuf },
    /// Print the width and a maximum antichain.
    Width { poset: PathBuf },
    /// Count linear extensions (fails above --limit).
    CountLinext {
        poset: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        limit: usize,
    },
    /// Linear extension diameter as a JSON report.
    Led(LedArgs),
    /// Reversal ratio led/inc as a JSON report.
    Rr(LedArgs),
    /// Number of incomparable pairs two extensions order oppositely.
    Dist { poset: PathBuf, first: PathBuf, second: PathBuf },
    /// Neighbours of an extension in the linear extension graph.
    Neighbors { poset: PathBuf, linext: PathBuf },
    /// Doubling check of a bipartite graph (side A strict, side B weak).
    CheckDoubling {
        graph: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
        /// Require strict doubling on side B as well.
        #[arg(long)]
        strict_both: bool,
    },
    /// (alpha, rho) vertex expansion check of a general graph.
    CheckExpansion {
        graph: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Sample a configuration-model bipartite graph G_r(A, B).
    SampleBipartite {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Bipartite double cover H(G) of a general graph.
    DoubleCover { graph: PathBuf },
    /// Quotient extension: layers of --k consecutive indices, in layer order.
    Quotient {
        poset: PathBuf,
        linext: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Seeded experiments; each prints a JSON report.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Grid,
    Boolean,
    Standard,
    Wstack,
    Zposet,
    Expander,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    /// For zposet: also write the two entangled extensions to PREFIX1.linext and PREFIX2.linext.
    #[arg(long, value_name = "PREFIX")]
    extensions: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LedModeArg {
    /// Exact when the extensions fit under --limit, otherwise heuristic.
    Auto,
    Exact,
    Heuristic,
}

#[derive(Args)]
struct LedArgs {
    poset: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    mode: LedModeArg,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    limit: usize,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// Write the witness pair to PREFIX1.linext and PREFIX2.linext.
    #[arg(long, value_name = "PREFIX")]
    witness: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckModeArg {
    Exact,
    Randomized,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "exact")]
    mode: CheckModeArg,
    /// Random subsets tried in randomized mode.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
}

#[derive(Subcommand)]
enum Experiment {
    /// Empirical doubling failure rate of G_r for each --k.
    Lemma1 {
        #[arg(long, default_values_t = [9usize])]
        k: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        r: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        #[arg(long)]
        strict_both: bool,
    },
    /// Comparability cap and inc of the expander-layered poset.
    Prop2 {
        #[arg(long, default_value_t = 30)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 10)]
        r: usize,
    },
    /// Distance decomposition and layer bounds over random extension pairs.
    Prop3 {
        #[arg(long, default_value_t = 30)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 10)]
        r: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Reversal ratio upper bounds for the expander-layered family.
    Corollary {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Also build the poset with this degree and run local search.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Reversal ratio of the grid n^d against 2/d and the asymptotic target.
    Drr {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        limit: usize,
    },
    /// Exhaustive block check and led bound for W_k.
    Wstack {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        limit: usize,
    },
    /// Entangled extensions of Z_{t,k} against the closed forms.
    Ztk {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        limit: usize,
    },
    /// Brute-force led of the Boolean lattice against the stated formula.
    Qd {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        limit: usize,
    },
    /// Grid maximum of the doubling-lemma function on [1/11, 1/3].
    Figure1 {
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
        /// Write `alpha,value` rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write an SVG line plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// Why a command did not succeed.
enum Failure {
    Input(String),
    Hard(Vec<String>),
}

impl From<reversal_core::Error> for Failure {
    fn from(e: reversal_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run<T> = Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: reversal_core::Result<T>) -> Run<T> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Run<Poset> {
    in_file(path, format::parse_poset(&read(path)?))
}

fn load_linext(path: &Path, p: &Poset) -> Run<LinearExtension> {
    in_file(path, format::parse_linext(&read(path)?, p))
}

fn write_file(path: &Path, text: &str) -> Run<()> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Out {
    path: Option<PathBuf>,
}

impl Out {
    fn emit(&self, text: &str) -> Run<()> {
        match &self.path {
            Some(p) => write_file(p, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn report(&self, report: &Report) -> Run<()> {
        self.emit(&(report.to_json() + "\n"))?;
        if report.hard_pass {
            Ok(())
        } else {
            Err(Failure::Hard(report.failures().into_iter().map(String::from).collect()))
        }
    }
}

fn header(what: &str, seed: Option<u64>) -> Vec<String> {
    let mut lines = vec![what.to_string()];
    if let Some(seed) = seed {
        lines.push(format!("seed {seed}"));
    }
    lines.push(format!("reversal {}", env!("CARGO_PKG_VERSION")));
    lines
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Run<T> {
    v.ok_or_else(|| Failure::Input(format!("--family {family} needs --{flag}")))
}

fn family_spec(a: &GenArgs, seed: u64) -> Run<FamilySpec> {
    Ok(match a.family {
        FamilyName::Grid => FamilySpec::Grid { n: need(a.n, "n", "grid")?, d: need(a.d, "d", "grid")? },
        FamilyName::Boolean => FamilySpec::Boolean { d: need(a.d, "d", "boolean")? },
        FamilyName::Standard => FamilySpec::Standard { d: need(a.d, "d", "standard")? },
        FamilyName::Wstack => FamilySpec::WStack { k: need(a.k, "k", "wstack")? },
        FamilyName::Zposet => FamilySpec::ZPoset { t: need(a.t, "t", "zposet")?, k: need(a.k, "k", "zposet")? },
        FamilyName::Expander => FamilySpec::ExpanderLayered {
            k: need(a.k, "k", "expander")?,
            epsilon: need(a.eps, "eps", "expander")?,
            r: need(a.r, "r", "expander")?,
            seed,
        },
    })
}

fn gen(a: &GenArgs, seed: u64, out: &Out) -> Run<()> {
    let spec = family_spec(a, seed)?;
    let p = spec.build()?;
    out.emit(&format::serialize_poset(&p, &header(&spec.to_string(), spec.seed())))?;
    if let Some(prefix) = &a.extensions {
        let FamilySpec::ZPoset { t, k } = spec else {
            return Err(Failure::Input("--extensions is only available for --family zposet".into()));
        };
        let (l1, l2) = families::z_extensions(&p, t, k)?;
        write_file(Path::new(&format!("{prefix}1.linext")), &format::serialize_linext(&l1))?;
        write_file(Path::new(&format!("{prefix}2.linext")), &format::serialize_linext(&l2))?;
    }
    Ok(())
}

fn run_led(a: &LedArgs, seed: u64) -> Run<(Poset, LedResult)> {
    let p = load_poset(&a.poset)?;
    let params = LocalSearchParams { restarts: a.restarts, max_steps: a.steps, seed };
    let led = match a.mode {
        LedModeArg::Exact => led_exact(&p, a.limit)?,
        LedModeArg::Heuristic => led_local_search(&p, &params)?,
        LedModeArg::Auto => bounds::led_auto(&p, a.limit, &params)?,
    };
    if let Some(prefix) = &a.witness {
        write_file(Path::new(&format!("{prefix}1.linext")), &format::serialize_linext(&led.witness.0))?;
        write_file(Path::new(&format!("{prefix}2.linext")), &format::serialize_linext(&led.witness.1))?;
    }
    Ok((p, led))
}

fn led_report(name: &str, a: &LedArgs, seed: u64) -> Run<Report> {
    let (p, led) = run_led(a, seed)?;
    let mut r = Report::new(name);
    if led.mode == reversal_core::LedMode::HeuristicLowerBound {
        r.seed = Some(seed);
        r.param("restarts", a.restarts).param("steps", a.steps);
    }
    r.param("poset", a.poset.display().to_string()).param("limit", a.limit);
    let inc = p.inc_count();
    r.value("led", led.value).value("mode", serde_json::to_value(led.mode).unwrap_or_default()).value("inc", inc);
    if name == "rr" {
        match reversal_ratio_pair(&p, &led.witness.0, &led.witness.1) {
            Ok(ratio) => {
                r.value("ratio", format!("{}/{}", ratio.numer(), ratio.denom()));
                r.value("ratio_display", format_ratio(&ratio));
            }
            Err(e) => {
                r.note(e.to_string());
            }
        }
        if led.mode == reversal_core::LedMode::HeuristicLowerBound {
            r.note("heuristic value: a lower bound on the reversal ratio");
        }
    }
    r.value("witness", json!([led.witness.0.order(), led.witness.1.order()]));
    r.value("stats", serde_json::to_value(&led.stats).unwrap_or_default());
    Ok(r)
}

fn check_mode(c: &CheckArgs, seed: u64) -> CheckMode {
    match c.mode {
        CheckModeArg::Exact => CheckMode::Exact,
        CheckModeArg::Randomized => CheckMode::Randomized { budget: c.budget, seed },
    }
}

fn verdict_report(name: &str, v: &DoublingVerdict, seed: Option<u64>) -> Report {
    let mut r = Report::new(name);
    r.seed = seed;
    let outcome = match &v.outcome {
        Outcome::Holds => "holds",
        Outcome::NotFalsified => "not-falsified",
        Outcome::Violated(_) => "violated",
    };
    r.value("outcome", outcome);
    r.value("mode", serde_json::to_value(v.mode).unwrap_or_default());
    r.value("subsets_checked", v.subsets_checked);
    if let Some(w) = v.violation() {
        r.value("witness", serde_json::to_value(w).unwrap_or_default());
    }
    r
}

fn experiment(e: &Experiment, seed: u64, out: &Out) -> Run<()> {
    let params = LocalSearchParams { seed, ..LocalSearchParams::default() };
    let report = match *e {
        Experiment::Lemma1 { ref k, r, samples, exact_limit, strict_both } => {
            let config = DoublingConfig { exact_limit, strict_both };
            bounds::lemma1_table(k, r, samples, seed, &config)?
        }
        Experiment::Prop2 { k, eps, r } => bounds::prop2_check(k, eps, r, seed)?,
        Experiment::Prop3 { k, eps, r, samples } => bounds::prop3_check(k, eps, r, seed, samples)?,
        Experiment::Corollary { k, eps, r } => bounds::corollary_report(k, eps, r.map(|r| (r, seed)))?,
        Experiment::Drr { n, d, limit } => bounds::drr_report(n, d, limit, &params)?,
        Experiment::Wstack { k, limit } => bounds::wstack_verify(k, limit, &params)?,
        Experiment::Ztk { t, k, limit } => bounds::ztk_verify(t, k, limit)?,
        Experiment::Qd { d, limit } => bounds::qd_led_check(d, limit, &params)?,
        Experiment::Figure1 { step, ref csv, ref svg } => {
            if let Some(path) = csv {
                write_file(path, &bounds::figure1_csv(step)?)?;
            }
            if let Some(path) = svg {
                write_file(path, &bounds::figure1_svg(step)?)?;
            }
            bounds::figure1_report(step)?
        }
    };
    out.report(&report)
}

fn run(cli: Cli) -> Run<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(format!("--threads: {e}")))?;
    }
    let out = Out { path: cli.output };
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(a) => gen(a, seed, &out),
        Command::Inc { poset } => out.emit(&format!("{}\n", load_poset(poset)?.inc_count())),
        Command::Width { poset } => {
            let (w, antichain) = width_and_antichain(&load_poset(poset)?);
            let list: Vec<String> = antichain.iter().map(usize::to_string).collect();
            out.emit(&format!("{w}\n{}\n", list.join(" ")))
        }
        Command::CountLinext { poset, limit } => {
            out.emit(&format!("{}\n", count_linear_extensions(&load_poset(poset)?, *limit)?))
        }
        Command::Led(a) => out.report(&led_report("led", a, seed)?),
        Command::Rr(a) => out.report(&led_report("rr", a, seed)?),
        Command::Dist { poset, first, second } => {
            let p = load_poset(poset)?;
            let (l1, l2) = (load_linext(first, &p)?, load_linext(second, &p)?);
            out.emit(&format!("{}\n", distance(&p, &l1, &l2)?))
        }
        Command::Neighbors { poset, linext } => {
            let p = load_poset(poset)?;
            let l = load_linext(linext, &p)?;
            let text: String = le_graph_neighbors(&p, &l)?.iter().map(format::serialize_linext).collect();
            out.emit(&text)
        }
        Command::CheckDoubling { graph, check, strict_both } => {
            let g = in_file(graph, format::parse_bipartite(&read(graph)?))?;
            let config = DoublingConfig { exact_limit: check.exact_limit, strict_both: *strict_both };
            let v = check_doubling(&g, check_mode(check, seed), &config)?;
            let seeded = (check.mode == CheckModeArg::Randomized).then_some(seed);
            let mut r = verdict_report("check-doubling", &v, seeded);
            r.param("k", g.k()).param("r", g.r()).param("strict_both", *strict_both);
            out.report(&r)
        }
        Command::CheckExpansion { graph, alpha, rho, check } => {
            let g = in_file(graph, format::parse_graph(&read(graph)?))?;
            let config = DoublingConfig { exact_limit: check.exact_limit, ..DoublingConfig::default() };
            let v = check_vertex_expansion(&g, *alpha, *rho, check_mode(check, seed), &config)?;
            let seeded = (check.mode == CheckModeArg::Randomized).then_some(seed);
            let mut r = verdict_report("check-expansion", &v, seeded);
            r.param("n", g.len()).param("alpha", *alpha).param("rho", *rho);
            out.report(&r)
        }
        Command::SampleBipartite { k, r } => {
            let g = sample_configuration(*k, *r, seed)?;
            out.emit(&format::serialize_bipartite(&g, &header(&format!("configuration k={k} r={r}"), Some(seed))))
        }
        Command::DoubleCover { graph } => {
            let g = in_file(graph, format::parse_graph(&read(graph)?))?;
            out.emit(&format::serialize_bipartite(&double_cover(&g), &header("double cover", None)))
        }
        Command::Quotient { poset, linext, k } => {
            let p = load_poset(poset)?;
            let l = load_linext(linext, &p)?;
            out.emit(&format::serialize_linext(&families::layer_quotient(&p, *k, &l)?))
        }
        Command::Experiment(e) => experiment(e, seed, &out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Hard(keys)) => {
            eprintln!("hard assertion failed: {}", keys.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
