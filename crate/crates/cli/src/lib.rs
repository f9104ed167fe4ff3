//! Command-line front end: problem files in, Betti tables and regularity
//! reports out.

pub mod error;
pub mod problem;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use resreg::asymptotics::{rho_upper, AsymptoticParams, ReductionCertificate};
use resreg::extint::display_vector;
use resreg::{
    asymptotic_report, find_reductions, is_filter_regular, koszul_tor_oracle, res_reg, res_reg_via_colon, resolve,
    AsymptoticReport, BettiTable, ColonRegularity, ExtendedInt, FieldSpec, FilterRegularityReport, RegularityReport,
    Route, Verdict,
};

pub use error::CliError;
pub use problem::{Problem, ProblemFile};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "resreg", version, about = "Multigraded resolution regularity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Minimal free resolution, Betti table and res-reg.
    Resolve,
    /// Betti table from Koszul homology (monomial modules only).
    TorOracle,
    /// Filter-regularity of a sequence with respect to one coordinate.
    Filter,
    /// res-reg from a-invariants of colon quotients.
    ColonReg,
    /// res-reg of the powers I^n M, the linear fit, reductions and bounds.
    Asympt,
    /// Reductions of I on M generated by subsets of the generators of I.
    Reductions,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::TorOracle => "tor-oracle",
            Command::Filter => "filter",
            Command::ColonReg => "colon-reg",
            Command::Asympt => "asympt",
            Command::Reductions => "reductions",
        }
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Options {
    /// Problem file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coefficient field, `q` or `fp:P`; overrides the problem file.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Master seed for generic coordinate changes (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest power n for `asympt` (default 6).
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Constant differences required to call the sequence linear (default 2).
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Largest reduction exponent tried (default 8).
    #[arg(long, global = true)]
    pub n0_max: Option<u32>,
    /// Most generators removed when searching for reductions (default 2).
    #[arg(long, global = true)]
    pub max_subset: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Sequence for `filter`, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub seq: Option<Vec<String>>,
    /// 1-based coordinate for `filter` and `colon-reg`.
    #[arg(long, global = true)]
    pub coord: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Settings after merging flags, problem-file parameters and defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field: Option<FieldSpec>,
    pub seed: u64,
    pub params: AsymptoticParams,
    pub format: Format,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn resolve(opts: &Options, file: &ProblemFile) -> Result<Self, CliError> {
        let field = opts
            .field
            .as_deref()
            .map(|f| f.parse::<FieldSpec>().map_err(|e| CliError::User(format!("--field: {e}"))))
            .transpose()?;
        let d = AsymptoticParams::default();
        let params = AsymptoticParams {
            n_max: opts.n_max.or(file.n_max).unwrap_or(d.n_max),
            window: opts.window.or(file.window).unwrap_or(d.window),
            n0_max: opts.n0_max.or(file.n0_max).unwrap_or(d.n0_max),
            max_subset: opts.max_subset.or(file.max_subset).unwrap_or(d.max_subset),
        };
        if params.n_max < 2 {
            return Err(CliError::User("n_max: must be at least 2".into()));
        }
        if opts.jobs == Some(0) {
            return Err(CliError::User("--jobs: must be positive".into()));
        }
        Ok(RunConfig {
            field,
            seed: opts.seed.or(file.seed).unwrap_or(0),
            params,
            format: if opts.json { Format::Json } else { Format::Text },
            jobs: opts.jobs,
        })
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    field: FieldSpec,
    seed: u64,
    result: T,
}

#[derive(Serialize)]
struct TableResult {
    betti: BettiTable,
    regularity: RegularityReport,
}

#[derive(Serialize)]
struct ColonResult {
    resreg: Vec<ExtendedInt>,
    coordinates: Vec<ColonRegularity>,
    route: Route,
}

#[derive(Serialize)]
struct ReductionsResult {
    certificates: Vec<ReductionCertificate>,
    rho_upper: Vec<ExtendedInt>,
}

/// Runs one command and returns what it prints on success.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let path = cli.opts.input.as_ref().ok_or_else(|| CliError::User("--input: a problem file is required".into()))?;
    let file = problem::read_problem(path)?;
    run_problem(cli.command, &cli.opts, file)
}

pub fn run_problem(command: Command, opts: &Options, file: ProblemFile) -> Result<String, CliError> {
    let config = RunConfig::resolve(opts, &file)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| execute(command, opts, file, &config))
}

fn envelope<T: Serialize>(
    command: Command,
    problem: &Problem,
    config: &RunConfig,
    result: T,
) -> Result<String, CliError> {
    let env = Envelope {
        schema: SCHEMA_VERSION,
        tool: "resreg",
        version: TOOL_VERSION,
        command: command.name(),
        field: problem.ring.field(),
        seed: config.seed,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn coordinate(opts: &Options, file: &ProblemFile, k: usize) -> Result<Option<usize>, CliError> {
    match opts.coord.or(file.coordinate) {
        None => Ok(None),
        Some(c) if (1..=k).contains(&c) => Ok(Some(c - 1)),
        Some(c) => Err(CliError::User(format!("--coord: {c} is not in 1..{k}"))),
    }
}

fn execute(command: Command, opts: &Options, file: ProblemFile, config: &RunConfig) -> Result<String, CliError> {
    let problem = Problem::build(file, config.field)?;
    let k = problem.ring.num_blocks();
    let json = config.format == Format::Json;
    match command {
        Command::Resolve | Command::TorOracle => {
            let (betti, regularity) = if command == Command::Resolve {
                let r = resolve(&problem.module)?;
                (r.betti(), res_reg(&r)?)
            } else {
                let t = koszul_tor_oracle(&problem.module, None)?;
                let reg = t.regularity(k, problem.ring.field(), Route::Koszul);
                (t, reg)
            };
            if json {
                envelope(command, &problem, config, TableResult { betti, regularity })
            } else {
                Ok(text_table(&betti, &regularity))
            }
        }
        Command::Filter => {
            let src = opts
                .seq
                .clone()
                .or_else(|| problem.file.sequence.clone())
                .ok_or_else(|| CliError::User("--seq: a sequence is required".into()))?;
            let seq = problem.parse_sequence(&src, "sequence")?;
            let l = coordinate(opts, &problem.file, k)?.ok_or_else(|| CliError::User("--coord: required".into()))?;
            let report = is_filter_regular(&seq, &problem.module, l)?;
            if json {
                envelope(command, &problem, config, report)
            } else {
                Ok(text_filter(&report))
            }
        }
        Command::ColonReg => {
            let ls: Vec<usize> = match coordinate(opts, &problem.file, k)? {
                Some(l) => vec![l],
                None => (0..k).collect(),
            };
            let coordinates: Vec<ColonRegularity> =
                ls.iter().map(|&l| res_reg_via_colon(&problem.module, l, config.seed)).collect::<Result<_, _>>()?;
            let result =
                ColonResult { resreg: coordinates.iter().map(|c| c.value).collect(), coordinates, route: Route::Colon };
            let all = ls.len() == k;
            if json {
                envelope(command, &problem, config, result)
            } else {
                Ok(text_colon(&result, all))
            }
        }
        Command::Asympt => {
            let (ideal, rels) = problem.ideal_and_quotient()?;
            let report = asymptotic_report(&problem.ring, ideal, rels, &config.params)?;
            if json {
                envelope(command, &problem, config, report)
            } else {
                Ok(text_asympt(&report))
            }
        }
        Command::Reductions => {
            let (ideal, rels) = problem.ideal_and_quotient()?;
            let certificates =
                find_reductions(&problem.ring, ideal, rels, config.params.max_subset, config.params.n0_max)?;
            let result = ReductionsResult { rho_upper: rho_upper(&certificates, k), certificates };
            if json {
                envelope(command, &problem, config, result)
            } else {
                Ok(text_reductions(&result.certificates, &result.rho_upper))
            }
        }
    }
}

fn text_table(betti: &BettiTable, reg: &RegularityReport) -> String {
    let mut s = String::new();
    let route = serde_json::to_value(reg.route).unwrap();
    let _ = writeln!(s, "field: {}  route: {}", reg.field, route.as_str().unwrap());
    if betti.is_empty() {
        s.push_str("(zero module)\n");
    } else {
        s.push_str(&betti.render_text());
        if !s.ends_with('\n') {
            s.push('\n');
        }
    }
    let _ = writeln!(s, "res-reg: {}", display_vector(&reg.resreg));
    let _ = writeln!(s, "d: {}", display_vector(&reg.d));
    let _ = writeln!(s, "beg: {}", display_vector(&reg.beg));
    s
}

fn text_filter(r: &FilterRegularityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "sequence: {}", r.sequence.join(", "));
    let _ = writeln!(s, "coordinate: {}", r.coordinate);
    let _ = writeln!(s, "a-invariants: {}", display_vector(&r.values));
    match r.verdict {
        Verdict::FilterRegular => s.push_str("verdict: filter-regular\n"),
        Verdict::FailsAt(i) => {
            let _ = writeln!(s, "verdict: not filter-regular (fails at {i})");
        }
    }
    let _ = writeln!(s, "bfa: {}", r.bfa);
    s
}

fn text_colon(r: &ColonResult, all: bool) -> String {
    let mut s = String::new();
    for c in &r.coordinates {
        let seed = c.seed.map_or("none".to_string(), |x| x.to_string());
        let _ = writeln!(
            s,
            "coordinate {}: {}  per-i {}  change seed {}",
            c.coordinate,
            c.value,
            display_vector(&c.per_i),
            seed
        );
    }
    if all {
        let _ = writeln!(s, "res-reg: {}", display_vector(&r.resreg));
    }
    s
}

fn ints(v: &[i64]) -> String {
    display_vector(&v.iter().map(|&x| ExtendedInt::Finite(x)).collect::<Vec<_>>())
}

fn text_reductions(certs: &[ReductionCertificate], rho: &[ExtendedInt]) -> String {
    let mut s = String::new();
    for c in certs {
        let _ = writeln!(s, "reduction ({})  n0 {}  dJ {}", c.gens.join(","), c.n0, display_vector(&c.d_j));
    }
    let _ = writeln!(s, "rho_upper: {}", display_vector(rho));
    s
}

fn text_asympt(r: &AsymptoticReport) -> String {
    let mut s = String::new();
    for e in &r.sequence {
        let _ = writeln!(s, "n {}  res-reg {}  d {}", e.n, display_vector(&e.resreg), display_vector(&e.d));
    }
    match (&r.slope, &r.intercept, r.n_star) {
        (Some(a), Some(b), Some(n)) => {
            let _ = writeln!(s, "slope {}  intercept {}  from n = {}", ints(a), ints(b), n);
        }
        _ => s.push_str("not stabilized\n"),
    }
    s.push_str(&text_reductions(&r.certificates, &r.rho_upper));
    let _ = writeln!(s, "d(I): {}  beg(M): {}", display_vector(&r.d_ideal), display_vector(&r.beg));
    if let Some(b) = &r.bounds {
        for (name, c) in [
            ("slope <= d(I)", &b.slope_at_most_d),
            ("d(I^n M) >= n*slope + beg", &b.degree_lower_bound),
            ("intercept >= beg", &b.intercept_at_least_beg),
            ("slope <= rho_upper", &b.slope_at_most_rho_upper),
        ] {
            let _ = writeln!(s, "{}: {}", name, if c.passed { "ok" } else { "FAILED" });
            for w in &c.witnesses {
                let _ = writeln!(s, "  {w}");
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(extra: &str) -> ProblemFile {
        serde_json::from_str(&format!(
            r#"{{"ring":{{"field":"q","blocks":[["a"]]}},"module":{{"type":"quotient"}}{extra}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let f = file(r#","n_max":4,"window":3,"seed":5"#);
        let c = RunConfig::resolve(&Options::default(), &f).unwrap();
        assert_eq!((c.params.n_max, c.params.window, c.seed), (4, 3, 5));
        assert_eq!(c.params.n0_max, AsymptoticParams::default().n0_max);
        assert_eq!(c.format, Format::Text);
        let opts = Options { n_max: Some(7), seed: Some(1), json: true, ..Default::default() };
        let c = RunConfig::resolve(&opts, &f).unwrap();
        assert_eq!((c.params.n_max, c.params.window, c.seed), (7, 3, 1));
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn bad_settings_are_user_errors() {
        let f = file("");
        for opts in [
            Options { n_max: Some(1), ..Default::default() },
            Options { jobs: Some(0), ..Default::default() },
            Options { field: Some("fp:4".into()), ..Default::default() },
        ] {
            assert_eq!(RunConfig::resolve(&opts, &f).unwrap_err().exit_code(), 2);
        }
    }

    #[test]
    fn coordinates_are_one_based() {
        let f = file("");
        let opts = Options { coord: Some(1), ..Default::default() };
        assert_eq!(coordinate(&opts, &f, 2).unwrap(), Some(0));
        let opts = Options { coord: Some(0), ..Default::default() };
        assert!(coordinate(&opts, &f, 2).is_err());
    }

    #[test]
    fn text_resolution_of_a_free_module() {
        let out = run_problem(Command::Resolve, &Options::default(), file("")).unwrap();
        assert!(out.contains("res-reg: (0)"), "{out}");
    }
}
