//! Command-line front end: argument parsing, the run driver and the exit
//! code contract (0 all checks pass, 1 a check failed, 2 bad invocation).

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::bounds::{self, BoundReport, Verdict};
use crate::elliptic::{self, CurveD, FiberResult, TorsionLabel};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::report::*;
use crate::residue;
use crate::search::{self, CatalanSolution, SearchBox};

pub const DEFAULT_BOUND: u64 = 20;
pub const DEFAULT_WORKERS: usize = 1;
pub const OUT_DIR_ENV: &str = "CATALAN_ZI_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exponent pairs searched by `all`.
pub const ALL_PAIRS: [(u32, u32); 8] = [(2, 2), (3, 2), (2, 3), (5, 2), (2, 5), (7, 2), (2, 7), (11, 2)];
pub const ALL_SHIFTED: [u32; 3] = [5, 7, 11];
pub const DEFAULT_VERIFY_P: [u32; 5] = [7, 11, 13, 17, 19];

#[derive(Debug, Parser)]
#[command(name = "catalan-zi", version, about = "Exact checks for x^p - y^q = 1 over the Gaussian integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Coordinate bound of the search box, max(|re|, |im|).
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u64,
    /// Worker threads for box searches.
    #[arg(long, global = true, default_value_t = DEFAULT_WORKERS)]
    pub workers: usize,
    /// Largest working precision, in bits, for interval certificates.
    #[arg(long = "precision-cap", global = true, default_value_t = bounds::DEFAULT_PRECISION_CAP)]
    pub precision_cap: u32,
    /// Report path; defaults to $CATALAN_ZI_OUT_DIR/<command>-report.json or stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand, Clone)]
pub enum Command {
    /// Search x^p - y^q = 1 for every p in --p and q in --q.
    Search {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
    },
    /// Search x3^p - 4 x2^p = 4.
    Shifted {
        #[arg(long, value_delimiter = ',', default_values_t = ALL_SHIFTED)]
        p: Vec<u32>,
    },
    /// Search a x^p - y^p = b.
    General {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u32>,
    },
    /// Certify the inequality chains and residue-ring facts for each p.
    Verify {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_VERIFY_P)]
        p: Vec<u32>,
    },
    /// Torsion points and trace-map fibers.
    Fibers,
    /// Everything above with fixed parameter sets.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Search,
    Shifted,
    General,
    Verify,
    Fibers,
    All,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Search => "search",
            CommandKind::Shifted => "shifted",
            CommandKind::General => "general",
            CommandKind::Verify => "verify",
            CommandKind::Fibers => "fibers",
            CommandKind::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub p: Vec<u32>,
    pub q: Vec<u32>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub bound: u64,
    pub workers: usize,
    pub precision_cap: u32,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            p: Vec::new(),
            q: Vec::new(),
            a: None,
            b: None,
            bound: DEFAULT_BOUND,
            workers: DEFAULT_WORKERS,
            precision_cap: bounds::DEFAULT_PRECISION_CAP,
            out: None,
            timing: false,
        }
    }

    pub fn from_cli(cli: Cli) -> Self {
        let c = cli.common;
        let (command, p, q, a, b) = match cli.command {
            Command::Search { p, q } => (CommandKind::Search, p, q, None, None),
            Command::Shifted { p } => (CommandKind::Shifted, p, vec![], None, None),
            Command::General { a, b, p } => (CommandKind::General, p, vec![], Some(a), Some(b)),
            Command::Verify { p } => (CommandKind::Verify, p, vec![], None, None),
            Command::Fibers => (CommandKind::Fibers, vec![], vec![], None, None),
            Command::All => (CommandKind::All, vec![], vec![], None, None),
        };
        RunConfig {
            command,
            p,
            q,
            a,
            b,
            bound: c.bound,
            workers: c.workers,
            precision_cap: c.precision_cap,
            out: c.out,
            timing: c.timing,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        if self.bound == 0 {
            return bad("--bound must be positive".into());
        }
        if self.workers == 0 {
            return bad("--workers must be positive".into());
        }
        if self.precision_cap < 16 {
            return bad("--precision-cap must be at least 16".into());
        }
        match self.command {
            CommandKind::Search => {
                if let Some(e) = self.p.iter().chain(&self.q).find(|&&e| e < 2) {
                    return bad(format!("exponents must be >= 2, got {e}"));
                }
            }
            CommandKind::Shifted | CommandKind::General => {
                if let Some(p) = self.p.iter().find(|&&p| p < 3 || !search::is_prime(p)) {
                    return bad(format!("{p} is not an odd prime"));
                }
                if self.command == CommandKind::General && self.a == Some(0) {
                    return bad("--a must be nonzero".into());
                }
            }
            CommandKind::Verify => {
                if let Some(p) = self.p.iter().find(|&&p| p < 7 || !search::is_prime(p)) {
                    return bad(format!("verify needs primes >= 7, got {p}"));
                }
            }
            CommandKind::Fibers | CommandKind::All => {}
        }
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            command: self.command.name().to_string(),
            p: self.p.clone(),
            q: self.q.clone(),
            bound: self.bound,
            precision_cap: self.precision_cap,
            a: self.a,
            b: self.b,
        }
    }

    /// Where the report goes: `--out`, else the env directory, else stdout.
    pub fn output_path(&self) -> Option<PathBuf> {
        if let Some(p) = &self.out {
            return Some(p.clone());
        }
        std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{}-report.json", self.command.name())))
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: SearchReport,
    pub exit_code: i32,
}

/// Runs the configured command and assembles the report.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    let mut report = SearchReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.echo(),
        searches: Vec::new(),
        shifted: Vec::new(),
        general: Vec::new(),
        bound_reports: Vec::new(),
        residue_checks: Vec::new(),
        fibers: None,
        assumptions: Vec::new(),
        failures: Vec::new(),
        passed: false,
        wall_time_ms: None,
    };
    let bx = SearchBox::new(config.bound);
    pool.install(|| -> Result<()> {
        match config.command {
            CommandKind::Search => {
                for &p in &config.p {
                    for &q in &config.q {
                        report.searches.push(catalan_entry(p, q, bx, config.workers)?);
                    }
                }
            }
            CommandKind::Shifted => {
                for &p in &config.p {
                    report.shifted.push(shifted_entry(p, bx, config.workers)?);
                }
            }
            CommandKind::General => {
                let (a, b) = (config.a.unwrap_or(1), config.b.unwrap_or(0));
                for &p in &config.p {
                    let g = search::search_general(a, b, p, bx)?;
                    report.general.push(GeneralEntry {
                        a,
                        b,
                        p,
                        bound: config.bound,
                        within_hypothesis: g.within_hypothesis,
                        solutions: g.solutions,
                    });
                }
            }
            CommandKind::Verify => verify_into(&mut report, &config.p, config.precision_cap)?,
            CommandKind::Fibers => report.fibers = Some(fiber_section(config.bound)?),
            CommandKind::All => {
                for (p, q) in ALL_PAIRS {
                    report.searches.push(catalan_entry(p, q, bx, config.workers)?);
                }
                for p in ALL_SHIFTED {
                    report.shifted.push(shifted_entry(p, bx, config.workers)?);
                }
                verify_into(&mut report, &DEFAULT_VERIFY_P, config.precision_cap)?;
                report.bound_reports.extend(bounds::check_theorem2_constants());
                report.fibers = Some(fiber_section(config.bound)?);
            }
        }
        Ok(())
    })?;
    if report.fibers.is_some() {
        report.assumptions.push("E: y^2 = x^3 + 1 has rank 0 over Q (imported, not recomputed)".into());
    }
    report.failures = collect_failures(&report);
    report.passed = report.failures.is_empty();
    if config.timing {
        report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    }
    let exit_code = if report.passed { EXIT_OK } else { EXIT_FAILED };
    Ok(RunOutcome { report, exit_code })
}

/// Runs and writes the report; returns the process exit code.
pub fn run_and_write(config: &RunConfig) -> i32 {
    let outcome = match run(config) {
        Ok(o) => o,
        Err(e @ Error::Precondition(_)) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILED;
        }
    };
    let json = match outcome.report.to_json() {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILED;
        }
    };
    match config.output_path() {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    eprintln!("error: {}: {e}", dir.display());
                    return EXIT_FAILED;
                }
            }
            if let Err(e) = std::fs::write(&path, json) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_FAILED;
            }
            eprintln!("wrote {}", path.display());
        }
        None => print!("{json}"),
    }
    for f in &outcome.report.failures {
        eprintln!("FAIL {f}");
    }
    outcome.exit_code
}

/// Nontrivial solutions predicted by the known classification:
/// `(-2, ±3i)` for `(3, 2)`, `(±3, 2)` for `(2, 3)`, none otherwise.
pub fn expected_nontrivial(p: u32, q: u32) -> Vec<(GaussianInt, GaussianInt)> {
    let g = GaussianInt::new;
    match (p, q) {
        (3, 2) => vec![(g(-2, 0), g(0, -3)), (g(-2, 0), g(0, 3))],
        (2, 3) => vec![(g(-3, 0), g(2, 0)), (g(3, 0), g(2, 0))],
        _ => Vec::new(),
    }
}

fn in_box(z: &GaussianInt, bx: SearchBox) -> bool {
    let b = num_bigint::BigInt::from(bx.bound);
    z.re <= b && -&z.re <= b && z.im <= b && -&z.im <= b
}

pub fn conjugation_closed(solutions: &[CatalanSolution]) -> bool {
    solutions
        .iter()
        .all(|s| solutions.iter().any(|t| t.x == s.x.conj() && t.y == s.y.conj()))
}

fn catalan_entry(p: u32, q: u32, bx: SearchBox, workers: usize) -> Result<CatalanSearchEntry> {
    let solutions = search::search_catalan_parallel(p, q, bx, workers)?;
    let found = search::nontrivial(&solutions);
    let expected: Vec<_> = expected_nontrivial(p, q)
        .into_iter()
        .filter(|(x, y)| in_box(x, bx) && in_box(y, bx))
        .collect();
    Ok(CatalanSearchEntry {
        p,
        q,
        bound: bx.bound,
        nontrivial_count: found.len(),
        matches_expected: found == expected,
        conjugation_closed: conjugation_closed(&solutions),
        expected_nontrivial: expected,
        solutions,
    })
}

/// The exceptional pair `(x3, x2) = (-(1+i), i)` at `p = 5`.
pub fn stated_shifted_solution() -> (GaussianInt, GaussianInt) {
    (GaussianInt::new(-1, -1), GaussianInt::new(0, 1))
}

fn shifted_entry(p: u32, bx: SearchBox, workers: usize) -> Result<ShiftedEntry> {
    let (s3, s2) = stated_shifted_solution();
    let rows: Vec<ShiftedRow> = search::search_shifted_parallel(p, bx, workers)?
        .into_iter()
        .map(|s| {
            let status = if s.trivial {
                ShiftedStatus::Trivial
            } else if p == 5 && s.x3 == s3 && s.x2 == s2 {
                ShiftedStatus::Stated
            } else if p == 5 && s.x3 == s3.conj() && s.x2 == s2.conj() {
                ShiftedStatus::ConjugateOfStated
            } else {
                ShiftedStatus::Unexpected
            };
            ShiftedRow { x3: s.x3, x2: s.x2, status }
        })
        .collect();
    let has = |st: ShiftedStatus| rows.iter().any(|r| r.status == st);
    let discrepancy = has(ShiftedStatus::ConjugateOfStated).then(|| {
        format!(
            "({}, {}) also solves x3^5 - 4 x2^5 = 4 but is not listed as an exception",
            s3.conj(),
            s2.conj()
        )
    });
    let stated_needed = p == 5 && in_box(&s3, bx) && in_box(&s2, bx);
    let matches_expected = !has(ShiftedStatus::Unexpected) && (!stated_needed || has(ShiftedStatus::Stated));
    Ok(ShiftedEntry { p, bound: bx.bound, solutions: rows, discrepancy, matches_expected })
}

fn verify_into(report: &mut SearchReport, ps: &[u32], cap: u32) -> Result<()> {
    for &p in ps {
        report.bound_reports.extend(bounds::verify_exponent(p, cap)?);
        report.residue_checks.push(residue_entry(p)?);
    }
    Ok(())
}

/// Residue-ring facts at modulus `(1+i)^{p-4}`.
pub fn residue_entry(p: u32) -> Result<ResidueEntry> {
    let k = p - 4;
    let unit_group_order = residue::unit_group_order(k)?;
    let enumerable = k <= residue::MAX_ENUMERATION_EXPONENT;
    let enumerated_units = if enumerable {
        Some(residue::enumerate_units(k)?.len() as u64)
    } else {
        None
    };
    let forces_identity = if enumerable && k >= 2 {
        Some(residue::pth_power_forces_identity(p, k)?.holds)
    } else {
        None
    };
    let units_are_pth_powers = search::verify_unit_pth_powers(p)?;
    // 2^{p-4} - 2^{p-5}
    let published = (1u64 << k) - (1u64 << (k - 1));
    let ok = unit_group_order == published
        && enumerated_units.is_none_or(|n| n == unit_group_order)
        && forces_identity.unwrap_or(true)
        && units_are_pth_powers;
    Ok(ResidueEntry { p, k, unit_group_order, enumerated_units, forces_identity, units_are_pth_powers, ok })
}

pub fn fiber_section(bound: u64) -> Result<FiberSection> {
    let torsion = elliptic::torsion_points(CurveD::PlusOne)?
        .into_iter()
        .map(|(label, point)| TorsionRow { label, point: point.to_string() })
        .collect();
    let mut fibers = Vec::new();
    for target in TorsionLabel::ALL {
        let result = elliptic::fiber_decision(CurveD::PlusOne, target, bound)?;
        let as_expected = result.is_empty_fiber();
        fibers.push(FiberRow { curve: CurveD::PlusOne, target, result, as_expected });
    }
    let result = elliptic::fiber_decision(CurveD::MinusOne, TorsionLabel::Infinity, bound)?;
    let as_expected = match &result {
        FiberResult::Points { nontrivial, .. } => {
            let expected: Vec<_> = expected_nontrivial(3, 2)
                .into_iter()
                .filter(|(x, y)| in_box(x, SearchBox::new(bound)) && in_box(y, SearchBox::new(bound)))
                .collect();
            *nontrivial == expected
        }
        FiberResult::Empty { .. } => false,
    };
    fibers.push(FiberRow { curve: CurveD::MinusOne, target: TorsionLabel::Infinity, result, as_expected });
    Ok(FiberSection { torsion, fibers })
}

fn collect_failures(report: &SearchReport) -> Vec<String> {
    let mut out = Vec::new();
    for s in &report.searches {
        if !s.matches_expected {
            let found: Vec<String> = s
                .solutions
                .iter()
                .filter(|x| !x.trivial)
                .map(|x| format!("({}, {})", x.x, x.y))
                .collect();
            out.push(format!(
                "search p={} q={} bound={}: nontrivial solutions [{}] differ from the expected set",
                s.p,
                s.q,
                s.bound,
                found.join(", ")
            ));
        }
        if !s.conjugation_closed {
            out.push(format!("search p={} q={}: solution set not closed under conjugation", s.p, s.q));
        }
    }
    for s in &report.shifted {
        if !s.matches_expected {
            out.push(format!("shifted p={} bound={}: unexpected solutions", s.p, s.bound));
        }
    }
    for b in &report.bound_reports {
        if b.verdict != Verdict::Certified {
            out.push(format!("{} {:?}: {:?}", b.claim, b.parameters, b.verdict));
        }
    }
    for r in &report.residue_checks {
        if !r.ok {
            out.push(format!("residue check p={} k={} failed", r.p, r.k));
        }
    }
    if let Some(f) = &report.fibers {
        for row in f.fibers.iter().filter(|r| !r.as_expected) {
            out.push(format!("fiber over {} on d={} not as expected", row.target, row.curve.value()));
        }
    }
    out
}

/// Convenience for callers assembling bound reports outside the CLI.
pub fn all_certified(reports: &[BoundReport]) -> bool {
    reports.iter().all(BoundReport::is_certified)
}
