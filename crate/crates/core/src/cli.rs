//! The `ring-codebook` command line: generate, evaluate, cross-check,
//! tabulate, selftest.
//!
//! Exit codes: 0 success, 1 verification failure (a numeric check did
//! not hold), 2 usage or configuration error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::characters::MultCharIndex;
use crate::codebook::{Codebook, Construction};
use crate::error::{Error, Result};
use crate::eval::{
    evaluate, i_max_formula, ratio_formula_c1, ratio_formula_c2, welch_bound, EvalMode,
    EvalOptions, EvalReport, DEFAULT_SAMPLE_PAIRS,
};
use crate::field::{factorization_string, prime_power_decomposition, FieldSpec, DEFAULT_SIZE_GUARD};
use crate::ring::{self, RingAdditiveCharIndex, RingMultCharIndex};
use crate::selftest;

/// Entry point used by main(); returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version land here too; they exit 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ring-codebook",
    version,
    about = "Codebooks and exact character sums over the local ring F_q + uF_q (u^2 = 0)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Build a codebook and write it to a JSON file
    Gen(GenArgs),
    /// Evaluate a codebook file: I_max, Welch bound, ratio, spectrum
    Eval(EvalArgs),
    /// Cross-check the closed-form ring Gauss sum against enumeration
    Gauss(GaussArgs),
    /// Tabulate I_max, the Welch bound and their ratio across q values
    Table(TableArgs),
    /// Run the library's invariant suites
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Field size q = p^m (must be a prime power)
    #[arg(long, conflicts_with_all = ["p", "m"])]
    pub q: Option<u32>,
    /// Prime characteristic (use together with --m)
    #[arg(long, requires = "m")]
    pub p: Option<u32>,
    /// Extension degree (use together with --p)
    #[arg(long, requires = "p")]
    pub m: Option<u32>,
    /// Modulus coefficients, ascending degree, comma separated (m + 1 values)
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Ignore the q size guard
    #[arg(long)]
    pub force: bool,
}

impl FieldArgs {
    fn resolve(&self) -> Result<FieldSpec> {
        let (p, m) = match (self.q, self.p, self.m) {
            (Some(q), None, None) => prime_power_decomposition(q).ok_or_else(|| {
                Error::Config(format!(
                    "q = {q} = {} is not a prime power",
                    factorization_string(q)
                ))
            })?,
            (None, Some(p), Some(m)) => (p, m),
            _ => {
                return Err(Error::Config(
                    "specify the field as --q <prime power> or as --p <prime> --m <degree>".into(),
                ))
            }
        };
        FieldSpec::build_with(p, m, self.modulus.as_deref(), effective_guard(self.force)?)
    }
}

fn effective_guard(force: bool) -> Result<u32> {
    if force {
        return Ok(u32::MAX);
    }
    match std::env::var("RING_CODEBOOK_GUARD") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Error::Config(format!(
                "RING_CODEBOOK_GUARD must be an integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_SIZE_GUARD),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConstructionArg {
    C0,
    C1,
    C2,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Construction {
        match c {
            ConstructionArg::C0 => Construction::C0,
            ConstructionArg::C1 => Construction::C1,
            ConstructionArg::C2 => Construction::C2,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Which family to build
    #[arg(long, value_enum)]
    pub construction: ConstructionArg,
    /// Fixed multiplicative index j for c1 (default 1)
    #[arg(long)]
    pub fixed_j: Option<u32>,
    /// Fixed additive parameter b (an encoding) for c2 (default 0)
    #[arg(long)]
    pub fixed_b: Option<u32>,
    /// Output path (default <construction>-q<q>.json)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Codebook JSON file produced by gen
    pub file: PathBuf,
    /// Pair selection (default: exhaustive)
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Number of sampled pairs (sampled mode only)
    #[arg(long)]
    pub samples: Option<u64>,
    /// RNG seed for sampled mode (default 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report format on stdout
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Also write the report to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ignore the q guard and the exhaustive row limit
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct GaussArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// q values (prime powers), comma separated
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub q: Vec<u32>,
    /// Output format
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Largest q whose I_max is verified by building and evaluating the
    /// codebooks; larger q report the closed formulas only
    #[arg(long, default_value_t = 9)]
    pub brute_max: u32,
    /// Write the table here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ignore the q size guard
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Largest field size to include
    #[arg(long, default_value_t = 9)]
    pub q_max: u32,
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Gauss(args) => cmd_gauss(args),
        Cmd::Table(args) => cmd_table(args),
        Cmd::Selftest(args) => cmd_selftest(args),
    }
}

// ------------------------------------------------------------------- gen

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let spec = args.field.resolve()?;
    let construction = Construction::from(args.construction);

    if args.fixed_j.is_some() && !matches!(construction, Construction::C1) {
        return Err(Error::Config("--fixed-j applies to c1 only".into()));
    }
    if args.fixed_b.is_some() && !matches!(construction, Construction::C2) {
        return Err(Error::Config("--fixed-b applies to c2 only".into()));
    }

    let cb = match construction {
        Construction::C1 => {
            let j = MultCharIndex::new(&spec, args.fixed_j.unwrap_or(1));
            Codebook::build_c1(&spec, j)?
        }
        Construction::C2 => {
            let b = spec.element(args.fixed_b.unwrap_or(0))?;
            Codebook::build_c2(&spec, b)?
        }
        Construction::C0 => Codebook::build_c0(&spec)?,
    };

    let path = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{construction}-q{}.json", spec.q())));
    cb.write_file(&path)?;
    println!(
        "wrote {} codebook: N={} K={} -> {}",
        construction,
        cb.n(),
        cb.k(),
        path.display()
    );
    Ok(0)
}

// ------------------------------------------------------------------ eval

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let guard = effective_guard(args.force)?;
    let cb = Codebook::read_file(&args.file, guard)?;

    let mode = match args.mode {
        Some(ModeArg::Sampled) => EvalMode::Sampled {
            pairs: args.samples.unwrap_or(DEFAULT_SAMPLE_PAIRS),
            seed: args.seed.unwrap_or(0),
        },
        Some(ModeArg::Exhaustive) | None => {
            if args.samples.is_some() || args.seed.is_some() {
                return Err(Error::Config(
                    "--samples/--seed only make sense with --mode sampled".into(),
                ));
            }
            EvalMode::Exhaustive
        }
    };
    let report = evaluate(
        &cb,
        &EvalOptions {
            mode,
            parallel: true,
            force_exhaustive: args.force,
        },
    )?;

    let text = match args.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => format!("{}\n{}", EvalReport::csv_header(), report.to_csv_row()),
    };
    println!("{text}");
    if let Some(out) = &args.out {
        std::fs::write(out, format!("{text}\n"))?;
    }

    match cb.construction() {
        Construction::C0 => {
            eprintln!("c0 carries no two-level spectrum contract; report only");
            Ok(0)
        }
        _ => {
            if report.spectrum_gate() {
                eprintln!("spectrum check: ok (levels within 1e-9 of {{0, 1/(q-1)}})");
                Ok(0)
            } else {
                eprintln!("spectrum check FAILED: amplitudes leave {{0, 1/(q-1)}}");
                Ok(1)
            }
        }
    }
}

// ----------------------------------------------------------------- gauss

fn cmd_gauss(args: GaussArgs) -> Result<i32> {
    let spec = args.field.resolve()?;
    let q = spec.q();
    let tol = 1e-9 * f64::from(q) * f64::from(q - 1);

    let mut lines = String::from("j,a,b,c,closed_re,closed_im,oracle_re,oracle_im,abs_diff\n");
    let mut max_diff: f64 = 0.0;
    let mut tuples = 0u64;
    for j in 0..q - 1 {
        for a in spec.elements() {
            let phi = RingMultCharIndex::new(MultCharIndex::new(&spec, j), a);
            for b in spec.elements() {
                for c in spec.elements() {
                    let lam = RingAdditiveCharIndex::new(b, c);
                    let closed = ring::gauss_sum_closed(&spec, phi, lam);
                    let oracle = ring::gauss_sum_oracle(&spec, phi, lam);
                    let diff = (closed - oracle).norm();
                    max_diff = max_diff.max(diff);
                    tuples += 1;
                    lines.push_str(&format!(
                        "{j},{},{},{},{},{},{},{},{diff}\n",
                        a.encoding(),
                        b.encoding(),
                        c.encoding(),
                        closed.re,
                        closed.im,
                        oracle.re,
                        oracle.im
                    ));
                }
            }
        }
    }

    match &args.out {
        Some(path) => {
            std::fs::write(path, &lines)?;
            println!(
                "wrote {tuples} tuples -> {}; max |closed - oracle| = {max_diff:.3e}",
                path.display()
            );
        }
        None => {
            print!("{lines}");
            eprintln!("{tuples} tuples; max |closed - oracle| = {max_diff:.3e}");
        }
    }

    if max_diff < tol {
        Ok(0)
    } else {
        eprintln!("FAILED: max difference {max_diff:.3e} is not below {tol:.3e}");
        Ok(1)
    }
}

// ----------------------------------------------------------------- table

fn cmd_table(args: TableArgs) -> Result<i32> {
    struct Row {
        construction: Construction,
        q: u32,
        n: u64,
        k: u64,
        i_max: f64,
        i_w: f64,
        ratio: f64,
        source: &'static str,
    }

    let guard = effective_guard(args.force)?;
    let mut rows = Vec::new();
    let mut failures = 0u32;

    for &q in &args.q {
        let (p, m) = prime_power_decomposition(q).ok_or_else(|| {
            Error::Config(format!(
                "q = {q} = {} is not a prime power",
                factorization_string(q)
            ))
        })?;
        let k = u64::from(q) * u64::from(q - 1);
        for construction in [Construction::C1, Construction::C2] {
            let n = match construction {
                Construction::C1 => u64::from(q).pow(3),
                _ => u64::from(q) * u64::from(q) * u64::from(q - 1),
            };
            let i_w = welch_bound(n, k)?;
            let formula_ratio = match construction {
                Construction::C1 => ratio_formula_c1(q)?,
                _ => ratio_formula_c2(q)?,
            };
            if q <= args.brute_max {
                let spec = FieldSpec::build_with(p, m, None, guard)?;
                let cb = match construction {
                    Construction::C1 => Codebook::build_c1(&spec, MultCharIndex::new(&spec, 1))?,
                    _ => Codebook::build_c2(&spec, crate::field::FieldElement::ZERO)?,
                };
                let report = evaluate(&cb, &EvalOptions::default())?;
                let ok = (report.i_max - i_max_formula(q)?).abs() < 1e-9
                    && (report.ratio - formula_ratio).abs() < 1e-9;
                if !ok && q > 2 {
                    failures += 1;
                    eprintln!(
                        "verification FAILED for {construction} at q = {q}: \
                         I_max = {}, ratio = {} (formula {formula_ratio})",
                        report.i_max, report.ratio
                    );
                }
                rows.push(Row {
                    construction,
                    q,
                    n,
                    k,
                    i_max: report.i_max,
                    i_w,
                    ratio: report.ratio,
                    source: "verified",
                });
            } else {
                rows.push(Row {
                    construction,
                    q,
                    n,
                    k,
                    i_max: i_max_formula(q)?,
                    i_w,
                    ratio: formula_ratio,
                    source: "formula",
                });
            }
        }
    }

    let mut text = String::new();
    match args.format {
        TableFormat::Csv => {
            text.push_str("construction,q,N,K,i_max,i_w,ratio,source\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.construction, r.q, r.n, r.k, r.i_max, r.i_w, r.ratio, r.source
                ));
            }
        }
        TableFormat::Markdown => {
            text.push_str("| construction | q | N | K | I_max | I_w | ratio | source |\n");
            text.push_str("|---|---|---|---|---|---|---|---|\n");
            for r in &rows {
                text.push_str(&format!(
                    "| {} | {} | {} | {} | {:.9} | {:.9} | {:.9} | {} |\n",
                    r.construction, r.q, r.n, r.k, r.i_max, r.i_w, r.ratio, r.source
                ));
            }
        }
    }

    match &args.out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }

    Ok(if failures == 0 { 0 } else { 1 })
}

// -------------------------------------------------------------- selftest

fn cmd_selftest(args: SelftestArgs) -> Result<i32> {
    let outcomes = selftest::run_all(args.q_max)?;
    let mut failed = 0u32;
    for o in &outcomes {
        if o.passed {
            println!("[ok]   {:<22} q={:<4} {:>7.3}s", o.suite, o.q, o.elapsed);
        } else {
            failed += 1;
            println!(
                "[FAIL] {:<22} q={:<4} {:>7.3}s  {}",
                o.suite, o.q, o.elapsed, o.detail
            );
        }
    }
    if failed == 0 {
        println!("all {} suite runs passed", outcomes.len());
        Ok(0)
    } else {
        println!("{failed} of {} suite runs failed", outcomes.len());
        Ok(1)
    }
}
