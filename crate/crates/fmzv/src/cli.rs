//! Command-line front end: `fmzv verify / eval / table`.
//!
//! * `verify` runs one identity family (or all of them) as a sweep over the
//!   desk-scale grid, or a single case when explicit parameters are given,
//!   and writes a schema-versioned report.
//! * `eval` prints a single object: a word-algebra product, a truncated
//!   harmonic sum per prime, or the coefficients of a symmetric value.
//! * `table` emits reference grids as CSV.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage, 3 when a run is
//! inconclusive-only or out of the supported range.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::index::Index;
use crate::modular::{mhs, mhs_star, Window};
use crate::numeric::Ctx;
use crate::report::{self, Report};
use crate::sside;
use crate::theorems::{self, CaseOutcome};
use crate::words::{index_product, Product};

#[derive(Debug, Parser)]
#[command(
    name = "fmzv",
    version,
    about = "Finite and symmetric multiple zeta values, checked at desk scale"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Check identity families prime by prime, digit by digit, or exactly.
    Verify(VerifyArgs),
    /// Evaluate one object and print it.
    Eval(EvalArgs),
    /// Emit a reference grid as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity family id, or "all".
    #[arg(long, default_value = "all")]
    pub id: String,
    /// Truncation level for level-parameterized families (1, 2 or 3).
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Prime window "A:B"; default: $FMZV_DEFAULT_PRIMES, then 7:97.
    #[arg(long)]
    pub primes: Option<String>,
    /// Decimal digits for real-side checks.
    #[arg(long, default_value_t = 40)]
    pub digits: u32,
    /// Sweep cap on weights (meaning varies per family; see README).
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Sweep cap on the (a, b) parameters.
    #[arg(long)]
    pub amax: Option<u32>,
    /// Sweep cap on depth-like parameters.
    #[arg(long)]
    pub rmax: Option<u32>,
    /// Single-case parameter: weight k.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub k1: Option<u32>,
    #[arg(long)]
    pub k2: Option<u32>,
    #[arg(long)]
    pub k3: Option<u32>,
    /// Single-case parameter: depth / repetition count r.
    #[arg(long)]
    pub r: Option<u32>,
    /// Single-case parameter: marked position i.
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Single-case index, comma-separated: "1,2".
    #[arg(long)]
    pub index: Option<String>,
    /// Left index for two-index families.
    #[arg(long)]
    pub left: Option<String>,
    /// Right index for two-index families.
    #[arg(long)]
    pub right: Option<String>,
    /// Star variant of the family.
    #[arg(long)]
    pub star: bool,
    /// Collapsed two-term form of the repeated-argument formula.
    #[arg(long)]
    pub collapsed: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for independent families (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMode {
    /// Truncated harmonic sums, one residue per prime.
    A,
    /// Symmetric value coefficients to the requested digits.
    S,
    /// A product in the word algebra.
    Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Harmonic,
    Shuffle,
    Muneta,
}

impl From<Op> for Product {
    fn from(op: Op) -> Product {
        match op {
            Op::Harmonic => Product::Harmonic,
            Op::Shuffle => Product::Shuffle,
            Op::Muneta => Product::Muneta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegKind {
    /// Shuffle regularization.
    Sh,
    /// Harmonic regularization.
    Har,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub mode: EvalMode,
    /// Index, comma-separated: "2,3".
    #[arg(long)]
    pub index: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long, default_value_t = 40)]
    pub digits: u32,
    /// Regularization used on the symmetric side.
    #[arg(long, value_enum, default_value_t = RegKind::Sh)]
    pub reg: RegKind,
    /// Product for word mode.
    #[arg(long, value_enum)]
    pub op: Option<Op>,
    #[arg(long)]
    pub left: Option<String>,
    #[arg(long)]
    pub right: Option<String>,
    /// Star (weak-inequality) variant.
    #[arg(long)]
    pub star: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Grid to emit: "appendix" or "sumf2".
    #[arg(long, default_value = "appendix")]
    pub id: String,
    /// Weight cap a+b for the appendix grid.
    #[arg(long)]
    pub amax: Option<u32>,
    /// Weight cap k for the sum-formula grid.
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 2,
        Error::Capability(_) | Error::Accuracy(_) => 3,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Verify(v) => cmd_verify(v),
        Cmd::Eval(e) => cmd_eval(e),
        Cmd::Table(t) => cmd_table(t),
    }
}

// ---------------------------------------------------------------------------
// Shared configuration
// ---------------------------------------------------------------------------

fn parse_window_spec(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::usage(format!("prime window must look like A:B, got {s:?}")))?;
    let lo: u64 = a
        .trim()
        .parse()
        .map_err(|_| Error::usage(format!("bad window bound {a:?}")))?;
    let hi: u64 = b
        .trim()
        .parse()
        .map_err(|_| Error::usage(format!("bad window bound {b:?}")))?;
    if lo < 5 {
        return Err(Error::usage("prime window must start at 5 or above"));
    }
    if hi < lo {
        return Err(Error::usage(format!("empty prime window {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn primes_window(flag: Option<&str>) -> Result<(u64, u64)> {
    if let Some(s) = flag {
        return parse_window_spec(s);
    }
    match std::env::var("FMZV_DEFAULT_PRIMES") {
        Ok(s) => parse_window_spec(&s),
        Err(_) => Ok((7, 97)),
    }
}

fn parse_index(s: &str) -> Result<Index> {
    Index::parse(s).map_err(|e| Error::usage(format!("bad index {s:?}: {e}")))
}

fn check_level(n: u32) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::usage(format!("level n must be 1, 2 or 3, got {n}")))
    }
}

fn check_digits(d: u32) -> Result<()> {
    if d >= 20 {
        Ok(())
    } else {
        Err(Error::usage(format!(
            "--digits must be at least 20, got {d}"
        )))
    }
}

struct SweepCfg {
    n: u32,
    lo: u64,
    hi: u64,
    kmax: Option<u32>,
    amax: Option<u32>,
    rmax: Option<u32>,
}

impl SweepCfg {
    fn check_caps(&self) -> Result<()> {
        let over = |v: Option<u32>, cap: u32, name: &str| -> Result<()> {
            match v {
                Some(x) if x > cap => Err(Error::capability(format!(
                    "--{name} {x} is beyond the supported desk scale (max {cap})"
                ))),
                _ => Ok(()),
            }
        };
        over(self.kmax, 16, "kmax")?;
        over(self.amax, 30, "amax")?;
        over(self.rmax, 12, "rmax")
    }

    fn window(&self, n: u32) -> Result<Window> {
        Window::new(n, self.lo, self.hi)
    }
}

/// Lazily built shared numeric context for real-side families.
struct LazyCtx {
    digits: u32,
    cell: OnceCell<Ctx>,
}

impl LazyCtx {
    fn new(digits: u32) -> Self {
        LazyCtx {
            digits,
            cell: OnceCell::new(),
        }
    }

    fn get(&self) -> Result<&Ctx> {
        self.cell.get_or_try_init(|| Ctx::new(self.digits))
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Canonical family order for `--id all`.
const FAMILIES: &[&str] = &[
    "dep1",
    "depth2",
    "depth3",
    "repk",
    "ones-2-ones",
    "twos-3-twos",
    "twos-1-twos",
    "ones-2-ones-f2",
    "bb",
    "lemma-2sh2",
    "symsum",
    "sumf2",
    "sumf3",
    "iadm",
    "f1-i-sum",
    "recurrence",
    "dsr",
    "star-expansion",
    "antipode",
    "yamamoto",
    "appendix",
    "zagier1",
    "zagier2",
    "calc-zeta-sh",
    "by-def",
    "by-def-ab",
    "reg-form-ab",
    "by-duality",
    "duality",
    "sum-depth2",
];

/// Maps a requested id to (family, forced level, exact filter).
fn resolve_id(id: &str) -> Result<(&'static str, Option<u32>, Option<String>)> {
    let base = id.strip_suffix("-star").unwrap_or(id);
    let filter = Some(id.to_string());
    let found = match base {
        "dep1" | "depth2" | "depth3" | "ones-2-ones" | "twos-3-twos" | "twos-1-twos"
        | "ones-2-ones-f2" | "bb" | "lemma-2sh2" | "symsum" | "sumf2" | "sumf3" | "iadm"
        | "f1-i-sum" | "recurrence" | "star-expansion" | "antipode" | "yamamoto" | "zagier1"
        | "zagier2" | "calc-zeta-sh" | "by-def" | "by-def-ab" | "reg-form-ab" | "by-duality"
        | "duality" | "sum-depth2" => {
            let family = FAMILIES
                .iter()
                .find(|f| **f == base)
                .expect("family list covers base ids");
            (*family, None, filter)
        }
        "repk" => ("repk", None, None),
        "repk-f2" => ("repk", Some(2), filter),
        "repk-f3" => ("repk", Some(3), filter),
        "dsr" => ("dsr", None, None),
        "dsr-harmonic" | "dsr-shuffle" => ("dsr", None, filter),
        "appendix" => ("appendix", None, None),
        "pfd" => ("appendix", None, filter),
        _ => {
            return Err(Error::usage(format!(
                "unknown id {id:?}; known families: {}",
                FAMILIES.join(", ")
            )))
        }
    };
    Ok(found)
}

/// Fixed truncation level of families stated at one level only.
fn family_level(family: &str, flag_n: u32) -> u32 {
    match family {
        "depth3" | "ones-2-ones" | "twos-3-twos" | "twos-1-twos" | "f1-i-sum" => 1,
        "depth2" | "ones-2-ones-f2" | "bb" | "sumf2" | "iadm" | "recurrence" | "lemma-2sh2"
        | "yamamoto" => 2,
        "sumf3" => 3,
        _ => flag_n,
    }
}

fn run_family(family: &str, cfg: &SweepCfg, ctx: &LazyCtx) -> Result<Vec<CaseOutcome>> {
    let n = family_level(family, cfg.n);
    let k = |d: u32| cfg.kmax.unwrap_or(d);
    let a = |d: u32| cfg.amax.unwrap_or(d);
    match family {
        "dep1" => theorems::sweep_dep1(&cfg.window(n)?, k(8)),
        "depth2" => theorems::sweep_depth2(&cfg.window(n)?, k(10)),
        "depth3" => theorems::sweep_depth3(&cfg.window(n)?, k(11)),
        "repk" => {
            let cap = cfg.rmax.or(cfg.kmax).unwrap_or(if n == 3 { 8 } else { 10 });
            theorems::sweep_repk(&cfg.window(n)?, cap)
        }
        "ones-2-ones" => theorems::sweep_ones_2_ones(&cfg.window(n)?, a(8)),
        "twos-3-twos" => theorems::sweep_twos_3_twos(&cfg.window(n)?, a(5)),
        "twos-1-twos" => theorems::sweep_twos_1_twos(&cfg.window(n)?, a(5)),
        "ones-2-ones-f2" => theorems::sweep_ones_2_ones_f2(&cfg.window(n)?, a(8)),
        "bb" => theorems::sweep_bb(&cfg.window(n)?, k(12)),
        "lemma-2sh2" => theorems::sweep_lemma_2sh2(&cfg.window(n)?, k(12)),
        "symsum" => theorems::sweep_symsum(&cfg.window(n)?, k(6)),
        "sumf2" => theorems::sweep_sum_f2(&cfg.window(n)?, k(10)),
        "sumf3" => theorems::sweep_sum_f3(&cfg.window(n)?, k(8)),
        "iadm" => theorems::sweep_iadm(&cfg.window(n)?, k(10)),
        "f1-i-sum" => theorems::sweep_f1_i_sum(&cfg.window(n)?, k(10)),
        "recurrence" => theorems::sweep_recurrence(&cfg.window(n)?, k(10)),
        "dsr" => theorems::sweep_dsr(&cfg.window(n)?, k(5)),
        "star-expansion" => theorems::sweep_star_expansion(&cfg.window(n)?, k(6)),
        "antipode" => theorems::sweep_antipode(&cfg.window(n)?, k(6)),
        "yamamoto" => theorems::sweep_yamamoto(&cfg.window(n)?, k(4)),
        "appendix" => theorems::sweep_appendix(a(12)),
        "zagier1" => sside::sweep_zagier1(ctx.get()?, a(3)),
        "zagier2" => sside::sweep_zagier2(ctx.get()?, k(9)),
        "calc-zeta-sh" => sside::sweep_calc_zeta_sh(ctx.get()?, k(7)),
        "by-def" => sside::sweep_by_def(ctx.get()?, k(7)),
        "by-def-ab" => sside::sweep_by_def_ab(ctx.get()?, k(7)),
        "reg-form-ab" => sside::sweep_reg_form_ab(ctx.get()?, k(7)),
        "by-duality" => sside::sweep_by_duality(ctx.get()?, a(3)),
        "duality" => sside::sweep_duality(ctx.get()?, k(7)),
        "sum-depth2" => sside::sweep_sum_depth2(ctx.get()?, k(8)),
        _ => Err(Error::usage(format!("unknown family {family:?}"))),
    }
}

/// Explicit-parameter single case.  `Ok(None)` when no case parameters were
/// given; hypothesis violations surface as usage errors.
fn run_single(
    family: &str,
    star: bool,
    v: &VerifyArgs,
    cfg: &SweepCfg,
    ctx: &LazyCtx,
) -> Result<Option<Vec<CaseOutcome>>> {
    let any_param = v.k.is_some()
        || v.k1.is_some()
        || v.k2.is_some()
        || v.k3.is_some()
        || v.r.is_some()
        || v.i.is_some()
        || v.a.is_some()
        || v.b.is_some()
        || v.l.is_some()
        || v.m.is_some()
        || v.index.is_some()
        || v.left.is_some()
        || v.right.is_some();
    if !any_param {
        return Ok(None);
    }
    let need = |o: Option<u32>, name: &str| {
        o.ok_or_else(|| Error::usage(format!("--id {family} needs --{name}")))
    };
    let need_idx = |o: &Option<String>, name: &str| -> Result<Index> {
        match o {
            Some(s) => parse_index(s),
            None => Err(Error::usage(format!("--id {family} needs --{name}"))),
        }
    };
    let n = family_level(family, cfg.n);
    let case = match family {
        "dep1" => theorems::verify_dep1(&cfg.window(n)?, need(v.k, "k")?),
        "depth2" => {
            theorems::verify_depth2(&cfg.window(n)?, need(v.k1, "k1")?, need(v.k2, "k2")?, star)
        }
        "depth3" => theorems::verify_depth3(
            &cfg.window(n)?,
            need(v.k1, "k1")?,
            need(v.k2, "k2")?,
            need(v.k3, "k3")?,
            star,
        ),
        "repk" => theorems::verify_repk(
            &cfg.window(n)?,
            need(v.k, "k")?,
            need(v.r, "r")?,
            star,
            v.collapsed,
        ),
        "ones-2-ones" => {
            theorems::verify_ones_2_ones(&cfg.window(n)?, need(v.a, "a")?, need(v.b, "b")?, star)
        }
        "twos-3-twos" => {
            theorems::verify_twos_3_twos(&cfg.window(n)?, need(v.a, "a")?, need(v.b, "b")?, star)
        }
        "twos-1-twos" => {
            theorems::verify_twos_1_twos(&cfg.window(n)?, need(v.a, "a")?, need(v.b, "b")?, star)
        }
        "ones-2-ones-f2" => {
            theorems::verify_ones_2_ones_f2(&cfg.window(n)?, need(v.a, "a")?, need(v.b, "b")?, star)
        }
        "bb" => theorems::verify_bb(&cfg.window(n)?, need(v.l, "l")?, need(v.m, "m")?, star),
        "lemma-2sh2" => {
            theorems::verify_lemma_2sh2(&cfg.window(n)?, need(v.l, "l")?, need(v.m, "m")?)
        }
        "yamamoto" => theorems::verify_yamamoto(&cfg.window(n)?, need(v.l, "l")?, need(v.m, "m")?),
        "symsum" => theorems::verify_symsum(&cfg.window(n)?, &need_idx(&v.index, "index")?, star),
        "star-expansion" => {
            theorems::verify_star_expansion(&cfg.window(n)?, &need_idx(&v.index, "index")?)
        }
        "antipode" => theorems::verify_antipode(&cfg.window(n)?, &need_idx(&v.index, "index")?),
        "dsr" => {
            let kk = need_idx(&v.left, "left")?;
            let ll = need_idx(&v.right, "right")?;
            let w = cfg.window(n)?;
            return Ok(Some(vec![
                theorems::verify_dsr_harmonic(&w, &kk, &ll).map_err(domain_to_usage)?,
                theorems::verify_dsr_shuffle(&w, &kk, &ll).map_err(domain_to_usage)?,
            ]));
        }
        "sumf2" => theorems::verify_sum_f2(&cfg.window(n)?, need(v.k, "k")?, need(v.r, "r")?, star),
        "sumf3" => theorems::verify_sum_f3(&cfg.window(n)?, need(v.k, "k")?, need(v.r, "r")?, star),
        "iadm" => theorems::verify_iadm(
            &cfg.window(n)?,
            need(v.k, "k")?,
            need(v.r, "r")?,
            need(v.i, "i")?,
            star,
        ),
        "f1-i-sum" => theorems::verify_f1_i_sum(
            &cfg.window(n)?,
            need(v.k, "k")?,
            need(v.r, "r")?,
            need(v.i, "i")?,
            star,
        ),
        "recurrence" => theorems::verify_recurrence(
            &cfg.window(n)?,
            need(v.k, "k")?,
            need(v.r, "r")?,
            need(v.i, "i")?,
            star,
        ),
        "appendix" => theorems::verify_appendix_pair(need(v.a, "a")?, need(v.b, "b")?),
        "zagier1" => sside::verify_zagier1(ctx.get()?, need(v.a, "a")?, need(v.b, "b")?),
        "zagier2" => sside::verify_zagier2(ctx.get()?, need(v.k1, "k1")?, need(v.k2, "k2")?),
        "calc-zeta-sh" => sside::verify_calc_zeta_sh(ctx.get()?, need(v.k2, "k2")?),
        "by-def" => sside::verify_by_def(ctx.get()?, need(v.k2, "k2")?),
        "by-def-ab" => sside::verify_by_def_ab(ctx.get()?, need(v.a, "a")?, need(v.b, "b")?),
        "reg-form-ab" => sside::verify_reg_form_ab(ctx.get()?, need(v.a, "a")?, need(v.b, "b")?),
        "by-duality" => sside::verify_by_duality(ctx.get()?, need(v.a, "a")?),
        "duality" => sside::verify_duality(ctx.get()?, need(v.k, "k")?),
        "sum-depth2" => sside::verify_sum_depth2(ctx.get()?, need(v.k, "k")?),
        _ => {
            return Err(Error::usage(format!(
                "--id {family} does not take single-case parameters"
            )))
        }
    };
    case.map(|c| Some(vec![c])).map_err(domain_to_usage)
}

/// In explicit single-case mode a hypothesis violation is the user's typo.
fn domain_to_usage(e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Usage(msg),
        other => other,
    }
}

fn cmd_verify(v: VerifyArgs) -> Result<u8> {
    check_level(v.n)?;
    check_digits(v.digits)?;
    let (lo, hi) = primes_window(v.primes.as_deref())?;
    let cfg = SweepCfg {
        n: v.n,
        lo,
        hi,
        kmax: v.kmax,
        amax: v.amax,
        rmax: v.rmax,
    };
    cfg.check_caps()?;
    let ctx = LazyCtx::new(v.digits);

    let mut command = format!(
        "verify --id {} --n {} --primes {lo}:{hi} --digits {}",
        v.id, v.n, v.digits
    );
    if v.star {
        command.push_str(" --star");
    }

    let cases: Vec<CaseOutcome> = if v.id == "all" {
        if v.star {
            return Err(Error::usage("--star needs a specific --id"));
        }
        run_families(FAMILIES, &cfg, &ctx, v.jobs)?
    } else {
        let requested = if v.star && !v.id.ends_with("-star") {
            format!("{}-star", v.id)
        } else {
            v.id.clone()
        };
        let (family, forced_n, filter) = resolve_id(&requested)?;
        let cfg = SweepCfg {
            n: forced_n.unwrap_or(cfg.n),
            ..cfg
        };
        let all = match run_single(family, requested.ends_with("-star"), &v, &cfg, &ctx)? {
            Some(cases) => cases,
            None => run_family(family, &cfg, &ctx)?,
        };
        match filter {
            Some(id) => {
                let kept: Vec<_> = all.into_iter().filter(|c| c.theorem_id == id).collect();
                if kept.is_empty() {
                    return Err(Error::usage(format!(
                        "id {requested:?} selected no cases (check --n and parameters)"
                    )));
                }
                kept
            }
            None => all,
        }
    };

    let report = Report::new(command, cases);
    eprint!("{}", report.console_lines());
    let body = match v.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    write_out(v.out.as_deref(), &body)?;
    Ok(report.exit_code())
}

fn run_families(
    families: &[&str],
    cfg: &SweepCfg,
    ctx: &LazyCtx,
    jobs: Option<usize>,
) -> Result<Vec<CaseOutcome>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::capability(format!("thread pool: {e}")))?;
    let nested: Vec<Vec<CaseOutcome>> = pool.install(|| {
        families
            .par_iter()
            .map(|f| run_family(f, cfg, ctx))
            .collect::<Result<_>>()
    })?;
    Ok(nested.into_iter().flatten().collect())
}

fn write_out(path: Option<&std::path::Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", p.display()),
            ))
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn fmt_float(f: &rug::Float, digits: u32) -> String {
    f.to_string_radix(10, Some(digits as usize))
}

fn cmd_eval(e: EvalArgs) -> Result<u8> {
    match e.mode {
        EvalMode::Word => {
            let op =
                e.op.ok_or_else(|| Error::usage("eval word needs --op harmonic|shuffle|muneta"))?;
            let l = match &e.left {
                Some(s) => parse_index(s)?,
                None => return Err(Error::usage("eval word needs --left")),
            };
            let r = match &e.right {
                Some(s) => parse_index(s)?,
                None => return Err(Error::usage("eval word needs --right")),
            };
            let prod = index_product(op.into(), &l, &r);
            println!("{}", prod.render_indices()?);
        }
        EvalMode::A => {
            check_level(e.n)?;
            let idx = match &e.index {
                Some(s) => parse_index(s)?,
                None => return Err(Error::usage("eval a needs --index")),
            };
            let (lo, hi) = primes_window(e.primes.as_deref())?;
            let w = Window::new(e.n, lo, hi)?;
            for &p in &w.primes {
                let m = w.modulus(p);
                let val = if e.star {
                    mhs_star(&m, &idx)
                } else {
                    mhs(&m, &idx)
                };
                println!("{p}: {}", report::fmt_residue(val, p, e.n));
            }
        }
        EvalMode::S => {
            check_level(e.n)?;
            check_digits(e.digits)?;
            let idx = match &e.index {
                Some(s) => parse_index(s)?,
                None => return Err(Error::usage("eval s needs --index")),
            };
            let prod = match e.reg {
                RegKind::Sh => Product::Shuffle,
                RegKind::Har => Product::Harmonic,
            };
            let ctx = Ctx::new(e.digits)?;
            let coeffs = if e.star {
                // The star value is the sum of plain values over all
                // comma/plus contractions of the index.
                let mut acc: Option<Vec<rug::Float>> = None;
                for c in idx.contractions() {
                    let h = sside::symmetric_hat(&ctx, &c, prod, e.n)?;
                    acc = Some(match acc {
                        None => h,
                        Some(prev) => prev.into_iter().zip(h).map(|(x, y)| x + y).collect(),
                    });
                }
                acc.expect("nonempty index has at least one contraction")
            } else {
                sside::symmetric_hat(&ctx, &idx, prod, e.n)?
            };
            for (j, c) in coeffs.iter().enumerate() {
                println!("t^{j}: {}", fmt_float(c, e.digits));
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn cmd_table(t: TableArgs) -> Result<u8> {
    if t.format != Format::Csv {
        return Err(Error::usage("table emits CSV; use --format csv"));
    }
    let body = match t.id.as_str() {
        "appendix" => {
            let cap = t.amax.unwrap_or(10);
            if cap > 30 {
                return Err(Error::capability(format!(
                    "--amax {cap} is beyond the supported desk scale (max 30)"
                )));
            }
            report::appendix_csv(&crate::appendix::table_rows(cap as i64)?)?
        }
        "sumf2" => {
            let cap = t.kmax.unwrap_or(10);
            if cap > 16 {
                return Err(Error::capability(format!(
                    "--kmax {cap} is beyond the supported desk scale (max 16)"
                )));
            }
            report::sumf2_csv(&report::sumf2_grid(cap))?
        }
        other => {
            return Err(Error::usage(format!(
                "unknown table {other:?}; expected appendix or sumf2"
            )))
        }
    };
    write_out(t.out.as_deref(), &body)?;
    Ok(0)
}
