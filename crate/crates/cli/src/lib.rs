//! Command-line front end: `bvsieve kappa`, `bvsieve verify <check>`, `bvsieve sieve`.
//!
//! Exit codes: 0 pass, 1 certificate failure, 2 resource or budget limit, 64 usage.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bvsieve::hproduct::truncation_profile_prec;
use bvsieve::kappa::{compute_kappa, parse_rational, tail_term, verify_inv_zeta, weight_grid_bound, KappaPlan};
use bvsieve::primetools::{c2_parts, sum_cp_upper_with, C2_DEFAULT_CUTOFF, C2_FIDELITY_CUTOFF};
use bvsieve::quad::GridOptions;
use bvsieve::rint::BallRepr;
use bvsieve::sievesums::{sieve_row, write_csv, SieveLimits, SievePlan, SmoothingFn};
use bvsieve::{Ball, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "bvsieve", version, about = "Certified computation of the Barban-Vehov constant and sieve sums")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, env = "BVSIEVE_PREC", default_value_t = bvsieve::DEFAULT_PREC, global = true)]
    pub prec: u32,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Output file (standard output by default).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified enclosure of kappa.
    Kappa(KappaArgs),
    /// Run one of the supporting certificates.
    Verify {
        #[arg(value_enum)]
        which: Check,
        /// Use the 5e7 prime cutoff for c2.
        #[arg(long)]
        fidelity: bool,
    },
    /// Direct sieve sums against their asymptotic predictions, as CSV.
    Sieve(SieveArgs),
}

#[derive(clap::Args, Debug)]
pub struct KappaArgs {
    #[arg(long, default_value = "0.002")]
    pub eps: String,
    #[arg(long = "T", alias = "t", default_value = "7500")]
    pub t: String,
    #[arg(long = "T0", alias = "t0", default_value = "200")]
    pub t0: String,
    #[arg(long, value_delimiter = ',', default_value = "0.2,1")]
    pub splits: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "3000,750,250")]
    pub cutoffs: Vec<u64>,
    /// Target width of the kappa ball.
    #[arg(long, default_value_t = 2e-5)]
    pub width: f64,
    #[arg(long, default_value = "0.01")]
    pub grid_step: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    C2,
    #[value(name = "sumCp")]
    SumCp,
    #[value(name = "inv-zeta-2-500")]
    InvZeta,
    HTable,
    TailGrid,
}

#[derive(clap::Args, Debug)]
pub struct SieveArgs {
    #[arg(long, default_value_t = 1.0)]
    pub d1: f64,
    #[arg(long, conflicts_with = "d2_grid", required_unless_present = "d2_grid")]
    pub d2: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub d2_grid: Option<Vec<f64>>,
    /// `h0`, `poly:c0,c1,...` or `pieces:[a,b]:c0,c1,...;...`
    #[arg(long, default_value = "h0")]
    pub h: String,
    /// Also compute S for n <= N.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 1e5)]
    pub max_d2: f64,
}

/// Outcome of a command: exit code and the bytes to emit.
pub struct Outcome {
    pub code: i32,
    pub body: Vec<u8>,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome { code: EXIT_USAGE, body: format!("usage error: {msg}\n").into_bytes() }
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::LimitTooLarge { .. } | Error::BudgetExceeded { .. } | Error::DepthExceeded { .. } => EXIT_BUDGET,
        Error::InvalidPlan(_) | Error::Parse(_) | Error::CutoffTooSmall { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn failure(e: Error) -> Outcome {
    Outcome { code: code_for(&e), body: format!("error: {e}\n").into_bytes() }
}

fn ball(b: &Ball) -> Value {
    serde_json::to_value(BallRepr::from_ball(b)).expect("ball serializes")
}

fn ball_text(b: &Ball) -> String {
    let r = BallRepr::from_ball(b);
    format!("{} +/- {}", r.mid, r.rad)
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let out = run(&cli);
    let written = match &cli.output {
        Some(p) => File::create(p).and_then(|mut f| f.write_all(&out.body)),
        None => io::stdout().write_all(&out.body),
    };
    match written {
        Ok(()) => out.code,
        Err(e) => {
            eprintln!("cannot write output: {e}");
            EXIT_BUDGET
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Kappa(a) => cmd_kappa(a, cli),
        Command::Verify { which, fidelity } => cmd_verify(*which, *fidelity, cli),
        Command::Sieve(a) => cmd_sieve(a, cli),
    }
}

pub fn kappa_plan(a: &KappaArgs, prec: u32) -> Result<KappaPlan, Error> {
    let mut plan = KappaPlan {
        eps: parse_rational(&a.eps)?,
        splits: a.splits.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
        t0: parse_rational(&a.t0)?,
        t_end: parse_rational(&a.t)?,
        cutoffs: a.cutoffs.clone(),
        grid_step: parse_rational(&a.grid_step)?,
        prec,
        ..KappaPlan::default()
    };
    plan.set_target_width(a.width);
    plan.quad.prec = prec;
    plan.validate()?;
    Ok(plan)
}

fn cmd_kappa(a: &KappaArgs, cli: &Cli) -> Outcome {
    let plan = match kappa_plan(a, cli.prec) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let report = match compute_kappa(&plan) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let code = if report.is_clean() {
        EXIT_PASS
    } else if report.budget_exceeded() {
        EXIT_BUDGET
    } else {
        EXIT_FAIL
    };
    let body = match cli.format.unwrap_or(Format::Json) {
        Format::Text => report.audit_text(),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => return usage("kappa reports are json or text"),
    };
    Outcome { code, body: body.into_bytes() }
}

struct CheckResult {
    name: &'static str,
    pass: bool,
    lines: Vec<String>,
    data: Value,
}

fn cmd_verify(which: Check, fidelity: bool, cli: &Cli) -> Outcome {
    let prec = cli.prec;
    let res = match which {
        Check::C2 => verify_c2(fidelity, prec),
        Check::SumCp => verify_sum_cp(prec),
        Check::InvZeta => verify_inv(),
        Check::HTable => verify_h_table(prec),
        Check::TailGrid => verify_tail_grid(),
    };
    let r = match res {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let code = if r.pass { EXIT_PASS } else { EXIT_FAIL };
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    let body = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v = json!({ "check": r.name, "pass": r.pass, "details": r.data });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Text => {
            let mut s = format!("{verdict} {}\n", r.name);
            for l in &r.lines {
                s.push_str(&format!("  {l}\n"));
            }
            s
        }
        Format::Csv => return usage("verify output is json or text"),
    };
    Outcome { code, body: body.into_bytes() }
}

fn verify_c2(fidelity: bool, prec: u32) -> Result<CheckResult, Error> {
    let cutoff = if fidelity { C2_FIDELITY_CUTOFF } else { C2_DEFAULT_CUTOFF };
    let parts = c2_parts(cutoff, prec)?;
    let lo = Ball::from_decimal("1.385604", prec)?;
    let hi = Ball::from_decimal("1.385605", prec)?;
    let v = &parts.value;
    let pass = if fidelity {
        lo.certainly_le(&Ball::new(v.lower(), 0.0)) && Ball::new(v.upper(), 0.0).certainly_le(&hi)
    } else {
        v.contains_rational(&bvsieve::kappa::parse_rational("1.3856045")?) && v.width_f64() <= 3e-5
    };
    Ok(CheckResult {
        name: "c2",
        pass,
        lines: vec![
            format!("prime cutoff {cutoff}"),
            format!("partial sum {}", ball_text(&parts.partial)),
            format!("tail bound {}", ball_text(&parts.tail_bound)),
            format!("c2 in [{:.10}, {:.10}]", v.lower_f64(), v.upper_f64()),
        ],
        data: serde_json::to_value(&parts).expect("json"),
    })
}

fn verify_sum_cp(prec: u32) -> Result<CheckResult, Error> {
    let c2 = c2_parts(C2_DEFAULT_CUTOFF, prec)?.value;
    let r = sum_cp_upper_with(&c2, prec);
    Ok(CheckResult {
        name: "sumCp",
        pass: r.quartic_ok && r.ratio_ok,
        lines: vec![
            format!("U = {:.8}", r.upper.upper_f64()),
            format!("U + c2^2/2 <= {:.8} (< 2.56: {})", r.quartic_constant.upper_f64(), r.quartic_ok),
            format!("c2/U >= {:.8} (> 1/4: {})", c2.lower_f64() / r.upper.upper_f64(), r.ratio_ok),
        ],
        data: serde_json::to_value(&r).expect("json"),
    })
}

fn verify_inv() -> Result<CheckResult, Error> {
    let a = parse_rational("2")?;
    let b = parse_rational("500")?;
    let r = verify_inv_zeta(&a, &b, 40)?;
    Ok(CheckResult {
        name: "inv-zeta-2-500",
        pass: r.positive,
        lines: vec![
            "2.079 log t - 1/|zeta(1+it)| > 0 on [2, 500]".to_string(),
            format!("{} cells, depth {}", r.cells, r.max_depth),
        ],
        data: serde_json::to_value(&r).expect("json"),
    })
}

/// Published truncation bounds and the tolerance they are checked at.
pub const H_TABLE_BOUNDS: [(u64, f64); 3] = [(250, 1.153e-7), (750, 3.3468e-9), (3000, 4.1011e-11)];

fn verify_h_table(prec: u32) -> Result<CheckResult, Error> {
    let mut lines = vec!["C, D(C), delta, rho(C), e^rho - 1".to_string()];
    let mut rows = Vec::new();
    let mut pass = true;
    for c in [200u64, 250, 750, 3000] {
        let p = truncation_profile_prec(c, prec)?;
        let err = p.err.upper_f64();
        let bound = H_TABLE_BOUNDS.iter().find(|(k, _)| *k == c).map(|(_, v)| *v);
        let ok = bound.map_or(true, |v| err <= 1.05 * v);
        pass &= ok;
        lines.push(format!(
            "{c}, {:.6}, {:.4e}, {:.4e}, {:.4e}{}",
            p.d_of_c.mid_f64(),
            p.delta.upper_f64(),
            p.rho_of_c.upper_f64(),
            err,
            match bound {
                Some(v) => format!(" (<= 1.05 x {v:e}: {ok})"),
                None => String::new(),
            }
        ));
        rows.push(json!({
            "C": c,
            "D_of_C": ball(&p.d_of_c),
            "delta": ball(&p.delta),
            "rho_of_C": ball(&p.rho_of_c),
            "err": ball(&p.err),
            "published": bound,
            "ok": ok,
        }));
    }
    Ok(CheckResult { name: "h-table", pass, lines, data: Value::Array(rows) })
}

fn verify_tail_grid() -> Result<CheckResult, Error> {
    let t0 = parse_rational("200")?;
    let t = parse_rational("7500")?;
    let step = parse_rational("0.01")?;
    let plan = KappaPlan::default();
    let g = weight_grid_bound(&t0, &t, &step, &GridOptions { ..plan.grid })?;
    let tail = tail_term(&Ball::from_i64(7500, plan.prec))?;
    let bound = g.integral.upper_f64();
    Ok(CheckResult {
        name: "tail-grid",
        pass: bound <= 1e-7,
        lines: vec![
            format!("int_200^7500 dt/(|zeta(1+it)|^2 t^4) <= {bound:.6e} ({} cells)", g.cells),
            format!("sup on [200, 7500] <= {:.6e}", g.sup),
            format!("int_7500^inf <= {:.6e}", tail.upper_f64()),
        ],
        data: json!({ "grid": g, "tail": ball(&tail) }),
    })
}

fn cmd_sieve(a: &SieveArgs, cli: &Cli) -> Outcome {
    let h = match SmoothingFn::parse(&a.h) {
        Ok(h) => h,
        Err(e) => return usage(e),
    };
    let d2s = match (&a.d2, &a.d2_grid) {
        (Some(d), _) => vec![*d],
        (None, Some(g)) => g.clone(),
        (None, None) => return usage("need --d2 or --d2-grid"),
    };
    let limits = SieveLimits { max_d2: a.max_d2, ..SieveLimits::default() };
    let mut rows = Vec::new();
    for d2 in d2s {
        let plan = match SievePlan::new(a.d1, d2, h.clone()) {
            Ok(p) => p,
            Err(e) => return usage(e),
        };
        match sieve_row(&plan, a.n, &limits) {
            Ok(r) => rows.push(r),
            Err(e) => return failure(e),
        }
    }
    let body = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            if let Err(e) = write_csv(&rows, &mut buf) {
                return failure(e);
            }
            buf
        }
        Format::Json => (serde_json::to_string_pretty(&rows).expect("json") + "\n").into_bytes(),
        Format::Text => return usage("sieve output is csv or json"),
    };
    Outcome { code: EXIT_PASS, body }
}
