//! Command-line front end: `verify`, `sum`, `bernoulli`, `selftest`.
//!
//! Reports go to stdout (line-oriented table or one JSON document);
//! diagnostics go to stderr. Exit codes: 0 all pass, 1 mathematical failure
//! or guard error, 2 usage error.

use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, rational_mod, Rational};
use crate::bernoulli::bernoulli;
use crate::congruence::{
    verify_corollary, verify_lemma, verify_literature, verify_theorem1, verify_theorem2,
    CongruenceReport, Corollary, Lemma, Literature, Method, ReportValue,
};
use crate::error::Error;
use crate::harmonic::{
    half_cube_sum, kfold_sum_naive, progression_reciprocal_sum, signed_cube_sum,
    triple_sum_fast_alternating, triple_sum_fast_uniform, triple_sum_naive, CoprimalityFilter,
    SignPattern,
};
use crate::selftest;

#[derive(Parser)]
#[command(
    name = "multiharmonic",
    version,
    about = "Evaluate generalized multiharmonic sums and verify their congruences"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Naive,
    Fast,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Naive => Method::Naive,
            MethodArg::Fast => Method::Fast,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Uniform,
    Alt,
}

impl From<SignArg> for SignPattern {
    fn from(s: SignArg) -> SignPattern {
        match s {
            SignArg::Uniform => SignPattern::Uniform,
            SignArg::Alt => SignPattern::AlternatingFirst,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify a statement from the built-in catalog against the oracle.
    ///
    /// Targets: theorem1, theorem2, corollary:c1_1..c1_5,
    /// literature:eq1_1..eq1_6, lemma:l2_1..l2_7, all.
    Verify {
        target: String,
        /// Composite modulus n (theorems, lemma grids).
        #[arg(long)]
        n: Option<u64>,
        /// Prime parameter.
        #[arg(long)]
        p: Option<u64>,
        /// Prime-power exponent.
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Second prime (two-prime corollaries).
        #[arg(long)]
        p2: Option<u64>,
        /// Second exponent.
        #[arg(long, default_value_t = 1)]
        r2: u32,
        /// Power-of-two multiplier exponent for the doubled targets.
        #[arg(long, default_value_t = 0)]
        r0: u32,
        /// Fold count (literature:eq1_2) or polynomial index (lemma:l2_1, l2_4).
        #[arg(long)]
        k: Option<u32>,
        /// Progression modulus m (lemma:l2_1, l2_4).
        #[arg(long)]
        m: Option<u64>,
        /// Residue class r (lemma:l2_1; may be negative).
        #[arg(long)]
        residue: Option<i64>,
        /// Rational argument x, e.g. 1/2 (lemma:l2_4).
        #[arg(long)]
        x: Option<String>,
        /// Half-index nn (lemma:l2_5).
        #[arg(long)]
        nn: Option<u32>,
        /// Sign pattern (lemma:l2_7).
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        /// Evaluation path; defaults to both for n <= 2000, fast above.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Grid bound for `verify all`.
        #[arg(long, default_value_t = 500)]
        max_n: u64,
    },
    /// Evaluate one sum family and print the result.
    ///
    /// Kinds: triple, kfold, progression, cube, halfcube.
    Sum {
        kind: String,
        /// Target of the triple sum, or the squarefree modulus for cube sums.
        #[arg(long)]
        n: Option<u64>,
        /// Fold count for kfold.
        #[arg(long)]
        k: Option<u32>,
        /// Composition target for kfold.
        #[arg(long)]
        target: Option<u64>,
        /// Progression residue class.
        #[arg(long)]
        x: Option<u64>,
        /// Progression range multiplier.
        #[arg(long, default_value_t = 1)]
        mult: u64,
        /// Evaluation modulus.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Sign pattern for the triple sum.
        #[arg(long, value_enum, default_value_t = SignArg::Uniform)]
        sign: SignArg,
        /// Coprimality filter: comma-separated primes, or `auto` for the
        /// primes of n.
        #[arg(long)]
        filter: Option<String>,
        /// Evaluation path.
        #[arg(long, value_enum, default_value_t = MethodArg::Naive)]
        method: MethodArg,
    },
    /// Print an exact Bernoulli number, optionally reduced mod m.
    Bernoulli {
        k: u64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Run the full canned verification grid.
    Selftest,
}

/// JSON rendering of a report. Integers are decimal strings; `modulus`
/// "0" marks an exact rational comparison (lhs/rhs then render as
/// fractions). `elapsed_ms` is the only nondeterministic field.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportJson {
    pub id: String,
    pub params: String,
    pub modulus: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub pass: bool,
    pub method: String,
    pub elapsed_ms: u64,
    pub notes: String,
}

impl From<&CongruenceReport> for ReportJson {
    fn from(r: &CongruenceReport) -> Self {
        ReportJson {
            id: r.id.clone(),
            params: r.params.clone(),
            modulus: r.modulus.to_string(),
            lhs: r.lhs.as_ref().map(ReportValue::render),
            rhs: r.rhs.as_ref().map(ReportValue::render),
            pass: r.pass,
            method: r.method.label().to_string(),
            elapsed_ms: r.elapsed.as_millis() as u64,
            notes: r.notes.clone(),
        }
    }
}

fn report_table_line(r: &CongruenceReport) -> String {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let modulus = if r.modulus == 0 {
        "exact".to_string()
    } else {
        r.modulus.to_string()
    };
    let render = |v: &Option<ReportValue>| {
        v.as_ref()
            .map(ReportValue::render)
            .unwrap_or_else(|| "-".into())
    };
    let mut line = format!(
        "{status} {} {} | mod={modulus} lhs={} rhs={} method={}",
        r.id,
        r.params,
        render(&r.lhs),
        render(&r.rhs),
        r.method
    );
    if !r.notes.is_empty() {
        line.push_str(&format!(" | {}", r.notes));
    }
    line
}

fn emit_reports(reports: &[CongruenceReport], format: Format) -> i32 {
    match format {
        Format::Table => {
            for r in reports {
                println!("{}", report_table_line(r));
            }
        }
        Format::Json => {
            let body: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&body).expect("serialize")
            );
        }
    }
    if reports.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn math_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    1
}

struct VerifyArgs {
    n: Option<u64>,
    p: Option<u64>,
    r: u32,
    p2: Option<u64>,
    r2: u32,
    r0: u32,
    k: Option<u32>,
    m: Option<u64>,
    residue: Option<i64>,
    x: Option<String>,
    nn: Option<u32>,
    sign: Option<SignArg>,
    method: Option<MethodArg>,
    max_n: u64,
}

fn run_verify(target: &str, a: VerifyArgs, format: Format) -> i32 {
    macro_rules! need {
        ($opt:expr, $flag:literal) => {
            match $opt {
                Some(v) => v,
                None => return usage_error(concat!("target requires ", $flag)),
            }
        };
    }
    let reports: Vec<CongruenceReport> = match target {
        "theorem1" | "theorem2" => {
            let n = need!(a.n, "--n");
            let f = match factorize(n) {
                Ok(f) => f,
                Err(e) => return math_error(&e),
            };
            let method = a
                .method
                .map(Method::from)
                .unwrap_or_else(|| Method::default_for(n << a.r0));
            let report = if target == "theorem1" {
                verify_theorem1(&f, a.r0, method)
            } else {
                verify_theorem2(&f, a.r0, method)
            };
            vec![report]
        }
        "corollary:c1_1" => vec![verify_corollary(&Corollary::C1_1 {
            p: need!(a.p, "--p"),
        })],
        "corollary:c1_2" => vec![verify_corollary(&Corollary::C1_2 {
            p: need!(a.p, "--p"),
            r: a.r,
        })],
        "corollary:c1_3" => vec![verify_corollary(&Corollary::C1_3 {
            p1: need!(a.p, "--p"),
            r1: a.r,
            p2: need!(a.p2, "--p2"),
            r2: a.r2,
        })],
        "corollary:c1_4" => vec![verify_corollary(&Corollary::C1_4 {
            p: need!(a.p, "--p"),
            r: a.r,
        })],
        "corollary:c1_5" => vec![verify_corollary(&Corollary::C1_5 {
            p1: need!(a.p, "--p"),
            r1: a.r,
            p2: need!(a.p2, "--p2"),
            r2: a.r2,
        })],
        "literature:eq1_1" => vec![verify_literature(&Literature::Eq1_1 {
            p: need!(a.p, "--p"),
        })],
        "literature:eq1_2" => vec![verify_literature(&Literature::Eq1_2 {
            p: need!(a.p, "--p"),
            n: need!(a.k, "--k"),
        })],
        "literature:eq1_3" => vec![verify_literature(&Literature::Eq1_3 {
            p: need!(a.p, "--p"),
            r: a.r,
        })],
        "literature:eq1_4" => vec![verify_literature(&Literature::Eq1_4 {
            p: need!(a.p, "--p"),
            r: a.r,
        })],
        "literature:eq1_5" => vec![verify_literature(&Literature::Eq1_5 {
            p: need!(a.p, "--p"),
        })],
        "literature:eq1_6" => vec![verify_literature(&Literature::Eq1_6 {
            p: need!(a.p, "--p"),
            r: a.r,
        })],
        "lemma:l2_1" => vec![verify_lemma(&Lemma::L2_1 {
            p: need!(a.p, "--p"),
            m: need!(a.m, "--m"),
            r: need!(a.residue, "--residue"),
            k: need!(a.k, "--k"),
        })],
        "lemma:l2_2" => vec![verify_lemma(&Lemma::L2_2 {
            n: need!(a.n, "--n"),
        })],
        "lemma:l2_3" => vec![verify_lemma(&Lemma::L2_3 {
            n: need!(a.n, "--n"),
        })],
        "lemma:l2_4" => {
            let x = need!(a.x, "--x");
            let x = match Rational::from_str(&x) {
                Ok(x) => x,
                Err(_) => return usage_error("--x must be a rational like 1/2"),
            };
            vec![verify_lemma(&Lemma::L2_4 {
                m: need!(a.m, "--m"),
                k: need!(a.k, "--k"),
                x,
            })]
        }
        "lemma:l2_5" => vec![verify_lemma(&Lemma::L2_5 {
            nn: need!(a.nn, "--nn"),
        })],
        "lemma:l2_6" => vec![verify_lemma(&Lemma::L2_6 {
            n: need!(a.n, "--n"),
        })],
        "lemma:l2_7" => vec![verify_lemma(&Lemma::L2_7 {
            n: need!(a.n, "--n"),
            sign: a
                .sign
                .map(SignPattern::from)
                .unwrap_or(SignPattern::AlternatingFirst),
        })],
        "all" => selftest::verify_all_battery(a.max_n),
        other => return usage_error(&format!("unknown verify target '{other}'")),
    };
    emit_reports(&reports, format)
}

#[derive(Serialize)]
struct SumJson {
    kind: String,
    params: String,
    modulus: String,
    value: String,
    agreement: Option<bool>,
}

#[allow(clippy::too_many_arguments)]
fn run_sum(
    kind: &str,
    n: Option<u64>,
    k: Option<u32>,
    target: Option<u64>,
    x: Option<u64>,
    mult: u64,
    modulus: Option<u64>,
    sign: SignArg,
    filter_arg: Option<String>,
    method: MethodArg,
    format: Format,
) -> i32 {
    macro_rules! need {
        ($opt:expr, $flag:literal) => {
            match $opt {
                Some(v) => v,
                None => return usage_error(concat!("sum kind requires ", $flag)),
            }
        };
    }
    let parse_filter = |arg: &Option<String>, n: u64| -> Result<CoprimalityFilter, String> {
        match arg.as_deref() {
            None => Ok(CoprimalityFilter::empty()),
            Some("auto") => {
                let f = factorize(n).map_err(|e| e.to_string())?;
                Ok(CoprimalityFilter::from_factorization(&f))
            }
            Some(s) => {
                let primes: Result<Vec<u64>, _> = s.split(',').map(|t| t.trim().parse()).collect();
                primes
                    .map(CoprimalityFilter::new)
                    .map_err(|_| format!("bad filter '{s}'"))
            }
        }
    };

    let (params, modulus, value, agreement): (String, u64, u64, Option<bool>) = match kind {
        "triple" => {
            let n = need!(n, "--n");
            let m = need!(modulus, "--mod");
            let filter = match parse_filter(&filter_arg, n) {
                Ok(f) => f,
                Err(e) => return usage_error(&e),
            };
            let sign = SignPattern::from(sign);
            let naive = || triple_sum_naive(n, sign, &filter, m);
            let fast = || -> Result<crate::Residue, Error> {
                let f = factorize(n)?;
                if m != n {
                    return Err(Error::InvalidInput(
                        "fast path evaluates mod n; use --mod equal to --n".into(),
                    ));
                }
                if filter != CoprimalityFilter::from_factorization(&f) {
                    return Err(Error::InvalidInput(
                        "fast path requires the coprime filter (use --filter auto)".into(),
                    ));
                }
                match sign {
                    SignPattern::AlternatingFirst => triple_sum_fast_alternating(&f),
                    SignPattern::Uniform => triple_sum_fast_uniform(&f),
                }
            };
            let (value, agreement) = match method {
                MethodArg::Naive => match naive() {
                    Ok(v) => (v, None),
                    Err(e) => return math_error(&e),
                },
                MethodArg::Fast => match fast() {
                    Ok(v) => (v, None),
                    Err(e) => return math_error(&e),
                },
                MethodArg::Both => match (naive(), fast()) {
                    (Ok(a), Ok(b)) => (a, Some(a == b)),
                    (Err(e), _) | (_, Err(e)) => return math_error(&e),
                },
            };
            (
                format!("n={n} sign={:?} filter={filter}", sign),
                m,
                value.value(),
                agreement,
            )
        }
        "kfold" => {
            let k = need!(k, "--k");
            let target = need!(target, "--target");
            let m = need!(modulus, "--mod");
            let filter = match parse_filter(&filter_arg, target) {
                Ok(f) => f,
                Err(e) => return usage_error(&e),
            };
            match kfold_sum_naive(k, target, &filter, m) {
                Ok(v) => (
                    format!("k={k} target={target} filter={filter}"),
                    m,
                    v.value(),
                    None,
                ),
                Err(e) => return math_error(&e),
            }
        }
        "progression" => {
            let x = need!(x, "--x");
            let n = need!(n, "--n");
            let f = match factorize(n) {
                Ok(f) => f,
                Err(e) => return math_error(&e),
            };
            match progression_reciprocal_sum(x, mult, &f) {
                Ok(v) => (
                    format!("x={x} mult={mult} n={n}"),
                    v.modulus(),
                    v.value(),
                    None,
                ),
                Err(e) => return math_error(&e),
            }
        }
        "cube" => {
            let n = need!(n, "--n");
            let f = match factorize(n) {
                Ok(f) => f,
                Err(e) => return math_error(&e),
            };
            match signed_cube_sum(&f) {
                Ok(v) => (format!("P={n}"), v.modulus(), v.value(), None),
                Err(e) => return math_error(&e),
            }
        }
        "halfcube" => {
            let n = need!(n, "--n");
            let f = match factorize(n) {
                Ok(f) => f,
                Err(e) => return math_error(&e),
            };
            match half_cube_sum(&f) {
                Ok(v) => (format!("P={n}"), v.modulus(), v.value(), None),
                Err(e) => return math_error(&e),
            }
        }
        other => return usage_error(&format!("unknown sum kind '{other}'")),
    };

    match format {
        Format::Table => {
            println!("{value}");
            if let Some(agree) = agreement {
                println!("naive and fast agree: {agree}");
                if !agree {
                    return 1;
                }
            }
        }
        Format::Json => {
            let body = SumJson {
                kind: kind.to_string(),
                params,
                modulus: modulus.to_string(),
                value: value.to_string(),
                agreement,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&body).expect("serialize")
            );
            if agreement == Some(false) {
                return 1;
            }
        }
    }
    0
}

fn run_bernoulli(k: u64, modulus: Option<u64>, format: Format) -> i32 {
    match modulus {
        None => {
            let b = bernoulli(k as usize);
            match format {
                Format::Table => println!("{b}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "k": k.to_string(), "value": b.to_string() })
                ),
            }
            0
        }
        Some(m) => match rational_mod(&bernoulli(k as usize), m) {
            Ok(r) => {
                match format {
                    Format::Table => println!("{}", r.value()),
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({
                            "k": k.to_string(),
                            "modulus": m.to_string(),
                            "value": r.value().to_string()
                        })
                    ),
                }
                0
            }
            Err(Error::NotInvertible { shared, modulus }) => {
                let primes: Vec<String> = factorize(shared)
                    .map(|f| f.primes().map(|p| p.to_string()).collect())
                    .unwrap_or_default();
                eprintln!(
                    "error: denominator of B_{k} shares prime(s) {} with modulus {modulus}",
                    primes.join(", ")
                );
                1
            }
            Err(e) => math_error(&e),
        },
    }
}

#[derive(Serialize)]
struct CriterionJson {
    criterion: u8,
    summary: String,
    pass: bool,
    elapsed_ms: u64,
    failures: Vec<String>,
}

fn run_selftest(format: Format) -> i32 {
    let outcomes = selftest::run_all();
    match format {
        Format::Table => {
            for o in &outcomes {
                println!("{}", o.status_line());
                for f in &o.failures {
                    println!("    - {f}");
                }
            }
        }
        Format::Json => {
            let body: Vec<CriterionJson> = outcomes
                .iter()
                .map(|o| CriterionJson {
                    criterion: o.number,
                    summary: o.summary.to_string(),
                    pass: o.passed(),
                    elapsed_ms: o.elapsed.as_millis() as u64,
                    failures: o.failures.clone(),
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&body).expect("serialize")
            );
        }
    }
    if outcomes.iter().all(|o| o.passed()) {
        0
    } else {
        1
    }
}

/// Parses arguments and runs one command, returning the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            target,
            n,
            p,
            r,
            p2,
            r2,
            r0,
            k,
            m,
            residue,
            x,
            nn,
            sign,
            method,
            max_n,
        } => run_verify(
            &target,
            VerifyArgs {
                n,
                p,
                r,
                p2,
                r2,
                r0,
                k,
                m,
                residue,
                x,
                nn,
                sign,
                method,
                max_n,
            },
            cli.format,
        ),
        Command::Sum {
            kind,
            n,
            k,
            target,
            x,
            mult,
            modulus,
            sign,
            filter,
            method,
        } => run_sum(
            &kind, n, k, target, x, mult, modulus, sign, filter, method, cli.format,
        ),
        Command::Bernoulli { k, modulus } => run_bernoulli(k, modulus, cli.format),
        Command::Selftest => run_selftest(cli.format),
    }
}
