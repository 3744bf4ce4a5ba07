mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qhermite::bihermite::{bihermite_rec, wmn_poly};
use qhermite::hermite::{hermite_rec, vm_poly, wm_poly};
use qhermite::numeric::{gram_matrix, NumericParams};
use qhermite::qarith::QBase;
use qhermite::qsp::{
    eval_b_terms, explicit_relation_table, relation_table_closed_form, CartanDatum,
};
use serde_json::json;

use suites::{Pair, Report};

#[derive(Parser)]
#[command(name = "qhermite", version, about = "Bivariate continuous q-Hermite polynomials and deformed quantum Serre relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Hermite,
    W,
    V,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Univariate,
    Bivariate,
    Starproduct,
    SerreTauii,
    SerreTauij,
    Sums,
    All,
}

#[derive(clap::Args)]
struct DatumArgs {
    /// Cartan datum as JSON: {"I":[..],"a":[[..]],"d":[..],"tau":{..}}
    #[arg(long, value_name = "FILE")]
    cartan: Option<PathBuf>,
    /// Index labels i j of the pair under study
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Print H_n, w_n or v_n
    Poly {
        #[arg(value_enum)]
        kind: PolyKind,
        n: u32,
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print H_{m,n}(x, y)
    Bipoly {
        m: u32,
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print w_{m,n}(x, y) for a pair with tau(i) = i
    Wmn {
        m: u32,
        n: u32,
        #[command(flatten)]
        datum: DatumArgs,
        /// a_ij for the default rank-two datum (d_i = 1)
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the right side of the deformed Serre relation for tau(i) = i
    Relation {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification suites
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Degree or word-length bound (per-suite default when omitted)
        #[arg(long)]
        max: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i32>,
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        json: bool,
    },
    /// Numeric Gram matrix of H_{m,n} against the orthogonality measure
    Gram {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 2)]
        maxdeg: u32,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
}

macro_rules! out {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

fn emit(line: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_datum(args: &DatumArgs) -> CliResult<Option<CartanDatum>> {
    let Some(path) = &args.cartan else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    Ok(Some(CartanDatum::from_json_str(&text)?))
}

fn load_pair(args: &DatumArgs) -> CliResult<Option<Pair>> {
    let datum = load_datum(args)?;
    match (datum, &args.pair) {
        (None, None) => Ok(None),
        (None, Some(_)) => Err(UsageError("--pair requires --cartan".into())),
        (Some(_), None) => Err(UsageError("--cartan requires --pair".into())),
        (Some(datum), Some(p)) => {
            let i = datum.index_of(&p[0])?;
            let j = datum.index_of(&p[1])?;
            if i == j {
                return Err(UsageError("--pair needs two distinct indices".into()));
            }
            Ok(Some(Pair { datum, i, j }))
        }
    }
}

/// The pair from `--cartan/--pair`, or the default rank-two datum for `a`.
fn fixed_pair_from(args: &DatumArgs, a: Option<i32>) -> CliResult<Pair> {
    let pair = match (load_pair(args)?, a) {
        (Some(_), Some(_)) => return Err(UsageError("use either --a or --cartan/--pair".into())),
        (Some(p), None) => p,
        (None, Some(a)) => Pair { datum: CartanDatum::fixed_pair(a as i64)?, i: 0, j: 1 },
        (None, None) => return Err(UsageError("a Cartan datum is required: pass --cartan FILE --pair I J or --a A".into())),
    };
    if pair.datum.tau(pair.i) != pair.i {
        return Err(UsageError(format!("tau({0}) must equal {0}", pair.datum.label(pair.i))));
    }
    Ok(pair)
}

fn run(cmd: Command) -> CliResult<bool> {
    match cmd {
        Command::Poly { kind, n, datum, format } => {
            let p = match kind {
                PolyKind::Hermite => hermite_rec(n, QBase::Q),
                PolyKind::W | PolyKind::V => {
                    let pair = load_pair(&datum)?
                        .ok_or_else(|| UsageError("w and v need --cartan FILE --pair I J".into()))?;
                    if pair.datum.tau(pair.i) != pair.i {
                        return Err(UsageError(format!("tau({0}) must equal {0}", pair.datum.label(pair.i))));
                    }
                    let d = pair.datum.d(pair.i);
                    if matches!(kind, PolyKind::W) { wm_poly(n, d) } else { vm_poly(n, d) }
                }
            };
            match format {
                Format::Text => out!("{p}"),
                Format::Latex => out!("{}", p.to_latex()),
                Format::Json => out!("{}", serde_json::to_string_pretty(&p.to_json_as("x"))?),
            }
            Ok(true)
        }
        Command::Bipoly { m, n, format } => {
            let p = bihermite_rec(m, n, QBase::Q);
            print_xy(&p, format)?;
            Ok(true)
        }
        Command::Wmn { m, n, datum, a, format } => {
            let pair = fixed_pair_from(&datum, a)?;
            let p = wmn_poly(m, n, pair.datum.d(pair.i), pair.datum.a(pair.i, pair.j));
            print_xy(&p, format)?;
            Ok(true)
        }
        Command::Relation { datum, a, format } => {
            let pair = fixed_pair_from(&datum, a)?;
            let (d, i, j) = (&pair.datum, pair.i, pair.j);
            let rel = explicit_relation_table(d, i, j)?;
            let entry = relation_table_closed_form(d, i, j)?;
            let matches = rel == eval_b_terms(d, &entry.terms);
            match format {
                Format::Text => {
                    out!("{}", rel.to_text(d));
                    out!("closed form: {} ({})", entry.latex, if matches { "matches" } else { "differs" });
                }
                Format::Latex => out!("{}", rel.to_latex(d)),
                Format::Json => {
                    let v = json!({
                        "pair": [d.label(i), d.label(j)],
                        "a": entry.a,
                        "relation": rel.to_json(d),
                        "closed_form": entry.latex,
                        "matches_closed_form": matches,
                    });
                    out!("{}", serde_json::to_string_pretty(&v)?);
                }
            }
            Ok(matches)
        }
        Command::Verify { suite, max, a, datum, json } => verify(suite, max, a, &datum, json),
        Command::Gram { q, r, maxdeg, grid } => {
            let params = NumericParams::new(q, r)?.with_grid(grid)?;
            let report = gram_matrix(maxdeg, &params)?;
            out!("{}", serde_json::to_string_pretty(&report)?);
            Ok(true)
        }
    }
}

fn print_xy(p: &qhermite::bihermite::XYPoly, format: Format) -> CliResult<()> {
    match format {
        Format::Text => out!("{p}"),
        Format::Latex => out!("{}", p.to_latex()),
        Format::Json => out!("{}", serde_json::to_string_pretty(p)?),
    }
    Ok(())
}

const AFFINE_A2: &str =
    r#"{"I":["1","2","3"],"a":[[2,-1,-1],[-1,2,-1],[-1,-1,2]],"d":[1,1,1],"tau":{"1":"1","2":"3","3":"2"}}"#;

/// Pairs for a Serre suite: the configured one when it has the right shape,
/// otherwise the rank-two defaults for `--a` or for `a_ij = 0..-3`.
fn serre_pairs(args: &DatumArgs, a: Option<i32>, swapped: bool, strict: bool) -> CliResult<Vec<Pair>> {
    if let Some(p) = load_pair(args)? {
        if a.is_some() {
            return Err(UsageError("use either --a or --cartan/--pair".into()));
        }
        let shape_ok = if swapped { p.datum.tau(p.i) == p.j } else { p.datum.tau(p.i) == p.i };
        if shape_ok {
            return Ok(vec![p]);
        }
        if strict {
            let need = if swapped { "tau(i) = j" } else { "tau(i) = i" };
            return Err(UsageError(format!("the pair does not satisfy {need}")));
        }
    }
    let values = match a {
        Some(a) => vec![a],
        None => vec![0, -1, -2, -3],
    };
    values
        .into_iter()
        .map(|a| {
            let datum = if swapped { CartanDatum::swapped_pair(a as i64)? } else { CartanDatum::fixed_pair(a as i64)? };
            Ok(Pair { datum, i: 0, j: 1 })
        })
        .collect()
}

fn verify(suite: Suite, max: Option<u32>, a: Option<i32>, args: &DatumArgs, json_out: bool) -> CliResult<bool> {
    let all = suite == Suite::All;
    let wants = |s: Suite| all || suite == s;
    if a.is_some_and(|a| a > 0) {
        return Err(UsageError("--a must be <= 0".into()));
    }
    let mut reports: Vec<Report> = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> CliResult<Report>| -> CliResult<()> {
        let start = Instant::now();
        let r = f()?;
        eprintln!("{} finished in {:.2?}", r.suite, start.elapsed());
        reports.push(r);
        Ok(())
    };
    if wants(Suite::Univariate) {
        timed(&mut || Ok(suites::univariate(max.unwrap_or(12))))?;
    }
    if wants(Suite::Bivariate) {
        timed(&mut || Ok(suites::bivariate(max.unwrap_or(8))))?;
    }
    if wants(Suite::Starproduct) {
        timed(&mut || {
            let datum = match load_datum(args)? {
                Some(d) => d,
                None => CartanDatum::from_json_str(AFFINE_A2)?,
            };
            Ok(suites::starproduct(&datum, max.unwrap_or(4)))
        })?;
    }
    if wants(Suite::SerreTauii) {
        timed(&mut || Ok(suites::serre_tauii(&serre_pairs(args, a, false, !all)?, max.unwrap_or(6))))?;
    }
    if wants(Suite::SerreTauij) {
        timed(&mut || Ok(suites::serre_tauij(&serre_pairs(args, a, true, !all)?, max.unwrap_or(6))))?;
    }
    if wants(Suite::Sums) {
        timed(&mut || Ok(suites::sums()))?;
    }
    let passed = reports.iter().all(|r| r.failures.is_empty());
    if json_out {
        out!("{}", serde_json::to_string_pretty(&json!({"passed": passed, "reports": reports}))?);
    } else {
        for r in &reports {
            out!("{}: {} cases, {} failures", r.suite, r.cases, r.failures.len());
            for f in &r.failures {
                out!("  FAIL {}: {}", f.case, f.detail);
            }
        }
    }
    Ok(passed)
}
