use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use flag_einstein::curvature::{self, einstein_residual, kaehler_einstein_metric, InvariantMetric};
use flag_einstein::isotropy::triple_tensor;
use flag_einstein::polyalg::text::{parse_poly, parse_system};
use flag_einstein::polyalg::{
    buchberger, isolate_real_roots, saturate, Budget, OrderKind, TermOrder, UniPoly,
};
use flag_einstein::rational::{self, Rational};
use flag_einstein::rootsys::RootSystem;
use flag_einstein::solver::general::general_default_budget;
use flag_einstein::solver::pipeline::{
    classification, general_solution_set, oracle_solution_set, symmetric_solution_set,
};
use flag_einstein::solver::report::{to_json, to_table};
use flag_einstein::solver::{OracleConfig, SolutionSet};
use flag_einstein::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "flag-einstein", version, about = "Invariant Einstein metrics on full flag manifolds K/T")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Numeric tolerance, in (0, 1).
    #[arg(long, default_value_t = 1e-10, global = true)]
    precision: f64,
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Newton starts for the oracle.
    #[arg(long, default_value_t = 100_000, global = true)]
    starts: usize,
    /// Groebner budget as PAIRS or PAIRS/BITS.
    #[arg(long, env = "FLAG_EINSTEIN_BUDGET", global = true)]
    budget: Option<String>,
    #[arg(long, env = "FLAG_EINSTEIN_THREADS", global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symmetric,
    General,
    Oracle,
    /// Kähler–Einstein orbit, every elimination case and the oracle.
    Classify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots, their lengths and the Killing Gram matrix.
    Roots { group: String },
    /// Nonzero triples [k; ij] of the isotropy decomposition.
    Triples { group: String },
    /// Ricci components of a metric.
    Ricci {
        group: String,
        /// Comma-separated positive rationals.
        #[arg(long)]
        metric: String,
    },
    /// Solve the Einstein equations.
    Einstein {
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::Oracle)]
        mode: Mode,
    },
    /// The Kähler–Einstein metric from twice the half-sum of positive roots.
    Kaehler { group: String },
    /// Reduced Groebner basis of a polynomial file.
    Groebner {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Lex)]
        order: Order,
        /// Comma-separated variables, highest first.
        #[arg(long)]
        vars: Option<String>,
        /// Put this variable last and isolate the real roots of its eliminant.
        #[arg(long)]
        isolate: Option<String>,
        /// Saturate by this polynomial (repeatable).
        #[arg(long)]
        nonzero: Vec<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
    /// Emitted before failing, e.g. a partial report.
    output: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::Domain(_) | Error::Parse { .. } => 2,
            Error::BudgetExceeded(_) => 3,
            Error::Invariant(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
            output: None,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
        output: None,
    }
}

fn parse_budget(s: &str) -> std::result::Result<Budget, Failure> {
    let bad = || usage(format!("bad budget {s:?}, expected PAIRS or PAIRS/BITS"));
    let mut b = Budget::default();
    let (pairs, bits) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    b.max_pairs = pairs.trim().parse().map_err(|_| bad())?;
    if let Some(q) = bits {
        b.max_coeff_bits = q.trim().parse().map_err(|_| bad())?;
    }
    Ok(b)
}

fn group(label: &str) -> std::result::Result<RootSystem, Failure> {
    RootSystem::from_label(label).map_err(|e| usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(f) => fail(f),
        },
        Err(f) => {
            if let Some(text) = &f.output {
                let _ = emit(&cli, text);
            }
            fail(f)
        }
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("flag-einstein: {}", f.message);
    ExitCode::from(f.code)
}

fn emit(cli: &Cli, text: &str) -> std::result::Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<String, Failure> {
    if !(cli.precision > 0.0 && cli.precision < 1.0) {
        return Err(usage("--precision must lie in (0, 1)"));
    }
    if cli.starts == 0 {
        return Err(usage("--starts must be at least 1"));
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    let (budget, general) = match &cli.budget {
        Some(s) => {
            let b = parse_budget(s)?;
            (b.clone(), b)
        }
        None => (Budget::default(), general_default_budget()),
    };
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Roots { group: g } => Ok(roots(&group(g)?, json)),
        Command::Triples { group: g } => Ok(triples(&group(g)?, json)),
        Command::Ricci { group: g, metric } => Ok(ricci(&group(g)?, metric, json)?),
        Command::Kaehler { group: g } => Ok(kaehler(&group(g)?, json)?),
        Command::Einstein { group: g, mode } => {
            let sys = group(g)?;
            let cfg = OracleConfig {
                starts: cli.starts,
                seed: cli.seed,
                tol: cli.precision,
                ..OracleConfig::default()
            };
            let set = match mode {
                Mode::Symmetric => symmetric_solution_set(&sys, &budget)?,
                Mode::General => general_solution_set(&sys, &general, &cfg)?,
                Mode::Oracle => oracle_solution_set(&sys, &cfg)?,
                Mode::Classify => classification(&sys, &budget, &general, &cfg)?,
            };
            let text = render_set(&set, json);
            if *mode == Mode::General && set.budget_exceeded() {
                return Err(Failure {
                    code: 3,
                    message: "groebner budget exceeded in the general case; report is partial".into(),
                    output: Some(text),
                });
            }
            Ok(text)
        }
        Command::Groebner {
            file,
            order,
            vars,
            isolate,
            nonzero,
        } => groebner(file, *order, vars.as_deref(), isolate.as_deref(), nonzero, &budget, cli.precision, json),
    }
}

fn render_set(set: &SolutionSet, json: bool) -> String {
    if json {
        let mut s = to_json(set);
        s.push('\n');
        s
    } else {
        to_table(set)
    }
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serialises");
    s.push('\n');
    s
}

fn q(r: &Rational) -> String {
    rational::to_string(r)
}

fn roots(sys: &RootSystem, json: bool) -> String {
    let gram: Vec<Vec<String>> = sys.killing_form().gram.iter().map(|row| row.iter().map(q).collect()).collect();
    let entries: Vec<_> = sys
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| (i + 1, r.to_string(), q(&sys.norm2(r)), sys.is_long(i)))
        .collect();
    if json {
        return pretty(json!({
            "group": sys.label(),
            "roots": entries.iter().map(|(i, r, n, l)| json!({
                "index": i, "root": r, "norm2": n, "long": l,
            })).collect::<Vec<_>>(),
            "gram": gram,
        }));
    }
    let mut out = String::new();
    let long = entries.iter().filter(|e| e.3).count();
    let _ = writeln!(out, "{}: {} positive roots, {} long / {} short", sys.label(), entries.len(), long, entries.len() - long);
    for (i, r, n, l) in &entries {
        let _ = writeln!(out, "  x{i:<3} {r:<24} |a|^2 = {n:<6} {}", if *l { "long" } else { "short" });
    }
    let _ = writeln!(out, "Killing Gram matrix on simple roots:");
    for row in &gram {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    out
}

fn triples(sys: &RootSystem, json: bool) -> String {
    let records = triple_tensor(sys).records();
    if json {
        return pretty(json!({ "group": sys.label(), "triples": records }));
    }
    let mut out = format!("{}: {} nonzero triples\n", sys.label(), records.len());
    for r in &records {
        let [i, j, k] = r.indices;
        let _ = writeln!(out, "  [{k};{i}{j}] = {}", r.value);
    }
    out
}

fn parse_metric(csv: &str) -> std::result::Result<Vec<Rational>, Failure> {
    csv.split(',')
        .map(|t| rational::parse(t.trim()).ok_or_else(|| usage(format!("bad metric entry {t:?}"))))
        .collect()
}

fn ricci(sys: &RootSystem, csv: &str, json: bool) -> Result<String, Failure> {
    let tensor = triple_tensor(sys);
    let metric = InvariantMetric::new(parse_metric(csv)?)?;
    let rc = curvature::ricci(&metric.x, &tensor)?;
    let (k, residual) = einstein_residual(&metric, &tensor)?;
    let r: Vec<String> = rc.r.iter().map(q).collect();
    if json {
        return Ok(pretty(json!({
            "group": sys.label(),
            "x": metric.x.iter().map(q).collect::<Vec<_>>(),
            "r": r,
            "k": q(&k),
            "residual": q(&residual),
        })));
    }
    let mut out = String::new();
    for (i, ri) in r.iter().enumerate() {
        let _ = writeln!(out, "r{} = {ri}", i + 1);
    }
    let _ = writeln!(out, "mean = {}\nresidual = {}", q(&k), q(&residual));
    Ok(out)
}

fn kaehler(sys: &RootSystem, json: bool) -> Result<String, Failure> {
    let tensor = triple_tensor(sys);
    let ke = kaehler_einstein_metric(sys);
    let (k, residual) = einstein_residual(&ke, &tensor)?;
    if !num_traits::Zero::is_zero(&residual) {
        return Err(Error::Invariant(format!("Kähler–Einstein metric has spread {}", q(&residual))).into());
    }
    let x: Vec<String> = ke.x.iter().map(q).collect();
    if json {
        return Ok(pretty(json!({
            "group": sys.label(),
            "x": x,
            "k": q(&k),
            "residual": q(&residual),
        })));
    }
    Ok(format!("x = ({})\nk = {}\nresidual = {}\n", x.join(", "), q(&k), q(&residual)))
}

#[allow(clippy::too_many_arguments)]
fn groebner(
    file: &PathBuf,
    order: Order,
    vars: Option<&str>,
    isolate: Option<&str>,
    nonzero: &[String],
    budget: &Budget,
    precision: f64,
    json: bool,
) -> Result<String, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let names: Option<Vec<String>> = vars.map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
    let polys = parse_system(&text, names.as_deref())?;
    let Some(first) = polys.first() else {
        return Err(usage(format!("{} contains no polynomials", file.display())));
    };
    let vs = first.vars().clone();
    let mut priority: Vec<usize> = (0..vs.len()).collect();
    let last = match isolate {
        Some(name) => {
            let i = vs
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| usage(format!("unknown variable {name}")))?;
            priority.retain(|&j| j != i);
            priority.push(i);
            Some(i)
        }
        None => None,
    };
    let kind = match order {
        Order::Lex => OrderKind::Lex,
        Order::Grevlex => OrderKind::GrevLex,
    };
    let term_order = TermOrder::new(kind, priority)?;
    let nonzero = nonzero
        .iter()
        .map(|s| parse_poly(s, &vs))
        .collect::<Result<Vec<_>>>()?;
    let gb = if nonzero.is_empty() {
        buchberger(&polys, &term_order, budget)?
    } else {
        saturate(&polys, &nonzero, &term_order, budget)?
    };
    let basis: Vec<String> = gb.generators.iter().map(|g| g.to_string()).collect();
    let mut iso = None;
    if let Some(i) = last {
        let uni = gb.univariate_in(i);
        let Some(elim) = uni.first() else {
            return Err(usage(format!("basis has no eliminant in {}", vs[i])));
        };
        let p = UniPoly::from_multi(elim)?;
        let width = rational::from_f64(precision).ok_or_else(|| usage("bad precision"))?;
        let roots: Vec<_> = isolate_real_roots(&p, None)?
            .into_iter()
            .map(|r| r.refined(&width))
            .collect();
        iso = Some((elim.to_string(), p.degree(), roots));
    }
    if json {
        let mut v = json!({ "vars": vs.to_vec(), "basis": basis });
        if let Some((e, d, roots)) = &iso {
            v["eliminant"] = json!(e);
            v["degree"] = json!(d);
            v["roots"] = json!(roots
                .iter()
                .map(|r| json!({ "lo": q(&r.lo), "hi": q(&r.hi), "approx": r.to_f64() }))
                .collect::<Vec<_>>());
        }
        return Ok(pretty(v));
    }
    let mut out = format!("basis ({} generators):\n", basis.len());
    for g in &basis {
        let _ = writeln!(out, "  {g}");
    }
    if let Some((e, d, roots)) = iso {
        let positive = roots.iter().filter(|r| r.to_f64() > 0.0).count();
        let _ = writeln!(out, "eliminant (degree {d}):\n  {e}");
        let _ = writeln!(out, "{} real roots, {positive} positive:", roots.len());
        for r in &roots {
            let _ = writeln!(out, "  {:.6}  in [{}, {}]", r.to_f64(), q(&r.lo), q(&r.hi));
        }
    }
    Ok(out)
}
