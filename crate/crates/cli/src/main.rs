//! Command-line front end: exact counts for the three grid families,
//! cylindric partition enumeration, cliff counts, spectra, the grid
//! identity chain, and the full cross-verification suites. Exit code 0
//! means every emitted case agrees, 1 means at least one disagreement,
//! 2 means the invocation itself was invalid.

mod report;

use std::collections::VecDeque;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use dimers::cylindric::{cliff_count, cliff_count_formula, enumerate_cylindric};
use dimers::engine::count_cyl;
use dimers::exact::Rat;
use dimers::factor::grid_chain_check;
use dimers::formulas::{
    honeycomb_formula, square_even_formula, square_odd_formula, square_unified_formula, tfk,
    FormulaValue,
};
use dimers::graph::{
    honeycomb_cylinder, rect_grid, square_cylinder_graph, VerticalWeight, WeightedMultigraph,
};
use dimers::oracle::{
    count_matchings_profile, count_matchings_with_limit, ColumnStructure, EXHAUSTIVE_LIMIT,
};
use dimers::verify::{eigen_family_case, run_suite, SuiteReport, EIGEN_FAMILIES, SUITE_NAMES};

use report::{case_label, float_string, render_table, CaseOut, Report};

#[derive(Parser)]
#[command(
    name = "dimers",
    version,
    about = "Exact dimer covering counts with closed-form and oracle cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Emit the report as a plain text table (the default)
    #[arg(long, global = true)]
    table: bool,

    /// Cross-check against the exhaustive oracle where one applies
    #[arg(long, global = true)]
    oracle: bool,

    /// Vertex cap for exhaustive oracle runs
    #[arg(long, global = true, value_name = "N")]
    limit: Option<usize>,
}

#[derive(Args)]
struct SizeArgs {
    /// First size parameter of the family
    #[arg(short)]
    m: usize,

    /// Second size parameter of the family
    #[arg(short)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Count dimer coverings of one parameterized graph family
    Count {
        #[command(subcommand)]
        family: CountFamily,
    },
    /// Enumerate cylindric partitions and cross-check the coefficient route
    Partitions {
        /// Number of rows
        #[arg(short)]
        m: usize,
        /// Cells per row
        #[arg(short)]
        s: usize,
        /// Largest allowed entry
        #[arg(short)]
        n: usize,
    },
    /// Count cliff configurations through the matching polynomial coefficient
    Cliffs {
        /// Half the honeycomb girth
        #[arg(short)]
        m: usize,
        /// Half the even part of the cylinder length
        #[arg(short)]
        n: usize,
        /// Number of cliffs
        #[arg(short)]
        s: usize,
    },
    /// Run one named cross-verification suite, or all of them
    Verify {
        /// Suite name, or "all"
        suite: String,
    },
    /// Check closed-form spectra against exact characteristic polynomials
    Eigen {
        /// Spectral family: path, wilted-path, or strand-gram
        family: String,
        /// Largest matrix size of the sweep
        #[arg(short, default_value_t = 8)]
        n: usize,
    },
    /// Check the doubling, splitting, and quotient identities that tie
    /// the odd cylinder to plain grids
    Chain {
        /// Cylinder girth parameter: girth 2m+1
        #[arg(short)]
        m: usize,
        /// Cylinder length parameter: length 2n
        #[arg(short)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CountFamily {
    /// Hexagon cylinder of girth m (even) and length n
    Honeycomb {
        #[command(flatten)]
        size: SizeArgs,
        /// Vertical weight per level, as a rational such as 2 or 3/2;
        /// give one value to use it on every level, or one per level
        #[arg(long = "x", value_name = "RAT")]
        x: Vec<String>,
    },
    /// Square cylinder of girth m and length n
    SquareCylinder {
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Plain m by n grid
    Grid {
        #[command(flatten)]
        size: SizeArgs,
    },
}

enum Output {
    Cases(Vec<CaseOut>),
    Suites {
        rows: Vec<(String, usize, usize)>,
        failing: Vec<CaseOut>,
        total: usize,
        failures: usize,
    },
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn rounds_to(v: &FormulaValue, exact: &BigInt) -> bool {
    v.rounded == *exact && v.relative_gap < 1e-6
}

fn case(family: &str, parameters: Vec<i64>) -> CaseOut {
    CaseOut {
        family: family.to_string(),
        parameters,
        engine_value: None,
        formula_value: None,
        oracle_value: None,
        agreement: true,
        detail: String::new(),
        timing_ms: None,
    }
}

fn disagree(case: &mut CaseOut, detail: &str) {
    case.agreement = false;
    if case.detail.is_empty() {
        case.detail = detail.to_string();
    } else {
        case.detail = format!("{}; {detail}", case.detail);
    }
}

fn exhaustive_constant(g: &WeightedMultigraph, limit: usize) -> Result<Rat, String> {
    let poly = count_matchings_with_limit(g, limit)
        .map_err(|e| format!("--oracle: {e}; raise --limit if the graph is larger"))?;
    poly.as_constant()
        .ok_or_else(|| "--oracle: count is not a constant".to_string())
}

fn parse_weights(raw: &[String], m: usize) -> Result<Vec<Rat>, String> {
    let parsed: Result<Vec<Rat>, String> = raw
        .iter()
        .map(|s| {
            s.parse::<Rat>()
                .map_err(|e| format!("--x {s}: {e}"))
        })
        .collect();
    let parsed = parsed?;
    let xs = match parsed.len() {
        0 => vec![Rat::one(); m],
        1 => vec![parsed[0].clone(); m],
        k if k == m => parsed,
        k => {
            return Err(format!(
                "--x given {k} times; expected one value or one per level ({m})"
            ))
        }
    };
    if xs.iter().any(|x| x <= &Rat::from_integer(BigInt::from(0))) {
        return Err("--x: weights must be positive".into());
    }
    Ok(xs)
}

fn count_honeycomb(size: &SizeArgs, raw_x: &[String], oracle: bool, limit: usize) -> Result<Output, String> {
    let (m, n) = (size.m, size.n);
    let fabric = honeycomb_cylinder(m, n).map_err(|e| format!("-m/-n: {e}"))?;
    let xs = parse_weights(raw_x, m)?;
    let mut rec = case("honeycomb", vec![m as i64, n as i64]);
    let engine = count_cyl(&fabric, &xs).map_err(|e| format!("-m/-n: {e}"))?;
    rec.engine_value = Some(engine.to_string());
    let floats: Vec<f64> = xs
        .iter()
        .map(|x| x.to_f64().ok_or_else(|| "--x: weight out of float range".to_string()))
        .collect::<Result<_, _>>()?;
    let formula = honeycomb_formula(m, n, &floats).map_err(|e| format!("-m: {e}"))?;
    rec.formula_value = Some(formula.float_value);
    let engine_float = engine.to_f64().unwrap_or(f64::NAN);
    if !close(formula.float_value, engine_float, 1e-6) {
        disagree(&mut rec, "closed form drifted from the exact count");
    }
    if oracle {
        let weights: Vec<VerticalWeight> =
            xs.iter().cloned().map(VerticalWeight::Rational).collect();
        let g = fabric
            .to_multigraph_with(&weights)
            .map_err(|e| format!("-m/-n: {e}"))?;
        let count = exhaustive_constant(&g, limit)?;
        rec.oracle_value = Some(count.to_string());
        if count != engine {
            disagree(&mut rec, "oracle disagrees with the engine");
        }
    }
    Ok(Output::Cases(vec![rec]))
}

fn count_square_cylinder(size: &SizeArgs, oracle: bool, limit: usize) -> Result<Output, String> {
    let (m, n) = (size.m, size.n);
    let g = square_cylinder_graph(m, n).map_err(|e| format!("-m/-n: {e}"))?;
    let exact = count_matchings_profile(&g, &ColumnStructure::contiguous(m, n))
        .map_err(|e| format!("-m: {e}"))?;
    let mut rec = case("square-cylinder", vec![m as i64, n as i64]);
    rec.engine_value = Some(exact.to_string());
    let unified = square_unified_formula(m, n).map_err(|e| format!("-m/-n: {e}"))?;
    rec.formula_value = Some(unified.float_value);
    if !rounds_to(&unified, &exact) {
        disagree(&mut rec, "unified closed form does not round to the count");
    }
    if m % 2 == 0 {
        match square_even_formula(m, n) {
            Ok(v) if rounds_to(&v, &exact) => {}
            _ => disagree(&mut rec, "even-girth closed form does not round to the count"),
        }
    } else if n % 2 == 0 {
        match square_odd_formula((m - 1) / 2, n / 2) {
            Ok(v) if rounds_to(&v, &exact) => {}
            _ => disagree(&mut rec, "odd-girth closed form does not round to the count"),
        }
    }
    if oracle {
        let count = exhaustive_constant(&g, limit)?;
        rec.oracle_value = Some(count.to_string());
        if count != Rat::from_integer(exact) {
            disagree(&mut rec, "oracle disagrees with the frontier count");
        }
    }
    Ok(Output::Cases(vec![rec]))
}

fn count_grid(size: &SizeArgs, oracle: bool, limit: usize) -> Result<Output, String> {
    let (m, n) = (size.m, size.n);
    let g = rect_grid(m, n, false).map_err(|e| format!("-m/-n: {e}"))?;
    let exact = count_matchings_profile(&g, &ColumnStructure::contiguous(m, n))
        .map_err(|e| format!("-m: {e}"))?;
    let mut rec = case("rect-grid", vec![m as i64, n as i64]);
    rec.engine_value = Some(exact.to_string());
    let formula = tfk(m, n).map_err(|e| format!("-m/-n: {e}"))?;
    rec.formula_value = Some(formula.float_value);
    if !rounds_to(&formula, &exact) {
        disagree(&mut rec, "double product does not round to the count");
    }
    if oracle {
        let count = exhaustive_constant(&g, limit)?;
        rec.oracle_value = Some(count.to_string());
        if count != Rat::from_integer(exact) {
            disagree(&mut rec, "oracle disagrees with the frontier count");
        }
    }
    Ok(Output::Cases(vec![rec]))
}

fn partitions(m: usize, s: usize, n: usize) -> Result<Output, String> {
    let listed = enumerate_cylindric(m, s, n).map_err(|e| format!("-m/-s: {e}"))?;
    let counted = cliff_count(m, n, s).map_err(|e| format!("-m/-s: {e}"))?;
    let mut rec = case("partitions", vec![m as i64, s as i64, n as i64]);
    rec.engine_value = Some(listed.to_string());
    rec.oracle_value = Some(counted.to_string());
    let float = cliff_count_formula(m, n, s);
    rec.formula_value = Some(float);
    if listed != counted {
        disagree(&mut rec, "enumeration disagrees with the coefficient route");
    }
    if !close(float, listed.to_f64().unwrap_or(f64::NAN), 1e-6) {
        disagree(&mut rec, "float product drifted from the exact count");
    }
    Ok(Output::Cases(vec![rec]))
}

fn cliffs(m: usize, n: usize, s: usize, oracle: bool) -> Result<Output, String> {
    let counted = cliff_count(m, n, s).map_err(|e| format!("-m/-n/-s: {e}"))?;
    let mut rec = case("cliffs", vec![m as i64, n as i64, s as i64]);
    rec.engine_value = Some(counted.to_string());
    let float = cliff_count_formula(m, n, s);
    rec.formula_value = Some(float);
    if !close(float, counted.to_f64().unwrap_or(f64::NAN), 1e-6) {
        disagree(&mut rec, "float product drifted from the exact count");
    }
    if oracle {
        let listed = enumerate_cylindric(m, s, n).map_err(|e| format!("--oracle: {e}"))?;
        rec.oracle_value = Some(listed.to_string());
        if listed != counted {
            disagree(&mut rec, "enumeration disagrees with the coefficient route");
        }
    }
    Ok(Output::Cases(vec![rec]))
}

/// Worker count: the DIMERS_WORKERS variable when set, otherwise the
/// machine's available parallelism.
fn worker_cap() -> usize {
    std::env::var("DIMERS_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
}

/// Runs the named suites on a small worker pool. Results are reassembled
/// in suite order, so the output does not depend on the worker count.
fn run_suites(names: &[&str]) -> Vec<SuiteReport> {
    let workers = worker_cap().min(names.len());
    if workers <= 1 {
        return names
            .iter()
            .map(|n| run_suite(n).expect("caller passes known suite names"))
            .collect();
    }
    let queue: Mutex<VecDeque<usize>> = Mutex::new((0..names.len()).collect());
    let slots: Vec<Mutex<Option<SuiteReport>>> = names.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().expect("queue lock").pop_front();
                let Some(i) = job else { break };
                let report = run_suite(names[i]).expect("caller passes known suite names");
                *slots[i].lock().expect("slot lock") = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| {
            s.into_inner()
                .expect("slot lock")
                .expect("every queued suite was run")
        })
        .collect()
}

fn verify(suite: &str) -> Result<Output, String> {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if let Some(&name) = SUITE_NAMES.iter().find(|&&n| n == suite) {
        vec![name]
    } else {
        return Err(format!(
            "unknown suite {suite:?}; choose one of {} or all",
            SUITE_NAMES.join(", ")
        ));
    };
    let reports = run_suites(&names);
    let mut rows = Vec::new();
    let mut failing = Vec::new();
    let mut total = 0;
    let mut failures = 0;
    for report in &reports {
        rows.push((report.suite.clone(), report.cases.len(), report.failures()));
        total += report.cases.len();
        failures += report.failures();
        for c in report.failing_cases() {
            if failing.len() < 10 {
                failing.push(CaseOut {
                    family: format!("{}:{}", report.suite, c.family),
                    parameters: c.parameters.clone(),
                    engine_value: c.engine_value.clone(),
                    formula_value: c.formula_value,
                    oracle_value: c.oracle_value.clone(),
                    agreement: false,
                    detail: c.detail.clone(),
                    timing_ms: None,
                });
            }
        }
    }
    Ok(Output::Suites {
        rows,
        failing,
        total,
        failures,
    })
}

fn eigen(family: &str, n: usize) -> Result<Output, String> {
    if !EIGEN_FAMILIES.contains(&family) {
        return Err(format!(
            "unknown family {family:?}; choose one of {}",
            EIGEN_FAMILIES.join(", ")
        ));
    }
    if n > 32 {
        return Err("-n: sweeps above 32 are not supported".into());
    }
    let mut cases = Vec::new();
    for size in 1..=n {
        let record = eigen_family_case(family, size).expect("family name checked above");
        cases.push(CaseOut {
            family: record.family,
            parameters: record.parameters,
            engine_value: record.engine_value,
            formula_value: record.formula_value,
            oracle_value: record.oracle_value,
            agreement: record.agreement,
            detail: record.detail,
            timing_ms: None,
        });
    }
    Ok(Output::Cases(cases))
}

fn chain(m: usize, n: usize) -> Result<Output, String> {
    let report = grid_chain_check(m, n).map_err(|e| format!("-m/-n: {e}"))?;
    let scale = Rat::from_integer(BigInt::one() << n);
    let params = vec![m as i64, n as i64];
    let mut doubling = case("chain-doubling", params.clone());
    doubling.engine_value = Some(report.cylinder_count.to_string());
    doubling.oracle_value = Some((scale.clone() * &report.halved_grid_count).to_string());
    if !report.doubling_holds {
        disagree(&mut doubling, "cylinder count is not 2^n times the halved grid");
    }
    let mut splitting = case("chain-splitting", params.clone());
    splitting.engine_value = Some(report.big_grid_count.to_string());
    splitting.oracle_value =
        Some((scale * &report.small_grid_count * &report.halved_grid_count).to_string());
    if !report.splitting_holds {
        disagree(&mut splitting, "tall grid does not split as 2^n times the product");
    }
    let mut ratio = case("chain-ratio", params);
    ratio.engine_value =
        Some((report.big_grid_count / &report.small_grid_count).to_string());
    ratio.oracle_value = Some(report.cylinder_count.to_string());
    if !report.ratio_holds {
        disagree(&mut ratio, "grid quotient does not equal the cylinder count");
    }
    Ok(Output::Cases(vec![doubling, splitting, ratio]))
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn value_or_dash(v: &Option<String>) -> String {
    v.clone().unwrap_or_else(|| "-".into())
}

fn print_cases_table(cases: &[CaseOut]) {
    let rows: Vec<Vec<String>> = cases
        .iter()
        .map(|c| {
            vec![
                case_label(&c.family, &c.parameters),
                value_or_dash(&c.engine_value),
                c.formula_value.map(float_string).unwrap_or_else(|| "-".into()),
                value_or_dash(&c.oracle_value),
                if c.agreement { "yes" } else { "NO" }.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    print!(
        "{}",
        render_table(&["case", "engine", "formula", "oracle", "ok", "detail"], &rows)
    );
}

fn print_output(out: &Output, json: bool) -> usize {
    match out {
        Output::Cases(cases) => {
            let failures = cases.iter().filter(|c| !c.agreement).count();
            if json {
                let failing: Vec<CaseOut> = cases.clone();
                let report = Report::new(command_echo(), failing, cases.len(), failures);
                print!("{}", report.to_json());
            } else {
                print_cases_table(cases);
                println!("{} cases, {} failures", cases.len(), failures);
            }
            failures
        }
        Output::Suites {
            rows,
            failing,
            total,
            failures,
        } => {
            if json {
                let report = Report::new(command_echo(), failing.clone(), *total, *failures);
                print!("{}", report.to_json());
            } else {
                let table_rows: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(name, cases, fails)| {
                        vec![name.clone(), cases.to_string(), fails.to_string()]
                    })
                    .collect();
                print!(
                    "{}",
                    render_table(&["suite", "cases", "failures"], &table_rows)
                );
                if !failing.is_empty() {
                    println!();
                    print_cases_table(failing);
                }
                println!("{total} cases, {failures} failures");
            }
            *failures
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, String> {
    let limit = cli.limit.unwrap_or(EXHAUSTIVE_LIMIT);
    match &cli.command {
        Command::Count { family } => match family {
            CountFamily::Honeycomb { size, x } => count_honeycomb(size, x, cli.oracle, limit),
            CountFamily::SquareCylinder { size } => {
                count_square_cylinder(size, cli.oracle, limit)
            }
            CountFamily::Grid { size } => count_grid(size, cli.oracle, limit),
        },
        Command::Partitions { m, s, n } => partitions(*m, *s, *n),
        Command::Cliffs { m, n, s } => cliffs(*m, *n, *s, cli.oracle),
        Command::Verify { suite } => verify(suite),
        Command::Eigen { family, n } => eigen(family, *n),
        Command::Chain { m, n } => chain(*m, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let failures = print_output(&out, cli.json);
            if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
