//! Cross-verification suites. Every suite pits at least two independent
//! computation routes against each other (determinant engine, exhaustive
//! oracle, frontier dynamic program, closed-form float products,
//! permanents, explicit enumeration) and reports one record per case.
//! Errors never propagate out of a suite; they become failing cases so a
//! broken route is loud.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cylindric::{cliff_count, cliff_count_formula, enumerate_cylindric};
use crate::engine::{count_cyl, count_rect, match_polynomial};
use crate::exact::{rat, ExactMatrix, Rat};
use crate::factor::{
    axis_hypotheses_hold, build_g_prime, doubly_reduced_all_bipartite,
    doubly_reduced_subgraph, g_prime_cut_plan, grid_chain_check, reduced_subgraph_counts,
    verify_factorization, Cut,
};
use crate::formulas::{
    chebyshev_t, chebyshev_u, cosine_double_product, cosine_square_product_sides,
    honeycomb_formula, honeycomb_formula_sqrt_form, path_adjacency, path_eigenvalues,
    square_even_formula, square_odd_formula, square_unified_formula, strand_gram_eigenvalues,
    tfk, wilted_path_eigenvalues, wilted_path_matrix, FormulaValue,
};
use crate::graph::{
    honeycomb_cylinder, rect_grid, square_cylinder_graph, square_fabric_strand,
    symmetric_cylinder, EdgeWeight, FabricGraph, Side, Strand, SymmetricGraph,
    VerticalWeight, WeightedMultigraph,
};
use crate::oracle::{
    count_matchings, count_matchings_profile, count_matchings_with_limit, ColumnStructure,
};

/// Deterministic seed for every randomized suite: reruns are identical.
pub const SUITE_SEED: u64 = 0x00d1_5eed;

/// Size cap for the exhaustive oracle runs on random fabrics.
const RANDOM_FABRIC_ORACLE_LIMIT: usize = 40;

/// One verified case: what was computed on each route and whether the
/// routes agree.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub family: String,
    pub parameters: Vec<i64>,
    pub engine_value: Option<String>,
    pub formula_value: Option<f64>,
    pub oracle_value: Option<String>,
    pub agreement: bool,
    pub detail: String,
}

impl CaseRecord {
    fn new(family: &str, parameters: Vec<i64>) -> CaseRecord {
        CaseRecord {
            family: family.to_string(),
            parameters,
            engine_value: None,
            formula_value: None,
            oracle_value: None,
            agreement: true,
            detail: String::new(),
        }
    }

    fn fail(mut self, detail: String) -> CaseRecord {
        self.agreement = false;
        self.detail = detail;
        self
    }
}

/// All records of one suite, sorted canonically.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
}

impl SuiteReport {
    fn new(suite: &str, mut cases: Vec<CaseRecord>) -> SuiteReport {
        cases.sort_by(|a, b| (&a.family, &a.parameters).cmp(&(&b.family, &b.parameters)));
        SuiteReport {
            suite: suite.to_string(),
            cases,
        }
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.agreement).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn failing_cases(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.agreement)
    }
}

/// Names of all suites, in canonical order.
pub const SUITE_NAMES: [&str; 9] = [
    "engine",
    "honeycomb",
    "square",
    "grid",
    "partitions",
    "factorization",
    "permanents",
    "eigen",
    "identities",
];

/// Runs one suite by name.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "engine" => Some(engine_suite()),
        "honeycomb" => Some(honeycomb_suite()),
        "square" => Some(square_suite()),
        "grid" => Some(grid_suite()),
        "partitions" => Some(partitions_suite()),
        "factorization" => Some(factorization_suite()),
        "permanents" => Some(permanents_suite()),
        "eigen" => Some(eigen_suite()),
        "identities" => Some(identities_suite()),
        _ => None,
    }
}

/// Runs every suite in canonical order.
pub fn all_suites() -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n).expect("listed suites all exist"))
        .collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Checks a float product against an exact integer value: the product
/// must round to it with a small relative gap.
fn rounds_to(v: &FormulaValue, exact: &BigInt, tol: f64) -> bool {
    v.rounded == *exact && v.relative_gap < tol
}

// ---------------------------------------------------------------------
// random fabric generation

/// Random strand with staircase support: each bottom's tops start at or
/// after the previous bottom's last top, so no two edges cross. Weights
/// are drawn from {0, 1, 2}.
fn random_strand(rng: &mut ChaCha8Rng, bottom: usize, top: usize) -> Strand {
    let mut edges = Vec::new();
    let mut floor = 1usize;
    for b in 1..=bottom {
        let mut t = floor;
        let mut placed = 0usize;
        while t <= top && placed < 3 {
            if rng.gen_bool(0.6) {
                edges.push((b, t, rat(rng.gen_range(0..=2))));
                placed += 1;
                floor = t;
            }
            if rng.gen_bool(0.5) {
                t += 1;
            } else {
                break;
            }
        }
    }
    Strand::new(bottom, top, edges).expect("staircase construction cannot cross")
}

fn random_cylindrical(rng: &mut ChaCha8Rng) -> (FabricGraph, Vec<Rat>) {
    let m = rng.gen_range(1..=4);
    let levels: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=4)).collect();
    let strands = (0..m)
        .map(|i| random_strand(rng, levels[(i + m - 1) % m], levels[i]))
        .collect();
    let f = FabricGraph::cylindrical(strands, vec![VerticalWeight::Formal; m])
        .expect("random sizes chain up by construction");
    let xs = (0..m)
        .map(|_| {
            let num = *[-3i64, -2, -1, 1, 2, 3]
                .get(rng.gen_range(0..6))
                .expect("index in range");
            Rat::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=3)))
        })
        .collect();
    (f, xs)
}

fn random_rectangular(rng: &mut ChaCha8Rng) -> FabricGraph {
    let m = rng.gen_range(1..=4);
    let mut levels: Vec<usize> = (0..=m).map(|_| rng.gen_range(1..=4)).collect();
    levels[m] = levels[0]; // balanced stacks only
    let strands = (0..m)
        .map(|i| random_strand(rng, levels[i], levels[i + 1]))
        .collect();
    FabricGraph::rectangular(strands).expect("random sizes chain up by construction")
}

fn oracle_constant(g: &WeightedMultigraph, limit: usize) -> Result<Rat, String> {
    let poly = count_matchings_with_limit(g, limit).map_err(|e| e.to_string())?;
    poly.as_constant()
        .ok_or_else(|| "oracle value is not a constant".to_string())
}

// ---------------------------------------------------------------------
// suite 1: determinant engine vs exhaustive oracle on random fabrics

pub fn engine_suite() -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut cases = Vec::new();
    for index in 0..220i64 {
        let (f, xs) = random_cylindrical(&mut rng);
        let mut case = CaseRecord::new("cylindrical", vec![index]);
        let engine = count_cyl(&f, &xs);
        let weights: Vec<VerticalWeight> =
            xs.iter().cloned().map(VerticalWeight::Rational).collect();
        let oracle = f
            .to_multigraph_with(&weights)
            .map_err(|e| e.to_string())
            .and_then(|g| oracle_constant(&g, RANDOM_FABRIC_ORACLE_LIMIT));
        case = match (engine, oracle) {
            (Ok(e), Ok(o)) => {
                case.engine_value = Some(e.to_string());
                case.oracle_value = Some(o.to_string());
                if e == o {
                    case
                } else {
                    case.fail("engine and oracle disagree".into())
                }
            }
            (e, o) => case.fail(format!("engine: {e:?}, oracle: {o:?}")),
        };
        cases.push(case);
    }
    for index in 0..220i64 {
        let f = random_rectangular(&mut rng);
        let mut case = CaseRecord::new("rectangular", vec![index]);
        case = match (
            count_rect(&f),
            oracle_constant(&f.to_multigraph(), RANDOM_FABRIC_ORACLE_LIMIT),
        ) {
            (Ok(e), Ok(o)) => {
                case.engine_value = Some(e.to_string());
                case.oracle_value = Some(o.to_string());
                if e == o {
                    case
                } else {
                    case.fail("engine and oracle disagree".into())
                }
            }
            (e, o) => case.fail(format!("engine: {e:?}, oracle: {o:?}")),
        };
        cases.push(case);
    }
    SuiteReport::new("engine", cases)
}

// ---------------------------------------------------------------------
// suite 2: honeycomb cylinders, three routes plus weighted polynomials

pub fn honeycomb_suite() -> SuiteReport {
    let mut cases = Vec::new();
    for m in [2usize, 4, 6] {
        for n in 1..=7usize {
            let mut case = CaseRecord::new("honeycomb", vec![m as i64, n as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let f = honeycomb_cylinder(m, n).map_err(|e| e.to_string())?;
                let ones = vec![Rat::one(); m];
                let engine = count_cyl(&f, &ones).map_err(|e| e.to_string())?;
                if !engine.is_integer() {
                    return Err(format!("engine count {engine} is not an integer"));
                }
                let engine_int = engine.to_integer();
                case.engine_value = Some(engine_int.to_string());
                let formula =
                    honeycomb_formula(m, n, &vec![1.0; m]).map_err(|e| e.to_string())?;
                case.formula_value = Some(formula.float_value);
                if !rounds_to(&formula, &engine_int, 1e-6) {
                    return Err(format!(
                        "formula {} does not round to engine {engine_int}",
                        formula.float_value
                    ));
                }
                if m * n <= 24 {
                    let unit = vec![VerticalWeight::one(); m];
                    let g = f.to_multigraph_with(&unit).map_err(|e| e.to_string())?;
                    let oracle = oracle_constant(&g, 24)?;
                    case.oracle_value = Some(oracle.to_string());
                    if oracle != engine {
                        return Err("oracle disagrees with engine".into());
                    }
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }
    for (m, n) in [(2usize, 2usize), (2, 3), (4, 2), (4, 3)] {
        let mut case = CaseRecord::new("honeycomb-polynomial", vec![m as i64, n as i64]);
        let outcome = (|| -> Result<CaseRecord, String> {
            let f = honeycomb_cylinder(m, n).map_err(|e| e.to_string())?;
            let engine = match_polynomial(&f).map_err(|e| e.to_string())?;
            let oracle = count_matchings(&f.to_multigraph()).map_err(|e| e.to_string())?;
            case.engine_value = Some(engine.to_string());
            case.oracle_value = Some(oracle.to_string());
            if engine != oracle {
                return Err("matching polynomials differ".into());
            }
            Ok(case.clone())
        })();
        cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
    }
    SuiteReport::new("honeycomb", cases)
}

// ---------------------------------------------------------------------
// suite 3: square cylinders, closed forms vs two oracles

fn square_oracle(m: usize, n: usize) -> Result<BigInt, String> {
    let g = square_cylinder_graph(m, n).map_err(|e| e.to_string())?;
    let profile = count_matchings_profile(&g, &ColumnStructure::contiguous(m, n))
        .map_err(|e| e.to_string())?;
    if m * n <= 26 {
        let exhaustive = oracle_constant(&g, 26)?;
        if exhaustive != Rat::from_integer(profile.clone()) {
            return Err(format!(
                "frontier count {profile} disagrees with exhaustive {exhaustive}"
            ));
        }
    }
    Ok(profile)
}

pub fn square_suite() -> SuiteReport {
    let mut cases = Vec::new();
    let pinned: &[(usize, usize, i64)] = &[(2, 4, 29), (3, 4, 19), (4, 4, 121), (3, 3, 0)];
    for m in 2..=6usize {
        for n in 1..=6usize {
            let mut case = CaseRecord::new("square-cylinder", vec![m as i64, n as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let oracle = square_oracle(m, n)?;
                case.oracle_value = Some(oracle.to_string());
                if let Some((_, _, want)) =
                    pinned.iter().find(|(pm, pn, _)| *pm == m && *pn == n)
                {
                    if oracle != BigInt::from(*want) {
                        return Err(format!("pinned value {want} got {oracle}"));
                    }
                }
                let unified = square_unified_formula(m, n).map_err(|e| e.to_string())?;
                case.formula_value = Some(unified.float_value);
                if !rounds_to(&unified, &oracle, 1e-6) {
                    return Err(format!(
                        "unified form {} does not round to {oracle}",
                        unified.float_value
                    ));
                }
                if m % 2 == 0 {
                    let even = square_even_formula(m, n).map_err(|e| e.to_string())?;
                    if !rounds_to(&even, &oracle, 1e-6) {
                        return Err(format!(
                            "even-girth form {} does not round to {oracle}",
                            even.float_value
                        ));
                    }
                }
                if m % 2 == 1 && n % 2 == 0 {
                    let odd = square_odd_formula((m - 1) / 2, n / 2)
                        .map_err(|e| e.to_string())?;
                    if !rounds_to(&odd, &oracle, 1e-6) {
                        return Err(format!(
                            "odd-girth form {} does not round to {oracle}",
                            odd.float_value
                        ));
                    }
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }
    SuiteReport::new("square", cases)
}

// ---------------------------------------------------------------------
// suite 4: plain grids against the double product

pub fn grid_suite() -> SuiteReport {
    let mut cases = Vec::new();
    let mut push_case = |m: usize, n: usize, pin: Option<i64>| {
        let mut case = CaseRecord::new("rect-grid", vec![m as i64, n as i64]);
        let outcome = (|| -> Result<CaseRecord, String> {
            let g = rect_grid(m, n, false).map_err(|e| e.to_string())?;
            let oracle = count_matchings_profile(&g, &ColumnStructure::contiguous(m, n))
                .map_err(|e| e.to_string())?;
            case.oracle_value = Some(oracle.to_string());
            if let Some(want) = pin {
                if oracle != BigInt::from(want) {
                    return Err(format!("pinned value {want} got {oracle}"));
                }
            }
            let formula = tfk(m, n).map_err(|e| e.to_string())?;
            case.formula_value = Some(formula.float_value);
            if !rounds_to(&formula, &oracle, 1e-6) {
                return Err(format!(
                    "product {} does not round to {oracle}",
                    formula.float_value
                ));
            }
            Ok(case.clone())
        })();
        cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
    };
    for m in 1..=6usize {
        for n in 1..=6usize {
            push_case(m, n, None);
        }
    }
    push_case(3, 4, Some(11));
    push_case(4, 4, Some(36));
    push_case(8, 8, Some(12988816));
    SuiteReport::new("grid", cases)
}

// ---------------------------------------------------------------------
// suite 5: cylindric partitions vs matching strata

pub fn partitions_suite() -> SuiteReport {
    let mut cases = Vec::new();
    for m in 1..=3usize {
        for s in 0..=4usize {
            for n in 0..=3usize {
                let mut case =
                    CaseRecord::new("partitions", vec![m as i64, s as i64, n as i64]);
                let outcome = (|| -> Result<CaseRecord, String> {
                    let listed = enumerate_cylindric(m, s, n).map_err(|e| e.to_string())?;
                    let counted = cliff_count(m, n, s).map_err(|e| e.to_string())?;
                    case.engine_value = Some(counted.to_string());
                    case.oracle_value = Some(listed.to_string());
                    case.formula_value = Some(cliff_count_formula(m, n, s));
                    if listed != counted {
                        return Err(format!("enumerated {listed}, coefficient {counted}"));
                    }
                    if (m, s, n) == (1, 1, 1) && listed != BigInt::from(2) {
                        return Err(format!("pinned value 2 got {listed}"));
                    }
                    let float = cliff_count_formula(m, n, s);
                    let target: f64 = counted
                        .to_string()
                        .parse()
                        .map_err(|_| "count does not fit a float".to_string())?;
                    if !close(float, target, 1e-6) {
                        return Err(format!("float product {float} far from {target}"));
                    }
                    Ok(case.clone())
                })();
                cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
            }
        }
    }
    SuiteReport::new("partitions", cases)
}

// ---------------------------------------------------------------------
// suite 6: reflection factorization and the grid chain

fn mirror_cycle_instance() -> SymmetricGraph {
    let edges = (0..8)
        .map(|i| (i, (i + 1) % 8, EdgeWeight::one()))
        .collect();
    let graph = WeightedMultigraph::new(8, edges).expect("cycle edges are in range");
    let side = vec![
        Side::Axis,
        Side::Above,
        Side::Above,
        Side::Above,
        Side::Axis,
        Side::Below,
        Side::Below,
        Side::Below,
    ];
    SymmetricGraph::new(graph, vec![0, 7, 6, 5, 4, 3, 2, 1], vec![0, 4], side)
        .expect("the reflected cycle is a valid symmetric graph")
}

pub fn factorization_suite() -> SuiteReport {
    let mut cases = Vec::new();
    for m in [3usize, 5] {
        for n in [2usize, 4] {
            let mut case = CaseRecord::new("reduced-cuts", vec![m as i64, n as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let sg = symmetric_cylinder(m, n).map_err(|e| e.to_string())?;
                let counts = reduced_subgraph_counts(&sg).map_err(|e| e.to_string())?;
                case.oracle_value = Some(
                    counts
                        .first()
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "none".into()),
                );
                if counts.len() != 1 << sg.width() {
                    return Err("wrong number of cut plans".into());
                }
                if !counts.windows(2).all(|w| w[0] == w[1]) {
                    return Err(format!("cut counts differ: {counts:?}"));
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));

            let mut case = CaseRecord::new("factorization", vec![m as i64, n as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let sg = symmetric_cylinder(m, n).map_err(|e| e.to_string())?;
                let report = verify_factorization(&sg).map_err(|e| e.to_string())?;
                case.engine_value = Some(report.g_prime_count.to_string());
                case.oracle_value = Some(report.matching_count.to_string());
                if !report.holds {
                    return Err(format!(
                        "{} != 2^{} * {}",
                        report.matching_count, report.width, report.g_prime_count
                    ));
                }
                let plan = g_prime_cut_plan(&sg).map_err(|e| e.to_string())?;
                let mirrored: Vec<Cut> = plan.iter().map(|c| c.flipped()).collect();
                for p in [plan, mirrored] {
                    if !doubly_reduced_subgraph(&sg, &p)
                        .map_err(|e| e.to_string())?
                        .is_bipartite()
                    {
                        return Err(format!("coherent plan {p:?} left an odd cycle"));
                    }
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }

    let mut case = CaseRecord::new("factorization", vec![8, 0]);
    let outcome = (|| -> Result<CaseRecord, String> {
        let sg = mirror_cycle_instance();
        if !axis_hypotheses_hold(&sg) {
            return Err("cycle instance should satisfy the axis hypotheses".into());
        }
        if !doubly_reduced_all_bipartite(&sg) {
            return Err("a doubly reduced subgraph of the cycle is not bipartite".into());
        }
        let report = verify_factorization(&sg).map_err(|e| e.to_string())?;
        case.engine_value = Some(report.g_prime_count.to_string());
        case.oracle_value = Some(report.matching_count.to_string());
        if !report.holds
            || report.matching_count != rat(2)
            || report.width != 1
            || report.g_prime_count != Rat::one()
        {
            return Err(format!("unexpected report {report:?}"));
        }
        Ok(case.clone())
    })();
    cases.push(outcome.unwrap_or_else(|e| case.fail(e)));

    let mut case = CaseRecord::new("half-grid", vec![3, 4]);
    let outcome = (|| -> Result<CaseRecord, String> {
        let sg = symmetric_cylinder(3, 4).map_err(|e| e.to_string())?;
        let gp = build_g_prime(&sg).map_err(|e| e.to_string())?;
        let count = oracle_constant(&gp, 26)?;
        case.oracle_value = Some(count.to_string());
        let grid = rect_grid(3, 4, true).map_err(|e| e.to_string())?;
        let grid_count = oracle_constant(&grid, 26)?;
        case.engine_value = Some(grid_count.to_string());
        let want = Rat::new(BigInt::from(19), BigInt::from(4));
        if count != want || grid_count != want {
            return Err(format!("expected 19/4, got {count} and {grid_count}"));
        }
        Ok(case.clone())
    })();
    cases.push(outcome.unwrap_or_else(|e| case.fail(e)));

    for (m, n) in [(1usize, 1usize), (1, 2), (2, 1)] {
        let mut case = CaseRecord::new("grid-chain", vec![m as i64, n as i64]);
        let outcome = (|| -> Result<CaseRecord, String> {
            let report = grid_chain_check(m, n).map_err(|e| e.to_string())?;
            case.engine_value = Some(report.cylinder_count.to_string());
            case.oracle_value = Some(format!(
                "{}/{}",
                report.big_grid_count, report.small_grid_count
            ));
            if !report.all_hold() {
                return Err(format!("chain identities failed: {report:?}"));
            }
            Ok(case.clone())
        })();
        cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
    }
    SuiteReport::new("factorization", cases)
}

// ---------------------------------------------------------------------
// suite 7: permanent and determinant identities

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(
        BigInt::from(rng.gen_range(-3i64..=3)),
        BigInt::from(rng.gen_range(1i64..=2)),
    )
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

pub fn permanents_suite() -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0x9e37);
    let mut cases = Vec::new();

    // weighted matching count of a balanced bipartite graph equals the
    // permanent of its bi-adjacency matrix
    for index in 0..30i64 {
        let k = rng.gen_range(1..=6usize);
        let mut m = ExactMatrix::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                *m.entry_mut(r, c) = rat(rng.gen_range(0..=2));
            }
        }
        let mut case = CaseRecord::new("permanent-vs-oracle", vec![index, k as i64]);
        let outcome = (|| -> Result<CaseRecord, String> {
            let per = m.permanent().map_err(|e| e.to_string())?;
            case.engine_value = Some(per.to_string());
            let g = WeightedMultigraph::from_bi_adjacency(&m);
            let oracle = oracle_constant(&g, 26)?;
            case.oracle_value = Some(oracle.to_string());
            if per != oracle {
                return Err("permanent disagrees with matching count".into());
            }
            Ok(case.clone())
        })();
        cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
    }

    // on staircase-support strands every square submatrix has permanent
    // equal to determinant
    for index in 0..20i64 {
        let bottom = rng.gen_range(1..=5usize);
        let top = rng.gen_range(1..=5usize);
        let strand = random_strand(&mut rng, bottom, top);
        let a = strand.bi_adjacency();
        let mut case = CaseRecord::new(
            "permanent-vs-determinant",
            vec![index, bottom as i64, top as i64],
        );
        let outcome = (|| -> Result<CaseRecord, String> {
            let mut checked = 0i64;
            for k in 1..=bottom.min(top) {
                for rows in subsets_of_size(bottom, k) {
                    for cols in subsets_of_size(top, k) {
                        let b = a.submatrix(&rows, &cols);
                        let per = b.permanent().map_err(|e| e.to_string())?;
                        let det = b.det_exact().map_err(|e| e.to_string())?;
                        if per != det {
                            return Err(format!(
                                "rows {rows:?} cols {cols:?}: per {per} det {det}"
                            ));
                        }
                        checked += 1;
                    }
                }
            }
            case.detail = format!("{checked} submatrices");
            Ok(case.clone())
        })();
        cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
    }

    // the shifted determinant expands into principal minor sums
    for index in 0..50i64 {
        let n = rng.gen_range(1..=5usize);
        let mut m = ExactMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                *m.entry_mut(r, c) = random_rat(&mut rng);
            }
        }
        let case = CaseRecord::new("minor-expansion", vec![index, n as i64]);
        let outcome = (|| -> Result<CaseRecord, String> {
            let expansion = m.principal_minor_sum().map_err(|e| e.to_string())?;
            for x in [-2i64, -1, 0, 1, 2] {
                let at = rat(x);
                let direct = m
                    .shifted_identity(&at)
                    .and_then(|s| s.det_exact())
                    .map_err(|e| e.to_string())?;
                if expansion.eval(&at) != direct {
                    return Err(format!("mismatch at x = {x}"));
                }
            }
            Ok(case.clone())
        })();
        cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
    }
    SuiteReport::new("permanents", cases)
}

// ---------------------------------------------------------------------
// suite 8: spectra of the three tridiagonal families

fn float_poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![1.0f64];
    for &r in roots {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i] -= r * c;
            next[i + 1] += c;
        }
        coeffs = next;
    }
    coeffs
}

fn eigen_case(family: &str, n: usize, matrix: ExactMatrix, spectrum: Vec<f64>) -> CaseRecord {
    let mut case = CaseRecord::new(family, vec![n as i64]);
    let outcome = (|| -> Result<CaseRecord, String> {
        if spectrum.len() != n {
            return Err(format!("expected {n} eigenvalues, got {}", spectrum.len()));
        }
        let charpoly = matrix.charpoly().map_err(|e| e.to_string())?;
        case.engine_value = Some(charpoly.to_string());
        let mut worst = 0.0f64;
        for &lambda in &spectrum {
            let value = charpoly.eval_f64(lambda);
            let scale = 1.0 + lambda.abs().powi(n as i32);
            worst = worst.max(value.abs() / scale);
            if value.abs() >= 1e-6 * scale {
                return Err(format!("charpoly at {lambda} is {value}, scale {scale}"));
            }
        }
        case.formula_value = Some(worst);
        let expanded = float_poly_from_roots(&spectrum);
        let exact: Vec<f64> = (0..=n)
            .map(|k| {
                let c = charpoly.coeff(k);
                c.to_string().parse::<f64>().unwrap_or(f64::NAN)
            })
            .collect();
        let magnitude = exact.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
        for k in 0..=n {
            if (expanded[k] - exact[k]).abs() >= 1e-6 * magnitude {
                return Err(format!(
                    "coefficient {k}: expanded {} vs exact {}",
                    expanded[k], exact[k]
                ));
            }
        }
        Ok(case.clone())
    })();
    outcome.unwrap_or_else(|e| case.fail(e))
}

/// Names of the spectral families checked by the eigen suite.
pub const EIGEN_FAMILIES: [&str; 3] = ["path", "wilted-path", "strand-gram"];

/// One spectral case by family name; None for an unknown family.
pub fn eigen_family_case(family: &str, n: usize) -> Option<CaseRecord> {
    match family {
        "path" => Some(eigen_case("path", n, path_adjacency(n), path_eigenvalues(n))),
        "wilted-path" => Some(eigen_case(
            "wilted-path",
            n,
            wilted_path_matrix(n),
            wilted_path_eigenvalues(n),
        )),
        "strand-gram" => {
            let a = square_fabric_strand(n).bi_adjacency();
            let gram = a.mul(&a.transpose()).expect("gram product is square");
            Some(eigen_case("strand-gram", n, gram, strand_gram_eigenvalues(n)))
        }
        _ => None,
    }
}

pub fn eigen_suite() -> SuiteReport {
    let mut cases = Vec::new();
    for n in 1..=12usize {
        for family in EIGEN_FAMILIES {
            cases.push(eigen_family_case(family, n).expect("listed families all exist"));
        }
    }
    SuiteReport::new("eigen", cases)
}

// ---------------------------------------------------------------------
// suite 9: analytic identities behind the closed forms

pub fn identities_suite() -> SuiteReport {
    let mut cases = Vec::new();

    // half-spectrum product vs square root of the full product, at unit
    // weights where the odd-length middle factor is inert
    for m in [2usize, 4, 6, 8] {
        for n in 1..=15usize {
            let mut case = CaseRecord::new("sqrt-form", vec![m as i64, n as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let ones = vec![1.0; m];
                let a = honeycomb_formula(m, n, &ones).map_err(|e| e.to_string())?;
                let b =
                    honeycomb_formula_sqrt_form(m, n, &ones).map_err(|e| e.to_string())?;
                case.formula_value = Some(a.float_value);
                if !close(a.float_value, b.float_value, 1e-9) {
                    return Err(format!("{} vs {}", a.float_value, b.float_value));
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }

    // Chebyshev first kind against its surd closed form on [1, 2]
    for n in 0..=12usize {
        let mut case = CaseRecord::new("chebyshev-t", vec![n as i64]);
        let poly = chebyshev_t(n);
        let mut worst = 0.0f64;
        let mut ok = true;
        for step in 0..=10 {
            let x = 1.0 + 0.1 * step as f64;
            let direct = poly.eval_f64(x);
            let s = (x * x - 1.0).sqrt();
            let closed = 0.5 * ((x + s).powi(n as i32) + (x - s).powi(n as i32));
            let gap = (direct - closed).abs() / direct.abs().max(1.0);
            worst = worst.max(gap);
            if gap >= 1e-9 {
                ok = false;
                case = case.fail(format!("at x = {x}: {direct} vs {closed}"));
                break;
            }
        }
        if ok {
            case.formula_value = Some(worst);
        }
        cases.push(case);
    }

    // Chebyshev second kind against the sine quotient on (0, pi)
    for n in 0..=12usize {
        let mut case = CaseRecord::new("chebyshev-u", vec![n as i64]);
        let poly = chebyshev_u(n);
        let mut worst = 0.0f64;
        let mut ok = true;
        for k in 1..24 {
            let theta = k as f64 * std::f64::consts::PI / 24.0;
            let lhs = poly.eval_f64(theta.cos()) * theta.sin();
            let rhs = ((n + 1) as f64 * theta).sin();
            let gap = (lhs - rhs).abs();
            worst = worst.max(gap);
            if gap >= 1e-9 {
                ok = false;
                case = case.fail(format!("at theta = {theta}: {lhs} vs {rhs}"));
                break;
            }
        }
        if ok {
            case.formula_value = Some(worst);
        }
        cases.push(case);
    }

    // telescoping cosine product
    for n in 1..=20usize {
        let mut case = CaseRecord::new("cosine-product", vec![n as i64]);
        let p = cosine_double_product(n);
        case.formula_value = Some(p);
        if (p - 1.0).abs() >= 1e-9 {
            case = case.fail(format!("product is {p}"));
        }
        cases.push(case);
    }

    // both sides of the odd cosine-square product identity
    let z_grid = [0.0, 0.3, (std::f64::consts::PI / 5.0).cos(), 1.0, 1.7];
    for m in 0..=6usize {
        for (zi, &z) in z_grid.iter().enumerate() {
            let mut case = CaseRecord::new("surd-product", vec![m as i64, zi as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let (left, right) =
                    cosine_square_product_sides(z, m).map_err(|e| e.to_string())?;
                case.formula_value = Some(left);
                if !close(left, right, 1e-9) {
                    return Err(format!("left {left} right {right}"));
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }

    // odd-girth closed forms vs the frontier oracle
    for m in 1..=2usize {
        for n in 1..=3usize {
            let girth = 2 * m + 1;
            let length = 2 * n;
            let mut case =
                CaseRecord::new("odd-girth", vec![girth as i64, length as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let oracle = square_oracle(girth, length)?;
                case.oracle_value = Some(oracle.to_string());
                let odd = square_odd_formula(m, n).map_err(|e| e.to_string())?;
                let unified =
                    square_unified_formula(girth, length).map_err(|e| e.to_string())?;
                case.formula_value = Some(odd.float_value);
                if !rounds_to(&odd, &oracle, 1e-6) || !rounds_to(&unified, &oracle, 1e-6) {
                    return Err(format!(
                        "forms {} / {} vs oracle {oracle}",
                        odd.float_value, unified.float_value
                    ));
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }

    // corrected grid ratio
    for m in 1..=2usize {
        for n in 1..=3usize {
            let mut case = CaseRecord::new("grid-ratio", vec![m as i64, n as i64]);
            let outcome = (|| -> Result<CaseRecord, String> {
                let lhs = square_odd_formula(m, n).map_err(|e| e.to_string())?.float_value
                    * tfk(2 * m, 2 * n).map_err(|e| e.to_string())?.float_value;
                let rhs = tfk(4 * m + 1, 2 * n).map_err(|e| e.to_string())?.float_value;
                case.formula_value = Some(lhs);
                if !close(lhs, rhs, 1e-6) {
                    return Err(format!("{lhs} vs {rhs}"));
                }
                Ok(case.clone())
            })();
            cases.push(outcome.unwrap_or_else(|e| case.fail(e)));
        }
    }
    SuiteReport::new("identities", cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_clean(report: &SuiteReport, expected_cases: usize) {
        let failures: Vec<String> = report
            .failing_cases()
            .map(|c| format!("{}{:?}: {}", c.family, c.parameters, c.detail))
            .collect();
        assert!(failures.is_empty(), "{}: {:#?}", report.suite, failures);
        assert_eq!(report.cases.len(), expected_cases, "{}", report.suite);
    }

    #[test]
    fn engine_suite_is_clean() {
        assert_clean(&engine_suite(), 440);
    }

    #[test]
    fn honeycomb_suite_is_clean() {
        assert_clean(&honeycomb_suite(), 25);
    }

    #[test]
    fn square_suite_is_clean() {
        assert_clean(&square_suite(), 30);
    }

    #[test]
    fn grid_suite_is_clean() {
        assert_clean(&grid_suite(), 39);
    }

    #[test]
    fn partitions_suite_is_clean() {
        assert_clean(&partitions_suite(), 60);
    }

    #[test]
    fn factorization_suite_is_clean() {
        assert_clean(&factorization_suite(), 13);
    }

    #[test]
    fn permanents_suite_is_clean() {
        assert_clean(&permanents_suite(), 100);
    }

    #[test]
    fn eigen_suite_is_clean() {
        assert_clean(&eigen_suite(), 36);
    }

    #[test]
    fn identities_suite_is_clean() {
        let report = identities_suite();
        assert_clean(&report, 60 + 13 + 13 + 20 + 35 + 6 + 6);
    }

    #[test]
    fn suites_are_deterministic() {
        let a = engine_suite();
        let b = engine_suite();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_names_round_trip() {
        for name in SUITE_NAMES {
            assert!(run_suite(name).is_some(), "{name}");
        }
        assert!(run_suite("nonsense").is_none());
    }
}
