//! Reflection-based factorization of matching counts.
//!
//! A symmetric multigraph can be cut open along its reflection axis:
//! deleting, at chosen axis vertices, every edge leaving to one side.
//! All such reduced subgraphs share one matching count, and the fully
//! determined cut pattern with halved axis weights factors the original
//! count as a power of two times the cut graph's count. Everything here
//! is verified instance by instance with the exhaustive oracle; nothing
//! is taken on faith from the construction.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exact::Rat;
use crate::graph::{
    rect_grid, square_cylinder_graph, GraphError, Side, SymmetricGraph, WeightedMultigraph,
};
use crate::oracle::{count_matchings, count_matchings_profile, ColumnStructure, OracleError};

/// One cut choice at an axis vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    Above,
    Below,
}

impl Cut {
    pub fn flipped(self) -> Cut {
        match self {
            Cut::Above => Cut::Below,
            Cut::Below => Cut::Above,
        }
    }
}

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("cut plan covers {got} vertices, expected {expected}")]
    PlanLengthMismatch { expected: usize, got: usize },
    #[error("the on-or-above subgraph is not two-colorable")]
    NotTwoColorable,
    #[error("matching count came out non-constant; graph carries formal weights")]
    FormalWeight,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Exact matching count of a concrete-weight multigraph.
fn exact_count(g: &WeightedMultigraph) -> Result<Rat, FactorError> {
    count_matchings(g)?
        .as_constant()
        .ok_or(FactorError::FormalWeight)
}

/// Deletes, for each listed axis vertex, all its edges toward the chosen
/// side. Edges running along the axis survive every cut.
fn apply_cuts(sg: &SymmetricGraph, cuts: &[(usize, Cut)]) -> WeightedMultigraph {
    let g = sg.graph();
    let n = g.vertex_count();
    let mut cut_at: Vec<Option<Cut>> = vec![None; n];
    for &(v, c) in cuts {
        cut_at[v] = Some(c);
    }
    let severed = |at: usize, other: usize| -> bool {
        match cut_at[at] {
            Some(Cut::Above) => sg.side(other) == Side::Above,
            Some(Cut::Below) => sg.side(other) == Side::Below,
            None => false,
        }
    };
    let kept = g
        .edges()
        .iter()
        .filter(|(u, v, _)| !severed(*u, *v) && !severed(*v, *u))
        .cloned()
        .collect();
    WeightedMultigraph::new(n, kept).expect("cutting preserves vertex range")
}

/// The reduced subgraph for one cut plan over the a-role axis vertices.
pub fn reduced_subgraph(
    sg: &SymmetricGraph,
    plan: &[Cut],
) -> Result<WeightedMultigraph, FactorError> {
    let a = sg.a_vertices();
    if plan.len() != a.len() {
        return Err(FactorError::PlanLengthMismatch {
            expected: a.len(),
            got: plan.len(),
        });
    }
    Ok(apply_cuts(
        sg,
        &a.into_iter().zip(plan.iter().copied()).collect::<Vec<_>>(),
    ))
}

/// The doubly reduced subgraph for one cut plan over every axis vertex,
/// in axis order.
pub fn doubly_reduced_subgraph(
    sg: &SymmetricGraph,
    plan: &[Cut],
) -> Result<WeightedMultigraph, FactorError> {
    let axis = sg.axis_vertices();
    if plan.len() != axis.len() {
        return Err(FactorError::PlanLengthMismatch {
            expected: axis.len(),
            got: plan.len(),
        });
    }
    Ok(apply_cuts(
        sg,
        &axis
            .iter()
            .copied()
            .zip(plan.iter().copied())
            .collect::<Vec<_>>(),
    ))
}

fn plan_from_mask(mask: usize, len: usize) -> Vec<Cut> {
    (0..len)
        .map(|i| {
            if mask >> i & 1 == 0 {
                Cut::Above
            } else {
                Cut::Below
            }
        })
        .collect()
}

/// Matching counts of all 2^w reduced subgraphs, in binary plan order
/// (bit i chooses the cut at the i-th a-vertex, 0 above, 1 below).
/// Every cut choice must yield the same count; callers check that.
pub fn reduced_subgraph_counts(sg: &SymmetricGraph) -> Result<Vec<Rat>, FactorError> {
    let w = sg.width();
    (0..1usize << w)
        .map(|mask| exact_count(&reduced_subgraph(sg, &plan_from_mask(mask, w))?))
        .collect()
}

/// Checks that every one of the 2^(2w) doubly reduced subgraphs is
/// two-colorable. This is guaranteed when [`axis_hypotheses_hold`]; with
/// edges running along the axis an odd cycle can travel through the axis
/// between two mixed cuts and survive, so only the coherent plans (the
/// determined plan and its mirror) are guaranteed two-colorable then.
pub fn doubly_reduced_all_bipartite(sg: &SymmetricGraph) -> bool {
    let k = sg.axis_vertices().len();
    (0..1usize << k).all(|mask| {
        doubly_reduced_subgraph(sg, &plan_from_mask(mask, k))
            .expect("plan length matches axis")
            .is_bipartite()
    })
}

/// True when the axis vertices form an independent set and each has
/// exactly one edge to each side. Under these hypotheses every cut plan
/// interrupts every odd cycle, so all doubly reduced subgraphs are
/// bipartite; without them only the coherent plans are covered.
pub fn axis_hypotheses_hold(sg: &SymmetricGraph) -> bool {
    let g = sg.graph();
    let n = g.vertex_count();
    let on_axis: Vec<bool> = (0..n).map(|v| sg.side(v) == Side::Axis).collect();
    let mut above = vec![0usize; n];
    let mut below = vec![0usize; n];
    for (u, v, _) in g.edges() {
        if on_axis[*u] && on_axis[*v] {
            return false;
        }
        for (at, other) in [(*u, *v), (*v, *u)] {
            if on_axis[at] {
                match sg.side(other) {
                    Side::Above => above[at] += 1,
                    Side::Below => below[at] += 1,
                    Side::Axis => unreachable!("axis pairs rejected above"),
                }
            }
        }
    }
    sg.axis_vertices()
        .iter()
        .all(|&v| above[v] == 1 && below[v] == 1)
}

/// Two-colors the subgraph induced by the on-or-above vertices, first
/// axis vertex white (true), remaining components rooted white in vertex
/// order. Zero-weight edges constrain colors like any others.
fn color_on_or_above(sg: &SymmetricGraph) -> Result<Vec<Option<bool>>, FactorError> {
    let g = sg.graph();
    let n = g.vertex_count();
    let include: Vec<bool> = (0..n).map(|v| sg.side(v) != Side::Below).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v, _) in g.edges() {
        if include[*u] && include[*v] {
            adj[*u].push(*v);
            adj[*v].push(*u);
        }
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    let first_axis = sg.axis_vertices().first().copied();
    for start in first_axis.into_iter().chain(0..n) {
        if !include[start] || color[start].is_some() {
            continue;
        }
        color[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return Err(FactorError::NotTwoColorable),
                    _ => {}
                }
            }
        }
    }
    Ok(color)
}

/// The fully determined cut plan, one entry per axis vertex in axis
/// order: white a-vertices and black b-vertices are cut above, the rest
/// below.
pub fn g_prime_cut_plan(sg: &SymmetricGraph) -> Result<Vec<Cut>, FactorError> {
    let color = color_on_or_above(sg)?;
    let mut plan = Vec::with_capacity(sg.axis_vertices().len());
    for (pos, &v) in sg.axis_vertices().iter().enumerate() {
        let white = color[v].ok_or(FactorError::NotTwoColorable)?;
        let a_role = pos % 2 == 0;
        plan.push(if white == a_role { Cut::Above } else { Cut::Below });
    }
    Ok(plan)
}

/// The halving construction: apply the determined cut plan at every axis
/// vertex, then halve the weight of each surviving edge that runs along
/// the axis.
pub fn build_g_prime(sg: &SymmetricGraph) -> Result<WeightedMultigraph, FactorError> {
    let plan = g_prime_cut_plan(sg)?;
    let cut = doubly_reduced_subgraph(sg, &plan)?;
    let on_axis: Vec<bool> = (0..cut.vertex_count())
        .map(|v| sg.side(v) == Side::Axis)
        .collect();
    let mut edges = Vec::with_capacity(cut.edges().len());
    for (u, v, w) in cut.edges() {
        let w = if on_axis[*u] && on_axis[*v] {
            w.halved().ok_or(FactorError::FormalWeight)?
        } else {
            w.clone()
        };
        edges.push((*u, *v, w));
    }
    Ok(WeightedMultigraph::new(cut.vertex_count(), edges)?)
}

/// Both sides of the factorization identity on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport {
    pub matching_count: Rat,
    pub width: usize,
    pub g_prime_count: Rat,
    pub holds: bool,
}

/// Counts the graph and its halved cut graph exactly and compares
/// count(G) with 2^width * count(G').
pub fn verify_factorization(sg: &SymmetricGraph) -> Result<FactorizationReport, FactorError> {
    let matching_count = exact_count(sg.graph())?;
    let g_prime_count = exact_count(&build_g_prime(sg)?)?;
    let width = sg.width();
    let scale = Rat::from_integer(BigInt::one() << width);
    Ok(FactorizationReport {
        holds: matching_count == scale * &g_prime_count,
        matching_count,
        width,
        g_prime_count,
    })
}

/// The three grid identities tying the odd cylinder to plain grids.
#[derive(Debug, Clone, PartialEq)]
pub struct GridChainReport {
    pub m: usize,
    pub n: usize,
    pub cylinder_count: Rat,
    pub halved_grid_count: Rat,
    pub small_grid_count: Rat,
    pub big_grid_count: Rat,
    /// cylinder = 2^n * halved grid
    pub doubling_holds: bool,
    /// big grid = 2^n * small grid * halved grid
    pub splitting_holds: bool,
    /// cylinder = big grid / small grid
    pub ratio_holds: bool,
}

impl GridChainReport {
    pub fn all_hold(&self) -> bool {
        self.doubling_holds && self.splitting_holds && self.ratio_holds
    }
}

/// Counts a plain grid with the frontier dynamic program.
fn grid_count(rows: usize, cols: usize) -> Result<Rat, FactorError> {
    let g = rect_grid(rows, cols, false)?;
    let count = count_matchings_profile(&g, &ColumnStructure::contiguous(rows, cols))?;
    Ok(Rat::from_integer(count))
}

/// Verifies, for the cylinder of girth 2m+1 and length 2n: the doubling
/// identity against the top-halved grid, the splitting identity for the
/// (4m+1)-row grid, and their corrected quotient form. All counts are
/// exact; the quotient uses the 2m-row grid at the denominator.
pub fn grid_chain_check(m: usize, n: usize) -> Result<GridChainReport, FactorError> {
    let cylinder = square_cylinder_graph(2 * m + 1, 2 * n)?;
    let cylinder_count = exact_count(&cylinder)?;
    let halved = rect_grid(2 * m + 1, 2 * n, true)?;
    let halved_grid_count = exact_count(&halved)?;
    let small_grid_count = grid_count(2 * m, 2 * n)?;
    let big_grid_count = grid_count(4 * m + 1, 2 * n)?;
    let scale = Rat::from_integer(BigInt::one() << n);
    Ok(GridChainReport {
        m,
        n,
        doubling_holds: cylinder_count == scale.clone() * &halved_grid_count,
        splitting_holds: big_grid_count
            == scale * &small_grid_count * &halved_grid_count,
        ratio_holds: cylinder_count.clone() * &small_grid_count == big_grid_count,
        cylinder_count,
        halved_grid_count,
        small_grid_count,
        big_grid_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{symmetric_cylinder, EdgeWeight};

    fn ratio(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn even_cycle_through_two_axis_vertices() -> SymmetricGraph {
        let edges = (0..8)
            .map(|i| (i, (i + 1) % 8, EdgeWeight::one()))
            .collect();
        let graph = WeightedMultigraph::new(8, edges).unwrap();
        let involution = vec![0, 7, 6, 5, 4, 3, 2, 1];
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
        SymmetricGraph::new(graph, involution, vec![0, 4], side).unwrap()
    }

    #[test]
    fn reduced_counts_agree_on_cylinders() {
        for (m, n) in [(3usize, 2usize), (3, 4), (5, 2), (5, 4)] {
            let sg = symmetric_cylinder(m, n).unwrap();
            let counts = reduced_subgraph_counts(&sg).unwrap();
            assert_eq!(counts.len(), 1 << sg.width());
            assert!(
                counts.windows(2).all(|w| w[0] == w[1]),
                "C({m},{n}): {counts:?}"
            );
        }
    }

    #[test]
    fn reduced_counts_agree_on_the_cycle() {
        let sg = even_cycle_through_two_axis_vertices();
        let counts = reduced_subgraph_counts(&sg).unwrap();
        assert_eq!(counts, vec![Rat::one(), Rat::one()]);
    }

    #[test]
    fn empty_plan_is_identity() {
        // a 4-cycle reflected across a line missing every vertex
        let edges = vec![
            (0, 1, EdgeWeight::one()),
            (1, 2, EdgeWeight::one()),
            (2, 3, EdgeWeight::one()),
            (3, 0, EdgeWeight::one()),
        ];
        let graph = WeightedMultigraph::new(4, edges).unwrap();
        let side = vec![Side::Above, Side::Above, Side::Below, Side::Below];
        let sg = SymmetricGraph::new(graph, vec![3, 2, 1, 0], vec![], side).unwrap();
        assert_eq!(sg.width(), 0);
        let counts = reduced_subgraph_counts(&sg).unwrap();
        assert_eq!(counts, vec![ratio(2, 1)]);
        let report = verify_factorization(&sg).unwrap();
        assert!(report.holds);
        assert_eq!(report.matching_count, ratio(2, 1));
        assert_eq!(report.g_prime_count, ratio(2, 1));
    }

    #[test]
    fn plan_length_is_checked() {
        let sg = symmetric_cylinder(3, 4).unwrap();
        assert!(matches!(
            reduced_subgraph(&sg, &[Cut::Above]),
            Err(FactorError::PlanLengthMismatch {
                expected: 2,
                got: 1
            })
        ));
        assert!(matches!(
            doubly_reduced_subgraph(&sg, &[Cut::Above; 3]),
            Err(FactorError::PlanLengthMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn halved_cut_graph_counts() {
        let sg = symmetric_cylinder(3, 4).unwrap();
        let gp = build_g_prime(&sg).unwrap();
        assert_eq!(exact_count(&gp).unwrap(), ratio(19, 4));
        // same count as the directly built top-halved grid
        let grid = rect_grid(3, 4, true).unwrap();
        assert_eq!(exact_count(&grid).unwrap(), ratio(19, 4));
    }

    #[test]
    fn factorization_reports() {
        let r = verify_factorization(&symmetric_cylinder(3, 4).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.matching_count, ratio(19, 1));
        assert_eq!(r.width, 2);
        assert_eq!(r.g_prime_count, ratio(19, 4));

        let r = verify_factorization(&symmetric_cylinder(3, 2).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.matching_count, ratio(4, 1));
        assert_eq!(r.width, 1);

        let r = verify_factorization(&even_cycle_through_two_axis_vertices()).unwrap();
        assert!(r.holds);
        assert_eq!(r.matching_count, ratio(2, 1));
        assert_eq!(r.width, 1);
        assert_eq!(r.g_prime_count, ratio(1, 1));
    }

    #[test]
    fn doubly_reduced_bipartite_under_axis_hypotheses() {
        let cycle = even_cycle_through_two_axis_vertices();
        assert!(axis_hypotheses_hold(&cycle));
        assert!(doubly_reduced_all_bipartite(&cycle));
    }

    #[test]
    fn mixed_cuts_can_leave_odd_cycles_when_axis_has_edges() {
        // the cylinder's axis vertices are chained by rung edges, so an
        // odd cycle can slip through the axis between two opposite cuts;
        // the blanket bipartiteness claim needs the independence
        // hypothesis, and the coherent plans stay two-colorable
        let sg = symmetric_cylinder(3, 2).unwrap();
        assert!(!axis_hypotheses_hold(&sg));
        assert!(!doubly_reduced_all_bipartite(&sg));
        let mixed = doubly_reduced_subgraph(&sg, &[Cut::Below, Cut::Above]).unwrap();
        assert!(!mixed.is_bipartite());
        for (m, n) in [(3usize, 2usize), (3, 4), (5, 2)] {
            let sg = symmetric_cylinder(m, n).unwrap();
            let plan = g_prime_cut_plan(&sg).unwrap();
            let mirrored: Vec<Cut> = plan.iter().map(|c| c.flipped()).collect();
            for p in [plan, mirrored] {
                assert!(
                    doubly_reduced_subgraph(&sg, &p).unwrap().is_bipartite(),
                    "C({m},{n}) plan {p:?}"
                );
            }
        }
    }

    #[test]
    fn determined_plan_and_its_mirror_agree() {
        for (m, n) in [(3usize, 2usize), (3, 4), (5, 2)] {
            let sg = symmetric_cylinder(m, n).unwrap();
            let plan = g_prime_cut_plan(&sg).unwrap();
            let mirrored: Vec<Cut> = plan.iter().map(|c| c.flipped()).collect();
            let a = exact_count(&doubly_reduced_subgraph(&sg, &plan).unwrap()).unwrap();
            let b = exact_count(&doubly_reduced_subgraph(&sg, &mirrored).unwrap()).unwrap();
            assert_eq!(a, b, "C({m},{n})");
        }
    }

    #[test]
    fn non_two_colorable_is_reported() {
        let edges = vec![
            (0, 1, EdgeWeight::one()),
            (1, 2, EdgeWeight::one()),
            (2, 0, EdgeWeight::one()),
            (0, 4, EdgeWeight::one()),
            (4, 5, EdgeWeight::one()),
            (5, 0, EdgeWeight::one()),
            (3, 1, EdgeWeight::one()),
            (3, 4, EdgeWeight::one()),
        ];
        let graph = WeightedMultigraph::new(6, edges).unwrap();
        let involution = vec![0, 4, 5, 3, 1, 2];
        let side = vec![
            Side::Axis,
            Side::Above,
            Side::Above,
            Side::Axis,
            Side::Below,
            Side::Below,
        ];
        let sg = SymmetricGraph::new(graph, involution, vec![0, 3], side).unwrap();
        assert!(matches!(
            build_g_prime(&sg),
            Err(FactorError::NotTwoColorable)
        ));
    }

    #[test]
    fn grid_chain_small_instances() {
        let r = grid_chain_check(1, 2).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.cylinder_count, ratio(19, 1));
        assert_eq!(r.halved_grid_count, ratio(19, 4));
        assert_eq!(r.small_grid_count, ratio(5, 1));
        assert_eq!(r.big_grid_count, ratio(95, 1));

        let r = grid_chain_check(1, 1).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.cylinder_count, ratio(4, 1));

        let r = grid_chain_check(2, 1).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.cylinder_count, ratio(11, 1));
    }
}

