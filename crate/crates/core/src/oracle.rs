//! Ground-truth matching counters.
//!
//! Two independent oracles live here: an exhaustive branch-and-prune
//! recursion over vertex bitmasks, and a column-profile dynamic program
//! for grid-shaped graphs. Neither shares any code with the determinant
//! engine, so agreement between the three is meaningful evidence.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{Rat, RatPoly};
use crate::graph::WeightedMultigraph;

/// Default vertex cap for the exhaustive counter.
pub const EXHAUSTIVE_LIMIT: usize = 26;
/// Hard cap imposed by the 128-bit vertex masks.
pub const MASK_LIMIT: usize = 128;
/// Widest column the profile counter accepts.
pub const COLUMN_LIMIT: usize = 20;

/// Weighted matching count. Degree 0 when all weights are numeric; the
/// coefficient of x^k is the total weight of matchings using exactly k
/// edges whose weight is a multiple of x^1 (and so on for higher powers).
pub type MatchPolynomial = RatPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, over the exhaustive limit {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("edge {edge:?} carries a polynomial weight that is not a monomial")]
    NonMonomialWeight { edge: (usize, usize) },
    #[error("no usable column structure: {0}")]
    NoColumnStructure(String),
    #[error("column {column} has {width} vertices, over the limit {limit}")]
    ColumnTooWide {
        column: usize,
        width: usize,
        limit: usize,
    },
    #[error("edge {edge:?} is not unit weight; the profile counter needs unit weights")]
    NonUnitWeight { edge: (usize, usize) },
}

/// Exhaustively counts weighted perfect matchings. Graphs with an odd
/// number of vertices have none, so the count is 0 rather than an error.
pub fn count_matchings(g: &WeightedMultigraph) -> Result<MatchPolynomial, OracleError> {
    count_matchings_with_limit(g, EXHAUSTIVE_LIMIT)
}

struct Search {
    adj: Vec<Vec<(usize, Rat, usize)>>,
    neighbor_mask: Vec<u128>,
}

impl Search {
    /// Sum of weight products over matchings of the `free` vertex set.
    fn run(&self, free: u128, coeff: &Rat, pow: usize, total: &mut RatPoly) {
        if free == 0 {
            total.add_monomial(coeff, pow);
            return;
        }
        // a vertex with no free neighbor can never be covered
        let mut scan = free;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if self.neighbor_mask[v] & free == 0 {
                return;
            }
        }
        let u = free.trailing_zeros() as usize;
        let rest = free & !(1u128 << u);
        for (v, c, p) in &self.adj[u] {
            if rest & (1u128 << *v) != 0 {
                self.run(rest & !(1u128 << *v), &(coeff * c), pow + p, total);
            }
        }
    }

    /// Unit-weight fast path: plain counting, no rational arithmetic.
    fn run_unit(&self, free: u128) -> u128 {
        if free == 0 {
            return 1;
        }
        let mut scan = free;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if self.neighbor_mask[v] & free == 0 {
                return 0;
            }
        }
        let u = free.trailing_zeros() as usize;
        let rest = free & !(1u128 << u);
        let mut total = 0u128;
        for (v, _, _) in &self.adj[u] {
            if rest & (1u128 << *v) != 0 {
                total += self.run_unit(rest & !(1u128 << *v));
            }
        }
        total
    }
}

/// [`count_matchings`] with an explicit vertex cap (still at most 128).
pub fn count_matchings_with_limit(
    g: &WeightedMultigraph,
    limit: usize,
) -> Result<MatchPolynomial, OracleError> {
    let n = g.vertex_count();
    let cap = limit.min(MASK_LIMIT);
    if n > cap {
        return Err(OracleError::TooLarge {
            vertices: n,
            limit: cap,
        });
    }
    if n % 2 == 1 {
        return Ok(RatPoly::zero());
    }
    let mut search = Search {
        adj: vec![Vec::new(); n],
        neighbor_mask: vec![0u128; n],
    };
    let mut unit_only = true;
    for (u, v, w) in g.edges() {
        if w.is_zero() {
            continue;
        }
        let (c, p) = w
            .as_monomial()
            .ok_or(OracleError::NonMonomialWeight { edge: (*u, *v) })?;
        if !w.is_one() {
            unit_only = false;
        }
        search.adj[*u].push((*v, c.clone(), p));
        search.adj[*v].push((*u, c, p));
        search.neighbor_mask[*u] |= 1u128 << *v;
        search.neighbor_mask[*v] |= 1u128 << *u;
    }
    let full = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    if unit_only {
        let count = search.run_unit(full);
        let mut total = RatPoly::zero();
        total.add_monomial(&Rat::from(BigInt::from(count)), 0);
        Ok(total)
    } else {
        let mut total = RatPoly::zero();
        search.run(full, &Rat::one(), 0, &mut total);
        Ok(total)
    }
}

/// Column decomposition handed to the profile counter: a partition of the
/// vertices into ordered columns such that every edge stays within one
/// column or joins consecutive columns.
#[derive(Debug, Clone)]
pub struct ColumnStructure {
    columns: Vec<Vec<usize>>,
}

impl ColumnStructure {
    pub fn new(columns: Vec<Vec<usize>>) -> Self {
        ColumnStructure { columns }
    }

    /// `count` columns of `width` consecutively numbered vertices, the way
    /// the grid and cylinder builders number them.
    pub fn contiguous(width: usize, count: usize) -> Self {
        ColumnStructure {
            columns: (0..count)
                .map(|j| (j * width..(j + 1) * width).collect())
                .collect(),
        }
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }
}

/// Counts perfect matchings of a unit-weight graph by sweeping the column
/// decomposition left to right, tracking which vertices of the frontier
/// column are already covered. Entirely independent of the exhaustive
/// counter above.
pub fn count_matchings_profile(
    g: &WeightedMultigraph,
    structure: &ColumnStructure,
) -> Result<BigInt, OracleError> {
    let n = g.vertex_count();
    let cols = structure.columns();
    let mut position = vec![None; n];
    for (j, col) in cols.iter().enumerate() {
        if col.len() > COLUMN_LIMIT {
            return Err(OracleError::ColumnTooWide {
                column: j,
                width: col.len(),
                limit: COLUMN_LIMIT,
            });
        }
        for (r, &v) in col.iter().enumerate() {
            if v >= n {
                return Err(OracleError::NoColumnStructure(format!(
                    "column {j} lists vertex {v}, but the graph has {n}"
                )));
            }
            if position[v].is_some() {
                return Err(OracleError::NoColumnStructure(format!(
                    "vertex {v} appears in more than one column slot"
                )));
            }
            position[v] = Some((j, r));
        }
    }
    if position.iter().any(|p| p.is_none()) {
        return Err(OracleError::NoColumnStructure(
            "columns do not cover every vertex".into(),
        ));
    }
    // edges inside column j, and edges from column j to column j+1, both
    // recorded by row position
    let mut within: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cols.len()];
    let mut cross: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cols.len()];
    for (u, v, w) in g.edges() {
        if !w.is_one() {
            return Err(OracleError::NonUnitWeight { edge: (*u, *v) });
        }
        let (ju, ru) = position[*u].expect("checked above");
        let (jv, rv) = position[*v].expect("checked above");
        if ju == jv {
            within[ju].push((ru.min(rv), ru.max(rv)));
        } else if ju + 1 == jv {
            cross[ju].push((ru, rv));
        } else if jv + 1 == ju {
            cross[jv].push((rv, ru));
        } else {
            return Err(OracleError::NoColumnStructure(format!(
                "edge ({u}, {v}) spans non-adjacent columns {ju} and {jv}"
            )));
        }
    }

    // states map: frontier mask of vertices already covered from the left
    let mut states: HashMap<u32, BigInt> = HashMap::new();
    states.insert(0, BigInt::one());
    for j in 0..cols.len() {
        let width = cols[j].len();
        let full: u32 = if width == 32 { u32::MAX } else { (1 << width) - 1 };
        let mut next: HashMap<u32, BigInt> = HashMap::new();
        for (&covered, ways) in &states {
            fill_column(
                covered,
                full,
                0,
                &within[j],
                &cross[j],
                ways,
                &mut next,
            );
        }
        states = next;
        if states.is_empty() {
            return Ok(BigInt::zero());
        }
    }
    Ok(states.get(&0).cloned().unwrap_or_else(BigInt::zero))
}

/// Completes one column: every uncovered vertex is matched either inside
/// the column or forward into the next one; the forward choices become the
/// next frontier mask.
fn fill_column(
    covered: u32,
    full: u32,
    forward: u32,
    within: &[(usize, usize)],
    cross: &[(usize, usize)],
    ways: &BigInt,
    out: &mut HashMap<u32, BigInt>,
) {
    if covered == full {
        *out.entry(forward).or_insert_with(BigInt::zero) += ways;
        return;
    }
    let r = (!covered & full).trailing_zeros() as usize;
    let bit = 1u32 << r;
    for &(a, b) in within {
        let (other, hit) = if a == r { (b, true) } else if b == r { (a, true) } else { (0, false) };
        if hit && covered & (1 << other) == 0 && other != r {
            fill_column(
                covered | bit | (1 << other),
                full,
                forward,
                within,
                cross,
                ways,
                out,
            );
        }
    }
    for &(a, t) in cross {
        if a == r && forward & (1 << t) == 0 {
            fill_column(covered | bit, full, forward | (1 << t), within, cross, ways, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, IntPoly};
    use crate::graph::{
        honeycomb_cylinder, rect_grid, square_cylinder_graph, EdgeWeight, VerticalWeight,
    };

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedMultigraph {
        WeightedMultigraph::new(
            n,
            edges.iter().map(|&(u, v)| (u, v, EdgeWeight::one())).collect(),
        )
        .unwrap()
    }

    fn constant(p: &MatchPolynomial) -> Rat {
        p.as_constant().expect("expected a numeric count")
    }

    #[test]
    fn four_cycle_has_two() {
        let g = unit_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(2));
    }

    #[test]
    fn complete_graph_double_factorial() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in (u + 1)..6 {
                edges.push((u, v));
            }
        }
        // (6-1)!! = 15
        let g = unit_graph(6, &edges);
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(15));
    }

    #[test]
    fn odd_count_and_empty_graph() {
        let g = unit_graph(3, &[(0, 1), (1, 2)]);
        assert!(count_matchings(&g).unwrap().is_zero());
        let empty = unit_graph(0, &[]);
        assert_eq!(constant(&count_matchings(&empty).unwrap()), rat(1));
        let isolated = unit_graph(2, &[]);
        assert!(count_matchings(&isolated).unwrap().is_zero());
    }

    #[test]
    fn parallel_edges_count_separately() {
        let g = unit_graph(2, &[(0, 1), (0, 1)]);
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(2));
    }

    #[test]
    fn formal_honeycomb_polynomials() {
        let f = honeycomb_cylinder(2, 2).unwrap();
        let p = count_matchings(&f.to_multigraph()).unwrap();
        assert_eq!(p, RatPoly::from_coeffs(vec![rat(1), rat(0), rat(1)]));
        let f = honeycomb_cylinder(2, 3).unwrap();
        let p = count_matchings(&f.to_multigraph()).unwrap();
        // 2x + x^3
        assert_eq!(p, RatPoly::from_coeffs(vec![rat(0), rat(2), rat(0), rat(1)]));
    }

    #[test]
    fn square_cylinders() {
        let g = square_cylinder_graph(3, 4).unwrap();
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(19));
        let g = square_cylinder_graph(2, 4).unwrap();
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(29));
        let g = square_cylinder_graph(4, 1).unwrap();
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(2));
    }

    #[test]
    fn halved_top_grid() {
        let g = rect_grid(3, 2, true).unwrap();
        assert_eq!(constant(&count_matchings(&g).unwrap()), rat(2));
        let g = rect_grid(3, 4, true).unwrap();
        assert_eq!(constant(&count_matchings(&g).unwrap()), ratio(19, 4));
    }

    #[test]
    fn zero_weight_edges_drop_out() {
        let mut edges = vec![
            (0, 1, EdgeWeight::one()),
            (1, 2, EdgeWeight::one()),
            (2, 3, EdgeWeight::one()),
            (3, 0, EdgeWeight::one()),
        ];
        let base = WeightedMultigraph::new(4, edges.clone()).unwrap();
        edges.push((0, 2, EdgeWeight::Rational(rat(0))));
        let with_zero = WeightedMultigraph::new(4, edges).unwrap();
        assert_eq!(
            count_matchings(&base).unwrap(),
            count_matchings(&with_zero).unwrap()
        );
    }

    #[test]
    fn rejects_oversized_and_non_monomial() {
        let big = unit_graph(28, &[]);
        assert!(matches!(
            count_matchings(&big),
            Err(OracleError::TooLarge { vertices: 28, limit: 26 })
        ));
        assert!(count_matchings_with_limit(&big, 30).unwrap().is_zero());

        let g = WeightedMultigraph::new(
            2,
            vec![(0, 1, EdgeWeight::Poly(IntPoly::from_i64(&[1, 1])))],
        )
        .unwrap();
        assert!(matches!(
            count_matchings(&g),
            Err(OracleError::NonMonomialWeight { edge: (0, 1) })
        ));
    }

    #[test]
    fn formal_vertical_weights_track_powers() {
        // 4-cycle with two opposite formal edges: matchings are the two
        // formal edges together (x^2) or the two unit edges (1)
        let g = WeightedMultigraph::new(
            4,
            vec![
                (0, 1, EdgeWeight::formal()),
                (1, 2, EdgeWeight::one()),
                (2, 3, EdgeWeight::formal()),
                (3, 0, EdgeWeight::one()),
            ],
        )
        .unwrap();
        let p = count_matchings(&g).unwrap();
        assert_eq!(p, RatPoly::from_coeffs(vec![rat(1), rat(0), rat(1)]));
    }

    #[test]
    fn profile_grid_counts() {
        let g = rect_grid(2, 2, false).unwrap();
        let c = count_matchings_profile(&g, &ColumnStructure::contiguous(2, 2)).unwrap();
        assert_eq!(c, BigInt::from(2));

        let g = rect_grid(4, 4, false).unwrap();
        let c = count_matchings_profile(&g, &ColumnStructure::contiguous(4, 4)).unwrap();
        assert_eq!(c, BigInt::from(36));

        let g = rect_grid(8, 8, false).unwrap();
        let c = count_matchings_profile(&g, &ColumnStructure::contiguous(8, 8)).unwrap();
        assert_eq!(c, BigInt::from(12988816));
    }

    #[test]
    fn profile_matches_exhaustive_on_cylinders() {
        for (m, n) in [(3usize, 4usize), (2, 4), (5, 3), (4, 5)] {
            let g = square_cylinder_graph(m, n).unwrap();
            let profile =
                count_matchings_profile(&g, &ColumnStructure::contiguous(m, n)).unwrap();
            let exhaustive = count_matchings(&g).unwrap();
            assert_eq!(Rat::from(profile), constant(&exhaustive), "C_{m},{n}");
        }
    }

    #[test]
    fn profile_rejects_bad_structure() {
        let g = rect_grid(2, 3, false).unwrap();
        // columns miss a vertex
        let bad = ColumnStructure::new(vec![vec![0, 1], vec![2, 3]]);
        assert!(matches!(
            count_matchings_profile(&g, &bad),
            Err(OracleError::NoColumnStructure(_))
        ));
        // non-adjacent span: claim column order 0, 2, 1
        let bad = ColumnStructure::new(vec![vec![0, 1], vec![4, 5], vec![2, 3]]);
        assert!(matches!(
            count_matchings_profile(&g, &bad),
            Err(OracleError::NoColumnStructure(_))
        ));
        let tall = unit_graph(22, &[]);
        let wide = ColumnStructure::new(vec![(0..22).collect()]);
        assert!(matches!(
            count_matchings_profile(&tall, &wide),
            Err(OracleError::ColumnTooWide { column: 0, width: 22, .. })
        ));
        let weighted = rect_grid(2, 3, true).unwrap();
        assert!(matches!(
            count_matchings_profile(&weighted, &ColumnStructure::contiguous(2, 3)),
            Err(OracleError::NonUnitWeight { .. })
        ));
    }

    #[test]
    fn profile_handles_parallel_edges() {
        let g = square_cylinder_graph(2, 4).unwrap();
        let c = count_matchings_profile(&g, &ColumnStructure::contiguous(2, 4)).unwrap();
        assert_eq!(c, BigInt::from(29));
    }

    #[test]
    fn formal_fabric_with_numeric_verticals() {
        let f = honeycomb_cylinder(2, 2).unwrap();
        let g = f
            .to_multigraph_with(&[
                VerticalWeight::Rational(ratio(1, 3)),
                VerticalWeight::Rational(rat(5)),
            ])
            .unwrap();
        // 1 + (1/3)*5
        assert_eq!(constant(&count_matchings(&g).unwrap()), ratio(8, 3));
    }
}
