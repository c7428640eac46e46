//! Randomized invariants. Each property pits two independent routes or
//! two equivalent presentations of the same computation against each
//! other on generated inputs.

use num_bigint::BigInt;
use proptest::prelude::*;

use dimers::engine::{count_cyl, match_polynomial};
use dimers::exact::{rat, ExactMatrix, Rat};
use dimers::graph::{EdgeWeight, FabricGraph, Strand, VerticalWeight, WeightedMultigraph};
use dimers::oracle::{
    count_matchings, count_matchings_profile, count_matchings_with_limit, ColumnStructure,
};

/// No regression files: failures replay from the printed minimal input,
/// and test targets have no source root for proptest to write into.
fn config() -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn integer_matrix(n: usize, cells: &[i64]) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|r| cells[r * n..(r + 1) * n].to_vec()).collect();
    ExactMatrix::from_integer_rows(&rows)
}

proptest! {
    #![proptest_config(config())]
    // fraction-free elimination on integer input never leaves the integers
    #[test]
    fn integer_determinants_are_integers(
        n in 1usize..=5,
        cells in proptest::collection::vec(-5i64..=5, 25),
    ) {
        let m = integer_matrix(n, &cells);
        let (det, integral) = m.det_with_integrality().expect("square matrix");
        prop_assert!(integral);
        prop_assert!(det.is_integer());
    }

    #[test]
    fn determinants_are_transpose_invariant(
        n in 1usize..=5,
        cells in proptest::collection::vec(-5i64..=5, 25),
    ) {
        let m = integer_matrix(n, &cells);
        prop_assert_eq!(
            m.det_exact().expect("square"),
            m.transpose().det_exact().expect("square")
        );
    }

    // the characteristic polynomial evaluated at zero is the signed
    // determinant
    #[test]
    fn charpoly_constant_term_is_the_signed_determinant(
        n in 1usize..=5,
        cells in proptest::collection::vec(-4i64..=4, 25),
    ) {
        let m = integer_matrix(n, &cells);
        let p = m.charpoly().expect("integer matrix");
        let det = m.det_exact().expect("square").to_integer();
        let sign = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        prop_assert_eq!(p.coeff(0), sign * det);
    }
}

/// Random multigraph on up to 8 vertices with small rational weights.
fn graph_strategy() -> impl Strategy<Value = WeightedMultigraph> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(((0..n), (0..n), 0i64..=2), 0..=10).prop_map(move |triples| {
            let edges = triples
                .into_iter()
                .filter(|(u, v, _)| u != v)
                .map(|(u, v, w)| (u, v, EdgeWeight::Rational(rat(w))))
                .collect();
            WeightedMultigraph::new(n, edges).expect("loops filtered out")
        })
    })
}

fn oracle_count(g: &WeightedMultigraph) -> Rat {
    count_matchings(g)
        .expect("small graph")
        .as_constant()
        .expect("concrete weights give a constant")
}

proptest! {
    #![proptest_config(config())]
    // an edge of weight zero contributes to no matching
    #[test]
    fn zero_weight_edges_never_change_the_count(
        g in graph_strategy(),
        pick in (0usize..64, 0usize..64),
    ) {
        let n = g.vertex_count();
        let (u, v) = (pick.0 % n, pick.1 % n);
        prop_assume!(u != v);
        let mut edges = g.edges().to_vec();
        edges.push((u, v, EdgeWeight::Rational(rat(0))));
        let padded = WeightedMultigraph::new(n, edges).expect("still loop free");
        prop_assert_eq!(oracle_count(&padded), oracle_count(&g));
    }

    // a perfect matching on n vertices uses n/2 edges, so scaling every
    // weight by c scales the count by c^(n/2)
    #[test]
    fn uniform_scaling_scales_the_count_by_half_vertex_power(
        g in graph_strategy(),
        c in 2i64..=3,
    ) {
        let n = g.vertex_count();
        prop_assume!(n % 2 == 0);
        let scaled_edges = g
            .edges()
            .iter()
            .map(|(u, v, w)| match w {
                EdgeWeight::Rational(r) => (*u, *v, EdgeWeight::Rational(r * rat(c))),
                other => (*u, *v, other.clone()),
            })
            .collect();
        let scaled = WeightedMultigraph::new(n, scaled_edges).expect("same support");
        let factor = rat(c.pow((n / 2) as u32));
        prop_assert_eq!(oracle_count(&scaled), factor * oracle_count(&g));
    }
}

/// Builds one staircase strand from fixed-shape random instructions, so
/// edge supports never cross.
fn build_strand(bottom: usize, top: usize, rows: &[[(bool, u8, bool); 3]]) -> Strand {
    let mut edges = Vec::new();
    let mut floor = 1usize;
    for b in 1..=bottom {
        let mut t = floor;
        for &(place, w, advance) in &rows[b - 1] {
            if t > top {
                break;
            }
            if place {
                edges.push((b, t, rat(i64::from(w % 3))));
                floor = t;
            }
            if advance {
                t += 1;
            } else {
                break;
            }
        }
    }
    Strand::new(bottom, top, edges).expect("staircase supports never cross")
}

type StrandPlan = [[(bool, u8, bool); 3]; 3];

fn fabric_strategy() -> impl Strategy<Value = (FabricGraph, Vec<Rat>)> {
    let slot = (any::<bool>(), 0u8..=2, any::<bool>());
    let plan = proptest::array::uniform3(proptest::array::uniform3(slot));
    (
        1usize..=3,
        proptest::array::uniform3(1usize..=3),
        proptest::array::uniform3(plan),
        proptest::array::uniform3((1i64..=3, proptest::bool::ANY)),
    )
        .prop_map(|(m, levels, plans, xs): (usize, [usize; 3], [StrandPlan; 3], _)| {
            let strands = (0..m)
                .map(|i| build_strand(levels[(i + m - 1) % m], levels[i], &plans[i]))
                .collect();
            let fabric = FabricGraph::cylindrical(strands, vec![VerticalWeight::Formal; m])
                .expect("levels chain by construction");
            let weights = (0..m)
                .map(|i| {
                    let (v, negative) = xs[i];
                    if negative {
                        rat(-v)
                    } else {
                        rat(v)
                    }
                })
                .collect();
            (fabric, weights)
        })
}

fn rotate_fabric(f: &FabricGraph, xs: &[Rat]) -> (FabricGraph, Vec<Rat>) {
    let mut strands = f.strands().to_vec();
    strands.rotate_left(1);
    let mut weights = xs.to_vec();
    weights.rotate_left(1);
    let fabric = FabricGraph::cylindrical(strands, vec![VerticalWeight::Formal; xs.len()])
        .expect("rotation preserves the level chain");
    (fabric, weights)
}

proptest! {
    #![proptest_config(config())]
    // relabeling the strands cyclically is a graph isomorphism, so the
    // weighted count must not move
    #[test]
    fn cylindrical_counts_are_rotation_invariant((f, xs) in fabric_strategy()) {
        let (rotated, rotated_xs) = rotate_fabric(&f, &xs);
        prop_assert_eq!(
            count_cyl(&f, &xs).expect("nonzero weights"),
            count_cyl(&rotated, &rotated_xs).expect("nonzero weights")
        );
    }

    // the matching polynomial exists exactly when no level is smaller
    // than the last one, and evaluating it at x equals counting with
    // every level weighted x
    #[test]
    fn matching_polynomial_evaluation_matches_uniform_counts(
        (f, xs) in fabric_strategy(),
    ) {
        let x = xs[0].clone();
        let uniform = vec![x.clone(); f.strand_count()];
        let levels = f.level_sizes();
        let m = f.strand_count();
        let last = levels[m] as i64;
        let pooled_exponent: i64 = (1..m).map(|i| levels[i] as i64 - last).sum();
        let polynomial_defined = pooled_exponent >= 0;
        match match_polynomial(&f) {
            Ok(poly) => {
                prop_assert!(polynomial_defined);
                prop_assert_eq!(
                    poly.eval(&x),
                    count_cyl(&f, &uniform).expect("nonzero weight")
                );
            }
            Err(_) => prop_assert!(!polynomial_defined),
        }
    }

    // the engine agrees with the exhaustive oracle on the realized graph
    #[test]
    fn engine_and_oracle_agree_on_random_fabrics((f, xs) in fabric_strategy()) {
        let weights: Vec<VerticalWeight> =
            xs.iter().cloned().map(VerticalWeight::Rational).collect();
        let g = f.to_multigraph_with(&weights).expect("cylindrical fabric");
        let oracle = count_matchings_with_limit(&g, 30)
            .expect("small graph")
            .as_constant()
            .expect("concrete weights");
        prop_assert_eq!(count_cyl(&f, &xs).expect("nonzero weights"), oracle);
    }
}

/// Random unit-weight graph arranged in c columns of r vertices, edges
/// only within a column or to the next column, as the frontier dynamic
/// program requires.
fn layered_graph_strategy() -> impl Strategy<Value = (WeightedMultigraph, usize, usize)> {
    (1usize..=4, 1usize..=4, proptest::collection::vec(any::<bool>(), 72)).prop_map(
        |(r, c, bits)| {
            let mut take = bits.into_iter();
            let mut on = move || take.next().unwrap_or(false);
            let v = |col: usize, row: usize| col * r + row;
            let mut edges = Vec::new();
            for col in 0..c {
                for a in 0..r {
                    for b in a + 1..r {
                        if on() {
                            edges.push((v(col, a), v(col, b), EdgeWeight::one()));
                        }
                    }
                }
                if col + 1 < c {
                    for a in 0..r {
                        for b in 0..r {
                            if on() {
                                edges.push((v(col, a), v(col + 1, b), EdgeWeight::one()));
                            }
                        }
                    }
                }
            }
            (
                WeightedMultigraph::new(r * c, edges).expect("indices in range"),
                r,
                c,
            )
        },
    )
}

proptest! {
    #![proptest_config(config())]
    // the frontier dynamic program is an independent route to the same
    // integer as the exhaustive search
    #[test]
    fn frontier_counts_agree_with_exhaustive_search(
        (g, r, c) in layered_graph_strategy(),
    ) {
        let profile = count_matchings_profile(&g, &ColumnStructure::contiguous(r, c))
            .expect("column structure fits");
        let exhaustive = oracle_count(&g);
        prop_assert_eq!(Rat::from_integer(profile), exhaustive);
    }
}
