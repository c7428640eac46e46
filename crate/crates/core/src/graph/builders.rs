//! Constructors for the graph families the engine and the formulas talk
//! about: honeycomb cylinders, square cylinders (as plain product graphs
//! and as woven fabrics), rectangular grids, and the reflection-annotated
//! cylinder the factorization machinery consumes.

use super::{
    EdgeWeight, FabricGraph, GraphError, Side, Strand, SymmetricGraph, VerticalWeight,
    WeightedMultigraph,
};
use crate::exact::ratio;

/// Square upper-bidiagonal strand: bottoms 1..=s each join tops j and j+1.
fn bidiagonal_square(s: usize) -> Strand {
    let mut edges = Vec::with_capacity(2 * s);
    for j in 1..=s {
        edges.push((j, j));
        if j < s {
            edges.push((j, j + 1));
        }
    }
    Strand::unit_edges(s, s, &edges).expect("bidiagonal support is monotone")
}

/// Wide bidiagonal strand, s bottoms and s+1 tops: bottom j joins tops j
/// and j+1. The s = 0 strand is a single isolated top vertex.
fn bidiagonal_wide(s: usize) -> Strand {
    let mut edges = Vec::with_capacity(2 * s);
    for j in 1..=s {
        edges.push((j, j));
        edges.push((j, j + 1));
    }
    Strand::unit_edges(s, s + 1, &edges).expect("bidiagonal support is monotone")
}

/// Honeycomb cylinder with m strands (m even) woven from paths on n
/// vertices, all vertical weights left formal. Each strand is one path
/// split across its bipartition; consecutive strands alternate between a
/// path matrix and its transpose so the frontier sizes chain up and wrap.
pub fn honeycomb_cylinder(m: usize, n: usize) -> Result<FabricGraph, GraphError> {
    if m < 2 {
        return Err(GraphError::GirthTooSmall { m });
    }
    if m % 2 != 0 {
        return Err(GraphError::OddGirth { m });
    }
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "honeycomb strands need at least one path vertex".into(),
        ));
    }
    let lower = if n % 2 == 0 {
        bidiagonal_square(n / 2)
    } else {
        bidiagonal_wide((n - 1) / 2)
    };
    let upper = lower.transposed();
    let strands = (0..m)
        .map(|i| if i % 2 == 0 { lower.clone() } else { upper.clone() })
        .collect();
    FabricGraph::cylindrical(strands, vec![VerticalWeight::Formal; m])
}

/// Cylinder-times-path product graph: n rings of girth m, consecutive
/// rings joined rung by rung, all weights 1. Vertex (i, j) with i the
/// position around ring j is numbered j*m + i, so each ring is one
/// contiguous block. Girth 2 is realized honestly as a multigraph: each
/// 2-ring is a pair of parallel edges.
pub fn square_cylinder_graph(m: usize, n: usize) -> Result<WeightedMultigraph, GraphError> {
    if m < 2 {
        return Err(GraphError::GirthTooSmall { m });
    }
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "a cylinder needs at least one ring".into(),
        ));
    }
    let v = |i: usize, j: usize| j * m + i;
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..m {
            edges.push((v(i, j), v((i + 1) % m, j), EdgeWeight::one()));
        }
        if j + 1 < n {
            for i in 0..m {
                edges.push((v(i, j), v(i, j + 1), EdgeWeight::one()));
            }
        }
    }
    WeightedMultigraph::new(m * n, edges)
}

/// The woven strand whose Gram matrix drives the square-cylinder count:
/// row 1 meets columns {1,2}, even row 2r meets {2r}, odd row 2r+1 meets
/// {2r, 2r+1, 2r+2}, everything truncated to an n-by-n corner.
pub fn square_fabric_strand(n: usize) -> Strand {
    let mut edges = Vec::new();
    for row in 1..=n {
        let cols: &[usize] = &if row == 1 {
            vec![1, 2]
        } else if row % 2 == 0 {
            vec![row]
        } else {
            vec![row - 1, row, row + 1]
        };
        for &c in cols {
            if c <= n {
                edges.push((row, c));
            }
        }
    }
    Strand::unit_edges(n, n, &edges).expect("woven support is monotone")
}

/// Square cylinder rebuilt as a fabric: m copies (m even) of the woven
/// strand, alternating with its transpose, all verticals weight 1. Its
/// matching count agrees with [`square_cylinder_graph`] of the same size.
pub fn square_cylinder_fabric(m: usize, n: usize) -> Result<FabricGraph, GraphError> {
    if m < 2 {
        return Err(GraphError::GirthTooSmall { m });
    }
    if m % 2 != 0 {
        return Err(GraphError::OddGirth { m });
    }
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "a cylinder needs at least one ring".into(),
        ));
    }
    let lower = square_fabric_strand(n);
    let upper = lower.transposed();
    let strands = (0..m)
        .map(|i| if i % 2 == 0 { lower.clone() } else { upper.clone() })
        .collect();
    FabricGraph::cylindrical(strands, vec![VerticalWeight::one(); m])
}

/// Rectangular grid with `rows` rows and `cols` columns, vertex (r, c)
/// numbered c*rows + r. With `half_top` set, the cols-1 edges running
/// along the extreme row r = rows-1 get weight 1/2; that is the row the
/// reflection cut of a symmetric cylinder produces.
pub fn rect_grid(rows: usize, cols: usize, half_top: bool) -> Result<WeightedMultigraph, GraphError> {
    if rows == 0 || cols == 0 {
        return Err(GraphError::InvalidParameter(
            "a grid needs at least one row and one column".into(),
        ));
    }
    let v = |r: usize, c: usize| c * rows + r;
    let mut edges = Vec::new();
    for c in 0..cols {
        for r in 0..rows {
            if r + 1 < rows {
                edges.push((v(r, c), v(r + 1, c), EdgeWeight::one()));
            }
            if c + 1 < cols {
                let w = if half_top && r == rows - 1 {
                    EdgeWeight::Rational(ratio(1, 2))
                } else {
                    EdgeWeight::one()
                };
                edges.push((v(r, c), v(r, c + 1), w));
            }
        }
    }
    WeightedMultigraph::new(rows * cols, edges)
}

/// Square cylinder of odd girth m with its reflection annotation. The
/// axis passes through ring position 0 of every ring; axis vertices are
/// listed ring by ring, positions 1..=(m-1)/2 sit above, the rest below.
/// n must be even so the axis carries a whole number of (a, b) pairs.
pub fn symmetric_cylinder(m: usize, n: usize) -> Result<SymmetricGraph, GraphError> {
    if m < 3 || m % 2 == 0 {
        return Err(GraphError::BadParity(format!(
            "reflection through a vertex needs an odd girth of at least 3, got {m}"
        )));
    }
    if n == 0 || n % 2 != 0 {
        return Err(GraphError::BadParity(format!(
            "the axis needs an even number of rings, got {n}"
        )));
    }
    let graph = square_cylinder_graph(m, n)?;
    let count = graph.vertex_count();
    let mut involution = Vec::with_capacity(count);
    let mut side = Vec::with_capacity(count);
    for v in 0..count {
        let (i, j) = (v % m, v / m);
        involution.push(j * m + (m - i) % m);
        side.push(if i == 0 {
            Side::Axis
        } else if i <= (m - 1) / 2 {
            Side::Above
        } else {
            Side::Below
        });
    }
    let axis = (0..n).map(|j| j * m).collect();
    SymmetricGraph::new(graph, involution, axis, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn honeycomb_even_path_split() {
        let f = honeycomb_cylinder(2, 2).unwrap();
        assert_eq!(f.level_sizes(), vec![1, 1, 1]);
        assert_eq!(f.vertex_count(), 4);
        // realization with unit weights is the 4-cycle
        let g = f
            .to_multigraph_with(&[VerticalWeight::one(), VerticalWeight::one()])
            .unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges().len(), 4);
    }

    #[test]
    fn honeycomb_odd_path_split() {
        let f = honeycomb_cylinder(2, 3).unwrap();
        // strands are 1x2 and 2x1
        assert_eq!(f.level_sizes(), vec![1, 2, 1]);
        assert_eq!(f.vertex_count(), 6);
        let m = f.strands()[0].bi_adjacency();
        assert_eq!((m.rows(), m.cols()), (1, 2));
    }

    #[test]
    fn honeycomb_rejects_bad_girth() {
        assert!(matches!(
            honeycomb_cylinder(3, 4),
            Err(GraphError::OddGirth { m: 3 })
        ));
        assert!(matches!(
            honeycomb_cylinder(0, 4),
            Err(GraphError::GirthTooSmall { m: 0 })
        ));
        assert!(honeycomb_cylinder(2, 0).is_err());
    }

    #[test]
    fn square_cylinder_counts_cells() {
        let g = square_cylinder_graph(3, 4).unwrap();
        assert_eq!(g.vertex_count(), 12);
        // 4 rings of 3 edges + 3 layers of 3 rungs
        assert_eq!(g.edges().len(), 12 + 9);
        let doubled = square_cylinder_graph(2, 1).unwrap();
        assert_eq!(doubled.vertex_count(), 2);
        assert_eq!(doubled.edges().len(), 2);
    }

    #[test]
    fn woven_strand_support() {
        let rows: Vec<Vec<usize>> = (1..=6)
            .map(|r| {
                square_fabric_strand(6)
                    .edges()
                    .iter()
                    .filter(|e| e.bottom == r)
                    .map(|e| e.top)
                    .collect()
            })
            .collect();
        assert_eq!(
            rows,
            vec![
                vec![1, 2],
                vec![2],
                vec![2, 3, 4],
                vec![4],
                vec![4, 5, 6],
                vec![6]
            ]
        );
    }

    #[test]
    fn woven_gram_matrix_matches_hand_computation() {
        let a = square_fabric_strand(4).bi_adjacency();
        let gram = a.mul(&a.transpose()).unwrap();
        let expected = crate::exact::ExactMatrix::from_integer_rows(&[
            vec![2, 1, 1, 0],
            vec![1, 1, 1, 0],
            vec![1, 1, 3, 1],
            vec![0, 0, 1, 1],
        ]);
        assert_eq!(gram, expected);
        assert_eq!(
            gram.shifted_identity(&rat(1)).unwrap().det_exact().unwrap(),
            rat(29)
        );
    }

    #[test]
    fn square_fabric_shape() {
        let f = square_cylinder_fabric(4, 3).unwrap();
        assert_eq!(f.strand_count(), 4);
        assert_eq!(f.level_sizes(), vec![3; 5]);
        assert_eq!(f.vertex_count(), 24);
        assert!(matches!(
            square_cylinder_fabric(3, 4),
            Err(GraphError::OddGirth { m: 3 })
        ));
    }

    #[test]
    fn grid_shape_and_half_weights() {
        let g = rect_grid(3, 4, false).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edges().len(), 8 + 9);
        let halved = rect_grid(3, 4, true).unwrap();
        let half_edges: Vec<_> = halved
            .edges()
            .iter()
            .filter(|(_, _, w)| *w == EdgeWeight::Rational(ratio(1, 2)))
            .collect();
        // the 3 edges along the top row, which runs 2, 5, 8, 11
        assert_eq!(half_edges.len(), 3);
        for (u, v, _) in &half_edges {
            assert_eq!(u % 3, 2);
            assert_eq!(v % 3, 2);
        }
    }

    #[test]
    fn symmetric_cylinder_shape() {
        let sg = symmetric_cylinder(3, 4).unwrap();
        assert_eq!(sg.width(), 2);
        assert_eq!(sg.axis_vertices(), &[0, 3, 6, 9]);
        assert_eq!(sg.a_vertices(), vec![0, 6]);
        assert_eq!(sg.b_vertices(), vec![3, 9]);
        let above = (0..12).filter(|&v| sg.side(v) == Side::Above).count();
        let below = (0..12).filter(|&v| sg.side(v) == Side::Below).count();
        assert_eq!((above, below), (4, 4));

        assert!(symmetric_cylinder(4, 4).is_err());
        assert!(symmetric_cylinder(3, 3).is_err());
        assert!(symmetric_cylinder(1, 4).is_err());
    }

    #[test]
    fn symmetric_cylinder_five() {
        let sg = symmetric_cylinder(5, 2).unwrap();
        assert_eq!(sg.width(), 1);
        // mirror of position 2 is position 3 within each ring
        assert_eq!(sg.involution()[2], 3);
        assert_eq!(sg.side(2), Side::Above);
        assert_eq!(sg.side(3), Side::Below);
    }
}
