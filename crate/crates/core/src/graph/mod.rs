//! Graph structures: strands, fabric graphs, weighted multigraphs, and
//! reflection-symmetric graphs.
//!
//! Strand edges are 1-based to match the usual way the matrices are read;
//! multigraph vertices are 0-based everywhere, including in JSON files.

mod builders;
pub mod interchange;

pub use builders::{
    honeycomb_cylinder, rect_grid, square_cylinder_fabric, square_cylinder_graph,
    square_fabric_strand, symmetric_cylinder,
};

use std::collections::VecDeque;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{ExactMatrix, IntPoly, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("strand support is not monotone: edges ({},{}) and ({},{}) cross", first.0, first.1, second.0, second.1)]
    MonotoneSupportViolation {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("{what} index {index} out of range 1..={limit}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("duplicate strand edge ({bottom},{top})")]
    DuplicateEdge { bottom: usize, top: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("honeycomb and woven cylinders need an even number of strands, got {m}")]
    OddGirth { m: usize },
    #[error("cylinder girth must be at least 2, got {m}")]
    GirthTooSmall { m: usize },
    #[error("self loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range 0..{count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("bad parity: {0}")]
    BadParity(String),
    #[error("symmetry annotation is inconsistent: {0}")]
    BadSymmetry(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// One bipartite layer of a fabric: `bottom_count` vertices below,
/// `top_count` above, and weighted edges whose support must be monotone
/// (no pair of edges with bottoms and tops ordered opposite ways). That
/// support condition is what collapses the permanent of every square
/// submatrix of the bi-adjacency matrix onto its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    bottom_count: usize,
    top_count: usize,
    edges: Vec<StrandEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandEdge {
    pub bottom: usize,
    pub top: usize,
    pub weight: Rat,
}

impl Strand {
    pub fn new(
        bottom_count: usize,
        top_count: usize,
        edges: Vec<(usize, usize, Rat)>,
    ) -> Result<Self, GraphError> {
        let mut parsed: Vec<StrandEdge> = Vec::with_capacity(edges.len());
        for (bottom, top, weight) in edges {
            if bottom == 0 || bottom > bottom_count {
                return Err(GraphError::IndexOutOfRange {
                    what: "bottom",
                    index: bottom,
                    limit: bottom_count,
                });
            }
            if top == 0 || top > top_count {
                return Err(GraphError::IndexOutOfRange {
                    what: "top",
                    index: top,
                    limit: top_count,
                });
            }
            parsed.push(StrandEdge { bottom, top, weight });
        }
        parsed.sort_by_key(|e| (e.bottom, e.top));
        for pair in parsed.windows(2) {
            if pair[0].bottom == pair[1].bottom && pair[0].top == pair[1].top {
                return Err(GraphError::DuplicateEdge {
                    bottom: pair[0].bottom,
                    top: pair[0].top,
                });
            }
        }
        for (i, e) in parsed.iter().enumerate() {
            for f in &parsed[i + 1..] {
                // sorted, so f.bottom >= e.bottom; a crossing is f with a
                // strictly larger bottom and a strictly smaller top
                if f.bottom > e.bottom && f.top < e.top {
                    return Err(GraphError::MonotoneSupportViolation {
                        first: (e.bottom, e.top),
                        second: (f.bottom, f.top),
                    });
                }
            }
        }
        Ok(Strand {
            bottom_count,
            top_count,
            edges: parsed,
        })
    }

    pub fn unit_edges(
        bottom_count: usize,
        top_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        Self::new(
            bottom_count,
            top_count,
            edges.iter().map(|&(b, t)| (b, t, Rat::one())).collect(),
        )
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom_count
    }

    pub fn top_count(&self) -> usize {
        self.top_count
    }

    pub fn edges(&self) -> &[StrandEdge] {
        &self.edges
    }

    /// Bi-adjacency matrix: rows are bottom vertices, columns top vertices.
    pub fn bi_adjacency(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.bottom_count, self.top_count);
        for e in &self.edges {
            *m.entry_mut(e.bottom - 1, e.top - 1) = e.weight.clone();
        }
        m
    }

    /// The strand read upside down; monotonicity is preserved.
    pub fn transposed(&self) -> Strand {
        let edges = self
            .edges
            .iter()
            .map(|e| (e.top, e.bottom, e.weight.clone()))
            .collect();
        Strand::new(self.top_count, self.bottom_count, edges)
            .expect("transposing preserves strand validity")
    }
}

/// Weight on a multigraph edge: an exact rational, or a polynomial in the
/// single formal vertical variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeWeight {
    Rational(Rat),
    Poly(IntPoly),
}

impl EdgeWeight {
    pub fn one() -> Self {
        EdgeWeight::Rational(Rat::one())
    }

    /// The formal vertical marker x.
    pub fn formal() -> Self {
        EdgeWeight::Poly(IntPoly::x())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            EdgeWeight::Rational(r) => r.is_zero(),
            EdgeWeight::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, EdgeWeight::Rational(r) if r.is_one())
    }

    /// Splits a weight of the shape c*x^k into (c, k). Non-monomial
    /// polynomials have no such form.
    pub fn as_monomial(&self) -> Option<(Rat, usize)> {
        match self {
            EdgeWeight::Rational(r) => Some((r.clone(), 0)),
            EdgeWeight::Poly(p) => {
                if p.is_zero() {
                    return Some((Rat::zero(), 0));
                }
                let deg = p.degree().unwrap();
                for k in 0..deg {
                    if !p.coeff(k).is_zero() {
                        return None;
                    }
                }
                Some((Rat::from_integer(p.coeff(deg)), deg))
            }
        }
    }

    pub fn halved(&self) -> Option<EdgeWeight> {
        match self {
            EdgeWeight::Rational(r) => Some(EdgeWeight::Rational(r / Rat::from_integer(2.into()))),
            EdgeWeight::Poly(_) => None,
        }
    }
}

/// Undirected multigraph with exact edge weights. Parallel edges are
/// distinct edges; self loops are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMultigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, EdgeWeight)>,
}

impl WeightedMultigraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize, EdgeWeight)>,
    ) -> Result<Self, GraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u,
                    count: vertex_count,
                });
            }
            if v >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            normalized.push((u.min(v), u.max(v), w));
        }
        normalized.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| a.2.cmp(&b.2)));
        Ok(WeightedMultigraph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, EdgeWeight)] {
        &self.edges
    }

    /// Bipartite from a bi-adjacency matrix: rows become vertices
    /// 0..rows, columns rows..rows+cols, with an edge per non-zero entry.
    pub fn from_bi_adjacency(m: &ExactMatrix) -> Self {
        let mut edges = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let w = m.entry(r, c);
                if !w.is_zero() {
                    edges.push((r, m.rows() + c, EdgeWeight::Rational(w.clone())));
                }
            }
        }
        WeightedMultigraph::new(m.rows() + m.cols(), edges)
            .expect("bi-adjacency translation is always in range")
    }

    /// Two-colorability check by breadth-first search over all components.
    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Greedy 2-coloring (color of vertex 0 in each component is false);
    /// None when some component has an odd cycle.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.neighbor_lists();
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (u, v, _) in &self.edges {
            adj[*u].push(*v);
            adj[*v].push(*u);
        }
        adj
    }
}

/// Vertical weight slot of a cylindrical fabric: a concrete rational or
/// the formal marker x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerticalWeight {
    Rational(Rat),
    Formal,
}

impl VerticalWeight {
    pub fn one() -> Self {
        VerticalWeight::Rational(Rat::one())
    }

    fn to_edge_weight(&self) -> EdgeWeight {
        match self {
            VerticalWeight::Rational(r) => EdgeWeight::Rational(r.clone()),
            VerticalWeight::Formal => EdgeWeight::formal(),
        }
    }

    /// Product of concrete level weights; None when any level is formal.
    pub fn product(weights: &[VerticalWeight]) -> Option<Rat> {
        let mut prod = Rat::one();
        for w in weights {
            match w {
                VerticalWeight::Rational(r) => prod *= r,
                VerticalWeight::Formal => return None,
            }
        }
        Some(prod)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FabricKind {
    Rectangular,
    Cylindrical,
}

/// A stack of strands glued by unit-length vertical edges. Strand i+1
/// sits on top of strand i and must have as many bottom vertices as
/// strand i has top vertices. Cylindrical fabrics also wrap the last
/// strand onto the first and carry one vertical weight per level;
/// rectangular fabrics have all verticals fixed at weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FabricGraph {
    kind: FabricKind,
    strands: Vec<Strand>,
    vertical_weights: Vec<VerticalWeight>,
}

impl FabricGraph {
    pub fn rectangular(strands: Vec<Strand>) -> Result<Self, GraphError> {
        if strands.is_empty() {
            return Err(GraphError::InvalidParameter("a fabric needs at least one strand".into()));
        }
        Self::check_chain(&strands)?;
        Ok(FabricGraph {
            kind: FabricKind::Rectangular,
            strands,
            vertical_weights: Vec::new(),
        })
    }

    pub fn cylindrical(
        strands: Vec<Strand>,
        vertical_weights: Vec<VerticalWeight>,
    ) -> Result<Self, GraphError> {
        if strands.is_empty() {
            return Err(GraphError::InvalidParameter("a fabric needs at least one strand".into()));
        }
        Self::check_chain(&strands)?;
        let top = strands.last().unwrap().top_count();
        let bottom = strands[0].bottom_count();
        if top != bottom {
            return Err(GraphError::SizeMismatch(format!(
                "cylindrical wrap joins {top} top vertices to {bottom} bottom vertices"
            )));
        }
        if vertical_weights.len() != strands.len() {
            return Err(GraphError::SizeMismatch(format!(
                "{} strands need {} vertical weights, got {}",
                strands.len(),
                strands.len(),
                vertical_weights.len()
            )));
        }
        Ok(FabricGraph {
            kind: FabricKind::Cylindrical,
            strands,
            vertical_weights,
        })
    }

    fn check_chain(strands: &[Strand]) -> Result<(), GraphError> {
        for (i, pair) in strands.windows(2).enumerate() {
            if pair[0].top_count() != pair[1].bottom_count() {
                return Err(GraphError::SizeMismatch(format!(
                    "strand {} has {} top vertices but strand {} has {} bottom vertices",
                    i + 1,
                    pair[0].top_count(),
                    i + 2,
                    pair[1].bottom_count()
                )));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> FabricKind {
        self.kind
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    pub fn vertical_weights(&self) -> &[VerticalWeight] {
        &self.vertical_weights
    }

    pub fn with_vertical_weights(&self, xs: Vec<VerticalWeight>) -> Result<Self, GraphError> {
        match self.kind {
            FabricKind::Rectangular => Err(GraphError::InvalidParameter(
                "rectangular fabrics have all vertical weights fixed at 1".into(),
            )),
            FabricKind::Cylindrical => Self::cylindrical(self.strands.clone(), xs),
        }
    }

    /// Frontier sizes l_0..l_m: l_0 is the bottom of the first strand and
    /// l_i the top of strand i.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.strands.len() + 1);
        sizes.push(self.strands[0].bottom_count());
        sizes.extend(self.strands.iter().map(Strand::top_count));
        sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.strands
            .iter()
            .map(|s| s.bottom_count() + s.top_count())
            .sum()
    }

    /// Realizes the fabric as a plain multigraph using the stored vertical
    /// weights. Vertices are numbered bottom-to-top by strand and
    /// left-to-right within each frontier: strand i occupies one block of
    /// bottom vertices followed by one block of top vertices.
    pub fn to_multigraph(&self) -> WeightedMultigraph {
        let weights: Vec<EdgeWeight> = match self.kind {
            FabricKind::Rectangular => {
                vec![EdgeWeight::one(); self.strands.len().saturating_sub(1)]
            }
            FabricKind::Cylindrical => self
                .vertical_weights
                .iter()
                .map(VerticalWeight::to_edge_weight)
                .collect(),
        };
        self.realize(&weights)
    }

    /// Same as [`Self::to_multigraph`] with explicit per-level vertical
    /// weights; only cylindrical fabrics have assignable verticals.
    pub fn to_multigraph_with(
        &self,
        xs: &[VerticalWeight],
    ) -> Result<WeightedMultigraph, GraphError> {
        if self.kind == FabricKind::Rectangular {
            return Err(GraphError::InvalidParameter(
                "rectangular fabrics have all vertical weights fixed at 1".into(),
            ));
        }
        if xs.len() != self.strands.len() {
            return Err(GraphError::SizeMismatch(format!(
                "{} strands need {} vertical weights, got {}",
                self.strands.len(),
                self.strands.len(),
                xs.len()
            )));
        }
        let weights: Vec<EdgeWeight> = xs.iter().map(VerticalWeight::to_edge_weight).collect();
        Ok(self.realize(&weights))
    }

    fn realize(&self, vertical: &[EdgeWeight]) -> WeightedMultigraph {
        let m = self.strands.len();
        let mut bottom_base = Vec::with_capacity(m);
        let mut top_base = Vec::with_capacity(m);
        let mut next = 0usize;
        for s in &self.strands {
            bottom_base.push(next);
            next += s.bottom_count();
            top_base.push(next);
            next += s.top_count();
        }
        let mut edges = Vec::new();
        for (i, s) in self.strands.iter().enumerate() {
            for e in s.edges() {
                edges.push((
                    bottom_base[i] + e.bottom - 1,
                    top_base[i] + e.top - 1,
                    EdgeWeight::Rational(e.weight.clone()),
                ));
            }
        }
        // vertical level i joins strand i's top frontier to strand i+1's
        // bottom frontier position by position; the last level wraps
        for (i, w) in vertical.iter().enumerate() {
            let above = (i + 1) % m;
            for j in 0..self.strands[i].top_count() {
                edges.push((top_base[i] + j, bottom_base[above] + j, w.clone()));
            }
        }
        WeightedMultigraph::new(next, edges).expect("fabric realization is always in range")
    }
}

/// Builds the multigraph realization of a fabric. `xs` overrides the
/// stored vertical weights (cylindrical fabrics only).
pub fn fabric_to_multigraph(
    fabric: &FabricGraph,
    xs: Option<&[VerticalWeight]>,
) -> Result<WeightedMultigraph, GraphError> {
    match xs {
        Some(xs) => fabric.to_multigraph_with(xs),
        None => Ok(fabric.to_multigraph()),
    }
}

/// Placement of a vertex relative to the reflection axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
    Axis,
}

/// A multigraph together with a reflection: an involution on the vertices
/// that preserves edges and weights, whose fixed vertices all lie on the
/// axis. The axis list is ordered as the fixed vertices occur along the
/// axis; alternate members play the roles a_1, b_1, a_2, b_2, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricGraph {
    graph: WeightedMultigraph,
    involution: Vec<usize>,
    axis_vertices: Vec<usize>,
    side: Vec<Side>,
}

impl SymmetricGraph {
    pub fn new(
        graph: WeightedMultigraph,
        involution: Vec<usize>,
        axis_vertices: Vec<usize>,
        side: Vec<Side>,
    ) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if involution.len() != n || side.len() != n {
            return Err(GraphError::SizeMismatch(format!(
                "graph has {n} vertices, involution covers {}, sides cover {}",
                involution.len(),
                side.len()
            )));
        }
        for (v, &img) in involution.iter().enumerate() {
            if img >= n {
                return Err(GraphError::VertexOutOfRange { vertex: img, count: n });
            }
            if involution[img] != v {
                return Err(GraphError::BadSymmetry(format!(
                    "map is not an involution at vertex {v}"
                )));
            }
            let fixed = img == v;
            match (fixed, side[v]) {
                (true, Side::Axis) | (false, Side::Above) | (false, Side::Below) => {}
                (true, _) => {
                    return Err(GraphError::BadSymmetry(format!(
                        "fixed vertex {v} must sit on the axis"
                    )))
                }
                (false, Side::Axis) => {
                    return Err(GraphError::BadSymmetry(format!(
                        "vertex {v} is marked on the axis but moves under the reflection"
                    )))
                }
            }
            if !fixed {
                let mirrored = match side[v] {
                    Side::Above => Side::Below,
                    Side::Below => Side::Above,
                    Side::Axis => unreachable!(),
                };
                if side[img] != mirrored {
                    return Err(GraphError::BadSymmetry(format!(
                        "vertices {v} and {img} are mirror images but sit on the same side"
                    )));
                }
            }
        }
        let mut expected_axis: Vec<usize> =
            (0..n).filter(|&v| involution[v] == v).collect();
        let mut listed = axis_vertices.clone();
        listed.sort_unstable();
        expected_axis.sort_unstable();
        if listed != expected_axis {
            return Err(GraphError::BadSymmetry(
                "axis list must contain every fixed vertex exactly once".into(),
            ));
        }
        if axis_vertices.len() % 2 != 0 {
            return Err(GraphError::BadParity(format!(
                "axis holds {} vertices, needs an even number",
                axis_vertices.len()
            )));
        }
        let mut original: Vec<(usize, usize, EdgeWeight)> = graph.edges().to_vec();
        let mut mirrored: Vec<(usize, usize, EdgeWeight)> = graph
            .edges()
            .iter()
            .map(|(u, v, w)| {
                let (mu, mv) = (involution[*u], involution[*v]);
                (mu.min(mv), mu.max(mv), w.clone())
            })
            .collect();
        original.sort();
        mirrored.sort();
        if original != mirrored {
            return Err(GraphError::BadSymmetry(
                "reflection does not preserve the weighted edge multiset".into(),
            ));
        }
        Ok(SymmetricGraph {
            graph,
            involution,
            axis_vertices,
            side,
        })
    }

    pub fn graph(&self) -> &WeightedMultigraph {
        &self.graph
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn axis_vertices(&self) -> &[usize] {
        &self.axis_vertices
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    /// Half the number of axis vertices; the exponent w in the
    /// factorization M(G) = 2^w M(G').
    pub fn width(&self) -> usize {
        self.axis_vertices.len() / 2
    }

    /// Axis vertices in the a role (odd positions along the axis).
    pub fn a_vertices(&self) -> Vec<usize> {
        self.axis_vertices.iter().copied().step_by(2).collect()
    }

    /// Axis vertices in the b role (even positions along the axis).
    pub fn b_vertices(&self) -> Vec<usize> {
        self.axis_vertices.iter().copied().skip(1).step_by(2).collect()
    }
}
