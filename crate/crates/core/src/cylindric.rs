//! Cylindric plane partitions over a staircase-cored skew shape, and the
//! vertical-edge matching strata they are equinumerous with.
//!
//! The shape has m rows of s cells each, every row one column left of the
//! row above, with entries bounded by n. A filling must decrease weakly
//! along rows and columns, and must keep decreasing when the bottom row is
//! copied in above the top row shifted m columns right (the wrap
//! condition). The companion count reads a single coefficient out of the
//! honeycomb matching polynomial; the two are computed by entirely
//! separate routes and compared in tests.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::engine::{count_cyl, match_polynomial, EngineError};
use crate::exact::Rat;
use crate::graph::{honeycomb_cylinder, FabricGraph, GraphError};

/// Enumeration refuses shapes with more cells than this.
pub const CELL_LIMIT: usize = 24;

#[derive(Debug, Error)]
pub enum CylindricError {
    #[error("{cells} cells exceed the enumeration limit of {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("coefficient of degree {power} is {value}, not an integer")]
    NonIntegerCoefficient { power: usize, value: String },
}

struct Enumerator<'a, F: FnMut(&[Vec<usize>])> {
    m: usize,
    s: usize,
    n: usize,
    grid: Vec<Vec<usize>>,
    count: BigInt,
    visit: &'a mut F,
}

impl<F: FnMut(&[Vec<usize>])> Enumerator<'_, F> {
    fn fill(&mut self, i: usize, j: usize) {
        if i == self.m {
            self.count += 1u32;
            (self.visit)(&self.grid);
            return;
        }
        let (ni, nj) = if j + 1 == self.s { (i + 1, 0) } else { (i, j + 1) };
        let mut ub = self.n;
        if j > 0 {
            ub = ub.min(self.grid[i][j - 1]);
        }
        if i > 0 && j > 0 {
            ub = ub.min(self.grid[i - 1][j - 1]);
        }
        // wrap: the bottom row reappears above the top row shifted one
        // cell left in local coordinates, so its entries dominate the top
        // row one position to the right
        let lb = if self.m > 1 && i == self.m - 1 && j + 1 < self.s {
            self.grid[0][j + 1]
        } else {
            0
        };
        for v in lb..=ub {
            self.grid[i][j] = v;
            self.fill(ni, nj);
        }
        self.grid[i][j] = 0;
    }
}

/// Counts the valid fillings, handing each one to `visit` as it is found
/// (rows outer, the top row first). Fillings arrive in ascending
/// lexicographic order of their row-major entry list.
pub fn enumerate_cylindric_with<F: FnMut(&[Vec<usize>])>(
    m: usize,
    s: usize,
    n: usize,
    mut visit: F,
) -> Result<BigInt, CylindricError> {
    if m == 0 {
        return Err(CylindricError::InvalidParameter(
            "the shape needs at least one row".into(),
        ));
    }
    let cells = m.checked_mul(s).filter(|&c| c <= CELL_LIMIT);
    let Some(cells) = cells else {
        return Err(CylindricError::TooLarge {
            cells: m.saturating_mul(s),
            limit: CELL_LIMIT,
        });
    };
    if cells == 0 {
        // the empty diagram has exactly the empty filling
        visit(&vec![Vec::new(); m]);
        return Ok(BigInt::one());
    }
    let mut e = Enumerator {
        m,
        s,
        n,
        grid: vec![vec![0; s]; m],
        count: BigInt::ZERO,
        visit: &mut visit,
    };
    e.fill(0, 0);
    Ok(e.count)
}

/// Counts the fillings without streaming them.
pub fn enumerate_cylindric(m: usize, s: usize, n: usize) -> Result<BigInt, CylindricError> {
    enumerate_cylindric_with(m, s, n, |_| {})
}

fn integer_coefficient(c: Rat, power: usize) -> Result<BigInt, CylindricError> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(CylindricError::NonIntegerCoefficient {
            power,
            value: c.to_string(),
        })
    }
}

/// Number of m-periodic cliffs of height n and displacement s, read off as
/// the number of matchings of the honeycomb cylinder with 2m strand paths
/// of 2n+s vertices that use exactly ms vertical edges. The degenerate
/// 2n+s = 0 shape has the single vertical wall.
pub fn cliff_count(m: usize, n: usize, s: usize) -> Result<BigInt, CylindricError> {
    if m == 0 {
        return Err(CylindricError::InvalidParameter(
            "cliffs need at least one period".into(),
        ));
    }
    if 2 * n + s == 0 {
        return Ok(BigInt::one());
    }
    let fabric = honeycomb_cylinder(2 * m, 2 * n + s)?;
    let poly = match_polynomial(&fabric)?;
    integer_coefficient(poly.coeff(m * s), m * s)
}

/// Float corroboration of the same count: the coefficient of x^(s/2,
/// rounded down) in the product over k = 1..n+s/2 of
/// (x + (2+2cos(2k pi/(2n+s+1)))^m), expanded by convolution.
pub fn cliff_count_formula(m: usize, n: usize, s: usize) -> f64 {
    let span = n + s / 2;
    let denom = (2 * n + s + 1) as f64;
    let mut coeffs = vec![1.0f64];
    for k in 1..=span {
        let a = (2.0 + 2.0 * (2.0 * k as f64 * std::f64::consts::PI / denom).cos())
            .powi(m as i32);
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i] += a * c;
            next[i + 1] += c;
        }
        coeffs = next;
    }
    coeffs.get(s / 2).copied().unwrap_or(0.0)
}

/// Number of perfect matchings of a cylindrical fabric that use exactly k
/// vertical edges: the degree-k coefficient of its matching polynomial.
pub fn matchings_with_k_verticals(f: &FabricGraph, k: usize) -> Result<BigInt, CylindricError> {
    let poly = match_polynomial(f)?;
    integer_coefficient(poly.coeff(k), k)
}

/// Sum of all vertical strata, which must equal the plain matching count.
pub fn total_matchings(f: &FabricGraph) -> Result<Rat, CylindricError> {
    let m = f.strand_count();
    Ok(count_cyl(f, &vec![Rat::one(); m])?)
}
