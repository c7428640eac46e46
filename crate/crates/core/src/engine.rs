//! Matching counts of fabric graphs via strand matrix products.
//!
//! The engine never enumerates matchings. A rectangular fabric's count is
//! the determinant of the ordered product of its strand bi-adjacency
//! matrices. A cylindrical fabric's count with vertical weights x_1..x_m
//! is a monomial prefactor times det(X I + P) where X = x_1 * ... * x_m
//! and P is the same matrix product. Everything is exact.

use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::exact::{ExactError, ExactMatrix, Rat, RatPoly};
use crate::graph::{FabricGraph, FabricKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("operation needs a rectangular fabric")]
    NotRectangular,
    #[error("operation needs a cylindrical fabric")]
    NotCylindrical,
    #[error("fabric is unbalanced: {bottom} bottom vertices vs {top} top vertices")]
    Unbalanced { bottom: usize, top: usize },
    #[error("fabric has {expected} levels but {got} vertical weights were given")]
    WrongWeightCount { expected: usize, got: usize },
    #[error("vertical weight {index} is zero but appears with exponent {exponent}")]
    ZeroToNegativePower { index: usize, exponent: i64 },
    #[error("formal prefactor exponent is {exponent}; rotate the strand order so the last level is smallest")]
    NegativeFormalPrefactor { exponent: i64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which route produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    RectDet,
    CylDet,
    CylCharpoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineValue {
    Rational(Rat),
    Polynomial(RatPoly),
}

/// A computed count along with the shape evidence: the dimensions of each
/// strand matrix as multiplied, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineResult {
    pub value: EngineValue,
    pub matrix_product_dims: Vec<(usize, usize)>,
    pub method: MethodTag,
}

impl EngineResult {
    pub fn rational(&self) -> Option<&Rat> {
        match &self.value {
            EngineValue::Rational(r) => Some(r),
            EngineValue::Polynomial(_) => None,
        }
    }

    pub fn polynomial(&self) -> Option<&RatPoly> {
        match &self.value {
            EngineValue::Polynomial(p) => Some(p),
            EngineValue::Rational(_) => None,
        }
    }
}

fn strand_dims(f: &FabricGraph) -> Vec<(usize, usize)> {
    f.strands()
        .iter()
        .map(|s| (s.bottom_count(), s.top_count()))
        .collect()
}

fn strand_product(f: &FabricGraph) -> Result<ExactMatrix, EngineError> {
    let strands = f.strands();
    let mut product = strands[0].bi_adjacency();
    for s in &strands[1..] {
        product = product.mul(&s.bi_adjacency())?;
    }
    Ok(product)
}

/// Count for a balanced rectangular fabric.
pub fn count_rect_traced(f: &FabricGraph) -> Result<EngineResult, EngineError> {
    if f.kind() != FabricKind::Rectangular {
        return Err(EngineError::NotRectangular);
    }
    let levels = f.level_sizes();
    let (bottom, top) = (levels[0], levels[levels.len() - 1]);
    if bottom != top {
        return Err(EngineError::Unbalanced { bottom, top });
    }
    let value = strand_product(f)?.det_exact()?;
    Ok(EngineResult {
        value: EngineValue::Rational(value),
        matrix_product_dims: strand_dims(f),
        method: MethodTag::RectDet,
    })
}

pub fn count_rect(f: &FabricGraph) -> Result<Rat, EngineError> {
    Ok(match count_rect_traced(f)?.value {
        EngineValue::Rational(r) => r,
        EngineValue::Polynomial(_) => unreachable!("rectangular counts are rational"),
    })
}

/// Count for a cylindrical fabric at concrete vertical weights, one per
/// level, x_m being the wrap level.
pub fn count_cyl_traced(f: &FabricGraph, xs: &[Rat]) -> Result<EngineResult, EngineError> {
    if f.kind() != FabricKind::Cylindrical {
        return Err(EngineError::NotCylindrical);
    }
    let m = f.strand_count();
    if xs.len() != m {
        return Err(EngineError::WrongWeightCount {
            expected: m,
            got: xs.len(),
        });
    }
    let levels = f.level_sizes();
    let last = levels[m] as i64;
    let mut prefactor = Rat::one();
    for i in 1..m {
        let exponent = levels[i] as i64 - last;
        if exponent == 0 {
            continue;
        }
        if xs[i - 1].is_zero() {
            if exponent < 0 {
                return Err(EngineError::ZeroToNegativePower {
                    index: i,
                    exponent,
                });
            }
            prefactor = Rat::zero();
            continue;
        }
        prefactor *= Pow::pow(xs[i - 1].clone(), exponent);
    }
    let x_product = xs.iter().fold(Rat::one(), |acc, x| acc * x);
    let shifted = strand_product(f)?.shifted_identity(&x_product)?;
    let value = prefactor * shifted.det_exact()?;
    Ok(EngineResult {
        value: EngineValue::Rational(value),
        matrix_product_dims: strand_dims(f),
        method: MethodTag::CylDet,
    })
}

pub fn count_cyl(f: &FabricGraph, xs: &[Rat]) -> Result<Rat, EngineError> {
    Ok(match count_cyl_traced(f, xs)?.value {
        EngineValue::Rational(r) => r,
        EngineValue::Polynomial(_) => unreachable!("numeric counts are rational"),
    })
}

/// The polynomial X -> det(X I + M), computed from an integer-scaled
/// characteristic polynomial so no polynomial-entry determinant is ever
/// taken. For an n-by-n matrix with entries M = Q/d (Q integer):
/// det(X I + Q/d) = d^{-n} det(dX I + Q) = d^{-n} (-1)^n chi_Q(-dX).
pub fn shifted_det_poly(m: &ExactMatrix) -> Result<RatPoly, EngineError> {
    if !m.is_square() {
        return Err(EngineError::Exact(ExactError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }));
    }
    let n = m.rows();
    let d = m.denominator_lcm();
    let scaled = m.scale(&Rat::from(d.clone()));
    let chi = scaled.charpoly()?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let minus_d = Rat::from(-d);
    let mut d_power = Rat::one();
    // coefficient of X^k in d^{-n} (-1)^n chi(-dX)
    let sign_n = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
    for k in 0..=n {
        let a = Rat::from(chi.coeff(k));
        coeffs.push(a * &sign_n * &d_power);
        d_power *= &minus_d;
    }
    let d_n = Pow::pow(Rat::from(m.denominator_lcm()), n as i64);
    Ok(RatPoly::from_coeffs(coeffs).scale(&(Rat::one() / d_n)))
}

/// Matching polynomial of a cylindrical fabric with every vertical weight
/// set to the same formal x: prefactor monomial times det(x^m I + P).
pub fn match_polynomial_traced(f: &FabricGraph) -> Result<EngineResult, EngineError> {
    if f.kind() != FabricKind::Cylindrical {
        return Err(EngineError::NotCylindrical);
    }
    let m = f.strand_count();
    let levels = f.level_sizes();
    let last = levels[m] as i64;
    let exponent: i64 = (1..m).map(|i| levels[i] as i64 - last).sum();
    if exponent < 0 {
        return Err(EngineError::NegativeFormalPrefactor { exponent });
    }
    let det_part = shifted_det_poly(&strand_product(f)?)?;
    let value = det_part.compose_xpow(m).mul_xpow(exponent as usize);
    Ok(EngineResult {
        value: EngineValue::Polynomial(value),
        matrix_product_dims: strand_dims(f),
        method: MethodTag::CylCharpoly,
    })
}

pub fn match_polynomial(f: &FabricGraph) -> Result<RatPoly, EngineError> {
    Ok(match match_polynomial_traced(f)?.value {
        EngineValue::Polynomial(p) => p,
        EngineValue::Rational(_) => unreachable!("formal counts are polynomials"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::graph::{
        honeycomb_cylinder, square_cylinder_fabric, FabricGraph, Strand, VerticalWeight,
    };
    use crate::oracle::count_matchings;

    fn weighted_strand(bottom: usize, top: usize, edges: &[(usize, usize, i64)]) -> Strand {
        Strand::new(
            bottom,
            top,
            edges
                .iter()
                .map(|&(b, t, w)| (b, t, rat(w)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_strand_rect() {
        let f = FabricGraph::rectangular(vec![weighted_strand(1, 1, &[(1, 1, 5)])]).unwrap();
        assert_eq!(count_rect(&f).unwrap(), rat(5));
    }

    #[test]
    fn stacked_bidiagonal_rect() {
        let a2 = Strand::unit_edges(2, 2, &[(1, 1), (1, 2), (2, 2)]).unwrap();
        let f = FabricGraph::rectangular(vec![a2.clone(), a2.transposed()]).unwrap();
        assert_eq!(count_rect(&f).unwrap(), rat(1));
        // the realized 8-vertex graph agrees
        let g = f.to_multigraph();
        assert_eq!(
            count_matchings(&g).unwrap().as_constant().unwrap(),
            rat(1)
        );
    }

    #[test]
    fn unbalanced_rect_rejected() {
        let f = FabricGraph::rectangular(vec![weighted_strand(
            1,
            2,
            &[(1, 1, 1), (1, 2, 1)],
        )])
        .unwrap();
        assert_eq!(
            count_rect(&f),
            Err(EngineError::Unbalanced { bottom: 1, top: 2 })
        );
        assert_eq!(count_cyl(&f, &[rat(1)]), Err(EngineError::NotCylindrical));
    }

    #[test]
    fn honeycomb_counts_at_unit_weights() {
        let f = honeycomb_cylinder(2, 2).unwrap();
        assert_eq!(count_cyl(&f, &[rat(1), rat(1)]).unwrap(), rat(2));
        let f = honeycomb_cylinder(2, 3).unwrap();
        assert_eq!(count_cyl(&f, &[rat(1), rat(1)]).unwrap(), rat(3));
        let f = square_cylinder_fabric(2, 4).unwrap();
        assert_eq!(count_cyl(&f, &[rat(1), rat(1)]).unwrap(), rat(29));
        assert_eq!(count_rect(&f), Err(EngineError::NotRectangular));
    }

    #[test]
    fn honeycomb_prefactor_tracks_levels() {
        // levels 1, 2, 1: count is x1 * (x1 x2 + 2)
        let f = honeycomb_cylinder(2, 3).unwrap();
        assert_eq!(count_cyl(&f, &[rat(2), rat(3)]).unwrap(), rat(16));
        assert_eq!(count_cyl(&f, &[rat(0), rat(7)]).unwrap(), rat(0));
        assert_eq!(
            count_cyl(&f, &[ratio(1, 2), rat(4)]).unwrap(),
            ratio(1, 2) * (rat(2) + rat(2))
        );
    }

    #[test]
    fn narrow_last_level_needs_nonzero_weight() {
        // levels 2, 1, 2: exponent of x1 is -1
        let s1 = weighted_strand(2, 1, &[(1, 1, 1), (2, 1, 1)]);
        let s2 = weighted_strand(1, 2, &[(1, 1, 1), (1, 2, 1)]);
        let f = FabricGraph::cylindrical(
            vec![s1, s2],
            vec![VerticalWeight::one(), VerticalWeight::one()],
        )
        .unwrap();
        assert_eq!(count_cyl(&f, &[rat(2), rat(3)]).unwrap(), rat(24));
        assert_eq!(
            count_cyl(&f, &[rat(0), rat(3)]),
            Err(EngineError::ZeroToNegativePower {
                index: 1,
                exponent: -1
            })
        );
        // oracle cross-check at (2, 3): M = 2 x2 + x1 x2^2
        let g = f
            .to_multigraph_with(&[
                VerticalWeight::Rational(rat(2)),
                VerticalWeight::Rational(rat(3)),
            ])
            .unwrap();
        assert_eq!(
            count_matchings(&g).unwrap().as_constant().unwrap(),
            rat(24)
        );
        assert_eq!(
            match_polynomial(&f),
            Err(EngineError::NegativeFormalPrefactor { exponent: -1 })
        );
    }

    #[test]
    fn match_polynomials_of_small_cylinders() {
        let p = match_polynomial(&honeycomb_cylinder(2, 2).unwrap()).unwrap();
        assert_eq!(format!("{p}"), "x^2 + 1");
        let p = match_polynomial(&honeycomb_cylinder(2, 3).unwrap()).unwrap();
        assert_eq!(format!("{p}"), "x^3 + 2x");
        let p = match_polynomial(&honeycomb_cylinder(4, 2).unwrap()).unwrap();
        assert_eq!(format!("{p}"), "x^4 + 1");
    }

    #[test]
    fn match_polynomial_agrees_with_formal_oracle() {
        for (m, n) in [(2usize, 2usize), (2, 3), (4, 2), (4, 3), (6, 2)] {
            let f = honeycomb_cylinder(m, n).unwrap();
            let engine = match_polynomial(&f).unwrap();
            let oracle = count_matchings(&f.to_multigraph()).unwrap();
            assert_eq!(engine, oracle, "honeycomb ({m}, {n})");
        }
    }

    #[test]
    fn shifted_det_matches_minor_sums() {
        let p = ExactMatrix::from_integer_rows(&[vec![2, 1], vec![1, 1]]);
        let via_charpoly = shifted_det_poly(&p).unwrap();
        let via_minors = p.principal_minor_sum().unwrap();
        assert_eq!(via_charpoly, via_minors);

        // rational entries go through the integer scaling route
        let q = ExactMatrix::from_rows(vec![
            vec![ratio(1, 2), rat(1)],
            vec![rat(0), ratio(-3, 4)],
        ])
        .unwrap();
        let poly = shifted_det_poly(&q).unwrap();
        for x in [rat(0), rat(1), ratio(2, 3), rat(-5)] {
            let direct = q.shifted_identity(&x).unwrap().det_exact().unwrap();
            assert_eq!(poly.eval(&x), direct);
        }
    }

    #[test]
    fn cyclic_shift_leaves_count_alone() {
        let f = square_cylinder_fabric(4, 3).unwrap();
        let xs = [rat(1), rat(2), rat(3), ratio(1, 5)];
        let base = count_cyl(&f, &xs).unwrap();
        let mut strands = f.strands().to_vec();
        strands.rotate_left(1);
        let mut weights = xs.to_vec();
        weights.rotate_left(1);
        let rotated = FabricGraph::cylindrical(
            strands,
            weights
                .iter()
                .map(|x| VerticalWeight::Rational(x.clone()))
                .collect(),
        )
        .unwrap();
        assert_eq!(count_cyl(&rotated, &weights).unwrap(), base);
    }

    #[test]
    fn empty_levels_count_one() {
        let s = Strand::new(0, 0, vec![]).unwrap();
        let f = FabricGraph::cylindrical(
            vec![s.clone(), s],
            vec![VerticalWeight::one(), VerticalWeight::one()],
        )
        .unwrap();
        assert_eq!(count_cyl(&f, &[rat(7), rat(9)]).unwrap(), rat(1));
    }
}
