//! Floating-point evaluation of the closed-form products, each paired
//! with its nearest integer. Floats corroborate the exact engine and
//! oracle values; nothing downstream treats a float as truth.
//!
//! Products are accumulated smallest magnitude first, and the fourth-root
//! forms go through log space with explicit sign bookkeeping, so the
//! reported relative gaps stay far below the 1e-6 acceptance line.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::FromPrimitive;
use thiserror::Error;

use crate::exact::{rat, ExactMatrix, IntPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormulaError {
    #[error("this formula needs an even girth of at least 2, got {m}")]
    OddGirth { m: usize },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("radicand evaluated to {value:.3e}; the float product lost its sign")]
    NegativeRadicand { value: f64 },
}

/// A float evaluation with its nearest integer and the relative distance
/// between the two.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaValue {
    pub float_value: f64,
    pub rounded: BigInt,
    pub relative_gap: f64,
}

impl FormulaValue {
    fn from_float(v: f64) -> FormulaValue {
        let r = v.round();
        FormulaValue {
            float_value: v,
            rounded: BigInt::from_f64(r).unwrap_or_default(),
            relative_gap: (v - r).abs() / r.abs().max(1.0),
        }
    }
}

/// Multiplies smallest magnitude first; on long products this keeps
/// rounding error from compounding against one large partial product.
fn stable_product(mut factors: Vec<f64>) -> f64 {
    factors.sort_by(|a, b| {
        a.abs()
            .partial_cmp(&b.abs())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    factors.into_iter().product()
}

fn cos2(num: usize, den: usize) -> f64 {
    let c = (num as f64 * PI / den as f64).cos();
    c * c
}

/// Matching count of the plain rectangular grid with `m` rows and `n`
/// columns as a double product over quarter spectra.
pub fn tfk(m: usize, n: usize) -> Result<FormulaValue, FormulaError> {
    if m == 0 || n == 0 {
        return Err(FormulaError::BadParameter(
            "grid sides must be at least 1".into(),
        ));
    }
    let mut factors = Vec::with_capacity(m.div_ceil(2) * n.div_ceil(2));
    for j in 1..=m.div_ceil(2) {
        for k in 1..=n.div_ceil(2) {
            factors.push(4.0 * cos2(j, m + 1) + 4.0 * cos2(k, n + 1));
        }
    }
    Ok(FormulaValue::from_float(stable_product(factors)))
}

fn check_honeycomb_params(m: usize, n: usize, xs: &[f64]) -> Result<(), FormulaError> {
    if m < 2 || m % 2 != 0 {
        return Err(FormulaError::OddGirth { m });
    }
    if n == 0 {
        return Err(FormulaError::BadParameter(
            "strand paths need at least one vertex".into(),
        ));
    }
    if xs.len() != m {
        return Err(FormulaError::BadParameter(format!(
            "need {m} vertical weights, got {}",
            xs.len()
        )));
    }
    if xs.iter().any(|x| !(*x > 0.0)) {
        return Err(FormulaError::BadParameter(
            "vertical weights must be positive".into(),
        ));
    }
    Ok(())
}

fn honeycomb_prefactor(n: usize, xs: &[f64]) -> f64 {
    if n % 2 == 1 {
        xs.iter().step_by(2).product()
    } else {
        1.0
    }
}

fn honeycomb_factor(k: usize, n: usize, m: usize, x_product: f64) -> f64 {
    let base = 2.0 + 2.0 * (2.0 * k as f64 * PI / (n + 1) as f64).cos();
    x_product + base.powi((m / 2) as i32)
}

/// Weighted matching count of the honeycomb cylinder with m strand paths
/// of n vertices: a product over half the path spectrum, with an extra
/// monomial in the odd-level weights when n is odd.
pub fn honeycomb_formula(m: usize, n: usize, xs: &[f64]) -> Result<FormulaValue, FormulaError> {
    check_honeycomb_params(m, n, xs)?;
    let x_product: f64 = stable_product(xs.to_vec());
    let factors = (1..=n / 2)
        .map(|k| honeycomb_factor(k, n, m, x_product))
        .collect();
    Ok(FormulaValue::from_float(
        honeycomb_prefactor(n, xs) * stable_product(factors),
    ))
}

/// The same count written with the product running over the full spectrum
/// under a square root. Agrees with [`honeycomb_formula`] whenever n is
/// even; for odd n the unpaired middle factor contributes the product of
/// the weights, so the two agree only when that product is 1.
pub fn honeycomb_formula_sqrt_form(
    m: usize,
    n: usize,
    xs: &[f64],
) -> Result<FormulaValue, FormulaError> {
    check_honeycomb_params(m, n, xs)?;
    let x_product: f64 = stable_product(xs.to_vec());
    let factors = (1..=n)
        .map(|k| honeycomb_factor(k, n, m, x_product))
        .collect();
    Ok(FormulaValue::from_float(
        honeycomb_prefactor(n, xs) * stable_product(factors).sqrt(),
    ))
}

fn check_square_params(m: usize, n: usize) -> Result<(), FormulaError> {
    if m < 2 {
        return Err(FormulaError::BadParameter(format!(
            "cylinder girth must be at least 2, got {m}"
        )));
    }
    if n == 0 {
        return Err(FormulaError::BadParameter(
            "a cylinder needs at least one ring".into(),
        ));
    }
    Ok(())
}

fn plus_minus_factors(k: usize, n: usize, m: usize) -> (f64, f64) {
    let c = (k as f64 * PI / (n + 1) as f64).cos();
    let s = (1.0 + c * c).sqrt();
    (
        1.0 + (c + s).powi(m as i32),
        1.0 + (c - s).powi(m as i32),
    )
}

/// Matching count of the even-girth square cylinder: half-spectrum product
/// with the 2^(n mod 2) prefactor.
pub fn square_even_formula(m: usize, n: usize) -> Result<FormulaValue, FormulaError> {
    check_square_params(m, n)?;
    if m % 2 != 0 {
        return Err(FormulaError::OddGirth { m });
    }
    let mut factors = Vec::with_capacity(n);
    for k in 1..=n / 2 {
        let (p, q) = plus_minus_factors(k, n, m);
        factors.push(p);
        factors.push(q);
    }
    let prefactor = if n % 2 == 1 { 2.0 } else { 1.0 };
    Ok(FormulaValue::from_float(
        prefactor * stable_product(factors),
    ))
}

/// The square-root form of [`square_even_formula`]: the full-spectrum
/// product under one square root, no prefactor.
pub fn square_even_sqrt_form(m: usize, n: usize) -> Result<FormulaValue, FormulaError> {
    check_square_params(m, n)?;
    if m % 2 != 0 {
        return Err(FormulaError::OddGirth { m });
    }
    let mut factors = Vec::with_capacity(2 * n);
    for k in 1..=n {
        let (p, q) = plus_minus_factors(k, n, m);
        factors.push(p);
        factors.push(q);
    }
    Ok(FormulaValue::from_float(stable_product(factors).sqrt()))
}

/// Fourth root of a factor product with sign bookkeeping: the overall
/// product is required to be non-negative (individual halves of it may
/// dip negative, but they arrive in equal pairs), and magnitudes are
/// accumulated in log space so huge and tiny factors cannot overflow on
/// the way to the root.
fn fourth_root_of_product(factors: &[f64]) -> Result<f64, FormulaError> {
    let mut negatives = 0usize;
    let mut logs: Vec<f64> = Vec::with_capacity(factors.len());
    for &f in factors {
        if f == 0.0 {
            return Ok(0.0);
        }
        if f < 0.0 {
            negatives += 1;
        }
        logs.push(f.abs().ln());
    }
    let magnitude = (0.25 * stable_sum(logs)).exp();
    if negatives % 2 == 1 {
        return Err(FormulaError::NegativeRadicand {
            value: -magnitude.powi(4),
        });
    }
    Ok(magnitude)
}

fn stable_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| {
        a.abs()
            .partial_cmp(&b.abs())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    terms.into_iter().sum()
}

/// Matching count of the square cylinder for every girth, even or odd:
/// the product of two fourth roots over the full spectrum. The two
/// radicands are equal as products (the second visits the same factors in
/// reverse index order), so they are pooled and rooted together; for odd
/// girth each radicand alone can be negative while the pool stays a
/// perfect square. For odd girth and odd length the count is exactly 0
/// (odd vertex total), which the formula reaches through a vanishing
/// factor; that case is short-circuited so float noise cannot blur the
/// zero.
pub fn square_unified_formula(m: usize, n: usize) -> Result<FormulaValue, FormulaError> {
    check_square_params(m, n)?;
    if m % 2 == 1 && n % 2 == 1 {
        return Ok(FormulaValue::from_float(0.0));
    }
    let mut pooled = Vec::with_capacity(4 * n);
    for k in 1..=n {
        let c = (k as f64 * PI / (n + 1) as f64).cos();
        let s = (1.0 + c * c).sqrt();
        pooled.push(1.0 + (c + s).powi(m as i32));
        pooled.push(1.0 + (c - s).powi(m as i32));
        pooled.push(1.0 + (-c + s).powi(m as i32));
        pooled.push(1.0 + (-c - s).powi(m as i32));
    }
    Ok(FormulaValue::from_float(fourth_root_of_product(&pooled)?))
}

/// Matching count of the odd-girth cylinder written as C_{2m+1,2n}: a
/// double product over the odd quarter angles against the ring spectrum.
pub fn square_odd_formula(m: usize, n: usize) -> Result<FormulaValue, FormulaError> {
    if m == 0 || n == 0 {
        return Err(FormulaError::BadParameter(
            "odd-girth form needs girth at least 3 and an even positive length".into(),
        ));
    }
    let mut factors = Vec::with_capacity(n * (m + 1));
    for k in 1..=n {
        for j in (1..=2 * m + 1).step_by(2) {
            factors.push(4.0 * cos2(j, 4 * m + 2) + 4.0 * cos2(k, 2 * n + 1));
        }
    }
    Ok(FormulaValue::from_float(stable_product(factors)))
}

/// Eigenvalues 2cos(k pi/(n+1)) of the n-vertex path adjacency matrix.
pub fn path_eigenvalues(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| 2.0 * (k as f64 * PI / (n + 1) as f64).cos())
        .collect()
}

/// Eigenvalues 2cos(2k pi/(2n+1)) of the path matrix whose last diagonal
/// entry droops to -1.
pub fn wilted_path_eigenvalues(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| 2.0 * (2.0 * k as f64 * PI / (2 * n + 1) as f64).cos())
        .collect()
}

/// Eigenvalues (cos(k pi/(n+1)) +/- sqrt(1+cos^2))^2 of the woven strand's
/// Gram matrix. For odd n the two branches coincide at 1 for the middle
/// index; that eigenvalue is supplied once, keeping the list length n.
pub fn strand_gram_eigenvalues(n: usize) -> Vec<f64> {
    let top = n.div_ceil(2);
    let mut out = Vec::with_capacity(n);
    for k in 1..=top {
        let c = (k as f64 * PI / (n + 1) as f64).cos();
        let s = (1.0 + c * c).sqrt();
        out.push((c + s) * (c + s));
        if !(n % 2 == 1 && k == top) {
            out.push((c - s) * (c - s));
        }
    }
    out
}

/// Adjacency matrix of the path on n vertices.
pub fn path_adjacency(n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        *m.entry_mut(i, i + 1) = rat(1);
        *m.entry_mut(i + 1, i) = rat(1);
    }
    m
}

/// The path adjacency matrix with its last diagonal entry set to -1.
pub fn wilted_path_matrix(n: usize) -> ExactMatrix {
    let mut m = path_adjacency(n);
    if n > 0 {
        *m.entry_mut(n - 1, n - 1) = rat(-1);
    }
    m
}

/// Chebyshev polynomial of the first kind, T_n, by the three-term
/// recurrence.
pub fn chebyshev_t(n: usize) -> IntPoly {
    chebyshev(n, IntPoly::from_i64(&[0, 1]))
}

/// Chebyshev polynomial of the second kind, U_n.
pub fn chebyshev_u(n: usize) -> IntPoly {
    chebyshev(n, IntPoly::from_i64(&[0, 2]))
}

fn chebyshev(n: usize, first: IntPoly) -> IntPoly {
    let two_x = IntPoly::from_i64(&[0, 2]);
    let mut prev = IntPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = first;
    for _ in 1..n {
        let next = two_x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Both sides of the odd cosine-square product identity: the left side is
/// prod over odd k up to 2m+1 of (4z^2 + 4cos^2(k pi/(4m+2))); the right
/// side is 2z sqrt(-(1-(z+sqrt(1+z^2))^(4m+2))(1-(z-sqrt(1+z^2))^(4m+2))).
/// They agree for z >= 0.
pub fn cosine_square_product_sides(z: f64, m: usize) -> Result<(f64, f64), FormulaError> {
    let factors = (1..=2 * m + 1)
        .step_by(2)
        .map(|k| 4.0 * z * z + 4.0 * cos2(k, 4 * m + 2))
        .collect();
    let left = stable_product(factors);
    let s = (1.0 + z * z).sqrt();
    let e = (4 * m + 2) as i32;
    let radicand = -(1.0 - (z + s).powi(e)) * (1.0 - (z - s).powi(e));
    if radicand < -1e-12 * (1.0 + left.abs()) {
        return Err(FormulaError::NegativeRadicand { value: radicand });
    }
    let right = 2.0 * z * radicand.max(0.0).sqrt();
    Ok((left, right))
}

/// The footnote product: prod_{k=1}^n 2cos(k pi/(2n+1)), which telescopes
/// to exactly 1.
pub fn cosine_double_product(n: usize) -> f64 {
    stable_product(
        (1..=n)
            .map(|k| 2.0 * (k as f64 * PI / (2 * n + 1) as f64).cos())
            .collect(),
    )
}
