//! Dense exact matrices and the determinant-side primitives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{lagrange_interpolate, IntPoly, RatPoly};
use super::{ExactError, Rat};

pub const PERMANENT_LIMIT: usize = 14;
pub const MINOR_SUM_LIMIT: usize = 12;

/// Dense row-major matrix of exact rationals. Zero-dimensional shapes are
/// legal; the determinant of the 0x0 matrix is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::DimensionMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: data.len(),
                right_cols: 1,
            });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(ExactError::DimensionMismatch {
                    left_rows: r,
                    left_cols: c,
                    right_rows: 1,
                    right_cols: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(ExactMatrix { rows: r, cols: c, data })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| super::rat(v)))
            .collect();
        ExactMatrix {
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.entry_mut(c, r) = self.entry(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.entry(k, c);
                    if !b.is_zero() {
                        *out.entry_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// x*I + self, the square pencil the cylindrical count evaluates.
    pub fn shifted_identity(&self, x: &Rat) -> Result<ExactMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            *out.entry_mut(i, i) += x;
        }
        Ok(out)
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(Rat::is_integer)
    }

    fn first_non_integer(&self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.entry(r, c).is_integer() {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Least common multiple of all entry denominators (1 for the empty and
    /// the integer matrix).
    pub fn denominator_lcm(&self) -> BigInt {
        let mut lcm = BigInt::one();
        for v in &self.data {
            lcm = lcm.lcm(v.denom());
        }
        lcm
    }

    pub fn scale(&self, c: &Rat) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> ExactMatrix {
        let mut data = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &r in row_idx {
            for &c in col_idx {
                data.push(self.entry(r, c).clone());
            }
        }
        ExactMatrix {
            rows: row_idx.len(),
            cols: col_idx.len(),
            data,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting. Every division is exact; on an integer matrix every
    /// intermediate stays an integer.
    pub fn det_exact(&self) -> Result<Rat, ExactError> {
        Ok(self.det_with_integrality()?.0)
    }

    /// Determinant plus a diagnostic flag: true when no intermediate value
    /// picked up a denominator. On integer input the flag must come back
    /// true; the fraction-free property test pins that down.
    pub fn det_with_integrality(&self) -> Result<(Rat, bool), ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok((Rat::one(), true));
        }
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|r| (0..n).map(|c| self.entry(r, c).clone()).collect())
            .collect();
        let mut integral = a.iter().flatten().all(Rat::is_integer);
        let mut sign_flip = false;
        let mut prev = Rat::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok((Rat::zero(), integral)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    let val = num / &prev;
                    integral &= val.is_integer();
                    a[i][j] = val;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok((if sign_flip { -det } else { det }, integral))
    }

    /// Permanent by Ryser's inclusion-exclusion over column subsets,
    /// exponential in the dimension and therefore capped.
    pub fn permanent(&self) -> Result<Rat, ExactError> {
        self.permanent_with_limit(PERMANENT_LIMIT)
    }

    pub fn permanent_with_limit(&self, limit: usize) -> Result<Rat, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n > limit.min(63) {
            return Err(ExactError::TooLarge {
                operation: "permanent",
                dim: n,
                limit: limit.min(63),
            });
        }
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut total = Rat::zero();
        for mask in 1u64..(1u64 << n) {
            let mut prod = Rat::one();
            for i in 0..n {
                let mut row_sum = Rat::zero();
                for j in 0..n {
                    if mask & (1 << j) != 0 {
                        row_sum += self.entry(i, j);
                    }
                }
                if row_sum.is_zero() {
                    prod = Rat::zero();
                    break;
                }
                prod *= row_sum;
            }
            if (n as u32 - mask.count_ones()) % 2 == 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        Ok(total)
    }

    /// Characteristic polynomial det(t*I - self) of an integer matrix,
    /// monic with integer coefficients. Computed by exact evaluation at
    /// t = 0..=n followed by Lagrange interpolation, so only the
    /// determinant routine is trusted.
    pub fn charpoly(&self) -> Result<IntPoly, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some((row, col)) = self.first_non_integer() {
            return Err(ExactError::NonIntegerEntries {
                row,
                col,
                entry: self.entry(row, col).to_string(),
            });
        }
        let n = self.rows;
        let mut points = Vec::with_capacity(n + 1);
        for t in 0..=n {
            let t_rat = super::rat(t as i64);
            let shifted = self.scale(&-Rat::one()).shifted_identity(&t_rat)?;
            points.push((t_rat, shifted.det_exact()?));
        }
        let poly = lagrange_interpolate(&points);
        let int_poly = poly
            .to_int_poly()
            .expect("charpoly of an integer matrix has integer coefficients");
        debug_assert_eq!(int_poly.degree(), Some(n).filter(|&d| d > 0).or(Some(0)));
        debug_assert!(int_poly.leading().is_some_and(|c| c.is_one()));
        Ok(int_poly)
    }

    /// Sum over all principal minors, packaged as the polynomial
    /// sum_J x^(n-|J|) det(self[J,J]); equals det(x*I + self) expanded
    /// subset by subset.
    pub fn principal_minor_sum(&self) -> Result<RatPoly, ExactError> {
        self.principal_minor_sum_with_limit(MINOR_SUM_LIMIT)
    }

    pub fn principal_minor_sum_with_limit(&self, limit: usize) -> Result<RatPoly, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n > limit.min(30) {
            return Err(ExactError::TooLarge {
                operation: "principal_minor_sum",
                dim: n,
                limit: limit.min(30),
            });
        }
        let mut poly = RatPoly::zero();
        for mask in 0u32..(1u32 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let det = self.submatrix(&idx, &idx).det_exact()?;
            poly.add_monomial(&det, n - idx.len());
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_integer_rows(rows)
    }

    #[test]
    fn det_basics() {
        assert_eq!(ExactMatrix::identity(3).det_exact().unwrap(), rat(1));
        assert_eq!(
            m(&[vec![1, 2], vec![3, 4]]).det_exact().unwrap(),
            rat(-2)
        );
        assert_eq!(ExactMatrix::zeros(0, 0).det_exact().unwrap(), rat(1));
        assert_eq!(m(&[vec![7]]).det_exact().unwrap(), rat(7));
    }

    #[test]
    fn det_of_gram_pencil() {
        // I + A*A^T for the width-4 woven strand, worked out by hand.
        let a = m(&[
            vec![3, 1, 1, 0],
            vec![1, 2, 1, 0],
            vec![1, 1, 4, 1],
            vec![0, 0, 1, 2],
        ]);
        assert_eq!(a.det_exact().unwrap(), rat(29));
    }

    #[test]
    fn det_needs_pivoting() {
        let a = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.det_exact().unwrap(), rat(-1));
        let singular = m(&[vec![0, 0], vec![1, 1]]);
        assert_eq!(singular.det_exact().unwrap(), rat(0));
    }

    #[test]
    fn det_rectangular_rejected() {
        assert!(matches!(
            ExactMatrix::zeros(2, 3).det_exact(),
            Err(ExactError::NotSquare { .. })
        ));
    }

    #[test]
    fn det_handles_rationals() {
        let a = ExactMatrix::from_rows(vec![
            vec![ratio(1, 2), rat(1)],
            vec![rat(1), ratio(1, 2)],
        ])
        .unwrap();
        assert_eq!(a.det_exact().unwrap(), ratio(-3, 4));
    }

    #[test]
    fn permanent_basics() {
        assert_eq!(m(&[vec![1, 1], vec![1, 1]]).permanent().unwrap(), rat(2));
        assert_eq!(
            m(&[vec![1, 2], vec![3, 4]]).permanent().unwrap(),
            rat(10)
        );
        assert_eq!(ExactMatrix::zeros(0, 0).permanent().unwrap(), rat(1));
        let all_ones = ExactMatrix::from_integer_rows(&vec![vec![1; 4]; 4]);
        assert_eq!(all_ones.permanent().unwrap(), rat(24));
    }

    #[test]
    fn permanent_limit_enforced() {
        let big = ExactMatrix::zeros(15, 15);
        assert!(matches!(
            big.permanent(),
            Err(ExactError::TooLarge { .. })
        ));
        assert!(big.permanent_with_limit(15).is_ok());
    }

    #[test]
    fn charpoly_small_cases() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(a.charpoly().unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(
            ExactMatrix::identity(1).charpoly().unwrap(),
            IntPoly::from_i64(&[-1, 1])
        );
        assert_eq!(
            ExactMatrix::zeros(0, 0).charpoly().unwrap(),
            IntPoly::one()
        );
    }

    #[test]
    fn charpoly_rejects_rationals() {
        let a = ExactMatrix::from_rows(vec![vec![ratio(1, 2)]]).unwrap();
        assert!(matches!(
            a.charpoly(),
            Err(ExactError::NonIntegerEntries { .. })
        ));
    }

    #[test]
    fn minor_sum_matches_hand_expansion() {
        // [[2,1],[1,1]]: minors 1 (empty), 2+1 (singletons), 1 (full)
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let p = a.principal_minor_sum().unwrap();
        assert_eq!(p.to_int_poly().unwrap(), IntPoly::from_i64(&[1, 3, 1]));
        // scalar case
        let s = m(&[vec![7]]);
        assert_eq!(
            s.principal_minor_sum().unwrap().to_int_poly().unwrap(),
            IntPoly::from_i64(&[7, 1])
        );
        // empty case is the constant 1
        assert_eq!(
            ExactMatrix::zeros(0, 0).principal_minor_sum().unwrap(),
            RatPoly::one()
        );
    }

    #[test]
    fn minor_sum_equals_shifted_determinant() {
        let a = m(&[vec![1, 0, 2], vec![3, -1, 1], vec![0, 2, 2]]);
        let p = a.principal_minor_sum().unwrap();
        for x in [-2i64, 0, 1, 5] {
            let shifted = a.shifted_identity(&rat(x)).unwrap();
            assert_eq!(p.eval(&rat(x)), shifted.det_exact().unwrap());
        }
    }

    #[test]
    fn zero_dimension_products() {
        let a = ExactMatrix::zeros(0, 3);
        let b = ExactMatrix::zeros(3, 0);
        let p = a.mul(&b).unwrap();
        assert_eq!((p.rows(), p.cols()), (0, 0));
        let q = b.mul(&a).unwrap();
        assert_eq!((q.rows(), q.cols()), (3, 3));
        assert_eq!(q.det_exact().unwrap(), rat(0));
    }
}
