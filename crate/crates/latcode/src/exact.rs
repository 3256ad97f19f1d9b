//! Exact integer and rational matrix arithmetic.
//!
//! Everything algebraic in this crate (determinants, adjugates, gcd tests,
//! Diophantine witnesses) runs through this module so that no verdict ever
//! depends on floating-point rounding. Determinants use fraction-free
//! (Bareiss) elimination: integer input stays integer through every
//! intermediate step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer `Rat`.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Shorthand for the fraction `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Dense rational matrix, row-major. All-integer matrices are the common
/// case and are detected where it matters (Bareiss, adjugate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
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

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect())
    }

    /// Integer matrix-vector product for an all-integer matrix.
    pub fn mul_i64_vec(&self, v: &[i64]) -> Result<Vec<Int>> {
        let ints = self.int_entries().ok_or(Error::Parse(
            "integer matrix expected".into(),
        ))?;
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Int::zero();
                for c in 0..self.cols {
                    acc += &ints[r * self.cols + c] * v[c];
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    /// Row-major integer entries, or `None` if any entry is fractional.
    pub fn int_entries(&self) -> Option<Vec<Int>> {
        if !self.is_integer() {
            return None;
        }
        Some(self.data.iter().map(|v| v.to_integer()).collect())
    }

    pub fn int_at(&self, r: usize, c: usize) -> Int {
        self.at(r, c).to_integer()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.at(r, c).to_f64().expect("finite rational"))
                    .collect()
            })
            .collect()
    }

    /// Exact determinant via fraction-free Bareiss elimination.
    ///
    /// Rational rows are first cleared to integers (tracking the scale), so
    /// every intermediate value is an integer and the result is exact.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        // Clear denominators row by row.
        let mut scale = Rat::one();
        let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut lcm = Int::one();
            for c in 0..n {
                lcm = lcm.lcm(self.at(r, c).denom());
            }
            scale *= Rat::from_integer(lcm.clone());
            a.push(
                (0..n)
                    .map(|c| (self.at(r, c) * Rat::from_integer(lcm.clone())).to_integer())
                    .collect(),
            );
        }
        let det_int = bareiss_det(&mut a);
        Ok(Rat::from_integer(det_int) / scale)
    }

    /// Adjugate: the transpose of the cofactor matrix, so that
    /// `adjugate(m) * m = det(m) * I` holds even when `m` is singular.
    pub fn adjugate(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut adj = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let mut cof = minor.det()?;
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                // Cofactor of (i, j) lands transposed at (j, i).
                adj.set(j, i, cof);
            }
        }
        Ok(adj)
    }

    /// Submatrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Mat {
        let rows = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != c)
                    .map(|j| self.at(i, j).clone())
                    .collect()
            })
            .collect();
        Mat::from_rows(rows)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
            let pivot = pivot.ok_or(Error::Singular)?;
            if pivot != col {
                for c in 0..n {
                    let tmp = a.at(pivot, c).clone();
                    a.set(pivot, c, a.at(col, c).clone());
                    a.set(col, c, tmp);
                    let tmp = inv.at(pivot, c).clone();
                    inv.set(pivot, c, inv.at(col, c).clone());
                    inv.set(col, c, tmp);
                }
            }
            let p = a.at(col, col).clone();
            for c in 0..n {
                a.set(col, c, a.at(col, c) / &p);
                inv.set(col, c, inv.at(col, c) / &p);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let av = a.at(r, c) - &(a.at(col, c) * &f);
                    a.set(r, c, av);
                    let iv = inv.at(r, c) - &(inv.at(col, c) * &f);
                    inv.set(r, c, iv);
                }
            }
        }
        Ok(inv)
    }
}

/// Bareiss fraction-free determinant of an integer matrix (consumed).
fn bareiss_det(a: &mut [Vec<Int>]) -> Int {
    let n = a.len();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                debug_assert!((&num % &prev).is_zero());
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Non-negative gcd of a vector; the all-zero vector has gcd 0.
pub fn gcd_vec(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// One particular solution `x` of `coeffs . x = target`, by extended Euclid
/// folded left to right, or `None` when `gcd(coeffs)` does not divide the
/// target.
pub fn solve_diophantine(coeffs: &[Int], target: &Int) -> Result<Option<Vec<Int>>> {
    if coeffs.is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    // Invariant: sol . coeffs[..k] = g, with g = gcd(coeffs[..k]) >= 0.
    let mut g = Int::zero();
    let mut sol: Vec<Int> = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let e = g.extended_gcd(c);
        for s in sol.iter_mut() {
            *s *= &e.x;
        }
        sol.push(e.y);
        g = e.gcd;
    }
    if g.is_zero() {
        return Ok(if target.is_zero() {
            Some(vec![Int::zero(); coeffs.len()])
        } else {
            None
        });
    }
    if !(target % &g).is_zero() {
        return Ok(None);
    }
    let q = target / &g;
    for s in sol.iter_mut() {
        *s *= &q;
    }
    Ok(Some(sol))
}

/// `v` and `w` as an exact dot product.
pub fn dot(v: &[Int], w: &[Int]) -> Int {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

pub fn to_i64(v: &Int) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("{v} exceeds i64 range")))
}
