//! Structured nesting-matrix designs and isomorphism repair.
//!
//! Both designs fix the top `n - 1` rows so that a chosen coordinate is
//! cyclic regardless of the last row, which stays free. The repair step
//! then picks the last row as `(r_1 M, ..., r_n M)` with
//! `sum_i r_i C^(n,i) = 1` over the designated columns, which forces
//! `det W = M` and makes the code isomorphic to `Z_M`.

use serde::{Deserialize, Serialize};

use crate::exact::{rat_int, solve_diophantine, Int, Mat, Rat};
use crate::lattice::{Lattice, MatF, NumericPolicy};
use crate::{Error, Result};

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Serialized design description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WDesign {
    pub kind: DesignKind,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    #[serde(default)]
    pub c: Option<i64>,
    pub m: i64,
    /// Free entries of the identity-block rows in the trailing columns;
    /// one row of 2 (S2) or 3 (S3) entries per block row. Defaults to zero.
    #[serde(default)]
    pub fill: Option<Vec<Vec<i64>>>,
    /// Explicit last row; required when no isomorphism repair is requested.
    #[serde(default)]
    pub last_row: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DesignKind {
    S2,
    S3,
}

/// Columns whose last-row entries the repair step may use.
pub fn designated_columns(kind: DesignKind, n: usize) -> Vec<usize> {
    match kind {
        DesignKind::S2 => vec![n - 2, n - 1],
        DesignKind::S3 => vec![n - 3, n - 2, n - 1],
    }
}

/// Top `n - 1` rows of the S2 design: first row `(0, ..., 0, a, b)` with
/// `gcd(a, b) = 1`, then an identity block with free trailing entries.
pub fn s2_top(n: usize, a: i64, b: i64, fill: Option<&[Vec<i64>]>) -> Result<Mat> {
    if n < 2 {
        return Err(Error::InvalidParameter("S2 needs n >= 2".into()));
    }
    let g = a.gcd(&b);
    if g != 1 {
        return Err(Error::GcdCondition(format!("gcd({a}, {b}) = {g} != 1")));
    }
    let fill = check_fill(fill, n - 2, 2)?;
    let mut top = Mat::zeros(n - 1, n);
    top.set(0, n - 2, rat_int(a));
    top.set(0, n - 1, rat_int(b));
    for r in 1..n - 1 {
        top.set(r, r - 1, rat_int(1));
        if let Some(f) = &fill {
            top.set(r, n - 2, rat_int(f[r - 1][0]));
            top.set(r, n - 1, rat_int(f[r - 1][1]));
        }
    }
    Ok(top)
}

/// Top `n - 1` rows of the S3 design: first row `(0, ..., 0, a, b, c)`
/// with `gcd(-b + c, a) = 1`, identity block, and row `n - 1` equal to
/// `(0, ..., 0, 1, 1)`.
pub fn s3_top(n: usize, a: i64, b: i64, c: i64, fill: Option<&[Vec<i64>]>) -> Result<Mat> {
    if n < 3 {
        return Err(Error::InvalidParameter("S3 needs n >= 3".into()));
    }
    let g = (-b + c).gcd(&a);
    if g != 1 {
        return Err(Error::GcdCondition(format!(
            "gcd(-b + c, a) = gcd({}, {a}) = {g} != 1",
            -b + c
        )));
    }
    let fill = check_fill(fill, n - 3, 3)?;
    let mut top = Mat::zeros(n - 1, n);
    top.set(0, n - 3, rat_int(a));
    top.set(0, n - 2, rat_int(b));
    top.set(0, n - 1, rat_int(c));
    for r in 1..n - 2 {
        top.set(r, r - 1, rat_int(1));
        if let Some(f) = &fill {
            top.set(r, n - 3, rat_int(f[r - 1][0]));
            top.set(r, n - 2, rat_int(f[r - 1][1]));
            top.set(r, n - 1, rat_int(f[r - 1][2]));
        }
    }
    top.set(n - 2, n - 2, rat_int(1));
    top.set(n - 2, n - 1, rat_int(1));
    Ok(top)
}

fn check_fill(
    fill: Option<&[Vec<i64>]>,
    rows: usize,
    width: usize,
) -> Result<Option<Vec<Vec<i64>>>> {
    match fill {
        None => Ok(None),
        Some(f) => {
            if f.len() != rows || f.iter().any(|r| r.len() != width) {
                return Err(Error::InvalidParameter(format!(
                    "fill must be {rows} rows of {width} entries"
                )));
            }
            Ok(Some(f.to_vec()))
        }
    }
}

/// Stack an explicit last row under the top rows and check full rank.
pub fn with_last_row(top: &Mat, last: &[i64]) -> Result<Mat> {
    let n = top.cols();
    if last.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: last.len(),
        });
    }
    let mut rows: Vec<Vec<Rat>> = (0..top.rows()).map(|r| top.row(r)).collect();
    rows.push(last.iter().map(|&v| rat_int(v)).collect());
    let w = Mat::from_rows(rows);
    if w.det()?.is_zero() {
        return Err(Error::RankDeficient);
    }
    Ok(w)
}

/// Last-row cofactors `C^(n,k)` of the (incomplete) matrix: the signed
/// minors obtained by deleting the absent last row and column `k`. Only
/// the top rows enter, so they are defined before the last row is chosen.
pub fn last_row_cofactors(top: &Mat) -> Result<Vec<Int>> {
    let n = top.cols();
    if top.rows() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: top.rows(),
        });
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let minor_rows: Vec<Vec<Rat>> = (0..n - 1)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != k)
                    .map(|c| top.at(r, c).clone())
                    .collect()
            })
            .collect();
        let d = Mat::from_rows(minor_rows).det()?;
        if !d.is_integer() {
            return Err(Error::Parse("top rows must be integer".into()));
        }
        let sign = if (n - 1 + k) % 2 == 0 { 1 } else { -1 };
        out.push(d.to_integer() * Int::from(sign));
    }
    Ok(out)
}

/// Pick the last row `(r_1 M, ..., r_n M)` with `sum r_k C^(n,k) = 1`,
/// using only the designated columns. The cofactor expansion along the
/// last row then gives `det W = M` exactly.
pub fn make_isomorphic_last_row(
    top: &Mat,
    free_cols: &[usize],
    m: i64,
) -> Result<(Vec<Int>, Mat)> {
    if m < 1 {
        return Err(Error::InvalidParameter("M must be >= 1".into()));
    }
    let n = top.cols();
    let cof = last_row_cofactors(top)?;
    let coeffs: Vec<Int> = free_cols.iter().map(|&k| cof[k].clone()).collect();
    let sol = solve_diophantine(&coeffs, &Int::from(1))?.ok_or(Error::NoSolution)?;
    let mut r = vec![Int::zero(); n];
    for (&k, s) in free_cols.iter().zip(sol) {
        r[k] = s;
    }
    let last: Vec<Rat> = r.iter().map(|ri| Rat::from(ri * Int::from(m))).collect();
    let mut rows: Vec<Vec<Rat>> = (0..top.rows()).map(|row| top.row(row)).collect();
    rows.push(last);
    let w = Mat::from_rows(rows);
    let det = w.det()?.to_integer();
    if det.abs() != Int::from(m) {
        return Err(Error::InvalidParameter(format!(
            "repaired determinant {det} != ±{m}"
        )));
    }
    Ok((r, w))
}

/// Build `W` from a serialized design. With `iso`, the last row is chosen
/// by [`make_isomorphic_last_row`] and the multipliers `r` are returned;
/// otherwise the explicit `last_row` is required.
pub fn design_w(design: &WDesign, iso: bool) -> Result<(Mat, Option<Vec<Int>>)> {
    let fill = design.fill.as_deref();
    let top = match design.kind {
        DesignKind::S2 => s2_top(design.n, design.a, design.b, fill)?,
        DesignKind::S3 => {
            let c = design
                .c
                .ok_or_else(|| Error::InvalidParameter("S3 needs c".into()))?;
            s3_top(design.n, design.a, design.b, c, fill)?
        }
    };
    if iso {
        let cols = designated_columns(design.kind, design.n);
        let (r, w) = make_isomorphic_last_row(&top, &cols, design.m)?;
        Ok((w, Some(r)))
    } else {
        let last = design
            .last_row
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("design needs last_row".into()))?;
        Ok((with_last_row(&top, last)?, None))
    }
}

/// `G_c = G_s W^{-1}`, in the numeric backend of the shaping lattice.
pub fn derive_coding_lattice(ls: &Lattice, w: &Mat) -> Result<Lattice> {
    if !w.is_square() || w.cols() != ls.dim() {
        return Err(Error::DimensionMismatch {
            expected: ls.dim(),
            got: w.cols(),
        });
    }
    match ls.generator_exact() {
        Some(gs) => {
            let gc = gs.mul(&w.inverse()?)?;
            let lat = Lattice::from_exact(gc)?;
            Ok(lat)
        }
        None => {
            let wf = MatF::from_rows(w.to_f64_rows());
            let gc = ls.generator().mul(&wf.inverse()?);
            let tol = match ls.policy() {
                NumericPolicy::Float { tol } => tol,
                NumericPolicy::Exact => crate::lattice::DEFAULT_TOL,
            };
            Lattice::from_float(gc, tol)
        }
    }
}

/// Convenience: shaping lattice by short name used across the CLI.
pub fn named_lattice(name: &str, policy: NumericPolicy) -> Result<Lattice> {
    match name {
        "a2" => match policy {
            NumericPolicy::Exact => Err(Error::InvalidParameter(
                "A_2 has an irrational generator; use --float".into(),
            )),
            NumericPolicy::Float { tol } => {
                Lattice::from_float(crate::lattice::a2_generator(), tol)
            }
        },
        "e8" => match policy {
            NumericPolicy::Exact => Lattice::from_exact(crate::lattice::e8_generator()),
            NumericPolicy::Float { tol } => {
                let g = MatF::from_rows(crate::lattice::e8_generator().to_f64_rows());
                Lattice::from_float(g, tol)
            }
        },
        other => {
            if let Some(dims) = other.strip_prefix("zn:") {
                let n: usize = dims
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dimension in {other:?}")))?;
                if n == 0 {
                    return Err(Error::InvalidParameter("n must be >= 1".into()));
                }
                match policy {
                    NumericPolicy::Exact => Ok(Lattice::zn(n)),
                    NumericPolicy::Float { tol } => {
                        Lattice::from_float(MatF::identity(n), tol)
                    }
                }
            } else {
                Err(Error::Parse(format!(
                    "unknown lattice {other:?}; expected zn:N, a2 or e8"
                )))
            }
        }
    }
}
