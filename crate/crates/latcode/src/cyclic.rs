//! Cyclicity of coordinates of a nested code.
//!
//! Coordinate `i` of the code generates the whole codebook iff the segment
//! from the origin to `g_i` is primitive in the shaping basis, which reduces
//! to `gcd` of the `i`-th adjugate column of `W` being 1.

use num_traits::{Signed, Zero};

use crate::exact::{gcd_vec, to_i64, Int, Mat};
use crate::nested::{Codeword, NestedCode};
use crate::{Error, Result};

/// Guard on the literal generator-order scan.
pub const MAX_ORDER_SCAN: i64 = 100_000;

/// Per-coordinate cyclicity evidence: the adjugate column and its gcd.
#[derive(Clone, Debug)]
pub struct CoordinateVerdict {
    pub coordinate: usize,
    pub q: Vec<Int>,
    pub gcd: Int,
    pub cyclic: bool,
}

#[derive(Clone, Debug)]
pub struct CyclicityReport {
    /// Codebook size `|det W|`.
    pub m: Int,
    pub verdicts: Vec<CoordinateVerdict>,
}

impl CyclicityReport {
    pub fn is_cyclic(&self, coordinate: usize) -> bool {
        self.verdicts[coordinate].cyclic
    }

    pub fn any_cyclic(&self) -> bool {
        self.verdicts.iter().any(|v| v.cyclic)
    }
}

/// Decide cyclicity of every coordinate from the adjugate columns of `W`.
pub fn cyclic_coordinates(w: &Mat) -> Result<CyclicityReport> {
    if !w.is_square() {
        return Err(Error::NonSquare {
            rows: w.rows(),
            cols: w.cols(),
        });
    }
    if !w.is_integer() {
        return Err(Error::Parse("W must be an integer matrix".into()));
    }
    let det = w.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let m = det.to_integer().abs();
    let adj = w.adjugate()?;
    let n = w.rows();
    let verdicts = (0..n)
        .map(|i| {
            let q: Vec<Int> = adj.col(i).iter().map(|r| r.to_integer()).collect();
            let gcd = gcd_vec(&q);
            let cyclic = gcd == Int::from(1);
            CoordinateVerdict {
                coordinate: i,
                q,
                gcd,
                cyclic,
            }
        })
        .collect();
    Ok(CyclicityReport { m, verdicts })
}

/// A nonzero integer vector is primitive iff its entries are coprime.
pub fn is_primitive(b: &[Int]) -> Result<bool> {
    if b.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(gcd_vec(b) == Int::from(1))
}

/// n = 2 shortcut: coordinate `i` is cyclic iff the entries of the *other*
/// row of `W` are coprime.
pub fn n2_row_coprime(w: &Mat) -> Result<[bool; 2]> {
    if w.rows() != 2 || w.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: w.rows().max(w.cols()),
        });
    }
    let coprime = |r: usize| {
        let row: Vec<Int> = w.row(r).iter().map(|x| x.to_integer()).collect();
        gcd_vec(&row) == Int::from(1)
    };
    Ok([coprime(1), coprime(0)])
}

/// Encode multiplier `k` on a single cyclic coordinate: `k g_coord mod Λ_s`.
pub fn cyclic_encode(code: &NestedCode, k: i64, coord: usize) -> Result<Codeword> {
    let report = cyclic_coordinates(code.w())?;
    if coord >= code.dim() {
        return Err(Error::DimensionMismatch {
            expected: code.dim(),
            got: coord + 1,
        });
    }
    if !report.is_cyclic(coord) {
        return Err(Error::NotCyclic(coord));
    }
    let m = code.size();
    if k < 0 || k >= m {
        return Err(Error::MultiplierOutOfRange { k, m });
    }
    let mut v = vec![0i64; code.dim()];
    v[coord] = k;
    code.reduce_index(&v)
}

/// Literal order of `g_coord` in `Λ_c / Λ_s`: the least `k >= 1` with
/// `k g_coord` in `Λ_s`, i.e. `M | k q_i` componentwise for the adjugate
/// column `q`. Independent of the gcd criterion; used as its oracle.
pub fn generator_order(w: &Mat, coord: usize) -> Result<i64> {
    let report = cyclic_coordinates(w)?;
    let m = to_i64(&report.m)?;
    if m > MAX_ORDER_SCAN {
        return Err(Error::CodebookTooLarge {
            m,
            max: MAX_ORDER_SCAN,
        });
    }
    let q: Vec<i64> = report.verdicts[coord]
        .q
        .iter()
        .map(to_i64)
        .collect::<Result<_>>()?;
    for k in 1..=m {
        if q.iter().all(|&qi| (qi.wrapping_mul(k)) % m == 0) {
            return Ok(k);
        }
    }
    unreachable!("k = M always satisfies the divisibility");
}
