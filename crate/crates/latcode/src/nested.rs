//! Nested lattice codes and rectangular encoding.
//!
//! A codeword is `y = G_c b - Q_{Λ_s}(G_c b)`, the mod-`Λ_s` reduction of a
//! coding-lattice point. Internally every codeword is carried as its integer
//! index `v` with `y = G_c v`, so codeword equality is integer equality in
//! both numeric backends.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::exact::{dot, gcd_vec, solve_diophantine, to_i64, Int, Mat};
use crate::lattice::{sublattice_w, Lattice, Point};
use crate::quantize::quantize;
use crate::{Error, Result};

/// Guard on enumerated codebook sizes.
pub const MAX_CODEBOOK: i64 = 1_000_000;

/// A validated nested code `Λ_s ⊆ Λ_c` with its rectangular encoding
/// diagonal `(M_1, ..., M_n)`.
#[derive(Clone, Debug)]
pub struct NestedCode {
    lc: Lattice,
    ls: Lattice,
    w: Mat,
    m: i64,
    diag: Vec<i64>,
}

/// A codeword: `point = G_c * index`.
#[derive(Clone, Debug, PartialEq)]
pub struct Codeword {
    pub index: Vec<i64>,
    pub point: Point,
}

/// The full codebook with lookup in both directions.
#[derive(Clone, Debug)]
pub struct Codebook {
    entries: Vec<(Vec<i64>, Codeword)>,
    by_index: HashMap<Vec<i64>, usize>,
}

impl Codebook {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Vec<i64>, Codeword)] {
        &self.entries
    }

    /// Info vector of the codeword with coding-lattice index `v`.
    pub fn info_of(&self, v: &[i64]) -> Option<&[i64]> {
        self.by_index.get(v).map(|&i| self.entries[i].0.as_slice())
    }

    pub fn codeword_of(&self, b: &[i64]) -> Option<&Codeword> {
        self.entries
            .iter()
            .find(|(info, _)| info == b)
            .map(|(_, cw)| cw)
    }
}

impl NestedCode {
    /// Validates nesting, integrality of `W` and the diagonal product.
    pub fn new(lc: Lattice, ls: Lattice, diag: Vec<i64>) -> Result<NestedCode> {
        let w = sublattice_w(&lc, &ls)?;
        let m_rat = w.det()?;
        let m = to_i64(&num_traits::Signed::abs(&m_rat.to_integer()))?;
        if m == 0 {
            return Err(Error::Singular);
        }
        if diag.len() != lc.dim() {
            return Err(Error::DimensionMismatch {
                expected: lc.dim(),
                got: diag.len(),
            });
        }
        if diag.iter().any(|&d| d < 1) {
            return Err(Error::InvalidParameter(
                "encoding diagonal entries must be >= 1".into(),
            ));
        }
        let product: i64 = diag.iter().product();
        if product != m {
            return Err(Error::DiagonalProductMismatch { product, m });
        }
        Ok(NestedCode { lc, ls, w, m, diag })
    }

    pub fn coding(&self) -> &Lattice {
        &self.lc
    }

    pub fn shaping(&self) -> &Lattice {
        &self.ls
    }

    pub fn w(&self) -> &Mat {
        &self.w
    }

    pub fn size(&self) -> i64 {
        self.m
    }

    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.lc.dim()
    }

    /// `x mod Λ_s = x - Q_{Λ_s}(x)`.
    pub fn mod_shaping(&self, x: &Point) -> Result<Point> {
        let q = quantize(&self.ls, x)?;
        Ok(x.sub(&q.point))
    }

    /// Reduce a coding-lattice point given by its integer index:
    /// `G_c v mod Λ_s`, returned in canonical index form.
    pub(crate) fn reduce_index(&self, v: &[i64]) -> Result<Codeword> {
        let x = self.lc.point_from_index(v);
        let q = quantize(&self.ls, &x)?;
        // y = G_c v - G_s z = G_c (v - W z)
        let wz = self.w.mul_i64_vec(&q.index)?;
        let index: Vec<i64> = v
            .iter()
            .zip(&wz)
            .map(|(a, b)| Ok(a - to_i64(b)?))
            .collect::<Result<_>>()?;
        let point = self.lc.point_from_index(&index);
        Ok(Codeword { index, point })
    }

    /// Rectangular encoding of an admissible info vector.
    pub fn encode(&self, b: &[i64]) -> Result<Codeword> {
        if b.len() != self.diag.len() {
            return Err(Error::DimensionMismatch {
                expected: self.diag.len(),
                got: b.len(),
            });
        }
        for (i, (&bi, &mi)) in b.iter().zip(&self.diag).enumerate() {
            if bi < 0 || bi >= mi {
                return Err(Error::OutOfRangeInfo {
                    coord: i,
                    value: bi,
                    bound: mi,
                });
            }
        }
        self.reduce_index(b)
    }

    /// Encode every admissible info vector; fails with
    /// [`Error::BijectivityViolation`] if two collide (i.e. the chosen
    /// parallelotope is not a fundamental region).
    pub fn enumerate_codebook(&self) -> Result<Codebook> {
        if self.m > MAX_CODEBOOK {
            return Err(Error::CodebookTooLarge {
                m: self.m,
                max: MAX_CODEBOOK,
            });
        }
        let mut entries: Vec<(Vec<i64>, Codeword)> = Vec::with_capacity(self.m as usize);
        let mut by_index = HashMap::with_capacity(self.m as usize);
        for b in info_vectors(&self.diag) {
            let cw = self.reduce_index(&b)?;
            if let Some(&prev) = by_index.get(&cw.index) {
                let prev_b: &Vec<i64> = &entries[prev as usize].0;
                return Err(Error::BijectivityViolation(prev_b.clone(), b));
            }
            by_index.insert(cw.index.clone(), entries.len() as u64);
            entries.push((b, cw));
        }
        let by_index = by_index
            .into_iter()
            .map(|(k, v)| (k, v as usize))
            .collect();
        Ok(Codebook { entries, by_index })
    }

    /// Inverse of encoding. Uses a Bezout fast path for cyclic diagonals
    /// `(1, ..., M, ..., 1)` and falls back to a table lookup otherwise.
    pub fn index(&self, y: &Point) -> Result<Vec<i64>> {
        let v = self.coding_index_of(y)?;
        // Canonical coset leader: Q_{Λ_s}(y) must be the origin.
        let q = quantize(&self.ls, y)?;
        if q.index.iter().any(|&z| z != 0) {
            return Err(Error::NotACodeword);
        }
        if let Some(t) = self.cyclic_coordinate() {
            if let Some(b) = self.bezout_index(&v, t)? {
                return Ok(b);
            }
        }
        let cb = self.enumerate_codebook()?;
        cb.info_of(&v)
            .map(|b| b.to_vec())
            .ok_or(Error::NotACodeword)
    }

    /// The single coordinate carrying the whole codebook, when the encoding
    /// diagonal is `(1, ..., M, ..., 1)`.
    pub fn cyclic_coordinate(&self) -> Option<usize> {
        if self.m == 1 {
            return Some(self.diag.len() - 1);
        }
        let mut t = None;
        for (i, &d) in self.diag.iter().enumerate() {
            if d > 1 {
                if t.is_some() {
                    return None;
                }
                t = Some(i);
            }
        }
        t
    }

    fn bezout_index(&self, v: &[i64], t: usize) -> Result<Option<Vec<i64>>> {
        let adj = self.w.adjugate()?;
        let q_t: Vec<Int> = adj
            .col(t)
            .iter()
            .map(|r| r.to_integer())
            .collect();
        if gcd_vec(&q_t) != Int::from(1) {
            return Ok(None); // not cyclic at t; let the table path decide
        }
        let u = match solve_diophantine(&q_t, &Int::from(1))? {
            Some(u) => u,
            None => return Ok(None),
        };
        // v has adj(W) * v = k q_t - M z, so u . (adj(W) v) = k mod M.
        let vi: Vec<Int> = v.iter().map(|&c| Int::from(c)).collect();
        let adj_v: Vec<Int> = (0..self.dim())
            .map(|r| {
                let row: Vec<Int> = adj.row(r).iter().map(|x| x.to_integer()).collect();
                dot(&row, &vi)
            })
            .collect();
        let m = Int::from(self.m);
        let k = ((dot(&u, &adj_v) % &m) + &m) % &m;
        let mut b = vec![0i64; self.dim()];
        b[t] = k.to_i64().expect("k < M fits i64");
        // The fast path is our own construction; confirm the round trip.
        if self.encode(&b)?.index == v {
            Ok(Some(b))
        } else {
            Err(Error::NotACodeword)
        }
    }

    /// Integer index `v = H_c y`; `NotACodeword` if `y` is not in `Λ_c`.
    fn coding_index_of(&self, y: &Point) -> Result<Vec<i64>> {
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.dim(),
            });
        }
        match (self.lc.check_exact(), y) {
            (Some(h), Point::Exact(yv)) => {
                let hv = h.mul_vec(yv)?;
                let mut v = Vec::with_capacity(hv.len());
                for c in hv {
                    if !c.is_integer() {
                        return Err(Error::NotACodeword);
                    }
                    v.push(to_i64(&c.to_integer())?);
                }
                Ok(v)
            }
            _ => {
                let tol = self
                    .lc
                    .policy()
                    .tol()
                    .max(crate::lattice::DEFAULT_TOL);
                let hv = self.lc.check().mul_vec(&y.to_f64());
                let mut v = Vec::with_capacity(hv.len());
                for c in hv {
                    if (c - c.round()).abs() > tol {
                        return Err(Error::NotACodeword);
                    }
                    v.push(c.round() as i64);
                }
                Ok(v)
            }
        }
    }

    /// `(1/n) log2 M` bits per dimension.
    pub fn code_rate(&self) -> f64 {
        (self.m as f64).log2() / self.dim() as f64
    }
}

/// All admissible info vectors in lexicographic order.
pub fn info_vectors(diag: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let n = diag.len();
    let total: i64 = diag.iter().product();
    let mut current = vec![0i64; n];
    let mut emitted = 0i64;
    std::iter::from_fn(move || {
        if emitted >= total {
            return None;
        }
        let out = current.clone();
        emitted += 1;
        for k in (0..n).rev() {
            current[k] += 1;
            if current[k] < diag[k] {
                break;
            }
            current[k] = 0;
        }
        Some(out)
    })
}

// --- usage metrics ----------------------------------------------------------

/// How the codebook size is specified for usage metrics.
#[derive(Clone, Copy, Debug)]
pub enum SizeSpec {
    /// Total codebook size `M` (cyclic code).
    Total(i64),
    /// Per-coordinate size `K` of a self-similar code, `M = K^n`.
    PerCoordinate(i64),
}

#[derive(Clone, Copy, Debug)]
pub struct UsageMetrics {
    /// Cyclic codeword usage `2^floor(log2 M) / M`.
    pub u_c: f64,
    /// Self-similar usage `2^(n floor(log2 K)) / M`; absent when `M` is not
    /// a perfect n-th power.
    pub u_s: Option<f64>,
}

pub fn usage_metrics(n: u32, spec: SizeSpec) -> Result<UsageMetrics> {
    let (m, k) = match spec {
        SizeSpec::Total(m) => {
            if m < 1 {
                return Err(Error::InvalidParameter("M must be >= 1".into()));
            }
            (m, exact_nth_root(m, n))
        }
        SizeSpec::PerCoordinate(k) => {
            if k < 1 {
                return Err(Error::InvalidParameter("K must be >= 1".into()));
            }
            let m = k
                .checked_pow(n)
                .ok_or_else(|| Error::InvalidParameter("K^n overflows".into()))?;
            (m, Some(k))
        }
    };
    let u_c = 2f64.powi(floor_log2(m) as i32) / m as f64;
    let u_s = k.map(|k| 2f64.powi((n as u64 * floor_log2(k)) as i32) / m as f64);
    Ok(UsageMetrics { u_c, u_s })
}

fn floor_log2(v: i64) -> u64 {
    63 - (v as u64).leading_zeros() as u64
}

fn exact_nth_root(m: i64, n: u32) -> Option<i64> {
    let guess = (m as f64).powf(1.0 / n as f64).round() as i64;
    (guess.max(1) - 1..=guess + 1).find(|&k| k.checked_pow(n) == Some(m))
}

// --- export -----------------------------------------------------------------

/// 12 significant digits, deterministic.
pub fn fmt_sig12(v: f64) -> String {
    format!("{v:.11e}")
}

/// CSV with columns `b_1..b_n, y_1..y_n`.
pub fn codebook_csv(code: &NestedCode, cb: &Codebook) -> String {
    let n = code.dim();
    let mut out = String::new();
    let bs: Vec<String> = (1..=n).map(|i| format!("b_{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|i| format!("y_{i}")).collect();
    out.push_str(&bs.join(","));
    out.push(',');
    out.push_str(&ys.join(","));
    out.push('\n');
    for (b, cw) in cb.entries() {
        let bstr: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        let ystr: Vec<String> = cw.point.to_f64().iter().map(|&v| fmt_sig12(v)).collect();
        out.push_str(&bstr.join(","));
        out.push(',');
        out.push_str(&ystr.join(","));
        out.push('\n');
    }
    out
}

/// JSON export; codeword coordinates are exact fraction strings in exact
/// mode and decimal numbers otherwise.
pub fn codebook_json(code: &NestedCode, cb: &Codebook) -> String {
    use serde_json::{json, Value};
    let entries: Vec<Value> = cb
        .entries()
        .iter()
        .map(|(b, cw)| {
            let y: Value = match &cw.point {
                Point::Exact(v) => {
                    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
                }
                Point::Float(v) => json!(v),
            };
            json!({ "b": b, "y": y })
        })
        .collect();
    serde_json::to_string_pretty(&json!({
        "m": code.size(),
        "diag": code.diag(),
        "entries": entries,
    }))
    .expect("serializable")
}
