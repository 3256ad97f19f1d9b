//! Lattice values, membership tests and the nesting matrix `W = H_c * G_s`.
//!
//! Two numeric backends coexist. An exact lattice keeps its generator as a
//! rational matrix and all geometry on rational points is exact. A float
//! lattice (needed for irrational generators such as `A_2`) carries a
//! tolerance used for integrality and tie tests. All cyclicity and
//! isomorphism algebra runs on the integer matrix `W` and is exact under
//! either backend.

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::exact::{Mat, Rat};
use crate::{Error, Result};

/// Default tolerance for integrality and tie tests in float mode.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumericPolicy {
    Exact,
    Float { tol: f64 },
}

impl NumericPolicy {
    pub fn float_default() -> Self {
        NumericPolicy::Float { tol: DEFAULT_TOL }
    }

    pub fn tol(&self) -> f64 {
        match self {
            NumericPolicy::Exact => 0.0,
            NumericPolicy::Float { tol } => *tol,
        }
    }
}

/// Which closed-form quantizer applies to a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantizerTag {
    Generic,
    Zn,
    A2,
    E8,
}

/// Dense f64 matrix, row-major. Small and boring on purpose; exact work
/// happens in [`crate::exact`].
#[derive(Clone, Debug, PartialEq)]
pub struct MatF {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl MatF {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatF {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatF {
            rows: n,
            cols: n,
            data: vec![0.0; n * n],
        };
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &MatF) -> MatF {
        assert_eq!(self.cols, other.rows);
        let mut out = MatF {
            rows: self.rows,
            cols: other.cols,
            data: vec![0.0; self.rows * other.cols],
        };
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0.0;
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                out.data[r * other.cols + c] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * v[c]).sum())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    /// Gaussian elimination with partial pivoting.
    pub fn inverse(&self) -> Result<MatF> {
        assert!(self.rows == self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatF::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a.at(x, col)
                        .abs()
                        .partial_cmp(&a.at(y, col).abs())
                        .unwrap()
                })
                .unwrap();
            if a.at(pivot, col).abs() < 1e-14 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.at(col, col);
            for c in 0..n {
                a.data[col * n + c] /= p;
                inv.data[col * n + c] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.at(r, col);
                if f == 0.0 {
                    continue;
                }
                for c in 0..n {
                    a.data[r * n + c] -= f * a.at(col, c);
                    inv.data[r * n + c] -= f * inv.at(col, c);
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> f64 {
        assert!(self.rows == self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a.at(x, col)
                        .abs()
                        .partial_cmp(&a.at(y, col).abs())
                        .unwrap()
                })
                .unwrap();
            if a.at(pivot, col).abs() < 1e-14 {
                return 0.0;
            }
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let p = a.at(col, col);
            det *= p;
            for r in col + 1..n {
                let f = a.at(r, col) / p;
                for c in col..n {
                    a.data[r * n + c] -= f * a.at(col, c);
                }
            }
        }
        det
    }
}

/// A point of the ambient space, in the numeric flavor of whichever lattice
/// produced it.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Exact(Vec<Rat>),
    Float(Vec<f64>),
}

impl Point {
    pub fn zero_exact(n: usize) -> Point {
        Point::Exact(vec![Rat::zero(); n])
    }

    pub fn zero_float(n: usize) -> Point {
        Point::Float(vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        match self {
            Point::Exact(v) => v.len(),
            Point::Float(v) => v.len(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Point::Exact(v) => v.iter().map(|x| x.to_f64().unwrap()).collect(),
            Point::Float(v) => v.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Vec<Rat>> {
        match self {
            Point::Exact(v) => Some(v),
            Point::Float(_) => None,
        }
    }

    /// Componentwise sum; mixed flavors degrade to float.
    pub fn add(&self, other: &Point) -> Point {
        match (self, other) {
            (Point::Exact(a), Point::Exact(b)) => {
                Point::Exact(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => Point::Float(
                self.to_f64()
                    .iter()
                    .zip(other.to_f64())
                    .map(|(x, y)| x + y)
                    .collect(),
            ),
        }
    }

    pub fn sub(&self, other: &Point) -> Point {
        match (self, other) {
            (Point::Exact(a), Point::Exact(b)) => {
                Point::Exact(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            _ => Point::Float(
                self.to_f64()
                    .iter()
                    .zip(other.to_f64())
                    .map(|(x, y)| x - y)
                    .collect(),
            ),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Point::Exact(v) => v.iter().all(|x| x.is_zero()),
            Point::Float(v) => v.iter().all(|x| x.abs() <= tol),
        }
    }
}

/// An n-dimensional lattice: the integer span of the columns of `G`.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    policy: NumericPolicy,
    tag: QuantizerTag,
    g_exact: Option<Mat>,
    h_exact: Option<Mat>,
    g: MatF,
    h: MatF,
}

impl Lattice {
    /// Exact-backend lattice from a rational generator matrix.
    pub fn from_exact(g: Mat) -> Result<Lattice> {
        if !g.is_square() {
            return Err(Error::NonSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        let h = g.inverse()?; // rejects rank-deficient G
        let gf = MatF::from_rows(g.to_f64_rows());
        let hf = MatF::from_rows(h.to_f64_rows());
        let tag = detect_tag(&gf, 1e-12);
        Ok(Lattice {
            n: g.rows(),
            policy: NumericPolicy::Exact,
            tag,
            g_exact: Some(g),
            h_exact: Some(h),
            g: gf,
            h: hf,
        })
    }

    /// Float-backend lattice; `tol` is used for integrality and tie tests.
    pub fn from_float(g: MatF, tol: f64) -> Result<Lattice> {
        if g.rows() != g.cols() {
            return Err(Error::NonSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        assert!(tol > 0.0, "float mode requires a positive tolerance");
        let h = g.inverse()?;
        let tag = detect_tag(&g, tol.max(1e-12));
        Ok(Lattice {
            n: g.rows(),
            policy: NumericPolicy::Float { tol },
            tag,
            g_exact: None,
            h_exact: None,
            g,
            h,
        })
    }

    /// The integer lattice `Z^n` (exact backend).
    pub fn zn(n: usize) -> Lattice {
        Lattice::from_exact(Mat::identity(n)).expect("identity is invertible")
    }

    /// The hexagonal lattice `A_2` with the generator
    /// `[[sqrt(3)/2, 0], [1/2, 1]]` (float backend).
    pub fn a2() -> Lattice {
        Lattice::from_float(a2_generator(), DEFAULT_TOL).expect("A2 generator is invertible")
    }

    /// The `E_8` lattice over the standard unimodular basis (exact backend).
    pub fn e8() -> Lattice {
        Lattice::from_exact(e8_generator()).expect("E8 basis is invertible")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn policy(&self) -> NumericPolicy {
        self.policy
    }

    pub fn tag(&self) -> QuantizerTag {
        self.tag
    }

    pub fn generator(&self) -> &MatF {
        &self.g
    }

    pub fn check(&self) -> &MatF {
        &self.h
    }

    pub fn generator_exact(&self) -> Option<&Mat> {
        self.g_exact.as_ref()
    }

    pub fn check_exact(&self) -> Option<&Mat> {
        self.h_exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.g_exact.is_some()
    }

    /// `G * z` in the lattice's own numeric flavor.
    pub fn point_from_index(&self, z: &[i64]) -> Point {
        match &self.g_exact {
            Some(g) => {
                let zv: Vec<Rat> = z.iter().map(|&v| crate::exact::rat_int(v)).collect();
                Point::Exact(g.mul_vec(&zv).expect("dimension checked"))
            }
            None => {
                let zf: Vec<f64> = z.iter().map(|&v| v as f64).collect();
                Point::Float(self.g.mul_vec(&zf))
            }
        }
    }

    /// True iff `H * x` is an integer vector (exactly, or within tolerance).
    pub fn is_member(&self, x: &Point) -> Result<bool> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        match (&self.h_exact, x) {
            (Some(h), Point::Exact(v)) => {
                let hx = h.mul_vec(v)?;
                Ok(hx.iter().all(|c| c.is_integer()))
            }
            _ => {
                let hx = self.h.mul_vec(&x.to_f64());
                let tol = self.policy.tol().max(DEFAULT_TOL);
                Ok(hx.iter().all(|&c| (c - c.round()).abs() <= tol))
            }
        }
    }

    /// `|det G|`.
    pub fn volume(&self) -> f64 {
        self.g.det().abs()
    }

    pub fn volume_exact(&self) -> Option<Rat> {
        self.g_exact
            .as_ref()
            .map(|g| g.det().expect("square").abs())
    }
}

/// `W = H_c * G_s` when every entry is integral, else `NotNested`.
///
/// Exact when both lattices are exact; otherwise each entry must be within
/// tolerance of an integer and is rounded.
pub fn sublattice_w(lc: &Lattice, ls: &Lattice) -> Result<Mat> {
    if lc.dim() != ls.dim() {
        return Err(Error::DimensionMismatch {
            expected: lc.dim(),
            got: ls.dim(),
        });
    }
    match (lc.check_exact(), ls.generator_exact()) {
        (Some(hc), Some(gs)) => {
            let w = hc.mul(gs)?;
            if w.is_integer() {
                Ok(w)
            } else {
                Err(Error::NotNested)
            }
        }
        _ => {
            let w = lc.check().mul(ls.generator());
            let tol = lc.policy().tol().max(ls.policy().tol()).max(DEFAULT_TOL);
            let n = w.rows();
            let mut rows = Vec::with_capacity(n);
            for r in 0..n {
                let mut row = Vec::with_capacity(n);
                for c in 0..n {
                    let v = w.at(r, c);
                    if (v - v.round()).abs() > tol {
                        return Err(Error::NotNested);
                    }
                    row.push(crate::exact::rat_int(v.round() as i64));
                }
                rows.push(row);
            }
            Ok(Mat::from_rows(rows))
        }
    }
}

fn detect_tag(g: &MatF, tol: f64) -> QuantizerTag {
    let n = g.rows();
    let close = |a: &MatF, b: &MatF| -> bool {
        (0..n).all(|r| (0..n).all(|c| (a.at(r, c) - b.at(r, c)).abs() <= tol))
    };
    if close(g, &MatF::identity(n)) {
        return QuantizerTag::Zn;
    }
    if n == 2 && close(g, &a2_generator()) {
        return QuantizerTag::A2;
    }
    if n == 8 {
        let e8 = MatF::from_rows(e8_generator().to_f64_rows());
        if close(g, &e8) {
            return QuantizerTag::E8;
        }
    }
    QuantizerTag::Generic
}

pub fn a2_generator() -> MatF {
    let s = 3f64.sqrt() / 2.0;
    MatF::from_rows(vec![vec![s, 0.0], vec![0.5, 1.0]])
}

/// Standard `E_8` basis (columns are generators), `det = 1`:
/// seven `D_8`-style rows plus the all-halves glue vector.
pub fn e8_generator() -> Mat {
    use crate::exact::{rat, rat_int};
    let mut rows = vec![vec![crate::exact::rat_int(0); 8]; 8];
    // Basis vectors (columns of G): written here as the rows of B, G = B^T.
    let b: [[i64; 8]; 7] = [
        [2, 0, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, -1, 1, 0],
    ];
    for (k, vec) in b.iter().enumerate() {
        for (i, &v) in vec.iter().enumerate() {
            rows[i][k] = rat_int(v);
        }
    }
    for i in 0..8 {
        rows[i][7] = rat(1, 2);
    }
    Mat::from_rows(rows)
}

// --- matrix file format -----------------------------------------------------
//
// {"rows": n, "cols": n, "entries": [["4/3", "2/9"], ["4/3", "8/9"]]}
// with entries as exact fraction strings or decimal floats.

/// A parsed matrix: exact when every entry was given as a fraction or
/// integer, float as soon as any entry is a decimal number.
#[derive(Clone, Debug)]
pub enum ParsedMatrix {
    Exact(Mat),
    Float(MatF),
}

impl ParsedMatrix {
    pub fn into_lattice(self, policy: NumericPolicy) -> Result<Lattice> {
        match (self, policy) {
            (ParsedMatrix::Exact(m), NumericPolicy::Exact) => Lattice::from_exact(m),
            (ParsedMatrix::Exact(m), NumericPolicy::Float { tol }) => {
                Lattice::from_float(MatF::from_rows(m.to_f64_rows()), tol)
            }
            (ParsedMatrix::Float(_), NumericPolicy::Exact) => Err(Error::Parse(
                "exact mode requires fraction or integer entries".into(),
            )),
            (ParsedMatrix::Float(m), NumericPolicy::Float { tol }) => Lattice::from_float(m, tol),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ParsedMatrix::Exact(_))
    }
}

pub fn parse_matrix_json(text: &str) -> Result<ParsedMatrix> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix json: {e}")))?;
    let rows = v["rows"]
        .as_u64()
        .ok_or_else(|| Error::Parse("missing \"rows\"".into()))? as usize;
    let cols = v["cols"]
        .as_u64()
        .ok_or_else(|| Error::Parse("missing \"cols\"".into()))? as usize;
    let entries = v["entries"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing \"entries\"".into()))?;
    if entries.len() != rows {
        return Err(Error::Parse(format!(
            "expected {rows} rows, got {}",
            entries.len()
        )));
    }
    let mut exact_rows: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    let mut all_exact = true;
    let mut float_rows: Vec<Vec<f64>> = Vec::with_capacity(rows);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("row is not an array".into()))?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "expected {cols} columns, got {}",
                row.len()
            )));
        }
        let mut er = Vec::with_capacity(cols);
        let mut fr = Vec::with_capacity(cols);
        for cell in row {
            match parse_entry(cell)? {
                (Some(r), f) => {
                    er.push(r);
                    fr.push(f);
                }
                (None, f) => {
                    all_exact = false;
                    fr.push(f);
                }
            }
        }
        if all_exact {
            exact_rows.push(er);
        }
        float_rows.push(fr);
    }
    if all_exact {
        Ok(ParsedMatrix::Exact(Mat::from_rows(exact_rows)))
    } else {
        Ok(ParsedMatrix::Float(MatF::from_rows(float_rows)))
    }
}

fn parse_entry(cell: &Value) -> Result<(Option<Rat>, f64)> {
    match cell {
        Value::String(s) => {
            let s = s.trim();
            if let Ok(r) = s.parse::<Rat>() {
                let f = r.to_f64().ok_or_else(|| Error::Parse(format!("bad entry {s}")))?;
                return Ok((Some(r), f));
            }
            let f: f64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry {s:?}")))?;
            Ok((None, f))
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok((Some(crate::exact::rat_int(i)), i as f64));
            }
            let f = n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad entry {n}")))?;
            Ok((None, f))
        }
        other => Err(Error::Parse(format!("bad entry {other}"))),
    }
}

pub fn matrix_to_json_exact(m: &Mat) -> String {
    let entries: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect();
    serde_json::to_string_pretty(&json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    }))
    .expect("serializable")
}

pub fn matrix_to_json_float(m: &MatF) -> String {
    let entries: Vec<Vec<f64>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c)).collect())
        .collect();
    serde_json::to_string_pretty(&json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    }))
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    pub(crate) fn example_gc() -> Mat {
        Mat::from_rows(vec![
            vec![rat(4, 3), rat(2, 9)],
            vec![rat(4, 3), rat(8, 9)],
        ])
    }

    fn example_pair() -> (Lattice, Lattice) {
        let gc = example_gc();
        let w = Mat::from_i64_rows(&[&[4, 9], &[3, 8]]);
        let gs = gc.mul(&w).unwrap();
        (
            Lattice::from_exact(gc).unwrap(),
            Lattice::from_exact(gs).unwrap(),
        )
    }

    #[test]
    fn make_lattice_example_exact() {
        let (lc, _) = example_pair();
        let prod = lc
            .check_exact()
            .unwrap()
            .mul(lc.generator_exact().unwrap())
            .unwrap();
        assert_eq!(prod, Mat::identity(2));
    }

    #[test]
    fn identity_is_zn() {
        let l = Lattice::zn(2);
        assert_eq!(l.tag(), QuantizerTag::Zn);
        assert!(l.is_exact());
    }

    #[test]
    fn a2_tagged_in_float_mode() {
        let l = Lattice::from_float(a2_generator(), 1e-9).unwrap();
        assert_eq!(l.tag(), QuantizerTag::A2);
    }

    #[test]
    fn e8_tagged_and_unimodular() {
        let l = Lattice::e8();
        assert_eq!(l.tag(), QuantizerTag::E8);
        assert_eq!(l.volume_exact().unwrap(), rat_int(1));
    }

    #[test]
    fn singular_generator_rejected() {
        let g = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(Lattice::from_exact(g), Err(Error::Singular)));
    }

    #[test]
    fn membership_cases() {
        let (lc, _) = example_pair();
        assert!(lc.is_member(&Point::zero_exact(2)).unwrap());
        let p = lc.point_from_index(&[2, -3]);
        assert!(lc.is_member(&p).unwrap());
        let half = Point::Exact(
            lc.generator_exact()
                .unwrap()
                .mul_vec(&[rat(1, 2), rat_int(0)])
                .unwrap(),
        );
        assert!(!lc.is_member(&half).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let l = Lattice::zn(2);
        assert!(matches!(
            l.is_member(&Point::zero_exact(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sublattice_w_example() {
        let (lc, ls) = example_pair();
        let w = sublattice_w(&lc, &ls).unwrap();
        assert_eq!(w, Mat::from_i64_rows(&[&[4, 9], &[3, 8]]));
        // |det W| = vol(ls) / vol(lc)
        assert_eq!(
            w.det().unwrap().abs(),
            ls.volume_exact().unwrap() / lc.volume_exact().unwrap()
        );
    }

    #[test]
    fn sublattice_w_same_lattice_is_identity() {
        let (lc, _) = example_pair();
        assert_eq!(sublattice_w(&lc, &lc).unwrap(), Mat::identity(2));
    }

    #[test]
    fn sublattice_w_not_nested() {
        let lc = Lattice::zn(2);
        let ls = Lattice::from_exact(Mat::from_rows(vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat_int(0), rat(1, 2)],
        ]))
        .unwrap();
        assert!(matches!(sublattice_w(&lc, &ls), Err(Error::NotNested)));
    }

    #[test]
    fn volume_cases() {
        assert_eq!(Lattice::zn(3).volume_exact().unwrap(), rat_int(1));
        let (lc, ls) = example_pair();
        assert_eq!(lc.volume_exact().unwrap(), rat(8, 9));
        assert_eq!(ls.volume_exact().unwrap(), rat(40, 9));
        let a2 = Lattice::a2();
        assert!((a2.volume() - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_json_roundtrip_exact() {
        let m = example_gc();
        let text = matrix_to_json_exact(&m);
        match parse_matrix_json(&text).unwrap() {
            ParsedMatrix::Exact(back) => assert_eq!(back, m),
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn matrix_json_decimal_is_float() {
        let text = r#"{"rows":2,"cols":2,"entries":[[0.8660254037844386,0],[0.5,1]]}"#;
        match parse_matrix_json(text).unwrap() {
            ParsedMatrix::Float(m) => assert!((m.at(0, 0) - 3f64.sqrt() / 2.0).abs() < 1e-15),
            _ => panic!("expected float"),
        }
    }
}
