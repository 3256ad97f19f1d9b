//! Nearest-lattice-point quantization `Q_Λ(x) = argmin_{p in Λ} ||x - p||^2`.
//!
//! [`cvp_enumerate`] is the reference path: it searches integer index
//! vectors in a box around `H*x` that provably contains the minimizer.
//! [`quantize`] dispatches to closed forms for `Z^n`, `A_2` and `E_8` and
//! falls back to enumeration otherwise; the two must agree in distance
//! wherever both are defined.
//!
//! Ties on Voronoi boundaries are broken toward the lexicographically
//! smallest index vector, which makes `x mod Λ` depend only on the coset of
//! `x` even on the boundary.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, rat_int, Rat};
use crate::lattice::{Lattice, Point, QuantizerTag};
use crate::{Error, Result};

/// Largest dimension accepted by the enumeration fallback.
pub const MAX_ENUM_DIM: usize = 10;
/// Candidate guard for the exact (rational) box scan.
const MAX_EXACT_CANDIDATES: u128 = 4_000_000;

/// Result of a quantization: the nearest point, its integer index
/// (`point = G * index`) and whether the minimizer was non-unique before
/// tie-breaking.
#[derive(Clone, Debug)]
pub struct QuantResult {
    pub point: Point,
    pub index: Vec<i64>,
    pub tie: bool,
}

// --- scalar abstraction -----------------------------------------------------

/// Coordinate arithmetic shared by the exact and float quantizer paths.
/// For `Rat` all comparisons are exact and `tol` is ignored.
pub(crate) trait Coord: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn half() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn abs_val(&self) -> Self;
    /// Nearest integer with exact halves rounded down, plus the rounding
    /// error `self - z` and whether the coordinate sat on a half tie.
    fn round_half_down(&self, tol: f64) -> (i64, Self, bool);
    fn lt_val(&self, o: &Self) -> bool;
    fn tie_eq(&self, o: &Self, tol: f64) -> bool;
}

impl Coord for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn zero() -> Self {
        0.0
    }
    fn half() -> Self {
        0.5
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn round_half_down(&self, tol: f64) -> (i64, Self, bool) {
        let z = (self - 0.5).ceil();
        let err = self - z;
        let tie = err > 0.5 - tol || err < -0.5 + tol;
        (z as i64, err, tie)
    }
    fn lt_val(&self, o: &Self) -> bool {
        self < o
    }
    fn tie_eq(&self, o: &Self, tol: f64) -> bool {
        (self - o).abs() <= tol * (1.0 + self.abs().max(o.abs()))
    }
}

impl Coord for Rat {
    fn from_i64(v: i64) -> Self {
        rat_int(v)
    }
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn half() -> Self {
        rat(1, 2)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }
    fn round_half_down(&self, _tol: f64) -> (i64, Self, bool) {
        let shifted = self - rat(1, 2);
        let z = shifted.ceil().to_integer();
        let zr = Rat::from_integer(z.clone());
        let err = self - &zr;
        let tie = err == rat(1, 2);
        (z.to_i64().expect("index fits i64"), err, tie)
    }
    fn lt_val(&self, o: &Self) -> bool {
        self < o
    }
    fn tie_eq(&self, o: &Self, _tol: f64) -> bool {
        self == o
    }
}

fn dist2<C: Coord>(a: &[C], b: &[C]) -> C {
    let mut acc = C::zero();
    for (x, y) in a.iter().zip(b) {
        let d = x.sub(y);
        acc = acc.add(&d.mul(&d));
    }
    acc
}

// --- enumeration ------------------------------------------------------------

/// Per-axis half-widths of the search box: `ceil(radius_factor * sum_j
/// |H_ij| * max_k ||g_k||) + 1`, a conservative covering bound.
fn box_half_widths(lat: &Lattice, radius_factor: f64) -> Vec<i64> {
    let n = lat.dim();
    let g = lat.generator();
    let h = lat.check();
    let max_g = (0..n)
        .map(|k| (0..n).map(|i| g.at(i, k) * g.at(i, k)).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);
    (0..n)
        .map(|i| {
            let row_l1: f64 = (0..n).map(|j| h.at(i, j).abs()).sum();
            (radius_factor * row_l1 * max_g).ceil() as i64 + 1
        })
        .collect()
}

/// Exhaustive closest-vector search over the guarded box.
///
/// The default `radius_factor = 1.0` makes the box certainly contain the
/// nearest point. Exact inputs on exact lattices are searched with exact
/// rational distances; float inputs use a pruned search over the same box,
/// which visits every candidate not provably worse than the incumbent.
pub fn cvp_enumerate(lat: &Lattice, x: &Point, radius_factor: f64) -> Result<QuantResult> {
    let n = lat.dim();
    if n > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_ENUM_DIM,
        });
    }
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    let half = box_half_widths(lat, radius_factor);
    match (lat.check_exact(), x) {
        (Some(h), Point::Exact(xv)) => {
            let c = h.mul_vec(xv)?;
            let g = lat.generator_exact().expect("exact lattice");
            let cols: Vec<Vec<Rat>> = (0..n).map(|k| g.col(k)).collect();
            // Babai rounding gives an incumbent at distance d0; every point
            // at distance <= d0 (the minimizer and all its ties included)
            // has |z_i - (Hx)_i| <= ||row_i(H)|| * d0, which bounds a far
            // tighter box than the covering-radius one.
            let z0: Vec<i64> = c.iter().map(|ci| ci.round_half_down(0.0).0).collect();
            let p0: Vec<Rat> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|k| &cols[k][i] * Rat::from_integer(z0[k].into()))
                        .sum()
                })
                .collect();
            let d0 = ToPrimitive::to_f64(&dist2::<Rat>(&p0, xv))
                .expect("finite")
                .sqrt()
                * (1.0 + 1e-9)
                * radius_factor.max(1.0);
            let hf = lat.check();
            let lo: Vec<i64> = (0..n)
                .map(|i| {
                    let hnorm = (0..n).map(|j| hf.at(i, j).powi(2)).sum::<f64>().sqrt();
                    let w = (hnorm * d0).floor() as i64 + 1;
                    (c[i].ceil().to_integer().to_i64().unwrap() - w).max(z0[i] - half[i])
                })
                .collect();
            let hi: Vec<i64> = (0..n)
                .map(|i| {
                    let hnorm = (0..n).map(|j| hf.at(i, j).powi(2)).sum::<f64>().sqrt();
                    let w = (hnorm * d0).floor() as i64 + 1;
                    (c[i].floor().to_integer().to_i64().unwrap() + w).min(z0[i] + half[i])
                })
                .collect();
            let count: u128 = (0..n).map(|i| (hi[i] - lo[i] + 1) as u128).product();
            if count > MAX_EXACT_CANDIDATES {
                return Err(Error::EnumerationTooLarge {
                    candidates: count,
                    max: MAX_EXACT_CANDIDATES,
                });
            }
            let (z, tie) = box_scan_exact(&cols, xv, &lo, &hi);
            Ok(QuantResult {
                point: lat.point_from_index(&z),
                index: z,
                tie,
            })
        }
        _ => {
            let xf = x.to_f64();
            let tol = effective_tol(lat);
            let (z, tie) = sphere_search_f64(lat, &xf, &half, tol);
            Ok(QuantResult {
                point: float_point(lat, &z),
                index: z,
                tie,
            })
        }
    }
}

fn effective_tol(lat: &Lattice) -> f64 {
    let t = lat.policy().tol();
    if t > 0.0 {
        t
    } else {
        crate::lattice::DEFAULT_TOL
    }
}

fn float_point(lat: &Lattice, z: &[i64]) -> Point {
    let zf: Vec<f64> = z.iter().map(|&v| v as f64).collect();
    Point::Float(lat.generator().mul_vec(&zf))
}

fn box_scan_exact(cols: &[Vec<Rat>], x: &[Rat], lo: &[i64], hi: &[i64]) -> (Vec<i64>, bool) {
    let n = cols.len();
    let mut best: Option<Rat> = None;
    let mut best_z: Vec<i64> = vec![0; n];
    let mut tie = false;
    let mut z = lo.to_vec();
    // Partial points: partial[k] = sum_{i<k} z_i * g_i.
    let mut partial: Vec<Vec<Rat>> = vec![vec![<Rat as Zero>::zero(); n]; n + 1];
    for k in 0..n {
        let zk = Rat::from_integer(z[k].into());
        for i in 0..n {
            partial[k + 1][i] = &partial[k][i] + &cols[k][i] * &zk;
        }
    }
    loop {
        let d = dist2::<Rat>(&partial[n], &x.to_vec());
        match &best {
            None => {
                best = Some(d);
                best_z = z.clone();
            }
            Some(b) => {
                if &d < b {
                    best = Some(d);
                    best_z = z.clone();
                    tie = false;
                } else if &d == b {
                    tie = true;
                    // Lex order of iteration means best_z is already the
                    // lexicographically smallest tying index.
                }
            }
        }
        // Odometer increment, last coordinate fastest.
        let mut k = n;
        loop {
            if k == 0 {
                return (best_z, tie);
            }
            k -= 1;
            if z[k] < hi[k] {
                z[k] += 1;
                let zk = Rat::from_integer(z[k].into());
                for i in 0..n {
                    partial[k + 1][i] = &partial[k][i] + &cols[k][i] * &zk;
                }
                for kk in k + 1..n {
                    let zz = Rat::from_integer(z[kk].into());
                    for i in 0..n {
                        partial[kk + 1][i] = &partial[kk][i] + &cols[kk][i] * &zz;
                    }
                }
                break;
            }
            z[k] = lo[k];
        }
    }
}

/// Depth-first search over the box with partial-distance pruning in a QR
/// (orthogonalized) coordinate system. Candidates within the tie tolerance
/// of the incumbent are never pruned, so the lex tie rule still applies.
fn sphere_search_f64(lat: &Lattice, x: &[f64], half: &[i64], tol: f64) -> (Vec<i64>, bool) {
    let n = lat.dim();
    let g = lat.generator();
    let c = lat.check().mul_vec(x);
    let lo: Vec<i64> = (0..n).map(|i| c[i].ceil() as i64 - half[i]).collect();
    let hi: Vec<i64> = (0..n).map(|i| c[i].floor() as i64 + half[i]).collect();

    // Modified Gram-Schmidt: G = Q R, y = Q^T x.
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut r = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        let mut v = g.column(i);
        for (j, qj) in q.iter().enumerate() {
            let proj: f64 = qj.iter().zip(&v).map(|(a, b)| a * b).sum();
            r[j][i] = proj;
            for (vc, qc) in v.iter_mut().zip(qj) {
                *vc -= proj * qc;
            }
        }
        let norm: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        r[i][i] = norm;
        for vc in v.iter_mut() {
            *vc /= norm;
        }
        q.push(v);
    }
    let y: Vec<f64> = q
        .iter()
        .map(|qi| qi.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect();

    // Babai nearest-plane start clamped into the box.
    let mut z0 = vec![0i64; n];
    for k in (0..n).rev() {
        let s: f64 = y[k] - (k + 1..n).map(|j| r[k][j] * z0[j] as f64).sum::<f64>();
        let zk = (s / r[k][k]).round() as i64;
        z0[k] = zk.clamp(lo[k], hi[k]);
    }
    let cost0 = {
        let p = float_point(lat, &z0).to_f64();
        p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
    };

    struct Ctx<'a> {
        r: &'a [Vec<f64>],
        y: &'a [f64],
        lo: &'a [i64],
        hi: &'a [i64],
        tol: f64,
        best: f64,
        best_z: Vec<i64>,
        tie: bool,
        z: Vec<i64>,
    }

    fn dfs(ctx: &mut Ctx, k: usize, partial: f64) {
        let eps = ctx.tol * (1.0 + ctx.best);
        let s: f64 = ctx.y[k]
            - (k + 1..ctx.y.len())
                .map(|j| ctx.r[k][j] * ctx.z[j] as f64)
                .sum::<f64>();
        let center = s / ctx.r[k][k];
        for zk in ctx.lo[k]..=ctx.hi[k] {
            let t = s - ctx.r[k][k] * zk as f64;
            let cost = partial + t * t;
            if cost > ctx.best + eps {
                if (zk as f64) > center {
                    break;
                }
                continue;
            }
            ctx.z[k] = zk;
            if k == 0 {
                if ctx.z == ctx.best_z {
                    continue;
                }
                let leaf_eps = ctx.tol * (1.0 + ctx.best.max(cost));
                if cost < ctx.best - leaf_eps {
                    ctx.best = cost;
                    ctx.best_z = ctx.z.clone();
                    ctx.tie = false;
                } else if (cost - ctx.best).abs() <= leaf_eps {
                    ctx.tie = true;
                    if ctx.z < ctx.best_z {
                        ctx.best_z = ctx.z.clone();
                    }
                    if cost < ctx.best {
                        ctx.best = cost;
                    }
                }
            } else {
                dfs(ctx, k - 1, cost);
            }
        }
    }

    let mut ctx = Ctx {
        r: &r,
        y: &y,
        lo: &lo,
        hi: &hi,
        tol,
        best: cost0,
        best_z: z0,
        tie: false,
        z: vec![0; n],
    };
    dfs(&mut ctx, n - 1, 0.0);
    (ctx.best_z, ctx.tie)
}

// --- closed-form quantizers -------------------------------------------------

fn quantize_zn<C: Coord>(x: &[C], tol: f64) -> (Vec<i64>, bool) {
    let mut z = Vec::with_capacity(x.len());
    let mut tie = false;
    for c in x {
        let (zi, _, t) = c.round_half_down(tol);
        tie |= t;
        z.push(zi);
    }
    (z, tie)
}

/// Nearest `D_n` point (integer vector with even coordinate sum): round each
/// coordinate, then if the parity is odd flip the coordinate that was
/// rounded furthest to its second-nearest integer.
fn d_round<C: Coord>(x: &[C], tol: f64) -> (Vec<i64>, Vec<C>, bool) {
    let n = x.len();
    let mut z = Vec::with_capacity(n);
    let mut err = Vec::with_capacity(n);
    let mut tie = false;
    for c in x {
        let (zi, e, t) = c.round_half_down(tol);
        tie |= t;
        z.push(zi);
        err.push(e);
    }
    let parity: i64 = z.iter().sum::<i64>().rem_euclid(2);
    if parity == 1 {
        let mut k = 0usize;
        for i in 1..n {
            if err[k].abs_val().lt_val(&err[i].abs_val()) {
                k = i;
            }
        }
        for i in 0..n {
            if i != k && err[i].abs_val().tie_eq(&err[k].abs_val(), tol) {
                tie = true;
            }
        }
        let e = &err[k];
        let zero = C::zero();
        if e.abs_val().tie_eq(&zero, tol) {
            tie = true;
        }
        if zero.lt_val(e) || e.abs_val().tie_eq(&zero, tol) {
            // err > 0 (or dead tie): flip up.
            z[k] += 1;
            err[k] = e.sub(&C::from_i64(1));
        } else {
            z[k] -= 1;
            err[k] = e.add(&C::from_i64(1));
        }
    }
    (z, err, tie)
}

/// `E_8 = D_8 ∪ (D_8 + 1/2)`: take the better of the two coset decodings.
/// Returns doubled ambient coordinates of the nearest point.
fn quantize_e8_coords<C: Coord>(x: &[C], tol: f64) -> (Vec<i64>, bool) {
    let (z0, e0, t0) = d_round(x, tol);
    let shifted: Vec<C> = x.iter().map(|c| c.sub(&C::half())).collect();
    let (z1, e1, t1) = d_round(&shifted, tol);
    let d0 = {
        let mut acc = C::zero();
        for e in &e0 {
            acc = acc.add(&e.mul(e));
        }
        acc
    };
    let d1 = {
        let mut acc = C::zero();
        for e in &e1 {
            acc = acc.add(&e.mul(e));
        }
        acc
    };
    let p0: Vec<i64> = z0.iter().map(|&v| 2 * v).collect();
    let p1: Vec<i64> = z1.iter().map(|&v| 2 * v + 1).collect();
    if d0.tie_eq(&d1, tol) {
        let pick = if p0 <= p1 { (p0, t0) } else { (p1, t1) };
        (pick.0, true)
    } else if d0.lt_val(&d1) {
        (p0, t0)
    } else {
        (p1, t1)
    }
}

fn quantize_a2_f64(x: &[f64], tol: f64) -> (Vec<i64>, bool) {
    let s3 = 3f64.sqrt();
    let offsets = [(0.0, 0.0), (s3 / 2.0, 0.5)];
    let mut best: Option<(f64, [f64; 2], bool)> = None;
    let mut tie = false;
    for &(o0, o1) in &offsets {
        let (a, _, ta) = ((x[0] - o0) / s3).round_half_down(tol);
        let (b, _, tb) = (x[1] - o1).round_half_down(tol);
        let p = [o0 + a as f64 * s3, o1 + b as f64];
        let d = (x[0] - p[0]).powi(2) + (x[1] - p[1]).powi(2);
        match &best {
            None => best = Some((d, p, ta | tb)),
            Some((bd, _, _)) => {
                if d.tie_eq(bd, tol) {
                    tie = true;
                } else if d < *bd {
                    best = Some((d, p, ta | tb));
                }
            }
        }
    }
    let (_, p, t) = best.expect("two candidates");
    tie |= t;
    // Index recovery through the check matrix of the A2 generator.
    let z0 = (2.0 * p[0] / s3).round() as i64;
    let z1 = (p[1] - p[0] / s3).round() as i64;
    (vec![z0, z1], tie)
}

/// Quantize `x` onto the lattice, dispatching on the closed-form tag.
pub fn quantize(lat: &Lattice, x: &Point) -> Result<QuantResult> {
    let n = lat.dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    let tol = effective_tol(lat);
    match lat.tag() {
        QuantizerTag::Generic => cvp_enumerate(lat, x, 1.0),
        QuantizerTag::Zn => {
            let (z, tie) = match x {
                Point::Exact(v) if lat.is_exact() => quantize_zn::<Rat>(v, tol),
                _ => quantize_zn::<f64>(&x.to_f64(), tol),
            };
            Ok(result_from_index(lat, x, z, tie))
        }
        QuantizerTag::A2 => {
            let (z, tie) = quantize_a2_f64(&x.to_f64(), tol);
            Ok(result_from_index(lat, x, z, tie))
        }
        QuantizerTag::E8 => {
            let (p2, tie) = match x {
                Point::Exact(v) if lat.is_exact() => quantize_e8_coords::<Rat>(v, tol),
                _ => quantize_e8_coords::<f64>(&x.to_f64(), tol),
            };
            let z = e8_index_from_doubled(lat, &p2);
            Ok(result_from_index(lat, x, z, tie))
        }
    }
}

fn result_from_index(lat: &Lattice, x: &Point, z: Vec<i64>, tie: bool) -> QuantResult {
    let point = if lat.is_exact() && matches!(x, Point::Exact(_)) {
        lat.point_from_index(&z)
    } else {
        float_point(lat, &z)
    };
    QuantResult {
        point,
        index: z,
        tie,
    }
}

/// Index of the E8 point with doubled ambient coordinates `p2` (so the
/// point itself is `p2 / 2`); exact because the check matrix is rational.
fn e8_index_from_doubled(lat: &Lattice, p2: &[i64]) -> Vec<i64> {
    match lat.check_exact() {
        Some(h) => {
            let p: Vec<Rat> = p2.iter().map(|&v| rat(v, 2)).collect();
            h.mul_vec(&p)
                .expect("dimension checked")
                .iter()
                .map(|r| {
                    debug_assert!(r.is_integer());
                    r.to_integer().to_i64().expect("index fits i64")
                })
                .collect()
        }
        None => {
            let p: Vec<f64> = p2.iter().map(|&v| v as f64 / 2.0).collect();
            lat.check().mul_vec(&p).iter().map(|c| c.round() as i64).collect()
        }
    }
}

// --- shaping gain -----------------------------------------------------------

/// Monte Carlo estimate of the shaping gain `10*log10((1/12)/G(Λ))` in dB,
/// where `G(Λ)` is the normalized second moment of the Voronoi region.
/// Samples are drawn uniformly over the fundamental parallelotope and
/// folded into the Voronoi region by quantization. Deterministic per seed.
pub fn shaping_gain_estimate(lat: &Lattice, samples: usize, seed: u64) -> Result<f64> {
    if samples < 10_000 {
        return Err(Error::InvalidParameter(format!(
            "need at least 10^4 samples, got {samples}"
        )));
    }
    let n = lat.dim();
    let g = lat.generator();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0f64;
    let mut u = vec![0.0f64; n];
    for _ in 0..samples {
        for v in u.iter_mut() {
            *v = rng.gen::<f64>();
        }
        let x = g.mul_vec(&u);
        let q = quantize(lat, &Point::Float(x.clone()))?;
        let p = q.point.to_f64();
        acc += x.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    }
    let volume = lat.volume();
    let second_moment = acc / samples as f64 / (n as f64 * volume.powf(2.0 / n as f64));
    Ok(10.0 * ((1.0 / 12.0) / second_moment).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Mat;
    use rand::Rng;

    #[test]
    fn zn_rounds_coordinates() {
        let l = Lattice::zn(2);
        let q = quantize(&l, &Point::Float(vec![0.4, -0.6])).unwrap();
        assert_eq!(q.index, vec![0, -1]);
        assert!(!q.tie);
    }

    #[test]
    fn zn_half_tie_is_lex_smallest() {
        let l = Lattice::zn(2);
        let q = quantize(&l, &Point::Exact(vec![rat(1, 2), rat(1, 2)])).unwrap();
        assert_eq!(q.index, vec![0, 0]);
        assert!(q.tie);
        let o = cvp_enumerate(&l, &Point::Exact(vec![rat(1, 2), rat(1, 2)]), 1.0).unwrap();
        assert_eq!(o.index, vec![0, 0]);
        assert!(o.tie);
    }

    #[test]
    fn lattice_point_is_fixed() {
        let gc = Mat::from_rows(vec![
            vec![rat(4, 3), rat(2, 9)],
            vec![rat(4, 3), rat(8, 9)],
        ]);
        let l = Lattice::from_exact(gc).unwrap();
        let p = l.point_from_index(&[2, -3]);
        let q = quantize(&l, &p).unwrap();
        assert_eq!(q.index, vec![2, -3]);
        assert_eq!(q.point, p);
        assert!(!q.tie);
    }

    #[test]
    fn a2_near_origin() {
        let l = Lattice::a2();
        let q = quantize(&l, &Point::Float(vec![0.1, 0.1])).unwrap();
        assert_eq!(q.index, vec![0, 0]);
    }

    #[test]
    fn e8_glue_point() {
        let l = Lattice::e8();
        let mut x = vec![0.5f64; 8];
        x[0] += 1e-4;
        let q = quantize(&l, &Point::Float(x)).unwrap();
        // (1/2, ..., 1/2) is the last basis vector.
        assert_eq!(q.index, vec![0, 0, 0, 0, 0, 0, 0, 1]);
        let p = q.point.to_f64();
        assert!(p.iter().all(|&c| (c - 0.5).abs() < 1e-12));
    }

    #[test]
    fn e8_exact_matches_float() {
        let l = Lattice::e8();
        let xr: Vec<Rat> = vec![
            rat(3, 10),
            rat(-7, 10),
            rat(12, 10),
            rat(1, 3),
            rat(-5, 7),
            rat(9, 4),
            rat(0, 1),
            rat(13, 11),
        ];
        let xf: Vec<f64> = xr.iter().map(|r| ToPrimitive::to_f64(r).unwrap()).collect();
        let qe = quantize(&l, &Point::Exact(xr)).unwrap();
        let qf = quantize(&l, &Point::Float(xf)).unwrap();
        assert_eq!(qe.index, qf.index);
    }

    fn oracle_check(lat: &Lattice, pts: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = lat.dim();
        for _ in 0..pts {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let p = Point::Float(x.clone());
            let fast = quantize(lat, &p).unwrap();
            let slow = cvp_enumerate(lat, &p, 1.0).unwrap();
            let d = |q: &QuantResult| -> f64 {
                q.point
                    .to_f64()
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum()
            };
            let (df, ds) = (d(&fast), d(&slow));
            assert!(
                (df - ds).abs() <= 1e-9 * (1.0 + df.max(ds)),
                "fast {df} vs enumerated {ds} at {x:?}"
            );
        }
    }

    #[test]
    fn oracle_equivalence_zn3() {
        oracle_check(&Lattice::zn(3), 100, 7);
    }

    #[test]
    fn oracle_equivalence_a2() {
        oracle_check(&Lattice::a2(), 100, 8);
    }

    #[test]
    fn oracle_equivalence_e8_small() {
        oracle_check(&Lattice::e8(), 20, 9);
    }

    #[test]
    fn idempotence_and_equivariance() {
        let l = Lattice::a2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x: Vec<f64> = (0..2).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let q = quantize(&l, &Point::Float(x.clone())).unwrap();
            // Q(Q(x)) = Q(x)
            let q2 = quantize(&l, &q.point).unwrap();
            assert_eq!(q2.index, q.index);
            // Q(x + G t) = Q(x) + G t for a random integer shift.
            let t: Vec<i64> = (0..2).map(|_| rng.gen_range(-3i64..=3)).collect();
            let shift = l.point_from_index(&t).to_f64();
            let xs: Vec<f64> = x.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let qs = quantize(&l, &Point::Float(xs)).unwrap();
            if !q.tie && !qs.tie {
                let expect: Vec<i64> = q.index.iter().zip(&t).map(|(a, b)| a + b).collect();
                assert_eq!(qs.index, expect);
            }
        }
    }

    #[test]
    fn shaping_gain_zn_is_zero() {
        let g = shaping_gain_estimate(&Lattice::zn(2), 30_000, 42).unwrap();
        assert!(g.abs() < 0.03, "got {g}");
    }

    #[test]
    fn shaping_gain_rejects_tiny_sample_count() {
        assert!(shaping_gain_estimate(&Lattice::zn(2), 100, 1).is_err());
    }

    #[test]
    fn enum_guard_on_dimension() {
        let l = Lattice::zn(11);
        assert!(matches!(
            cvp_enumerate(&l, &Point::zero_float(11), 1.0),
            Err(Error::DimensionTooLarge { .. })
        ));
    }
}
