//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines even on success.

use std::time::{Duration, Instant};

use latcode::cyclic::{cyclic_coordinates, cyclic_encode, generator_order, n2_row_coprime};
use latcode::design::{
    derive_coding_lattice, last_row_cofactors, make_isomorphic_last_row, s2_top, s3_top,
};
use latcode::exact::{dot, gcd_vec, rat, solve_diophantine, to_i64, Int, Mat, Rat};
use latcode::iso::{check_divisibility, verify_isomorphism};
use latcode::lattice::{sublattice_w, Lattice, MatF, Point};
use latcode::nested::{usage_metrics, NestedCode, SizeSpec};
use latcode::plot::{layers, layers_csv, render_svg};
use latcode::quantize::{cvp_enumerate, quantize, shaping_gain_estimate};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion<F: FnOnce()>(id: u32, what: &str, budget: Duration, body: F) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {id}: pass ({what}; {elapsed:.2?})");
        }
        Ok(()) => {
            println!("criterion {id}: FAIL ({what}; over budget: {elapsed:.2?} > {budget:.2?})");
            panic!("criterion {id} exceeded its runtime budget");
        }
        Err(e) => {
            println!("criterion {id}: FAIL ({what}; {elapsed:.2?})");
            std::panic::resume_unwind(e);
        }
    }
}

fn example_gc() -> Mat {
    Mat::from_rows(vec![
        vec![rat(4, 3), rat(2, 9)],
        vec![rat(4, 3), rat(8, 9)],
    ])
}

fn example_w() -> Mat {
    Mat::from_i64_rows(&[&[4, 9], &[3, 8]])
}

fn example_code(diag: Vec<i64>) -> NestedCode {
    let gc = example_gc();
    let gs = gc.mul(&example_w()).unwrap();
    NestedCode::new(
        Lattice::from_exact(gc).unwrap(),
        Lattice::from_exact(gs).unwrap(),
        diag,
    )
    .unwrap()
}

fn m15_w() -> Mat {
    Mat::from_i64_rows(&[&[4, 9], &[-15, -30]])
}

fn m15_code() -> NestedCode {
    let gc = example_gc();
    let gs = gc.mul(&m15_w()).unwrap();
    NestedCode::new(
        Lattice::from_exact(gc).unwrap(),
        Lattice::from_exact(gs).unwrap(),
        vec![1, 15],
    )
    .unwrap()
}

fn a2_m11_code() -> NestedCode {
    let ls = Lattice::a2();
    let w = Mat::from_i64_rows(&[&[4, 9], &[-11, -22]]);
    let lc = derive_coding_lattice(&ls, &w).unwrap();
    NestedCode::new(lc, ls, vec![1, 11]).unwrap()
}

fn e8_m64_parts() -> (Mat, Vec<Int>, NestedCode) {
    let top = s3_top(8, 7, 17, 19, None).unwrap();
    let (r, w) = make_isomorphic_last_row(&top, &[5, 6, 7], 64).unwrap();
    let ls = Lattice::e8();
    let lc = derive_coding_lattice(&ls, &w).unwrap();
    let mut diag = vec![1i64; 8];
    diag[7] = 64;
    (w, r, NestedCode::new(lc, ls, diag).unwrap())
}

#[test]
fn criterion_1_example_w_cyclicity_and_codebook() {
    criterion(1, "M = 5 cyclic code, W = [[4,9],[3,8]]", Duration::from_secs(1), || {
        let w = example_w();
        let report = cyclic_coordinates(&w).unwrap();
        assert_eq!(report.m, Int::from(5));
        assert!(report.is_cyclic(0) && report.is_cyclic(1));
        // The two cyclicity criteria agree.
        let rows = n2_row_coprime(&w).unwrap();
        assert_eq!(rows, [true, true]);

        let code = example_code(vec![1, 5]);
        let mut seen: Vec<Vec<i64>> = (0..5)
            .map(|k| cyclic_encode(&code, k, 1).unwrap().index)
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 5, "5 distinct codewords");
        for k in 0..5 {
            let cw = cyclic_encode(&code, k, 1).unwrap();
            // In the zero-centered Voronoi region of Λ_s: the codeword is
            // its own canonical representative, exactly.
            let q = quantize(code.shaping(), &cw.point).unwrap();
            assert!(q.index.iter().all(|&z| z == 0));
        }
    });
}

#[test]
fn criterion_2_m15_isomorphic_design() {
    criterion(2, "repaired S2 isomorphic design, M = 15", Duration::from_secs(5), || {
        let top = s2_top(2, 4, 9, None).unwrap();
        let cof = last_row_cofactors(&top).unwrap();
        assert_eq!(cof, vec![Int::from(-9), Int::from(4)]);
        // The known witness validates.
        let witness = [Int::from(-1), Int::from(-2)];
        assert_eq!(dot(&witness, &cof), Int::from(1));

        let (r, w) = make_isomorphic_last_row(&top, &[0, 1], 15).unwrap();
        assert_eq!(dot(&r, &cof), Int::from(1));
        assert_eq!(w.det().unwrap().to_integer().abs(), Int::from(15));
        for c in 0..2 {
            assert!((w.int_at(1, c) % Int::from(15)).is_zero());
        }

        let code = m15_code();
        assert!(check_divisibility(code.w(), code.diag()).unwrap());
        let report = verify_isomorphism(&code).unwrap();
        assert!(report.holds);
        assert_eq!(report.pairs_checked, 225);
    });
}

#[test]
fn criterion_3_a2_m11_float() {
    criterion(3, "A2 code, M = 11, float mode", Duration::from_secs(5), || {
        let code = a2_m11_code();
        assert_eq!(code.size(), 11);
        let report = cyclic_coordinates(code.w()).unwrap();
        assert!(report.is_cyclic(1));
        let iso = verify_isomorphism(&code).unwrap();
        assert!(iso.holds);
        assert_eq!(iso.pairs_checked, 121);
        assert_eq!(code.enumerate_codebook().unwrap().len(), 11);
    });
}

#[test]
fn criterion_4_e8_m64() {
    criterion(4, "E8 code, M = 64", Duration::from_secs(60), || {
        let top = s3_top(8, 7, 17, 19, None).unwrap();
        let cof = last_row_cofactors(&top).unwrap();
        assert_eq!(cof[5], Int::from(2));
        assert_eq!(cof[6], Int::from(7));
        assert_eq!(cof[7], Int::from(-7));
        // Cofactors match the adjugate oracle on a completed matrix.
        let (_, w) = make_isomorphic_last_row(&top, &[5, 6, 7], 64).unwrap();
        let adj = w.adjugate().unwrap();
        for k in 0..8 {
            assert_eq!(adj.int_at(k, 7), cof[k]);
        }
        // The known witness satisfies the constraint with value exactly 1.
        let witness = [Int::from(95), Int::from(65), Int::from(92)];
        let designated = [cof[5].clone(), cof[6].clone(), cof[7].clone()];
        assert_eq!(dot(&witness, &designated), Int::from(1));

        let (w, _, code) = e8_m64_parts();
        assert_eq!(w.det().unwrap().to_integer().abs(), Int::from(64));
        assert_eq!(code.size(), 64);
        let report = verify_isomorphism(&code).unwrap();
        assert!(report.holds);
        assert_eq!(report.pairs_checked, 4096);
        assert_eq!(generator_order(&w, 7).unwrap(), 64);
    });
}

#[test]
fn criterion_5_usage_metrics() {
    criterion(5, "usage metrics, n = 2, K = 7", Duration::from_secs(1), || {
        let u = usage_metrics(2, SizeSpec::PerCoordinate(7)).unwrap();
        let diff = u.u_c - u.u_s.unwrap();
        let expected = 16.0 / 49.0;
        assert!((diff - expected).abs() <= 1e-4 * expected, "got {diff}");
        assert!((100.0 * diff - 32.65).abs() < 0.01);
    });
}

#[test]
fn criterion_6_shaping_gain() {
    criterion(6, "shaping gain Monte Carlo", Duration::from_secs(120), || {
        let e8 = shaping_gain_estimate(&Lattice::e8(), 1_000_000, 20260823).unwrap();
        assert!((e8 - 0.65).abs() <= 0.05, "E8 gain {e8}");
        let zn = shaping_gain_estimate(&Lattice::zn(4), 1_000_000, 20260823).unwrap();
        assert!(zn.abs() <= 0.02, "Zn gain {zn}");
    });
}

#[test]
fn criterion_7_property_suite() {
    criterion(7, "property suite", Duration::from_secs(300), || {
        property_quantizer_oracles();
        property_gcd_verdict_vs_order();
        property_gcd_vs_segment_scan();
        property_roundtrip_bijectivity();
        property_adjugate_identity();
    });
}

/// (a) closed-form quantizers match the enumeration oracle on >= 1000
/// random points across Z^n (n <= 8), A2 and E8.
fn property_quantizer_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let lattices = [
        Lattice::zn(2),
        Lattice::zn(5),
        Lattice::zn(8),
        Lattice::a2(),
        Lattice::e8(),
    ];
    let per_lattice = 250;
    for lat in &lattices {
        let n = lat.dim();
        for _ in 0..per_lattice {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let p = Point::Float(x.clone());
            let fast = quantize(lat, &p).unwrap();
            let slow = cvp_enumerate(lat, &p, 1.0).unwrap();
            let d = |q: &latcode::quantize::QuantResult| -> f64 {
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
                "lattice {:?}: fast {df} vs oracle {ds} at {x:?}",
                lat.tag()
            );
        }
    }
}

/// (b) gcd-of-adjugate-column cyclicity verdict == (generator_order == M) for >= 200 random
/// integer W, n <= 4, |det| <= 200.
fn property_gcd_verdict_vs_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(2..=4usize);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-6i64..=6)).collect())
            .collect();
        let w = Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        );
        let det = w.det().unwrap().to_integer();
        let m = det.abs().to_i64().unwrap();
        if m == 0 || m > 200 {
            continue;
        }
        let report = cyclic_coordinates(&w).unwrap();
        for i in 0..n {
            let order = generator_order(&w, i).unwrap();
            assert_eq!(
                report.is_cyclic(i),
                order == m,
                "W = {rows:?}, coordinate {i}: gcd verdict vs order {order} of {m}"
            );
        }
        checked += 1;
    }
}

/// (c) gcd primitivity == geometric segment scan for >= 500
/// random vectors.
fn property_gcd_vs_segment_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    let mut checked = 0;
    while checked < 500 {
        let n = rng.gen_range(1..=5usize);
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-40i64..=40)).collect();
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let big: Vec<Int> = v.iter().map(|&c| Int::from(c)).collect();
        let primitive = gcd_vec(&big) == Int::from(1);
        // Oracle: an interior point t*v (0 < t < 1) is integral iff some
        // integer d >= 2 divides every coordinate.
        let has_interior = (2..=v.iter().map(|c| c.abs()).max().unwrap())
            .any(|d| v.iter().all(|&c| c % d == 0));
        assert_eq!(primitive, !has_interior, "vector {v:?}");
        checked += 1;
    }
}

/// (d) encode/index round-trip and bijectivity, exhaustive for every
/// design in this suite.
fn property_roundtrip_bijectivity() {
    let codes: Vec<NestedCode> = vec![
        example_code(vec![1, 5]),
        example_code(vec![5, 1]),
        m15_code(),
        a2_m11_code(),
        e8_m64_parts().2,
    ];
    for code in &codes {
        let cb = code.enumerate_codebook().unwrap(); // errors on collision
        assert_eq!(cb.len() as i64, code.size());
        for (b, cw) in cb.entries() {
            assert_eq!(&code.index(&cw.point).unwrap(), b);
        }
    }
}

/// (e) adjugate(W) * W = det(W) * I for >= 200 random matrices.
fn property_adjugate_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5usize);
        let w = Mat::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-9i64..=9), 1)).collect())
                .collect(),
        );
        let det = w.det().unwrap();
        let adj = w.adjugate().unwrap();
        let prod = adj.mul(&w).unwrap();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { det.clone() } else { Rat::zero() };
                assert_eq!(prod.at(i, j), &expect);
            }
        }
    }
}

#[test]
fn criterion_8_figure_reproduction() {
    criterion(8, "figure layer reproduction", Duration::from_secs(60), || {
        let figures: Vec<(&str, NestedCode)> = vec![
            ("m5_diag_1_5", example_code(vec![1, 5])),
            ("m5_diag_5_1", example_code(vec![5, 1])),
            ("m15", m15_code()),
            ("a2_m11", a2_m11_code()),
        ];
        for (name, code) in &figures {
            let l = layers(code).unwrap();
            // Codeword layer equals the enumerated codebook, point for point.
            let cb = code.enumerate_codebook().unwrap();
            assert_eq!(l.codewords.len(), cb.len(), "{name}");
            for ((_, cw), drawn) in cb.entries().iter().zip(&l.codewords) {
                let expect = cw.point.to_f64();
                for (a, b) in expect.iter().zip(drawn) {
                    assert!((a - b).abs() <= 1e-12, "{name}: {expect:?} vs {drawn:?}");
                }
            }
            // Pre-mod layer is G_c b over the same info vectors.
            assert_eq!(l.premod.len(), cb.len(), "{name}");
            // Byte-stable across runs.
            let svg1 = render_svg(&l).unwrap();
            let again = layers(code).unwrap();
            assert_eq!(svg1, render_svg(&again).unwrap(), "{name}");
            assert_eq!(layers_csv(&l), layers_csv(&again), "{name}");
        }
    });
}

// Sanity anchors used by several criteria, kept here so the suite is
// self-contained.
#[test]
fn anchors_hold() {
    // W = H_c G_s recovers the integer nesting matrix from the generator pair.
    let gc = example_gc();
    let gs = gc.mul(&example_w()).unwrap();
    let lc = Lattice::from_exact(gc).unwrap();
    let ls = Lattice::from_exact(gs).unwrap();
    let w = sublattice_w(&lc, &ls).unwrap();
    assert_eq!(w.int_at(0, 0), Int::from(4));
    assert_eq!(w.int_at(1, 1), Int::from(8));
    // The A2 generator matches the standard hexagonal basis numerically.
    let g = latcode::lattice::a2_generator();
    let expect = MatF::from_rows(vec![vec![3f64.sqrt() / 2.0, 0.0], vec![0.5, 1.0]]);
    for i in 0..2 {
        for j in 0..2 {
            assert!((g.at(i, j) - expect.at(i, j)).abs() < 1e-15);
        }
    }
    // Diophantine solver agrees with the S2 witness family.
    let sol = solve_diophantine(&[Int::from(-9), Int::from(4)], &Int::from(1))
        .unwrap()
        .unwrap();
    assert_eq!(
        dot(&sol, &[Int::from(-9), Int::from(4)]),
        Int::from(1)
    );
    let _ = to_i64(&Int::from(64)).unwrap();
}
