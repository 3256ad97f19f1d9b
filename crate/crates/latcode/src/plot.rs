//! Figure layers and SVG/CSV emission.
//!
//! Each figure is built from point layers: codewords (red circles),
//! pre-mod points `G_c b` (yellow filled dots), shaping-lattice points in
//! the window (blue crosses), and the encoding parallelotope outline.
//! Output bytes are deterministic for fixed input.

use std::fmt::Write as _;

use crate::nested::{fmt_sig12, info_vectors, NestedCode};
use crate::{Error, Result};

/// The point sets that make up a figure.
#[derive(Clone, Debug)]
pub struct PlotLayers {
    /// Codewords of the codebook, in enumeration order.
    pub codewords: Vec<Vec<f64>>,
    /// Pre-mod points `G_c b` over all admissible info vectors.
    pub premod: Vec<Vec<f64>>,
    /// Shaping-lattice points that fall inside the window.
    pub shaping: Vec<Vec<f64>>,
    /// Corners of the encoding parallelotope `P(G_c diag(M))`, in drawing
    /// order (only meaningful for n = 2).
    pub parallelotope: Vec<Vec<f64>>,
    /// Symmetric half-extent of the window per axis.
    pub window: Vec<f64>,
}

/// Compute every layer of the figure for a nested code.
pub fn layers(code: &NestedCode) -> Result<PlotLayers> {
    let n = code.dim();
    let cb = code.enumerate_codebook()?;
    let codewords: Vec<Vec<f64>> = cb
        .entries()
        .iter()
        .map(|(_, cw)| cw.point.to_f64())
        .collect();
    let premod: Vec<Vec<f64>> = info_vectors(code.diag())
        .map(|b| code.coding().point_from_index(&b).to_f64())
        .collect();

    // Window: bounding box of the centered fundamental parallelotope of
    // the shaping lattice (which contains its Voronoi cell's extent up to
    // basis choice), scaled by 1.25.
    let gs = code.shaping().generator();
    let window: Vec<f64> = (0..n)
        .map(|i| 1.25 * 0.5 * (0..n).map(|j| gs.at(i, j).abs()).sum::<f64>())
        .collect();

    let shaping = shaping_points_in_window(code, &window);

    // Parallelotope corners 0, c1, c1+c2, c2 where c_i = M_i g_c,i.
    let gc = code.coding().generator();
    let parallelotope = if n == 2 {
        let c = |k: usize| {
            vec![
                code.diag()[k] as f64 * gc.at(0, k),
                code.diag()[k] as f64 * gc.at(1, k),
            ]
        };
        let (c1, c2) = (c(0), c(1));
        vec![
            vec![0.0, 0.0],
            c1.clone(),
            vec![c1[0] + c2[0], c1[1] + c2[1]],
            c2,
        ]
    } else {
        Vec::new()
    };

    Ok(PlotLayers {
        codewords,
        premod,
        shaping,
        parallelotope,
        window,
    })
}

fn shaping_points_in_window(code: &NestedCode, window: &[f64]) -> Vec<Vec<f64>> {
    let n = code.dim();
    if n > 3 {
        // Dense lattices in high dimension would flood the figure; the
        // pairwise projections only draw codeword layers there.
        return Vec::new();
    }
    let h = code.shaping().check();
    let wmax = window.iter().cloned().fold(0.0, f64::max);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let l1: f64 = (0..n).map(|j| h.at(i, j).abs()).sum();
            (l1 * wmax * (n as f64).sqrt()).ceil() as i64 + 1
        })
        .collect();
    let gs = code.shaping().generator();
    let mut out = Vec::new();
    let mut z = bounds.iter().map(|&b| -b).collect::<Vec<i64>>();
    'scan: loop {
        let zf: Vec<f64> = z.iter().map(|&v| v as f64).collect();
        let p = gs.mul_vec(&zf);
        if p.iter().zip(window).all(|(&x, &w)| x.abs() <= w) {
            out.push(p);
        }
        for k in (0..n).rev() {
            z[k] += 1;
            if z[k] <= bounds[k] {
                continue 'scan;
            }
            z[k] = -bounds[k];
        }
        break;
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out
}

/// CSV emission of all layers: `layer,x_1,...` rows, deterministic.
pub fn layers_csv(layers: &PlotLayers) -> String {
    let n = layers.window.len();
    let mut out = String::new();
    out.push_str("layer");
    for i in 1..=n.min(3) {
        let _ = write!(out, ",x_{i}");
    }
    out.push('\n');
    let mut emit = |name: &str, pts: &[Vec<f64>]| {
        for p in pts {
            out.push_str(name);
            for v in p.iter().take(3) {
                let _ = write!(out, ",{}", fmt_sig12(*v));
            }
            out.push('\n');
        }
    };
    emit("codeword", &layers.codewords);
    emit("premod", &layers.premod);
    emit("shaping", &layers.shaping);
    emit("parallelotope", &layers.parallelotope);
    out
}

/// SVG figure for n = 2, or pairwise codeword projections for n > 2.
pub fn render_svg(layers: &PlotLayers) -> Result<String> {
    match layers.window.len() {
        2 => Ok(svg_2d(layers)),
        n if n >= 3 => Ok(svg_projections(layers)),
        n => Err(Error::InvalidParameter(format!(
            "cannot plot a {n}-dimensional code"
        ))),
    }
}

const VIEW: f64 = 480.0;
const MARGIN: f64 = 20.0;

fn scale_fn(wx: f64, wy: f64) -> impl Fn(f64, f64) -> (f64, f64) {
    let s = (VIEW - 2.0 * MARGIN) / (2.0 * wx.max(wy).max(1e-12));
    move |x: f64, y: f64| (VIEW / 2.0 + s * x, VIEW / 2.0 - s * y)
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

fn svg_2d(layers: &PlotLayers) -> String {
    let map = scale_fn(layers.window[0], layers.window[1]);
    let mut body = String::new();
    if layers.parallelotope.len() == 4 {
        let pts: Vec<String> = layers
            .parallelotope
            .iter()
            .map(|p| {
                let (x, y) = map(p[0], p[1]);
                format!("{},{}", fmt2(x), fmt2(y))
            })
            .collect();
        let _ = writeln!(
            body,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>",
            pts.join(" ")
        );
    }
    for p in &layers.shaping {
        let (x, y) = map(p[0], p[1]);
        let _ = writeln!(
            body,
            "<path d=\"M {} {} l 8 8 m -8 0 l 8 -8\" stroke=\"blue\" stroke-width=\"1.5\"/>",
            fmt2(x - 4.0),
            fmt2(y - 4.0)
        );
    }
    for p in &layers.premod {
        let (x, y) = map(p[0], p[1]);
        let _ = writeln!(
            body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"gold\"/>",
            fmt2(x),
            fmt2(y)
        );
    }
    for p in &layers.codewords {
        let (x, y) = map(p[0], p[1]);
        let _ = writeln!(
            body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>",
            fmt2(x),
            fmt2(y)
        );
    }
    wrap_svg(VIEW, VIEW, &body)
}

fn svg_projections(layers: &PlotLayers) -> String {
    // Three panels: coordinate pairs (1,2), (1,3), (2,3) of the codewords.
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let extent = layers
        .codewords
        .iter()
        .flat_map(|p| p.iter().take(3))
        .fold(1e-12, |m: f64, &v| m.max(v.abs()));
    let mut body = String::new();
    for (panel, &(i, j)) in pairs.iter().enumerate() {
        let x0 = panel as f64 * VIEW;
        let map = scale_fn(extent, extent);
        let _ = writeln!(
            body,
            "<rect x=\"{}\" y=\"0\" width=\"{VIEW}\" height=\"{VIEW}\" fill=\"none\" stroke=\"gray\"/>",
            fmt2(x0)
        );
        for p in &layers.codewords {
            let (x, y) = map(p[i], p[j]);
            let _ = writeln!(
                body,
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>",
                fmt2(x0 + x),
                fmt2(y)
            );
        }
    }
    wrap_svg(3.0 * VIEW, VIEW, &body)
}

fn wrap_svg(w: f64, h: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{body}</svg>\n"
    )
}
