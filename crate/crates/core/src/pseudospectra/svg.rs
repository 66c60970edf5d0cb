//! Contour lines of a field by marching squares, written as SVG.

use std::fmt::Write as _;

use super::field::PseudospectrumField;

/// Line segment in the complex plane.
pub type Segment = ((f64, f64), (f64, f64));

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
];

/// Isoline segments of `values = level` by marching squares with linear
/// interpolation. Infinite values are clamped above every finite one.
pub fn contour_segments(field: &PseudospectrumField, level: f64) -> Vec<Segment> {
    let g = &field.grid;
    let top = field
        .values
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(level, f64::max)
        + 1.0;
    let val = |ix: usize, iy: usize| {
        let v = field.value(ix, iy);
        if v.is_nan() {
            level - 1.0
        } else {
            v.min(top)
        }
    };
    let mut out = Vec::new();
    for iy in 0..g.ny - 1 {
        for ix in 0..g.nx - 1 {
            // corners counterclockwise from the lower left
            let c = [(ix, iy), (ix + 1, iy), (ix + 1, iy + 1), (ix, iy + 1)];
            let v: Vec<f64> = c.iter().map(|&(a, b)| val(a, b)).collect();
            let above: Vec<bool> = v.iter().map(|&x| x >= level).collect();
            let mut cross = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (e, (e + 1) % 4);
                if above[a] != above[b] {
                    let t = (level - v[a]) / (v[b] - v[a]);
                    let pa = g.point(c[a].0, c[a].1);
                    let pb = g.point(c[b].0, c[b].1);
                    cross.push((pa.re + t * (pb.re - pa.re), pa.im + t * (pb.im - pa.im)));
                }
            }
            match cross.len() {
                2 => out.push((cross[0], cross[1])),
                // saddle: pair the crossings by the cell average
                4 => {
                    let mean = v.iter().sum::<f64>() / 4.0;
                    if (mean >= level) == above[0] {
                        out.push((cross[0], cross[3]));
                        out.push((cross[1], cross[2]));
                    } else {
                        out.push((cross[0], cross[1]));
                        out.push((cross[2], cross[3]));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// SVG document with one isoline family per `eps`, at `log10 ||R|| = -log10 eps`.
pub fn contour_svg(field: &PseudospectrumField, eps_list: &[f64]) -> String {
    let g = &field.grid;
    let sx = (SIZE - 2.0 * MARGIN) / (g.re_max - g.re_min);
    let sy = (SIZE - 2.0 * MARGIN) / (g.im_max - g.im_min);
    let map = |(x, y): (f64, f64)| {
        (
            MARGIN + (x - g.re_min) * sx,
            SIZE - MARGIN - (y - g.im_min) * sy,
        )
    };
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="black" stroke-width="0.5"/>"#,
        w = SIZE - 2.0 * MARGIN
    )
    .unwrap();
    if g.re_min < 0.0 && g.re_max > 0.0 && g.im_min < 0.0 && g.im_max > 0.0 {
        let (x0, y0) = map((0.0, 0.0));
        writeln!(s, r##"<line x1="{MARGIN}" y1="{y0:.2}" x2="{e:.2}" y2="{y0:.2}" stroke="#999" stroke-width="0.5"/>"##, e = SIZE - MARGIN).unwrap();
        writeln!(s, r##"<line x1="{x0:.2}" y1="{MARGIN}" x2="{x0:.2}" y2="{e:.2}" stroke="#999" stroke-width="0.5"/>"##, e = SIZE - MARGIN).unwrap();
    }
    for (i, &eps) in eps_list.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut d = String::new();
        for (a, b) in contour_segments(field, -eps.log10()) {
            let (a, b) = (map(a), map(b));
            write!(d, "M{:.2} {:.2}L{:.2} {:.2}", a.0, a.1, b.0, b.1).unwrap();
        }
        writeln!(s, r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="1"><title>eps = {eps:e}</title></path>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" fill="{color}">eps = {eps:e}</text>"#,
            x = MARGIN + 8.0,
            y = MARGIN + 16.0 * (i as f64 + 1.0)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
