//! Plain-text outputs of `simulate`: the orbit CSV and an SVG picture of
//! the leaf on the boundary torus.

use std::fmt::Write;

/// Points `frac(j * lambda)` for `0 <= j < n`.
pub fn orbit(lambda: f64, n: usize) -> Vec<f64> {
    let step = lambda - lambda.floor();
    (0..n).map(|j| (j as f64 * step).fract()).collect()
}

/// CSV with columns `j,theta,gap_after`: the orbit index, its angle in turns
/// and the circle distance to the next orbit point counterclockwise.
pub fn orbit_csv(theta: &[f64]) -> String {
    let mut order: Vec<usize> = (0..theta.len()).collect();
    order.sort_by(|&a, &b| theta[a].total_cmp(&theta[b]));
    let mut gap_after = vec![0.0; theta.len()];
    for (k, &idx) in order.iter().enumerate() {
        let next = theta[order[(k + 1) % order.len()]];
        let mut gap = next - theta[idx];
        if gap <= 0.0 {
            gap += 1.0;
        }
        gap_after[idx] = gap;
    }
    let mut out = String::from("j,theta,gap_after\n");
    for (j, (t, g)) in theta.iter().zip(&gap_after).enumerate() {
        let _ = writeln!(out, "{j},{t:?},{g:?}");
    }
    out
}

const SIDE: f64 = 400.0;
const PAD: f64 = 20.0;

/// Leaf segments on the square `[0,1]^2` (left) and the orbit on the
/// holonomy circle (right).
pub fn orbit_svg(lambda: f64, theta: &[f64], leaf_turns: usize) -> String {
    let width = 2.0 * SIDE + 3.0 * PAD;
    let height = SIDE + 2.0 * PAD;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect x="{PAD}" y="{PAD}" width="{SIDE}" height="{SIDE}" fill="none" stroke="black"/>"#);
    let slope = lambda;
    let to_px = |u: f64, v: f64| (PAD + u * SIDE, PAD + (1.0 - v) * SIDE);
    for &start in theta.iter().take(leaf_turns) {
        // The leaf over one turn in u, cut where it wraps in v.
        let (mut u, mut v) = (0.0f64, start);
        while u < 1.0 {
            let du = ((1.0 - v) / slope).min(1.0 - u);
            let (x0, y0) = to_px(u, v);
            let (x1, y1) = to_px(u + du, v + du * slope);
            let _ = writeln!(
                s,
                r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="steelblue" stroke-width="0.6"/>"#
            );
            u += du;
            v = (v + du * slope).fract();
            if du <= 0.0 {
                break;
            }
        }
    }
    let (cx, cy, r) = (2.0 * PAD + 1.5 * SIDE, PAD + SIDE / 2.0, SIDE / 2.0 - PAD);
    let _ = writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="black"/>"#);
    for &t in theta {
        let a = std::f64::consts::TAU * t;
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="1.5" fill="crimson"/>"#,
            cx + r * a.cos(),
            cy - r * a.sin()
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_gaps_close_the_circle() {
        let theta = orbit(2f64.sqrt(), 7);
        let csv = orbit_csv(&theta);
        let sum: f64 = csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(csv.starts_with("j,theta,gap_after\n0,0.0,"));
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let svg = orbit_svg(1.618, &orbit(1.618, 20), 5);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("fill=\"crimson\"").count(), 20);
    }
}
