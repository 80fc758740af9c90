use std::fmt::Write;

use escape_core::orbit::OrbitScan;

const MAX_SIDE: usize = 128;
const CELL_PX: f64 = 4.0;

// viridis, sampled at five stops
const STOPS: [(f64, f64, f64); 5] = [(68.0, 1.0, 84.0), (59.0, 82.0, 139.0), (33.0, 145.0, 140.0), (94.0, 201.0, 98.0), (253.0, 231.0, 37.0)];

fn colour(x: f64) -> String {
    let x = x.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (x.floor() as usize).min(STOPS.len() - 2);
    let f = x - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |p: f64, q: f64| (p + (q - p) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Heatmap of `log10 ell` over the unit square of time coordinates, `u_1`
/// to the right and `u_2` upward. Grids larger than 128 are max-pooled.
/// Cells with `ell >= delta1` are outlined.
pub fn heatmap(scan: &OrbitScan, delta1: f64) -> Option<String> {
    if scan.n() != 2 || scan.grid == 0 {
        return None;
    }
    let pool = scan.grid.div_ceil(MAX_SIDE);
    let side = scan.grid.div_ceil(pool);
    let mut pooled = vec![f64::NAN; side * side];
    for idx in 0..scan.len() {
        let c = scan.cell_index(idx);
        let slot = (c[0] / pool) * side + c[1] / pool;
        let v = scan.values[idx];
        if v.is_finite() && !(pooled[slot] >= v) {
            pooled[slot] = v;
        }
    }
    let lo = scan.min_value().log10();
    let hi = scan.max_value().log10();
    let span = if hi > lo { hi - lo } else { 1.0 };
    let px = side as f64 * CELL_PX;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#, px + 90.0, px + 40.0, px + 90.0, px + 40.0);
    let _ = writeln!(out, r#"<g transform="translate(10,10)" shape-rendering="crispEdges">"#);
    for i in 0..side {
        for j in 0..side {
            let v = pooled[i * side + j];
            let (x, y) = (i as f64 * CELL_PX, px - (j + 1) as f64 * CELL_PX);
            let fill = if v.is_finite() { colour((v.log10() - lo) / span) } else { "#ffffff".into() };
            let stroke = if v >= delta1 { r##" stroke="#d62728" stroke-width="0.5""## } else { "" };
            let _ = writeln!(out, r#"<rect x="{x}" y="{y}" width="{CELL_PX}" height="{CELL_PX}" fill="{fill}"{stroke}/>"#);
        }
    }
    let _ = writeln!(out, "</g>");
    for k in 0..=10 {
        let f = k as f64 / 10.0;
        let y = 10.0 + px * (1.0 - f);
        let _ = writeln!(out, r#"<rect x="{}" y="{}" width="12" height="{}" fill="{}"/>"#, px + 20.0, y - px / 10.0, px / 10.0, colour(f));
    }
    let _ = writeln!(out, r#"<text x="{}" y="16" font-size="10" font-family="sans-serif">{:.3}</text>"#, px + 36.0, 10f64.powf(hi));
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="10" font-family="sans-serif">{:.2e}</text>"#, px + 36.0, px + 10.0, 10f64.powf(lo));
    let _ = writeln!(out, r#"<text x="10" y="{}" font-size="11" font-family="sans-serif">ell(a(t) x), t = u1 phi1 + u2 phi2, delta1 = {delta1}</text>"#, px + 30.0);
    out.push_str("</svg>\n");
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colour_endpoints() {
        assert_eq!(colour(0.0), "#440154");
        assert_eq!(colour(1.0), "#fde725");
        assert_eq!(colour(7.0), "#fde725");
    }

    #[test]
    fn only_planar_scans() {
        let scan = OrbitScan { d: 4, grid: 2, values: vec![0.5; 8], time_basis: vec![vec![0.0; 4]; 3], failures: vec![] };
        assert!(heatmap(&scan, 0.1).is_none());
        let flat = OrbitScan { d: 3, grid: 2, values: vec![0.5, 0.2, 0.1, 0.05], time_basis: vec![vec![0.0; 3]; 2], failures: vec![] };
        let svg = heatmap(&flat, 0.1).unwrap();
        assert_eq!(svg.matches("<rect").count(), 4 + 11);
        assert_eq!(svg.matches("stroke=").count(), 3);
    }
}
