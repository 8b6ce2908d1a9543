//! Standalone SVG line charts from CSV sweeps. No plotting dependency; a
//! fixed template keeps the byte output deterministic for fixed input.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Result};

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 52.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Parsed CSV: header names plus rows of raw cells.
pub struct Csv {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Parses our own CSV schema: header row, comma-separated, no quoting.
pub fn parse_csv(text: &str) -> Result<Csv> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| anyhow!("MissingData: empty CSV"))?;
    let headers: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::new();
    for line in lines {
        rows.push(line.split(',').map(|s| s.trim().to_string()).collect());
    }
    Ok(Csv { headers, rows })
}

fn column_index(csv: &Csv, name: &str) -> Result<usize> {
    csv.headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| anyhow!("MissingColumn: no column named '{name}'"))
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e4 || v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        format!("{v:.4}")
    }
}

/// Renders a line chart of `y_cols` against `x_col`. With `log_y`, values
/// are plotted on a base-10 log axis (non-positive points are dropped).
pub fn emit_chart(csv_text: &str, x_col: &str, y_cols: &[String], log_y: bool) -> Result<String> {
    let csv = parse_csv(csv_text)?;
    if csv.rows.is_empty() {
        bail!("MissingData: CSV has a header but no rows");
    }
    if y_cols.is_empty() {
        bail!("MissingColumn: no y columns requested");
    }
    let xi = column_index(&csv, x_col)?;
    let yis: Vec<usize> = y_cols
        .iter()
        .map(|c| column_index(&csv, c))
        .collect::<Result<_>>()?;

    // collect series
    let mut series: Vec<Vec<(f64, f64)>> = vec![Vec::new(); yis.len()];
    for row in &csv.rows {
        let x: f64 = match row.get(xi).and_then(|c| c.parse().ok()) {
            Some(v) => v,
            None => continue,
        };
        for (s, &yi) in series.iter_mut().zip(&yis) {
            if let Some(y) = row.get(yi).and_then(|c| c.parse::<f64>().ok()) {
                if y.is_finite() {
                    if log_y {
                        if y > 0.0 {
                            s.push((x, y.log10()));
                        }
                    } else {
                        s.push((x, y));
                    }
                }
            }
        }
    }
    if series.iter().all(|s| s.is_empty()) {
        bail!("MissingData: no plottable points");
    }

    let all = series.iter().flatten();
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let px = |x: f64| MARGIN_L + (x - x_min) / (x_max - x_min) * (WIDTH - MARGIN_L - MARGIN_R);
    let py =
        |y: f64| HEIGHT - MARGIN_B - (y - y_min) / (y_max - y_min) * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);

    // axes
    let _ = write!(
        svg,
        r#"<line x1="{l:.1}" y1="{b:.1}" x2="{r:.1}" y2="{b:.1}" stroke="black"/><line x1="{l:.1}" y1="{t:.1}" x2="{l:.1}" y2="{b:.1}" stroke="black"/>"#,
        l = MARGIN_L,
        r = WIDTH - MARGIN_R,
        t = MARGIN_T,
        b = HEIGHT - MARGIN_B,
    );
    // ticks: 6 per axis
    for i in 0..=5 {
        let fx = x_min + (x_max - x_min) * i as f64 / 5.0;
        let fy = y_min + (y_max - y_min) * i as f64 / 5.0;
        let label_y = if log_y {
            format!("1e{}", tick_label(fy))
        } else {
            tick_label(fy)
        };
        let _ = write!(
            svg,
            r#"<line x1="{x:.1}" y1="{b:.1}" x2="{x:.1}" y2="{b2:.1}" stroke="black"/><text x="{x:.1}" y="{ty:.1}" font-size="12" text-anchor="middle" font-family="monospace">{lx}</text>"#,
            x = px(fx),
            b = HEIGHT - MARGIN_B,
            b2 = HEIGHT - MARGIN_B + 5.0,
            ty = HEIGHT - MARGIN_B + 18.0,
            lx = tick_label(fx),
        );
        let _ = write!(
            svg,
            r#"<line x1="{l2:.1}" y1="{y:.1}" x2="{l:.1}" y2="{y:.1}" stroke="black"/><text x="{tx:.1}" y="{y2:.1}" font-size="12" text-anchor="end" font-family="monospace">{ly}</text>"#,
            l = MARGIN_L,
            l2 = MARGIN_L - 5.0,
            y = py(fy),
            tx = MARGIN_L - 8.0,
            y2 = py(fy) + 4.0,
            ly = label_y,
        );
    }
    // x label
    let _ = write!(
        svg,
        r#"<text x="{x:.1}" y="{y:.1}" font-size="13" text-anchor="middle" font-family="monospace">{x_col}</text>"#,
        x = (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        y = HEIGHT - 14.0,
    );

    // polylines + legend
    for (k, s) in series.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        let color = PALETTE[k % PALETTE.len()];
        let mut points = String::new();
        for &(x, y) in s {
            let _ = write!(points, "{:.2},{:.2} ", px(x), py(y));
        }
        let _ = write!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            points.trim_end(),
        );
        let ly = MARGIN_T + 16.0 * k as f64 + 6.0;
        let _ = write!(
            svg,
            r#"<line x1="{x1:.1}" y1="{ly:.1}" x2="{x2:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="3"/><text x="{tx:.1}" y="{ty:.1}" font-size="12" font-family="monospace">{name}</text>"#,
            x1 = WIDTH - MARGIN_R - 150.0,
            x2 = WIDTH - MARGIN_R - 128.0,
            tx = WIDTH - MARGIN_R - 122.0,
            ty = ly + 4.0,
            name = y_cols[k],
        );
    }
    svg.push_str("</svg>");
    Ok(svg)
}
