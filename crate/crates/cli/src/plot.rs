//! SVG rendering of a graph table. The picture depends on the CSV text only.

use std::fmt::Write;

use serde::Deserialize;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

#[derive(Deserialize)]
struct Row {
    m: f64,
    #[serde(rename = "G")]
    g: f64,
    branch: String,
}

fn colour(branch: &str) -> &'static str {
    match branch {
        "f" => "#1f77b4",
        "g" => "#d62728",
        "sqrt" => "#2ca02c",
        _ => "#7f7f7f",
    }
}

/// Renders the `m,G,branch,sigma` table as a scatter of `(m, G)` coloured by branch.
pub fn svg_from_csv(csv_text: &str) -> Result<String, String> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let rows: Vec<Row> = reader.deserialize().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    if rows.is_empty() {
        return Err("graph table has no rows".into());
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        x0 = x0.min(r.m);
        x1 = x1.max(r.m);
        y0 = y0.min(r.g);
        y1 = y1.max(r.g);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r##"<path d="M{left} {top} V{bottom} H{right}" fill="none" stroke="#000000"/>"##
    );
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{x:.4}</text>"#,
            sx(x),
            bottom + 16.0
        );
    }
    for y in [y0, y1] {
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.4}</text>"#, left - 4.0, sy(y) + 4.0);
    }
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">m</text>"#, (left + right) / 2.0, HEIGHT - 8.0);
    let _ = writeln!(out, r#"<text x="12" y="{:.2}">G</text>"#, (top + bottom) / 2.0);
    for r in &rows {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.2" fill="{}"/>"#,
            sx(r.m),
            sy(r.g),
            colour(&r.branch)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = "m,G,branch,sigma\n1.5,2.2,g,id\n1.8,2.1,f,id\n2.0,2.0,boundary,id\n";

    #[test]
    fn one_circle_per_row() {
        let svg = svg_from_csv(TABLE).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg, svg_from_csv(TABLE).unwrap());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(svg_from_csv("m,G,branch,sigma\n").is_err());
        assert!(svg_from_csv("m,G,branch,sigma\nx,2,f,id\n").is_err());
    }
}
