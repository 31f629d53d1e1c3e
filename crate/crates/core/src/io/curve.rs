use std::fmt::Write;

use crate::error::{Error, Result};
use crate::experiments::CurveData;

pub const CSV_HEADER: &str = "q,p_any,p_prefix_containment,p_prefix_literal,trials";

/// One row per `q`, probabilities with six decimals.
pub fn write_curve_csv(cd: &CurveData) -> Vec<u8> {
    let mut out = String::with_capacity(64 + cd.q_values.len() * 40);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (i, q) in cd.q_values.iter().enumerate() {
        writeln!(
            out,
            "{q},{:.6},{:.6},{:.6},{}",
            cd.p_any[i], cd.p_prefix[i], cd.p_lcp[i], cd.trials
        )
        .unwrap();
    }
    out.into_bytes()
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 770.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 530.0;

/// Static 800x600 chart: solid any-match curve, dashed prefix-containment
/// curve, linear axes.
pub fn render_curve_svg(cd: &CurveData) -> Result<Vec<u8>> {
    let points = cd.q_values.len();
    if points < 2 {
        return Err(Error::InsufficientData(points));
    }
    let q_min = cd.q_values[0] as f64;
    let q_max = *cd.q_values.last().unwrap() as f64;
    let span = (q_max - q_min).max(1.0);
    let x = |q: usize| LEFT + (q as f64 - q_min) / span * (RIGHT - LEFT);
    let y = |p: f64| BOTTOM - p * (BOTTOM - TOP);

    let mut s = String::with_capacity(4096);
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="14">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();

    // axes
    writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{BOTTOM}" x2="{RIGHT}" y2="{BOTTOM}" stroke="black"/>"#
    )
    .unwrap();
    writeln!(s, r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{BOTTOM}" stroke="black"/>"#)
        .unwrap();

    let step = points.div_ceil(20).max(1);
    for &q in cd.q_values.iter().step_by(step) {
        let px = x(q);
        writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{BOTTOM}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            BOTTOM + 6.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{q}</text>"#,
            BOTTOM + 24.0
        )
        .unwrap();
    }
    for tick in 0..=5 {
        let p = tick as f64 / 5.0;
        let py = y(p);
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/>"#,
            LEFT - 6.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{p:.1}</text>"#,
            LEFT - 10.0,
            py + 5.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">q</text>"#,
        (LEFT + RIGHT) / 2.0,
        HEIGHT - 20.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">probability</text>"#,
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    )
    .unwrap();

    let polyline = |probs: &[f64]| -> String {
        cd.q_values
            .iter()
            .zip(probs)
            .map(|(&q, &p)| format!("{:.2},{:.2}", x(q), y(p)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(
        s,
        r#"<polyline id="p_any" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        polyline(&cd.p_any)
    )
    .unwrap();
    writeln!(
        s,
        r#"<polyline id="p_prefix_containment" points="{}" fill="none" stroke="black" stroke-width="2" stroke-dasharray="8 6"/>"#,
        polyline(&cd.p_prefix)
    )
    .unwrap();

    // legend
    let lx = RIGHT - 190.0;
    writeln!(
        s,
        r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="2"/>"#,
        TOP + 15.0,
        lx + 40.0,
        TOP + 15.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">any q-match</text>"#,
        lx + 50.0,
        TOP + 20.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="2" stroke-dasharray="8 6"/>"#,
        TOP + 40.0,
        lx + 40.0,
        TOP + 40.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">prefix q-match</text>"#,
        lx + 50.0,
        TOP + 45.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    Ok(s.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::CollectionMode;
    use crate::models::ModelSpec;

    fn curve(q: Vec<usize>, p: f64, trials: usize) -> CurveData {
        let len = q.len();
        CurveData {
            model: ModelSpec::Zipf { n: 10, m: 10 },
            seed: 0,
            mode: CollectionMode::Shared,
            trials,
            q_values: q,
            p_any: vec![p; len],
            p_prefix: vec![p; len],
            p_lcp: vec![p; len],
        }
    }

    #[test]
    fn csv_single_row() {
        let bytes = write_curve_csv(&curve(vec![1], 1.0, 300));
        assert_eq!(
            std::str::from_utf8(&bytes).unwrap(),
            "q,p_any,p_prefix_containment,p_prefix_literal,trials\n1,1.000000,1.000000,1.000000,300\n"
        );
    }

    #[test]
    fn csv_rows_and_determinism() {
        let cd = curve(vec![1, 2, 3, 4], 0.25, 8);
        let a = write_curve_csv(&cd);
        assert_eq!(a.iter().filter(|&&b| b == b'\n').count(), 5);
        assert_eq!(a, write_curve_csv(&cd));
    }

    #[test]
    fn svg_needs_two_points() {
        assert_eq!(
            render_curve_svg(&curve(vec![1], 1.0, 1)),
            Err(Error::InsufficientData(1))
        );
    }

    #[test]
    fn svg_parses_and_flat_curves_sit_on_top() {
        let cd = curve(vec![1, 2, 3], 1.0, 10);
        let bytes = render_curve_svg(&cd).unwrap();
        assert_eq!(bytes, render_curve_svg(&cd).unwrap());
        let text = String::from_utf8(bytes).unwrap();
        let tree = roxmltree::Document::parse(&text).unwrap();
        let root = tree.root_element();
        assert_eq!(root.attribute("width"), Some("800"));
        assert_eq!(root.attribute("height"), Some("600"));
        let lines: Vec<_> = root
            .children()
            .filter(|n| n.has_tag_name("polyline"))
            .collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].attribute("stroke-dasharray").is_none());
        assert!(lines[1].attribute("stroke-dasharray").is_some());
        for l in &lines {
            for pt in l.attribute("points").unwrap().split(' ') {
                let (_, y) = pt.split_once(',').unwrap();
                assert_eq!(y, format!("{TOP:.2}"));
            }
        }
    }
}
