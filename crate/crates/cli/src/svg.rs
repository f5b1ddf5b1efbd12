//! Static SVG rendering of a chart in Adams indexing: stem t - s on the
//! x-axis, filtration s on the y-axis, one dot per dimension unit. Sphere
//! charts also get their proven vanishing line drawn. Output is a pure
//! function of the chart, so identical inputs give identical bytes.

use exponent_core::{vanishing_strip_bound, ExtChart};
use std::fmt::Write as _;

const CELL: i64 = 18;
const MARGIN: i64 = 42;
const DOT_RADIUS: i64 = 2;
/// Multiple dots in one bidegree sit on a small 3-wide grid.
const DOT_STEP: i64 = 6;

fn x_of(stem: i64, _height: i64) -> i64 {
    MARGIN + stem * CELL + CELL / 2
}

fn y_of(s: i64, height: i64) -> i64 {
    height - MARGIN - s * CELL - CELL / 2
}

/// Render the chart as a standalone SVG document.
pub fn render_svg(chart: &ExtChart) -> String {
    let stems = i64::from(chart.t_max());
    let filts = i64::from(chart.s_max());
    let width = 2 * MARGIN + (stems + 1) * CELL;
    let height = 2 * MARGIN + (filts + 1) * CELL;

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    writeln!(svg, "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>").unwrap();
    writeln!(
        svg,
        "  <!-- {} chart at p = {}, window s <= {}, t <= {} -->",
        chart.module_name(),
        chart.prime().get(),
        chart.s_max(),
        chart.t_max()
    )
    .unwrap();

    // Axes.
    let x0 = MARGIN;
    let y0 = height - MARGIN;
    let x1 = width - MARGIN;
    let y1 = MARGIN;
    writeln!(
        svg,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\" stroke-width=\"1\"/>"
    )
    .unwrap();
    writeln!(
        svg,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\" stroke-width=\"1\"/>"
    )
    .unwrap();
    for stem in (0..=stems).step_by(5) {
        let x = x_of(stem, height);
        writeln!(
            svg,
            "  <text x=\"{x}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{stem}</text>",
            y0 + 14
        )
        .unwrap();
    }
    for s in (0..=filts).step_by(5) {
        let y = y_of(s, height);
        writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{s}</text>",
            x0 - 6,
            y + 3
        )
        .unwrap();
    }

    // The proven-empty strip boundary t = bound(s), in stem coordinates
    // x = bound(s) - s, clipped to the window.
    if chart.module_name() == "sphere" {
        let mut pts = Vec::new();
        for s in 0..=filts {
            let bound = vanishing_strip_bound(chart.prime(), s as u32);
            let stem = bound - s;
            if stem >= 0 && stem <= stems {
                pts.push(format!("{},{}", x_of(stem, height), y_of(s, height)));
            }
        }
        if pts.len() >= 2 {
            writeln!(
                svg,
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>",
                pts.join(" ")
            )
            .unwrap();
        }
    }

    // One dot per dimension unit.
    for (s, t, dim) in chart.entries() {
        let stem = i64::from(t) - i64::from(s);
        if stem < 0 || stem > stems {
            continue;
        }
        let cx = x_of(stem, height);
        let cy = y_of(i64::from(s), height);
        let n = i64::from(dim);
        let cols = n.min(3);
        let rows = i64::from(dim.div_ceil(3));
        for k in 0..n {
            let dx = (k % 3) * DOT_STEP - (cols - 1) * DOT_STEP / 2;
            let dy = (k / 3) * DOT_STEP - (rows - 1) * DOT_STEP / 2;
            writeln!(
                svg,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"{DOT_RADIUS}\" fill=\"black\"/>",
                cx + dx,
                cy + dy
            )
            .unwrap();
        }
    }

    svg.push_str("</svg>\n");
    svg
}
