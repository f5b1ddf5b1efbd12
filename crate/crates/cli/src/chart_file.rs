//! Line-oriented chart serialization.
//!
//! The format is a fixed four-line header followed by one `s t dim` triple
//! per nonzero entry, sorted by (s, t):
//!
//! ```text
//! ext-chart v1
//! prime 2
//! module sphere
//! window 10 30
//! 0 0 1
//! 1 1 1
//! ...
//! ```
//!
//! Parsing is strict: wrong version, missing header fields, zero dimensions,
//! unsorted or duplicate entries are all rejected, so a parsed chart always
//! round-trips byte for byte.

use exponent_core::{ChartError, ExtChart, Prime, PrimeError};
use std::fmt::Write as _;
use thiserror::Error;

pub const FORMAT_VERSION: &str = "v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartFileError {
    #[error("line {line}: expected `{expected}`")]
    MissingHeader { line: usize, expected: &'static str },
    #[error("unsupported format version {found}, expected {FORMAT_VERSION}")]
    BadVersion { found: String },
    #[error("line {line}: malformed entry `{content}`")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: dimensions must be positive")]
    ZeroDimension { line: usize },
    #[error("line {line}: entries must be sorted by (s, t) without repeats")]
    OutOfOrder { line: usize },
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

/// Serialize a chart in the line-oriented format.
pub fn render_chart(chart: &ExtChart) -> String {
    let mut out = String::new();
    writeln!(out, "ext-chart {FORMAT_VERSION}").unwrap();
    writeln!(out, "prime {}", chart.prime().get()).unwrap();
    writeln!(out, "module {}", chart.module_name()).unwrap();
    writeln!(out, "window {} {}", chart.s_max(), chart.t_max()).unwrap();
    for (s, t, dim) in chart.entries() {
        writeln!(out, "{s} {t} {dim}").unwrap();
    }
    out
}

fn header_value<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    expected: &'static str,
) -> Result<(usize, &'a str), ChartFileError> {
    let (line, content) = lines
        .next()
        .ok_or(ChartFileError::MissingHeader { line: 0, expected })?;
    content
        .strip_prefix(expected)
        .and_then(|rest| rest.strip_prefix(' '))
        .map(|rest| (line, rest.trim_end()))
        .ok_or(ChartFileError::MissingHeader { line, expected })
}

/// Parse the line-oriented format back into a chart.
pub fn parse_chart(text: &str) -> Result<ExtChart, ChartFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (line, version) = header_value(&mut lines, "ext-chart")?;
    let _ = line;
    if version != FORMAT_VERSION {
        return Err(ChartFileError::BadVersion { found: version.to_string() });
    }
    let (line, prime_text) = header_value(&mut lines, "prime")?;
    let prime_value: u32 = prime_text.parse().map_err(|_| ChartFileError::MalformedLine {
        line,
        content: prime_text.to_string(),
    })?;
    let p = Prime::new(prime_value)?;
    let (_, module) = header_value(&mut lines, "module")?;
    let module = module.to_string();
    let (line, window) = header_value(&mut lines, "window")?;
    let window_fields: Vec<&str> = window.split_whitespace().collect();
    let [s_max, t_max] = window_fields.as_slice() else {
        return Err(ChartFileError::MalformedLine { line, content: window.to_string() });
    };
    let bad_window = |_| ChartFileError::MalformedLine { line, content: window.to_string() };
    let s_max: u32 = s_max.parse().map_err(bad_window)?;
    let t_max: u32 = t_max.parse().map_err(bad_window)?;

    let mut entries: Vec<(u32, u32, u32)> = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let malformed = || ChartFileError::MalformedLine { line, content: content.to_string() };
        let [s, t, dim] = fields.as_slice() else {
            return Err(malformed());
        };
        let s: u32 = s.parse().map_err(|_| malformed())?;
        let t: u32 = t.parse().map_err(|_| malformed())?;
        let dim: u32 = dim.parse().map_err(|_| malformed())?;
        if dim == 0 {
            return Err(ChartFileError::ZeroDimension { line });
        }
        if let Some(&(ps, pt, _)) = entries.last() {
            if (s, t) <= (ps, pt) {
                return Err(ChartFileError::OutOfOrder { line });
            }
        }
        entries.push((s, t, dim));
    }
    Ok(ExtChart::new(p, module, s_max, t_max, entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExtChart {
        ExtChart::new(
            Prime::TWO,
            "sphere",
            3,
            6,
            vec![(0, 0, 1), (1, 1, 1), (1, 2, 1), (2, 2, 1), (2, 4, 2), (3, 3, 1)],
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_lossless() {
        let chart = sample();
        let text = render_chart(&chart);
        let back = parse_chart(&text).unwrap();
        assert_eq!(back, chart);
        assert_eq!(render_chart(&back), text);
    }

    #[test]
    fn renders_expected_layout() {
        let text = render_chart(&sample());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines,
            vec![
                "ext-chart v1",
                "prime 2",
                "module sphere",
                "window 3 6",
                "0 0 1",
                "1 1 1",
                "1 2 1",
                "2 2 1",
                "2 4 2",
                "3 3 1",
            ]
        );
    }

    #[test]
    fn rejects_bad_version() {
        let text = render_chart(&sample()).replace("ext-chart v1", "ext-chart v9");
        assert_eq!(
            parse_chart(&text),
            Err(ChartFileError::BadVersion { found: "v9".to_string() })
        );
    }

    #[test]
    fn rejects_missing_header_and_garbage() {
        assert!(matches!(
            parse_chart("prime 2\n"),
            Err(ChartFileError::MissingHeader { expected: "ext-chart", .. })
        ));
        let text = render_chart(&sample()) + "5 5\n";
        assert!(matches!(parse_chart(&text), Err(ChartFileError::MalformedLine { .. })));
        let text = render_chart(&sample()) + "4 4 x\n";
        assert!(matches!(parse_chart(&text), Err(ChartFileError::MalformedLine { .. })));
    }

    #[test]
    fn rejects_zero_dims_and_disorder() {
        let base = "ext-chart v1\nprime 2\nmodule sphere\nwindow 3 6\n";
        assert!(matches!(
            parse_chart(&format!("{base}1 1 0\n")),
            Err(ChartFileError::ZeroDimension { .. })
        ));
        assert!(matches!(
            parse_chart(&format!("{base}1 2 1\n1 1 1\n")),
            Err(ChartFileError::OutOfOrder { .. })
        ));
        assert!(matches!(
            parse_chart(&format!("{base}1 2 1\n1 2 1\n")),
            Err(ChartFileError::OutOfOrder { .. })
        ));
    }

    #[test]
    fn rejects_out_of_window_entries() {
        let base = "ext-chart v1\nprime 2\nmodule sphere\nwindow 3 6\n";
        assert!(matches!(
            parse_chart(&format!("{base}4 4 1\n")),
            Err(ChartFileError::Chart(ChartError::EntryOutsideWindow { .. }))
        ));
    }

    #[test]
    fn rejects_composite_prime() {
        let text = "ext-chart v1\nprime 6\nmodule sphere\nwindow 3 6\n";
        assert!(matches!(parse_chart(text), Err(ChartFileError::Prime(_))));
    }

    #[test]
    fn empty_chart_round_trips() {
        let chart = ExtChart::new(Prime::TWO, "sphere", 2, 2, Vec::new()).unwrap();
        let back = parse_chart(&render_chart(&chart)).unwrap();
        assert_eq!(back, chart);
    }
}
