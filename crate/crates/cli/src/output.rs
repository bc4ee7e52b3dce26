//! CSV and SVG writers.

use crate::error::CliError;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Named columns of equal length; the first is the abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<(&'static str, Vec<f64>)>,
}

impl Table {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }
}

/// `%.{sig}g`: fixed notation for exponents in `[-4, sig)`, scientific
/// otherwise, trailing zeros removed.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_csv(table: &Table, dir: &Path) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.csv", table.name));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .map_err(|e| csv_to_io(e, &path))?;
    w.write_record(table.columns.iter().map(|(h, _)| *h))
        .map_err(|e| csv_to_io(e, &path))?;
    for i in 0..table.rows() {
        w.write_record(
            table
                .columns
                .iter()
                .map(|(_, c)| format_sig(c[i], SIGNIFICANT_DIGITS)),
        )
        .map_err(|e| csv_to_io(e, &path))?;
    }
    w.flush().map_err(write_err(&path))?;
    Ok(path)
}

fn csv_to_io(e: csv::Error, path: &Path) -> CliError {
    CliError::Write {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

/// Header and numeric columns of a CSV written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>), csv::Error> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    let mut columns = vec![Vec::new(); header.len()];
    for record in r.records() {
        for (col, field) in columns.iter_mut().zip(record?.iter()) {
            col.push(field.parse().unwrap_or(f64::NAN));
        }
    }
    Ok((header, columns))
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN: f64 = 60.0;
const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Line chart of every column against the first.
pub fn write_svg(table: &Table, dir: &Path) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.svg", table.name));
    std::fs::write(&path, render_svg(table)).map_err(write_err(&path))?;
    Ok(path)
}

fn extent<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if lo < hi {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

pub fn render_svg(table: &Table) -> String {
    let (t_name, t) = &table.columns[0];
    let series = &table.columns[1..];
    let (t0, t1) = extent(t.iter());
    let (y0, y1) = extent(series.iter().flat_map(|(_, c)| c.iter()));
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |v: f64| MARGIN + (v - t0) / (t1 - t0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let labels = [
        (MARGIN, HEIGHT - MARGIN + 16.0, "middle", format_sig(t0, 4)),
        (
            WIDTH - MARGIN,
            HEIGHT - MARGIN + 16.0,
            "middle",
            format_sig(t1, 4),
        ),
        (MARGIN - 6.0, HEIGHT - MARGIN, "end", format_sig(y0, 4)),
        (MARGIN - 6.0, MARGIN + 4.0, "end", format_sig(y1, 4)),
        (
            WIDTH / 2.0,
            HEIGHT - MARGIN + 32.0,
            "middle",
            t_name.to_string(),
        ),
        (WIDTH / 2.0, MARGIN - 24.0, "middle", table.name.to_string()),
    ];
    for (x, y, anchor, text) in labels {
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{text}</text>"#
        );
    }
    for (i, (name, values)) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let points: Vec<String> = t
            .iter()
            .zip(values)
            .filter(|(_, v)| v.is_finite())
            .map(|(&ti, &v)| format!("{:.2},{:.2}", sx(ti), sy(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = MARGIN + 16.0 + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" fill="{colour}" text-anchor="end">{name}</text>"#,
            WIDTH - MARGIN - 8.0
        );
    }
    s.push_str("</svg>\n");
    s
}
