//! Curve bundles and gnuplot script emission.
//!
//! Three CSV shapes are understood: `rho,rho_L` curves from `analytic`,
//! `rho,A,...,p_hat,ci_lo,ci_hi` points from `simulate`, and the long-format
//! bundles written by `reproduce` (`series,kind,rho,value,ci_lo,ci_hi`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::args::config_error;
use crate::output::VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Monte Carlo estimate with a confidence interval.
    Sim,
    /// Analytic, exact or asymptotic curve.
    Curve,
    /// Vertical marker at `rho`; `value` repeats `rho`.
    Threshold,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleRow {
    pub series: String,
    pub kind: Kind,
    pub rho: f64,
    pub value: f64,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
}

impl BundleRow {
    pub fn curve(series: impl Into<String>, rho: f64, value: f64) -> Self {
        Self { series: series.into(), kind: Kind::Curve, rho, value, ci_lo: None, ci_hi: None }
    }

    pub fn threshold(series: impl Into<String>, rho: f64) -> Self {
        Self { series: series.into(), kind: Kind::Threshold, rho, value: rho, ci_lo: None, ci_hi: None }
    }

    pub fn sim(series: impl Into<String>, rho: f64, value: f64, lo: f64, hi: f64) -> Self {
        Self { series: series.into(), kind: Kind::Sim, rho, value, ci_lo: Some(lo), ci_hi: Some(hi) }
    }
}

/// `(rho, value, confidence interval)`.
type Point = (f64, f64, Option<(f64, f64)>);

#[derive(Debug, Default)]
struct Series {
    title: String,
    kind: Option<Kind>,
    points: Vec<Point>,
}

/// Parses any of the supported CSV shapes into bundle rows.
pub fn read_rows(reader: impl Read, default_title: &str) -> Result<Vec<BundleRow>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).flexible(false).from_reader(reader);
    let headers = match rdr.headers() {
        Ok(h) => h.clone(),
        Err(e) => return Err(config_error(format!("malformed CSV: {e}"))),
    };
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let num = |rec: &csv::StringRecord, i: usize, line: u64| -> Result<f64> {
        let field = rec.get(i).unwrap_or("").trim();
        field
            .parse::<f64>()
            .map_err(|_| config_error(format!("malformed CSV: line {line}: {field:?} is not a number")))
    };
    let mut rows = Vec::new();
    if let (Some(_), Some(_), Some(_), Some(_)) = (col("series"), col("kind"), col("rho"), col("value")) {
        for rec in rdr.deserialize::<BundleRow>() {
            rows.push(rec.map_err(|e| config_error(format!("malformed CSV: {e}")))?);
        }
    } else if let (Some(r), Some(p)) = (col("rho"), col("p_hat")) {
        let (a, lo, hi) = (col("A"), col("ci_lo"), col("ci_hi"));
        for rec in rdr.records() {
            let rec = rec.map_err(|e| config_error(format!("malformed CSV: {e}")))?;
            let line = rec.position().map_or(0, |p| p.line());
            let series = match a {
                Some(i) => format!("{default_title} A={}", rec.get(i).unwrap_or("").trim()),
                None => default_title.to_string(),
            };
            let (rho, value) = (num(&rec, r, line)?, num(&rec, p, line)?);
            let ci = match (lo, hi) {
                (Some(l), Some(h)) => (num(&rec, l, line)?, num(&rec, h, line)?),
                _ => (value, value),
            };
            rows.push(BundleRow::sim(series, rho, value, ci.0, ci.1));
        }
    } else if let (Some(r), Some(v)) = (col("rho"), col("rho_L")) {
        for rec in rdr.records() {
            let rec = rec.map_err(|e| config_error(format!("malformed CSV: {e}")))?;
            let line = rec.position().map_or(0, |p| p.line());
            rows.push(BundleRow::curve(default_title, num(&rec, r, line)?, num(&rec, v, line)?));
        }
    } else {
        bail!(config_error(format!(
            "malformed CSV: unrecognised columns {:?}",
            headers.iter().collect::<Vec<_>>()
        )));
    }
    Ok(rows)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Log-log gnuplot script with inline data blocks. Returns the script and
/// any warnings (no data, points dropped from the log axes).
pub fn gnuplot_script(rows: &[BundleRow], source: &str, uncoded: bool) -> (String, Vec<String>) {
    let mut warnings = Vec::new();
    let mut order: Vec<String> = Vec::new();
    let mut series: BTreeMap<String, Series> = BTreeMap::new();
    let mut thresholds = Vec::new();
    let mut dropped = 0;
    for row in rows {
        if row.kind == Kind::Threshold {
            thresholds.push((row.series.clone(), row.rho));
            continue;
        }
        if row.rho <= 0.0 || row.value <= 0.0 {
            dropped += 1;
            continue;
        }
        let s = series.entry(row.series.clone()).or_insert_with(|| {
            order.push(row.series.clone());
            Series { title: row.series.clone(), ..Series::default() }
        });
        s.kind = Some(row.kind);
        let ci = row.ci_lo.zip(row.ci_hi);
        s.points.push((row.rho, row.value, ci));
    }
    if dropped > 0 {
        warnings.push(format!("{dropped} rows with non-positive rho or value left off the log-log axes"));
    }

    let mut out = String::new();
    let _ = writeln!(out, "# gnuplot script written by qsurf {VERSION} from {source}");
    let _ = writeln!(out, "# set terminal pngcairo size 900,700; set output 'figure.png'");
    out.push_str("set termoption noenhanced\nset logscale xy\nset format y '%.0e'\n");
    out.push_str("set xlabel 'rho'\nset ylabel 'rho_L'\nset key top left\nset grid\n");
    for (name, rho) in &thresholds {
        let _ = writeln!(out, "set arrow from {rho}, graph 0 to {rho}, graph 1 nohead dashtype 3 # {name}");
    }
    if order.is_empty() {
        warnings.push(format!("no data rows in {source}; the script has no plot lines"));
        return (out, warnings);
    }
    for (i, name) in order.iter().enumerate() {
        let s = &series[name];
        let _ = writeln!(out, "$d{i} << EOD");
        for &(x, y, ci) in &s.points {
            match ci {
                Some((lo, hi)) => {
                    let _ = writeln!(out, "{x:e} {y:e} {lo:e} {hi:e}");
                }
                None => {
                    let _ = writeln!(out, "{x:e} {y:e}");
                }
            }
        }
        out.push_str("EOD\n");
    }
    let mut items = Vec::new();
    for (i, name) in order.iter().enumerate() {
        let s = &series[name];
        let style = match s.kind {
            Some(Kind::Sim) => "using 1:2:3:4 with yerrorbars pointtype 7",
            _ => "using 1:2 with lines linewidth 2",
        };
        items.push(format!("$d{i} {style} title {}", quote(&s.title)));
    }
    if uncoded {
        items.push("x with lines dashtype 2 linecolor rgb 'black' title 'uncoded'".to_string());
    }
    let _ = writeln!(out, "plot {}", items.join(", \\\n     "));
    (out, warnings)
}

/// Reads `path` and renders its script.
pub fn script_for_file(path: &std::path::Path, uncoded: bool) -> Result<(String, Vec<String>)> {
    let file = std::fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let title = path.file_stem().and_then(|s| s.to_str()).unwrap_or("data");
    let rows = read_rows(file, title)?;
    Ok(gnuplot_script(&rows, &path.display().to_string(), uncoded))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_all_shapes() {
        let curve = "# provenance {}\nrho,rho_L\n0.01,0.001\n0.02,0.004\n";
        let rows = read_rows(curve.as_bytes(), "c").unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], BundleRow::curve("c", 0.02, 0.004));

        let sim = "rho,A,trials,failures,p_hat,ci_lo,ci_hi\n0.1,inf,100,10,0.1,0.05,0.17\n";
        let rows = read_rows(sim.as_bytes(), "s").unwrap();
        assert_eq!(rows[0], BundleRow::sim("s A=inf", 0.1, 0.1, 0.05, 0.17));

        let bundle = "series,kind,rho,value,ci_lo,ci_hi\nthr,threshold,0.05,0.05,,\nx,curve,0.1,0.2,,\n";
        let rows = read_rows(bundle.as_bytes(), "b").unwrap();
        assert_eq!(rows[0], BundleRow::threshold("thr", 0.05));
        assert_eq!(rows[1].kind, Kind::Curve);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_rows("a,b\n1,2\n".as_bytes(), "x").is_err());
        assert!(read_rows("rho,rho_L\n0.1,abc\n".as_bytes(), "x").is_err());
        assert!(read_rows("rho,rho_L\n0.1\n".as_bytes(), "x").is_err());
    }

    #[test]
    fn empty_input_gives_script_without_plot() {
        let rows = read_rows("".as_bytes(), "x").unwrap();
        let (script, warnings) = gnuplot_script(&rows, "empty.csv", true);
        assert!(!script.lines().any(|l| l.starts_with("plot ")));
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn script_has_series_thresholds_and_uncoded() {
        let rows = vec![
            BundleRow::sim("mc", 0.01, 0.002, 0.001, 0.003),
            BundleRow::sim("mc", 0.02, 0.0, 0.0, 0.001),
            BundleRow::curve("fit \"a\"", 0.01, 0.0021),
            BundleRow::threshold("thr", 0.0534),
        ];
        let (script, warnings) = gnuplot_script(&rows, "b.csv", true);
        assert!(script.contains("set logscale xy"));
        assert!(script.contains("set arrow from 0.0534"));
        assert!(script.contains("$d0 using 1:2:3:4 with yerrorbars"));
        assert!(script.contains("title \"fit \\\"a\\\"\""));
        assert!(script.contains("title 'uncoded'"));
        assert_eq!(warnings.len(), 1);
        let (script, _) = gnuplot_script(&rows, "b.csv", false);
        assert!(!script.contains("uncoded"));
    }
}
