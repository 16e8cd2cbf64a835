//! Bit-exact table serialization.
//!
//! CSV rows carry the full point coordinates plus every observable, with
//! floats printed to 12 significant digits: everything physically meaningful
//! survives a round-trip while files stay diffable. Near-singular points
//! keep their coordinates, leave the value cells empty and set the flag
//! column. JSON carries the same rows at full precision together with the
//! base configuration and axes.

use std::io::Write;

use serde::Serialize;

use phase_cavity::{SweepPoint, SweepResult};

use crate::CliError;

/// Fixed CSV header.
pub const CSV_HEADER: &str =
    "delta_p,phi1,phi2,i_c,i_out_r,i_out_l,i_total,absorption,chi_re,chi_im,flag";

/// Significant digits used for CSV serialization.
pub const CSV_SIG_DIGITS: usize = 12;

/// Format `x` with `sig` significant digits, shortest-form style: fixed
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// trimmed. Deterministic and locale-independent.
pub fn format_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn csv_row(pt: &SweepPoint) -> String {
    let f = |x: f64| format_sig(x, CSV_SIG_DIGITS);
    match &pt.record {
        Ok(rec) => [
            f(pt.delta_p),
            f(pt.phi1),
            f(pt.phi2),
            f(rec.i_c),
            f(rec.i_out_r),
            f(rec.i_out_l),
            f(rec.i_total),
            f(rec.absorption),
            f(rec.chi.re),
            f(rec.chi.im),
            String::new(),
        ]
        .join(","),
        Err(_) => [
            f(pt.delta_p),
            f(pt.phi1),
            f(pt.phi2),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            "near_singular".to_string(),
        ]
        .join(","),
    }
}

/// Serialize a table as CSV with LF line endings. Zero-row tables are
/// rejected rather than silently emitting a bare header.
pub fn write_csv<W: Write>(result: &SweepResult, w: &mut W) -> Result<(), CliError> {
    if result.points.is_empty() {
        return Err(CliError::Validation {
            name: "records".to_string(),
            msg: "refusing to serialize an empty table".to_string(),
        });
    }
    writeln!(w, "{CSV_HEADER}")?;
    for pt in &result.points {
        writeln!(w, "{}", csv_row(pt))?;
    }
    Ok(())
}

/// Render a table to a CSV string.
pub fn csv_string(result: &SweepResult) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_csv(result, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ascii"))
}

#[derive(Serialize)]
struct JsonParams {
    g_n: f64,
    omega1: f64,
    omega2: f64,
    omega_t: f64,
    kappa: f64,
    gamma12: f64,
    gamma3: f64,
    gamma4: f64,
    delta1: f64,
    delta2: f64,
    delta_t: f64,
    delta_ac: f64,
    phi1: f64,
    phi2: f64,
    delta_p: f64,
}

#[derive(Serialize)]
struct JsonAxis {
    name: String,
    start: f64,
    stop: f64,
    count: usize,
}

#[derive(Serialize)]
struct JsonRow {
    delta_p: f64,
    phi1: f64,
    phi2: f64,
    i_c: Option<f64>,
    i_out_r: Option<f64>,
    i_out_l: Option<f64>,
    i_total: Option<f64>,
    absorption: Option<f64>,
    chi_re: Option<f64>,
    chi_im: Option<f64>,
    flag: Option<&'static str>,
}

#[derive(Serialize)]
struct JsonDoc {
    base: JsonParams,
    axes: Vec<JsonAxis>,
    rows: Vec<JsonRow>,
}

/// Serialize a table as pretty-printed JSON carrying the base configuration,
/// the axes and one object per row.
pub fn write_json<W: Write>(result: &SweepResult, w: &mut W) -> Result<(), CliError> {
    if result.points.is_empty() {
        return Err(CliError::Validation {
            name: "records".to_string(),
            msg: "refusing to serialize an empty table".to_string(),
        });
    }
    let p = &result.base;
    let doc = JsonDoc {
        base: JsonParams {
            g_n: p.g_n,
            omega1: p.omega1,
            omega2: p.omega2,
            omega_t: p.omega_t,
            kappa: p.kappa,
            gamma12: p.gamma12,
            gamma3: p.gamma3,
            gamma4: p.gamma4,
            delta1: p.delta1,
            delta2: p.delta2,
            delta_t: p.delta_t,
            delta_ac: p.delta_ac,
            phi1: p.phi1,
            phi2: p.phi2,
            delta_p: result.base_delta_p,
        },
        axes: result
            .axes
            .iter()
            .map(|ax| JsonAxis {
                name: ax.name.to_string(),
                start: ax.start,
                stop: ax.stop,
                count: ax.count,
            })
            .collect(),
        rows: result
            .points
            .iter()
            .map(|pt| match &pt.record {
                Ok(rec) => JsonRow {
                    delta_p: pt.delta_p,
                    phi1: pt.phi1,
                    phi2: pt.phi2,
                    i_c: Some(rec.i_c),
                    i_out_r: Some(rec.i_out_r),
                    i_out_l: Some(rec.i_out_l),
                    i_total: Some(rec.i_total),
                    absorption: Some(rec.absorption),
                    chi_re: Some(rec.chi.re),
                    chi_im: Some(rec.chi.im),
                    flag: None,
                },
                Err(_) => JsonRow {
                    delta_p: pt.delta_p,
                    phi1: pt.phi1,
                    phi2: pt.phi2,
                    i_c: None,
                    i_out_r: None,
                    i_out_l: None,
                    i_total: None,
                    absorption: None,
                    chi_re: None,
                    chi_im: None,
                    flag: Some("near_singular"),
                },
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut *w, &doc).map_err(|e| CliError::Io(e.into()))?;
    writeln!(w)?;
    Ok(())
}

/// One parsed CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub delta_p: f64,
    pub phi1: f64,
    pub phi2: f64,
    /// `i_c, i_out_r, i_out_l, i_total, absorption, chi_re, chi_im` for
    /// clean rows, `None` for flagged ones.
    pub values: Option<[f64; 7]>,
    pub flag: String,
}

/// Parse CSV text produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => {
            return Err(CliError::Parse {
                line: 1,
                msg: "missing or unexpected header".to_string(),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 11 {
            return Err(CliError::Parse {
                line: line_no,
                msg: format!("expected 11 cells, got {}", cells.len()),
            });
        }
        let num = |s: &str| -> Result<f64, CliError> {
            s.parse().map_err(|_| CliError::Parse {
                line: line_no,
                msg: format!("`{s}` is not a number"),
            })
        };
        let flag = cells[10].to_string();
        let values = if flag.is_empty() {
            let mut vals = [0.0; 7];
            for (slot, cell) in vals.iter_mut().zip(&cells[3..10]) {
                *slot = num(cell)?;
            }
            Some(vals)
        } else {
            None
        };
        rows.push(CsvRow {
            delta_p: num(cells[0])?,
            phi1: num(cells[1])?,
            phi2: num(cells[2])?,
            values,
            flag,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use phase_cavity::sweep::{sweep_1d, Axis, AxisName};
    use phase_cavity::SystemParams;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(-0.0, 12), "0");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(-5.0, 12), "-5");
        assert_eq!(format_sig(0.25, 12), "0.25");
        assert_eq!(format_sig(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_sig(PI, 12), "3.14159265359");
        assert_eq!(format_sig(1e-32, 12), "1e-32");
        assert_eq!(format_sig(-9.123456789e-33, 4), "-9.123e-33");
        assert_eq!(format_sig(1.5e15, 12), "1.5e15");
        assert_eq!(format_sig(0.000123456789012345, 12), "0.000123456789012");
        assert_eq!(format_sig(0.9999999999999, 6), "1");
    }

    #[test]
    fn parsed_values_round_trip_to_twelve_digits() {
        for &x in &[PI, 2.0 / 3.0, 1.23456789e-7, -4.4e13, 0.1 + 0.2] {
            let s = format_sig(x, 12);
            let back: f64 = s.parse().unwrap();
            assert!(
                (back - x).abs() <= 1e-11 * x.abs(),
                "{x} -> {s} -> {back}"
            );
        }
    }

    #[test]
    fn header_and_row_values() {
        let mut p = SystemParams::default();
        p.phi2 = PI;
        let ax = Axis::new(AxisName::Phi2, 0.0, TAU, 2).unwrap();
        // Single-point table via a direct evaluation at phi2 = pi.
        let sw = phase_cavity::sweep::SweepResult {
            base: p,
            base_delta_p: 0.0,
            axes: vec![ax],
            points: vec![phase_cavity::SweepPoint {
                delta_p: 0.0,
                phi1: p.phi1,
                phi2: p.phi2,
                record: phase_cavity::intensity_ratios(&p, 0.0),
            }],
        };
        let text = csv_string(&sw).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let rows = parse_csv(&text).unwrap();
        assert_eq!(rows.len(), 1);
        let vals = rows[0].values.unwrap();
        assert!(vals[0].abs() <= 1e-12); // i_c
        assert!((vals[1] - 1.0).abs() <= 1e-12); // i_out_r
        assert!((vals[2] - 1.0).abs() <= 1e-12); // i_out_l
        assert!((vals[3] - 2.0).abs() <= 1e-12); // i_total
        assert!(!text.contains('\r'));
    }

    #[test]
    fn csv_round_trip_preserves_twelve_digits() {
        let p = SystemParams::default();
        let ax = Axis::new(AxisName::DeltaP, -5.0, 5.0, 21).unwrap();
        let sw = sweep_1d(&p, 0.0, &ax);
        let text = csv_string(&sw).unwrap();
        let rows = parse_csv(&text).unwrap();
        assert_eq!(rows.len(), sw.points.len());
        for (row, pt) in rows.iter().zip(&sw.points) {
            let rec = pt.record.as_ref().unwrap();
            let vals = row.values.unwrap();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-11 * b.abs().max(1e-300);
            assert!(close(row.delta_p, pt.delta_p));
            assert!(close(vals[0], rec.i_c));
            assert!(close(vals[1], rec.i_out_r));
            assert!(close(vals[2], rec.i_out_l));
            assert!(close(vals[5], rec.chi.re));
            assert!(close(vals[6], rec.chi.im));
        }
    }

    #[test]
    fn flagged_rows_keep_coordinates_and_flag() {
        let mut p = SystemParams::default();
        p.omega1 = 0.0;
        p.omega2 = 0.0;
        p.omega_t = 0.0;
        p.gamma12 = 1e-300;
        let ax = Axis::new(AxisName::DeltaP, -1.0, 1.0, 3).unwrap();
        let sw = sweep_1d(&p, 0.0, &ax);
        let text = csv_string(&sw).unwrap();
        let rows = parse_csv(&text).unwrap();
        assert_eq!(rows[1].flag, "near_singular");
        assert!(rows[1].values.is_none());
        assert_eq!(rows[1].delta_p, 0.0);
        assert_eq!(rows[0].flag, "");
    }

    #[test]
    fn empty_tables_are_rejected() {
        let p = SystemParams::default();
        let sw = phase_cavity::sweep::SweepResult {
            base: p,
            base_delta_p: 0.0,
            axes: vec![],
            points: vec![],
        };
        assert!(matches!(
            csv_string(&sw),
            Err(CliError::Validation { .. })
        ));
        let mut buf = Vec::new();
        assert!(write_json(&sw, &mut buf).is_err());
    }

    #[test]
    fn json_and_csv_encode_identical_values() {
        let p = SystemParams::default();
        let ax = Axis::new(AxisName::Phi1, 0.0, TAU, 11).unwrap();
        let sw = sweep_1d(&p, 1.5, &ax);
        let rows = parse_csv(&csv_string(&sw).unwrap()).unwrap();

        let mut buf = Vec::new();
        write_json(&sw, &mut buf).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let jrows = doc["rows"].as_array().unwrap();
        assert_eq!(jrows.len(), rows.len());

        let twelve = |x: f64| -> f64 { format_sig(x, 12).parse().unwrap() };
        for (jrow, crow) in jrows.iter().zip(&rows) {
            let vals = crow.values.unwrap();
            for (key, cval) in [
                ("i_c", vals[0]),
                ("i_out_r", vals[1]),
                ("i_out_l", vals[2]),
                ("i_total", vals[3]),
                ("absorption", vals[4]),
                ("chi_re", vals[5]),
                ("chi_im", vals[6]),
            ] {
                let jval = jrow[key].as_f64().unwrap();
                assert_eq!(twelve(jval), cval, "field {key}");
            }
        }
        assert_eq!(doc["base"]["kappa"].as_f64().unwrap(), 1.0);
        assert_eq!(doc["axes"][0]["count"].as_u64().unwrap(), 11);
    }
}
