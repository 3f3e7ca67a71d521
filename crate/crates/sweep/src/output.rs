//! CSV rendering and the companion gnuplot script.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::{Emit, Method, SweepConfig};
use crate::error::{Result, SweepError};
use crate::rows::{ResultRow, HEADER};

const SIGNIFICANT: i32 = 12;

/// `%.12g`-style rendering; `-0` prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (SIGNIFICANT - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIGNIFICANT).contains(&exp) {
        let fixed = format!("{:.*}", (SIGNIFICANT - 1 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn record(row: &ResultRow) -> [String; 14] {
    [
        row.omega.to_string(),
        format_number(row.chi),
        format_number(row.vx_over_eps),
        row.method.as_str().to_string(),
        format_number(row.energy),
        row.parity.to_string(),
        format_number(row.theta),
        format_number(row.one_body_e_per_2omega),
        format_number(row.updown_e_per_omega),
        format_number(row.concurrence),
        format_number(row.scaled_concurrence),
        row.concurrence_kind.as_str().to_string(),
        format_number(row.negativity),
        (row.degenerate_flag as u8).to_string(),
    ]
}

pub fn write_table<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn render_table(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_table(rows, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is utf-8")
}

/// Path of the plot script written next to `data`.
pub fn plotscript_path(data: &Path) -> PathBuf {
    data.with_extension("gp")
}

/// Gnuplot script with one panel per measure and one curve per (χ, method).
pub fn plotscript(cfg: &SweepConfig, data: &Path) -> String {
    let file = data
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let panels = [(8, "E/(2Ω)"), (9, "E^{+-}/Ω"), (11, "ΩC/2"), (13, "N^{+-}")];
    let mut s = String::new();
    s.push_str("# gnuplot script; run from the directory holding the data file\n");
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("data = '{file}'\n"));
    s.push_str("set multiplot layout 2,2\n");
    let grid_methods: Vec<Method> = cfg
        .methods
        .iter()
        .copied()
        .filter(|m| *m != Method::Kstates)
        .collect();
    for (col, label) in panels {
        s.push_str(&format!("set ylabel '{label}'\n"));
        let mut curves = Vec::new();
        if !grid_methods.is_empty() {
            for &chi in &cfg.chi_list {
                for m in &grid_methods {
                    curves.push(format!(
                        "data using (strcol(4) eq '{m}' && $2 == {chi} ? $3 : NaN):{col} with lines title '{m} χ={chi}'",
                        chi = format_number(chi)
                    ));
                }
            }
        }
        if cfg.methods.contains(&Method::Kstates) {
            curves.push(format!(
                "data using (strcol(4) eq 'kstates' ? $3 : NaN):{col} with linespoints title '|K>'"
            ));
        }
        let xlabel = if grid_methods.is_empty() {
            "K"
        } else {
            "v_x/ε"
        };
        s.push_str(&format!("set xlabel '{xlabel}'\n"));
        s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
    }
    s.push_str("unset multiplot\n");
    s
}

/// Writes the table to the configured path (stdout when unset) and, for
/// `Emit::Plotscript`, the script beside it.
pub fn emit(cfg: &SweepConfig, rows: &[ResultRow]) -> Result<()> {
    match &cfg.output_path {
        None => {
            let stdout = std::io::stdout();
            write_table(rows, stdout.lock())
        }
        Some(path) => {
            let io = |source| SweepError::Io {
                path: path.clone(),
                source,
            };
            let file = fs::File::create(path).map_err(io)?;
            write_table(rows, std::io::BufWriter::new(file))?;
            if cfg.emit == Emit::Plotscript {
                let script = plotscript_path(path);
                fs::write(&script, plotscript(cfg, path)).map_err(|source| SweepError::Io {
                    path: script.clone(),
                    source,
                })?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-25.0), "-25");
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(2f64.sqrt()), "1.41421356237");
        assert_eq!(format_number(2.98e-8), "2.98e-8");
        assert_eq!(format_number(1.5e-5), "1.5e-5");
        assert_eq!(format_number(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_number(9.9999999999999), "10");
    }

    #[test]
    fn script_mentions_every_curve() {
        let cfg = SweepConfig {
            chi_list: vec![0.0, 0.5],
            methods: vec![Method::Exact, Method::Pmfv],
            ..SweepConfig::default()
        };
        let s = plotscript(&cfg, Path::new("/tmp/out/fig5.csv"));
        assert!(s.contains("data = 'fig5.csv'"));
        assert_eq!(s.matches("title 'pmfv χ=0.5'").count(), 4);
        assert_eq!(
            plotscript_path(Path::new("a/b.csv")),
            PathBuf::from("a/b.gp")
        );
    }
}
