//! CSV and singularity-report files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Result, SweepError};
use crate::sweep::{Marker, SingularityReport, SweepRecord};

pub const CSV_FILE: &str = "sweep.csv";
pub const REPORT_FILE: &str = "singularities.txt";

/// Twelve significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn csv_header(labels: &[String]) -> String {
    let mut cols = vec!["control".to_string(), "free_energy_per_site".into(), "entropy".into()];
    cols.extend(labels.iter().map(|l| format!("mean_{l}")));
    cols.extend(["concurrence", "negativity", "dF", "d2F", "dC", "dN"].map(String::from));
    cols.join(",")
}

pub fn render_csv(labels: &[String], records: &[SweepRecord]) -> String {
    let mut out = csv_header(labels);
    out.push('\n');
    for r in records {
        let mut row = vec![r.control_value, r.free_energy, r.entropy];
        row.extend(&r.means);
        row.extend([r.concurrence, r.negativity, r.d_f, r.d2_f, r.d_c, r.d_n]);
        out.push_str(&row.into_iter().map(format_number).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn render_report(report: &SingularityReport) -> String {
    let mut out = String::from(
        "# interior argmax of |derivative| over the control grid\n\
         # candidate singularity markers; locations are reported, not compared\n",
    );
    let line = |out: &mut String, name: &str, m: &Marker| {
        let _ = writeln!(
            out,
            "{name} control={} value={} index={}",
            format_number(m.control_value),
            format_number(m.value),
            m.index
        );
    };
    line(&mut out, "d2F", &report.d2_free_energy);
    line(&mut out, "dC", &report.d_concurrence);
    line(&mut out, "dN", &report.d_negativity);
    out
}

/// Writes `sweep.csv` and `singularities.txt` into `dir` (created if needed)
/// and returns their paths.
pub fn write_csv(
    labels: &[String],
    records: &[SweepRecord],
    report: &SingularityReport,
    dir: &Path,
) -> Result<(PathBuf, PathBuf)> {
    if records.is_empty() {
        return Err(SweepError::Config("refusing to write a sweep without records".into()));
    }
    std::fs::create_dir_all(dir).map_err(|e| SweepError::io(dir, e))?;
    let csv = dir.join(CSV_FILE);
    std::fs::write(&csv, render_csv(labels, records)).map_err(|e| SweepError::io(&csv, e))?;
    let rep = dir.join(REPORT_FILE);
    std::fs::write(&rep, render_report(report)).map_err(|e| SweepError::io(&rep, e))?;
    Ok((csv, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(x: f64) -> SweepRecord {
        SweepRecord {
            control_value: x,
            free_energy: -1.0 / 3.0 - x,
            entropy: std::f64::consts::PI * x,
            means: vec![x.sin(), -x.exp()],
            concurrence: 0.0,
            negativity: 1e-300,
            d_f: -1.0,
            d2_f: 2.5e-7,
            d_c: -0.0,
            d_n: 123456.789012345,
            one_sided: false,
        }
    }

    fn marker(k: usize) -> Marker {
        Marker { index: k, control_value: k as f64 * 0.1, value: -2.0 }
    }

    fn report() -> SingularityReport {
        SingularityReport { d2_free_energy: marker(1), d_concurrence: marker(2), d_negativity: marker(1) }
    }

    fn labels() -> Vec<String> {
        vec!["bond".into(), "field".into()]
    }

    #[test]
    fn header_order() {
        assert_eq!(
            csv_header(&labels()),
            "control,free_energy_per_site,entropy,mean_bond,mean_field,concurrence,negativity,dF,d2F,dC,dN"
        );
    }

    #[test]
    fn three_records_make_four_lines_and_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let recs: Vec<_> = [0.2, 0.7, 1.3].map(record).to_vec();
        let (csv, rep) = write_csv(&labels(), &recs, &report(), dir.path()).unwrap();
        let text = std::fs::read_to_string(csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        for (line, r) in lines[1..].iter().zip(&recs) {
            let got: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            let want = [
                r.control_value,
                r.free_energy,
                r.entropy,
                r.means[0],
                r.means[1],
                r.concurrence,
                r.negativity,
                r.d_f,
                r.d2_f,
                r.d_c,
                r.d_n,
            ];
            assert_eq!(got.len(), want.len());
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() <= 5e-12 * w.abs(), "{g} vs {w}");
            }
        }
        let report_text = std::fs::read_to_string(rep).unwrap();
        assert_eq!(report_text.lines().filter(|l| !l.starts_with('#')).count(), 3);
        assert!(report_text.contains("dC control=2.00000000000e-1 value=-2.00000000000e0 index=2"));
    }

    #[test]
    fn empty_records_are_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(write_csv(&labels(), &[], &report(), dir.path()).is_err());
        assert!(!dir.path().join(CSV_FILE).exists());
    }

    #[test]
    fn unwritable_directory_is_io_error() {
        let file = tempfile::NamedTempFile::new().unwrap();
        let err = write_csv(&labels(), &[record(0.1)], &report(), &file.path().join("sub")).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(format_number(-1234.5), "-1.23450000000e3");
    }
}
