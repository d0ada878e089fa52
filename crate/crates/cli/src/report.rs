//! Result emission: the CSV table and a gnuplot script rendering the three
//! metric plots.

use std::io::Write;
use std::path::Path;

use masim_core::MetricsRow;

use crate::Error;

/// Bit-exact CSV header; column order is part of the output contract.
pub const CSV_HEADER: &str =
    "planner,source_count,aggregation_ratio,seed,task_duration_s,throughput_bps,energy_j";

/// Nine significant digits in scientific notation, deterministic across
/// platforms and diff-stable across runs.
fn sig9(x: f64) -> String {
    format!("{:.8e}", x)
}

fn sorted(rows: &[MetricsRow]) -> Vec<&MetricsRow> {
    let mut sorted: Vec<&MetricsRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.planner
            .cmp(&b.planner)
            .then(a.source_count.cmp(&b.source_count))
            .then(a.aggregation_ratio.total_cmp(&b.aggregation_ratio))
            .then(a.seed.cmp(&b.seed))
    });
    sorted
}

/// Writes one CSV line per row, sorted by (planner, source count,
/// aggregation ratio, seed). Emitting the same rows twice produces
/// byte-identical files.
pub fn emit_csv(rows: &[MetricsRow], path: &Path) -> Result<(), Error> {
    let mut text = String::with_capacity(64 * (rows.len() + 1));
    text.push_str(CSV_HEADER);
    text.push('\n');
    for row in sorted(rows) {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.planner,
            row.source_count,
            sig9(row.aggregation_ratio),
            row.seed,
            sig9(row.task_duration_s),
            sig9(row.throughput_bps),
            sig9(row.energy_j),
        ));
    }
    write_file(path, &text)
}

/// Writes a gnuplot script that reads the sibling CSV and renders the three
/// metric figures (task duration, throughput, energy), one mean curve per
/// planner present in `rows`. The sweep axis is inferred from the rows:
/// multiple distinct aggregation ratios plot against f, otherwise against
/// the source count.
pub fn emit_plot_script(rows: &[MetricsRow], path: &Path) -> Result<(), Error> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("results")
        .to_string();

    let mut planners: Vec<&str> = rows.iter().map(|r| r.planner.as_str()).collect();
    planners.sort_unstable();
    planners.dedup();

    let mut ratios: Vec<f64> = rows.iter().map(|r| r.aggregation_ratio).collect();
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();
    let (x_column, x_label) = if ratios.len() > 1 {
        (3, "aggregation ratio f")
    } else {
        (2, "source nodes")
    };

    let mut script = String::new();
    script.push_str(&format!(
        "# {stem}.gp: mean task duration, event-to-sink throughput, and energy\n\
         # per planner (mean over seeds at each sweep point).\n\
         # Usage: gnuplot {stem}.gp   (expects {stem}.csv in the same directory)\n\
         set datafile separator \",\"\n\
         set datafile missing \"NaN\"\n\
         set grid\n\
         set key outside right top\n\
         set terminal pngcairo size 900,600\n\
         csv = \"{stem}.csv\"\n\
         set xlabel \"{x_label}\"\n"
    ));

    let figures = [
        ("duration", "task duration (s)", 5),
        ("throughput", "event-to-sink throughput (bit/s)", 6),
        ("energy", "task energy (J)", 7),
    ];
    for (suffix, y_label, y_column) in figures {
        script.push_str(&format!(
            "\nset output \"{stem}_{suffix}.png\"\nset ylabel \"{y_label}\"\nplot \\\n"
        ));
        for (i, planner) in planners.iter().enumerate() {
            let sep = if i + 1 < planners.len() {
                ", \\\n"
            } else {
                "\n"
            };
            script.push_str(&format!(
                "  csv skip 1 using (strcol(1) eq \"{planner}\" ? ${x_column} : NaN):{y_column} \
                 smooth unique with linespoints title \"{planner}\"{sep}"
            ));
        }
    }
    write_file(path, &script)
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    let wrap = |source| Error::Output {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(wrap)?;
    file.write_all(text.as_bytes()).map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(planner: &str, count: usize, f: f64, seed: u64) -> MetricsRow {
        MetricsRow {
            planner: planner.to_string(),
            source_count: count,
            aggregation_ratio: f,
            seed,
            task_duration_s: 0.123456789123,
            throughput_bps: 54321.0,
            energy_j: 0.25,
        }
    }

    #[test]
    fn single_row_makes_a_two_line_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit_csv(&[row("CMIP", 10, 0.9, 0)], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            "CMIP,10,9.00000000e-1,0,1.23456789e-1,5.43210000e4,2.50000000e-1"
        );
    }

    #[test]
    fn emission_is_byte_identical_and_sorted() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        // Deliberately unsorted input.
        let rows = vec![
            row("GIGM-MIP", 20, 0.9, 1),
            row("CMIP", 20, 0.9, 0),
            row("CMIP", 10, 0.9, 1),
            row("CL-MIP", 10, 0.9, 0),
            row("CMIP", 10, 0.9, 0),
        ];
        emit_csv(&rows, &a).unwrap();
        emit_csv(&rows, &b).unwrap();
        let text_a = std::fs::read(&a).unwrap();
        assert_eq!(text_a, std::fs::read(&b).unwrap());

        let text = String::from_utf8(text_a).unwrap();
        let planned: Vec<&str> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap())
            .collect();
        assert_eq!(planned, vec!["CL-MIP", "CMIP", "CMIP", "CMIP", "GIGM-MIP"]);
    }

    #[test]
    fn plot_script_lists_only_present_planners() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vary_sources.gp");
        let rows = vec![row("CMIP", 10, 0.9, 0), row("GIGM-MIP", 10, 0.9, 0)];
        emit_plot_script(&rows, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("strcol(1) eq \"CMIP\""));
        assert!(text.contains("strcol(1) eq \"GIGM-MIP\""));
        assert!(!text.contains("CL-MIP"));
        assert!(text.contains("vary_sources.csv"));
        assert!(text.contains("set xlabel \"source nodes\""));
        assert_eq!(text.matches("set output").count(), 3);
    }

    #[test]
    fn aggregation_rows_plot_against_f() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vary_aggregation.gp");
        let rows = vec![row("CMIP", 80, 0.1, 0), row("CMIP", 80, 0.9, 0)];
        emit_plot_script(&rows, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("set xlabel \"aggregation ratio f\""));
        assert!(text.contains("? $3 : NaN"));
    }
}
