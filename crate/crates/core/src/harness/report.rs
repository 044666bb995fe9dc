use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use crate::error::HarnessError;
use crate::harness::runner::ResultRecord;

pub const CSV_HEADER: [&str; 10] = [
    "timestamp",
    "topology",
    "circuit",
    "mapper",
    "swap_count",
    "cnot_count",
    "depth",
    "optimisation_time",
    "estimated_success",
    "failure_reason",
];

pub const UNREADABLE: &str = "unreadable-record";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportRow {
    pub timestamp: String,
    pub topology: String,
    pub circuit: String,
    pub mapper: String,
    pub swap_count: Option<usize>,
    pub cnot_count: Option<usize>,
    pub depth: Option<usize>,
    pub optimisation_time: Option<f64>,
    pub estimated_success: Option<f64>,
    pub failure_reason: Option<String>,
}

impl ReportRow {
    fn fields(&self) -> [String; 10] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.timestamp.clone(),
            self.topology.clone(),
            self.circuit.clone(),
            self.mapper.clone(),
            opt(self.swap_count.map(|v| v.to_string())),
            opt(self.cnot_count.map(|v| v.to_string())),
            opt(self.depth.map(|v| v.to_string())),
            opt(self.optimisation_time.map(|v| v.to_string())),
            opt(self.estimated_success.map(|v| v.to_string())),
            opt(self.failure_reason.clone()),
        ]
    }
}

/// Result files below `results_root`: `<topology>/<circuit>/<mapper>.json`,
/// optionally under timestamp directories. Manifests are skipped.
pub fn result_files(results_root: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = WalkDir::new(results_root)
        .min_depth(3)
        .into_iter()
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file())
        .map(|e| e.into_path())
        .filter(|p| p.extension().is_some_and(|x| x == "json") && p.file_name().is_some_and(|n| n != "manifest.json"))
        .collect();
    files.sort();
    files
}

fn row_from_path(path: &Path, results_root: &Path) -> ReportRow {
    let rel: Vec<String> = path
        .strip_prefix(results_root)
        .unwrap_or(path)
        .components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect();
    let k = rel.len();
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    ReportRow {
        timestamp: if k >= 4 { rel[k - 4].clone() } else { String::new() },
        topology: rel.get(k.wrapping_sub(3)).cloned().unwrap_or_default(),
        circuit: rel.get(k.wrapping_sub(2)).cloned().unwrap_or_default(),
        mapper: stem,
        failure_reason: Some(UNREADABLE.to_string()),
        ..ReportRow::default()
    }
}

pub fn read_rows(results_root: &Path) -> Result<Vec<ReportRow>, HarnessError> {
    if !results_root.is_dir() {
        return Err(HarnessError::io(
            results_root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "results root is not a directory"),
        ));
    }
    let mut rows: Vec<ReportRow> = result_files(results_root)
        .into_iter()
        .map(|path| {
            let record = std::fs::read_to_string(&path)
                .ok()
                .and_then(|text| serde_json::from_str::<ResultRecord>(&text).ok());
            match record {
                Some(r) => ReportRow {
                    timestamp: r.timestamp,
                    topology: r.topology,
                    circuit: r.circuit,
                    mapper: r.mapper,
                    swap_count: r.swap_count,
                    cnot_count: r.cnot_count,
                    depth: r.depth,
                    optimisation_time: Some(r.optimisation_time),
                    estimated_success: r.estimated_success,
                    failure_reason: r.failure_reason,
                },
                None => row_from_path(&path, results_root),
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        (&a.topology, &a.circuit, &a.mapper, &a.timestamp).cmp(&(&b.topology, &b.circuit, &b.mapper, &b.timestamp))
    });
    Ok(rows)
}

/// Writes one CSV row per result file, sorted by (topology, circuit, mapper).
/// Defaults to `<results_root>/report.csv`.
pub fn report_csv(results_root: &Path, csv_path: Option<&Path>) -> Result<PathBuf, HarnessError> {
    let rows = read_rows(results_root)?;
    let out = csv_path.map_or_else(|| results_root.join("report.csv"), Path::to_path_buf);
    let mut writer = csv::Writer::from_path(&out)?;
    writer.write_record(CSV_HEADER)?;
    for row in &rows {
        writer.write_record(row.fields())?;
    }
    writer.flush().map_err(|e| HarnessError::io(&out, e))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_root_gives_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let csv = report_csv(dir.path(), None).unwrap();
        let text = std::fs::read_to_string(csv).unwrap();
        assert_eq!(text.trim_end(), CSV_HEADER.join(","));
    }

    #[test]
    fn corrupt_record_is_flagged() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("20260101T000000Z/line/ghz/trivial.json");
        std::fs::create_dir_all(file.parent().unwrap()).unwrap();
        std::fs::write(&file, "{not json").unwrap();
        let rows = read_rows(dir.path()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].failure_reason.as_deref(), Some(UNREADABLE));
        assert_eq!((rows[0].timestamp.as_str(), rows[0].topology.as_str()), ("20260101T000000Z", "line"));
        assert_eq!((rows[0].circuit.as_str(), rows[0].mapper.as_str()), ("ghz", "trivial"));
    }

    #[test]
    fn missing_root_is_an_error() {
        assert!(report_csv(Path::new("/nonexistent/results"), None).is_err());
    }
}
