//! Report tables as CSV files and aligned text.

use std::fmt::Write as _;
use std::path::Path;

use crate::metrics::{MetricReport, Stratum};
use crate::record::DataError;
use crate::verify::Bucket;

/// Percentage with one decimal.
pub fn pct(rate: f64) -> String {
    format!("{:.1}", rate * 100.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory csv");
        for r in &self.rows {
            w.write_record(r).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }

    /// Columns padded to their widest cell; the first column left-aligned,
    /// the rest right-aligned.
    pub fn to_text(&self) -> String {
        let cols = self.headers.len();
        let mut width = vec![0usize; cols];
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            for (i, c) in row.iter().enumerate().take(cols) {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |row: &Vec<String>| {
            row.iter()
                .enumerate()
                .take(cols)
                .map(|(i, c)| {
                    if i == 0 {
                        format!("{c:<w$}", w = width[i])
                    } else {
                        format!("{c:>w$}", w = width[i])
                    }
                })
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = format!("{}\n", self.name);
        out.push_str(&line(&self.headers));
        out.push('\n');
        out.push_str(&"-".repeat(width.iter().sum::<usize>() + 2 * cols.saturating_sub(1)));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

pub fn sim_table(runs: &[(String, &MetricReport)], ks: &[usize]) -> Table {
    let mut headers = vec!["Model".to_string()];
    headers.extend(ks.iter().map(|k| format!("sim@{k}")));
    let mut t = Table {
        name: "sim_at_k".into(),
        headers,
        rows: Vec::new(),
    };
    for (label, m) in runs {
        let mut row = vec![label.clone()];
        for k in ks {
            let v = m.sim.iter().find(|(kk, _)| kk == k).map(|&(_, v)| pct(v));
            row.push(v.unwrap_or_else(|| "-".into()));
        }
        t.push(row);
    }
    t
}

pub fn summary_table(runs: &[(String, &MetricReport)]) -> Table {
    let mut t = Table::new("summary", &["Model", "Condition", "n", "Accuracy", "SAT Acc.", "Gap"]);
    for (label, m) in runs {
        t.push(vec![
            label.clone(),
            m.condition.label().into(),
            m.n.to_string(),
            pct(m.accuracy),
            pct(m.sat_acc),
            format!("{:.1}", m.witness_gap),
        ]);
    }
    t
}

pub fn bucket_table(runs: &[(String, &MetricReport)]) -> Table {
    let mut headers = vec!["Model"];
    headers.extend(Bucket::ALL.iter().map(|b| b.header()));
    let mut t = Table::new("failure_buckets", &headers);
    for (label, m) in runs {
        let mut row = vec![label.clone()];
        row.extend(Bucket::ALL.iter().map(|b| m.buckets.get(b).copied().unwrap_or(0).to_string()));
        t.push(row);
    }
    t
}

pub fn force_submit_table(runs: &[(String, &MetricReport)]) -> Table {
    let mut t = Table::new(
        "force_submit",
        &["Model", "Total", "Explicit", "Forced", "Forced correct", "Rescue (%)"],
    );
    for (label, m) in runs {
        let f = m.force_submit;
        t.push(vec![
            label.clone(),
            f.total.to_string(),
            f.explicit.to_string(),
            f.forced.to_string(),
            f.forced_correct.to_string(),
            pct(m.rescue_rate),
        ]);
    }
    t
}

fn stratum_acc(strata: &[Stratum], label: &str) -> String {
    strata
        .iter()
        .find(|s| s.label == label)
        .map_or_else(|| "-".into(), |s| pct(s.accuracy))
}

pub fn stratification_table(runs: &[(String, &MetricReport)]) -> Table {
    let mut t = Table::new("stratification", &["Model", "All", "SAT", "UNSAT", "CP", "SMS"]);
    for (label, m) in runs {
        t.push(vec![
            label.clone(),
            pct(m.accuracy),
            stratum_acc(&m.by_polarity, "SAT"),
            stratum_acc(&m.by_polarity, "UNSAT"),
            stratum_acc(&m.by_backend, "CP"),
            stratum_acc(&m.by_backend, "SMS"),
        ]);
    }
    t
}

/// One row per family, each cell `Accuracy/SAT Acc.`.
pub fn per_family_table(runs: &[(String, &MetricReport)]) -> Table {
    let mut families: Vec<&str> = runs
        .iter()
        .flat_map(|(_, m)| m.by_family.iter().map(|s| s.label.as_str()))
        .collect();
    families.sort_unstable();
    families.dedup();
    let mut headers = vec!["Type"];
    headers.extend(runs.iter().map(|(l, _)| l.as_str()));
    let mut t = Table::new("per_family", &headers);
    for fam in families {
        let mut row = vec![fam.to_string()];
        for (_, m) in runs {
            row.push(
                m.by_family
                    .iter()
                    .find(|s| s.label == fam)
                    .map_or_else(|| "-".into(), |s| format!("{}/{}", pct(s.accuracy), pct(s.sat_acc))),
            );
        }
        t.push(row);
    }
    t
}

pub fn all_tables(runs: &[(String, &MetricReport)], ks: &[usize]) -> Vec<Table> {
    let mut out = vec![summary_table(runs), bucket_table(runs)];
    let tool_runs: Vec<(String, &MetricReport)> = runs.iter().filter(|(_, m)| !m.sim.is_empty()).cloned().collect();
    if !tool_runs.is_empty() {
        out.push(sim_table(&tool_runs, ks));
        out.push(force_submit_table(&tool_runs));
    }
    out.push(stratification_table(runs));
    out.push(per_family_table(runs));
    out
}

/// Writes `<name>.csv` per table plus `summary.txt` with every table as text.
pub fn write_report(dir: &Path, tables: &[Table]) -> Result<(), DataError> {
    std::fs::create_dir_all(dir).map_err(|e| DataError::io(dir, e))?;
    let mut text = String::new();
    for t in tables {
        let path = dir.join(format!("{}.csv", t.name));
        std::fs::write(&path, t.to_csv()).map_err(|e| DataError::io(&path, e))?;
        let _ = writeln!(text, "{}", t.to_text());
    }
    let path = dir.join("summary.txt");
    std::fs::write(&path, text).map_err(|e| DataError::io(&path, e))
}
