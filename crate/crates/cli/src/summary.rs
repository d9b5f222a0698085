use std::collections::BTreeMap;
use std::fmt;

use cbench_eval::generate::Generation;
use serde::Serialize;

/// Nearest-rank percentile of sorted values.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (p * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

#[derive(Debug, Serialize)]
pub struct Quantiles {
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
}

#[derive(Debug, Serialize)]
pub struct FamilyCount {
    pub sat: usize,
    pub unsat: usize,
}

#[derive(Debug, Serialize)]
pub struct GenerationSummary {
    pub records: usize,
    pub sat: usize,
    pub unsat: usize,
    pub sat_fraction: f64,
    pub hinted: usize,
    pub dropped: usize,
    pub complete: bool,
    pub certify_seconds: Quantiles,
    pub families: BTreeMap<String, FamilyCount>,
}

impl GenerationSummary {
    pub fn new(g: &Generation) -> Self {
        let sat = g.records.iter().filter(|r| r.is_sat()).count();
        let mut times: Vec<f64> = g.timings.iter().map(|t| t.certify_seconds).collect();
        times.sort_by(f64::total_cmp);
        let mut families: BTreeMap<String, FamilyCount> = BTreeMap::new();
        for r in &g.records {
            let c = families
                .entry(r.family.clone())
                .or_insert(FamilyCount { sat: 0, unsat: 0 });
            if r.is_sat() {
                c.sat += 1;
            } else {
                c.unsat += 1;
            }
        }
        GenerationSummary {
            records: g.records.len(),
            sat,
            unsat: g.records.len() - sat,
            sat_fraction: if g.records.is_empty() { 0.0 } else { sat as f64 / g.records.len() as f64 },
            hinted: g.records.iter().filter(|r| !r.hints.is_empty()).count(),
            dropped: g.dropped.len(),
            complete: g.complete,
            certify_seconds: Quantiles {
                p50: percentile(&times, 0.5),
                p90: percentile(&times, 0.9),
                p99: percentile(&times, 0.99),
                max: times.last().copied().unwrap_or(0.0),
            },
            families,
        }
    }
}

impl fmt::Display for GenerationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "records {}  SAT {} ({:.1}%)  UNSAT {}  hinted {}  dropped {}{}",
            self.records,
            self.sat,
            self.sat_fraction * 100.0,
            self.unsat,
            self.hinted,
            self.dropped,
            if self.complete { "" } else { "  (incomplete)" }
        )?;
        let q = &self.certify_seconds;
        writeln!(
            f,
            "certify seconds  p50 {:.3}  p90 {:.3}  p99 {:.3}  max {:.3}",
            q.p50, q.p90, q.p99, q.max
        )?;
        for (name, c) in &self.families {
            writeln!(f, "  {name:<28} SAT {:>4}  UNSAT {:>4}", c.sat, c.unsat)?;
        }
        Ok(())
    }
}
