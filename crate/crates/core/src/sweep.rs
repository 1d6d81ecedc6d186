//! Exhaustive cross-validation of the classifier over every triple of one
//! shape.
//!
//! Triples are enumerated A, then B, then C, each by [`TritMatrix::index`];
//! A without a 0 is skipped. The id of a triple is
//! `(a * 3^{mn} + b) * 3^{mn} + c`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::thread;

use serde_json::{json, Value};

use crate::ist::{cross_validate, Branch, Condition3Reading, IstResult};
use crate::matrix::TritMatrix;
use crate::morphism::{Budget, MorphismTriple};
use crate::trit::Trit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub rows: usize,
    pub cols: usize,
    pub kmax: u32,
    pub jobs: usize,
    pub reading: Condition3Reading,
    pub budget: Budget,
}

impl SweepConfig {
    pub fn new(rows: usize, cols: usize, kmax: u32) -> Self {
        Self { rows, cols, kmax, jobs: 1, reading: Condition3Reading::Proof, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SweepError {
    #[error("shape {rows}x{cols} is empty or too large to enumerate")]
    Shape { rows: usize, cols: usize },
}

/// A triple where the classifier and the iterates disagree, or where the
/// iterates could not be computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub triple_id: u64,
    pub triple: MorphismTriple,
    pub outcome: Result<IstResult, String>,
}

impl Discrepancy {
    pub fn to_json(&self) -> Value {
        let mut v = match &self.outcome {
            Ok(r) => r.to_json(Some(self.triple_id)),
            Err(e) => json!({ "triple_id": self.triple_id, "error": e }),
        };
        v["triple"] = json!(self.triple.to_string());
        v
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: u64,
    /// Keyed by branch and verdict label.
    pub counts: BTreeMap<(Branch, &'static str), u64>,
    /// Triples whose A is all zero and whose B or C is not layered.
    pub edge_cases: u64,
    pub discrepancies: Vec<Discrepancy>,
}

impl SweepSummary {
    fn merge(&mut self, other: SweepSummary) {
        self.total += other.total;
        self.edge_cases += other.edge_cases;
        for (key, n) in other.counts {
            *self.counts.entry(key).or_default() += n;
        }
        self.discrepancies.extend(other.discrepancies);
    }

    /// `branch,verdict,count`, one line per nonempty cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("branch,verdict,count\n");
        for ((branch, verdict), n) in &self.counts {
            writeln!(out, "{branch},{verdict},{n}").expect("write to string");
        }
        out
    }

    /// One JSON object per line.
    pub fn discrepancy_dump(&self) -> String {
        self.discrepancies.iter().map(|d| format!("{}\n", d.to_json())).collect()
    }
}

fn record(summary: &mut SweepSummary, triple_id: u64, triple: &MorphismTriple, cfg: &SweepConfig) {
    summary.total += 1;
    match cross_validate(triple, cfg.kmax, cfg.reading, cfg.budget) {
        Ok(r) => {
            *summary.counts.entry((r.branch, r.verdict.label())).or_default() += 1;
            if r.note.is_some() {
                summary.edge_cases += 1;
            }
            if r.agrees() != Some(true) {
                summary.discrepancies.push(Discrepancy { triple_id, triple: triple.clone(), outcome: Ok(r) });
            }
        }
        Err(e) => summary.discrepancies.push(Discrepancy { triple_id, triple: triple.clone(), outcome: Err(e.to_string()) }),
    }
}

/// Number of triples the sweep visits.
pub fn triple_count(rows: usize, cols: usize) -> Option<u64> {
    let per = 3u64.checked_pow(u32::try_from(rows.checked_mul(cols)?).ok()?)?;
    let zero_free = 2u64.checked_pow((rows * cols) as u32)?;
    (per - zero_free).checked_mul(per)?.checked_mul(per)
}

/// Runs the sweep on `cfg.jobs` threads. A-indices are dealt round-robin;
/// the merged result does not depend on the thread count.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepSummary, SweepError> {
    let shape_err = SweepError::Shape { rows: cfg.rows, cols: cfg.cols };
    if cfg.rows == 0 || cfg.cols == 0 {
        return Err(shape_err);
    }
    triple_count(cfg.rows, cfg.cols).ok_or(shape_err.clone())?;
    let per = 3u64.pow((cfg.rows * cfg.cols) as u32);
    let all: Vec<TritMatrix> =
        (0..per).map(|i| TritMatrix::from_index(cfg.rows, cfg.cols, i).expect("nonempty shape")).collect();
    let a_indices: Vec<u64> = (0..per).filter(|&i| all[i as usize].contains(Trit::Zero)).collect();
    let jobs = cfg.jobs.max(1);

    let mut summary = SweepSummary::default();
    thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let (all, a_indices) = (&all, &a_indices);
                s.spawn(move || {
                    let mut part = SweepSummary::default();
                    for &ai in a_indices.iter().skip(w).step_by(jobs) {
                        for (bi, b) in all.iter().enumerate() {
                            for (ci, c) in all.iter().enumerate() {
                                let t = MorphismTriple::new(all[ai as usize].clone(), b.clone(), c.clone())
                                    .expect("same shape");
                                let id = (ai * per + bi as u64) * per + ci as u64;
                                record(&mut part, id, &t, cfg);
                            }
                        }
                    }
                    part
                })
            })
            .collect();
        for h in handles {
            summary.merge(h.join().expect("sweep worker panicked"));
        }
    });
    summary.discrepancies.sort_by_key(|d| d.triple_id);
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ist::IstVerdict;

    #[test]
    fn counts() {
        assert_eq!(triple_count(2, 2), Some(426_465));
        assert_eq!(triple_count(1, 2), Some(5 * 9 * 9));
        assert_eq!(triple_count(1, 1), Some(9));
    }

    #[test]
    fn one_by_two_is_clean() {
        let s = sweep(&SweepConfig::new(1, 2, 5)).unwrap();
        assert_eq!(s.total, 405);
        assert!(s.discrepancies.is_empty(), "{}", s.discrepancy_dump());
        assert_eq!(s.counts.values().sum::<u64>(), 405);
    }

    #[test]
    fn one_column_is_all_trees() {
        let s = sweep(&SweepConfig::new(2, 1, 5)).unwrap();
        assert!(s.discrepancies.is_empty());
        assert_eq!(s.counts.len(), 1);
        assert_eq!(s.counts.get(&(Branch::Tree, IstVerdict::Infinite(crate::ist::Condition::Tree).label())), Some(&s.total));
    }

    #[test]
    fn deterministic_across_jobs() {
        let mut cfg = SweepConfig::new(1, 3, 4);
        cfg.reading = Condition3Reading::Statement;
        let one = sweep(&cfg).unwrap();
        cfg.jobs = 3;
        let three = sweep(&cfg).unwrap();
        assert_eq!(one, three);
        assert_eq!(one.to_csv(), three.to_csv());
        assert!(!one.discrepancies.is_empty());
    }
}
