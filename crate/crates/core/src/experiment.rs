//! Monte Carlo comparison of minrank on G(n, p) with the theoretical scale.
//!
//! Trials are enumerated in `(n, p, trial)` order; trial number `t` overall
//! draws its graph from seed `splitmix64(seed ^ t)`, so the report does not
//! depend on how many worker threads ran it.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::PrimeField;
use crate::bounds::envelope;
use crate::graph::{
    clique_cover_exact, gnp, greedy_clique_cover, independence_number, splitmix64, DEFAULT_ALPHA_LIMIT,
    DEFAULT_CLIQUE_COVER_LIMIT,
};
use crate::minrank::{default_exact_limit, minrank_exact, MinrankError, DEFAULT_BUDGET};

pub const SCHEMA: &str = "minrank-report/1";
pub const CSV_HEADER: &str =
    "n,p,seed,trial,alpha,cc,cc_mode,minrank_lo,minrank_hi,status,theory_lower,reference_scale,ratio";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Minrank(#[from] MinrankError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(ExperimentError::InvalidConfig(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n_list: Vec<usize>,
    pub p_list: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub field: PrimeField,
    pub budget: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(n_list: Vec<usize>, p_list: Vec<f64>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            n_list,
            p_list,
            trials,
            seed,
            field: PrimeField::new(2).expect("2 is prime"),
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::InvalidConfig(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_list.is_empty() || self.p_list.is_empty() {
            return bad("n and p lists must be nonempty".into());
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n == 0 || n > DEFAULT_ALPHA_LIMIT) {
            return bad(format!("n = {n} is outside 1..={DEFAULT_ALPHA_LIMIT}"));
        }
        if let Some(p) = self.p_list.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("p = {p} is outside [0, 1]"));
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }
}

/// How a row's minrank columns were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Solved; `minrank_lo == minrank_hi`.
    Exact,
    /// Budget ran out; the columns hold the proven bracket.
    Undecided,
    /// Beyond the exact solver's size limit; the columns hold the sandwich.
    Bracket,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Undecided => "undecided",
            Status::Bracket => "bracket",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub p: f64,
    /// Seed of this trial's graph; `gnp(n, p, seed)` regenerates it.
    pub seed: u64,
    pub trial: usize,
    pub alpha: usize,
    pub cc: usize,
    /// `exact` or `greedy`.
    pub cc_mode: &'static str,
    pub minrank_lo: usize,
    pub minrank_hi: usize,
    pub status: Status,
    /// Absent when `p = 0` or `n < 2`, where the threshold is undefined.
    pub theory_lower: Option<f64>,
    pub reference_scale: Option<f64>,
    /// `minrank / reference_scale` for exact rows with a positive scale.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ReportRow>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.p,
                r.seed,
                r.trial,
                r.alpha,
                r.cc,
                r.cc_mode,
                r.minrank_lo,
                r.minrank_hi,
                r.status.as_str(),
                opt(r.theory_lower),
                opt(r.reference_scale),
                opt(r.ratio)
            )
            .expect("writing to a String");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        json!({
            "schema": SCHEMA,
            "config": {
                "n_list": c.n_list,
                "p_list": c.p_list,
                "trials": c.trials,
                "seed": c.seed,
                "field": format!("gf:{}", c.field.modulus()),
                "budget": c.budget,
            },
            "rows": self.rows,
        })
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain data");
                s.push('\n');
                s
            }
        }
    }

    pub fn undecided(&self) -> usize {
        self.rows.iter().filter(|r| r.status == Status::Undecided).count()
    }
}

struct Task {
    n: usize,
    p: f64,
    trial: usize,
    global: u64,
}

fn run_trial(cfg: &ExperimentConfig, t: &Task) -> Result<ReportRow, ExperimentError> {
    let seed = splitmix64(cfg.seed ^ t.global);
    let g = gnp(t.n, t.p, seed).map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let graph_err = |e: crate::graph::GraphError| ExperimentError::Minrank(e.into());
    let alpha = independence_number(&g).map_err(graph_err)?;
    let (cc, cc_mode) = if t.n <= DEFAULT_CLIQUE_COVER_LIMIT {
        (clique_cover_exact(&g).map_err(graph_err)?.0, "exact")
    } else {
        (greedy_clique_cover(&g).0, "greedy")
    };
    let (minrank_lo, minrank_hi, status) = if t.n <= default_exact_limit(cfg.field.modulus()) {
        let r = minrank_exact(&g, cfg.field, cfg.budget)?;
        match r.value {
            Some(v) => (v, v, Status::Exact),
            None => (r.bracket.0, r.bracket.1, Status::Undecided),
        }
    } else {
        (alpha, cc, Status::Bracket)
    };
    let env = if t.p > 0.0 {
        envelope(t.n as u64, t.p).ok()
    } else {
        None
    };
    let ratio = match (status, env) {
        (Status::Exact, Some((_, scale))) if scale > 0.0 => Some(minrank_lo as f64 / scale),
        _ => None,
    };
    Ok(ReportRow {
        n: t.n,
        p: t.p,
        seed,
        trial: t.trial,
        alpha,
        cc,
        cc_mode,
        minrank_lo,
        minrank_hi,
        status,
        theory_lower: env.map(|e| e.0),
        reference_scale: env.map(|e| e.1),
        ratio,
    })
}

/// Runs every `(n, p, trial)` and returns rows in that order.
///
/// ```
/// use minrank_lab::experiment::{run_experiment, ExperimentConfig};
///
/// let report = run_experiment(&ExperimentConfig::new(vec![3], vec![0.0], 1, 7)).unwrap();
/// let row = &report.rows[0];
/// assert_eq!((row.alpha, row.cc, row.minrank_lo, row.minrank_hi), (3, 3, 3, 3));
/// ```
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let mut tasks = Vec::new();
    for &n in &cfg.n_list {
        for &p in &cfg.p_list {
            for trial in 0..cfg.trials {
                let global = tasks.len() as u64;
                tasks.push(Task { n, p, trial, global });
            }
        }
    }
    let work = || {
        tasks
            .par_iter()
            .map(|t| run_trial(cfg, t))
            .collect::<Result<Vec<_>, _>>()
    };
    let rows = match cfg.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rows() {
        let empty = run_experiment(&ExperimentConfig::new(vec![3], vec![0.0], 1, 7)).unwrap();
        let r = &empty.rows[0];
        assert_eq!((r.alpha, r.cc, r.minrank_lo, r.status), (3, 3, 3, Status::Exact));
        assert_eq!(r.theory_lower, None);
        let full = run_experiment(&ExperimentConfig::new(vec![3], vec![1.0], 1, 7)).unwrap();
        let r = &full.rows[0];
        assert_eq!((r.alpha, r.cc, r.minrank_hi), (1, 1, 1));
        assert_eq!(
            (r.theory_lower, r.reference_scale, r.ratio),
            (Some(0.0), Some(0.0), None)
        );
    }

    #[test]
    fn seeds_follow_the_global_index() {
        let cfg = ExperimentConfig::new(vec![4, 5], vec![0.3, 0.6], 2, 99);
        let rep = run_experiment(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 8);
        for (t, r) in rep.rows.iter().enumerate() {
            assert_eq!(r.seed, splitmix64(99 ^ t as u64));
            assert_eq!(r.trial, t % 2);
        }
        assert_eq!((rep.rows[2].n, rep.rows[2].p), (4, 0.6));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut cfg = ExperimentConfig::new(vec![6, 8], vec![0.2, 0.5, 0.8], 4, 5);
        cfg.threads = Some(1);
        let serial = run_experiment(&cfg).unwrap().to_csv();
        cfg.threads = Some(4);
        assert_eq!(run_experiment(&cfg).unwrap().to_csv(), serial);
    }

    #[test]
    fn large_n_falls_back_to_brackets() {
        let cfg = ExperimentConfig::new(vec![20], vec![0.5], 1, 3);
        let r = &run_experiment(&cfg).unwrap().rows[0];
        assert_eq!((r.status, r.cc_mode), (Status::Bracket, "greedy"));
        assert!(r.alpha == r.minrank_lo && r.minrank_hi == r.cc);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut cfg = ExperimentConfig::new(vec![12], vec![0.2, 0.8], 10, 1);
        cfg.budget = 3;
        let rep = run_experiment(&cfg).unwrap();
        for r in &rep.rows {
            assert!(r.alpha <= r.minrank_lo && r.minrank_lo <= r.minrank_hi && r.minrank_hi <= r.cc);
            if r.status == Status::Undecided {
                assert!(r.ratio.is_none());
            }
        }
        assert!(rep.undecided() > 0);
    }

    #[test]
    fn invalid_configs() {
        assert!(run_experiment(&ExperimentConfig::new(vec![3], vec![0.5], 0, 1)).is_err());
        assert!(run_experiment(&ExperimentConfig::new(vec![3], vec![1.5], 1, 1)).is_err());
        assert!(run_experiment(&ExperimentConfig::new(vec![30], vec![0.5], 1, 1)).is_err());
        assert!(run_experiment(&ExperimentConfig::new(vec![], vec![0.5], 1, 1)).is_err());
    }

    #[test]
    fn json_has_schema() {
        let rep = run_experiment(&ExperimentConfig::new(vec![4], vec![0.5], 2, 1)).unwrap();
        let v = rep.to_json();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        assert_eq!(v["rows"][0]["status"], "exact");
        assert!(rep.to_csv().starts_with(CSV_HEADER));
    }
}
