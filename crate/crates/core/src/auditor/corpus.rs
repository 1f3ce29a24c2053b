//! Corpus runs: enumerated instances plus fixtures, audited in parallel and
//! reported in a fixed order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Semiring;
use crate::catalog::LatticeSpec;
use crate::error::{Error, Result};
use crate::limits::Limits;

use super::claims::{Record, Verdict};
use super::enumerate::enumerate_semirings;
use super::fixtures::{self, Pins};

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    /// Enumerate every order from 2 up to this bound.
    pub order: Option<usize>,
    pub commutative_only: bool,
    pub fixtures: bool,
    /// Extra instances, e.g. read from files.
    pub extra: Vec<(String, Arc<Semiring>)>,
    pub jobs: usize,
    pub limits: Limits,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { order: None, commutative_only: false, fixtures: false, extra: Vec::new(), jobs: 1, limits: Limits::default() }
    }
}

enum Task {
    Semiring(String, Arc<Semiring>, Pins),
    End(String, LatticeSpec),
}

impl Task {
    fn run(&self, limits: &Limits) -> Vec<Record> {
        match self {
            Task::Semiring(name, s, pins) => fixtures::audit_fixture(name, s, *pins, limits),
            Task::End(name, l) => fixtures::audit_end(name, l, limits),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CorpusReport {
    pub instances: Vec<String>,
    pub records: Vec<Record>,
}

impl CorpusReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    pub fn hard_failures(&self) -> usize {
        self.count(Verdict::Fails)
    }

    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "FAILS",
                Verdict::Discrepancy => "DISCREPANCY",
                Verdict::Unknown => "unknown",
                Verdict::Vacuous => "vacuous",
                Verdict::Info => continue,
            };
            let partial = if r.exhaustive { "" } else { " (bounded)" };
            let _ = write!(out, "{:<10} {:<36} {tag}{partial}", r.instance, r.claim_id);
            if matches!(r.verdict, Verdict::Fails | Verdict::Discrepancy | Verdict::Unknown) {
                let _ = write!(out, "  {}", r.witness);
            }
            out.push('\n');
        }
        let mut by_verdict = BTreeMap::new();
        for r in &self.records {
            *by_verdict.entry(format!("{:?}", r.verdict).to_lowercase()).or_insert(0usize) += 1;
        }
        let summary: Vec<String> = by_verdict.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(out, "instances {}, {}", self.instances.len(), summary.join(", "));
        out
    }
}

pub fn audit_corpus(cfg: &CorpusConfig) -> Result<CorpusReport> {
    let mut tasks = Vec::new();
    if let Some(bound) = cfg.order {
        for order in 2..=bound {
            for (i, s) in enumerate_semirings(order, cfg.commutative_only, &cfg.limits)?.into_iter().enumerate() {
                tasks.push(Task::Semiring(format!("o{order}#{i}"), Arc::new(s), Pins::None));
            }
        }
    }
    for (name, s) in &cfg.extra {
        tasks.push(Task::Semiring(name.clone(), s.clone(), Pins::None));
    }
    if cfg.fixtures {
        for (name, s, pins) in fixtures::fixtures() {
            tasks.push(Task::Semiring(name, s, pins));
        }
        tasks.push(Task::End("E(M3)".into(), LatticeSpec::m3()));
        tasks.push(Task::End("E(N5)".into(), LatticeSpec::n5()));
    }
    let instances = tasks
        .iter()
        .map(|t| match t {
            Task::Semiring(n, _, _) | Task::End(n, _) => n.clone(),
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let limits = cfg.limits;
    let per_task: Vec<Vec<Record>> = pool.install(|| tasks.par_iter().map(|t| t.run(&limits)).collect());
    Ok(CorpusReport { instances, records: per_task.into_iter().flatten().collect() })
}
