//! The theorem suite: executable checks run over a corpus of lattices.
//!
//! Each check has a lattice-level hypothesis and one or more directions.
//! A direction holds on a lattice when some instance confirmed it and none
//! failed, is violated at the first failing instance, and is
//! hypothesis-unmet when no instance applied.

mod checks;
mod context;
mod report;
mod stress;

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::check::CheckStatus;
use crate::family::{generate, FamilyError, FamilySpec};
use crate::lattice::{ElementId, MultLattice};

pub use checks::{registry, Direction, TheoremCheck};
pub use context::{Ctx, Factors};
pub use report::{Allowlist, SuiteReport, SuiteRow, Tally, DEFAULT_ALLOWLIST};
pub use stress::{random_permutation, relabel_stress, StressFailure};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "MLAT_WORKERS";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("allowlist line {line}: {msg}")]
    Allowlist { line: usize, msg: String },
    #[error("stale witness: {0}")]
    StaleWitness(String),
    #[error("malformed witness `{0}`")]
    Witness(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// A selected direction, by registry position.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Selection {
    pub check: usize,
    pub direction: usize,
}

impl Selection {
    pub fn check(self) -> &'static TheoremCheck {
        &registry()[self.check]
    }

    pub fn direction(self) -> &'static Direction {
        &self.check().directions[self.direction]
    }

    pub fn full_id(self) -> String {
        self.check().full_id(self.direction())
    }
}

fn all_selections() -> impl Iterator<Item = Selection> {
    registry().iter().enumerate().flat_map(|(ci, c)| {
        (0..c.directions.len()).map(move |di| Selection {
            check: ci,
            direction: di,
        })
    })
}

/// Every direction id in registry order.
pub fn check_ids() -> Vec<String> {
    all_selections().map(Selection::full_id).collect()
}

/// Resolves ids: `all`, a check id (every direction) or a direction id.
/// The result is in registry order without duplicates.
pub fn select(ids: &[String]) -> Result<Vec<Selection>, VerifyError> {
    let mut out = Vec::new();
    for id in ids {
        let id = id.trim();
        if id == "all" {
            out.extend(all_selections());
            continue;
        }
        let hits: Vec<Selection> = all_selections()
            .filter(|s| s.check().id == id || s.full_id() == id)
            .collect();
        if hits.is_empty() {
            return Err(VerifyError::UnknownCheck(id.to_string()));
        }
        out.extend(hits);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// One lattice to check, with the spec that regenerates it when known.
pub struct CorpusEntry {
    pub spec: Option<FamilySpec>,
    pub lattice: MultLattice,
}

#[derive(Default)]
pub struct SuiteOptions {
    /// Worker threads; falls back to [`WORKERS_ENV`], then to the rayon
    /// default.
    pub workers: Option<usize>,
    pub allow: Allowlist,
}

fn workers(opts: &SuiteOptions) -> Option<usize> {
    opts.workers.or_else(|| {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&w: &usize| w > 0)
    })
}

fn in_pool<T: Send>(opts: &SuiteOptions, f: impl FnOnce() -> T + Send) -> Result<T, VerifyError> {
    match workers(opts) {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| VerifyError::Pool(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Generates the corpus and runs the selected checks over it.
pub fn run_suite(
    description: &str,
    corpus: &[FamilySpec],
    checks: &[String],
    opts: &SuiteOptions,
) -> Result<SuiteReport, VerifyError> {
    let start = Instant::now();
    let entries = in_pool(opts, || {
        corpus
            .par_iter()
            .map(|s| {
                Ok(CorpusEntry {
                    spec: Some(s.clone()),
                    lattice: generate(s)?,
                })
            })
            .collect::<Result<Vec<_>, FamilyError>>()
    })??;
    let mut report = run_suite_on(description, entries, checks, opts)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs the selected checks over already generated lattices. Work is spread
/// over (lattice, direction) pairs; rows come back in corpus order, then
/// registry order.
pub fn run_suite_on(
    description: &str,
    entries: Vec<CorpusEntry>,
    checks: &[String],
    opts: &SuiteOptions,
) -> Result<SuiteReport, VerifyError> {
    let start = Instant::now();
    let selected = select(checks)?;
    let ctxs: Vec<Ctx> = entries
        .into_iter()
        .map(|e| Ctx::new(e.lattice, e.spec))
        .collect();
    let pairs: Vec<(usize, Selection)> = (0..ctxs.len())
        .flat_map(|i| selected.iter().map(move |&s| (i, s)))
        .collect();
    let statuses: Vec<CheckStatus> = in_pool(opts, || {
        pairs
            .par_iter()
            .map(|&(i, s)| s.check().evaluate(s.direction(), &ctxs[i]))
            .collect()
    })?;
    let rows = pairs
        .iter()
        .zip(statuses)
        .map(|(&(i, s), status)| {
            let c = &ctxs[i];
            let allowed = status.is_violated()
                && !s.direction().probe
                && opts.allow.allows(&s.full_id(), &c.l);
            SuiteRow {
                check: s.full_id(),
                probe: s.direction().probe,
                lattice: c.l.name().to_string(),
                spec: c.spec.clone(),
                witness_names: match &status {
                    CheckStatus::Violated(w) => {
                        w.iter().map(|&a| c.l.element_name(a).to_string()).collect()
                    }
                    _ => Vec::new(),
                },
                status,
                allowed,
            }
        })
        .collect();
    Ok(SuiteReport {
        corpus: description.to_string(),
        lattices: ctxs.iter().map(|c| c.l.name().to_string()).collect(),
        checks: selected.iter().map(|s| s.full_id()).collect(),
        rows,
        elapsed: start.elapsed(),
    })
}

/// A reproducible failing instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub check: String,
    pub spec: FamilySpec,
    pub elements: Vec<usize>,
}

impl Witness {
    /// Parses a machine-format row: `check<TAB>lattice<TAB>violated<TAB>ids…`.
    pub fn parse_row(line: &str) -> Result<Witness, VerifyError> {
        let bad = || VerifyError::Witness(line.to_string());
        let fields: Vec<&str> = line.trim_end_matches(['\n', '\r']).split('\t').collect();
        if fields.len() < 3 || fields[2] != "violated" {
            return Err(bad());
        }
        let elements = fields[3..]
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| f.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Witness {
            check: fields[0].to_string(),
            spec: FamilySpec::parse(fields[1])?,
            elements,
        })
    }
}

/// Regenerates the lattice and re-evaluates the single instance; `true`
/// iff the violation reproduces.
pub fn replay(w: &Witness) -> Result<bool, VerifyError> {
    let s = all_selections()
        .find(|s| s.full_id() == w.check)
        .ok_or_else(|| VerifyError::UnknownCheck(w.check.clone()))?;
    let l = generate(&w.spec)?;
    let d = s.direction();
    if w.elements.len() != d.arity {
        return Err(VerifyError::StaleWitness(format!(
            "{} takes {} elements, witness has {}",
            w.check,
            d.arity,
            w.elements.len()
        )));
    }
    let tuple = w
        .elements
        .iter()
        .map(|&i| {
            l.element(i).map_err(|_| {
                VerifyError::StaleWitness(format!("element {i} out of range for {}", w.spec))
            })
        })
        .collect::<Result<Vec<ElementId>, _>>()?;
    let ctx = Ctx::new(l, Some(w.spec.clone()));
    Ok(s.check().fails_at(d, &ctx, &tuple))
}
