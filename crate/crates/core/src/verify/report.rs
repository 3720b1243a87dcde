use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use crate::check::CheckStatus;
use crate::family::{generate, FamilySpec};
use crate::lattice::MultLattice;
use crate::search::{canonical_form, CanonicalForm};

use super::{VerifyError, Witness};

/// The shipped expected-discrepancy list.
pub const DEFAULT_ALLOWLIST: &str = include_str!("../../../../corpus/expected-discrepancies.allow");

/// Expected violations, keyed by direction id and lattice up to
/// isomorphism.
#[derive(Clone, Debug, Default)]
pub struct Allowlist {
    entries: Vec<(String, FamilySpec, CanonicalForm)>,
}

impl Allowlist {
    /// One `check_id<TAB>familyspec` per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Allowlist, VerifyError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| VerifyError::Allowlist { line: i + 1, msg };
            let (check, spec) = line
                .split_once('\t')
                .ok_or_else(|| err("expected `check_id<TAB>familyspec`".into()))?;
            let check = check.trim();
            if !super::check_ids().iter().any(|c| c == check) {
                return Err(err(format!("unknown check id `{check}`")));
            }
            let spec = FamilySpec::parse(spec).map_err(|e| err(e.to_string()))?;
            let form = canonical_form(&generate(&spec).map_err(|e| err(e.to_string()))?);
            entries.push((check.to_string(), spec, form));
        }
        Ok(Allowlist { entries })
    }

    pub fn shipped() -> Allowlist {
        Allowlist::parse(DEFAULT_ALLOWLIST).expect("shipped allowlist parses")
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &FamilySpec)> {
        self.entries.iter().map(|(c, s, _)| (c.as_str(), s))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn allows(&self, check: &str, l: &MultLattice) -> bool {
        let mut form = None;
        self.entries.iter().any(|(c, _, f)| {
            c == check && form.get_or_insert_with(|| canonical_form(l)) == f
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub check: String,
    pub probe: bool,
    pub lattice: String,
    pub spec: Option<FamilySpec>,
    pub status: CheckStatus,
    pub witness_names: Vec<String>,
    /// Violated and matched by the allowlist.
    pub allowed: bool,
}

impl SuiteRow {
    /// Counts against the exit status.
    pub fn is_unexpected(&self) -> bool {
        self.status.is_violated() && !self.probe && !self.allowed
    }

    pub fn witness(&self) -> Option<Witness> {
        match (&self.status, &self.spec) {
            (CheckStatus::Violated(ids), Some(spec)) => Some(Witness {
                check: self.check.clone(),
                spec: spec.clone(),
                elements: ids.iter().map(|a| a.index()).collect(),
            }),
            _ => None,
        }
    }

    fn witness_ids(&self) -> Vec<String> {
        match &self.status {
            CheckStatus::Violated(ids) => ids.iter().map(|a| a.index().to_string()).collect(),
            _ => Vec::new(),
        }
    }

    fn describe(&self) -> String {
        let w = if self.witness_names.is_empty() {
            "lattice-level".to_string()
        } else {
            format!(
                "witness ({}) ids [{}]",
                self.witness_names.join(", "),
                self.witness_ids().join(", ")
            )
        };
        format!("{} on {}: {w}", self.check, self.lattice)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub holds: usize,
    pub violated: usize,
    pub unmet: usize,
    pub allowed: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub corpus: String,
    pub lattices: Vec<String>,
    /// Selected direction ids in registry order.
    pub checks: Vec<String>,
    pub rows: Vec<SuiteRow>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn tallies(&self) -> BTreeMap<&str, Tally> {
        let mut out: BTreeMap<&str, Tally> = BTreeMap::new();
        for r in &self.rows {
            let t = out.entry(r.check.as_str()).or_default();
            match r.status {
                CheckStatus::Holds => t.holds += 1,
                CheckStatus::Violated(_) => {
                    t.violated += 1;
                    if r.allowed {
                        t.allowed += 1;
                    }
                }
                CheckStatus::Unmet => t.unmet += 1,
            }
        }
        out
    }

    pub fn violations(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| r.status.is_violated() && !r.probe)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| r.is_unexpected())
    }

    /// 0 when every non-probe violation is allowlisted, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.unexpected().next().is_some())
    }

    /// Human-readable report. The wall-clock line is the only
    /// nondeterministic part and can be left out.
    pub fn render_text(&self, with_clock: bool) -> String {
        let mut s = String::new();
        let tallies = self.tallies();
        let _ = writeln!(s, "corpus: {}", self.corpus);
        let _ = writeln!(s, "lattices: {}", self.lattices.len());
        let probes = self
            .rows
            .iter()
            .filter(|r| r.probe)
            .map(|r| r.check.as_str())
            .collect::<std::collections::BTreeSet<_>>();
        let _ = writeln!(
            s,
            "directions: {} ({} probes)",
            self.checks.len(),
            probes.len()
        );
        let _ = writeln!(s);
        let width = self.checks.iter().map(String::len).max().unwrap_or(5).max(5);
        let _ = writeln!(
            s,
            "{:<width$}  {:>6}  {:>8}  {:>5}",
            "check", "holds", "violated", "unmet"
        );
        for id in &self.checks {
            let t = tallies.get(id.as_str()).cloned().unwrap_or_default();
            let mark = if probes.contains(id.as_str()) {
                "  probe"
            } else if t.allowed > 0 && t.allowed == t.violated {
                "  allowlisted"
            } else {
                ""
            };
            let _ = writeln!(
                s,
                "{id:<width$}  {:>6}  {:>8}  {:>5}{mark}",
                t.holds, t.violated, t.unmet
            );
        }
        let mut section = |title: &str, rows: Vec<&SuiteRow>| {
            let _ = writeln!(s, "\n{title}:");
            if rows.is_empty() {
                let _ = writeln!(s, "  none");
            }
            for r in rows {
                let _ = writeln!(s, "  {}", r.describe());
            }
        };
        section("unexpected violations", self.unexpected().collect());
        section(
            "allowlisted violations",
            self.rows.iter().filter(|r| r.allowed).collect(),
        );
        section(
            "probe violations",
            self.rows
                .iter()
                .filter(|r| r.probe && r.status.is_violated())
                .collect(),
        );
        let unexpected = self.unexpected().count();
        let _ = writeln!(s, "\nresult: {unexpected} unexpected violations");
        if with_clock {
            let _ = writeln!(s, "wall-clock: {:.3}s", self.elapsed.as_secs_f64());
        }
        s
    }

    /// `check_id<TAB>lattice_name<TAB>status<TAB>witness ids…`, one row per
    /// (lattice, direction).
    pub fn render_tsv(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let _ = write!(s, "{}\t{}\t{}", r.check, r.lattice, r.status.label());
            for id in r.witness_ids() {
                let _ = write!(s, "\t{id}");
            }
            s.push('\n');
        }
        s
    }
}
