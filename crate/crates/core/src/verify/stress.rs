//! Relabeling stress: random renumberings must not change the canonical
//! form or any direction's status.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::lattice::MultLattice;
use crate::search::canonical_form;

use super::{select, Ctx, VerifyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressFailure {
    pub lattice: String,
    pub round: usize,
    /// `canonical-form` or the direction id whose status moved.
    pub what: String,
}

/// A uniformly random permutation of `0..n`, reproducible from the seed.
pub fn random_permutation(n: usize, rng: &mut StdRng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Relabels every lattice `rounds` times. Statuses are compared with the
/// spec dropped on both sides, since relabeling breaks product coordinates.
/// An empty `checks` only tests the canonical form.
pub fn relabel_stress(
    lattices: &[MultLattice],
    rounds: usize,
    seed: u64,
    checks: &[String],
) -> Result<Vec<StressFailure>, VerifyError> {
    let selected = if checks.is_empty() {
        Vec::new()
    } else {
        select(checks)?
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for l in lattices {
        let form = canonical_form(l);
        let base = Ctx::new(l.clone(), None);
        let labels: Vec<&str> = selected
            .iter()
            .map(|s| s.check().evaluate(s.direction(), &base).label())
            .collect();
        for round in 0..rounds {
            let p = l.permuted(&random_permutation(l.len(), &mut rng));
            let mut fail = |what: String| {
                failures.push(StressFailure {
                    lattice: l.name().to_string(),
                    round,
                    what,
                })
            };
            if canonical_form(&p) != form {
                fail("canonical-form".into());
            }
            let ctx = Ctx::new(p, None);
            for (s, want) in selected.iter().zip(&labels) {
                if s.check().evaluate(s.direction(), &ctx).label() != *want {
                    fail(s.full_id());
                }
            }
        }
    }
    Ok(failures)
}
