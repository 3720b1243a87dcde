//! Axiom validation for candidate multiplicative lattices.
//!
//! Distribution over arbitrary joins is checked as binary distributivity
//! together with `a·0 = 0`, which is distribution over the empty join. The
//! inequality `a·b ≤ a ∧ b` is derived rather than assumed and is checked
//! separately so that a failure names it directly.

use std::fmt;

use crate::lattice::{ElementId, MultLattice};

/// One axiom instance family.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Reflexive,
    Antisymmetric,
    Transitive,
    JoinIsLub,
    MeetIsGlb,
    BottomLeast,
    TopGreatest,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    MulDistributive,
    MulZero,
    MulBelowMeet,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::Reflexive,
        Axiom::Antisymmetric,
        Axiom::Transitive,
        Axiom::JoinIsLub,
        Axiom::MeetIsGlb,
        Axiom::BottomLeast,
        Axiom::TopGreatest,
        Axiom::MulCommutative,
        Axiom::MulAssociative,
        Axiom::MulIdentity,
        Axiom::MulDistributive,
        Axiom::MulZero,
        Axiom::MulBelowMeet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexive => "order-reflexive",
            Axiom::Antisymmetric => "order-antisymmetric",
            Axiom::Transitive => "order-transitive",
            Axiom::JoinIsLub => "join-is-least-upper-bound",
            Axiom::MeetIsGlb => "meet-is-greatest-lower-bound",
            Axiom::BottomLeast => "bottom-is-least",
            Axiom::TopGreatest => "top-is-greatest",
            Axiom::MulCommutative => "mul-commutative",
            Axiom::MulAssociative => "mul-associative",
            Axiom::MulIdentity => "mul-identity",
            Axiom::MulDistributive => "mul-distributes-over-join",
            Axiom::MulZero => "mul-by-bottom",
            Axiom::MulBelowMeet => "mul-below-meet",
        }
    }

    /// Human description of the failing instance shape.
    pub fn description(self) -> &'static str {
        match self {
            Axiom::Reflexive => "x ≤ x fails",
            Axiom::Antisymmetric => "x ≤ y ≤ x with x ≠ y",
            Axiom::Transitive => "x ≤ y ≤ z but x ≰ z",
            Axiom::JoinIsLub => "join(x,y) is not the least upper bound",
            Axiom::MeetIsGlb => "meet(x,y) is not the greatest lower bound",
            Axiom::BottomLeast => "bottom ≰ x",
            Axiom::TopGreatest => "x ≰ top",
            Axiom::MulCommutative => "x·y ≠ y·x",
            Axiom::MulAssociative => "(x·y)·z ≠ x·(y·z)",
            Axiom::MulIdentity => "x·top ≠ x",
            Axiom::MulDistributive => "x·(y∨z) ≠ x·y ∨ x·z",
            Axiom::MulZero => "x·bottom ≠ bottom",
            Axiom::MulBelowMeet => "mul(x,y) exceeds meet",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Axiom::Reflexive
            | Axiom::BottomLeast
            | Axiom::TopGreatest
            | Axiom::MulIdentity
            | Axiom::MulZero => 1,
            Axiom::Antisymmetric
            | Axiom::JoinIsLub
            | Axiom::MeetIsGlb
            | Axiom::MulCommutative
            | Axiom::MulBelowMeet => 2,
            Axiom::Transitive | Axiom::MulAssociative | Axiom::MulDistributive => 3,
        }
    }

    /// Evaluates one instance. `w` must have `self.arity()` entries.
    pub fn holds_at(self, l: &MultLattice, w: &[ElementId]) -> bool {
        assert_eq!(w.len(), self.arity(), "witness arity mismatch");
        match self {
            Axiom::Reflexive => l.leq(w[0], w[0]),
            Axiom::Antisymmetric => !(w[0] != w[1] && l.leq(w[0], w[1]) && l.leq(w[1], w[0])),
            Axiom::Transitive => !(l.leq(w[0], w[1]) && l.leq(w[1], w[2])) || l.leq(w[0], w[2]),
            Axiom::JoinIsLub => {
                let (x, y) = (w[0], w[1]);
                let u = l.join(x, y);
                l.leq(x, u)
                    && l.leq(y, u)
                    && l.elements()
                        .all(|v| !(l.leq(x, v) && l.leq(y, v)) || l.leq(u, v))
            }
            Axiom::MeetIsGlb => {
                let (x, y) = (w[0], w[1]);
                let d = l.meet(x, y);
                l.leq(d, x)
                    && l.leq(d, y)
                    && l.elements()
                        .all(|v| !(l.leq(v, x) && l.leq(v, y)) || l.leq(v, d))
            }
            Axiom::BottomLeast => l.leq(l.bottom(), w[0]),
            Axiom::TopGreatest => l.leq(w[0], l.top()),
            Axiom::MulCommutative => l.mul(w[0], w[1]) == l.mul(w[1], w[0]),
            Axiom::MulAssociative => {
                l.mul(l.mul(w[0], w[1]), w[2]) == l.mul(w[0], l.mul(w[1], w[2]))
            }
            Axiom::MulIdentity => l.mul(w[0], l.top()) == w[0],
            Axiom::MulDistributive => {
                let (x, y, z) = (w[0], w[1], w[2]);
                l.mul(x, l.join(y, z)) == l.join(l.mul(x, y), l.mul(x, z))
            }
            Axiom::MulZero => l.mul(w[0], l.bottom()) == l.bottom(),
            Axiom::MulBelowMeet => l.leq(l.mul(w[0], w[1]), l.meet(w[0], w[1])),
        }
    }

    /// First failing instance in lexicographic order, if any.
    pub fn first_violation(self, l: &MultLattice) -> Option<Vec<ElementId>> {
        let els: Vec<ElementId> = l.elements().collect();
        match self.arity() {
            1 => els
                .iter()
                .map(|&x| vec![x])
                .find(|w| !self.holds_at(l, w)),
            2 => els
                .iter()
                .flat_map(|&x| els.iter().map(move |&y| vec![x, y]))
                .find(|w| !self.holds_at(l, w)),
            _ => els
                .iter()
                .flat_map(|&x| {
                    let els = &els;
                    els.iter()
                        .flat_map(move |&y| els.iter().map(move |&z| vec![x, y, z]))
                })
                .find(|w| !self.holds_at(l, w)),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
}

impl AxiomViolation {
    /// Re-evaluates the witness; true iff the violation reproduces.
    pub fn replay(&self, l: &MultLattice) -> bool {
        !self.axiom.holds_at(l, &self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub valid: bool,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn violated(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

/// Scans every axiom instance and reports each violated axiom once, with the
/// lexicographically first witness.
pub fn validate(l: &MultLattice) -> AxiomReport {
    let violations: Vec<AxiomViolation> = Axiom::ALL
        .iter()
        .filter_map(|&axiom| {
            axiom
                .first_violation(l)
                .map(|witness| AxiomViolation { axiom, witness })
        })
        .collect();
    AxiomReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Formats a report for humans, one violation per line.
pub fn render_report(l: &MultLattice, report: &AxiomReport) -> String {
    if report.valid {
        return format!("{}: valid\n", l.name());
    }
    let mut out = format!("{}: {} violated axiom(s)\n", l.name(), report.violations.len());
    for v in &report.violations {
        let names: Vec<&str> = v.witness.iter().map(|&x| l.element_name(x)).collect();
        out.push_str(&format!(
            "  {} ({}) at ({})\n",
            v.axiom.name(),
            v.axiom.description(),
            names.join(", ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::order_from_covers;

    fn chain_leq(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect()
    }

    #[test]
    fn b4_with_meet_is_valid() {
        let leq = order_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let l = MultLattice::frame_from_order("b4", vec![], leq).unwrap();
        assert!(validate(&l).valid);
    }

    #[test]
    fn three_chain_with_idempotent_top_square() {
        // 0 < a < 1 with a·a = 1
        let l = MultLattice::from_order_fn("bad", vec![], chain_leq(3), |x, y| match (x, y) {
            (1, 1) => 2,
            (0, _) | (_, 0) => 0,
            (2, z) | (z, 2) => z,
            _ => unreachable!(),
        })
        .unwrap();
        let report = validate(&l);
        assert!(!report.valid);
        let below = report.violated(Axiom::MulBelowMeet).unwrap();
        assert_eq!(below.witness, vec![l.element(1).unwrap(); 2]);
        let dist = report.violated(Axiom::MulDistributive).unwrap();
        // a·(a ∨ 1) = a but a·a ∨ a·1 = 1
        let ids: Vec<usize> = dist.witness.iter().map(|x| x.index()).collect();
        assert_eq!(ids, vec![1, 1, 2]);
        assert!(report.violations.iter().all(|v| v.replay(&l)));
    }
}
