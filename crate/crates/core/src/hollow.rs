//! Strongly hollow and completely strongly hollow elements, `κ`, `T`, `L_a`
//! and hollow representations.
//!
//! `is_strongly_hollow` is the definitional pair scan. The completely
//! strongly hollow test uses the κ-criterion: a non-zero `a` is completely
//! strongly hollow iff `a ≰ κ(a)`. Families are required to be non-empty, so
//! bottom is treated as hollow in both senses.

use std::fmt::Write as _;

use crate::lattice::{ElementId, MultLattice};

/// Subset enumeration in [`representations`] is exhaustive only up to this
/// many candidate parts.
pub const REPRESENTATION_CAP: usize = 20;

/// `a ≤ j ∨ k ⇒ a ≤ j or a ≤ k`, checked over every pair.
pub fn is_strongly_hollow(l: &MultLattice, a: ElementId) -> bool {
    l.elements().all(|j| {
        l.leq(a, j)
            || l.elements()
                .all(|k| l.leq(a, k) || !l.leq(a, l.join(j, k)))
    })
}

/// `T(a) = {k | a ≰ k}`.
pub fn t_set(l: &MultLattice, a: ElementId) -> Vec<ElementId> {
    l.elements().filter(|&k| !l.leq(a, k)).collect()
}

/// `κ(a) = ⋁ T(a)`.
pub fn kappa(l: &MultLattice, a: ElementId) -> ElementId {
    l.join_all(l.elements().filter(|&k| !l.leq(a, k)))
}

/// `L_a = (κ(a) : a)`.
pub fn l_a(l: &MultLattice, a: ElementId) -> ElementId {
    l.residual(kappa(l, a), a)
}

pub fn is_completely_strongly_hollow(l: &MultLattice, a: ElementId) -> bool {
    l.is_bottom(a) || !l.leq(a, kappa(l, a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HollowProfile {
    pub element: ElementId,
    pub strongly_hollow: bool,
    pub completely_strongly_hollow: bool,
    pub kappa: ElementId,
    pub t_set: Vec<ElementId>,
    pub l_a: ElementId,
}

pub fn hollow_profile(l: &MultLattice, a: ElementId) -> HollowProfile {
    let t = t_set(l, a);
    let k = l.join_all(t.iter().copied());
    HollowProfile {
        element: a,
        strongly_hollow: is_strongly_hollow(l, a),
        completely_strongly_hollow: l.is_bottom(a) || !l.leq(a, k),
        kappa: k,
        t_set: t,
        l_a: l.residual(k, a),
    }
}

/// Strongly hollow elements by the definitional scan, in id order.
pub fn hollow_elements(l: &MultLattice) -> Vec<ElementId> {
    l.elements().filter(|&a| is_strongly_hollow(l, a)).collect()
}

/// Completely strongly hollow elements by the κ-criterion, in id order.
pub fn csh_elements(l: &MultLattice) -> Vec<ElementId> {
    l.elements()
        .filter(|&a| is_completely_strongly_hollow(l, a))
        .collect()
}

/// Maximal members of `{k ≤ x | k strongly hollow}`. Never empty, since
/// bottom qualifies.
pub fn maximal_hollow_below(l: &MultLattice, x: ElementId) -> Vec<ElementId> {
    let below: Vec<ElementId> = l
        .elements()
        .filter(|&k| l.leq(k, x) && is_strongly_hollow(l, k))
        .collect();
    l.maximal_of(&below)
}

/// `target = ⋁ parts` with every part non-zero and completely strongly
/// hollow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub target: ElementId,
    pub parts: Vec<ElementId>,
    pub minimal: bool,
}

/// No part lies below the join of the others.
pub fn is_minimal_family(l: &MultLattice, parts: &[ElementId]) -> bool {
    parts.iter().enumerate().all(|(i, &p)| {
        let rest = l.join_all(
            parts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| q),
        );
        !l.leq(p, rest)
    })
}

fn candidates(l: &MultLattice, x: ElementId) -> Vec<ElementId> {
    l.elements()
        .filter(|&c| !l.is_bottom(c) && l.leq(c, x) && is_completely_strongly_hollow(l, c))
        .collect()
}

/// Representations of `x` by non-zero completely strongly hollow parts.
///
/// Subsets of the candidate set are enumerated exhaustively when it has at
/// most [`REPRESENTATION_CAP`] members. Above the cap only the minimal
/// representation is returned, built from the maximal candidates: every
/// part of a minimal representation must be one of them. Bottom is
/// represented by the empty family.
pub fn representations(l: &MultLattice, x: ElementId, minimal_only: bool) -> Vec<Representation> {
    let cands = candidates(l, x);
    if cands.len() > REPRESENTATION_CAP {
        return minimal_representation(l, x).into_iter().collect();
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << cands.len()) {
        let parts: Vec<ElementId> = cands
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c)
            .collect();
        if l.join_all(parts.iter().copied()) != x {
            continue;
        }
        let minimal = is_minimal_family(l, &parts);
        if minimal || !minimal_only {
            out.push(Representation {
                target: x,
                parts,
                minimal,
            });
        }
    }
    out
}

/// The maximal non-zero completely strongly hollow elements below `x`, if
/// they join to `x`.
pub fn minimal_representation(l: &MultLattice, x: ElementId) -> Option<Representation> {
    let parts = l.maximal_of(&candidates(l, x));
    if l.join_all(parts.iter().copied()) != x {
        return None;
    }
    let minimal = is_minimal_family(l, &parts);
    Some(Representation {
        target: x,
        parts,
        minimal,
    })
}

/// `x` is the join of the completely strongly hollow elements below it.
pub fn is_representable(l: &MultLattice, x: ElementId) -> bool {
    l.join_all(l.elements().filter(|&c| l.leq(c, x) && is_completely_strongly_hollow(l, c))) == x
}

fn set_names(l: &MultLattice, set: &[ElementId]) -> String {
    let v: Vec<&str> = set.iter().map(|&x| l.element_name(x)).collect();
    format!("{{{}}}", v.join(","))
}

/// Per-element hollow data followed by the minimal representation table.
pub fn render_hollow_report(l: &MultLattice) -> String {
    let mut out = format!("lattice {}\n", l.name());
    let sh = hollow_elements(l);
    let _ = writeln!(out, "strongly_hollow = {}", set_names(l, &sh));
    for a in l.elements() {
        let p = hollow_profile(l, a);
        let _ = writeln!(
            out,
            "element {} sh={} csh={} kappa={} l_a={}",
            l.element_name(a),
            p.strongly_hollow,
            p.completely_strongly_hollow,
            l.element_name(p.kappa),
            l.element_name(p.l_a)
        );
    }
    for x in l.elements() {
        match minimal_representation(l, x) {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "representation {} = {}",
                    l.element_name(x),
                    set_names(l, &r.parts)
                );
            }
            None => {
                let _ = writeln!(out, "representation {} = none", l.element_name(x));
            }
        }
    }
    out
}
