//! The check registry.
//!
//! Every check is evaluated from definitions only; no check relies on the
//! outcome of another. A direction with arity `k` ranges over all `k`-tuples
//! of elements and returns `None` where its element-level hypothesis fails.

use std::sync::LazyLock;

use crate::check::CheckStatus;
use crate::constructions::{check_adjunction_transfer, Derived};
use crate::elements::{
    is_completely_strongly_irreducible, is_primitive_idempotent, is_strongly_irreducible,
    is_uniform, maximal_elements, LatticePredicate as P,
};
use crate::hollow::{
    is_completely_strongly_hollow, is_representable, is_strongly_hollow, representations,
};
use crate::lattice::{ElementId, MultLattice};

use super::context::Ctx;

type Hyp = fn(&Ctx) -> bool;
type Eval = fn(&Ctx, &[ElementId]) -> Option<bool>;

pub struct Direction {
    pub label: &'static str,
    pub arity: usize,
    /// Informational: reported, never counted as a violation.
    pub probe: bool,
    eval: Eval,
}

pub struct TheoremCheck {
    pub id: &'static str,
    pub summary: &'static str,
    hypothesis: Hyp,
    pub directions: Vec<Direction>,
}

impl TheoremCheck {
    /// `id` for single-direction checks, `id(label)` otherwise.
    pub fn full_id(&self, d: &Direction) -> String {
        if self.directions.len() == 1 && d.label.is_empty() {
            self.id.to_string()
        } else {
            format!("{}({})", self.id, d.label)
        }
    }

    pub fn applies(&self, c: &Ctx) -> bool {
        !c.l.is_trivial() && (self.hypothesis)(c)
    }

    /// Scans every tuple in lexicographic id order; the first failure is the
    /// witness.
    pub fn evaluate(&self, d: &Direction, c: &Ctx) -> CheckStatus {
        if !self.applies(c) {
            return CheckStatus::Unmet;
        }
        let n = c.l.len();
        let els: Vec<ElementId> = c.l.elements().collect();
        let mut idx = vec![0usize; d.arity];
        let mut confirmed = false;
        loop {
            let tuple: Vec<ElementId> = idx.iter().map(|&i| els[i]).collect();
            match (d.eval)(c, &tuple) {
                Some(false) => return CheckStatus::Violated(tuple),
                Some(true) => confirmed = true,
                None => {}
            }
            // odometer, last position fastest
            let mut k = d.arity;
            loop {
                if k == 0 {
                    return if confirmed {
                        CheckStatus::Holds
                    } else {
                        CheckStatus::Unmet
                    };
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Re-evaluates one instance; `true` iff it fails.
    pub fn fails_at(&self, d: &Direction, c: &Ctx, tuple: &[ElementId]) -> bool {
        self.applies(c) && (d.eval)(c, tuple) == Some(false)
    }
}

fn when(h: bool, f: impl FnOnce() -> bool) -> Option<bool> {
    h.then(f)
}

fn dir(label: &'static str, arity: usize, eval: Eval) -> Direction {
    Direction {
        label,
        arity,
        probe: false,
        eval,
    }
}

fn probe(label: &'static str, arity: usize, eval: Eval) -> Direction {
    Direction {
        label,
        arity,
        probe: true,
        eval,
    }
}

fn check(id: &'static str, summary: &'static str, hypothesis: Hyp, directions: Vec<Direction>) -> TheoremCheck {
    TheoremCheck {
        id,
        summary,
        hypothesis,
        directions,
    }
}

fn any(_: &Ctx) -> bool {
    true
}

fn weak_r(c: &Ctx) -> bool {
    c.has(P::WeakRLattice)
}

fn quasi_local(c: &Ctx) -> bool {
    c.has(P::QuasiLocal)
}

fn comparable(l: &MultLattice, a: ElementId, b: ElementId) -> bool {
    l.leq(a, b) || l.leq(b, a)
}

/// The unique maximal element of a quasi-local lattice.
fn max_of(c: &Ctx) -> ElementId {
    c.maximals()[0]
}

/// Greatest element of `{k | a ≰ k}`, if there is one.
fn greatest_nonabove(c: &Ctx, a: ElementId) -> Option<ElementId> {
    let l = &c.l;
    let t: Vec<ElementId> = l.elements().filter(|&k| !l.leq(a, k)).collect();
    t.iter()
        .copied()
        .find(|&g| t.iter().all(|&k| l.leq(k, g)))
}

fn maximals_missing(c: &Ctx, a: ElementId) -> usize {
    c.maximals().iter().filter(|&&m| !c.l.leq(a, m)).count()
}

fn sh_in(d: &Derived, a: ElementId) -> bool {
    is_strongly_hollow(&d.lattice, d.map.apply(a))
}

fn quasi_local_lattice(l: &MultLattice) -> bool {
    maximal_elements(l).len() == 1
}

fn no_zero_divisors_below(c: &Ctx, a: ElementId) -> bool {
    let l = &c.l;
    let below: Vec<ElementId> = l
        .elements()
        .filter(|&x| c.nonzero(x) && l.leq(x, a))
        .collect();
    below
        .iter()
        .all(|&x| below.iter().all(|&y| !l.is_bottom(l.mul(x, y))))
}

fn all_nonzero(c: &Ctx, f: impl Fn(ElementId) -> bool) -> bool {
    c.l.elements().filter(|&a| c.nonzero(a)).all(f)
}

fn is_b4(c: &Ctx) -> bool {
    c.l.len() == 4 && c.has(P::Boolean)
}

fn adjunction(src: &MultLattice, d: &Derived) -> Option<bool> {
    match check_adjunction_transfer(src, &d.lattice, &d.map, &d.embed) {
        Ok(CheckStatus::Holds) => Some(true),
        Ok(CheckStatus::Unmet) => None,
        Ok(CheckStatus::Violated(_)) | Err(_) => Some(false),
    }
}

fn local_criterion(c: &Ctx, a: ElementId) -> Option<bool> {
    let l = &c.l;
    let ann = l.residual(l.bottom(), a);
    if !quasi_local_lattice(&c.quotient(ann).lattice) {
        return Some(false);
    }
    for &m in c.maximals() {
        let d = c.localization(m)?;
        let x = d.map.apply(a);
        if !d.lattice.is_bottom(x) && !is_strongly_hollow(&d.lattice, x) {
            return Some(false);
        }
    }
    Some(true)
}

/// For a product lattice: the index of the single non-zero coordinate of
/// `a`, if every other coordinate is zero. Bottom has none.
fn support(c: &Ctx, a: ElementId) -> Option<(usize, ElementId)> {
    let f = c.factors()?;
    let coords = f.coords(a);
    let nz: Vec<usize> = (0..coords.len())
        .filter(|&i| !f.lattices[i].is_bottom(coords[i]))
        .collect();
    match nz.as_slice() {
        [i] => Some((*i, coords[*i])),
        _ => None,
    }
}

/// `⟨fill, …, v, …, fill⟩` with `v` at position `i`.
fn embedded(c: &Ctx, i: usize, v: ElementId, top_fill: bool) -> ElementId {
    let f = c.factors().expect("product");
    let coords: Vec<ElementId> = f
        .lattices
        .iter()
        .enumerate()
        .map(|(j, q)| {
            if j == i {
                v
            } else if top_fill {
                q.top()
            } else {
                q.bottom()
            }
        })
        .collect();
    f.encode(&c.l, &coords)
}

fn product_shape_hollow(c: &Ctx, a: ElementId) -> bool {
    if c.l.is_bottom(a) {
        return true;
    }
    match support(c, a) {
        Some((i, ai)) => is_strongly_hollow(&c.factors().expect("product").lattices[i], ai),
        None => false,
    }
}

fn kappa_in_factor(c: &Ctx, i: usize, ai: ElementId) -> ElementId {
    crate::hollow::kappa(&c.factors().expect("product").lattices[i], ai)
}

/// Kinds of condition in the classification of lattices where every
/// non-zero prime is completely strongly hollow.
fn classification(c: &Ctx) -> [bool; 4] {
    let c1 = all_nonzero(c, |a| !c.is_prime(a) || c.csh(a));
    let c2 = is_b4(c)
        || (c.has(P::Chain) && c.has(P::Noether) && (c.has(P::Ufd) || c.has(P::SpecialPel)));
    let c3 = all_nonzero(c, |a| c.csh(a));
    let products = c.csh_products();
    let c4 = all_nonzero(c, |a| products.contains(&a));
    [c1, c2, c3, c4]
}

pub fn registry() -> &'static [TheoremCheck] {
    static REGISTRY: LazyLock<Vec<TheoremCheck>> = LazyLock::new(build);
    &REGISTRY
}

fn build() -> Vec<TheoremCheck> {
    vec![
        check(
            "compact-hollow-coincide",
            "an element is strongly hollow iff it is completely strongly hollow (every element of a finite lattice is compact)",
            any,
            vec![dir("", 1, |c, x| Some(c.sh(x[0]) == c.csh(x[0])))],
        ),
        check(
            "hollow-unique-lower-cover",
            "a non-zero completely strongly hollow element has exactly one maximal element strictly below it",
            any,
            vec![dir("", 1, |c, x| {
                when(c.nonzero(x[0]) && c.csh(x[0]), || c.lower_covers(x[0]).len() == 1)
            })],
        ),
        check(
            "hollow-join-comparable",
            "for strongly hollow i, j: i ∨ j is strongly hollow iff i and j are comparable",
            any,
            vec![
                dir("=>", 2, |c, x| {
                    let (i, j) = (x[0], x[1]);
                    when(c.sh(i) && c.sh(j) && c.sh(c.l.join(i, j)), || comparable(&c.l, i, j))
                }),
                dir("<=", 2, |c, x| {
                    let (i, j) = (x[0], x[1]);
                    when(c.sh(i) && c.sh(j) && comparable(&c.l, i, j), || c.sh(c.l.join(i, j)))
                }),
            ],
        ),
        check(
            "hollow-split-dichotomy",
            "for non-zero strongly hollow a: a = r ∨ s forces r, s comparable; and a ≤ r or a ≤ ⋀{s | s ∨ r ≥ a}",
            any,
            vec![
                dir("1", 3, |c, x| {
                    let (a, r, s) = (x[0], x[1], x[2]);
                    when(c.nonzero(a) && c.sh(a) && c.l.join(r, s) == a, || comparable(&c.l, r, s))
                }),
                dir("2", 2, |c, x| {
                    let l = &c.l;
                    let (a, r) = (x[0], x[1]);
                    when(c.nonzero(a) && c.sh(a), || {
                        let s_plus = l.meet_all(l.elements().filter(|&s| l.leq(a, l.join(s, r))));
                        l.leq(a, r) || l.leq(a, s_plus)
                    })
                }),
            ],
        ),
        check(
            "hollow-avoids-one-maximal",
            "a non-zero strongly hollow element lies below J or misses exactly one maximal element",
            any,
            vec![dir("", 1, |c, x| {
                let a = x[0];
                when(c.nonzero(a) && c.sh(a), || {
                    c.l.leq(a, c.jacobson()) || maximals_missing(c, a) == 1
                })
            })],
        ),
        check(
            "hollow-cancellation-local",
            "a strongly hollow cancellation element forces at most one maximal element",
            any,
            vec![dir("", 1, |c, x| {
                when(c.sh(x[0]) && c.cancellation(x[0]), || c.maximals().len() <= 1)
            })],
        ),
        check(
            "local-weak-principal-maximal-hollow",
            "in a quasi-local lattice a weak principal maximal element is strongly hollow",
            quasi_local,
            vec![dir("", 1, |c, x| {
                when(c.is_maximal(x[0]) && c.weak_principal(x[0]), || c.sh(x[0]))
            })],
        ),
        check(
            "top-hollow-iff-local",
            "top is completely strongly hollow iff the lattice is quasi-local",
            any,
            vec![
                dir("=>", 0, |c, _| when(c.csh(c.l.top()), || quasi_local(c))),
                dir("<=", 0, |c, _| when(quasi_local(c), || c.csh(c.l.top()))),
            ],
        ),
        check(
            "hollow-iff-greatest-nonabove",
            "a non-zero a is strongly hollow iff {k | a ≰ k} has a greatest element, which is then κ(a)",
            any,
            vec![
                dir("=>", 1, |c, x| {
                    when(c.nonzero(x[0]) && c.sh(x[0]), || greatest_nonabove(c, x[0]).is_some())
                }),
                dir("<=", 1, |c, x| {
                    when(c.nonzero(x[0]) && greatest_nonabove(c, x[0]).is_some(), || {
                        c.sh(x[0]) && c.csh(x[0])
                    })
                }),
                dir("kappa", 1, |c, x| {
                    when(c.nonzero(x[0]) && c.csh(x[0]), || {
                        greatest_nonabove(c, x[0]) == Some(c.kappa(x[0]))
                    })
                }),
            ],
        ),
        check(
            "kappa-criterion",
            "a non-zero element is strongly hollow iff a ≰ κ(a)",
            any,
            vec![
                dir("=>", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && c.sh(a), || !c.l.leq(a, c.kappa(a)))
                }),
                dir("<=", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && !c.l.leq(a, c.kappa(a)), || c.sh(a))
                }),
            ],
        ),
        check(
            "kappa-monotone",
            "for completely strongly hollow a, b: a ≤ b implies κ(a) ≤ κ(b), and conversely when b ≠ 0",
            any,
            vec![
                dir("=>", 2, |c, x| {
                    let (a, b) = (x[0], x[1]);
                    when(c.csh(a) && c.csh(b) && c.l.leq(a, b), || {
                        c.l.leq(c.kappa(a), c.kappa(b))
                    })
                }),
                dir("<=", 2, |c, x| {
                    let (a, b) = (x[0], x[1]);
                    when(
                        c.csh(a) && c.csh(b) && c.nonzero(b) && c.l.leq(c.kappa(a), c.kappa(b)),
                        || c.l.leq(a, b),
                    )
                }),
            ],
        ),
        check(
            "quotient-preserves-hollow",
            "if a is (completely) strongly hollow then a ∨ i is so in L/i",
            any,
            vec![
                dir("sh", 2, |c, x| when(c.sh(x[0]), || sh_in(c.quotient(x[1]), x[0]))),
                dir("csh", 2, |c, x| {
                    when(c.csh(x[0]), || {
                        let q = c.quotient(x[1]);
                        is_completely_strongly_hollow(&q.lattice, q.map.apply(x[0]))
                    })
                }),
            ],
        ),
        check(
            "quotient-residuals-agree",
            "for a, b ≥ i the residual (a:b) is the same in L and in L/i",
            any,
            vec![dir("", 3, |c, x| {
                let l = &c.l;
                let (i, a, b) = (x[0], x[1], x[2]);
                when(l.leq(i, a) && l.leq(i, b), || {
                    let q = c.quotient(i);
                    let r = q.lattice.residual(q.map.apply(a), q.map.apply(b));
                    q.embed.apply(r) == l.residual(a, b)
                })
            })],
        ),
        check(
            "residual-kappa-maximal",
            "for strongly hollow join principal a, L_a is top or maximal",
            any,
            vec![dir("", 1, |c, x| {
                let a = x[0];
                when(c.sh(a) && c.join_principal(a), || {
                    let la = c.l_a(a);
                    c.l.is_top(la) || c.is_maximal(la)
                })
            })],
        ),
        check(
            "localization-preserves-hollow",
            "for strongly hollow join principal a, a localized at L_a is strongly hollow",
            any,
            vec![dir("", 1, |c, x| {
                let a = x[0];
                if !(c.sh(a) && c.join_principal(a)) {
                    return None;
                }
                let d = c.localization(c.l_a(a))?;
                Some(sh_in(d, a))
            })],
        ),
        check(
            "annihilator-quotient-local",
            "for non-zero strongly hollow join principal a, L/(0:a) is quasi-local with maximal element L_a",
            any,
            vec![dir("", 1, |c, x| {
                let l = &c.l;
                let a = x[0];
                when(c.nonzero(a) && c.sh(a) && c.join_principal(a), || {
                    let ann = l.residual(l.bottom(), a);
                    let la = c.l_a(a);
                    if !l.leq(ann, la) {
                        return false;
                    }
                    let q = c.quotient(ann);
                    maximal_elements(&q.lattice) == vec![q.map.apply(la)]
                })
            })],
        ),
        check(
            "hollow-local-criterion",
            "a non-zero join principal a is strongly hollow iff L/(0:a) is quasi-local and each a_m is zero or strongly hollow",
            any,
            vec![
                dir("=>", 1, |c, x| {
                    let a = x[0];
                    if !(c.nonzero(a) && c.join_principal(a) && c.sh(a)) {
                        return None;
                    }
                    local_criterion(c, a)
                }),
                dir("<=", 1, |c, x| {
                    let a = x[0];
                    if !(c.nonzero(a) && c.join_principal(a)) {
                        return None;
                    }
                    when(local_criterion(c, a)?, || c.sh(a))
                }),
            ],
        ),
        check(
            "neutral-complemented-lower-cover",
            "a neutral complemented a is strongly hollow iff {x | x < a} has a unique maximal element",
            any,
            vec![
                dir("at-most-one", 1, |c, x| {
                    let a = x[0];
                    when(c.neutral(a) && c.complemented(a) && c.sh(a), || {
                        c.lower_covers(a).len() <= 1
                    })
                }),
                dir("<=", 1, |c, x| {
                    let a = x[0];
                    when(
                        c.neutral(a) && c.complemented(a) && c.lower_covers(a).len() == 1,
                        || c.sh(a),
                    )
                }),
                dir("=>", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && c.neutral(a) && c.complemented(a) && c.sh(a), || {
                        c.lower_covers(a).len() == 1
                    })
                }),
            ],
        ),
        check(
            "neutral-complemented-jacobson",
            "a non-zero neutral complemented a is strongly hollow iff every x < a lies below J",
            any,
            vec![
                dir("=>", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && c.neutral(a) && c.complemented(a) && c.sh(a), || {
                        below_jacobson(c, a)
                    })
                }),
                dir("<=", 1, |c, x| {
                    let a = x[0];
                    when(
                        c.nonzero(a) && c.neutral(a) && c.complemented(a) && below_jacobson(c, a),
                        || c.sh(a),
                    )
                }),
            ],
        ),
        check(
            "kappa-prime-equivalences",
            "for non-zero weak join principal strongly hollow a: κ(a) prime ⇔ a² ≰ κ(a) ⇔ a = a² ⇔ a ≰ J ⇔ κ(a) = L_a maximal",
            any,
            vec![
                dir("1=>2", 1, |c, x| kappa_cycle(c, x[0], 0)),
                dir("2=>3", 1, |c, x| kappa_cycle(c, x[0], 1)),
                dir("3=>4", 1, |c, x| kappa_cycle(c, x[0], 2)),
                dir("4=>5", 1, |c, x| kappa_cycle(c, x[0], 3)),
                dir("5=>1", 1, |c, x| kappa_cycle(c, x[0], 4)),
            ],
        ),
        check(
            "kappa-completely-irreducible",
            "κ(a) is completely strongly irreducible for non-zero completely strongly hollow a",
            any,
            vec![dir("", 1, |c, x| {
                let a = x[0];
                when(c.nonzero(a) && c.csh(a), || {
                    is_completely_strongly_irreducible(&c.l, c.kappa(a))
                })
            })],
        ),
        check(
            "maximal-hollow-below-exists",
            "below every x there is a maximal strongly hollow element",
            any,
            vec![dir("", 1, |c, x| {
                let l = &c.l;
                let below: Vec<ElementId> = l
                    .elements()
                    .filter(|&k| l.leq(k, x[0]) && c.sh(k))
                    .collect();
                Some(!l.maximal_of(&below).is_empty())
            })],
        ),
        check(
            "irreducible-residual-principal",
            "in a quasi-local weak r-lattice, strongly irreducible i < (i:m) gives (i:m) principal, i = (i:m)·m, and every j ≤ i or ≥ (i:m)",
            |c| quasi_local(c) && weak_r(c),
            vec![
                dir("1", 1, |c, x| {
                    let (_, im) = irreducible_residual(c, x[0])?;
                    Some(c.principal(im))
                }),
                dir("2", 1, |c, x| {
                    let (i, im) = irreducible_residual(c, x[0])?;
                    Some(i == c.l.mul(im, max_of(c)))
                }),
                probe("2-literal", 1, |c, x| {
                    let (i, im) = irreducible_residual(c, x[0])?;
                    Some(i == im)
                }),
                dir("3", 2, |c, x| {
                    let (i, im) = irreducible_residual(c, x[0])?;
                    let j = x[1];
                    Some(c.l.leq(j, i) || c.l.leq(im, j))
                }),
            ],
        ),
        check(
            "kappa-residual-strict",
            "in a quasi-local lattice κ(a) < (κ(a):m) for non-zero completely strongly hollow principal a",
            quasi_local,
            vec![dir("", 1, |c, x| {
                let a = x[0];
                when(c.nonzero(a) && c.csh(a) && c.principal(a), || {
                    let k = c.kappa(a);
                    c.l.lt(k, c.l.residual(k, max_of(c)))
                })
            })],
        ),
        check(
            "local-hollow-comparable",
            "in a quasi-local principally generated lattice a non-zero completely strongly hollow a is comparable to everything and equals (κ(a):m)",
            |c| quasi_local(c) && c.has(P::PrincipallyGenerated),
            vec![
                dir("comparable", 2, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && c.csh(a), || comparable(&c.l, a, x[1]))
                }),
                dir("residual", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && c.csh(a), || {
                        a == c.l.residual(c.kappa(a), max_of(c))
                    })
                }),
            ],
        ),
        check(
            "local-iff-principal-hollow-comparable",
            "a weak r-lattice is quasi-local iff each principal element is completely strongly hollow exactly when comparable to everything",
            weak_r,
            vec![
                dir("1=>2", 1, |c, x| {
                    let a = x[0];
                    when(quasi_local(c) && c.principal(a), || c.csh(a) == c.comparable_to_all(a))
                }),
                dir("2=>1", 0, |c, _| {
                    let cond = c
                        .l
                        .elements()
                        .filter(|&a| c.principal(a))
                        .all(|a| c.csh(a) == c.comparable_to_all(a));
                    when(cond, || quasi_local(c))
                }),
            ],
        ),
        check(
            "semisimple-hollow-iff-atom",
            "in a semi-simple lattice a non-zero element is strongly hollow iff it is an atom",
            |c| c.has(P::SemiSimple),
            vec![
                dir("=>", 1, |c, x| when(c.nonzero(x[0]) && c.sh(x[0]), || c.is_atom(x[0]))),
                dir("<=", 1, |c, x| when(c.is_atom(x[0]), || c.sh(x[0]))),
            ],
        ),
        check(
            "semisimple-unique-maximal-atom",
            "in a semi-simple lattice a non-zero e missing exactly one maximal element is an atom and complemented",
            |c| c.has(P::SemiSimple),
            vec![dir("", 1, |c, x| {
                let e = x[0];
                when(c.nonzero(e) && maximals_missing(c, e) == 1, || {
                    c.is_atom(e) && c.complemented(e)
                })
            })],
        ),
        check(
            "nonlocal-hollow-maximal-idempotent",
            "with at least two maximal elements, a strongly hollow maximal element is idempotent",
            |c| c.maximals().len() >= 2,
            vec![dir("", 1, |c, x| {
                let m = x[0];
                when(c.is_maximal(m) && c.sh(m), || c.l.mul(m, m) == m)
            })],
        ),
        check(
            "gelfand-maximal-separation",
            "in a Gelfand lattice distinct maximal m1, m2 admit s ≰ m1, t ≰ m2 with st = 0",
            |c| c.has(P::Gelfand),
            vec![dir("", 2, |c, x| {
                let l = &c.l;
                let (m1, m2) = (x[0], x[1]);
                when(m1 != m2 && c.is_maximal(m1) && c.is_maximal(m2), || {
                    l.elements().filter(|&s| !l.leq(s, m1)).any(|s| {
                        l.elements()
                            .filter(|&t| !l.leq(t, m2))
                            .any(|t| l.is_bottom(l.mul(s, t)))
                    })
                })
            })],
        ),
        check(
            "gelfand-semisimple-hollow",
            "in a semi-simple Gelfand lattice, for a ≠ 0: strongly hollow ⇔ no zero products below a ⇔ atom",
            |c| c.has(P::Gelfand) && c.has(P::SemiSimple),
            vec![
                dir("1=>2", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && c.sh(a), || no_zero_divisors_below(c, a))
                }),
                dir("2=>3", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && no_zero_divisors_below(c, a), || c.is_atom(a))
                }),
                dir("3=>1", 1, |c, x| when(c.is_atom(x[0]), || c.sh(x[0]))),
            ],
        ),
        check(
            "uniform-equivalence",
            "in a semi-simple weak meet principally generated lattice, for a ≠ 0: no zero products below a ⇔ a uniform",
            |c| c.has(P::SemiSimple) && c.has(P::WeakMeetPrincipallyGenerated),
            vec![
                dir("=>", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && no_zero_divisors_below(c, a), || is_uniform(&c.l, a))
                }),
                dir("<=", 1, |c, x| {
                    let a = x[0];
                    when(c.nonzero(a) && is_uniform(&c.l, a), || no_zero_divisors_below(c, a))
                }),
            ],
        ),
        check(
            "primitive-idempotent-hollow",
            "in an I0 lattice a non-zero complemented neutral e is completely strongly hollow iff primitive",
            |c| c.has(P::I0),
            vec![
                dir("=>", 1, |c, x| {
                    let e = x[0];
                    when(c.nonzero(e) && c.complemented(e) && c.neutral(e) && c.csh(e), || {
                        is_primitive_idempotent(&c.l, e)
                    })
                }),
                dir("<=", 1, |c, x| {
                    let e = x[0];
                    when(
                        c.nonzero(e)
                            && c.complemented(e)
                            && c.neutral(e)
                            && is_primitive_idempotent(&c.l, e),
                        || c.csh(e),
                    )
                }),
            ],
        ),
        check(
            "reduced-prufer-hollow-existence",
            "a reduced Prüfer lattice has a non-zero completely strongly hollow element iff some minimal prime p has ⋀(other minimal primes) ≰ p and L/p a quasi-local domain",
            |c| c.has(P::Reduced) && c.has(P::Prufer),
            vec![
                dir("=>", 0, |c, _| when(exists_nonzero_csh(c), || minimal_prime_witness(c))),
                dir("<=", 0, |c, _| when(minimal_prime_witness(c), || exists_nonzero_csh(c))),
            ],
        ),
        check(
            "product-hollow-coordinates",
            "in a product, a is strongly hollow iff it has one strongly hollow coordinate and zeros elsewhere; then κ(a) and L_a are computed coordinatewise with top elsewhere",
            |c| c.factors().is_some(),
            vec![
                dir("=>", 1, |c, x| when(c.sh(x[0]), || product_shape_hollow(c, x[0]))),
                dir("<=", 1, |c, x| when(product_shape_hollow(c, x[0]), || c.sh(x[0]))),
                dir("kappa", 1, |c, x| {
                    let a = x[0];
                    if !c.sh(a) {
                        return None;
                    }
                    let (i, ai) = support(c, a)?;
                    Some(c.kappa(a) == embedded(c, i, kappa_in_factor(c, i, ai), true))
                }),
                probe("kappa-zero-padded", 1, |c, x| {
                    let a = x[0];
                    if !c.sh(a) {
                        return None;
                    }
                    let (i, ai) = support(c, a)?;
                    Some(c.kappa(a) == embedded(c, i, kappa_in_factor(c, i, ai), false))
                }),
                dir("residual", 1, |c, x| {
                    let a = x[0];
                    if !c.sh(a) {
                        return None;
                    }
                    let (i, ai) = support(c, a)?;
                    let q = &c.factors().expect("product").lattices[i];
                    let li = q.residual(kappa_in_factor(c, i, ai), ai);
                    Some(c.l_a(a) == embedded(c, i, li, true))
                }),
            ],
        ),
        check(
            "product-representability",
            "every element of a product is a join of completely strongly hollow elements iff the same holds in every factor",
            |c| c.factors().is_some(),
            vec![
                dir("=>", 0, |c, _| when(all_representable(&c.l), || factors_representable(c))),
                dir("<=", 0, |c, _| when(factors_representable(c), || all_representable(&c.l))),
            ],
        ),
        check(
            "minimal-representation-unique",
            "all minimal representations of an element by completely strongly hollow elements coincide",
            any,
            vec![dir("", 1, |c, x| {
                let reps = representations(&c.l, x[0], true);
                when(!reps.is_empty(), || reps.windows(2).all(|w| w[0].parts == w[1].parts))
            })],
        ),
        check(
            "representable-semilocal-bound",
            "if top is representable, the number of maximal elements is at most the size of its smallest representation",
            |c| is_representable(&c.l, c.l.top()),
            vec![dir("", 0, |c, _| {
                let size = representations(&c.l, c.l.top(), true)
                    .iter()
                    .map(|r| r.parts.len())
                    .min()?;
                Some(c.maximals().len() <= size)
            })],
        ),
        check(
            "representable-atoms-hollow",
            "if every non-zero element is representable, every atom is completely strongly hollow and the socle's minimal representation is the atom set",
            |c| c.l.elements().all(|x| is_representable(&c.l, x)),
            vec![
                dir("atoms", 1, |c, x| when(c.is_atom(x[0]), || c.csh(x[0]))),
                dir("socle", 0, |c, _| {
                    let socle = c.profile().socle;
                    let reps = representations(&c.l, socle, true);
                    when(!reps.is_empty(), || reps.iter().all(|r| r.parts == c.atoms()))
                }),
            ],
        ),
        check(
            "local-pel-chain",
            "a quasi-local principal element weak r-lattice is a chain",
            weak_r,
            vec![dir("", 0, |c, _| {
                when(quasi_local(c) && c.has(P::PrincipalElementLattice), || c.has(P::Chain))
            })],
        ),
        check(
            "chain-all-hollow",
            "in a chain every element is completely strongly hollow",
            |c| c.has(P::Chain) && c.has(P::Noether),
            vec![dir("", 1, |c, x| Some(c.csh(x[0])))],
        ),
        check(
            "hollow-products-chain",
            "in a weak r-lattice every element is a finite product of completely strongly hollow elements iff the lattice is a chain",
            weak_r,
            vec![
                dir("=>", 0, |c, _| {
                    when(c.csh_products().len() == c.l.len(), || c.has(P::Chain))
                }),
                dir("<=", 1, |c, x| {
                    when(c.has(P::Chain), || c.csh_products().contains(&x[0]))
                }),
            ],
        ),
        check(
            "all-hollow-iff-chain",
            "in a weak r-lattice every non-zero element is (completely) strongly hollow iff the lattice is a chain",
            weak_r,
            vec![
                dir("sh=>", 0, |c, _| when(all_nonzero(c, |a| c.sh(a)), || c.has(P::Chain))),
                dir("sh<=", 1, |c, x| {
                    when(c.has(P::Chain) && c.nonzero(x[0]), || c.sh(x[0]))
                }),
                dir("csh=>", 0, |c, _| {
                    when(all_nonzero(c, |a| c.csh(a)), || {
                        c.has(P::Chain) && c.has(P::Noether)
                    })
                }),
                dir("csh<=", 1, |c, x| {
                    when(c.has(P::Chain) && c.nonzero(x[0]), || c.csh(x[0]))
                }),
            ],
        ),
        check(
            "prime-hollow-classification",
            "weak r-lattice: (1) non-zero primes are completely strongly hollow, (2) B4 or a Noether chain that is a UFD or special principal element lattice, (3) non-zero elements are completely strongly hollow, (4) non-zero elements are products of completely strongly hollow elements",
            weak_r,
            vec![
                dir("4=>3", 1, |c, x| {
                    let [_, _, _, c4] = classification(c);
                    when(c4 && c.nonzero(x[0]), || c.csh(x[0]))
                }),
                dir("3=>4", 1, |c, x| {
                    let [_, _, c3, _] = classification(c);
                    when(c3 && c.nonzero(x[0]), || c.csh_products().contains(&x[0]))
                }),
                dir("3=>1", 1, |c, x| {
                    let [_, _, c3, _] = classification(c);
                    when(c3 && c.nonzero(x[0]) && c.is_prime(x[0]), || c.csh(x[0]))
                }),
                dir("2=>3", 1, |c, x| {
                    let [_, c2, _, _] = classification(c);
                    when(c2 && c.nonzero(x[0]), || c.csh(x[0]))
                }),
                dir("1=>2", 0, |c, _| {
                    let [c1, c2, _, _] = classification(c);
                    when(c1, || c2)
                }),
            ],
        ),
        check(
            "maximal-hollow-classification",
            "weak r-lattice: non-zero maximal elements are completely strongly hollow iff B4 or quasi-local with principal maximal element",
            weak_r,
            vec![
                dir("1=>2", 0, |c, _| {
                    let c1 = all_nonzero(c, |a| !c.is_maximal(a) || c.csh(a));
                    when(c1, || maximal_classification(c))
                }),
                dir("2=>1", 1, |c, x| {
                    let a = x[0];
                    when(maximal_classification(c) && c.nonzero(a) && c.is_maximal(a), || {
                        c.csh(a)
                    })
                }),
            ],
        ),
        check(
            "adjunction-transfer",
            "a left adjoint whose right adjoint preserves binary joins sends strongly hollow elements to strongly hollow elements (quotient and prime localization maps)",
            any,
            vec![
                dir("quotient", 1, |c, x| adjunction(&c.l, c.quotient(x[0]))),
                dir("localization", 1, |c, x| {
                    if !c.is_prime(x[0]) {
                        return None;
                    }
                    adjunction(&c.l, c.localization(x[0])?)
                }),
            ],
        ),
        check(
            "nilradical-is-prime-meet",
            "the join of the nilpotent elements equals the meet of the primes",
            any,
            vec![dir("", 0, |c, _| Some(c.profile().nilradical == c.profile().prime_meet))],
        ),
        check(
            "maximal-is-prime",
            "every maximal element is prime",
            any,
            vec![dir("", 1, |c, x| when(c.is_maximal(x[0]), || c.is_prime(x[0])))],
        ),
    ]
}

fn below_jacobson(c: &Ctx, a: ElementId) -> bool {
    let l = &c.l;
    l.elements()
        .filter(|&x| l.lt(x, a))
        .all(|x| l.leq(x, c.jacobson()))
}

fn kappa_cycle(c: &Ctx, a: ElementId, from: usize) -> Option<bool> {
    let l = &c.l;
    if !(c.nonzero(a) && c.weak_join_principal(a) && c.sh(a)) {
        return None;
    }
    let k = c.kappa(a);
    let sq = l.mul(a, a);
    let conds = [
        c.is_prime(k),
        !l.leq(sq, k),
        a == sq,
        !l.leq(a, c.jacobson()),
        c.is_maximal(k) && k == c.l_a(a),
    ];
    when(conds[from], || conds[(from + 1) % 5])
}

/// `(i, (i:m))` when `i` is strongly irreducible and `i < (i:m)`.
fn irreducible_residual(c: &Ctx, i: ElementId) -> Option<(ElementId, ElementId)> {
    let im = c.l.residual(i, max_of(c));
    (is_strongly_irreducible(&c.l, i) && c.l.lt(i, im)).then_some((i, im))
}

fn exists_nonzero_csh(c: &Ctx) -> bool {
    c.l.elements().any(|a| c.nonzero(a) && c.csh(a))
}

fn minimal_prime_witness(c: &Ctx) -> bool {
    let l = &c.l;
    let mins = &c.profile().minimal_primes;
    mins.iter().any(|&p| {
        let others = l.meet_all(mins.iter().copied().filter(|&q| q != p));
        if l.leq(others, p) {
            return false;
        }
        let q = &c.quotient(p).lattice;
        quasi_local_lattice(q) && crate::elements::is_prime(q, q.bottom())
    })
}

fn all_representable(l: &MultLattice) -> bool {
    l.elements().all(|x| is_representable(l, x))
}

fn factors_representable(c: &Ctx) -> bool {
    c.factors()
        .expect("product")
        .lattices
        .iter()
        .all(all_representable)
}

fn maximal_classification(c: &Ctx) -> bool {
    is_b4(c) || (quasi_local(c) && c.principal(max_of(c)))
}
