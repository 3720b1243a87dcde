//! Element-level and lattice-level predicates.
//!
//! Every predicate is evaluated by exhaustive quantification over the
//! lattice, straight from its definition. Nothing here relies on a
//! structural theorem to shortcut a definition.
//!
//! Conventions worth knowing:
//! * "minimal" means an atom: minimal among the non-zero elements.
//! * Cancellation is multiplicative: `a·b = a·c ⇒ b = c`.
//! * Every element of a finite lattice is compact, so compactness
//!   hypotheses hold vacuously and the Noether flag is constant.
//! * The empty product is `top` when building products of primes (see
//!   [`ProfileOptions`]).

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use crate::lattice::{ElementId, MultLattice};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementPredicate {
    Prime,
    Maximal,
    Minimal,
    Nilpotent,
    Idempotent,
    Complemented,
    Neutral,
    Uniform,
    MeetPrincipal,
    JoinPrincipal,
    Principal,
    WeakMeetPrincipal,
    WeakJoinPrincipal,
    WeakPrincipal,
    Cancellation,
    StronglyIrreducible,
    CompletelyStronglyIrreducible,
    PrimitiveIdempotent,
}

impl ElementPredicate {
    pub const ALL: [ElementPredicate; 18] = [
        ElementPredicate::Prime,
        ElementPredicate::Maximal,
        ElementPredicate::Minimal,
        ElementPredicate::Nilpotent,
        ElementPredicate::Idempotent,
        ElementPredicate::Complemented,
        ElementPredicate::Neutral,
        ElementPredicate::Uniform,
        ElementPredicate::MeetPrincipal,
        ElementPredicate::JoinPrincipal,
        ElementPredicate::Principal,
        ElementPredicate::WeakMeetPrincipal,
        ElementPredicate::WeakJoinPrincipal,
        ElementPredicate::WeakPrincipal,
        ElementPredicate::Cancellation,
        ElementPredicate::StronglyIrreducible,
        ElementPredicate::CompletelyStronglyIrreducible,
        ElementPredicate::PrimitiveIdempotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementPredicate::Prime => "prime",
            ElementPredicate::Maximal => "maximal",
            ElementPredicate::Minimal => "minimal",
            ElementPredicate::Nilpotent => "nilpotent",
            ElementPredicate::Idempotent => "idempotent",
            ElementPredicate::Complemented => "complemented",
            ElementPredicate::Neutral => "neutral",
            ElementPredicate::Uniform => "uniform",
            ElementPredicate::MeetPrincipal => "meet_principal",
            ElementPredicate::JoinPrincipal => "join_principal",
            ElementPredicate::Principal => "principal",
            ElementPredicate::WeakMeetPrincipal => "weak_meet_principal",
            ElementPredicate::WeakJoinPrincipal => "weak_join_principal",
            ElementPredicate::WeakPrincipal => "weak_principal",
            ElementPredicate::Cancellation => "cancellation",
            ElementPredicate::StronglyIrreducible => "strongly_irreducible",
            ElementPredicate::CompletelyStronglyIrreducible => "completely_strongly_irreducible",
            ElementPredicate::PrimitiveIdempotent => "primitive_idempotent",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == name)
    }

    pub fn eval(self, l: &MultLattice, a: ElementId) -> bool {
        match self {
            ElementPredicate::Prime => is_prime(l, a),
            ElementPredicate::Maximal => is_maximal(l, a),
            ElementPredicate::Minimal => is_minimal(l, a),
            ElementPredicate::Nilpotent => is_nilpotent(l, a),
            ElementPredicate::Idempotent => is_idempotent(l, a),
            ElementPredicate::Complemented => is_complemented(l, a),
            ElementPredicate::Neutral => is_neutral(l, a),
            ElementPredicate::Uniform => is_uniform(l, a),
            ElementPredicate::MeetPrincipal => is_meet_principal(l, a),
            ElementPredicate::JoinPrincipal => is_join_principal(l, a),
            ElementPredicate::Principal => is_principal(l, a),
            ElementPredicate::WeakMeetPrincipal => is_weak_meet_principal(l, a),
            ElementPredicate::WeakJoinPrincipal => is_weak_join_principal(l, a),
            ElementPredicate::WeakPrincipal => is_weak_principal(l, a),
            ElementPredicate::Cancellation => is_cancellation(l, a),
            ElementPredicate::StronglyIrreducible => is_strongly_irreducible(l, a),
            ElementPredicate::CompletelyStronglyIrreducible => {
                is_completely_strongly_irreducible(l, a)
            }
            ElementPredicate::PrimitiveIdempotent => is_primitive_idempotent(l, a),
        }
    }
}

impl fmt::Display for ElementPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `p < 1` and `x·y ≤ p ⇒ x ≤ p or y ≤ p`.
pub fn is_prime(l: &MultLattice, p: ElementId) -> bool {
    if l.is_top(p) {
        return false;
    }
    l.elements().all(|x| {
        l.leq(x, p)
            || l.elements()
                .all(|y| l.leq(y, p) || !l.leq(l.mul(x, y), p))
    })
}

/// A proper element with nothing strictly between it and top.
pub fn is_maximal(l: &MultLattice, m: ElementId) -> bool {
    !l.is_top(m) && !l.elements().any(|x| l.lt(m, x) && !l.is_top(x))
}

/// An atom.
pub fn is_minimal(l: &MultLattice, a: ElementId) -> bool {
    !l.is_bottom(a) && !l.elements().any(|x| !l.is_bottom(x) && l.lt(x, a))
}

pub fn is_nilpotent(l: &MultLattice, a: ElementId) -> bool {
    let mut p = a;
    for _ in 0..=l.len() {
        if l.is_bottom(p) {
            return true;
        }
        p = l.mul(p, a);
    }
    false
}

pub fn is_idempotent(l: &MultLattice, a: ElementId) -> bool {
    l.mul(a, a) == a
}

/// Every `c` with `a ∨ c = 1` and `a ∧ c = 0`.
pub fn complements(l: &MultLattice, a: ElementId) -> Vec<ElementId> {
    l.elements()
        .filter(|&c| l.is_top(l.join(a, c)) && l.is_bottom(l.meet(a, c)))
        .collect()
}

pub fn is_complemented(l: &MultLattice, a: ElementId) -> bool {
    !complements(l, a).is_empty()
}

/// The median identity holds with every pair `x, y`.
pub fn is_neutral(l: &MultLattice, a: ElementId) -> bool {
    l.elements().all(|x| {
        l.elements().all(|y| {
            let lhs = l.join(l.join(l.meet(a, x), l.meet(x, y)), l.meet(y, a));
            let rhs = l.meet(l.meet(l.join(a, x), l.join(x, y)), l.join(y, a));
            lhs == rhs
        })
    })
}

/// Any two non-zero elements below `a` meet non-trivially.
pub fn is_uniform(l: &MultLattice, a: ElementId) -> bool {
    let below: Vec<ElementId> = l
        .elements()
        .filter(|&x| !l.is_bottom(x) && l.leq(x, a))
        .collect();
    below
        .iter()
        .all(|&x| below.iter().all(|&y| !l.is_bottom(l.meet(x, y))))
}

/// `x ∧ y·e = ((x : e) ∧ y)·e` for all `x, y`.
pub fn is_meet_principal(l: &MultLattice, e: ElementId) -> bool {
    l.elements().all(|x| {
        let xe = l.residual(x, e);
        l.elements()
            .all(|y| l.meet(x, l.mul(y, e)) == l.mul(l.meet(xe, y), e))
    })
}

/// `x ∨ (y : e) = ((x·e ∨ y) : e)` for all `x, y`.
pub fn is_join_principal(l: &MultLattice, e: ElementId) -> bool {
    l.elements().all(|x| {
        let xe = l.mul(x, e);
        l.elements()
            .all(|y| l.join(x, l.residual(y, e)) == l.residual(l.join(xe, y), e))
    })
}

pub fn is_principal(l: &MultLattice, e: ElementId) -> bool {
    is_meet_principal(l, e) && is_join_principal(l, e)
}

/// `e ∧ x = (x : e)·e` for all `x`: the meet-principal identity with the
/// second argument fixed at top.
pub fn is_weak_meet_principal(l: &MultLattice, e: ElementId) -> bool {
    l.elements()
        .all(|x| l.meet(e, x) == l.mul(l.residual(x, e), e))
}

/// `x ∨ (0 : e) = (x·e : e)` for all `x`: the join-principal identity with
/// the second argument fixed at bottom.
pub fn is_weak_join_principal(l: &MultLattice, e: ElementId) -> bool {
    let ann = l.residual(l.bottom(), e);
    l.elements()
        .all(|x| l.join(x, ann) == l.residual(l.mul(x, e), e))
}

pub fn is_weak_principal(l: &MultLattice, e: ElementId) -> bool {
    is_weak_meet_principal(l, e) && is_weak_join_principal(l, e)
}

/// `a·b = a·c ⇒ b = c`.
pub fn is_cancellation(l: &MultLattice, a: ElementId) -> bool {
    let mut seen = vec![false; l.len()];
    for b in l.elements() {
        let ab = l.mul(a, b).index();
        if seen[ab] {
            return false;
        }
        seen[ab] = true;
    }
    true
}

/// `x ∧ y ≤ i ⇒ x ≤ i or y ≤ i`.
pub fn is_strongly_irreducible(l: &MultLattice, i: ElementId) -> bool {
    l.elements().all(|x| {
        l.leq(x, i)
            || l.elements()
                .all(|y| l.leq(y, i) || !l.leq(l.meet(x, y), i))
    })
}

/// For every non-empty family with meet below `i`, some member is below `i`.
/// The family of all elements not below `i` is the hardest case, so it is
/// enough to test its meet.
pub fn is_completely_strongly_irreducible(l: &MultLattice, i: ElementId) -> bool {
    let outside: Vec<ElementId> = l.elements().filter(|&r| !l.leq(r, i)).collect();
    outside.is_empty() || !l.leq(l.meet_all(outside), i)
}

/// A non-zero idempotent that is not the join of two non-zero orthogonal
/// idempotents.
pub fn is_primitive_idempotent(l: &MultLattice, e: ElementId) -> bool {
    if l.is_bottom(e) || !is_idempotent(l, e) {
        return false;
    }
    let idem: Vec<ElementId> = l
        .elements()
        .filter(|&x| !l.is_bottom(x) && is_idempotent(l, x) && l.leq(x, e))
        .collect();
    !idem.iter().any(|&b| {
        idem.iter()
            .any(|&c| l.is_bottom(l.mul(b, c)) && l.join(b, c) == e)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementProfile {
    pub element: ElementId,
    pub flags: BTreeMap<ElementPredicate, bool>,
    pub complements: Vec<ElementId>,
}

impl ElementProfile {
    pub fn get(&self, p: ElementPredicate) -> bool {
        self.flags[&p]
    }
}

pub fn element_profile(l: &MultLattice, a: ElementId) -> ElementProfile {
    let flags = ElementPredicate::ALL
        .iter()
        .map(|&p| (p, p.eval(l, a)))
        .collect();
    ElementProfile {
        element: a,
        flags,
        complements: complements(l, a),
    }
}

// ---------------------------------------------------------------------------
// lattice level

pub fn maximal_elements(l: &MultLattice) -> Vec<ElementId> {
    l.elements().filter(|&m| is_maximal(l, m)).collect()
}

pub fn prime_elements(l: &MultLattice) -> Vec<ElementId> {
    l.elements().filter(|&p| is_prime(l, p)).collect()
}

pub fn minimal_primes(l: &MultLattice) -> Vec<ElementId> {
    l.minimal_of(&prime_elements(l))
}

pub fn atoms(l: &MultLattice) -> Vec<ElementId> {
    l.elements().filter(|&a| is_minimal(l, a)).collect()
}

/// Meet of the maximal elements (top when there are none).
pub fn jacobson(l: &MultLattice) -> ElementId {
    l.meet_all(maximal_elements(l))
}

/// Join of the atoms.
pub fn socle(l: &MultLattice) -> ElementId {
    l.join_all(atoms(l))
}

/// True when every element is the join of the members of `gens` below it.
pub fn generated_by(l: &MultLattice, gens: &[ElementId]) -> bool {
    l.elements()
        .all(|x| l.join_all(gens.iter().copied().filter(|&g| l.leq(g, x))) == x)
}

/// All products of members of `gens`, optionally counting the empty product
/// (top). Computed as a reachable-set fixpoint, so it terminates after at
/// most `n` rounds.
pub fn products_of(l: &MultLattice, gens: &[ElementId], include_empty: bool) -> Vec<ElementId> {
    let mut reach = vec![false; l.len()];
    let mut frontier: Vec<ElementId> = Vec::new();
    let add = |x: ElementId, reach: &mut Vec<bool>, frontier: &mut Vec<ElementId>| {
        if !reach[x.index()] {
            reach[x.index()] = true;
            frontier.push(x);
        }
    };
    if include_empty {
        add(l.top(), &mut reach, &mut frontier);
    }
    for &g in gens {
        add(g, &mut reach, &mut frontier);
    }
    while let Some(x) = frontier.pop() {
        for &g in gens {
            add(l.mul(x, g), &mut reach, &mut frontier);
        }
    }
    l.elements().filter(|x| reach[x.index()]).collect()
}

/// Meet distributes over join everywhere.
pub fn is_distributive(l: &MultLattice) -> bool {
    l.elements().all(|a| {
        l.elements().all(|b| {
            l.elements()
                .all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c)))
        })
    })
}

/// Every prime lies below exactly one maximal element.
pub fn is_gelfand(l: &MultLattice) -> bool {
    let maxes = maximal_elements(l);
    prime_elements(l)
        .into_iter()
        .all(|p| maxes.iter().filter(|&&m| l.leq(p, m)).count() == 1)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticePredicate {
    QuasiLocal,
    SemiLocal,
    SemiSimple,
    Reduced,
    Domain,
    Gelfand,
    Prufer,
    PrincipalElementLattice,
    PrincipallyGenerated,
    WeakMeetPrincipallyGenerated,
    WeakRLattice,
    Chain,
    Noether,
    Zpi,
    PiLattice,
    Ufd,
    SpecialPel,
    I0,
    Boolean,
}

impl LatticePredicate {
    pub const ALL: [LatticePredicate; 19] = [
        LatticePredicate::QuasiLocal,
        LatticePredicate::SemiLocal,
        LatticePredicate::SemiSimple,
        LatticePredicate::Reduced,
        LatticePredicate::Domain,
        LatticePredicate::Gelfand,
        LatticePredicate::Prufer,
        LatticePredicate::PrincipalElementLattice,
        LatticePredicate::PrincipallyGenerated,
        LatticePredicate::WeakMeetPrincipallyGenerated,
        LatticePredicate::WeakRLattice,
        LatticePredicate::Chain,
        LatticePredicate::Noether,
        LatticePredicate::Zpi,
        LatticePredicate::PiLattice,
        LatticePredicate::Ufd,
        LatticePredicate::SpecialPel,
        LatticePredicate::I0,
        LatticePredicate::Boolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LatticePredicate::QuasiLocal => "quasi_local",
            LatticePredicate::SemiLocal => "semi_local",
            LatticePredicate::SemiSimple => "semi_simple",
            LatticePredicate::Reduced => "reduced",
            LatticePredicate::Domain => "domain",
            LatticePredicate::Gelfand => "gelfand",
            LatticePredicate::Prufer => "prufer",
            LatticePredicate::PrincipalElementLattice => "principal_element_lattice",
            LatticePredicate::PrincipallyGenerated => "principally_generated",
            LatticePredicate::WeakMeetPrincipallyGenerated => "weak_meet_principally_generated",
            LatticePredicate::WeakRLattice => "weak_r_lattice",
            LatticePredicate::Chain => "chain",
            LatticePredicate::Noether => "noether",
            LatticePredicate::Zpi => "zpi",
            LatticePredicate::PiLattice => "pi_lattice",
            LatticePredicate::Ufd => "ufd",
            LatticePredicate::SpecialPel => "special_pel",
            LatticePredicate::I0 => "i0",
            LatticePredicate::Boolean => "boolean",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == name)
    }
}

impl fmt::Display for LatticePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Knobs for the product-of-primes flags.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Count top as the empty product (of primes, of principal primes, and
    /// as the zeroth power of the maximal element).
    pub empty_product_is_top: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            empty_product_is_top: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeProfile {
    pub flags: BTreeMap<LatticePredicate, bool>,
    pub jacobson: ElementId,
    pub nilradical: ElementId,
    /// Meet of all primes, computed independently of `nilradical`.
    pub prime_meet: ElementId,
    pub socle: ElementId,
    pub spec: Vec<ElementId>,
    pub max_set: Vec<ElementId>,
    pub minimal_primes: Vec<ElementId>,
    pub atoms: Vec<ElementId>,
    pub principal: Vec<ElementId>,
}

impl LatticeProfile {
    pub fn get(&self, p: LatticePredicate) -> bool {
        self.flags[&p]
    }

    pub fn maximal_count(&self) -> usize {
        self.max_set.len()
    }
}

pub fn lattice_profile(l: &MultLattice) -> LatticeProfile {
    lattice_profile_with(l, ProfileOptions::default())
}

pub fn lattice_profile_with(l: &MultLattice, opts: ProfileOptions) -> LatticeProfile {
    use LatticePredicate as P;

    let spec = prime_elements(l);
    let max_set = maximal_elements(l);
    let atoms = atoms(l);
    let principal: Vec<ElementId> = l.elements().filter(|&e| is_principal(l, e)).collect();
    let weak_meet: Vec<ElementId> = l
        .elements()
        .filter(|&e| is_weak_meet_principal(l, e))
        .collect();
    let jac = l.meet_all(max_set.iter().copied());
    let nil = l.nilradical();
    let prime_meet = l.meet_all(spec.iter().copied());
    let empty = opts.empty_product_is_top;

    let quasi_local = max_set.len() == 1;
    let pel = principal.len() == l.len();
    let principally_generated = generated_by(l, &principal);
    let domain = spec.contains(&l.bottom());
    let prime_products = products_of(l, &spec, empty);
    let principal_primes: Vec<ElementId> = spec
        .iter()
        .copied()
        .filter(|p| principal.contains(p))
        .collect();
    let principal_prime_products = products_of(l, &principal_primes, empty);
    let special_pel = pel
        && quasi_local
        && generated_by(l, &products_of(l, &max_set, empty));
    let i0 = l.elements().filter(|&x| !l.leq(x, jac)).all(|x| {
        l.elements()
            .any(|c| !l.is_bottom(c) && l.leq(c, x) && is_complemented(l, c))
    });

    let mut flags = BTreeMap::new();
    flags.insert(P::QuasiLocal, quasi_local);
    flags.insert(P::SemiLocal, true);
    flags.insert(P::SemiSimple, l.is_bottom(jac));
    flags.insert(P::Reduced, l.is_bottom(nil));
    flags.insert(P::Domain, domain);
    flags.insert(P::Gelfand, is_gelfand(l));
    flags.insert(P::Prufer, pel);
    flags.insert(P::PrincipalElementLattice, pel);
    flags.insert(P::PrincipallyGenerated, principally_generated);
    flags.insert(P::WeakMeetPrincipallyGenerated, generated_by(l, &weak_meet));
    flags.insert(P::WeakRLattice, principally_generated);
    flags.insert(P::Chain, l.is_chain());
    flags.insert(P::Noether, true);
    flags.insert(P::Zpi, prime_products.len() == l.len());
    flags.insert(P::PiLattice, generated_by(l, &prime_products));
    flags.insert(
        P::Ufd,
        principally_generated
            && domain
            && principal
                .iter()
                .all(|e| principal_prime_products.contains(e)),
    );
    flags.insert(P::SpecialPel, special_pel);
    flags.insert(P::I0, i0);
    flags.insert(
        P::Boolean,
        is_distributive(l) && l.elements().all(|a| is_complemented(l, a)),
    );

    LatticeProfile {
        flags,
        jacobson: jac,
        nilradical: nil,
        prime_meet,
        socle: l.join_all(atoms.iter().copied()),
        minimal_primes: l.minimal_of(&spec),
        spec,
        max_set,
        atoms,
        principal,
    }
}

fn names(l: &MultLattice, set: &[ElementId]) -> String {
    let v: Vec<&str> = set.iter().map(|&x| l.element_name(x)).collect();
    format!("{{{}}}", v.join(","))
}

/// Deterministic key-sorted rendering, one entry per line.
pub fn render_lattice_profile(l: &MultLattice, p: &LatticeProfile) -> String {
    let mut rows: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in &p.flags {
        rows.insert(k.name().to_string(), v.to_string());
    }
    rows.insert("atoms".into(), names(l, &p.atoms));
    rows.insert("jacobson".into(), l.element_name(p.jacobson).into());
    rows.insert("maximal".into(), names(l, &p.max_set));
    rows.insert("maximal_count".into(), p.max_set.len().to_string());
    rows.insert("minimal_primes".into(), names(l, &p.minimal_primes));
    rows.insert("nilradical".into(), l.element_name(p.nilradical).into());
    rows.insert("principal".into(), names(l, &p.principal));
    rows.insert("socle".into(), l.element_name(p.socle).into());
    rows.insert("spec".into(), names(l, &p.spec));
    let mut out = format!("lattice {}\n", l.name());
    for (k, v) in rows {
        let _ = writeln!(out, "{k} = {v}");
    }
    out
}

pub fn render_element_profile(l: &MultLattice, p: &ElementProfile) -> String {
    let mut rows: BTreeMap<&str, String> = BTreeMap::new();
    for (k, v) in &p.flags {
        rows.insert(k.name(), v.to_string());
    }
    rows.insert("complements", names(l, &p.complements));
    let mut out = format!("element {}\n", l.element_name(p.element));
    for (k, v) in rows {
        let _ = writeln!(out, "  {k} = {v}");
    }
    out
}
