//! Per-lattice caches shared by every check evaluated on that lattice.

use std::sync::OnceLock;

use crate::constructions::{localize, prime_complement, quotient, Derived, ProductShape};
use crate::elements::{
    self, is_cancellation, is_complemented, is_join_principal, is_neutral, is_principal,
    is_weak_join_principal, is_weak_principal, lattice_profile, LatticePredicate, LatticeProfile,
};
use crate::family::{generate, FamilySpec};
use crate::hollow::{is_completely_strongly_hollow, is_strongly_hollow, kappa};
use crate::lattice::{ElementId, MultLattice};

type Flags = OnceLock<Vec<bool>>;

pub struct Ctx {
    pub l: MultLattice,
    pub spec: Option<FamilySpec>,
    profile: OnceLock<LatticeProfile>,
    sh: Flags,
    csh: Flags,
    kappa: OnceLock<Vec<ElementId>>,
    la: OnceLock<Vec<ElementId>>,
    principal: Flags,
    join_principal: Flags,
    weak_join_principal: Flags,
    weak_principal: Flags,
    neutral: Flags,
    complemented: Flags,
    cancellation: Flags,
    quotients: Vec<OnceLock<Derived>>,
    localizations: Vec<OnceLock<Option<Derived>>>,
    factors: OnceLock<Option<Factors>>,
    csh_products: OnceLock<Vec<ElementId>>,
}

/// Factor lattices of a lattice generated as a product.
pub struct Factors {
    pub lattices: Vec<MultLattice>,
    pub shape: ProductShape,
}

impl Factors {
    pub fn coords(&self, a: ElementId) -> Vec<ElementId> {
        self.shape
            .decode(a.index())
            .into_iter()
            .zip(&self.lattices)
            .map(|(c, f)| f.element(c).expect("coordinate in range"))
            .collect()
    }

    pub fn encode(&self, l: &MultLattice, coords: &[ElementId]) -> ElementId {
        let raw: Vec<usize> = coords.iter().map(|c| c.index()).collect();
        l.element(self.shape.encode(&raw)).expect("product id in range")
    }
}

fn flag(cell: &Flags, l: &MultLattice, f: fn(&MultLattice, ElementId) -> bool, a: ElementId) -> bool {
    cell.get_or_init(|| l.elements().map(|x| f(l, x)).collect())[a.index()]
}

impl Ctx {
    pub fn new(l: MultLattice, spec: Option<FamilySpec>) -> Self {
        let n = l.len();
        Ctx {
            l,
            spec,
            profile: OnceLock::new(),
            sh: OnceLock::new(),
            csh: OnceLock::new(),
            kappa: OnceLock::new(),
            la: OnceLock::new(),
            principal: OnceLock::new(),
            join_principal: OnceLock::new(),
            weak_join_principal: OnceLock::new(),
            weak_principal: OnceLock::new(),
            neutral: OnceLock::new(),
            complemented: OnceLock::new(),
            cancellation: OnceLock::new(),
            quotients: (0..n).map(|_| OnceLock::new()).collect(),
            localizations: (0..n).map(|_| OnceLock::new()).collect(),
            factors: OnceLock::new(),
            csh_products: OnceLock::new(),
        }
    }

    pub fn profile(&self) -> &LatticeProfile {
        self.profile.get_or_init(|| lattice_profile(&self.l))
    }

    pub fn has(&self, p: LatticePredicate) -> bool {
        self.profile().get(p)
    }

    pub fn maximals(&self) -> &[ElementId] {
        &self.profile().max_set
    }

    pub fn jacobson(&self) -> ElementId {
        self.profile().jacobson
    }

    pub fn nonzero(&self, a: ElementId) -> bool {
        !self.l.is_bottom(a)
    }

    /// Definitional pair scan.
    pub fn sh(&self, a: ElementId) -> bool {
        flag(&self.sh, &self.l, is_strongly_hollow, a)
    }

    pub fn csh(&self, a: ElementId) -> bool {
        flag(&self.csh, &self.l, is_completely_strongly_hollow, a)
    }

    pub fn kappa(&self, a: ElementId) -> ElementId {
        self.kappa
            .get_or_init(|| self.l.elements().map(|x| kappa(&self.l, x)).collect())[a.index()]
    }

    pub fn l_a(&self, a: ElementId) -> ElementId {
        self.la.get_or_init(|| {
            self.l
                .elements()
                .map(|x| self.l.residual(self.kappa(x), x))
                .collect()
        })[a.index()]
    }

    pub fn principal(&self, a: ElementId) -> bool {
        flag(&self.principal, &self.l, is_principal, a)
    }

    pub fn join_principal(&self, a: ElementId) -> bool {
        flag(&self.join_principal, &self.l, is_join_principal, a)
    }

    pub fn weak_join_principal(&self, a: ElementId) -> bool {
        flag(&self.weak_join_principal, &self.l, is_weak_join_principal, a)
    }

    pub fn weak_principal(&self, a: ElementId) -> bool {
        flag(&self.weak_principal, &self.l, is_weak_principal, a)
    }

    pub fn neutral(&self, a: ElementId) -> bool {
        flag(&self.neutral, &self.l, is_neutral, a)
    }

    pub fn complemented(&self, a: ElementId) -> bool {
        flag(&self.complemented, &self.l, is_complemented, a)
    }

    pub fn cancellation(&self, a: ElementId) -> bool {
        flag(&self.cancellation, &self.l, is_cancellation, a)
    }

    pub fn is_maximal(&self, a: ElementId) -> bool {
        self.maximals().contains(&a)
    }

    pub fn is_prime(&self, a: ElementId) -> bool {
        self.profile().spec.contains(&a)
    }

    pub fn quotient(&self, i: ElementId) -> &Derived {
        self.quotients[i.index()]
            .get_or_init(|| quotient(&self.l, i).expect("quotients always exist"))
    }

    /// Localization at the complement of `q`, when that set is
    /// multiplicatively closed and contains top.
    pub fn localization(&self, q: ElementId) -> Option<&Derived> {
        self.localizations[q.index()]
            .get_or_init(|| localize(&self.l, &prime_complement(&self.l, q)).ok())
            .as_ref()
    }

    pub fn factors(&self) -> Option<&Factors> {
        self.factors
            .get_or_init(|| {
                let Some(FamilySpec::Product(specs)) = &self.spec else {
                    return None;
                };
                let lattices = specs.iter().map(generate).collect::<Result<Vec<_>, _>>().ok()?;
                let refs: Vec<&MultLattice> = lattices.iter().collect();
                let shape = ProductShape::of(&refs);
                Some(Factors { lattices, shape })
            })
            .as_ref()
    }

    /// `x` is comparable to every element.
    pub fn comparable_to_all(&self, x: ElementId) -> bool {
        self.l
            .elements()
            .all(|y| self.l.leq(x, y) || self.l.leq(y, x))
    }

    /// Maximal elements of `{x | x < a}`.
    pub fn lower_covers(&self, a: ElementId) -> Vec<ElementId> {
        let below: Vec<ElementId> = self.l.elements().filter(|&x| self.l.lt(x, a)).collect();
        self.l.maximal_of(&below)
    }

    /// Non-empty finite products of completely strongly hollow elements.
    pub fn csh_products(&self) -> &[ElementId] {
        self.csh_products.get_or_init(|| {
            let gens: Vec<ElementId> = self.l.elements().filter(|&a| self.csh(a)).collect();
            elements::products_of(&self.l, &gens, false)
        })
    }

    pub fn atoms(&self) -> &[ElementId] {
        &self.profile().atoms
    }

    pub fn is_atom(&self, a: ElementId) -> bool {
        elements::is_minimal(&self.l, a)
    }
}
