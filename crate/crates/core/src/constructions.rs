//! Derived lattices: quotients, localizations and direct products, plus the
//! adjunction transfer check.
//!
//! Quotients live on the interval `[i, 1]` with `a∘b = (a·b) ∨ i`.
//! Localizations live on the saturated elements, the fixed points of
//! `a ↦ a_S = ⋁{x | x·s ≤ a for some s ∈ S}`, with the inherited order,
//! meets from the ambient lattice and multiplication `(a·b)_S`.

use thiserror::Error;

use crate::check::CheckStatus;
use crate::elements::is_prime;
use crate::hollow::is_strongly_hollow;
use crate::lattice::{ElementId, LatticeError, MultLattice, RawTables, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("multiplicative set does not contain top")]
    MissingTop,
    #[error("multiplicative set is not closed: {a}·{b} = {product} is missing")]
    NotClosed {
        a: usize,
        b: usize,
        product: usize,
    },
    #[error("element {0} is not prime")]
    NotPrime(usize),
    #[error("saturation is not extensive at {0}")]
    NotExtensive(usize),
    #[error("saturation is not monotone at ({0}, {1})")]
    NotMonotone(usize, usize),
    #[error("saturation is not idempotent at {0}")]
    NotIdempotent(usize),
    #[error("saturated elements are not closed under meet at ({0}, {1})")]
    NotMeetClosed(usize, usize),
    #[error("a product needs at least one factor")]
    NoFactors,
    #[error("product would have {0} elements, above the supported maximum")]
    TooLarge(usize),
    #[error("maps do not form an adjunction: f({x}) ≤ {y} disagrees with {x} ≤ u({y})")]
    NotAdjunction { x: usize, y: usize },
    #[error("map length {len} does not match lattice size {n}")]
    MapShape { len: usize, n: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Element-wise map between two lattices, held as a table indexed by the
/// source id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementMap {
    forward: Vec<ElementId>,
}

impl ElementMap {
    pub fn new(forward: Vec<ElementId>) -> Self {
        ElementMap { forward }
    }

    pub fn identity(l: &MultLattice) -> Self {
        ElementMap {
            forward: l.elements().collect(),
        }
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.forward[x.index()]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn table(&self) -> &[ElementId] {
        &self.forward
    }

    pub fn is_monotone(&self, src: &MultLattice, tgt: &MultLattice) -> bool {
        src.elements().all(|a| {
            src.elements()
                .all(|b| !src.leq(a, b) || tgt.leq(self.apply(a), self.apply(b)))
        })
    }

    /// Binary joins and the empty join are preserved, hence all joins.
    pub fn preserves_joins(&self, src: &MultLattice, tgt: &MultLattice) -> bool {
        self.apply(src.bottom()) == tgt.bottom()
            && src.elements().all(|a| {
                src.elements().all(|b| {
                    self.apply(src.join(a, b)) == tgt.join(self.apply(a), self.apply(b))
                })
            })
    }

    /// Binary joins only; the empty join is not required.
    pub fn preserves_binary_joins(&self, src: &MultLattice, tgt: &MultLattice) -> bool {
        src.elements().all(|a| {
            src.elements()
                .all(|b| self.apply(src.join(a, b)) == tgt.join(self.apply(a), self.apply(b)))
        })
    }
}

/// A derived lattice with its structure map from the base and the inclusion
/// of its carrier back into the base.
#[derive(Debug, Clone)]
pub struct Derived {
    pub lattice: MultLattice,
    /// base → derived
    pub map: ElementMap,
    /// derived → base
    pub embed: ElementMap,
}

fn sublattice_on(
    l: &MultLattice,
    name: String,
    carrier: &[ElementId],
    mul: impl Fn(ElementId, ElementId) -> ElementId,
) -> Result<MultLattice, ConstructionError> {
    let k = carrier.len();
    let mut pos = vec![usize::MAX; l.len()];
    for (i, &c) in carrier.iter().enumerate() {
        pos[c.index()] = i;
    }
    let leq = (0..k)
        .map(|a| (0..k).map(|b| l.leq(carrier[a], carrier[b])).collect())
        .collect();
    let table = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| pos[mul(carrier[a], carrier[b]).index()])
                .collect()
        })
        .collect();
    let names = carrier
        .iter()
        .map(|&c| l.element_name(c).to_string())
        .collect();
    Ok(MultLattice::from_order(name, names, leq, table)?)
}

/// `L/i` on `[i, 1]`.
pub fn quotient(l: &MultLattice, i: ElementId) -> Result<Derived, ConstructionError> {
    let carrier: Vec<ElementId> = l.up_set(i);
    let name = format!("{}/{}", l.name(), l.element_name(i));
    let q = sublattice_on(l, name, &carrier, |a, b| l.join(l.mul(a, b), i))?;
    let mut pos = vec![0usize; l.len()];
    for (k, &c) in carrier.iter().enumerate() {
        pos[c.index()] = k;
    }
    let map = l
        .elements()
        .map(|a| q.element(pos[l.join(a, i).index()]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derived {
        map: ElementMap::new(map),
        embed: ElementMap::new(carrier),
        lattice: q,
    })
}

/// `a_S` for every element, in id order.
pub fn saturation(l: &MultLattice, s: &[ElementId]) -> Vec<ElementId> {
    l.elements()
        .map(|a| {
            l.join_all(
                l.elements()
                    .filter(|&x| s.iter().any(|&t| l.leq(l.mul(x, t), a))),
            )
        })
        .collect()
}

/// Checks that `sat` is a closure operator and that its fixed points are
/// closed under meets.
pub fn check_saturation(l: &MultLattice, sat: &[ElementId]) -> Result<(), ConstructionError> {
    for a in l.elements() {
        let sa = sat[a.index()];
        if !l.leq(a, sa) {
            return Err(ConstructionError::NotExtensive(a.index()));
        }
        if sat[sa.index()] != sa {
            return Err(ConstructionError::NotIdempotent(a.index()));
        }
        for b in l.elements() {
            if l.leq(a, b) && !l.leq(sa, sat[b.index()]) {
                return Err(ConstructionError::NotMonotone(a.index(), b.index()));
            }
        }
    }
    for a in l.elements().filter(|&a| sat[a.index()] == a) {
        for b in l.elements().filter(|&b| sat[b.index()] == b) {
            let m = l.meet(a, b);
            if sat[m.index()] != m {
                return Err(ConstructionError::NotMeetClosed(a.index(), b.index()));
            }
        }
    }
    Ok(())
}

fn localize_named(
    l: &MultLattice,
    s: &[ElementId],
    name: String,
) -> Result<Derived, ConstructionError> {
    if !s.contains(&l.top()) {
        return Err(ConstructionError::MissingTop);
    }
    for &a in s {
        for &b in s {
            let p = l.mul(a, b);
            if !s.contains(&p) {
                return Err(ConstructionError::NotClosed {
                    a: a.index(),
                    b: b.index(),
                    product: p.index(),
                });
            }
        }
    }
    let sat = saturation(l, s);
    check_saturation(l, &sat)?;
    let carrier: Vec<ElementId> = l.elements().filter(|&a| sat[a.index()] == a).collect();
    let q = sublattice_on(l, name, &carrier, |a, b| sat[l.mul(a, b).index()])?;
    let mut pos = vec![0usize; l.len()];
    for (k, &c) in carrier.iter().enumerate() {
        pos[c.index()] = k;
    }
    let map = l
        .elements()
        .map(|a| q.element(pos[sat[a.index()].index()]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derived {
        map: ElementMap::new(map),
        embed: ElementMap::new(carrier),
        lattice: q,
    })
}

/// `L_S` for a multiplicatively closed `S` containing top.
pub fn localize(l: &MultLattice, s: &[ElementId]) -> Result<Derived, ConstructionError> {
    let mut s = s.to_vec();
    s.sort();
    s.dedup();
    let names: Vec<&str> = s.iter().map(|&x| l.element_name(x)).collect();
    let name = format!("{}_{{{}}}", l.name(), names.join(","));
    localize_named(l, &s, name)
}

/// `{s | s ≰ q}` for a prime `q`.
pub fn prime_complement(l: &MultLattice, q: ElementId) -> Vec<ElementId> {
    l.elements().filter(|&s| !l.leq(s, q)).collect()
}

/// `L_q`, localizing at the complement of a prime `q`.
pub fn localize_at_prime(l: &MultLattice, q: ElementId) -> Result<Derived, ConstructionError> {
    if !is_prime(l, q) {
        return Err(ConstructionError::NotPrime(q.index()));
    }
    let name = format!("{}_{}", l.name(), l.element_name(q));
    localize_named(l, &prime_complement(l, q), name)
}

/// Mixed-radix addressing for product elements; the first factor is the
/// most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductShape {
    pub sizes: Vec<usize>,
}

impl ProductShape {
    pub fn of(factors: &[&MultLattice]) -> Self {
        ProductShape {
            sizes: factors.iter().map(|f| f.len()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&c, &s)| acc * s + c)
    }

    pub fn decode(&self, mut id: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &s) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = id % s;
            id /= s;
        }
        out
    }
}

/// `L₁ × … × L_k` with componentwise structure.
pub fn product(factors: &[&MultLattice]) -> Result<MultLattice, ConstructionError> {
    if factors.is_empty() {
        return Err(ConstructionError::NoFactors);
    }
    let shape = ProductShape::of(factors);
    let total = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
        .unwrap_or(usize::MAX);
    if total > MAX_ELEMENTS {
        return Err(ConstructionError::TooLarge(total));
    }
    let coords: Vec<Vec<usize>> = (0..total).map(|i| shape.decode(i)).collect();
    let ids = |f: &MultLattice, c: usize| f.element(c).expect("coordinate in range");
    let combine = |op: &dyn Fn(&MultLattice, ElementId, ElementId) -> ElementId| {
        (0..total)
            .map(|a| {
                (0..total)
                    .map(|b| {
                        let c: Vec<usize> = factors
                            .iter()
                            .enumerate()
                            .map(|(k, f)| {
                                op(f, ids(f, coords[a][k]), ids(f, coords[b][k])).index()
                            })
                            .collect();
                        shape.encode(&c)
                    })
                    .collect()
            })
            .collect::<Vec<Vec<usize>>>()
    };
    let leq = (0..total)
        .map(|a| {
            (0..total)
                .map(|b| {
                    factors
                        .iter()
                        .enumerate()
                        .all(|(k, f)| f.leq(ids(f, coords[a][k]), ids(f, coords[b][k])))
                })
                .collect()
        })
        .collect();
    let names = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = factors
                .iter()
                .enumerate()
                .map(|(k, f)| f.element_name(ids(f, c[k])))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let bottom: Vec<usize> = factors.iter().map(|f| f.bottom().index()).collect();
    let top: Vec<usize> = factors.iter().map(|f| f.top().index()).collect();
    let fnames: Vec<&str> = factors.iter().map(|f| f.name()).collect();
    Ok(MultLattice::from_raw(RawTables {
        name: format!("product({})", fnames.join(",")),
        names,
        leq,
        join: combine(&|f, a, b| f.join(a, b)),
        meet: combine(&|f, a, b| f.meet(a, b)),
        mul: combine(&|f, a, b| f.mul(a, b)),
        bottom: shape.encode(&bottom),
        top: shape.encode(&top),
    })?)
}

/// For `f ⊣ u` with `u` preserving binary joins, `f` sends strongly hollow
/// elements to strongly hollow elements.
///
/// Returns an error when `(f, u)` is not an adjunction, and
/// [`CheckStatus::Unmet`] when `u` does not preserve binary joins.
pub fn check_adjunction_transfer(
    src: &MultLattice,
    tgt: &MultLattice,
    f: &ElementMap,
    u: &ElementMap,
) -> Result<CheckStatus, ConstructionError> {
    if f.len() != src.len() {
        return Err(ConstructionError::MapShape {
            len: f.len(),
            n: src.len(),
        });
    }
    if u.len() != tgt.len() {
        return Err(ConstructionError::MapShape {
            len: u.len(),
            n: tgt.len(),
        });
    }
    for x in src.elements() {
        for y in tgt.elements() {
            if tgt.leq(f.apply(x), y) != src.leq(x, u.apply(y)) {
                return Err(ConstructionError::NotAdjunction {
                    x: x.index(),
                    y: y.index(),
                });
            }
        }
    }
    if !u.preserves_binary_joins(tgt, src) {
        return Ok(CheckStatus::Unmet);
    }
    for x in src.elements() {
        if is_strongly_hollow(src, x) && !is_strongly_hollow(tgt, f.apply(x)) {
            return Ok(CheckStatus::Violated(vec![x]));
        }
    }
    Ok(CheckStatus::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::validate;
    use crate::lattice::order_from_covers;

    fn chain(n: usize) -> MultLattice {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        MultLattice::frame_from_order(format!("c{n}"), vec![], leq).unwrap()
    }

    fn b4() -> MultLattice {
        let leq = order_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        MultLattice::frame_from_order("b4", vec![], leq).unwrap()
    }

    #[test]
    fn quotient_by_bottom_and_top() {
        let l = b4();
        let q = quotient(&l, l.bottom()).unwrap();
        assert_eq!(q.lattice.len(), 4);
        assert!(validate(&q.lattice).valid);
        let t = quotient(&l, l.top()).unwrap();
        assert!(t.lattice.is_trivial());
    }

    #[test]
    fn localize_at_top_is_identity() {
        let l = b4();
        let d = localize(&l, &[l.top()]).unwrap();
        assert_eq!(d.lattice.len(), 4);
        assert_eq!(d.map, ElementMap::identity(&l));
    }

    #[test]
    fn localize_with_bottom_collapses() {
        let l = chain(3);
        let all: Vec<ElementId> = l.elements().collect();
        let d = localize(&l, &all).unwrap();
        assert!(d.lattice.is_trivial());
    }

    #[test]
    fn localize_errors() {
        let l = b4();
        let m = l.element(1).unwrap();
        let n = l.element(2).unwrap();
        assert_eq!(localize(&l, &[m]).unwrap_err(), ConstructionError::MissingTop);
        assert!(matches!(
            localize(&l, &[l.top(), m, n]),
            Err(ConstructionError::NotClosed { .. })
        ));
        assert_eq!(
            localize_at_prime(&l, l.bottom()).unwrap_err(),
            ConstructionError::NotPrime(0)
        );
    }

    #[test]
    fn product_of_two_chains_is_b4_shaped() {
        let c = chain(2);
        let p = product(&[&c, &c]).unwrap();
        assert!(validate(&p).valid);
        assert_eq!(p.len(), 4);
        assert_eq!(p.element_name(p.top()), "(1,1)");
        let shape = ProductShape { sizes: vec![2, 3] };
        for id in 0..6 {
            assert_eq!(shape.encode(&shape.decode(id)), id);
        }
    }

    #[test]
    fn quotient_map_transfers_hollowness() {
        let l = b4();
        let i = l.element(1).unwrap();
        let d = quotient(&l, i).unwrap();
        let status = check_adjunction_transfer(&l, &d.lattice, &d.map, &d.embed).unwrap();
        assert_eq!(status, CheckStatus::Holds);
        let id = ElementMap::identity(&l);
        assert_eq!(
            check_adjunction_transfer(&l, &l, &id, &id).unwrap(),
            CheckStatus::Holds
        );
    }

    #[test]
    fn non_adjunction_is_an_error() {
        let l = b4();
        let constant = ElementMap::new(vec![l.top(); 4]);
        let id = ElementMap::identity(&l);
        assert!(matches!(
            check_adjunction_transfer(&l, &l, &constant, &id),
            Err(ConstructionError::NotAdjunction { .. })
        ));
    }
}
