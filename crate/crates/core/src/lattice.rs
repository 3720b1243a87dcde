//! The lattice kernel: a finite complete lattice carrying a commutative
//! multiplication, stored as dense tables.

use std::fmt;

use thiserror::Error;

/// Index of an element inside one [`MultLattice`].
///
/// Ids are only meaningful relative to the lattice that produced them. Use
/// [`MultLattice::element`] or [`MultLattice::resolve`] to obtain a checked id
/// from external input.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    pub(crate) fn from_index(i: usize) -> Self {
        ElementId(i as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Structural errors raised while building a lattice. Axiom violations are
/// not errors; they are reported by [`crate::axioms::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("lattice size {0} exceeds the supported maximum of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("table `{table}` has the wrong shape (expected {expected}x{expected})")]
    Dimension { table: &'static str, expected: usize },
    #[error("element id {id} is out of range for a lattice with {n} elements")]
    OutOfRange { id: usize, n: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{count} names given for {n} elements")]
    NameCount { count: usize, n: usize },
    #[error("the relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("elements {a} and {b} have no least upper bound")]
    NoJoin { a: usize, b: usize },
    #[error("elements {a} and {b} have no greatest lower bound")]
    NoMeet { a: usize, b: usize },
    #[error("the order has no least element")]
    NoBottom,
    #[error("the order has no greatest element")]
    NoTop,
    #[error("declared {which} {declared} is not the {which} of the order ({actual})")]
    BoundMismatch {
        which: &'static str,
        declared: usize,
        actual: usize,
    },
}

pub const MAX_ELEMENTS: usize = 255;

/// Dense tables describing a candidate multiplicative lattice, exactly as
/// supplied by a caller. Nothing about the algebra is assumed; see
/// [`MultLattice::from_raw`].
#[derive(Debug, Clone)]
pub struct RawTables {
    pub name: String,
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

/// A finite multiplicative lattice.
///
/// Immutable once built. The residual table is derived from `mul` and the
/// order at construction time, so every operation is a table lookup.
#[derive(Clone, PartialEq, Eq)]
pub struct MultLattice {
    name: String,
    n: usize,
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    mul: Vec<u32>,
    residual: Vec<u32>,
    bottom: u32,
    top: u32,
}

impl fmt::Debug for MultLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultLattice")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("names", &self.names)
            .finish_non_exhaustive()
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_square<T>(table: &[Vec<T>], n: usize, name: &'static str) -> Result<(), LatticeError> {
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(LatticeError::Dimension {
            table: name,
            expected: n,
        });
    }
    Ok(())
}

fn check_ids(table: &[Vec<usize>], n: usize) -> Result<(), LatticeError> {
    for row in table {
        for &id in row {
            if id >= n {
                return Err(LatticeError::OutOfRange { id, n });
            }
        }
    }
    Ok(())
}

impl MultLattice {
    /// Accepts arbitrary tables after structural checks only (shape, id
    /// ranges, name count). Use [`crate::axioms::validate`] to find out
    /// whether they actually describe a multiplicative lattice.
    pub fn from_raw(raw: RawTables) -> Result<Self, LatticeError> {
        let n = raw.leq.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge(n));
        }
        check_square(&raw.leq, n, "leq")?;
        check_square(&raw.join, n, "join")?;
        check_square(&raw.meet, n, "meet")?;
        check_square(&raw.mul, n, "mul")?;
        check_ids(&raw.join, n)?;
        check_ids(&raw.meet, n)?;
        check_ids(&raw.mul, n)?;
        for id in [raw.bottom, raw.top] {
            if id >= n {
                return Err(LatticeError::OutOfRange { id, n });
            }
        }
        let names = if raw.names.is_empty() {
            default_names(n)
        } else if raw.names.len() != n {
            return Err(LatticeError::NameCount {
                count: raw.names.len(),
                n,
            });
        } else {
            raw.names
        };
        let flat = |t: &[Vec<usize>]| -> Vec<u32> {
            t.iter().flat_map(|r| r.iter().map(|&x| x as u32)).collect()
        };
        let mut lattice = MultLattice {
            name: raw.name,
            n,
            names,
            leq: raw.leq.iter().flatten().copied().collect(),
            join: flat(&raw.join),
            meet: flat(&raw.meet),
            mul: flat(&raw.mul),
            residual: Vec::new(),
            bottom: raw.bottom as u32,
            top: raw.top as u32,
        };
        lattice.residual = lattice.compute_residuals();
        Ok(lattice)
    }

    /// Builds a lattice from a partial order and a multiplication. Joins,
    /// meets, bottom and top are derived from the order; an order that is not
    /// a lattice is rejected.
    pub fn from_order(
        name: impl Into<String>,
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self, LatticeError> {
        let n = leq.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        check_square(&leq, n, "leq")?;
        check_partial_order(&leq)?;
        let (join, meet) = bounds_from_order(&leq)?;
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq[b][x]))
            .ok_or(LatticeError::NoBottom)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x][t]))
            .ok_or(LatticeError::NoTop)?;
        Self::from_raw(RawTables {
            name: name.into(),
            names,
            leq,
            join,
            meet,
            mul,
            bottom,
            top,
        })
    }

    /// Like [`MultLattice::from_order`], with the multiplication given as a
    /// function of element indices.
    pub fn from_order_fn(
        name: impl Into<String>,
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, LatticeError> {
        let n = leq.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_order(name, names, leq, table)
    }

    /// Finite distributive lattice with multiplication equal to meet.
    pub fn frame_from_order(
        name: impl Into<String>,
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
    ) -> Result<Self, LatticeError> {
        let n = leq.len();
        check_square(&leq, n, "leq")?;
        check_partial_order(&leq)?;
        let (_, meet) = bounds_from_order(&leq)?;
        Self::from_order(name, names, leq, meet)
    }

    fn compute_residuals(&self) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = self.bottom as usize;
                for x in 0..n {
                    let xb = self.mul[x * n + b] as usize;
                    if self.leq[xb * n + a] {
                        acc = self.join[acc * n + x] as usize;
                    }
                }
                out[a * n + b] = acc as u32;
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True for the one-element lattice, where bottom and top coincide.
    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, a: ElementId) -> &str {
        &self.names[a.index()]
    }

    /// True when the names are just the decimal ids.
    pub fn has_default_names(&self) -> bool {
        self.names.iter().enumerate().all(|(i, s)| *s == i.to_string())
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.n).map(ElementId::from_index)
    }

    /// Checked conversion from a raw index.
    pub fn element(&self, i: usize) -> Result<ElementId, LatticeError> {
        if i < self.n {
            Ok(ElementId::from_index(i))
        } else {
            Err(LatticeError::OutOfRange { id: i, n: self.n })
        }
    }

    /// Resolves a user-supplied token: an exact element name first, then
    /// `#k` or a bare integer as an id.
    pub fn resolve(&self, token: &str) -> Result<ElementId, LatticeError> {
        if let Some(i) = self.names.iter().position(|s| s == token) {
            return Ok(ElementId::from_index(i));
        }
        let digits = token.strip_prefix('#').unwrap_or(token);
        match digits.parse::<usize>() {
            Ok(i) => self.element(i),
            Err(_) => Err(LatticeError::UnknownElement(token.to_string())),
        }
    }

    pub fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }

    pub fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.join[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.meet[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.mul[a.index() * self.n + b.index()])
    }

    /// `(a : b)`, the join of every `x` with `x·b ≤ a`.
    #[inline]
    pub fn residual(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.residual[a.index() * self.n + b.index()])
    }

    /// Whether the residual `(a : b)` itself satisfies `(a : b)·b ≤ a`.
    /// Always true for lattices that pass validation.
    pub fn residual_is_attained(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(self.mul(self.residual(a, b), b), a)
    }

    /// Join of a set; the empty join is bottom.
    pub fn join_all(&self, items: impl IntoIterator<Item = ElementId>) -> ElementId {
        items
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of a set; the empty meet is top.
    pub fn meet_all(&self, items: impl IntoIterator<Item = ElementId>) -> ElementId {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Product of a set; the empty product is top.
    pub fn mul_all(&self, items: impl IntoIterator<Item = ElementId>) -> ElementId {
        items.into_iter().fold(self.top(), |acc, x| self.mul(acc, x))
    }

    /// `a^k`, with `a^0 = top`.
    pub fn pow(&self, a: ElementId, k: usize) -> ElementId {
        (0..k).fold(self.top(), |acc, _| self.mul(acc, a))
    }

    pub fn is_bottom(&self, a: ElementId) -> bool {
        a.0 == self.bottom
    }

    pub fn is_top(&self, a: ElementId) -> bool {
        a.0 == self.top
    }

    /// Elements `x` with `x^k = bottom` for some `1 ≤ k ≤ n`.
    pub fn nilpotents(&self) -> Vec<ElementId> {
        self.elements()
            .filter(|&x| {
                let mut p = x;
                for _ in 0..self.n {
                    if self.is_bottom(p) {
                        return true;
                    }
                    p = self.mul(p, x);
                }
                self.is_bottom(p)
            })
            .collect()
    }

    /// Join of the nilpotent elements.
    pub fn nilradical(&self) -> ElementId {
        self.join_all(self.nilpotents())
    }

    /// The principal down-set `{x | x ≤ a}`.
    pub fn down_set(&self, a: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&x| self.leq(x, a)).collect()
    }

    /// The principal up-set `{x | a ≤ x}`.
    pub fn up_set(&self, a: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&x| self.leq(a, x)).collect()
    }

    /// Maximal elements of a subset, in id order.
    pub fn maximal_of(&self, set: &[ElementId]) -> Vec<ElementId> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    /// Minimal elements of a subset, in id order.
    pub fn minimal_of(&self, set: &[ElementId]) -> Vec<ElementId> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| self.lt(y, x)))
            .collect()
    }

    /// The covering pairs `(i, j)`, `j` covering `i`, in lexicographic order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for i in self.elements() {
            for j in self.elements() {
                if self.lt(i, j) && !self.elements().any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// True when the order is total.
    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Relabels elements: `perm[old] = new`. Names travel with their
    /// elements.
    pub fn permuted(&self, perm: &[usize]) -> MultLattice {
        let n = self.n;
        assert_eq!(perm.len(), n, "permutation length must match lattice size");
        let mut inv = vec![0usize; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let table = |t: &[u32]| -> Vec<u32> {
            let mut out = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    out[a * n + b] = perm[t[inv[a] * n + inv[b]] as usize] as u32;
                }
            }
            out
        };
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq[inv[a] * n + inv[b]];
            }
        }
        MultLattice {
            name: self.name.clone(),
            n,
            names: (0..n).map(|i| self.names[inv[i]].clone()).collect(),
            leq,
            join: table(&self.join),
            meet: table(&self.meet),
            mul: table(&self.mul),
            residual: table(&self.residual),
            bottom: perm[self.bottom as usize] as u32,
            top: perm[self.top as usize] as u32,
        }
    }

    /// Copies of the underlying tables, for serialization and tests.
    pub fn raw_tables(&self) -> RawTables {
        let n = self.n;
        let nested = |t: &[u32]| -> Vec<Vec<usize>> {
            (0..n)
                .map(|a| (0..n).map(|b| t[a * n + b] as usize).collect())
                .collect()
        };
        RawTables {
            name: self.name.clone(),
            names: self.names.clone(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| self.leq[a * n + b]).collect())
                .collect(),
            join: nested(&self.join),
            meet: nested(&self.meet),
            mul: nested(&self.mul),
            bottom: self.bottom as usize,
            top: self.top as usize,
        }
    }
}

/// Reflexivity, antisymmetry and transitivity of a square boolean relation.
pub fn check_partial_order(leq: &[Vec<bool>]) -> Result<(), LatticeError> {
    let n = leq.len();
    for a in 0..n {
        if !leq[a][a] {
            return Err(LatticeError::NotPartialOrder(format!("{a} ≰ {a}")));
        }
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(LatticeError::NotPartialOrder(format!(
                    "{a} ≤ {b} ≤ {a} with {a} ≠ {b}"
                )));
            }
            if !leq[a][b] {
                continue;
            }
            for c in 0..n {
                if leq[b][c] && !leq[a][c] {
                    return Err(LatticeError::NotPartialOrder(format!(
                        "{a} ≤ {b} ≤ {c} but {a} ≰ {c}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Join and meet tables of a partial order, or the first pair lacking a
/// bound.
pub fn bounds_from_order(
    leq: &[Vec<bool>],
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>), LatticeError> {
    let n = leq.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a..n {
            let lub = (0..n).find(|&u| {
                leq[a][u] && leq[b][u] && (0..n).all(|v| !(leq[a][v] && leq[b][v]) || leq[u][v])
            });
            let glb = (0..n).find(|&l| {
                leq[l][a] && leq[l][b] && (0..n).all(|v| !(leq[v][a] && leq[v][b]) || leq[v][l])
            });
            let lub = lub.ok_or(LatticeError::NoJoin { a, b })?;
            let glb = glb.ok_or(LatticeError::NoMeet { a, b })?;
            join[a][b] = lub;
            join[b][a] = lub;
            meet[a][b] = glb;
            meet[b][a] = glb;
        }
    }
    Ok((join, meet))
}

/// Reflexive-transitive closure of a covering relation on `n` points.
pub fn order_from_covers(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in covers {
        leq[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    leq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect()
    }

    fn b4() -> MultLattice {
        // 0 < m, n < 1
        let leq = order_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        MultLattice::frame_from_order(
            "b4",
            vec!["0".into(), "m".into(), "n".into(), "1".into()],
            leq,
        )
        .unwrap()
    }

    #[test]
    fn empty_joins_and_meets() {
        let l = b4();
        assert_eq!(l.join_all([]), l.bottom());
        assert_eq!(l.meet_all([]), l.top());
        let m = l.resolve("m").unwrap();
        let n = l.resolve("n").unwrap();
        assert_eq!(l.meet_all([m]), m);
        assert_eq!(l.join_all([m, n]), l.top());
    }

    #[test]
    fn residual_examples() {
        let l = b4();
        let m = l.resolve("m").unwrap();
        let n = l.resolve("n").unwrap();
        for a in l.elements() {
            assert_eq!(l.residual(a, l.top()), a);
            assert_eq!(l.residual(l.top(), a), l.top());
        }
        assert_eq!(l.residual(m, n), m);
        assert!(l.residual_is_attained(m, n));
    }

    #[test]
    fn truncated_chain_nilpotents() {
        // 1 > p > p^2 > 0 with p^i p^j = p^min(i+j,3); ids by exponent reversed.
        let leq = chain(4);
        let exp = |x: usize| 3 - x;
        let l = MultLattice::from_order_fn("c", vec![], leq, |a, b| 3 - (exp(a) + exp(b)).min(3))
            .unwrap();
        let nil: Vec<usize> = l.nilpotents().iter().map(|x| x.index()).collect();
        assert_eq!(nil, vec![0, 1, 2]);
        assert_eq!(l.nilradical().index(), 2);
    }

    #[test]
    fn rejects_non_lattice_orders() {
        // two incomparable maximal elements above a bottom: no top
        let leq = order_from_covers(3, &[(0, 1), (0, 2)]);
        let err = MultLattice::from_order("v", vec![], leq, vec![vec![0; 3]; 3]).unwrap_err();
        assert!(matches!(err, LatticeError::NoJoin { .. }));
    }

    #[test]
    fn rejects_out_of_range_ids() {
        let l = b4();
        assert!(l.element(4).is_err());
        assert!(matches!(
            l.resolve("q"),
            Err(LatticeError::UnknownElement(_))
        ));
        assert_eq!(l.resolve("#2").unwrap().index(), 2);
    }

    #[test]
    fn permutation_roundtrip() {
        let l = b4();
        let p = l.permuted(&[0, 2, 1, 3]);
        assert_eq!(p.element_name(p.element(1).unwrap()), "n");
        assert_eq!(p.permuted(&[0, 2, 1, 3]), l);
    }
}
