//! Exhaustive enumeration of small lattices and their multiplications.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::validate;
use crate::lattice::{bounds_from_order, MultLattice};
use crate::search::canonical::{
    canonical_form, canonical_relabel, order_canonical_form, order_canonical_permutation,
    CanonicalForm,
};

/// Largest `n` accepted by [`enumerate_lattices`].
pub const MAX_ENUMERATION: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("lattice size {0} is outside the enumeration range 1..={MAX_ENUMERATION}")]
    SizeOutOfRange(usize),
    #[error("mining is capped at n = {cap}, got {got}")]
    MineCap { cap: usize, got: usize },
    #[error("index {index} is out of range: only {count} lattices of size {n}")]
    IndexOutOfRange { n: usize, index: usize, count: usize },
    #[error("query: {0}")]
    Query(String),
}

/// All lattices on `n` elements up to order isomorphism, in canonical order
/// and canonically labeled.
///
/// These are order skeletons: the multiplication is set to meet as a
/// placeholder and only describes a multiplicative lattice when the order is
/// distributive. Use [`enumerate_mult_structures`] for the real ones.
pub fn enumerate_lattices(n: usize) -> Result<Vec<MultLattice>, SearchError> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(SearchError::SizeOutOfRange(n));
    }
    if n == 1 {
        return Ok(vec![skeleton(n, vec![vec![true]]).expect("one point")]);
    }
    // Middle elements are 1..n-1, added in a linear extension of the order.
    // Each new element gets a down-set among earlier middles that is an
    // order ideal; transitivity then holds by construction.
    let mid = n - 2;
    let mut found: BTreeMap<CanonicalForm, MultLattice> = BTreeMap::new();
    let mut below: Vec<Vec<bool>> = vec![vec![false; mid]; mid];
    extend(0, mid, &mut below, &mut |below| {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
            row[n - 1] = true;
        }
        for x in 0..n {
            leq[0][x] = true;
        }
        for a in 0..mid {
            for b in 0..mid {
                if below[a][b] {
                    leq[a + 1][b + 1] = true;
                }
            }
        }
        if let Some(l) = skeleton(n, leq) {
            let l = l.permuted(&order_canonical_permutation(&l));
            found.entry(order_canonical_form(&l)).or_insert(l);
        }
    });
    Ok(found.into_values().collect())
}

/// `below[a][b]` means middle `a` < middle `b`.
fn extend(k: usize, mid: usize, below: &mut Vec<Vec<bool>>, emit: &mut dyn FnMut(&Vec<Vec<bool>>)) {
    if k == mid {
        emit(below);
        return;
    }
    for mask in 0u32..(1 << k) {
        let set: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        let ideal = set
            .iter()
            .all(|&b| (0..k).all(|a| !below[a][b] || set.contains(&a)));
        if !ideal {
            continue;
        }
        for &a in &set {
            below[a][k] = true;
        }
        extend(k + 1, mid, below, emit);
        for &a in &set {
            below[a][k] = false;
        }
    }
}

fn skeleton(n: usize, leq: Vec<Vec<bool>>) -> Option<MultLattice> {
    let (_, meet) = bounds_from_order(&leq).ok()?;
    MultLattice::from_order(format!("lattice{n}"), vec![], leq, meet).ok()
}

const UNSET: usize = usize::MAX;

struct Backtrack<'a> {
    l: &'a MultLattice,
    n: usize,
    cells: Vec<(usize, usize)>,
    table: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
}

impl Backtrack<'_> {
    fn get(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Every fully assigned distributivity and associativity instance.
    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for z in 0..n {
                    let xz = self.get(x, z);
                    let xyz = self.get(x, self.join[y][z]);
                    if xy != UNSET && xz != UNSET && xyz != UNSET && xyz != self.join[xy][xz] {
                        return false;
                    }
                    if xy == UNSET {
                        continue;
                    }
                    let yz = self.get(y, z);
                    if yz == UNSET {
                        continue;
                    }
                    let l = self.get(xy, z);
                    let r = self.get(x, yz);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == self.cells.len() {
            out.push(self.table.clone());
            return;
        }
        let (a, b) = self.cells[k];
        let cap = self.meet[a][b];
        for v in 0..self.n {
            if !self.leq[v][cap] {
                continue;
            }
            self.table[a][b] = v;
            self.table[b][a] = v;
            if self.consistent() {
                self.run(k + 1, out);
            }
        }
        self.table[a][b] = UNSET;
        self.table[b][a] = UNSET;
    }
}

/// Every multiplication on the order of `skeleton` satisfying the axioms, up
/// to isomorphism, canonically labeled and in canonical order.
///
/// The top row is the identity and the bottom row is zero; the remaining
/// upper-triangle cells are assigned by backtracking, with values capped by
/// the meet and partial distributivity/associativity checked at every node.
pub fn enumerate_mult_structures(skeleton: &MultLattice) -> Vec<MultLattice> {
    let n = skeleton.len();
    let els: Vec<_> = skeleton.elements().collect();
    let idx = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
    };
    let (bot, top) = (skeleton.bottom().index(), skeleton.top().index());
    let mut table = vec![vec![UNSET; n]; n];
    for x in 0..n {
        table[x][top] = x;
        table[top][x] = x;
        table[x][bot] = bot;
        table[bot][x] = bot;
    }
    let middles: Vec<usize> = (0..n).filter(|&x| x != bot && x != top).collect();
    let cells = middles
        .iter()
        .flat_map(|&a| middles.iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
        .collect();
    let mut bt = Backtrack {
        l: skeleton,
        n,
        cells,
        table,
        join: idx(&|a, b| skeleton.join(els[a], els[b]).index()),
        meet: idx(&|a, b| skeleton.meet(els[a], els[b]).index()),
        leq: (0..n)
            .map(|a| (0..n).map(|b| skeleton.leq(els[a], els[b])).collect())
            .collect(),
    };
    let mut tables = Vec::new();
    bt.run(0, &mut tables);

    let mut found: BTreeMap<CanonicalForm, MultLattice> = BTreeMap::new();
    let leq = bt.leq.clone();
    for t in tables {
        let Ok(l) = MultLattice::from_order(bt.l.name(), vec![], leq.clone(), t) else {
            continue;
        };
        if !validate(&l).valid {
            continue;
        }
        let l = canonical_relabel(&l);
        found.entry(canonical_form(&l)).or_insert(l);
    }
    found.into_values().collect()
}

/// Every multiplicative lattice on `n` elements up to isomorphism, in
/// canonical order and named `enumerated(n=…,index=…)`.
pub fn mult_lattices(n: usize) -> Result<Vec<MultLattice>, SearchError> {
    let skeletons = enumerate_lattices(n)?;
    let mut all: Vec<MultLattice> = skeletons
        .par_iter()
        .map(enumerate_mult_structures)
        .flatten()
        .collect();
    all.sort_by_cached_key(canonical_form);
    Ok(all
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.with_name(format!("enumerated(n={n},index={i})")))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 5]);
        assert!(enumerate_lattices(0).is_err());
        assert!(enumerate_lattices(8).is_err());
    }

    #[test]
    fn chain_structures() {
        let two = &enumerate_lattices(2).unwrap()[0];
        assert_eq!(enumerate_mult_structures(two).len(), 1);
        let three = &enumerate_lattices(3).unwrap()[0];
        assert_eq!(enumerate_mult_structures(three).len(), 2);
    }
}
