//! Canonical forms up to isomorphism.
//!
//! Individualization-refinement: element colours start from
//! labeling-invariant data (down-set and up-set sizes, idempotence) and are
//! refined by the colours of products and comparabilities until stable.
//! Every non-singleton cell is branched on exhaustively, and the
//! lexicographically least encoding over all discrete leaves is the form.
//! Bottom always receives id 0 and top id `n - 1`.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::lattice::MultLattice;

/// `(n, leq, mul)` under the canonical labeling. Two lattices have equal
/// forms iff an order- and product-preserving bijection exists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// First 16 hex digits of the SHA-256 of the encoding.
    pub fn key(&self) -> String {
        let digest = Sha256::digest(&self.bytes);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.key())
    }
}

struct Graph {
    n: usize,
    leq: Vec<bool>,
    mul: Option<Vec<usize>>,
}

impl Graph {
    fn new(l: &MultLattice, with_mul: bool) -> Self {
        let n = l.len();
        let els: Vec<_> = l.elements().collect();
        let leq = els
            .iter()
            .flat_map(|&a| els.iter().map(move |&b| l.leq(a, b)))
            .collect();
        let mul = with_mul.then(|| {
            els.iter()
                .flat_map(|&a| els.iter().map(move |&b| l.mul(a, b).index()))
                .collect()
        });
        Graph { n, leq, mul }
    }

    fn n(&self) -> usize {
        self.n
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.as_ref().map_or(0, |m| m[a * self.n + b])
    }

    fn initial_colours(&self) -> Vec<u32> {
        let n = self.n();
        let sig: Vec<(usize, usize, bool)> = (0..n)
            .map(|x| {
                let down = (0..n).filter(|&y| self.leq(y, x)).count();
                let up = (0..n).filter(|&y| self.leq(x, y)).count();
                let idem = self.mul.is_some() && self.mul(x, x) == x;
                (down, up, idem)
            })
            .collect();
        rank(&sig)
    }

    /// Refines to a stable ordered partition.
    fn refine(&self, mut colours: Vec<u32>) -> Vec<u32> {
        let n = self.n();
        loop {
            let before = distinct(&colours);
            let sig: Vec<(u32, Vec<(u32, u8, u32)>)> = (0..n)
                .map(|x| {
                    let mut row: Vec<(u32, u8, u32)> = (0..n)
                        .map(|y| {
                            let rel = u8::from(self.leq(x, y)) | (u8::from(self.leq(y, x)) << 1);
                            let prod = if self.mul.is_some() {
                                colours[self.mul(x, y)]
                            } else {
                                0
                            };
                            (colours[y], rel, prod)
                        })
                        .collect();
                    row.sort_unstable();
                    (colours[x], row)
                })
                .collect();
            colours = rank(&sig);
            if distinct(&colours) == before {
                return colours;
            }
        }
    }

    fn encode(&self, colours: &[u32]) -> Vec<u8> {
        let n = self.n();
        let mut old = vec![0usize; n];
        for (x, &c) in colours.iter().enumerate() {
            old[c as usize] = x;
        }
        let mut out = Vec::with_capacity(1 + n * n * 2);
        out.push(n as u8);
        for a in 0..n {
            for b in 0..n {
                out.push(u8::from(self.leq(old[a], old[b])));
            }
        }
        if self.mul.is_some() {
            for a in 0..n {
                for b in a..n {
                    out.push(colours[self.mul(old[a], old[b])] as u8);
                }
            }
        }
        out
    }

    fn search(&self, colours: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<u32>)>) {
        let colours = self.refine(colours);
        let n = self.n();
        let mut counts = vec![0usize; n];
        for &c in &colours {
            counts[c as usize] += 1;
        }
        let Some(target) = counts.iter().position(|&k| k > 1) else {
            let code = self.encode(&colours);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, colours));
            }
            return;
        };
        for x in (0..n).filter(|&x| colours[x] as usize == target) {
            // Split x off in front of the rest of its cell.
            let next: Vec<u32> = colours
                .iter()
                .enumerate()
                .map(|(y, &c)| {
                    let c = 2 * c;
                    if c as usize == 2 * target && y != x {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            self.search(rank(&next), best);
        }
    }

    fn canonical(&self) -> (Vec<u8>, Vec<u32>) {
        let mut best = None;
        self.search(self.initial_colours(), &mut best);
        best.expect("at least one leaf")
    }
}

fn distinct(colours: &[u32]) -> usize {
    let mut v = colours.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Dense ranks of the signatures, in sorted order.
fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sig.to_vec();
    sorted.sort();
    sorted.dedup();
    sig.iter()
        .map(|s| sorted.binary_search(s).expect("present") as u32)
        .collect()
}

pub fn canonical_form(l: &MultLattice) -> CanonicalForm {
    let (bytes, _) = Graph::new(l, true).canonical();
    CanonicalForm { bytes }
}

/// Form of the underlying order, ignoring multiplication.
pub fn order_canonical_form(l: &MultLattice) -> CanonicalForm {
    let (bytes, _) = Graph::new(l, false).canonical();
    CanonicalForm { bytes }
}

/// `perm[old] = new` realising the canonical form.
pub fn canonical_permutation(l: &MultLattice) -> Vec<usize> {
    let (_, colours) = Graph::new(l, true).canonical();
    colours.into_iter().map(|c| c as usize).collect()
}

pub fn order_canonical_permutation(l: &MultLattice) -> Vec<usize> {
    let (_, colours) = Graph::new(l, false).canonical();
    colours.into_iter().map(|c| c as usize).collect()
}

/// The lattice relabeled into canonical order.
pub fn canonical_relabel(l: &MultLattice) -> MultLattice {
    l.permuted(&canonical_permutation(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::order_from_covers;

    #[test]
    fn b4_swap_is_invisible() {
        let leq = order_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let l = MultLattice::frame_from_order("b4", vec![], leq).unwrap();
        let p = l.permuted(&[3, 1, 2, 0]);
        assert_eq!(canonical_form(&l), canonical_form(&p));
        let perm = canonical_permutation(&l);
        assert_eq!(perm[l.bottom().index()], 0);
        assert_eq!(perm[l.top().index()], 3);
    }

    #[test]
    fn three_chain_structures_differ() {
        let leq: Vec<Vec<bool>> = (0..3).map(|a| (0..3).map(|b| a <= b).collect()).collect();
        let meet = MultLattice::frame_from_order("m", vec![], leq.clone()).unwrap();
        let nil = MultLattice::from_order_fn("z", vec![], leq, |a, b| if a == 2 { b } else if b == 2 { a } else { 0 })
            .unwrap();
        assert_ne!(canonical_form(&meet), canonical_form(&nil));
        assert_eq!(order_canonical_form(&meet), order_canonical_form(&nil));
    }
}
