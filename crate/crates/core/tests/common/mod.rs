//! Brute-force oracles shared by the integration tests. Everything here
//! works from the order relation and the multiplication table alone and
//! never calls the library's derived operations.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use mlat::family::{default_corpus, generate, FamilySpec};
use mlat::format;
use mlat::lattice::MultLattice;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> MultLattice {
    format::load(&repo_root().join("corpus/fixtures").join(name)).expect("fixture loads")
}

pub fn corpus() -> Vec<(FamilySpec, MultLattice)> {
    default_corpus()
        .into_iter()
        .map(|s| {
            let l = generate(&s).expect("corpus spec generates");
            (s, l)
        })
        .collect()
}

/// Plain integer view of a lattice: order and multiplication only.
#[derive(Clone, Debug)]
pub struct Tables {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub mul: Vec<Vec<usize>>,
}

impl Tables {
    pub fn of(l: &MultLattice) -> Tables {
        let raw = l.raw_tables();
        Tables {
            n: raw.leq.len(),
            leq: raw.leq,
            mul: raw.mul,
        }
    }

    pub fn lub(&self, a: usize, b: usize) -> usize {
        naive_lub(&self.leq, a, b).expect("lattice order")
    }

    pub fn glb(&self, a: usize, b: usize) -> usize {
        naive_glb(&self.leq, a, b).expect("lattice order")
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq[b][x])).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.leq[x][t])).unwrap()
    }

    pub fn join_set(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom(), |acc, x| self.lub(acc, x))
    }

    pub fn meet_set(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top(), |acc, x| self.glb(acc, x))
    }

    /// `⋁{x | x·b ≤ a}` by scanning.
    pub fn residual(&self, a: usize, b: usize) -> usize {
        self.join_set((0..self.n).filter(|&x| self.leq[self.mul[x][b]][a]))
    }

    /// Binary definition: `a ≤ x ∨ y` forces `a ≤ x` or `a ≤ y`.
    pub fn strongly_hollow(&self, a: usize) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                !self.leq[a][self.lub(x, y)] || self.leq[a][x] || self.leq[a][y]
            })
        })
    }

    /// Every non-empty subset `S` with `a ≤ ⋁S` has a member above `a`.
    /// Exponential; meant for `n ≤ 12`.
    pub fn csh_all_subsets(&self, a: usize) -> bool {
        assert!(self.n <= 12, "subset oracle limited to 12 elements");
        (1u32..1 << self.n).all(|mask| {
            let members = (0..self.n).filter(|&i| mask & (1 << i) != 0);
            let j = self.join_set(members.clone());
            !self.leq[a][j] || members.into_iter().any(|s| self.leq[a][s])
        })
    }

    /// `⋁{k | a ≰ k}`.
    pub fn kappa(&self, a: usize) -> usize {
        self.join_set((0..self.n).filter(|&k| !self.leq[a][k]))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq[a][b] || self.leq[b][a]))
    }
}

/// Least upper bound from the order alone, if it exists.
pub fn naive_lub(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let ub: Vec<usize> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
    ub.iter().copied().find(|&u| ub.iter().all(|&v| leq[u][v]))
}

pub fn naive_glb(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let lb: Vec<usize> = (0..n).filter(|&u| leq[u][a] && leq[u][b]).collect();
    lb.iter().copied().find(|&u| lb.iter().all(|&v| leq[v][u]))
}

pub fn is_partial_order(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).all(|a| leq[a][a])
        && (0..n).all(|a| (0..n).all(|b| a == b || !(leq[a][b] && leq[b][a])))
        && (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c]))
        })
}

pub fn is_lattice_order(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    is_partial_order(leq)
        && (0..n).all(|a| {
            (0..n).all(|b| naive_lub(leq, a, b).is_some() && naive_glb(leq, a, b).is_some())
        })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabeled order matrix over all permutations.
fn order_key(leq: &[Vec<bool>], perms: &[Vec<usize>]) -> Vec<bool> {
    let n = leq.len();
    perms
        .iter()
        .map(|p| {
            let mut m = vec![false; n * n];
            for a in 0..n {
                for b in 0..n {
                    m[p[a] * n + p[b]] = leq[a][b];
                }
            }
            m
        })
        .min()
        .unwrap()
}

pub fn naive_lattice_count(n: usize) -> usize {
    naive_lattice_orders(n).len()
}

/// Independent axiom check of a commutative table on a lattice order.
pub fn is_mult_lattice(t: &Tables) -> bool {
    let n = t.n;
    let (bot, top) = (t.bottom(), t.top());
    let m = &t.mul;
    (0..n).all(|a| m[a][top] == a && m[a][bot] == bot)
        && (0..n).all(|a| (0..n).all(|b| m[a][b] == m[b][a]))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m[m[a][b]][c] == m[a][m[b][c]])))
        && (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| m[a][t.lub(b, c)] == t.lub(m[a][b], m[a][c])))
        })
}

/// Every commutative table on the given order, filtered by the axioms and
/// deduplicated under order automorphisms.
pub fn naive_mult_structures(leq: &[Vec<bool>]) -> usize {
    let n = leq.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let autos: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|a| (0..n).all(|b| leq[a][b] == leq[p[a]][p[b]])))
        .collect();
    let total = n.pow(cells.len() as u32);
    let mut seen = BTreeSet::new();
    for code in 0..total {
        let mut mul = vec![vec![0; n]; n];
        let mut c = code;
        for &(a, b) in &cells {
            mul[a][b] = c % n;
            mul[b][a] = c % n;
            c /= n;
        }
        let t = Tables {
            n,
            leq: leq.to_vec(),
            mul,
        };
        if !is_mult_lattice(&t) {
            continue;
        }
        let key = autos
            .iter()
            .map(|p| {
                let mut img = vec![0; n * n];
                for a in 0..n {
                    for b in 0..n {
                        img[p[a] * n + p[b]] = p[t.mul[a][b]];
                    }
                }
                img
            })
            .min()
            .unwrap();
        seen.insert(key);
    }
    seen.len()
}

/// Lattice orders with `n` elements up to isomorphism, one representative
/// each, by filtering every relation with a reflexive diagonal and
/// deduplicating by brute force.
pub fn naive_lattice_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                leq[a][b] = true;
            }
        }
        if is_lattice_order(&leq) && seen.insert(order_key(&leq, &perms)) {
            out.push(leq);
        }
    }
    out
}

/// Order- and multiplication-preserving bijection by trying every
/// permutation.
pub fn brute_isomorphic(a: &MultLattice, b: &MultLattice) -> bool {
    let (x, y) = (Tables::of(a), Tables::of(b));
    if x.n != y.n {
        return false;
    }
    let n = x.n;
    permutations(n).iter().any(|p| {
        (0..n).all(|i| {
            (0..n).all(|j| x.leq[i][j] == y.leq[p[i]][p[j]] && p[x.mul[i][j]] == y.mul[p[i]][p[j]])
        })
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Ideals of `Z/m` as divisors `d` (the ideal `dZ/mZ`): `dZ ⊆ eZ` iff
/// `e | d`, and `dZ·eZ = gcd(de, m)Z`.
pub struct ZmodOracle {
    pub m: u64,
}

impl ZmodOracle {
    pub fn divisors(&self) -> Vec<u64> {
        (1..=self.m).filter(|d| self.m % d == 0).collect()
    }

    pub fn leq(&self, d: u64, e: u64) -> bool {
        d % e == 0
    }

    pub fn mul(&self, d: u64, e: u64) -> u64 {
        gcd(d * e, self.m)
    }

    pub fn join(&self, d: u64, e: u64) -> u64 {
        gcd(d, e)
    }

    pub fn meet(&self, d: u64, e: u64) -> u64 {
        d / gcd(d, e) * e
    }

    /// `{x | x·e ⊆ d}` is generated by `d / gcd(d, e)`.
    pub fn residual(&self, d: u64, e: u64) -> u64 {
        d / gcd(d, e)
    }

    pub fn name(&self, d: u64) -> String {
        if d == self.m {
            "0".into()
        } else if d == 1 {
            "1".into()
        } else {
            format!("{d}Z")
        }
    }

    pub fn is_prime_divisor(&self, d: u64) -> bool {
        d > 1 && (2..d).all(|k| d % k != 0)
    }
}

/// Compares the product of two lattices against its factors: the strongly
/// hollow set must be exactly the elements with one hollow coordinate and
/// bottom elsewhere, and on every non-zero element with one non-zero
/// coordinate κ and `L_a` must be top in the other coordinate and the
/// factor's value in the non-zero one.
pub fn product_mismatches(a: &MultLattice, b: &MultLattice) -> Vec<String> {
    let p = mlat::constructions::product(&[a, b]).expect("product fits");
    let (ta, tb, tp) = (Tables::of(a), Tables::of(b), Tables::of(&p));
    let enc = |x: usize, y: usize| x * tb.n + y;
    let mut want = BTreeSet::new();
    for x in (0..ta.n).filter(|&x| ta.strongly_hollow(x)) {
        want.insert(enc(x, tb.bottom()));
    }
    for y in (0..tb.n).filter(|&y| tb.strongly_hollow(y)) {
        want.insert(enc(ta.bottom(), y));
    }
    let got: BTreeSet<usize> = (0..tp.n).filter(|&z| tp.strongly_hollow(z)).collect();
    let mut out = Vec::new();
    if got != want {
        out.push(format!("{}: SH {got:?} != embedded {want:?}", p.name()));
    }
    let la = |t: &Tables, x: usize| t.residual(t.kappa(x), x);
    for x in (0..ta.n).filter(|&x| x != ta.bottom()) {
        let z = enc(x, tb.bottom());
        let k = (enc(ta.kappa(x), tb.top()), enc(la(&ta, x), tb.top()));
        let lib = mlat::hollow::kappa(&p, p.element(z).unwrap()).index();
        let lib_la = mlat::hollow::l_a(&p, p.element(z).unwrap()).index();
        if (tp.kappa(z), la(&tp, z)) != k || (lib, lib_la) != k {
            out.push(format!("{}: kappa/L_a at left {x}", p.name()));
        }
    }
    for y in (0..tb.n).filter(|&y| y != tb.bottom()) {
        let z = enc(ta.bottom(), y);
        let k = (enc(ta.top(), tb.kappa(y)), enc(ta.top(), la(&tb, y)));
        let lib = mlat::hollow::kappa(&p, p.element(z).unwrap()).index();
        let lib_la = mlat::hollow::l_a(&p, p.element(z).unwrap()).index();
        if (tp.kappa(z), la(&tp, z)) != k || (lib, lib_la) != k {
            out.push(format!("{}: kappa/L_a at right {y}", p.name()));
        }
    }
    out
}

/// Corpus lattices up to isomorphism, smallest first.
pub fn distinct_corpus() -> Vec<MultLattice> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<MultLattice> = corpus()
        .into_iter()
        .map(|(_, l)| l)
        .filter(|l| seen.insert(mlat::search::canonical_form(l).bytes().to_vec()))
        .collect();
    out.sort_by_key(|l| l.len());
    out
}

/// `a_S = ⋁{x | x·s ≤ a for some s ∈ S}` by scanning.
pub fn naive_saturation(t: &Tables, s: &[usize]) -> Vec<usize> {
    (0..t.n)
        .map(|a| t.join_set((0..t.n).filter(|&x| s.iter().any(|&u| t.leq[t.mul[x][u]][a]))))
        .collect()
}
