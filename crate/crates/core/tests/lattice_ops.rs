mod common;

use common::{corpus, Tables, ZmodOracle};
use mlat::elements::{is_gelfand, lattice_profile, LatticePredicate};
use mlat::family::{generate, FamilySpec};
use mlat::lattice::MultLattice;
use proptest::prelude::*;

fn id(l: &MultLattice, i: usize) -> mlat::ElementId {
    l.element(i).unwrap()
}

#[test]
fn corpus_tables_match_brute_force_bounds_and_residuals() {
    for (spec, l) in corpus() {
        let t = Tables::of(&l);
        for a in 0..t.n {
            for b in 0..t.n {
                let (x, y) = (id(&l, a), id(&l, b));
                assert_eq!(l.join(x, y).index(), t.lub(a, b), "{spec} join {a} {b}");
                assert_eq!(l.meet(x, y).index(), t.glb(a, b), "{spec} meet {a} {b}");
                assert_eq!(l.residual(x, y).index(), t.residual(a, b), "{spec} ({a}:{b})");
            }
        }
        assert_eq!(l.bottom().index(), t.bottom());
        assert_eq!(l.top().index(), t.top());
    }
}

#[test]
fn zmod_matches_divisor_arithmetic() {
    for m in 2..=60u64 {
        let l = generate(&FamilySpec::Zmod { m }).unwrap();
        let z = ZmodOracle { m };
        let ds = z.divisors();
        assert_eq!(l.len(), ds.len(), "m={m}");
        let el = |d: u64| l.resolve(&z.name(d)).unwrap();
        for &d in &ds {
            for &e in &ds {
                assert_eq!(l.leq(el(d), el(e)), z.leq(d, e), "m={m} {d}<={e}");
                assert_eq!(l.mul(el(d), el(e)), el(z.mul(d, e)), "m={m} {d}*{e}");
                assert_eq!(l.join(el(d), el(e)), el(z.join(d, e)));
                assert_eq!(l.meet(el(d), el(e)), el(z.meet(d, e)));
                assert_eq!(l.residual(el(d), el(e)), el(z.residual(d, e)), "m={m} ({d}:{e})");
            }
        }
        let mut want: Vec<_> = ds.iter().filter(|&&d| z.is_prime_divisor(d)).map(|&d| el(d)).collect();
        let mut got = lattice_profile(&l).spec;
        want.sort();
        got.sort();
        assert_eq!(got, want, "primes of Z/{m}");
    }
}

#[test]
fn z12_profile() {
    let l = generate(&FamilySpec::parse("zmod m=12").unwrap()).unwrap();
    let p = lattice_profile(&l);
    let mut primes: Vec<&str> = p.spec.iter().map(|&x| l.element_name(x)).collect();
    primes.sort();
    assert_eq!(primes, ["2Z", "3Z"]);
    assert!(p.get(LatticePredicate::Gelfand));
    assert!(is_gelfand(&l));
    assert!(!p.get(LatticePredicate::QuasiLocal));
    assert_eq!(l.element_name(p.jacobson), "6Z");
    assert_eq!(l.element_name(p.nilradical), "6Z");
}

#[test]
fn element_tokens_resolve_by_name_then_id() {
    let l = generate(&FamilySpec::B4).unwrap();
    assert_eq!(l.resolve("m").unwrap().index(), 1);
    assert_eq!(l.resolve("2").unwrap().index(), 2);
    assert_eq!(l.resolve("#3").unwrap().index(), 3);
    assert!(l.resolve("7").is_err());
    assert!(l.resolve("q").is_err());
}

fn corpus_lattice() -> impl Strategy<Value = MultLattice> {
    let specs = mlat::family::default_corpus();
    (0..specs.len()).prop_map(move |i| generate(&specs[i]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residual_is_right_adjoint(l in corpus_lattice(), a in 0usize..64, b in 0usize..64, x in 0usize..64) {
        let n = l.len();
        let (a, b, x) = (id(&l, a % n), id(&l, b % n), id(&l, x % n));
        prop_assert_eq!(l.leq(l.mul(x, b), a), l.leq(x, l.residual(a, b)));
    }

    #[test]
    fn mul_is_below_meet_and_monotone(l in corpus_lattice(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let n = l.len();
        let (a, b, c) = (id(&l, a % n), id(&l, b % n), id(&l, c % n));
        prop_assert!(l.leq(l.mul(a, b), l.meet(a, b)));
        if l.leq(b, c) {
            prop_assert!(l.leq(l.mul(a, b), l.mul(a, c)));
        }
    }
}
