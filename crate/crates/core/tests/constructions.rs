mod common;

use common::{brute_isomorphic, corpus, distinct_corpus, naive_saturation, product_mismatches, Tables};
use mlat::constructions::{
    check_saturation, localize, localize_at_prime, prime_complement, product, quotient,
    saturation, ConstructionError,
};
use mlat::family::{generate, FamilySpec, Localizer};
use mlat::hollow::is_strongly_hollow;
use mlat::lattice::MultLattice;
use mlat::search::canonical_form;

fn zmod(m: u64) -> MultLattice {
    generate(&FamilySpec::Zmod { m }).unwrap()
}

fn same(a: &MultLattice, b: &MultLattice) -> bool {
    let canon = canonical_form(a) == canonical_form(b);
    if a.len() <= 7 {
        assert_eq!(canon, brute_isomorphic(a, b), "{} vs {}", a.name(), b.name());
    }
    canon
}

#[test]
fn z12_localization_and_quotient_are_the_length_two_chain() {
    let z12 = zmod(12);
    let c2 = generate(&FamilySpec::ChainPower { k: 2 }).unwrap();
    let loc = localize_at_prime(&z12, z12.resolve("2Z").unwrap()).unwrap();
    assert!(same(&loc.lattice, &c2));
    let q = quotient(&z12, z12.resolve("4Z").unwrap()).unwrap();
    assert!(same(&q.lattice, &c2));
    let other = localize_at_prime(&z12, z12.resolve("3Z").unwrap()).unwrap();
    assert!(same(&other.lattice, &generate(&FamilySpec::ChainPower { k: 1 }).unwrap()));
}

fn valuation(m: u64, p: u64) -> u32 {
    let (mut m, mut v) = (m, 0);
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

#[test]
fn zmod_localizations_are_prime_power_chains() {
    for m in 2..=60u64 {
        let l = zmod(m);
        for p in (2..=m).filter(|p| m % p == 0 && (2..*p).all(|k| p % k != 0)) {
            let name = if p == m { "0".to_string() } else { format!("{p}Z") };
            let loc = localize_at_prime(&l, l.resolve(&name).unwrap()).unwrap();
            assert!(same(&loc.lattice, &zmod(p.pow(valuation(m, p)))), "Z/{m} at {p}");
        }
    }
}

#[test]
fn zmod_quotients_are_smaller_zmods() {
    for m in 2..=60u64 {
        let l = zmod(m);
        for d in (2..m).filter(|d| m % d == 0) {
            let q = quotient(&l, l.resolve(&format!("{d}Z")).unwrap()).unwrap();
            assert!(same(&q.lattice, &zmod(d)), "Z/{m} mod {d}");
            assert_eq!(q.embed.len(), q.lattice.len());
            for a in l.elements() {
                assert_eq!(q.embed.apply(q.map.apply(a)), l.join(a, l.resolve(&format!("{d}Z")).unwrap()));
            }
        }
    }
}

fn localization_sets() -> Vec<(String, MultLattice, Vec<usize>)> {
    corpus()
        .into_iter()
        .filter_map(|(spec, _)| match &spec {
            FamilySpec::Localization { base, at } => {
                let b = generate(base).unwrap();
                let s: Vec<usize> = match at {
                    Localizer::Prime(p) => prime_complement(&b, b.resolve(p).unwrap())
                        .iter()
                        .map(|x| x.index())
                        .collect(),
                    Localizer::Set(names) => names.iter().map(|n| b.resolve(n).unwrap().index()).collect(),
                };
                Some((spec.to_string(), b, s))
            }
            _ => None,
        })
        .collect()
}

#[test]
fn corpus_saturations_are_closure_operators() {
    let sets = localization_sets();
    assert!(sets.len() >= 20);
    for (spec, l, s) in sets {
        let t = Tables::of(&l);
        let want = naive_saturation(&t, &s);
        let ids: Vec<_> = s.iter().map(|&i| l.element(i).unwrap()).collect();
        let sat = saturation(&l, &ids);
        let got: Vec<usize> = sat.iter().map(|x| x.index()).collect();
        assert_eq!(got, want, "{spec}");
        for a in 0..t.n {
            assert!(t.leq[a][want[a]], "{spec}: not extensive at {a}");
            assert_eq!(want[want[a]], want[a], "{spec}: not idempotent at {a}");
            for b in 0..t.n {
                if t.leq[a][b] {
                    assert!(t.leq[want[a]][want[b]], "{spec}: not monotone at {a},{b}");
                }
            }
        }
        check_saturation(&l, &sat).unwrap();
    }
}

#[test]
fn localize_rejects_bad_sets() {
    let l = zmod(12);
    let two = l.resolve("2Z").unwrap();
    let three = l.resolve("3Z").unwrap();
    assert!(matches!(localize(&l, &[two]), Err(ConstructionError::MissingTop)));
    assert!(matches!(
        localize(&l, &[l.top(), two, three]),
        Err(ConstructionError::NotClosed { .. })
    ));
    assert!(matches!(
        localize_at_prime(&l, l.resolve("4Z").unwrap()),
        Err(ConstructionError::NotPrime(_))
    ));
}

#[test]
fn product_hollow_set_and_kappa_follow_coordinates() {
    let ls = distinct_corpus();
    let mut pairs = 0;
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i..] {
            if a.len() * b.len() > 36 {
                continue;
            }
            pairs += 1;
            let bad = product_mismatches(a, b);
            assert!(bad.is_empty(), "{bad:#?}");
        }
    }
    assert!(pairs > 50, "only {pairs} pairs");
}

#[test]
fn product_ids_are_mixed_radix() {
    let a = generate(&FamilySpec::B4).unwrap();
    let b = generate(&FamilySpec::ChainPower { k: 2 }).unwrap();
    let p = product(&[&a, &b]).unwrap();
    assert_eq!(p.len(), 12);
    assert_eq!(p.element_name(p.element(5).unwrap()), "(m,1)");
    assert_eq!(p.top().index(), 11);
    let hollow: Vec<&str> = p
        .elements()
        .filter(|&x| is_strongly_hollow(&p, x))
        .map(|x| p.element_name(x))
        .collect();
    assert_eq!(hollow, ["(0,0)", "(0,p)", "(0,1)", "(m,0)", "(n,0)"]);
}

#[test]
fn product_too_large_is_an_error() {
    let b = generate(&FamilySpec::Boolean { k: 4 }).unwrap();
    assert!(matches!(product(&[&b, &b]), Err(ConstructionError::TooLarge(256))));
}
