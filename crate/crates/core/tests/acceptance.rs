//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    corpus, distinct_corpus, fixture, naive_lattice_count, naive_mult_structures,
    naive_saturation, product_mismatches, Tables,
};
use mlat::axioms::{validate, Axiom};
use mlat::constructions::{check_saturation, localize_at_prime, prime_complement, quotient, saturation};
use mlat::family::{default_corpus, generate, FamilySpec, Localizer};
use mlat::format;
use mlat::hollow::{is_completely_strongly_hollow, is_strongly_hollow};
use mlat::lattice::MultLattice;
use mlat::search::{canonical_form, enumerate_lattices, enumerate_mult_structures, mult_lattices};
use mlat::verify::{random_permutation, replay, run_suite, Allowlist, SuiteOptions};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    ensure(t.as_secs_f64() < limit_s, || {
        format!("{what} took {:.2}s, limit {limit_s}s", t.as_secs_f64())
    })
}

fn axioms() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    for (spec, l) in &corpus {
        let r = validate(l);
        ensure(r.valid, || format!("{spec}: {:?}", r.violations))?;
    }
    for (file, axiom) in [
        ("bad-distributivity.lat", Axiom::MulDistributive),
        ("bad-associativity.lat", Axiom::MulAssociative),
        ("mul-exceeds-meet.lat", Axiom::MulBelowMeet),
    ] {
        let l = fixture(file);
        let r = validate(&l);
        let v = r.violated(axiom).ok_or_else(|| format!("{file}: no {axiom}"))?;
        ensure(v.replay(&l), || format!("{file}: witness does not replay"))?;
    }
    within(start.elapsed(), 5.0, "validation")?;
    Ok(format!(
        "{} lattices valid, 3 fixtures named with replayable witnesses, {:.2}s",
        corpus.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn hollow_agreement() -> Outcome {
    let mut ls: Vec<MultLattice> = corpus().into_iter().map(|(_, l)| l).collect();
    let corpus_len = ls.len();
    for n in 1..=5 {
        ls.extend(mult_lattices(n).map_err(|e| e.to_string())?);
    }
    let (mut elements, mut subset_checked) = (0, 0);
    for l in &ls {
        let t = Tables::of(l);
        for a in l.elements() {
            elements += 1;
            let scan = is_strongly_hollow(l, a);
            let by_kappa = is_completely_strongly_hollow(l, a);
            ensure(scan == by_kappa, || format!("{} {}: scan vs kappa", l.name(), a))?;
            if t.n <= 12 {
                subset_checked += 1;
                ensure(t.csh_all_subsets(a.index()) == scan, || {
                    format!("{} {}: subset oracle", l.name(), a)
                })?;
            }
        }
    }
    Ok(format!(
        "{} corpus + {} enumerated lattices, {elements} elements, {subset_checked} against the subset oracle, 0 disagreements",
        corpus_len,
        ls.len() - corpus_len
    ))
}

fn suite() -> Outcome {
    let start = Instant::now();
    let allow = Allowlist::shipped();
    let entries: Vec<(String, FamilySpec)> =
        allow.entries().map(|(c, s)| (c.to_string(), s.clone())).collect();
    ensure(entries.len() <= 1, || format!("allowlist has {} entries", entries.len()))?;
    if let Some((check, spec)) = entries.first() {
        ensure(
            check == "prime-hollow-classification(2=>3)" && *spec == FamilySpec::B4,
            || format!("unexpected allowlist entry {check} {spec}"),
        )?;
    }
    let report = run_suite(
        "default",
        &default_corpus(),
        &["all".into()],
        &SuiteOptions { workers: None, allow },
    )
    .map_err(|e| e.to_string())?;
    let unexpected: Vec<String> =
        report.unexpected().map(|r| format!("{} on {}", r.check, r.lattice)).collect();
    ensure(unexpected.is_empty(), || format!("unexpected: {unexpected:?}"))?;
    let allowed: Vec<_> = report.rows.iter().filter(|r| r.allowed).collect();
    for r in &allowed {
        let w = r.witness().ok_or("allowlisted row without witness")?;
        ensure(replay(&w).map_err(|e| e.to_string())?, || format!("{} on {} does not replay", r.check, r.lattice))?;
    }
    within(start.elapsed(), 60.0, "suite")?;
    Ok(format!(
        "{} lattices x {} directions, 0 unexpected, {} allowlisted rows replay, {:.2}s",
        report.lattices.len(),
        report.checks.len(),
        allowed.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn enumeration() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=5 {
        let got = enumerate_lattices(n).map_err(|e| e.to_string())?.len();
        let naive = naive_lattice_count(n);
        ensure(got == naive, || format!("n={n}: {got} vs naive {naive}"))?;
        counts.push(got);
    }
    ensure(counts == [1, 1, 1, 2, 5], || format!("counts {counts:?}"))?;
    let chain = &enumerate_lattices(3).map_err(|e| e.to_string())?[0];
    let structures = enumerate_mult_structures(chain).len();
    let naive = naive_mult_structures(&Tables::of(chain).leq);
    ensure(structures == 2 && naive == 2, || format!("3-chain: {structures} vs naive {naive}"))?;
    Ok(format!("counts {counts:?} match the naive filter; 3-chain has {structures} structures"))
}

fn constructions() -> Outcome {
    let z12 = generate(&FamilySpec::Zmod { m: 12 }).map_err(|e| e.to_string())?;
    let c2 = canonical_form(&generate(&FamilySpec::ChainPower { k: 2 }).map_err(|e| e.to_string())?);
    let el = |s: &str| z12.resolve(s).map_err(|e| e.to_string());
    let loc = localize_at_prime(&z12, el("2Z")?).map_err(|e| e.to_string())?;
    ensure(canonical_form(&loc.lattice) == c2, || "localization at 2Z".into())?;
    let q = quotient(&z12, el("4Z")?).map_err(|e| e.to_string())?;
    ensure(canonical_form(&q.lattice) == c2, || "quotient by 4Z".into())?;
    let mut checked = 0;
    for spec in default_corpus() {
        let FamilySpec::Localization { base, at } = &spec else { continue };
        let b = generate(base).map_err(|e| e.to_string())?;
        let s = match at {
            Localizer::Prime(p) => prime_complement(&b, b.resolve(p).map_err(|e| e.to_string())?),
            Localizer::Set(names) => names.iter().map(|n| b.resolve(n).unwrap()).collect(),
        };
        let sat = saturation(&b, &s);
        check_saturation(&b, &sat).map_err(|e| format!("{spec}: {e}"))?;
        let t = Tables::of(&b);
        let naive = naive_saturation(&t, &s.iter().map(|x| x.index()).collect::<Vec<_>>());
        ensure(sat.iter().map(|x| x.index()).eq(naive.iter().copied()), || format!("{spec}: saturation"))?;
        for a in 0..t.n {
            ensure(t.leq[a][naive[a]] && naive[naive[a]] == naive[a], || format!("{spec}: closure at {a}"))?;
            for c in 0..t.n {
                ensure(!t.leq[a][c] || t.leq[naive[a]][naive[c]], || format!("{spec}: monotone"))?;
            }
        }
        checked += 1;
    }
    Ok(format!("Z/12 at 2Z and Z/12 mod 4Z equal the 2-chain; {checked} corpus saturations are closure operators"))
}

fn products() -> Outcome {
    let ls = distinct_corpus();
    let mut pairs = 0;
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i..] {
            if a.len() * b.len() > 36 {
                continue;
            }
            pairs += 1;
            let bad = product_mismatches(a, b);
            ensure(bad.is_empty(), || bad.join("; "))?;
        }
    }
    Ok(format!("{pairs} products of non-isomorphic corpus lattices with at most 36 elements"))
}

fn determinism() -> Outcome {
    let corpus = corpus();
    for (spec, l) in &corpus {
        let text = format::write(l);
        let back = format::parse(&text).map_err(|e| format!("{spec}: {e}"))?;
        ensure(format::write(&back) == text && back == *l, || format!("{spec}: round trip"))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (spec, l) in &corpus {
        let form = canonical_form(l);
        for _ in 0..100 {
            let p = l.permuted(&random_permutation(l.len(), &mut rng));
            ensure(canonical_form(&p) == form, || format!("{spec}: canonical form moved"))?;
        }
    }
    let specs = default_corpus();
    let run = |workers| {
        run_suite(
            "default",
            &specs,
            &["all".into()],
            &SuiteOptions { workers: Some(workers), allow: Allowlist::shipped() },
        )
        .map(|r| (r.render_text(false), r.render_tsv()))
        .map_err(|e| e.to_string())
    };
    let (a, b, c) = (run(8)?, run(8)?, run(1)?);
    ensure(a == b, || "two runs differ".into())?;
    ensure(a == c, || "worker counts 1 and 8 differ".into())?;
    Ok(format!(
        "{} round trips byte-identical, 100 relabelings per lattice, reports identical across runs and 1/8 workers",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("axiom validator", axioms),
        ("hollow oracle equivalence", hollow_agreement),
        ("theorem suite", suite),
        ("enumeration regression", enumeration),
        ("construction correctness", constructions),
        ("product coordinates", products),
        ("determinism and round-trip", determinism),
    ];
    let std_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    std::panic::set_hook(std_hook);
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
