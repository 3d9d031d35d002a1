//! The eleven acceptance criteria, one PASS/FAIL line each. Every comparison is exact.
//!
//! Criteria 7 and 10 fail: from six vertices on, ℬ is not independent modulo the
//! relations (the core crate's `counterexample` test gives an explicit certificate). The test asserts
//! that exactly these two fail, so any other regression, or a change in the known
//! failures, is caught.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{beta, catalan, shat_of, t_of, B_LISTING, SHAT_LISTING, S_LISTING};
use ply_core::bases::{cmp_shat, enumerate_bhat, enumerate_shat, enumerate_t, phi, phi_inv, t_value, to_shat};
use ply_core::checks::{run_suite, CheckConfig, Suite, SuiteReport};
use ply_core::ly::lat_diagram_defect;
use ply_core::ply::{check_trace, enumerate_b, Normalizer, Strategy, DEFAULT_FUEL};
use ply_core::{AElem, Alphabet, MagmaTerm};

const KNOWN_FAILING: [usize; 2] = [7, 10];
const SEED: u64 = 20_240_601;

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn dims(basis: &str, max_n: usize, gens: usize) -> Vec<u128> {
    let out = ply_cli::run(["ply", "dims", "--basis", basis, "--max-n", &max_n.to_string(), "--gens", &gens.to_string()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout.split_whitespace().map(|s| s.parse().unwrap()).collect()
}

fn summary(r: &SuiteReport) -> String {
    let mut by: BTreeMap<&str, usize> = BTreeMap::new();
    for f in &r.failures {
        *by.entry(f.check.as_str()).or_default() += 1;
    }
    if by.is_empty() {
        format!("{} cases", r.cases)
    } else {
        let parts: Vec<String> = by.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        format!("{} cases, failures {}", r.cases, parts.join(", "))
    }
}

fn cfg(gens: usize, max_vertices: usize, samples: usize) -> CheckConfig {
    CheckConfig { alphabet: Alphabet::first(gens), max_vertices, samples, seed: SEED }
}

/// A random magma term with exactly `n` vertices.
fn random_term(n: usize, al: &Alphabet, rng: &mut ChaCha8Rng) -> MagmaTerm {
    if n == 1 {
        return al.gen(rng.gen_range(0..al.len()));
    }
    if rng.gen_bool(0.4) {
        let l = rng.gen_range(1..n);
        return MagmaTerm::brk(random_term(l, al, rng), random_term(n - l, al, rng));
    }
    let root_size = if n >= 3 && rng.gen_bool(0.25) { rng.gen_range(2..n) } else { 1 };
    let root = if root_size == 1 {
        random_term(1, al, rng)
    } else {
        let l = rng.gen_range(1..root_size);
        MagmaTerm::brk(random_term(l, al, rng), random_term(root_size - l, al, rng))
    };
    let mut left = n - root_size;
    let mut branches = Vec::new();
    while left > 0 {
        let k = rng.gen_range(1..=left);
        branches.push(random_term(k, al, rng));
        left -= k;
    }
    MagmaTerm::graft(branches, root)
}

/// A combination of up to three random terms of at most `max` vertices with small coefficients.
fn random_input(max: usize, al: &Alphabet, rng: &mut ChaCha8Rng) -> AElem {
    let mut x = AElem::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let n = rng.gen_range(1..=max);
        let c = ply_core::lincomb::rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        x.add_term(random_term(n, al, rng), c);
    }
    x
}

fn c1() -> Outcome {
    let t = Instant::now();
    let got = dims("S", 5, 1);
    let listed: Vec<u128> = S_LISTING.iter().map(|r| r.len() as u128).collect();
    let formula: Vec<u128> = (1..=5).map(|n| catalan(n, 1)).collect();
    let el = t.elapsed();
    Outcome {
        id: 1,
        title: "S census",
        pass: got == [1, 1, 2, 5, 14] && got == listed && got == formula && el < Duration::from_secs(1),
        detail: format!("{got:?} in {el:.2?}"),
    }
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut rows = Vec::new();
    for (gens, max) in [(1usize, 5usize), (2, 4)] {
        let want: Vec<u128> = (1..=max as u32).map(|n| beta(n, gens as u128)).collect();
        let al = Alphabet::first(gens);
        let bhat: Vec<u128> = (1..=max).map(|n| enumerate_bhat(n, &al).len() as u128).collect();
        let shat: Vec<u128> = (1..=max).map(|n| enumerate_shat(n, &al).len() as u128).collect();
        let tt: Vec<u128> = (1..=max).map(|n| enumerate_t(n, &al).len() as u128).collect();
        ok &= bhat == want && shat == want && tt == want;
        ok &= dims("Shat", max, gens) == want;
        rows.push(format!("|C|={gens}: {want:?}"));
    }
    let listed: Vec<_> = SHAT_LISTING[3].iter().map(|s| shat_of(s)).collect();
    let listing_ok = listed.len() == 40 && enumerate_shat(4, &Alphabet::first(1)) == listed;
    let el = t.elapsed();
    Outcome {
        id: 2,
        title: "two-operator census",
        pass: ok && listing_ok && el < Duration::from_secs(30),
        detail: format!("{}; 4-vertex Ŝ listing in order: {listing_ok}; {el:.2?}", rows.join(", ")),
    }
}

fn c3() -> Outcome {
    let t = Instant::now();
    let got = dims("B", 5, 1);
    let al = Alphabet::first(1);
    let sets_ok = B_LISTING.iter().enumerate().all(|(i, row)| {
        let mut want: Vec<_> = row.iter().map(|s| t_of(s)).collect();
        want.sort();
        enumerate_b(i + 1, &al) == want
    });
    let el = t.elapsed();
    Outcome {
        id: 3,
        title: "PLY basis census",
        pass: got == [1, 1, 3, 9, 31] && sets_ok && el < Duration::from_secs(60),
        detail: format!("{got:?}; element sets match listings: {sets_ok}; {el:.2?}"),
    }
}

fn c4() -> Outcome {
    let r = run_suite(Suite::OsbbRoundtrip, &cfg(3, 4, usize::MAX));
    Outcome { id: 4, title: "OSBB oracle", pass: r.passed() && r.cases > 0, detail: summary(&r) }
}

fn c5() -> Outcome {
    let al = Alphabet::first(1);
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=5 {
        let shat = enumerate_shat(n, &al);
        let mut image: Vec<_> = shat.iter().map(phi).collect();
        image.sort();
        image.dedup();
        if image != enumerate_t(n, &al) {
            bad.push(format!("φ not onto 𝒯 at {n} vertices"));
        }
        for x in &shat {
            cases += 1;
            let t = phi(x);
            if phi_inv(&t) != *x {
                bad.push(format!("φ⁻¹φ({x}) ≠ {x}"));
            }
            let coords = to_shat(&t_value(&t));
            let lead = coords.coeff(x) == ply_core::lincomb::rat(1, 1);
            let below = coords.keys().filter(|k| *k != x).all(|k| cmp_shat(k, x) == std::cmp::Ordering::Less);
            if !(lead && below) {
                bad.push(format!("φ({x}) not unitriangular"));
            }
        }
    }
    Outcome {
        id: 5,
        title: "φ bijective and triangular",
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{cases} elements") } else { bad[..bad.len().min(3)].join("; ") },
    }
}

fn c6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for gens in [1, 2] {
        let r = run_suite(Suite::Lemmas, &cfg(gens, 6, 250));
        let enough = ["lemma-product", "corollary-triple", "corollary-word", "largest-term"]
            .iter()
            .all(|c| r.per_check.get(*c).copied().unwrap_or(0) >= 200);
        ok &= r.passed() && enough;
        parts.push(format!("|C|={gens}: {} {:?}", summary(&r), r.per_check));
    }
    Outcome { id: 6, title: "structural lemmas", pass: ok, detail: parts.join("; ") }
}

fn c7() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for gens in [1, 2] {
        let r = run_suite(Suite::PlyAxioms, &cfg(gens, 6, 500));
        let trace_failures = r.failures.iter().filter(|f| f.detail.starts_with("trace")).count();
        ok &= r.passed();
        parts.push(format!("|C|={gens}: {}, trace failures {trace_failures}", summary(&r)));
    }
    let el = t.elapsed();
    Outcome {
        id: 7,
        title: "relation annihilation",
        pass: ok && el < Duration::from_secs(600),
        detail: format!("{}; {el:.2?}", parts.join("; ")),
    }
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let al = Alphabet::first(2);
    let mut a = Normalizer::new(Strategy::LargestFirst, DEFAULT_FUEL);
    let mut b = Normalizer::new(Strategy::SmallestFirst, DEFAULT_FUEL);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let x = random_input(5, &al, &mut rng);
        match (a.normalize(&x), b.normalize(&x)) {
            (Ok(p), Ok(q)) => {
                let audits = check_trace(&x, &p.output, &p.trace).is_ok() && check_trace(&x, &q.output, &q.trace).is_ok();
                if p.output != q.output || !audits {
                    bad.push(format!("{x:?}"));
                }
            }
            _ => bad.push(format!("{x:?}: normalization error")),
        }
    }
    Outcome {
        id: 8,
        title: "normal-form well-definedness",
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "200 inputs agree".into() } else { format!("{} disagreements", bad.len()) },
    }
}

fn c9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for gens in [1, 2, 3] {
        let r = run_suite(Suite::LtsHall, &cfg(gens, 5, usize::MAX));
        ok &= r.passed();
        parts.push(format!("{} letters: {}", gens, summary(&r)));
    }
    Outcome { id: 9, title: "LTS Hall", pass: ok, detail: parts.join("; ") }
}

fn c10() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for gens in [1, 2] {
        let r = run_suite(Suite::LyAxioms, &cfg(gens, 6, 500));
        ok &= r.passed();
        parts.push(format!("|C|={gens}: {}", summary(&r)));
    }
    Outcome { id: 10, title: "Lie-Yamaguti", pass: ok, detail: parts.join("; ") }
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let al = Alphabet::first(2);
    let mut bad = 0;
    for _ in 0..200 {
        let x = random_input(5, &al, &mut rng);
        if !lat_diagram_defect(&x).map(|d| d.is_zero()).unwrap_or(false) {
            bad += 1;
        }
    }
    Outcome {
        id: 11,
        title: "commuting diagram",
        pass: bad == 0,
        detail: format!("200 inputs, {bad} defects"),
    }
}

fn main() {
    let criteria: [fn() -> Outcome; 11] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11];
    let mut unexpected = 0;
    for c in criteria {
        let o = c();
        println!("criterion {:>2} {} {}: {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.title, o.detail);
        if o.pass == KNOWN_FAILING.contains(&o.id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from the expected outcome");
        std::process::exit(1);
    }
}
