//! Self-check suites: relation annihilation, Lie-Yamaguti axioms, LTS Hall rewriting,
//! OSBB round trips, basis census, and the structural lemmas on Ŝ.
//!
//! Every suite is deterministic given its [`CheckConfig`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::bases::{
    beta, catalan_count, cmp_shat, enumerate_bhat, enumerate_s, enumerate_shat, enumerate_t, phi, phi_inv, shat_value,
    t_value, to_shat, ShatElem, TElem,
};
use crate::dalg::{self, DElem};
use crate::free::{self, AElem};
use crate::hall::{enumerate_lts_hall, is_lts_hall, lts_hall_rewrite, Magma3, DEFAULT_HALL_FUEL};
use crate::lincomb::LinComb;
use crate::ly::{check_ly_axioms, lat_degeneration};
use crate::osbb::{enumerate_rank_words, osbb_decompose, osbb_expand, OsbbWord};
use crate::ply::{check_trace, enumerate_b, graded_dim, normalize, Rule};
use crate::sample::TupleGrid;
use crate::syntax::{comb_text, Expr};
use crate::term::{Alphabet, Graded, MagmaTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    PlyAxioms,
    LyAxioms,
    LtsHall,
    OsbbRoundtrip,
    Census,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::PlyAxioms, Suite::LyAxioms, Suite::LtsHall, Suite::OsbbRoundtrip, Suite::Census, Suite::Lemmas];

    pub fn id(self) -> &'static str {
        match self {
            Suite::PlyAxioms => "ply-axioms",
            Suite::LyAxioms => "ly-axioms",
            Suite::LtsHall => "lts-hall",
            Suite::OsbbRoundtrip => "osbb-roundtrip",
            Suite::Census => "census",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.id() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub alphabet: Alphabet,
    pub max_vertices: usize,
    /// Grids larger than this are sampled; `usize::MAX` runs every instantiation.
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    /// Cases per check name.
    pub per_check: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, cases: 0, per_check: BTreeMap::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn case(&mut self, ok: bool, check: impl Into<String>, input: impl fmt::Display, detail: impl FnOnce() -> String) {
        let check = check.into();
        self.cases += 1;
        *self.per_check.entry(check.clone()).or_default() += 1;
        if !ok {
            self.failures.push(Failure { check, input: input.to_string(), detail: detail() });
        }
    }

    /// Failures of one check.
    pub fn failures_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Failure> + 'a {
        self.failures.iter().filter(move |f| f.check == check)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite.id(),
            "cases": self.cases,
            "checks": self.per_check,
            "pass": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "check": f.check,
                "input": f.input,
                "detail": f.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> SuiteReport {
    match suite {
        Suite::PlyAxioms => ply_axioms(cfg),
        Suite::LyAxioms => ly_axioms(cfg),
        Suite::LtsHall => lts_hall(cfg),
        Suite::OsbbRoundtrip => osbb_roundtrip(cfg),
        Suite::Census => census(cfg),
        Suite::Lemmas => lemmas(cfg),
    }
}

fn tuple_text(t: &[TElem]) -> String {
    t.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn t_text(x: &LinComb<TElem>) -> String {
    comb_text(x, crate::bases::cmp_t)
}

/// Every schema PLY1–PLY6 instantiated by ℬ tuples normalizes to zero with a valid trace.
pub fn ply_axioms(cfg: &CheckConfig) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::PlyAxioms);
    for rule in Rule::PLY {
        let grid = TupleGrid::new(&cfg.alphabet, rule.vars().len(), cfg.max_vertices);
        for tup in grid.pick(cfg.samples, cfg.seed) {
            let b: Vec<_> = tup.iter().map(|t| Expr::T(t.clone()).arc()).collect();
            let input = format!("{rule}({})", tuple_text(&tup));
            let v = rule.instance_value(&b).expect("instances of ℬ tuples evaluate");
            match normalize(&v) {
                Err(e) => rep.case(false, rule.id(), input, || e.to_string()),
                Ok(nf) => {
                    let audit = check_trace(&v, &nf.output, &nf.trace);
                    let ok = nf.output.is_zero() && audit.is_ok();
                    rep.case(ok, rule.id(), input, || match audit {
                        Err(e) => format!("trace: {e}"),
                        Ok(()) => format!("residual: {}", t_text(&nf.output)),
                    });
                }
            }
        }
    }
    rep
}

/// LY1–LY6 on ℬ tuples, and the bracket-free degeneration on bracket-free tuples.
pub fn ly_axioms(cfg: &CheckConfig) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::LyAxioms);
    match check_ly_axioms(&cfg.alphabet, cfg.max_vertices, cfg.samples, cfg.seed) {
        Err(e) => rep.case(false, "LY", "", || e.to_string()),
        Ok(reports) => {
            for r in reports {
                let input = format!("{}({})", r.axiom, tuple_text(&r.bindings));
                rep.case(r.pass, r.axiom.id(), input, || format!("residual: {}", t_text(&r.residual)));
            }
        }
    }
    let grid = TupleGrid::new(&cfg.alphabet, 3, cfg.max_vertices);
    for tup in grid.pick(cfg.samples, cfg.seed).into_iter().filter(|t| t.iter().all(|x| x.bracket_count() == 0)) {
        let b: Vec<LinComb<TElem>> = tup.iter().map(|t| LinComb::basis(t.clone())).collect();
        let input = tuple_text(&tup);
        match lat_degeneration(&b[0], &b[1], &b[2]) {
            Err(e) => rep.case(false, "LAT", input, || e.to_string()),
            Ok((bin, tri)) => {
                rep.case(bin.is_zero(), "LAT-binary", &input, || format!("residual: {}", t_text(&bin)));
                rep.case(tri.is_zero(), "LAT-triple", &input, || format!("residual: {}", t_text(&tri)));
            }
        }
    }
    rep
}

/// Dimension of the degree-`n` part of the free Lie algebra on `k` generators.
fn free_lie_dim(n: usize, k: usize) -> u128 {
    fn mobius(mut n: usize) -> i128 {
        let mut m = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if n > 1 {
            -m
        } else {
            m
        }
    }
    let s: i128 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * (k as i128).pow((n / d) as u32)).sum();
    (s / n as i128) as u128
}

fn sample_indices(len: usize, samples: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if len <= samples {
        (0..len).collect()
    } else {
        let mut v = rand::seq::index::sample(rng, len, samples).into_vec();
        v.sort_unstable();
        v
    }
}

/// LTS Hall elements over the alphabet: counts against the odd part of the free Lie algebra,
/// annihilation of skew, cyclic and derivation instances, Hall-only output, idempotence.
pub fn lts_hall(cfg: &CheckConfig) -> SuiteReport {
    type M = Magma3<crate::term::Generator>;
    let mut rep = SuiteReport::new(Suite::LtsHall);
    let letters = cfg.alphabet.gens().to_vec();
    let k = letters.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let hall: Vec<Vec<M>> = (0..=cfg.max_vertices).map(|n| enumerate_lts_hall(n, &letters)).collect();
    for (n, row) in hall.iter().enumerate().skip(1) {
        let want = if n % 2 == 1 { free_lie_dim(n, k) } else { 0 };
        rep.case(row.len() as u128 == want, "count", n, || format!("{} Hall elements, expected {want}", row.len()));
    }
    let all: Vec<&M> = hall.iter().flatten().collect();
    let size = |t: &M| t.foliage().len();
    let rw = |x: &LinComb<M>| lts_hall_rewrite(x, DEFAULT_HALL_FUEL);
    let node = |x: &M, y: &M, z: &M| Magma3::node(x.clone(), y.clone(), z.clone());
    let b = LinComb::basis;

    let mut triples = Vec::new();
    for x in &all {
        for y in &all {
            for z in &all {
                if size(x) + size(y) + size(z) <= cfg.max_vertices {
                    triples.push((*x, *y, *z));
                }
            }
        }
    }
    for i in sample_indices(triples.len(), cfg.samples, &mut rng) {
        let (x, y, z) = triples[i];
        let skew = b(node(x, y, z)) + b(node(y, x, z));
        let cyc = b(node(x, y, z)) + b(node(y, z, x)) + b(node(z, x, y));
        for (name, inst) in [("skew", skew), ("cyclic", cyc)] {
            let input = format!("{x:?}, {y:?}, {z:?}");
            match rw(&inst) {
                Ok(r) => rep.case(r.is_zero(), name, input, || format!("residual: {r:?}")),
                Err(e) => rep.case(false, name, input, || e.to_string()),
            }
        }
        let t = b(node(x, y, z));
        match rw(&t) {
            Ok(r) => {
                let input = format!("[{x:?}, {y:?}, {z:?}]");
                rep.case(r.keys().all(is_lts_hall), "hall-output", &input, || format!("output: {r:?}"));
                let again = rw(&r);
                rep.case(again.as_ref() == Ok(&r), "idempotent", &input, || format!("second pass: {again:?}"));
            }
            Err(e) => rep.case(false, "hall-output", "", || e.to_string()),
        }
    }
    let mut quints = Vec::new();
    for (x, y, z) in &triples {
        let used = size(x) + size(y) + size(z);
        for u in &all {
            for v in &all {
                if used + size(u) + size(v) <= cfg.max_vertices {
                    quints.push((*u, *v, *x, *y, *z));
                }
            }
        }
    }
    for i in sample_indices(quints.len(), cfg.samples, &mut rng) {
        let (u, v, x, y, z) = quints[i];
        let uv = |t: &M| node(u, v, t);
        let inst = b(node(u, v, &node(x, y, z))) - b(node(&uv(x), y, z)) - b(node(x, &uv(y), z)) - b(node(x, y, &uv(z)));
        let input = format!("{u:?}, {v:?}; {x:?}, {y:?}, {z:?}");
        match rw(&inst) {
            Ok(r) => rep.case(r.is_zero(), "derivation", input, || format!("residual: {r:?}")),
            Err(e) => rep.case(false, "derivation", input, || e.to_string()),
        }
    }
    for row in &hall {
        for h in row {
            let r = rw(&b(h.clone()));
            rep.case(r == Ok(b(h.clone())), "fixed-point", format!("{h:?}"), || format!("{r:?}"));
        }
    }
    rep
}

fn multiset(w: &[u8]) -> Vec<u8> {
    let mut v = w.to_vec();
    v.sort_unstable();
    v
}

fn words(k: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..k).map(move |c| [w.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Exhaustive OSBB round trips over `|alphabet|` ordered letters up to length `max_vertices`.
pub fn osbb_roundtrip(cfg: &CheckConfig) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::OsbbRoundtrip);
    let k = cfg.alphabet.len() as u8;
    for len in 1..=cfg.max_vertices {
        for w in words(k, len) {
            let input = format!("{w:?}");
            match osbb_decompose(&LinComb::basis(w.clone())) {
                Err(e) => rep.case(false, "decompose", input, || e.to_string()),
                Ok(d) => {
                    let back = crate::osbb::osbb_expand_comb(&d);
                    rep.case(back == LinComb::basis(w.clone()), "expand-decompose", &input, || format!("{back:?}"));
                    let m = multiset(&w);
                    let kept = d.keys().all(|o| multiset(&o.letters().copied().collect::<Vec<_>>()) == m);
                    rep.case(kept, "letter-multiset", &input, || format!("{d:?}"));
                }
            }
        }
        let mut counts = vec![0usize; k as usize];
        fn each(counts: &mut Vec<usize>, i: usize, left: usize, f: &mut impl FnMut(&[usize])) {
            if i == counts.len() {
                if left == 0 {
                    f(counts);
                }
                return;
            }
            for c in 0..=left {
                counts[i] = c;
                each(counts, i + 1, left - c, f);
            }
            counts[i] = 0;
        }
        let mut osbb: Vec<OsbbWord<u8>> = Vec::new();
        each(&mut counts, 0, len, &mut |c| osbb.extend(enumerate_rank_words(c)));
        for o in osbb {
            let input = format!("{o:?}");
            let e: DElem<u8> = osbb_expand(&o);
            match osbb_decompose(&e) {
                Err(err) => rep.case(false, "decompose", input, || err.to_string()),
                Ok(d) => rep.case(d == LinComb::basis(o.clone()), "decompose-expand", input, || format!("{d:?}")),
            }
            let m = multiset(&o.letters().copied().collect::<Vec<_>>());
            rep.case(e.keys().all(|w| multiset(w) == m), "letter-multiset", format!("{o:?}"), || format!("{e:?}"));
        }
    }
    rep
}

/// Printed 1-generator counts of ℬ.
pub const B_COUNTS_ONE_GENERATOR: [usize; 5] = [1, 1, 3, 9, 31];

/// Basis sizes against the counting formulas and the printed ℬ counts; φ bijective and
/// triangular.
pub fn census(cfg: &CheckConfig) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Census);
    let al = &cfg.alphabet;
    let k = al.len();
    for n in 1..=cfg.max_vertices {
        let s = enumerate_s(n, al).len() as u128;
        rep.case(s == catalan_count(n, k), "S", n, || format!("{s} != {}", catalan_count(n, k)));
        let shat = enumerate_shat(n, al);
        let t = enumerate_t(n, al);
        for (name, got) in [("Bhat", enumerate_bhat(n, al).len()), ("Shat", shat.len()), ("T", t.len())] {
            rep.case(got as u128 == beta(n, k), name, n, || format!("{got} != {}", beta(n, k)));
        }
        if k == 1 && n <= B_COUNTS_ONE_GENERATOR.len() {
            let got = graded_dim(n, 1);
            let want = B_COUNTS_ONE_GENERATOR[n - 1];
            rep.case(got == want, "B", n, || format!("{got} != {want}"));
        }
        let img: BTreeSet<TElem> = shat.iter().map(phi).collect();
        let tset: BTreeSet<TElem> = t.iter().cloned().collect();
        rep.case(img == tset && img.len() == shat.len(), "phi-bijective", n, || "image of Ŝ differs from 𝒯".into());
        for x in &shat {
            let y = phi(x);
            rep.case(phi_inv(&y) == *x, "phi-inverse", x, || format!("φ⁻¹(φ(x)) = {}", phi_inv(&y)));
            let coords = to_shat(&t_value(&y));
            let ok = coords.coeff(x).is_one()
                && coords.keys().all(|s| s == x || cmp_shat(s, x) == Ordering::Less);
            rep.case(ok, "phi-triangular", x, || format!("φ(x) = {}", comb_text(&coords, cmp_shat)));
        }
        for y in &t {
            rep.case(phi(&phi_inv(y)) == *y, "phi-inverse", y, || format!("φ(φ⁻¹(t)) = {}", phi(&phi_inv(y))));
        }
        let b = enumerate_b(n, al);
        rep.case(b.iter().all(crate::ply::is_b), "B-members", n, || "non-member enumerated".into());
    }
    rep
}

fn word_value(w: &OsbbWord<ShatElem>) -> DElem<MagmaTerm> {
    let mut out = LinComb::zero();
    for (word, c) in osbb_expand(w).iter() {
        let letters: Vec<AElem> = word.iter().map(shat_value).collect();
        out.add_scaled(&dalg::letters_word(&letters), c);
    }
    out
}

fn word_len(s: &ShatElem) -> usize {
    s.word().len()
}

struct Pool {
    by_n: Vec<Vec<ShatElem>>,
    rng: ChaCha8Rng,
}

impl Pool {
    fn pick(&mut self, n: usize) -> ShatElem {
        let row = &self.by_n[n];
        row[self.rng.gen_range(0..row.len())].clone()
    }

    /// `parts` random elements with vertex counts summing to a random total in `[parts, max]`.
    fn tuple(&mut self, parts: usize, max: usize) -> Vec<ShatElem> {
        let total = self.rng.gen_range(parts..=max);
        let mut sizes = vec![1; parts];
        for _ in parts..total {
            let i = self.rng.gen_range(0..parts);
            sizes[i] += 1;
        }
        sizes.into_iter().map(|n| self.pick(n)).collect()
    }

    fn graft(&mut self, max: usize) -> ShatElem {
        loop {
            let n = self.rng.gen_range(2..=max);
            let x = self.pick(n);
            if !x.is_root() {
                return x;
            }
        }
    }
}

/// Root, length, vertex and bracket conditions on the Ŝ expansion of a product.
fn shape(
    rep: &mut SuiteReport,
    check: &str,
    input: String,
    value: &AElem,
    root: &ShatElem,
    len: usize,
    vertices: usize,
    brackets: usize,
) {
    let coords = to_shat(value);
    let ok = !coords.is_zero()
        && coords.keys().all(|t| t.root() == root && t.vertex_count() == vertices && t.bracket_count() == brackets)
        && coords.keys().map(word_len).max() == Some(len);
    rep.case(ok, check, input, || format!("expansion: {}", comb_text(&coords, cmp_shat)));
}

/// Lemma on `x ▷ z`, its corollary on `[x, y, z]` and `η ▷ z`, and the leading term of
/// `𝔰(x₁⋯xₙ) ▷ [y, z, w]`, each on `samples` seeded instances; draws with `y = z` are redrawn.
pub fn lemmas(cfg: &CheckConfig) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Lemmas);
    let max = cfg.max_vertices.max(2);
    let by_n = (0..max).map(|n| if n == 0 { Vec::new() } else { enumerate_shat(n, &cfg.alphabet) }).collect();
    let mut pool = Pool { by_n, rng: ChaCha8Rng::seed_from_u64(cfg.seed) };
    let count = cfg.samples.min(100_000);
    for _ in 0..count {
        let t = pool.tuple(2, max);
        let (x, z) = (&t[0], &t[1]);
        let v = free::tri(&shat_value(x), &shat_value(z));
        let input = format!("{x} ▷ {z}");
        let (vc, bc) = (x.vertex_count() + z.vertex_count(), x.bracket_count() + z.bracket_count());
        shape(&mut rep, "lemma-product", input, &v, z.root(), word_len(z) + 1, vc, bc);
    }
    let (mut done, mut tries) = (0, 0);
    while done < count && tries < 50 * count {
        tries += 1;
        let t = pool.tuple(3, max);
        if t[0] == t[1] {
            continue;
        }
        done += 1;
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        let v = free::tb(&shat_value(x), &shat_value(y), &shat_value(z));
        let input = format!("[{x}, {y}, {z}]");
        let vc = t.iter().map(Graded::vertex_count).sum();
        let bc = t.iter().map(Graded::bracket_count).sum();
        shape(&mut rep, "corollary-triple", input, &v, z.root(), word_len(z) + 2, vc, bc);
    }
    for _ in 0..count {
        let g = pool.graft(max - 1);
        let eta = g.word();
        let left = max - g.vertex_count() + g.root().vertex_count();
        let z = pool.tuple(1, left.max(1)).remove(0);
        let v = free::act(&word_value(&eta), &shat_value(&z));
        let input = format!("{eta:?} ▷ {z}");
        let vc = eta.letters().map(Graded::vertex_count).sum::<usize>() + z.vertex_count();
        let bc = eta.letters().map(Graded::bracket_count).sum::<usize>() + z.bracket_count();
        shape(&mut rep, "corollary-word", input, &v, z.root(), word_len(&z) + eta.len(), vc, bc);
    }
    let (mut done, mut tries) = (0, 0);
    while done < count && tries < 50 * count {
        tries += 1;
        let n = pool.rng.gen_range(0..=2usize).min(max.saturating_sub(3));
        let t = pool.tuple(n + 3, max.max(n + 3));
        if t[n] == t[n + 1] {
            continue;
        }
        done += 1;
        let (xs, rest) = t.split_at(n);
        let (y, z, w) = (&rest[0], &rest[1], &rest[2]);
        let xv: Vec<AElem> = xs.iter().map(shat_value).collect();
        let lhs = free::sym_act(&xv, &free::tb(&shat_value(y), &shat_value(z), &shat_value(w)));
        let lead_word = dalg::tensor_mul(
            &dalg::tensor_mul(&dalg::sym_letters(&xv), &dalg::lie_word(&dalg::letter(&shat_value(y)), &dalg::letter(&shat_value(z)))),
            &word_value(&w.word()),
        );
        let lead = free::act(&lead_word, &shat_value(w.root()));
        let top = n + 2 + word_len(w);
        let rest_coords = to_shat(&(&lhs - &lead));
        let lhs_coords = to_shat(&lhs);
        let ok = rest_coords.keys().all(|t| word_len(t) < top)
            && lhs_coords.keys().map(word_len).max() == Some(top)
            && lhs_coords.keys().all(|t| t.root() == w.root());
        let input = format!("𝔰({}) ▷ [{y}, {z}, {w}]", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
        rep.case(ok, "largest-term", input, || format!("remainder: {}", comb_text(&rest_coords, cmp_shat)));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_values() {
        assert_eq!((1..=7).map(|n| free_lie_dim(n, 2)).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6, 9, 18]);
        assert_eq!(free_lie_dim(5, 3), 48);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = CheckConfig { alphabet: Alphabet::first(1), max_vertices: 4, samples: 50, seed: 1 };
        for s in Suite::ALL {
            let r = run_suite(s, &cfg);
            assert!(r.passed(), "{s}: {:?}", r.failures.first());
            assert!(r.cases > 0, "{s}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
