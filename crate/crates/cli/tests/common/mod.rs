//! Printed listings over one generator `a`, in increasing order, transcribed into
//! the expression grammar. A vertex coloured by `⟦a, a⟧` becomes `bk(a, a)`.

#![allow(dead_code)]

use ply_core::bases::{to_shat, to_t};
use ply_core::syntax::{eval, parse};
use ply_core::{Alphabet, LinComb, ShatElem, TElem};

/// S, by vertex count 1..=5.
pub const S_LISTING: [&[&str]; 5] = [
    &["a"],
    &["gr(a; a)"],
    &["gr(gr(a; a); a)", "sg(a, a; a)"],
    &[
        "gr(gr(gr(a; a); a); a)",
        "gr(sg(a, a; a); a)",
        "tri(lb(gr(a; a), a), a)",
        "sg(gr(a; a), a; a)",
        "sg(a, a, a; a)",
    ],
    &[
        "gr(gr(gr(gr(a; a); a); a); a)",
        "gr(gr(sg(a, a; a); a); a)",
        "gr(tri(lb(gr(a; a), a), a); a)",
        "gr(sg(gr(a; a), a; a); a)",
        "gr(sg(a, a, a; a); a)",
        "tri(lb(gr(gr(a; a); a), a), a)",
        "tri(lb(sg(a, a; a), a), a)",
        "sg(gr(gr(a; a); a), a; a)",
        "sg(sg(a, a; a), a; a)",
        "sg(gr(a; a), gr(a; a); a)",
        "tri(w(lb(gr(a; a), a), a), a)",
        "tri(w(a, lb(gr(a; a), a)), a)",
        "sg(gr(a; a), a, a; a)",
        "sg(a, a, a, a; a)",
    ],
];

/// Ŝ, by vertex count 1..=4.
pub const SHAT_LISTING: [&[&str]; 4] = [
    &["a"],
    &["bk(a, a)", "gr(a; a)"],
    &[
        "bk(a, bk(a, a))",
        "bk(a, gr(a; a))",
        "bk(bk(a, a), a)",
        "bk(gr(a; a), a)",
        "gr(a; bk(a, a))",
        "gr(bk(a, a); a)",
        "gr(gr(a; a); a)",
        "sg(a, a; a)",
    ],
    &[
        "bk(a, bk(a, bk(a, a)))",
        "bk(a, bk(a, gr(a; a)))",
        "bk(a, bk(bk(a, a), a))",
        "bk(a, bk(gr(a; a), a))",
        "bk(a, gr(a; bk(a, a)))",
        "bk(a, gr(bk(a, a); a))",
        "bk(a, gr(gr(a; a); a))",
        "bk(a, sg(a, a; a))",
        "bk(bk(a, a), bk(a, a))",
        "bk(bk(a, a), gr(a; a))",
        "bk(gr(a; a), bk(a, a))",
        "bk(gr(a; a), gr(a; a))",
        "bk(bk(a, bk(a, a)), a)",
        "bk(bk(a, gr(a; a)), a)",
        "bk(bk(bk(a, a), a), a)",
        "bk(bk(gr(a; a), a), a)",
        "bk(gr(a; bk(a, a)), a)",
        "bk(gr(bk(a, a); a), a)",
        "bk(gr(gr(a; a); a), a)",
        "bk(sg(a, a; a), a)",
        "gr(a; bk(a, bk(a, a)))",
        "gr(a; bk(a, gr(a; a)))",
        "gr(a; bk(bk(a, a), a))",
        "gr(a; bk(gr(a; a), a))",
        "gr(bk(a, a); bk(a, a))",
        "gr(gr(a; a); bk(a, a))",
        "sg(a, a; bk(a, a))",
        "gr(bk(a, bk(a, a)); a)",
        "gr(bk(a, gr(a; a)); a)",
        "gr(bk(bk(a, a), a); a)",
        "gr(bk(gr(a; a), a); a)",
        "gr(gr(a; bk(a, a)); a)",
        "gr(gr(bk(a, a); a); a)",
        "gr(gr(gr(a; a); a); a)",
        "gr(sg(a, a; a); a)",
        "tri(lb(bk(a, a), a), a)",
        "tri(lb(gr(a; a), a), a)",
        "sg(bk(a, a), a; a)",
        "sg(gr(a; a), a; a)",
        "sg(a, a, a; a)",
    ],
];

/// ℬ, by vertex count 1..=5, in ≺_𝒯 order.
pub const B_LISTING: [&[&str]; 5] = [
    &["a"],
    &["gr(a; a)"],
    &["bk(gr(a; a), a)", "gr(gr(a; a); a)", "sg(a, a; a)"],
    &[
        "bk(bk(gr(a; a), a), a)",
        "bk(gr(gr(a; a); a), a)",
        "bk(sg(a, a; a), a)",
        "gr(bk(gr(a; a), a); a)",
        "gr(gr(gr(a; a); a); a)",
        "gr(sg(a, a; a); a)",
        "tb(gr(a; a), a, a)",
        "sg(gr(a; a), a; a)",
        "sg(a, a, a; a)",
    ],
    &[
        "bk(bk(bk(gr(a; a), a), a), a)",
        "bk(bk(gr(a; a), a), gr(a; a))",
        "bk(bk(gr(gr(a; a); a), a), a)",
        "bk(bk(sg(a, a; a), a), a)",
        "bk(gr(gr(a; a); a), gr(a; a))",
        "bk(sg(a, a; a), gr(a; a))",
        "bk(gr(bk(gr(a; a), a); a), a)",
        "bk(gr(gr(gr(a; a); a); a), a)",
        "bk(gr(sg(a, a; a); a), a)",
        "bk(tb(gr(a; a), a, a), a)",
        "bk(sg(gr(a; a), a; a), a)",
        "bk(sg(a, a, a; a), a)",
        "gr(bk(bk(gr(a; a), a), a); a)",
        "gr(bk(gr(gr(a; a); a), a); a)",
        "gr(bk(sg(a, a; a), a); a)",
        "gr(gr(bk(gr(a; a), a); a); a)",
        "gr(gr(gr(gr(a; a); a); a); a)",
        "gr(gr(sg(a, a; a); a); a)",
        "gr(tb(gr(a; a), a, a); a)",
        "gr(sg(gr(a; a), a; a); a)",
        "gr(sg(a, a, a; a); a)",
        "tb(bk(gr(a; a), a), a, a)",
        "tb(gr(gr(a; a); a), a, a)",
        "tb(sg(a, a; a), a, a)",
        "sg(gr(a; a), gr(a; a); a)",
        "sg(bk(gr(a; a), a), a; a)",
        "sg(gr(gr(a; a); a), a; a)",
        "sg(sg(a, a; a), a; a)",
        "tb(gr(a; a), a, gr(a; a))",
        "sg(gr(a; a), a, a; a)",
        "sg(a, a, a, a; a)",
    ],
];

fn single<K: Ord + Clone>(x: LinComb<K>, text: &str) -> K {
    let terms: Vec<_> = x.iter().collect();
    assert!(terms.len() == 1 && terms[0].1 == &ply_core::lincomb::rat(1, 1), "`{text}` is not a single basis element");
    terms[0].0.clone()
}

/// The Ŝ element a listing entry denotes.
pub fn shat_of(text: &str) -> ShatElem {
    let al = Alphabet::first(1);
    let v = eval(&parse(text, &al).unwrap(), None).unwrap().into_a().unwrap();
    single(to_shat(&v), text)
}

/// The 𝒯 element a listing entry denotes.
pub fn t_of(text: &str) -> TElem {
    let al = Alphabet::first(1);
    let v = eval(&parse(text, &al).unwrap(), None).unwrap().into_a().unwrap();
    single(to_t(&v), text)
}

/// `β_n = 2^{n−1} k^n C(2n−2, n−1) / n`.
pub fn beta(n: u32, k: u128) -> u128 {
    let n128 = n as u128;
    let mut binom: u128 = 1;
    for i in 0..(n128 - 1) {
        binom = binom * (2 * n128 - 2 - i) / (i + 1);
    }
    (1u128 << (n - 1)) * k.pow(n) * binom / n128
}

/// `k^n C(2n−2, n−1) / n`, the number of planar rooted trees coloured by `k` colours.
pub fn catalan(n: u32, k: u128) -> u128 {
    beta(n, k) >> (n - 1)
}
