//! ℬ is not linearly independent modulo the relations once six vertices are allowed.
//!
//! With `c = gr(a; a)`, the derivation identity
//! `[x, y, ⟦z, w⟧] = ⟦[x, y, z], w⟧ + ⟦z, [x, y, w]⟧` holds modulo PLY2 alone. At
//! `(x, y, z, w) = (c, a, c, a)` it becomes, after one PLY1 step, a nonzero combination of
//! three distinct elements of ℬ. Both facts are certified by replaying explicit relation
//! instances, without the normalizer.

use num_traits::Zero;
use ply_core::bases::to_t;
use ply_core::ly::LyAxiom;
use ply_core::ply::{check_trace, enumerate_b, is_b, nf, RelationInstance, RewriteTrace, Rule};
use ply_core::syntax::{eval, parse, E};
use ply_core::{AElem, Alphabet, LinComb, TElem};

fn al() -> Alphabet {
    Alphabet::first(2)
}

fn e(s: &str) -> E {
    parse(s, &al()).unwrap()
}

fn value(s: &str) -> AElem {
    eval(&e(s), None).unwrap().into_a().unwrap()
}

fn t(s: &str) -> TElem {
    let x = to_t(&value(s));
    assert_eq!(x.len(), 1, "{s}");
    x.keys().next().unwrap().clone()
}

fn ply2(u: &str, x: &str, y: &str, context: &str, coeff: i64) -> RelationInstance {
    RelationInstance {
        rule: Rule::Ply2,
        bindings: vec![e(u), e(x), e(y)],
        context: e(context),
        coeff: ply_core::lincomb::rat(coeff, 1),
    }
}

/// `[x, y, ⟦z, w⟧] − ⟦[x, y, z], w⟧ − ⟦z, [x, y, w]⟧` and PLY2 instances summing to it.
fn derivation_certificate(x: &str, y: &str, z: &str, w: &str) -> (AElem, Vec<RelationInstance>) {
    let d = value(&format!("tb({x}, {y}, bk({z}, {w})) - bk(tb({x}, {y}, {z}), {w}) - bk({z}, tb({x}, {y}, {w}))"));
    let xy = format!("tri({x}, {y})");
    let yx = format!("tri({y}, {x})");
    let steps = vec![
        ply2(y, z, w, &format!("tri({x}, _)"), 1),
        ply2(x, &format!("tri({y}, {z})"), w, "_", 1),
        ply2(x, z, &format!("tri({y}, {w})"), "_", 1),
        ply2(&xy, z, w, "_", -1),
        ply2(x, z, w, &format!("tri({y}, _)"), -1),
        ply2(y, &format!("tri({x}, {z})"), w, "_", -1),
        ply2(y, z, &format!("tri({x}, {w})"), "_", -1),
        ply2(&yx, z, w, "_", 1),
    ];
    (d, steps)
}

#[test]
fn derivation_identity_holds_modulo_ply2() {
    for (x, y, z, w) in [("a", "b", "a", "b"), ("gr(a; a)", "a", "gr(a; a)", "a"), ("b", "gr(a; b)", "a", "a")] {
        let (d, steps) = derivation_certificate(x, y, z, w);
        assert!(!d.is_zero());
        check_trace(&d, &LinComb::zero(), &RewriteTrace::from_steps(steps)).unwrap();
    }
}

fn dependent_combination() -> LinComb<TElem> {
    let mut out = LinComb::zero();
    out.add_term(t("tb(gr(a; a), a, bk(gr(a; a), a))"), ply_core::lincomb::rat(1, 1));
    out.add_term(t("bk(tb(gr(a; a), a, gr(a; a)), a)"), ply_core::lincomb::rat(-1, 1));
    out.add_term(t("bk(tb(gr(a; a), a, a), gr(a; a))"), ply_core::lincomb::rat(1, 1));
    out
}

#[test]
fn basis_elements_in_the_ideal() {
    let (d, _) = derivation_certificate("gr(a; a)", "a", "gr(a; a)", "a");
    let combo = dependent_combination();
    // One PLY1 step turns ⟦c, [c, a, a]⟧ around.
    let flip = RelationInstance::new(Rule::Ply1, vec![e("gr(a; a)"), e("tb(gr(a; a), a, a)")], ply_core::lincomb::rat(-1, 1));
    check_trace(&d, &combo, &RewriteTrace::from_steps(vec![flip])).unwrap();

    let terms: Vec<&TElem> = combo.keys().collect();
    assert_eq!(terms.len(), 3);
    let b6 = enumerate_b(6, &Alphabet::first(1));
    for t in &terms {
        assert!(is_b(t), "{t}");
        assert!(b6.contains(t), "{t}");
    }
    // The normalizer leaves the combination as it is: it cannot detect the dependency.
    assert_eq!(nf(&ply_core::bases::from_t(&combo)).unwrap(), combo);
}

#[test]
fn ly5_residual_is_the_dependent_combination() {
    let b = |s: &str| LinComb::basis(t(s));
    let r = LyAxiom::Ly5.residual(&[b("a"), b("gr(a; a)"), b("a"), b("gr(a; a)")]).unwrap();
    let combo = dependent_combination();
    let (k, c) = combo.iter().next().unwrap();
    let ratio = r.coeff(k) / c;
    assert!(!ratio.is_zero());
    assert_eq!(r, combo.scale(&ratio));
}

#[test]
fn ply5_residual_with_two_generators() {
    let bind = ["gr(b; b)", "gr(b; a)", "b", "a"].map(|s| ply_core::syntax::Expr::T(t(s)).arc());
    let v = Rule::Ply5.instance_value(&bind).unwrap();
    let out = ply_core::ply::normalize(&v).unwrap();
    check_trace(&v, &out.output, &out.trace).unwrap();
    assert!(!out.output.is_zero());
}

#[test]
fn no_dependency_below_six_vertices() {
    // Every LY and PLY instance over one generator up to five vertices normalizes to zero.
    let cfg = ply_core::checks::CheckConfig { alphabet: Alphabet::first(1), max_vertices: 5, samples: usize::MAX, seed: 0 };
    for s in [ply_core::checks::Suite::PlyAxioms, ply_core::checks::Suite::LyAxioms] {
        let r = ply_core::checks::run_suite(s, &cfg);
        assert!(r.passed(), "{s}: {:?}", r.failures.first());
    }
}
