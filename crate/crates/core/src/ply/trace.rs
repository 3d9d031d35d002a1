//! Rewrite traces: flattening, replay, auditing, and line-delimited JSON.

use std::sync::Arc;

use num_traits::One;
use serde_json::{json, Map, Value as Json};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::basis::is_b;
use super::relations::{RelationInstance, Rule};
use crate::bases::{from_t, to_t, TElem};
use crate::free::AElem;
use crate::lincomb::{fmt_rational, LinComb, Rational};
use crate::syntax::{comb_expr, comb_text, eval, parse, EvalError, Expr, E};
use crate::term::Alphabet;

#[derive(Clone, Debug)]
pub(crate) enum Piece {
    Step(RelationInstance),
    /// `scale · frame[inner]`, the frame being the bare hole when absent.
    Sub { frame: Option<E>, scale: Rational, inner: Arc<[Piece]> },
}

/// The relation instances subtracted from the input, in order, to reach the output.
///
/// Sub-traces of memoized normal forms are shared; [`RewriteTrace::steps`] flattens them.
#[derive(Clone, Debug, Default)]
pub struct RewriteTrace {
    pieces: Vec<Piece>,
}

fn flatten(pieces: &[Piece], frame: Option<&E>, scale: &Rational, out: &mut Vec<RelationInstance>) {
    for p in pieces {
        match p {
            Piece::Step(s) => out.push(match frame {
                Some(f) => s.wrapped(f, scale),
                None => RelationInstance { coeff: &s.coeff * scale, ..s.clone() },
            }),
            Piece::Sub { frame: f, scale: s, inner } => {
                let composed = match (frame, f) {
                    (None, None) => None,
                    (Some(a), None) => Some(a.clone()),
                    (None, Some(b)) => Some(b.clone()),
                    (Some(a), Some(b)) => Some(a.plug(b)),
                };
                flatten(inner, composed.as_ref(), &(scale * s), out);
            }
        }
    }
}

fn count(pieces: &[Piece]) -> usize {
    pieces
        .iter()
        .map(|p| match p {
            Piece::Step(_) => 1,
            Piece::Sub { inner, .. } => count(inner),
        })
        .sum()
}

impl RewriteTrace {
    pub(crate) fn from_pieces(pieces: Vec<Piece>) -> Self {
        RewriteTrace { pieces }
    }

    pub fn from_steps(steps: Vec<RelationInstance>) -> Self {
        RewriteTrace { pieces: steps.into_iter().map(Piece::Step).collect() }
    }

    /// Number of relation instances.
    pub fn len(&self) -> usize {
        count(&self.pieces)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flattened steps with their contexts composed.
    pub fn steps(&self) -> Vec<RelationInstance> {
        let mut out = Vec::new();
        flatten(&self.pieces, None, &Rational::one(), &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("step {index}: {reason}")]
    Step { index: usize, reason: String },
    #[error("replay does not reproduce the output")]
    FinalMismatch,
    #[error("output term {0} is not in the basis")]
    NotInBasis(String),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

/// First 16 hex digits of SHA-256 of the canonical printed form.
pub fn state_hash(x: &AElem) -> String {
    let digest = Sha256::digest(comb_text(x, |a, b| a.cmp(b)).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn step_value(index: usize, s: &RelationInstance) -> Result<AElem, TraceError> {
    if s.bindings.len() != s.rule.vars().len() {
        return Err(TraceError::Step { index, reason: format!("{} needs {} bindings", s.rule, s.rule.vars().len()) });
    }
    let v = s.value().map_err(|e: EvalError| TraceError::Step { index, reason: e.to_string() })?;
    if s.rule.is_identity() && !v.is_zero() {
        return Err(TraceError::Step { index, reason: format!("{} instance does not vanish", s.rule) });
    }
    Ok(v)
}

/// States before each step and after the last one.
pub fn replay(input: &AElem, steps: &[RelationInstance]) -> Result<Vec<AElem>, TraceError> {
    let mut states = vec![input.clone()];
    for (i, s) in steps.iter().enumerate() {
        let v = step_value(i, s)?;
        let next = states.last().unwrap() - &v;
        states.push(next);
    }
    Ok(states)
}

/// Audits a trace: every step is a well-formed instance, replay reaches the output, and
/// the output lies in the span of ℬ.
pub fn check_trace(input: &AElem, output: &LinComb<TElem>, trace: &RewriteTrace) -> Result<(), TraceError> {
    if let Some(t) = output.keys().find(|t| !is_b(t)) {
        return Err(TraceError::NotInBasis(t.to_string()));
    }
    let mut state = input.clone();
    for (i, s) in trace.steps().iter().enumerate() {
        state = &state - &step_value(i, s)?;
    }
    if state == from_t(output) {
        Ok(())
    } else {
        Err(TraceError::FinalMismatch)
    }
}

/// Line-delimited JSON: a header record, then one record per step with state hashes.
pub fn trace_to_jsonl(
    alphabet: &Alphabet,
    input: &AElem,
    output: &LinComb<TElem>,
    trace: &RewriteTrace,
) -> Result<String, TraceError> {
    let steps = trace.steps();
    let states = replay(input, &steps)?;
    let input_expr = comb_expr(input, |t| Expr::Magma(t.clone()));
    let output_expr = comb_expr(output, |t| Expr::T(t.clone()));
    let header = json!({
        "type": "header",
        "generators": alphabet.gens().iter().map(|g| g.name().to_string()).collect::<Vec<_>>(),
        "input": input_expr.to_string(),
        "output": output_expr.to_string(),
        "input_hash": state_hash(input),
        "output_hash": state_hash(&from_t(output)),
        "steps": steps.len(),
    });
    let mut out = header.to_string();
    out.push('\n');
    for (i, s) in steps.iter().enumerate() {
        let mut b = Map::new();
        for (name, e) in s.rule.vars().iter().zip(&s.bindings) {
            b.insert(name.to_string(), Json::String(e.to_string()));
        }
        let rec = json!({
            "type": "step",
            "index": i,
            "rule": s.rule.id(),
            "bindings": b,
            "context": s.context.to_string(),
            "coeff": fmt_rational(&s.coeff),
            "before": state_hash(&states[i]),
            "after": state_hash(&states[i + 1]),
        });
        out.push_str(&rec.to_string());
        out.push('\n');
    }
    Ok(out)
}

/// A trace read back from [`trace_to_jsonl`] output.
#[derive(Clone, Debug)]
pub struct TraceFile {
    pub alphabet: Alphabet,
    pub input: AElem,
    pub output: AElem,
    pub steps: Vec<RelationInstance>,
    hashes: Vec<(String, String)>,
}

fn field<'a>(v: &'a Json, key: &str, line: usize) -> Result<&'a str, TraceError> {
    v.get(key).and_then(Json::as_str).ok_or_else(|| TraceError::Format { line, reason: format!("missing `{key}`") })
}

fn expr_value(text: &str, alphabet: &Alphabet, line: usize) -> Result<AElem, TraceError> {
    let e = parse(text, alphabet).map_err(|e| TraceError::Format { line, reason: e.to_string() })?;
    eval(&e, None)
        .and_then(|v| v.into_a())
        .map_err(|e| TraceError::Format { line, reason: e.to_string() })
}

impl TraceFile {
    pub fn parse(text: &str) -> Result<Self, TraceError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, reason: String| TraceError::Format { line: line + 1, reason };
        let (hl, head) = lines.next().ok_or_else(|| bad(0, "empty trace".into()))?;
        let head: Json = serde_json::from_str(head).map_err(|e| bad(hl, e.to_string()))?;
        let names: Vec<String> = head
            .get("generators")
            .and_then(Json::as_array)
            .ok_or_else(|| bad(hl, "missing `generators`".into()))?
            .iter()
            .map(|g| g.as_str().unwrap_or_default().to_string())
            .collect();
        let alphabet = Alphabet::new(&names).map_err(|e| bad(hl, e.to_string()))?;
        let input = expr_value(field(&head, "input", hl + 1)?, &alphabet, hl + 1)?;
        let output = expr_value(field(&head, "output", hl + 1)?, &alphabet, hl + 1)?;
        let (mut steps, mut hashes) = (Vec::new(), Vec::new());
        for (ln, l) in lines {
            let rec: Json = serde_json::from_str(l).map_err(|e| bad(ln, e.to_string()))?;
            let rule: Rule = field(&rec, "rule", ln + 1)?.parse().map_err(|e| bad(ln, e))?;
            let parse_e = |s: &str| parse(s, &alphabet).map_err(|e| bad(ln, e.to_string()));
            let table = rec.get("bindings").and_then(Json::as_object).ok_or_else(|| bad(ln, "missing `bindings`".into()))?;
            let mut bindings = Vec::new();
            for v in rule.vars() {
                let s = table.get(*v).and_then(Json::as_str).ok_or_else(|| bad(ln, format!("missing binding `{v}`")))?;
                bindings.push(parse_e(s)?);
            }
            let context = parse_e(field(&rec, "context", ln + 1)?)?;
            let coeff: Rational = field(&rec, "coeff", ln + 1)?.parse().map_err(|_| bad(ln, "bad coefficient".into()))?;
            steps.push(RelationInstance { rule, bindings, context, coeff });
            hashes.push((field(&rec, "before", ln + 1)?.to_string(), field(&rec, "after", ln + 1)?.to_string()));
        }
        Ok(TraceFile { alphabet, input, output, steps, hashes })
    }

    /// Replays the steps against the recorded hashes and the recorded output.
    pub fn check(&self) -> Result<(), TraceError> {
        if let Some(t) = to_t(&self.output).keys().find(|t| !is_b(t)) {
            return Err(TraceError::NotInBasis(t.to_string()));
        }
        let mut state = self.input.clone();
        for (i, s) in self.steps.iter().enumerate() {
            let (before, after) = &self.hashes[i];
            if state_hash(&state) != *before {
                return Err(TraceError::Step { index: i, reason: "state before the step does not match".into() });
            }
            state = &state - &step_value(i, s)?;
            if state_hash(&state) != *after {
                return Err(TraceError::Step { index: i, reason: "state after the step does not match".into() });
            }
        }
        if state == self.output {
            Ok(())
        } else {
            Err(TraceError::FinalMismatch)
        }
    }
}
