//! Command-line surface for the `ply` engine.
//!
//! [`run`] takes the full argument vector and returns the exit code with the
//! text destined for stdout and stderr, so it can be driven from tests.

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ply_core::bases::{cmp_shat, cmp_t, enumerate_bhat, enumerate_s, enumerate_shat, enumerate_t, phi_inv, phi_on_a, to_t};
use ply_core::checks::{run_suite, CheckConfig, Suite};
use ply_core::ly::ly_triple;
use ply_core::osbb::{cmp_delta, osbb_decompose};
use ply_core::ply::{enumerate_b, trace_to_jsonl, NormalizeError, Normalizer, Strategy, DEFAULT_FUEL};
use ply_core::syntax::{comb_json, comb_text, eval, identifiers, parse};
use ply_core::{Alphabet, AElem, Graded, LinComb};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FUEL: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ply", version, about = "Exact computations in the free post-Lie-Yamaguti algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite an expression to its normal form in the span of ℬ.
    Normalize {
        expr: String,
        /// Generator names (`a,b`) or a count (`2`); inferred from the expression when absent.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        /// Write the rewrite trace as line-delimited JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List the basis elements with `n` vertices.
    Enum {
        #[arg(long, value_enum)]
        basis: BasisKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        gens: String,
        #[arg(long)]
        json: bool,
    },
    /// Graded dimensions for `n = 1..=max-n`.
    Dims {
        #[arg(long, value_enum)]
        basis: BasisKind,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "1")]
        gens: String,
    },
    /// OSBB decomposition of a tensor-word expression.
    Osbb {
        expr: String,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The automorphism φ, expanded in 𝒯.
    Phi {
        expr: String,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The inverse of φ, expanded in Ŝ.
    PhiInv {
        expr: String,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The Lie-Yamaguti triple product `{x, y, z}` in normal form.
    Ly {
        x: String,
        y: String,
        z: String,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and print a JSON report.
    Check {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Instantiations per grid; grids at most this large run exhaustively.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1")]
        gens: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    #[value(name = "S")]
    S,
    #[value(name = "Bhat")]
    Bhat,
    #[value(name = "Shat")]
    Shat,
    #[value(name = "T")]
    T,
    #[value(name = "B")]
    B,
    #[value(name = "LAT")]
    Lat,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Basis elements with `n` vertices, printed in the basis order.
pub fn basis_listing(basis: BasisKind, n: usize, alphabet: &Alphabet) -> Vec<String> {
    fn show<T: Display>(xs: Vec<T>) -> Vec<String> {
        xs.into_iter().map(|x| x.to_string()).collect()
    }
    match basis {
        BasisKind::S => show(enumerate_s(n, alphabet)),
        BasisKind::Bhat => show(enumerate_bhat(n, alphabet)),
        BasisKind::Shat => show(enumerate_shat(n, alphabet)),
        BasisKind::T => show(enumerate_t(n, alphabet)),
        BasisKind::B => show(enumerate_b(n, alphabet)),
        BasisKind::Lat => show(enumerate_b(n, alphabet).into_iter().filter(|t| t.bracket_count() == 0).collect()),
    }
}

fn alphabet_arg(spec: &str) -> Result<Alphabet, String> {
    if let Ok(k) = spec.trim().parse::<usize>() {
        return if k == 0 { Err("at least one generator is required".into()) } else { Ok(Alphabet::first(k)) };
    }
    let names: Vec<&str> = spec.split(',').map(str::trim).collect();
    Alphabet::new(&names).map_err(|e| e.to_string())
}

fn alphabet_for(gens: &Option<String>, texts: &[&str]) -> Result<Alphabet, String> {
    if let Some(g) = gens {
        return alphabet_arg(g);
    }
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        for id in identifiers(t).map_err(|e| e.to_string())? {
            if !names.contains(&id) {
                names.push(id);
            }
        }
    }
    names.sort();
    if names.is_empty() {
        return Ok(Alphabet::first(1));
    }
    Alphabet::new(&names).map_err(|e| e.to_string())
}

fn parse_a(text: &str, alphabet: &Alphabet) -> Result<AElem, String> {
    let e = parse(text, alphabet).map_err(|e| e.to_string())?;
    eval(&e, None).and_then(|v| v.into_a()).map_err(|e| e.to_string())
}

fn render<K: Ord + Clone + Display>(x: &LinComb<K>, json: bool, cmp: impl FnMut(&K, &K) -> std::cmp::Ordering + Copy) -> String {
    if json {
        comb_json(x, cmp).to_string() + "\n"
    } else {
        comb_text(x, cmp) + "\n"
    }
}

fn normalize_cmd(expr: &str, gens: &Option<String>, fuel: u64, trace: &Option<PathBuf>, json: bool) -> Outcome {
    let alphabet = match alphabet_for(gens, &[expr]) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let x = match parse_a(expr, &alphabet) {
        Ok(x) => x,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let nf = match Normalizer::new(Strategy::default(), fuel).normalize(&x) {
        Ok(nf) => nf,
        Err(e @ NormalizeError::FuelExhausted { .. }) => return Outcome::fail(EXIT_FUEL, e),
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    if let Some(path) = trace {
        let text = match trace_to_jsonl(&alphabet, &x, &nf.output, &nf.trace) {
            Ok(t) => t,
            Err(e) => return Outcome::fail(EXIT_USAGE, e),
        };
        if let Err(e) = std::fs::write(path, text) {
            return Outcome::fail(EXIT_USAGE, format!("{}: {e}", path.display()));
        }
    }
    Outcome::ok(render(&nf.output, json, cmp_t))
}

fn enum_cmd(basis: BasisKind, n: usize, gens: &str, json: bool) -> Outcome {
    let alphabet = match alphabet_arg(gens) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let items = basis_listing(basis, n, &alphabet);
    if json {
        let names: Vec<&str> = alphabet.gens().iter().map(|g| g.name()).collect();
        let v = json!({"basis": format!("{basis:?}"), "n": n, "generators": names, "count": items.len(), "elements": items});
        Outcome::ok(v.to_string() + "\n")
    } else {
        Outcome::ok(items.iter().map(|s| format!("{s}\n")).collect())
    }
}

fn dims_cmd(basis: BasisKind, max_n: usize, gens: &str) -> Outcome {
    let alphabet = match alphabet_arg(gens) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let dims: Vec<String> = (1..=max_n).map(|n| basis_listing(basis, n, &alphabet).len().to_string()).collect();
    Outcome::ok(dims.join(" ") + "\n")
}

fn osbb_cmd(expr: &str, gens: &Option<String>, json: bool) -> Outcome {
    let alphabet = match alphabet_for(gens, &[expr]) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let e = match parse(expr, &alphabet) {
        Ok(e) => e,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let d = match eval(&e, None) {
        Ok(v) => v.into_d(),
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    match osbb_decompose(&d) {
        Ok(x) => Outcome::ok(render(&x, json, cmp_delta)),
        Err(e) => Outcome::fail(EXIT_USAGE, e),
    }
}

fn phi_cmd(expr: &str, gens: &Option<String>, json: bool, inverse: bool) -> Outcome {
    let alphabet = match alphabet_for(gens, &[expr]) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let x = match parse_a(expr, &alphabet) {
        Ok(x) => x,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    if inverse {
        let s = to_t(&x).map_linear(|t| LinComb::basis(phi_inv(t)));
        Outcome::ok(render(&s, json, cmp_shat))
    } else {
        Outcome::ok(render(&phi_on_a(&x), json, cmp_t))
    }
}

fn ly_cmd(args: [&str; 3], gens: &Option<String>, json: bool) -> Outcome {
    let alphabet = match alphabet_for(gens, &args) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let mut xs = Vec::new();
    for a in args {
        match parse_a(a, &alphabet) {
            Ok(x) => xs.push(to_t(&x)),
            Err(e) => return Outcome::fail(EXIT_USAGE, e),
        }
    }
    match ly_triple(&xs[0], &xs[1], &xs[2]) {
        Ok(r) => Outcome::ok(render(&r, json, cmp_t)),
        Err(e @ NormalizeError::FuelExhausted { .. }) => Outcome::fail(EXIT_FUEL, e),
        Err(e) => Outcome::fail(EXIT_USAGE, e),
    }
}

fn check_cmd(suite: Suite, max_vertices: usize, samples: usize, seed: u64, gens: &str) -> Outcome {
    let alphabet = match alphabet_arg(gens) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let report = run_suite(suite, &CheckConfig { alphabet, max_vertices, samples, seed });
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK };
    Outcome { code, stdout: report.to_json().to_string() + "\n", stderr: String::new() }
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match &cli.cmd {
        Command::Normalize { expr, gens, fuel, trace, json } => normalize_cmd(expr, gens, *fuel, trace, *json),
        Command::Enum { basis, n, gens, json } => enum_cmd(*basis, *n, gens, *json),
        Command::Dims { basis, max_n, gens } => dims_cmd(*basis, *max_n, gens),
        Command::Osbb { expr, gens, json } => osbb_cmd(expr, gens, *json),
        Command::Phi { expr, gens, json } => phi_cmd(expr, gens, *json, false),
        Command::PhiInv { expr, gens, json } => phi_cmd(expr, gens, *json, true),
        Command::Ly { x, y, z, gens, json } => ly_cmd([x, y, z], gens, *json),
        Command::Check { suite, max_vertices, samples, seed, gens } => check_cmd(*suite, *max_vertices, *samples, *seed, gens),
    }
}
