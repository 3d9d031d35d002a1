//! Concrete syntax: parsing, evaluation, and printing.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'* [p ['/' q] '*'] factor | '0'
//! factor := ident | '_' | '(' expr ')'
//!         | bk(e, e) | tb(e, e, e) | tri(e, e) | lb(e, e)
//!         | gr(e, …; root) | sg(e, …; root) | s(e, …) | w(e, …)
//! ```

mod eval;
mod expr;
mod parse;
mod print;

pub use eval::{eval, EvalError, Value};
pub use expr::{Expr, E};
pub use parse::{identifiers, parse, ParseError};
pub use print::{comb_expr, comb_json, comb_text, words_text, WordDisplay};
