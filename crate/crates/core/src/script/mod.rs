//! The expression DSL and its evaluator: tokenizer, recursive-descent
//! parser, builtin bindings for the whole library surface, and canonical
//! text/JSON rendering.

mod eval;
mod parser;
mod token;
mod value;

pub use eval::{evaluate, evaluate_with, EvalError, Output, BUILTINS};
pub use parser::{parse, print_expr, print_script, Expr, ExprKind, ParseError, Script, Stmt};
pub use token::{lex, Token, TokenKind};
pub use value::{RenderFormat, ReportValue, Value};
