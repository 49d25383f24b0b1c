//! Hand-written recursive-descent parser for the script grammar:
//!
//! ```text
//! script = {stmt}
//! stmt   = "let" ident "=" expr ";" | "print" expr ";"
//!        | "assert" expr ("==" | "!=") expr ";"
//! expr   = term {("+" | "-") term}
//! term   = factor {"*" factor}
//! factor = atom ["^" int] | "-" factor
//! atom   = int | ident | ident "(" [expr {"," expr}] ")"
//!        | "(" expr ")" | "[" [["-"] int {"," ["-"] int}] "]"
//! ```
//!
//! `#` starts a line comment. The parser stops at the first error and
//! reports it with a 1-based line and column.

use std::fmt;

use num_bigint::BigInt;

use super::token::{lex, Token, TokenKind};

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: u32,
    pub column: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    IntLit(BigInt),
    Ident(String),
    Call(String, Vec<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Paren(Box<Expr>),
    IntList(Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Let {
        name: String,
        value: Expr,
        line: u32,
        column: u32,
    },
    Print {
        value: Expr,
    },
    Assert {
        lhs: Expr,
        rhs: Expr,
        negated: bool,
        line: u32,
        column: u32,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

pub fn parse(source: &str) -> Result<Script, ParseError> {
    let tokens = lex(source);
    let mut parser = Parser { tokens, pos: 0 };
    let script = parser.script()?;
    Ok(script)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error<T>(&self, token: &Token, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: token.line,
            column: token.column,
            message: message.into(),
        })
    }

    fn expect_punct(&mut self, punct: &str) -> Result<Token, ParseError> {
        let token = self.peek().clone();
        if token.kind == TokenKind::Punct && token.lexeme == punct {
            Ok(self.bump())
        } else {
            self.error(&token, format!("expected '{punct}'"))
        }
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let mut statements = Vec::new();
        loop {
            let token = self.peek().clone();
            match token.kind {
                TokenKind::Eof => break,
                TokenKind::Keyword => statements.push(self.statement()?),
                TokenKind::Unknown => {
                    return self.error(&token, format!("unexpected character '{}'", token.lexeme))
                }
                _ => {
                    return self.error(&token, "expected a statement ('let', 'print', or 'assert')")
                }
            }
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let keyword = self.bump();
        match keyword.lexeme.as_str() {
            "let" => {
                let name_token = self.peek().clone();
                if name_token.kind != TokenKind::Ident {
                    return self.error(&name_token, "expected identifier");
                }
                self.bump();
                let eq = self.peek().clone();
                if !(eq.kind == TokenKind::Punct && eq.lexeme == "=") {
                    return self.error(&eq, "expected '='");
                }
                self.bump();
                let value = self.expression()?;
                self.expect_punct(";")?;
                Ok(Stmt::Let {
                    name: name_token.lexeme,
                    value,
                    line: keyword.line,
                    column: keyword.column,
                })
            }
            "print" => {
                let value = self.expression()?;
                self.expect_punct(";")?;
                Ok(Stmt::Print { value })
            }
            "assert" => {
                let lhs = self.expression()?;
                let op = self.peek().clone();
                let negated = match (op.kind, op.lexeme.as_str()) {
                    (TokenKind::Punct, "==") => false,
                    (TokenKind::Punct, "!=") => true,
                    _ => return self.error(&op, "expected '==' or '!='"),
                };
                self.bump();
                let rhs = self.expression()?;
                self.expect_punct(";")?;
                Ok(Stmt::Assert {
                    lhs,
                    rhs,
                    negated,
                    line: keyword.line,
                    column: keyword.column,
                })
            }
            other => self.error(&keyword, format!("unexpected keyword '{other}'")),
        }
    }

    fn expression(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let token = self.peek().clone();
            if token.kind == TokenKind::Punct && (token.lexeme == "+" || token.lexeme == "-") {
                self.bump();
                let rhs = self.term()?;
                let kind = if token.lexeme == "+" {
                    ExprKind::Add(Box::new(lhs), Box::new(rhs))
                } else {
                    ExprKind::Sub(Box::new(lhs), Box::new(rhs))
                };
                lhs = Expr {
                    kind,
                    line: token.line,
                    column: token.column,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let token = self.peek().clone();
            if token.kind == TokenKind::Punct && token.lexeme == "*" {
                self.bump();
                let rhs = self.factor()?;
                lhs = Expr {
                    kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                    line: token.line,
                    column: token.column,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let token = self.peek().clone();
        if token.kind == TokenKind::Punct && token.lexeme == "-" {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                line: token.line,
                column: token.column,
            });
        }
        let atom = self.atom()?;
        let next = self.peek().clone();
        if next.kind == TokenKind::Punct && next.lexeme == "^" {
            self.bump();
            let exp_token = self.peek().clone();
            if exp_token.kind != TokenKind::Int {
                return self.error(&exp_token, "expected integer exponent");
            }
            self.bump();
            let exponent: u32 = exp_token.lexeme.parse().map_err(|_| ParseError {
                line: exp_token.line,
                column: exp_token.column,
                message: "exponent out of range".to_string(),
            })?;
            return Ok(Expr {
                kind: ExprKind::Pow(Box::new(atom), exponent),
                line: next.line,
                column: next.column,
            });
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Int => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::IntLit(token.lexeme.parse().expect("lexer produced digits")),
                    line: token.line,
                    column: token.column,
                })
            }
            TokenKind::Ident => {
                self.bump();
                let next = self.peek().clone();
                if next.kind == TokenKind::Punct && next.lexeme == "(" {
                    self.bump();
                    let mut args = Vec::new();
                    if !(self.peek().kind == TokenKind::Punct && self.peek().lexeme == ")") {
                        loop {
                            args.push(self.expression()?);
                            let sep = self.peek().clone();
                            if sep.kind == TokenKind::Punct && sep.lexeme == "," {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect_punct(")")?;
                    Ok(Expr {
                        kind: ExprKind::Call(token.lexeme, args),
                        line: token.line,
                        column: token.column,
                    })
                } else {
                    Ok(Expr {
                        kind: ExprKind::Ident(token.lexeme),
                        line: token.line,
                        column: token.column,
                    })
                }
            }
            TokenKind::Punct if token.lexeme == "(" => {
                self.bump();
                let inner = self.expression()?;
                self.expect_punct(")")?;
                Ok(Expr {
                    kind: ExprKind::Paren(Box::new(inner)),
                    line: token.line,
                    column: token.column,
                })
            }
            TokenKind::Punct if token.lexeme == "[" => {
                self.bump();
                let mut entries = Vec::new();
                if !(self.peek().kind == TokenKind::Punct && self.peek().lexeme == "]") {
                    loop {
                        let mut negative = false;
                        if self.peek().kind == TokenKind::Punct && self.peek().lexeme == "-" {
                            negative = true;
                            self.bump();
                        }
                        let int_token = self.peek().clone();
                        if int_token.kind != TokenKind::Int {
                            return self.error(&int_token, "expected integer");
                        }
                        self.bump();
                        let mut value: BigInt =
                            int_token.lexeme.parse().expect("lexer produced digits");
                        if negative {
                            value = -value;
                        }
                        entries.push(value);
                        let sep = self.peek().clone();
                        if sep.kind == TokenKind::Punct && sep.lexeme == "," {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect_punct("]")?;
                Ok(Expr {
                    kind: ExprKind::IntList(entries),
                    line: token.line,
                    column: token.column,
                })
            }
            _ => self.error(&token, "expected an expression"),
        }
    }
}

/// Canonical print form of an expression; reparsing it reproduces the tree.
pub fn print_expr(expr: &Expr) -> String {
    match &expr.kind {
        ExprKind::IntLit(v) => v.to_string(),
        ExprKind::Ident(name) => name.clone(),
        ExprKind::Call(name, args) => {
            let rendered: Vec<String> = args.iter().map(print_expr).collect();
            format!("{name}({})", rendered.join(", "))
        }
        ExprKind::Add(a, b) => format!("{} + {}", print_expr(a), print_expr(b)),
        ExprKind::Sub(a, b) => format!("{} - {}", print_expr(a), print_expr(b)),
        ExprKind::Mul(a, b) => format!("{} * {}", print_expr(a), print_expr(b)),
        ExprKind::Pow(a, k) => format!("{}^{k}", print_expr(a)),
        ExprKind::Neg(a) => format!("-{}", print_expr(a)),
        ExprKind::Paren(a) => format!("({})", print_expr(a)),
        ExprKind::IntList(values) => {
            let rendered: Vec<String> = values.iter().map(BigInt::to_string).collect();
            format!("[{}]", rendered.join(", "))
        }
    }
}

/// The whole script in canonical print form.
pub fn print_script(script: &Script) -> String {
    let mut out = String::new();
    for stmt in &script.statements {
        match stmt {
            Stmt::Let { name, value, .. } => {
                out.push_str(&format!("let {name} = {};\n", print_expr(value)));
            }
            Stmt::Print { value } => {
                out.push_str(&format!("print {};\n", print_expr(value)));
            }
            Stmt::Assert {
                lhs, rhs, negated, ..
            } => {
                let op = if *negated { "!=" } else { "==" };
                out.push_str(&format!(
                    "assert {} {op} {};\n",
                    print_expr(lhs),
                    print_expr(rhs)
                ));
            }
        }
    }
    out
}
