//! Recursive-descent parser for ring expressions.
//!
//! ```text
//! stmt   := "let" ident "=" expr | expr
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ("^" nat)?
//! atom   := ("inv" | "invdirect" | "neg" | "minpoly" | "annpoly") "(" expr ")"
//!         | "apply" "(" expr "," expr ")"
//!         | "mod" "(" loose-literal ")"
//!         | matrix | point | int | ident | "(" expr ")"
//! matrix := "[" "[" int "," int "]" "," "[" int "," int "]" "]"
//! point  := "(" int "," int ")"
//! ```
//!
//! Literals are checked against the ring while parsing: entries must already
//! be reduced and the bottom-left entry must be a multiple of `p^(m-1)`.
//! Inside `mod(...)` entries may be negative or oversized and are reduced
//! instead.

use std::fmt;

use endoring_core::{EndoMatrix, ModulePoint, RingParams};

use crate::lex::{tokenize, LexError, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    /// Inverse through the annihilating polynomial.
    Inv,
    /// Closed-form inverse.
    InvDirect,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    MinPoly,
    AnnPoly,
    Apply,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Matrix(EndoMatrix),
    Point(ModulePoint),
    /// Integer literal in `[0, p^m)`.
    Int(u64),
    Var {
        name: String,
        offset: usize,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        offset: usize,
    },
    Pow {
        base: Box<Expr>,
        exp: u64,
        offset: usize,
    },
    Unary {
        op: UnaryOp,
        arg: Box<Expr>,
        offset: usize,
    },
    Call {
        func: Func,
        args: Vec<Expr>,
        offset: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Let { name: String, expr: Expr },
    Expr(Expr),
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    Lex(LexError),
    Parse { offset: usize, message: String },
    Literal { offset: usize, message: String },
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxError::Lex(e) => e.fmt(f),
            SyntaxError::Parse { offset, message } => {
                write!(f, "ParseError at offset {offset}: {message}")
            }
            SyntaxError::Literal { offset, message } => {
                write!(f, "LiteralError at offset {offset}: {message}")
            }
        }
    }
}

impl std::error::Error for SyntaxError {}

impl From<LexError> for SyntaxError {
    fn from(e: LexError) -> Self {
        SyntaxError::Lex(e)
    }
}

const KEYWORDS: &[&str] = &[
    "let",
    "inv",
    "invdirect",
    "neg",
    "minpoly",
    "annpoly",
    "apply",
    "mod",
];

pub fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

/// Tokenize and parse one statement.
pub fn parse_statement(input: &str, params: RingParams) -> Result<Stmt, SyntaxError> {
    let tokens = tokenize(input)?;
    parse(&tokens, params, input.len())
}

pub fn parse(tokens: &[Token], params: RingParams, end: usize) -> Result<Stmt, SyntaxError> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        params,
        end,
    };
    let stmt = parser.statement()?;
    if let Some(tok) = parser.peek() {
        return Err(parser.error_at(tok.offset, format!("unexpected '{}'", tok.kind)));
    }
    Ok(stmt)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    params: RingParams,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self, ahead: usize) -> Option<&'a TokenKind> {
        self.tokens.get(self.pos + ahead).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn error_at(&self, offset: usize, message: String) -> SyntaxError {
        SyntaxError::Parse { offset, message }
    }

    fn literal_error(&self, offset: usize, message: String) -> SyntaxError {
        SyntaxError::Literal { offset, message }
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind(0) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<usize, SyntaxError> {
        match self.peek() {
            Some(tok) if tok.kind == kind => {
                self.pos += 1;
                Ok(tok.offset)
            }
            Some(tok) => Err(self.error_at(
                tok.offset,
                format!("expected '{kind}', found '{}'", tok.kind),
            )),
            None => Err(self.error_at(self.end, format!("expected '{kind}', found end of input"))),
        }
    }

    fn expect_int(&mut self) -> Result<(u128, usize), SyntaxError> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Int(n),
                offset,
            }) => {
                self.pos += 1;
                Ok((*n, *offset))
            }
            Some(tok) => Err(self.error_at(
                tok.offset,
                format!("expected an integer, found '{}'", tok.kind),
            )),
            None => Err(self.error_at(self.end, "expected an integer, found end of input".into())),
        }
    }

    /// An integer that may carry a leading minus sign (only inside `mod`).
    fn expect_signed_int(&mut self) -> Result<(i128, usize), SyntaxError> {
        let offset = self.offset();
        let negative = self.eat(&TokenKind::Minus);
        let (n, _) = self.expect_int()?;
        let n = i128::try_from(n)
            .map_err(|_| self.literal_error(offset, format!("integer {n} is too large")))?;
        Ok((if negative { -n } else { n }, offset))
    }

    fn statement(&mut self) -> Result<Stmt, SyntaxError> {
        if self.peek().is_none() {
            return Ok(Stmt::Empty);
        }
        if self.peek_kind(0) == Some(&TokenKind::Ident("let".into())) {
            self.pos += 1;
            let offset = self.offset();
            let name = match self.advance() {
                Some(Token {
                    kind: TokenKind::Ident(name),
                    ..
                }) if !is_keyword(name) => name.clone(),
                Some(tok) => {
                    return Err(self.error_at(
                        tok.offset,
                        format!("expected a variable name, found '{}'", tok.kind),
                    ))
                }
                None => return Err(self.error_at(offset, "expected a variable name".into())),
            };
            self.expect(TokenKind::Equals)?;
            let expr = self.expr()?;
            return Ok(Stmt::Let { name, expr });
        }
        Ok(Stmt::Expr(self.expr()?))
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let offset = self.offset();
            let op = if self.eat(&TokenKind::Plus) {
                BinOp::Add
            } else if self.eat(&TokenKind::Minus) {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                offset,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            let offset = self.offset();
            if !self.eat(&TokenKind::Star) {
                return Ok(lhs);
            }
            let rhs = self.factor()?;
            lhs = Expr::Binary {
                op: BinOp::Mul,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                offset,
            };
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        let caret = self.offset();
        if self.eat(&TokenKind::Caret) {
            let (exp, offset) = self.expect_int()?;
            let exp = u64::try_from(exp)
                .map_err(|_| self.literal_error(offset, format!("exponent {exp} is too large")))?;
            return Ok(Expr::Pow {
                base: Box::new(base),
                exp,
                offset: caret,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let Some(tok) = self.peek() else {
            return Err(self.error_at(self.end, "missing operand".into()));
        };
        match &tok.kind {
            TokenKind::Ident(name) => {
                let offset = tok.offset;
                self.pos += 1;
                match name.as_str() {
                    "inv" => self.unary(UnaryOp::Inv, offset),
                    "invdirect" => self.unary(UnaryOp::InvDirect, offset),
                    "neg" => self.unary(UnaryOp::Neg, offset),
                    "minpoly" => self.call(Func::MinPoly, 1, offset),
                    "annpoly" => self.call(Func::AnnPoly, 1, offset),
                    "apply" => self.call(Func::Apply, 2, offset),
                    "mod" => {
                        self.expect(TokenKind::LParen)?;
                        let lit = self.literal(true)?;
                        self.expect(TokenKind::RParen)?;
                        Ok(lit)
                    }
                    "let" => Err(self.error_at(offset, "'let' must start a statement".into())),
                    _ => Ok(Expr::Var {
                        name: name.clone(),
                        offset,
                    }),
                }
            }
            TokenKind::LBracket | TokenKind::Int(_) => self.literal(false),
            TokenKind::LParen => {
                if matches!(self.peek_kind(1), Some(TokenKind::Int(_)))
                    && self.peek_kind(2) == Some(&TokenKind::Comma)
                {
                    return self.literal(false);
                }
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            other => Err(self.error_at(tok.offset, format!("expected an operand, found '{other}'"))),
        }
    }

    fn unary(&mut self, op: UnaryOp, offset: usize) -> Result<Expr, SyntaxError> {
        self.expect(TokenKind::LParen)?;
        let arg = self.expr()?;
        self.expect(TokenKind::RParen)?;
        Ok(Expr::Unary {
            op,
            arg: Box::new(arg),
            offset,
        })
    }

    fn call(&mut self, func: Func, arity: usize, offset: usize) -> Result<Expr, SyntaxError> {
        self.expect(TokenKind::LParen)?;
        let mut args = vec![self.expr()?];
        while args.len() < arity {
            self.expect(TokenKind::Comma)?;
            args.push(self.expr()?);
        }
        self.expect(TokenKind::RParen)?;
        Ok(Expr::Call { func, args, offset })
    }

    /// Matrix, point or integer literal. With `loose`, entries may be signed
    /// and out of range and are reduced into the ring.
    fn literal(&mut self, loose: bool) -> Result<Expr, SyntaxError> {
        let offset = self.offset();
        let entry = |p: &mut Self| -> Result<(i128, usize), SyntaxError> {
            if loose {
                p.expect_signed_int()
            } else {
                let (n, off) = p.expect_int()?;
                let n = i128::try_from(n)
                    .map_err(|_| p.literal_error(off, format!("integer {n} is too large")))?;
                Ok((n, off))
            }
        };
        match self.peek_kind(0) {
            Some(TokenKind::LBracket) => {
                self.pos += 1;
                self.expect(TokenKind::LBracket)?;
                let a = entry(self)?;
                self.expect(TokenKind::Comma)?;
                let b = entry(self)?;
                self.expect(TokenKind::RBracket)?;
                self.expect(TokenKind::Comma)?;
                self.expect(TokenKind::LBracket)?;
                let c = entry(self)?;
                self.expect(TokenKind::Comma)?;
                let d = entry(self)?;
                self.expect(TokenKind::RBracket)?;
                self.expect(TokenKind::RBracket)?;
                self.matrix_literal(a, b, c, d, loose).map(Expr::Matrix)
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let x = entry(self)?;
                self.expect(TokenKind::Comma)?;
                let y = entry(self)?;
                self.expect(TokenKind::RParen)?;
                self.point_literal(x, y, loose).map(Expr::Point)
            }
            Some(_) if loose || matches!(self.peek_kind(0), Some(TokenKind::Int(_))) => {
                let (n, off) = entry(self)?;
                let pp = self.params;
                if loose {
                    Ok(Expr::Int(pp.reduce_modulus(n)))
                } else {
                    self.check_range(n, pp.modulus(), "integer", off)?;
                    Ok(Expr::Int(n as u64))
                }
            }
            _ => Err(self.error_at(offset, "expected a literal".into())),
        }
    }

    fn check_range(&self, n: i128, bound: u64, what: &str, offset: usize) -> Result<(), SyntaxError> {
        if n < 0 || n >= i128::from(bound) {
            Err(self.literal_error(
                offset,
                format!("{what} {n} is out of range [0, {bound}); use mod(...) to reduce"),
            ))
        } else {
            Ok(())
        }
    }

    fn matrix_literal(
        &self,
        (a, a_off): (i128, usize),
        (b, b_off): (i128, usize),
        (c, c_off): (i128, usize),
        (d, d_off): (i128, usize),
        loose: bool,
    ) -> Result<EndoMatrix, SyntaxError> {
        let pp = self.params;
        let (a, b, c, d) = if loose {
            (
                pp.reduce_p(a),
                pp.reduce_p(b),
                pp.reduce_modulus(c),
                pp.reduce_modulus(d),
            )
        } else {
            self.check_range(a, pp.p(), "top-left entry", a_off)?;
            self.check_range(b, pp.p(), "top-right entry", b_off)?;
            self.check_range(c, pp.modulus(), "bottom-left entry", c_off)?;
            self.check_range(d, pp.modulus(), "bottom-right entry", d_off)?;
            (a as u64, b as u64, c as u64, d as u64)
        };
        if c % pp.top_weight() != 0 {
            return Err(self.literal_error(
                c_off,
                format!(
                    "bottom-left entry {c} is not a multiple of p^(m-1) = {}",
                    pp.top_weight()
                ),
            ));
        }
        EndoMatrix::from_entries(pp, a, b, c, d)
            .map_err(|e| self.literal_error(c_off, e.to_string()))
    }

    fn point_literal(
        &self,
        (x, x_off): (i128, usize),
        (y, y_off): (i128, usize),
        loose: bool,
    ) -> Result<ModulePoint, SyntaxError> {
        let pp = self.params;
        let (x, y) = if loose {
            (pp.reduce_p(x), pp.reduce_modulus(y))
        } else {
            self.check_range(x, pp.p(), "point coordinate", x_off)?;
            self.check_range(y, pp.modulus(), "point coordinate", y_off)?;
            (x as u64, y as u64)
        };
        ModulePoint::new(pp, x, y).map_err(|e| self.literal_error(x_off, e.to_string()))
    }
}
