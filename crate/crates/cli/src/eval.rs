use std::collections::HashMap;
use std::fmt;

use endoring_core::{Digits, EndoMatrix, Error, IntPoly, ModulePoint, RingParams};

use crate::parse::{BinOp, Expr, Func, Stmt, UnaryOp};

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Matrix(EndoMatrix),
    Point(ModulePoint),
    /// An element of `Z_{p^m}`.
    Scalar(Digits),
    Poly(IntPoly),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Matrix(_) => "matrix",
            Value::Point(_) => "point",
            Value::Scalar(_) => "scalar",
            Value::Poly(_) => "poly",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable { name: String, offset: usize },
    Type { offset: usize, message: String },
    Ring { offset: usize, error: Error },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable { name, offset } => {
                write!(f, "UnboundVariable at offset {offset}: '{name}' is not defined")
            }
            EvalError::Type { offset, message } => write!(f, "TypeError at offset {offset}: {message}"),
            EvalError::Ring {
                offset,
                error: Error::NotInvertible(why),
            } => write!(f, "NotInvertible at offset {offset}: criterion fails ({why})"),
            EvalError::Ring {
                offset,
                error: Error::NotAUnit,
            } => write!(f, "NotAUnit at offset {offset}: u_0 = 0"),
            EvalError::Ring { offset, error } => write!(f, "EvalError at offset {offset}: {error}"),
        }
    }
}

impl std::error::Error for EvalError {}

/// Evaluation outcome of one statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Bound { name: String, value: Value },
    Value(Value),
    Nothing,
}

/// Ring parameters plus variable bindings. `I` starts out bound to the identity.
#[derive(Debug, Clone)]
pub struct Session {
    params: RingParams,
    bindings: HashMap<String, Value>,
}

impl Session {
    pub fn new(params: RingParams) -> Self {
        let mut bindings = HashMap::new();
        bindings.insert("I".to_string(), Value::Matrix(EndoMatrix::identity(params)));
        Session { params, bindings }
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn run(&mut self, stmt: &Stmt) -> Result<Outcome, EvalError> {
        match stmt {
            Stmt::Empty => Ok(Outcome::Nothing),
            Stmt::Expr(e) => self.eval(e).map(Outcome::Value),
            Stmt::Let { name, expr } => {
                let value = self.eval(expr)?;
                self.bindings.insert(name.clone(), value.clone());
                Ok(Outcome::Bound {
                    name: name.clone(),
                    value,
                })
            }
        }
    }

    pub fn eval(&self, expr: &Expr) -> Result<Value, EvalError> {
        let pp = self.params;
        match expr {
            Expr::Matrix(m) => Ok(Value::Matrix(m.clone())),
            Expr::Point(v) => Ok(Value::Point(v.clone())),
            Expr::Int(n) => Ok(Value::Scalar(Digits::from_u64(pp, *n))),
            Expr::Var { name, offset } => {
                self.bindings
                    .get(name)
                    .cloned()
                    .ok_or_else(|| EvalError::UnboundVariable {
                        name: name.clone(),
                        offset: *offset,
                    })
            }
            Expr::Binary {
                op,
                lhs,
                rhs,
                offset,
            } => {
                let lhs = self.eval(lhs)?;
                let rhs = self.eval(rhs)?;
                binary(*op, lhs, rhs, *offset)
            }
            Expr::Pow { base, exp, offset } => match self.eval(base)? {
                Value::Matrix(m) => Ok(Value::Matrix(m.pow(*exp))),
                Value::Scalar(s) => Ok(Value::Scalar(scalar_pow(&s, *exp))),
                other => Err(type_error(
                    *offset,
                    format!("cannot raise a {} to a power", other.kind()),
                )),
            },
            Expr::Unary { op, arg, offset } => {
                let ring = |error| EvalError::Ring {
                    offset: *offset,
                    error,
                };
                match (op, self.eval(arg)?) {
                    (UnaryOp::Inv, Value::Matrix(m)) => {
                        m.inverse_via_minpoly().map(Value::Matrix).map_err(ring)
                    }
                    (UnaryOp::InvDirect, Value::Matrix(m)) => {
                        m.inverse_direct().map(Value::Matrix).map_err(ring)
                    }
                    (UnaryOp::Inv | UnaryOp::InvDirect, Value::Scalar(s)) => {
                        s.inv().map(Value::Scalar).map_err(ring)
                    }
                    (UnaryOp::Neg, Value::Matrix(m)) => Ok(Value::Matrix(m.neg())),
                    (UnaryOp::Neg, Value::Scalar(s)) => Ok(Value::Scalar(s.neg())),
                    (UnaryOp::Neg, Value::Point(v)) => Ok(Value::Point(neg_point(&v))),
                    (op, other) => Err(type_error(
                        *offset,
                        format!("{op:?} is not defined for a {}", other.kind()).to_lowercase(),
                    )),
                }
            }
            Expr::Call { func, args, offset } => {
                let values = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<Result<Vec<_>, _>>()?;
                match (func, values.as_slice()) {
                    (Func::MinPoly, [Value::Matrix(m)]) => Ok(Value::Poly(m.minimal_poly())),
                    (Func::AnnPoly, [Value::Matrix(m)]) => {
                        Ok(Value::Poly(m.annihilating_poly().to_int_poly()))
                    }
                    (Func::Apply, [Value::Matrix(m), Value::Point(v)]) => {
                        m.apply(v).map(Value::Point).map_err(|error| EvalError::Ring {
                            offset: *offset,
                            error,
                        })
                    }
                    (Func::Apply, _) => Err(type_error(*offset, "apply expects (matrix, point)".into())),
                    (_, _) => Err(type_error(*offset, format!("{func:?} expects a matrix").to_lowercase())),
                }
            }
        }
    }
}

fn type_error(offset: usize, message: String) -> EvalError {
    EvalError::Type { offset, message }
}

fn scalar_pow(base: &Digits, mut exp: u64) -> Digits {
    let mut base = base.clone();
    let mut acc = Digits::one(base.params());
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul(&base).expect("same params");
        }
        base = base.mul(&base).expect("same params");
        exp >>= 1;
    }
    acc
}

fn neg_point(v: &ModulePoint) -> ModulePoint {
    EndoMatrix::identity(v.params())
        .scalar_mul(-1)
        .apply(v)
        .expect("same params")
}

fn binary(op: BinOp, lhs: Value, rhs: Value, offset: usize) -> Result<Value, EvalError> {
    use Value::*;
    let ring = |error| EvalError::Ring { offset, error };
    let as_matrix = |s: &Digits| EndoMatrix::scalar(s.params(), s);
    match (op, lhs, rhs) {
        (BinOp::Add, Matrix(x), Matrix(y)) => x.add(&y).map(Matrix).map_err(ring),
        (BinOp::Sub, Matrix(x), Matrix(y)) => x.sub(&y).map(Matrix).map_err(ring),
        (BinOp::Mul, Matrix(x), Matrix(y)) => x.mul(&y).map(Matrix).map_err(ring),

        (BinOp::Add, Scalar(s), Scalar(t)) => s.add(&t).map(Scalar).map_err(ring),
        (BinOp::Sub, Scalar(s), Scalar(t)) => s.sub(&t).map(Scalar).map_err(ring),
        (BinOp::Mul, Scalar(s), Scalar(t)) => s.mul(&t).map(Scalar).map_err(ring),

        // A scalar n stands for n I when mixed with matrices.
        (BinOp::Mul, Scalar(s), Matrix(x)) | (BinOp::Mul, Matrix(x), Scalar(s)) => {
            Ok(Matrix(x.scalar_mul_digits(&s)))
        }
        (BinOp::Add, Scalar(s), Matrix(x)) | (BinOp::Add, Matrix(x), Scalar(s)) => {
            x.add(&as_matrix(&s)).map(Matrix).map_err(ring)
        }
        (BinOp::Sub, Matrix(x), Scalar(s)) => x.sub(&as_matrix(&s)).map(Matrix).map_err(ring),
        (BinOp::Sub, Scalar(s), Matrix(x)) => as_matrix(&s).sub(&x).map(Matrix).map_err(ring),

        (BinOp::Add, Point(v), Point(w)) => v.add(&w).map(Point).map_err(ring),
        (BinOp::Sub, Point(v), Point(w)) => v.add(&neg_point(&w)).map(Point).map_err(ring),
        (BinOp::Mul, Matrix(x), Point(v)) => x.apply(&v).map(Point).map_err(ring),
        (BinOp::Mul, Scalar(s), Point(v)) => as_matrix(&s).apply(&v).map(Point).map_err(ring),

        (op, l, r) => Err(type_error(
            offset,
            format!(
                "{} is not defined for {} and {}",
                match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                },
                l.kind(),
                r.kind()
            ),
        )),
    }
}
