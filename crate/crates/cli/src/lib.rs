//! Calculator for endomorphisms of `Z_p x Z_{p^m}`: script/REPL runner,
//! oracle verification and census reports.

pub mod eval;
pub mod format;
pub mod lex;
pub mod parse;
pub mod verify;

use std::fmt;
use std::io::{self, BufRead, Write};

use endoring_core::{census, Error, RingParams};
use serde_json::json;

use crate::eval::{EvalError, Session};
use crate::parse::{parse_statement, SyntaxError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EVAL: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_PARAMS: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Syntax(SyntaxError),
    Eval(EvalError),
    Verify(String),
    Params(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) => EXIT_SYNTAX,
            CliError::Eval(_) | CliError::Io(_) => EXIT_EVAL,
            CliError::Verify(_) => EXIT_VERIFY,
            CliError::Params(_) => EXIT_PARAMS,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax(e) => e.fmt(f),
            CliError::Eval(e) => e.fmt(f),
            CliError::Verify(msg) => write!(f, "VerifyError: {msg}"),
            CliError::Params(msg) => write!(f, "ParamError: {msg}"),
            CliError::Io(e) => write!(f, "IoError: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Syntax(e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Eval(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Validated ring parameters, or an exit-4 error.
pub fn ring_params(p: Option<u64>, m: Option<u32>) -> Result<RingParams, CliError> {
    let (Some(p), Some(m)) = (p, m) else {
        return Err(CliError::Params("both --p and --m are required".into()));
    };
    RingParams::new(p, m).map_err(|e| CliError::Params(e.to_string()))
}

/// Executes statements one line at a time against a session.
pub struct Runner {
    session: Session,
    json: bool,
}

impl Runner {
    pub fn new(params: RingParams, json: bool) -> Self {
        Runner {
            session: Session::new(params),
            json,
        }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    /// Runs one line and returns its rendered output, if any.
    pub fn line(&mut self, src: &str) -> Result<Option<String>, CliError> {
        let stmt = parse_statement(src, self.session.params())?;
        let outcome = self.session.run(&stmt)?;
        Ok(if self.json {
            format::outcome_json(self.session.params(), &outcome).map(|j| j.to_string())
        } else {
            format::outcome_text(&outcome)
        })
    }

    /// Script mode: stop at the first failing line.
    pub fn script(&mut self, source: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
        for (i, src) in source.lines().enumerate() {
            match self.line(src) {
                Ok(Some(text)) => {
                    if writeln!(out, "{text}").is_err() {
                        return EXIT_EVAL;
                    }
                }
                Ok(None) => {}
                Err(e) => {
                    let _ = writeln!(err, "line {}: {e}", i + 1);
                    return e.exit_code();
                }
            }
        }
        EXIT_OK
    }

    /// Interactive mode: report errors and keep going. The exit status is
    /// that of the first error seen.
    pub fn repl(
        &mut self,
        input: &mut dyn BufRead,
        out: &mut dyn Write,
        err: &mut dyn Write,
        prompt: bool,
    ) -> i32 {
        let mut status = EXIT_OK;
        let mut buf = String::new();
        loop {
            if prompt {
                let _ = write!(out, "> ");
                let _ = out.flush();
            }
            buf.clear();
            match input.read_line(&mut buf) {
                Ok(0) => break,
                Ok(_) => {}
                Err(e) => {
                    let _ = writeln!(err, "{}", CliError::Io(e));
                    return if status == EXIT_OK { EXIT_EVAL } else { status };
                }
            }
            match self.line(buf.trim_end_matches(['\n', '\r'])) {
                Ok(Some(text)) => {
                    let _ = writeln!(out, "{text}");
                }
                Ok(None) => {}
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    if status == EXIT_OK {
                        status = e.exit_code();
                    }
                }
            }
        }
        status
    }
}

/// Runs the oracle checks and prints one line per check.
pub fn run_verify(params: RingParams, budget: u64, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let checks = verify::run(params, budget).map_err(|e| match e {
        Error::BudgetExceeded { required, budget } => CliError::Verify(format!(
            "ring has {required} elements, more than the budget of {budget} (raise --budget)"
        )),
        other => CliError::Verify(other.to_string()),
    })?;
    for c in &checks {
        if json {
            let line = json!({
                "p": params.p(),
                "m": params.m(),
                "check": c.name,
                "ok": c.passed(),
                "cases": c.cases,
                "failure": c.failure,
            });
            writeln!(out, "{line}")?;
        } else {
            writeln!(out, "{}", c.line())?;
        }
    }
    match checks.iter().filter(|c| !c.passed()).count() {
        0 => Ok(()),
        n => Err(CliError::Verify(format!("{n} of {} checks failed", checks.len()))),
    }
}

/// Ring size, unit count and the exact unit density `(p-1)^2 / p^2`.
pub fn run_census(params: RingParams, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let c = census(params).map_err(|e| CliError::Params(e.to_string()))?;
    let p = params.p();
    let (num, den) = ((p - 1) * (p - 1), p * p);
    if json {
        let line = json!({
            "p": p,
            "m": params.m(),
            "ring_size": c.ring_size,
            "unit_count": c.unit_count,
            "density": [num, den],
        });
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "ring size:    {}", c.ring_size)?;
        writeln!(out, "units:        {}", c.unit_count)?;
        writeln!(out, "unit density: {num}/{den}")?;
    }
    Ok(())
}
