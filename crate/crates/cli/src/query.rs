//! One-shot evaluation of `cliffpar query` expressions.
//!
//! ```text
//! norm <q>    trace <q>    conj <q>    mul <q> <q>
//! anchor-left <line>       anchor-right <line>
//! parallel? <line> <line> [left | right | clifford-like]
//! conjugate? <line> <line>
//! classify <map>
//! preserves? <map> [left | right | clifford-like]
//! ```
//!
//! Arguments are separated by whitespace, so a quaternion argument must not
//! contain spaces around its operators. The optional parallelism defaults to
//! the Clifford-like one of the configuration.

use cliffpar_core::parse::{ParseError, Parser};
use cliffpar_core::{classify, conjugacy_witness, preservation_verdict, Parallelism};
use thiserror::Error;

use crate::config::Config;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Semantic(String),
}

fn semantic(e: impl std::fmt::Display) -> QueryError {
    QueryError::Semantic(e.to_string())
}

fn parallelism(p: &mut Parser, config: &Config) -> Result<Parallelism, QueryError> {
    if p.at_end() {
        return Ok(Parallelism::CliffordLike(config.parallelism.clone()));
    }
    let start = p.pos();
    match p.word()? {
        "left" => Ok(Parallelism::LeftClifford),
        "right" => Ok(Parallelism::RightClifford),
        "clifford-like" => Ok(Parallelism::CliffordLike(config.parallelism.clone())),
        other => Err(ParseError::new(start, format!("unknown parallelism `{other}`")).into()),
    }
}

/// Evaluates `expr` against `config` and renders the exact result.
pub fn query(config: &Config, expr: &str) -> Result<String, QueryError> {
    let alg = &config.algebra;
    let mut p = Parser::new(expr);
    let start = p.pos();
    let verb = p.word()?;
    let out = match verb {
        "norm" => alg
            .try_norm(&p.quaternion(alg)?)
            .map_err(semantic)?
            .to_string(),
        "trace" => alg
            .try_trace(&p.quaternion(alg)?)
            .map_err(semantic)?
            .to_string(),
        "conj" => alg.conj(&p.quaternion(alg)?).to_string(),
        "mul" => {
            let x = p.quaternion(alg)?;
            let y = p.quaternion(alg)?;
            alg.mul(&x, &y).to_string()
        }
        "anchor-left" => alg.left_anchor(&p.line(alg)?).to_string(),
        "anchor-right" => alg.right_anchor(&p.line(alg)?).to_string(),
        "parallel?" => {
            let (a, b) = (p.line(alg)?, p.line(alg)?);
            let par = parallelism(&mut p, config)?;
            par.are_parallel(alg, &a, &b).to_string()
        }
        "conjugate?" => {
            let (a, b) = (p.line(alg)?, p.line(alg)?);
            match conjugacy_witness(alg, &a, &b).map_err(semantic)? {
                Some(h) => format!("true (h = {h})"),
                None => "false".to_string(),
            }
        }
        "classify" => classify(alg, &p.map(alg)?).map_err(semantic)?.to_string(),
        "preserves?" => {
            let beta = p.map(alg)?;
            let par = parallelism(&mut p, config)?;
            let v = preservation_verdict(alg, &beta, &par).map_err(semantic)?;
            let undecided = if v.decided { "" } else { ", undecided" };
            format!("{} ({}{undecided})", v.preserves, v.reason)
        }
        other => return Err(ParseError::new(start, format!("unknown verb `{other}`")).into()),
    };
    p.expect_end()?;
    Ok(out)
}
