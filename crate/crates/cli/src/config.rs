//! Flat `key = value` configuration files.
//!
//! ```text
//! # comment
//! field = qsqrt(3)                 # rationals | qsqrt(m) | f2tu
//! algebra = ordinary(-1, -1)       # ordinary(a, b) | cyclic_char2(b) | table(9 products)
//! defining_reps = [span(1; i+(1+s)*j)]
//! flags = all_separable            # comma separated, may be empty
//! complement_reps = [...]          # optional, with complement_flags
//! samples = 100
//! seed = 42
//! ```
//!
//! `table(...)` lists the products `ii, ij, ik, ji, jj, jk, ki, kj, kk` in
//! that order, separated by commas. Every key may appear at most once and
//! unknown keys are rejected.

use std::collections::HashMap;
use std::fmt;

use cliffpar_core::parse::{ParseError, Parser};
use cliffpar_core::{
    CliffordLikeParallelism, DefiningSet, FieldConfig, FieldElem, Quaternion, QuaternionAlgebra,
    SeparabilityFlag,
};
use thiserror::Error;

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 42;

const KEYS: [&str; 8] = [
    "field",
    "algebra",
    "defining_reps",
    "flags",
    "complement_reps",
    "complement_flags",
    "samples",
    "seed",
];

/// A configuration error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub field: FieldConfig,
    pub algebra: QuaternionAlgebra,
    pub parallelism: CliffordLikeParallelism,
    pub samples: usize,
    pub seed: u64,
}

/// A value together with where it starts in the file.
#[derive(Debug, Clone)]
struct Entry<'a> {
    value: &'a str,
    line: usize,
    column: usize,
}

impl Entry<'_> {
    fn error(&self, message: impl fmt::Display) -> ConfigError {
        ConfigError {
            line: self.line,
            column: self.column,
            message: message.to_string(),
        }
    }

    fn parse_error(&self, e: ParseError) -> ConfigError {
        ConfigError {
            line: self.line,
            column: self.column + e.pos,
            message: e.message,
        }
    }

    /// Runs `f` on the whole value, which must consume it entirely.
    fn parse<T>(
        &self,
        f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
    ) -> Result<T, ConfigError> {
        let mut p = Parser::new(self.value);
        let v = f(&mut p).map_err(|e| self.parse_error(e))?;
        p.expect_end().map_err(|e| self.parse_error(e))?;
        Ok(v)
    }
}

fn split_entries(text: &str) -> Result<HashMap<&str, Entry<'_>>, ConfigError> {
    let mut entries = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some(eq) = content.find('=') else {
            return Err(ConfigError {
                line,
                column: indent + 1,
                message: "expected `key = value`".into(),
            });
        };
        let key = content[..eq].trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError {
                line,
                column: indent + 1,
                message: format!("unknown key `{key}`"),
            });
        }
        let after = &content[eq + 1..];
        let value = after.trim();
        let column = eq + 2 + (after.len() - after.trim_start().len());
        if entries
            .insert(
                key,
                Entry {
                    value,
                    line,
                    column,
                },
            )
            .is_some()
        {
            return Err(ConfigError {
                line,
                column: indent + 1,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(entries)
}

fn parse_field(e: &Entry) -> Result<FieldConfig, ConfigError> {
    e.parse(|p| {
        let start = p.pos();
        match p.word()? {
            "rationals" | "Q" => Ok(FieldConfig::rationals()),
            "f2tu" => Ok(FieldConfig::f2tu()),
            "qsqrt" => {
                p.expect('(')?;
                let neg = p.eat('-');
                let at = p.pos();
                let m: i64 = p
                    .word()?
                    .parse()
                    .map_err(|_| ParseError::new(at, "expected an integer"))?;
                p.expect(')')?;
                FieldConfig::quadratic(if neg { -m } else { m })
                    .map_err(|e| ParseError::new(start, e))
            }
            other => Err(ParseError::new(start, format!("unknown field `{other}`"))),
        }
    })
}

fn parse_algebra(e: &Entry, field: &FieldConfig) -> Result<QuaternionAlgebra, ConfigError> {
    e.parse(|p| {
        let start = p.pos();
        let name = p.word()?;
        p.expect('(')?;
        let at = |err: cliffpar_core::AlgebraError| ParseError::new(start, err);
        let alg = match name {
            "ordinary" => {
                let a = p.field_elem(field)?;
                p.expect(',')?;
                let b = p.field_elem(field)?;
                QuaternionAlgebra::ordinary(*field, a, b).map_err(at)?
            }
            "cyclic_char2" => QuaternionAlgebra::cyclic_char2(p.field_elem(field)?).map_err(at)?,
            "table" => {
                // Entries are linear combinations of 1, i, j, k, which read
                // the same in every algebra over the field.
                let scratch = default_algebra(field);
                let mut products: Vec<Quaternion> = Vec::with_capacity(9);
                for n in 0..9 {
                    if n > 0 {
                        p.expect(',')?;
                    }
                    products.push(p.quaternion(&scratch)?);
                }
                let mut it = products.into_iter();
                let table: [[Quaternion; 3]; 3] = std::array::from_fn(|_| {
                    std::array::from_fn(|_| it.next().expect("nine products"))
                });
                QuaternionAlgebra::from_table(*field, table).map_err(at)?
            }
            other => return Err(ParseError::new(start, format!("unknown algebra `{other}`"))),
        };
        p.expect(')')?;
        Ok(alg)
    })
}

fn default_algebra(field: &FieldConfig) -> QuaternionAlgebra {
    if field.characteristic() == 2 {
        let b = cliffpar_core::F2Poly::t().add(&cliffpar_core::F2Poly::u());
        QuaternionAlgebra::cyclic_char2(FieldElem::from(b))
    } else {
        QuaternionAlgebra::ordinary_default(*field)
    }
    .expect("default algebra over a supported field")
}

fn parse_flags(e: &Entry) -> Result<Vec<SeparabilityFlag>, ConfigError> {
    e.parse(|p| {
        let mut flags = Vec::new();
        while !p.at_end() {
            if !flags.is_empty() {
                p.expect(',')?;
            }
            let start = p.pos();
            flags.push(match p.word()? {
                "all_separable" => SeparabilityFlag::AllSeparable,
                "all_inseparable" => SeparabilityFlag::AllInseparable,
                other => return Err(ParseError::new(start, format!("unknown flag `{other}`"))),
            });
        }
        Ok(flags)
    })
}

fn parse_number<T: std::str::FromStr>(e: &Entry) -> Result<T, ConfigError> {
    e.value.parse().map_err(|_| {
        e.error(format!(
            "expected a non-negative integer, found `{}`",
            e.value
        ))
    })
}

fn parse_defining(
    entries: &HashMap<&str, Entry>,
    alg: &QuaternionAlgebra,
    reps_key: &str,
    flags_key: &str,
) -> Result<Option<(DefiningSet, usize, usize)>, ConfigError> {
    let reps = entries.get(reps_key);
    let flags = entries.get(flags_key);
    let Some(anchor) = reps.or(flags) else {
        return Ok(None);
    };
    let reps = match reps {
        Some(e) => e.parse(|p| p.line_list(alg))?,
        None => Vec::new(),
    };
    let flags = match flags {
        Some(e) => parse_flags(e)?,
        None => Vec::new(),
    };
    Ok(Some((
        DefiningSet::new(reps, flags),
        anchor.line,
        anchor.column,
    )))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let entries = split_entries(text)?;
        let field_entry = entries.get("field").ok_or(ConfigError {
            line: 1,
            column: 1,
            message: "missing key `field`".into(),
        })?;
        let field = parse_field(field_entry)?;
        let algebra = match entries.get("algebra") {
            Some(e) => parse_algebra(e, &field)?,
            None => default_algebra(&field),
        };
        let defining = parse_defining(&entries, &algebra, "defining_reps", "flags")?;
        let (defining, line, column) = defining.unwrap_or((DefiningSet::default(), 1, 1));
        let invalid = |line, column, e: cliffpar_core::ParallelismError| ConfigError {
            line,
            column,
            message: e.to_string(),
        };
        let mut parallelism = CliffordLikeParallelism::new(algebra.clone(), defining)
            .map_err(|e| invalid(line, column, e))?;
        if let Some((complement, line, column)) =
            parse_defining(&entries, &algebra, "complement_reps", "complement_flags")?
        {
            parallelism = parallelism
                .with_complement(complement)
                .map_err(|e| invalid(line, column, e))?;
        }
        let samples = entries.get("samples").map(parse_number).transpose()?;
        let seed = entries.get("seed").map(parse_number).transpose()?;
        Ok(Self {
            field,
            algebra,
            parallelism,
            samples: samples.unwrap_or(DEFAULT_SAMPLES),
            seed: seed.unwrap_or(DEFAULT_SEED),
        })
    }
}
