use std::path::{Path, PathBuf};

use serde_json::Value;
use staircase_core::rational::{self, Rational};
use staircase_core::{Face, Instance};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON at line {line}, column {column}: {source}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        source: serde_json::Error,
    },
    #[error("{what}: {msg}")]
    Arg { what: String, msg: String },
    #[error("{0}")]
    Core(#[from] staircase_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    /// 2 for failed internal checks, 1 for everything the user can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_check_failure() => 2,
            CliError::Verify(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        line: source.line(),
        column: source.column(),
        source,
    })
}

/// A kind-tagged instance; an untagged PL set is read as a downset.
pub fn read_instance(path: &Path) -> CliResult<Instance> {
    let mut v = read_json(path)?;
    if let Some(o) = v.as_object_mut() {
        if !o.contains_key("kind") && o.contains_key("cells") {
            o.insert("kind".into(), "downset".into());
        }
    }
    Instance::from_json(&v).map_err(|e| match e {
        staircase_core::Error::Parse(m) => CliError::Arg {
            what: path.display().to_string(),
            msg: m,
        },
        e => e.into(),
    })
}

fn arg_json(what: &str, s: &str) -> CliResult<Value> {
    serde_json::from_str(s).map_err(|e| CliError::Arg {
        what: what.into(),
        msg: format!("{s:?} is not JSON ({e})"),
    })
}

pub fn face(what: &str, s: &str, n: usize) -> CliResult<Face> {
    let v = arg_json(what, s)?;
    let coords: Vec<usize> = serde_json::from_value(v).map_err(|_| CliError::Arg {
        what: what.into(),
        msg: format!("{s:?} is not a list of 1-based coordinates"),
    })?;
    Face::from_one_based(&coords, n).map_err(|e| CliError::Arg {
        what: what.into(),
        msg: e.to_string(),
    })
}

pub fn opt_face(what: &str, s: Option<&String>, n: usize) -> CliResult<Option<Face>> {
    s.map(|s| face(what, s, n)).transpose()
}

fn rat(what: &str, v: &Value) -> CliResult<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(x) if x.is_i64() => x.to_string(),
        _ => {
            return Err(CliError::Arg {
                what: what.into(),
                msg: format!("{v} is not an integer or a rational string"),
            })
        }
    };
    rational::parse(&text).map_err(|e| CliError::Arg {
        what: what.into(),
        msg: e.to_string(),
    })
}

pub fn rational_arg(what: &str, s: &str) -> CliResult<Rational> {
    rational::parse(s).map_err(|e| CliError::Arg {
        what: what.into(),
        msg: e.to_string(),
    })
}

pub fn point(what: &str, s: &str, n: usize) -> CliResult<Vec<Rational>> {
    let v = arg_json(what, s)?;
    let items = v.as_array().ok_or_else(|| CliError::Arg {
        what: what.into(),
        msg: "expected a JSON list".into(),
    })?;
    if items.len() != n {
        return Err(CliError::Arg {
            what: what.into(),
            msg: format!("expected {n} coordinates, found {}", items.len()),
        });
    }
    items.iter().map(|x| rat(what, x)).collect()
}

/// `[lo,hi]` for every axis or one pair per axis.
pub fn bbox(s: &str, n: usize) -> CliResult<(Vec<Rational>, Vec<Rational>)> {
    let what = "--box";
    let v = arg_json(what, s)?;
    let bad = || CliError::Arg {
        what: what.into(),
        msg: format!("expected [lo,hi] or {n} pairs [[lo,hi],...]"),
    };
    let items = v.as_array().ok_or_else(bad)?;
    let pairs: Vec<&Value> = if items.iter().all(Value::is_array) {
        items.iter().collect()
    } else {
        vec![&v; n]
    };
    if pairs.len() != n {
        return Err(bad());
    }
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for p in pairs {
        let p = p.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
        let (l, h) = (rat(what, &p[0])?, rat(what, &p[1])?);
        if l >= h {
            return Err(CliError::Arg {
                what: what.into(),
                msg: "each lower corner must be below the upper corner".into(),
            });
        }
        lo.push(l);
        hi.push(h);
    }
    Ok((lo, hi))
}
