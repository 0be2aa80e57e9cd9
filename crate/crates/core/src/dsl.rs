//! Input files for the command-line tools.
//!
//! One statement per line; `#` starts a comment.
//!
//! ```text
//! function f/1                   # uninterpreted function and its arity
//! representation = roos(-1/2, 0, -1/2)
//! mass = (r^2 + 1)^2             # inverse mass f = 1/(2m)
//! potential = -4*r^2
//! operator = x1*p2 - x2*p1
//! ```
//!
//! A file holding a single bare expression is read as `mass = <expr>`.

use std::collections::BTreeMap;

use crate::expr::{parse_with, Declarations, Expr, Rational};
use crate::ops::optext::parse_operator;
use crate::ops::{Hamiltonian, LinOp, Representation};
use crate::Error;

#[derive(Clone, Debug, Default)]
pub struct InputFile {
    pub decl: Declarations,
    pub values: BTreeMap<String, String>,
}

const KEYS: [&str; 4] = ["representation", "mass", "potential", "operator"];

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("line {line}: {msg}"))
}

impl InputFile {
    pub fn parse(text: &str) -> Result<InputFile, Error> {
        let mut out = InputFile::default();
        let mut bare = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("function ") {
                let (name, arity) = rest
                    .trim()
                    .split_once('/')
                    .ok_or_else(|| bad(no, "expected `function name/arity`"))?;
                let arity: usize = arity.trim().parse().map_err(|_| bad(no, "arity is not an integer"))?;
                out.decl.declare(name.trim(), arity);
            } else if let Some((k, v)) = line.split_once('=') {
                let key = k.trim();
                if !KEYS.contains(&key) {
                    return Err(bad(no, format!("unknown key `{key}`")));
                }
                if out.values.insert(key.to_string(), v.trim().to_string()).is_some() {
                    return Err(bad(no, format!("duplicate key `{key}`")));
                }
            } else {
                bare.push(line.to_string());
            }
        }
        match (bare.len(), out.values.is_empty()) {
            (0, _) => {}
            (1, true) => {
                out.values.insert("mass".into(), bare.remove(0));
            }
            _ => return Err(Error::Invalid(format!("unexpected line `{}`", bare[0]))),
        }
        Ok(out)
    }

    fn required(&self, key: &str) -> Result<&str, Error> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Invalid(format!("missing `{key} = ...`")))
    }

    pub fn expr(&self, key: &str) -> Result<Expr, Error> {
        Ok(parse_with(self.required(key)?, &self.decl)?)
    }

    pub fn representation(&self) -> Result<Representation, Error> {
        match self.values.get("representation") {
            None => Ok(Representation::Divergence),
            Some(text) => parse_representation(text),
        }
    }

    /// Hamiltonian; a missing potential is zero.
    pub fn hamiltonian(&self) -> Result<Hamiltonian, Error> {
        let v = match self.values.get("potential") {
            Some(_) => self.expr("potential")?,
            None => Expr::zero(),
        };
        Hamiltonian::new(self.representation()?, self.expr("mass")?, v)
    }

    pub fn operator(&self, named: &BTreeMap<String, LinOp>) -> Result<LinOp, Error> {
        parse_operator(self.required("operator")?, &self.decl, named)
    }
}

fn exponent(text: &str) -> Result<Rational, Error> {
    parse_with(text.trim(), &Declarations::default())?
        .as_num()
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("ordering exponent `{text}` is not a rational number")))
}

pub fn parse_representation(text: &str) -> Result<Representation, Error> {
    let t = text.trim();
    match t {
        "divergence" => return Ok(Representation::Divergence),
        "sqrt" => return Ok(Representation::Sqrt),
        "gauge" => return Ok(Representation::Gauge),
        _ => {}
    }
    let inner = t
        .strip_prefix("roos(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Invalid(format!("unknown representation `{t}`")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Invalid("roos(...) takes three exponents".into()));
    }
    Representation::roos(exponent(parts[0])?, exponent(parts[1])?, exponent(parts[2])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let f = InputFile::parse(
            "# so4\nfunction g/1\nrepresentation = roos(-1/2, 0, -1/2)\nmass = (r^2+1)^2\npotential = -4*r^2 + g(r)\n",
        )
        .unwrap();
        let h = f.hamiltonian().unwrap();
        assert_eq!(h.representation.name(), "roos(-1/2,0,-1/2)");
    }

    #[test]
    fn bare_expression() {
        let f = InputFile::parse("exp(2*x1)\n").unwrap();
        assert_eq!(f.expr("mass").unwrap().to_string(), "exp(2*x1)");
    }

    #[test]
    fn errors() {
        assert!(InputFile::parse("colour = red").is_err());
        assert!(InputFile::parse("function f").is_err());
        assert!(parse_representation("roos(1,1,1)").is_err());
        assert!(InputFile::parse("mass = 1").unwrap().operator(&BTreeMap::new()).is_err());
    }
}
