//! Recursive-descent parser for the expression DSL.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?
//! primary := number | '(' expr ')' | ident call?
//! call    := "'"* ('[' int (',' int)* ']')? '(' expr (',' expr)* ')'
//! ```
//!
//! `r` and `phi` expand to `sqrt(x1^2+x2^2)` and `atan2(x2, x1)` unless
//! declared as plain symbols.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Num;

use super::{simplify, Expr, Func, Node, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{name}` at {pos}")]
    UnknownFunction { name: String, pos: usize },
    #[error("`{name}` expects {expected} argument(s), got {got} (at {pos})")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
        pos: usize,
    },
}

/// Uninterpreted functions (with arity) and symbols exempt from sugar.
#[derive(Clone, Debug, Default)]
pub struct Declarations {
    pub functions: BTreeMap<String, usize>,
    pub plain: BTreeSet<String>,
}

impl Declarations {
    pub fn function(mut self, name: &str, arity: usize) -> Self {
        self.functions.insert(name.to_string(), arity);
        self
    }

    pub fn plain_symbol(mut self, name: &str) -> Self {
        self.plain.insert(name.to_string());
        self
    }

    pub fn declare(&mut self, name: &str, arity: usize) {
        self.functions.insert(name.to_string(), arity);
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            let mut value = Rational::from_integer(
                BigInt::from_str_radix(if int_part.is_empty() { "0" } else { &int_part }, 10).unwrap(),
            );
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let frac: String = chars[fs..i].iter().collect();
                if !frac.is_empty() {
                    let num = BigInt::from_str_radix(&frac, 10).unwrap();
                    let den = num_traits::pow(BigInt::from(10), frac.len());
                    value += Rational::new(num, den);
                }
            }
            out.push((Tok::Num(value), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^(),'[]".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    decl: &'a Declarations,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                acc = acc / self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.unary()?;
            return Ok(match simplify(&e).as_num() {
                Some(q) => base.pow(q.clone()),
                None => base.pow_expr(&e),
            });
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.eat(',') {
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.at += 1;
                Ok(Expr::num(r))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.identifier(&name, pos)
            }
            Some(_) => self.err("expected a number, name or `(`"),
            None => self.err("unexpected end of input"),
        }
    }

    fn identifier(&mut self, name: &str, pos: usize) -> Result<Expr, ParseError> {
        let mut primes = 0u32;
        while self.eat('\'') {
            primes += 1;
        }
        let mut index: Option<Vec<u32>> = None;
        if primes > 0 && self.eat('[') {
            let mut v = Vec::new();
            loop {
                match self.peek().cloned() {
                    Some(Tok::Num(r)) if r.is_integer() => {
                        self.at += 1;
                        v.push(r.to_integer().try_into().map_err(|_| ParseError::Syntax {
                            pos: self.pos(),
                            msg: "derivative order too large".into(),
                        })?);
                    }
                    _ => return self.err("expected a derivative order"),
                }
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
            index = Some(v);
        }
        let is_call = self.peek() == Some(&Tok::Op('('));
        if let Some(&arity) = self.decl.functions.get(name) {
            if !is_call {
                return self.err(&format!("function `{name}` needs arguments"));
            }
            let args = self.args()?;
            if args.len() != arity {
                return Err(ParseError::Arity {
                    name: name.into(),
                    expected: arity,
                    got: args.len(),
                    pos,
                });
            }
            let deriv = match index {
                Some(v) => {
                    if v.len() != arity || primes != 1 {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "derivative index must be written name'[k1,..](..) with one entry per argument".into(),
                        });
                    }
                    v
                }
                None if primes == 0 => vec![0; arity],
                None if arity == 1 => vec![primes],
                None => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "primes are only allowed on one-argument functions".into(),
                    })
                }
            };
            return Ok(Expr::apply_deriv(name, deriv, args));
        }
        if primes > 0 {
            return Err(ParseError::UnknownFunction {
                name: name.into(),
                pos,
            });
        }
        let builtin = Func::from_name(name).map(|f| (f.name(), f.arity())).or(match name {
            "sqrt" => Some(("sqrt", 1)),
            _ => None,
        });
        if let Some((canon, arity)) = builtin {
            if !is_call {
                return self.err(&format!("function `{name}` needs arguments"));
            }
            let args = self.args()?;
            if args.len() != arity {
                return Err(ParseError::Arity {
                    name: name.into(),
                    expected: arity,
                    got: args.len(),
                    pos,
                });
            }
            let a = &args[0];
            return Ok(match canon {
                "sqrt" => a.sqrt(),
                "exp" => Expr::exp(a),
                "log" => Expr::log(a),
                "sin" => Expr::sin(a),
                "cos" => Expr::cos(a),
                "sinh" => Expr::sinh(a),
                "cosh" => Expr::cosh(a),
                _ => Expr::atan2(args[0].clone(), args[1].clone()),
            });
        }
        if is_call {
            return Err(ParseError::UnknownFunction {
                name: name.into(),
                pos,
            });
        }
        if !self.decl.plain.contains(name) {
            match name {
                "r" => return Ok(Expr::r()),
                "phi" => return Ok(Expr::phi()),
                _ => {}
            }
        }
        Ok(Expr::sym(name))
    }
}

pub fn parse_with(text: &str, decl: &Declarations) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
        decl,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parse with no uninterpreted functions declared.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, &Declarations::default())
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str_radix(n, 10).ok()?;
    let d = BigInt::from_str_radix(d, 10).ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Inverse of [`Expr::to_prefix`]; rebuilds the exact node structure.
pub fn parse_prefix(text: &str) -> Result<Expr, ParseError> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c == '[' || c == ']' || c.is_whitespace() {
            if !cur.is_empty() {
                toks.push((std::mem::take(&mut cur), start));
            }
            if !c.is_whitespace() {
                toks.push((c.to_string(), i));
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        toks.push((cur, start));
    }
    let mut at = 0;
    let e = prefix_node(&toks, &mut at)?;
    if at != toks.len() {
        return Err(ParseError::Syntax {
            pos: toks[at].1,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(e)
}

fn prefix_node(toks: &[(String, usize)], at: &mut usize) -> Result<Expr, ParseError> {
    let syn = |pos: usize, msg: &str| ParseError::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let (tok, pos) = toks.get(*at).ok_or_else(|| syn(usize::MAX, "unexpected end of input"))?;
    let pos = *pos;
    *at += 1;
    if tok != "(" {
        if let Some(r) = parse_rational(tok) {
            return Ok(Expr::num(r));
        }
        return Ok(Expr::sym(tok));
    }
    let (head, _) = toks.get(*at).ok_or_else(|| syn(pos, "empty form"))?.clone();
    *at += 1;
    let mut kids = Vec::new();
    let mut deriv = Vec::new();
    let mut fname = String::new();
    if head == "apply" {
        fname = toks.get(*at).ok_or_else(|| syn(pos, "missing function name"))?.0.clone();
        *at += 1;
        if toks.get(*at).map(|t| t.0.as_str()) != Some("[") {
            return Err(syn(pos, "expected derivative index"));
        }
        *at += 1;
        while let Some((t, p)) = toks.get(*at) {
            *at += 1;
            if t == "]" {
                break;
            }
            deriv.push(t.parse::<u32>().map_err(|_| syn(*p, "bad derivative order"))?);
        }
    }
    let mut q = None;
    loop {
        match toks.get(*at) {
            Some((t, _)) if t == ")" => {
                *at += 1;
                break;
            }
            Some(_) => {
                if head == "^" && kids.len() == 1 {
                    let (t, p) = &toks[*at];
                    *at += 1;
                    q = Some(parse_rational(t).ok_or_else(|| syn(*p, "bad exponent"))?);
                } else {
                    kids.push(prefix_node(toks, at)?);
                }
            }
            None => return Err(syn(pos, "unclosed form")),
        }
    }
    let node = match head.as_str() {
        "+" => Node::Add(kids),
        "*" => Node::Mul(kids),
        "^" => {
            let q = q.ok_or_else(|| syn(pos, "missing exponent"))?;
            Node::Pow(kids.pop().ok_or_else(|| syn(pos, "missing base"))?, q)
        }
        "apply" => {
            if deriv.len() != kids.len() {
                return Err(syn(pos, "derivative index length differs from argument count"));
            }
            return Ok(Expr::apply_deriv(&fname, deriv, kids));
        }
        other => match Func::from_name(other) {
            Some(f) => {
                if kids.len() != f.arity() {
                    return Err(ParseError::Arity {
                        name: other.into(),
                        expected: f.arity(),
                        got: kids.len(),
                        pos,
                    });
                }
                Node::Fun(f, kids)
            }
            None => {
                return Err(ParseError::UnknownFunction {
                    name: other.into(),
                    pos,
                })
            }
        },
    };
    Ok(Expr::from_node(node))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(simplify(&parse("2^3^2").unwrap()), Expr::int(512));
        assert_eq!(simplify(&parse("-2^2").unwrap()), Expr::int(-4));
        assert_eq!(simplify(&parse("8/2/2").unwrap()), Expr::int(2));
        assert_eq!(simplify(&parse("0.25*4").unwrap()), Expr::one());
    }

    #[test]
    fn sugar() {
        assert_eq!(parse("r").unwrap(), Expr::r());
        assert_eq!(parse("phi").unwrap(), Expr::phi());
        let d = Declarations::default().plain_symbol("r");
        assert_eq!(parse_with("r", &d).unwrap(), Expr::sym("r"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("foo(x1)"), Err(ParseError::UnknownFunction { .. })));
        assert!(matches!(parse("atan2(x1)"), Err(ParseError::Arity { .. })));
        match parse("x1 + * x2") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        let d = Declarations::default().function("f", 2);
        assert!(matches!(parse_with("f(x1)", &d), Err(ParseError::Arity { .. })));
    }

    #[test]
    fn derivative_notation() {
        let d = Declarations::default().function("f", 1).function("g", 2);
        let e = parse_with("f''(r)", &d).unwrap();
        assert!(matches!(e.node(), Node::Apply(a) if a.deriv == vec![2]));
        let e = parse_with("g'[1,2](x1, x2)", &d).unwrap();
        assert!(matches!(e.node(), Node::Apply(a) if a.deriv == vec![1, 2]));
    }

    #[test]
    fn prefix_round_trip() {
        let d = Declarations::default().function("f", 1);
        let e = simplify(&parse_with("exp(nu*phi)*f'(r) - 3/4*x1^(1/3)", &d).unwrap());
        assert_eq!(parse_prefix(&e.to_prefix()).unwrap(), e);
    }
}
