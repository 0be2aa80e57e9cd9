//! Operators written as text: linear combinations `c_k * A_k + c_0` where the
//! `A_k` are momenta, derivatives or named operators and the coefficients are
//! ordinary expressions that may contain the imaginary unit `i`.
//!
//! Coefficients always act after the operator they multiply, so
//! `x1*p2 - x2*p1` is the rotation generator.

use std::collections::BTreeMap;

use super::linop::LinOp;
use crate::expr::{diff, parse_with, simplify, CExpr, Declarations, Expr};
use crate::Error;

/// Operator names understood without declaration.
pub const BUILTIN: [&str; 8] = ["p1", "p2", "d1", "d2", "dt", "P0", "J", "I"];

/// `J = x1 p2 − x2 p1`.
pub fn rotation() -> LinOp {
    LinOp::mult(Expr::x1())
        .compose(&LinOp::p(2))
        .sub(&LinOp::mult(Expr::x2()).compose(&LinOp::p(1)))
}

fn builtin(name: &str) -> Option<LinOp> {
    Some(match name {
        "p1" => LinOp::p(1),
        "p2" => LinOp::p(2),
        "d1" => LinOp::d(1),
        "d2" => LinOp::d(2),
        "dt" => LinOp::d(0),
        "P0" => LinOp::d(0).scale(&CExpr::i()),
        "J" => rotation(),
        "I" => LinOp::identity(),
        _ => return None,
    })
}

/// Split a coefficient that is linear in the symbol `i` into real and
/// imaginary parts.
pub fn split_imaginary(c: &Expr) -> Result<CExpr, Error> {
    let re = simplify(&c.subs1("i", &Expr::zero()));
    let im = simplify(&diff(c, "i"));
    let rest = simplify(&(c - &re - Expr::sym("i") * &im));
    if !rest.is_zero_literal() || im.depends_on("i") {
        return Err(Error::Invalid(format!("coefficient `{c}` is not linear in i")));
    }
    Ok(CExpr::new(re, im))
}

/// Parse operator text. `named` supplies further operators by name; they
/// take precedence over the built-in ones.
pub fn parse_operator(text: &str, decl: &Declarations, named: &BTreeMap<String, LinOp>) -> Result<LinOp, Error> {
    let mut decl = decl.clone();
    let mut ops: BTreeMap<String, LinOp> = BTreeMap::new();
    for name in BUILTIN {
        ops.insert(name.to_string(), builtin(name).expect("builtin"));
    }
    for (k, v) in named {
        ops.insert(k.clone(), v.clone());
    }
    for k in ops.keys() {
        decl = decl.plain_symbol(k);
    }
    let e = parse_with(text, &decl)?;
    let present: Vec<String> = e.free_symbols().into_iter().filter(|s| ops.contains_key(s)).collect();
    let mut out = LinOp::zero();
    let mut rest = e.clone();
    for name in &present {
        let c = simplify(&diff(&e, name));
        if present.iter().any(|o| c.depends_on(o)) {
            return Err(Error::Invalid(format!("`{text}` is not linear in the operator symbols")));
        }
        rest = rest - &c * Expr::sym(name);
        out = out.add(&LinOp::mult(split_imaginary(&c)?).compose(&ops[name]));
    }
    let rest = simplify(&rest);
    if present.iter().any(|o| rest.depends_on(o)) {
        return Err(Error::Invalid(format!("`{text}` is not linear in the operator symbols")));
    }
    Ok(out.add(&LinOp::mult(split_imaginary(&rest)?)).simplify())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> LinOp {
        parse_operator(s, &Declarations::default(), &BTreeMap::new()).unwrap()
    }

    #[test]
    fn rotation_text() {
        assert_eq!(op("x1*p2 - x2*p1"), rotation());
        assert_eq!(op("J"), rotation());
    }

    #[test]
    fn time_terms() {
        let q = op("i*t*dt + x1*p1 + x2*p2");
        assert_eq!(q.coeff(&[1, 0, 0]), CExpr::imag(Expr::t()));
        assert_eq!(q.coeff(&[0, 1, 0]), CExpr::imag(-Expr::x1()));
        let q = op("J + nu*t");
        assert_eq!(q.coeff(&[0, 0, 0]), CExpr::real(Expr::sym("nu") * Expr::t()));
    }

    #[test]
    fn named_and_unit() {
        let mut named = BTreeMap::new();
        named.insert("Q3".to_string(), LinOp::p(1));
        let q = parse_operator("2*i*Q3 - nu*I", &Declarations::default(), &named).unwrap();
        assert_eq!(q.coeff(&[0, 1, 0]), CExpr::real(Expr::int(2)));
        assert_eq!(q.coeff(&[0, 0, 0]), CExpr::real(-Expr::sym("nu")));
    }

    #[test]
    fn products_of_operators_rejected() {
        assert!(parse_operator("p1*p2", &Declarations::default(), &BTreeMap::new()).is_err());
        assert!(parse_operator("i*i*p1", &Declarations::default(), &BTreeMap::new()).is_err());
    }
}
