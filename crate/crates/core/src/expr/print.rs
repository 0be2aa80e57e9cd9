use num_traits::{One, Signed};

use super::{Expr, Node, Rational};

const ADD: u8 = 1;
const MUL: u8 = 2;
const POW: u8 = 3;
const ATOM: u8 = 4;

fn num_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Precedence of the printed form of `e`.
fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Num(r) => {
            if r.is_negative() {
                ADD
            } else if r.is_integer() {
                ATOM
            } else {
                MUL
            }
        }
        Node::Sym(_) | Node::Fun(..) | Node::Apply(_) => ATOM,
        Node::Add(_) => ADD,
        Node::Mul(v) => {
            if v.first().and_then(|f| f.as_num()).is_some_and(|c| c.is_negative()) {
                ADD
            } else {
                MUL
            }
        }
        Node::Pow(_, q) => {
            if q == &Rational::new(1.into(), 2.into()) {
                ATOM
            } else {
                POW
            }
        }
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = to_infix(e);
    if prec(e) < min {
        format!("({s})")
    } else {
        s
    }
}

/// `(negated?, magnitude)` for a sum term.
fn split_sign(e: &Expr) -> Option<Expr> {
    match e.node() {
        Node::Num(r) if r.is_negative() => Some(Expr::num(-r)),
        Node::Mul(v) => {
            let c = v.first()?.as_num()?;
            if !c.is_negative() {
                return None;
            }
            let mut rest: Vec<Expr> = v[1..].to_vec();
            let m = -c;
            if !m.is_one() {
                rest.insert(0, Expr::num(m));
            }
            Some(if rest.len() == 1 {
                rest.pop().unwrap()
            } else {
                Expr::from_node(Node::Mul(rest))
            })
        }
        _ => None,
    }
}

fn args_text(args: &[Expr]) -> String {
    args.iter().map(to_infix).collect::<Vec<_>>().join(", ")
}

/// Infix form accepted back by the parser.
pub(crate) fn to_infix(e: &Expr) -> String {
    match e.node() {
        Node::Num(r) => num_text(r),
        Node::Sym(s) => s.clone(),
        Node::Add(v) => {
            let mut out = String::new();
            for (i, t) in v.iter().enumerate() {
                match split_sign(t) {
                    Some(m) if i > 0 => {
                        out.push_str(" - ");
                        out.push_str(&wrap(&m, MUL));
                    }
                    _ => {
                        if i > 0 {
                            out.push_str(" + ");
                        }
                        out.push_str(&wrap(t, if i == 0 { ADD } else { MUL }));
                    }
                }
            }
            out
        }
        Node::Mul(v) => {
            let mut parts = Vec::new();
            let mut start = 0;
            let mut neg = false;
            if let Some(c) = v.first().and_then(|f| f.as_num()) {
                if c == &-Rational::one() {
                    neg = true;
                    start = 1;
                } else if c.is_negative() {
                    neg = true;
                    parts.push(num_text(&-c));
                    start = 1;
                } else {
                    parts.push(num_text(c));
                    start = 1;
                }
            }
            for f in &v[start..] {
                // a later rational factor needs parentheses to stay left-associative
                parts.push(wrap(f, if f.as_num().is_some() { ATOM } else { POW }));
            }
            let body = parts.join("*");
            if neg {
                format!("-{body}")
            } else {
                body
            }
        }
        Node::Pow(b, q) => {
            if q == &Rational::new(1.into(), 2.into()) {
                return format!("sqrt({})", to_infix(b));
            }
            let base = wrap(b, ATOM);
            if q.is_integer() && !q.is_negative() {
                format!("{base}^{}", num_text(q))
            } else {
                format!("{base}^({})", num_text(q))
            }
        }
        Node::Fun(f, args) => format!("{}({})", f.name(), args_text(args)),
        Node::Apply(a) => {
            let total: u32 = a.deriv.iter().sum();
            if total == 0 {
                format!("{}({})", a.name, args_text(&a.args))
            } else if a.args.len() == 1 && total <= 3 {
                format!("{}{}({})", a.name, "'".repeat(total as usize), args_text(&a.args))
            } else {
                let idx: Vec<String> = a.deriv.iter().map(|d| d.to_string()).collect();
                format!("{}'[{}]({})", a.name, idx.join(","), args_text(&a.args))
            }
        }
    }
}

/// Fully parenthesized prefix form.
pub(crate) fn to_prefix(e: &Expr) -> String {
    match e.node() {
        Node::Num(r) => num_text(r),
        Node::Sym(s) => s.clone(),
        Node::Add(v) => format!("(+ {})", join_prefix(v)),
        Node::Mul(v) => format!("(* {})", join_prefix(v)),
        Node::Pow(b, q) => format!("(^ {} {})", to_prefix(b), num_text(q)),
        Node::Fun(f, args) => format!("({} {})", f.name(), join_prefix(args)),
        Node::Apply(a) => {
            let idx: Vec<String> = a.deriv.iter().map(|d| d.to_string()).collect();
            format!("(apply {} [{}] {})", a.name, idx.join(" "), join_prefix(&a.args))
        }
    }
}

fn join_prefix(v: &[Expr]) -> String {
    v.iter().map(to_prefix).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, simplify};

    #[test]
    fn readable_output() {
        let e = simplify(&parse("x1 - 2*x2 + 1/2").unwrap());
        let text = e.to_string();
        assert!(text.contains(" - 2*x2"), "{text}");
    }

    #[test]
    fn prefix_form() {
        let e = parse("x1^(3/4)").unwrap();
        assert_eq!(e.to_prefix(), "(^ x1 3/4)");
    }
}
