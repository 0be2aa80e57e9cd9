use super::{rat, simplify, Expr, Func, Node};

/// Partial derivative with respect to the symbol `var`, not simplified.
pub fn diff(e: &Expr, var: &str) -> Expr {
    match e.node() {
        Node::Num(_) => Expr::zero(),
        Node::Sym(s) => {
            if s == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Add(v) => Expr::add_all(v.iter().map(|t| diff(t, var))),
        Node::Mul(v) => {
            let mut terms = Vec::new();
            for i in 0..v.len() {
                let d = diff(&v[i], var);
                if d.is_zero_literal() {
                    continue;
                }
                let mut fs: Vec<Expr> = v.clone();
                fs[i] = d;
                terms.push(Expr::mul_all(fs));
            }
            Expr::add_all(terms)
        }
        Node::Pow(b, q) => {
            let db = diff(b, var);
            if db.is_zero_literal() {
                return Expr::zero();
            }
            Expr::mul_all([Expr::num(q.clone()), b.pow(q - rat(1, 1)), db])
        }
        Node::Fun(f, args) => {
            let a = &args[0];
            match f {
                Func::Atan2 => {
                    let (y, x) = (&args[0], &args[1]);
                    let dy = diff(y, var);
                    let dx = diff(x, var);
                    if dy.is_zero_literal() && dx.is_zero_literal() {
                        return Expr::zero();
                    }
                    (x * dy - y * dx) / (x.powi(2) + y.powi(2))
                }
                _ => {
                    let da = diff(a, var);
                    if da.is_zero_literal() {
                        return Expr::zero();
                    }
                    let outer = match f {
                        Func::Exp => e.clone(),
                        Func::Log => a.recip(),
                        Func::Sin => Expr::cos(a),
                        Func::Cos => -Expr::sin(a),
                        Func::Sinh => Expr::cosh(a),
                        Func::Cosh => Expr::sinh(a),
                        Func::Atan2 => unreachable!(),
                    };
                    outer * da
                }
            }
        }
        Node::Apply(ap) => {
            let mut terms = Vec::new();
            for (k, arg) in ap.args.iter().enumerate() {
                let da = diff(arg, var);
                if da.is_zero_literal() {
                    continue;
                }
                let mut deriv = ap.deriv.clone();
                deriv[k] += 1;
                terms.push(Expr::apply_deriv(&ap.name, deriv, ap.args.clone()) * da);
            }
            Expr::add_all(terms)
        }
    }
}

/// `n`-th partial derivative, canonicalized after every step.
pub fn diff_n(e: &Expr, var: &str, n: u32) -> Expr {
    let mut out = e.clone();
    for _ in 0..n {
        out = simplify(&diff(&out, var));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn d(text: &str, var: &str) -> Expr {
        simplify(&diff(&parse(text).unwrap(), var))
    }

    fn s(text: &str) -> Expr {
        simplify(&parse(text).unwrap())
    }

    #[test]
    fn elementary_rules() {
        assert_eq!(d("x1^3", "x1"), s("3*x1^2"));
        assert_eq!(d("exp(2*x1)", "x1"), s("2*exp(2*x1)"));
        assert_eq!(d("log(x1)", "x1"), s("1/x1"));
        assert_eq!(d("sin(x1)*cos(x2)", "x2"), s("-sin(x1)*sin(x2)"));
        assert_eq!(d("cosh(x1)", "x1"), s("sinh(x1)"));
    }

    #[test]
    fn polar_derivatives() {
        assert_eq!(d("r", "x1"), s("x1/r"));
        assert_eq!(d("phi", "x1"), s("-x2/r^2"));
        assert_eq!(d("phi", "x2"), s("x1/r^2"));
    }

    #[test]
    fn chain_rule_through_uninterpreted() {
        let dec = crate::expr::Declarations::default().function("f", 1);
        let e = crate::expr::parse_with("f(r)", &dec).unwrap();
        let got = simplify(&diff(&e, "x1"));
        let want = simplify(&crate::expr::parse_with("f'(r)*x1/r", &dec).unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn higher_order() {
        assert_eq!(diff_n(&s("x1^4"), "x1", 3), s("24*x1"));
        assert_eq!(diff_n(&s("x2"), "x1", 2), Expr::zero());
    }
}
