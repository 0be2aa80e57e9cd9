//! Linear differential operators in `t, x1, x2` with complex coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{CExpr, Expr, ProbeConfig, ZeroTest, T, X1, X2};

/// Derivative multi-index over `(t, x1, x2)`.
pub type Multi = [u32; 3];

pub const VARS: [&str; 3] = [T, X1, X2];

/// Human label of a derivative monomial, e.g. `d1^2`, `dt`, `d1*d2`, `1`.
pub fn label(m: &Multi) -> String {
    let names = ["dt", "d1", "d2"];
    let mut parts = Vec::new();
    for (k, &n) in m.iter().enumerate() {
        match n {
            0 => {}
            1 => parts.push(names[k].to_string()),
            _ => parts.push(format!("{}^{}", names[k], n)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// `Σ c_α ∂^α`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinOp {
    pub terms: BTreeMap<Multi, CExpr>,
}

impl LinOp {
    pub fn zero() -> LinOp {
        LinOp::default()
    }

    pub fn identity() -> LinOp {
        LinOp::mult(CExpr::one())
    }

    /// Multiplication operator.
    pub fn mult(c: impl Into<CExpr>) -> LinOp {
        LinOp::term([0, 0, 0], c)
    }

    pub fn term(m: Multi, c: impl Into<CExpr>) -> LinOp {
        let mut op = LinOp::zero();
        op.push(m, c.into());
        op
    }

    /// `∂` with respect to variable index 0 (t), 1 (x1) or 2 (x2).
    pub fn d(var: usize) -> LinOp {
        let mut m = [0; 3];
        m[var] = 1;
        LinOp::term(m, CExpr::one())
    }

    /// Momentum `p_a = -i ∂_a` for `a` in 1..=2.
    pub fn p(a: usize) -> LinOp {
        let mut m = [0; 3];
        m[a] = 1;
        LinOp::term(m, CExpr::imag(Expr::int(-1)))
    }

    fn push(&mut self, m: Multi, c: CExpr) {
        if c.is_zero_literal() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(CExpr::zero);
        *entry = &*entry + &c;
    }

    pub fn coeff(&self, m: &Multi) -> CExpr {
        self.terms.get(m).cloned().unwrap_or_else(CExpr::zero)
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &LinOp) -> LinOp {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.push(*m, c.clone());
        }
        out.simplify()
    }

    pub fn sub(&self, o: &LinOp) -> LinOp {
        self.add(&o.scale(&CExpr::real(Expr::int(-1))))
    }

    /// Left multiplication by a function.
    pub fn scale(&self, c: &CExpr) -> LinOp {
        let mut out = LinOp::zero();
        for (m, a) in &self.terms {
            out.push(*m, c * a);
        }
        out.simplify()
    }

    pub fn scale_real(&self, c: &Expr) -> LinOp {
        self.scale(&CExpr::real(c.clone()))
    }

    /// Operator product `self ∘ o`, by the Leibniz rule.
    pub fn compose(&self, o: &LinOp) -> LinOp {
        let mut out = LinOp::zero();
        let mut derivs: BTreeMap<(Multi, Multi), CExpr> = BTreeMap::new();
        for (alpha, a) in &self.terms {
            for (beta, b) in &o.terms {
                for g0 in 0..=alpha[0] {
                    for g1 in 0..=alpha[1] {
                        for g2 in 0..=alpha[2] {
                            let gamma = [g0, g1, g2];
                            let db = derivs
                                .entry((*beta, gamma))
                                .or_insert_with(|| derivative(b, &gamma))
                                .clone();
                            if db.is_zero_literal() {
                                continue;
                            }
                            let k = binom(alpha[0], g0) * binom(alpha[1], g1) * binom(alpha[2], g2);
                            let idx = [
                                alpha[0] - g0 + beta[0],
                                alpha[1] - g1 + beta[1],
                                alpha[2] - g2 + beta[2],
                            ];
                            out.push(idx, (a * &db).scale(&Expr::int(k)));
                        }
                    }
                }
            }
        }
        out.simplify()
    }

    /// `[self, o] = self∘o − o∘self`.
    pub fn commutator(&self, o: &LinOp) -> LinOp {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn simplify(&self) -> LinOp {
        let mut out = LinOp::zero();
        for (m, c) in &self.terms {
            let s = c.simplify();
            if !s.is_zero_literal() {
                out.terms.insert(*m, s);
            }
        }
        out
    }

    /// Action on a function.
    pub fn apply(&self, psi: &CExpr) -> CExpr {
        let mut acc = CExpr::zero();
        for (m, c) in &self.terms {
            acc = &acc + &(c * &derivative(psi, m));
        }
        acc.simplify()
    }

    /// Zero test of every coefficient, labelled by monomial.
    pub fn zero_tests(&self, cfg: &ProbeConfig) -> Vec<(String, CExpr, ZeroTest)> {
        self.terms
            .iter()
            .map(|(m, c)| (label(m), c.clone(), c.is_zero(cfg)))
            .collect()
    }

    /// True when every coefficient is zero by either tier.
    pub fn vanishes(&self, cfg: &ProbeConfig) -> bool {
        self.zero_tests(cfg).iter().all(|(_, _, z)| z.accepts())
    }

    pub fn map_coeffs(&self, f: impl Fn(&CExpr) -> CExpr) -> LinOp {
        let mut out = LinOp::zero();
        for (m, c) in &self.terms {
            out.push(*m, f(c));
        }
        out.simplify()
    }
}

/// `∂^m c`, simplified.
pub fn derivative(c: &CExpr, m: &Multi) -> CExpr {
    let mut out = c.clone();
    for (k, &n) in m.iter().enumerate() {
        for _ in 0..n {
            out = out.diff(VARS[k]).simplify();
        }
    }
    out
}

impl fmt::Display for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("[{}]*{}", c, label(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn canonical_commutator() {
        // [∂1, x1] = 1
        let x = LinOp::mult(Expr::x1());
        let c = LinOp::d(1).commutator(&x);
        assert_eq!(c, LinOp::identity());
    }

    #[test]
    fn momenta_commute() {
        assert_eq!(LinOp::p(1).commutator(&LinOp::p(2)), LinOp::zero());
    }

    #[test]
    fn composition_matches_action() {
        let a = LinOp::d(1).compose(&LinOp::mult(parse("x1^2*x2").unwrap()));
        let b = LinOp::d(2).scale_real(&Expr::x1());
        let psi = CExpr::real(parse("exp(x1)*sin(x2)").unwrap());
        let lhs = a.compose(&b).apply(&psi);
        let rhs = a.apply(&b.apply(&psi));
        assert_eq!(lhs, rhs);
    }
}
