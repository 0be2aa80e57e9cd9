//! Determining system in `n` spatial dimensions, in the unknowns
//! `xi0, xi1..xin, eta, alpha` and the data `f, V`, all functions of
//! `(t, x1, .., xn)` (the data of `x` only).

use crate::expr::{diff, simplify, CExpr, Expr, Rational, T};

fn x(a: usize) -> String {
    format!("x{a}")
}

/// Template builder for a fixed dimension.
pub struct GeneralSystem {
    pub n: usize,
}

impl GeneralSystem {
    pub fn new(n: usize) -> GeneralSystem {
        assert!(n >= 2, "dimension must be at least 2");
        GeneralSystem { n }
    }

    fn space(&self) -> Vec<Expr> {
        (1..=self.n).map(|a| Expr::sym(&x(a))).collect()
    }

    fn spacetime(&self) -> Vec<Expr> {
        let mut v = vec![Expr::t()];
        v.extend(self.space());
        v
    }

    /// Parameter names in the order used by the template unknowns.
    pub fn params(&self, with_time: bool) -> Vec<String> {
        let mut v = Vec::new();
        if with_time {
            v.push(T.to_string());
        }
        v.extend((1..=self.n).map(x));
        v
    }

    pub fn xi(&self, a: usize) -> Expr {
        Expr::apply(&format!("xi{a}"), self.spacetime())
    }

    pub fn eta(&self) -> Expr {
        Expr::apply("eta", self.spacetime())
    }

    pub fn alpha(&self) -> Expr {
        Expr::apply("alpha", self.spacetime())
    }

    pub fn f(&self) -> Expr {
        Expr::apply("f", self.space())
    }

    pub fn pot(&self) -> Expr {
        Expr::apply("V", self.space())
    }

    fn d(&self, e: &Expr, a: usize) -> Expr {
        diff(e, &x(a))
    }

    fn dt(&self, e: &Expr) -> Expr {
        diff(e, T)
    }

    fn two_over_n(&self) -> Expr {
        Expr::num(Rational::new(2.into(), (self.n as i64).into()))
    }

    fn divergence(&self) -> Expr {
        Expr::add_all((1..=self.n).map(|i| self.d(&self.xi(i), i)))
    }

    /// `ξ̇⁰ + α` and `ξ⁰_a`.
    pub fn time_equations(&self) -> Vec<(String, Expr)> {
        let xi0 = self.xi(0);
        let mut v = vec![("xi0-t".to_string(), self.dt(&xi0) + self.alpha())];
        for a in 1..=self.n {
            v.push((format!("xi0-x{a}"), self.d(&xi0, a)));
        }
        v
    }

    /// Metric tensor equation `(ξ^b_a + ξ^a_b) f − δ_ab (ξ^i f_i − α f)`.
    pub fn metric(&self, a: usize, b: usize) -> Expr {
        let f = self.f();
        let mut e = (self.d(&self.xi(b), a) + self.d(&self.xi(a), b)) * &f;
        if a == b {
            e = e - (self.transport_f() - self.alpha() * &f);
        }
        e
    }

    fn transport_f(&self) -> Expr {
        let f = self.f();
        Expr::add_all((1..=self.n).map(|i| self.xi(i) * self.d(&f, i)))
    }

    /// Vector equation, complex: `−iξ̇^a + fξ^a_cc − 2ifη_a + ξ^b f_ab − ξ^a_b f_b − fξ^c_ca − αf_a`.
    pub fn vector(&self, a: usize) -> CExpr {
        let f = self.f();
        let xa = self.xi(a);
        let lap: Expr = Expr::add_all((1..=self.n).map(|c| self.d(&self.d(&xa, c), c)));
        let mut re = &f * lap - self.alpha() * self.d(&f, a);
        for b in 1..=self.n {
            re = re + self.xi(b) * self.d(&self.d(&f, a), b) - self.d(&xa, b) * self.d(&f, b)
                - &f * self.d(&self.d(&self.xi(b), b), a);
        }
        let im = -self.dt(&xa) - Expr::int(2) * &f * self.d(&self.eta(), a);
        CExpr::new(re, im)
    }

    /// Scalar equation, complex:
    /// `i(fη_a)_a + ξ^aV_a + ½(fξ^a_ab)_b + ½iξ̇^a_a − η̇ − αV`.
    pub fn scalar(&self) -> CExpr {
        let f = self.f();
        let v = self.pot();
        let mut re = -self.dt(&self.eta()) - self.alpha() * &v;
        let mut im = Expr::frac(1, 2) * self.dt(&self.divergence());
        for a in 1..=self.n {
            im = im + self.d(&(&f * self.d(&self.eta(), a)), a);
            re = re + self.xi(a) * self.d(&v, a);
            for b in 1..=self.n {
                re = re + Expr::frac(1, 2) * self.d(&(&f * self.d(&self.d(&self.xi(a), a), b)), b);
            }
        }
        CExpr::new(re, im)
    }

    /// Trace-free part `ξ^b_a + ξ^a_b − (2/n)δ_ab ξ^i_i`.
    pub fn conformal(&self, a: usize, b: usize) -> Expr {
        let mut e = self.d(&self.xi(b), a) + self.d(&self.xi(a), b);
        if a == b {
            e = e - self.two_over_n() * self.divergence();
        }
        e
    }

    /// Trace part `ξ^i f_i − αf − (2/n) f ξ^i_i`.
    pub fn trace(&self) -> Expr {
        self.transport_f() - self.alpha() * self.f() - self.two_over_n() * self.f() * self.divergence()
    }

    /// `ξ̇^a + 2η_a f`.
    pub fn current(&self, a: usize) -> Expr {
        self.dt(&self.xi(a)) + Expr::int(2) * self.d(&self.eta(), a) * self.f()
    }

    /// `ξ^aV_a + ½ξ^b_ba f_a − αV − η̇`.
    pub fn potential(&self) -> Expr {
        let f = self.f();
        let v = self.pot();
        let mut e = -self.alpha() * &v - self.dt(&self.eta());
        for a in 1..=self.n {
            e = e + self.xi(a) * self.d(&v, a) + Expr::frac(1, 2) * self.d(&self.divergence(), a) * self.d(&f, a);
        }
        e
    }

    /// Reduced system: time equations, trace-free, trace, current, potential.
    pub fn reduced(&self) -> Vec<(String, Expr)> {
        let mut v = self.time_equations();
        for a in 1..=self.n {
            for b in a..=self.n {
                v.push((format!("conformal-{a}{b}"), self.conformal(a, b)));
            }
        }
        v.push(("trace".into(), self.trace()));
        for a in 1..=self.n {
            v.push((format!("current-{a}"), self.current(a)));
        }
        v.push(("potential".into(), self.potential()));
        v
    }

    /// Derivative of the trace equation along `x_a`.
    pub fn trace_gradient(&self, a: usize) -> Expr {
        let f = self.f();
        let mut e = -self.alpha() * self.d(&f, a)
            - self.two_over_n() * (self.d(&f, a) * self.divergence() + &f * self.d(&self.divergence(), a));
        for i in 1..=self.n {
            e = e + self.d(&self.xi(i), a) * self.d(&f, i) + self.xi(i) * self.d(&self.d(&f, i), a);
        }
        e
    }

    /// Contracted derivative of the trace-free equation:
    /// `((2−n)/n) ξ^b_ab − ξ^a_bb`.
    pub fn conformal_divergence(&self, a: usize) -> Expr {
        let k = Expr::num(Rational::new((2 - self.n as i64).into(), (self.n as i64).into()));
        let mut e = k * self.d(&self.divergence(), a);
        for b in 1..=self.n {
            e = e - self.d(&self.d(&self.xi(a), b), b);
        }
        e
    }

    /// Trace-free equation contracted with `f_b`:
    /// `(2/n) ξ^i_i f_a − ξ^a_b f_b − ξ^b_a f_b`.
    pub fn conformal_contracted(&self, a: usize) -> Expr {
        let f = self.f();
        let mut e = self.two_over_n() * self.divergence() * self.d(&f, a);
        for b in 1..=self.n {
            e = e - self.d(&self.xi(a), b) * self.d(&f, b) - self.d(&self.xi(b), a) * self.d(&f, b);
        }
        e
    }

    /// `vector_a − trace_gradient_a + f·conformal_divergence_a −
    /// conformal_contracted_a + i·current_a`; vanishes identically for `n = 2`.
    pub fn reduction_identity(&self, a: usize) -> CExpr {
        let combo = self.vector(a)
            - CExpr::real(self.trace_gradient(a))
            + CExpr::real(self.f() * self.conformal_divergence(a))
            - CExpr::real(self.conformal_contracted(a))
            + CExpr::imag(self.current(a));
        combo.simplify()
    }

    /// Substitute concrete `xi0..xin, eta, alpha` (functions of t and x) and
    /// data `f, V` (functions of x) into a template.
    pub fn instantiate(&self, e: &Expr, xis: &[Expr], eta: &Expr, alpha: &Expr, f: &Expr, pot: &Expr) -> Expr {
        assert_eq!(xis.len(), self.n + 1);
        let st = self.params(true);
        let sp = self.params(false);
        let st: Vec<&str> = st.iter().map(|s| s.as_str()).collect();
        let sp: Vec<&str> = sp.iter().map(|s| s.as_str()).collect();
        let mut out = e.clone();
        for (a, body) in xis.iter().enumerate() {
            out = out.subs_function(&format!("xi{a}"), &st, body);
        }
        out = out.subs_function("eta", &st, eta);
        out = out.subs_function("alpha", &st, alpha);
        out = out.subs_function("f", &sp, f);
        out = out.subs_function("V", &sp, pot);
        simplify(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{is_zero, parse, ProbeConfig, Verdict};

    #[test]
    fn reduction_identity_in_the_plane() {
        let s = GeneralSystem::new(2);
        for a in 1..=2 {
            let r = s.reduction_identity(a);
            assert!(r.is_zero_literal(), "component {a}: {r}");
        }
    }

    #[test]
    fn reduction_identity_needs_plane_coefficients() {
        let s = GeneralSystem::new(3);
        let r = s.reduction_identity(1);
        assert_eq!(r.is_zero(&ProbeConfig::default()).verdict, Verdict::ProvenNonzero);
    }

    #[test]
    fn analytic_field_is_trace_free_conformal() {
        let s = GeneralSystem::new(2);
        let xis = [Expr::zero(), parse("x1^2 - x2^2").unwrap(), parse("2*x1*x2").unwrap()];
        for (id, e) in s.reduced() {
            if id.starts_with("conformal") {
                let got = s.instantiate(&e, &xis, &Expr::zero(), &Expr::zero(), &Expr::one(), &Expr::zero());
                assert_eq!(is_zero(&got, &ProbeConfig::default()).verdict, Verdict::ProvenZero, "{id}");
            }
        }
    }
}
