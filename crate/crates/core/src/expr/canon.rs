//! Canonical form: expanded Laurent polynomials over "kernels" with exact
//! rational coefficients, brought over a common denominator and cancelled.
//!
//! Kernels are symbols, elementary-function applications with canonical
//! arguments, uninterpreted applications, sums raised to negative or
//! fractional powers, and irrational roots of rationals. The rewrite set is
//! fixed:
//!
//! * `exp(a)·exp(b) → exp(a+b)`, `exp(q·log k + a) → k^q·exp(a)` for numeric q
//! * `log(c·∏k^e) → log c + Σ e·log k`, `log(exp a) → a`
//! * `cos² → 1 − sin²`, `cosh² → 1 + sinh²`
//! * `sin(−a) → −sin a`, `cos(−a) → cos a` (same for the hyperbolic pair)
//! * `atan2(b cos A − a sin A, a cos A + b sin A) → atan2(b, a) − A` (mod 2π)
//!
//! Symbols are treated as positive when fractional powers are distributed.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::num::{exact_pow, split_floor, Rational};
use super::{Expr, Func, Node};

pub(crate) type Mono = BTreeMap<Expr, Rational>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Poly {
    pub terms: BTreeMap<Mono, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::new(), c);
        }
        p
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    /// A single already-normalized monomial.
    fn mono(c: Rational, m: Mono) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    fn kernel(k: Expr) -> Poly {
        let mut m = Mono::new();
        m.insert(k, Rational::one());
        Poly::mono(Rational::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn add_assign(&mut self, other: Poly) {
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let merged = merge(ma, mb);
                out.add_assign(norm_mono(ca * cb, merged));
            }
        }
        out
    }

    /// Leading coefficient under the map order (last term).
    fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    fn has_denominators(&self) -> bool {
        self.terms.keys().any(|m| m.values().any(|e| e.is_negative()))
    }
}

fn merge(a: &Mono, b: &Mono) -> Mono {
    let mut out = a.clone();
    for (k, e) in b {
        let v = out.entry(k.clone()).or_insert_with(Rational::zero);
        *v += e;
        if v.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn is_sum_kernel(k: &Expr) -> bool {
    matches!(k.node(), Node::Add(_))
}

/// Bring a coefficient and a raw (merged, possibly non-normal) monomial into
/// normal form.
fn norm_mono(coef: Rational, raw: Mono) -> Poly {
    if coef.is_zero() {
        return Poly::zero();
    }
    let mut scalar = coef;
    let mut rest = Mono::new();
    let mut factors: Vec<Poly> = Vec::new();
    let mut exps: Vec<(Expr, Rational)> = Vec::new();
    for (k, e) in raw {
        if e.is_zero() {
            continue;
        }
        match k.node() {
            Node::Fun(Func::Exp, _) => exps.push((k, e)),
            Node::Num(c) => {
                let (n, frac) = split_floor(&e);
                scalar *= super::num::pow_int(c, &n);
                if !frac.is_zero() {
                    match exact_pow(c, &frac) {
                        Some(v) => scalar *= v,
                        None => {
                            rest.insert(k.clone(), frac);
                        }
                    }
                }
            }
            Node::Add(_) => {
                let (n, frac) = split_floor(&e);
                if n.is_positive() {
                    factors.push(pow_int_poly(&to_poly(&k), &n));
                    if !frac.is_zero() {
                        rest.insert(k, frac);
                    }
                } else {
                    rest.insert(k, e);
                }
            }
            Node::Fun(f @ (Func::Cos | Func::Cosh), args) if e.is_integer() && e >= Rational::from_integer(BigInt::from(2)) => {
                let n = e.to_integer();
                let half: BigInt = &n / BigInt::from(2);
                let odd: BigInt = &n % BigInt::from(2);
                let (partner, sign) = match f {
                    Func::Cos => (Func::Sin, -Rational::one()),
                    _ => (Func::Sinh, Rational::one()),
                };
                let s = Expr::fun(partner, args.clone());
                let mut sq = Mono::new();
                sq.insert(s, Rational::from_integer(BigInt::from(2)));
                let base = Poly::one().add(&Poly::mono(sign, sq));
                factors.push(pow_int_poly(&base, &half));
                if !odd.is_zero() {
                    rest.insert(k.clone(), Rational::one());
                }
            }
            _ => {
                rest.insert(k, e);
            }
        }
    }
    // exp kernels
    if exps.len() == 1 && exps[0].1.is_one() {
        let (k, e) = exps.pop().unwrap();
        rest.insert(k, e);
    } else if !exps.is_empty() {
        let mut arg = Poly::zero();
        for (k, e) in &exps {
            if let Node::Fun(_, a) = k.node() {
                arg.add_assign(to_poly(&a[0]).scale(e));
            }
        }
        factors.push(fun_exp(&arg));
    }
    let mut out = Poly::mono(scalar, rest);
    for f in factors {
        out = out.mul(&f);
    }
    out
}

fn pow_int_poly(p: &Poly, n: &BigInt) -> Poly {
    let mut out = Poly::one();
    let mut k = n.clone();
    while k.is_positive() {
        out = out.mul(p);
        k -= 1;
    }
    out
}

/// `p^q` for a rational exponent.
fn pow_poly(p: &Poly, q: &Rational) -> Poly {
    if q.is_zero() {
        return Poly::one();
    }
    if q.is_integer() && q.is_positive() {
        return pow_int_poly(p, &q.to_integer());
    }
    let p = cancel(p);
    if p.is_zero() {
        // 0^q with q <= 0 or fractional: keep as an opaque kernel so eval reports it
        if q.is_positive() {
            return Poly::zero();
        }
        let mut m = Mono::new();
        m.insert(Expr::zero(), q.clone());
        return Poly::mono(Rational::one(), m);
    }
    if p.terms.len() == 1 {
        let (m, c) = p.terms.iter().next().unwrap();
        let mut raw = Mono::new();
        let mut coef = Rational::one();
        if !c.is_one() {
            if c.is_negative() && !q.is_integer() {
                let mut m = Mono::new();
                m.insert(to_expr(&p), q.clone());
                return Poly::mono(Rational::one(), m);
            }
            match exact_pow(c, q) {
                Some(v) => coef = v,
                None => {
                    raw.insert(Expr::num(c.clone()), q.clone());
                }
            }
        }
        for (k, e) in m {
            let v = raw.entry(k.clone()).or_insert_with(Rational::zero);
            *v += e * q;
        }
        return norm_mono(coef, raw);
    }
    let (num, den) = together(&p);
    if num.terms.len() == 1 {
        // the common denominator absorbed the sum structure
        let num_pow = pow_poly(&num, q);
        let den_raw: Mono = den.iter().map(|(k, e)| (k.clone(), -(e * q))).collect();
        return num_pow.mul(&norm_mono(Rational::one(), den_raw));
    }
    let lc = num.leading_coeff().cloned().unwrap();
    let norm = if q.is_integer() { lc.clone() } else { lc.abs() };
    let base = num.scale(&norm.recip());
    let mut raw = Mono::new();
    let mut coef = Rational::one();
    match exact_pow(&norm, q) {
        Some(v) => coef = v,
        None => {
            raw.insert(Expr::num(norm.clone()), q.clone());
        }
    }
    raw.insert(to_expr(&base), q.clone());
    for (k, e) in den {
        let v = raw.entry(k).or_insert_with(Rational::zero);
        *v -= e * q;
    }
    norm_mono(coef, raw)
}

/// Write `p = num / den` with `num` free of negative exponents.
pub(crate) fn together(p: &Poly) -> (Poly, Mono) {
    let mut den = Mono::new();
    for m in p.terms.keys() {
        for (k, e) in m {
            if e.is_negative() {
                let need = -e;
                let cur = den.entry(k.clone()).or_insert_with(Rational::zero);
                if need > *cur {
                    *cur = need;
                }
            }
        }
    }
    if den.is_empty() {
        return (p.clone(), den);
    }
    let mut num = Poly::zero();
    for (m, c) in &p.terms {
        num.add_assign(norm_mono(c.clone(), merge(m, &den)));
    }
    (num, den)
}

/// Monomial order used for exact division: lexicographic over the union of
/// kernels visited from the largest kernel down.
fn lex_cmp(a: &Mono, b: &Mono) -> Ordering {
    let mut ia = a.iter().rev().peekable();
    let mut ib = b.iter().rev().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((_, ea)), None) => return ea.cmp(&&Rational::zero()),
            (None, Some((_, eb))) => return Rational::zero().cmp(eb),
            (Some((ka, ea)), Some((kb, eb))) => match ka.cmp(kb) {
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                    ia.next();
                    ib.next();
                }
                Ordering::Greater => {
                    // `a` has a larger kernel that `b` lacks
                    return ea.cmp(&&Rational::zero());
                }
                Ordering::Less => return Rational::zero().cmp(eb),
            },
        }
    }
}

fn leading(p: &Poly) -> Option<(&Mono, &Rational)> {
    p.terms.iter().max_by(|a, b| lex_cmp(a.0, b.0))
}

fn raw_mul(p: &Poly, c: &Rational, m: &Mono) -> Poly {
    let mut out = Poly::zero();
    for (pm, pc) in &p.terms {
        out.add_term(merge(pm, m), pc * c);
    }
    out
}

/// Exact division in the free polynomial ring over kernels.
fn exact_div(num: &Poly, den: &Poly) -> Option<Poly> {
    let (lm_d, lc_d) = leading(den)?;
    let mut r = num.clone();
    let mut q = Poly::zero();
    let mut guard = 0usize;
    while !r.is_zero() {
        guard += 1;
        if guard > 20_000 {
            return None;
        }
        let (lm_r, lc_r) = leading(&r)?;
        let mut qm = lm_r.clone();
        for (k, e) in lm_d {
            let have = qm.get(k).cloned().unwrap_or_else(Rational::zero);
            let left = have - e;
            if left.is_negative() {
                return None;
            }
            if left.is_zero() {
                qm.remove(k);
            } else {
                qm.insert(k.clone(), left);
            }
        }
        let qc = lc_r / lc_d;
        r = r.add(&raw_mul(den, &qc, &qm).neg());
        q.add_term(qm, qc);
    }
    Some(q)
}

/// Common-denominator form with content and exact polynomial cancellation,
/// redistributed over the terms.
pub(crate) fn cancel(p: &Poly) -> Poly {
    if !p.has_denominators() {
        return p.clone();
    }
    let (mut num, mut den) = together(p);
    if num.is_zero() {
        return Poly::zero();
    }
    // monomial content
    let keys: Vec<Expr> = den.keys().cloned().collect();
    for k in keys {
        let d = den[&k].clone();
        let content = num
            .terms
            .keys()
            .map(|m| m.get(&k).cloned().unwrap_or_else(Rational::zero))
            .min()
            .unwrap_or_else(Rational::zero);
        if content.is_positive() {
            let take = if content < d { content } else { d.clone() };
            let mut inv = Mono::new();
            inv.insert(k.clone(), -take.clone());
            num = raw_mul(&num, &Rational::one(), &inv);
            let left = d - take;
            if left.is_zero() {
                den.remove(&k);
            } else {
                den.insert(k.clone(), left);
            }
        }
    }
    // sum kernels
    let sums: Vec<Expr> = den.keys().filter(|k| is_sum_kernel(k)).cloned().collect();
    for s in sums {
        let sp = to_poly(&s);
        loop {
            let d = den.get(&s).cloned().unwrap_or_else(Rational::zero);
            if d < Rational::one() {
                break;
            }
            match exact_div(&num, &sp) {
                Some(qt) => {
                    num = qt;
                    let left = d - Rational::one();
                    if left.is_zero() {
                        den.remove(&s);
                    } else {
                        den.insert(s.clone(), left);
                    }
                }
                None => break,
            }
        }
    }
    let inv: Mono = den.into_iter().map(|(k, e)| (k, -e)).collect();
    let mut out = Poly::zero();
    for (m, c) in &num.terms {
        out.add_assign(norm_mono(c.clone(), merge(m, &inv)));
    }
    out
}

fn canonical_arg(e: &Expr) -> (Poly, Expr) {
    let p = cancel(&to_poly(e));
    let x = to_expr(&p);
    (p, x)
}

/// `exp(arg)` for a canonical argument.
fn fun_exp(arg: &Poly) -> Poly {
    let arg = cancel(arg);
    let mut factor = Poly::one();
    let mut remaining = Poly::zero();
    for (m, c) in &arg.terms {
        if m.len() == 1 {
            let (k, e) = m.iter().next().unwrap();
            if e.is_one() {
                if let Node::Fun(Func::Log, a) = k.node() {
                    factor = factor.mul(&pow_poly(&to_poly(&a[0]), c));
                    continue;
                }
            }
        }
        remaining.add_term(m.clone(), c.clone());
    }
    if remaining.is_zero() {
        return factor;
    }
    let k = Expr::fun(Func::Exp, vec![to_expr(&remaining)]);
    let mut m = Mono::new();
    m.insert(k, Rational::one());
    if factor == Poly::one() {
        Poly::mono(Rational::one(), m)
    } else {
        factor.mul(&Poly::mono(Rational::one(), m))
    }
}

fn log_const(c: &Rational) -> Option<Poly> {
    if c.is_one() {
        Some(Poly::zero())
    } else if c.is_positive() {
        Some(Poly::kernel(Expr::fun(Func::Log, vec![Expr::num(c.clone())])))
    } else {
        None
    }
}

fn log_kernel(k: &Expr) -> Poly {
    match k.node() {
        Node::Fun(Func::Exp, a) => to_poly(&a[0]),
        _ => Poly::kernel(Expr::fun(Func::Log, vec![k.clone()])),
    }
}

fn fun_log(arg: &Poly) -> Poly {
    let arg = cancel(arg);
    let opaque = || Poly::kernel(Expr::fun(Func::Log, vec![to_expr(&arg)]));
    if arg.terms.len() == 1 {
        let (m, c) = arg.terms.iter().next().unwrap();
        let Some(mut out) = log_const(c) else {
            return opaque();
        };
        for (k, e) in m {
            out = out.add(&log_kernel(k).scale(e));
        }
        return out;
    }
    if arg.is_zero() {
        return opaque();
    }
    let (num, den) = together(&arg);
    let lc = num.leading_coeff().cloned().unwrap();
    let Some(mut out) = log_const(&lc) else {
        return opaque();
    };
    let base = num.scale(&lc.recip());
    if base.terms.len() == 1 {
        return opaque();
    }
    out = out.add(&Poly::kernel(Expr::fun(Func::Log, vec![to_expr(&base)])));
    for (k, e) in den {
        out = out.add(&log_kernel(&k).scale(&-e));
    }
    out
}

/// Split `p = c·K + s·S + rest` for the kernels `K = cos(a)`, `S = sin(a)`.
fn split_trig(p: &Poly, cos_k: &Expr, sin_k: &Expr) -> (Poly, Poly, Poly) {
    let mut c = Poly::zero();
    let mut s = Poly::zero();
    let mut rest = Poly::zero();
    for (m, coef) in &p.terms {
        let ce = m.get(cos_k);
        let se = m.get(sin_k);
        match (ce, se) {
            (Some(e), None) if e.is_one() => {
                let mut mm = m.clone();
                mm.remove(cos_k);
                c.add_term(mm, coef.clone());
            }
            (None, Some(e)) if e.is_one() => {
                let mut mm = m.clone();
                mm.remove(sin_k);
                s.add_term(mm, coef.clone());
            }
            _ => rest.add_term(m.clone(), coef.clone()),
        }
    }
    (c, s, rest)
}

fn try_rotation(y: &Poly, x: &Poly) -> Option<Poly> {
    let mut angles = Vec::new();
    for m in x.terms.keys() {
        for k in m.keys() {
            if let Node::Fun(Func::Cos | Func::Sin, a) = k.node() {
                if !angles.contains(&a[0]) {
                    angles.push(a[0].clone());
                }
            }
        }
    }
    for a in angles {
        let ck = Expr::fun(Func::Cos, vec![a.clone()]);
        let sk = Expr::fun(Func::Sin, vec![a.clone()]);
        let (cx, sx, rx) = split_trig(x, &ck, &sk);
        let (cy, sy, ry) = split_trig(y, &ck, &sk);
        if !rx.is_zero() || !ry.is_zero() || cx.is_zero() && sx.is_zero() {
            continue;
        }
        let eq = |p: &Poly, q: &Poly| cancel(&p.add(&q.neg())).is_zero();
        let angle = to_poly(&a);
        if eq(&cy, &sx) && eq(&sy, &cx.neg()) {
            let base = to_poly(&Expr::atan2(to_expr(&sx), to_expr(&cx)));
            return Some(base.add(&angle.neg()));
        }
        if eq(&cy, &sx.neg()) && eq(&sy, &cx) {
            let base = to_poly(&Expr::atan2(to_expr(&sx.neg()), to_expr(&cx)));
            return Some(base.add(&angle));
        }
    }
    None
}

fn fun_poly(f: Func, args: &[Expr]) -> Poly {
    let canon: Vec<(Poly, Expr)> = args.iter().map(canonical_arg).collect();
    let (pa, xa) = &canon[0];
    match f {
        Func::Exp => fun_exp(pa),
        Func::Log => fun_log(pa),
        Func::Sin | Func::Sinh => {
            if pa.is_zero() {
                return Poly::zero();
            }
            if pa.leading_coeff().unwrap().is_negative() {
                let k = Expr::fun(f, vec![to_expr(&pa.neg())]);
                return Poly::kernel(k).neg();
            }
            Poly::kernel(Expr::fun(f, vec![xa.clone()]))
        }
        Func::Cos | Func::Cosh => {
            if pa.is_zero() {
                return Poly::one();
            }
            if pa.leading_coeff().unwrap().is_negative() {
                return Poly::kernel(Expr::fun(f, vec![to_expr(&pa.neg())]));
            }
            Poly::kernel(Expr::fun(f, vec![xa.clone()]))
        }
        Func::Atan2 => {
            let (px, xx) = &canon[1];
            if let Some(p) = try_rotation(pa, px) {
                return p;
            }
            Poly::kernel(Expr::fun(f, vec![xa.clone(), xx.clone()]))
        }
    }
}

thread_local! {
    static CACHE: RefCell<HashMap<usize, (Expr, Poly)>> = RefCell::new(HashMap::new());
}

pub(crate) fn to_poly(e: &Expr) -> Poly {
    let key = std::sync::Arc::as_ptr(&e.0) as usize;
    if let Some(p) = CACHE.with(|c| c.borrow().get(&key).map(|(_, p)| p.clone())) {
        return p;
    }
    let p = to_poly_uncached(e);
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 200_000 {
            c.clear();
        }
        c.insert(key, (e.clone(), p.clone()));
    });
    p
}

fn to_poly_uncached(e: &Expr) -> Poly {
    match e.node() {
        Node::Num(r) => Poly::constant(r.clone()),
        Node::Sym(_) => Poly::kernel(e.clone()),
        Node::Add(v) => {
            let mut out = Poly::zero();
            for t in v {
                out.add_assign(to_poly(t));
            }
            out
        }
        Node::Mul(v) => {
            let mut out = Poly::one();
            for t in v {
                out = out.mul(&to_poly(t));
                if out.is_zero() {
                    break;
                }
            }
            out
        }
        Node::Pow(b, q) => pow_poly(&to_poly(b), q),
        Node::Fun(f, args) => fun_poly(*f, args),
        Node::Apply(a) => {
            let args: Vec<Expr> = a.args.iter().map(|x| canonical_arg(x).1).collect();
            Poly::kernel(Expr::apply_deriv(&a.name, a.deriv.clone(), args))
        }
    }
}

pub(crate) fn to_expr(p: &Poly) -> Expr {
    let mut terms = Vec::with_capacity(p.terms.len());
    for (m, c) in &p.terms {
        let mut factors = Vec::with_capacity(m.len() + 1);
        if !c.is_one() || m.is_empty() {
            factors.push(Expr::num(c.clone()));
        }
        for (k, e) in m {
            if e.is_one() {
                factors.push(k.clone());
            } else {
                factors.push(Expr::from_node(Node::Pow(k.clone(), e.clone())));
            }
        }
        terms.push(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::from_node(Node::Mul(factors))
        });
    }
    match terms.len() {
        0 => Expr::zero(),
        1 => terms.pop().unwrap(),
        _ => Expr::from_node(Node::Add(terms)),
    }
}

/// Canonical form. Idempotent, and value-preserving on the probe domain.
pub fn simplify(e: &Expr) -> Expr {
    to_expr(&cancel(&to_poly(e)))
}

/// Numerator of the common-denominator form; zero iff `e` cancels exactly.
pub(crate) fn numerator_is_zero(e: &Expr) -> bool {
    let p = to_poly(e);
    together(&p).0.is_zero()
}

/// Terms of the canonical form, for magnitude estimates.
pub(crate) fn canonical_terms(e: &Expr) -> Vec<Expr> {
    let p = cancel(&to_poly(e));
    p.terms
        .iter()
        .map(|(m, c)| {
            let mut single = Poly::zero();
            single.terms.insert(m.clone(), c.clone());
            to_expr(&single)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, rat};

    fn s(text: &str) -> Expr {
        simplify(&parse(text).unwrap())
    }

    #[test]
    fn pythagoras() {
        assert_eq!(s("sin(x1)^2 + cos(x1)^2"), Expr::one());
        assert_eq!(s("cosh(x2)^2 - sinh(x2)^2"), Expr::one());
    }

    #[test]
    fn binomial_cancels() {
        assert_eq!(s("(x1+x2)^2 - x1^2 - 2*x1*x2 - x2^2"), Expr::zero());
    }

    #[test]
    fn exp_log_contraction() {
        assert_eq!(s("exp(log(x1^2+1))"), s("x1^2+1"));
        assert_eq!(s("exp(x1)*exp(-x1)"), Expr::one());
        assert_eq!(s("log(exp(x1 + x2))"), s("x1 + x2"));
        assert_eq!(s("exp(2*log(x1))"), s("x1^2"));
    }

    #[test]
    fn rational_cancellation() {
        assert_eq!(s("(x1^2 - x2^2)/(x1 - x2)"), s("x1 + x2"));
        assert_eq!(s("(x1^2+x2^2)/(x1^2+x2^2)"), Expr::one());
        assert_eq!(s("r^2/(x1^2+x2^2)"), Expr::one());
        assert_eq!(s("r*r - x1^2 - x2^2"), Expr::zero());
    }

    #[test]
    fn fractional_powers_merge() {
        assert_eq!(s("r^3/r"), s("x1^2+x2^2"));
        assert_eq!(s("sqrt(4*x1^2)"), s("2*x1"));
        assert_eq!(s("sqrt(2)*sqrt(2)"), Expr::int(2));
    }

    #[test]
    fn trig_parity() {
        assert_eq!(s("sin(-x1) + sin(x1)"), Expr::zero());
        assert_eq!(s("cos(-x1) - cos(x1)"), Expr::zero());
    }

    #[test]
    fn rotation_contracts_atan2() {
        let e = s("atan2(x2*cos(theta) - x1*sin(theta), x1*cos(theta) + x2*sin(theta)) - phi + theta");
        assert_eq!(e, Expr::zero());
    }

    #[test]
    fn idempotent_on_samples() {
        for t in [
            "(r^2+1)^2*x1/(x1^2+x2^2+1)",
            "exp(nu*phi)*sin(x1)^3",
            "log(r)*f(r)",
            "x1^(1/3)*x1^(2/3)",
        ] {
            let d = Declarations::default().function("f", 1);
            let once = simplify(&crate::expr::parse_with(t, &d).unwrap());
            assert_eq!(simplify(&once), once, "{t}");
        }
    }

    #[test]
    fn exact_division_helper() {
        let num = to_poly(&parse("x1^3 - x2^3").unwrap());
        let den = to_poly(&parse("x1 - x2").unwrap());
        let q = exact_div(&num, &den).unwrap();
        assert_eq!(to_expr(&q), s("x1^2 + x1*x2 + x2^2"));
        assert!(exact_div(&to_poly(&parse("x1^2+1").unwrap()), &den).is_none());
        let _ = rat(1, 2);
    }

    use crate::expr::Declarations;
}
