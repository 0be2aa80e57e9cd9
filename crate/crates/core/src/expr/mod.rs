//! Exact symbolic expressions over the variables `t`, `x1`, `x2`, scalar
//! parameters and uninterpreted function symbols.
//!
//! Constants are arbitrary-precision rationals; floating point only appears
//! in [`eval`] and the numeric tier of [`is_zero`].

mod canon;
pub(crate) mod cexpr;
mod diff;
mod eval;
mod num;
mod parse;
mod print;
mod zero;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use canon::simplify;
pub use cexpr::CExpr;
pub use diff::{diff, diff_n};
pub use eval::{eval, Bindings, EvalError, FunctionBinding, NoFunctions, RandomFunctions};
pub use num::{rat, Rational};
pub use parse::{parse, parse_prefix, parse_with, Declarations, ParseError};
pub use zero::{is_zero, probe_points, ProbeConfig, Verdict, ZeroTest};

/// Time variable.
pub const T: &str = "t";
/// First spatial variable.
pub const X1: &str = "x1";
/// Second spatial variable.
pub const X2: &str = "x2";

/// Built-in elementary functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    /// Two-argument arctangent `atan2(y, x)`.
    Atan2,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Atan2 => "atan2",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Atan2 => 2,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "atan2" | "arctan2" => Func::Atan2,
            _ => return None,
        })
    }
}

/// Application of an uninterpreted function, possibly differentiated.
///
/// `deriv[k]` counts derivatives with respect to the k-th argument.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Apply {
    pub name: String,
    pub deriv: Vec<u32>,
    pub args: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Num(Rational),
    Sym(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, Rational),
    Fun(Func, Vec<Expr>),
    Apply(Apply),
}

/// Immutable, cheaply clonable expression handle.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl std::hash::Hash for Expr {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Expr {}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return std::cmp::Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn from_node(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn num(r: Rational) -> Expr {
        Expr::from_node(Node::Num(r))
    }

    pub fn int(i: i64) -> Expr {
        Expr::num(BigRational::from_integer(BigInt::from(i)))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::num(rat(n, d))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::from_node(Node::Sym(name.to_string()))
    }

    pub fn t() -> Expr {
        Expr::sym(T)
    }

    pub fn x1() -> Expr {
        Expr::sym(X1)
    }

    pub fn x2() -> Expr {
        Expr::sym(X2)
    }

    /// `r = sqrt(x1^2 + x2^2)`.
    pub fn r() -> Expr {
        (Expr::x1().powi(2) + Expr::x2().powi(2)).sqrt()
    }

    /// `phi = atan2(x2, x1)`.
    pub fn phi() -> Expr {
        Expr::atan2(Expr::x2(), Expr::x1())
    }

    pub fn as_num(&self) -> Option<&Rational> {
        match self.node() {
            Node::Num(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero_literal(&self) -> bool {
        self.as_num().is_some_and(|r| r.is_zero())
    }

    pub fn is_one_literal(&self) -> bool {
        self.as_num().is_some_and(|r| r.is_one())
    }

    pub fn add_all<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut terms = Vec::new();
        let mut constant = Rational::zero();
        for e in items {
            match e.node() {
                Node::Num(r) => constant += r,
                Node::Add(inner) => {
                    for t in inner {
                        match t.node() {
                            Node::Num(r) => constant += r,
                            _ => terms.push(t.clone()),
                        }
                    }
                }
                _ => terms.push(e),
            }
        }
        if !constant.is_zero() {
            terms.push(Expr::num(constant));
        }
        match terms.len() {
            0 => Expr::zero(),
            1 => terms.pop().unwrap(),
            _ => Expr::from_node(Node::Add(terms)),
        }
    }

    pub fn mul_all<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut factors = Vec::new();
        let mut constant = Rational::one();
        for e in items {
            match e.node() {
                Node::Num(r) => constant *= r,
                Node::Mul(inner) => {
                    for t in inner {
                        match t.node() {
                            Node::Num(r) => constant *= r,
                            _ => factors.push(t.clone()),
                        }
                    }
                }
                _ => factors.push(e),
            }
        }
        if constant.is_zero() {
            return Expr::zero();
        }
        if !constant.is_one() {
            factors.insert(0, Expr::num(constant));
        }
        match factors.len() {
            0 => Expr::one(),
            1 => factors.pop().unwrap(),
            _ => Expr::from_node(Node::Mul(factors)),
        }
    }

    pub fn pow(&self, q: Rational) -> Expr {
        if q.is_zero() {
            return Expr::one();
        }
        if q.is_one() {
            return self.clone();
        }
        match self.node() {
            Node::Num(c) if q.is_integer() => {
                let n = q.to_integer();
                if c.is_zero() && n.is_negative() {
                    // leave the singular power for eval to report
                    return Expr::from_node(Node::Pow(self.clone(), q));
                }
                Expr::num(num::pow_int(c, &n))
            }
            Node::Pow(b, p) if q.is_integer() => b.pow(p * &q),
            _ => Expr::from_node(Node::Pow(self.clone(), q)),
        }
    }

    pub fn powi(&self, n: i64) -> Expr {
        self.pow(rat(n, 1))
    }

    pub fn sqrt(&self) -> Expr {
        self.pow(rat(1, 2))
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    /// Power with an arbitrary exponent; non-numeric exponents are written as
    /// `exp(e * log(b))`.
    pub fn pow_expr(&self, e: &Expr) -> Expr {
        let s = simplify(e);
        match s.as_num() {
            Some(q) => self.pow(q.clone()),
            None => Expr::exp(&(s * Expr::log(self))),
        }
    }

    pub fn fun(f: Func, args: Vec<Expr>) -> Expr {
        debug_assert_eq!(args.len(), f.arity());
        Expr::from_node(Node::Fun(f, args))
    }

    pub fn exp(a: &Expr) -> Expr {
        if a.is_zero_literal() {
            return Expr::one();
        }
        Expr::fun(Func::Exp, vec![a.clone()])
    }

    pub fn log(a: &Expr) -> Expr {
        if a.is_one_literal() {
            return Expr::zero();
        }
        Expr::fun(Func::Log, vec![a.clone()])
    }

    pub fn sin(a: &Expr) -> Expr {
        if a.is_zero_literal() {
            return Expr::zero();
        }
        Expr::fun(Func::Sin, vec![a.clone()])
    }

    pub fn cos(a: &Expr) -> Expr {
        if a.is_zero_literal() {
            return Expr::one();
        }
        Expr::fun(Func::Cos, vec![a.clone()])
    }

    pub fn sinh(a: &Expr) -> Expr {
        if a.is_zero_literal() {
            return Expr::zero();
        }
        Expr::fun(Func::Sinh, vec![a.clone()])
    }

    pub fn cosh(a: &Expr) -> Expr {
        if a.is_zero_literal() {
            return Expr::one();
        }
        Expr::fun(Func::Cosh, vec![a.clone()])
    }

    pub fn atan2(y: Expr, x: Expr) -> Expr {
        Expr::fun(Func::Atan2, vec![y, x])
    }

    /// Uninterpreted function application `name(args)`.
    pub fn apply(name: &str, args: Vec<Expr>) -> Expr {
        let deriv = vec![0; args.len()];
        Expr::from_node(Node::Apply(Apply {
            name: name.to_string(),
            deriv,
            args,
        }))
    }

    pub fn apply_deriv(name: &str, deriv: Vec<u32>, args: Vec<Expr>) -> Expr {
        assert_eq!(deriv.len(), args.len());
        Expr::from_node(Node::Apply(Apply {
            name: name.to_string(),
            deriv,
            args,
        }))
    }

    /// Immediate children, in order.
    pub fn children(&self) -> Vec<Expr> {
        match self.node() {
            Node::Num(_) | Node::Sym(_) => vec![],
            Node::Add(v) | Node::Mul(v) | Node::Fun(_, v) => v.clone(),
            Node::Pow(b, _) => vec![b.clone()],
            Node::Apply(a) => a.args.clone(),
        }
    }

    /// Rebuild a node of the same kind with new children.
    fn with_children(&self, kids: Vec<Expr>) -> Expr {
        match self.node() {
            Node::Num(_) | Node::Sym(_) => self.clone(),
            Node::Add(_) => Expr::add_all(kids),
            Node::Mul(_) => Expr::mul_all(kids),
            Node::Pow(_, q) => kids[0].pow(q.clone()),
            Node::Fun(f, _) => Expr::fun(*f, kids),
            Node::Apply(a) => Expr::apply_deriv(&a.name, a.deriv.clone(), kids),
        }
    }

    /// Bottom-up rewrite. `f` sees every node after its children were mapped.
    pub fn map_bottom_up(&self, f: &mut dyn FnMut(&Expr) -> Option<Expr>) -> Expr {
        let kids = self.children();
        let rebuilt = if kids.is_empty() {
            self.clone()
        } else {
            let mapped: Vec<Expr> = kids.iter().map(|k| k.map_bottom_up(f)).collect();
            if mapped.iter().zip(&kids).all(|(a, b)| a == b) {
                self.clone()
            } else {
                self.with_children(mapped)
            }
        };
        f(&rebuilt).unwrap_or(rebuilt)
    }

    /// Simultaneous substitution of symbols.
    pub fn subs(&self, map: &BTreeMap<String, Expr>) -> Expr {
        self.map_bottom_up(&mut |e| match e.node() {
            Node::Sym(s) => map.get(s).cloned(),
            _ => None,
        })
    }

    pub fn subs1(&self, name: &str, value: &Expr) -> Expr {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), value.clone());
        self.subs(&m)
    }

    /// Replace every application of the uninterpreted function `name` by the
    /// corresponding derivative of `body`, whose formal arguments are `params`.
    pub fn subs_function(&self, name: &str, params: &[&str], body: &Expr) -> Expr {
        self.map_bottom_up(&mut |e| match e.node() {
            Node::Apply(a) if a.name == name => {
                assert_eq!(a.args.len(), params.len(), "arity mismatch for {name}");
                let mut d = body.clone();
                for (p, &k) in params.iter().zip(&a.deriv) {
                    d = diff_n(&d, p, k);
                }
                let map: BTreeMap<String, Expr> = params
                    .iter()
                    .map(|p| p.to_string())
                    .zip(a.args.iter().cloned())
                    .collect();
                Some(d.subs(&map))
            }
            _ => None,
        })
    }

    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        if let Node::Sym(s) = self.node() {
            out.insert(s.clone());
        }
        for c in self.children() {
            c.collect_symbols(out);
        }
    }

    /// Names of uninterpreted functions occurring in the expression.
    pub fn function_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_functions(&mut out);
        out
    }

    fn collect_functions(&self, out: &mut BTreeSet<String>) {
        if let Node::Apply(a) = self.node() {
            out.insert(a.name.clone());
        }
        for c in self.children() {
            c.collect_functions(out);
        }
    }

    pub fn depends_on(&self, name: &str) -> bool {
        self.free_symbols().contains(name)
    }

    /// True when no spatial or time variable occurs.
    pub fn is_constant_in_space_time(&self) -> bool {
        let s = self.free_symbols();
        !(s.contains(T) || s.contains(X1) || s.contains(X2))
    }

    /// Number of nodes; used to bound test-corpus sizes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

impl From<i64> for Expr {
    fn from(i: i64) -> Expr {
        Expr::int(i)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs.clone())
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs)
            }
        }
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
        impl $tr<i64> for Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, Expr::int(rhs))
            }
        }
        impl $tr<i64> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), Expr::int(rhs))
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::add_all([a, b]));
binop!(Sub, sub, |a, b| Expr::add_all([a, -b]));
binop!(Mul, mul, |a, b| Expr::mul_all([a, b]));
binop!(Div, div, |a, b| Expr::mul_all([a, b.recip()]));

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::mul_all([Expr::int(-1), self])
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -(self.clone())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::to_infix(self))
    }
}

impl Expr {
    /// Stable prefix (s-expression) serialization used for golden files.
    pub fn to_prefix(&self) -> String {
        print::to_prefix(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_fold_constants() {
        let e = Expr::int(2) * Expr::int(3) + Expr::int(1);
        assert_eq!(e, Expr::int(7));
        assert_eq!(Expr::x1() * Expr::zero(), Expr::zero());
        assert_eq!(Expr::x1() * 1, Expr::x1());
    }

    #[test]
    fn function_substitution_differentiates_body() {
        let s = Expr::sym("s");
        let body = s.powi(3);
        let e = Expr::apply_deriv("f", vec![1], vec![Expr::x1()]);
        let out = simplify(&e.subs_function("f", &["s"], &body));
        assert_eq!(out, simplify(&(Expr::int(3) * Expr::x1().powi(2))));
    }
}
