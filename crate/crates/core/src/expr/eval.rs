use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::num::to_f64;
use super::{Expr, Func, Node};

/// Numeric values of free symbols.
pub type Bindings = HashMap<String, f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("no numeric binding for function `{0}`")]
    UnboundFunction(String),
    #[error("non-finite value at {0}")]
    Domain(String),
}

/// Numeric stand-in for uninterpreted functions and their derivatives.
pub trait FunctionBinding {
    fn call(&self, name: &str, deriv: &[u32], args: &[f64]) -> Option<f64>;
}

/// Rejects every uninterpreted function.
pub struct NoFunctions;

impl FunctionBinding for NoFunctions {
    fn call(&self, _: &str, _: &[u32], _: &[f64]) -> Option<f64> {
        None
    }
}

/// `g(s) = Σ a_k s^k + b e^{c s} + d sin(w s + ph)`, differentiable in closed
/// form to any order.
#[derive(Clone, Debug)]
struct Smooth {
    a: [f64; 5],
    b: f64,
    c: f64,
    d: f64,
    w: f64,
    ph: f64,
}

impl Smooth {
    fn random(rng: &mut ChaCha8Rng) -> Smooth {
        let mut a = [0.0; 5];
        a[0] = rng.gen_range(2.0..3.0);
        let mut fact = 1.0;
        for (k, ak) in a.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *ak = rng.gen_range(-0.3..0.3) / fact;
        }
        Smooth {
            a,
            b: rng.gen_range(0.5..1.0),
            c: rng.gen_range(-0.5..0.5),
            d: rng.gen_range(0.1..0.3),
            w: rng.gen_range(0.5..2.0),
            ph: rng.gen_range(0.0..std::f64::consts::TAU),
        }
    }

    fn eval(&self, n: u32, s: f64) -> f64 {
        let n = n as usize;
        let mut poly = 0.0;
        for k in n..self.a.len() {
            // falling factorial k!/(k-n)!
            let ff: f64 = ((k - n + 1)..=k).map(|j| j as f64).product();
            poly += self.a[k] * ff * s.powi((k - n) as i32);
        }
        let expo = self.b * self.c.powi(n as i32) * (self.c * s).exp();
        let trig = self.d
            * self.w.powi(n as i32)
            * (self.w * s + self.ph + n as f64 * std::f64::consts::FRAC_PI_2).sin();
        poly + expo + trig
    }
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a, stable across toolchains
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Seeded random smooth functions. Multi-argument functions are products of
/// independent one-argument factors.
pub struct RandomFunctions {
    seed: u64,
    cache: RefCell<HashMap<(String, usize), Vec<Smooth>>>,
}

impl RandomFunctions {
    pub fn new(seed: u64) -> RandomFunctions {
        RandomFunctions {
            seed,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn factors(&self, name: &str, arity: usize) -> Vec<Smooth> {
        let key = (name.to_string(), arity);
        if let Some(f) = self.cache.borrow().get(&key) {
            return f.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ name_hash(name));
        let f: Vec<Smooth> = (0..arity).map(|_| Smooth::random(&mut rng)).collect();
        self.cache.borrow_mut().insert(key, f.clone());
        f
    }
}

impl FunctionBinding for RandomFunctions {
    fn call(&self, name: &str, deriv: &[u32], args: &[f64]) -> Option<f64> {
        let fs = self.factors(name, args.len());
        Some(
            fs.iter()
                .zip(deriv)
                .zip(args)
                .map(|((g, &n), &s)| g.eval(n, s))
                .product(),
        )
    }
}

fn check(v: f64, e: &Expr) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        let mut text = e.to_string();
        text.truncate(80);
        Err(EvalError::Domain(text))
    }
}

/// Floating-point evaluation.
pub fn eval(e: &Expr, vars: &Bindings, funcs: &dyn FunctionBinding) -> Result<f64, EvalError> {
    let v = match e.node() {
        Node::Num(r) => to_f64(r),
        Node::Sym(s) => *vars
            .get(s)
            .ok_or_else(|| EvalError::UnboundSymbol(s.clone()))?,
        Node::Add(v) => {
            let mut acc = 0.0;
            for t in v {
                acc += eval(t, vars, funcs)?;
            }
            acc
        }
        Node::Mul(v) => {
            let mut acc = 1.0;
            for t in v {
                acc *= eval(t, vars, funcs)?;
            }
            acc
        }
        Node::Pow(b, q) => {
            let x = eval(b, vars, funcs)?;
            if q.is_integer() {
                match q.to_integer().to_i32() {
                    Some(n) => x.powi(n),
                    None => x.powf(to_f64(q)),
                }
            } else {
                x.powf(to_f64(q))
            }
        }
        Node::Fun(f, args) => {
            let a = eval(&args[0], vars, funcs)?;
            match f {
                Func::Exp => a.exp(),
                Func::Log => a.ln(),
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Sinh => a.sinh(),
                Func::Cosh => a.cosh(),
                Func::Atan2 => a.atan2(eval(&args[1], vars, funcs)?),
            }
        }
        Node::Apply(ap) => {
            let mut xs = Vec::with_capacity(ap.args.len());
            for a in &ap.args {
                xs.push(eval(a, vars, funcs)?);
            }
            funcs
                .call(&ap.name, &ap.deriv, &xs)
                .ok_or_else(|| EvalError::UnboundFunction(ap.name.clone()))?
        }
    };
    check(v, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{diff_n, parse_with, Declarations};

    #[test]
    fn random_function_derivatives_match_finite_differences() {
        let rf = RandomFunctions::new(7);
        let h = 1e-5;
        for n in 0..3u32 {
            let s = 0.7;
            let fd = (rf.call("g", &[n], &[s + h]).unwrap() - rf.call("g", &[n], &[s - h]).unwrap())
                / (2.0 * h);
            let exact = rf.call("g", &[n + 1], &[s]).unwrap();
            assert!((fd - exact).abs() < 1e-6, "order {n}: {fd} vs {exact}");
        }
    }

    #[test]
    fn seeded_functions_are_reproducible() {
        let a = RandomFunctions::new(3).call("f", &[0, 1], &[0.3, 0.4]);
        let b = RandomFunctions::new(3).call("f", &[0, 1], &[0.3, 0.4]);
        assert_eq!(a, b);
    }

    #[test]
    fn symbolic_and_numeric_derivatives_agree() {
        let d = Declarations::default().function("f", 1);
        let e = parse_with("f(r)*exp(x1)", &d).unwrap();
        let de = diff_n(&e, "x1", 1);
        let rf = RandomFunctions::new(11);
        let mut vars = Bindings::new();
        vars.insert("x2".into(), 0.4);
        let at = |x: f64, ex: &Expr| {
            let mut v = vars.clone();
            v.insert("x1".into(), x);
            eval(ex, &v, &rf).unwrap()
        };
        let h = 1e-5;
        let fd = (at(0.9 + h, &e) - at(0.9 - h, &e)) / (2.0 * h);
        assert!((fd - at(0.9, &de)).abs() < 1e-6);
    }

    #[test]
    fn unbound_symbol_is_reported() {
        let e = crate::expr::parse("x1 + q").unwrap();
        let err = eval(&e, &Bindings::new(), &NoFunctions).unwrap_err();
        assert!(matches!(err, EvalError::UnboundSymbol(_)));
    }
}
