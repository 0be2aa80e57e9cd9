//! Straightening a conformal vector field `u∂1 + v∂2` to `∂/∂x̃2`.
//!
//! With `w = u + iv` analytic in `z = x1 + ix2` and `G = ∫ dz / w`, the new
//! variables are `x̃1 = −Im G`, `x̃2 = Re G`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::symmetry::{is_cauchy_riemann, DiffOperator};
use crate::expr::{diff, is_zero, simplify, CExpr, Expr, ProbeConfig, Rational, X1, X2};
use crate::Error;

pub(crate) fn z() -> CExpr {
    CExpr::new(Expr::x1(), Expr::x2())
}

fn abs2(a: &CExpr) -> Expr {
    &a.re * &a.re + &a.im * &a.im
}

fn cdiv(a: &CExpr, b: &CExpr) -> CExpr {
    (a * &b.conj()).scale(&abs2(b).recip()).simplify()
}

fn is_const(c: &CExpr) -> bool {
    c.re.is_constant_in_space_time() && c.im.is_constant_in_space_time()
}

pub(crate) fn cexp(a: &CExpr) -> CExpr {
    CExpr::phase(&a.im).scale(&Expr::exp(&a.re))
}

/// `z^q` for rational `q`; polynomial for integer `q`.
pub(crate) fn zpow(q: &Rational) -> CExpr {
    if q.is_integer() {
        let n = q.to_integer();
        let k: u32 = n.abs().try_into().expect("exponent too large");
        let mut acc = CExpr::one();
        for _ in 0..k {
            acc = (&acc * &z()).simplify();
        }
        if n.is_negative() {
            acc = acc.conj().scale(&abs2(&z()).powi(-(k as i64)));
        }
        return acc.simplify();
    }
    let angle = Expr::num(q.clone()) * Expr::phi();
    CExpr::phase(&angle).scale(&Expr::r().pow(q.clone())).simplify()
}

pub(crate) fn clog_z() -> CExpr {
    CExpr::new(Expr::log(&Expr::r()), Expr::phi()).simplify()
}

/// Primitive `G` of `1/w`.
fn primitive(w: &CExpr) -> Result<CExpr, Error> {
    let dw = CExpr::new(diff(&w.re, X1), diff(&w.im, X1)).simplify();
    if dw.is_zero_literal() {
        return Ok(cdiv(&z(), w));
    }
    let b = cdiv(&dw, w);
    if is_const(&b) {
        // w = c e^{bz}
        let e_minus = cexp(&-(&b * &z()));
        let c = (w * &e_minus).simplify();
        if is_const(&c) {
            return Ok((-cdiv(&e_minus, &(&c * &b))).simplify());
        }
    }
    let p = cdiv(&(&z() * &dw), w);
    if is_const(&p) && p.im.is_zero_literal() {
        if let Some(pq) = p.re.as_num() {
            let c = cdiv(w, &zpow(pq));
            if !is_const(&c) {
                return Err(Error::Unsupported("field is not a power of z".into()));
            }
            let one = Rational::one();
            let q = &one - pq;
            if q.is_zero() {
                return Ok(cdiv(&clog_z(), &c));
            }
            let denom = c.scale(&Expr::num(q.clone()));
            return Ok(cdiv(&zpow(&q), &denom));
        }
    }
    Err(Error::Unsupported(
        "u + iv is not constant, exponential or a power of z".into(),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct Rectification {
    pub x1: String,
    pub x2: String,
    /// `Q x̃1 = 0` and `Q x̃2 = 1` for the vector-field part of `Q`.
    pub contract_holds: bool,
    /// `∂1x̃1 = ∂2x̃2 = v/|w|²`, `∂2x̃1 = −∂1x̃2 = −u/|w|²`.
    pub gradient_form_holds: bool,
    /// The variant `∂1x̃1 = ∂2x̃2 = −u/|w|²`, `∂2x̃1 = −∂1x̃2 = −v/|w|²`.
    pub swapped_gradient_form_holds: bool,
    #[serde(skip)]
    pub new_vars: (Expr, Expr),
}

fn vanishes(e: Expr, cfg: &ProbeConfig) -> bool {
    is_zero(&simplify(&e), cfg).accepts()
}

/// Variables in which the field of `op` is the shift along the second one.
pub fn rectify_generator(op: &DiffOperator, cfg: &ProbeConfig) -> Result<Rectification, Error> {
    if !op.xi0.is_zero_literal() || !op.eta.is_zero_literal() {
        return Err(Error::Invalid("rectification needs a purely spatial field".into()));
    }
    if !is_cauchy_riemann(&op.u, &op.v, cfg) {
        return Err(Error::Invalid("field violates the Cauchy-Riemann conditions".into()));
    }
    let w = CExpr::new(op.u.clone(), op.v.clone());
    if w.is_zero_literal() {
        return Err(Error::Invalid("field vanishes".into()));
    }
    let g = primitive(&w)?;
    let y1 = simplify(&-&g.im);
    let y2 = g.re.clone();
    let (u, v) = (&op.u, &op.v);
    let apply = |e: &Expr| u * diff(e, X1) + v * diff(e, X2);
    let contract_holds = vanishes(apply(&y1), cfg) && vanishes(apply(&y2) - 1, cfg);
    let m = abs2(&w);
    let g11 = diff(&y1, X1);
    let g12 = diff(&y1, X2);
    let g21 = diff(&y2, X1);
    let g22 = diff(&y2, X2);
    let form = |a: &Expr, b: &Expr| {
        vanishes(&g11 - a / &m, cfg)
            && vanishes(&g22 - a / &m, cfg)
            && vanishes(&g12 - b / &m, cfg)
            && vanishes(&g21 + b / &m, cfg)
    };
    let gradient_form_holds = form(v, &-u);
    let swapped_gradient_form_holds = form(&-u, &-v);
    Ok(Rectification {
        x1: y1.to_string(),
        x2: y2.to_string(),
        contract_holds,
        gradient_form_holds,
        swapped_gradient_form_holds,
        new_vars: (y1, y2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    fn field(u: &str, v: &str) -> DiffOperator {
        DiffOperator::spatial(parse(u).unwrap(), parse(v).unwrap())
    }

    #[test]
    fn shift_is_already_straight() {
        let r = rectify_generator(&field("0", "1"), &cfg()).unwrap();
        assert_eq!(r.new_vars, (Expr::x1(), Expr::x2()));
        assert!(r.contract_holds && r.gradient_form_holds);
        assert!(!r.swapped_gradient_form_holds);
    }

    #[test]
    fn dilation_gives_angle_and_log_radius() {
        let r = rectify_generator(&field("x1", "x2"), &cfg()).unwrap();
        assert!(r.contract_holds);
        assert_eq!(r.new_vars.0, simplify(&parse("-phi").unwrap()));
        assert_eq!(r.new_vars.1, simplify(&parse("log(r)").unwrap()));
    }

    #[test]
    fn rotation_gives_angle_as_second_variable() {
        let r = rectify_generator(&field("-x2", "x1"), &cfg()).unwrap();
        assert!(r.contract_holds && r.gradient_form_holds);
        assert_eq!(r.new_vars.1, simplify(&Expr::phi()));
    }

    #[test]
    fn special_conformal_and_exponential_fields() {
        for (u, v) in [("x1^2 - x2^2", "2*x1*x2"), ("exp(x1)*cos(x2)", "exp(x1)*sin(x2)"), ("2", "3")] {
            let r = rectify_generator(&field(u, v), &cfg()).unwrap();
            assert!(r.contract_holds, "{u}, {v}");
        }
    }

    #[test]
    fn unsupported_family() {
        let e = rectify_generator(&field("x1^3 - 3*x1*x2^2 + x1", "3*x1^2*x2 - x2^3 + x2"), &cfg());
        assert!(matches!(e, Err(Error::Unsupported(_))));
    }
}
