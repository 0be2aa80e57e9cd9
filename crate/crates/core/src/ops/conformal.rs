//! Conformal changes of the spatial variables combined with the rescaling
//! of the wavefunction that keeps the divergence form of `H`.
//!
//! For new coordinates `y(x)` with `λ = |∂y/∂x|²` the Hamiltonian
//! `−∂_a f ∂_a + V` becomes `−∂_{y_a} (λf) ∂_{y_a} + V + W` after the
//! similarity `ψ → λ^{-1/2} ψ`, where
//! `W = λ^{1/2} ∂_{y_a}(λf ∂_{y_a} λ^{-1/2})`.

use std::collections::BTreeMap;

use super::hamiltonian::{Hamiltonian, Representation};
use super::symmetry::{is_cauchy_riemann, DiffOperator};
use crate::expr::{diff, is_zero, simplify, Expr, ProbeConfig, Verdict, X1, X2};
use crate::Error;

/// A conformal change of variables given through the new coordinates.
#[derive(Clone, Debug)]
pub enum ConformalMap {
    /// New coordinates `(ũ, ṽ)` as functions of the old ones.
    Explicit { u: Expr, v: Expr },
    /// Only the complex derivative `ũ_1 + iṽ_1` of the map, for maps whose
    /// primitive is not elementary.
    Derivative { re: Expr, im: Expr },
}

impl ConformalMap {
    pub fn identity() -> ConformalMap {
        ConformalMap::Explicit {
            u: Expr::x1(),
            v: Expr::x2(),
        }
    }

    /// `(ũ_1, ũ_2)`.
    fn gradient(&self) -> (Expr, Expr) {
        match self {
            ConformalMap::Explicit { u, .. } => (simplify(&diff(u, X1)), simplify(&diff(u, X2))),
            ConformalMap::Derivative { re, im } => (re.clone(), simplify(&-im)),
        }
    }

    fn check(&self, cfg: &ProbeConfig) -> Result<(), Error> {
        let ok = match self {
            ConformalMap::Explicit { u, v } => is_cauchy_riemann(u, v, cfg),
            ConformalMap::Derivative { re, im } => is_cauchy_riemann(re, im, cfg),
        };
        if !ok {
            return Err(Error::Invalid("map violates the Cauchy-Riemann conditions".into()));
        }
        Ok(())
    }
}

fn require_nonsingular(lambda: &Expr, cfg: &ProbeConfig) -> Result<(), Error> {
    if is_zero(lambda, cfg).verdict != Verdict::ProvenNonzero {
        return Err(Error::Invalid("map is singular: |grad u|^2 vanishes".into()));
    }
    Ok(())
}

fn divergence_form(h: &Hamiltonian) -> Hamiltonian {
    h.convert(&Representation::Divergence).expect("divergence form always exists")
}

/// Transformed Hamiltonian in pullback mode: the new `f` and `V` are
/// returned as functions of the old variables.
pub fn conformal_transform(h: &Hamiltonian, map: &ConformalMap, cfg: &ProbeConfig) -> Result<Hamiltonian, Error> {
    map.check(cfg)?;
    let h = divergence_form(h);
    let (g1, g2) = map.gradient();
    let lambda = simplify(&(g1.powi(2) + g2.powi(2)));
    require_nonsingular(&lambda, cfg)?;
    // derivatives along the new coordinates, written in the old ones
    let d_new = |e: &Expr, k: usize| -> Expr {
        let (a, b) = if k == 0 { (g1.clone(), g2.clone()) } else { (-&g2, g1.clone()) };
        (a * diff(e, X1) + b * diff(e, X2)) / &lambda
    };
    let f_new = simplify(&(&lambda * &h.f));
    let w_inv = lambda.pow(crate::expr::rat(-1, 2));
    let mut w = Expr::zero();
    for k in 0..2 {
        w = w + d_new(&(&f_new * d_new(&w_inv, k)), k);
    }
    let w = simplify(&(lambda.sqrt() * w));
    Hamiltonian::new(Representation::Divergence, f_new, &h.potential + w)
}

/// Transformed Hamiltonian when the old coordinates are known as functions
/// `x_old = (p1, p2)` of the new ones; the result is in the new variables,
/// which reuse the names `x1, x2`.
pub fn conformal_transform_inverse(
    h: &Hamiltonian,
    p1: &Expr,
    p2: &Expr,
    cfg: &ProbeConfig,
) -> Result<Hamiltonian, Error> {
    if !is_cauchy_riemann(p1, p2, cfg) {
        return Err(Error::Invalid("inverse map violates the Cauchy-Riemann conditions".into()));
    }
    let h = divergence_form(h);
    let jac = simplify(&(diff(p1, X1).powi(2) + diff(p2, X1).powi(2)));
    require_nonsingular(&jac, cfg)?;
    let lambda = jac.recip();
    let sub = compose_map(p1, p2);
    let f_new = simplify(&(&lambda * h.f.subs(&sub)));
    let w_inv = jac.sqrt();
    let mut w = Expr::zero();
    for var in [X1, X2] {
        w = w + diff(&(&f_new * diff(&w_inv, var)), var);
    }
    let w = simplify(&(lambda.sqrt() * w));
    Hamiltonian::new(Representation::Divergence, f_new, h.potential.subs(&sub) + w)
}

fn compose_map(p1: &Expr, p2: &Expr) -> BTreeMap<String, Expr> {
    let mut m = BTreeMap::new();
    m.insert(X1.to_string(), p1.clone());
    m.insert(X2.to_string(), p2.clone());
    m
}

/// A generator of the old system written in the new variables, for old
/// coordinates `(p1, p2)` given as functions of the new ones.
pub fn push_forward(op: &DiffOperator, p1: &Expr, p2: &Expr) -> DiffOperator {
    let sub = compose_map(p1, p2);
    let (a, b) = (diff(p1, X1), diff(p2, X1));
    let det = &a * &a + &b * &b;
    let u = op.u.subs(&sub);
    let v = op.v.subs(&sub);
    // inverse of [[a, -b], [b, a]]
    let nu = (&a * &u + &b * &v) / &det;
    let nv = (&a * &v - &b * &u) / &det;
    DiffOperator::with_shift(op.xi0.subs(&sub), nu, nv, op.eta.subs(&sub), op.shift.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    #[test]
    fn identity_map_is_trivial() {
        let h = Hamiltonian::divergence(parse("x1^2+x2^4+1").unwrap(), parse("x1*x2").unwrap());
        let out = conformal_transform(&h, &ConformalMap::identity(), &cfg()).unwrap();
        assert_eq!(out, h);
    }

    #[test]
    fn exponential_map_gives_exponential_mass() {
        let h = Hamiltonian::divergence(Expr::one(), Expr::zero());
        let map = ConformalMap::Explicit {
            u: parse("exp(x1)*cos(x2)").unwrap(),
            v: parse("exp(x1)*sin(x2)").unwrap(),
        };
        let out = conformal_transform(&h, &map, &cfg()).unwrap();
        assert_eq!(out.f, simplify(&parse("exp(2*x1)").unwrap()));
    }

    #[test]
    fn non_conformal_map_rejected() {
        let h = Hamiltonian::divergence(Expr::one(), Expr::zero());
        let map = ConformalMap::Explicit {
            u: parse("x1^2").unwrap(),
            v: parse("x2").unwrap(),
        };
        assert!(conformal_transform(&h, &map, &cfg()).is_err());
    }
}
