//! Closed-form radial eigenfunctions of the superintegrable system with
//! inverse mass `(1 + r²)²` and potential `−4r²`.

use serde::Serialize;

use super::hyp::{hyp2f1, hyp2f1_expr};
use crate::expr::{diff, eval, is_zero, rat, Bindings, Expr, NoFunctions, ProbeConfig, Rational, ZeroTest};
use crate::Error;

/// Plain radial symbol (not the `sqrt(x1^2+x2^2)` sugar).
pub const R: &str = "r";

pub fn closed_form_energy(n: u32) -> f64 {
    let n = n as f64;
    n * n + 3.0
}

fn parameters(n: u32, k: u32) -> Result<(Rational, Rational, Rational), Error> {
    if n == 0 || k + 1 > n {
        return Err(Error::Invalid(format!("need n >= 1 and 0 <= k <= n - 1, got n = {n}, k = {k}")));
    }
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "n = {n} is even; the hypergeometric factor does not terminate"
        )));
    }
    let (n, k) = (n as i64, k as i64);
    Ok((rat(1 - n, 2), rat(1 + 2 * k - n, 2), rat(1 + k, 1)))
}

/// `r^k (r²+1)^{−(1+n)/2} ₂F₁(½−n/2, ½+k−n/2; 1+k; −r²)`.
pub fn eigenfunction_closed(n: u32, k: u32, r: f64) -> Result<f64, Error> {
    let (a, b, c) = parameters(n, k)?;
    let f = hyp2f1(&a, &b, &c, -r * r)?;
    Ok(r.powi(k as i32) * (1.0 + r * r).powf(-(1.0 + n as f64) / 2.0) * f)
}

pub fn eigenfunction_expr(n: u32, k: u32) -> Result<Expr, Error> {
    let (a, b, c) = parameters(n, k)?;
    let r = Expr::sym(R);
    let r2 = r.powi(2);
    let poly = hyp2f1_expr(&a, &b, &c, &-&r2)?;
    let decay = (&r2 + Expr::one()).pow(rat(-(1 + n as i64), 2));
    Ok(r.powi(k as i64) * decay * poly)
}

/// Radial operator of the channel `k` minus `E`, applied to `phi(r)`.
pub fn radial_operator(phi: &Expr, k: u32, energy: &Expr) -> Expr {
    let r = Expr::sym(R);
    let r2 = r.powi(2);
    let d1 = diff(phi, R);
    let d2 = diff(&d1, R);
    let k2 = Expr::int((k * k) as i64);
    let f = (&r2 + Expr::one()).powi(2);
    -(f * (d2 - k2 * phi / &r2))
        - (&r2 + Expr::one()) * (Expr::one() + Expr::int(5) * &r2) / &r * d1
        - Expr::int(4) * &r2 * phi
        - energy * phi
}

#[derive(Clone, Debug, Serialize)]
pub struct RadialResidual {
    pub n: u32,
    pub k: u32,
    pub energy: f64,
    pub test: ZeroTest,
    /// Largest absolute residual over the sample grid on `[0.1, 10]`.
    pub max_numeric: f64,
}

pub fn radial_residual(n: u32, k: u32, cfg: &ProbeConfig) -> Result<RadialResidual, Error> {
    let phi = eigenfunction_expr(n, k)?;
    let energy = Expr::int((n * n + 3) as i64);
    let res = radial_operator(&phi, k, &energy);
    let test = is_zero(&res, cfg);
    let mut max_numeric: f64 = 0.0;
    let mut b = Bindings::new();
    for i in 0..=990 {
        b.insert(R.to_string(), 0.1 + 0.01 * i as f64);
        max_numeric = max_numeric.max(eval(&res, &b, &NoFunctions)?.abs());
    }
    Ok(RadialResidual {
        n,
        k,
        energy: closed_form_energy(n),
        test,
        max_numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Verdict;

    #[test]
    fn energies() {
        assert_eq!(closed_form_energy(1), 4.0);
        assert_eq!(closed_form_energy(2), 7.0);
        assert_eq!(closed_form_energy(3), 12.0);
    }

    #[test]
    fn low_eigenfunctions() {
        let r = 0.8_f64;
        let e10 = eigenfunction_closed(1, 0, r).unwrap();
        assert!((e10 - 1.0 / (1.0 + r * r)).abs() < 1e-15);
        let e30 = eigenfunction_closed(3, 0, r).unwrap();
        assert!((e30 - (1.0 - r * r) / (1.0 + r * r).powi(2)).abs() < 1e-15);
        assert_eq!(eigenfunction_closed(3, 1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn residuals_vanish() {
        for (n, k) in [(1, 0), (3, 0), (3, 1), (3, 2), (5, 1)] {
            let r = radial_residual(n, k, &ProbeConfig::default()).unwrap();
            assert_eq!(r.test.verdict, Verdict::ProvenZero, "({n},{k})");
            assert!(r.max_numeric < 1e-9, "({n},{k}): {}", r.max_numeric);
        }
    }

    #[test]
    fn wrong_energy_leaves_residual() {
        let phi = eigenfunction_expr(3, 0).unwrap();
        let res = radial_operator(&phi, 0, &Expr::int(11));
        assert_eq!(is_zero(&res, &ProbeConfig::default()).verdict, Verdict::ProvenNonzero);
    }

    #[test]
    fn even_levels_unsupported() {
        assert!(matches!(eigenfunction_closed(2, 0, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(eigenfunction_closed(3, 3, 1.0), Err(Error::Invalid(_))));
    }
}
