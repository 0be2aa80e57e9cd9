//! Gauss hypergeometric function `₂F₁(a, b; c; x)` for rational parameters.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::expr::{Expr, Rational};
use crate::Error;

const SERIES_TOL: f64 = 1e-12;
const MAX_TERMS: usize = 100_000;

/// Degree of the polynomial when `a` or `b` is a non-positive integer.
fn terminating_degree(a: &Rational, b: &Rational) -> Option<usize> {
    [a, b]
        .into_iter()
        .filter(|q| q.is_integer() && !q.is_positive())
        .map(|q| (-q).to_integer().to_usize().expect("degree fits"))
        .min()
}

fn check_c(c: &Rational) -> Result<(), Error> {
    if c.is_integer() && !c.is_positive() {
        return Err(Error::Invalid(format!("c = {c} is a non-positive integer")));
    }
    Ok(())
}

/// Exact coefficients `(a)_j (b)_j / ((c)_j j!)` of a terminating series.
pub fn polynomial_coefficients(a: &Rational, b: &Rational, c: &Rational) -> Result<Option<Vec<Rational>>, Error> {
    check_c(c)?;
    let Some(deg) = terminating_degree(a, b) else {
        return Ok(None);
    };
    let mut out = vec![Rational::one()];
    for j in 0..deg {
        let j = Rational::from_integer(j.into());
        let prev = out.last().unwrap().clone();
        let next = prev * (a + &j) * (b + &j) / ((c + &j) * (&j + Rational::one()));
        out.push(next);
    }
    Ok(Some(out))
}

pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, x: f64) -> Result<f64, Error> {
    if let Some(coeffs) = polynomial_coefficients(a, b, c)? {
        let mut acc = 0.0;
        for q in coeffs.iter().rev() {
            acc = acc * x + q.to_f64().expect("finite coefficient");
        }
        return Ok(acc);
    }
    if x.abs() >= 1.0 {
        return Err(Error::Unsupported(format!(
            "non-terminating 2F1 outside the unit disc (x = {x})"
        )));
    }
    let (a, b, c) = (a.to_f64().unwrap(), b.to_f64().unwrap(), c.to_f64().unwrap());
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * x;
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Numeric("2F1 series did not converge".into()))
}

/// Terminating `₂F₁` as a polynomial in the expression `x`.
pub fn hyp2f1_expr(a: &Rational, b: &Rational, c: &Rational, x: &Expr) -> Result<Expr, Error> {
    let coeffs = polynomial_coefficients(a, b, c)?
        .ok_or_else(|| Error::Unsupported("2F1 does not terminate".into()))?;
    Ok(Expr::add_all(
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| Expr::num(q) * x.powi(j as i64)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rat;

    #[test]
    fn trivial_cases() {
        let r = |n, d| rat(n, d);
        assert_eq!(hyp2f1(&r(0, 1), &r(5, 3), &r(2, 1), 0.7).unwrap(), 1.0);
        assert_eq!(hyp2f1(&r(1, 2), &r(1, 3), &r(3, 2), 0.0).unwrap(), 1.0);
    }

    #[test]
    fn two_term_polynomial() {
        let s = 1.7_f64;
        let v = hyp2f1(&rat(-1, 1), &rat(-1, 1), &rat(1, 1), -s * s).unwrap();
        assert!((v - (1.0 - s * s)).abs() < 1e-14);
    }

    #[test]
    fn series_matches_closed_form() {
        // 2F1(1, 1; 2; x) = -log(1 - x)/x
        let x = 0.4;
        let v = hyp2f1(&rat(1, 1), &rat(1, 1), &rat(2, 1), x).unwrap();
        assert!((v + (1.0 - x).ln() / x).abs() < 1e-11);
    }

    #[test]
    fn invalid_arguments() {
        assert!(matches!(hyp2f1(&rat(1, 2), &rat(1, 2), &rat(-2, 1), 0.1), Err(Error::Invalid(_))));
        assert!(matches!(hyp2f1(&rat(1, 2), &rat(1, 2), &rat(1, 1), 1.5), Err(Error::Unsupported(_))));
    }
}
