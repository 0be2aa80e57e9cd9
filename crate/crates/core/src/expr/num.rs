use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn pow_int(c: &Rational, n: &BigInt) -> Rational {
    let e = n.abs().to_u32().expect("exponent too large");
    let p = num_traits::pow(c.clone(), e as usize);
    if n.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// `c^q` when the result is rational.
pub(crate) fn exact_pow(c: &Rational, q: &Rational) -> Option<Rational> {
    if q.is_integer() {
        if c.is_zero() && q.is_negative() {
            return None;
        }
        return Some(pow_int(c, &q.to_integer()));
    }
    if c.is_negative() {
        return None;
    }
    if c.is_zero() {
        return if q.is_positive() { Some(Rational::zero()) } else { None };
    }
    let den = q.denom().to_u32()?;
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.nth_root(den);
        if num_traits::pow(r.clone(), den as usize) == *x {
            Some(r)
        } else {
            None
        }
    };
    let n = root(c.numer())?;
    let d = root(c.denom())?;
    let base = BigRational::new(n, d);
    Some(pow_int(&base, q.numer()))
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back through the quotient for very large parts
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Split `q` into `floor(q)` and the fractional remainder in `[0, 1)`.
pub(crate) fn split_floor(q: &Rational) -> (BigInt, Rational) {
    let f = q.floor();
    (f.to_integer(), q - f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_roots() {
        assert_eq!(exact_pow(&rat(4, 9), &rat(1, 2)), Some(rat(2, 3)));
        assert_eq!(exact_pow(&rat(8, 1), &rat(-2, 3)), Some(rat(1, 4)));
        assert_eq!(exact_pow(&rat(2, 1), &rat(1, 2)), None);
        assert_eq!(exact_pow(&rat(-4, 1), &rat(1, 2)), None);
    }

    #[test]
    fn floor_split() {
        let (n, f) = split_floor(&rat(-1, 2));
        assert_eq!(n, BigInt::from(-1));
        assert_eq!(f, rat(1, 2));
    }
}
