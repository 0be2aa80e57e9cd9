use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::zero::{is_zero, ProbeConfig, Verdict, ZeroTest};
use super::{diff, simplify, Expr};

/// Complex expression `re + i·im` with real-valued parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CExpr {
    pub re: Expr,
    pub im: Expr,
}

impl CExpr {
    pub fn new(re: Expr, im: Expr) -> CExpr {
        CExpr { re, im }
    }

    pub fn real(re: Expr) -> CExpr {
        CExpr::new(re, Expr::zero())
    }

    pub fn imag(im: Expr) -> CExpr {
        CExpr::new(Expr::zero(), im)
    }

    pub fn zero() -> CExpr {
        CExpr::real(Expr::zero())
    }

    pub fn one() -> CExpr {
        CExpr::real(Expr::one())
    }

    pub fn i() -> CExpr {
        CExpr::imag(Expr::one())
    }

    pub fn is_zero_literal(&self) -> bool {
        self.re.is_zero_literal() && self.im.is_zero_literal()
    }

    pub fn conj(&self) -> CExpr {
        CExpr::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, s: &Expr) -> CExpr {
        CExpr::new(s * &self.re, s * &self.im)
    }

    /// Multiply by `i`.
    pub fn times_i(&self) -> CExpr {
        CExpr::new(-&self.im, self.re.clone())
    }

    pub fn simplify(&self) -> CExpr {
        CExpr::new(simplify(&self.re), simplify(&self.im))
    }

    pub fn diff(&self, var: &str) -> CExpr {
        CExpr::new(diff(&self.re, var), diff(&self.im, var))
    }

    /// `e^{i·theta}` for a real angle.
    pub fn phase(theta: &Expr) -> CExpr {
        CExpr::new(Expr::cos(theta), Expr::sin(theta))
    }

    pub fn is_zero(&self, cfg: &ProbeConfig) -> ZeroTest {
        combine(is_zero(&self.re, cfg), is_zero(&self.im, cfg))
    }
}

/// Joint verdict of two independent tests; the weaker tier wins.
pub fn combine(a: ZeroTest, b: ZeroTest) -> ZeroTest {
    let rank = |v: Verdict| match v {
        Verdict::ProvenZero => 0,
        Verdict::NumericZero => 1,
        Verdict::ProvenNonzero => 2,
    };
    let (hi, lo) = if rank(a.verdict) >= rank(b.verdict) { (a, b) } else { (b, a) };
    let mut out = hi;
    out.max_residual = out.max_residual.max(lo.max_residual);
    if out.verdict == Verdict::NumericZero && lo.verdict == Verdict::NumericZero {
        out.points_used = out.points_used.min(lo.points_used);
        out.skipped.extend(lo.skipped);
        out.skipped.sort_unstable();
        out.skipped.dedup();
    }
    out
}

impl std::fmt::Display for CExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero_literal() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero_literal() {
            write!(f, "i*({})", self.im)
        } else {
            write!(f, "({}) + i*({})", self.re, self.im)
        }
    }
}

impl Serialize for CExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CExpr", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

impl From<Expr> for CExpr {
    fn from(e: Expr) -> CExpr {
        CExpr::real(e)
    }
}

impl Add<&CExpr> for &CExpr {
    type Output = CExpr;
    fn add(self, o: &CExpr) -> CExpr {
        CExpr::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Add for CExpr {
    type Output = CExpr;
    fn add(self, o: CExpr) -> CExpr {
        &self + &o
    }
}

impl Sub<&CExpr> for &CExpr {
    type Output = CExpr;
    fn sub(self, o: &CExpr) -> CExpr {
        CExpr::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Sub for CExpr {
    type Output = CExpr;
    fn sub(self, o: CExpr) -> CExpr {
        &self - &o
    }
}

impl Mul<&CExpr> for &CExpr {
    type Output = CExpr;
    fn mul(self, o: &CExpr) -> CExpr {
        CExpr::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Mul for CExpr {
    type Output = CExpr;
    fn mul(self, o: CExpr) -> CExpr {
        &self * &o
    }
}

impl Neg for &CExpr {
    type Output = CExpr;
    fn neg(self) -> CExpr {
        CExpr::new(-&self.re, -&self.im)
    }
}

impl Neg for CExpr {
    type Output = CExpr;
    fn neg(self) -> CExpr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let m = (&CExpr::i() * &CExpr::i()).simplify();
        assert_eq!(m, CExpr::real(Expr::int(-1)));
    }

    #[test]
    fn phase_has_unit_modulus() {
        let p = CExpr::phase(&Expr::sym("theta"));
        let m = (&p * &p.conj()).simplify();
        assert_eq!(m, CExpr::one());
    }
}
