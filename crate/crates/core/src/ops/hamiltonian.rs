//! Hamiltonians `H = H_k + V` in four equivalent kinetic orderings.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::linop::LinOp;
use super::symmetry::worst;
use crate::expr::{diff, rat, simplify, CExpr, Expr, ProbeConfig, Rational, Verdict, X1, X2};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    /// `¼(m^α p m^β p m^γ + m^γ p m^β p m^α) + V`, `α+β+γ = −1`.
    Roos {
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
    },
    /// `p_a f p_a + V`.
    Divergence,
    /// `√f p_a p_a √f + V`.
    Sqrt,
    /// `f p_a p_a + V`, acting on `f^{1/2} ψ`.
    Gauge,
}

impl Representation {
    pub fn roos(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Representation, Error> {
        if &alpha + &beta + &gamma != -Rational::one() {
            return Err(Error::Invalid(format!(
                "ordering exponents must sum to -1, got {alpha} + {beta} + {gamma}"
            )));
        }
        Ok(Representation::Roos { alpha, beta, gamma })
    }

    pub fn name(&self) -> String {
        match self {
            Representation::Roos { alpha, beta, gamma } => format!("roos({alpha},{beta},{gamma})"),
            Representation::Divergence => "divergence".into(),
            Representation::Sqrt => "sqrt".into(),
            Representation::Gauge => "gauge".into(),
        }
    }
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Inverse-mass function `f = 1/(2m)` and the potential of the given ordering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hamiltonian {
    pub representation: Representation,
    #[serde(serialize_with = "as_text")]
    pub f: Expr,
    #[serde(serialize_with = "as_text")]
    pub potential: Expr,
}

fn as_text<S: Serializer>(e: &Expr, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

fn grad_sq_over_f(f: &Expr) -> Expr {
    let f1 = diff(f, X1);
    let f2 = diff(f, X2);
    (f1.powi(2) + f2.powi(2)) / f
}

fn laplacian(f: &Expr) -> Expr {
    diff(&diff(f, X1), X1) + diff(&diff(f, X2), X2)
}

/// Potential shift from divergence form to a Roos ordering:
/// `V = Ṽ − s(α, γ)` with `s = αγ|∇f|²/f + (α+γ)/2 Δf`.
fn roos_shift(f: &Expr, alpha: &Rational, gamma: &Rational) -> Expr {
    Expr::num(alpha * gamma) * grad_sq_over_f(f) + Expr::num((alpha + gamma) / rat(2, 1)) * laplacian(f)
}

/// Shift from divergence to square-root (and gauge) form:
/// `V̂ = Ṽ − ¼|∇f|²/f + ½Δf`.
fn sqrt_shift(f: &Expr) -> Expr {
    Expr::frac(-1, 4) * grad_sq_over_f(f) + Expr::frac(1, 2) * laplacian(f)
}

impl Hamiltonian {
    pub fn new(representation: Representation, f: Expr, potential: Expr) -> Result<Hamiltonian, Error> {
        if let Representation::Roos { alpha, beta, gamma } = &representation {
            Representation::roos(alpha.clone(), beta.clone(), gamma.clone())?;
        }
        let f = simplify(&f);
        if f.is_zero_literal() {
            return Err(Error::Invalid("inverse mass f must not vanish".into()));
        }
        Ok(Hamiltonian {
            representation,
            f,
            potential: simplify(&potential),
        })
    }

    pub fn divergence(f: Expr, potential: Expr) -> Hamiltonian {
        Hamiltonian::new(Representation::Divergence, f, potential).expect("non-zero f")
    }

    /// Potential of the same system in divergence form.
    fn divergence_potential(&self) -> Expr {
        let f = &self.f;
        let v = &self.potential;
        simplify(&match &self.representation {
            Representation::Divergence => v.clone(),
            Representation::Roos { alpha, gamma, .. } => v + roos_shift(f, alpha, gamma),
            Representation::Sqrt | Representation::Gauge => v - sqrt_shift(f),
        })
    }

    /// Same operator (up to the gauge similarity for `Gauge`) in another ordering.
    pub fn convert(&self, target: &Representation) -> Result<Hamiltonian, Error> {
        if let Representation::Roos { alpha, beta, gamma } = target {
            Representation::roos(alpha.clone(), beta.clone(), gamma.clone())?;
        }
        if &self.representation == target {
            return Ok(self.clone());
        }
        let vd = self.divergence_potential();
        let f = &self.f;
        let potential = simplify(&match target {
            Representation::Divergence => vd,
            Representation::Roos { alpha, gamma, .. } => vd - roos_shift(f, alpha, gamma),
            Representation::Sqrt | Representation::Gauge => vd + sqrt_shift(f),
        });
        Ok(Hamiltonian {
            representation: target.clone(),
            f: self.f.clone(),
            potential,
        })
    }

    /// `H` as a spatial differential operator in its own ordering.
    pub fn operator(&self) -> LinOp {
        let f = &self.f;
        let v = LinOp::mult(self.potential.clone());
        let lap = LinOp::d(1).compose(&LinOp::d(1)).add(&LinOp::d(2).compose(&LinOp::d(2)));
        let kinetic = match &self.representation {
            Representation::Divergence => {
                let mut k = LinOp::zero();
                for a in 1..=2 {
                    k = k.add(&LinOp::p(a).compose(&LinOp::mult(f.clone())).compose(&LinOp::p(a)));
                }
                k
            }
            Representation::Sqrt => {
                let s = LinOp::mult(f.sqrt());
                s.compose(&lap).compose(&s).scale_real(&Expr::int(-1))
            }
            Representation::Gauge => lap.scale_real(&-f),
            Representation::Roos { alpha, beta, gamma } => {
                let m = Expr::frac(1, 2) * f.recip();
                let mp = |q: &Rational| LinOp::mult(if q.is_zero() { Expr::one() } else { m.pow(q.clone()) });
                let mut k = LinOp::zero();
                for a in 1..=2 {
                    let p = LinOp::p(a);
                    let left = mp(alpha).compose(&p).compose(&mp(beta)).compose(&p).compose(&mp(gamma));
                    let right = mp(gamma).compose(&p).compose(&mp(beta)).compose(&p).compose(&mp(alpha));
                    k = k.add(&left.add(&right));
                }
                k.scale_real(&Expr::frac(1, 4))
            }
        };
        kinetic.add(&v)
    }

    /// Schrödinger operator `L = i∂t − H`.
    pub fn make_l(&self) -> LinOp {
        LinOp::term([1, 0, 0], CExpr::i()).sub(&self.operator())
    }

    /// `H` expressed on the wavefunction of the non-gauge orderings; for
    /// the gauge ordering this undoes `Ĥ = f^{1/2} H f^{-1/2}`.
    pub fn operator_on_physical_states(&self) -> LinOp {
        let h = self.operator();
        match self.representation {
            Representation::Gauge => {
                let s = LinOp::mult(self.f.sqrt());
                let si = LinOp::mult(self.f.sqrt().recip());
                si.compose(&h).compose(&s)
            }
            _ => h,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripStep {
    pub representation: String,
    pub potential: String,
    /// Weakest tier of the coefficients of `H_step − H_start` on physical states.
    pub residual: Verdict,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub steps: Vec<RoundTripStep>,
    /// The final conversion back restores the starting potential exactly.
    pub restored: bool,
    pub passed: bool,
}

impl Hamiltonian {
    /// Convert through divergence, square-root and gauge orderings and back,
    /// comparing the operator action at every step.
    pub fn round_trip(&self, cfg: &ProbeConfig) -> Result<RoundTripReport, Error> {
        let start = self.operator_on_physical_states();
        let chain = [
            Representation::Divergence,
            Representation::Sqrt,
            Representation::Gauge,
            self.representation.clone(),
        ];
        let mut steps = Vec::new();
        let mut cur = self.clone();
        for target in &chain {
            cur = cur.convert(target)?;
            let diff = cur.operator_on_physical_states().sub(&start).simplify();
            let tests = diff.zero_tests(cfg);
            let residual = worst(tests.iter().map(|(_, _, z)| z.verdict));
            steps.push(RoundTripStep {
                representation: target.name(),
                potential: cur.potential.to_string(),
                agrees: tests.iter().all(|(_, _, z)| z.accepts()),
                residual,
            });
        }
        let restored = simplify(&(&cur.potential - &self.potential)).is_zero_literal();
        let passed = restored && steps.iter().all(|s| s.agrees);
        Ok(RoundTripReport { steps, restored, passed })
    }
}

impl fmt::Display for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} with f = {}, V = {}",
            self.representation.name(),
            self.f,
            self.potential
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, ProbeConfig};

    #[test]
    fn free_schrodinger_operator() {
        let h = Hamiltonian::divergence(Expr::one(), Expr::zero());
        let want = LinOp::term([1, 0, 0], CExpr::i())
            .add(&LinOp::term([0, 2, 0], CExpr::one()))
            .add(&LinOp::term([0, 0, 2], CExpr::one()));
        assert_eq!(h.make_l(), want);
    }

    #[test]
    fn constant_mass_needs_no_correction() {
        let h = Hamiltonian::new(
            Representation::roos(rat(-1, 3), rat(-1, 3), rat(-1, 3)).unwrap(),
            Expr::int(3),
            parse("x1^2").unwrap(),
        )
        .unwrap();
        let d = h.convert(&Representation::Divergence).unwrap();
        assert_eq!(d.potential, simplify(&parse("x1^2").unwrap()));
    }

    #[test]
    fn roos_matches_direct_expansion() {
        let f = parse("x1^2 + x2^4 + 3*x1*x2 + 5").unwrap();
        let h = Hamiltonian::new(
            Representation::roos(rat(-1, 4), rat(-1, 2), rat(-1, 4)).unwrap(),
            f,
            parse("x2").unwrap(),
        )
        .unwrap();
        let d = h.convert(&Representation::Divergence).unwrap();
        let diff = h.operator().sub(&d.operator());
        assert!(diff.vanishes(&ProbeConfig::default()), "{diff}");
    }

    #[test]
    fn bad_ordering_rejected() {
        assert!(Representation::roos(rat(0, 1), rat(0, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn superintegrable_mass_round_trip() {
        let f = parse("(r^2 + 1)^2").unwrap();
        let div = Hamiltonian::divergence(f, parse("-4*r^2").unwrap());
        let roos = div.convert(&Representation::roos(rat(-1, 2), rat(0, 1), rat(-1, 2)).unwrap()).unwrap();
        let sqrt = roos.convert(&Representation::Sqrt).unwrap();
        assert_eq!(sqrt.potential, Expr::int(4));
        let rt = roos.round_trip(&ProbeConfig::default()).unwrap();
        assert!(rt.passed, "{rt:?}");
    }
}
