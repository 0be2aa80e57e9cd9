//! First-order symmetry operators and the check `[Q, L] = αL`.

use serde::Serialize;

use super::hamiltonian::{Hamiltonian, Representation};
use super::linop::{label, LinOp};
use crate::expr::{diff, simplify, CExpr, Expr, ProbeConfig, Verdict, ZeroTest, T, X1, X2};

/// `Q = ξ⁰∂t + u∂1 + v∂2 + u_1 + c + iη` with a real constant `c` (zero for
/// the canonical form; it commutes with everything).
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator {
    pub xi0: Expr,
    pub u: Expr,
    pub v: Expr,
    pub eta: Expr,
    pub shift: Expr,
    /// Whether `(u, v)` passed the Cauchy-Riemann test at construction.
    pub cauchy_riemann: bool,
}

/// Cauchy-Riemann test for a pair of real functions of `x1, x2`.
pub fn is_cauchy_riemann(u: &Expr, v: &Expr, cfg: &ProbeConfig) -> bool {
    let a = simplify(&(diff(u, X1) - diff(v, X2)));
    let b = simplify(&(diff(u, X2) + diff(v, X1)));
    crate::expr::is_zero(&a, cfg).accepts() && crate::expr::is_zero(&b, cfg).accepts()
}

impl DiffOperator {
    pub fn new(xi0: Expr, u: Expr, v: Expr, eta: Expr) -> DiffOperator {
        DiffOperator::with_shift(xi0, u, v, eta, Expr::zero())
    }

    pub fn with_shift(xi0: Expr, u: Expr, v: Expr, eta: Expr, shift: Expr) -> DiffOperator {
        let (xi0, u, v, eta, shift) = (simplify(&xi0), simplify(&u), simplify(&v), simplify(&eta), simplify(&shift));
        let cauchy_riemann = is_cauchy_riemann(&u, &v, &ProbeConfig::default());
        DiffOperator {
            xi0,
            u,
            v,
            eta,
            shift,
            cauchy_riemann,
        }
    }

    /// Purely spatial field `u∂1 + v∂2 + u_1`.
    pub fn spatial(u: Expr, v: Expr) -> DiffOperator {
        DiffOperator::new(Expr::zero(), u, v, Expr::zero())
    }

    /// Unit operator scaled by `i`.
    pub fn unit_i() -> DiffOperator {
        DiffOperator::new(Expr::zero(), Expr::zero(), Expr::zero(), Expr::one())
    }

    pub fn to_linop(&self) -> LinOp {
        let zeroth = CExpr::new(diff(&self.u, X1) + &self.shift, self.eta.clone());
        LinOp::term([1, 0, 0], self.xi0.clone())
            .add(&LinOp::term([0, 1, 0], self.u.clone()))
            .add(&LinOp::term([0, 0, 1], self.v.clone()))
            .add(&LinOp::mult(zeroth))
    }

    /// Write `κ·q` in canonical form for a unit phase `κ ∈ {1, i}` making the
    /// first-order part real. `None` if `q` has no such form.
    pub fn from_linop(q: &LinOp) -> Option<(CExpr, DiffOperator)> {
        if q.order() > 1 {
            return None;
        }
        for kappa in [CExpr::one(), CExpr::i()] {
            let qn = q.scale(&kappa);
            let first: Vec<CExpr> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|m| qn.coeff(m)).collect();
            if !first.iter().all(|c| c.im.is_zero_literal()) {
                continue;
            }
            if first.iter().all(|c| c.re.is_zero_literal()) && kappa != CExpr::one() {
                continue;
            }
            let c0 = qn.coeff(&[0, 0, 0]);
            let u = first[1].re.clone();
            let shift = simplify(&(&c0.re - diff(&u, X1)));
            if !shift.is_constant_in_space_time() {
                return None;
            }
            let op = DiffOperator::with_shift(first[0].re.clone(), u, first[2].re.clone(), c0.im.clone(), shift);
            return Some((kappa, op));
        }
        None
    }
}

/// Names of the unknowns in the determining-equation templates.
pub const UNKNOWNS: [&str; 5] = ["xi0", "u", "v", "eta", "alpha"];

fn unknown(name: &str) -> Expr {
    Expr::apply(name, vec![Expr::t(), Expr::x1(), Expr::x2()])
}

/// The determining system for a divergence-form Hamiltonian, as residual
/// templates in the unknown functions `xi0, u, v, eta, alpha` of `(t, x1, x2)`.
pub fn generate_determining_equations(h: &Hamiltonian) -> Vec<(String, Expr)> {
    let f = &h.f;
    let pot = &h.potential;
    let [xi0, u, v, eta, alpha] = UNKNOWNS.map(unknown);
    let d = diff;
    let u1 = d(&u, X1);
    vec![
        ("xi0-t".into(), d(&xi0, T) + &alpha),
        ("xi0-x1".into(), d(&xi0, X1)),
        ("xi0-x2".into(), d(&xi0, X2)),
        ("cauchy-riemann-1".into(), &u1 - d(&v, X2)),
        ("cauchy-riemann-2".into(), d(&u, X2) + d(&v, X1)),
        ("eta-x1".into(), Expr::int(2) * f * d(&eta, X1) + d(&u, T)),
        ("eta-x2".into(), Expr::int(2) * f * d(&eta, X2) + d(&v, T)),
        (
            "mass".into(),
            &u * d(f, X1) + &v * d(f, X2) - (&alpha + Expr::int(2) * &u1) * f,
        ),
        (
            "potential".into(),
            &u * d(pot, X1) + &v * d(pot, X2) + d(&u1, X1) * d(f, X1) + d(&d(&v, X2), X2) * d(f, X2)
                - &alpha * pot
                - d(&eta, T),
        ),
    ]
}

/// Substitute a concrete operator and multiplier into the templates.
pub fn instantiate(templates: &[(String, Expr)], op: &DiffOperator, alpha: &Expr) -> Vec<(String, Expr)> {
    let vars = [T, X1, X2];
    let values = [&op.xi0, &op.u, &op.v, &op.eta, alpha];
    templates
        .iter()
        .map(|(id, e)| {
            let mut out = e.clone();
            for (name, body) in UNKNOWNS.iter().zip(values) {
                out = out.subs_function(name, &vars, body);
            }
            (id.clone(), simplify(&out))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub id: String,
    pub residual: String,
    #[serde(flatten)]
    pub test: ZeroTest,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub generator: String,
    /// Phase applied to the operator before the check.
    pub kappa: String,
    pub alpha: String,
    pub is_symmetry: bool,
    /// Weakest tier among the deciding tests.
    pub tier: Verdict,
    pub operator_residuals: Vec<Residual>,
    pub determining_residuals: Option<Vec<Residual>>,
    pub diagnostic: Option<String>,
}

/// `[Q, L]` for the divergence form of `h`.
pub fn commutator_with_l(q: &LinOp, h: &Hamiltonian) -> LinOp {
    let h = h.convert(&Representation::Divergence).expect("divergence form always exists");
    q.commutator(&h.make_l())
}

fn phase_text(k: &CExpr) -> String {
    if k == &CExpr::one() {
        "1".into()
    } else {
        "i".into()
    }
}

pub(crate) fn worst(tests: impl Iterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::ProvenZero;
    for v in tests {
        match v {
            Verdict::ProvenNonzero => return v,
            Verdict::NumericZero => out = v,
            Verdict::ProvenZero => {}
        }
    }
    out
}

/// Decide whether `q` satisfies `[Q, L] = αL` for `h`, with `α` read off the
/// `∂1²` coefficient. When `q` has the canonical first-order form the
/// determining system is checked as a second route.
pub fn check_symmetry(q: &LinOp, h: &Hamiltonian, cfg: &ProbeConfig) -> SymmetryReport {
    let h = h.convert(&Representation::Divergence).expect("divergence form always exists");
    let (kappa, op) = match DiffOperator::from_linop(q) {
        Some((k, op)) => (k, Some(op)),
        None => (CExpr::one(), None),
    };
    let qn = q.scale(&kappa);
    let l = h.make_l();
    let c = qn.commutator(&l);
    let finv = h.f.recip();
    let alpha = c.coeff(&[0, 2, 0]).scale(&finv).simplify();
    let residual = c.sub(&l.scale(&alpha));
    let mut diagnostic = None;
    let operator_residuals: Vec<Residual> = residual
        .zero_tests(cfg)
        .into_iter()
        .map(|(id, e, test)| Residual {
            id,
            residual: e.to_string(),
            test,
        })
        .collect();
    if operator_residuals.iter().any(|r| r.id == label(&[0, 0, 2]) && !r.test.accepts()) {
        diagnostic = Some("the d1^2 and d2^2 coefficients demand different multipliers".into());
    }
    let mut determining_residuals = None;
    if let Some(op) = &op {
        let alpha_real = alpha.im.is_zero_literal() || crate::expr::is_zero(&alpha.im, cfg).accepts();
        if alpha_real {
            let templates = generate_determining_equations(&h);
            let list: Vec<Residual> = instantiate(&templates, op, &alpha.re)
                .into_iter()
                .map(|(id, e)| Residual {
                    test: crate::expr::is_zero(&e, cfg),
                    residual: e.to_string(),
                    id,
                })
                .collect();
            determining_residuals = Some(list);
        } else if diagnostic.is_none() {
            diagnostic = Some("multiplier is not real; determining system skipped".into());
        }
    }
    let op_ok = operator_residuals.iter().all(|r| r.test.accepts());
    let det_ok = determining_residuals
        .as_ref()
        .is_none_or(|v| v.iter().all(|r| r.test.accepts()));
    if op_ok != det_ok && diagnostic.is_none() {
        diagnostic = Some("operator and determining-system routes disagree".into());
    }
    let all_tests = operator_residuals
        .iter()
        .chain(determining_residuals.iter().flatten())
        .map(|r| r.test.verdict);
    let tier = worst(all_tests);
    SymmetryReport {
        generator: q.to_string(),
        kappa: phase_text(&kappa),
        alpha: alpha.to_string(),
        is_symmetry: op_ok && det_ok,
        tier,
        operator_residuals,
        determining_residuals,
        diagnostic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_with, Declarations};

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    #[test]
    fn momentum_of_free_particle() {
        let h = Hamiltonian::divergence(Expr::one(), Expr::zero());
        let r = check_symmetry(&LinOp::p(1), &h, &cfg());
        assert!(r.is_symmetry);
        assert_eq!(r.alpha, "0");
        assert_eq!(commutator_with_l(&LinOp::p(2), &h), LinOp::zero());
    }

    #[test]
    fn rotation_of_radial_system() {
        let d = Declarations::default().function("f", 1).function("V", 1);
        let h = Hamiltonian::divergence(parse_with("f(r)", &d).unwrap(), parse_with("V(r)", &d).unwrap());
        let j = LinOp::mult(Expr::x1()).compose(&LinOp::p(2)).sub(&LinOp::mult(Expr::x2()).compose(&LinOp::p(1)));
        let r = check_symmetry(&j, &h, &cfg());
        assert!(r.is_symmetry, "{r:?}");
        assert_eq!(r.tier, Verdict::ProvenZero);
        assert_eq!(r.kappa, "i");
    }

    #[test]
    fn broken_translation_has_mass_residual() {
        let h = Hamiltonian::divergence(parse("x1^3").unwrap(), Expr::zero());
        let c = commutator_with_l(&LinOp::p(1), &h);
        assert!(!c.coeff(&[0, 2, 0]).is_zero_literal());
        assert!(!check_symmetry(&LinOp::p(1), &h, &cfg()).is_symmetry);
    }

    #[test]
    fn time_translation_solves_templates() {
        let d = Declarations::default().function("f", 2).function("V", 2);
        let h = Hamiltonian::divergence(
            parse_with("f(x1,x2)", &d).unwrap(),
            parse_with("V(x1,x2)", &d).unwrap(),
        );
        let op = DiffOperator::new(Expr::one(), Expr::zero(), Expr::zero(), Expr::zero());
        let res = instantiate(&generate_determining_equations(&h), &op, &Expr::zero());
        assert!(res.iter().all(|(_, e)| e.is_zero_literal()));
    }

    #[test]
    fn mass_equation_detects_shift_breaking() {
        let d = Declarations::default().function("f", 1);
        let h = Hamiltonian::divergence(parse_with("f(x1)", &d).unwrap(), Expr::zero());
        let op = DiffOperator::spatial(Expr::one(), Expr::zero());
        let res = instantiate(&generate_determining_equations(&h), &op, &Expr::zero());
        let mass = &res.iter().find(|(id, _)| id == "mass").unwrap().1;
        assert_eq!(*mass, simplify(&parse_with("f'(x1)", &d).unwrap()));
        assert_eq!(crate::expr::is_zero(mass, &cfg()).verdict, Verdict::ProvenNonzero);
    }
}
