use std::collections::BTreeMap;

use serde::Serialize;

use super::CatalogEntry;
use crate::equivalence::constant_mass_test;
use crate::expr::{diff, is_zero, parse, simplify, CExpr, Expr, ProbeConfig, Verdict, ZeroTest, T, X1, X2};
use crate::ops::conformal::conformal_transform_inverse;
use crate::ops::optext::parse_operator;
use crate::ops::symmetry::{worst, Residual};
use crate::ops::{check_symmetry, Hamiltonian, LinOp, SymmetryReport};
use crate::Error;

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub name: String,
    pub operator: String,
    pub printed: String,
    pub passed: bool,
    /// Whether the printed form, when it differs, is a symmetry as well.
    pub printed_is_symmetry: Option<bool>,
    /// With the arbitrary functions and parameters left symbolic.
    pub symbolic: SymmetryReport,
    /// On the probing instance.
    pub instance: SymmetryReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub passed: bool,
    pub generators: Vec<GeneratorReport>,
    pub expected_flat: bool,
    pub is_flat: Option<bool>,
    pub flatness_error: Option<String>,
}

pub fn verify_entry(id: &str, cfg: &ProbeConfig) -> Result<EntryReport, Error> {
    let entry = CatalogEntry::get(id)?;
    let h_inst = entry.instance_hamiltonian();
    let mut generators = Vec::new();
    for ((name, op), spec) in entry.generators.iter().zip(entry.spec.generators) {
        let symbolic = check_symmetry(op, &entry.hamiltonian, cfg);
        let instance = check_symmetry(&entry.instantiate_op(op), &h_inst, cfg);
        let printed_is_symmetry = match spec.as_printed {
            Some(text) => {
                let q = parse_operator(text, &entry.decl, &BTreeMap::new())?;
                Some(check_symmetry(&q, &entry.hamiltonian, cfg).is_symmetry)
            }
            None => None,
        };
        generators.push(GeneratorReport {
            printed_is_symmetry,
            name: name.clone(),
            operator: op.to_string(),
            printed: spec.printed.to_string(),
            passed: symbolic.is_symmetry && instance.is_symmetry,
            symbolic,
            instance,
        });
    }
    let (is_flat, flatness_error) = match constant_mass_test(&h_inst.f, cfg) {
        Ok(v) => (Some(v.is_flat), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let passed = generators.iter().all(|g| g.passed) && is_flat == Some(entry.spec.flat);
    Ok(EntryReport {
        id: id.to_string(),
        passed,
        generators,
        expected_flat: entry.spec.flat,
        is_flat,
        flatness_error,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub holds: bool,
    pub tier: Verdict,
    /// Right-hand side as printed in the source, when it differs.
    pub printed: Option<String>,
    pub printed_holds: Option<bool>,
    pub residuals: Vec<Residual>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub id: String,
    pub passed: bool,
    pub relations: Vec<RelationReport>,
}

fn residuals(op: &LinOp, cfg: &ProbeConfig) -> Vec<Residual> {
    op.zero_tests(cfg)
        .into_iter()
        .map(|(id, e, test)| Residual {
            id,
            residual: e.to_string(),
            test,
        })
        .collect()
}

/// `[a, b] − rhs` for operators given by name or text.
fn relation_residual(entry: &CatalogEntry, named: &BTreeMap<String, LinOp>, lhs: (&str, &str), rhs: &str) -> Result<LinOp, Error> {
    let get = |n: &str| parse_operator(n, &entry.decl, named);
    let comm = get(lhs.0)?.commutator(&get(lhs.1)?);
    let rhs = parse_operator(rhs, &entry.decl, named)?;
    Ok(comm.sub(&rhs).simplify())
}

pub fn verify_algebra(id: &str, cfg: &ProbeConfig) -> Result<AlgebraReport, Error> {
    let entry = CatalogEntry::get(id)?;
    let named = entry.named_operators();
    let mut relations = Vec::new();
    for rel in entry.spec.relations {
        let res = residuals(&relation_residual(&entry, &named, rel.lhs, rel.rhs)?, cfg);
        let printed_holds = match rel.printed {
            Some(p) => Some(relation_residual(&entry, &named, rel.lhs, p)?.vanishes(cfg)),
            None => None,
        };
        relations.push(RelationReport {
            relation: format!("[{}, {}] = {}", rel.lhs.0, rel.lhs.1, rel.rhs),
            holds: res.iter().all(|r| r.test.accepts()),
            tier: worst(res.iter().map(|r| r.test.verdict)),
            printed: rel.printed.map(String::from),
            printed_holds,
            residuals: res,
        });
    }
    Ok(AlgebraReport {
        id: id.to_string(),
        passed: relations.iter().all(|r| r.holds),
        relations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformCase {
    pub label: String,
    pub entry: String,
    pub expect_invariant: bool,
    pub test: ZeroTest,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteTransformReport {
    pub passed: bool,
    pub cases: Vec<TransformCase>,
}

fn subs_parts(c: &CExpr, map: &BTreeMap<String, Expr>) -> CExpr {
    CExpr::new(c.re.subs(map), c.im.subs(map))
}

/// `L[e^{-iκθt} ψ∘R] − e^{-iκθt} (Lψ)∘R` for the rotation `R` by `−θ` and an
/// arbitrary complex `ψ(t, x1, x2)`.
fn rotation_residual(h: &Hamiltonian, theta: &Expr, kappa: &Expr) -> CExpr {
    let args = vec![Expr::t(), Expr::x1(), Expr::x2()];
    let psi = CExpr::new(Expr::apply("a", args.clone()), Expr::apply("b", args));
    let (c, s) = (Expr::cos(theta), Expr::sin(theta));
    let mut rot = BTreeMap::new();
    rot.insert(X1.to_string(), Expr::x1() * &c + Expr::x2() * &s);
    rot.insert(X2.to_string(), Expr::x2() * &c - Expr::x1() * &s);
    let phase = CExpr::phase(&-(kappa * theta * Expr::sym(T)));
    let l = h.make_l();
    let moved = l.apply(&(&phase * &subs_parts(&psi, &rot)));
    let expected = &phase * &subs_parts(&l.apply(&psi), &rot);
    (moved - expected).simplify()
}

pub fn verify_finite_transform(cfg: &ProbeConfig) -> Result<FiniteTransformReport, Error> {
    let theta = Expr::sym("theta");
    let nu = Expr::sym("nu");
    let cases: [(&str, &str, Expr, Expr, bool); 4] = [
        ("identity", "new", Expr::zero(), nu.clone(), true),
        ("symbolic angle", "new", theta.clone(), nu.clone(), true),
        ("symbolic angle, radial mass", "t14", theta.clone(), nu.clone(), true),
        ("perturbed phase", "new", theta.clone(), &nu + Expr::one(), false),
    ];
    let mut out = Vec::new();
    for (label, id, th, kappa, expect) in cases {
        let entry = CatalogEntry::get(id)?;
        let r = rotation_residual(&entry.hamiltonian, &th, &kappa);
        let test = r.is_zero(cfg);
        out.push(TransformCase {
            label: label.to_string(),
            entry: id.to_string(),
            expect_invariant: expect,
            passed: test.accepts() == expect,
            test,
        });
    }
    Ok(FiniteTransformReport {
        passed: out.iter().all(|c| c.passed),
        cases: out,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceCase {
    pub label: String,
    pub target: String,
    pub mass: String,
    pub potential: String,
    /// New inverse mass is a constant multiple of the target.
    pub mass_matches: bool,
    /// New potential equals `sign·f` up to an additive constant.
    pub potential_matches: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub passed: bool,
    pub cases: Vec<EquivalenceCase>,
    pub generators: EntryReport,
}

fn is_constant(e: &Expr, cfg: &ProbeConfig) -> bool {
    let e = simplify(e);
    e.is_constant_in_space_time()
        || (is_zero(&diff(&e, X1), cfg).accepts() && is_zero(&diff(&e, X2), cfg).accepts())
}

/// The system with inverse mass `x1²` and constant potential, rewritten in
/// circular and hyperbolic variables.
pub fn verify_a2_equivalences(cfg: &ProbeConfig) -> Result<EquivalenceReport, Error> {
    let base = Hamiltonian::divergence(parse("x1^2")?, Expr::one());
    let cases = [
        ("identity", "x1", "x2", "x1^2", 0),
        ("circular", "exp(x2)*sin(x1)", "exp(x2)*cos(x1)", "sin(x1)^2", 1),
        (
            "hyperbolic",
            "sinh(x1)/(cosh(x1) - cos(x2))",
            "-sin(x2)/(cosh(x1) - cos(x2))",
            "sinh(x1)^2",
            -1,
        ),
    ];
    let mut out = Vec::new();
    for (label, p1, p2, target, sign) in cases {
        let h = conformal_transform_inverse(&base, &parse(p1)?, &parse(p2)?, cfg)?;
        let target_e = parse(target)?;
        let mass_matches = is_constant(&(&h.f / &target_e), cfg);
        let potential_matches = is_constant(&(&h.potential - Expr::int(sign) * &h.f), cfg);
        out.push(EquivalenceCase {
            label: label.to_string(),
            target: target.to_string(),
            mass: h.f.to_string(),
            potential: h.potential.to_string(),
            mass_matches,
            potential_matches,
            passed: mass_matches && potential_matches,
        });
    }
    let generators = verify_entry("A2-Q0", cfg)?;
    Ok(EquivalenceReport {
        passed: out.iter().all(|c| c.passed) && generators.passed,
        cases: out,
        generators,
    })
}
