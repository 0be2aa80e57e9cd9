//! The full verification run behind `verify-all`, summarized as a manifest.
//!
//! The manifest holds no timings or paths, so a fixed seed gives identical
//! bytes on every run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, verify_a2_equivalences, verify_algebra, verify_entry, verify_finite_transform, CatalogEntry};
use crate::equivalence::{constant_mass_test, flat_family_member, flatness_corpus, Family};
use crate::expr::{parse, rat, ProbeConfig, Verdict};
use crate::ops::determining::GeneralSystem;
use crate::ops::{Hamiltonian, Representation};
use crate::spectral::{casimir_check, radial_residual, rmax_sweep, solve_radial_numeric, RadialProblem};
use crate::Error;

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub version: u32,
    pub seed: u64,
    pub tol: f64,
    pub passed: bool,
    pub sections: Vec<Section>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }
}

fn section(name: &str, passed: bool, detail: Value) -> Section {
    Section {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn tier_name(v: Verdict) -> Value {
    serde_json::to_value(v).expect("verdict serializes")
}

pub fn catalog_section(cfg: &ProbeConfig) -> Result<Section, Error> {
    let mut entries = Vec::new();
    let mut ok = true;
    for id in catalog::ids() {
        let r = verify_entry(id, cfg)?;
        ok &= r.passed;
        let gens: Vec<Value> = r
            .generators
            .iter()
            .map(|g| json!({"name": g.name, "passed": g.passed, "tier": tier_name(g.symbolic.tier)}))
            .collect();
        entries.push(json!({"id": id, "passed": r.passed, "flat": r.is_flat, "generators": gens}));
    }
    let a2 = verify_a2_equivalences(cfg)?;
    ok &= a2.passed;
    Ok(section(
        "catalog",
        ok,
        json!({"entries": entries, "appendix_equivalences": a2.passed}),
    ))
}

pub fn algebra_section(cfg: &ProbeConfig) -> Result<Section, Error> {
    let mut rels = Vec::new();
    let mut ok = true;
    for id in catalog::ids() {
        for r in verify_algebra(id, cfg)?.relations {
            ok &= r.holds && r.tier == Verdict::ProvenZero;
            rels.push(json!({"id": id, "relation": r.relation, "holds": r.holds, "tier": tier_name(r.tier)}));
        }
    }
    let cas = casimir_check(cfg)?;
    ok &= cas.passed && cas.normalized.tier == Verdict::ProvenZero;
    Ok(section(
        "algebra",
        ok,
        json!({
            "relations": rels,
            "casimir": {
                "identity": cas.normalized.identity,
                "holds": cas.normalized.holds,
                "tier": tier_name(cas.normalized.tier),
                "printed_normalization_holds": cas.as_printed.holds,
                "spectrum_matches": cas.spectrum_matches,
            }
        }),
    ))
}

pub fn flatness_section(cfg: &ProbeConfig) -> Result<Section, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut positives = Vec::new();
    let mut ok = true;
    for fam in [Family::Constant, Family::ExponentialX1, Family::PowerOfR, Family::GaussianProduct] {
        for _ in 0..5 {
            let f = flat_family_member(fam, &mut rng);
            let v = constant_mass_test(&f, cfg)?;
            ok &= v.is_flat && v.family == Some(fam);
            positives.push(json!({"mass": f.to_string(), "flat": v.is_flat, "family": v.family}));
        }
    }
    let mut negatives = Vec::new();
    for id in catalog::ids() {
        let entry = CatalogEntry::get(id)?;
        if entry.spec.flat {
            continue;
        }
        let f = entry.instantiate(&entry.hamiltonian.f);
        let v = constant_mass_test(&f, cfg)?;
        ok &= !v.is_flat;
        negatives.push(json!({"id": id, "mass": f.to_string(), "flat": v.is_flat}));
    }
    let corpus = flatness_corpus(cfg.seed, 100);
    let mut agree = 0;
    let mut expected = 0;
    for (f, flat) in &corpus {
        if let Ok(v) = constant_mass_test(f, cfg) {
            agree += usize::from(v.log_form.accepts() == v.cleared_form.accepts());
            expected += usize::from(v.is_flat == *flat);
        }
    }
    ok &= agree == corpus.len() && expected == corpus.len();
    Ok(section(
        "flatness",
        ok,
        json!({"positives": positives, "negatives": negatives,
               "corpus": {"size": corpus.len(), "forms_agree": agree, "matches_expected": expected}}),
    ))
}

pub fn closed_spectrum_section(cfg: &ProbeConfig) -> Result<Section, Error> {
    let mut cases = Vec::new();
    let mut ok = true;
    for (n, k) in [(1, 0), (3, 0), (3, 1), (3, 2)] {
        let r = radial_residual(n, k, cfg)?;
        ok &= r.test.verdict == Verdict::ProvenZero && r.max_numeric < 1e-9;
        cases.push(json!({"n": n, "k": k, "energy": r.energy, "tier": tier_name(r.test.verdict),
                          "max_numeric": r.max_numeric}));
    }
    Ok(section("closed_spectrum", ok, json!({ "cases": cases })))
}

pub fn numeric_spectrum_section() -> Result<Section, Error> {
    let s = solve_radial_numeric(&RadialProblem::default())?;
    let order = s.convergence_order.unwrap_or(f64::NAN);
    let mut ok = (1.7..=2.3).contains(&order);
    for e in &s.eigenvalues {
        let exact = e.matched_n.map(|m| (m * m + 3) as f64);
        ok &= exact.is_some_and(|x| (e.value - x).abs() <= e.error_estimate) && e.relative_deviation.is_some_and(|d| d <= 1e-3);
    }
    let sweep = rmax_sweep(0, &[10.0, 20.0, 40.0], 0.005, 3)?;
    Ok(section(
        "numeric_spectrum",
        ok,
        json!({"result": s, "rmax_sweep": sweep}),
    ))
}

pub fn finite_transform_section(cfg: &ProbeConfig) -> Result<Section, Error> {
    let r = verify_finite_transform(cfg)?;
    Ok(section("finite_transform", r.passed, serde_json::to_value(&r).expect("serializes")))
}

pub fn reduction_identity_section() -> Section {
    let s = GeneralSystem::new(2);
    let parts: Vec<bool> = (1..=2).map(|a| s.reduction_identity(a).is_zero_literal()).collect();
    section(
        "reduction_identity",
        parts.iter().all(|&b| b),
        json!({"dimension": 2, "components_proven_zero": parts}),
    )
}

pub fn round_trip_section(cfg: &ProbeConfig) -> Result<Section, Error> {
    let div = Hamiltonian::divergence(parse("(r^2 + 1)^2")?, parse("-4*r^2")?);
    let roos = div.convert(&Representation::roos(rat(-1, 2), rat(0, 1), rat(-1, 2))?)?;
    let sqrt = roos.convert(&Representation::Sqrt)?;
    let rt = roos.round_trip(cfg)?;
    let constant = sqrt.potential.to_string() == "4";
    Ok(section(
        "round_trip",
        constant && rt.passed,
        json!({"roos_potential": roos.potential.to_string(), "sqrt_potential": sqrt.potential.to_string(),
               "round_trip": rt}),
    ))
}

pub fn run_suite(cfg: &ProbeConfig) -> Result<Manifest, Error> {
    let sections = vec![
        catalog_section(cfg)?,
        algebra_section(cfg)?,
        flatness_section(cfg)?,
        closed_spectrum_section(cfg)?,
        numeric_spectrum_section()?,
        finite_transform_section(cfg)?,
        reduction_identity_section(),
        round_trip_section(cfg)?,
    ];
    Ok(Manifest {
        version: MANIFEST_VERSION,
        seed: cfg.seed,
        tol: cfg.tol,
        passed: sections.iter().all(|s| s.passed),
        sections,
    })
}
