//! Acceptance run: one PASS/FAIL line per criterion, exit status non-zero on
//! any failure. Built without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pdm_core::catalog::{ids, verify_algebra, verify_entry, verify_finite_transform, CatalogEntry};
use pdm_core::equivalence::{constant_mass_test, flat_family_member, flatness_corpus, Family};
use pdm_core::expr::{parse, rat, Expr, ProbeConfig, Verdict};
use pdm_core::ops::determining::GeneralSystem;
use pdm_core::ops::{Hamiltonian, Representation};
use pdm_core::spectral::{casimir_check, closed_form_energy, radial_residual, solve_radial_numeric, RadialProblem};
use pdm_core::suite::run_suite;

const SEED: u64 = 0x5eed_2d5e;
const PROBE_POINTS: usize = 200;
const PROBE_TOL: f64 = 1e-9;
const RADIAL_NUMERIC_TOL: f64 = 1e-9;
const SPECTRUM_REL_DEV: f64 = 1e-3;
const ORDER_RANGE: (f64, f64) = (1.7, 2.3);
const FAMILY_SAMPLES: usize = 5;
const CORPUS_SIZE: usize = 100;
const CATALOG_BUDGET: Duration = Duration::from_secs(60);
const ALGEBRA_BUDGET: Duration = Duration::from_secs(30);
const SPECTRUM_BUDGET: Duration = Duration::from_secs(120);

fn cfg() -> ProbeConfig {
    ProbeConfig {
        seed: SEED,
        points: PROBE_POINTS,
        tol: PROBE_TOL,
        ..ProbeConfig::default()
    }
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t <= budget, format!("took {t:.1?}, budget {budget:?}"))?;
    Ok(format!("{t:.1?}"))
}

fn catalog() -> Check {
    let start = Instant::now();
    let mut gens = 0;
    for id in ids() {
        let r = verify_entry(id, &cfg()).map_err(|e| e.to_string())?;
        for g in &r.generators {
            gens += 1;
            ensure(g.passed, format!("{id} {} is not a symmetry", g.name))?;
            ensure(g.symbolic.tier != Verdict::ProvenNonzero, format!("{id} {}", g.name))?;
        }
    }
    let t = within(start, CATALOG_BUDGET)?;
    Ok(format!("{} entries, {gens} generators, {t}", ids().len()))
}

fn algebra() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for id in ids() {
        for r in verify_algebra(id, &cfg()).map_err(|e| e.to_string())?.relations {
            n += 1;
            ensure(r.holds && r.tier == Verdict::ProvenZero, format!("{id}: {} ({:?})", r.relation, r.tier))?;
        }
    }
    let c = casimir_check(&cfg()).map_err(|e| e.to_string())?;
    ensure(c.normalized.tier == Verdict::ProvenZero, format!("casimir: {:?}", c.normalized.tier))?;
    ensure(c.spectrum_matches, "casimir eigenvalues do not reproduce the spectrum")?;
    let t = within(start, ALGEBRA_BUDGET)?;
    Ok(format!("{n} relations and casimir proven zero, {t}"))
}

fn flatness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for fam in [Family::Constant, Family::ExponentialX1, Family::PowerOfR, Family::GaussianProduct] {
        for _ in 0..FAMILY_SAMPLES {
            let f = flat_family_member(fam, &mut rng);
            let v = constant_mass_test(&f, &cfg()).map_err(|e| format!("{f}: {e}"))?;
            ensure(v.is_flat, format!("{f} judged curved"))?;
        }
    }
    let mut negatives = 0;
    for id in ids() {
        let entry = CatalogEntry::get(id).map_err(|e| e.to_string())?;
        if entry.spec.flat {
            continue;
        }
        let f = entry.instantiate(&entry.hamiltonian.f);
        let v = constant_mass_test(&f, &cfg()).map_err(|e| format!("{id}: {e}"))?;
        ensure(!v.is_flat, format!("{id} mass {f} judged flat"))?;
        negatives += 1;
    }
    for (f, flat) in flatness_corpus(SEED, CORPUS_SIZE) {
        let v = constant_mass_test(&f, &cfg()).map_err(|e| format!("{f}: {e}"))?;
        ensure(v.log_form.accepts() == v.cleared_form.accepts(), format!("forms disagree on {f}"))?;
        ensure(v.is_flat == flat, format!("{f}: expected flat = {flat}"))?;
    }
    Ok(format!(
        "{} family members flat, {negatives} catalog masses curved, {CORPUS_SIZE} corpus cases agree",
        4 * FAMILY_SAMPLES
    ))
}

fn closed_spectrum() -> Check {
    for (n, k) in [(1, 0), (3, 0), (3, 1), (3, 2)] {
        let r = radial_residual(n, k, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.test.verdict == Verdict::ProvenZero, format!("({n},{k}): {:?}", r.test.verdict))?;
        ensure(r.max_numeric < RADIAL_NUMERIC_TOL, format!("({n},{k}): numeric {}", r.max_numeric))?;
    }
    ensure(closed_form_energy(1) == 4.0 && closed_form_energy(3) == 12.0, "energies")?;
    Ok("(1,0) (3,0) (3,1) (3,2) proven zero at E = 4, 12".into())
}

fn numeric_spectrum() -> Check {
    let start = Instant::now();
    let s = solve_radial_numeric(&RadialProblem {
        k: 0,
        r_max: 20.0,
        grid_points: 4000,
        ..RadialProblem::default()
    })
    .map_err(|e| e.to_string())?;
    let targets = [4.0, 7.0, 12.0, 19.0];
    let mut matched = Vec::new();
    for e in s.eigenvalues.iter().filter(|e| e.value < 20.0) {
        let exact = targets
            .iter()
            .copied()
            .min_by(|a, b| (a - e.value).abs().total_cmp(&(b - e.value).abs()))
            .unwrap();
        ensure((e.value - exact).abs() <= e.error_estimate, format!("{} vs {exact} beyond ±{:.1e}", e.value, e.error_estimate))?;
        ensure((e.value - exact).abs() / exact <= SPECTRUM_REL_DEV, format!("{} vs {exact}", e.value))?;
        matched.push(format!("{:.6}", e.value));
    }
    ensure(!matched.is_empty(), "no eigenvalue below 20")?;
    let order = s.convergence_order.unwrap_or(f64::NAN);
    ensure((ORDER_RANGE.0..=ORDER_RANGE.1).contains(&order), format!("order {order}"))?;
    let t = within(start, SPECTRUM_BUDGET)?;
    Ok(format!("levels [{}], order {order:.3}, {t}", matched.join(", ")))
}

fn finite_transform() -> Check {
    let r = verify_finite_transform(&cfg()).map_err(|e| e.to_string())?;
    let get = |label: &str| r.cases.iter().find(|c| c.label == label).ok_or(format!("missing case {label}"));
    let sym = get("symbolic angle")?;
    ensure(sym.test.verdict == Verdict::ProvenZero, format!("symbolic angle: {:?}", sym.test.verdict))?;
    let neg = get("perturbed phase")?;
    ensure(neg.test.verdict == Verdict::ProvenNonzero, format!("perturbed phase: {:?}", neg.test.verdict))?;
    Ok("symbolic angle proven zero, perturbed phase proven nonzero".into())
}

fn reduction_identity() -> Check {
    let s = GeneralSystem::new(2);
    for a in 1..=2 {
        let r = s.reduction_identity(a);
        ensure(r.is_zero_literal(), format!("component {a}: {r}"))?;
    }
    Ok("both components simplify to 0 in two dimensions".into())
}

fn round_trip() -> Check {
    let run = || -> Result<String, pdm_core::Error> {
        let div = Hamiltonian::divergence(parse("(r^2 + 1)^2")?, parse("-4*r^2")?);
        let roos = div.convert(&Representation::roos(rat(-1, 2), rat(0, 1), rat(-1, 2))?)?;
        let sqrt = roos.convert(&Representation::Sqrt)?;
        if sqrt.potential != Expr::int(4) {
            return Ok(format!("FAIL sqrt potential {}", sqrt.potential));
        }
        let rt = roos.round_trip(&cfg())?;
        Ok(if rt.passed { "sqrt potential = 4, round trip exact".into() } else { format!("FAIL {rt:?}") })
    };
    let msg = run().map_err(|e| e.to_string())?;
    match msg.strip_prefix("FAIL ") {
        Some(m) => Err(m.to_string()),
        None => Ok(msg),
    }
}

fn determinism() -> Check {
    let a = run_suite(&cfg()).map_err(|e| e.to_string())?.to_json();
    let b = run_suite(&cfg()).map_err(|e| e.to_string())?.to_json();
    ensure(a == b, "manifests differ")?;
    Ok(format!("two manifests of {} bytes identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("catalog generators", catalog),
        ("algebra relations", algebra),
        ("flatness test", flatness),
        ("closed-form spectrum", closed_spectrum),
        ("numeric spectrum", numeric_spectrum),
        ("finite transformation", finite_transform),
        ("reduction identity", reduction_identity),
        ("representation round trip", round_trip),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
