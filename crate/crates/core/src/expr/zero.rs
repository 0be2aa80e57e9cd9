use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::canon::{canonical_terms, numerator_is_zero};
use super::eval::{eval, Bindings, RandomFunctions};
use super::{Expr, T, X1, X2};

/// Which tier decided a zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ProvenZero,
    ProvenNonzero,
    #[serde(rename = "undecided-numeric-zero")]
    NumericZero,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub seed: u64,
    pub points: usize,
    pub tol: f64,
    /// Resampling attempts per point before it is skipped.
    pub retries: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seed: 0x5eed_2d5e,
            points: 200,
            tol: 1e-9,
            retries: 25,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroTest {
    pub verdict: Verdict,
    pub points_used: usize,
    /// Indices of probe points where every resample hit a singularity.
    pub skipped: Vec<usize>,
    pub max_residual: f64,
    pub witness: Option<Vec<(String, f64)>>,
}

impl ZeroTest {
    /// Zero by either tier, with at least one evaluated point for the numeric tier.
    pub fn accepts(&self) -> bool {
        match self.verdict {
            Verdict::ProvenZero => true,
            Verdict::NumericZero => self.points_used > 0,
            Verdict::ProvenNonzero => false,
        }
    }

    fn symbolic(v: Verdict) -> ZeroTest {
        ZeroTest {
            verdict: v,
            points_used: 0,
            skipped: vec![],
            max_residual: 0.0,
            witness: None,
        }
    }
}

/// Sampling range per symbol. `x1` stays positive so that fractional powers
/// and logarithms of it are real; the radial coordinate stays off the origin.
fn range(name: &str) -> (f64, f64) {
    match name {
        X1 => (0.15, 2.0),
        X2 | T => (-2.0, 2.0),
        "r" => (0.1, 3.0),
        _ => (0.25, 1.75),
    }
}

fn sample(names: &[String], rng: &mut ChaCha8Rng) -> Option<Bindings> {
    let mut b = Bindings::new();
    for n in names {
        let (lo, hi) = range(n);
        b.insert(n.clone(), rng.gen_range(lo..hi));
    }
    let x1 = b.get(X1).copied().unwrap_or(1.0);
    let x2 = b.get(X2).copied().unwrap_or(0.0);
    if (x1 * x1 + x2 * x2).sqrt() < 0.1 || x1.abs() < 0.1 {
        return None;
    }
    Some(b)
}

/// Seeded probe points for the given symbols, skipping excluded samples.
pub fn probe_points(names: &[String], cfg: &ProbeConfig) -> Vec<Bindings> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
    let mut out = Vec::with_capacity(cfg.points);
    let mut tries = 0;
    while out.len() < cfg.points && tries < cfg.points * cfg.retries.max(1) {
        tries += 1;
        if let Some(b) = sample(names, &mut rng) {
            out.push(b);
        }
    }
    out
}

/// Symbolic-first zero test with a seeded numeric fallback.
pub fn is_zero(e: &Expr, cfg: &ProbeConfig) -> ZeroTest {
    if numerator_is_zero(e) {
        return ZeroTest::symbolic(Verdict::ProvenZero);
    }
    let terms = canonical_terms(e);
    if terms.is_empty() {
        return ZeroTest::symbolic(Verdict::ProvenZero);
    }
    if terms.len() == 1 && terms[0].as_num().is_some() {
        return ZeroTest::symbolic(Verdict::ProvenNonzero);
    }
    let names: Vec<String> = {
        let mut s = std::collections::BTreeSet::new();
        for t in &terms {
            s.extend(t.free_symbols());
        }
        s.into_iter().collect()
    };
    let funcs = RandomFunctions::new(cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = ZeroTest::symbolic(Verdict::NumericZero);
    'points: for idx in 0..cfg.points {
        for _ in 0..cfg.retries.max(1) {
            let Some(b) = sample(&names, &mut rng) else {
                continue;
            };
            let mut total = 0.0;
            let mut scale = 1.0;
            let mut ok = true;
            for t in &terms {
                match eval(t, &b, &funcs) {
                    Ok(v) => {
                        total += v;
                        scale += v.abs();
                    }
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            out.points_used += 1;
            let rel = total.abs() / scale;
            if rel > out.max_residual {
                out.max_residual = rel;
            }
            if total.abs() > cfg.tol * scale {
                out.verdict = Verdict::ProvenNonzero;
                let mut w: Vec<(String, f64)> = b.into_iter().collect();
                w.sort_by(|a, b| a.0.cmp(&b.0));
                out.witness = Some(w);
                return out;
            }
            continue 'points;
        }
        out.skipped.push(idx);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_with, Declarations};

    #[test]
    fn trivial_cases() {
        let cfg = ProbeConfig::default();
        assert_eq!(is_zero(&Expr::zero(), &cfg).verdict, Verdict::ProvenZero);
        assert_eq!(is_zero(&Expr::x1(), &cfg).verdict, Verdict::ProvenNonzero);
        assert_eq!(is_zero(&Expr::int(3), &cfg).verdict, Verdict::ProvenNonzero);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let cfg = ProbeConfig::default();
        let e = parse("x1*x2 - t").unwrap();
        let a = is_zero(&e, &cfg);
        let b = is_zero(&e, &cfg);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn uninterpreted_mismatch_is_detected() {
        let d = Declarations::default().function("f", 1);
        let e = parse_with("f(r) - f(x1)", &d).unwrap();
        assert_eq!(is_zero(&e, &ProbeConfig::default()).verdict, Verdict::ProvenNonzero);
    }

    #[test]
    fn numeric_tier_catches_identities_outside_rewrite_set() {
        // double-angle identity is not in the rewrite set
        let e = parse("sin(2*x1) - 2*sin(x1)*cos(x1)").unwrap();
        let z = is_zero(&e, &ProbeConfig::default());
        assert_eq!(z.verdict, Verdict::NumericZero);
        assert_eq!(z.points_used, 200);
        assert!(z.accepts());
    }
}
