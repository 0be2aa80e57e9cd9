//! Equivalence of a position-dependent mass problem to a constant-mass one.
//!
//! A positive `f` can be made constant by a conformal change of variables
//! exactly when `log f` is harmonic. The same condition, cleared of
//! denominators, reads `fΔf = |∇f|²`; both forms are evaluated and must agree.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr::{
    diff, eval, is_zero, probe_points, rat, simplify, CExpr, Expr, ProbeConfig, RandomFunctions,
    Rational, ZeroTest, X1, X2,
};
use crate::ops::conformal::ConformalMap;
use crate::ops::rectify::{cexp, clog_z, z, zpow};
use crate::Error;

/// Recognised closed-form families of flat mass functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Constant,
    ExponentialX1,
    PowerOfR,
    GaussianProduct,
    /// Flat, but outside the families with a built-in flattening map.
    OtherAnalytic,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessVerdict {
    pub is_flat: bool,
    pub laplacian_log_f: String,
    pub log_form: ZeroTest,
    pub cleared_form: ZeroTest,
    pub family: Option<Family>,
    /// `ũ + iṽ` (or its complex derivative when `map_is_derivative`).
    pub map_re: Option<String>,
    pub map_im: Option<String>,
    pub map_is_derivative: bool,
    /// `|∇ũ|² − f` vanishes for the reported map.
    pub map_verified: Option<bool>,
    #[serde(skip)]
    pub map: Option<ConformalMap>,
}

fn laplacian(e: &Expr) -> Expr {
    diff(&diff(e, X1), X1) + diff(&diff(e, X2), X2)
}

fn vanishes(e: &Expr, cfg: &ProbeConfig) -> bool {
    is_zero(e, cfg).accepts()
}

/// Value of `e` if it does not depend on position, symbolically or by probing.
fn constant_value(e: &Expr, cfg: &ProbeConfig) -> Option<Expr> {
    let s = simplify(e);
    if s.is_constant_in_space_time() {
        return Some(s);
    }
    if vanishes(&diff(&s, X1), cfg) && vanishes(&diff(&s, X2), cfg) {
        let at = s.subs1(X1, &Expr::one()).subs1(X2, &Expr::zero());
        return Some(simplify(&at));
    }
    None
}

fn check_positive(f: &Expr, cfg: &ProbeConfig) -> Result<(), Error> {
    if f.depends_on("t") {
        return Err(Error::Invalid("mass function must not depend on time".into()));
    }
    let names: Vec<String> = f.free_symbols().into_iter().collect();
    let funcs = RandomFunctions::new(cfg.seed);
    for b in probe_points(&names, cfg) {
        if let Ok(v) = eval(f, &b, &funcs) {
            if v <= 0.0 {
                return Err(Error::Invalid(format!("mass function is not positive (value {v})")));
            }
        }
    }
    Ok(())
}

fn exponential_x1(f: &Expr, cfg: &ProbeConfig) -> Option<ConformalMap> {
    if !vanishes(&diff(f, X2), cfg) {
        return None;
    }
    let b = constant_value(&(diff(f, X1) / f), cfg)?;
    if b.as_num().is_some_and(|q| q.is_zero()) {
        return None;
    }
    let a = constant_value(&(f * Expr::exp(&-(&b * Expr::x1()))), cfg)?;
    // f = a e^{b x1} = |U|² with U = √a e^{bz/2}; the map is the primitive of U
    let half_b = &b * Expr::frac(1, 2);
    let p = cexp(&z().scale(&half_b)).scale(&(Expr::int(2) * a.sqrt() / &b));
    let p = p.simplify();
    Some(ConformalMap::Explicit { u: p.re, v: p.im })
}

fn power_of_r(f: &Expr, cfg: &ProbeConfig) -> Option<ConformalMap> {
    let (f1, f2) = (diff(f, X1), diff(f, X2));
    if !vanishes(&(Expr::x1() * &f2 - Expr::x2() * &f1), cfg) {
        return None;
    }
    let alpha = constant_value(&((Expr::x1() * &f1 + Expr::x2() * &f2) / f), cfg)?;
    let alpha: Rational = alpha.as_num()?.clone();
    if alpha.is_zero() {
        return None;
    }
    let c = constant_value(&(f / Expr::r().pow(alpha.clone())), cfg)?;
    let p = &alpha / Rational::from_integer(2.into()) + Rational::from_integer(1.into());
    let prim = if p.is_zero() {
        clog_z().scale(&c.sqrt())
    } else {
        zpow(&p).scale(&(c.sqrt() / Expr::num(p.clone())))
    };
    let prim = prim.simplify();
    Some(ConformalMap::Explicit { u: prim.re, v: prim.im })
}

fn gaussian_product(f: &Expr, cfg: &ProbeConfig) -> Option<ConformalMap> {
    let a1 = simplify(&(diff(f, X1) / f));
    let a2 = simplify(&(diff(f, X2) / f));
    let linear = vanishes(&diff(&a1, X2), cfg)
        && vanishes(&diff(&diff(&a1, X1), X1), cfg)
        && vanishes(&diff(&a2, X1), cfg)
        && vanishes(&diff(&diff(&a2, X2), X2), cfg);
    if !linear {
        return None;
    }
    let nu = constant_value(&(diff(&a1, X1) * Expr::frac(1, 2)), cfg)?;
    let mu = constant_value(&(&a1 - Expr::int(2) * &nu * Expr::x1()), cfg)?;
    let lam = constant_value(&(&a2 + Expr::int(2) * &nu * Expr::x2()), cfg)?;
    let quad = &nu * (Expr::x1().powi(2) - Expr::x2().powi(2)) + &mu * Expr::x1() + &lam * Expr::x2();
    let c = constant_value(&(f * Expr::exp(&-quad)), cfg)?;
    // U = √C exp((ν z² + (μ − iλ) z) / 2), with |U|² = f
    let zz = &z() * &z();
    let lin = &CExpr::new(mu, -&lam) * &z();
    let expo = (zz.scale(&nu) + lin).scale(&Expr::frac(1, 2));
    let u = cexp(&expo).scale(&c.sqrt()).simplify();
    Some(ConformalMap::Derivative { re: u.re, im: u.im })
}

/// `|∇ũ|²` of a flattening map.
fn map_density(map: &ConformalMap) -> Expr {
    match map {
        ConformalMap::Explicit { u, .. } => diff(u, X1).powi(2) + diff(u, X2).powi(2),
        ConformalMap::Derivative { re, im } => re.powi(2) + im.powi(2),
    }
}

fn recognise(f: &Expr, cfg: &ProbeConfig) -> (Family, Option<ConformalMap>) {
    if let Some(c) = constant_value(f, cfg) {
        let s = c.sqrt();
        let map = ConformalMap::Explicit {
            u: simplify(&(&s * Expr::x1())),
            v: simplify(&(&s * Expr::x2())),
        };
        return (Family::Constant, Some(map));
    }
    if let Some(m) = exponential_x1(f, cfg) {
        return (Family::ExponentialX1, Some(m));
    }
    if let Some(m) = power_of_r(f, cfg) {
        return (Family::PowerOfR, Some(m));
    }
    if let Some(m) = gaussian_product(f, cfg) {
        return (Family::GaussianProduct, Some(m));
    }
    (Family::OtherAnalytic, None)
}

/// Decides whether the mass function `f` is conformally flat, and for the
/// recognised families builds a map to constant mass.
pub fn constant_mass_test(f: &Expr, cfg: &ProbeConfig) -> Result<FlatnessVerdict, Error> {
    check_positive(f, cfg)?;
    let lap_log = simplify(&laplacian(&Expr::log(f)));
    let grad2 = diff(f, X1).powi(2) + diff(f, X2).powi(2);
    let log_form = is_zero(&lap_log, cfg);
    let cleared_form = is_zero(&(f * laplacian(f) - grad2), cfg);
    if log_form.accepts() != cleared_form.accepts() {
        return Err(Error::Inconsistent(format!(
            "flatness tests disagree for f = {f}: log form {:?}, cleared form {:?}",
            log_form.verdict, cleared_form.verdict
        )));
    }
    let is_flat = log_form.accepts();
    let mut out = FlatnessVerdict {
        is_flat,
        laplacian_log_f: lap_log.to_string(),
        log_form,
        cleared_form,
        family: None,
        map_re: None,
        map_im: None,
        map_is_derivative: false,
        map_verified: None,
        map: None,
    };
    if !is_flat {
        return Ok(out);
    }
    let (family, map) = recognise(f, cfg);
    out.family = Some(family);
    if let Some(map) = map {
        let (re, im, deriv) = match &map {
            ConformalMap::Explicit { u, v } => (u, v, false),
            ConformalMap::Derivative { re, im } => (re, im, true),
        };
        out.map_re = Some(re.to_string());
        out.map_im = Some(im.to_string());
        out.map_is_derivative = deriv;
        out.map_verified = Some(vanishes(&(map_density(&map) - f), cfg));
        out.map = Some(map);
    }
    Ok(out)
}

/// Family of a flat `f`, or `None` when `f` is not flat.
pub fn classify_family(f: &Expr, cfg: &ProbeConfig) -> Result<Option<Family>, Error> {
    Ok(constant_mass_test(f, cfg)?.family)
}

/// Map to constant mass for the recognised families.
pub fn flattening_map(f: &Expr, cfg: &ProbeConfig) -> Result<Option<ConformalMap>, Error> {
    Ok(constant_mass_test(f, cfg)?.map)
}

/// Seeded rational in `±[1/4, 5]`, never zero.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=4))
}

/// Member of a flat family with seeded rational parameters.
pub fn flat_family_member(family: Family, rng: &mut ChaCha8Rng) -> Expr {
    let q = |rng: &mut ChaCha8Rng| Expr::num(small_rational(rng));
    match family {
        Family::Constant => Expr::num(small_rational(rng).abs()),
        Family::ExponentialX1 => Expr::exp(&(q(rng) * Expr::x1())),
        Family::PowerOfR => Expr::r().pow(small_rational(rng)),
        Family::GaussianProduct => {
            let (nu, mu, la) = (q(rng), q(rng), q(rng));
            Expr::exp(&(&nu * Expr::x1().powi(2) + mu * Expr::x1()))
                * Expr::exp(&(-nu * Expr::x2().powi(2) + la * Expr::x2()))
        }
        Family::OtherAnalytic => Expr::exp(&(q(rng) * Expr::x1() * Expr::x2())),
    }
}

/// Positive mass function that is not flat.
fn curved_member(rng: &mut ChaCha8Rng) -> Expr {
    let a = Expr::num(small_rational(rng).abs());
    let b = Expr::num(small_rational(rng).abs());
    match rng.gen_range(0..4) {
        0 => Expr::one() + a * Expr::x1().powi(2) + b * Expr::x2().powi(2),
        1 => (Expr::r().powi(2) + a).powi(2),
        2 => a + Expr::exp(&(b * Expr::x1().powi(2))),
        _ => Expr::int(2) + Expr::sin(&(a * Expr::x1())) * Expr::cos(&(b * Expr::x2())),
    }
}

/// Generated cases with the expected flatness, alternating flat and curved.
pub fn flatness_corpus(seed: u64, count: usize) -> Vec<(Expr, bool)> {
    const FAMILIES: [Family; 5] = [
        Family::Constant,
        Family::ExponentialX1,
        Family::PowerOfR,
        Family::GaussianProduct,
        Family::OtherAnalytic,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                (flat_family_member(FAMILIES[(i / 2) % FAMILIES.len()], &mut rng), true)
            } else {
                (curved_member(&mut rng), false)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::ops::conformal::conformal_transform;
    use crate::ops::hamiltonian::Hamiltonian;

    fn verdict(src: &str) -> FlatnessVerdict {
        constant_mass_test(&parse(src).unwrap(), &ProbeConfig::default()).unwrap()
    }

    #[test]
    fn families() {
        let cases = [
            ("1", Some(Family::Constant)),
            ("7/3", Some(Family::Constant)),
            ("exp(3/2*x1)", Some(Family::ExponentialX1)),
            ("5*exp(-2*x1)", Some(Family::ExponentialX1)),
            ("r^3", Some(Family::PowerOfR)),
            ("2*r^(-2)", Some(Family::PowerOfR)),
            ("exp(x1^2)*exp(-x2^2)", Some(Family::GaussianProduct)),
            ("(r^2+1)^2", None),
            ("exp(x1^2)*exp(x2^2)", None),
        ];
        for (src, fam) in cases {
            let v = verdict(src);
            assert_eq!(v.family, fam, "{src}");
            assert_eq!(v.is_flat, fam.is_some(), "{src}");
            if fam.is_some() {
                assert_eq!(v.map_verified, Some(true), "{src}: {:?} {:?}", v.map_re, v.map_im);
            }
        }
    }

    #[test]
    fn non_flat_gaussian_reports_laplacian() {
        let v = verdict("exp(x1^2)*exp(x2^2)");
        assert_eq!(v.laplacian_log_f, "4");
    }

    #[test]
    fn square_of_r_maps_to_half_z_squared() {
        let v = verdict("r^2");
        assert_eq!(v.map_re.as_deref(), Some("1/2*x1^2 - 1/2*x2^2"));
    }

    #[test]
    fn harmonic_non_family_is_other() {
        let v = verdict("exp(x1*x2)");
        assert!(v.is_flat);
        assert_eq!(v.family, Some(Family::OtherAnalytic));
    }

    #[test]
    fn negative_mass_rejected() {
        let r = constant_mass_test(&parse("-1").unwrap(), &ProbeConfig::default());
        assert!(matches!(r, Err(Error::Invalid(_))));
    }

    #[test]
    fn map_carries_constant_mass_to_f() {
        let cfg = ProbeConfig::default();
        for src in ["exp(x1)", "r^3", "r^(-2)", "exp(x1^2)*exp(-x2^2)"] {
            let f = parse(src).unwrap();
            let map = flattening_map(&f, &cfg).unwrap().unwrap();
            let h = Hamiltonian::divergence(Expr::one(), Expr::zero());
            let h2 = conformal_transform(&h, &map, &cfg).unwrap();
            assert!(vanishes(&(&h2.f - &f), &cfg), "{src}: {}", h2.f);
        }
    }

    #[test]
    fn exponential_map_is_exp_z() {
        let v = verdict("exp(2*x1)");
        assert_eq!(v.map_re.as_deref(), Some("exp(x1)*cos(x2)"));
        assert_eq!(v.map_im.as_deref(), Some("exp(x1)*sin(x2)"));
    }

    #[test]
    fn generated_corpus_forms_agree() {
        let cfg = ProbeConfig::default();
        for (f, flat) in flatness_corpus(17, 100) {
            let v = constant_mass_test(&f, &cfg).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert_eq!(v.is_flat, flat, "{f}");
            assert_eq!(v.log_form.accepts(), v.cleared_form.accepts(), "{f}");
        }
    }
}
