//! Finite-volume eigensolver for the radial equation in self-adjoint form
//! `−(r f φ')' + (f k²/r + r V) φ = E r φ`, `f = (1+r²)²`, `V = −4r²`.
//!
//! Cells are centred at `r_i = (i + ½)h`. The flux vanishes at the origin.
//! At `r_max` the flux is fixed by the series of the solution that is
//! regular at infinity, `r^{−2−k}(1 + c₁/r² + …)`, so truncation does not pin
//! the solution to zero. The condition depends on `E` and is iterated to a fixed point.
//! Symmetrizing with the weight `h r_i` gives a symmetric tridiagonal
//! matrix, solved by Sturm bisection and inverse iteration.

use serde::Serialize;

use crate::Error;

#[derive(Clone, Debug, Serialize)]
pub struct RadialProblem {
    /// Angular channel; negative values give the same spectrum as `|k|`.
    pub k: i64,
    pub r_max: f64,
    pub grid_points: usize,
    /// Number of lowest eigenvalues requested.
    pub count: usize,
    /// Constant added to the potential.
    pub potential_shift: f64,
    /// Relative error estimate above which a level is flagged as under-resolved.
    pub error_threshold: f64,
}

impl Default for RadialProblem {
    fn default() -> Self {
        RadialProblem {
            k: 0,
            r_max: 20.0,
            grid_points: 4000,
            count: 4,
            potential_shift: 0.0,
            error_threshold: 1e-3,
        }
    }
}

fn inverse_mass(r: f64) -> f64 {
    (1.0 + r * r).powi(2)
}

const TAIL_TERMS: usize = 16;

/// Coefficients of the solution regular at infinity,
/// `φ = Σ a_m r^{s−2m}` with `s = −2 − k` and `a_0 = 1`. Converges for `r > 1`.
fn tail_series(k: f64, energy: f64) -> Vec<f64> {
    let s = -2.0 - k;
    let mut a = vec![1.0];
    for m in 1..TAIL_TERMS {
        let q = s - 2.0 * m as f64 + 2.0;
        let prev = a[m - 1] * (2.0 * k * k - 2.0 * q * (q + 2.0) - energy);
        let prev2 = if m >= 2 { a[m - 2] * (k * k - (q + 2.0).powi(2)) } else { 0.0 };
        a.push((prev + prev2) / (q * q - k * k));
    }
    a
}

/// Regular solution at `r` and its logarithmic derivative.
fn regular_tail(r: f64, k: f64, energy: f64) -> (f64, f64) {
    let s = -2.0 - k;
    let (mut v, mut dv) = (0.0, 0.0);
    for (m, am) in tail_series(k, energy).iter().enumerate() {
        let p = s - 2.0 * m as f64;
        v += am * r.powf(p);
        dv += am * p * r.powf(p - 1.0);
    }
    (v, dv / v)
}

/// `∫_R^∞ A_a A_b r dr` for two regular tails, divided by their values at
/// the last cell centre `r_last`.
fn tail_overlap(r_max: f64, r_last: f64, k: f64, ea: f64, eb: f64) -> f64 {
    let (sa, sb) = (tail_series(k, ea), tail_series(k, eb));
    let s = -2.0 - k;
    let mut total = 0.0;
    for (m, am) in sa.iter().enumerate() {
        for (n, bn) in sb.iter().enumerate() {
            let p = 2.0 * s + 2.0 - 2.0 * (m + n) as f64;
            total += am * bn * r_max.powf(p) / -p;
        }
    }
    total / (regular_tail(r_last, k, ea).0 * regular_tail(r_last, k, eb).0)
}

/// Symmetric tridiagonal form of the discretized problem.
pub(crate) struct Discretization {
    pub r: Vec<f64>,
    pub h: f64,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

pub(crate) fn assemble(k: u32, r_max: f64, n: usize, shift: f64, tail_energy: f64) -> Discretization {
    let h = r_max / n as f64;
    let kf = k as f64;
    let r: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
    let w = |x: f64| x * inverse_mass(x);
    let mut a_diag = vec![0.0; n];
    let mut a_off = vec![0.0; n.saturating_sub(1)];
    for i in 0..n {
        let ri = r[i];
        let q = inverse_mass(ri) * kf * kf / ri + ri * (-4.0 * ri * ri + shift);
        let left = w(i as f64 * h) / h;
        let right = if i + 1 < n {
            w((i + 1) as f64 * h) / h
        } else {
            // outer face: φ'(R) = g φ(R), φ(R) = ρ φ_{N−1}
            let (a_out, g) = regular_tail(r_max, kf, tail_energy);
            let rho = a_out / regular_tail(ri, kf, tail_energy).0;
            -w(r_max) * g * rho
        };
        a_diag[i] = left + right + h * q;
        if i + 1 < n {
            a_off[i] = -w((i + 1) as f64 * h) / h;
        }
    }
    let wt: Vec<f64> = r.iter().map(|ri| h * ri).collect();
    let diag = (0..n).map(|i| a_diag[i] / wt[i]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a_off[i] / (wt[i] * wt[i + 1]).sqrt()).collect();
    Discretization { r, h, diag, off }
}

/// Number of eigenvalues below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(d: &Discretization) -> (f64, f64) {
    let n = d.diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let rad = if i > 0 { d.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { d.off[i].abs() } else { 0.0 };
        lo = lo.min(d.diag[i] - rad);
        hi = hi.max(d.diag[i] + rad);
    }
    (lo, hi)
}

/// The `j`-th smallest eigenvalue (from zero) by bisection.
fn eigenvalue(d: &Discretization, j: usize) -> f64 {
    let (mut a, mut b) = gershgorin(d);
    for _ in 0..300 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || b - a <= 1e-15 * mid.abs().max(1.0) {
            break;
        }
        if sturm_count(&d.diag, &d.off, mid) > j {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

/// Level `j` with the outer boundary condition iterated to its fixed point.
fn level(k: u32, r_max: f64, n: usize, shift: f64, j: usize) -> Result<(f64, Discretization), Error> {
    let mut e = shift;
    for _ in 0..50 {
        let d = assemble(k, r_max, n, shift, e - shift);
        let next = eigenvalue(&d, j);
        if (next - e).abs() <= 1e-10 * next.abs().max(1.0) {
            return Ok((next, d));
        }
        e = next;
    }
    Err(Error::Numeric(format!("boundary iteration did not settle for level {j}")))
}

fn levels(k: u32, r_max: f64, n: usize, shift: f64, count: usize) -> Result<Vec<(f64, Discretization)>, Error> {
    (0..count.min(n)).map(|j| level(k, r_max, n, shift, j)).collect()
}

/// Solve `(T − σ) y = b` for symmetric tridiagonal `T`, with row pivoting.
fn shifted_solve(diag: &[f64], off: &[f64], sigma: f64, b: &mut [f64]) {
    let n = diag.len();
    let tiny = f64::EPSILON * diag.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let mut d: Vec<f64> = diag.iter().map(|x| x - sigma).collect();
    let dl = off;
    let mut du = off.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            let tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    for x in d.iter_mut() {
        if *x == 0.0 {
            *x = tiny;
        }
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= du[i] * b[i + 1];
        }
        if i + 2 < n {
            s -= du2[i] * b[i + 2];
        }
        b[i] = s / d[i];
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// Unit eigenvector of the symmetric matrix for the eigenvalue `lambda`.
fn inverse_iteration(d: &Discretization, lambda: f64) -> Vec<f64> {
    let n = d.diag.len();
    // deterministic start with components in every mode
    let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.7).sin()).collect();
    normalize(&mut y);
    for _ in 0..4 {
        shifted_solve(&d.diag, &d.off, lambda, &mut y);
        normalize(&mut y);
    }
    // fix the sign by the largest component
    let big = y.iter().fold(0.0_f64, |m, x| if x.abs() > m.abs() { *x } else { m });
    if big < 0.0 {
        y.iter_mut().for_each(|x| *x = -*x);
    }
    y
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalue {
    pub value: f64,
    /// Two-grid discretization difference plus domain-doubling difference.
    pub error_estimate: f64,
    pub discretization_error: f64,
    pub truncation_error: f64,
    /// Richardson extrapolation from the two grids.
    pub extrapolated: f64,
    /// Level `n` of `n² + 3` covered by the error bar, if any.
    pub matched_n: Option<u32>,
    pub relative_deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridInfo {
    pub rmax: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    pub k: i64,
    pub eigenvalues: Vec<Eigenvalue>,
    pub grid: GridInfo,
    /// Observed order from grids `N/2`, `N`, `2N` for the lowest level.
    pub convergence_order: Option<f64>,
    /// Largest off-diagonal entry of the normalized Gram matrix in the `r dr`
    /// product, tails beyond `r_max` included.
    pub orthogonality_defect: f64,
    /// Indices of levels whose relative error estimate exceeds the threshold.
    pub under_resolved: Vec<usize>,
    #[serde(skip)]
    pub radii: Vec<f64>,
    /// Eigenfunctions on the cell centres, unit norm in `r dr` over `[0, ∞)`.
    #[serde(skip)]
    pub eigenvectors: Vec<Vec<f64>>,
}

fn match_level(value: f64, err: f64) -> Option<u32> {
    let n = (value - 3.0).max(0.0).sqrt().round() as u32;
    (n.saturating_sub(1)..=n + 1)
        .filter(|&m| m >= 1)
        .find(|&m| ((m * m + 3) as f64 - value).abs() <= err)
}

pub fn solve_radial_numeric(p: &RadialProblem) -> Result<SpectrumResult, Error> {
    if p.grid_points < 100 || p.r_max < 4.0 || p.count == 0 {
        return Err(Error::Invalid("need grid_points >= 100, r_max >= 4 and count >= 1".into()));
    }
    let k = p.k.unsigned_abs() as u32;
    let n = p.grid_points;
    let shift = p.potential_shift;
    let base = levels(k, p.r_max, n, shift, p.count)?;
    let values: Vec<f64> = base.iter().map(|(e, _)| *e).collect();
    let only = |v: Vec<(f64, Discretization)>| v.into_iter().map(|(e, _)| e).collect::<Vec<f64>>();
    let coarse = only(levels(k, p.r_max, n / 2, shift, p.count)?);
    let wide = only(levels(k, 2.0 * p.r_max, 2 * n, shift, p.count)?);
    let fine = only(levels(k, p.r_max, 2 * n, shift, 1)?);
    if values.iter().chain(&coarse).chain(&wide).any(|v| !v.is_finite()) {
        return Err(Error::Numeric("eigenvalue bisection failed".into()));
    }
    let convergence_order = {
        let (a, b) = (coarse[0] - values[0], values[0] - fine[0]);
        (a != 0.0 && b != 0.0).then(|| (a / b).abs().log2())
    };
    let eigenvalues: Vec<Eigenvalue> = (0..values.len())
        .map(|j| {
            let disc = (values[j] - coarse[j]).abs();
            let trunc = (values[j] - wide[j]).abs();
            let err = disc + trunc;
            let matched_n = match_level(values[j] - p.potential_shift, err);
            let relative_deviation = matched_n.map(|m| {
                let exact = (m * m + 3) as f64 + p.potential_shift;
                (values[j] - exact).abs() / exact.abs()
            });
            Eigenvalue {
                value: values[j],
                error_estimate: err,
                discretization_error: disc,
                truncation_error: trunc,
                extrapolated: values[j] + (values[j] - coarse[j]) / 3.0,
                matched_n,
                relative_deviation,
            }
        })
        .collect();
    let under_resolved = eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, e)| e.error_estimate > p.error_threshold * e.value.abs().max(1.0))
        .map(|(j, _)| j)
        .collect();
    let (radii, h) = (base[0].1.r.clone(), base[0].1.h);
    let last = radii.len() - 1;
    let phis: Vec<Vec<f64>> = base
        .iter()
        .map(|(l, d)| {
            let y = inverse_iteration(d, *l);
            y.iter().zip(&radii).map(|(yi, ri)| yi / (h * ri).sqrt()).collect()
        })
        .collect();
    // inner product in r dr, continued past r_max along the regular tail
    let dot = |a: usize, b: usize| -> f64 {
        let grid: f64 = phis[a].iter().zip(&phis[b]).zip(&radii).map(|((x, y), r)| x * y * h * r).sum();
        let tail = tail_overlap(p.r_max, radii[last], k as f64, values[a] - shift, values[b] - shift);
        grid + phis[a][last] * phis[b][last] * tail
    };
    let norms: Vec<f64> = (0..phis.len()).map(|a| dot(a, a).sqrt()).collect();
    let mut orthogonality_defect: f64 = 0.0;
    for i in 0..phis.len() {
        for j in 0..i {
            orthogonality_defect = orthogonality_defect.max((dot(i, j) / (norms[i] * norms[j])).abs());
        }
    }
    let eigenvectors = phis
        .iter()
        .zip(&norms)
        .map(|(phi, nrm)| phi.iter().map(|v| v / nrm).collect())
        .collect();
    Ok(SpectrumResult {
        k: p.k,
        eigenvalues,
        grid: GridInfo {
            rmax: p.r_max,
            n,
            h,
        },
        convergence_order,
        orthogonality_defect,
        under_resolved,
        radii,
        eigenvectors,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRun {
    pub r_max: f64,
    pub grid_points: usize,
    pub values: Vec<f64>,
}

/// Lowest levels of one channel at several truncation radii with the grid
/// spacing held fixed.
#[derive(Clone, Debug, Serialize)]
pub struct RmaxSweep {
    pub k: i64,
    pub runs: Vec<SweepRun>,
    /// Largest spread of a level across the radii, relative to its value.
    pub max_relative_spread: f64,
}

pub fn rmax_sweep(k: i64, radii: &[f64], spacing: f64, count: usize) -> Result<RmaxSweep, Error> {
    if radii.is_empty() || spacing <= 0.0 {
        return Err(Error::Invalid("need at least one radius and a positive spacing".into()));
    }
    let mut runs = Vec::new();
    for &r_max in radii {
        let grid_points = (r_max / spacing).round() as usize;
        let shift = 0.0;
        let values = levels(k.unsigned_abs() as u32, r_max, grid_points.max(1), shift, count)?
            .into_iter()
            .map(|(e, _)| e)
            .collect();
        runs.push(SweepRun { r_max, grid_points, values });
    }
    let mut max_relative_spread: f64 = 0.0;
    for j in 0..count {
        let vs: Vec<f64> = runs.iter().filter_map(|r| r.values.get(j).copied()).collect();
        let lo = vs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if vs.len() > 1 {
            max_relative_spread = max_relative_spread.max((hi - lo) / hi.abs().max(1.0));
        }
    }
    Ok(RmaxSweep { k, runs, max_relative_spread })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigenfunction_closed;

    fn solve(k: i64, shift: f64) -> SpectrumResult {
        solve_radial_numeric(&RadialProblem {
            k,
            potential_shift: shift,
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn ground_state_and_order() {
        let s = solve(0, 0.0);
        let e0 = &s.eigenvalues[0];
        assert_eq!(e0.matched_n, Some(1));
        assert!((e0.value - 4.0).abs() <= e0.error_estimate, "{e0:?}");
        let order = s.convergence_order.unwrap();
        assert!((1.7..=2.3).contains(&order), "{order}");
        assert!(s.orthogonality_defect <= 1e-8, "{}", s.orthogonality_defect);
    }

    #[test]
    fn channel_one_starts_at_twelve() {
        let s = solve(1, 0.0);
        let ns: Vec<Option<u32>> = s.eigenvalues.iter().map(|e| e.matched_n).collect();
        assert_eq!(ns, vec![Some(3), Some(5), Some(7), Some(9)]);
    }

    #[test]
    fn constant_shift_moves_levels() {
        let (a, b) = (solve(0, 0.0), solve(0, 2.5));
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((y.value - x.value - 2.5).abs() < 1e-8);
            assert_eq!(x.matched_n, y.matched_n);
        }
    }

    #[test]
    fn negative_channel_mirrors_positive() {
        let (a, b) = (solve(2, 0.0), solve(-2, 0.0));
        let va: Vec<f64> = a.eigenvalues.iter().map(|e| e.value).collect();
        let vb: Vec<f64> = b.eigenvalues.iter().map(|e| e.value).collect();
        assert_eq!(va, vb);
    }

    fn closed_norm(n: u32, k: u32) -> f64 {
        // trapezoid on a logarithmic grid out to where the tail is negligible
        let (lo, hi, m) = (1e-6f64, 1e5f64, 200_000);
        let step = (hi / lo).ln() / m as f64;
        let g = |i: usize| {
            let r = lo * (step * i as f64).exp();
            eigenfunction_closed(n, k, r).unwrap().powi(2) * r * r
        };
        let inner: f64 = (1..m).map(g).sum();
        ((inner + 0.5 * (g(0) + g(m))) * step).sqrt()
    }

    #[test]
    fn eigenvectors_match_closed_forms() {
        for (n, k) in [(1u32, 0u32), (3, 0), (3, 1)] {
            let s = solve(k as i64, 0.0);
            let j = ((n - 1) / 2 - k) as usize;
            let norm = closed_norm(n, k);
            let phi = &s.eigenvectors[j];
            let sign = phi.iter().map(|v| v.abs()).enumerate().fold((0, 0.0), |b, (i, v)| if v > b.1 { (i, v) } else { b }).0;
            let sign = (phi[sign] * eigenfunction_closed(n, k, s.radii[sign]).unwrap()).signum();
            let h = s.grid.h;
            let diff: f64 = phi
                .iter()
                .zip(&s.radii)
                .map(|(v, &r)| (sign * v - eigenfunction_closed(n, k, r).unwrap() / norm).powi(2) * h * r)
                .sum();
            assert!(diff.sqrt() <= 1e-3, "({n},{k}): {}", diff.sqrt());
        }
    }

    #[test]
    fn truncation_sweep_is_stable() {
        let sw = rmax_sweep(0, &[10.0, 20.0, 40.0], 0.005, 3).unwrap();
        assert_eq!(sw.runs.len(), 3);
        assert!(sw.max_relative_spread < 1e-6, "{}", sw.max_relative_spread);
    }

    #[test]
    fn rejects_bad_input() {
        let p = RadialProblem { grid_points: 10, ..Default::default() };
        assert!(matches!(solve_radial_numeric(&p), Err(Error::Invalid(_))));
    }
}
