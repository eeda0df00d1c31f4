//! Fractional differences, moduli of smoothness, and the modulus-side norms.
//!
//! The fractional difference of order `alpha` is applied in frequency space:
//! each coefficient is multiplied by the exact symbol
//! `e^{i alpha h k} (1 - e^{-i h k})^alpha`, the limit of the binomial series
//! `sum_j (-1)^j C(alpha,j) f(x + (alpha-j) h)` with shifts realized as phase
//! factors. This is exact for band-limited signals and avoids both grid
//! quantization of `h` and series truncation error; the series itself is kept
//! in the tests as a convergence oracle.
//!
//! The modulus `omega_alpha(f,t)_p` takes the sup of difference norms over a
//! logarithmically spaced grid of 16 step sizes ending at `t`. Norms
//! discretize `int_0^1 (...) dt/t` on the dyadic grid `t_n = 2^{-n}`,
//! `n = 0..M`; the diagnostic [`modulus_curve`] samples at `pi 2^{-n}` so its
//! top scale is the full half-period.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::dyadic::{bin_freq, lp_quasi_norm, PeriodicSignal};
use crate::params::{SpaceKind, SpaceParams};
use crate::report::NormReport;
use crate::{Error, Result};

/// Number of step sizes in the sup defining the modulus. The grid is
/// `h_i = t 2^{-8i/(H-1)}`, `i = 0..H-1`, so it spans eight octaves below `t`
/// and includes the endpoint.
pub const DEFAULT_H_GRID: usize = 16;

/// Default number of dyadic scales for the modulus-side norms:
/// `log2(N) - 2`, so the finest step resolves the Nyquist scale.
pub fn default_scale_count(n: usize) -> usize {
    (n.trailing_zeros() as usize).saturating_sub(2)
}

/// Apply the fractional difference of order `alpha > 0` with step `h`.
pub fn fractional_difference(f: &PeriodicSignal, alpha: f64, h: f64) -> Result<PeriodicSignal> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParam(format!("alpha = {alpha}, need > 0")));
    }
    if h == 0.0 {
        return Err(Error::InvalidParam("step h must be nonzero".into()));
    }
    let n = f.n();
    let filtered: Vec<Complex64> = f
        .coeffs()
        .into_iter()
        .enumerate()
        .map(|(bin, c)| {
            let k = bin_freq(bin, n) as f64;
            // 1 - e^{-ihk} has nonnegative real part, so the principal
            // branch of the power is continuous along the whole symbol.
            let base = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -h * k);
            c * Complex64::from_polar(1.0, alpha * h * k) * base.powf(alpha)
        })
        .collect();
    PeriodicSignal::from_coeffs(filtered, &format!("{}:diff", f.label))
}

/// `omega_alpha(f,t)_p` with an explicit step-grid size.
pub fn modulus_with_grid(
    f: &PeriodicSignal,
    alpha: f64,
    t: f64,
    p: f64,
    h_count: usize,
) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidParam(format!("t = {t}, need > 0")));
    }
    if h_count < 1 {
        return Err(Error::InvalidParam("empty step grid".into()));
    }
    // surface parameter errors before the parallel section
    fractional_difference(f, alpha, t).and_then(|d| lp_quasi_norm(&d, p))?;
    let norms = crate::exec::map_indexed(h_count, |i| {
        let h = t * (2f64).powf(-8.0 * i as f64 / (h_count.max(2) - 1) as f64);
        let diff = fractional_difference(f, alpha, h).unwrap();
        lp_quasi_norm(&diff, p).unwrap()
    });
    Ok(norms.into_iter().fold(0.0, f64::max))
}

/// Modulus of smoothness `omega_alpha(f,t)_p = sup_{0 < h <= t} ||Delta_h^alpha f||_p`.
pub fn modulus(f: &PeriodicSignal, alpha: f64, t: f64, p: f64) -> Result<f64> {
    modulus_with_grid(f, alpha, t, p, DEFAULT_H_GRID)
}

/// A sampled modulus, on a decreasing step grid.
#[derive(Clone, Debug)]
pub struct ModulusCurve {
    pub alpha: f64,
    pub p: f64,
    /// `(t, omega(t))` pairs with strictly decreasing `t`.
    pub points: Vec<(f64, f64)>,
}

impl ModulusCurve {
    /// Largest violation of monotonicity-in-t, as a relative excess;
    /// 0 for a perfectly nondecreasing curve.
    pub fn monotonicity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for w in self.points.windows(2) {
            let (coarse, fine) = (w[0].1, w[1].1);
            if fine > coarse {
                let scale = if coarse > 0.0 { coarse } else { 1.0 };
                worst = worst.max((fine - coarse) / scale);
            }
        }
        worst
    }

    /// Largest factor by which `omega(t)/t^alpha` drops from a coarser to a
    /// finer scale. The quotient is equivalent to a decreasing function of
    /// `t`, so it may grow as `t` shrinks but can only fall by a bounded
    /// factor; this returns that worst-case fall.
    pub fn quasi_decrease_factor(&self) -> f64 {
        let ratios: Vec<f64> = self
            .points
            .iter()
            .map(|&(t, w)| w / t.powf(self.alpha))
            .collect();
        let mut worst = 1.0f64;
        for i in 0..ratios.len() {
            for j in i + 1..ratios.len() {
                if ratios[j] > 0.0 {
                    worst = worst.max(ratios[i] / ratios[j]);
                }
            }
        }
        worst
    }
}

/// Sample the modulus on the dyadic grid `t_n = pi 2^{-n}`, `n = 0..M`.
pub fn modulus_curve(f: &PeriodicSignal, alpha: f64, p: f64, m: usize) -> Result<ModulusCurve> {
    if m < 3 {
        return Err(Error::InvalidParam(format!("M = {m}, need >= 3")));
    }
    let points = scan_modulus(f, alpha, p, m, PI)?;
    Ok(ModulusCurve { alpha, p, points })
}

// omega at t = top * 2^{-n} for n = 0..=m, parallel over scales. Each value
// folds in the grid maxima of all finer scales (their steps are admissible
// for the coarser sup too), which makes the curve nondecreasing in t by grid
// inclusion.
fn scan_modulus(
    f: &PeriodicSignal,
    alpha: f64,
    p: f64,
    m: usize,
    top: f64,
) -> Result<Vec<(f64, f64)>> {
    modulus_with_grid(f, alpha, top, p, 1)?;
    let mut points: Vec<(f64, f64)> = crate::exec::map_indexed(m + 1, |n| {
        let t = top * (2f64).powi(-(n as i32));
        (t, modulus(f, alpha, t, p).unwrap())
    });
    for n in (0..m).rev() {
        points[n].1 = points[n].1.max(points[n + 1].1);
    }
    Ok(points)
}

/// Lipschitz norm from the modulus:
/// `||f||_p + ( sum_{n=0}^{M} (t_n^{-alpha} (1 - log t_n)^{-b} omega(t_n))^q ln 2 )^{1/q}`
/// on `t_n = 2^{-n}`, the dyadic discretization of the defining integral
/// over `(0, 1)`; sup convention at `q = inf`.
pub fn lipschitz_norm_modulus(f: &PeriodicSignal, sp: &SpaceParams, m: usize) -> Result<NormReport> {
    require_kind(sp, SpaceKind::Lipschitz)?;
    let alpha = sp.smooth.unwrap().to_f64();
    let b = sp.log_exp.unwrap().to_f64();
    let p = sp.p.unwrap().to_f64();
    let q = sp.q.unwrap().to_f64();
    weighted_modulus_norm(f, alpha, alpha, -b, p, q, m, "lip-modulus")
}

/// Besov norm from the modulus of a higher order `alpha_ord > s`:
/// `||f||_p + ( sum_n (t_n^{-s} (1 - log t_n)^{b} omega_{alpha_ord}(t_n))^q ln 2 )^{1/q}`.
pub fn besov_norm_modulus(
    f: &PeriodicSignal,
    sp: &SpaceParams,
    alpha_ord: f64,
    m: usize,
) -> Result<NormReport> {
    require_kind(sp, SpaceKind::Besov)?;
    let s = sp.smooth.unwrap().to_f64();
    if !(s > 0.0 && s < alpha_ord) {
        return Err(Error::InvalidParam(format!(
            "the modulus characterization needs 0 < s < alpha_ord, got s = {s}, alpha_ord = {alpha_ord}"
        )));
    }
    let b = sp.log_exp.unwrap().to_f64();
    let p = sp.p.unwrap().to_f64();
    let q = sp.q.unwrap().to_f64();
    weighted_modulus_norm(f, s, alpha_ord, b, p, q, m, "besov-modulus")
}

#[allow(clippy::too_many_arguments)]
fn weighted_modulus_norm(
    f: &PeriodicSignal,
    s: f64,
    alpha_ord: f64,
    log_exp: f64,
    p: f64,
    q: f64,
    m: usize,
    method: &str,
) -> Result<NormReport> {
    let points = scan_modulus(f, alpha_ord, p, m, 1.0)?;
    let mut rep = NormReport::new(method, q)
        .with_meta("N", f.n())
        .with_meta("M", m)
        .with_meta("h_grid", DEFAULT_H_GRID);
    rep.quad_weight = (2f64).ln();
    rep.lp_term = Some(lp_quasi_norm(f, p)?);
    for (n, &(t, w)) in points.iter().enumerate() {
        rep.push(n as i64, t.powf(-s) * (1.0 - t.ln()).powf(log_exp) * w);
    }
    Ok(rep.finish())
}

fn require_kind(sp: &SpaceParams, kind: SpaceKind) -> Result<()> {
    if sp.kind != kind {
        return Err(Error::InvalidParam(format!(
            "expected a {kind:?} space, got `{sp}`"
        )));
    }
    let report = crate::params::validate(sp);
    if !report.is_valid() {
        let what: Vec<&str> = report
            .violations
            .iter()
            .map(|v| v.constraint.as_str())
            .collect();
        return Err(Error::InvalidParam(format!(
            "`{sp}` violates: {}",
            what.join("; ")
        )));
    }
    Ok(())
}

/// The two-term equivalent of the K-functional between `L_p` and the Sobolev
/// space of order `alpha`: `t^alpha ||f||_p + omega_alpha(f,t)_p`, `0 < t < 1`.
pub fn k_functional_estimate(f: &PeriodicSignal, alpha: f64, t: f64, p: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParam(format!("t = {t}, need 0 < t < 1")));
    }
    Ok(t.powf(alpha) * lp_quasi_norm(f, p)? + modulus(f, alpha, t, p)?)
}

/// One scale of the Marchaud comparison.
#[derive(Clone, Copy, Debug)]
pub struct MarchaudRow {
    pub t: f64,
    /// `t^{-alpha} omega_alpha(f,t)_p`
    pub lhs: f64,
    /// dyadic rectangle rule for `int_t^1 omega_{alpha+delta}(f,u)/u^alpha du/u`
    /// plus the flat continuation of the integrand above `u = 1`
    pub rhs: f64,
}

#[derive(Clone, Debug)]
pub struct MarchaudReport {
    pub rows: Vec<MarchaudRow>,
    /// max over scales of lhs/rhs, with 0/0 counted as 0
    pub max_ratio: f64,
}

/// Evaluate both sides of the Marchaud-type bound
/// `t^{-alpha} omega_alpha(f,t) <= C int_t^infty omega_{alpha+delta}(f,u) u^{-alpha} du/u`
/// on the dyadic scales `t_n = 2^{-n}`, `n = 0..M`.
pub fn marchaud_check(
    f: &PeriodicSignal,
    alpha: f64,
    delta: f64,
    p: f64,
    m: usize,
) -> Result<MarchaudReport> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParam(format!("delta = {delta}, need > 0")));
    }
    let low = scan_modulus(f, alpha, p, m, 1.0)?;
    let high = scan_modulus(f, alpha + delta, p, m, 1.0)?;
    let mut rows = Vec::with_capacity(m + 1);
    let mut max_ratio = 0.0f64;
    for n in 0..=m {
        let (t, w_low) = low[n];
        let lhs = t.powf(-alpha) * w_low;
        // rectangle rule over u = 2^0 .. 2^{-n}; the modulus is bounded above
        // u = 1, so that part of the integral is the plateau value times
        // int_1^infty u^{-alpha-1} du = 1/alpha.
        let mut rhs = high[0].1 / alpha;
        for (u, w_high) in high.iter().take(n + 1) {
            rhs += u.powf(-alpha) * w_high * (2f64).ln();
        }
        if rhs > 0.0 {
            max_ratio = max_ratio.max(lhs / rhs);
        }
        rows.push(MarchaudRow { t, lhs, rhs });
    }
    Ok(MarchaudReport { rows, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::parse_space;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    const TAU: f64 = 2.0 * PI;

    fn band_limited(n: usize, max_freq: i64, seed: u64) -> PeriodicSignal {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            if bin_freq(k, n).abs() <= max_freq {
                coeffs[k] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        PeriodicSignal::from_coeffs(coeffs, "band").unwrap()
    }

    // Truncated binomial series with Fourier-interpolated shifts; the
    // definition the symbol implementation must converge to.
    fn difference_by_series(f: &PeriodicSignal, alpha: f64, h: f64, jmax: usize) -> PeriodicSignal {
        let n = f.n();
        let coeffs = f.coeffs();
        let mut acc = vec![Complex64::new(0.0, 0.0); n];
        let mut binom = 1.0f64; // C(alpha, 0)
        for j in 0..=jmax {
            let shift = (alpha - j as f64) * h;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            for (bin, c) in coeffs.iter().enumerate() {
                let k = bin_freq(bin, n) as f64;
                acc[bin] += sign * binom * c * Complex64::from_polar(1.0, shift * k);
            }
            binom *= (alpha - j as f64) / (j as f64 + 1.0);
        }
        PeriodicSignal::from_coeffs(acc, "series").unwrap()
    }

    #[test]
    fn difference_vanishes_on_constants() {
        let f = PeriodicSignal::from_real(vec![4.2; 64], "c").unwrap();
        for alpha in [0.5, 1.0, 2.7] {
            let d = fractional_difference(&f, alpha, 0.3).unwrap();
            assert!(lp_quasi_norm(&d, f64::INFINITY).unwrap() < 1e-12);
        }
    }

    #[test]
    fn difference_magnitude_on_a_single_frequency() {
        let f = PeriodicSignal::exponential(64, 1, "e1").unwrap();
        for (alpha, h) in [(0.5, 0.3), (1.0, 1.1), (1.7, 0.05)] {
            let d = fractional_difference(&f, alpha, h).unwrap();
            let want = (2.0 * (h / 2.0).sin().abs()).powf(alpha);
            for c in &d.samples {
                assert_relative_eq!(c.norm(), want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn first_order_difference_is_a_shifted_difference() {
        let f = band_limited(128, 20, 1);
        let h = 0.37;
        let d = fractional_difference(&f, 1.0, h).unwrap();
        // f(x+h) by pure phase shift
        let shifted: Vec<Complex64> = f
            .coeffs()
            .into_iter()
            .enumerate()
            .map(|(bin, c)| c * Complex64::from_polar(1.0, h * bin_freq(bin, 128) as f64))
            .collect();
        let g = PeriodicSignal::from_coeffs(shifted, "shift").unwrap();
        for ((d, g), f) in d.samples.iter().zip(&g.samples).zip(&f.samples) {
            assert!((d - (g - f)).norm() < 1e-12);
        }
    }

    #[test]
    fn symbol_agrees_with_the_binomial_series() {
        let f = band_limited(64, 8, 2);
        // integer order: the series is finite and exact
        let exact = fractional_difference(&f, 2.0, 0.21).unwrap();
        let series = difference_by_series(&f, 2.0, 0.21, 2);
        assert!(exact.rel_l2_distance(&series) < 1e-12);

        // fractional order: series converges at the binomial-tail rate
        let alpha = 1.5;
        let symbol = fractional_difference(&f, alpha, 0.4).unwrap();
        let series = difference_by_series(&f, alpha, 0.4, 10_000);
        assert!(symbol.rel_l2_distance(&series) < 1e-5);
        let coarse = difference_by_series(&f, alpha, 0.4, 100);
        assert!(
            symbol.rel_l2_distance(&series) < symbol.rel_l2_distance(&coarse),
            "longer series must be closer to the symbol"
        );
    }

    #[test]
    fn modulus_known_values() {
        let c = PeriodicSignal::from_real(vec![1.0; 64], "c").unwrap();
        assert!(modulus(&c, 1.0, 0.5, 2.0).unwrap() < 1e-12);

        // sup over h <= pi of 2|sin(h/2)| sqrt(2pi), attained at the endpoint
        let f = PeriodicSignal::exponential(64, 1, "e1").unwrap();
        assert_relative_eq!(
            modulus(&f, 1.0, PI, 2.0).unwrap(),
            2.0 * TAU.sqrt(),
            max_relative = 1e-12
        );
        assert!(modulus(&f, 1.0, 0.0, 2.0).is_err());
        assert!(modulus(&f, -1.0, 0.5, 2.0).is_err());
    }

    #[test]
    fn modulus_is_nondecreasing_and_homogeneous() {
        let f = band_limited(256, 30, 3);
        let curve = modulus_curve(&f, 0.8, 3.0, 8).unwrap();
        assert!(curve.monotonicity_defect() < 1e-9);
        let tripled = PeriodicSignal::new(
            f.samples.iter().map(|c| 3.0 * c).collect(),
            "3f",
        )
        .unwrap();
        assert_relative_eq!(
            modulus(&tripled, 0.8, 0.2, 3.0).unwrap(),
            3.0 * modulus(&f, 0.8, 0.2, 3.0).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn curve_matches_the_single_frequency_closed_form() {
        let f = PeriodicSignal::exponential(64, 1, "e1").unwrap();
        let curve = modulus_curve(&f, 0.5, 2.0, 6).unwrap();
        assert_eq!(curve.points.len(), 7);
        for &(t, w) in &curve.points {
            let want = (2.0 * (t / 2.0).sin()).powf(0.5) * TAU.sqrt();
            assert_relative_eq!(w, want, max_relative = 1e-10);
        }
        assert!(curve.monotonicity_defect() < 1e-9);
        assert!(modulus_curve(&f, 0.5, 2.0, 2).is_err());

        let c = PeriodicSignal::from_real(vec![2.0; 64], "c").unwrap();
        let flat = modulus_curve(&c, 0.5, 2.0, 4).unwrap();
        assert!(flat.points.iter().all(|&(_, w)| w < 1e-12));
    }

    #[test]
    fn curve_properties_on_random_band_limited_signals() {
        for seed in 0..3 {
            let f = band_limited(256, 40, 10 + seed);
            let curve = modulus_curve(&f, 0.75, 2.0, 6).unwrap();
            assert!(curve.monotonicity_defect() < 1e-9);
            assert!(curve.quasi_decrease_factor() < 8.0);
        }
    }

    #[test]
    fn lipschitz_modulus_norm_values() {
        let n = 64;
        let zero = PeriodicSignal::from_real(vec![0.0; n], "0").unwrap();
        let sp = parse_space("Lip:alpha=1/2,p=2,q=2,b=1").unwrap();
        assert_eq!(lipschitz_norm_modulus(&zero, &sp, 5).unwrap().value, 0.0);

        // sup-norm variant on e^{ix}: the weighted terms increase toward
        // sqrt(2pi) as t -> 0, so the sup sits at the finest scale.
        let f = PeriodicSignal::exponential(n, 1, "e1").unwrap();
        let sp = parse_space("Lip:alpha=1/2,p=2,q=inf,b=0").unwrap();
        let rep = lipschitz_norm_modulus(&f, &sp, 8).unwrap();
        let seminorm = rep.value - rep.lp_term.unwrap();
        let finest = rep.per_scale.last().unwrap().term;
        assert_relative_eq!(seminorm, finest, max_relative = 1e-12);
        assert_relative_eq!(seminorm, TAU.sqrt(), max_relative = 1e-3);

        // explicit discretization oracle at finite q
        let sp = parse_space("Lip:alpha=1/2,p=2,q=3,b=1").unwrap();
        let rep = lipschitz_norm_modulus(&f, &sp, 6).unwrap();
        let mut sum = 0.0;
        for nn in 0..=6 {
            let t = (2f64).powi(-nn);
            let w = modulus(&f, 0.5, t, 2.0).unwrap();
            sum += (t.powf(-0.5) * (1.0 - t.ln()).powf(-1.0) * w).powf(3.0) * (2f64).ln();
        }
        assert_relative_eq!(
            rep.value,
            TAU.sqrt() + sum.powf(1.0 / 3.0),
            max_relative = 1e-10
        );

        let trivial = parse_space("Lip:alpha=1/2,p=2,q=2,b=1/4").unwrap();
        assert!(lipschitz_norm_modulus(&f, &trivial, 5).is_err());
    }

    #[test]
    fn besov_modulus_norm_values() {
        let n = 64;
        let f = PeriodicSignal::exponential(n, 1, "e1").unwrap();
        let sp = parse_space("Besov:s=1/2,p=2,q=2,b=1/4").unwrap();
        let rep = besov_norm_modulus(&f, &sp, 1.0, 6).unwrap();
        let mut sum = 0.0;
        for nn in 0..=6 {
            let t = (2f64).powi(-nn);
            let w = modulus(&f, 1.0, t, 2.0).unwrap();
            sum += (t.powf(-0.5) * (1.0 - t.ln()).powf(0.25) * w).powf(2.0) * (2f64).ln();
        }
        assert_relative_eq!(rep.value, TAU.sqrt() + sum.sqrt(), max_relative = 1e-10);

        // the characterization requires s < alpha_ord
        assert!(besov_norm_modulus(&f, &sp, 0.5, 6).is_err());
        assert!(besov_norm_modulus(&f, &sp, 0.3, 6).is_err());
    }

    #[test]
    fn k_functional_values() {
        let n = 64;
        let zero = PeriodicSignal::from_real(vec![0.0; n], "0").unwrap();
        assert_eq!(k_functional_estimate(&zero, 1.0, 0.5, 2.0).unwrap(), 0.0);

        let f = PeriodicSignal::exponential(n, 1, "e1").unwrap();
        let t = 0.4;
        assert_relative_eq!(
            k_functional_estimate(&f, 1.0, t, 2.0).unwrap(),
            t * TAU.sqrt() + 2.0 * (t / 2.0).sin() * TAU.sqrt(),
            max_relative = 1e-10
        );
        assert!(k_functional_estimate(&f, 1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn marchaud_comparison_stays_bounded() {
        let c = PeriodicSignal::from_real(vec![5.0; 64], "c").unwrap();
        let flat = marchaud_check(&c, 0.5, 0.5, 2.0, 5).unwrap();
        assert_eq!(flat.max_ratio, 0.0);

        let f = PeriodicSignal::exponential(64, 1, "e1").unwrap();
        let rep = marchaud_check(&f, 0.5, 0.5, 2.0, 6).unwrap();
        assert_eq!(rep.rows.len(), 7);
        assert!(rep.max_ratio.is_finite());
        assert!(rep.max_ratio > 0.0);

        let g = band_limited(128, 20, 4);
        let rep = marchaud_check(&g, 0.75, 0.5, 2.0, 5).unwrap();
        assert!(rep.max_ratio < 8.0);
        assert!(marchaud_check(&g, 0.75, 0.0, 2.0, 5).is_err());
    }
}
