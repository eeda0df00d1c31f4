//! Coefficient-level norms for two special classes of periodic series:
//! lacunary exponential series and series with general monotone (GM)
//! coefficients.
//!
//! For these classes every space norm in the toolkit collapses to a weighted
//! sum over the coefficients, which makes them ideal test vehicles: the same
//! object can be realized as a sampled signal and pushed through the FFT,
//! modulus and rearrangement routes, and the results compared against the
//! closed form. Outer scale sums are evaluated exactly: explicit terms up to
//! the index where the inner prefix sum saturates, plus the analytic tail of
//! the remaining weight series.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::dyadic::PeriodicSignal;
use crate::exec::sum_ordered;
use crate::report::NormReport;
use crate::sums::{tail_inv_log_power, tail_inv_power};
use crate::{Error, Result};

/// A lacunary series `f(x) = sum_{j=3}^{J} a_j e^{i (2^j - 2) x}`.
///
/// `coeffs[i]` is `a_{i+3}`; the frequencies `2^j - 2` sit strictly inside
/// the dyadic annulus `(2^{j-1}, 2^j]` for every `j >= 3`.
#[derive(Clone, Debug)]
pub struct LacunarySpec {
    pub coeffs: Vec<Complex64>,
}

pub const LACUNARY_J_MIN: usize = 3;

impl LacunarySpec {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParam(
                "a lacunary spec needs at least the j = 3 coefficient".into(),
            ));
        }
        Ok(LacunarySpec { coeffs })
    }

    /// Largest coefficient index `J`.
    pub fn j_max(&self) -> usize {
        LACUNARY_J_MIN + self.coeffs.len() - 1
    }

    pub fn frequency(j: usize) -> usize {
        (1usize << j) - 2
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs[j - LACUNARY_J_MIN]
    }
}

/// Trigonometric flavor of a GM series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GmFlavor {
    Cosine,
    Sine,
}

/// A series `sum_{n=1}^{Nc} a_n cos(nx)` (or `sin`) with nonnegative
/// coefficients. `gm_constant` is the smallest `C` with
/// `sum_{k=n}^{2n-1} |a_k - a_{k+1}| <= C a_n` over the testable range;
/// infinite when the sequence is not general monotone.
#[derive(Clone, Debug)]
pub struct GMSequence {
    pub a: Vec<f64>,
    pub flavor: GmFlavor,
    pub gm_constant: f64,
}

impl GMSequence {
    pub fn new(a: Vec<f64>, flavor: GmFlavor) -> Result<Self> {
        let (_, c) = is_general_monotone(&a)?;
        Ok(GMSequence {
            a,
            flavor,
            gm_constant: c,
        })
    }

    pub fn nc(&self) -> usize {
        self.a.len()
    }

    /// `a_n` with the 1-based indexing of the series.
    pub fn coeff(&self, n: usize) -> f64 {
        self.a[n - 1]
    }
}

/// Test the general-monotonicity condition and return the minimal feasible
/// constant. `a[i]` is `a_{i+1}`; blocks with `2n <= len` are testable.
/// A zero `a_n` whose block still has variation defeats every constant.
pub fn is_general_monotone(a: &[f64]) -> Result<(bool, f64)> {
    if a.iter().any(|&x| x < 0.0) {
        return Err(Error::InvalidParam(
            "general monotone sequences must be nonnegative".into(),
        ));
    }
    let mut c: f64 = 0.0;
    let mut n = 1usize;
    while 2 * n <= a.len() {
        let variation: f64 = (n..2 * n).map(|k| (a[k - 1] - a[k]).abs()).sum();
        let a_n = a[n - 1];
        if a_n > 0.0 {
            c = c.max(variation / a_n);
        } else if variation > 0.0 {
            return Ok((false, f64::INFINITY));
        }
        n += 1;
    }
    Ok((true, c))
}

/// Besov norm of a lacunary series:
/// `( sum_{j>=3} (2^{js} (1+j)^b |a_j|)^q )^{1/q}`, independent of `p`.
pub fn lacunary_besov_norm(spec: &LacunarySpec, s: f64, b: f64, q: f64) -> NormReport {
    let mut rep = NormReport::new("lacunary-besov", q).with_meta("J", spec.j_max());
    for (i, a) in spec.coeffs.iter().enumerate() {
        let j = (LACUNARY_J_MIN + i) as f64;
        rep.push(j as i64, (2f64).powf(j * s) * (1.0 + j).powf(b) * a.norm());
    }
    rep.finish()
}

/// Lipschitz norm of a lacunary series:
/// `( sum_{k>=3} (1+k)^{-bq} ( sum_{j=3}^{min(k,J)} 2^{2 j alpha} |a_j|^2 )^{q/2} )^{1/q}`.
///
/// Explicit terms run to `k = J`; beyond that the inner sum is saturated and
/// the remaining scales close to the analytic tail of `(1+k)^{-bq}`.
pub fn lacunary_lipschitz_norm(
    spec: &LacunarySpec,
    alpha: f64,
    b: f64,
    q: f64,
) -> Result<NormReport> {
    check_lip_indices(alpha, b, q)?;
    let mut rep = NormReport::new("lacunary-lip", q).with_meta("J", spec.j_max());
    let mut inner = 0.0;
    for (i, a) in spec.coeffs.iter().enumerate() {
        let j = (LACUNARY_J_MIN + i) as f64;
        inner += (4f64).powf(j * alpha) * a.norm_sqr();
        rep.push(j as i64, (1.0 + j).powf(-b) * inner.sqrt());
    }
    if q.is_finite() {
        rep.tail_qpow = inner.powf(q / 2.0) * tail_inv_power(spec.j_max() + 1, b * q);
    }
    Ok(rep.finish())
}

fn check_lip_indices(alpha: f64, b: f64, q: f64) -> Result<()> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParam(format!("alpha = {alpha}, need > 0")));
    }
    let ok = if q.is_infinite() { b >= 0.0 } else { b * q > 1.0 };
    if !ok {
        return Err(Error::InvalidParam(format!(
            "trivial space: b = {b}, q = {q} fails b > 1/q (b >= 0 at q = inf)"
        )));
    }
    Ok(())
}

/// Lebesgue norm of a GM series by the coefficient formula
/// `( sum_n n^{p-2} a_n^p )^{1/p}`, `1 < p < inf`.
pub fn gm_lp_norm(seq: &GMSequence, p: f64) -> Result<f64> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    let body = sum_ordered(
        seq.a
            .iter()
            .enumerate()
            .map(|(i, a)| ((i + 1) as f64).powf(p - 2.0) * a.powf(p)),
    );
    Ok(body.powf(1.0 / p))
}

/// Besov norm of a GM series:
/// `( sum_n n^{sq + q - q/p - 1} (1 + log n)^{bq} a_n^q )^{1/q}`.
pub fn gm_besov_norm(seq: &GMSequence, s: f64, b: f64, p: f64, q: f64) -> Result<NormReport> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    let mut rep = NormReport::new("gm-besov", q).with_meta("Nc", seq.nc());
    for (i, a) in seq.a.iter().enumerate() {
        let n = (i + 1) as f64;
        // term^q = n^{(s + 1 - 1/p)q - 1} (1+log n)^{bq} a_n^q
        let t = n.powf(s + 1.0 - 1.0 / p - inv_or_zero(q)) * (1.0 + n.ln()).powf(b) * a;
        rep.push((i + 1) as i64, t);
    }
    Ok(rep.finish())
}

fn inv_or_zero(q: f64) -> f64 {
    if q.is_infinite() {
        0.0
    } else {
        1.0 / q
    }
}

/// Lipschitz norm of a GM series:
/// `( sum_n (1 + log n)^{-bq} ( sum_{k<=n} k^{alpha p + p - 2} a_k^p )^{q/p} / n )^{1/q}`.
///
/// The inner prefix sums saturate at `Nc`; the outer sum closes with the
/// analytic tail of `(1 + log n)^{-bq}/n`.
pub fn gm_lipschitz_norm(
    seq: &GMSequence,
    alpha: f64,
    b: f64,
    p: f64,
    q: f64,
) -> Result<NormReport> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    check_lip_indices(alpha, b, q)?;
    Ok(prefix_log_norm(seq, alpha * p + p - 2.0, b, p, q, "gm-lip"))
}

// Shared shape of the GM Lipschitz and grand norms: inner prefix sums of
// k^{e} a_k^p under the outer weight (1 + log n)^{-bq} / n.
fn prefix_log_norm(seq: &GMSequence, e: f64, b: f64, p: f64, q: f64, method: &str) -> NormReport {
    let mut rep = NormReport::new(method, q).with_meta("Nc", seq.nc());
    let mut inner = 0.0;
    for (i, a) in seq.a.iter().enumerate() {
        let n = (i + 1) as f64;
        inner += n.powf(e) * a.powf(p);
        let t = (1.0 + n.ln()).powf(-b) * inner.powf(1.0 / p) * n.powf(-inv_or_zero(q));
        rep.push((i + 1) as i64, t);
    }
    if q.is_finite() {
        rep.tail_qpow = inner.powf(q / p) * tail_inv_log_power(seq.nc() + 1, b * q);
    }
    rep.finish()
}

/// Modulus of smoothness of a GM series at step `1/n`:
/// `n^{-alpha} ( sum_{k<=n} k^{alpha p + p - 2} a_k^p )^{1/p}
///  + ( sum_{k>n} k^{p-2} a_k^p )^{1/p}`.
pub fn gm_modulus(seq: &GMSequence, alpha: f64, n: usize, p: f64) -> Result<f64> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    if n < 1 {
        return Err(Error::InvalidParam("n must be >= 1".into()));
    }
    let head = sum_ordered(seq.a.iter().take(n).enumerate().map(|(i, a)| {
        let k = (i + 1) as f64;
        k.powf(alpha * p + p - 2.0) * a.powf(p)
    }));
    let tail = sum_ordered(seq.a.iter().enumerate().skip(n).map(|(i, a)| {
        let k = (i + 1) as f64;
        k.powf(p - 2.0) * a.powf(p)
    }));
    Ok((n as f64).powf(-alpha) * head.powf(1.0 / p) + tail.powf(1.0 / p))
}

/// Lorentz-Zygmund norm of a GM series:
/// `( sum_n n^{q - q/r - 1} (1 + log n)^{bq} a_n^q )^{1/q}`, `0 < q < inf`.
pub fn gm_lorentz_zygmund_norm(seq: &GMSequence, r: f64, q: f64, b: f64) -> Result<f64> {
    if !(r > 1.0) || r.is_infinite() {
        return Err(Error::InvalidParam(format!("r = {r}, need 1 < r < inf")));
    }
    if !(q > 0.0) || q.is_infinite() {
        return Err(Error::InvalidParam(format!("q = {q}, need 0 < q < inf")));
    }
    let body = sum_ordered(seq.a.iter().enumerate().map(|(i, a)| {
        let n = (i + 1) as f64;
        n.powf(q - q / r - 1.0) * (1.0 + n.ln()).powf(b * q) * a.powf(q)
    }));
    Ok(body.powf(1.0 / q))
}

/// Grand-Lorentz norm of a GM series:
/// `( sum_n (1 + log n)^{-bq} ( sum_{k<=n} k^{p - p/r - 1} a_k^p )^{q/p} / n )^{1/q}`.
///
/// For `alpha = 1/p - 1/r` this agrees with [`gm_lipschitz_norm`] term by
/// term, since `alpha p + p - 2 = p - p/r - 1`.
pub fn gm_grand_norm(seq: &GMSequence, r: f64, q: f64, b: f64, p: f64) -> Result<f64> {
    if !(r > 1.0) || r.is_infinite() {
        return Err(Error::InvalidParam(format!("r = {r}, need 1 < r < inf")));
    }
    if !(p > 0.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 0 < p < inf")));
    }
    if q.is_finite() && !(b * q > 1.0) {
        return Err(Error::InvalidParam(format!(
            "outer sum diverges: b = {b}, q = {q} fails b > 1/q"
        )));
    }
    Ok(prefix_log_norm(seq, p - p / r - 1.0, b, p, q, "gm-grand").value)
}

/// Sample the partial sum of a lacunary series on the `N`-grid.
pub fn realize_lacunary(spec: &LacunarySpec, n: usize) -> Result<PeriodicSignal> {
    let max_freq = LacunarySpec::frequency(spec.j_max());
    if 2 * max_freq >= n {
        return Err(Error::FrequencyOverflow {
            freq: max_freq,
            nyquist: n / 2,
        });
    }
    let samples = crate::exec::map_indexed(n, |i| {
        let x = 2.0 * PI * i as f64 / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, a) in spec.coeffs.iter().enumerate() {
            let freq = LacunarySpec::frequency(LACUNARY_J_MIN + idx) as f64;
            acc += a * Complex64::new(0.0, freq * x).exp();
        }
        acc
    });
    PeriodicSignal::new(samples, "lacunary")
}

/// Sample the partial sum of a GM series on the `N`-grid.
pub fn realize_gm(seq: &GMSequence, n: usize) -> Result<PeriodicSignal> {
    if 2 * seq.nc() >= n {
        return Err(Error::FrequencyOverflow {
            freq: seq.nc(),
            nyquist: n / 2,
        });
    }
    let samples = crate::exec::map_indexed(n, |i| {
        let x = 2.0 * PI * i as f64 / n as f64;
        let mut acc = 0.0;
        for (idx, a) in seq.a.iter().enumerate() {
            let t = (idx + 1) as f64 * x;
            acc += a * match seq.flavor {
                GmFlavor::Cosine => t.cos(),
                GmFlavor::Sine => t.sin(),
            };
        }
        Complex64::new(acc, 0.0)
    });
    PeriodicSignal::new(samples, "gm")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lac(coeffs: &[f64]) -> LacunarySpec {
        LacunarySpec::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap()
    }

    fn gm(a: &[f64]) -> GMSequence {
        GMSequence::new(a.to_vec(), GmFlavor::Cosine).unwrap()
    }

    #[test]
    fn general_monotone_classification() {
        // a_n = 1/n: the block variation telescopes to a_n - a_{2n} = a_n/2.
        let recip: Vec<f64> = (1..=64).map(|n| 1.0 / n as f64).collect();
        let (ok, c) = is_general_monotone(&recip).unwrap();
        assert!(ok);
        assert_relative_eq!(c, 0.5, max_relative = 1e-12);

        // alternating zeros: a_2 = 0 but its block varies
        let alt: Vec<f64> = (1..=32)
            .map(|n| (1.0 + if n % 2 == 0 { -1.0 } else { 1.0 }) / n as f64)
            .collect();
        let (ok, c) = is_general_monotone(&alt).unwrap();
        assert!(!ok);
        assert!(c.is_infinite());

        let (ok, c) = is_general_monotone(&[3.0; 40]).unwrap();
        assert!(ok);
        assert_eq!(c, 0.0);

        assert!(is_general_monotone(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn lacunary_besov_values() {
        // single coefficient a_3 = 1: 2^{3s} (1+3)^b
        let spec = lac(&[1.0]);
        assert_relative_eq!(
            lacunary_besov_norm(&spec, 1.0, 0.0, 2.0).value,
            8.0,
            max_relative = 1e-12
        );
        assert_eq!(lacunary_besov_norm(&lac(&[0.0, 0.0]), 1.0, 0.0, 2.0).value, 0.0);

        // a_j = 2^{-js}: norm^q = sum (1+j)^{bq}
        let s = 0.7;
        let coeffs: Vec<Complex64> = (3..=9)
            .map(|j| Complex64::new((2f64).powf(-(j as f64) * s), 0.0))
            .collect();
        let spec = LacunarySpec::new(coeffs).unwrap();
        let direct: f64 = (3..=9)
            .map(|j| (1.0 + j as f64).powf(2.0 * 1.3))
            .sum::<f64>()
            .sqrt();
        assert_relative_eq!(
            lacunary_besov_norm(&spec, s, 1.3, 2.0).value,
            direct,
            max_relative = 1e-12
        );
    }

    #[test]
    fn lacunary_lipschitz_values() {
        // single coefficient: 8 ( sum_{k>=3} (1+k)^{-2} )^{1/2}
        let spec = lac(&[1.0]);
        let rep = lacunary_lipschitz_norm(&spec, 1.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(
            rep.value,
            8.0 * tail_inv_power(3, 2.0).sqrt(),
            max_relative = 1e-12
        );

        let zero = lacunary_lipschitz_norm(&lac(&[0.0, 0.0]), 1.0, 1.0, 2.0).unwrap();
        assert_eq!(zero.value, 0.0);

        // direct double-sum oracle on a short spec, outer sum cut far out
        let spec = lac(&[1.0, 0.5, 0.25]);
        let (alpha, b, q) = (0.6, 1.2, 1.5);
        let mut direct = 0.0;
        for k in 3..200_000usize {
            let inner: f64 = (3..=k.min(5))
                .map(|j| (4f64).powf(j as f64 * alpha) * spec.coeff(j).norm_sqr())
                .sum();
            direct += (1.0 + k as f64).powf(-b * q) * inner.powf(q / 2.0);
        }
        // analytic remainder of the cut
        let inner_full: f64 = (3..=5)
            .map(|j| (4f64).powf(j as f64 * alpha) * spec.coeff(j).norm_sqr())
            .sum();
        direct += inner_full.powf(q / 2.0) * tail_inv_power(200_000, b * q);
        let rep = lacunary_lipschitz_norm(&spec, alpha, b, q).unwrap();
        assert_relative_eq!(rep.value, direct.powf(1.0 / q), max_relative = 1e-9);

        assert!(lacunary_lipschitz_norm(&spec, 1.0, 0.5, 2.0).is_err());
        assert!(lacunary_lipschitz_norm(&spec, -1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn lacunary_lipschitz_sup_convention() {
        let spec = lac(&[1.0, 0.5]);
        let rep = lacunary_lipschitz_norm(&spec, 1.0, 0.0, f64::INFINITY).unwrap();
        // b = 0: sup over k of the saturated inner sum, attained at k = J
        let full = ((4f64).powf(3.0) + (4f64).powf(4.0) * 0.25).sqrt();
        assert_relative_eq!(rep.value, full, max_relative = 1e-12);
    }

    #[test]
    fn gm_lp_values() {
        let single = gm(&[1.0]);
        assert_relative_eq!(gm_lp_norm(&single, 2.0).unwrap(), 1.0, max_relative = 1e-12);

        // a_n = 1/n at p=2 tends to pi/sqrt(6)
        let recip: Vec<f64> = (1..=50_000).map(|n| 1.0 / n as f64).collect();
        let seq = gm(&recip);
        assert_relative_eq!(
            gm_lp_norm(&seq, 2.0).unwrap(),
            std::f64::consts::PI / 6f64.sqrt(),
            max_relative = 1e-4
        );

        // homogeneity
        let doubled = gm(&recip.iter().map(|x| 3.0 * x).collect::<Vec<_>>());
        assert_relative_eq!(
            gm_lp_norm(&doubled, 3.0).unwrap(),
            3.0 * gm_lp_norm(&seq, 3.0).unwrap(),
            max_relative = 1e-12
        );
        assert!(gm_lp_norm(&seq, 1.0).is_err());
        assert!(gm_lp_norm(&seq, f64::INFINITY).is_err());
    }

    #[test]
    fn gm_besov_values() {
        // single term: 1^{...} = 1 regardless of exponents
        let single = gm(&[2.0]);
        assert_relative_eq!(
            gm_besov_norm(&single, 0.9, 1.1, 2.0, 3.0).unwrap().value,
            2.0,
            max_relative = 1e-12
        );
        // direct summation oracle
        let a: Vec<f64> = (1..=200).map(|n| (n as f64).powf(-1.7)).collect();
        let seq = gm(&a);
        let (s, b, p, q) = (0.5, -0.3, 2.0, 1.3);
        let direct: f64 = (1..=200)
            .map(|n| {
                let n = n as f64;
                n.powf(s * q + q - q / p - 1.0)
                    * (1.0 + n.ln()).powf(b * q)
                    * n.powf(-1.7 * q)
            })
            .sum();
        assert_relative_eq!(
            gm_besov_norm(&seq, s, b, p, q).unwrap().value,
            direct.powf(1.0 / q),
            max_relative = 1e-11
        );
    }

    #[test]
    fn gm_lipschitz_values() {
        // a_1 only: inner sum is constant a_1^p, outer closes to the full
        // log-weight series.
        let single = gm(&[1.0]);
        let (b, q) = (1.0, 2.0);
        let rep = gm_lipschitz_norm(&single, 0.5, b, 2.0, q).unwrap();
        assert_relative_eq!(
            rep.value,
            tail_inv_log_power(1, b * q).sqrt(),
            max_relative = 1e-12
        );
        assert_eq!(
            gm_lipschitz_norm(&gm(&[0.0, 0.0]), 0.5, 1.0, 2.0, 2.0)
                .unwrap()
                .value,
            0.0
        );
        assert!(gm_lipschitz_norm(&single, 0.5, 0.25, 2.0, 2.0).is_err());
    }

    #[test]
    fn gm_modulus_values() {
        let single = gm(&[1.0]);
        // first term n^{-alpha}, empty tail
        assert_relative_eq!(
            gm_modulus(&single, 0.75, 4, 2.0).unwrap(),
            (4f64).powf(-0.75),
            max_relative = 1e-12
        );
        assert_eq!(gm_modulus(&gm(&[0.0; 8]), 0.5, 2, 2.0).unwrap(), 0.0);

        // two-term hand computation
        let seq = gm(&[1.0, 0.5, 0.25]);
        let (alpha, p, n) = (0.5, 2.0, 2usize);
        let head = (1f64.powf(alpha * p + p - 2.0) * 1.0
            + 2f64.powf(alpha * p + p - 2.0) * 0.25)
            .powf(0.5);
        let tail = (3f64.powf(p - 2.0) * 0.0625).powf(0.5);
        assert_relative_eq!(
            gm_modulus(&seq, alpha, n, p).unwrap(),
            (n as f64).powf(-alpha) * head + tail,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gm_lorentz_zygmund_values() {
        let single = gm(&[1.0]);
        assert_relative_eq!(
            gm_lorentz_zygmund_norm(&single, 3.0, 2.0, 0.7).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert!(gm_lorentz_zygmund_norm(&single, 3.0, f64::INFINITY, 0.0).is_err());
        assert!(gm_lorentz_zygmund_norm(&single, 1.0, 2.0, 0.0).is_err());

        // power-log sequence against a direct summation oracle
        let a: Vec<f64> = (1..=500)
            .map(|n| (n as f64).powf(-0.8) * (1.0 + (n as f64).ln()).powf(-0.5))
            .collect();
        let seq = gm(&a);
        let (r, q, b) = (2.5, 1.5, 0.4);
        let direct: f64 = (1..=500)
            .map(|n| {
                let nf = n as f64;
                nf.powf(q - q / r - 1.0) * (1.0 + nf.ln()).powf(b * q) * a[n - 1].powf(q)
            })
            .sum();
        assert_relative_eq!(
            gm_lorentz_zygmund_norm(&seq, r, q, b).unwrap(),
            direct.powf(1.0 / q),
            max_relative = 1e-11
        );
    }

    #[test]
    fn grand_norm_matches_lipschitz_under_the_exponent_identity() {
        // alpha = 1/p - 1/r makes the inner exponents coincide:
        // alpha p + p - 2 = p - p/r - 1.
        let a: Vec<f64> = (1..=300).map(|n| (n as f64).powf(-0.9)).collect();
        let seq = gm(&a);
        let (p, r, b, q) = (2.0, 4.0, 1.3, 1.7);
        let alpha = 1.0 / p - 1.0 / r;
        let grand = gm_grand_norm(&seq, r, q, b, p).unwrap();
        let lip = gm_lipschitz_norm(&seq, alpha, b, p, q).unwrap().value;
        assert_relative_eq!(grand, lip, max_relative = 1e-12);

        // a_1 only: inner constant, same closed value as the Lipschitz case
        let single = gm(&[1.0]);
        assert_relative_eq!(
            gm_grand_norm(&single, 2.0, 2.0, 1.0, 2.0).unwrap(),
            tail_inv_log_power(1, 2.0).sqrt(),
            max_relative = 1e-12
        );
        assert_eq!(gm_grand_norm(&gm(&[0.0]), 2.0, 2.0, 1.0, 2.0).unwrap(), 0.0);
        assert!(gm_grand_norm(&single, 2.0, 2.0, 0.25, 2.0).is_err());
    }

    #[test]
    fn realization_respects_the_grid() {
        let spec = lac(&[1.0, 0.5]); // top frequency 2^4 - 2 = 14
        assert!(realize_lacunary(&spec, 32).is_ok());
        assert!(realize_lacunary(&spec, 16).is_err());

        let seq = gm(&(1..=20).map(|n| 1.0 / n as f64).collect::<Vec<_>>());
        assert!(realize_gm(&seq, 64).is_ok());
        assert!(realize_gm(&seq, 32).is_err());
    }

    #[test]
    fn realized_lacunary_matches_fourier_besov_route() {
        // the sampled signal pushed through the sharp-partition Besov route
        // equals (2 pi)^{1/p} times the closed form, exactly
        let spec = LacunarySpec::new(vec![
            Complex64::new(1.0, 0.3),
            Complex64::new(-0.4, 0.2),
            Complex64::new(0.1, 0.0),
        ])
        .unwrap();
        let n = 128;
        let f = realize_lacunary(&spec, n).unwrap();
        let part = crate::dyadic::make_partition(n, crate::dyadic::PartitionKind::Sharp).unwrap();
        for (p, pstr) in [(2.0, "2"), (4.0, "4")] {
            let sp =
                crate::params::parse_space(&format!("Besov:s=3/4,p={pstr},q=2,b=-1/2")).unwrap();
            let fourier = crate::dyadic::besov_norm_fourier(&f, &part, &sp).unwrap();
            let closed = lacunary_besov_norm(&spec, 0.75, -0.5, 2.0);
            assert_relative_eq!(
                fourier.value,
                (2.0 * PI).powf(1.0 / p) * closed.value,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn realized_lacunary_matches_truncated_square_route() {
        let spec = LacunarySpec::new(vec![
            Complex64::new(0.9, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(0.3, -0.3),
        ])
        .unwrap();
        let n = 256;
        let f = realize_lacunary(&spec, n).unwrap();
        let part = crate::dyadic::make_partition(n, crate::dyadic::PartitionKind::Sharp).unwrap();
        let sp = crate::params::parse_space("Lip:alpha=1/2,p=2,q=2,b=1").unwrap();
        let fourier = crate::dyadic::lipschitz_norm_truncated_square(&f, &part, &sp).unwrap();
        let closed = lacunary_lipschitz_norm(&spec, 0.5, 1.0, 2.0).unwrap();
        let ratio = fourier.value / ((2.0 * PI).sqrt() * closed.value);
        assert!((ratio - 1.0).abs() < 1e-9, "ratio = {ratio}");
    }
}
