//! FFT-based frequency analysis of periodic signals.
//!
//! Signals live on the uniform grid `x_n = 2 pi n / N` with `N = 2^m`. A
//! dyadic partition splits the spectrum into blocks `u_j = (phi_j fhat)^vee`;
//! on top of the blocks sit the Fourier-side norms: the Besov norm, the
//! truncated-square-function family (which yields the Lipschitz norm and, at
//! the other end of its parameter range, a Littlewood-Paley proxy for the
//! Lebesgue norm), the Bessel-potential Sobolev norm, and the partial-sum
//! Fourier-means route to the Lipschitz norm.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use crate::exec::{map_indexed, sum_ordered};
use crate::params::{SpaceKind, SpaceParams};
use crate::report::NormReport;
use crate::sums::tail_inv_power;
use crate::{Error, Result};

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut plans = PLANS.lock().unwrap();
    plans
        .entry((len, inverse))
        .or_insert_with(|| {
            let dir = if inverse {
                FftDirection::Inverse
            } else {
                FftDirection::Forward
            };
            FftPlanner::new().plan_fft(len, dir)
        })
        .clone()
}

/// A complex signal sampled on the uniform grid over one period.
#[derive(Clone, Debug)]
pub struct PeriodicSignal {
    pub samples: Vec<Complex64>,
    pub label: String,
}

impl PeriodicSignal {
    /// Wrap samples; the length must be a power of two, at least 8.
    pub fn new(samples: Vec<Complex64>, label: &str) -> Result<Self> {
        let n = samples.len();
        if !n.is_power_of_two() || n < 8 {
            return Err(Error::NotPowerOfTwo(n));
        }
        Ok(PeriodicSignal {
            samples,
            label: label.to_string(),
        })
    }

    pub fn from_real(samples: Vec<f64>, label: &str) -> Result<Self> {
        Self::new(
            samples.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            label,
        )
    }

    /// Samples of `x -> e^{i freq x}`.
    pub fn exponential(n: usize, freq: i64, label: &str) -> Result<Self> {
        let samples = (0..n)
            .map(|i| (Complex64::i() * (freq as f64) * (2.0 * PI * i as f64 / n as f64)).exp())
            .collect();
        Self::new(samples, label)
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    /// Fourier coefficients `fhat(k) = (1/N) sum_n f(x_n) e^{-i k x_n}`,
    /// indexed by FFT bin; bin `b` holds frequency `b` for `b <= N/2` and
    /// `b - N` above.
    pub fn coeffs(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        plan(buf.len(), false).process(&mut buf);
        let scale = 1.0 / buf.len() as f64;
        for c in &mut buf {
            *c *= scale;
        }
        buf
    }

    /// Rebuild a signal from Fourier coefficients in FFT-bin order.
    pub fn from_coeffs(mut coeffs: Vec<Complex64>, label: &str) -> Result<Self> {
        plan(coeffs.len(), true).process(&mut coeffs);
        Self::new(coeffs, label)
    }

    /// Relative L_2 distance to another signal of the same length, with the
    /// convention 0 for two zero signals.
    pub fn rel_l2_distance(&self, other: &PeriodicSignal) -> f64 {
        assert_eq!(self.n(), other.n());
        let num: f64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = self.samples.iter().map(|a| a.norm_sqr()).sum();
        if den == 0.0 {
            return num.sqrt();
        }
        (num / den).sqrt()
    }
}

/// Absolute frequency of an FFT bin on a length-`n` grid.
pub fn bin_abs_freq(bin: usize, n: usize) -> usize {
    if bin <= n / 2 {
        bin
    } else {
        n - bin
    }
}

/// Signed frequency of an FFT bin (the bin at `n/2` is taken positive).
pub fn bin_freq(bin: usize, n: usize) -> i64 {
    if bin <= n / 2 {
        bin as i64
    } else {
        bin as i64 - n as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    /// Indicator multipliers on the dyadic annuli `2^{j-1} < |k| <= 2^j`.
    Sharp,
    /// A fixed C-infinity bump profile; adjacent blocks overlap.
    SmoothBump,
}

/// Multipliers `phi_j(|k|)` for `j = 0..=j_max`, stored over `|k| = 0..=N/2`.
#[derive(Clone, Debug)]
pub struct DyadicPartition {
    pub n: usize,
    pub kind: PartitionKind,
    pub profile: Vec<Vec<f64>>,
}

impl DyadicPartition {
    /// Largest block index; blocks run `j = 0..=j_max` with
    /// `j_max = log2(N) - 1`.
    pub fn j_max(&self) -> usize {
        self.profile.len() - 1
    }

    pub fn weight(&self, j: usize, abs_freq: usize) -> f64 {
        self.profile[j][abs_freq]
    }
}

// Smooth step: 1 on t <= 1, 0 on t >= 2, C-infinity in between.
fn bump_step(t: f64) -> f64 {
    fn e(s: f64) -> f64 {
        if s > 0.0 {
            (-1.0 / s).exp()
        } else {
            0.0
        }
    }
    let (up, down) = (e(2.0 - t), e(t - 1.0));
    if up == 0.0 {
        return 0.0;
    }
    up / (up + down)
}

/// Build the dyadic partition of unity on the frequencies `|k| <= N/2`.
pub fn make_partition(n: usize, kind: PartitionKind) -> Result<DyadicPartition> {
    if !n.is_power_of_two() || n < 8 {
        return Err(Error::NotPowerOfTwo(n));
    }
    let m = n.trailing_zeros() as usize;
    let j_max = m - 1;
    let half = n / 2;
    let mut profile = vec![vec![0.0; half + 1]; j_max + 1];
    for a in 0..=half {
        match kind {
            PartitionKind::Sharp => {
                let j = if a <= 1 {
                    0
                } else {
                    // a in (2^{j-1}, 2^j]
                    (usize::BITS - (a - 1).leading_zeros()) as usize
                };
                profile[j][a] = 1.0;
            }
            PartitionKind::SmoothBump => {
                profile[0][a] = bump_step(a as f64);
                for j in 1..=j_max {
                    let scale = (1u64 << j) as f64;
                    profile[j][a] =
                        bump_step(a as f64 / scale) - bump_step(2.0 * a as f64 / scale);
                }
            }
        }
    }
    Ok(DyadicPartition { n, kind, profile })
}

/// The frequency blocks `u_j = (phi_j fhat)^vee` of a signal.
#[derive(Clone, Debug)]
pub struct DyadicBlocks {
    pub blocks: Vec<PeriodicSignal>,
}

/// Split a signal into its dyadic frequency blocks.
pub fn lp_blocks(f: &PeriodicSignal, part: &DyadicPartition) -> Result<DyadicBlocks> {
    if f.n() != part.n {
        return Err(Error::SizeMismatch {
            expected: part.n,
            got: f.n(),
        });
    }
    let n = f.n();
    let coeffs = f.coeffs();
    let blocks = map_indexed(part.j_max() + 1, |j| {
        let filtered: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .map(|(bin, c)| c * part.weight(j, bin_abs_freq(bin, n)))
            .collect();
        PeriodicSignal::from_coeffs(filtered, &format!("{}:block{j}", f.label)).unwrap()
    });
    Ok(DyadicBlocks { blocks })
}

fn lp_of_samples(samples: &[Complex64], p: f64) -> f64 {
    let n = samples.len() as f64;
    if p.is_infinite() {
        return samples.iter().map(|c| c.norm()).fold(0.0, f64::max);
    }
    let body = sum_ordered(samples.iter().map(|c| c.norm().powf(p)));
    (2.0 * PI / n * body).powf(1.0 / p)
}

/// Discrete `L_p` norm on the torus by the rectangle rule,
/// `((2 pi / N) sum |g(x_n)|^p)^{1/p}`, max of samples at `p = inf`.
pub fn lp_quasi_norm(g: &PeriodicSignal, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParam(format!("p = {p}, need p >= 1")));
    }
    Ok(lp_of_samples(&g.samples, p))
}

fn require_valid(sp: &SpaceParams, kind: SpaceKind) -> Result<()> {
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

/// Besov norm from the frequency blocks:
/// `( sum_j (2^{js} (1+j)^b ||u_j||_p)^q )^{1/q}`, sup convention at q = inf.
pub fn besov_norm_fourier(
    f: &PeriodicSignal,
    part: &DyadicPartition,
    sp: &SpaceParams,
) -> Result<NormReport> {
    require_valid(sp, SpaceKind::Besov)?;
    let s = sp.smooth.unwrap().to_f64();
    let xi = sp.log_exp.unwrap().to_f64();
    let p = sp.p.unwrap().to_f64();
    let q = sp.q.unwrap().to_f64();

    let blocks = lp_blocks(f, part)?;
    let norms = crate::exec::map_slice(&blocks.blocks, |u| lp_of_samples(&u.samples, p));
    let mut rep = NormReport::new("besov-fourier", q)
        .with_meta("N", f.n())
        .with_meta("J", part.j_max())
        .with_meta("partition", format!("{:?}", part.kind));
    for (j, norm) in norms.iter().enumerate() {
        let w = (2f64).powf(j as f64 * s) * (1.0 + j as f64).powf(xi);
        rep.push(j as i64, w * norm);
    }
    Ok(rep.finish())
}

/// The two-parameter truncated-square-function family
/// `( sum_k (2^{k(alpha-beta)} (1+k)^{-b})^q || (sum_{j<=k} 2^{2 j beta} |u_j|^2)^{1/2} ||_p^q )^{1/q}`
/// for `beta >= alpha`, `1 < p < inf`.
///
/// `beta = alpha` is the Lipschitz norm route; `beta = alpha, q = inf, b = 0`
/// is the Littlewood-Paley Sobolev-type norm. Scales `k` beyond the top block
/// see the saturated square function, so their contribution is the analytic
/// tail of the weight series; it is added exactly and recorded in the report.
pub fn unified_scale_norm(
    f: &PeriodicSignal,
    part: &DyadicPartition,
    alpha: f64,
    beta: f64,
    b: f64,
    p: f64,
    q: f64,
) -> Result<NormReport> {
    if beta < alpha {
        return Err(Error::InvalidParam(format!(
            "beta = {beta} must be >= alpha = {alpha}"
        )));
    }
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }

    let n = f.n();
    let blocks = lp_blocks(f, part)?;
    let sq = crate::exec::map_slice(&blocks.blocks, |u| {
        u.samples.iter().map(|c| c.norm_sqr()).collect::<Vec<f64>>()
    });

    let j_max = part.j_max();
    let mut rep = NormReport::new("truncated-square", q)
        .with_meta("N", n)
        .with_meta("J", j_max)
        .with_meta("partition", format!("{:?}", part.kind))
        .with_meta("alpha", alpha)
        .with_meta("beta", beta);

    let mut acc = vec![0.0f64; n];
    let mut sat_norm = 0.0;
    for k in 0..=j_max {
        let w_inner = (4f64).powf(k as f64 * beta);
        for (a, s) in acc.iter_mut().zip(&sq[k]) {
            *a += w_inner * s;
        }
        let inner_norm = {
            let body = sum_ordered(acc.iter().map(|a| a.powf(p / 2.0)));
            (2.0 * PI / n as f64 * body).powf(1.0 / p)
        };
        let w_outer = (2f64).powf(k as f64 * (alpha - beta)) * (1.0 + k as f64).powf(-b);
        rep.push(k as i64, w_outer * inner_norm);
        sat_norm = inner_norm;
    }

    // Scales k > J: the inner square function is saturated, only the outer
    // weight varies.
    if q.is_infinite() {
        if beta == alpha && b < 0.0 {
            rep.value = f64::INFINITY;
            rep.meta
                .insert("diverges".into(), "sup of growing weights".into());
            return Ok(rep);
        }
    } else if beta == alpha {
        if b * q <= 1.0 {
            if sat_norm > 0.0 {
                rep.value = f64::INFINITY;
                rep.meta
                    .insert("diverges".into(), "outer weight series diverges".into());
                return Ok(rep);
            }
        } else {
            rep.tail_qpow = sat_norm.powf(q) * tail_inv_power(j_max + 1, b * q);
        }
    } else {
        // geometric decay 2^{(alpha-beta)q} per scale
        let rho = (2f64).powf((alpha - beta) * q);
        let mut k = j_max as f64 + 1.0;
        let mut tail = 0.0;
        loop {
            let term = rho.powf(k) * (1.0 + k).powf(-b * q);
            tail += term;
            if term < 1e-17 * (tail + 1e-300) || k > 1e6 {
                break;
            }
            k += 1.0;
        }
        rep.tail_qpow = sat_norm.powf(q) * tail;
    }
    Ok(rep.finish())
}

/// Lipschitz norm via the truncated square function (the `beta = alpha`
/// member of [`unified_scale_norm`]).
pub fn lipschitz_norm_truncated_square(
    f: &PeriodicSignal,
    part: &DyadicPartition,
    sp: &SpaceParams,
) -> Result<NormReport> {
    require_valid(sp, SpaceKind::Lipschitz)?;
    let p = sp.p.unwrap();
    if !(p > crate::params::ExtRational::one() && p.is_finite()) {
        return Err(Error::InvalidParam(format!(
            "`{sp}`: this route needs 1 < p < inf"
        )));
    }
    let alpha = sp.smooth.unwrap().to_f64();
    let b = sp.log_exp.unwrap().to_f64();
    let mut rep = unified_scale_norm(
        f,
        part,
        alpha,
        alpha,
        b,
        p.to_f64(),
        sp.q.unwrap().to_f64(),
    )?;
    rep.method = "lip-truncated-square".into();
    Ok(rep)
}

/// Bessel-potential Sobolev norm: `L_p` norm of the inverse transform of
/// `(1 + k^2)^{alpha/2} fhat(k)`.
pub fn sobolev_norm(f: &PeriodicSignal, alpha: f64, p: f64) -> Result<NormReport> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    let n = f.n();
    let filtered: Vec<Complex64> = f
        .coeffs()
        .into_iter()
        .enumerate()
        .map(|(bin, c)| {
            let k = bin_abs_freq(bin, n) as f64;
            c * (1.0 + k * k).powf(alpha / 2.0)
        })
        .collect();
    let g = PeriodicSignal::from_coeffs(filtered, "bessel")?;
    let mut rep = NormReport::new("sobolev-bessel", 1.0).with_meta("N", n);
    rep.lp_term = Some(lp_of_samples(&g.samples, p));
    Ok(rep.finish())
}

/// Lipschitz norm via partial-sum Fourier means:
/// `||f||_p + ( sum_k (1+k)^{-bq} || (-Delta)^{alpha/2} S_{2^k} f ||_p^q )^{1/q}`
/// where `S_n` keeps frequencies `|j| <= n`. Once `2^k` reaches `N/2` the
/// partial sum is the whole signal and the remaining scales contribute the
/// analytic tail of the weight series.
pub fn fourier_means_lip_norm(
    f: &PeriodicSignal,
    alpha: f64,
    b: f64,
    p: f64,
    q: f64,
) -> Result<NormReport> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    let n = f.n();
    let coeffs = f.coeffs();
    let k_sat = (n.trailing_zeros() - 1) as usize;

    let terms = map_indexed(k_sat + 1, |k| {
        let cut = 1i64 << k;
        let filtered: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .map(|(bin, c)| {
                let freq = bin_freq(bin, n);
                if freq.abs() <= cut {
                    c * (freq.abs() as f64).powf(alpha)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let g = PeriodicSignal::from_coeffs(filtered, "means").unwrap();
        lp_of_samples(&g.samples, p)
    });

    let mut rep = NormReport::new("lip-fourier-means", q)
        .with_meta("N", n)
        .with_meta("k_sat", k_sat);
    rep.lp_term = Some(lp_of_samples(&f.samples, p));
    for (k, t) in terms.iter().enumerate() {
        rep.push(k as i64, (1.0 + k as f64).powf(-b) * t);
    }
    let sat = *terms.last().unwrap();
    if q.is_infinite() {
        if b < 0.0 && sat > 0.0 {
            rep.value = f64::INFINITY;
            rep.meta
                .insert("diverges".into(), "sup of growing weights".into());
            return Ok(rep);
        }
    } else if b * q <= 1.0 {
        if sat > 0.0 {
            rep.value = f64::INFINITY;
            rep.meta
                .insert("diverges".into(), "outer weight series diverges".into());
            return Ok(rep);
        }
    } else {
        rep.tail_qpow = sat.powf(q) * tail_inv_power(k_sat + 1, b * q);
    }
    Ok(rep.finish())
}
