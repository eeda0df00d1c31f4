//! Periodic Haar analysis on the unit interval and the wavelet sequence
//! norms built on the coefficients.
//!
//! Samples are read as cell averages at the finest dyadic level, which makes
//! the fast transform exact for piecewise-constant data: level `j` holds the
//! `2^j` inner products against the L2-normalized Haar functions at scale
//! `2^{-j}`, and `mean` the average over the period. The sequence norms pair
//! each stored coefficient with an extra `2^{j/2}` weight (the scale
//! bookkeeping that converts L2-normalized coefficients to the
//! sup-normalized indicator convention); under it a single unit coefficient
//! at level `j` scores `2^{js} 2^{-j/p} 2^{j/2}` in the square-function norm.

use num_complex::Complex64;
use serde_json::json;

use crate::dyadic::PeriodicSignal;
use crate::exec::{map_indexed, map_slice, sum_ordered};
use crate::report::{ellq, NormReport};
use crate::sums::tail_inv_power;
use crate::{Error, Result};

/// Haar coefficients of a signal with `2^depth` samples: `levels[j]` has
/// `2^j` entries, L2-normalized.
#[derive(Clone, Debug)]
pub struct HaarCoeffs {
    pub mean: Complex64,
    pub levels: Vec<Vec<Complex64>>,
}

impl HaarCoeffs {
    /// Wrap explicit coefficients; level `j` must hold exactly `2^j` entries
    /// and there must be at least 3 levels (signals have at least 8 samples).
    pub fn new(mean: Complex64, levels: Vec<Vec<Complex64>>) -> Result<Self> {
        if levels.len() < 3 {
            return Err(Error::NotPowerOfTwo(1 << levels.len()));
        }
        for (j, level) in levels.iter().enumerate() {
            if level.len() != 1 << j {
                return Err(Error::SizeMismatch {
                    expected: 1 << j,
                    got: level.len(),
                });
            }
        }
        Ok(HaarCoeffs { mean, levels })
    }

    /// Zero coefficients except a single entry `value` at `(j, k)`.
    pub fn single(depth: usize, j: usize, k: usize, value: Complex64) -> Result<Self> {
        let mut levels: Vec<Vec<Complex64>> = (0..depth)
            .map(|lev| vec![Complex64::new(0.0, 0.0); 1 << lev])
            .collect();
        let entry = levels
            .get_mut(j)
            .and_then(|lev| lev.get_mut(k))
            .ok_or_else(|| Error::InvalidParam(format!("no cell ({j}, {k}) in depth {depth}")))?;
        *entry = value;
        HaarCoeffs::new(Complex64::new(0.0, 0.0), levels)
    }

    /// Number of levels; synthesis reproduces `2^depth` samples.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `|mean|^2 + sum |lambda|^2`, the coefficient side of Parseval.
    pub fn coeff_l2_sq(&self) -> f64 {
        self.mean.norm_sqr()
            + sum_ordered(
                self.levels
                    .iter()
                    .flat_map(|lev| lev.iter().map(|c| c.norm_sqr())),
            )
    }

    /// JSON `{mean, levels}` with complex entries as `[re, im]` pairs.
    pub fn to_json(&self) -> String {
        let pair = |c: &Complex64| json!([c.re, c.im]);
        let levels: Vec<Vec<serde_json::Value>> = self
            .levels
            .iter()
            .map(|lev| lev.iter().map(pair).collect())
            .collect();
        json!({ "mean": pair(&self.mean), "levels": levels }).to_string()
    }
}

/// Fast Haar transform of the sample vector, samples as finest-level cell
/// averages. Exact inverse: [`haar_synthesize`].
pub fn haar_analyze(f: &PeriodicSignal) -> HaarCoeffs {
    let m = f.n().trailing_zeros() as usize;
    let mut avgs = f.samples.clone();
    let mut levels: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for j in (0..m).rev() {
        let half = 1usize << j;
        // lambda_{j,k} = 2^{-j/2} (a_{2k} - a_{2k+1}) / 2 against averages
        let w = 0.5 * 2f64.powf(-(j as f64) / 2.0);
        let mut coarse = Vec::with_capacity(half);
        let mut lev = Vec::with_capacity(half);
        for k in 0..half {
            let a = avgs[2 * k];
            let b = avgs[2 * k + 1];
            coarse.push((a + b) * 0.5);
            lev.push((a - b) * w);
        }
        avgs = coarse;
        levels.push(lev);
    }
    levels.reverse();
    HaarCoeffs {
        mean: avgs[0],
        levels,
    }
}

/// Inverse of [`haar_analyze`]; re-validates the level shape since the
/// fields are public.
pub fn haar_synthesize(c: &HaarCoeffs) -> Result<PeriodicSignal> {
    let checked = HaarCoeffs::new(c.mean, c.levels.clone())?;
    let mut avgs = vec![checked.mean];
    for (j, lev) in checked.levels.iter().enumerate() {
        let w = 2f64.powf(j as f64 / 2.0);
        let mut fine = Vec::with_capacity(2 << j);
        for (k, &lam) in lev.iter().enumerate() {
            let d = lam * w;
            fine.push(avgs[k] + d);
            fine.push(avgs[k] - d);
        }
        avgs = fine;
    }
    PeriodicSignal::new(avgs, "haar-synthesis")
}

fn check_inner_p(p: f64) -> Result<()> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParam(format!("p = {p}, need 1 < p < inf")));
    }
    Ok(())
}

/// Square-function sequence norm
/// `|| ( sum_j 2^{2js} |2^{j/2} lambda_{j,m(x)}|^2 )^{1/2} ||_p`
/// over the unit-measure finest grid. Needs `1 < p < inf`.
pub fn f_sequence_norm(c: &HaarCoeffs, s: f64, p: f64) -> Result<f64> {
    check_inner_p(p)?;
    let m = c.depth();
    let n = 1usize << m;
    let cells = map_indexed(n, |i| {
        let mut acc = 0.0;
        for j in 0..m {
            let lam = c.levels[j][i >> (m - j)];
            acc += 4f64.powf(j as f64 * s) * 2f64.powi(j as i32) * lam.norm_sqr();
        }
        acc.powf(p / 2.0)
    });
    Ok((sum_ordered(cells) / n as f64).powf(1.0 / p))
}

/// Truncated-square-function sequence norm
/// `|mean| + ( sum_k (1+k)^{-bq} || (sum_{j<=k} 2^{2j alpha} |2^{j/2} lambda|^2)^{1/2} ||_p^q )^{1/q}`.
///
/// The scale sum saturates once every level is included; the remaining
/// scales contribute the analytic tail of the weight series. The report
/// carries `equivalenceValid=false` when `alpha >= min{1/p, 1/2}`, where the
/// Haar system stops characterizing the Lipschitz space (the value is still
/// computed).
pub fn lip_sequence_norm(
    c: &HaarCoeffs,
    alpha: f64,
    b: f64,
    p: f64,
    q: f64,
) -> Result<NormReport> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParam(format!("alpha = {alpha}, need alpha > 0")));
    }
    check_inner_p(p)?;
    if !(q > 0.0) {
        return Err(Error::InvalidParam(format!("q = {q}, need q > 0")));
    }
    if q.is_finite() && !(b * q > 1.0) {
        return Err(Error::InvalidParam(format!(
            "b q = {} <= 1 makes the space trivial",
            b * q
        )));
    }
    if q.is_infinite() && !(b >= 0.0) {
        return Err(Error::InvalidParam(format!(
            "b = {b} < 0 makes the space trivial at q = inf"
        )));
    }
    let m = c.depth();
    let n = 1usize << m;
    let mut rep = NormReport::new("lip-haar-sequence", q)
        .with_meta("levels", m)
        .with_meta("equivalenceValid", alpha < (1.0 / p).min(0.5));
    rep.lp_term = Some(c.mean.norm());
    let mut acc = vec![0.0f64; n];
    let mut sat = 0.0;
    for k in 0..m {
        let wk = 4f64.powf(k as f64 * alpha) * 2f64.powi(k as i32);
        acc = map_indexed(n, |i| acc[i] + wk * c.levels[k][i >> (m - k)].norm_sqr());
        let powers = map_slice(&acc, |a| a.powf(p / 2.0));
        sat = (sum_ordered(powers) / n as f64).powf(1.0 / p);
        rep.push(k as i64, (1.0 + k as f64).powf(-b) * sat);
    }
    if q.is_finite() {
        rep.tail_qpow = sat.powf(q) * tail_inv_power(m, b * q);
    }
    Ok(rep.finish())
}

/// Besov sequence norm
/// `( sum_j ( 2^{j(s - 1/p)} (1+j)^{xi} ( sum_k |2^{j/2} lambda_{j,k}|^p )^{1/p} )^q )^{1/q}`,
/// sup convention at `q = inf`. Needs `1 < p < inf`.
pub fn b_sequence_norm(c: &HaarCoeffs, s: f64, xi: f64, p: f64, q: f64) -> Result<f64> {
    check_inner_p(p)?;
    if !(q > 0.0) {
        return Err(Error::InvalidParam(format!("q = {q}, need q > 0")));
    }
    let terms = map_indexed(c.depth(), |j| {
        let scale = 2f64.powf(j as f64 / 2.0);
        let inner = sum_ordered(c.levels[j].iter().map(|lam| (scale * lam.norm()).powf(p)))
            .powf(1.0 / p);
        2f64.powf(j as f64 * (s - 1.0 / p)) * (1.0 + j as f64).powf(xi) * inner
    });
    Ok(ellq(terms, q, 1.0, 0.0))
}
