//! Norm values with their per-scale breakdown.
//!
//! Every norm route returns a [`NormReport`] rather than a bare number, so
//! tests can compare routes term by term and callers can serialize exactly
//! what was computed. The total is always reproducible from the parts via
//! [`NormReport::recompute`].

use serde::Serialize;
use std::collections::BTreeMap;

use crate::exec::sum_ordered;

/// One scale's contribution to an outer `ell_q` aggregation: the value of the
/// weighted inner norm at scale index `k`, before raising to the `q`-th power.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScaleTerm {
    pub k: i64,
    pub term: f64,
}

/// A computed norm with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    /// The norm value.
    pub value: f64,
    /// Which route produced it, e.g. `"besov-sharp"` or `"lip-modulus"`.
    pub method: String,
    /// The additive Lebesgue term `||f||_p`, when the route has one.
    pub lp_term: Option<f64>,
    /// Weighted per-scale terms, in scale order.
    pub per_scale: Vec<ScaleTerm>,
    /// Analytic remainder of the scale sum beyond the listed terms, already
    /// raised to the `q`-th power. Zero when the sum is finite or `q = inf`.
    pub tail_qpow: f64,
    /// Quadrature weight multiplying each `term^q` (e.g. `ln 2` for dyadic
    /// integral discretizations); 1 for plain sums.
    pub quad_weight: f64,
    /// The outer aggregation exponent (`f64::INFINITY` for the sup convention).
    pub q: f64,
    /// Route-specific extras (grid size, truncation indices, tolerances).
    pub meta: BTreeMap<String, String>,
}

impl NormReport {
    pub fn new(method: &str, q: f64) -> Self {
        NormReport {
            value: 0.0,
            method: method.to_string(),
            lp_term: None,
            per_scale: Vec::new(),
            tail_qpow: 0.0,
            quad_weight: 1.0,
            q,
            meta: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, k: i64, term: f64) {
        self.per_scale.push(ScaleTerm { k, term });
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    /// Aggregate the stored terms, then add the Lebesgue term if present.
    /// Called once by each route after it has pushed all scales; also used by
    /// tests to confirm `value` matches the breakdown.
    pub fn recompute(&self) -> f64 {
        let scale_part = ellq(
            self.per_scale.iter().map(|t| t.term),
            self.q,
            self.quad_weight,
            self.tail_qpow,
        );
        self.lp_term.unwrap_or(0.0) + scale_part
    }

    /// Set `value` from the breakdown. Returns self for chaining.
    pub fn finish(mut self) -> Self {
        self.value = self.recompute();
        self
    }
}

/// The `ell_q` aggregation `(w * sum term^q + tail)^{1/q}`, with the sup for
/// `q = inf` (where `w` and `tail` are ignored; sup tails must be folded into
/// the terms by the caller).
pub fn ellq(
    terms: impl IntoIterator<Item = f64>,
    q: f64,
    quad_weight: f64,
    tail_qpow: f64,
) -> f64 {
    if q.is_infinite() {
        return terms.into_iter().fold(0.0, f64::max);
    }
    let qf = q;
    let body = sum_ordered(terms.into_iter().map(|t| t.powf(qf)));
    (quad_weight * body + tail_qpow).powf(1.0 / qf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ellq_matches_hand_values() {
        // (3^2 + 4^2)^{1/2} = 5
        assert_relative_eq!(
            ellq([3.0, 4.0], 2.0, 1.0, 0.0),
            5.0,
            max_relative = 1e-15
        );
        // sup
        assert_relative_eq!(
            ellq([3.0, 4.0, 2.0], f64::INFINITY, 7.0, 9.0),
            4.0,
            max_relative = 1e-15
        );
        // quadrature weight and tail both enter under the power
        assert_relative_eq!(
            ellq([2.0], 1.0, 3.0, 4.0),
            10.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn report_value_recomputes_from_breakdown() {
        let mut rep = NormReport::new("test", 2.0);
        rep.lp_term = Some(1.0);
        rep.push(0, 3.0);
        rep.push(1, 4.0);
        let rep = rep.finish();
        assert_relative_eq!(rep.value, 6.0, max_relative = 1e-15);
        assert_relative_eq!(rep.value, rep.recompute(), max_relative = 1e-15);
    }
}
