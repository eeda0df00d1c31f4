//! Sharpness machinery: symbolic convergence criteria for weighted Hardy
//! inequalities over power-log weight families, and explicit witness series
//! whose norm columns demonstrate the divergences numerically.
//!
//! The symbolic layer works on the closure of terms
//! `n^a (1+log n)^c (1+log(1+log n))^e` with exact rational exponents.
//! Prefix sums, tails and sup-envelopes of such terms are again of this
//! shape up to constants, so convergence questions that are numerically
//! undetectable (iterated-log divergence) are decided exactly.
//!
//! The numeric layer builds the two explicit witness families (lacunary and
//! general monotone series with power-log coefficients) and tabulates a
//! source norm that stabilizes against a target norm that keeps growing.

use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use crate::closed_forms::{
    gm_lipschitz_norm, gm_lorentz_zygmund_norm, lacunary_besov_norm, lacunary_lipschitz_norm,
    GMSequence, GmFlavor, LacunarySpec, LACUNARY_J_MIN,
};
use crate::embed::Hypothesis;
use crate::exec;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// power-log terms
// ---------------------------------------------------------------------------

/// One multiplicative term `n^a (1+log n)^c (1+log(1+log n))^e` with exact
/// rational exponents. Closed under product (exponent addition) and rational
/// powers; the constant term is `a = c = e = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerLogTerm {
    pub a: Rational64,
    pub c: Rational64,
    pub e: Rational64,
}

impl PowerLogTerm {
    pub fn new(a: Rational64, c: Rational64, e: Rational64) -> Self {
        PowerLogTerm { a, c, e }
    }

    /// Term with integer exponents.
    pub fn from_ints(a: i64, c: i64, e: i64) -> Self {
        Self::new(
            Rational64::from_integer(a),
            Rational64::from_integer(c),
            Rational64::from_integer(e),
        )
    }

    /// The constant term `1`.
    pub fn constant() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn is_constant(&self) -> bool {
        *self == Self::constant()
    }

    /// Product of two terms: exponents add.
    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.a + other.a, self.c + other.c, self.e + other.e)
    }

    /// Rational power of a term: exponents scale.
    pub fn powr(&self, r: Rational64) -> Self {
        Self::new(self.a * r, self.c * r, self.e * r)
    }

    /// Growth key: lexicographic comparison decides which of two terms
    /// dominates as the variable grows.
    fn key(&self) -> (Rational64, Rational64, Rational64) {
        (self.a, self.c, self.e)
    }

    fn grows(&self) -> bool {
        self.key() > PowerLogTerm::constant().key()
    }

    /// Render with an explicit variable letter (`n` for sums, `t` for
    /// integrals).
    pub fn render(&self, var: char) -> String {
        let zero = Rational64::from_integer(0);
        let mut parts = Vec::new();
        if self.a != zero {
            parts.push(format!("{var}^({})", self.a));
        }
        if self.c != zero {
            parts.push(format!("(1+log {var})^({})", self.c));
        }
        if self.e != zero {
            parts.push(format!("(1+log(1+log {var}))^({})", self.e));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Evaluate at a concrete point (for brute-force cross-checks).
    pub fn eval(&self, n: f64) -> f64 {
        let l = 1.0 + n.ln();
        let ll = 1.0 + l.ln();
        let r = |x: Rational64| *x.numer() as f64 / *x.denom() as f64;
        n.powf(r(self.a)) * l.powf(r(self.c)) * ll.powf(r(self.e))
    }
}

impl fmt::Display for PowerLogTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render('n'))
    }
}

/// Verdict of a series or integral test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Converges,
    Diverges,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convergence::Converges => write!(f, "Converges"),
            Convergence::Diverges => write!(f, "Diverges"),
        }
    }
}

/// Iterated-log series test: `sum_n n^a (1+log n)^c (1+log(1+log n))^e`
/// converges iff `a < -1`, or `a = -1` and `c < -1`, or `a = c = -1` and
/// `e < -1`. The same rule classifies `int_1^inf` of the integrand in `t`.
pub fn powerlog_series_converges(t: &PowerLogTerm) -> Convergence {
    let m1 = Rational64::from_integer(-1);
    let conv = t.a < m1
        || (t.a == m1 && t.c < m1)
        || (t.a == m1 && t.c == m1 && t.e < m1);
    if conv {
        Convergence::Converges
    } else {
        Convergence::Diverges
    }
}

// ---------------------------------------------------------------------------
// closure calculus
// ---------------------------------------------------------------------------
//
// The primitives below realize the standard asymptotics, each exact in the
// exponents and valid up to multiplicative constants:
//
//   prefix   sum_{k<=n} t(k)  ~  n^{a+1}(..)^c(..)^e          a > -1
//                               (1+log n)^{c+1}(..)^e          a = -1, c > -1
//                               (1+log(1+log n))^{e+1}         a = c = -1, e > -1
//                               constant                       convergent
//   tail     sum_{k>=n} t(k) mirrors prefix with the inequalities reversed
//            and is infinite for divergent input.
//   sup      max_{k<=n} / sup_{k>=n} follow the sign of the growth key.
//
// The one genuinely new shape, prefix of n^{-1}(1+log n)^{-1}(1+llog n)^{-1},
// grows like a third log level and leaves the family; it is reported as an
// error rather than approximated.

fn one_r() -> Rational64 {
    Rational64::from_integer(1)
}

fn minus_one() -> Rational64 {
    Rational64::from_integer(-1)
}

/// `sum_{k<=n} t(k)` (equivalently `int_1^n`), always finite for fixed `n`.
fn prefix_sum(t: &PowerLogTerm) -> Result<PowerLogTerm> {
    if powerlog_series_converges(t) == Convergence::Converges {
        return Ok(PowerLogTerm::constant());
    }
    if t.a > minus_one() {
        return Ok(PowerLogTerm::new(t.a + one_r(), t.c, t.e));
    }
    if t.c > minus_one() {
        return Ok(PowerLogTerm::new(Rational64::from_integer(0), t.c + one_r(), t.e));
    }
    if t.e > minus_one() {
        return Ok(PowerLogTerm::new(
            Rational64::from_integer(0),
            Rational64::from_integer(0),
            t.e + one_r(),
        ));
    }
    Err(Error::OutsideClosure(format!(
        "prefix sum of {t} grows like a third-level logarithm"
    )))
}

/// `sum_{k>=n} t(k)` (equivalently `int_n^inf`); `None` means the tail is
/// infinite because the full series diverges.
fn tail_sum(t: &PowerLogTerm) -> Option<PowerLogTerm> {
    if powerlog_series_converges(t) == Convergence::Diverges {
        return None;
    }
    if t.a < minus_one() {
        return Some(PowerLogTerm::new(t.a + one_r(), t.c, t.e));
    }
    if t.c < minus_one() {
        return Some(PowerLogTerm::new(Rational64::from_integer(0), t.c + one_r(), t.e));
    }
    Some(PowerLogTerm::new(
        Rational64::from_integer(0),
        Rational64::from_integer(0),
        t.e + one_r(),
    ))
}

/// `max_{k<=n} t(k)`: the term itself when it grows, a constant otherwise.
fn sup_prefix(t: &PowerLogTerm) -> PowerLogTerm {
    if t.grows() {
        *t
    } else {
        PowerLogTerm::constant()
    }
}

/// `sup_{k>=n} t(k)`: `None` (infinite) when the term grows, the term itself
/// when it decays, a constant on the boundary.
fn sup_tail(t: &PowerLogTerm) -> Option<PowerLogTerm> {
    if t.grows() {
        None
    } else if t.key() == PowerLogTerm::constant().key() {
        Some(PowerLogTerm::constant())
    } else {
        Some(*t)
    }
}

/// Convergence of `int_0^1 t^a (1-log t)^c (1+log(1-log t))^e dt`; the
/// substitution `t -> 1/t` mirrors the series rule with `a` reflected.
fn near_zero_converges(t: &PowerLogTerm) -> bool {
    let m1 = minus_one();
    t.a > m1 || (t.a == m1 && t.c < m1) || (t.a == m1 && t.c == m1 && t.e < m1)
}

/// `int_0^t` of a near-zero power-log weight, for `t < 1`. Fails when the
/// weight is not integrable at the origin.
fn near_zero_prefix(t: &PowerLogTerm) -> Result<PowerLogTerm> {
    if !near_zero_converges(t) {
        return Err(Error::InvalidParam(format!(
            "weight {} is not integrable near 0",
            t.render('t')
        )));
    }
    if t.a > minus_one() {
        return Ok(PowerLogTerm::new(t.a + one_r(), t.c, t.e));
    }
    if t.c < minus_one() {
        return Ok(PowerLogTerm::new(Rational64::from_integer(0), t.c + one_r(), t.e));
    }
    Ok(PowerLogTerm::new(
        Rational64::from_integer(0),
        Rational64::from_integer(0),
        t.e + one_r(),
    ))
}

/// Asymptotic size of a quantity on `(1, inf)`: identically zero, a power-log
/// term up to constants, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Asym {
    Zero,
    Term(PowerLogTerm),
    Infinite,
}

impl Asym {
    fn mul(&self, other: &Asym) -> Asym {
        // A zero factor wins over an infinite one: the product weight
        // vanishes pointwise wherever the zero factor does.
        match (self, other) {
            (Asym::Zero, _) | (_, Asym::Zero) => Asym::Zero,
            (Asym::Infinite, _) | (_, Asym::Infinite) => Asym::Infinite,
            (Asym::Term(s), Asym::Term(t)) => Asym::Term(s.product(t)),
        }
    }

    fn powr(&self, r: Rational64) -> Asym {
        let zero = Rational64::from_integer(0);
        assert!(r != zero, "zeroth power of an asymptotic size");
        match self {
            Asym::Zero => {
                if r > zero {
                    Asym::Zero
                } else {
                    Asym::Infinite
                }
            }
            Asym::Infinite => {
                if r > zero {
                    Asym::Infinite
                } else {
                    Asym::Zero
                }
            }
            Asym::Term(t) => Asym::Term(t.powr(r)),
        }
    }

    /// Asymptotically dominant summand of `self + other`.
    fn max(&self, other: &Asym) -> Asym {
        match (self, other) {
            (Asym::Infinite, _) | (_, Asym::Infinite) => Asym::Infinite,
            (Asym::Zero, x) | (x, Asym::Zero) => *x,
            (Asym::Term(s), Asym::Term(t)) => {
                if s.key() >= t.key() {
                    Asym::Term(*s)
                } else {
                    Asym::Term(*t)
                }
            }
        }
    }

    fn render(&self, var: char) -> String {
        match self {
            Asym::Zero => "0".into(),
            Asym::Infinite => "infinite".into(),
            Asym::Term(t) => t.render(var),
        }
    }
}

// ---------------------------------------------------------------------------
// sequence-side criterion
// ---------------------------------------------------------------------------

/// Outcome of [`bege_criterion`].
#[derive(Clone, Debug)]
pub struct BegeOutcome {
    /// Convergence of the prefix-average condition
    /// `sum_n n^u lambda_n ((1/Gamma_n) sum_{k<=n} k^u lambda_k)^{w/v}`.
    pub prefix_condition: Convergence,
    /// Convergence of the tail condition
    /// `sum_n lambda_n (sum_{k>=n} lambda_k)^{w/v} max_{k<=n}(k^v/Gamma_k)^{w/v}`.
    pub tail_condition: Convergence,
    /// The prefix-sum inequality holds for all nonnegative nonincreasing
    /// sequences iff both conditions converge.
    pub inequality_holds: bool,
    /// Human-readable reduced summands.
    pub detail: String,
}

/// Decide the two-weight prefix-sum inequality
///
/// ```text
/// ( sum_n lambda_n (sum_{k<=n} a_k)^u )^{1/u}
///     <= C ( sum_n gamma_n a_n^v )^{1/v}      for all a_1 >= a_2 >= ... >= 0
/// ```
///
/// with `0 < u < v <= 1` and `1/w = 1/u - 1/v`, by reducing both defining
/// conditions to power-log terms and classifying them. `lambda = None` means
/// the identically zero weight, for which the inequality is trivial.
/// `Gamma_n = sum_{k<=n} gamma_k`.
pub fn bege_criterion(
    lambda: Option<&PowerLogTerm>,
    gamma: &PowerLogTerm,
    u: Rational64,
    v: Rational64,
) -> Result<BegeOutcome> {
    let zero = Rational64::from_integer(0);
    if !(u > zero && u < v && v <= one_r()) {
        return Err(Error::InvalidParam(format!(
            "exponents u = {u}, v = {v} must satisfy 0 < u < v <= 1"
        )));
    }
    let lam = match lambda {
        None => {
            return Ok(BegeOutcome {
                prefix_condition: Convergence::Converges,
                tail_condition: Convergence::Converges,
                inequality_holds: true,
                detail: "zero weight: both conditions are empty sums".into(),
            });
        }
        Some(l) => *l,
    };
    // w/v = u/(v-u), the exponent both conditions raise their averages to.
    let wv = u / (v - u);

    let big_gamma = prefix_sum(gamma)?;
    let nu_lam = lam.product(&PowerLogTerm::new(u, zero, zero));
    let prefix_nu = prefix_sum(&nu_lam)?;
    let averaged = prefix_nu.product(&big_gamma.powr(minus_one()));
    let prefix_summand = nu_lam.product(&averaged.powr(wv));
    let prefix_condition = powerlog_series_converges(&prefix_summand);

    let envelope = sup_prefix(&PowerLogTerm::new(v, zero, zero).product(&big_gamma.powr(minus_one())));
    let (tail_condition, tail_text) = match tail_sum(&lam) {
        None => (Convergence::Diverges, "infinite (the weight itself is not summable)".into()),
        Some(tail) => {
            let summand = lam.product(&tail.powr(wv)).product(&envelope.powr(wv));
            (powerlog_series_converges(&summand), summand.to_string())
        }
    };

    Ok(BegeOutcome {
        prefix_condition,
        tail_condition,
        inequality_holds: prefix_condition == Convergence::Converges
            && tail_condition == Convergence::Converges,
        detail: format!(
            "prefix condition summand ~ {prefix_summand}; tail condition summand ~ {tail_text}"
        ),
    })
}

// ---------------------------------------------------------------------------
// integral-side criterion
// ---------------------------------------------------------------------------

/// A weight on `(0, inf)` given by one power-log term near zero (in powers of
/// `t`, `(1-log t)` and `(1+log(1-log t))`) and one at infinity. `None`
/// pieces are identically zero.
#[derive(Clone, Copy, Debug)]
pub struct PiecewiseWeight {
    pub near_zero: Option<PowerLogTerm>,
    pub at_infinity: Option<PowerLogTerm>,
}

impl PiecewiseWeight {
    pub fn new(near_zero: Option<PowerLogTerm>, at_infinity: Option<PowerLogTerm>) -> Self {
        PiecewiseWeight { near_zero, at_infinity }
    }

    /// The identically zero weight.
    pub fn zero() -> Self {
        Self::new(None, None)
    }

    fn is_zero(&self) -> bool {
        self.near_zero.is_none() && self.at_infinity.is_none()
    }
}

/// Outcome of [`gp_criterion`].
#[derive(Clone, Debug)]
pub struct GpOutcome {
    /// True when the sup-form criterion was used (`Q <= R`), false for the
    /// integral form (`R < Q`).
    pub sup_form: bool,
    /// The lemma's standing hypotheses, classified symbolically.
    pub hypotheses: Vec<Hypothesis>,
    /// All hypotheses hold, so the criterion below is decisive.
    pub applicable: bool,
    /// Convergence of the criterion integral (integral form) or boundedness
    /// of the criterion envelope (sup form, `Converges` = bounded).
    pub condition: Convergence,
    /// The inequality holds: criterion satisfied and hypotheses in force.
    pub inequality_holds: bool,
    /// Reduced integrand or envelope on `(1, inf)`.
    pub detail: String,
}

/// Decide the two-weight inequality
///
/// ```text
/// ( int_0^inf w (g*)^R )^{1/R}
///     <= C ( int_0^inf v ( (1/U) int_0^t u g* )^Q )^{1/Q}   for all g
/// ```
///
/// over nonincreasing rearrangements `g*`, where `U(t) = int_0^t u`. For
/// `1 <= R < Q < inf` the decisive condition is the convergence of a
/// criterion integral against `d(U^Q)` built from `U`, `V`, `W` and the tail
/// `int_t^inf U^{-Q} v`; for `0 < Q <= R`, `1 <= R`, it is the boundedness of
/// the envelope `W^{1/R} / (V + U^Q int_t^inf U^{-Q} v)^{1/Q}`. Both are
/// reduced symbolically on `(1, inf)`; near zero the standing hypotheses pin
/// the behavior down.
pub fn gp_criterion(
    u: &PiecewiseWeight,
    v: &PiecewiseWeight,
    w: &PiecewiseWeight,
    r_exp: Rational64,
    q_exp: Rational64,
) -> Result<GpOutcome> {
    let zero = Rational64::from_integer(0);
    if !(r_exp >= one_r() && q_exp > zero) {
        return Err(Error::InvalidParam(format!(
            "exponents R = {r_exp}, Q = {q_exp} must satisfy R >= 1, Q > 0"
        )));
    }
    let sup_form = q_exp <= r_exp;
    if v.is_zero() {
        return Err(Error::InvalidParam(
            "v must not vanish identically: the right-hand side would be zero".into(),
        ));
    }
    // U must be positive and finite: u positive near zero and locally
    // integrable there.
    let u0 = u.near_zero.ok_or_else(|| {
        Error::InvalidParam("u must be positive near 0 for U to be positive".into())
    })?;
    let u_near = near_zero_prefix(&u0)?;

    // Asymptotic sizes on (1, inf). Each integral from 0 contributes the
    // constant from its (0,1) part plus the growing part from (1, t).
    let const_term = Asym::Term(PowerLogTerm::constant());
    let piece_inf = |p: &PiecewiseWeight| -> Result<Asym> {
        Ok(match p.at_infinity {
            None => Asym::Zero,
            Some(t) => Asym::Term(prefix_sum(&t)?),
        })
    };
    let near_part = |p: &PiecewiseWeight| -> Asym {
        match p.near_zero {
            None => Asym::Zero,
            Some(t) => {
                if near_zero_converges(&t) {
                    const_term
                } else {
                    Asym::Infinite
                }
            }
        }
    };
    let u_asym = near_part(u).max(&piece_inf(u)?);
    let v_asym = near_part(v).max(&piece_inf(v)?);
    let w_asym = near_part(w).max(&piece_inf(w)?);

    // tail(t) = int_t^inf U^{-Q} v for t > 1.
    let tail_asym = match v.at_infinity {
        None => Asym::Zero,
        Some(vi) => match &u_asym {
            Asym::Term(ut) => match tail_sum(&vi.product(&ut.powr(-q_exp))) {
                None => Asym::Infinite,
                Some(t) => Asym::Term(t),
            },
            Asym::Infinite => Asym::Zero,
            Asym::Zero => unreachable!("U has a positive near-zero part"),
        },
    };

    // Standing hypotheses.
    let h1 = match u.at_infinity {
        None => false,
        Some(ui) => powerlog_series_converges(&ui) == Convergence::Diverges,
    };
    let h2 = match v.near_zero {
        None => false,
        Some(v0) => !near_zero_converges(&v0.product(&u_near.powr(-q_exp))),
    };
    let h3 = match v.at_infinity {
        None => false,
        Some(vi) => powerlog_series_converges(&vi) == Convergence::Diverges,
    };
    let h4 = v.near_zero.map_or(true, |v0| near_zero_converges(&v0))
        && tail_asym != Asym::Infinite;
    let hypotheses = vec![
        Hypothesis {
            constraint: "integral of u over (0, inf) diverges".into(),
            holds: h1,
        },
        Hypothesis {
            constraint: "integral of v / U^Q over (0, 1) diverges".into(),
            holds: h2,
        },
        Hypothesis {
            constraint: "integral of v over (1, inf) diverges".into(),
            holds: h3,
        },
        Hypothesis {
            constraint: "integral of v / (U^Q(s) + U^Q(t)) in s is finite for every t".into(),
            holds: h4,
        },
    ];
    let applicable = hypotheses.iter().all(|h| h.holds);

    let denom = v_asym.max(&u_asym.powr(q_exp).mul(&tail_asym));
    let (condition, detail) = if sup_form {
        // envelope = W^{1/R} / denom^{1/Q}
        let env = w_asym.powr(one_r() / r_exp).mul(&denom.powr(-(one_r() / q_exp)));
        let cond = match env {
            Asym::Zero => Convergence::Converges,
            Asym::Infinite => Convergence::Diverges,
            Asym::Term(t) => {
                if t.grows() {
                    Convergence::Diverges
                } else {
                    Convergence::Converges
                }
            }
        };
        (cond, format!("criterion envelope ~ {} on (1, inf)", env.render('t')))
    } else {
        // integral form: P = QR/(Q-R), integrand against d(U^Q) ~ U^{Q-1} u dt.
        let p_exp = q_exp * r_exp / (q_exp - r_exp);
        let sup_s = match w_asym.powr(p_exp / r_exp).mul(&u_asym.powr(-p_exp)) {
            Asym::Zero => Asym::Zero,
            Asym::Infinite => Asym::Infinite,
            Asym::Term(t) => match sup_tail(&t) {
                None => Asym::Infinite,
                Some(s) => Asym::Term(s),
            },
        };
        let measure = match u.at_infinity {
            None => Asym::Zero,
            Some(ui) => u_asym.powr(q_exp - one_r()).mul(&Asym::Term(ui)),
        };
        let integrand = u_asym
            .powr(p_exp)
            .mul(&sup_s)
            .mul(&denom.powr(-(p_exp / q_exp + Rational64::from_integer(2))))
            .mul(&v_asym)
            .mul(&tail_asym)
            .mul(&measure);
        let cond = match integrand {
            Asym::Zero => Convergence::Converges,
            Asym::Infinite => Convergence::Diverges,
            Asym::Term(t) => powerlog_series_converges(&t),
        };
        (cond, format!("criterion integrand ~ {} on (1, inf)", integrand.render('t')))
    };

    Ok(GpOutcome {
        sup_form,
        hypotheses,
        applicable,
        condition,
        inequality_holds: applicable && condition == Convergence::Converges,
        detail,
    })
}

// ---------------------------------------------------------------------------
// witness construction
// ---------------------------------------------------------------------------

/// The two explicit witness families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessFamily {
    /// Lacunary series `sum_j 2^{-j alpha} (1+j)^{-beta} e^{i(2^j-2)x}`,
    /// truncated at top scale `J`; separates the square-function threshold.
    LacunaryLogPower,
    /// General monotone series `sum_n n^{-alpha-1+1/p} (1+log n)^{-beta}`
    /// (cosine), truncated at length `Nc`; separates rearrangement targets.
    GMLogPower,
}

/// A witness request: family, exponents and the truncation sizes at which to
/// realize it. `beta` must lie in the family's open interval, checked on
/// construction:
///
/// * lacunary: `beta < -b + 1/q + 1/2`, else the target scale sum converges
///   and nothing diverges;
/// * general monotone: `beta > -b + 1/p + 1/q`, else the witness falls out
///   of the source space.
#[derive(Clone, Debug)]
pub struct WitnessSpec {
    pub family: WitnessFamily,
    pub alpha: f64,
    pub beta: f64,
    pub b: f64,
    pub p: f64,
    pub q: f64,
    pub truncations: Vec<usize>,
}

impl WitnessSpec {
    pub fn new(
        family: WitnessFamily,
        alpha: f64,
        beta: f64,
        b: f64,
        p: f64,
        q: f64,
        truncations: Vec<usize>,
    ) -> Result<Self> {
        let ws = WitnessSpec { family, alpha, beta, b, p, q, truncations };
        ws.validate()?;
        Ok(ws)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "alpha = {}, need 0 < alpha < inf",
                self.alpha
            )));
        }
        if !(self.p >= 1.0 && self.p.is_finite() && self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "p = {}, q = {}: witnesses need 1 <= p < inf, 0 < q < inf",
                self.p, self.q
            )));
        }
        if !(self.b * self.q > 1.0) {
            return Err(Error::InvalidParam(format!(
                "b = {}, q = {}: the source scale sum needs b > 1/q",
                self.b, self.q
            )));
        }
        match self.family {
            WitnessFamily::LacunaryLogPower => {
                let right = -self.b + 1.0 / self.q + 0.5;
                if !(self.beta < right) {
                    return Err(Error::WitnessInterval(format!(
                        "beta = {} but the lacunary family needs beta < -b + 1/q + 1/2 = {}",
                        self.beta, right
                    )));
                }
            }
            WitnessFamily::GMLogPower => {
                let left = -self.b + 1.0 / self.p + 1.0 / self.q;
                if !(self.beta > left) {
                    return Err(Error::WitnessInterval(format!(
                        "beta = {} but the general monotone family needs beta > -b + 1/p + 1/q = {}",
                        self.beta, left
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A realized witness at one truncation size.
#[derive(Clone, Debug)]
pub enum Witness {
    Lacunary(LacunarySpec),
    Gm(GMSequence),
}

/// Realize the witness at every requested truncation. Lacunary truncations
/// are top scale indices `J >= 3`; general monotone truncations are sequence
/// lengths `>= 1`. Coefficients are direct formula evaluations.
pub fn make_witness(ws: &WitnessSpec) -> Result<Vec<Witness>> {
    ws.validate()?;
    let mut out = Vec::with_capacity(ws.truncations.len());
    for &size in &ws.truncations {
        out.push(match ws.family {
            WitnessFamily::LacunaryLogPower => {
                if size < LACUNARY_J_MIN {
                    return Err(Error::InvalidParam(format!(
                        "lacunary truncation {size} is below the first scale {LACUNARY_J_MIN}"
                    )));
                }
                // The scale weights 4^{j alpha} of the norm routes must stay
                // inside f64 range up to j = J.
                if ws.alpha * size as f64 > 500.0 {
                    return Err(Error::InvalidParam(format!(
                        "alpha * J = {} overflows the f64 scale weights; lower alpha or J",
                        ws.alpha * size as f64
                    )));
                }
                let coeffs = (LACUNARY_J_MIN..=size)
                    .map(|j| {
                        let jf = j as f64;
                        Complex64::new(
                            (2.0f64).powf(-jf * ws.alpha) * (1.0 + jf).powf(-ws.beta),
                            0.0,
                        )
                    })
                    .collect();
                Witness::Lacunary(LacunarySpec::new(coeffs)?)
            }
            WitnessFamily::GMLogPower => {
                if size < 1 {
                    return Err(Error::InvalidParam("empty general monotone witness".into()));
                }
                let a = (1..=size)
                    .map(|n| {
                        let nf = n as f64;
                        nf.powf(-ws.alpha - 1.0 + 1.0 / ws.p)
                            * (1.0 + nf.ln()).powf(-ws.beta)
                    })
                    .collect();
                Witness::Gm(GMSequence::new(a, GmFlavor::Cosine)?)
            }
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// divergence demonstration
// ---------------------------------------------------------------------------

/// A coefficient-level norm route applicable to a witness.
#[derive(Clone, Copy, Debug)]
pub enum NormRoute {
    LacunaryBesov { s: f64, log_exp: f64, q: f64 },
    LacunaryLipschitz { alpha: f64, b: f64, q: f64 },
    GmLipschitz { alpha: f64, b: f64, p: f64, q: f64 },
    GmLorentzZygmund { r: f64, q: f64, log_exp: f64 },
}

impl NormRoute {
    pub fn id(&self) -> String {
        match self {
            NormRoute::LacunaryBesov { s, log_exp, q } => {
                format!("lacunary-besov(s={s},log={log_exp},q={q})")
            }
            NormRoute::LacunaryLipschitz { alpha, b, q } => {
                format!("lacunary-lip(alpha={alpha},b={b},q={q})")
            }
            NormRoute::GmLipschitz { alpha, b, p, q } => {
                format!("gm-lip(alpha={alpha},b={b},p={p},q={q})")
            }
            NormRoute::GmLorentzZygmund { r, q, log_exp } => {
                format!("gm-lorentz-zygmund(r={r},q={q},log={log_exp})")
            }
        }
    }

    /// Evaluate the route on a witness of the matching family.
    pub fn apply(&self, w: &Witness) -> Result<f64> {
        match (self, w) {
            (NormRoute::LacunaryBesov { s, log_exp, q }, Witness::Lacunary(spec)) => {
                Ok(lacunary_besov_norm(spec, *s, *log_exp, *q).value)
            }
            (NormRoute::LacunaryLipschitz { alpha, b, q }, Witness::Lacunary(spec)) => {
                Ok(lacunary_lipschitz_norm(spec, *alpha, *b, *q)?.value)
            }
            (NormRoute::GmLipschitz { alpha, b, p, q }, Witness::Gm(seq)) => {
                Ok(gm_lipschitz_norm(seq, *alpha, *b, *p, *q)?.value)
            }
            (NormRoute::GmLorentzZygmund { r, q, log_exp }, Witness::Gm(seq)) => {
                gm_lorentz_zygmund_norm(seq, *r, *q, *log_exp)
            }
            _ => Err(Error::InvalidParam(format!(
                "route {} does not apply to this witness family",
                self.id()
            ))),
        }
    }
}

/// Default relative-increase threshold under which the source column counts
/// as stabilized over the last doubling.
pub const SRC_STABLE_STEP: f64 = 0.02;
/// Default relative-increase threshold above which the target column counts
/// as still growing over the last doubling.
pub const DST_GROWTH_STEP: f64 = 0.10;

/// Whether the tabulated columns follow the expected contrast.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    Holds,
    Fails,
    Vacuous,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Holds => write!(f, "expected pattern holds"),
            Pattern::Fails => write!(f, "expected pattern fails"),
            Pattern::Vacuous => write!(f, "vacuous"),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DivergenceRow {
    pub truncation: usize,
    pub src: f64,
    pub dst: f64,
    pub ratio: f64,
}

/// Tabulated demonstration: one row per truncation, plus the measured
/// relative steps over the last doubling and the verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DivergenceTable {
    pub src_route: String,
    pub dst_route: String,
    pub rows: Vec<DivergenceRow>,
    pub src_step: f64,
    pub dst_step: f64,
    pub verdict: Pattern,
}

impl DivergenceTable {
    /// Plain CSV for external plotting.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("truncation,src,dst,ratio\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:.12e},{:.12e},{:.12e}\n",
                r.truncation, r.src, r.dst, r.ratio
            ));
        }
        s
    }
}

/// Run the witness through a pair of norm routes and tabulate. The verdict
/// checks the last doubling: source increase below [`SRC_STABLE_STEP`],
/// target increase above [`DST_GROWTH_STEP`]. Fewer than two rows, or
/// identically zero columns, give a vacuous verdict.
pub fn demonstrate_divergence(
    ws: &WitnessSpec,
    src: &NormRoute,
    dst: &NormRoute,
) -> Result<DivergenceTable> {
    let witnesses = make_witness(ws)?;
    let pairs: Vec<(usize, Witness)> =
        ws.truncations.iter().copied().zip(witnesses).collect();
    demonstrate_divergence_over(&pairs, src, dst)
}

/// Same as [`demonstrate_divergence`] but over prebuilt witnesses.
pub fn demonstrate_divergence_over(
    witnesses: &[(usize, Witness)],
    src: &NormRoute,
    dst: &NormRoute,
) -> Result<DivergenceTable> {
    let rows: Vec<Result<DivergenceRow>> = exec::map_slice(witnesses, |(size, w)| {
        let s = src.apply(w)?;
        let d = dst.apply(w)?;
        Ok(DivergenceRow {
            truncation: *size,
            src: s,
            dst: d,
            ratio: if s > 0.0 { d / s } else { 0.0 },
        })
    });
    let rows: Vec<DivergenceRow> = rows.into_iter().collect::<Result<_>>()?;

    let n = rows.len();
    let zeroed = rows.iter().all(|r| r.src == 0.0 && r.dst == 0.0);
    let (src_step, dst_step, verdict) = if n < 2 || zeroed {
        (0.0, 0.0, Pattern::Vacuous)
    } else {
        let (a, b) = (&rows[n - 2], &rows[n - 1]);
        if a.src <= 0.0 || a.dst <= 0.0 {
            (0.0, 0.0, Pattern::Vacuous)
        } else {
            let ss = b.src / a.src - 1.0;
            let ds = b.dst / a.dst - 1.0;
            let ok = ss < SRC_STABLE_STEP && ds > DST_GROWTH_STEP;
            (ss, ds, if ok { Pattern::Holds } else { Pattern::Fails })
        }
    };

    Ok(DivergenceTable {
        src_route: src.id(),
        dst_route: dst.id(),
        rows,
        src_step,
        dst_step,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// catalogued demonstrations
// ---------------------------------------------------------------------------

/// Lacunary demonstration: the source is a scale sum sitting `eps = 1/2`
/// below the square-function transfer threshold, the target the Lipschitz
/// scale sum itself. With `alpha = 1/64`, `p = q = 2`, `b = 1`, `beta = -1/4`
/// the source column converges while the target grows like `J^{1/4}`, about
/// 19% per doubling of the top scale `J`. The small `alpha` keeps the scale
/// weights `4^{j alpha}` representable up to `J = 2^14`.
pub fn lacunary_demo() -> (WitnessSpec, NormRoute, NormRoute) {
    let alpha = 1.0 / 64.0;
    let ws = WitnessSpec {
        family: WitnessFamily::LacunaryLogPower,
        alpha,
        beta: -0.25,
        b: 1.0,
        p: 2.0,
        q: 2.0,
        truncations: vec![1 << 11, 1 << 12, 1 << 13, 1 << 14],
    };
    let src = NormRoute::LacunaryBesov { s: alpha, log_exp: -1.0, q: 2.0 };
    let dst = NormRoute::LacunaryLipschitz { alpha, b: 1.0, q: 2.0 };
    (ws, src, dst)
}

/// General monotone demonstration: source Lipschitz norm against the
/// Lorentz-Zygmund norm whose secondary exponent sits `xi = 4` above the
/// allowed threshold. With `alpha = 1/6`, `p = 3`, `q = 2`, `b = 1` the
/// rearrangement index is pinned at `r = 6` by `alpha - 1/p = -1/r`; the
/// source stabilizes while the target grows like `(1+log N)^{11/4}`.
pub fn gm_demo() -> (WitnessSpec, NormRoute, NormRoute) {
    let ws = WitnessSpec {
        family: WitnessFamily::GMLogPower,
        alpha: 1.0 / 6.0,
        beta: 0.75,
        b: 1.0,
        p: 3.0,
        q: 2.0,
        truncations: vec![1 << 13, 1 << 14, 1 << 15, 1 << 16],
    };
    let src = NormRoute::GmLipschitz { alpha: 1.0 / 6.0, b: 1.0, p: 3.0, q: 2.0 };
    // -b + xi = 3 with xi = 4.
    let dst = NormRoute::GmLorentzZygmund { r: 6.0, q: 2.0, log_exp: 3.0 };
    (ws, src, dst)
}
