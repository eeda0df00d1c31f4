//! Exact space parameters.
//!
//! Integrability and smoothness indices are kept as exact rationals (with a
//! separate infinity), so decisions like `b > 1/q` or `alpha - d/p = -d/r`
//! never go through floating point. Spaces are written in a small text
//! grammar, e.g.
//!
//! ```text
//! Lip:alpha=1/2,p=2,q=2,b=1
//! Besov:s=1,p=2,q=2,b=-1/2
//! LZ:r=4,q=2,b=-1/2
//! Grand:p=2,r=2,b=-1,q=3
//! Lp:p=3     Linf     BV     CLip     C
//! Sob:alpha=1,p=2
//! ```
//!
//! plus optional `d=<n>` and `dom=torus|euclidean` on every kind (defaults
//! `d=1`, `dom=torus`).

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A rational number extended with a single positive infinity.
///
/// Ordering places `Infinity` above every finite value. Arithmetic panics on
/// the indeterminate forms (`inf - inf`, `0 * inf`); the decision engine only
/// ever forms sums and differences of finite values and reciprocals, where
/// `1/inf = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Ratio<i64>),
    Infinity,
}

pub use ExtRational::{Finite, Infinity};

impl ExtRational {
    pub fn int(n: i64) -> Self {
        Finite(Ratio::from_integer(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Finite(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Finite(r) if r.is_zero())
    }

    /// Reciprocal with `1/inf = 0` and `1/0 = inf`.
    pub fn recip(&self) -> Self {
        match self {
            Infinity => Self::zero(),
            Finite(r) if r.is_zero() => Infinity,
            Finite(r) => Finite(r.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Infinity => f64::INFINITY,
            Finite(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn abs(self) -> Self {
        match self {
            Infinity => Infinity,
            Finite(r) => Finite(r.abs()),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinity,
        }
    }
}

impl std::ops::Sub for ExtRational {
    type Output = ExtRational;
    fn sub(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a - b),
            (Infinity, Finite(_)) => Infinity,
            _ => panic!("indeterminate difference involving infinity"),
        }
    }
}

impl std::ops::Mul for ExtRational {
    type Output = ExtRational;
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a * b),
            (Infinity, x) | (x, Infinity) => {
                assert!(
                    matches!(x, Finite(r) if r.is_positive()) || x.is_infinite(),
                    "indeterminate product involving infinity"
                );
                Infinity
            }
        }
    }
}

impl std::ops::Neg for ExtRational {
    type Output = ExtRational;
    fn neg(self) -> Self {
        match self {
            Finite(r) => Finite(-r),
            Infinity => panic!("negation of infinity"),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infinity => write!(f, "inf"),
            Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Infinity);
        }
        let bad = || Error::Parse(format!("expected integer, fraction or inf, got `{s}`"));
        match s.split_once('/') {
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                let den: i64 = den.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(Finite(Ratio::new(num, den)))
            }
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(Self::int(n))
            }
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The space families the toolkit understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceKind {
    Lebesgue,
    Sobolev,
    Besov,
    Lipschitz,
    LorentzZygmund,
    GrandLorentz,
    ClassicalLip,
    BoundedVariation,
    BoundedContinuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    Torus,
    Euclidean,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Torus => write!(f, "torus"),
            Domain::Euclidean => write!(f, "euclidean"),
        }
    }
}

/// A fully specified function space.
///
/// Field use by kind:
///
/// | kind        | `smooth` | `p`        | `q`      | `log_exp`   | `secondary_log` |
/// |-------------|----------|------------|----------|-------------|-----------------|
/// | `Lebesgue`  | -        | exponent   | -        | -           | -               |
/// | `Sobolev`   | alpha    | exponent   | -        | -           | -               |
/// | `Besov`     | s        | exponent   | fine     | xi          | -               |
/// | `Lipschitz` | alpha    | exponent   | fine     | b (norm uses `-b`) | -        |
/// | `LorentzZygmund` | -   | primary r  | fine     | log power   | -               |
/// | `GrandLorentz` | -     | primary    | outer    | log power   | inner           |
///
/// The Lipschitz `log_exp` stores the positive `b` from the weight
/// `(1 - log t)^{-b}`; Besov and Lorentz-Zygmund store the signed exponent as
/// it appears in the norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpaceParams {
    pub kind: SpaceKind,
    pub smooth: Option<ExtRational>,
    pub p: Option<ExtRational>,
    pub q: Option<ExtRational>,
    pub log_exp: Option<ExtRational>,
    pub secondary_log: Option<ExtRational>,
    pub dim: u32,
    pub domain: Domain,
}

impl SpaceParams {
    fn bare(kind: SpaceKind) -> Self {
        SpaceParams {
            kind,
            smooth: None,
            p: None,
            q: None,
            log_exp: None,
            secondary_log: None,
            dim: 1,
            domain: Domain::Torus,
        }
    }

    pub fn lipschitz(alpha: ExtRational, b: ExtRational, p: ExtRational, q: ExtRational) -> Self {
        SpaceParams {
            smooth: Some(alpha),
            p: Some(p),
            q: Some(q),
            log_exp: Some(b),
            ..Self::bare(SpaceKind::Lipschitz)
        }
    }

    pub fn besov(s: ExtRational, xi: ExtRational, p: ExtRational, q: ExtRational) -> Self {
        SpaceParams {
            smooth: Some(s),
            p: Some(p),
            q: Some(q),
            log_exp: Some(xi),
            ..Self::bare(SpaceKind::Besov)
        }
    }

    pub fn lebesgue(p: ExtRational) -> Self {
        SpaceParams {
            p: Some(p),
            ..Self::bare(SpaceKind::Lebesgue)
        }
    }

    pub fn sobolev(alpha: ExtRational, p: ExtRational) -> Self {
        SpaceParams {
            smooth: Some(alpha),
            p: Some(p),
            ..Self::bare(SpaceKind::Sobolev)
        }
    }

    pub fn lorentz_zygmund(r: ExtRational, q: ExtRational, log: ExtRational) -> Self {
        SpaceParams {
            p: Some(r),
            q: Some(q),
            log_exp: Some(log),
            ..Self::bare(SpaceKind::LorentzZygmund)
        }
    }

    pub fn grand_lorentz(
        primary: ExtRational,
        outer: ExtRational,
        log: ExtRational,
        inner: ExtRational,
    ) -> Self {
        SpaceParams {
            p: Some(primary),
            q: Some(outer),
            log_exp: Some(log),
            secondary_log: Some(inner),
            ..Self::bare(SpaceKind::GrandLorentz)
        }
    }

    pub fn classical_lip() -> Self {
        Self::bare(SpaceKind::ClassicalLip)
    }

    pub fn bounded_variation() -> Self {
        Self::bare(SpaceKind::BoundedVariation)
    }

    pub fn bounded_continuous() -> Self {
        Self::bare(SpaceKind::BoundedContinuous)
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_dim(mut self, dim: u32) -> Self {
        assert!(dim >= 1);
        self.dim = dim;
        self
    }

    /// Dimension as an exact rational, for arithmetic like `alpha - d/p`.
    pub fn d(&self) -> ExtRational {
        ExtRational::int(self.dim as i64)
    }
}

impl fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(&str, ExtRational)> = Vec::new();
        let head = match self.kind {
            SpaceKind::Lebesgue => {
                if self.p == Some(Infinity) {
                    "Linf"
                } else {
                    keys.push(("p", self.p.unwrap()));
                    "Lp"
                }
            }
            SpaceKind::Sobolev => {
                keys.push(("alpha", self.smooth.unwrap()));
                keys.push(("p", self.p.unwrap()));
                "Sob"
            }
            SpaceKind::Besov => {
                keys.push(("s", self.smooth.unwrap()));
                keys.push(("p", self.p.unwrap()));
                keys.push(("q", self.q.unwrap()));
                keys.push(("b", self.log_exp.unwrap()));
                "Besov"
            }
            SpaceKind::Lipschitz => {
                keys.push(("alpha", self.smooth.unwrap()));
                keys.push(("p", self.p.unwrap()));
                keys.push(("q", self.q.unwrap()));
                keys.push(("b", self.log_exp.unwrap()));
                "Lip"
            }
            SpaceKind::LorentzZygmund => {
                keys.push(("r", self.p.unwrap()));
                keys.push(("q", self.q.unwrap()));
                keys.push(("b", self.log_exp.unwrap()));
                "LZ"
            }
            SpaceKind::GrandLorentz => {
                keys.push(("p", self.p.unwrap()));
                keys.push(("r", self.q.unwrap()));
                keys.push(("b", self.log_exp.unwrap()));
                keys.push(("q", self.secondary_log.unwrap()));
                "Grand"
            }
            SpaceKind::ClassicalLip => "CLip",
            SpaceKind::BoundedVariation => "BV",
            SpaceKind::BoundedContinuous => "C",
        };
        write!(f, "{head}")?;
        let mut sep = ':';
        for (k, v) in keys {
            write!(f, "{sep}{k}={v}")?;
            sep = ',';
        }
        if self.dim != 1 {
            write!(f, "{sep}d={}", self.dim)?;
            sep = ',';
        }
        if self.domain != Domain::Torus {
            write!(f, "{sep}dom={}", self.domain)?;
        }
        Ok(())
    }
}

/// Parse a space string in the grammar described at module level.
pub fn parse_space(input: &str) -> Result<SpaceParams> {
    let input = input.trim();
    let (head, rest) = match input.split_once(':') {
        Some((h, r)) => (h.trim(), Some(r)),
        None => (input, None),
    };

    let mut sp = match head {
        "Lp" | "L" => SpaceParams::bare(SpaceKind::Lebesgue),
        "Linf" => SpaceParams::lebesgue(Infinity),
        "Sob" => SpaceParams::bare(SpaceKind::Sobolev),
        "Besov" => SpaceParams::bare(SpaceKind::Besov),
        "Lip" => SpaceParams::bare(SpaceKind::Lipschitz),
        "LZ" => SpaceParams::bare(SpaceKind::LorentzZygmund),
        "Grand" => SpaceParams::bare(SpaceKind::GrandLorentz),
        "CLip" => SpaceParams::classical_lip(),
        "BV" => SpaceParams::bounded_variation(),
        "C" => SpaceParams::bounded_continuous(),
        other => {
            return Err(Error::Parse(format!(
                "unknown space kind `{other}` (expected Lp, Linf, Sob, Besov, Lip, LZ, Grand, CLip, BV or C)"
            )))
        }
    };

    let mut seen: Vec<String> = Vec::new();
    if let Some(rest) = rest {
        for item in rest.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, val) = item.split_once('=').ok_or_else(|| {
                Error::Parse(format!("expected key=value, got `{item}` in `{input}`"))
            })?;
            let key = key.trim();
            let val = val.trim();
            if seen.iter().any(|k| k == key) {
                return Err(Error::Parse(format!("duplicate key `{key}` in `{input}`")));
            }
            seen.push(key.to_string());
            match key {
                "d" => {
                    let d: u32 = val
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad dimension `{val}`")))?;
                    if d == 0 {
                        return Err(Error::Parse("dimension must be >= 1".into()));
                    }
                    sp.dim = d;
                }
                "dom" => {
                    sp.domain = match val {
                        "torus" => Domain::Torus,
                        "euclidean" => Domain::Euclidean,
                        other => {
                            return Err(Error::Parse(format!(
                                "unknown domain `{other}` (expected torus or euclidean)"
                            )))
                        }
                    };
                }
                _ => assign_key(&mut sp, key, val.parse()?, input)?,
            }
        }
    }

    check_required(&sp, input)?;
    Ok(sp)
}

fn assign_key(sp: &mut SpaceParams, key: &str, val: ExtRational, input: &str) -> Result<()> {
    use SpaceKind::*;
    let unknown = |key: &str| {
        Err(Error::Parse(format!(
            "key `{key}` not valid for this space kind in `{input}`"
        )))
    };
    let slot: &mut Option<ExtRational> = match (sp.kind, key) {
        (Lebesgue, "p") => &mut sp.p,
        (Sobolev, "alpha") => &mut sp.smooth,
        (Sobolev, "p") => &mut sp.p,
        (Besov, "s") => &mut sp.smooth,
        (Besov, "p") => &mut sp.p,
        (Besov, "q") => &mut sp.q,
        (Besov, "b") => &mut sp.log_exp,
        (Lipschitz, "alpha") => &mut sp.smooth,
        (Lipschitz, "p") => &mut sp.p,
        (Lipschitz, "q") => &mut sp.q,
        (Lipschitz, "b") => &mut sp.log_exp,
        (LorentzZygmund, "r" | "p") => &mut sp.p,
        (LorentzZygmund, "q") => &mut sp.q,
        (LorentzZygmund, "b") => &mut sp.log_exp,
        (GrandLorentz, "p") => &mut sp.p,
        (GrandLorentz, "r") => &mut sp.q,
        (GrandLorentz, "b") => &mut sp.log_exp,
        (GrandLorentz, "q") => &mut sp.secondary_log,
        _ => return unknown(key),
    };
    if slot.is_some() {
        return Err(Error::Parse(format!("duplicate key `{key}` in `{input}`")));
    }
    *slot = Some(val);
    Ok(())
}

fn check_required(sp: &SpaceParams, input: &str) -> Result<()> {
    use SpaceKind::*;
    let need = |cond: bool, what: &str| {
        if cond {
            Ok(())
        } else {
            Err(Error::Parse(format!("missing key `{what}` in `{input}`")))
        }
    };
    match sp.kind {
        Lebesgue => need(sp.p.is_some(), "p"),
        Sobolev => {
            need(sp.smooth.is_some(), "alpha")?;
            need(sp.p.is_some(), "p")
        }
        Besov => {
            need(sp.smooth.is_some(), "s")?;
            need(sp.p.is_some(), "p")?;
            need(sp.q.is_some(), "q")?;
            need(sp.log_exp.is_some(), "b")
        }
        Lipschitz => {
            need(sp.smooth.is_some(), "alpha")?;
            need(sp.p.is_some(), "p")?;
            need(sp.q.is_some(), "q")?;
            need(sp.log_exp.is_some(), "b")
        }
        LorentzZygmund => {
            need(sp.p.is_some(), "r")?;
            need(sp.q.is_some(), "q")?;
            need(sp.log_exp.is_some(), "b")
        }
        GrandLorentz => {
            need(sp.p.is_some(), "p")?;
            need(sp.q.is_some(), "r")?;
            need(sp.log_exp.is_some(), "b")?;
            need(sp.secondary_log.is_some(), "q")
        }
        ClassicalLip | BoundedVariation | BoundedContinuous => Ok(()),
    }
}

/// A single violated constraint, with the rule it comes from spelled out.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub constraint: String,
    pub rule: String,
    /// True when the constraint failure makes the space trivial (norm finite
    /// for nothing, or the space collapses), as opposed to undefined.
    pub trivial: bool,
}

/// Outcome of [`validate`]. Collects all violations instead of aborting at
/// the first.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub space: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the defining parameter ranges of a space.
///
/// For Lipschitz-type spaces the nontriviality condition is `b > 1/q` for
/// finite `q` and `b >= 0` for `q = inf`; below that threshold only the zero
/// function has finite seminorm structure worth measuring, and the engine
/// refuses to reason about the space.
pub fn validate(sp: &SpaceParams) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |constraint: &str, rule: &str, trivial: bool| {
        violations.push(Violation {
            constraint: constraint.to_string(),
            rule: rule.to_string(),
            trivial,
        });
    };
    let one = ExtRational::one();
    let zero = ExtRational::zero();

    match sp.kind {
        SpaceKind::Lebesgue => {
            let p = sp.p.unwrap();
            if p < one {
                push("p >= 1", "Lebesgue exponents run over [1, inf]", false);
            }
        }
        SpaceKind::Sobolev => {
            let p = sp.p.unwrap();
            if !(p > one && p < Infinity) {
                push(
                    "1 < p < inf",
                    "fractional Sobolev spaces are taken on reflexive Lebesgue ranges only",
                    false,
                );
            }
        }
        SpaceKind::Besov => {
            let p = sp.p.unwrap();
            let q = sp.q.unwrap();
            if p < one {
                push("p >= 1", "Besov integrability runs over [1, inf]", false);
            }
            if !(q > zero) {
                push("q > 0", "Besov fine index runs over (0, inf]", false);
            }
        }
        SpaceKind::Lipschitz => {
            let alpha = sp.smooth.unwrap();
            let p = sp.p.unwrap();
            let q = sp.q.unwrap();
            let b = sp.log_exp.unwrap();
            if !(alpha > zero) {
                push("alpha > 0", "the smoothness order must be positive", false);
            }
            if p < one {
                push("p >= 1", "integrability runs over [1, inf]", false);
            }
            if !(q > zero) {
                push("q > 0", "the fine index runs over (0, inf]", false);
            }
            if q.is_infinite() {
                if b < zero {
                    push(
                        "b >= 0 when q = inf",
                        "with b < 0 the weighted sup of the modulus is finite only for 0",
                        true,
                    );
                }
            } else if !(b > q.recip()) {
                push(
                    "b > 1/q",
                    "the weighted integral of the modulus diverges for every nonconstant function otherwise",
                    true,
                );
            }
        }
        SpaceKind::LorentzZygmund => {
            let r = sp.p.unwrap();
            let q = sp.q.unwrap();
            if !(r > zero && r < Infinity) {
                push("0 < r < inf", "the primary index runs over (0, inf)", false);
            }
            if !(q > zero) {
                push("q > 0", "the fine index runs over (0, inf]", false);
            }
        }
        SpaceKind::GrandLorentz => {
            let p = sp.p.unwrap();
            let outer = sp.q.unwrap();
            let inner = sp.secondary_log.unwrap();
            let b = sp.log_exp.unwrap();
            if !(p > zero && p < Infinity) {
                push("0 < p < inf", "the primary index runs over (0, inf)", false);
            }
            if !(outer > zero) {
                push("r > 0", "the outer index runs over (0, inf]", false);
            }
            if !(inner > zero) {
                push("q > 0", "the inner index runs over (0, inf]", false);
            }
            if outer.is_infinite() {
                if b > zero {
                    push(
                        "b <= 0 when r = inf",
                        "a growing log weight under a sup admits only 0",
                        true,
                    );
                }
            } else if !(b < -outer.recip()) {
                push(
                    "b < -1/r",
                    "the outer integral of the constant-in-t inner term diverges otherwise",
                    true,
                );
            }
        }
        SpaceKind::ClassicalLip | SpaceKind::BoundedVariation | SpaceKind::BoundedContinuous => {}
    }

    ValidationReport {
        space: sp.to_string(),
        violations,
    }
}

/// Rewrite a space into its canonical form when it coincides with a named
/// classical space. Idempotent.
///
/// * `Lip` with `b = 0`, `q = inf`, `1 < p < inf` is the fractional Sobolev
///   space of the same order.
/// * `Lip` with `alpha = 1`, `b = 0`, `q = inf` is `CLip` for `p = inf` and
///   `BV` for `p = 1`.
/// * `Sob` with `alpha = 0` is plain Lebesgue.
pub fn canonical_identities(sp: &SpaceParams) -> SpaceParams {
    let zero = ExtRational::zero();
    let one = ExtRational::one();
    match sp.kind {
        SpaceKind::Lipschitz => {
            let (alpha, p, q, b) = (
                sp.smooth.unwrap(),
                sp.p.unwrap(),
                sp.q.unwrap(),
                sp.log_exp.unwrap(),
            );
            if b == zero && q.is_infinite() {
                if alpha == one && p.is_infinite() {
                    return SpaceParams::classical_lip()
                        .with_dim(sp.dim)
                        .with_domain(sp.domain);
                }
                if alpha == one && p == one {
                    return SpaceParams::bounded_variation()
                        .with_dim(sp.dim)
                        .with_domain(sp.domain);
                }
                if p > one && p < Infinity {
                    return SpaceParams::sobolev(alpha, p)
                        .with_dim(sp.dim)
                        .with_domain(sp.domain);
                }
            }
            *sp
        }
        SpaceKind::Sobolev => {
            if sp.smooth == Some(zero) {
                SpaceParams::lebesgue(sp.p.unwrap())
                    .with_dim(sp.dim)
                    .with_domain(sp.domain)
            } else {
                *sp
            }
        }
        _ => *sp,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_parse_and_display_round_trip() {
        for s in ["0", "1", "-3", "1/2", "-7/3", "inf"] {
            assert_eq!(r(s).to_string(), s);
        }
        assert_eq!(r("2/4"), r("1/2"));
        assert_eq!(r("-2/-4"), r("1/2"));
        assert_eq!(r("Inf"), Infinity);
        assert!("1/0".parse::<ExtRational>().is_err());
        assert!("x".parse::<ExtRational>().is_err());
        assert!("1.5".parse::<ExtRational>().is_err());
    }

    #[test]
    fn rational_order_and_recip() {
        assert!(Infinity > r("1000000"));
        assert!(r("1/3") < r("1/2"));
        assert_eq!(Infinity.recip(), r("0"));
        assert_eq!(r("0").recip(), Infinity);
        assert_eq!(r("2/3").recip(), r("3/2"));
        assert_eq!(r("1/2").min(Infinity), r("1/2"));
        assert_eq!(r("1/2").max(r("2")), r("2"));
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(r("1/2") + r("1/3"), r("5/6"));
        assert_eq!(r("1/2") - r("1/3"), r("1/6"));
        assert_eq!(r("2/3") * r("3/4"), r("1/2"));
        assert_eq!(-r("1/2"), r("-1/2"));
        assert_eq!(Infinity + r("-5"), Infinity);
        assert_eq!(Infinity - r("5"), Infinity);
    }

    #[test]
    fn space_grammar_round_trips() {
        for s in [
            "Lip:alpha=1/2,p=2,q=2,b=1",
            "Besov:s=1,p=2,q=2,b=-1/2",
            "LZ:r=4,q=2,b=-1/2",
            "Grand:p=2,r=2,b=-1,q=3",
            "Lp:p=3",
            "Linf",
            "Sob:alpha=1,p=2",
            "BV",
            "CLip",
            "C",
            "Lip:alpha=1,p=2,q=inf,b=0,d=2,dom=euclidean",
        ] {
            let sp = parse_space(s).unwrap();
            assert_eq!(sp.to_string(), s, "round trip failed for `{s}`");
            let again = parse_space(&sp.to_string()).unwrap();
            assert_eq!(sp, again);
        }
    }

    #[test]
    fn space_grammar_field_mapping() {
        let sp = parse_space("Lip:alpha=1/2,p=2,q=3,b=5/4").unwrap();
        assert_eq!(sp.kind, SpaceKind::Lipschitz);
        assert_eq!(sp.smooth, Some(r("1/2")));
        assert_eq!(sp.p, Some(r("2")));
        assert_eq!(sp.q, Some(r("3")));
        assert_eq!(sp.log_exp, Some(r("5/4")));
        assert_eq!(sp.dim, 1);
        assert_eq!(sp.domain, Domain::Torus);

        let gr = parse_space("Grand:p=2,r=3,b=-1,q=5").unwrap();
        assert_eq!(gr.p, Some(r("2")));
        assert_eq!(gr.q, Some(r("3")));
        assert_eq!(gr.log_exp, Some(r("-1")));
        assert_eq!(gr.secondary_log, Some(r("5")));

        // LZ primary index accepts both spellings.
        assert_eq!(
            parse_space("LZ:p=4,q=2,b=-1/2").unwrap(),
            parse_space("LZ:r=4,q=2,b=-1/2").unwrap()
        );
    }

    #[test]
    fn space_grammar_rejects_malformed_input() {
        for bad in [
            "Frob:p=2",
            "Lip:alpha=1/2,p=2,q=2",
            "Lip:alpha=1/2,p=2,q=2,b=1,z=3",
            "Lip:alpha=1/2,p=2,q=2,b=1,b=2",
            "Lip:alpha",
            "Lp",
            "Lp:p=1/0",
            "Besov:s=1,p=2,q=2,b=0,dom=plane",
            "Besov:s=1,p=2,q=2,b=0,d=0",
            "C:p=2",
        ] {
            assert!(parse_space(bad).is_err(), "`{bad}` should fail to parse");
        }
    }

    #[test]
    fn validation_flags_trivial_lipschitz() {
        let ok = parse_space("Lip:alpha=1,p=2,q=2,b=1").unwrap();
        assert!(validate(&ok).is_valid());

        // b = 1/q is already trivial.
        let trivial = parse_space("Lip:alpha=1,p=2,q=2,b=1/2").unwrap();
        let report = validate(&trivial);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.trivial));

        let sup = parse_space("Lip:alpha=1,p=2,q=inf,b=0").unwrap();
        assert!(validate(&sup).is_valid());
        let sup_bad = parse_space("Lip:alpha=1,p=2,q=inf,b=-1/4").unwrap();
        assert!(!validate(&sup_bad).is_valid());
    }

    #[test]
    fn validation_collects_all_violations() {
        let sp = parse_space("Lip:alpha=-1,p=1/2,q=2,b=0").unwrap();
        let report = validate(&sp);
        assert_eq!(report.violations.len(), 3);
    }

    #[test]
    fn validation_other_kinds() {
        assert!(validate(&parse_space("Lp:p=1").unwrap()).is_valid());
        assert!(!validate(&parse_space("Lp:p=1/2").unwrap()).is_valid());
        assert!(validate(&parse_space("Sob:alpha=1,p=2").unwrap()).is_valid());
        assert!(!validate(&parse_space("Sob:alpha=1,p=1").unwrap()).is_valid());
        assert!(!validate(&parse_space("Sob:alpha=1,p=inf").unwrap()).is_valid());
        assert!(validate(&parse_space("Grand:p=2,r=2,b=-1,q=3").unwrap()).is_valid());
        // b = -1/r is trivial for the grand scale.
        assert!(!validate(&parse_space("Grand:p=2,r=2,b=-1/2,q=3").unwrap()).is_valid());
        assert!(validate(&parse_space("LZ:r=4,q=2,b=17").unwrap()).is_valid());
        assert!(!validate(&parse_space("LZ:r=inf,q=2,b=0").unwrap()).is_valid());
    }

    #[test]
    fn canonical_identities_rewrite_and_idempotence() {
        let cases = [
            ("Lip:alpha=1/2,p=2,q=inf,b=0", "Sob:alpha=1/2,p=2"),
            ("Lip:alpha=1,p=inf,q=inf,b=0", "CLip"),
            ("Lip:alpha=1,p=1,q=inf,b=0", "BV"),
            ("Sob:alpha=0,p=3", "Lp:p=3"),
            ("Lip:alpha=1,p=2,q=2,b=1", "Lip:alpha=1,p=2,q=2,b=1"),
            ("Besov:s=1,p=2,q=2,b=0", "Besov:s=1,p=2,q=2,b=0"),
        ];
        for (input, want) in cases {
            let sp = parse_space(input).unwrap();
            let canon = canonical_identities(&sp);
            assert_eq!(canon.to_string(), want, "for `{input}`");
            assert_eq!(canonical_identities(&canon), canon, "idempotence");
        }
    }

    #[test]
    fn canonical_identities_preserve_dim_and_domain() {
        let sp = parse_space("Lip:alpha=1,p=1,q=inf,b=0,d=2,dom=euclidean").unwrap();
        let canon = canonical_identities(&sp);
        assert_eq!(canon.kind, SpaceKind::BoundedVariation);
        assert_eq!(canon.dim, 2);
        assert_eq!(canon.domain, Domain::Euclidean);
    }
}
