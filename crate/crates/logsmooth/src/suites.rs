//! Named verification suites: fixed sets of cross-route and criterion checks
//! over the bundled corpus, reported one line per check. These back the
//! `verify` command and the acceptance tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_forms::{
    gm_lipschitz_norm, gm_lorentz_zygmund_norm, lacunary_besov_norm, lacunary_lipschitz_norm,
    realize_gm, realize_lacunary, GMSequence, GmFlavor, LacunarySpec,
};
use crate::corpus::{self, Corpus};
use crate::dyadic::{
    fourier_means_lip_norm, lipschitz_norm_truncated_square, make_partition, PartitionKind,
    PeriodicSignal,
};
use crate::embed::{decide_embedding, Verdict};
use crate::haar::{haar_analyze, lip_sequence_norm};
use crate::moduli::{lipschitz_norm_modulus, marchaud_check, modulus, modulus_curve};
use crate::params::{Domain, ExtRational as X, SpaceParams};
use crate::rearrange::{lorentz_zygmund_norm, rearrangement};
use crate::sharpness::{bege_criterion, gp_criterion, Convergence, PiecewiseWeight, PowerLogTerm};
use crate::{Error, Result};

pub const SUITE_NAMES: &[&str] =
    &["equivalence", "modulus-properties", "hardy", "engine-table", "haar"];

/// Ceiling for the Marchaud-type comparison ratio over the bundled corpus.
pub const MARCHAUD_CEILING: f64 = 8.0;

/// One named check with its measured quantity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub measure: String,
    pub passed: bool,
}

fn check(name: &str, passed: bool, measure: String) -> Check {
    Check { name: name.into(), measure, passed }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// An empty corpus produces no checks; that counts as a (warned) pass.
    pub fn is_vacuous(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{tag}] {}: {}\n", c.name, c.measure));
        }
        if self.is_vacuous() {
            out.push_str(&format!(
                "suite {}: PASS (vacuous: no corpus entries)\n",
                self.suite
            ));
        } else {
            let ok = self.checks.iter().filter(|c| c.passed).count();
            let tag = if self.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "suite {}: {tag} ({ok}/{} checks)\n",
                self.suite,
                self.checks.len()
            ));
        }
        out
    }
}

/// Seed for the randomized fixtures in the `equivalence` suite. The other
/// suites are deterministic and ignore it.
pub const DEFAULT_SUITE_SEED: u64 = 7;

/// Run a named suite on the bundled corpus.
pub fn run_suite(name: &str) -> Result<SuiteReport> {
    run_suite_on(corpus::bundled(), name)
}

/// Run a named suite on an explicit corpus.
pub fn run_suite_on(c: &Corpus, name: &str) -> Result<SuiteReport> {
    run_suite_on_seeded(c, name, DEFAULT_SUITE_SEED)
}

/// [`run_suite`] with an explicit seed for the randomized fixtures.
pub fn run_suite_seeded(name: &str, seed: u64) -> Result<SuiteReport> {
    run_suite_on_seeded(corpus::bundled(), name, seed)
}

/// Run a named suite on an explicit corpus with an explicit seed.
pub fn run_suite_on_seeded(c: &Corpus, name: &str, seed: u64) -> Result<SuiteReport> {
    let checks = match name {
        "equivalence" => equivalence_checks(c, seed)?,
        "modulus-properties" => modulus_checks(c)?,
        "hardy" => hardy_checks()?,
        "engine-table" => engine_table_checks(),
        "haar" => haar_checks(c)?,
        _ => {
            return Err(Error::Parse(format!(
                "unknown suite `{name}`; known suites: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteReport { suite: name.into(), checks })
}

/// Running min/max of a positive quantity.
struct Band {
    min: f64,
    max: f64,
}

impl Band {
    fn new() -> Self {
        Band { min: f64::INFINITY, max: f64::NEG_INFINITY }
    }

    fn add(&mut self, x: f64) {
        self.min = self.min.min(x);
        self.max = self.max.max(x);
    }

    fn spread(&self) -> f64 {
        self.max / self.min
    }
}

// ---------------------------------------------------------------------------
// equivalence
// ---------------------------------------------------------------------------

fn equivalence_checks(c: &Corpus, seed: u64) -> Result<Vec<Check>> {
    if c.is_empty() {
        return Ok(Vec::new());
    }
    let mut checks = vec![coincidence_check_seeded(seed)?, route_agreement_check(c)?];
    checks.extend(gm_closed_form_checks()?);
    Ok(checks)
}

/// Lacunary coincidence at p = q = 2: the Lipschitz norm with log weight
/// `-b` and the Besov norm with log exponent `-b + 1/2` compute the same
/// space, so their ratio over random specs stays in a narrow band that does
/// not drift as the top scale grows from 8 to 12.
pub fn coincidence_check() -> Result<Check> {
    coincidence_check_seeded(DEFAULT_SUITE_SEED)
}

/// [`coincidence_check`] over specs drawn from an explicit seed.
pub fn coincidence_check_seeded(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut band12 = Band::new();
    let mut band8 = Band::new();
    for _ in 0..30 {
        let s = 0.4 + 1.8 * rng.gen::<f64>();
        let coeffs: Vec<Complex64> = (3..=12)
            .map(|j| {
                let mag = (2f64).powf(-(j as f64) * s) * (0.25 + 0.75 * rng.gen::<f64>());
                let phase = std::f64::consts::TAU * rng.gen::<f64>();
                Complex64::new(mag * phase.cos(), mag * phase.sin())
            })
            .collect();
        let spec8 = LacunarySpec::new(coeffs[..6].to_vec())?;
        let spec12 = LacunarySpec::new(coeffs)?;
        for alpha in [0.5, 1.0, 2.0] {
            for b in [1.0, 2.0] {
                for (spec, band) in [(&spec12, &mut band12), (&spec8, &mut band8)] {
                    let lip = lacunary_lipschitz_norm(spec, alpha, b, 2.0)?.value;
                    let bes = lacunary_besov_norm(spec, alpha, -b + 0.5, 2.0).value;
                    band.add(lip / bes);
                }
            }
        }
    }
    let spread = band12.spread();
    let drift_lo = (band12.min / band8.min - 1.0).abs();
    let drift_hi = (band12.max / band8.max - 1.0).abs();
    Ok(check(
        "lacunary-coincidence",
        spread <= 4.0 && drift_lo < 0.10 && drift_hi < 0.10,
        format!(
            "ratio in [{:.3}, {:.3}], spread {:.2} (<= 4), endpoint drift {:.1}%/{:.1}% (< 10%)",
            band12.min,
            band12.max,
            spread,
            100.0 * drift_lo,
            100.0 * drift_hi
        ),
    ))
}

/// The three Lipschitz routes (truncated square function, modulus, Fourier
/// means) agree pairwise within a factor 10 on realized lacunary signals,
/// and the pairwise ratios move < 5% when the grid doubles.
pub fn route_agreement_check(c: &Corpus) -> Result<Check> {
    let sp = SpaceParams::lipschitz(X::frac(1, 2), X::int(1), X::int(2), X::int(2));
    let mut worst_factor = 1.0f64;
    let mut worst_drift = 0.0f64;
    for (_, spec) in &c.lacunary {
        let mut ratios = [[0.0f64; 3]; 2];
        for (idx, n) in [1usize << 12, 1 << 13].into_iter().enumerate() {
            let f = realize_lacunary(spec, n)?;
            let part = make_partition(n, PartitionKind::Sharp)?;
            let square = lipschitz_norm_truncated_square(&f, &part, &sp)?.value;
            let modu = lipschitz_norm_modulus(&f, &sp, 12)?.value;
            let means = fourier_means_lip_norm(&f, 0.5, 1.0, 2.0, 2.0)?.value;
            ratios[idx] = [square / modu, square / means, modu / means];
        }
        for k in 0..3 {
            let r = ratios[0][k];
            worst_factor = worst_factor.max(r.max(1.0 / r));
            worst_drift = worst_drift.max((ratios[1][k] / ratios[0][k] - 1.0).abs());
        }
    }
    Ok(check(
        "lipschitz-route-agreement",
        worst_factor <= 10.0 && worst_drift < 0.05,
        format!(
            "worst pairwise factor {:.2} (<= 10), worst drift on doubling {:.2}% (< 5%)",
            worst_factor,
            100.0 * worst_drift
        ),
    ))
}

fn formula_gm_sequences() -> Result<Vec<GMSequence>> {
    let mut seqs = Vec::new();
    for gamma in [0.7, 0.8, 0.9, 1.0, 1.1] {
        for delta in [0.0, 0.5] {
            let a: Vec<f64> = (1..=2000u32)
                .map(|n| {
                    let nf = n as f64;
                    nf.powf(-gamma) * (1.0 + nf.ln()).powf(-delta)
                })
                .collect();
            seqs.push(GMSequence::new(a, GmFlavor::Cosine)?);
        }
    }
    Ok(seqs)
}

/// Coefficient-level closed forms against the signal-level routes for ten
/// monotone power-log sequences realized on the 2^12-grid.
pub fn gm_closed_form_checks() -> Result<Vec<Check>> {
    let n = 1usize << 12;
    let seqs = formula_gm_sequences()?;
    let signals: Vec<PeriodicSignal> =
        seqs.iter().map(|s| realize_gm(s, n)).collect::<Result<_>>()?;

    let grid = [(0.15, 1.0), (0.25, 1.0), (0.35, 1.0), (0.15, 2.0), (0.25, 2.0), (0.35, 2.0)];
    let mut band = Band::new();
    for (seq, f) in seqs.iter().zip(&signals) {
        for (alpha, b) in grid {
            let closed = gm_lipschitz_norm(seq, alpha, b, 2.0, 2.0)?.value;
            let sp = SpaceParams::lipschitz(
                X::frac((alpha * 20.0) as i64, 20),
                X::int(b as i64),
                X::int(2),
                X::int(2),
            );
            let signal = lipschitz_norm_modulus(f, &sp, 12)?.value;
            band.add(closed / signal);
        }
    }
    let lip_check = check(
        "gm-lipschitz-closed-form",
        band.spread() <= 10.0,
        format!(
            "closed/signal ratio in [{:.3}, {:.3}], spread {:.2} (<= 10)",
            band.min,
            band.max,
            band.spread()
        ),
    );

    let mut worst = 1.0f64;
    let mut band = Band::new();
    for (seq, f) in seqs.iter().zip(&signals) {
        let prof = rearrangement(f);
        for (r, q, b) in [(3.0, 2.0, 0.5), (2.0, 1.0, 0.0)] {
            let closed = gm_lorentz_zygmund_norm(seq, r, q, b)?;
            let signal = lorentz_zygmund_norm(&prof, r, q, b)?;
            let ratio = closed / signal;
            band.add(ratio);
            worst = worst.max(ratio.max(1.0 / ratio));
        }
    }
    let lz_check = check(
        "gm-lorentz-zygmund-closed-form",
        worst <= 10.0,
        format!(
            "closed/signal ratio in [{:.3}, {:.3}], worst factor {:.2} (<= 10)",
            band.min, band.max, worst
        ),
    );
    Ok(vec![lip_check, lz_check])
}

// ---------------------------------------------------------------------------
// modulus-properties
// ---------------------------------------------------------------------------

pub fn modulus_checks(c: &Corpus) -> Result<Vec<Check>> {
    if c.is_empty() {
        return Ok(Vec::new());
    }
    let signals = c.realized(1 << 10)?;
    let combos = [(0.5, 2.0), (1.0, 3.0)];

    let mut worst_defect = 0.0f64;
    let mut worst_quasi = 0.0f64;
    for f in &signals {
        for (alpha, p) in combos {
            let curve = modulus_curve(f, alpha, p, 10)?;
            worst_defect = worst_defect.max(curve.monotonicity_defect());
            worst_quasi = worst_quasi.max(curve.quasi_decrease_factor());
        }
    }
    let monotone = check(
        "modulus-nondecreasing",
        worst_defect <= 1e-9,
        format!("worst relative monotonicity defect {worst_defect:.2e} (<= 1e-9)"),
    );
    let quasi = check(
        "modulus-quasi-decrease",
        worst_quasi <= 8.0,
        format!("worst quasi-decrease factor of omega/t^alpha {worst_quasi:.2} (<= 8)"),
    );

    let flat = PeriodicSignal::from_real(vec![3.7; 1 << 9], "constant")?;
    let mut worst_const = 0.0f64;
    for alpha in [0.5, 1.0] {
        for t in [1.0, 0.37] {
            worst_const = worst_const.max(modulus(&flat, alpha, t, 2.0)?);
        }
    }
    let vanishes = check(
        "modulus-vanishes-on-constants",
        worst_const <= 3.7 * 1e-12,
        format!("modulus of a constant {worst_const:.2e} (<= 3.7e-12)"),
    );

    let f0 = &signals[0];
    let scale = -2.5f64;
    let scaled = PeriodicSignal::new(
        f0.samples.iter().map(|z| z * scale).collect(),
        "scaled",
    )?;
    let mut worst_rel = 0.0f64;
    for (alpha, p) in combos {
        let base = modulus(f0, alpha, 0.3, p)?;
        let big = modulus(&scaled, alpha, 0.3, p)?;
        worst_rel = worst_rel.max((big / (scale.abs() * base) - 1.0).abs());
    }
    let homogeneous = check(
        "modulus-homogeneous",
        worst_rel <= 1e-12,
        format!("relative homogeneity error {worst_rel:.2e} (<= 1e-12)"),
    );

    let mut worst_marchaud = 0.0f64;
    for f in &signals {
        let rep = marchaud_check(f, 0.5, 0.5, 2.0, 10)?;
        worst_marchaud = worst_marchaud.max(rep.max_ratio);
    }
    let marchaud = check(
        "marchaud-comparison",
        worst_marchaud <= MARCHAUD_CEILING,
        format!("max lhs/rhs ratio {worst_marchaud:.2} (<= {MARCHAUD_CEILING})"),
    );

    Ok(vec![monotone, vanishes, homogeneous, quasi, marchaud])
}

// ---------------------------------------------------------------------------
// hardy
// ---------------------------------------------------------------------------

pub fn hardy_checks() -> Result<Vec<Check>> {
    let rat = |n: i64, d: i64| num_rational::Rational64::new(n, d);
    let term = |a: (i64, i64), c: (i64, i64)| {
        PowerLogTerm::new(rat(a.0, a.1), rat(c.0, c.1), rat(0, 1))
    };

    // Sequence-side criterion on the embedding-derived weights with
    // p = 4, q = 2, r = 3, b = 1.
    let lambda = term((-1, 1), (-2, 1));
    let gamma = term((-1, 4), (-3, 2));
    let out = bege_criterion(Some(&lambda), &gamma, rat(1, 2), rat(3, 4))?;
    let seq_check = check(
        "prefix-sum-criterion",
        out.prefix_condition == Convergence::Converges
            && out.tail_condition == Convergence::Diverges
            && !out.inequality_holds,
        format!(
            "({}, {}, holds={}); {}",
            out.prefix_condition, out.tail_condition, out.inequality_holds, out.detail
        ),
    );

    // Integral-form criterion on the jump-embedding weights
    // (d = 1, alpha = 1, p = 2, q = 8, r = 4, b = 1).
    let u = PiecewiseWeight::new(Some(term((0, 1), (0, 1))), Some(term((2, 1), (0, 1))));
    let v = PiecewiseWeight::new(Some(term((3, 1), (0, 1))), Some(term((11, 1), (-8, 1))));
    let w = PiecewiseWeight::new(None, Some(PowerLogTerm::new(rat(5, 1), rat(-7, 2), rat(0, 1))));
    let out = gp_criterion(&u, &v, &w, rat(2, 1), rat(4, 1))?;
    let integral_check = check(
        "rearrangement-criterion-integral",
        out.applicable && out.condition == Convergence::Diverges && !out.inequality_holds,
        format!("applicable={}, {}; {}", out.applicable, out.condition, out.detail),
    );

    // Sup-form criterion at the failing endpoint r0 = r = 4
    // (d = 1, p = 2, q = 2, b = 1, alpha = 1/4).
    let sup_weights = |r0: i64| {
        let u = PiecewiseWeight::new(Some(term((0, 1), (0, 1))), Some(term((1, 2), (0, 1))));
        let v = PiecewiseWeight::new(Some(term((0, 1), (0, 1))), Some(term((1, 2), (-2, 1))));
        let w = PiecewiseWeight::new(
            Some(term((r0 - 2, 1), (0, 1))),
            Some(term((r0 - 2, 1), (0, 1))),
        );
        (u, v, w)
    };
    let (u, v, w) = sup_weights(4);
    let out = gp_criterion(&u, &v, &w, rat(4, 2), rat(1, 1))?;
    let sup_check = check(
        "rearrangement-criterion-sup",
        out.sup_form && out.applicable && out.condition == Convergence::Diverges,
        format!("applicable={}, {}; {}", out.applicable, out.condition, out.detail),
    );

    // Positive control one index inside: r0 = 3 satisfies the criterion.
    let (u, v, w) = sup_weights(3);
    let out = gp_criterion(&u, &v, &w, rat(3, 2), rat(1, 1))?;
    let control_check = check(
        "rearrangement-criterion-control",
        out.inequality_holds,
        format!("applicable={}, {}; {}", out.applicable, out.condition, out.detail),
    );

    Ok(vec![seq_check, integral_check, sup_check, control_check])
}

// ---------------------------------------------------------------------------
// engine-table
// ---------------------------------------------------------------------------

pub fn engine_table_checks() -> Vec<Check> {
    let lip = |a: X, b: X, p: X, q: X| SpaceParams::lipschitz(a, b, p, q);
    let rows: Vec<(&str, SpaceParams, SpaceParams, Verdict)> = vec![
        (
            "classical-lip-above",
            lip(X::frac(9, 4), X::int(1), X::int(3), X::int(2))
                .with_dim(3)
                .with_domain(Domain::Euclidean),
            SpaceParams::classical_lip().with_dim(3).with_domain(Domain::Euclidean),
            Verdict::Embeds,
        ),
        (
            "classical-lip-boundary",
            lip(X::int(2), X::int(1), X::int(3), X::int(2))
                .with_dim(3)
                .with_domain(Domain::Euclidean),
            SpaceParams::classical_lip().with_dim(3).with_domain(Domain::Euclidean),
            Verdict::DoesNotEmbed,
        ),
        (
            "bounded-variation-above",
            lip(X::frac(3, 2), X::int(1), X::int(1), X::int(2))
                .with_dim(2)
                .with_domain(Domain::Euclidean),
            SpaceParams::bounded_variation().with_dim(2).with_domain(Domain::Euclidean),
            Verdict::Embeds,
        ),
        (
            "bounded-variation-boundary",
            lip(X::int(1), X::int(1), X::int(1), X::int(2)).with_dim(2),
            SpaceParams::bounded_variation().with_dim(2),
            Verdict::DoesNotEmbed,
        ),
        (
            "boundedness-above",
            lip(X::int(1), X::int(1), X::int(2), X::int(2)),
            SpaceParams::lebesgue(X::Infinity),
            Verdict::Embeds,
        ),
        (
            "boundedness-below",
            lip(X::frac(1, 2), X::int(1), X::int(2), X::int(2)),
            SpaceParams::lebesgue(X::Infinity),
            Verdict::DoesNotEmbed,
        ),
        (
            "lebesgue-window-inside",
            lip(X::frac(1, 4), X::int(1), X::int(2), X::int(2)),
            SpaceParams::lebesgue(X::int(3)),
            Verdict::Embeds,
        ),
        (
            "lebesgue-window-endpoint",
            lip(X::frac(1, 4), X::int(1), X::int(2), X::int(2)),
            SpaceParams::lebesgue(X::int(4)),
            Verdict::DoesNotEmbed,
        ),
        (
            "lorentz-zygmund-boundary",
            lip(X::frac(1, 4), X::int(1), X::int(2), X::int(2)),
            SpaceParams::lorentz_zygmund(X::int(4), X::int(2), X::frac(-1, 2)),
            Verdict::Embeds,
        ),
        (
            "lorentz-zygmund-above",
            lip(X::frac(1, 4), X::int(1), X::int(2), X::int(2)),
            SpaceParams::lorentz_zygmund(X::int(4), X::int(2), X::frac(-1, 4)),
            Verdict::DoesNotEmbed,
        ),
        (
            "coincidence-pair",
            lip(X::int(1), X::int(1), X::int(2), X::int(2)),
            SpaceParams::besov(X::int(1), X::frac(-1, 2), X::int(2), X::int(2)),
            Verdict::Embeds,
        ),
        (
            "coincidence-off-pair",
            lip(X::int(1), X::int(1), X::int(3), X::int(3)).with_domain(Domain::Euclidean),
            SpaceParams::besov(X::int(1), X::frac(-1, 2), X::int(3), X::int(3))
                .with_domain(Domain::Euclidean),
            Verdict::DoesNotEmbed,
        ),
    ];
    rows.into_iter()
        .map(|(name, src, dst, want)| {
            let dec = decide_embedding(&src, &dst);
            check(
                name,
                dec.verdict == want,
                format!("{src} -> {dst}: {:?} via {} (expected {want:?})", dec.verdict, dec.rule_id),
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// haar
// ---------------------------------------------------------------------------

pub fn haar_checks(c: &Corpus) -> Result<Vec<Check>> {
    if c.is_empty() {
        return Ok(Vec::new());
    }
    let sizes = [1usize << 8, 1 << 9, 1 << 10, 1 << 11, 1 << 12];
    let mut checks = Vec::new();
    for (alpha_num, alpha) in [(1i64, 0.2f64), (3, 0.3)] {
        let sp = SpaceParams::lipschitz(
            X::frac(alpha_num, if alpha_num == 1 { 5 } else { 10 }),
            X::int(1),
            X::int(2),
            X::int(2),
        );
        let mut band = Band::new();
        for t in &c.trig {
            for &n in &sizes {
                let f = t.realize(n)?;
                let seq = lip_sequence_norm(&haar_analyze(&f), alpha, 1.0, 2.0, 2.0)?.value;
                let modu = lipschitz_norm_modulus(&f, &sp, 10)?.value;
                band.add(seq / modu);
            }
        }
        checks.push(check(
            &format!("haar-vs-modulus-alpha-{alpha}"),
            band.spread() <= 10.0,
            format!(
                "sequence/modulus ratio in [{:.3}, {:.3}] over N = 2^8..2^12, spread {:.2} (<= 10)",
                band.min,
                band.max,
                band.spread()
            ),
        ));
    }

    let f = c.trig[0].realize(1 << 10)?;
    let rep = lip_sequence_norm(&haar_analyze(&f), 0.8, 1.0, 2.0, 2.0)?;
    let flag = rep.meta.get("equivalenceValid").map(String::as_str);
    checks.push(check(
        "haar-outside-regime-flagged",
        flag == Some("false"),
        format!("alpha = 0.8 >= min(1/p, 1/2): equivalenceValid = {flag:?}"),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_parse_error() {
        assert!(matches!(run_suite("made-up"), Err(Error::Parse(_))));
    }

    #[test]
    fn empty_corpus_is_a_vacuous_pass() {
        let empty = Corpus::empty();
        for name in ["equivalence", "modulus-properties", "haar"] {
            let rep = run_suite_on(&empty, name).unwrap();
            assert!(rep.is_vacuous());
            assert!(rep.passed());
            assert!(rep.render().contains("vacuous"));
        }
    }

    #[test]
    fn hardy_suite_passes() {
        let rep = run_suite("hardy").unwrap();
        assert_eq!(rep.checks.len(), 4);
        assert!(rep.passed(), "{}", rep.render());
    }

    #[test]
    fn engine_table_suite_passes() {
        let rep = run_suite("engine-table").unwrap();
        assert_eq!(rep.checks.len(), 12);
        assert!(rep.passed(), "{}", rep.render());
    }

    #[test]
    fn haar_suite_passes() {
        let rep = run_suite("haar").unwrap();
        assert!(rep.passed(), "{}", rep.render());
    }

    #[test]
    fn modulus_suite_passes() {
        let rep = run_suite("modulus-properties").unwrap();
        assert_eq!(rep.checks.len(), 5);
        assert!(rep.passed(), "{}", rep.render());
    }

    #[test]
    fn equivalence_suite_passes() {
        let rep = run_suite("equivalence").unwrap();
        assert_eq!(rep.checks.len(), 4);
        assert!(rep.passed(), "{}", rep.render());
    }
}
