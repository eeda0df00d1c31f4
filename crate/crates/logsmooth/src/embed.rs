//! Rule-based decision procedure for embeddings between the supported
//! function spaces.
//!
//! [`decide_embedding`] matches a pair of spaces against a fixed catalogue of
//! embedding criteria (R1..R14). Every rule carries its hypotheses as an
//! explicit ledger, so a decision is always accompanied by the checked
//! constraints. Rules come in two strengths: iff rules decide both ways,
//! sufficient rules can only certify an embedding. When no rule applies the
//! verdict is [`Verdict::OutsideTheory`] together with the hypothesis report
//! of the nearest rule (fewest unmet hypotheses, catalogue order breaking
//! ties).
//!
//! All arithmetic is exact rational arithmetic on [`ExtRational`]; the
//! procedure is a pure function of its inputs.

use serde::Serialize;
use std::fmt;

use crate::exec;
use crate::params::{
    canonical_identities, validate, Domain, ExtRational, SpaceKind, SpaceParams,
};

/// Outcome of an embedding query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Embeds,
    DoesNotEmbed,
    OutsideTheory,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Embeds => "Embeds",
            Verdict::DoesNotEmbed => "DoesNotEmbed",
            Verdict::OutsideTheory => "OutsideTheory",
        })
    }
}

/// One checked constraint of a rule, in the orientation that was verified.
#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub constraint: String,
    pub holds: bool,
}

/// Full answer of [`decide_embedding`].
///
/// Invariants: a verdict other than `OutsideTheory` has every hypothesis
/// holding and a non-empty citation. For `DoesNotEmbed` the failed criterion
/// is recorded in its negated (true) orientation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmbeddingDecision {
    pub verdict: Verdict,
    pub rule_id: String,
    pub citation: String,
    pub hypotheses: Vec<Hypothesis>,
    pub notes: String,
}

impl EmbeddingDecision {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("decision serializes")
    }
}

/// A conflict found by [`consistency_scan`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanConflict {
    pub pair: (String, String),
    pub description: String,
}

const CIT_R1: &str = "between Lipschitz spaces with the same 1 < p < inf: embeds iff alpha0 > alpha1, or alpha0 = alpha1 and b1 - 1/q1 > b0 - 1/q0, or alpha0 = alpha1 with equal defects b - 1/q and q0 <= q1";
const CIT_R2: &str = "fixed-integrability comparison of the Lipschitz and Besov scales: with equal p and smoothness, the Besov space with log exponent -b + xi embeds into the Lipschitz space iff xi >= 1/min{2,p,q} and conversely iff xi <= 1/max{2,p,q}; with the log exponent pinned at -b + 1/q the Besov fine index r must satisfy r <= min{2,p,q}, resp. r >= max{2,p,q} (iff on Euclidean domains with p > 2d/(d+1), sufficiency otherwise)";
const CIT_R3: &str = "cross-integrability comparison at constant differential dimension alpha - d/p: the Besov space with smaller integrability and log exponent -b + xi embeds into the Lipschitz space iff xi >= 1/min{p,q}; the Lipschitz space embeds into the Besov space with larger integrability iff xi <= 1/max{p,q}; with the log exponent pinned at -b + 1/q the fine-index thresholds are min{p,q} and max{p,q} (iff on Euclidean domains with the lower exponent above 2d/(d+1), sufficiency for 1 <= p0 < p < p1 <= inf)";
const CIT_R4: &str = "between Lipschitz spaces with 1 < p0 < p1 < inf, equal fine index and equal log parameter: the embedding holds when alpha - d/p is constant and the smoothness drops (sufficient)";
const CIT_R5: &str = "from integrability one: Lip^{(alpha0,-b)}_{1,q} embeds into Lip^{(alpha1,-b-1/p)}_{p,q} when alpha0 - d = alpha1 - d/p (sufficient; for integer alpha0 >= 2 in dimension >= 2 the log shift disappears); on the circle the shift is sharp: Lip^{(alpha0,0)}_{1,inf} embeds into Lip^{(alpha1,-xi)}_{p,inf} iff xi >= 1/p";
const CIT_R6: &str = "toward sup-norm integrability: Lip^{(alpha+d/p,-b)}_{p,q} embeds into Lip^{(alpha,-b-1+1/p)}_{inf,q} (sufficient; for p = 1 and integer smoothness the log shift disappears); on the circle the shift is sharp: the target log parameter must exceed the source one by at least 1 - 1/p";
const CIT_R7: &str = "a Lipschitz space with 1 < p < inf embeds into the classical Lipschitz functions iff alpha > 1 + d/p (Euclidean statement)";
const CIT_R8: &str = "a Lipschitz space with p = 1 embeds into the functions of bounded variation iff alpha > 1";
const CIT_R9: &str = "a Lipschitz space with 1 < p < inf embeds into L_inf (equivalently, into the bounded continuous functions) iff alpha > d/p";
const CIT_R10: &str = "for 2d/(d+1) < p, r0 < inf and 0 < alpha < d/p with alpha - d/p = -d/r: the Lipschitz space embeds into L_{r0} iff p <= r0 < r";
const CIT_R11: &str = "for 0 < alpha < d/p with alpha - d/p = -d/r: the Lipschitz space embeds into L_{r,q}(log L)_{-b+xi} iff xi <= 1/max{p,q}, and into L_{r,u}(log L)_{-b+1/q} iff u >= max{p,q} (iff on the circle, sufficiency in every dimension on both domains)";
const CIT_R12: &str = "for 0 < alpha < d/p with alpha - d/p = -d/r: the Lipschitz space on the torus embeds into the grand Lorentz space with primary index r, outer index q, log exponent -b and inner index p (sufficient)";
const CIT_R13: &str = "coincidence: for p = q = 2 the Lipschitz space equals the Besov space with log exponent -b + 1/2";
const CIT_R14: &str = "every space embeds into itself; a Besov space embeds into any Besov space with the same integrability and strictly smaller smoothness, for every fine index and log exponent";

fn zero() -> ExtRational {
    ExtRational::zero()
}

fn one() -> ExtRational {
    ExtRational::one()
}

fn two() -> ExtRational {
    ExtRational::int(2)
}

fn inf() -> ExtRational {
    ExtRational::Infinity
}

/// Lower integrability bound `2d/(d+1)` under which the sharp arguments are
/// not available.
fn p_floor(dim: u32) -> ExtRational {
    ExtRational::frac(2 * i64::from(dim), i64::from(dim) + 1)
}

/// `smooth - d/p`, the quantity preserved along Sobolev-type embeddings.
fn diffdim(sp: &SpaceParams) -> ExtRational {
    sp.smooth.unwrap() - sp.d() * sp.p.unwrap().recip()
}

/// `b - 1/q` for a Lipschitz space (`b` at `q = inf`).
fn log_defect(sp: &SpaceParams) -> ExtRational {
    sp.log_exp.unwrap() - sp.q.unwrap().recip()
}

fn is_posint(x: ExtRational, at_least: i64) -> bool {
    match x {
        ExtRational::Finite(r) => r.is_integer() && r >= num_rational::Ratio::from_integer(at_least),
        ExtRational::Infinity => false,
    }
}

/// Accumulates hypothesis rows; `ok` tracks whether all of them hold.
struct Gate {
    hyps: Vec<Hypothesis>,
    ok: bool,
}

impl Gate {
    fn new() -> Self {
        Gate {
            hyps: Vec::new(),
            ok: true,
        }
    }

    fn require(&mut self, constraint: String, holds: bool) {
        self.hyps.push(Hypothesis { constraint, holds });
        self.ok &= holds;
    }
}

/// Internal record of one rule evaluation. `outcome = None` means the rule
/// did not fire (some hypothesis failed, or a sufficient criterion was not
/// met); such records still feed the nearest-rule report.
struct RuleEval {
    id: &'static str,
    citation: &'static str,
    hypotheses: Vec<Hypothesis>,
    outcome: Option<Verdict>,
    iff: bool,
    note: String,
}

impl RuleEval {
    fn failed(&self) -> usize {
        self.hypotheses.iter().filter(|h| !h.holds).count()
    }
}

/// An iff rule: when the gate holds the criterion decides both ways. The
/// criterion row is recorded in the orientation that is true, so a fired rule
/// always has an all-true ledger.
fn iff_rule(
    id: &'static str,
    citation: &'static str,
    gate: Gate,
    pass: String,
    fail: String,
    crit: bool,
    note: String,
) -> RuleEval {
    let mut hyps = gate.hyps;
    let outcome = if gate.ok {
        hyps.push(Hypothesis {
            constraint: if crit { pass } else { fail },
            holds: true,
        });
        Some(if crit {
            Verdict::Embeds
        } else {
            Verdict::DoesNotEmbed
        })
    } else {
        hyps.push(Hypothesis {
            constraint: pass,
            holds: crit,
        });
        None
    };
    RuleEval {
        id,
        citation,
        hypotheses: hyps,
        outcome,
        iff: true,
        note,
    }
}

/// A sufficient rule: fires `Embeds` when every row holds, otherwise stays
/// silent.
fn sufficient(id: &'static str, citation: &'static str, gate: Gate, note: String) -> RuleEval {
    let outcome = if gate.ok { Some(Verdict::Embeds) } else { None };
    RuleEval {
        id,
        citation,
        hypotheses: gate.hyps,
        outcome,
        iff: false,
        note,
    }
}

/// Decide whether `src` embeds into `dst`.
///
/// Inputs are validated and rewritten by [`canonical_identities`] first;
/// trivial or malformed spaces short-circuit to `OutsideTheory` with the
/// validation report as the hypothesis list.
pub fn decide_embedding(src: &SpaceParams, dst: &SpaceParams) -> EmbeddingDecision {
    decide_with_evals(src, dst).0
}

fn decide_with_evals(src: &SpaceParams, dst: &SpaceParams) -> (EmbeddingDecision, Vec<RuleEval>) {
    let reports = [("source", validate(src)), ("target", validate(dst))];
    if reports.iter().any(|(_, r)| !r.is_valid()) {
        let mut hyps = Vec::new();
        let mut notes = Vec::new();
        for (side, rep) in &reports {
            for v in &rep.violations {
                hyps.push(Hypothesis {
                    constraint: format!("{side} {}: {} ({})", rep.space, v.constraint, v.rule),
                    holds: false,
                });
                if v.trivial {
                    notes.push(format!(
                        "the {side} space {} is trivial: only the zero function satisfies its defining condition, so the embedding catalogue excludes it",
                        rep.space
                    ));
                }
            }
        }
        if notes.is_empty() {
            notes.push("parameters outside the defining ranges; no rule was consulted".into());
        }
        return (
            EmbeddingDecision {
                verdict: Verdict::OutsideTheory,
                rule_id: "validation".into(),
                citation: String::new(),
                hypotheses: hyps,
                notes: notes.join("; "),
            },
            Vec::new(),
        );
    }

    let s = canonical_identities(src);
    let d = canonical_identities(dst);

    if s.dim != d.dim || s.domain != d.domain {
        let mut g = Gate::new();
        g.require(
            format!("equal dimension (source d = {}, target d = {})", s.dim, d.dim),
            s.dim == d.dim,
        );
        g.require(
            format!(
                "common underlying domain (source {}, target {})",
                s.domain, d.domain
            ),
            s.domain == d.domain,
        );
        return (
            EmbeddingDecision {
                verdict: Verdict::OutsideTheory,
                rule_id: "compatibility".into(),
                citation: String::new(),
                hypotheses: g.hyps,
                notes: "the catalogue compares spaces over one common domain".into(),
            },
            Vec::new(),
        );
    }

    if s == d {
        return (
            EmbeddingDecision {
                verdict: Verdict::Embeds,
                rule_id: "R14".into(),
                citation: CIT_R14.into(),
                hypotheses: vec![Hypothesis {
                    constraint: "source and target denote the same space after canonical rewriting"
                        .into(),
                    holds: true,
                }],
                notes: String::new(),
            },
            Vec::new(),
        );
    }

    let evals = catalogue(&s, &d);
    (resolve(&s, &d, &evals), evals)
}

fn catalogue(s: &SpaceParams, d: &SpaceParams) -> Vec<RuleEval> {
    [
        rule_r1(s, d),
        rule_r2(s, d),
        rule_r3(s, d),
        rule_r4(s, d),
        rule_r5(s, d),
        rule_r6(s, d),
        rule_r7(s, d),
        rule_r8(s, d),
        rule_r9(s, d),
        rule_r10(s, d),
        rule_r11(s, d),
        rule_r12(s, d),
        rule_r14_besov(s, d),
    ]
    .into_iter()
    .flatten()
    .collect()
}

fn resolve(s: &SpaceParams, d: &SpaceParams, evals: &[RuleEval]) -> EmbeddingDecision {
    let fired: Vec<&RuleEval> = evals.iter().filter(|e| e.outcome.is_some()).collect();
    if fired.is_empty() {
        return match evals.iter().min_by_key(|e| e.failed()) {
            Some(near) => EmbeddingDecision {
                verdict: Verdict::OutsideTheory,
                rule_id: near.id.into(),
                citation: String::new(),
                hypotheses: near.hypotheses.clone(),
                notes: if near.note.is_empty() {
                    format!(
                        "no catalogued criterion applies; the closest rule {} is shown with its unmet hypotheses",
                        near.id
                    )
                } else {
                    near.note.clone()
                },
            },
            None => EmbeddingDecision {
                verdict: Verdict::OutsideTheory,
                rule_id: "none".into(),
                citation: String::new(),
                hypotheses: vec![Hypothesis {
                    constraint: format!(
                        "the pair {:?} -> {:?} matches a catalogued rule shape",
                        s.kind, d.kind
                    ),
                    holds: false,
                }],
                notes: "no catalogued rule covers this pair of space kinds; supported shapes: \
                        Lipschitz -> Lipschitz, Besov <-> Lipschitz, Besov -> Besov, and \
                        Lipschitz -> {classical Lipschitz, BV, L_inf / bounded continuous, \
                        Lebesgue, Lorentz-Zygmund, grand Lorentz}"
                    .into(),
            },
        };
    }

    // Iff rules dominate: a sufficient rule can only certify an embedding, so
    // any negative conclusion must come from an iff criterion.
    let primary = fired.iter().find(|e| e.iff).unwrap_or(&fired[0]);
    let verdict = primary.outcome.unwrap();
    let mut notes = primary.note.clone();
    let others: Vec<String> = fired
        .iter()
        .filter(|e| !std::ptr::eq::<RuleEval>(**e, *primary))
        .map(|e| format!("{} ({})", e.id, e.outcome.unwrap()))
        .collect();
    if !others.is_empty() {
        if !notes.is_empty() {
            notes.push_str("; ");
        }
        notes.push_str(&format!("also fired: {}", others.join(", ")));
    }
    if fired.iter().any(|e| e.outcome != Some(verdict)) {
        notes.push_str("; CONFLICT: fired rules disagree, keeping the iff verdict");
    }
    EmbeddingDecision {
        verdict,
        rule_id: primary.id.into(),
        citation: primary.citation.into(),
        hypotheses: primary.hypotheses.clone(),
        notes,
    }
}

fn rule_r1(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::Lipschitz {
        return None;
    }
    let (p0, p1) = (s.p.unwrap(), d.p.unwrap());
    if p0 != p1 {
        return None; // cross-integrability pairs are R4/R5/R6 shapes
    }
    let mut g = Gate::new();
    g.require(
        format!("1 < p < inf (p = {p0})"),
        p0 > one() && p0.is_finite(),
    );
    let (a0, a1) = (s.smooth.unwrap(), d.smooth.unwrap());
    let (q0, q1) = (s.q.unwrap(), d.q.unwrap());
    let (df0, df1) = (log_defect(s), log_defect(d));
    let crit = a0 > a1 || (a0 == a1 && df1 > df0) || (a0 == a1 && df1 == df0 && q0 <= q1);
    let values = format!(
        "alpha0 = {a0}, alpha1 = {a1}, b0 - 1/q0 = {df0}, b1 - 1/q1 = {df1}, q0 = {q0}, q1 = {q1}"
    );
    Some(iff_rule(
        "R1",
        CIT_R1,
        g,
        format!("alpha0 > alpha1, or equal alpha with larger target defect b - 1/q, or equal defects with q0 <= q1 ({values})"),
        format!("alpha0 < alpha1, or equal alpha with smaller target defect b - 1/q, or equal defects with q0 > q1 ({values})"),
        crit,
        String::new(),
    ))
}

/// Shared body of R2 (same integrability) and R3 (constant differential
/// dimension across integrabilities). `two_in_set` switches the threshold set
/// between `{2,p,q}` and `{p,q}`.
#[allow(clippy::too_many_arguments)]
fn besov_lip_rule(
    id: &'static str,
    citation: &'static str,
    mut g: Gate,
    b_to_lip: bool,
    lip: &SpaceParams,
    bes: &SpaceParams,
    two_in_set: bool,
    sharp: bool,
    sharp_missing: &str,
) -> RuleEval {
    let p = lip.p.unwrap();
    let q = lip.q.unwrap();
    let b = lip.log_exp.unwrap();
    let r = bes.q.unwrap();
    let xi = bes.log_exp.unwrap();
    let (lo, hi) = if two_in_set {
        (two().min(p).min(q), two().max(p).max(q))
    } else {
        (p.min(q), p.max(q))
    };
    let set = if two_in_set { "{2,p,q}" } else { "{p,q}" };

    let (pass, fail, crit);
    let mut coincide = false;
    if r == q {
        // log-exponent family: target/source Besov carries the same fine
        // index and a free log exponent xi = (stored) + b.
        let shift = xi + b;
        if b_to_lip {
            crit = shift >= lo.recip();
            pass = format!(
                "Besov log excess xi = {shift} >= 1/min{set} = {}",
                lo.recip()
            );
            fail = format!(
                "Besov log excess xi = {shift} < 1/min{set} = {}",
                lo.recip()
            );
        } else {
            crit = shift <= hi.recip();
            pass = format!(
                "Besov log excess xi = {shift} <= 1/max{set} = {}",
                hi.recip()
            );
            fail = format!(
                "Besov log excess xi = {shift} > 1/max{set} = {}",
                hi.recip()
            );
        }
        coincide = two_in_set
            && p == two()
            && q == two()
            && shift == ExtRational::frac(1, 2)
            && crit;
    } else {
        // fine-index family: the log exponent is pinned at -b + 1/q and the
        // Besov fine index r is compared against the threshold set.
        g.require(
            format!(
                "Besov log exponent pinned at -b + 1/q (stored {xi}, pin requires xi + b = {} to equal 1/q = {})",
                xi + b,
                q.recip()
            ),
            xi + b == q.recip(),
        );
        if b_to_lip {
            crit = r <= lo;
            pass = format!("Besov fine index r = {r} <= min{set} = {lo}");
            fail = format!("Besov fine index r = {r} > min{set} = {lo}");
        } else {
            crit = r >= hi;
            pass = format!("Besov fine index r = {r} >= max{set} = {hi}");
            fail = format!("Besov fine index r = {r} < max{set} = {hi}");
        }
    }

    let mut ev = if sharp {
        iff_rule(id, citation, g, pass, fail, crit, String::new())
    } else {
        g.require(pass, crit);
        sufficient(
            id,
            citation,
            g,
            if crit {
                String::new()
            } else {
                format!(
                    "the sufficient criterion fails and the sharp converse is only stated {sharp_missing}; no conclusion follows"
                )
            },
        )
    };
    if coincide && ev.outcome == Some(Verdict::Embeds) {
        ev.id = "R13";
        ev.citation = CIT_R13;
        ev.note =
            "the two spaces coincide: for p = q = 2 the Lipschitz space equals the Besov space with log exponent -b + 1/2"
                .into();
    }
    ev
}

fn rule_r2(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    let (b_to_lip, bes, lip) = match (s.kind, d.kind) {
        (SpaceKind::Besov, SpaceKind::Lipschitz) => (true, s, d),
        (SpaceKind::Lipschitz, SpaceKind::Besov) => (false, d, s),
        _ => return None,
    };
    let p = lip.p.unwrap();
    if bes.p.unwrap() != p {
        return None; // differing integrabilities are the R3 shape
    }
    let mut g = Gate::new();
    g.require(
        format!(
            "equal smoothness order (Besov s = {}, Lipschitz alpha = {})",
            bes.smooth.unwrap(),
            lip.smooth.unwrap()
        ),
        bes.smooth.unwrap() == lip.smooth.unwrap(),
    );
    g.require(format!("1 < p < inf (p = {p})"), p > one() && p.is_finite());
    let sharp = lip.domain == Domain::Euclidean && p > p_floor(lip.dim);
    if sharp {
        g.require(
            format!(
                "sharp range: Euclidean domain with p > 2d/(d+1) = {}",
                p_floor(lip.dim)
            ),
            true,
        );
    }
    Some(besov_lip_rule(
        "R2",
        CIT_R2,
        g,
        b_to_lip,
        lip,
        bes,
        true,
        sharp,
        "for Euclidean domains with p > 2d/(d+1)",
    ))
}

fn rule_r3(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    let (b_to_lip, bes, lip) = match (s.kind, d.kind) {
        (SpaceKind::Besov, SpaceKind::Lipschitz) => (true, s, d),
        (SpaceKind::Lipschitz, SpaceKind::Besov) => (false, d, s),
        _ => return None,
    };
    let p = lip.p.unwrap();
    let pb = bes.p.unwrap();
    if pb == p {
        return None;
    }
    let mut g = Gate::new();
    let sharp;
    if b_to_lip {
        g.require(
            format!("1 <= p0 < p < inf (Besov p0 = {pb}, Lipschitz p = {p})"),
            pb >= one() && pb < p && p.is_finite(),
        );
        sharp = lip.domain == Domain::Euclidean && pb > p_floor(lip.dim) && p.is_finite();
    } else {
        g.require(
            format!("1 < p < p1 <= inf (Lipschitz p = {p}, Besov p1 = {pb})"),
            p > one() && p.is_finite() && p < pb,
        );
        sharp = lip.domain == Domain::Euclidean && p > p_floor(lip.dim) && pb.is_finite();
    }
    g.require(
        format!(
            "constant differential dimension: s - d/p agrees ({} vs {})",
            diffdim(bes),
            diffdim(lip)
        ),
        diffdim(bes) == diffdim(lip),
    );
    if sharp {
        g.require(
            format!(
                "sharp range: Euclidean domain, exponents within (2d/(d+1), inf) = ({}, inf)",
                p_floor(lip.dim)
            ),
            true,
        );
    }
    Some(besov_lip_rule(
        "R3",
        CIT_R3,
        g,
        b_to_lip,
        lip,
        bes,
        false,
        sharp,
        "for Euclidean domains with both exponents in (2d/(d+1), inf)",
    ))
}

fn rule_r4(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::Lipschitz {
        return None;
    }
    let (p0, p1) = (s.p.unwrap(), d.p.unwrap());
    if p0 == p1 || p0 == one() || p1 == inf() {
        return None; // R1 / R5 / R6 shapes
    }
    let (a0, a1) = (s.smooth.unwrap(), d.smooth.unwrap());
    let mut g = Gate::new();
    g.require(
        format!("1 < p0 < p1 < inf (p0 = {p0}, p1 = {p1})"),
        p0 > one() && p0 < p1 && p1.is_finite(),
    );
    g.require(
        format!("0 < alpha1 < alpha0 < inf (alpha0 = {a0}, alpha1 = {a1})"),
        a1 > zero() && a1 < a0 && a0.is_finite(),
    );
    g.require(
        format!(
            "constant differential dimension: alpha0 - d/p0 = alpha1 - d/p1 ({} vs {})",
            diffdim(s),
            diffdim(d)
        ),
        diffdim(s) == diffdim(d),
    );
    g.require(
        format!("equal fine index q ({} vs {})", s.q.unwrap(), d.q.unwrap()),
        s.q == d.q,
    );
    g.require(
        format!(
            "equal log parameter b ({} vs {})",
            s.log_exp.unwrap(),
            d.log_exp.unwrap()
        ),
        s.log_exp == d.log_exp,
    );
    Some(sufficient("R4", CIT_R4, g, String::new()))
}

fn rule_r5(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    let src_is_bv = s.kind == SpaceKind::BoundedVariation;
    if !(src_is_bv || (s.kind == SpaceKind::Lipschitz && s.p == Some(one()))) {
        return None;
    }
    if d.kind != SpaceKind::Lipschitz {
        return None;
    }
    let p = d.p.unwrap();
    if !p.is_finite() {
        return None; // p1 = inf is the R6 shape
    }
    let (a0, b0, q0) = if src_is_bv {
        (one(), zero(), inf())
    } else {
        (s.smooth.unwrap(), s.log_exp.unwrap(), s.q.unwrap())
    };
    let (a1, b1, q1) = (d.smooth.unwrap(), d.log_exp.unwrap(), d.q.unwrap());
    let dd = s.d();

    let mut g = Gate::new();
    g.require(format!("1 < p < inf on the target (p = {p})"), p > one());
    g.require(format!("equal fine index q ({q0} vs {q1})"), q0 == q1);
    g.require(
        format!("0 < alpha1 < alpha0 (alpha0 = {a0}, alpha1 = {a1})"),
        a1 > zero() && a1 < a0,
    );
    g.require(
        format!(
            "limiting differential dimension: alpha0 - d = alpha1 - d/p ({} vs {})",
            a0 - dd,
            a1 - dd * p.recip()
        ),
        a0 - dd == a1 - dd * p.recip(),
    );

    let sharp = s.domain == Domain::Torus && s.dim == 1 && q0 == inf() && b0 == zero();
    if sharp {
        g.require(
            "sharp form on the circle: source is Lip^{(alpha0,0)}_{1,inf} (or BV) over the torus, d = 1".into(),
            true,
        );
        return Some(iff_rule(
            "R5",
            CIT_R5,
            g,
            format!("target log parameter xi = {b1} >= 1/p = {}", p.recip()),
            format!("target log parameter xi = {b1} < 1/p = {}", p.recip()),
            b1 >= p.recip(),
            String::new(),
        ));
    }

    // Integer-order variant: no log shift, available for integer alpha0 >= 2
    // in dimension >= 2 with alpha1 <= alpha0 - 1.
    if s.dim >= 2 && is_posint(a0, 2) && a1 <= a0 - one() {
        let mut g2 = Gate::new();
        g2.hyps.clone_from(&g.hyps);
        g2.ok = g.ok;
        g2.require(
            format!("integer-order variant: alpha0 = {a0} integer >= 2, d >= 2, alpha1 <= alpha0 - 1"),
            true,
        );
        g2.require(
            format!("equal log parameter b ({b0} vs {b1})"),
            b1 == b0,
        );
        let ev = sufficient("R5", CIT_R5, g2, String::new());
        if ev.outcome.is_some() {
            return Some(ev);
        }
    }

    g.require(
        format!(
            "target log parameter shifted by 1/p: b1 = b0 + 1/p ({b1} vs {})",
            b0 + p.recip()
        ),
        b1 == b0 + p.recip(),
    );
    Some(sufficient(
        "R5",
        CIT_R5,
        g,
        "only the exactly shifted target is catalogued away from the circle".into(),
    ))
}

fn rule_r6(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::Lipschitz {
        return None;
    }
    let p = s.p.unwrap();
    if !p.is_finite() || d.p != Some(inf()) {
        return None;
    }
    let (a0, b0, q0) = (s.smooth.unwrap(), s.log_exp.unwrap(), s.q.unwrap());
    let (a1, b1, q1) = (d.smooth.unwrap(), d.log_exp.unwrap(), d.q.unwrap());
    let dd = s.d();

    let mut g = Gate::new();
    g.require(format!("equal fine index q ({q0} vs {q1})"), q0 == q1);

    if s.domain == Domain::Torus && s.dim == 1 && p > one() {
        g.require(format!("1 < p < inf (p = {p})"), true);
        g.require(
            format!(
                "smoothness drop of exactly 1/p: alpha0 = alpha1 + 1/p ({a0} vs {})",
                a1 + p.recip()
            ),
            a0 == a1 + p.recip(),
        );
        g.require("sharp form on the circle (torus, d = 1)".into(), true);
        let shift = one() - p.recip();
        return Some(iff_rule(
            "R6",
            CIT_R6,
            g,
            format!("target log parameter grows by at least 1 - 1/p: b1 = {b1} >= b0 + (1 - 1/p) = {}", b0 + shift),
            format!("target log parameter grows by less than 1 - 1/p: b1 = {b1} < b0 + (1 - 1/p) = {}", b0 + shift),
            b1 >= b0 + shift,
            String::new(),
        ));
    }

    if p == one() {
        // Integer-order endpoint: Lip^{(k+d,-b)}_{1,q} into Lip^{(k,-b)}_{inf,q}.
        g.require(
            format!("integer target smoothness alpha1 = {a1} (a positive integer)"),
            is_posint(a1, 1),
        );
        g.require(
            format!("alpha0 = alpha1 + d ({a0} vs {})", a1 + dd),
            a0 == a1 + dd,
        );
        g.require(format!("equal log parameter b ({b0} vs {b1})"), b1 == b0);
        return Some(sufficient("R6", CIT_R6, g, String::new()));
    }

    g.require(format!("1 < p < inf (p = {p})"), p > one());
    g.require(
        format!(
            "smoothness drop of exactly d/p: alpha0 = alpha1 + d/p ({a0} vs {})",
            a1 + dd * p.recip()
        ),
        a0 == a1 + dd * p.recip(),
    );
    g.require(
        format!(
            "target log parameter shifted by 1 - 1/p: b1 = b0 + 1 - 1/p ({b1} vs {})",
            b0 + one() - p.recip()
        ),
        b1 == b0 + (one() - p.recip()),
    );
    Some(sufficient(
        "R6",
        CIT_R6,
        g,
        "only the exactly shifted target is catalogued away from the circle".into(),
    ))
}

fn rule_r7(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::ClassicalLip {
        return None;
    }
    let p = s.p.unwrap();
    let a = s.smooth.unwrap();
    let mut g = Gate::new();
    g.require(format!("1 < p < inf (p = {p})"), p > one() && p.is_finite());
    g.require(
        format!("stated on the Euclidean domain (domain = {})", s.domain),
        s.domain == Domain::Euclidean,
    );
    let thresh = one() + s.d() * p.recip();
    Some(iff_rule(
        "R7",
        CIT_R7,
        g,
        format!("alpha = {a} > 1 + d/p = {thresh}"),
        format!("alpha = {a} <= 1 + d/p = {thresh}"),
        a > thresh,
        String::new(),
    ))
}

fn rule_r8(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::BoundedVariation {
        return None;
    }
    let p = s.p.unwrap();
    let a = s.smooth.unwrap();
    let mut g = Gate::new();
    g.require(format!("p = 1 (p = {p})"), p == one());
    Some(iff_rule(
        "R8",
        CIT_R8,
        g,
        format!("alpha = {a} > 1"),
        format!("alpha = {a} <= 1"),
        a > one(),
        String::new(),
    ))
}

fn rule_r9(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz {
        return None;
    }
    let sup_target = d.kind == SpaceKind::BoundedContinuous
        || (d.kind == SpaceKind::Lebesgue && d.p == Some(inf()));
    if !sup_target {
        return None;
    }
    let p = s.p.unwrap();
    let a = s.smooth.unwrap();
    let mut g = Gate::new();
    g.require(format!("1 < p < inf (p = {p})"), p > one() && p.is_finite());
    let thresh = s.d() * p.recip();
    Some(iff_rule(
        "R9",
        CIT_R9,
        g,
        format!("alpha = {a} > d/p = {thresh}"),
        format!("alpha = {a} <= d/p = {thresh}"),
        a > thresh,
        String::new(),
    ))
}

/// `r` with `alpha - d/p = -d/r`; defined when `0 < alpha < d/p`.
fn lebesgue_gain(sp: &SpaceParams) -> Option<ExtRational> {
    let a = sp.smooth.unwrap();
    let dp = sp.d() * sp.p.unwrap().recip();
    if a > zero() && a < dp {
        Some(sp.d() * (dp - a).recip())
    } else {
        None
    }
}

fn rule_r10(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::Lebesgue {
        return None;
    }
    let r0 = d.p.unwrap();
    if r0 == inf() {
        return None; // R9 shape
    }
    let p = s.p.unwrap();
    let a = s.smooth.unwrap();
    let floor = p_floor(s.dim);
    let mut g = Gate::new();
    g.require(
        format!("2d/(d+1) < p < inf (p = {p}, 2d/(d+1) = {floor})"),
        p > floor && p.is_finite(),
    );
    g.require(
        format!("2d/(d+1) < r0 < inf (r0 = {r0})"),
        r0 > floor && r0.is_finite(),
    );
    let dp = s.d() * p.recip();
    g.require(
        format!("0 < alpha < d/p (alpha = {a}, d/p = {dp})"),
        a > zero() && a < dp,
    );
    let (pass, fail, crit) = match lebesgue_gain(s) {
        Some(r) => (
            format!("p <= r0 < r where alpha - d/p = -d/r (p = {p}, r0 = {r0}, r = {r})"),
            format!("r0 outside [p, r) where alpha - d/p = -d/r (p = {p}, r0 = {r0}, r = {r})"),
            p <= r0 && r0 < r,
        ),
        None => (
            format!("p <= r0 < r where alpha - d/p = -d/r (not defined: alpha = {a} outside (0, d/p))"),
            String::new(),
            false,
        ),
    };
    Some(iff_rule("R10", CIT_R10, g, pass, fail, crit, String::new()))
}

fn rule_r11(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::LorentzZygmund {
        return None;
    }
    let (p, q, b, a) = (
        s.p.unwrap(),
        s.q.unwrap(),
        s.log_exp.unwrap(),
        s.smooth.unwrap(),
    );
    let (rt, u, lam) = (d.p.unwrap(), d.q.unwrap(), d.log_exp.unwrap());
    let mut g = Gate::new();
    g.require(format!("1 < p < inf (p = {p})"), p > one() && p.is_finite());
    let dp = s.d() * p.recip();
    g.require(
        format!("0 < alpha < d/p (alpha = {a}, d/p = {dp})"),
        a > zero() && a < dp,
    );
    let gain = lebesgue_gain(s);
    g.require(
        match gain {
            Some(r) => format!("target primary index matches alpha - d/p = -d/r (r = {r}, target {rt})"),
            None => format!("target primary index matches alpha - d/p = -d/r (not defined for alpha = {a})"),
        },
        gain == Some(rt),
    );

    let m = p.max(q);
    let (pass, fail, crit);
    if u == q {
        // log-exponent family: fine index inherited, free log exponent.
        crit = lam + b <= m.recip();
        pass = format!(
            "target log exponent is -b + xi with xi = {} <= 1/max{{p,q}} = {}",
            lam + b,
            m.recip()
        );
        fail = format!(
            "target log exponent is -b + xi with xi = {} > 1/max{{p,q}} = {}",
            lam + b,
            m.recip()
        );
    } else {
        // fine-index family: log exponent pinned at -b + 1/q.
        g.require(
            format!(
                "target log exponent pinned at -b + 1/q (stored {lam}, pin requires lam + b = {} to equal 1/q = {})",
                lam + b,
                q.recip()
            ),
            lam + b == q.recip(),
        );
        crit = u >= m;
        pass = format!("target fine index u = {u} >= max{{p,q}} = {m}");
        fail = format!("target fine index u = {u} < max{{p,q}} = {m}");
    }

    if s.domain == Domain::Torus && s.dim == 1 {
        g.require("sharp form on the circle (torus, d = 1)".into(), true);
        Some(iff_rule("R11", CIT_R11, g, pass, fail, crit, String::new()))
    } else {
        g.require(pass, crit);
        Some(sufficient(
            "R11",
            CIT_R11,
            g,
            if crit {
                String::new()
            } else {
                "the sufficient criterion fails and the sharp converse is only stated on the circle; no conclusion follows".into()
            },
        ))
    }
}

fn rule_r12(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Lipschitz || d.kind != SpaceKind::GrandLorentz {
        return None;
    }
    let (p, q, b, a) = (
        s.p.unwrap(),
        s.q.unwrap(),
        s.log_exp.unwrap(),
        s.smooth.unwrap(),
    );
    let mut g = Gate::new();
    g.require(
        format!("stated on the torus (domain = {})", s.domain),
        s.domain == Domain::Torus,
    );
    g.require(format!("1 < p < inf (p = {p})"), p > one() && p.is_finite());
    let dp = s.d() * p.recip();
    g.require(
        format!("0 < alpha < d/p (alpha = {a}, d/p = {dp})"),
        a > zero() && a < dp,
    );
    let gain = lebesgue_gain(s);
    g.require(
        match gain {
            Some(r) => format!(
                "target primary index matches alpha - d/p = -d/r (r = {r}, target {})",
                d.p.unwrap()
            ),
            None => format!("target primary index matches alpha - d/p = -d/r (not defined for alpha = {a})"),
        },
        gain == Some(d.p.unwrap()),
    );
    g.require(
        format!(
            "target outer index equals the source fine index q ({} vs {q})",
            d.q.unwrap()
        ),
        d.q == Some(q),
    );
    g.require(
        format!(
            "target log exponent equals -b (stored {}, source b = {b})",
            d.log_exp.unwrap()
        ),
        d.log_exp.unwrap() + b == zero(),
    );
    g.require(
        format!(
            "target inner index equals the source integrability p ({} vs {p})",
            d.secondary_log.unwrap()
        ),
        d.secondary_log == Some(p),
    );
    Some(sufficient("R12", CIT_R12, g, String::new()))
}

fn rule_r14_besov(s: &SpaceParams, d: &SpaceParams) -> Option<RuleEval> {
    if s.kind != SpaceKind::Besov || d.kind != SpaceKind::Besov {
        return None;
    }
    let (s0, s1) = (s.smooth.unwrap(), d.smooth.unwrap());
    let mut g = Gate::new();
    g.require(
        format!(
            "equal integrability p ({} vs {})",
            s.p.unwrap(),
            d.p.unwrap()
        ),
        s.p == d.p,
    );
    g.require(
        format!("strictly smaller target smoothness (s0 = {s0}, s1 = {s1})"),
        s1 < s0,
    );
    let note = if s.p == d.p && s1 == s0 {
        "equal primary smoothness would need a log-scale criterion that is not part of the catalogue".into()
    } else {
        String::new()
    };
    Some(sufficient("R14", CIT_R14, g, note))
}

/// Cross-check a finite grid of spaces for internal consistency of the
/// catalogue: every ordered pair is decided, any disagreement between rules
/// fired on one pair is reported, and the Embeds relation is checked for
/// transitivity. An empty result means the catalogue is coherent on the grid.
pub fn consistency_scan(grid: &[SpaceParams]) -> Vec<ScanConflict> {
    let n = grid.len();
    if n == 0 {
        return Vec::new();
    }
    let cells: Vec<(Verdict, Option<String>)> = exec::map_indexed(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        let (dec, evals) = decide_with_evals(&grid[i], &grid[j]);
        let fired: Vec<(&str, Verdict)> = evals
            .iter()
            .filter_map(|e| e.outcome.map(|o| (e.id, o)))
            .collect();
        let disagree = fired.iter().any(|(_, o)| *o != fired[0].1);
        let detail = disagree.then(|| {
            fired
                .iter()
                .map(|(id, o)| format!("{id} ({o})"))
                .collect::<Vec<_>>()
                .join(", ")
        });
        (dec.verdict, detail)
    });

    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(detail) = &cells[i * n + j].1 {
                out.push(ScanConflict {
                    pair: (grid[i].to_string(), grid[j].to_string()),
                    description: format!("fired rules disagree: {detail}"),
                });
            }
        }
    }
    let verdict = |i: usize, j: usize| cells[i * n + j].0;
    for i in 0..n {
        for j in 0..n {
            if verdict(i, j) != Verdict::Embeds {
                continue;
            }
            for k in 0..n {
                if verdict(j, k) == Verdict::Embeds && verdict(i, k) == Verdict::DoesNotEmbed {
                    out.push(ScanConflict {
                        pair: (grid[i].to_string(), grid[k].to_string()),
                        description: format!("transitivity violated through {}", grid[j]),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ExtRational as X;

    fn lip(alpha: X, b: X, p: X, q: X) -> SpaceParams {
        SpaceParams::lipschitz(alpha, b, p, q)
    }

    fn frac(n: i64, d: i64) -> X {
        X::frac(n, d)
    }

    fn int(n: i64) -> X {
        X::int(n)
    }

    fn assert_ledger_invariants(dec: &EmbeddingDecision) {
        if dec.verdict != Verdict::OutsideTheory {
            assert!(
                dec.hypotheses.iter().all(|h| h.holds),
                "non-OutsideTheory ledger must be all-true: {dec:?}"
            );
            assert!(!dec.citation.is_empty());
            assert!(!dec.hypotheses.is_empty());
        } else {
            assert!(
                dec.hypotheses.iter().any(|h| !h.holds),
                "OutsideTheory must report at least one failed hypothesis: {dec:?}"
            );
        }
    }

    #[test]
    fn classical_lip_boundary_is_decided_by_r7() {
        let dst = SpaceParams::classical_lip()
            .with_dim(3)
            .with_domain(Domain::Euclidean);
        // alpha = 2 = 1 + d/p exactly: fails the strict inequality.
        let at = lip(int(2), int(1), int(3), int(2))
            .with_dim(3)
            .with_domain(Domain::Euclidean);
        let dec = decide_embedding(&at, &dst);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_eq!(dec.rule_id, "R7");
        assert_ledger_invariants(&dec);

        let above = lip(frac(9, 4), int(1), int(3), int(2))
            .with_dim(3)
            .with_domain(Domain::Euclidean);
        let dec = decide_embedding(&above, &dst);
        assert_eq!(dec.verdict, Verdict::Embeds);
        assert_eq!(dec.rule_id, "R7");

        // The statement is Euclidean-only; the periodic pair is undecided.
        let torus = lip(int(3), int(1), int(3), int(2)).with_dim(3);
        let dec = decide_embedding(&torus, &SpaceParams::classical_lip().with_dim(3));
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "R7");
        assert!(dec.hypotheses.iter().any(|h| !h.holds));
    }

    #[test]
    fn bv_target_is_decided_by_r8() {
        let src = lip(frac(3, 2), int(1), int(1), int(2))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dst = SpaceParams::bounded_variation()
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dec = decide_embedding(&src, &dst);
        assert_eq!(dec.verdict, Verdict::Embeds);
        assert_eq!(dec.rule_id, "R8");
        assert_ledger_invariants(&dec);

        let flat = lip(int(1), int(1), int(1), int(2)).with_dim(2);
        let dec = decide_embedding(&flat, &SpaceParams::bounded_variation().with_dim(2));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_eq!(dec.rule_id, "R8");
    }

    #[test]
    fn reflexivity_uses_r14() {
        let sp = lip(frac(1, 2), int(1), int(2), int(2));
        let dec = decide_embedding(&sp, &sp);
        assert_eq!(dec.verdict, Verdict::Embeds);
        assert_eq!(dec.rule_id, "R14");
        assert_ledger_invariants(&dec);

        // Canonical rewrites are applied before the comparison.
        let written = lip(int(1), int(0), int(2), X::Infinity);
        let sob = SpaceParams::sobolev(int(1), int(2));
        let dec = decide_embedding(&written, &sob);
        assert_eq!(dec.verdict, Verdict::Embeds);
        assert_eq!(dec.rule_id, "R14");
    }

    #[test]
    fn lorentz_zygmund_boundary_is_decided_by_r11() {
        // alpha - 1/p = -1/r with p = 2 and r = 4 forces alpha = 1/4; the
        // criterion is xi <= 1/max{p,q} = 1/2 on the stored exponent -b + xi.
        let src = lip(frac(1, 4), int(1), int(2), int(2));
        let at = SpaceParams::lorentz_zygmund(int(4), int(2), frac(-1, 2));
        let dec = decide_embedding(&src, &at);
        assert_eq!(dec.verdict, Verdict::Embeds);
        assert_eq!(dec.rule_id, "R11");
        assert_ledger_invariants(&dec);

        let above = SpaceParams::lorentz_zygmund(int(4), int(2), frac(-1, 4));
        let dec = decide_embedding(&src, &above);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_eq!(dec.rule_id, "R11");
        assert_ledger_invariants(&dec);

        // Fine-index family: log exponent pinned at -b + 1/q = -1/2.
        let wide = SpaceParams::lorentz_zygmund(int(4), int(3), frac(-1, 2));
        let dec = decide_embedding(&src, &wide);
        assert_eq!(dec.verdict, Verdict::Embeds);
        let narrow = SpaceParams::lorentz_zygmund(int(4), frac(3, 2), frac(-1, 2));
        let dec = decide_embedding(&src, &narrow);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);

        // Off the circle only the sufficient direction is available.
        let e_src = src.with_domain(Domain::Euclidean);
        let dec = decide_embedding(&e_src, &at.with_domain(Domain::Euclidean));
        assert_eq!(dec.verdict, Verdict::Embeds);
        let dec = decide_embedding(&e_src, &above.with_domain(Domain::Euclidean));
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "R11");
    }

    #[test]
    fn dimension_mismatch_is_outside_theory() {
        let a = SpaceParams::besov(frac(1, 2), int(0), int(2), int(2)).with_dim(1);
        let b = SpaceParams::besov(frac(1, 2), int(0), int(2), int(2)).with_dim(2);
        let dec = decide_embedding(&a, &b);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "compatibility");
        assert!(dec.hypotheses.iter().any(|h| !h.holds));

        let t = lip(int(1), int(1), int(2), int(2));
        let e = SpaceParams::bounded_continuous().with_domain(Domain::Euclidean);
        let dec = decide_embedding(&t, &e);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "compatibility");
    }

    #[test]
    fn same_integrability_trichotomy() {
        let base = lip(int(1), int(1), int(2), int(2));
        // Smoothness dominates.
        let dec = decide_embedding(&base, &lip(frac(1, 2), int(5), int(2), frac(1, 3)));
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R1"));
        // Equal smoothness: larger target defect wins.
        let dec = decide_embedding(&base, &lip(int(1), int(2), int(2), int(2)));
        assert_eq!(dec.verdict, Verdict::Embeds);
        // Equal defect: fine indices must not shrink.
        let dec = decide_embedding(&base, &lip(int(1), frac(3, 4), int(2), int(4)));
        assert_eq!(dec.verdict, Verdict::Embeds);
        let dec = decide_embedding(&lip(int(1), frac(3, 4), int(2), int(4)), &base);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        // Larger target smoothness: does not embed.
        let dec = decide_embedding(&base, &lip(int(2), int(1), int(2), int(2)));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_ledger_invariants(&dec);
    }

    #[test]
    fn same_integrability_is_total_and_improvement_preserves_embedding() {
        // Totality: whenever x -> y fails, y -> x must hold.
        let qs = [frac(1, 2), int(1), int(2), X::Infinity];
        let bs = [frac(3, 4), int(1), int(3)];
        let alphas = [frac(1, 2), int(1)];
        let mut grid = Vec::new();
        for a in alphas {
            for b in bs {
                for q in qs {
                    if q.is_infinite() || b > q.recip() {
                        grid.push(lip(a, b, int(2), q));
                    }
                }
            }
        }
        for x in &grid {
            for y in &grid {
                let xy = decide_embedding(x, y);
                let yx = decide_embedding(y, x);
                assert!(
                    xy.verdict == Verdict::Embeds || yx.verdict == Verdict::Embeds,
                    "incomparable same-p pair: {x} vs {y}"
                );
                assert_ledger_invariants(&xy);
                if xy.verdict == Verdict::Embeds {
                    // Improving the target (smaller alpha1, larger defect) keeps it.
                    let better = lip(
                        y.smooth.unwrap() - frac(1, 8),
                        y.log_exp.unwrap() + int(1),
                        int(2),
                        y.q.unwrap(),
                    );
                    assert_eq!(decide_embedding(x, &better).verdict, Verdict::Embeds);
                }
            }
        }
    }

    #[test]
    fn besov_lip_same_p_criteria() {
        // p = 3, q = 2: min{2,p,q} = 2, max{2,p,q} = 3.
        let l = lip(int(1), int(1), int(3), int(2)).with_domain(Domain::Euclidean);
        let bes = |xi: X, r: X| {
            SpaceParams::besov(int(1), xi, int(3), r).with_domain(Domain::Euclidean)
        };
        // Besov -> Lip at the endpoint xi = -b + 1/2.
        let dec = decide_embedding(&bes(frac(-1, 2), int(2)), &l);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R2"));
        // Just below the endpoint the sharp converse rejects.
        let dec = decide_embedding(&bes(frac(-3, 5), int(2)), &l);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_ledger_invariants(&dec);
        // Lip -> Besov needs xi <= -b + 1/3.
        let dec = decide_embedding(&l, &bes(frac(-2, 3), int(2)));
        assert_eq!(dec.verdict, Verdict::Embeds);
        let dec = decide_embedding(&l, &bes(frac(-1, 2), int(2)));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        // Fine-index family at the pinned log exponent -b + 1/q = -1/2.
        let dec = decide_embedding(&bes(frac(-1, 2), frac(3, 2)), &l);
        assert_eq!(dec.verdict, Verdict::Embeds);
        let dec = decide_embedding(&l, &bes(frac(-1, 2), int(4)));
        assert_eq!(dec.verdict, Verdict::Embeds);
        let dec = decide_embedding(&l, &bes(frac(-1, 2), frac(5, 2)));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);

        // On the torus the converse is not catalogued: same failing pair is
        // only undecided.
        let lt = lip(int(1), int(1), int(3), int(2));
        let bt = SpaceParams::besov(int(1), frac(-3, 5), int(3), int(2));
        let dec = decide_embedding(&bt, &lt);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "R2");
        // ... while the sufficient side still fires.
        let bt = SpaceParams::besov(int(1), frac(-1, 2), int(3), int(2));
        assert_eq!(decide_embedding(&bt, &lt).verdict, Verdict::Embeds);
    }

    #[test]
    fn coincidence_renames_to_r13() {
        let l = lip(int(1), int(1), int(2), int(2));
        let b = SpaceParams::besov(int(1), frac(-1, 2), int(2), int(2));
        for (x, y) in [(&l, &b), (&b, &l)] {
            let dec = decide_embedding(x, y);
            assert_eq!(dec.verdict, Verdict::Embeds);
            assert_eq!(dec.rule_id, "R13");
            assert!(dec.notes.contains("coincide"));
            assert_ledger_invariants(&dec);
        }
        // Any other (p,q) at the same log exponent shift fails in one
        // direction by the sharp comparison.
        let l3 = lip(int(1), int(1), int(3), int(3)).with_domain(Domain::Euclidean);
        let b3 = SpaceParams::besov(int(1), frac(-1, 2), int(3), int(3))
            .with_domain(Domain::Euclidean);
        let dec = decide_embedding(&l3, &b3);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_eq!(dec.rule_id, "R2");
    }

    #[test]
    fn franke_jump_criteria() {
        // p0 = 2 < p = 3, d = 1, q = 2: thresholds min{p,q} = 2, max{p,q} = 3.
        // Differential dimension pin: s = alpha + (1/2 - 1/3) = alpha + 1/6.
        let l = lip(int(1), int(1), int(3), int(2)).with_domain(Domain::Euclidean);
        let bes = |xi: X, r: X| {
            SpaceParams::besov(frac(7, 6), xi, int(2), r).with_domain(Domain::Euclidean)
        };
        let dec = decide_embedding(&bes(frac(-1, 2), int(2)), &l);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R3"));
        let dec = decide_embedding(&bes(frac(-3, 5), int(2)), &l);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_ledger_invariants(&dec);
        // Upward direction: Lip_{2} -> Besov_{3} at constant diff dimension.
        let l2 = lip(int(1), int(1), int(2), int(2)).with_domain(Domain::Euclidean);
        let b3 = |xi: X| {
            SpaceParams::besov(frac(5, 6), xi, int(3), int(2)).with_domain(Domain::Euclidean)
        };
        let dec = decide_embedding(&l2, &b3(frac(-1, 2)));
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R3"));
        let dec = decide_embedding(&l2, &b3(frac(-1, 4)));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        // Wrong direction of the integrability jump never fires.
        let dec = decide_embedding(&b3(frac(-1, 2)), &l2);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
    }

    #[test]
    fn sufficient_lipschitz_ladders() {
        // R4: constant differential dimension, same q and b.
        let src = lip(int(1), int(1), int(2), int(2)).with_dim(2);
        let dst = lip(frac(1, 2), int(1), int(4), int(2)).with_dim(2);
        let dec = decide_embedding(&src, &dst);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R4"));
        assert_ledger_invariants(&dec);
        // Different b: not catalogued.
        let dec = decide_embedding(&src, &lip(frac(1, 2), int(2), int(4), int(2)).with_dim(2));
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "R4");

        // R5 sufficient on the plane: b shifts by exactly 1/p.
        let src = lip(int(2), int(1), int(1), int(2))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dst = lip(frac(3, 2), frac(3, 2), int(4), int(2))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        // alpha0 - d = 0, alpha1 - d/p = 3/2 - 1/2 = 1.
        let dec = decide_embedding(&src, &dst);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        let dst = lip(frac(3, 2), frac(5, 4), int(4), int(2))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dec = decide_embedding(&src, &dst);
        assert_eq!(dec.verdict, Verdict::OutsideTheory); // diff dimension off
        let src = lip(int(2), int(1), int(1), int(2))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dst = lip(frac(1, 2), frac(5, 4), int(4), int(2))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        // alpha0 - d = 0 = alpha1 - d/p, b1 = 1 + 1/4.
        let dec = decide_embedding(&src, &dst);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R5"));

        // R6 sufficient on the plane.
        let src = lip(int(2), int(1), int(2), int(3))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dst = lip(int(1), frac(3, 2), X::Infinity, int(3))
            .with_dim(2)
            .with_domain(Domain::Euclidean);
        let dec = decide_embedding(&src, &dst);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R6"));
    }

    #[test]
    fn circle_sharp_forms_for_limiting_integrabilities() {
        // R5 sharp: BV on the circle into Lip^{(1/p,-xi)}_{p,inf} iff xi >= 1/p.
        let bv = SpaceParams::bounded_variation();
        let dst = |xi: X| lip(frac(1, 3), xi, int(3), X::Infinity);
        let dec = decide_embedding(&bv, &dst(frac(1, 3)));
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R5"));
        let dec = decide_embedding(&bv, &dst(frac(1, 4)));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_ledger_invariants(&dec);
        // Same statement with a non-BV source written directly.
        let src = lip(frac(4, 3), int(0), int(1), X::Infinity);
        let dec = decide_embedding(&src, &lip(frac(2, 3), frac(1, 2), int(3), X::Infinity));
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R5"));

        // R6 sharp: growth of the log parameter by at least 1 - 1/p.
        let src = lip(frac(3, 2), int(1), int(2), int(2));
        let dst = |b1: X| lip(int(1), b1, X::Infinity, int(2));
        let dec = decide_embedding(&src, &dst(frac(3, 2)));
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R6"));
        let dec = decide_embedding(&src, &dst(frac(4, 3)));
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        assert_ledger_invariants(&dec);
    }

    #[test]
    fn lebesgue_targets() {
        // R9: alpha > d/p decides boundedness.
        let linf = SpaceParams::lebesgue(X::Infinity);
        let dec = decide_embedding(&lip(int(1), int(1), int(2), int(2)), &linf);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R9"));
        let dec = decide_embedding(&lip(frac(1, 2), int(1), int(2), int(2)), &linf);
        assert_eq!(dec.verdict, Verdict::DoesNotEmbed);
        let cont = SpaceParams::bounded_continuous();
        let dec = decide_embedding(&lip(int(1), int(1), int(2), int(2)), &cont);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R9"));

        // R10: p <= r0 < r with r = d/(d/p - alpha); here r = 4.
        let src = lip(frac(1, 4), int(1), int(2), int(2));
        for (r0, want) in [
            (int(2), Verdict::Embeds),
            (int(3), Verdict::Embeds),
            (int(4), Verdict::DoesNotEmbed),
            (int(5), Verdict::DoesNotEmbed),
            (frac(3, 2), Verdict::DoesNotEmbed),
        ] {
            let dec = decide_embedding(&src, &SpaceParams::lebesgue(r0));
            assert_eq!((dec.verdict, dec.rule_id.as_str()), (want, "R10"));
            assert_ledger_invariants(&dec);
        }
    }

    #[test]
    fn grand_lorentz_target_slots() {
        let src = lip(frac(1, 4), int(1), int(2), int(2));
        let dst = SpaceParams::grand_lorentz(int(4), int(2), int(-1), int(2));
        let dec = decide_embedding(&src, &dst);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R12"));
        assert_ledger_invariants(&dec);
        // Wrong inner index: undecided, nearest rule is R12.
        let off = SpaceParams::grand_lorentz(int(4), int(2), int(-1), int(3));
        let dec = decide_embedding(&src, &off);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "R12");
        // Euclidean: not stated.
        let dec = decide_embedding(
            &src.with_domain(Domain::Euclidean),
            &dst.with_domain(Domain::Euclidean),
        );
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
    }

    #[test]
    fn besov_smoothness_monotonicity() {
        let hi = SpaceParams::besov(int(1), int(-3), int(2), frac(1, 2));
        let lo = SpaceParams::besov(frac(1, 2), int(7), int(2), X::Infinity);
        let dec = decide_embedding(&hi, &lo);
        assert_eq!((dec.verdict, dec.rule_id.as_str()), (Verdict::Embeds, "R14"));
        // Equal smoothness with different log exponents is not catalogued.
        let dec = decide_embedding(&hi, &SpaceParams::besov(int(1), int(0), int(2), int(2)));
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
    }

    #[test]
    fn trivial_spaces_are_rejected_with_a_note() {
        let trivial = lip(int(1), frac(1, 2), int(2), int(2)); // b = 1/q
        let fine = lip(int(1), int(1), int(2), int(2));
        let dec = decide_embedding(&trivial, &fine);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "validation");
        assert!(dec.notes.contains("trivial"));
        assert!(dec.hypotheses.iter().any(|h| !h.holds));
        let dec = decide_embedding(&fine, &trivial);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert!(dec.notes.contains("trivial"));
    }

    #[test]
    fn unmatched_shapes_report_the_generic_note() {
        let leb = SpaceParams::lebesgue(int(2));
        let bes = SpaceParams::besov(int(1), int(0), int(2), int(2));
        let dec = decide_embedding(&leb, &bes);
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
        assert_eq!(dec.rule_id, "none");
        assert!(dec.notes.contains("supported shapes"));
        assert!(!dec.hypotheses.is_empty());

        // Sobolev sources stay outside the catalogue (after canonicalization
        // they are their own kind).
        let sob = SpaceParams::sobolev(int(1), int(2));
        let dec = decide_embedding(&sob, &lip(int(1), int(1), int(2), int(2)));
        assert_eq!(dec.verdict, Verdict::OutsideTheory);
    }

    #[test]
    fn consistency_scan_examples() {
        assert!(consistency_scan(&[]).is_empty());

        // Ten same-p Lipschitz spaces: the R1 preorder has no conflicts.
        let mut grid = Vec::new();
        for (a, b, q) in [
            (int(1), int(1), int(2)),
            (int(1), int(2), int(2)),
            (int(1), int(1), int(4)),
            (int(2), int(1), int(2)),
            (int(2), frac(3, 4), int(2)),
            (frac(1, 2), int(1), int(2)),
            (frac(1, 2), int(1), X::Infinity),
            (frac(1, 2), int(0), X::Infinity),
            (int(1), frac(3, 2), int(1)),
            (int(3), int(1), frac(1, 2)),
        ] {
            grid.push(lip(a, b, int(2), q));
        }
        assert_eq!(grid.len(), 10);
        assert!(consistency_scan(&grid).is_empty());

        // A Lipschitz space plus the Sobolev space hiding behind it.
        let pair = [
            lip(int(1), int(1), int(2), int(2)),
            SpaceParams::sobolev(int(1), int(2)),
        ];
        assert!(consistency_scan(&pair).is_empty());
    }

    #[test]
    fn decisions_are_deterministic_and_serialize_in_camel_case() {
        let src = lip(frac(1, 4), int(1), int(2), int(2));
        let dst = SpaceParams::lorentz_zygmund(int(4), int(2), frac(-1, 2));
        let a = decide_embedding(&src, &dst).to_json();
        let b = decide_embedding(&src, &dst).to_json();
        assert_eq!(a, b);
        let obj = a.as_object().unwrap();
        for key in ["verdict", "ruleId", "citation", "hypotheses", "notes"] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert_eq!(obj["verdict"], "Embeds");
        assert!(obj["hypotheses"].as_array().unwrap().iter().all(|h| {
            h.as_object()
                .map(|m| m.contains_key("constraint") && m.contains_key("holds"))
                .unwrap_or(false)
        }));
    }
}
