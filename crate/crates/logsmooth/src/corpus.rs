//! Bundled test corpus: lacunary coefficient specs, general monotone
//! sequences and band-limited trigonometric signals.
//!
//! The data lives in committed CSV files embedded at compile time, so the
//! verification suites are hermetic and byte-for-byte reproducible. The
//! files were produced once by the seeded generator kept at the bottom of
//! this module (`regenerate`, an ignored test).

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rand::Rng;

use crate::closed_forms::{realize_gm, realize_lacunary, GMSequence, GmFlavor, LacunarySpec};
use crate::dyadic::PeriodicSignal;
use crate::{Error, Result};

const LACUNARY_CSV: &str = include_str!("../corpus/lacunary.csv");
const GM_CSV: &str = include_str!("../corpus/gm.csv");
const TRIG_CSV: &str = include_str!("../corpus/trig.csv");

/// A real band-limited signal stored as trigonometric coefficients:
/// `f(x) = cos[0] + sum_{m>=1} cos[m] cos(mx) + sin[m] sin(mx)`.
/// Realizable exactly at any grid size with `N/2` above the top frequency.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    pub label: String,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPoly {
    pub fn top_frequency(&self) -> usize {
        self.cos.len().max(self.sin.len()).saturating_sub(1)
    }

    pub fn realize(&self, n: usize) -> Result<PeriodicSignal> {
        let k = self.top_frequency();
        if 2 * k >= n {
            return Err(Error::FrequencyOverflow { freq: k, nyquist: n / 2 });
        }
        let step = std::f64::consts::TAU / n as f64;
        let samples = crate::exec::map_indexed(n, |i| {
            let x = step * i as f64;
            let mut acc = 0.0;
            for (m, c) in self.cos.iter().enumerate() {
                acc += c * (m as f64 * x).cos();
            }
            for (m, s) in self.sin.iter().enumerate() {
                acc += s * (m as f64 * x).sin();
            }
            acc
        });
        PeriodicSignal::from_real(samples, &self.label)
    }
}

/// The corpus the `verify` suites run on.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub lacunary: Vec<(String, LacunarySpec)>,
    pub gm: Vec<(String, GMSequence)>,
    pub trig: Vec<TrigPoly>,
}

impl Corpus {
    pub fn empty() -> Self {
        Corpus { lacunary: Vec::new(), gm: Vec::new(), trig: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.lacunary.is_empty() && self.gm.is_empty() && self.trig.is_empty()
    }

    /// Realize every corpus entry as a periodic signal on a common grid.
    /// Lacunary frequencies `2^j - 2` and sequence lengths must fit below
    /// `n/2`; the bundled corpus fits `n >= 2^10` (trig entries `n >= 2^8`).
    pub fn realized(&self, n: usize) -> Result<Vec<PeriodicSignal>> {
        let mut out = Vec::new();
        for (_, spec) in &self.lacunary {
            out.push(realize_lacunary(spec, n)?);
        }
        for (_, seq) in &self.gm {
            out.push(realize_gm(seq, n)?);
        }
        for t in &self.trig {
            out.push(t.realize(n)?);
        }
        Ok(out)
    }
}

/// The compile-time bundled corpus.
pub fn bundled() -> &'static Corpus {
    static CORPUS: Lazy<Corpus> = Lazy::new(|| {
        parse_corpus(LACUNARY_CSV, GM_CSV, TRIG_CSV)
            .expect("bundled corpus data is well-formed")
    });
    &CORPUS
}

fn parse_corpus(lac: &str, gm: &str, trig: &str) -> Result<Corpus> {
    let mut corpus = Corpus::empty();

    // name,j,re,im with j consecutive from 3 per name.
    let mut current: Option<(String, Vec<Complex64>)> = None;
    for rec in records(lac)? {
        let [name, _j, re, im] = fields::<4>(&rec)?;
        let c = Complex64::new(parse_f64(re)?, parse_f64(im)?);
        match &mut current {
            Some((n, coeffs)) if *n == name => coeffs.push(c),
            _ => {
                if let Some((n, coeffs)) = current.take() {
                    corpus.lacunary.push((n, LacunarySpec::new(coeffs)?));
                }
                current = Some((name.to_string(), vec![c]));
            }
        }
    }
    if let Some((n, coeffs)) = current.take() {
        corpus.lacunary.push((n, LacunarySpec::new(coeffs)?));
    }

    // name,flavor,n,value with n consecutive from 1 per name.
    let mut current: Option<(String, GmFlavor, Vec<f64>)> = None;
    for rec in records(gm)? {
        let [name, flavor, _n, value] = fields::<4>(&rec)?;
        let fl = match flavor {
            "cos" => GmFlavor::Cosine,
            "sin" => GmFlavor::Sine,
            other => return Err(Error::Parse(format!("unknown flavor `{other}`"))),
        };
        let v = parse_f64(value)?;
        match &mut current {
            Some((n, _, a)) if *n == name => a.push(v),
            _ => {
                if let Some((n, fl0, a)) = current.take() {
                    corpus.gm.push((n, GMSequence::new(a, fl0)?));
                }
                current = Some((name.to_string(), fl, vec![v]));
            }
        }
    }
    if let Some((n, fl0, a)) = current.take() {
        corpus.gm.push((n, GMSequence::new(a, fl0)?));
    }

    // name,kind,m,value with m consecutive from 0 per (name, kind).
    let mut current: Option<TrigPoly> = None;
    for rec in records(trig)? {
        let [name, kind, _m, value] = fields::<4>(&rec)?;
        let v = parse_f64(value)?;
        if current.as_ref().map(|t| t.label.as_str()) != Some(name) {
            if let Some(t) = current.take() {
                corpus.trig.push(t);
            }
            current = Some(TrigPoly { label: name.to_string(), cos: Vec::new(), sin: Vec::new() });
        }
        let t = current.as_mut().unwrap();
        match kind {
            "cos" => t.cos.push(v),
            "sin" => t.sin.push(v),
            other => return Err(Error::Parse(format!("unknown coefficient kind `{other}`"))),
        }
    }
    if let Some(t) = current.take() {
        corpus.trig.push(t);
    }

    Ok(corpus)
}

fn records(data: &str) -> Result<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(data.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(format!("corpus csv: {e}")))?;
        out.push(rec.iter().map(str::to_string).collect());
    }
    Ok(out)
}

fn fields<const K: usize>(rec: &[String]) -> Result<[&str; K]> {
    if rec.len() != K {
        return Err(Error::Parse(format!(
            "corpus csv row has {} fields, expected {K}",
            rec.len()
        )));
    }
    let mut out = [""; K];
    for (slot, field) in out.iter_mut().zip(rec) {
        *slot = field.as_str();
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|e| Error::Parse(format!("corpus csv number `{s}`: {e}")))
}

/// Write the three corpus CSVs from the seeded generator. Kept in-repo so
/// the committed data stays reproducible; run explicitly with
/// `cargo test -p logsmooth regenerate -- --ignored`.
#[allow(dead_code)]
fn generate() -> (String, String, String) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);

    let mut lac = String::from("name,j,re,im\n");
    let j_tops = [7usize, 8, 9, 7, 8, 9];
    let decays = [0.6, 1.0, 1.6, 0.8, 1.3, 2.0];
    for (i, (&j_top, &sigma)) in j_tops.iter().zip(&decays).enumerate() {
        for j in 3..=j_top {
            let mag = (2f64).powf(-(j as f64) * sigma) * (0.25 + 0.75 * rng.gen::<f64>());
            let phase = std::f64::consts::TAU * rng.gen::<f64>();
            lac.push_str(&format!(
                "lac{i},{j},{},{}\n",
                mag * phase.cos(),
                mag * phase.sin()
            ));
        }
    }

    let mut gm = String::from("name,flavor,n,value\n");
    let shapes = [
        (0.7, 0.0, "cos"),
        (1.0, 0.5, "cos"),
        (1.3, -0.3, "cos"),
        (0.9, 0.8, "sin"),
        (1.1, 0.0, "sin"),
        (0.8, 0.25, "sin"),
    ];
    let lens = [48usize, 64, 96, 48, 64, 96];
    for (i, (&(gamma, delta, flavor), &len)) in shapes.iter().zip(&lens).enumerate() {
        let scale = 0.5 + rng.gen::<f64>();
        for n in 1..=len {
            let nf = n as f64;
            let v = scale * nf.powf(-gamma) * (1.0 + nf.ln()).powf(-delta);
            gm.push_str(&format!("gm{i},{flavor},{n},{v}\n"));
        }
    }

    let mut trig = String::from("name,kind,m,value\n");
    let trig_decays = [1.5, 1.2, 0.8, 0.6];
    for (i, &decay) in trig_decays.iter().enumerate() {
        for m in 0..=40usize {
            let c = (2.0 * rng.gen::<f64>() - 1.0) * (1.0 + m as f64).powf(-decay);
            trig.push_str(&format!("sig{i},cos,{m},{c}\n"));
        }
        for m in 0..=40usize {
            let s = if m == 0 {
                0.0
            } else {
                (2.0 * rng.gen::<f64>() - 1.0) * (1.0 + m as f64).powf(-decay)
            };
            trig.push_str(&format!("sig{i},sin,{m},{s}\n"));
        }
    }

    (lac, gm, trig)
}
