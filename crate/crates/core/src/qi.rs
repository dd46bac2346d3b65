//! Empirical check of the quasi-isometry bounds
//! `‖w‖/(2(r+1)) ≤ ‖φ(w)‖ ≤ 3‖w‖` and of the lamp-cost identity, with
//! breadth-first oracles cross-checking both length formulas.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::flow_of_word;
use crate::geodesic::geodesic_length_fn;
use crate::group::{BaseGroup, Lattice};
use crate::kernels::KernelCaps;
use crate::oracle::{bfs_geodesic_oracle_fn, bfs_geodesic_oracle_wreath, OracleLength};
use crate::par;
use crate::word::Word;
use crate::wreath::{magnus_embed, wreath_length_circuit, wreath_length_walk, WreathGroup};

pub const WORD_MODEL: &str =
    "uniform reduced words: length uniform in 0..=max_len, first letter uniform over 2r, each next letter uniform over the 2r-1 non-cancelling letters";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignConfig {
    pub rank: usize,
    pub degree: usize,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Radius for both BFS oracles; 0 disables them.
    pub oracle_radius: usize,
    pub caps: KernelCaps,
}

impl CampaignConfig {
    pub fn new(rank: usize, samples: usize, max_len: usize, seed: u64) -> Self {
        CampaignConfig {
            rank,
            degree: 2,
            samples,
            max_len,
            seed,
            oracle_radius: 0,
            caps: KernelCaps::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::ZeroRank);
        }
        if self.degree != 2 {
            return Err(Error::Degree {
                degree: self.degree,
                min: 2,
            });
        }
        Ok(())
    }

    /// The sampled words, drawn sequentially from the seeded generator.
    pub fn words(&self) -> Vec<Word> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.samples)
            .map(|_| {
                let len = rng.random_range(0..=self.max_len);
                Word::random_reduced(&mut rng, self.rank, len)
            })
            .collect()
    }
}

/// Every length computed for one word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lengths {
    pub length_fn: u64,
    pub sum_flow: u64,
    pub q_edges: u64,
    pub shadow_norm: u64,
    pub sum_lamps: u64,
    pub circuit: u64,
    pub walk: u64,
}

/// One word's verification. Pass/fail is always derived from the stored
/// numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiRecord {
    pub word: Word,
    pub rank: usize,
    pub reduced_length: usize,
    pub lengths: std::result::Result<Lengths, String>,
    pub oracle_fn: Option<OracleLength>,
    pub oracle_wreath: Option<OracleLength>,
}

/// Outcome of each individual check; `None` when it could not be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Checks {
    pub lower_walk: bool,
    pub lower_circuit: bool,
    pub upper_walk: bool,
    pub upper_circuit: bool,
    pub lamp_lemma: bool,
    pub quotient: bool,
    pub oracle_fn: Option<bool>,
    pub oracle_wreath: Option<bool>,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.lower_walk
            && self.lower_circuit
            && self.upper_walk
            && self.upper_circuit
            && self.lamp_lemma
            && self.quotient
            && self.oracle_fn != Some(false)
            && self.oracle_wreath != Some(false)
    }
}

fn oracle_agrees(oracle: Option<OracleLength>, value: u64) -> Option<bool> {
    oracle.map(|o| match o {
        OracleLength::Exact(d) => d == value,
        OracleLength::ExceedsRadius(r) => value > r as u64,
    })
}

impl QiRecord {
    pub fn lower_factor(&self) -> u64 {
        2 * (self.rank as u64 + 1)
    }

    /// `‖w‖ / (2(r+1))`, exact.
    pub fn lower_bound(&self) -> Option<Ratio<u64>> {
        let l = self.lengths.as_ref().ok()?;
        Some(Ratio::new(l.length_fn, self.lower_factor()))
    }

    pub fn upper_bound(&self) -> Option<u64> {
        Some(3 * self.lengths.as_ref().ok()?.length_fn)
    }

    pub fn checks(&self) -> Option<Checks> {
        let l = self.lengths.as_ref().ok()?;
        let lower = Ratio::new(l.length_fn, self.lower_factor());
        Some(Checks {
            lower_walk: lower <= Ratio::from_integer(l.walk),
            lower_circuit: lower <= Ratio::from_integer(l.circuit),
            upper_walk: l.walk <= 3 * l.length_fn,
            upper_circuit: l.circuit <= 3 * l.length_fn,
            lamp_lemma: l.sum_lamps == l.sum_flow,
            quotient: l.shadow_norm <= l.length_fn,
            oracle_fn: oracle_agrees(self.oracle_fn, l.length_fn),
            oracle_wreath: oracle_agrees(self.oracle_wreath, l.walk),
        })
    }

    pub fn passed(&self) -> Option<bool> {
        self.checks().map(|c| c.all())
    }

    /// `‖φ(w)‖/‖w‖` for (circuit, walk); `None` for the identity.
    pub fn ratios(&self) -> Option<(Ratio<u64>, Ratio<u64>)> {
        let l = self.lengths.as_ref().ok()?;
        (l.length_fn > 0).then(|| (Ratio::new(l.circuit, l.length_fn), Ratio::new(l.walk, l.length_fn)))
    }
}

pub fn compute_lengths(w: &Word, rank: usize, caps: &KernelCaps) -> Result<Lengths> {
    let base = Lattice::new(rank)?;
    w.check_rank(rank)?;
    let gl = geodesic_length_fn(w, &base, caps)?;
    let e = magnus_embed(w, &base);
    Ok(Lengths {
        length_fn: gl.length,
        sum_flow: flow_of_word(w, &base).total_variation(),
        q_edges: gl.q_edges,
        shadow_norm: base.evaluate(w).l1_norm(),
        sum_lamps: e.sum_lamp_costs(),
        circuit: wreath_length_circuit(&e, caps.tour_points)?,
        walk: wreath_length_walk(&e, caps.tour_points)?,
    })
}

/// Verifies one word. Capacity errors are kept in the record.
pub fn verify_qi(w: &Word, cfg: &CampaignConfig) -> QiRecord {
    let lengths = compute_lengths(w, cfg.rank, &cfg.caps).map_err(|e| e.to_string());
    let (oracle_fn, oracle_wreath) = if cfg.oracle_radius > 0 && lengths.is_ok() {
        let base = Lattice::new(cfg.rank).expect("validated rank");
        let wg = WreathGroup::new(base);
        (
            Some(bfs_geodesic_oracle_fn(w, cfg.rank, cfg.oracle_radius)),
            Some(bfs_geodesic_oracle_wreath(&magnus_embed(w, &base), &wg, cfg.oracle_radius)),
        )
    } else {
        (None, None)
    };
    QiRecord {
        word: w.clone(),
        rank: cfg.rank,
        reduced_length: w.free_reduce().len(),
        lengths,
        oracle_fn,
        oracle_wreath,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ViolationCounts {
    pub lower_walk: usize,
    pub lower_circuit: usize,
    pub upper_walk: usize,
    pub upper_circuit: usize,
    pub lamp_lemma: usize,
    pub quotient: usize,
}

impl ViolationCounts {
    pub fn total(&self) -> usize {
        self.lower_walk + self.lower_circuit + self.upper_walk + self.upper_circuit + self.lamp_lemma + self.quotient
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioRange {
    #[serde(serialize_with = "ratio_opt")]
    pub min: Option<Ratio<u64>>,
    #[serde(serialize_with = "ratio_opt")]
    pub max: Option<Ratio<u64>>,
}

impl RatioRange {
    fn of(values: impl Iterator<Item = Ratio<u64>>) -> Self {
        let mut min = None;
        let mut max = None;
        for v in values {
            min = Some(min.map_or(v, |m: Ratio<u64>| m.min(v)));
            max = Some(max.map_or(v, |m: Ratio<u64>| m.max(v)));
        }
        RatioRange { min, max }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub samples: usize,
    pub evaluated: usize,
    pub capacity_errors: usize,
    pub violations: ViolationCounts,
    pub oracle_checks: usize,
    pub oracle_mismatches: usize,
    pub ratio_circuit: RatioRange,
    pub ratio_walk: RatioRange,
    /// Samples with `circuit = 3‖w‖`.
    pub upper_tight_circuit: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub word_model: &'static str,
    pub records: Vec<QiRecord>,
    pub summary: Summary,
}

fn summarize(records: &[QiRecord]) -> Summary {
    let mut v = ViolationCounts::default();
    let mut oracle_checks = 0;
    let mut oracle_mismatches = 0;
    let mut evaluated = 0;
    for c in records.iter().filter_map(QiRecord::checks) {
        evaluated += 1;
        v.lower_walk += !c.lower_walk as usize;
        v.lower_circuit += !c.lower_circuit as usize;
        v.upper_walk += !c.upper_walk as usize;
        v.upper_circuit += !c.upper_circuit as usize;
        v.lamp_lemma += !c.lamp_lemma as usize;
        v.quotient += !c.quotient as usize;
        for o in [c.oracle_fn, c.oracle_wreath].into_iter().flatten() {
            oracle_checks += 1;
            oracle_mismatches += !o as usize;
        }
    }
    let ratios: Vec<(Ratio<u64>, Ratio<u64>)> = records.iter().filter_map(QiRecord::ratios).collect();
    let three = Ratio::from_integer(3);
    Summary {
        samples: records.len(),
        evaluated,
        capacity_errors: records.len() - evaluated,
        violations: v,
        oracle_checks,
        oracle_mismatches,
        ratio_circuit: RatioRange::of(ratios.iter().map(|r| r.0)),
        ratio_walk: RatioRange::of(ratios.iter().map(|r| r.1)),
        upper_tight_circuit: ratios.iter().filter(|r| r.0 == three).count(),
        passed: v.total() == 0 && oracle_mismatches == 0,
    }
}

fn campaign(cfg: &CampaignConfig, parallel: bool) -> Result<CampaignReport> {
    cfg.validate()?;
    let words = cfg.words();
    let records = if parallel {
        par::map(&words, |w| verify_qi(w, cfg))
    } else {
        par::map_sequential(&words, |w| verify_qi(w, cfg))
    };
    let summary = summarize(&records);
    Ok(CampaignReport {
        config: cfg.clone(),
        word_model: WORD_MODEL,
        records,
        summary,
    })
}

/// Runs a seeded campaign, evaluating samples in parallel when the
/// `parallel` feature is on. Output is identical either way.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    campaign(cfg, true)
}

pub fn run_campaign_sequential(cfg: &CampaignConfig) -> Result<CampaignReport> {
    campaign(cfg, false)
}

fn ratio_str(r: &Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_opt<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ratio_str(r)),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RecordView<'a> {
    word: &'a Word,
    rank: usize,
    reduced_length: usize,
    #[serde(rename = "lengthFN")]
    length_fn: Option<u64>,
    sum_flow: Option<u64>,
    q_edges: Option<u64>,
    shadow_norm: Option<u64>,
    sum_lamps: Option<u64>,
    wreath_circuit: Option<u64>,
    wreath_walk: Option<u64>,
    #[serde(serialize_with = "ratio_opt")]
    lower_bound: Option<Ratio<u64>>,
    upper_bound: Option<u64>,
    #[serde(rename = "oracleFN")]
    oracle_fn: Option<OracleLength>,
    oracle_wreath: Option<OracleLength>,
    checks: Option<Checks>,
    pass: Option<bool>,
    error: Option<&'a str>,
}

impl Serialize for QiRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let l = self.lengths.as_ref().ok();
        RecordView {
            word: &self.word,
            rank: self.rank,
            reduced_length: self.reduced_length,
            length_fn: l.map(|l| l.length_fn),
            sum_flow: l.map(|l| l.sum_flow),
            q_edges: l.map(|l| l.q_edges),
            shadow_norm: l.map(|l| l.shadow_norm),
            sum_lamps: l.map(|l| l.sum_lamps),
            wreath_circuit: l.map(|l| l.circuit),
            wreath_walk: l.map(|l| l.walk),
            lower_bound: self.lower_bound(),
            upper_bound: self.upper_bound(),
            oracle_fn: self.oracle_fn,
            oracle_wreath: self.oracle_wreath,
            checks: self.checks(),
            pass: self.passed(),
            error: self.lengths.as_ref().err().map(String::as_str),
        }
        .serialize(s)
    }
}

impl CampaignReport {
    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report serializes")
    }

    /// One row per word.
    pub fn to_csv(&self) -> String {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(["word", "lengthFN", "circuit", "walk", "ratioCircuit", "ratioWalk", "pass"])
            .expect("in-memory write");
        for r in &self.records {
            let l = r.lengths.as_ref().ok();
            let num = |f: fn(&Lengths) -> u64| l.map(|l| f(l).to_string()).unwrap_or_default();
            let (rc, rw) = r
                .ratios()
                .map(|(c, w)| (ratio_str(&c), ratio_str(&w)))
                .unwrap_or_default();
            let pass = match r.passed() {
                Some(true) => "true",
                Some(false) => "false",
                None => "capacity",
            };
            out.write_record([
                r.word.to_string(),
                num(|l| l.length_fn),
                num(|l| l.circuit),
                num(|l| l.walk),
                rc,
                rw,
                pass.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(out.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let v = &s.violations;
        let range = |r: &RatioRange| match (&r.min, &r.max) {
            (Some(a), Some(b)) => format!("[{}, {}]", ratio_str(a), ratio_str(b)),
            _ => "n/a".to_string(),
        };
        let mut t = String::new();
        t.push_str(&format!(
            "rank {} seed {} samples {} max-len {}\n",
            self.config.rank, self.config.seed, s.samples, self.config.max_len
        ));
        t.push_str(&format!("evaluated {} capacity-errors {}\n", s.evaluated, s.capacity_errors));
        t.push_str(&format!(
            "violations: lower(walk) {} lower(circuit) {} upper(walk) {} upper(circuit) {} lamp-lemma {} quotient {}\n",
            v.lower_walk, v.lower_circuit, v.upper_walk, v.upper_circuit, v.lamp_lemma, v.quotient
        ));
        t.push_str(&format!("oracle checks {} mismatches {}\n", s.oracle_checks, s.oracle_mismatches));
        t.push_str(&format!(
            "ratio circuit/FN {} walk/FN {} circuit=3FN on {} samples\n",
            range(&s.ratio_circuit),
            range(&s.ratio_walk),
            s.upper_tight_circuit
        ));
        t.push_str(if s.passed { "PASS\n" } else { "FAIL\n" });
        t
    }
}
