//! Randomized property suite over every inequality checker.
//!
//! Samples are drawn in fixed-size chunks, each with its own ChaCha stream
//! derived from `(seed, inequality, chunk)`, so the sample set and the merged
//! report do not depend on the number of workers.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::*;

/// Half-width of the band around an equality manifold inside which only
/// `margin ≥ −1e-12` is required.
pub const NEAR_EQUALITY_BAND: f64 = 1e-6;

const BAND_TOLERANCE: f64 = 1e-12;
const TIGHT_MARGIN: f64 = 1e-14;
const CHUNK: usize = 1024;
const EQUALITY_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    Log(LogBound),
    Power7,
    Power8,
    PowerA(PowerBound),
    Lemma2Rect,
    Eq15Bound,
    Lemma2H1,
    Lemma2Product,
    Lemma2Reduced,
}

impl Inequality {
    pub const ALL: [Inequality; 18] = [
        Inequality::Log(LogBound::Eq3Lo),
        Inequality::Log(LogBound::Eq3Hi),
        Inequality::Log(LogBound::Eq4Lo),
        Inequality::Log(LogBound::Eq4Hi),
        Inequality::Log(LogBound::Eq5Lo),
        Inequality::Log(LogBound::Eq5Hi),
        Inequality::Log(LogBound::Eq6Lo),
        Inequality::Log(LogBound::Eq6Hi),
        Inequality::Power7,
        Inequality::Power8,
        Inequality::PowerA(PowerBound::Eq9),
        Inequality::PowerA(PowerBound::Eq10),
        Inequality::PowerA(PowerBound::Eq11),
        Inequality::Lemma2Rect,
        Inequality::Eq15Bound,
        Inequality::Lemma2H1,
        Inequality::Lemma2Product,
        Inequality::Lemma2Reduced,
    ];

    pub fn all() -> &'static [Inequality] {
        &Self::ALL
    }

    pub fn name(self) -> &'static str {
        match self {
            Inequality::Log(LogBound::Eq3Lo) => "log_bound_eq3_lo",
            Inequality::Log(LogBound::Eq3Hi) => "log_bound_eq3_hi",
            Inequality::Log(LogBound::Eq4Lo) => "log_bound_eq4_lo",
            Inequality::Log(LogBound::Eq4Hi) => "log_bound_eq4_hi",
            Inequality::Log(LogBound::Eq5Lo) => "log_bound_eq5_lo",
            Inequality::Log(LogBound::Eq5Hi) => "log_bound_eq5_hi",
            Inequality::Log(LogBound::Eq6Lo) => "log_bound_eq6_lo",
            Inequality::Log(LogBound::Eq6Hi) => "log_bound_eq6_hi",
            Inequality::Power7 => "power_ineq_7",
            Inequality::Power8 => "power_ineq_8",
            Inequality::PowerA(PowerBound::Eq9) => "power_ineq_a_eq9",
            Inequality::PowerA(PowerBound::Eq10) => "power_ineq_a_eq10",
            Inequality::PowerA(PowerBound::Eq11) => "power_ineq_a_eq11",
            Inequality::Lemma2Rect => "lemma2_rect",
            Inequality::Eq15Bound => "eq15_bound",
            Inequality::Lemma2H1 => "lemma2_h1",
            Inequality::Lemma2Product => "lemma2_product",
            Inequality::Lemma2Reduced => "lemma2_reduced",
        }
    }

    pub fn from_name(name: &str) -> Option<Inequality> {
        Self::all().iter().copied().find(|i| i.name() == name)
    }

    fn stream_id(self) -> u64 {
        Self::all().iter().position(|&i| i == self).unwrap() as u64
    }

    /// Evaluate at a parameter vector laid out as the checker's arguments.
    pub fn evaluate(self, p: &[f64]) -> MarginResult {
        match self {
            Inequality::Log(v) => log_bound(v, p[0]),
            Inequality::Power7 => power_ineq_7(p[0], p[1]),
            Inequality::Power8 => power_ineq_8(p[0], p[1]),
            Inequality::PowerA(v) => power_ineq_a(v, p[0], p[1]),
            Inequality::Lemma2Rect => lemma2_rect(p[0], p[1], p[2]),
            Inequality::Eq15Bound => eq15_bound(p[0], p[1], p[2]),
            Inequality::Lemma2H1 => lemma2_h1(p[0], p[1]),
            Inequality::Lemma2Product => lemma2_product(p[0], p[1]),
            Inequality::Lemma2Reduced => lemma2_reduced(p[0], p[1]),
        }
    }

    /// Draw one in-domain parameter vector.
    fn sample(self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            Inequality::Log(v) => {
                let x = match v {
                    LogBound::Eq3Lo | LogBound::Eq3Hi => outer_x(rng),
                    LogBound::Eq6Lo | LogBound::Eq6Hi => -open_unit(rng),
                    _ => log_uniform(rng, 1e-3, 1e3),
                };
                vec![x]
            }
            Inequality::Power7 => vec![exponent_t(rng), outer_x(rng)],
            Inequality::Power8 => vec![exponent_t(rng), 2.0 * rng.gen::<f64>()],
            Inequality::PowerA(v) => {
                let a = rng.gen::<f64>();
                let x = match v {
                    PowerBound::Eq9 => outer_x(rng),
                    PowerBound::Eq10 => log_uniform(rng, 1e-3, 1e3),
                    PowerBound::Eq11 => -1.0 - log_uniform(rng, 1e-3, 1e3),
                };
                vec![a, x]
            }
            Inequality::Lemma2Rect => {
                let x = RECT_X_MIN + 2.0 * exponential(rng);
                vec![x, strip_sigma(rng), rng.gen_range(-50.0..50.0)]
            }
            Inequality::Eq15Bound => {
                let x = RECT_X_MIN + 2.0 * exponential(rng);
                let y = 1.0 + 5.0 * exponential(rng);
                vec![x, y, rng.gen_range(-50.0..50.0)]
            }
            Inequality::Lemma2H1 => vec![strip_sigma(rng), 0.5 + 10.0 * exponential(rng)],
            Inequality::Lemma2Product => vec![strip_sigma(rng), 12.0 + 20.0 * exponential(rng)],
            Inequality::Lemma2Reduced => {
                vec![0.5 * (1.0 - rng.gen::<f64>()), 12.0 + 20.0 * exponential(rng)]
            }
        }
    }

    /// Whether `p` lies within [`NEAR_EQUALITY_BAND`] of a point where the
    /// inequality degenerates to equality.
    pub fn near_equality(self, p: &[f64]) -> bool {
        let near = |a: f64, b: f64| (a - b).abs() < NEAR_EQUALITY_BAND;
        match self {
            Inequality::Log(LogBound::Eq5Lo | LogBound::Eq5Hi | LogBound::Eq6Lo | LogBound::Eq6Hi) => {
                near(p[0], 0.0)
            }
            Inequality::Log(_) => false,
            Inequality::Power7 => near(p[0], 1.0) || near(p[1], -1.0),
            Inequality::Power8 => near(p[0], 1.0) || near(p[1], 0.0),
            Inequality::PowerA(PowerBound::Eq9) => near(p[0], 0.0) || near(p[0], 1.0) || near(p[1], -1.0),
            Inequality::PowerA(_) => near(p[0], 0.0) || near(p[0], 1.0),
            Inequality::Lemma2Rect => near(p[1], 0.5),
            Inequality::Lemma2H1 | Inequality::Lemma2Product => near(p[0], 0.5),
            Inequality::Eq15Bound => near(p[0], RECT_X_MIN) && near(p[1], 1.0) && near(p[2], 0.0),
            Inequality::Lemma2Reduced => false,
        }
    }

    /// Parameter vectors on the equality manifold, where `|margin| ≤ 1e-12`
    /// is required.
    fn equality_sample(self, rng: &mut ChaCha8Rng, i: usize) -> Option<Vec<f64>> {
        match self {
            Inequality::Power7 => Some(vec![1.0, outer_x(rng)]),
            Inequality::Power8 => Some(if i % 2 == 0 {
                vec![exponent_t(rng), 0.0]
            } else {
                vec![1.0, 2.0 * rng.gen::<f64>()]
            }),
            Inequality::PowerA(v) => {
                let a = if i % 2 == 0 { 0.0 } else { 1.0 };
                let x = match v {
                    PowerBound::Eq9 => outer_x(rng),
                    PowerBound::Eq10 => log_uniform(rng, 1e-3, 1e3),
                    PowerBound::Eq11 => -1.0 - log_uniform(rng, 1e-3, 1e3),
                };
                Some(vec![a, x])
            }
            _ => None,
        }
    }

    /// Fixed vectors that must hold strictly, reported individually.
    fn anchors(self) -> Vec<Vec<f64>> {
        match self {
            Inequality::Lemma2Reduced => vec![vec![0.5, 12.0]],
            Inequality::Lemma2Product => vec![vec![0.25, 12.0], vec![0.49, 12.0]],
            Inequality::Lemma2H1 => vec![vec![0.25, 1.0], vec![0.01, 0.5]],
            _ => Vec::new(),
        }
    }
}

fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return u;
        }
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.gen::<f64>() * (hi / lo).ln()).exp()
}

fn exponential(rng: &mut ChaCha8Rng) -> f64 {
    -open_unit(rng).ln()
}

/// `x < −1` or `x > 0`, log-uniform in magnitude on each branch.
fn outer_x(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen::<bool>() {
        log_uniform(rng, 1e-3, 1e3)
    } else {
        -1.0 - log_uniform(rng, 1e-3, 1e3)
    }
}

/// Lemma exponent `t ≥ 1`, dense near 1.
fn exponent_t(rng: &mut ChaCha8Rng) -> f64 {
    1.0 + log_uniform(rng, 1e-4, 1e2)
}

fn strip_sigma(rng: &mut ChaCha8Rng) -> f64 {
    0.5 * open_unit(rng).min(1.0 - f64::EPSILON)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 100_000,
            seed: 0x5eed_2e7a,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityTally {
    pub samples: usize,
    pub max_abs_margin: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorResult {
    pub params: Vec<f64>,
    pub result: MarginResult,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: &'static str,
    pub samples: usize,
    pub passed: usize,
    pub violations: usize,
    /// Samples inside the near-equality band.
    pub in_band: usize,
    /// Out-of-band samples with `0 ≤ margin ≤ 1e-14`: not violations, but too
    /// close to zero to certify strictness in binary64.
    pub tight: usize,
    pub domain_rejects: usize,
    /// Smallest out-of-band margin and where it occurred.
    pub worst_margin: f64,
    pub worst_params: Vec<f64>,
    /// First few violating parameter vectors.
    pub violation_examples: Vec<Vec<f64>>,
    pub equality: Option<EqualityTally>,
    pub anchors: Vec<AnchorResult>,
}

impl InequalityReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
            && self.equality.as_ref().is_none_or(|e| e.failures == 0)
            && self.anchors.iter().all(|a| a.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub samples_per_inequality: usize,
    pub inequalities: Vec<InequalityReport>,
}

impl SuiteReport {
    pub fn total_violations(&self) -> usize {
        self.inequalities.iter().map(|r| r.violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.inequalities.iter().all(InequalityReport::is_clean)
    }
}

#[derive(Default)]
struct ChunkTally {
    samples: usize,
    passed: usize,
    violations: usize,
    in_band: usize,
    tight: usize,
    domain_rejects: usize,
    worst: Option<(f64, Vec<f64>)>,
    examples: Vec<Vec<f64>>,
}

impl ChunkTally {
    fn merge(&mut self, other: ChunkTally) {
        self.samples += other.samples;
        self.passed += other.passed;
        self.violations += other.violations;
        self.in_band += other.in_band;
        self.tight += other.tight;
        self.domain_rejects += other.domain_rejects;
        if let Some((m, p)) = other.worst {
            if self.worst.as_ref().is_none_or(|(w, _)| m < *w) {
                self.worst = Some((m, p));
            }
        }
        for e in other.examples {
            if self.examples.len() < 8 {
                self.examples.push(e);
            }
        }
    }
}

fn chunk_rng(seed: u64, ineq: Inequality, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((ineq.stream_id() << 40) | chunk);
    rng
}

fn classify(ineq: Inequality, p: &[f64], r: &MarginResult, tally: &mut ChunkTally) {
    tally.samples += 1;
    if !r.domain_ok {
        tally.domain_rejects += 1;
        return;
    }
    let in_band = ineq.near_equality(p);
    let violated = if in_band {
        tally.in_band += 1;
        r.margin < -BAND_TOLERANCE
    } else {
        r.margin < -4.0 * f64::EPSILON * r.scale()
    };
    if violated {
        tally.violations += 1;
        if tally.examples.len() < 8 {
            tally.examples.push(p.to_vec());
        }
    } else {
        tally.passed += 1;
    }
    if !in_band {
        if !violated && r.margin <= TIGHT_MARGIN {
            tally.tight += 1;
        }
        if tally.worst.as_ref().is_none_or(|(w, _)| r.margin < *w) {
            tally.worst = Some((r.margin, p.to_vec()));
        }
    }
}

fn run_chunk(ineq: Inequality, seed: u64, chunk: usize, count: usize) -> ChunkTally {
    let mut rng = chunk_rng(seed, ineq, chunk as u64);
    let mut tally = ChunkTally::default();
    for _ in 0..count {
        let p = ineq.sample(&mut rng);
        let r = ineq.evaluate(&p);
        classify(ineq, &p, &r, &mut tally);
    }
    tally
}

fn run_one(ineq: Inequality, cfg: &SuiteConfig) -> InequalityReport {
    let chunks = cfg.samples.div_ceil(CHUNK);
    let tallies: Vec<ChunkTally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(cfg.samples - c * CHUNK);
            run_chunk(ineq, cfg.seed, c, count)
        })
        .collect();
    let mut total = ChunkTally::default();
    for t in tallies {
        total.merge(t);
    }

    // equality manifold draws live on their own stream past the sample chunks
    let mut eq_rng = chunk_rng(cfg.seed, ineq, u32::MAX as u64);
    let mut equality: Option<EqualityTally> = None;
    for i in 0..EQUALITY_SAMPLES {
        let Some(p) = ineq.equality_sample(&mut eq_rng, i) else {
            break;
        };
        let r = ineq.evaluate(&p);
        let tally = equality.get_or_insert(EqualityTally {
            samples: 0,
            max_abs_margin: 0.0,
            failures: 0,
        });
        tally.samples += 1;
        let ok = r.domain_ok && r.margin.abs() <= BAND_TOLERANCE;
        if !ok {
            tally.failures += 1;
        }
        if r.domain_ok {
            tally.max_abs_margin = tally.max_abs_margin.max(r.margin.abs());
        }
    }

    let anchors = ineq
        .anchors()
        .into_iter()
        .map(|p| {
            let result = ineq.evaluate(&p);
            let passed = result.domain_ok && result.margin > TIGHT_MARGIN;
            AnchorResult { params: p, result, passed }
        })
        .collect();

    let (worst_margin, worst_params) = total.worst.unwrap_or((f64::NAN, Vec::new()));
    InequalityReport {
        name: ineq.name(),
        samples: total.samples,
        passed: total.passed,
        violations: total.violations,
        in_band: total.in_band,
        tight: total.tight,
        domain_rejects: total.domain_rejects,
        worst_margin,
        worst_params,
        violation_examples: total.examples,
        equality,
        anchors,
    }
}

/// Run the suite over `inequalities` (every checker when empty) on a pool of
/// `cfg.workers` threads.
pub fn run_suite(cfg: &SuiteConfig, inequalities: &[Inequality]) -> SuiteReport {
    let selected: Vec<Inequality> = if inequalities.is_empty() {
        Inequality::all().to_vec()
    } else {
        inequalities.to_vec()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool");
    let reports = pool.install(|| selected.iter().map(|&i| run_one(i, cfg)).collect());
    SuiteReport {
        seed: cfg.seed,
        samples_per_inequality: cfg.samples,
        inequalities: reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_stay_in_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &ineq in Inequality::all() {
            for _ in 0..2000 {
                let p = ineq.sample(&mut rng);
                let r = ineq.evaluate(&p);
                assert!(r.domain_ok, "{} rejected {:?}", ineq.name(), p);
            }
        }
    }

    #[test]
    fn small_suite_is_clean_and_worker_independent() {
        let cfg = SuiteConfig { samples: 3000, seed: 11, workers: 1 };
        let one = run_suite(&cfg, &[]);
        assert!(one.is_clean(), "{:#?}", one);
        let cfg4 = SuiteConfig { workers: 4, ..cfg };
        let four = run_suite(&cfg4, &[]);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
    }

    #[test]
    fn equality_manifolds_are_exercised() {
        let cfg = SuiteConfig { samples: 10, seed: 3, workers: 1 };
        let report = run_suite(&cfg, &[Inequality::Power7, Inequality::PowerA(PowerBound::Eq10)]);
        for r in &report.inequalities {
            let eq = r.equality.as_ref().unwrap();
            assert_eq!(eq.samples, EQUALITY_SAMPLES);
            assert!(eq.max_abs_margin <= 1e-12);
        }
    }
}
