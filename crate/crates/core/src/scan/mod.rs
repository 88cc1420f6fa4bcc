//! Grid sweeps over rectangles of the critical strip.
//!
//! A scan evaluates a signed margin (positive = the bound holds) on the node
//! lattice of a [`StripRect`], then subdivides every cell whose smallest
//! corner margin falls below the refinement threshold, 2× per axis, up to the
//! configured depth. Rows of cells are processed in parallel on the current
//! rayon pool; the merge is order-normalised so reports do not depend on the
//! worker count.

mod figure;
mod zero;

pub use figure::{emit_figure_grid, write_figure_file, FIGURE_HEADER};
pub use zero::{locate_zero, rotated_zeta};

use std::cmp::Ordering;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chi::{chi, h_partial};
use crate::error::EvalError;
use crate::point::{ComplexPoint, EvalConfig, POLE_GUARD};
use crate::zeta::{zeta, zeta_and_deriv};

/// Samples with `|ζ(s)|` and `|margin|` both below this are classified as
/// equality at a zero rather than as theorem violations.
pub const ZERO_TOLERANCE: f64 = 1e-6;

/// Lower edge of the region where the inequality is proved.
pub const PROVED_T_MIN: f64 = 12.0;

/// Lower edge of the region covered by simulation and by condition (A).
pub const SIMULATION_T_MIN: f64 = 6.5;

/// Scans that chain into the `t ≥ 1/2` lemma hypotheses stay above this.
pub const LEMMA_T_FLOOR: f64 = 0.5;

/// Central-difference step for the condition (A) derivative audit.
const AUDIT_STEP: f64 = 1e-5;
const AUDIT_SAMPLES: usize = 100;
const MAX_LISTED_VIOLATIONS: usize = 10_000;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid scan setup: {0}")]
    Setup(String),
}

/// Closed rectangle `[sigma_min, sigma_max] × [t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripRect {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl StripRect {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self, ScanError> {
        let all_finite = [sigma_min, sigma_max, t_min, t_max].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(ScanError::Setup("rectangle bounds must be finite".into()));
        }
        if !(0.0 <= sigma_min && sigma_min < sigma_max && sigma_max <= 1.0) {
            return Err(ScanError::Setup(format!(
                "need 0 <= sigma_min < sigma_max <= 1, got [{sigma_min}, {sigma_max}]"
            )));
        }
        if t_min >= t_max {
            return Err(ScanError::Setup(format!("need t_min < t_max, got [{t_min}, {t_max}]")));
        }
        // s = 0 and s = 1 are the only poles of ζ or g with 0 ≤ σ ≤ 1
        let touches_axis = t_min <= POLE_GUARD && t_max >= -POLE_GUARD;
        if touches_axis && (sigma_min <= POLE_GUARD || sigma_max >= 1.0 - POLE_GUARD) {
            return Err(ScanError::Setup("rectangle contains s = 0 or s = 1".into()));
        }
        Ok(StripRect { sigma_min, sigma_max, t_min, t_max })
    }
}

/// Node spacing and refinement policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub d_sigma: f64,
    pub d_t: f64,
    pub refine_threshold: f64,
    pub max_refine_depth: u8,
}

impl GridSpec {
    pub const MAX_DEPTH: u8 = 6;

    pub fn new(d_sigma: f64, d_t: f64, refine_threshold: f64, max_refine_depth: u8) -> Result<Self, ScanError> {
        if !(d_sigma > 0.0 && d_t > 0.0 && d_sigma.is_finite() && d_t.is_finite()) {
            return Err(ScanError::Setup("grid steps must be positive".into()));
        }
        if refine_threshold.is_nan() {
            return Err(ScanError::Setup("refine threshold is NaN".into()));
        }
        if max_refine_depth > Self::MAX_DEPTH {
            return Err(ScanError::Setup(format!(
                "max_refine_depth {max_refine_depth} exceeds {}",
                Self::MAX_DEPTH
            )));
        }
        Ok(GridSpec { d_sigma, d_t, refine_threshold, max_refine_depth })
    }

    /// Uniform lattice, no refinement.
    pub fn uniform(d_sigma: f64, d_t: f64) -> Result<Self, ScanError> {
        Self::new(d_sigma, d_t, f64::NEG_INFINITY, 0)
    }

    /// Default refinement: threshold 0.01, depth 4.
    pub fn refined(d_sigma: f64, d_t: f64) -> Result<Self, ScanError> {
        Self::new(d_sigma, d_t, 0.01, 4)
    }

    pub(crate) fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
        let n = ((hi - lo) / step).round().max(1.0) as usize;
        (0..=n)
            .map(|i| if i == n { hi } else { lo + i as f64 * step })
            .collect()
    }

    pub(crate) fn sigma_nodes(&self, rect: &StripRect) -> Vec<f64> {
        Self::axis(rect.sigma_min, rect.sigma_max, self.d_sigma)
    }

    pub(crate) fn t_nodes(&self, rect: &StripRect) -> Vec<f64> {
        Self::axis(rect.t_min, rect.t_max, self.d_t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Quantity {
    #[serde(rename = "chi_modulus")]
    ChiModulus,
    #[serde(rename = "theorem")]
    Theorem,
    #[serde(rename = "hN_bound")]
    HnBound,
    #[serde(rename = "condition_A")]
    ConditionA,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::ChiModulus => "chi_modulus",
            Quantity::Theorem => "theorem",
            Quantity::HnBound => "hN_bound",
            Quantity::ConditionA => "condition_A",
        }
    }
}

/// What the scanned rectangle is claimed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Covered by the proof (`t ≥ 12`, or `N ≥ 3` at `t ≥ 12` for the partial product).
    Proved,
    /// `6.5 ≤ t < 12`: claimed on the basis of simulation.
    Simulation,
    /// Condition (A): a conjecture.
    Conjectural,
    /// Nothing is claimed.
    Exploratory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Clean,
    /// Negative margin where the bound is claimed.
    Violation,
    /// Negative margin where nothing is guaranteed.
    Finding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginPoint {
    pub sigma: f64,
    pub t: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub sigma: f64,
    pub t: f64,
    pub error: String,
}

/// Analytic `∂σ|ζ|²` against a central difference on a subsample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeAudit {
    pub samples: usize,
    pub max_abs_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub target_abs_error: f64,
    pub max_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_fixed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub quantity: Quantity,
    pub region: Region,
    pub severity: Severity,
    pub rect: Option<StripRect>,
    pub grid: Option<GridSpec>,
    pub samples: usize,
    /// Lattice nodes on the open boundary σ ∈ {0, 1/2}; they only steer refinement.
    pub excluded_nodes: usize,
    pub min_margin: f64,
    pub argmin: ComplexPoint,
    pub violation_count: usize,
    /// Sorted by (σ, t); at most 10 000 listed.
    pub violations: Vec<MarginPoint>,
    /// Theorem scan only: small-margin samples at a near-zero of ζ.
    pub near_zero_equalities: usize,
    pub refined_cells: usize,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivative_audit: Option<DerivativeAudit>,
    pub wall_time_s: Option<f64>,
    pub config_echo: ConfigEcho,
}

impl ScanReport {
    /// Drop the wall-clock field so repeated runs compare byte-for-byte.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_s = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    sigma: f64,
    t: f64,
    margin: f64,
    near_zero: bool,
}

type Eval = Result<Sample, Diagnostic>;

fn region_for(quantity: Quantity, t_min: f64) -> Region {
    match quantity {
        Quantity::ConditionA if t_min >= SIMULATION_T_MIN => Region::Conjectural,
        Quantity::ConditionA => Region::Exploratory,
        _ if t_min >= PROVED_T_MIN => Region::Proved,
        _ if t_min >= SIMULATION_T_MIN => Region::Simulation,
        _ => Region::Exploratory,
    }
}

fn severity_for(region: Region, violations: usize) -> Severity {
    match (violations, region) {
        (0, _) => Severity::Clean,
        (_, Region::Proved | Region::Simulation) => Severity::Violation,
        _ => Severity::Finding,
    }
}

/// Margin of one quantity at one point of the open left half-strip.
fn evaluate(quantity: Quantity, sigma: f64, t: f64, cfg: &EvalConfig) -> Eval {
    let s = Complex64::new(sigma, t);
    let result: Result<(f64, bool), EvalError> = (|| match quantity {
        Quantity::ChiModulus => Ok((1.0 - chi(s, cfg)?.norm(), false)),
        Quantity::Theorem => {
            let left = zeta(s, cfg)?.norm();
            let right = zeta(1.0 - s, cfg)?.norm();
            let margin = left - right;
            Ok((margin, left < ZERO_TOLERANCE && margin.abs() < ZERO_TOLERANCE))
        }
        Quantity::ConditionA => {
            let (z, dz) = zeta_and_deriv(s, cfg)?;
            Ok((-2.0 * (dz * z.conj()).re, false))
        }
        Quantity::HnBound => unreachable!("partial-product scans are one-dimensional"),
    })();
    match result {
        Ok((margin, near_zero)) => Ok(Sample { sigma, t, margin, near_zero }),
        Err(e) => Err(Diagnostic { sigma, t, error: e.to_string() }),
    }
}

/// Open left half-strip `0 < σ < 1/2`.
fn in_open_strip(sigma: f64) -> bool {
    sigma > 0.0 && sigma < 0.5
}

#[derive(Default)]
struct Tally {
    samples: usize,
    refined_cells: usize,
    near_zero: usize,
    min: Option<Sample>,
    violations: Vec<MarginPoint>,
    diagnostics: Vec<Diagnostic>,
}

fn sample_order(a: &Sample, b: &Sample) -> Ordering {
    a.margin
        .total_cmp(&b.margin)
        .then(a.sigma.total_cmp(&b.sigma))
        .then(a.t.total_cmp(&b.t))
}

impl Tally {
    fn record(&mut self, eval: &Eval) {
        self.samples += 1;
        match eval {
            Ok(s) => {
                if self.min.as_ref().is_none_or(|m| sample_order(s, m) == Ordering::Less) {
                    self.min = Some(*s);
                }
                if s.near_zero {
                    self.near_zero += 1;
                } else if s.margin < 0.0 {
                    self.violations.push(MarginPoint { sigma: s.sigma, t: s.t, margin: s.margin });
                }
            }
            Err(d) => self.diagnostics.push(d.clone()),
        }
    }

    fn merge(&mut self, other: Tally) {
        self.samples += other.samples;
        self.refined_cells += other.refined_cells;
        self.near_zero += other.near_zero;
        if let Some(m) = other.min {
            if self.min.as_ref().is_none_or(|cur| sample_order(&m, cur) == Ordering::Less) {
                self.min = Some(m);
            }
        }
        self.violations.extend(other.violations);
        self.diagnostics.extend(other.diagnostics);
    }
}

/// A lattice or refinement point. Points on the open boundary σ ∈ {0, 1/2}
/// are evaluated as probes: their margin can trigger refinement of the
/// neighbouring cells, but they are not samples of the scan.
struct Node {
    eval: Eval,
    counted: bool,
}

impl Node {
    fn evaluate(quantity: Quantity, sigma: f64, t: f64, cfg: &EvalConfig) -> Node {
        Node { eval: evaluate(quantity, sigma, t, cfg), counted: in_open_strip(sigma) }
    }

    fn margin(&self) -> Option<f64> {
        self.eval.as_ref().ok().map(|s| s.margin)
    }
}

struct Refiner<'a> {
    quantity: Quantity,
    cfg: &'a EvalConfig,
    threshold: f64,
    max_depth: u8,
}

impl Refiner<'_> {
    fn needs_refinement(&self, corners: &[Option<f64>; 4]) -> bool {
        corners.iter().flatten().any(|&m| m < self.threshold)
    }

    fn point(&self, sigma: f64, t: f64, tally: &mut Tally) -> Option<f64> {
        let node = Node::evaluate(self.quantity, sigma, t, self.cfg);
        if node.counted {
            tally.record(&node.eval);
        }
        node.margin()
    }

    /// Corners are ordered (σ₀,t₀), (σ₀,t₁), (σ₁,t₀), (σ₁,t₁).
    fn refine(&self, s0: f64, s1: f64, t0: f64, t1: f64, corners: [Option<f64>; 4], depth: u8, tally: &mut Tally) {
        if depth >= self.max_depth || !self.needs_refinement(&corners) {
            return;
        }
        tally.refined_cells += 1;
        let sm = 0.5 * (s0 + s1);
        let tm = 0.5 * (t0 + t1);
        let left = self.point(s0, tm, tally);
        let bottom = self.point(sm, t0, tally);
        let centre = self.point(sm, tm, tally);
        let top = self.point(sm, t1, tally);
        let right = self.point(s1, tm, tally);
        let [c00, c01, c10, c11] = corners;
        self.refine(s0, sm, t0, tm, [c00, left, bottom, centre], depth + 1, tally);
        self.refine(s0, sm, tm, t1, [left, c01, centre, top], depth + 1, tally);
        self.refine(sm, s1, t0, tm, [bottom, centre, c10, right], depth + 1, tally);
        self.refine(sm, s1, tm, t1, [centre, top, right, c11], depth + 1, tally);
    }
}

fn validate_strip_rect(quantity: Quantity, rect: &StripRect) -> Result<(), ScanError> {
    if rect.sigma_max > 0.5 {
        return Err(ScanError::Setup(format!(
            "{} scans need the rectangle inside 0 <= sigma <= 1/2",
            quantity.name()
        )));
    }
    let floor = match quantity {
        Quantity::ChiModulus => 0.0,
        _ => LEMMA_T_FLOOR,
    };
    let ok = if floor == 0.0 { rect.t_min > 0.0 } else { rect.t_min >= floor };
    if !ok {
        return Err(ScanError::Setup(format!(
            "{} scans need t_min {} {floor}; the t < 0 half follows by conjugate symmetry",
            quantity.name(),
            if floor == 0.0 { ">" } else { ">=" }
        )));
    }
    Ok(())
}

fn scan_rect(quantity: Quantity, rect: &StripRect, grid: &GridSpec, cfg: &EvalConfig) -> Result<ScanReport, ScanError> {
    validate_strip_rect(quantity, rect)?;
    let started = Instant::now();
    let sigmas = grid.sigma_nodes(rect);
    let ts = grid.t_nodes(rect);

    let nodes: Vec<Vec<Node>> = sigmas
        .par_iter()
        .map(|&sigma| ts.iter().map(|&t| Node::evaluate(quantity, sigma, t, cfg)).collect())
        .collect();
    let excluded_nodes = nodes.iter().flatten().filter(|n| !n.counted).count();

    let mut total = Tally::default();
    for node in nodes.iter().flatten().filter(|n| n.counted) {
        total.record(&node.eval);
    }

    let refiner = Refiner {
        quantity,
        cfg,
        threshold: grid.refine_threshold,
        max_depth: grid.max_refine_depth,
    };
    if grid.max_refine_depth > 0 && sigmas.len() > 1 && ts.len() > 1 {
        let rows: Vec<Tally> = (0..sigmas.len() - 1)
            .into_par_iter()
            .map(|i| {
                let mut tally = Tally::default();
                for j in 0..ts.len() - 1 {
                    let corners = [
                        nodes[i][j].margin(),
                        nodes[i][j + 1].margin(),
                        nodes[i + 1][j].margin(),
                        nodes[i + 1][j + 1].margin(),
                    ];
                    refiner.refine(sigmas[i], sigmas[i + 1], ts[j], ts[j + 1], corners, 0, &mut tally);
                }
                tally
            })
            .collect();
        for row in rows {
            total.merge(row);
        }
    }

    let audit = (quantity == Quantity::ConditionA).then(|| derivative_audit(&nodes, cfg));
    let region = region_for(quantity, rect.t_min);
    Ok(finish(quantity, region, Some(*rect), Some(*grid), excluded_nodes, total, audit, started, echo(cfg)))
}

fn echo(cfg: &EvalConfig) -> ConfigEcho {
    ConfigEcho {
        target_abs_error: cfg.target_abs_error(),
        max_terms: cfg.max_terms(),
        n_terms: None,
        t_fixed: None,
        sigma_steps: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    quantity: Quantity,
    region: Region,
    rect: Option<StripRect>,
    grid: Option<GridSpec>,
    excluded_nodes: usize,
    mut total: Tally,
    derivative_audit: Option<DerivativeAudit>,
    started: Instant,
    config_echo: ConfigEcho,
) -> ScanReport {
    total.violations.sort_by(|a, b| a.sigma.total_cmp(&b.sigma).then(a.t.total_cmp(&b.t)));
    total.violations.dedup_by(|a, b| a.sigma == b.sigma && a.t == b.t);
    total.diagnostics.sort_by(|a, b| a.sigma.total_cmp(&b.sigma).then(a.t.total_cmp(&b.t)));
    let violation_count = total.violations.len();
    total.violations.truncate(MAX_LISTED_VIOLATIONS);
    let (min_margin, argmin) = match total.min {
        Some(s) => (s.margin, ComplexPoint { sigma: s.sigma, t: s.t }),
        None => (f64::NAN, ComplexPoint { sigma: f64::NAN, t: f64::NAN }),
    };
    ScanReport {
        quantity,
        region,
        severity: severity_for(region, violation_count),
        rect,
        grid,
        samples: total.samples,
        excluded_nodes,
        min_margin,
        argmin,
        violation_count,
        violations: total.violations,
        near_zero_equalities: total.near_zero,
        refined_cells: total.refined_cells,
        diagnostics: total.diagnostics,
        derivative_audit,
        wall_time_s: Some(started.elapsed().as_secs_f64()),
        config_echo,
    }
}

/// `∂σ|ζ(s)|²` by central difference with step 1e-5.
pub fn sigma_derivative_of_zeta_sq(s: Complex64, cfg: &EvalConfig) -> Result<f64, EvalError> {
    let h = Complex64::new(AUDIT_STEP, 0.0);
    let plus = zeta(s + h, cfg)?.norm_sqr();
    let minus = zeta(s - h, cfg)?.norm_sqr();
    Ok((plus - minus) / (2.0 * AUDIT_STEP))
}

fn derivative_audit(nodes: &[Vec<Node>], cfg: &EvalConfig) -> DerivativeAudit {
    let evaluated: Vec<&Sample> = nodes
        .iter()
        .flatten()
        .filter(|n| n.counted)
        .filter_map(|n| n.eval.as_ref().ok())
        .collect();
    let stride = (evaluated.len() / AUDIT_SAMPLES).max(1);
    let picks: Vec<&Sample> = evaluated.iter().step_by(stride).take(AUDIT_SAMPLES).copied().collect();
    let deviations: Vec<f64> = picks
        .par_iter()
        .filter_map(|s| {
            let fd = sigma_derivative_of_zeta_sq(Complex64::new(s.sigma, s.t), cfg).ok()?;
            // the stored margin is −∂σ|ζ|²
            Some((fd + s.margin).abs())
        })
        .collect();
    DerivativeAudit {
        samples: deviations.len(),
        max_abs_deviation: deviations.iter().cloned().fold(0.0, f64::max),
    }
}

/// Run `f` on a dedicated pool of `workers` threads (at least one). Scans
/// and figure emission started inside `f` parallelise over that pool.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

/// Sweep `1 − |g(s)|` over the rectangle.
pub fn scan_chi_modulus(rect: &StripRect, grid: &GridSpec, cfg: &EvalConfig) -> Result<ScanReport, ScanError> {
    scan_rect(Quantity::ChiModulus, rect, grid, cfg)
}

/// Sweep `|ζ(s)| − |ζ(1 − s)|` over the rectangle.
pub fn scan_theorem(rect: &StripRect, grid: &GridSpec, cfg: &EvalConfig) -> Result<ScanReport, ScanError> {
    scan_rect(Quantity::Theorem, rect, grid, cfg)
}

/// Sweep `−∂σ|ζ(s)|² = −2 Re(ζ′(s) conj ζ(s))` over the rectangle.
pub fn scan_condition_a(rect: &StripRect, grid: &GridSpec, cfg: &EvalConfig) -> Result<ScanReport, ScanError> {
    scan_rect(Quantity::ConditionA, rect, grid, cfg)
}

/// `2^{2σ − 1} − |h_N(σ + i t_fixed)|` at `sigma_steps` equally spaced
/// interior points of `0 < σ < 1/2`.
pub fn scan_hn_bound(n_terms: usize, t_fixed: f64, sigma_steps: usize, cfg: &EvalConfig) -> Result<ScanReport, ScanError> {
    if n_terms == 0 || sigma_steps == 0 {
        return Err(ScanError::Setup("N and sigma_steps must be at least 1".into()));
    }
    if !(t_fixed > 0.0 && t_fixed.is_finite()) {
        return Err(ScanError::Setup(format!("t_fixed must be positive, got {t_fixed}")));
    }
    let started = Instant::now();
    let evals: Vec<Eval> = (1..=sigma_steps)
        .into_par_iter()
        .map(|k| {
            let sigma = 0.5 * k as f64 / (sigma_steps + 1) as f64;
            let bound = (2.0 * sigma - 1.0).exp2();
            h_partial(n_terms, Complex64::new(sigma, t_fixed))
                .map(|h| Sample { sigma, t: t_fixed, margin: bound - h, near_zero: false })
                .map_err(|e| Diagnostic { sigma, t: t_fixed, error: e.to_string() })
        })
        .collect();
    let mut total = Tally::default();
    for e in &evals {
        total.record(e);
    }
    let region = if n_terms >= 3 && t_fixed >= PROVED_T_MIN {
        Region::Proved
    } else {
        Region::Exploratory
    };
    let mut config_echo = echo(cfg);
    config_echo.n_terms = Some(n_terms);
    config_echo.t_fixed = Some(t_fixed);
    config_echo.sigma_steps = Some(sigma_steps);
    Ok(finish(Quantity::HnBound, region, None, None, 0, total, None, started, config_echo))
}

/// Where `|g| = 1` is last crossed, scanning down in `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub t_star: f64,
    pub sigma: f64,
}

/// For each interior σ column of the lattice, find the largest `t` at which
/// `|g(σ + it)| ≥ 1` and refine it by bisection against the next node; return
/// the column with the highest crossing. `None` when `|g| < 1` on every node.
pub fn discover_chi_crossing(rect: &StripRect, grid: &GridSpec, cfg: &EvalConfig) -> Result<Option<Crossing>, ScanError> {
    validate_strip_rect(Quantity::ChiModulus, rect)?;
    let ts = grid.t_nodes(rect);
    let sigmas: Vec<f64> = grid.sigma_nodes(rect).into_iter().filter(|&s| in_open_strip(s)).collect();
    let margin = |sigma: f64, t: f64| -> Result<f64, EvalError> {
        Ok(1.0 - chi(Complex64::new(sigma, t), cfg)?.norm())
    };
    let per_column: Vec<Result<Option<Crossing>, EvalError>> = sigmas
        .par_iter()
        .map(|&sigma| {
            let mut last_bad = None;
            for (j, &t) in ts.iter().enumerate().rev() {
                if margin(sigma, t)? <= 0.0 {
                    last_bad = Some(j);
                    break;
                }
            }
            let Some(j) = last_bad else { return Ok(None) };
            if j + 1 == ts.len() {
                return Ok(Some(Crossing { t_star: ts[j], sigma }));
            }
            let (mut lo, mut hi) = (ts[j], ts[j + 1]);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                if margin(sigma, mid)? <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(Some(Crossing { t_star: 0.5 * (lo + hi), sigma }))
        })
        .collect();
    let mut best: Option<Crossing> = None;
    for c in per_column {
        if let Some(c) = c? {
            if best.is_none_or(|b| c.t_star > b.t_star) {
                best = Some(c);
            }
        }
    }
    Ok(best)
}
