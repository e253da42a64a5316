//! Zero-set extraction and topological classification of entanglement
//! curves.
//!
//! A curve `C(t)` on `[0, t_max]` with `C(0) > 0` is classified by the
//! structure of its zero set `{t : C(t) <= epsilon}`:
//!
//! * `A` — approaching: the zero set is empty.
//! * `B` — bouncing: only isolated (tangential) zeros.
//! * `E` — entering: a single interval reaching the horizon whose
//!   permanence is analytically confirmed.
//! * `O` — oscillating: finite-width zero intervals.
//!
//! Zeros are located on a sample grid, then refined by bisection against
//! the curve itself. Tangential zeros widen under sampling, so a candidate
//! interval counts as an isolated point when it is narrower than
//! `min_width`, or when the deeper sub-level set `{C <= epsilon_deep}`
//! collapses below `min_width` — a genuine dead interval is exactly zero in
//! its interior and keeps its width at any threshold, while a tangential
//! dip of order k shrinks like `epsilon^(1/k)`.
//!
//! A zero interval that touches the horizon is only promoted to a
//! permanent tail when the curve can certify it analytically (monotone
//! margin or decaying envelope); otherwise classification fails with an
//! explicit horizon-limited error rather than guessing.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    uniform_grid, ConcurrenceCurve, DephasingFunction, ModelParams, NegativityCurve,
    DEFAULT_SAMPLES, DEFAULT_T_MAX,
};
use crate::error::{Error, Result};

/// A scalar entanglement curve the classifier can interrogate.
pub trait EntanglementCurve {
    /// Curve value at `t` within the validated domain.
    fn value(&self, t: f64) -> f64;

    /// Whether `C(t) <= epsilon` for all `t >= horizon` is analytically
    /// guaranteed.
    fn zero_tail_confirmed(&self, _horizon: f64, _epsilon: f64) -> bool {
        false
    }

    /// Last time the curve can be evaluated at, if bounded.
    fn valid_to(&self) -> Option<f64> {
        None
    }
}

impl EntanglementCurve for ConcurrenceCurve {
    fn value(&self, t: f64) -> f64 {
        ConcurrenceCurve::value(self, t)
    }

    fn zero_tail_confirmed(&self, horizon: f64, epsilon: f64) -> bool {
        ConcurrenceCurve::zero_tail_confirmed(self, horizon, epsilon)
    }

    fn valid_to(&self) -> Option<f64> {
        Some(self.horizon())
    }
}

impl EntanglementCurve for NegativityCurve {
    fn value(&self, t: f64) -> f64 {
        NegativityCurve::value(self, t)
    }

    fn zero_tail_confirmed(&self, horizon: f64, epsilon: f64) -> bool {
        NegativityCurve::zero_tail_confirmed(self, horizon, epsilon)
    }

    fn valid_to(&self) -> Option<f64> {
        Some(self.horizon())
    }
}

/// Linear interpolation of tabulated curve samples. Carries no analytic
/// tail information, so touching-tail classifications are horizon-limited.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl SampledCurve {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::InvalidParameter(
                "sampled curve needs at least two (t, C) pairs".into(),
            ));
        }
        if times[0] < 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "sample times must be non-negative and strictly increasing".into(),
            ));
        }
        Ok(Self { times, values })
    }
}

impl EntanglementCurve for SampledCurve {
    fn value(&self, t: f64) -> f64 {
        let n = self.times.len();
        let hi = self.times.partition_point(|&x| x < t).min(n - 1).max(1);
        let lo = hi - 1;
        let w = ((t - self.times[lo]) / (self.times[hi] - self.times[lo])).clamp(0.0, 1.0);
        self.values[lo] + w * (self.values[hi] - self.values[lo])
    }

    fn valid_to(&self) -> Option<f64> {
        self.times.last().copied()
    }
}

/// Classifier settings.
#[derive(Copy, Clone, Debug)]
pub struct ClassifierConfig {
    /// Values at or below this threshold count as zero.
    pub epsilon: f64,
    /// `epsilon_deep = epsilon * deep_factor` drives the tangential-zero
    /// collapse test.
    pub deep_factor: f64,
    /// Analysis horizon.
    pub t_max: f64,
    /// Number of uniform grid samples on `[0, t_max]`.
    pub samples: usize,
    /// Minimum width separating an interval from an isolated point;
    /// `None` resolves to 10 grid spacings.
    pub min_width: Option<f64>,
    /// Bisection / minimum-refinement iterations.
    pub refine_iters: u32,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-9,
            deep_factor: 1e-3,
            t_max: DEFAULT_T_MAX,
            samples: DEFAULT_SAMPLES,
            min_width: None,
            refine_iters: 80,
        }
    }
}

impl ClassifierConfig {
    pub fn grid_spacing(&self) -> f64 {
        self.t_max / (self.samples - 1) as f64
    }

    pub fn resolved_min_width(&self) -> f64 {
        self.min_width.unwrap_or(10.0 * self.grid_spacing())
    }

    pub fn epsilon_deep(&self) -> f64 {
        self.epsilon * self.deep_factor
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.deep_factor > 0.0 && self.deep_factor < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "deep_factor must lie in (0, 1), got {}",
                self.deep_factor
            )));
        }
        if !(self.t_max > 0.0) || self.samples < 3 {
            return Err(Error::InvalidParameter(
                "need t_max > 0 and at least 3 samples".into(),
            ));
        }
        if self.resolved_min_width() <= self.grid_spacing() {
            return Err(Error::InvalidParameter(format!(
                "min_width {} must exceed the grid spacing {}",
                self.resolved_min_width(),
                self.grid_spacing()
            )));
        }
        Ok(())
    }
}

/// Structure of `{t in [0, t_max] : C(t) <= epsilon}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroSet {
    /// Finite-width zero intervals, disjoint and sorted. When
    /// `tail_touching` is set, the last interval ends at `t_max`.
    pub intervals: Vec<(f64, f64)>,
    /// Isolated zero times, sorted, none inside an interval.
    pub points: Vec<f64>,
    /// The last interval reaches the horizon.
    pub tail_touching: bool,
    /// The touching interval is analytically permanent.
    pub tail_zero: bool,
    /// Horizon the set was extracted on.
    pub t_max: f64,
}

impl ZeroSet {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    fn finite_interval_count(&self) -> usize {
        self.intervals.len() - usize::from(self.tail_touching)
    }
}

/// Decay category label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Category {
    A,
    B,
    E,
    O,
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Category::A => write!(f, "A"),
            Category::B => write!(f, "B"),
            Category::E => write!(f, "E"),
            Category::O => write!(f, "O"),
        }
    }
}

fn bisect_crossing<C: EntanglementCurve + ?Sized>(
    curve: &C,
    above: f64,
    below: f64,
    level: f64,
    iters: u32,
) -> f64 {
    // value(above) > level >= value(below); the bracket endpoints may be in
    // either time order.
    let mut hi = above;
    let mut lo = below;
    for _ in 0..iters {
        let mid = 0.5 * (hi + lo);
        if mid == hi || mid == lo {
            break;
        }
        if curve.value(mid) <= level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (hi + lo)
}

/// Coarse scan plus ternary polish; robust for the piecewise-smooth dips
/// the models produce.
fn region_minimum<C: EntanglementCurve + ?Sized>(
    curve: &C,
    a: f64,
    b: f64,
    iters: u32,
) -> (f64, f64) {
    const SCAN: usize = 64;
    let mut best_t = a;
    let mut best_v = curve.value(a);
    for k in 0..=SCAN {
        let t = a + (b - a) * k as f64 / SCAN as f64;
        let v = curve.value(t);
        if v < best_v {
            best_v = v;
            best_t = t;
        }
    }
    let h = (b - a) / SCAN as f64;
    let mut lo = (best_t - h).max(a);
    let mut hi = (best_t + h).min(b);
    for _ in 0..iters {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if curve.value(m1) <= curve.value(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < 1e-15 * (1.0 + b) {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    let vm = curve.value(mid);
    if vm < best_v {
        (mid, vm)
    } else {
        (best_t, best_v)
    }
}

struct Candidate {
    a: f64,
    b: f64,
    touches: bool,
}

/// Extract the zero set of a curve.
///
/// Errors if `C(0) <= epsilon` (the classification presumes an initially
/// entangled state) or if the curve cannot cover the horizon.
pub fn zero_set<C: EntanglementCurve + ?Sized>(
    curve: &C,
    cfg: &ClassifierConfig,
) -> Result<ZeroSet> {
    cfg.validate()?;
    if let Some(end) = curve.valid_to() {
        if end < cfg.t_max {
            return Err(Error::BeyondTabulatedRange {
                t: cfg.t_max,
                t_end: end,
            });
        }
    }
    let eps = cfg.epsilon;
    let iters = cfg.refine_iters;
    let ts = uniform_grid(cfg.t_max, cfg.samples);
    let vs: Vec<f64> = ts.iter().map(|&t| curve.value(t)).collect();
    let n = ts.len();
    if vs[0] <= eps {
        return Err(Error::StartsSeparable {
            c0: vs[0],
            epsilon: eps,
        });
    }

    let mut cands: Vec<Candidate> = Vec::new();

    // Runs of grid samples at or below epsilon.
    let mut idx = 1;
    while idx < n {
        if vs[idx] <= eps {
            let start = idx;
            let mut end = idx;
            while end + 1 < n && vs[end + 1] <= eps {
                end += 1;
            }
            let a = bisect_crossing(curve, ts[start - 1], ts[start], eps, iters);
            let (b, touches) = if end == n - 1 {
                (cfg.t_max, true)
            } else {
                (bisect_crossing(curve, ts[end + 1], ts[end], eps, iters), false)
            };
            cands.push(Candidate { a, b, touches });
            idx = end + 2;
        } else {
            idx += 1;
        }
    }

    // Tangential dips can pass between grid samples entirely; chase every
    // strict local minimum of the sampled curve down to machine precision.
    for i in 1..n - 1 {
        if vs[i] > eps && vs[i] < vs[i - 1] && vs[i] <= vs[i + 1] {
            let (tm, vm) = region_minimum(curve, ts[i - 1], ts[i + 1], iters);
            if vm <= eps {
                let a = bisect_crossing(curve, ts[i - 1], tm, eps, iters);
                let b = bisect_crossing(curve, ts[i + 1], tm, eps, iters);
                cands.push(Candidate { a, b, touches: false });
            }
        }
    }

    cands.sort_by(|x, y| x.a.partial_cmp(&y.a).expect("finite times"));
    let mut merged: Vec<Candidate> = Vec::new();
    for c in cands {
        match merged.last_mut() {
            Some(last) if c.a <= last.b => {
                last.b = last.b.max(c.b);
                last.touches |= c.touches;
            }
            _ => merged.push(c),
        }
    }

    let min_width = cfg.resolved_min_width();
    let deep = cfg.epsilon_deep();
    let mut intervals = Vec::new();
    let mut points = Vec::new();
    let mut tail_touching = false;
    let mut tail_zero = false;

    for c in merged {
        if c.touches {
            tail_touching = true;
            tail_zero = curve.zero_tail_confirmed(cfg.t_max, eps);
            intervals.push((c.a, cfg.t_max));
            continue;
        }
        let width = c.b - c.a;
        let (tm, vm) = region_minimum(curve, c.a, c.b, iters);
        let deep_width = if vm <= deep {
            let da = bisect_crossing(curve, c.a, tm, deep, iters);
            let db = bisect_crossing(curve, c.b, tm, deep, iters);
            db - da
        } else {
            0.0
        };
        if width < min_width || deep_width < min_width {
            points.push(tm);
        } else {
            intervals.push((c.a, c.b));
        }
    }

    Ok(ZeroSet {
        intervals,
        points,
        tail_touching,
        tail_zero,
        t_max: cfg.t_max,
    })
}

/// Map a zero set to its category.
///
/// Errors with [`Error::HorizonLimited`] when the label would depend on an
/// unconfirmed tail.
pub fn classify(zs: &ZeroSet) -> Result<Category> {
    if zs.is_empty() {
        return Ok(Category::A);
    }
    if zs.intervals.is_empty() {
        return Ok(Category::B);
    }
    if zs.tail_touching {
        if zs.tail_zero {
            if zs.intervals.len() == 1 && zs.points.is_empty() {
                return Ok(Category::E);
            }
            return Ok(Category::O);
        }
        // An unconfirmed tail only matters when no finite interval already
        // forces a disconnected positive-measure zero set.
        if zs.finite_interval_count() >= 1 {
            return Ok(Category::O);
        }
        return Err(Error::HorizonLimited { t_max: zs.t_max });
    }
    Ok(Category::O)
}

/// A classified curve together with its zero set.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub category: Category,
    pub zero_set: ZeroSet,
}

impl Classification {
    /// Death time: start of the permanent zero tail, for category E.
    pub fn death_time(&self) -> Option<f64> {
        if self.category == Category::E {
            self.zero_set.intervals.last().map(|&(a, _)| a)
        } else {
            None
        }
    }
}

/// Build the concurrence curve of a model and classify it.
pub fn classify_model(
    params: &ModelParams,
    zeta: &DephasingFunction,
    cfg: &ClassifierConfig,
) -> Result<Classification> {
    let curve = ConcurrenceCurve::new(params, zeta.clone(), cfg.t_max)?;
    let zs = zero_set(&curve, cfg)?;
    let category = classify(&zs)?;
    Ok(Classification {
        category,
        zero_set: zs,
    })
}

/// How the dephasing function and relaxation rate depend on the sweep
/// coordinates `(r, theta)`.
#[derive(Clone, Debug)]
pub enum DephasingFamily {
    /// Redfield exponential dephasing; both rates follow from the spectra.
    MarkovianBwr { g: f64, s0: f64, s_b: f64 },
    /// Fixed damped-cosine dephasing; the relaxation rate still follows
    /// from the transverse spectrum.
    DampedCosine {
        gamma: f64,
        omega: f64,
        g: f64,
        s_b: f64,
    },
}

impl DephasingFamily {
    pub fn model_at(&self, r: f64, theta: f64) -> Result<(ModelParams, DephasingFunction)> {
        match *self {
            DephasingFamily::MarkovianBwr { g, s0, s_b } => {
                let params = ModelParams::symmetric(r, theta, g, 0.0, s0, s_b)?;
                let zeta = params.markovian_dephasing();
                Ok((params, zeta))
            }
            DephasingFamily::DampedCosine {
                gamma,
                omega,
                g,
                s_b,
            } => {
                let params = ModelParams::symmetric(r, theta, g, 0.0, 0.0, s_b)?;
                let zeta = DephasingFunction::damped_cosine(gamma, omega)?;
                Ok((params, zeta))
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DephasingFamily::MarkovianBwr { .. } => "markovian",
            DephasingFamily::DampedCosine { .. } => "damped_cosine",
        }
    }
}

/// Per-cell sweep outcome; errors are recorded, not fatal.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Classified {
        category: Category,
        death_time: Option<f64>,
    },
    HorizonLimited,
    Failed {
        message: String,
    },
}

impl CellOutcome {
    pub fn category(&self) -> Option<Category> {
        match self {
            CellOutcome::Classified { category, .. } => Some(*category),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub r: f64,
    pub theta: f64,
    pub outcome: CellOutcome,
}

/// Adjacent grid cells whose categories differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionEdge {
    /// (r index, theta index) of the two cells.
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub from_category: Category,
    pub to_category: Category,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub r_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    /// Row-major over (r, theta).
    pub cells: Vec<SweepCell>,
    pub transitions: Vec<TransitionEdge>,
}

impl SweepResult {
    pub fn cell(&self, ri: usize, ti: usize) -> &SweepCell {
        &self.cells[ri * self.theta_grid.len() + ti]
    }
}

/// Classify every cell of an `(r, theta)` grid. Cells run in parallel;
/// ordering of the output is by grid index.
pub fn sweep(
    r_grid: &[f64],
    theta_grid: &[f64],
    family: &DephasingFamily,
    cfg: &ClassifierConfig,
) -> Result<SweepResult> {
    if r_grid.is_empty() || theta_grid.is_empty() {
        return Err(Error::InvalidParameter("sweep grids must be non-empty".into()));
    }
    cfg.validate()?;

    let indices: Vec<(usize, usize)> = (0..r_grid.len())
        .flat_map(|ri| (0..theta_grid.len()).map(move |ti| (ri, ti)))
        .collect();
    let cells: Vec<SweepCell> = indices
        .par_iter()
        .map(|&(ri, ti)| {
            let r = r_grid[ri];
            let theta = theta_grid[ti];
            let outcome = match family
                .model_at(r, theta)
                .and_then(|(params, zeta)| classify_model(&params, &zeta, cfg))
            {
                Ok(c) => CellOutcome::Classified {
                    death_time: c.death_time(),
                    category: c.category,
                },
                Err(Error::HorizonLimited { .. }) => CellOutcome::HorizonLimited,
                Err(e) => CellOutcome::Failed {
                    message: e.to_string(),
                },
            };
            SweepCell { r, theta, outcome }
        })
        .collect();

    let mut transitions = Vec::new();
    let tn = theta_grid.len();
    for ri in 0..r_grid.len() {
        for ti in 0..tn {
            let here = cells[ri * tn + ti].outcome.category();
            for (rj, tj) in [(ri + 1, ti), (ri, ti + 1)] {
                if rj >= r_grid.len() || tj >= tn {
                    continue;
                }
                let there = cells[rj * tn + tj].outcome.category();
                if let (Some(a), Some(b)) = (here, there) {
                    if a != b {
                        transitions.push(TransitionEdge {
                            from: (ri, ti),
                            to: (rj, tj),
                            from_category: a,
                            to_category: b,
                        });
                    }
                }
            }
        }
    }

    Ok(SweepResult {
        r_grid: r_grid.to_vec(),
        theta_grid: theta_grid.to_vec(),
        cells,
        transitions,
    })
}
