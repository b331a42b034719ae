//! Sweep and sharpness orchestration.
//!
//! Two directions are certified. Below the sharp radius, seeded random
//! samples are evaluated on a radius grid and every row must hold (a
//! `Violates` verdict requires `lhs - tail > threshold`, so truncation error
//! can never manufacture a violation). Above the radius, the extremal
//! families must cross their threshold, and the crossover located by
//! bisection must agree with the maximal root of the radius equation.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::functionals::{
    self, FunctionalSpec, FunctionalValue, DEFAULT_REFINEMENT_START,
};
use crate::polydisk::{norm_functional, slice_series, ComponentSpec, PolydiskMap};
use crate::radii::{sharp_radius, RadiusQuery, DEFAULT_ROOT_TOL};
use crate::series::{
    geometric_tails, sample_head_tail_spec, sample_lacunary_spec, sample_schur_spec,
    taylor_coeffs, SchurSpec, TruncatedSeries,
};

/// Hard cap on automatic truncation raising.
pub const MAX_TRUNCATION: usize = 8192;

/// Certification target for the combined geometric tails at the largest
/// swept radius.
pub const TAIL_TARGET: f64 = 1e-9;

/// Verdict of one sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `margin >= 0`: the inequality holds with certified truncation error.
    Holds,
    /// `lhs - tail > threshold`: a certified violation.
    Violates,
    /// The margin is negative but within tail uncertainty.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violates => "VIOLATES",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    fn of(v: &FunctionalValue) -> Verdict {
        if v.margin() >= 0.0 {
            Verdict::Holds
        } else if v.lhs - v.tail > v.threshold {
            Verdict::Violates
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Configuration of one verification sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub functional: FunctionalSpec,
    pub samples: usize,
    pub seed: u64,
    /// Strictly increasing radii in `(0, 1)`.
    pub r_grid: Vec<f64>,
    /// Starting truncation order; raised automatically until the geometric
    /// tails at the largest grid radius drop below [`TAIL_TARGET`].
    pub trunc: usize,
    /// Safety margin subtracted from each per-sample radius cap.
    pub tolerance: f64,
    /// Skip grid radii beyond the per-sample sharp radius (the
    /// holds-direction contract). Disable to sweep deliberately past it.
    pub clip_to_radius: bool,
    /// Replace a fifth of the samples by members of the extremal family.
    pub include_extremal: bool,
}

impl SweepConfig {
    pub fn new(functional: FunctionalSpec, samples: usize, seed: u64, r_grid: Vec<f64>) -> Self {
        SweepConfig {
            functional,
            samples,
            seed,
            r_grid,
            trunc: 256,
            tolerance: 1e-3,
            clip_to_radius: true,
            include_extremal: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::ParamRange("samples must be at least 1"));
        }
        if self.tolerance < 0.0 {
            return Err(Error::ParamRange("tolerance must be nonnegative"));
        }
        for w in self.r_grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::ParamRange("r grid must be strictly increasing"));
            }
        }
        if self.r_grid.iter().any(|&r| r <= 0.0 || r >= 1.0) {
            return Err(Error::ParamRange("r grid must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// One evaluated `(sample, radius)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub sample_id: usize,
    pub r: f64,
    pub lhs: f64,
    pub threshold: f64,
    pub tail: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

/// Rows ordered by `(sample_id, r)` plus verdict counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Binding radius cap: the smallest per-sample sharp radius (1 when the
    /// functional has no radius restriction).
    pub radius_used: f64,
    pub holds: usize,
    pub violates: usize,
    pub inconclusive: usize,
}

impl SweepReport {
    fn push(&mut self, row: SweepRow) {
        match row.verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Violates => self.violates += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
        self.rows.push(row);
    }
}

/// Smallest truncation order (doubling from `start`) whose geometric tails
/// at radius `r_max` fall below [`TAIL_TARGET`], capped at
/// [`MAX_TRUNCATION`].
pub fn required_truncation(start: usize, r_max: f64) -> usize {
    let mut order = start.max(16);
    loop {
        let (lin, quad) = geometric_tails(1.0, order, r_max);
        if lin + quad < TAIL_TARGET || order >= MAX_TRUNCATION {
            return order.min(MAX_TRUNCATION);
        }
        order *= 2;
    }
}

enum SampleSeries {
    One(TruncatedSeries),
    Pair(TruncatedSeries, TruncatedSeries),
}

/// Draws the constructive spec(s) for one sample of the given functional.
/// All randomness flows through `rng`, so a fixed seed fixes the sample set.
fn draw_specs<R: Rng + ?Sized>(
    spec: &FunctionalSpec,
    rng: &mut R,
    extremal: bool,
) -> Vec<SchurSpec> {
    let one = |s: SchurSpec| alloc::vec![s];
    match *spec {
        FunctionalSpec::Lemma12 { .. } => {
            if extremal {
                one(SchurSpec::ExtremalA {
                    a: 0.9 * rng.gen::<f64>(),
                    m: 0,
                    k: 1,
                })
            } else {
                one(sample_schur_spec(rng))
            }
        }
        FunctionalSpec::RefinedA { n, m }
        | FunctionalSpec::RefinedB { n, m }
        | FunctionalSpec::BaselineNorm { n, m } => {
            if extremal {
                one(SchurSpec::ExtremalA {
                    a: 0.9 * rng.gen::<f64>(),
                    m,
                    k: (n - m).max(m).max(1),
                })
            } else {
                one(sample_head_tail_spec(rng, n, m))
            }
        }
        FunctionalSpec::RefinedC { m, k }
        | FunctionalSpec::RefinedI { m, k }
        | FunctionalSpec::BaselineSym { m, k } => {
            if extremal {
                one(SchurSpec::ExtremalA {
                    a: 0.9 * rng.gen::<f64>(),
                    m,
                    k,
                })
            } else {
                one(sample_lacunary_spec(rng, m, k))
            }
        }
        FunctionalSpec::RefinedN1 { .. } => {
            if extremal {
                one(SchurSpec::ExtremalOmega {
                    a: 0.9 * rng.gen::<f64>(),
                })
            } else {
                one(SchurSpec::LacunaryWrap {
                    m: 1,
                    k: 1,
                    inner: alloc::boxed::Box::new(sample_schur_spec(rng)),
                })
            }
        }
        FunctionalSpec::Harmonic { m, k } => {
            let h = if extremal {
                SchurSpec::ExtremalA {
                    a: 0.9 * rng.gen::<f64>(),
                    m,
                    k,
                }
            } else {
                sample_lacunary_spec(rng, m, k)
            };
            let g = sample_lacunary_spec(rng, m, k);
            alloc::vec![h, g]
        }
    }
}

/// Per-sample radius cap for the holds direction of each functional.
fn sample_radius(spec: &FunctionalSpec, series: &SampleSeries) -> Result<f64> {
    let refined_cap = |t: &TruncatedSeries, m: usize, k: usize| -> Result<f64> {
        let a = t.magnitude(m).min(1.0 - 1e-12);
        sharp_radius(&RadiusQuery::RefinedRoot { k, m, a }, DEFAULT_ROOT_TOL)
    };
    match (*spec, series) {
        (FunctionalSpec::Lemma12 { .. }, _) => Ok(1.0),
        (FunctionalSpec::RefinedA { n, m }, _) | (FunctionalSpec::RefinedB { n, m }, _) => {
            sharp_radius(&RadiusQuery::AutoPhi { n, m }, DEFAULT_ROOT_TOL)
        }
        (FunctionalSpec::BaselineNorm { n, m }, _) => {
            sharp_radius(&RadiusQuery::AutoPhi { n, m }, DEFAULT_ROOT_TOL)
        }
        (FunctionalSpec::RefinedC { m, k }, SampleSeries::One(t))
        | (FunctionalSpec::RefinedI { m, k }, SampleSeries::One(t)) => refined_cap(t, m, k),
        (FunctionalSpec::BaselineSym { m, k }, _) => {
            sharp_radius(&RadiusQuery::LacunarySym { k, m }, DEFAULT_ROOT_TOL)
        }
        (FunctionalSpec::RefinedN1 { .. }, _) => Ok(0.6),
        (FunctionalSpec::Harmonic { m, k }, SampleSeries::Pair(h, g)) => {
            Ok(refined_cap(h, m, k)?.min(refined_cap(g, m, k)?))
        }
        _ => Err(Error::UnsupportedFunctional),
    }
}

fn eval_sample(
    spec: &FunctionalSpec,
    series: &SampleSeries,
    r: f64,
) -> Result<FunctionalValue> {
    match (spec, series) {
        (FunctionalSpec::Harmonic { m, k }, SampleSeries::Pair(h, g)) => {
            functionals::harmonic_pair(h, g, *m, *k, r)
        }
        (_, SampleSeries::One(t)) => functionals::evaluate(spec, t, r),
        _ => Err(Error::UnsupportedFunctional),
    }
}

fn build_series(specs: &[SchurSpec], order: usize) -> Result<SampleSeries> {
    match specs {
        [s] => Ok(SampleSeries::One(taylor_coeffs(s, order)?)),
        [h, g] => Ok(SampleSeries::Pair(
            taylor_coeffs(h, order)?,
            taylor_coeffs(g, order)?,
        )),
        _ => Err(Error::UnsupportedFunctional),
    }
}

/// Runs one sweep: seeded samples evaluated over the radius grid, rows
/// ordered by `(sample_id, r)`. Deterministic for a fixed config.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let mut report = SweepReport {
        rows: Vec::new(),
        radius_used: 1.0,
        holds: 0,
        violates: 0,
        inconclusive: 0,
    };
    let Some(&r_max) = cfg.r_grid.last() else {
        return Ok(report);
    };
    let order = required_truncation(cfg.trunc, r_max);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    for sample_id in 0..cfg.samples {
        let extremal = cfg.include_extremal && sample_id % 5 == 0;
        let specs = draw_specs(&cfg.functional, &mut rng, extremal);
        let series = build_series(&specs, order)?;
        let cap = sample_radius(&cfg.functional, &series)?;
        report.radius_used = report.radius_used.min(cap);
        let mut boosted: Option<SampleSeries> = None;

        for &r in &cfg.r_grid {
            if cfg.clip_to_radius && r > cap - cfg.tolerance {
                continue;
            }
            let mut value = eval_sample(&cfg.functional, &series, r)?;
            if Verdict::of(&value) == Verdict::Inconclusive && order < MAX_TRUNCATION {
                // One retry at doubled truncation before conceding.
                if boosted.is_none() {
                    boosted = Some(build_series(&specs, (order * 2).min(MAX_TRUNCATION))?);
                }
                if let Some(b) = &boosted {
                    value = eval_sample(&cfg.functional, b, r)?;
                }
            }
            report.push(SweepRow {
                sample_id,
                r,
                lhs: value.lhs,
                threshold: value.threshold,
                tail: value.tail,
                margin: value.margin(),
                verdict: Verdict::of(&value),
            });
        }
    }
    Ok(report)
}

/// Crossover of an extremal family: the radius where its functional value
/// crosses the threshold, with the radius-equation root for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub k: usize,
    pub m: usize,
    pub a: f64,
    pub r_cross: f64,
    pub r_theory: f64,
    pub gap: f64,
}

/// Coarse scan (step 1e-3) followed by bisection of `eval(r) - threshold`.
/// `eval` must be nondecreasing in `r` over the scanned range.
fn bisect_crossing<F>(eval: F, threshold: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let step = 1e-3;
    let mut lo = step;
    let mut prev = eval(lo)?;
    if prev > threshold {
        return Err(Error::NoCrossover);
    }
    let mut hi = lo;
    let mut found = false;
    while hi < 0.99 {
        hi = (hi + step).min(0.99);
        let v = eval(hi)?;
        if v > threshold {
            found = true;
            break;
        }
        lo = hi;
        prev = v;
    }
    let _ = prev;
    if !found {
        return Err(Error::NoCrossover);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if eval(mid)? > threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates where the refined lacunary functional of the extremal family
/// crosses 1 and compares it with the maximal root of the radius equation.
/// The result is checked to bracket the threshold: the left side is below 1
/// at `r_cross - 10 tol` and above 1 at `r_cross + 10 tol`.
pub fn crossover(k: usize, m: usize, a: f64, tol: f64) -> Result<CrossoverResult> {
    if tol <= 0.0 {
        return Err(Error::ParamRange("tolerance must be positive"));
    }
    let r_theory = sharp_radius(&RadiusQuery::RefinedRoot { k, m, a }, DEFAULT_ROOT_TOL)?;
    let order = required_truncation(2048, 0.99);
    let series = taylor_coeffs(&SchurSpec::ExtremalA { a, m, k }, order)?;
    let lhs = |r: f64| functionals::refined_c(&series, m, k, r).map(|v| v.lhs);
    let r_cross = bisect_crossing(&lhs, 1.0, tol)?;
    if lhs((r_cross - 10.0 * tol).max(0.0))? >= 1.0 || lhs((r_cross + 10.0 * tol).min(0.9899))? <= 1.0
    {
        return Err(Error::NoCrossover);
    }
    Ok(CrossoverResult {
        k,
        m,
        a,
        r_cross,
        r_theory,
        gap: (r_cross - r_theory).abs(),
    })
}

/// Crossover of the harmonic pair `h = g` = extremal family against
/// threshold 2.
pub fn harmonic_crossover(k: usize, m: usize, a: f64, tol: f64) -> Result<CrossoverResult> {
    if tol <= 0.0 {
        return Err(Error::ParamRange("tolerance must be positive"));
    }
    let r_theory = sharp_radius(&RadiusQuery::RefinedRoot { k, m, a }, DEFAULT_ROOT_TOL)?;
    let order = required_truncation(2048, 0.99);
    let series = taylor_coeffs(&SchurSpec::ExtremalA { a, m, k }, order)?;
    let lhs = |r: f64| functionals::harmonic_pair(&series, &series, m, k, r).map(|v| v.lhs);
    let r_cross = bisect_crossing(&lhs, 2.0, tol)?;
    Ok(CrossoverResult {
        k,
        m,
        a,
        r_cross,
        r_theory,
        gap: (r_cross - r_theory).abs(),
    })
}

/// Least grid radius (step 1e-3) at which the head-tail refined functional
/// of the sharpness family exceeds 1, per head magnitude `a`.
pub fn sharpness_scan(n: usize, m: usize, a_grid: &[f64]) -> Result<Vec<(f64, Option<f64>)>> {
    if !matches!((n, m), (1, 0) | (2, 1)) {
        return Err(Error::ParamRange("scan supports (N, m) in {(1,0), (2,1)}"));
    }
    let order = required_truncation(2048, 0.99);
    let mut out = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let series = taylor_coeffs(&SchurSpec::ExtremalA { a, m, k: 1 }, order)?;
        let mut r_exceed = None;
        let mut r = 1e-3;
        while r < 0.995 {
            let v = functionals::refined_a(&series, n, m, r)?;
            if v.lhs - v.tail > 1.0 {
                r_exceed = Some(r);
                break;
            }
            r += 1e-3;
        }
        out.push((a, r_exceed));
    }
    Ok(out)
}

/// Maximal absolute gap over a radius grid between the norm-route
/// functional of a component-wise map and the 1-D functional of its
/// dominant slice. Both routes are computed independently.
pub fn oracle_compare(
    map: &PolydiskMap,
    spec: &FunctionalSpec,
    direction: &[num_complex::Complex64],
    r_grid: &[f64],
    order: usize,
) -> Result<f64> {
    if map
        .components()
        .iter()
        .any(|c| !matches!(c, ComponentSpec::Univariate { .. }))
    {
        return Err(Error::UnsupportedFunctional);
    }
    let Some(&r_max) = r_grid.last() else {
        return Ok(0.0);
    };
    // Dominant component: largest majorant at the top of the grid.
    let mut best = (0usize, f64::NEG_INFINITY);
    for l in 0..map.components().len() {
        let slice = slice_series(map, direction, l, order)?;
        let total = slice.majorant(r_max);
        if total > best.1 {
            best = (l, total);
        }
    }
    let slice = slice_series(map, direction, best.0, order)?;
    let mut max_gap = 0.0f64;
    for &r in r_grid {
        let via_norm = norm_functional(map, spec, direction, r, order, false)?;
        let via_slice = functionals::evaluate(spec, &slice, r)?;
        max_gap = max_gap.max((via_norm.lhs - via_slice.lhs).abs());
    }
    Ok(max_gap)
}

/// Default refinement start for the vanishing-origin functional, re-exported
/// for CLI convenience.
pub fn default_n1_spec() -> FunctionalSpec {
    FunctionalSpec::RefinedN1 {
        refinement_start: DEFAULT_REFINEMENT_START,
    }
}
