//! Refined Bohr functionals on truncated series.
//!
//! Each evaluator returns the left side of one refined majorant inequality,
//! the threshold it is compared against, and a certified overestimate of the
//! truncation contribution to the left side. A nonnegative
//! [`FunctionalValue::margin`] therefore certifies that the untruncated
//! inequality holds at the given radius.
//!
//! All sums combine coefficient magnitudes only; phases are discarded at
//! entry. Singular-looking prefactors (the `1/(r^m + |c_0| r^m)` and
//! `1/(r + |b_1| r)` denominators) are multiplied through term-wise so that
//! every evaluator extends continuously to `r = 0`.

#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::series::{tail_bound_linear, tail_bound_quadratic, TruncatedSeries, SUPPORT_EPS};

/// Default start index of the squared refinement sum in the
/// vanishing-origin functional: the proof-backed variant squares from the
/// second coefficient.
pub const DEFAULT_REFINEMENT_START: usize = 2;

/// Which refined functional to evaluate, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalSpec {
    /// The master refined majorant inequality for a Schur-class series, with
    /// tail start `n`.
    Lemma12 { n: usize },
    /// Refined functional for maps with a degree-`m` head and tail starting
    /// at degree `n` (max-coordinate hypothesis).
    RefinedA { n: usize, m: usize },
    /// Same arithmetic as [`FunctionalSpec::RefinedA`] under the
    /// equal-head-magnitude hypothesis.
    RefinedB { n: usize, m: usize },
    /// Refined functional for lacunary series `z^m g(z^k)`.
    RefinedC { m: usize, k: usize },
    /// Disk-instantiated lacunary functional; identical slice arithmetic to
    /// [`FunctionalSpec::RefinedC`].
    RefinedI { m: usize, k: usize },
    /// Refined functional for series vanishing at the origin (sharp up to
    /// radius 3/5).
    RefinedN1 { refinement_start: usize },
    /// Sum of two lacunary functionals, thresholded at 2 (harmonic pairs).
    Harmonic { m: usize, k: usize },
    /// Unrefined lacunary majorant sum.
    BaselineSym { m: usize, k: usize },
    /// Unrefined head-plus-tail majorant sum.
    BaselineNorm { n: usize, m: usize },
}

/// Left side, threshold and certified error bound of one evaluation. `tail`
/// overestimates both the truncation contribution to the left side and the
/// floating-point summation error, so verdicts derived from it cannot be
/// manufactured by numerics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalValue {
    pub lhs: f64,
    pub threshold: f64,
    pub tail: f64,
}

impl FunctionalValue {
    /// `threshold - lhs - tail`; nonnegative margins certify the inequality.
    pub fn margin(&self) -> f64 {
        self.threshold - self.lhs - self.tail
    }
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::RadiusRange)
    }
}

/// Bound on the accumulated roundoff of summing `order + 1` nonnegative
/// terms at the scale of the computed quantities.
pub(crate) fn roundoff_allowance(order: usize, lhs: f64, threshold: f64) -> f64 {
    2.0 * (order as f64 + 2.0) * f64::EPSILON * (lhs.abs() + threshold.abs() + 1.0)
}

/// Left and right side of the master inequality: for a Schur-class series
/// and any `n >= 1`, with `t = floor((n-1)/2)`,
///
/// ```text
/// sum_{i>=n} |c_i| r^i  +  sgn(t) sum_{i=1}^{t} |c_i|^2 r^n/(1-r)
///   + (1/(1+|c_0|) + r/(1-r)) sum_{i>=t+1} |c_i|^2 r^{2i}
///   <=  (1 - |c_0|^2) r^n/(1-r).
/// ```
pub fn lemma12_sides(f: &TruncatedSeries, n: usize, r: f64) -> Result<FunctionalValue> {
    if n < 1 {
        return Err(Error::ParamRange("requires N >= 1"));
    }
    check_radius(r)?;
    let order = f.trunc_order();
    let t = (n - 1) / 2;
    let c0 = f.magnitude(0);
    let geom = r / (1.0 - r);
    let rn_over = r.powi(n as i32) / (1.0 - r);

    let mut linear = 0.0;
    for i in (n..=order).rev() {
        linear = linear * r + f.magnitude(i);
    }
    linear *= r.powi(n as i32);

    let mut mid = 0.0;
    if t >= 1 {
        for i in 1..=t.min(order) {
            let m = f.magnitude(i);
            mid += m * m;
        }
        mid *= rn_over;
    }

    let prefactor = 1.0 / (1.0 + c0) + geom;
    let mut quad = 0.0;
    for i in ((t + 1)..=order).rev() {
        let m = f.magnitude(i);
        quad = quad * (r * r) + m * m;
    }
    quad *= r.powi(2 * (t + 1) as i32);

    let lhs = linear + mid + prefactor * quad;
    let threshold = (1.0 - c0 * c0) * rn_over;

    let mut tail = tail_bound_linear(f, r)? + prefactor * tail_bound_quadratic(f, r)?;
    if t > order {
        // Unreached in practice (t is tiny); bound the missing middle terms.
        let b = f.coeff_bound();
        tail += (t - order) as f64 * b * b * rn_over;
    }
    tail += roundoff_allowance(order, lhs, threshold);
    Ok(FunctionalValue {
        lhs,
        threshold,
        tail,
    })
}

fn check_lacunary_support(f: &TruncatedSeries, m: usize, k: usize) -> Result<()> {
    for i in 0..=f.trunc_order() {
        if f.magnitude(i) > SUPPORT_EPS && (i < m || (i - m) % k != 0) {
            return Err(Error::SupportMismatch);
        }
    }
    Ok(())
}

/// Refined lacunary functional: for a series supported on
/// `{m, k+m, 2k+m, ...}` with head magnitude `c0 = |c_m|`,
///
/// ```text
/// c0 r^m + sum_{s>=1} |c_s| r^{sk+m}
///   + (1/(r^m + c0 r^m) + r^{k-m}/(1-r^k)) sum_{s>=1} |c_s|^2 r^{2(sk+m)}
/// ```
/// against threshold 1. The prefactor is folded into each term, so `r = 0`
/// is regular.
pub fn refined_c(f: &TruncatedSeries, m: usize, k: usize, r: f64) -> Result<FunctionalValue> {
    if k < 1 || m > k {
        return Err(Error::FamilyConstraint("requires 1 <= k and 0 <= m <= k"));
    }
    check_radius(r)?;
    check_lacunary_support(f, m, k)?;
    let order = f.trunc_order();
    let c0 = f.magnitude(m);
    let rk = r.powi(k as i32);

    let mut linear = 0.0;
    let mut quad = 0.0;
    let mut s = 1usize;
    while s * k + m <= order {
        let idx = s * k + m;
        let mag = f.magnitude(idx);
        linear += mag * r.powi(idx as i32);
        // |c_s|^2 r^{2(sk+m)} * (r^{-m}/(1+c0) + r^{k-m}/(1-r^k))
        let sq = mag * mag * r.powi((2 * s * k + m) as i32);
        quad += sq * (1.0 / (1.0 + c0) + r.powi(k as i32) / (1.0 - rk));
        s += 1;
    }

    let lhs = c0 * r.powi(m as i32) + linear + quad;

    let mut tail = if r == 0.0 {
        0.0
    } else {
        let prefactor = r.powi(-(m as i32)) / (1.0 + c0)
            + r.powi(k as i32 - m as i32) / (1.0 - rk);
        tail_bound_linear(f, r)? + prefactor * tail_bound_quadratic(f, r)?
    };
    tail += roundoff_allowance(order, lhs, 1.0);
    Ok(FunctionalValue {
        lhs,
        threshold: 1.0,
        tail,
    })
}

/// Disk-instantiated lacunary functional; same slice arithmetic as
/// [`refined_c`].
pub fn refined_i(f: &TruncatedSeries, m: usize, k: usize, r: f64) -> Result<FunctionalValue> {
    refined_c(f, m, k, r)
}

fn check_head_tail_support(f: &TruncatedSeries, n: usize, m: usize) -> Result<()> {
    for i in 0..=f.trunc_order() {
        if f.magnitude(i) > SUPPORT_EPS && i != m && i < n {
            return Err(Error::SupportMismatch);
        }
    }
    Ok(())
}

/// Refined functional for a series with head index `m` and tail starting at
/// `n >= m+1` (head magnitude `b_m = |c_m|`):
///
/// ```text
/// b_m r^m + sum_{i>=n} |c_i| r^i
///   + (r^m/(r^m + b_m r^m) + r/(1-r)) sum_{i>=n} |c_i|^2 r^{2i}
/// ```
/// against threshold 1. Under the support precondition the squared sum over
/// `1..=t` of the displayed functional has no nonzero term (`t < n`), so it
/// does not appear here.
pub fn refined_a(f: &TruncatedSeries, n: usize, m: usize, r: f64) -> Result<FunctionalValue> {
    if n < m + 1 {
        return Err(Error::FamilyConstraint("requires N >= m+1"));
    }
    check_radius(r)?;
    check_head_tail_support(f, n, m)?;
    let order = f.trunc_order();
    let b_m = f.magnitude(m);
    let prefactor = 1.0 / (1.0 + b_m) + r / (1.0 - r);

    let mut linear = 0.0;
    let mut quad = 0.0;
    for i in n..=order {
        let mag = f.magnitude(i);
        linear += mag * r.powi(i as i32);
        quad += mag * mag * r.powi(2 * i as i32);
    }

    let lhs = b_m * r.powi(m as i32) + linear + prefactor * quad;
    let tail = tail_bound_linear(f, r)?
        + prefactor * tail_bound_quadratic(f, r)?
        + roundoff_allowance(order, lhs, 1.0);
    Ok(FunctionalValue {
        lhs,
        threshold: 1.0,
        tail,
    })
}

/// Same arithmetic as [`refined_a`]; the two theorems differ only in their
/// multidimensional hypotheses, which live in [`crate::polydisk`].
pub fn refined_b(f: &TruncatedSeries, n: usize, m: usize, r: f64) -> Result<FunctionalValue> {
    refined_a(f, n, m, r)
}

/// Refined functional for series with `f(0) = 0`:
///
/// ```text
/// sum_{i>=1} |c_i| r^i
///   + (1/(r + |c_1| r) + 1/(1-r)) sum_{i>=start} |c_i|^2 r^{2i}
/// ```
/// against threshold 1, sharp up to `r = 3/5`. Each squared term carries
/// `r^{2i}` with `i >= 2`, so the product with the first prefactor is formed
/// as `r^{2i-1}/(1+|c_1|)` and `r = 0` is regular.
pub fn refined_n1(f: &TruncatedSeries, r: f64, refinement_start: usize) -> Result<FunctionalValue> {
    check_radius(r)?;
    if f.magnitude(0) > SUPPORT_EPS {
        return Err(Error::RequiresVanishingOrigin);
    }
    let order = f.trunc_order();
    let b1 = f.magnitude(1);
    let start = refinement_start.max(1);

    let mut linear = 0.0;
    for i in 1..=order {
        linear += f.magnitude(i) * r.powi(i as i32);
    }
    let mut quad = 0.0;
    for i in start..=order {
        let mag = f.magnitude(i);
        let sq = mag * mag;
        quad += sq * (r.powi(2 * i as i32 - 1) / (1.0 + b1) + r.powi(2 * i as i32) / (1.0 - r));
    }

    let lhs = linear + quad;
    let mut tail = if r == 0.0 {
        0.0
    } else {
        let prefactor = 1.0 / (r * (1.0 + b1)) + 1.0 / (1.0 - r);
        tail_bound_linear(f, r)? + prefactor * tail_bound_quadratic(f, r)?
    };
    tail += roundoff_allowance(order, lhs, 1.0);
    Ok(FunctionalValue {
        lhs,
        threshold: 1.0,
        tail,
    })
}

/// Harmonic-pair functional: sum of the lacunary functionals of the
/// analytic and co-analytic parts, against threshold 2.
pub fn harmonic_pair(
    h: &TruncatedSeries,
    g: &TruncatedSeries,
    m: usize,
    k: usize,
    r: f64,
) -> Result<FunctionalValue> {
    let vh = refined_c(h, m, k, r)?;
    let vg = refined_c(g, m, k, r)?;
    Ok(FunctionalValue {
        lhs: vh.lhs + vg.lhs,
        threshold: 2.0,
        tail: vh.tail + vg.tail,
    })
}

/// Unrefined lacunary majorant sum `sum_{s>=0} |c_s| r^{sk+m}` against
/// threshold 1.
pub fn baseline_sym(f: &TruncatedSeries, m: usize, k: usize, r: f64) -> Result<FunctionalValue> {
    if k < 1 || m > k {
        return Err(Error::FamilyConstraint("requires 1 <= k and 0 <= m <= k"));
    }
    check_radius(r)?;
    check_lacunary_support(f, m, k)?;
    let lhs = f.majorant(r);
    Ok(FunctionalValue {
        lhs,
        threshold: 1.0,
        tail: tail_bound_linear(f, r)? + roundoff_allowance(f.trunc_order(), lhs, 1.0),
    })
}

/// Unrefined head-plus-tail majorant sum against threshold 1.
pub fn baseline_norm(f: &TruncatedSeries, n: usize, m: usize, r: f64) -> Result<FunctionalValue> {
    if n < m + 1 {
        return Err(Error::FamilyConstraint("requires N >= m+1"));
    }
    check_radius(r)?;
    check_head_tail_support(f, n, m)?;
    let lhs = f.majorant(r);
    Ok(FunctionalValue {
        lhs,
        threshold: 1.0,
        tail: tail_bound_linear(f, r)? + roundoff_allowance(f.trunc_order(), lhs, 1.0),
    })
}

/// `a r^m + (1 - a^2) r^n / (1 - r)`: the scalar bound whose maximum over
/// the head magnitude ties the refined functionals to the radius equations.
pub fn mf_bound(a_norm: f64, n: usize, m: usize, r: f64) -> f64 {
    a_norm * r.powi(m as i32) + (1.0 - a_norm * a_norm) * r.powi(n as i32) / (1.0 - r)
}

/// Maximum of [`mf_bound`] over `a` in `[0, 1]` at fixed `(n, m, r)`,
/// attained at the critical point `(1-r)/(2 r^{n-m})` clamped to `[0, 1]`.
/// Returns `(argmax, max)`.
pub fn mf_bound_max(n: usize, m: usize, r: f64) -> (f64, f64) {
    if r == 0.0 {
        return (1.0, mf_bound(1.0, n, m, 0.0));
    }
    let t0 = ((1.0 - r) / (2.0 * r.powi((n - m) as i32))).clamp(0.0, 1.0);
    (t0, mf_bound(t0, n, m, r))
}

/// `J(t) = -1 + r + t r (1-r) + (1-t^2) r^2`, the sign witness of the
/// vanishing-origin functional.
pub fn j_bound(t: f64, r: f64) -> f64 {
    -1.0 + r + t * r * (1.0 - r) + (1.0 - t * t) * r * r
}

/// Maximum of [`j_bound`] over `t` in `[0, 1]`, attained at `(1-r)/(2r)`
/// clamped to `[0, 1]`. For `r >= 1/3` the critical point is interior (or
/// the boundary `t = 1`) and the maximum equals `(5r-3)(r+1)/4`.
pub fn j_bound_max(r: f64) -> (f64, f64) {
    let t0 = ((1.0 - r) / (2.0 * r)).clamp(0.0, 1.0);
    (t0, j_bound(t0, r))
}

/// Evaluates a single-series functional.
pub fn evaluate(spec: &FunctionalSpec, f: &TruncatedSeries, r: f64) -> Result<FunctionalValue> {
    match *spec {
        FunctionalSpec::Lemma12 { n } => lemma12_sides(f, n, r),
        FunctionalSpec::RefinedA { n, m } => refined_a(f, n, m, r),
        FunctionalSpec::RefinedB { n, m } => refined_b(f, n, m, r),
        FunctionalSpec::RefinedC { m, k } => refined_c(f, m, k, r),
        FunctionalSpec::RefinedI { m, k } => refined_i(f, m, k, r),
        FunctionalSpec::RefinedN1 { refinement_start } => refined_n1(f, r, refinement_start),
        FunctionalSpec::BaselineSym { m, k } => baseline_sym(f, m, k, r),
        FunctionalSpec::BaselineNorm { n, m } => baseline_norm(f, n, m, r),
        FunctionalSpec::Harmonic { .. } => Err(Error::UnsupportedFunctional),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{lacunary_lift, sample_schur_spec, taylor_coeffs, SchurSpec};
    use alloc::vec;
    use alloc::vec::Vec;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn series_from_real(coeffs: &[f64], bound: f64) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            bound,
        )
    }

    /// Brute-force evaluation of the master inequality sides by direct
    /// summation, independent of the production code path.
    fn lemma12_brute(coeffs: &[f64], n: usize, r: f64) -> (f64, f64) {
        let t = (n - 1) / 2;
        let c0 = coeffs[0].abs();
        let mut lhs = 0.0;
        for (i, &c) in coeffs.iter().enumerate().skip(n) {
            lhs += c.abs() * r.powi(i as i32);
        }
        if t >= 1 {
            for (i, &c) in coeffs.iter().enumerate().skip(1).take(t) {
                let _ = i;
                lhs += c * c * r.powi(n as i32) / (1.0 - r);
            }
        }
        for (i, &c) in coeffs.iter().enumerate().skip(t + 1) {
            lhs += (1.0 / (1.0 + c0) + r / (1.0 - r)) * c * c * r.powi(2 * i as i32);
        }
        (lhs, (1.0 - c0 * c0) * r.powi(n as i32) / (1.0 - r))
    }

    #[test]
    fn lemma12_constant_series() {
        let f = series_from_real(&[0.6, 0.0, 0.0], 0.0);
        for n in 1..=4 {
            let v = lemma12_sides(&f, n, 0.5).unwrap();
            assert_eq!(v.lhs, 0.0);
            assert!((v.threshold - (1.0 - 0.36) * 0.5f64.powi(n as i32) / 0.5).abs() < 1e-15);
            assert!(v.margin() > 0.0);
        }
    }

    #[test]
    fn lemma12_identity_map_margin_zero() {
        let f = series_from_real(&[0.0, 1.0], 0.0);
        let v = lemma12_sides(&f, 1, 0.5).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-15);
        assert!((v.threshold - 1.0).abs() < 1e-15);
        assert!(v.margin().abs() < 1e-15);
    }

    #[test]
    fn lemma12_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let spec = sample_schur_spec(&mut rng);
            let f = taylor_coeffs(&spec, 64).unwrap();
            let mags: Vec<f64> = f.coeffs().iter().map(|c| c.norm()).collect();
            for n in 1..=6 {
                for &r in &[0.1, 0.35, 0.7] {
                    let v = lemma12_sides(&f, n, r).unwrap();
                    let (blhs, bthr) = lemma12_brute(&mags, n, r);
                    assert!((v.lhs - blhs).abs() < 1e-12, "lhs mismatch");
                    assert!((v.threshold - bthr).abs() < 1e-12, "threshold mismatch");
                }
            }
        }
    }

    #[test]
    fn lemma12_margin_nonnegative_for_schur_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let spec = sample_schur_spec(&mut rng);
            let f = taylor_coeffs(&spec, 256).unwrap();
            for n in 1..=6 {
                let mut r = 0.05;
                while r < 0.91 {
                    let v = lemma12_sides(&f, n, r).unwrap();
                    assert!(
                        v.margin() >= -v.tail,
                        "margin {} below -tail {} at n={n}, r={r}",
                        v.margin(),
                        v.tail
                    );
                    r += 0.05;
                }
            }
        }
    }

    #[test]
    fn refined_c_extremal_closed_form() {
        for &(m, k) in &[(0usize, 1usize), (1, 2), (2, 3)] {
            for &a in &[0.2, 0.5, 0.8] {
                let f = taylor_coeffs(&SchurSpec::ExtremalA { a, m, k }, 600).unwrap();
                for i in 1..=18 {
                    let r = 0.05 * i as f64;
                    let v = refined_c(&f, m, k, r).unwrap();
                    let rk = r.powi(k as i32);
                    let expected = r.powi(m as i32) * (a + (1.0 - a * a) * rk / (1.0 - rk));
                    assert!(
                        (v.lhs - expected).abs() <= v.tail + 1e-9,
                        "closed form off at (m={m}, k={k}, a={a}, r={r}): {} vs {expected}",
                        v.lhs
                    );
                }
            }
        }
    }

    #[test]
    fn refined_c_equals_one_at_sharp_radius() {
        use crate::radii::{sharp_radius, RadiusQuery};
        for &(k, m) in &[(1usize, 0usize), (2, 1), (3, 2)] {
            for &a in &[0.2, 0.5, 0.8] {
                let r = sharp_radius(&RadiusQuery::RefinedRoot { k, m, a }, 1e-12).unwrap();
                let f = taylor_coeffs(&SchurSpec::ExtremalA { a, m, k }, 2048).unwrap();
                let v = refined_c(&f, m, k, r).unwrap();
                assert!((v.lhs - 1.0).abs() < 1e-8, "lhs {} != 1 at radius", v.lhs);
            }
        }
    }

    #[test]
    fn refined_c_zero_function() {
        let f = series_from_real(&[0.0, 0.0, 0.0], 0.0);
        let v = refined_c(&f, 0, 1, 0.5).unwrap();
        assert_eq!(v.lhs, 0.0);
        assert_eq!(v.margin(), 1.0);
    }

    #[test]
    fn refined_c_rejects_bad_support() {
        let f = series_from_real(&[0.1, 0.2, 0.3], 0.0);
        assert_eq!(refined_c(&f, 0, 2, 0.5), Err(Error::SupportMismatch));
    }

    #[test]
    fn refined_c_at_r_zero() {
        let f = taylor_coeffs(&SchurSpec::ExtremalA { a: 0.5, m: 1, k: 2 }, 64).unwrap();
        let v = refined_c(&f, 1, 2, 0.0).unwrap();
        assert_eq!(v.lhs, 0.0);
        let f0 = taylor_coeffs(&SchurSpec::ExtremalA { a: 0.5, m: 0, k: 1 }, 64).unwrap();
        let v0 = refined_c(&f0, 0, 1, 0.0).unwrap();
        assert!((v0.lhs - 0.5).abs() < 1e-15);
    }

    #[test]
    fn refined_a_single_head_term() {
        for &(n, m) in &[(1usize, 0usize), (2, 1), (3, 1)] {
            let mut coeffs = vec![0.0; 8];
            coeffs[m] = 0.7;
            let f = series_from_real(&coeffs, 0.0);
            let v = refined_a(&f, n, m, 0.6).unwrap();
            assert!((v.lhs - 0.7 * 0.6f64.powi(m as i32)).abs() < 1e-15);
            assert!(v.lhs <= 1.0);
        }
    }

    #[test]
    fn refined_a_identity_cross_checks_lemma12() {
        // Identity coefficients, N = 1, m = 0: the head term is 0, so the
        // functional coincides with the master-lemma left side.
        let f = series_from_real(&[0.0, 1.0], 0.0);
        let r = 1.0 / 3.0;
        let v = refined_a(&f, 1, 0, r).unwrap();
        let l = lemma12_sides(&f, 1, r).unwrap();
        assert!((v.lhs - (f.magnitude(0) + l.lhs)).abs() < 1e-14);
    }

    #[test]
    fn refined_a_sharpness_family_exceeds_past_radius() {
        // (a - z)/(1 - a z) with a near 1 pushes past 1 just above r = 1/3.
        let a = 0.999;
        let f = taylor_coeffs(&SchurSpec::ExtremalA { a, m: 0, k: 1 }, 2048).unwrap();
        let below = refined_a(&f, 1, 0, 1.0 / 3.0).unwrap();
        assert!(below.lhs <= 1.0 + 1e-12);
        let above = refined_a(&f, 1, 0, 0.345).unwrap();
        assert!(above.lhs - above.tail > 1.0);
    }

    #[test]
    fn refined_n1_examples() {
        // omega with a = 0 is -z^2: lhs = r^2 + (1/r + 1/(1-r)) r^4.
        let f = taylor_coeffs(&SchurSpec::ExtremalOmega { a: 0.0 }, 64).unwrap();
        let v = refined_n1(&f, 0.5, DEFAULT_REFINEMENT_START).unwrap();
        assert!((v.lhs - 0.5).abs() < 1e-14);

        // f(z) = z: the refinement sum beyond index 1 is empty.
        let id = series_from_real(&[0.0, 1.0], 0.0);
        for &r in &[0.1, 0.3, 0.6] {
            let v = refined_n1(&id, r, DEFAULT_REFINEMENT_START).unwrap();
            assert!((v.lhs - r).abs() < 1e-15);
        }

        let bad = series_from_real(&[0.2, 1.0], 0.0);
        assert_eq!(
            refined_n1(&bad, 0.5, DEFAULT_REFINEMENT_START),
            Err(Error::RequiresVanishingOrigin)
        );
    }

    #[test]
    fn refined_n1_omega_closed_form() {
        // For omega_a the left side telescopes to a r + (1-a^2) r^2/(1-r),
        // which is 1 + J(a)/(1-r).
        for &a in &[0.1, 1.0 / 3.0, 0.6, 0.9] {
            let f = taylor_coeffs(&SchurSpec::ExtremalOmega { a }, 1024).unwrap();
            for &r in &[0.2, 0.4, 0.6] {
                let v = refined_n1(&f, r, DEFAULT_REFINEMENT_START).unwrap();
                let expected = a * r + (1.0 - a * a) * r * r / (1.0 - r);
                assert!(
                    (v.lhs - expected).abs() <= v.tail + 1e-10,
                    "omega closed form off at a={a}, r={r}"
                );
                let j = j_bound(a, r);
                assert!((v.lhs - (1.0 + j / (1.0 - r))).abs() <= v.tail + 1e-10);
            }
        }
        // Worst head magnitude at r = 3/5 touches the threshold exactly.
        let f = taylor_coeffs(&SchurSpec::ExtremalOmega { a: 1.0 / 3.0 }, 2048).unwrap();
        let v = refined_n1(&f, 0.6, DEFAULT_REFINEMENT_START).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-9);
    }

    #[test]
    fn harmonic_pair_reduces_and_doubles() {
        let h = taylor_coeffs(&SchurSpec::ExtremalA { a: 0.5, m: 1, k: 2 }, 512).unwrap();
        let zero = series_from_real(&[0.0, 0.0], 0.0);
        let single = refined_c(&h, 1, 2, 0.4).unwrap();
        let v = harmonic_pair(&h, &zero, 1, 2, 0.4).unwrap();
        assert!((v.margin() - (1.0 + single.margin())).abs() < 1e-12);

        let doubled = harmonic_pair(&h, &h, 1, 2, 0.4).unwrap();
        assert!((doubled.lhs - 2.0 * single.lhs).abs() < 1e-13);
        assert_eq!(doubled.threshold, 2.0);
    }

    #[test]
    fn mf_bound_examples() {
        // a = 1 collapses to r^m.
        assert!((mf_bound(1.0, 3, 1, 0.7) - 0.7).abs() < 1e-15);
        // Maximum 1 at the sharp radii.
        let (t10, v10) = mf_bound_max(1, 0, 1.0 / 3.0);
        assert!((v10 - 1.0).abs() < 1e-12);
        assert!((t10 - 1.0).abs() < 1e-12);
        let (t21, v21) = mf_bound_max(2, 1, 0.6);
        assert!((v21 - 1.0).abs() < 1e-12);
        assert!((t21 - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn mf_bound_max_agrees_with_golden_section() {
        let golden = |n: usize, m: usize, r: f64| -> f64 {
            let phi = (5.0f64.sqrt() - 1.0) / 2.0;
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..200 {
                let x1 = hi - phi * (hi - lo);
                let x2 = lo + phi * (hi - lo);
                if mf_bound(x1, n, m, r) < mf_bound(x2, n, m, r) {
                    lo = x1;
                } else {
                    hi = x2;
                }
            }
            mf_bound(0.5 * (lo + hi), n, m, r)
        };
        for &(n, m) in &[(1usize, 0usize), (2, 1), (3, 1), (4, 2)] {
            for &r in &[0.15, 0.33, 0.5, 0.66] {
                let (_, v) = mf_bound_max(n, m, r);
                assert!((v - golden(n, m, r)).abs() < 1e-10, "(n={n}, m={m}, r={r})");
            }
        }
    }

    #[test]
    fn j_bound_examples() {
        let (_, max) = j_bound_max(0.6);
        assert!(max.abs() < 1e-15);
        let j = j_bound(0.5, 0.5);
        assert!((j - (-0.1875)).abs() < 1e-15);
        assert!((j - (5.0 * 0.5 - 3.0) * 1.5 / 4.0).abs() < 1e-15);
        assert!((j_bound(0.0, 1e-9) + 1.0).abs() < 1e-8);
    }

    #[test]
    fn baseline_below_refined() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let inner = taylor_coeffs(&sample_schur_spec(&mut rng), 64).unwrap();
            let f = lacunary_lift(&inner, 1, 2).unwrap();
            for &r in &[0.1, 0.3, 0.5] {
                let b = baseline_sym(&f, 1, 2, r).unwrap();
                let c = refined_c(&f, 1, 2, r).unwrap();
                assert!(b.lhs <= c.lhs);
            }
        }
    }

    #[test]
    fn refined_c_monotone_in_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let inner = taylor_coeffs(&sample_schur_spec(&mut rng), 128).unwrap();
            let f = lacunary_lift(&inner, 1, 2).unwrap();
            let mut last = -1.0;
            let mut r = 0.0;
            while r <= 0.95 {
                let v = refined_c(&f, 1, 2, r).unwrap();
                assert!(v.lhs >= last - 1e-15);
                last = v.lhs;
                r += 0.05;
            }
        }
    }
}
