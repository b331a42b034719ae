//! Norm-type Bohr sums for vector-valued holomorphic maps on the unit
//! polydisk with the max norm.
//!
//! The degree-`s` Fréchet term `||D^s f(0)(z^s)||/s!` for the component-wise
//! maps handled here is the max over components of the modulus of the
//! degree-`s` homogeneous part at `z`. The module evaluates the refined
//! functionals on that norm profile directly and, independently, on the 1-D
//! slice `lambda -> f_l(lambda z_0)`, which is the reduction the inequality
//! proofs use; the two routes agreeing is itself a correctness oracle.
//!
//! It also hosts the two-variable counterexample showing that the
//! unrestricted norm-type inequality fails: its norm sum at
//! `z = (1/sqrt 2, 1/sqrt 2)` exceeds 1.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::functionals::{roundoff_allowance, FunctionalSpec, FunctionalValue};
use crate::series::{geometric_tails, taylor_coeffs, SchurSpec, TruncatedSeries, SUPPORT_EPS};

/// Tolerance for the equal-head-magnitude hypothesis check.
const HYPOTHESIS_EPS: f64 = 1e-9;

/// One component of a polydisk map.
#[derive(Debug, Clone, PartialEq)]
pub enum ComponentSpec {
    /// A Schur-class map applied to one coordinate.
    Univariate { coord: usize, spec: SchurSpec },
    /// A sparse polynomial: multi-index (length = map dimension) to
    /// coefficient.
    MonomialPoly { terms: Vec<(Vec<usize>, Complex64)> },
}

/// A holomorphic map `D^n -> C^n'` given component-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct PolydiskMap {
    dim: usize,
    components: Vec<ComponentSpec>,
}

impl PolydiskMap {
    pub fn new(dim: usize, components: Vec<ComponentSpec>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ParamRange("dimension must be at least 1"));
        }
        for c in &components {
            match c {
                ComponentSpec::Univariate { coord, .. } => {
                    if *coord >= dim {
                        return Err(Error::ParamRange("coordinate index out of range"));
                    }
                }
                ComponentSpec::MonomialPoly { terms } => {
                    if terms.iter().any(|(alpha, _)| alpha.len() != dim) {
                        return Err(Error::ParamRange("multi-index length must equal dim"));
                    }
                }
            }
        }
        Ok(PolydiskMap { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.components
    }
}

/// Per-degree norms `||D^s f(0)(z^s)||/s!` at a fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousNormProfile {
    pub point: Vec<Complex64>,
    /// `norms[s]` = max over components of the degree-`s` homogeneous part's
    /// modulus at the point.
    pub norms: Vec<f64>,
    /// Bound on `norms[s] / ||z||^s` beyond the truncation order (1 if any
    /// component is a Schur map, 0 for purely polynomial maps).
    pub coeff_bound: f64,
}

fn max_modulus(z: &[Complex64]) -> f64 {
    z.iter().fold(0.0, |m, c| m.max(c.norm()))
}

/// Per-component, per-degree moduli of the homogeneous parts at `z`.
pub fn component_degree_values(
    map: &PolydiskMap,
    z: &[Complex64],
    order: usize,
) -> Result<Vec<Vec<f64>>> {
    if z.len() != map.dim {
        return Err(Error::ParamRange("point dimension mismatch"));
    }
    let mut out = Vec::with_capacity(map.components.len());
    for comp in &map.components {
        let mut values = vec![0.0; order + 1];
        match comp {
            ComponentSpec::Univariate { coord, spec } => {
                let ts = taylor_coeffs(spec, order)?;
                let zj = z[*coord].norm();
                let mut pow = 1.0;
                for s in 0..=order {
                    values[s] = ts.magnitude(s) * pow;
                    pow *= zj;
                }
            }
            ComponentSpec::MonomialPoly { terms } => {
                let mut sums = vec![Complex64::new(0.0, 0.0); order + 1];
                for (alpha, c) in terms {
                    let degree: usize = alpha.iter().sum();
                    if degree > order {
                        continue;
                    }
                    let mut monomial = *c;
                    for (i, &e) in alpha.iter().enumerate() {
                        monomial *= z[i].powu(e as u32);
                    }
                    sums[degree] += monomial;
                }
                for s in 0..=order {
                    values[s] = sums[s].norm();
                }
            }
        }
        out.push(values);
    }
    Ok(out)
}

/// Degree-wise norms `||D^s f(0)(z^s)||/s!` for `s <= order` at a point of
/// the open polydisk.
pub fn homogeneous_norms(
    map: &PolydiskMap,
    z: &[Complex64],
    order: usize,
) -> Result<HomogeneousNormProfile> {
    if max_modulus(z) >= 1.0 {
        return Err(Error::OutsidePolydisk);
    }
    let per_component = component_degree_values(map, z, order)?;
    let mut norms = vec![0.0f64; order + 1];
    for values in &per_component {
        for (s, &v) in values.iter().enumerate() {
            norms[s] = norms[s].max(v);
        }
    }
    let coeff_bound = if map
        .components
        .iter()
        .any(|c| matches!(c, ComponentSpec::Univariate { .. }))
    {
        1.0
    } else {
        0.0
    };
    Ok(HomogeneousNormProfile {
        point: z.to_vec(),
        norms,
        coeff_bound,
    })
}

/// Taylor coefficients of the slice `lambda -> f_l(lambda z0)` to the given
/// order; `z0` is normalized to unit max norm internally.
pub fn slice_series(
    map: &PolydiskMap,
    direction: &[Complex64],
    component: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    if direction.len() != map.dim {
        return Err(Error::ParamRange("direction dimension mismatch"));
    }
    let norm = max_modulus(direction);
    if norm == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let z0: Vec<Complex64> = direction.iter().map(|c| c / norm).collect();
    match map
        .components
        .get(component)
        .ok_or(Error::ParamRange("component index out of range"))?
    {
        ComponentSpec::Univariate { coord, spec } => {
            let ts = taylor_coeffs(spec, order)?;
            let zj = z0[*coord];
            let mut coeffs = Vec::with_capacity(order + 1);
            let mut pow = Complex64::new(1.0, 0.0);
            for s in 0..=order {
                coeffs.push(ts.coeffs()[s] * pow);
                pow *= zj;
            }
            Ok(TruncatedSeries::from_coeffs(coeffs, ts.coeff_bound()))
        }
        ComponentSpec::MonomialPoly { terms } => {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
            for (alpha, c) in terms {
                let degree: usize = alpha.iter().sum();
                if degree > order {
                    continue;
                }
                let mut monomial = *c;
                for (i, &e) in alpha.iter().enumerate() {
                    monomial *= z0[i].powu(e as u32);
                }
                coeffs[degree] += monomial;
            }
            Ok(TruncatedSeries::from_coeffs(coeffs, 0.0))
        }
    }
}

/// Checks the structural hypothesis of a norm functional on the given
/// direction. Separate from evaluation so the counterexample can be
/// exercised deliberately.
pub fn check_hypothesis(
    map: &PolydiskMap,
    spec: &FunctionalSpec,
    direction: &[Complex64],
    order: usize,
) -> Result<()> {
    let norm = max_modulus(direction);
    if norm == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let z0: Vec<Complex64> = direction.iter().map(|c| c / norm).collect();
    let values = component_degree_values(map, &z0, order)?;
    match *spec {
        FunctionalSpec::RefinedC { m, k }
        | FunctionalSpec::RefinedI { m, k }
        | FunctionalSpec::Harmonic { m, k }
        | FunctionalSpec::BaselineSym { m, k } => {
            for comp in &values {
                for (s, &v) in comp.iter().enumerate() {
                    if v > SUPPORT_EPS && (s < m || (s - m) % k != 0) {
                        return Err(Error::HypothesisUnmet("lacunary support"));
                    }
                }
            }
            equal_heads(&values, m)
        }
        FunctionalSpec::RefinedB { n, m } => {
            head_tail_support(&values, n, m)?;
            equal_heads(&values, m)
        }
        FunctionalSpec::RefinedA { n, m } | FunctionalSpec::BaselineNorm { n, m } => {
            head_tail_support(&values, n, m)?;
            equal_heads(&values, m)?;
            // The component attaining the degree-m max must be univariate in
            // a max-modulus coordinate of the direction.
            let head_max = values.iter().map(|v| v[m]).fold(0.0, f64::max);
            let attaining = map
                .components
                .iter()
                .zip(&values)
                .find(|(_, v)| v[m] >= head_max - HYPOTHESIS_EPS);
            match attaining {
                Some((ComponentSpec::Univariate { coord, .. }, _)) => {
                    if z0[*coord].norm() < 1.0 - 1e-12 {
                        return Err(Error::HypothesisUnmet(
                            "head component not in a max-modulus coordinate",
                        ));
                    }
                    Ok(())
                }
                _ => Err(Error::HypothesisUnmet("head component not univariate")),
            }
        }
        _ => Err(Error::UnsupportedFunctional),
    }
}

fn head_tail_support(values: &[Vec<f64>], n: usize, m: usize) -> Result<()> {
    for comp in values {
        for (s, &v) in comp.iter().enumerate() {
            if v > SUPPORT_EPS && s != m && s < n {
                return Err(Error::HypothesisUnmet("head-tail support"));
            }
        }
    }
    Ok(())
}

fn equal_heads(values: &[Vec<f64>], m: usize) -> Result<()> {
    let heads: Vec<f64> = values.iter().map(|v| v[m]).collect();
    let max = heads.iter().fold(0.0f64, |a, &b| a.max(b));
    if heads.iter().any(|&h| (h - max).abs() > HYPOTHESIS_EPS) {
        return Err(Error::HypothesisUnmet("equal head magnitudes"));
    }
    Ok(())
}

/// Evaluates a norm-type refined functional from the homogeneous norm
/// profile at `z = r * z0`. With `check` set, the structural hypothesis is
/// verified first and an unmet hypothesis is an error rather than a silent
/// wrong answer.
pub fn norm_functional(
    map: &PolydiskMap,
    spec: &FunctionalSpec,
    direction: &[Complex64],
    r: f64,
    order: usize,
    check: bool,
) -> Result<FunctionalValue> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusRange);
    }
    if check {
        check_hypothesis(map, spec, direction, order)?;
    }
    let norm = max_modulus(direction);
    if norm == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let z: Vec<Complex64> = direction.iter().map(|c| c / norm * r).collect();
    let profile = homogeneous_norms(map, &z, order)?;
    let norms = &profile.norms;
    let (tail_lin, tail_quad) = geometric_tails(profile.coeff_bound, order, r);

    match *spec {
        FunctionalSpec::RefinedC { m, k } | FunctionalSpec::RefinedI { m, k } => {
            if k < 1 || m > k {
                return Err(Error::FamilyConstraint("requires 1 <= k and 0 <= m <= k"));
            }
            let head = norms[m];
            let rk = r.powi(k as i32);
            let rm = r.powi(m as i32);
            let mut linear = 0.0;
            let mut quad = 0.0;
            let mut s = 1usize;
            while s * k + m <= order {
                let v = norms[s * k + m];
                linear += v;
                quad += v * v;
                s += 1;
            }
            let (lhs, mut tail) = if r == 0.0 {
                (head, 0.0)
            } else {
                let prefactor = 1.0 / (rm + head) + r.powi(k as i32 - m as i32) / (1.0 - rk);
                (
                    head + linear + prefactor * quad,
                    tail_lin + prefactor * tail_quad,
                )
            };
            tail += roundoff_allowance(order, lhs, 1.0);
            Ok(FunctionalValue {
                lhs,
                threshold: 1.0,
                tail,
            })
        }
        FunctionalSpec::RefinedA { n, m } | FunctionalSpec::RefinedB { n, m } => {
            if n < m + 1 {
                return Err(Error::FamilyConstraint("requires N >= m+1"));
            }
            let head = norms[m];
            let rm = r.powi(m as i32);
            let mut linear = 0.0;
            let mut quad = 0.0;
            for s in n..=order {
                linear += norms[s];
                quad += norms[s] * norms[s];
            }
            let (lhs, mut tail) = if r == 0.0 {
                (head, 0.0)
            } else {
                let prefactor = rm / (rm + head) + r / (1.0 - r);
                (
                    head + linear + prefactor * quad,
                    tail_lin + prefactor * tail_quad,
                )
            };
            tail += roundoff_allowance(order, lhs, 1.0);
            Ok(FunctionalValue {
                lhs,
                threshold: 1.0,
                tail,
            })
        }
        FunctionalSpec::BaselineSym { .. } | FunctionalSpec::BaselineNorm { .. } => {
            let lhs: f64 = norms.iter().sum();
            Ok(FunctionalValue {
                lhs,
                threshold: 1.0,
                tail: tail_lin + roundoff_allowance(order, lhs, 1.0),
            })
        }
        _ => Err(Error::UnsupportedFunctional),
    }
}

/// The two-variable map whose norm Bohr sum exceeds 1 at
/// `z = (1/sqrt 2, 1/sqrt 2)`: component `l` is
/// `z_l (z_l - c_l)/(1 - c_l z_l)` with `c_1 = 1/sqrt 2`, `c_2 = 2/sqrt 5`,
/// each a Blaschke product with zeros `{0, c_l}`.
pub fn counterexample_map() -> PolydiskMap {
    let c1 = 1.0 / 2.0f64.sqrt();
    let c2 = 2.0 / 5.0f64.sqrt();
    let blaschke = |c: f64, coord: usize| ComponentSpec::Univariate {
        coord,
        spec: SchurSpec::Blaschke {
            zeros: vec![Complex64::new(0.0, 0.0), Complex64::new(c, 0.0)],
            rotation: Complex64::new(1.0, 0.0),
        },
    };
    PolydiskMap::new(2, vec![blaschke(c1, 0), blaschke(c2, 1)]).expect("static map is valid")
}

/// The hand-computable lower bound on the counterexample's norm sum: the
/// degree-1 norm plus the largest single-component tail over degrees >= 2.
/// Evaluates to `(1/sqrt 2)(2/sqrt 5 + 1/sqrt 2)` at the reference point.
pub fn blockwise_norm_witness(map: &PolydiskMap, z: &[Complex64], order: usize) -> Result<f64> {
    if max_modulus(z) >= 1.0 {
        return Err(Error::OutsidePolydisk);
    }
    let values = component_degree_values(map, z, order)?;
    let degree1 = values.iter().map(|v| v[1]).fold(0.0, f64::max);
    let best_tail = values
        .iter()
        .map(|v| v.iter().skip(2).sum::<f64>())
        .fold(0.0, f64::max);
    Ok(degree1 + best_tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::refined_c;
    use crate::series::lacunary_profile;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn identity_map(dim: usize) -> PolydiskMap {
        let comps = (0..dim)
            .map(|coord| ComponentSpec::Univariate {
                coord,
                spec: SchurSpec::Blaschke {
                    zeros: vec![Complex64::new(0.0, 0.0)],
                    rotation: Complex64::new(1.0, 0.0),
                },
            })
            .collect();
        PolydiskMap::new(dim, comps).unwrap()
    }

    fn diag(dim: usize, v: f64) -> Vec<Complex64> {
        vec![Complex64::new(v, 0.0); dim]
    }

    #[test]
    fn identity_norm_profile() {
        let map = identity_map(2);
        let r = 0.4;
        let profile = homogeneous_norms(&map, &diag(2, r), 16).unwrap();
        assert!((profile.norms[1] - r).abs() < 1e-15);
        for (s, &v) in profile.norms.iter().enumerate() {
            if s != 1 {
                assert!(v < 1e-15);
            }
        }
    }

    #[test]
    fn counterexample_norm_sum_exceeds_one() {
        let map = counterexample_map();
        let z = diag(2, 1.0 / 2.0f64.sqrt());
        let profile = homogeneous_norms(&map, &z, 512).unwrap();
        let total: f64 = profile.norms.iter().skip(1).sum();
        let witness = blockwise_norm_witness(&map, &z, 512).unwrap();
        let reported = (1.0 / 2.0f64.sqrt()) * (2.0 / 5.0f64.sqrt() + 1.0 / 2.0f64.sqrt());
        assert!((witness - reported).abs() < 1e-9);
        assert!(total >= witness - 1e-12);
        assert!(total > 1.0);
    }

    #[test]
    fn counterexample_fails_hypothesis_but_violates_unchecked() {
        let map = counterexample_map();
        let spec = FunctionalSpec::BaselineNorm { n: 2, m: 1 };
        let dir = diag(2, 1.0);
        let r = 1.0 / 2.0f64.sqrt();
        assert!(matches!(
            norm_functional(&map, &spec, &dir, r, 256, true),
            Err(Error::HypothesisUnmet(_))
        ));
        let v = norm_functional(&map, &spec, &dir, r, 256, false).unwrap();
        assert!(v.lhs > 1.0);
    }

    #[test]
    fn slice_of_identity_component() {
        let map = identity_map(2);
        let dir = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let slice = slice_series(&map, &dir, 0, 8).unwrap();
        assert!((slice.magnitude(1) - 1.0).abs() < 1e-15);
        assert!(slice.magnitude(0) < 1e-15 && slice.magnitude(2) < 1e-15);
    }

    #[test]
    fn slice_magnitudes_phase_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let spec = crate::series::sample_schur_spec(&mut rng);
        let base = taylor_coeffs(&spec, 32).unwrap();
        let map = PolydiskMap::new(
            2,
            vec![ComponentSpec::Univariate {
                coord: 1,
                spec: spec.clone(),
            }],
        )
        .unwrap();
        let phase = Complex64::from_polar(1.0, 1.234);
        let dir = vec![Complex64::new(0.3, 0.0), phase];
        let slice = slice_series(&map, &dir, 0, 32).unwrap();
        for s in 0..=32 {
            assert!((slice.magnitude(s) - base.magnitude(s)).abs() < 1e-13);
        }
    }

    #[test]
    fn slice_of_counterexample_component() {
        let map = counterexample_map();
        let dir = diag(2, 1.0);
        let slice = slice_series(&map, &dir, 0, 8).unwrap();
        let c = 1.0 / 2.0f64.sqrt();
        // z(z-c)/(1-cz): |coeff 1| = c, |coeff s| = (1-c^2) c^{s-2} for s >= 2.
        assert!((slice.magnitude(1) - c).abs() < 1e-14);
        for s in 2..=8usize {
            let expected = (1.0 - c * c) * c.powi(s as i32 - 2);
            assert!((slice.magnitude(s) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn component_wise_extremal_matches_slice_functional() {
        let a = 0.5;
        let (m, k) = (1usize, 2usize);
        let comps = (0..2)
            .map(|coord| ComponentSpec::Univariate {
                coord,
                spec: SchurSpec::ExtremalA { a, m, k },
            })
            .collect();
        let map = PolydiskMap::new(2, comps).unwrap();
        let dir = diag(2, 1.0);
        let spec = FunctionalSpec::RefinedC { m, k };
        let slice = slice_series(&map, &dir, 0, 512).unwrap();
        for &r in &[0.1, 0.3, 0.5, 0.7] {
            let via_norm = norm_functional(&map, &spec, &dir, r, 512, true).unwrap();
            let via_slice = refined_c(&slice, m, k, r).unwrap();
            assert!(
                (via_norm.lhs - via_slice.lhs).abs() < 1e-10,
                "norm/slice mismatch at r={r}"
            );
        }
    }

    #[test]
    fn constant_poly_map_head_only() {
        let a = 0.35;
        let comps = (0..3)
            .map(|_| ComponentSpec::MonomialPoly {
                terms: vec![(vec![0, 0, 0], Complex64::new(a, 0.0))],
            })
            .collect();
        let map = PolydiskMap::new(3, comps).unwrap();
        let spec = FunctionalSpec::RefinedC { m: 0, k: 1 };
        let v = norm_functional(&map, &spec, &diag(3, 1.0), 0.5, 32, true).unwrap();
        assert!((v.lhs - a).abs() < 1e-14);
    }

    #[test]
    fn permutation_invariance() {
        let map = counterexample_map();
        let swapped = PolydiskMap::new(
            2,
            vec![
                match &map.components()[1] {
                    ComponentSpec::Univariate { spec, .. } => ComponentSpec::Univariate {
                        coord: 0,
                        spec: spec.clone(),
                    },
                    _ => unreachable!(),
                },
                match &map.components()[0] {
                    ComponentSpec::Univariate { spec, .. } => ComponentSpec::Univariate {
                        coord: 1,
                        spec: spec.clone(),
                    },
                    _ => unreachable!(),
                },
            ],
        )
        .unwrap();
        let z = vec![Complex64::new(0.5, 0.1), Complex64::new(-0.2, 0.4)];
        let zs = vec![z[1], z[0]];
        let a = homogeneous_norms(&map, &z, 64).unwrap();
        let b = homogeneous_norms(&swapped, &zs, 64).unwrap();
        for s in 0..=64 {
            assert!((a.norms[s] - b.norms[s]).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_direction_maximizes_head_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let (m, k) = (1usize, 2usize);
        let comps = (0..2)
            .map(|coord| ComponentSpec::Univariate {
                coord,
                spec: SchurSpec::ExtremalA { a: 0.6, m, k },
            })
            .collect();
        let map = PolydiskMap::new(2, comps).unwrap();
        let r = 0.5;
        let diag_profile = homogeneous_norms(&map, &diag(2, r), 16).unwrap();
        for _ in 0..64 {
            let dir: Vec<Complex64> = (0..2)
                .map(|_| {
                    Complex64::from_polar(
                        rng.gen::<f64>(),
                        core::f64::consts::TAU * rng.gen::<f64>(),
                    )
                })
                .collect();
            let norm = max_modulus(&dir);
            if norm == 0.0 {
                continue;
            }
            let z: Vec<Complex64> = dir.iter().map(|c| c / norm * r).collect();
            let profile = homogeneous_norms(&map, &z, 16).unwrap();
            assert!(profile.norms[m] <= diag_profile.norms[m] + 1e-12);
        }
    }

    #[test]
    fn lacunary_slice_profile_recovered() {
        let comps = vec![ComponentSpec::Univariate {
            coord: 0,
            spec: SchurSpec::ExtremalA { a: 0.4, m: 2, k: 3 },
        }];
        let map = PolydiskMap::new(1, comps).unwrap();
        let slice = slice_series(&map, &[Complex64::new(1.0, 0.0)], 0, 62).unwrap();
        let (m, k, _) = lacunary_profile(&slice).unwrap();
        assert_eq!((m, k), (2, 3));
    }
}
