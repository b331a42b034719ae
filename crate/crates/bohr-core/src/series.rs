//! Constructive holomorphic self-maps of the unit disk and their truncated
//! Taylor expansions.
//!
//! Coefficients are extracted by exact polynomial arithmetic plus recursive
//! division for the Möbius denominators (never by numerical
//! differentiation), so high-order coefficients carry no cancellation error.
//! Every series records a certified uniform bound on the coefficients beyond
//! its truncation order, from which geometric tail bounds follow.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};

/// Coefficient magnitudes below this threshold count as structural zeros in
/// support checks.
pub const SUPPORT_EPS: f64 = 1e-12;

/// Complex power-series coefficients `c_0..c_M` (index = power) together
/// with a certified uniform bound on `|c_n|` for every `n > M`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    coeff_bound: f64,
}

impl TruncatedSeries {
    /// Wraps raw coefficients; `coeff_bound` must bound `|c_n|` for `n`
    /// beyond the last stored index (use 0 for polynomials).
    pub fn from_coeffs(coeffs: Vec<Complex64>, coeff_bound: f64) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TruncatedSeries {
            coeffs,
            coeff_bound,
        }
    }

    /// Truncation order `M`: coefficients are stored for powers `0..=M`.
    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff_bound(&self) -> f64 {
        self.coeff_bound
    }

    /// `|c_n|`, or 0 beyond the truncation order.
    pub fn magnitude(&self, n: usize) -> f64 {
        self.coeffs.get(n).map_or(0.0, |c| c.norm())
    }

    /// Partial sum at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Majorant partial sum at radius `r` (sum of `|c_n| r^n`).
    pub fn majorant(&self, r: f64) -> f64 {
        let mut sum = 0.0;
        let mut pow = 1.0;
        for c in &self.coeffs {
            sum += c.norm() * pow;
            pow *= r;
        }
        sum
    }
}

/// Constructive description of a holomorphic self-map of the disk.
#[derive(Debug, Clone, PartialEq)]
pub enum SchurSpec {
    /// Finite Blaschke product `rotation * prod (z - a_j)/(1 - conj(a_j) z)`
    /// with all zeros in the open disk.
    Blaschke {
        zeros: Vec<Complex64>,
        rotation: Complex64,
    },
    /// Target-side automorphism `(a - w)/(1 - a w)` applied to an inner map.
    MobiusTarget { a: f64, inner: Box<SchurSpec> },
    /// `z^m g(z^k)` for an inner map `g`.
    LacunaryWrap {
        m: usize,
        k: usize,
        inner: Box<SchurSpec>,
    },
    /// The extremal family `z^m (a - z^k)/(1 - a z^k)`, `a` in `[0, 1)`.
    ExtremalA { a: f64, m: usize, k: usize },
    /// `z (a - z)/(1 - a z)`, the extremal map of the vanishing-origin
    /// refinement (the `m = k = 1` member of `ExtremalA`).
    ExtremalOmega { a: f64 },
}

fn poly_mul_trunc(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    for (i, &x) in a.iter().enumerate().take(order + 1) {
        for (j, &y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Recursive series division `a / b` to the given order; `b[0]` must be
/// nonzero.
fn series_div_trunc(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    let inv_b0 = Complex64::new(1.0, 0.0) / b[0];
    for n in 0..=order {
        let mut acc = if n < a.len() {
            a[n]
        } else {
            Complex64::new(0.0, 0.0)
        };
        for j in 1..=n.min(b.len() - 1) {
            acc -= b[j] * out[n - j];
        }
        out[n] = acc * inv_b0;
    }
    out
}

/// Taylor coefficients of the described map up to degree `M`. The result is
/// exact to roundoff; `coeff_bound` is 1 for any Schur-class construction.
pub fn taylor_coeffs(spec: &SchurSpec, order: usize) -> Result<TruncatedSeries> {
    let coeffs = expand(spec, order)?;
    Ok(TruncatedSeries::from_coeffs(coeffs, 1.0))
}

fn expand(spec: &SchurSpec, order: usize) -> Result<Vec<Complex64>> {
    match spec {
        SchurSpec::Blaschke { zeros, rotation } => {
            if (rotation.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::ParamRange("rotation must have unit modulus"));
            }
            let mut num = vec![*rotation];
            let mut den = vec![Complex64::new(1.0, 0.0)];
            for zero in zeros {
                if zero.norm() >= 1.0 {
                    return Err(Error::NotInDisk);
                }
                num = poly_mul_trunc(&num, &[-zero, Complex64::new(1.0, 0.0)], order);
                den = poly_mul_trunc(&den, &[Complex64::new(1.0, 0.0), -zero.conj()], order);
            }
            Ok(series_div_trunc(&num, &den, order))
        }
        SchurSpec::MobiusTarget { a, inner } => {
            if !(0.0..1.0).contains(a) {
                return Err(Error::ParamRange("requires 0 <= a < 1"));
            }
            let w = expand(inner, order)?;
            let a = Complex64::new(*a, 0.0);
            let num: Vec<Complex64> = w.iter().enumerate().map(|(i, &c)| {
                if i == 0 {
                    a - c
                } else {
                    -c
                }
            }).collect();
            let den: Vec<Complex64> = w.iter().enumerate().map(|(i, &c)| {
                if i == 0 {
                    Complex64::new(1.0, 0.0) - a * c
                } else {
                    -a * c
                }
            }).collect();
            Ok(series_div_trunc(&num, &den, order))
        }
        SchurSpec::LacunaryWrap { m, k, inner } => {
            if *k < 1 || m > k {
                return Err(Error::FamilyConstraint("requires 1 <= k and 0 <= m <= k"));
            }
            let inner_order = if order >= *m { (order - m) / k } else { 0 };
            let g = expand(inner, inner_order)?;
            let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
            for (s, &c) in g.iter().enumerate() {
                let idx = s * k + m;
                if idx <= order {
                    out[idx] = c;
                }
            }
            Ok(out)
        }
        SchurSpec::ExtremalA { a, m, k } => {
            if !(0.0..1.0).contains(a) {
                return Err(Error::ParamRange("requires 0 <= a < 1"));
            }
            if *k < 1 || m > k {
                return Err(Error::FamilyConstraint("requires 1 <= k and 0 <= m <= k"));
            }
            // z^m (a - z^k)/(1 - a z^k) = a z^m - (1-a^2) sum_s a^{s-1} z^{sk+m}
            let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
            if *m <= order {
                out[*m] = Complex64::new(*a, 0.0);
            }
            let head = 1.0 - a * a;
            let mut s = 1usize;
            let mut apow = 1.0;
            while s * k + m <= order {
                out[s * k + m] = Complex64::new(-head * apow, 0.0);
                apow *= a;
                s += 1;
            }
            Ok(out)
        }
        SchurSpec::ExtremalOmega { a } => expand(
            &SchurSpec::ExtremalA {
                a: *a,
                m: 1,
                k: 1,
            },
            order,
        ),
    }
}

/// Places coefficient `g_s` at index `s*k + m`; the lifted series represents
/// `z^m g(z^k)` with truncation order `M*k + m`.
pub fn lacunary_lift(g: &TruncatedSeries, m: usize, k: usize) -> Result<TruncatedSeries> {
    if k < 1 || m > k {
        return Err(Error::FamilyConstraint("requires 1 <= k and 0 <= m <= k"));
    }
    let order = g.trunc_order() * k + m;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    for (s, &c) in g.coeffs().iter().enumerate() {
        coeffs[s * k + m] = c;
    }
    Ok(TruncatedSeries::from_coeffs(coeffs, g.coeff_bound()))
}

/// Reads back the lacunary profile `(m, k)` and inner coefficients of a
/// series supported on `{s*k + m}`. Returns the tightest such profile.
pub fn lacunary_profile(t: &TruncatedSeries) -> Option<(usize, usize, Vec<Complex64>)> {
    let nonzero: Vec<usize> = (0..=t.trunc_order())
        .filter(|&n| t.magnitude(n) > SUPPORT_EPS)
        .collect();
    let &first = nonzero.first()?;
    if nonzero.len() == 1 {
        return Some((first, first.max(1), vec![t.coeffs()[first]]));
    }
    let mut k = nonzero[1] - first;
    for w in nonzero.windows(2) {
        k = gcd(k, w[1] - w[0]);
    }
    let inner_len = (t.trunc_order() - first) / k + 1;
    let mut inner = vec![Complex64::new(0.0, 0.0); inner_len];
    for s in 0..inner_len {
        inner[s] = t.coeffs()[s * k + first];
    }
    Some((first, k, inner))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Upper bound on `sum_{n>M} |c_n| r^n`: `coeff_bound * r^{M+1} / (1-r)`.
pub fn tail_bound_linear(t: &TruncatedSeries, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusRange);
    }
    Ok(t.coeff_bound() * r.powi(t.trunc_order() as i32 + 1) / (1.0 - r))
}

/// Upper bound on `sum_{n>M} |c_n|^2 r^{2n}`:
/// `coeff_bound^2 * r^{2(M+1)} / (1-r^2)`.
pub fn tail_bound_quadratic(t: &TruncatedSeries, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusRange);
    }
    let b = t.coeff_bound();
    Ok(b * b * r.powi(2 * (t.trunc_order() as i32 + 1)) / (1.0 - r * r))
}

/// Geometric tail bounds for an abstract bound/truncation pair, used when
/// sizing a truncation before any series is built.
pub fn geometric_tails(coeff_bound: f64, order: usize, r: f64) -> (f64, f64) {
    let lin = coeff_bound * r.powi(order as i32 + 1) / (1.0 - r);
    let quad = coeff_bound * coeff_bound * r.powi(2 * (order as i32 + 1)) / (1.0 - r * r);
    (lin, quad)
}

/// Random Schur-class sample: a Blaschke product of degree 1..=8 with zeros
/// uniform in the disk of radius 0.9 and a uniform rotation, optionally
/// composed with a target-side automorphism with `a` in `[0, 0.9]`.
pub fn sample_schur_spec<R: Rng + ?Sized>(rng: &mut R) -> SchurSpec {
    let degree: usize = rng.gen_range(1..=8);
    let zeros = (0..degree)
        .map(|_| {
            let rad = 0.9 * rng.gen::<f64>().sqrt();
            let theta = core::f64::consts::TAU * rng.gen::<f64>();
            Complex64::from_polar(rad, theta)
        })
        .collect();
    let rotation = Complex64::from_polar(1.0, core::f64::consts::TAU * rng.gen::<f64>());
    let base = SchurSpec::Blaschke { zeros, rotation };
    if rng.gen::<bool>() {
        SchurSpec::MobiusTarget {
            a: 0.9 * rng.gen::<f64>(),
            inner: Box::new(base),
        }
    } else {
        base
    }
}

/// Random lacunary-lifted Schur sample `z^m g(z^k)`.
pub fn sample_lacunary_spec<R: Rng + ?Sized>(rng: &mut R, m: usize, k: usize) -> SchurSpec {
    SchurSpec::LacunaryWrap {
        m,
        k,
        inner: Box::new(sample_schur_spec(rng)),
    }
}

/// Random Schur sample with support in `{m} union {n, n+1, ...}`: a wrap
/// `z^m w(z^j)` with `j = max(m, n-m)` of a map `w` that is an automorphism
/// target of a vanishing-origin Blaschke sample, so the head coefficient is
/// `w(0) = a` and the tail starts at index `m + j >= n`.
pub fn sample_head_tail_spec<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> SchurSpec {
    debug_assert!(n >= m + 1);
    let step = m.max(n - m).max(1);
    let vanishing = SchurSpec::LacunaryWrap {
        m: 1,
        k: 1,
        inner: Box::new(sample_schur_spec(rng)),
    };
    let moebius = SchurSpec::MobiusTarget {
        a: 0.9 * rng.gen::<f64>(),
        inner: Box::new(vanishing),
    };
    SchurSpec::LacunaryWrap {
        m,
        k: step,
        inner: Box::new(moebius),
    }
}
