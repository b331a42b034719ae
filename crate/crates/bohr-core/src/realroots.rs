//! Real-coefficient polynomials and isolation of their roots in `(0, 1)`.
//!
//! Root isolation runs on the square-free part of the input: a Sturm
//! sequence counts the distinct roots in a bracket, bisection splits until
//! each bracket holds exactly one, and a sign-change bisection refines it.
//! Multiplicities are recovered afterwards by derivative counting on the
//! original polynomial, so a double root that touches zero without a sign
//! change (such as the one of `9r^2 - 6r + 1`) is still found.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Relative threshold below which a Euclidean remainder counts as zero.
const REMAINDER_EPS: f64 = 1e-10;

/// Relative threshold for a derivative value to count as vanishing when
/// recovering multiplicities.
const MULTIPLICITY_EPS: f64 = 1e-6;

/// A univariate polynomial with real coefficients in ascending degree order:
/// `coeffs[i]` multiplies `r^i`. The representation keeps no trailing zeros
/// except for the zero polynomial itself, which is stored as an empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from ascending-order coefficients, trimming exact
    /// trailing zeros.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = RealPolynomial { coeffs };
        p.trim(0.0);
        p
    }

    pub fn zero() -> Self {
        RealPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RealPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect();
        RealPolynomial::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> Self {
        RealPolynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Monic normalization (leading coefficient 1).
    pub fn monic(&self) -> Result<Self> {
        let lead = *self.coeffs.last().ok_or(Error::EmptyPolynomial)?;
        Ok(self.scale(1.0 / lead))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RealPolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = q * divisor + rem` and `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::EmptyPolynomial)?;
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return Ok((RealPolynomial::zero(), self.clone()));
        }
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i] / lead;
            quot[i - dd] = q;
            if q != 0.0 {
                for j in 0..=dd {
                    rem[i - dd + j] -= q * divisor.coeffs[j];
                }
            }
            rem[i] = 0.0;
        }
        rem.truncate(dd);
        Ok((RealPolynomial::new(quot), RealPolynomial::new(rem)))
    }

    /// Drops trailing coefficients of magnitude at most `tol` (absolute).
    fn trim(&mut self, tol: f64) {
        while let Some(&c) = self.coeffs.last() {
            if c.abs() <= tol {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Treats coefficients tiny relative to the largest one as numerical
    /// noise and removes them from the tail.
    fn trim_relative(&mut self, rel: f64) {
        let tol = self.max_coeff() * rel;
        self.trim(tol);
    }
}

/// Sorted distinct roots in `(0, 1)` with their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    roots: Vec<Root>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
}

impl RootSet {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Total multiplicity over all roots.
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Greatest common divisor of two polynomials by the Euclidean algorithm,
/// with remainders rescaled each step and declared zero once their largest
/// coefficient drops below `REMAINDER_EPS` relative to the operands.
fn poly_gcd(a: &RealPolynomial, b: &RealPolynomial) -> Result<RealPolynomial> {
    let mut a = a.monic()?;
    let mut b = match b.monic() {
        Ok(p) => p,
        Err(_) => return Ok(a),
    };
    while !b.is_zero() {
        let (_, mut r) = a.div_rem(&b)?;
        // Zero test against the operand scale: a remainder that is uniformly
        // tiny relative to the (monic) operands is roundoff, not a gcd step.
        let scale = a.max_coeff().max(b.max_coeff());
        r.trim(REMAINDER_EPS * scale);
        if r.is_zero() {
            return b.monic();
        }
        a = b;
        b = r.monic()?;
    }
    a.monic()
}

/// Square-free part `p / gcd(p, p')`, normalized monic. The root set is
/// unchanged but every multiplicity becomes 1.
pub fn square_free_factor(p: &RealPolynomial) -> Result<RealPolynomial> {
    if p.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    if p.degree() == Some(0) {
        return Err(Error::EmptyPolynomial);
    }
    let dp = p.derivative();
    let g = poly_gcd(p, &dp)?;
    if g.degree() == Some(0) {
        return p.monic();
    }
    let (mut q, _) = p.div_rem(&g)?;
    q.trim_relative(REMAINDER_EPS);
    q.monic()
}

/// Sturm sequence of `p` (assumed square-free in our usage; the sequence is
/// valid either way, counting distinct roots). Elements are rescaled by
/// positive constants only: sign-flipping normalizations would destroy the
/// variation-counting property.
fn sturm_sequence(p: &RealPolynomial) -> Result<Vec<RealPolynomial>> {
    let positive_scale = |p: &RealPolynomial| -> RealPolynomial {
        let m = p.max_coeff();
        if m > 0.0 {
            p.scale(1.0 / m)
        } else {
            p.clone()
        }
    };
    let mut seq = Vec::new();
    let p0 = positive_scale(p);
    let p1 = positive_scale(&p0.derivative());
    if p1.is_zero() {
        seq.push(p0);
        return Ok(seq);
    }
    seq.push(p0);
    seq.push(p1);
    loop {
        let n = seq.len();
        let (_, mut r) = seq[n - 2].div_rem(&seq[n - 1])?;
        // Operands are scaled to unit max coefficient, so the zero test for
        // the remainder is an absolute one.
        r.trim(REMAINDER_EPS);
        if r.is_zero() {
            break;
        }
        seq.push(positive_scale(&r.scale(-1.0)));
    }
    Ok(seq)
}

/// Horner evaluation together with a running roundoff majorant; values whose
/// magnitude falls below the accumulated error bound carry no usable sign.
fn eval_with_error(p: &RealPolynomial, x: f64) -> (f64, f64) {
    let ax = x.abs();
    let mut value = 0.0;
    let mut majorant = 0.0;
    for &c in p.coeffs.iter().rev() {
        value = value * x + c;
        majorant = majorant * ax + c.abs();
    }
    (value, majorant * 1e-13 * p.coeffs.len() as f64)
}

/// Sign variations of the Sturm sequence at `x`; values indistinguishable
/// from zero at working precision are skipped.
fn sign_variations(seq: &[RealPolynomial], x: f64) -> u32 {
    let mut variations = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let (v, err) = eval_with_error(p, x);
        if v.abs() <= err {
            continue;
        }
        let sign = v > 0.0;
        if let Some(prev) = last {
            if prev != sign {
                variations += 1;
            }
        }
        last = Some(sign);
    }
    variations
}

/// Number of distinct real roots of `p` in `(lo, hi]`, by Sturm's theorem.
/// `p` must not vanish at `lo`.
pub fn sturm_count(p: &RealPolynomial, lo: f64, hi: f64) -> Result<u32> {
    let seq = sturm_sequence(p)?;
    Ok(sign_variations(&seq, lo).saturating_sub(sign_variations(&seq, hi)))
}

fn sturm_count_with(seq: &[RealPolynomial], lo: f64, hi: f64) -> u32 {
    sign_variations(seq, lo).saturating_sub(sign_variations(seq, hi))
}

/// Bisection refinement of a bracketed sign change to width at most `tol`.
fn refine_bisect(p: &RealPolynomial, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = p.eval(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return mid;
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (flo > 0.0) != (fm > 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
}

/// Multiplicity of the root `v` of `p`, by evaluating successive derivatives
/// until one is decidedly nonzero relative to its own coefficient scale.
fn multiplicity_at(p: &RealPolynomial, v: f64) -> u32 {
    let mut d = p.clone();
    let max_order = p.degree().unwrap_or(0) as u32;
    for j in 0..=max_order {
        let scale = d.max_coeff().max(1e-300);
        if d.eval(v).abs() > MULTIPLICITY_EPS * scale {
            return j.max(1);
        }
        d = d.derivative();
    }
    max_order.max(1)
}

/// All distinct real roots of `p` in the open interval `(0, 1)`, each
/// refined on the square-free part to a bracket of width at most `tol`,
/// with multiplicities recovered by derivative counting on `p` itself.
pub fn roots_in_unit_interval(p: &RealPolynomial, tol: f64) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    if tol <= 0.0 {
        return Err(Error::ParamRange("tolerance must be positive"));
    }
    if p.degree() == Some(0) {
        return Ok(RootSet { roots: Vec::new() });
    }

    let mut q = square_free_factor(p)?;

    // Roots at the endpoints are excluded from the open interval; deflate
    // them so the Sturm count at 0 and 1 is well defined.
    let scale = q.max_coeff();
    while !q.is_zero() && q.coeffs()[0].abs() <= REMAINDER_EPS * scale {
        q = RealPolynomial::new(q.coeffs()[1..].to_vec());
    }
    while q.degree().map_or(false, |d| d >= 1) && q.eval(1.0).abs() <= REMAINDER_EPS * scale {
        let (d, _) = q.div_rem(&RealPolynomial::new(vec![-1.0, 1.0]))?;
        q = d;
    }
    if q.degree().map_or(true, |d| d == 0) {
        return Ok(RootSet { roots: Vec::new() });
    }

    let seq = sturm_sequence(&q)?;
    let width_floor = tol.min(1e-9);
    let mut brackets = vec![(0.0f64, 1.0f64)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = brackets.pop() {
        let count = sturm_count_with(&seq, lo, hi);
        match count {
            0 => {}
            // A bracket at the width floor holds a cluster the working
            // precision cannot separate; report it as one root.
            1 => isolated.push((lo, hi)),
            _ if hi - lo <= width_floor => isolated.push((lo, hi)),
            _ => {
                let mut mid = 0.5 * (lo + hi);
                // Avoid splitting exactly on a root of q.
                if q.eval(mid).abs() <= 1e-14 * scale {
                    mid += (hi - lo) * 1e-3;
                }
                brackets.push((lo, mid));
                brackets.push((mid, hi));
            }
        }
    }

    let mut roots: Vec<Root> = isolated
        .into_iter()
        .map(|(lo, hi)| {
            let value = refine_bisect(&q, lo, hi, tol);
            let multiplicity = multiplicity_at(p, value);
            Root {
                value,
                multiplicity,
            }
        })
        .collect();
    roots.sort_unstable_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    Ok(RootSet { roots })
}

/// Largest root value of a nonempty root set.
pub fn maximal_root(rs: &RootSet) -> Result<f64> {
    rs.roots
        .last()
        .map(|r| r.value)
        .ok_or(Error::NoRootInInterval)
}
