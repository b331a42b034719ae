//! Catalog of sharp-radius equations.
//!
//! Every sharp radius handled by this crate is the maximal positive root in
//! `(0, 1)` of an explicit polynomial. This module assembles those
//! polynomials exactly (all coefficients are integers, or integers plus the
//! linear/quadratic terms of one real parameter) and solves them through
//! [`crate::realroots`].
//!
//! Families:
//!
//! * `Phi1/Phi2/Phi3` — the three case polynomials behind the radius
//!   `r_{N,m}` for maps with a degree-`m` head and a tail starting at
//!   degree `N`;
//! * `LacunarySym` — the radius `r_{k,m}` for lacunary series
//!   `z^m g(z^k)` without refinement terms;
//! * `RefinedRoot` — the coefficient-dependent radius `R_{k,m}(a)` of the
//!   refined lacunary inequality, with `a` the head-coefficient magnitude.

use alloc::vec;

use crate::error::{Error, Result};
use crate::realroots::{maximal_root, roots_in_unit_interval, RealPolynomial, RootSet};

/// Default bisection tolerance for radius queries.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// One radius equation with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusQuery {
    /// `2r^N + r - 1 = 0`.
    Phi1 { n: usize },
    /// `4r^{2(N-m)} + 4r^{N+1-2m} - 4r^{N-2m} + r^2 - 2r + 1 = 0`, `N > 2m`.
    Phi2 { n: usize, m: usize },
    /// `4r^N + r^{2+2m-N} - 2r^{1+2m-N} + r^{2m-N} + 4r - 4 = 0`,
    /// `m+1 <= N <= 2m`.
    Phi3 { n: usize, m: usize },
    /// Dispatches to the applicable `Phi` family for `(N, m)`.
    AutoPhi { n: usize, m: usize },
    /// `r^{2(k-m)} - 6r^{k-m} + 8r^{2k} + 1 = 0`, `0 <= m <= k`.
    LacunarySym { k: usize, m: usize },
    /// `(1-a-a^2) r^{m+k} + r^k + a r^m - 1 = 0`, `0 <= m <= k`,
    /// `a` in `[0, 1)`.
    RefinedRoot { k: usize, m: usize, a: f64 },
}

fn poly_from_terms(len: usize, terms: &[(usize, f64)]) -> RealPolynomial {
    let mut coeffs = vec![0.0; len];
    for &(exp, c) in terms {
        coeffs[exp] += c;
    }
    RealPolynomial::new(coeffs)
}

/// Resolves an `AutoPhi` query to the concrete case family, mirroring the
/// case split `m = 0` / `N > 2m` / `m+1 <= N <= 2m`.
pub fn resolve_auto_phi(n: usize, m: usize) -> Result<RadiusQuery> {
    if n < 1 {
        return Err(Error::FamilyConstraint("requires N >= 1"));
    }
    if m == 0 {
        Ok(RadiusQuery::Phi1 { n })
    } else if n > 2 * m {
        Ok(RadiusQuery::Phi2 { n, m })
    } else if m + 1 <= n {
        Ok(RadiusQuery::Phi3 { n, m })
    } else {
        Err(Error::FamilyConstraint("requires N >= m+1"))
    }
}

/// Assembles the polynomial of one of the three `phi` case families.
pub fn phi_poly(q: &RadiusQuery) -> Result<RealPolynomial> {
    match *q {
        RadiusQuery::Phi1 { n } => {
            if n < 1 {
                return Err(Error::FamilyConstraint("requires N >= 1"));
            }
            Ok(poly_from_terms(n + 1, &[(n, 2.0), (1, 1.0), (0, -1.0)]))
        }
        RadiusQuery::Phi2 { n, m } => {
            if n <= 2 * m {
                return Err(Error::FamilyConstraint("requires N > 2m"));
            }
            let len = (2 * (n - m)).max(2) + 1;
            Ok(poly_from_terms(
                len,
                &[
                    (2 * (n - m), 4.0),
                    (n + 1 - 2 * m, 4.0),
                    (n - 2 * m, -4.0),
                    (2, 1.0),
                    (1, -2.0),
                    (0, 1.0),
                ],
            ))
        }
        RadiusQuery::Phi3 { n, m } => {
            if n < m + 1 || n > 2 * m {
                return Err(Error::FamilyConstraint("requires m+1 <= N <= 2m"));
            }
            // All exponents 2+2m-N, 1+2m-N, 2m-N are nonnegative here.
            let len = n.max(2 + 2 * m - n) + 1;
            Ok(poly_from_terms(
                len,
                &[
                    (n, 4.0),
                    (2 + 2 * m - n, 1.0),
                    (1 + 2 * m - n, -2.0),
                    (2 * m - n, 1.0),
                    (1, 4.0),
                    (0, -4.0),
                ],
            ))
        }
        _ => Err(Error::FamilyConstraint("not a phi family")),
    }
}

/// Polynomial of the unrefined lacunary radius equation
/// `r^{2(k-m)} - 6r^{k-m} + 8r^{2k} + 1 = 0`. Exponents are accumulated, so
/// `k = m` (two constant terms) needs no special case.
pub fn lacunary_poly(k: usize, m: usize) -> Result<RealPolynomial> {
    if k < 1 {
        return Err(Error::FamilyConstraint("requires k >= 1"));
    }
    if m > k {
        return Err(Error::FamilyConstraint("requires 0 <= m <= k"));
    }
    Ok(poly_from_terms(
        2 * k + 1,
        &[(2 * (k - m), 1.0), (k - m, -6.0), (2 * k, 8.0), (0, 1.0)],
    ))
}

/// Polynomial of the refined radius equation
/// `(1-a-a^2) r^{m+k} + r^k + a r^m - 1 = 0` with `a` the head-coefficient
/// magnitude.
pub fn refined_root_poly(k: usize, m: usize, a: f64) -> Result<RealPolynomial> {
    if k < 1 {
        return Err(Error::FamilyConstraint("requires k >= 1"));
    }
    if m > k {
        return Err(Error::FamilyConstraint("requires 0 <= m <= k"));
    }
    if !(0.0..1.0).contains(&a) {
        return Err(Error::ParamRange("requires 0 <= a < 1"));
    }
    Ok(poly_from_terms(
        m + k + 1,
        &[(m + k, 1.0 - a - a * a), (k, 1.0), (m, a), (0, -1.0)],
    ))
}

/// Assembles the polynomial for any query.
pub fn assemble(q: &RadiusQuery) -> Result<RealPolynomial> {
    match *q {
        RadiusQuery::Phi1 { .. } | RadiusQuery::Phi2 { .. } | RadiusQuery::Phi3 { .. } => {
            phi_poly(q)
        }
        RadiusQuery::AutoPhi { n, m } => phi_poly(&resolve_auto_phi(n, m)?),
        RadiusQuery::LacunarySym { k, m } => lacunary_poly(k, m),
        RadiusQuery::RefinedRoot { k, m, a } => refined_root_poly(k, m, a),
    }
}

/// All roots of the assembled polynomial in `(0, 1)`.
pub fn radius_roots(q: &RadiusQuery, tol: f64) -> Result<RootSet> {
    roots_in_unit_interval(&assemble(q)?, tol)
}

/// The sharp radius: maximal root of the assembled polynomial in `(0, 1)`.
pub fn sharp_radius(q: &RadiusQuery, tol: f64) -> Result<f64> {
    maximal_root(&radius_roots(q, tol)?)
}

/// Residual of the assembled polynomial at `r`, normalized by its largest
/// coefficient magnitude.
pub fn normalized_residual(q: &RadiusQuery, r: f64) -> Result<f64> {
    let p = assemble(q)?;
    Ok(p.eval(r).abs() / p.max_coeff())
}
