//! Polynomial and harmonic building blocks on the unit sphere.
//!
//! Everything here is exact-recurrence based: dimension counts use integer
//! arithmetic, polynomial evaluation uses three-term recurrences, and the
//! real spherical harmonics (d = 2) use the fully normalised associated
//! Legendre recurrence so the basis averages to one over the sphere.

use crate::cubature::CubatureRule;
use crate::detsum;
use crate::error::{Error, Result};

/// A point on S^2 stored as a unit-norm coordinate triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector {
    coords: [f64; 3],
}

impl UnitVector {
    /// Builds a unit vector by normalising `(x, y, z)`.
    ///
    /// Rejects non-finite input and vectors too close to zero for the
    /// direction to be meaningful.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm2 = x * x + y * y + z * z;
        if !norm2.is_finite() {
            return Err(Error::Parameter("non-finite coordinates".into()));
        }
        if norm2 < 1e-24 {
            return Err(Error::Parameter(
                "vector too close to zero to normalise".into(),
            ));
        }
        let inv = 1.0 / norm2.sqrt();
        Ok(UnitVector {
            coords: [x * inv, y * inv, z * inv],
        })
    }

    /// Builds the point with colatitude `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = (theta.sin(), theta.cos());
        let (sp, cp) = (phi.sin(), phi.cos());
        UnitVector {
            coords: [st * cp, st * sp, ct],
        }
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    pub fn z(&self) -> f64 {
        self.coords[2]
    }

    pub fn coords(&self) -> [f64; 3] {
        self.coords
    }

    /// Euclidean inner product, clamped to [-1, 1] to absorb rounding.
    pub fn dot(&self, other: &UnitVector) -> f64 {
        let d = self.coords[0] * other.coords[0]
            + self.coords[1] * other.coords[1]
            + self.coords[2] * other.coords[2];
        d.clamp(-1.0, 1.0)
    }
}

/// Dimension descriptor for S^d with the Gegenbauer index lambda = (d-1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereDim {
    d: u32,
}

impl SphereDim {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::UnsupportedDimension {
                got: d,
                reason: "sphere dimension must be at least 2",
            });
        }
        Ok(SphereDim { d })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> f64 {
        (self.d as f64 - 1.0) / 2.0
    }
}

/// Index (degree, order) into a real orthonormal spherical-harmonic basis;
/// orders run from 1 to the dimension of the degree-`degree` harmonic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    pub degree: u32,
    pub order: u32,
}

impl HarmonicIndex {
    pub fn new(d: u32, degree: u32, order: u32) -> Result<Self> {
        let z = harmonic_space_dim(d, degree)?;
        if order == 0 || u128::from(order) > z {
            return Err(Error::Parameter(format!(
                "order {order} outside 1..={z} for degree {degree} on S^{d}"
            )));
        }
        Ok(HarmonicIndex { degree, order })
    }
}

/// Dimension Z(d, l) of the space of degree-l spherical harmonics on S^d,
/// by the exact integer recurrence
/// `Z(d,l) = Z(d,l-1) (2l+d-1)(l+d-2) / ((2l+d-3) l)`.
pub fn harmonic_space_dim(d: u32, degree: u32) -> Result<u128> {
    if d < 1 {
        return Err(Error::Parameter("harmonic_space_dim requires d >= 1".into()));
    }
    let d = u128::from(d);
    let mut z: u128 = 1;
    for l in 1..=u128::from(degree) {
        let num = (2 * l + d - 1)
            .checked_mul(l + d - 2)
            .and_then(|n| z.checked_mul(n))
            .ok_or(Error::Overflow("harmonic space dimension"))?;
        let den = (2 * l + d - 3) * l;
        debug_assert_eq!(num % den, 0);
        z = num / den;
    }
    Ok(z)
}

/// Dimension of the space of spherical polynomials of degree at most `max_degree`
/// on S^d; equals the harmonic-space dimension on S^{d+1} at the same degree.
pub fn poly_space_dim(d: u32, max_degree: u32) -> Result<u128> {
    if d < 1 {
        return Err(Error::Parameter("poly_space_dim requires d >= 1".into()));
    }
    harmonic_space_dim(d + 1, max_degree)
}

/// Laplace-Beltrami eigenvalue l (l + d - 1) for degree-l harmonics on S^d.
pub fn laplace_eigenvalue(d: u32, degree: u32) -> f64 {
    let l = degree as f64;
    l * (l + d as f64 - 1.0)
}

fn check_t(t: f64) -> Result<f64> {
    if !(t >= -1.0 - 1e-12 && t <= 1.0 + 1e-12) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            expected: "[-1, 1]",
        });
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// Coefficients (alpha, beta) of the normalised Gegenbauer step
/// `P_l = alpha * t * P_{l-1} - beta * P_{l-2}` for S^d, valid for l >= 2.
#[inline]
pub fn legendre_step_coeffs(d: u32, l: u32) -> (f64, f64) {
    let lambda = (d as f64 - 1.0) / 2.0;
    let l = l as f64;
    let denom = l + 2.0 * lambda - 1.0;
    (2.0 * (l + lambda - 1.0) / denom, (l - 1.0) / denom)
}

/// Generalised Legendre polynomial P_l^{(d)}(t), the Gegenbauer polynomial
/// with index (d-1)/2 normalised so P_l(1) = 1.
pub fn legendre_p(d: u32, degree: u32, t: f64) -> Result<f64> {
    let t = check_t(t)?;
    if d < 1 {
        return Err(Error::Parameter("legendre_p requires d >= 1".into()));
    }
    Ok(legendre_p_unchecked(d, degree, t))
}

pub(crate) fn legendre_p_unchecked(d: u32, degree: u32, t: f64) -> f64 {
    match degree {
        0 => 1.0,
        1 => t,
        _ => {
            let mut pm1 = 1.0;
            let mut p = t;
            for l in 2..=degree {
                let (a, b) = legendre_step_coeffs(d, l);
                let next = a * t * p - b * pm1;
                pm1 = p;
                p = next;
            }
            p
        }
    }
}

/// All values P_0(t), ..., P_L(t) from one recurrence pass.
pub fn legendre_batch(d: u32, max_degree: u32, t: f64) -> Result<Vec<f64>> {
    let t = check_t(t)?;
    if d < 1 {
        return Err(Error::Parameter("legendre_batch requires d >= 1".into()));
    }
    let mut out = Vec::with_capacity(max_degree as usize + 1);
    out.push(1.0);
    if max_degree == 0 {
        return Ok(out);
    }
    out.push(t);
    for l in 2..=max_degree {
        let (a, b) = legendre_step_coeffs(d, l);
        let next = a * t * out[l as usize - 1] - b * out[l as usize - 2];
        out.push(next);
    }
    Ok(out)
}

/// Jacobi polynomial P_n^{(alpha,beta)}(t) by the classical three-term
/// recurrence.
pub fn jacobi_p(n: u32, alpha: f64, beta: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut pm1 = 1.0;
    let mut p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * t;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + alpha + beta;
        let a1 = 2.0 * k * (k + alpha + beta) * (c - 2.0);
        let a2 = (c - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (c - 1.0) * c * (c - 2.0);
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = ((a2 + a3 * t) * p - a4 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    p
}

/// Kernel of the orthogonal projector onto polynomials of degree <= L,
/// as the zonal sum over degrees of Z(d,l) P_l(t).
pub fn proj_kernel(d: u32, max_degree: u32, t: f64) -> Result<f64> {
    let t = check_t(t)?;
    let p = legendre_batch(d, max_degree, t)?;
    let mut sum = 0.0;
    for (l, pl) in p.iter().enumerate() {
        sum += harmonic_space_dim(d, l as u32)? as f64 * pl;
    }
    Ok(sum)
}

/// Closed form of the same projector kernel via a single Jacobi polynomial;
/// used as a cross-check for [`proj_kernel`].
pub fn proj_kernel_closed(d: u32, max_degree: u32, t: f64) -> Result<f64> {
    let t = check_t(t)?;
    let df = d as f64;
    // (d)_L / (d/2)_L
    let mut ratio = 1.0;
    for k in 0..max_degree {
        let k = k as f64;
        ratio *= (df + k) / (df / 2.0 + k);
    }
    Ok(ratio * jacobi_p(max_degree, df / 2.0, df / 2.0 - 1.0, t))
}

/// Evaluator for the real orthonormal spherical-harmonic basis on S^2.
///
/// The basis is the associated-Legendre/trigonometric construction,
/// orthonormal under the *normalised* surface measure, so the degree-0
/// function is identically 1 and the squared basis sums to Z(2,l) at
/// every point (addition theorem at y = x).
///
/// Basis layout per degree l: order 1 is the zonal m = 0 function, order 2k
/// is the cos(k phi) function and order 2k+1 the sin(k phi) function.
#[derive(Debug, Clone)]
pub struct SphericalHarmonics {
    max_degree: u32,
}

impl SphericalHarmonics {
    pub fn new(max_degree: u32) -> Self {
        SphericalHarmonics { max_degree }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of basis functions up to the configured degree: (L+1)^2.
    pub fn len(&self) -> usize {
        let l = self.max_degree as usize;
        (l + 1) * (l + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index of (degree, order): degree^2 + order - 1.
    pub fn flat_index(idx: HarmonicIndex) -> usize {
        (idx.degree as usize) * (idx.degree as usize) + idx.order as usize - 1
    }

    /// Evaluates every basis function at `x`, in flat-index order.
    pub fn eval_point(&self, x: &UnitVector) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.eval_point_into(x, &mut out);
        out
    }

    /// Same as [`Self::eval_point`] but writing into a caller buffer.
    pub fn eval_point_into(&self, x: &UnitVector, out: &mut [f64]) {
        assert_eq!(out.len(), self.len());
        let lmax = self.max_degree as usize;
        let t = x.z();
        // sin(theta) from x, y for accuracy near the poles
        let u = (x.x() * x.x() + x.y() * x.y()).sqrt();
        let phi = x.y().atan2(x.x());

        let mut cos_m: Vec<f64> = Vec::with_capacity(lmax + 1);
        let mut sin_m: Vec<f64> = Vec::with_capacity(lmax + 1);
        let (sp, cp) = (phi.sin(), phi.cos());
        cos_m.push(1.0);
        sin_m.push(0.0);
        for m in 1..=lmax {
            cos_m.push(cos_m[m - 1] * cp - sin_m[m - 1] * sp);
            sin_m.push(sin_m[m - 1] * cp + cos_m[m - 1] * sp);
        }

        // q_lm1 / q_lm2 hold the fully normalised associated Legendre values
        // of degrees l-1 and l-2; q_curr is filled for the current degree.
        let mut q_lm2 = vec![0.0; lmax + 1];
        let mut q_lm1 = vec![0.0; lmax + 1];
        let mut q_curr = vec![0.0; lmax + 1];
        let mut diag = 1.0; // Q_l^l, starting from Q_0^0 = 1

        let sqrt2 = std::f64::consts::SQRT_2;
        for l in 0..=lmax {
            if l == 0 {
                q_curr[0] = 1.0;
            } else {
                let lf = l as f64;
                for m in 0..=l - 1 {
                    if m + 1 == l {
                        // sub-diagonal from the previous diagonal
                        q_curr[m] = t * (2.0 * lf + 1.0).sqrt() * q_lm1[m];
                    } else {
                        let mf = m as f64;
                        let a = ((2.0 * lf + 1.0) * (2.0 * lf - 1.0)
                            / ((lf - mf) * (lf + mf)))
                            .sqrt();
                        let b = ((2.0 * lf + 1.0) * (lf - 1.0 - mf) * (lf - 1.0 + mf)
                            / ((2.0 * lf - 3.0) * (lf - mf) * (lf + mf)))
                            .sqrt();
                        q_curr[m] = a * t * q_lm1[m] - b * q_lm2[m];
                    }
                }
                diag *= -u * ((2.0 * lf + 1.0) / (2.0 * lf)).sqrt();
                q_curr[l] = diag;
            }
            let base = l * l;
            out[base] = q_curr[0];
            for m in 1..=l {
                out[base + 2 * m - 1] = sqrt2 * q_curr[m] * cos_m[m];
                out[base + 2 * m] = sqrt2 * q_curr[m] * sin_m[m];
            }
            std::mem::swap(&mut q_lm2, &mut q_lm1);
            std::mem::swap(&mut q_lm1, &mut q_curr);
        }
    }
}

/// Single-function evaluation; prefer [`SphericalHarmonics::eval_point`]
/// when many functions are needed at the same point.
pub fn real_spherical_harmonic(d: u32, idx: HarmonicIndex, x: &UnitVector) -> Result<f64> {
    if d != 2 {
        return Err(Error::UnsupportedDimension {
            got: d,
            reason: "real spherical harmonics are implemented for S^2 only",
        });
    }
    let z = harmonic_space_dim(2, idx.degree)?;
    if idx.order == 0 || u128::from(idx.order) > z {
        return Err(Error::Parameter(format!(
            "order {} outside 1..={} for degree {}",
            idx.order, z, idx.degree
        )));
    }
    let sh = SphericalHarmonics::new(idx.degree);
    let values = sh.eval_point(x);
    Ok(values[SphericalHarmonics::flat_index(idx)])
}

/// Laplace-Fourier coefficients of `f` up to degree `max_degree`, computed by
/// applying `rule` to f * Y_{l,m}.
///
/// The table is exact (up to rounding) when `f` is a polynomial of degree
/// <= `max_degree` and the rule's precision is at least twice that; otherwise
/// the entries are quadrature approximations.
pub fn fourier_coefficients(
    f: &(dyn Fn(&UnitVector) -> f64 + Sync),
    max_degree: u32,
    rule: &CubatureRule,
) -> CoefficientTable {
    let sh = SphericalHarmonics::new(max_degree);
    let n_coeff = sh.len();
    let points = rule.points();
    let weights = rule.weights();

    let chunked: Vec<Vec<f64>> = detsum::par_chunks(points.len(), 512, |range| {
        let mut acc = vec![0.0; n_coeff];
        let mut buf = vec![0.0; n_coeff];
        for k in range {
            let x = &points[k];
            let wf = weights[k] * f(x);
            sh.eval_point_into(x, &mut buf);
            for (a, y) in acc.iter_mut().zip(buf.iter()) {
                *a += wf * y;
            }
        }
        acc
    });

    let mut values = vec![0.0; n_coeff];
    for part in chunked {
        for (v, p) in values.iter_mut().zip(part.iter()) {
            *v += p;
        }
    }
    CoefficientTable { max_degree, values }
}

/// Dense table of Laplace-Fourier coefficients indexed by (degree, order).
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    max_degree: u32,
    values: Vec<f64>,
}

impl CoefficientTable {
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, idx: HarmonicIndex) -> Option<f64> {
        if idx.degree > self.max_degree {
            return None;
        }
        self.values.get(SphericalHarmonics::flat_index(idx)).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
