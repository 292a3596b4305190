//! Problem-instance representation and sector geometry for the oscillator
//! `-u'' - [(iz)^m + P_{m-1}(iz)] u = lambda u`, in its rotated form
//! `-v'' + [z^m + P_{m-1}(z) + lambda] v = 0`.
//!
//! The complex plane splits into `m+2` Stokes sectors; all downstream
//! machinery works in frames obtained by rotating the coefficient vector.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A polynomial oscillator instance: degree `m >= 3` and the coefficient
/// vector `a = (a_1, ..., a_{m-1})` of `P_{m-1}(z) = a_1 z^{m-1} + ... + a_{m-1} z`.
///
/// Immutable value object; all derived tables key off `(m, a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl Potential {
    pub fn new(degree: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if degree < 3 {
            return Err(Error::InvalidDegree(degree));
        }
        if coeffs.len() != degree - 1 {
            return Err(Error::BadCoeffCount {
                expected: degree - 1,
                got: coeffs.len(),
            });
        }
        Ok(Self { degree, coeffs })
    }

    /// Instance with all `a_j = 0` (the pure `-(iz)^m` oscillator).
    pub fn monic(degree: usize) -> Result<Self> {
        Self::new(degree, vec![Complex64::new(0.0, 0.0); degree - 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `P_{m-1}(z) = a_1 z^{m-1} + ... + a_{m-1} z` evaluated by Horner.
    pub fn eval_poly(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in &self.coeffs {
            acc = (acc + a) * z;
        }
        acc
    }

    /// `z^m + P_{m-1}(z) + lambda`, the coefficient of the rotated equation.
    pub fn eval_q(&self, z: Complex64, lambda: Complex64) -> Complex64 {
        z.powu(self.degree as u32) + self.eval_poly(z) + lambda
    }

    /// True iff the potential is PT-symmetric, i.e. `a` is real (exact test).
    pub fn is_pt_symmetric(&self) -> bool {
        self.coeffs.iter().all(|a| a.im == 0.0)
    }

    /// The rotated coefficient vector `G^k(a)`, entry `j` mapped to
    /// `omega^{-jk} a_j`. Rotation factors are computed with the exponent
    /// reduced mod `m+2`, so the periodicity `G^{m+2}(a) = a` holds to the
    /// last bit.
    pub fn rotate_coeffs(&self, k: i64) -> Potential {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let j = idx as i64 + 1;
                a * omega_int_pow(self.degree, -(j * k))
            })
            .collect();
        Potential {
            degree: self.degree,
            coeffs,
        }
    }
}

/// `omega = exp(2 pi i / (m+2))`, the elementary sector rotation.
pub fn omega(m: usize) -> Result<Complex64> {
    if m < 3 {
        return Err(Error::InvalidDegree(m));
    }
    Ok(Complex64::from_polar(1.0, 2.0 * PI / (m as f64 + 2.0)))
}

/// `omega^p` for integer `p`, with the exponent reduced mod `m+2` first.
pub fn omega_int_pow(m: usize, p: i64) -> Complex64 {
    let n = m as i64 + 2;
    let r = p.rem_euclid(n);
    if r == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
    }
}

/// `omega^{nu s}` for complex `nu` and real `s`, evaluated as
/// `exp(nu s 2 pi i/(m+2))` — the convention used throughout for symbols like
/// `(omega^2)^{1/2 + (1-j)/m}`, which is *not* a principal power of the
/// complex number `omega^2`.
pub fn omega_pow(m: usize, nu: Complex64, s: f64) -> Complex64 {
    let factor = Complex64::new(0.0, 2.0 * PI / (m as f64 + 2.0));
    (nu * s * factor).exp()
}

/// Argument of `z` in `(-pi, pi]`: the branch cut sits on the negative real
/// axis and the cut itself is assigned `arg = pi`.
pub fn branch_arg(z: Complex64) -> f64 {
    let th = z.arg();
    // arg() returns -pi for im == -0.0 on the cut; fold it to +pi.
    if th == -PI {
        PI
    } else {
        th
    }
}

/// `z^s` on the branch `arg(z) in (-pi, pi]`; coincides with the integer
/// power when `s` is an integer.
pub fn branch_pow(z: Complex64, s: f64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        if s > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if s == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        return Err(Error::SingularInput);
    }
    let r = z.norm();
    let th = branch_arg(z);
    Ok(Complex64::from_polar(r.powf(s), s * th))
}

/// `ln z` with `Im ln z = arg z in (-pi, pi]`, matching [`branch_pow`].
pub fn branch_ln(z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::SingularInput);
    }
    Ok(Complex64::new(z.norm().ln(), branch_arg(z)))
}

/// A Stokes sector index, interpreted modulo `m+2`. Sector `S_k` is centered
/// on the ray `arg z = 2 k pi / (m+2)` with half-opening `pi/(m+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorIndex(pub i64);

impl SectorIndex {
    /// Angle of the center ray of `S_k`.
    pub fn center_angle(self, m: usize) -> f64 {
        2.0 * self.0 as f64 * PI / (m as f64 + 2.0)
    }

    /// The point at radius `r` on the center ray.
    pub fn center_point(self, m: usize, r: f64) -> Complex64 {
        Complex64::from_polar(r, self.center_angle(m))
    }
}
