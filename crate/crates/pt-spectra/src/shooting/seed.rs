//! High-order asymptotic seed for the decaying solution on a sector's
//! center ray.
//!
//! The leading asymptotics `f ~ z^{r_m} exp(-F(z))` drops an `O(z^{-1/2})`
//! factor, which is far too crude at the radii where integration has to
//! start. Instead the seed carries the full logarithmic derivative
//! `w = -f'/f` from a Riccati/WKB iteration and recovers the *absolute*
//! canonical normalization `ln f(R) = r_m ln R - F(R) + I(R)` with the
//! correction integral `I(R) = int_R^inf (w - F' + r_m/t) dt` evaluated
//! analytically, term by term, from the same series. This keeps the seed
//! normalization accurate to ~1e-10 at moderate radii, which the Wronskian
//! identity checks require.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::quadrature::k_m_closed;
use crate::series::TruncatedSeries;

/// Seed data in the unrotated frame at real `z = R`.
#[derive(Debug, Clone, Copy)]
pub struct Seed {
    /// Full complex logarithm `ln f(R)` in canonical normalization.
    pub ln_f: Complex64,
    /// `w(R) = -f'(R)/f(R)`.
    pub w: Complex64,
}

/// Smallest radius at which the seed series is trusted: outside the
/// convergence-limiting scales of `lambda` and the coefficients, and far
/// enough out that the truncated orders are negligible.
pub fn min_radius(p: &Potential, lambda: Complex64) -> f64 {
    let mf = p.degree() as f64;
    let coeff_scale = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm().powf(1.0 / (i as f64 + 1.0)))
        .fold(0.0f64, f64::max);
    let km = k_m_closed(p.degree()).unwrap_or(1.0);
    // Keep exp(-F(R)) safely below the solution scale exp(K_m |lambda|^{1/2+1/m})
    // so seed-level contamination of the growing companion stays buried.
    let dominance = ((mf + 2.0) / 2.0
        * (km * lambda.norm().powf(0.5 + 1.0 / mf) + 40.0))
        .powf(2.0 / (mf + 2.0));
    (4.0 * lambda.norm().powf(1.0 / mf))
        .max(4.0 * coeff_scale)
        .max(dominance)
        .max(8.0)
}

/// `(m/2) P - y P'`, the series of `p'` relative to `t^{m/2-1}`.
fn p1_of(p: &TruncatedSeries, m: usize) -> TruncatedSeries {
    p.scale(Complex64::new(m as f64 / 2.0, 0.0))
        .sub(&p.derivative().shift(1))
        .unwrap()
}

/// Build the seed at real `z = r` for the (already rotated) instance.
pub fn riccati_seed(p: &Potential, lambda: Complex64, r: f64) -> Result<Seed> {
    let m = p.degree();
    let mf = m as f64;
    if r < min_radius(p, lambda) {
        return Err(Error::SeedAccuracy(r));
    }
    let jmax = 3 * m + 24;

    // u(y) = a_1 y + ... + a_{m-1} y^{m-1} + lambda y^m, y = 1/t.
    let mut u = TruncatedSeries::zero(jmax);
    for (idx, &a) in p.coeffs().iter().enumerate() {
        u = u.add(&TruncatedSeries::monomial(jmax, idx + 1, a)).unwrap();
    }
    u = u.add(&TruncatedSeries::monomial(jmax, m, lambda)).unwrap();

    // WKB: p(t) = t^{m/2} P(y); exact Riccati demands p^2 = q + A(p) with
    // A = p''/(2p) - (3/4)(p'/p)^2 = t^{-2} SA(y). Iterate P from sqrt(1+u).
    let mut ps = u.binom_power(0.5)?;
    for _ in 0..2 {
        let p1 = p1_of(&ps, m);
        let p2 = p1
            .scale(Complex64::new(mf / 2.0 - 1.0, 0.0))
            .sub(&p1.derivative().shift(1))?;
        let sa = p2.div(&ps)?.scale(Complex64::new(0.5, 0.0)).sub(
            &p1.div(&ps)?
                .mul(&p1.div(&ps)?)?
                .scale(Complex64::new(0.75, 0.0)),
        )?;
        ps = u.add(&sa.shift(m + 2))?.binom_power(0.5)?;
    }
    let p1 = p1_of(&ps, m);
    // w = t^{m/2} P + (1/2)(P1/P)/t.
    let w1 = p1.div(&ps)?.scale(Complex64::new(0.5, 0.0));

    // Canonical exponent data: F keeps orders 1 <= j < m/2 + 1; r_m soaks up
    // the 1/t coefficient.
    let jmax_f = (m + 1) / 2;
    let r_m = if m % 2 == 1 {
        Complex64::new(-mf / 4.0, 0.0)
    } else {
        -Complex64::new(mf / 4.0, 0.0) - ps.coeff(m / 2 + 1)
    };
    let mut f_of_r = Complex64::new(2.0 / (mf + 2.0) * r.powf(0.5 * mf + 1.0), 0.0);
    for j in 1..=jmax_f {
        f_of_r += ps.coeff(j) * (2.0 / (mf + 2.0 - 2.0 * j as f64))
            * r.powf(0.5 * (mf + 2.0 - 2.0 * j as f64));
    }

    // Correction integral I(R) = int_R^inf Delta dt with
    // Delta = t^{m/2} sum_{j>jmax_f} P_j y^j + (W1(y) + r_m)/t.
    // The combined 1/t coefficient must vanish (that is what defines r_m);
    // a nonzero remainder means the series order was insufficient.
    let mut one_over_t = w1.coeff(0) + r_m;
    if m % 2 == 0 {
        one_over_t += ps.coeff(m / 2 + 1);
    }
    if one_over_t.norm() > 1e-7 * (1.0 + lambda.norm()) {
        return Err(Error::SeedAccuracy(r));
    }
    let mut corr = Complex64::new(0.0, 0.0);
    for j in (jmax_f + 1)..=jmax {
        if 2 * j == m + 2 {
            continue; // folded into r_m
        }
        corr += ps.coeff(j) * r.powf(0.5 * mf - j as f64 + 1.0) / (j as f64 - 0.5 * mf - 1.0);
    }
    for j in 1..=jmax {
        corr += w1.coeff(j) * r.powf(-(j as f64)) / j as f64;
    }

    let y = Complex64::new(1.0 / r, 0.0);
    let w = r.powf(0.5 * mf) * ps.eval(y) + w1.eval(y) / r;
    let ln_f = r_m * r.ln() - f_of_r + corr;
    Ok(Seed { ln_f, w })
}
