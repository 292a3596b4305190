//! The eigenvalue-expansion ladder: constants `c_{m,j}(a)`, `d_{m,j}(a)`,
//! `e_l(a)`, the leading term `lambda_{0,n}`, and the two large-`n`
//! eigenvalue predictors (truncated expansion vs. direct root of the
//! truncated quantization condition).

use num_complex::Complex64;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::{branch_pow, omega_pow, Potential};
use crate::quadrature::{k_m_closed, k_mj, QuadratureConfig};
use crate::series::{compute_b, compute_mu_nu, TruncatedSeries};

/// All constants of the asymptotic expansion for one instance `(m, a)`,
/// built once and shared read-only by the predictors.
#[derive(Debug, Clone)]
pub struct ExpansionTable {
    pub potential: Potential,
    /// `K_{m,0} = K_m`, independent of `a`.
    pub km: f64,
    /// `K_{m,j}(G(a))`, `j = 1 .. floor(m/2)+1`.
    pub kmj_plus: Vec<Complex64>,
    /// `K_{m,j}(G^{-1}(a))`.
    pub kmj_minus: Vec<Complex64>,
    pub c: Vec<Complex64>,
    pub d: Vec<Complex64>,
    pub e: Vec<Complex64>,
    pub nu: Complex64,
}

/// Expansion depth `floor(m/2) + 1`, the truncation order used throughout.
pub fn depth(m: usize) -> usize {
    m / 2 + 1
}

impl ExpansionTable {
    pub fn build(p: &Potential, cfg: &QuadratureConfig) -> Result<Self> {
        let m = p.degree();
        let jmax = depth(m);
        let plus = p.rotate_coeffs(1);
        let minus = p.rotate_coeffs(-1);
        let mut kmj_plus = Vec::with_capacity(jmax);
        let mut kmj_minus = Vec::with_capacity(jmax);
        for j in 1..=jmax {
            kmj_plus.push(k_mj(&plus, j, cfg)?);
            kmj_minus.push(k_mj(&minus, j, cfg)?);
        }
        let km = k_m_closed(m)?;
        let nu = compute_mu_nu(p)?.nu;
        let c = compute_c(p, &kmj_plus, &kmj_minus)?;
        let d = compute_d(m, km, &c, nu);
        let e = compute_e(&d, m)?;
        Ok(Self {
            potential: p.clone(),
            km,
            kmj_plus,
            kmj_minus,
            c,
            d,
            e,
            nu,
        })
    }
}

/// `c_{m,j}(a) = K_{m,j}(G(a)) (w^2)^{1/2+(1-j)/m}
///             - K_{m,j}(G^{-1}(a)) (w^{-2})^{1/2+(1-j)/m}`,
/// where `(w^{2})^s` means `exp(2 s * 2 pi i/(m+2))` (not a principal power).
/// For even `m` the top slot `j = m/2+1` instead carries the constant left
/// over after the log terms cancel:
/// `K_{m,j}(G(a)) - K_{m,j}(G^{-1}(a)) + (b_{m/2+1}(a)/m)(8 pi i/(m+2))`.
pub fn compute_c(
    p: &Potential,
    kmj_plus: &[Complex64],
    kmj_minus: &[Complex64],
) -> Result<Vec<Complex64>> {
    let m = p.degree();
    let jmax = depth(m);
    if kmj_plus.len() < jmax || kmj_minus.len() < jmax {
        return Err(Error::UnsupportedOrder(jmax));
    }
    let two = Complex64::new(2.0, 0.0);
    let mut c = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        if m % 2 == 0 && j == m / 2 + 1 {
            let b_top = compute_b(p, j)?[j - 1].const_part;
            let extra = b_top / m as f64 * Complex64::new(0.0, 8.0 * PI / (m as f64 + 2.0));
            c.push(kmj_plus[j - 1] - kmj_minus[j - 1] + extra);
        } else {
            let s = 0.5 + (1.0 - j as f64) / m as f64;
            c.push(
                kmj_plus[j - 1] * omega_pow(m, two, s) - kmj_minus[j - 1] * omega_pow(m, -two, s),
            );
        }
    }
    Ok(c)
}

/// `d_{m,j} = c_{m,j}/(2i K_m sin(2 pi/m))`, with the even-`m` top slot
/// picking up the extra `4 nu pi i/(m+2)` in the numerator.
pub fn compute_d(m: usize, km: f64, c: &[Complex64], nu: Complex64) -> Vec<Complex64> {
    let denom = Complex64::new(0.0, 2.0 * km * (2.0 * PI / m as f64).sin());
    c.iter()
        .enumerate()
        .map(|(idx, &cj)| {
            let j = idx + 1;
            let mut num = cj;
            if m % 2 == 0 && j == m / 2 + 1 {
                num += nu * Complex64::new(0.0, 4.0 * PI / (m as f64 + 2.0));
            }
            num / denom
        })
        .collect()
}

/// `lambda_{0,n} = ((n + 1/2) pi / (K_m sin(2 pi/m)))^{2m/(m+2)}`.
pub fn lambda0(m: usize, n: usize, km: f64) -> f64 {
    let base = (n as f64 + 0.5) * PI / (km * (2.0 * PI / m as f64).sin());
    base.powf(2.0 * m as f64 / (m as f64 + 2.0))
}

/// Ratio of the classic leading-order eigenvalue constant
/// `sqrt(pi) Gamma(3/2+1/m)/(sin(pi/m) Gamma(1+1/m))` to the equivalent
/// `pi/(K_m sin(2 pi/m))`; analytically 1, so any drift flags a bug in the
/// closed form of `K_m`.
pub fn bender_constant_check(m: usize) -> Result<f64> {
    let km = k_m_closed(m)?;
    let im = 1.0 / m as f64;
    let classic = PI.sqrt() * gamma(1.5 + im) / ((PI * im).sin() * gamma(1.0 + im));
    let ours = PI / (km * (2.0 * PI / m as f64).sin());
    Ok(classic / ours)
}

/// Solve for the correction series `delta(x) = sum_l e_l x^l`
/// (`x = lambda_{0,n}^{-1/m}`) in the truncated ring to order `floor(m/2)+1`:
///
/// `(1+delta)^alpha + sum_j d_j x^j (1+delta)^{alpha - j/m} = 1`,
/// `alpha = (m+2)/(2m)`,
///
/// by fixed-point iteration; each pass fixes one further order, so
/// `depth + 1` passes suffice.
pub fn compute_e(d: &[Complex64], m: usize) -> Result<Vec<Complex64>> {
    let l = depth(m);
    if d.len() != l {
        return Err(Error::UnsupportedOrder(d.len()));
    }
    let alpha = (m as f64 + 2.0) / (2.0 * m as f64);
    let mut delta = TruncatedSeries::zero(l);
    for _ in 0..=l {
        // u = -sum_j d_j x^j (1+delta)^{alpha - j/m}; delta_new = (1+u)^{1/alpha} - 1.
        let mut u = TruncatedSeries::zero(l);
        for (idx, &dj) in d.iter().enumerate() {
            let j = idx + 1;
            let pow = delta.binom_power(alpha - j as f64 / m as f64)?;
            u = u.sub(&pow.shift(j).scale(dj))?;
        }
        delta = u.binom_power(1.0 / alpha)?.sub(&TruncatedSeries::one(l))?;
    }
    Ok((1..=l).map(|i| delta.coeff(i)).collect())
}

/// One predicted eigenvalue, by both methods, with the natural error scale
/// of their difference.
#[derive(Debug, Clone, Copy)]
pub struct Prediction {
    pub n: usize,
    pub lambda0: f64,
    pub lambda_expansion: Complex64,
    pub lambda_quantization: Complex64,
    /// `lambda_{0,n}^{1/2 - 1/m}`, the index-gap scale.
    pub error_scale: f64,
}

/// `lambda_{0,n} + sum_l e_l lambda_{0,n}^{1 - l/m}`.
pub fn predict_expansion(table: &ExpansionTable, n: usize) -> Complex64 {
    let m = table.potential.degree();
    let l0 = lambda0(m, n, table.km);
    let mut acc = Complex64::new(l0, 0.0);
    for (idx, &e) in table.e.iter().enumerate() {
        acc += e * l0.powf(1.0 - (idx as f64 + 1.0) / m as f64);
    }
    acc
}

/// Newton root of the truncated quantization function
/// `F(lambda) = lambda^{1/2+1/m} + sum_j d_j lambda^{1/2+(1-j)/m}
///            - (2n+1) pi/(2 K_m sin(2 pi/m))`,
/// seeded at `lambda_{0,n}`.
pub fn predict_quantization(table: &ExpansionTable, n: usize) -> Result<Complex64> {
    let m = table.potential.degree();
    let mf = m as f64;
    let rhs = (2.0 * n as f64 + 1.0) * PI / (2.0 * table.km * (2.0 * PI / mf).sin());
    let l0 = lambda0(m, n, table.km);
    let tol = 1e-12 * l0.powf(0.5 + 1.0 / mf);
    let mut lam = Complex64::new(l0, 0.0);
    for _ in 0..100 {
        let mut f = branch_pow(lam, 0.5 + 1.0 / mf)? - rhs;
        let mut df = (0.5 + 1.0 / mf) * branch_pow(lam, 0.5 + 1.0 / mf - 1.0)?;
        for (idx, &dj) in table.d.iter().enumerate() {
            let s = 0.5 + (1.0 - (idx as f64 + 1.0)) / mf;
            f += dj * branch_pow(lam, s)?;
            df += dj * s * branch_pow(lam, s - 1.0)?;
        }
        if f.norm() < tol {
            return Ok(lam);
        }
        lam -= f / df;
    }
    Err(Error::NoConvergence(100))
}

/// Run both predictors for index `n`.
pub fn predict(table: &ExpansionTable, n: usize) -> Result<Prediction> {
    let m = table.potential.degree();
    let l0 = lambda0(m, n, table.km);
    Ok(Prediction {
        n,
        lambda0: l0,
        lambda_expansion: predict_expansion(table, n),
        lambda_quantization: predict_quantization(table, n)?,
        error_scale: l0.powf(0.5 - 1.0 / m as f64),
    })
}
