//! Shooting oracle: evaluate the spectral determinant `W_{-1,1}(a, lambda)`
//! by integrating the rotated equation inward along Stokes-sector center
//! rays from asymptotic seeds, locate its zeros (the eigenvalues), and
//! check the Wronskian identities.

mod ode;
mod seed;

pub use ode::{integrate_segment, OdeTol, RayEnd};
pub use seed::{min_radius, riccati_seed, Seed};

use num_complex::Complex64;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::expansion::{lambda0, predict_expansion, predict_quantization, ExpansionTable};
use crate::potential::{omega_int_pow, Potential, SectorIndex};
use crate::series::compute_mu_nu;
use std::f64::consts::PI;

/// Tolerances and search controls for the shooting pipeline.
#[derive(Debug, Clone, Copy)]
pub struct ShootingConfig {
    /// Minimum seed radius; the effective radius also respects the
    /// per-instance validity bound of the asymptotic series.
    pub start_radius: f64,
    pub ode_rel_tol: f64,
    pub ode_abs_tol: f64,
    /// Relative |lambda|-step threshold for Newton convergence.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Minimum spacing between accepted roots (relative to |lambda|).
    pub deflation_radius: f64,
    /// |Im lambda|/|lambda| threshold for the "real" classification.
    pub reality_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            start_radius: 10.0,
            ode_rel_tol: 1e-12,
            ode_abs_tol: 1e-16,
            newton_tol: 1e-10,
            newton_max_iter: 60,
            deflation_radius: 1e-4,
            reality_tol: 1e-6,
        }
    }
}

/// How a located root relates to the reality structure of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    RealPositive,
    RealNonpositive,
    ConjugatePairMember,
    Unresolved,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::RealPositive => "real-positive",
            Classification::RealNonpositive => "real-nonpositive",
            Classification::ConjugatePairMember => "conjugate-pair-member",
            Classification::Unresolved => "unresolved",
        }
    }
}

/// One located eigenvalue with its prediction and residual bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct EigenvalueRecord {
    pub n: usize,
    pub lambda_pred: Complex64,
    pub lambda_shoot: Complex64,
    /// `|lambda_shoot - lambda_pred| / lambda_{0,n}^{1/2-1/m}`.
    pub residual: f64,
    pub classification: Classification,
    /// Scaled determinant magnitude at the accepted root.
    pub det_at_root: f64,
}

/// Enumeration result; failed indices are reported, never fatal.
#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    pub records: Vec<EigenvalueRecord>,
    pub failures: Vec<(usize, String)>,
}

/// The exponent `F(z)` of the decaying asymptotic factor
/// `f ~ z^{r_m} exp(-F)` for the (unrotated) instance.
pub fn f_phase(z: Complex64, p: &Potential, lambda: Complex64) -> Result<Complex64> {
    use crate::potential::branch_pow;
    use crate::series::compute_b;
    if z.norm() == 0.0 {
        return Err(Error::SingularInput);
    }
    let m = p.degree();
    let mf = m as f64;
    let _ = lambda; // lambda first enters F beyond the displayed orders
    let b = compute_b(p, (m + 1) / 2)?;
    let mut f = branch_pow(z, 0.5 * mf + 1.0)? * (2.0 / (mf + 2.0));
    for (idx, bj) in b.iter().enumerate() {
        let j = idx + 1;
        f += bj.const_part * (2.0 / (mf + 2.0 - 2.0 * j as f64))
            * branch_pow(z, 0.5 * (mf + 2.0 - 2.0 * j as f64))?;
    }
    Ok(f)
}

/// Seed for `f_k` at `z = R w^k`: value/derivative mantissas, shared log
/// scale, and the start point. Derivative is `d/dz` in the common frame.
pub fn boundary_seed(
    p: &Potential,
    lambda: Complex64,
    k: SectorIndex,
    r: f64,
) -> Result<(Complex64, Complex64, f64, Complex64)> {
    let m = p.degree();
    let pk = p.rotate_coeffs(k.0);
    let lam_k = lambda * omega_int_pow(m, -(m as i64) * k.0);
    let s = riccati_seed(&pk, lam_k, r)?;
    let z0 = k.center_point(m, r);
    let mantissa = Complex64::new(0.0, s.ln_f.im).exp();
    let frame = omega_int_pow(m, -k.0);
    Ok((mantissa, -frame * s.w * mantissa, s.ln_f.re, z0))
}

fn effective_radius(p: &Potential, lambda: Complex64, k: SectorIndex, cfg: &ShootingConfig) -> f64 {
    let m = p.degree();
    let pk = p.rotate_coeffs(k.0);
    let lam_k = lambda * omega_int_pow(m, -(m as i64) * k.0);
    cfg.start_radius.max(min_radius(&pk, lam_k))
}

/// Integrate `f_k` from its seed to an arbitrary target point.
pub fn integrate_to(
    p: &Potential,
    lambda: Complex64,
    k: SectorIndex,
    target: Complex64,
    cfg: &ShootingConfig,
) -> Result<RayEnd> {
    let r = effective_radius(p, lambda, k, cfg);
    let (y0, y1, log0, z0) = boundary_seed(p, lambda, k, r)?;
    ode::integrate_segment(
        p,
        lambda,
        z0,
        target,
        y0,
        y1,
        log0,
        OdeTol {
            rel: cfg.ode_rel_tol,
            abs: cfg.ode_abs_tol,
        },
    )
}

/// `(f_k(0), f_k'(0))` as a log-scaled pair.
pub fn integrate_ray(
    p: &Potential,
    lambda: Complex64,
    k: SectorIndex,
    cfg: &ShootingConfig,
) -> Result<RayEnd> {
    integrate_to(p, lambda, k, Complex64::new(0.0, 0.0), cfg)
}

/// A log-scaled determinant value: `det = mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy)]
pub struct DetValue {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl DetValue {
    /// Value rescaled against a reference log level, with the exponent
    /// clamped to stay representable.
    pub fn rescaled(&self, ref_log: f64) -> Complex64 {
        self.mantissa * (self.log_scale - ref_log).clamp(-600.0, 600.0).exp()
    }
}

/// The spectral determinant: `i W_{-1,1}(a, lambda)`, log-scaled.
///
/// Zeros coincide with the eigenvalues (`W_{0,1}` never vanishes, so zeros
/// of `W_{-1,1}` are exactly those of the connection coefficient). The
/// factor `i` makes the PT symmetry read plainly: for real `a`,
/// `conj(W_{-1,1}(conj lambda)) = -W_{-1,1}(lambda)`, so `i W_{-1,1}` is
/// conjugation-symmetric and real on the real axis.
///
/// Matching point: the two solutions meet on the positive real axis at a
/// radius chosen adaptively near the crossing of the oscillatory
/// (anti-Stokes) region. At the origin the factors exceed the Wronskian by
/// a tunneling factor `exp(c lambda^{1/2+1/m})` and the cancellation noise
/// swamps the root structure by moderate eigenvalue indices; near the
/// crossing the factors and the Wronskian are comparable. Each solution
/// travels down its own sector center ray (where it grows monotonically,
/// so the integration is stable) and swings to the axis along a short arc
/// at the candidate radius; the candidate minimizing the cancellation
/// ratio wins.
pub fn spectral_det(p: &Potential, lambda: Complex64, cfg: &ShootingConfig) -> Result<DetValue> {
    let m = p.degree();
    let mf = m as f64;
    let coeff_scale = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm().powf(1.0 / (i as f64 + 1.0)))
        .fold(0.0f64, f64::max);
    let r_t = (1.0 + lambda.norm()).powf(1.0 / mf) + coeff_scale;
    let candidates: Vec<f64> = [0.9, 0.75, 0.6, 0.45, 0.3]
        .iter()
        .map(|c| c * r_t)
        .collect();
    let tol = OdeTol {
        rel: cfg.ode_rel_tol,
        abs: cfg.ode_abs_tol,
    };

    // States of f_k at each candidate point on the real axis.
    let ends_for = |k: i64| -> Result<Vec<RayEnd>> {
        let theta = 2.0 * PI * k as f64 / (mf + 2.0);
        let on_ray = |r: f64| Complex64::from_polar(r, theta);
        let mut ray_state = integrate_to(p, lambda, SectorIndex(k), on_ray(candidates[0]), cfg)?;
        let mut out = Vec::with_capacity(candidates.len());
        for (i, &r) in candidates.iter().enumerate() {
            if i > 0 {
                ray_state = integrate_segment(
                    p,
                    lambda,
                    on_ray(candidates[i - 1]),
                    on_ray(r),
                    ray_state.value,
                    ray_state.deriv,
                    ray_state.log_scale,
                    tol,
                )?;
            }
            let nseg = 4;
            let mut arc = ray_state;
            for s in 1..=nseg {
                let th0 = theta * (1.0 - (s - 1) as f64 / nseg as f64);
                let th1 = theta * (1.0 - s as f64 / nseg as f64);
                arc = integrate_segment(
                    p,
                    lambda,
                    Complex64::from_polar(r, th0),
                    Complex64::from_polar(r, th1),
                    arc.value,
                    arc.deriv,
                    arc.log_scale,
                    tol,
                )?;
            }
            out.push(arc);
        }
        Ok(out)
    };
    let ems = ends_for(-1)?;
    let eps = ends_for(1)?;

    // Keep the candidate whose factor products are smallest in absolute
    // terms: the evaluation error is a fixed fraction of the products, so
    // this maximizes the accuracy of the cancelling difference. (A ratio
    // against |W| would be unstable near a root, where |W| itself sinks
    // into the noise at every candidate.)
    let mut best: Option<(f64, DetValue)> = None;
    for (em, ep) in ems.iter().zip(&eps) {
        let w = em.value * ep.deriv - em.deriv * ep.value;
        let prod = (em.value * ep.deriv).norm() + (em.deriv * ep.value).norm();
        if prod == 0.0 {
            continue;
        }
        let score = prod.ln() + em.log_scale + ep.log_scale;
        if best.as_ref().map_or(true, |(b, _)| score < *b) {
            best = Some((
                score,
                DetValue {
                    mantissa: Complex64::i() * w,
                    log_scale: em.log_scale + ep.log_scale,
                },
            ));
        }
    }
    best.map(|(_, d)| d).ok_or(Error::SingularInput)
}

/// The companion Wronskian `W_{0,1}` at full scale; the identity
/// `W_{0,1} = 2 w^{mu(a)}` makes this the sharpest end-to-end check of the
/// seed normalization and the integrator.
///
/// Matched on the shared sector boundary (the anti-Stokes ray at angle
/// `pi/(m+2)`), where both solutions stay polynomially sized. Matching at
/// the origin instead would pit two `exp(c lambda^{1/2+1/m})`-sized products
/// against an O(1) Wronskian and lose all precision by moderate `lambda`.
pub fn w01(p: &Potential, lambda: Complex64, cfg: &ShootingConfig) -> Result<Complex64> {
    let m = p.degree();
    let rho = effective_radius(p, lambda, SectorIndex(0), cfg)
        .max(effective_radius(p, lambda, SectorIndex(1), cfg));
    let z_star = Complex64::from_polar(rho, PI / (m as f64 + 2.0));
    let e0 = integrate_to(p, lambda, SectorIndex(0), z_star, cfg)?;
    let e1 = integrate_to(p, lambda, SectorIndex(1), z_star, cfg)?;
    let w = e0.value * e1.deriv - e0.deriv * e1.value;
    let s = e0.log_scale + e1.log_scale;
    if s.abs() > 600.0 {
        return Err(Error::QuadratureFailure {
            achieved: s,
            requested: 600.0,
        });
    }
    Ok(w * s.exp())
}

/// Newton search (finite-difference derivative) for a zero of the spectral
/// determinant near `seed`. Returns the root and the scaled determinant
/// magnitude there. `accepted` is the deflation list of prior roots.
///
/// The determinant is a cancelling difference of exponentially large
/// products, so its evaluation noise floor grows with `lambda` and Newton
/// eventually stalls above the step tolerance. A stalled iterate whose
/// residual has stopped improving at already-small steps is accepted at the
/// best point seen rather than reported as a failure.
pub fn find_eigenvalue(
    p: &Potential,
    seed: Complex64,
    accepted: &[Complex64],
    cfg: &ShootingConfig,
) -> Result<(Complex64, f64)> {
    let mut lam = seed;
    let ref_log = spectral_det(p, lam, cfg)?.log_scale;
    let eval = |l: Complex64| -> Result<Complex64> {
        Ok(spectral_det(p, l, cfg)?.rescaled(ref_log))
    };
    let finish = |lam: Complex64, resid: f64| -> Result<(Complex64, f64)> {
        for &prev in accepted {
            if (lam - prev).norm() < cfg.deflation_radius * lam.norm().max(1.0) {
                return Err(Error::DuplicateRoot(lam));
            }
        }
        Ok((lam, resid))
    };
    let mut best: Option<(Complex64, f64)> = None;
    let mut stall = 0usize;
    // Differencing step for the Newton derivative: starts wide enough that
    // the true variation dominates evaluation noise (the determinant's
    // overall scale drifts exponentially in lambda), then tracks the Newton
    // step so it tightens as the iteration closes in.
    let h_floor = |l: Complex64| 1e-5 * l.norm().max(1e-3);
    let mut h = 2e-4 * (1.0 + seed.norm());
    for _ in 0..cfg.newton_max_iter {
        let d0 = eval(lam)?;
        match &mut best {
            Some((_, b_res)) if d0.norm() >= *b_res => stall += 1,
            b => {
                *b = Some((lam, d0.norm()));
                stall = 0;
            }
        }
        let hs = h.max(h_floor(lam));
        let dp = eval(lam + hs)?;
        let dm = eval(lam - hs)?;
        let deriv = (dp - dm) / (2.0 * hs);
        if deriv.norm() == 0.0 {
            return Err(Error::NoConvergence(cfg.newton_max_iter));
        }
        let step = -d0 / deriv;
        lam += step;
        h = 0.5 * step.norm();
        if step.norm() <= cfg.newton_tol * lam.norm().max(1e-6) {
            return finish(lam, eval(lam)?.norm());
        }
        if stall >= 5 && step.norm() <= 3e-5 * lam.norm().max(1e-6) {
            let (b_lam, b_res) = best.unwrap();
            return finish(b_lam, b_res);
        }
    }
    Err(Error::NoConvergence(cfg.newton_max_iter))
}

/// Index-gap (level-spacing) estimate at index `n`.
fn spacing(m: usize, n: usize, km: f64) -> f64 {
    let mf = m as f64;
    2.0 * mf * PI / ((mf + 2.0) * km * (2.0 * PI / mf).sin())
        * lambda0(m, n, km).powf(0.5 - 1.0 / mf)
}

/// Scan the real axis for sign changes of the (real-valued, for PT
/// instances) scaled determinant, refining each bracket by bisection.
fn scan_real_roots(
    p: &Potential,
    lam_lo: f64,
    lam_hi: f64,
    step_of: &dyn Fn(f64) -> f64,
    cfg: &ShootingConfig,
) -> Result<Vec<f64>> {
    let g = |lam: f64| -> Result<f64> {
        Ok(spectral_det(p, Complex64::new(lam, 0.0), cfg)?.mantissa.re)
    };
    let mut roots = Vec::new();
    let mut lam = lam_lo;
    let mut g_prev = g(lam)?;
    while lam < lam_hi {
        let next = (lam + step_of(lam)).min(lam_hi);
        let g_next = g(next)?;
        if g_prev.signum() != g_next.signum() && g_prev != g_next {
            let (mut a, mut b) = (lam, next);
            let mut ga = g_prev;
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let gm = g(mid)?;
                if gm.signum() == ga.signum() {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
                if b - a < 1e-12 * b.max(1.0) {
                    break;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lam = next;
        g_prev = g_next;
        if lam >= lam_hi {
            break;
        }
    }
    Ok(roots)
}

fn classify(
    lam: Complex64,
    all: &[Complex64],
    cfg: &ShootingConfig,
) -> Classification {
    let scale = lam.norm().max(1e-12);
    if lam.im.abs() <= cfg.reality_tol * scale {
        if lam.re > 0.0 {
            Classification::RealPositive
        } else {
            Classification::RealNonpositive
        }
    } else if all
        .iter()
        .any(|&o| (o - lam.conj()).norm() < 1e-6 * scale + cfg.deflation_radius)
    {
        Classification::ConjugatePairMember
    } else {
        Classification::Unresolved
    }
}

/// Locate eigenvalues `n = 0 .. n_max` (inclusive). Low indices of PT
/// instances are found by scanning the real axis (predictions there can be
/// off by more than a level spacing); higher indices Newton-refine the
/// asymptotic prediction, in parallel across indices. Failures are reported
/// per index; the call itself only fails on a broken instance.
pub fn enumerate_eigenvalues(
    p: &Potential,
    table: &ExpansionTable,
    n_max: usize,
    cfg: &ShootingConfig,
    threads: usize,
) -> Result<EnumerationOutcome> {
    let m = p.degree();
    let km = table.km;
    let preds: Vec<Complex64> = (0..=n_max).map(|n| predict_expansion(table, n)).collect();

    // Trust the predictor from the first index where the two predictors
    // agree to well under half a level spacing.
    let err_est = |n: usize| -> f64 {
        match predict_quantization(table, n) {
            Ok(q) => (preds[n] - q).norm(),
            Err(_) => f64::INFINITY,
        }
    };
    let mut n_cross = n_max + 1;
    for n in 0..=n_max {
        if err_est(n) < 0.45 * spacing(m, n, km) {
            n_cross = n;
            break;
        }
    }
    if !p.is_pt_symmetric() {
        // No real-axis structure to scan; Newton from predictions throughout.
        n_cross = 0;
    }

    let mut records: Vec<EigenvalueRecord> = Vec::new();
    let mut failures: Vec<(usize, String)> = Vec::new();
    let mut accepted: Vec<Complex64> = Vec::new();

    if n_cross > 0 {
        let lam_lo = 0.05 * lambda0(m, 0, km);
        let lam_hi = if n_cross > n_max {
            lambda0(m, n_max, km) + 0.55 * spacing(m, n_max, km)
        } else {
            0.5 * (lambda0(m, n_cross - 1, km) + lambda0(m, n_cross, km))
        };
        let step_of = |lam: f64| -> f64 {
            let mf = m as f64;
            let local = 2.0 * mf * PI / ((mf + 2.0) * km * (2.0 * PI / mf).sin())
                * lam.max(lam_lo).powf(0.5 - 1.0 / mf);
            (local / 8.0).max(0.02 * lam_lo)
        };
        let scan = scan_real_roots(p, lam_lo, lam_hi, &step_of, cfg)?;
        let expect = n_cross.min(n_max + 1);
        for (i, &root) in scan.iter().enumerate().take(expect) {
            match find_eigenvalue(p, Complex64::new(root, 0.0), &accepted, cfg) {
                Ok((lam, det)) => {
                    accepted.push(lam);
                    records.push(EigenvalueRecord {
                        n: i,
                        lambda_pred: preds[i],
                        lambda_shoot: lam,
                        residual: (lam - preds[i]).norm()
                            / lambda0(m, i, km).powf(0.5 - 1.0 / m as f64),
                        classification: Classification::Unresolved,
                        det_at_root: det,
                    });
                }
                Err(e) => failures.push((i, e.to_string())),
            }
        }
        for i in scan.len()..expect {
            failures.push((i, "real-axis scan found no bracket".into()));
        }
    }

    // Predictor-seeded indices, in parallel.
    let todo: Vec<usize> = (n_cross.min(n_max + 1)..=n_max).collect();
    if !todo.is_empty() {
        let workers = if threads == 0 {
            std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1)
        } else {
            threads
        }
        .min(todo.len());
        let next = AtomicUsize::new(0);
        let out: Mutex<Vec<(usize, Result<(Complex64, f64)>)>> = Mutex::new(Vec::new());
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= todo.len() {
                        break;
                    }
                    let n = todo[i];
                    let r = find_eigenvalue(p, preds[n], &[], cfg);
                    out.lock().unwrap().push((n, r));
                });
            }
        });
        let mut results = out.into_inner().unwrap();
        results.sort_by_key(|(n, _)| *n);
        for (n, r) in results {
            match r {
                Ok((lam, det)) => {
                    // Deflation check deferred to merge time.
                    if accepted
                        .iter()
                        .any(|&prev| (lam - prev).norm() < cfg.deflation_radius * lam.norm().max(1.0))
                    {
                        failures.push((n, Error::DuplicateRoot(lam).to_string()));
                        continue;
                    }
                    accepted.push(lam);
                    records.push(EigenvalueRecord {
                        n,
                        lambda_pred: preds[n],
                        lambda_shoot: lam,
                        residual: (lam - preds[n]).norm()
                            / lambda0(m, n, km).powf(0.5 - 1.0 / m as f64),
                        classification: Classification::Unresolved,
                        det_at_root: det,
                    });
                }
                Err(e) => failures.push((n, e.to_string())),
            }
        }
    }

    records.sort_by(|a, b| {
        a.lambda_shoot
            .norm()
            .partial_cmp(&b.lambda_shoot.norm())
            .unwrap()
    });
    let all: Vec<Complex64> = records.iter().map(|r| r.lambda_shoot).collect();
    for rec in &mut records {
        rec.classification = classify(rec.lambda_shoot, &all, cfg);
    }
    Ok(EnumerationOutcome { records, failures })
}

/// `2 w^{mu(a)}`, the exact value of `W_{0,1}`.
pub fn w01_expected(p: &Potential) -> Result<Complex64> {
    let mu = compute_mu_nu(p)?.mu;
    Ok(2.0 * crate::potential::omega_pow(p.degree(), mu, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::ExpansionTable;
    use crate::quadrature::QuadratureConfig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn w01_identity_simple() {
        let cfg = ShootingConfig::default();
        let p = Potential::monic(3).unwrap();
        let got = w01(&p, c(2.0, 0.0), &cfg).unwrap();
        let expect = w01_expected(&p).unwrap();
        assert!(
            (got - expect).norm() < 1e-6 * expect.norm(),
            "{got} vs {expect}"
        );
    }

    #[test]
    fn wronskian_constant_along_ray() {
        let cfg = ShootingConfig::default();
        let p = Potential::new(3, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let lam = c(5.0, 0.0);
        let mid = Complex64::from_polar(0.7, PI / 5.0);
        let w_at = |target: Complex64| -> Complex64 {
            let e0 = integrate_to(&p, lam, SectorIndex(0), target, &cfg).unwrap();
            let e1 = integrate_to(&p, lam, SectorIndex(1), target, &cfg).unwrap();
            (e0.value * e1.deriv - e0.deriv * e1.value)
                * (e0.log_scale + e1.log_scale).exp()
        };
        let w_zero = w_at(c(0.0, 0.0));
        let w_mid = w_at(mid);
        assert!(
            (w_zero - w_mid).norm() < 1e-7 * w_zero.norm().max(1.0),
            "{w_zero} vs {w_mid}"
        );
    }

    #[test]
    fn pt_determinant_is_real_on_real_axis() {
        let cfg = ShootingConfig::default();
        let p = Potential::new(3, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        for lam in [1.0, 5.0, 10.0] {
            let d = spectral_det(&p, c(lam, 0.0), &cfg).unwrap();
            assert!(
                d.mantissa.im.abs() < 1e-8 * d.mantissa.norm().max(1e-30),
                "lambda={lam}: {:?}",
                d.mantissa
            );
            // conj(det(conj lambda)) = det(lambda), trivial on the real axis
            // once Im = 0; checked off-axis too.
            let lam_c = c(lam, 0.7);
            let d1 = spectral_det(&p, lam_c, &cfg).unwrap();
            let d2 = spectral_det(&p, lam_c.conj(), &cfg).unwrap();
            let v1 = d1.rescaled(d1.log_scale.max(d2.log_scale));
            let v2 = d2.rescaled(d1.log_scale.max(d2.log_scale)).conj();
            assert!(
                (v1 - v2).norm() < 1e-6 * v1.norm().max(1e-30),
                "lambda={lam}: {v1} vs {v2}"
            );
        }
    }

    #[test]
    fn determinant_dips_at_predicted_eigenvalue() {
        let qcfg = QuadratureConfig::default();
        let cfg = ShootingConfig::default();
        let p = Potential::monic(3).unwrap();
        let t = ExpansionTable::build(&p, &qcfg).unwrap();
        let lam_pred = predict_expansion(&t, 8);
        let d_at = spectral_det(&p, lam_pred, &cfg).unwrap();
        let lam_off = lam_pred * 1.05;
        let d_off = spectral_det(&p, lam_off, &cfg).unwrap();
        let ref_log = d_off.log_scale;
        assert!(
            d_at.rescaled(ref_log).norm() < 0.05 * d_off.rescaled(ref_log).norm(),
            "{} vs {}",
            d_at.rescaled(ref_log).norm(),
            d_off.rescaled(ref_log).norm()
        );
    }

    #[test]
    fn conjugate_seeds_find_conjugate_roots() {
        let qcfg = QuadratureConfig::default();
        let cfg = ShootingConfig::default();
        let p = Potential::new(3, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let t = ExpansionTable::build(&p, &qcfg).unwrap();
        let seed = predict_expansion(&t, 6) * c(1.0, 0.02);
        let (r1, _) = find_eigenvalue(&p, seed, &[], &cfg).unwrap();
        let (r2, _) = find_eigenvalue(&p, seed.conj(), &[], &cfg).unwrap();
        assert!((r2 - r1.conj()).norm() < 1e-8 * r1.norm(), "{r1} {r2}");
    }

    #[test]
    fn f_phase_examples() {
        let p = Potential::monic(5).unwrap();
        let z = c(3.0, 0.0);
        let f = f_phase(z, &p, c(0.0, 0.0)).unwrap();
        approx::assert_relative_eq!(f.re, 2.0 / 7.0 * 3.0f64.powf(3.5), max_relative = 1e-13);
        assert!(f_phase(c(0.0, 0.0), &p, c(0.0, 0.0)).is_err());

        // m=3: F = (2/5)z^{5/2} + (2/3)(a_1/2) z^{3/2} + 2 b_2 z^{1/2}.
        let a1 = c(1.2, 0.0);
        let a2 = c(-0.5, 0.0);
        let p3 = Potential::new(3, vec![a1, a2]).unwrap();
        let b2 = a2 / 2.0 - a1 * a1 / 8.0;
        let expect = 0.4 * 3.0f64.powf(2.5) + (2.0 / 3.0) * (a1 / 2.0) * 3.0f64.powf(1.5)
            + 2.0 * b2 * 3.0f64.sqrt();
        let got = f_phase(z, &p3, c(0.0, 0.0)).unwrap();
        assert!((got - expect).norm() < 1e-12 * (1.0 + expect.norm()));
    }

    #[test]
    fn enumerate_cubic_all_real_positive() {
        let qcfg = QuadratureConfig::default();
        let cfg = ShootingConfig::default();
        let p = Potential::monic(3).unwrap();
        let t = ExpansionTable::build(&p, &qcfg).unwrap();
        let out = enumerate_eigenvalues(&p, &t, 9, &cfg, 0).unwrap();
        assert!(out.failures.is_empty(), "{:?}", out.failures);
        assert_eq!(out.records.len(), 10);
        let mut prev = 0.0;
        for r in &out.records {
            assert_eq!(r.classification, Classification::RealPositive);
            assert!(r.lambda_shoot.re > prev);
            prev = r.lambda_shoot.re;
        }
    }
}
