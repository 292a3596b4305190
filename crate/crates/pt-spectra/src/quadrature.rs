//! Improper-integral engine: the constant `K_m` (closed form and direct
//! quadrature), the expansion constants `K_{m,j}(a)`, and direct numerical
//! evaluation of the phase integral `L(a, lambda)`.
//!
//! All improper integrals here decay only algebraically, so each is split
//! into an adaptive Simpson pass on `[0, T]` plus an analytic tail on
//! `[T, inf)` obtained from the binomial expansion of the integrand.

use num_complex::Complex64;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::series::{binomial, compute_b, compute_b_numeric, compute_bjk};

/// Tolerances and truncation controls for the quadrature routines.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Minimum switch point to the analytic tail; the routines push it
    /// further out as `|lambda|` or the coefficients grow.
    pub tail_cut: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            tail_cut: 10.0,
            max_subdivisions: 1 << 20,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.tail_cut >= 1.0) {
            return Err(Error::Parse(
                "quadrature tolerances must be positive and tail cut >= 1".into(),
            ));
        }
        Ok(())
    }
}

struct SimpsonState<'a> {
    f: &'a dyn Fn(f64) -> Complex64,
    budget: usize,
    worst: f64,
}

fn simpson_recurse(
    st: &mut SimpsonState,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (st.f)(lm);
    let frm = (st.f)(rm);
    let h = b - a;
    let left = (fa + 4.0 * flm + fm) * (h / 12.0);
    let right = (fm + 4.0 * frm + fb) * (h / 12.0);
    let err = (left + right - whole).norm() / 15.0;
    if err <= tol || h <= 1e-14 * (a.abs() + b.abs() + 1.0) {
        if err > tol {
            st.worst = st.worst.max(err);
        }
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    if st.budget == 0 {
        return Err(Error::QuadratureFailure {
            achieved: err,
            requested: tol,
        });
    }
    st.budget -= 1;
    let l = simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol)?;
    let r = simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol)?;
    Ok(l + r)
}

/// Adaptive Simpson integration of a complex-valued function on `[a, b]`.
pub fn integrate(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
    let tol = cfg.abs_tol.max(cfg.rel_tol * whole.norm());
    let mut st = SimpsonState {
        f,
        budget: cfg.max_subdivisions,
        worst: 0.0,
    };
    simpson_recurse(&mut st, a, b, fa, fm, fb, whole, tol)
}

/// `K_m = sqrt(pi) Gamma(1 + 1/m) / (2 cos(pi/m) Gamma(3/2 + 1/m))`.
pub fn k_m_closed(m: usize) -> Result<f64> {
    if m < 3 {
        return Err(Error::InvalidDegree(m));
    }
    let im = 1.0 / m as f64;
    Ok(PI.sqrt() * gamma(1.0 + im) / (2.0 * (PI * im).cos() * gamma(1.5 + im)))
}

/// `K_m = int_0^inf (sqrt(1 + t^m) - t^{m/2}) dt` by direct quadrature with
/// an analytic binomial tail past `T`.
pub fn k_m_quad(m: usize, cfg: &QuadratureConfig) -> Result<f64> {
    if m < 3 {
        return Err(Error::InvalidDegree(m));
    }
    let mf = m as f64;
    let t_cut = cfg.tail_cut.max(10.0);
    let f = |t: f64| Complex64::new((1.0 + t.powf(mf)).sqrt() - t.powf(0.5 * mf), 0.0);
    let head = integrate(&f, 0.0, t_cut, cfg)?.re;
    // For t > T: sqrt(1+t^m) - t^{m/2} = t^{m/2} sum_{k>=1} C(1/2,k) t^{-mk};
    // each term integrates to T^{m/2-mk+1}/(mk - m/2 - 1).
    let mut tail = 0.0;
    for k in 1..200usize {
        let expo = 0.5 * mf - mf * k as f64 + 1.0;
        let term = binomial(0.5, k) * t_cut.powf(expo) / (mf * k as f64 - 0.5 * mf - 1.0);
        tail += term;
        if term.abs() < 1e-18 * (1.0 + tail.abs()) {
            break;
        }
    }
    Ok(head + tail)
}

/// `g_j(tau) = sum_{k=1}^{j} b_{j,k} tau^{mk-j} / (tau^m + 1)^{k - 1/2}`,
/// with `bjk` the list `b_{j,1} .. b_{j,j}` (so `j = bjk.len()`).
pub fn g_j(tau: f64, m: usize, bjk: &[Complex64]) -> Complex64 {
    let j = bjk.len();
    let mf = m as f64;
    let base = tau.powf(mf) + 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for (ki, &b) in bjk.iter().enumerate() {
        let k = ki + 1;
        let expo = mf * k as f64 - j as f64;
        let p = if tau == 0.0 {
            if expo == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            tau.powf(expo)
        };
        acc += b * p / base.powf(k as f64 - 0.5);
    }
    acc
}

/// Tail coefficients `A_p = sum_k b_{j,k} C(1/2 - k, p)` of the large-`t`
/// expansion `g_j(t) = t^{m/2-j} sum_{p>=0} A_p t^{-mp}` (with `A_0 = b_j`).
fn tail_coeff(bjk: &[Complex64], p: usize) -> Complex64 {
    bjk.iter()
        .enumerate()
        .map(|(ki, &b)| b * binomial(0.5 - (ki as f64 + 1.0), p))
        .sum()
}

/// `K_{m,j}(a)` for `1 <= j <= floor(m/2) + 1`.
///
/// Generic slots integrate `g_j(t) - b_j t^{m/2-j}`; for even `m` the top
/// slot `j = m/2 + 1` uses the `b_j/(t+1)` subtraction instead. The odd-`m`
/// top slot has an integrable `t^{-1/2}` singularity at the origin, tamed by
/// the substitution `t = s^2` on `[0, 1]`.
pub fn k_mj(p: &Potential, j: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    let m = p.degree();
    if j < 1 || j > m / 2 + 1 {
        return Err(Error::UnsupportedOrder(j));
    }
    let mf = m as f64;
    let jf = j as f64;
    let bjk = compute_bjk(p, j)?;
    let b_j: Complex64 = bjk.iter().sum();
    let coeff_scale = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm().powf(1.0 / (i as f64 + 1.0)))
        .fold(0.0f64, f64::max);
    let t_cut = cfg.tail_cut.max(4.0 * coeff_scale).max(10.0);
    let even_top = m % 2 == 0 && j == m / 2 + 1;

    let head = if even_top {
        let f = |t: f64| g_j(t, m, &bjk) - b_j / (t + 1.0);
        integrate(&f, 0.0, t_cut, cfg)?
    } else if 2 * j > m {
        // odd m, j = (m+1)/2: m/2 - j = -1/2.
        let f0 = |s: f64| 2.0 * s * g_j(s * s, m, &bjk) - 2.0 * b_j * s.powf(mf - 2.0 * jf + 1.0);
        let f1 = |t: f64| g_j(t, m, &bjk) - b_j * t.powf(0.5 * mf - jf);
        integrate(&f0, 0.0, 1.0, cfg)? + integrate(&f1, 1.0, t_cut, cfg)?
    } else {
        let f = |t: f64| g_j(t, m, &bjk) - b_j * t.powf(0.5 * mf - jf);
        integrate(&f, 0.0, t_cut, cfg)?
    };

    // Tail: the p = 0 term of the binomial expansion cancels the subtraction.
    let mut tail = Complex64::new(0.0, 0.0);
    if even_top {
        tail += b_j * (1.0 + 1.0 / t_cut).ln();
        for q in 1..200usize {
            let term = tail_coeff(&bjk, q) * t_cut.powf(-mf * q as f64) / (mf * q as f64);
            tail += term;
            if term.norm() < 1e-18 * (1.0 + tail.norm()) {
                break;
            }
        }
    } else {
        for q in 1..200usize {
            let expo = 0.5 * mf - jf - mf * q as f64 + 1.0;
            let denom = mf * q as f64 + jf - 0.5 * mf - 1.0;
            let term = tail_coeff(&bjk, q) * t_cut.powf(expo) / denom;
            tail += term;
            if term.norm() < 1e-18 * (1.0 + tail.norm()) {
                break;
            }
        }
    }
    Ok(head + tail)
}

/// Check that `q(t) = t^m + P(t) + lambda` stays off the branch cut of the
/// principal square root along `t in [0, t_max]`. Crossing the negative real
/// axis would make the principal branch discontinuous along the path.
fn check_branch(p: &Potential, lambda: Complex64, t_max: f64) -> Result<()> {
    const N: usize = 4096;
    let mut prev = p.eval_q(Complex64::new(0.0, 0.0), lambda);
    if prev.norm() == 0.0 {
        return Err(Error::BranchCutCrossing);
    }
    for i in 1..=N {
        let t = t_max * i as f64 / N as f64;
        let q = p.eval_q(Complex64::new(t, 0.0), lambda);
        if q.norm() == 0.0 || (q.im == 0.0 && q.re < 0.0) {
            return Err(Error::BranchCutCrossing);
        }
        if prev.im.signum() != q.im.signum() && prev.im != q.im {
            let frac = prev.im / (prev.im - q.im);
            let re_cross = prev.re + (q.re - prev.re) * frac;
            if re_cross <= 0.0 {
                return Err(Error::BranchCutCrossing);
            }
        }
        prev = q;
    }
    Ok(())
}

/// Direct numerical evaluation of the phase integral
///
/// `L(a, lambda) = int_0^inf (sqrt(t^m + P(t) + lambda) - t^{m/2}
///                 - sum_{j=1}^{J} b_j t^{m/2-j} [- b_{m/2+1}/(t+1)]) dt`
///
/// with `J = (m+1)/2` for odd `m` and `J = m/2` plus the `(t+1)`-subtracted
/// term for even `m`. `lambda` must keep the argument of the square root off
/// its branch cut along the path (checked by sign monitoring); accuracy
/// degrades as `arg lambda` approaches `+-pi`.
pub fn l_numeric(p: &Potential, lambda: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let m = p.degree();
    let mf = m as f64;
    let j_sub = if m % 2 == 1 { (m + 1) / 2 } else { m / 2 };
    let b = compute_b(p, m / 2 + 1)?;
    let b_vals: Vec<Complex64> = b.iter().map(|x| x.eval(lambda)).collect();
    let b_top = b_vals[m / 2]; // b_{m/2+1}, used only when m is even
    let coeff_scale = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm().powf(1.0 / (i as f64 + 1.0)))
        .fold(0.0f64, f64::max);
    let t_cut = cfg
        .tail_cut
        .max(4.0 * lambda.norm().powf(1.0 / mf))
        .max(4.0 * mf * coeff_scale)
        .max(10.0);
    check_branch(p, lambda, t_cut)?;

    let even = m % 2 == 0;
    let integrand = |t: f64| {
        let q = p.eval_q(Complex64::new(t, 0.0), lambda);
        let mut v = q.sqrt() - t.powf(0.5 * mf);
        for (idx, &bv) in b_vals.iter().take(j_sub).enumerate() {
            v -= bv * t.powf(0.5 * mf - (idx as f64 + 1.0));
        }
        if even {
            v -= b_top / (t + 1.0);
        }
        v
    };
    // Odd m: the j = (m+1)/2 subtraction behaves like t^{-1/2} at the origin;
    // substitute t = s^2 there. The singular term becomes the constant
    // -2 b_{(m+1)/2}, split off so s = 0 evaluates cleanly.
    let head = if !even {
        let b_last = b_vals[j_sub - 1];
        let sub = |s: f64| {
            let t = s * s;
            let q = p.eval_q(Complex64::new(t, 0.0), lambda);
            let mut v = q.sqrt() - t.powf(0.5 * mf);
            for (idx, &bv) in b_vals.iter().take(j_sub - 1).enumerate() {
                v -= bv * t.powf(0.5 * mf - (idx as f64 + 1.0));
            }
            2.0 * s * v - 2.0 * b_last
        };
        integrate(&sub, 0.0, 1.0, cfg)? + integrate(&integrand, 1.0, t_cut, cfg)?
    } else {
        integrate(&integrand, 0.0, t_cut, cfg)?
    };

    // Tail: sqrt(t^m + P + lambda) = t^{m/2}(1 + sum_j beta_j t^{-j}) with
    // the numeric-lambda coefficients beta_j; the subtracted terms cancel
    // beta_1 .. beta_J exactly and the rest integrates term by term.
    let j_max = m / 2 + 80;
    let beta = compute_b_numeric(p, lambda, j_max)?;
    let mut tail = Complex64::new(0.0, 0.0);
    if even {
        // beta_{m/2+1} = b_{m/2+1} is lambda-free; against b/(t+1) it leaves
        // the exact remainder b ln(1 + 1/T).
        tail += b_top * (1.0 + 1.0 / t_cut).ln();
    }
    let start = if even { m / 2 + 2 } else { (m + 1) / 2 + 1 };
    for j in start..=j_max {
        let expo = 0.5 * mf - j as f64 + 1.0;
        let denom = j as f64 - 0.5 * mf - 1.0;
        tail += beta[j - 1] * t_cut.powf(expo) / denom;
    }
    Ok(head + tail)
}
