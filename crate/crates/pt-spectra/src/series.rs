//! Exact-coefficient engine: truncated formal power series arithmetic and the
//! `b_j` ladder obtained from the square-root expansion
//! `(1 + a_1/z + ... + a_{m-1}/z^{m-1} + lambda/z^m)^{1/2} = 1 + sum_j b_j z^{-j}`.
//!
//! Coefficients are floating complex, not exact rationals; the downstream
//! quadrature dominates the error budget and the algebraic invariants here are
//! tested to 1e-12.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::Potential;

/// Generalized binomial coefficient `C(alpha, k)` for real `alpha`.
pub fn binomial(alpha: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (alpha - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// A truncated formal power series `sum_{n=0}^{N} c_n x^n`; arithmetic is
/// exact to the stored order and discards everything above it.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// The monomial `c x^k`, truncated to `order`.
    pub fn monomial(order: usize, k: usize, c: Complex64) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        if n < self.coeffs.len() {
            self.coeffs[n]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..=(n - i) {
                out.coeffs[i + j] += self.coeffs[i] * other.coeffs[j];
            }
        }
        Ok(out)
    }

    /// `(1 + S)^alpha` via the binomial series; `S = self` must have zero
    /// constant term so each power of `S` starts one order later and the sum
    /// terminates at the truncation order.
    pub fn binom_power(&self, alpha: f64) -> Result<Self> {
        if self.coeffs[0].norm_sqr() != 0.0 {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut out = Self::one(n);
        let mut power = Self::one(n);
        for k in 1..=n {
            power = power.mul(self)?;
            let b = binomial(alpha, k);
            if b != 0.0 {
                for i in k..=n {
                    out.coeffs[i] += power.coeffs[i] * b;
                }
            }
        }
        Ok(out)
    }

    /// Formal derivative `d/dx`, keeping the same truncation order (top
    /// coefficient of the result is unknown and set to zero).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 1..=n {
            out.coeffs[i - 1] = self.coeffs[i] * i as f64;
        }
        out
    }

    /// Series division `self / other`; `other` must have a nonzero constant
    /// term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if other.coeffs[0].norm_sqr() == 0.0 {
            return Err(Error::SingularInput);
        }
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            let mut acc = self.coeffs[i];
            for j in 0..i {
                acc -= out.coeffs[j] * other.coeffs[i - j];
            }
            out.coeffs[i] = acc / other.coeffs[0];
        }
        Ok(out)
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiply by `x^k` (shifting coefficients up, dropping overflow).
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i];
            }
        }
        out
    }
}

/// One entry of the `b_j(a, lambda)` ladder, stored lambda-affine:
/// `b_j = const_part + lambda_part * lambda`. For `j <= m-1` the lambda part
/// is zero; at `j = m` it is exactly 1/2. Higher orders are quadratic in
/// lambda and out of scope here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BCoeff {
    pub const_part: Complex64,
    pub lambda_part: Complex64,
}

impl BCoeff {
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        self.const_part + self.lambda_part * lambda
    }
}

/// The series `a_1 x + a_2 x^2 + ... + a_{m-1} x^{m-1} (+ lambda x^m)` in
/// `x = 1/z`, truncated to `order`.
fn inner_series(p: &Potential, order: usize, lambda: Option<Complex64>) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    for (idx, &a) in p.coeffs().iter().enumerate() {
        let j = idx + 1;
        if j <= order {
            s = s.add(&TruncatedSeries::monomial(order, j, a)).unwrap();
        }
    }
    if let Some(l) = lambda {
        let m = p.degree();
        if m <= order {
            s = s
                .add(&TruncatedSeries::monomial(order, m, l))
                .unwrap();
        }
    }
    s
}

/// `b_1 .. b_J` as lambda-affine pairs, `1 <= J <= m`.
///
/// Within the truncation order `J <= m` the expansion is exactly affine in
/// lambda (lambda^2 first appears at order `z^{-2m}`), so two runs of the
/// binomial expansion — at lambda = 0 and lambda = 1 — recover both parts.
pub fn compute_b(p: &Potential, big_j: usize) -> Result<Vec<BCoeff>> {
    let m = p.degree();
    if big_j < 1 || big_j > m {
        return Err(Error::UnsupportedOrder(big_j));
    }
    let s0 = inner_series(p, big_j, None).binom_power(0.5)?;
    let s1 = inner_series(p, big_j, Some(Complex64::new(1.0, 0.0))).binom_power(0.5)?;
    Ok((1..=big_j)
        .map(|j| BCoeff {
            const_part: s0.coeff(j),
            lambda_part: s1.coeff(j) - s0.coeff(j),
        })
        .collect())
}

/// `b_j(a, lambda)` for a *numeric* lambda, up to arbitrary order `big_j`
/// (orders beyond `m` pick up the lambda^2, lambda^3, ... contributions
/// automatically). Used by quadrature tail estimates and the shooting seed.
pub fn compute_b_numeric(p: &Potential, lambda: Complex64, big_j: usize) -> Result<Vec<Complex64>> {
    let s = inner_series(p, big_j, Some(lambda)).binom_power(0.5)?;
    Ok((1..=big_j).map(|j| s.coeff(j)).collect())
}

/// The split `b_{j,1} .. b_{j,j}` of `b_j` by binomial power: `b_{j,k}` is
/// the coefficient of `z^{-j}` inside `C(1/2, k) (a_1/z + ... + a_{m-1}/z^{m-1})^k`.
pub fn compute_bjk(p: &Potential, j: usize) -> Result<Vec<Complex64>> {
    let m = p.degree();
    if j < 1 || j > m / 2 + 1 {
        return Err(Error::UnsupportedOrder(j));
    }
    let base = inner_series(p, j, None);
    let mut power = TruncatedSeries::one(j);
    let mut out = Vec::with_capacity(j);
    for k in 1..=j {
        power = power.mul(&base)?;
        out.push(power.coeff(j) * binomial(0.5, k));
    }
    Ok(out)
}

/// The constants `mu(a)`, `nu(a)` and `r_m` of the Wronskian identities and
/// the canonical solution asymptotics: for odd `m` they are `m/4`, `0`, `-m/4`; for even
/// `m` the lambda-free coefficient `b_{m/2+1}(a)` shifts all three.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuNu {
    pub mu: Complex64,
    pub nu: Complex64,
    pub r_m: Complex64,
}

pub fn compute_mu_nu(p: &Potential) -> Result<MuNu> {
    let m = p.degree();
    let quarter = Complex64::new(m as f64 / 4.0, 0.0);
    if m % 2 == 1 {
        Ok(MuNu {
            mu: quarter,
            nu: Complex64::new(0.0, 0.0),
            r_m: -quarter,
        })
    } else {
        let half_idx = m / 2 + 1;
        let b = compute_b(p, half_idx)?[half_idx - 1];
        debug_assert!(b.lambda_part.norm() == 0.0);
        let b_half = b.const_part;
        Ok(MuNu {
            mu: quarter - b_half,
            nu: b_half,
            r_m: -quarter - b_half,
        })
    }
}
