//! Independent low-order oracle for the cubic case, deliberately sharing
//! nothing with the library: the unrotated eigenproblem
//! `-u'' + i x^3 u = lambda u` on the real line (where its eigenfunctions
//! decay), discretized by Numerov finite differences on [-L, L] with
//! Dirichlet ends, double-shooting matched at x = 0.

use num_complex::Complex64;

const L: f64 = 9.0;
const N: usize = 6000; // h = 0.003

fn v(x: f64) -> Complex64 {
    Complex64::new(0.0, x * x * x)
}

/// Numerov sweep from one end to the matching index, returning the
/// log-derivative proxy `u[mid+1]/u[mid]` (left sweep) or `u[mid-1]/u[mid]`
/// (right sweep). Renormalized every step, so only ratios survive.
fn sweep(lambda: Complex64, from_left: bool) -> Complex64 {
    let h = 2.0 * L / N as f64;
    let mid = N / 2;
    let x_of = |j: usize| -L + h * j as f64;
    let f = |j: usize| v(x_of(j)) - lambda; // u'' = f u
    let w = |j: usize| Complex64::new(1.0, 0.0) - f(j) * (h * h / 12.0);

    let (mut j, step): (usize, isize) = if from_left { (0, 1) } else { (N, -1) };
    let mut u_prev = Complex64::new(0.0, 0.0);
    let mut u_cur = Complex64::new(1e-150, 0.0);
    // One step in: Dirichlet end plus a tiny kick.
    let target = if from_left { mid + 1 } else { mid - 1 };
    let mut u_mid = Complex64::new(0.0, 0.0);
    loop {
        if j == mid {
            u_mid = u_cur;
        }
        if j == target {
            return u_cur / u_mid;
        }
        let jn = (j as isize + step) as usize;
        let back = if u_prev.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            u_prev * w((j as isize - step) as usize)
        };
        let num = u_cur * (Complex64::new(2.0, 0.0) + f(j) * (5.0 * h * h / 6.0)) - back;
        let mut u_next = num / w(jn);
        // keep magnitudes bounded; only ratios matter (skipped right at the
        // matching point so the stored u_mid stays consistent)
        let mag = u_next.norm();
        if mag > 1e100 && j != mid {
            u_next /= mag;
            u_cur /= mag;
        }
        u_prev = u_cur;
        u_cur = u_next;
        j = jn;
    }
}

/// Matching function whose zeros are the eigenvalues.
fn mismatch(lambda: Complex64) -> Complex64 {
    // left ratio approximates u_l(mid+1)/u_l(mid), right ratio
    // u_r(mid-1)/u_r(mid); at an eigenvalue the three-point recurrence
    // closes: w(mid+1) r_l + w(mid-1) r_r = 2 + (5 h^2/6) f(mid).
    let h = 2.0 * L / N as f64;
    let f_mid = v(0.0) - lambda;
    let wp = Complex64::new(1.0, 0.0) - (v(h) - lambda) * (h * h / 12.0);
    let wm = Complex64::new(1.0, 0.0) - (v(-h) - lambda) * (h * h / 12.0);
    wp * sweep(lambda, true) + wm * sweep(lambda, false)
        - (Complex64::new(2.0, 0.0) + f_mid * (5.0 * h * h / 6.0))
}

/// First `count` eigenvalues of `-u'' + i x^3 u = lambda u`, found by a
/// real-axis coarse scan for |mismatch| dips refined by complex secant
/// iteration.
pub fn cubic_oracle_eigenvalues(count: usize) -> Vec<Complex64> {
    let mut found: Vec<Complex64> = Vec::new();
    let mut lam = 0.4f64;
    let step = 0.12;
    let mut prev = mismatch(Complex64::new(lam, 0.0)).norm();
    let mut prev2 = f64::INFINITY;
    while found.len() < count && lam < 60.0 {
        lam += step;
        let cur = mismatch(Complex64::new(lam, 0.0)).norm();
        if prev < prev2 && prev < cur {
            // local minimum at lam - step: polish by secant
            let mut z0 = Complex64::new(lam - step - 0.02, 0.0);
            let mut z1 = Complex64::new(lam - step, 0.0);
            let mut f0 = mismatch(z0);
            let mut f1 = mismatch(z1);
            for _ in 0..60 {
                let dz = (z1 - z0) * f1 / (f1 - f0);
                z0 = z1;
                f0 = f1;
                z1 -= dz;
                f1 = mismatch(z1);
                if dz.norm() < 1e-11 * z1.norm().max(1.0) {
                    break;
                }
            }
            if found.iter().all(|&r| (r - z1).norm() > 1e-4) {
                found.push(z1);
            }
        }
        prev2 = prev;
        prev = cur;
    }
    found.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    found
}
