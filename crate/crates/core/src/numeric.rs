//! Quadrature and extrapolation helpers shared by the analytic modules.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// `∫_a^b f` by an `n`-point Gauss–Legendre rule.
pub fn gauss_legendre_integrate<F>(f: F, a: f64, b: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter()
        .zip(&w)
        .map(|(xi, wi)| f(mid + half * xi) * *wi)
        .sum::<Complex64>()
        * half
}

/// Trapezoid rule on `[lo, hi]` with step halving until two successive
/// estimates differ by at most `tol·max(1, |I|)`; returns the estimate and
/// whether the tolerance was met.
pub fn trapezoid_halving<F>(f: F, lo: f64, hi: f64, h0: f64, tol: f64, max_halvings: usize) -> (Complex64, bool)
where
    F: Fn(f64) -> Complex64,
{
    let n0 = ((hi - lo) / h0).ceil().max(1.0) as usize;
    let mut n = n0;
    let mut h = (hi - lo) / n as f64;
    let mut sum = (f(lo) + f(hi)) * 0.5;
    for k in 1..n {
        sum += f(lo + k as f64 * h);
    }
    let mut est = sum * h;
    for _ in 0..max_halvings {
        let mut add = Complex64::new(0.0, 0.0);
        for k in 0..n {
            add += f(lo + (k as f64 + 0.5) * h);
        }
        sum += add;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        let diff = (next - est).norm();
        est = next;
        if diff <= tol * est.norm().max(1.0) {
            return (est, true);
        }
    }
    (est, false)
}

/// Polynomial extrapolation to `h = 0` of samples `(h_i, v_i)` (Neville).
pub fn neville_at_zero(hs: &[f64], vs: &[Complex64]) -> Complex64 {
    let mut p = vs.to_vec();
    let n = hs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (p[i + 1] * hs[i] - p[i] * hs[i + k]) / (hs[i] - hs[i + k]);
        }
    }
    p[0]
}

/// `(1/2πi)∮ f(z)/(z − c)^{m+1} dz · m!` on a circle of radius `r` with `n`
/// equispaced nodes: the `m`-th derivative of `f` at `c`.
pub fn cauchy_derivative<F>(f: F, c: Complex64, r: f64, m: u32, n: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        let e = Complex64::from_polar(1.0, theta);
        acc += f(c + e * r) * e.powu(m).inv();
    }
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    acc * fact / (n as f64 * r.powi(m as i32))
}

/// Laurent coefficient `a_k` of `f` around `c`, `f(z) = Σ a_k (z − c)^k`,
/// from a circle of radius `r` avoiding other singularities.
pub fn cauchy_laurent<F>(f: F, c: Complex64, r: f64, k: i32, n: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let e = Complex64::from_polar(1.0, theta);
        acc += f(c + e * r) * e.powi(-k);
    }
    acc / (n as f64 * r.powi(k))
}

/// Residue and constant term of `f` at a simple pole `c`, from symmetric
/// samples `f(c ± h)` extrapolated in `h²`.
pub fn simple_pole_laurent<F>(f: F, c: Complex64, hs: &[f64]) -> (Complex64, Complex64)
where
    F: Fn(Complex64) -> Complex64,
{
    let mut res = Vec::with_capacity(hs.len());
    let mut ct = Vec::with_capacity(hs.len());
    for &h in hs {
        let fp = f(c + h);
        let fm = f(c - h);
        res.push((fp - fm) * (h * 0.5));
        ct.push((fp + fm) * 0.5);
    }
    let h2: Vec<f64> = hs.iter().map(|h| h * h).collect();
    (neville_at_zero(&h2, &res), neville_at_zero(&h2, &ct))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [4usize, 16, 33, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            let deg = 2 * n - 2;
            let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((integral - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn trapezoid_gaussian() {
        let (v, ok) = trapezoid_halving(|t| Complex64::new((-t * t).exp(), 0.0), -8.0, 8.0, 1.0, 1e-14, 20);
        assert!(ok);
        assert!((v.re - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn cauchy_rules() {
        let f = |z: Complex64| z.exp();
        let d = cauchy_derivative(f, Complex64::new(0.3, 0.0), 0.5, 1, 64);
        assert!((d - Complex64::new(0.3f64.exp(), 0.0)).norm() < 1e-14);
        let g = |z: Complex64| z.exp() / z;
        let a0 = cauchy_laurent(g, Complex64::new(0.0, 0.0), 0.5, 0, 64);
        let am1 = cauchy_laurent(g, Complex64::new(0.0, 0.0), 0.5, -1, 64);
        assert!((a0.re - 1.0).abs() < 1e-14 && (am1.re - 1.0).abs() < 1e-14);
        let (res, ct) = simple_pole_laurent(g, Complex64::new(0.0, 0.0), &[0.1, 0.05, 0.025, 0.0125]);
        assert!((res.re - 1.0).abs() < 1e-10 && (ct.re - 1.0).abs() < 1e-10);
    }
}
