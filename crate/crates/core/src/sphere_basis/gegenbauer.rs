//! Gegenbauer polynomials by upward three-term recurrence.

use std::f64::consts::PI;

/// `Gamma(n / 2)` for a positive integer `n`, by the recurrence from
/// `Gamma(1/2) = sqrt(pi)` or `Gamma(1) = 1`.
pub fn gamma_half(n: u32) -> f64 {
    assert!(n > 0, "Gamma(0) is undefined");
    let (mut value, mut arg) = if n.is_multiple_of(2) { (1.0, 2) } else { (PI.sqrt(), 1) };
    while arg < n {
        value *= arg as f64 / 2.0;
        arg += 2;
    }
    value
}

/// `C^lambda_n(x)`.
pub fn gegenbauer(n: usize, lambda: f64, x: f64) -> f64 {
    homogeneous(n, lambda, x, 1.0).value
}

/// `int_{-1}^{1} (1-t^2)^{lambda-1/2} C^lambda_n(t)^2 dt`
/// `= sqrt(pi) Gamma(lambda+1/2)/Gamma(lambda) * (2 lambda)_n / n! / (n + lambda)`,
/// for `lambda` a positive multiple of 1/2.
pub fn gegenbauer_norm_sq(n: usize, lambda: f64) -> f64 {
    let twice = (2.0 * lambda).round() as u32;
    debug_assert!((twice as f64 - 2.0 * lambda).abs() < 1e-12 && twice > 0);
    let gamma_ratio = gamma_half(twice + 1) / gamma_half(twice);
    let rising = (0..n).fold(1.0, |acc, i| acc * (2.0 * lambda + i as f64) / (i as f64 + 1.0));
    PI.sqrt() * gamma_ratio * rising / (n as f64 + lambda)
}

/// `H_n(x, s) = s^{n/2} C^lambda_n(x / sqrt(s))` together with its partial
/// derivatives in `x` and `s`. `H_n` is a polynomial in `(x, s)`, so this is
/// well defined at `s = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Homogeneous {
    pub value: f64,
    pub d_x: f64,
    pub d_s: f64,
}

pub(crate) fn homogeneous(n: usize, lambda: f64, x: f64, s: f64) -> Homogeneous {
    let mut prev = Homogeneous {
        value: 1.0,
        d_x: 0.0,
        d_s: 0.0,
    };
    if n == 0 {
        return prev;
    }
    let mut cur = Homogeneous {
        value: 2.0 * lambda * x,
        d_x: 2.0 * lambda,
        d_s: 0.0,
    };
    for j in 1..n {
        let jf = j as f64;
        let a = 2.0 * (jf + lambda);
        let b = jf + 2.0 * lambda - 1.0;
        let inv = 1.0 / (jf + 1.0);
        let next = Homogeneous {
            value: (a * x * cur.value - b * s * prev.value) * inv,
            d_x: (a * (cur.value + x * cur.d_x) - b * s * prev.d_x) * inv,
            d_s: (a * x * cur.d_s - b * (prev.value + s * prev.d_s)) * inv,
        };
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(3) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(gamma_half(10), 24.0);
    }

    #[test]
    fn legendre_special_case() {
        // C^{1/2}_n = P_n
        let x: f64 = 0.3;
        assert!((gegenbauer(2, 0.5, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
        assert!((gegenbauer(3, 0.5, x) - 0.5 * (5.0 * x.powi(3) - 3.0 * x)).abs() < 1e-15);
        assert!((gegenbauer_norm_sq(4, 0.5) - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_second_kind_special_case() {
        // C^1_n(cos t) = sin((n+1)t)/sin t, norm pi/2
        let t: f64 = 0.7;
        for n in 0..10 {
            let expected = ((n as f64 + 1.0) * t).sin() / t.sin();
            assert!((gegenbauer(n, 1.0, t.cos()) - expected).abs() < 1e-12);
            assert!((gegenbauer_norm_sq(n, 1.0) - PI / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn norm_matches_midpoint_quadrature() {
        // Oracle: brute-force integral in theta with a fine midpoint rule.
        for &(n, lambda) in &[(0usize, 1.5f64), (3, 1.5), (5, 2.0), (4, 3.5), (7, 0.5)] {
            let steps = 200_000;
            let h = PI / steps as f64;
            let integral: f64 = (0..steps)
                .map(|i| {
                    let t = (i as f64 + 0.5) * h;
                    let c = gegenbauer(n, lambda, t.cos());
                    c * c * t.sin().powf(2.0 * lambda) * h
                })
                .sum();
            let rel = (integral - gegenbauer_norm_sq(n, lambda)).abs() / integral;
            assert!(rel < 1e-8, "n={n} lambda={lambda} rel={rel}");
        }
    }

    #[test]
    fn homogeneous_derivatives_match_finite_differences() {
        let (x, s, h) = (0.4, 0.9, 1e-6);
        for n in 0..8 {
            let base = homogeneous(n, 1.5, x, s);
            let fx = (homogeneous(n, 1.5, x + h, s).value - homogeneous(n, 1.5, x - h, s).value)
                / (2.0 * h);
            let fs = (homogeneous(n, 1.5, x, s + h).value - homogeneous(n, 1.5, x, s - h).value)
                / (2.0 * h);
            assert!((base.d_x - fx).abs() < 1e-7, "n={n}");
            assert!((base.d_s - fs).abs() < 1e-7, "n={n}");
            let scaled = s.powf(n as f64 / 2.0) * gegenbauer(n, 1.5, x / s.sqrt());
            assert!((base.value - scaled).abs() < 1e-12);
        }
    }
}
