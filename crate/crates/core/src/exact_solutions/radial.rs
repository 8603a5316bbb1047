//! Radial profiles of the shell solutions.
//!
//! Three independent routes to the same numbers live here:
//! the closed forms written with the unified radial primitive `rho_i`,
//! 2x2 boundary-condition solves for the constants of
//! `f(r) = c1 r^{2-d-k} + c2 r^k`, and rescaled profiles used for evaluation.
//! The rescaled forms divide through by the dominant power of the outer
//! radius and use `expm1`/`ln_1p`, so they neither overflow for large `k` or
//! `eps` nor lose digits as `eps -> 0`.

use super::Geometry;
use crate::error::{Error, Result};

/// `rho_i(r) = -ln r` for `i = 2`, `r^{2-i}` otherwise.
pub fn rho(i: i64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("rho needs r > 0, got {r}")));
    }
    Ok(rho_unchecked(i, r))
}

pub(crate) fn rho_unchecked(i: i64, r: f64) -> f64 {
    if i == 2 {
        -r.ln()
    } else {
        r.powi((2 - i) as i32)
    }
}

/// `d rho_i / dr`.
pub fn rho_deriv(i: i64, r: f64) -> f64 {
    if i == 2 {
        -1.0 / r
    } else {
        (2 - i) as f64 * r.powi((1 - i) as i32)
    }
}

/// 1 for d = 2, d - 2 otherwise.
pub fn chi(d: usize) -> f64 {
    if d == 2 {
        1.0
    } else {
        (d - 2) as f64
    }
}

fn check_degree(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidArgument("radial coefficients need degree k >= 1".into()))
    } else {
        Ok(())
    }
}

/// Insulated constants `(c_k^(1), c_k^(2))` from their closed `rho` form.
pub fn insulated_coeffs(geom: &Geometry, k: usize) -> Result<(f64, f64)> {
    check_degree(k)?;
    let (d, k) = (geom.d as i64, k as i64);
    let (r0, outer) = (geom.r0, geom.outer());
    let inner_p = rho_unchecked(4 - d - 2 * k, r0);
    let outer_p = rho_unchecked(4 - d - 2 * k, outer);
    let outer_q = rho_unchecked(4 - d - k, outer);
    let den = k as f64 * inner_p + (k + d - 2) as f64 * outer_p;
    Ok((
        k as f64 * inner_p * outer_q / den,
        (k + d - 2) as f64 * outer_q / den,
    ))
}

/// Insulated constants by solving `f'(r0) = 0`, `f(r0 + eps) = 1`.
pub fn insulated_coeffs_by_solve(geom: &Geometry, k: usize) -> Result<(f64, f64)> {
    check_degree(k)?;
    let (d, kf) = (geom.d as i32, k as i32);
    let (r0, outer) = (geom.r0, geom.outer());
    let [c1, c2] = solve_2x2(
        [
            [(2 - d - kf) as f64 * r0.powi(1 - d - kf), kf as f64 * r0.powi(kf - 1)],
            [outer.powi(2 - d - kf), outer.powi(kf)],
        ],
        [0.0, 1.0],
    )?;
    Ok((c1, c2))
}

/// Perfect-conductivity profiles `(c~_k^(1)(r), c~_k^(2)(r))` from their
/// closed `rho` form. The first is the radial potential of the inner sphere
/// held at 1 (it does not depend on `k`).
pub fn perfect_profiles(geom: &Geometry, k: usize, r: f64) -> Result<(f64, f64)> {
    check_degree(k)?;
    geom.check_radius(r)?;
    let (d, k) = (geom.d as i64, k as i64);
    let (r0, outer) = (geom.r0, geom.outer());
    let first = (rho_unchecked(d, r) - rho_unchecked(d, outer))
        / (rho_unchecked(d, r0) - rho_unchecked(d, outer));
    let second = (rho_unchecked(2 - k, r)
        - rho_unchecked(4 - d - 2 * k, r0) * rho_unchecked(d + k, r))
        * rho_unchecked(4 - d - k, outer)
        / (rho_unchecked(4 - d - 2 * k, outer) - rho_unchecked(4 - d - 2 * k, r0));
    Ok((first, second))
}

/// Closed-form constants of `f_k = c1 r^{2-d-k} + c2 r^k` with
/// `f_k(r0) = 0`, `f_k(r0 + eps) = 1`.
pub fn perfect_coeffs(geom: &Geometry, k: usize) -> Result<(f64, f64)> {
    check_degree(k)?;
    let (d, k) = (geom.d as i32, k as i32);
    let (r0, outer) = (geom.r0, geom.outer());
    let den = outer.powi(d + 2 * k - 2) - r0.powi(d + 2 * k - 2);
    let lead = outer.powi(d + k - 2) / den;
    Ok((-r0.powi(d + 2 * k - 2) * lead, lead))
}

/// Same constants from the 2x2 Dirichlet system.
pub fn perfect_coeffs_by_solve(geom: &Geometry, k: usize) -> Result<(f64, f64)> {
    check_degree(k)?;
    let (d, kf) = (geom.d as i32, k as i32);
    let (r0, outer) = (geom.r0, geom.outer());
    let [c1, c2] = solve_2x2(
        [
            [r0.powi(2 - d - kf), r0.powi(kf)],
            [outer.powi(2 - d - kf), outer.powi(kf)],
        ],
        [0.0, 1.0],
    )?;
    Ok((c1, c2))
}

/// Constants `(a, b)` of the inner-unit potential `a rho_d(r) + b` with value
/// 1 on the inner sphere and 0 on the outer one.
pub fn inner_potential_coeffs_by_solve(geom: &Geometry) -> Result<(f64, f64)> {
    let d = geom.d as i64;
    let [a, b] = solve_2x2(
        [
            [rho_unchecked(d, geom.r0), 1.0],
            [rho_unchecked(d, geom.outer()), 1.0],
        ],
        [1.0, 0.0],
    )?;
    Ok((a, b))
}

/// Cramer's rule with a relative singularity guard.
pub fn solve_2x2(a: [[f64; 2]; 2], rhs: [f64; 2]) -> Result<[f64; 2]> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let scale = (a[0][0] * a[1][1]).abs().max((a[0][1] * a[1][0]).abs());
    if !(det.abs() > 1e-14 * scale) || !det.is_finite() {
        return Err(Error::Singular(format!("2x2 determinant {det:e} for {a:?}")));
    }
    Ok([
        (rhs[0] * a[1][1] - a[0][1] * rhs[1]) / det,
        (a[0][0] * rhs[1] - rhs[0] * a[1][0]) / det,
    ])
}

/// `1 - (r0/r)^p` without cancellation.
pub(crate) fn one_minus_ratio_pow(r0: f64, r: f64, p: f64) -> f64 {
    -(-p * ((r - r0) / r0).ln_1p()).exp_m1()
}

/// Insulated mode profile `f_k(r) = c1 r^{2-d-k} + c2 r^k` and its derivative.
pub(crate) fn insulated_mode(geom: &Geometry, k: usize, r: f64) -> (f64, f64) {
    if k == 0 {
        return (1.0, 0.0);
    }
    let (r0, outer) = (geom.r0, geom.outer());
    let q = (geom.d + k - 2) as f64;
    let kf = k as f64;
    let p = kf + q;
    let a = (r0 / outer).powi(k as i32);
    let b = (r0 / r).powf(q);
    let c = (r / outer).powi(k as i32);
    let den = kf * (r0 / outer).powf(p) + q;
    let value = (kf * a * b + q * c) / den;
    let deriv = kf * q * c * one_minus_ratio_pow(r0, r, p) / (r * den);
    (value, deriv)
}

/// Perfect mode profile `c~_k^(2)(r)` (zero on the inner sphere, one on the
/// outer) and its derivative.
pub(crate) fn perfect_mode(geom: &Geometry, k: usize, r: f64) -> (f64, f64) {
    if k == 0 {
        return (1.0, 0.0);
    }
    let (r0, outer) = (geom.r0, geom.outer());
    let q = (geom.d + k - 2) as f64;
    let kf = k as f64;
    let p = kf + q;
    let a = (r0 / outer).powi(k as i32);
    let b = (r0 / r).powf(q);
    let c = (r / outer).powi(k as i32);
    let den = one_minus_ratio_pow(r0, outer, p);
    let value = c * one_minus_ratio_pow(r0, r, p) / den;
    let deriv = (kf * c + q * a * b) / (r * den);
    (value, deriv)
}

/// Inner-unit potential `c~_k^(1)(r)` and its derivative.
pub(crate) fn inner_unit_potential(geom: &Geometry, r: f64) -> (f64, f64) {
    let outer = geom.outer();
    let log_out_r = ((outer - r) / r).ln_1p();
    let log_out_in = (geom.eps / geom.r0).ln_1p();
    if geom.d == 2 {
        (log_out_r / log_out_in, -1.0 / (r * log_out_in))
    } else {
        let s = (geom.d - 2) as f64;
        let den = (s * log_out_in).exp_m1();
        let value = (s * log_out_r).exp_m1() / den;
        let deriv = -s * (s * log_out_r).exp() / (r * den);
        (value, deriv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(d: usize, r0: f64, eps: f64) -> Geometry {
        Geometry::new(d, r0, eps).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn rho_values() {
        assert!((rho(2, std::f64::consts::E).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(rho(0, 3.0).unwrap(), 9.0);
        assert_eq!(rho(3, 2.0).unwrap(), 0.5);
        assert!(rho(1, 0.0).is_err());
        assert!(rho(1, -1.0).is_err());
    }

    #[test]
    fn rho_derivative_matches_finite_difference() {
        for i in [-5, 0, 1, 2, 3, 7] {
            let (r, h) = (1.3, 1e-6);
            let fd = (rho(i, r + h).unwrap() - rho(i, r - h).unwrap()) / (2.0 * h);
            assert!((fd - rho_deriv(i, r)).abs() < 1e-8, "i={i}");
        }
    }

    #[test]
    fn insulated_reference_pair() {
        let (c1, c2) = insulated_coeffs(&geom(3, 1.0, 0.1), 1).unwrap();
        // 1.21 / 3.662 and 2.42 / 3.662
        assert!((c1 - 1.21 / 3.662).abs() < 1e-15);
        assert!((c2 - 2.42 / 3.662).abs() < 1e-15);
        assert!((c1 - 0.330420).abs() < 1e-6 && (c2 - 0.660841).abs() < 1e-6);
        let (s1, s2) = insulated_coeffs_by_solve(&geom(3, 1.0, 0.1), 1).unwrap();
        assert!(rel(c1, s1) < 1e-14 && rel(c2, s2) < 1e-14);
    }

    #[test]
    fn perfect_reference_values() {
        let g = geom(3, 1.0, 0.1);
        let (_, second) = perfect_profiles(&g, 1, 1.05).unwrap();
        let expected = 1.21 / 0.331 * (1.05 - 1.0 / (1.05 * 1.05));
        assert!((second - expected).abs() < 1e-14);
        // the six-digit reference 0.522650 is itself rounded from this value
        assert!((second - 0.522650).abs() < 2e-5);
        assert!((perfect_mode(&g, 1, 1.05).0 - expected).abs() < 1e-14);
        let slope = perfect_mode(&g, 1, 1.0).1;
        assert!((slope - 1.21 / 0.331 * 3.0).abs() < 1e-12);
        assert!((slope - 10.9668).abs() < 1e-4);
    }

    #[test]
    fn perfect_profiles_boundary_values() {
        let g = geom(4, 0.7, 0.3);
        for k in 1..6 {
            let (a, b) = perfect_profiles(&g, k, g.r0).unwrap();
            assert!((a - 1.0).abs() < 1e-15 && b.abs() < 1e-14);
            let (a, b) = perfect_profiles(&g, k, g.outer()).unwrap();
            assert!(a.abs() < 1e-15 && (b - 1.0).abs() < 1e-13);
        }
        assert!(perfect_profiles(&g, 1, 1.2).is_err());
        assert!(perfect_profiles(&g, 0, 0.8).is_err());
    }

    #[test]
    fn logarithmic_midpoint_in_the_plane() {
        let g = geom(2, 1.0, 0.44);
        let mid = (g.r0 * g.outer()).sqrt();
        let (first, _) = perfect_profiles(&g, 3, mid).unwrap();
        assert!((first - 0.5).abs() < 1e-14);
        assert!((inner_unit_potential(&g, mid).0 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rescaled_profiles_match_closed_forms() {
        for d in 2..=5 {
            for &eps in &[1e-3, 0.1, 1.0, 10.0] {
                let g = geom(d, 1.0, eps);
                for k in 1..=20 {
                    let (c1, c2) = insulated_coeffs(&g, k).unwrap();
                    let (p1, p2) = perfect_coeffs(&g, k).unwrap();
                    let (a, b) = inner_potential_coeffs_by_solve(&g).unwrap();
                    let pw = |r: f64, e: i32| r.powi(e);
                    let (di, ki) = (d as i32, k as i32);
                    for t in [0.0, 0.3, 0.77, 1.0] {
                        let r = g.r0 + t * eps;
                        let (v, dv) = insulated_mode(&g, k, r);
                        let f = c1 * pw(r, 2 - di - ki) + c2 * pw(r, ki);
                        let df = c1 * (2 - di - ki) as f64 * pw(r, 1 - di - ki)
                            + c2 * ki as f64 * pw(r, ki - 1);
                        assert!(rel(v, f) < 1e-12, "d={d} eps={eps} k={k}");
                        assert!((dv - df).abs() <= 1e-11 * (df.abs() + c2 * ki as f64 * pw(r, ki - 1)));
                        let (v, dv) = perfect_mode(&g, k, r);
                        let f = p1 * pw(r, 2 - di - ki) + p2 * pw(r, ki);
                        let df = p1 * (2 - di - ki) as f64 * pw(r, 1 - di - ki)
                            + p2 * ki as f64 * pw(r, ki - 1);
                        let scale = p2 * pw(r, ki);
                        assert!((v - f).abs() < 1e-10 * scale.max(1.0), "d={d} eps={eps} k={k} t={t}");
                        assert!(rel(dv, df) < 1e-9, "d={d} eps={eps} k={k}");
                        let (g_val, g_der) = inner_unit_potential(&g, r);
                        let rho_d = rho_unchecked(d as i64, r);
                        assert!((g_val - (a * rho_d + b)).abs() < 1e-9 * (a * rho_d).abs().max(1.0));
                        assert!(rel(g_der, a * rho_deriv(d as i64, r)) < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn large_degree_profiles_stay_finite() {
        let g = geom(8, 1.0, 50.0);
        for k in [32, 64, 200] {
            let (v, dv) = insulated_mode(&g, k, 30.0);
            assert!(v.is_finite() && dv.is_finite() && v > 0.0 && v < 1.0);
            let (v, dv) = perfect_mode(&g, k, 30.0);
            assert!(v.is_finite() && dv.is_finite() && (0.0..1.0).contains(&v));
        }
    }

    #[test]
    fn singular_system_is_reported() {
        assert!(solve_2x2([[1.0, 2.0], [2.0, 4.0]], [1.0, 0.0]).is_err());
    }
}
