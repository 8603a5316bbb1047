//! Property tests for the invariants of the basis, the radial formulas and
//! the series solutions.

use harmshell::boundary_data::{expand_auto, BoundaryFunction, Monomial};
use harmshell::cli::format::g17;
use harmshell::exact_solutions::{
    insulated_coeffs, insulated_coeffs_by_solve, perfect_coeffs, perfect_coeffs_by_solve, Geometry,
    InsulatedSolution, PerfectSolution, ShellPotential,
};
use harmshell::oracle::discrete_laplacian_residual;
use harmshell::sphere_basis::{eval_y, harmonic_space_dim, solid_harmonic, BasisSpec, HarmonicIndex, SpherePoint};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn geometry() -> impl Strategy<Value = Geometry> {
    (2usize..=5, 0.3f64..2.0, 0.01f64..0.8).prop_map(|(d, r0, eps)| Geometry::new(d, r0, eps).unwrap())
}

fn unit_vector(d: usize) -> impl Strategy<Value = SpherePoint> {
    prop::collection::vec(-1.0f64..1.0, d)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|v| SpherePoint::from_cartesian(&v).unwrap())
}

/// A random polynomial of degree at most 3 in `d` variables.
fn polynomial(d: usize) -> impl Strategy<Value = BoundaryFunction> {
    prop::collection::vec((-2.0f64..2.0, prop::collection::vec((1..=d, 1u32..=2), 0..=2)), 1..=4).prop_map(
        |terms| {
            BoundaryFunction::Polynomial(
                terms
                    .into_iter()
                    .map(|(coefficient, powers)| Monomial { coefficient, powers })
                    .filter(|m| m.degree() <= 3)
                    .collect(),
            )
        },
    )
}

/// A random harmonic index of degree at most 5 in dimension `d`.
fn harmonic_index(d: usize) -> impl Strategy<Value = HarmonicIndex> {
    let spec = BasisSpec::new(d, 5).unwrap();
    let basis = harmshell::sphere_basis::enumerate_basis(spec);
    (0..basis.len()).prop_map(move |i| basis[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn insulated_coefficients_agree_with_linear_solve(geom in geometry(), k in 1usize..12) {
        let (a, b) = insulated_coeffs(&geom, k).unwrap();
        let (c, e) = insulated_coeffs_by_solve(&geom, k).unwrap();
        prop_assert!(close(a, c, 1e-9), "{a} vs {c}");
        prop_assert!(close(b, e, 1e-9), "{b} vs {e}");
    }

    #[test]
    fn perfect_coefficients_agree_with_linear_solve(geom in geometry(), k in 1usize..12) {
        let (a, b) = perfect_coeffs(&geom, k).unwrap();
        let (c, e) = perfect_coeffs_by_solve(&geom, k).unwrap();
        prop_assert!(close(a, c, 1e-9), "{a} vs {c}");
        prop_assert!(close(b, e, 1e-9), "{b} vs {e}");
    }

    #[test]
    fn harmonic_space_dimensions_obey_pascal_rule(d in 3usize..=7, k in 1usize..=20) {
        // N(k, d) = N(k, d - 1) + N(k - 1, d).
        let lhs = harmonic_space_dim(k, d).unwrap();
        let rhs = harmonic_space_dim(k, d - 1).unwrap() + harmonic_space_dim(k - 1, d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solid_harmonics_are_homogeneous(
        (idx, xi) in (2usize..=5).prop_flat_map(|d| (harmonic_index(d), unit_vector(d))),
        r in 0.2f64..3.0,
    ) {
        let x: Vec<f64> = xi.cartesian().iter().map(|c| r * c).collect();
        let scaled = solid_harmonic(&idx, &x).unwrap();
        let expected = r.powi(idx.degree() as i32) * eval_y(&idx, &xi).unwrap();
        prop_assert!(close(scaled, expected, 1e-11), "{scaled} vs {expected}");
    }

    #[test]
    fn insulated_solution_meets_both_boundary_conditions(
        (geom, phi, xi) in geometry().prop_flat_map(|g| (Just(g), polynomial(g.d), unit_vector(g.d))),
    ) {
        let spec = BasisSpec::new(geom.d, 3).unwrap();
        let (coeffs, _) = expand_auto(&phi, spec).unwrap();
        let sol = InsulatedSolution::new(geom, coeffs).unwrap();
        let outer: Vec<f64> = xi.cartesian().iter().map(|c| geom.outer() * c).collect();
        let inner: Vec<f64> = xi.cartesian().iter().map(|c| geom.r0 * c).collect();
        let boundary = sol.eval(&outer).unwrap();
        let target = phi.eval(&xi).unwrap();
        prop_assert!(close(boundary, target, 1e-9), "{boundary} vs {target}");
        let g = sol.grad(&inner).unwrap();
        let normal: f64 = g.iter().zip(xi.cartesian()).map(|(a, b)| a * b).sum();
        let scale = g.iter().map(|v| v.abs()).fold(1.0, f64::max);
        prop_assert!(normal.abs() <= 1e-9 * scale, "normal derivative {normal}");
    }

    #[test]
    fn perfect_solution_has_zero_flux_and_constant_inner_trace(
        (geom, phi, xi, zeta) in geometry().prop_flat_map(|g| {
            (Just(g), polynomial(g.d), unit_vector(g.d), unit_vector(g.d))
        }),
    ) {
        let spec = BasisSpec::new(geom.d, 3).unwrap();
        let (coeffs, rule) = expand_auto(&phi, spec).unwrap();
        let sol = PerfectSolution::new(geom, coeffs, &rule).unwrap();
        let at = |p: &SpherePoint, r: f64| p.cartesian().iter().map(|c| r * c).collect::<Vec<f64>>();
        let u1 = sol.eval(&at(&xi, geom.r0)).unwrap();
        let u2 = sol.eval(&at(&zeta, geom.r0)).unwrap();
        prop_assert!(close(u1, u2, 1e-9), "inner trace {u1} vs {u2}");
        prop_assert!(close(u1, sol.c0(), 1e-9), "inner trace {u1} vs C0 {}", sol.c0());
        let flux = rule.integrate(|p| {
            let g = sol.grad(&at(p, geom.r0)).unwrap();
            g.iter().zip(p.cartesian()).map(|(a, b)| a * b).sum::<f64>()
        });
        let scale = rule.integrate(|p| phi.eval(p).unwrap().abs()).max(1.0) / geom.eps;
        prop_assert!(flux.abs() <= 1e-9 * scale, "inner flux {flux}");
    }

    #[test]
    fn solid_harmonics_have_small_discrete_laplacian(
        (idx, x) in (2usize..=4).prop_flat_map(|d| (harmonic_index(d), prop::collection::vec(-1.0f64..1.0, d))),
    ) {
        let res = discrete_laplacian_residual(|y| solid_harmonic(&idx, y), &x, 1e-3, None).unwrap();
        // Truncation is O(h^2) times fourth derivatives, bounded for degree <= 5 in the unit cube.
        prop_assert!(res.abs() < 1e-3, "residual {res}");
    }

    #[test]
    fn g17_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let back: f64 = g17(x).parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }
}
