use bohrfrac::fracseries::{bohr_majorant, frac_derivative, frac_integral, FracPowerSeries};
use bohrfrac::radius::{lhs_rhs, solve, Family, RadiusProblem};
use proptest::prelude::*;

fn series() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 1..=65)
}

fn order() -> impl Strategy<Value = f64> {
    (1u32..=9).prop_map(|k| k as f64 / 10.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivative_undoes_integral(coeffs in series(), alpha in order()) {
        let s = FracPowerSeries::from_coeffs(coeffs.clone()).unwrap();
        let back = frac_derivative(&frac_integral(&s, alpha).unwrap(), alpha).unwrap();
        prop_assert_eq!(back.offset(), 0.0);
        for (got, want) in back.coeffs().iter().zip(&coeffs) {
            prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "{} vs {}", got, want);
        }
    }

    #[test]
    fn transforms_are_linear(
        pair in (1usize..=40).prop_flat_map(|n| (
            prop::collection::vec(-5.0f64..5.0, n),
            prop::collection::vec(-5.0f64..5.0, n),
        )),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        alpha in 0.0f64..1.0,
    ) {
        let (x, y) = pair;
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let sx = FracPowerSeries::from_coeffs(x).unwrap();
        let sy = FracPowerSeries::from_coeffs(y).unwrap();
        let sc = FracPowerSeries::from_coeffs(combo).unwrap();
        for op in [frac_derivative, frac_integral] {
            let (tx, ty, tc) = (op(&sx, alpha).unwrap(), op(&sy, alpha).unwrap(), op(&sc, alpha).unwrap());
            prop_assert_eq!(tc.offset(), tx.offset());
            for n in 0..tc.coeffs().len() {
                let want = a * tx.coeffs()[n] + b * ty.coeffs()[n];
                prop_assert!((tc.coeffs()[n] - want).abs() <= 1e-11 * (1.0 + want.abs() + tc.coeffs()[n].abs()));
            }
        }
    }

    #[test]
    fn integral_majorant_grows_with_radius(coeffs in series(), alpha in 0.0f64..1.0, r1 in 0.01f64..0.98, dr in 0.001f64..0.5) {
        let r2 = (r1 + dr).min(0.99);
        let s = frac_integral(&FracPowerSeries::from_coeffs(coeffs).unwrap(), alpha).unwrap();
        prop_assert!(bohr_majorant(&s, r1).unwrap() <= bohr_majorant(&s, r2).unwrap());
    }

    #[test]
    fn derivative_majorant_grows_without_constant_term(mut coeffs in series(), alpha in 0.0f64..1.0, r1 in 0.01f64..0.98, dr in 0.001f64..0.5) {
        coeffs[0] = 0.0;
        let r2 = (r1 + dr).min(0.99);
        let s = frac_derivative(&FracPowerSeries::from_coeffs(coeffs).unwrap(), alpha).unwrap();
        prop_assert!(bohr_majorant(&s, r1).unwrap() <= bohr_majorant(&s, r2).unwrap() * (1.0 + 1e-15));
    }

    #[test]
    fn left_side_is_increasing(alpha in 0.0f64..0.95, r1 in 0.01f64..0.9, dr in 0.001f64..0.05) {
        for family in [Family::AnalyticR, Family::ShiftedRho, Family::IntegralRint] {
            let p = RadiusProblem::new(family, alpha);
            let lo = lhs_rhs(&p, r1).unwrap();
            let hi = lhs_rhs(&p, r1 + dr).unwrap();
            prop_assert!(lo.lhs < hi.lhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn derivative_radii_shrink_with_order(a in 0.0f64..0.75, gap in 0.02f64..0.09) {
        for family in [Family::AnalyticR, Family::SquaredN, Family::ConvexP, Family::BlochM] {
            let r1 = solve(&RadiusProblem::new(family, a)).unwrap().root;
            let r2 = solve(&RadiusProblem::new(family, a + gap)).unwrap().root;
            prop_assert!(r2 < r1, "{}: {} at {}, {} at {}", family, r1, a, r2, a + gap);
        }
    }

    #[test]
    fn root_balances_the_equation(alpha in 0.0f64..0.8) {
        for family in Family::ALL {
            let res = solve(&RadiusProblem::new(family, alpha)).unwrap();
            let (lo, hi) = res.bracket;
            let p = res.problem;
            let d = |r: f64| { let s = lhs_rhs(&p, r).unwrap(); s.lhs - s.rhs };
            prop_assert!(d(lo) * d(hi) <= 0.0, "{} at α={}", family, alpha);
            prop_assert!(hi - lo <= p.tol);
        }
    }
}

#[test]
fn univalent_radius_leaves_the_search_interval_at_high_order() {
    // K(0.8) ≈ 1.4e-6 is the last tabulable order before the root drops below 1e-6.
    let near = solve(&RadiusProblem::new(Family::UnivalentK, 0.8)).unwrap();
    assert!(near.root > 1e-6 && near.root < 2e-6);
    match solve(&RadiusProblem::new(Family::UnivalentK, 0.9)) {
        Err(bohrfrac::Error::NoRoot { d_lo, d_hi }) => assert!(d_lo > 0.0 && d_hi > 0.0),
        other => panic!("expected NoRoot, got {other:?}"),
    }
}
