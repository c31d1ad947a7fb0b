use std::cmp::Ordering;
use std::f64::consts::PI;

use proptest::prelude::*;

use sobolev_core::bounds_lower::{i_integral_quadrature, phi_by_route, phi_minimize, phi_minimize_numeric};
use sobolev_core::cli::{round_down_4, round_up_4, TableCase};
use sobolev_core::kernels::scaled_ratio;
use sobolev_core::numerics::{integrate_semiline, minimize_scalar, QuadratureConfig};
use sobolev_core::specfun::{bessel_k, beta};
use sobolev_core::{bracket, lower_bound, phi, upper_bound, BoundOptions, EmbeddingParams, Error, PhiRoute};

fn params(r: f64, n: f64, d: u32) -> EmbeddingParams {
    EmbeddingParams::new(r, n, d).unwrap()
}

/// `x` against `k / 10⁴` as exact rationals; `x` positive and normal.
fn cmp_decimal(x: f64, k: u64) -> Ordering {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32 - 1075;
    let mant = u128::from((bits & ((1 << 52) - 1)) | (1 << 52));
    // x = mant · 2^exp with exp < 0 in the tested range
    (mant * 10_000).cmp(&(u128::from(k) << (-exp) as u32))
}

/// `up` and `down` are the tightest four-decimal bounds around `x`.
fn assert_tight(x: f64, up: u64, down: u64) {
    assert_ne!(cmp_decimal(x, up), Ordering::Greater, "{x:e} above {up}");
    assert_eq!(cmp_decimal(x, up - 1), Ordering::Greater, "{x:e} not above {}", up - 1);
    assert_ne!(cmp_decimal(x, down), Ordering::Less, "{x:e} below {down}");
    assert_eq!(cmp_decimal(x, down + 1), Ordering::Less, "{x:e} not below {}", down + 1);
}

fn decimal_units(s: &str) -> u64 {
    s.replace('.', "").parse().unwrap()
}

/// `t^ν K_ν(t) = √(π/2) e^{−t} Σ_j c_j t^{m−j}` for `ν = m + 1/2`. For integer
/// `r` the power expands into monomials times `e^{−rt}`, each integrating to
/// a factorial over a power of `r`.
fn trial_integral_by_expansion(m: usize, r: usize, d: usize) -> f64 {
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    // coefficients indexed by power of t
    let base: Vec<f64> = (0..=m)
        .map(|p| {
            let j = m - p;
            fact(m + j) / (fact(j) * fact(m - j) * 2f64.powi(j as i32))
        })
        .collect();
    let mut poly = vec![1.0];
    for _ in 0..r {
        let mut next = vec![0.0; poly.len() + m];
        for (i, a) in poly.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        poly = next;
    }
    let rf = r as f64;
    let sum: f64 = poly
        .iter()
        .enumerate()
        .map(|(k, c)| c * fact(d + k - 1) / rf.powi((d + k) as i32))
        .sum();
    (PI / 2.0).powf(rf / 2.0) * sum
}

#[test]
fn trial_integral_matches_integer_exponent_expansion() {
    let cfg = QuadratureConfig::default();
    for (m, d) in [(0, 1), (1, 1), (2, 1), (0, 3), (2, 3), (1, 2)] {
        for r in [3, 4, 6, 10] {
            let n = m as f64 + 0.5 + d as f64 / 2.0;
            let got = i_integral_quadrature(&params(r as f64, n, d as u32), &cfg).unwrap();
            let want = trial_integral_by_expansion(m, r, d);
            assert!(
                (got.ln_value - want.ln()).exp_m1().abs() < 1e-9,
                "m={m} d={d} r={r}: {} vs {want}",
                got.value()
            );
        }
    }
}

#[test]
fn monomial_exponential_quadrature_within_reported_error() {
    let gamma_plus_one = |a: f64| match a {
        3.5 => 3.5 * 2.5 * 1.5 * 0.5 * PI.sqrt(),
        a => (1..=a as u32).map(f64::from).product(),
    };
    for alpha in [0.0, 1.0, 2.0, 3.5] {
        for rate in [1.0, 2.0, 10.0] {
            let res = integrate_semiline(|t: f64| t.powf(alpha) * (-rate * t).exp(), &QuadratureConfig::default()).unwrap();
            let exact = gamma_plus_one(alpha) / rate.powf(alpha + 1.0);
            let slack = 4.0 * f64::EPSILON * exact;
            assert!(
                (res.value - exact).abs() <= res.abs_error_estimate + slack,
                "alpha={alpha} rate={rate}: {} vs {exact} (est {:e})",
                res.value,
                res.abs_error_estimate
            );
        }
    }
}

#[test]
fn minimizer_matches_dense_grid_on_table_points() {
    let opts = BoundOptions::default();
    let grid: Vec<f64> = (0..10_000).map(|i| 1e-3 * 1e6f64.powf(i as f64 / 9_999.0)).collect();
    for case in [TableCase::A, TableCase::B, TableCase::C, TableCase::D] {
        let (n, d, rs) = case.grid().unwrap();
        for &r in rs {
            let p = params(r, n, d);
            let found = phi_minimize_numeric(&p, &opts).unwrap().phi_min;
            let scanned = grid
                .iter()
                .map(|&l| phi(&p, l, &opts).unwrap().value)
                .fold(f64::INFINITY, f64::min);
            assert!(found <= scanned * (1.0 + 1e-12), "{case:?} r={r}");
            assert!((scanned - found) / found < 1e-6, "{case:?} r={r}: {found} vs {scanned}");
        }
    }
}

#[test]
fn closed_form_minimizers_are_stationary() {
    let opts = BoundOptions::default();
    for case in [TableCase::A, TableCase::C, TableCase::D] {
        let (n, d, rs) = case.grid().unwrap();
        for &r in rs {
            let p = params(r, n, d);
            let m = phi_minimize(&p, &opts).unwrap();
            let l = m.lambda_star;
            let h = 1e-5 * l;
            let f = |x: f64| phi_by_route(&p, x, PhiRoute::Binomial, &opts.quadrature).unwrap().value;
            let derivative = (f(l + h) - f(l - h)) / (2.0 * h);
            assert!(derivative.abs() < 1e-7 * m.phi_min / l, "{case:?} r={r}: {derivative:e}");
        }
    }
}

#[test]
fn upper_bound_approaches_sup_norm_constant() {
    for (n, d) in [(1.0, 1), (3.0, 1), (2.0, 2), (2.0, 3), (1.7, 3)] {
        let limit = upper_bound(&params(f64::INFINITY, n, d)).unwrap();
        let gaps: Vec<f64> = [1e2, 1e4, 1e6]
            .iter()
            .map(|&r| (upper_bound(&params(r, n, d)).unwrap() - limit).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "n={n} d={d}: {gaps:?}");
        assert!(gaps[2] < 1e-3 * limit);
    }
}

#[test]
fn lower_bound_at_large_exponent_stays_in_tabulated_window() {
    let s = lower_bound(&params(1000.0, 1.0, 1), &BoundOptions::default()).unwrap().s_minus;
    assert!((0.7027..=0.7072).contains(&s), "{s}");
}

#[test]
fn rounding_is_exact_at_decimal_boundaries() {
    for k in [1u64, 1234, 6345, 9999, 10_000, 12_345] {
        let x = k as f64 / 1e4;
        for y in [x.next_down(), x, x.next_up()] {
            assert_tight(y, decimal_units(&round_up_4(y)), decimal_units(&round_down_4(y)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn beta_is_symmetric(z in 0.01f64..60.0, w in 0.01f64..60.0) {
        let a = beta(z, w).unwrap().value;
        let b = beta(w, z).unwrap().value;
        prop_assert!((a - b).abs() <= 2.0 * f64::EPSILON * a.abs());
    }

    #[test]
    fn bessel_k_decreases_in_argument(nu in 0.0f64..6.0, rho in 0.01f64..40.0, step in 1e-3f64..1.0) {
        let near = bessel_k(nu, rho).unwrap().value;
        let far = bessel_k(nu, rho * (1.0 + step)).unwrap().value;
        prop_assert!(far < near, "nu={nu} rho={rho}: {far} >= {near}");
    }

    #[test]
    fn rounding_brackets_the_value(x in 1e-3f64..2.0) {
        assert_tight(x, decimal_units(&round_up_4(x)), decimal_units(&round_down_4(x)));
    }

    #[test]
    fn minimizer_is_stable_under_tighter_tolerance(shift in -2.0f64..2.0, curvature in 0.1f64..5.0) {
        let g = |x: f64| curvature * (x.ln() - shift).powi(2) + (x.ln() - shift).powi(4);
        let coarse = minimize_scalar(g, (1e-3, 1e3), 1e-8).unwrap();
        let fine = minimize_scalar(g, (1e-3, 1e3), 1e-9).unwrap();
        prop_assert!((coarse.arg_min - fine.arg_min).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bracket_is_ordered(d in 1u32..=4, offset in 1e-3f64..=5.0, r in 2.001f64..1e3) {
        let n = f64::from(d) / 2.0 + offset;
        let b = bracket(&params(r, n, d), &BoundOptions::default()).unwrap();
        let s_minus = b.s_minus.unwrap();
        prop_assert!(s_minus <= b.s_plus, "r={r} n={n} d={d}: {s_minus} > {}", b.s_plus);
        let lo = decimal_units(&round_down_4(s_minus));
        let hi = decimal_units(&round_up_4(b.s_plus));
        prop_assert!(lo <= hi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn phi_routes_agree(d in 1u32..=3, k in 0u32..3, lambda in 0.05f64..0.95, r in 2.05f64..50.0) {
        let n = (f64::from(d) / 2.0 + 0.01).ceil() + f64::from(k);
        let p = params(r, n, d);
        let cfg = QuadratureConfig::default();
        let q = phi_by_route(&p, lambda, PhiRoute::Quadrature, &cfg).unwrap().value;
        let b = phi_by_route(&p, lambda, PhiRoute::Binomial, &cfg).unwrap().value;
        prop_assert!((b - q).abs() < 1e-8 * q);
        match phi_by_route(&p, lambda, PhiRoute::Hypergeometric, &cfg) {
            Ok(h) => prop_assert!((h.value - q).abs() < 1e-8 * q, "{} vs {q}", h.value),
            Err(Error::SingularParameter { .. }) => prop_assert!(d % 2 == 0),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn fractional_order_routes_agree(d in 1u32..=3, offset in 0.05f64..3.0, lambda in 0.05f64..0.95, r in 2.05f64..50.0) {
        let n = f64::from(d) / 2.0 + offset;
        let c = 1.0 + f64::from(d) / 2.0 - 2.0 * n;
        prop_assume!((c - c.round()).abs() > 0.05);
        let p = params(r, n, d);
        let cfg = QuadratureConfig::default();
        let q = phi_by_route(&p, lambda, PhiRoute::Quadrature, &cfg).unwrap().value;
        let h = phi_by_route(&p, lambda, PhiRoute::Hypergeometric, &cfg).unwrap().value;
        prop_assert!((h - q).abs() < 1e-8 * q, "{h} vs {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scaled_ratio_never_exceeds_lower_bound(d in 1u32..=3, offset in 0.2f64..3.0, r in 2.2f64..50.0, ln_lambda in -3.0f64..3.0) {
        let p = params(r, f64::from(d) / 2.0 + offset, d);
        let opts = BoundOptions::default();
        let s_minus = lower_bound(&p, &opts).unwrap().s_minus;
        let ratio = scaled_ratio(&p, ln_lambda.exp(), &opts).unwrap();
        prop_assert!(ratio <= s_minus + 1e-9, "{ratio} > {s_minus}");
    }
}
