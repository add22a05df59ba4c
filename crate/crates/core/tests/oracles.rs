//! Worked examples checked against independent oracles: hand expansions,
//! closed forms, or a second engine.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use num::{BigRational, One};

use rmtlab::circle::{self, Density, Model, Phase, PhasePoint};
use rmtlab::exact::{self, parse_rational, to_f64, ExactScalar, SymbolSpec};
use rmtlab::group::{self, GroupKind, GroupTag, WronskianSpec};
use rmtlab::numeric::{pv_integral, ChebKind, ChebWeight, QuadratureRule, C64};
use rmtlab::realline::{self, BoundaryFormula, StereoDensity, StereoParams};
use rmtlab::{Error, Family};

fn q(s: &str) -> ExactScalar {
    parse_rational(s).unwrap()
}

#[test]
fn exact_spot_values() {
    let sym = SymbolSpec::integer(Family::E, q("1/2"), 1, 1).unwrap();
    assert_eq!(exact::toeplitz_det(&sym, 1).unwrap().value, q("5/4"));
    assert_eq!(exact::bs_closed_form(1, 1, 1), q("2"));
    assert_eq!(exact::bs_closed_form(2, 1, 2), q("6"));
    let one = BigRational::one();
    assert_eq!(exact::schur_sum_oracle(2, 1, 2, &one).unwrap(), q("6"));
    assert!(matches!(
        SymbolSpec::integer(Family::E, q("3/2"), 1, 1),
        Err(Error::OutOfRange { .. })
    ));
}

#[test]
fn budget_is_enforced() {
    let r = exact::ensembles::schur_sum_oracle_with_budget(3, 3, 3, &q("1/2"), 1);
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
}

#[test]
fn chebyshev_hilbert_pairs() {
    // P∫ T_n(y)/((y-x)√(1-y²)) dy = π U_{n-1}(x) and
    // P∫ U_{n-1}(y)√(1-y²)/(y-x) dy = -π T_n(x).
    let rule1 = QuadratureRule::gauss_chebyshev_1(64).unwrap();
    let rule2 = QuadratureRule::gauss_chebyshev_2(64).unwrap();
    for n in 1..=8usize {
        for &x in &[-0.7, -0.1, 0.3, 0.85] {
            let a = pv_integral(|y| rmtlab::numeric::chebyshev_eval(ChebKind::T, n, &y), ChebWeight::FirstKind, x, &rule1).unwrap();
            assert!((a - PI * rmtlab::numeric::chebyshev_eval(ChebKind::U, n - 1, &x)).abs() < 1e-7);
            let b = pv_integral(|y| rmtlab::numeric::chebyshev_eval(ChebKind::U, n - 1, &y), ChebWeight::SecondKind, x, &rule2).unwrap();
            assert!((b + PI * rmtlab::numeric::chebyshev_eval(ChebKind::T, n, &x)).abs() < 1e-7);
        }
    }
}

#[test]
fn weak_free_energy_closed_form() {
    let p = PhasePoint::new(Family::H, 0.5, 1.0, 0.0).unwrap();
    assert_relative_eq!(circle::free_energy_closed(&p).unwrap(), -(0.75f64).ln(), max_relative = 1e-14);
}

#[test]
fn critical_curves() {
    assert_relative_eq!(circle::critical_gamma(Family::H, 0.5).unwrap(), 1.5);
    assert_relative_eq!(circle::critical_gamma(Family::E, 0.5).unwrap(), 0.5);
    // v = 0 reduces the general curve to (1∓t)/2t.
    assert_relative_eq!(circle::critical_gamma_v(Family::E, 0.3, 0.0), 0.7 / 0.6, max_relative = 1e-14);
}

#[test]
fn strong_density_vanishes_like_square_root() {
    let d = Density::new(&PhasePoint::new(Family::H, 0.5, 2.5, 0.0).unwrap()).unwrap();
    assert_eq!(d.phase(), Phase::Strong);
    let h = d.half_width();
    let (e1, e2) = (1e-6, 1e-8);
    let slope = (d.eval(h - e1).unwrap().re / d.eval(h - e2).unwrap().re).ln() / (e1 / e2).ln();
    assert!((slope - 0.5).abs() < 0.02, "{slope}");
}

#[test]
fn printed_model_reproduces_printed_jump() {
    let o = circle::phase_order(Family::H, 0.5, 0.5, Model::Printed).unwrap();
    assert_eq!(o.order, 2);
    assert!((o.jump + 2.0).abs() < 0.04);
}

#[test]
fn corrected_and_printed_boundaries() {
    let p = StereoParams::new(Family::E, 0.5, 1.0, 0.0).unwrap();
    let a = realline::boundary_a(&p).unwrap();
    assert_relative_eq!(a * a, 5.4, max_relative = 1e-12);
    assert!(realline::normalization_residual(&p, a).abs() < 1e-12);
    let printed = realline::boundary_a_with(&p, BoundaryFormula::Printed).unwrap();
    assert!(realline::normalization_residual(&p, printed).abs() > 1e-3);
}

#[test]
fn real_line_matches_circle_pushforward() {
    let sp = StereoParams::new(Family::H, 0.5, 2.0, 0.0).unwrap();
    let d = StereoDensity::solve(&sp).unwrap();
    let circ = Density::new(&PhasePoint::new(Family::H, 0.5, 2.0, 0.0).unwrap()).unwrap();
    for &x in &[-0.5, 0.0, 0.3] {
        let phi = realline::stereo_inverse(x);
        let dphi_dx = 2.0 / (1.0 + x * x);
        let want = circ.eval(phi).unwrap().re * dphi_dx;
        assert!((d.eval_per_dx(x).re - want).abs() < 1e-10);
    }
    let n = d.integrate(|_| C64::new(1.0, 0.0));
    assert!((n - 1.0).norm() < 1e-10);
}

#[test]
fn group_examples() {
    let g = GroupKind::new(GroupTag::Sp, 1).unwrap();
    let t = 0.3;
    assert_relative_eq!(group::hankel_via_quadrature(g, Family::E, 1.0, t).unwrap(), 1.0 + t * t, max_relative = 1e-10);
    let o = GroupKind::new(GroupTag::OPlusEven, 1).unwrap();
    assert!((group::hankel_via_quadrature(o, Family::H, 0.0, t).unwrap() - 1.0).abs() < 1e-12);
    let x = q("2/3");
    let wr = |kind, start, count| {
        group::chebyshev_wronskian(&WronskianSpec {
            kind,
            start_degree: start,
            count,
            point: x.clone(),
        })
        .unwrap()
    };
    assert_eq!(wr(ChebKind::U, 1, 1), q("4/3"));
    assert_eq!(wr(ChebKind::T, 1, 2), q("17/9"));
    let p = group::charpoly_prediction(GroupTag::Sp, Family::E, 1, 1, &q("1/2")).unwrap();
    assert_eq!(p.rational(), q("5/2"));
    assert!(group::charpoly_prediction(GroupTag::Sp, Family::H, 3, 3, &q("1/2")).is_err());
}

#[test]
fn sp_sequence_and_limit() {
    let t = q("1/2");
    let sym = SymbolSpec::integer(Family::E, t.clone(), 1, 1).unwrap();
    for k in 1..=20 {
        assert_eq!(group::th_determinant(GroupTag::Sp, &sym, k).unwrap(), group::sp_e1_closed_form(&t, k));
    }
    let bc = group::basor_chen_asymptotic(Family::E, GroupTag::Sp, 2.0, 0.5).unwrap();
    assert!((bc.value() - 64.0 / 27.0).abs() < 1e-9);
    let exact30 = to_f64(&group::th_determinant(GroupTag::Sp, &SymbolSpec::integer(Family::E, t, 2, 2).unwrap(), 30).unwrap());
    assert!((exact30 - 64.0 / 27.0).abs() < 1e-9);
}

#[test]
fn printed_series_first_term() {
    let r = group::printed_series_partial(Family::E, 1.0, 0.5, 0).unwrap();
    assert_relative_eq!(r.partial_sums[0], 0.75 / 4.0, max_relative = 1e-14);
}
