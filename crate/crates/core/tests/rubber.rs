use ldt::algebra::{RatFunc, Series, EXACT, Q};
use ldt::fock::{FockOperator, FockVector};
use ldt::partitions::{gen_partitions, Partition};
use ldt::rubber::*;
use ldt::Error;

fn ts() -> RatFunc {
    RatFunc::t1().add(&RatFunc::t2())
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

#[test]
fn s_solves_the_ode() {
    for d in 0..=3 {
        let s = operator_s(d, 5).unwrap();
        assert!(ode_residual(&s, 5).is_zero(), "d = {d}");
        assert_eq!(s.at_q_zero(), FockOperator::identity(d));
    }
}

#[test]
fn eigenbasis_residual_vanishes_in_degree_four() {
    let frame = Eigenframe::new(4);
    let tilde = s_tilde(&frame, 5).unwrap();
    let m = m_coefficients_eigen(&frame, 5);
    assert!(ode_residual_coefficients(&m, &tilde).iter().all(|r| r.is_zero()));
}

#[test]
fn nakajima_residual_from_split_coefficients() {
    let s = s_coefficients_split(3, 6).unwrap();
    let m = m_coefficients(3, 6);
    assert!(ode_residual_coefficients(&m, &s).iter().all(|r| r.is_zero()));
}

#[test]
fn eigenbasis_solution_matches_flat_solve() {
    for (d, t) in [(1, 4), (2, 4), (3, 2)] {
        assert_eq!(s_coefficients(d, t).unwrap(), s_coefficients_flat(d, t).unwrap(), "d = {d}");
    }
}

#[test]
fn s_in_degree_one_is_a_binomial_power() {
    let s = operator_s(1, 8).unwrap();
    let one = p(&[1]);
    let expected = Series::from_poly(vec![RatFunc::one(), RatFunc::one()], 8)
        .pow_exponent(&ts())
        .unwrap();
    assert!(s.entry(&one, &one).agrees_with(&expected));
}

// log M(-q) = Σ σ2(n) (-q)^n / n, exponentiated independently of the Miller recurrence.
#[test]
fn empty_rubber_matches_exponential_of_divisor_sums() {
    let trunc = 7;
    let mut log = vec![RatFunc::zero()];
    for n in 1..=trunc {
        let sigma2: i64 = (1..=n).filter(|k| n % k == 0).map(|k| k * k).sum();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        log.push(ts().scale(&Q::new((-sign * sigma2).into(), n.into())));
    }
    let expected = Series::from_poly(log, trunc).exp().unwrap();
    assert!(empty_rubber(trunc).agrees_with(&expected));
}

#[test]
fn s_is_identity_on_the_anti_diagonal() {
    for d in 2..=3 {
        let s = operator_s(d, 5).unwrap();
        for mu in gen_partitions(d) {
            for nu in gen_partitions(d) {
                let e = s.entry(&mu, &nu);
                for n in 1..=5 {
                    assert!(e.coeff(n).anti_diagonal().unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn descendent_form_is_consistent() {
    for d in 1..=3 {
        let s = operator_s(d, 5).unwrap();
        assert!(descendent_residual(&s, 5).is_zero(), "d = {d}");
    }
}

#[test]
fn dilating_the_empty_series() {
    let trunc = 5;
    let z = RatFunc::s().neg();
    let r = RubberSeries::new(empty_rubber(trunc), 0).unwrap();
    let got = r.dilate(&z).unwrap();
    let e = ts().div(&RatFunc::s()).unwrap();
    let expected = ldt::algebra::macmahon_neg(trunc)
        .pow_exponent(&e)
        .unwrap()
        .scale(&z.inv().unwrap());
    assert!(got.agrees_with(&expected));
}

#[test]
fn dilation_of_non_homogeneous_coefficients_uses_substitution() {
    // 1/(1 - t1) has pieces t1^b, each sent to t1^b z^{-1-b}: total 1/(z - t1).
    let c = RatFunc::one().div(&RatFunc::one().sub(&RatFunc::t1())).unwrap();
    let r = Series::constant(c, EXACT);
    let z = RatFunc::s();
    let got = z_dilate(&r, 0, &z).unwrap();
    let expected = RatFunc::one().div(&z.sub(&RatFunc::t1())).unwrap();
    assert_eq!(got.coeff(0), expected);
}

#[test]
fn ladder_violation_is_rejected() {
    let r = Series::constant(RatFunc::t1(), EXACT);
    assert!(RubberSeries::new(r.clone(), 1).is_ok());
    assert_eq!(
        RubberSeries::new(r, 2).unwrap_err(),
        Error::InvalidBaseDegree { base: 2, found: 1 }
    );
}

#[test]
fn rubber_bracket_at_q_zero_is_the_pairing() {
    let d = 2;
    let s = operator_s(d, 3).unwrap();
    for mu in gen_partitions(d) {
        let row = FockVector::basis(&mu);
        for lam in gen_partitions(d) {
            let b = rubber_bracket(&s, &row, &lam);
            assert_eq!(b.valuation().min(2), 2);
            let expected = if mu == lam { ldt::fock::norm(&mu) } else { RatFunc::zero() };
            assert_eq!(b.coeff(2), expected);
        }
    }
}

#[test]
fn residual_vanishes_in_the_fixed_point_frame() {
    for d in 0..=3 {
        let frame = Eigenframe::new(d);
        assert!(frame.is_inverse_pair(), "d = {d}");
        let tilde = s_tilde(&frame, 4).unwrap();
        assert!(ode_residual_eigen(&frame, &tilde).iter().all(|m| m.is_zero()), "d = {d}");
        // a perturbed solution is caught
        let mut bad = tilde.clone();
        if d > 0 {
            let x = bad[2].get(0, 0).clone();
            bad[2].set(0, 0, ldt::algebra::Ring::add(&x, &ldt::algebra::SplitFrac::constant(Q::from_integer(1.into()))));
            assert!(ode_residual_eigen(&frame, &bad).iter().any(|m| !m.is_zero()), "d = {d}");
        }
    }
}
