use ldt::algebra::{Lin, MultiPoly, RatFunc, Ring, SplitFrac, Var, Q};
use proptest::prelude::*;

fn lin(a: i64, b: i64, c: i64, k: i64) -> MultiPoly {
    let q = |x: i64| RatFunc::from_int(x);
    q(a).mul(&RatFunc::s())
        .add(&q(b).mul(&RatFunc::t1()))
        .add(&q(c).mul(&RatFunc::t2()))
        .add(&q(k))
        .num()
        .clone()
}

#[test]
fn linear_forms_are_normalized() {
    let (u, l) = Lin::from_poly(&lin(0, -2, 4, 6)).unwrap();
    assert_eq!(l.coeffs(), [0, 1, -2, -3]);
    assert_eq!(u, Q::from_integer((-2).into()));
    assert!(Lin::from_poly(&MultiPoly::from_int(3)).is_none());
}

#[test]
fn reduction_cancels_common_factors() {
    // (t1 - t2)(t1 + 1) / ((t1 - t2)^2 (t1 + 1)) = 1/(t1 - t2)
    let a = lin(0, 1, -1, 0);
    let b = lin(0, 1, 0, 1);
    let f = SplitFrac::from_poly(a.mul(&b))
        .mul(&SplitFrac::inv_product(&[a.clone(), a.clone(), b.clone()]).unwrap())
        .reduced();
    assert_eq!(f.den_factors().len(), 1);
    assert_eq!(f.to_ratfunc(), RatFunc::one().div(&RatFunc::from_poly(a)).unwrap());
}

#[test]
fn ratfunc_round_trip() {
    let r = RatFunc::t1()
        .add(&RatFunc::one())
        .div(&RatFunc::t1().mul(&RatFunc::t2()).mul(&RatFunc::t1().sub(&RatFunc::s())))
        .unwrap();
    let f = SplitFrac::from_ratfunc(&r, &[]).unwrap();
    assert_eq!(f.to_ratfunc(), r);
}

fn arb_frac() -> impl Strategy<Value = (SplitFrac, RatFunc)> {
    let form = (-2i64..=2, -2i64..=2, -2i64..=2, -3i64..=3);
    (
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..2), 1..4),
        prop::collection::vec(form, 0..3),
    )
        .prop_map(|(terms, forms)| {
            let mut num = MultiPoly::zero();
            for (c, a, b, e) in terms {
                let m = ldt::algebra::Mono([e, a, b]);
                num = num.add(&MultiPoly::monomial(m, Q::from_integer(c.into())));
            }
            let dens: Vec<MultiPoly> = forms
                .into_iter()
                .map(|(a, b, c, k)| lin(a, b, c, k))
                .filter(|p| p.total_degree() == Some(1))
                .collect();
            let f = SplitFrac::from_poly(num.clone()).mul(&SplitFrac::inv_product(&dens).unwrap());
            let mut den = MultiPoly::one();
            for d in &dens {
                den = den.mul(d);
            }
            (f, RatFunc::new(num, den).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_agrees_with_reduced_fractions((a, ra) in arb_frac(), (b, rb) in arb_frac()) {
        prop_assert_eq!(a.add(&b).to_ratfunc(), ra.add(&rb));
        prop_assert_eq!(a.sub(&b).to_ratfunc(), ra.sub(&rb));
        prop_assert_eq!(a.mul(&b).to_ratfunc(), ra.mul(&rb));
        prop_assert!(a.add(&b) == b.add(&a));
    }

    #[test]
    fn substitution_scales_linear_forms((a, ra) in arb_frac()) {
        // v ↦ v / s on t1 and t2, identity on s
        let s_lin = Lin::var(Var::S);
        let images = [
            (MultiPoly::var(Var::S), None),
            (MultiPoly::var(Var::T1), Some((s_lin, 1))),
            (MultiPoly::var(Var::T2), Some((s_lin, 1))),
        ];
        if let Some(got) = a.substitute_linear(&images) {
            let inv = RatFunc::s().inv().unwrap();
            let expected = ra.substitute_all(&[
                (Var::T1, RatFunc::t1().mul(&inv)),
                (Var::T2, RatFunc::t2().mul(&inv)),
            ]);
            prop_assert_eq!(got.to_ratfunc(), expected);
        }
    }
}
