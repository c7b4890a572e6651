use ldt::algebra::{macmahon_neg, phi, QSeries, RatFunc, Series, Var, Q};
use ldt::partitions::{gen_partitions, Partition};
use ldt::rubber::{empty_rubber, operator_s, rubber_bracket, z_dilate, RubberSeries};
use ldt::symfunc::fixed_point_class;
use ldt::vertex::*;
use proptest::prelude::*;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

fn ts() -> RatFunc {
    RatFunc::t1().add(&RatFunc::t2())
}

fn t1t2() -> RatFunc {
    RatFunc::t1().mul(&RatFunc::t2())
}

// Π 1/(1 - (-q)^h) by repeated geometric multiplication over Q.
fn hook_series(mu: &Partition, trunc: i64) -> Series {
    let mut c = vec![Q::from_integer(0.into()); (trunc + 1) as usize];
    c[0] = Q::from_integer(1.into());
    for h in mu.hooks() {
        let h = h as usize;
        let sign = if h.is_multiple_of(2) { 1 } else { -1 };
        for n in h..=trunc as usize {
            let prev = c[n - h].clone();
            c[n] += prev * Q::from_integer(sign.into());
        }
    }
    QSeries::new(0, c.into_iter().map(RatFunc::constant).collect(), trunc)
}

#[test]
fn tangent_character_has_arm_leg_form() {
    for d in 0..=6 {
        for mu in gen_partitions(d) {
            assert_eq!(tangent_character(&mu), arm_leg_character(&mu), "{mu}");
        }
    }
}

#[test]
fn edge_weight_at_the_anti_diagonal_is_a_hook_product() {
    for d in 1..=5 {
        for mu in gen_partitions(d) {
            let e = edge_weight_m10(&mu).unwrap().value;
            assert_eq!(
                e.anti_diagonal().unwrap(),
                edge_weight_anti_diagonal(&mu).anti_diagonal().unwrap(),
                "{mu}"
            );
        }
    }
}

#[test]
fn small_edge_weights() {
    let e1 = edge_weight_m10(&p(&[1])).unwrap().value;
    assert_eq!(e1.anti_diagonal().unwrap(), RatFunc::t1().neg().inv().unwrap());
    assert_eq!(e1, RatFunc::t2().inv().unwrap());
    let e11 = edge_weight_m10(&p(&[1, 1])).unwrap().value.anti_diagonal().unwrap();
    assert_eq!(e11, RatFunc::t1().pow(-2).scale(&Q::new((-1).into(), 2.into())));
}

#[test]
fn empty_vertex_closed_forms() {
    let cy = Weights::new(RatFunc::s(), RatFunc::t1().sub(&RatFunc::s()), RatFunc::t1().neg());
    assert_eq!(closed_vertex_empty(&cy, 8).unwrap(), macmahon_neg(8));
    let rel = Weights::new(RatFunc::s().neg(), RatFunc::t1(), RatFunc::t2());
    let e = ts().div(&RatFunc::s()).unwrap();
    assert_eq!(
        closed_vertex_empty_relative(&rel, 6).unwrap(),
        macmahon_neg(6).pow_exponent(&e).unwrap()
    );
    let zero = Weights::new(RatFunc::zero(), RatFunc::t1(), RatFunc::t2());
    assert!(closed_vertex_empty(&zero, 4).is_err());
}

#[test]
fn degree_zero_cap_exponent() {
    let base = ts().mul(&ts()).div(&t1t2()).unwrap().scale(&Q::from_integer((-2).into()));
    for (k1, k2) in [(0, 0), (-1, 0), (1, 2), (-3, 1)] {
        let expected = base.sub(&RatFunc::from_int(k1 + k2));
        assert_eq!(degree0_cap_exponent(k1, k2).unwrap(), expected);
    }
}

#[test]
fn degree_one_vertex_closed_forms() {
    let cy = Weights::new(RatFunc::s(), RatFunc::t1().sub(&RatFunc::s()), RatFunc::t1().neg());
    let expected = Series::from_poly(vec![RatFunc::one(), RatFunc::one()], 10).inv().unwrap();
    assert_eq!(closed_vertex_deg1_reduced(&cy, 10).unwrap(), expected);

    // ⟨⟩_1 = [W(1)|_{s} q/(t1t2) W(1)|_{-s}]_{s=0}
    let w = closed_vertex_deg1(&Weights::general(), 5).unwrap();
    let mirrored = w.map(|c| c.substitute_all(&[(Var::S, RatFunc::s().neg())]));
    let glued = w
        .mul(&mirrored)
        .shift(1)
        .scale(&t1t2().inv().unwrap())
        .try_map(|c| c.try_substitute_all(&[(Var::S, RatFunc::zero())]))
        .unwrap();
    let e = degree0_cap_exponent(0, 0).unwrap();
    let expected = macmahon_neg(5).pow_exponent(&e).unwrap().shift(1).scale(&t1t2().inv().unwrap());
    assert!(glued.agrees_with(&expected));
}

#[test]
fn descendent_rule_on_the_empty_vertex() {
    let trunc = 6;
    let w = VertexSeries {
        profile: Partition::empty(),
        frame: Frame::General,
        reduced: false,
        value: closed_vertex_empty(&Weights::general(), trunc).unwrap(),
    };
    let s = RatFunc::s();
    let pref = ts()
        .mul(&RatFunc::t1().add(&s))
        .mul(&RatFunc::t2().add(&s))
        .div(&t1t2())
        .unwrap();
    let expected = phi(trunc).scale(&pref).mul(&w.value);
    assert!(descendent_vertex(&w).unwrap().agrees_with(&expected));
}

#[test]
fn assembled_descendent_brackets() {
    let trunc = 6;
    assert!(sigma1_empty_bracket(trunc).unwrap().agrees_with(&sigma1_empty_closed(trunc)));
    assert!(sigma1_degree1_ratio(trunc)
        .unwrap()
        .agrees_with(&sigma1_degree1_closed(trunc).unwrap()));
}

#[test]
fn reduced_descendent_is_unreduced_first() {
    let trunc = 5;
    let reduced = VertexSeries {
        profile: p(&[1]),
        frame: Frame::Solver,
        reduced: true,
        value: closed_vertex_deg1_reduced(&Weights::solver(), trunc).unwrap(),
    };
    let full = reduced.unreduced().unwrap();
    assert!(!full.reduced);
    assert_eq!(descendent_vertex(&reduced).unwrap(), descendent_vertex(&full).unwrap());
}

#[test]
fn solver_in_degree_zero_and_one() {
    let v0 = solve_vertex(0, 5).unwrap();
    assert_eq!(v0.len(), 1);
    assert_eq!(v0[0].value, Series::one(5));

    let v1 = solve_vertex(1, 8).unwrap();
    assert_eq!(v1.len(), 1);
    let expected = closed_vertex_deg1_reduced(&Weights::solver(), 8).unwrap();
    assert_eq!(v1[0].value, expected);
    let general = closed_vertex_deg1_reduced(&Weights::general(), 8).unwrap();
    assert_eq!(v1[0].to_general().value, general);
}

#[test]
fn solver_specializes_to_hook_products() {
    for d in 2..=3 {
        for w in solve_vertex(d, 6).unwrap() {
            assert_eq!(w.calabi_yau().unwrap(), hook_series(&w.profile, 6), "{}", w.profile);
            let general = w.to_general();
            assert_eq!(general.calabi_yau().unwrap(), hook_series(&w.profile, 6));
        }
    }
}

#[test]
fn solution_satisfies_the_cap_identity() {
    for d in 1..=2 {
        let qmax = 5;
        let vertex = solve_vertex_split(d, qmax).unwrap();
        let ratios = rubber_ratios(d, qmax).unwrap();
        for lambda in gen_partitions(d) {
            let rhs = cap_m10_rhs_split(&lambda, &vertex, &ratios).unwrap();
            let rhs = rhs.map(|c| c.to_ratfunc());
            let lhs = cap_m10_lhs(&lambda, rhs.truncation());
            assert_eq!(rhs.truncation(), qmax + d as i64);
            assert!(rhs.agrees_with(&lhs), "{lambda}");
            assert!(rhs.stored().iter().all(|c| c.is_constant()));
        }
    }
}

#[test]
fn rubber_ratios_match_the_dilated_brackets() {
    let d = 2;
    let trunc = 3;
    let ratios = rubber_ratios(d, trunc).unwrap();
    let s = operator_s(d, trunc).unwrap();
    let z = RatFunc::s().neg();
    let empty = empty_rubber(trunc + d as i64);
    let den = z_dilate(&empty, 0, &z).unwrap();
    for (mi, mu) in gen_partitions(d).iter().enumerate() {
        let row = fixed_point_class(mu);
        for (li, lambda) in gen_partitions(d).iter().enumerate() {
            let num = rubber_bracket(&s, &row, lambda).mul(&empty);
            let base = (d as usize - lambda.len()) as i64;
            let dilated = RubberSeries::new(num, base).unwrap().dilate(&z).unwrap();
            let ratio = dilated.div(&den).unwrap();
            let ours = ratios[mi][li].map(|c| c.to_ratfunc());
            assert!(ratio.agrees_with(&ours), "{mu} {lambda}");
        }
    }
}

#[test]
fn dilated_empty_series() {
    let trunc = 5;
    let den = z_dilate(&empty_rubber(trunc), 0, &RatFunc::s().neg()).unwrap();
    let rel = Weights::new(RatFunc::s().neg(), RatFunc::t1(), RatFunc::t2());
    let expected = closed_vertex_empty_relative(&rel, trunc)
        .unwrap()
        .scale(&RatFunc::s().inv().unwrap().neg());
    assert_eq!(den, expected);
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..5, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v)
    })
}

proptest! {
    #[test]
    fn characters_agree(mu in partition_strategy()) {
        prop_assert_eq!(tangent_character(&mu), arm_leg_character(&mu));
    }

    #[test]
    fn edge_character_has_rank_d(mu in partition_strategy()) {
        let e = edge_character(&mu).unwrap();
        let rank: i64 = e.values().sum();
        prop_assert_eq!(rank, mu.size() as i64);
    }
}
