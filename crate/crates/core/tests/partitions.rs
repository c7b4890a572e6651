use ldt::algebra::{RatFunc, Q};
use ldt::partitions::{character, gen_partitions, Characters, Partition, SkewDiagram};
use num_bigint::BigInt;
use num_traits::Zero;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

#[test]
fn generation_order_and_counts() {
    assert_eq!(gen_partitions(0), vec![Partition::empty()]);
    assert_eq!(gen_partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    let counts: Vec<usize> = (0..=8).map(|d| gen_partitions(d).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
}

#[test]
fn zee_values() {
    assert_eq!(p(&[1, 1]).zee(), Q::from_integer(2.into()));
    assert_eq!(p(&[2, 1]).zee(), Q::from_integer(2.into()));
    assert_eq!(Partition::empty().zee(), Q::from_integer(1.into()));
    assert_eq!(p(&[2, 2, 1]).zee(), Q::from_integer(8.into()));
}

#[test]
fn hooks_arms_legs() {
    let mut h = p(&[2, 1]).hooks();
    h.sort();
    assert_eq!(h, vec![1, 1, 3]);
    assert_eq!(p(&[2, 1]).hook_product(), BigInt::from(3));
    let c = p(&[1]).cell_data();
    assert_eq!((c[0].arm, c[0].leg, c[0].hook), (0, 0, 1));
    let mut h = p(&[2]).hooks();
    h.sort();
    assert_eq!(h, vec![1, 2]);
}

#[test]
fn contents_and_n() {
    assert_eq!(Partition::empty().content_sum(), RatFunc::zero());
    assert_eq!(p(&[1]).content_sum(), RatFunc::zero());
    assert_eq!(p(&[2]).content_sum(), RatFunc::t2());
    assert_eq!(p(&[1, 1]).content_sum(), RatFunc::t1());
    assert_eq!(p(&[4]).n(), 0);
    assert_eq!(p(&[2, 1]).n(), 1);
    assert_eq!(p(&[1, 1, 1]).n(), 3);
}

#[test]
fn n_is_sum_of_legs() {
    for d in 0..=7 {
        for mu in gen_partitions(d) {
            let legs: u64 = mu.cell_data().iter().map(|c| c.leg as u64).sum();
            assert_eq!(mu.n(), legs);
        }
    }
}

#[test]
fn character_examples() {
    assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), Q::from_integer(2.into()));
    assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), Q::from_integer((-1).into()));
    for mu in gen_partitions(5) {
        assert_eq!(character(&p(&[5]), &mu).unwrap(), Q::from_integer(1.into()));
    }
    assert!(character(&p(&[2]), &p(&[1])).is_err());
}

#[test]
fn character_orthogonality() {
    let mut ch = Characters::new();
    for d in 1..=6 {
        let ps = gen_partitions(d);
        for l in &ps {
            for r in &ps {
                let mut s = Q::zero();
                for mu in &ps {
                    s += ch.get(l, mu).unwrap() * ch.get(r, mu).unwrap() / mu.zee();
                }
                let want = if l == r { Q::from_integer(1.into()) } else { Q::zero() };
                assert_eq!(s, want, "{} {}", l, r);
            }
        }
    }
}

#[test]
fn character_dimension_is_hook_formula() {
    let mut ch = Characters::new();
    for d in 1..=7 {
        for l in gen_partitions(d) {
            let dim = ch.get(&l, &Partition::ones(d)).unwrap();
            assert_eq!(dim, Q::from_integer(l.dimension()));
        }
    }
}

#[test]
fn hook_identity() {
    for d in 0..=6 {
        let s: BigInt = gen_partitions(d).iter().map(|l| l.dimension().pow(2)).sum();
        assert_eq!(s, ldt::partitions::factorial(d));
    }
}

#[test]
fn skew_rank_examples() {
    let l = p(&[3, 2]);
    assert_eq!(SkewDiagram::new(l.clone(), l.clone()).unwrap().rank_by_peeling(), 0);
    assert_eq!(SkewDiagram::new(l.clone(), l).unwrap().rank_by_contents(), 0);
    // a rim hook
    let h = SkewDiagram::new(p(&[3, 3]), p(&[2, 1])).unwrap();
    assert_eq!(h.rank_by_contents(), 1);
    assert_eq!(h.rank_by_peeling(), 1);
    assert_eq!(SkewDiagram::new(p(&[2, 2]), Partition::empty()).unwrap().rank_by_peeling(), 2);
    assert!(SkewDiagram::new(p(&[1]), p(&[2])).is_err());
}

#[test]
fn skew_rank_algorithms_agree_exhaustively() {
    let mut n = 0;
    for d in 0..=8 {
        for outer in gen_partitions(d) {
            for e in 0..=d {
                for inner in gen_partitions(e) {
                    if let Ok(s) = SkewDiagram::new(outer.clone(), inner) {
                        assert_eq!(s.rank_by_peeling(), s.rank_by_contents(), "{:?}", s);
                        n += 1;
                    }
                }
            }
        }
    }
    assert!(n > 500);
}

#[test]
fn conjugation_and_dominance() {
    assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    for d in 0..=6 {
        let ps = gen_partitions(d);
        for a in &ps {
            assert_eq!(a.conjugate().conjugate(), *a);
            for b in &ps {
                assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
            }
        }
    }
}
