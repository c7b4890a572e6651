use ldt::algebra::{macmahon, RatFunc, Series, EXACT};
use ldt::boxcount::*;
use ldt::partitions::{gen_partitions, Partition};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

fn hook_product_series(lambda: &Partition, tr: i64) -> Series {
    let mut acc = Series::one(tr);
    for h in lambda.hooks() {
        let mut c = vec![RatFunc::zero(); h as usize + 1];
        c[0] = RatFunc::one();
        c[h as usize] = RatFunc::from_int(if h % 2 == 0 { -1 } else { 1 });
        let den = Series::from_poly(c, EXACT).with_truncation(tr);
        acc = acc.div(&den).unwrap();
    }
    acc
}

#[test]
fn enumeration_examples() {
    assert_eq!(counts(&Partition::empty(), 3), vec![1, 1, 3, 6]);
    assert_eq!(counts(&p(&[1]), 0), vec![1]);
    assert_eq!(counts(&p(&[1]), 2), vec![1, 2, 5]);
    let levels = enumerate(&p(&[2, 1]), 4);
    for (v, l) in levels.iter().enumerate() {
        assert!(l.iter().all(|pp| pp.volume() == v as u32));
    }
}

#[test]
fn macmahon_counts() {
    let c = counts(&Partition::empty(), 10);
    let m = macmahon(10);
    for (n, k) in c.iter().enumerate() {
        assert_eq!(m.coeff(n as i64), RatFunc::from_int(*k as i64));
    }
}

#[test]
fn cy_vertex_examples() {
    let tr = 8;
    assert!(cy_vertex(&Partition::empty(), tr).agrees_with(&ldt::algebra::macmahon_neg(tr as i64)));
    let one = cy_vertex_reduced(&p(&[1]), tr);
    let want = Series::one(EXACT)
        .div(&Series::from_poly(vec![RatFunc::one(), RatFunc::one()], tr as i64))
        .unwrap();
    assert!(one.agrees_with(&want));
    assert!(cy_vertex_reduced(&p(&[2, 1]), tr).agrees_with(&hook_product_series(&p(&[2, 1]), tr as i64)));
}

#[test]
fn cy_vertex_hook_products_small() {
    for d in 0..=3 {
        for lam in gen_partitions(d) {
            let got = cy_vertex_reduced(&lam, 8);
            assert!(got.agrees_with(&hook_product_series(&lam, 8)), "{}", lam);
        }
    }
}

#[test]
fn ord_van_examples_and_positivity() {
    assert_eq!(PlanePartition::bare(p(&[2, 1])).ord_van(), 0);
    let one = &enumerate(&Partition::empty(), 1)[1][0];
    assert_eq!(one.ord_van(), 1);
    for lam in [Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])] {
        for (v, level) in enumerate(&lam, 8).iter().enumerate() {
            for pp in level {
                if v > 0 {
                    assert!(pp.ord_van() >= 1);
                }
            }
        }
    }
}
