//! Exact Padé fitting of truncated series.

use alloc::vec::Vec;

use crate::algebra::field::Field;
use crate::algebra::linalg::{solve, Complexity, Mat};
use crate::algebra::series::QSeries;

/// `q^val * P(q) / Q(q)` with `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFit<F> {
    pub val: i64,
    pub num: Vec<F>,
    pub den: Vec<F>,
}

impl<F: Field + Complexity> RationalFit<F> {
    pub fn expand(&self, trunc: i64) -> QSeries<F> {
        let p = QSeries::new(self.val, self.num.clone(), trunc);
        let q = QSeries::new(0, self.den.clone(), trunc - self.val);
        p.div(&q).expect("denominator has unit constant term")
    }
}

/// Fits a rational function to the first half of the known coefficients and
/// returns it only if it reproduces the second half.
pub fn fit_rational<F: Field + Complexity>(s: &QSeries<F>) -> Option<RationalFit<F>> {
    if s.is_zero() {
        return None;
    }
    let val = s.valuation();
    let c: Vec<F> = s.dense();
    let n_all = c.len();
    let half = n_all / 2;
    for total in 0..half {
        for nd in 0..=total {
            let nn = total - nd;
            if let Some(fit) = try_fit(&c, nn, nd, val) {
                if fit.expand(s.truncation()).agrees_with(s) {
                    return Some(fit);
                }
            }
        }
    }
    None
}

fn try_fit<F: Field + Complexity>(c: &[F], nn: usize, nd: usize, val: i64) -> Option<RationalFit<F>> {
    let get = |k: isize| -> F {
        if k < 0 {
            F::zero()
        } else {
            c.get(k as usize).cloned().unwrap_or_else(F::zero)
        }
    };
    // Σ_{j=0}^{nd} d_j c_{k-j} = 0 for k = nn+1..nn+nd with d_0 = 1.
    let mut den = alloc::vec![F::one()];
    if nd > 0 {
        let a = Mat::from_fn(nd, nd, |i, j| get((nn + 1 + i) as isize - (j + 1) as isize));
        let b = Mat::from_fn(nd, 1, |i, _| get((nn + 1 + i) as isize).neg());
        let x = solve(&a, &b).ok()?;
        den.extend(x.column(0));
    }
    let num: Vec<F> = (0..=nn)
        .map(|k| {
            let mut acc = F::zero();
            for (j, dj) in den.iter().enumerate() {
                if j <= k {
                    acc.add_assign(&dj.mul(&get((k - j) as isize)));
                }
            }
            acc
        })
        .collect();
    Some(RationalFit { val, num, den })
}
