//! Exact scalars, polynomials, rational functions and truncated q-series.

pub mod field;
pub mod fit;
pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod split;
pub mod text;

pub use field::{Field, Ring};
pub use poly::{Mono, MultiPoly, Var};
pub use ratfunc::RatFunc;
pub use series::{QSeries, EXACT};
pub use split::{Lin, SplitFrac};

/// Arbitrary-precision rational number.
pub type Q = num_rational::BigRational;

/// The coefficient field of every series in the engine.
pub type Series = QSeries<RatFunc>;

/// `q` as an exact series.
pub fn q_monomial(k: i64) -> Series {
    Series::monomial(RatFunc::one(), k, EXACT)
}

/// The MacMahon function `M(q) = Π (1 - q^n)^{-n}` through `q^trunc`.
pub fn macmahon(trunc: i64) -> Series {
    macmahon_q(trunc).map(|c| RatFunc::constant(c.clone()))
}

/// `M(-q)`.
pub fn macmahon_neg(trunc: i64) -> Series {
    macmahon(trunc).negate_q()
}

/// Integer-coefficient MacMahon series via `n m_n = Σ σ₂(k) m_{n-k}`.
pub fn macmahon_q(trunc: i64) -> QSeries<Q> {
    let t = trunc.max(0) as usize;
    let sigma2: alloc::vec::Vec<Q> = (0..=t)
        .map(|k| {
            let mut s = 0i64;
            for d in 1..=k {
                if k % d == 0 {
                    s += (d * d) as i64;
                }
            }
            Q::from_integer(s.into())
        })
        .collect();
    let mut m: alloc::vec::Vec<Q> = alloc::vec![Q::from_integer(1.into())];
    for n in 1..=t {
        let mut acc = Q::from_integer(0.into());
        for k in 1..=n {
            acc += &sigma2[k] * &m[n - k];
        }
        m.push(acc / Q::from_integer((n as i64).into()));
    }
    QSeries::new(0, m, trunc)
}

/// `Φ(q) = q d/dq log M(-q) = Σ_n n² (-q)^n / (1 - (-q)^n)`.
pub fn phi(trunc: i64) -> Series {
    let t = trunc.max(0);
    let mut c = alloc::vec![RatFunc::zero(); (t + 1) as usize];
    for n in 1..=t {
        let mut m = n;
        while m <= t {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let prev = c[m as usize].clone();
            c[m as usize] = prev.add(&RatFunc::from_int(sign * n * n));
            m += n;
        }
    }
    Series::new(0, c, trunc)
}

/// `1 / (1 - (-q)^k)` through `q^trunc`.
pub fn geometric_neg(k: i64, trunc: i64) -> Series {
    let mut c = alloc::vec![RatFunc::zero(); (trunc.max(0) + 1) as usize];
    let mut m = 0;
    while m <= trunc {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        c[m as usize] = RatFunc::from_int(sign);
        m += k;
    }
    Series::new(0, c, trunc)
}

/// `(-q)^a` for odd or even `a`, exact.
pub fn neg_q_power(a: i64) -> Series {
    let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
    Series::monomial(RatFunc::from_int(sign), a, EXACT)
}
