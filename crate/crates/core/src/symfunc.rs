//! Symmetric functions in the power-sum basis and the torus-fixed classes
//! of the Hilbert scheme in Nakajima coordinates.
//!
//! A power sum `p_ν` corresponds to `t2^{ℓ(ν)} α_{-ν} v_∅`. Under this
//! identification the fixed-point classes are Jack functions with parameter
//! `-t2/t1`, triangular in the monomial basis for dominance order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::linalg::{inverse, Mat};
use crate::algebra::{RatFunc, Series, Q};
use crate::fock::{pairing, FockVector};
use crate::partitions::{factorial, gen_partitions, Basis, Characters, Partition};

#[derive(Clone, PartialEq, Debug)]
pub struct SymFunc {
    d: u32,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymFunc {
    pub fn zero(d: u32) -> Self {
        SymFunc {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn power_sum(nu: &Partition) -> Self {
        let mut f = Self::zero(nu.size());
        f.coeffs.insert(nu.clone(), RatFunc::one());
        f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeff(&self, nu: &Partition) -> RatFunc {
        self.coeffs.get(nu).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, nu: Partition, c: RatFunc) {
        let v = self.coeff(&nu).add(&c);
        if v.is_zero() {
            self.coeffs.remove(&nu);
        } else {
            self.coeffs.insert(nu, v);
        }
    }

    /// `p_ν ↦ t2^{ℓ(ν)} α_{-ν} v_∅ = 𝔷(ν) t2^{ℓ(ν)} |ν⟩`.
    pub fn to_fock(&self) -> FockVector<RatFunc> {
        let terms = self.coeffs.iter().map(|(nu, c)| {
            let l = nu.len() as i64;
            (nu.clone(), c.mul(&RatFunc::t_power(0, l)).scale(&nu.zee()))
        });
        FockVector::from_terms(self.d, terms).expect("degrees agree")
    }
}

/// `s_μ = Σ_λ χ^μ_λ p_λ / 𝔷(λ)`.
pub fn schur_in_p(mu: &Partition) -> SymFunc {
    let mut ch = Characters::new();
    let mut f = SymFunc::zero(mu.size());
    for lam in gen_partitions(mu.size()) {
        let c = ch.get(mu, &lam).expect("equal sizes") / lam.zee();
        f.add_term(lam, RatFunc::constant(c));
    }
    f
}

fn geometric(k: u32, trunc: i64) -> Series {
    let mut c = alloc::vec![RatFunc::zero(); (trunc.max(0) + 1) as usize];
    let mut m = 0i64;
    while m <= trunc {
        c[m as usize] = RatFunc::one();
        m += k as i64;
    }
    Series::new(0, c, trunc)
}

/// `s_μ(1, q, q², …) = q^{n(μ)} Π 1/(1 - q^{h(□)})`.
pub fn schur_specialize(mu: &Partition, trunc: i64) -> Series {
    let mut acc = Series::one(trunc).shift(mu.n() as i64).truncate(trunc);
    for h in mu.hooks() {
        acc = acc.mul(&geometric(h, trunc));
    }
    acc
}

/// The same specialization through the power-sum expansion.
pub fn schur_specialize_via_p(mu: &Partition, trunc: i64) -> Series {
    let mut acc = Series::zero(trunc);
    for (lam, c) in schur_in_p(mu).terms() {
        let mut term = Series::constant(c.clone(), trunc);
        for &k in lam.parts() {
            term = term.mul(&geometric(k, trunc));
        }
        acc = acc.add(&term);
    }
    acc
}

/// `p_k(1, -q, q², …) = 1/(1 - (-q)^k)`.
pub fn powersum_specialize(k: u32, trunc: i64) -> Series {
    crate::algebra::geometric_neg(k as i64, trunc)
}

/// Tangent weights at the fixed point: per cell `l t1 - (a+1) t2` and `-(l+1) t1 + a t2`.
pub fn tangent_weights(mu: &Partition) -> Vec<RatFunc> {
    let mut w = Vec::new();
    for c in mu.cell_data() {
        let (a, l) = (c.arm as i64, c.leg as i64);
        w.push(lin(l, -(a + 1)));
        w.push(lin(-(l + 1), a));
    }
    w
}

fn lin(a: i64, b: i64) -> RatFunc {
    RatFunc::from_int(a)
        .mul(&RatFunc::t1())
        .add(&RatFunc::from_int(b).mul(&RatFunc::t2()))
}

pub fn euler_class(mu: &Partition) -> RatFunc {
    tangent_weights(mu)
        .iter()
        .fold(RatFunc::one(), |acc, w| acc.mul(w))
}

/// `L[λ][μ]`: coefficient of `m_μ` in `p_λ`.
fn p_to_m(d: u32) -> (Vec<Partition>, Mat<Q>) {
    let ps = gen_partitions(d);
    let n = ps.len();
    let mat = Mat::from_fn(n, n, |i, j| {
        let target: Vec<u32> = ps[j].parts().to_vec();
        let mut bins = alloc::vec![0u32; target.len()];
        Q::from_integer(count_fillings(ps[i].parts(), &target, &mut bins))
    });
    (ps, mat)
}

/// Ways to place the parts into bins so that bin `j` sums to `target[j]`.
fn count_fillings(parts: &[u32], target: &[u32], bins: &mut [u32]) -> BigInt {
    match parts.split_first() {
        None => {
            if bins.iter().zip(target).all(|(a, b)| a == b) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }
        Some((&p, rest)) => {
            let mut total = BigInt::zero();
            for j in 0..bins.len() {
                if bins[j] + p <= target[j] {
                    bins[j] += p;
                    total += count_fillings(rest, target, bins);
                    bins[j] -= p;
                }
            }
            total
        }
    }
}

/// Monomial symmetric functions `m_μ` in the power-sum basis.
pub fn monomial_in_p(d: u32) -> BTreeMap<Partition, SymFunc> {
    let (ps, l) = p_to_m(d);
    let inv = inverse(&l).expect("power sums form a basis");
    let mut out = BTreeMap::new();
    for (j, mu) in ps.iter().enumerate() {
        let mut f = SymFunc::zero(d);
        for (i, lam) in ps.iter().enumerate() {
            let c = inv.get(j, i);
            if !c.is_zero() {
                f.add_term(lam.clone(), RatFunc::constant(c.clone()));
            }
        }
        out.insert(mu.clone(), f);
    }
    out
}

/// All fixed-point classes `[I_μ]` of degree `d`, in the order of `gen_partitions`.
///
/// Normalized so that the coefficient of `|1^d⟩` is `d! (t1 t2)^d`, which
/// makes `⟨[I_μ], [I_μ]⟩ = e(T_μ)`.
pub fn fixed_point_classes(d: u32) -> Vec<(Partition, FockVector<RatFunc>)> {
    let basis = Basis::new(d);
    let ms = monomial_in_p(d);
    let ones = Partition::ones(d);
    let target = RatFunc::t_power(d as i64, d as i64).scale(&Q::from_integer(factorial(d)));
    let mut done: Vec<(Partition, FockVector<RatFunc>, RatFunc)> = Vec::new();
    // ascending lexicographic order extends dominance
    for mu in basis.partitions().iter().rev() {
        let m = ms[mu].to_fock();
        let mut v = m.clone();
        for (_, w, ww) in &done {
            let c = pairing(&m, w).expect("same degree").div(ww).expect("nonzero norm");
            v = v.sub(&w.scale(&c));
        }
        let vv = pairing(&v, &v).expect("same degree");
        assert!(!vv.is_zero(), "degenerate fixed-point Gram matrix");
        done.push((mu.clone(), v, vv));
    }
    let mut out: Vec<(Partition, FockVector<RatFunc>)> = done
        .into_iter()
        .map(|(mu, v, _)| {
            let c = v.coeff(&ones);
            let s = target.div(&c).expect("unit coefficient is nonzero");
            (mu, v.scale(&s))
        })
        .collect();
    out.reverse();
    out
}

pub fn fixed_point_class(mu: &Partition) -> FockVector<RatFunc> {
    fixed_point_classes(mu.size())
        .into_iter()
        .find(|(p, _)| p == mu)
        .map(|(_, v)| v)
        .expect("partition of its own size")
}

/// `[I_μ] / e(T_μ)`, the idempotent with self-pairing `1/e(T_μ)`.
pub fn fixed_point_idempotent(mu: &Partition) -> FockVector<RatFunc> {
    let e = euler_class(mu);
    fixed_point_class(mu).scale(&e.inv().expect("nonzero Euler class"))
}
