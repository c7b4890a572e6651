//! Fock space in the Nakajima basis `|μ⟩ = 𝔷(μ)^{-1} Π α_{-μ_i} v_∅`.
//!
//! Operators are partition-indexed matrices; entry `(μ, ν)` is the
//! coefficient of `|μ⟩` in `Op|ν⟩`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::linalg::Mat;
use crate::algebra::{phi, RatFunc, Ring, Series, EXACT, Q};
use crate::partitions::{Basis, Partition};
use crate::Error;

/// Coefficient rings that contain `Q(s, t1, t2)`.
pub trait Coeff: Ring {
    fn from_ratfunc(r: &RatFunc) -> Self;
    fn map_ratfunc(&self, f: &dyn Fn(&RatFunc) -> RatFunc) -> Self;
}

impl Coeff for RatFunc {
    fn from_ratfunc(r: &RatFunc) -> Self {
        r.clone()
    }
    fn map_ratfunc(&self, f: &dyn Fn(&RatFunc) -> RatFunc) -> Self {
        f(self)
    }
}

impl Coeff for Series {
    fn from_ratfunc(r: &RatFunc) -> Self {
        Series::constant(r.clone(), EXACT)
    }
    fn map_ratfunc(&self, f: &dyn Fn(&RatFunc) -> RatFunc) -> Self {
        self.map(f)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct FockVector<F> {
    d: u32,
    coeffs: BTreeMap<Partition, F>,
}

impl<F: Coeff> FockVector<F> {
    pub fn zero(d: u32) -> Self {
        FockVector {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(mu: &Partition) -> Self {
        let mut v = Self::zero(mu.size());
        v.coeffs.insert(mu.clone(), F::one());
        v
    }

    pub fn vacuum() -> Self {
        Self::basis(&Partition::empty())
    }

    pub fn from_terms(d: u32, terms: impl IntoIterator<Item = (Partition, F)>) -> Result<Self, Error> {
        let mut v = Self::zero(d);
        for (p, c) in terms {
            if p.size() != d {
                return Err(Error::SizeMismatch {
                    expected: d as usize,
                    found: p.size() as usize,
                });
            }
            v.add_term(p, c);
        }
        Ok(v)
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeff(&self, mu: &Partition) -> F {
        self.coeffs.get(mu).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &F)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, p: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&p) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(p, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (p, c) in &o.coeffs {
            r.add_term(p.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut r = Self::zero(self.d);
        for (p, x) in &self.coeffs {
            r.add_term(p.clone(), x.mul(c));
        }
        r
    }

    /// Coordinates in the order of `basis`.
    pub fn to_column(&self, basis: &Basis) -> Vec<F> {
        basis.partitions().iter().map(|p| self.coeff(p)).collect()
    }

    pub fn from_column(basis: &Basis, col: &[F]) -> Self {
        let mut v = Self::zero(basis.degree());
        for (p, c) in basis.partitions().iter().zip(col) {
            v.add_term(p.clone(), c.clone());
        }
        v
    }

    pub fn map(&self, f: &dyn Fn(&RatFunc) -> RatFunc) -> Self {
        let mut r = Self::zero(self.d);
        for (p, c) in &self.coeffs {
            r.add_term(p.clone(), c.map_ratfunc(f));
        }
        r
    }
}

/// `α_k` for `k ≠ 0`; negative `k` creates, positive `k` annihilates.
pub fn alpha<F: Coeff>(k: i32, v: &FockVector<F>) -> FockVector<F> {
    assert!(k != 0);
    let d = (v.d as i64 - k as i64).max(0) as u32;
    let mut out = FockVector::zero(d);
    for (mu, c) in &v.coeffs {
        if let Some((nu, w)) = alpha_basis(k, mu) {
            out.add_term(nu, c.mul(&F::from_i64(w)));
        }
    }
    if k > 0 && v.d < k as u32 {
        out.d = 0;
    }
    out
}

fn alpha_basis(k: i32, mu: &Partition) -> Option<(Partition, i64)> {
    if k < 0 {
        let k = (-k) as u32;
        Some((mu.with_part(k), k as i64 * (mu.multiplicity(k) as i64 + 1)))
    } else {
        mu.without_part(k as u32).map(|nu| (nu, 1))
    }
}

/// Applies `α_{w_1} ⋯ α_{w_n}` (rightmost first) to `|μ⟩`.
fn apply_word(word: &[i32], mu: &Partition) -> Option<(Partition, i64)> {
    let mut cur = mu.clone();
    let mut w = 1i64;
    for &k in word.iter().rev() {
        let (n, c) = alpha_basis(k, &cur)?;
        cur = n;
        w *= c;
    }
    Some((cur, w))
}

/// `⟨μ|μ⟩ = (t1 t2)^{-ℓ} (-1)^{|μ|-ℓ} / 𝔷(μ)`.
pub fn norm(mu: &Partition) -> RatFunc {
    let l = mu.len() as i64;
    let sign = if (mu.size() as i64 - l) % 2 == 0 { 1 } else { -1 };
    RatFunc::t_power(-l, -l).scale(&(Q::from_integer(sign.into()) / mu.zee()))
}

/// `△_d(μ, μ) = (-1)^{d-ℓ} (t1 t2)^ℓ 𝔷(μ)`, the inverse of the pairing.
pub fn delta_d(mu: &Partition) -> RatFunc {
    norm(mu).inv().expect("pairing is nondegenerate")
}

pub fn pairing<F: Coeff>(u: &FockVector<F>, w: &FockVector<F>) -> Result<F, Error> {
    if u.d != w.d {
        return Err(Error::SizeMismatch {
            expected: u.d as usize,
            found: w.d as usize,
        });
    }
    let mut acc = F::zero();
    for (p, c) in &u.coeffs {
        if let Some(x) = w.coeffs.get(p) {
            acc.add_assign(&c.mul(x).mul(&F::from_ratfunc(&norm(p))));
        }
    }
    Ok(acc)
}

#[derive(Clone, PartialEq, Debug)]
pub struct FockOperator<F> {
    basis: Basis,
    mat: Mat<F>,
}

impl<F: Coeff> FockOperator<F> {
    pub fn from_mat(basis: Basis, mat: Mat<F>) -> Self {
        assert_eq!(mat.rows(), basis.len());
        assert_eq!(mat.cols(), basis.len());
        FockOperator { basis, mat }
    }

    pub fn identity(d: u32) -> Self {
        let basis = Basis::new(d);
        let n = basis.len();
        FockOperator {
            basis,
            mat: Mat::identity(n),
        }
    }

    pub fn zero(d: u32) -> Self {
        let basis = Basis::new(d);
        let n = basis.len();
        FockOperator {
            basis,
            mat: Mat::zeros(n, n),
        }
    }

    /// `c_μ |μ⟩ ↦ c_μ w(μ) |μ⟩`.
    pub fn diagonal(d: u32, w: impl Fn(&Partition) -> F) -> Self {
        let basis = Basis::new(d);
        let n = basis.len();
        let mut mat = Mat::zeros(n, n);
        for i in 0..n {
            mat.set(i, i, w(basis.get(i)));
        }
        FockOperator { basis, mat }
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn mat(&self) -> &Mat<F> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<F> {
        self.mat
    }

    /// Coefficient of `|μ⟩` in `Op|ν⟩`.
    pub fn entry(&self, mu: &Partition, nu: &Partition) -> F {
        match (self.basis.index_of(mu), self.basis.index_of(nu)) {
            (Some(i), Some(j)) => self.mat.get(i, j).clone(),
            _ => F::zero(),
        }
    }

    /// `⟨μ|Op|ν⟩ = ⟨μ|μ⟩ · entry(μ, ν)`.
    pub fn bracket(&self, mu: &Partition, nu: &Partition) -> F {
        self.entry(mu, nu).mul(&F::from_ratfunc(&norm(mu)))
    }

    pub fn apply(&self, v: &FockVector<F>) -> FockVector<F> {
        assert_eq!(v.degree(), self.degree());
        let col = self.mat.mul_vec(&v.to_column(&self.basis));
        FockVector::from_column(&self.basis, &col)
    }

    pub fn compose(&self, o: &Self) -> Self {
        FockOperator {
            basis: self.basis.clone(),
            mat: self.mat.mul(&o.mat),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        FockOperator {
            basis: self.basis.clone(),
            mat: self.mat.add(&o.mat),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FockOperator {
            basis: self.basis.clone(),
            mat: self.mat.sub(&o.mat),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        FockOperator {
            basis: self.basis.clone(),
            mat: self.mat.scale(c),
        }
    }

    pub fn map<G: Coeff>(&self, f: impl Fn(&F) -> G) -> FockOperator<G> {
        FockOperator {
            basis: self.basis.clone(),
            mat: self.mat.map(f),
        }
    }

    /// Adjoint for the pairing: `⟨Op^* u, w⟩ = ⟨u, Op w⟩`.
    pub fn adjoint(&self) -> Self {
        let b = &self.basis;
        let mat = Mat::from_fn(b.len(), b.len(), |i, j| {
            let r = norm(b.get(j)).div(&norm(b.get(i))).expect("nonzero norm");
            self.mat.get(j, i).mul(&F::from_ratfunc(&r))
        });
        FockOperator {
            basis: self.basis.clone(),
            mat,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
}

impl FockOperator<Series> {
    /// Entry-wise `q = 0` value; entries must have no negative powers.
    pub fn at_q_zero(&self) -> FockOperator<RatFunc> {
        self.map(|s| {
            assert!(s.is_zero() || s.valuation() >= 0);
            s.coeff(0)
        })
    }

    pub fn truncate(&self, t: i64) -> Self {
        self.map(|s| s.truncate(t))
    }
}

/// The cubic part `½ Σ_{k,l>0} [t1 t2 α_{k+l} α_{-k} α_{-l} - α_{-k-l} α_k α_l]`.
pub fn split_join(d: u32) -> FockOperator<RatFunc> {
    let basis = Basis::new(d);
    let n = basis.len();
    let t12 = RatFunc::t_power(1, 1);
    let mut mat: Mat<RatFunc> = Mat::zeros(n, n);
    for (j, nu) in basis.partitions().iter().enumerate() {
        let mut col: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        let mut add = |p: Partition, c: RatFunc| {
            let e = col.entry(p).or_insert_with(RatFunc::zero);
            *e = e.add(&c);
        };
        let half = RatFunc::from_frac(1, 2);
        for k in 1..=d as i32 {
            for l in 1..=(d as i32 - k) {
                if let Some((p, w)) = apply_word(&[k + l, -k, -l], nu) {
                    add(p, half.mul(&t12).mul(&RatFunc::from_int(w)));
                }
                if let Some((p, w)) = apply_word(&[-k - l, k, l], nu) {
                    add(p, half.mul(&RatFunc::from_int(-w)));
                }
            }
        }
        for (p, c) in col {
            let i = basis.index_of(&p).expect("degree preserved");
            mat.set(i, j, c);
        }
    }
    FockOperator::from_mat(basis, mat)
}

/// `|·|`, eigenvalue `|μ|`.
pub fn energy(d: u32) -> FockOperator<RatFunc> {
    FockOperator::diagonal(d, |mu| RatFunc::from_int(mu.size() as i64))
}

fn t_sum() -> RatFunc {
    RatFunc::t1().add(&RatFunc::t2())
}

/// Classical multiplication by `D = c_1(O/I)`.
pub fn operator_d_classical(d: u32) -> FockOperator<RatFunc> {
    let diag = FockOperator::diagonal(d, |mu| {
        let mut s = Q::from_integer(0.into());
        for &k in mu.parts() {
            s += Q::new((k as i64 - 1).into(), 2.into()) * Q::from_integer((k as i64).into());
        }
        t_sum().scale(&s).neg()
    });
    diag.add(&split_join(d))
}

/// `((-q)^k + 1)/((-q)^k - 1)` through `q^trunc`.
pub fn f_k(k: u32, trunc: i64) -> Series {
    // = -1 - 2 Σ_{n≥1} (-q)^{kn}
    let mut c = alloc::vec![RatFunc::zero(); (trunc.max(0) + 1) as usize];
    c[0] = RatFunc::from_int(-1);
    let mut m = k as i64;
    while m <= trunc {
        let sign = if m % 2 == 0 { -2 } else { 2 };
        c[m as usize] = RatFunc::from_int(sign);
        m += k as i64;
    }
    Series::new(0, c, trunc)
}

/// The operator `M(q, t1, t2)`.
pub fn operator_m(d: u32, trunc: i64) -> FockOperator<Series> {
    let fs: Vec<Series> = (1..=d.max(1)).map(|k| f_k(k, trunc)).collect();
    let diag = FockOperator::diagonal(d, |mu| {
        let mut acc = Series::zero(trunc);
        for &k in mu.parts() {
            let w = t_sum().scale(&Q::new(((k * k) as i64).into(), 2.into()));
            acc = acc.add(&fs[k as usize - 1].scale(&w));
        }
        acc
    });
    diag.add(&split_join(d).map(Series::from_ratfunc))
}

/// `M` at `q = 0`, where every `f_k` is `-1`.
pub fn operator_m_at_zero(d: u32) -> FockOperator<RatFunc> {
    let diag = FockOperator::diagonal(d, |mu| {
        let s: i64 = mu.parts().iter().map(|&k| (k * k) as i64).sum();
        t_sum().scale(&Q::new((-s).into(), 2.into()))
    });
    diag.add(&split_join(d))
}

/// `M_σ = M - (t1 + t2) Φ(q) Id`.
pub fn operator_msigma(d: u32, trunc: i64) -> FockOperator<Series> {
    let shift = phi(trunc).scale(&t_sum());
    let id = FockOperator::<Series>::identity(d).scale(&shift);
    operator_m(d, trunc).sub(&id)
}

/// `M_D = M - ((t1 + t2)/2) ((-q)+1)/((-q)-1) |·|`.
pub fn operator_md(d: u32, trunc: i64) -> FockOperator<Series> {
    let c = f_k(1, trunc).scale(&t_sum().scale(&Q::new((d as i64).into(), 2.into())));
    operator_m(d, trunc).sub(&FockOperator::<Series>::identity(d).scale(&c))
}

/// The class `D = -|2, 1^{d-2}⟩`, zero for `d ≤ 1`.
pub fn class_d(d: u32) -> FockVector<RatFunc> {
    if d < 2 {
        return FockVector::zero(d);
    }
    let mut parts = alloc::vec![2];
    parts.extend(core::iter::repeat_n(1, d as usize - 2));
    FockVector::basis(&Partition::new(parts)).scale(&RatFunc::from_int(-1))
}

/// The unit `|1^d⟩`.
pub fn unit(d: u32) -> FockVector<RatFunc> {
    FockVector::basis(&Partition::ones(d))
}
