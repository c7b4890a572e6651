//! The 1-legged equivariant vertex.
//!
//! `W'(μ) = W(μ,∅,∅) / W(∅,∅,∅)` is recovered from the level `(-1,0)` cap:
//! localizing the cap over the fixed points `I_μ` gives one equation per
//! `λ ⊢ d`, and in the eigenbasis of `M(0)` the system is triangular in `q`.
//!
//! Solver frame: leg weight `s1 = s`, transverse weights `s2 = t1 - s`,
//! `s3 = t2`. General frame: the slots `(s, t1, t2)` hold `(s1, s2, s3)`, so
//! the passage is `t1 ↦ s + t1` and back `t1 ↦ t1 - s`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{macmahon_neg, phi, Lin, MultiPoly, QSeries, RatFunc, Ring, Series, SplitFrac, Var, Q};
use crate::fock::norm;
use crate::partitions::Partition;
use crate::rubber::{s_coefficients_split, s_tilde, Eigenframe};
use crate::symfunc::{fixed_point_class, tangent_weights};
use crate::Error;

/// Torus weights `(s1, s2, s3)` on the three coordinate directions; `s1` is the leg.
#[derive(Clone, PartialEq, Debug)]
pub struct Weights {
    pub s1: RatFunc,
    pub s2: RatFunc,
    pub s3: RatFunc,
}

impl Weights {
    pub fn new(s1: RatFunc, s2: RatFunc, s3: RatFunc) -> Self {
        Weights { s1, s2, s3 }
    }

    /// `(s, t1 - s, t2)`.
    pub fn solver() -> Self {
        Weights::new(RatFunc::s(), RatFunc::t1().sub(&RatFunc::s()), RatFunc::t2())
    }

    /// `(s, t1, t2)`, read as `(s1, s2, s3)`.
    pub fn general() -> Self {
        Weights::new(RatFunc::s(), RatFunc::t1(), RatFunc::t2())
    }

    pub fn of(frame: Frame) -> Self {
        match frame {
            Frame::Solver => Weights::solver(),
            Frame::General => Weights::general(),
        }
    }

    fn check(&self) -> Result<(), Error> {
        if self.s1.is_zero() || self.s2.is_zero() || self.s3.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Frame {
    Solver,
    General,
}

/// `W(μ,∅,∅)` or its reduced form `W'(μ)` as a series over `Q(s, t1, t2)`.
#[derive(Clone, PartialEq, Debug)]
pub struct VertexSeries {
    pub profile: Partition,
    pub frame: Frame,
    pub reduced: bool,
    pub value: Series,
}

impl VertexSeries {
    /// The same series in the general frame.
    pub fn to_general(&self) -> VertexSeries {
        let value = match self.frame {
            Frame::General => self.value.clone(),
            Frame::Solver => {
                let sub = [(Var::T1, RatFunc::s().add(&RatFunc::t1()))];
                self.value.map(|c| c.substitute_all(&sub))
            }
        };
        VertexSeries {
            frame: Frame::General,
            value,
            ..self.clone()
        }
    }

    /// Multiplies a reduced series by the empty vertex of its frame.
    pub fn unreduced(&self) -> Result<VertexSeries, Error> {
        if !self.reduced {
            return Ok(self.clone());
        }
        let empty = closed_vertex_empty(&Weights::of(self.frame), self.value.truncation())?;
        Ok(VertexSeries {
            reduced: false,
            value: self.value.mul(&empty),
            ..self.clone()
        })
    }

    /// `s1 + s2 + s3 = 0`, i.e. `t2 = -t1` in the solver frame.
    pub fn calabi_yau(&self) -> Result<Series, Error> {
        let sub = match self.frame {
            Frame::Solver => [(Var::T2, RatFunc::t1().neg())],
            Frame::General => [(Var::T2, RatFunc::s().add(&RatFunc::t1()).neg())],
        };
        self.value.try_map(|c| c.try_substitute_all(&sub))
    }
}

fn empty_exponent(w: &Weights) -> Result<RatFunc, Error> {
    w.check()?;
    let num = w.s1.add(&w.s2).mul(&w.s1.add(&w.s3)).mul(&w.s2.add(&w.s3));
    let den = w.s1.mul(&w.s2).mul(&w.s3);
    Ok(num.div(&den).ok_or(Error::DivisionByZero)?.neg())
}

/// `M(-q)^{-(s1+s2)(s1+s3)(s2+s3)/(s1 s2 s3)}`.
pub fn closed_vertex_empty(w: &Weights, trunc: i64) -> Result<Series, Error> {
    macmahon_neg(trunc).pow_exponent(&empty_exponent(w)?)
}

/// The empty vertex relative to a divisor transverse to the leg, `M(-q)^{-(s2+s3)/s1}`.
pub fn closed_vertex_empty_relative(w: &Weights, trunc: i64) -> Result<Series, Error> {
    w.check()?;
    let e = w.s2.add(&w.s3).div(&w.s1).ok_or(Error::DivisionByZero)?.neg();
    macmahon_neg(trunc).pow_exponent(&e)
}

/// Reduced degree-1 vertex `(1+q)^{(s2+s3)/s1}`.
pub fn closed_vertex_deg1_reduced(w: &Weights, trunc: i64) -> Result<Series, Error> {
    w.check()?;
    let e = w.s2.add(&w.s3).div(&w.s1).ok_or(Error::DivisionByZero)?;
    let one_plus_q = Series::from_poly(alloc::vec![RatFunc::one(), RatFunc::one()], trunc);
    one_plus_q.pow_exponent(&e)
}

pub fn closed_vertex_deg1(w: &Weights, trunc: i64) -> Result<Series, Error> {
    Ok(closed_vertex_deg1_reduced(w, trunc)?.mul(&closed_vertex_empty(w, trunc)?))
}

/// Limit at `s = 0` of the exponent sum of the two vertices over a rational
/// curve with normal degrees `(k1, k2)`: `-2(t1+t2)²/(t1t2) - (k1+k2)`.
pub fn degree0_cap_exponent(k1: i64, k2: i64) -> Result<RatFunc, Error> {
    let s = RatFunc::s();
    let near = Weights::new(
        s.clone(),
        RatFunc::t1().add(&s.mul(&RatFunc::from_int(k1))),
        RatFunc::t2().add(&s.mul(&RatFunc::from_int(k2))),
    );
    let far = Weights::new(s.neg(), RatFunc::t1(), RatFunc::t2());
    empty_exponent(&near)?
        .add(&empty_exponent(&far)?)
        .try_substitute_all(&[(Var::S, RatFunc::zero())])
}

fn content_with(lambda: &Partition, a: &RatFunc, b: &RatFunc) -> RatFunc {
    let (mut i_sum, mut j_sum) = (0i64, 0i64);
    for (i, j) in lambda.cells() {
        i_sum += i as i64;
        j_sum += j as i64;
    }
    a.mul(&RatFunc::from_int(i_sum)).add(&b.mul(&RatFunc::from_int(j_sum)))
}

/// The σ₁-weighted vertex `(-s1 q d/dq + c(λ; s2, s3) + |λ|(s2+s3)/2) W` of the unreduced `W`.
///
/// Only the derivative carries `s1`: the restriction of `ch_3` of the universal
/// ideal is `s2 s3 (-s1 |π| + c(λ; s2, s3) + |λ|(s2+s3)/2)`.
pub fn descendent_vertex(w: &VertexSeries) -> Result<Series, Error> {
    let full = w.unreduced()?;
    let wts = Weights::of(w.frame);
    let lambda = &w.profile;
    let shift = content_with(lambda, &wts.s2, &wts.s3).add(
        &wts.s2
            .add(&wts.s3)
            .mul(&RatFunc::from_frac(lambda.size() as i64, 2)),
    );
    let v = &full.value;
    Ok(v.scale(&shift).sub(&v.qderiv().scale(&wts.s1)))
}

fn at_s_zero(x: &Series) -> Result<Series, Error> {
    x.try_map(|c| c.try_substitute_all(&[(Var::S, RatFunc::zero())]))
}

fn general_vertex(profile: Partition, value: Series) -> VertexSeries {
    VertexSeries {
        profile,
        frame: Frame::General,
        reduced: false,
        value,
    }
}

fn mirror_s(x: &Series) -> Series {
    x.map(|c| c.substitute_all(&[(Var::S, RatFunc::s().neg())]))
}

fn degree0_correction(trunc: i64) -> Result<Series, Error> {
    // M(-q)^{2(t1+t2)²/(t1t2)} undoes the level (0,0) tube normalization
    let e = degree0_cap_exponent(0, 0)?.neg();
    macmahon_neg(trunc).pow_exponent(&e)
}

/// `⟨∅|σ₁(F)|∅⟩` assembled from two vertices glued along `P¹`.
pub fn sigma1_empty_bracket(trunc: i64) -> Result<Series, Error> {
    let w = general_vertex(Partition::empty(), closed_vertex_empty(&Weights::general(), trunc)?);
    let ws = descendent_vertex(&w)?;
    let glued = at_s_zero(&ws.mul(&mirror_s(&w.value)))?;
    Ok(glued.mul(&degree0_correction(trunc)?))
}

/// `⟨(1)|σ₁(F)|(1)⟩ / ⟨(1)|(1)⟩` assembled from the degree-1 vertices.
pub fn sigma1_degree1_ratio(trunc: i64) -> Result<Series, Error> {
    let one = Partition::new(alloc::vec![1]);
    let w = general_vertex(one, closed_vertex_deg1(&Weights::general(), trunc)?);
    let ws = descendent_vertex(&w)?;
    // edge q/(t1 t2) against the pairing 1/(t1 t2)
    let glued = at_s_zero(&ws.mul(&mirror_s(&w.value)).shift(1))?;
    Ok(glued.mul(&degree0_correction(trunc)?))
}

/// `(t1 + t2) Φ(q)`.
pub fn sigma1_empty_closed(trunc: i64) -> Series {
    phi(trunc).scale(&RatFunc::t1().add(&RatFunc::t2()))
}

/// `((t1+t2)/2) q(1-q)/(1+q) + (t1+t2) q Φ(q)`.
pub fn sigma1_degree1_closed(trunc: i64) -> Result<Series, Error> {
    let ts = RatFunc::t1().add(&RatFunc::t2());
    let num = Series::from_poly(alloc::vec![RatFunc::one(), RatFunc::from_int(-1)], trunc);
    let den = Series::from_poly(alloc::vec![RatFunc::one(), RatFunc::one()], trunc);
    let first = num.div(&den)?.shift(1).scale(&ts.mul(&RatFunc::from_frac(1, 2)));
    Ok(first.add(&phi(trunc).shift(1).scale(&ts)).truncate(trunc))
}

/// Laurent polynomial in `x0, x1, x2` with integer coefficients.
pub type Laurent = BTreeMap<[i64; 3], i64>;

fn laurent_add(acc: &mut Laurent, k: [i64; 3], c: i64) {
    let e = acc.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&k);
    }
}

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            laurent_add(&mut out, [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]], ca * cb);
        }
    }
    out
}

fn laurent(terms: &[([i64; 3], i64)]) -> Laurent {
    let mut out = Laurent::new();
    for &(k, c) in terms {
        laurent_add(&mut out, k, c);
    }
    out
}

/// `Q_μ = Σ x1^i x2^j` over the cells of `μ`.
pub fn cell_character(mu: &Partition) -> Laurent {
    let mut out = Laurent::new();
    for (i, j) in mu.cells() {
        laurent_add(&mut out, [0, i as i64, j as i64], 1);
    }
    out
}

/// `F_μ = -Q - Q̄/(x1x2) + Q Q̄ (1-x1)(1-x2)/(x1x2)`.
pub fn tangent_character(mu: &Partition) -> Laurent {
    let q = cell_character(mu);
    let qbar: Laurent = q.iter().map(|(k, &c)| ([0, -k[1], -k[2]], c)).collect();
    let mut out = Laurent::new();
    for (k, c) in &q {
        laurent_add(&mut out, *k, -c);
    }
    for (k, c) in &qbar {
        laurent_add(&mut out, [0, k[1] - 1, k[2] - 1], -c);
    }
    let tail = laurent(&[([0, -1, -1], 1), ([0, 0, -1], -1), ([0, -1, 0], -1), ([0, 0, 0], 1)]);
    for (k, c) in laurent_mul(&laurent_mul(&q, &qbar), &tail) {
        laurent_add(&mut out, k, c);
    }
    out
}

/// `-Σ (x1^l x2^{-a-1} + x1^{-l-1} x2^a)` over cells with arm `a` and leg `l`.
pub fn arm_leg_character(mu: &Partition) -> Laurent {
    let mut out = Laurent::new();
    for c in mu.cell_data() {
        let (a, l) = (c.arm as i64, c.leg as i64);
        laurent_add(&mut out, [0, l, -a - 1], -1);
        laurent_add(&mut out, [0, -l - 1, a], -1);
    }
    out
}

/// `E_μ = F(x1,x2)/(x0-1) + F(x1x0,x2)/(x0^{-1}-1) = (F - x0 F(x1x0,x2))/(x0-1)`.
pub fn edge_character(mu: &Partition) -> Result<Laurent, Error> {
    let f = arm_leg_character(mu);
    let mut num = f.clone();
    for (k, c) in &f {
        laurent_add(&mut num, [k[0] + k[1] + 1, k[1], k[2]], -c);
    }
    // divide each x0-polynomial slice by (x0 - 1)
    let mut slices: BTreeMap<[i64; 2], BTreeMap<i64, i64>> = BTreeMap::new();
    for (k, c) in num {
        slices.entry([k[1], k[2]]).or_default().insert(k[0], c);
    }
    let mut out = Laurent::new();
    for (k12, poly) in slices {
        let lo = *poly.keys().next().expect("nonempty slice");
        let hi = *poly.keys().next_back().expect("nonempty slice");
        // synthetic division from the top: quotient coefficients b_{e-1}
        let mut carry = 0i64;
        for e in (lo + 1..=hi).rev() {
            carry += poly.get(&e).copied().unwrap_or(0);
            if carry != 0 {
                laurent_add(&mut out, [e - 1, k12[0], k12[1]], carry);
            }
        }
        if carry + poly.get(&lo).copied().unwrap_or(0) != 0 {
            return Err(Error::NotLaurent);
        }
    }
    Ok(out)
}

/// The edge weight of the level `(-1,0)` cap at the fixed point `μ`.
#[derive(Clone, PartialEq, Debug)]
pub struct EdgeWeight {
    pub profile: Partition,
    pub value: RatFunc,
}

/// Factors `(unit, [(linear form, exponent)])` of the edge weight.
///
/// Each monomial `x^k` stands for the weight `-(k0 s + k1 (t1 - s) + k2 t2)`;
/// the negation keeps the anti-diagonal value at `(-1)^{n(μ)} t2^{-d}/Π h`.
fn edge_factors(mu: &Partition) -> Result<Vec<(MultiPoly, i64)>, Error> {
    let e = edge_character(mu)?;
    let mut out = Vec::new();
    for (k, a) in e {
        let form = MultiPoly::from_terms(alloc::vec![
            (crate::algebra::Mono::var(Var::S), Q::from_integer((k[1] - k[0]).into())),
            (crate::algebra::Mono::var(Var::T1), Q::from_integer((-k[1]).into())),
            (crate::algebra::Mono::var(Var::T2), Q::from_integer((-k[2]).into())),
        ]);
        if form.is_zero() {
            return Err(Error::DivisionByZero);
        }
        out.push((form, -a));
    }
    Ok(out)
}

fn factors_to_split(f: &[(MultiPoly, i64)], invert: bool) -> SplitFrac {
    let mut acc = SplitFrac::one();
    for (form, e) in f {
        let e = if invert { -e } else { *e };
        let (unit, lin) = Lin::from_poly(form).expect("edge weights are linear forms");
        let piece = if e >= 0 {
            SplitFrac::from_poly(form.pow(e as u32))
        } else {
            SplitFrac::inv_lin(lin, (-e) as u32).scale(&unit.recip().pow((-e) as i32))
        };
        acc = Ring::mul(&acc, &piece);
    }
    acc
}

pub fn edge_weight_m10(mu: &Partition) -> Result<EdgeWeight, Error> {
    let f = edge_factors(mu)?;
    Ok(EdgeWeight {
        profile: mu.clone(),
        value: factors_to_split(&f, false).to_ratfunc(),
    })
}

/// `(-1)^{n(μ)} t2^{-d} / Π h(□)`.
pub fn edge_weight_anti_diagonal(mu: &Partition) -> RatFunc {
    let sign = if mu.n().is_multiple_of(2) { 1 } else { -1 };
    let h = Q::from_integer(mu.hook_product());
    RatFunc::constant(Q::from_integer(sign.into()) / h).mul(&RatFunc::t2().pow(-(mu.size() as i64)))
}

/// `q^d/𝔷(λ) Π 1/(1 - (-q)^{λ_i})`, the closed form of the level `(-1,0)` cap
/// localization with the `t2^{-ℓ(λ)}` factor cleared.
pub fn cap_m10_lhs(lambda: &Partition, trunc: i64) -> Series {
    let mut acc = Series::one(trunc);
    for &k in lambda.parts() {
        acc = acc.mul(&crate::algebra::geometric_neg(k as i64, trunc));
    }
    acc.scale(&RatFunc::constant(lambda.zee().recip()))
        .shift(lambda.size() as i64)
        .truncate(trunc)
}

fn geometric_product(lambda: &Partition, trunc: i64) -> Vec<Q> {
    let mut c = alloc::vec![Q::zero(); (trunc + 1) as usize];
    c[0] = Q::one();
    for &k in lambda.parts() {
        // multiply by 1/(1 - (-q)^k): c_n += (-1)^k c_{n-k}
        let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
        for n in (k as usize)..=(trunc as usize) {
            let add = &c[n - k as usize] * &sign;
            c[n] += add;
        }
    }
    c
}

/// `t ↦ t/z` with `z = -s`.
fn dilation_images() -> [(MultiPoly, Option<(Lin, u32)>); 3] {
    let s = Lin::var(Var::S);
    [
        (MultiPoly::var(Var::S), None),
        (MultiPoly::var(Var::T1).neg(), Some((s, 1))),
        (MultiPoly::var(Var::T2).neg(), Some((s, 1))),
    ]
}

fn dilate(x: &SplitFrac) -> SplitFrac {
    x.substitute_linear(&dilation_images())
        .expect("dilation keeps denominators linear")
        .reduced()
}

/// `(-s)^{-a} t2^{-b}`.
fn s_t2_inverse(a: u32, b: u32) -> SplitFrac {
    let sign = if a.is_multiple_of(2) { Q::one() } else { -Q::one() };
    Ring::mul(&SplitFrac::inv_lin(Lin::var(Var::S), a), &SplitFrac::inv_lin(Lin::var(Var::T2), b)).scale(&sign)
}

fn series_to_ratfunc(x: &QSeries<SplitFrac>) -> Series {
    x.map(|c| c.to_ratfunc())
}

/// Reduced vertices `W'(μ)` for all `μ ⊢ d` in the solver frame, through `q^qmax`,
/// with coefficients kept split over linear forms.
///
/// With `X_{μλ} = ⟨λ|S|I_μ⟩ = (S~^T P^T N)_{μλ}` the cap identity reads
/// `S~(t/z) u = y`, `y_μ = (B^T P(t/z))_μ / e_μ(t/z)`, where
/// `u_μ = W'(μ) q^{n(μ)} E(μ)` and `B_λ = Π 1/(1-(-q)^{λ_i}) / (𝔷(λ) z^{d-ℓ} t2^ℓ)`.
pub fn solve_vertex_split(d: u32, qmax: i64) -> Result<Vec<(Partition, QSeries<SplitFrac>)>, Error> {
    if d == 0 {
        return Ok(alloc::vec![(Partition::empty(), QSeries::one(qmax))]);
    }
    let frame = Eigenframe::new(d);
    let parts = frame.partitions.clone();
    let n = parts.len();
    let shifts: Vec<i64> = parts.iter().map(|mu| mu.n() as i64).collect();
    let order = qmax + shifts.iter().copied().max().unwrap_or(0);
    let tilde: Vec<_> = s_tilde(&frame, order)?
        .iter()
        .map(|m| m.map(dilate))
        .collect();
    // 1/e(t/z) = z^{2d}/e(t)
    let s_pow = SplitFrac::from_poly(MultiPoly::var(Var::S).pow(2 * d));
    let mut inv_e = Vec::with_capacity(n);
    for mu in &parts {
        let ws: Vec<MultiPoly> = tangent_weights(mu).iter().map(|w| w.num().clone()).collect();
        let ie = SplitFrac::inv_product(&ws).ok_or(Error::DivisionByZero)?;
        inv_e.push(Ring::mul(&ie, &s_pow));
    }
    let weighted: Vec<Vec<SplitFrac>> = parts
        .iter()
        .enumerate()
        .map(|(li, lambda)| {
            let l = lambda.len() as u32;
            let c = s_t2_inverse(d - l, l).scale(&lambda.zee().recip());
            (0..n)
                .map(|mi| Ring::mul(&Ring::mul(&c, &dilate(frame.p.get(li, mi))), &inv_e[mi]).reduced())
                .collect()
        })
        .collect();
    let geo: Vec<Vec<Q>> = parts.iter().map(|l| geometric_product(l, order)).collect();
    let mut u: Vec<Vec<SplitFrac>> = Vec::new();
    for k in 0..=order as usize {
        let mut col: Vec<SplitFrac> = (0..n)
            .map(|mi| {
                let mut acc = SplitFrac::zero();
                for li in 0..n {
                    if !geo[li][k].is_zero() {
                        acc = Ring::add(&acc, &weighted[li][mi].scale(&geo[li][k]));
                    }
                }
                acc
            })
            .collect();
        for j in 1..=k {
            let sk = &tilde[j];
            let prev = &u[k - j];
            for mi in 0..n {
                let mut acc = SplitFrac::zero();
                for ni in 0..n {
                    let (a, b) = (sk.get(mi, ni), &prev[ni]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = Ring::add(&acc, &Ring::mul(a, b));
                    }
                }
                col[mi] = Ring::sub(&col[mi], &acc);
            }
        }
        let col: Vec<SplitFrac> = col.into_iter().map(|x| x.reduced()).collect();
        for mi in 0..n {
            if (k as i64) < shifts[mi] && !col[mi].is_zero() {
                return Err(Error::Inconsistent { order: k as i64 });
            }
        }
        u.push(col);
    }
    let mut out = Vec::new();
    for (mi, mu) in parts.iter().enumerate() {
        let edge_inv = factors_to_split(&edge_factors(mu)?, true);
        let coeffs: Vec<SplitFrac> = (0..=qmax)
            .map(|m| Ring::mul(&u[(m + shifts[mi]) as usize][mi], &edge_inv).reduced())
            .collect();
        let series = QSeries::new(0, coeffs, qmax);
        if !Ring::is_one(&series.coeff(0)) {
            return Err(Error::Inconsistent { order: shifts[mi] });
        }
        out.push((mu.clone(), series));
    }
    Ok(out)
}

/// `W'(μ)` for all `μ ⊢ d` in the solver frame through `q^qmax`.
pub fn solve_vertex(d: u32, qmax: i64) -> Result<Vec<VertexSeries>, Error> {
    Ok(solve_vertex_split(d, qmax)?
        .into_iter()
        .map(|(profile, s)| VertexSeries {
            profile,
            frame: Frame::Solver,
            reduced: true,
            value: series_to_ratfunc(&s),
        })
        .collect())
}

/// `Rubb(μ, λ) = q^d z^{d-ℓ(λ)} ⟨λ|S|I_μ⟩(t/z)` with `z = -s`, from the Nakajima-basis `S`.
///
/// Rows follow the fixed points, columns the Nakajima basis, both in `gen_partitions` order.
pub fn rubber_ratios(d: u32, trunc: i64) -> Result<Vec<Vec<QSeries<SplitFrac>>>, Error> {
    let s = s_coefficients_split(d, trunc)?;
    let parts = crate::partitions::gen_partitions(d);
    let split = |r: &RatFunc| SplitFrac::from_ratfunc(r, &[]).ok_or(Error::DivisionByZero);
    let norms: Vec<SplitFrac> = parts.iter().map(|p| split(&norm(p))).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for mu in &parts {
        let class = fixed_point_class(mu);
        let col: Vec<SplitFrac> = parts
            .iter()
            .map(|nu| split(&class.coeff(nu)))
            .collect::<Result<_, Error>>()?;
        let mut line = Vec::new();
        for (li, lambda) in parts.iter().enumerate() {
            let l = lambda.len() as u32;
            // z^{d-ℓ} = (-s)^{d-ℓ}
            let zp = SplitFrac::from_poly(MultiPoly::var(Var::S).neg().pow(d - l));
            let coeffs: Vec<SplitFrac> = s
                .iter()
                .map(|sk| {
                    let mut acc = SplitFrac::zero();
                    for (ni, c) in col.iter().enumerate() {
                        let e = sk.get(li, ni);
                        if !c.is_zero() && !e.is_zero() {
                            acc = Ring::add(&acc, &Ring::mul(c, e));
                        }
                    }
                    let acc = Ring::mul(&acc, &norms[li]);
                    Ring::mul(&dilate(&acc.reduced()), &zp).reduced()
                })
                .collect();
            line.push(QSeries::new(0, coeffs, trunc).shift(d as i64));
        }
        out.push(line);
    }
    Ok(out)
}

/// The localization side `Σ_μ W'(μ) q^{n(μ)} E(μ) Rubb(μ,λ) t2^{ℓ(λ)}` of the level `(-1,0)` cap.
///
/// `vertex` lists `W'(μ)` in `gen_partitions` order; `ratios` comes from [`rubber_ratios`].
pub fn cap_m10_rhs_split(
    lambda: &Partition,
    vertex: &[(Partition, QSeries<SplitFrac>)],
    ratios: &[Vec<QSeries<SplitFrac>>],
) -> Result<QSeries<SplitFrac>, Error> {
    let d = lambda.size();
    let parts = crate::partitions::gen_partitions(d);
    let li = parts
        .iter()
        .position(|p| p == lambda)
        .ok_or_else(|| Error::InvalidInput(alloc::format!("{} is not a partition of {}", lambda, d)))?;
    let t2l = SplitFrac::from_poly(MultiPoly::var(Var::T2).pow(lambda.len() as u32));
    let mut acc: Option<QSeries<SplitFrac>> = None;
    for (mi, (mu, w)) in vertex.iter().enumerate() {
        if mu != &parts[mi] {
            return Err(Error::InvalidInput(alloc::format!("vertex for {} out of order", mu)));
        }
        let edge = factors_to_split(&edge_factors(mu)?, false);
        let term = w
            .shift(mu.n() as i64)
            .mul(&ratios[mi][li])
            .scale(&Ring::mul(&edge, &t2l));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    let acc = acc.ok_or(Error::SizeMismatch { expected: parts.len(), found: 0 })?;
    Ok(acc.map(|c| c.clone().reduced()))
}

/// [`cap_m10_rhs_split`] over `Q(s, t1, t2)`, with `W'` computed by the solver.
pub fn cap_m10_rhs(lambda: &Partition, qmax: i64) -> Result<Series, Error> {
    let d = lambda.size();
    let vertex = solve_vertex_split(d, qmax)?;
    let ratios = rubber_ratios(d, qmax)?;
    Ok(series_to_ratfunc(&cap_m10_rhs_split(lambda, &vertex, &ratios)?))
}
