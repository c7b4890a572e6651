use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};


use crate::algebra::field::{Field, Ring};
use crate::algebra::gcd::gcd;
use crate::algebra::poly::{Mono, MultiPoly, Var};
use crate::algebra::Q;
use crate::Error;

/// Reduced fraction `num / den` with `den` monic in the canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::constant(Q::new(n.into(), d.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }

    pub fn t1() -> Self {
        Self::var(Var::T1)
    }

    pub fn t2() -> Self {
        Self::var(Var::T2)
    }

    /// `num / den` reduced to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_lead(n, d)
    }

    fn normalize_lead(n: MultiPoly, d: MultiPoly) -> Self {
        let lc = d.leading().unwrap().1.clone();
        if One::is_one(&lc) {
            RatFunc { num: n, den: d }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: n.scale(&inv),
                den: d.scale(&inv),
            }
        }
    }

    /// `num / den` for coprime parts, normalizing only the leading coefficient.
    pub fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalize_lead(num, den)
    }

    /// Assembles from parts already known to be coprime with `den` monic.
    pub fn from_parts_unchecked(num: MultiPoly, den: MultiPoly) -> Self {
        RatFunc { num, den }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().expect("power of zero").pow(-n);
        }
        RatFunc {
            num: self.num.pow(n as u32),
            den: self.den.pow(n as u32),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Replaces `v` by a rational function.
    pub fn substitute(&self, v: Var, value: &RatFunc) -> RatFunc {
        self.substitute_all(&[(v, value.clone())])
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, subs: &[(Var, RatFunc)]) -> RatFunc {
        let n = poly_subst(&self.num, subs);
        let d = poly_subst(&self.den, subs);
        n.div(&d).expect("substitution annihilates the denominator")
    }

    /// Like [`RatFunc::substitute_all`] but reports a vanishing denominator.
    pub fn try_substitute_all(&self, subs: &[(Var, RatFunc)]) -> Result<RatFunc, Error> {
        let n = poly_subst(&self.num, subs);
        let d = poly_subst(&self.den, subs);
        n.div(&d).ok_or(Error::DivisionByZero)
    }

    /// The specialization `t2 = -t1`.
    pub fn anti_diagonal(&self) -> Result<RatFunc, Error> {
        let m = MultiPoly::var(Var::T1).neg();
        let d = self.den.substitute(Var::T2, &m);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.num.substitute(Var::T2, &m), d))
    }

    /// True when `t1 + t2` divides the function in the local ring at `t1 + t2 = 0`.
    pub fn divisible_by_t1_plus_t2(&self) -> bool {
        let m = MultiPoly::var(Var::T1).neg();
        self.num.substitute(Var::T2, &m).is_zero()
    }

    /// Exchanges `t1` and `t2`.
    pub fn swap_t(&self) -> RatFunc {
        let perm = [Var::S, Var::T2, Var::T1];
        Self::reduce(self.num.permute(perm), self.den.permute(perm))
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        let n = self
            .num
            .derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(v)));
        Self::reduce(n, self.den.mul(&self.den))
    }

    pub fn eval(&self, point: &[Q; 3]) -> Option<Q> {
        let d = self.den.eval(point);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Order in `xi` of `f(xi * vars)`, i.e. the lowest homogeneous degree present.
    pub fn order_in(&self, vars: &[Var]) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        let lo = |p: &MultiPoly| -> i64 {
            p.grade_by(vars).first().map(|x| x.0 as i64).unwrap_or(0)
        };
        Some(lo(&self.num) - lo(&self.den))
    }

    /// Splits into homogeneous pieces with respect to `vars`, keyed by degree.
    pub fn homogeneous_components(&self, vars: &[Var]) -> Result<BTreeMap<i64, RatFunc>, Error> {
        let dg = self.den.grade_by(vars);
        if dg.len() > 1 {
            return Err(Error::NonTerminatingExpansion);
        }
        let mut out = BTreeMap::new();
        let dd = dg.first().map(|x| x.0 as i64).unwrap_or(0);
        for (k, piece) in self.num.grade_by(vars) {
            out.insert(k as i64 - dd, Self::reduce(piece, self.den.clone()));
        }
        Ok(out)
    }

    pub fn is_homogeneous_in(&self, vars: &[Var]) -> bool {
        self.num.grade_by(vars).len() <= 1 && self.den.grade_by(vars).len() <= 1
    }
}

fn poly_subst(p: &MultiPoly, subs: &[(Var, RatFunc)]) -> RatFunc {
    let mut acc = RatFunc::zero();
    let mut cache: Vec<Vec<RatFunc>> = subs.iter().map(|(_, v)| alloc::vec![RatFunc::one(), v.clone()]).collect();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut term = RatFunc::constant(c.clone());
        for (i, (v, _)) in subs.iter().enumerate() {
            let e = m.0[v.index()] as usize;
            rest.0[v.index()] = 0;
            while cache[i].len() <= e {
                let next = cache[i].last().unwrap().mul(&cache[i][1]);
                cache[i].push(next);
            }
            term = term.mul(&cache[i][e]);
        }
        term = term.mul(&RatFunc::from_poly(MultiPoly::monomial(rest, <Q as One>::one())));
        acc = acc.add(&term);
    }
    acc
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    fn one() -> Self {
        RatFunc {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        add_sub(self, o, false)
    }

    fn sub(&self, o: &Self) -> Self {
        add_sub(self, o, true)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: self.num.mul(&o.num),
                den: MultiPoly::one(),
            };
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = divq(&self.num, &g1);
        let d2 = divq(&o.den, &g1);
        let n2 = divq(&o.num, &g2);
        let d1 = divq(&self.den, &g2);
        Self::normalize_lead(n1.mul(&n2), d1.mul(&d2))
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn from_q(q: &Q) -> Self {
        Self::constant(q.clone())
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }
}

fn divq(a: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_exact(g).expect("gcd divides")
    }
}

fn add_sub(a: &RatFunc, b: &RatFunc, negate: bool) -> RatFunc {
    if b.num.is_zero() {
        return a.clone();
    }
    if a.num.is_zero() {
        return if negate { b.neg() } else { b.clone() };
    }
    let combine = |x: &MultiPoly, y: &MultiPoly| if negate { x.sub(y) } else { x.add(y) };
    if a.den == b.den {
        let n = combine(&a.num, &b.num);
        if a.den.is_one() {
            return RatFunc {
                num: n,
                den: MultiPoly::one(),
            };
        }
        return RatFunc::reduce(n, a.den.clone());
    }
    if a.den.is_one() {
        let n = combine(&a.num.mul(&b.den), &b.num);
        return RatFunc {
            num: n,
            den: b.den.clone(),
        };
    }
    if b.den.is_one() {
        let n = combine(&a.num, &b.num.mul(&a.den));
        return RatFunc {
            num: n,
            den: a.den.clone(),
        };
    }
    let g = gcd(&a.den, &b.den);
    let ad = divq(&a.den, &g);
    let bd = divq(&b.den, &g);
    let n = combine(&a.num.mul(&bd), &b.num.mul(&ad));
    if n.is_zero() {
        return RatFunc::zero();
    }
    let den = a.den.mul(&bd);
    if g.is_one() {
        return RatFunc::normalize_lead(n, den);
    }
    let h = gcd(&n, &g);
    if h.is_one() {
        RatFunc::normalize_lead(n, den)
    } else {
        RatFunc::normalize_lead(divq(&n, &h), divq(&den, &h))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

/// Convenience: `c * s^a * t1^b * t2^c` as a rational function.
pub fn monomial(c: Q, e: [u32; 3]) -> RatFunc {
    RatFunc::from_poly(MultiPoly::monomial(Mono(e), c))
}

#[allow(clippy::should_implement_trait)]
impl RatFunc {
    pub fn add(&self, o: &Self) -> Self {
        Ring::add(self, o)
    }
    pub fn sub(&self, o: &Self) -> Self {
        Ring::sub(self, o)
    }
    pub fn mul(&self, o: &Self) -> Self {
        Ring::mul(self, o)
    }
    pub fn neg(&self) -> Self {
        Ring::neg(self)
    }
    pub fn div(&self, o: &Self) -> Option<Self> {
        Field::div(self, o)
    }
    pub fn inv(&self) -> Option<Self> {
        Field::inv(self)
    }
    pub fn zero() -> Self {
        <Self as Ring>::zero()
    }
    pub fn one() -> Self {
        <Self as Ring>::one()
    }
    pub fn is_zero(&self) -> bool {
        Ring::is_zero(self)
    }
    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
}

impl RatFunc {
    /// `1/t1^a t2^b`-style monomial helper with integer exponents of either sign in `t1, t2`.
    pub fn t_power(a: i64, b: i64) -> RatFunc {
        RatFunc::t1().pow(a).mul(&RatFunc::t2().pow(b))
    }

}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}
