//! Rational functions whose denominators are products of linear forms.
//!
//! Sums use the least common multiple of the factored denominators, so no
//! polynomial gcd is ever taken; `reduce` cancels factors by trial division.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::field;
use crate::algebra::poly::{Mono, MultiPoly, Var};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::Q;

/// Primitive integer linear form `a_s s + a_1 t1 + a_2 t2 + a_0`, stored as
/// `[a_s, a_1, a_2, a_0]` with the first nonzero variable coefficient positive.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lin([i64; 4]);

impl Lin {
    pub fn var(v: Var) -> Lin {
        let mut c = [0; 4];
        c[v.index()] = 1;
        Lin(c)
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.0
    }

    /// Splits `c_s s + c_1 t1 + c_2 t2 + c_0` as `unit * lin`; `None` when no variable occurs.
    pub fn from_coeffs(c: &[Q; 4]) -> Option<(Q, Lin)> {
        if c[..3].iter().all(|x| x.is_zero()) {
            return None;
        }
        let mut den = BigInt::one();
        for x in c {
            den = den.lcm(x.denom());
        }
        let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        let lead = ints[..3].iter().find(|x| !x.is_zero()).unwrap();
        if lead.is_negative() {
            g = -g;
        }
        let mut out = [0i64; 4];
        for (o, x) in out.iter_mut().zip(&ints) {
            *o = (x / &g).to_i64()?;
        }
        Some((Q::new(g, den), Lin(out)))
    }

    /// A polynomial of total degree one as `unit * lin`.
    pub fn from_poly(p: &MultiPoly) -> Option<(Q, Lin)> {
        if p.total_degree() != Some(1) {
            return None;
        }
        let mut c: [Q; 4] = Default::default();
        for (m, x) in p.terms() {
            match m.total() {
                0 => c[3] = x.clone(),
                _ => {
                    let i = (0..3).find(|&i| m.0[i] == 1).unwrap();
                    c[i] = x.clone();
                }
            }
        }
        Lin::from_coeffs(&c)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut terms = Vec::new();
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut e = [0u32; 3];
            if i < 3 {
                e[i] = 1;
            }
            terms.push((Mono(e), Q::from_integer(a.into())));
        }
        MultiPoly::from_terms(terms)
    }

    fn pivot(&self) -> usize {
        (0..3).find(|&i| self.0[i] != 0).unwrap()
    }
}

/// `num / Π lin^e`, not necessarily reduced.
#[derive(Clone, Debug)]
pub struct SplitFrac {
    num: MultiPoly,
    den: BTreeMap<Lin, u32>,
}

impl SplitFrac {
    pub fn from_poly(p: MultiPoly) -> Self {
        SplitFrac {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    /// `1 / lin^e`.
    pub fn inv_lin(l: Lin, e: u32) -> Self {
        let mut den = BTreeMap::new();
        if e > 0 {
            den.insert(l, e);
        }
        SplitFrac {
            num: MultiPoly::one(),
            den,
        }
    }

    /// Product of linear polynomials, each of total degree one or constant.
    pub fn product(factors: &[MultiPoly]) -> Self {
        let mut acc = MultiPoly::one();
        for f in factors {
            acc = acc.mul(f);
        }
        Self::from_poly(acc)
    }

    /// `1 / Π factors`; `None` if some factor is zero or not linear.
    pub fn inv_product(factors: &[MultiPoly]) -> Option<Self> {
        let mut unit = Q::one();
        let mut den: BTreeMap<Lin, u32> = BTreeMap::new();
        for f in factors {
            if let Some(c) = f.constant_value() {
                if c.is_zero() {
                    return None;
                }
                unit *= c;
            } else {
                let (u, l) = Lin::from_poly(f)?;
                unit *= u;
                *den.entry(l).or_insert(0) += 1;
            }
        }
        Some(SplitFrac {
            num: MultiPoly::constant(unit.recip()),
            den,
        })
    }

    /// Succeeds when the denominator is a product of linear forms among
    /// monomials, degree-one factors and `hints`.
    pub fn from_ratfunc(r: &RatFunc, hints: &[Lin]) -> Option<Self> {
        let (unit, den) = split_linear(r.den(), hints)?;
        Some(SplitFrac {
            num: r.num().scale(&unit.recip()),
            den,
        })
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &BTreeMap<Lin, u32> {
        &self.den
    }

    pub fn den_poly(&self) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for (l, &e) in &self.den {
            acc = acc.mul(&l.to_poly().pow(e));
        }
        acc
    }

    pub fn div_lin(&self, l: Lin) -> Self {
        let mut out = self.clone();
        *out.den.entry(l).or_insert(0) += 1;
        out
    }

    /// Divides by `c * lin`.
    pub fn div_linear(&self, p: &MultiPoly) -> Option<Self> {
        if let Some(c) = p.constant_value() {
            if c.is_zero() {
                return None;
            }
            return Some(self.scale(&c.recip()));
        }
        let (u, l) = Lin::from_poly(p)?;
        Some(self.div_lin(l).scale(&u.recip()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        SplitFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<Lin> = self.den.keys().copied().collect();
        for l in keys {
            let mut e = self.den[&l];
            while e > 0 && vanishes_on(&self.num, &l) {
                match div_by_lin(&self.num, &l) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                self.den.remove(&l);
            } else {
                self.den.insert(l, e);
            }
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    /// Canonical rational function; the numerator and denominator are coprime after `reduce`.
    pub fn to_ratfunc(&self) -> RatFunc {
        let r = self.clone().reduced();
        RatFunc::from_coprime(r.num.clone(), r.den_poly())
    }

    /// Applies `v ↦ value(v)` to every variable, where each image is
    /// `poly / lin^k` and the numerator stays linear on linear forms.
    pub fn substitute_linear(&self, images: &[(MultiPoly, Option<(Lin, u32)>); 3]) -> Option<Self> {
        let num = substitute_frac(&self.num, images);
        let mut acc = num;
        for (l, &e) in &self.den {
            let img = substitute_frac(&l.to_poly(), images).reduced();
            let mut unit = Q::one();
            let mut den: BTreeMap<Lin, u32> = BTreeMap::new();
            let (pu, pl) = match img.num.constant_value() {
                Some(c) if c.is_zero() => return None,
                Some(c) => (c, None),
                None => {
                    let (u, l2) = Lin::from_poly(&img.num)?;
                    (u, Some(l2))
                }
            };
            unit *= pu;
            if let Some(l2) = pl {
                den.insert(l2, 1);
            }
            let inv_img = SplitFrac {
                num: img.den_poly().scale(&unit.recip()),
                den,
            };
            for _ in 0..e {
                acc = field::Ring::mul(&acc, &inv_img);
            }
        }
        Some(acc)
    }
}

fn substitute_frac(p: &MultiPoly, images: &[(MultiPoly, Option<(Lin, u32)>); 3]) -> SplitFrac {
    // bring every term over the common denominator Π lin^{k·deg}
    let mut max_pow = [0u32; 3];
    for (m, _) in p.terms() {
        for i in 0..3 {
            max_pow[i] = max_pow[i].max(m.0[i]);
        }
    }
    let mut den: BTreeMap<Lin, u32> = BTreeMap::new();
    let mut lifts: [Option<MultiPoly>; 3] = Default::default();
    for i in 0..3 {
        if let Some((l, k)) = images[i].1 {
            *den.entry(l).or_insert(0) += k * max_pow[i];
            lifts[i] = Some(l.to_poly());
        }
    }
    let mut powers: [Vec<MultiPoly>; 3] = Default::default();
    let mut acc = MultiPoly::zero();
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for i in 0..3 {
            let e = m.0[i] as usize;
            while powers[i].len() <= e {
                let next = match powers[i].last() {
                    None => MultiPoly::one(),
                    Some(x) => x.mul(&images[i].0),
                };
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e]);
            if let (Some(lp), Some((_, k))) = (&lifts[i], images[i].1) {
                t = t.mul(&lp.pow(k * (max_pow[i] - m.0[i])));
            }
        }
        acc = acc.add(&t);
    }
    SplitFrac { num: acc, den }
}

/// `p = unit * Π lin^e`, splitting off monomial factors, degree-one
/// remainders and any of `hints`.
pub fn split_linear(p: &MultiPoly, hints: &[Lin]) -> Option<(Q, BTreeMap<Lin, u32>)> {
    let mut den = BTreeMap::new();
    let mono = p.monomial_content();
    for v in Var::ALL {
        let e = mono.0[v.index()];
        if e > 0 {
            den.insert(Lin::var(v), e);
        }
    }
    let mut rest = p.div_mono(&mono);
    for l in hints {
        while rest.total_degree().unwrap_or(0) > 0 && vanishes_on(&rest, l) {
            match div_by_lin(&rest, l) {
                Some(q) => {
                    rest = q;
                    *den.entry(*l).or_insert(0) += 1;
                }
                None => break,
            }
        }
    }
    match rest.total_degree()? {
        0 => Some((rest.constant_value().unwrap(), den)),
        1 => {
            let (u, l) = Lin::from_poly(&rest)?;
            *den.entry(l).or_insert(0) += 1;
            Some((u, den))
        }
        _ => None,
    }
}

const P61: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P61 as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn int_mod(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P61)).to_u64().unwrap()
}

fn q_mod(x: &Q) -> Option<u64> {
    let d = int_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(mulmod(int_mod(x.numer()), powmod(d, P61 - 2)))
}

/// False only when `p` certainly does not vanish on `lin = 0`.
fn vanishes_on(p: &MultiPoly, l: &Lin) -> bool {
    let piv = l.pivot();
    let c = l.coeffs();
    let mut point = [0u64; 3];
    let seeds = [1_000_003u64, 2_000_029, 3_000_017];
    let mut rest = 0u64;
    for i in 0..3 {
        if i != piv {
            point[i] = seeds[i];
            rest = (rest + mulmod(signed_mod(c[i]), point[i])) % P61;
        }
    }
    rest = (rest + signed_mod(c[3])) % P61;
    // a_piv x + rest = 0
    point[piv] = mulmod((P61 - rest) % P61, powmod(signed_mod(c[piv]), P61 - 2));
    let mut acc = 0u64;
    for (m, x) in p.terms() {
        let Some(mut t) = q_mod(x) else { return true };
        for i in 0..3 {
            if m.0[i] > 0 {
                t = mulmod(t, powmod(point[i], m.0[i] as u64));
            }
        }
        acc = (acc + t) % P61;
    }
    acc == 0
}

fn signed_mod(a: i64) -> u64 {
    a.rem_euclid(P61 as i64) as u64
}

/// Exact quotient `p / lin` by synthetic division in the pivot variable.
fn div_by_lin(p: &MultiPoly, l: &Lin) -> Option<MultiPoly> {
    let piv = Var::ALL[l.pivot()];
    let a = Q::from_integer(l.coeffs()[piv.index()].into());
    let ai = a.recip();
    let mut bc = l.coeffs();
    bc[piv.index()] = 0;
    let b = Lin(bc).to_poly();
    let cs = p.coeffs_in(piv);
    if cs.len() < 2 {
        return None;
    }
    let k = cs.len() - 1;
    let mut q: Vec<MultiPoly> = alloc::vec![MultiPoly::zero(); k];
    q[k - 1] = cs[k].scale(&ai);
    for i in (1..k).rev() {
        q[i - 1] = cs[i].sub(&b.mul(&q[i])).scale(&ai);
    }
    if !cs[0].sub(&b.mul(&q[0])).is_zero() {
        return None;
    }
    Some(MultiPoly::from_coeffs_in(piv, &q))
}

fn lift(p: &MultiPoly, from: &BTreeMap<Lin, u32>, to: &BTreeMap<Lin, u32>) -> MultiPoly {
    let mut acc = p.clone();
    for (l, &e) in to {
        let have = from.get(l).copied().unwrap_or(0);
        if e > have {
            acc = acc.mul(&l.to_poly().pow(e - have));
        }
    }
    acc
}

fn common(a: &BTreeMap<Lin, u32>, b: &BTreeMap<Lin, u32>) -> BTreeMap<Lin, u32> {
    let mut out = a.clone();
    for (l, &e) in b {
        let x = out.entry(*l).or_insert(0);
        *x = (*x).max(e);
    }
    out
}

impl PartialEq for SplitFrac {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let c = common(&self.den, &o.den);
        lift(&self.num, &self.den, &c) == lift(&o.num, &o.den, &c)
    }
}

fn add_sub(a: &SplitFrac, b: &SplitFrac, negate: bool) -> SplitFrac {
    if b.num.is_zero() {
        return a.clone();
    }
    if a.num.is_zero() {
        return if negate { field::Ring::neg(b) } else { b.clone() };
    }
    let c = common(&a.den, &b.den);
    let x = lift(&a.num, &a.den, &c);
    let y = lift(&b.num, &b.den, &c);
    let num = if negate { x.sub(&y) } else { x.add(&y) };
    if num.is_zero() {
        return <SplitFrac as field::Ring>::zero();
    }
    SplitFrac { num, den: c }
}

impl field::Ring for SplitFrac {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
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
        let mut den = self.den.clone();
        for (l, &e) in &o.den {
            *den.entry(*l).or_insert(0) += e;
        }
        SplitFrac {
            num: self.num.mul(&o.num),
            den,
        }
    }

    fn neg(&self) -> Self {
        SplitFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn from_q(q: &Q) -> Self {
        Self::constant(q.clone())
    }
}
