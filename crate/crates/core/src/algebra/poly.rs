use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Q;

/// The three polynomial variables, in key order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Var {
    S = 0,
    T1 = 1,
    T2 = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::S, Var::T1, Var::T2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::T1 => "t1",
            Var::T2 => "t2",
        }
    }
}

/// Exponent triple `(e_s, e_t1, e_t2)`, ordered by total degree then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0]);

    pub fn var(v: Var) -> Mono {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn total(&self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0[0] <= o.0[0] && self.0[1] <= o.0[1] && self.0[2] <= o.0[2]
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quo(&self, o: &Mono) -> Mono {
        Mono([o.0[0] - self.0[0], o.0[1] - self.0[1], o.0[2] - self.0[2]])
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        Mono([
            self.0[0].min(o.0[0]),
            self.0[1].min(o.0[1]),
            self.0[2].min(o.0[2]),
        ])
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `s, t1, t2` over the rationals; terms kept sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: Vec<(Mono, Q)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly {
                terms: alloc::vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Q::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(Mono, Q)>) -> Self {
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        MultiPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 if self.terms[0].0 == Mono::ONE => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, Q)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0.total())
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.total()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(f) => self.terms.iter().all(|t| t.0.total() == f.0.total()),
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0 .0[v.index()]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0 .0[v.index()] > 0)
    }

    /// Componentwise minimum of all exponents.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some(first) => it.fold(first.0, |acc, t| acc.meet(&t.0)),
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    /// Division by a monomial that divides every term.
    pub fn div_mono(&self, m: &Mono) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(x, c)| (m.quo(x), c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly { terms: out }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return MultiPoly {
                terms: self.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return o.mul(self);
        }
        // integer products, one normalization per output term
        let (ia, da) = self.integer_parts();
        let (ib, db) = o.integer_parts();
        let mut prods: Vec<(Mono, BigInt)> = Vec::with_capacity(ia.len() * ib.len());
        for (ma, ca) in &ia {
            for (mb, cb) in &ib {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        prods.sort_unstable_by_key(|a| a.0);
        let den = da * db;
        let mut out: Vec<(Mono, Q)> = Vec::new();
        let mut it = prods.into_iter();
        let mut cur = it.next();
        while let Some((m, mut c)) = cur {
            cur = it.next();
            while let Some((m2, c2)) = &cur {
                if *m2 != m {
                    break;
                }
                c += c2;
                cur = it.next();
            }
            if !c.is_zero() {
                out.push((m, Q::new(c, den.clone())));
            }
        }
        MultiPoly { terms: out }
    }

    /// `(terms with integer coefficients, d)` such that `self = terms / d`.
    fn integer_parts(&self) -> (Vec<(Mono, BigInt)>, BigInt) {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                if c.denom() == &den {
                    (*m, c.numer().clone())
                } else {
                    (*m, c.numer() * (&den / c.denom()))
                }
            })
            .collect();
        (terms, den)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let ci = c.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (x, y) in &self.terms {
                if !m.divides(x) {
                    return None;
                }
                out.push((m.quo(x), y * &ci));
            }
            return Some(MultiPoly { terms: out });
        }
        let (lm, lc) = d.terms.last().unwrap().clone();
        let lci = lc.recip();
        let mut rem = self.clone();
        let mut quo = Vec::new();
        while let Some((rm, rc)) = rem.terms.last().cloned() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = lm.quo(&rm);
            let qc = rc * &lci;
            let t = MultiPoly::monomial(qm, qc.clone());
            rem = rem.sub(&d.mul(&t));
            quo.push((qm, qc));
        }
        Some(Self::from_terms(quo))
    }

    /// Coefficients as a polynomial in `v`: entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let k = v.index();
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Q)>> = alloc::vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[k] as usize;
            let mut mm = *m;
            mm.0[k] = 0;
            buckets[e].push((mm, c.clone()));
        }
        buckets.into_iter().map(Self::from_terms).collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> Self {
        let k = v.index();
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut mm = *m;
                mm.0[k] += i as u32;
                terms.push((mm, x.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Applies a permutation of variables: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: [Var; 3]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; 3];
                for i in 0..3 {
                    e[perm[i].index()] += m.0[i];
                }
                (Mono(e), c.clone())
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Scales every variable in `vars` by `xi`, returning coefficients grouped by the power of `xi`.
    pub fn grade_by(&self, vars: &[Var]) -> Vec<(u32, MultiPoly)> {
        let mut out: Vec<(u32, Vec<(Mono, Q)>)> = Vec::new();
        for (m, c) in &self.terms {
            let deg: u32 = vars.iter().map(|v| m.0[v.index()]).sum();
            match out.iter_mut().find(|(d, _)| *d == deg) {
                Some((_, ts)) => ts.push((*m, c.clone())),
                None => out.push((deg, alloc::vec![(*m, c.clone())])),
            }
        }
        out.sort_by_key(|(d, _)| *d);
        out.into_iter()
            .map(|(d, ts)| (d, Self::from_terms(ts)))
            .collect()
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let k = v.index();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[k] > 0)
            .map(|(m, c)| {
                let mut mm = *m;
                let e = mm.0[k];
                mm.0[k] -= 1;
                (mm, c * Q::from_integer(e.into()))
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Q; 3]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..m.0[i] {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn leading_coefficient_sign_positive(&self) -> bool {
        self.terms.last().map(|t| t.1.is_positive()).unwrap_or(true)
    }

    /// Leading coefficient made `1`.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.last() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}
