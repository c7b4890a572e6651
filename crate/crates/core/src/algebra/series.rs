use alloc::vec::Vec;

use crate::algebra::field::{Field, Ring};
use crate::algebra::Q;
use crate::Error;

/// Truncation marker for series known to all orders (finite Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 8;

/// Truncated Laurent series `Σ c_n q^n` known exactly for `n ≤ trunc`.
///
/// Stored coefficients start at the valuation; coefficients past the stored
/// range and up to `trunc` are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries<F> {
    val: i64,
    coeffs: Vec<F>,
    trunc: i64,
}

fn clamp(t: i64) -> i64 {
    t.min(EXACT)
}

impl<F: Ring> QSeries<F> {
    /// Coefficients starting at `q^val`; entries past `trunc` are dropped.
    pub fn new(val: i64, mut coeffs: Vec<F>, trunc: i64) -> Self {
        let trunc = clamp(trunc);
        let keep = (trunc - val + 1).max(0);
        if (coeffs.len() as i64) > keep {
            coeffs.truncate(keep as usize);
        }
        let mut s = QSeries { val, coeffs, trunc };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                self.coeffs.clear();
                self.val = self.trunc + 1;
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
        }
    }

    pub fn zero(trunc: i64) -> Self {
        let trunc = clamp(trunc);
        QSeries {
            val: trunc + 1,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn constant(c: F, trunc: i64) -> Self {
        Self::new(0, alloc::vec![c], trunc)
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(F::one(), trunc)
    }

    /// `c q^k`.
    pub fn monomial(c: F, k: i64, trunc: i64) -> Self {
        Self::new(k, alloc::vec![c], trunc)
    }

    /// `Σ coeffs[i] q^i`.
    pub fn from_poly(coeffs: Vec<F>, trunc: i64) -> Self {
        Self::new(0, coeffs, trunc)
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= EXACT
    }

    /// Stored coefficients from `q^valuation`; later ones are zero.
    pub fn stored(&self) -> &[F] {
        &self.coeffs
    }

    /// Dense coefficients for `q^valuation ..= q^truncation`.
    pub fn dense(&self) -> Vec<F> {
        assert!(!self.is_exact(), "dense expansion of an exact series");
        let mut v = self.coeffs.clone();
        let n = (self.trunc - self.val + 1).max(0) as usize;
        while v.len() < n {
            v.push(F::zero());
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`; panics past the truncation.
    pub fn coeff(&self, n: i64) -> F {
        assert!(
            n <= self.trunc,
            "coefficient q^{} beyond truncation {}",
            n,
            self.trunc
        );
        if n < self.val {
            return F::zero();
        }
        self.coeffs
            .get((n - self.val) as usize)
            .cloned()
            .unwrap_or_else(F::zero)
    }

    fn at(&self, n: i64) -> Option<&F> {
        if n < self.val {
            None
        } else {
            self.coeffs.get((n - self.val) as usize)
        }
    }

    fn last_stored(&self) -> i64 {
        self.val + self.coeffs.len() as i64 - 1
    }

    pub fn try_coeff(&self, n: i64) -> Option<F> {
        if n > self.trunc {
            None
        } else {
            Some(self.coeff(n))
        }
    }

    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        Self::new(self.val, self.coeffs.clone(), t)
    }

    pub fn with_truncation(&self, t: i64) -> Self {
        assert!(self.is_exact() || t <= self.trunc, "cannot extend truncation");
        Self::new(self.val, self.coeffs.clone(), t)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        let t = self.trunc.min(o.trunc);
        if o.is_zero() {
            return self.truncate(t);
        }
        if self.is_zero() {
            let r = if negate { o.neg() } else { o.clone() };
            return r.truncate(t);
        }
        let v = self.val.min(o.val);
        let hi = self.last_stored().max(o.last_stored()).min(t);
        if v > hi {
            return Self::zero(t);
        }
        let mut out = Vec::with_capacity((hi - v + 1) as usize);
        for e in v..=hi {
            let c = match (self.at(e), o.at(e)) {
                (Some(a), Some(b)) => {
                    if negate {
                        a.sub(b)
                    } else {
                        a.add(b)
                    }
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => {
                    if negate {
                        b.neg()
                    } else {
                        b.clone()
                    }
                }
                (None, None) => F::zero(),
            };
            out.push(c);
        }
        Self::new(v, out, t)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = clamp((self.trunc + o.val).min(o.trunc + self.val));
        if self.is_zero() || o.is_zero() {
            return Self::zero(t);
        }
        let v = self.val + o.val;
        let hi = (self.last_stored() + o.last_stored()).min(t);
        if v > hi {
            return Self::zero(t);
        }
        let n = (hi - v + 1) as usize;
        let mut out = alloc::vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j].add_assign(&a.mul(b));
            }
        }
        Self::new(v, out, t)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        QSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            trunc: clamp(self.trunc + k),
        }
    }

    /// `q d/dq`.
    pub fn qderiv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&F::from_i64(self.val + i as i64)))
            .collect();
        Self::new(self.val, coeffs, self.trunc)
    }

    /// Substitution `q -> -q`.
    pub fn negate_q(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.val + i as i64).rem_euclid(2) == 1 {
                    c.neg()
                } else {
                    c.clone()
                }
            })
            .collect();
        QSeries {
            val: self.val,
            coeffs,
            trunc: self.trunc,
        }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> QSeries<G> {
        QSeries::new(self.val, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    pub fn try_map<G: Ring, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<QSeries<G>, E> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(f(c)?);
        }
        Ok(QSeries::new(self.val, out, self.trunc))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc: Option<Self> = None;
        for _ in 0..n {
            acc = Some(match acc {
                None => self.clone(),
                Some(x) => x.mul(self),
            });
        }
        acc.unwrap_or_else(|| Self::one(EXACT))
    }

    /// Equality of coefficients over the common range of known terms.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.first()
    }
}

impl<F: Field> QSeries<F> {
    /// Multiplicative inverse; fails on the zero series and on exact non-monomials.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = self.val;
        let b0inv = self.coeffs[0].inv().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() == 1 {
            return Ok(QSeries::new(-v, alloc::vec![b0inv], clamp(self.trunc - 2 * v)));
        }
        if self.is_exact() {
            return Err(Error::Precision {
                needed: EXACT,
                available: 0,
            });
        }
        let rel = self.trunc - v;
        let n = (rel + 1) as usize;
        let mut out: Vec<F> = Vec::with_capacity(n);
        out.push(b0inv.clone());
        for k in 1..n {
            let mut acc = F::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let c = &self.coeffs[j];
                if c.is_zero() {
                    continue;
                }
                acc.add_assign(&c.mul(&out[k - j]));
            }
            out.push(acc.mul(&b0inv).neg());
        }
        Ok(QSeries::new(-v, out, -v + rel))
    }

    /// Inverse computed to a requested truncation, for exact inputs.
    pub fn inv_to(&self, t: i64) -> Result<Self, Error> {
        if self.is_exact() {
            self.with_truncation(t + 2 * self.val).inv()
        } else {
            self.inv()
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, Error> {
        if o.is_exact() && !self.is_exact() && o.coeffs.len() > 1 {
            let t = self.trunc - self.val + o.val;
            return Ok(self.mul(&o.with_truncation(t.max(o.val)).inv()?));
        }
        Ok(self.mul(&o.inv()?))
    }

    /// Logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self, Error> {
        self.check_unit_constant()?;
        let d = self.qderiv().div(self)?;
        let mut out = alloc::vec![F::zero()];
        for n in 1..=self.trunc {
            let c = d.coeff(n).mul(&F::from_q(&Q::new(1.into(), n.into())));
            out.push(c);
        }
        Ok(QSeries::new(0, out, self.trunc))
    }

    /// Exponential of a series with positive valuation.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.is_zero() && self.val < 1 {
            return Err(Error::NotUnitConstant);
        }
        if self.is_exact() {
            return Err(Error::Precision {
                needed: EXACT,
                available: 0,
            });
        }
        let t = self.trunc;
        let mut g: Vec<F> = alloc::vec![F::one()];
        for n in 1..=t {
            let mut acc = F::zero();
            for k in 1..=n {
                let h = self.coeff(k);
                if h.is_zero() {
                    continue;
                }
                acc.add_assign(&h.mul(&g[(n - k) as usize]).mul(&F::from_i64(k)));
            }
            g.push(acc.mul(&F::from_q(&Q::new(1.into(), n.into()))));
        }
        Ok(QSeries::new(0, g, t))
    }

    fn check_unit_constant(&self) -> Result<(), Error> {
        if self.is_zero() || self.val != 0 || !self.coeffs[0].is_one() {
            return Err(Error::NotUnitConstant);
        }
        Ok(())
    }

    /// `f^E = exp(E log f)` for `f` with constant term one, via the power recurrence.
    pub fn pow_exponent(&self, e: &F) -> Result<Self, Error> {
        self.check_unit_constant()?;
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(Error::Precision {
                needed: EXACT,
                available: 0,
            });
        }
        let t = self.trunc.min(EXACT - 1);
        if self.coeffs.len() == 1 {
            return Ok(QSeries::one(self.trunc));
        }
        let ep1 = e.add(&F::one());
        let mut g: Vec<F> = alloc::vec![F::one()];
        for n in 1..=t {
            let mut acc = F::zero();
            for k in 1..=n.min(self.coeffs.len() as i64 - 1) {
                let fk = &self.coeffs[k as usize];
                if fk.is_zero() {
                    continue;
                }
                let w = ep1.mul(&F::from_i64(k)).sub(&F::from_i64(n));
                acc.add_assign(&w.mul(fk).mul(&g[(n - k) as usize]));
            }
            g.push(acc.mul(&F::from_q(&Q::new(1.into(), n.into()))));
        }
        Ok(QSeries::new(0, g, t))
    }
}

impl<F: Ring> Ring for QSeries<F> {
    fn zero() -> Self {
        QSeries::zero(EXACT)
    }
    fn one() -> Self {
        QSeries::one(EXACT)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        QSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        QSeries::neg(self)
    }
    fn from_q(q: &Q) -> Self {
        QSeries::constant(F::from_q(q), EXACT)
    }
}
