//! Gluing of caps, tubes and pairs of pants in fixed degree `d`.
//!
//! `DT(g|k1,k2)_{λ¹…λʳ}` is the reduced, `q^{-d(1-g)}`-shifted partition
//! function. Slots index partitions of `d`; a raised slot carries `△_d`.
//!
//! The level `(0,0)` pair of pants is rebuilt from `M_D`: the algebra is
//! generated by `D` over the series ring, so every Nakajima class is a
//! polynomial in quantum multiplication by `D` applied to the unit `|1^d⟩`.

use alloc::vec::Vec;

use crate::algebra::linalg::{solve_series, Mat};
use crate::algebra::{geometric_neg, macmahon_neg, neg_q_power, RatFunc, Series, EXACT, Q};
use crate::fock::{delta_d, norm, operator_md};
use crate::partitions::{Basis, Partition};
use crate::Error;

/// `M(-q)^{(2g-2+r)(t1+t2)²/(t1t2) - (k1+k2)}`, the unreduced degree 0 series.
pub fn degree0(g: u32, k1: i64, k2: i64, r: u32, trunc: i64) -> Series {
    let ts = RatFunc::t1().add(&RatFunc::t2());
    let base = ts.mul(&ts).mul(&RatFunc::t_power(-1, -1));
    let e = base
        .scale(&Q::from_integer((2 * g as i64 - 2 + r as i64).into()))
        .sub(&RatFunc::from_int(k1 + k2));
    macmahon_neg(trunc)
        .pow_exponent(&e)
        .expect("M(-q) has constant term 1")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    Lower,
    Raised,
}

/// A tensor `DT(g|k1,k2)` with some slots raised by `△_d`.
#[derive(Clone, PartialEq, Debug)]
pub struct TqftBlock {
    pub genus: u32,
    pub level: (i64, i64),
    basis: Basis,
    slots: Vec<Slot>,
    entries: Vec<Series>,
}

/// Every multi-index in `0..n` of length `r`, last index fastest.
fn multi_indices(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = n.checked_pow(r as u32).unwrap_or(0);
    for mut code in 0..total {
        let mut idx = alloc::vec![0; r];
        for slot in (0..r).rev() {
            idx[slot] = code % n;
            code /= n;
        }
        out.push(idx);
    }
    out
}

impl TqftBlock {
    pub fn from_fn(
        genus: u32,
        level: (i64, i64),
        d: u32,
        slots: Vec<Slot>,
        mut f: impl FnMut(&[usize]) -> Series,
    ) -> Self {
        let basis = Basis::new(d);
        let entries = multi_indices(basis.len(), slots.len()).iter().map(|i| f(i)).collect();
        TqftBlock {
            genus,
            level,
            basis,
            slots,
            entries,
        }
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.basis.len() + i)
    }

    pub fn at(&self, idx: &[usize]) -> &Series {
        assert_eq!(idx.len(), self.slots.len());
        &self.entries[self.offset(idx)]
    }

    pub fn entry(&self, parts: &[&Partition]) -> Result<Series, Error> {
        if parts.len() != self.slots.len() {
            return Err(Error::SizeMismatch {
                expected: self.slots.len(),
                found: parts.len(),
            });
        }
        let idx = parts
            .iter()
            .map(|p| {
                self.basis.index_of(p).ok_or_else(|| {
                    Error::InvalidInput(alloc::format!("{} is not a partition of {}", p, self.degree()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.at(&idx).clone())
    }

    fn rescale_slot(&self, slot: usize, to: Slot) -> Self {
        let mut out = self.clone();
        if self.slots[slot] == to {
            return out;
        }
        let factor: Vec<RatFunc> = self
            .basis
            .partitions()
            .iter()
            .map(|p| if to == Slot::Raised { delta_d(p) } else { norm(p) })
            .collect();
        for (k, idx) in multi_indices(self.basis.len(), self.slots.len()).iter().enumerate() {
            out.entries[k] = self.entries[k].scale(&factor[idx[slot]]);
        }
        out.slots[slot] = to;
        out
    }

    pub fn raise(&self, slot: usize) -> Self {
        self.rescale_slot(slot, Slot::Raised)
    }

    pub fn lower(&self, slot: usize) -> Self {
        self.rescale_slot(slot, Slot::Lower)
    }

    pub fn truncation(&self) -> i64 {
        self.entries.iter().map(|e| e.truncation()).min().unwrap_or(EXACT)
    }

    pub fn agrees_with(&self, o: &Self) -> bool {
        self.slots == o.slots
            && self.basis == o.basis
            && self.entries.iter().zip(&o.entries).all(|(a, b)| a.agrees_with(b))
    }

    /// Exchanges `t1` and `t2` in every entry.
    pub fn swap_t(&self) -> Self {
        let mut out = self.clone();
        out.level = (self.level.1, self.level.0);
        out.entries = self.entries.iter().map(|e| e.map(|c| c.swap_t())).collect();
        out
    }

    /// The matrix `A[ν][μ] = DT_μ^ν` of a block with slots `(Lower, Raised)`.
    pub fn to_operator(&self) -> Mat<Series> {
        assert_eq!(self.slots, [Slot::Lower, Slot::Raised]);
        let n = self.basis.len();
        Mat::from_fn(n, n, |nu, mu| self.at(&[mu, nu]).clone())
    }

    pub fn from_operator(genus: u32, level: (i64, i64), d: u32, a: &Mat<Series>) -> Self {
        Self::from_fn(genus, level, d, alloc::vec![Slot::Lower, Slot::Raised], |i| {
            a.get(i[1], i[0]).clone()
        })
    }
}

pub fn tube(d: u32, trunc: i64) -> TqftBlock {
    TqftBlock::from_fn(0, (0, 0), d, alloc::vec![Slot::Lower, Slot::Raised], |i| {
        if i[0] == i[1] {
            Series::one(trunc)
        } else {
            Series::zero(trunc)
        }
    })
}

/// `DT(0|0,0)_λ = ⟨λ|1^d⟩`.
pub fn cap00(d: u32, trunc: i64) -> TqftBlock {
    let unit = Partition::ones(d);
    let value = norm(&unit);
    let basis = Basis::new(d);
    TqftBlock::from_fn(0, (0, 0), d, alloc::vec![Slot::Lower], |i| {
        if basis.get(i[0]) == &unit {
            Series::constant(value.clone(), trunc)
        } else {
            Series::zero(trunc)
        }
    })
}

/// `DT(0|0,0)_{μ,D,ν} = ⟨μ|M_D|ν⟩`.
pub fn pants_d(d: u32, trunc: i64) -> TqftBlock {
    let md = operator_md(d, trunc);
    let basis = Basis::new(d);
    TqftBlock::from_fn(0, (0, 0), d, alloc::vec![Slot::Lower, Slot::Lower], |i| {
        md.bracket(basis.get(i[0]), basis.get(i[1]))
    })
}

/// `DT(0|-1,0)_λ = t2^{-ℓ(λ)}/𝔷(λ) Π 1/(1 - (-q)^{λ_i})`.
pub fn cap_m10_value(lambda: &Partition, trunc: i64) -> Series {
    let l = lambda.len() as i64;
    let mut acc = Series::constant(RatFunc::t_power(0, -l).scale(&lambda.zee().recip()), trunc);
    for &k in lambda.parts() {
        acc = acc.mul(&geometric_neg(k as i64, trunc));
    }
    acc
}

pub fn cap_m10(d: u32, trunc: i64) -> TqftBlock {
    let basis = Basis::new(d);
    TqftBlock::from_fn(0, (-1, 0), d, alloc::vec![Slot::Lower], |i| {
        cap_m10_value(basis.get(i[0]), trunc)
    })
}

fn precision_of(m: &Mat<Series>) -> i64 {
    m.entries().iter().map(|e| e.truncation()).min().unwrap_or(EXACT)
}

fn check_precision(m: &Mat<Series>, needed: i64) -> Result<(), Error> {
    let available = precision_of(m);
    if available < needed {
        return Err(Error::Precision { needed, available });
    }
    Ok(())
}

/// Quantum multiplication by every Nakajima class in level `(0,0)`, degree `d`.
#[derive(Clone, Debug)]
pub struct LevelZero {
    basis: Basis,
    trunc: i64,
    md: Mat<Series>,
    mult: Vec<Mat<Series>>,
}

impl LevelZero {
    /// Fails with [`Error::Precision`] when the Krylov solve loses q-orders.
    pub fn new(d: u32, trunc: i64) -> Result<Self, Error> {
        let basis = Basis::new(d);
        let n = basis.len();
        let md = operator_md(d, trunc).into_mat();
        let unit = basis.index_of(&Partition::ones(d)).expect("1^d is a partition of d");

        let mut powers: Vec<Mat<Series>> = alloc::vec![Mat::identity(n)];
        for _ in 1..n {
            let next = md.mul(powers.last().unwrap());
            powers.push(next);
        }
        // column k of the Krylov matrix is M_D^k |1^d⟩
        let krylov = Mat::from_fn(n, n, |i, k| powers[k].get(i, unit).clone());
        let coeffs = solve_series(&krylov, &Mat::identity(n), trunc)?;
        check_precision(&coeffs, trunc)?;

        let mult = (0..n)
            .map(|nu| {
                let mut acc = Mat::zeros(n, n);
                for (k, p) in powers.iter().enumerate() {
                    acc = acc.add(&p.scale(coeffs.get(k, nu)));
                }
                acc
            })
            .collect();
        Ok(LevelZero {
            basis,
            trunc,
            md,
            mult,
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn md(&self) -> &Mat<Series> {
        &self.md
    }

    /// Quantum multiplication by `|ν⟩`, acting on Nakajima columns.
    pub fn multiplication(&self, nu: usize) -> &Mat<Series> {
        &self.mult[nu]
    }

    /// `DT(0|0,0)_{λ,μ,ν}`.
    pub fn pants(&self, lambda: usize, mu: usize, nu: usize) -> Series {
        self.mult[nu]
            .get(lambda, mu)
            .scale(&norm(self.basis.get(lambda)))
            .truncate(self.trunc)
    }
}

pub fn pants_full(d: u32, trunc: i64) -> Result<TqftBlock, Error> {
    let lz = LevelZero::new(d, trunc)?;
    Ok(pants_from(&lz))
}

fn pants_from(lz: &LevelZero) -> TqftBlock {
    let d = lz.basis.degree();
    TqftBlock::from_fn(0, (0, 0), d, alloc::vec![Slot::Lower; 3], |i| lz.pants(i[0], i[1], i[2]))
}

/// The four level-changing tubes, each with slots `(Lower, Raised)`.
#[derive(Clone, Debug)]
pub struct LevelTubes {
    pub minus_one_zero: TqftBlock,
    pub one_zero: TqftBlock,
    pub zero_minus_one: TqftBlock,
    pub zero_one: TqftBlock,
}

/// The `(1,0)` tube has poles in `q` (the `(-1,0)` tube is singular at
/// `q = 0` from `d = 2` on), so its inverse needs `lz` computed past `needed`.
fn tubes_from(lz: &LevelZero, needed: i64) -> Result<LevelTubes, Error> {
    let basis = &lz.basis;
    let d = basis.degree();
    let n = basis.len();
    let trunc = lz.trunc;
    let cap: Vec<Series> = basis.partitions().iter().map(|p| cap_m10_value(p, trunc)).collect();
    // DT(0|-1,0)_μ^ν = Σ_γ DT_{μ,ν,γ} △(γ) DT(0|-1,0)_γ △(ν)
    let minus = TqftBlock::from_fn(0, (-1, 0), d, alloc::vec![Slot::Lower, Slot::Raised], |i| {
        let mut acc = Series::zero(EXACT);
        for (g, cg) in cap.iter().enumerate() {
            let w = cg.scale(&delta_d(basis.get(g)));
            acc = acc.add(&lz.pants(i[0], i[1], g).mul(&w));
        }
        acc.scale(&delta_d(basis.get(i[1])))
    });
    let a = minus.to_operator();
    let inv = solve_series(&a, &Mat::identity(n), trunc)?;
    check_precision(&inv, needed)?;
    let plus = TqftBlock::from_operator(0, (1, 0), d, &inv);
    Ok(LevelTubes {
        zero_minus_one: minus.swap_t(),
        zero_one: plus.swap_t(),
        minus_one_zero: minus,
        one_zero: plus,
    })
}

pub fn level_tubes(d: u32, trunc: i64) -> Result<LevelTubes, Error> {
    let t = Theory::new(d, trunc)?.tubes;
    let cut = |b: &TqftBlock| TqftBlock {
        entries: b.entries.iter().map(|e| e.truncate(trunc)).collect(),
        ..b.clone()
    };
    Ok(LevelTubes {
        minus_one_zero: cut(&t.minus_one_zero),
        one_zero: cut(&t.one_zero),
        zero_minus_one: cut(&t.zero_minus_one),
        zero_one: cut(&t.zero_one),
    })
}

/// How [`Theory::evaluate`] cuts the surface.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Decomposition {
    /// Level tubes, then insertions, then handles, each as an operator on the unit.
    Operators,
    /// Handles, then insertions in reverse order, then level tubes, each glued
    /// as a lowered tensor through `△_d`, closed by the level `(0,0)` cap.
    Tensors,
}

/// All generating blocks in one degree.
#[derive(Clone, Debug)]
pub struct Theory {
    trunc: i64,
    zero: LevelZero,
    tubes: LevelTubes,
}

impl Theory {
    /// Works past `trunc` by as many q-orders as the `(1,0)` tube loses.
    pub fn new(d: u32, trunc: i64) -> Result<Self, Error> {
        let mut work = trunc;
        let mut last = None;
        for _ in 0..6 {
            let zero = LevelZero::new(d, work)?;
            match tubes_from(&zero, trunc) {
                Ok(tubes) => return Ok(Theory { trunc, zero, tubes }),
                Err(Error::Precision { needed, available }) => {
                    last = Some(Error::Precision { needed, available });
                    work += needed - available;
                }
                Err(e) => return Err(e),
            }
        }
        Err(last.expect("loop ran"))
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn degree(&self) -> u32 {
        self.zero.basis.degree()
    }

    pub fn level_zero(&self) -> &LevelZero {
        &self.zero
    }

    pub fn tubes(&self) -> &LevelTubes {
        &self.tubes
    }

    pub fn pants(&self) -> TqftBlock {
        pants_from(&self.zero)
    }

    fn level_blocks(&self, k1: i64, k2: i64) -> Vec<&TqftBlock> {
        let t = &self.tubes;
        let mut out = Vec::new();
        let pick = |k: i64, neg, pos| if k < 0 { neg } else { pos };
        for _ in 0..k1.unsigned_abs() {
            out.push(pick(k1, &t.minus_one_zero, &t.one_zero));
        }
        for _ in 0..k2.unsigned_abs() {
            out.push(pick(k2, &t.zero_minus_one, &t.zero_one));
        }
        out
    }

    /// `Σ_γ △(γ) |γ⟩ ⋆ |γ⟩` as an operator.
    pub fn handle_operator(&self) -> Mat<Series> {
        let n = self.zero.basis.len();
        let mut acc = Mat::zeros(n, n);
        for g in 0..n {
            let m = self.zero.mult[g].mul(&self.zero.mult[g]);
            acc = acc.add(&m.scale(&Series::constant(delta_d(self.zero.basis.get(g)), EXACT)));
        }
        acc
    }

    fn indices(&self, insertions: &[Partition]) -> Result<Vec<usize>, Error> {
        insertions
            .iter()
            .map(|p| {
                self.zero.basis.index_of(p).ok_or_else(|| {
                    Error::InvalidInput(alloc::format!("{} is not a partition of {}", p, self.degree()))
                })
            })
            .collect()
    }

    /// `DT(g|k1,k2)_{λ¹…λʳ}`.
    pub fn evaluate(
        &self,
        g: u32,
        k1: i64,
        k2: i64,
        insertions: &[Partition],
        how: Decomposition,
    ) -> Result<Series, Error> {
        let idx = self.indices(insertions)?;
        let v = match how {
            Decomposition::Operators => self.by_operators(g, k1, k2, &idx),
            Decomposition::Tensors => self.by_tensors(g, k1, k2, &idx),
        };
        Ok(v.truncate(self.trunc))
    }

    fn by_operators(&self, g: u32, k1: i64, k2: i64, idx: &[usize]) -> Series {
        let basis = &self.zero.basis;
        let n = basis.len();
        let unit = basis.index_of(&Partition::ones(basis.degree())).unwrap();
        let mut x: Vec<Series> = (0..n)
            .map(|i| if i == unit { Series::one(EXACT) } else { Series::zero(EXACT) })
            .collect();
        for b in self.level_blocks(k1, k2) {
            x = b.to_operator().mul_vec(&x);
        }
        for &i in idx {
            x = self.zero.mult[i].mul_vec(&x);
        }
        if g > 0 {
            let h = self.handle_operator();
            for _ in 0..g {
                x = h.mul_vec(&x);
            }
        }
        x[unit].scale(&norm(basis.get(unit)))
    }

    fn by_tensors(&self, g: u32, k1: i64, k2: i64, idx: &[usize]) -> Series {
        let basis = &self.zero.basis;
        let n = basis.len();
        let delta: Vec<RatFunc> = basis.partitions().iter().map(delta_d).collect();
        let c = |a: usize, b: usize, e: usize| self.zero.pants(a, b, e);
        // glue a one-boundary surface v to a lowered two-slot tensor t
        let glue = |v: &[Series], t: &dyn Fn(usize, usize) -> Series| -> Vec<Series> {
            (0..n)
                .map(|nu| {
                    let mut acc = Series::zero(EXACT);
                    for gm in 0..n {
                        acc = acc.add(&v[gm].scale(&delta[gm]).mul(&t(gm, nu)));
                    }
                    acc
                })
                .collect()
        };
        let cap = cap00(basis.degree(), EXACT);
        let mut v: Vec<Series> = (0..n).map(|i| cap.at(&[i]).clone()).collect();

        if g > 0 {
            // torus with two boundaries: Σ_{α,β} c_{γαβ} △(α)△(β) c_{αβν}
            let mut h = alloc::vec![Series::zero(EXACT); n * n];
            for gm in 0..n {
                for nu in 0..n {
                    let mut acc = Series::zero(EXACT);
                    for a in 0..n {
                        for b in 0..n {
                            let w = delta[a].mul(&delta[b]);
                            acc = acc.add(&c(gm, a, b).mul(&c(a, b, nu)).scale(&w));
                        }
                    }
                    h[gm * n + nu] = acc;
                }
            }
            for _ in 0..g {
                v = glue(&v, &|a, b| h[a * n + b].clone());
            }
        }
        for &i in idx.iter().rev() {
            v = glue(&v, &|a, b| c(a, i, b));
        }
        for b in self.level_blocks(k1, k2) {
            let low = b.lower(1);
            v = glue(&v, &|x, y| low.at(&[x, y]).clone());
        }
        // close with the level (0,0) cap
        let mut acc = Series::zero(EXACT);
        for gm in 0..n {
            acc = acc.add(&v[gm].scale(&delta[gm]).mul(cap.at(&[gm])));
        }
        acc
    }
}

/// `DT(g|k1,k2)_{λ¹…λʳ}` in degree `d`, retrying with extra q-orders when
/// inversions lose precision.
pub fn assemble(
    g: u32,
    k1: i64,
    k2: i64,
    insertions: &[Partition],
    d: u32,
    trunc: i64,
) -> Result<Series, Error> {
    assemble_with(g, k1, k2, insertions, d, trunc, Decomposition::Operators)
}

pub fn assemble_with(
    g: u32,
    k1: i64,
    k2: i64,
    insertions: &[Partition],
    d: u32,
    trunc: i64,
    how: Decomposition,
) -> Result<Series, Error> {
    if let Some(p) = insertions.iter().find(|p| p.size() != d) {
        return Err(Error::InvalidInput(alloc::format!("{} is not a partition of {}", p, d)));
    }
    let mut reserve = 0;
    let mut last = None;
    for _ in 0..4 {
        let t = Theory::new(d, trunc + reserve)?;
        let v = t.evaluate(g, k1, k2, insertions, how)?;
        if v.truncation() >= trunc {
            return Ok(v.truncate(trunc));
        }
        last = Some(Error::Precision {
            needed: trunc,
            available: v.truncation(),
        });
        reserve += trunc - v.truncation();
    }
    Err(last.expect("loop ran"))
}

/// `(-q)^{half_power/2} · series`.
#[derive(Clone, Debug)]
pub struct Starred {
    pub half_power: i64,
    pub series: Series,
}

impl Starred {
    /// Moves the even part of the exponent into the series, leaving `0` or `1`.
    pub fn normalized(&self) -> Self {
        let odd = self.half_power.rem_euclid(2);
        let whole = (self.half_power - odd) / 2;
        Starred {
            half_power: odd,
            series: self.series.mul(&neg_q_power(whole)),
        }
    }

    pub fn agrees_with(&self, o: &Self) -> bool {
        let (a, b) = (self.normalized(), o.normalized());
        a.half_power == b.half_power && a.series.agrees_with(&b.series)
    }
}

/// `DT* = (-1)^{d(1-g)} (-q)^{-d(k1+k2)/2} DT`.
pub fn to_starred(g: u32, k1: i64, k2: i64, d: u32, dt: &Series) -> Starred {
    let d = d as i64;
    let sign = if (d * (1 - g as i64)).rem_euclid(2) == 0 { 1 } else { -1 };
    Starred {
        half_power: -d * (k1 + k2),
        series: dt.scale(&RatFunc::from_int(sign)),
    }
    .normalized()
}

pub fn starred(
    g: u32,
    k1: i64,
    k2: i64,
    insertions: &[Partition],
    d: u32,
    trunc: i64,
) -> Result<Starred, Error> {
    let dt = assemble(g, k1, k2, insertions, d, trunc)?;
    Ok(to_starred(g, k1, k2, d, &dt))
}

/// `GW*(0|-1,0)_λ = (-q)^{-d/2} t2^{-ℓ} (-1)^{d-ℓ}/𝔷(λ) Π 1/(1 - (-q)^{-λ_i})`,
/// expanded by inverting the Laurent polynomials `1 - (-q)^{-λ_i}` in `q`.
pub fn gw_star_cap_m10(lambda: &Partition, trunc: i64) -> Result<Starred, Error> {
    let d = lambda.size() as i64;
    let l = lambda.len() as i64;
    let sign = if (d - l) % 2 == 0 { 1 } else { -1 };
    let mut acc = Series::constant(
        RatFunc::t_power(0, -l).scale(&(Q::from_integer(sign.into()) / lambda.zee())),
        EXACT,
    );
    for &k in lambda.parts() {
        let f = Series::one(EXACT).sub(&neg_q_power(-(k as i64)));
        acc = acc.mul(&f.inv_to(trunc)?);
    }
    Ok(Starred {
        half_power: -d,
        series: acc.truncate(trunc),
    }
    .normalized())
}
