//! Partitions, hooks, contents, rim-hook ranks and symmetric-group characters.
//!
//! Cells are `(i, j)` with `i` the row (weight `t1`) and `j` the column
//! (weight `t2`), both starting at 0.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Q, RatFunc};
use crate::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Rejects sequences that are not weakly decreasing and positive.
    pub fn try_from_parts(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(alloc::format!(
                "{:?} is not a partition",
                parts
            )));
        }
        Ok(Partition(parts))
    }

    pub fn ones(d: u32) -> Self {
        Partition(alloc::vec![1; d as usize])
    }

    pub fn row(d: u32) -> Self {
        Partition::new(alloc::vec![d])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }

    pub fn conjugate(&self) -> Self {
        let n = self.part(0);
        Partition(
            (0..n)
                .map(|j| self.0.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        )
    }

    pub fn contains_cell(&self, i: usize, j: u32) -> bool {
        self.part(i) > j
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn contains(&self, o: &Partition) -> bool {
        o.len() <= self.len() && o.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// `μ + k`: one more part equal to `k`.
    pub fn with_part(&self, k: u32) -> Self {
        let mut p = self.0.clone();
        p.push(k);
        Partition::new(p)
    }

    /// `μ - k`, if `k` is a part.
    pub fn without_part(&self, k: u32) -> Option<Self> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut p = self.0.clone();
        p.remove(pos);
        Some(Partition(p))
    }

    /// Dominance order `self ≥ o` for partitions of equal size.
    pub fn dominates(&self, o: &Partition) -> bool {
        let mut a = 0u32;
        let mut b = 0u32;
        for i in 0..self.len().max(o.len()) {
            a += self.part(i);
            b += o.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `𝔷(μ) = Π μ_i · |Aut μ|`.
    pub fn zee(&self) -> Q {
        let mut z = BigInt::one();
        for &p in &self.0 {
            z *= p;
        }
        let mut i = 0;
        while i < self.0.len() {
            let mut m = 0u32;
            let p = self.0[i];
            while i < self.0.len() && self.0[i] == p {
                m += 1;
                z *= m;
                i += 1;
            }
        }
        Q::from_integer(z)
    }

    /// `Σ (i-1) μ_i` over rows `i = 1..ℓ`.
    pub fn n(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    pub fn arm(&self, i: usize, j: u32) -> u32 {
        self.part(i) - j - 1
    }

    pub fn leg(&self, i: usize, j: u32) -> u32 {
        self.0[i..].iter().filter(|&&p| p > j).count() as u32 - 1
    }

    pub fn hook(&self, i: usize, j: u32) -> u32 {
        self.arm(i, j) + self.leg(i, j) + 1
    }

    pub fn cell_data(&self) -> Vec<CellData> {
        self.cells()
            .map(|(i, j)| CellData {
                row: i,
                col: j,
                arm: self.arm(i, j),
                leg: self.leg(i, j),
                hook: self.hook(i, j),
            })
            .collect()
    }

    pub fn hooks(&self) -> Vec<u32> {
        self.cells().map(|(i, j)| self.hook(i, j)).collect()
    }

    pub fn hook_product(&self) -> BigInt {
        self.hooks().into_iter().fold(BigInt::one(), |a, h| a * h)
    }

    /// `dim λ = d! / Π h`.
    pub fn dimension(&self) -> BigInt {
        factorial(self.size()) / self.hook_product()
    }

    /// `c(λ; t1, t2) = Σ (i t1 + j t2)`.
    pub fn content_sum(&self) -> RatFunc {
        let (mut a, mut b) = (0i64, 0i64);
        for (i, j) in self.cells() {
            a += i as i64;
            b += j as i64;
        }
        RatFunc::from_int(a)
            .mul(&RatFunc::t1())
            .add(&RatFunc::from_int(b).mul(&RatFunc::t2()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CellData {
    pub row: usize,
    pub col: u32,
    pub arm: u32,
    pub leg: u32,
    pub hook: u32,
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// All partitions of `d`, in reverse lexicographic order.
pub fn gen_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(d, d, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// The partitions of `d` with their positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Basis {
    d: u32,
    parts: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
}

impl Basis {
    pub fn new(d: u32) -> Self {
        let parts = gen_partitions(d);
        let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Basis { d, parts, index }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.parts[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewDiagram {
    outer: Partition,
    inner: Partition,
}

impl SkewDiagram {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, Error> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidInput(alloc::format!(
                "{} does not contain {}",
                outer,
                inner
            )));
        }
        Ok(SkewDiagram { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.outer
            .cells()
            .filter(move |&(i, j)| !self.inner.contains_cell(i, j))
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    /// Rank by `½ Σ_k (a_k - a_{k+1})²`, `a_k` the number of cells of content `j - i = k`.
    pub fn rank_by_contents(&self) -> u32 {
        let mut a: BTreeMap<i64, i64> = BTreeMap::new();
        for (i, j) in self.cells() {
            *a.entry(j as i64 - i as i64).or_insert(0) += 1;
        }
        let (lo, hi) = match (a.keys().next(), a.keys().next_back()) {
            (Some(&l), Some(&h)) => (l, h),
            _ => return 0,
        };
        let get = |k: i64| a.get(&k).copied().unwrap_or(0);
        let s: i64 = (lo - 1..=hi).map(|k| (get(k) - get(k + 1)).pow(2)).sum();
        (s / 2) as u32
    }

    /// Rank by repeatedly removing the outer rim and counting its rim hooks.
    pub fn rank_by_peeling(&self) -> u32 {
        let mut outer = self.outer.clone();
        let mut rank = 0;
        while outer != self.inner {
            let rim: BTreeSet<(usize, u32)> = outer
                .cells()
                .filter(|&(i, j)| !self.inner.contains_cell(i, j))
                .filter(|&(i, j)| !outer.contains_cell(i + 1, j + 1))
                .collect();
            rank += components(&rim);
            let rest: Vec<u32> = (0..outer.len())
                .map(|i| {
                    let inner_row = outer.part(i + 1).saturating_sub(1);
                    self.inner.part(i).max(inner_row).min(outer.part(i))
                })
                .collect();
            outer = Partition::new(rest);
        }
        rank
    }
}

fn components(cells: &BTreeSet<(usize, u32)>) -> u32 {
    let mut seen: BTreeSet<(usize, u32)> = BTreeSet::new();
    let mut n = 0;
    for &c in cells {
        if seen.contains(&c) {
            continue;
        }
        n += 1;
        let mut stack = alloc::vec![c];
        seen.insert(c);
        while let Some((i, j)) = stack.pop() {
            let mut nb = alloc::vec![(i + 1, j), (i, j + 1)];
            if i > 0 {
                nb.push((i - 1, j));
            }
            if j > 0 {
                nb.push((i, j - 1));
            }
            for x in nb {
                if cells.contains(&x) && seen.insert(x) {
                    stack.push(x);
                }
            }
        }
    }
    n
}

/// Memoized Murnaghan–Nakayama evaluation of `χ^λ_μ`.
#[derive(Default, Debug)]
pub struct Characters {
    memo: BTreeMap<(Partition, Partition), i64>,
}

impl Characters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, lambda: &Partition, mu: &Partition) -> Result<Q, Error> {
        if lambda.size() != mu.size() {
            return Err(Error::SizeMismatch {
                expected: lambda.size() as usize,
                found: mu.size() as usize,
            });
        }
        Ok(Q::from_integer(self.eval(lambda, mu).into()))
    }

    fn eval(&mut self, lambda: &Partition, mu: &Partition) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let k = mu.part(0);
        let rest = Partition(mu.parts()[1..].to_vec());
        let mut acc = 0;
        for (smaller, sign) in remove_rim_hooks(lambda, k) {
            acc += sign * self.eval(&smaller, &rest);
        }
        self.memo.insert(key, acc);
        acc
    }
}

pub fn character(lambda: &Partition, mu: &Partition) -> Result<Q, Error> {
    Characters::new().get(lambda, mu)
}

/// All `λ` minus a rim hook of size `k`, with sign `(-1)^{height}`.
fn remove_rim_hooks(lambda: &Partition, k: u32) -> Vec<(Partition, i64)> {
    let l = lambda.len();
    let beta: Vec<i64> = (0..l)
        .map(|i| lambda.part(i) as i64 + (l - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - k as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let parts = nbeta
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (l - 1 - j) as i64) as u32)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts), sign));
    }
    out
}
