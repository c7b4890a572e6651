//! Plane partitions with one infinite leg, as height functions over the
//! plane transverse to the leg.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::algebra::{macmahon_neg, RatFunc, Series};
use crate::partitions::{Partition, SkewDiagram};

/// Finite heights over `N² \ λ`; cells of `λ` carry the infinite leg.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlanePartition {
    profile: Partition,
    heights: BTreeMap<(u32, u32), u32>,
}

impl PlanePartition {
    pub fn bare(profile: Partition) -> Self {
        PlanePartition {
            profile,
            heights: BTreeMap::new(),
        }
    }

    pub fn profile(&self) -> &Partition {
        &self.profile
    }

    pub fn heights(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.heights
    }

    fn in_leg(&self, x: u32, y: u32) -> bool {
        self.profile.contains_cell(x as usize, y)
    }

    /// Height at `(x, y)`, `None` for the infinite leg.
    pub fn height(&self, x: u32, y: u32) -> Option<u32> {
        if self.in_leg(x, y) {
            None
        } else {
            Some(self.heights.get(&(x, y)).copied().unwrap_or(0))
        }
    }

    /// Renormalized volume.
    pub fn volume(&self) -> u32 {
        self.heights.values().sum()
    }

    fn bound(&self, x: u32, y: u32) -> u32 {
        self.height(x, y).unwrap_or(u32::MAX)
    }

    fn can_grow(&self, x: u32, y: u32) -> bool {
        let h = match self.height(x, y) {
            Some(h) => h,
            None => return false,
        };
        let left = if x == 0 { u32::MAX } else { self.bound(x - 1, y) };
        let down = if y == 0 { u32::MAX } else { self.bound(x, y - 1) };
        h < left && h < down
    }

    /// Sites where one more box keeps the configuration downward closed.
    fn growth_sites(&self) -> Vec<(u32, u32)> {
        let mut cand: BTreeSet<(u32, u32)> = BTreeSet::new();
        cand.insert((0, 0));
        for (x, y) in self.profile.cells() {
            cand.insert((x as u32 + 1, y));
            cand.insert((x as u32, y + 1));
        }
        for &(x, y) in self.heights.keys() {
            cand.insert((x, y));
            cand.insert((x + 1, y));
            cand.insert((x, y + 1));
        }
        cand.into_iter().filter(|&(x, y)| self.can_grow(x, y)).collect()
    }

    fn grown(&self, x: u32, y: u32) -> Self {
        let mut p = self.clone();
        *p.heights.entry((x, y)).or_insert(0) += 1;
        p
    }

    /// The slice `{(x, y) : height > k}` including the leg.
    pub fn slice(&self, k: u32) -> Partition {
        let mut rows: BTreeMap<u32, u32> = BTreeMap::new();
        for (x, y) in self.profile.cells() {
            let r = rows.entry(x as u32).or_insert(0);
            *r = (*r).max(y + 1);
        }
        for (&(x, y), &h) in &self.heights {
            if h > k {
                let r = rows.entry(x).or_insert(0);
                *r = (*r).max(y + 1);
            }
        }
        Partition::new(rows.values().copied().collect())
    }

    /// `Σ_k rank(λ^{(k)} / λ^{(k+1)})` over slices transverse to the leg.
    pub fn ord_van(&self) -> u32 {
        let top = self.heights.values().copied().max().unwrap_or(0);
        (0..top)
            .map(|k| {
                SkewDiagram::new(self.slice(k), self.slice(k + 1))
                    .expect("slices are nested")
                    .rank_by_contents()
            })
            .sum()
    }
}

/// All plane partitions with leg `λ` and volume at most `vmax`, grouped by volume.
pub fn enumerate(lambda: &Partition, vmax: u32) -> Vec<Vec<PlanePartition>> {
    let mut levels: Vec<Vec<PlanePartition>> = alloc::vec![alloc::vec![PlanePartition::bare(lambda.clone())]];
    for _ in 0..vmax {
        let mut next: BTreeSet<PlanePartition> = BTreeSet::new();
        for p in levels.last().unwrap() {
            for (x, y) in p.growth_sites() {
                next.insert(p.grown(x, y));
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

pub fn counts(lambda: &Partition, vmax: u32) -> Vec<usize> {
    enumerate(lambda, vmax).iter().map(|l| l.len()).collect()
}

/// `Σ_π (-q)^{|π|}` through `q^vmax`.
pub fn cy_vertex(lambda: &Partition, vmax: u32) -> Series {
    let c = counts(lambda, vmax)
        .into_iter()
        .enumerate()
        .map(|(n, k)| {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            RatFunc::from_int(sign * k as i64)
        })
        .collect();
    Series::from_poly(c, vmax as i64)
}

/// `cy_vertex(λ) / M(-q)`.
pub fn cy_vertex_reduced(lambda: &Partition, vmax: u32) -> Series {
    cy_vertex(lambda, vmax)
        .div(&macmahon_neg(vmax as i64))
        .expect("M(-q) has unit constant term")
}
