//! Greedy two-way partitioning of circle sets.
//!
//! Both splitters walk the circles from largest to smallest and drop each
//! one into the emptier bucket. Because the input is sorted, the group that
//! ends up over its target share can only have gotten there through large
//! circles, which yields a lower bound on its smallest element. That bound
//! is what lets the packer round the corners of the larger subcontainer.

use crate::error::{Error, Result};
use crate::geometry::SplitKey;

/// A circle, identified by its position in the caller's input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entry {
    pub area: f64,
    pub id: usize,
}

/// Multiset of circle areas kept sorted by decreasing area. Equal areas
/// keep their input order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CircleSet {
    entries: Vec<Entry>,
    combined: f64,
}

impl CircleSet {
    /// Builds a set from raw areas; entry `i` gets id `i`.
    pub fn new(areas: &[f64]) -> Result<Self> {
        let entries = areas
            .iter()
            .enumerate()
            .map(|(id, &area)| Entry { area, id })
            .collect();
        Self::from_entries(entries)
    }

    pub fn from_entries(mut entries: Vec<Entry>) -> Result<Self> {
        if let Some(bad) = entries
            .iter()
            .find(|e| !(e.area > 0.0 && e.area.is_finite()))
        {
            return Err(Error::NonPositiveArea {
                index: bad.id,
                area: bad.area,
            });
        }
        entries.sort_by(|a, b| b.area.total_cmp(&a.area));
        Ok(Self::from_sorted(entries))
    }

    fn from_sorted(entries: Vec<Entry>) -> Self {
        let combined = entries.iter().map(|e| e.area).sum();
        Self { entries, combined }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn areas(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.area)
    }

    /// Sum of all areas.
    pub fn combined(&self) -> f64 {
        self.combined
    }

    /// Smallest area, or `+∞` for the empty set.
    pub fn minimum(&self) -> f64 {
        self.entries.last().map_or(f64::INFINITY, |e| e.area)
    }
}

/// Unweighted greedy split. Ties go to the first bucket; afterwards the
/// buckets are swapped if needed so that `Σ(C₁) ≤ Σ(C₂)`.
///
/// Guarantees `min(C₂) ≥ Σ(C₂) - Σ(C₁)`.
pub fn split(set: &CircleSet) -> (CircleSet, CircleSet) {
    let (mut first, mut second) = (Vec::new(), Vec::new());
    let (mut sum1, mut sum2) = (0.0, 0.0);
    for &e in set.entries() {
        if sum1 <= sum2 {
            sum1 += e.area;
            first.push(e);
        } else {
            sum2 += e.area;
            second.push(e);
        }
    }
    let c1 = CircleSet {
        entries: first,
        combined: sum1,
    };
    let c2 = CircleSet {
        entries: second,
        combined: sum2,
    };
    if sum1 > sum2 {
        (c2, c1)
    } else {
        (c1, c2)
    }
}

/// Greedy split towards the area ratio `f₁ : f₂`: every circle goes to the
/// bucket with the smaller relative fill `Σ(Cᵢ) / fᵢ`, ties to the first.
///
/// Guarantees `min(Cᵢ) ≥ Σ(Cᵢ) - fᵢ Σ(Cⱼ) / fⱼ` for both buckets.
pub fn weighted_split(set: &CircleSet, key: SplitKey) -> (CircleSet, CircleSet) {
    let mut buckets: [Vec<Entry>; 2] = [Vec::new(), Vec::new()];
    let mut sums = [0.0f64; 2];
    for &e in set.entries() {
        let j = if sums[0] / key.f1 <= sums[1] / key.f2 {
            0
        } else {
            1
        };
        sums[j] += e.area;
        buckets[j].push(e);
    }
    let [b1, b2] = buckets;
    (
        CircleSet {
            entries: b1,
            combined: sums[0],
        },
        CircleSet {
            entries: b2,
            combined: sums[1],
        },
    )
}

/// Rounding area guaranteed for subcontainer `i`:
/// `max{b, Σᵢ - fᵢ Σⱼ / fⱼ, 0}`.
pub fn min_guarantee(sum_i: f64, sum_j: f64, f_i: f64, f_j: f64, b: f64) -> f64 {
    (sum_i - f_i * sum_j / f_j).max(b).max(0.0)
}

/// Parameters `(aᵢ, bᵢ)` of two subcontainers: packable area and rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugatedPair {
    pub first: (f64, f64),
    pub second: (f64, f64),
}

impl ConjugatedPair {
    /// Areas and guaranteed roundings of a split's two outputs.
    pub fn from_split(c1: &CircleSet, c2: &CircleSet, key: SplitKey, b: f64) -> Self {
        let (a1, a2) = (c1.combined(), c2.combined());
        Self {
            first: (a1, min_guarantee(a1, a2, key.f1, key.f2, b)),
            second: (a2, min_guarantee(a2, a1, key.f2, key.f1, b)),
        }
    }

    pub fn get(&self, i: usize) -> (f64, f64) {
        if i == 0 {
            self.first
        } else {
            self.second
        }
    }
}

/// Conjugatedness violations with absolute slack `tol`, allowing
/// `a₁ + a₂` anywhere in `[0, a]` when `allow_slack_area` is set.
pub(crate) fn conjugated_violation(
    pair: &ConjugatedPair,
    a: f64,
    b: f64,
    key: SplitKey,
    tol: f64,
    allow_slack_area: bool,
) -> Option<String> {
    let (a1, a2) = (pair.first.0, pair.second.0);
    let total = a1 + a2;
    let area_ok = if allow_slack_area {
        a1 >= 0.0 && a2 >= 0.0 && total <= a + tol
    } else {
        (total - a).abs() <= tol
    };
    if !area_ok {
        return Some(format!("a1 + a2 = {total} does not match a = {a}"));
    }
    for i in 0..2 {
        let (ai, bi) = pair.get(i);
        let aj = pair.get(1 - i).0;
        if bi < b - tol {
            return Some(format!("b{} = {bi} is below b = {b}", i + 1));
        }
        let bound = ai - key.get(i) * aj / key.get(1 - i);
        if bi < bound - tol {
            return Some(format!(
                "b{} = {bi} is below the split bound {bound}",
                i + 1
            ));
        }
    }
    None
}

/// True iff the two tuples are `(a, b, F)`-conjugated: `a₁ + a₂ = a`,
/// `bᵢ ≥ b` and `bᵢ ≥ aᵢ - fᵢ aⱼ / fⱼ`, each within `1e-12·a`.
pub fn check_conjugated(pair: &ConjugatedPair, a: f64, b: f64, key: SplitKey) -> bool {
    conjugated_violation(pair, a, b, key, 1e-12 * a.abs(), false).is_none()
}
