//! Finite unions of disjoint open intervals.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sum::CompensatedSum;

/// Sorted, strictly disjoint intervals `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnion<S> {
    intervals: Vec<(S, S)>,
}

impl<S: Real> Default for IntervalUnion<S> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<S: Real> IntervalUnion<S> {
    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn single(lo: S, hi: S) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    /// Validates the invariants without reordering anything.
    pub fn new(intervals: Vec<(S, S)>) -> Result<Self> {
        for (k, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidUnion(format!(
                    "component {k} = ({lo}, {hi}) is not a proper interval"
                )));
            }
            if k > 0 && !(intervals[k - 1].1 < lo) {
                return Err(Error::InvalidUnion(format!(
                    "components {} and {k} overlap or are out of order",
                    k - 1
                )));
            }
        }
        Ok(Self { intervals })
    }

    /// Sorts and merges arbitrary intervals; empty pairs are dropped.
    pub fn from_unsorted(mut intervals: Vec<(S, S)>) -> Result<Self> {
        intervals.retain(|&(lo, hi)| lo < hi);
        if intervals.iter().any(|&(lo, hi)| !(lo.is_finite() && hi.is_finite())) {
            return Err(Error::InvalidUnion("non-finite endpoint".into()));
        }
        intervals.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let mut merged: Vec<(S, S)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Ok(Self { intervals: merged })
    }

    pub fn intervals(&self) -> &[(S, S)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Smallest and largest endpoint.
    pub fn hull(&self) -> Option<(S, S)> {
        Some((self.intervals.first()?.0, self.intervals.last()?.1))
    }

    /// Sum of component lengths.
    pub fn measure(&self) -> S {
        let mut acc = CompensatedSum::new();
        for &(lo, hi) in &self.intervals {
            acc.add(hi - lo);
        }
        acc.value()
    }

    /// Intersection with `[a, b]`; components straddling an end are truncated.
    pub fn clip(&self, a: S, b: S) -> Self {
        let intervals = self
            .intervals
            .iter()
            .filter_map(|&(lo, hi)| {
                let (lo, hi) = (lo.max(a), hi.min(b));
                (lo < hi).then_some((lo, hi))
            })
            .collect();
        Self { intervals }
    }

    pub fn contains(&self, t: S) -> bool {
        let k = self.intervals.partition_point(|&(_, hi)| hi <= t);
        k < self.intervals.len() && self.intervals[k].0 < t
    }

    /// True when no component of `self` overlaps a component of `other`
    /// (shared endpoints are allowed, the intervals are open).
    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = (self.intervals[i], other.intervals[j]);
            if a.0.max(b.0) < a.1.min(b.1) {
                return false;
            }
            if a.1 <= b.1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        true
    }

    /// Measure of the intersection with `other`.
    pub fn overlap(&self, other: &Self) -> S {
        let mut acc = CompensatedSum::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = (self.intervals[i], other.intervals[j]);
            let w = a.1.min(b.1) - a.0.max(b.0);
            if w > S::zero() {
                acc.add(w);
            }
            if a.1 <= b.1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        acc.value()
    }

    /// Applies a nondecreasing map to every endpoint. Components whose image
    /// collapses to a point are an error.
    pub fn map_endpoints<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(S) -> Result<S>,
    {
        let mut out = Vec::with_capacity(self.intervals.len());
        for &(lo, hi) in &self.intervals {
            out.push((f(lo)?, f(hi)?));
        }
        Self::new(out)
    }

    /// Writes a `lo,hi` CSV with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "lo,hi")?;
        for &(lo, hi) in &self.intervals {
            writeln!(
                w,
                "{:.16e},{:.16e}",
                lo.to_f64().unwrap_or(f64::NAN),
                hi.to_f64().unwrap_or(f64::NAN)
            )?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim() == "lo,hi" => {}
            _ => return Err(Error::InvalidUnion("missing lo,hi header".into())),
        }
        let mut intervals = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::InvalidUnion(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Option<(f64, f64)> = line
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
            let (lo, hi) = parsed.ok_or_else(|| Error::InvalidUnion(format!("row {} unparsable: {line}", k + 1)))?;
            intervals.push((S::lit(lo), S::lit(hi)));
        }
        Self::new(intervals)
    }
}

/// Distance between two unions, zero when they overlap or touch.
pub fn set_distance<S: Real>(a: &IntervalUnion<S>, b: &IntervalUnion<S>) -> Result<S> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best = S::infinity();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a.intervals[i], b.intervals[j]);
        let gap = (x.0.max(y.0) - x.1.min(y.1)).max(S::zero());
        best = best.min(gap);
        if x.1 <= y.1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    Ok(best)
}
