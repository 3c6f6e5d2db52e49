//! Column-by-column transfer counting for the cheesy families.
//!
//! A cheesy polyomino of level `m` is built left to right: the first column
//! is a single run, and every later column has one or two runs, each sharing
//! an edge with the previous column, with at most `m` empty cells between
//! the two runs. Because every run must touch the column before it, a
//! column's attachment options depend only on the previous column's shape,
//! not on anything further left, which makes the count a product of local
//! transfer weights.
//!
//! The state is the shape of the rightmost column: run lengths and gap
//! `(lower, gap, upper)`, with `gap = upper = 0` for a single run. The
//! number of vertical offsets at which a `next` shape can legally attach to
//! a `prev` shape is [`placements`]; the dynamic program sums shape weights
//! by total area. Level `0` is allowed and counts column-convex polyominoes
//! (no second run ever fits a zero gap).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

/// Shape of one column: a lower run of `lower >= 1` cells, then `gap` empty
/// cells, then an upper run of `upper` cells. `gap` and `upper` are both
/// zero (single run) or both positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnShape {
    lower: u32,
    gap: u32,
    upper: u32,
}

impl ColumnShape {
    pub fn single(lower: u32) -> ColumnShape {
        assert!(lower >= 1, "a column has at least one cell");
        ColumnShape {
            lower,
            gap: 0,
            upper: 0,
        }
    }

    pub fn split(lower: u32, gap: u32, upper: u32) -> ColumnShape {
        assert!(lower >= 1, "a column has at least one cell");
        assert!(
            gap >= 1 && upper >= 1,
            "a split column has a positive gap and upper run"
        );
        ColumnShape { lower, gap, upper }
    }

    pub fn lower(&self) -> u32 {
        self.lower
    }

    pub fn gap(&self) -> u32 {
        self.gap
    }

    pub fn upper(&self) -> u32 {
        self.upper
    }

    /// Number of occupied cells.
    pub fn cells(&self) -> u32 {
        self.lower + self.upper
    }

    /// Occupied cells plus the gap.
    pub fn height(&self) -> u32 {
        self.lower + self.gap + self.upper
    }

    pub fn components(&self) -> u32 {
        if self.upper == 0 {
            1
        } else {
            2
        }
    }

    /// Runs as `(start_row, end_row)` pairs anchored at row 0.
    fn runs(&self) -> IntervalSet {
        let mut rs = IntervalSet::default();
        rs.push_merging((0, self.lower as i64 - 1));
        if self.upper > 0 {
            let s = (self.lower + self.gap) as i64;
            rs.push_merging((s, s + self.upper as i64 - 1));
        }
        rs
    }
}

/// A small union of disjoint closed intervals, kept sorted. Capacity four
/// suffices here: shapes have at most two runs, so every set built below is
/// a union of at most two intervals or an intersection of two such unions.
#[derive(Clone, Copy, Debug, Default)]
struct IntervalSet {
    items: [(i64, i64); 4],
    len: usize,
}

impl IntervalSet {
    fn as_slice(&self) -> &[(i64, i64)] {
        &self.items[..self.len]
    }

    /// Inserts an interval, merging overlaps and adjacencies.
    fn push_merging(&mut self, (a, b): (i64, i64)) {
        debug_assert!(a <= b);
        let mut merged = (a, b);
        let mut out = IntervalSet::default();
        for &(x, y) in self.as_slice() {
            if y + 1 < merged.0 || merged.1 + 1 < x {
                out.push_raw((x, y));
            } else {
                merged = (merged.0.min(x), merged.1.max(y));
            }
        }
        out.push_raw(merged);
        out.items[..out.len].sort_unstable();
        *self = out;
    }

    fn push_raw(&mut self, iv: (i64, i64)) {
        self.items[self.len] = iv;
        self.len += 1;
    }

    fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = IntervalSet::default();
        for &(a, b) in self.as_slice() {
            for &(c, d) in other.as_slice() {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo <= hi {
                    out.push_raw((lo, hi));
                }
            }
        }
        out
    }

    fn total_length(&self) -> u64 {
        self.as_slice().iter().map(|&(a, b)| (b - a + 1) as u64).sum()
    }
}

/// Number of vertical offsets at which a column of shape `next` can be
/// placed beside a column of shape `prev` so that every run of `next`
/// shares an edge with `prev`.
///
/// A run occupying rows `s..=e` touches the previous column exactly when
/// that column occupies some row in `s..=e+1` (the two left-hand neighbours
/// of row `r` are rows `r` and `r+1`). For a single previous run `p..=q`
/// that constrains the offset `d` of the next shape to an interval, so the
/// total is the size of an intersection of unions of intervals.
pub fn placements(prev: ColumnShape, next: ColumnShape) -> u64 {
    let prev_runs = prev.runs();
    let mut feasible: Option<IntervalSet> = None;
    for &(s, e) in next.runs().as_slice() {
        let mut windows = IntervalSet::default();
        for &(p, q) in prev_runs.as_slice() {
            // Shifting the run to s+d..=e+d, touching needs
            // s+d <= q and e+d+1 >= p.
            windows.push_merging((p - e - 1, q - s));
        }
        feasible = Some(match feasible {
            None => windows,
            Some(fs) => fs.intersect(&windows),
        });
    }
    feasible.unwrap_or_default().total_length()
}

/// Column shapes of the level-`level` family grouped by occupied cell
/// count: entry `c` lists the shapes with exactly `c + 1` cells, each group
/// in a fixed deterministic order.
fn shapes_by_cells(level: u32, max_cells: u32) -> Vec<Vec<ColumnShape>> {
    let mut out: Vec<Vec<ColumnShape>> = vec![Vec::new(); max_cells as usize];
    for lower in 1..=max_cells {
        out[lower as usize - 1].push(ColumnShape::single(lower));
        for gap in 1..=level {
            for upper in 1..=max_cells - lower {
                out[(lower + upper) as usize - 1].push(ColumnShape::split(lower, gap, upper));
            }
        }
    }
    out
}

/// Counts level-`level` cheesy polyominoes by area, returning the counts
/// for areas `1..=max_area` (index `i` holds area `i + 1`). Level `0`
/// counts column-convex polyominoes.
pub fn count(level: u32, max_area: u32) -> Vec<BigUint> {
    count_by_shape(level, max_area)
        .iter()
        .map(|by_shape| by_shape.values().sum())
        .collect()
}

/// Counts level-`level` cheesy polyominoes by area and by the shape of
/// their rightmost column. Index `i` of the result holds the map for area
/// `i + 1`; absent shapes have count zero.
pub fn count_by_shape(level: u32, max_area: u32) -> Vec<BTreeMap<ColumnShape, BigUint>> {
    assert!(max_area >= 1, "max_area must be at least 1");
    let groups = shapes_by_cells(level, max_area);
    let mut dp: Vec<BTreeMap<ColumnShape, BigUint>> =
        vec![BTreeMap::new(); (max_area + 1) as usize];

    // A first column is a single gap-free run.
    for cells in 1..=max_area {
        dp[cells as usize].insert(ColumnShape::single(cells), BigUint::from(1u32));
    }

    for area in 1..=max_area {
        // Collect the transitions of this area level first: the borrow on
        // dp[area] must end before deeper entries are updated.
        let frontier: Vec<(ColumnShape, BigUint)> = dp[area as usize]
            .iter()
            .map(|(&s, w)| (s, w.clone()))
            .collect();
        for (prev, weight) in frontier {
            if weight.is_zero() {
                continue;
            }
            for group in &groups[..(max_area - area) as usize] {
                for &next in group {
                    let ways = placements(prev, next);
                    if ways == 0 {
                        continue;
                    }
                    let add = &weight * ways;
                    dp[(area + next.cells()) as usize]
                        .entry(next)
                        .and_modify(|w| *w += &add)
                        .or_insert(add);
                }
            }
        }
    }

    dp.remove(0);
    dp
}
