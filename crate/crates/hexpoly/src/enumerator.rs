//! Exhaustive enumeration of fixed polyominoes on the hexagonal lattice.
//!
//! The walker grows connected cell sets from a root cell, visiting every
//! polyomino exactly once in its canonical translate. It is the classic
//! untried-cell scheme: candidates are kept in one shared queue, each
//! recursion level owns a slice of it, and cells marked as seen while a
//! branch is explored are unmarked when the branch is abandoned. To avoid
//! counting a polyomino once per translate, growth is restricted to cells
//! that are lexicographically at or after the root: any column right of the
//! root's, or the root's column at the root's row or above. Every polyomino
//! has exactly one translate that fits, the one with its leftmost-lowest
//! cell at the root.
//!
//! Columns are stored as 64-bit masks, so membership tests and the
//! per-polyomino family classification are a handful of bit operations.
//! Counts are tallied in `u128` and widened at the end.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;

use crate::hexgrid::{Cell, FamilySpec, Polyomino};

/// Areas above this need an explicit opt-in via [`Options::cap`]: the walk
/// visits roughly five times more polyominoes per extra cell.
pub const DEFAULT_AREA_CAP: usize = 14;

/// Hard limit imposed by the 64-bit column masks and 32-column board.
pub const STRUCTURAL_AREA_LIMIT: usize = 30;

const MAX_COLS: usize = 32;
const ROW_OFFSET: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("max_area must be at least 1")]
    ZeroArea,
    #[error(
        "max_area {requested} exceeds the enumeration cap {cap}; counting grows \
         roughly fivefold per cell, raise Options::cap to opt in"
    )]
    CapExceeded { requested: usize, cap: usize },
}

/// Knobs for [`enumerate_all_with`]. `threads = 0` means one worker per
/// available CPU; counts are independent of the thread count because
/// subtrees are tallied separately and summed.
#[derive(Clone, Debug)]
pub struct Options {
    pub cap: usize,
    pub threads: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cap: DEFAULT_AREA_CAP,
            threads: 1,
        }
    }
}

/// Area-indexed counts per family, the result of [`enumerate_all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    max_area: usize,
    counts: BTreeMap<FamilySpec, Vec<BigUint>>,
}

impl CountTable {
    pub fn max_area(&self) -> usize {
        self.max_area
    }

    pub fn families(&self) -> impl Iterator<Item = FamilySpec> + '_ {
        self.counts.keys().copied()
    }

    /// Number of polyominoes of the family with exactly `area` cells
    /// (`1 <= area <= max_area`).
    pub fn count(&self, family: FamilySpec, area: usize) -> Option<&BigUint> {
        if area == 0 {
            return None;
        }
        self.counts.get(&family)?.get(area - 1)
    }

    /// All counts of one family, index `i` holding area `i + 1`.
    pub fn column(&self, family: FamilySpec) -> Option<&[BigUint]> {
        self.counts.get(&family).map(Vec::as_slice)
    }
}

/// Counts polyominoes of every requested family for areas `1..=max_area`
/// with default options (serial, default cap).
pub fn enumerate_all(
    max_area: usize,
    families: &[FamilySpec],
) -> Result<CountTable, EnumerationError> {
    enumerate_all_with(max_area, families, &Options::default())
}

/// Counts polyominoes of every requested family for areas `1..=max_area`.
pub fn enumerate_all_with(
    max_area: usize,
    families: &[FamilySpec],
    options: &Options,
) -> Result<CountTable, EnumerationError> {
    check_area(max_area, options.cap)?;
    let mut fams: Vec<FamilySpec> = families.to_vec();
    fams.sort_unstable();
    fams.dedup();

    let threads = match options.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    };
    let tallies = if threads > 1 && max_area >= 9 {
        count_parallel(max_area, &fams, threads)
    } else {
        let mut tallies = Tallies::new(fams.len(), max_area);
        let mut walker = Walker::new(max_area);
        walker.walk_from_root(&mut |cols, ncols, area| {
            tallies.record(cols, ncols, area, &fams)
        });
        tallies
    };

    let counts = fams
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let column = tallies.per_family[i]
                .iter()
                .map(|&n| BigUint::from(n))
                .collect();
            (f, column)
        })
        .collect();
    Ok(CountTable { max_area, counts })
}

/// Visits every polyomino of area `1..=max_area` exactly once, in a
/// deterministic order. The walk is serial so the visitor needs no
/// synchronization.
pub fn enumerate_stream(
    max_area: usize,
    visitor: &mut dyn FnMut(&Polyomino),
) -> Result<(), EnumerationError> {
    enumerate_stream_with(max_area, &Options::default(), visitor)
}

pub fn enumerate_stream_with(
    max_area: usize,
    options: &Options,
    visitor: &mut dyn FnMut(&Polyomino),
) -> Result<(), EnumerationError> {
    check_area(max_area, options.cap)?;
    let mut walker = Walker::new(max_area);
    walker.walk_from_root(&mut |cols, ncols, _area| {
        let cells = (0..ncols).flat_map(|c| {
            let mut mask = cols[c];
            std::iter::from_fn(move || {
                if mask == 0 {
                    return None;
                }
                let bit = mask.trailing_zeros();
                mask &= mask - 1;
                Some(Cell::new(c as i32, bit as i32 - ROW_OFFSET as i32))
            })
        });
        let p = Polyomino::new(cells).expect("walker emits connected sets");
        visitor(&p);
    });
    Ok(())
}

fn check_area(max_area: usize, cap: usize) -> Result<(), EnumerationError> {
    if max_area == 0 {
        return Err(EnumerationError::ZeroArea);
    }
    let effective = cap.min(STRUCTURAL_AREA_LIMIT);
    if max_area > effective {
        return Err(EnumerationError::CapExceeded {
            requested: max_area,
            cap: effective,
        });
    }
    Ok(())
}

/// Per-family, per-area hit counters.
struct Tallies {
    per_family: Vec<Vec<u128>>,
}

impl Tallies {
    fn new(nfamilies: usize, max_area: usize) -> Self {
        Tallies {
            per_family: vec![vec![0u128; max_area]; nfamilies],
        }
    }

    fn record(&mut self, cols: &[u64; MAX_COLS], ncols: usize, area: u32, fams: &[FamilySpec]) {
        let shape = analyze(cols, ncols);
        for (i, &f) in fams.iter().enumerate() {
            let hit = match f {
                FamilySpec::All => true,
                FamilySpec::ColumnConvex => shape.column_convex,
                FamilySpec::Cheesy(m) => shape.max_gap.is_some_and(|g| g <= m.get()),
            };
            if hit {
                self.per_family[i][(area - 1) as usize] += 1;
            }
        }
    }

    fn absorb(&mut self, other: &Tallies) {
        for (mine, theirs) in self.per_family.iter_mut().zip(&other.per_family) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a += b;
            }
        }
    }
}

/// Family-relevant shape of one polyomino. `max_gap` is `Some(g)` when the
/// polyomino grows rightward (gap-free first column, at most two runs per
/// column, every run touching the previous column) with largest inter-run
/// gap `g`; membership at level `m` is then just `g <= m`.
struct ShapeFlags {
    column_convex: bool,
    max_gap: Option<u32>,
}

fn analyze(cols: &[u64; MAX_COLS], ncols: usize) -> ShapeFlags {
    let mut column_convex = true;
    let mut rightward = true;
    let mut max_gap = 0u32;
    let mut prev = 0u64;
    for (c, &mask) in cols[..ncols].iter().enumerate() {
        let run_starts = mask & !(mask << 1);
        let runs = run_starts.count_ones();
        if runs != 1 {
            column_convex = false;
        }
        if rightward {
            if runs > 2 || (c == 0 && runs != 1) {
                rightward = false;
            } else {
                if runs == 2 {
                    let lo = mask.trailing_zeros();
                    let lo_len = (mask >> lo).trailing_ones();
                    let gap = (mask >> (lo + lo_len)).trailing_zeros();
                    max_gap = max_gap.max(gap);
                }
                if c > 0 {
                    // A run occupying bits s..=e has left-hand neighbours in
                    // bits s..=e+1 of the previous column.
                    let mut rest = mask;
                    while rest != 0 {
                        let s = rest.trailing_zeros();
                        let len = (rest >> s).trailing_ones();
                        let run = (u64::MAX >> (64 - len)) << s;
                        if (run | (run << 1)) & prev == 0 {
                            rightward = false;
                            break;
                        }
                        rest &= !run;
                    }
                }
            }
        }
        if !column_convex && !rightward {
            break;
        }
        prev = mask;
    }
    ShapeFlags {
        column_convex,
        max_gap: rightward.then_some(max_gap),
    }
}

/// A frozen branch of the walk: full board and seen state plus the untried
/// candidates the branch owns. Workers resume these independently.
struct Job {
    cols: [u64; MAX_COLS],
    seen: [u64; MAX_COLS],
    ncols: usize,
    area: u32,
    queue: Vec<(u8, u32)>,
}

fn count_parallel(max_area: usize, fams: &[FamilySpec], threads: usize) -> Tallies {
    // Freeze every subtree rooted at this area; ~3600 jobs at area 7 keep
    // the workers balanced without measurable snapshot overhead.
    let split_area = 7.min(max_area as u32 - 1);
    let mut jobs = Vec::new();
    let mut tallies = Tallies::new(fams.len(), max_area);
    {
        let mut walker = Walker::new(max_area);
        walker.collect_jobs(
            split_area,
            &mut |cols, ncols, area| tallies.record(cols, ncols, area, fams),
            &mut jobs,
        );
    }

    let next = AtomicUsize::new(0);
    let worker_tallies: Vec<Tallies> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                let jobs = &jobs;
                let next = &next;
                scope.spawn(move || {
                    let mut local = Tallies::new(fams.len(), max_area);
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(job) = jobs.get(i) else { break };
                        let mut walker = Walker::resume(max_area, job);
                        let end = walker.queue.len();
                        walker.expand(0, end, job.area, &mut |cols, ncols, area| {
                            local.record(cols, ncols, area, fams)
                        });
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for t in &worker_tallies {
        tallies.absorb(t);
    }
    tallies
}

/// The recursive grower. `queue` is shared across recursion levels: a level
/// owns `queue[start..end]`, appends newly reachable cells past `end` for
/// its children, and truncates back on return.
struct Walker {
    max_area: usize,
    cols: [u64; MAX_COLS],
    seen: [u64; MAX_COLS],
    ncols: usize,
    queue: Vec<(u8, u32)>,
}

impl Walker {
    fn new(max_area: usize) -> Self {
        Walker {
            max_area,
            cols: [0; MAX_COLS],
            seen: [0; MAX_COLS],
            ncols: 0,
            queue: Vec::with_capacity(4 * max_area + 8),
        }
    }

    fn resume(max_area: usize, job: &Job) -> Self {
        Walker {
            max_area,
            cols: job.cols,
            seen: job.seen,
            ncols: job.ncols,
            queue: job.queue.clone(),
        }
    }

    fn walk_from_root(&mut self, on_node: &mut impl FnMut(&[u64; MAX_COLS], usize, u32)) {
        self.seed_root();
        on_node(&self.cols, self.ncols, 1);
        if self.max_area > 1 {
            let end = self.queue.len();
            self.expand(0, end, 1, on_node);
        }
    }

    fn seed_root(&mut self) {
        debug_assert!(self.queue.is_empty());
        self.place((0, ROW_OFFSET));
        self.seen[0] |= 1 << ROW_OFFSET;
        self.push_new_candidates((0, ROW_OFFSET));
    }

    fn place(&mut self, (c, b): (u8, u32)) {
        self.cols[c as usize] |= 1 << b;
        self.ncols = self.ncols.max(c as usize + 1);
    }

    fn unplace(&mut self, (c, b): (u8, u32), old_ncols: usize) {
        self.cols[c as usize] &= !(1 << b);
        self.ncols = old_ncols;
    }

    /// Appends the unseen admissible neighbours of a cell to the queue and
    /// marks them seen. Admissible cells stay on the board (column below
    /// `max_area`, which also keeps rows within the 64-bit masks) and at or
    /// after the root in column order, so each polyomino is built from
    /// exactly one translate.
    fn push_new_candidates(&mut self, (c, b): (u8, u32)) {
        let c = c as i32;
        let b = b as i32;
        let width = self.max_area as i32;
        for (nc, nb) in [
            (c, b + 1),
            (c, b - 1),
            (c + 1, b),
            (c + 1, b - 1),
            (c - 1, b),
            (c - 1, b + 1),
        ] {
            if nc < 0 || nc >= width || (nc == 0 && nb < ROW_OFFSET as i32) {
                continue;
            }
            let (nc, nb) = (nc as usize, nb as u32);
            if self.seen[nc] & (1 << nb) == 0 {
                self.seen[nc] |= 1 << nb;
                self.queue.push((nc as u8, nb));
            }
        }
    }

    /// Tries each owned candidate in turn as the next cell of the current
    /// `area`-cell polyomino, reporting each grown node and recursing while
    /// below `max_area`.
    fn expand(
        &mut self,
        start: usize,
        end: usize,
        area: u32,
        on_node: &mut impl FnMut(&[u64; MAX_COLS], usize, u32),
    ) {
        debug_assert_eq!(self.queue.len(), end);
        for i in start..end {
            let cell = self.queue[i];
            let old_ncols = self.ncols;
            self.place(cell);
            on_node(&self.cols, self.ncols, area + 1);
            if ((area + 1) as usize) < self.max_area {
                self.push_new_candidates(cell);
                let new_end = self.queue.len();
                self.expand(i + 1, new_end, area + 1, on_node);
                for &(qc, qb) in &self.queue[end..] {
                    self.seen[qc as usize] &= !(1 << qb);
                }
                self.queue.truncate(end);
            }
            self.unplace(cell, old_ncols);
        }
    }

    /// Like [`Walker::expand`] up to `split_area`, but freezes each node of
    /// that area as a [`Job`] instead of recursing into it.
    fn collect_jobs(
        &mut self,
        split_area: u32,
        on_node: &mut impl FnMut(&[u64; MAX_COLS], usize, u32),
        jobs: &mut Vec<Job>,
    ) {
        self.seed_root();
        on_node(&self.cols, self.ncols, 1);
        let end = self.queue.len();
        self.expand_collecting(0, end, 1, split_area, on_node, jobs);
    }

    fn expand_collecting(
        &mut self,
        start: usize,
        end: usize,
        area: u32,
        split_area: u32,
        on_node: &mut impl FnMut(&[u64; MAX_COLS], usize, u32),
        jobs: &mut Vec<Job>,
    ) {
        for i in start..end {
            let cell = self.queue[i];
            let old_ncols = self.ncols;
            self.place(cell);
            on_node(&self.cols, self.ncols, area + 1);
            if area + 1 == split_area {
                self.push_new_candidates(cell);
                jobs.push(Job {
                    cols: self.cols,
                    seen: self.seen,
                    ncols: self.ncols,
                    area: area + 1,
                    queue: self.queue[i + 1..].to_vec(),
                });
                for &(qc, qb) in &self.queue[end..] {
                    self.seen[qc as usize] &= !(1 << qb);
                }
                self.queue.truncate(end);
            } else {
                self.push_new_candidates(cell);
                let new_end = self.queue.len();
                self.expand_collecting(i + 1, new_end, area + 1, split_area, on_node, jobs);
                for &(qc, qb) in &self.queue[end..] {
                    self.seen[qc as usize] &= !(1 << qb);
                }
                self.queue.truncate(end);
            }
            self.unplace(cell, old_ncols);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::{classify, is_polyomino};
    use std::collections::HashSet;

    fn big(n: u128) -> BigUint {
        BigUint::from(n)
    }

    fn fam(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    #[test]
    fn total_counts_for_small_areas() {
        let table = enumerate_all(6, &[FamilySpec::All]).unwrap();
        let expect = [1u128, 3, 11, 44, 186, 814];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(table.count(FamilySpec::All, i + 1), Some(&big(e)));
        }
    }

    #[test]
    fn family_counts_at_area_four() {
        let fams = [
            fam("cc"),
            fam("cheesy:1"),
            fam("cheesy:2"),
            fam("cheesy:3"),
            FamilySpec::All,
        ];
        let table = enumerate_all(4, &fams).unwrap();
        assert_eq!(table.count(fam("cc"), 4), Some(&big(42)));
        assert_eq!(table.count(fam("cheesy:1"), 4), Some(&big(43)));
        assert_eq!(table.count(fam("cheesy:2"), 4), Some(&big(43)));
        assert_eq!(table.count(fam("cheesy:3"), 4), Some(&big(43)));
        assert_eq!(table.count(FamilySpec::All, 4), Some(&big(44)));
    }

    #[test]
    fn stream_visits_each_polyomino_once() {
        let mut seen = HashSet::new();
        let mut total = 0u64;
        enumerate_stream(6, &mut |p: &Polyomino| {
            assert!(is_polyomino(p.cells()));
            assert!(seen.insert(p.clone()), "duplicate {:?}", p);
            total += 1;
        })
        .unwrap();
        assert_eq!(total, 1 + 3 + 11 + 44 + 186 + 814);
    }

    #[test]
    fn stream_of_area_one_is_the_single_cell() {
        let mut visits = Vec::new();
        enumerate_stream(1, &mut |p: &Polyomino| visits.push(p.clone())).unwrap();
        assert_eq!(visits.len(), 1);
        assert_eq!(visits[0].cells(), &[Cell::new(0, 0)]);
    }

    /// The fast mask classifier must agree with the reference cell-set
    /// classifier on every polyomino it tallies.
    #[test]
    fn mask_classifier_matches_reference() {
        let fams = [
            fam("cc"),
            fam("cheesy:1"),
            fam("cheesy:2"),
            FamilySpec::All,
        ];
        let table = enumerate_all(7, &fams).unwrap();
        let mut reference = vec![vec![0u64; 7]; fams.len()];
        enumerate_stream(7, &mut |p: &Polyomino| {
            for (i, &f) in fams.iter().enumerate() {
                if classify(p, f) {
                    reference[i][p.area() - 1] += 1;
                }
            }
        })
        .unwrap();
        for (i, &f) in fams.iter().enumerate() {
            for area in 1..=7 {
                assert_eq!(
                    table.count(f, area),
                    Some(&big(reference[i][area - 1] as u128)),
                    "family {f} area {area}"
                );
            }
        }
    }

    #[test]
    fn families_are_nested_by_counts() {
        let fams = [
            fam("cc"),
            fam("cheesy:1"),
            fam("cheesy:2"),
            fam("cheesy:3"),
            FamilySpec::All,
        ];
        let table = enumerate_all(8, &fams).unwrap();
        for area in 1..=8 {
            for pair in fams.windows(2) {
                assert!(
                    table.count(pair[0], area) <= table.count(pair[1], area),
                    "{} exceeds {} at area {area}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_totals() {
        let fams = [fam("cc"), fam("cheesy:2"), FamilySpec::All];
        let serial = enumerate_all(9, &fams).unwrap();
        let opts = Options {
            threads: 3,
            ..Options::default()
        };
        let parallel = enumerate_all_with(9, &fams, &opts).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_all(15, &[FamilySpec::All]).unwrap_err();
        assert_eq!(
            err,
            EnumerationError::CapExceeded {
                requested: 15,
                cap: 14
            }
        );
        assert_eq!(
            enumerate_all(0, &[FamilySpec::All]).unwrap_err(),
            EnumerationError::ZeroArea
        );
        let raised = Options {
            cap: 16,
            ..Options::default()
        };
        assert!(enumerate_all_with(10, &[FamilySpec::All], &raised).is_ok());
        let beyond = Options {
            cap: 1000,
            ..Options::default()
        };
        assert_eq!(
            enumerate_all_with(31, &[FamilySpec::All], &beyond).unwrap_err(),
            EnumerationError::CapExceeded {
                requested: 31,
                cap: STRUCTURAL_AREA_LIMIT
            }
        );
    }
}
