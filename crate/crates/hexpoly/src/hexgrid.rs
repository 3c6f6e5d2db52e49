//! Cell geometry for polyominoes on the hexagonal lattice.
//!
//! Hexagons are addressed by `(col, row)` in an axial-style convention where
//! every column is a vertical strip of cells and consecutive columns are
//! offset by half a cell. A cell shares an edge with six others: the cells
//! directly above and below it, and two cells in each adjacent column. With
//! our orientation the right-hand neighbours of `(c, r)` sit at `(c+1, r)`
//! and `(c+1, r-1)`, and the left-hand ones at `(c-1, r)` and `(c-1, r+1)`.
//!
//! A polyomino is a finite edge-connected set of cells, considered up to
//! translation. The canonical translate puts the leftmost occupied column at
//! `col = 0` and the lowest cell of that column at `row = 0`.

use std::collections::HashSet;
use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

/// A single hexagonal cell addressed by column and row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

impl Cell {
    pub fn new(col: i32, row: i32) -> Self {
        Cell { col, row }
    }
}

/// The six edge-neighbours of a cell, in a fixed deterministic order:
/// above, below, the two right-hand neighbours, then the two left-hand ones.
pub fn neighbors(cell: Cell) -> [Cell; 6] {
    let Cell { col: c, row: r } = cell;
    [
        Cell::new(c, r + 1),
        Cell::new(c, r - 1),
        Cell::new(c + 1, r),
        Cell::new(c + 1, r - 1),
        Cell::new(c - 1, r),
        Cell::new(c - 1, r + 1),
    ]
}

/// Why a cell set fails to be a polyomino.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvalidPolyomino {
    #[error("a polyomino must contain at least one cell")]
    Empty,
    #[error("cell set is not edge-connected")]
    Disconnected,
}

/// Checks that a cell set is nonempty and edge-connected. Duplicate cells
/// are tolerated and count once.
pub fn is_polyomino(cells: &[Cell]) -> bool {
    validate(cells).is_ok()
}

fn validate(cells: &[Cell]) -> Result<HashSet<Cell>, InvalidPolyomino> {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let Some(&start) = set.iter().next() else {
        return Err(InvalidPolyomino::Empty);
    };
    let mut seen = HashSet::with_capacity(set.len());
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(cell) = stack.pop() {
        for n in neighbors(cell) {
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    if seen.len() == set.len() {
        Ok(set)
    } else {
        Err(InvalidPolyomino::Disconnected)
    }
}

/// A polyomino in canonical position: leftmost column at 0, and the lowest
/// cell of column 0 at row 0. Cells are stored sorted by `(col, row)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyomino {
    cells: Vec<Cell>,
}

impl Polyomino {
    /// Builds a polyomino from an arbitrary translate of its cell set.
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self, InvalidPolyomino> {
        let raw: Vec<Cell> = cells.into_iter().collect();
        let set = validate(&raw)?;
        let mut cells: Vec<Cell> = set.into_iter().collect();
        cells.sort_unstable();
        let min_col = cells[0].col;
        let min_row = cells
            .iter()
            .filter(|c| c.col == min_col)
            .map(|c| c.row)
            .min()
            .unwrap();
        for c in &mut cells {
            c.col -= min_col;
            c.row -= min_row;
        }
        cells.sort_unstable();
        Ok(Polyomino { cells })
    }

    /// Canonically positioned cells, sorted by `(col, row)`.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn area(&self) -> usize {
        self.cells.len()
    }

    /// Number of occupied columns.
    pub fn width(&self) -> usize {
        (self.cells.last().unwrap().col + 1) as usize
    }

    /// The top-bottom mirror image. On this lattice negating rows alone does
    /// not preserve adjacency (columns are offset by half a cell), the
    /// correct reflection is `(c, r) -> (c, -c-r)`: it swaps the two
    /// right-hand neighbour directions and keeps vertical adjacency.
    pub fn reflect_vertical(&self) -> Polyomino {
        let reflected = self
            .cells
            .iter()
            .map(|&Cell { col, row }| Cell::new(col, -col - row));
        Polyomino::new(reflected).expect("reflection preserves connectivity")
    }

    /// Splits the polyomino into per-column runs of consecutive cells.
    pub fn column_decomposition(&self) -> ColumnDecomposition {
        let width = self.width();
        let mut columns: Vec<Vec<Run>> = vec![Vec::new(); width];
        for &Cell { col, row } in &self.cells {
            let runs = &mut columns[col as usize];
            match runs.last_mut() {
                Some(run) if run.start + run.len as i32 == row => run.len += 1,
                _ => runs.push(Run { start: row, len: 1 }),
            }
        }
        ColumnDecomposition { columns }
    }
}

/// A maximal vertical run of cells within one column: rows
/// `start, start+1, ..., start+len-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: i32,
    pub len: u32,
}

impl Run {
    /// Row index of the topmost cell of the run.
    pub fn end(&self) -> i32 {
        self.start + self.len as i32 - 1
    }
}

/// Per-column run structure of a polyomino. Column `c` holds the runs of
/// column `c` ordered bottom to top; every listed column is nonempty because
/// a polyomino has no empty column between occupied ones (cells in columns
/// `c-1` and `c+1` never share an edge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDecomposition {
    columns: Vec<Vec<Run>>,
}

impl ColumnDecomposition {
    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn runs(&self, col: usize) -> &[Run] {
        &self.columns[col]
    }

    /// Number of runs (connected components) in a column.
    pub fn component_count(&self, col: usize) -> usize {
        self.columns[col].len()
    }

    /// Sizes of the empty gaps between consecutive runs of a column,
    /// bottom to top.
    pub fn gap_sizes(&self, col: usize) -> Vec<u32> {
        self.columns[col]
            .windows(2)
            .map(|w| (w[1].start - w[0].end() - 1) as u32)
            .collect()
    }

    /// Height of the column's bounding range: occupied cells plus the gaps
    /// between them.
    pub fn height(&self, col: usize) -> u32 {
        let runs = &self.columns[col];
        (runs.last().unwrap().end() - runs[0].start + 1) as u32
    }
}

/// A polyomino family that counting routines can classify against.
///
/// `Cheesy(m)` is the family of polyominoes that grow rightward column by
/// column: the first column has no gap, every run of column `c+1` shares an
/// edge with column `c`, each column has at most two runs, and the gap
/// between the two runs is at most `m` cells. `ColumnConvex` (exactly one
/// run per column) is the gap-free limit of that family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    ColumnConvex,
    Cheesy(NonZeroU32),
    All,
}

impl FamilySpec {
    pub fn cheesy(m: u32) -> Option<FamilySpec> {
        NonZeroU32::new(m).map(FamilySpec::Cheesy)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::ColumnConvex => write!(f, "cc"),
            FamilySpec::Cheesy(m) => write!(f, "cheesy:{m}"),
            FamilySpec::All => write!(f, "all"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown family {0:?}, expected \"all\", \"cc\" or \"cheesy:m\" with m >= 1")]
pub struct ParseFamilyError(String);

impl FromStr for FamilySpec {
    type Err = ParseFamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(FamilySpec::All),
            "cc" => Ok(FamilySpec::ColumnConvex),
            _ => {
                let level = s
                    .strip_prefix("cheesy:")
                    .filter(|rest| rest.len() <= 9 && rest.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|rest| rest.parse::<u32>().ok())
                    .and_then(NonZeroU32::new);
                match level {
                    Some(m) => Ok(FamilySpec::Cheesy(m)),
                    None => Err(ParseFamilyError(s.to_owned())),
                }
            }
        }
    }
}

/// Tests membership of a polyomino in a family.
pub fn classify(p: &Polyomino, family: FamilySpec) -> bool {
    let m = match family {
        FamilySpec::All => return true,
        FamilySpec::ColumnConvex => {
            let d = p.column_decomposition();
            return (0..d.width()).all(|c| d.component_count(c) == 1);
        }
        FamilySpec::Cheesy(m) => m.get(),
    };
    let d = p.column_decomposition();
    if d.component_count(0) != 1 {
        return false;
    }
    for col in 0..d.width() {
        if d.component_count(col) > 2 {
            return false;
        }
        if d.gap_sizes(col).first().is_some_and(|&g| g > m) {
            return false;
        }
        if col > 0 {
            // Every run of this column must share an edge with the previous
            // column: run [s, e] has left-hand neighbours in rows s..=e+1.
            let prev = d.runs(col - 1);
            for run in d.runs(col) {
                let touches = prev
                    .iter()
                    .any(|pr| pr.start <= run.end() + 1 && run.start <= pr.end());
                if !touches {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cells: &[(i32, i32)]) -> Polyomino {
        Polyomino::new(cells.iter().map(|&(c, r)| Cell::new(c, r))).unwrap()
    }

    fn family(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    #[test]
    fn neighbors_of_origin() {
        let ns = neighbors(Cell::new(0, 0));
        let expect = [(0, 1), (0, -1), (1, 0), (1, -1), (-1, 0), (-1, 1)];
        for (c, r) in expect {
            assert!(ns.contains(&Cell::new(c, r)), "missing ({c},{r})");
        }
    }

    #[test]
    fn neighbors_include_lower_right() {
        assert!(neighbors(Cell::new(2, 5)).contains(&Cell::new(3, 4)));
    }

    #[test]
    fn neighbor_relation_is_symmetric() {
        for c in -3..=3 {
            for r in -3..=3 {
                let cell = Cell::new(c, r);
                for n in neighbors(cell) {
                    assert!(neighbors(n).contains(&cell));
                }
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let cells = |v: &[(i32, i32)]| -> Vec<Cell> {
            v.iter().map(|&(c, r)| Cell::new(c, r)).collect()
        };
        assert!(is_polyomino(&cells(&[(0, 0), (1, -1)])));
        assert!(!is_polyomino(&cells(&[(0, 0), (1, 1)])));
        assert!(!is_polyomino(&cells(&[(0, 0), (2, 0)])));
        assert!(!is_polyomino(&[]));
        assert!(is_polyomino(&cells(&[(4, 7)])));
    }

    #[test]
    fn normalization_examples() {
        let p = poly(&[(3, 5), (3, 6), (4, 5)]);
        assert_eq!(
            p.cells(),
            &[Cell::new(0, 0), Cell::new(0, 1), Cell::new(1, 0)]
        );
        // Only column 0's lowest cell is pinned to row 0; other columns may
        // reach below it.
        let q = poly(&[(0, 0), (1, -1)]);
        assert_eq!(q.cells(), &[Cell::new(0, 0), Cell::new(1, -1)]);
    }

    #[test]
    fn normalization_is_idempotent() {
        let p = poly(&[(2, 1), (2, 2), (3, 0), (3, 2)]);
        let again = Polyomino::new(p.cells().iter().copied()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn column_decomposition_single_column() {
        let d = poly(&[(0, 0), (0, 1), (0, 2)]).column_decomposition();
        assert_eq!(d.width(), 1);
        assert_eq!(d.component_count(0), 1);
        assert_eq!(d.height(0), 3);
        assert!(d.gap_sizes(0).is_empty());
    }

    #[test]
    fn column_decomposition_with_gap() {
        // Column 1 has runs of 2 and 3 cells separated by a 2-cell gap;
        // column 0 keeps everything connected.
        let p = poly(&[
            (0, 0),
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 0),
            (1, 1),
            (1, 4),
            (1, 5),
            (1, 6),
        ]);
        let d = p.column_decomposition();
        assert_eq!(d.component_count(1), 2);
        assert_eq!(d.gap_sizes(1), vec![2]);
        assert_eq!(d.height(1), 7);
        assert_eq!(d.runs(1)[0], Run { start: 0, len: 2 });
        assert_eq!(d.runs(1)[1], Run { start: 4, len: 3 });
    }

    #[test]
    fn classify_column_convex() {
        let bar = poly(&[(0, 0), (1, 0), (2, 0)]);
        assert!(classify(&bar, family("cc")));
        assert!(classify(&bar, family("cheesy:1")));
        assert!(classify(&bar, FamilySpec::All));
    }

    /// The two four-celled polyominoes that are not column-convex: a single
    /// gapped column with its connector on the left is cheesy at every
    /// level, the mirrored one starts with a gapped first column and is not.
    #[test]
    fn classify_four_cell_gapped_pair() {
        let connector_left = poly(&[(0, 1), (0, 2), (1, 0), (1, 2)]);
        let connector_right = poly(&[(0, 0), (0, 2), (1, 0), (1, 1)]);
        for m in 1..=5 {
            assert!(classify(&connector_left, FamilySpec::cheesy(m).unwrap()));
            assert!(!classify(&connector_right, FamilySpec::cheesy(m).unwrap()));
        }
        assert!(!classify(&connector_left, family("cc")));
        assert!(!classify(&connector_right, family("cc")));
        assert!(classify(&connector_right, FamilySpec::All));
    }

    #[test]
    fn classify_respects_gap_bound() {
        // Gap of 2 in column 1: level 1 rejects, level 2 accepts.
        let p = poly(&[
            (0, 0),
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 0),
            (1, 3),
        ]);
        assert!(!classify(&p, family("cheesy:1")));
        assert!(classify(&p, family("cheesy:2")));
        assert!(classify(&p, family("cheesy:3")));
    }

    #[test]
    fn classify_requires_adjacent_columns_to_touch() {
        // Column 1's upper run only touches column 0 through rows 3..=4,
        // which are empty there, so the polyomino is not cheesy even though
        // it is connected through column 2.
        let p = poly(&[
            (0, 0),
            (1, 0),
            (1, 4),
            (2, 0),
            (2, 1),
            (2, 2),
            (2, 3),
        ]);
        assert!(is_polyomino(p.cells()));
        for m in 1..=6 {
            assert!(!classify(&p, FamilySpec::cheesy(m).unwrap()));
        }
    }

    #[test]
    fn classify_rejects_three_runs() {
        let p = poly(&[
            (0, 0),
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 0),
            (1, 2),
            (1, 4),
        ]);
        for m in 1..=6 {
            assert!(!classify(&p, FamilySpec::cheesy(m).unwrap()));
        }
    }

    #[test]
    fn reflection_preserves_families() {
        let p = poly(&[(0, 1), (0, 2), (1, 0), (1, 2)]);
        let r = p.reflect_vertical();
        assert!(is_polyomino(r.cells()));
        assert_eq!(r.area(), p.area());
        for f in [
            family("cc"),
            family("cheesy:1"),
            family("cheesy:2"),
            FamilySpec::All,
        ] {
            assert_eq!(classify(&p, f), classify(&r, f));
        }
    }

    #[test]
    fn reflection_is_an_involution() {
        let p = poly(&[(0, 0), (0, 1), (1, -1), (1, 1), (2, 0)]);
        assert_eq!(p.reflect_vertical().reflect_vertical(), p);
    }

    #[test]
    fn family_strings_round_trip() {
        for s in ["all", "cc", "cheesy:1", "cheesy:3", "cheesy:12"] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        for s in ["cheesy:0", "cheesy:", "cheesy:-1", "convex", "", "cheesy:1 "] {
            assert!(s.parse::<FamilySpec>().is_err(), "accepted {s:?}");
        }
    }
}
