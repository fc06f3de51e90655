//! Tile grids, validation by pipe tracing, and the queries the Monk algorithms need.
//!
//! Coordinates are matrix coordinates `(row, column)`, 1-based, row 1 at the top.
//! Pipes are labelled by the column in which they enter from the south edge.

mod enumerate;
mod tile;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;

use thiserror::Error;

use crate::perm::Permutation;

pub use enumerate::{enumerate_all, enumerate_bpds};
pub use tile::{Side, Tile};

/// A 1-based `(row, column)` position.
pub type Pos = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid must be non-empty and square, got {rows} rows with a row of length {cols}")]
    Shape { rows: usize, cols: usize },
    #[error("edge mismatch between {0:?} and {1:?}")]
    EdgeMismatch(Pos, Pos),
    #[error("tile at {pos:?} has a segment through the {side:?} boundary")]
    Boundary { pos: Pos, side: Side },
    #[error("blank tile at {pos:?} on the {side:?} boundary where a pipe is required")]
    MissingBoundary { pos: Pos, side: Side },
    #[error("expected {expected} pipes, traced {found}")]
    PipeCount { expected: usize, found: usize },
    #[error("pipes {p} and {q} cross twice, at {first:?} and {second:?}")]
    DoubleCrossing { p: usize, q: usize, first: Pos, second: Pos },
    #[error("more than one bump tile: {0:?}")]
    TooManyBumps(Vec<Pos>),
    #[error("expected a bumpless pipe dream, found a bump at {0:?}")]
    UnexpectedBump(Pos),
    #[error("expected an almost bumpless pipe dream with exactly one bump")]
    MissingBump,
    #[error("grid size {0} exceeds the supported maximum {MAX_N}")]
    TooLarge(usize),
}

/// Largest supported grid size; pipe labels are stored in a byte.
pub const MAX_N: usize = 255;

/// A raw square array of tiles with no validity guarantees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
    tiles: Vec<Tile>,
}

impl Grid {
    pub fn from_rows(rows: Vec<Vec<Tile>>) -> Result<Self, GridError> {
        let n = rows.len();
        if n == 0 {
            return Err(GridError::Shape { rows: 0, cols: 0 });
        }
        if n > MAX_N {
            return Err(GridError::TooLarge(n));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(GridError::Shape { rows: n, cols: bad.len() });
        }
        Ok(Self { n, tiles: rows.into_iter().flatten().collect() })
    }

    /// Builds a grid from one string per row in the text alphabet (`.-|+rjb`).
    ///
    /// Panics on characters outside the alphabet; intended for literals.
    pub fn from_strs(rows: &[&str]) -> Result<Self, GridError> {
        Self::from_rows(
            rows.iter().map(|r| r.chars().map(|c| Tile::from_char(c).expect("tile character")).collect()).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, (r, c): Pos) -> Tile {
        self.tiles[self.index((r, c))]
    }

    pub(crate) fn set(&mut self, pos: Pos, tile: Tile) {
        let idx = self.index(pos);
        self.tiles[idx] = tile;
    }

    fn index(&self, (r, c): Pos) -> usize {
        debug_assert!(r >= 1 && r <= self.n && c >= 1 && c <= self.n, "({r},{c}) outside {0}x{0}", self.n);
        (r - 1) * self.n + (c - 1)
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> {
        let n = self.n;
        (1..=n).flat_map(move |r| (1..=n).map(move |c| (r, c)))
    }

    pub fn count(&self, tile: Tile) -> usize {
        self.tiles.iter().filter(|&&t| t == tile).count()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Tile]> {
        self.tiles.chunks(self.n)
    }

    /// Row-major tile characters, the body of the text format.
    pub(crate) fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.tiles.iter().map(|t| t.to_char())
    }

    /// Validates edge matching, boundaries and reducedness, classifying by bump count.
    pub fn validate(self) -> Result<Diagram, GridError> {
        let traced = Traced::trace(self)?;
        let bumps: Vec<Pos> = traced.grid.positions().filter(|&p| traced.grid.get(p) == Tile::Bump).collect();
        match bumps.len() {
            0 => Ok(Diagram::Bpd(Bpd(traced))),
            1 => Ok(Diagram::Almost(AlmostBpd { traced, bump: bumps[0] })),
            _ => Err(GridError::TooManyBumps(bumps)),
        }
    }

    fn check_edges(&self) -> Result<(), GridError> {
        let n = self.n;
        for (r, c) in self.positions() {
            let t = self.get((r, c));
            if r == 1 && t.has_edge(Side::North) {
                return Err(GridError::Boundary { pos: (r, c), side: Side::North });
            }
            if c == 1 && t.has_edge(Side::West) {
                return Err(GridError::Boundary { pos: (r, c), side: Side::West });
            }
            if r == n && !t.has_edge(Side::South) {
                return Err(GridError::MissingBoundary { pos: (r, c), side: Side::South });
            }
            if c == n && !t.has_edge(Side::East) {
                return Err(GridError::MissingBoundary { pos: (r, c), side: Side::East });
            }
            if c < n && t.has_edge(Side::East) != self.get((r, c + 1)).has_edge(Side::West) {
                return Err(GridError::EdgeMismatch((r, c), (r, c + 1)));
            }
            if r < n && t.has_edge(Side::South) != self.get((r + 1, c)).has_edge(Side::North) {
                return Err(GridError::EdgeMismatch((r, c), (r + 1, c)));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().map(|r| r.iter().map(|t| t.to_char()).collect()).collect();
        write!(f, "Grid{rows:?}")
    }
}

/// Row-major lexicographic order on tile characters; equals the order of rendered text.
impl Ord for Grid {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.chars().cmp(other.chars()))
    }
}

impl PartialOrd for Grid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which pipe segment of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    Vertical,
    Horizontal,
    /// South–east corner, in an r-tile or a bump.
    RCorner,
    /// West–north corner, in a j-tile or a bump.
    JCorner,
}

const SOUTH_IN: usize = 0;
const WEST_IN: usize = 1;

/// A grid that passed validation, together with its traced pipes.
#[derive(Clone)]
pub struct Traced {
    grid: Grid,
    perm: Permutation,
    /// Per tile, the pipe entering from the south and the pipe entering from the west (0 = none).
    owners: Vec<[u8; 2]>,
}

impl Traced {
    fn trace(grid: Grid) -> Result<Self, GridError> {
        grid.check_edges()?;
        let n = grid.n;
        let mut owners = vec![[0u8; 2]; n * n];
        let mut exits = vec![0usize; n];
        let mut traced = 0;
        for label in 1..=n {
            let (mut r, mut c) = (n, label);
            let mut from = Side::South;
            loop {
                let t = grid.get((r, c));
                let slot = if from == Side::South { SOUTH_IN } else { WEST_IN };
                owners[grid.index((r, c))][slot] = label as u8;
                match t.exit(from) {
                    Some(Side::North) => {
                        r -= 1;
                        from = Side::South;
                    }
                    Some(Side::East) if c == n => {
                        exits[r - 1] = label;
                        traced += 1;
                        break;
                    }
                    Some(Side::East) => {
                        c += 1;
                        from = Side::West;
                    }
                    // unreachable after check_edges
                    _ => return Err(GridError::EdgeMismatch((r, c), (r, c))),
                }
            }
        }
        if traced != n || exits.contains(&0) {
            return Err(GridError::PipeCount { expected: n, found: traced });
        }
        let mut seen: BTreeMap<(u8, u8), Pos> = BTreeMap::new();
        for pos in grid.positions() {
            if grid.get(pos) == Tile::Cross {
                let [v, h] = owners[grid.index(pos)];
                let key = (v.min(h), v.max(h));
                if let Some(&first) = seen.get(&key) {
                    return Err(GridError::DoubleCrossing { p: key.0 as usize, q: key.1 as usize, first, second: pos });
                }
                seen.insert(key, pos);
            }
        }
        let perm = Permutation::from_one_line(exits.iter().map(|&v| v as i64)).expect("exits form a permutation");
        Ok(Self { grid, perm, owners })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn tile(&self, pos: Pos) -> Tile {
        self.grid.get(pos)
    }

    /// The readout permutation: `π(i)` is the label of the pipe exiting east on row `i`.
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    fn owner(&self, pos: Pos, slot: usize) -> Option<usize> {
        match self.owners[self.grid.index(pos)][slot] {
            0 => None,
            p => Some(p as usize),
        }
    }

    /// Owner of the south–east corner at `pos`, if that tile has one.
    pub fn r_turn_owner(&self, pos: Pos) -> Option<usize> {
        self.tile(pos).has_r_turn().then(|| self.owner(pos, SOUTH_IN)).flatten()
    }

    /// Owner of the west–north corner at `pos`, if that tile has one.
    pub fn j_turn_owner(&self, pos: Pos) -> Option<usize> {
        self.tile(pos).has_j_turn().then(|| self.owner(pos, WEST_IN)).flatten()
    }

    /// Owner of every pipe segment in the diagram.
    pub fn pipe_segments(&self) -> BTreeMap<(Pos, Segment), usize> {
        let mut out = BTreeMap::new();
        for pos in self.grid.positions() {
            let south = self.owner(pos, SOUTH_IN);
            let west = self.owner(pos, WEST_IN);
            let (s_seg, w_seg) = match self.tile(pos) {
                Tile::Blank => (None, None),
                Tile::Vertical => (Some(Segment::Vertical), None),
                Tile::Horizontal => (None, Some(Segment::Horizontal)),
                Tile::Cross => (Some(Segment::Vertical), Some(Segment::Horizontal)),
                Tile::RTile => (Some(Segment::RCorner), None),
                Tile::JTile => (None, Some(Segment::JCorner)),
                Tile::Bump => (Some(Segment::RCorner), Some(Segment::JCorner)),
            };
            if let (Some(seg), Some(p)) = (s_seg, south) {
                out.insert((pos, seg), p);
            }
            if let (Some(seg), Some(p)) = (w_seg, west) {
                out.insert((pos, seg), p);
            }
        }
        out
    }

    /// The unique cross shared by pipes `p` and `q`.
    pub fn find_cross(&self, p: usize, q: usize) -> Option<Pos> {
        self.grid.positions().find(|&pos| {
            self.tile(pos) == Tile::Cross && {
                let [a, b] = self.owners[self.grid.index(pos)];
                (a as usize, b as usize) == (p, q) || (a as usize, b as usize) == (q, p)
            }
        })
    }

    /// Unordered pipe pairs that share a cross.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .grid
            .positions()
            .filter(|&pos| self.tile(pos) == Tile::Cross)
            .map(|pos| {
                let [a, b] = self.owners[self.grid.index(pos)];
                (a.min(b) as usize, a.max(b) as usize)
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn count_tile(&self, tile: Tile) -> usize {
        self.grid.count(tile)
    }

    pub fn blanks(&self) -> Vec<Pos> {
        self.grid.positions().filter(|&p| self.tile(p) == Tile::Blank).collect()
    }

    /// Number of blank tiles on each row, indexed from row 1.
    pub fn row_blank_counts(&self) -> Vec<usize> {
        self.grid.rows().map(|r| r.iter().filter(|&&t| t == Tile::Blank).count()).collect()
    }

    /// Cells visited by pipe `p`, from the south edge to the east edge.
    pub fn pipe_path(&self, p: usize) -> Vec<Pos> {
        let n = self.n();
        let mut path = Vec::new();
        let (mut r, mut c) = (n, p);
        let mut from = Side::South;
        loop {
            path.push((r, c));
            match self.tile((r, c)).exit(from) {
                Some(Side::North) => {
                    r -= 1;
                    from = Side::South;
                }
                Some(Side::East) if c < n => {
                    c += 1;
                    from = Side::West;
                }
                _ => return path,
            }
        }
    }

    /// Number of cells strictly east of pipe `p` on the rows it visits; the area under `p`
    /// when it is drawn as a curve from the south edge to the east edge.
    pub fn area_under(&self, p: usize) -> usize {
        let n = self.n();
        let mut east = vec![0usize; n + 1];
        for (r, c) in self.pipe_path(p) {
            east[r] = east[r].max(c);
        }
        east.iter().filter(|&&e| e > 0).map(|&e| n - e).sum()
    }

    /// Position of the south–east corner of `p` on `row` (at most one exists).
    pub fn r_turn_on_row(&self, p: usize, row: usize) -> Option<Pos> {
        (1..=self.n()).map(|c| (row, c)).find(|&pos| self.r_turn_owner(pos) == Some(p))
    }

    /// Position of the south–east corner of `p` in `col` (at most one exists).
    pub fn r_turn_on_col(&self, p: usize, col: usize) -> Option<Pos> {
        (1..=self.n()).map(|r| (r, col)).find(|&pos| self.r_turn_owner(pos) == Some(p))
    }

    /// Position of the west–north corner of `p` on `row`, strictly east of `after_col`.
    pub fn j_turn_on_row_after(&self, p: usize, row: usize, after_col: usize) -> Option<Pos> {
        (after_col + 1..=self.n()).map(|c| (row, c)).find(|&pos| self.j_turn_owner(pos) == Some(p))
    }

    /// Position of the west–north corner of `p` in `col`, strictly south of `after_row`.
    pub fn j_turn_on_col_after(&self, p: usize, col: usize, after_row: usize) -> Option<Pos> {
        (after_row + 1..=self.n()).map(|r| (r, col)).find(|&pos| self.j_turn_owner(pos) == Some(p))
    }
}

impl fmt::Debug for Traced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} of {:?}", self.grid, self.perm)
    }
}

impl PartialEq for Traced {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid
    }
}

impl Eq for Traced {}

impl Hash for Traced {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.grid.hash(state)
    }
}

impl Ord for Traced {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grid.cmp(&other.grid)
    }
}

impl PartialOrd for Traced {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A reduced bumpless pipe dream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bpd(Traced);

impl Bpd {
    pub fn new(grid: Grid) -> Result<Self, GridError> {
        match grid.validate()? {
            Diagram::Bpd(d) => Ok(d),
            Diagram::Almost(a) => Err(GridError::UnexpectedBump(a.bump)),
        }
    }

    /// The Rothe pipe dream of `π`: no j-tiles, blanks forming the Rothe diagram.
    pub fn rothe(pi: &Permutation) -> Self {
        let n = pi.n();
        let inv = pi.inverse();
        let rows = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let (pv, iv) = (pi.at(i), inv.at(j));
                        match (j.cmp(&pv), i.cmp(&iv)) {
                            (Ordering::Equal, _) => Tile::RTile,
                            (Ordering::Greater, Ordering::Greater) => Tile::Cross,
                            (Ordering::Greater, _) => Tile::Horizontal,
                            (Ordering::Less, Ordering::Greater) => Tile::Vertical,
                            (Ordering::Less, _) => Tile::Blank,
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(Grid::from_rows(rows).expect("square")).expect("Rothe construction is a valid BPD")
    }

    pub fn into_grid(self) -> Grid {
        self.0.grid
    }
}

impl Deref for Bpd {
    type Target = Traced;
    fn deref(&self) -> &Traced {
        &self.0
    }
}

/// A pipe dream with exactly one bump tile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlmostBpd {
    traced: Traced,
    bump: Pos,
}

impl AlmostBpd {
    pub fn new(grid: Grid) -> Result<Self, GridError> {
        match grid.validate()? {
            Diagram::Almost(a) => Ok(a),
            Diagram::Bpd(_) => Err(GridError::MissingBump),
        }
    }

    pub fn bump_pos(&self) -> Pos {
        self.bump
    }

    pub fn into_grid(self) -> Grid {
        self.traced.grid
    }
}

impl Deref for AlmostBpd {
    type Target = Traced;
    fn deref(&self) -> &Traced {
        &self.traced
    }
}

/// Either a BPD or an almost BPD.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagram {
    Bpd(Bpd),
    Almost(AlmostBpd),
}

impl Diagram {
    pub fn bump_pos(&self) -> Option<Pos> {
        match self {
            Diagram::Bpd(_) => None,
            Diagram::Almost(a) => Some(a.bump),
        }
    }

    pub fn into_grid(self) -> Grid {
        match self {
            Diagram::Bpd(d) => d.into_grid(),
            Diagram::Almost(a) => a.into_grid(),
        }
    }

    pub fn into_bpd(self) -> Result<Bpd, GridError> {
        match self {
            Diagram::Bpd(d) => Ok(d),
            Diagram::Almost(a) => Err(GridError::UnexpectedBump(a.bump)),
        }
    }
}

impl Deref for Diagram {
    type Target = Traced;
    fn deref(&self) -> &Traced {
        match self {
            Diagram::Bpd(d) => d,
            Diagram::Almost(a) => a,
        }
    }
}

impl From<Bpd> for Diagram {
    fn from(d: Bpd) -> Self {
        Diagram::Bpd(d)
    }
}

impl From<AlmostBpd> for Diagram {
    fn from(a: AlmostBpd) -> Self {
        Diagram::Almost(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> Grid {
        Grid::from_strs(rows).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn validates_small_examples() {
        let id = Bpd::new(grid(&["r-", "|r"])).unwrap();
        assert!(id.permutation().is_identity());
        assert!(id.blanks().is_empty());

        let s21 = Bpd::new(grid(&[".r", "r+"])).unwrap();
        assert_eq!(s21.permutation(), &p("2 1"));
        assert_eq!(s21.blanks(), vec![(1, 1)]);

        let almost = AlmostBpd::new(grid(&[".r", "rb"])).unwrap();
        assert_eq!(almost.bump_pos(), (2, 2));
        assert!(almost.permutation().is_identity());
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(grid(&["r|", "|r"]).validate().unwrap_err(), GridError::EdgeMismatch((1, 1), (1, 2)));
        assert_eq!(grid(&["|-", "rr"]).validate().unwrap_err(), GridError::Boundary { pos: (1, 1), side: Side::North });
        assert_eq!(grid(&[".r", "-+"]).validate().unwrap_err(), GridError::Boundary { pos: (2, 1), side: Side::West });
        assert_eq!(grid(&["r-", "|+"]).validate().unwrap_err(), GridError::EdgeMismatch((1, 2), (2, 2)));
        assert_eq!(
            grid(&["..", ".."]).validate().unwrap_err(),
            GridError::MissingBoundary { pos: (1, 2), side: Side::East }
        );
        assert_eq!(
            Grid::from_rows(vec![vec![Tile::RTile], vec![]]).unwrap_err(),
            GridError::Shape { rows: 2, cols: 1 }
        );
        assert_eq!(Bpd::new(grid(&[".r", "rb"])).unwrap_err(), GridError::UnexpectedBump((2, 2)));
        assert_eq!(AlmostBpd::new(grid(&[".r", "r+"])).unwrap_err(), GridError::MissingBump);
    }

    #[test]
    fn rejects_double_crossing() {
        // pipe 1 crosses pipe 2 at (3,2), bumps north at (3,3) and crosses it again at (2,3)
        match grid(&["..r", ".r+", "r+b"]).validate() {
            Err(GridError::DoubleCrossing { p, q, first, second }) => {
                assert_eq!((p, q, first, second), (1, 2, (2, 3), (3, 2)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_two_bumps() {
        let g = grid(&["..r", ".rb", "rb+"]);
        assert!(matches!(g.validate(), Err(GridError::TooManyBumps(v)) if v == vec![(2, 3), (3, 2)]));
    }

    #[test]
    fn rothe_examples() {
        assert_eq!(Bpd::rothe(&p("1 2")).grid(), &grid(&["r-", "|r"]));
        assert_eq!(Bpd::rothe(&p("2 1")).grid(), &grid(&[".r", "r+"]));
        let w0 = Bpd::rothe(&p("3 2 1"));
        assert_eq!(w0.blanks(), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(w0.count_tile(Tile::JTile), 0);
    }

    #[test]
    fn rothe_reads_back() {
        for n in 1..=5 {
            for pi in Permutation::all(n) {
                let d = Bpd::rothe(&pi);
                assert_eq!(d.permutation(), &pi);
                assert_eq!(d.blanks().len(), pi.length());
                assert_eq!(d.count_tile(Tile::Cross), pi.length());
            }
        }
    }

    #[test]
    fn segment_ownership() {
        let s21 = Bpd::new(grid(&[".r", "r+"])).unwrap();
        let segs = s21.pipe_segments();
        assert_eq!(segs[&((2, 2), Segment::Vertical)], 2);
        assert_eq!(segs[&((2, 2), Segment::Horizontal)], 1);

        let almost = AlmostBpd::new(grid(&[".r", "rb"])).unwrap();
        let segs = almost.pipe_segments();
        assert_eq!(segs[&((2, 2), Segment::RCorner)], 2);
        assert_eq!(segs[&((2, 2), Segment::JCorner)], 1);

        let id = Bpd::rothe(&Permutation::identity(4));
        for i in 1..=4 {
            assert_eq!(id.pipe_segments()[&((i, i), Segment::RCorner)], i);
        }
    }

    #[test]
    fn crosses() {
        let s21 = Bpd::new(grid(&[".r", "r+"])).unwrap();
        assert_eq!(s21.find_cross(1, 2), Some((2, 2)));
        assert_eq!(s21.find_cross(2, 1), Some((2, 2)));
        assert_eq!(Bpd::rothe(&p("1 2")).find_cross(1, 2), None);
        // in rothe(321), pipe 3 rises in column 3 to row 1 and pipe 1 runs along row 3
        assert_eq!(Bpd::rothe(&p("3 2 1")).find_cross(1, 3), Some((3, 3)));
    }

    #[test]
    fn area_under_pipe() {
        let id = Bpd::rothe(&p("1 2"));
        // pipe 1: (2,1),(1,1),(1,2) → row 2 has one cell east of it
        assert_eq!(id.area_under(1), 1);
        assert_eq!(id.area_under(2), 0);
    }
}
