//! Exhaustive enumeration of bumpless pipe dreams by backtracking.
//!
//! Rows are filled from the south edge upward, columns west to east. Each cell then
//! knows which pipe (if any) enters it from the south and from the west, so the only
//! freedom is how those inputs are routed:
//!
//! | south in | west in | candidates          |
//! |----------|---------|---------------------|
//! | –        | –       | blank               |
//! | p        | –       | vertical, r-tile    |
//! | –        | p       | horizontal, j-tile  |
//! | p        | q       | cross               |
//!
//! Completed rows are checked against the target permutation and crosses against the
//! pairs already crossed, which prunes every branch that cannot finish.

use std::collections::BTreeMap;

use super::{Bpd, Grid, Tile};
use crate::perm::Permutation;

struct Search<'a> {
    n: usize,
    target: Option<&'a Permutation>,
    /// Row on which each pipe must exit, when a target is given.
    exit_row: Vec<usize>,
    tiles: Vec<Tile>,
    /// Label rising into the current row from below, per column (0 = none).
    up: Vec<usize>,
    crossed: Vec<bool>,
    out: Vec<Grid>,
}

impl Search<'_> {
    fn pair(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        a * (self.n + 1) + b
    }

    /// Fill cell `(r, c)` (1-based) given the pipe `west` arriving from the left.
    fn fill(&mut self, r: usize, c: usize, west: usize) {
        let n = self.n;
        if c > n {
            // row complete: exactly one pipe must leave east
            if west == 0 {
                return;
            }
            if let Some(pi) = self.target {
                if pi.at(r) != west {
                    return;
                }
            }
            if r == 1 {
                if self.up.iter().all(|&u| u == 0) {
                    let grid = Grid { n, tiles: self.tiles.clone() };
                    self.out.push(grid);
                }
            } else {
                self.fill(r - 1, 1, 0);
            }
            return;
        }
        let south = self.up[c - 1];
        let idx = (r - 1) * n + (c - 1);
        match (south, west) {
            (0, 0) => self.place(r, c, idx, Tile::Blank, 0, 0),
            (s, 0) => {
                if self.can_rise(s, r) {
                    self.place(r, c, idx, Tile::Vertical, s, 0);
                }
                self.place(r, c, idx, Tile::RTile, 0, s);
            }
            (0, w) => {
                self.place(r, c, idx, Tile::Horizontal, 0, w);
                if self.can_rise(w, r) {
                    self.place(r, c, idx, Tile::JTile, w, 0);
                }
            }
            (s, w) => {
                let key = self.pair(s, w);
                if !self.crossed[key] && self.can_rise(s, r) {
                    self.crossed[key] = true;
                    self.place(r, c, idx, Tile::Cross, s, w);
                    self.crossed[key] = false;
                }
            }
        }
    }

    /// Whether pipe `p` may continue north out of row `r`.
    fn can_rise(&self, p: usize, r: usize) -> bool {
        r > 1 && self.target.is_none_or(|_| self.exit_row[p] < r)
    }

    fn place(&mut self, r: usize, c: usize, idx: usize, tile: Tile, north: usize, east: usize) {
        self.tiles[idx] = tile;
        let saved = self.up[c - 1];
        self.up[c - 1] = north;
        self.fill(r, c + 1, east);
        self.up[c - 1] = saved;
    }
}

fn search(n: usize, target: Option<&Permutation>) -> Vec<Grid> {
    let exit_row = match target {
        Some(pi) => std::iter::once(0).chain(pi.inverse().values().iter().copied()).collect(),
        None => Vec::new(),
    };
    let mut s = Search {
        n,
        target,
        exit_row,
        tiles: vec![Tile::Blank; n * n],
        up: (1..=n).collect(),
        crossed: vec![false; (n + 1) * (n + 1)],
        out: Vec::new(),
    };
    s.fill(n, 1, 0);
    s.out
}

/// Every BPD whose readout is `π`, in canonical (rendered text) order.
pub fn enumerate_bpds(pi: &Permutation) -> Vec<Bpd> {
    let mut out: Vec<Bpd> = search(pi.n(), Some(pi))
        .into_iter()
        .map(|g| Bpd::new(g).expect("enumerator only emits valid diagrams"))
        .collect();
    out.sort();
    out
}

/// All BPDs of size `n`, grouped by readout permutation, each group in canonical order.
/// Permutations with no BPD do not occur (every permutation has its Rothe BPD).
pub fn enumerate_all(n: usize) -> BTreeMap<Permutation, Vec<Bpd>> {
    let mut groups: BTreeMap<Permutation, Vec<Bpd>> = BTreeMap::new();
    for g in search(n, None) {
        let d = Bpd::new(g).expect("enumerator only emits valid diagrams");
        groups.entry(d.permutation().clone()).or_default().push(d);
    }
    for v in groups.values_mut() {
        v.sort();
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_bpds(&p("1 2")).len(), 1);
        let b132 = enumerate_bpds(&p("1 3 2"));
        assert_eq!(b132.len(), 2);
        let mut rows: Vec<usize> = b132.iter().map(|d| d.blanks()[0].0).collect();
        rows.sort();
        assert_eq!(rows, vec![1, 2]);
        assert_eq!(enumerate_bpds(&p("2 1 4 3")).len(), 3);
        assert_eq!(enumerate_bpds(&p("1")).len(), 1);
    }

    #[test]
    fn per_permutation_matches_grouped() {
        for n in 1..=5 {
            let all = enumerate_all(n);
            assert_eq!(all.len(), (1..=n).product::<usize>());
            for (pi, group) in &all {
                assert_eq!(&enumerate_bpds(pi), group);
            }
        }
    }

    #[test]
    fn canonical_order_is_sorted_text() {
        let ds = enumerate_bpds(&p("1 4 3 2"));
        let texts: Vec<String> = ds.iter().map(|d| d.grid().chars().collect()).collect();
        let mut sorted = texts.clone();
        sorted.sort();
        assert_eq!(texts, sorted);
    }
}
