//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use bpd::{Grid, Permutation, Tile};

const PLAIN: [Tile; 6] = [Tile::Blank, Tile::Horizontal, Tile::Vertical, Tile::Cross, Tile::RTile, Tile::JTile];

fn has(t: Tile, side: bpd::grid::Side) -> bool {
    t.has_edge(side)
}

/// Every `6^(n²)` tiling without bumps, kept if it validates as a BPD. Only for n ≤ 3.
pub fn brute_force_all(n: usize) -> BTreeMap<Permutation, Vec<String>> {
    assert!(n <= 3, "6^(n^2) tilings");
    let cells = n * n;
    let mut out: BTreeMap<Permutation, Vec<String>> = BTreeMap::new();
    let mut digits = vec![0usize; cells];
    loop {
        let rows: Vec<Vec<Tile>> = digits.chunks(n).map(|r| r.iter().map(|&d| PLAIN[d]).collect()).collect();
        keep(Grid::from_rows(rows).unwrap(), &mut out);
        let mut k = 0;
        loop {
            if k == cells {
                finish(&mut out);
                return out;
            }
            digits[k] += 1;
            if digits[k] < 6 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Column-major search over bump-free tilings that only enforces edge matching with
/// the already placed north and west neighbours and the grid boundary; every complete
/// tiling is then handed to the validator.
pub fn edge_matched_all(n: usize) -> BTreeMap<Permutation, Vec<String>> {
    use bpd::grid::Side::*;
    let mut out = BTreeMap::new();
    let mut cells = vec![Tile::Blank; n * n];
    fn go(n: usize, k: usize, cells: &mut Vec<Tile>, out: &mut BTreeMap<Permutation, Vec<String>>) {
        if k == n * n {
            let rows: Vec<Vec<Tile>> = cells.chunks(n).map(|r| r.to_vec()).collect();
            keep(Grid::from_rows(rows).unwrap(), out);
            return;
        }
        let (c, r) = (k / n, k % n);
        for t in PLAIN {
            let north_ok = if r == 0 { !has(t, North) } else { has(cells[(r - 1) * n + c], South) == has(t, North) };
            let west_ok = if c == 0 { !has(t, West) } else { has(cells[r * n + c - 1], East) == has(t, West) };
            let south_ok = r + 1 < n || has(t, South);
            let east_ok = c + 1 < n || has(t, East);
            if north_ok && west_ok && south_ok && east_ok {
                cells[r * n + c] = t;
                go(n, k + 1, cells, out);
            }
        }
    }
    go(n, 0, &mut cells, &mut out);
    finish(&mut out);
    out
}

fn keep(grid: Grid, out: &mut BTreeMap<Permutation, Vec<String>>) {
    if let Ok(bpd::Diagram::Bpd(d)) = grid.validate() {
        let text = bpd::text::render(d.grid());
        out.entry(d.permutation().clone()).or_default().push(text);
    }
}

fn finish(out: &mut BTreeMap<Permutation, Vec<String>>) {
    for v in out.values_mut() {
        v.sort();
    }
}

/// Canonical text of every enumerated BPD of size `n`, grouped by permutation.
pub fn enumerated(n: usize) -> BTreeMap<Permutation, Vec<String>> {
    bpd::grid::enumerate_all(n)
        .into_iter()
        .map(|(pi, ds)| {
            let mut texts: Vec<String> = ds.iter().map(|d| bpd::text::render(d.grid())).collect();
            texts.sort();
            (pi, texts)
        })
        .collect()
}
