//! Schubert polynomials, as sums over BPDs and independently by divided differences.

use crate::grid::{enumerate_bpds, Bpd};
use crate::perm::Permutation;
use crate::poly::{Poly, PolyError};

/// `Π (x_i - y_j)` over the blanks of `d` (double), or `Π x_i` (single).
pub fn blank_weight(d: &Bpd, double: bool) -> Poly {
    let n = d.n();
    let mut w = Poly::one(n);
    for (i, j) in d.blanks() {
        let factor = if double { &Poly::x(n, i) - &Poly::y(n, j) } else { Poly::x(n, i) };
        w = &w * &factor;
    }
    w
}

/// Sum of blank weights over a set of BPDs of size `n`.
pub fn schubert_from_bpds<'a>(n: usize, bpds: impl IntoIterator<Item = &'a Bpd>, double: bool) -> Poly {
    bpds.into_iter().fold(Poly::zero(n), |acc, d| &acc + &blank_weight(d, double))
}

/// `𝔖_π(x, -y)` (double) or `𝔖_π(x)` (single) from the BPDs of `π`.
pub fn schubert_bpd(pi: &Permutation, double: bool) -> Poly {
    schubert_from_bpds(pi.n(), &enumerate_bpds(pi), double)
}

/// How [`schubert_dd_along`] picks the next simple transposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentPath {
    SmallestFirst,
    LargestFirst,
}

/// Top polynomial for the longest element of `S_n`.
pub fn longest_element_polynomial(n: usize, double: bool) -> Poly {
    let mut f = Poly::one(n);
    for i in 1..=n {
        for j in 1..=n - i {
            let factor = if double { &Poly::x(n, i) - &Poly::y(n, j) } else { Poly::x(n, i) };
            f = &f * &factor;
        }
    }
    f
}

/// A chain of simple transpositions `i_1, …, i_m` with `π s_{i_1} ⋯ s_{i_m} = w_0`,
/// each step raising the length by one.
pub fn ascent_word(pi: &Permutation, path: DescentPath) -> Vec<usize> {
    let n = pi.n();
    let mut cur = pi.clone();
    let mut word = Vec::new();
    loop {
        let mut ascents = (1..n).filter(|&i| cur.at(i) < cur.at(i + 1));
        let next = match path {
            DescentPath::SmallestFirst => ascents.next(),
            DescentPath::LargestFirst => ascents.next_back(),
        };
        match next {
            Some(i) => {
                cur = cur.mul_simple(i);
                word.push(i);
            }
            None => return word,
        }
    }
}

/// Schubert polynomial by divided differences from the longest element.
pub fn schubert_dd(pi: &Permutation, double: bool) -> Result<Poly, PolyError> {
    schubert_dd_along(pi, double, DescentPath::SmallestFirst)
}

pub fn schubert_dd_along(pi: &Permutation, double: bool, path: DescentPath) -> Result<Poly, PolyError> {
    let n = pi.n();
    let mut f = longest_element_polynomial(n, double);
    // w0 = π s_{i_1} ⋯ s_{i_m}; peel the transpositions off w0 from the right
    for i in ascent_word(pi, path).into_iter().rev() {
        f = f.divided_difference(i)?;
    }
    Ok(f)
}

/// The linear Schubert polynomial `𝔖_{s_α} = x_1 + … + x_α`.
pub fn linear_schubert(n: usize, alpha: usize) -> Poly {
    (1..=alpha).fold(Poly::zero(n), |acc, i| &acc + &Poly::x(n, i))
}
