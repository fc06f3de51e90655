//! Permutations of `{1..n}` in one-line notation.
//!
//! Positions and values are 1-based at every public interface.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("value {value} out of range 1..={n}")]
    OutOfRange { value: i64, n: usize },
    #[error("duplicate value {0}")]
    Duplicate(usize),
    #[error("position {pos} out of range 1..={n}")]
    BadPosition { pos: usize, n: usize },
    #[error("positions must satisfy a < b, got a={a}, b={b}")]
    Unordered { a: usize, b: usize },
    #[error("cannot parse {0:?} as an integer")]
    Syntax(String),
}

/// An element of `S_n` stored as `(π(1), …, π(n))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn from_one_line<I>(seq: I) -> Result<Self, PermError>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let raw: Vec<i64> = seq.into_iter().map(Into::into).collect();
        if raw.is_empty() {
            return Err(PermError::Empty);
        }
        let n = raw.len();
        let mut seen = vec![false; n + 1];
        let mut values = Vec::with_capacity(n);
        for v in raw {
            if v < 1 || v as usize > n {
                return Err(PermError::OutOfRange { value: v, n });
            }
            let v = v as usize;
            if seen[v] {
                return Err(PermError::Duplicate(v));
            }
            seen[v] = true;
            values.push(v);
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self { values: (1..=n).collect() }
    }

    /// The longest element `n n-1 … 1`.
    pub fn longest(n: usize) -> Self {
        Self { values: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `π(pos)`.
    pub fn at(&self, pos: usize) -> usize {
        self.values[pos - 1]
    }

    /// `π⁻¹(value)`.
    pub fn position_of(&self, value: usize) -> usize {
        self.values.iter().position(|&v| v == value).map(|p| p + 1).expect("value in range")
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { values: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), PermError> {
        let n = self.n();
        for pos in [a, b] {
            if pos < 1 || pos > n {
                return Err(PermError::BadPosition { pos, n });
            }
        }
        if a >= b {
            return Err(PermError::Unordered { a, b });
        }
        Ok(())
    }

    /// `π·t_{a,b}`: swap the entries at positions `a < b`.
    pub fn apply_t(&self, a: usize, b: usize) -> Result<Self, PermError> {
        self.check_pair(a, b)?;
        Ok(self.swapped(a, b))
    }

    pub(crate) fn swapped(&self, a: usize, b: usize) -> Self {
        let mut values = self.values.clone();
        values.swap(a - 1, b - 1);
        Self { values }
    }

    /// Right multiplication by the simple transposition `s_i`.
    pub fn mul_simple(&self, i: usize) -> Self {
        self.swapped(i, i + 1)
    }

    /// Whether `π·t_{a,b}` covers `π` in Bruhat order.
    pub fn is_cover_t(&self, a: usize, b: usize) -> Result<bool, PermError> {
        self.check_pair(a, b)?;
        Ok(self.covers_swap(a, b))
    }

    /// Cover test for an unordered pair of distinct positions.
    pub(crate) fn covers_swap(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let lo = self.at(a);
        let hi = self.at(b);
        lo < hi
            && (a + 1..b).all(|c| {
                let v = self.at(c);
                v < lo || v > hi
            })
    }

    /// Index sets `{k < α : π t_{k,α} ⋗ π}` and `{l > α : π t_{α,l} ⋗ π}`.
    pub fn monk_targets(&self, alpha: usize) -> Result<MonkTargets, PermError> {
        let n = self.n();
        if alpha < 1 || alpha >= n {
            return Err(PermError::BadPosition { pos: alpha, n });
        }
        let below = (1..alpha).filter(|&k| self.covers_swap(k, alpha)).collect();
        let above = (alpha + 1..=n).filter(|&l| self.covers_swap(alpha, l)).collect();
        Ok(MonkTargets { below, above })
    }

    /// All permutations of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Self::identity(n);
        loop {
            out.push(cur.clone());
            if !cur.next_lex() {
                break;
            }
        }
        out
    }

    fn next_lex(&mut self) -> bool {
        let v = &mut self.values;
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

/// Result of [`Permutation::monk_targets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonkTargets {
    pub below: Vec<usize>,
    pub above: Vec<usize>,
}

impl MonkTargets {
    /// Monk's rule needs at least one `l > α` with `π t_{α,l} ⋗ π`.
    pub fn precondition(&self) -> bool {
        !self.above.is_empty()
    }

    /// Exactly one `l`: the transition-formula case.
    pub fn is_transition(&self) -> bool {
        self.above.len() == 1
    }

    /// No `k`: the cotransition-formula case.
    pub fn is_cotransition(&self) -> bool {
        self.below.is_empty()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Accepts comma- and/or whitespace-separated integers, e.g. `"2 3 5 1 4"` or `"2,3,5,1,4"`.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut seq = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: i64 = tok.parse().map_err(|_| PermError::Syntax(tok.to_string()))?;
            seq.push(v);
        }
        Self::from_one_line(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn one_line_parsing() {
        assert_eq!(p("2 3 5 1 4").values(), &[2, 3, 5, 1, 4]);
        assert_eq!(p("2,3,5,1,4"), p("2 3 5 1 4"));
        assert!(p("1").is_identity());
        assert_eq!(Permutation::from_one_line([1, 1, 2]), Err(PermError::Duplicate(1)));
        assert_eq!(Permutation::from_one_line([1, 4, 2]), Err(PermError::OutOfRange { value: 4, n: 3 }));
        assert_eq!(Permutation::from_one_line(Vec::<i64>::new()), Err(PermError::Empty));
        assert!(matches!("1 a".parse::<Permutation>(), Err(PermError::Syntax(_))));
    }

    #[test]
    fn lengths() {
        assert_eq!(p("1 2").length(), 0);
        assert_eq!(p("3 2 1").length(), 3);
        // inversions of 23514: (2,1) (3,1) (5,1) (5,4)
        assert_eq!(p("2 3 5 1 4").length(), 4);
    }

    #[test]
    fn transpositions() {
        assert_eq!(p("1 2 4 3").apply_t(1, 2).unwrap(), p("2 1 4 3"));
        assert_eq!(p("2 3 1").apply_t(1, 3).unwrap(), p("1 3 2"));
        assert!(p("1 2").apply_t(2, 1).is_err());
        assert!(p("1 2").apply_t(1, 3).is_err());
    }

    #[test]
    fn covers() {
        assert!(p("1 2").is_cover_t(1, 2).unwrap());
        assert!(!p("3 2 1").is_cover_t(1, 3).unwrap());
        assert!(!p("1 2 4 3").is_cover_t(1, 3).unwrap());
    }

    #[test]
    fn monk_target_sets() {
        let t = p("1 3 2").monk_targets(1).unwrap();
        assert_eq!((t.below.clone(), t.above.clone()), (vec![], vec![2, 3]));
        assert!(t.precondition());
        let t = p("1 2").monk_targets(1).unwrap();
        assert_eq!(t.above, vec![2]);
        assert!(t.is_transition() && t.is_cotransition());
        let t = p("2 1").monk_targets(1).unwrap();
        assert!(t.below.is_empty() && t.above.is_empty());
        assert!(!t.precondition());
        assert!(p("1 2").monk_targets(2).is_err());
    }

    #[test]
    fn enumerates_all() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(3)[5], p("3 2 1"));
    }

    fn brute_length(v: &[usize]) -> usize {
        (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count()
    }

    #[test]
    fn cover_agrees_with_length_criterion() {
        for n in 1..=6 {
            for pi in Permutation::all(n) {
                let len = brute_length(pi.values());
                for a in 1..=n {
                    for b in a + 1..=n {
                        let swapped = pi.apply_t(a, b).unwrap();
                        let diff = brute_length(swapped.values()) as i64 - len as i64;
                        assert_eq!(diff.rem_euclid(2), 1);
                        let by_length = diff == 1;
                        assert_eq!(pi.is_cover_t(a, b).unwrap(), by_length, "{pi:?} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn monk_precondition_matches_brute_force() {
        for n in 2..=6 {
            for pi in Permutation::all(n) {
                for alpha in 1..n {
                    let pre = pi.monk_targets(alpha).unwrap().precondition();
                    let dominates = (alpha + 1..=n).all(|m| pi.at(alpha) > pi.at(m));
                    assert_eq!(pre, !dominates);
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn apply_t_is_involution(seed in proptest::collection::vec(0usize..1000, 2..8), a in 1usize..8, b in 1usize..8) {
            let n = seed.len();
            let mut idx: Vec<usize> = (1..=n).collect();
            idx.sort_by_key(|&i| seed[i - 1]);
            let pi = Permutation::from_one_line(idx.iter().map(|&v| v as i64)).unwrap();
            let (a, b) = (a.min(b), a.max(b));
            if a < b && b <= n {
                let once = pi.apply_t(a, b).unwrap();
                proptest::prop_assert_eq!(once.apply_t(a, b).unwrap(), pi);
            }
        }
    }
}
