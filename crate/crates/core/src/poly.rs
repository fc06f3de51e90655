//! Sparse polynomials with integer coefficients in `x_1..x_n, y_1..y_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by x{i} - x{j} is not exact")]
    NonExactDivision { i: usize, j: usize },
    #[error("divided difference index {i} out of range 1..{n}")]
    BadIndex { i: usize, n: usize },
}

/// Exponent vector `(x_1..x_n, y_1..y_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.exps[..self.n()]
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.exps[self.n()..]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn x(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn mul_x(&mut self, i: usize, e: u32) {
        self.exps[i - 1] += e;
    }

    pub fn mul_y(&mut self, j: usize, e: u32) {
        let n = self.n();
        self.exps[n + j - 1] += e;
    }

    fn set_x(&mut self, i: usize, e: u32) {
        self.exps[i - 1] = e;
    }

    fn widen(&self, n: usize) -> Self {
        let m = self.n();
        if m == n {
            return self.clone();
        }
        let mut exps = vec![0; 2 * n];
        exps[..m].copy_from_slice(&self.exps[..m]);
        exps[n..n + m].copy_from_slice(&self.exps[m..]);
        Self { exps }
    }

    fn product(&self, other: &Self) -> Self {
        Self { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    fn factors(&self) -> Vec<String> {
        let n = self.n();
        let mut out = Vec::new();
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (var, idx) = if k < n { ('x', k + 1) } else { ('y', k - n + 1) };
            if e == 1 {
                out.push(format!("{var}{idx}"));
            } else {
                out.push(format!("{var}{idx}^{e}"));
            }
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = self.factors();
        if fs.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&fs.join("*"))
        }
    }
}

/// A linear factor accepted by [`Poly::scale_linear`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linear {
    X(usize),
    NegY(usize),
    Const(i64),
}

/// An integer polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c.into());
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.mul_x(i, 1);
        Self::monomial(m, 1)
    }

    pub fn y(n: usize, j: usize) -> Self {
        let mut m = Monomial::one(n);
        m.mul_y(j, 1);
        Self::monomial(m, 1)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, c.into());
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(&m.widen(self.n)).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let m = m.widen(self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn widen(&self, n: usize) -> Self {
        if n <= self.n {
            return self.clone();
        }
        Self { n, terms: self.terms.iter().map(|(m, c)| (m.widen(n), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Multiply by `x_i`, by `-y_j`, or by an integer.
    pub fn scale_linear(&self, factor: Linear) -> Self {
        match factor {
            Linear::Const(c) => self.scale(&BigInt::from(c)),
            Linear::X(i) => {
                let n = self.n.max(i);
                let mut out = Self::zero(n);
                for (m, c) in &self.terms {
                    let mut m = m.widen(n);
                    m.mul_x(i, 1);
                    out.add_term(m, c.clone());
                }
                out
            }
            Linear::NegY(j) => {
                let n = self.n.max(j);
                let mut out = Self::zero(n);
                for (m, c) in &self.terms {
                    let mut m = m.widen(n);
                    m.mul_y(j, 1);
                    out.add_term(m, -c);
                }
                out
            }
        }
    }

    /// `s_i f`: exchange `x_i` and `x_{i+1}`.
    pub fn swap_x(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.exps.swap(i - 1, i);
            out.add_term(m, c.clone());
        }
        out
    }

    /// Set every `y_j` to zero.
    pub fn drop_y(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.y_exponents().iter().all(|&e| e == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Exact quotient by `x_i - x_j`, or an error if the remainder is non-zero.
    pub fn div_by_x_difference(&self, i: usize, j: usize) -> Result<Self, PolyError> {
        let n = self.n;
        // coefficients of powers of x_i, as polynomials without x_i
        let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.x(i);
            let mut rest = m.clone();
            rest.set_x(i, 0);
            by_power.entry(k).or_insert_with(|| Poly::zero(n)).add_term(rest, c.clone());
        }
        let Some(&top) = by_power.keys().next_back() else {
            return Ok(Self::zero(n));
        };
        // synthetic division by (x_i - t), t = x_j:
        // q_{k-1} = c_k + t q_k, remainder c_0 + t q_0
        let mut quotient = Self::zero(n);
        let mut carry = Self::zero(n);
        for k in (1..=top).rev() {
            let c_k = by_power.remove(&k).unwrap_or_else(|| Poly::zero(n));
            let q = &c_k + &carry.scale_linear(Linear::X(j));
            for (m, c) in &q.terms {
                let mut m = m.clone();
                m.mul_x(i, k - 1);
                quotient.add_term(m, c.clone());
            }
            carry = q;
        }
        let c_0 = by_power.remove(&0).unwrap_or_else(|| Poly::zero(n));
        let remainder = &c_0 + &carry.scale_linear(Linear::X(j));
        if !remainder.is_zero() {
            return Err(PolyError::NonExactDivision { i, j });
        }
        Ok(quotient)
    }

    /// The divided difference `∂_i f = (f - s_i f) / (x_i - x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Result<Self, PolyError> {
        if i < 1 || i >= self.n {
            return Err(PolyError::BadIndex { i, n: self.n });
        }
        let numerator = self - &self.swap_x(i);
        numerator.div_by_x_difference(i, i + 1)
    }

    /// Canonical text: terms by total degree descending, then by exponent vector
    /// `(x_1..x_n, y_1..y_n)` lexicographically descending.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| match b.degree().cmp(&a.degree()) {
            Ordering::Equal => b.exps.cmp(&a.exps),
            o => o,
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let factors = m.factors();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_canonical_string())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.n.max(rhs.n);
        let mut out = self.widen(n);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.n.max(rhs.n);
        let mut out = self.widen(n);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let n = self.n.max(rhs.n);
        let mut out = Poly::zero(n);
        for (a, ca) in &self.terms {
            let a = a.widen(n);
            for (b, cb) in &rhs.terms {
                out.add_term(a.product(&b.widen(n)), ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(0), |acc, p| &acc + &p)
    }
}
