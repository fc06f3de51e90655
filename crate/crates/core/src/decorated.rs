//! Decorated BPDs: every blank carries a label `x` or `-y`, and the monomial of a
//! decorated diagram is the product of `x_i` over `x`-blanks in row `i` and `-y_j` over
//! `-y`-blanks in column `j`. Summing monomials over all labelings of a BPD gives its
//! double weight `Π (x_i - y_j)`, so a monomial-preserving bijection on decorated
//! diagrams proves Monk's rule for double Schubert polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::grid::{Bpd, Diagram, Pos, Tile};
use crate::monk::{
    self, bump_pipes, check_start, cross_bump_swap, expect_owner, finalize_cross, min_droop, min_undroop, push,
    ForwardSource, MonkError, OutcomeTag, Step, TraceStep,
};
use crate::perm::Permutation;
use crate::poly::{Monomial, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Weight `x_i` for a blank in row `i`.
    X,
    /// Weight `-y_j` for a blank in column `j`.
    NegY,
}

impl Label {
    pub fn to_char(self) -> char {
        match self {
            Label::X => 'x',
            Label::NegY => 'y',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'x' => Some(Label::X),
            'y' => Some(Label::NegY),
            _ => None,
        }
    }

    /// The weight of this label on a blank at `(i, j)`.
    pub fn weight(self, n: usize, (i, j): Pos) -> SignedMonomial {
        let mut m = SignedMonomial::one(n);
        m.mul_label(self, (i, j));
        m
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// `±` a monomial in `x_1..x_n, y_1..y_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub negative: bool,
    pub monomial: Monomial,
}

impl SignedMonomial {
    pub fn one(n: usize) -> Self {
        Self { negative: false, monomial: Monomial::one(n) }
    }

    fn mul_label(&mut self, label: Label, (i, j): Pos) {
        match label {
            Label::X => self.monomial.mul_x(i, 1),
            Label::NegY => {
                self.monomial.mul_y(j, 1);
                self.negative = !self.negative;
            }
        }
    }

    pub fn mul(&self, other: &SignedMonomial) -> SignedMonomial {
        let mut exps = self.monomial.clone();
        for (i, &e) in other.monomial.x_exponents().iter().enumerate() {
            exps.mul_x(i + 1, e);
        }
        for (j, &e) in other.monomial.y_exponents().iter().enumerate() {
            exps.mul_y(j + 1, e);
        }
        SignedMonomial { negative: self.negative != other.negative, monomial: exps }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::monomial(self.monomial.clone(), BigInt::from(if self.negative { -1 } else { 1 }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecoratedError {
    #[error("blank at {0:?} has no label")]
    Unlabeled(Pos),
    #[error("label at {0:?} is not on a blank")]
    NotBlank(Pos),
    #[error("an insertion starting at {pos:?} {}", if *.expected { "needs a label" } else { "takes no label" })]
    LabelMismatch { pos: Pos, expected: bool },
    #[error(transparent)]
    Monk(#[from] MonkError),
}

pub type Result<T> = std::result::Result<T, DecoratedError>;

/// A BPD with a label on every blank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedBpd {
    bpd: Bpd,
    labels: BTreeMap<Pos, Label>,
}

impl DecoratedBpd {
    pub fn new(bpd: Bpd, labels: BTreeMap<Pos, Label>) -> Result<Self> {
        check_labels(&Diagram::Bpd(bpd.clone()), &labels)?;
        Ok(Self { bpd, labels })
    }

    /// Every blank labelled `label`.
    pub fn uniform(bpd: Bpd, label: Label) -> Self {
        let labels = bpd.blanks().into_iter().map(|p| (p, label)).collect();
        Self { bpd, labels }
    }

    /// All `2^(#blanks)` labelings of `bpd`.
    pub fn all_labelings(bpd: &Bpd) -> Vec<DecoratedBpd> {
        Self::labelings(bpd).collect()
    }

    /// Lazy form of [`DecoratedBpd::all_labelings`], in the same order.
    pub fn labelings(bpd: &Bpd) -> impl Iterator<Item = DecoratedBpd> + '_ {
        let blanks = bpd.blanks();
        assert!(blanks.len() < 64, "too many blanks to label");
        (0u64..1 << blanks.len()).map(move |mask| {
            let labels = blanks
                .iter()
                .enumerate()
                .map(|(k, &p)| (p, if mask >> k & 1 == 1 { Label::NegY } else { Label::X }))
                .collect();
            DecoratedBpd { bpd: bpd.clone(), labels }
        })
    }

    pub fn bpd(&self) -> &Bpd {
        &self.bpd
    }

    pub fn labels(&self) -> &BTreeMap<Pos, Label> {
        &self.labels
    }

    pub fn label(&self, pos: Pos) -> Option<Label> {
        self.labels.get(&pos).copied()
    }

    pub fn into_parts(self) -> (Bpd, BTreeMap<Pos, Label>) {
        (self.bpd, self.labels)
    }

    pub fn mon(&self) -> SignedMonomial {
        let mut m = SignedMonomial::one(self.bpd.n());
        for (&pos, &label) in &self.labels {
            m.mul_label(label, pos);
        }
        m
    }
}

fn check_labels(d: &Diagram, labels: &BTreeMap<Pos, Label>) -> Result<()> {
    if let Some(&pos) = labels.keys().find(|&&p| d.tile(p) != Tile::Blank) {
        return Err(DecoratedError::NotBlank(pos));
    }
    if let Some(pos) = d.blanks().into_iter().find(|p| !labels.contains_key(p)) {
        return Err(DecoratedError::Unlabeled(pos));
    }
    Ok(())
}

/// Input side of the decorated bijection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoratedInput {
    /// A label for the inserted blank together with a decorated BPD of `π`.
    Labeled(Label, DecoratedBpd),
    /// A decorated BPD of some `π t_{k,α}`, `k < α`.
    Bare(DecoratedBpd),
}

impl DecoratedInput {
    pub fn diagram(&self) -> &DecoratedBpd {
        match self {
            DecoratedInput::Labeled(_, d) | DecoratedInput::Bare(d) => d,
        }
    }

    /// Monomial of the input, counting the extra label as `x_α` or `-y_{π(α)}`.
    pub fn mon(&self, pi: &Permutation, alpha: usize) -> SignedMonomial {
        match self {
            DecoratedInput::Bare(d) => d.mon(),
            DecoratedInput::Labeled(label, d) => {
                let extra = label.weight(pi.n(), (alpha, pi.at(alpha)));
                d.mon().mul(&extra)
            }
        }
    }
}

/// A label consumed from a blank and carried to the next corner of the moving pipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelMove {
    pub label: Label,
    pub consumed: Pos,
    pub continued_at: Pos,
}

/// Outcome of a decorated insertion run.
#[derive(Debug, Clone)]
pub struct DecResolved {
    pub tag: OutcomeTag,
    pub diagram: DecoratedBpd,
    /// Label recovered by a backward run that ends with `Shrunk`.
    pub captured: Option<Label>,
    pub trace: Vec<TraceStep>,
    pub label_moves: Vec<LabelMove>,
    pub pipe: usize,
}

impl DecResolved {
    /// For a backward run, the preimage in the forward domain.
    pub fn preimage(&self) -> Option<DecoratedInput> {
        match (self.tag, self.captured) {
            (OutcomeTag::Shrunk, Some(v)) => Some(DecoratedInput::Labeled(v, self.diagram.clone())),
            (OutcomeTag::CoverDown(_), None) => Some(DecoratedInput::Bare(self.diagram.clone())),
            _ => None,
        }
    }
}

fn take_label(labels: &mut BTreeMap<Pos, Label>, pos: Pos) -> Result<Label> {
    labels.remove(&pos).ok_or(DecoratedError::Unlabeled(pos))
}

fn check_u(d: &Diagram, pos: Pos, corner: Tile, u: Option<Label>) -> Result<()> {
    let expected = d.tile(pos) == corner;
    if expected != u.is_some() {
        return Err(DecoratedError::LabelMismatch { pos, expected });
    }
    Ok(())
}

fn finish(
    d: &Diagram,
    at: Pos,
    tag: OutcomeTag,
    labels: BTreeMap<Pos, Label>,
    mut trace: Vec<TraceStep>,
    label_moves: Vec<LabelMove>,
    pipe: usize,
) -> Result<DecResolved> {
    let bpd = finalize_cross(d, at)?;
    trace.push(TraceStep { step: Step::FinalizeCross(at), after: bpd.grid().clone() });
    let diagram = DecoratedBpd::new(bpd, labels)?;
    Ok(DecResolved { tag, diagram, captured: None, trace, label_moves, pipe })
}

/// Decorated [`monk::resolve_at_r`]. `u` is the label deposited on the blank left
/// behind by the first droop; it is required exactly when `(i, j)` is an r-tile.
/// A droop onto a blank labelled `x` continues from the pipe's r-turn on the same row,
/// onto a blank labelled `-y` from its r-turn in the same column.
pub fn resolve_at_r_dec(d: Diagram, labels: BTreeMap<Pos, Label>, pos: Pos, u: Option<Label>) -> Result<DecResolved> {
    check_start(&d, pos, Tile::RTile)?;
    check_u(&d, pos, Tile::RTile, u)?;
    check_labels(&d, &labels)?;
    let pi = d.permutation().clone();
    let p = d.r_turn_owner(pos).ok_or(MonkError::NotRTurn(pos))?;
    let x = pi.position_of(p);
    let limit = d.n() * d.n();
    let (mut d, mut labels, mut pos, mut u) = (d, labels, pos, u);
    let mut trace = Vec::new();
    let mut label_moves = Vec::new();
    loop {
        let origin = d.tile(pos);
        let (next, landing) = min_droop(&d, pos)?;
        let v = if d.tile(landing) == Tile::Blank { Some(take_label(&mut labels, landing)?) } else { None };
        if origin == Tile::RTile {
            labels.insert(pos, u.take().expect("r-tile origins carry a label"));
        }
        push(&mut trace, Step::Droop { from: pos, to: landing }, &next, limit)?;
        d = next;
        if let Some(v) = v {
            let found = match v {
                Label::X => d.r_turn_on_row(p, landing.0),
                Label::NegY => d.r_turn_on_col(p, landing.1),
            };
            let line = if v == Label::X { landing.0 } else { landing.1 };
            pos = found.ok_or(MonkError::MissingTurn { pipe: p, what: "r-turn", line })?;
            label_moves.push(LabelMove { label: v, consumed: landing, continued_at: pos });
            u = Some(v);
            continue;
        }
        let Diagram::Almost(almost) = &d else { unreachable!("landing on an r-tile makes a bump") };
        let (q, _) = bump_pipes(almost);
        let y = pi.position_of(q);
        if pi.covers_swap(x, y) {
            return finish(&d, landing, OutcomeTag::CoverUp(y), labels, trace, label_moves, p);
        }
        let cross = almost.find_cross(p, q).ok_or(MonkError::NotCrossing { p, q })?;
        let swapped = Diagram::Almost(cross_bump_swap(almost, cross)?);
        expect_owner(swapped.r_turn_owner(cross), cross, p)?;
        push(&mut trace, Step::Swap { bump: landing, cross }, &swapped, limit)?;
        d = swapped;
        pos = cross;
    }
}

/// Decorated [`monk::resolve_at_j`]. An undroop onto a blank labelled `x` continues from
/// the pipe's next j-turn east on that row, onto `-y` from its next j-turn south in that
/// column; when there is none the run stops with `Shrunk` and returns that label.
pub fn resolve_at_j_dec(d: Diagram, labels: BTreeMap<Pos, Label>, pos: Pos, u: Option<Label>) -> Result<DecResolved> {
    check_start(&d, pos, Tile::JTile)?;
    check_u(&d, pos, Tile::JTile, u)?;
    check_labels(&d, &labels)?;
    let pi = d.permutation().clone();
    let p = d.j_turn_owner(pos).ok_or(MonkError::NotJTurn(pos))?;
    let x = pi.position_of(p);
    let limit = d.n() * d.n();
    let (mut d, mut labels, mut pos, mut u) = (d, labels, pos, u);
    let mut trace = Vec::new();
    let mut label_moves = Vec::new();
    loop {
        let origin = d.tile(pos);
        let (next, landing) = min_undroop(&d, pos)?;
        let v = if d.tile(landing) == Tile::Blank { Some(take_label(&mut labels, landing)?) } else { None };
        if origin == Tile::JTile {
            labels.insert(pos, u.take().expect("j-tile origins carry a label"));
        }
        push(&mut trace, Step::Undroop { from: pos, to: landing }, &next, limit)?;
        d = next;
        if let Some(v) = v {
            let found = match v {
                Label::X => d.j_turn_on_row_after(p, landing.0, landing.1),
                Label::NegY => d.j_turn_on_col_after(p, landing.1, landing.0),
            };
            match found {
                Some(next_pos) => {
                    label_moves.push(LabelMove { label: v, consumed: landing, continued_at: next_pos });
                    u = Some(v);
                    pos = next_pos;
                    continue;
                }
                None => {
                    trace.push(TraceStep { step: Step::FinalizeShrink { row: landing.0 }, after: d.grid().clone() });
                    let diagram = DecoratedBpd::new(d.into_bpd().map_err(MonkError::from)?, labels)?;
                    return Ok(DecResolved {
                        tag: OutcomeTag::Shrunk,
                        diagram,
                        captured: Some(v),
                        trace,
                        label_moves,
                        pipe: p,
                    });
                }
            }
        }
        let Diagram::Almost(almost) = &d else { unreachable!("landing on a j-tile makes a bump") };
        let (_, q) = bump_pipes(almost);
        let y = pi.position_of(q);
        if pi.covers_swap(y, x) {
            return finish(&d, landing, OutcomeTag::CoverDown(y), labels, trace, label_moves, p);
        }
        let cross = almost.find_cross(p, q).ok_or(MonkError::NotCrossing { p, q })?;
        let swapped = Diagram::Almost(cross_bump_swap(almost, cross)?);
        expect_owner(swapped.j_turn_owner(cross), cross, p)?;
        push(&mut trace, Step::Swap { bump: landing, cross }, &swapped, limit)?;
        d = swapped;
        pos = cross;
    }
}

/// The decorated Monk bijection `Φ̃_π`.
pub fn phi_tilde_forward(pi: &Permutation, alpha: usize, input: &DecoratedInput) -> Result<DecResolved> {
    let d = input.diagram();
    let (source, start, pos) = monk::forward_start(pi, alpha, d.bpd())?;
    let p = pi.at(alpha);
    let (pos, u) = match (input, source) {
        (DecoratedInput::Labeled(Label::X, _), ForwardSource::Same) => (pos, Some(Label::X)),
        (DecoratedInput::Labeled(Label::NegY, _), ForwardSource::Same) => {
            let col = d.bpd().r_turn_on_col(p, p).ok_or(MonkError::MissingTurn { pipe: p, what: "r-turn", line: p })?;
            (col, Some(Label::NegY))
        }
        (DecoratedInput::Bare(_), ForwardSource::CoverDown(_)) => (pos, None),
        _ => {
            return Err(MonkError::Domain(format!(
                "a labelled input needs a BPD of π and a bare one a BPD of π t_(k,{alpha})"
            ))
            .into())
        }
    };
    let out = resolve_at_r_dec(start, d.labels().clone(), pos, u)?;
    match out.tag {
        OutcomeTag::CoverUp(l) if l > alpha => Ok(out),
        tag => Err(MonkError::Domain(format!("forward run ended with {tag:?}")).into()),
    }
}

/// Inverse of [`phi_tilde_forward`]; see [`DecResolved::preimage`].
pub fn phi_tilde_backward(pi: &Permutation, alpha: usize, e: &DecoratedBpd) -> Result<DecResolved> {
    let (start, pos) = monk::backward_start(pi, alpha, e.bpd())?;
    let out = resolve_at_j_dec(start, e.labels().clone(), pos, None)?;
    match out.tag {
        OutcomeTag::CoverDown(k) if k < alpha => Ok(out),
        OutcomeTag::Shrunk => Ok(out),
        tag => Err(MonkError::Domain(format!("backward run ended with {tag:?}")).into()),
    }
}
