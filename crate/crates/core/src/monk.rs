//! Droop moves and the insertion algorithms behind the bijective proof of Monk's rule.
//!
//! Every primitive takes a validated diagram and returns a re-validated one, so a
//! rewrite that breaks edge matching or reducedness surfaces as [`MonkError::Grid`]
//! instead of propagating silently.

use std::fmt;

use thiserror::Error;

use crate::grid::{AlmostBpd, Bpd, Diagram, Grid, GridError, Pos, Tile};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonkError {
    #[error("no south-east corner at {0:?}")]
    NotRTurn(Pos),
    #[error("no west-north corner at {0:?}")]
    NotJTurn(Pos),
    #[error("pipe {pipe} at {pos:?} has only crosses to the south or east; nothing to droop into")]
    NoDroopTarget { pos: Pos, pipe: usize },
    #[error("pipe {pipe} at {pos:?} has only crosses to the north or west; nothing to undroop into")]
    NoUndroopTarget { pos: Pos, pipe: usize },
    #[error("pipe {pipe} = π({position}) has no l > {position} with π t covering π")]
    NoCover { pipe: usize, position: usize },
    #[error("unexpected {tile:?} at {pos:?} while moving a corner (expected {expected})")]
    Frame { pos: Pos, tile: Tile, expected: &'static str },
    #[error("pipes {p} and {q} meet at the bump but do not cross")]
    NotCrossing { p: usize, q: usize },
    #[error("{0:?} is not the cross of the two pipes meeting at the bump")]
    NotTheirCross(Pos),
    #[error("pipe {pipe} has no {what} on line {line}")]
    MissingTurn { pipe: usize, what: &'static str, line: usize },
    #[error("corner at {pos:?} belongs to pipe {found}, expected pipe {expected}")]
    Ownership { pos: Pos, expected: usize, found: usize },
    #[error("move changed the readout permutation")]
    PermutationChanged,
    #[error("exceeded {limit} primitive steps")]
    StepLimit { limit: usize },
    #[error("diagram outside the domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub type Result<T> = std::result::Result<T, MonkError>;

/// One primitive step of an insertion run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Droop { from: Pos, to: Pos },
    Undroop { from: Pos, to: Pos },
    Swap { bump: Pos, cross: Pos },
    FinalizeCross(Pos),
    FinalizeShrink { row: usize },
}

impl Step {
    /// Droops, undroops and swaps; the moves bounded by the area argument.
    pub fn is_move(&self) -> bool {
        matches!(self, Step::Droop { .. } | Step::Undroop { .. } | Step::Swap { .. })
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::Droop { from: (i, j), to: (k, l) } => write!(f, "droop ({i},{j})->({k},{l})"),
            Step::Undroop { from: (i, j), to: (k, l) } => write!(f, "undroop ({i},{j})->({k},{l})"),
            Step::Swap { bump: (i, j), cross: (k, l) } => write!(f, "swap bump({i},{j})<->cross({k},{l})"),
            Step::FinalizeCross((i, j)) => write!(f, "finalize cross({i},{j})"),
            Step::FinalizeShrink { row } => write!(f, "finalize shrink row {row}"),
        }
    }
}

/// A step together with the grid it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: Step,
    pub after: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeTag {
    /// Forward result in `BPD(π t_{α,l})`.
    CoverUp(usize),
    /// Backward result in `BPD(π t_{k,α})`.
    CoverDown(usize),
    /// Backward result in `BPD(π)` with one blank fewer on the pipe's exit row.
    Shrunk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonkOutcome {
    pub tag: OutcomeTag,
    pub diagram: Bpd,
}

/// Outcome of an insertion run, with its step trace.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub outcome: MonkOutcome,
    pub trace: Vec<TraceStep>,
    /// The pipe moved by the run.
    pub pipe: usize,
}

impl Resolved {
    pub fn moves(&self) -> usize {
        self.trace.iter().filter(|t| t.step.is_move()).count()
    }
}

fn expect_tile(grid: &Grid, pos: Pos, allowed: &[Tile], expected: &'static str) -> Result<Tile> {
    let tile = grid.get(pos);
    if allowed.contains(&tile) {
        Ok(tile)
    } else {
        Err(MonkError::Frame { pos, tile, expected })
    }
}

fn revalidate(grid: Grid, pi: &Permutation) -> Result<Diagram> {
    let d = grid.validate()?;
    if d.permutation() != pi {
        return Err(MonkError::PermutationChanged);
    }
    Ok(d)
}

fn has_cover_above(pi: &Permutation, x: usize) -> bool {
    (x + 1..=pi.n()).any(|y| pi.covers_swap(x, y))
}

/// Droop the south-east corner at `(i, j)` into the nearest tile south-east of it that
/// is reachable through crosses only. Returns the new diagram and the landing tile,
/// which is now a j-tile (landed on a blank) or a bump (landed on an r-tile).
pub fn min_droop(d: &Diagram, (i, j): Pos) -> Result<(Diagram, Pos)> {
    let n = d.n();
    let p = d.r_turn_owner((i, j)).ok_or(MonkError::NotRTurn((i, j)))?;
    let g = d.grid();
    let mut a = 1;
    while i + a <= n && g.get((i + a, j)) == Tile::Cross {
        a += 1;
    }
    let mut b = 1;
    while j + b <= n && g.get((i, j + b)) == Tile::Cross {
        b += 1;
    }
    if i + a > n || j + b > n {
        return Err(MonkError::NoDroopTarget { pos: (i, j), pipe: p });
    }
    let pi = d.permutation();
    let x = pi.position_of(p);
    if !has_cover_above(pi, x) {
        return Err(MonkError::NoCover { pipe: p, position: x });
    }

    use Tile::*;
    let mut out = g.clone();
    out.set((i, j), if g.get((i, j)) == RTile { Blank } else { JTile });
    for k in 1..a {
        expect_tile(g, (i + k, j + b), &[Horizontal], "horizontal below the east end")?;
        out.set((i + k, j), Horizontal);
        out.set((i + k, j + b), Cross);
    }
    for m in 1..b {
        expect_tile(g, (i + a, j + m), &[Vertical], "vertical right of the south end")?;
        out.set((i, j + m), Vertical);
        out.set((i + a, j + m), Cross);
    }
    for k in 1..a {
        for m in 1..b {
            expect_tile(g, (i + k, j + m), &[Cross], "cross inside the droop rectangle")?;
        }
    }
    let south = expect_tile(g, (i + a, j), &[Vertical, JTile], "vertical or j-tile at the south end")?;
    out.set((i + a, j), if south == Vertical { RTile } else { Horizontal });
    let east = expect_tile(g, (i, j + b), &[Horizontal, JTile], "horizontal or j-tile at the east end")?;
    out.set((i, j + b), if east == Horizontal { RTile } else { Vertical });
    let landing = (i + a, j + b);
    let target = expect_tile(g, landing, &[Blank, RTile], "blank or r-tile at the landing")?;
    out.set(landing, if target == Blank { JTile } else { Bump });

    Ok((revalidate(out, pi)?, landing))
}

/// Inverse of [`min_droop`]: move the west-north corner at `(i, j)` to the nearest tile
/// north-west of it reachable through crosses. The landing becomes an r-tile (from a
/// blank) or a bump (from a j-tile).
pub fn min_undroop(d: &Diagram, (i, j): Pos) -> Result<(Diagram, Pos)> {
    let p = d.j_turn_owner((i, j)).ok_or(MonkError::NotJTurn((i, j)))?;
    let g = d.grid();
    let mut a = 1;
    while a < i && g.get((i - a, j)) == Tile::Cross {
        a += 1;
    }
    let mut b = 1;
    while b < j && g.get((i, j - b)) == Tile::Cross {
        b += 1;
    }
    if a >= i || b >= j {
        return Err(MonkError::NoUndroopTarget { pos: (i, j), pipe: p });
    }

    use Tile::*;
    let mut out = g.clone();
    out.set((i, j), if g.get((i, j)) == JTile { Blank } else { RTile });
    for k in 1..a {
        expect_tile(g, (i - k, j - b), &[Horizontal], "horizontal above the west end")?;
        out.set((i - k, j), Horizontal);
        out.set((i - k, j - b), Cross);
    }
    for m in 1..b {
        expect_tile(g, (i - a, j - m), &[Vertical], "vertical left of the north end")?;
        out.set((i, j - m), Vertical);
        out.set((i - a, j - m), Cross);
    }
    for k in 1..a {
        for m in 1..b {
            expect_tile(g, (i - k, j - m), &[Cross], "cross inside the undroop rectangle")?;
        }
    }
    let north = expect_tile(g, (i - a, j), &[RTile, Vertical], "r-tile or vertical at the north end")?;
    out.set((i - a, j), if north == RTile { Horizontal } else { JTile });
    let west = expect_tile(g, (i, j - b), &[RTile, Horizontal], "r-tile or horizontal at the west end")?;
    out.set((i, j - b), if west == RTile { Vertical } else { JTile });
    let landing = (i - a, j - b);
    let target = expect_tile(g, landing, &[Blank, JTile], "blank or j-tile at the landing")?;
    out.set(landing, if target == Blank { RTile } else { Bump });

    Ok((revalidate(out, d.permutation())?, landing))
}

/// The two pipes meeting at the bump, as `(r-corner owner, j-corner owner)`.
pub fn bump_pipes(d: &AlmostBpd) -> (usize, usize) {
    let b = d.bump_pos();
    (d.r_turn_owner(b).expect("bump has an r-corner"), d.j_turn_owner(b).expect("bump has a j-corner"))
}

/// Exchange the bump with the cross of the same two pipes at `cross_pos`.
pub fn cross_bump_swap(d: &AlmostBpd, cross_pos: Pos) -> Result<AlmostBpd> {
    let (p, q) = bump_pipes(d);
    let cross = d.find_cross(p, q).ok_or(MonkError::NotCrossing { p, q })?;
    if cross != cross_pos {
        return Err(MonkError::NotTheirCross(cross_pos));
    }
    let mut g = d.grid().clone();
    g.set(d.bump_pos(), Tile::Cross);
    g.set(cross_pos, Tile::Bump);
    match revalidate(g, d.permutation())? {
        Diagram::Almost(a) => Ok(a),
        Diagram::Bpd(_) => unreachable!("swap keeps exactly one bump"),
    }
}

/// Replace the cross of pipes `p` and `q` by a bump. The readout changes by the
/// transposition of their exit rows.
pub fn uncross(d: &Bpd, p: usize, q: usize) -> Result<AlmostBpd> {
    let pos = d.find_cross(p, q).ok_or(MonkError::NotCrossing { p, q })?;
    let mut g = d.grid().clone();
    g.set(pos, Tile::Bump);
    Ok(AlmostBpd::new(g)?)
}

/// Replace the bump with a cross, crossing its two pipes.
pub(crate) fn finalize_cross(d: &Diagram, pos: Pos) -> Result<Bpd> {
    let mut g = d.grid().clone();
    g.set(pos, Tile::Cross);
    Ok(Bpd::new(g)?)
}

fn step_limit(n: usize) -> usize {
    n * n
}

/// Insert a blank at the r-tile `(i, j)`, or resolve the bump at `(i, j)`, by repeated
/// droops and cross-bump swaps of the pipe owning the corner there. The result is a BPD
/// of `π t_{x,y}` for some `y > x` with `π t_{x,y} ⋗ π`, where that pipe is `π(x)`.
pub fn resolve_at_r(d: Diagram, pos: Pos) -> Result<Resolved> {
    check_start(&d, pos, Tile::RTile)?;
    let pi = d.permutation().clone();
    let p = d.r_turn_owner(pos).ok_or(MonkError::NotRTurn(pos))?;
    let x = pi.position_of(p);
    if !has_cover_above(&pi, x) {
        return Err(MonkError::NoCover { pipe: p, position: x });
    }
    let limit = step_limit(d.n());
    let mut trace = Vec::new();
    let mut d = d;
    let mut pos = pos;
    loop {
        let (next, landing) = min_droop(&d, pos)?;
        push(&mut trace, Step::Droop { from: pos, to: landing }, &next, limit)?;
        d = next;
        if d.tile(landing) == Tile::JTile {
            pos = d.r_turn_on_row(p, landing.0).ok_or(MonkError::MissingTurn {
                pipe: p,
                what: "r-turn on row",
                line: landing.0,
            })?;
            continue;
        }
        let Diagram::Almost(almost) = &d else { unreachable!("landing on an r-tile makes a bump") };
        let (q, _) = bump_pipes(almost);
        let y = pi.position_of(q);
        if pi.covers_swap(x, y) {
            let done = finalize_cross(&d, landing)?;
            trace.push(TraceStep { step: Step::FinalizeCross(landing), after: done.grid().clone() });
            return Ok(Resolved {
                outcome: MonkOutcome { tag: OutcomeTag::CoverUp(y), diagram: done },
                trace,
                pipe: p,
            });
        }
        let cross = almost.find_cross(p, q).ok_or(MonkError::NotCrossing { p, q })?;
        let swapped = Diagram::Almost(cross_bump_swap(almost, cross)?);
        expect_owner(swapped.r_turn_owner(cross), cross, p)?;
        push(&mut trace, Step::Swap { bump: landing, cross }, &swapped, limit)?;
        d = swapped;
        pos = cross;
    }
}

/// Mirror of [`resolve_at_r`]: undroops and swaps from the j-shaped corner at `(i, j)`.
/// Ends either in a BPD of `π t_{y,x}` for some `y < x` (`CoverDown(y)`), or in a BPD of
/// `π` with one blank fewer on row `x` (`Shrunk`).
pub fn resolve_at_j(d: Diagram, pos: Pos) -> Result<Resolved> {
    check_start(&d, pos, Tile::JTile)?;
    let pi = d.permutation().clone();
    let p = d.j_turn_owner(pos).ok_or(MonkError::NotJTurn(pos))?;
    let x = pi.position_of(p);
    let limit = step_limit(d.n());
    let mut trace = Vec::new();
    let mut d = d;
    let mut pos = pos;
    loop {
        let (next, landing) = min_undroop(&d, pos)?;
        push(&mut trace, Step::Undroop { from: pos, to: landing }, &next, limit)?;
        d = next;
        if d.tile(landing) == Tile::RTile {
            match d.j_turn_on_row_after(p, landing.0, landing.1) {
                Some(next_pos) => {
                    pos = next_pos;
                    continue;
                }
                None => {
                    trace.push(TraceStep { step: Step::FinalizeShrink { row: landing.0 }, after: d.grid().clone() });
                    let diagram = d.into_bpd()?;
                    return Ok(Resolved { outcome: MonkOutcome { tag: OutcomeTag::Shrunk, diagram }, trace, pipe: p });
                }
            }
        }
        let Diagram::Almost(almost) = &d else { unreachable!("landing on a j-tile makes a bump") };
        let (_, q) = bump_pipes(almost);
        let y = pi.position_of(q);
        if pi.covers_swap(y, x) {
            let done = finalize_cross(&d, landing)?;
            trace.push(TraceStep { step: Step::FinalizeCross(landing), after: done.grid().clone() });
            return Ok(Resolved {
                outcome: MonkOutcome { tag: OutcomeTag::CoverDown(y), diagram: done },
                trace,
                pipe: p,
            });
        }
        let cross = almost.find_cross(p, q).ok_or(MonkError::NotCrossing { p, q })?;
        let swapped = Diagram::Almost(cross_bump_swap(almost, cross)?);
        expect_owner(swapped.j_turn_owner(cross), cross, p)?;
        push(&mut trace, Step::Swap { bump: landing, cross }, &swapped, limit)?;
        d = swapped;
        pos = cross;
    }
}

/// The start of an insertion must be the named tile kind (in a BPD) or the bump.
pub(crate) fn check_start(d: &Diagram, pos: Pos, kind: Tile) -> Result<()> {
    let ok = match d.bump_pos() {
        Some(b) => b == pos,
        None => d.tile(pos) == kind,
    };
    if ok {
        Ok(())
    } else if kind == Tile::RTile {
        Err(MonkError::NotRTurn(pos))
    } else {
        Err(MonkError::NotJTurn(pos))
    }
}

pub(crate) fn expect_owner(found: Option<usize>, pos: Pos, expected: usize) -> Result<()> {
    match found {
        Some(f) if f == expected => Ok(()),
        other => Err(MonkError::Ownership { pos, expected, found: other.unwrap_or(0) }),
    }
}

pub(crate) fn push(trace: &mut Vec<TraceStep>, step: Step, d: &Diagram, limit: usize) -> Result<()> {
    trace.push(TraceStep { step, after: d.grid().clone() });
    if trace.iter().filter(|t| t.step.is_move()).count() > limit {
        return Err(MonkError::StepLimit { limit });
    }
    Ok(())
}

/// The unique `(a, b)`, `a < b`, with `sigma = pi · t_{a,b}`.
pub fn transposition_between(pi: &Permutation, sigma: &Permutation) -> Option<(usize, usize)> {
    if pi.n() != sigma.n() {
        return None;
    }
    let diff: Vec<usize> = (1..=pi.n()).filter(|&i| pi.at(i) != sigma.at(i)).collect();
    match diff[..] {
        [a, b] if pi.swapped(a, b) == *sigma => Some((a, b)),
        _ => None,
    }
}

/// Where a forward input sits in the domain of the Monk bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardSource {
    /// The input is a BPD of `π` itself.
    Same,
    /// The input is a BPD of `π t_{k,α}`.
    CoverDown(usize),
}

fn check_monk(pi: &Permutation, alpha: usize) -> Result<()> {
    if !pi.monk_targets(alpha)?.precondition() {
        return Err(MonkError::Domain(format!("no l > {alpha} with π t_(α,l) covering π for π = {pi}")));
    }
    Ok(())
}

/// Classify `d` as an element of `BPD(π) ⊔ ⨆_k BPD(π t_{k,α})`.
pub fn forward_source(pi: &Permutation, alpha: usize, d: &Bpd) -> Result<ForwardSource> {
    check_monk(pi, alpha)?;
    let sigma = d.permutation();
    if sigma == pi {
        return Ok(ForwardSource::Same);
    }
    match transposition_between(pi, sigma) {
        Some((k, b)) if b == alpha && pi.covers_swap(k, alpha) => Ok(ForwardSource::CoverDown(k)),
        _ => Err(MonkError::Domain(format!(
            "readout {sigma} is neither π = {pi} nor a cover π t_(k,{alpha}), k < {alpha}"
        ))),
    }
}

/// Classify `e` as an element of `⨆_l BPD(π t_{α,l})`, returning `l`.
pub fn backward_target(pi: &Permutation, alpha: usize, e: &Bpd) -> Result<usize> {
    check_monk(pi, alpha)?;
    let sigma = e.permutation();
    match transposition_between(pi, sigma) {
        Some((a, l)) if a == alpha && pi.covers_swap(alpha, l) => Ok(l),
        _ => {
            Err(MonkError::Domain(format!("readout {sigma} is not a cover π t_({alpha},l), l > {alpha}, of π = {pi}")))
        }
    }
}

/// The start of a forward run: the diagram to resolve and the tile to start at.
pub(crate) fn forward_start(pi: &Permutation, alpha: usize, d: &Bpd) -> Result<(ForwardSource, Diagram, Pos)> {
    let source = forward_source(pi, alpha, d)?;
    match source {
        ForwardSource::Same => {
            let p = pi.at(alpha);
            let pos = d.r_turn_on_row(p, alpha).ok_or(MonkError::MissingTurn {
                pipe: p,
                what: "r-turn on row",
                line: alpha,
            })?;
            Ok((source, Diagram::Bpd(d.clone()), pos))
        }
        ForwardSource::CoverDown(k) => {
            let sigma = d.permutation();
            let (p, q) = (sigma.at(k), sigma.at(alpha));
            let almost = uncross(d, p, q)?;
            let pos = almost.bump_pos();
            expect_owner(almost.r_turn_owner(pos), pos, p)?;
            Ok((source, Diagram::Almost(almost), pos))
        }
    }
}

/// The start of a backward run: the uncrossed diagram and its bump.
pub(crate) fn backward_start(pi: &Permutation, alpha: usize, e: &Bpd) -> Result<(Diagram, Pos)> {
    let l = backward_target(pi, alpha, e)?;
    let sigma = e.permutation();
    let (q, p) = (sigma.at(alpha), sigma.at(l));
    let almost = uncross(e, p, q)?;
    let pos = almost.bump_pos();
    expect_owner(almost.j_turn_owner(pos), pos, p)?;
    Ok((Diagram::Almost(almost), pos))
}

/// The Monk bijection `Φ_π` on `BPD(π) ⊔ ⨆_{k<α} BPD(π t_{k,α}) → ⨆_{l>α} BPD(π t_{α,l})`.
pub fn phi_forward(pi: &Permutation, alpha: usize, d: &Bpd) -> Result<Resolved> {
    let (_, start, pos) = forward_start(pi, alpha, d)?;
    let out = resolve_at_r(start, pos)?;
    match out.outcome.tag {
        OutcomeTag::CoverUp(l) if l > alpha => Ok(out),
        tag => Err(MonkError::Domain(format!("forward run ended with {tag:?}"))),
    }
}

/// Inverse of [`phi_forward`]. `Shrunk` means the preimage is in `BPD(π)`,
/// `CoverDown(k)` that it is in `BPD(π t_{k,α})`.
pub fn phi_backward(pi: &Permutation, alpha: usize, e: &Bpd) -> Result<Resolved> {
    let (start, pos) = backward_start(pi, alpha, e)?;
    let out = resolve_at_j(start, pos)?;
    match out.outcome.tag {
        OutcomeTag::CoverDown(k) if k < alpha => Ok(out),
        OutcomeTag::Shrunk => Ok(out),
        tag => Err(MonkError::Domain(format!("backward run ended with {tag:?}"))),
    }
}
