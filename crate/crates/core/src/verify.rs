//! Exhaustive and sampled verification of Monk's rule and its bijections over `S_n`.
//!
//! Cases are independent `(π, α)` pairs; they are evaluated on a worker pool and the
//! results merged back in case order, so reports do not depend on the thread count.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decorated::{phi_tilde_backward, phi_tilde_forward, DecoratedBpd, DecoratedInput, Label};
use crate::grid::{enumerate_bpds, Bpd};
use crate::monk::{forward_source, phi_backward, phi_forward, ForwardSource, OutcomeTag, Step, TraceStep};
use crate::perm::Permutation;
use crate::poly::{Linear, Poly};
use crate::schubert::schubert_from_bpds;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n: usize,
    pub double: bool,
    pub jobs: usize,
    /// Check this many uniformly drawn permutations instead of all of `S_n`.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn new(n: usize) -> Self {
        Self { n, double: false, jobs: 1, sample: None, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub pi: Permutation,
    pub alpha: usize,
    pub kind: &'static str,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL pi={} alpha={} {}: {} != {}", self.pi, self.alpha, self.kind, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: usize,
    /// Number of `(π, α, flag)` cases checked.
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Deterministic part of the report: failures one per line, then a summary line.
impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for failure in &self.failures {
            writeln!(f, "{failure}")?;
        }
        write!(f, "n={} checked={} failures={}", self.n, self.checked, self.failures.len())
    }
}

/// All `(π, α)` in `S_n` satisfying the Monk precondition, `π` in lex order.
pub fn valid_pairs(n: usize) -> Vec<(Permutation, usize)> {
    pairs_for(&Permutation::all(n))
}

fn pairs_for(perms: &[Permutation]) -> Vec<(Permutation, usize)> {
    perms
        .iter()
        .flat_map(|pi| {
            (1..pi.n()).filter(|&a| pi.monk_targets(a).unwrap().precondition()).map(move |a| (pi.clone(), a))
        })
        .collect()
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<i64> = (1..=n as i64).collect();
    v.shuffle(rng);
    Permutation::from_one_line(v).expect("shuffle of 1..n")
}

/// `count` permutations of `S_n` drawn uniformly with replacement.
pub fn sample_permutations(n: usize, count: usize, seed: u64) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_permutation(n, &mut rng)).collect()
}

/// `count` pairs `(π, α)` drawn uniformly, with replacement, from those satisfying the
/// Monk precondition (rejection sampling over uniform `π` and `α`).
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(Permutation, usize)> {
    assert!(n >= 2, "no valid pairs for n < 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pi = random_permutation(n, &mut rng);
        let alpha = rng.gen_range(1..n);
        if pi.monk_targets(alpha).unwrap().precondition() {
            out.push((pi, alpha));
        }
    }
    out
}

/// BPDs on both sides of Monk's rule for `(π, α)`.
pub struct MonkSides {
    pub pi: Permutation,
    pub alpha: usize,
    pub same: Vec<Bpd>,
    /// `(k, BPD(π t_{k,α}))` for each cover-down `k`.
    pub below: Vec<(usize, Vec<Bpd>)>,
    /// `(l, BPD(π t_{α,l}))` for each cover-up `l`.
    pub above: Vec<(usize, Vec<Bpd>)>,
}

impl MonkSides {
    pub fn new(pi: &Permutation, alpha: usize) -> Self {
        let t = pi.monk_targets(alpha).expect("α in range");
        let side = |a: usize, b: usize| enumerate_bpds(&pi.apply_t(a, b).expect("valid transposition"));
        Self {
            pi: pi.clone(),
            alpha,
            same: enumerate_bpds(pi),
            below: t.below.iter().map(|&k| (k, side(k, alpha))).collect(),
            above: t.above.iter().map(|&l| (l, side(alpha, l))).collect(),
        }
    }

    /// The forward domain, with the expected backward tag of each element.
    pub fn domain(&self) -> Vec<(OutcomeTag, &Bpd)> {
        let same = self.same.iter().map(|d| (OutcomeTag::Shrunk, d));
        let below = self.below.iter().flat_map(|(k, ds)| ds.iter().map(move |d| (OutcomeTag::CoverDown(*k), d)));
        same.chain(below).collect()
    }

    pub fn codomain(&self) -> Vec<(usize, &Bpd)> {
        self.above.iter().flat_map(|(l, ds)| ds.iter().map(move |d| (*l, d))).collect()
    }

    /// Both sides of `x_α 𝔖_π + Σ_k 𝔖_{π t_{k,α}} = Σ_l 𝔖_{π t_{α,l}}`, or of the double
    /// version with factor `x_α - y_{π(α)}`.
    pub fn identity(&self, double: bool) -> (Poly, Poly) {
        let n = self.pi.n();
        let s = schubert_from_bpds(n, &self.same, double);
        let mut lhs = if double {
            &s.scale_linear(Linear::X(self.alpha)) + &s.scale_linear(Linear::NegY(self.pi.at(self.alpha)))
        } else {
            s.scale_linear(Linear::X(self.alpha))
        };
        for (_, ds) in &self.below {
            lhs = &lhs + &schubert_from_bpds(n, ds, double);
        }
        let rhs = self.above.iter().fold(Poly::zero(n), |acc, (_, ds)| &acc + &schubert_from_bpds(n, ds, double));
        (lhs, rhs)
    }
}

fn inline(d: &Bpd) -> String {
    d.grid().rows().map(|r| r.iter().map(|t| t.to_char()).collect::<String>()).collect::<Vec<_>>().join("/")
}

fn inline_dec(d: &DecoratedBpd) -> String {
    let n = d.bpd().n();
    (1..=n)
        .map(|r| {
            (1..=n).map(|c| d.label((r, c)).map_or(d.bpd().tile((r, c)).to_char(), Label::to_char)).collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn inline_input(input: &DecoratedInput) -> String {
    match input {
        DecoratedInput::Labeled(l, d) => format!("({l}) {}", inline_dec(d)),
        DecoratedInput::Bare(d) => inline_dec(d),
    }
}

struct Sink<'a> {
    pi: &'a Permutation,
    alpha: usize,
    failures: Vec<Failure>,
}

impl Sink<'_> {
    fn fail(&mut self, kind: &'static str, lhs: impl Into<String>, rhs: impl Into<String>) {
        self.failures.push(Failure { pi: self.pi.clone(), alpha: self.alpha, kind, lhs: lhs.into(), rhs: rhs.into() });
    }
}

/// Step count and area checks on a single run: at most `n²` moves, and the moving
/// pipe's area strictly decreasing (forward) or increasing (backward) at every move.
pub fn run_bounds_hold(
    trace: &[TraceStep],
    pipe: usize,
    n: usize,
    start_area: usize,
    forward: bool,
) -> Result<(), String> {
    let moves = trace.iter().filter(|t| t.step.is_move()).count();
    if moves > n * n {
        return Err(format!("{moves} moves > {}", n * n));
    }
    let mut area = start_area;
    for t in trace.iter().filter(|t| t.step.is_move()) {
        let d = t.after.clone().validate().map_err(|e| format!("{} gave invalid grid: {e}", t.step))?;
        let next = d.area_under(pipe);
        let monotone = if forward { next < area } else { next > area };
        if !monotone {
            return Err(format!("{}: area {area} -> {next}", t.step));
        }
        area = next;
    }
    Ok(())
}

fn row_counts_expected(before: &Bpd, alpha: usize, from_pi: bool) -> Vec<usize> {
    let mut rows = before.row_blank_counts();
    if from_pi {
        rows[alpha - 1] += 1;
    }
    rows
}

/// Forward/backward round trips, injectivity, image, row bookkeeping and run bounds.
fn check_bijection(sides: &MonkSides, sink: &mut Sink) {
    let (pi, alpha) = (&sides.pi, sides.alpha);
    let n = pi.n();
    let domain = sides.domain();
    let mut images = BTreeSet::new();
    for (tag, d) in &domain {
        let fwd = match phi_forward(pi, alpha, d) {
            Ok(r) => r,
            Err(e) => return sink.fail("forward", inline(d), e.to_string()),
        };
        let start_area = start_area(pi, alpha, d);
        if let Err(e) = run_bounds_hold(&fwd.trace, fwd.pipe, n, start_area, true) {
            sink.fail("forward-bounds", inline(d), e);
        }
        let image = fwd.outcome.diagram.clone();
        let from_pi = *tag == OutcomeTag::Shrunk;
        let expected_rows = row_counts_expected(d, alpha, from_pi);
        if image.row_blank_counts() != expected_rows {
            sink.fail("row-blanks", format!("{:?}", image.row_blank_counts()), format!("{expected_rows:?}"));
        }
        match phi_backward(pi, alpha, &image) {
            Ok(back) => {
                if back.outcome.tag != *tag || &back.outcome.diagram != *d {
                    sink.fail(
                        "backward-forward",
                        format!("{:?} {}", back.outcome.tag, inline(&back.outcome.diagram)),
                        format!("{tag:?} {}", inline(d)),
                    );
                }
            }
            Err(e) => sink.fail("backward", inline(&image), e.to_string()),
        }
        images.insert(image);
    }
    if images.len() != domain.len() {
        sink.fail("injective", format!("{} images", images.len()), format!("{} inputs", domain.len()));
    }
    let codomain: BTreeSet<Bpd> = sides.codomain().into_iter().map(|(_, e)| e.clone()).collect();
    if images != codomain {
        sink.fail("image", format!("{} images", images.len()), format!("{} codomain elements", codomain.len()));
    }
    for (_, e) in sides.codomain() {
        let back = match phi_backward(pi, alpha, e) {
            Ok(r) => r,
            Err(e2) => return sink.fail("backward", inline(e), e2.to_string()),
        };
        let start = start_area_backward(pi, alpha, e);
        if let Err(msg) = run_bounds_hold(&back.trace, back.pipe, n, start, false) {
            sink.fail("backward-bounds", inline(e), msg);
        }
        match phi_forward(pi, alpha, &back.outcome.diagram) {
            Ok(f) if &f.outcome.diagram == e => {}
            Ok(f) => sink.fail("forward-backward", inline(&f.outcome.diagram), inline(e)),
            Err(err) => sink.fail("forward", inline(&back.outcome.diagram), err.to_string()),
        }
    }
}

/// Area under the moving pipe in the diagram a forward run starts from.
pub fn start_area(pi: &Permutation, alpha: usize, d: &Bpd) -> usize {
    match forward_source(pi, alpha, d) {
        Ok(ForwardSource::CoverDown(k)) => {
            let sigma = d.permutation();
            let almost = crate::monk::uncross(d, sigma.at(k), sigma.at(alpha)).expect("cross exists");
            almost.area_under(sigma.at(k))
        }
        _ => d.area_under(pi.at(alpha)),
    }
}

pub fn start_area_backward(pi: &Permutation, alpha: usize, e: &Bpd) -> usize {
    let l = crate::monk::backward_target(pi, alpha, e).expect("codomain element");
    let sigma = e.permutation();
    let almost = crate::monk::uncross(e, sigma.at(l), sigma.at(alpha)).expect("cross exists");
    almost.area_under(sigma.at(l))
}

/// Decorated bijection. Backward-after-forward is the identity on every input and
/// forward-after-backward on every output, which together give bijectivity without
/// storing the (exponentially many) decorated diagrams.
fn check_decorated(sides: &MonkSides, sink: &mut Sink) {
    let (pi, alpha) = (&sides.pi, sides.alpha);
    let labelled = sides.same.iter().flat_map(|d| {
        DecoratedBpd::labelings(d)
            .flat_map(|dec| [DecoratedInput::Labeled(Label::X, dec.clone()), DecoratedInput::Labeled(Label::NegY, dec)])
    });
    let bare =
        sides.below.iter().flat_map(|(_, ds)| ds.iter().flat_map(DecoratedBpd::labelings).map(DecoratedInput::Bare));
    let mut inputs = 0usize;
    for input in labelled.chain(bare) {
        inputs += 1;
        let out = match phi_tilde_forward(pi, alpha, &input) {
            Ok(r) => r,
            Err(e) => return sink.fail("decorated-forward", inline_input(&input), e.to_string()),
        };
        let start = start_area(pi, alpha, input.diagram().bpd());
        if let Err(e) = run_bounds_hold(&out.trace, out.pipe, pi.n(), start, true) {
            sink.fail("decorated-forward-bounds", inline_input(&input), e);
        }
        let (got, want) = (out.diagram.mon(), input.mon(pi, alpha));
        if got != want {
            sink.fail("decorated-monomial", got.to_poly().to_canonical_string(), want.to_poly().to_canonical_string());
        }
        match phi_tilde_backward(pi, alpha, &out.diagram) {
            Ok(back) if back.preimage().as_ref() == Some(&input) => {}
            Ok(back) => sink.fail(
                "decorated-backward-forward",
                back.preimage().map_or("none".into(), |p| inline_input(&p)),
                inline_input(&input),
            ),
            Err(e) => sink.fail("decorated-backward", inline_dec(&out.diagram), e.to_string()),
        }
    }
    let mut outputs = 0usize;
    for e in sides.codomain().into_iter().flat_map(|(_, e)| DecoratedBpd::labelings(e)) {
        outputs += 1;
        let back = match phi_tilde_backward(pi, alpha, &e) {
            Ok(r) => r,
            Err(err) => return sink.fail("decorated-backward", inline_dec(&e), err.to_string()),
        };
        let start = start_area_backward(pi, alpha, e.bpd());
        if let Err(msg) = run_bounds_hold(&back.trace, back.pipe, pi.n(), start, false) {
            sink.fail("decorated-backward-bounds", inline_dec(&e), msg);
        }
        let Some(pre) = back.preimage() else {
            return sink.fail("decorated-backward", inline_dec(&e), format!("{:?} without a preimage", back.tag));
        };
        match phi_tilde_forward(pi, alpha, &pre) {
            Ok(f) if f.diagram == e => {}
            Ok(f) => sink.fail("decorated-forward-backward", inline_dec(&f.diagram), inline_dec(&e)),
            Err(err) => sink.fail("decorated-forward", inline_input(&pre), err.to_string()),
        }
    }
    if inputs != outputs {
        sink.fail("decorated-cardinality", format!("{inputs} inputs"), format!("{outputs} outputs"));
    }
}

fn check_identity(sides: &MonkSides, double: bool, sink: &mut Sink) {
    let (lhs, rhs) = sides.identity(double);
    if lhs != rhs {
        let kind = if double { "monk-double" } else { "monk-single" };
        sink.fail(kind, lhs.to_canonical_string(), rhs.to_canonical_string());
    }
}

/// Failures of the single (or double) Monk identity at `(π, α)`, terms from BPD sums.
pub fn identity_failures(pi: &Permutation, alpha: usize, double: bool) -> Vec<Failure> {
    let mut sink = Sink { pi, alpha, failures: Vec::new() };
    check_identity(&MonkSides::new(pi, alpha), double, &mut sink);
    sink.failures
}

/// Failures of the bijection checks at `(π, α)`: round trips both ways, injectivity,
/// image equal to the codomain, row-blank bookkeeping, step and area bounds.
pub fn bijection_failures(pi: &Permutation, alpha: usize) -> Vec<Failure> {
    let mut sink = Sink { pi, alpha, failures: Vec::new() };
    check_bijection(&MonkSides::new(pi, alpha), &mut sink);
    sink.failures
}

/// Failures of the decorated bijection checks at `(π, α)`, monomials included.
pub fn decorated_failures(pi: &Permutation, alpha: usize) -> Vec<Failure> {
    let mut sink = Sink { pi, alpha, failures: Vec::new() };
    check_decorated(&MonkSides::new(pi, alpha), &mut sink);
    sink.failures
}

/// Check one `(π, α)`: the single identity and bijection, plus the double identity and
/// decorated bijection when `double` is set. Returns the number of flags checked.
pub fn check_case(pi: &Permutation, alpha: usize, double: bool) -> (usize, Vec<Failure>) {
    let sides = MonkSides::new(pi, alpha);
    let mut sink = Sink { pi, alpha, failures: Vec::new() };
    check_identity(&sides, false, &mut sink);
    check_bijection(&sides, &mut sink);
    if double {
        check_identity(&sides, true, &mut sink);
        check_decorated(&sides, &mut sink);
    }
    (if double { 2 } else { 1 }, sink.failures)
}

/// Run [`check_case`] over the given pairs on `jobs` worker threads.
pub fn verify_pairs(n: usize, pairs: &[(Permutation, usize)], double: bool, jobs: usize) -> VerifyReport {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    let results: Vec<(usize, Vec<Failure>)> =
        pool.install(|| pairs.par_iter().map(|(pi, a)| check_case(pi, *a, double)).collect());
    let mut report = VerifyReport { n, checked: 0, failures: Vec::new(), wall_time: Duration::ZERO };
    for (checked, failures) in results {
        report.checked += checked;
        report.failures.extend(failures);
    }
    report.wall_time = start.elapsed();
    report
}

pub fn verify(opts: &VerifyOptions) -> VerifyReport {
    let pairs = match opts.sample {
        Some(count) => pairs_for(&sample_permutations(opts.n, count, opts.seed)),
        None => valid_pairs(opts.n),
    };
    verify_pairs(opts.n, &pairs, opts.double, opts.jobs)
}

/// Classification of a `(π, α)` as a transition and/or cotransition case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Specialization {
    pub transition: bool,
    pub cotransition: bool,
}

/// Outcome of checking the special cases of one `(π, α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationCheck {
    pub flags: Specialization,
    /// Forward runs on `BPD(π)` in a transition case that were not a single droop
    /// followed by a bump-to-cross.
    pub long_transition_runs: Vec<String>,
    /// Backward runs in a cotransition case that returned a cover-down.
    pub cover_down_in_cotransition: Vec<String>,
}

pub fn check_specialization(pi: &Permutation, alpha: usize) -> SpecializationCheck {
    let t = pi.monk_targets(alpha).expect("α in range");
    let flags = Specialization { transition: t.is_transition(), cotransition: t.is_cotransition() };
    let sides = MonkSides::new(pi, alpha);
    let mut long_transition_runs = Vec::new();
    let mut cover_down_in_cotransition = Vec::new();
    if flags.transition {
        for d in &sides.same {
            let run = phi_forward(pi, alpha, d).expect("forward run");
            let single = run.trace.len() == 2
                && matches!(run.trace[0].step, Step::Droop { .. })
                && matches!(run.trace[1].step, Step::FinalizeCross(_));
            if !single {
                let steps: Vec<String> = run.trace.iter().map(|s| s.step.to_string()).collect();
                long_transition_runs.push(format!("{} [{}]", inline(d), steps.join("; ")));
            }
        }
    }
    if flags.cotransition {
        for (_, e) in sides.codomain() {
            let run = phi_backward(pi, alpha, e).expect("backward run");
            if let OutcomeTag::CoverDown(k) = run.outcome.tag {
                cover_down_in_cotransition.push(format!("{} -> cover-down {k}", inline(e)));
            }
        }
    }
    SpecializationCheck { flags, long_transition_runs, cover_down_in_cotransition }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_verifies() {
        let report = verify(&VerifyOptions { double: true, ..VerifyOptions::new(3) });
        assert!(report.ok(), "{report}");
        assert_eq!(report.checked, 2 * valid_pairs(3).len());
    }

    #[test]
    fn report_independent_of_jobs() {
        let a = verify(&VerifyOptions { jobs: 1, ..VerifyOptions::new(4) });
        let b = verify(&VerifyOptions { jobs: 4, ..VerifyOptions::new(4) });
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_pairs(5, 50, 7), sample_pairs(5, 50, 7));
        assert_ne!(sample_pairs(5, 50, 7), sample_pairs(5, 50, 8));
        for (pi, a) in sample_pairs(5, 50, 7) {
            assert!(pi.monk_targets(a).unwrap().precondition());
        }
    }

    #[test]
    fn valid_pairs_s2() {
        assert_eq!(valid_pairs(2), vec![("1 2".parse().unwrap(), 1)]);
    }

    #[test]
    fn identity_sides_s2() {
        let sides = MonkSides::new(&"1 2".parse().unwrap(), 1);
        let (lhs, rhs) = sides.identity(true);
        assert_eq!(lhs.to_canonical_string(), "x1 - y1");
        assert_eq!(lhs, rhs);
    }
}
