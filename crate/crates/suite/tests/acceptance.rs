//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p bpd-suite --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use bpd::grid::enumerate_all;
use bpd::monk::{phi_backward, phi_forward, OutcomeTag};
use bpd::schubert::{schubert_bpd, schubert_dd};
use bpd::text::{parse_bpd, render};
use bpd::verify::{
    bijection_failures, check_specialization, decorated_failures, identity_failures, sample_pairs, valid_pairs, Failure,
};
use bpd::{Permutation, Tile};

const SAMPLE_SEED: u64 = 20240229;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn summarize(cases: usize, failures: &[Failure]) -> Outcome {
    let detail = match failures.first() {
        None => format!("{cases} cases, 0 failures"),
        Some(f) => format!("{cases} cases, {} failures, first: {f}", failures.len()),
    };
    Outcome { ok: failures.is_empty(), detail }
}

fn first(items: &[String]) -> String {
    items.first().map_or(String::new(), |p| format!(", first: {p}"))
}

fn all_pairs(max_n: usize) -> Vec<(Permutation, usize)> {
    (2..=max_n).flat_map(valid_pairs).collect()
}

fn oracle_equality() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=5 {
        for pi in Permutation::all(n) {
            for double in [false, true] {
                checked += 1;
                match schubert_dd(&pi, double) {
                    Ok(dd) if dd == schubert_bpd(&pi, double) => {}
                    Ok(_) => bad.push(format!("{pi} double={double}")),
                    Err(e) => bad.push(format!("{pi} double={double}: {e}")),
                }
            }
        }
    }
    Outcome { ok: bad.is_empty(), detail: format!("{checked} polynomials, {} mismatches{}", bad.len(), first(&bad)) }
}

fn identity(double: bool) -> Outcome {
    let pairs = all_pairs(5);
    let failures: Vec<Failure> = pairs.iter().flat_map(|(pi, a)| identity_failures(pi, *a, double)).collect();
    summarize(pairs.len(), &failures)
}

fn bijectivity() -> Outcome {
    let mut pairs = valid_pairs(4);
    let exhaustive = pairs.len();
    pairs.extend(sample_pairs(5, 500, SAMPLE_SEED));
    let failures: Vec<Failure> =
        pairs.iter().flat_map(|(pi, a)| bijection_failures(pi, *a)).filter(|f| !f.kind.ends_with("bounds")).collect();
    let mut out = summarize(pairs.len(), &failures);
    out.detail = format!("S_4 exhaustive ({exhaustive}) + 500 sampled S_5 pairs: {}", out.detail);
    out
}

fn decorated() -> Outcome {
    let pairs = valid_pairs(4);
    let failures: Vec<Failure> =
        pairs.iter().flat_map(|(pi, a)| decorated_failures(pi, *a)).filter(|f| !f.kind.ends_with("bounds")).collect();
    summarize(pairs.len(), &failures)
}

fn termination() -> Outcome {
    let pairs = all_pairs(5);
    let mut failures: Vec<Failure> =
        pairs.iter().flat_map(|(pi, a)| bijection_failures(pi, *a)).filter(|f| f.kind.ends_with("bounds")).collect();
    failures.extend(
        valid_pairs(4).iter().flat_map(|(pi, a)| decorated_failures(pi, *a)).filter(|f| f.kind.ends_with("bounds")),
    );
    let mut out = summarize(pairs.len(), &failures);
    out.detail = format!("forward/backward runs for n <= 5, decorated for n = 4: {}", out.detail);
    out
}

fn structural() -> Outcome {
    let mut problems = Vec::new();
    let mut diagrams = 0;
    for n in 1..=5 {
        for (pi, ds) in enumerate_all(n) {
            for d in ds {
                diagrams += 1;
                let (blanks, crosses) = (d.count_tile(Tile::Blank), d.count_tile(Tile::Cross));
                if blanks != pi.length() || crosses != pi.length() {
                    problems.push(format!("{pi}: {blanks} blanks, {crosses} crosses"));
                }
            }
        }
    }
    for n in 1..=3 {
        if common::brute_force_all(n) != common::enumerated(n) {
            problems.push(format!("n={n}: enumeration differs from the 6^(n^2) filter"));
        }
    }
    if common::edge_matched_all(4) != common::enumerated(4) {
        problems.push("n=4: enumeration differs from the edge-matched filter".into());
    }
    Outcome {
        ok: problems.is_empty(),
        detail: format!("{diagrams} diagrams, brute force n <= 4, {} problems{}", problems.len(), first(&problems)),
    }
}

fn worked_example() -> Outcome {
    let id_text = "2\nr-\n|r\n";
    let s21_text = "2\n.r\nr+\n";
    let pi: Permutation = "1 2".parse().unwrap();
    let run = || -> Result<bool, String> {
        let id = parse_bpd(id_text).map_err(|e| e.to_string())?;
        let fwd = phi_forward(&pi, 1, &id).map_err(|e| e.to_string())?;
        let image = render(fwd.outcome.diagram.grid());
        let back = phi_backward(&pi, 1, &fwd.outcome.diagram).map_err(|e| e.to_string())?;
        Ok(image == s21_text
            && fwd.outcome.tag == OutcomeTag::CoverUp(2)
            && back.outcome.tag == OutcomeTag::Shrunk
            && render(back.outcome.diagram.grid()) == id_text)
    };
    match run() {
        Ok(ok) => Outcome { ok, detail: "identity -> 21 -> shrunk identity, byte-exact".into() },
        Err(e) => Outcome { ok: false, detail: e },
    }
}

/// Covers counted by the length criterion, independently of the cover test in `perm`.
fn length_covers(pi: &Permutation, alpha: usize) -> (usize, usize) {
    let up = |a: usize, b: usize| pi.apply_t(a, b).unwrap().length() == pi.length() + 1;
    let below = (1..alpha).filter(|&k| up(k, alpha)).count();
    let above = (alpha + 1..=pi.n()).filter(|&l| up(alpha, l)).count();
    (below, above)
}

fn specializations() -> Outcome {
    let mut transitions = 0;
    let mut cotransitions = 0;
    let mut swaps = 0;
    let mut problems = Vec::new();
    for (pi, a) in all_pairs(4) {
        let (below, above) = length_covers(&pi, a);
        let check = check_specialization(&pi, a);
        if check.flags.transition != (above == 1) || check.flags.cotransition != (below == 0) {
            problems.push(format!("pi={pi} alpha={a}: misclassified"));
        }
        transitions += check.flags.transition as usize;
        cotransitions += check.flags.cotransition as usize;
        swaps += check.long_transition_runs.iter().filter(|r| r.contains("swap")).count();
        for run in &check.long_transition_runs {
            problems.push(format!("pi={pi} alpha={a}: transition run is not a single droop: {run}"));
        }
        for run in &check.cover_down_in_cotransition {
            problems.push(format!("pi={pi} alpha={a}: cotransition run {run}"));
        }
    }
    Outcome {
        ok: problems.is_empty(),
        detail: format!(
            "{transitions} transition and {cotransitions} cotransition cases, transition runs with a swap: {swaps}, \
             problems: {}{}",
            problems.len(),
            problems.iter().map(|p| format!("; {p}")).collect::<String>()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle equality, n <= 5, single and double", oracle_equality),
        ("single Monk identity, n <= 5", || identity(false)),
        ("double Monk identity, n <= 5", || identity(true)),
        ("bijectivity and row-blank bookkeeping", bijectivity),
        ("decorated bijection and monomials, n = 4", decorated),
        ("termination bounds and area monotonicity", termination),
        ("structural invariants and brute-force enumeration", structural),
        ("S_2 worked example", worked_example),
        ("transition / cotransition specializations, n <= 4", specializations),
    ];
    let mut all_ok = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        all_ok &= out.ok;
        let status = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({}; {:.1}s)", i + 1, out.detail, start.elapsed().as_secs_f64());
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
