//! Properties of the Monk bijection and its decorated version over small S_n.

use bpd::decorated::{phi_tilde_backward, phi_tilde_forward, DecoratedBpd, DecoratedInput, Label};
use bpd::grid::enumerate_bpds;
use bpd::monk::{min_droop, min_undroop, phi_backward, phi_forward, OutcomeTag, Step};
use bpd::verify::{valid_pairs, MonkSides};
use bpd::{Diagram, Permutation, Tile};
use proptest::prelude::*;

#[test]
fn domain_and_codomain_have_equal_size() {
    for n in 2..=5 {
        for (pi, a) in valid_pairs(n) {
            let sides = MonkSides::new(&pi, a);
            assert_eq!(sides.domain().len(), sides.codomain().len(), "{pi:?} α={a}");
        }
    }
}

#[test]
fn some_runs_need_cross_bump_swaps() {
    let mut swaps = 0;
    let mut longest = 0;
    for (pi, a) in valid_pairs(5) {
        for (_, d) in MonkSides::new(&pi, a).domain() {
            let run = phi_forward(&pi, a, d).unwrap();
            swaps += run.trace.iter().filter(|t| matches!(t.step, Step::Swap { .. })).count();
            longest = longest.max(run.moves());
        }
    }
    assert!(swaps > 0);
    assert!((3..=25).contains(&longest));
}

#[test]
fn every_intermediate_diagram_is_valid_and_keeps_the_readout() {
    for (pi, a) in valid_pairs(4) {
        for (_, d) in MonkSides::new(&pi, a).domain() {
            let run = phi_forward(&pi, a, d).unwrap();
            let start = d.permutation().clone();
            for t in run.trace.iter().filter(|t| t.step.is_move()) {
                let dd = t.after.clone().validate().unwrap();
                let readout = dd.permutation();
                assert!(readout == &pi || readout == &start);
            }
        }
    }
}

#[test]
fn backward_output_matches_row_counts() {
    for (pi, a) in valid_pairs(4) {
        for (l, e) in MonkSides::new(&pi, a).codomain() {
            let run = phi_backward(&pi, a, e).unwrap();
            let mut rows = run.outcome.diagram.row_blank_counts();
            if run.outcome.tag == OutcomeTag::Shrunk {
                rows[a - 1] += 1;
            }
            assert_eq!(rows, e.row_blank_counts(), "{pi:?} α={a} l={l}");
        }
    }
}

#[test]
fn labels_move_along_rows_or_columns() {
    let mut moved = [0, 0];
    for (pi, a) in valid_pairs(4) {
        let sides = MonkSides::new(&pi, a);
        for d in &sides.same {
            for dec in DecoratedBpd::all_labelings(d) {
                for label in [Label::X, Label::NegY] {
                    let input = DecoratedInput::Labeled(label, dec.clone());
                    let run = phi_tilde_forward(&pi, a, &input).unwrap();
                    for m in &run.label_moves {
                        match m.label {
                            Label::X => assert_eq!(m.consumed.0, m.continued_at.0),
                            Label::NegY => assert_eq!(m.consumed.1, m.continued_at.1),
                        }
                        moved[m.label as usize] += 1;
                    }
                    let back = phi_tilde_backward(&pi, a, &run.diagram).unwrap();
                    for m in &back.label_moves {
                        match m.label {
                            Label::X => assert_eq!(m.consumed.0, m.continued_at.0),
                            Label::NegY => assert_eq!(m.consumed.1, m.continued_at.1),
                        }
                    }
                }
            }
        }
    }
    assert!(moved[0] > 0 && moved[1] > 0);
}

#[test]
fn negy_insertion_starts_in_the_pipe_column() {
    let pi: Permutation = "1 3 2".parse().unwrap();
    for d in enumerate_bpds(&pi) {
        let dec = DecoratedBpd::uniform(d.clone(), Label::NegY);
        let run = phi_tilde_forward(&pi, 1, &DecoratedInput::Labeled(Label::NegY, dec)).unwrap();
        let Step::Droop { from, .. } = run.trace[0].step else { panic!() };
        assert_eq!(from, d.r_turn_on_col(1, 1).unwrap());
    }
}

fn bpd_of(n: usize) -> impl Strategy<Value = (Permutation, usize, usize)> {
    Just((1..=n as i64).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_flat_map(move |v| {
            let pi = Permutation::from_one_line(v).unwrap();
            (Just(pi), 1..n, any::<prop::sample::Index>())
        })
        .prop_map(|(pi, a, idx)| {
            let count = enumerate_bpds(&pi).len();
            let i = idx.index(count);
            (pi, a, i)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_then_backward_is_identity((pi, a, i) in bpd_of(6)) {
        prop_assume!(pi.monk_targets(a).unwrap().precondition());
        let d = enumerate_bpds(&pi).swap_remove(i);
        let fwd = phi_forward(&pi, a, &d).unwrap();
        prop_assert!(fwd.moves() <= 36);
        let back = phi_backward(&pi, a, &fwd.outcome.diagram).unwrap();
        prop_assert_eq!(back.outcome.tag, OutcomeTag::Shrunk);
        prop_assert_eq!(back.outcome.diagram, d);
    }

    #[test]
    fn droop_and_undroop_are_inverse((pi, _a, i) in bpd_of(6)) {
        let d = Diagram::Bpd(enumerate_bpds(&pi).swap_remove(i));
        for pos in d.grid().positions().filter(|&p| d.tile(p) == Tile::RTile) {
            if let Ok((out, landing)) = min_droop(&d, pos) {
                prop_assert_eq!(min_undroop(&out, landing).unwrap(), (d.clone(), pos));
            }
        }
    }
}
