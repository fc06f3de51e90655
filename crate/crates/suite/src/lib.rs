//! Acceptance checks for `bpd` live in `tests/acceptance.rs`; run them with
//! `cargo test -p bpd-suite --test acceptance`.
