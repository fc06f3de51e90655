#![no_main]

use bpd::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pi) = text.parse::<Permutation>() {
        let again: Permutation = pi.to_string().parse().expect("display output parses");
        assert_eq!(again, pi);
        assert_eq!(pi.inverse().inverse(), pi);
    }
});
