#![no_main]

use bpd::text::{parse, render_parsed};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(parsed) = parse(text) {
        // accepted input is canonical, so rendering gives it back
        assert_eq!(render_parsed(&parsed), text);
    }
});
