#![no_main]

use libfuzzer_sys::fuzz_target;
use patchsift::cli::files::{parse_fragments, write_fragments};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_fragments(text) {
        let out = write_fragments(&rows);
        assert_eq!(write_fragments(&parse_fragments(&out).unwrap()), out);
    }
});
