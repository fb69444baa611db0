#![no_main]

use libfuzzer_sys::fuzz_target;
use patchsift::patchio::{dedup_key, extract_fragments, parse_diff};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = dedup_key(text);
    if let Ok(hunks) = parse_diff(text) {
        // serialized hunks must parse back to the same hunks
        let mut again = String::new();
        for h in &hunks {
            again.push_str(&format!("--- a/{0}\n+++ b/{0}\n", h.file));
            again.push_str(&h.header());
            again.push('\n');
            for l in h.raw_lines() {
                again.push_str(&l);
                again.push('\n');
            }
        }
        assert_eq!(parse_diff(&again).unwrap(), hunks);
        let _ = extract_fragments(&hunks);
    }
});
