#![no_main]

use libfuzzer_sys::fuzz_target;
use patchsift::patchio::{parse_manifest, write_manifest};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // no base dir, so diff_path records fail instead of touching the disk
    if let Ok(patches) = parse_manifest(text, None) {
        assert_eq!(parse_manifest(&write_manifest(&patches), None).unwrap(), patches);
    }
});
