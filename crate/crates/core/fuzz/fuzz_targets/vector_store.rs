#![no_main]

use libfuzzer_sys::fuzz_target;
use patchsift::lexemb::VectorStore;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(store) = VectorStore::parse(text) {
        let out = store.to_text();
        assert_eq!(VectorStore::parse(&out).unwrap().to_text(), out);
    }
});
