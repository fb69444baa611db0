#![no_main]

use libfuzzer_sys::fuzz_target;
use patchsift::learn::Learner;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(model) = Learner::from_text(text) {
        let out = model.to_text();
        assert_eq!(Learner::from_text(&out).unwrap().to_text(), out);
        let _ = model.predict_proba(&vec![0.5; model.dim()]);
    }
});
