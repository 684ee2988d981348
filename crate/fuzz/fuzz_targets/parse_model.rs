#![no_main]

use legrid_core::ledger::{ambiguity, parse_model, query};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_model(s) {
        assert_eq!(parse_model(&m.to_json()).as_ref(), Ok(&m));
        let _ = ambiguity(&m);
        let zero = m.surface("F", vec![0; m.rank()]).unwrap();
        let one = m.surface("F", vec![1; m.rank()]).unwrap();
        // overflow is reported, never a panic
        let _ = query(&m, &one, &zero);
    }
});
