#![no_main]

use legrid_core::crossing::{parse_event_script, run_trace, FramedPairState};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(events) = parse_event_script(s) {
        let s0 = FramedPairState::new(1, -2, 3, 0, -1, 4);
        if let Ok(trace) = run_trace(s0, &events) {
            assert!(trace.iter().all(|t| t.triple() == s0.triple()));
        }
    }
});
