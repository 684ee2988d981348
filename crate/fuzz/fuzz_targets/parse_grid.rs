#![no_main]

use legrid_core::invariants::classical_all;
use legrid_core::parse_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_grid(s) {
        assert_eq!(parse_grid(&g.to_text()).as_ref(), Ok(&g));
        assert_eq!(parse_grid(&g.to_json()).as_ref(), Ok(&g));
        // keep the invariant computation cheap on huge inputs
        if g.size() <= 64 {
            classical_all(&g).unwrap();
        }
    }
});
