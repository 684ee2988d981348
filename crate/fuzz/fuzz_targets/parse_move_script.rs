#![no_main]

use legrid_core::moves::{apply_script, parse_move_script};
use legrid_core::{GridDiagram, OrientationFlag};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(script) = parse_move_script(s) else {
        return;
    };
    if script.len() > 64 {
        return;
    }
    let g = GridDiagram::new(4, vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
    // moves may legitimately fail; they must not panic
    let _ = apply_script(&g, &script, None, OrientationFlag::default());
});
