#![no_main]

use dinv_core::knots::AlexanderPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<AlexanderPoly>() {
        assert_eq!(p.to_string().parse::<AlexanderPoly>().unwrap(), p);
    }
    let _ = AlexanderPoly::from_table_name(text);
});
