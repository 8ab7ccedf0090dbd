#![no_main]

use dinv_core::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = text.parse::<Rational>() {
        assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
});
