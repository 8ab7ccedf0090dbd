//! Seifert data text must parse or fail cleanly, and whatever parses must
//! survive a print/parse round trip and normalization.
#![no_main]

use dinv_core::seifert::{normalize, parse_seifert};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(s) = parse_seifert(text) else { return };
    let again = parse_seifert(&s.to_string()).expect("printed data reparses");
    assert_eq!(s, again);
    let _ = normalize(&s);
});
