//! Slopes feed straight into the surgery formula, so parsed slopes are
//! also pushed through it with the trefoil polynomial.
#![no_main]

use dinv_core::knots::AlexanderPoly;
use dinv_core::surgery::{d_surgery, Slope};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(s) = text.parse::<Slope>() else { return };
    assert_eq!(s.to_string().parse::<Slope>().unwrap(), s);
    if s.p <= 2000 {
        let _ = d_surgery(s, &AlexanderPoly::from_table_name("D1").unwrap());
    }
});
