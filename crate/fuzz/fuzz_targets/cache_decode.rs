#![no_main]

use dinv_cli::cache::{decode, encode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok((key, payload)) = decode(data) {
        assert_eq!(decode(&encode(&key, &payload)), Ok((key, payload)));
    }
});
