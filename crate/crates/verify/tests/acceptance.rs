//! Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
//! any fails.

use std::time::Instant;

use dinv_verify::CRITERIA;

fn main() {
    let mut failed = 0;
    for (name, check) in CRITERIA {
        let t = Instant::now();
        let r = check();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    println!("{} passed, {failed} failed", CRITERIA.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
