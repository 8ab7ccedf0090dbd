#![no_main]

use dinv_core::exactmath::form_data;
use dinv_core::lattice::d_plumbing;
use dinv_core::plumbing::PlumbingGraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = PlumbingGraph::from_json(text) else { return };
    assert_eq!(PlumbingGraph::from_json(&g.to_json()).unwrap(), g);
    // Keep the lattice walk cheap: small graphs with modest weights only.
    if g.len() <= 8 && g.weights().iter().all(|w| w.abs() <= 12) {
        if let Ok(f) = form_data(&g.intersection_form()) {
            let _ = d_plumbing(&g, &f, false);
        }
    }
});
