//! Replays the checked-in fuzz corpus through the same round trips the fuzz
//! targets assert, so the seeds stay meaningful on a stable toolchain.

use std::path::PathBuf;

use dinv_cli::cache::{decode, encode};
use dinv_core::knots::AlexanderPoly;
use dinv_core::plumbing::PlumbingGraph;
use dinv_core::seifert::parse_seifert;
use dinv_core::surgery::Slope;
use dinv_core::Rational;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn seifert_seeds() {
    for (name, b) in seeds("seifert_parse") {
        let s = parse_seifert(text(&b)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_seifert(&s.to_string()).unwrap(), s, "{name}");
    }
}

#[test]
fn alexander_seeds() {
    for (name, b) in seeds("alexander_parse") {
        let t = text(&b);
        let p = t
            .parse::<AlexanderPoly>()
            .or_else(|_| AlexanderPoly::from_table_name(t));
        let p = p.unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(p.to_string().parse::<AlexanderPoly>().unwrap(), p, "{name}");
    }
}

#[test]
fn rational_and_slope_seeds() {
    for (name, b) in seeds("rational_parse") {
        let r: Rational = text(&b).parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(r.to_string().parse::<Rational>().unwrap(), r, "{name}");
    }
    for (name, b) in seeds("slope_parse") {
        if let Ok(s) = text(&b).parse::<Slope>() {
            assert_eq!(s.to_string().parse::<Slope>().unwrap(), s, "{name}");
        }
    }
}

#[test]
fn graph_seeds() {
    for (name, b) in seeds("graph_json") {
        let g = PlumbingGraph::from_json(text(&b)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(PlumbingGraph::from_json(&g.to_json()).unwrap(), g, "{name}");
    }
}

#[test]
fn cache_seeds() {
    let mut decoded = 0;
    for (_, b) in seeds("cache_decode") {
        if let Ok((key, payload)) = decode(&b) {
            assert_eq!(decode(&encode(&key, &payload)), Ok((key, payload)));
            decoded += 1;
        }
    }
    assert!(decoded > 0);
}
