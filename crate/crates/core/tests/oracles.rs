//! Cross-checks between independent routes to the same numbers.

use dinv_core::exactmath::{eval_neg_cont_frac, form_data, neg_cont_frac, IntMatrix};
use dinv_core::knots::{enumerate_lspace_alex, torus_alex, AlexanderPoly};
use dinv_core::lattice::{d_bruteforce, d_plumbing, nice_box_size};
use dinv_core::plumbing::{to_plumbing, PlumbingGraph};
use dinv_core::seifert::reverse_orientation;
use dinv_core::surgery::{d_surgery, moser_classify, MoserResult, Slope};
use dinv_core::Rational;
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Symmetric tridiagonal-plus-noise forms, kept when negative definite.
fn neg_def_form() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-7i64..=-2, n),
                prop::collection::vec(-1i64..=1, n * n),
            )
        })
        .prop_filter_map("negative definite", |(n, diag, off)| {
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                rows[i][i] = diag[i] - 2;
                for j in 0..i {
                    rows[i][j] = off[i * n + j];
                    rows[j][i] = off[i * n + j];
                }
            }
            let m = IntMatrix::from_rows(&rows).ok()?;
            form_data(&m).ok()?.is_negative_definite().then_some(m)
        })
}

proptest! {
    #[test]
    fn inverse_times_form_is_identity(m in neg_def_form()) {
        let f = form_data(&m).unwrap();
        let inv = f.inverse();
        let n = m.dim();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    acc += &(inv[i][k].clone() * Rational::from_int(m.get(k, j)));
                }
                prop_assert_eq!(acc, Rational::from_int((i == j) as i64));
            }
        }
    }

    #[test]
    fn continued_fraction_round_trip(p in 2i64..500, q in 1i64..500) {
        prop_assume!(gcd(p, q) == 1 && q < p);
        let x = Rational::frac(-p, q);
        let cf = neg_cont_frac(&x).unwrap();
        prop_assert!(cf.iter().all(|&c| c <= -2));
        prop_assert_eq!(eval_neg_cont_frac(&cf).unwrap(), x);
    }

    /// Surgery on the unknot is a lens space whose linear plumbing is small
    /// enough to maximize over the whole box.
    #[test]
    fn unknot_surgery_matches_linear_plumbing(p in 2i64..40, q in 1i64..40) {
        prop_assume!(gcd(p, q) == 1 && q < p);
        let surgery = d_surgery(Slope::new(p, q).unwrap(), &AlexanderPoly::trivial()).unwrap().multiset();
        let chain = PlumbingGraph::chain(neg_cont_frac(&Rational::frac(-p, q)).unwrap()).unwrap();
        prop_assume!(nice_box_size(&chain) <= 2_000_000);
        let f = form_data(&chain.intersection_form()).unwrap();
        let mut lens = d_bruteforce(&chain, &f, false, 2_000_000).unwrap().multiset();
        lens = lens.into_iter().map(|x| -x).collect();
        lens.sort();
        prop_assert_eq!(surgery, lens);
    }
}

#[test]
fn torus_surgeries_match_their_seifert_plumbings() {
    let knots = [(3, 2), (5, 2), (7, 2), (4, 3), (5, 3)];
    let mut checked = 0;
    for (r, s) in knots {
        let poly = torus_alex(r, s).unwrap();
        let bound = 2 * poly.genus() as i64 - 1;
        for q in 1..=5i64 {
            for p in (bound * q).max(1)..=(r * s * q + 12) {
                if gcd(p, q) != 1 {
                    continue;
                }
                let slope = Slope::new(p, q).unwrap();
                let MoserResult::Seifert(o) = moser_classify(r, s, slope).unwrap() else {
                    continue;
                };
                let data = if o.reversed {
                    reverse_orientation(&o.data).unwrap()
                } else {
                    o.data.clone()
                };
                let Ok(plumbed) = to_plumbing(&data) else {
                    continue;
                };
                if plumbed.graph.len() > 14 {
                    continue;
                }
                let lattice = d_plumbing(&plumbed.graph, &plumbed.form, plumbed.flipped)
                    .unwrap()
                    .multiset();
                let surgery = d_surgery(slope, &poly).unwrap().multiset();
                assert_eq!(surgery, lattice, "S^3_{slope}(T({r},{s})) = {data}");
                checked += 1;
            }
        }
    }
    assert!(checked > 200, "only {checked} surgeries compared");
}

#[test]
fn enumeration_grows_by_powers_of_two() {
    let mut prev = 0;
    for g in 1..=10 {
        let n = enumerate_lspace_alex(g).len();
        assert_eq!(n - prev, 1 << (g - 1), "genus {g}");
        prev = n;
    }
}
