//! Dimension sweeps of the invariant-map classifier.

use projquant::search::{sl_invariant_space, vect_invariant_space, Generator};
use projquant::verify::{sl_predicted as sl_expected, vect_predicted as vect_expected};

#[test]
fn sl_sweep() {
    let t = std::time::Instant::now();
    for n in [2usize, 3] {
        for p in 0..=n {
            for q in 0..=n {
                for k in 0..=3 {
                    for l in 0..=3 {
                        let s = sl_invariant_space(n, k, p, l, q).unwrap();
                        assert_eq!(s.dimension, sl_expected(n, k, p, l, q), "n={n} k={k} p={p} l={l} q={q}");
                        assert!(s.named_span, "n={n} k={k} p={p} l={l} q={q}");
                    }
                }
            }
        }
    }
    eprintln!("sl sweep {:?}", t.elapsed());
}

#[test]
fn vect_sweep() {
    let t = std::time::Instant::now();
    for n in [2usize, 3] {
        for p in 0..=n {
            for q in (p as usize).saturating_sub(1)..=(p + 1).min(n) {
                for k in 0..=3 {
                    let t0 = std::time::Instant::now();
                    let s = vect_invariant_space(n, k, p, q).unwrap();
                    eprintln!("n={n} k={k} p={p} q={q}: dim {} named {:?} span {} ({:?})", s.dimension, s.generator_names(), s.named_span, t0.elapsed());
                    assert_eq!(s.dimension, vect_expected(n, k, p, q), "n={n} k={k} p={p} q={q}");
                    assert!(s.named_span);
                    assert!(s.generators.iter().all(|g| matches!(g, Generator::Named { verified: true, .. })));
                }
            }
        }
    }
    eprintln!("vect sweep {:?}", t.elapsed());
}
