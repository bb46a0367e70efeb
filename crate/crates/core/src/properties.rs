//! Invariants checked on random diagrams.

use crate::canon::certificate;
use crate::solver::{discrete_check, verify_solution, Interval, Poly};
use crate::stats::stats;
use crate::states01::find_01_state;
use crate::{
    contains_subdiagram, find_embedding, generate_all, girth, has_01_state, is_isomorphic, parse_mmp, serialize, Diagram,
    GenSpec,
};
use proptest::prelude::*;

/// Grows an MMP diagram from `picks`: each pick is a reuse mask over the
/// current vertices; picks that would break condition 3 or connectivity are
/// skipped.
fn grow(n: usize, max_vertices: usize, picks: &[u64]) -> Diagram {
    let mut d = Diagram::raw(0, vec![]).unwrap();
    for &mask in picks {
        let a = d.n_vertices();
        let reused: Vec<usize> = (0..a).filter(|&v| mask >> v & 1 == 1).take(n).collect();
        if (a > 0 && reused.is_empty()) || a + n - reused.len() > max_vertices {
            continue;
        }
        if d.edges().iter().any(|e| e.iter().filter(|v| reused.contains(v)).count() > n - 2) {
            continue;
        }
        let edge = reused.iter().copied().chain(a..a + n - reused.len()).collect();
        if let Ok(c) = d.with_edge(edge) {
            d = c;
        }
    }
    d
}

fn diagram() -> impl Strategy<Value = Diagram> {
    (3usize..=4, prop::collection::vec(any::<u64>(), 1..9)).prop_map(|(n, picks)| grow(n, 14, &picks))
}

fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut s = seed | 1;
    for i in (1..items.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        items.swap(i, (s % (i as u64 + 1)) as usize);
    }
}

fn brute_force_has_state(d: &Diagram) -> bool {
    (0u32..1 << d.n_vertices())
        .any(|mask| d.edges().iter().all(|e| e.iter().filter(|&&v| mask >> v & 1 == 1).count() == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_round_trips(d in diagram()) {
        let text = serialize(&d).unwrap();
        let back = parse_mmp(&text).unwrap();
        prop_assert_eq!(serialize(&back).unwrap(), text);
        prop_assert!(is_isomorphic(&back, &d));
    }

    #[test]
    fn certificate_ignores_labels_and_edge_order(d in diagram(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..d.n_vertices()).collect();
        shuffle(&mut perm, seed);
        let mut order: Vec<usize> = (0..d.n_edges()).collect();
        shuffle(&mut order, seed.rotate_left(17));
        let moved = d.relabeled(&perm).with_edge_order(&order);
        prop_assert_eq!(certificate(&moved), certificate(&d));
        prop_assert_eq!(girth(&moved), girth(&d));
        prop_assert_eq!(stats(&moved), stats(&d));
    }

    #[test]
    fn removing_an_edge_changes_the_class(d in diagram(), i in any::<prop::sample::Index>()) {
        let smaller = d.without_edge(i.index(d.n_edges()));
        prop_assert!(!is_isomorphic(&smaller, &d));
        prop_assert!(contains_subdiagram(&d, &smaller));
    }

    #[test]
    fn embeddings_map_edges_onto_edges(d in diagram(), i in any::<prop::sample::Index>()) {
        let sub = d.without_edge(i.index(d.n_edges()));
        let map = find_embedding(&d, &sub).unwrap();
        for e in sub.edges() {
            let mut image: Vec<usize> = e.iter().map(|&v| map[v]).collect();
            image.sort_unstable();
            let hit = d.edges().iter().any(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f == image
            });
            prop_assert!(hit);
        }
    }

    #[test]
    fn states_agree_with_brute_force(d in diagram()) {
        prop_assert_eq!(has_01_state(&d), brute_force_has_state(&d));
        if let Some(s) = find_01_state(&d) {
            prop_assert!(s.is_state_of(&d));
        }
    }

    #[test]
    fn states_are_monotone(d in diagram(), i in any::<prop::sample::Index>()) {
        // dropping an edge can only add states
        if !has_01_state(&d.without_edge(i.index(d.n_edges()))) {
            prop_assert!(!has_01_state(&d));
        }
    }

    #[test]
    fn discrete_solutions_verify(d in diagram()) {
        let n = d.uniform_edge_size().unwrap();
        if let Some(vs) = discrete_check(&d, n, &[-1, 0, 1]) {
            prop_assert!(verify_solution(&d, &vs, 0.0).unwrap().passed());
        }
    }

    #[test]
    fn interval_products_enclose_samples(
        a in -3.0f64..3.0, wa in 0.0f64..2.0, b in -3.0f64..3.0, wb in 0.0f64..2.0,
        s in 0.0f64..=1.0, t in 0.0f64..=1.0,
    ) {
        let p = Poly::var(0).mul(&Poly::var(1)).add(&Poly::var(0).mul(&Poly::var(0))).add(&Poly::int(-1));
        let boxes = [Interval::new(a, a + wa), Interval::new(b, b + wb)];
        let x = [a + s * wa, b + t * wb];
        let y = p.eval_f64(|v| x[v]);
        prop_assert!(p.eval_interval(|v| boxes[v]).contains(y));
    }
}

#[test]
fn generated_classes_are_distinct_and_valid() {
    for spec in [GenSpec::new(3, 10, 5), GenSpec::new(4, 10, 4).girth(2), GenSpec::new(3, 12, 6).girth(4)] {
        let all = generate_all(&spec, &[]).unwrap();
        let mut certs: Vec<Vec<u8>> = all.iter().map(certificate).collect();
        certs.sort();
        certs.dedup();
        assert_eq!(certs.len(), all.len());
        for d in &all {
            d.validate(Default::default()).unwrap();
            assert!(d.is_connected());
            assert!(girth(d).map_or(true, |g| g >= spec.min_girth.unwrap_or(2)));
        }
    }
}
