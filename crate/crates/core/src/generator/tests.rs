use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::canon::{canonical_form, certificate, is_isomorphic};
use crate::girth::girth;
use crate::text::parse_mmp;

/// Every diagram of `spec` up to isomorphism, built level by level by
/// adding every admissible edge and deduplicating by certificate.
fn oracle(spec: &GenSpec) -> BTreeSet<Vec<u8>> {
    let n = spec.n;
    let mut all = BTreeSet::new();
    let mut level: BTreeMap<Vec<u8>, Diagram> = BTreeMap::new();
    level.insert(certificate(&Diagram::raw(0, vec![]).unwrap()), Diagram::raw(0, vec![]).unwrap());
    for _ in 0..spec.max_edges {
        let mut next = BTreeMap::new();
        for d in level.values() {
            let a = d.n_vertices();
            for mask in 0u64..1 << a {
                let reused: Vec<usize> = (0..a).filter(|&v| mask >> v & 1 == 1).collect();
                if reused.len() > n || a + n - reused.len() > spec.max_vertices {
                    continue;
                }
                if d.edges().iter().any(|e| e.iter().filter(|v| reused.contains(v)).count() > n - 2) {
                    continue;
                }
                let edge: Vec<usize> = reused.iter().copied().chain(a..a + n - reused.len()).collect();
                let child = d.with_edge(edge).unwrap();
                if spec.connected_only && !child.is_connected() {
                    continue;
                }
                if let (Some(g), Some(min)) = (girth(&child), spec.min_girth) {
                    if g < min {
                        continue;
                    }
                }
                next.entry(certificate(&child)).or_insert(child);
            }
        }
        all.extend(next.keys().cloned());
        level = next;
    }
    all
}

fn census(spec: &GenSpec) -> Vec<Vec<u8>> {
    generate_all(spec, &[]).unwrap().iter().map(certificate).collect()
}

fn assert_matches_oracle(spec: &GenSpec) {
    let got = census(spec);
    let set: BTreeSet<Vec<u8>> = got.iter().cloned().collect();
    assert_eq!(set.len(), got.len(), "duplicate isomorphism classes for {spec:?}");
    assert_eq!(set, oracle(spec), "census differs for {spec:?}");
}

#[test]
fn empty_diagram_has_one_site() {
    let d = Diagram::raw(0, vec![]).unwrap();
    let spec = GenSpec::new(3, 9, 4);
    let sites = extension_orbits(&d, &[], &spec);
    assert_eq!(sites, vec![ExtensionSite { reused: vec![], fresh: 3 }]);
}

#[test]
fn single_triple_sites_at_girth_five() {
    let d = parse_mmp("123").unwrap();
    let auts = canonical_form(&d).automorphisms;
    let spec = GenSpec::new(3, 9, 4).girth(5).disconnected();
    let sites = extension_orbits(&d, &auts, &spec);
    assert_eq!(sites.len(), 2);
    assert_eq!(sites[0].reused.len(), 0);
    assert_eq!(sites[1].reused.len(), 1);
    let connected = extension_orbits(&d, &auts, &GenSpec::new(3, 9, 4).girth(5));
    assert_eq!(connected.len(), 1);
}

#[test]
fn canonical_child_examples() {
    assert!(is_canonical_child(&parse_mmp("123").unwrap(), 0));
    let d = parse_mmp("123,345").unwrap();
    assert!(is_canonical_child(&d, 0) && is_canonical_child(&d, 1));
    // a chain's middle edge is a cut edge and never the added one
    let chain = parse_mmp("123,345,567").unwrap();
    assert!(!is_canonical_child(&chain, 1));
    assert!(is_canonical_child(&chain, 2));
}

#[test]
fn three_vertices_give_one_triple() {
    let got = generate_all(&GenSpec::new(3, 3, 5), &[]).unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(serialize(&got[0]), "123");
}

fn serialize(d: &Diagram) -> String {
    crate::text::serialize(d).unwrap()
}

#[test]
fn census_matches_oracle_n3() {
    for max_edges in 1..=4 {
        assert_matches_oracle(&GenSpec::new(3, 8, max_edges));
        assert_matches_oracle(&GenSpec::new(3, 8, max_edges).disconnected());
        assert_matches_oracle(&GenSpec::new(3, 8, max_edges).girth(4));
    }
    assert_matches_oracle(&GenSpec::new(3, 7, 6));
}

#[test]
fn census_matches_oracle_n4() {
    for max_edges in 1..=4 {
        assert_matches_oracle(&GenSpec::new(4, 9, max_edges));
        assert_matches_oracle(&GenSpec::new(4, 9, max_edges).girth(3));
    }
    assert_matches_oracle(&GenSpec::new(4, 8, 4).disconnected());
}

#[test]
fn loop_free_at_nine_vertices() {
    let spec = GenSpec::new(3, 9, 4).girth(5);
    let got = generate_all(&spec, &[]).unwrap();
    assert_matches_oracle(&spec);
    // single edge; two edges; path and star of three; four-edge trees
    let by_edges: BTreeMap<usize, usize> = got.iter().fold(BTreeMap::new(), |mut m, d| {
        *m.entry(d.n_edges()).or_default() += 1;
        m
    });
    assert_eq!(by_edges[&1], 1);
    assert_eq!(by_edges[&2], 1);
    assert_eq!(by_edges[&3], 2);
    assert!(got.iter().all(|d| girth(d).is_none()));
    let ten = generate_all(&GenSpec::new(3, 10, 5).girth(5).exactly(10, 5), &[]).unwrap();
    let pentagon = parse_mmp("123,345,567,789,9A1").unwrap();
    assert_eq!(ten.iter().filter(|d| girth(d).is_some()).count(), 1);
    assert!(ten.iter().any(|d| is_isomorphic(d, &pentagon)));
}

#[test]
fn smallest_four_dimensional_pair_loop() {
    let got = generate_all(&GenSpec::new(4, 6, 4).girth(2), &[]).unwrap();
    let six_three: Vec<&Diagram> = got.iter().filter(|d| d.n_vertices() == 6 && d.n_edges() == 3).collect();
    assert_eq!(six_three.len(), 1);
    assert!(is_isomorphic(six_three[0], &parse_mmp("1234,2356,1456").unwrap()));
}

#[test]
fn emission_window() {
    let spec = GenSpec::new(3, 9, 4).girth(3).exactly(9, 4);
    let got = generate_all(&spec, &[]).unwrap();
    assert!(!got.is_empty());
    assert!(got.iter().all(|d| d.n_vertices() == 9 && d.n_edges() == 4));
    let full: Vec<Diagram> = generate_all(&GenSpec::new(3, 9, 4).girth(3), &[]).unwrap();
    assert_eq!(got.len(), full.iter().filter(|d| d.n_vertices() == 9 && d.n_edges() == 4).count());
}

#[test]
fn parallel_matches_serial() {
    let spec = GenSpec::new(3, 10, 6).girth(3);
    let mut serial = Vec::new();
    let s1 = generate(&spec, &[], |d| serial.push(certificate(d))).unwrap();
    let (par, s2) = generate_par(&spec, &[], |d| Some(certificate(d))).unwrap();
    assert_eq!(serial, par);
    assert_eq!(s1, s2);
    let (edges, s3) = generate_fold(&spec, &[], || 0, |acc, d| *acc += d.n_edges(), |acc, o| *acc += o).unwrap();
    assert_eq!(edges, generate_all(&spec, &[]).unwrap().iter().map(Diagram::n_edges).sum::<usize>());
    assert_eq!(s1, s3);
}

#[test]
fn spec_errors() {
    assert_eq!(GenSpec::new(3, 9, 4).girth(2).validate(), Err(GenError::GirthConflict));
    assert_eq!(GenSpec::new(2, 9, 4).validate(), Err(GenError::EdgeSize(2)));
    assert_eq!(GenSpec::new(4, 9, 4).girth(1).validate(), Err(GenError::Girth(1)));
    assert_eq!(GenSpec::new(4, 62, 4).validate(), Err(GenError::TooManyVertices(62)));
    assert!(GenSpec::new(4, 9, 4).girth(2).validate().is_ok());
}

#[test]
fn filters_only_prune() {
    let spec = GenSpec::new(3, 9, 5).girth(3);
    let plain: BTreeSet<Vec<u8>> = census(&spec).into_iter().collect();
    let prelim = builtin_filter("prelim").unwrap();
    let filtered: Vec<Vec<u8>> = generate_all(&spec, &[prelim]).unwrap().iter().map(certificate).collect();
    assert!(filtered.len() < plain.len());
    assert!(filtered.iter().all(|c| plain.contains(c)));
    let zero = builtin_filter("probe:budget=0").unwrap();
    let probed: Vec<Vec<u8>> = generate_all(&spec, &[zero]).unwrap().iter().map(certificate).collect();
    assert_eq!(probed, census(&spec));
}

#[test]
fn unknown_filter_is_an_error() {
    assert!(matches!(builtin_filter("nope"), Err(GenError::UnknownFilter(_))));
    assert!(matches!(builtin_filter("probe:budget=x"), Err(GenError::FilterParam(_))));
    let mut reg = FilterRegistry::default();
    struct Never;
    impl Filter for Never {
        fn name(&self) -> &str {
            "never"
        }
        fn check(&self, _: &Diagram, _: &GenSpec) -> FilterVerdict {
            FilterVerdict::PruneSubtree("never".into())
        }
    }
    let id = reg.register("never", |_| Ok(Arc::new(Never)));
    assert_eq!(reg.names()[id], "never");
    let f = reg.build("never").unwrap();
    let stats = generate(&GenSpec::new(3, 9, 4), &[f], |_| {}).unwrap();
    assert_eq!(stats.total_emitted(), 0);
    assert_eq!(stats.pruned["never"], 1);
}
