mod common;

use std::collections::BTreeSet;

use krajewski::dsl;
use krajewski::graph::simple_cycles;
use krajewski::powercount::{
    omega_bound, omega_external, validate_profile, ExpansionOrder, GraphProfile, VertexCount,
};
use proptest::prelude::*;

fn order(n: u32) -> ExpansionOrder {
    ExpansionOrder::new(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>()) {
        let d = common::random_diagram(&mut common::rng(seed)).into_inner();
        let text = dsl::serialize(&d);
        let back = dsl::parse(&text).map_err(|e| TestCaseError::fail(e.render(&text, "serialized")))?;
        prop_assert!(back.structurally_eq(&d), "{}", text);
        prop_assert_eq!(dsl::serialize(&back), text);
    }

    #[test]
    fn parser_never_panics(text in "(factor|kodim|vertex|edge|jmap|families|c1|C|H|3|->|<->|label|matrix|\\[|\\]|,|\\+|-|~|#| |\n|[a-z0-9]{1,3}){0,40}") {
        let _ = dsl::parse(&text);
    }

    #[test]
    fn omega_bound_is_the_external_bound_minus_ghost_higgs_vertices(seed in any::<u64>(), n in prop::sample::select(vec![4u32, 6, 8, 10])) {
        let p = common::profiles::consistent_profile(&mut common::rng(seed), 4);
        prop_assert!(validate_profile(&p).holds);
        let bound = omega_bound(&p, order(n)).unwrap();
        let ext = omega_external(p.loops, p.external_gauge, p.external_higgs, p.external_ghost, order(n));
        prop_assert_eq!(bound, ext - p.ghost_higgs_vertices as i64);
    }

    #[test]
    fn cycle_count_is_invariant_under_relabelling(seed in any::<u64>(), max_len in 2usize..=7) {
        let mut rng = common::rng(seed);
        let adj = common::random_graph(&mut rng, 7);
        let n = adj.len();
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let mut relabelled = vec![BTreeSet::new(); n];
        for (a, nbrs) in adj.iter().enumerate() {
            for &b in nbrs {
                relabelled[perm[a]].insert(perm[b]);
            }
        }
        let lengths = |cs: Vec<Vec<usize>>| cs.iter().map(Vec::len).collect::<Vec<_>>();
        prop_assert_eq!(lengths(simple_cycles(&adj, max_len)), lengths(simple_cycles(&relabelled, max_len)));
    }
}

const TYPES: [(u32, u32); 9] = [(3, 0), (2, 1), (1, 2), (0, 3), (4, 0), (3, 1), (2, 2), (1, 3), (0, 4)];

/// Every census with at most four vertices (ghost vertices included) and at
/// most six internal lines that satisfies the counting identities.
fn small_profiles() -> Vec<GraphProfile> {
    // slots 0..9 are the Higgs–gauge vertex types, 9 and 10 the ghost vertices
    fn multisets(slots: usize, left: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for s in from..slots {
            cur.push(s);
            multisets(slots, left - 1, s, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    multisets(TYPES.len() + 2, 4, 0, &mut Vec::new(), &mut sets);
    let mut out = Vec::new();
    for set in sets.into_iter().filter(|s| !s.is_empty()) {
        let mut vertices: Vec<VertexCount> = Vec::new();
        let (mut va, mut vc) = (0u64, 0u64);
        for &s in &set {
            match s {
                9 => va += 1,
                10 => vc += 1,
                _ => {
                    let (gauge, higgs) = TYPES[s];
                    match vertices.iter_mut().find(|v| (v.gauge, v.higgs) == (gauge, higgs)) {
                        Some(v) => v.count += 1,
                        None => vertices.push(VertexCount { gauge, higgs, count: 1 }),
                    }
                }
            }
        }
        let half = |f: fn(&VertexCount) -> u32| vertices.iter().map(|v| u64::from(f(v)) * v.count).sum::<u64>();
        let (gh, hh, ch) = (half(|v| v.gauge) + va, half(|v| v.higgs) + vc, 2 * (va + vc));
        let v_total = set.len() as u64;
        for ig in 0..=(gh / 2).min(6) {
            for ih in 0..=(hh / 2).min(6 - ig) {
                for ic in 0..=(ch / 2).min(6 - ig - ih) {
                    let Some(loops) = (ig + ih + ic + 1).checked_sub(v_total) else { continue };
                    out.push(GraphProfile {
                        loops,
                        internal_gauge: ig,
                        internal_higgs: ih,
                        internal_ghost: ic,
                        vertices: vertices.clone(),
                        ghost_gauge_vertices: va,
                        ghost_higgs_vertices: vc,
                        external_gauge: gh - 2 * ig,
                        external_higgs: hh - 2 * ih,
                        external_ghost: ch - 2 * ic,
                    });
                }
            }
        }
    }
    out
}

#[test]
fn omega_bound_never_exceeds_the_external_bound_on_small_profiles() {
    let profiles = small_profiles();
    assert!(profiles.len() > 10_000, "{}", profiles.len());
    for p in &profiles {
        assert!(validate_profile(p).holds, "{p:?}");
        for n in [4, 6, 8, 10] {
            let bound = omega_bound(p, order(n)).unwrap();
            let ext = omega_external(p.loops, p.external_gauge, p.external_higgs, p.external_ghost, order(n));
            assert!(bound <= ext, "n={n}: {bound} > {ext} for {p:?}");
        }
    }
}

#[test]
fn one_loop_gauge_bubble() {
    let p = GraphProfile {
        loops: 1,
        internal_gauge: 2,
        external_gauge: 2,
        vertices: vec![VertexCount { gauge: 3, higgs: 0, count: 2 }],
        ..GraphProfile::default()
    };
    assert!(validate_profile(&p).holds);
    assert_eq!(omega_bound(&p, order(4)).unwrap(), 2);
    assert_eq!(omega_bound(&p, order(8)).unwrap(), 2);
    assert_eq!(omega_bound(&GraphProfile::default(), order(4)).unwrap(), 0);
}
