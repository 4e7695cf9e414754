use krajewski::powercount::{GraphProfile, VertexCount};
use rand::Rng;

/// A census that satisfies every counting identity: vertices first, then as
/// many internal lines of each type as the half-edges allow (the rest are
/// external), with the loop number read off from Euler's formula.
pub fn consistent_profile(rng: &mut impl Rng, max_valence: u32) -> GraphProfile {
    loop {
        let mut vertices: Vec<VertexCount> = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let valence = rng.gen_range(3..=max_valence);
            let gauge = rng.gen_range(0..=valence);
            let v = VertexCount { gauge, higgs: valence - gauge, count: rng.gen_range(1..=4) };
            match vertices.iter_mut().find(|w| w.gauge == v.gauge && w.higgs == v.higgs) {
                Some(w) => w.count += v.count,
                None => vertices.push(v),
            }
        }
        vertices.sort();
        let va = rng.gen_range(0..=3u64);
        let vc = rng.gen_range(0..=3u64);
        let half = |f: fn(&VertexCount) -> u32| vertices.iter().map(|v| u64::from(f(v)) * v.count).sum::<u64>();
        let gauge_half = half(|v| v.gauge) + va;
        let higgs_half = half(|v| v.higgs) + vc;
        let ghost_half = 2 * (va + vc);

        let mut split = |total: u64| {
            let internal = rng.gen_range(0..=total / 2);
            (internal, total - 2 * internal)
        };
        let (ig, eg) = split(gauge_half);
        let (ih, eh) = split(higgs_half);
        let (ic, ec) = split(ghost_half);
        let v_total: u64 = vertices.iter().map(|v| v.count).sum::<u64>() + va + vc;
        let Some(loops) = (ig + ih + ic + 1).checked_sub(v_total) else { continue };
        return GraphProfile {
            loops,
            internal_gauge: ig,
            internal_higgs: ih,
            internal_ghost: ic,
            vertices,
            ghost_gauge_vertices: va,
            ghost_higgs_vertices: vc,
            external_gauge: eg,
            external_higgs: eh,
            external_ghost: ec,
        };
    }
}

/// Single-field perturbations, each of which breaks at least one identity.
pub fn mutations(p: &GraphProfile) -> Vec<(&'static str, GraphProfile)> {
    let mut out = Vec::new();
    let mut push = |name, f: &dyn Fn(&mut GraphProfile)| {
        let mut q = p.clone();
        f(&mut q);
        out.push((name, q));
    };
    push("loops + 1", &|q| q.loops += 1);
    push("external gauge + 1", &|q| q.external_gauge += 1);
    push("external higgs + 1", &|q| q.external_higgs += 1);
    push("external ghost + 1", &|q| q.external_ghost += 1);
    push("internal gauge + 1", &|q| q.internal_gauge += 1);
    push("internal higgs + 1", &|q| q.internal_higgs += 1);
    push("ghost-gauge vertex + 1", &|q| q.ghost_gauge_vertices += 1);
    push("extra vertex", &|q| q.vertices[0].count += 1);
    push("two-leg vertex", &|q| q.vertices.push(VertexCount { gauge: 2, higgs: 0, count: 1 }));
    out
}
