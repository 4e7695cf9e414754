#![allow(dead_code)]

pub mod profiles;
pub mod schema;

use std::collections::{BTreeSet, HashSet};

use krajewski::algebra::{AlgebraFactor, FieldKind, FiniteAlgebra};
use krajewski::diagram::{DiagramVertex, DirEdge, EdgePair, KrajewskiDiagram, OperatorSpec, RepLabel, ValidDiagram};
use krajewski::graph::{Cycle, Lift};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random simple undirected graph on at most `max_n` vertices.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> Vec<BTreeSet<usize>> {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut adj = vec![BTreeSet::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    adj
}

/// Every simple cycle, by trying each ordered vertex sequence, canonicalized
/// independently of the library.
pub fn brute_force_cycles(adj: &[BTreeSet<usize>], max_len: usize) -> BTreeSet<Vec<usize>> {
    fn grow(adj: &[BTreeSet<usize>], max_len: usize, seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if seq.len() >= 2 && adj[*seq.last().unwrap()].contains(&seq[0]) {
            out.insert(canonical(seq));
        }
        if seq.len() == max_len {
            return;
        }
        for v in 0..adj.len() {
            if !seq.contains(&v) && adj[*seq.last().unwrap()].contains(&v) {
                seq.push(v);
                grow(adj, max_len, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for v in 0..adj.len() {
        grow(adj, max_len, &mut vec![v], &mut out);
    }
    out
}

fn canonical(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut best: Option<Vec<usize>> = None;
    for r in 0..n {
        for dir in [1isize, -1] {
            let cand: Vec<usize> = (0..n as isize)
                .map(|k| seq[(r as isize + dir * k).rem_euclid(n as isize) as usize])
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Random diagrams that pass validation: a few factors, vertices placed in
/// mirror pairs at distinct positions, edges along a row or column with their
/// mirrors. Odd KO-dimension, so no grading constraints.
pub fn random_diagram(rng: &mut impl Rng) -> ValidDiagram {
    loop {
        if let Ok(d) = ValidDiagram::new(random_raw_diagram(rng)) {
            return d;
        }
    }
}

fn random_raw_diagram(rng: &mut impl Rng) -> KrajewskiDiagram {
    let pool = [
        AlgebraFactor::new("c1", FieldKind::Complex, 1),
        AlgebraFactor::new("h2", FieldKind::Quaternion, 1),
        AlgebraFactor::new("c3", FieldKind::Complex, 3),
        AlgebraFactor::new("c2", FieldKind::Complex, 2),
    ];
    let k = rng.gen_range(1..=pool.len());
    let mut factors: Vec<AlgebraFactor> = pool.to_vec();
    factors.shuffle(rng);
    factors.truncate(k);
    let algebra = FiniteAlgebra::new(factors.clone()).expect("distinct names");

    let mut labels = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        labels.push(RepLabel::new(i));
        if f.kind == FieldKind::Complex {
            labels.push(RepLabel::conj(i));
        }
    }

    let mut positions: BTreeSet<(RepLabel, RepLabel)> = BTreeSet::new();
    let target = rng.gen_range(3..=8);
    for _ in 0..target * 3 {
        if positions.len() >= target {
            break;
        }
        let a = *labels.choose(rng).unwrap();
        let b = *labels.choose(rng).unwrap();
        positions.insert((a, b));
        positions.insert((b, a));
    }
    let vertices: Vec<DiagramVertex> = positions
        .iter()
        .enumerate()
        .map(|(i, &(col, row))| DiagramVertex { id: format!("v{i}"), col, row, sign: None })
        .collect();
    let mirror = |i: usize| {
        let v = &vertices[i];
        vertices.iter().position(|w| w.col == v.row && w.row == v.col).unwrap()
    };

    let n = vertices.len();
    let mut candidates = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let (a, b) = (&vertices[s], &vertices[t]);
            if s != t && (a.col == b.col || a.row == b.row) {
                candidates.push((s, t));
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let want = rng.gen_range(1..=7.min(candidates.len().max(1)));
    for _ in 0..want {
        let Some(&(s, t)) = candidates.choose(rng) else { break };
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let (ms, mt) = (mirror(s), mirror(t));
        pairs.push((s, t));
        if key(ms, mt) != key(s, t) {
            pairs.push((ms, mt));
        }
    }
    let labels = ["f", "g"];
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| EdgePair {
            id: format!("e{i}"),
            source: vertices[s].id.clone(),
            target: vertices[t].id.clone(),
            operator: OperatorSpec::Symbolic(labels.choose(rng).unwrap().to_string()),
        })
        .collect();
    KrajewskiDiagram {
        algebra,
        kodim: *[1u8, 7].choose(rng).unwrap(),
        vertices,
        edges,
        jmap: Vec::new(),
        families: 1,
    }
}

/// Oriented endpoints of a directed edge, read straight from the edge list.
fn ends(d: &KrajewskiDiagram, e: DirEdge) -> (&DiagramVertex, &DiagramVertex) {
    let pair = &d.edges[e.pair];
    let (s, t) = (d.vertex(&pair.source).unwrap(), d.vertex(&pair.target).unwrap());
    if e.reversed {
        (t, s)
    } else {
        (s, t)
    }
}

fn is_rotation<T: PartialEq + Copy>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|r| (0..a.len()).all(|k| a[k] == b[(r + k) % b.len()])))
}

/// Checks that `lift` is a closed trail with no repeated directed edge whose
/// column changes are a rotation of `cols`' steps and, if given, whose row
/// changes are a rotation of `rows`' steps.
pub fn verify_lift(d: &KrajewskiDiagram, lift: &Lift, cols: &Cycle, rows: Option<&Cycle>) -> Result<(), String> {
    let steps = &lift.steps;
    if steps.is_empty() {
        return Err("empty lift".into());
    }
    let mut seen = HashSet::new();
    for (i, &e) in steps.iter().enumerate() {
        if !seen.insert(e) {
            return Err(format!("directed edge {e:?} used twice"));
        }
        let next = steps[(i + 1) % steps.len()];
        if ends(d, e).1.id != ends(d, next).0.id {
            return Err(format!("step {i} does not connect to the next"));
        }
    }
    let changes = |pick: fn(&DiagramVertex) -> RepLabel| -> Vec<(RepLabel, RepLabel)> {
        steps
            .iter()
            .map(|&e| ends(d, e))
            .map(|(s, t)| (pick(s), pick(t)))
            .filter(|(a, b)| a != b)
            .collect()
    };
    if !is_rotation(&changes(|v| v.col), &cols.steps()) {
        return Err("column projection differs from the cycle".into());
    }
    if let Some(r) = rows {
        if !is_rotation(&changes(|v| v.row), &r.steps()) {
            return Err("row projection differs from the cycle".into());
        }
    }
    Ok(())
}

/// The three builtins plus `n` seeded random diagrams.
pub fn corpus(n: usize, seed: u64) -> Vec<(String, ValidDiagram)> {
    use krajewski::builtins::{builtin, Builtin};
    let mut out: Vec<(String, ValidDiagram)> = [Builtin::StandardModel, Builtin::Chain, Builtin::YangMills(3)]
        .iter()
        .map(|b| (b.to_string(), ValidDiagram::new(builtin(b)).expect("builtin validates")))
        .collect();
    let mut r = rng(seed);
    for i in 0..n {
        out.push((format!("random#{i}"), random_diagram(&mut r)));
    }
    out
}
