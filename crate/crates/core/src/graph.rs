//! The projected graph Γ̃, its cycles, and lifts of cycles back into the diagram.
//!
//! A lift is a closed walk in the diagram that never uses the same oriented edge
//! twice (an edge and its reverse count as different). Its column projection,
//! with the steps that keep the column fixed deleted, must reproduce the target
//! cycle up to rotation. Closed trails rather than vertex-simple cycles are used
//! because the terms of the spectral action come from traces along arbitrary
//! closed paths `ē₂ e₂ j(e₁) j(ē₁)`, which may revisit a vertex.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::{DirEdge, EdgeClass, RepLabel, ValidDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedGraph {
    pub vertices: BTreeSet<RepLabel>,
    /// Unordered pairs `(a, b)` with `a <= b`; `a == b` for loops.
    pub edges: BTreeSet<(RepLabel, RepLabel)>,
    /// `ψ(e)` for every edge pair of the diagram, by position.
    pub psi: Vec<(RepLabel, RepLabel)>,
}

impl ProjectedGraph {
    pub fn non_loop_edges(&self) -> impl Iterator<Item = (RepLabel, RepLabel)> + '_ {
        self.edges.iter().copied().filter(|(a, b)| a != b)
    }

    pub fn cycles(&self, max_len: usize) -> Vec<Cycle> {
        let labels: Vec<RepLabel> = self.vertices.iter().copied().collect();
        let pos = |l: RepLabel| labels.binary_search(&l).expect("edge endpoints are vertices");
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (a, b) in self.non_loop_edges() {
            adj[pos(a)].insert(pos(b));
            adj[pos(b)].insert(pos(a));
        }
        simple_cycles(&adj, max_len)
            .into_iter()
            .map(|c| Cycle { vertices: c.into_iter().map(|i| labels[i]).collect() })
            .collect()
    }
}

pub fn normalized(a: RepLabel, b: RepLabel) -> (RepLabel, RepLabel) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn project(d: &ValidDiagram) -> ProjectedGraph {
    let vertices = d.vertices.iter().map(|v| v.col).collect();
    let psi: Vec<_> = (0..d.edges.len())
        .map(|i| {
            let (s, t) = d.endpoints(i);
            normalized(d.vertex_at(s).col, d.vertex_at(t).col)
        })
        .collect();
    let edges = psi.iter().copied().collect();
    ProjectedGraph { vertices, edges, psi }
}

/// A closed path `v₀ → v₁ → … → v₀` without repeated vertices, stored as the
/// vertex sequence (the return to `v₀` implicit).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    pub vertices: Vec<RepLabel>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Oriented steps, including the closing one.
    pub fn steps(&self) -> Vec<(RepLabel, RepLabel)> {
        closing_steps(&self.vertices)
    }

    pub fn contains(&self, label: RepLabel) -> bool {
        self.vertices.contains(&label)
    }

    /// The same cycle traversed backwards, based at the same vertex.
    pub fn reversed(&self) -> Cycle {
        let mut vertices = self.vertices.clone();
        vertices[1..].reverse();
        Cycle { vertices }
    }

    pub fn canonical(&self) -> Cycle {
        Cycle { vertices: canonical_cycle(&self.vertices) }
    }
}

pub fn closing_steps<T: Copy>(seq: &[T]) -> Vec<(T, T)> {
    (0..seq.len()).map(|i| (seq[i], seq[(i + 1) % seq.len()])).collect()
}

fn least_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    (0..seq.len())
        .map(|r| seq[r..].iter().chain(&seq[..r]).cloned().collect::<Vec<T>>())
        .min()
        .unwrap_or_default()
}

/// Lexicographically least vertex sequence over all rotations of both orientations.
pub fn canonical_cycle<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let forward = least_rotation(seq);
    let mut rev = seq.to_vec();
    rev.reverse();
    forward.min(least_rotation(&rev))
}

/// All simple cycles of length `2..=max_len` of an undirected simple graph, each
/// once in canonical form, ordered by length then vertex sequence. A single
/// edge traversed there and back counts as a 2-cycle.
pub fn simple_cycles(adj: &[BTreeSet<usize>], max_len: usize) -> Vec<Vec<usize>> {
    let mut found = BTreeSet::new();
    let mut path = Vec::new();
    for start in 0..adj.len() {
        path.push(start);
        extend_cycles(adj, start, max_len, &mut path, &mut found);
        path.pop();
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn extend_cycles(
    adj: &[BTreeSet<usize>],
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let last = *path.last().expect("path starts at `start`");
    for &next in &adj[last] {
        if next == start && path.len() >= 2 {
            found.insert(canonical_cycle(path));
        } else if next > start && !path.contains(&next) && path.len() < max_len {
            path.push(next);
            extend_cycles(adj, start, max_len, path, found);
            path.pop();
        }
    }
}

/// A closed trail in the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Lift {
    pub steps: Vec<DirEdge>,
}

impl Lift {
    /// Visited vertices, starting and ending at the base point.
    pub fn walk(&self, d: &ValidDiagram) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        if let Some(first) = self.steps.first() {
            out.push(d.source(*first));
        }
        out.extend(self.steps.iter().map(|&e| d.target(e)));
        out
    }

    /// `lL[h2] -> nuR[c1] -> lL[h2]`, annotated with column labels, or with
    /// `col,row` pairs when `rows` is set.
    pub fn describe(&self, d: &ValidDiagram, rows: bool) -> String {
        let mut out = String::new();
        for (i, v) in self.walk(d).into_iter().enumerate() {
            let vx = d.vertex_at(v);
            if i > 0 {
                out.push_str(" -> ");
            }
            if rows {
                let _ = write!(out, "{}[{},{}]", vx.id, d.label_name(vx.col), d.label_name(vx.row));
            } else {
                let _ = write!(out, "{}[{}]", vx.id, d.label_name(vx.col));
            }
        }
        out
    }
}

pub fn describe_cycle(d: &ValidDiagram, c: &Cycle) -> String {
    c.steps()
        .into_iter()
        .map(|(a, b)| format!("({} {})", d.label_name(a), d.label_name(b)))
        .collect()
}

struct Target {
    steps: Vec<(RepLabel, RepLabel)>,
}

impl Target {
    fn new(c: &Cycle) -> Self {
        Self { steps: c.steps() }
    }

    /// Whether moving from label `a` to `b` is the `k`-th step (from `offset`), a
    /// no-op, or a mismatch.
    fn advance(&self, offset: usize, k: usize, a: RepLabel, b: RepLabel) -> Option<usize> {
        if a == b {
            return Some(k);
        }
        if k == self.steps.len() {
            return None;
        }
        let want = self.steps[(offset + k) % self.steps.len()];
        (want == (a, b)).then_some(k + 1)
    }
}

struct Search<'a> {
    d: &'a ValidDiagram,
    adj: Vec<Vec<DirEdge>>,
    cols: Target,
    rows: Option<Target>,
    row_offset: usize,
    start: usize,
    limit: usize,
    used: HashSet<DirEdge>,
    path: Vec<DirEdge>,
}

impl Search<'_> {
    fn run(&mut self, at: usize, kc: usize, kr: usize) -> bool {
        let rows_done = self.rows.as_ref().is_none_or(|t| kr == t.steps.len());
        if at == self.start && !self.path.is_empty() && kc == self.cols.steps.len() && rows_done {
            return true;
        }
        if self.path.len() == self.limit {
            return false;
        }
        for i in 0..self.adj[at].len() {
            let e = self.adj[at][i];
            if self.used.contains(&e) {
                continue;
            }
            let next = self.d.target(e);
            let (from, to) = (self.d.vertex_at(at), self.d.vertex_at(next));
            let Some(kc2) = self.cols.advance(0, kc, from.col, to.col) else { continue };
            let kr2 = match &self.rows {
                None => kr,
                Some(t) => match t.advance(self.row_offset, kr, from.row, to.row) {
                    Some(k) => k,
                    None => continue,
                },
            };
            self.used.insert(e);
            self.path.push(e);
            if self.run(next, kc2, kr2) {
                return true;
            }
            self.path.pop();
            self.used.remove(&e);
        }
        false
    }
}

fn search(d: &ValidDiagram, g1: &Cycle, g2: Option<&Cycle>) -> Option<Lift> {
    if g1.is_empty() || g2.is_some_and(Cycle::is_empty) {
        return None;
    }
    let adj = d.adjacency();
    let directed: usize = adj.iter().map(Vec::len).sum();
    // Iterative deepening, so the witness reported is a shortest one.
    (1..=directed).find_map(|limit| search_bounded(d, &adj, g1, g2, limit))
}

fn search_bounded(
    d: &ValidDiagram,
    adj: &[Vec<DirEdge>],
    g1: &Cycle,
    g2: Option<&Cycle>,
    limit: usize,
) -> Option<Lift> {
    // Any lift can be rotated to begin just before its first column change, so
    // the column phase is fixed; the row phase is free.
    for start in 0..d.vertex_count() {
        let v = d.vertex_at(start);
        if v.col != g1.vertices[0] {
            continue;
        }
        let offsets: Vec<usize> = match g2 {
            None => vec![0],
            Some(c) => (0..c.len()).filter(|&r| c.vertices[r] == v.row).collect(),
        };
        for row_offset in offsets {
            let mut s = Search {
                d,
                adj: adj.to_vec(),
                cols: Target::new(g1),
                rows: g2.map(Target::new),
                row_offset,
                start,
                limit,
                used: HashSet::new(),
                path: Vec::new(),
            };
            if s.run(start, 0, 0) {
                return Some(Lift { steps: s.path });
            }
        }
    }
    None
}

/// A closed trail whose column projection is `g` modulo loops, if one exists.
pub fn lift_cycle(d: &ValidDiagram, g: &Cycle) -> Option<Lift> {
    search(d, g, None)
}

/// A single closed trail projecting to `g1` along the columns and to `g2` along
/// the rows (the projection through `j`), both modulo loops and up to rotation.
pub fn lift_pair(d: &ValidDiagram, g1: &Cycle, g2: &Cycle) -> Option<Lift> {
    search(d, g1, Some(g2))
}

/// The loop-free column (or row) projection of a closed walk, as oriented steps.
pub fn projected_steps(d: &ValidDiagram, walk: &[usize], rows: bool) -> Vec<(RepLabel, RepLabel)> {
    let label = |v: usize| if rows { d.vertex_at(v).row } else { d.vertex_at(v).col };
    walk.windows(2).map(|w| (label(w[0]), label(w[1]))).filter(|(a, b)| a != b).collect()
}

/// Edge pairs of the given class lying over the Γ̃ edge `{a, b}`.
pub fn edges_over(d: &ValidDiagram, a: RepLabel, b: RepLabel, class: EdgeClass) -> Vec<usize> {
    let want = normalized(a, b);
    (0..d.edges.len())
        .filter(|&i| d.edge_class(i) == class)
        .filter(|&i| {
            let (s, t) = d.endpoints(i);
            let (vs, vt) = (d.vertex_at(s), d.vertex_at(t));
            match class {
                EdgeClass::Vertical => normalized(vs.row, vt.row) == want,
                _ => normalized(vs.col, vt.col) == want,
            }
        })
        .collect()
}
