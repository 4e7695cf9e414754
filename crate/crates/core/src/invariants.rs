//! Scalar field content, the terms the spectral action produces, the gauge
//! invariant counterterms power counting demands, and whether the former cover
//! the latter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::gauge_lie_algebra;
use crate::diagram::{DirEdge, EdgeClass, OperatorSpec, RepLabel, ValidDiagram};
use crate::exact::{coordinates, independent_subset, rank, ComplexRational};
use crate::graph::{canonical_cycle, edges_over, lift_cycle, normalized, project, Cycle};
use crate::rconnect::{exemption_check, lift_pair_any};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("edges over {edge} mix symbolic labels and numeric matrices")]
    MixedModes { edge: String },
}

/// `φ^p_ẽ` on the Γ̃-edge `source → target` (with `source < target`); the
/// component on the reversed edge is its adjoint and is not listed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldComponent {
    pub source: RepLabel,
    pub target: RepLabel,
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInventory {
    pub components: Vec<FieldComponent>,
    /// `Σ dim(s) dim(t) dim S_ẽ`, the number of independent complex components.
    pub count: u64,
}

/// `dim S_ẽ` per Γ̃-edge and the basis indices `p` each Dirac component expands into.
#[derive(Clone, Debug)]
struct FieldBasis {
    dims: BTreeMap<(RepLabel, RepLabel), usize>,
    /// For each edge pair: the `p` with nonzero coefficient; empty for `D_0`.
    indices: Vec<BTreeSet<usize>>,
}

fn oriented_entries(d: &ValidDiagram, pair: usize, source: RepLabel) -> Vec<ComplexRational> {
    let OperatorSpec::Numeric(m) = &d.edges[pair].operator else { unreachable!("numeric edges only") };
    let (s, _) = d.endpoints(pair);
    if d.vertex_at(s).col == source {
        m.entries.clone()
    } else {
        m.adjoint().entries
    }
}

fn field_basis(d: &ValidDiagram) -> Result<FieldBasis, InvariantError> {
    let g = project(d);
    let mut dims = BTreeMap::new();
    let mut indices = vec![BTreeSet::new(); d.edges.len()];
    for (a, b) in g.non_loop_edges() {
        let over = edges_over(d, a, b, EdgeClass::Horizontal);
        let numeric = over.iter().filter(|&&i| matches!(d.edges[i].operator, OperatorSpec::Numeric(_))).count();
        if numeric != 0 && numeric != over.len() {
            return Err(InvariantError::MixedModes { edge: format!("{{{}, {}}}", d.label_name(a), d.label_name(b)) });
        }
        if numeric == 0 {
            let labels: BTreeSet<&str> = over
                .iter()
                .map(|&i| match &d.edges[i].operator {
                    OperatorSpec::Symbolic(l) => l.as_str(),
                    OperatorSpec::Numeric(_) => unreachable!(),
                })
                .collect();
            let position: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k + 1)).collect();
            for &i in &over {
                if let OperatorSpec::Symbolic(l) = &d.edges[i].operator {
                    indices[i].insert(position[l.as_str()]);
                }
            }
            dims.insert((a, b), labels.len());
        } else {
            let vectors: Vec<Vec<ComplexRational>> = over.iter().map(|&i| oriented_entries(d, i, a)).collect();
            let basis: Vec<Vec<ComplexRational>> =
                independent_subset(&vectors).into_iter().map(|k| vectors[k].clone()).collect();
            debug_assert_eq!(basis.len(), rank(&vectors));
            for (k, &i) in over.iter().enumerate() {
                let coords = coordinates(&basis, &vectors[k]).expect("every vector lies in the span of the basis");
                indices[i] = coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, _)| p + 1).collect();
            }
            dims.insert((a, b), basis.len());
        }
    }
    // a vertical edge is the image under j of a horizontal one and shares its expansion
    for i in 0..d.edges.len() {
        if d.edge_class(i) == EdgeClass::Vertical {
            if let Some(h) = d.j_partners(i).into_iter().find(|&q| d.edge_class(q) == EdgeClass::Horizontal) {
                indices[i] = indices[h].clone();
            }
        }
    }
    Ok(FieldBasis { dims, indices })
}

/// `dim S_ẽ` for the Γ̃-edge `{a, b}`; zero when nothing lies over it.
pub fn basis_dimension(d: &ValidDiagram, a: RepLabel, b: RepLabel) -> Result<usize, InvariantError> {
    Ok(field_basis(d)?.dims.get(&normalized(a, b)).copied().unwrap_or(0))
}

pub fn enumerate_fields(d: &ValidDiagram) -> Result<FieldInventory, InvariantError> {
    let basis = field_basis(d)?;
    let mut components = Vec::new();
    let mut count = 0u64;
    for (&(a, b), &dim) in &basis.dims {
        count += u64::from(d.label_dimension(a)) * u64::from(d.label_dimension(b)) * dim as u64;
        components.extend((1..=dim).map(|p| FieldComponent { source: a, target: b, p }));
    }
    Ok(FieldInventory { components, count })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TermKind {
    YangMillsF2,
    ScalarMass,
    ScalarKinetic,
    Cubic,
    Quartic,
}

/// What is traced over, up to rotation and reversal of each closed walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceStructure {
    /// `tr F_{μν} F^{μν}` restricted to one summand of the gauge algebra.
    Gauge(String),
    /// A trace along a closed walk in Γ̃.
    Single(Vec<RepLabel>),
    /// A product of two traces (sorted).
    Double(Vec<RepLabel>, Vec<RepLabel>),
}

impl TraceStructure {
    pub fn single(walk: &[RepLabel]) -> Self {
        TraceStructure::Single(canonical_cycle(walk))
    }

    pub fn double(a: &[RepLabel], b: &[RepLabel]) -> Self {
        let (a, b) = (canonical_cycle(a), canonical_cycle(b));
        if a <= b {
            TraceStructure::Double(a, b)
        } else {
            TraceStructure::Double(b, a)
        }
    }

    /// A double trace whose factors meet at a `1` or `1̄` is a single trace: the
    /// trace over a one-dimensional space is the identity.
    pub fn collapsed(self, d: &ValidDiagram) -> Self {
        let TraceStructure::Double(a, b) = &self else { return self };
        let Some(&v) = a.iter().find(|&&v| d.is_trivial_complex(v) && b.contains(&v)) else { return self };
        let rotate = |w: &[RepLabel]| {
            let k = w.iter().position(|&x| x == v).expect("shared vertex");
            w[k..].iter().chain(&w[..k]).copied().collect::<Vec<_>>()
        };
        let mut joined = rotate(a);
        joined.extend(rotate(b));
        TraceStructure::single(&joined)
    }

    pub fn describe(&self, d: &ValidDiagram) -> String {
        let walk = |w: &[RepLabel]| w.iter().map(|&l| d.label_name(l)).collect::<Vec<_>>().join(" ");
        match self {
            TraceStructure::Gauge(name) => format!("tr F^2 [{name}]"),
            TraceStructure::Single(w) => format!("tr({})", walk(w)),
            TraceStructure::Double(a, b) => format!("tr({}) tr({})", walk(a), walk(b)),
        }
    }
}

/// Symbolic coefficient: a sum of monomials `Π M_e^p`, each a sorted list of `(edge, p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coefficient {
    pub monomials: BTreeSet<Vec<(String, usize)>>,
}

impl Coefficient {
    pub fn is_unspecified(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn describe(&self) -> Vec<String> {
        self.monomials
            .iter()
            .map(|m| m.iter().map(|(e, p)| format!("M[{e},{p}]")).collect::<Vec<_>>().join("*"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTerm {
    pub kind: TermKind,
    pub structure: TraceStructure,
    /// Basis indices `(p₁, p₂)` of the degree-two terms; empty otherwise.
    pub indices: Vec<usize>,
    pub coefficient: Coefficient,
    /// The walks in the diagram, or the Γ̃-cycles, the term comes from.
    pub origin: BTreeSet<String>,
}

/// Flat, printable form of an [`InvariantTerm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermView {
    pub kind: TermKind,
    pub trace: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    pub coefficient: Vec<String>,
    pub origin: Vec<String>,
}

impl InvariantTerm {
    pub fn view(&self, d: &ValidDiagram) -> TermView {
        TermView {
            kind: self.kind,
            trace: self.structure.describe(d),
            indices: self.indices.clone(),
            coefficient: if self.coefficient.is_unspecified() {
                vec!["unspecified".into()]
            } else {
                self.coefficient.describe()
            },
            origin: self.origin.iter().cloned().collect(),
        }
    }
}

impl fmt::Display for TermView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TermKind::YangMillsF2 => "F^2",
            TermKind::ScalarMass => "mass",
            TermKind::ScalarKinetic => "kinetic",
            TermKind::Cubic => "cubic",
            TermKind::Quartic => "quartic",
        };
        write!(f, "{kind:<8} {}", self.trace)?;
        if !self.indices.is_empty() {
            let p: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
            write!(f, "  p=({})", p.join(","))?;
        }
        Ok(())
    }
}

fn gauge_terms(d: &ValidDiagram) -> Vec<InvariantTerm> {
    let g = gauge_lie_algebra(&d.algebra);
    let mut names: Vec<String> = g
        .simple_factors
        .iter()
        .map(|s| format!("{s} of {}", d.algebra.factors()[s.factor_index].name))
        .collect();
    names.extend((1..=g.abelian_rank).map(|k| if g.abelian_rank == 1 { "u(1)".to_string() } else { format!("u(1)#{k}") }));
    names
        .into_iter()
        .map(|name| InvariantTerm {
            kind: TermKind::YangMillsF2,
            structure: TraceStructure::Gauge(name),
            indices: Vec::new(),
            coefficient: Coefficient::default(),
            origin: BTreeSet::from(["gauge field".to_string()]),
        })
        .collect()
}

struct Accumulator {
    terms: BTreeMap<(TermKind, TraceStructure, Vec<usize>), InvariantTerm>,
}

impl Accumulator {
    fn add(&mut self, kind: TermKind, structure: TraceStructure, indices: Vec<usize>, monomials: Vec<Vec<(String, usize)>>, origin: String) {
        let term = self
            .terms
            .entry((kind, structure.clone(), indices.clone()))
            .or_insert_with(|| InvariantTerm {
                kind,
                structure,
                indices,
                coefficient: Coefficient::default(),
                origin: BTreeSet::new(),
            });
        for mut m in monomials {
            m.sort();
            term.coefficient.monomials.insert(m);
        }
        term.origin.insert(origin);
    }
}

/// All ways of picking one `p` per step.
fn expand(steps: &[(String, &BTreeSet<usize>)]) -> Vec<Vec<(String, usize)>> {
    let mut out = vec![Vec::new()];
    for (edge, ps) in steps {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                ps.iter().map(move |&p| {
                    let mut m = prefix.clone();
                    m.push((edge.clone(), p));
                    m
                })
            })
            .collect();
    }
    out
}

fn walk_text(d: &ValidDiagram, steps: &[DirEdge]) -> String {
    let mut ids = vec![d.vertex_at(d.source(steps[0])).id.clone()];
    ids.extend(steps.iter().map(|&e| d.vertex_at(d.target(e)).id.clone()));
    ids.join(" -> ")
}

/// Closed walks of the given length through the fluctuation `Φ = Δ + JΔJ⁻¹`
/// (edges may repeat), one per rotation class.
fn closed_phi_walks(d: &ValidDiagram, len: usize) -> Vec<Vec<DirEdge>> {
    let adj: Vec<Vec<DirEdge>> = d
        .adjacency()
        .into_iter()
        .map(|out| out.into_iter().filter(|e| d.edge_class(e.pair) != EdgeClass::Diagonal).collect())
        .collect();
    let mut found = BTreeSet::new();
    let mut path = Vec::new();
    fn go(d: &ValidDiagram, adj: &[Vec<DirEdge>], start: usize, at: usize, len: usize, path: &mut Vec<DirEdge>, found: &mut BTreeSet<Vec<DirEdge>>) {
        if path.len() == len {
            if at == start {
                let best = (0..len).map(|r| [&path[r..], &path[..r]].concat()).min().expect("non-empty");
                found.insert(best);
            }
            return;
        }
        for &e in &adj[at] {
            path.push(e);
            go(d, adj, start, d.target(e), len, path, found);
            path.pop();
        }
    }
    for start in 0..d.vertex_count() {
        go(d, &adj, start, start, len, &mut path, &mut found);
    }
    found.into_iter().collect()
}

/// Terms generated by the spectral action: `F²`, `tr Φ²`, `tr (∇Φ)²` and `tr Φ⁴`.
pub fn action_terms(d: &ValidDiagram) -> Result<Vec<InvariantTerm>, InvariantError> {
    let basis = field_basis(d)?;
    let mut acc = Accumulator { terms: BTreeMap::new() };

    for pair in 0..d.edges.len() {
        let class = d.edge_class(pair);
        if class == EdgeClass::Diagonal {
            continue;
        }
        let (s, t) = d.endpoints(pair);
        let (vs, vt) = (d.vertex_at(s), d.vertex_at(t));
        let (a, b) = if class == EdgeClass::Horizontal { (vs.col, vt.col) } else { (vs.row, vt.row) };
        let id = &d.edges[pair].id;
        let ps = &basis.indices[pair];
        for &p1 in ps {
            for &p2 in ps {
                let mono = vec![vec![(id.clone(), p1), (id.clone(), p2)]];
                let origin = format!("{} -> {} -> {}", vs.id, vt.id, vs.id);
                for kind in [TermKind::ScalarMass, TermKind::ScalarKinetic] {
                    acc.add(kind, TraceStructure::single(&[a, b]), vec![p1, p2], mono.clone(), origin.clone());
                }
            }
        }
    }

    for walk in closed_phi_walks(d, 4) {
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        for &e in &walk {
            let (from, to) = (d.vertex_at(d.source(e)), d.vertex_at(d.target(e)));
            if from.col != to.col {
                cols.push(from.col);
            } else {
                rows.push(from.row);
            }
        }
        let structure = match (cols.len(), rows.len()) {
            (4, 0) => TraceStructure::single(&cols),
            (0, 4) => TraceStructure::single(&rows),
            (2, 2) => TraceStructure::double(&cols, &rows).collapsed(d),
            _ => unreachable!("a closed walk changes columns and rows an even number of times each"),
        };
        let steps: Vec<(String, &BTreeSet<usize>)> =
            walk.iter().map(|e| (d.edges[e.pair].id.clone(), &basis.indices[e.pair])).collect();
        acc.add(TermKind::Quartic, structure, Vec::new(), expand(&steps), walk_text(d, &walk));
    }

    let mut out = gauge_terms(d);
    out.extend(acc.terms.into_values());
    Ok(out)
}

/// The gauge-invariant local terms of degree ≤ 4 that divergences may require.
pub fn required_counterterms(d: &ValidDiagram) -> Result<Vec<InvariantTerm>, InvariantError> {
    let basis = field_basis(d)?;
    let mut out = gauge_terms(d);
    for (&(a, b), &dim) in &basis.dims {
        for kind in [TermKind::ScalarMass, TermKind::ScalarKinetic] {
            for p1 in 1..=dim {
                for p2 in 1..=dim {
                    out.push(InvariantTerm {
                        kind,
                        structure: TraceStructure::single(&[a, b]),
                        indices: vec![p1, p2],
                        coefficient: Coefficient::default(),
                        origin: BTreeSet::from([format!("edge {{{}, {}}}", d.label_name(a), d.label_name(b))]),
                    });
                }
            }
        }
    }
    let cycles = project(d).cycles(4);
    let name = |c: &Cycle| crate::graph::describe_cycle(d, c);
    for c in cycles.iter().filter(|c| c.len() >= 3) {
        out.push(InvariantTerm {
            kind: if c.len() == 3 { TermKind::Cubic } else { TermKind::Quartic },
            structure: TraceStructure::single(&c.vertices),
            indices: Vec::new(),
            coefficient: Coefficient::default(),
            origin: BTreeSet::from([format!("cycle {}", name(c))]),
        });
    }
    let two: Vec<&Cycle> = cycles.iter().filter(|c| c.len() == 2).collect();
    for (i, a) in two.iter().enumerate() {
        for b in &two[i..] {
            if exemption_check(d, a, b) {
                continue;
            }
            out.push(InvariantTerm {
                kind: TermKind::Quartic,
                structure: TraceStructure::double(&a.vertices, &b.vertices),
                indices: Vec::new(),
                coefficient: Coefficient::default(),
                origin: BTreeSet::from([format!("cycles {} and {}", name(a), name(b))]),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum CoveredBy {
    /// A term of the expanded action with the same trace structure.
    Action { trace: String },
    /// A closed trail in the diagram projecting onto the required cycle(s); the
    /// corresponding trace appears at higher order in the expansion.
    Trail { walk: String },
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageEntry {
    pub required: TermView,
    pub covered_by: CoveredBy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub complete: bool,
    pub entries: Vec<CoverageEntry>,
}

impl CoverageReport {
    pub fn missing(&self) -> impl Iterator<Item = &CoverageEntry> {
        self.entries.iter().filter(|e| e.covered_by == CoveredBy::Missing)
    }
}

fn same_family(a: TermKind, b: TermKind) -> bool {
    a == b || matches!((a, b), (TermKind::Cubic, TermKind::Quartic) | (TermKind::Quartic, TermKind::Cubic))
}

/// Coefficient-blind matching of every required counterterm against the action.
pub fn counterterm_coverage(d: &ValidDiagram) -> Result<CoverageReport, InvariantError> {
    let action = action_terms(d)?;
    let required = required_counterterms(d)?;
    let mut entries = Vec::new();
    for r in &required {
        let direct = action.iter().find(|a| same_family(a.kind, r.kind) && a.structure == r.structure);
        let covered_by = match (direct, &r.structure) {
            (Some(a), _) => CoveredBy::Action { trace: a.structure.describe(d) },
            (None, TraceStructure::Single(w)) => match lift_cycle(d, &Cycle { vertices: w.clone() }) {
                Some(l) => CoveredBy::Trail { walk: l.describe(d, false) },
                None => CoveredBy::Missing,
            },
            (None, TraceStructure::Double(a, b)) => {
                match lift_pair_any(d, &Cycle { vertices: a.clone() }, &Cycle { vertices: b.clone() }) {
                    Some((l, _)) => CoveredBy::Trail { walk: l.describe(d, true) },
                    None => CoveredBy::Missing,
                }
            }
            (None, TraceStructure::Gauge(_)) => CoveredBy::Missing,
        };
        entries.push(CoverageEntry { required: r.view(d), covered_by });
    }
    Ok(CoverageReport { complete: entries.iter().all(|e| e.covered_by != CoveredBy::Missing), entries })
}
