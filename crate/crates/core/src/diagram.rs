//! Krajewski diagrams: the decorated graph, its axioms, and the pieces of the
//! finite spectral triple that can be read off directly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::algebra::{FieldKind, FiniteAlgebra};
use crate::exact::Matrix;

/// An irreducible representation of `A_F`: the defining representation of one
/// factor, or its complex conjugate (written `1̄` for a copy of `C`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepLabel {
    pub factor: usize,
    pub conjugate: bool,
}

impl RepLabel {
    pub fn new(factor: usize) -> Self {
        Self { factor, conjugate: false }
    }

    pub fn conj(factor: usize) -> Self {
        Self { factor, conjugate: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn times(self, eps: i8) -> Sign {
        if eps * self.value() > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Signs `ε, ε', ε''` of the real structure, as a function of the KO-dimension mod 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoSigns {
    pub n: u8,
    pub eps: i8,
    pub eps_prime: i8,
    /// Absent in odd KO-dimension (no grading).
    pub eps_double_prime: Option<i8>,
}

impl KoSigns {
    pub fn is_even(&self) -> bool {
        self.eps_double_prime.is_some()
    }
}

const EPS: [i8; 8] = [1, 1, -1, -1, -1, -1, 1, 1];
const EPS_PRIME: [i8; 8] = [1, -1, 1, 1, 1, -1, 1, 1];
const EPS_DOUBLE_PRIME: [Option<i8>; 8] = [Some(1), None, Some(-1), None, Some(1), None, Some(-1), None];

/// Panics if `n > 7`.
pub fn ko_signs(n: u8) -> KoSigns {
    let i = usize::from(n);
    assert!(i < 8, "KO-dimension is taken mod 8");
    KoSigns { n, eps: EPS[i], eps_prime: EPS_PRIME[i], eps_double_prime: EPS_DOUBLE_PRIME[i] }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramVertex {
    pub id: String,
    /// `n_v`: the left (column) representation.
    pub col: RepLabel,
    /// `m_v`: the row representation, written unconjugated; it occupies the
    /// contragredient slot of the bimodule.
    pub row: RepLabel,
    pub sign: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorSpec {
    Symbolic(String),
    Numeric(Matrix),
}

/// The pair `e: v1 → v2`, `ē: v2 → v1` with `D_ē = D_e*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgePair {
    pub id: String,
    pub source: String,
    pub target: String,
    pub operator: OperatorSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrajewskiDiagram {
    pub algebra: FiniteAlgebra,
    pub kodim: u8,
    pub vertices: Vec<DiagramVertex>,
    pub edges: Vec<EdgePair>,
    /// Declared pairs of the involution `j`; undeclared vertices are inferred.
    pub jmap: Vec<(String, String)>,
    pub families: u32,
}

impl KrajewskiDiagram {
    pub fn ko(&self) -> KoSigns {
        ko_signs(self.kodim % 8)
    }

    pub fn label_dimension(&self, label: RepLabel) -> u32 {
        self.algebra.factor(label.factor).map_or(0, |f| f.rep_dimension())
    }

    /// `1` or `1̄`: a one-dimensional representation of a copy of `C`.
    pub fn is_trivial_complex(&self, label: RepLabel) -> bool {
        self.algebra
            .factor(label.factor)
            .is_some_and(|f| f.kind == FieldKind::Complex && f.size == 1)
    }

    pub fn label_name(&self, label: RepLabel) -> String {
        let base = self
            .algebra
            .factor(label.factor)
            .map_or_else(|| format!("#{}", label.factor), |f| f.name.clone());
        if label.conjugate {
            format!("{base}~")
        } else {
            base
        }
    }

    pub fn vertex(&self, id: &str) -> Option<&DiagramVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Sorted copy, for order-insensitive comparison.
    pub fn canonicalized(&self) -> Self {
        let mut d = self.clone();
        d.vertices.sort();
        d.edges.sort();
        for p in d.jmap.iter_mut() {
            if p.1 < p.0 {
                std::mem::swap(&mut p.0, &mut p.1);
            }
        }
        d.jmap.sort();
        d.jmap.dedup();
        d
    }

    /// Equality up to the order of vertices, edges and jmap declarations.
    pub fn structurally_eq(&self, other: &Self) -> bool {
        self.canonicalized() == other.canonicalized()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    EdgePairing,
    RepLabels,
    FirstOrder,
    JInvolution,
    JSymmetry,
    Grading,
    OperatorShapes,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::EdgePairing,
        Check::RepLabels,
        Check::FirstOrder,
        Check::JInvolution,
        Check::JSymmetry,
        Check::Grading,
        Check::OperatorShapes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::EdgePairing => "edge_pairing",
            Check::RepLabels => "rep_labels",
            Check::FirstOrder => "first_order",
            Check::JInvolution => "j_involution",
            Check::JSymmetry => "j_symmetry",
            Check::Grading => "grading",
            Check::OperatorShapes => "operator_shapes",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn result(&self, check: Check) -> &CheckResult {
        self.checks.iter().find(|c| c.check == check).expect("every check is reported")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<16} {}", c.check.name(), if c.passed { "ok" } else { "FAIL" })?;
            for msg in &c.failures {
                writeln!(f, "  - {msg}")?;
            }
        }
        write!(f, "overall: {}", if self.passed { "pass" } else { "fail" })
    }
}

/// How an edge sits in the planar picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// Column and row labels both agree: part of `D_0`.
    Diagonal,
    /// Same row, different column: part of `Δ`.
    Horizontal,
    /// Same column, different row: part of `JΔJ⁻¹`.
    Vertical,
}

/// One orientation of an edge pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirEdge {
    pub pair: usize,
    pub reversed: bool,
}

/// A diagram that passed every check, with the involution and indices resolved.
#[derive(Clone, Debug)]
pub struct ValidDiagram {
    diagram: KrajewskiDiagram,
    index: HashMap<String, usize>,
    involution: Vec<usize>,
    endpoints: Vec<(usize, usize)>,
    classes: Vec<EdgeClass>,
    warnings: Vec<String>,
}

impl Deref for ValidDiagram {
    type Target = KrajewskiDiagram;
    fn deref(&self) -> &KrajewskiDiagram {
        &self.diagram
    }
}

impl ValidDiagram {
    pub fn new(diagram: KrajewskiDiagram) -> Result<Self, Box<ValidationReport>> {
        let (report, involution) = run_checks(&diagram);
        if !report.passed {
            return Err(Box::new(report));
        }
        let index = vertex_index(&diagram);
        let endpoints: Vec<(usize, usize)> =
            diagram.edges.iter().map(|e| (index[&e.source], index[&e.target])).collect();
        let classes = endpoints
            .iter()
            .map(|&(s, t)| classify(&diagram.vertices[s], &diagram.vertices[t]))
            .collect();
        Ok(Self {
            diagram,
            index,
            involution: involution.expect("a passing report resolves the involution"),
            endpoints,
            classes,
            warnings: report.warnings,
        })
    }

    pub fn diagram(&self) -> &KrajewskiDiagram {
        &self.diagram
    }

    pub fn into_inner(self) -> KrajewskiDiagram {
        self.diagram
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn vertex_count(&self) -> usize {
        self.diagram.vertices.len()
    }

    pub fn vertex_at(&self, i: usize) -> &DiagramVertex {
        &self.diagram.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn j(&self, v: usize) -> usize {
        self.involution[v]
    }

    pub fn edge_class(&self, pair: usize) -> EdgeClass {
        self.classes[pair]
    }

    pub fn endpoints(&self, pair: usize) -> (usize, usize) {
        self.endpoints[pair]
    }

    pub fn source(&self, e: DirEdge) -> usize {
        let (s, t) = self.endpoints[e.pair];
        if e.reversed {
            t
        } else {
            s
        }
    }

    pub fn target(&self, e: DirEdge) -> usize {
        let (s, t) = self.endpoints[e.pair];
        if e.reversed {
            s
        } else {
            t
        }
    }

    pub fn is_loop(&self, pair: usize) -> bool {
        let (s, t) = self.endpoints[pair];
        s == t
    }

    /// Outgoing oriented edges per vertex, loops at a single vertex excluded.
    pub fn adjacency(&self) -> Vec<Vec<DirEdge>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for pair in 0..self.diagram.edges.len() {
            if self.is_loop(pair) {
                continue;
            }
            let (s, t) = self.endpoints[pair];
            adj[s].push(DirEdge { pair, reversed: false });
            adj[t].push(DirEdge { pair, reversed: true });
        }
        adj
    }

    /// Edge pairs whose endpoints are the `j`-images of the given pair's endpoints.
    pub fn j_partners(&self, pair: usize) -> Vec<usize> {
        let (s, t) = self.endpoints[pair];
        let (js, jt) = (self.j(s), self.j(t));
        (0..self.diagram.edges.len())
            .filter(|&q| {
                let (a, b) = self.endpoints[q];
                (a, b) == (js, jt) || (a, b) == (jt, js)
            })
            .collect()
    }

    /// `dim H_F = families · Σ_v dim(n_v) · dim(m_v)`.
    pub fn hilbert_dimension(&self) -> u64 {
        let per_family: u64 = self
            .diagram
            .vertices
            .iter()
            .map(|v| {
                u64::from(self.label_dimension(v.col)) * u64::from(self.label_dimension(v.row))
            })
            .sum();
        per_family * u64::from(self.diagram.families)
    }

    /// Net multiplicity of each factor's defining representation in `H_F` under the
    /// left action; conjugate copies count negatively since they see `-tr X`.
    pub fn fundamental_multiplicities(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.algebra.factors().len()];
        for v in &self.diagram.vertices {
            let weight = i64::from(self.label_dimension(v.row)) * i64::from(self.families);
            out[v.col.factor] += if v.col.conjugate { -weight } else { weight };
        }
        out
    }

    pub fn dirac_decomposition(&self) -> DiracDecomposition {
        let mut out = DiracDecomposition::default();
        for (i, e) in self.diagram.edges.iter().enumerate() {
            let bucket = match self.classes[i] {
                EdgeClass::Diagonal => &mut out.d0,
                EdgeClass::Horizontal => &mut out.delta,
                EdgeClass::Vertical => &mut out.j_delta_j,
            };
            bucket.push(e.id.clone());
        }
        out
    }
}

/// Partition of the edge pairs according to `D_F = D_0 + Δ + JΔJ⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiracDecomposition {
    pub d0: Vec<String>,
    pub delta: Vec<String>,
    pub j_delta_j: Vec<String>,
}

fn classify(s: &DiagramVertex, t: &DiagramVertex) -> EdgeClass {
    match (s.col == t.col, s.row == t.row) {
        (true, true) => EdgeClass::Diagonal,
        (false, true) => EdgeClass::Horizontal,
        (true, false) => EdgeClass::Vertical,
        (false, false) => unreachable!("first-order condition is checked before classification"),
    }
}

fn vertex_index(d: &KrajewskiDiagram) -> HashMap<String, usize> {
    d.vertices.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect()
}

pub fn validate(d: &KrajewskiDiagram) -> ValidationReport {
    run_checks(d).0
}

struct Checker {
    results: BTreeMap<Check, Vec<String>>,
}

impl Checker {
    fn fail(&mut self, check: Check, msg: String) {
        self.results.entry(check).or_default().push(msg);
    }

    fn ok(&self, check: Check) -> bool {
        self.results.get(&check).is_none_or(Vec::is_empty)
    }
}

fn run_checks(d: &KrajewskiDiagram) -> (ValidationReport, Option<Vec<usize>>) {
    let mut ck = Checker { results: Check::ALL.iter().map(|&c| (c, Vec::new())).collect() };
    let mut warnings = Vec::new();
    let ko = d.ko();
    if (2..=5).contains(&ko.n) {
        warnings.push(format!(
            "KO-dimension {} uses the plain involution; the doubled-vertex refinement for KO-dimensions 2-5 is not modelled",
            ko.n
        ));
    }

    // structure: unique ids, edges reference known vertices
    let mut seen = HashMap::new();
    for v in &d.vertices {
        if seen.insert(v.id.as_str(), ()).is_some() {
            ck.fail(Check::EdgePairing, format!("duplicate vertex id `{}`", v.id));
        }
    }
    let mut seen_edges = HashMap::new();
    for e in &d.edges {
        if seen_edges.insert(e.id.as_str(), ()).is_some() {
            ck.fail(Check::EdgePairing, format!("duplicate edge id `{}`", e.id));
        }
        for end in [&e.source, &e.target] {
            if d.vertex(end).is_none() {
                ck.fail(Check::EdgePairing, format!("edge `{}` references unknown vertex `{end}`", e.id));
            }
        }
    }
    if d.families == 0 {
        ck.fail(Check::EdgePairing, "families must be positive".into());
    }

    for v in &d.vertices {
        for (slot, label) in [("column", v.col), ("row", v.row)] {
            match d.algebra.factor(label.factor) {
                None => ck.fail(
                    Check::RepLabels,
                    format!("vertex `{}`: {slot} label refers to factor #{}", v.id, label.factor),
                ),
                Some(f) if label.conjugate && f.kind != FieldKind::Complex => ck.fail(
                    Check::RepLabels,
                    format!("vertex `{}`: {slot} label `{}~` conjugates a non-complex factor", v.id, f.name),
                ),
                _ => {}
            }
        }
    }

    let structural = ck.ok(Check::EdgePairing) && ck.ok(Check::RepLabels);
    if !structural {
        for c in [Check::FirstOrder, Check::JInvolution, Check::JSymmetry, Check::Grading, Check::OperatorShapes] {
            ck.fail(c, "skipped: structural checks failed".into());
        }
        return (finish(ck, warnings), None);
    }

    let index = vertex_index(d);
    let ends: Vec<(usize, usize)> = d.edges.iter().map(|e| (index[&e.source], index[&e.target])).collect();

    let mut first_order_ok = vec![true; d.edges.len()];
    for (i, e) in d.edges.iter().enumerate() {
        let (s, t) = (&d.vertices[ends[i].0], &d.vertices[ends[i].1]);
        if s.col != t.col && s.row != t.row {
            first_order_ok[i] = false;
            ck.fail(
                Check::FirstOrder,
                format!(
                    "edge `{}` ({} -> {}) changes both column ({} vs {}) and row ({} vs {})",
                    e.id,
                    s.id,
                    t.id,
                    d.label_name(s.col),
                    d.label_name(t.col),
                    d.label_name(s.row),
                    d.label_name(t.row)
                ),
            );
        }
    }

    let involution = resolve_involution(d, &index, &mut ck);

    if let Some(j) = &involution {
        let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
        let key = |a: usize, b: usize| if a <= b { (a, b) } else { (b, a) };
        for &(s, t) in &ends {
            *counts.entry(key(s, t)).or_default() += 1;
        }
        for (i, &(s, t)) in ends.iter().enumerate() {
            let mirrored = key(j[s], j[t]);
            if counts.get(&mirrored) != counts.get(&key(s, t)) {
                ck.fail(
                    Check::JSymmetry,
                    format!(
                        "edge `{}` ({} -- {}) has no matching mirror edge between {} and {}",
                        d.edges[i].id,
                        d.vertices[s].id,
                        d.vertices[t].id,
                        d.vertices[j[s]].id,
                        d.vertices[j[t]].id
                    ),
                );
            }
        }
    } else {
        ck.fail(Check::JSymmetry, "skipped: involution unresolved".into());
    }

    match ko.eps_double_prime {
        Some(epp) => {
            for v in d.vertices.iter().filter(|v| v.sign.is_none()) {
                ck.fail(Check::Grading, format!("vertex `{}` has no sign (KO-dimension {} is even)", v.id, ko.n));
            }
            for (i, &(s, t)) in ends.iter().enumerate() {
                let (vs, vt) = (&d.vertices[s], &d.vertices[t]);
                if let (Some(a), Some(b)) = (vs.sign, vt.sign) {
                    if a == b {
                        ck.fail(
                            Check::Grading,
                            format!(
                                "edge `{}` joins `{}` and `{}`, both of sign {}",
                                d.edges[i].id,
                                vs.id,
                                vt.id,
                                a.symbol()
                            ),
                        );
                    }
                }
            }
            if let Some(j) = &involution {
                for (v, &jv) in j.iter().enumerate() {
                    let (a, b) = (d.vertices[v].sign, d.vertices[jv].sign);
                    if let (Some(a), Some(b)) = (a, b) {
                        if b != a.times(epp) && v <= jv {
                            ck.fail(
                                Check::Grading,
                                format!(
                                    "vertex `{}` has sign {} but its mirror `{}` has sign {} (expected {})",
                                    d.vertices[v].id,
                                    a.symbol(),
                                    d.vertices[jv].id,
                                    b.symbol(),
                                    a.times(epp).symbol()
                                ),
                            );
                        }
                    }
                }
            }
        }
        None => {
            for v in d.vertices.iter().filter(|v| v.sign.is_some()) {
                ck.fail(Check::Grading, format!("vertex `{}` is signed but KO-dimension {} is odd", v.id, ko.n));
            }
        }
    }

    for (i, e) in d.edges.iter().enumerate() {
        let OperatorSpec::Numeric(m) = &e.operator else { continue };
        if m.is_zero() {
            ck.fail(Check::OperatorShapes, format!("edge `{}` carries the zero matrix", e.id));
        }
        if !first_order_ok[i] {
            continue;
        }
        let (s, t) = (&d.vertices[ends[i].0], &d.vertices[ends[i].1]);
        let expected = match classify(s, t) {
            EdgeClass::Horizontal => (d.label_dimension(t.col), d.label_dimension(s.col)),
            EdgeClass::Vertical => (d.label_dimension(t.row), d.label_dimension(s.row)),
            EdgeClass::Diagonal => (1, 1),
        };
        let got = (m.rows as u32, m.cols as u32);
        if got != expected {
            ck.fail(
                Check::OperatorShapes,
                format!(
                    "edge `{}` matrix is {}x{}, expected {}x{}",
                    e.id, got.0, got.1, expected.0, expected.1
                ),
            );
        }
    }

    let report = finish(ck, warnings);
    let involution = if report.passed { involution } else { None };
    (report, involution)
}

fn finish(ck: Checker, warnings: Vec<String>) -> ValidationReport {
    let checks: Vec<CheckResult> = Check::ALL
        .iter()
        .map(|&c| {
            let failures = ck.results.get(&c).cloned().unwrap_or_default();
            CheckResult { check: c, passed: failures.is_empty(), failures }
        })
        .collect();
    ValidationReport { passed: checks.iter().all(|c| c.passed), checks, warnings }
}

fn resolve_involution(
    d: &KrajewskiDiagram,
    index: &HashMap<String, usize>,
    ck: &mut Checker,
) -> Option<Vec<usize>> {
    let n = d.vertices.len();
    let mut j: Vec<Option<usize>> = vec![None; n];
    let mut ok = true;
    for (a, b) in &d.jmap {
        let (Some(&ia), Some(&ib)) = (index.get(a), index.get(b)) else {
            ck.fail(Check::JInvolution, format!("jmap `{a} <-> {b}` references an unknown vertex"));
            ok = false;
            continue;
        };
        for (x, y) in [(ia, ib), (ib, ia)] {
            match j[x] {
                Some(prev) if prev != y => {
                    ck.fail(
                        Check::JInvolution,
                        format!(
                            "vertex `{}` is mapped to both `{}` and `{}`",
                            d.vertices[x].id, d.vertices[prev].id, d.vertices[y].id
                        ),
                    );
                    ok = false;
                }
                _ => j[x] = Some(y),
            }
        }
    }
    if !ok {
        return None;
    }

    let declared: Vec<bool> = j.iter().map(Option::is_some).collect();
    let swapped = |v: usize, w: usize| d.vertices[w].col == d.vertices[v].row && d.vertices[w].row == d.vertices[v].col;
    for v in 0..n {
        if declared[v] {
            continue;
        }
        let candidates: Vec<usize> = (0..n).filter(|&w| !declared[w] && swapped(v, w)).collect();
        match candidates.as_slice() {
            [w] => j[v] = Some(*w),
            [] => {
                ck.fail(
                    Check::JInvolution,
                    format!(
                        "vertex `{}` ({}, {}) has no mirror vertex ({}, {})",
                        d.vertices[v].id,
                        d.label_name(d.vertices[v].col),
                        d.label_name(d.vertices[v].row),
                        d.label_name(d.vertices[v].row),
                        d.label_name(d.vertices[v].col)
                    ),
                );
                ok = false;
            }
            many => {
                let names: Vec<&str> = many.iter().map(|&w| d.vertices[w].id.as_str()).collect();
                ck.fail(
                    Check::JInvolution,
                    format!(
                        "mirror of vertex `{}` is ambiguous ({}); declare it with `jmap`",
                        d.vertices[v].id,
                        names.join(", ")
                    ),
                );
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    let j: Vec<usize> = j.into_iter().map(|x| x.expect("all resolved")).collect();
    for v in 0..n {
        if j[j[v]] != v {
            ck.fail(
                Check::JInvolution,
                format!("j is not involutive at `{}`", d.vertices[v].id),
            );
            ok = false;
        }
        if !swapped(v, j[v]) {
            ck.fail(
                Check::JInvolution,
                format!(
                    "j maps `{}` to `{}` without swapping column and row labels",
                    d.vertices[v].id, d.vertices[j[v]].id
                ),
            );
            ok = false;
        }
    }
    ok.then_some(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, Builtin};

    #[test]
    fn sign_table() {
        assert_eq!(ko_signs(6), KoSigns { n: 6, eps: 1, eps_prime: 1, eps_double_prime: Some(-1) });
        assert_eq!(ko_signs(0), KoSigns { n: 0, eps: 1, eps_prime: 1, eps_double_prime: Some(1) });
        assert_eq!(ko_signs(1), KoSigns { n: 1, eps: 1, eps_prime: -1, eps_double_prime: None });
        let row: Vec<i8> = (0..8).map(|n| ko_signs(n).eps).collect();
        assert_eq!(row, [1, 1, -1, -1, -1, -1, 1, 1]);
        let row: Vec<i8> = (0..8).map(|n| ko_signs(n).eps_prime).collect();
        assert_eq!(row, [1, -1, 1, 1, 1, -1, 1, 1]);
        let row: Vec<Option<i8>> = (0..8).map(|n| ko_signs(n).eps_double_prime).collect();
        assert_eq!(row, [Some(1), None, Some(-1), None, Some(1), None, Some(-1), None]);
    }

    #[test]
    fn flipped_sign_names_the_vertex() {
        let mut d = builtin(&Builtin::StandardModel);
        let v = d.vertices.iter_mut().find(|v| v.id == "eR").unwrap();
        v.sign = Some(Sign::Plus);
        let report = validate(&d);
        assert!(!report.passed);
        let grading = report.result(Check::Grading);
        assert!(!grading.passed);
        assert!(grading.failures.iter().any(|m| m.contains("`eR`")));
    }

    #[test]
    fn diagonal_edge_breaks_first_order() {
        let mut d = builtin(&Builtin::StandardModel);
        // lL = (2, 1°) and uR = (1, 3°) differ in both labels
        d.edges.push(EdgePair {
            id: "bad".into(),
            source: "lL".into(),
            target: "uR".into(),
            operator: OperatorSpec::Symbolic("x".into()),
        });
        let report = validate(&d);
        let fo = report.result(Check::FirstOrder);
        assert!(!fo.passed);
        assert!(fo.failures[0].contains("`bad`"));
    }

    #[test]
    fn ambiguous_mirror_demands_jmap() {
        let mut d = builtin(&Builtin::StandardModel);
        d.jmap.retain(|(a, _)| a != "nuR");
        let report = validate(&d);
        let j = report.result(Check::JInvolution);
        assert!(!j.passed);
        assert!(j.failures.iter().any(|m| m.contains("ambiguous")));
    }

    #[test]
    fn unique_mirrors_are_inferred() {
        let mut d = builtin(&Builtin::StandardModel);
        d.jmap.retain(|(a, _)| a == "nuR");
        let v = ValidDiagram::new(d).unwrap();
        let lepton = v.index_of("lL").unwrap();
        assert_eq!(v.vertex_at(v.j(lepton)).id, "lLc");
    }

    #[test]
    fn unknown_vertex_in_edge() {
        let mut d = builtin(&Builtin::YangMills(2));
        d.edges.push(EdgePair {
            id: "e".into(),
            source: "v".into(),
            target: "ghost".into(),
            operator: OperatorSpec::Symbolic("x".into()),
        });
        let r = validate(&d);
        assert!(!r.result(Check::EdgePairing).passed);
        assert!(!r.result(Check::FirstOrder).passed, "later checks are skipped");
    }

    #[test]
    fn standard_model_decomposition() {
        let v = ValidDiagram::new(builtin(&Builtin::StandardModel)).unwrap();
        let dd = v.dirac_decomposition();
        assert_eq!(dd.d0, vec!["maj"]);
        let mut delta = dd.delta.clone();
        delta.sort();
        assert_eq!(delta, vec!["d", "e", "nu", "u"]);
        let mut jdj = dd.j_delta_j.clone();
        jdj.sort();
        assert_eq!(jdj, vec!["d_c", "e_c", "nu_c", "u_c"]);
        // JΔJ is the mirror image of Δ
        for id in &dd.delta {
            let i = v.edges.iter().position(|e| &e.id == id).unwrap();
            let partners = v.j_partners(i);
            assert_eq!(partners.len(), 1);
            assert_eq!(v.edge_class(partners[0]), EdgeClass::Vertical);
        }
    }

    #[test]
    fn loop_edge_is_diagonal() {
        let mut d = builtin(&Builtin::YangMills(2));
        d.kodim = 1;
        d.vertices[0].sign = None;
        d.edges.push(EdgePair {
            id: "l".into(),
            source: "v".into(),
            target: "v".into(),
            operator: OperatorSpec::Symbolic("x".into()),
        });
        let v = ValidDiagram::new(d).unwrap();
        assert_eq!(v.dirac_decomposition().d0, vec!["l"]);
        assert!(v.adjacency()[0].is_empty());
    }

    #[test]
    fn hilbert_dimensions() {
        let sm = ValidDiagram::new(builtin(&Builtin::StandardModel)).unwrap();
        assert_eq!(sm.hilbert_dimension(), 96);
        for n in 1..6 {
            let ym = ValidDiagram::new(builtin(&Builtin::YangMills(n))).unwrap();
            assert_eq!(ym.hilbert_dimension(), u64::from(n * n));
        }
    }

    #[test]
    fn single_vertex_with_families() {
        use crate::algebra::{AlgebraFactor, FiniteAlgebra};
        let d = KrajewskiDiagram {
            algebra: FiniteAlgebra::new(vec![
                AlgebraFactor::new("c1", FieldKind::Complex, 1),
                AlgebraFactor::new("h2", FieldKind::Quaternion, 1),
            ])
            .unwrap(),
            kodim: 1,
            vertices: vec![
                DiagramVertex { id: "a".into(), col: RepLabel::new(1), row: RepLabel::new(0), sign: None },
            ],
            edges: vec![],
            jmap: vec![],
            families: 3,
        };
        // the mirror (1, 2°) is missing, so the diagram is not valid, but the
        // dimension formula itself is just the weighted sum
        assert!(!validate(&d).passed);
        let mut full = d.clone();
        full.vertices.push(DiagramVertex { id: "b".into(), col: RepLabel::new(0), row: RepLabel::new(1), sign: None });
        let v = ValidDiagram::new(full).unwrap();
        assert_eq!(v.hilbert_dimension(), 3 * (2 + 2));
    }
}
