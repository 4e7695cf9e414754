//! Diagrams shipped with the tool.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraFactor, FieldKind, FiniteAlgebra};
use crate::diagram::{DiagramVertex, EdgePair, KrajewskiDiagram, OperatorSpec, RepLabel, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `C ⊕ H ⊕ M_3(C)` with one generation drawn and three families.
    StandardModel,
    /// Same algebra, a single row of edges `1 – 2 – 1̄ – 3` and its mirror.
    /// Its pair of 2-cycles `{12, 1̄3}` cannot be lifted.
    Chain,
    /// `M_N(C)` on the single vertex `(N, N°)`.
    YangMills(u32),
}

impl Builtin {
    pub const NAMES: [&'static str; 3] = ["sm", "chain", "ym[:N]"];

    pub fn describe(&self) -> String {
        match self {
            Builtin::StandardModel => "Standard Model, C + H + M3(C), KO-dimension 6, 3 families".into(),
            Builtin::Chain => "chain 1 - 2 - 1~ - 3 over C + H + M3(C), KO-dimension 0".into(),
            Builtin::YangMills(n) => format!("Yang-Mills, M{n}(C) on a single vertex"),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::StandardModel => write!(f, "sm"),
            Builtin::Chain => write!(f, "chain"),
            Builtin::YangMills(n) => write!(f, "ym:{n}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sm" => Ok(Builtin::StandardModel),
            "chain" => Ok(Builtin::Chain),
            "ym" => Ok(Builtin::YangMills(3)),
            _ => {
                let n = s
                    .strip_prefix("ym:")
                    .ok_or_else(|| format!("unknown builtin `{s}` (expected one of sm, chain, ym[:N])"))?;
                match n.parse::<u32>() {
                    Ok(n) if n >= 1 => Ok(Builtin::YangMills(n)),
                    _ => Err(format!("`{n}` is not a positive matrix size")),
                }
            }
        }
    }
}

pub fn builtin(which: &Builtin) -> KrajewskiDiagram {
    match which {
        Builtin::StandardModel => standard_model(),
        Builtin::Chain => chain(),
        Builtin::YangMills(n) => yang_mills(*n),
    }
}

fn sm_algebra() -> FiniteAlgebra {
    FiniteAlgebra::new(vec![
        AlgebraFactor::new("c1", FieldKind::Complex, 1),
        AlgebraFactor::new("h2", FieldKind::Quaternion, 1),
        AlgebraFactor::new("c3", FieldKind::Complex, 3),
    ])
    .expect("non-empty")
}

const C1: RepLabel = RepLabel { factor: 0, conjugate: false };
const C1B: RepLabel = RepLabel { factor: 0, conjugate: true };
const H2: RepLabel = RepLabel { factor: 1, conjugate: false };
const C3: RepLabel = RepLabel { factor: 2, conjugate: false };

fn vertex(id: &str, col: RepLabel, row: RepLabel, sign: Option<Sign>) -> DiagramVertex {
    DiagramVertex { id: id.into(), col, row, sign }
}

fn edge(id: &str, source: &str, target: &str, label: &str) -> EdgePair {
    EdgePair {
        id: id.into(),
        source: source.into(),
        target: target.into(),
        operator: OperatorSpec::Symbolic(label.into()),
    }
}

fn standard_model() -> KrajewskiDiagram {
    use Sign::{Minus, Plus};
    let particles = [
        ("lL", H2, C1, Plus),
        ("nuR", C1, C1, Minus),
        ("eR", C1B, C1, Minus),
        ("qL", H2, C3, Plus),
        ("uR", C1, C3, Minus),
        ("dR", C1B, C3, Minus),
    ];
    let mut vertices = Vec::new();
    let mut jmap = Vec::new();
    for (id, col, row, sign) in particles {
        let mirror = format!("{id}c");
        let flipped = if sign == Plus { Minus } else { Plus };
        vertices.push(vertex(id, col, row, Some(sign)));
        vertices.push(vertex(&mirror, row, col, Some(flipped)));
        jmap.push((id.to_string(), mirror));
    }
    let mut edges = Vec::new();
    for (id, s, t, label) in [
        ("nu", "lL", "nuR", "f_up"),
        ("e", "lL", "eR", "f_down"),
        ("u", "qL", "uR", "f_up"),
        ("d", "qL", "dR", "f_down"),
    ] {
        edges.push(edge(id, s, t, label));
        edges.push(edge(&format!("{id}_c"), &format!("{s}c"), &format!("{t}c"), label));
    }
    edges.push(edge("maj", "nuR", "nuRc", "majorana"));
    KrajewskiDiagram { algebra: sm_algebra(), kodim: 6, vertices, edges, jmap, families: 3 }
}

fn chain() -> KrajewskiDiagram {
    use Sign::{Minus, Plus};
    let vertices = vec![
        vertex("v11", C1, C1, Some(Plus)),
        vertex("v21", H2, C1, Some(Minus)),
        vertex("vb1", C1B, C1, Some(Plus)),
        vertex("v31", C3, C1, Some(Minus)),
        vertex("v12", C1, H2, Some(Minus)),
        vertex("v1b", C1, C1B, Some(Plus)),
        vertex("v13", C1, C3, Some(Minus)),
    ];
    let edges = vec![
        edge("f12", "v11", "v21", "f12"),
        edge("f21b", "v21", "vb1", "f21b"),
        edge("f1b3", "vb1", "v31", "f1b3"),
        edge("f12_c", "v11", "v12", "f12"),
        edge("f21b_c", "v12", "v1b", "f21b"),
        edge("f1b3_c", "v1b", "v13", "f1b3"),
    ];
    KrajewskiDiagram { algebra: sm_algebra(), kodim: 0, vertices, edges, jmap: Vec::new(), families: 1 }
}

fn yang_mills(n: u32) -> KrajewskiDiagram {
    let algebra = FiniteAlgebra::new(vec![AlgebraFactor::new(format!("c{n}"), FieldKind::Complex, n)])
        .expect("non-empty");
    let label = RepLabel::new(0);
    KrajewskiDiagram {
        algebra,
        kodim: 0,
        vertices: vec![vertex("v", label, label, Some(Sign::Plus))],
        edges: Vec::new(),
        jmap: Vec::new(),
        families: 1,
    }
}
