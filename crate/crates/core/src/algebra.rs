//! Wedderburn data of the finite algebra and the gauge Lie algebra it induces.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldKind {
    Real,
    Complex,
    Quaternion,
}

impl FieldKind {
    pub fn symbol(self) -> char {
        match self {
            FieldKind::Real => 'R',
            FieldKind::Complex => 'C',
            FieldKind::Quaternion => 'H',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "R" => Some(FieldKind::Real),
            "C" => Some(FieldKind::Complex),
            "H" => Some(FieldKind::Quaternion),
            _ => None,
        }
    }
}

/// One summand `M_k(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraFactor {
    pub name: String,
    pub kind: FieldKind,
    pub size: u32,
}

impl AlgebraFactor {
    pub fn new(name: impl Into<String>, kind: FieldKind, size: u32) -> Self {
        Self { name: name.into(), kind, size }
    }

    /// Complex dimension of the defining representation. `M_k(H)` acts on `C^{2k}`.
    pub fn rep_dimension(&self) -> u32 {
        match self.kind {
            FieldKind::Quaternion => 2 * self.size,
            _ => self.size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one factor")]
    Empty,
    #[error("factor `{0}` has size 0")]
    ZeroSize(String),
    #[error("expected {expected} multiplicities (one per factor), got {got}")]
    MultiplicityLength { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    factors: Vec<AlgebraFactor>,
}

impl FiniteAlgebra {
    pub fn new(factors: Vec<AlgebraFactor>) -> Result<Self, AlgebraError> {
        if factors.is_empty() {
            return Err(AlgebraError::Empty);
        }
        if let Some(f) = factors.iter().find(|f| f.size == 0) {
            return Err(AlgebraError::ZeroSize(f.name.clone()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[AlgebraFactor] {
        &self.factors
    }

    pub fn factor(&self, index: usize) -> Option<&AlgebraFactor> {
        self.factors.get(index)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.name == name)
    }

    pub fn complex_count(&self) -> usize {
        self.factors.iter().filter(|f| f.kind == FieldKind::Complex).count()
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match (x.size, x.kind) {
                (1, k) => k.symbol().to_string(),
                (n, k) => format!("M{n}({})", k.symbol()),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimpleKind {
    O,
    Su,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub kind: SimpleKind,
    pub rank: u32,
    /// Index of the algebra factor this summand comes from.
    pub factor_index: usize,
}

impl SimpleFactor {
    pub fn dimension(&self) -> u64 {
        let k = u64::from(self.rank);
        match self.kind {
            SimpleKind::O => k * (k - 1) / 2,
            SimpleKind::Su => k * k - 1,
            SimpleKind::Sp => k * (2 * k + 1),
        }
    }

    /// `sp(1) ≅ su(2)`; the only isomorphism we annotate.
    pub fn isomorphism_note(&self) -> Option<&'static str> {
        (self.kind == SimpleKind::Sp && self.rank == 1).then_some("≅ su(2)")
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            SimpleKind::O => "o",
            SimpleKind::Su => "su",
            SimpleKind::Sp => "sp",
        };
        write!(f, "{name}({})", self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeAlgebraDecomposition {
    pub simple_factors: Vec<SimpleFactor>,
    pub abelian_rank: u32,
}

impl fmt::Display for GaugeAlgebraDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .simple_factors
            .iter()
            .map(|s| match s.isomorphism_note() {
                Some(note) => format!("{s} ({note})"),
                None => s.to_string(),
            })
            .collect();
        match self.abelian_rank {
            0 => {}
            1 => parts.push("u(1)".into()),
            r => parts.push(format!("u(1)^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `su(A_F) ≅ ⊕ su(k_i) ⊕ u(1)^{C-1}` with `o`/`su`/`sp` chosen by the field.
pub fn gauge_lie_algebra(algebra: &FiniteAlgebra) -> GaugeAlgebraDecomposition {
    let simple_factors = algebra
        .factors()
        .iter()
        .enumerate()
        .filter_map(|(i, f)| {
            let kind = match f.kind {
                FieldKind::Real => SimpleKind::O,
                FieldKind::Complex => SimpleKind::Su,
                FieldKind::Quaternion => SimpleKind::Sp,
            };
            let s = SimpleFactor { kind, rank: f.size, factor_index: i };
            (s.dimension() > 0).then_some(s)
        })
        .collect();
    let c = algebra.complex_count() as u32;
    GaugeAlgebraDecomposition { simple_factors, abelian_rank: c.saturating_sub(1) }
}

pub fn algebra_dimension(decomp: &GaugeAlgebraDecomposition) -> u64 {
    decomp.simple_factors.iter().map(SimpleFactor::dimension).sum::<u64>()
        + u64::from(decomp.abelian_rank)
}

/// The trace-zero condition restricted to the `u(1)` generators of the complex factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularityRelation {
    /// `(factor_index, coefficient)`, complex factors with nonzero coefficient only.
    pub constraint: Vec<(usize, i64)>,
    pub effective_abelian_rank: u32,
    /// Set when no complex factor has nonzero multiplicity, so nothing is cut.
    pub degenerate: bool,
}

pub fn unimodularity_relation(
    algebra: &FiniteAlgebra,
    multiplicities: &[i64],
) -> Result<UnimodularityRelation, AlgebraError> {
    if multiplicities.len() != algebra.factors().len() {
        return Err(AlgebraError::MultiplicityLength {
            expected: algebra.factors().len(),
            got: multiplicities.len(),
        });
    }
    let constraint: Vec<(usize, i64)> = algebra
        .factors()
        .iter()
        .zip(multiplicities)
        .enumerate()
        .filter(|(_, (f, &m))| f.kind == FieldKind::Complex && m != 0)
        .map(|(i, (_, &m))| (i, m))
        .collect();
    let c = algebra.complex_count() as u32;
    let degenerate = constraint.is_empty();
    let effective_abelian_rank = if degenerate { c } else { c - 1 };
    Ok(UnimodularityRelation { constraint, effective_abelian_rank, degenerate })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepCorrespondence {
    pub holds: bool,
    pub diagnostic: Option<String>,
}

/// Irreps of `A_F` and of `su(A_F)` match when there is no real factor and either no
/// complex factor or at least one complex factor of size > 1.
pub fn irrep_correspondence_check(algebra: &FiniteAlgebra) -> IrrepCorrespondence {
    if let Some(f) = algebra.factors().iter().find(|f| f.kind == FieldKind::Real) {
        return IrrepCorrespondence {
            holds: false,
            diagnostic: Some(format!("factor `{}` is a real matrix algebra", f.name)),
        };
    }
    let complex: Vec<&AlgebraFactor> =
        algebra.factors().iter().filter(|f| f.kind == FieldKind::Complex).collect();
    if !complex.is_empty() && complex.iter().all(|f| f.size == 1) {
        let names: Vec<&str> = complex.iter().map(|f| f.name.as_str()).collect();
        return IrrepCorrespondence {
            holds: false,
            diagnostic: Some(format!(
                "complex factors {} are all copies of C; none is non-trivial",
                names.join(", ")
            )),
        };
    }
    IrrepCorrespondence { holds: true, diagnostic: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(spec: &[(FieldKind, u32)]) -> FiniteAlgebra {
        FiniteAlgebra::new(
            spec.iter()
                .enumerate()
                .map(|(i, &(k, n))| AlgebraFactor::new(format!("f{i}"), k, n))
                .collect(),
        )
        .unwrap()
    }

    use FieldKind::*;

    #[test]
    fn standard_model_gauge_algebra() {
        let d = gauge_lie_algebra(&alg(&[(Complex, 1), (Quaternion, 1), (Complex, 3)]));
        let kinds: Vec<_> = d.simple_factors.iter().map(|s| (s.kind, s.rank)).collect();
        assert_eq!(kinds, vec![(SimpleKind::Sp, 1), (SimpleKind::Su, 3)]);
        assert_eq!(d.abelian_rank, 1);
        assert_eq!(algebra_dimension(&d), 12);
        assert_eq!(d.to_string(), "sp(1) (≅ su(2)) + su(3) + u(1)");
    }

    #[test]
    fn single_matrix_factor() {
        for n in 2..6u32 {
            let d = gauge_lie_algebra(&alg(&[(Complex, n)]));
            assert_eq!(d.abelian_rank, 0);
            assert_eq!(algebra_dimension(&d), u64::from(n * n - 1));
        }
    }

    #[test]
    fn real_line_is_trivial() {
        let d = gauge_lie_algebra(&alg(&[(Real, 1)]));
        assert!(d.simple_factors.is_empty());
        assert_eq!(d.abelian_rank, 0);
        assert_eq!(algebra_dimension(&d), 0);
    }

    #[test]
    fn empty_and_zero_size_rejected() {
        assert_eq!(FiniteAlgebra::new(vec![]), Err(AlgebraError::Empty));
        assert!(FiniteAlgebra::new(vec![AlgebraFactor::new("x", Complex, 0)]).is_err());
    }

    #[test]
    fn unimodularity_cases() {
        let a = alg(&[(Complex, 1)]);
        let r = unimodularity_relation(&a, &[1]).unwrap();
        assert_eq!(r.effective_abelian_rank, 0);
        assert!(!r.degenerate);

        let a = alg(&[(Complex, 1), (Complex, 1)]);
        let r = unimodularity_relation(&a, &[0, 0]).unwrap();
        assert_eq!(r.effective_abelian_rank, 2);
        assert!(r.degenerate);
        assert!(r.constraint.is_empty());

        assert_eq!(
            unimodularity_relation(&a, &[1]),
            Err(AlgebraError::MultiplicityLength { expected: 2, got: 1 })
        );
    }

    #[test]
    fn irrep_correspondence() {
        assert!(irrep_correspondence_check(&alg(&[(Complex, 1), (Quaternion, 1), (Complex, 3)])).holds);
        let r = irrep_correspondence_check(&alg(&[(Real, 1), (Complex, 2)]));
        assert!(!r.holds);
        assert!(r.diagnostic.unwrap().contains("f0"));
        assert!(!irrep_correspondence_check(&alg(&[(Complex, 1), (Complex, 1)])).holds);
        assert!(irrep_correspondence_check(&alg(&[(Quaternion, 2)])).holds);
    }

    #[test]
    fn dimension_under_concatenation() {
        // abelian ranks do not add naively: C1 + C2 - 1 versus (C1 - 1) + (C2 - 1)
        let left = [(Complex, 2), (Quaternion, 1)];
        let right = [(Complex, 3), (Complex, 1), (Real, 3)];
        let joined: Vec<_> = left.iter().chain(right.iter()).copied().collect();
        let dl = gauge_lie_algebra(&alg(&left));
        let dr = gauge_lie_algebra(&alg(&right));
        let dj = gauge_lie_algebra(&alg(&joined));
        let simple = |d: &GaugeAlgebraDecomposition| d.simple_factors.iter().map(SimpleFactor::dimension).sum::<u64>();
        assert_eq!(simple(&dj), simple(&dl) + simple(&dr));
        assert_eq!(dj.abelian_rank, 1 + 2 - 1);
        assert_eq!(algebra_dimension(&dj), algebra_dimension(&dl) + algebra_dimension(&dr) + 1);
    }
}
