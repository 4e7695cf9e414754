//! Power counting for the higher-derivative gauge theory obtained by truncating
//! the asymptotic expansion at order `n`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::irrep_correspondence_check;
use crate::diagram::ValidDiagram;
use crate::rconnect::{check_r_connected, Bounds, RConnectReport};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PowerCountError {
    #[error("expansion order must be an even integer >= 4, got {0}")]
    BadOrder(u32),
    #[error("vertex with {gauge} gauge and {higgs} Higgs legs exceeds expansion order {n}")]
    ValenceExceedsOrder { gauge: u32, higgs: u32, n: u32 },
}

/// Truncation order `n` of the expansion (even, at least 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExpansionOrder(u32);

impl ExpansionOrder {
    pub fn new(n: u32) -> Result<Self, PowerCountError> {
        if n >= 4 && n.is_multiple_of(2) {
            Ok(Self(n))
        } else {
            Err(PowerCountError::BadOrder(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Number of gauge–Higgs vertices with the given numbers of legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexCount {
    pub gauge: u32,
    pub higgs: u32,
    pub count: u64,
}

/// Line and vertex census of a connected Feynman graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphProfile {
    pub loops: u64,
    #[serde(default)]
    pub internal_gauge: u64,
    #[serde(default)]
    pub internal_higgs: u64,
    #[serde(default)]
    pub internal_ghost: u64,
    #[serde(default)]
    pub vertices: Vec<VertexCount>,
    /// Ghost–ghost–gauge vertices.
    #[serde(default)]
    pub ghost_gauge_vertices: u64,
    /// Ghost–ghost–Higgs vertices.
    #[serde(default)]
    pub ghost_higgs_vertices: u64,
    #[serde(default)]
    pub external_gauge: u64,
    #[serde(default)]
    pub external_higgs: u64,
    #[serde(default)]
    pub external_ghost: u64,
}

impl GraphProfile {
    pub fn vertex_total(&self) -> i64 {
        self.vertices.iter().map(|v| v.count as i64).sum()
    }

    pub fn internal_total(&self) -> i64 {
        (self.internal_gauge + self.internal_higgs + self.internal_ghost) as i64
    }

    pub fn external_total(&self) -> i64 {
        (self.external_gauge + self.external_higgs + self.external_ghost) as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    pub holds: bool,
    pub checks: Vec<IdentityCheck>,
}

/// Half-edge counting for each field type, Euler's formula, and valence ≥ 3.
pub fn validate_profile(p: &GraphProfile) -> ProfileReport {
    let sum_v = |f: &dyn Fn(&VertexCount) -> i64| p.vertices.iter().map(|v| f(v) * v.count as i64).sum::<i64>();
    let (va, vc) = (p.ghost_gauge_vertices as i64, p.ghost_higgs_vertices as i64);
    let check = |name, lhs, rhs| IdentityCheck { name, lhs, rhs, holds: lhs == rhs };
    let low_valence = p.vertices.iter().filter(|v| v.count > 0 && v.gauge + v.higgs < 3).count() as i64;
    let checks = vec![
        check(
            "gauge half-edges",
            2 * p.internal_gauge as i64 + p.external_gauge as i64,
            sum_v(&|v| i64::from(v.gauge)) + va,
        ),
        check(
            "higgs half-edges",
            2 * p.internal_higgs as i64 + p.external_higgs as i64,
            sum_v(&|v| i64::from(v.higgs)) + vc,
        ),
        check("ghost half-edges", 2 * p.internal_ghost as i64 + p.external_ghost as i64, 2 * va + 2 * vc),
        check("euler", p.loops as i64, p.internal_total() - p.vertex_total() - va - vc + 1),
        check("vertex valence", low_valence, 0),
    ];
    ProfileReport { holds: checks.iter().all(|c| c.holds), checks }
}

/// `4L − (n−2)(I_A + I_χ + Ĩ) + Σ V_ij (n−i−j) + Ṽ_A (n−3) + Ṽ_χ (n−4)`.
pub fn omega_bound(p: &GraphProfile, n: ExpansionOrder) -> Result<i64, PowerCountError> {
    let n = n.get();
    if let Some(v) = p.vertices.iter().find(|v| v.gauge + v.higgs > n) {
        return Err(PowerCountError::ValenceExceedsOrder { gauge: v.gauge, higgs: v.higgs, n });
    }
    let n = i64::from(n);
    let vertices: i64 = p.vertices.iter().map(|v| v.count as i64 * (n - i64::from(v.gauge + v.higgs))).sum();
    Ok(4 * p.loops as i64 - (n - 2) * p.internal_total()
        + vertices
        + p.ghost_gauge_vertices as i64 * (n - 3)
        + p.ghost_higgs_vertices as i64 * (n - 4))
}

/// `(4−n)(L−1) + 4 − (E_A + E_χ + Ẽ)`.
pub fn omega_external(loops: u64, e_gauge: u64, e_higgs: u64, e_ghost: u64, n: ExpansionOrder) -> i64 {
    let n = i64::from(n.get());
    (4 - n) * (loops as i64 - 1) + 4 - (e_gauge + e_higgs + e_ghost) as i64
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Rational parts of `c_k` and `c'_k`; both carry an overall `1/(8π²)`.
pub fn heat_kernel_coefficients(k: u64) -> (BigRational, BigRational) {
    let c = BigRational::new(factorial(k + 1), BigInt::from(2 * k + 3) * factorial(2 * k + 1));
    let c_prime = BigRational::new(factorial(k), factorial(2 * k + 1));
    (c, c_prime)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropagatorDegrees {
    pub gauge: i64,
    pub higgs: i64,
    pub ghost: i64,
}

/// All propagators fall off as `|p|^{−(n−2)}`.
pub fn propagator_uv_degrees(n: ExpansionOrder) -> PropagatorDegrees {
    let d = -(i64::from(n.get()) - 2);
    PropagatorDegrees { gauge: d, higgs: d, ghost: d }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Renormalizable,
    Superrenormalizable,
    /// The sufficient conditions fail; nothing is claimed either way.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub order: u32,
    pub failing_hypotheses: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub rconnect: RConnectReport,
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        self.verdict != VerdictKind::Inconclusive
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            VerdictKind::Renormalizable => write!(f, "Renormalizable")?,
            VerdictKind::Superrenormalizable => write!(f, "Superrenormalizable")?,
            VerdictKind::Inconclusive => write!(f, "Inconclusive: {}", self.failing_hypotheses.join("; "))?,
        }
        for note in &self.notes {
            write!(f, "\nnote: {note}")?;
        }
        Ok(())
    }
}

pub const NOT_MULTIPLICATIVE: &str = "renormalizable as a gauge theory only: the counterterms have the form of terms in the action, but their coefficients may differ, so the theory is not multiplicatively renormalizable";
pub const ORDER_FOUR: &str = "at n = 4 the theory is strictly speaking not a higher-derivative gauge theory";

pub fn renorm_verdict(d: &ValidDiagram, n: ExpansionOrder, bounds: Bounds) -> Verdict {
    let mut failing = Vec::new();
    let irreps = irrep_correspondence_check(&d.algebra);
    if !irreps.holds {
        let why = irreps.diagnostic.unwrap_or_default();
        failing.push(format!("irreducible representations of the algebra and of its gauge group differ ({why})"));
    }
    let rconnect = check_r_connected(d, 4, bounds);
    if !rconnect.verdict {
        failing.push("R-connectedness fails".to_string());
    }
    let verdict = match (failing.is_empty(), n.get() >= 8) {
        (false, _) => VerdictKind::Inconclusive,
        (true, true) => VerdictKind::Superrenormalizable,
        (true, false) => VerdictKind::Renormalizable,
    };
    let mut notes = vec![NOT_MULTIPLICATIVE.to_string()];
    if n.get() == 4 {
        notes.push(ORDER_FOUR.to_string());
    }
    Verdict { verdict, order: n.get(), failing_hypotheses: failing, notes, rconnect }
}
