//! R-connectedness of a diagram in dimension `m`.
//!
//! (1) every Γ̃-cycle of length ≤ m lifts; (2) every non-exempt pair of
//! Γ̃-cycles of total length ≤ m lifts to a single closed trail along the
//! columns and the rows; (3) no three or more cycles of total length ≤ m fail to
//! be pairwise exempt.

use std::fmt;

use serde::Serialize;

use crate::diagram::{RepLabel, ValidDiagram};
use crate::graph::{describe_cycle, lift_cycle, lift_pair, project, Cycle, Lift};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bounds {
    /// Lengths `≤ m`; needed for the quartic counterterms at `m = 4`.
    #[default]
    Inclusive,
    /// Lengths `< m`.
    Strict,
}

impl Bounds {
    pub fn admits(self, len: usize, m: usize) -> bool {
        match self {
            Bounds::Inclusive => len <= m,
            Bounds::Strict => len < m,
        }
    }

    fn max_len(self, m: usize) -> usize {
        match self {
            Bounds::Inclusive => m,
            Bounds::Strict => m.saturating_sub(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub walk: String,
    #[serde(skip)]
    pub lift: Lift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub cycle: String,
    #[serde(skip)]
    pub raw: Cycle,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PairStatus {
    Lifted {
        witness: Witness,
        /// The second cycle was matched traversed backwards.
        second_reversed: bool,
    },
    Failed,
    Exempt {
        /// Shared one-dimensional complex vertices, or the shared vertices when the
        /// cycles only meet elsewhere.
        shared: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub first: String,
    pub second: String,
    #[serde(skip)]
    pub raw: (Cycle, Cycle),
    #[serde(flatten)]
    pub status: PairStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RConnectReport {
    pub dimension: usize,
    pub bounds: Bounds,
    pub verdict: bool,
    pub cond1: Vec<CycleCheck>,
    pub cond2: Vec<PairCheck>,
    /// Tuples of three or more cycles that are not pairwise exempt.
    pub cond3: Vec<Vec<String>>,
}

impl RConnectReport {
    pub fn cond1_holds(&self) -> bool {
        self.cond1.iter().all(|c| c.witness.is_some())
    }

    pub fn cond2_holds(&self) -> bool {
        self.cond2.iter().all(|p| p.status != PairStatus::Failed)
    }

    pub fn failed_pairs(&self) -> impl Iterator<Item = &PairCheck> {
        self.cond2.iter().filter(|p| p.status == PairStatus::Failed)
    }
}

/// Whether a pair of Γ̃-cycles is exempt from condition (2).
///
/// Both cycles must pass through a one-dimensional complex vertex (`1` or `1̄`),
/// and they must meet. A trace over such a vertex is the identity, so the
/// double trace collapses into a single trace along the joined cycle, which is
/// already covered once each cycle lifts.
pub fn exemption_check(d: &ValidDiagram, g1: &Cycle, g2: &Cycle) -> bool {
    let trivial = |c: &Cycle| c.vertices.iter().any(|&v| d.is_trivial_complex(v));
    trivial(g1) && trivial(g2) && g1.vertices.iter().any(|&v| g2.contains(v))
}

fn shared_vertices(d: &ValidDiagram, g1: &Cycle, g2: &Cycle) -> Vec<String> {
    let shared: Vec<RepLabel> = g1.vertices.iter().copied().filter(|&v| g2.contains(v)).collect();
    let trivial: Vec<RepLabel> = shared.iter().copied().filter(|&v| d.is_trivial_complex(v)).collect();
    let pick = if trivial.is_empty() { shared } else { trivial };
    pick.into_iter().map(|v| d.label_name(v)).collect()
}

/// Lifts `(g1, g2)` trying `g2` in both orientations.
pub fn lift_pair_any(d: &ValidDiagram, g1: &Cycle, g2: &Cycle) -> Option<(Lift, bool)> {
    if let Some(l) = lift_pair(d, g1, g2) {
        return Some((l, false));
    }
    if g2.len() > 2 {
        return lift_pair(d, g1, &g2.reversed()).map(|l| (l, true));
    }
    None
}

pub fn check_r_connected(d: &ValidDiagram, m: usize, bounds: Bounds) -> RConnectReport {
    let g = project(d);
    let cycles = g.cycles(bounds.max_len(m).max(2));
    let cycles: Vec<Cycle> = cycles.into_iter().filter(|c| bounds.admits(c.len(), m)).collect();
    let witness = |l: Lift, rows: bool| Witness { walk: l.describe(d, rows), lift: l };

    let cond1: Vec<CycleCheck> = cycles
        .iter()
        .map(|c| CycleCheck {
            cycle: describe_cycle(d, c),
            raw: c.clone(),
            witness: lift_cycle(d, c).map(|l| witness(l, false)),
        })
        .collect();

    let mut cond2 = Vec::new();
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i..] {
            if !bounds.admits(a.len() + b.len(), m) {
                continue;
            }
            let status = if exemption_check(d, a, b) {
                PairStatus::Exempt { shared: shared_vertices(d, a, b) }
            } else {
                match lift_pair_any(d, a, b) {
                    Some((l, second_reversed)) => PairStatus::Lifted { witness: witness(l, true), second_reversed },
                    None => PairStatus::Failed,
                }
            };
            cond2.push(PairCheck {
                first: describe_cycle(d, a),
                second: describe_cycle(d, b),
                raw: (a.clone(), b.clone()),
                status,
            });
        }
    }

    let mut cond3 = Vec::new();
    let mut tuple = Vec::new();
    for r in 3..=bounds.max_len(m) / 2 {
        offending_tuples(d, &cycles, r, 0, 0, m, bounds, &mut tuple, &mut cond3);
    }

    let mut report = RConnectReport { dimension: m, bounds, verdict: false, cond1, cond2, cond3 };
    report.verdict = report.cond1_holds() && report.cond2_holds() && report.cond3.is_empty();
    report
}

#[allow(clippy::too_many_arguments)]
fn offending_tuples(
    d: &ValidDiagram,
    cycles: &[Cycle],
    r: usize,
    from: usize,
    total: usize,
    m: usize,
    bounds: Bounds,
    tuple: &mut Vec<usize>,
    out: &mut Vec<Vec<String>>,
) {
    if tuple.len() == r {
        let pairwise = tuple
            .iter()
            .enumerate()
            .all(|(i, &a)| tuple[i + 1..].iter().all(|&b| exemption_check(d, &cycles[a], &cycles[b])));
        if !pairwise {
            out.push(tuple.iter().map(|&k| describe_cycle(d, &cycles[k])).collect());
        }
        return;
    }
    for k in from..cycles.len() {
        let t = total + cycles[k].len();
        if !bounds.admits(t + 2 * (r - tuple.len() - 1), m) {
            continue;
        }
        tuple.push(k);
        offending_tuples(d, cycles, r, k, t, m, bounds, tuple, out);
        tuple.pop();
    }
}

impl fmt::Display for RConnectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.bounds {
            Bounds::Inclusive => "<=",
            Bounds::Strict => "<",
        };
        writeln!(f, "R-connectedness in dimension {} (lengths {rel} {})", self.dimension, self.dimension)?;
        writeln!(f, "condition (1): every cycle lifts")?;
        if self.cond1.is_empty() {
            writeln!(f, "  (no cycles)")?;
        }
        for c in &self.cond1 {
            match &c.witness {
                Some(w) => writeln!(f, "  {}  lifted by  {}", c.cycle, w.walk)?,
                None => writeln!(f, "  {}  NO LIFT", c.cycle)?,
            }
        }
        writeln!(f, "condition (2): pairs of cycles lift jointly")?;
        if self.cond2.is_empty() {
            writeln!(f, "  (no pairs)")?;
        }
        for p in &self.cond2 {
            write!(f, "  {{{}, {}}}  ", p.first, p.second)?;
            match &p.status {
                PairStatus::Lifted { witness, second_reversed } => {
                    write!(f, "lifted by  {}", witness.walk)?;
                    if *second_reversed {
                        write!(f, "  (second cycle reversed)")?;
                    }
                    writeln!(f)?;
                }
                PairStatus::Failed => writeln!(f, "NO LIFT")?,
                PairStatus::Exempt { shared } => writeln!(f, "exempt (common vertex {})", shared.join(", "))?,
            }
        }
        writeln!(f, "condition (3): tuples of three or more cycles")?;
        if self.cond3.is_empty() {
            writeln!(f, "  (none)")?;
        }
        for t in &self.cond3 {
            writeln!(f, "  offending: {{{}}}", t.join(", "))?;
        }
        write!(f, "verdict: {}", if self.verdict { "R-connected" } else { "not R-connected" })
    }
}
