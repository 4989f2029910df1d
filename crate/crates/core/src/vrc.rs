//! Virtual-retract obstruction for `G({p_i, q_i})`.
//!
//! `⟨a₀⟩` can only be a virtual retract if some `v, w ∈ R²`, `w ≠ 0`, satisfy
//! `‖v − p_i w‖ = ‖v + q_i w‖` for all `i`. Expanding, each index with
//! `p_i + q_i ≠ 0` forces `⟨v, w⟩ / ‖w‖² = (p_i − q_i) / 2`, and that ratio is
//! otherwise free, so a solution exists iff the forced values agree.

use std::fmt;

use crate::fbc::amalgamate;
use crate::linalg::{rat, rat_to_string, IntVec2, Rat};
use crate::presentation::{GpqParams, TubularPresentation, VertexId};
use crate::report::{cite, Certificate, DecisionReport, Verdict};
use crate::special::gpq_to_tubular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VrcAnswer {
    Obstructed,
    Inconclusive,
}

impl fmt::Display for VrcAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VrcAnswer::Obstructed => "Obstructed",
            VrcAnswer::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VrcVerdict {
    pub answer: VrcAnswer,
    /// Distinct forced values of `⟨v, w⟩ / ‖w‖²`, in index order.
    pub forced_values: Vec<Rat>,
}

impl VrcVerdict {
    pub fn is_obstructed(&self) -> bool {
        self.answer == VrcAnswer::Obstructed
    }
}

pub fn vrc_obstruction(params: &GpqParams) -> VrcVerdict {
    let mut forced: Vec<Rat> = Vec::new();
    for (p, q) in params.pairs() {
        if p + q != 0 {
            let t = rat(p - q, 2);
            if !forced.contains(&t) {
                forced.push(t);
            }
        }
    }
    let answer = if forced.len() >= 2 { VrcAnswer::Obstructed } else { VrcAnswer::Inconclusive };
    VrcVerdict { answer, forced_values: forced }
}

pub fn vrc_report(params: &GpqParams) -> DecisionReport {
    let v = vrc_obstruction(params);
    let values = v.forced_values.iter().map(rat_to_string).collect::<Vec<_>>().join(", ");
    let r = DecisionReport::new(params.display_name(), "vrc", if v.is_obstructed() { Verdict::No } else { Verdict::Unknown })
        .route("forced_values")
        .citation(cite::VRC_OBSTRUCTION)
        .certificate(Certificate::ForcedValues { values: v.forced_values.clone() });
    match v.answer {
        VrcAnswer::Obstructed => r.note(format!("forced values {{{values}}} disagree: <a0> is not a virtual retract")),
        VrcAnswer::Inconclusive => r.note("forced values agree; the obstruction does not apply"),
    }
}

/// Where the hypothesis "a is not a virtual retractor" comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractHypothesis {
    Vrc(VrcVerdict),
    UserAsserted,
}

/// `F₂ × Z` as a one-vertex presentation; the centre is `t = (0, 1)`.
pub fn f2xz() -> TubularPresentation {
    let mut g = gpq_to_tubular(&GpqParams { p: vec![0], q: vec![0] });
    g.name = "F2xZ".into();
    g
}

/// The amalgam `G ∗_{a = t} (F₂ × Z)` is not virtually free-by-cyclic when
/// `a` is not a virtual retractor.
pub fn th9_rule(g: &TubularPresentation, a: (VertexId, &IntVec2), hypothesis: Option<&RetractHypothesis>) -> DecisionReport {
    let t = IntVec2::new(0, 1);
    let name = match amalgamate(g, a, &f2xz(), (VertexId(0), &t)) {
        Ok(am) => am.name,
        Err(_) => format!("{}*F2xZ", g.name),
    };
    let r = DecisionReport::new(name, "virtually_fbc", Verdict::Unknown)
        .route("non_virtual_retractor_amalgam")
        .citation(cite::AMALGAM_F2XZ)
        .note(format!("amalgamated over {} = t", a.1));
    match hypothesis {
        None => r.note("no evidence that the element is not a virtual retractor"),
        Some(RetractHypothesis::Vrc(v)) if !v.is_obstructed() => {
            r.note("virtual-retract obstruction is inconclusive")
        }
        Some(h) => {
            let mut r = r.note("not virtually free-by-cyclic");
            r.verdict = Verdict::No;
            match h {
                RetractHypothesis::Vrc(v) => r
                    .certificate(Certificate::ForcedValues { values: v.forced_values.clone() })
                    .note(format!("hypothesis from the virtual-retract obstruction [{}]", cite::VRC_OBSTRUCTION)),
                RetractHypothesis::UserAsserted => r.note("user-asserted hypothesis"),
            }
        }
    }
}
