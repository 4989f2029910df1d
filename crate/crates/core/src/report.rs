use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cat0::ObstructionDatum;
use crate::cubulate::{CirclePotential, CycleStep, EquitableSet};
use crate::fbc::Functional;
use crate::linalg::{rat_serde, rat_vec_serde, QForm2, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::Unknown => "Unknown",
        })
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// Serialized witness attached to a report. Exact numbers are strings:
/// integers in decimal, rationals as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    QuadraticForm {
        form: QForm2,
        #[serde(with = "rat_serde")]
        cos: Rat,
    },
    Cat0Obstruction {
        obstruction: ObstructionDatum,
    },
    Functional {
        functional: Functional,
        #[serde(with = "bigint_vec_serde")]
        edge_values: Vec<BigInt>,
    },
    FbcObstruction {
        reason: String,
    },
    EquitableSet {
        set: EquitableSet,
    },
    DilationCycle {
        cycle: Vec<CycleStep>,
        #[serde(with = "rat_serde")]
        holonomy: Rat,
    },
    Potentials {
        potentials: Vec<CirclePotential>,
    },
    ForcedValues {
        #[serde(with = "rat_vec_serde")]
        values: Vec<Rat>,
    },
    ClassCounts {
        counts: Vec<(String, usize)>,
    },
}

pub mod bigint_vec_serde {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::{self, Deserializer};
    use serde::{Deserialize, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| BigInt::from_str(s).map_err(|_| de::Error::custom(format!("invalid integer `{s}`"))))
            .collect()
    }
}

/// One line of analysis output. The JSON form has exactly the keys
/// `group, property, verdict, route, certificate, citation, notes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub group: String,
    pub property: String,
    pub verdict: Verdict,
    pub route: String,
    pub certificate: Option<Certificate>,
    pub citation: String,
    pub notes: Vec<String>,
}

impl DecisionReport {
    pub fn new(group: impl Into<String>, property: impl Into<String>, verdict: Verdict) -> Self {
        DecisionReport {
            group: group.into(),
            property: property.into(),
            verdict,
            route: String::new(),
            certificate: None,
            citation: String::new(),
            notes: Vec::new(),
        }
    }

    pub fn route(mut self, route: impl Into<String>) -> Self {
        self.route = route.into();
        self
    }

    pub fn citation(mut self, citation: impl Into<String>) -> Self {
        self.citation = citation.into();
        self
    }

    pub fn certificate(mut self, cert: Certificate) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

impl fmt::Display for DecisionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28} {:<8}", self.property, self.verdict.to_string())?;
        if !self.route.is_empty() {
            write!(f, " via {}", self.route)?;
        }
        if !self.citation.is_empty() {
            write!(f, " [{}]", self.citation)?;
        }
        for n in &self.notes {
            write!(f, "\n{:<28}   - {}", "", n)?;
        }
        Ok(())
    }
}

/// Anchors naming the mathematical result each route relies on.
pub mod cite {
    pub const CAT0_QUADRATIC_FORM: &str = "CAT(0) iff a positive-definite form equalises every edge pair";
    pub const CAT0_SINGLE_EDGE: &str = "single edge: CAT(0) iff v, w independent or v = ±w";
    pub const CAT0_COSINE: &str = "single-vertex CAT(0) criterion: common cos φ in (-1,1)";
    pub const CAT0_PER_VERTEX: &str = "per-vertex loop condition is necessary for CAT(0)";
    pub const FBC_LINE: &str = "single-vertex free-by-cyclic criterion: differences on a common line avoiding every v_i";
    pub const FBC_BUTTON: &str = "Button: free-by-cyclic iff some homomorphism to Z is nonzero on every edge group";
    pub const FN_BY_Z: &str = "tubular free-by-cyclic groups are F_n-by-Z (vanishing first L2-Betti number)";
    pub const CYCLIC_SEPARABLE: &str = "F_n-by-Z groups are cyclic subgroup separable";
    pub const RETRACTOR_AMALGAM: &str = "amalgam over generalized retractors is free-by-cyclic";
    pub const RETRACTOR_NECESSARY: &str =
        "free-by-cyclic amalgam forces both elements to be generalized retractors, or to lie in free complements with one primitive";
    pub const VSPECIAL_DET: &str = "determinant test with S = {w1 - v1, w1 + v1} gives non-dilated walls";
    pub const VSPECIAL_FBC_CAT0: &str = "single-vertex free-by-cyclic tubular group: CAT(0) iff virtually special";
    pub const GPQ_CHARACTERIZATION: &str = "G(p,q) virtually special iff p = -q or q_i(q_i+p_s-q_s) = p_i(p_i-p_s+q_s)";
    pub const GPQ_COMPACT: &str = "G(p,q) virtually compact special iff |{-p_i, q_i}| <= 2 and virtually special";
    pub const CLASS_COUNT: &str = "more than two parallelism classes at a vertex obstructs virtual cocompact cubulation";
    pub const CLASS_COUNT_CAT0: &str =
        "at most two parallelism classes per vertex and no unbalanced Baumslag-Solitar subgroup gives cocompact cubulation";
    pub const WISE_EQUITABLE: &str = "Wise: free action on a CAT(0) cube complex iff an equitable set exists";
    pub const WOODHOUSE_DILATION: &str = "Woodhouse: finite-dimensional dual cube complex iff every immersed wall is non-dilated";
    pub const VRC_OBSTRUCTION: &str = "no v, w != 0 with |v - p_i w| = |v + q_i w| means <a0> is not a virtual retract";
    pub const AMALGAM_F2XZ: &str =
        "amalgam with F2 x Z over a non-virtual-retractor is not virtually free-by-cyclic";
}
