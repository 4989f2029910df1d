//! Virtual specialness and cocompact cubulation.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cat0::{decide_cat0, Cat0Verdict};
use crate::error::{Error, Result};
use crate::fbc::decide_fbc_single_vertex;
use crate::linalg::{canonical_direction, det2, IntVec2};
use crate::presentation::{GpqParams, TubularPresentation, VertexId};
use crate::report::{cite, Certificate, DecisionReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialRoute {
    DetSufficient,
    FbcCat0Equiv,
    GpqCharacterization,
    ClassCountObstruction,
}

impl fmt::Display for SpecialRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpecialRoute::DetSufficient => "det_sufficient",
            SpecialRoute::FbcCat0Equiv => "fbc_cat0_equiv",
            SpecialRoute::GpqCharacterization => "gpq_characterization",
            SpecialRoute::ClassCountObstruction => "class_count",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialVerdict {
    pub verdict: Verdict,
    pub route: SpecialRoute,
    pub citation: &'static str,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

impl SpecialVerdict {
    fn new(verdict: Verdict, route: SpecialRoute, citation: &'static str) -> Self {
        SpecialVerdict { verdict, route, citation, certificate: None, notes: Vec::new() }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn to_report(&self, group: &str, property: &str) -> DecisionReport {
        let mut r = DecisionReport::new(group, property, self.verdict)
            .route(self.route.to_string())
            .citation(self.citation);
        r.certificate = self.certificate.clone();
        r.notes = self.notes.clone();
        r
    }
}

/// The two determinant families at pivot `p`. Returns the first failing
/// `(edge, z, |det[z, v]|, |det[z, w]|)`, if any.
pub(crate) fn det_condition_failure(
    edges: &[(IntVec2, IntVec2)],
    pivot: usize,
) -> Option<(usize, IntVec2, num_bigint::BigInt, num_bigint::BigInt)> {
    let (v1, w1) = &edges[pivot];
    let zs = [w1.sub(v1), w1.add(v1)];
    for z in &zs {
        for (i, (v, w)) in edges.iter().enumerate() {
            let lhs = det2(z, v).abs();
            let rhs = det2(z, w).abs();
            if lhs != rhs {
                return Some((i, z.clone(), lhs, rhs));
            }
        }
    }
    None
}

/// Pivots (independent pairs) at which the determinant test passes, in edge order.
pub(crate) fn passing_pivots(edges: &[(IntVec2, IntVec2)]) -> impl Iterator<Item = usize> + '_ {
    (0..edges.len())
        .filter(|&i| !det2(&edges[i].0, &edges[i].1).is_zero())
        .filter(|&i| det_condition_failure(edges, i).is_none())
}

fn check_nonzero(edges: &[(IntVec2, IntVec2)]) -> Result<()> {
    if edges.iter().any(|(v, w)| v.is_zero() || w.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Sufficient test: for an independent pair `(v₁, w₁)` and `z = w₁ ∓ v₁`,
/// `|det[z, v_i]| = |det[z, w_i]|` for every edge. Every independent pair
/// is tried as pivot.
pub fn vspecial_sufficient(edges: &[(IntVec2, IntVec2)]) -> Result<SpecialVerdict> {
    check_nonzero(edges)?;
    let base = SpecialVerdict::new(Verdict::Unknown, SpecialRoute::DetSufficient, cite::VSPECIAL_DET);
    let Some(first) = edges.iter().position(|(v, w)| !det2(v, w).is_zero()) else {
        return Ok(base.note("no independent edge pair; determinant test does not apply"));
    };
    if let Some(p) = passing_pivots(edges).next() {
        let (v1, w1) = &edges[p];
        let mut out = SpecialVerdict { verdict: Verdict::Yes, ..base };
        out.certificate = Some(Certificate::EquitableSet {
            set: crate::cubulate::EquitableSet { sets: vec![vec![w1.sub(v1), w1.add(v1)]] },
        });
        return Ok(out.note(format!("pivot edge {p}")));
    }
    let (edge, z, lhs, rhs) = det_condition_failure(edges, first).expect("pivot failed");
    Ok(base.note(format!(
        "determinant test fails at every pivot; at edge {first}: |det[{z}, v_{edge}]| = {lhs} but |det[{z}, w_{edge}]| = {rhs}"
    )))
}

/// For one-vertex free-by-cyclic groups, virtually special iff CAT(0).
pub fn vspecial_fbc_decide(edges: &[(IntVec2, IntVec2)]) -> Result<SpecialVerdict> {
    let fbc = decide_fbc_single_vertex(edges)?;
    let base = SpecialVerdict::new(Verdict::Unknown, SpecialRoute::FbcCat0Equiv, cite::VSPECIAL_FBC_CAT0);
    if !fbc.is_yes() {
        return Ok(base.note("not free-by-cyclic; equivalence does not apply"));
    }
    let mut out = base;
    match decide_cat0(edges)? {
        Cat0Verdict::Yes { certificate, cos, .. } => {
            out.verdict = Verdict::Yes;
            out.certificate = Some(Certificate::QuadraticForm { form: certificate, cos });
        }
        Cat0Verdict::No(o) => {
            out.verdict = Verdict::No;
            out.certificate = Some(Certificate::Cat0Obstruction { obstruction: o });
        }
    }
    Ok(out)
}

/// Number of lines through the origin spanned by the attaching vectors at `vertex`.
pub fn parallelism_class_count(g: &TubularPresentation, vertex: VertexId) -> usize {
    g.incident_vectors(vertex)
        .iter()
        .map(|v| canonical_direction(v).expect("attaching vectors are nonzero"))
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn cocompact_cubulation_decide(g: &TubularPresentation, cat0_known: bool) -> DecisionReport {
    let counts: Vec<(String, usize)> =
        g.vertex_ids().map(|v| (g.vertex_name(v).to_string(), parallelism_class_count(g, v))).collect();
    let cert = Certificate::ClassCounts { counts: counts.clone() };
    let report = |verdict, citation| {
        DecisionReport::new(&g.name, "cocompact_cubulation", verdict)
            .route("class_count")
            .citation(citation)
            .certificate(cert.clone())
    };
    if let Some((name, n)) = counts.iter().find(|(_, n)| *n >= 3) {
        return report(Verdict::No, cite::CLASS_COUNT).note(format!("vertex {name} has {n} parallelism classes"));
    }
    if cat0_known {
        report(Verdict::Yes, cite::CLASS_COUNT_CAT0).note("at most two classes per vertex; CAT(0) known")
    } else {
        report(Verdict::Unknown, cite::CLASS_COUNT_CAT0)
            .note("at most two classes per vertex, but CAT(0)-ness unknown and Baumslag-Solitar subgroups not checked")
    }
}

/// One-vertex presentation with edges `(q_i, 1) → (−p_i, 1)`, in the basis
/// `a₀ = (1, 0)`, `t = (0, 1)`.
pub fn gpq_to_tubular(params: &GpqParams) -> TubularPresentation {
    let edges: Vec<(IntVec2, IntVec2)> =
        params.pairs().map(|(p, q)| (IntVec2::new(q, 1), IntVec2::new(-p, 1))).collect();
    TubularPresentation::single_vertex(params.display_name(), &edges).expect("gpq edges are nonzero")
}

/// The identity `q_i(q_i + p_s − q_s) = p_i(p_i − p_s + q_s)` at a given
/// `s`; returns the first index where it fails.
pub fn gpq_identity_failure(params: &GpqParams, s: usize) -> Option<usize> {
    let (ps, qs) = (params.p[s] as i128, params.q[s] as i128);
    params.pairs().position(|(p, q)| {
        let (p, q) = (p as i128, q as i128);
        q * (q + ps - qs) != p * (p - ps + qs)
    })
}

pub fn gpq_vspecial_decide(params: &GpqParams) -> SpecialVerdict {
    let base = SpecialVerdict::new(Verdict::Yes, SpecialRoute::GpqCharacterization, cite::GPQ_CHARACTERIZATION);
    let Some(s) = params.pairs().position(|(p, q)| p != -q) else {
        return base.note("p_i = -q_i for every i");
    };
    match gpq_identity_failure(params, s) {
        None => base.note(format!("identity holds for every i at s = {}", s + 1)),
        Some(i) => SpecialVerdict { verdict: Verdict::No, ..base }
            .note(format!("identity fails at i = {} (s = {})", i + 1, s + 1)),
    }
}

pub fn gpq_compact_special_decide(params: &GpqParams) -> SpecialVerdict {
    let values: BTreeSet<i64> = params.p.iter().map(|p| -p).chain(params.q.iter().copied()).collect();
    let vs = gpq_vspecial_decide(params);
    let list = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
    let mut out = SpecialVerdict::new(Verdict::No, SpecialRoute::GpqCharacterization, cite::GPQ_COMPACT)
        .note(format!("{{-p_i, q_i}} = {{{list}}}"));
    if values.len() > 2 {
        return out;
    }
    if vs.verdict == Verdict::Yes {
        out.verdict = Verdict::Yes;
    } else {
        out = out.note("not virtually special");
    }
    out
}
