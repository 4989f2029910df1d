//! Runs every decider on one input and collects the reports.

use crate::cat0::{decide_cat0, per_vertex_check, Cat0Verdict};
use crate::cubulate::{
    canonical_th3_set, dilation_decide, equitable_search, forced_no_equitable, matching_spectrum, wall_graph,
    DilationVerdict, EquitableSet, SearchOutcome,
};
use crate::dsl::Input;
use crate::error::Result;
use crate::fbc::{annotate_fn_by_z, button_decide, decide_fbc_single_vertex, FbcVerdict};
use crate::linalg::{IntVec2, QForm2, Rat};
use crate::presentation::{TubularPresentation, VertexId};
use crate::report::{cite, Certificate, DecisionReport, Verdict};
use crate::special::{
    cocompact_cubulation_decide, gpq_compact_special_decide, gpq_vspecial_decide, parallelism_class_count,
    vspecial_fbc_decide, vspecial_sufficient,
};
use crate::vrc::{th9_rule, vrc_obstruction, vrc_report, RetractHypothesis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub coord_bound: i64,
    pub size_bound: usize,
    /// Budget for trying every arc matching; `None` uses only the
    /// order-preserving matching.
    pub all_matchings: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { coord_bound: 3, size_bound: 3, all_matchings: None }
    }
}

pub fn fbc_report(g: &TubularPresentation) -> Result<(DecisionReport, FbcVerdict)> {
    let verdict;
    let report = if g.is_single_vertex() {
        verdict = decide_fbc_single_vertex(&g.edge_pairs())?;
        annotate_fn_by_z(&g.name, "line", cite::FBC_LINE, &verdict)
    } else {
        verdict = button_decide(g);
        annotate_fn_by_z(&g.name, "button", cite::FBC_BUTTON, &verdict)
    };
    Ok((report, verdict))
}

/// One-vertex CAT(0) decision; a vertex with no edges is `Z²` itself.
fn single_cat0(edges: &[(IntVec2, IntVec2)]) -> Result<Cat0Verdict> {
    if edges.is_empty() {
        return Ok(Cat0Verdict::Yes { certificate: QForm2::identity(), cos: Rat::from_integer(0.into()), pivot: None });
    }
    decide_cat0(edges)
}

fn cat0_certificate(v: &Cat0Verdict) -> Certificate {
    match v {
        Cat0Verdict::Yes { certificate, cos, .. } => Certificate::QuadraticForm { form: certificate.clone(), cos: cos.clone() },
        Cat0Verdict::No(o) => Certificate::Cat0Obstruction { obstruction: o.clone() },
    }
}

pub fn cat0_report(g: &TubularPresentation) -> Result<DecisionReport> {
    if g.is_single_vertex() {
        let v = single_cat0(&g.edge_pairs())?;
        let route = if g.edges.len() <= 1 { cite::CAT0_SINGLE_EDGE } else { cite::CAT0_COSINE };
        return Ok(DecisionReport::new(&g.name, "cat0", Verdict::from(v.is_yes()))
            .route("quadratic_form")
            .citation(route)
            .certificate(cat0_certificate(&v)));
    }
    for (vertex, v) in per_vertex_check(g)? {
        if let Cat0Verdict::No(_) = &v {
            return Ok(DecisionReport::new(&g.name, "cat0", Verdict::No)
                .route("per_vertex")
                .citation(cite::CAT0_PER_VERTEX)
                .certificate(cat0_certificate(&v))
                .note(format!("loops at vertex {} admit no common form", g.vertex_name(vertex))));
        }
    }
    Ok(DecisionReport::new(&g.name, "cat0", Verdict::Unknown)
        .route("per_vertex")
        .citation(cite::CAT0_PER_VERTEX)
        .note("per-vertex loop conditions hold; no sufficient criterion for several vertices"))
}

pub fn vspecial_report(input: &Input, g: &TubularPresentation, fbc: &FbcVerdict) -> Result<DecisionReport> {
    if let Input::Gpq(p) = input {
        return gpq_with_form(gpq_vspecial_decide(p).to_report(&g.name, "vspecial"), g);
    }
    if !g.is_single_vertex() {
        return Ok(DecisionReport::new(&g.name, "vspecial", Verdict::Unknown)
            .route("none")
            .citation(cite::WOODHOUSE_DILATION)
            .note("several vertices: only the equitable-set and dilation checks below apply"));
    }
    let edges = g.edge_pairs();
    if edges.is_empty() {
        return Ok(DecisionReport::new(&g.name, "vspecial", Verdict::Yes)
            .route("trivial")
            .certificate(Certificate::QuadraticForm { form: QForm2::identity(), cos: Rat::from_integer(0.into()) })
            .note("Z² is special"));
    }
    if fbc.is_yes() {
        return Ok(vspecial_fbc_decide(&edges)?.to_report(&g.name, "vspecial"));
    }
    let mut r = vspecial_sufficient(&edges)?.to_report(&g.name, "vspecial");
    if r.verdict == Verdict::Unknown {
        r = r.note("free-by-cyclic equivalence not applicable (not free-by-cyclic)");
    }
    Ok(r)
}

/// Attaches the CAT(0) form of the one-vertex presentation to a `Yes` from
/// the `G({p_i, q_i})` routes; these groups are free-by-cyclic, so the form
/// also certifies virtual specialness.
fn gpq_with_form(mut r: DecisionReport, g: &TubularPresentation) -> Result<DecisionReport> {
    if r.verdict == Verdict::Yes {
        let v = single_cat0(&g.edge_pairs())?;
        if v.is_yes() {
            r.certificate = Some(cat0_certificate(&v));
            r = r.note(format!("certificate: CAT(0) form [{}]", cite::VSPECIAL_FBC_CAT0));
        }
    }
    Ok(r)
}

pub fn gpq_compact_report(p: &crate::presentation::GpqParams, g: &TubularPresentation) -> Result<DecisionReport> {
    gpq_with_form(gpq_compact_special_decide(p).to_report(&g.name, "compact_special"), g)
}

pub fn parallelism_report(g: &TubularPresentation) -> DecisionReport {
    let counts: Vec<(String, usize)> =
        g.vertex_ids().map(|v| (g.vertex_name(v).to_string(), parallelism_class_count(g, v))).collect();
    let ok = counts.iter().all(|(_, n)| *n <= 2);
    let summary = counts.iter().map(|(v, n)| format!("{v}: {n}")).collect::<Vec<_>>().join(", ");
    DecisionReport::new(&g.name, "parallelism_classes", Verdict::from(ok))
        .route("class_count")
        .citation(cite::CLASS_COUNT)
        .certificate(Certificate::ClassCounts { counts })
        .note(format!("classes per vertex: {summary}; Yes means at most two everywhere"))
}

/// The equitable set used for the wall reports, with its report.
pub fn equitable_report(g: &TubularPresentation, opts: &AnalyzeOptions) -> Result<(DecisionReport, Option<EquitableSet>)> {
    let base = || DecisionReport::new(&g.name, "equitable_set", Verdict::Unknown).citation(cite::WISE_EQUITABLE);
    if let Some(e) = forced_no_equitable(g) {
        let label = &g.edges[e.0].label;
        let mut r = base()
            .route("forced_contradiction")
            .note(format!("edge `{label}` has parallel vectors of different lengths, forcing every circle onto one line"));
        r.verdict = Verdict::No;
        return Ok((r, None));
    }
    match equitable_search(g, opts.coord_bound, opts.size_bound)? {
        SearchOutcome::Found(s) => {
            let mut r = base()
                .route("bounded_search")
                .certificate(Certificate::EquitableSet { set: s.clone() })
                .note(format!("bounds: |coords| <= {}, |S_v| <= {}", opts.coord_bound, opts.size_bound));
            r.verdict = Verdict::Yes;
            Ok((r, Some(s)))
        }
        SearchOutcome::NotFound { coord_bound, size_bound } => {
            if g.is_single_vertex() && !g.edges.is_empty() {
                if let Ok(s) = canonical_th3_set(&g.edge_pairs()) {
                    let mut r = base()
                        .route("determinant_set")
                        .citation(cite::VSPECIAL_DET)
                        .certificate(Certificate::EquitableSet { set: s.clone() });
                    r.verdict = Verdict::Yes;
                    return Ok((r, Some(s)));
                }
            }
            Ok((base()
                .route("bounded_search")
                .note(format!("none with |coords| <= {coord_bound}, |S_v| <= {size_bound}; larger sets may exist")), None))
        }
    }
}

pub fn walls_report(g: &TubularPresentation, set: Option<&EquitableSet>, opts: &AnalyzeOptions) -> Result<DecisionReport> {
    let base = DecisionReport::new(&g.name, "walls_non_dilated", Verdict::Unknown)
        .route("holonomy")
        .citation(cite::WOODHOUSE_DILATION);
    let Some(s) = set else {
        return Ok(base.note("no equitable set available"));
    };
    let w = wall_graph(g, s)?;
    let mut r = match dilation_decide(&w) {
        DilationVerdict::NonDilated { potentials } => {
            let mut r = base
                .certificate(Certificate::Potentials { potentials })
                .note("every cycle has holonomy 1 (order-preserving matching)");
            r.verdict = Verdict::Yes;
            r
        }
        DilationVerdict::Dilated { cycle, holonomy } => {
            let mut r = base
                .certificate(Certificate::DilationCycle { cycle, holonomy })
                .note("dilated cycle under the order-preserving matching");
            r.verdict = Verdict::No;
            r
        }
    };
    if let Some(budget) = opts.all_matchings {
        let spectrum = matching_spectrum(g, s, budget)?;
        r = r.note(format!(
            "all matchings: {} tried{}, {} non-dilated, {} dilated",
            spectrum.tried,
            if spectrum.exhaustive { " (exhaustive)" } else { " (budget reached)" },
            spectrum.non_dilated,
            spectrum.dilated
        ));
    }
    Ok(r)
}

/// Reports in fixed order: fbc, cat0, vspecial, parallelism_classes,
/// cocompact_cubulation, [compact_special], equitable_set,
/// walls_non_dilated, [vrc, virtually_fbc]; bracketed ones only for
/// `G({p_i, q_i})` inputs.
pub fn analyze(input: &Input, opts: &AnalyzeOptions) -> Result<Vec<DecisionReport>> {
    let mut g = input.to_tubular();
    g.name = input.name();
    let mut out = Vec::new();

    let (fbc, fbc_verdict) = fbc_report(&g)?;
    out.push(fbc);
    let cat0 = cat0_report(&g)?;
    let cat0_known = cat0.verdict == Verdict::Yes;
    out.push(cat0);
    out.push(vspecial_report(input, &g, &fbc_verdict)?);
    out.push(parallelism_report(&g));
    out.push(cocompact_cubulation_decide(&g, cat0_known));
    if let Input::Gpq(p) = input {
        out.push(gpq_compact_report(p, &g)?);
    }
    let (eq, set) = equitable_report(&g, opts)?;
    out.push(eq);
    out.push(walls_report(&g, set.as_ref(), opts)?);
    if let Input::Gpq(p) = input {
        out.push(vrc_report(p));
        let h = RetractHypothesis::Vrc(vrc_obstruction(p));
        let mut r = th9_rule(&g, (VertexId(0), &IntVec2::new(1, 0)), Some(&h));
        r.notes.insert(0, "a = a0 = (1,0)".into());
        out.push(r);
    }
    Ok(out)
}
