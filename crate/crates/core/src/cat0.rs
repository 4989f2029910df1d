//! CAT(0)-ness of one-vertex tubular groups via quadratic-form certificates.
//!
//! `G = ⟨Z², s_i | s_i v_i s_i⁻¹ = w_i⟩` is CAT(0) iff some positive-definite
//! form `Q` has `Q(v_i) = Q(w_i)` for all `i`. Writing `Q` in the basis
//! `B = [v₁, w₁]` of an independent pair, `BᵀQB = λ·[[1, c], [c, 1]]` with
//! `c = cos φ ∈ (−1, 1)`, so every other edge imposes one linear condition
//! `a_i = b_i·c` on `c`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det2, inv2, rat_int, rat_to_string, rat_vec_serde, IntMat2, IntVec2, QForm2, Rat, RatMat2};
use crate::presentation::{TubularPresentation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObstructionKind {
    /// A dependent pair with `v ≠ ±w`.
    ParallelMismatch,
    /// Two edges force different values of `cos φ`, or an edge forces `0 = a ≠ 0`.
    InconsistentCos,
    /// The unique forced value of `cos φ` lies outside `(−1, 1)`.
    CosOutOfRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObstructionDatum {
    pub kind: ObstructionKind,
    /// Indices into the edge list (0-based). For cosine obstructions the first
    /// entry is the pivot edge.
    pub edges: Vec<usize>,
    #[serde(with = "rat_vec_serde")]
    pub values: Vec<Rat>,
    pub detail: String,
}

impl fmt::Display for ObstructionDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cat0Verdict {
    Yes {
        certificate: QForm2,
        /// The chosen `cos φ`; zero when every pair is parallel.
        cos: Rat,
        /// Index of the independent pair used as basis, if any.
        pivot: Option<usize>,
    },
    No(ObstructionDatum),
}

impl Cat0Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Cat0Verdict::Yes { .. })
    }

    pub fn certificate(&self) -> Option<&QForm2> {
        match self {
            Cat0Verdict::Yes { certificate, .. } => Some(certificate),
            Cat0Verdict::No(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&ObstructionDatum> {
        match self {
            Cat0Verdict::No(o) => Some(o),
            Cat0Verdict::Yes { .. } => None,
        }
    }
}

/// The condition `a = b·c` imposed on `c = cos φ` by one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosConstraint {
    pub edge: usize,
    pub a: Rat,
    pub b: Rat,
}

impl CosConstraint {
    pub fn holds_at(&self, c: &Rat) -> bool {
        self.a == &self.b * c
    }
}

fn check_nonzero(edges: &[(IntVec2, IntVec2)]) -> Result<()> {
    if edges.is_empty() {
        return Err(Error::EmptyEdgeList);
    }
    if edges.iter().any(|(v, w)| v.is_zero() || w.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Index of the first edge whose two vectors are independent.
pub fn first_independent(edges: &[(IntVec2, IntVec2)]) -> Option<usize> {
    edges.iter().position(|(v, w)| !det2(v, w).is_zero())
}

fn basis_inverse(edges: &[(IntVec2, IntVec2)], pivot: usize) -> Result<RatMat2> {
    let (v1, w1) = &edges[pivot];
    inv2(&IntMat2::from_columns(v1, w1).to_rat())
}

/// Linear conditions on `cos φ` for every edge other than `pivot`, computed
/// from the coordinates `(x, y) = B⁻¹v_i`, `(x', y') = B⁻¹w_i`:
/// `a = (x² + y²) − (x'² + y'²)`, `b = 2(x'y' − xy)`.
pub fn cos_constraints(edges: &[(IntVec2, IntVec2)], pivot: usize) -> Result<Vec<CosConstraint>> {
    check_nonzero(edges)?;
    let binv = basis_inverse(edges, pivot)?;
    let two = rat_int(2);
    Ok(edges
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pivot)
        .map(|(i, (v, w))| {
            let (x, y) = binv.apply_int(v);
            let (xp, yp) = binv.apply_int(w);
            let a = (&x * &x + &y * &y) - (&xp * &xp + &yp * &yp);
            let b = &two * (&xp * &yp - &x * &y);
            CosConstraint { edge: i, a, b }
        })
        .collect())
}

/// The form `B⁻ᵀ·[[1, c], [c, 1]]·B⁻¹` for the pivot basis `B`.
pub fn form_for_cos(edges: &[(IntVec2, IntVec2)], pivot: usize, cos: &Rat) -> Result<QForm2> {
    let binv = basis_inverse(edges, pivot)?;
    let gram = RatMat2::new(Rat::one(), cos.clone(), cos.clone(), Rat::one());
    Ok(QForm2::from_symmetric(&binv.transpose().mul(&gram).mul(&binv)))
}

fn parallel_mismatch(edges: &[(IntVec2, IntVec2)]) -> Option<ObstructionDatum> {
    edges.iter().enumerate().find_map(|(i, (v, w))| {
        (det2(v, w).is_zero() && *v != *w && *v != w.neg()).then(|| ObstructionDatum {
            kind: ObstructionKind::ParallelMismatch,
            edges: vec![i],
            values: Vec::new(),
            detail: format!("edge {i}: {v} and {w} are parallel but {v} ≠ ±{w}"),
        })
    })
}

/// Decides CAT(0)-ness of `⟨Z², s_i | s_i v_i s_i⁻¹ = w_i⟩`.
pub fn decide_cat0(edges: &[(IntVec2, IntVec2)]) -> Result<Cat0Verdict> {
    check_nonzero(edges)?;
    if let Some(o) = parallel_mismatch(edges) {
        return Ok(Cat0Verdict::No(o));
    }
    let Some(pivot) = first_independent(edges) else {
        // Every pair is v = ±w; the identity form works.
        return Ok(Cat0Verdict::Yes { certificate: QForm2::identity(), cos: Rat::zero(), pivot: None });
    };
    decide_with_pivot(edges, pivot)
}

/// Same as [`decide_cat0`] but with an explicit independent pivot edge.
pub fn decide_with_pivot(edges: &[(IntVec2, IntVec2)], pivot: usize) -> Result<Cat0Verdict> {
    check_nonzero(edges)?;
    if det2(&edges[pivot].0, &edges[pivot].1).is_zero() {
        return Err(Error::NoIndependentPair);
    }
    if let Some(o) = parallel_mismatch(edges) {
        return Ok(Cat0Verdict::No(o));
    }
    let constraints = cos_constraints(edges, pivot)?;

    if let Some(bad) = constraints.iter().find(|c| c.b.is_zero() && !c.a.is_zero()) {
        return Ok(Cat0Verdict::No(ObstructionDatum {
            kind: ObstructionKind::InconsistentCos,
            edges: vec![pivot, bad.edge],
            values: vec![bad.a.clone()],
            detail: format!(
                "edge {} requires {} = 0·cos φ",
                bad.edge,
                rat_to_string(&bad.a)
            ),
        }));
    }

    let mut forced: Vec<(usize, Rat)> = Vec::new();
    let mut seen = BTreeSet::new();
    for c in constraints.iter().filter(|c| !c.b.is_zero()) {
        let value = &c.a / &c.b;
        if seen.insert(value.clone()) {
            forced.push((c.edge, value));
        }
    }

    let cos = match forced.as_slice() {
        [] => Rat::zero(),
        [(edge, value)] => {
            if value.abs() >= Rat::one() {
                return Ok(Cat0Verdict::No(ObstructionDatum {
                    kind: ObstructionKind::CosOutOfRange,
                    edges: vec![pivot, *edge],
                    values: vec![value.clone()],
                    detail: format!("edge {edge} forces cos φ = {}, outside (-1,1)", rat_to_string(value)),
                }));
            }
            value.clone()
        }
        [(e1, c1), (e2, c2), ..] => {
            return Ok(Cat0Verdict::No(ObstructionDatum {
                kind: ObstructionKind::InconsistentCos,
                edges: vec![pivot, *e1, *e2],
                values: vec![c1.clone(), c2.clone()],
                detail: format!(
                    "edge {e1} forces cos φ = {} but edge {e2} forces {}",
                    rat_to_string(c1),
                    rat_to_string(c2)
                ),
            }));
        }
    };

    let certificate = form_for_cos(edges, pivot, &cos)?;
    Ok(Cat0Verdict::Yes { certificate, cos, pivot: Some(pivot) })
}

/// True iff `q` is positive definite and `q(v) = q(w)` for every edge.
pub fn check_certificate(q: &QForm2, edges: &[(IntVec2, IntVec2)]) -> bool {
    q.is_positive_definite() && edges.iter().all(|(v, w)| q.eval(v) == q.eval(w))
}

/// Runs [`decide_cat0`] on the loops at each vertex of a presentation. For a
/// multi-vertex group a failure at any vertex rules out CAT(0), while passing
/// every vertex is inconclusive. Vertices without loops are skipped.
pub fn per_vertex_check(g: &TubularPresentation) -> Result<Vec<(VertexId, Cat0Verdict)>> {
    g.vertex_ids()
        .filter_map(|v| {
            let loops = g.loop_pairs(v);
            (!loops.is_empty()).then(|| decide_cat0(&loops).map(|verdict| (v, verdict)))
        })
        .collect()
}
