//! Free-by-cyclic deciders.
//!
//! A tubular group is free-by-cyclic iff it has a homomorphism to Z that is
//! nonzero on every edge group. Such a homomorphism restricts to an integer
//! functional `f_v` on each vertex group with `f_from(v_e) = f_to(w_e)` for
//! every edge; stable letters may be sent anywhere. The solution space of
//! those constraints is computed exactly and a point avoiding the finitely
//! many "edge value = 0" hyperplanes is found by bounded enumeration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{canonical_direction, canonical_primitives_with_norm, complete_basis, det2, IntVec2, Rat};
use crate::presentation::{EdgeId, TubularPresentation, VertexId};
use crate::report::{cite, Certificate, DecisionReport, Verdict};

/// Per-vertex integer functionals `f_v(x, y) = α_v·x + β_v·y`, stored as
/// `(α_v, β_v)` indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub coeffs: Vec<IntVec2>,
}

impl Functional {
    pub fn zero(n: usize) -> Self {
        Functional { coeffs: vec![IntVec2::zero(); n] }
    }

    pub fn eval(&self, vertex: VertexId, x: &IntVec2) -> BigInt {
        let c = &self.coeffs[vertex.0];
        &c.x * &x.x + &c.y * &x.y
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(IntVec2::is_zero)
    }

    /// Values `f_from(e)(v_e)` for every edge, in edge order.
    pub fn edge_values(&self, g: &TubularPresentation) -> Vec<BigInt> {
        g.edges.iter().map(|e| self.eval(e.from, &e.v)).collect()
    }

    /// True iff `f_from(v_e) = f_to(w_e)` on every edge.
    pub fn is_compatible(&self, g: &TubularPresentation) -> bool {
        self.coeffs.len() == g.vertices.len()
            && g.edges.iter().all(|e| self.eval(e.from, &e.v) == self.eval(e.to, &e.w))
    }

    fn flat(&self) -> Vec<BigInt> {
        self.coeffs.iter().flat_map(|c| [c.x.clone(), c.y.clone()]).collect()
    }

    fn from_flat(v: &[BigInt]) -> Self {
        Functional { coeffs: v.chunks(2).map(|c| IntVec2::new(c[0].clone(), c[1].clone())).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    /// Integer basis of the rational solution space, one element per free
    /// variable of the reduced row echelon form (variables ordered
    /// `α_0, β_0, α_1, β_1, …`).
    pub basis: Vec<Functional>,
    pub dim: usize,
}

impl HomSpace {
    /// True iff the linear form `f ↦ f_vertex(x)` vanishes on the whole space.
    pub fn vanishes_on(&self, vertex: VertexId, x: &IntVec2) -> bool {
        self.basis.iter().all(|b| b.eval(vertex, x).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FbcObstruction {
    /// Two differences `v_i − w_i`, `v_j − w_j` span a finite-index subgroup.
    NonParallelDifferences { first: usize, second: usize },
    /// The common line of the differences contains `v_edge`.
    LineContainsVector { line: IntVec2, edge: usize },
    /// Every compatible functional vanishes on this edge group.
    EdgeVanishes { edge: EdgeId, label: String },
    /// Every compatible functional that is nonzero on all edges still
    /// vanishes on the target element (retractor search).
    ElementVanishes { element: IntVec2 },
}

impl fmt::Display for FbcObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FbcObstruction::NonParallelDifferences { first, second } => {
                write!(f, "differences of edges {first} and {second} are not parallel")
            }
            FbcObstruction::LineContainsVector { line, edge } => {
                write!(f, "the common difference line R{line} contains v of edge {edge}")
            }
            FbcObstruction::EdgeVanishes { label, .. } => {
                write!(f, "every compatible functional vanishes on edge `{label}`")
            }
            FbcObstruction::ElementVanishes { element } => {
                write!(f, "every compatible functional vanishes on {element}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FbcVerdict {
    Yes { witness: Functional, edge_values: Vec<BigInt> },
    No(FbcObstruction),
}

impl FbcVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FbcVerdict::Yes { .. })
    }

    pub fn witness(&self) -> Option<&Functional> {
        match self {
            FbcVerdict::Yes { witness, .. } => Some(witness),
            FbcVerdict::No(_) => None,
        }
    }

    pub fn certificate(&self) -> Certificate {
        match self {
            FbcVerdict::Yes { witness, edge_values } => {
                Certificate::Functional { functional: witness.clone(), edge_values: edge_values.clone() }
            }
            FbcVerdict::No(o) => Certificate::FbcObstruction { reason: o.to_string() },
        }
    }
}

fn check_edges(edges: &[(IntVec2, IntVec2)]) -> Result<()> {
    if edges.iter().any(|(v, w)| v.is_zero() || w.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// The functional `x ↦ (coefficient of x along v')` in the basis `{u, v'}`
/// where `v' = complete_basis(u)`; since `det[u, v'] = 1` this is `det(u, x)`.
fn projection_along(u: &IntVec2) -> Result<IntVec2> {
    let comp = complete_basis(u)?;
    debug_assert!(det2(u, &comp).is_one());
    Ok(IntVec2::new(-&u.y, u.x.clone()))
}

/// One-vertex criterion: free-by-cyclic iff all `v_i − w_i` lie on a common
/// line through the origin containing no `v_i`.
pub fn decide_fbc_single_vertex(edges: &[(IntVec2, IntVec2)]) -> Result<FbcVerdict> {
    check_edges(edges)?;
    let diffs: Vec<(usize, IntVec2)> = edges
        .iter()
        .enumerate()
        .map(|(i, (v, w))| (i, v.sub(w)))
        .filter(|(_, d)| !d.is_zero())
        .collect();

    let line = match diffs.first() {
        Some((first, d0)) => {
            if let Some((second, _)) = diffs.iter().find(|(_, d)| !det2(d0, d).is_zero()) {
                return Ok(FbcVerdict::No(FbcObstruction::NonParallelDifferences {
                    first: *first,
                    second: *second,
                }));
            }
            let dir = canonical_direction(d0)?;
            if let Some(edge) = edges.iter().position(|(v, _)| det2(&dir, v).is_zero()) {
                return Ok(FbcVerdict::No(FbcObstruction::LineContainsVector { line: dir, edge }));
            }
            dir
        }
        // All differences vanish: any line missing every v_i will do.
        None => (1..)
            .flat_map(canonical_primitives_with_norm)
            .find(|d| edges.iter().all(|(v, _)| !det2(d, v).is_zero()))
            .expect("finitely many excluded directions"),
    };

    let f = Functional { coeffs: vec![projection_along(&line)?] };
    let edge_values = edges.iter().map(|(v, _)| f.eval(VertexId(0), v)).collect();
    Ok(FbcVerdict::Yes { witness: f, edge_values })
}

/// Constraint rows `f_from(v_e) − f_to(w_e) = 0` over the variables
/// `α_0, β_0, α_1, β_1, …`.
fn constraint_rows(g: &TubularPresentation) -> Vec<Vec<Rat>> {
    let n = 2 * g.vertices.len();
    g.edges
        .iter()
        .map(|e| {
            let mut row = vec![Rat::zero(); n];
            row[2 * e.from.0] += Rat::from_integer(e.v.x.clone());
            row[2 * e.from.0 + 1] += Rat::from_integer(e.v.y.clone());
            row[2 * e.to.0] -= Rat::from_integer(e.w.x.clone());
            row[2 * e.to.0 + 1] -= Rat::from_integer(e.w.y.clone());
            row
        })
        .collect()
}

/// Basis of the rational nullspace of `rows` (each of length `ncols`), one
/// vector per free column of the reduced row echelon form.
fn rational_nullspace(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..ncols {
                    let sub = &factor * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); ncols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector (positive multiple).
fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_vec(ints)
}

fn primitive_vec(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Solution space of all edge compatibility constraints.
pub fn hom_space(g: &TubularPresentation) -> HomSpace {
    let n = 2 * g.vertices.len();
    let basis: Vec<Functional> = rational_nullspace(constraint_rows(g), n)
        .iter()
        .map(|v| Functional::from_flat(&clear_denominators(v)))
        .collect();
    HomSpace { dim: basis.len(), basis }
}

/// Integer tuples of length `d` with max-norm exactly `n`, in lexicographic order.
fn tuples_with_norm(d: usize, n: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * n + 1) as u64;
    let total = side.checked_pow(d as u32).expect("coefficient space too large");
    (0..total).filter_map(move |mut idx| {
        let mut t = vec![0i64; d];
        for slot in t.iter_mut().rev() {
            *slot = (idx % side) as i64 - n;
            idx /= side;
        }
        (t.iter().map(|x| x.abs()).max().unwrap_or(0) == n).then_some(t)
    })
}

/// Finds the first integer combination of `space.basis`, by increasing
/// max-norm of the coefficients, on which every form in `forms` is nonzero.
/// Each form is given as its values on the basis. Returns `None` if some
/// form vanishes identically.
fn avoid_hyperplanes(space: &HomSpace, forms: &[Vec<BigInt>]) -> Option<Functional> {
    if forms.iter().any(|f| f.iter().all(Zero::is_zero)) {
        return None;
    }
    if space.dim == 0 {
        return None;
    }
    let flat: Vec<Vec<BigInt>> = space.basis.iter().map(Functional::flat).collect();
    for n in 1.. {
        for c in tuples_with_norm(space.dim, n) {
            let ok = forms.iter().all(|f| {
                let s: BigInt = f.iter().zip(&c).map(|(fv, ci)| fv * BigInt::from(*ci)).sum();
                !s.is_zero()
            });
            if ok {
                let len = flat[0].len();
                let mut combo = vec![BigInt::zero(); len];
                for (b, ci) in flat.iter().zip(&c) {
                    for (slot, x) in combo.iter_mut().zip(b) {
                        *slot += x * BigInt::from(*ci);
                    }
                }
                return Some(Functional::from_flat(&primitive_vec(combo)));
            }
        }
    }
    unreachable!()
}

fn normalize_sign(f: Functional, g: &TubularPresentation) -> Functional {
    let lead = f
        .edge_values(g)
        .into_iter()
        .find(|x| !x.is_zero())
        .or_else(|| f.flat().into_iter().find(|x| !x.is_zero()));
    match lead {
        Some(x) if x.is_negative() => Functional { coeffs: f.coeffs.iter().map(IntVec2::neg).collect() },
        _ => f,
    }
}

fn edge_forms(space: &HomSpace, g: &TubularPresentation) -> Vec<Vec<BigInt>> {
    g.edges.iter().map(|e| space.basis.iter().map(|b| b.eval(e.from, &e.v)).collect()).collect()
}

fn first_vanishing_edge(space: &HomSpace, g: &TubularPresentation) -> Option<FbcObstruction> {
    g.edges.iter().find(|e| space.vanishes_on(e.from, &e.v)).map(|e| FbcObstruction::EdgeVanishes {
        edge: e.id,
        label: e.label.clone(),
    })
}

/// Button's criterion on an arbitrary tubular presentation.
pub fn button_decide(g: &TubularPresentation) -> FbcVerdict {
    let space = hom_space(g);
    if let Some(o) = first_vanishing_edge(&space, g) {
        return FbcVerdict::No(o);
    }
    let forms = edge_forms(&space, g);
    match avoid_hyperplanes(&space, &forms) {
        Some(f) => {
            let f = normalize_sign(f, g);
            let edge_values = f.edge_values(g);
            FbcVerdict::Yes { witness: f, edge_values }
        }
        // Only reachable with no vertices at all.
        None => FbcVerdict::No(FbcObstruction::ElementVanishes { element: IntVec2::zero() }),
    }
}

/// Certifies that `elem` (in the group of `vertex`) is a generalized
/// retractor by finding a compatible functional that is nonzero on every
/// edge group and on `elem`. A `No` means no certificate of this form exists.
pub fn generalized_retractor(g: &TubularPresentation, vertex: VertexId, elem: &IntVec2) -> Result<FbcVerdict> {
    if elem.is_zero() {
        return Err(Error::ZeroVector);
    }
    if vertex.0 >= g.vertices.len() {
        return Err(Error::UnknownVertex(vertex.to_string()));
    }
    let space = hom_space(g);
    if let Some(o) = first_vanishing_edge(&space, g) {
        return Ok(FbcVerdict::No(o));
    }
    if space.vanishes_on(vertex, elem) {
        return Ok(FbcVerdict::No(FbcObstruction::ElementVanishes { element: elem.clone() }));
    }
    let mut forms = edge_forms(&space, g);
    forms.push(space.basis.iter().map(|b| b.eval(vertex, elem)).collect());
    let f = avoid_hyperplanes(&space, &forms).expect("no form vanishes identically");
    let f = normalize_sign(f, g);
    let edge_values = f.edge_values(g);
    Ok(FbcVerdict::Yes { witness: f, edge_values })
}

/// Wraps a free-by-cyclic verdict as a report; a `Yes` is upgraded to
/// F_n-by-Z and cyclic subgroup separability.
pub fn annotate_fn_by_z(group: &str, route: &str, citation: &str, verdict: &FbcVerdict) -> DecisionReport {
    let mut r = DecisionReport::new(group, "fbc", Verdict::from(verdict.is_yes()))
        .route(route)
        .citation(citation)
        .certificate(verdict.certificate());
    if verdict.is_yes() {
        r = r
            .note(format!("F_n-by-Z (finite-rank kernel) [{}]", cite::FN_BY_Z))
            .note(format!("cyclic subgroup separable [{}]", cite::CYCLIC_SEPARABLE));
    }
    r
}

/// Disjoint union of `g1` and `g2` plus a bridge edge identifying `a` (at a
/// vertex of `g1`) with `b` (at a vertex of `g2`). Vertices and edge labels
/// get suffixes `_1` / `_2`; the bridge is labelled `bridge`.
pub fn amalgamate(
    g1: &TubularPresentation,
    a: (VertexId, &IntVec2),
    g2: &TubularPresentation,
    b: (VertexId, &IntVec2),
) -> Result<TubularPresentation> {
    if a.1.is_zero() || b.1.is_zero() {
        return Err(Error::ZeroVector);
    }
    for (g, v) in [(g1, a.0), (g2, b.0)] {
        if v.0 >= g.vertices.len() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    let mut out = TubularPresentation::new(format!("{}*{}", g1.name, g2.name));
    let offset = g1.vertices.len();
    for (g, suffix) in [(g1, "_1"), (g2, "_2")] {
        for name in &g.vertices {
            out.add_vertex(format!("{name}{suffix}"))?;
        }
    }
    for (g, suffix, off) in [(g1, "_1", 0), (g2, "_2", offset)] {
        for e in &g.edges {
            out.add_edge(
                format!("{}{suffix}", e.label),
                VertexId(e.from.0 + off),
                e.v.clone(),
                VertexId(e.to.0 + off),
                e.w.clone(),
            )?;
        }
    }
    out.add_edge("bridge", a.0, a.1.clone(), VertexId(b.0 .0 + offset), b.1.clone())?;
    Ok(out)
}

/// Amalgam sufficiency: if both `a` and `b` are certified generalized
/// retractors, the amalgam is free-by-cyclic. Otherwise the rule is silent
/// and Button's criterion is run on the amalgam. Returns the rule's report
/// followed (when the rule is inconclusive) by the Button report.
pub fn amalgam_fbc_sufficient(
    g1: &TubularPresentation,
    a: (VertexId, &IntVec2),
    g2: &TubularPresentation,
    b: (VertexId, &IntVec2),
) -> Result<Vec<DecisionReport>> {
    let amalgam = amalgamate(g1, a, g2, b)?;
    let ra = generalized_retractor(g1, a.0, a.1)?;
    let rb = generalized_retractor(g2, b.0, b.1)?;
    let name = amalgam.name.clone();

    if let (FbcVerdict::Yes { witness: f1, .. }, FbcVerdict::Yes { witness: f2, .. }) = (&ra, &rb) {
        // Scale the two sides so that they agree on the bridge.
        let fa = f1.eval(a.0, a.1);
        let fb = f2.eval(b.0, b.1);
        let mut coeffs: Vec<IntVec2> = f1.coeffs.iter().map(|c| c.scale(&fb)).collect();
        coeffs.extend(f2.coeffs.iter().map(|c| c.scale(&fa)));
        let combined = normalize_sign(
            Functional::from_flat(&primitive_vec(Functional { coeffs }.flat())),
            &amalgam,
        );
        debug_assert!(combined.is_compatible(&amalgam));
        let edge_values = combined.edge_values(&amalgam);
        let report = DecisionReport::new(&name, "amalgam_fbc", Verdict::Yes)
            .route("generalized_retractors")
            .citation(cite::RETRACTOR_AMALGAM)
            .certificate(Certificate::Functional { functional: combined, edge_values })
            .note(format!("{} is a generalized retractor of {}", a.1, g1.name))
            .note(format!("{} is a generalized retractor of {}", b.1, g2.name));
        return Ok(vec![report]);
    }

    let mut rule = DecisionReport::new(&name, "amalgam_fbc", Verdict::Unknown)
        .route("generalized_retractors")
        .citation(cite::RETRACTOR_AMALGAM);
    for (elem, g, r) in [(a.1, g1, &ra), (b.1, g2, &rb)] {
        rule = rule.note(match r {
            FbcVerdict::Yes { .. } => format!("{elem} is a generalized retractor of {}", g.name),
            FbcVerdict::No(o) => format!("no Button-style retractor certificate for {elem} in {}: {o}", g.name),
        });
    }
    let button = button_decide(&amalgam);
    let mut br = annotate_fn_by_z(&name, "button", cite::FBC_BUTTON, &button);
    if !button.is_yes() {
        br = br
            .note(format!("necessary condition for a free-by-cyclic amalgam fails [{}]", cite::RETRACTOR_NECESSARY))
            .note("primitivity in free complements not checked");
    }
    Ok(vec![rule, br])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: (i64, i64), w: (i64, i64)) -> (IntVec2, IntVec2) {
        (v.into(), w.into())
    }

    fn eg2_g1() -> TubularPresentation {
        TubularPresentation::single_vertex("eg2-g1", &[e((1, 0), (0, 1))]).unwrap()
    }

    fn gersten() -> TubularPresentation {
        TubularPresentation::single_vertex("gersten", &[e((0, 1), (1, 1)), e((0, 1), (2, 1))]).unwrap()
    }

    fn bare_z2() -> TubularPresentation {
        let mut g = TubularPresentation::new("Z2");
        g.add_vertex("W").unwrap();
        g
    }

    #[test]
    fn single_vertex_examples() {
        let v = decide_fbc_single_vertex(&gersten().edge_pairs()).unwrap();
        assert_eq!(v.witness().unwrap().coeffs, vec![IntVec2::new(0, 1)]);

        assert!(decide_fbc_single_vertex(&[e((1, 0), (0, 1))]).unwrap().is_yes());

        let v = decide_fbc_single_vertex(&[e((1, 0), (0, 1)), e((1, 0), (1, 1))]).unwrap();
        assert_eq!(v, FbcVerdict::No(FbcObstruction::NonParallelDifferences { first: 0, second: 1 }));

        let v = decide_fbc_single_vertex(&[e((1, 0), (2, 0))]).unwrap();
        assert!(matches!(v, FbcVerdict::No(FbcObstruction::LineContainsVector { edge: 0, .. })));
    }

    #[test]
    fn single_vertex_zero_differences() {
        let edges = [e((0, 1), (0, 1)), e((1, 1), (1, 1))];
        let FbcVerdict::Yes { witness, edge_values } = decide_fbc_single_vertex(&edges).unwrap() else { panic!() };
        assert_eq!(witness.coeffs, vec![IntVec2::new(1, 1)]);
        assert!(edge_values.iter().all(|x| !x.is_zero()));
    }

    #[test]
    fn hom_space_examples() {
        let h = hom_space(&gersten());
        assert_eq!(h.dim, 1);
        assert_eq!(h.basis[0].coeffs, vec![IntVec2::new(0, 1)]);

        assert_eq!(hom_space(&bare_z2()).dim, 2);

        let corlast = amalgamate(&gersten(), (VertexId(0), &(1, 0).into()), &bare_z2(), (VertexId(0), &(1, 0).into()))
            .unwrap();
        let h = hom_space(&corlast);
        assert_eq!(h.dim, 2);
        assert!(h.vanishes_on(VertexId(0), &IntVec2::new(1, 0)));
    }

    #[test]
    fn button_examples() {
        let FbcVerdict::Yes { edge_values, .. } = button_decide(&gersten()) else { panic!() };
        assert_eq!(edge_values, vec![BigInt::from(1), BigInt::from(1)]);

        let double =
            amalgamate(&eg2_g1(), (VertexId(0), &(1, -1).into()), &eg2_g1(), (VertexId(0), &(1, 0).into())).unwrap();
        assert!(matches!(button_decide(&double), FbcVerdict::No(FbcObstruction::EdgeVanishes { .. })));
        let bridge = &double.edges[2];
        assert!(hom_space(&double).vanishes_on(bridge.from, &bridge.v));
    }

    #[test]
    fn button_no_edges() {
        let v = button_decide(&bare_z2());
        assert!(v.is_yes());
        assert!(!v.witness().unwrap().is_zero());
    }

    #[test]
    fn retractor_examples() {
        let g = eg2_g1();
        let v = generalized_retractor(&g, VertexId(0), &(1, 0).into()).unwrap();
        assert_eq!(v.witness().unwrap().coeffs, vec![IntVec2::new(1, 1)]);
        let v = generalized_retractor(&g, VertexId(0), &(1, -1).into()).unwrap();
        assert!(matches!(v, FbcVerdict::No(FbcObstruction::ElementVanishes { .. })));
        assert!(generalized_retractor(&bare_z2(), VertexId(0), &(1, 0).into()).unwrap().is_yes());
        assert_eq!(generalized_retractor(&g, VertexId(0), &IntVec2::zero()), Err(Error::ZeroVector));
    }

    #[test]
    fn amalgamate_shapes() {
        let a = amalgamate(&gersten(), (VertexId(0), &(1, 0).into()), &bare_z2(), (VertexId(0), &(1, 0).into()))
            .unwrap();
        assert_eq!(a.vertices.len(), 2);
        assert_eq!(a.edges.len(), 3);
        let bridge = &a.edges[2];
        assert_eq!((bridge.v.clone(), bridge.w.clone()), e((1, 0), (1, 0)));

        let d = amalgamate(&eg2_g1(), (VertexId(0), &(1, -1).into()), &eg2_g1(), (VertexId(0), &(1, 0).into()))
            .unwrap();
        assert_eq!(d.vertices, vec!["V_1".to_string(), "V_2".to_string()]);
        assert_eq!((d.edges[2].v.clone(), d.edges[2].w.clone()), e((1, -1), (1, 0)));

        let zero = IntVec2::zero();
        assert!(amalgamate(&eg2_g1(), (VertexId(0), &zero), &eg2_g1(), (VertexId(0), &zero)).is_err());
    }

    #[test]
    fn amalgam_sufficiency() {
        let reports =
            amalgam_fbc_sufficient(&eg2_g1(), (VertexId(0), &(1, 0).into()), &eg2_g1(), (VertexId(0), &(1, 0).into()))
                .unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Yes);

        let reports = amalgam_fbc_sufficient(
            &gersten(),
            (VertexId(0), &(1, 0).into()),
            &bare_z2(),
            (VertexId(0), &(1, 0).into()),
        )
        .unwrap();
        assert_eq!(reports[0].verdict, Verdict::Unknown);
        assert_eq!(reports[1].verdict, Verdict::No);
    }

    #[test]
    fn fn_by_z_annotation() {
        let v = button_decide(&gersten());
        let r = annotate_fn_by_z("gersten", "button", cite::FBC_BUTTON, &v);
        assert!(r.notes.iter().any(|n| n.starts_with("F_n-by-Z")));
        assert!(r.notes.iter().any(|n| n.starts_with("cyclic subgroup separable")));
        let no = decide_fbc_single_vertex(&[e((1, 0), (2, 0))]).unwrap();
        assert!(annotate_fn_by_z("bs", "line", cite::FBC_LINE, &no).notes.is_empty());
    }
}
