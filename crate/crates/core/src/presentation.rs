//! The tubular-presentation data model: a finite multigraph whose vertices
//! carry Z² (with a fixed basis) and whose edges carry a pair of nonzero
//! attaching vectors.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMat2, IntVec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
    /// Attaching vector at `from`.
    pub v: IntVec2,
    /// Attaching vector at `to`.
    pub w: IntVec2,
    pub label: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    /// The same edge traversed backwards.
    pub fn reversed(&self) -> Edge {
        Edge {
            id: self.id,
            from: self.to,
            to: self.from,
            v: self.w.clone(),
            w: self.v.clone(),
            label: self.label.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TubularPresentation {
    pub name: String,
    /// Vertex names, indexed by [`VertexId`].
    pub vertices: Vec<String>,
    /// Edges, indexed by [`EdgeId`].
    pub edges: Vec<Edge>,
}

impl TubularPresentation {
    pub fn new(name: impl Into<String>) -> Self {
        TubularPresentation { name: name.into(), vertices: Vec::new(), edges: Vec::new() }
    }

    /// A one-vertex presentation (vertex `V`) with loops `(v_i → w_i)`
    /// labelled `s1, s2, …`.
    pub fn single_vertex(name: impl Into<String>, edges: &[(IntVec2, IntVec2)]) -> Result<Self> {
        let mut g = TubularPresentation::new(name);
        let v = g.add_vertex("V")?;
        for (i, (a, b)) in edges.iter().enumerate() {
            g.add_edge(format!("s{}", i + 1), v, a.clone(), v, b.clone())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertices.contains(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        self.vertices.push(name);
        Ok(VertexId(self.vertices.len() - 1))
    }

    pub fn add_edge(
        &mut self,
        label: impl Into<String>,
        from: VertexId,
        v: IntVec2,
        to: VertexId,
        w: IntVec2,
    ) -> Result<EdgeId> {
        let label = label.into();
        if self.edges.iter().any(|e| e.label == label) {
            return Err(Error::DuplicateEdge(label));
        }
        for id in [from, to] {
            if id.0 >= self.vertices.len() {
                return Err(Error::UnknownVertex(id.to_string()));
            }
        }
        if v.is_zero() || w.is_zero() {
            return Err(Error::ZeroVector);
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { id, from, to, v, w, label });
        Ok(id)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|n| n == name).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `(v, w)` pairs of all edges; meaningful as an HNN description only
    /// when the presentation has one vertex.
    pub fn edge_pairs(&self) -> Vec<(IntVec2, IntVec2)> {
        self.edges.iter().map(|e| (e.v.clone(), e.w.clone())).collect()
    }

    /// `(v, w)` pairs of the loops based at `vertex`.
    pub fn loop_pairs(&self, vertex: VertexId) -> Vec<(IntVec2, IntVec2)> {
        self.edges
            .iter()
            .filter(|e| e.from == vertex && e.to == vertex)
            .map(|e| (e.v.clone(), e.w.clone()))
            .collect()
    }

    /// Every attaching vector incident to `vertex`; a loop contributes both ends.
    pub fn incident_vectors(&self, vertex: VertexId) -> Vec<IntVec2> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.from == vertex {
                out.push(e.v.clone());
            }
            if e.to == vertex {
                out.push(e.w.clone());
            }
        }
        out
    }

    /// Checks the structural invariants: endpoints exist, vectors nonzero,
    /// names and labels unique.
    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for n in &self.vertices {
            if !names.insert(n) {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let mut labels = BTreeSet::new();
        for e in &self.edges {
            if !labels.insert(&e.label) {
                return Err(Error::DuplicateEdge(e.label.clone()));
            }
            for id in [e.from, e.to] {
                if id.0 >= self.vertices.len() {
                    return Err(Error::UnknownVertex(id.to_string()));
                }
            }
            if e.v.is_zero() || e.w.is_zero() {
                return Err(Error::ZeroVector);
            }
        }
        Ok(())
    }

    /// Copy with edge `id` traversed in the opposite direction.
    pub fn with_edge_reversed(&self, id: EdgeId) -> TubularPresentation {
        let mut g = self.clone();
        g.edges[id.0] = g.edges[id.0].reversed();
        g
    }
}

/// Replaces every attaching vector at `vertex` by `U·vector`, for unimodular `U`.
pub fn change_basis(g: &TubularPresentation, vertex: VertexId, u: &IntMat2) -> Result<TubularPresentation> {
    if !u.is_unimodular() {
        return Err(Error::NotUnimodular(u.det()));
    }
    if vertex.0 >= g.vertices.len() {
        return Err(Error::UnknownVertex(vertex.to_string()));
    }
    let mut out = g.clone();
    for e in &mut out.edges {
        if e.from == vertex {
            e.v = u.apply(&e.v);
        }
        if e.to == vertex {
            e.w = u.apply(&e.w);
        }
    }
    Ok(out)
}

/// Parameters of `G({p_i, q_i})`: `a_i ↦ a₀^{p_i} a_i a₀^{q_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GpqParams {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl GpqParams {
    pub fn new(p: Vec<i64>, q: Vec<i64>) -> Result<Self> {
        if p.len() != q.len() || p.is_empty() {
            return Err(Error::GpqLength { p: p.len(), q: q.len() });
        }
        Ok(GpqParams { p, q })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.p.iter().copied().zip(self.q.iter().copied())
    }

    pub fn display_name(&self) -> String {
        let list = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("gpq(p=[{}],q=[{}])", list(&self.p), list(&self.q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gersten() -> TubularPresentation {
        TubularPresentation::single_vertex(
            "gersten",
            &[((0, 1).into(), (1, 1).into()), ((0, 1).into(), (2, 1).into())],
        )
        .unwrap()
    }

    #[test]
    fn change_basis_identity_is_noop() {
        let g = gersten();
        assert_eq!(change_basis(&g, VertexId(0), &IntMat2::identity()).unwrap(), g);
    }

    #[test]
    fn change_basis_swap() {
        let g = gersten();
        let h = change_basis(&g, VertexId(0), &IntMat2::from_i64(0, 1, 1, 0)).unwrap();
        assert_eq!(h.edges[0].v, IntVec2::new(1, 0));
        assert_eq!(h.edges[1].w, IntVec2::new(1, 2));
    }

    #[test]
    fn change_basis_rejects_non_unimodular() {
        let g = gersten();
        let err = change_basis(&g, VertexId(0), &IntMat2::from_i64(2, 0, 0, 1)).unwrap_err();
        assert_eq!(err, Error::NotUnimodular(2.into()));
    }

    #[test]
    fn add_edge_rejects_bad_input() {
        let mut g = TubularPresentation::new("g");
        let v = g.add_vertex("V").unwrap();
        assert_eq!(g.add_vertex("V"), Err(Error::DuplicateVertex("V".into())));
        assert_eq!(g.add_edge("e", v, IntVec2::zero(), v, (1, 0).into()), Err(Error::ZeroVector));
        g.add_edge("e", v, (1, 0).into(), v, (0, 1).into()).unwrap();
        assert_eq!(
            g.add_edge("e", v, (1, 0).into(), v, (0, 1).into()),
            Err(Error::DuplicateEdge("e".into()))
        );
    }

    #[test]
    fn gpq_length_checked() {
        assert!(GpqParams::new(vec![0], vec![0, 1]).is_err());
        assert!(GpqParams::new(vec![], vec![]).is_err());
        assert_eq!(GpqParams::new(vec![0, 0], vec![1, 2]).unwrap().display_name(), "gpq(p=[0,0],q=[1,2])");
    }
}
