//! Equitable sets and wall dilation.
//!
//! An equitable set picks finitely many circles `S_v ⊂ Z²` per vertex so that
//! both ends of every edge meet the same total number of circle points. Each
//! such point pair is joined by an arc; arcs carry the weight
//! `ω = |det[v_e, s_from]| / |det[w_e, s_to]|`, and a wall is dilated when some
//! cycle of arcs has weight product different from 1.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{canonical_primitives, det2, rat_serde, rat_to_string, IntVec2, Rat};
use crate::presentation::{EdgeId, TubularPresentation, VertexId};
use crate::special::passing_pivots;

/// Circles `S_v`, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquitableSet {
    pub sets: Vec<Vec<IntVec2>>,
}

fn intersections(set: &[IntVec2], x: &IntVec2) -> BigInt {
    set.iter().map(|s| det2(s, x).abs()).sum()
}

fn has_finite_index(set: &[IntVec2]) -> bool {
    set.iter().enumerate().any(|(i, a)| set[i + 1..].iter().any(|b| !det2(a, b).is_zero()))
}

/// Reason `s` fails to be equitable for `g`, if it does.
pub fn equitable_failure(g: &TubularPresentation, s: &EquitableSet) -> Option<String> {
    if s.sets.len() != g.vertices.len() {
        return Some(format!("{} circle sets for {} vertices", s.sets.len(), g.vertices.len()));
    }
    for e in &g.edges {
        let lhs = intersections(&s.sets[e.from.0], &e.v);
        let rhs = intersections(&s.sets[e.to.0], &e.w);
        if lhs != rhs {
            return Some(format!("edge `{}`: {lhs} != {rhs}", e.label));
        }
    }
    for v in g.vertex_ids() {
        if !has_finite_index(&s.sets[v.0]) {
            return Some(format!("circles at {} do not span a finite-index subgroup", g.vertex_name(v)));
        }
    }
    None
}

pub fn verify_equitable(g: &TubularPresentation, s: &EquitableSet) -> bool {
    equitable_failure(g, s).is_none()
}

/// `{w₁ − v₁, w₁ + v₁}` for the first independent pair at which the
/// determinant test passes.
pub fn canonical_th3_set(edges: &[(IntVec2, IntVec2)]) -> Result<EquitableSet> {
    if edges.iter().any(|(v, w)| v.is_zero() || w.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let Some(first) = edges.iter().position(|(v, w)| !det2(v, w).is_zero()) else {
        return Err(Error::NoIndependentPair);
    };
    match passing_pivots(edges).next() {
        Some(p) => {
            let (v1, w1) = &edges[p];
            Ok(EquitableSet { sets: vec![vec![w1.sub(v1), w1.add(v1)]] })
        }
        None => {
            let (edge, pivot, lhs, rhs) =
                crate::special::det_condition_failure(edges, first).expect("pivot failed");
            Err(Error::DeterminantCondition { edge, pivot: Box::new(pivot), lhs, rhs })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EquitableSet),
    NotFound { coord_bound: i64, size_bound: usize },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&EquitableSet> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

const MAX_CANDIDATE_SETS: usize = 5_000_000;

/// A vertex's admissible circle multisets with their intersection counts
/// at every incident edge end.
struct VertexChoices {
    sets: Vec<(Vec<usize>, Vec<u128>)>,
}

fn to_u128(x: BigInt) -> Result<u128> {
    x.to_u128().ok_or_else(|| Error::TooLarge("intersection number".into()))
}

/// Edge ends at `v` as `(edge index, is_from)`.
fn ends_at(g: &TubularPresentation, v: VertexId) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.from == v {
            out.push((i, true));
        }
        if e.to == v {
            out.push((i, false));
        }
    }
    out
}

fn vertex_choices(
    g: &TubularPresentation,
    v: VertexId,
    candidates: &[IntVec2],
    size_bound: usize,
) -> Result<VertexChoices> {
    let ends = ends_at(g, v);
    let counts: Vec<Vec<u128>> = candidates
        .iter()
        .map(|c| {
            ends.iter()
                .map(|&(i, from)| {
                    let e = &g.edges[i];
                    to_u128(det2(c, if from { &e.v } else { &e.w }).abs())
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    // Loops at v must balance within this vertex alone.
    let loop_pairs: Vec<(usize, usize)> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_loop() && e.from == v)
        .map(|(i, _)| {
            let a = ends.iter().position(|&x| x == (i, true)).unwrap();
            let b = ends.iter().position(|&x| x == (i, false)).unwrap();
            (a, b)
        })
        .collect();

    let mut sets = Vec::new();
    let mut stack = Vec::new();
    for size in 2..=size_bound {
        let mut sums = vec![0u128; ends.len()];
        extend_multisets(&counts, size, 0, &mut stack, &mut sums, &mut |idx, sums| {
            let distinct = idx.windows(2).any(|w| w[0] != w[1]);
            if distinct && loop_pairs.iter().all(|&(a, b)| sums[a] == sums[b]) {
                sets.push((idx.to_vec(), sums.to_vec()));
            }
            sets.len() <= MAX_CANDIDATE_SETS
        })?;
    }
    Ok(VertexChoices { sets })
}

/// Non-decreasing index sequences of length `size` starting at `start`, in
/// lexicographic order, with running intersection sums.
fn extend_multisets(
    counts: &[Vec<u128>],
    size: usize,
    start: usize,
    stack: &mut Vec<usize>,
    sums: &mut [u128],
    visit: &mut dyn FnMut(&[usize], &[u128]) -> bool,
) -> Result<()> {
    if stack.len() == size {
        if !visit(stack, sums) {
            return Err(Error::TooLarge("candidate circle sets".into()));
        }
        return Ok(());
    }
    for i in start..counts.len() {
        for (s, c) in sums.iter_mut().zip(&counts[i]) {
            *s = s.checked_add(*c).ok_or_else(|| Error::TooLarge("intersection number".into()))?;
        }
        stack.push(i);
        extend_multisets(counts, size, i, stack, sums, visit)?;
        stack.pop();
        for (s, c) in sums.iter_mut().zip(&counts[i]) {
            *s -= *c;
        }
    }
    Ok(())
}

/// First equitable set, in lexicographic order over vertices, among
/// multisets of canonical primitive circles with coordinates bounded by
/// `coord_bound` and at most `size_bound` circles per vertex. Smaller
/// multisets come first; within a size, multisets are ordered
/// lexicographically by candidate position (max-norm, then coordinates).
pub fn equitable_search(g: &TubularPresentation, coord_bound: i64, size_bound: usize) -> Result<SearchOutcome> {
    if coord_bound < 1 || size_bound < 1 {
        return Err(Error::InvalidBounds);
    }
    let candidates = canonical_primitives(coord_bound);
    let choices: Vec<VertexChoices> =
        g.vertex_ids().map(|v| vertex_choices(g, v, &candidates, size_bound)).collect::<Result<_>>()?;
    let ends: Vec<Vec<(usize, bool)>> = g.vertex_ids().map(|v| ends_at(g, v)).collect();

    // Non-loop edges checked once both endpoints are chosen: (edge, later vertex).
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); g.vertices.len()];
    for (i, e) in g.edges.iter().enumerate().filter(|(_, e)| !e.is_loop()) {
        let from_pos = ends[e.from.0].iter().position(|&x| x == (i, true)).unwrap();
        let to_pos = ends[e.to.0].iter().position(|&x| x == (i, false)).unwrap();
        checks[e.from.0.max(e.to.0)].push((i, from_pos, to_pos));
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(g.vertices.len());
    if search_dfs(g, &choices, &checks, &mut chosen) {
        let sets = chosen
            .iter()
            .enumerate()
            .map(|(v, &k)| choices[v].sets[k].0.iter().map(|&i| candidates[i].clone()).collect())
            .collect();
        return Ok(SearchOutcome::Found(EquitableSet { sets }));
    }
    Ok(SearchOutcome::NotFound { coord_bound, size_bound })
}

fn search_dfs(
    g: &TubularPresentation,
    choices: &[VertexChoices],
    checks: &[Vec<(usize, usize, usize)>],
    chosen: &mut Vec<usize>,
) -> bool {
    let v = chosen.len();
    if v == choices.len() {
        return true;
    }
    for k in 0..choices[v].sets.len() {
        let ok = checks[v].iter().all(|&(i, fp, tp)| {
            let e = &g.edges[i];
            let sum_at = |u: VertexId, pos: usize| {
                let pick = if u.0 == v { k } else { chosen[u.0] };
                choices[u.0].sets[pick].1[pos]
            };
            sum_at(e.from, fp) == sum_at(e.to, tp)
        });
        if ok {
            chosen.push(k);
            if search_dfs(g, choices, checks, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// A loop whose two vectors are parallel with different lengths forces every
/// circle at its vertex onto that line, so no equitable set exists.
pub fn forced_no_equitable(g: &TubularPresentation) -> Option<EdgeId> {
    g.edges
        .iter()
        .find(|e| e.is_loop() && det2(&e.v, &e.w).is_zero() && e.v.max_norm() != e.w.max_norm())
        .map(|e| e.id)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub vertex: VertexId,
    pub index: usize,
    pub vector: IntVec2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub edge: EdgeId,
    pub from: usize,
    pub to: usize,
    pub weight: Rat,
}

/// How the intersection points of one edge are paired: `table[i][j]` arcs
/// join circle `rows[i]` (at the `from` end) to circle `cols[j]` (at the `to` end).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMatching {
    pub edge: EdgeId,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallGraph {
    pub circles: Vec<Circle>,
    pub arcs: Vec<Arc>,
    pub matchings: Vec<EdgeMatching>,
    circle_names: Vec<String>,
    edge_labels: Vec<String>,
}

impl WallGraph {
    pub fn circle_name(&self, c: usize) -> &str {
        &self.circle_names[c]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edge_labels[e.0]
    }

    /// One arc per line: `label from-circle to-circle p/q`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                self.edge_label(a.edge),
                self.circle_name(a.from),
                self.circle_name(a.to),
                rat_to_string(&a.weight)
            );
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph walls {\n");
        for (i, c) in self.circles.iter().enumerate() {
            let _ = writeln!(out, "  \"{}\" [label=\"{} {}\"];", self.circle_name(i), self.circle_name(i), c.vector);
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{} {}\"];",
                self.circle_name(a.from),
                self.circle_name(a.to),
                self.edge_label(a.edge),
                rat_to_string(&a.weight)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn to_usize(x: BigInt) -> Result<usize> {
    x.to_usize().ok_or_else(|| Error::TooLarge("intersection number".into()))
}

/// Per-edge intersection data with empty tables.
fn matching_skeletons(g: &TubularPresentation, s: &EquitableSet, offsets: &[usize]) -> Result<Vec<EdgeMatching>> {
    g.edges
        .iter()
        .map(|e| {
            let side = |v: VertexId, x: &IntVec2| -> Result<(Vec<usize>, Vec<usize>)> {
                let mut ids = Vec::new();
                let mut sums = Vec::new();
                for (k, c) in s.sets[v.0].iter().enumerate() {
                    let n = to_usize(det2(c, x).abs())?;
                    if n > 0 {
                        ids.push(offsets[v.0] + k);
                        sums.push(n);
                    }
                }
                Ok((ids, sums))
            };
            let (rows, row_sums) = side(e.from, &e.v)?;
            let (cols, col_sums) = side(e.to, &e.w)?;
            Ok(EdgeMatching { edge: e.id, rows, cols, row_sums, col_sums, table: Vec::new() })
        })
        .collect()
}

/// The order-preserving matching: points listed circle by circle on each
/// side and paired in order.
fn northwest_table(row_sums: &[usize], col_sums: &[usize]) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0; col_sums.len()]; row_sums.len()];
    let (mut rs, mut cs) = (row_sums.to_vec(), col_sums.to_vec());
    let (mut i, mut j) = (0, 0);
    while i < rs.len() && j < cs.len() {
        let m = rs[i].min(cs[j]);
        table[i][j] += m;
        rs[i] -= m;
        cs[j] -= m;
        if rs[i] == 0 {
            i += 1;
        }
        if j < cs.len() && cs[j] == 0 {
            j += 1;
        }
    }
    table
}

fn build_graph(g: &TubularPresentation, s: &EquitableSet, matchings: Vec<EdgeMatching>) -> WallGraph {
    let mut circles = Vec::new();
    let mut circle_names = Vec::new();
    for v in g.vertex_ids() {
        for (k, c) in s.sets[v.0].iter().enumerate() {
            circles.push(Circle { vertex: v, index: k, vector: c.clone() });
            circle_names.push(format!("{}[{}]", g.vertex_name(v), k));
        }
    }
    let mut arcs = Vec::new();
    for m in &matchings {
        let e = &g.edges[m.edge.0];
        for (i, &r) in m.rows.iter().enumerate() {
            for (j, &c) in m.cols.iter().enumerate() {
                let weight = Rat::new(det2(&e.v, &circles[r].vector).abs(), det2(&e.w, &circles[c].vector).abs());
                for _ in 0..m.table[i][j] {
                    arcs.push(Arc { edge: e.id, from: r, to: c, weight: weight.clone() });
                }
            }
        }
    }
    WallGraph { circles, arcs, matchings, circle_names, edge_labels: g.edges.iter().map(|e| e.label.clone()).collect() }
}

fn offsets(s: &EquitableSet) -> Vec<usize> {
    s.sets
        .iter()
        .scan(0, |acc, set| {
            let o = *acc;
            *acc += set.len();
            Some(o)
        })
        .collect()
}

/// Wall graph of `s` under the order-preserving matching.
pub fn wall_graph(g: &TubularPresentation, s: &EquitableSet) -> Result<WallGraph> {
    if let Some(reason) = equitable_failure(g, s) {
        return Err(Error::NotEquitable(reason));
    }
    let mut matchings = matching_skeletons(g, s, &offsets(s))?;
    for m in &mut matchings {
        m.table = northwest_table(&m.row_sums, &m.col_sums);
    }
    Ok(build_graph(g, s, matchings))
}

/// One step of a dilation cycle; `forward` is false when the arc is
/// traversed against its orientation (weight inverted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStep {
    pub edge: String,
    pub from: String,
    pub to: String,
    pub forward: bool,
    #[serde(with = "rat_serde")]
    pub weight: Rat,
}

/// Value of the multiplicative potential on one circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirclePotential {
    pub circle: String,
    #[serde(with = "rat_serde")]
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DilationVerdict {
    /// Potentials with `value(to) = value(from) · weight` on every arc.
    NonDilated { potentials: Vec<CirclePotential> },
    Dilated { cycle: Vec<CycleStep>, holonomy: Rat },
}

impl DilationVerdict {
    pub fn is_dilated(&self) -> bool {
        matches!(self, DilationVerdict::Dilated { .. })
    }
}

pub fn dilation_decide(w: &WallGraph) -> DilationVerdict {
    let order: Vec<usize> = (0..w.arcs.len()).collect();
    dilation_decide_with_order(w, &order)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// As [`dilation_decide`], with the spanning forest grown from arcs in the
/// given order (a permutation of arc indices).
pub fn dilation_decide_with_order(w: &WallGraph, order: &[usize]) -> DilationVerdict {
    let n = w.circles.len();
    let mut uf: Vec<usize> = (0..n).collect();
    let mut tree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut non_tree = Vec::new();
    for &a in order {
        let arc = &w.arcs[a];
        let (ra, rb) = (find(&mut uf, arc.from), find(&mut uf, arc.to));
        if ra == rb {
            non_tree.push(a);
        } else {
            uf[ra] = rb;
            tree[arc.from].push((a, arc.to));
            tree[arc.to].push((a, arc.from));
        }
    }

    // Potentials: crossing a tree arc forwards multiplies by its weight.
    let mut pot: Vec<Option<Rat>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(Rat::one());
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(a, y) in &tree[x] {
                if pot[y].is_some() {
                    continue;
                }
                let arc = &w.arcs[a];
                let px = pot[x].clone().unwrap();
                pot[y] = Some(if arc.from == x { px * &arc.weight } else { px / &arc.weight });
                parent[y] = Some(a);
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }

    for a in non_tree {
        let arc = &w.arcs[a];
        let holonomy = &arc.weight * pot[arc.from].as_ref().unwrap() / pot[arc.to].as_ref().unwrap();
        if !holonomy.is_one() {
            let mut cycle = vec![step(w, a, true)];
            cycle.extend(tree_path(w, &parent, &depth, arc.to, arc.from));
            return DilationVerdict::Dilated { cycle, holonomy };
        }
    }
    let potentials = pot
        .into_iter()
        .enumerate()
        .map(|(i, p)| CirclePotential { circle: w.circle_name(i).to_string(), value: p.unwrap() })
        .collect();
    DilationVerdict::NonDilated { potentials }
}

/// True iff `potentials` (one per circle, in circle order) satisfy every arc.
pub fn potentials_consistent(w: &WallGraph, potentials: &[CirclePotential]) -> bool {
    potentials.len() == w.circles.len()
        && potentials.iter().all(|p| p.value.is_positive())
        && w.arcs.iter().all(|a| potentials[a.to].value == &potentials[a.from].value * &a.weight)
}

fn step(w: &WallGraph, a: usize, forward: bool) -> CycleStep {
    let arc = &w.arcs[a];
    let (from, to, weight) = if forward {
        (arc.from, arc.to, arc.weight.clone())
    } else {
        (arc.to, arc.from, arc.weight.recip())
    };
    CycleStep {
        edge: w.edge_label(arc.edge).to_string(),
        from: w.circle_name(from).to_string(),
        to: w.circle_name(to).to_string(),
        forward,
        weight,
    }
}

/// Steps along tree arcs from `x` to `y`.
fn tree_path(w: &WallGraph, parent: &[Option<usize>], depth: &[usize], mut x: usize, mut y: usize) -> Vec<CycleStep> {
    let other = |a: usize, node: usize| {
        let arc = &w.arcs[a];
        if arc.from == node {
            arc.to
        } else {
            arc.from
        }
    };
    let mut up = Vec::new();
    let mut down = Vec::new();
    while x != y {
        if depth[x] >= depth[y] {
            let a = parent[x].unwrap();
            up.push(step(w, a, w.arcs[a].from == x));
            x = other(a, x);
        } else {
            let a = parent[y].unwrap();
            down.push(step(w, a, w.arcs[a].to == y));
            y = other(a, y);
        }
    }
    up.extend(down.into_iter().rev());
    up
}

/// Product of the step weights of a cycle.
pub fn cycle_holonomy(cycle: &[CycleStep]) -> Rat {
    cycle.iter().fold(Rat::one(), |acc, s| acc * &s.weight)
}

/// All contingency tables with the given margins, in lexicographic order.
fn all_tables(row_sums: &[usize], col_sums: &[usize], budget: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        j: usize,
        rows: &mut Vec<usize>,
        cols: &mut Vec<usize>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        budget: usize,
    ) {
        if out.len() >= budget {
            return;
        }
        if i == rows.len() {
            if cols.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if j + 1 == cols.len() {
            // Last column takes whatever the row has left.
            let m = rows[i];
            if m > cols[j] {
                return;
            }
            cur[i][j] = m;
            cols[j] -= m;
            let saved = rows[i];
            rows[i] = 0;
            rec(i + 1, 0, rows, cols, cur, out, budget);
            rows[i] = saved;
            cols[j] += m;
            cur[i][j] = 0;
            return;
        }
        for m in 0..=rows[i].min(cols[j]) {
            cur[i][j] = m;
            rows[i] -= m;
            cols[j] -= m;
            rec(i, j + 1, rows, cols, cur, out, budget);
            rows[i] += m;
            cols[j] += m;
        }
        cur[i][j] = 0;
    }
    let mut out = Vec::new();
    if row_sums.is_empty() || col_sums.is_empty() {
        out.push(vec![vec![0; col_sums.len()]; row_sums.len()]);
        return out;
    }
    let mut cur = vec![vec![0; col_sums.len()]; row_sums.len()];
    rec(0, 0, &mut row_sums.to_vec(), &mut col_sums.to_vec(), &mut cur, &mut out, budget);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingSpectrum {
    pub tried: usize,
    pub non_dilated: usize,
    pub dilated: usize,
    /// True when every matching (up to permuting points on a circle) was tried.
    pub exhaustive: bool,
}

/// Dilation verdicts over all circle-level matchings of `s`, up to `budget`
/// wall graphs. Matchings that differ only by permuting points on the same
/// circle give identical wall graphs and are counted once.
pub fn matching_spectrum(g: &TubularPresentation, s: &EquitableSet, budget: usize) -> Result<MatchingSpectrum> {
    if let Some(reason) = equitable_failure(g, s) {
        return Err(Error::NotEquitable(reason));
    }
    let skeletons = matching_skeletons(g, s, &offsets(s))?;
    let per_edge: Vec<Vec<Vec<Vec<usize>>>> =
        skeletons.iter().map(|m| all_tables(&m.row_sums, &m.col_sums, budget + 1)).collect();
    let total = per_edge.iter().try_fold(1usize, |acc, t| acc.checked_mul(t.len()));
    let exhaustive = per_edge.iter().all(|t| t.len() <= budget) && total.is_some_and(|t| t <= budget);

    let mut spectrum = MatchingSpectrum { tried: 0, non_dilated: 0, dilated: 0, exhaustive };
    let mut idx = vec![0usize; per_edge.len()];
    loop {
        if spectrum.tried >= budget {
            break;
        }
        let mut ms = skeletons.clone();
        for (m, (&k, tables)) in ms.iter_mut().zip(idx.iter().zip(&per_edge)) {
            m.table = tables[k].clone();
        }
        let w = build_graph(g, s, ms);
        if dilation_decide(&w).is_dilated() {
            spectrum.dilated += 1;
        } else {
            spectrum.non_dilated += 1;
        }
        spectrum.tried += 1;
        // Odometer over the per-edge choices.
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(spectrum);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_edge[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    Ok(spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(v: (i64, i64), w: (i64, i64)) -> (IntVec2, IntVec2) {
        (v.into(), w.into())
    }

    fn single(edges: &[(IntVec2, IntVec2)]) -> TubularPresentation {
        TubularPresentation::single_vertex("g", edges).unwrap()
    }

    fn gersten() -> TubularPresentation {
        let mut g = TubularPresentation::new("gersten");
        let v = g.add_vertex("V").unwrap();
        g.add_edge("b", v, (0, 1).into(), v, (1, 1).into()).unwrap();
        g.add_edge("c", v, (0, 1).into(), v, (2, 1).into()).unwrap();
        g
    }

    fn set(vs: &[(i64, i64)]) -> EquitableSet {
        EquitableSet { sets: vec![vs.iter().map(|&v| v.into()).collect()] }
    }

    #[test]
    fn verify_examples() {
        assert!(verify_equitable(&gersten(), &set(&[(0, 1), (2, 1)])));
        assert!(!verify_equitable(&gersten(), &set(&[(1, 0), (1, 2)])));
        let lyman11 = single(&[e((1, 1), (-1, 1)), e((1, 1), (-1, 1))]);
        assert!(verify_equitable(&lyman11, &set(&[(-2, 0), (0, 2)])));
        assert!(!verify_equitable(&gersten(), &set(&[(0, 1), (0, 2)])));
    }

    #[test]
    fn canonical_set_examples() {
        let lyman12 = [e((1, 1), (-1, 1)), e((2, 1), (-2, 1))];
        assert_eq!(canonical_th3_set(&lyman12).unwrap(), set(&[(-2, 0), (0, 2)]));
        assert_eq!(canonical_th3_set(&[e((1, 0), (0, 1))]).unwrap(), set(&[(-1, 1), (1, 1)]));
        assert!(matches!(
            canonical_th3_set(&gersten().edge_pairs()),
            Err(Error::DeterminantCondition { .. })
        ));
    }

    #[test]
    fn search_examples() {
        let s = equitable_search(&gersten(), 3, 3).unwrap();
        assert!(verify_equitable(&gersten(), s.found().unwrap()));
        let bs = single(&[e((1, 0), (2, 0))]);
        assert!(matches!(equitable_search(&bs, 3, 3).unwrap(), SearchOutcome::NotFound { .. }));
        assert_eq!(forced_no_equitable(&bs), Some(EdgeId(0)));
        assert_eq!(equitable_search(&bs, 0, 3), Err(Error::InvalidBounds));
    }

    #[test]
    fn gersten_wall_graph() {
        let w = wall_graph(&gersten(), &set(&[(0, 1), (2, 1)])).unwrap();
        let self_arc = w.arcs.iter().find(|a| a.edge == EdgeId(0) && a.from == 1 && a.to == 1).unwrap();
        assert_eq!(self_arc.weight, rat(2, 1));
        let DilationVerdict::Dilated { cycle, holonomy } = dilation_decide(&w) else { panic!() };
        assert_ne!(holonomy, Rat::one());
        assert_eq!(cycle_holonomy(&cycle), holonomy);
        assert!(w.to_edge_list().contains("b V[1] V[1] 2/1"));
        assert!(w.to_dot().starts_with("digraph walls {"));
    }

    #[test]
    fn lyman_non_dilated() {
        let edges = [e((1, 1), (-1, 1)), e((1, 1), (-1, 1))];
        let g = single(&edges);
        let w = wall_graph(&g, &canonical_th3_set(&edges).unwrap()).unwrap();
        assert!(w.arcs.iter().all(|a| a.weight.is_one()));
        assert!(!dilation_decide(&w).is_dilated());
    }

    #[test]
    fn zero_intersections_give_no_arcs() {
        let g = single(&[e((1, 0), (1, 0))]);
        let w = wall_graph(&g, &set(&[(1, 0), (0, 1)])).unwrap();
        assert!(w.arcs.iter().all(|a| a.from == 1 && a.to == 1));
    }

    #[test]
    fn forest_is_non_dilated() {
        let mut g = TubularPresentation::new("tree");
        let a = g.add_vertex("A").unwrap();
        let b = g.add_vertex("B").unwrap();
        g.add_edge("e", a, (1, 0).into(), b, (1, 0).into()).unwrap();
        let s = EquitableSet { sets: vec![vec![(0, 1).into(), (1, 1).into()], vec![(0, 1).into(), (1, 1).into()]] };
        let w = wall_graph(&g, &s).unwrap();
        assert!(!dilation_decide(&w).is_dilated());
    }

    #[test]
    fn table_enumeration() {
        assert_eq!(northwest_table(&[2], &[1, 1]), vec![vec![1, 1]]);
        assert_eq!(northwest_table(&[1, 2], &[2, 1]), vec![vec![1, 0], vec![1, 1]]);
        let t = all_tables(&[1, 2], &[2, 1], 100);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|m| m[0].iter().sum::<usize>() == 1 && m[1].iter().sum::<usize>() == 2));
    }

    #[test]
    fn spectrum_on_gersten() {
        let spectrum = matching_spectrum(&gersten(), &set(&[(0, 1), (2, 1)]), 1000).unwrap();
        assert!(spectrum.exhaustive);
        assert_eq!(spectrum.tried, spectrum.dilated + spectrum.non_dilated);
        assert!(spectrum.dilated > 0);
    }
}
