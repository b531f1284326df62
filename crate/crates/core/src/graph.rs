//! The weak-order graph as a certified data structure: a labeled DAG whose
//! vertices carry dimension and (optionally) rank, and whose edges carry a
//! simple-root label and a type in {U, T, N}.
//!
//! Certification rules, with witnesses:
//! (a) dimension increments by exactly 1 along every edge;
//! (b) per (target, label) there are 0, 1 or 2 incoming edges; two incoming
//!     edges must both be type T, and a lone type-T edge is an incomplete
//!     trichotomy (warning under `allow_truncated`, failure otherwise);
//! (c) edges sharing both endpoints are all type T, or all type U with
//!     pairwise-orthogonal labels;
//! (d) per (vertex, label) at most one outgoing edge, and never both an
//!     incoming and an outgoing edge;
//! (e) acyclic, with exactly one maximal vertex per connected component;
//! (f) rank is constant along U edges and increments along T and N edges,
//!     wherever ranks are present.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cartan::CartanDatum;
use crate::error::Error;
use crate::weyl::WeylGroupTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeType {
    U,
    T,
    N,
}

impl EdgeType {
    /// N is the double (degree-2) edge; U and T are simple.
    pub fn is_double(self) -> bool {
        self == EdgeType::N
    }

    /// Rank increment from source to target along an edge of this type.
    pub fn rank_step(self) -> i64 {
        match self {
            EdgeType::U => 0,
            EdgeType::T | EdgeType::N => 1,
        }
    }
}

impl std::fmt::Display for EdgeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EdgeType::U => "U",
            EdgeType::T => "T",
            EdgeType::N => "N",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitVertex {
    pub id: String,
    pub dim: i64,
    pub rank: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEdge {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
    pub edge_type: EdgeType,
}

/// An immutable weak-order graph. Vertices are stored sorted by (dim, id)
/// and edges by (src id, dst id, label); indices refer to that order.
#[derive(Debug, Clone)]
pub struct OrbitGraph {
    cartan: CartanDatum,
    rank_of_top: Option<i64>,
    vertices: Vec<OrbitVertex>,
    edges: Vec<OrbitEdge>,
    id_index: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

/// Raw construction input before interning and sorting.
pub struct GraphSpec {
    pub cartan: CartanDatum,
    pub rank_of_top: Option<i64>,
    pub vertices: Vec<OrbitVertex>,
    /// (src id, dst id, label, type)
    pub edges: Vec<(String, String, usize, EdgeType)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Failure {
    pub rule: String,
    pub witness: String,
}

/// Outcome of a certification layer: pass/fail with witnesses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certification {
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
}

impl Certification {
    pub fn new() -> Certification {
        Certification { passed: true, failures: Vec::new(), warnings: Vec::new() }
    }

    pub fn fail(&mut self, rule: &str, witness: String) {
        self.passed = false;
        self.failures.push(Failure { rule: rule.to_string(), witness });
    }

    pub fn warn(&mut self, message: String) {
        self.warnings.push(message);
    }
}

impl Default for Certification {
    fn default() -> Self {
        Self::new()
    }
}

/// How a simple root sits relative to a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeStatus {
    /// No incident edge with this label: the minimal parabolic stabilizes.
    Stabilizes,
    Raises { edge_type: EdgeType, target: String },
    LoweredBy { edge_type: EdgeType, sources: Vec<String> },
}

impl OrbitGraph {
    pub fn new(spec: GraphSpec) -> Result<OrbitGraph, Error> {
        let mut vertices = spec.vertices;
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        vertices.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut id_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if id_index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let rank = spec.cartan.rank();
        let mut edges = Vec::with_capacity(spec.edges.len());
        let mut seen = BTreeSet::new();
        for (src, dst, label, edge_type) in spec.edges {
            let s = *id_index.get(&src).ok_or(Error::DanglingEdge(src.clone()))?;
            let d = *id_index.get(&dst).ok_or(Error::DanglingEdge(dst.clone()))?;
            if label >= rank {
                return Err(Error::BadEdgeLabel { label, rank });
            }
            if !seen.insert((src.clone(), dst.clone(), label)) {
                return Err(Error::DuplicateEdge { src, dst, label });
            }
            edges.push(OrbitEdge { src: s, dst: d, label, edge_type });
        }
        edges.sort_by(|a, b| {
            (&vertices[a.src].id, &vertices[a.dst].id, a.label).cmp(&(
                &vertices[b.src].id,
                &vertices[b.dst].id,
                b.label,
            ))
        });
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            out_edges[e.src].push(k);
            in_edges[e.dst].push(k);
        }
        Ok(OrbitGraph {
            cartan: spec.cartan,
            rank_of_top: spec.rank_of_top,
            vertices,
            edges,
            id_index,
            out_edges,
            in_edges,
        })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank_of_top(&self) -> Option<i64> {
        self.rank_of_top
    }

    /// Build the Weyl group table of the graph's Cartan datum.
    pub fn weyl_table(&self) -> Result<WeylGroupTable, Error> {
        WeylGroupTable::new(self.cartan.clone())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[OrbitVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[OrbitEdge] {
        &self.edges
    }

    pub fn vertex(&self, idx: usize) -> &OrbitVertex {
        &self.vertices[idx]
    }

    pub fn vertex_id(&self, idx: usize) -> &str {
        &self.vertices[idx].id
    }

    pub fn index_of(&self, id: &str) -> Result<usize, Error> {
        self.id_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &OrbitEdge> {
        self.out_edges[v].iter().map(|&k| &self.edges[k])
    }

    pub fn out_edge_ids(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &OrbitEdge> {
        self.in_edges[v].iter().map(|&k| &self.edges[k])
    }

    fn edge_name(&self, e: &OrbitEdge) -> String {
        format!(
            "{} -{}:{}-> {}",
            self.vertices[e.src].id,
            self.cartan.root_name(e.label),
            e.edge_type,
            self.vertices[e.dst].id
        )
    }

    /// Weakly connected components, each as a sorted vertex index list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for e in self.out_edges(v).chain(self.in_edges(v)) {
                    for u in [e.src, e.dst] {
                        if comp[u] == usize::MAX {
                            comp[u] = count;
                            stack.push(u);
                        }
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// The unique maximal vertex of the component containing `v`, when the
    /// graph certifies; with multiple maxima this returns an error.
    pub fn top_of_component(&self, v: usize) -> Result<usize, Error> {
        for comp in self.components() {
            if comp.contains(&v) {
                let maxima: Vec<usize> = comp
                    .iter()
                    .copied()
                    .filter(|&u| self.out_edges[u].is_empty())
                    .collect();
                return match maxima.as_slice() {
                    [top] => Ok(*top),
                    _ => Err(Error::InvalidGraph(format!(
                        "component of `{}` has {} maximal vertices",
                        self.vertices[v].id,
                        maxima.len()
                    ))),
                };
            }
        }
        unreachable!("vertex index out of range")
    }

    /// Run all structural checks; never fails on well-formed input, the
    /// verdict is the report.
    pub fn validate_structure(&self, allow_truncated: bool) -> Certification {
        let mut report = Certification::new();

        // (a) dimension increments
        for e in &self.edges {
            let step = self.vertices[e.dst].dim - self.vertices[e.src].dim;
            if step != 1 {
                report.fail(
                    "dim-step",
                    format!("{}: dimension step is {step}, expected 1", self.edge_name(e)),
                );
            }
        }

        // (b) incoming-edge census per (target, label)
        let mut incoming: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            incoming.entry((e.dst, e.label)).or_default().push(k);
        }
        for ((dst, label), ks) in &incoming {
            let types: Vec<EdgeType> = ks.iter().map(|&k| self.edges[k].edge_type).collect();
            match ks.len() {
                0 => {}
                1 => {
                    if types[0] == EdgeType::T {
                        let msg = format!(
                            "lone type-T edge {}: the trichotomy has a second source not present in the graph",
                            self.edge_name(&self.edges[ks[0]])
                        );
                        if allow_truncated {
                            report.warn(msg);
                        } else {
                            report.fail("t-pairing", msg);
                        }
                    }
                }
                2 => {
                    if types.iter().any(|&t| t != EdgeType::T) {
                        report.fail(
                            "t-pairing",
                            format!(
                                "two {}-labeled edges into `{}` must both be type T, got {} and {}",
                                self.cartan.root_name(*label),
                                self.vertices[*dst].id,
                                types[0],
                                types[1]
                            ),
                        );
                    }
                }
                _ => {
                    report.fail(
                        "t-pairing",
                        format!(
                            "{} edges labeled {} share the target `{}`; at most two are allowed",
                            ks.len(),
                            self.cartan.root_name(*label),
                            self.vertices[*dst].id
                        ),
                    );
                }
            }
        }

        // (c) parallel edges: same endpoints
        let mut parallel: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            parallel.entry((e.src, e.dst)).or_default().push(k);
        }
        for ((src, dst), ks) in &parallel {
            if ks.len() < 2 {
                continue;
            }
            let all_t = ks.iter().all(|&k| self.edges[k].edge_type == EdgeType::T);
            let all_u = ks.iter().all(|&k| self.edges[k].edge_type == EdgeType::U);
            let mut ok = all_t;
            if !ok && all_u {
                ok = true;
                for (a, &ka) in ks.iter().enumerate() {
                    for &kb in ks.iter().skip(a + 1) {
                        let (la, lb) = (self.edges[ka].label, self.edges[kb].label);
                        if self.cartan.form(la, lb) != 0 {
                            ok = false;
                        }
                    }
                }
            }
            if !ok {
                report.fail(
                    "parallel-edges",
                    format!(
                        "edges `{}` -> `{}` are neither all type T nor all type U with orthogonal labels",
                        self.vertices[*src].id, self.vertices[*dst].id
                    ),
                );
            }
        }

        // (d) per (vertex, label): one outgoing edge, and never in+out
        let mut outgoing: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            outgoing.entry((e.src, e.label)).or_default().push(k);
        }
        for ((src, label), ks) in &outgoing {
            if ks.len() > 1 {
                report.fail(
                    "raising-unique",
                    format!(
                        "vertex `{}` has {} outgoing edges labeled {}; raising is unique per label",
                        self.vertices[*src].id,
                        ks.len(),
                        self.cartan.root_name(*label)
                    ),
                );
            }
            if incoming.contains_key(&(*src, *label)) {
                report.fail(
                    "raising-unique",
                    format!(
                        "vertex `{}` has both incoming and outgoing edges labeled {}",
                        self.vertices[*src].id,
                        self.cartan.root_name(*label)
                    ),
                );
            }
        }

        // (e) acyclicity and unique maximum per component
        if let Some(cycle_at) = self.find_cycle() {
            report.fail(
                "acyclic",
                format!("cycle through vertex `{}`", self.vertices[cycle_at].id),
            );
        } else {
            for comp in self.components() {
                let maxima: Vec<&str> = comp
                    .iter()
                    .filter(|&&v| self.out_edges[v].is_empty())
                    .map(|&v| self.vertices[v].id.as_str())
                    .collect();
                if maxima.len() != 1 {
                    report.fail(
                        "unique-top",
                        format!(
                            "component containing `{}` has maximal vertices [{}]",
                            self.vertices[comp[0]].id,
                            maxima.join(", ")
                        ),
                    );
                }
            }
        }

        // (f) rank rules where ranks are present
        for e in &self.edges {
            if let (Some(rs), Some(rd)) =
                (self.vertices[e.src].rank, self.vertices[e.dst].rank)
            {
                if rd - rs != e.edge_type.rank_step() {
                    report.fail(
                        "rank-step",
                        format!(
                            "{}: rank step is {}, expected {}",
                            self.edge_name(e),
                            rd - rs,
                            e.edge_type.rank_step()
                        ),
                    );
                }
            }
        }

        report
    }

    fn find_cycle(&self) -> Option<usize> {
        // colors: 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertices.len();
        let mut color = vec![0u8; n];
        for start in 0..n {
            if color[start] != 0 {
                continue;
            }
            // iterative DFS with explicit edge iterators
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            color[start] = 1;
            while let Some(&(v, i)) = stack.last() {
                if i < self.out_edges[v].len() {
                    stack.last_mut().unwrap().1 += 1;
                    let e = &self.edges[self.out_edges[v][i]];
                    match color[e.dst] {
                        0 => {
                            color[e.dst] = 1;
                            stack.push((e.dst, 0));
                        }
                        1 => return Some(e.dst),
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Simple roots of a vertex: those labeling no incident edge.
    pub fn delta_of(&self, id: &str) -> Result<BTreeSet<usize>, Error> {
        let v = self.index_of(id)?;
        let mut incident = BTreeSet::new();
        for e in self.out_edges(v).chain(self.in_edges(v)) {
            incident.insert(e.label);
        }
        Ok((0..self.cartan.rank()).filter(|i| !incident.contains(i)).collect())
    }

    pub fn edge_status(&self, id: &str, label: usize) -> Result<EdgeStatus, Error> {
        let v = self.index_of(id)?;
        if label >= self.cartan.rank() {
            return Err(Error::BadSimpleRoot(label));
        }
        if let Some(e) = self.out_edges(v).find(|e| e.label == label) {
            return Ok(EdgeStatus::Raises {
                edge_type: e.edge_type,
                target: self.vertices[e.dst].id.clone(),
            });
        }
        let lowered: Vec<&OrbitEdge> = self.in_edges(v).filter(|e| e.label == label).collect();
        if let Some(first) = lowered.first() {
            return Ok(EdgeStatus::LoweredBy {
                edge_type: first.edge_type,
                sources: lowered.iter().map(|e| self.vertices[e.src].id.clone()).collect(),
            });
        }
        Ok(EdgeStatus::Stabilizes)
    }

    /// The alpha-maximal vertex of the trichotomy at `id`: the target of the
    /// outgoing edge with this label if one exists, otherwise `id` itself.
    pub fn monoid_raise(&self, id: &str, label: usize) -> Result<String, Error> {
        let v = self.index_of(id)?;
        if label >= self.cartan.rank() {
            return Err(Error::BadSimpleRoot(label));
        }
        Ok(match self.out_edges(v).find(|e| e.label == label) {
            Some(e) => self.vertices[e.dst].id.clone(),
            None => id.to_string(),
        })
    }

    /// Propagate ranks down from the component tops. `top_ranks` maps a
    /// component's top vertex id to its rank. Inconsistent propagation or a
    /// conflict with an explicit rank is an error carrying two witness paths.
    pub fn infer_ranks(&self, top_ranks: &BTreeMap<String, i64>) -> Result<OrbitGraph, Error> {
        let n = self.vertices.len();
        let mut rank: Vec<Option<i64>> = vec![None; n];
        // chain of edges used to reach the top, for witness reconstruction
        let mut via: Vec<Option<usize>> = vec![None; n];
        let comps = self.components();
        for comp in &comps {
            let top = self.top_of_component(comp[0]).map_err(|e| {
                Error::RankInference(format!("{e}"))
            })?;
            let top_id = &self.vertices[top].id;
            let r = *top_ranks
                .get(top_id)
                .ok_or_else(|| Error::RankInference(format!("no rank given for top `{top_id}`")))?;
            rank[top] = Some(r);
            // BFS downward
            let mut queue = std::collections::VecDeque::from([top]);
            while let Some(v) = queue.pop_front() {
                let rv = rank[v].unwrap();
                for &k in &self.in_edges[v] {
                    let e = &self.edges[k];
                    let rs = rv - e.edge_type.rank_step();
                    match rank[e.src] {
                        None => {
                            rank[e.src] = Some(rs);
                            via[e.src] = Some(k);
                            queue.push_back(e.src);
                        }
                        Some(prev) if prev != rs => {
                            let p1 = self.witness_path(&via, e.src);
                            let mut p2 = vec![self.edge_name(e)];
                            p2.extend(self.witness_path(&via, v));
                            return Err(Error::RankInference(format!(
                                "vertex `{}` gets rank {prev} along [{}] but rank {rs} along [{}]",
                                self.vertices[e.src].id,
                                p1.join(", "),
                                p2.join(", ")
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut vertices = self.vertices.clone();
        for (v, slot) in vertices.iter_mut().enumerate() {
            let inferred = rank[v].ok_or_else(|| {
                Error::RankInference(format!("vertex `{}` cannot reach a top", slot.id))
            })?;
            if let Some(explicit) = slot.rank {
                if explicit != inferred {
                    let path = self.witness_path(&via, v);
                    return Err(Error::RankInference(format!(
                        "vertex `{}` has explicit rank {explicit} but rank {inferred} along [{}]",
                        slot.id,
                        path.join(", ")
                    )));
                }
            }
            slot.rank = Some(inferred);
        }
        OrbitGraph::new(GraphSpec {
            cartan: self.cartan.clone(),
            rank_of_top: self.rank_of_top,
            vertices,
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        self.vertices[e.src].id.clone(),
                        self.vertices[e.dst].id.clone(),
                        e.label,
                        e.edge_type,
                    )
                })
                .collect(),
        })
    }

    /// Convenience: one rank for every component top.
    pub fn infer_ranks_uniform(&self, rank_of_top: i64) -> Result<OrbitGraph, Error> {
        let mut map = BTreeMap::new();
        for comp in self.components() {
            let top = self
                .top_of_component(comp[0])
                .map_err(|e| Error::RankInference(format!("{e}")))?;
            map.insert(self.vertices[top].id.clone(), rank_of_top);
        }
        self.infer_ranks(&map)
    }

    fn witness_path(&self, via: &[Option<usize>], start: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut v = start;
        while let Some(k) = via[v] {
            let e = &self.edges[k];
            out.push(self.edge_name(e));
            v = e.dst;
        }
        out
    }

    /// The top of the component holding the maximum-dimension vertex; the
    /// anchor for whole-graph orbit and stabilizer computations.
    pub fn principal_top(&self) -> Result<usize, Error> {
        self.top_of_component(self.vertices.len() - 1)
    }

    /// All ranks present?
    pub fn has_ranks(&self) -> bool {
        self.vertices.iter().all(|v| v.rank.is_some())
    }

    /// Rebuild with different vertices/edges (used by builders and tests).
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            cartan: self.cartan.clone(),
            rank_of_top: self.rank_of_top,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        self.vertices[e.src].id.clone(),
                        self.vertices[e.dst].id.clone(),
                        e.label,
                        e.edge_type,
                    )
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        CartanDatum::from_label("A2").unwrap()
    }

    fn vx(id: &str, dim: i64, rank: Option<i64>) -> OrbitVertex {
        OrbitVertex { id: id.to_string(), dim, rank }
    }

    /// Two vertices joined by one edge.
    fn tiny(edge_type: EdgeType) -> OrbitGraph {
        OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("lo", 0, None), vx("hi", 1, None)],
            edges: vec![("lo".into(), "hi".into(), 0, edge_type)],
        })
        .unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        let dup = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("a", 1, None)],
            edges: vec![],
        });
        assert!(matches!(dup, Err(Error::DuplicateVertex(_))));

        let dangling = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None)],
            edges: vec![("a".into(), "b".into(), 0, EdgeType::U)],
        });
        assert!(matches!(dangling, Err(Error::DanglingEdge(_))));

        let dup_edge = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None)],
            edges: vec![
                ("a".into(), "b".into(), 0, EdgeType::U),
                ("a".into(), "b".into(), 0, EdgeType::N),
            ],
        });
        assert!(matches!(dup_edge, Err(Error::DuplicateEdge { .. })));

        let bad_label = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None)],
            edges: vec![("a".into(), "b".into(), 7, EdgeType::U)],
        });
        assert!(matches!(bad_label, Err(Error::BadEdgeLabel { .. })));
    }

    #[test]
    fn dim_jump_fails_rule_a() {
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 2, None)],
            edges: vec![("a".into(), "b".into(), 0, EdgeType::U)],
        })
        .unwrap();
        let report = g.validate_structure(false);
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.rule == "dim-step"));
    }

    #[test]
    fn mixed_parallel_edges_fail_rule_c() {
        // one U and one T edge sharing both endpoints
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None)],
            edges: vec![
                ("a".into(), "b".into(), 0, EdgeType::U),
                ("a".into(), "b".into(), 1, EdgeType::T),
            ],
        })
        .unwrap();
        let report = g.validate_structure(true);
        assert!(report.failures.iter().any(|f| f.rule == "parallel-edges"));

        // two parallel U edges with non-orthogonal labels also fail in A2
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None)],
            edges: vec![
                ("a".into(), "b".into(), 0, EdgeType::U),
                ("a".into(), "b".into(), 1, EdgeType::U),
            ],
        })
        .unwrap();
        assert!(!g.validate_structure(true).passed);

        // orthogonal labels pass
        let g = OrbitGraph::new(GraphSpec {
            cartan: CartanDatum::from_label("A1+A1").unwrap(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None)],
            edges: vec![
                ("a".into(), "b".into(), 0, EdgeType::U),
                ("a".into(), "b".into(), 1, EdgeType::U),
            ],
        })
        .unwrap();
        assert!(g.validate_structure(false).passed);
    }

    #[test]
    fn lone_t_edge_is_failure_unless_truncated() {
        let g = tiny(EdgeType::T);
        assert!(!g.validate_structure(false).passed);
        let report = g.validate_structure(true);
        assert!(report.passed);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn in_and_out_same_label_fails_rule_d() {
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None), vx("c", 2, None)],
            edges: vec![
                ("a".into(), "b".into(), 0, EdgeType::U),
                ("b".into(), "c".into(), 0, EdgeType::U),
            ],
        })
        .unwrap();
        assert!(g
            .validate_structure(false)
            .failures
            .iter()
            .any(|f| f.rule == "raising-unique"));
    }

    #[test]
    fn two_tops_fail_rule_e() {
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, None), vx("b", 1, None), vx("c", 1, None)],
            edges: vec![
                ("a".into(), "b".into(), 0, EdgeType::U),
                ("a".into(), "c".into(), 1, EdgeType::U),
            ],
        })
        .unwrap();
        assert!(g
            .validate_structure(false)
            .failures
            .iter()
            .any(|f| f.rule == "unique-top"));
    }

    #[test]
    fn rank_rule_f() {
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![vx("a", 0, Some(0)), vx("b", 1, Some(1))],
            edges: vec![("a".into(), "b".into(), 0, EdgeType::U)],
        })
        .unwrap();
        assert!(g
            .validate_structure(false)
            .failures
            .iter()
            .any(|f| f.rule == "rank-step"));
    }

    #[test]
    fn status_and_monoid_raise() {
        let g = tiny(EdgeType::U);
        assert_eq!(
            g.edge_status("lo", 0).unwrap(),
            EdgeStatus::Raises { edge_type: EdgeType::U, target: "hi".into() }
        );
        assert_eq!(g.edge_status("lo", 1).unwrap(), EdgeStatus::Stabilizes);
        assert_eq!(
            g.edge_status("hi", 0).unwrap(),
            EdgeStatus::LoweredBy { edge_type: EdgeType::U, sources: vec!["lo".into()] }
        );
        assert_eq!(g.monoid_raise("lo", 0).unwrap(), "hi");
        assert_eq!(g.monoid_raise("hi", 0).unwrap(), "hi");
        assert_eq!(g.monoid_raise("lo", 1).unwrap(), "lo");
        // idempotent after one application
        let once = g.monoid_raise("lo", 0).unwrap();
        assert_eq!(g.monoid_raise(&once, 0).unwrap(), once);
        assert!(g.monoid_raise("nope", 0).is_err());

        assert_eq!(g.delta_of("lo").unwrap(), [1].into_iter().collect());
        assert_eq!(g.delta_of("hi").unwrap(), [1].into_iter().collect());
    }

    #[test]
    fn rank_inference_detects_conflicts() {
        // diamond with inconsistent types: U on one side, N on the other
        let g = OrbitGraph::new(GraphSpec {
            cartan: a2(),
            rank_of_top: None,
            vertices: vec![
                vx("bot", 0, None),
                vx("l", 1, None),
                vx("r", 1, None),
                vx("top", 2, None),
            ],
            edges: vec![
                ("bot".into(), "l".into(), 0, EdgeType::U),
                ("bot".into(), "r".into(), 1, EdgeType::U),
                ("l".into(), "top".into(), 1, EdgeType::U),
                ("r".into(), "top".into(), 0, EdgeType::N),
            ],
        })
        .unwrap();
        let err = g.infer_ranks_uniform(1).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("along"), "witness paths expected: {msg}");
    }
}
