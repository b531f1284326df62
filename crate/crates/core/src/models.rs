//! Constructors for certified graphs: the three SL(2)-level atoms, the flag
//! case, the group case, parabolic induction, and the transcribed paper
//! diagrams as named fixtures.

use std::collections::BTreeSet;

use crate::cartan::CartanDatum;
use crate::error::Error;
use crate::graph::{EdgeType, GraphSpec, OrbitGraph, OrbitVertex};
use crate::io::parse_graph_json;
use crate::weyl::WeylGroupTable;

/// The rank-one homogeneous space behind a single edge type: G/B for U,
/// G/T for T, G/N(T) for N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    U,
    T,
    N,
}

impl std::str::FromStr for AtomKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<AtomKind, Error> {
        match s {
            "U" | "u" => Ok(AtomKind::U),
            "T" | "t" => Ok(AtomKind::T),
            "N" | "n" => Ok(AtomKind::N),
            other => Err(Error::Io(format!("unknown atom kind `{other}` (expected U, T or N)"))),
        }
    }
}

pub fn sl2_atom(kind: AtomKind) -> OrbitGraph {
    let cartan = CartanDatum::from_label("A1").expect("A1 is finite type");
    let (rank_of_top, vertices, edges): (i64, Vec<OrbitVertex>, Vec<_>) = match kind {
        AtomKind::U => (
            0,
            vec![
                OrbitVertex { id: "bot".into(), dim: 0, rank: Some(0) },
                OrbitVertex { id: "top".into(), dim: 1, rank: Some(0) },
            ],
            vec![("bot".to_string(), "top".to_string(), 0usize, EdgeType::U)],
        ),
        AtomKind::T => (
            1,
            vec![
                OrbitVertex { id: "plus".into(), dim: 1, rank: Some(0) },
                OrbitVertex { id: "minus".into(), dim: 1, rank: Some(0) },
                OrbitVertex { id: "top".into(), dim: 2, rank: Some(1) },
            ],
            vec![
                ("plus".to_string(), "top".to_string(), 0usize, EdgeType::T),
                ("minus".to_string(), "top".to_string(), 0usize, EdgeType::T),
            ],
        ),
        AtomKind::N => (
            1,
            vec![
                OrbitVertex { id: "bot".into(), dim: 1, rank: Some(0) },
                OrbitVertex { id: "top".into(), dim: 2, rank: Some(1) },
            ],
            vec![("bot".to_string(), "top".to_string(), 0usize, EdgeType::N)],
        ),
    };
    OrbitGraph::new(GraphSpec { cartan, rank_of_top: Some(rank_of_top), vertices, edges })
        .expect("atoms are well formed")
}

/// The graph of G/P_I: vertices are the minimal coset representatives with
/// dimension the length, all ranks zero, all edges type U.
pub fn flag_case(datum: &CartanDatum, subset: &BTreeSet<usize>) -> Result<OrbitGraph, Error> {
    let w = WeylGroupTable::new(datum.clone())?;
    for &i in subset {
        if i >= w.rank() {
            return Err(Error::BadSimpleRoot(i));
        }
    }
    let reps = w.min_coset_reps(subset);
    let rep_set: BTreeSet<_> = reps.iter().copied().collect();
    let vertices: Vec<OrbitVertex> = reps
        .iter()
        .map(|&e| OrbitVertex {
            id: w.word_string(e),
            dim: w.length(e) as i64,
            rank: Some(0),
        })
        .collect();
    let mut edges = Vec::new();
    for &e in &reps {
        for i in 0..w.rank() {
            let raised = w.multiply(w.generator(i), e);
            if w.length(raised) == w.length(e) + 1 && rep_set.contains(&raised) {
                edges.push((w.word_string(e), w.word_string(raised), i, EdgeType::U));
            }
        }
    }
    OrbitGraph::new(GraphSpec {
        cartan: datum.clone(),
        rank_of_top: Some(0),
        vertices,
        edges,
    })
}

/// The group case: the graph of the group itself under two-sided
/// translation. Ambient type is the doubled datum; vertices are the base
/// group's elements, the open orbit sits at the identity, every edge is
/// type U and all ranks equal the base rank.
pub fn group_case(datum: &CartanDatum) -> Result<OrbitGraph, Error> {
    let base = WeylGroupTable::new(datum.clone())?;
    let doubled = CartanDatum::from_label(&format!("{}+{}", datum.label(), datum.label()))?;
    let n = base.rank();
    let top_len = base.max_length() as i64;
    let rank = n as i64;
    let vertices: Vec<OrbitVertex> = base
        .elements()
        .map(|e| OrbitVertex {
            id: base.word_string(e),
            dim: top_len - base.length(e) as i64,
            rank: Some(rank),
        })
        .collect();
    let mut edges = Vec::new();
    for e in base.elements() {
        for i in 0..n {
            let left = base.multiply(base.generator(i), e);
            if base.length(left) < base.length(e) {
                edges.push((base.word_string(e), base.word_string(left), i, EdgeType::U));
            }
            let right = base.multiply(e, base.generator(i));
            if base.length(right) < base.length(e) {
                edges.push((base.word_string(e), base.word_string(right), n + i, EdgeType::U));
            }
        }
    }
    OrbitGraph::new(GraphSpec {
        cartan: doubled,
        rank_of_top: Some(rank),
        vertices,
        edges,
    })
}

/// Parabolic induction: the graph on `W^I x vertices(base)` built from the
/// base graph by the two-case edge rule. The base datum must match the
/// restriction of `datum` to `subset`; the output is validated before
/// return.
pub fn parabolic_induction(
    datum: &CartanDatum,
    subset: &BTreeSet<usize>,
    base: &OrbitGraph,
) -> Result<OrbitGraph, Error> {
    let sorted: Vec<usize> = subset.iter().copied().collect();
    if subset.is_empty() {
        // the restricted datum is empty: the base must be a torus variety,
        // i.e. have no edges at all
        if base.edge_count() != 0 {
            return Err(Error::InvalidGraph(
                "induction over the empty subset needs an edgeless base".into(),
            ));
        }
    } else {
        let restricted = datum.restrict(&sorted)?;
        if restricted.matrix() != base.cartan().matrix() {
            return Err(Error::InvalidGraph(format!(
                "base Cartan type {} does not match the restriction of {} to {:?}",
                base.cartan().label(),
                datum.label(),
                sorted
            )));
        }
    }
    let w = WeylGroupTable::new(datum.clone())?;
    let reps = w.min_coset_reps(subset);
    let rep_set: BTreeSet<_> = reps.iter().copied().collect();
    let id_of = |rep, base_id: &str| format!("{}|{}", w.word_string(rep), base_id);

    let mut vertices = Vec::new();
    for &rep in &reps {
        for v in base.vertices() {
            vertices.push(OrbitVertex {
                id: id_of(rep, &v.id),
                dim: w.length(rep) as i64 + v.dim,
                rank: v.rank,
            });
        }
    }
    let mut edges = Vec::new();
    for &rep in &reps {
        let inv = w.invert(rep);
        for bv in 0..base.vertex_count() {
            let src_id = id_of(rep, base.vertex_id(bv));
            for i in 0..w.rank() {
                let mut unit = vec![0i64; w.rank()];
                unit[i] = 1;
                let beta = w.apply_vec(inv, &unit);
                if beta.iter().any(|&c| c < 0) {
                    continue;
                }
                // beta positive: either a simple root in the subset, or
                // outside the sub-system entirely
                let as_simple = beta
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .collect::<Vec<_>>();
                let in_subset = as_simple.len() == 1
                    && *as_simple[0].1 == 1
                    && subset.contains(&as_simple[0].0);
                if in_subset {
                    let j = as_simple[0].0;
                    let base_label = sorted.iter().position(|&x| x == j).unwrap();
                    if let Some(e) = base.out_edges(bv).find(|e| e.label == base_label) {
                        edges.push((
                            src_id.clone(),
                            id_of(rep, base.vertex_id(e.dst)),
                            i,
                            e.edge_type,
                        ));
                    }
                } else {
                    debug_assert!(
                        beta.iter().enumerate().any(|(k, &c)| c != 0 && !subset.contains(&k)),
                        "positive beta inside the sub-system must be simple"
                    );
                    let raised = w.multiply(w.generator(i), rep);
                    debug_assert!(rep_set.contains(&raised));
                    debug_assert_eq!(w.length(raised), w.length(rep) + 1);
                    edges.push((
                        src_id.clone(),
                        id_of(raised, base.vertex_id(bv)),
                        i,
                        EdgeType::U,
                    ));
                }
            }
        }
    }
    let g = OrbitGraph::new(GraphSpec {
        cartan: datum.clone(),
        rank_of_top: base.rank_of_top(),
        vertices,
        edges,
    })?;
    let report = g.validate_structure(false);
    if !report.passed {
        return Err(Error::InvalidGraph(format!(
            "induced graph failed structural validation: {:?}",
            report.failures
        )));
    }
    Ok(g)
}

pub const FIXTURE_NAMES: [&str; 5] = [
    "example1",
    "example3_full",
    "example3_quotient",
    "pgl3_gl2",
    "pgl2sq_diag",
];

/// The embedded JSON text of a named fixture.
pub fn fixture_json(name: &str) -> Result<&'static str, Error> {
    Ok(match name {
        "example1" => include_str!("../../../fixtures/example1.json"),
        "example3_full" => include_str!("../../../fixtures/example3_full.json"),
        "example3_quotient" => include_str!("../../../fixtures/example3_quotient.json"),
        "pgl3_gl2" => include_str!("../../../fixtures/pgl3_gl2.json"),
        "pgl2sq_diag" => include_str!("../../../fixtures/pgl2sq_diag.json"),
        other => return Err(Error::UnknownFixture(other.to_string())),
    })
}

/// Load a transcribed diagram by name.
pub fn fixture(name: &str) -> Result<OrbitGraph, Error> {
    parse_graph_json(fixture_json(name)?.as_bytes())
}

/// Typed-labeled-graph isomorphism up to a relabeling of the simple roots:
/// `label_maps` lists the relabelings to try on `a` (use the identity plus
/// Dynkin-diagram automorphisms). Dimensions are compared after shifting
/// each graph's minimum to zero.
pub fn isomorphic_with_label_maps(a: &OrbitGraph, b: &OrbitGraph, label_maps: &[Vec<usize>]) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let shift = |g: &OrbitGraph| -> i64 { g.vertices().iter().map(|v| v.dim).min().unwrap_or(0) };
    let (sa, sb) = (shift(a), shift(b));
    for map in label_maps {
        if backtrack_iso(a, b, map, sa, sb) {
            return true;
        }
    }
    false
}

fn backtrack_iso(a: &OrbitGraph, b: &OrbitGraph, label_map: &[usize], sa: i64, sb: i64) -> bool {
    let n = a.vertex_count();
    // signature: normalized dim, sorted (mapped label, type, direction) census
    let sig = |g: &OrbitGraph, v: usize, mapped: bool, shift: i64| -> (i64, Vec<(usize, EdgeType, bool)>) {
        let m = |l: usize| if mapped { label_map[l] } else { l };
        let mut census: Vec<(usize, EdgeType, bool)> = g
            .out_edges(v)
            .map(|e| (m(e.label), e.edge_type, true))
            .chain(g.in_edges(v).map(|e| (m(e.label), e.edge_type, false)))
            .collect();
        census.sort_unstable();
        (g.vertex(v).dim - shift, census)
    };
    let sigs_a: Vec<_> = (0..n).map(|v| sig(a, v, true, sa)).collect();
    let sigs_b: Vec<_> = (0..n).map(|v| sig(b, v, false, sb)).collect();

    fn extend(
        a: &OrbitGraph,
        b: &OrbitGraph,
        label_map: &[usize],
        sigs_a: &[(i64, Vec<(usize, EdgeType, bool)>)],
        sigs_b: &[(i64, Vec<(usize, EdgeType, bool)>)],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        if v == a.vertex_count() {
            return true;
        }
        'cand: for cand in 0..b.vertex_count() {
            if used[cand] || sigs_a[v] != sigs_b[cand] {
                continue;
            }
            // edge consistency with already-assigned vertices
            for e in a.out_edges(v) {
                if let Some(img) = assign[e.dst] {
                    if !b.out_edges(cand).any(|f| {
                        f.dst == img && f.label == label_map[e.label] && f.edge_type == e.edge_type
                    }) {
                        continue 'cand;
                    }
                }
            }
            for e in a.in_edges(v) {
                if let Some(img) = assign[e.src] {
                    if !b.in_edges(cand).any(|f| {
                        f.src == img && f.label == label_map[e.label] && f.edge_type == e.edge_type
                    }) {
                        continue 'cand;
                    }
                }
            }
            assign[v] = Some(cand);
            used[cand] = true;
            if extend(a, b, label_map, sigs_a, sigs_b, assign, used, v + 1) {
                return true;
            }
            assign[v] = None;
            used[cand] = false;
        }
        false
    }

    let mut assign = vec![None; n];
    let mut used = vec![false; n];
    extend(a, b, label_map, &sigs_a, &sigs_b, &mut assign, &mut used, 0)
}
