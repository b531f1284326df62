//! Oriented-path invariants: the Weyl element and U/T/N counts of a path,
//! the set W(Y) with its degrees, multiplicity-freeness, the Schubert-class
//! expansion, codimension-1 connectivity and the neighbor relation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::Error;
use crate::graph::{Certification, EdgeType, OrbitGraph};
use crate::weyl::{Elem, WeylGroupTable};

/// Hard cap on exhaustive path enumeration; fixture-scale graphs stay far
/// below it.
pub const PATH_BUDGET: usize = 1_000_000;

/// Invariants of one oriented path, labels read source to target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSummary {
    pub source: String,
    pub target: String,
    pub labels: Vec<usize>,
    pub types: Vec<EdgeType>,
    /// `w(path) = s_{a_l} ... s_{a_1}` for labels `a_1 .. a_l`.
    pub word: Elem,
    pub len_u: usize,
    pub len_t: usize,
    pub len_n: usize,
}

impl PathSummary {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// `W(Y)` with degrees stored as the exponent `l_N`; the degree itself is
/// `2^{l_N}`.
pub type WeylSet = BTreeMap<Elem, u32>;

/// All oriented paths from `src`, as edge-index sequences (the empty path
/// included).
fn all_paths_from(g: &OrbitGraph, src: usize) -> Result<Vec<Vec<usize>>, Error> {
    let mut out = vec![Vec::new()];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        g: &OrbitGraph,
        v: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), Error> {
        // a path in a DAG visits each vertex at most once
        if stack.len() >= g.vertex_count() {
            return Err(Error::InvalidGraph(
                "path longer than the vertex count: the graph has a cycle".into(),
            ));
        }
        for k in g.out_edge_ids(v).to_vec() {
            stack.push(k);
            out.push(stack.clone());
            if out.len() > PATH_BUDGET {
                return Err(Error::PathBudget(PATH_BUDGET));
            }
            dfs(g, g.edges()[k].dst, stack, out)?;
            stack.pop();
        }
        Ok(())
    }
    dfs(g, src, &mut stack, &mut out)?;
    Ok(out)
}

fn summarize(g: &OrbitGraph, w: &WeylGroupTable, src: usize, path: &[usize]) -> PathSummary {
    let mut labels = Vec::with_capacity(path.len());
    let mut types = Vec::with_capacity(path.len());
    let mut word = w.identity();
    let mut end = src;
    for &k in path {
        let e = &g.edges()[k];
        labels.push(e.label);
        types.push(e.edge_type);
        word = w.multiply(w.generator(e.label), word);
        end = e.dst;
    }
    PathSummary {
        source: g.vertex_id(src).to_string(),
        target: g.vertex_id(end).to_string(),
        len_u: types.iter().filter(|&&t| t == EdgeType::U).count(),
        len_t: types.iter().filter(|&&t| t == EdgeType::T).count(),
        len_n: types.iter().filter(|&&t| t == EdgeType::N).count(),
        labels,
        types,
        word,
    }
}

fn render_path(g: &OrbitGraph, src: usize, path: &[usize]) -> String {
    if path.is_empty() {
        return format!("[{}]", g.vertex_id(src));
    }
    let mut s = g.vertex_id(src).to_string();
    for &k in path {
        let e = &g.edges()[k];
        s.push_str(&format!(
            " -{}:{}-> {}",
            g.cartan().root_name(e.label),
            e.edge_type,
            g.vertex_id(e.dst)
        ));
    }
    s
}

/// All oriented paths from `src` to `dst`; the empty list if unreachable,
/// only the empty path if the endpoints coincide.
pub fn enumerate_paths(
    g: &OrbitGraph,
    w: &WeylGroupTable,
    src: &str,
    dst: &str,
) -> Result<Vec<PathSummary>, Error> {
    let s = g.index_of(src)?;
    let d = g.index_of(dst)?;
    let mut out = Vec::new();
    for path in all_paths_from(g, s)? {
        let end = path.last().map(|&k| g.edges()[k].dst).unwrap_or(s);
        if end == d {
            out.push(summarize(g, w, s, &path));
        }
    }
    Ok(out)
}

/// `W(Y)`: for every path from `Y` to the top of its component, record
/// `w(path)` with exponent `l_N`. Two paths sharing `w` but not `l_N` are a
/// certification failure carrying both witnesses.
pub fn weyl_set(g: &OrbitGraph, w: &WeylGroupTable, vertex: &str) -> Result<WeylSet, Error> {
    let s = g.index_of(vertex)?;
    let top = g.top_of_component(s)?;
    let mut set: BTreeMap<Elem, (u32, Vec<usize>)> = BTreeMap::new();
    for path in all_paths_from(g, s)? {
        let end = path.last().map(|&k| g.edges()[k].dst).unwrap_or(s);
        if end != top {
            continue;
        }
        let summary = summarize(g, w, s, &path);
        match set.get(&summary.word) {
            None => {
                set.insert(summary.word, (summary.len_n as u32, path));
            }
            Some((exp, witness)) if *exp != summary.len_n as u32 => {
                return Err(Error::DegreeInconsistency(format!(
                    "paths [{}] and [{}] share the Weyl element `{}` but have {} and {} double edges",
                    render_path(g, s, witness),
                    render_path(g, s, &path),
                    w.word_string(summary.word),
                    exp,
                    summary.len_n
                )));
            }
            Some(_) => {}
        }
    }
    Ok(set.into_iter().map(|(k, (exp, _))| (k, exp)).collect())
}

/// True iff no oriented path from `vertex` crosses a double edge;
/// equivalently `d(Y, w) = 1` for all `w` in `W(Y)`.
pub fn is_multiplicity_free(g: &OrbitGraph, vertex: &str) -> Result<bool, Error> {
    let s = g.index_of(vertex)?;
    // forward reachability over vertices, looking for an N edge
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(v) = queue.pop_front() {
        for e in g.out_edges(v) {
            if e.edge_type == EdgeType::N {
                return Ok(false);
            }
            if !seen[e.dst] {
                seen[e.dst] = true;
                queue.push_back(e.dst);
            }
        }
    }
    Ok(true)
}

/// Path-level certification: every path word is reduced, `l_T + l_N` equals
/// the rank difference of the endpoints, `(l_T, l_N)` depends only on
/// (source, target, word), and the word sits in the minimal coset
/// representatives of Delta(source) with its inverse in those of
/// Delta(target).
pub fn certify_paths(g: &OrbitGraph, w: &WeylGroupTable) -> Result<Certification, Error> {
    let mut report = Certification::new();
    if !g.has_ranks() {
        report.warn("ranks are absent; rank-difference checks skipped".to_string());
    }
    let deltas: Vec<BTreeSet<usize>> = (0..g.vertex_count())
        .map(|v| g.delta_of(g.vertex_id(v)).expect("known vertex"))
        .collect();
    for s in 0..g.vertex_count() {
        let mut per_word: HashMap<(usize, Elem), (usize, usize, Vec<usize>)> = HashMap::new();
        for path in all_paths_from(g, s)? {
            if path.is_empty() {
                continue;
            }
            let end = path.last().map(|&k| g.edges()[k].dst).unwrap();
            let summary = summarize(g, w, s, &path);
            if !w.is_min_coset_rep(summary.word, &deltas[s])
                || !w.is_min_coset_rep(w.invert(summary.word), &deltas[end])
            {
                report.fail(
                    "coset-membership",
                    format!(
                        "path [{}]: `{}` must be minimal modulo Delta(source) and its inverse minimal modulo Delta(target)",
                        render_path(g, s, &path),
                        w.word_string(summary.word)
                    ),
                );
            }
            if w.length(summary.word) != summary.len() {
                report.fail(
                    "reduced-word",
                    format!(
                        "path [{}] has length {} but its word `{}` has length {}",
                        render_path(g, s, &path),
                        summary.len(),
                        w.word_string(summary.word),
                        w.length(summary.word)
                    ),
                );
            }
            if let (Some(rs), Some(rd)) = (g.vertex(s).rank, g.vertex(end).rank) {
                if (summary.len_t + summary.len_n) as i64 != rd - rs {
                    report.fail(
                        "rank-difference",
                        format!(
                            "path [{}] has l_T + l_N = {} but the rank difference is {}",
                            render_path(g, s, &path),
                            summary.len_t + summary.len_n,
                            rd - rs
                        ),
                    );
                }
            }
            match per_word.get(&(end, summary.word)) {
                None => {
                    per_word.insert(
                        (end, summary.word),
                        (summary.len_t, summary.len_n, path.clone()),
                    );
                }
                Some((lt, ln, witness)) => {
                    if (*lt, *ln) != (summary.len_t, summary.len_n) {
                        report.fail(
                            "degree-per-word",
                            format!(
                                "paths [{}] and [{}] share endpoints and word `{}` but differ in (l_T, l_N): ({}, {}) vs ({}, {})",
                                render_path(g, s, witness),
                                render_path(g, s, &path),
                                w.word_string(summary.word),
                                lt,
                                ln,
                                summary.len_t,
                                summary.len_n
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Cohomology-class expansion data for one vertex.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub vertex: String,
    /// `w -> l_N` exponent; degree is `2^{l_N}`.
    pub weyl_set: WeylSet,
    pub multiplicity_free: bool,
    /// `w_0 w -> l_N` exponent.
    pub schubert_terms: BTreeMap<Elem, u32>,
    pub v0_codim1_connected: bool,
}

impl ExpansionReport {
    pub fn to_json(&self, w: &WeylGroupTable) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .schubert_terms
            .iter()
            .map(|(&e, &exp)| {
                serde_json::json!({
                    "word": w.canonical_word(e).iter().map(|&i| i as u64).collect::<Vec<_>>(),
                    "coeff_log2": exp,
                })
            })
            .collect();
        serde_json::json!({
            "vertex": self.vertex,
            "terms": terms,
            "multiplicity_free": self.multiplicity_free,
            "v0_codim1_connected": self.v0_codim1_connected,
        })
    }
}

/// Expand the class of the orbit closure attached to `vertex` in the
/// Schubert basis: terms `w_0 w` with coefficient `2^{l_N}` over `W(Y)`.
pub fn schubert_expansion(
    g: &OrbitGraph,
    w: &WeylGroupTable,
    vertex: &str,
) -> Result<ExpansionReport, Error> {
    let ws = weyl_set(g, w, vertex)?;
    let w0 = w.longest_element();
    let schubert_terms: BTreeMap<Elem, u32> =
        ws.iter().map(|(&e, &exp)| (w.multiply(w0, e), exp)).collect();
    let multiplicity_free = ws.values().all(|&exp| exp == 0);
    let s = g.index_of(vertex)?;
    let top = g.top_of_component(s)?;
    let delta_x = g.delta_of(g.vertex_id(top))?;
    let keys: Vec<Elem> = ws.keys().copied().collect();
    let v0 = codim1_connected(w, &keys, &delta_x)?;
    Ok(ExpansionReport {
        vertex: vertex.to_string(),
        weyl_set: ws,
        multiplicity_free,
        schubert_terms,
        v0_codim1_connected: v0.connected,
    })
}

/// Connectivity certificate for codimension-1 connectedness of `V_0`.
#[derive(Debug, Clone)]
pub struct Codim1Report {
    pub connected: bool,
    /// Spanning-forest edges `(u, v, dominating w)`.
    pub witness_chain: Vec<(Elem, Elem, Elem)>,
}

/// Adjacency `u ~ v` iff some `w` of length `l(u) + 1` dominates both in
/// Bruhat order with `w^{-1}` minimal in its `W_{Delta(X)}` coset; the
/// verdict is whether this graph on `ws` is connected.
pub fn codim1_connected(
    w: &WeylGroupTable,
    ws: &[Elem],
    delta_x: &BTreeSet<usize>,
) -> Result<Codim1Report, Error> {
    if ws.is_empty() {
        return Ok(Codim1Report { connected: true, witness_chain: Vec::new() });
    }
    let l = w.length(ws[0]);
    if ws.iter().any(|&u| w.length(u) != l) {
        return Err(Error::MixedLengths(format!(
            "codim1_connected needs equal lengths, got {:?}",
            ws.iter().map(|&u| w.length(u)).collect::<Vec<_>>()
        )));
    }
    let dominating = |u: Elem, v: Elem| -> Option<Elem> {
        w.elements_of_length(l + 1)
            .iter()
            .copied()
            .find(|&cand| {
                w.is_min_coset_rep(w.invert(cand), delta_x)
                    && w.bruhat_leq(u, cand)
                    && w.bruhat_leq(v, cand)
            })
    };
    // BFS over the implicit adjacency
    let mut visited = vec![false; ws.len()];
    visited[0] = true;
    let mut chain = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..ws.len() {
            if visited[j] || i == j {
                continue;
            }
            if let Some(dom) = dominating(ws[i], ws[j]) {
                visited[j] = true;
                chain.push((ws[i], ws[j], dom));
                queue.push_back(j);
            }
        }
    }
    Ok(Codim1Report {
        connected: visited.iter().all(|&b| b),
        witness_chain: chain,
    })
}

/// The alternating product `(s_a s_b)^{(m)} = ... s_b s_a` with `m` terms.
pub fn alternating_product(w: &WeylGroupTable, a: usize, b: usize, m: u32) -> Elem {
    let mut acc = w.identity();
    for k in 1..=m {
        let letter = if k % 2 == 1 { a } else { b };
        acc = w.multiply(w.generator(letter), acc);
    }
    acc
}

/// Neighbors: equal-length elements differing by one incomplete braid move
/// `x (s_a s_b)^{(m)} y` vs `x (s_b s_a)^{(m)} y` with `0 < m < m(a, b)` and
/// lengths adding. Brute-force over all factorizations.
pub fn is_neighbor(w: &WeylGroupTable, u: Elem, v: Elem) -> bool {
    if u == v || w.length(u) != w.length(v) {
        return false;
    }
    let lu = w.length(u);
    let n = w.rank();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let bond = w.datum().bond_order(a, b).expect("distinct indices");
            for m in 1..bond {
                if (m as usize) > lu {
                    break;
                }
                let left = alternating_product(w, a, b, m);
                let right = alternating_product(w, b, a, m);
                for lx in 0..=(lu - m as usize) {
                    for &x in w.elements_of_length(lx) {
                        let xa = w.multiply(x, left);
                        let y = w.multiply(w.invert(xa), u);
                        if w.length(y) != lu - m as usize - lx {
                            continue;
                        }
                        if w.multiply(w.multiply(x, right), y) == v {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Adjacency pairs of the neighbor relation on `ws`.
pub fn neighbor_graph(w: &WeylGroupTable, ws: &[Elem]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if is_neighbor(w, ws[i], ws[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Is `W(Y)` connected under the neighbor relation?
pub fn neighbor_connectivity(
    g: &OrbitGraph,
    w: &WeylGroupTable,
    vertex: &str,
) -> Result<bool, Error> {
    let ws: Vec<Elem> = weyl_set(g, w, vertex)?.keys().copied().collect();
    if ws.len() <= 1 {
        return Ok(true);
    }
    let adj = neighbor_graph(w, &ws);
    let mut dsu: Vec<usize> = (0..ws.len()).collect();
    fn find(dsu: &mut Vec<usize>, i: usize) -> usize {
        if dsu[i] != i {
            let r = find(dsu, dsu[i]);
            dsu[i] = r;
        }
        dsu[i]
    }
    for (i, j) in adj {
        let (ri, rj) = (find(&mut dsu, i), find(&mut dsu, j));
        dsu[ri] = rj;
    }
    let root = find(&mut dsu, 0);
    Ok((0..ws.len()).all(|i| find(&mut dsu, i) == root))
}

/// Outcome of the endpoint-constancy check.
#[derive(Debug, Clone)]
pub struct ConstancyReport {
    pub passed: bool,
    pub simply_laced: bool,
    /// A simply-laced graph failing constancy cannot come from a spherical
    /// variety.
    pub certifiable: bool,
    pub failures: Vec<crate::graph::Failure>,
}

/// For every ordered vertex pair, all connecting paths must agree in
/// `(l_T, l_N)`. Failures carry a two-path witness.
pub fn constancy_check(g: &OrbitGraph, w: &WeylGroupTable) -> Result<ConstancyReport, Error> {
    let simply_laced = g.cartan().is_simply_laced();
    let mut failures = Vec::new();
    for s in 0..g.vertex_count() {
        let mut per_target: HashMap<usize, (usize, usize, Vec<usize>)> = HashMap::new();
        for path in all_paths_from(g, s)? {
            if path.is_empty() {
                continue;
            }
            let end = path.last().map(|&k| g.edges()[k].dst).unwrap();
            let summary = summarize(g, w, s, &path);
            match per_target.get(&end) {
                None => {
                    per_target.insert(end, (summary.len_t, summary.len_n, path.clone()));
                }
                Some((lt, ln, witness)) => {
                    if (*lt, *ln) != (summary.len_t, summary.len_n) {
                        failures.push(crate::graph::Failure {
                            rule: "constancy".to_string(),
                            witness: format!(
                                "paths [{}] and [{}] share endpoints but have (l_T, l_N) = ({}, {}) vs ({}, {})",
                                render_path(g, s, witness),
                                render_path(g, s, &path),
                                lt,
                                ln,
                                summary.len_t,
                                summary.len_n
                            ),
                        });
                    }
                }
            }
        }
    }
    let passed = failures.is_empty();
    Ok(ConstancyReport {
        passed,
        simply_laced,
        certifiable: passed || !simply_laced,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleThenDouble {
    Holds { witness: String },
    Fails,
    NotApplicable { reason: String },
}

/// Does some path from `vertex` to the top consist of simple edges followed
/// by double edges (either block possibly empty)? Simply-laced types only.
pub fn simple_then_double_exists(
    g: &OrbitGraph,
    vertex: &str,
) -> Result<SimpleThenDouble, Error> {
    if !g.cartan().is_simply_laced() {
        return Ok(SimpleThenDouble::NotApplicable {
            reason: format!("Cartan type {} is not simply laced", g.cartan().label()),
        });
    }
    let s = g.index_of(vertex)?;
    let top = g.top_of_component(s)?;
    for path in all_paths_from(g, s)? {
        let end = path.last().map(|&k| g.edges()[k].dst).unwrap_or(s);
        if end != top {
            continue;
        }
        let types: Vec<EdgeType> = path.iter().map(|&k| g.edges()[k].edge_type).collect();
        let first_double = types.iter().position(|t| t.is_double()).unwrap_or(types.len());
        if types[first_double..].iter().all(|t| t.is_double()) {
            return Ok(SimpleThenDouble::Holds { witness: render_path(g, s, &path) });
        }
    }
    Ok(SimpleThenDouble::Fails)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorSimplicity {
    AllSimple,
    HasDouble { witness: String },
    NotApplicable { reason: String },
}

/// The all-edges-simple criterion for simply-laced types: every supplied
/// color weight pairs with every simple coroot to at most 1.
pub fn color_simplicity(
    w: &WeylGroupTable,
    weights: &[crate::weyl::Weight],
) -> Result<ColorSimplicity, Error> {
    if !w.datum().is_simply_laced() {
        return Ok(ColorSimplicity::NotApplicable {
            reason: format!("Cartan type {} is not simply laced", w.datum().label()),
        });
    }
    for (d, lambda) in weights.iter().enumerate() {
        for i in 0..w.rank() {
            let p = w.pairing(lambda, i)?;
            if p > 1 {
                return Ok(ColorSimplicity::HasDouble {
                    witness: format!("weight #{d} pairs with coroot {} to {p}", w.datum().root_name(i)),
                });
            }
        }
    }
    Ok(ColorSimplicity::AllSimple)
}
