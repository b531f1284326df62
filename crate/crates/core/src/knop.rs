//! The Weyl-group action on the vertex set read off the edge types: each
//! simple reflection swaps the endpoints of its U edges and the two lower
//! vertices of its T trichotomies, fixing everything else. Certification
//! verifies involutivity and the braid relations by direct composition;
//! on certified graphs the orbit of the top vertex is the rank-maximal
//! stratum and its isotropy group decomposes as a semidirect product.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::Error;
use crate::graph::{Certification, EdgeType, OrbitGraph};
use crate::paths::weyl_set;
use crate::weyl::{CosetSide, Elem, WeylGroupTable};

/// Per-generator involutions of the vertex set.
pub struct ActionTable {
    maps: Vec<Vec<usize>>,
}

impl ActionTable {
    pub fn generator_map(&self, label: usize) -> &[usize] {
        &self.maps[label]
    }

    pub fn apply_generator(&self, label: usize, v: usize) -> usize {
        self.maps[label][v]
    }

    /// Action of a word `s_{i_1} ... s_{i_k}`, rightmost letter first.
    pub fn apply_word(&self, word: &[u8], v: usize) -> usize {
        word.iter().rev().fold(v, |acc, &i| self.maps[i as usize][acc])
    }

    pub fn apply_elem(&self, w: &WeylGroupTable, e: Elem, v: usize) -> usize {
        self.apply_word(w.canonical_word(e), v)
    }
}

/// Build the action from the graph alone. A type-T trichotomy with only one
/// visible source leaves the swap undefined and is rejected.
pub fn build_action(g: &OrbitGraph) -> Result<ActionTable, Error> {
    let n = g.cartan().rank();
    let mut maps: Vec<Vec<usize>> = (0..n).map(|_| (0..g.vertex_count()).collect()).collect();
    let swap = |label: usize, a: usize, b: usize, maps: &mut Vec<Vec<usize>>| {
        let m = &mut maps[label];
        if m[a] != a || m[b] != b {
            return Err(Error::ActionUndefined(format!(
                "label {} moves `{}` or `{}` twice",
                g.cartan().root_name(label),
                g.vertex_id(a),
                g.vertex_id(b)
            )));
        }
        m[a] = b;
        m[b] = a;
        Ok(())
    };
    // U edges: swap the endpoints.
    for e in g.edges() {
        if e.edge_type == EdgeType::U {
            swap(e.label, e.src, e.dst, &mut maps)?;
        }
    }
    // T trichotomies: swap the two sources aimed at a common target.
    let mut t_groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in g.edges() {
        if e.edge_type == EdgeType::T {
            t_groups.entry((e.dst, e.label)).or_default().push(e.src);
        }
    }
    for ((dst, label), sources) in t_groups {
        match sources.as_slice() {
            [a, b] => swap(label, *a, *b, &mut maps)?,
            [_] => {
                return Err(Error::ActionUndefined(format!(
                    "lone type-T edge labeled {} into `{}`: the second source of the trichotomy is missing",
                    g.cartan().root_name(label),
                    g.vertex_id(dst)
                )))
            }
            _ => {
                return Err(Error::ActionUndefined(format!(
                    "{} type-T edges labeled {} into `{}`",
                    sources.len(),
                    g.cartan().root_name(label),
                    g.vertex_id(dst)
                )))
            }
        }
    }
    Ok(ActionTable { maps })
}

/// Verify involutivity and every braid relation `(s_i s_j)^{m(i,j)} = id`
/// pointwise on the vertex set.
pub fn certify_action(t: &ActionTable, g: &OrbitGraph) -> Certification {
    let mut report = Certification::new();
    let n = g.cartan().rank();
    for i in 0..n {
        for v in 0..g.vertex_count() {
            if t.maps[i][t.maps[i][v]] != v {
                report.fail(
                    "involution",
                    format!(
                        "s_{} is not an involution at `{}`",
                        g.cartan().root_name(i),
                        g.vertex_id(v)
                    ),
                );
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let m = g.cartan().bond_order(i, j).expect("distinct indices");
            for v in 0..g.vertex_count() {
                let mut x = v;
                for _ in 0..m {
                    x = t.maps[i][t.maps[j][x]];
                }
                if x != v {
                    report.fail(
                        "braid",
                        format!(
                            "(s_{} s_{})^{} moves `{}` to `{}`",
                            g.cartan().root_name(i),
                            g.cartan().root_name(j),
                            m,
                            g.vertex_id(v),
                            g.vertex_id(x)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// The W-orbit of the top vertex, with the postcondition check that it
/// matches the rank-maximal vertex set.
#[derive(Debug, Clone)]
pub struct MaxRankOrbit {
    pub orbit: BTreeSet<String>,
    pub rank_maximal: BTreeSet<String>,
    pub matches: bool,
}

pub fn max_rank_orbit(t: &ActionTable, g: &OrbitGraph) -> Result<MaxRankOrbit, Error> {
    if !g.has_ranks() {
        return Err(Error::InvalidGraph("ranks must be present or inferred first".into()));
    }
    let top = g.principal_top()?;
    let mut seen = vec![false; g.vertex_count()];
    seen[top] = true;
    let mut queue = VecDeque::from([top]);
    while let Some(v) = queue.pop_front() {
        for map in &t.maps {
            let u = map[v];
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    let orbit: BTreeSet<String> = (0..g.vertex_count())
        .filter(|&v| seen[v])
        .map(|v| g.vertex_id(v).to_string())
        .collect();
    let top_rank = g.vertex(top).rank.unwrap();
    let rank_maximal: BTreeSet<String> = g
        .vertices()
        .iter()
        .filter(|v| v.rank == Some(top_rank))
        .map(|v| v.id.clone())
        .collect();
    let matches = orbit == rank_maximal;
    Ok(MaxRankOrbit { orbit, rank_maximal, matches })
}

/// Full vertex maps for every group element, composed incrementally along
/// canonical words.
pub fn element_actions(t: &ActionTable, w: &WeylGroupTable, nverts: usize) -> Vec<Vec<usize>> {
    let mut maps: Vec<Vec<usize>> = Vec::with_capacity(w.order());
    maps.push((0..nverts).collect());
    for idx in 1..w.order() {
        let e = Elem(idx as u32);
        let word = w.canonical_word(e);
        let last = *word.last().unwrap() as usize;
        let parent = w.multiply(e, w.generator(last));
        debug_assert!(parent.0 < e.0);
        let parent_map = &maps[parent.0 as usize];
        let gen_map = t.generator_map(last);
        let map: Vec<usize> = (0..nverts).map(|v| parent_map[gen_map[v]]).collect();
        maps.push(map);
    }
    maps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorTag {
    /// The reflecting root lies in the subsystem spanned by Delta(X).
    RootInDeltaX,
    /// Twice the reflecting root lies in the supplied lattice.
    TwiceRootInLattice,
    /// The sum of the two orthogonal roots lies in the supplied lattice.
    SumInLattice,
}

#[derive(Debug, Clone)]
pub enum GeneratorKind {
    Reflection { root: Vec<i64> },
    CommutingPair { roots: [Vec<i64>; 2] },
}

#[derive(Debug, Clone)]
pub struct GeneratorInfo {
    pub elem: Elem,
    pub kind: GeneratorKind,
    pub tags: Vec<GeneratorTag>,
}

#[derive(Debug, Clone)]
pub struct GeneratorClassification {
    /// Do the listed generators generate the isotropy group? False is a
    /// theorem-violation report: the graph cannot be geometrically real.
    pub generates: bool,
    pub generators: Vec<GeneratorInfo>,
    /// Indices of generators with no tag; only populated when a lattice was
    /// supplied.
    pub untagged: Vec<usize>,
}

/// An integer lattice given by generators in the simple-root basis, with
/// membership testing by column echelon reduction over the integers.
pub struct Lattice {
    dim: usize,
    echelon: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Result<Lattice, Error> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::Io(format!("lattice generators must have dimension {dim}")));
        }
        // columns of m are the generators
        let mut m: Vec<Vec<i128>> = (0..dim)
            .map(|r| generators.iter().map(|g| g[r] as i128).collect())
            .collect();
        let cols = generators.len();
        let mut rank = 0;
        let mut pivots = Vec::new();
        for row in 0..dim {
            loop {
                let mut best: Option<usize> = None;
                for c in rank..cols {
                    if m[row][c] != 0
                        && best.map_or(true, |b| m[row][c].abs() < m[row][b].abs())
                    {
                        best = Some(c);
                    }
                }
                let Some(b) = best else { break };
                // reduce the other columns modulo column b
                let mut all_zero = true;
                for c in rank..cols {
                    if c == b || m[row][c] == 0 {
                        continue;
                    }
                    let q = m[row][c] / m[row][b];
                    for r in 0..dim {
                        m[r][c] -= q * m[r][b];
                    }
                    if m[row][c] != 0 {
                        all_zero = false;
                    }
                }
                if all_zero {
                    for r in 0..dim {
                        m[r].swap(rank, b);
                    }
                    if m[row][rank] < 0 {
                        for r in 0..dim {
                            m[r][rank] = -m[r][rank];
                        }
                    }
                    pivots.push(row);
                    rank += 1;
                    break;
                }
            }
        }
        Ok(Lattice { dim, echelon: m, pivots })
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut rem: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (col, &prow) in self.pivots.iter().enumerate() {
            // rows above this pivot must already be cleared
            let pivot = self.echelon[prow][col];
            if rem[prow] % pivot != 0 {
                return false;
            }
            let q = rem[prow] / pivot;
            for r in 0..self.dim {
                rem[r] -= q * self.echelon[r][col];
            }
        }
        rem.iter().all(|&x| x == 0)
    }
}

/// Find candidate generators of the isotropy group among reflections and
/// products of two commuting reflections, verify they generate, and tag
/// each with the clause of the generation theorem it satisfies.
pub fn classify_generators(
    w: &WeylGroupTable,
    w_iso: &BTreeSet<Elem>,
    delta_x: &BTreeSet<usize>,
    lattice: Option<&Lattice>,
) -> GeneratorClassification {
    let in_delta_subsystem = |root: &[i64]| -> bool {
        root.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || delta_x.contains(&i))
    };
    let mut generators = Vec::new();
    for (e, gamma) in w.reflections() {
        if !w_iso.contains(&e) {
            continue;
        }
        let root = w.root_vec(gamma).to_vec();
        let mut tags = Vec::new();
        if in_delta_subsystem(&root) {
            tags.push(GeneratorTag::RootInDeltaX);
        }
        if let Some(l) = lattice {
            let doubled: Vec<i64> = root.iter().map(|&c| 2 * c).collect();
            if l.contains(&doubled) {
                tags.push(GeneratorTag::TwiceRootInLattice);
            }
        }
        generators.push(GeneratorInfo { elem: e, kind: GeneratorKind::Reflection { root }, tags });
    }
    for (e, gamma, delta) in w.commuting_reflection_products() {
        if !w_iso.contains(&e) {
            continue;
        }
        let r1 = w.root_vec(gamma).to_vec();
        let r2 = w.root_vec(delta).to_vec();
        let mut tags = Vec::new();
        if let Some(l) = lattice {
            let sum: Vec<i64> = r1.iter().zip(&r2).map(|(&a, &b)| a + b).collect();
            let diff: Vec<i64> = r1.iter().zip(&r2).map(|(&a, &b)| a - b).collect();
            if l.contains(&sum) || l.contains(&diff) {
                tags.push(GeneratorTag::SumInLattice);
            }
        }
        generators.push(GeneratorInfo {
            elem: e,
            kind: GeneratorKind::CommutingPair { roots: [r1, r2] },
            tags,
        });
    }
    let closure = w.subgroup_closure(&generators.iter().map(|g| g.elem).collect::<Vec<_>>());
    let generates = &closure == w_iso;
    let untagged = if lattice.is_some() {
        generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.tags.is_empty())
            .map(|(i, _)| i)
            .collect()
    } else {
        Vec::new()
    };
    GeneratorClassification { generates, generators, untagged }
}

/// Isotropy structure of the top vertex: `W_(X)` with its semidirect
/// decomposition into `W_Delta(X)` and the little Weyl group `W_X`, plus
/// the minimal coset representatives `W^(X)`.
#[derive(Debug, Clone)]
pub struct StabilizerReport {
    pub top: String,
    pub w_iso: BTreeSet<Elem>,
    pub delta_x: BTreeSet<usize>,
    pub w_delta: BTreeSet<Elem>,
    pub w_little: BTreeSet<Elem>,
    pub w_min_reps: BTreeSet<Elem>,
    pub semidirect_ok: bool,
    pub classification: GeneratorClassification,
}

impl StabilizerReport {
    pub fn to_json(&self, w: &WeylGroupTable) -> serde_json::Value {
        let words = |set: &BTreeSet<Elem>| -> Vec<Vec<u64>> {
            set.iter()
                .map(|&e| w.canonical_word(e).iter().map(|&i| i as u64).collect())
                .collect()
        };
        let gens: Vec<serde_json::Value> = self
            .classification
            .generators
            .iter()
            .map(|g| {
                let kind = match &g.kind {
                    GeneratorKind::Reflection { root } => serde_json::json!({
                        "reflection_root": root,
                    }),
                    GeneratorKind::CommutingPair { roots } => serde_json::json!({
                        "commuting_roots": roots,
                    }),
                };
                serde_json::json!({
                    "word": w.canonical_word(g.elem).iter().map(|&i| i as u64).collect::<Vec<_>>(),
                    "kind": kind,
                    "tags": g.tags,
                })
            })
            .collect();
        serde_json::json!({
            "top": self.top,
            "delta_x": self.delta_x.iter().copied().collect::<Vec<_>>(),
            "w_isotropy": words(&self.w_iso),
            "w_delta_x": words(&self.w_delta),
            "w_little": words(&self.w_little),
            "w_min_coset_reps": words(&self.w_min_reps),
            "semidirect_ok": self.semidirect_ok,
            "generators": gens,
            "generators_generate": self.classification.generates,
        })
    }
}

pub fn stabilizer(
    t: &ActionTable,
    g: &OrbitGraph,
    w: &WeylGroupTable,
) -> Result<StabilizerReport, Error> {
    let top = g.principal_top()?;
    let actions = element_actions(t, w, g.vertex_count());
    let w_iso: BTreeSet<Elem> = w
        .elements()
        .filter(|&e| actions[e.0 as usize][top] == top)
        .collect();
    let delta_x = g.delta_of(g.vertex_id(top))?;
    let w_delta: BTreeSet<Elem> =
        w.subgroup_closure(&delta_x.iter().map(|&i| w.generator(i)).collect::<Vec<_>>());

    // W_X: isotropy elements stabilizing Delta(X) setwise
    let w_little: BTreeSet<Elem> = w_iso
        .iter()
        .copied()
        .filter(|&e| {
            delta_x.iter().all(|&i| {
                let mut v = vec![0i64; w.rank()];
                v[i] = 1;
                let img = w.apply_vec(e, &v);
                match img.iter().position(|&c| c != 0) {
                    Some(j) => {
                        img[j] == 1
                            && img.iter().filter(|&&c| c != 0).count() == 1
                            && delta_x.contains(&j)
                    }
                    None => false,
                }
            })
        })
        .collect();

    // semidirect decomposition checks
    let mut semidirect_ok = w_delta.iter().all(|d| w_iso.contains(d));
    // normality of W_Delta(X) in W_(X)
    if semidirect_ok {
        'outer: for &x in &w_iso {
            for &d in &w_delta {
                let conj = w.multiply(w.multiply(x, d), w.invert(x));
                if !w_delta.contains(&conj) {
                    semidirect_ok = false;
                    break 'outer;
                }
            }
        }
    }
    // trivial intersection and unique factorization w = d * x
    if semidirect_ok {
        let inter: Vec<&Elem> = w_delta.intersection(&w_little).collect();
        if inter.len() != 1 {
            semidirect_ok = false;
        }
    }
    if semidirect_ok {
        for &x in &w_iso {
            let factorizations = w_delta
                .iter()
                .filter(|&&d| w_little.contains(&w.multiply(w.invert(d), x)))
                .count();
            if factorizations != 1 {
                semidirect_ok = false;
                break;
            }
        }
    }

    // W^(X): minimal length in their coset w W_(X)
    let w_min_reps: BTreeSet<Elem> = w
        .elements()
        .filter(|&e| {
            let l = w.length(e);
            w_iso.iter().all(|&u| w.length(w.multiply(e, u)) >= l)
        })
        .collect();

    let classification = classify_generators(w, &w_iso, &delta_x, None);
    Ok(StabilizerReport {
        top: g.vertex_id(top).to_string(),
        w_iso,
        delta_x,
        w_delta,
        w_little,
        w_min_reps,
        semidirect_ok,
        classification,
    })
}

#[derive(Debug, Clone)]
pub struct PropMinimalReport {
    pub passed: bool,
    pub failures: Vec<crate::graph::Failure>,
}

/// For every `w`, the path-computed `W(w . top)` must equal
/// `{v : v^{-1} in W^(X) and v^{-1} in w W_(X)}`; minimal elements of each
/// coset must share one length and lie in a single left `W_X`-coset.
pub fn prop_minimal_check(
    t: &ActionTable,
    g: &OrbitGraph,
    w: &WeylGroupTable,
    stab: &StabilizerReport,
) -> Result<PropMinimalReport, Error> {
    let mut failures = Vec::new();
    let actions = element_actions(t, w, g.vertex_count());
    let top = g.principal_top()?;
    let mut weyl_sets: BTreeMap<usize, BTreeSet<Elem>> = BTreeMap::new();
    for u in w.elements() {
        let z = actions[u.0 as usize][top];
        let lhs = match weyl_sets.get(&z) {
            Some(s) => s.clone(),
            None => {
                let s: BTreeSet<Elem> = weyl_set(g, w, g.vertex_id(z))?.keys().copied().collect();
                weyl_sets.insert(z, s.clone());
                s
            }
        };
        let rhs: BTreeSet<Elem> = stab
            .w_iso
            .iter()
            .map(|&h| w.multiply(u, h))
            .filter(|c| stab.w_min_reps.contains(c))
            .map(|c| w.invert(c))
            .collect();
        if lhs != rhs {
            failures.push(crate::graph::Failure {
                rule: "w-set-equality".to_string(),
                witness: format!(
                    "w = `{}`, vertex `{}`: path-computed {{{}}} vs coset-computed {{{}}}",
                    w.word_string(u),
                    g.vertex_id(z),
                    lhs.iter().map(|&e| w.word_string(e)).collect::<Vec<_>>().join(", "),
                    rhs.iter().map(|&e| w.word_string(e)).collect::<Vec<_>>().join(", "),
                ),
            });
        }
        // minimal elements of the coset u W_(X)
        let minima = w.min_in_coset(u, &stab.w_iso, CosetSide::Left)?;
        let lengths: BTreeSet<usize> = minima.iter().map(|&m| w.length(m)).collect();
        if lengths.len() != 1 {
            failures.push(crate::graph::Failure {
                rule: "coset-minima-length".to_string(),
                witness: format!("coset of `{}` has minima of lengths {lengths:?}", w.word_string(u)),
            });
        }
        let m0 = *minima.iter().next().unwrap();
        if !minima
            .iter()
            .all(|&m| stab.w_little.contains(&w.multiply(w.invert(m0), m)))
        {
            failures.push(crate::graph::Failure {
                rule: "coset-minima-wx".to_string(),
                witness: format!(
                    "minima of the coset of `{}` do not lie in one left W_X-coset",
                    w.word_string(u)
                ),
            });
        }
    }
    Ok(PropMinimalReport { passed: failures.is_empty(), failures })
}
