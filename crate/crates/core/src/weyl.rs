//! Finite Weyl groups from Cartan data: exhaustive element tables with
//! lengths, ShortLex-minimal reduced words, Bruhat order, coset machinery
//! and root/coroot pairings.
//!
//! Elements are identified by their images on the simple roots; the action
//! on the full root set follows by linearity. The table is immutable after
//! construction and safe for concurrent reads.

use std::collections::{BTreeSet, HashMap};

use crate::cartan::CartanDatum;
use crate::error::Error;

/// Index into the table's root list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub u32);

/// A Weyl group element, valid for the table that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

/// Declared basis of a [`Weight`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightBasis {
    SimpleRoots,
    FundamentalWeights,
}

/// An integral weight with an explicit basis tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub basis: WeightBasis,
    pub coeffs: Vec<i64>,
}

impl Weight {
    pub fn simple_roots(coeffs: Vec<i64>) -> Weight {
        Weight { basis: WeightBasis::SimpleRoots, coeffs }
    }

    pub fn fundamental(coeffs: Vec<i64>) -> Weight {
        Weight { basis: WeightBasis::FundamentalWeights, coeffs }
    }
}

struct ElemData {
    /// Images of the simple roots.
    simple_images: Vec<RootId>,
    /// ShortLex-minimal reduced word, letters are simple-root indices.
    word: Vec<u8>,
    length: u32,
    inverse: Elem,
}

/// Exhaustive table of a finite Weyl group.
pub struct WeylGroupTable {
    datum: CartanDatum,
    /// Root coefficient vectors in the simple-root basis.
    roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, RootId>,
    positive: Vec<RootId>,
    elems: Vec<ElemData>,
    elem_index: HashMap<Vec<RootId>, Elem>,
    by_length: Vec<Vec<Elem>>,
    longest: Elem,
    /// Full multiplication table, only for groups of order at most
    /// [`MULT_TABLE_MAX`].
    mult_table: Option<Vec<u32>>,
}

pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// Largest order for which the full multiplication table is materialized.
const MULT_TABLE_MAX: usize = 512;

impl WeylGroupTable {
    pub fn new(datum: CartanDatum) -> Result<WeylGroupTable, Error> {
        Self::with_cap(datum, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(datum: CartanDatum, cap: usize) -> Result<WeylGroupTable, Error> {
        let n = datum.rank();
        // Enumerate the root set: closure of the simple roots under the
        // simple reflections. Finite by the datum's finite-type check.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut root_index: HashMap<Vec<i64>, RootId> = HashMap::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            root_index.insert(v.clone(), RootId(i as u32));
            roots.push(v);
        }
        let mut cursor = 0;
        while cursor < roots.len() {
            let v = roots[cursor].clone();
            cursor += 1;
            for i in 0..n {
                let w = reflect_simple(&datum, i, &v);
                if !root_index.contains_key(&w) {
                    root_index.insert(w.clone(), RootId(roots.len() as u32));
                    roots.push(w);
                }
            }
        }
        let positive: Vec<RootId> = (0..roots.len())
            .filter(|&r| roots[r].iter().all(|&c| c >= 0))
            .map(|r| RootId(r as u32))
            .collect();

        // Generator images.
        let mut gen_images: Vec<Vec<RootId>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut imgs = Vec::with_capacity(n);
            for j in 0..n {
                let mut v = vec![0i64; n];
                v[j] = 1;
                let w = reflect_simple(&datum, i, &v);
                imgs.push(root_index[&w]);
            }
            gen_images.push(imgs);
        }

        // BFS in ShortLex order: elements are appended in order of their
        // canonical word, so the first discovery of an element fixes its
        // ShortLex-minimal reduced word.
        let identity_images: Vec<RootId> = (0..n).map(|i| RootId(i as u32)).collect();
        let elems: Vec<ElemData> = vec![ElemData {
            simple_images: identity_images.clone(),
            word: Vec::new(),
            length: 0,
            inverse: Elem(0),
        }];
        let mut elem_index: HashMap<Vec<RootId>, Elem> = HashMap::new();
        elem_index.insert(identity_images, Elem(0));
        let elem_index = elem_index;

        let mut table = WeylGroupTable {
            datum,
            roots,
            root_index,
            positive,
            elems,
            elem_index,
            by_length: Vec::new(),
            longest: Elem(0),
            mult_table: None,
        };

        let mut cursor = 0usize;
        while cursor < table.elems.len() {
            let x = Elem(cursor as u32);
            let x_len = table.elems[cursor].length;
            let x_word = table.elems[cursor].word.clone();
            cursor += 1;
            for i in 0..n {
                // y = x * s_i; new iff it lengthens, i.e. x(alpha_i) > 0
                let img = table.elems[x.0 as usize].simple_images[i];
                if !table.is_positive(img) {
                    continue;
                }
                let images = table.compose_images(x, &gen_images[i]);
                if table.elem_index.contains_key(&images) {
                    continue;
                }
                let mut word = x_word.clone();
                word.push(i as u8);
                let y = Elem(table.elems.len() as u32);
                table.elem_index.insert(images.clone(), y);
                table.elems.push(ElemData {
                    simple_images: images,
                    word,
                    length: x_len + 1,
                    inverse: Elem(0), // fixed in a second pass
                });
                if table.elems.len() > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
            }
        }

        // Inverses, in discovery order: y = x * s_i gives y^{-1} = s_i * x^{-1},
        // and the parent x is always discovered before y.
        let gens: Vec<Elem> = gen_images
            .iter()
            .map(|imgs| table.elem_of_images(imgs).expect("generators are enumerated"))
            .collect();
        for idx in 1..table.elems.len() {
            let e = Elem(idx as u32);
            let last = *table.elems[idx].word.last().unwrap() as usize;
            let parent = table.multiply(e, gens[last]);
            debug_assert!(parent.0 < e.0);
            let inv_parent = table.elems[parent.0 as usize].inverse;
            table.elems[idx].inverse = table.multiply(gens[last], inv_parent);
        }

        if table.elems.len() <= MULT_TABLE_MAX {
            let order = table.elems.len();
            let mut mt = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    mt[a * order + b] = table.multiply_images(Elem(a as u32), Elem(b as u32)).0;
                }
            }
            table.mult_table = Some(mt);
        }

        let max_len = table.elems.iter().map(|e| e.length).max().unwrap() as usize;
        let mut by_length = vec![Vec::new(); max_len + 1];
        for (idx, e) in table.elems.iter().enumerate() {
            by_length[e.length as usize].push(Elem(idx as u32));
        }
        debug_assert_eq!(by_length[max_len].len(), 1);
        table.longest = by_length[max_len][0];
        table.by_length = by_length;
        Ok(table)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn generator(&self, i: usize) -> Elem {
        let images: Vec<RootId> = (0..self.rank())
            .map(|j| {
                let mut u = vec![0i64; self.rank()];
                u[j] = 1;
                self.root_index[&reflect_simple(&self.datum, i, &u)]
            })
            .collect();
        self.elem_index[&images]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elems.len() as u32).map(Elem)
    }

    pub fn elements_of_length(&self, l: usize) -> &[Elem] {
        self.by_length.get(l).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }

    pub fn longest_element(&self) -> Elem {
        self.longest
    }

    pub fn length(&self, w: Elem) -> usize {
        self.elems[w.0 as usize].length as usize
    }

    /// ShortLex-minimal reduced word; letters are simple-root indices.
    pub fn canonical_word(&self, w: Elem) -> &[u8] {
        &self.elems[w.0 as usize].word
    }

    /// Render a canonical word as a compact id string (`"e"`, `"s0s1"`).
    pub fn word_string(&self, w: Elem) -> String {
        let word = self.canonical_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|&i| format!("s{i}")).collect()
        }
    }

    pub fn multiply(&self, a: Elem, b: Elem) -> Elem {
        if let Some(mt) = &self.mult_table {
            return Elem(mt[a.0 as usize * self.elems.len() + b.0 as usize]);
        }
        self.multiply_images(a, b)
    }

    fn multiply_images(&self, a: Elem, b: Elem) -> Elem {
        let images: Vec<RootId> = (0..self.rank())
            .map(|j| {
                let b_img = self.elems[b.0 as usize].simple_images[j];
                let v = self.apply_vec(a, &self.roots[b_img.0 as usize].clone());
                self.root_index[&v]
            })
            .collect();
        self.elem_index[&images]
    }

    pub fn invert(&self, a: Elem) -> Elem {
        self.elems[a.0 as usize].inverse
    }

    /// Product of simple reflections, left to right: `word_to_elem(&[0,1])`
    /// is `s_0 s_1`.
    pub fn word_to_elem(&self, word: &[usize]) -> Result<Elem, Error> {
        let mut acc = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::BadSimpleRoot(i));
            }
            acc = self.multiply(acc, self.generator(i));
        }
        Ok(acc)
    }

    fn compose_images(&self, a: Elem, b_images: &[RootId]) -> Vec<RootId> {
        b_images
            .iter()
            .map(|&r| {
                let v = self.apply_vec(a, &self.roots[r.0 as usize].clone());
                self.root_index[&v]
            })
            .collect()
    }

    fn elem_of_images(&self, images: &[RootId]) -> Option<Elem> {
        self.elem_index.get(images).copied()
    }

    /// Apply `w` to a vector in the root lattice (simple-root basis).
    pub fn apply_vec(&self, w: Elem, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = self.elems[w.0 as usize].simple_images[j];
            for (k, &x) in self.roots[img.0 as usize].iter().enumerate() {
                out[k] += c * x;
            }
        }
        out
    }

    /// Apply `w` to a root, rejecting non-root input.
    pub fn apply_to_root(&self, w: Elem, root: &[i64]) -> Result<Vec<i64>, Error> {
        if !self.root_index.contains_key(root) {
            return Err(Error::NotARoot(root.to_vec()));
        }
        Ok(self.apply_vec(w, root))
    }

    pub fn apply_to_root_id(&self, w: Elem, r: RootId) -> RootId {
        let v = self.apply_vec(w, &self.roots[r.0 as usize].clone());
        self.root_index[&v]
    }

    pub fn roots_len(&self) -> usize {
        self.roots.len()
    }

    pub fn root_vec(&self, r: RootId) -> &[i64] {
        &self.roots[r.0 as usize]
    }

    pub fn root_id(&self, v: &[i64]) -> Option<RootId> {
        self.root_index.get(v).copied()
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        RootId(i as u32)
    }

    pub fn positive_roots(&self) -> &[RootId] {
        &self.positive
    }

    pub fn is_positive(&self, r: RootId) -> bool {
        self.roots[r.0 as usize].iter().all(|&c| c >= 0)
    }

    /// Number of positive roots sent to negative roots; equals the word
    /// length and is the definition the table's lengths are tested against.
    pub fn length_by_inversions(&self, w: Elem) -> usize {
        self.positive
            .iter()
            .filter(|&&r| !self.is_positive(self.apply_to_root_id(w, r)))
            .count()
    }

    /// Invariant bilinear form on the root lattice.
    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += u[i] * v[j] * self.datum.form(i, j);
            }
        }
        acc
    }

    pub fn roots_orthogonal(&self, a: RootId, b: RootId) -> bool {
        self.form(&self.roots[a.0 as usize].clone(), &self.roots[b.0 as usize].clone()) == 0
    }

    /// `<v, gamma^vee> = 2 (v, gamma) / (gamma, gamma)` for a root `gamma`.
    pub fn coroot_pairing(&self, v: &[i64], gamma: RootId) -> i64 {
        let g = self.roots[gamma.0 as usize].clone();
        let num = 2 * self.form(v, &g);
        let den = self.form(&g, &g);
        debug_assert!(den > 0 && num % den == 0);
        num / den
    }

    /// `<lambda, alpha_i^vee>` for a tagged weight.
    pub fn pairing(&self, lambda: &Weight, i: usize) -> Result<i64, Error> {
        if i >= self.rank() || lambda.coeffs.len() != self.rank() {
            return Err(Error::BadSimpleRoot(i));
        }
        Ok(match lambda.basis {
            WeightBasis::FundamentalWeights => lambda.coeffs[i],
            WeightBasis::SimpleRoots => (0..self.rank())
                .map(|j| lambda.coeffs[j] * self.datum.entry(i, j))
                .sum(),
        })
    }

    /// Order of `s_i s_j` computed by iteration; agrees with the Cartan
    /// entry table for finite type.
    pub fn braid_order(&self, i: usize, j: usize) -> Result<u32, Error> {
        if i == j {
            return Err(Error::EqualSimpleRoots(i));
        }
        if i >= self.rank() || j >= self.rank() {
            return Err(Error::BadSimpleRoot(i.max(j)));
        }
        let g = self.multiply(self.generator(i), self.generator(j));
        let mut acc = g;
        let mut order = 1;
        while acc != self.identity() {
            acc = self.multiply(acc, g);
            order += 1;
        }
        Ok(order)
    }

    /// `w` is the minimal-length representative of `w W_I`, i.e. `w(I)` is
    /// positive.
    pub fn is_min_coset_rep(&self, w: Elem, subset: &BTreeSet<usize>) -> bool {
        subset
            .iter()
            .all(|&i| self.is_positive(self.elems[w.0 as usize].simple_images[i]))
    }

    /// `W^I`: one representative per coset of `W_I`, sorted.
    pub fn min_coset_reps(&self, subset: &BTreeSet<usize>) -> Vec<Elem> {
        self.elements()
            .filter(|&w| self.is_min_coset_rep(w, subset))
            .collect()
    }

    /// Unique factorization `w = u v` with `u` in `W^I` and `v` in `W_I`,
    /// lengths adding.
    pub fn coset_decompose(&self, w: Elem, subset: &BTreeSet<usize>) -> (Elem, Elem) {
        let mut u = w;
        let mut v = self.identity();
        'outer: loop {
            for &i in subset {
                // right descent in I: u(alpha_i) < 0
                if !self.is_positive(self.elems[u.0 as usize].simple_images[i]) {
                    u = self.multiply(u, self.generator(i));
                    v = self.multiply(self.generator(i), v);
                    continue 'outer;
                }
            }
            break;
        }
        (u, v)
    }

    /// Subgroup check: closed under multiplication and inverse, contains
    /// the identity.
    pub fn is_subgroup(&self, h: &BTreeSet<Elem>) -> bool {
        if !h.contains(&self.identity()) {
            return false;
        }
        for &a in h {
            if !h.contains(&self.invert(a)) {
                return false;
            }
            for &b in h {
                if !h.contains(&self.multiply(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn subgroup_closure(&self, gens: &[Elem]) -> BTreeSet<Elem> {
        let mut set: BTreeSet<Elem> = BTreeSet::new();
        set.insert(self.identity());
        let mut stack: Vec<Elem> = gens.to_vec();
        while let Some(g) = stack.pop() {
            if set.contains(&g) {
                continue;
            }
            let members: Vec<Elem> = set.iter().copied().collect();
            set.insert(g);
            stack.push(self.invert(g));
            for m in members {
                stack.push(self.multiply(m, g));
                stack.push(self.multiply(g, m));
            }
        }
        set
    }

    /// All minimal-length elements of `w H` (side = Left means the coset
    /// `w H`; side = Right means `H w`). `H` must be a subgroup.
    pub fn min_in_coset(
        &self,
        w: Elem,
        h: &BTreeSet<Elem>,
        side: CosetSide,
    ) -> Result<BTreeSet<Elem>, Error> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup(format!(
                "{} elements, not closed",
                h.len()
            )));
        }
        let coset: BTreeSet<Elem> = h
            .iter()
            .map(|&u| match side {
                CosetSide::Left => self.multiply(w, u),
                CosetSide::Right => self.multiply(u, w),
            })
            .collect();
        let min = coset.iter().map(|&x| self.length(x)).min().unwrap();
        Ok(coset.into_iter().filter(|&x| self.length(x) == min).collect())
    }

    /// Bruhat-Chevalley order via the subword property on the canonical
    /// reduced word of `v`.
    pub fn bruhat_leq(&self, u: Elem, v: Elem) -> bool {
        if u == v {
            return true;
        }
        if self.length(u) >= self.length(v) {
            return false;
        }
        let mut reach = vec![false; self.order()];
        reach[0] = true;
        let mut frontier: Vec<Elem> = vec![self.identity()];
        for &i in self.canonical_word(v) {
            let gen = self.generator(i as usize);
            let mut added = Vec::new();
            for &x in &frontier {
                let y = self.multiply(x, gen);
                if !reach[y.0 as usize] {
                    reach[y.0 as usize] = true;
                    added.push(y);
                }
            }
            frontier.extend(added);
            if reach[u.0 as usize] {
                return true;
            }
        }
        reach[u.0 as usize]
    }

    /// All reflections `s_gamma`, one per positive root, paired with the
    /// root.
    pub fn reflections(&self) -> Vec<(Elem, RootId)> {
        self.positive
            .iter()
            .map(|&g| (self.reflection_in(g), g))
            .collect()
    }

    fn reflection_in(&self, gamma: RootId) -> Elem {
        let n = self.rank();
        let gvec = self.roots[gamma.0 as usize].clone();
        let images: Vec<RootId> = (0..n)
            .map(|j| {
                let mut v = vec![0i64; n];
                v[j] = 1;
                let c = self.coroot_pairing(&v, gamma);
                for (k, &gk) in gvec.iter().enumerate() {
                    v[k] -= c * gk;
                }
                self.root_index[&v]
            })
            .collect();
        self.elem_index[&images]
    }

    /// All products `s_gamma s_delta` over unordered pairs of orthogonal
    /// positive roots, with the pair.
    pub fn commuting_reflection_products(&self) -> Vec<(Elem, RootId, RootId)> {
        let mut out = Vec::new();
        for (a, &g) in self.positive.iter().enumerate() {
            for &d in self.positive.iter().skip(a + 1) {
                if self.roots_orthogonal(g, d) {
                    let e = self.multiply(self.reflection_in(g), self.reflection_in(d));
                    out.push((e, g, d));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetSide {
    Left,
    Right,
}

fn reflect_simple(datum: &CartanDatum, i: usize, v: &[i64]) -> Vec<i64> {
    // s_i(v) = v - <v, alpha_i^vee> alpha_i
    let c: i64 = (0..datum.rank()).map(|j| v[j] * datum.entry(i, j)).sum();
    let mut out = v.to_vec();
    out[i] -= c;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(label: &str) -> WeylGroupTable {
        WeylGroupTable::new(CartanDatum::from_label(label).unwrap()).unwrap()
    }

    #[test]
    fn orders_match_classical_formulas() {
        for (label, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("A4", 120),
            ("B2", 8),
            ("B3", 48),
            ("B4", 384),
            ("C2", 8),
            ("C3", 48),
            ("C4", 384),
            ("D4", 192),
            ("G2", 12),
            ("F4", 1152),
            ("A1+A1", 4),
            ("A2+A1", 12),
        ] {
            assert_eq!(table(label).order(), order, "{label}");
        }
    }

    #[test]
    fn order_cap_rejects_large_types() {
        let datum = CartanDatum::from_label("A7").unwrap();
        match WeylGroupTable::with_cap(datum, 1000) {
            Err(Error::GroupTooLarge { cap: 1000 }) => {}
            other => panic!("expected GroupTooLarge, got {:?}", other.map(|t| t.order())),
        }
    }

    #[test]
    fn lengths_equal_inversion_counts() {
        for label in ["A3", "B2", "A1+A1", "G2"] {
            let w = table(label);
            for e in w.elements() {
                assert_eq!(w.length(e), w.length_by_inversions(e));
                assert_eq!(w.length(e), w.canonical_word(e).len());
                assert_eq!(w.word_to_elem(
                    &w.canonical_word(e).iter().map(|&i| i as usize).collect::<Vec<_>>()
                ).unwrap(), e);
            }
        }
    }

    #[test]
    fn simple_multiplication_facts() {
        let w = table("A2");
        let a = w.generator(0);
        let b = w.generator(1);
        assert_eq!(w.multiply(a, a), w.identity());
        assert_eq!(w.braid_order(0, 1).unwrap(), 3);
        let ab = w.multiply(a, b);
        assert_eq!(w.invert(ab), w.multiply(b, a));
        // longest element of A2 has length 3 = |Phi^+|
        assert_eq!(w.length(w.longest_element()), 3);
        assert_eq!(w.positive_roots().len(), 3);
    }

    #[test]
    fn length_of_aba_in_b2_is_three() {
        // Oracle: no word of length < 3 multiplies to s0 s1 s0.
        let w = table("B2");
        let target = w.word_to_elem(&[0, 1, 0]).unwrap();
        let mut short = std::collections::HashSet::new();
        for a in 0..2usize {
            short.insert(w.word_to_elem(&[a]).unwrap());
            for b in 0..2usize {
                short.insert(w.word_to_elem(&[a, b]).unwrap());
            }
        }
        short.insert(w.identity());
        assert!(!short.contains(&target));
        assert_eq!(w.length(target), 3);
    }

    #[test]
    fn length_changes_by_one_under_left_multiplication() {
        for label in ["A3", "B2"] {
            let w = table(label);
            for e in w.elements() {
                for i in 0..w.rank() {
                    let l = w.length(w.multiply(w.generator(i), e)) as i64;
                    assert_eq!((l - w.length(e) as i64).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn apply_to_root_examples_and_bijectivity() {
        let w = table("A2");
        let alpha = vec![1, 0];
        let beta = vec![0, 1];
        assert_eq!(w.apply_to_root(w.identity(), &alpha).unwrap(), alpha);
        assert_eq!(w.apply_to_root(w.generator(0), &alpha).unwrap(), vec![-1, 0]);
        // s_beta(alpha) = alpha + beta
        assert_eq!(w.apply_to_root(w.generator(1), &alpha).unwrap(), vec![1, 1]);
        assert!(w.apply_to_root(w.generator(0), &[5, 7]).is_err());
        // bijection of the root set preserving the form
        for e in w.elements() {
            let mut seen = std::collections::HashSet::new();
            for r in 0..w.roots_len() {
                let img = w.apply_to_root_id(e, RootId(r as u32));
                assert!(seen.insert(img));
            }
            assert_eq!(
                w.form(&w.apply_vec(e, &alpha), &w.apply_vec(e, &beta)),
                w.form(&alpha, &beta)
            );
        }
        let _ = beta;
    }

    #[test]
    fn longest_element_squares_to_identity_and_permutes_simples() {
        for label in ["A2", "A3", "B2", "A1+A1", "B3"] {
            let w = table(label);
            let w0 = w.longest_element();
            assert_eq!(w.multiply(w0, w0), w.identity());
            // conjugation by w0 permutes the simple roots
            for i in 0..w.rank() {
                let mut v = vec![0i64; w.rank()];
                v[i] = 1;
                let img = w.apply_vec(w0, &v);
                let neg: Vec<i64> = img.iter().map(|&c| -c).collect();
                assert!(neg.iter().filter(|&&c| c != 0).count() == 1 && neg.iter().sum::<i64>() == 1,
                    "{label}: w0(alpha_{i}) is not minus a simple root: {img:?}");
            }
        }
    }

    /// Independent Bruhat oracle: enumerate every reduced word of `v`, then
    /// every subword product.
    fn bruhat_oracle(w: &WeylGroupTable, u: Elem, v: Elem) -> bool {
        fn reduced_words(w: &WeylGroupTable, v: Elem, acc: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
            if v == w.identity() {
                // peeling left descents yields the word left to right
                acc.push(cur.clone());
                return;
            }
            for i in 0..w.rank() {
                let shorter = w.multiply(w.generator(i), v);
                if w.length(shorter) < w.length(v) {
                    cur.push(i);
                    reduced_words(w, shorter, acc, cur);
                    cur.pop();
                }
            }
        }
        let mut words = Vec::new();
        reduced_words(w, v, &mut words, &mut Vec::new());
        for word in words {
            // word multiplies left-to-right to v; enumerate subwords
            for mask in 0..(1u32 << word.len()) {
                let sub: Vec<usize> = word
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                if w.word_to_elem(&sub).unwrap() == u {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn bruhat_matches_brute_force_oracle_on_a2() {
        let w = table("A2");
        for u in w.elements() {
            for v in w.elements() {
                assert_eq!(w.bruhat_leq(u, v), bruhat_oracle(&w, u, v), "{u:?} <= {v:?}");
            }
        }
        // named examples
        let a = w.generator(0);
        let b = w.generator(1);
        let ba = w.multiply(b, a);
        assert!(w.bruhat_leq(a, ba));
        assert!(!w.bruhat_leq(a, b));
        for v in w.elements() {
            assert!(w.bruhat_leq(w.identity(), v));
        }
    }

    #[test]
    fn coset_reps_examples_and_unique_factorization() {
        let w = table("A2");
        let empty: BTreeSet<usize> = BTreeSet::new();
        assert_eq!(w.min_coset_reps(&empty).len(), 6);
        let all: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(w.min_coset_reps(&all), vec![w.identity()]);
        let i0: BTreeSet<usize> = [0].into_iter().collect();
        let reps = w.min_coset_reps(&i0);
        let expected: BTreeSet<Elem> = [
            w.identity(),
            w.generator(1),
            w.word_to_elem(&[0, 1]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(reps.iter().copied().collect::<BTreeSet<_>>(), expected);

        for label in ["A3", "B2"] {
            let w = table(label);
            let subset: BTreeSet<usize> = [0].into_iter().collect();
            for e in w.elements() {
                let (u, v) = w.coset_decompose(e, &subset);
                assert!(w.is_min_coset_rep(u, &subset));
                assert_eq!(w.multiply(u, v), e);
                assert_eq!(w.length(u) + w.length(v), w.length(e));
            }
        }
    }

    #[test]
    fn min_in_coset_examples() {
        let w = table("A1+A1");
        let diag: BTreeSet<Elem> = [w.identity(), w.word_to_elem(&[0, 1]).unwrap()]
            .into_iter()
            .collect();
        let got = w.min_in_coset(w.generator(0), &diag, CosetSide::Left).unwrap();
        let expect: BTreeSet<Elem> = [w.generator(0), w.generator(1)].into_iter().collect();
        assert_eq!(got, expect);

        let trivial: BTreeSet<Elem> = [w.identity()].into_iter().collect();
        let g = w.generator(1);
        assert_eq!(
            w.min_in_coset(g, &trivial, CosetSide::Left).unwrap(),
            [g].into_iter().collect()
        );
        let whole: BTreeSet<Elem> = w.elements().collect();
        assert_eq!(
            w.min_in_coset(g, &whole, CosetSide::Right).unwrap(),
            [w.identity()].into_iter().collect()
        );
        let not_subgroup: BTreeSet<Elem> = [w.generator(0)].into_iter().collect();
        assert!(w.min_in_coset(g, &not_subgroup, CosetSide::Left).is_err());
    }

    #[test]
    fn reflection_counts() {
        assert_eq!(table("A1").reflections().len(), 1);
        let a2 = table("A2");
        assert_eq!(a2.reflections().len(), 3);
        assert_eq!(a2.commuting_reflection_products().len(), 0);
        let aa = table("A1+A1");
        assert_eq!(aa.reflections().len(), 2);
        assert_eq!(aa.commuting_reflection_products().len(), 1);
        // each reflection is an involution
        for (e, _) in a2.reflections() {
            assert_eq!(a2.multiply(e, e), a2.identity());
        }
    }

    #[test]
    fn pairing_examples() {
        let w = table("A2");
        let alpha = Weight::simple_roots(vec![1, 0]);
        assert_eq!(w.pairing(&alpha, 0).unwrap(), 2);
        assert_eq!(w.pairing(&alpha, 1).unwrap(), -1);
        let omega0 = Weight::fundamental(vec![1, 0]);
        assert_eq!(w.pairing(&omega0, 1).unwrap(), 0);
        assert_eq!(w.pairing(&omega0, 0).unwrap(), 1);
    }
}

#[cfg(test)]
mod concurrency {
    /// Tables and graphs are immutable after construction and shareable
    /// across threads.
    #[test]
    fn tables_and_graphs_are_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<super::WeylGroupTable>();
        assert_send_sync::<crate::graph::OrbitGraph>();
        assert_send_sync::<crate::knop::ActionTable>();
    }
}
