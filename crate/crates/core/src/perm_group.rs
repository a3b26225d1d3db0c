//! Permutation groups on `V = Z_q x Z_m`.
//!
//! Points are indexed as `i + q * j` for `(i, j)`. Permutations act on the
//! left: `(g * h)(v) = g(h(v))`.
//!
//! `G(C)` is available in two forms. [`GeneratedGroup`] is the explicit
//! closure of image tables, practical up to about a million elements.
//! [`SymbolicGroup`] represents each element as a pair `(c, t)` standing for
//! `beta_c * alpha^t`, which maps `(i, j)` to `(i + c_{j+t}, j + t)`. Products
//! follow `(c, t)(c', t') = (c + sigma^t(c'), t + t')`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclic_code::{CodeSpec, Codeword, CodewordIter, CyclicCode, DEFAULT_ENUMERATION_BUDGET};
use crate::error::{Error, Result};
use crate::field_poly::add_mod;

/// Default cap on explicitly materialized group elements.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

/// Tag recorded with serialized symbolic groups.
pub const SYMBOLIC_CONVENTION: &str = "(c,t) = beta_c * alpha^t; left action; point (i,j) -> i + q*j";

pub fn point_index(i: u32, j: usize, q: u32) -> u32 {
    i + q * j as u32
}

/// A bijection of `{0, ..., n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let slot = seen
                .get_mut(v as usize)
                .ok_or_else(|| Error::invalid(format!("image {v} out of range for degree {n}")))?;
            if *slot {
                return Err(Error::invalid(format!("image {v} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1, 2]]` for `(0 1 2)`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &v) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                if v as usize >= degree || next as usize >= degree {
                    return Err(Error::invalid(format!("cycle point out of range for degree {degree}")));
                }
                if std::mem::replace(&mut touched[v as usize], true) {
                    return Err(Error::invalid("cycles are not disjoint"));
                }
                images[v as usize] = next;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.images[v as usize]
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&v| self.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w as usize] = v as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(v, &w)| v as u32 == w).count()
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_point_count() == self.degree()
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_point_count() == 0
    }

    /// Cycle decomposition, omitting fixed points.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v as u32);
                v = self.images[v] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<_> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// `alpha: (i, j) -> (i, j + 1)` on `Z_q x Z_m`.
pub fn make_alpha(q: u32, m: usize) -> Permutation {
    let mut images = vec![0; q as usize * m];
    for j in 0..m {
        for i in 0..q {
            images[point_index(i, j, q) as usize] = point_index(i, (j + 1) % m, q);
        }
    }
    Permutation { images }
}

/// `beta_c: (i, j) -> (i + c_j, j)`.
pub fn make_beta(c: &Codeword, q: u32) -> Permutation {
    let m = c.len();
    let mut images = vec![0; q as usize * m];
    for (j, &cj) in c.entries().iter().enumerate() {
        for i in 0..q {
            images[point_index(i, j, q) as usize] = point_index(add_mod(i, cj, q), j, q);
        }
    }
    Permutation { images }
}

/// The generators `alpha` and `beta_c` for each generator-matrix row of `code`.
pub fn code_group_generators(code: &CyclicCode) -> Vec<Permutation> {
    let q = code.alphabet();
    let mut gens = vec![make_alpha(q, code.length())];
    gens.extend(code.generator_rows().iter().map(|row| make_beta(row, q)));
    gens
}

/// Common queries over explicit and symbolic permutation groups.
pub trait PermutationGroup {
    type Element: Clone + Eq + Hash + fmt::Debug;

    fn degree(&self) -> usize;
    fn order(&self) -> u64;
    fn identity(&self) -> Self::Element;
    /// `a * b` (apply `b` first).
    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    fn fixed_point_count(&self, a: &Self::Element) -> usize;
    fn contains(&self, a: &Self::Element) -> bool;
    /// A generating set, as explicit permutations.
    fn permutation_generators(&self) -> Vec<Permutation>;
    /// The element as an explicit permutation of the point set.
    fn to_permutation(&self, a: &Self::Element) -> Permutation;

    /// How the group is identified in serialized certificates.
    fn group_ref(&self) -> GroupRef;

    /// A cheaper exact answer to "is `members` pairwise intersecting", when the
    /// representation offers one.
    fn intersecting_fast_path(&self, _members: &[Self::Element]) -> Option<bool> {
        None
    }

    fn is_identity(&self, a: &Self::Element) -> bool {
        *a == self.identity()
    }

    /// `a` and `b` agree on some point, i.e. `b^-1 a` has a fixed point.
    fn are_intersecting(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.fixed_point_count(&self.compose(&self.inverse(b), a)) > 0
    }

    fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree(), &self.permutation_generators())
    }

    fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// `|G| / |V|`, defined only for transitive groups.
    fn stabilizer_order(&self) -> Result<u64> {
        if !self.is_transitive() {
            return Err(Error::invalid("stabilizer order of an intransitive group is not uniform"));
        }
        Ok(self.order() / self.degree() as u64)
    }

    /// `max_v |G_v| = |G| / (smallest orbit length)`.
    fn max_stabilizer_order(&self) -> u64 {
        let min_orbit = self.orbits().iter().map(Vec::len).min().unwrap_or(1).max(1);
        self.order() / min_orbit as u64
    }
}

/// Serialized reference to a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupRef {
    Explicit { degree: usize, generators: Vec<Vec<u32>> },
    Symbolic { code: CodeSpec, convention: String },
}

/// Orbits of the group generated by `gens`, each sorted, listed by least point.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for g in gens {
        for v in 0..degree {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v as u32) as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: HashMap<usize, Vec<u32>> = HashMap::new();
    for v in 0..degree {
        let root = find(&mut parent, v);
        by_root.entry(root).or_default().push(v as u32);
    }
    let mut out: Vec<_> = by_root.into_values().collect();
    out.sort();
    out
}

/// A finite permutation group with all elements materialized.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratedGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first closure of `generators` under left multiplication.
pub fn generate_group(generators: &[Permutation], budget: usize) -> Result<GeneratedGroup> {
    generate_group_with_degree(generators, budget, None)
}

fn generate_group_with_degree(
    generators: &[Permutation],
    budget: usize,
    degree: Option<usize>,
) -> Result<GeneratedGroup> {
    let degree = match (generators.first(), degree) {
        (Some(g), _) => g.degree(),
        (None, Some(d)) => d,
        (None, None) => return Err(Error::invalid("cannot infer degree from an empty generating set")),
    };
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::invalid("generators have different degrees"));
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        for s in generators {
            let next = s.compose(&elements[at]);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= budget {
                return Err(Error::Capacity {
                    what: "explicit group closure",
                    needed: elements.len() as u128 + 1,
                    budget: budget as u128,
                });
            }
            index.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    Ok(GeneratedGroup {
        degree,
        generators: generators.to_vec(),
        elements,
        index,
    })
}

impl GeneratedGroup {
    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        generate_group_with_degree(&[], 1, Some(degree)).expect("trivial group fits any budget")
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn position(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Wraps a set already known to be a subgroup, picking a small generating
    /// set greedily.
    fn from_subgroup_elements(degree: usize, members: Vec<Permutation>) -> Self {
        let mut span = GeneratedGroup::trivial(degree);
        let mut gens = Vec::new();
        for g in &members {
            if !span.index.contains_key(g) {
                gens.push(g.clone());
                span = generate_group(&gens, members.len()).expect("subgroup closure stays inside the subgroup");
            }
        }
        debug_assert_eq!(span.elements.len(), members.len());
        span
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Abelian with every nonidentity element of the same prime order.
    pub fn is_elementary_abelian(&self) -> bool {
        if !self.is_abelian() {
            return false;
        }
        let mut orders = self.elements.iter().filter(|g| !g.is_identity()).map(Permutation::order);
        match orders.next() {
            None => true,
            Some(p) => crate::numtheory::is_prime(p) && orders.all(|o| o == p),
        }
    }

    /// Elements fixing `point`.
    pub fn point_stabilizer(&self, point: u32) -> Vec<Permutation> {
        self.elements.iter().filter(|g| g.apply(point) == point).cloned().collect()
    }

    pub fn dump(&self) -> GroupDump {
        GroupDump {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images.clone()).collect(),
            order: Some(self.order()),
        }
    }
}

impl PermutationGroup for GeneratedGroup {
    type Element = Permutation;

    fn degree(&self) -> usize {
        self.degree
    }

    fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inverse(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn fixed_point_count(&self, a: &Permutation) -> usize {
        a.fixed_point_count()
    }

    fn contains(&self, a: &Permutation) -> bool {
        self.index.contains_key(a)
    }

    fn permutation_generators(&self) -> Vec<Permutation> {
        self.generators.clone()
    }

    fn to_permutation(&self, a: &Permutation) -> Permutation {
        a.clone()
    }

    fn group_ref(&self) -> GroupRef {
        GroupRef::Explicit {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images.clone()).collect(),
        }
    }

    fn are_intersecting(&self, a: &Permutation, b: &Permutation) -> bool {
        a.images.iter().zip(&b.images).any(|(x, y)| x == y)
    }
}

/// JSON form of an explicit group: degree, generator image arrays, order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDump {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

impl GroupDump {
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|imgs| {
                if imgs.len() != self.degree {
                    return Err(Error::invalid(format!(
                        "generator has {} images, degree is {}",
                        imgs.len(),
                        self.degree
                    )));
                }
                Permutation::from_images(imgs.clone())
            })
            .collect()
    }

    pub fn build(&self, budget: usize) -> Result<GeneratedGroup> {
        let group = generate_group_with_degree(&self.generators()?, budget, Some(self.degree))?;
        if let Some(order) = self.order {
            if order != group.order() {
                return Err(Error::invalid(format!(
                    "declared order {order} but generators give {}",
                    group.order()
                )));
            }
        }
        Ok(group)
    }
}

/// A partition of the point set into cells of equal size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    cells: Vec<Vec<u32>>,
}

impl BlockSystem {
    pub fn new(degree: usize, cells: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let size = cells.first().map(Vec::len).unwrap_or(0);
        for cell in &cells {
            if cell.is_empty() || cell.len() != size {
                return Err(Error::invalid("cells must be nonempty and of equal size"));
            }
            for &v in cell {
                let slot = seen
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::invalid(format!("point {v} out of range")))?;
                if std::mem::replace(slot, true) {
                    return Err(Error::invalid(format!("point {v} lies in two cells")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("cells do not cover the point set"));
        }
        Ok(BlockSystem { cells })
    }

    /// `{Z_q x {j}}`: the `m` columns of size `q`.
    pub fn columns(q: u32, m: usize) -> Self {
        BlockSystem {
            cells: (0..m).map(|j| (0..q).map(|i| point_index(i, j, q)).collect()).collect(),
        }
    }

    /// `{{i} x Z_m}`: the `q` rows of size `m`.
    pub fn rows(q: u32, m: usize) -> Self {
        BlockSystem {
            cells: (0..q).map(|i| (0..m).map(|j| point_index(i, j, q)).collect()).collect(),
        }
    }

    pub fn whole(degree: usize) -> Self {
        BlockSystem {
            cells: vec![(0..degree as u32).collect()],
        }
    }

    pub fn singletons(degree: usize) -> Self {
        BlockSystem {
            cells: (0..degree as u32).map(|v| vec![v]).collect(),
        }
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    pub fn degree(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    fn cell_lookup(&self) -> Vec<usize> {
        let mut cell_of = vec![0; self.degree()];
        for (idx, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                cell_of[v as usize] = idx;
            }
        }
        cell_of
    }

    fn maps_cells_to_cells(&self, g: &Permutation, cell_of: &[usize]) -> bool {
        self.cells.iter().all(|cell| {
            let target = cell_of[g.apply(cell[0]) as usize];
            cell.iter().all(|&v| cell_of[g.apply(v) as usize] == target)
        })
    }

    fn fixes_every_cell(&self, g: &Permutation, cell_of: &[usize]) -> bool {
        self.cells
            .iter()
            .enumerate()
            .all(|(idx, cell)| cell.iter().all(|&v| cell_of[g.apply(v) as usize] == idx))
    }
}

/// Every generator maps each cell onto a cell.
pub fn verify_block_system<G: PermutationGroup + ?Sized>(group: &G, blocks: &BlockSystem) -> Result<bool> {
    if blocks.degree() != group.degree() {
        return Err(Error::invalid(format!(
            "partition covers {} points, group has degree {}",
            blocks.degree(),
            group.degree()
        )));
    }
    let cell_of = blocks.cell_lookup();
    Ok(group
        .permutation_generators()
        .iter()
        .all(|g| blocks.maps_cells_to_cells(g, &cell_of)))
}

/// The subgroup of elements fixing every cell setwise.
pub fn kernel_of_block_action(group: &GeneratedGroup, blocks: &BlockSystem) -> Result<GeneratedGroup> {
    if !verify_block_system(group, blocks)? {
        return Err(Error::precondition("partition is not a block system of the group"));
    }
    let cell_of = blocks.cell_lookup();
    let members: Vec<_> = group
        .elements()
        .iter()
        .filter(|g| blocks.fixes_every_cell(g, &cell_of))
        .cloned()
        .collect();
    Ok(GeneratedGroup::from_subgroup_elements(group.degree(), members))
}

/// Every nonidentity element among `elements` is a derangement.
pub fn is_semiregular<G: PermutationGroup + ?Sized>(group: &G, elements: &[G::Element]) -> bool {
    elements
        .iter()
        .all(|g| group.is_identity(g) || group.fixed_point_count(g) == 0)
}

/// The degree-33 group `<a, b>` with `a(i) = i + 3` and
/// `b = b_0 b_2 b_3^2 b_4^2 b_5^2 b_6`, where `b_k = a^k b_0 a^-k = (3k 3k+1 3k+2)`.
pub fn build_example33() -> Result<GeneratedGroup> {
    let (a, b) = example33_generators()?;
    generate_group(&[a, b], DEFAULT_CLOSURE_BUDGET)
}

/// The generators `(a, b)` of [`build_example33`].
pub fn example33_generators() -> Result<(Permutation, Permutation)> {
    let n = 33usize;
    let a = Permutation::from_images((0..n as u32).map(|i| (i + 3) % n as u32).collect())?;
    let b0 = Permutation::from_cycles(n, &[&[0, 1, 2]])?;
    let b_k = |k: u64| {
        let ak = a.pow(k);
        ak.compose(&b0).compose(&ak.inverse())
    };
    for k in 0..11u32 {
        debug_assert_eq!(
            b_k(k as u64),
            Permutation::from_cycles(n, &[&[3 * k, 3 * k + 1, 3 * k + 2]])?
        );
    }
    let b = [(0, 1), (2, 1), (3, 2), (4, 2), (5, 2), (6, 1)]
        .iter()
        .fold(Permutation::identity(n), |acc, &(k, e)| acc.compose(&b_k(k).pow(e)));
    Ok((a, b))
}

/// An element `beta_c * alpha^t` of `G(C)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolicElement {
    pub word: Codeword,
    pub shift: usize,
}

impl fmt::Debug for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.word.entries(), self.shift)
    }
}

/// `G(C) = K x| <alpha>` without materializing its `m r^k` elements.
#[derive(Debug, Clone)]
pub struct SymbolicGroup {
    code: CyclicCode,
    order: u64,
}

pub fn build_group_symbolic(code: &CyclicCode) -> Result<SymbolicGroup> {
    let size = code.size()?;
    let order = u64::try_from(size)
        .ok()
        .and_then(|s| s.checked_mul(code.length() as u64))
        .ok_or(Error::Overflow("group order"))?;
    Ok(SymbolicGroup {
        code: code.clone(),
        order,
    })
}

impl SymbolicGroup {
    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn q(&self) -> u32 {
        self.code.alphabet()
    }

    pub fn m(&self) -> usize {
        self.code.length()
    }

    pub fn alpha(&self) -> SymbolicElement {
        SymbolicElement {
            word: Codeword::zero(self.m(), self.q()),
            shift: 1,
        }
    }

    pub fn beta(&self, c: &Codeword) -> SymbolicElement {
        SymbolicElement { word: c.clone(), shift: 0 }
    }

    /// All `(c, t)`, codewords outermost.
    pub fn elements(&self, budget: u128) -> Result<impl Iterator<Item = SymbolicElement> + '_> {
        let m = self.m();
        let words: CodewordIter = self.code.enumerate_codewords(budget)?;
        Ok(words.flat_map(move |w| {
            (0..m).map(move |t| SymbolicElement {
                word: w.clone(),
                shift: t,
            })
        }))
    }

    /// The translation subgroup `K = {beta_c}`.
    pub fn kernel_elements(&self, budget: u128) -> Result<impl Iterator<Item = SymbolicElement>> {
        Ok(self
            .code
            .enumerate_codewords(budget)?
            .map(|w| SymbolicElement { word: w, shift: 0 }))
    }

    /// Explicit closure of the same group.
    pub fn to_explicit(&self, budget: usize) -> Result<GeneratedGroup> {
        generate_group(&self.permutation_generators(), budget)
    }

    pub fn spec(&self) -> SymbolicGroupDump {
        SymbolicGroupDump {
            code: self.code.spec(),
            convention: SYMBOLIC_CONVENTION.to_string(),
        }
    }
}

impl PermutationGroup for SymbolicGroup {
    type Element = SymbolicElement;

    fn degree(&self) -> usize {
        self.q() as usize * self.m()
    }

    fn order(&self) -> u64 {
        self.order
    }

    fn identity(&self) -> SymbolicElement {
        SymbolicElement {
            word: Codeword::zero(self.m(), self.q()),
            shift: 0,
        }
    }

    fn compose(&self, a: &SymbolicElement, b: &SymbolicElement) -> SymbolicElement {
        SymbolicElement {
            word: a.word.add(&b.word.shifted(a.shift as i64)),
            shift: (a.shift + b.shift) % self.m(),
        }
    }

    fn inverse(&self, a: &SymbolicElement) -> SymbolicElement {
        SymbolicElement {
            word: a.word.shifted(-(a.shift as i64)).neg(),
            shift: (self.m() - a.shift) % self.m(),
        }
    }

    /// `q Z(c)` when `t = 0`; otherwise every column moves.
    fn fixed_point_count(&self, a: &SymbolicElement) -> usize {
        if a.shift == 0 {
            self.q() as usize * a.word.zero_count()
        } else {
            0
        }
    }

    fn contains(&self, a: &SymbolicElement) -> bool {
        a.shift < self.m() && self.code.contains(&a.word)
    }

    fn permutation_generators(&self) -> Vec<Permutation> {
        code_group_generators(&self.code)
    }

    fn to_permutation(&self, a: &SymbolicElement) -> Permutation {
        let (q, m) = (self.q(), self.m());
        let mut images = vec![0; q as usize * m];
        for j in 0..m {
            let jt = (j + a.shift) % m;
            let c = a.word.entries()[jt];
            for i in 0..q {
                images[point_index(i, j, q) as usize] = point_index(add_mod(i, c, q), jt, q);
            }
        }
        Permutation { images }
    }

    fn group_ref(&self) -> GroupRef {
        GroupRef::Symbolic {
            code: self.code.spec(),
            convention: SYMBOLIC_CONVENTION.to_string(),
        }
    }

    /// Members of `K` pairwise intersect whenever no codeword has full
    /// weight, since their differences are again codewords.
    fn intersecting_fast_path(&self, members: &[SymbolicElement]) -> Option<bool> {
        if members.iter().any(|e| e.shift != 0 || !self.code.contains(&e.word)) {
            return None;
        }
        let mut words = self.code.enumerate_codewords(DEFAULT_ENUMERATION_BUDGET).ok()?;
        words.all(|w| w.is_zero() || w.zero_count() > 0).then_some(true)
    }

    /// Equal shifts and a difference word with a zero entry.
    fn are_intersecting(&self, a: &SymbolicElement, b: &SymbolicElement) -> bool {
        a.shift == b.shift
            && a.word
                .entries()
                .iter()
                .zip(b.word.entries())
                .any(|(x, y)| x == y)
    }
}

/// JSON form of a symbolic group: the code plus the convention tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicGroupDump {
    pub code: CodeSpec,
    pub convention: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_code::build_code_from_parity_check;
    use crate::field_poly::{FactorOptions, FieldPolynomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn code(m: usize, r: u32, index: usize) -> CyclicCode {
        CyclicCode::from_cyclotomic_factor(m, r, index, &FactorOptions::default()).unwrap()
    }

    #[test]
    fn alpha_and_beta() {
        let a = make_alpha(3, 2);
        assert_eq!(a.cycles().len(), 3);
        assert!(a.cycles().iter().all(|c| c.len() == 2));
        assert_eq!(a.fixed_point_count(), 0);

        assert!(make_beta(&Codeword::zero(2, 3), 3).is_identity());

        let b = make_beta(&Codeword::new(vec![1, 0], 3), 3);
        assert_eq!(b.cycles(), vec![vec![0, 1, 2]]);
        assert_eq!(b.apply(point_index(1, 1, 3)), point_index(1, 1, 3));
    }

    #[test]
    fn cycle_construction_errors() {
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 3]]).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn cyclic_alpha_group() {
        let g = generate_group(&[make_alpha(3, 11)], 100).unwrap();
        assert_eq!(g.order(), 11);
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.len() == 11));
        assert!(is_semiregular(&g, g.elements()));
    }

    #[test]
    fn closure_budget() {
        let c = code(13, 3, 0);
        let err = generate_group(&code_group_generators(&c), 100).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    #[test]
    fn code_group_13_3() {
        let c = code(13, 3, 0);
        let g = generate_group(&code_group_generators(&c), DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(g.order(), 351);
        assert_eq!(g.degree(), 39);
        assert!(g.is_transitive());
        assert_eq!(g.stabilizer_order().unwrap(), 9);

        assert!(verify_block_system(&g, &BlockSystem::columns(3, 13)).unwrap());
        assert!(verify_block_system(&g, &BlockSystem::whole(39)).unwrap());
        assert!(verify_block_system(&g, &BlockSystem::singletons(39)).unwrap());
        assert!(!verify_block_system(&g, &BlockSystem::rows(3, 13)).unwrap());

        let k = kernel_of_block_action(&g, &BlockSystem::columns(3, 13)).unwrap();
        assert_eq!(k.order(), 27);
        assert!(k.is_elementary_abelian());
        assert!(!is_semiregular(&k, k.elements()));
        for e in k.elements().iter().filter(|e| !e.is_identity()) {
            assert_eq!(e.fixed_point_count(), 12);
        }
    }

    #[test]
    fn identity_group_orbits() {
        let g = GeneratedGroup::trivial(12);
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbits().len(), 12);
        assert!(is_semiregular(&g, g.elements()));
        assert!(g.stabilizer_order().is_err());
        assert_eq!(g.max_stabilizer_order(), 1);
    }

    #[test]
    fn regular_group_kernel_and_stabilizer() {
        let n = 12;
        let shift = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let g = generate_group(&[shift], 100).unwrap();
        assert_eq!(g.stabilizer_order().unwrap(), 1);
        let k = kernel_of_block_action(&g, &BlockSystem::singletons(n as usize)).unwrap();
        assert_eq!(k.order(), 1);
    }

    #[test]
    fn malformed_partitions() {
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![2]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 1]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 4], vec![1, 2]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 3], vec![1, 2]]).is_ok());
        let g = generate_group(&[make_alpha(2, 2)], 10).unwrap();
        assert!(verify_block_system(&g, &BlockSystem::whole(3)).is_err());
    }

    #[test]
    fn example33_facts() {
        let (a, b) = example33_generators().unwrap();
        assert_eq!(b.cycles(), vec![vec![0, 1, 2], vec![6, 7, 8], vec![9, 11, 10], vec![12, 14, 13], vec![15, 17, 16], vec![18, 19, 20]]);
        assert_eq!(a.order(), 11);

        let g = build_example33().unwrap();
        assert_eq!(g.order(), 2673);
        assert!(g.is_transitive());
        assert_eq!(g.stabilizer_order().unwrap(), 81);
        let blocks = BlockSystem::columns(3, 11);
        assert!(verify_block_system(&g, &blocks).unwrap());
        let k = kernel_of_block_action(&g, &blocks).unwrap();
        assert_eq!(k.order(), 243);
        assert!(k.is_elementary_abelian());
        assert!(k.elements().iter().all(|e| e.is_identity() || e.fixed_point_count() > 0));
    }

    #[test]
    fn symbolic_identity_and_inverse() {
        let c = code(13, 3, 0);
        let g = build_group_symbolic(&c).unwrap();
        assert_eq!(g.identity(), SymbolicElement { word: Codeword::zero(13, 3), shift: 0 });
        assert_eq!(g.order(), 351);
        let words: Vec<_> = c.enumerate_codewords(DEFAULT_ENUMERATION_BUDGET).unwrap().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let e = SymbolicElement {
                word: words[rng.gen_range(0..words.len())].clone(),
                shift: rng.gen_range(0..13),
            };
            assert!(g.contains(&e));
            assert!(g.is_identity(&g.compose(&e, &g.inverse(&e))));
            assert!(g.is_identity(&g.compose(&g.inverse(&e), &e)));
        }
    }

    #[test]
    fn symbolic_matches_explicit() {
        let c = code(13, 3, 0);
        let sym = build_group_symbolic(&c).unwrap();
        let explicit = sym.to_explicit(DEFAULT_CLOSURE_BUDGET).unwrap();
        let from_sym: HashSet<Permutation> = sym
            .elements(DEFAULT_ENUMERATION_BUDGET)
            .unwrap()
            .map(|e| sym.to_permutation(&e))
            .collect();
        let from_closure: HashSet<Permutation> = explicit.elements().iter().cloned().collect();
        assert_eq!(from_sym, from_closure);

        let elems: Vec<_> = sym.elements(DEFAULT_ENUMERATION_BUDGET).unwrap().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            assert_eq!(
                sym.to_permutation(&sym.compose(a, b)),
                sym.to_permutation(a).compose(&sym.to_permutation(b))
            );
            assert_eq!(sym.to_permutation(&sym.inverse(a)), sym.to_permutation(a).inverse());
            assert_eq!(sym.fixed_point_count(a), sym.to_permutation(a).fixed_point_count());
            assert_eq!(sym.are_intersecting(a, b), explicit.are_intersecting(&sym.to_permutation(a), &sym.to_permutation(b)));
        }
    }

    #[test]
    fn alpha_conjugates_beta_to_shifted_beta() {
        for (m, r) in [(13, 3), (11, 3), (31, 5)] {
            let c = code(m, r, 0);
            let alpha = make_alpha(r, m);
            for w in c.enumerate_codewords(DEFAULT_ENUMERATION_BUDGET).unwrap().take(50) {
                let conj = alpha.compose(&make_beta(&w, r)).compose(&alpha.inverse());
                assert_eq!(conj, make_beta(&w.shifted(1), r));
            }
            for t in 1..m as u64 {
                assert!(alpha.pow(t).is_derangement());
            }
        }
    }

    #[test]
    fn symbolic_fixed_points() {
        let c = code(13, 3, 0);
        let g = build_group_symbolic(&c).unwrap();
        assert_eq!(g.fixed_point_count(&g.identity()), 39);
        assert_eq!(g.fixed_point_count(&g.alpha()), 0);
        let w = c.enumerate_codewords(DEFAULT_ENUMERATION_BUDGET).unwrap().nth(5).unwrap();
        assert_eq!(w.zero_count(), 4);
        assert_eq!(g.fixed_point_count(&g.beta(&w)), 12);
    }

    #[test]
    fn order_and_stabilizer_of_code_groups() {
        for (m, r, i) in [(13, 3, 0), (13, 3, 3), (11, 3, 1), (31, 2, 0), (7, 2, 0)] {
            let c = code(m, r, i);
            let sym = build_group_symbolic(&c).unwrap();
            let explicit = sym.to_explicit(DEFAULT_CLOSURE_BUDGET).unwrap();
            let qk = (r as u64).pow(c.dimension() as u32);
            assert_eq!(explicit.order(), m as u64 * qk);
            assert_eq!(sym.order(), explicit.order());
            assert_eq!(explicit.stabilizer_order().unwrap(), qk / r as u64);
            assert_eq!(sym.stabilizer_order().unwrap(), qk / r as u64);
        }
    }

    #[test]
    fn full_space_group() {
        let full = build_code_from_parity_check(2, 3, &FieldPolynomial::x_pow_minus_one(2, 3)).unwrap();
        let g = build_group_symbolic(&full).unwrap();
        assert_eq!(g.order(), 18);
        assert!(g.is_transitive());
    }

    #[test]
    fn group_dump_round_trip() {
        let g = build_example33().unwrap();
        let dump = g.dump();
        let json = serde_json::to_string(&dump).unwrap();
        let back: GroupDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build(DEFAULT_CLOSURE_BUDGET).unwrap().order(), 2673);
        let bad = GroupDump { order: Some(5), ..dump };
        assert!(bad.build(DEFAULT_CLOSURE_BUDGET).is_err());
    }
}
