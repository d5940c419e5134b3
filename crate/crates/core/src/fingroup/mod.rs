//! Enumerated finite groups.
//!
//! A [`FiniteGroup`] is the closure of a list of permutations, with every
//! element stored and addressed by its index. Elements are sorted
//! lexicographically by image list, so index 0 is always the identity and
//! every construction is reproducible run to run.

mod action;
mod bitset;
mod hom;
pub mod named;
mod product;
mod subgroup;

use std::collections::{HashSet, VecDeque};

use rustc_hash::FxHashMap as HashMap;
use std::sync::Arc;

use crate::perm::Perm;
use crate::{Error, Result};

pub use action::{all_actions, automorphism_group, GroupAction};
pub use bitset::BitSet;
pub use hom::{enumerate_homs, enumerate_homs_with_candidates, GroupHom};
pub use product::{direct_product, DirectProduct, SemidirectProduct, SplitExtension};
pub use subgroup::{
    all_subgroups, commutator_subgroup_pair, conjugacy_classes, normal_closure, normal_core,
    normal_subgroups, product_set, quotient, ProductSet, Quotient, Subgroup, SubgroupCache,
};

/// Desk-scale resource caps shared by every enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be fully enumerated.
    pub max_elements: usize,
    /// Largest number of candidate tuples an exhaustive search may visit.
    pub max_search: u64,
    /// Largest number of cosets a coset enumeration may define.
    pub max_cosets: usize,
    /// Largest group whose normal-subgroup lattice may be enumerated.
    pub max_normal_scan: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: 20_000, max_search: 200_000_000, max_cosets: 100_000, max_normal_scan: 5_000 }
    }
}

impl Limits {
    pub fn with_elements(mut self, max_elements: usize) -> Self {
        self.max_elements = max_elements;
        self
    }
}

/// Groups at most this large also carry a dense multiplication table.
const DENSE_LIMIT: usize = 2048;
const NO_PARENT: u32 = u32::MAX;

pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, u32>,
    gens: Vec<usize>,
    inverse: Vec<u32>,
    /// `right_gen[x * k + j] = x * gens[j]`
    right_gen: Vec<u32>,
    /// Breadth-first spanning tree of the Cayley graph: `(parent, generator)`.
    tree: Vec<(u32, u32)>,
    bfs_order: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("degree", &self.degree)
            .field("generators", &self.generator_perms())
            .finish()
    }
}

impl FiniteGroup {
    /// Closes a list of permutations under multiplication.
    pub fn close(generators: &[Perm], limits: &Limits) -> Result<Arc<FiniteGroup>> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Precondition("at least one generator is required".into()))?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, bad.degree()));
        }

        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= limits.max_elements {
                        return Err(Error::cap("group order", limits.max_elements as u64));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }

        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        let lookup: HashMap<Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let gens: Vec<usize> = generators.iter().map(|g| lookup[g] as usize).collect();
        Ok(Arc::new(Self::assemble(degree, elements, lookup, gens)))
    }

    fn assemble(degree: usize, elements: Vec<Perm>, lookup: HashMap<Perm, u32>, gens: Vec<usize>) -> Self {
        let n = elements.len();
        let k = gens.len();
        let mut right_gen = vec![0u32; n * k];
        for (x, p) in elements.iter().enumerate() {
            for (j, &g) in gens.iter().enumerate() {
                right_gen[x * k + j] = lookup[&p.compose(&elements[g])];
            }
        }
        let inverse: Vec<u32> = elements.iter().map(|p| lookup[&p.inverse()]).collect();

        let mut tree = vec![(NO_PARENT, 0u32); n];
        let mut visited = vec![false; n];
        let mut bfs_order = Vec::with_capacity(n);
        visited[0] = true;
        bfs_order.push(0u32);
        let mut head = 0;
        while head < bfs_order.len() {
            let x = bfs_order[head] as usize;
            head += 1;
            for j in 0..k {
                let y = right_gen[x * k + j] as usize;
                if !visited[y] {
                    visited[y] = true;
                    tree[y] = (x as u32, j as u32);
                    bfs_order.push(y as u32);
                }
            }
        }
        debug_assert_eq!(bfs_order.len(), n);

        let mut group = FiniteGroup { degree, elements, lookup, gens, inverse, right_gen, tree, bfs_order, table: None };
        if n <= DENSE_LIMIT {
            group.table = Some(group.build_table());
        }
        group
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        let k = self.gens.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
        }
        for &b in &self.bfs_order[1..] {
            let b = b as usize;
            let (p, j) = self.tree[b];
            for a in 0..n {
                let ap = table[a * n + p as usize] as usize;
                table[a * n + b] = self.right_gen[ap * k + j as usize];
            }
        }
        table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    pub fn perm(&self, x: usize) -> &Perm {
        &self.elements[x]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }

    /// Generator element indices, in the order they were supplied.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.gens.iter().map(|&g| self.elements[g].clone()).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => {
                let (p, q) = (self.elements[a].images(), self.elements[b].images());
                let mut buf = [0u32; 64];
                if p.len() > buf.len() {
                    return self.lookup[&self.elements[a].compose(&self.elements[b])] as usize;
                }
                for (slot, &i) in buf.iter_mut().zip(p) {
                    *slot = q[i as usize];
                }
                self.lookup[&buf[..p.len()]] as usize
            }
        }
    }

    #[inline]
    pub fn mul_gen(&self, a: usize, j: usize) -> usize {
        self.right_gen[a * self.gens.len() + j] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `x^y = y⁻¹xy`
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x⁻¹y⁻¹xy`
    pub fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A shortest word for `x` in the generators, as generator positions.
    pub fn word(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = x;
        while self.tree[cur].0 != NO_PARENT {
            let (p, j) = self.tree[cur];
            out.push(j as usize);
            cur = p as usize;
        }
        out.reverse();
        out
    }

    /// Renders `x` as a word `g1*g2^2*...`; the identity is `e`.
    pub fn word_string(&self, x: usize) -> String {
        let w = self.word(x);
        if w.is_empty() {
            return "e".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut run = 1;
            while i + run < w.len() && w[i + run] == w[i] {
                run += 1;
            }
            if run == 1 {
                parts.push(format!("g{}", w[i] + 1));
            } else {
                parts.push(format!("g{}^{}", w[i] + 1, run));
            }
            i += run;
        }
        parts.join("*")
    }

    /// Elements reachable from the identity by right multiplication with
    /// the given elements, i.e. the subgroup they generate.
    pub(crate) fn closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut mark = vec![false; n];
        mark[0] = true;
        let mut out = vec![0usize];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !mark[y] {
                    mark[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Order of the subgroup generated by `gens`.
    pub fn generated_order(&self, gens: &[usize]) -> usize {
        self.closure_of(gens).len()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_order(gens) == self.order()
    }
}

/// Checks a multiplication-table isomorphism by brute force (intended for
/// orders up to about 24). Returns the bijection `a -> b` when one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let candidates: Vec<Vec<usize>> = a
        .generators()
        .iter()
        .map(|&g| {
            let ord = a.element_order(g);
            (0..b.order()).filter(|&y| b.element_order(y) == ord).collect()
        })
        .collect();
    let homs = enumerate_homs_with_candidates(
        &Arc::new(clone_group(a)),
        &Arc::new(clone_group(b)),
        &candidates,
        false,
        u64::MAX,
    )
    .ok()?;
    homs.into_iter().find(|h| h.is_injective()).map(|h| h.map().to_vec())
}

fn clone_group(g: &FiniteGroup) -> FiniteGroup {
    FiniteGroup::assemble(g.degree, g.elements.clone(), g.lookup.clone(), g.gens.clone())
}
