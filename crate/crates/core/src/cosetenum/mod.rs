//! Todd–Coxeter coset enumeration and Reidemeister–Schreier rewriting.
//!
//! Columns of a coset table are letters: column `2j` is generator `j` and
//! column `2j+1` its inverse. Coset 0 is the subgroup itself.

mod rs;
mod snf;

use std::sync::Arc;

use crate::fingroup::{Limits, Subgroup};
use crate::surface::{Letter, SurfaceAssignment, SurfacePresentation, Word};
use crate::{Error, Result};

pub use rs::{abelianization_invariants, reidemeister_schreier, Abelianization, SubgroupPresentation};
pub use snf::smith_diagonal;

const UNDEF: u32 = u32::MAX;

#[inline]
fn col(l: Letter) -> usize {
    2 * l.gen as usize + usize::from(l.inv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    rank: usize,
    rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Number of free generators.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset][col(l)] as usize
    }

    pub fn act_word(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Generator `j` as a permutation of the cosets.
    pub fn generator_images(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[2 * j]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.index()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            for &d in &self.rows[c] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    stack.push(d as usize);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Breadth-first spanning tree: for each coset but 0, `(parent, letter)`.
    pub fn schreier_tree(&self) -> Vec<Option<(usize, Letter)>> {
        let mut tree = vec![None; self.index()];
        let mut seen = vec![false; self.index()];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for (k, &d) in self.rows[c].iter().enumerate() {
                let d = d as usize;
                if !seen[d] {
                    seen[d] = true;
                    tree[d] = Some((c, Letter::new(k / 2, k % 2 == 1)));
                    queue.push(d);
                }
            }
        }
        tree
    }

    /// Transversal words `t_c` with `0·t_c = c`.
    pub fn transversal(&self) -> Vec<Word> {
        let tree = self.schreier_tree();
        let mut words: Vec<Option<Word>> = vec![None; self.index()];
        words[0] = Some(Word::identity());
        fn get(c: usize, tree: &[Option<(usize, Letter)>], words: &mut Vec<Option<Word>>) -> Word {
            if let Some(w) = &words[c] {
                return w.clone();
            }
            let (p, l) = tree[c].expect("tree reaches every coset");
            let w = get(p, tree, words).mul(&Word::from_letters([l]));
            words[c] = Some(w.clone());
            w
        }
        (0..self.index()).map(|c| get(c, &tree, &mut words)).collect()
    }

    /// Words generating the stabiliser of coset 0.
    pub fn stabilizer_words(&self) -> Vec<Word> {
        let t = self.transversal();
        let mut out = Vec::new();
        for c in 0..self.index() {
            for j in 0..self.rank {
                let d = self.rows[c][2 * j] as usize;
                let w = t[c].mul(&Word::generator(j)).mul(&t[d].inverse());
                if !w.is_empty() {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Rows are cosets, columns the action of each generator.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut s = String::from("coset");
        for l in labels.iter().take(self.rank) {
            s.push(',');
            s.push_str(l);
        }
        s.push('\n');
        for (c, r) in self.rows.iter().enumerate() {
            s.push_str(&(c + 1).to_string());
            for j in 0..self.rank {
                s.push(',');
                s.push_str(&(r[2 * j] + 1).to_string());
            }
            s.push('\n');
        }
        s
    }

    fn verify(&self, relators: &[Word], subgroup: &[Word]) -> Result<()> {
        for r in &self.rows {
            if r.contains(&UNDEF) {
                return Err(Error::NotClosed);
            }
        }
        for c in 0..self.index() {
            if relators.iter().any(|w| self.act_word(c, w) != c) {
                return Err(Error::Defect("relator does not close at a coset".into()));
            }
        }
        if subgroup.iter().any(|w| self.act_word(0, w) != 0) {
            return Err(Error::Defect("subgroup generator moves coset 0".into()));
        }
        Ok(())
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
}

impl Enumerator {
    fn new(rank: usize, max_cosets: usize) -> Self {
        let cols = 2 * rank;
        Enumerator { cols, table: vec![UNDEF; cols], parent: vec![0], queue: Vec::new(), max_cosets }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, k: usize) -> u32 {
        self.table[c * self.cols + k]
    }

    #[inline]
    fn set(&mut self, c: usize, k: usize, d: u32) {
        self.table[c * self.cols + k] = d;
    }

    fn active(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, k: usize) -> Result<()> {
        if self.len() >= self.max_cosets {
            return Err(Error::cap("cosets", self.max_cosets as u64));
        }
        let d = self.len();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, k, d as u32);
        self.set(d, k ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.queue.push(hi as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for k in 0..self.cols {
                let d = self.get(g, k);
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                if self.get(d, k ^ 1) as usize == g {
                    self.set(d, k ^ 1, UNDEF);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m_k = self.get(mu, k);
                if m_k != UNDEF {
                    self.merge(nu, m_k as usize);
                } else {
                    let n_k = self.get(nu, k ^ 1);
                    if n_k != UNDEF {
                        self.merge(mu, n_k as usize);
                    } else {
                        self.set(mu, k, nu as u32);
                        self.set(nu, k ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != UNDEF {
                b = self.get(b, w[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, w[i], b as u32);
                self.set(b, w[i] ^ 1, f as u32);
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }

    /// Renumbers live cosets breadth-first from coset 0.
    fn standardize(&mut self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut new_id = vec![UNDEF; n];
        let mut order = vec![0usize];
        new_id[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for k in 0..self.cols {
                let d = self.get(c, k);
                if d != UNDEF {
                    let d = self.rep(d as usize);
                    if new_id[d] == UNDEF {
                        new_id[d] = order.len() as u32;
                        order.push(d);
                    }
                }
            }
        }
        order
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|k| {
                        let d = self.get(c, k);
                        if d == UNDEF { UNDEF } else { new_id[self.rep(d as usize)] }
                    })
                    .collect()
            })
            .collect()
    }
}

/// HLT enumeration of the cosets of `⟨subgroup⟩` in `⟨rank gens | relators⟩`.
pub fn enumerate_cosets(rank: usize, relators: &[Word], subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let cols = |w: &Word| -> Vec<usize> { w.letters().iter().map(|&l| col(l)).collect() };
    let rels: Vec<Vec<usize>> = relators.iter().map(cols).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(cols).collect();
    if rels.iter().chain(&subs).flatten().any(|&k| k >= 2 * rank) {
        return Err(Error::Precondition("word uses a generator beyond the rank".into()));
    }
    let mut e = Enumerator::new(rank, max_cosets);
    for w in &subs {
        e.scan_and_fill(0, w)?;
    }
    let mut c = 0;
    while c < e.len() {
        for r in &rels {
            if !e.active(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        if e.active(c) {
            for k in 0..e.cols {
                if e.get(c, k) == UNDEF {
                    e.define(c, k)?;
                }
            }
        }
        c += 1;
    }
    let table = CosetTable { rank, rows: e.standardize() };
    table.verify(relators, subgroup)?;
    Ok(table)
}

/// Cosets of the subgroup of `Π_g` generated by `subgroup`.
pub fn todd_coxeter(pres: &SurfacePresentation, subgroup: &[Word], limits: &Limits) -> Result<CosetTable> {
    enumerate_cosets(pres.generator_count(), &[pres.relator()], subgroup, limits.max_cosets)
}

/// Cosets of `μ⁻¹(H)` for an assignment `μ` and `H` a subgroup of its target.
///
/// Generators of `μ⁻¹(H)` are read off the finite action of `Im μ` on the
/// cosets `H·x`, then enumerated by Todd–Coxeter; the index is checked
/// against `[Im μ : H ∩ Im μ]`.
pub fn todd_coxeter_by_hom(asg: &SurfaceAssignment, h: &Subgroup, limits: &Limits) -> Result<CosetTable> {
    let g = asg.target();
    if !Arc::ptr_eq(h.parent(), g) {
        return Err(Error::ParentMismatch);
    }
    let image = asg.generated_subgroup();
    let meet = image.intersection(h)?;
    let expected = image.order() / meet.order();
    if expected > limits.max_cosets {
        return Err(Error::cap("cosets", limits.max_cosets as u64));
    }
    let (ids, _) = h.right_cosets();
    // breadth-first over cosets H·x reached from H by the generator images
    let mut word_of: std::collections::BTreeMap<usize, (usize, Word)> = std::collections::BTreeMap::new();
    word_of.insert(ids[g.identity()], (g.identity(), Word::identity()));
    let mut queue = vec![g.identity()];
    let mut head = 0;
    let mut gens = Vec::new();
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let tx = word_of[&ids[x]].1.clone();
        for (j, &a) in asg.images().iter().enumerate() {
            let y = g.mul(x, a);
            let w = tx.mul(&Word::generator(j));
            match word_of.get(&ids[y]) {
                Some((_, ty)) => {
                    let s = w.mul(&ty.inverse());
                    if !s.is_empty() {
                        gens.push(s);
                    }
                }
                None => {
                    word_of.insert(ids[y], (y, w));
                    queue.push(y);
                }
            }
        }
    }
    let pres = SurfacePresentation::new(asg.genus())?;
    let table = todd_coxeter(&pres, &gens, limits)?;
    if table.index() != expected {
        return Err(Error::Defect(format!("coset enumeration gave index {} but the image gives {}", table.index(), expected)));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::direct_product;
    use crate::fingroup::named::*;

    fn pres(g: usize) -> SurfacePresentation {
        SurfacePresentation::new(g).unwrap()
    }

    #[test]
    fn whole_group_has_one_coset() {
        let p = pres(2);
        let gens: Vec<Word> = (0..4).map(Word::generator).collect();
        let t = todd_coxeter(&p, &gens, &Limits::default()).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn kernels_onto_small_groups() {
        let lim = Limits::default();
        let c2 = cyclic(2);
        let mu = SurfaceAssignment::new(&c2, vec![1, 0, 0, 0]).unwrap();
        let t = todd_coxeter_by_hom(&mu, &Subgroup::trivial(&c2), &lim).unwrap();
        assert_eq!(t.index(), 2);
        let v4 = direct_product(&c2, &c2, &lim).unwrap();
        let mu = SurfaceAssignment::new(&v4.group, vec![v4.element(1, 0), v4.element(0, 1), 0, 0]).unwrap();
        let t = todd_coxeter_by_hom(&mu, &Subgroup::trivial(&v4.group), &lim).unwrap();
        assert_eq!(t.index(), 4);
        assert!(t.is_transitive());
    }

    #[test]
    fn explicit_subgroup_words() {
        // ⟨x1², y1, x2, y2⟩ has index 2 in Π₂
        let p = pres(2);
        let ws: Vec<Word> = ["x1^2", "y1", "x2", "y2", "y1^x1", "x2^x1", "y2^x1"]
            .iter()
            .map(|s| p.parse_word(s).unwrap())
            .collect();
        let t = todd_coxeter(&p, &ws, &Limits::default()).unwrap();
        assert_eq!(t.index(), 2);
    }

    #[test]
    fn stabilizer_words_reenumerate() {
        let lim = Limits::default();
        let s3 = symmetric(3);
        let stab = Subgroup::generated(&s3, &[s3.index_of(&crate::Perm::from_cycles(3, &[vec![2, 3]]).unwrap()).unwrap()]);
        let gens = s3.generators().to_vec();
        let mu = SurfaceAssignment::new(&s3, vec![gens[0], 0, gens[1], 0]).unwrap();
        let t = todd_coxeter_by_hom(&mu, &stab, &lim).unwrap();
        assert_eq!(t.index(), 3);
        let again = todd_coxeter(&pres(2), &t.stabilizer_words(), &lim).unwrap();
        assert_eq!(again, t);
        assert!(t.to_csv(&pres(2).labels()).starts_with("coset,x1,y1,x2,y2\n1,"));
    }

    #[test]
    fn coset_cap() {
        let tight = Limits { max_cosets: 3, ..Limits::default() };
        let c5 = cyclic(5);
        let mu = SurfaceAssignment::new(&c5, vec![1, 0, 0, 0]).unwrap();
        assert!(todd_coxeter_by_hom(&mu, &Subgroup::trivial(&c5), &tight).unwrap_err().is_cap());
    }
}
