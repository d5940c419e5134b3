use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{BitSet, FiniteGroup, GroupHom, Limits};
use crate::{Error, Result};

/// A subgroup of an enumerated group, stored as its sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: BitSet,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup").field("order", &self.order()).field("index", &self.index()).finish()
    }
}

impl Subgroup {
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let members = group.closure_of(gens);
        Self::from_closed(group, members, gens.to_vec())
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_closed(group, (0..group.order()).collect(), group.generators().to_vec())
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_closed(group, vec![group.identity()], Vec::new())
    }

    /// Validates that `members` is closed and builds a small generating set.
    pub fn from_members(group: &Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&x| x >= group.order()) {
            return Err(Error::IndexOutOfRange { index: bad, min: 0, max: group.order() - 1 });
        }
        let mask = BitSet::from_indices(group.order(), members.iter().copied());
        if !mask.contains(group.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &members {
            for &b in &members {
                if !mask.contains(group.mul(a, b)) {
                    return Err(Error::NotSubgroup("not closed under multiplication".into()));
                }
            }
        }
        let gens = greedy_generators(group, &members);
        Ok(Subgroup { group: group.clone(), members, mask, gens })
    }

    pub(crate) fn from_closed(group: &Arc<FiniteGroup>, members: Vec<usize>, gens: Vec<usize>) -> Subgroup {
        let mask = BitSet::from_indices(group.order(), members.iter().copied());
        let gens = if gens.len() > 8 || (gens.is_empty() && members.len() > 1) {
            greedy_generators(group, &members)
        } else {
            gens
        };
        Subgroup { group: group.clone(), members, mask, gens }
    }

    pub(crate) fn from_mask(group: &Arc<FiniteGroup>, mask: BitSet) -> Subgroup {
        let members: Vec<usize> = mask.iter().collect();
        let gens = greedy_generators(group, &members);
        Subgroup { group: group.clone(), members, mask, gens }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.group.order()
    }

    fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_normal(&self) -> bool {
        self.group
            .generators()
            .iter()
            .all(|&s| self.gens.iter().all(|&h| self.contains(self.group.conj(h, s))))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.mask.is_subset(&other.mask))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        Ok(Subgroup::from_mask(&self.group, self.mask.intersect(&other.mask)))
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied().filter(|&x| !self.contains(x)));
        Ok(Subgroup::generated(&self.group, &gens))
    }

    /// `H^s = s⁻¹Hs`
    pub fn conjugate(&self, s: usize) -> Subgroup {
        let gens: Vec<usize> = self.gens.iter().map(|&h| self.group.conj(h, s)).collect();
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.group.conj(h, s)).collect();
        members.sort_unstable();
        Subgroup::from_closed(&self.group, members, gens)
    }

    /// The subgroup as a standalone group, with the embedding into the parent.
    pub fn as_group(&self, limits: &Limits) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
        let perms = if self.gens.is_empty() {
            vec![self.group.perm(self.group.identity()).clone()]
        } else {
            self.gens.iter().map(|&g| self.group.perm(g).clone()).collect()
        };
        let sub = FiniteGroup::close(&perms, limits)?;
        let embed = sub.elements().iter().map(|p| self.group.index_of(p).expect("member of parent")).collect();
        Ok((sub, embed))
    }

    /// Right cosets `Hx`: a coset id for every parent element, and the
    /// least element of each coset, ids numbered by that element.
    pub fn right_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.group.order();
        let mut id = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if id[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &h in &self.members {
                id[self.group.mul(h, x)] = c;
            }
        }
        (id, reps)
    }

    /// Left cosets `xH`, in the same format as [`Subgroup::right_cosets`].
    pub fn left_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.group.order();
        let mut id = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if id[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &h in &self.members {
                id[self.group.mul(x, h)] = c;
            }
        }
        (id, reps)
    }

    pub fn image(&self, hom: &GroupHom) -> Result<Subgroup> {
        if !Arc::ptr_eq(hom.source(), &self.group) {
            return Err(Error::ParentMismatch);
        }
        let gens: Vec<usize> = self.gens.iter().map(|&g| hom.apply(g)).collect();
        Ok(Subgroup::generated(hom.target(), &gens))
    }
}

fn greedy_generators(group: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut have = BitSet::from_indices(group.order(), [group.identity()]);
    let mut count = 1;
    for &x in members.iter().rev() {
        if count == members.len() {
            break;
        }
        if !have.contains(x) {
            gens.push(x);
            let closure = group.closure_of(&gens);
            count = closure.len();
            have = BitSet::from_indices(group.order(), closure);
        }
    }
    gens
}

/// The largest normal subgroup of the parent contained in `h`.
pub fn normal_core(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut core = h.clone();
    loop {
        let mut next = core.mask.clone();
        for &s in g.generators() {
            next = next.intersect(&core.conjugate(s).mask);
        }
        if next == core.mask {
            return core;
        }
        core = Subgroup::from_mask(g, next);
    }
}

/// The set `HK`, certified as a subgroup when either factor is normal.
#[derive(Debug, Clone)]
pub struct ProductSet {
    pub members: Vec<usize>,
    pub subgroup: Option<Subgroup>,
}

pub fn product_set(h: &Subgroup, k: &Subgroup) -> Result<ProductSet> {
    h.same_parent(k)?;
    let g = h.parent();
    let mut mask = BitSet::new(g.order());
    for &a in h.members() {
        for &b in k.members() {
            mask.insert(g.mul(a, b));
        }
    }
    let members: Vec<usize> = mask.iter().collect();
    let subgroup = if h.is_normal() || k.is_normal() {
        let mut gens = h.gens.clone();
        gens.extend_from_slice(&k.gens);
        Some(Subgroup::from_closed(g, members.clone(), gens))
    } else {
        None
    };
    Ok(ProductSet { members, subgroup })
}

/// `[H, K]`, the subgroup generated by all `[h, k]`.
pub fn commutator_subgroup_pair(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    h.same_parent(k)?;
    let g = h.parent();
    // [H,K] is the normal closure in <H,K> of the generator commutators.
    let mut gens: Vec<usize> = Vec::new();
    for &a in h.generators() {
        for &b in k.generators() {
            let c = g.comm(a, b);
            if c != g.identity() && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    let conjugators: Vec<usize> = h.generators().iter().chain(k.generators()).copied().collect();
    let mut sub = Subgroup::generated(g, &gens);
    loop {
        let extra: Vec<usize> = sub
            .gens
            .iter()
            .flat_map(|&x| conjugators.iter().map(move |&s| (x, s)))
            .map(|(x, s)| g.conj(x, s))
            .filter(|&y| !sub.contains(y))
            .collect();
        if extra.is_empty() {
            return Ok(sub);
        }
        let mut all = sub.gens.clone();
        all.extend(extra);
        sub = Subgroup::generated(g, &all);
    }
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure(group: &Arc<FiniteGroup>, elems: &[usize]) -> Subgroup {
    let mut sub = Subgroup::generated(group, elems);
    loop {
        let extra: Vec<usize> = sub
            .gens
            .iter()
            .flat_map(|&x| group.generators().iter().map(move |&s| group.conj(x, s)))
            .filter(|&y| !sub.contains(y))
            .collect();
        if extra.is_empty() {
            return sub;
        }
        let mut all = sub.gens.clone();
        all.extend(extra);
        sub = Subgroup::generated(group, &all);
    }
}

/// `G/N` realised by the regular action on cosets, with the natural map.
#[derive(Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub map: GroupHom,
}

pub fn quotient(group: &Arc<FiniteGroup>, n: &Subgroup, limits: &Limits) -> Result<Quotient> {
    if !Arc::ptr_eq(n.parent(), group) {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let (ids, reps) = n.right_cosets();
    let perms: Vec<crate::Perm> = group
        .generators()
        .iter()
        .map(|&s| {
            let images: Vec<u32> = reps.iter().map(|&r| ids[group.mul(r, s)] as u32).collect();
            crate::Perm::from_images_unchecked(images)
        })
        .collect();
    let q = FiniteGroup::close(&perms, limits)?;
    let images: Vec<usize> = perms.iter().map(|p| q.index_of(p).expect("generator")).collect();
    let map = GroupHom::from_generator_images(group, &q, &images)?;
    Ok(Quotient { group: q, map })
}

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        let mut class = vec![x];
        let mut head = 0;
        while head < class.len() {
            let y = class[head];
            head += 1;
            for &s in group.generators() {
                let z = group.conj(y, s);
                if !seen[z] {
                    seen[z] = true;
                    class.push(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Every normal subgroup, as joins of normal closures of single classes.
/// Sorted by order, then by member list.
pub fn normal_subgroups(group: &Arc<FiniteGroup>, limits: &Limits) -> Result<Vec<Subgroup>> {
    if group.order() > limits.max_normal_scan {
        return Err(Error::cap("normal-subgroup scan group order", limits.max_normal_scan as u64));
    }
    let n = group.order();
    let mut minimal: Vec<BitSet> = Vec::new();
    let mut seen_min: HashSet<BitSet> = HashSet::new();
    let mut covered = BitSet::new(n);
    for class in conjugacy_classes(group) {
        let x = class[0];
        if x == group.identity() {
            continue;
        }
        let c = normal_closure(group, &[x]).mask.clone();
        covered.insert(x);
        if seen_min.insert(c.clone()) {
            minimal.push(c);
        }
    }

    let join = |a: &BitSet, b: &BitSet| -> BitSet {
        // product of two normal subgroups is their join
        let mut out = a.clone();
        let amem: Vec<usize> = a.iter().collect();
        for y in b.iter() {
            if out.contains(y) {
                continue;
            }
            for &x in &amem {
                out.insert(group.mul(x, y));
            }
        }
        out
    };

    let trivial = BitSet::from_indices(n, [group.identity()]);
    let mut all: Vec<BitSet> = vec![trivial.clone()];
    let mut known: HashSet<BitSet> = HashSet::from([trivial]);
    let mut head = 0;
    while head < all.len() {
        let cur = all[head].clone();
        head += 1;
        for m in &minimal {
            if m.is_subset(&cur) {
                continue;
            }
            let j = join(&cur, m);
            if known.insert(j.clone()) {
                all.push(j);
                if all.len() > limits.max_search as usize {
                    return Err(Error::cap("normal subgroups", limits.max_search));
                }
            }
        }
    }
    let mut subs: Vec<Subgroup> = all.into_iter().map(|m| Subgroup::from_mask(group, m)).collect();
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(subs)
}

/// Every subgroup of a small group, by joining cyclic subgroups.
pub fn all_subgroups(group: &Arc<FiniteGroup>, limits: &Limits) -> Result<Vec<Subgroup>> {
    if group.order() > limits.max_normal_scan {
        return Err(Error::cap("subgroup scan group order", limits.max_normal_scan as u64));
    }
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    for x in 0..group.order() {
        let c = Subgroup::generated(group, &[x]);
        if seen.insert(c.mask.clone()) {
            cyclic.push(c);
        }
    }
    let mut all: Vec<Subgroup> = cyclic.clone();
    let mut head = 0;
    while head < all.len() {
        let cur = all[head].clone();
        head += 1;
        for c in &cyclic {
            if c.mask.is_subset(&cur.mask) {
                continue;
            }
            let j = cur.join(c)?;
            if seen.insert(j.mask.clone()) {
                all.push(j);
            }
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(all)
}

/// Interned subgroups with memoised "join with one element", used by
/// searches whose state includes the subgroup generated so far.
pub struct SubgroupCache {
    group: Arc<FiniteGroup>,
    sets: Vec<BitSet>,
    gens: Vec<Vec<usize>>,
    orders: Vec<usize>,
    ids: HashMap<BitSet, u32>,
    memo: HashMap<(u32, u32), u32>,
}

impl SubgroupCache {
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        let trivial = BitSet::from_indices(group.order(), [group.identity()]);
        let mut ids = HashMap::new();
        ids.insert(trivial.clone(), 0);
        SubgroupCache {
            group: group.clone(),
            sets: vec![trivial],
            gens: vec![Vec::new()],
            orders: vec![1],
            ids,
            memo: HashMap::new(),
        }
    }

    pub const TRIVIAL: u32 = 0;

    pub fn order(&self, id: u32) -> usize {
        self.orders[id as usize]
    }

    pub fn is_whole(&self, id: u32) -> bool {
        self.orders[id as usize] == self.group.order()
    }

    pub fn contains(&self, id: u32, x: usize) -> bool {
        self.sets[id as usize].contains(x)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The subgroup generated by subgroup `id` and element `x`.
    pub fn join(&mut self, id: u32, x: usize) -> u32 {
        if self.sets[id as usize].contains(x) {
            return id;
        }
        if let Some(&r) = self.memo.get(&(id, x as u32)) {
            return r;
        }
        let mut gens = self.gens[id as usize].clone();
        gens.push(x);
        let members = self.group.closure_of(&gens);
        let order = members.len();
        let set = BitSet::from_indices(self.group.order(), members);
        let r = match self.ids.get(&set) {
            Some(&r) => r,
            None => {
                let r = self.sets.len() as u32;
                self.ids.insert(set.clone(), r);
                self.sets.push(set);
                self.gens.push(gens);
                self.orders.push(order);
                r
            }
        };
        self.memo.insert((id, x as u32), r);
        r
    }

    pub fn subgroup(&self, id: u32) -> Subgroup {
        Subgroup::from_closed(
            &self.group,
            self.sets[id as usize].iter().collect(),
            self.gens[id as usize].clone(),
        )
    }
}
