use std::sync::Arc;

use super::{FiniteGroup, Limits, Subgroup};
use crate::{Error, Result};

/// A homomorphism between enumerated groups, stored as its full map.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<u32>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHom")
            .field("source_order", &self.source.order())
            .field("target_order", &self.target.order())
            .field("generator_images", &self.generator_images())
            .finish()
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source) && Arc::ptr_eq(&self.target, &other.target) && self.map == other.map
    }
}

impl GroupHom {
    /// Extends generator images along the Cayley graph, checking every edge.
    pub fn from_generator_images(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, images: &[usize]) -> Result<Self> {
        extend(source, target, images)
            .map(|map| GroupHom { source: source.clone(), target: target.clone(), map })
            .ok_or_else(|| Error::InvalidHom("generator images violate a relation of the source".into()))
    }

    /// Wraps a full element map after checking it is multiplicative.
    pub fn from_map(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidHom("map has the wrong shape".into()));
        }
        let images: Vec<usize> = source.generators().iter().map(|&s| map[s]).collect();
        let hom = Self::from_generator_images(source, target, &images)?;
        if hom.map.iter().zip(&map).any(|(&a, &b)| a as usize != b) {
            return Err(Error::InvalidHom("map is not multiplicative".into()));
        }
        Ok(hom)
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: group.clone(), target: group.clone(), map: (0..group.order() as u32).collect() }
    }

    pub fn trivial(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), map: vec![target.identity() as u32; source.order()] }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&y| y as usize).collect()
    }

    pub fn generator_images(&self) -> Vec<usize> {
        self.source.generators().iter().map(|&s| self.apply(s)).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(Error::ParentMismatch);
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&y| next.map[y as usize]).collect(),
        })
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.generator_images())
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.source.order()).filter(|&x| self.apply(x) == self.target.identity()).collect();
        Subgroup::from_closed(&self.source, members, Vec::new())
    }

    pub fn preimage(&self, sub: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(sub.parent(), &self.target) {
            return Err(Error::ParentMismatch);
        }
        let members: Vec<usize> = (0..self.source.order()).filter(|&x| sub.contains(self.apply(x))).collect();
        Ok(Subgroup::from_closed(&self.source, members, Vec::new()))
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generates(&self.generator_images())
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&y| y as usize == self.target.identity()).count() == 1
    }

    /// Exhaustive `f(ab) = f(a)f(b)` over all pairs.
    pub fn verify_pairwise(&self) -> bool {
        let n = self.source.order();
        (0..n).all(|a| (0..n).all(|b| self.apply(self.source.mul(a, b)) == self.target.mul(self.apply(a), self.apply(b))))
    }
}

fn extend(source: &FiniteGroup, target: &FiniteGroup, images: &[usize]) -> Option<Vec<u32>> {
    let k = source.generators().len();
    if images.len() != k {
        return None;
    }
    let n = source.order();
    let mut map = vec![u32::MAX; n];
    map[source.identity()] = target.identity() as u32;
    let mut queue = vec![source.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x] as usize;
        for (j, &img) in images.iter().enumerate() {
            let y = source.mul_gen(x, j);
            let fy = target.mul(fx, img) as u32;
            if map[y] == u32::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// All homomorphisms `source -> target`, in lexicographic order of
/// generator images.
pub fn enumerate_homs(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    surjective_only: bool,
    limits: &Limits,
) -> Result<Vec<GroupHom>> {
    let orders: Vec<usize> = (0..target.order()).map(|y| target.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = source
        .generators()
        .iter()
        .map(|&s| {
            let o = source.element_order(s);
            (0..target.order()).filter(|&y| o.is_multiple_of(orders[y])).collect()
        })
        .collect();
    enumerate_homs_with_candidates(source, target, &candidates, surjective_only, limits.max_search)
}

/// As [`enumerate_homs`], restricting generator `j` to `candidates[j]`.
pub fn enumerate_homs_with_candidates(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    candidates: &[Vec<usize>],
    surjective_only: bool,
    max_search: u64,
) -> Result<Vec<GroupHom>> {
    let k = source.generators().len();
    if candidates.len() != k {
        return Err(Error::Precondition("one candidate list per generator".into()));
    }
    let total = candidates.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match total {
        Some(t) if t <= max_search => {}
        _ => return Err(Error::cap("homomorphism search size", max_search)),
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<usize> = idx.iter().zip(candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(source, target, &images) {
            if !surjective_only || target.generates(&images) {
                out.push(GroupHom { source: source.clone(), target: target.clone(), map });
            }
        }
        // odometer, last position fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
