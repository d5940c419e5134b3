use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::SurfaceAssignment;
use crate::fingroup::{FiniteGroup, Limits, SubgroupCache};
use crate::{Error, Result};

/// Exhaustive search for tuples `(a₁,b₁,…,a_g,b_g)` with `∏[aᵢ,bᵢ] = 1`
/// and each image drawn from its own candidate list.
///
/// The last pair is never enumerated: its commutator is forced, so it is
/// read off a table of pairs grouped by commutator value.
pub struct FiberSearch<'a> {
    group: &'a Arc<FiniteGroup>,
    candidates: Vec<Vec<usize>>,
    last: HashMap<usize, Vec<(usize, usize)>>,
}

impl<'a> FiberSearch<'a> {
    pub fn new(group: &'a Arc<FiniteGroup>, candidates: Vec<Vec<usize>>) -> Result<Self> {
        if candidates.is_empty() || candidates.len() % 2 == 1 {
            return Err(Error::Precondition("need 2g candidate lists".into()));
        }
        let n = candidates.len();
        let mut last: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for &a in &candidates[n - 2] {
            for &b in &candidates[n - 1] {
                last.entry(group.comm(a, b)).or_default().push((a, b));
            }
        }
        Ok(FiberSearch { group, candidates, last })
    }

    pub fn genus(&self) -> usize {
        self.candidates.len() / 2
    }

    /// Number of prefixes the listing walks.
    pub fn prefix_size(&self) -> u128 {
        let n = self.candidates.len();
        self.candidates[..n - 2].iter().map(|c| c.len() as u128).product()
    }

    fn check_budget(&self, max_search: u64) -> Result<()> {
        if self.prefix_size() > max_search as u128 {
            return Err(Error::cap("representation search size", max_search));
        }
        Ok(())
    }

    /// Solutions in lexicographic order of candidate positions, stopping after
    /// `limit` if given. The first candidate list is split across workers.
    pub fn list(&self, surjective_only: bool, limit: Option<usize>, max_search: u64) -> Result<Vec<Vec<usize>>> {
        self.check_budget(max_search)?;
        if self.candidates.iter().any(|c| c.is_empty()) {
            return Ok(Vec::new());
        }
        if limit.is_some() || self.genus() == 1 {
            let mut out = Vec::new();
            let mut cache = SubgroupCache::new(self.group);
            let mut prefix = Vec::with_capacity(self.candidates.len());
            self.dfs(&mut prefix, self.group.identity(), SubgroupCache::TRIVIAL, surjective_only, &mut cache, &mut out, limit);
            return Ok(out);
        }
        let parts: Vec<Vec<Vec<usize>>> = self.candidates[0]
            .par_iter()
            .map(|&a| {
                let mut out = Vec::new();
                let mut cache = SubgroupCache::new(self.group);
                let sub = cache.join(SubgroupCache::TRIVIAL, a);
                let mut prefix = vec![a];
                self.dfs_b(&mut prefix, self.group.identity(), sub, surjective_only, &mut cache, &mut out, None);
                out
            })
            .collect();
        Ok(parts.into_iter().flatten().collect())
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        prefix: &mut Vec<usize>,
        product: usize,
        sub: u32,
        surjective_only: bool,
        cache: &mut SubgroupCache,
        out: &mut Vec<Vec<usize>>,
        limit: Option<usize>,
    ) -> bool {
        let g = self.group;
        let n = self.candidates.len();
        if prefix.len() == n - 2 {
            let need = g.inv(product);
            if let Some(pairs) = self.last.get(&need) {
                for &(a, b) in pairs {
                    if surjective_only {
                        let s = cache.join(sub, a);
                        let s = cache.join(s, b);
                        if !cache.is_whole(s) {
                            continue;
                        }
                    }
                    let mut t = prefix.clone();
                    t.push(a);
                    t.push(b);
                    out.push(t);
                    if limit.is_some_and(|l| out.len() >= l) {
                        return true;
                    }
                }
            }
            return false;
        }
        for &a in &self.candidates[prefix.len()] {
            let s = cache.join(sub, a);
            prefix.push(a);
            let stop = self.dfs_b(prefix, product, s, surjective_only, cache, out, limit);
            prefix.pop();
            if stop {
                return true;
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_b(
        &self,
        prefix: &mut Vec<usize>,
        product: usize,
        sub: u32,
        surjective_only: bool,
        cache: &mut SubgroupCache,
        out: &mut Vec<Vec<usize>>,
        limit: Option<usize>,
    ) -> bool {
        let g = self.group;
        let a = *prefix.last().expect("a chosen");
        for &b in &self.candidates[prefix.len()] {
            let s = cache.join(sub, b);
            let p = g.mul(product, g.comm(a, b));
            prefix.push(b);
            let stop = self.dfs(prefix, p, s, surjective_only, cache, out, limit);
            prefix.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// Counts solutions by a layered recursion over
    /// (partial product, generated subgroup) without listing them.
    pub fn count(&self, surjective_only: bool, max_states: u64) -> Result<u128> {
        let g = self.group;
        let mut cache = SubgroupCache::new(self.group);
        let mut states: HashMap<(usize, u32), u128> = HashMap::from([((g.identity(), SubgroupCache::TRIVIAL), 1)]);
        for pair in self.candidates.chunks(2) {
            let mut next: HashMap<(usize, u32), u128> = HashMap::new();
            let mut keys: Vec<_> = states.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                let c = states[&key];
                let (p, s) = key;
                for &a in &pair[0] {
                    let sa = if surjective_only { cache.join(s, a) } else { 0 };
                    for &b in &pair[1] {
                        let sb = if surjective_only { cache.join(sa, b) } else { 0 };
                        let e = next.entry((g.mul(p, g.comm(a, b)), sb)).or_insert(0);
                        *e = e.checked_add(c).ok_or_else(|| Error::cap("representation count", u64::MAX))?;
                    }
                }
            }
            if next.len() as u64 > max_states {
                return Err(Error::cap("representation count states", max_states));
            }
            states = next;
        }
        Ok(states
            .iter()
            .filter(|((p, s), _)| *p == g.identity() && (!surjective_only || cache.is_whole(*s)))
            .map(|(_, c)| *c)
            .sum())
    }
}

/// Every representation `Π_g → target`, lexicographically ordered.
pub fn enumerate_representations(
    genus: usize,
    target: &Arc<FiniteGroup>,
    surjective_only: bool,
    limits: &Limits,
) -> Result<Vec<SurfaceAssignment>> {
    if genus == 0 {
        return Err(Error::Precondition("genus must be at least 1".into()));
    }
    let all: Vec<usize> = (0..target.order()).collect();
    let search = FiberSearch::new(target, vec![all; 2 * genus])?;
    Ok(search
        .list(surjective_only, None, limits.max_search)?
        .into_iter()
        .map(|t| SurfaceAssignment::new_unchecked(target, t))
        .collect())
}

/// `|Hom(Π_g, target)|`, or the number of epimorphisms.
pub fn count_representations(genus: usize, target: &Arc<FiniteGroup>, surjective_only: bool, limits: &Limits) -> Result<u128> {
    if genus == 0 {
        return Err(Error::Precondition("genus must be at least 1".into()));
    }
    let all: Vec<usize> = (0..target.order()).collect();
    FiberSearch::new(target, vec![all; 2 * genus])?.count(surjective_only, limits.max_search)
}
