use std::collections::HashMap;

use super::{Fsep, Solution, SolutionKind, Want, BruteOutcome};
use crate::fingroup::{normal_closure, Limits, SubgroupCache};
use crate::surface::SurfaceAssignment;
use crate::{Error, Result};

/// `2a³`
pub fn genus_bound(a_order: u64) -> u64 {
    2 * a_order.pow(3)
}

/// `s·b²·(a+1)`
pub fn sharper_bound(s: u64, b_order: u64, a_order: u64) -> u64 {
    s * b_order * b_order * (a_order + 1)
}

/// `⌈2a²/b⌉`, the number of pairs collected into one block.
pub fn pigeonhole_r(a_order: usize, b_order: usize) -> usize {
    (2 * a_order * a_order).div_ceil(b_order)
}

/// Fewest kernel elements whose normal closure in the total group is the kernel.
pub fn normal_rank(e: &Fsep, limits: &Limits) -> Result<usize> {
    let kernel = e.extension().kernel();
    if kernel.is_trivial() {
        return Ok(0);
    }
    let total = e.total();
    let elems: Vec<usize> = kernel.members().iter().copied().filter(|&x| x != total.identity()).collect();
    let mut budget = limits.max_search;
    for s in 1..=elems.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            if budget == 0 {
                return Err(Error::cap("normal rank search", limits.max_search));
            }
            budget -= 1;
            let chosen: Vec<usize> = idx.iter().map(|&i| elems[i]).collect();
            if normal_closure(total, &chosen).order() == kernel.order() {
                return Ok(s);
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < elems.len() - s + i {
                    idx[i] += 1;
                    for t in i + 1..s {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    Ok(elems.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PigeonholeOptions {
    /// Run below `genus_bound`, where success is not guaranteed.
    pub allow_below_bound: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvePath {
    /// The kernel is trivial and `β∘μ` already solves the problem.
    Weak,
    /// A proper solution was found by changing only the collected block.
    Block,
    /// The block had no completion; the exhaustive search found one.
    Fallback,
}

impl SolvePath {
    pub fn as_str(self) -> &'static str {
        match self {
            SolvePath::Weak => "weak",
            SolvePath::Block => "block",
            SolvePath::Fallback => "fallback",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PigeonholeOutcome {
    pub solution: Solution,
    pub path: SolvePath,
    pub r: usize,
    /// The common `(μ(xᵢ), μ(yᵢ))` of the collected pairs.
    pub class: (usize, usize),
    /// 1-based positions of the collected pairs.
    pub indices: Vec<usize>,
}

impl Fsep {
    /// Pigeonholes the pairs by their image in `B`, moves `r` pairs of a
    /// largest class to the front, and completes `β∘μ` to a proper solution
    /// by changing only those pairs inside their `α`-fibres.
    ///
    /// Returns `Ok(None)` only below the bound, when the problem has no
    /// proper solution at all.
    pub fn pigeonhole_solve(&self, opts: PigeonholeOptions, limits: &Limits) -> Result<Option<PigeonholeOutcome>> {
        let k = self.kernel_order();
        let g = self.genus();
        let at_bound = g as u64 >= genus_bound(k as u64);
        if !at_bound && !opts.allow_below_bound {
            return Err(Error::Precondition(format!("genus {g} is below the bound {}", genus_bound(k as u64))));
        }
        let weak = self.weak_solution();
        let mu = self.mu();
        let r = pigeonhole_r(k, self.quotient().order());
        if k == 1 {
            return Ok(Some(PigeonholeOutcome {
                solution: weak,
                path: SolvePath::Weak,
                r: 0,
                class: (mu.a(1), mu.b(1)),
                indices: Vec::new(),
            }));
        }

        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 1..=g {
            *counts.entry((mu.a(i), mu.b(i))).or_insert(0) += 1;
        }
        let (&class, _) = counts
            .iter()
            .max_by(|(c1, n1), (c2, n2)| n1.cmp(n2).then_with(|| c2.cmp(c1)))
            .expect("g ≥ 1");
        let indices: Vec<usize> = (1..=g).filter(|&i| (mu.a(i), mu.b(i)) == class).take(r).collect();

        let mut moved = weak.psi.clone();
        for (t, &j) in indices.iter().enumerate() {
            moved = moved.collect_pair_to(j, t + 1)?;
        }

        if let Some(block) = self.complete_block(&moved, indices.len(), limits)? {
            let mut psi = block;
            for (t, &j) in indices.iter().enumerate().rev() {
                psi = psi.uncollect_pair(j, t + 1)?;
            }
            let solution = self.check(psi)?;
            if solution.kind != SolutionKind::Proper {
                return Err(Error::Defect("block completion is not surjective".into()));
            }
            return Ok(Some(PigeonholeOutcome { solution, path: SolvePath::Block, r, class, indices }));
        }

        match self.brute_solve(Want::Existence, limits) {
            Ok(BruteOutcome::Existence(Some(solution))) => {
                Ok(Some(PigeonholeOutcome { solution, path: SolvePath::Fallback, r, class, indices }))
            }
            Ok(_) if at_bound => Err(Error::CompletionFailure(format!(
                "no proper solution although genus {g} meets the bound"
            ))),
            Ok(_) => Ok(None),
            Err(e) if at_bound && e.is_cap() => Err(Error::CompletionFailure(format!(
                "block completion failed and the exhaustive fallback exceeded its budget ({e})"
            ))),
            Err(e) => Err(e),
        }
    }

    /// Exhaustive search over the first `len` pairs of `moved`, each image
    /// kept in its `α`-fibre, for a proper solution; the remaining pairs are fixed.
    fn complete_block(&self, moved: &SurfaceAssignment, len: usize, limits: &Limits) -> Result<Option<SurfaceAssignment>> {
        let total = self.total();
        let alpha = self.extension().alpha();
        let mut cache = SubgroupCache::new(total);
        let mut rest_sub = SubgroupCache::TRIVIAL;
        let mut rest_product = total.identity();
        for i in len + 1..=moved.genus() {
            rest_sub = cache.join(rest_sub, moved.a(i));
            rest_sub = cache.join(rest_sub, moved.b(i));
            rest_product = total.mul(rest_product, moved.pair_commutator(i));
        }
        let target = total.inv(rest_product);

        type Key = (usize, u32);
        let mut layers: Vec<HashMap<Key, (Key, usize, usize)>> = Vec::with_capacity(len);
        let mut frontier: Vec<Key> = vec![(total.identity(), rest_sub)];
        for i in 1..=len {
            let fa = self.extension().fiber(alpha.apply(moved.a(i)));
            let fb = self.extension().fiber(alpha.apply(moved.b(i)));
            let mut layer: HashMap<Key, (Key, usize, usize)> = HashMap::new();
            let mut next: Vec<Key> = Vec::new();
            for &key in &frontier {
                let (p, s) = key;
                for &a in fa {
                    let sa = cache.join(s, a);
                    for &b in fb {
                        let nk = (total.mul(p, total.comm(a, b)), cache.join(sa, b));
                        if let std::collections::hash_map::Entry::Vacant(v) = layer.entry(nk) {
                            v.insert((key, a, b));
                            next.push(nk);
                        }
                    }
                }
            }
            if next.len() as u64 > limits.max_search {
                return Err(Error::cap("block completion states", limits.max_search));
            }
            layers.push(layer);
            frontier = next;
        }
        let Some(&end) = frontier.iter().find(|&&(p, s)| p == target && cache.is_whole(s)) else {
            return Ok(None);
        };
        let mut images = moved.images().to_vec();
        let mut key = end;
        for i in (1..=len).rev() {
            let (prev, a, b) = layers[i - 1][&key];
            images[2 * (i - 1)] = a;
            images[2 * (i - 1) + 1] = b;
            key = prev;
        }
        Ok(Some(SurfaceAssignment::new(total, images)?))
    }
}

/// One genus of the solvability frontier below `genus_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierRow {
    pub genus: usize,
    pub bound: u64,
    /// Number of proper solutions for the canonical `μ`.
    pub proper_solutions: u128,
    /// Path taken by the pigeonhole solver, or `None` when it found nothing.
    pub pigeonhole: Option<SolvePath>,
}

impl FrontierRow {
    pub fn solvable(&self) -> bool {
        self.proper_solutions > 0
    }
}

/// For each genus up to `max_genus`, decides solvability for the canonical
/// `μ` (generators of `B` on `x₁, x₂, …`, everything else trivial) exactly,
/// and records how the pigeonhole solver fares.
pub fn genus_frontier(
    action: &crate::fingroup::GroupAction,
    max_genus: usize,
    limits: &Limits,
) -> Result<Vec<FrontierRow>> {
    let b = action.actor();
    let gens: Vec<usize> = b.generators().iter().copied().filter(|&x| x != b.identity()).collect();
    let mut rows = Vec::new();
    for genus in gens.len().max(1)..=max_genus {
        let mut images = vec![b.identity(); 2 * genus];
        for (i, &x) in gens.iter().enumerate() {
            images[2 * i] = x;
        }
        let e = Fsep::new(SurfaceAssignment::new(b, images)?, action, limits)?;
        let proper_solutions = e.count_proper(limits)?;
        let pigeonhole = match e.pigeonhole_solve(PigeonholeOptions { allow_below_bound: true }, limits) {
            Ok(out) => out.map(|o| o.path),
            Err(err) if err.is_cap() => None,
            Err(err) => return Err(err),
        };
        rows.push(FrontierRow { genus, bound: genus_bound(e.kernel_order() as u64), proper_solutions, pigeonhole });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::super::tests::fsep;
    use super::*;
    use crate::fingroup::named::*;
    use crate::fingroup::{all_actions, GroupAction};

    #[test]
    fn bounds() {
        assert_eq!(genus_bound(2), 16);
        assert_eq!(genus_bound(1), 2);
        assert_eq!(sharper_bound(1, 1, 2), 3);
        assert_eq!(pigeonhole_r(2, 2), 4);
        assert_eq!(pigeonhole_r(3, 2), 9);
    }

    #[test]
    fn at_the_bound() {
        let lim = Limits::default();
        let t = trivial();
        let mut mu = vec![0; 32];
        mu[0] = 0;
        let e = fsep(16, &t, mu, &GroupAction::trivial(&t, &cyclic(2)));
        let out = e.pigeonhole_solve(PigeonholeOptions::default(), &lim).unwrap().unwrap();
        assert_eq!(out.path, SolvePath::Block);
        assert_eq!(out.r, 8);
        assert_eq!(out.solution.kind, SolutionKind::Proper);

        let b = cyclic(2);
        let mut mu = vec![0; 32];
        mu[0] = 1;
        let e = fsep(16, &b, mu, &GroupAction::trivial(&b, &cyclic(2)));
        let out = e.pigeonhole_solve(PigeonholeOptions::default(), &lim).unwrap().unwrap();
        assert_eq!(out.r, 4);
        assert_eq!(out.indices, vec![2, 3, 4, 5]);
        assert_eq!(out.class, (0, 0));
    }

    #[test]
    fn below_bound_needs_opt_in() {
        let b = cyclic(2);
        let e = fsep(2, &b, vec![1, 0, 0, 0], &GroupAction::trivial(&b, &cyclic(2)));
        let err = e.pigeonhole_solve(PigeonholeOptions::default(), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn trivial_kernel_returns_weak() {
        let b = cyclic(3);
        let e = fsep(2, &b, vec![1, 0, 0, 0], &GroupAction::trivial(&b, &trivial()));
        let out = e.pigeonhole_solve(PigeonholeOptions::default(), &Limits::default()).unwrap().unwrap();
        assert_eq!(out.path, SolvePath::Weak);
        assert_eq!(out.solution, e.weak_solution());
    }

    #[test]
    fn agrees_with_brute_force_below_bound() {
        let lim = Limits::default();
        let opts = PigeonholeOptions { allow_below_bound: true };
        for b in [trivial(), cyclic(2), cyclic(3)] {
            for a in [cyclic(2), cyclic(3), cyclic(4)] {
                for act in all_actions(&b, &a, &lim).unwrap() {
                    for genus in 1..=3 {
                        let mut mu = vec![0; 2 * genus];
                        mu[0] = b.generators()[0];
                        let e = fsep(genus, &b, mu, &act);
                        let brute = e.count_proper(&lim).unwrap();
                        let ph = e.pigeonhole_solve(opts, &lim).unwrap();
                        assert_eq!(ph.is_some(), brute > 0, "genus {genus}");
                        if let Some(o) = ph {
                            assert_eq!(e.check(o.solution.psi).unwrap().kind, SolutionKind::Proper);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frontier_small() {
        let lim = Limits::default();
        let act = GroupAction::trivial(&trivial(), &cyclic(2));
        let rows = genus_frontier(&act, 4, &lim).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.solvable()));
        // C2 needs only one of 2g images to be nontrivial
        assert_eq!(rows[0].proper_solutions, 3);
    }

    #[test]
    fn normal_rank_small() {
        let lim = Limits::default();
        let b = cyclic(2);
        let c2c2 = crate::fingroup::direct_product(&cyclic(2), &cyclic(2), &lim).unwrap().group;
        let e = fsep(2, &b, vec![1, 0, 0, 0], &GroupAction::trivial(&b, &c2c2));
        assert_eq!(normal_rank(&e, &lim).unwrap(), 2);
        let e = fsep(2, &b, vec![1, 0, 0, 0], &GroupAction::inversion(&b, &cyclic(3)).unwrap());
        assert_eq!(normal_rank(&e, &lim).unwrap(), 1);
    }
}
