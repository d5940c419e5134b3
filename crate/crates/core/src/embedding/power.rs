use std::sync::Arc;

use num_bigint::BigUint;

use super::Fsep;
use crate::fingroup::{
    enumerate_homs, named, BitSet, FiniteGroup, GroupAction, GroupHom, Limits, SemidirectProduct, Subgroup,
};
use crate::perm::Perm;
use crate::{Error, Result};

/// The problem with kernel `Cⁿ` under the component-wise action, and the
/// coordinate projections `Cⁿ ⋊ B → C ⋊ B`.
pub struct PowerProblem {
    pub fsep: Fsep,
    pub base: SemidirectProduct,
    pub power: SemidirectProduct,
    pub projections: Vec<GroupHom>,
}

pub fn power_problem(e: &Fsep, n: usize, limits: &Limits) -> Result<PowerProblem> {
    let action = e.action().ok_or_else(|| Error::Precondition("power problems need an explicit action".into()))?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let c = action.module();
    let b = action.actor();
    if (c.order() as u128).pow(n as u32) * b.order() as u128 > limits.max_elements as u128 {
        return Err(Error::cap("group order", limits.max_elements as u64));
    }
    // Cⁿ on n disjoint copies of C's points
    let d = c.degree();
    let mut gens = Vec::new();
    for i in 0..n {
        for p in c.generator_perms() {
            let mut images: Vec<u32> = (0..(n * d) as u32).collect();
            for (x, &y) in p.images().iter().enumerate() {
                images[i * d + x] = (i * d) as u32 + y;
            }
            gens.push(Perm::from_images_unchecked(images));
        }
    }
    let cn = FiniteGroup::close(&gens, limits)?;
    let tuple = |z: usize| -> Vec<usize> {
        let im = cn.perm(z).images();
        (0..n)
            .map(|i| {
                let part: Vec<u32> = im[i * d..(i + 1) * d].iter().map(|&y| y - (i * d) as u32).collect();
                c.index_of(&Perm::from_images_unchecked(part)).expect("coordinate in C")
            })
            .collect()
    };
    let from_tuple = |t: &[usize]| -> usize {
        let mut images = Vec::with_capacity(n * d);
        for (i, &x) in t.iter().enumerate() {
            images.extend(c.perm(x).images().iter().map(|&y| y + (i * d) as u32));
        }
        cn.index_of(&Perm::from_images_unchecked(images)).expect("tuple in Cⁿ")
    };
    let tuples: Vec<Vec<usize>> = (0..cn.order()).map(tuple).collect();
    let auts: Vec<Vec<usize>> = b
        .generators()
        .iter()
        .map(|&s| (0..cn.order()).map(|z| from_tuple(&tuples[z].iter().map(|&x| action.apply(s, x)).collect::<Vec<_>>())).collect())
        .collect();
    let power_action = GroupAction::from_generator_automorphisms(b, &cn, &auts)?;
    let power = SemidirectProduct::new(&power_action, limits)?;
    let base = SemidirectProduct::new(action, limits)?;
    let projections = (0..n)
        .map(|i| {
            let map = (0..power.group.order())
                .map(|z| {
                    let (x, y) = power.pair(z);
                    base.element(tuples[x][i], y)
                })
                .collect();
            GroupHom::from_map(&power.group, &base.group, map)
        })
        .collect::<Result<Vec<_>>>()?;
    let fsep = Fsep::from_extension(e.mu().clone(), power.split_extension())?;
    let fsep = Fsep { action: Some(power_action), ..fsep };
    Ok(PowerProblem { fsep, base, power, projections })
}

/// `(k!)^d`
pub fn subgroup_count_bound(d: u32, k: u32) -> BigUint {
    let fact: BigUint = (1..=k).map(BigUint::from).product();
    num_traits::pow(fact, d as usize)
}

/// Subgroups of index at most `k`, found as point stabilisers of the
/// transitive actions on `1..=d` points for `d ≤ k`.
pub fn count_subgroups_up_to_index(group: &Arc<FiniteGroup>, k: usize, limits: &Limits) -> Result<usize> {
    let mut seen: std::collections::HashSet<BitSet> = std::collections::HashSet::new();
    for d in 1..=k.min(group.order()) {
        let sd = named::build(named::Family::Symmetric, d, limits)?;
        for h in enumerate_homs(group, &sd, false, limits)? {
            let imgs: Vec<&Perm> = h.generator_images().iter().map(|&y| sd.perm(y)).collect();
            // transitive: orbit of point 0 is everything
            let mut orbit = vec![false; d];
            orbit[0] = true;
            let mut stack = vec![0usize];
            while let Some(p) = stack.pop() {
                for q in imgs.iter().map(|g| g.apply(p)) {
                    if !orbit[q] {
                        orbit[q] = true;
                        stack.push(q);
                    }
                }
            }
            if orbit.iter().all(|&o| o) {
                let stab: Vec<usize> = (0..group.order()).filter(|&x| sd.perm(h.apply(x)).apply(0) == 0).collect();
                seen.insert(Subgroup::from_members(group, stab)?.mask().clone());
            }
        }
    }
    Ok(seen.len())
}
