use std::sync::Arc;

use super::{enumerate_homs, FiniteGroup, GroupHom, Limits};
use crate::perm::Perm;
use crate::{Error, Result};

/// A right action of `actor` on `module` by automorphisms, `a ↦ a^g`.
#[derive(Clone)]
pub struct GroupAction {
    actor: Arc<FiniteGroup>,
    module: Arc<FiniteGroup>,
    /// `table[g * |module| + a] = a^g`
    table: Vec<u32>,
}

impl std::fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupAction")
            .field("actor_order", &self.actor.order())
            .field("module_order", &self.module.order())
            .field("trivial", &self.is_trivial())
            .finish()
    }
}

impl GroupAction {
    pub fn trivial(actor: &Arc<FiniteGroup>, module: &Arc<FiniteGroup>) -> Self {
        let m = module.order() as u32;
        let table = (0..actor.order()).flat_map(|_| 0..m).collect();
        GroupAction { actor: actor.clone(), module: module.clone(), table }
    }

    /// From the full automorphism of `module` attached to each actor generator.
    pub fn from_generator_automorphisms(
        actor: &Arc<FiniteGroup>,
        module: &Arc<FiniteGroup>,
        auts: &[Vec<usize>],
    ) -> Result<Self> {
        let k = actor.generators().len();
        let m = module.order();
        if auts.len() != k {
            return Err(Error::InvalidAction(format!("expected {k} generator automorphisms, got {}", auts.len())));
        }
        for (j, aut) in auts.iter().enumerate() {
            let hom = GroupHom::from_map(module, module, aut.clone())
                .map_err(|_| Error::InvalidAction(format!("generator {} does not act by a homomorphism", j + 1)))?;
            if !hom.is_injective() {
                return Err(Error::InvalidAction(format!("generator {} does not act bijectively", j + 1)));
            }
        }
        let n = actor.order();
        let mut table = vec![u32::MAX; n * m];
        for a in 0..m {
            table[a] = a as u32;
        }
        let mut done = vec![false; n];
        done[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (j, aut) in auts.iter().enumerate() {
                let y = actor.mul_gen(x, j);
                let row: Vec<u32> = (0..m).map(|a| aut[table[x * m + a] as usize] as u32).collect();
                if !done[y] {
                    done[y] = true;
                    table[y * m..(y + 1) * m].copy_from_slice(&row);
                    queue.push(y);
                } else if table[y * m..(y + 1) * m] != row[..] {
                    return Err(Error::InvalidAction(
                        "generator automorphisms do not satisfy the relations of the acting group".into(),
                    ));
                }
            }
        }
        Ok(GroupAction { actor: actor.clone(), module: module.clone(), table })
    }

    /// `images[j][i]` is the image of module generator `i` under actor generator `j`.
    pub fn from_generator_images(
        actor: &Arc<FiniteGroup>,
        module: &Arc<FiniteGroup>,
        images: &[Vec<usize>],
    ) -> Result<Self> {
        let auts = images
            .iter()
            .enumerate()
            .map(|(j, imgs)| {
                GroupHom::from_generator_images(module, module, imgs)
                    .map(|h| h.map())
                    .map_err(|_| Error::InvalidAction(format!("generator {} images do not define an endomorphism", j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_automorphisms(actor, module, &auts)
    }

    /// Every actor generator acts by inversion (module must be abelian).
    pub fn inversion(actor: &Arc<FiniteGroup>, module: &Arc<FiniteGroup>) -> Result<Self> {
        if !module.is_abelian() {
            return Err(Error::InvalidAction("inversion needs an abelian module".into()));
        }
        let inv: Vec<usize> = (0..module.order()).map(|a| module.inv(a)).collect();
        Self::from_generator_automorphisms(actor, module, &vec![inv; actor.generators().len()])
    }

    /// Checks the action axioms exhaustively; for testing.
    pub fn from_table(actor: &Arc<FiniteGroup>, module: &Arc<FiniteGroup>, table: Vec<usize>) -> Result<Self> {
        let m = module.order();
        if table.len() != actor.order() * m {
            return Err(Error::InvalidAction("table has the wrong shape".into()));
        }
        let act = GroupAction { actor: actor.clone(), module: module.clone(), table: table.into_iter().map(|x| x as u32).collect() };
        act.validate()?;
        Ok(act)
    }

    /// `a^1 = a`, `(a^g)^h = a^{gh}`, and each `g` is an automorphism.
    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.actor.order(), self.module.order());
        if (0..m).any(|a| self.apply(0, a) != a) {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = self.actor.mul(g, h);
                if (0..m).any(|a| self.apply(h, self.apply(g, a)) != self.apply(gh, a)) {
                    return Err(Error::InvalidAction("not compatible with multiplication".into()));
                }
            }
            for a in 0..m {
                for b in 0..m {
                    if self.apply(g, self.module.mul(a, b)) != self.module.mul(self.apply(g, a), self.apply(g, b)) {
                        return Err(Error::InvalidAction("an element does not act by a homomorphism".into()));
                    }
                }
            }
            let mut seen = vec![false; m];
            for a in 0..m {
                seen[self.apply(g, a)] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidAction("an element does not act bijectively".into()));
            }
        }
        Ok(())
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn module(&self) -> &Arc<FiniteGroup> {
        &self.module
    }

    /// `a^g`
    #[inline]
    pub fn apply(&self, g: usize, a: usize) -> usize {
        self.table[g * self.module.order() + a] as usize
    }

    pub fn is_trivial(&self) -> bool {
        let m = self.module.order();
        self.table.chunks(m).all(|row| row.iter().enumerate().all(|(a, &b)| a == b as usize))
    }

    /// The action of `hom.source()` through `hom`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<Self> {
        if !Arc::ptr_eq(hom.target(), &self.actor) {
            return Err(Error::ParentMismatch);
        }
        let m = self.module.order();
        let table = (0..hom.source().order())
            .flat_map(|x| {
                let g = hom.apply(x);
                self.table[g * m..(g + 1) * m].to_vec()
            })
            .collect();
        Ok(GroupAction { actor: hom.source().clone(), module: self.module.clone(), table })
    }

    /// Images of the module generators under each actor generator.
    pub fn generator_table(&self) -> Vec<Vec<usize>> {
        self.actor
            .generators()
            .iter()
            .map(|&s| self.module.generators().iter().map(|&a| self.apply(s, a)).collect())
            .collect()
    }
}

/// `Aut(A)` as permutations of the element indices of `A`.
pub fn automorphism_group(module: &Arc<FiniteGroup>, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    let homs = enumerate_homs(module, module, true, limits)?;
    let perms: Vec<Perm> = homs
        .iter()
        .filter(|h| h.is_injective())
        .map(|h| Perm::from_images_unchecked(h.map().into_iter().map(|x| x as u32).collect()))
        .collect();
    FiniteGroup::close(&perms, limits)
}

/// Every action of `actor` on `module`, one per homomorphism into `Aut(module)`.
pub fn all_actions(actor: &Arc<FiniteGroup>, module: &Arc<FiniteGroup>, limits: &Limits) -> Result<Vec<GroupAction>> {
    let aut = automorphism_group(module, limits)?;
    let m = module.order();
    Ok(enumerate_homs(actor, &aut, false, limits)?
        .into_iter()
        .map(|h| {
            let table = (0..actor.order())
                .flat_map(|g| {
                    let p = aut.perm(h.apply(g));
                    (0..m).map(move |a| p.apply(a) as u32)
                })
                .collect();
            GroupAction { actor: actor.clone(), module: module.clone(), table }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::direct_product;
    use super::super::named::*;
    use super::*;

    #[test]
    fn inversion_needs_compatible_actor() {
        let c3 = cyclic(3);
        assert!(GroupAction::inversion(&cyclic(2), &c3).is_ok());
        assert!(GroupAction::inversion(&cyclic(3), &c3).is_err());
        assert!(GroupAction::inversion(&cyclic(3), &cyclic(2)).is_ok());
        assert!(GroupAction::inversion(&cyclic(2), &symmetric(3)).is_err());
    }

    #[test]
    fn all_actions_validate() {
        let lim = Limits::default();
        let c2c2 = direct_product(&cyclic(2), &cyclic(2), &lim).unwrap().group;
        assert_eq!(automorphism_group(&c2c2, &lim).unwrap().order(), 6);
        assert_eq!(automorphism_group(&cyclic(1), &lim).unwrap().order(), 1);
        // Hom(S3, S3) has 10 elements
        let acts = all_actions(&symmetric(3), &c2c2, &lim).unwrap();
        assert_eq!(acts.len(), 10);
        for a in &acts {
            a.validate().unwrap();
        }
        assert_eq!(all_actions(&cyclic(2), &cyclic(3), &lim).unwrap().len(), 2);
    }
}
