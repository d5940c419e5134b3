use std::sync::Arc;

use super::{FiniteGroup, GroupAction, GroupHom, Limits, Subgroup};
use crate::perm::Perm;
use crate::{Error, Result};

/// `G × H` on the disjoint union of the two point sets.
pub struct DirectProduct {
    pub group: Arc<FiniteGroup>,
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    pairs: Vec<(u32, u32)>,
    index: Vec<u32>,
}

pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>, limits: &Limits) -> Result<DirectProduct> {
    let ida = Perm::identity(a.degree());
    let idb = Perm::identity(b.degree());
    let mut gens: Vec<Perm> = a.generator_perms().iter().map(|p| p.disjoint_sum(&idb)).collect();
    gens.extend(b.generator_perms().iter().map(|p| ida.disjoint_sum(p)));
    let group = FiniteGroup::close(&gens, limits)?;
    let mut pairs = vec![(0, 0); group.order()];
    let mut index = vec![0; group.order()];
    for x in 0..a.order() {
        for y in 0..b.order() {
            let z = group.index_of(&a.perm(x).disjoint_sum(b.perm(y))).expect("pair in product");
            pairs[z] = (x as u32, y as u32);
            index[x * b.order() + y] = z as u32;
        }
    }
    Ok(DirectProduct { group, left: a.clone(), right: b.clone(), pairs, index })
}

impl DirectProduct {
    pub fn pair(&self, z: usize) -> (usize, usize) {
        let (x, y) = self.pairs[z];
        (x as usize, y as usize)
    }

    pub fn element(&self, x: usize, y: usize) -> usize {
        self.index[x * self.right.order() + y] as usize
    }

    pub fn project_left(&self) -> GroupHom {
        let map = (0..self.group.order()).map(|z| self.pair(z).0).collect();
        GroupHom::from_map(&self.group, &self.left, map).expect("projection")
    }

    pub fn project_right(&self) -> GroupHom {
        let map = (0..self.group.order()).map(|z| self.pair(z).1).collect();
        GroupHom::from_map(&self.group, &self.right, map).expect("projection")
    }

    pub fn embed_left(&self) -> GroupHom {
        let map = (0..self.left.order()).map(|x| self.element(x, 0)).collect();
        GroupHom::from_map(&self.left, &self.group, map).expect("embedding")
    }

    pub fn embed_right(&self) -> GroupHom {
        let map = (0..self.right.order()).map(|y| self.element(0, y)).collect();
        GroupHom::from_map(&self.right, &self.group, map).expect("embedding")
    }
}

/// `A ⋊ B` with multiplication `(a₁,b₁)(a₂,b₂) = (a₁^{b₂}a₂, b₁b₂)`.
///
/// The pair `(a, b)` is the element `b·a`. It is realised on the points
/// `A ⊔ Ω_B`, acting by `x ↦ x^b·a` on `A` and through `b` on `Ω_B`.
pub struct SemidirectProduct {
    pub group: Arc<FiniteGroup>,
    pub action: GroupAction,
    pairs: Vec<(u32, u32)>,
    index: Vec<u32>,
}

impl SemidirectProduct {
    pub fn new(action: &GroupAction, limits: &Limits) -> Result<Self> {
        let a = action.module().clone();
        let b = action.actor().clone();
        let (na, nb) = (a.order(), b.order());
        if (na as u64) * (nb as u64) > limits.max_elements as u64 {
            return Err(Error::cap("group order", limits.max_elements as u64));
        }
        let perm_of = |x: usize, y: usize| -> Perm {
            let by = b.perm(y);
            let mut images: Vec<u32> = (0..na).map(|p| a.mul(action.apply(y, p), x) as u32).collect();
            images.extend(by.images().iter().map(|&w| w + na as u32));
            Perm::from_images_unchecked(images)
        };
        let mut gens: Vec<Perm> = a.generators().iter().map(|&x| perm_of(x, 0)).collect();
        gens.extend(b.generators().iter().map(|&y| perm_of(0, y)));
        let group = FiniteGroup::close(&gens, limits)?;
        if group.order() != na * nb {
            return Err(Error::InvalidAction("semidirect product has the wrong order".into()));
        }
        let mut pairs = vec![(0, 0); na * nb];
        let mut index = vec![0; na * nb];
        for x in 0..na {
            for y in 0..nb {
                let z = group.index_of(&perm_of(x, y)).expect("pair in product");
                pairs[z] = (x as u32, y as u32);
                index[x * nb + y] = z as u32;
            }
        }
        Ok(SemidirectProduct { group, action: action.clone(), pairs, index })
    }

    pub fn kernel_group(&self) -> &Arc<FiniteGroup> {
        self.action.module()
    }

    pub fn top(&self) -> &Arc<FiniteGroup> {
        self.action.actor()
    }

    /// `(a, b)` with `z = b·a`.
    pub fn pair(&self, z: usize) -> (usize, usize) {
        let (x, y) = self.pairs[z];
        (x as usize, y as usize)
    }

    pub fn element(&self, a: usize, b: usize) -> usize {
        self.index[a * self.top().order() + b] as usize
    }

    /// The projection `α: A⋊B → B`.
    pub fn alpha(&self) -> GroupHom {
        let map = (0..self.group.order()).map(|z| self.pair(z).1).collect();
        GroupHom::from_map(&self.group, self.top(), map).expect("projection is a homomorphism")
    }

    /// The section `β: B → A⋊B`, `b ↦ (1, b)`.
    pub fn beta(&self) -> GroupHom {
        let map = (0..self.top().order()).map(|b| self.element(0, b)).collect();
        GroupHom::from_map(self.top(), &self.group, map).expect("section is a homomorphism")
    }

    pub fn kernel_embedding(&self) -> GroupHom {
        let map = (0..self.kernel_group().order()).map(|a| self.element(a, 0)).collect();
        GroupHom::from_map(self.kernel_group(), &self.group, map).expect("kernel embedding")
    }

    pub fn split_extension(&self) -> SplitExtension {
        SplitExtension::new(self.alpha(), self.beta()).expect("semidirect product splits")
    }
}

/// A split epimorphism `α: E → B` with section `β`, and the fibres of `α`.
#[derive(Clone)]
pub struct SplitExtension {
    alpha: GroupHom,
    beta: GroupHom,
    kernel: Subgroup,
    fibers: Vec<Vec<usize>>,
}

impl std::fmt::Debug for SplitExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SplitExtension")
            .field("total_order", &self.total().order())
            .field("kernel_order", &self.kernel.order())
            .finish()
    }
}

impl SplitExtension {
    pub fn new(alpha: GroupHom, beta: GroupHom) -> Result<Self> {
        if !Arc::ptr_eq(alpha.target(), beta.source()) || !Arc::ptr_eq(alpha.source(), beta.target()) {
            return Err(Error::ParentMismatch);
        }
        let quotient = alpha.target();
        if (0..quotient.order()).any(|b| alpha.apply(beta.apply(b)) != b) {
            return Err(Error::Precondition("β is not a section of α".into()));
        }
        let mut fibers = vec![Vec::new(); quotient.order()];
        for z in 0..alpha.source().order() {
            fibers[alpha.apply(z)].push(z);
        }
        let kernel = alpha.kernel();
        Ok(SplitExtension { alpha, beta, kernel, fibers })
    }

    pub fn total(&self) -> &Arc<FiniteGroup> {
        self.alpha.source()
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        self.alpha.target()
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// `α⁻¹(b)`, sorted.
    pub fn fiber(&self, b: usize) -> &[usize] {
        &self.fibers[b]
    }
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::super::{conjugacy_classes, find_isomorphism};
    use super::*;

    #[test]
    fn spec_examples() {
        let lim = Limits::default();
        let (c3, c2) = (cyclic(3), cyclic(2));
        let triv = SemidirectProduct::new(&GroupAction::trivial(&c2, &c3), &lim).unwrap();
        assert_eq!(triv.group.order(), 6);
        assert!(triv.group.is_abelian());
        let inv = SemidirectProduct::new(&GroupAction::inversion(&c2, &c3).unwrap(), &lim).unwrap();
        assert!(!inv.group.is_abelian());
        assert!(find_isomorphism(&inv.group, &symmetric(3)).is_some());
        let s3 = symmetric(3);
        let over_trivial = SemidirectProduct::new(&GroupAction::trivial(&s3, &trivial()), &lim).unwrap();
        let alpha = over_trivial.alpha();
        assert!(alpha.is_injective() && alpha.is_surjective());
    }

    #[test]
    fn multiplication_convention() {
        let lim = Limits::default();
        let act = GroupAction::inversion(&cyclic(2), &cyclic(3)).unwrap();
        let sd = SemidirectProduct::new(&act, &lim).unwrap();
        let (a, b) = (sd.kernel_group().clone(), sd.top().clone());
        for z1 in 0..6 {
            for z2 in 0..6 {
                let (a1, b1) = sd.pair(z1);
                let (a2, b2) = sd.pair(z2);
                let expect = sd.element(a.mul(act.apply(b2, a1), a2), b.mul(b1, b2));
                assert_eq!(sd.group.mul(z1, z2), expect);
            }
        }
        assert!(sd.alpha().verify_pairwise());
        assert!(sd.beta().verify_pairwise());
        // (a, b) = b·a
        for z in 0..6 {
            let (x, y) = sd.pair(z);
            let prod = sd.group.mul(sd.beta().apply(y), sd.kernel_embedding().apply(x));
            assert_eq!(prod, z);
        }
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let lim = Limits::default();
        let groups = [cyclic(2), cyclic(3), cyclic(4), symmetric(3), dihedral(4)];
        for a in &groups {
            for b in &groups {
                if a.order() * b.order() > 24 {
                    continue;
                }
                let sd = SemidirectProduct::new(&GroupAction::trivial(b, a), &lim).unwrap();
                let dp = direct_product(a, b, &lim).unwrap();
                assert!(find_isomorphism(&sd.group, &dp.group).is_some());
                assert_eq!(conjugacy_classes(&sd.group).len(), conjugacy_classes(&dp.group).len());
            }
        }
    }

    #[test]
    fn direct_product_projections() {
        let lim = Limits::default();
        let dp = direct_product(&cyclic(2), &symmetric(3), &lim).unwrap();
        assert_eq!(dp.group.order(), 12);
        assert_eq!(dp.project_left().kernel().order(), 6);
        assert_eq!(dp.embed_right().then(&dp.project_right()).unwrap(), GroupHom::identity(&dp.right));
    }
}
