//! Twisted wreath products `A ≀_{G₀} G = Ind_{G₀}^G(A) ⋊ G`.
//!
//! `Ind` is the group of maps `f: G → A` with `f(στ) = f(σ)^τ` for
//! `τ ∈ G₀`, stored by their values on a fixed transversal `σ₁,…,σ_m` of
//! the left cosets `σG₀`. `G` acts by `(f^σ)(σ') = f(σσ')` and products
//! follow `(f₁,σ₁)(f₂,σ₂) = (f₁^{σ₂}f₂, σ₁σ₂)`.

mod induce;

use std::sync::Arc;

use crate::fingroup::{FiniteGroup, GroupAction, GroupHom, Limits, SemidirectProduct, Subgroup};
use crate::perm::Perm;
use crate::{Error, Result};

pub use induce::{induce_problem, InducedProblem, NData, Restriction};

/// An element `(f, σ)`, with `f` given by its values on the transversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElem {
    pub values: Vec<usize>,
    pub top: usize,
}

pub struct TwistedWreath {
    module: Arc<FiniteGroup>,
    top: Arc<FiniteGroup>,
    g0: Subgroup,
    /// `G₀` acting on `A`; its actor is `G₀` as a standalone group.
    action: GroupAction,
    /// standalone `G₀` index → `G` index, and back
    g0_embed: Vec<usize>,
    g0_index: Vec<Option<usize>>,
    transversal: Vec<usize>,
    /// `x = σ_i·τ`: `coset[x] = i`, `tau[x] = τ` (as a `G` element)
    coset: Vec<usize>,
    tau: Vec<usize>,
    group: Arc<FiniteGroup>,
    code_to_index: Vec<u32>,
    index_to_code: Vec<u64>,
    shapiro_target: SemidirectProduct,
}

impl std::fmt::Debug for TwistedWreath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwistedWreath")
            .field("module_order", &self.module.order())
            .field("top_order", &self.top.order())
            .field("base_order", &self.g0.order())
            .field("order", &self.group.order())
            .finish()
    }
}

impl TwistedWreath {
    /// Uses the transversal of shortest-word coset representatives.
    pub fn new(g0: &Subgroup, action: &GroupAction, limits: &Limits) -> Result<Self> {
        let g = g0.parent();
        let (ids, _) = g0.left_cosets();
        let m = g0.index();
        let mut reps: Vec<Option<usize>> = vec![None; m];
        let mut order: Vec<usize> = (0..g.order()).collect();
        order.sort_by_key(|&x| (g.word(x).len(), x));
        for x in order {
            reps[ids[x]].get_or_insert(x);
        }
        let mut reps: Vec<usize> = reps.into_iter().map(|r| r.expect("every coset has a member")).collect();
        reps.sort_by_key(|&x| (g.word(x).len(), x));
        Self::with_transversal(g0, action, reps, limits)
    }

    /// Uses the given left-coset representatives, in the given order.
    pub fn with_transversal(g0: &Subgroup, action: &GroupAction, transversal: Vec<usize>, limits: &Limits) -> Result<Self> {
        let g = g0.parent().clone();
        let module = action.module().clone();
        let actor = action.actor();
        if actor.order() != g0.order() {
            return Err(Error::InvalidAction("the acting group is not G₀".into()));
        }
        let g0_embed: Vec<usize> = actor
            .elements()
            .iter()
            .map(|p| g.index_of(p).filter(|&x| g0.contains(x)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAction("the acting group is not G₀".into()))?;
        let mut g0_index = vec![None; g.order()];
        for (i, &x) in g0_embed.iter().enumerate() {
            g0_index[x] = Some(i);
        }

        let m = g0.index();
        let (ids, _) = g0.left_cosets();
        if transversal.len() != m {
            return Err(Error::Precondition(format!("expected {m} coset representatives")));
        }
        let mut hit = vec![false; m];
        for &s in &transversal {
            if s >= g.order() || std::mem::replace(&mut hit[ids[s]], true) {
                return Err(Error::Precondition("representatives must meet every left coset once".into()));
            }
        }
        let slot_of_coset: Vec<usize> = {
            let mut v = vec![0; m];
            for (i, &s) in transversal.iter().enumerate() {
                v[ids[s]] = i;
            }
            v
        };
        let coset: Vec<usize> = (0..g.order()).map(|x| slot_of_coset[ids[x]]).collect();
        let tau: Vec<usize> = (0..g.order()).map(|x| g.mul(g.inv(transversal[coset[x]]), x)).collect();

        let na = module.order() as u128;
        let total = na.pow(m as u32) * g.order() as u128;
        if total > limits.max_elements as u128 {
            return Err(Error::cap("group order", limits.max_elements as u64));
        }

        let shapiro_target = SemidirectProduct::new(action, limits)?;
        let mut w = TwistedWreath {
            module,
            top: g.clone(),
            g0: g0.clone(),
            action: action.clone(),
            g0_embed,
            g0_index,
            transversal,
            coset,
            tau,
            group: g.clone(),
            code_to_index: Vec::new(),
            index_to_code: Vec::new(),
            shapiro_target,
        };
        w.realize(total as usize, limits)?;
        Ok(w)
    }

    /// Builds the permutation group on `m` copies of the points of `A ⋊ G₀`
    /// together with the points of `G`.
    fn realize(&mut self, total: usize, limits: &Limits) -> Result<()> {
        let m = self.transversal.len();
        let a = &self.module;
        let mut gens = Vec::new();
        for &x in a.generators() {
            let mut values = vec![a.identity(); m];
            values[0] = x;
            gens.push(self.perm_of(&WreathElem { values, top: self.top.identity() }));
        }
        for &s in self.top.generators() {
            gens.push(self.perm_of(&WreathElem { values: vec![a.identity(); m], top: s }));
        }
        let group = FiniteGroup::close(&gens, limits)?;
        if group.order() != total {
            return Err(Error::Defect(format!("wreath realisation has order {} not {}", group.order(), total)));
        }
        let mut code_to_index = vec![0u32; total];
        let mut index_to_code = vec![0u64; total];
        for code in 0..total as u64 {
            let e = self.decode_code(code);
            let z = group.index_of(&self.perm_of(&e)).expect("element of the wreath product");
            code_to_index[code as usize] = z as u32;
            index_to_code[z] = code;
        }
        self.group = group;
        self.code_to_index = code_to_index;
        self.index_to_code = index_to_code;
        Ok(())
    }

    fn code(&self, e: &WreathElem) -> u64 {
        let na = self.module.order() as u64;
        let f = e.values.iter().rev().fold(0u64, |acc, &v| acc * na + v as u64);
        f * self.top.order() as u64 + e.top as u64
    }

    fn decode_code(&self, code: u64) -> WreathElem {
        let na = self.module.order() as u64;
        let top = (code % self.top.order() as u64) as usize;
        let mut f = code / self.top.order() as u64;
        let values = (0..self.transversal.len())
            .map(|_| {
                let v = (f % na) as usize;
                f /= na;
                v
            })
            .collect();
        WreathElem { values, top }
    }

    /// `(i, x)·(f, σ) = (j, x·(f(σ_j), τ))` where `σ⁻¹σ_i = σ_j τ⁻¹`.
    fn perm_of(&self, e: &WreathElem) -> Perm {
        let g = &self.top;
        let a = &self.module;
        let g0g = self.action.actor();
        let block = a.order() + g0g.degree();
        let m = self.transversal.len();
        let mut images = vec![0u32; m * block + g.degree()];
        let sinv = g.inv(e.top);
        for i in 0..m {
            let y = g.mul(sinv, self.transversal[i]);
            let j = self.coset[y];
            let tau = self.g0_index[g.inv(self.tau[y])].expect("τ in G₀");
            let val = e.values[j];
            for x in 0..a.order() {
                images[i * block + x] = (j * block + a.mul(self.action.apply(tau, x), val)) as u32;
            }
            for (w, &p) in g0g.perm(tau).images().iter().enumerate() {
                images[i * block + a.order() + w] = (j * block + a.order()) as u32 + p;
            }
        }
        for (w, &p) in g.perm(e.top).images().iter().enumerate() {
            images[m * block + w] = (m * block) as u32 + p;
        }
        Perm::from_images_unchecked(images)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self) -> &Arc<FiniteGroup> {
        &self.module
    }

    pub fn top(&self) -> &Arc<FiniteGroup> {
        &self.top
    }

    pub fn base(&self) -> &Subgroup {
        &self.g0
    }

    pub fn base_action(&self) -> &GroupAction {
        &self.action
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// `A ⋊ G₀`, the target of the Shapiro map.
    pub fn shapiro_target(&self) -> &SemidirectProduct {
        &self.shapiro_target
    }

    /// Standalone `G₀` index of a `G` element, if it lies in `G₀`.
    pub fn base_index(&self, x: usize) -> Option<usize> {
        self.g0_index[x]
    }

    pub fn base_element(&self, i: usize) -> usize {
        self.g0_embed[i]
    }

    pub fn element(&self, e: &WreathElem) -> Result<usize> {
        if e.values.len() != self.transversal.len()
            || e.values.iter().any(|&v| v >= self.module.order())
            || e.top >= self.top.order()
        {
            return Err(Error::Precondition("malformed wreath element".into()));
        }
        Ok(self.code_to_index[self.code(e) as usize] as usize)
    }

    pub fn decode(&self, z: usize) -> WreathElem {
        self.decode_code(self.index_to_code[z])
    }

    /// `f(x) = f(σ_i)^τ` for `x = σ_i τ`.
    pub fn eval(&self, values: &[usize], x: usize) -> usize {
        let tau = self.g0_index[self.tau[x]].expect("τ in G₀");
        self.action.apply(tau, values[self.coset[x]])
    }

    /// `f^σ`, i.e. `σ' ↦ f(σσ')`.
    pub fn act(&self, values: &[usize], sigma: usize) -> Vec<usize> {
        self.transversal.iter().map(|&s| self.eval(values, self.top.mul(sigma, s))).collect()
    }

    /// `(f₁,σ₁)(f₂,σ₂) = (f₁^{σ₂}f₂, σ₁σ₂)`
    pub fn mul_structured(&self, x: &WreathElem, y: &WreathElem) -> WreathElem {
        let moved = self.act(&x.values, y.top);
        let values = moved.iter().zip(&y.values).map(|(&p, &q)| self.module.mul(p, q)).collect();
        WreathElem { values, top: self.top.mul(x.top, y.top) }
    }

    /// The projection `α` onto `G`.
    pub fn alpha(&self) -> GroupHom {
        let map = (0..self.group.order()).map(|z| self.decode(z).top).collect();
        GroupHom::from_map(&self.group, &self.top, map).expect("α is a homomorphism")
    }

    /// `σ ↦ (1, σ)`
    pub fn section(&self) -> GroupHom {
        let one = vec![self.module.identity(); self.transversal.len()];
        let map = (0..self.top.order())
            .map(|s| self.element(&WreathElem { values: one.clone(), top: s }).expect("valid"))
            .collect();
        GroupHom::from_map(&self.top, &self.group, map).expect("section is a homomorphism")
    }

    /// `Ind ⋊ G₀ = α⁻¹(G₀)`, the domain of the Shapiro map.
    pub fn shapiro_domain(&self) -> Subgroup {
        self.alpha().preimage(&self.g0).expect("same parent")
    }

    /// `Sh((f, σ)) = f(1)·σ ∈ A ⋊ G₀`.
    pub fn shapiro(&self, z: usize) -> Result<usize> {
        let e = self.decode(z);
        let s = self
            .g0_index[e.top]
            .ok_or_else(|| Error::Precondition("G-part lies outside G₀".into()))?;
        Ok(self.shapiro_target.element(self.eval(&e.values, self.top.identity()), s))
    }

    /// The isomorphism onto `other`, built on another transversal, that
    /// keeps the underlying function `f` and `σ`.
    pub fn canonical_isomorphism(&self, other: &TwistedWreath) -> Result<GroupHom> {
        if !Arc::ptr_eq(&self.top, &other.top) || self.g0 != other.g0 {
            return Err(Error::ParentMismatch);
        }
        let map = (0..self.group.order())
            .map(|z| {
                let e = self.decode(z);
                let values = other.transversal.iter().map(|&s| self.eval(&e.values, s)).collect();
                other.element(&WreathElem { values, top: e.top })
            })
            .collect::<Result<Vec<_>>>()?;
        GroupHom::from_map(&self.group, &other.group, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::named::*;
    use crate::fingroup::{all_actions, find_isomorphism};

    fn standalone(g0: &Subgroup) -> Arc<FiniteGroup> {
        g0.as_group(&Limits::default()).unwrap().0
    }

    fn trivial_wreath(a: &Arc<FiniteGroup>, g0: &Subgroup) -> TwistedWreath {
        let h = standalone(g0);
        TwistedWreath::new(g0, &GroupAction::trivial(&h, a), &Limits::default()).unwrap()
    }

    #[test]
    fn orders() {
        let c2 = cyclic(2);
        let g = cyclic(2);
        let w = trivial_wreath(&c2, &Subgroup::trivial(&g));
        assert_eq!(w.group().order(), 8);
        let c3 = cyclic(3);
        let w = trivial_wreath(&c2, &Subgroup::trivial(&c3));
        assert_eq!(w.group().order(), 24);
        assert_eq!(w.alpha().kernel().order(), 8);
    }

    #[test]
    fn base_equal_to_top_is_semidirect() {
        let lim = Limits::default();
        let s3 = symmetric(3);
        let whole = Subgroup::whole(&s3);
        let h = standalone(&whole);
        for act in all_actions(&h, &cyclic(3), &lim).unwrap() {
            let w = TwistedWreath::new(&whole, &act, &lim).unwrap();
            assert!(find_isomorphism(w.group(), &w.shapiro_target().group).is_some());
        }
    }

    #[test]
    fn act_examples() {
        let c2 = cyclic(2);
        let c3 = cyclic(3);
        let w = trivial_wreath(&c2, &Subgroup::trivial(&c3));
        let f = vec![1, 0, 0];
        assert_eq!(w.act(&f, 0), f);
        assert_eq!(w.act(&[0, 0, 0], 2), vec![0, 0, 0]);
        let s = c3.generators()[0];
        let shifted = w.act(&f, s);
        assert_eq!(shifted.iter().filter(|&&v| v == 1).count(), 1);
        assert_ne!(shifted, f);
        // (f^σ)^σ' = f^{σσ'}
        for s1 in 0..3 {
            for s2 in 0..3 {
                assert_eq!(w.act(&w.act(&f, s1), s2), w.act(&f, c3.mul(s1, s2)));
            }
        }
    }

    #[test]
    fn structured_product_matches_group() {
        let lim = Limits::default();
        let s3 = symmetric(3);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let g0 = Subgroup::generated(&s3, &[t]);
        let h = standalone(&g0);
        for act in all_actions(&h, &cyclic(3), &lim).unwrap() {
            let w = TwistedWreath::new(&g0, &act, &lim).unwrap();
            assert_eq!(w.group().order(), 27 * 6);
            for x in (0..w.group().order()).step_by(7) {
                for y in (0..w.group().order()).step_by(5) {
                    let p = w.mul_structured(&w.decode(x), &w.decode(y));
                    assert_eq!(w.element(&p).unwrap(), w.group().mul(x, y));
                }
            }
        }
    }

    #[test]
    fn shapiro_examples() {
        let c2 = cyclic(2);
        let g = cyclic(2);
        let w = trivial_wreath(&c2, &Subgroup::trivial(&g));
        let dom = w.shapiro_domain();
        assert_eq!(dom.order(), 4);
        for &u in dom.members() {
            for &v in dom.members() {
                let uv = w.group().mul(u, v);
                let lhs = w.shapiro(uv).unwrap();
                let rhs = w.shapiro_target().group.mul(w.shapiro(u).unwrap(), w.shapiro(v).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        let one = w.element(&WreathElem { values: vec![1, 0], top: 0 }).unwrap();
        assert_eq!(w.shapiro(one).unwrap(), w.shapiro_target().element(1, 0));
        let outside = w.element(&WreathElem { values: vec![0, 0], top: 1 }).unwrap();
        assert!(w.shapiro(outside).is_err());
    }

    #[test]
    fn transversal_independence() {
        let lim = Limits::default();
        let d4 = dihedral(4);
        let refl = (0..8).find(|&x| d4.element_order(x) == 2 && !Subgroup::generated(&d4, &[x]).is_normal()).unwrap();
        let g0 = Subgroup::generated(&d4, &[refl]);
        let h = standalone(&g0);
        for act in all_actions(&h, &cyclic(3), &lim).unwrap() {
            let w1 = TwistedWreath::new(&g0, &act, &lim).unwrap();
            let (_, reps) = g0.left_cosets();
            let other: Vec<usize> = reps.iter().rev().map(|&r| d4.mul(r, refl)).collect();
            let w2 = TwistedWreath::with_transversal(&g0, &act, other, &lim).unwrap();
            let iso = w1.canonical_isomorphism(&w2).unwrap();
            assert!(iso.is_injective());
            for z in (0..w1.group().order()).step_by(11) {
                let e1 = w1.decode(z);
                let e2 = w2.decode(iso.apply(z));
                for x in 0..8 {
                    assert_eq!(w1.eval(&e1.values, x), w2.eval(&e2.values, x));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let lim = Limits::default();
        let c3 = cyclic(3);
        let g0 = Subgroup::trivial(&c3);
        let wrong = GroupAction::trivial(&cyclic(2), &cyclic(2));
        assert!(TwistedWreath::new(&g0, &wrong, &lim).is_err());
        let h = standalone(&g0);
        let act = GroupAction::trivial(&h, &cyclic(2));
        assert!(TwistedWreath::with_transversal(&g0, &act, vec![0, 0, 1], &lim).is_err());
        let tight = Limits::default().with_elements(10);
        assert!(TwistedWreath::new(&g0, &act, &tight).unwrap_err().is_cap());
    }
}
