//! Finite-level diamond criteria.
//!
//! A [`DiamondInstance`] is the data `G = Π/L` with subgroups `G₀ = NL/L`
//! and normal `Gᵢ = NᵢL/L`, optionally with a module `Ā` for `G₀`.
//! Factoring conditions are taken over the finite quotient `Π/𝒩`, modelled
//! by the joint image of the maps defining `N₁`, `N₂` and `L`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::fingroup::{
    enumerate_homs_with_candidates, normal_subgroups, FiniteGroup, GroupAction, GroupHom, Limits, Subgroup,
};
use crate::surface::{joint_image, SurfaceAssignment};
use crate::wreath::{NData, TwistedWreath};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct DiamondInstance {
    g0: Subgroup,
    g1: Subgroup,
    g2: Subgroup,
    /// `G₀` (standalone) acting on `Ā`.
    module: Option<GroupAction>,
}

impl DiamondInstance {
    pub fn new(g0: Subgroup, g1: Subgroup, g2: Subgroup) -> Result<Self> {
        let g = g0.parent();
        if !Arc::ptr_eq(g, g1.parent()) || !Arc::ptr_eq(g, g2.parent()) {
            return Err(Error::ParentMismatch);
        }
        if !g1.is_normal() || !g2.is_normal() {
            return Err(Error::NotNormal);
        }
        Ok(DiamondInstance { g0, g1, g2, module: None })
    }

    /// Attaches `Ā`; the acting group must be `G₀` on the points of `G`.
    pub fn with_module(mut self, action: GroupAction) -> Result<Self> {
        let g = self.g0.parent();
        let actor = action.actor();
        let ok = actor.order() == self.g0.order()
            && actor.elements().iter().all(|p| g.index_of(p).is_some_and(|x| self.g0.contains(x)));
        if !ok {
            return Err(Error::InvalidAction("the acting group is not G₀".into()));
        }
        self.module = Some(action);
        Ok(self)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.g0.parent()
    }

    pub fn g0(&self) -> &Subgroup {
        &self.g0
    }

    pub fn g1(&self) -> &Subgroup {
        &self.g1
    }

    pub fn g2(&self) -> &Subgroup {
        &self.g2
    }

    pub fn module(&self) -> Option<&GroupAction> {
        self.module.as_ref()
    }

    /// `Ā ≀_{G₀} G`
    pub fn wreath(&self, limits: &Limits) -> Result<TwistedWreath> {
        let action = self.module.as_ref().ok_or_else(|| Error::Precondition("no module attached".into()))?;
        TwistedWreath::new(&self.g0, action, limits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModLReport {
    /// `G₁ ≰ G₀` and `G₂ ≰ G₀`
    pub not_contained: bool,
    /// `(G:G₀)`
    pub index: usize,
    /// `(G₁G₀:G₀)`
    pub g1_index: usize,
}

impl ModLReport {
    pub fn index_ok(&self) -> bool {
        self.index > 2
    }

    pub fn g1_index_ok(&self) -> bool {
        self.g1_index > 2
    }

    pub fn holds(&self) -> bool {
        self.not_contained && self.index_ok() && self.g1_index_ok()
    }
}

pub fn check_modl_conditions(d: &DiamondInstance) -> ModLReport {
    let inside = |h: &Subgroup| h.members().iter().all(|&x| d.g0.contains(x));
    let g1g0 = d.g1.join(&d.g0).expect("same parent");
    ModLReport {
        not_contained: !inside(&d.g1) && !inside(&d.g2),
        index: d.g0.index(),
        g1_index: g1g0.order() / d.g0.order(),
    }
}

/// `N₁ = ker n1`, `N₂ = ker n2`, `L = ker l` with `l` onto `G = Π/L`, and
/// `N = σ⁻¹(H)` carrying `μ₁ = π∘σ`.
pub struct Ambient {
    pub n: NData,
    pub n1: SurfaceAssignment,
    pub n2: SurfaceAssignment,
    pub l: SurfaceAssignment,
}

#[derive(Debug, Clone)]
pub struct IndexReport {
    /// `L ∩ N ≤ ker μ₁`
    pub kernel_condition: bool,
    /// `[N₁NL : NL]`
    pub n1_index: usize,
    /// `[N₂NL : NL]`
    pub n2_index: usize,
    /// `[Π : NL]`
    pub nl_index: usize,
    /// `N₁ ∩ N₂ ≤ N`
    pub meet_inside: bool,
    /// `[N₁ : N₁∩N]` and `[N₂ : N₂∩N]`
    pub n1_over: usize,
    pub n2_over: usize,
    pub mod_l: DiamondInstance,
}

impl IndexReport {
    pub fn conditions(&self) -> [bool; 4] {
        [self.kernel_condition, self.n1_index >= 3, self.n2_index >= 2, self.nl_index >= 3]
    }

    pub fn holds(&self) -> bool {
        self.conditions().iter().all(|&b| b)
    }

    pub fn diamond_hypotheses(&self) -> bool {
        self.meet_inside && self.n1_over >= 3 && self.n2_over >= 2
    }
}

/// Indices computed in the joint image of `l, n1, n2, σ`, which every
/// subgroup involved contains the kernel of.
pub fn check_index_conditions(amb: &Ambient, limits: &Limits) -> Result<IndexReport> {
    if !amb.l.is_surjective() {
        return Err(Error::Precondition("the L-defining assignment must be onto its target".into()));
    }
    if !Arc::ptr_eq(amb.n.h.parent(), amb.n.sigma.target()) {
        return Err(Error::ParentMismatch);
    }
    let j = joint_image(&[amb.l.clone(), amb.n1.clone(), amb.n2.clone(), amb.n.sigma.clone()], limits)?;
    let p = &j.projections;
    let l = p[0].kernel();
    let n1 = p[1].kernel();
    let n2 = p[2].kernel();
    let n = p[3].preimage(&amb.n.h)?;

    let target = amb.n.pi.target();
    let mut kernel_condition = true;
    for &z in l.intersection(&n)?.members() {
        let q = amb.n.sigma.target().perm(p[3].apply(z));
        let src = amb.n.pi.source();
        let i = src.index_of(q).ok_or_else(|| Error::Precondition("π is not defined on H".into()))?;
        if amb.n.pi.apply(i) != target.identity() {
            kernel_condition = false;
            break;
        }
    }

    let nl = n.join(&l)?;
    let idx = |a: &Subgroup| -> Result<usize> { Ok(a.join(&nl)?.order() / nl.order()) };
    let meet = n1.intersection(&n2)?;
    let over = |a: &Subgroup| -> Result<usize> { Ok(a.order() / a.intersection(&n)?.order()) };

    let mod_l = DiamondInstance::new(n.image(&p[0])?, n1.image(&p[0])?, n2.image(&p[0])?)?;
    Ok(IndexReport {
        kernel_condition,
        n1_index: idx(&n1)?,
        n2_index: idx(&n2)?,
        nl_index: nl.index(),
        meet_inside: meet.is_subgroup_of(&n)?,
        n1_over: over(&n1)?,
        n2_over: over(&n2)?,
        mod_l,
    })
}

fn support(w: &TwistedWreath, z: usize) -> usize {
    let id = w.module().identity();
    w.decode(z).values.iter().filter(|&&v| v != id).count()
}

/// An `h₁ ∈ H₁` with `α(h₁) = 1` and `[h₁,h₂] ≠ 1`, preferring small support.
/// Running out of candidates under valid hypotheses is reported as a defect.
pub fn commutator_witness(w: &TwistedWreath, h1: &Subgroup, h2: usize) -> Result<usize> {
    WitnessSearch::new(w, h1)?.witness(h2)
}

/// [`commutator_witness`] for a fixed `H₁`, checking its hypotheses once.
pub struct WitnessSearch<'a> {
    w: &'a TwistedWreath,
    alpha: GroupHom,
    /// `H₁ ∩ ker α` by support size
    candidates: Vec<usize>,
}

impl<'a> WitnessSearch<'a> {
    pub fn new(w: &'a TwistedWreath, h1: &Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(h1.parent(), w.group()) {
            return Err(Error::ParentMismatch);
        }
        if w.module().order() == 1 {
            return Err(Error::Hypothesis("the module is trivial".into()));
        }
        if !h1.is_normal() {
            return Err(Error::Hypothesis("H₁ is not normal".into()));
        }
        let alpha = w.alpha();
        let g0 = w.base();
        let over = h1.image(&alpha)?.join(g0)?.order() / g0.order();
        if over <= 2 {
            return Err(Error::Hypothesis(format!("(α(H₁)G₀ : G₀) = {over} is not > 2")));
        }
        let id = w.top().identity();
        let mut candidates: Vec<usize> = h1.members().iter().copied().filter(|&z| alpha.apply(z) == id).collect();
        candidates.sort_by_cached_key(|&z| (support(w, z), z));
        Ok(WitnessSearch { w, alpha, candidates })
    }

    pub fn witness(&self, h2: usize) -> Result<usize> {
        let grp = self.w.group();
        if h2 >= grp.order() {
            return Err(Error::IndexOutOfRange { index: h2, min: 0, max: grp.order() - 1 });
        }
        if self.w.base().contains(self.alpha.apply(h2)) {
            return Err(Error::Hypothesis("α(h₂) lies in G₀".into()));
        }
        self.candidates
            .iter()
            .copied()
            .find(|&z| grp.comm(z, h2) != grp.identity())
            .ok_or_else(|| Error::Defect("no commutator witness under valid hypotheses".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    /// positions in [`ObstructionReport::h1_candidates`] / `h2_candidates`
    pub h1_subgroup: usize,
    pub h2_subgroup: usize,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub wreath_order: usize,
    pub normal_subgroups: usize,
    /// normal subgroups `H` of `W` with `α(H) = G₁`, resp. `G₂`
    pub h1_candidates: Vec<Subgroup>,
    pub h2_candidates: Vec<Subgroup>,
    pub witnesses: Vec<PairWitness>,
}

impl ObstructionReport {
    pub fn obstructed(&self) -> bool {
        self.witnesses.len() == self.h1_candidates.len() * self.h2_candidates.len()
    }

    pub fn vacuous(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn obstruction_scan(d: &DiamondInstance, limits: &Limits) -> Result<ObstructionReport> {
    let action = d.module.as_ref().ok_or_else(|| Error::Hypothesis("no module attached".into()))?;
    if action.module().order() == 1 {
        return Err(Error::Hypothesis("the module is trivial".into()));
    }
    if !check_modl_conditions(d).holds() {
        return Err(Error::Hypothesis("the mod-L conditions fail".into()));
    }
    let w = d.wreath(limits)?;
    let normals = normal_subgroups(w.group(), limits)?;
    let alpha = w.alpha();
    let mut h1s = Vec::new();
    let mut h2s = Vec::new();
    for h in &normals {
        let img = h.image(&alpha)?;
        if img.members() == d.g1.members() {
            h1s.push(h.clone());
        }
        if img.members() == d.g2.members() {
            h2s.push(h.clone());
        }
    }
    let pairs: Vec<(usize, usize)> = (0..h1s.len()).flat_map(|i| (0..h2s.len()).map(move |j| (i, j))).collect();
    let searches = h1s.iter().map(|h| WitnessSearch::new(&w, h)).collect::<Result<Vec<_>>>()?;
    let witnesses = pairs
        .par_iter()
        .map(|&(i, j)| {
            let h2 = *h2s[j]
                .members()
                .iter()
                .find(|&&z| !d.g0.contains(alpha.apply(z)))
                .ok_or_else(|| Error::Defect("α(H₂) ≤ G₀ despite G₂ ≰ G₀".into()))?;
            let h1 = searches[i].witness(h2)?;
            Ok(PairWitness { h1_subgroup: i, h2_subgroup: j, h1, h2 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ObstructionReport {
        wreath_order: w.group().order(),
        normal_subgroups: normals.len(),
        h1_candidates: h1s,
        h2_candidates: h2s,
        witnesses,
    })
}

/// Proper solutions `ψ: Π → W` of `(μ, α)` that factor through `q: Π → Q`.
pub fn constrained_epi_search(
    w: &TwistedWreath,
    mu: &SurfaceAssignment,
    q: &SurfaceAssignment,
    limits: &Limits,
) -> Result<Vec<SurfaceAssignment>> {
    if !Arc::ptr_eq(mu.target(), w.top()) {
        return Err(Error::ParentMismatch);
    }
    let j = joint_image(&[mu.clone(), q.clone()], limits)?;
    if !j.projections[1].is_injective() {
        return Err(Error::Precondition("μ does not factor through Q".into()));
    }
    let alpha = w.alpha();
    let mut fibers = vec![Vec::new(); w.top().order()];
    for z in 0..w.group().order() {
        fibers[alpha.apply(z)].push(z);
    }
    let cands: Vec<Vec<usize>> = mu.images().iter().map(|&b| fibers[b].clone()).collect();
    let homs = enumerate_homs_with_candidates(&j.group, w.group(), &cands, true, limits.max_search)?;
    homs.iter().map(|h| SurfaceAssignment::new(w.group(), h.generator_images())).collect()
}

/// Least integer `r` with `e^{ry} ≥ 2a^{3y}y³` for all real `y ≥ 2`.
pub fn minimal_r(a_order: u64) -> u64 {
    assert!(a_order >= 1);
    let ln2 = std::f64::consts::LN_2;
    let y = ((3.0 - ln2) / 3.0).exp().max(2.0);
    let peak = (ln2 + 3.0 * y.ln()) / y;
    (3.0 * (a_order as f64).ln() + peak).ceil() as u64
}

/// `e^{ry} ≥ 2a^{3y}y³`, compared in logarithms.
pub fn r_inequality_holds(r: u64, a_order: u64, y: f64) -> bool {
    r as f64 * y >= std::f64::consts::LN_2 + 3.0 * y * (a_order as f64).ln() + 3.0 * y.ln()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `s = r·[Π:H]!·[Π:D]`
pub fn prep_s(r: u64, index_h: u64, index_d: u64) -> BigUint {
    BigUint::from(r) * factorial(index_h) * index_d
}

/// `s·k!`, the threshold `f([Π:E])` has to reach when `[E:E₁] = k`.
pub fn factorial_threshold(s: &BigUint, k: u64) -> BigUint {
    s * factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{BruteOutcome, Fsep, SolutionKind, Want};
    use crate::fingroup::named::*;
    use crate::fingroup::direct_product;
    use crate::wreath::induce_problem;

    fn lim() -> Limits {
        Limits::default()
    }

    fn sub(g: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        Subgroup::generated(g, gens)
    }

    #[test]
    fn modl_examples() {
        let c3 = cyclic(3);
        let p = direct_product(&c3, &c3, &lim()).unwrap();
        let g = p.group.clone();
        let d = DiamondInstance::new(
            Subgroup::trivial(&g),
            sub(&g, &[p.element(1, 0)]),
            sub(&g, &[p.element(0, 1)]),
        )
        .unwrap();
        let r = check_modl_conditions(&d);
        assert!(r.not_contained && r.index_ok() && r.g1_index_ok());
        assert_eq!((r.index, r.g1_index), (9, 3));

        let c2 = cyclic(2);
        let d = DiamondInstance::new(Subgroup::trivial(&c2), Subgroup::whole(&c2), Subgroup::whole(&c2)).unwrap();
        let r = check_modl_conditions(&d);
        assert!(r.not_contained && !r.index_ok());

        let s3 = symmetric(3);
        let c = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let d = DiamondInstance::new(sub(&s3, &[c]), Subgroup::whole(&s3), Subgroup::whole(&s3)).unwrap();
        let r = check_modl_conditions(&d);
        assert!(r.not_contained && !r.g1_index_ok());
        assert_eq!(r.g1_index, 2);
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = symmetric(3);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = sub(&s3, &[t]);
        assert!(matches!(
            DiamondInstance::new(Subgroup::trivial(&s3), h.clone(), h),
            Err(Error::NotNormal)
        ));
    }

    fn on_c3(genus: usize, images: &[usize]) -> SurfaceAssignment {
        let mut v = images.to_vec();
        v.resize(2 * genus, 0);
        SurfaceAssignment::new(&cyclic(3), v).unwrap()
    }

    fn trivial_ndata(sigma: SurfaceAssignment, h: Subgroup) -> NData {
        let (hg, _) = h.as_group(&lim()).unwrap();
        let pi = GroupHom::trivial(&hg, &trivial());
        NData { sigma, h, pi }
    }

    /// `ρ₁ = (x₁ ↦ 1)`, `ρ₂ = (y₁ ↦ 1)`, `L = ker(x₁, y₁ ↦ 1)`, `N = N₁ ∩ N₂`.
    fn instance_one() -> Ambient {
        let r1 = on_c3(2, &[1]);
        let r2 = on_c3(2, &[0, 1]);
        let joint = joint_image(&[r1.clone(), r2.clone()], &lim()).unwrap();
        let sigma = joint.assignment.clone();
        let h = Subgroup::trivial(sigma.target());
        Ambient { n: trivial_ndata(sigma, h), n1: r1, n2: r2, l: on_c3(2, &[1, 1]) }
    }

    #[test]
    fn index_examples() {
        let amb = instance_one();
        let rep = check_index_conditions(&amb, &lim()).unwrap();
        assert!(rep.holds());
        assert!(rep.diamond_hypotheses());
        assert_eq!((rep.n1_index, rep.n2_index, rep.nl_index), (3, 3, 3));
        assert!(check_modl_conditions(&rep.mod_l).holds());

        let mut whole = instance_one();
        whole.n1 = on_c3(2, &[]);
        whole.n2 = on_c3(2, &[]);
        let c1 = trivial();
        whole.n = trivial_ndata(SurfaceAssignment::trivial(&c1, 2), Subgroup::whole(&c1));
        let rep = check_index_conditions(&whole, &lim()).unwrap();
        assert_eq!(rep.n1_index, 1);
        assert!(!rep.conditions()[1]);

        let mut lpi = instance_one();
        lpi.l = SurfaceAssignment::trivial(&trivial(), 2);
        let rep = check_index_conditions(&lpi, &lim()).unwrap();
        assert!(!rep.conditions()[3]);
    }

    #[test]
    fn soundness_chain_on_small_instances() {
        let vals = [[0usize, 0], [1, 0], [0, 1], [1, 1], [1, 2]];
        for a in &vals {
            for b in &vals {
                for c in &vals {
                    let r1 = on_c3(2, a);
                    let r2 = on_c3(2, b);
                    let l = on_c3(2, c);
                    if !l.is_surjective() {
                        continue;
                    }
                    let joint = joint_image(&[r1.clone(), r2.clone()], &lim()).unwrap();
                    let sigma = joint.assignment.clone();
                    let h = Subgroup::trivial(sigma.target());
                    let amb = Ambient { n: trivial_ndata(sigma, h), n1: r1, n2: r2, l };
                    let rep = check_index_conditions(&amb, &lim()).unwrap();
                    if rep.holds() {
                        assert!(check_modl_conditions(&rep.mod_l).holds());
                    }
                }
            }
        }
    }

    fn c2_wreath_c3() -> TwistedWreath {
        let c3 = cyclic(3);
        let g0 = Subgroup::trivial(&c3);
        let (g0g, _) = g0.as_group(&lim()).unwrap();
        TwistedWreath::new(&g0, &GroupAction::trivial(&g0g, &cyclic(2)), &lim()).unwrap()
    }

    #[test]
    fn witness_in_c2_wr_c3() {
        let w = c2_wreath_c3();
        let whole = Subgroup::whole(w.group());
        let alpha = w.alpha();
        for h2 in 0..w.group().order() {
            if alpha.apply(h2) == 0 {
                assert!(matches!(commutator_witness(&w, &whole, h2), Err(Error::Hypothesis(_))));
                continue;
            }
            let h1 = commutator_witness(&w, &whole, h2).unwrap();
            assert_eq!(alpha.apply(h1), 0);
            assert_eq!(support(&w, h1), 1);
            assert_ne!(w.group().comm(h1, h2), 0);
        }
    }

    #[test]
    fn witness_needs_nonabelian_setting() {
        let c2 = cyclic(2);
        let g0 = Subgroup::whole(&c2);
        let (g0g, _) = g0.as_group(&lim()).unwrap();
        let w = TwistedWreath::new(&g0, &GroupAction::trivial(&g0g, &cyclic(3)), &lim()).unwrap();
        assert!(w.group().is_abelian());
        let whole = Subgroup::whole(w.group());
        for h2 in 0..w.group().order() {
            assert!(matches!(commutator_witness(&w, &whole, h2), Err(Error::Hypothesis(_))));
        }
    }

    fn instance_one_diamond() -> (Ambient, DiamondInstance) {
        let amb = instance_one();
        let rep = check_index_conditions(&amb, &lim()).unwrap();
        let (g0g, _) = rep.mod_l.g0().as_group(&lim()).unwrap();
        let d = rep.mod_l.clone().with_module(GroupAction::trivial(&g0g, &cyclic(2))).unwrap();
        (amb, d)
    }

    #[test]
    fn obstruction_and_search_agree() {
        let (amb, d) = instance_one_diamond();
        let rep = obstruction_scan(&d, &lim()).unwrap();
        assert_eq!(rep.wreath_order, 24);
        assert!(!rep.h1_candidates.is_empty() && !rep.vacuous());
        assert!(rep.obstructed());

        // Q = Π/(N₁ ∩ N₂ ∩ L)
        let w = d.wreath(&lim()).unwrap();
        let mu = SurfaceAssignment::new(w.top(), amb.l.images().to_vec()).unwrap();
        let q = joint_image(&[amb.n1.clone(), amb.n2.clone(), amb.l.clone()], &lim()).unwrap().assignment;
        assert!(constrained_epi_search(&w, &mu, &q, &lim()).unwrap().is_empty());
    }

    #[test]
    fn trivial_module_guard() {
        let (_, d) = instance_one_diamond();
        let (g0g, _) = d.g0().as_group(&lim()).unwrap();
        let d = d.with_module(GroupAction::trivial(&g0g, &trivial())).unwrap();
        assert!(matches!(obstruction_scan(&d, &lim()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn search_with_trivial_module_lifts_mu() {
        let c3 = cyclic(3);
        let g0 = Subgroup::trivial(&c3);
        let (g0g, _) = g0.as_group(&lim()).unwrap();
        let w = TwistedWreath::new(&g0, &GroupAction::trivial(&g0g, &trivial()), &lim()).unwrap();
        let mu = SurfaceAssignment::new(w.top(), vec![1, 2, 0, 1]).unwrap();
        let sols = constrained_epi_search(&w, &mu, &mu, &lim()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].then(&w.alpha()).unwrap().images(), mu.images());
    }

    #[test]
    fn solvable_when_contained() {
        // G = G₀ = C₂ breaks G₁ ≰ G₀; the problem over Q = C₂ × C₂ is solvable
        let c2 = cyclic(2);
        let g0 = Subgroup::whole(&c2);
        let d = DiamondInstance::new(g0.clone(), g0.clone(), g0.clone()).unwrap();
        assert!(!check_modl_conditions(&d).not_contained);
        let (g0g, _) = g0.as_group(&lim()).unwrap();
        let d = d.with_module(GroupAction::trivial(&g0g, &cyclic(2))).unwrap();
        assert!(matches!(obstruction_scan(&d, &lim()), Err(Error::Hypothesis(_))));
        let w = d.wreath(&lim()).unwrap();
        let mu = SurfaceAssignment::new(w.top(), vec![1, 0, 0, 0]).unwrap();
        let q = joint_image(
            &[mu.clone(), SurfaceAssignment::new(&c2, vec![0, 1, 0, 0]).unwrap()],
            &lim(),
        )
        .unwrap()
        .assignment;
        let sols = constrained_epi_search(&w, &mu, &q, &lim()).unwrap();
        assert!(!sols.is_empty());
        let e = Fsep::from_extension(mu.clone(), crate::fingroup::SplitExtension::new(w.alpha(), w.section()).unwrap()).unwrap();
        for s in sols {
            assert_eq!(e.check(s).unwrap().kind, SolutionKind::Proper);
        }
    }

    #[test]
    fn pipeline_restricts_properly() {
        let (amb, _) = instance_one_diamond();
        let g = amb.l.target().clone();
        let mu = amb.l.clone();
        let ip = induce_problem(&mu, &amb.n, &GroupAction::trivial(amb.n.pi.target(), &cyclic(2)), &lim()).unwrap();
        assert!(Arc::ptr_eq(ip.fsep.quotient(), &g));
        assert_eq!(ip.wreath.group().order(), 24);
        let BruteOutcome::All(sols) = ip.fsep.brute_solve(Want::All, &lim()).unwrap() else { unreachable!() };
        assert!(!sols.is_empty());
        for s in &sols {
            let r = ip.restrict_solution(&s.psi).unwrap();
            assert!(r.proper && r.weak_preserved);
        }
    }

    #[test]
    fn diagonal_instance() {
        let r1 = on_c3(2, &[1]);
        let r2 = on_c3(2, &[0, 1]);
        let joint = joint_image(&[r1.clone(), r2.clone()], &lim()).unwrap();
        let lambda = joint.assignment.clone();
        let jg = joint.group.clone();
        let (p1, p2) = (&joint.projections[0], &joint.projections[1]);
        let diag: Vec<usize> = (0..jg.order()).filter(|&z| p1.apply(z) == p2.apply(z)).collect();
        let h = Subgroup::from_members(&jg, diag).unwrap();
        let (hg, embed) = h.as_group(&lim()).unwrap();
        let g1 = r1.target().clone();
        let pi = GroupHom::from_map(&hg, &g1, embed.iter().map(|&z| p1.apply(z)).collect()).unwrap();
        let amb = Ambient { n: NData { sigma: lambda.clone(), h, pi }, n1: r1, n2: r2, l: lambda.clone() };
        let rep = check_index_conditions(&amb, &lim()).unwrap();
        assert!(rep.holds() && rep.diamond_hypotheses());
        assert!(check_modl_conditions(&rep.mod_l).holds());

        let action = GroupAction::trivial(&g1, &cyclic(2));
        let ip = induce_problem(&lambda, &amb.n, &action, &lim()).unwrap();
        assert_eq!(ip.wreath.group().order(), 72);
        assert_eq!(ip.n_table.index(), 3);
        let BruteOutcome::All(sols) = ip.fsep.brute_solve(Want::All, &lim()).unwrap() else { unreachable!() };
        assert!(!sols.is_empty());
        for s in &sols {
            let r = ip.restrict_solution(&s.psi).unwrap();
            assert!(r.proper && r.weak_preserved);
        }

        let d = rep.mod_l.clone().with_module(ip.wreath.base_action().clone()).unwrap();
        let obs = obstruction_scan(&d, &lim()).unwrap();
        assert!(obs.obstructed());
        let q = joint_image(&[amb.n1.clone(), amb.n2.clone(), lambda.clone()], &lim()).unwrap().assignment;
        let w = d.wreath(&lim()).unwrap();
        let mu = SurfaceAssignment::new(w.top(), lambda.images().to_vec()).unwrap();
        assert!(constrained_epi_search(&w, &mu, &q, &lim()).unwrap().is_empty());
    }

    #[test]
    fn minimal_r_values() {
        assert_eq!(minimal_r(1), 2);
        assert_eq!(minimal_r(2), 4);
        for a in 1..=6u64 {
            let r = minimal_r(a);
            for k in 0..=980 {
                let y = 2.0 + k as f64 * 0.1;
                assert!(r_inequality_holds(r, a, y), "a={a} y={y}");
            }
            assert!((0..=980).any(|k| !r_inequality_holds(r - 1, a, 2.0 + k as f64 * 0.1)) || r == 0);
        }
    }

    #[test]
    fn big_helpers() {
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(prep_s(2, 3, 5), BigUint::from(60u32));
        assert_eq!(factorial_threshold(&BigUint::from(7u32), 4), BigUint::from(168u32));
    }
}
