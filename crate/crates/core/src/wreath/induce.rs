use std::sync::Arc;

use super::TwistedWreath;
use crate::cosetenum::{reidemeister_schreier, todd_coxeter_by_hom, CosetTable, SubgroupPresentation};
use crate::embedding::Fsep;
use crate::fingroup::{FiniteGroup, GroupAction, GroupHom, Limits, SemidirectProduct, SplitExtension, Subgroup};
use crate::surface::{joint_image, SurfaceAssignment, SurfacePresentation};
use crate::{Error, Result};

/// `N = σ⁻¹(H)` for an assignment `σ: Π_g → Q` and `H ≤ Q`, with
/// `μ₁ = π∘σ|_N` for a homomorphism `π: H → G₁`.
pub struct NData {
    pub sigma: SurfaceAssignment,
    pub h: Subgroup,
    /// Source: `H` as a standalone group on the same points as `Q`.
    pub pi: GroupHom,
}

impl NData {
    fn pi_at(&self, q: usize) -> Result<usize> {
        let p = self.sigma.target().perm(q);
        let i = self.pi.source().index_of(p).ok_or_else(|| Error::Precondition("π is not defined on this element".into()))?;
        Ok(self.pi.apply(i))
    }
}

/// The problem `(μ: Π → G, α: A ≀_{G₀} G → G)` induced from
/// `(μ₁: N → G₁, α₁: A ⋊ G₁ → G₁)`.
pub struct InducedProblem {
    pub fsep: Fsep,
    pub wreath: TwistedWreath,
    /// `G₀ = μ(N)`
    pub g0: Subgroup,
    /// `ν: G₀ → G₁` with `ν∘μ₀ = μ₁`; source is `G₀` standalone.
    pub nu: GroupHom,
    /// `ρ: A ⋊ G₀ → A ⋊ G₁`
    pub rho: GroupHom,
    pub target: SemidirectProduct,
    pub n_table: CosetTable,
    pub n_presentation: SubgroupPresentation,
    /// `μ₁` on the Schreier generators of `N`.
    pub mu1_images: Vec<usize>,
}

/// Result of pulling a solution back to `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    /// `ψ^{ind} = ρ∘Sh∘ψ|_N` on the Schreier generators of `N`.
    pub images: Vec<usize>,
    pub proper: bool,
    /// `α₁∘ψ^{ind} = μ₁` on every generator.
    pub weak_preserved: bool,
}

pub fn induce_problem(
    mu: &SurfaceAssignment,
    ndata: &NData,
    action: &GroupAction,
    limits: &Limits,
) -> Result<InducedProblem> {
    let g = mu.target();
    let g1 = action.actor();
    if !Arc::ptr_eq(ndata.pi.target(), g1) {
        return Err(Error::ParentMismatch);
    }
    if !Arc::ptr_eq(ndata.h.parent(), ndata.sigma.target()) {
        return Err(Error::ParentMismatch);
    }
    let joint = joint_image(&[mu.clone(), ndata.sigma.clone()], limits)?;
    let (pg, pq) = (&joint.projections[0], &joint.projections[1]);
    let jn = pq.preimage(&ndata.h)?;

    let mut nu_map: Vec<Option<usize>> = vec![None; g.order()];
    for &z in jn.members() {
        let x = pg.apply(z);
        let y = ndata.pi_at(pq.apply(z))?;
        match nu_map[x] {
            None => nu_map[x] = Some(y),
            Some(prev) if prev != y => {
                return Err(Error::NotWellDefined("L ∩ N is not contained in the kernel of μ₁".into()))
            }
            _ => {}
        }
    }
    let g0_members: Vec<usize> = (0..g.order()).filter(|&x| nu_map[x].is_some()).collect();
    let g0 = Subgroup::from_members(g, g0_members)?;
    let (g0g, embed) = g0.as_group(limits)?;
    let nu = GroupHom::from_map(&g0g, g1, embed.iter().map(|&x| nu_map[x].expect("in G₀")).collect())?;
    let base_action = action.pullback(&nu)?;

    let wreath = TwistedWreath::new(&g0, &base_action, limits)?;
    let ext = SplitExtension::new(wreath.alpha(), wreath.section())?;
    let fsep = Fsep::from_extension(mu.clone(), ext)?;

    let target = SemidirectProduct::new(action, limits)?;
    let src = wreath.shapiro_target();
    let rho_map = (0..src.group.order())
        .map(|z| {
            let (a, t) = src.pair(z);
            target.element(a, nu.apply(t))
        })
        .collect();
    let rho = GroupHom::from_map(&src.group, &target.group, rho_map)?;

    let n_table = todd_coxeter_by_hom(&ndata.sigma, &ndata.h, limits)?;
    let pres = SurfacePresentation::new(mu.genus())?;
    let n_presentation = reidemeister_schreier(&n_table, &[pres.relator()])?;
    let mut mu1_images = Vec::new();
    for w in &n_presentation.generators {
        let q = ndata.sigma.evaluate(w)?;
        if !ndata.h.contains(q) {
            return Err(Error::Defect("Schreier generator outside N".into()));
        }
        let m0 = mu.evaluate(w)?;
        let m1 = ndata.pi_at(q)?;
        let via_nu = nu.apply(g0g.index_of(g.perm(m0)).ok_or_else(|| Error::Defect("μ(N) ⊄ G₀".into()))?);
        if via_nu != m1 {
            return Err(Error::Defect("ν∘μ₀ ≠ μ₁ on a generator of N".into()));
        }
        mu1_images.push(m1);
    }

    Ok(InducedProblem { fsep, wreath, g0, nu, rho, target, n_table, n_presentation, mu1_images })
}

impl InducedProblem {
    pub fn g1(&self) -> &Arc<FiniteGroup> {
        self.target.top()
    }

    pub fn restrict_solution(&self, psi: &SurfaceAssignment) -> Result<Restriction> {
        let sol = self.fsep.check(psi.clone())?;
        let alpha1 = self.target.alpha();
        let mut images = Vec::new();
        for w in &self.n_presentation.generators {
            let v = psi.evaluate(w)?;
            let s = self
                .wreath
                .shapiro(v)
                .map_err(|_| Error::Precondition("a generator of N maps outside Ind ⋊ G₀".into()))?;
            images.push(self.rho.apply(s));
        }
        let weak_preserved = images.iter().zip(&self.mu1_images).all(|(&x, &m)| alpha1.apply(x) == m);
        let proper = sol.kind == crate::embedding::SolutionKind::Proper && self.target.group.generates(&images);
        Ok(Restriction { images, proper, weak_preserved })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{BruteOutcome, Want};
    use crate::fingroup::named::*;
    use crate::fingroup::find_isomorphism;

    fn identity_pi(h: &Subgroup, g1: &Arc<FiniteGroup>) -> GroupHom {
        let (hg, embed) = h.as_group(&Limits::default()).unwrap();
        let map = embed.iter().map(|&x| g1.index_of(h.parent().perm(x)).unwrap()).collect();
        GroupHom::from_map(&hg, g1, map).unwrap()
    }

    fn trivial_pi(h: &Subgroup, g1: &Arc<FiniteGroup>) -> GroupHom {
        let (hg, _) = h.as_group(&Limits::default()).unwrap();
        GroupHom::trivial(&hg, g1)
    }

    #[test]
    fn whole_group_is_the_original_problem() {
        let lim = Limits::default();
        let b = cyclic(3);
        let mu = SurfaceAssignment::new(&b, vec![1, 0, 0, 0]).unwrap();
        let nd = NData { sigma: mu.clone(), h: Subgroup::whole(&b), pi: identity_pi(&Subgroup::whole(&b), &b) };
        let act = GroupAction::trivial(&b, &cyclic(2));
        let ip = induce_problem(&mu, &nd, &act, &lim).unwrap();
        assert!(ip.g0.is_whole());
        assert_eq!(ip.n_table.index(), 1);
        assert!(find_isomorphism(ip.wreath.group(), &ip.target.group).is_some());
        let BruteOutcome::All(sols) = ip.fsep.brute_solve(Want::All, &lim).unwrap() else { unreachable!() };
        assert!(!sols.is_empty());
        for s in &sols {
            let r = ip.restrict_solution(&s.psi).unwrap();
            assert!(r.proper && r.weak_preserved);
        }
    }

    #[test]
    fn trivial_module() {
        let lim = Limits::default();
        let b = cyclic(2);
        let mu = SurfaceAssignment::new(&b, vec![1, 0, 0, 0]).unwrap();
        let t = Subgroup::trivial(&b);
        let g1 = trivial();
        let nd = NData { sigma: mu.clone(), h: t.clone(), pi: trivial_pi(&t, &g1) };
        let ip = induce_problem(&mu, &nd, &GroupAction::trivial(&g1, &trivial()), &lim).unwrap();
        assert_eq!(ip.fsep.kernel_order(), 1);
        let w = ip.fsep.weak_solution();
        let r = ip.restrict_solution(&w.psi).unwrap();
        assert!(r.proper && r.weak_preserved);
    }

    #[test]
    fn smallest_pipeline() {
        let lim = Limits::default();
        let b = cyclic(2);
        let mu = SurfaceAssignment::new(&b, vec![1, 0, 0, 0]).unwrap();
        let t = Subgroup::trivial(&b);
        let g1 = trivial();
        let nd = NData { sigma: mu.clone(), h: t.clone(), pi: trivial_pi(&t, &g1) };
        let ip = induce_problem(&mu, &nd, &GroupAction::trivial(&g1, &cyclic(2)), &lim).unwrap();
        assert_eq!(ip.wreath.group().order(), 8);
        assert_eq!(ip.n_table.index(), 2);
        let BruteOutcome::All(sols) = ip.fsep.brute_solve(Want::All, &lim).unwrap() else { unreachable!() };
        assert_eq!(sols.len() as u128, ip.fsep.count_proper(&lim).unwrap());
        assert!(!sols.is_empty());
        for s in &sols {
            let r = ip.restrict_solution(&s.psi).unwrap();
            assert!(r.weak_preserved);
            let direct = ip.target.group.generated_order(&r.images) == ip.target.group.order();
            assert_eq!(r.proper, direct);
        }
    }

    #[test]
    fn ill_defined_nu_is_rejected() {
        // N = Π but μ₁ does not factor through μ: L ∩ N ⊄ ker μ₁
        let lim = Limits::default();
        let b = cyclic(2);
        let mu = SurfaceAssignment::new(&b, vec![1, 0, 0, 0]).unwrap();
        let sigma = SurfaceAssignment::new(&b, vec![0, 1, 0, 0]).unwrap();
        let nd = NData { sigma, h: Subgroup::whole(&b), pi: identity_pi(&Subgroup::whole(&b), &b) };
        let res = induce_problem(&mu, &nd, &GroupAction::trivial(&b, &cyclic(2)), &lim);
        assert!(matches!(res, Err(Error::NotWellDefined(_))));
    }
}
