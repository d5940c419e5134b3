//! Surface-group presentations and their finite representations.
//!
//! `Π_g = ⟨x₁,…,x_g, y₁,…,y_g | ∏[xᵢ,yᵢ]⟩` with `[x,y] = x⁻¹y⁻¹xy` and
//! `x^y = y⁻¹xy`. A representation into a finite group is a
//! [`SurfaceAssignment`]: the images `(a₁,b₁,…,a_g,b_g)` in interleaved order.

mod search;
mod word;

use std::sync::Arc;

use crate::fingroup::{FiniteGroup, GroupHom, Limits, Subgroup};
use crate::perm::Perm;
use crate::{Error, Result};

pub use search::{count_representations, enumerate_representations, FiberSearch};
pub use word::{surface_label, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfacePresentation {
    genus: usize,
}

impl SurfacePresentation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Precondition("genus must be at least 1".into()));
        }
        Ok(SurfacePresentation { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus
    }

    pub fn labels(&self) -> Vec<String> {
        (0..2 * self.genus).map(surface_label).collect()
    }

    /// `∏ᵢ [xᵢ, yᵢ]`
    pub fn relator(&self) -> Word {
        (1..=self.genus).fold(Word::identity(), |w, i| w.mul(&Word::comm(&Word::x(i), &Word::y(i))))
    }

    pub fn parse_word(&self, src: &str) -> Result<Word> {
        Word::parse(src, self.genus)
    }
}

/// Images `(a₁,b₁,…,a_g,b_g)` of the surface generators, satisfying the relator.
#[derive(Clone)]
pub struct SurfaceAssignment {
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl std::fmt::Debug for SurfaceAssignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfaceAssignment").field("genus", &self.genus()).field("images", &self.images).finish()
    }
}

impl PartialEq for SurfaceAssignment {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.target, &other.target) && self.images == other.images
    }
}

impl Eq for SurfaceAssignment {}

/// `∏ [a_i, b_i]` over interleaved pairs.
pub fn relator_value(group: &FiniteGroup, images: &[usize]) -> usize {
    images.chunks(2).fold(group.identity(), |acc, p| group.mul(acc, group.comm(p[0], p[1])))
}

impl SurfaceAssignment {
    pub fn new(target: &Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.is_empty() || images.len() % 2 == 1 {
            return Err(Error::Precondition("an assignment needs 2g images with g ≥ 1".into()));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order()) {
            return Err(Error::IndexOutOfRange { index: bad, min: 0, max: target.order() - 1 });
        }
        if relator_value(target, &images) != target.identity() {
            return Err(Error::Precondition("images do not satisfy the surface relator".into()));
        }
        Ok(SurfaceAssignment { target: target.clone(), images })
    }

    pub(crate) fn new_unchecked(target: &Arc<FiniteGroup>, images: Vec<usize>) -> Self {
        debug_assert_eq!(relator_value(target, &images), target.identity());
        SurfaceAssignment { target: target.clone(), images }
    }

    /// The all-identity assignment.
    pub fn trivial(target: &Arc<FiniteGroup>, genus: usize) -> Self {
        SurfaceAssignment { target: target.clone(), images: vec![target.identity(); 2 * genus] }
    }

    pub fn genus(&self) -> usize {
        self.images.len() / 2
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `x_i`, 1-based.
    pub fn a(&self, i: usize) -> usize {
        self.images[2 * (i - 1)]
    }

    /// Image of `y_i`, 1-based.
    pub fn b(&self, i: usize) -> usize {
        self.images[2 * (i - 1) + 1]
    }

    /// `[a_i, b_i]`
    pub fn pair_commutator(&self, i: usize) -> usize {
        self.target.comm(self.a(i), self.b(i))
    }

    pub fn relator_value(&self) -> usize {
        relator_value(&self.target, &self.images)
    }

    pub fn evaluate(&self, w: &Word) -> Result<usize> {
        let mut acc = self.target.identity();
        for l in w.letters() {
            let g = l.gen as usize;
            let x = *self
                .images
                .get(g)
                .ok_or_else(|| Error::UnknownLabel(surface_label(g)))?;
            acc = self.target.mul(acc, if l.inv { self.target.inv(x) } else { x });
        }
        Ok(acc)
    }

    pub fn generated_subgroup(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.images)
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generates(&self.images)
    }

    /// Post-composition with a homomorphism of the target.
    pub fn then(&self, hom: &GroupHom) -> Result<SurfaceAssignment> {
        if !Arc::ptr_eq(hom.source(), &self.target) {
            return Err(Error::ParentMismatch);
        }
        Ok(SurfaceAssignment { target: hom.target().clone(), images: self.images.iter().map(|&x| hom.apply(x)).collect() })
    }

    fn check_pair_index(&self, j: usize, min: usize) -> Result<()> {
        if j < min || j > self.genus() {
            return Err(Error::IndexOutOfRange { index: j, min, max: self.genus() });
        }
        Ok(())
    }

    /// Moves pair `j` to position `k ≤ j`, conjugating pairs `k..j-1` by
    /// `c = [a_j, b_j]`; this uses `P·[a_j,b_j] = [a_j,b_j]·P^c`.
    pub fn collect_pair_to(&self, j: usize, k: usize) -> Result<SurfaceAssignment> {
        self.check_pair_index(j, 1)?;
        self.check_pair_index(k, 1)?;
        if k > j {
            return Err(Error::IndexOutOfRange { index: k, min: 1, max: j });
        }
        let g = &self.target;
        let c = self.pair_commutator(j);
        let mut images = self.images.clone();
        images[2 * (k - 1)] = self.a(j);
        images[2 * (k - 1) + 1] = self.b(j);
        for i in k..j {
            images[2 * i] = g.conj(self.a(i), c);
            images[2 * i + 1] = g.conj(self.b(i), c);
        }
        Ok(SurfaceAssignment { target: self.target.clone(), images })
    }

    /// Inverse of [`SurfaceAssignment::collect_pair_to`] with the same `j, k`.
    pub fn uncollect_pair(&self, j: usize, k: usize) -> Result<SurfaceAssignment> {
        self.check_pair_index(j, 1)?;
        self.check_pair_index(k, 1)?;
        if k > j {
            return Err(Error::IndexOutOfRange { index: k, min: 1, max: j });
        }
        let g = &self.target;
        let c_inv = g.inv(self.pair_commutator(k));
        let mut images = self.images.clone();
        for i in k..j {
            images[2 * (i - 1)] = g.conj(self.a(i + 1), c_inv);
            images[2 * (i - 1) + 1] = g.conj(self.b(i + 1), c_inv);
        }
        images[2 * (j - 1)] = self.a(k);
        images[2 * (j - 1) + 1] = self.b(k);
        Ok(SurfaceAssignment { target: self.target.clone(), images })
    }

    pub fn collect_pair_to_front(&self, j: usize) -> Result<SurfaceAssignment> {
        self.check_pair_index(j, 2)?;
        self.collect_pair_to(j, 1)
    }
}

/// The image of `Π_g` in the direct product of several targets.
pub struct JointImage {
    pub group: Arc<FiniteGroup>,
    /// Generator `i` of `group` is the image of surface generator `i`.
    pub assignment: SurfaceAssignment,
    pub projections: Vec<GroupHom>,
}

pub fn joint_image(asgs: &[SurfaceAssignment], limits: &Limits) -> Result<JointImage> {
    let first = asgs.first().ok_or_else(|| Error::Precondition("no assignments given".into()))?;
    let genus = first.genus();
    if let Some(bad) = asgs.iter().find(|a| a.genus() != genus) {
        return Err(Error::Precondition(format!("genus mismatch: {} vs {}", genus, bad.genus())));
    }
    let perms: Vec<Perm> = (0..2 * genus)
        .map(|i| {
            asgs.iter()
                .map(|a| a.target.perm(a.images[i]).clone())
                .reduce(|p, q| p.disjoint_sum(&q))
                .expect("nonempty")
        })
        .collect();
    let group = FiniteGroup::close(&perms, limits)?;
    let assignment = SurfaceAssignment::new_unchecked(&group, group.generators().to_vec());
    let mut projections = Vec::new();
    let mut offset = 0;
    for a in asgs {
        let d = a.target.degree();
        let map = group
            .elements()
            .iter()
            .map(|p| {
                let part: Vec<u32> = p.images()[offset..offset + d].iter().map(|&x| x - offset as u32).collect();
                a.target.index_of(&Perm::from_images_unchecked(part)).expect("component lies in target")
            })
            .collect();
        projections.push(GroupHom::from_map(&group, &a.target, map)?);
        offset += d;
    }
    Ok(JointImage { group, assignment, projections })
}

impl SurfaceAssignment {
    /// The image group with generator `i` equal to the image of surface generator `i`.
    pub fn image_group(&self, limits: &Limits) -> Result<JointImage> {
        joint_image(std::slice::from_ref(self), limits)
    }
}
