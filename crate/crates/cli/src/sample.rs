//! Seeded random split embedding problems.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use surfgrp::embedding::Fsep;
use surfgrp::fingroup::{all_actions, FiniteGroup, GroupAction, Limits, SemidirectProduct};
use surfgrp::{Error, Result, SurfaceAssignment};

use crate::expr::GroupExpr;

const QUOTIENTS: [&str; 6] = ["C1", "C2", "C3", "C4", "product(C2, C2)", "S3"];
const KERNELS: [&str; 5] = ["C2", "C3", "C4", "product(C2, C2)", "S3"];

pub struct Sample {
    pub b: String,
    pub a: String,
    pub action: GroupAction,
    pub product: SemidirectProduct,
    pub fsep: Fsep,
}

/// Describes an action as an [`crate::ActionExpr`] string.
pub fn describe_action(action: &GroupAction) -> String {
    if action.is_trivial() {
        return "trivial".into();
    }
    let m = action.module();
    let rows: Vec<String> = action
        .generator_table()
        .iter()
        .map(|row| format!("[{}]", row.iter().map(|&x| m.word_string(x)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{{{}}}", rows.join(", "))
}

/// A uniformly random representation `Π_g → b` onto `b`: random pairs, with
/// the last pair drawn among those closing the relator.
pub fn random_epimorphism<R: Rng>(rng: &mut R, b: &Arc<FiniteGroup>, genus: usize, tries: usize) -> Result<SurfaceAssignment> {
    let n = b.order();
    let mut closing: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            closing[b.comm(x, y)].push((x, y));
        }
    }
    for _ in 0..tries {
        let mut images = Vec::with_capacity(2 * genus);
        let mut acc = b.identity();
        for _ in 1..genus {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            acc = b.mul(acc, b.comm(x, y));
            images.extend([x, y]);
        }
        let Some(&(x, y)) = closing[b.inv(acc)].choose(rng) else { continue };
        images.extend([x, y]);
        let asg = SurfaceAssignment::new(b, images)?;
        if asg.is_surjective() {
            return Ok(asg);
        }
    }
    Err(Error::Precondition(format!("no epimorphism found in {tries} tries")))
}

/// `|A ⋊ B| ≤ max_order`, genus in `1..=max_genus`, any action.
pub fn random_fsep<R: Rng>(rng: &mut R, max_order: usize, max_genus: usize, limits: &Limits) -> Result<Sample> {
    let groups = |names: &[&str]| -> Result<Vec<(String, Arc<FiniteGroup>)>> {
        names
            .iter()
            .map(|s| Ok((s.to_string(), s.parse::<GroupExpr>()?.build(limits)?)))
            .collect()
    };
    let bs = groups(&QUOTIENTS)?;
    let as_ = groups(&KERNELS)?;
    let pairs: Vec<(usize, usize)> = (0..bs.len())
        .flat_map(|i| (0..as_.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| bs[i].1.order() * as_[j].1.order() <= max_order)
        .collect();
    loop {
        let &(i, j) = pairs.choose(rng).ok_or_else(|| Error::Precondition("no group pair fits".into()))?;
        let (b, a) = (&bs[i].1, &as_[j].1);
        let genus = rng.gen_range(1..=max_genus);
        let Ok(mu) = random_epimorphism(rng, b, genus, 64) else { continue };
        let actions = all_actions(b, a, limits)?;
        let action = actions.choose(rng).expect("the trivial action exists").clone();
        let product = SemidirectProduct::new(&action, limits)?;
        let fsep = Fsep::from_extension(mu, product.split_extension())?;
        return Ok(Sample { b: bs[i].0.clone(), a: as_[j].0.clone(), action, product, fsep });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_reproducible() {
        let lim = Limits::default();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| {
                    let s = random_fsep(&mut rng, 12, 4, &lim).unwrap();
                    assert!(s.fsep.total().order() <= 12);
                    assert!(s.fsep.mu().is_surjective());
                    (s.b, s.a, describe_action(&s.action), s.fsep.mu().images().to_vec())
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn described_actions_parse_back() {
        let lim = Limits::default();
        let b = "C2".parse::<GroupExpr>().unwrap().build(&lim).unwrap();
        let a = "C4".parse::<GroupExpr>().unwrap().build(&lim).unwrap();
        for act in all_actions(&b, &a, &lim).unwrap() {
            let text = describe_action(&act);
            let back: crate::ActionExpr = text.parse().unwrap();
            let rebuilt = back.build(&b, &a).unwrap();
            assert_eq!(rebuilt.generator_table(), act.generator_table());
        }
    }
}
