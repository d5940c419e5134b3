use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use surfgrp::cosetenum::{abelianization_invariants, reidemeister_schreier, todd_coxeter_by_hom};
use surfgrp::fingroup::named::{cyclic, dihedral, symmetric};
use surfgrp::fingroup::{all_subgroups, product_set, FiniteGroup, Limits};
use surfgrp::surface::enumerate_representations;
use surfgrp::{Perm, Subgroup, SurfaceAssignment, SurfacePresentation};

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn s4() -> &'static Arc<FiniteGroup> {
    static G: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    G.get_or_init(|| symmetric(4))
}

fn targets() -> &'static [Arc<FiniteGroup>] {
    static T: OnceLock<Vec<Arc<FiniteGroup>>> = OnceLock::new();
    T.get_or_init(|| vec![cyclic(2), cyclic(3), cyclic(4), symmetric(3), dihedral(4)])
}

fn genus3_s3() -> &'static [SurfaceAssignment] {
    static R: OnceLock<Vec<SurfaceAssignment>> = OnceLock::new();
    R.get_or_init(|| enumerate_representations(3, &symmetric(3), false, &Limits::default()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_composition_is_a_group_law(p in arb_perm(7), q in arb_perm(7), r in arb_perm(7)) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
        for i in 0..7 {
            prop_assert_eq!(p.compose(&q).apply(i), q.apply(p.apply(i)));
        }
    }

    #[test]
    fn lagrange_and_product_formula(hs in prop::collection::vec(0usize..24, 0..3), ks in prop::collection::vec(0usize..24, 0..3)) {
        let g = s4();
        let h = Subgroup::generated(g, &hs);
        let k = Subgroup::generated(g, &ks);
        prop_assert_eq!(g.order() % h.order(), 0);
        let meet = h.intersection(&k).unwrap();
        let hk = product_set(&h, &k).unwrap();
        prop_assert_eq!(hk.members.len() * meet.order(), h.order() * k.order());
        // K ∩ H ≤ H ≤ G
        prop_assert!(meet.is_subgroup_of(&h).unwrap());
        prop_assert_eq!(meet.index(), h.index() * (h.order() / meet.order()));
        let join = h.join(&k).unwrap();
        prop_assert!(h.is_subgroup_of(&join).unwrap() && k.is_subgroup_of(&join).unwrap());
    }

    #[test]
    fn collecting_pairs_keeps_relator_and_image(pick in 0usize..10_000, moves in prop::collection::vec(2usize..=3, 1..5)) {
        let all = genus3_s3();
        let mut asg = all[pick % all.len()].clone();
        let image = asg.generated_subgroup();
        for j in moves {
            asg = asg.collect_pair_to_front(j).unwrap();
            prop_assert_eq!(asg.relator_value(), asg.target().identity());
            prop_assert_eq!(asg.generated_subgroup(), image.clone());
        }
    }

    #[test]
    fn finite_index_subgroups_are_surface_groups(t in 0usize..5, genus in 2usize..=3, raw in prop::collection::vec(0usize..8, 6), pick in 0usize..64) {
        let target = &targets()[t];
        let mut images: Vec<usize> = raw.iter().take(2 * genus).map(|&x| x % target.order()).collect();
        // make x1, x2 hit generators so the map is onto; y_i carry the random part
        for (i, &s) in target.generators().iter().enumerate().take(genus) {
            images[2 * i] = s;
        }
        let asg = match SurfaceAssignment::new(target, images) {
            Ok(a) if a.is_surjective() => a,
            _ => return Ok(()),
        };
        let subs: Vec<Subgroup> = all_subgroups(target, &Limits::default()).unwrap().into_iter().filter(|h| h.index() <= 6).collect();
        let h = &subs[pick % subs.len()];
        let table = todd_coxeter_by_hom(&asg, h, &Limits::default()).unwrap();
        let n = h.index();
        prop_assert_eq!(table.index(), n);
        prop_assert!(table.is_transitive());
        let pres = SurfacePresentation::new(genus).unwrap();
        let sp = reidemeister_schreier(&table, &[pres.relator()]).unwrap();
        let g2 = n * (genus - 1) + 1;
        prop_assert_eq!(sp.deficiency(), 2 * g2 as i64 - 1);
        prop_assert_eq!(sp.predicted_genus(), g2);
        let ab = abelianization_invariants(&sp);
        prop_assert!(ab.torsion.is_empty());
        prop_assert_eq!(ab.free_rank, 2 * g2);
    }
}
