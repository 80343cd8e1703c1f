use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use f1g_core::f1::{
    are_isomorphic, base_change, base_change_map, diagonal_smash, diagonal_smash_map,
    extension_property_check, pushout, ExtensionDiagram, FiniteModule, ModuleHom, MonoidHom,
    PointedMonoid,
};
use f1g_core::gtheory::{g0_presentation, DEFAULT_ENUMERATION_CAP};
use f1g_core::instances::{
    all_monoid_homs, random_module, random_split_cofibration, small_monoids,
};
use f1g_core::{named_group, BurnsideRing, Error};

fn ring(name: &str) -> BurnsideRing {
    BurnsideRing::new(Arc::new(named_group(name).unwrap())).unwrap()
}

fn identity_diagram(s: &FiniteModule, t: &FiniteModule) -> ExtensionDiagram {
    let (b, left, _) = s.wedge(t).unwrap();
    let top = left.clone();
    let (q, _) = top.cofiber().unwrap();
    ExtensionDiagram {
        top: top.clone(),
        bottom: top,
        left: ModuleHom::identity(s),
        middle: ModuleHom::identity(&b),
        right: ModuleHom::identity(&q),
    }
}

#[test]
fn extension_property_edge_cases() {
    let r = ring("C3");
    let s = r.coset_space(0).unwrap();
    let t = r.coset_space(1).unwrap();
    assert!(extension_property_check(&identity_diagram(&s, &t)).unwrap());

    let mut broken = identity_diagram(&s, &t);
    broken.middle = ModuleHom::new(
        broken.middle.source().clone(),
        broken.middle.target().clone(),
        vec![0; broken.middle.source().size()],
    )
    .unwrap();
    assert!(extension_property_check(&broken).is_err());

    let idem = PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], None).unwrap();
    let free = FiniteModule::free(&idem, 1);
    assert_eq!(
        extension_property_check(&identity_diagram(&free, &free)),
        Err(Error::NotGroupMonoid)
    );
}

#[test]
fn coproduct_and_product_sizes_over_f1() {
    let f1 = PointedMonoid::f1();
    for n in 0..5 {
        for m in 0..5 {
            let s = FiniteModule::trivial(&f1, n).unwrap();
            let t = FiniteModule::trivial(&f1, m).unwrap();
            assert_eq!(s.wedge(&t).unwrap().0.size(), n + m + 1);
            assert_eq!(diagonal_smash(&s, &t).unwrap().size(), n * m + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonal_smash_is_symmetric_monoidal(name in prop::sample::select(&["C2", "C3", "S3", "V4"][..]), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || r.realize(&r.random_effective_bounded(&mut rng, 4)).unwrap();
        let (s, t, u) = (pick(), pick(), pick());
        let point = r.realize(&r.one()).unwrap();
        prop_assert!(are_isomorphic(&diagonal_smash(&s, &point).unwrap(), &s).unwrap());
        prop_assert!(are_isomorphic(&diagonal_smash(&s, &t).unwrap(), &diagonal_smash(&t, &s).unwrap()).unwrap());
        let left = diagonal_smash(&diagonal_smash(&s, &t).unwrap(), &u).unwrap();
        let right = diagonal_smash(&s, &diagonal_smash(&t, &u).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&left, &right).unwrap());
    }

    #[test]
    fn base_change_is_pseudofunctorial(seed in any::<u64>()) {
        let monoids = small_monoids();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (
            monoids.choose(&mut rng).unwrap(),
            monoids.choose(&mut rng).unwrap(),
            monoids.choose(&mut rng).unwrap(),
        );
        let (ab, bc) = (all_monoid_homs(a, b), all_monoid_homs(b, c));
        prop_assume!(!ab.is_empty() && !bc.is_empty());
        let alpha = ab.choose(&mut rng).unwrap();
        let beta = bc.choose(&mut rng).unwrap();
        let s = random_module(&mut rng, a, 6).unwrap();
        let composite = base_change(&alpha.then(beta).unwrap(), &s).unwrap();
        let stepwise = base_change(beta, &base_change(alpha, &s).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&composite, &stepwise).unwrap());
        prop_assert!(are_isomorphic(&base_change(&MonoidHom::identity(a), &s).unwrap(), &s).unwrap());
    }

    #[test]
    fn base_change_preserves_zero_and_cofibrations(seed in any::<u64>()) {
        let monoids = small_monoids();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = monoids.choose(&mut rng).unwrap();
        let n = monoids.choose(&mut rng).unwrap();
        let homs = all_monoid_homs(m, n);
        prop_assume!(!homs.is_empty());
        let alpha = homs.choose(&mut rng).unwrap();
        prop_assert_eq!(base_change(alpha, &FiniteModule::zero(m)).unwrap().size(), 1);
        let a = random_module(&mut rng, m, 3).unwrap();
        let c = random_module(&mut rng, m, 3).unwrap();
        let f = random_split_cofibration(&mut rng, &a, &c).unwrap();
        prop_assert!(base_change_map(alpha, &f).unwrap().is_cofibration().unwrap());
    }

    /// For cofibrations `A -> A'`, `B -> B'` of G-sets the map
    /// `A' ^ B  u_{A ^ B}  A ^ B' -> A' ^ B'` is a cofibration.
    #[test]
    fn diagonal_smash_is_biexact(name in prop::sample::select(&["C2", "C3", "S3"][..]), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || r.realize(&r.random_effective_bounded(&mut rng, 3)).unwrap();
        let (a, p, b, q) = (pick(), pick(), pick(), pick());
        let f = random_split_cofibration(&mut rng, &a, &p).unwrap();
        let g = random_split_cofibration(&mut rng, &b, &q).unwrap();
        let f_b = diagonal_smash_map(&f, &ModuleHom::identity(&b)).unwrap();
        let a_g = diagonal_smash_map(&ModuleHom::identity(&a), &g).unwrap();
        let po = pushout(&f_b, &a_g).unwrap();
        let target = diagonal_smash(f.target(), g.target()).unwrap();
        let ap_g = diagonal_smash_map(&ModuleHom::identity(f.target()), &g).unwrap();
        let f_bp = diagonal_smash_map(&f, &ModuleHom::identity(g.target())).unwrap();
        let mut map = vec![0usize; po.module.size()];
        for y in 0..f_b.target().size() {
            map[po.first_leg.apply(y)] = ap_g.apply(y);
        }
        for z in 0..a_g.target().size() {
            map[po.second_leg.apply(z)] = f_bp.apply(z);
        }
        let canonical = ModuleHom::new(po.module.clone(), target, map).unwrap();
        prop_assert!(canonical.is_cofibration().unwrap());
    }
}

#[test]
fn g0_rank_is_monotone_in_the_bound() {
    for name in ["C1", "C2", "C3", "S3"] {
        let g = Arc::new(named_group(name).unwrap());
        let m = PointedMonoid::group_monoid(&g);
        let ranks: Vec<usize> = (1..=g.order() + 3)
            .map(|b| {
                g0_presentation(&m, b, DEFAULT_ENUMERATION_CAP)
                    .unwrap()
                    .report
                    .free_rank
            })
            .collect();
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{name}: {ranks:?}");
    }
    let idem = PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], None).unwrap();
    let ranks: Vec<usize> = (1..=4)
        .map(|b| {
            g0_presentation(&idem, b, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .report
                .free_rank
        })
        .collect();
    assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{ranks:?}");
}
