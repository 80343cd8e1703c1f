use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use f1g_core::f1::{are_isomorphic, diagonal_smash, PointedMonoid};
use f1g_core::group::LIBRARY_NAMES;
use f1g_core::instances::{random_hom, random_module, small_monoids};
use f1g_core::lambda::{universal_polynomial, Integers, LambdaOps, PolynomialKind};
use f1g_core::snf::cokernel;
use f1g_core::{named_group, BurnsideElement, BurnsideRing, FiniteGroup};

const SMALL: &[&str] = &["C1", "C2", "C3", "C4", "V4", "C6", "S3", "D4", "Q8"];

fn ring(name: &str) -> BurnsideRing {
    BurnsideRing::new(Arc::new(named_group(name).unwrap())).unwrap()
}

fn small_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SMALL)
}

fn element(r: &BurnsideRing, coeffs: &[i64]) -> BurnsideElement {
    BurnsideElement::new((0..r.rank()).map(|i| coeffs[i % coeffs.len()]).collect())
}

fn elementary_symmetric(values: &[i128], k: usize) -> i128 {
    let mut e = vec![0i128; k + 1];
    e[0] = 1;
    for &v in values {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e[k]
}

/// Relabels a group's elements by `perm`, keeping the identity fixed.
fn relabelled(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let table = (0..n)
        .map(|a| (0..n).map(|b| perm[g.mul(inv[a], inv[b])]).collect())
        .collect();
    FiniteGroup::from_table(table, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn burnside_ring_axioms(name in small_group(), a in prop::collection::vec(-3i64..4, 1..6),
                            b in prop::collection::vec(-3i64..4, 1..6), c in prop::collection::vec(-3i64..4, 1..6)) {
        let r = ring(name);
        let (x, y, z) = (element(&r, &a), element(&r, &b), element(&r, &c));
        prop_assert_eq!(r.mul(&x, &y).unwrap(), r.mul(&y, &x).unwrap());
        prop_assert_eq!(r.mul(&r.mul(&x, &y).unwrap(), &z).unwrap(), r.mul(&x, &r.mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(
            r.mul(&x, &y.try_add(&z).unwrap()).unwrap(),
            r.mul(&x, &y).unwrap().try_add(&r.mul(&x, &z).unwrap()).unwrap()
        );
        prop_assert_eq!(r.mul(&x, &r.one()).unwrap(), x.clone());
        let ghost_product: Vec<i64> = r.marks_of(&x).unwrap().iter().zip(r.marks_of(&y).unwrap()).map(|(p, q)| p * q).collect();
        prop_assert_eq!(r.marks_of(&r.mul(&x, &y).unwrap()).unwrap(), ghost_product);
        prop_assert_eq!(r.from_marks(&r.marks_of(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn realize_then_decompose(name in small_group(), seed in any::<u64>()) {
        let r = ring(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = r.random_effective_bounded(&mut rng, 10);
        let s = r.realize(&x).unwrap();
        prop_assert_eq!(s.size() as i64, r.cardinality(&x).unwrap() + 1);
        prop_assert_eq!(r.decompose(&s).unwrap(), x.clone());
        let y = r.random_effective_bounded(&mut rng, 6);
        let smash = diagonal_smash(&s, &r.realize(&y).unwrap()).unwrap();
        prop_assert_eq!(r.decompose(&smash).unwrap(), r.mul(&x, &y).unwrap());
    }

    #[test]
    fn lambda_series_is_exponential(name in small_group(), seed in any::<u64>()) {
        let r = ring(name);
        let ops = LambdaOps::new(&r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = r.random_virtual(&mut rng, 2);
        let y = r.random_virtual(&mut rng, 2);
        let lhs = ops.lambda_series(&x.try_add(&y).unwrap(), 4).unwrap();
        let rhs = ops.lambda_series(&x, 4).unwrap().mul(&ops.lambda_series(&y, 4).unwrap(), &r).unwrap();
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
        let inverse = ops.lambda_series(&x.try_neg().unwrap(), 4).unwrap();
        prop_assert!(ops.lambda_series(&x, 4).unwrap().mul(&inverse, &r).unwrap().is_one(&r));
    }

    /// On sums of integer line elements `lambda^k` is the elementary
    /// symmetric function, so `P_k` and `P_{k,l}` are checked against
    /// direct expansion.
    #[test]
    fn universal_polynomials_on_line_elements(a in prop::collection::vec(-3i128..4, 1..4),
                                              b in prop::collection::vec(-3i128..4, 1..4)) {
        let lx: Vec<i128> = (0..=9).map(|k| elementary_symmetric(&a, k)).collect();
        let ly: Vec<i128> = (0..=3).map(|k| elementary_symmetric(&b, k)).collect();
        let products: Vec<i128> = a.iter().flat_map(|p| b.iter().map(move |q| p * q)).collect();
        for k in 1..=3 {
            let p = universal_polynomial(PolynomialKind::Product { k }).unwrap();
            prop_assert_eq!(p.evaluate(&Integers, &lx, &ly).unwrap(), elementary_symmetric(&products, k));
        }
        for l in 1..=3usize {
            let mut subsets = Vec::new();
            for mask in 0u32..(1 << a.len()) {
                if mask.count_ones() as usize == l {
                    subsets.push((0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).product::<i128>());
                }
            }
            for k in 1..=3usize {
                if k * l > 9 {
                    continue;
                }
                let p = universal_polynomial(PolynomialKind::Composition { k, l }).unwrap();
                prop_assert_eq!(p.evaluate(&Integers, &lx, &[]).unwrap(), elementary_symmetric(&subsets, k));
            }
        }
    }

    #[test]
    fn abelianization_is_relabelling_invariant(index in 0..LIBRARY_NAMES.len(), seed in any::<u64>()) {
        let g = named_group(LIBRARY_NAMES[index]).unwrap();
        prop_assume!(g.order() <= 16);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (1..g.order()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        perm.insert(0, 0);
        let h = relabelled(&g, &perm);
        prop_assert_eq!(g.abelianization().unwrap(), h.abelianization().unwrap());
        prop_assert_eq!(g.classify_subgroups().unwrap().len(), h.classify_subgroups().unwrap().len());
    }

    #[test]
    fn cokernel_of_diagonal(d in prop::collection::vec(0i64..7, 1..5)) {
        let rows: Vec<Vec<i64>> =
            (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        let (free, torsion) = cokernel(&rows, d.len()).unwrap();
        prop_assert_eq!(free, d.iter().filter(|&&v| v == 0).count());
        let order: i64 = torsion.iter().product();
        let expected: i64 = d.iter().filter(|&&v| v > 1).product();
        prop_assert_eq!(order, expected);
        prop_assert!(torsion.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn random_modules_and_homs_are_well_formed(index in 0..14usize, seed in any::<u64>()) {
        let monoids = small_monoids();
        let m = &monoids[index % monoids.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_module(&mut rng, m, 6).unwrap();
        let t = random_module(&mut rng, m, 6).unwrap();
        prop_assert!(s.size() <= 6);
        let f = random_hom(&mut rng, &s, &t).unwrap();
        for x in 0..s.size() {
            for a in 0..m.size() {
                prop_assert_eq!(f.apply(s.act(x, a)), t.act(f.apply(x), a));
            }
        }
        let mut perm: Vec<usize> = (1..s.size()).collect();
        perm.reverse();
        perm.insert(0, 0);
        prop_assert!(are_isomorphic(&s, &s.relabel(&perm).unwrap().0).unwrap());
    }
}

#[test]
fn subgroup_orders_divide() {
    for name in LIBRARY_NAMES {
        let g = named_group(name).unwrap();
        let classes = g.classify_subgroups().unwrap();
        for h in classes.representatives() {
            let n = g.normalizer(h).order();
            assert_eq!(n % h.order(), 0, "{name}");
            assert_eq!(g.order() % n, 0, "{name}");
        }
        assert_eq!(classes.labels(), g.classify_subgroups().unwrap().labels());
    }
}

#[test]
fn f1_is_its_own_group_monoid_of_the_trivial_group() {
    let trivial = PointedMonoid::group_monoid(&Arc::new(named_group("C1").unwrap()));
    assert_eq!(trivial.table(), PointedMonoid::f1().table());
}
