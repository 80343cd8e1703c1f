//! Acceptance criteria, one line each. Every comparison is exact: integer
//! vectors, ranks and torsion lists must match with zero tolerance.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use f1g_core::f1::{extension_property_check, FiniteModule, PointedMonoid};
use f1g_core::group::LIBRARY_NAMES;
use f1g_core::gtheory::{
    cartan_zero, count_simple_factors, g0_presentation, g1_via_splitting, DEFAULT_ENUMERATION_CAP,
};
use f1g_core::instances::{
    all_monoid_homs, base_change_preserves_pushout, product_oracle_holds, random_extension_diagram,
    random_pushout_instance, random_split_cofibration, small_monoids, split_lemma_holds,
};
use f1g_core::lambda::{
    diamond, falling_factorial, universal_polynomial, verify_lambda_ring, verify_pre_lambda,
    LambdaOps, MultiPoly, PolynomialKind,
};
use f1g_core::mackey::MackeySystem;
use f1g_core::suite::{run_suite, SuiteConfig};
use f1g_core::{named_group, BurnsideElement, BurnsideRing, Error, FiniteGroup};

const SEED: u64 = 0x00ac_ce97;
/// Exact agreement; no criterion admits a numerical tolerance.
const TOLERANCE: i64 = 0;
const PRODUCT_PAIRS: usize = 200;
const MAX_GSET_SIZE: i64 = 8;
/// `verify_pre_lambda` runs this many effective and this many virtual pairs.
const PRE_LAMBDA_TRIALS_PER_KIND: usize = 100;
const LAMBDA_RING_TRIALS: usize = 20;
const FROBENIUS_INSTANCES: usize = 200;
const PUSHOUT_INSTANCES: usize = 200;
const SPLIT_INSTANCES: usize = 500;
const EXTENSION_INSTANCES: usize = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(name).expect("library group"))
}

fn ring(name: &str) -> BurnsideRing {
    BurnsideRing::new(group(name)).expect("Burnside ring")
}

fn library_up_to(order: usize) -> Vec<&'static str> {
    LIBRARY_NAMES
        .iter()
        .copied()
        .filter(|n| named_group(n).unwrap().order() <= order)
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn burnside_isomorphism() -> Outcome {
    let names = library_up_to(12);
    for name in &names {
        let g = group(name);
        let classes = ring(name).rank();
        let p = g0_presentation(
            &PointedMonoid::group_monoid(&g),
            g.order() + 3,
            DEFAULT_ENUMERATION_CAP,
        )
        .map_err(err)?;
        ensure(
            p.report.free_rank == classes && p.report.torsion.is_empty(),
            || format!("{name}: G0 = {} but {classes} subgroup classes", p.report),
        )?;
    }
    Ok(format!(
        "{} groups, G0 at bound |G|+3 is Z^(#classes)",
        names.len()
    ))
}

fn marks_correctness() -> Outcome {
    let c2 = ring("C2");
    ensure(c2.marks().entries == vec![vec![2, 0], vec![1, 1]], || {
        format!("C2 marks {:?}", c2.marks().entries)
    })?;
    for name in ["S3", "D4", "A4", "Q8"] {
        let r = ring(name);
        let weyl: Vec<i64> = r
            .classes()
            .representatives()
            .map(|h| r.group().weyl_group(h).unwrap().order() as i64)
            .collect();
        let diag = r.marks().diagonal();
        ensure(
            diag.iter()
                .zip(&weyl)
                .all(|(a, b)| (a - b).abs() <= TOLERANCE)
                && diag.len() == weyl.len(),
            || format!("{name}: diagonal {diag:?}, Weyl orders {weyl:?}"),
        )?;
    }
    Ok("C2 = [[2,0],[1,1]]; diagonals are Weyl orders for S3, D4, A4, Q8".into())
}

fn product_oracle() -> Outcome {
    let names = library_up_to(8);
    let rings: Vec<BurnsideRing> = names.iter().map(|n| ring(n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    for t in 0..PRODUCT_PAIRS {
        let i = rng.gen_range(0..rings.len());
        let (ok, x, y) = product_oracle_holds(&mut rng, &rings[i], MAX_GSET_SIZE).map_err(err)?;
        ensure(ok, || {
            format!("pair {t} over {}: x = {x:?}, y = {y:?}", names[i])
        })?;
    }
    Ok(format!("{PRODUCT_PAIRS} pairs over {} groups", names.len()))
}

fn subset_lambda() -> Outcome {
    let c2 = ring("C2");
    let ops = LambdaOps::new(&c2);
    let a = ops
        .lambda_k(&BurnsideElement::new(vec![1, 0]), 2)
        .map_err(err)?;
    ensure(a.coeffs() == [0, 1], || format!("lambda^2[C2/e] = {a}"))?;
    let b = ops
        .lambda_k(&BurnsideElement::new(vec![2, 0]), 2)
        .map_err(err)?;
    ensure(b.coeffs() == [2, 2], || format!("lambda^2(2[C2/e]) = {b}"))?;
    let names = library_up_to(8);
    for (i, name) in names.iter().enumerate() {
        let report = verify_pre_lambda(
            &ring(name),
            4,
            PRE_LAMBDA_TRIALS_PER_KIND,
            SEED ^ (40 + i as u64),
        )
        .map_err(err)?;
        ensure(report.passed(), || {
            format!("{name}: {}", serde_json::to_string(&report).unwrap())
        })?;
    }
    Ok(format!(
        "C2 examples; {} pairs per group, k <= 4, {} groups",
        2 * PRE_LAMBDA_TRIALS_PER_KIND,
        names.len()
    ))
}

fn lambda_ring_odd_cyclic() -> Outcome {
    let p2 = universal_polynomial(PolynomialKind::Product { k: 2 }).map_err(err)?;
    let v = |i| MultiPoly::<i64>::var(4, i);
    let (l1x, l2x, l1y, l2y) = (v(0), v(1), v(2), v(3));
    let anchor = l1x
        .pow(2)
        .and_then(|p| p.mul(&l2y))
        .and_then(|p| p.add(&l1y.pow(2)?.mul(&l2x)?))
        .and_then(|p| p.sub(&l2x.mul(&l2y)?.scale(&2)?))
        .map_err(err)?;
    ensure(p2.poly() == &anchor, || format!("P2 = {p2}"))?;
    for name in ["C3", "C5"] {
        let report =
            verify_lambda_ring(&ring(name), 3, 3, LAMBDA_RING_TRIALS, SEED ^ 5).map_err(err)?;
        ensure(report.passed(), || {
            format!("{name}: {}", serde_json::to_string(&report).unwrap())
        })?;
    }
    Ok(format!(
        "P2 = {p2}; C3 and C5 pass all three families, k, l <= 3"
    ))
}

fn diamond_cardinalities() -> Outcome {
    let f1 = PointedMonoid::f1();
    let mut checked = 0;
    for n in 1..=6usize {
        let s = FiniteModule::trivial(&f1, n).map_err(err)?;
        for k in 1..=n + 2 {
            let d = diamond(&s, k).map_err(err)?;
            let expected = if k <= n {
                falling_factorial(n as u64, k as u64).unwrap() as usize + 1
            } else {
                1
            };
            ensure(d.size() == expected, || {
                format!("n = {n}, k = {k}: size {} != {expected}", d.size())
            })?;
            checked += 1;
        }
    }
    let r = ring("S3");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for _ in 0..20 {
        let s = r
            .realize(&r.random_effective_bounded(&mut rng, 6))
            .map_err(err)?;
        let n = s.size() - 1;
        for k in 1..=n + 1 {
            let expected = falling_factorial(n as u64, k as u64).unwrap_or(0) as usize + 1;
            let size = diamond(&s, k).map_err(err)?.size();
            ensure(size == expected, || {
                format!("S3-set of {n} points, k = {k}: size {size}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases over F1 and S3"))
}

fn mackey_structure() -> Outcome {
    let mut summary = Vec::new();
    for (i, name) in ["S3", "D4", "A4", "Q8"].iter().enumerate() {
        let ms = MackeySystem::new(group(name)).map_err(err)?;
        let dc = ms.double_coset_suite().map_err(err)?;
        let fr = ms
            .frobenius_suite(FROBENIUS_INSTANCES, SEED ^ (70 + i as u64))
            .map_err(err)?;
        ensure(dc.passed(), || {
            format!("{name} double coset: {:?}", dc.failures.first())
        })?;
        ensure(fr.passed() && fr.instances >= FROBENIUS_INSTANCES, || {
            format!(
                "{name} Frobenius ({} instances): {:?}",
                fr.instances,
                fr.failures.first()
            )
        })?;
        summary.push(format!("{name} {}+{}", dc.instances, fr.instances));
    }
    Ok(summary.join(", "))
}

fn base_change_exactness() -> Outcome {
    let monoids = small_monoids();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut done = 0;
    while done < PUSHOUT_INSTANCES {
        let m = monoids.choose(&mut rng).unwrap();
        let n = monoids.choose(&mut rng).unwrap();
        let homs = all_monoid_homs(m, n);
        let Some(alpha) = homs.choose(&mut rng) else {
            continue;
        };
        let (f, g) = random_pushout_instance(&mut rng, m, 6).map_err(err)?;
        let ok = base_change_preserves_pushout(alpha, &f, &g).map_err(err)?;
        ensure(ok == Some(true), || {
            format!("instance {done}: alpha = {:?}, result {ok:?}", alpha.map())
        })?;
        done += 1;
    }
    Ok(format!(
        "{done} pushouts over {} monoids of size <= 6",
        monoids.len()
    ))
}

fn split_and_extension() -> Outcome {
    let names = library_up_to(6);
    let rings: Vec<BurnsideRing> = names.iter().map(|n| ring(n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for t in 0..SPLIT_INSTANCES {
        let r = rings.choose(&mut rng).unwrap();
        let a = r
            .realize(&r.random_effective_bounded(&mut rng, 6))
            .map_err(err)?;
        let c = r
            .realize(&r.random_effective_bounded(&mut rng, 6))
            .map_err(err)?;
        let f = random_split_cofibration(&mut rng, &a, &c).map_err(err)?;
        ensure(split_lemma_holds(&f).map_err(err)?, || {
            format!("split instance {t}")
        })?;
    }
    for t in 0..EXTENSION_INSTANCES {
        let r = rings.choose(&mut rng).unwrap();
        let d = random_extension_diagram(&mut rng, r, 4).map_err(err)?;
        ensure(extension_property_check(&d).map_err(err)?, || {
            format!("extension instance {t}")
        })?;
    }
    Ok(format!(
        "{SPLIT_INSTANCES} split + {EXTENSION_INSTANCES} extension instances over {} groups",
        names.len()
    ))
}

fn cartan_whitehead() -> Outcome {
    for (name, rank) in [("C1", 0), ("C2", 1), ("S3", 3)] {
        let w = cartan_zero(&ring(name)).map_err(err)?.wh0;
        ensure(w.free_rank == rank && w.torsion.is_empty(), || {
            format!("Wh0({name}) = {w}")
        })?;
    }
    for name in LIBRARY_NAMES {
        let r = ring(name);
        let w = cartan_zero(&r).map_err(err)?.wh0;
        ensure(w.free_rank + 1 == r.rank() && w.torsion.is_empty(), || {
            format!("Wh0({name}) = {w}")
        })?;
    }
    Ok(format!(
        "Wh0 = Z^(r-1) for all {} library groups",
        LIBRARY_NAMES.len()
    ))
}

fn g1_splitting() -> Outcome {
    for (name, twos) in [("C1", 1), ("C2", 3), ("S3", 6)] {
        let r = g1_via_splitting(&group(name)).map_err(err)?;
        ensure(
            r.free_rank == 0 && r.torsion == vec![2; twos] && r.provenance == "splitting formula",
            || format!("G1({name}) = {r} ({})", r.provenance),
        )?;
    }
    Ok("Z/2, (Z/2)^3, (Z/2)^6, via splitting formula".into())
}

fn simple_factors() -> Outcome {
    let l = count_simple_factors(&group("C3"), 2).map_err(err)?;
    ensure(l == 2, || format!("l(C3, 2) = {l}"))?;
    for (name, q) in [("C4", 5), ("S3", 7)] {
        let g = group(name);
        ensure(q % g.exponent() as u64 == 1, || {
            format!("{q} is not 1 mod exp({name})")
        })?;
        let l = count_simple_factors(&g, q).map_err(err)?;
        let classes = g.conjugacy_classes().len();
        ensure(l == classes, || {
            format!("l({name}, {q}) = {l}, {classes} classes")
        })?;
    }
    for (name, q) in [("C2", 2), ("S3", 3), ("C6", 4)] {
        let r = count_simple_factors(&group(name), q);
        ensure(matches!(r, Err(Error::NotCoprime { .. })), || {
            format!("({name}, {q}) accepted: {r:?}")
        })?;
    }
    Ok("l(C3,2) = 2, l(C4,5) = 4, l(S3,7) = 3, non-coprime q rejected".into())
}

fn determinism() -> Outcome {
    let config = SuiteConfig {
        seed: SEED,
        trials: 10,
        jobs: 1,
    };
    let a = run_suite(group("S3"), config).map_err(err)?;
    let b = run_suite(group("S3"), config).map_err(err)?;
    let c = run_suite(group("S3"), SuiteConfig { jobs: 4, ..config }).map_err(err)?;
    let (ja, jb, jc) = (
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap(),
        serde_json::to_string(&c).unwrap(),
    );
    ensure(
        ja == jb && ja == jc && a.to_string() == b.to_string(),
        || "suite output differs between runs".into(),
    )?;
    Ok(format!(
        "S3 suite, {} bytes of JSON identical across 3 runs",
        ja.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("burnside isomorphism", burnside_isomorphism),
        ("marks correctness", marks_correctness),
        ("product oracle", product_oracle),
        ("subset lambda-operations", subset_lambda),
        ("lambda-ring for cyclic odd order", lambda_ring_odd_cyclic),
        ("diamond cardinalities", diamond_cardinalities),
        ("mackey structure", mackey_structure),
        ("base-change exactness", base_change_exactness),
        ("split lemma and extension property", split_and_extension),
        ("cartan and whitehead at pi_0", cartan_whitehead),
        ("G1 via splitting", g1_splitting),
        ("simple-factor count", simple_factors),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
