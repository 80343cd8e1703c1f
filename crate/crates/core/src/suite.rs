//! The full invariant suite for one group: a fixed sequence of sections,
//! each seeded independently so the report does not depend on how many
//! worker threads ran it.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::burnside::BurnsideRing;
use crate::error::{Error, Result};
use crate::f1::{extension_property_check, MonoidHom, PointedMonoid};
use crate::group::FiniteGroup;
use crate::gtheory::{
    cartan_zero, count_simple_factors, g0_presentation, g1_via_splitting, DEFAULT_ENUMERATION_CAP,
};
use crate::instances::{
    base_change_preserves_pushout, product_oracle_holds, random_extension_diagram,
    random_pushout_instance, random_split_cofibration, split_lemma_holds,
};
use crate::lambda::{
    diamond, falling_factorial, verify_lambda_ring, verify_pre_lambda, CheckStatus, LambdaOps,
};
use crate::mackey::{MackeyReport, MackeySystem};

/// Default seed for every randomized section.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionStatus {
    Pass,
    Fail,
    /// Outcome reported but not expected to hold for this group.
    Recorded,
}

impl fmt::Display for SectionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectionStatus::Pass => "pass",
            SectionStatus::Fail => "fail",
            SectionStatus::Recorded => "recorded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionReport {
    pub section: String,
    pub status: SectionStatus,
    pub instances: usize,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub group: String,
    pub order: usize,
    pub seed: u64,
    pub trials: usize,
    pub sections: Vec<SectionReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.sections
            .iter()
            .all(|s| s.status != SectionStatus::Fail)
    }

    pub fn section(&self, name: &str) -> Option<&SectionReport> {
        self.sections.iter().find(|s| s.section == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite for {} (order {}), seed {}, {} trials",
            self.group, self.order, self.seed, self.trials
        )?;
        let width = self
            .sections
            .iter()
            .map(|s| s.section.len())
            .max()
            .unwrap_or(0);
        for s in &self.sections {
            writeln!(
                f,
                "  {:<width$}  {:<8}  {:>6}",
                s.section,
                s.status.to_string(),
                s.instances
            )?;
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instances per randomized section.
    pub trials: usize,
    /// Worker threads; 1 runs everything on the calling thread.
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: 50,
            jobs: 1,
        }
    }
}

pub const SECTIONS: &[&str] = &[
    "marks",
    "product oracle",
    "burnside isomorphism",
    "pre-lambda",
    "lambda-ring",
    "diamond",
    "mackey",
    "base-change exactness",
    "split lemma",
    "extension property",
    "cartan",
    "g1",
    "simple factors",
];

struct Ctx {
    group: Arc<FiniteGroup>,
    ring: BurnsideRing,
    config: SuiteConfig,
}

impl Ctx {
    fn rng(&self, section: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ ((section as u64 + 1) << 48))
    }
}

fn status(ok: bool) -> SectionStatus {
    if ok {
        SectionStatus::Pass
    } else {
        SectionStatus::Fail
    }
}

pub fn run_suite(group: Arc<FiniteGroup>, config: SuiteConfig) -> Result<SuiteReport> {
    if config.jobs == 0 {
        return Err(Error::InvalidInput("jobs must be positive".into()));
    }
    let ring = BurnsideRing::new(group.clone())?;
    let ctx = Ctx {
        group: group.clone(),
        ring,
        config,
    };
    let run = |i: usize| run_section(&ctx, i);
    let sections: Vec<SectionReport> = if config.jobs == 1 {
        (0..SECTIONS.len()).map(run).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..SECTIONS.len())
                .into_par_iter()
                .map(run)
                .collect::<Result<_>>()
        })?
    };
    Ok(SuiteReport {
        group: group.name().unwrap_or("G").to_string(),
        order: group.order(),
        seed: config.seed,
        trials: config.trials,
        sections,
    })
}

fn run_section(ctx: &Ctx, i: usize) -> Result<SectionReport> {
    let (status, instances, detail) = match SECTIONS[i] {
        "marks" => marks(ctx)?,
        "product oracle" => product(ctx, i)?,
        "burnside isomorphism" => burnside_iso(ctx)?,
        "pre-lambda" => pre_lambda(ctx, i)?,
        "lambda-ring" => lambda_ring(ctx, i)?,
        "diamond" => diamond_sizes(ctx, i)?,
        "mackey" => mackey(ctx, i)?,
        "base-change exactness" => exactness(ctx, i)?,
        "split lemma" => split(ctx, i)?,
        "extension property" => extension(ctx, i)?,
        "cartan" => cartan(ctx)?,
        "g1" => g1(ctx)?,
        "simple factors" => simple_factors(ctx)?,
        other => return Err(Error::Internal(format!("unknown section {other}"))),
    };
    Ok(SectionReport {
        section: SECTIONS[i].to_string(),
        status,
        instances,
        detail,
    })
}

type Outcome = Result<(SectionStatus, usize, Value)>;

fn marks(ctx: &Ctx) -> Outcome {
    let m = ctx.ring.marks();
    let weyl: Vec<i64> = ctx
        .ring
        .classes()
        .representatives()
        .map(|h| ctx.group.weyl_group(h).map(|w| w.order() as i64))
        .collect::<Result<_>>()?;
    let ok = m.is_lower_triangular() && m.diagonal() == weyl;
    Ok((
        status(ok),
        m.rank(),
        json!({ "diagonal": m.diagonal(), "weyl_orders": weyl }),
    ))
}

fn product(ctx: &Ctx, i: usize) -> Outcome {
    let mut rng = ctx.rng(i);
    let mut counterexample = Value::Null;
    for _ in 0..ctx.config.trials {
        let (ok, x, y) = product_oracle_holds(&mut rng, &ctx.ring, 8)?;
        if !ok && counterexample.is_null() {
            counterexample = json!({ "x": x, "y": y });
        }
    }
    Ok((
        status(counterexample.is_null()),
        ctx.config.trials,
        json!({ "counterexample": counterexample }),
    ))
}

fn burnside_iso(ctx: &Ctx) -> Outcome {
    let bound = ctx.group.order() + 3;
    let p = g0_presentation(
        &PointedMonoid::group_monoid(&ctx.group),
        bound,
        DEFAULT_ENUMERATION_CAP,
    )?;
    let ok = p.report.free_rank == ctx.ring.rank() && p.report.torsion.is_empty();
    Ok((
        status(ok),
        p.generators.len(),
        json!({ "g0": p.report, "burnside_rank": ctx.ring.rank() }),
    ))
}

fn pre_lambda(ctx: &Ctx, i: usize) -> Outcome {
    let report = verify_pre_lambda(&ctx.ring, 4, ctx.config.trials, ctx.config.seed ^ i as u64)?;
    let n = report.checks.iter().map(|c| c.instances).sum();
    Ok((
        status(report.passed()),
        n,
        serde_json::to_value(&report.checks).expect("serializable"),
    ))
}

/// Only cyclic groups of odd order are expected to satisfy the lambda-ring
/// axioms; for other groups the outcome is recorded.
fn lambda_ring(ctx: &Ctx, i: usize) -> Outcome {
    let trials = (ctx.config.trials / 5).max(2);
    let report = verify_lambda_ring(&ctx.ring, 3, 3, trials, ctx.config.seed ^ i as u64)?;
    let expected = ctx.group.order() % 2 == 1 && ctx.group.generators().len() <= 1;
    let n = report.checks.iter().map(|c| c.instances).sum();
    let st = match (expected, report.passed()) {
        (true, ok) => status(ok),
        (false, _) => SectionStatus::Recorded,
    };
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| c.axiom.as_str())
        .collect();
    Ok((
        st,
        n,
        json!({ "expected_to_hold": expected, "failing_axioms": failing, "checks": report.checks }),
    ))
}

fn diamond_sizes(ctx: &Ctx, i: usize) -> Outcome {
    let mut rng = ctx.rng(i);
    let mut instances = 0;
    let mut counterexample = Value::Null;
    for _ in 0..(ctx.config.trials / 10).max(3) {
        let x = ctx.ring.random_effective_bounded(&mut rng, 6);
        let s = ctx.ring.realize(&x)?;
        let n = s.size() - 1;
        for k in 1..=n + 1 {
            let d = diamond(&s, k)?;
            let expected = falling_factorial(n as u64, k as u64).unwrap_or(0) + 1;
            instances += 1;
            if d.size() as u64 != expected && counterexample.is_null() {
                counterexample =
                    json!({ "x": x.coeffs(), "k": k, "size": d.size(), "expected": expected });
            }
        }
        let ops = LambdaOps::new(&ctx.ring);
        for k in 0..=n.min(4) {
            instances += 1;
            let via_ops = ops.lambda_k(&x, k)?;
            let direct = ops.lambda_direct(&x, k)?;
            if via_ops != direct && counterexample.is_null() {
                counterexample = json!({ "x": x.coeffs(), "k": k, "lambda": via_ops.coeffs(), "direct": direct.coeffs() });
            }
        }
    }
    Ok((
        status(counterexample.is_null()),
        instances,
        json!({ "counterexample": counterexample }),
    ))
}

fn mackey(ctx: &Ctx, i: usize) -> Outcome {
    let ms = MackeySystem::new(ctx.group.clone())?;
    let seed = ctx.config.seed ^ i as u64;
    let reports: Vec<MackeyReport> = vec![
        ms.double_coset_suite()?,
        ms.frobenius_suite(ctx.config.trials, seed)?,
        ms.green_morphism_check()?,
        ms.restriction_ring_hom_suite(ctx.config.trials, seed.wrapping_add(1))?,
        ms.transitivity_suite()?,
        ms.conjugation_suite()?,
    ];
    let ok = reports.iter().all(MackeyReport::passed);
    let n = reports.iter().map(|r| r.instances).sum();
    Ok((
        status(ok),
        n,
        serde_json::to_value(&reports).expect("serializable"),
    ))
}

/// Pushouts over `H_+` for random subgroups `H`, base-changed along the
/// inclusion into `G_+` or the augmentation to `F_1`.
fn exactness(ctx: &Ctx, i: usize) -> Outcome {
    let mut rng = ctx.rng(i);
    let ms = MackeySystem::new(ctx.group.clone())?;
    let g_plus = PointedMonoid::group_monoid(&ctx.group);
    let f1 = PointedMonoid::f1();
    let mut counterexample = Value::Null;
    for t in 0..ctx.config.trials {
        let h = ms
            .subgroups()
            .choose(&mut rng)
            .expect("at least one subgroup")
            .clone();
        let context = ms.context(&h)?;
        let h_plus = context.ring().monoid().clone();
        let alpha = if rng.gen_bool(0.5) {
            MonoidHom::from_group_map(&h_plus, &g_plus, context.embedding())?
        } else {
            MonoidHom::new(
                h_plus.clone(),
                f1.clone(),
                (0..h_plus.size()).map(|x| x.min(1)).collect(),
            )?
        };
        let (f, g) = random_pushout_instance(&mut rng, &h_plus, 6)?;
        if base_change_preserves_pushout(&alpha, &f, &g)? != Some(true) && counterexample.is_null()
        {
            counterexample = json!({ "trial": t, "subgroup": h.elements(), "alpha": alpha.map() });
        }
    }
    Ok((
        status(counterexample.is_null()),
        ctx.config.trials,
        json!({ "counterexample": counterexample }),
    ))
}

fn split(ctx: &Ctx, i: usize) -> Outcome {
    let mut rng = ctx.rng(i);
    let mut failures = 0;
    for _ in 0..ctx.config.trials {
        let a = ctx
            .ring
            .realize(&ctx.ring.random_effective_bounded(&mut rng, 6))?;
        let c = ctx
            .ring
            .realize(&ctx.ring.random_effective_bounded(&mut rng, 6))?;
        let f = random_split_cofibration(&mut rng, &a, &c)?;
        if !split_lemma_holds(&f)? {
            failures += 1;
        }
    }
    Ok((
        status(failures == 0),
        ctx.config.trials,
        json!({ "failures": failures }),
    ))
}

fn extension(ctx: &Ctx, i: usize) -> Outcome {
    let mut rng = ctx.rng(i);
    let mut failures = 0;
    for _ in 0..ctx.config.trials {
        let d = random_extension_diagram(&mut rng, &ctx.ring, 4)?;
        if !extension_property_check(&d).unwrap_or(false) {
            failures += 1;
        }
    }
    Ok((
        status(failures == 0),
        ctx.config.trials,
        json!({ "failures": failures }),
    ))
}

fn cartan(ctx: &Ctx) -> Outcome {
    let c = cartan_zero(&ctx.ring)?;
    let ok = c.wh0.free_rank + 1 == ctx.ring.rank() && c.wh0.torsion.is_empty();
    Ok((
        status(ok),
        1,
        json!({ "image": c.image.coeffs(), "wh0": c.wh0 }),
    ))
}

fn g1(ctx: &Ctx) -> Outcome {
    let r = g1_via_splitting(&ctx.group)?;
    Ok((
        status(r.is_well_formed() && r.free_rank == 0),
        1,
        serde_json::to_value(&r).expect("serializable"),
    ))
}

/// `l(G, q)` for the least prime `q = 1 mod exp(G)`, which must equal the
/// number of conjugacy classes, and for the least prime coprime to `|G|`.
fn simple_factors(ctx: &Ctx) -> Outcome {
    let order = ctx.group.order() as u64;
    let exp = ctx.group.exponent() as u64;
    let is_prime = |p: u64| {
        p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
    };
    let split_q = (1..)
        .map(|j| j * exp + 1)
        .find(|&q| is_prime(q))
        .expect("Dirichlet");
    let coprime_q = (2..)
        .find(|&q| is_prime(q) && !order.is_multiple_of(q))
        .expect("infinitely many primes");
    let classes = ctx.group.conjugacy_classes().len();
    let at_split = count_simple_factors(&ctx.group, split_q)?;
    let at_coprime = count_simple_factors(&ctx.group, coprime_q)?;
    let rejected = order == 1
        || matches!(
            count_simple_factors(
                &ctx.group,
                (2..)
                    .find(|&p| is_prime(p) && order.is_multiple_of(p))
                    .expect("prime factor")
            ),
            Err(Error::NotCoprime { .. })
        );
    let ok = at_split == classes && at_coprime <= classes && rejected;
    Ok((
        status(ok),
        3,
        json!({ "classes": classes, "split_q": split_q, "at_split_q": at_split, "coprime_q": coprime_q, "at_coprime_q": at_coprime }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        let config = SuiteConfig {
            trials: 6,
            ..SuiteConfig::default()
        };
        for name in ["C1", "C3", "S3"] {
            let g = Arc::new(named_group(name).unwrap());
            let a = run_suite(g.clone(), config).unwrap();
            assert!(a.passed(), "{a}");
            let b = run_suite(g, SuiteConfig { jobs: 3, ..config }).unwrap();
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap()
            );
        }
    }
}
