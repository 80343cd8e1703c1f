use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::poly::{universal_polynomial, PolynomialKind, UniversalPolynomial};
use super::LambdaOps;
use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One axiom family: `{"axiom", "status", "instances", "counterexample"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub status: CheckStatus,
    pub instances: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub group: String,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

struct Tally {
    axiom: String,
    instances: usize,
    counterexample: Option<Value>,
}

impl Tally {
    fn new(axiom: &str) -> Self {
        Self {
            axiom: axiom.to_string(),
            instances: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> AxiomCheck {
        let status = if self.counterexample.is_some() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
        AxiomCheck {
            axiom: self.axiom,
            status,
            instances: self.instances,
            counterexample: self.counterexample,
        }
    }
}

fn group_name(ring: &BurnsideRing) -> String {
    ring.group().name().unwrap_or("G").to_string()
}

/// `x` of up to 2 orbits per part; keeps the realized sets small enough for
/// direct subset enumeration on both sides of each identity.
const ORBITS_PER_PART: usize = 2;

fn convolution(
    ops: &LambdaOps,
    x: &[BurnsideElement],
    y: &[BurnsideElement],
    k: usize,
) -> Result<BurnsideElement> {
    let ring = ops.ring();
    let mut acc = ring.zero();
    for i in 0..=k {
        acc = acc.try_add(&ring.mul(&x[i], &y[k - i])?)?;
    }
    Ok(acc)
}

fn lambdas(ops: &LambdaOps, x: &BurnsideElement, cap: usize) -> Result<Vec<BurnsideElement>> {
    (0..=cap).map(|k| ops.lambda_k(x, k)).collect()
}

/// Checks `lambda^0 = 1`, `lambda^1 = id` and
/// `lambda^k(x + y) = sum_i lambda^i(x) lambda^{k-i}(y)` for `k <= cap` on
/// `trials` effective and `trials` virtual random pairs.
pub fn verify_pre_lambda(
    ring: &BurnsideRing,
    cap: usize,
    trials: usize,
    seed: u64,
) -> Result<LambdaReport> {
    let ops = LambdaOps::new(ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero = Tally::new("lambda^0 = 1");
    let mut one = Tally::new("lambda^1 = id");
    let mut eff = Tally::new("addition formula (effective pairs)");
    let mut virt = Tally::new("addition formula (virtual pairs)");
    for trial in 0..2 * trials {
        let virtual_pair = trial >= trials;
        let (x, y) = if virtual_pair {
            (
                ring.random_virtual(&mut rng, ORBITS_PER_PART),
                ring.random_virtual(&mut rng, ORBITS_PER_PART),
            )
        } else {
            (
                ring.random_effective(&mut rng, ORBITS_PER_PART),
                ring.random_effective(&mut rng, ORBITS_PER_PART),
            )
        };
        let lx = lambdas(&ops, &x, cap)?;
        let ly = lambdas(&ops, &y, cap)?;
        zero.record(lx[0] == ring.one(), || json!({ "x": x.coeffs() }));
        one.record(cap < 1 || lx[1] == x, || json!({ "x": x.coeffs() }));
        let sum = x.try_add(&y)?;
        let tally = if virtual_pair { &mut virt } else { &mut eff };
        for k in 0..=cap {
            let lhs = ops.lambda_k(&sum, k)?;
            let rhs = convolution(&ops, &lx, &ly, k)?;
            tally.record(lhs == rhs, || {
                json!({ "x": x.coeffs(), "y": y.coeffs(), "k": k, "lhs": lhs.coeffs(), "rhs": rhs.coeffs() })
            });
        }
    }
    Ok(LambdaReport {
        group: group_name(ring),
        seed,
        checks: vec![zero.finish(), one.finish(), eff.finish(), virt.finish()],
    })
}

/// Checks `lambda^k(1) = 0` for `2 <= k <= k_cap`, the product rule
/// `lambda^k(xy) = P_k` for `k <= k_cap` and the composition rule
/// `lambda^k(lambda^l x) = P_{k,l}` for `k <= k_cap`, `l <= l_cap`, on
/// `trials` random elements (half effective, half virtual).
pub fn verify_lambda_ring(
    ring: &BurnsideRing,
    k_cap: usize,
    l_cap: usize,
    trials: usize,
    seed: u64,
) -> Result<LambdaReport> {
    let ops = LambdaOps::new(ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = Tally::new("lambda^k(1) = 0 for k >= 2");
    for k in 2..=k_cap.max(2) {
        let v = ops.lambda_k(&ring.one(), k)?;
        unit.record(v.is_zero(), || json!({ "k": k, "value": v.coeffs() }));
    }
    let products: Vec<UniversalPolynomial> = (1..=k_cap)
        .map(|k| universal_polynomial(PolynomialKind::Product { k }))
        .collect::<Result<_>>()?;
    let mut compositions = Vec::new();
    for k in 1..=k_cap {
        for l in 1..=l_cap {
            compositions.push((
                k,
                l,
                universal_polynomial(PolynomialKind::Composition { k, l })?,
            ));
        }
    }
    let mut product = Tally::new("product rule lambda^k(xy) = P_k");
    let mut composition = Tally::new("composition rule lambda^k(lambda^l(x)) = P_{k,l}");
    let sample = |rng: &mut ChaCha8Rng, t: usize| {
        if 2 * t < trials {
            ring.random_effective(rng, ORBITS_PER_PART)
        } else {
            ring.random_virtual(rng, 1)
        }
    };
    for t in 0..trials {
        let x = sample(&mut rng, t);
        let y = sample(&mut rng, t);
        let lx = lambdas(&ops, &x, (k_cap * l_cap).max(k_cap))?;
        let ly = lambdas(&ops, &y, k_cap)?;
        let xy = ring.mul(&x, &y)?;
        for (i, p) in products.iter().enumerate() {
            let k = i + 1;
            let lhs = ops.lambda_k(&xy, k)?;
            let rhs = p.evaluate(ring, &lx, &ly)?;
            product.record(lhs == rhs, || {
                json!({ "x": x.coeffs(), "y": y.coeffs(), "k": k, "lhs": lhs.coeffs(), "rhs": rhs.coeffs() })
            });
        }
        for (k, l, p) in &compositions {
            let lhs = ops.lambda_k(&lx[*l], *k)?;
            let rhs = p.evaluate(ring, &lx, &[])?;
            composition.record(lhs == rhs, || {
                json!({ "x": x.coeffs(), "k": k, "l": l, "lhs": lhs.coeffs(), "rhs": rhs.coeffs() })
            });
        }
    }
    Ok(LambdaReport {
        group: group_name(ring),
        seed,
        checks: vec![unit.finish(), product.finish(), composition.finish()],
    })
}
