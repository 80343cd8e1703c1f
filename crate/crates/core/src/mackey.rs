//! Restriction, induction and conjugation between the Burnside rings of
//! the subgroups of a fixed group, computed on explicit G-set models.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::f1::{base_change, restrict_scalars, FiniteModule, MonoidHom};
use crate::group::{FiniteGroup, Subgroup};

/// A subgroup `H <= G` together with `H` as a group in its own right and its
/// Burnside ring. `H`'s element `i` is the ambient element `h.elements()[i]`.
#[derive(Debug)]
pub struct SubgroupContext {
    ambient: Arc<FiniteGroup>,
    h: Subgroup,
    h_as_group: Arc<FiniteGroup>,
    ring: BurnsideRing,
}

impl SubgroupContext {
    pub fn new(ambient: Arc<FiniteGroup>, h: Subgroup) -> Result<Self> {
        let h = ambient.subgroup(h.elements().to_vec())?;
        let h_as_group = Arc::new(ambient.subgroup_as_group(&h).with_name(h.label()));
        let ring = BurnsideRing::new(h_as_group.clone())?;
        Ok(Self {
            ambient,
            h,
            h_as_group,
            ring,
        })
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }

    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.h_as_group
    }

    pub fn ring(&self) -> &BurnsideRing {
        &self.ring
    }

    /// Local index to ambient element.
    pub fn embedding(&self) -> &[usize] {
        self.h.elements()
    }

    /// An ambient subgroup contained in `H`, in local indices.
    pub fn localize(&self, k: &Subgroup) -> Result<Subgroup> {
        let local: Option<Vec<usize>> = k.elements().iter().map(|&x| self.h.position(x)).collect();
        let local = local.ok_or_else(|| {
            Error::NotSubgroup(format!(
                "{} is not contained in {}",
                k.label(),
                self.h.label()
            ))
        })?;
        self.h_as_group.subgroup(local)
    }

    /// A subgroup of `H` in local indices, as an ambient subgroup.
    pub fn globalize(&self, k: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = k.elements().iter().map(|&i| self.h.elements()[i]).collect();
        elements.sort_unstable();
        Subgroup::from_sorted_unchecked(elements)
    }
}

/// `{"check", "instances", "failures"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MackeyReport {
    pub check: String,
    pub instances: usize,
    pub failures: Vec<Value>,
}

impl MackeyReport {
    fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Both sides of one double-coset or Frobenius identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: BurnsideElement,
    pub rhs: BurnsideElement,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: BurnsideElement, rhs: BurnsideElement) -> Self {
        let holds = lhs == rhs;
        Self { lhs, rhs, holds }
    }
}

/// All subgroups of one group with lazily built contexts.
pub struct MackeySystem {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    contexts: Mutex<HashMap<Subgroup, Arc<SubgroupContext>>>,
}

impl MackeySystem {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        let subgroups = group.all_subgroups()?;
        Ok(Self {
            group,
            subgroups,
            contexts: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn whole(&self) -> Subgroup {
        self.group.whole()
    }

    pub fn context(&self, h: &Subgroup) -> Result<Arc<SubgroupContext>> {
        if let Some(c) = self.contexts.lock().expect("context cache poisoned").get(h) {
            return Ok(c.clone());
        }
        let ctx = Arc::new(SubgroupContext::new(self.group.clone(), h.clone())?);
        self.contexts
            .lock()
            .expect("context cache poisoned")
            .insert(h.clone(), ctx.clone());
        Ok(ctx)
    }

    /// `(L)_+ -> (H)_+` for ambient subgroups `L <= H`.
    fn inclusion(&self, small: &SubgroupContext, big: &SubgroupContext) -> Result<MonoidHom> {
        let images = big.localize(small.subgroup())?;
        MonoidHom::from_group_map(
            small.ring().monoid(),
            big.ring().monoid(),
            images.elements(),
        )
    }

    /// Applies a module-level functor to the effective parts of `x` and
    /// decomposes the results in `target`.
    fn linear(
        source: &BurnsideRing,
        target: &BurnsideRing,
        x: &BurnsideElement,
        f: impl Fn(&FiniteModule) -> Result<FiniteModule>,
    ) -> Result<BurnsideElement> {
        let (a, b) = x.effective_parts();
        let fa = target.decompose(&f(&source.realize(&a)?)?)?;
        if b.is_zero() {
            return Ok(fa);
        }
        let fb = target.decompose(&f(&source.realize(&b)?)?)?;
        fa.try_sub(&fb)
    }

    /// `res^H_K` for ambient subgroups `K <= H`.
    pub fn restrict(
        &self,
        h: &Subgroup,
        k: &Subgroup,
        x: &BurnsideElement,
    ) -> Result<BurnsideElement> {
        let (hc, kc) = (self.context(h)?, self.context(k)?);
        let alpha = self.inclusion(&kc, &hc)?;
        Self::linear(hc.ring(), kc.ring(), x, |s| restrict_scalars(&alpha, s))
    }

    /// `ind_K^H` for ambient subgroups `K <= H`.
    pub fn induce(
        &self,
        k: &Subgroup,
        h: &Subgroup,
        y: &BurnsideElement,
    ) -> Result<BurnsideElement> {
        let (kc, hc) = (self.context(k)?, self.context(h)?);
        let alpha = self.inclusion(&kc, &hc)?;
        Self::linear(kc.ring(), hc.ring(), y, |s| base_change(&alpha, s))
    }

    /// Transports `y` over `H` to `g H g^{-1}`: the element `g h g^{-1}` acts
    /// as `h` did.
    pub fn conjugate(
        &self,
        g: usize,
        h: &Subgroup,
        y: &BurnsideElement,
    ) -> Result<(Subgroup, BurnsideElement)> {
        if g >= self.group.order() {
            return Err(Error::InvalidInput(format!(
                "{g} is not an element of the group"
            )));
        }
        let target = self.group.conjugate_subgroup(g, h);
        let (hc, tc) = (self.context(h)?, self.context(&target)?);
        let ginv = self.group.inv(g);
        let images: Vec<usize> = tc
            .embedding()
            .iter()
            .map(|&c| {
                hc.subgroup()
                    .position(self.group.conj(ginv, c))
                    .expect("conjugate lands in H")
            })
            .collect();
        let alpha = MonoidHom::from_group_map(tc.ring().monoid(), hc.ring().monoid(), &images)?;
        let out = Self::linear(hc.ring(), tc.ring(), y, |s| restrict_scalars(&alpha, s))?;
        Ok((target, out))
    }

    /// Double cosets `K g H` with their least elements as representatives,
    /// in increasing order of representative.
    pub fn double_coset_representatives(&self, k: &Subgroup, h: &Subgroup) -> Vec<usize> {
        let mut seen = vec![false; self.group.order()];
        let mut reps = Vec::new();
        for g in self.group.elements() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &a in k.elements() {
                for &b in h.elements() {
                    seen[self.group.mul(self.group.mul(a, g), b)] = true;
                }
            }
        }
        reps
    }

    /// `res_K ind_H (y)` against
    /// `sum_{KgH} ind^K_{K ^ gHg^-1} c_g res^H_{H ^ g^-1 K g} (y)`.
    pub fn check_double_coset(
        &self,
        h: &Subgroup,
        k: &Subgroup,
        y: &BurnsideElement,
    ) -> Result<IdentityCheck> {
        let whole = self.whole();
        let lhs = self.restrict(&whole, k, &self.induce(h, &whole, y)?)?;
        let mut rhs = self.context(k)?.ring().zero();
        for g in self.double_coset_representatives(k, h) {
            let ginv = self.group.inv(g);
            let shifted_k = self.group.conjugate_subgroup(ginv, k);
            let l = intersect(h, &shifted_k);
            let restricted = self.restrict(h, &l, y)?;
            let (gl, conj) = self.conjugate(g, &l, &restricted)?;
            rhs = rhs.try_add(&self.induce(&gl, k, &conj)?)?;
        }
        Ok(IdentityCheck::new(lhs, rhs))
    }

    /// `ind_H(res_H(x) y) = x ind_H(y)`.
    pub fn check_frobenius(
        &self,
        h: &Subgroup,
        x: &BurnsideElement,
        y: &BurnsideElement,
    ) -> Result<IdentityCheck> {
        let whole = self.whole();
        let g_ring = self.context(&whole)?;
        let h_ring = self.context(h)?;
        let lhs = self.induce(
            h,
            &whole,
            &h_ring.ring().mul(&self.restrict(&whole, h, x)?, y)?,
        )?;
        let rhs = g_ring.ring().mul(x, &self.induce(h, &whole, y)?)?;
        Ok(IdentityCheck::new(lhs, rhs))
    }

    /// Every subgroup pair `(H, K)` and every basis element of `A(H)`.
    pub fn double_coset_suite(&self) -> Result<MackeyReport> {
        let mut report = MackeyReport::new("double coset formula");
        for h in &self.subgroups {
            let rank = self.context(h)?.ring().rank();
            for k in &self.subgroups {
                for i in 0..rank {
                    let y = BurnsideElement::basis(rank, i);
                    let c = self.check_double_coset(h, k, &y)?;
                    report.record(c.holds, || {
                        json!({ "h": h.label(), "k": k.label(), "y": y.coeffs(), "lhs": c.lhs.coeffs(), "rhs": c.rhs.coeffs() })
                    });
                }
            }
        }
        Ok(report)
    }

    /// Random `(H, x, y)` with `x` over `G`, `y` over `H`, half of them
    /// virtual.
    pub fn frobenius_suite(&self, trials: usize, seed: u64) -> Result<MackeyReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = MackeyReport::new("Frobenius reciprocity");
        let g_ctx = self.context(&self.whole())?;
        for t in 0..trials {
            let h = &self.subgroups[rng.gen_range(0..self.subgroups.len())];
            let h_ctx = self.context(h)?;
            let (x, y) = if 2 * t < trials {
                (
                    g_ctx.ring().random_effective(&mut rng, 2),
                    h_ctx.ring().random_effective(&mut rng, 2),
                )
            } else {
                (
                    g_ctx.ring().random_virtual(&mut rng, 2),
                    h_ctx.ring().random_virtual(&mut rng, 2),
                )
            };
            let c = self.check_frobenius(h, &x, &y)?;
            report.record(c.holds, || {
                json!({ "h": h.label(), "x": x.coeffs(), "y": y.coeffs(), "lhs": c.lhs.coeffs(), "rhs": c.rhs.coeffs() })
            });
        }
        Ok(report)
    }

    /// `[H/K] -> [H:K]` commutes with every restriction `res^H_L`.
    pub fn green_morphism_check(&self) -> Result<MackeyReport> {
        let mut report = MackeyReport::new("dimension map commutes with restriction");
        for h in &self.subgroups {
            let hc = self.context(h)?;
            for l in self.subgroups.iter().filter(|l| l.is_subset_of(h)) {
                let lc = self.context(l)?;
                for i in 0..hc.ring().rank() {
                    let b = hc.ring().basis(i);
                    let before = hc.ring().cardinality(&b)?;
                    let after = lc.ring().cardinality(&self.restrict(h, l, &b)?)?;
                    report.record(before == after, || json!({ "h": h.label(), "l": l.label(), "basis": i, "before": before, "after": after }));
                }
            }
        }
        Ok(report)
    }

    /// `res(xy) = res(x) res(y)` and `res(1) = 1` on random pairs.
    pub fn restriction_ring_hom_suite(&self, trials: usize, seed: u64) -> Result<MackeyReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = MackeyReport::new("restriction is a unital ring homomorphism");
        let whole = self.whole();
        let g_ctx = self.context(&whole)?;
        for h in &self.subgroups {
            let one = self.restrict(&whole, h, &g_ctx.ring().one())?;
            report.record(
                one == self.context(h)?.ring().one(),
                || json!({ "h": h.label(), "res_one": one.coeffs() }),
            );
        }
        for _ in 0..trials {
            let h = &self.subgroups[rng.gen_range(0..self.subgroups.len())];
            let hr = self.context(h)?;
            let x = g_ctx.ring().random_virtual(&mut rng, 2);
            let y = g_ctx.ring().random_virtual(&mut rng, 2);
            let lhs = self.restrict(&whole, h, &g_ctx.ring().mul(&x, &y)?)?;
            let rhs = hr.ring().mul(
                &self.restrict(&whole, h, &x)?,
                &self.restrict(&whole, h, &y)?,
            )?;
            report.record(
                lhs == rhs,
                || json!({ "h": h.label(), "x": x.coeffs(), "y": y.coeffs() }),
            );
        }
        Ok(report)
    }

    /// `res^G_K = res^H_K res^G_H` and `ind^G_H ind^H_K = ind^G_K` for every
    /// tower `K <= H <= G` and every basis element.
    pub fn transitivity_suite(&self) -> Result<MackeyReport> {
        let mut report = MackeyReport::new("transitivity of restriction and induction");
        let whole = self.whole();
        let g_rank = self.context(&whole)?.ring().rank();
        for h in &self.subgroups {
            for k in self.subgroups.iter().filter(|k| k.is_subset_of(h)) {
                for i in 0..g_rank {
                    let x = BurnsideElement::basis(g_rank, i);
                    let direct = self.restrict(&whole, k, &x)?;
                    let staged = self.restrict(h, k, &self.restrict(&whole, h, &x)?)?;
                    report.record(
                        direct == staged,
                        || json!({ "h": h.label(), "k": k.label(), "restrict": i }),
                    );
                }
                let k_rank = self.context(k)?.ring().rank();
                for i in 0..k_rank {
                    let y = BurnsideElement::basis(k_rank, i);
                    let direct = self.induce(k, &whole, &y)?;
                    let staged = self.induce(h, &whole, &self.induce(k, h, &y)?)?;
                    report.record(
                        direct == staged,
                        || json!({ "h": h.label(), "k": k.label(), "induce": i }),
                    );
                }
            }
        }
        Ok(report)
    }

    /// `c_{g'} c_g = c_{g' g}` and `c_g` multiplicative, for every subgroup,
    /// every pair of elements and every basis element.
    pub fn conjugation_suite(&self) -> Result<MackeyReport> {
        let mut report = MackeyReport::new("conjugation is functorial and multiplicative");
        for h in &self.subgroups {
            let hr = self.context(h)?;
            let rank = hr.ring().rank();
            for g in self.group.elements() {
                for i in 0..rank {
                    let y = BurnsideElement::basis(rank, i);
                    let (gh, cy) = self.conjugate(g, h, &y)?;
                    for g2 in self.group.elements() {
                        let (_, twice) = self.conjugate(g2, &gh, &cy)?;
                        let (_, once) = self.conjugate(self.group.mul(g2, g), h, &y)?;
                        report.record(
                            twice == once,
                            || json!({ "h": h.label(), "g": g, "g2": g2, "basis": i }),
                        );
                    }
                    let sq = hr.ring().mul(&y, &y)?;
                    let (_, csq) = self.conjugate(g, h, &sq)?;
                    let target = self.context(&gh)?;
                    report.record(
                        csq == target.ring().mul(&cy, &cy)?,
                        || json!({ "h": h.label(), "g": g, "basis": i }),
                    );
                }
            }
        }
        Ok(report)
    }
}

fn intersect(a: &Subgroup, b: &Subgroup) -> Subgroup {
    Subgroup::from_sorted_unchecked(
        a.elements()
            .iter()
            .copied()
            .filter(|&x| b.contains(x))
            .collect(),
    )
}
