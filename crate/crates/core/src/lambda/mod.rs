//! Siebeneicher's lambda-operations on `A(G)`.
//!
//! `lambda^k` of a G-set is the G-set of its unordered `k`-subsets; virtual
//! classes go through `lambda_t(a - b) = lambda_t(a) / lambda_t(b)`.

mod poly;
mod series;
mod subsets;
mod verify;

use std::collections::HashMap;
use std::sync::Mutex;

pub use poly::{
    universal_polynomial, universal_polynomial_in, EvalRing, Integers, Monomial, MultiPoly,
    PolynomialKind, UniversalPolynomial, MAX_COMPOSITION_WEIGHT, MAX_K, MAX_L,
};
pub use series::TruncatedSeries;
pub use subsets::{
    binomial, diamond, diamond_filtered, diamond_tuple, falling_factorial, subset_decomposition,
    subset_module, MODULE_CARRIER_CAP, SUBSET_ENUMERATION_CAP,
};
pub use verify::{verify_lambda_ring, verify_pre_lambda, AxiomCheck, CheckStatus, LambdaReport};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};

/// Largest number of `k`-subsets enumerated directly by [`LambdaOps`]; past
/// this the product of per-orbit series is used instead.
pub const DIRECT_SUBSET_LIMIT: u64 = 200_000;

/// Lambda-operations on one Burnside ring, caching the series of basis
/// elements.
pub struct LambdaOps<'r> {
    ring: &'r BurnsideRing,
    basis: Mutex<HashMap<usize, Vec<BurnsideElement>>>,
}

impl<'r> LambdaOps<'r> {
    pub fn new(ring: &'r BurnsideRing) -> Self {
        Self {
            ring,
            basis: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &'r BurnsideRing {
        self.ring
    }

    /// `lambda^k(x)` for any element.
    pub fn lambda_k(&self, x: &BurnsideElement, k: usize) -> Result<BurnsideElement> {
        match k {
            0 => Ok(self.ring.one()),
            1 => Ok(x.clone()),
            _ if x.is_effective() => self.effective_k(x, k),
            _ => Ok(self.lambda_series(x, k)?.coeff(k).clone()),
        }
    }

    /// `lambda^k(x)` by enumerating `k`-subsets of the realized G-set of
    /// `x`, regardless of size.
    pub fn lambda_direct(&self, x: &BurnsideElement, k: usize) -> Result<BurnsideElement> {
        let s = self.ring.realize(x)?;
        subset_decomposition(self.ring, &s, k)
    }

    fn effective_k(&self, x: &BurnsideElement, k: usize) -> Result<BurnsideElement> {
        let n = self.ring.cardinality(x)?;
        if (k as i64) > n {
            return Ok(self.ring.zero());
        }
        match binomial(n as u64, k as u64) {
            Some(c) if c <= DIRECT_SUBSET_LIMIT => self.lambda_direct(x, k),
            _ => Ok(self.effective_series(x, k)?.coeff(k).clone()),
        }
    }

    /// `lambda_t` of `[G/H_i]` up to `t^cap`.
    fn basis_series(&self, i: usize, cap: usize) -> Result<TruncatedSeries> {
        let index = self.ring.indices()[i] as usize;
        let wanted = cap.min(index);
        let cached = {
            let guard = self.basis.lock().expect("basis cache poisoned");
            guard.get(&i).filter(|c| c.len() > wanted).cloned()
        };
        let coeffs = match cached {
            Some(c) => c,
            None => {
                let space = self.ring.coset_space(i)?;
                let c = (0..=wanted)
                    .map(|k| subset_decomposition(self.ring, &space, k))
                    .collect::<Result<Vec<_>>>()?;
                self.basis
                    .lock()
                    .expect("basis cache poisoned")
                    .insert(i, c.clone());
                c
            }
        };
        TruncatedSeries::new(
            self.ring,
            cap,
            coeffs.into_iter().take(wanted + 1).collect(),
        )
    }

    /// `prod_i lambda_t([G/H_i])^{x_i}` for effective `x`.
    fn effective_series(&self, x: &BurnsideElement, cap: usize) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::one(self.ring, cap);
        for (i, &c) in x.coeffs().iter().enumerate() {
            if c > 0 {
                acc = acc.mul(
                    &self.basis_series(i, cap)?.pow(c as u64, self.ring)?,
                    self.ring,
                )?;
            }
        }
        Ok(acc)
    }

    /// `sum_{k <= cap} lambda^k(x) t^k`.
    pub fn lambda_series(&self, x: &BurnsideElement, cap: usize) -> Result<TruncatedSeries> {
        if cap == 0 {
            return Err(Error::InvalidInput("series cap must be positive".into()));
        }
        let (a, b) = x.effective_parts();
        let sa = self.effective_parts_series(&a, cap)?;
        if b.is_zero() {
            return Ok(sa);
        }
        let sb = self.effective_parts_series(&b, cap)?;
        sa.mul(&sb.inverse(self.ring)?, self.ring)
    }

    fn effective_parts_series(&self, a: &BurnsideElement, cap: usize) -> Result<TruncatedSeries> {
        let coeffs = (0..=cap)
            .map(|k| self.lambda_k(a, k))
            .collect::<Result<Vec<_>>>()?;
        TruncatedSeries::new(self.ring, cap, coeffs)
    }
}

/// `lambda^k(x)` in `ring`.
pub fn lambda_k(ring: &BurnsideRing, x: &BurnsideElement, k: usize) -> Result<BurnsideElement> {
    LambdaOps::new(ring).lambda_k(x, k)
}

/// `lambda_t(x)` up to `t^cap`.
pub fn lambda_series(
    ring: &BurnsideRing,
    x: &BurnsideElement,
    cap: usize,
) -> Result<TruncatedSeries> {
    LambdaOps::new(ring).lambda_series(x, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;
    use std::sync::Arc;

    fn ring(name: &str) -> BurnsideRing {
        BurnsideRing::new(Arc::new(named_group(name).unwrap())).unwrap()
    }

    #[test]
    fn c2_examples() {
        let r = ring("C2");
        let ops = LambdaOps::new(&r);
        assert_eq!(ops.lambda_k(&r.basis(0), 2).unwrap(), r.basis(1));
        let two = BurnsideElement::new(vec![2, 0]);
        assert_eq!(ops.lambda_k(&two, 2).unwrap().coeffs(), &[2, 2]);
        for k in 2..5 {
            assert!(ops.lambda_k(&r.one(), k).unwrap().is_zero());
        }
    }

    #[test]
    fn series_of_zero_and_one() {
        let r = ring("S3");
        let ops = LambdaOps::new(&r);
        assert!(ops.lambda_series(&r.zero(), 3).unwrap().is_one(&r));
        let s = ops.lambda_series(&r.one(), 3).unwrap();
        assert_eq!(s.coeff(1), &r.one());
        assert!(s.coeff(2).is_zero() && s.coeff(3).is_zero());
    }

    #[test]
    fn multiplicative_route_matches_direct() {
        let r = ring("S3");
        let ops = LambdaOps::new(&r);
        let x = BurnsideElement::new(vec![1, 2, 1, 1]);
        for k in 0..=4 {
            let direct = ops.lambda_direct(&x, k).unwrap();
            let via_series = ops.effective_series(&x, 4).unwrap().coeff(k).clone();
            assert_eq!(direct, via_series, "k = {k}");
        }
    }

    #[test]
    fn virtual_series_inverse() {
        let r = ring("D4");
        let ops = LambdaOps::new(&r);
        let x = BurnsideElement::new(vec![1, -1, 0, 0, 1, 0, 0, -1]);
        let minus = x.try_neg().unwrap();
        let prod = ops
            .lambda_series(&x, 4)
            .unwrap()
            .mul(&ops.lambda_series(&minus, 4).unwrap(), &r)
            .unwrap();
        assert!(prod.is_one(&r));
    }

    #[test]
    fn vanishes_above_carrier_size() {
        let r = ring("C3");
        let ops = LambdaOps::new(&r);
        let x = BurnsideElement::new(vec![1, 1]);
        assert!(!ops.lambda_k(&x, 4).unwrap().is_zero());
        assert!(ops.lambda_k(&x, 5).unwrap().is_zero());
    }
}
