use serde::Serialize;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};

/// `sum_{k <= cap} a_k t^k` with coefficients in `A(G)`; products drop
/// everything above `t^cap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    cap: usize,
    coeffs: Vec<BurnsideElement>,
}

impl TruncatedSeries {
    /// The series `1`.
    pub fn one(ring: &BurnsideRing, cap: usize) -> Self {
        let mut coeffs = vec![ring.zero(); cap + 1];
        coeffs[0] = ring.one();
        Self { cap, coeffs }
    }

    /// Requires `coeffs[0]` to be the unit; missing terms are zero and terms
    /// above `cap` are dropped.
    pub fn new(ring: &BurnsideRing, cap: usize, mut coeffs: Vec<BurnsideElement>) -> Result<Self> {
        if coeffs.first() != Some(&ring.one()) {
            return Err(Error::InvalidInput(
                "series must have constant term 1".into(),
            ));
        }
        coeffs.resize(cap + 1, ring.zero());
        coeffs.truncate(cap + 1);
        Ok(Self { cap, coeffs })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[BurnsideElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BurnsideElement {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &Self, ring: &BurnsideRing) -> Result<Self> {
        let cap = self.cap.min(other.cap);
        let mut coeffs = vec![ring.zero(); cap + 1];
        for i in 0..=cap {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(cap - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let term = ring.mul(&self.coeffs[i], &other.coeffs[j])?;
                coeffs[i + j] = coeffs[i + j].try_add(&term)?;
            }
        }
        Ok(Self { cap, coeffs })
    }

    pub fn pow(&self, mut e: u64, ring: &BurnsideRing) -> Result<Self> {
        let mut acc = Self::one(ring, self.cap);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ring)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse: `b_0 = 1`, `b_n = -sum_{i=1}^n a_i b_{n-i}`.
    pub fn inverse(&self, ring: &BurnsideRing) -> Result<Self> {
        let mut inv = vec![ring.zero(); self.cap + 1];
        inv[0] = ring.one();
        for n in 1..=self.cap {
            let mut acc = ring.zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() || inv[n - i].is_zero() {
                    continue;
                }
                acc = acc.try_add(&ring.mul(&self.coeffs[i], &inv[n - i])?)?;
            }
            inv[n] = acc.try_neg()?;
        }
        Ok(Self {
            cap: self.cap,
            coeffs: inv,
        })
    }

    pub fn is_one(&self, ring: &BurnsideRing) -> bool {
        self.coeffs[0] == ring.one() && self.coeffs[1..].iter().all(BurnsideElement::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;
    use std::sync::Arc;

    #[test]
    fn inverse_of_one_plus_t() {
        let r = BurnsideRing::new(Arc::new(named_group("C2").unwrap())).unwrap();
        let s = TruncatedSeries::new(&r, 4, vec![r.one(), r.one()]).unwrap();
        let inv = s.inverse(&r).unwrap();
        for k in 0..=4 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(k), &r.one().try_scale(sign).unwrap());
        }
        assert!(s.mul(&inv, &r).unwrap().is_one(&r));
        assert_eq!(
            s.pow(3, &r).unwrap().coeff(2),
            &r.one().try_scale(3).unwrap()
        );
    }

    #[test]
    fn constant_term_is_checked() {
        let r = BurnsideRing::new(Arc::new(named_group("C2").unwrap())).unwrap();
        assert!(TruncatedSeries::new(&r, 2, vec![r.zero()]).is_err());
    }
}
