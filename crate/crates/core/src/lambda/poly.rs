//! Integer multivariate polynomials and the universal polynomials `P_k`,
//! `P_{k,l}` of a lambda-ring, computed by expanding elementary symmetric
//! functions of formal line elements and eliminating leading terms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::scalar::{self, Integer};

pub const MAX_VARS: usize = 16;

/// Exponent vector; variable 0 is the most significant in lex order.
pub type Monomial = [u8; MAX_VARS];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Integer> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    let mut out = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i]
            .checked_add(b[i])
            .ok_or(Error::Overflow("monomial exponent"))?;
    }
    Ok(out)
}

impl<C: Integer> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term([0; MAX_VARS], c)
            .expect("adding to zero cannot overflow");
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = [0u8; MAX_VARS];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(m, C::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(m).or_insert_with(C::zero);
        *entry = scalar::add(entry, &c, "polynomial addition")?;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let neg = c
                .checked_neg()
                .ok_or(Error::Overflow("polynomial negation"))?;
            out.add_term(*m, neg)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &C) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, scalar::mul(c, k, "polynomial scaling")?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.nvars.max(other.nvars));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mono_mul(a, b)?, scalar::mul(ca, cb, "polynomial product")?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Greatest term in lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
    }

    /// Evaluates in any commutative ring described by `ops`.
    pub fn evaluate<R: EvalRing>(&self, ops: &R, values: &[R::Elem]) -> Result<R::Elem> {
        if values.len() < self.nvars {
            return Err(Error::InvalidInput(
                "too few values for polynomial evaluation".into(),
            ));
        }
        let mut acc = ops.zero();
        let mut powers: HashMap<(usize, u8), R::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term =
                ops.from_int(c.to_i64().ok_or(Error::Overflow("coefficient to i64"))?)?;
            for (i, &e) in m.iter().enumerate().take(self.nvars) {
                if e == 0 {
                    continue;
                }
                let p = match powers.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let mut p = ops.one();
                        for _ in 0..e {
                            p = ops.mul(&p, &values[i])?;
                        }
                        powers.insert((i, e), p.clone());
                        p
                    }
                };
                term = ops.mul(&term, &p)?;
            }
            acc = ops.add(&acc, &term)?;
        }
        Ok(acc)
    }
}

/// A commutative ring in which polynomials can be evaluated.
pub trait EvalRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, c: i64) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

impl EvalRing for BurnsideRing {
    type Elem = BurnsideElement;

    fn zero(&self) -> BurnsideElement {
        BurnsideRing::zero(self)
    }

    fn one(&self) -> BurnsideElement {
        BurnsideRing::one(self)
    }

    fn from_int(&self, c: i64) -> Result<BurnsideElement> {
        BurnsideRing::one(self).try_scale(c)
    }

    fn add(&self, a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
        a.try_add(b)
    }

    fn mul(&self, a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
        BurnsideRing::mul(self, a, b)
    }
}

/// Checked `i128` arithmetic.
pub struct Integers;

impl EvalRing for Integers {
    type Elem = i128;

    fn zero(&self) -> i128 {
        0
    }

    fn one(&self) -> i128 {
        1
    }

    fn from_int(&self, c: i64) -> Result<i128> {
        Ok(c as i128)
    }

    fn add(&self, a: &i128, b: &i128) -> Result<i128> {
        a.checked_add(*b)
            .ok_or(Error::Overflow("integer evaluation"))
    }

    fn mul(&self, a: &i128, b: &i128) -> Result<i128> {
        a.checked_mul(*b)
            .ok_or(Error::Overflow("integer evaluation"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolynomialKind {
    /// `lambda^k(xy) = P_k(lambda^1 x, .., lambda^k x, lambda^1 y, .., lambda^k y)`
    Product { k: usize },
    /// `lambda^k(lambda^l x) = P_{k,l}(lambda^1 x, .., lambda^{kl} x)`
    Composition { k: usize, l: usize },
}

/// Largest `k` accepted for either kind, and largest `l`.
pub const MAX_K: usize = 4;
pub const MAX_L: usize = 3;
/// Largest `k * l` for the symbolic composition expansion.
pub const MAX_COMPOSITION_WEIGHT: usize = 9;

/// A universal polynomial in the formal variables `lambda^i(x)` (and
/// `lambda^j(y)` for the product rule).
///
/// For `Product { k }` variable `i - 1` is `lambda^i(x)` and variable
/// `k + j - 1` is `lambda^j(y)`; for `Composition { k, l }` variable `i - 1`
/// is `lambda^i(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalPolynomial<C: Integer = i64> {
    kind: PolynomialKind,
    poly: MultiPoly<C>,
}

impl<C: Integer> UniversalPolynomial<C> {
    pub fn kind(&self) -> PolynomialKind {
        self.kind
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    /// Number of `lambda^i(x)` variables.
    pub fn x_vars(&self) -> usize {
        match self.kind {
            PolynomialKind::Product { k } => k,
            PolynomialKind::Composition { k, l } => k * l,
        }
    }

    fn var_name(&self, i: usize) -> String {
        match self.kind {
            PolynomialKind::Product { k } if i >= k => format!("L{}y", i - k + 1),
            _ => format!("L{}x", i + 1),
        }
    }

    /// Evaluates with `x_lambda[i] = lambda^i(x)` (index 0 unused) and,
    /// for the product rule, `y_lambda[j] = lambda^j(y)`.
    pub fn evaluate<R: EvalRing>(
        &self,
        ops: &R,
        x_lambda: &[R::Elem],
        y_lambda: &[R::Elem],
    ) -> Result<R::Elem> {
        let nx = self.x_vars();
        if x_lambda.len() <= nx {
            return Err(Error::InvalidInput(format!(
                "need lambda^1..lambda^{nx} of x"
            )));
        }
        let mut values: Vec<R::Elem> = x_lambda[1..=nx].to_vec();
        if let PolynomialKind::Product { k } = self.kind {
            if y_lambda.len() <= k {
                return Err(Error::InvalidInput(format!(
                    "need lambda^1..lambda^{k} of y"
                )));
            }
            values.extend_from_slice(&y_lambda[1..=k]);
        }
        self.poly.evaluate(ops, &values)
    }
}

impl<C: Integer> fmt::Display for UniversalPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms().iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.var_name(i)
                    } else {
                        format!("{}^{}", self.var_name(i), e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join(" "))?;
            } else {
                write!(f, "{abs} {}", factors.join(" "))?;
            }
        }
        Ok(())
    }
}

fn check_kind(kind: PolynomialKind) -> Result<()> {
    let cap = |what: String, cap: usize| Err(Error::CapExceeded { what, cap });
    match kind {
        PolynomialKind::Product { k } if k > MAX_K => cap(format!("product rule P_{k}"), MAX_K),
        PolynomialKind::Composition { k, .. } if k > MAX_K => {
            cap(format!("composition rule with k = {k}"), MAX_K)
        }
        PolynomialKind::Composition { l, .. } if l > MAX_L => {
            cap(format!("composition rule with l = {l}"), MAX_L)
        }
        PolynomialKind::Composition { k, l } if k * l > MAX_COMPOSITION_WEIGHT => cap(
            format!("composition rule P_{{{k},{l}}} (weight {})", k * l),
            MAX_COMPOSITION_WEIGHT,
        ),
        _ => Ok(()),
    }
}

/// Coefficient of `t^k` in `prod_i (1 + t f_i)`.
fn elementary_of<C: Integer>(
    factors: &[MultiPoly<C>],
    k: usize,
    nvars: usize,
) -> Result<MultiPoly<C>> {
    let mut by_degree: Vec<MultiPoly<C>> = vec![MultiPoly::zero(nvars); k + 1];
    by_degree[0] = MultiPoly::one(nvars);
    for f in factors {
        for d in (1..=k).rev() {
            let shifted = by_degree[d - 1].mul(f)?;
            by_degree[d] = by_degree[d].add(&shifted)?;
        }
    }
    Ok(by_degree.swap_remove(k))
}

/// `e_i` of the variables `offset .. offset + m`.
fn elementary_in_vars<C: Integer>(
    nvars: usize,
    offset: usize,
    m: usize,
    i: usize,
) -> Result<MultiPoly<C>> {
    let vars: Vec<MultiPoly<C>> = (offset..offset + m)
        .map(|v| MultiPoly::var(nvars, v))
        .collect();
    elementary_of(&vars, i, nvars)
}

/// Rewrites `f`, symmetric in each family of `m` consecutive variables,
/// as a polynomial in the elementary symmetric functions of the families.
/// Output variable `fam * m + i - 1` stands for `e_i` of family `fam`.
fn express_in_elementary<C: Integer>(
    f: &MultiPoly<C>,
    families: usize,
    m: usize,
) -> Result<MultiPoly<C>> {
    let nvars = families * m;
    let mut elementary: Vec<Vec<MultiPoly<C>>> = Vec::with_capacity(families);
    for fam in 0..families {
        elementary.push(
            (1..=m)
                .map(|i| elementary_in_vars(nvars, fam * m, m, i))
                .collect::<Result<_>>()?,
        );
    }
    let mut power_cache: HashMap<(usize, usize, u8), MultiPoly<C>> = HashMap::new();
    let mut rest = f.clone();
    let mut out = MultiPoly::zero(nvars);
    while let Some((lead, c)) = rest.leading_term() {
        let (lead, c) = (*lead, c.clone());
        let mut target = [0u8; MAX_VARS];
        let mut product = MultiPoly::one(nvars);
        for fam in 0..families {
            let a = &lead[fam * m..(fam + 1) * m];
            for i in 0..m {
                let next = if i + 1 < m { a[i + 1] } else { 0 };
                if a[i] < next {
                    return Err(Error::Internal(
                        "leading exponent is not a partition: input is not symmetric".into(),
                    ));
                }
                let e = a[i] - next;
                target[fam * m + i] = e;
                if e > 0 {
                    let key = (fam, i, e);
                    if let std::collections::hash_map::Entry::Vacant(slot) = power_cache.entry(key)
                    {
                        slot.insert(elementary[fam][i].pow(e as u32)?);
                    }
                    product = product.mul(&power_cache[&key])?;
                }
            }
        }
        rest = rest.sub(&product.scale(&c)?)?;
        out.add_term(target, c)?;
    }
    Ok(out)
}

/// Substitutes `e_i` of each family back into a polynomial in elementary
/// symmetric functions.
fn substitute_elementary<C: Integer>(
    p: &MultiPoly<C>,
    families: usize,
    m: usize,
) -> Result<MultiPoly<C>> {
    let nvars = families * m;
    let mut values = Vec::with_capacity(nvars);
    for fam in 0..families {
        for i in 1..=m {
            values.push(elementary_in_vars(nvars, fam * m, m, i)?);
        }
    }
    let mut acc = MultiPoly::zero(nvars);
    for (mono, c) in p.terms() {
        let mut term = MultiPoly::constant(nvars, c.clone());
        for (v, &e) in mono.iter().enumerate().take(nvars) {
            if e > 0 {
                term = term.mul(&values[v].pow(e as u32)?)?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `e_k` of products of formal line elements, in the original variables.
fn line_element_expansion<C: Integer>(
    kind: PolynomialKind,
) -> Result<(MultiPoly<C>, usize, usize)> {
    match kind {
        PolynomialKind::Product { k } => {
            let m = k;
            let nvars = 2 * m;
            let mut products = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    products.push(MultiPoly::var(nvars, i).mul(&MultiPoly::var(nvars, m + j))?);
                }
            }
            Ok((elementary_of(&products, k, nvars)?, 2, m))
        }
        PolynomialKind::Composition { k, l } => {
            let m = k * l;
            let subsets = l_subset_monomials::<C>(m, l)?;
            Ok((elementary_of(&subsets, k, m)?, 1, m))
        }
    }
}

fn l_subset_monomials<C: Integer>(m: usize, l: usize) -> Result<Vec<MultiPoly<C>>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec<C: Integer>(
        m: usize,
        l: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<MultiPoly<C>>,
    ) -> Result<()> {
        if chosen.len() == l {
            let mut p = MultiPoly::one(m);
            for &v in chosen.iter() {
                p = p.mul(&MultiPoly::var(m, v))?;
            }
            out.push(p);
            return Ok(());
        }
        for v in start..m {
            chosen.push(v);
            rec(m, l, v + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    rec(m, l, 0, &mut chosen, &mut out)?;
    Ok(out)
}

fn elementary_values(xs: &[i128], n: usize) -> Result<Vec<i128>> {
    let mut e = vec![0i128; n + 1];
    e[0] = 1;
    for &x in xs {
        for d in (1..=n).rev() {
            let t = e[d - 1]
                .checked_mul(x)
                .ok_or(Error::Overflow("specialization"))?;
            e[d] = e[d]
                .checked_add(t)
                .ok_or(Error::Overflow("specialization"))?;
        }
    }
    Ok(e)
}

/// Numeric identity check with `m + 1` random integer line elements per
/// family, so the test is not confined to the variable count used in the
/// derivation.
fn numeric_check<C: Integer>(up: &UniversalPolynomial<C>, trials: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..trials {
        match up.kind {
            PolynomialKind::Product { k } => {
                let n = k + 1;
                let xs: Vec<i128> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let ys: Vec<i128> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let prods: Vec<i128> = xs
                    .iter()
                    .flat_map(|a| ys.iter().map(move |b| a * b))
                    .collect();
                let expected = elementary_values(&prods, k)?[k];
                let got = up.evaluate(
                    &Integers,
                    &elementary_values(&xs, k)?,
                    &elementary_values(&ys, k)?,
                )?;
                if got != expected {
                    return Err(Error::Internal(format!(
                        "P_{k} fails specialization at x = {xs:?}, y = {ys:?}"
                    )));
                }
            }
            PolynomialKind::Composition { k, l } => {
                let n = k * l + 1;
                let xs: Vec<i128> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                let mut monos = Vec::new();
                let mut idx: Vec<usize> = (0..l).collect();
                loop {
                    monos.push(idx.iter().map(|&i| xs[i]).product::<i128>());
                    if !next_combination(&mut idx, n) {
                        break;
                    }
                }
                let expected = elementary_values(&monos, k)?[k];
                let got = up.evaluate(&Integers, &elementary_values(&xs, k * l)?, &[])?;
                if got != expected {
                    return Err(Error::Internal(format!(
                        "P_{{{k},{l}}} fails specialization at x = {xs:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Computes `P_k` or `P_{k,l}` symbolically and verifies it both by
/// substituting back and by numeric specialization.
pub fn universal_polynomial_in<C: Integer>(kind: PolynomialKind) -> Result<UniversalPolynomial<C>> {
    check_kind(kind)?;
    let trivial = match kind {
        PolynomialKind::Product { k: 0 } | PolynomialKind::Composition { k: 0, .. } => Some(0),
        PolynomialKind::Composition { l: 0, k } => Some(k),
        _ => None,
    };
    if let Some(n) = trivial {
        // lambda^0 of anything is 1; lambda^k(lambda^0 x) = lambda^k(1).
        let poly = if n == 0 || n == 1 {
            MultiPoly::one(0)
        } else {
            MultiPoly::zero(0)
        };
        return Ok(UniversalPolynomial { kind, poly });
    }
    let (expansion, families, m) = line_element_expansion::<C>(kind)?;
    let poly = express_in_elementary(&expansion, families, m)?;
    if substitute_elementary(&poly, families, m)? != expansion {
        return Err(Error::Internal(
            "universal polynomial does not re-specialize".into(),
        ));
    }
    let up = UniversalPolynomial { kind, poly };
    numeric_check(&up, 8)?;
    Ok(up)
}

pub fn universal_polynomial(kind: PolynomialKind) -> Result<UniversalPolynomial<i64>> {
    universal_polynomial_in(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[(usize, u8)]) -> Monomial {
        let mut m = [0u8; MAX_VARS];
        for &(i, e) in exps {
            m[i] = e;
        }
        m
    }

    #[test]
    fn p1_and_p2() {
        let p1 = universal_polynomial(PolynomialKind::Product { k: 1 }).unwrap();
        assert_eq!(p1.to_string(), "L1x L1y");
        let p2 = universal_polynomial(PolynomialKind::Product { k: 2 }).unwrap();
        // vars: 0 = L1x, 1 = L2x, 2 = L1y, 3 = L2y
        let mut expected = BTreeMap::new();
        expected.insert(mono(&[(0, 2), (3, 1)]), 1i64);
        expected.insert(mono(&[(2, 2), (1, 1)]), 1);
        expected.insert(mono(&[(1, 1), (3, 1)]), -2);
        assert_eq!(p2.poly().terms(), &expected);
    }

    #[test]
    fn composition_with_e1() {
        for l in 1..=3 {
            let p = universal_polynomial(PolynomialKind::Composition { k: 1, l }).unwrap();
            assert_eq!(p.poly().terms().len(), 1);
            assert_eq!(
                p.poly().terms().keys().next().unwrap(),
                &mono(&[(l - 1, 1)])
            );
        }
    }

    #[test]
    fn p_2_2_known_form() {
        // lambda^2(lambda^2 x) = L1x L3x - L4x
        let p = universal_polynomial(PolynomialKind::Composition { k: 2, l: 2 }).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(mono(&[(0, 1), (2, 1)]), 1i64);
        expected.insert(mono(&[(3, 1)]), -1);
        assert_eq!(p.poly().terms(), &expected);
    }

    #[test]
    fn wide_coefficients_agree() {
        let a = universal_polynomial_in::<i64>(PolynomialKind::Product { k: 3 }).unwrap();
        let b = universal_polynomial_in::<i128>(PolynomialKind::Product { k: 3 }).unwrap();
        let converted: BTreeMap<Monomial, i64> = b
            .poly()
            .terms()
            .iter()
            .map(|(m, c)| (*m, *c as i64))
            .collect();
        assert_eq!(a.poly().terms(), &converted);
    }

    #[test]
    fn caps() {
        assert!(matches!(
            universal_polynomial(PolynomialKind::Product { k: 5 }),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            universal_polynomial(PolynomialKind::Composition { k: 2, l: 4 }),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn non_symmetric_input_is_detected() {
        let f = MultiPoly::<i64>::var(2, 1);
        assert!(matches!(
            express_in_elementary(&f, 1, 2),
            Err(Error::Internal(_))
        ));
    }
}
