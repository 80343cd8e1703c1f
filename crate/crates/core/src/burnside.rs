//! The Burnside ring `A(G)`, identified with `G_0(G_+)`.
//!
//! The basis is the canonical list of conjugacy classes of subgroups; the
//! ring structure is computed in ghost coordinates through the table of
//! marks and pulled back by exact triangular back-substitution.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f1::{FiniteModule, MonoidRef, PointedMonoid};
use crate::group::{FiniteGroup, Subgroup, SubgroupClassification};

/// An element of `A(G)`: integer coefficients on the canonical basis
/// `[G/H_0], [G/H_1], ...`. Negative coefficients are virtual classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BurnsideElement {
    coeffs: Vec<i64>,
}

impl BurnsideElement {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![0; rank],
        }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Splits `x = a - b` with `a`, `b` effective and disjointly supported.
    pub fn effective_parts(&self) -> (BurnsideElement, BurnsideElement) {
        let pos = self.coeffs.iter().map(|&c| c.max(0)).collect();
        let neg = self.coeffs.iter().map(|&c| (-c).max(0)).collect();
        (Self { coeffs: pos }, Self { coeffs: neg })
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(i64, i64) -> Option<i64>,
        ctx: &'static str,
    ) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::InvalidInput(format!(
                "{ctx}: elements of different Burnside rings"
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(ctx)))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, i64::checked_add, "Burnside addition")
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, i64::checked_sub, "Burnside subtraction")
    }

    pub fn try_neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(Error::Overflow("Burnside negation")))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn try_scale(&self, k: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).ok_or(Error::Overflow("Burnside scaling")))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// JSON form `{"basis": [labels], "coeffs": [int]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideElementJson {
    pub basis: Vec<String>,
    pub coeffs: Vec<i64>,
}

/// Table of marks: `entries[i][j] = |(G/H_i)^{H_j}|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarksMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl MarksMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.entries[i][i]).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().skip(i + 1).all(|&v| v == 0))
    }

    /// CSV with a header row of class labels; rows in canonical order.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut out = String::new();
        out.push_str(&labels.join(","));
        out.push('\n');
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct BurnsideRing {
    group: Arc<FiniteGroup>,
    monoid: MonoidRef,
    classes: SubgroupClassification,
    marks: MarksMatrix,
    /// Right coset spaces `H_i \ G` of the class representatives.
    coset_spaces: Vec<FiniteModule>,
    unit_index: usize,
}

impl BurnsideRing {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        let monoid = PointedMonoid::group_monoid(&group);
        let classes = group.classify_subgroups()?;
        let coset_spaces: Vec<FiniteModule> = classes
            .representatives()
            .map(|h| coset_space(&group, &monoid, h))
            .collect();
        let r = classes.len();
        let mut entries = vec![vec![0i64; r]; r];
        for (i, space) in coset_spaces.iter().enumerate() {
            for (j, k) in classes.representatives().enumerate() {
                let fixed = (1..space.size())
                    .filter(|&c| k.elements().iter().all(|&g| space.act(c, g + 1) == c))
                    .count();
                entries[i][j] = fixed as i64;
            }
        }
        let marks = MarksMatrix { entries };
        if !marks.is_lower_triangular() {
            return Err(Error::Internal(
                "table of marks is not lower-triangular in canonical order".into(),
            ));
        }
        if marks.diagonal().iter().any(|&d| d <= 0) {
            return Err(Error::Internal(
                "table of marks has a non-positive diagonal entry".into(),
            ));
        }
        let unit_index = classes
            .class_of(&group.whole())
            .ok_or_else(|| Error::Internal("whole group missing from subgroup classes".into()))?;
        Ok(Self {
            group,
            monoid,
            classes,
            marks,
            coset_spaces,
            unit_index,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `G_+`, the monoid every realized G-set lives over.
    pub fn monoid(&self) -> &MonoidRef {
        &self.monoid
    }

    pub fn classes(&self) -> &SubgroupClassification {
        &self.classes
    }

    pub fn marks(&self) -> &MarksMatrix {
        &self.marks
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.labels()
    }

    pub fn zero(&self) -> BurnsideElement {
        BurnsideElement::zero(self.rank())
    }

    /// `[G/G]`, the one-point G-set.
    pub fn one(&self) -> BurnsideElement {
        self.basis(self.unit_index)
    }

    pub fn basis(&self, i: usize) -> BurnsideElement {
        BurnsideElement::basis(self.rank(), i)
    }

    /// Index of the class of the trivial subgroup (always 0).
    pub fn trivial_class(&self) -> usize {
        0
    }

    /// `[G : H_i]` for each class.
    pub fn indices(&self) -> Vec<i64> {
        self.classes
            .representatives()
            .map(|h| (self.group.order() / h.order()) as i64)
            .collect()
    }

    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        self.classes.class_of(h).ok_or_else(|| {
            Error::NotSubgroup(format!(
                "{:?} is not a subgroup of the ring's group",
                h.elements()
            ))
        })
    }

    /// `H_i \ G` as a `G_+`-module.
    pub fn coset_space(&self, i: usize) -> Result<FiniteModule> {
        self.coset_spaces
            .get(i)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no basis class {i}")))
    }

    fn check(&self, x: &BurnsideElement) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "element has {} coefficients, ring has rank {}",
                x.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Ghost coordinates: `phi_K(x) = sum_H x_H |(G/H)^K|`.
    pub fn marks_of(&self, x: &BurnsideElement) -> Result<Vec<i64>> {
        self.check(x)?;
        let r = self.rank();
        (0..r)
            .map(|k| {
                (0..r).try_fold(0i64, |acc, h| {
                    let term = x.coeffs[h]
                        .checked_mul(self.marks.entries[h][k])
                        .ok_or(Error::Overflow("marks"))?;
                    acc.checked_add(term).ok_or(Error::Overflow("marks"))
                })
            })
            .collect()
    }

    /// Inverse of [`marks_of`](Self::marks_of) by back-substitution on the
    /// upper-triangular transpose; fails if the ghost vector is not in the
    /// image of `A(G)`.
    pub fn from_marks(&self, ghost: &[i64]) -> Result<BurnsideElement> {
        let r = self.rank();
        if ghost.len() != r {
            return Err(Error::InvalidInput("ghost vector has wrong length".into()));
        }
        let mut x = vec![0i64; r];
        for k in (0..r).rev() {
            let mut rest = ghost[k];
            for h in (k + 1)..r {
                let term = x[h]
                    .checked_mul(self.marks.entries[h][k])
                    .ok_or(Error::Overflow("marks solve"))?;
                rest = rest
                    .checked_sub(term)
                    .ok_or(Error::Overflow("marks solve"))?;
            }
            let d = self.marks.entries[k][k];
            if rest % d != 0 {
                return Err(Error::Internal(format!(
                    "ghost vector {ghost:?} is not integral at class {k}"
                )));
            }
            x[k] = rest / d;
        }
        Ok(BurnsideElement::new(x))
    }

    /// Product of G-sets with the diagonal action, via ghost coordinates.
    pub fn mul(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
        let (gx, gy) = (self.marks_of(x)?, self.marks_of(y)?);
        let prod: Vec<i64> = gx
            .iter()
            .zip(&gy)
            .map(|(a, b)| a.checked_mul(*b).ok_or(Error::Overflow("ghost product")))
            .collect::<Result<_>>()?;
        self.from_marks(&prod)
    }

    pub fn pow(&self, x: &BurnsideElement, e: u32) -> Result<BurnsideElement> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Orbit decomposition of a `G_+`-module: each orbit contributes the
    /// class of its stabilizer.
    pub fn decompose(&self, s: &FiniteModule) -> Result<BurnsideElement> {
        if !s.monoid().is_group_monoid() {
            return Err(Error::NotGroupMonoid);
        }
        if **s.monoid() != *self.monoid {
            return Err(Error::MonoidMismatch);
        }
        let mut coeffs = vec![0i64; self.rank()];
        for orbit in s.orbits()? {
            let stab = Subgroup::from_sorted_unchecked(s.stabilizer(orbit[0])?);
            let c = self.class_of(&stab)?;
            coeffs[c] += 1;
        }
        Ok(BurnsideElement::new(coeffs))
    }

    /// The G-set `sum_i x_i [G/H_i]` as a wedge of coset spaces, classes in
    /// canonical order. Requires an effective element.
    pub fn realize(&self, x: &BurnsideElement) -> Result<FiniteModule> {
        self.check(x)?;
        if !x.is_effective() {
            return Err(Error::InvalidInput(format!(
                "cannot realize virtual element {x}"
            )));
        }
        let mut out = FiniteModule::zero(&self.monoid);
        for (i, &c) in x.coeffs().iter().enumerate() {
            for _ in 0..c {
                out = out.wedge(&self.coset_spaces[i])?.0;
            }
        }
        Ok(out)
    }

    /// Number of non-basepoint elements of the realized G-set (may be
    /// negative for virtual elements).
    pub fn cardinality(&self, x: &BurnsideElement) -> Result<i64> {
        self.check(x)?;
        x.coeffs
            .iter()
            .zip(self.indices())
            .try_fold(0i64, |acc, (&c, idx)| {
                acc.checked_add(c.checked_mul(idx).ok_or(Error::Overflow("cardinality"))?)
                    .ok_or(Error::Overflow("cardinality"))
            })
    }

    pub fn element_json(&self, x: &BurnsideElement) -> BurnsideElementJson {
        BurnsideElementJson {
            basis: self.labels(),
            coeffs: x.coeffs.clone(),
        }
    }

    pub fn element_from_json(&self, j: &BurnsideElementJson) -> Result<BurnsideElement> {
        if j.basis != self.labels() {
            return Err(Error::InvalidInput(
                "element basis does not match this group's canonical basis".into(),
            ));
        }
        let x = BurnsideElement::new(j.coeffs.clone());
        self.check(&x)?;
        Ok(x)
    }

    /// A sum of at most `max_orbits` random transitive G-sets, each orbit
    /// class chosen uniformly.
    pub fn random_effective<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_orbits: usize,
    ) -> BurnsideElement {
        let mut coeffs = vec![0i64; self.rank()];
        for _ in 0..rng.gen_range(0..=max_orbits) {
            coeffs[rng.gen_range(0..self.rank())] += 1;
        }
        BurnsideElement::new(coeffs)
    }

    /// A random effective G-set with at most `max_size` non-basepoint
    /// elements.
    pub fn random_effective_bounded<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_size: i64,
    ) -> BurnsideElement {
        let indices = self.indices();
        let mut coeffs = vec![0i64; self.rank()];
        let mut room = max_size;
        let target = rng.gen_range(0..=max_size);
        while room > 0 && max_size - room < target {
            let fits: Vec<usize> = (0..self.rank()).filter(|&i| indices[i] <= room).collect();
            if fits.is_empty() {
                break;
            }
            let i = fits[rng.gen_range(0..fits.len())];
            coeffs[i] += 1;
            room -= indices[i];
        }
        BurnsideElement::new(coeffs)
    }

    /// `a - b` for independent random `a`, `b` of at most `max_orbits`
    /// orbits each.
    pub fn random_virtual<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_orbits: usize,
    ) -> BurnsideElement {
        let a = self.random_effective(rng, max_orbits);
        let b = self.random_effective(rng, max_orbits);
        a.try_sub(&b).expect("small coefficients")
    }
}

/// Right cosets `H x`, numbered from 1 in order of least element; the coset
/// `H` itself is element 1.
pub(crate) fn coset_space(group: &FiniteGroup, monoid: &MonoidRef, h: &Subgroup) -> FiniteModule {
    let n = group.order();
    let mut coset_of = vec![0usize; n];
    let mut count = 0;
    for x in group.elements() {
        if coset_of[x] != 0 {
            continue;
        }
        count += 1;
        for &k in h.elements() {
            coset_of[group.mul(k, x)] = count;
        }
    }
    let mut reps = vec![0usize; count + 1];
    for x in group.elements().rev() {
        reps[coset_of[x]] = x;
    }
    let mut action = vec![vec![0; n + 1]];
    for &rep in reps.iter().skip(1) {
        let mut row = vec![0; n + 1];
        for g in group.elements() {
            row[g + 1] = coset_of[group.mul(rep, g)];
        }
        action.push(row);
    }
    FiniteModule::from_trusted(monoid.clone(), action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f1::diagonal_smash;
    use crate::group::named_group;

    fn ring(name: &str) -> BurnsideRing {
        BurnsideRing::new(Arc::new(named_group(name).unwrap())).unwrap()
    }

    #[test]
    fn marks_of_small_groups() {
        assert_eq!(ring("C2").marks().entries, vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(ring("C1").marks().entries, vec![vec![1]]);
        let s3 = ring("S3");
        assert_eq!(s3.rank(), 4);
        assert_eq!(s3.marks().diagonal(), vec![6, 1, 2, 1]);
    }

    #[test]
    fn decompose_examples() {
        let s3 = ring("S3");
        assert_eq!(
            s3.decompose(&FiniteModule::zero(s3.monoid())).unwrap(),
            s3.zero()
        );
        assert_eq!(
            s3.decompose(&FiniteModule::free(s3.monoid(), 1)).unwrap(),
            s3.basis(0)
        );
        let five = s3
            .coset_space(2)
            .unwrap()
            .wedge(&s3.coset_space(3).unwrap())
            .unwrap()
            .0;
        assert_eq!(five.size(), 4);
        assert_eq!(s3.decompose(&five).unwrap().coeffs(), &[0, 0, 1, 1]);
    }

    #[test]
    fn decompose_rejects_general_monoids() {
        let s3 = ring("S3");
        let m =
            PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], None).unwrap();
        assert_eq!(
            s3.decompose(&FiniteModule::free(&m, 1)).unwrap_err(),
            Error::NotGroupMonoid
        );
    }

    #[test]
    fn products() {
        let c2 = ring("C2");
        let free = c2.basis(0);
        assert_eq!(c2.mul(&free, &free).unwrap().coeffs(), &[2, 0]);
        assert_eq!(c2.mul(&free, &c2.one()).unwrap(), free);
        assert_eq!(c2.marks_of(&free).unwrap(), vec![2, 0]);
        assert_eq!(c2.marks_of(&c2.one()).unwrap(), vec![1, 1]);
    }

    #[test]
    fn product_matches_diagonal_smash_on_basis() {
        for name in ["S3", "D4", "Q8", "C6", "A4"] {
            let r = ring(name);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let s = diagonal_smash(&r.coset_space(i).unwrap(), &r.coset_space(j).unwrap())
                        .unwrap();
                    assert_eq!(
                        r.decompose(&s).unwrap(),
                        r.mul(&r.basis(i), &r.basis(j)).unwrap(),
                        "{name} {i} {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn burnside_counting_and_determinant() {
        for name in ["S3", "D4", "A4", "Q8", "C12", "D6"] {
            let r = ring(name);
            let idx = r.indices();
            for i in 0..r.rank() {
                assert_eq!(r.marks().entries[i][0], idx[i]);
            }
            // Weyl group orders sit on the diagonal.
            for (i, h) in r.classes().representatives().enumerate() {
                assert_eq!(
                    r.marks().entries[i][i],
                    r.group().weyl_group(h).unwrap().order() as i64
                );
            }
        }
    }

    #[test]
    fn non_integral_ghost_vectors_are_rejected() {
        let c2 = ring("C2");
        assert!(matches!(c2.from_marks(&[1, 0]), Err(Error::Internal(_))));
    }

    #[test]
    fn csv_export() {
        let c2 = ring("C2");
        let csv = c2.marks().to_csv(&c2.labels());
        assert_eq!(csv, "order1_rep0,order2_rep0-1\n2,0\n1,1\n");
    }
}
