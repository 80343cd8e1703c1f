use std::collections::{HashMap, HashSet};

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::snf;

/// Exhaustive subgroup enumeration is refused above this order.
pub const EXHAUSTIVE_SUBGROUP_CAP: usize = 64;

/// A subgroup, held as its sorted element indices in the parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the sorted element list, which is its index in
    /// [`FiniteGroup::subgroup_as_group`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// Canonical sort key: order first, then the element list.
    fn key(&self) -> (usize, &[usize]) {
        (self.elements.len(), &self.elements)
    }

    /// Label used in exported tables, e.g. `order2_rep0-3`.
    pub fn label(&self) -> String {
        let els: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        format!("order{}_rep{}", self.order(), els.join("-"))
    }
}

/// One conjugacy class of subgroups, members in canonical order; the
/// representative is the first member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn representative(&self) -> &Subgroup {
        &self.members[0]
    }

    pub fn order(&self) -> usize {
        self.members[0].order()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Conjugacy classes of subgroups in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClassification {
    pub classes: Vec<SubgroupClass>,
    class_of: HashMap<Vec<usize>, usize>,
}

impl SubgroupClassification {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of a subgroup given by its sorted element list.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.class_of.get(h.elements()).copied()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().map(|c| c.representative())
    }

    pub fn labels(&self) -> Vec<String> {
        self.representatives().map(|h| h.label()).collect()
    }
}

impl FiniteGroup {
    /// All subgroups, duplicate-free, in canonical order.
    ///
    /// Cyclic extension: start from the trivial subgroup and repeatedly
    /// adjoin one element outside the current subgroup. Every subgroup is
    /// reached along some chain of one-element extensions.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order() > EXHAUSTIVE_SUBGROUP_CAP {
            return Err(Error::CapExceeded {
                what: format!("subgroup enumeration for order {}", self.order()),
                cap: EXHAUSTIVE_SUBGROUP_CAP,
            });
        }
        let mut found: HashSet<Subgroup> = HashSet::new();
        let trivial = self.trivial_subgroup();
        found.insert(trivial.clone());
        let mut layer = vec![trivial];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for h in &layer {
                // <H, g> depends only on the coset Hg, so one element per
                // coset suffices.
                let mut covered = vec![false; self.order()];
                for &x in h.elements() {
                    covered[x] = true;
                }
                for g in self.elements() {
                    if covered[g] {
                        continue;
                    }
                    for &x in h.elements() {
                        covered[self.mul(x, g)] = true;
                    }
                    let mut gens = h.elements().to_vec();
                    gens.push(g);
                    let k = self.closure(&gens);
                    if found.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            layer = next;
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| a.key().cmp(&b.key()));
        Ok(all)
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut els: Vec<usize> = h.elements().iter().map(|&x| self.conj(g, x)).collect();
        els.sort_unstable();
        Subgroup::from_sorted_unchecked(els)
    }

    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.order() == b.order() && self.elements().any(|g| self.conjugate_subgroup(g, a) == *b)
    }

    pub fn classify_subgroups(&self) -> Result<SubgroupClassification> {
        let all = self.all_subgroups()?;
        let index: HashMap<&[usize], usize> = all
            .iter()
            .enumerate()
            .map(|(i, h)| (h.elements(), i))
            .collect();
        let mut assigned = vec![usize::MAX; all.len()];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for (i, h) in all.iter().enumerate() {
            if assigned[i] != usize::MAX {
                continue;
            }
            let mut member_idx: Vec<usize> = self
                .elements()
                .map(|g| index[self.conjugate_subgroup(g, h).elements()])
                .collect();
            member_idx.sort_unstable();
            member_idx.dedup();
            for &m in &member_idx {
                assigned[m] = classes.len();
            }
            classes.push(SubgroupClass {
                members: member_idx.iter().map(|&m| all[m].clone()).collect(),
            });
        }
        let class_of = all
            .iter()
            .enumerate()
            .map(|(i, h)| (h.elements().to_vec(), assigned[i]))
            .collect();
        Ok(SubgroupClassification { classes, class_of })
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let els = self
            .elements()
            .filter(|&g| self.conjugate_subgroup(g, h) == *h)
            .collect();
        Subgroup::from_sorted_unchecked(els)
    }

    /// `N_G(H)/H` as a Cayley table on cosets.
    pub fn weyl_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        let h = self.subgroup(h.elements().to_vec())?;
        let n = self.normalizer(&h);
        let n_group = self.subgroup_as_group(&n);
        let h_in_n = Subgroup::from_sorted_unchecked(
            h.elements()
                .iter()
                .map(|&x| n.position(x).expect("H lies in its normalizer"))
                .collect(),
        );
        let (w, _) = n_group.quotient(&h_in_n)?;
        Ok(w)
    }

    /// Subgroup generated by all commutators `a b a^{-1} b^{-1}`.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut comms: Vec<usize> = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                comms.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// Invariant factors `d_1 | d_2 | ...` (each > 1) of `G/[G,G]`.
    ///
    /// The quotient is presented on all of its elements with relations
    /// `e_a + e_b - e_ab`, then reduced by Smith normal form.
    pub fn abelianization(&self) -> Result<Vec<u64>> {
        let (q, _) = self.quotient(&self.commutator_subgroup())?;
        let n = q.order();
        let mut rows = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in a..n {
                let mut row = vec![0i64; n];
                row[a] += 1;
                row[b] += 1;
                row[q.mul(a, b)] -= 1;
                rows.push(row);
            }
        }
        let (free, torsion) = snf::cokernel(&rows, n)?;
        if free != 0 {
            return Err(Error::Internal(
                "finite abelian quotient presented with a free part".into(),
            ));
        }
        Ok(torsion.into_iter().map(|d| d as u64).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::named_group;
    use super::*;

    /// Every subset that is closed under the product, by power-set scan.
    fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u32..(1 << n))
            .filter(|mask| {
                mask & 1 == 1
                    && (0..n).all(|a| {
                        mask >> a & 1 == 0
                            || (0..n).all(|b| mask >> b & 1 == 0 || mask >> g.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn subgroup_counts_match_power_set_scan() {
        for name in [
            "C1", "C4", "S3", "V4", "Q8", "D4", "C6", "A4", "D5", "C12", "D6",
        ] {
            let g = named_group(name).unwrap();
            let all = g.all_subgroups().unwrap();
            assert_eq!(all.len(), brute_force_subgroup_count(&g), "{name}");
            for h in &all {
                g.subgroup(h.elements().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn known_subgroup_and_class_counts() {
        let s3 = named_group("S3").unwrap();
        assert_eq!(s3.all_subgroups().unwrap().len(), 6);
        let cls = s3.classify_subgroups().unwrap();
        let sizes: Vec<(usize, usize)> = cls.classes.iter().map(|c| (c.order(), c.len())).collect();
        assert_eq!(sizes, vec![(1, 1), (2, 3), (3, 1), (6, 1)]);
        assert_eq!(named_group("C4").unwrap().all_subgroups().unwrap().len(), 3);
        assert_eq!(named_group("C1").unwrap().all_subgroups().unwrap().len(), 1);
        assert_eq!(
            named_group("Q8")
                .unwrap()
                .classify_subgroups()
                .unwrap()
                .len(),
            6
        );
        let v4 = named_group("V4").unwrap();
        assert_eq!(
            v4.classify_subgroups().unwrap().len(),
            v4.all_subgroups().unwrap().len()
        );
    }

    #[test]
    fn weyl_groups() {
        let s3 = named_group("S3").unwrap();
        let cls = s3.classify_subgroups().unwrap();
        let orders: Vec<usize> = cls
            .representatives()
            .map(|h| s3.weyl_group(h).unwrap().order())
            .collect();
        assert_eq!(orders, vec![6, 1, 2, 1]);
        let w = s3.weyl_group(&s3.trivial_subgroup()).unwrap();
        assert!(super::super::find_isomorphism(&w, &s3).is_some());
    }

    #[test]
    fn weyl_rejects_non_subgroups() {
        let c4 = named_group("C4").unwrap();
        assert!(c4
            .weyl_group(&Subgroup::from_sorted_unchecked(vec![0, 1]))
            .is_err());
    }

    #[test]
    fn abelianizations() {
        assert_eq!(
            named_group("S3").unwrap().abelianization().unwrap(),
            vec![2]
        );
        assert_eq!(
            named_group("Q8").unwrap().abelianization().unwrap(),
            vec![2, 2]
        );
        assert_eq!(
            named_group("C6").unwrap().abelianization().unwrap(),
            vec![6]
        );
        assert_eq!(
            named_group("V4").unwrap().abelianization().unwrap(),
            vec![2, 2]
        );
        assert_eq!(
            named_group("A4").unwrap().abelianization().unwrap(),
            vec![3]
        );
        assert_eq!(
            named_group("C1").unwrap().abelianization().unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn normalizer_divisibility() {
        for name in ["S3", "D4", "A4", "Q8", "S4"] {
            let g = named_group(name).unwrap();
            for h in g.all_subgroups().unwrap() {
                let n = g.normalizer(&h);
                assert_eq!(n.order() % h.order(), 0);
                assert_eq!(g.order() % n.order(), 0);
            }
        }
    }
}
