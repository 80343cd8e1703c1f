//! Finite groups stored as Cayley tables, their subgroups, conjugacy classes
//! of subgroups, Weyl groups and abelianizations.

mod library;
mod perm;
mod subgroup;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use library::{named_group, LIBRARY_NAMES};
pub use perm::{parse_cycles, Permutation};
pub use subgroup::{Subgroup, SubgroupClass, SubgroupClassification};

/// Default refusal threshold for permutation closures.
pub const DEFAULT_ORDER_CAP: usize = 1024;

/// Exhaustive associativity checking stops here; larger tables are sampled.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

/// A finite group as a Cayley table. Element `0` is always the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
    name: Option<String>,
}

impl FiniteGroup {
    /// Validates an explicit Cayley table. If the identity is not element 0
    /// the table is relabelled by swapping it into place.
    pub fn from_table(cayley: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Cayley table".into()));
        }
        for (i, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatinSquare(format!(
                    "row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            if !is_permutation(row) {
                return Err(Error::NotLatinSquare(format!(
                    "row {i} is not a permutation"
                )));
            }
        }
        for j in 0..n {
            let col: Vec<usize> = cayley.iter().map(|r| r[j]).collect();
            if !is_permutation(&col) {
                return Err(Error::NotLatinSquare(format!(
                    "column {j} is not a permutation"
                )));
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != n {
                return Err(Error::InvalidInput("label count differs from order".into()));
            }
        }
        check_associative(&cayley)?;
        let id = (0..n)
            .find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x))
            .ok_or_else(|| Error::InvalidInput("table has no two-sided identity".into()))?;
        let (cayley, labels) = if id == 0 {
            (cayley, labels)
        } else {
            let swap = |x: usize| {
                if x == 0 {
                    id
                } else if x == id {
                    0
                } else {
                    x
                }
            };
            let table = (0..n)
                .map(|a| (0..n).map(|b| swap(cayley[swap(a)][swap(b)])).collect())
                .collect();
            let labels = labels.map(|mut l| {
                l.swap(0, id);
                l
            });
            (table, labels)
        };
        Ok(Self::from_trusted_table(cayley, labels))
    }

    /// Builds from a table already known to be a group with identity 0.
    pub(crate) fn from_trusted_table(cayley: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Self {
        let order = cayley.len();
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| cayley[a][b] == 0)
                .expect("Latin square row contains identity");
        }
        Self {
            order,
            cayley,
            inverse,
            labels,
            name: None,
        }
    }

    /// Closure of a set of permutations of `degree` points.
    ///
    /// Elements are numbered in breadth-first order from the identity.
    /// The product `a * b` applies `a` first, then `b`.
    pub fn from_permutations(
        degree: usize,
        gens: &[Permutation],
        order_cap: usize,
    ) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} does not act on {degree} points"
                )));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in gens {
                let next = current.then(g);
                if !index.contains_key(&next) {
                    if elements.len() >= order_cap {
                        return Err(Error::CapExceeded {
                            what: "permutation group closure".into(),
                            cap: order_cap,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let cayley = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.then(b)]).collect())
            .collect();
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Ok(Self::from_trusted_table(cayley, Some(labels)))
    }

    /// Cyclic group of order `n` with `g^i` numbered `i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        let cayley = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("g^{i}")
                }
            })
            .collect();
        Ok(Self::from_trusted_table(cayley, Some(labels)).with_name(format!("C{n}")))
    }

    /// Direct product; the pair `(a, b)` is numbered `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let cayley = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        let labels = (0..m * n)
            .map(|x| format!("({},{})", g.label(x / n), h.label(x % n)))
            .collect();
        let name = match (&g.name, &h.name) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        let mut out = Self::from_trusted_table(cayley, Some(labels));
        out.name = name;
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g a g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes of elements, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in self.elements() {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|g| self.conj(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elements = vec![0];
        let mut frontier = 0;
        while frontier < elements.len() {
            let a = elements[frontier];
            frontier += 1;
            for &g in gens {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    elements.push(b);
                }
            }
        }
        Subgroup::from_sorted_unchecked({
            elements.sort_unstable();
            elements
        })
    }

    /// A generating set chosen greedily: each element of highest order not
    /// yet in the span of the previous ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for a in by_order {
            if span.order() == self.order {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Quotient by a normal subgroup. Cosets are labelled by their least
    /// element and numbered in increasing order of that label.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotSubgroup(
                "quotient by a non-normal subgroup".into(),
            ));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in self.elements() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for &h in normal.elements() {
                coset_of[self.mul(a, h)] = idx;
            }
        }
        let cayley = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let labels = reps
            .iter()
            .map(|&r| format!("{}N", self.label(r)))
            .collect();
        Ok((
            FiniteGroup::from_trusted_table(cayley, Some(labels)),
            coset_of,
        ))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements()
            .all(|g| h.elements().iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// Checks closure and the identity, and returns the element set as a
    /// subgroup.
    pub fn subgroup(&self, elements: Vec<usize>) -> Result<Subgroup> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= self.order) {
            return Err(Error::NotSubgroup("element index out of range".into()));
        }
        let h = Subgroup::from_sorted_unchecked(elements);
        if !h.contains(0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for &a in h.elements() {
            if !h.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!(
                    "not closed under inverse at {a}"
                )));
            }
            for &b in h.elements() {
                if !h.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "not closed under product {a}*{b}"
                    )));
                }
            }
        }
        if !self.order.is_multiple_of(h.order()) {
            return Err(Error::Internal("Lagrange violated".into()));
        }
        Ok(h)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(vec![0])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.elements().collect())
    }

    /// The subgroup as a group in its own right, numbered by position in
    /// the sorted element list (so the identity stays at 0).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let pos: HashMap<usize, usize> = h
            .elements()
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        let cayley = h
            .elements()
            .iter()
            .map(|&a| h.elements().iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        let labels = h.elements().iter().map(|&x| self.label(x)).collect();
        FiniteGroup::from_trusted_table(cayley, Some(labels))
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter()
        .all(|&x| x < row.len() && !std::mem::replace(&mut seen[x], true))
}

fn check_associative(t: &[Vec<usize>]) -> Result<()> {
    let n = t.len();
    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        if t[t[a][b]][c] != t[a][t[b][c]] {
            Err(Error::NotAssociative(a, b, c))
        } else {
            Ok(())
        }
    };
    if n <= EXHAUSTIVE_ASSOCIATIVITY {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200_000 {
            check(
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            )?;
        }
    }
    Ok(())
}

/// Backtracking isomorphism test on generator images. Returns the image of
/// every element of `g` when an isomorphism exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    // Greedy generating set of g.
    let mut gens = Vec::new();
    let mut span = g.closure(&[]);
    for a in g.elements() {
        if !span.contains(a) {
            gens.push(a);
            span = g.closure(&gens);
        }
    }
    let mut images = vec![0usize; gens.len()];
    search_iso(g, h, &gens, &mut images, 0)
}

fn search_iso(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &mut [usize],
    k: usize,
) -> Option<Vec<usize>> {
    if k == gens.len() {
        return extend_hom(g, h, gens, images);
    }
    let want = g.element_order(gens[k]);
    for cand in h.elements() {
        if h.element_order(cand) != want {
            continue;
        }
        images[k] = cand;
        if let Some(m) = search_iso(g, h, gens, images, k + 1) {
            return Some(m);
        }
    }
    None
}

/// Extends generator images to a full map if that map is a bijective
/// homomorphism.
fn extend_hom(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = vec![0];
    while let Some(a) = queue.pop() {
        for (i, &s) in gens.iter().enumerate() {
            let b = g.mul(a, s);
            let img = h.mul(map[a], images[i]);
            if map[b] == usize::MAX {
                map[b] = img;
                queue.push(b);
            } else if map[b] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; h.order()];
    for &m in &map {
        if m == usize::MAX || std::mem::replace(&mut hit[m], true) {
            return None;
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}
