//! Ordered and unordered k-subsets of pointed G-sets.

use std::collections::HashMap;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::f1::{FiniteModule, ModuleHom};
use crate::group::Subgroup;

/// Largest carrier (excluding the basepoint) built as an explicit module.
pub const MODULE_CARRIER_CAP: u64 = 200_000;

/// Largest number of k-subsets enumerated when decomposing.
pub const SUBSET_ENUMERATION_CAP: u64 = 2_000_000;

pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

pub fn falling_factorial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i))
}

fn require_group(s: &FiniteModule) -> Result<usize> {
    match s.monoid().group() {
        Some(g) => Ok(g.order()),
        None => Err(Error::NotGroupMonoid),
    }
}

/// Ranks `k`-subsets of `0..n` in colexicographic order.
struct Combinadic {
    table: Vec<Vec<u64>>,
}

impl Combinadic {
    fn new(n: usize, k: usize) -> Self {
        let table = (0..=n)
            .map(|m| {
                (0..=k)
                    .map(|j| binomial(m as u64, j as u64).unwrap_or(u64::MAX))
                    .collect()
            })
            .collect();
        Self { table }
    }

    fn rank(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.table[c][i + 1] as usize)
            .sum()
    }
}

/// Advances a sorted k-subset of `0..n` to its colex successor.
fn next_colex(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, v) in c.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}

fn image_sorted(s: &FiniteModule, subset: &[usize], g: usize, out: &mut Vec<usize>) {
    out.clear();
    out.extend(subset.iter().map(|&x| s.act(x + 1, g + 1) - 1));
    out.sort_unstable();
}

/// Orbit decomposition of the G-set of unordered `k`-subsets of `S \ {*}`,
/// without building the module. This is Siebeneicher's `lambda^k` on the
/// class of `s`.
pub fn subset_decomposition(
    ring: &BurnsideRing,
    s: &FiniteModule,
    k: usize,
) -> Result<BurnsideElement> {
    let order = require_group(s)?;
    if **s.monoid() != **ring.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let n = s.size() - 1;
    if k == 0 {
        return Ok(ring.one());
    }
    if k > n {
        return Ok(ring.zero());
    }
    let total = binomial(n as u64, k as u64)
        .filter(|&t| t <= SUBSET_ENUMERATION_CAP)
        .ok_or(Error::CapExceeded {
            what: format!("{k}-subsets of a {n}-element G-set"),
            cap: SUBSET_ENUMERATION_CAP as usize,
        })? as usize;
    let comb = Combinadic::new(n, k);
    let gens = ring.group().generators();
    let mut visited = vec![false; total];
    let mut coeffs = vec![0i64; ring.rank()];
    let mut current: Vec<usize> = (0..k).collect();
    let mut rank = 0usize;
    let mut img = Vec::with_capacity(k);
    let mut stack: Vec<Vec<usize>> = Vec::new();
    loop {
        if !visited[rank] {
            visited[rank] = true;
            stack.push(current.clone());
            while let Some(t) = stack.pop() {
                for &g in &gens {
                    image_sorted(s, &t, g, &mut img);
                    let r = comb.rank(&img);
                    if !visited[r] {
                        visited[r] = true;
                        stack.push(img.clone());
                    }
                }
            }
            let stab: Vec<usize> = (0..order)
                .filter(|&g| {
                    image_sorted(s, &current, g, &mut img);
                    img == current
                })
                .collect();
            coeffs[ring.class_of(&Subgroup::from_sorted_unchecked(stab))?] += 1;
        }
        if !next_colex(&mut current, n) {
            break;
        }
        rank += 1;
    }
    Ok(BurnsideElement::new(coeffs))
}

/// The G-module of unordered `k`-subsets plus a basepoint; subset with
/// colex rank `r` is element `r + 1`.
pub fn subset_module(s: &FiniteModule, k: usize) -> Result<FiniteModule> {
    let order = require_group(s)?;
    let n = s.size() - 1;
    if k == 0 {
        return Err(Error::InvalidInput("subset size must be positive".into()));
    }
    if k > n {
        return Ok(FiniteModule::zero(s.monoid()));
    }
    let total = binomial(n as u64, k as u64)
        .filter(|&t| t <= MODULE_CARRIER_CAP)
        .ok_or(Error::CapExceeded {
            what: format!("{k}-subset module of a {n}-element G-set"),
            cap: MODULE_CARRIER_CAP as usize,
        })? as usize;
    let comb = Combinadic::new(n, k);
    let mut action = vec![vec![0; order + 1]];
    let mut current: Vec<usize> = (0..k).collect();
    let mut img = Vec::with_capacity(k);
    for _ in 0..total {
        let mut row = vec![0; order + 1];
        for g in 0..order {
            image_sorted(s, &current, g, &mut img);
            row[g + 1] = comb.rank(&img) + 1;
        }
        action.push(row);
        next_colex(&mut current, n);
    }
    Ok(FiniteModule::from_trusted(s.monoid().clone(), action))
}

/// Lexicographically ordered list of ordered `k`-tuples of distinct
/// non-basepoint elements.
fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut tuple = Vec::with_capacity(k);
    let mut used = vec![false; n + 1];
    fn rec(
        n: usize,
        k: usize,
        tuple: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if tuple.len() == k {
            out.push(tuple.clone());
            return;
        }
        for x in 1..=n {
            if !used[x] {
                used[x] = true;
                tuple.push(x);
                rec(n, k, tuple, used, out);
                tuple.pop();
                used[x] = false;
            }
        }
    }
    rec(n, k, &mut tuple, &mut used, &mut out);
    out
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("diamond power must be positive".into()));
    }
    Ok(())
}

/// `diamond^k S`: ordered `k`-tuples of distinct non-basepoint elements with
/// the diagonal action, plus a basepoint. Tuples are numbered from 1 in
/// lexicographic order.
pub fn diamond(s: &FiniteModule, k: usize) -> Result<FiniteModule> {
    check_k(k)?;
    let order = require_group(s)?;
    let n = s.size() - 1;
    if k > n {
        return Ok(FiniteModule::zero(s.monoid()));
    }
    falling_factorial(n as u64, k as u64)
        .filter(|&t| t <= MODULE_CARRIER_CAP)
        .ok_or(Error::CapExceeded {
            what: format!("diamond power {k} of a {n}-element G-set"),
            cap: MODULE_CARRIER_CAP as usize,
        })?;
    let tuples = distinct_tuples(n, k);
    let index: HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i + 1))
        .collect();
    let mut action = vec![vec![0; order + 1]];
    let mut img = Vec::with_capacity(k);
    for t in &tuples {
        let mut row = vec![0; order + 1];
        for g in 0..order {
            img.clear();
            img.extend(t.iter().map(|&x| s.act(x, g + 1)));
            row[g + 1] = index[img.as_slice()];
        }
        action.push(row);
    }
    Ok(FiniteModule::from_trusted(s.monoid().clone(), action))
}

/// The tuple behind a non-basepoint element of `diamond(s, k)`.
pub fn diamond_tuple(s: &FiniteModule, k: usize, index: usize) -> Option<Vec<usize>> {
    let n = s.size() - 1;
    if index == 0 || k > n {
        return None;
    }
    distinct_tuples(n, k).into_iter().nth(index - 1)
}

/// For a chain of cofibrations `S_1 -> S_2 -> ... -> S_k` (given as the
/// `k - 1` maps), the image of `S_1 x ... x S_k` in `diamond^k S_k`: the
/// submodule generated by tuples whose `i`-th coordinate lies in the image
/// of `S_i`. Returns the submodule and its inclusion.
pub fn diamond_filtered(
    first: &FiniteModule,
    steps: &[ModuleHom],
) -> Result<(FiniteModule, ModuleHom)> {
    require_group(first)?;
    let mut current = first.clone();
    for (i, f) in steps.iter().enumerate() {
        if *f.source() != current {
            return Err(Error::InvalidInput(format!(
                "chain step {i} does not start at the previous module"
            )));
        }
        if !f.is_cofibration()? {
            return Err(Error::NotCofibration);
        }
        current = f.target().clone();
    }
    let last = current;
    let k = steps.len() + 1;
    // images[i] = image of S_{i+1} in S_k
    let mut images = Vec::with_capacity(k);
    for i in 0..k {
        let mut elems: Vec<usize> = if i == 0 {
            (0..first.size()).collect()
        } else {
            (0..steps[i - 1].target().size()).collect()
        };
        for f in &steps[i..] {
            elems = elems.iter().map(|&x| f.apply(x)).collect();
        }
        let mut member = vec![false; last.size()];
        for x in elems {
            member[x] = true;
        }
        images.push(member);
    }
    let full = diamond(&last, k)?;
    let n = last.size() - 1;
    let gens: Vec<usize> = if k > n {
        Vec::new()
    } else {
        distinct_tuples(n, k)
            .iter()
            .enumerate()
            .filter(|(_, t)| t.iter().enumerate().all(|(i, &x)| images[i][x]))
            .map(|(j, _)| j + 1)
            .collect()
    };
    let elements = full.generated(&gens);
    full.submodule(&elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f1::PointedMonoid;
    use crate::group::named_group;
    use std::sync::Arc;

    fn ring(name: &str) -> BurnsideRing {
        BurnsideRing::new(Arc::new(named_group(name).unwrap())).unwrap()
    }

    #[test]
    fn colex_ranks_are_consecutive() {
        let comb = Combinadic::new(6, 3);
        let mut c = vec![0, 1, 2];
        let mut r = 0;
        loop {
            assert_eq!(comb.rank(&c), r);
            if !next_colex(&mut c, 6) {
                break;
            }
            r += 1;
        }
        assert_eq!(r + 1, 20);
    }

    #[test]
    fn lambda_two_of_free_c2_orbits() {
        let c2 = ring("C2");
        let free = FiniteModule::free(c2.monoid(), 1);
        assert_eq!(
            subset_decomposition(&c2, &free, 2).unwrap().coeffs(),
            &[0, 1]
        );
        let two = FiniteModule::free(c2.monoid(), 2);
        assert_eq!(
            subset_decomposition(&c2, &two, 2).unwrap().coeffs(),
            &[2, 2]
        );
    }

    #[test]
    fn subset_module_matches_decomposition() {
        let s3 = ring("S3");
        let s = s3.realize(&BurnsideElement::new(vec![1, 0, 1, 1])).unwrap();
        for k in 1..=4 {
            let m = subset_module(&s, k).unwrap();
            assert_eq!(
                m.size() as u64 - 1,
                binomial(s.size() as u64 - 1, k as u64).unwrap()
            );
            assert_eq!(
                s3.decompose(&m).unwrap(),
                subset_decomposition(&s3, &s, k).unwrap()
            );
        }
    }

    #[test]
    fn diamond_sizes() {
        let c3 = ring("C3");
        let s = c3.realize(&BurnsideElement::new(vec![1, 0])).unwrap();
        assert_eq!(diamond(&s, 2).unwrap().size(), 7);
        assert_eq!(diamond(&s, 4).unwrap().size(), 1);
        let d1 = diamond(&s, 1).unwrap();
        assert!(crate::f1::are_isomorphic(&d1, &s).unwrap());
        assert!(diamond(&s, 0).is_err());
    }

    #[test]
    fn diamond_requires_group_monoid() {
        let m =
            PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], None).unwrap();
        assert_eq!(
            diamond(&FiniteModule::free(&m, 1), 1).unwrap_err(),
            Error::NotGroupMonoid
        );
    }

    #[test]
    fn filtered_diamond_of_wedge_chain() {
        let c2 = ring("C2");
        let one = FiniteModule::free(c2.monoid(), 1);
        let (two, left, _) = one.wedge(&one).unwrap();
        let (sub, inc) = diamond_filtered(&one, std::slice::from_ref(&left)).unwrap();
        let full = diamond(&two, 2).unwrap();
        assert_eq!(full.size(), 13);
        // first coordinate from the first free orbit, second anywhere else
        assert_eq!(sub.size(), 7);
        assert!(inc.is_injective());
        let (constant, _) = diamond_filtered(&two, &[ModuleHom::identity(&two)]).unwrap();
        assert_eq!(constant.size(), full.size());
        let zero = FiniteModule::zero(c2.monoid());
        let (z, _) = diamond_filtered(&zero, &[ModuleHom::from_zero(&two)]).unwrap();
        assert_eq!(z.size(), 1);
    }

    #[test]
    fn ordered_orbits_lie_over_unordered_orbits() {
        let s3 = ring("S3");
        let s = s3.realize(&BurnsideElement::new(vec![0, 1, 1, 0])).unwrap();
        let d = diamond(&s, 2).unwrap();
        for orbit in d.orbits().unwrap() {
            let rep = orbit[0];
            let mut set = diamond_tuple(&s, 2, rep).unwrap();
            set.sort_unstable();
            let set_stab: Vec<usize> = s3
                .group()
                .elements()
                .filter(|&g| {
                    let mut img: Vec<usize> = set.iter().map(|&x| s.act(x, g + 1)).collect();
                    img.sort_unstable();
                    img == set
                })
                .collect();
            let tuple_stab = d.stabilizer(rep).unwrap();
            assert!(tuple_stab.iter().all(|g| set_stab.contains(g)));
        }
    }
}
