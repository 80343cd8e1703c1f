//! Degree-0 and degree-1 G-theory: `G_0` by generators and relations,
//! `G_1(G_+)` from the orbit splitting, the degree-0 Cartan map with its
//! cokernel `Wh_0`, and the simple-factor count of `F_q[G]`.
//!
//! `G_1` uses `G(G_+) = V_K Sigma^inf BW_G(K)_+` over subgroup classes `K`.
//! Each summand splits off a sphere, and degree-1 stable Hurewicz gives
//! `pi_1(Sigma^inf BW_+) = pi_1(S) + H_1(BW) = Z/2 + W^ab`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::f1::{are_isomorphic, invariant_signature, FiniteModule, MonoidRef};
use crate::group::FiniteGroup;
use crate::snf::{cokernel, cokernel_sparse, invariant_factors_of_cyclic_sum, SparseRow};

type Signature = Vec<(usize, usize, usize)>;

/// Default cap on complete action tables examined by [`g0_presentation`].
pub const DEFAULT_ENUMERATION_CAP: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    #[serde(rename = "stable at bound")]
    StableAtBound,
    #[serde(rename = "bounded approximation")]
    BoundedApproximation,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::StableAtBound => "stable at bound",
            Stability::BoundedApproximation => "bounded approximation",
        })
    }
}

/// A finitely generated abelian group `Z^free_rank + sum Z/torsion_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupReport {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_interpretation: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Option<Stability>,
}

impl AbelianGroupReport {
    pub fn new(free_rank: usize, torsion: Vec<i64>, provenance: impl Into<String>) -> Self {
        Self {
            free_rank,
            torsion,
            provenance: provenance.into(),
            basis_interpretation: None,
            stability: None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Torsion factors exceed 1 and each divides the next.
    pub fn is_well_formed(&self) -> bool {
        self.torsion.iter().all(|&d| d > 1) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }
}

impl fmt::Display for AbelianGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for &d in &self.torsion {
            *counts.entry(d).or_default() += 1;
        }
        for (d, c) in counts {
            parts.push(if c == 1 {
                format!("Z/{d}")
            } else {
                format!("(Z/{d})^{c}")
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Generators (isomorphism classes up to the size bound) and relations
/// `[S] - [S'] - [S/S']`, one per enumerated cofibration.
#[derive(Debug, Clone)]
pub struct GrothendieckPresentation {
    pub size_bound: usize,
    pub generators: Vec<FiniteModule>,
    pub generator_labels: Vec<String>,
    pub relations: Vec<SparseRow>,
    pub report: AbelianGroupReport,
}

fn generator_label_for_group(ring: &BurnsideRing, x: &BurnsideElement) -> String {
    let parts: Vec<String> = x
        .coeffs()
        .iter()
        .zip(ring.labels())
        .filter(|(&c, _)| c > 0)
        .map(|(&c, l)| if c == 1 { l } else { format!("{c}*{l}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Orbit-type vectors `x` with `|x| <= max_points`.
fn orbit_multisets(indices: &[i64], max_points: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; indices.len()];
    fn rec(i: usize, room: i64, indices: &[i64], current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == indices.len() {
            out.push(current.clone());
            return;
        }
        let mut c = 0;
        while c * indices[i] <= room {
            current[i] = c;
            rec(i + 1, room - c * indices[i], indices, current, out);
            c += 1;
        }
        current[i] = 0;
    }
    rec(0, max_points, indices, &mut current, &mut out);
    out
}

/// `G_0(M)` truncated at modules of at most `size_bound` elements
/// (basepoint included).
///
/// Over `G_+` every module is a pointed G-set, so the generators are the
/// orbit-type multisets and each relation splits off one orbit; for other
/// monoids action tables are enumerated (at most `enumeration_cap` of them)
/// and every split submodule gives a relation.
pub fn g0_presentation(
    m: &MonoidRef,
    size_bound: usize,
    enumeration_cap: usize,
) -> Result<GrothendieckPresentation> {
    if size_bound == 0 {
        return Err(Error::InvalidInput("size bound must be at least 1".into()));
    }
    match m.group() {
        Some(g) => g0_group_monoid(g, m, size_bound),
        None => g0_general(m, size_bound, enumeration_cap),
    }
}

fn g0_group_monoid(
    g: &Arc<FiniteGroup>,
    m: &MonoidRef,
    size_bound: usize,
) -> Result<GrothendieckPresentation> {
    let ring = BurnsideRing::new(g.clone())?;
    if **ring.monoid() != **m {
        return Err(Error::Internal(
            "group monoid does not match its group".into(),
        ));
    }
    let indices = ring.indices();
    let mut types = orbit_multisets(&indices, size_bound as i64 - 1);
    types.sort_by_key(|t| {
        (
            t.iter().zip(&indices).map(|(c, i)| c * i).sum::<i64>(),
            t.clone(),
        )
    });
    let index_of: HashMap<Vec<i64>, usize> = types
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let mut generators = Vec::with_capacity(types.len());
    let mut labels = Vec::with_capacity(types.len());
    let mut relations = Vec::new();
    for t in &types {
        let x = BurnsideElement::new(t.clone());
        let s = ring.realize(&x)?;
        labels.push(generator_label_for_group(&ring, &x));
        let gi = index_of[t];
        let mut split_types = HashSet::new();
        for orbit in s.orbits()? {
            let stab = s.stabilizer(orbit[0])?;
            let class = ring.class_of(&g.subgroup(stab)?)?;
            if !split_types.insert(class) {
                continue;
            }
            let mut elements = orbit.clone();
            elements.push(0);
            elements.sort_unstable();
            let (sub, inc) = s.submodule(&elements)?;
            let (quot, _) = inc.cofiber()?;
            let si = index_of[ring.decompose(&sub)?.coeffs()];
            let qi = index_of[ring.decompose(&quot)?.coeffs()];
            let mut row = SparseRow::new();
            for (idx, v) in [(gi, 1i64), (si, -1), (qi, -1)] {
                *row.entry(idx).or_default() += v;
            }
            relations.push(row);
        }
        if t.iter().all(|&c| c == 0) {
            // the split 0 -> 0 -> 0
            relations.push(SparseRow::from([(gi, -1)]));
        }
        generators.push(s);
    }
    let order: Vec<usize> = (0..types.len()).rev().collect();
    let (free_rank, torsion) = cokernel_sparse(&relations, types.len(), &order)?;
    let mut report = AbelianGroupReport::new(
        free_rank,
        torsion,
        format!("generators-relations bound={size_bound}"),
    );
    report.stability = Some(if free_rank == ring.rank() && report.torsion.is_empty() {
        Stability::StableAtBound
    } else {
        Stability::BoundedApproximation
    });
    Ok(GrothendieckPresentation {
        size_bound,
        generators,
        generator_labels: labels,
        relations,
        report,
    })
}

/// All action tables on `n` elements over `m`, by backtracking on the
/// constraint `x(ab) = (xa)b`.
fn action_tables(
    m: &MonoidRef,
    n: usize,
    cap: usize,
    found: &mut Vec<Vec<Vec<usize>>>,
) -> Result<()> {
    let ms = m.size();
    let mut act = vec![vec![usize::MAX; ms]; n];
    for (x, row) in act.iter_mut().enumerate() {
        row[0] = 0;
        row[1] = x;
    }
    for v in act[0].iter_mut() {
        *v = 0;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|x| (2..ms).map(move |a| (x, a))).collect();
    fn consistent(act: &[Vec<usize>], m: &MonoidRef) -> bool {
        let ms = m.size();
        for row in act {
            for a in 0..ms {
                let xa = row[a];
                if xa == usize::MAX {
                    continue;
                }
                for b in 0..ms {
                    let lhs = row[m.mul(a, b)];
                    let rhs = act[xa][b];
                    if lhs != usize::MAX && rhs != usize::MAX && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        act: &mut Vec<Vec<usize>>,
        m: &MonoidRef,
        n: usize,
        cap: usize,
        found: &mut Vec<Vec<Vec<usize>>>,
        start: usize,
    ) -> Result<()> {
        if i == cells.len() {
            if found.len() - start >= cap {
                return Err(Error::CapExceeded {
                    what: format!("action tables of size {n}"),
                    cap,
                });
            }
            found.push(act.clone());
            return Ok(());
        }
        let (x, a) = cells[i];
        for v in 0..n {
            act[x][a] = v;
            if consistent(act, m) {
                rec(i + 1, cells, act, m, n, cap, found, start)?;
            }
        }
        act[x][a] = usize::MAX;
        Ok(())
    }
    let start = found.len();
    rec(0, &cells, &mut act, m, n, cap, found, start)
}

fn g0_general(m: &MonoidRef, size_bound: usize, cap: usize) -> Result<GrothendieckPresentation> {
    let mut generators: Vec<FiniteModule> = Vec::new();
    let mut signatures: Vec<(usize, Signature)> = Vec::new();
    let mut examined = 0usize;
    for n in 1..=size_bound {
        let mut tables = Vec::new();
        action_tables(m, n, cap.saturating_sub(examined).max(1), &mut tables)?;
        examined += tables.len();
        if examined > cap {
            return Err(Error::CapExceeded {
                what: "candidate action tables".into(),
                cap,
            });
        }
        for t in tables {
            let s = FiniteModule::new(m.clone(), t)?;
            let sig = (s.size(), invariant_signature(&s));
            let mut duplicate = false;
            for (j, other) in signatures.iter().enumerate() {
                if *other == sig && are_isomorphic(&s, &generators[j])? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                generators.push(s);
                signatures.push(sig);
            }
        }
    }
    let lookup = |s: &FiniteModule| -> Result<usize> {
        let sig = (s.size(), invariant_signature(s));
        for (j, other) in signatures.iter().enumerate() {
            if *other == sig && are_isomorphic(s, &generators[j])? {
                return Ok(j);
            }
        }
        Err(Error::Internal(
            "cofibration term missing from generator list".into(),
        ))
    };
    let mut relations = Vec::new();
    for (gi, s) in generators.iter().enumerate() {
        for sub_elements in submodules(s) {
            let (sub, inc) = s.submodule(&sub_elements)?;
            if !inc.is_cofibration()? {
                continue;
            }
            let (quot, _) = inc.cofiber()?;
            let mut row = SparseRow::new();
            for (idx, v) in [(gi, 1i64), (lookup(&sub)?, -1), (lookup(&quot)?, -1)] {
                *row.entry(idx).or_default() += v;
            }
            row.retain(|_, v| *v != 0);
            relations.push(row);
        }
    }
    let order: Vec<usize> = (0..generators.len()).rev().collect();
    let (free_rank, torsion) = cokernel_sparse(&relations, generators.len(), &order)?;
    let mut report = AbelianGroupReport::new(
        free_rank,
        torsion,
        format!("generators-relations bound={size_bound}"),
    );
    report.stability = Some(Stability::BoundedApproximation);
    let labels = generators
        .iter()
        .enumerate()
        .map(|(i, s)| format!("size{}#{}", s.size(), i))
        .collect();
    Ok(GrothendieckPresentation {
        size_bound,
        generators,
        generator_labels: labels,
        relations,
        report,
    })
}

/// Every submodule (as a sorted element list containing 0).
fn submodules(s: &FiniteModule) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut seen = BTreeSet::new();
    // closures of subsets of the cyclic submodules
    let cyclic: Vec<Vec<usize>> = (1..n).map(|x| s.generated(&[x])).collect();
    let mut frontier = vec![vec![0usize]];
    seen.insert(vec![0usize]);
    while let Some(current) = frontier.pop() {
        for c in &cyclic {
            let mut merged: Vec<usize> = current.iter().chain(c.iter()).copied().collect();
            merged.sort_unstable();
            merged.dedup();
            if seen.insert(merged.clone()) {
                frontier.push(merged);
            }
        }
    }
    seen.into_iter().collect()
}

/// `G_1(G_+) = sum_K (Z/2 + W_G(K)^ab)` over subgroup classes.
pub fn g1_via_splitting(g: &FiniteGroup) -> Result<AbelianGroupReport> {
    let classes = g.classify_subgroups()?;
    let mut orders: Vec<i64> = Vec::new();
    let mut interpretation = Vec::new();
    for k in classes.representatives() {
        let w = g.weyl_group(k)?;
        let ab = w.abelianization()?;
        orders.push(2);
        let mut summary = vec!["Z/2".to_string()];
        for d in ab {
            if d != 1 {
                orders.push(d as i64);
                summary.push(format!("Z/{d}"));
            }
        }
        interpretation.push(format!("{}: {}", k.label(), summary.join(" + ")));
    }
    let (free_rank, torsion) = invariant_factors_of_cyclic_sum(&orders)?;
    let mut report = AbelianGroupReport::new(free_rank, torsion, "splitting formula");
    report.basis_interpretation = Some(interpretation);
    Ok(report)
}

/// The degree-0 Cartan map `Z -> A(G)` and its cokernel `Wh_0(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanZero {
    pub image: BurnsideElement,
    pub wh0: AbelianGroupReport,
}

pub fn cartan_zero(ring: &BurnsideRing) -> Result<CartanZero> {
    let image = ring.decompose(&FiniteModule::free(ring.monoid(), 1))?;
    let (free_rank, torsion) = cokernel(&[image.coeffs().to_vec()], ring.rank())?;
    let mut wh0 = AbelianGroupReport::new(free_rank, torsion, "snf");
    wh0.basis_interpretation = Some(ring.labels());
    Ok(CartanZero { image, wh0 })
}

/// `x [G/e]`.
pub fn mult_by_regular(ring: &BurnsideRing, x: &BurnsideElement) -> Result<BurnsideElement> {
    let regular = ring.decompose(&FiniteModule::free(ring.monoid(), 1))?;
    ring.mul(x, &regular)
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    let p = if q.is_multiple_of(p) { p } else { q };
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// Number of simple factors of `F_q[G]`: orbits of `x -> x^q` on the
/// conjugacy classes of `G`.
pub fn count_simple_factors(g: &FiniteGroup, q: u64) -> Result<usize> {
    if !is_prime_power(q) {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    if num_integer::gcd(q, g.order() as u64) != 1 {
        return Err(Error::NotCoprime {
            order: g.order(),
            q,
        });
    }
    let classes = g.conjugacy_classes();
    let mut class_of = vec![0usize; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let image: Vec<usize> = classes.iter().map(|c| class_of[g.pow(c[0], q)]).collect();
    let mut seen = vec![false; classes.len()];
    let mut orbits = 0;
    for start in 0..classes.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = image[c];
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f1::PointedMonoid;
    use crate::group::named_group;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(name).unwrap())
    }

    #[test]
    fn g0_of_f1_and_c2() {
        let p = g0_presentation(&PointedMonoid::f1(), 4, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!((p.report.free_rank, p.report.torsion.clone()), (1, vec![]));
        let c2 = PointedMonoid::group_monoid(&group("C2"));
        let p = g0_presentation(&c2, 5, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.report.free_rank, 2);
        assert_eq!(p.report.stability, Some(Stability::StableAtBound));
        let p = g0_presentation(&c2, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.report.free_rank, 0);
        let p = g0_presentation(&c2, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.report.stability, Some(Stability::BoundedApproximation));
    }

    #[test]
    fn g0_general_matches_group_route_on_c2() {
        // Same C2 table, forced through the table-enumeration path.
        let c2 = PointedMonoid::group_monoid(&group("C2"));
        for bound in 1..=5 {
            let general = g0_general(&c2, bound, DEFAULT_ENUMERATION_CAP).unwrap();
            let special = g0_presentation(&c2, bound, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(
                general.generators.len(),
                special.generators.len(),
                "bound {bound}"
            );
            assert_eq!(general.report.free_rank, special.report.free_rank);
            assert_eq!(general.report.torsion, special.report.torsion);
        }
    }

    #[test]
    fn g0_of_a_non_group_monoid() {
        let m =
            PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], None).unwrap();
        let p = g0_presentation(&m, 4, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.report.stability, Some(Stability::BoundedApproximation));
        assert!(p.report.is_well_formed());
        assert!(matches!(
            g0_presentation(&m, 6, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn g1_examples() {
        assert_eq!(g1_via_splitting(&group("C1")).unwrap().torsion, vec![2]);
        assert_eq!(g1_via_splitting(&group("C2")).unwrap().torsion, vec![2; 3]);
        assert_eq!(g1_via_splitting(&group("S3")).unwrap().torsion, vec![2; 6]);
        let c3 = g1_via_splitting(&group("C3")).unwrap();
        assert_eq!(c3.to_string(), "Z/2 + Z/6");
    }

    #[test]
    fn wh0_examples() {
        for (name, rank) in [("C1", 0), ("C2", 1), ("S3", 3)] {
            let ring = BurnsideRing::new(group(name)).unwrap();
            let c = cartan_zero(&ring).unwrap();
            assert_eq!(c.image, ring.basis(0));
            assert_eq!((c.wh0.free_rank, c.wh0.torsion.is_empty()), (rank, true));
        }
    }

    #[test]
    fn regular_multiplication() {
        let ring = BurnsideRing::new(group("C2")).unwrap();
        assert_eq!(mult_by_regular(&ring, &ring.one()).unwrap(), ring.basis(0));
        assert_eq!(
            mult_by_regular(&ring, &ring.basis(0)).unwrap().coeffs(),
            &[2, 0]
        );
    }

    #[test]
    fn simple_factors() {
        assert_eq!(count_simple_factors(&group("C3"), 2).unwrap(), 2);
        assert_eq!(count_simple_factors(&group("C4"), 5).unwrap(), 4);
        assert_eq!(count_simple_factors(&group("S3"), 7).unwrap(), 3);
        assert_eq!(count_simple_factors(&group("C1"), 2).unwrap(), 1);
        assert!(matches!(
            count_simple_factors(&group("S3"), 2),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            count_simple_factors(&group("C3"), 6),
            Err(Error::InvalidInput(_))
        ));
        let a = count_simple_factors(&group("C2"), 5).unwrap()
            * count_simple_factors(&group("C3"), 5).unwrap();
        assert_eq!(count_simple_factors(&group("C6"), 5).unwrap(), a);
        assert_eq!(count_simple_factors(&group("C2xC3"), 5).unwrap(), a);
    }
}
