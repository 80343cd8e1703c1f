use std::collections::BTreeSet;

use super::monoid::MonoidRef;
use super::search::{Injectivity, MapSearch};
use crate::error::{Error, Result};

/// A finite pointed set with a right action of a pointed monoid. Element 0
/// is the basepoint; `action[s][m]` is `s m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    monoid: MonoidRef,
    action: Vec<Vec<usize>>,
}

impl FiniteModule {
    pub fn new(monoid: MonoidRef, action: Vec<Vec<usize>>) -> Result<Self> {
        let size = action.len();
        let bad = |m: String| Err(Error::InvalidModule(m));
        if size == 0 {
            return bad("a module contains at least its basepoint".into());
        }
        let ms = monoid.size();
        for (s, row) in action.iter().enumerate() {
            if row.len() != ms {
                return bad(format!("row {s} has {} entries, expected {ms}", row.len()));
            }
            if row.iter().any(|&x| x >= size) {
                return bad(format!("row {s} has out-of-range entries"));
            }
            if row[1] != s {
                return bad(format!("unit does not fix {s}"));
            }
            if row[0] != 0 {
                return bad(format!("zero does not send {s} to the basepoint"));
            }
        }
        if action[0].iter().any(|&x| x != 0) {
            return bad("basepoint is not absorbing".into());
        }
        for s in 0..size {
            for m in 0..ms {
                for n in 0..ms {
                    if action[action[s][m]][n] != action[s][monoid.mul(m, n)] {
                        return bad(format!("(s m) n != s (m n) at s={s}, m={m}, n={n}"));
                    }
                }
            }
        }
        Ok(Self { monoid, action })
    }

    pub(crate) fn from_trusted(monoid: MonoidRef, action: Vec<Vec<usize>>) -> Self {
        debug_assert!(Self::new(monoid.clone(), action.clone()).is_ok());
        Self { monoid, action }
    }

    /// The one-point module `{*}`.
    pub fn zero(monoid: &MonoidRef) -> Self {
        Self {
            monoid: monoid.clone(),
            action: vec![vec![0; monoid.size()]],
        }
    }

    /// Wedge of `rank` copies of `M` acting on itself. Copy `j`, element
    /// `a != 0` sits at index `1 + j (|M| - 1) + (a - 1)`.
    pub fn free(monoid: &MonoidRef, rank: usize) -> Self {
        let w = monoid.size() - 1;
        let mut action = vec![vec![0; monoid.size()]];
        for j in 0..rank {
            for a in 1..monoid.size() {
                let row = (0..monoid.size())
                    .map(|b| {
                        let ab = monoid.mul(a, b);
                        if ab == 0 {
                            0
                        } else {
                            1 + j * w + (ab - 1)
                        }
                    })
                    .collect();
                action.push(row);
            }
        }
        Self {
            monoid: monoid.clone(),
            action,
        }
    }

    /// A pointed set with `n` non-basepoints and the trivial action of a
    /// group monoid or `F_1` (every non-zero element acts as identity).
    pub fn trivial(monoid: &MonoidRef, n: usize) -> Result<Self> {
        let action = (0..=n)
            .map(|s| {
                (0..monoid.size())
                    .map(|m| if m == 0 || s == 0 { 0 } else { s })
                    .collect()
            })
            .collect();
        Self::new(monoid.clone(), action)
    }

    pub fn monoid(&self) -> &MonoidRef {
        &self.monoid
    }

    /// Carrier size, basepoint included.
    pub fn size(&self) -> usize {
        self.action.len()
    }

    #[inline]
    pub fn act(&self, s: usize, m: usize) -> usize {
        self.action[s][m]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn same_monoid(&self, other: &FiniteModule) -> bool {
        std::sync::Arc::ptr_eq(&self.monoid, &other.monoid) || *self.monoid == *other.monoid
    }

    /// Smallest submodule containing `gens` (and the basepoint), sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut stack: Vec<usize> = gens.to_vec();
        while let Some(s) = stack.pop() {
            if std::mem::replace(&mut seen[s], true) && s != 0 {
                continue;
            }
            for m in 0..self.monoid.size() {
                let t = self.act(s, m);
                if !seen[t] {
                    stack.push(t);
                }
            }
        }
        (0..self.size()).filter(|&s| seen[s]).collect()
    }

    /// An irredundant generating set: no member lies in the submodule
    /// generated by the others.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..self.size()).collect();
        order.sort_by_key(|&s| (std::cmp::Reverse(self.generated(&[s]).len()), s));
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = vec![false; self.size()];
        covered[0] = true;
        for s in order {
            if !covered[s] {
                gens.push(s);
                for t in self.generated(&[s]) {
                    covered[t] = true;
                }
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let rest: Vec<usize> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &g)| g)
                .collect();
            if self.generated(&rest).binary_search(&gens[i]).is_ok() {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        gens.sort_unstable();
        gens
    }

    /// Restriction of the action to a submodule given as a sorted element
    /// list containing 0; elements are renumbered by position.
    pub fn submodule(&self, elements: &[usize]) -> Result<(FiniteModule, ModuleHom)> {
        if elements.first() != Some(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "submodule must be a sorted list starting at the basepoint".into(),
            ));
        }
        let pos = |x: usize| elements.binary_search(&x).ok();
        let mut action = Vec::with_capacity(elements.len());
        for &s in elements {
            let row: Option<Vec<usize>> = (0..self.monoid.size())
                .map(|m| pos(self.act(s, m)))
                .collect();
            action.push(row.ok_or_else(|| {
                Error::InvalidModule("subset is not closed under the action".into())
            })?);
        }
        let sub = FiniteModule::from_trusted(self.monoid.clone(), action);
        let inc = ModuleHom::from_trusted(sub.clone(), self.clone(), elements.to_vec());
        Ok((sub, inc))
    }

    /// Coproduct `S v T` with its two inclusions. `S` keeps its indices; the
    /// non-basepoints of `T` follow.
    pub fn wedge(&self, other: &FiniteModule) -> Result<(FiniteModule, ModuleHom, ModuleHom)> {
        if !self.same_monoid(other) {
            return Err(Error::MonoidMismatch);
        }
        let off = self.size() - 1;
        let shift = |t: usize| if t == 0 { 0 } else { t + off };
        let mut action = self.action.clone();
        for t in 1..other.size() {
            action.push(other.action[t].iter().map(|&x| shift(x)).collect());
        }
        let w = FiniteModule::from_trusted(self.monoid.clone(), action);
        let left = ModuleHom::from_trusted(self.clone(), w.clone(), (0..self.size()).collect());
        let right = ModuleHom::from_trusted(
            other.clone(),
            w.clone(),
            (0..other.size()).map(shift).collect(),
        );
        Ok((w, left, right))
    }

    /// Transports the action along a relabelling `perm` (old index to new
    /// index) that fixes the basepoint.
    pub fn relabel(&self, perm: &[usize]) -> Result<(FiniteModule, ModuleHom)> {
        if perm.len() != self.size() || perm[0] != 0 {
            return Err(Error::InvalidInput(
                "relabelling must fix the basepoint".into(),
            ));
        }
        let mut inv = vec![usize::MAX; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            if new >= perm.len() || inv[new] != usize::MAX {
                return Err(Error::InvalidInput("relabelling is not a bijection".into()));
            }
            inv[new] = old;
        }
        let action = (0..self.size())
            .map(|new| self.action[inv[new]].iter().map(|&x| perm[x]).collect())
            .collect();
        let out = FiniteModule::from_trusted(self.monoid.clone(), action);
        let iso = ModuleHom::from_trusted(self.clone(), out.clone(), perm.to_vec());
        Ok((out, iso))
    }

    /// Orbits of the non-basepoints under a group monoid, each sorted and
    /// listed by least element.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        if !self.monoid.is_group_monoid() {
            return Err(Error::NotGroupMonoid);
        }
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for s in 1..self.size() {
            if seen[s] {
                continue;
            }
            let mut orbit: Vec<usize> = (1..self.monoid.size()).map(|g| self.act(s, g)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &t in &orbit {
                seen[t] = true;
            }
            out.push(orbit);
        }
        Ok(out)
    }

    /// Stabilizer of `s` as a sorted list of group element indices (the
    /// monoid index minus one). Group monoids only.
    pub fn stabilizer(&self, s: usize) -> Result<Vec<usize>> {
        if !self.monoid.is_group_monoid() {
            return Err(Error::NotGroupMonoid);
        }
        Ok((1..self.monoid.size())
            .filter(|&g| self.act(s, g) == s)
            .map(|g| g - 1)
            .collect())
    }
}

/// A pointed equivariant map `f(s m) = f(s) m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    source: FiniteModule,
    target: FiniteModule,
    map: Vec<usize>,
}

impl ModuleHom {
    pub fn new(source: FiniteModule, target: FiniteModule, map: Vec<usize>) -> Result<Self> {
        if !source.same_monoid(&target) {
            return Err(Error::MonoidMismatch);
        }
        let bad = |m: String| Err(Error::NotHomomorphism(m));
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return bad("map has wrong length or out-of-range images".into());
        }
        if map[0] != 0 {
            return bad("basepoint is not preserved".into());
        }
        for s in 0..source.size() {
            for m in 0..source.monoid().size() {
                if map[source.act(s, m)] != target.act(map[s], m) {
                    return bad(format!("not equivariant at s={s}, m={m}"));
                }
            }
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub(crate) fn from_trusted(
        source: FiniteModule,
        target: FiniteModule,
        map: Vec<usize>,
    ) -> Self {
        debug_assert!(Self::new(source.clone(), target.clone(), map.clone()).is_ok());
        Self {
            source,
            target,
            map,
        }
    }

    pub fn identity(s: &FiniteModule) -> Self {
        Self {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.size()).collect(),
        }
    }

    /// The map to the zero module.
    pub fn to_zero(s: &FiniteModule) -> Self {
        Self {
            source: s.clone(),
            target: FiniteModule::zero(s.monoid()),
            map: vec![0; s.size()],
        }
    }

    /// The map from the zero module.
    pub fn from_zero(s: &FiniteModule) -> Self {
        Self {
            source: FiniteModule::zero(s.monoid()),
            target: s.clone(),
            map: vec![0],
        }
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    /// `other . self`
    pub fn then(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.target != other.source {
            return Err(Error::InvalidInput(
                "composing maps whose ends do not match".into(),
            ));
        }
        Ok(Self::from_trusted(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&s| other.map[s]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    /// An equivariant retraction `r` with `r . f = id`, if one exists.
    ///
    /// The image is automatically closed under the action, so the
    /// quotient by it is always a valid module; the only question is the
    /// splitting.
    pub fn cofibration_witness(&self) -> Result<Option<ModuleHom>> {
        if !self.source.same_monoid(&self.target) {
            return Err(Error::MonoidMismatch);
        }
        if !self.is_injective() {
            return Ok(None);
        }
        let mut search = MapSearch::new(&self.target, &self.source, Injectivity::Any);
        for s in 0..self.source.size() {
            if !search.fix(self.map[s], s) {
                return Ok(None);
            }
        }
        let mut witness = None;
        search.run(&|_, _| true, &mut |r| {
            witness = Some(r.to_vec());
            true
        });
        Ok(witness.map(|r| ModuleHom::from_trusted(self.target.clone(), self.source.clone(), r)))
    }

    pub fn is_cofibration(&self) -> Result<bool> {
        Ok(self.cofibration_witness()?.is_some())
    }

    /// The cofibre `T / f(S)` with its projection, after checking that `f`
    /// is a cofibration. Surviving elements keep their relative order.
    pub fn cofiber(&self) -> Result<(FiniteModule, ModuleHom)> {
        if !self.is_cofibration()? {
            return Err(Error::NotCofibration);
        }
        Ok(self.collapse_image())
    }

    pub(crate) fn collapse_image(&self) -> (FiniteModule, ModuleHom) {
        let t = &self.target;
        let image = self.image();
        let mut proj = vec![0; t.size()];
        let mut next = 1;
        for (x, slot) in proj.iter_mut().enumerate() {
            if !image.contains(&x) {
                *slot = next;
                next += 1;
            }
        }
        let mut action = vec![vec![0; t.monoid().size()]; next];
        for x in 0..t.size() {
            if proj[x] != 0 {
                action[proj[x]] = (0..t.monoid().size()).map(|m| proj[t.act(x, m)]).collect();
            }
        }
        let q = FiniteModule::from_trusted(t.monoid().clone(), action);
        let p = ModuleHom::from_trusted(t.clone(), q.clone(), proj);
        (q, p)
    }
}

/// `T / f(S)` for a cofibration `f`.
pub fn quotient(inclusion: &ModuleHom) -> Result<FiniteModule> {
    Ok(inclusion.cofiber()?.0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::monoid::PointedMonoid;
    use super::*;
    use crate::group::named_group;

    fn gplus(name: &str) -> MonoidRef {
        PointedMonoid::group_monoid(&Arc::new(named_group(name).unwrap()))
    }

    #[test]
    fn free_module_sizes() {
        let f1 = PointedMonoid::f1();
        assert_eq!(FiniteModule::free(&f1, 1).size(), 2);
        let s3 = gplus("S3");
        assert_eq!(FiniteModule::free(&s3, 2).size(), 13);
        assert_eq!(FiniteModule::free(&s3, 0).size(), 1);
        FiniteModule::new(s3.clone(), FiniteModule::free(&s3, 2).action().to_vec()).unwrap();
    }

    #[test]
    fn pointed_set_inclusion_splits() {
        let f1 = PointedMonoid::f1();
        let a = FiniteModule::trivial(&f1, 1).unwrap();
        let ab = FiniteModule::trivial(&f1, 2).unwrap();
        let inc = ModuleHom::new(a, ab, vec![0, 1]).unwrap();
        let r = inc.cofibration_witness().unwrap().expect("splits");
        assert_eq!(r.map(), &[0, 1, 0]);
        let q = quotient(&inc).unwrap();
        assert_eq!(q.size(), 2);
    }

    #[test]
    fn identity_quotient_is_zero() {
        let m = FiniteModule::free(&gplus("C3"), 2);
        let q = quotient(&ModuleHom::identity(&m)).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn free_rank_one_in_rank_two() {
        let g = gplus("C2");
        let f2 = FiniteModule::free(&g, 2);
        let f1m = FiniteModule::free(&g, 1);
        let inc = ModuleHom::new(f1m.clone(), f2, vec![0, 1, 2]).unwrap();
        let q = quotient(&inc).unwrap();
        assert_eq!(q, f1m);
    }

    #[test]
    fn non_split_monomorphism_is_rejected() {
        // M = {0, 1, n} with n^2 = 0. In the free module {0, 1, n} the
        // submodule {0, n} has no retraction: r(1) = x needs x n = n, but
        // both candidates x = 0 and x = n give x n = 0.
        let m =
            PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]], None).unwrap();
        let s = FiniteModule::free(&m, 1);
        let (_, inc) = s.submodule(&[0, 2]).unwrap();
        assert!(inc.is_injective());
        assert!(!inc.is_cofibration().unwrap());
        assert_eq!(inc.cofiber().unwrap_err(), Error::NotCofibration);
        // With e idempotent instead, the same inclusion splits via r(1) = e
        // (index 1 of the submodule).
        let m =
            PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], None).unwrap();
        let s = FiniteModule::free(&m, 1);
        let (_, inc) = s.submodule(&[0, 2]).unwrap();
        assert_eq!(
            inc.cofibration_witness().unwrap().unwrap().map(),
            &[0, 1, 1]
        );
    }

    #[test]
    fn rejects_bad_actions() {
        let f1 = PointedMonoid::f1();
        assert!(FiniteModule::new(f1.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteModule::new(f1, vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn generating_sets() {
        let g = gplus("S3");
        let f = FiniteModule::free(&g, 2);
        assert_eq!(f.generating_set().len(), 2);
        assert_eq!(FiniteModule::zero(&g).generating_set(), Vec::<usize>::new());
    }

    #[test]
    fn wedge_sizes() {
        let f1 = PointedMonoid::f1();
        let s = FiniteModule::trivial(&f1, 3).unwrap();
        let t = FiniteModule::trivial(&f1, 2).unwrap();
        let (w, l, r) = s.wedge(&t).unwrap();
        assert_eq!(w.size(), s.size() + t.size() - 1);
        assert!(l.is_cofibration().unwrap());
        assert!(r.is_cofibration().unwrap());
    }
}
