//! Pushouts, smash products over a monoid, base change and restriction of
//! scalars. Quotient sets are built with union-find and numbered by least
//! representative, so the output tables are deterministic.

use super::module::{FiniteModule, ModuleHom};
use super::monoid::{MonoidHom, MonoidRef};
use crate::error::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Keeps the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class number of every element; classes numbered by least member,
    /// and the class of 0 is 0.
    fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut number = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if number[r] == usize::MAX {
                number[r] = next;
                next += 1;
            }
            out[x] = number[r];
        }
        (out, next)
    }
}

/// Builds the action on classes from an action on representatives,
/// checking that it is well defined.
fn action_on_classes(
    monoid: &MonoidRef,
    class: &[usize],
    nclasses: usize,
    act: impl Fn(usize, usize) -> usize,
) -> Result<FiniteModule> {
    let ms = monoid.size();
    let mut table = vec![vec![usize::MAX; ms]; nclasses];
    for (x, &c) in class.iter().enumerate() {
        for m in 0..ms {
            let img = class[act(x, m)];
            let slot = &mut table[c][m];
            if *slot == usize::MAX {
                *slot = img;
            } else if *slot != img {
                return Err(Error::Internal(
                    "generated equivalence is not a congruence".into(),
                ));
            }
        }
    }
    FiniteModule::new(monoid.clone(), table)
}

/// A two-sided module: `left_action[m][t] = m t` for `m` in the left monoid,
/// `right_action[t][n] = t n` for `n` in the right monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    left: MonoidRef,
    right: MonoidRef,
    left_action: Vec<Vec<usize>>,
    right_action: Vec<Vec<usize>>,
}

impl Bimodule {
    pub fn new(
        left: MonoidRef,
        right: MonoidRef,
        left_action: Vec<Vec<usize>>,
        right_action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let size = right_action.len();
        let bad = |m: &str| Err(Error::InvalidModule(format!("bimodule: {m}")));
        if left_action.len() != left.size() || left_action.iter().any(|r| r.len() != size) {
            return bad("left action table has wrong shape");
        }
        // Right axioms via the module constructor.
        FiniteModule::new(right.clone(), right_action.clone())?;
        let la = |m: usize, t: usize| left_action[m][t];
        for t in 0..size {
            if la(1, t) != t || la(0, t) != 0 {
                return bad("left unit or zero misbehaves");
            }
        }
        for m in 0..left.size() {
            if la(m, 0) != 0 || left_action[m].iter().any(|&x| x >= size) {
                return bad("left action does not fix the basepoint");
            }
            for m2 in 0..left.size() {
                for t in 0..size {
                    if la(left.mul(m, m2), t) != la(m, la(m2, t)) {
                        return bad("left action is not associative");
                    }
                }
            }
            for t in 0..size {
                for n in 0..right.size() {
                    if right_action[la(m, t)][n] != la(m, right_action[t][n]) {
                        return bad("actions do not commute");
                    }
                }
            }
        }
        Ok(Self {
            left,
            right,
            left_action,
            right_action,
        })
    }

    /// `M` as an `M`-`M` bimodule.
    pub fn unit(m: &MonoidRef) -> Self {
        let t = m.table().to_vec();
        Self {
            left: m.clone(),
            right: m.clone(),
            left_action: t.clone(),
            right_action: t,
        }
    }

    /// `N` as an `M`-`N` bimodule through `alpha: M -> N`.
    pub fn along(alpha: &MonoidHom) -> Self {
        let n = alpha.target();
        let m = alpha.source();
        let left_action = (0..m.size())
            .map(|a| (0..n.size()).map(|t| n.mul(alpha.apply(a), t)).collect())
            .collect();
        Self {
            left: m.clone(),
            right: n.clone(),
            left_action,
            right_action: n.table().to_vec(),
        }
    }

    /// A right `N`-module viewed as an `F_1`-`N` bimodule.
    pub fn from_right_module(t: &FiniteModule) -> Self {
        let size = t.size();
        let left_action = vec![vec![0; size], (0..size).collect()];
        Self {
            left: super::monoid::PointedMonoid::f1(),
            right: t.monoid().clone(),
            left_action,
            right_action: t.action().to_vec(),
        }
    }

    pub fn size(&self) -> usize {
        self.right_action.len()
    }

    pub fn left(&self) -> &MonoidRef {
        &self.left
    }

    pub fn right(&self) -> &MonoidRef {
        &self.right
    }

    /// The underlying right module.
    pub fn as_right_module(&self) -> FiniteModule {
        FiniteModule::from_trusted(self.right.clone(), self.right_action.clone())
    }
}

/// `S ^_M T`: pairs `(s, t)` modulo `(s m, t) ~ (s, m t)`, with every pair
/// having a basepoint coordinate collapsed. Right action `(s, t) n = (s, t n)`.
pub fn smash(s: &FiniteModule, t: &Bimodule) -> Result<FiniteModule> {
    if *s.monoid().as_ref() != *t.left {
        return Err(Error::MonoidMismatch);
    }
    let nt = t.size();
    let (class, n) = smash_classes(s, t);
    action_on_classes(&t.right, &class, n, |x, m| {
        (x / nt) * nt + t.right_action[x % nt][m]
    })
}

/// Smash product of an `F_1`-module (a pointed set) with any right module.
pub fn smash_pointed(s: &FiniteModule, t: &FiniteModule) -> Result<FiniteModule> {
    if !s.monoid().is_f1() {
        return Err(Error::MonoidMismatch);
    }
    smash(s, &Bimodule::from_right_module(t))
}

/// `S ^ T` over `F_1` with the diagonal action `(s, t) m = (s m, t m)`.
/// Pair `(s, t)` of non-basepoints sits at `1 + (s - 1)(|T| - 1) + (t - 1)`.
pub fn diagonal_smash(s: &FiniteModule, t: &FiniteModule) -> Result<FiniteModule> {
    if !s.same_monoid(t) {
        return Err(Error::MonoidMismatch);
    }
    let w = t.size() - 1;
    let pos = |a: usize, b: usize| {
        if a == 0 || b == 0 {
            0
        } else {
            1 + (a - 1) * w + (b - 1)
        }
    };
    let mut action = vec![vec![0; s.monoid().size()]];
    for a in 1..s.size() {
        for b in 1..t.size() {
            action.push(
                (0..s.monoid().size())
                    .map(|m| pos(s.act(a, m), t.act(b, m)))
                    .collect(),
            );
        }
    }
    Ok(FiniteModule::from_trusted(s.monoid().clone(), action))
}

/// The pair map `f ^ g: S ^ T -> S' ^ T'` between diagonal smashes.
pub fn diagonal_smash_map(f: &ModuleHom, g: &ModuleHom) -> Result<ModuleHom> {
    let src = diagonal_smash(f.source(), g.source())?;
    let dst = diagonal_smash(f.target(), g.target())?;
    let (w_src, w_dst) = (g.source().size() - 1, g.target().size() - 1);
    let mut map = vec![0; src.size()];
    for a in 1..f.source().size() {
        for b in 1..g.source().size() {
            let (fa, gb) = (f.apply(a), g.apply(b));
            map[1 + (a - 1) * w_src + (b - 1)] = if fa == 0 || gb == 0 {
                0
            } else {
                1 + (fa - 1) * w_dst + (gb - 1)
            };
        }
    }
    ModuleHom::new(src, dst, map)
}

/// `alpha_*(S) = S ^_M N`.
pub fn base_change(alpha: &MonoidHom, s: &FiniteModule) -> Result<FiniteModule> {
    smash(s, &Bimodule::along(alpha))
}

/// `alpha_*` on maps: `f ^ id_N`.
pub fn base_change_map(alpha: &MonoidHom, f: &ModuleHom) -> Result<ModuleHom> {
    let src = base_change(alpha, f.source())?;
    let dst = base_change(alpha, f.target())?;
    // Representatives (s, n) of both smashes in the same union-find
    // numbering; recompute the class map directly.
    let n = alpha.target().size();
    let (src_class, _) = smash_classes(f.source(), &Bimodule::along(alpha));
    let (dst_class, _) = smash_classes(f.target(), &Bimodule::along(alpha));
    let mut map = vec![usize::MAX; src.size()];
    for (x, &c) in src_class.iter().enumerate() {
        let (a, b) = (x / n, x % n);
        let img = dst_class[f.apply(a) * n + b];
        if map[c] == usize::MAX {
            map[c] = img;
        } else if map[c] != img {
            return Err(Error::Internal(
                "base change of a map is not well defined".into(),
            ));
        }
    }
    ModuleHom::new(src, dst, map)
}

fn smash_classes(s: &FiniteModule, t: &Bimodule) -> (Vec<usize>, usize) {
    let (ns, nt) = (s.size(), t.size());
    let idx = |a: usize, b: usize| a * nt + b;
    let mut uf = UnionFind::new(ns * nt);
    for a in 0..ns {
        uf.union(0, idx(a, 0));
    }
    for b in 0..nt {
        uf.union(0, idx(0, b));
    }
    for a in 0..ns {
        for m in 0..s.monoid().size() {
            for b in 0..nt {
                uf.union(idx(s.act(a, m), b), idx(a, t.left_action[m][b]));
            }
        }
    }
    uf.classes()
}

/// `alpha^*(S)`: same carrier, `s . m = s alpha(m)`.
pub fn restrict_scalars(alpha: &MonoidHom, s: &FiniteModule) -> Result<FiniteModule> {
    if *s.monoid().as_ref() != **alpha.target() {
        return Err(Error::MonoidMismatch);
    }
    let action = (0..s.size())
        .map(|x| {
            (0..alpha.source().size())
                .map(|m| s.act(x, alpha.apply(m)))
                .collect()
        })
        .collect();
    Ok(FiniteModule::from_trusted(alpha.source().clone(), action))
}

/// A pushout along a cofibration together with its legs.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub module: FiniteModule,
    /// `S_1 -> P`
    pub first_leg: ModuleHom,
    /// `S_2 -> P`, again a cofibration.
    pub second_leg: ModuleHom,
    pub second_leg_retraction: ModuleHom,
}

/// Pushout of `S_1 <- S -> S_2` where `f: S -> S_1` is a cofibration:
/// `S_1 v S_2` modulo `f(s) ~ g(s)`.
pub fn pushout(f: &ModuleHom, g: &ModuleHom) -> Result<Pushout> {
    if !f.source().same_monoid(g.source())
        || !f.source().same_monoid(f.target())
        || !g.source().same_monoid(g.target())
    {
        return Err(Error::MonoidMismatch);
    }
    if f.source() != g.source() {
        return Err(Error::InvalidInput(
            "pushout legs have different sources".into(),
        ));
    }
    if !f.is_cofibration()? {
        return Err(Error::NotCofibration);
    }
    let (n1, n2) = (f.target().size(), g.target().size());
    // Index 0 is the shared basepoint, then S_1 \ *, then S_2 \ *.
    let from1 = |x: usize| x;
    let from2 = |y: usize| if y == 0 { 0 } else { n1 - 1 + y };
    let total = n1 + n2 - 1;
    let mut uf = UnionFind::new(total);
    for s in 0..f.source().size() {
        uf.union(from1(f.apply(s)), from2(g.apply(s)));
    }
    let (class, n) = uf.classes();
    let back = |x: usize| -> (bool, usize) {
        if x < n1 {
            (true, x)
        } else {
            (false, x - n1 + 1)
        }
    };
    let module = action_on_classes(f.source().monoid(), &class, n, |x, m| match back(x) {
        (true, a) => from1(f.target().act(a, m)),
        (false, b) => from2(g.target().act(b, m)),
    })?;
    let first_leg = ModuleHom::new(
        f.target().clone(),
        module.clone(),
        (0..n1).map(|x| class[from1(x)]).collect(),
    )?;
    let second_leg = ModuleHom::new(
        g.target().clone(),
        module.clone(),
        (0..n2).map(|y| class[from2(y)]).collect(),
    )?;
    let second_leg_retraction = second_leg
        .cofibration_witness()?
        .ok_or_else(|| Error::Internal("pushout leg from S_2 is not a cofibration".into()))?;
    Ok(Pushout {
        module,
        first_leg,
        second_leg,
        second_leg_retraction,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::iso::are_isomorphic;
    use super::super::monoid::PointedMonoid;
    use super::*;
    use crate::group::named_group;

    fn gplus(name: &str) -> MonoidRef {
        PointedMonoid::group_monoid(&Arc::new(named_group(name).unwrap()))
    }

    #[test]
    fn unit_law() {
        let m = gplus("S3");
        let s = FiniteModule::free(&m, 2);
        let out = smash(&s, &Bimodule::unit(&m)).unwrap();
        assert!(are_isomorphic(&out, &s).unwrap());
    }

    #[test]
    fn pointed_smash_cardinality() {
        let f1 = PointedMonoid::f1();
        for (a, b) in [(0, 3), (2, 3), (4, 1), (3, 3)] {
            let s = FiniteModule::trivial(&f1, a).unwrap();
            let t = FiniteModule::trivial(&f1, b).unwrap();
            assert_eq!(smash_pointed(&s, &t).unwrap().size(), a * b + 1);
            assert_eq!(diagonal_smash(&s, &t).unwrap().size(), a * b + 1);
        }
    }

    #[test]
    fn base_change_from_f1_is_free() {
        let m = gplus("C3");
        let alpha = MonoidHom::from_f1(&m);
        let s = FiniteModule::trivial(&PointedMonoid::f1(), 2).unwrap();
        let out = base_change(&alpha, &s).unwrap();
        assert!(are_isomorphic(&out, &FiniteModule::free(&m, 2)).unwrap());
    }

    #[test]
    fn identity_base_change_and_restriction() {
        let m = gplus("D4");
        let s = FiniteModule::free(&m, 1);
        let id = MonoidHom::identity(&m);
        assert!(are_isomorphic(&base_change(&id, &s).unwrap(), &s).unwrap());
        assert_eq!(restrict_scalars(&id, &s).unwrap(), s);
    }

    #[test]
    fn pushout_special_cases() {
        let m = gplus("C2");
        let a = FiniteModule::free(&m, 1);
        let (b, inc, _) = a.wedge(&FiniteModule::free(&m, 1)).unwrap();
        // along S -> *, the pushout is the quotient
        let p = pushout(&inc, &ModuleHom::to_zero(&a)).unwrap();
        assert!(are_isomorphic(&p.module, &inc.cofiber().unwrap().0).unwrap());
        // zero source gives the wedge
        let z = FiniteModule::zero(&m);
        let p = pushout(&ModuleHom::from_zero(&b), &ModuleHom::from_zero(&a)).unwrap();
        assert_eq!(p.module.size(), b.size() + a.size() - 1);
        assert!(p.second_leg.is_cofibration().unwrap());
        let _ = z;
    }

    #[test]
    fn pushout_rejects_non_cofibration() {
        let m =
            PointedMonoid::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]], None).unwrap();
        let s = FiniteModule::free(&m, 1);
        let (sub, inc) = s.submodule(&[0, 2]).unwrap();
        assert_eq!(
            pushout(&inc, &ModuleHom::identity(&sub)).unwrap_err(),
            Error::NotCofibration
        );
    }

    #[test]
    fn smash_rejects_mismatched_monoids() {
        let s = FiniteModule::free(&gplus("C2"), 1);
        assert_eq!(
            smash(&s, &Bimodule::unit(&gplus("C3"))).unwrap_err(),
            Error::MonoidMismatch
        );
    }
}
