//! Seeded random instances for the property suites: small monoids, modules,
//! homomorphisms, cofibrations and extension diagrams.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::burnside::BurnsideRing;
use crate::error::{Error, Result};
use crate::f1::{
    are_isomorphic, base_change, base_change_map, diagonal_smash, pushout, ExtensionDiagram,
    FiniteModule, ModuleHom, MonoidHom, MonoidRef, PointedMonoid,
};
use crate::group::named_group;

/// Pointed monoids of size at most 6: group monoids of the groups of order
/// at most 5 and a handful of non-group monoids.
pub fn small_monoids() -> Vec<MonoidRef> {
    let mut out = vec![PointedMonoid::f1()];
    for name in ["C2", "C3", "C4", "V4", "C5"] {
        out.push(PointedMonoid::group_monoid(&Arc::new(
            named_group(name).expect("library group"),
        )));
    }
    let tables: Vec<Vec<Vec<usize>>> = vec![
        // idempotent e
        vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
        // nilpotent n, n^2 = 0
        vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]],
        // truncated powers a, a^2 with a^3 = 0
        vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 0],
            vec![0, 3, 0, 0],
        ],
        // left-zero band {a, b}
        vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 2, 2],
            vec![0, 3, 3, 3],
        ],
        // C2 with an idempotent e absorbing g: {0, 1, g, e}, ge = eg = e
        vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 1, 3],
            vec![0, 3, 3, 3],
        ],
        // two orthogonal idempotents e, f (ef = fe = 0), plus their sum-free unit
        vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 2, 0],
            vec![0, 3, 0, 3],
        ],
        // cyclic a with a^3 = a (a^2 idempotent), size 4
        vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 2],
            vec![0, 3, 2, 3],
        ],
        // truncated powers a..a^4, a^5 = 0
        vec![
            vec![0, 0, 0, 0, 0, 0],
            vec![0, 1, 2, 3, 4, 5],
            vec![0, 2, 3, 4, 5, 0],
            vec![0, 3, 4, 5, 0, 0],
            vec![0, 4, 5, 0, 0, 0],
            vec![0, 5, 0, 0, 0, 0],
        ],
    ];
    for t in tables {
        out.push(PointedMonoid::new(t, None).expect("catalogue monoid"));
    }
    out
}

/// Every pointed unital homomorphism `m -> n`, by brute force.
pub fn all_monoid_homs(m: &MonoidRef, n: &MonoidRef) -> Vec<MonoidHom> {
    let size = m.size();
    let mut out = Vec::new();
    let mut map = vec![0usize; size];
    map[1] = 1;
    fn rec(i: usize, map: &mut Vec<usize>, m: &MonoidRef, n: &MonoidRef, out: &mut Vec<MonoidHom>) {
        if i == map.len() {
            if let Ok(h) = MonoidHom::new(m.clone(), n.clone(), map.clone()) {
                out.push(h);
            }
            return;
        }
        for v in 0..n.size() {
            map[i] = v;
            // partial multiplicativity on assigned elements
            let ok = (0..=i).all(|a| {
                (0..=i).all(|b| {
                    let ab = m.mul(a, b);
                    ab > i || map[ab] == n.mul(map[a], map[b])
                })
            });
            if ok {
                rec(i + 1, map, m, n, out);
            }
        }
    }
    rec(2, &mut map, m, n, &mut out);
    out
}

/// A wedge of one or two cyclic pieces of free modules, relabelled at
/// random, with at most `max_size` elements. Nonzero whenever some piece
/// fits.
pub fn random_module<R: Rng + ?Sized>(
    rng: &mut R,
    m: &MonoidRef,
    max_size: usize,
) -> Result<FiniteModule> {
    for _ in 0..10 {
        let mut out = FiniteModule::zero(m);
        for _ in 0..rng.gen_range(1..=2) {
            let free = FiniteModule::free(m, 1);
            let gens: Vec<usize> = (1..free.size()).filter(|_| rng.gen_bool(0.3)).collect();
            let sub = free.generated(&gens);
            let (_, inc) = free.submodule(&sub)?;
            let (piece, _) = inc.collapse_image();
            if out.size() + piece.size() - 1 <= max_size {
                out = out.wedge(&piece)?.0;
            }
        }
        if out.size() > 1 {
            let mut perm: Vec<usize> = (1..out.size()).collect();
            perm.shuffle(rng);
            perm.insert(0, 0);
            return Ok(out.relabel(&perm)?.0);
        }
    }
    Ok(FiniteModule::zero(m))
}

/// A random homomorphism `s -> t`: images of a generating set are drawn at
/// random, nonzero ones first, and propagated; on repeated conflicts the
/// zero map is returned.
pub fn random_hom<R: Rng + ?Sized>(
    rng: &mut R,
    s: &FiniteModule,
    t: &FiniteModule,
) -> Result<ModuleHom> {
    if !s.same_monoid(t) {
        return Err(Error::MonoidMismatch);
    }
    let gens = s.generating_set();
    'attempt: for _ in 0..20 {
        let mut map = vec![usize::MAX; s.size()];
        map[0] = 0;
        for &x in &gens {
            let mut candidates: Vec<usize> = (1..t.size()).collect();
            candidates.shuffle(rng);
            candidates.push(0);
            let mut placed = false;
            for y in candidates {
                let mut trial = map.clone();
                if propagate(s, t, &mut trial, x, y) {
                    map = trial;
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        if map.iter().all(|&v| v != usize::MAX) {
            return ModuleHom::new(s.clone(), t.clone(), map);
        }
    }
    ModuleHom::new(s.clone(), t.clone(), vec![0; s.size()])
}

fn propagate(s: &FiniteModule, t: &FiniteModule, map: &mut [usize], x: usize, y: usize) -> bool {
    let mut work = vec![(x, y)];
    while let Some((a, b)) = work.pop() {
        if map[a] == b {
            continue;
        }
        if map[a] != usize::MAX {
            return false;
        }
        map[a] = b;
        for m in 0..s.monoid().size() {
            work.push((s.act(a, m), t.act(b, m)));
        }
    }
    true
}

/// `A -> A v C`, with the target relabelled at random.
pub fn random_split_cofibration<R: Rng + ?Sized>(
    rng: &mut R,
    a: &FiniteModule,
    c: &FiniteModule,
) -> Result<ModuleHom> {
    let (b, left, _) = a.wedge(c)?;
    let mut perm: Vec<usize> = (1..b.size()).collect();
    perm.shuffle(rng);
    perm.insert(0, 0);
    let (_, iso) = b.relabel(&perm)?;
    left.then(&iso)
}

/// A pushout instance `(f, g)` with `f` a cofibration, over `m`.
pub fn random_pushout_instance<R: Rng + ?Sized>(
    rng: &mut R,
    m: &MonoidRef,
    max_size: usize,
) -> Result<(ModuleHom, ModuleHom)> {
    let a = random_module(rng, m, max_size)?;
    let c = random_module(rng, m, max_size)?;
    let f = random_split_cofibration(rng, &a, &c)?;
    let target = random_module(rng, m, max_size)?;
    let g = random_hom(rng, &a, &target)?;
    Ok((f, g))
}

/// Whether `alpha_*` carries the pushout of `(f, g)` to the pushout of the
/// base-changed maps, up to isomorphism. `Ok(None)` when the base-changed
/// `f` is not a cofibration (itself a failure of exactness).
pub fn base_change_preserves_pushout(
    alpha: &MonoidHom,
    f: &ModuleHom,
    g: &ModuleHom,
) -> Result<Option<bool>> {
    let p = pushout(f, g)?;
    let lhs = base_change(alpha, &p.module)?;
    let bf = base_change_map(alpha, f)?;
    if !bf.is_cofibration()? {
        return Ok(None);
    }
    let bg = base_change_map(alpha, g)?;
    let rhs = pushout(&bf, &bg)?;
    Ok(Some(are_isomorphic(&lhs, &rhs.module)?))
}

/// The split lemma over a group monoid: a cofibration `f: A -> B` has a
/// retraction, the projection `B -> B/A` has a section, and
/// `A v B/A = B`.
pub fn split_lemma_holds(f: &ModuleHom) -> Result<bool> {
    if f.cofibration_witness()?.is_none() {
        return Ok(false);
    }
    let (q, p) = f.cofiber()?;
    let mut section = vec![0usize; q.size()];
    for b in 1..f.target().size() {
        let image = p.apply(b);
        if image != 0 {
            if section[image] != 0 {
                return Ok(false);
            }
            section[image] = b;
        }
    }
    let Ok(s) = ModuleHom::new(q.clone(), f.target().clone(), section) else {
        return Ok(false);
    };
    if s.then(&p)?.map() != ModuleHom::identity(&q).map() {
        return Ok(false);
    }
    let (w, _, _) = f.source().wedge(&q)?;
    are_isomorphic(&w, f.target())
}

/// A random valid map of cofibration sequences over `ring`'s group monoid,
/// built as in the proof of the extension property: `B = A v C`,
/// `A' = A v P`, `B' = A' v C v Q`, the middle map the wedge of the outer
/// ones, with both middle objects relabelled at random.
pub fn random_extension_diagram<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &BurnsideRing,
    max_size: i64,
) -> Result<ExtensionDiagram> {
    let realize = |rng: &mut R| ring.realize(&ring.random_effective_bounded(rng, max_size));
    let (a, c, p, q) = (realize(rng)?, realize(rng)?, realize(rng)?, realize(rng)?);
    let (b, b_a, b_c) = a.wedge(&c)?;
    let (a2, a2_a, _) = a.wedge(&p)?;
    let (cq, cq_c, _) = c.wedge(&q)?;
    let (b2, b2_a2, b2_cq) = a2.wedge(&cq)?;
    let shuffle = |rng: &mut R, s: &FiniteModule| -> Result<ModuleHom> {
        let mut perm: Vec<usize> = (1..s.size()).collect();
        perm.shuffle(rng);
        perm.insert(0, 0);
        Ok(s.relabel(&perm)?.1)
    };
    let rb = shuffle(rng, &b)?;
    let rb2 = shuffle(rng, &b2)?;
    let top = b_a.then(&rb)?;
    let bottom = b2_a2.then(&rb2)?;
    let left = a2_a.clone();
    // middle on B in wedge coordinates: A-part through A', C-part through C v Q
    let mut middle_map = vec![0usize; b.size()];
    for x in 0..a.size() {
        middle_map[b_a.apply(x)] = b2_a2.apply(a2_a.apply(x));
    }
    for x in 0..c.size() {
        middle_map[b_c.apply(x)] = b2_cq.apply(cq_c.apply(x));
    }
    let inv_rb = invert(&rb);
    let middle_raw: Vec<usize> = (0..rb.target().size())
        .map(|y| rb2.apply(middle_map[inv_rb[y]]))
        .collect();
    let middle = ModuleHom::new(rb.target().clone(), rb2.target().clone(), middle_raw)?;
    let (q_top, p_top) = top.cofiber()?;
    let (q_bot, p_bot) = bottom.cofiber()?;
    let mut right_map = vec![0usize; q_top.size()];
    for y in 0..top.target().size() {
        right_map[p_top.apply(y)] = p_bot.apply(middle.apply(y));
    }
    let right = ModuleHom::new(q_top, q_bot, right_map)?;
    Ok(ExtensionDiagram {
        top,
        bottom,
        left,
        middle,
        right,
    })
}

fn invert(iso: &ModuleHom) -> Vec<usize> {
    let mut inv = vec![0usize; iso.target().size()];
    for (x, &y) in iso.map().iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// `burnside.mul(x, y) = decompose(realize(x) ^ realize(y))` for random
/// G-sets of at most `max_size` points.
pub fn product_oracle_holds<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &BurnsideRing,
    max_size: i64,
) -> Result<(bool, Vec<i64>, Vec<i64>)> {
    let x = ring.random_effective_bounded(rng, max_size);
    let y = ring.random_effective_bounded(rng, max_size);
    let smash = diagonal_smash(&ring.realize(&x)?, &ring.realize(&y)?)?;
    let ok = ring.decompose(&smash)? == ring.mul(&x, &y)?;
    Ok((ok, x.coeffs().to_vec(), y.coeffs().to_vec()))
}
