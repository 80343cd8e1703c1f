use super::module::FiniteModule;
use super::search::{Injectivity, MapSearch};
use crate::error::{Error, Result};

/// Searches for an equivariant pointed bijection `S -> T`.
///
/// Over a group monoid, candidates are pruned by orbit-size multisets and
/// by exact stabilizer equality (an isomorphism preserves stabilizers
/// elementwise). Over other monoids the search is plain backtracking with
/// forced propagation.
pub fn find_module_isomorphism(s: &FiniteModule, t: &FiniteModule) -> Result<Option<Vec<usize>>> {
    if !s.same_monoid(t) {
        return Err(Error::MonoidMismatch);
    }
    if s.size() != t.size() {
        return Ok(None);
    }
    let mut search = MapSearch::new(s, t, Injectivity::Bijective);
    let mut out = None;
    if s.monoid().is_group_monoid() {
        let sizes = |m: &FiniteModule| -> Result<Vec<usize>> {
            let mut v: Vec<usize> = m.orbits()?.iter().map(|o| o.len()).collect();
            v.sort_unstable();
            Ok(v)
        };
        if sizes(s)? != sizes(t)? {
            return Ok(None);
        }
        let ss: Vec<Vec<usize>> = (0..s.size())
            .map(|x| s.stabilizer(x))
            .collect::<Result<_>>()?;
        let ts: Vec<Vec<usize>> = (0..t.size())
            .map(|y| t.stabilizer(y))
            .collect::<Result<_>>()?;
        let mut a = ss.clone();
        let mut b = ts.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(None);
        }
        search.run(&|x, y| ss[x] == ts[y], &mut |m| {
            out = Some(m.to_vec());
            true
        });
    } else {
        search.run(&|_, _| true, &mut |m| {
            out = Some(m.to_vec());
            true
        });
    }
    Ok(out)
}

pub fn are_isomorphic(s: &FiniteModule, t: &FiniteModule) -> Result<bool> {
    Ok(find_module_isomorphism(s, t)?.is_some())
}

/// Cheap isomorphism invariant valid over any monoid: per element, the
/// number of monoid elements fixing it, the number killing it, and the
/// size of the cyclic submodule it generates; sorted.
pub fn invariant_signature(s: &FiniteModule) -> Vec<(usize, usize, usize)> {
    let ms = s.monoid().size();
    let mut sig: Vec<(usize, usize, usize)> = (0..s.size())
        .map(|x| {
            let fixed = (0..ms).filter(|&m| s.act(x, m) == x).count();
            let killed = (0..ms).filter(|&m| s.act(x, m) == 0).count();
            (fixed, killed, s.generated(&[x]).len())
        })
        .collect();
    sig.sort_unstable();
    sig
}

/// Every equivariant injection `S -> T`, in lexicographic order.
pub fn injective_homs(s: &FiniteModule, t: &FiniteModule) -> Result<Vec<Vec<usize>>> {
    if !s.same_monoid(t) {
        return Err(Error::MonoidMismatch);
    }
    let mut out = Vec::new();
    if s.size() > t.size() {
        return Ok(out);
    }
    let mut search = MapSearch::new(s, t, Injectivity::Injective);
    search.run(&|_, _| true, &mut |m| {
        out.push(m.to_vec());
        false
    });
    Ok(out)
}
