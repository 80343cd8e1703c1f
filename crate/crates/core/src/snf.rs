//! Smith normal form over exact integers, plus cokernel helpers for
//! presentations given as relation rows.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::scalar::{self, Integer};

/// Diagonal of the Smith normal form: the non-zero invariant factors
/// `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<C> {
    pub nrows: usize,
    pub ncols: usize,
    pub diagonal: Vec<C>,
}

impl<C: Integer> SmithForm<C> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<C> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Computes the Smith normal form of a dense `nrows x ncols` matrix.
pub fn smith_normal_form<C: Integer>(matrix: &[Vec<C>], ncols: usize) -> Result<SmithForm<C>> {
    let nrows = matrix.len();
    let mut a: Vec<Vec<C>> = matrix.to_vec();
    for row in &a {
        if row.len() != ncols {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
    }
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest non-zero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_entry(&a, t, ncols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // Clear column t.
            for i in (t + 1)..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q, t)?;
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t.
            for j in (t + 1)..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q, t)?;
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_in_cross(&a, t, ncols);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Divisibility: fold an offending row into row t and repeat.
            let pivot = a[t][t].clone();
            let offender = ((t + 1)..nrows)
                .find(|&i| ((t + 1)..ncols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    for j in t..ncols {
                        let v = scalar::add(&a[t][j], &a[i][j], "smith normal form")?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    Ok(SmithForm {
        nrows,
        ncols,
        diagonal,
    })
}

fn min_entry<C: Integer>(a: &[Vec<C>], t: usize, ncols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, C)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(ncols).skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                let done = av.is_one();
                best = Some((i, j, av));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_in_cross<C: Integer>(a: &[Vec<C>], t: usize, ncols: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        if !row[t].is_zero() && (best.2.is_zero() || row[t].abs() < best.2) {
            best = (i, t, row[t].abs());
        }
    }
    for j in (t + 1)..ncols {
        let v = &a[t][j];
        if !v.is_zero() && (best.2.is_zero() || v.abs() < best.2) {
            best = (t, j, v.abs());
        }
    }
    (best.0, best.1)
}

/// `row[dst] -= q * row[src]` from column `from` on.
fn row_axpy<C: Integer>(
    a: &mut [Vec<C>],
    dst: usize,
    src: usize,
    q: &C,
    from: usize,
) -> Result<()> {
    for j in from..a[dst].len() {
        if a[src][j].is_zero() {
            continue;
        }
        let prod = scalar::mul(q, &a[src][j], "smith normal form")?;
        a[dst][j] = scalar::sub(&a[dst][j], &prod, "smith normal form")?;
    }
    Ok(())
}

fn col_axpy<C: Integer>(
    a: &mut [Vec<C>],
    dst: usize,
    src: usize,
    q: &C,
    from: usize,
) -> Result<()> {
    for row in a.iter_mut().skip(from) {
        if row[src].is_zero() {
            continue;
        }
        let prod = scalar::mul(q, &row[src], "smith normal form")?;
        row[dst] = scalar::sub(&row[dst], &prod, "smith normal form")?;
    }
    Ok(())
}

/// The group `Z^ngens / <rows>` as (free rank, torsion invariant factors).
pub fn cokernel<C: Integer>(rows: &[Vec<C>], ngens: usize) -> Result<(usize, Vec<C>)> {
    let snf = smith_normal_form(rows, ngens)?;
    Ok((ngens - snf.rank(), snf.torsion()))
}

/// Invariant factors of a direct sum of cyclic groups `Z/c_i`.
///
/// Entries equal to one are dropped; zero entries stand for copies of `Z`
/// and are returned as the free rank.
pub fn invariant_factors_of_cyclic_sum<C: Integer>(orders: &[C]) -> Result<(usize, Vec<C>)> {
    let n = orders.len();
    let mut rows = vec![vec![C::zero(); n]; n];
    for (i, c) in orders.iter().enumerate() {
        rows[i][i] = c.clone();
    }
    cokernel(&rows, n)
}

/// A sparse relation row: generator index to coefficient.
pub type SparseRow = BTreeMap<usize, i64>;

/// Cokernel of a presentation given as sparse relation rows over `ngens`
/// generators.
///
/// Columns are first eliminated with unit pivots, in the order given by
/// `elimination_order` (columns not listed are never pivoted on during the
/// sparse phase). Each such step is a unimodular change of presentation,
/// so the cokernel is unchanged. The residual block goes through the dense
/// Smith normal form.
pub fn cokernel_sparse(
    rows: &[SparseRow],
    ngens: usize,
    elimination_order: &[usize],
) -> Result<(usize, Vec<i64>)> {
    let mut live: HashMap<usize, SparseRow> = HashMap::new();
    let mut by_col: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        let row: SparseRow = row
            .iter()
            .filter(|(_, v)| **v != 0)
            .map(|(k, v)| (*k, *v))
            .collect();
        if row.is_empty() {
            continue;
        }
        for &c in row.keys() {
            if c >= ngens {
                return Err(Error::InvalidInput(format!(
                    "relation references generator {c} >= {ngens}"
                )));
            }
            by_col.entry(c).or_default().insert(r);
        }
        live.insert(r, row);
    }
    let mut eliminated = BTreeSet::new();
    for &col in elimination_order {
        let Some(candidates) = by_col.get(&col) else {
            continue;
        };
        let pivot_row = candidates
            .iter()
            .filter(|r| live[r][&col].abs() == 1)
            .min_by_key(|r| (live[r].len(), **r))
            .copied();
        let Some(p) = pivot_row else { continue };
        let prow = live.remove(&p).expect("pivot row is live");
        for &c in prow.keys() {
            by_col.get_mut(&c).map(|s| s.remove(&p));
        }
        let sign = prow[&col];
        let others: Vec<usize> = by_col
            .get(&col)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for r in others {
            let row = live.get_mut(&r).expect("indexed row is live");
            // pivot coefficient is +-1, so the factor is exact.
            let factor = scalar::mul(&row[&col], &sign, "sparse elimination")?;
            for (&c, &v) in &prow {
                let delta = scalar::mul(&factor, &v, "sparse elimination")?;
                let old = row.get(&c).copied().unwrap_or(0);
                let new = scalar::sub(&old, &delta, "sparse elimination")?;
                if new == 0 {
                    row.remove(&c);
                    by_col.get_mut(&c).map(|s| s.remove(&r));
                } else {
                    row.insert(c, new);
                    by_col.entry(c).or_default().insert(r);
                }
            }
            if row.is_empty() {
                live.remove(&r);
            }
        }
        by_col.remove(&col);
        eliminated.insert(col);
    }
    let remaining: Vec<usize> = (0..ngens).filter(|c| !eliminated.contains(c)).collect();
    let position: HashMap<usize, usize> =
        remaining.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut keys: Vec<&usize> = live.keys().collect();
    keys.sort();
    let mut dense: BTreeSet<Vec<i64>> = BTreeSet::new();
    for k in keys {
        let mut v = vec![0i64; remaining.len()];
        for (&c, &x) in &live[k] {
            v[position[&c]] = x;
        }
        dense.insert(v);
    }
    let dense: Vec<Vec<i64>> = dense.into_iter().collect();
    cokernel(&dense, remaining.len())
}
