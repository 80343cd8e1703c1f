use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite monoid with absorbing zero at index 0 and unit at index 1.
#[derive(Clone)]
pub struct PointedMonoid {
    size: usize,
    mul: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    /// Unit group when the monoid is `G_+`: element `g + 1` is `g`.
    group: Option<Arc<FiniteGroup>>,
}

pub type MonoidRef = Arc<PointedMonoid>;

impl PartialEq for PointedMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.mul == other.mul
    }
}

impl Eq for PointedMonoid {}

impl fmt::Debug for PointedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointedMonoid")
            .field("size", &self.size)
            .field("mul", &self.mul)
            .finish()
    }
}

impl PointedMonoid {
    pub fn new(mul: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<MonoidRef> {
        let size = mul.len();
        let bad = |m: String| Err(Error::InvalidMonoid(m));
        if size < 2 {
            return bad(format!(
                "pointed monoid needs at least 2 elements, got {size}"
            ));
        }
        if mul
            .iter()
            .any(|r| r.len() != size || r.iter().any(|&x| x >= size))
        {
            return bad("table is not square or has out-of-range entries".into());
        }
        if let Some(l) = &labels {
            if l.len() != size {
                return bad("label count differs from size".into());
            }
        }
        for x in 0..size {
            if mul[0][x] != 0 || mul[x][0] != 0 {
                return bad(format!("index 0 does not absorb {x}"));
            }
            if mul[1][x] != x || mul[x][1] != x {
                return bad(format!("index 1 is not a unit for {x}"));
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let group = detect_group(&mul).map(Arc::new);
        Ok(Arc::new(Self {
            size,
            mul,
            labels,
            group,
        }))
    }

    /// The field with one element, `{0, 1}`.
    pub fn f1() -> MonoidRef {
        Self::new(
            vec![vec![0, 0], vec![0, 1]],
            Some(vec!["0".into(), "1".into()]),
        )
        .expect("F_1 is a monoid")
    }

    /// `G_+`: the group with a disjoint zero adjoined. Group element `g`
    /// becomes monoid element `g + 1`.
    pub fn group_monoid(g: &Arc<FiniteGroup>) -> MonoidRef {
        let n = g.order() + 1;
        let mul = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a == 0 || b == 0 {
                            0
                        } else {
                            g.mul(a - 1, b - 1) + 1
                        }
                    })
                    .collect()
            })
            .collect();
        let mut labels = vec!["0".to_string()];
        labels.extend(g.elements().map(|x| g.label(x)));
        Arc::new(Self {
            size: n,
            mul,
            labels: Some(labels),
            group: Some(g.clone()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The unit group when this is a group monoid `G_+`.
    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        self.group.as_ref()
    }

    pub fn is_group_monoid(&self) -> bool {
        self.group.is_some()
    }

    pub fn is_f1(&self) -> bool {
        self.size == 2
    }
}

fn detect_group(mul: &[Vec<usize>]) -> Option<FiniteGroup> {
    let n = mul.len();
    for a in 1..n {
        if !(1..n).any(|b| mul[a][b] == 1) || (1..n).any(|b| mul[a][b] == 0) {
            return None;
        }
    }
    let table = (1..n)
        .map(|a| (1..n).map(|b| mul[a][b] - 1).collect())
        .collect();
    Some(FiniteGroup::from_trusted_table(table, None))
}

/// A pointed unital monoid homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    source: MonoidRef,
    target: MonoidRef,
    map: Vec<usize>,
}

impl MonoidHom {
    /// Validates exhaustively over all pairs.
    pub fn new(source: MonoidRef, target: MonoidRef, map: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::NotHomomorphism(m));
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return bad("map has wrong length or out-of-range images".into());
        }
        if map[0] != 0 || map[1] != 1 {
            return bad("map is not pointed and unital".into());
        }
        for a in 0..source.size() {
            for b in 0..source.size() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return bad(format!("not multiplicative at ({a}, {b})"));
                }
            }
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(m: &MonoidRef) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.size()).collect(),
        }
    }

    /// `H_+ -> G_+` induced by a group homomorphism given on elements.
    pub fn from_group_map(
        source: &MonoidRef,
        target: &MonoidRef,
        elements: &[usize],
    ) -> Result<Self> {
        let mut map = vec![0];
        map.extend(elements.iter().map(|&x| x + 1));
        Self::new(source.clone(), target.clone(), map)
    }

    /// The unique map `F_1 -> M`.
    pub fn from_f1(target: &MonoidRef) -> Self {
        Self {
            source: PointedMonoid::f1(),
            target: target.clone(),
            map: vec![0, 1],
        }
    }

    pub fn source(&self) -> &MonoidRef {
        &self.source
    }

    pub fn target(&self) -> &MonoidRef {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `other . self`
    pub fn then(&self, other: &MonoidHom) -> Result<MonoidHom> {
        if *self.target != *other.source {
            return Err(Error::MonoidMismatch);
        }
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }
}
