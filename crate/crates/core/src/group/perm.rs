use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses cycle notation with 1-based points, e.g. `"(1 2)(3 4)"` or `"()"`.
/// Commas are accepted as separators inside a cycle.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut seen = vec![false; degree];
    let bad = |msg: String| Error::InvalidPermutation(format!("{text:?}: {msg}"));
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| bad("expected '('".into()))?;
        let close = open.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let pts: Vec<usize> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| bad(format!("bad point {s:?}")))
            })
            .collect::<Result<_>>()?;
        for &p in &pts {
            if p == 0 || p > degree {
                return Err(bad(format!("point {p} outside 1..={degree}")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(bad(format!("point {p} repeated")));
            }
        }
        for (i, &p) in pts.iter().enumerate() {
            images[p - 1] = pts[(i + 1) % pts.len()] - 1;
        }
    }
    Permutation::from_images(images)
}
