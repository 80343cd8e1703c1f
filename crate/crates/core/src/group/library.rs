//! Built-in named groups.

use super::{parse_cycles, FiniteGroup, Permutation, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// Every name accepted by [`named_group`] for a single factor, in a fixed
/// order (cyclic, dihedral, symmetric, then the sporadic small groups).
pub const LIBRARY_NAMES: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14", "C15",
    "C16", "C17", "C18", "C19", "C20", "C21", "C22", "C23", "C24", "D1", "D2", "D3", "D4", "D5",
    "D6", "D7", "D8", "D9", "D10", "D11", "D12", "S1", "S2", "S3", "S4", "A4", "V4", "Q8",
];

/// Looks up a library group: `Cn` (n <= 24), `Dn` (dihedral of order 2n,
/// n <= 12), `Sn` (n <= 4), `A4`, `V4`, `Q8`. Underscores are ignored and
/// `x`-separated names build direct products, e.g. `C2xC3`.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let cleaned: String = name.trim().chars().filter(|c| *c != '_').collect();
    if cleaned.contains('x') || cleaned.contains('×') {
        let mut parts = cleaned.split(['x', '×']);
        let first = parts.next().ok_or_else(|| unknown(name))?;
        let mut acc = single(first)?;
        for p in parts {
            acc = FiniteGroup::direct_product(&acc, &single(p)?);
        }
        return Ok(acc.with_name(cleaned));
    }
    single(&cleaned)
}

fn unknown(name: &str) -> Error {
    Error::InvalidInput(format!("unknown group name {name:?}"))
}

fn single(name: &str) -> Result<FiniteGroup> {
    let upper = name.to_ascii_uppercase();
    let (kind, num) = upper.split_at(1.min(upper.len()));
    let n: Option<usize> = num.parse().ok();
    let g = match (kind, n) {
        ("C", Some(n)) if (1..=24).contains(&n) => FiniteGroup::cyclic(n)?,
        ("D", Some(n)) if (1..=12).contains(&n) => dihedral(n),
        ("S", Some(n)) if (1..=4).contains(&n) => symmetric(n)?,
        ("A", Some(4)) => alternating4()?,
        ("V", Some(4)) => klein(),
        ("Q", Some(8)) => quaternion(),
        _ => return Err(unknown(name)),
    };
    Ok(g.with_name(upper))
}

/// Dihedral group of order `2n`: `r^i s^j` is numbered `i + n j`.
fn dihedral(n: usize) -> FiniteGroup {
    let idx = |i: usize, j: usize| i % n + n * j;
    let cayley = (0..2 * n)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (c, d) = (y % n, y / n);
                    // r^a s^b r^c s^d = r^(a +- c) s^(b+d)
                    let rot = if b == 0 { a + c } else { a + n - c };
                    idx(rot, (b + d) % 2)
                })
                .collect()
        })
        .collect();
    let labels = (0..2 * n)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "e".to_string(),
            (i, 0) => format!("r^{i}"),
            (0, _) => "s".to_string(),
            (i, _) => format!("r^{i}s"),
        })
        .collect();
    FiniteGroup::from_trusted_table(cayley, Some(labels))
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(parse_cycles("(1 2)", n)?);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(Permutation::from_images(cycle)?);
    }
    FiniteGroup::from_permutations(n, &gens, DEFAULT_ORDER_CAP)
}

fn alternating4() -> Result<FiniteGroup> {
    let gens = [parse_cycles("(1 2 3)", 4)?, parse_cycles("(1 2)(3 4)", 4)?];
    FiniteGroup::from_permutations(4, &gens, DEFAULT_ORDER_CAP)
}

fn klein() -> FiniteGroup {
    let cayley = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let labels = ["e", "a", "b", "ab"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_trusted_table(cayley, Some(labels))
}

/// Quaternion group; element `2u + s` is `(-1)^s` times unit `u` of
/// `1, i, j, k`.
fn quaternion() -> FiniteGroup {
    // unit products: (sign, unit) for u*v
    const PROD: [[(u8, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let cayley = (0..8)
        .map(|x: usize| {
            (0..8)
                .map(|y: usize| {
                    let (s, u) = PROD[x / 2][y / 2];
                    let sign = (x % 2 + y % 2 + s as usize) % 2;
                    2 * u + sign
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    FiniteGroup::from_trusted_table(cayley, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_library_group_is_a_valid_table() {
        for name in LIBRARY_NAMES {
            let g = named_group(name).unwrap();
            // round-trip through the validating constructor
            FiniteGroup::from_table(g.cayley().to_vec(), None).unwrap();
        }
    }

    #[test]
    fn orders() {
        let expect = [
            ("D4", 8),
            ("D12", 24),
            ("S4", 24),
            ("A4", 12),
            ("V4", 4),
            ("Q8", 8),
            ("C2xC3", 6),
            ("S1", 1),
        ];
        for (name, order) in expect {
            assert_eq!(named_group(name).unwrap().order(), order, "{name}");
        }
        assert!(named_group("Q8").unwrap().element_order(2) == 4);
        assert!(!named_group("Q8").unwrap().is_abelian());
        assert!(named_group("C25").is_err());
        assert!(named_group("foo").is_err());
    }
}
