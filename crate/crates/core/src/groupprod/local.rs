use std::fmt;

use crate::error::{Error, Result};

/// Element of a vertex group: an index into a finite table, a residue mod n, or
/// an integer exponent, depending on the group kind.
pub type GroupElem = i64;

/// A finite group presented by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    identity: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, associativity and inverses once.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::invalid("a group needs at least one element"));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!("multiplication table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::invalid("multiplication table entry out of range"));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::invalid("group element names must be distinct"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::invalid("multiplication table has no identity"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::invalid(format!("element {} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            names,
            identity,
            table,
            inverse,
        })
    }

    /// The cyclic group of order `n` as a table, elements named `"0".."n-1"`.
    pub fn cyclic_table(n: usize) -> Result<Self> {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table)
    }

    /// The symmetric group on three letters, a small nonabelian fixture.
    pub fn symmetric3() -> Self {
        // permutations of {0,1,2} in one-line notation
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "s1", "s2", "s3", "r", "r2"].iter().map(|s| s.to_string()).collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::new(names, table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A vertex group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalGroup {
    Finite(FiniteGroup),
    /// ℤ/n with elements `0..n`.
    Cyclic(u64),
    /// ℤ, elements are exponents of a generator.
    Integers,
}

impl LocalGroup {
    pub fn cyclic(n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("cyclic group order must be at least 1"));
        }
        Ok(LocalGroup::Cyclic(n))
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            LocalGroup::Finite(g) => g.identity as GroupElem,
            _ => 0,
        }
    }

    pub fn is_identity(&self, a: GroupElem) -> bool {
        a == self.identity()
    }

    pub fn contains(&self, a: GroupElem) -> bool {
        match self {
            LocalGroup::Finite(g) => a >= 0 && (a as usize) < g.order(),
            LocalGroup::Cyclic(n) => a >= 0 && (a as u64) < *n,
            LocalGroup::Integers => true,
        }
    }

    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        match self {
            LocalGroup::Finite(g) => g.table[a as usize][b as usize] as GroupElem,
            LocalGroup::Cyclic(n) => ((a as u64 + b as u64) % n) as GroupElem,
            LocalGroup::Integers => a + b,
        }
    }

    pub fn inv(&self, a: GroupElem) -> GroupElem {
        match self {
            LocalGroup::Finite(g) => g.inverse[a as usize] as GroupElem,
            LocalGroup::Cyclic(n) => ((*n - a as u64) % n) as GroupElem,
            LocalGroup::Integers => -a,
        }
    }

    /// `None` for ℤ.
    pub fn order(&self) -> Option<u64> {
        match self {
            LocalGroup::Finite(g) => Some(g.order() as u64),
            LocalGroup::Cyclic(n) => Some(*n),
            LocalGroup::Integers => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Nonidentity elements in load order; `None` for ℤ.
    pub fn nonidentity_elements(&self) -> Option<Vec<GroupElem>> {
        let n = self.order()? as GroupElem;
        let e = self.identity();
        Some((0..n).filter(|&a| a != e).collect())
    }

    pub fn name(&self, a: GroupElem) -> String {
        match self {
            LocalGroup::Finite(g) => g.names[a as usize].clone(),
            _ => a.to_string(),
        }
    }

    pub fn parse(&self, name: &str) -> Result<GroupElem> {
        let bad = || Error::invalid(format!("'{name}' is not an element of {self}"));
        match self {
            LocalGroup::Finite(g) => g
                .names
                .iter()
                .position(|n| n == name)
                .map(|i| i as GroupElem)
                .ok_or_else(bad),
            LocalGroup::Cyclic(n) => {
                let v: i64 = name.trim().parse().map_err(|_| bad())?;
                Ok(v.rem_euclid(*n as i64))
            }
            LocalGroup::Integers => name.trim().parse().map_err(|_| bad()),
        }
    }
}

impl fmt::Display for LocalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalGroup::Finite(g) => write!(f, "finite group of order {}", g.order()),
            LocalGroup::Cyclic(n) => write!(f, "Z/{n}"),
            LocalGroup::Integers => f.write_str("Z"),
        }
    }
}
