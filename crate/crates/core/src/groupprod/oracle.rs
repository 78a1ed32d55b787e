//! Brute-force word equality, independent of the normal-form code: explores the
//! rewriting graph whose edges are commuting swaps and same-vertex merges, in
//! both directions.

use std::collections::{HashSet, VecDeque};

use super::{GraphProduct, GroupElem, Letter};
use crate::error::{Error, Result};

/// Longest input word [`GraphProduct::equal_oracle`] accepts.
pub const ORACLE_MAX_LEN: usize = 8;
const STATE_CAP: usize = 2_000_000;

impl GraphProduct {
    fn oracle_pool(&self, v: u32, bound: i64) -> Vec<GroupElem> {
        let g = self.group(v);
        match g.nonidentity_elements() {
            Some(all) => all,
            None => (-bound..=bound).filter(|&x| x != 0).collect(),
        }
    }

    fn oracle_neighbours(&self, w: &[Letter], max_len: usize, bound: i64, out: &mut Vec<Vec<Letter>>) {
        let k = self.complex();
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a.vertex != b.vertex && k.adjacent(a.vertex, b.vertex) {
                let mut x = w.to_vec();
                x.swap(i, i + 1);
                out.push(x);
            }
            if a.vertex == b.vertex {
                let g = self.group(a.vertex);
                let p = g.mul(a.elem, b.elem);
                let mut x = w.to_vec();
                if g.is_identity(p) {
                    x.drain(i..i + 2);
                } else {
                    x[i].elem = p;
                    x.remove(i + 1);
                }
                out.push(x);
            }
        }
        if w.len() < max_len {
            // g = h · (h⁻¹ g)
            for i in 0..w.len() {
                let g = self.group(w[i].vertex);
                for h in self.oracle_pool(w[i].vertex, bound) {
                    let rest = g.mul(g.inv(h), w[i].elem);
                    if g.is_identity(rest) || (!g.is_finite() && rest.abs() > bound) {
                        continue;
                    }
                    let mut x = w.to_vec();
                    x[i].elem = h;
                    x.insert(i + 1, Letter::new(w[i].vertex, rest));
                    out.push(x);
                }
            }
        }
        if w.len() + 2 <= max_len {
            for pos in 0..=w.len() {
                for v in k.vertices() {
                    let g = self.group(v);
                    for h in self.oracle_pool(v, bound) {
                        let mut x = w.to_vec();
                        x.insert(pos, Letter::new(v, h));
                        x.insert(pos + 1, Letter::new(v, g.inv(h)));
                        out.push(x);
                    }
                }
            }
        }
    }

    /// Whether `v` is reachable from `u` by commuting swaps, merges, splits and
    /// insertions of `h h⁻¹`, never exceeding `max(|u|, |v|) + 2` letters. For ℤ
    /// vertices, split and inserted factors are limited to exponents no larger
    /// than the largest one in the input.
    pub fn equal_oracle(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        for l in u.iter().chain(v) {
            self.check_letter(l)?;
        }
        if u.len() > ORACLE_MAX_LEN || v.len() > ORACLE_MAX_LEN {
            return Err(Error::BoundExceeded(format!(
                "oracle words are limited to {ORACLE_MAX_LEN} letters"
            )));
        }
        let strip = |w: &[Letter]| -> Vec<Letter> {
            w.iter()
                .copied()
                .filter(|l| !self.group(l.vertex).is_identity(l.elem))
                .collect()
        };
        let (start, target) = (strip(u), strip(v));
        let max_len = u.len().max(v.len()) + 2;
        let bound = u.iter().chain(v).map(|l| l.elem.abs()).max().unwrap_or(0).max(1);
        let mut seen: HashSet<Vec<Letter>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut next = Vec::new();
        while let Some(w) = queue.pop_front() {
            if w == target {
                return Ok(true);
            }
            next.clear();
            self.oracle_neighbours(&w, max_len, bound, &mut next);
            for x in next.drain(..) {
                if seen.insert(x.clone()) {
                    if seen.len() > STATE_CAP {
                        return Err(Error::BoundExceeded(format!(
                            "oracle search visited more than {STATE_CAP} words"
                        )));
                    }
                    queue.push_back(x);
                }
            }
        }
        Ok(false)
    }
}

/// Equivalence classes of every word of length at most `max_len` over the
/// nonidentity letters, under swaps and merges restricted to those words.
///
/// Words are indexed in mixed radix: letter codes `1..=A`, so each length gets
/// its own range of indices.
pub struct OracleClasses {
    alphabet: Vec<Letter>,
    max_len: usize,
    parent: Vec<u32>,
}

impl OracleClasses {
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn radix(&self) -> usize {
        self.alphabet.len() + 1
    }

    fn code(&self, w: &[Letter]) -> Option<usize> {
        let mut c = 0usize;
        for l in w.iter().rev() {
            let a = self.alphabet.iter().position(|x| x == l)?;
            c = c * self.radix() + a + 1;
        }
        Some(c)
    }

    fn decode(&self, mut c: usize) -> Option<Vec<Letter>> {
        let mut w = Vec::new();
        while c > 0 {
            let d = c % self.radix();
            if d == 0 {
                return None;
            }
            w.push(self.alphabet[d - 1]);
            c /= self.radix();
        }
        Some(w)
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Class representative of a word, or `None` if it is out of range.
    pub fn class_of(&self, w: &[Letter]) -> Option<usize> {
        if w.len() > self.max_len {
            return None;
        }
        self.code(w).map(|c| self.find(c))
    }

    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> Option<bool> {
        Some(self.class_of(u)? == self.class_of(v)?)
    }

    /// Every word in range, shortest first within each code block.
    pub fn words(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        (0..self.parent.len()).filter_map(|c| self.decode(c))
    }
}

/// Builds [`OracleClasses`] by union-find. Needs finite vertex groups.
pub fn oracle_classes(gp: &GraphProduct, max_len: usize) -> Result<OracleClasses> {
    let alphabet = gp.all_letters()?;
    let radix = alphabet.len() + 1;
    let size = radix
        .checked_pow(max_len as u32)
        .filter(|&s| s <= 1 << 26)
        .ok_or_else(|| Error::BoundExceeded(format!("{} letters to length {max_len}", alphabet.len())))?;
    let mut oc = OracleClasses {
        alphabet,
        max_len,
        parent: (0..size as u32).collect(),
    };
    let k = gp.complex();
    let mut edges = Vec::new();
    for c in 0..size {
        let Some(w) = oc.decode(c) else { continue };
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            let mut x = w.clone();
            if a.vertex == b.vertex {
                let g = gp.group(a.vertex);
                let p = g.mul(a.elem, b.elem);
                if g.is_identity(p) {
                    x.drain(i..i + 2);
                } else {
                    x[i].elem = p;
                    x.remove(i + 1);
                }
            } else if k.adjacent(a.vertex, b.vertex) {
                x.swap(i, i + 1);
            } else {
                continue;
            }
            edges.push((c, oc.code(&x).expect("same alphabet")));
        }
    }
    fn root(parent: &mut [u32], mut x: usize) -> usize {
        while parent[x] as usize != x {
            parent[x] = parent[parent[x] as usize];
            x = parent[x] as usize;
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (root(&mut oc.parent, a), root(&mut oc.parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            oc.parent[hi] = lo as u32;
        }
    }
    // flatten so lookups are O(1)
    for c in 0..size {
        let r = oc.find(c);
        oc.parent[c] = r as u32;
    }
    Ok(oc)
}
