//! Support words: vertex sequences modulo commutation of adjacent vertices.
//!
//! Both graph products (of groups and of algebras) reduce a word in two steps:
//! merge same-vertex letters that can be brought together by commuting moves,
//! then pick the lexicographically least arrangement of the commutation class.
//! These helpers act on the vertex sequence only.

use crate::complex::FlagComplex;

/// First pair `(i, j)`, `i < j`, of letters at the same vertex such that every
/// letter strictly between them commutes with that vertex.
pub fn find_mergeable(vs: &[u32], k: &FlagComplex) -> Option<(usize, usize)> {
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[j] == vs[i] {
                return Some((i, j));
            }
            if !k.adjacent(vs[i], vs[j]) {
                break;
            }
        }
    }
    None
}

/// The order (as original positions) in which letters appear in the
/// lexicographically least rearrangement reachable by swapping adjacent letters
/// at adjacent vertices. Assumes the word has no mergeable pair.
pub fn lex_min_order(vs: &[u32], k: &FlagComplex) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..vs.len()).collect();
    let mut out = Vec::with_capacity(vs.len());
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for (slot, &pos) in remaining.iter().enumerate() {
            let free = remaining[..slot]
                .iter()
                .all(|&earlier| vs[earlier] != vs[pos] && k.adjacent(vs[earlier], vs[pos]));
            if free && best.is_none_or(|b| vs[pos] < vs[remaining[b]]) {
                best = Some(slot);
            }
        }
        let slot = best.expect("the first remaining letter is always free");
        out.push(remaining.remove(slot));
    }
    out
}

/// Whether appending vertex `v` to a normal support word keeps it normal.
///
/// Scanning backwards through letters that commute with `v`: meeting `v` itself
/// means a merge is possible, and meeting a larger vertex means `v` could move
/// left past it to give a smaller word.
pub fn extends_normal(prefix: &[u32], v: u32, k: &FlagComplex) -> bool {
    for &u in prefix.iter().rev() {
        if u == v {
            return false;
        }
        if !k.adjacent(u, v) {
            return true;
        }
        if u > v {
            return false;
        }
    }
    true
}

/// Whether a whole support word is reduced and lexicographically least.
pub fn is_normal_support(vs: &[u32], k: &FlagComplex) -> bool {
    (0..vs.len()).all(|i| extends_normal(&vs[..i], vs[i], k))
}

/// Every normal support word of length exactly `n` over the complex's vertices.
pub fn normal_support_words(k: &FlagComplex, n: usize) -> Vec<Vec<u32>> {
    fn grow(k: &FlagComplex, verts: &[u32], word: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for &v in verts {
            if extends_normal(word, v, k) {
                word.push(v);
                grow(k, verts, word, n, out);
                word.pop();
            }
        }
    }
    let verts = k.vertices();
    let mut out = Vec::new();
    grow(k, &verts, &mut Vec::with_capacity(n), n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, VecDeque};

    /// Every rearrangement reachable by swapping adjacent commuting letters.
    fn commutation_class(vs: &[u32], k: &FlagComplex) -> BTreeSet<Vec<u32>> {
        let mut seen = BTreeSet::from([vs.to_vec()]);
        let mut queue = VecDeque::from([vs.to_vec()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] != w[i + 1] && k.adjacent(w[i], w[i + 1]) {
                    let mut x = w.clone();
                    x.swap(i, i + 1);
                    if seen.insert(x.clone()) {
                        queue.push_back(x);
                    }
                }
            }
        }
        seen
    }

    /// Brute-force normality: least in its class, and no rearrangement puts two
    /// equal vertices side by side.
    fn normal_brute(vs: &[u32], k: &FlagComplex) -> bool {
        let class = commutation_class(vs, k);
        let least = class.iter().next().unwrap();
        least == vs && class.iter().all(|w| w.windows(2).all(|p| p[0] != p[1]))
    }

    fn words(m: u32, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..=m).map(move |v| {
                        let mut x = w.clone();
                        x.push(v);
                        x
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn the_local_swap_test_is_not_enough() {
        let path = FlagComplex::path(3).unwrap();
        // 2 commutes with 1 and 3, so 3 1 2 ~ 2 3 1, though no single swap lowers 3 1 2
        assert!(!is_normal_support(&[3, 1, 2], &path));
        assert!(is_normal_support(&[2, 3, 1], &path));
        assert_eq!(lex_min_order(&[3, 1, 2], &path), vec![2, 0, 1]);
    }

    #[test]
    fn incremental_check_matches_brute_force() {
        let graphs = [
            FlagComplex::path(3).unwrap(),
            FlagComplex::cycle(4).unwrap(),
            FlagComplex::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap(),
            FlagComplex::discrete(3).unwrap(),
        ];
        for k in &graphs {
            let m = k.ambient_size() as u32;
            for n in 0..=5 {
                for w in words(m, n) {
                    assert_eq!(is_normal_support(&w, k), normal_brute(&w, k), "{w:?} on {k}");
                }
            }
        }
    }

    #[test]
    fn lex_min_order_gives_class_minimum() {
        let k = FlagComplex::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]).unwrap();
        for w in words(4, 5) {
            if find_mergeable(&w, &k).is_some() {
                continue;
            }
            let order = lex_min_order(&w, &k);
            let arranged: Vec<u32> = order.iter().map(|&i| w[i]).collect();
            let class = commutation_class(&w, &k);
            assert_eq!(&arranged, class.iter().next().unwrap());
        }
    }

    #[test]
    fn square_support_counts() {
        let sq = FlagComplex::cycle(4).unwrap();
        let counts: Vec<usize> = (0..=4).map(|n| normal_support_words(&sq, n).len()).collect();
        // 4 non-commuting ordered pairs (the diagonals) plus the 4 edges in increasing order
        assert_eq!(counts, vec![1, 4, 8, 12, 16]);
    }
}
