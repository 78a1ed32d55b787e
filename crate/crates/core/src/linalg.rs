//! Rank computations over an exact field.

use std::collections::HashMap;

use crate::exactmath::Field;

/// A sparse vector: `(column, coefficient)` pairs, columns strictly increasing,
/// no zero coefficients.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Collects `(column, coefficient)` terms into a canonical sparse vector,
/// summing duplicates and dropping zeros.
pub fn canonicalize<F: Field>(f: &F, mut terms: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    terms.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = f.add(lv, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !f.is_zero(v));
    out
}

/// Rank of a dense matrix given as rows, by Gaussian elimination.
pub fn dense_rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv(&rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || f.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `a - c * b` for sparse vectors.
fn axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.neg(&f.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form for sparse rows. Each stored pivot row has
/// leading coefficient one.
pub struct SparseEchelon<'a, F: Field> {
    field: &'a F,
    pivots: HashMap<usize, SparseVec<F::Elem>>,
}

impl<'a, F: Field> SparseEchelon<'a, F> {
    pub fn new(field: &'a F) -> Self {
        SparseEchelon {
            field,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots; returns whether it was independent.
    pub fn insert(&mut self, mut row: SparseVec<F::Elem>) -> bool {
        let f = self.field;
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(f, &row, &coeff, p),
                None => {
                    let inv = f.inv(&coeff).expect("leading coefficient is nonzero");
                    for (_, v) in row.iter_mut() {
                        *v = f.mul(v, &inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// Rank of a sparse matrix given as rows.
pub fn sparse_rank<F: Field>(f: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut ech = SparseEchelon::new(f);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{PrimeField, RationalField};

    #[test]
    fn dense_rank_small() {
        let q = RationalField;
        let r = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(dense_rank(&q, vec![r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(dense_rank(&q, vec![r(&[1, 1, 0]), r(&[0, 1, 1]), r(&[1, 0, -1])]), 2);
        let f2 = PrimeField::new(2).unwrap();
        let r2 = |v: &[i64]| v.iter().map(|&x| f2.from_i64(x)).collect::<Vec<_>>();
        // the same vectors are independent over GF(2) only when -1 != 1 matters
        assert_eq!(dense_rank(&f2, vec![r2(&[1, 1]), r2(&[1, -1])]), 1);
        assert_eq!(dense_rank(&q, vec![r(&[1, 1]), r(&[1, -1])]), 2);
        assert_eq!(dense_rank::<RationalField>(&q, vec![]), 0);
    }

    #[test]
    fn sparse_matches_dense() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let f3 = PrimeField::new(3).unwrap();
        for _ in 0..200 {
            let rows = rng.gen_range(0..8);
            let cols = rng.gen_range(1..8);
            let dense: Vec<Vec<u32>> = (0..rows)
                .map(|_| (0..cols).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..3) } else { 0 }).collect())
                .collect();
            let sparse: Vec<SparseVec<u32>> = dense
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, *v)).collect())
                .collect();
            assert_eq!(sparse_rank(&f3, sparse), dense_rank(&f3, dense));
        }
    }

    #[test]
    fn canonicalize_sums_and_drops() {
        let q = RationalField;
        let v = canonicalize(&q, vec![(3, q.from_i64(1)), (1, q.from_i64(2)), (3, q.from_i64(-1))]);
        assert_eq!(v, vec![(1, q.from_i64(2))]);
    }
}
