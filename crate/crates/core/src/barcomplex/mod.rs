//! Bigraded chain complexes built from a generator/boundary description, with
//! the bar constructions that compute Tor by brute force.
//!
//! A complex is built for homological degrees `0..=s_max + 1` and internal
//! degrees `0..=n_max`; the differential preserves internal degree, so homology
//! is exact at every `(s, n)` with `s <= s_max`, `n <= n_max`.

mod bar;
mod polyhedral;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

pub use bar::{bar_complex, bar_words, tor_dims_bar, BarModel};
pub use polyhedral::{
    check_acyclic_full, full_complex, polyhedral_bar, tor_dims_polyhedral, AcyclicReport, FullModel,
    PolyGen, PolyhedralModel, Variant,
};

use crate::error::{Error, Result};
use crate::exactmath::Field;
use crate::linalg::{canonicalize, sparse_rank, SparseVec};
use crate::parallel::par_map;
use crate::torform::{Provenance, TorTable};

/// Generators and differential of a bigraded complex.
pub trait ChainModel<F: Field>: Sync {
    type Gen: Clone + Ord + Hash + Debug + Send + Sync;

    /// Basis of the chain group in bidegree `(s, n)`, in a fixed order.
    fn generators(&self, s: usize, n: usize) -> Result<Vec<Self::Gen>>;

    /// Appends the terms of `d(g)`; duplicates are summed by the caller.
    fn boundary(&self, g: &Self::Gen, out: &mut Vec<(Self::Gen, F::Elem)>) -> Result<()>;

    fn label(&self, g: &Self::Gen) -> String;
}

#[derive(Debug, Clone)]
struct Block<E> {
    labels: Vec<String>,
    /// `columns[j]` is the boundary of generator `j` in the `(s - 1, n)` basis.
    columns: Vec<SparseVec<E>>,
    rank: usize,
}

/// Chain groups with sparse boundary matrices over an exact field.
#[derive(Debug, Clone)]
pub struct BigradedChainComplex<F: Field> {
    field: F,
    s_max: usize,
    n_max: usize,
    blocks: BTreeMap<(usize, usize), Block<F::Elem>>,
}

impl<F: Field> BigradedChainComplex<F> {
    /// Builds every block, checks `d² = 0` everywhere and computes ranks.
    pub fn build<M: ChainModel<F>>(model: &M, field: &F, s_max: usize, n_max: usize) -> Result<Self> {
        let ns: Vec<usize> = (0..=n_max).collect();
        let per_n = par_map(&ns, |&n| build_column(model, field, s_max + 1, n));
        let mut blocks = BTreeMap::new();
        for (n, col) in ns.into_iter().zip(per_n) {
            for (s, block) in col?.into_iter().enumerate() {
                blocks.insert((s, n), block);
            }
        }
        Ok(BigradedChainComplex {
            field: field.clone(),
            s_max,
            n_max,
            blocks,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_trusted(&self, s: usize, n: usize) -> bool {
        s <= self.s_max && n <= self.n_max
    }

    /// Rank of the chain group at `(s, n)`; built groups go one step past `s_max`.
    pub fn chain_dim(&self, s: usize, n: usize) -> usize {
        self.blocks.get(&(s, n)).map_or(0, |b| b.labels.len())
    }

    pub fn labels(&self, s: usize, n: usize) -> &[String] {
        self.blocks.get(&(s, n)).map_or(&[], |b| b.labels.as_slice())
    }

    /// Boundary of generator `j` at `(s, n)`, as `(index, coefficient)` pairs.
    pub fn boundary_column(&self, s: usize, n: usize, j: usize) -> Option<&SparseVec<F::Elem>> {
        self.blocks.get(&(s, n)).and_then(|b| b.columns.get(j))
    }

    fn rank(&self, s: usize, n: usize) -> usize {
        self.blocks.get(&(s, n)).map_or(0, |b| b.rank)
    }

    pub fn homology(&self, s: usize, n: usize) -> Result<usize> {
        if !self.is_trusted(s, n) {
            return Err(Error::OutsideTrustedRange {
                s,
                n,
                s_max: self.s_max,
                n_max: self.n_max,
            });
        }
        Ok(self.chain_dim(s, n) - self.rank(s, n) - self.rank(s + 1, n))
    }

    pub fn homology_table(&self, provenance: Provenance) -> TorTable {
        let mut t = TorTable::zeros(self.s_max, self.n_max, provenance);
        for s in 0..=self.s_max {
            for n in 0..=self.n_max {
                t.set(s, n, self.homology(s, n).expect("inside the trusted range"));
            }
        }
        t
    }
}

/// All blocks `(0..=s_top, n)` for one internal degree.
fn build_column<F: Field, M: ChainModel<F>>(model: &M, f: &F, s_top: usize, n: usize) -> Result<Vec<Block<F::Elem>>> {
    let mut out: Vec<Block<F::Elem>> = Vec::with_capacity(s_top + 1);
    let mut below: HashMap<M::Gen, usize> = HashMap::new();
    let mut terms = Vec::new();
    for s in 0..=s_top {
        let gens = model.generators(s, n)?;
        let mut columns = Vec::with_capacity(gens.len());
        for g in &gens {
            terms.clear();
            model.boundary(g, &mut terms)?;
            let mut idx = Vec::with_capacity(terms.len());
            for (h, c) in terms.drain(..) {
                let j = *below.get(&h).ok_or_else(|| {
                    Error::invalid(format!(
                        "boundary of {} leaves the complex at {}",
                        model.label(g),
                        model.label(&h)
                    ))
                })?;
                idx.push((j, c));
            }
            if s == 0 && !idx.is_empty() {
                return Err(Error::invalid("degree-0 generators must be cycles"));
            }
            columns.push(canonicalize(f, idx));
        }
        if s >= 2 {
            let prev = &out[s - 1].columns;
            for (j, col) in columns.iter().enumerate() {
                let mut acc = Vec::new();
                for (i, c) in col {
                    for (k, e) in &prev[*i] {
                        acc.push((*k, f.mul(c, e)));
                    }
                }
                if !canonicalize(f, acc).is_empty() {
                    return Err(Error::DSquaredNonzero {
                        s,
                        n,
                        generator: model.label(&gens[j]),
                    });
                }
            }
        }
        let rank = sparse_rank(f, columns.iter().cloned());
        below = gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        out.push(Block {
            labels: gens.iter().map(|g| model.label(g)).collect(),
            columns,
            rank,
        });
    }
    Ok(out)
}
