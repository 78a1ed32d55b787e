//! Reduced simplicial homology of flag complexes over an exact field, through
//! the augmented chain complex (the empty simplex spans dimension -1).

use std::collections::BTreeMap;

use crate::complex::{FlagComplex, Simplex};
use crate::exactmath::{Field, FieldKind};
use crate::linalg::dense_rank;
use crate::with_field;
use crate::Result;

/// Augmented simplicial chains with dense boundary matrices.
#[derive(Debug, Clone)]
pub struct AugmentedChainComplex<F: Field> {
    field: F,
    /// `bases[d + 1]` lists the simplices of dimension `d`, lexicographically.
    bases: Vec<Vec<Simplex>>,
    /// `boundaries[d]` is ∂_d : C_d → C_{d-1} for `d >= 0`, stored with one row
    /// per simplex of dimension `d - 1` and one column per simplex of dimension `d`.
    boundaries: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> AugmentedChainComplex<F> {
    /// Boundary of σ is Σ_{i∈σ} (-1)^{#{j∈σ : j<i}} (σ ∖ {i}); vertices map to ∅.
    pub fn build(k: &FlagComplex, field: F) -> Self {
        let top = (k.dim() + 1) as usize;
        let bases: Vec<Vec<Simplex>> = (0..=top).map(|size| k.simplices_of_size(size)).collect();
        let mut boundaries = Vec::with_capacity(top);
        for size in 1..=top {
            let rows = &bases[size - 1];
            let cols = &bases[size];
            let index: BTreeMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut m = vec![vec![field.zero(); cols.len()]; rows.len()];
            for (c, sigma) in cols.iter().enumerate() {
                for (pos, _) in sigma.vertices().iter().enumerate() {
                    let mut face = sigma.vertices().to_vec();
                    face.remove(pos);
                    let r = index[&Simplex::new(face)];
                    m[r][c] = field.sign(pos % 2 == 1);
                }
            }
            boundaries.push(m);
        }
        AugmentedChainComplex {
            field,
            bases,
            boundaries,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Simplices of dimension `d` (`d >= -1`).
    pub fn basis(&self, d: isize) -> &[Simplex] {
        self.bases.get((d + 1) as usize).map_or(&[], |b| b.as_slice())
    }

    /// ∂_d as a dense matrix (rows: dimension `d-1`, columns: dimension `d`).
    pub fn boundary(&self, d: isize) -> Option<&Vec<Vec<F::Elem>>> {
        if d < 0 {
            return None;
        }
        self.boundaries.get(d as usize)
    }

    /// Top dimension carrying chains, `-1` when only ∅ is present.
    pub fn top_dim(&self) -> isize {
        self.bases.len() as isize - 2
    }

    fn rank_of(&self, d: isize) -> usize {
        match self.boundary(d) {
            Some(m) if !m.is_empty() => dense_rank(&self.field, m.clone()),
            _ => 0,
        }
    }

    /// Whether ∂_{d-1} ∘ ∂_d vanishes for every `d`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        let f = &self.field;
        for d in 1..self.boundaries.len() {
            let outer = &self.boundaries[d - 1];
            let inner = &self.boundaries[d];
            for c in 0..self.bases[d + 1].len() {
                for (r, orow) in outer.iter().enumerate() {
                    let mut acc = f.zero();
                    for (mid, irow) in inner.iter().enumerate() {
                        if !f.is_zero(&irow[c]) && !f.is_zero(&orow[mid]) {
                            acc = f.add(&acc, &f.mul(&orow[mid], &irow[c]));
                        }
                    }
                    if !f.is_zero(&acc) {
                        let _ = r;
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn homology(&self) -> HomologyProfile {
        let top = self.top_dim();
        let mut dims = BTreeMap::new();
        for d in 0..=top.max(-1) {
            let n = self.basis(d).len();
            let nullity = n - self.rank_of(d);
            let h = nullity - self.rank_of(d + 1);
            dims.insert(d as usize, h);
        }
        HomologyProfile {
            dims,
            empty_complex: top < 0,
            field: self.field.kind(),
        }
    }
}

/// Reduced Betti numbers of a complex.
///
/// `dims` holds degrees `0..=dim K`; the empty complex (whose only reduced
/// homology is in degree -1) is flagged separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub dims: BTreeMap<usize, usize>,
    pub empty_complex: bool,
    pub field: FieldKind,
}

impl HomologyProfile {
    pub fn get(&self, d: usize) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    /// `dim H̃_{s-1}` for `s >= 1`, the quantity the Tor formulas consume.
    pub fn shifted(&self, s: usize) -> usize {
        if s == 0 {
            usize::from(self.empty_complex)
        } else {
            self.get(s - 1)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        !self.empty_complex && self.dims.values().all(|&d| d == 0)
    }

    /// Σ_d (-1)^d dim H̃_d, counting the empty complex's H̃_{-1} as -1.
    pub fn euler_characteristic(&self) -> i64 {
        let body: i64 = self
            .dims
            .iter()
            .map(|(&d, &h)| if d % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum();
        if self.empty_complex {
            body - 1
        } else {
            body
        }
    }
}

pub fn build_chain_complex<F: Field>(k: &FlagComplex, field: F) -> AugmentedChainComplex<F> {
    AugmentedChainComplex::build(k, field)
}

pub fn reduced_homology_in<F: Field>(k: &FlagComplex, field: F) -> HomologyProfile {
    AugmentedChainComplex::build(k, field).homology()
}

pub fn reduced_homology(k: &FlagComplex, field: FieldKind) -> Result<HomologyProfile> {
    with_field!(field, |f| Ok(reduced_homology_in(k, f)))
}

/// Σ_{σ≠∅} (-1)^{dim σ} - 1, the reduced Euler characteristic from simplex counts.
pub fn reduced_euler_from_simplices(k: &FlagComplex) -> i64 {
    let mut chi = 0i64;
    k.for_each_simplex(|s| {
        let n = s.count_ones();
        if n > 0 {
            chi += if n % 2 == 1 { 1 } else { -1 };
        }
    });
    chi - 1
}
