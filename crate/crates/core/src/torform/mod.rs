//! Tor of graph-product algebras in closed form, Euler–Poincaré series, minimal
//! generators and freeness criteria.
//!
//! `A'` is the kernel of `A^K → ⊗ A_i`. Its Tor is read off from the reduced
//! homology of the full subcomplexes `K_I`:
//! `dim Tor^{A'}_{s,n} = Σ_I dim H̃_{s-1}(K_I) · [tⁿ] ∏_{i∈I} P(J(A_i))`.

mod routes;
mod table;

pub use routes::{SeriesRegistry, SeriesRoute, TorRegistry, TorRoute};
pub use table::{Provenance, TorTable};

use num_rational::BigRational;

use crate::barcomplex::tor_dims_bar;
use crate::complex::{vertices_of, FlagComplex};
use crate::error::{Error, Result};
use crate::exactmath::{FieldKind, RationalFunction, TruncatedSeries};
use crate::galg::{BasisElem, GraphProductAlgebra};
use crate::homology::{reduced_homology, HomologyProfile};

/// Reduced homology of every nonempty full subcomplex, keyed by vertex mask.
pub fn subset_profiles(k: &FlagComplex, field: FieldKind) -> Result<Vec<(u64, HomologyProfile)>> {
    let m = k.ambient_size();
    (1u64..(1u64 << m))
        .map(|set| Ok((set, reduced_homology(&k.full_subcomplex(set)?, field)?)))
        .collect()
}

fn augmentation_product(gp: &GraphProductAlgebra, set: u64, n_max: usize) -> Result<TruncatedSeries> {
    vertices_of(set)
        .into_iter()
        .try_fold(TruncatedSeries::one(n_max), |acc, v| {
            Ok(acc.mul(&gp.algebra(v).augmentation_series(n_max)?))
        })
}

fn coefficient_count(s: &TruncatedSeries, n: usize) -> usize {
    let c = s.coeff(n).expect("within truncation");
    usize::try_from(c.to_integer()).expect("dimension counts are nonnegative integers")
}

pub fn tor_aprime_closed(gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable> {
    let mut t = TorTable::zeros(s_max, n_max, Provenance::ClosedForm);
    t.set(0, 0, 1);
    for (set, h) in subset_profiles(gp.complex(), field)? {
        // s = 1 needs a disconnected K_I, and so on: skip acyclic subsets early
        if (1..=s_max).all(|s| h.shifted(s) == 0) {
            continue;
        }
        let series = augmentation_product(gp, set, n_max)?;
        for s in 1..=s_max {
            let b = h.shifted(s);
            if b == 0 {
                continue;
            }
            for n in 0..=n_max {
                t.add(s, n, b * coefficient_count(&series, n));
            }
        }
    }
    Ok(t)
}

/// Tor tables of the vertex algebras from the bar oracle, one per vertex.
pub fn component_tables(gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<Vec<TorTable>> {
    let mut cache: Vec<(String, usize, TorTable)> = Vec::new();
    let mut out = Vec::new();
    for alg in gp.algebras() {
        let key = (alg.name().to_string(), alg.trunc());
        let t = match cache.iter().find(|c| (c.0.as_str(), c.1) == (key.0.as_str(), key.1)) {
            Some(c) => c.2.clone(),
            None => {
                let t = tor_dims_bar(alg, s_max, n_max, field)?;
                cache.push((key.0, key.1, t.clone()));
                t
            }
        };
        out.push(t);
    }
    Ok(out)
}

/// `Σ_{σ∈K}` of the convolution of the component tables over `σ`, each factor
/// restricted to `s_i >= 1`.
pub fn tor_ak_from_components(k: &FlagComplex, components: &[TorTable], s_max: usize, n_max: usize) -> Result<TorTable> {
    if components.len() != k.ambient_size() {
        return Err(Error::invalid("one component table per vertex is needed"));
    }
    for c in components {
        if c.s_max() < s_max || c.n_max() < n_max {
            return Err(Error::OutsideTrustedRange {
                s: s_max,
                n: n_max,
                s_max: c.s_max(),
                n_max: c.n_max(),
            });
        }
    }
    let mut t = TorTable::zeros(s_max, n_max, Provenance::ClosedForm);
    k.for_each_simplex(|sigma| {
        let mut conv = vec![vec![0usize; n_max + 1]; s_max + 1];
        conv[0][0] = 1;
        for v in vertices_of(sigma) {
            let c = &components[v as usize - 1];
            let mut next = vec![vec![0usize; n_max + 1]; s_max + 1];
            for s in 0..=s_max {
                for n in 0..=n_max {
                    if conv[s][n] == 0 {
                        continue;
                    }
                    for si in 1..=s_max - s {
                        for ni in 0..=n_max - n {
                            let d = c.get(si, ni).expect("range checked");
                            next[s + si][n + ni] += conv[s][n] * d;
                        }
                    }
                }
            }
            conv = next;
        }
        for (s, row) in conv.iter().enumerate() {
            for (n, &d) in row.iter().enumerate() {
                t.add(s, n, d);
            }
        }
    });
    Ok(t)
}

pub fn tor_ak_closed(gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable> {
    let comps = component_tables(gp, s_max, n_max, field)?;
    tor_ak_from_components(gp.complex(), &comps, s_max, n_max)
}

/// `1/P(A')` and `P(A')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpSeries {
    pub inverse: TruncatedSeries,
    pub series: TruncatedSeries,
}

/// `1/P(A') = 1 + Σ_{I≠∅} Σ_s (-1)^s dim H̃_{s-1}(K_I) ∏_{i∈I} P(J(A_i))`.
pub fn ep_series_aprime(gp: &GraphProductAlgebra, n: usize, field: FieldKind) -> Result<EpSeries> {
    let mut inverse = TruncatedSeries::one(n);
    for (set, h) in subset_profiles(gp.complex(), field)? {
        let chi: i64 = h
            .dims
            .iter()
            .map(|(&d, &b)| if (d + 1) % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if chi == 0 {
            continue;
        }
        let term = augmentation_product(gp, set, n)?;
        inverse = inverse.add(&term.scale(&BigRational::from_integer(chi.into())));
    }
    let series = inverse.invert()?;
    Ok(EpSeries { inverse, series })
}

/// `P(A^K) = P(A') ∏ P(A_i)`.
pub fn ep_series_ak(gp: &GraphProductAlgebra, n: usize, field: FieldKind) -> Result<TruncatedSeries> {
    let ep = ep_series_aprime(gp, n, field)?;
    gp.algebras()
        .iter()
        .try_fold(ep.series, |acc, a| Ok(acc.mul(&a.hilbert_series(n)?)))
}

/// `P(A^K)` as an exact rational function, from the vertex Hilbert functions.
pub fn hilbert_rational(gp: &GraphProductAlgebra, field: FieldKind) -> Result<RationalFunction> {
    let h: Vec<&RationalFunction> = gp
        .algebras()
        .iter()
        .map(|a| {
            a.hilbert_function()
                .ok_or_else(|| Error::invalid(format!("algebra {} has no Hilbert function", a.name())))
        })
        .collect::<Result<_>>()?;
    let one = RationalFunction::constant(1);
    let mut inverse = one.clone();
    for (set, p) in subset_profiles(gp.complex(), field)? {
        let chi: i64 = p
            .dims
            .iter()
            .map(|(&d, &b)| if (d + 1) % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if chi == 0 {
            continue;
        }
        let term = vertices_of(set)
            .into_iter()
            .fold(one.clone(), |acc, v| acc.mul(&h[v as usize - 1].add(&one.scale(-1))));
        inverse = inverse.add(&term.scale(chi));
    }
    let product = h.iter().fold(one, |acc, x| acc.mul(x));
    Ok(product.mul(&inverse.recip()?))
}

/// Checks `1/P = Σ_s (-1)^s P(Tor_s)` to the table's internal degree.
pub fn pat_identity_holds(p: &TruncatedSeries, tor: &TorTable) -> Result<bool> {
    let n = tor.n_max();
    Ok(p.truncate(n).invert()? == tor.alternating_series())
}

/// One iterated bracket `[x_{i_1}, [x_{i_2}, … [x_{i_k}, x_t]…]]` (skipping `t`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub subset: Vec<u32>,
    pub t: u32,
    /// Chosen basis element at each vertex of the subset, in vertex order.
    pub choices: Vec<(u32, BasisElem)>,
    pub degree: usize,
    pub expression: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorList {
    pub entries: Vec<GeneratorEntry>,
}

impl GeneratorList {
    /// Entry counts by internal degree `0..=n_max`.
    pub fn counts(&self, n_max: usize) -> Vec<usize> {
        let mut c = vec![0; n_max + 1];
        for e in &self.entries {
            c[e.degree] += 1;
        }
        c
    }
}

/// Iterated brackets generating `A'`, up to internal degree `n_max`.
pub fn min_generators_aprime(gp: &GraphProductAlgebra, n_max: usize) -> Result<GeneratorList> {
    let k = gp.complex();
    let m = k.ambient_size();
    let mut entries = Vec::new();
    for set in 1u64..(1u64 << m) {
        let sub = k.full_subcomplex(set)?;
        let comps = sub.components();
        if comps.len() < 2 {
            continue;
        }
        let verts = vertices_of(set);
        let last = *verts.last().expect("nonempty");
        let mut choices: Vec<Vec<(u32, BasisElem)>> = vec![Vec::new()];
        for &v in &verts {
            let pos = gp.algebra(v).positive_basis(n_max);
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    pos.iter().filter_map(move |&x| {
                        let deg: usize = c.iter().map(|l| l.1.degree as usize).sum::<usize>() + x.degree as usize;
                        (deg <= n_max).then(|| {
                            let mut c = c.clone();
                            c.push((v, x));
                            c
                        })
                    })
                })
                .collect();
        }
        for comp in comps.iter().filter(|c| !c.contains(&last)) {
            let t = comp[0];
            for c in &choices {
                let name = |&(v, x): &(u32, BasisElem)| format!("{}_{v}", gp.algebra(v).elem_name(x));
                let inner = name(c.iter().find(|l| l.0 == t).expect("t in I"));
                let expression = c
                    .iter()
                    .rev()
                    .filter(|l| l.0 != t)
                    .fold(inner, |acc, l| format!("[{},{acc}]", name(l)));
                entries.push(GeneratorEntry {
                    subset: verts.clone(),
                    t,
                    choices: c.clone(),
                    degree: c.iter().map(|l| l.1.degree as usize).sum(),
                    expression,
                });
            }
        }
    }
    Ok(GeneratorList { entries })
}

/// `A'` is free iff `H̃_1(K_I) = 0` for every full subcomplex.
pub fn is_free_aprime(k: &FlagComplex, field: FieldKind) -> Result<bool> {
    Ok(subset_profiles(k, field)?.iter().all(|(_, h)| h.get(1) == 0))
}

/// The kernel of the abelianization is free on the iterated commutators iff the
/// 1-skeleton is chordal.
pub fn is_free_h_groups(k: &FlagComplex) -> bool {
    k.is_chordal()
}

#[cfg(test)]
mod tests;
