//! Polyhedral bar complexes over a flag complex.
//!
//! A generator assigns to each vertex `i` a local bar word `c_i = [a_i^1|…|a_i^{s_i}]`,
//! the vertices with `s_i > 0` spanning a simplex. Variant A-prime also carries a
//! coefficient `a_i^0 ∈ A_i` per vertex, so each factor lives in the left bar
//! resolution `A_i ⊗_τ B̄(A_i)`; variant A-K has no coefficients. Factors are
//! combined with the Koszul rule, a factor `a[a_1|…|a_s]` having total degree
//! `|a| + s + Σ|a_j|`.

use std::fmt;
use std::str::FromStr;

use super::bar::{bar_words, check_truncation, reduced_bar_boundary, render_word};
use super::{BigradedChainComplex, ChainModel};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldKind};
use crate::galg::{BasisElem, GpRing, GraphProductAlgebra, Monomial, MulTable};
use crate::torform::{Provenance, TorTable};
use crate::with_field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Coefficients in `⊗ A_i`; homology is `Tor^{A'}`.
    APrime,
    /// Trivial coefficients; homology is `Tor^{A^K}`.
    AK,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::APrime => "aprime",
            Variant::AK => "ak",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_', '\''], "").as_str() {
            "aprime" => Ok(Variant::APrime),
            "ak" => Ok(Variant::AK),
            _ => Err(Error::invalid(format!("unknown variant '{s}' (expected aprime or ak)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyGen {
    /// Per-vertex coefficients; all units in variant A-K.
    pub coeffs: Vec<BasisElem>,
    pub words: Vec<Vec<BasisElem>>,
}

/// `words[i][s][n]`: local bar words at vertex `i + 1`.
type WordCache = Vec<Vec<Vec<Vec<Vec<BasisElem>>>>>;

fn word_cache(gp: &GraphProductAlgebra, s_top: usize, n_max: usize) -> WordCache {
    gp.algebras()
        .iter()
        .map(|alg| {
            (0..=s_top)
                .map(|s| (0..=n_max).map(|n| bar_words(alg, s, n)).collect())
                .collect()
        })
        .collect()
}

/// Tuples of local bar words with total `(s, n)` and support a simplex of `K`.
fn bar_tuples(gp: &GraphProductAlgebra, cache: &WordCache, with_coeffs: bool, s: usize, n: usize) -> Vec<PolyGen> {
    struct Walk<'a> {
        gp: &'a GraphProductAlgebra,
        cache: &'a WordCache,
        with_coeffs: bool,
        coeffs: Vec<BasisElem>,
        words: Vec<Vec<BasisElem>>,
        support: Vec<u32>,
        out: Vec<PolyGen>,
    }
    impl Walk<'_> {
        fn go(&mut self, i: usize, rem_s: usize, rem_n: usize) {
            let m = self.gp.algebras().len();
            if i == m {
                if rem_s == 0 && rem_n == 0 {
                    self.out.push(PolyGen {
                        coeffs: self.coeffs.clone(),
                        words: self.words.clone(),
                    });
                }
                return;
            }
            let v = i as u32 + 1;
            let coeff_choices: Vec<BasisElem> = if self.with_coeffs {
                (0..=rem_n).flat_map(|d| self.gp.algebra(v).basis_in(d)).collect()
            } else {
                vec![BasisElem::UNIT]
            };
            let allowed = self.support.iter().all(|&u| self.gp.complex().adjacent(u, v));
            for a in coeff_choices {
                let left_n = rem_n - a.degree as usize;
                self.coeffs.push(a);
                let s_hi = if allowed { rem_s } else { 0 };
                for si in 0..=s_hi {
                    if si > 0 {
                        self.support.push(v);
                    }
                    for ni in 0..=left_n {
                        let ws = &self.cache[i][si][ni];
                        for w in ws.iter() {
                            self.words.push(w.clone());
                            self.go(i + 1, rem_s - si, left_n - ni);
                            self.words.pop();
                        }
                    }
                    if si > 0 {
                        self.support.pop();
                    }
                }
                self.coeffs.pop();
            }
        }
    }
    let mut walk = Walk {
        gp,
        cache,
        with_coeffs,
        coeffs: Vec::new(),
        words: Vec::new(),
        support: Vec::new(),
        out: Vec::new(),
    };
    walk.go(0, s, n);
    walk.out
}

fn render_tuple(gp: &GraphProductAlgebra, coeffs: &[BasisElem], words: &[Vec<BasisElem>]) -> String {
    let mut parts = Vec::new();
    for (i, w) in words.iter().enumerate() {
        let v = i as u32 + 1;
        let a = coeffs.get(i).copied().unwrap_or(BasisElem::UNIT);
        if a.is_unit() && w.is_empty() {
            continue;
        }
        let alg = gp.algebra(v);
        let coeff = if a.is_unit() { String::new() } else { alg.elem_name(a).to_string() };
        parts.push(format!("{coeff}{}_{v}", render_word(alg, w)));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ⊗ ")
    }
}

/// Either polyhedral variant as a chain model.
pub struct PolyhedralModel<'a, F: Field> {
    gp: &'a GraphProductAlgebra,
    variant: Variant,
    tables: Vec<MulTable<F>>,
    cache: WordCache,
}

impl<'a, F: Field> PolyhedralModel<'a, F> {
    pub fn new(gp: &'a GraphProductAlgebra, variant: Variant, f: &F, s_top: usize, n_max: usize) -> Result<Self> {
        Ok(PolyhedralModel {
            gp,
            variant,
            tables: gp.algebras().iter().map(|a| a.table_in(f)).collect::<Result<_>>()?,
            cache: word_cache(gp, s_top, n_max),
        })
    }
}

impl<F: Field> ChainModel<F> for PolyhedralModel<'_, F> {
    type Gen = PolyGen;

    fn generators(&self, s: usize, n: usize) -> Result<Vec<PolyGen>> {
        Ok(bar_tuples(self.gp, &self.cache, self.variant == Variant::APrime, s, n))
    }

    fn boundary(&self, g: &PolyGen, out: &mut Vec<(PolyGen, F::Elem)>) -> Result<()> {
        let mut prefix = 0u32;
        for (i, word) in g.words.iter().enumerate() {
            let table = &self.tables[i];
            let f = table.field();
            let a = g.coeffs[i];
            let word_deg: u32 = word.iter().map(|x| x.degree).sum();
            if !word.is_empty() {
                let sign = f.sign((prefix + a.degree) % 2 == 1);
                if self.variant == Variant::APrime {
                    // a[a_1|…] ↦ (-1)^{|a|} a·a_1 [a_2|…]
                    let products: Vec<(BasisElem, F::Elem)> = if a.is_unit() {
                        vec![(word[0], f.one())]
                    } else {
                        table.mul(a, word[0])?.to_vec()
                    };
                    for (z, cz) in products {
                        let mut h = g.clone();
                        h.coeffs[i] = z;
                        h.words[i].remove(0);
                        out.push((h, f.mul(&sign, &cz)));
                    }
                }
                reduced_bar_boundary(
                    table,
                    word,
                    &sign,
                    |w| {
                        let mut h = g.clone();
                        h.words[i] = w;
                        h
                    },
                    out,
                )?;
            }
            prefix += a.degree + word.len() as u32 + word_deg;
        }
        Ok(())
    }

    fn label(&self, g: &PolyGen) -> String {
        render_tuple(self.gp, &g.coeffs, &g.words)
    }
}

pub fn polyhedral_bar<F: Field>(
    gp: &GraphProductAlgebra,
    s_max: usize,
    n_max: usize,
    f: &F,
    variant: Variant,
) -> Result<BigradedChainComplex<F>> {
    check_truncation(n_max, gp.trunc(), "polyhedral bar complex")?;
    let model = PolyhedralModel::new(gp, variant, f, s_max + 1, n_max)?;
    BigradedChainComplex::build(&model, f, s_max, n_max)
}

/// Homology of a polyhedral variant: `Tor^{A'}` or `Tor^{A^K}`.
pub fn tor_dims_polyhedral(
    gp: &GraphProductAlgebra,
    s_max: usize,
    n_max: usize,
    field: FieldKind,
    variant: Variant,
) -> Result<TorTable> {
    with_field!(field, |f| Ok(polyhedral_bar(gp, s_max, n_max, &f, variant)?
        .homology_table(Provenance::BarOracle)))
}

/// `A^K ⊗_τ (B̄A)^K`: a normal monomial of the graph product tensored with a
/// tuple of local bar words.
pub struct FullModel<'a, F: Field> {
    ring: GpRing<'a, F>,
    cache: WordCache,
    bases: Vec<Vec<Monomial>>,
}

impl<'a, F: Field> FullModel<'a, F> {
    pub fn new(gp: &'a GraphProductAlgebra, f: &F, s_top: usize, n_max: usize) -> Result<Self> {
        Ok(FullModel {
            ring: gp.ring(f)?,
            cache: word_cache(gp, s_top, n_max),
            bases: (0..=n_max).map(|n| gp.basis(n)).collect::<Result<_>>()?,
        })
    }
}

impl<F: Field> ChainModel<F> for FullModel<'_, F> {
    type Gen = (Monomial, Vec<Vec<BasisElem>>);

    fn generators(&self, s: usize, n: usize) -> Result<Vec<Self::Gen>> {
        let gp = self.ring.algebra();
        let mut out = Vec::new();
        for nc in 0..=n {
            let tuples = bar_tuples(gp, &self.cache, false, s, nc);
            if tuples.is_empty() {
                continue;
            }
            for a in &self.bases[n - nc] {
                for t in &tuples {
                    out.push((a.clone(), t.words.clone()));
                }
            }
        }
        Ok(out)
    }

    /// `d_τ(a ⊗ c) = (-1)^{|a|} (Σ_i (-1)^{ν_i} a a_i^1 ⊗ c^{(i)} + a ⊗ d̄c)` where
    /// `c^{(i)}` drops `a_i^1`, `ν_i = (Σ_{j<i} |c_j|)(|a_i^1| + 1)` and `d̄` is the
    /// Koszul tensor differential.
    fn boundary(&self, g: &Self::Gen, out: &mut Vec<(Self::Gen, F::Elem)>) -> Result<()> {
        let (a, words) = g;
        let f = self.ring.field();
        let a_deg: u32 = a.iter().map(|l| l.1.degree).sum();
        let mut prefix = 0u32;
        for (i, word) in words.iter().enumerate() {
            if word.is_empty() {
                continue;
            }
            let v = i as u32 + 1;
            let nu = prefix * (word[0].degree + 1);
            let mut prod = a.clone();
            prod.push((v, word[0]));
            let sum = self.ring.normalize(f.sign((a_deg + nu) % 2 == 1), &prod)?;
            for (mono, c) in sum.terms() {
                let mut w = words.clone();
                w[i].remove(0);
                out.push(((mono.clone(), w), c.clone()));
            }
            let sign = f.sign((a_deg + prefix) % 2 == 1);
            reduced_bar_boundary(
                self.ring.table(v),
                word,
                &sign,
                |w| {
                    let mut ws = words.clone();
                    ws[i] = w;
                    (a.clone(), ws)
                },
                out,
            )?;
            prefix += word.len() as u32 + word.iter().map(|x| x.degree).sum::<u32>();
        }
        Ok(())
    }

    fn label(&self, g: &Self::Gen) -> String {
        let gp = self.ring.algebra();
        format!("{} ⊗ {}", gp.render(&g.0), render_tuple(gp, &[], &g.1))
    }
}

pub fn full_complex<F: Field>(gp: &GraphProductAlgebra, s_max: usize, n_max: usize, f: &F) -> Result<BigradedChainComplex<F>> {
    check_truncation(n_max, gp.trunc(), "acyclicity complex")?;
    let model = FullModel::new(gp, f, s_max + 1, n_max)?;
    BigradedChainComplex::build(&model, f, s_max, n_max)
}

/// Homology of `A^K ⊗_τ (B̄A)^K` on the trusted range; a resolution of `k`
/// has only `H_{0,0} = 1`.
#[derive(Debug, Clone)]
pub struct AcyclicReport {
    pub homology: TorTable,
    /// Chain group ranks `[s][n]` up to `s_max`.
    pub chain_dims: Vec<Vec<usize>>,
    /// Bidegrees with unexpected homology.
    pub failures: Vec<(usize, usize, usize)>,
}

impl AcyclicReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_acyclic_full(gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<AcyclicReport> {
    with_field!(field, |f| {
        let c = full_complex(gp, s_max, n_max, &f)?;
        let homology = c.homology_table(Provenance::BarOracle);
        let mut failures: Vec<_> = homology
            .nonzero()
            .into_iter()
            .filter(|&(s, n, d)| (s, n, d) != (0, 0, 1))
            .collect();
        if homology.get(0, 0)? == 0 {
            failures.insert(0, (0, 0, 0));
        }
        let chain_dims = (0..=s_max)
            .map(|s| (0..=n_max).map(|n| c.chain_dim(s, n)).collect())
            .collect();
        Ok(AcyclicReport {
            homology,
            chain_dims,
            failures,
        })
    })
}
