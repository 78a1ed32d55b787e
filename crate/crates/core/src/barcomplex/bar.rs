use super::{BigradedChainComplex, ChainModel};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldKind};
use crate::galg::{BasisElem, GradedAlgebra, MulTable};
use crate::torform::{Provenance, TorTable};
use crate::with_field;

/// Every `[a_1|…|a_s]` of positive-degree basis elements with `Σ|a_j| = n`.
pub fn bar_words(alg: &GradedAlgebra, s: usize, n: usize) -> Vec<Vec<BasisElem>> {
    fn grow(alg: &GradedAlgebra, s: usize, rem: usize, word: &mut Vec<BasisElem>, out: &mut Vec<Vec<BasisElem>>) {
        if word.len() == s {
            if rem == 0 {
                out.push(word.clone());
            }
            return;
        }
        let left = s - word.len() - 1;
        for d in 1..=rem.saturating_sub(left) {
            for x in alg.basis_in(d) {
                word.push(x);
                grow(alg, s, rem - d, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(alg, s, n, &mut Vec::with_capacity(s), &mut out);
    out
}

/// Appends `d̄[a_1|…|a_s] = Σ_j (-1)^{j + |a_1|+…+|a_j|} [a_1|…|a_j a_{j+1}|…|a_s]`,
/// each term scaled by `scale` and wrapped by `wrap`.
pub(crate) fn reduced_bar_boundary<F: Field, G>(
    table: &MulTable<F>,
    word: &[BasisElem],
    scale: &F::Elem,
    mut wrap: impl FnMut(Vec<BasisElem>) -> G,
    out: &mut Vec<(G, F::Elem)>,
) -> Result<()> {
    let f = table.field();
    let mut deg = 0u32;
    for j in 1..word.len() {
        deg += word[j - 1].degree;
        let sign = f.sign((j as u32 + deg) % 2 == 1);
        let c = f.mul(scale, &sign);
        for (z, cz) in table.mul(word[j - 1], word[j])? {
            let mut w = Vec::with_capacity(word.len() - 1);
            w.extend_from_slice(&word[..j - 1]);
            w.push(*z);
            w.extend_from_slice(&word[j + 1..]);
            out.push((wrap(w), f.mul(&c, cz)));
        }
    }
    Ok(())
}

pub(crate) fn render_word(alg: &GradedAlgebra, w: &[BasisElem]) -> String {
    let parts: Vec<&str> = w.iter().map(|&x| alg.elem_name(x)).collect();
    format!("[{}]", parts.join("|"))
}

/// The normalized reduced bar construction of one algebra.
pub struct BarModel<'a, F: Field> {
    alg: &'a GradedAlgebra,
    table: MulTable<F>,
}

impl<'a, F: Field> BarModel<'a, F> {
    pub fn new(alg: &'a GradedAlgebra, f: &F) -> Result<Self> {
        Ok(BarModel {
            alg,
            table: alg.table_in(f)?,
        })
    }
}

impl<F: Field> ChainModel<F> for BarModel<'_, F> {
    type Gen = Vec<BasisElem>;

    fn generators(&self, s: usize, n: usize) -> Result<Vec<Self::Gen>> {
        Ok(bar_words(self.alg, s, n))
    }

    fn boundary(&self, g: &Self::Gen, out: &mut Vec<(Self::Gen, F::Elem)>) -> Result<()> {
        let one = self.table.field().one();
        reduced_bar_boundary(&self.table, g, &one, |w| w, out)
    }

    fn label(&self, g: &Self::Gen) -> String {
        render_word(self.alg, g)
    }
}

pub(crate) fn check_truncation(n_max: usize, limit: usize, context: &str) -> Result<()> {
    if n_max > limit {
        return Err(Error::TruncationOverflow {
            degree: n_max,
            limit,
            context: context.to_string(),
        });
    }
    Ok(())
}

pub fn bar_complex<F: Field>(alg: &GradedAlgebra, s_max: usize, n_max: usize, f: &F) -> Result<BigradedChainComplex<F>> {
    check_truncation(n_max, alg.trunc(), "bar complex")?;
    BigradedChainComplex::build(&BarModel::new(alg, f)?, f, s_max, n_max)
}

/// `dim Tor^A_{s,n}(k, k)` from the bar complex.
pub fn tor_dims_bar(alg: &GradedAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable> {
    with_field!(field, |f| Ok(bar_complex(alg, s_max, n_max, &f)?.homology_table(Provenance::BarOracle)))
}
