use std::collections::BTreeMap;

use super::{BasisElem, GradedAlgebra, MulTable};
use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::exactmath::{Field, TruncatedSeries};
use crate::groupprod::split_token;
use crate::trace;

/// A word of `(vertex, basis element)` letters.
pub type Monomial = Vec<(u32, BasisElem)>;

fn degree_of(m: &[(u32, BasisElem)]) -> usize {
    m.iter().map(|l| l.1.degree as usize).sum()
}

/// Linear combination of normal monomials; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMonomialSum<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq> SignedMonomialSum<E> {
    pub fn zero() -> Self {
        SignedMonomialSum { terms: BTreeMap::new() }
    }

    pub fn unit<F: Field<Elem = E>>(f: &F) -> Self {
        let mut s = Self::zero();
        s.terms.insert(Vec::new(), f.one());
        s
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, m: Monomial, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = f.add(old, &c);
                if f.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign<F: Field<Elem = E>>(&mut self, f: &F, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(f, m.clone(), c.clone());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Graph product of connected graded algebras over a flag complex.
#[derive(Debug, Clone)]
pub struct GraphProductAlgebra {
    complex: FlagComplex,
    algebras: Vec<GradedAlgebra>,
}

impl GraphProductAlgebra {
    pub fn new(complex: FlagComplex, algebras: Vec<GradedAlgebra>) -> Result<Self> {
        if algebras.len() != complex.ambient_size() {
            return Err(Error::invalid(format!(
                "{} vertex algebras given for {} vertices",
                algebras.len(),
                complex.ambient_size()
            )));
        }
        Ok(GraphProductAlgebra { complex, algebras })
    }

    pub fn uniform(complex: FlagComplex, algebra: GradedAlgebra) -> Self {
        let algebras = vec![algebra; complex.ambient_size()];
        GraphProductAlgebra { complex, algebras }
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn algebra(&self, v: u32) -> &GradedAlgebra {
        &self.algebras[v as usize - 1]
    }

    pub fn algebras(&self) -> &[GradedAlgebra] {
        &self.algebras
    }

    /// The smallest vertex truncation; products are exact up to this degree.
    pub fn trunc(&self) -> usize {
        self.algebras.iter().map(|a| a.trunc()).min().unwrap_or(0)
    }

    fn check_degree(&self, n: usize, context: &str) -> Result<()> {
        if n > self.trunc() {
            return Err(Error::TruncationOverflow {
                degree: n,
                limit: self.trunc(),
                context: context.to_string(),
            });
        }
        Ok(())
    }

    pub fn check_monomial(&self, m: &[(u32, BasisElem)]) -> Result<()> {
        for &(v, x) in m {
            if !self.complex.has_vertex(v) || !self.algebra(v).contains(x) {
                return Err(Error::invalid(format!("letter {x:?} at vertex {v} is not a basis element")));
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, m: &[(u32, BasisElem)]) -> bool {
        m.iter().all(|l| !l.1.is_unit())
            && trace::is_normal_support(&m.iter().map(|l| l.0).collect::<Vec<_>>(), &self.complex)
    }

    pub fn ring<F: Field>(&self, f: &F) -> Result<GpRing<'_, F>> {
        let tables = self.algebras.iter().map(|a| a.table_in(f)).collect::<Result<_>>()?;
        Ok(GpRing {
            gp: self,
            field: f.clone(),
            tables,
        })
    }

    fn grow(&self, word: &mut Monomial, verts: &mut Vec<u32>, rem: usize, out: &mut impl FnMut(&Monomial)) {
        if rem == 0 {
            out(word);
            return;
        }
        for v in self.complex.vertices() {
            if !trace::extends_normal(verts, v, &self.complex) {
                continue;
            }
            let alg = self.algebra(v);
            verts.push(v);
            for d in 1..=rem {
                for x in alg.basis_in(d) {
                    word.push((v, x));
                    self.grow(word, verts, rem - d, out);
                    word.pop();
                }
            }
            verts.pop();
        }
    }

    /// Normal monomials of degree `n`, in enumeration order.
    pub fn basis(&self, n: usize) -> Result<Vec<Monomial>> {
        self.check_degree(n, "graph product basis")?;
        let mut out = Vec::new();
        self.grow(&mut Vec::new(), &mut Vec::new(), n, &mut |m| out.push(m.clone()));
        Ok(out)
    }

    pub fn basis_count(&self, n: usize) -> Result<usize> {
        self.check_degree(n, "graph product basis")?;
        let mut count = 0usize;
        self.grow(&mut Vec::new(), &mut Vec::new(), n, &mut |_| count += 1);
        Ok(count)
    }

    /// Degreewise dimensions of the graph product up to `n`.
    pub fn hilbert_series(&self, n: usize) -> Result<TruncatedSeries> {
        let counts = (0..=n).map(|d| self.basis_count(d)).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries::from_counts(&counts, n))
    }

    pub fn render(&self, m: &[(u32, BasisElem)]) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        m.iter()
            .map(|&(v, x)| format!("{}_{}", self.algebra(v).elem_name(x), v))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Reads the output of [`render`](Self::render) back. The result is not normalized.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Vec::new());
        }
        let m: Monomial = text
            .split_whitespace()
            .map(|tok| {
                let (name, v) = split_token(tok)?;
                if !self.complex().has_vertex(v) {
                    return Err(Error::invalid(format!("'{tok}': no vertex {v}")));
                }
                let x = self
                    .algebra(v)
                    .find(name)
                    .filter(|x| !x.is_unit())
                    .ok_or_else(|| Error::invalid(format!("'{tok}': unknown basis element")))?;
                Ok((v, x))
            })
            .collect::<Result<_>>()?;
        self.check_monomial(&m)?;
        Ok(m)
    }
}

/// A graph product with structure constants mapped into a field.
pub struct GpRing<'a, F: Field> {
    gp: &'a GraphProductAlgebra,
    field: F,
    tables: Vec<MulTable<F>>,
}

impl<'a, F: Field> GpRing<'a, F> {
    pub fn algebra(&self) -> &'a GraphProductAlgebra {
        self.gp
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn table(&self, v: u32) -> &MulTable<F> {
        &self.tables[v as usize - 1]
    }

    /// Rewrites `coeff · raw` into normal monomials.
    ///
    /// Same-vertex letters separated only by commuting letters are merged through
    /// the local structure constants, moving the right one leftwards with sign
    /// `(-1)^{|y| Σ|between|}`; the survivors are then sorted into their least
    /// arrangement, each transposed pair contributing `(-1)^{|x||y|}`.
    pub fn normalize(&self, coeff: F::Elem, raw: &[(u32, BasisElem)]) -> Result<SignedMonomialSum<F::Elem>> {
        let gp = self.gp;
        let f = &self.field;
        gp.check_monomial(raw)?;
        gp.check_degree(degree_of(raw), "graph product monomial")?;
        let k = gp.complex();
        let mut out = SignedMonomialSum::zero();
        let start: Monomial = raw.iter().copied().filter(|l| !l.1.is_unit()).collect();
        let mut stack = vec![(coeff, start)];
        while let Some((c, w)) = stack.pop() {
            if f.is_zero(&c) {
                continue;
            }
            let vs: Vec<u32> = w.iter().map(|l| l.0).collect();
            if let Some((i, j)) = trace::find_mergeable(&vs, k) {
                let between: u32 = w[i + 1..j].iter().map(|l| l.1.degree).sum();
                let c = if (w[j].1.degree * between) % 2 == 1 { f.neg(&c) } else { c };
                for (z, cz) in self.table(vs[i]).mul(w[i].1, w[j].1)? {
                    let mut x = w.clone();
                    x[i].1 = *z;
                    x.remove(j);
                    stack.push((f.mul(&c, cz), x));
                }
                continue;
            }
            let order = trace::lex_min_order(&vs, k);
            let mut odd = false;
            for a in 0..order.len() {
                for b in a + 1..order.len() {
                    if order[a] > order[b] && (w[order[a]].1.degree * w[order[b]].1.degree) % 2 == 1 {
                        odd = !odd;
                    }
                }
            }
            let c = if odd { f.neg(&c) } else { c };
            out.add_term(f, order.iter().map(|&p| w[p]).collect(), c);
        }
        Ok(out)
    }

    pub fn mul_monomials(&self, a: &[(u32, BasisElem)], b: &[(u32, BasisElem)]) -> Result<SignedMonomialSum<F::Elem>> {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        self.normalize(self.field.one(), &w)
    }

    /// Bilinear extension of concatenate-then-normalize.
    pub fn multiply(
        &self,
        a: &SignedMonomialSum<F::Elem>,
        b: &SignedMonomialSum<F::Elem>,
    ) -> Result<SignedMonomialSum<F::Elem>> {
        let f = &self.field;
        let mut out = SignedMonomialSum::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = ma.clone();
                w.extend_from_slice(mb);
                let part = self.normalize(f.mul(ca, cb), &w)?;
                out.add_assign(f, &part);
            }
        }
        Ok(out)
    }

    pub fn monomial(&self, m: &[(u32, BasisElem)]) -> Result<SignedMonomialSum<F::Elem>> {
        self.normalize(self.field.one(), m)
    }
}
