//! Connected graded algebras given by bases and structure constants, and their
//! graph products over a flag complex.

mod product;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use product::{GpRing, GraphProductAlgebra, Monomial, SignedMonomialSum};

use crate::error::{Error, Result};
use crate::exactmath::{Field, RationalFunction, TruncatedSeries};

/// A basis element: `index` into the basis of `degree`. Degree 0 index 0 is the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElem {
    pub degree: u32,
    pub index: u32,
}

impl BasisElem {
    pub const UNIT: BasisElem = BasisElem { degree: 0, index: 0 };

    pub fn new(degree: u32, index: u32) -> Self {
        BasisElem { degree, index }
    }

    pub fn is_unit(&self) -> bool {
        self.degree == 0
    }
}

/// One row of the multiplication table: `left · right = Σ coeff · term`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductEntry {
    pub left: BasisElem,
    pub right: BasisElem,
    pub terms: Vec<(BasisElem, BigRational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Exterior { d: u32 },
    TruncPoly { d: u32, r: u32 },
    Free { d: u32 },
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Exterior { d } => write!(f, "exterior({d})"),
            Builtin::TruncPoly { d, r } => write!(f, "trunc_poly({d},{r})"),
            Builtin::Free { d } => write!(f, "free({d})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `exterior(d)`, `trunc_poly(d,r)` and `free(d)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("unknown algebra '{s}'"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<u32> = inner
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (&s[..open], args.as_slice()) {
            ("exterior", [d]) => Ok(Builtin::Exterior { d: *d }),
            ("trunc_poly", [d, r]) => Ok(Builtin::TruncPoly { d: *d, r: *r }),
            ("free", [d]) => Ok(Builtin::Free { d: *d }),
            _ => Err(bad()),
        }
    }
}

impl Builtin {
    fn generator_degree(&self) -> u32 {
        match *self {
            Builtin::Exterior { d } | Builtin::TruncPoly { d, .. } | Builtin::Free { d } => d,
        }
    }

    /// Largest power of the generator that is nonzero, if bounded.
    fn top_power(&self) -> Option<u32> {
        match *self {
            Builtin::Exterior { .. } => Some(1),
            Builtin::TruncPoly { r, .. } => Some(r - 1),
            Builtin::Free { .. } => None,
        }
    }

    pub fn hilbert_function(&self) -> RationalFunction {
        let d = self.generator_degree() as usize;
        match *self {
            Builtin::Exterior { .. } => RationalFunction::polynomial(monomial_poly(&[(0, 1), (d, 1)])),
            Builtin::TruncPoly { r, .. } => RationalFunction::new(
                monomial_poly(&[(0, 1), (r as usize * d, -1)]),
                monomial_poly(&[(0, 1), (d, -1)]),
            )
            .expect("constant term 1"),
            Builtin::Free { .. } => {
                RationalFunction::new(monomial_poly(&[(0, 1)]), monomial_poly(&[(0, 1), (d, -1)]))
                    .expect("constant term 1")
            }
        }
    }

    pub fn build(&self, trunc: usize) -> Result<GradedAlgebra> {
        let d = self.generator_degree();
        if d < 1 {
            return Err(Error::invalid("generator degree must be at least 1"));
        }
        if let Builtin::TruncPoly { r, .. } = self {
            if *r < 2 {
                return Err(Error::invalid("trunc_poly needs r >= 2"));
            }
        }
        if trunc < d as usize {
            return Err(Error::invalid(format!("truncation {trunc} is below the generator degree {d}")));
        }
        let mut top = trunc as u32 / d;
        if let Some(t) = self.top_power() {
            top = top.min(t);
        }
        let mut basis = vec![Vec::new(); trunc + 1];
        basis[0].push("1".to_string());
        for k in 1..=top {
            let name = if k == 1 { "x".to_string() } else { format!("x^{k}") };
            basis[(k * d) as usize].push(name);
        }
        let power = |k: u32| BasisElem::new(k * d, 0);
        let mut entries = Vec::new();
        for a in 1..=top {
            for b in 1..=top {
                if (a + b) * d > trunc as u32 {
                    continue;
                }
                let terms = if a + b <= top {
                    vec![(power(a + b), BigRational::one())]
                } else {
                    Vec::new()
                };
                entries.push(ProductEntry {
                    left: power(a),
                    right: power(b),
                    terms,
                });
            }
        }
        GradedAlgebra::new(self.to_string(), trunc, basis, entries, Some(self.hilbert_function()))
    }
}

fn monomial_poly(terms: &[(usize, i64)]) -> Vec<BigRational> {
    let len = terms.iter().map(|t| t.0).max().unwrap_or(0) + 1;
    let mut p = vec![BigRational::zero(); len];
    for &(d, c) in terms {
        p[d] += BigRational::from_integer(c.into());
    }
    p
}

type Table<E> = HashMap<(BasisElem, BasisElem), Vec<(BasisElem, E)>>;

/// A connected graded algebra, truncated above degree `trunc`.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    name: String,
    trunc: usize,
    basis: Vec<Vec<String>>,
    table: Table<BigRational>,
    hilbert: Option<RationalFunction>,
}

impl GradedAlgebra {
    /// Validates connectivity, grading, associativity and the optional Hilbert
    /// function. Products absent from `entries` are zero.
    pub fn new(
        name: String,
        trunc: usize,
        basis: Vec<Vec<String>>,
        entries: Vec<ProductEntry>,
        hilbert: Option<RationalFunction>,
    ) -> Result<Self> {
        if basis.len() != trunc + 1 {
            return Err(Error::invalid(format!(
                "{name}: basis lists {} degrees, expected {}",
                basis.len(),
                trunc + 1
            )));
        }
        if basis[0] != ["1"] {
            return Err(Error::invalid(format!("{name}: degree 0 must be exactly the unit \"1\"")));
        }
        let mut table: Table<BigRational> = HashMap::new();
        let mut alg = GradedAlgebra {
            name,
            trunc,
            basis,
            table: HashMap::new(),
            hilbert,
        };
        for e in entries {
            for x in [e.left, e.right] {
                if x.is_unit() || !alg.contains(x) {
                    return Err(Error::invalid(format!("{}: bad table operand {:?}", alg.name, x)));
                }
            }
            let deg = e.left.degree + e.right.degree;
            if deg as usize > trunc {
                return Err(Error::invalid(format!("{}: table entry beyond truncation", alg.name)));
            }
            let mut terms: Vec<(BasisElem, BigRational)> = Vec::new();
            for (z, c) in e.terms {
                if z.degree != deg || !alg.contains(z) {
                    return Err(Error::invalid(format!(
                        "{}: product of {} and {} must land in degree {deg}",
                        alg.name,
                        alg.elem_name(e.left),
                        alg.elem_name(e.right)
                    )));
                }
                match terms.iter_mut().find(|t| t.0 == z) {
                    Some(t) => t.1 += c,
                    None => terms.push((z, c)),
                }
            }
            terms.retain(|t| !t.1.is_zero());
            terms.sort_by_key(|t| t.0);
            if table.insert((e.left, e.right), terms).is_some() {
                return Err(Error::invalid(format!("{}: duplicate table entry", alg.name)));
            }
        }
        alg.table = table;
        alg.check_associative()?;
        if let Some(h) = &alg.hilbert {
            let expect = h.expand(trunc);
            let dims = alg.hilbert_series(trunc)?;
            if expect != dims {
                return Err(Error::invalid(format!(
                    "{}: Hilbert function {expect} disagrees with the basis {dims}",
                    alg.name
                )));
            }
        }
        Ok(alg)
    }

    pub fn builtin(kind: Builtin, trunc: usize) -> Result<Self> {
        kind.build(trunc)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn hilbert_function(&self) -> Option<&RationalFunction> {
        self.hilbert.as_ref()
    }

    pub fn contains(&self, x: BasisElem) -> bool {
        self.basis
            .get(x.degree as usize)
            .is_some_and(|b| (x.index as usize) < b.len())
    }

    pub fn elem_name(&self, x: BasisElem) -> &str {
        &self.basis[x.degree as usize][x.index as usize]
    }

    pub fn find(&self, name: &str) -> Option<BasisElem> {
        self.basis.iter().enumerate().find_map(|(d, b)| {
            b.iter()
                .position(|n| n == name)
                .map(|i| BasisElem::new(d as u32, i as u32))
        })
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis.get(degree).map_or(0, |b| b.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    /// Basis of degree `degree` (empty beyond truncation).
    pub fn basis_in(&self, degree: usize) -> Vec<BasisElem> {
        (0..self.dim(degree) as u32)
            .map(|i| BasisElem::new(degree as u32, i))
            .collect()
    }

    /// All basis elements of degree `1..=max_degree`.
    pub fn positive_basis(&self, max_degree: usize) -> Vec<BasisElem> {
        (1..=max_degree.min(self.trunc)).flat_map(|d| self.basis_in(d)).collect()
    }

    /// Smallest degree carrying a positive-degree basis element.
    pub fn min_degree(&self) -> Option<usize> {
        (1..=self.trunc).find(|&d| self.dim(d) > 0)
    }

    fn overflow(&self, degree: usize) -> Error {
        Error::TruncationOverflow {
            degree,
            limit: self.trunc,
            context: format!("product in {}", self.name),
        }
    }

    /// `x · y` with rational coefficients.
    pub fn mul(&self, x: BasisElem, y: BasisElem) -> Result<Vec<(BasisElem, BigRational)>> {
        let deg = (x.degree + y.degree) as usize;
        if deg > self.trunc {
            return Err(self.overflow(deg));
        }
        if x.is_unit() {
            return Ok(vec![(y, BigRational::one())]);
        }
        if y.is_unit() {
            return Ok(vec![(x, BigRational::one())]);
        }
        Ok(self.table.get(&(x, y)).cloned().unwrap_or_default())
    }

    /// The multiplication table with coefficients mapped into `f`.
    pub fn table_in<F: Field>(&self, f: &F) -> Result<MulTable<F>> {
        let mut entries = HashMap::with_capacity(self.table.len());
        for (k, terms) in &self.table {
            let mut out = Vec::with_capacity(terms.len());
            for (z, c) in terms {
                let c = f.from_rational(c)?;
                if !f.is_zero(&c) {
                    out.push((*z, c));
                }
            }
            entries.insert(*k, out);
        }
        Ok(MulTable {
            field: f.clone(),
            trunc: self.trunc,
            name: self.name.clone(),
            entries,
        })
    }

    fn mul_vec(&self, a: &[(BasisElem, BigRational)], b: &[(BasisElem, BigRational)]) -> Result<Vec<(BasisElem, BigRational)>> {
        let mut acc: Vec<(BasisElem, BigRational)> = Vec::new();
        for (x, cx) in a {
            for (y, cy) in b {
                for (z, cz) in self.mul(*x, *y)? {
                    let c = cx * cy * cz;
                    match acc.iter_mut().find(|t| t.0 == z) {
                        Some(t) => t.1 += c,
                        None => acc.push((z, c)),
                    }
                }
            }
        }
        acc.retain(|t| !t.1.is_zero());
        acc.sort_by_key(|t| t.0);
        Ok(acc)
    }

    fn check_associative(&self) -> Result<()> {
        let pos = self.positive_basis(self.trunc);
        let one = BigRational::one();
        for &x in &pos {
            for &y in &pos {
                if (x.degree + y.degree) as usize > self.trunc {
                    continue;
                }
                for &z in &pos {
                    if (x.degree + y.degree + z.degree) as usize > self.trunc {
                        continue;
                    }
                    let xy = self.mul(x, y)?;
                    let left = self.mul_vec(&xy, &[(z, one.clone())])?;
                    let yz = self.mul(y, z)?;
                    let right = self.mul_vec(&[(x, one.clone())], &yz)?;
                    if left != right {
                        return Err(Error::invalid(format!(
                            "{}: multiplication is not associative on ({}, {}, {})",
                            self.name,
                            self.elem_name(x),
                            self.elem_name(y),
                            self.elem_name(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Degreewise dimensions up to `n`.
    pub fn hilbert_series(&self, n: usize) -> Result<TruncatedSeries> {
        if n > self.trunc {
            return Err(Error::TruncationOverflow {
                degree: n,
                limit: self.trunc,
                context: format!("Hilbert series of {}", self.name),
            });
        }
        Ok(TruncatedSeries::from_counts(&self.dims()[..=n], n))
    }

    /// `P(J(A)) = P(A) - 1`, the augmentation ideal's series.
    pub fn augmentation_series(&self, n: usize) -> Result<TruncatedSeries> {
        Ok(self.hilbert_series(n)?.sub(&TruncatedSeries::one(n)))
    }
}

/// Structure constants over a particular field.
#[derive(Debug, Clone)]
pub struct MulTable<F: Field> {
    field: F,
    trunc: usize,
    name: String,
    entries: Table<F::Elem>,
}

impl<F: Field> MulTable<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// `x · y` for positive-degree `x`, `y`; an empty slice means zero.
    pub fn mul(&self, x: BasisElem, y: BasisElem) -> Result<&[(BasisElem, F::Elem)]> {
        let deg = (x.degree + y.degree) as usize;
        if deg > self.trunc {
            return Err(Error::TruncationOverflow {
                degree: deg,
                limit: self.trunc,
                context: format!("product in {}", self.name),
            });
        }
        Ok(self.entries.get(&(x, y)).map_or(&[], |v| v.as_slice()))
    }
}

#[cfg(test)]
mod tests;
