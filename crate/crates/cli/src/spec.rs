//! Job documents and their validation into core objects.

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;
use serde_json::{Map, Value};

use graphprod_core::complex::FlagComplex;
use graphprod_core::exactmath::{parse_rational, BigRational, FieldKind, RationalFunction};
use graphprod_core::galg::{BasisElem, Builtin, GradedAlgebra, GraphProductAlgebra, ProductEntry};
use graphprod_core::groupprod::{FiniteGroup, GraphProduct, GroupElem, LocalGroup};

pub const DEFAULT_N_MAX: usize = 8;
pub const DEFAULT_S_MAX: usize = 4;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub complex: ComplexSpec,
    #[serde(default)]
    pub groups: Option<OneOrMany<GroupSpec>>,
    #[serde(default)]
    pub algebras: Option<OneOrMany<AlgebraSpec>>,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub args: Map<String, Value>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub n_max: Option<usize>,
    pub s_max: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Edges { m: usize, edges: Vec<(u32, u32)> },
    Named { kind: String, m: usize },
}

/// A single payload applies to every vertex.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    Many(Vec<T>),
    One(T),
}

impl<T: Clone> OneOrMany<T> {
    fn expand(&self, m: usize, what: &str) -> anyhow::Result<Vec<T>> {
        match self {
            OneOrMany::One(x) => Ok(vec![x.clone(); m]),
            OneOrMany::Many(xs) if xs.len() == m => Ok(xs.clone()),
            OneOrMany::Many(xs) => bail!("{} {what} given for {m} vertices", xs.len()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `Z/n`, `Z` or `S3`.
    Short(String),
    Full(GroupObject),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupObject {
    pub kind: String,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default)]
    pub elements: Option<Vec<String>>,
    /// `table[i][j]` names the product of elements `i` and `j`.
    #[serde(default)]
    pub table: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    /// `exterior(d)`, `trunc_poly(d,r)` or `free(d)`.
    Builtin(String),
    Explicit(ExplicitAlgebra),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebra {
    pub name: String,
    /// Basis names by degree; degree 0 must be `["1"]`.
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
    #[serde(default)]
    pub hilbert: Option<HilbertSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub terms: Vec<(String, Coeff)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertSpec {
    pub numerator: Vec<Coeff>,
    pub denominator: Vec<Coeff>,
}

/// An integer or a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn value(&self) -> anyhow::Result<BigRational> {
        match self {
            Coeff::Int(i) => Ok(BigRational::from_integer((*i).into())),
            Coeff::Text(s) => Ok(parse_rational(s)?),
        }
    }
}

/// A group payload with the per-vertex generating subsets for kernel generators.
#[derive(Debug, Clone)]
pub struct GroupPayload {
    pub product: GraphProduct,
    /// `Some` when any vertex names a subset; vertices without one fall back to
    /// all nonidentity elements, or `{1}` for ℤ.
    pub generators: Option<Vec<Vec<GroupElem>>>,
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct Job {
    pub command: String,
    pub target: Option<String>,
    pub complex: FlagComplex,
    pub groups: Option<GroupPayload>,
    pub algebras: Option<GraphProductAlgebra>,
    pub field: FieldKind,
    pub n_max: usize,
    pub s_max: usize,
    pub args: Map<String, Value>,
}

/// Command-line values that take precedence over the document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub command: Option<String>,
    pub target: Option<String>,
    pub field: Option<String>,
    pub n_max: Option<usize>,
    pub s_max: Option<usize>,
}

pub fn parse_spec(text: &str) -> anyhow::Result<JobSpec> {
    serde_json::from_str(text).context("invalid job document")
}

impl JobSpec {
    pub fn resolve(self, o: Overrides) -> anyhow::Result<Job> {
        let command = o
            .command
            .or(self.command)
            .ok_or_else(|| anyhow!("no command given on the command line or in the job"))?;
        let field: FieldKind = o.field.or(self.field).as_deref().unwrap_or("q").parse()?;
        let n_max = o.n_max.or(self.truncation.n_max).unwrap_or(DEFAULT_N_MAX);
        let s_max = o.s_max.or(self.truncation.s_max).unwrap_or(DEFAULT_S_MAX);
        let complex = self.complex.build()?;
        let m = complex.ambient_size();
        let groups = self.groups.map(|g| build_groups(&complex, &g.expand(m, "groups")?)).transpose()?;
        let algebras = self
            .algebras
            .map(|a| build_algebras(&complex, &a.expand(m, "algebras")?, n_max))
            .transpose()?;
        Ok(Job {
            command,
            target: o.target.or(self.target),
            complex,
            groups,
            algebras,
            field,
            n_max,
            s_max,
            args: self.args,
        })
    }
}

impl ComplexSpec {
    fn build(&self) -> anyhow::Result<FlagComplex> {
        Ok(match self {
            ComplexSpec::Edges { m, edges } => FlagComplex::new(*m, edges)?,
            ComplexSpec::Named { kind, m } => match kind.as_str() {
                "simplex" | "complete" => FlagComplex::simplex(*m)?,
                "cycle" => FlagComplex::cycle(*m)?,
                "path" => FlagComplex::path(*m)?,
                "discrete" | "points" => FlagComplex::discrete(*m)?,
                _ => bail!("unknown complex kind '{kind}'"),
            },
        })
    }
}

fn build_group(spec: &GroupSpec) -> anyhow::Result<(LocalGroup, Option<&[String]>)> {
    let short = |s: &str| -> anyhow::Result<LocalGroup> {
        let t = s.trim();
        if t == "Z" {
            return Ok(LocalGroup::Integers);
        }
        if t == "S3" {
            return Ok(LocalGroup::Finite(FiniteGroup::symmetric3()));
        }
        let n = t
            .strip_prefix("Z/")
            .and_then(|n| n.parse::<u64>().ok())
            .ok_or_else(|| anyhow!("unknown group '{s}'"))?;
        Ok(LocalGroup::cyclic(n)?)
    };
    match spec {
        GroupSpec::Short(s) => Ok((short(s)?, None)),
        GroupSpec::Full(g) => {
            let group = match g.kind.as_str() {
                "cyclic" => LocalGroup::cyclic(g.order.ok_or_else(|| anyhow!("cyclic group needs an order"))?)?,
                "integers" => LocalGroup::Integers,
                "symmetric3" => LocalGroup::Finite(FiniteGroup::symmetric3()),
                "table" => {
                    let names = g.elements.clone().ok_or_else(|| anyhow!("table group needs elements"))?;
                    let rows = g.table.as_ref().ok_or_else(|| anyhow!("table group needs a table"))?;
                    let index = |x: &String| {
                        names
                            .iter()
                            .position(|n| n == x)
                            .ok_or_else(|| anyhow!("table entry '{x}' is not an element"))
                    };
                    let table = rows
                        .iter()
                        .map(|r| r.iter().map(index).collect::<anyhow::Result<Vec<_>>>())
                        .collect::<anyhow::Result<_>>()?;
                    LocalGroup::Finite(FiniteGroup::new(names, table)?)
                }
                k => bail!("unknown group kind '{k}'"),
            };
            Ok((group, g.generators.as_deref()))
        }
    }
}

fn build_groups(k: &FlagComplex, specs: &[GroupSpec]) -> anyhow::Result<GroupPayload> {
    let built = specs.iter().map(build_group).collect::<anyhow::Result<Vec<_>>>()?;
    let groups: Vec<LocalGroup> = built.iter().map(|b| b.0.clone()).collect();
    let explicit = built.iter().any(|b| b.1.is_some());
    let generators = explicit
        .then(|| {
            built
                .iter()
                .map(|(g, names)| match names {
                    Some(names) => names.iter().map(|n| Ok(g.parse(n)?)).collect(),
                    None => Ok(g.nonidentity_elements().unwrap_or_else(|| vec![1])),
                })
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(GroupPayload {
        product: GraphProduct::new(k.clone(), groups)?,
        generators,
    })
}

fn build_algebra(spec: &AlgebraSpec, n_max: usize) -> anyhow::Result<GradedAlgebra> {
    match spec {
        AlgebraSpec::Builtin(s) => Ok(GradedAlgebra::builtin(s.parse::<Builtin>()?, n_max)?),
        AlgebraSpec::Explicit(e) => {
            if e.basis.is_empty() {
                bail!("{}: empty basis", e.name);
            }
            let find = |name: &str| -> anyhow::Result<BasisElem> {
                e.basis
                    .iter()
                    .enumerate()
                    .find_map(|(d, names)| {
                        names
                            .iter()
                            .position(|n| n == name)
                            .map(|i| BasisElem::new(d as u32, i as u32))
                    })
                    .ok_or_else(|| anyhow!("{}: unknown basis element '{name}'", e.name))
            };
            let entries = e
                .products
                .iter()
                .map(|p| {
                    Ok(ProductEntry {
                        left: find(&p.left)?,
                        right: find(&p.right)?,
                        terms: p
                            .terms
                            .iter()
                            .map(|(z, c)| Ok((find(z)?, c.value()?)))
                            .collect::<anyhow::Result<_>>()?,
                    })
                })
                .collect::<anyhow::Result<_>>()?;
            let hilbert = e
                .hilbert
                .as_ref()
                .map(|h| -> anyhow::Result<RationalFunction> {
                    let poly = |cs: &[Coeff]| cs.iter().map(Coeff::value).collect::<anyhow::Result<Vec<_>>>();
                    Ok(RationalFunction::new(poly(&h.numerator)?, poly(&h.denominator)?)?)
                })
                .transpose()?;
            Ok(GradedAlgebra::new(
                e.name.clone(),
                e.basis.len() - 1,
                e.basis.clone(),
                entries,
                hilbert,
            )?)
        }
    }
}

fn build_algebras(k: &FlagComplex, specs: &[AlgebraSpec], n_max: usize) -> anyhow::Result<GraphProductAlgebra> {
    let algs = specs
        .iter()
        .map(|s| build_algebra(s, n_max))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(GraphProductAlgebra::new(k.clone(), algs)?)
}
