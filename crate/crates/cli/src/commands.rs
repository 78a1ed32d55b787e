//! The command table. Each command is a trait object registered under its name.

use std::collections::{HashMap, HashSet};

use anyhow::{anyhow, bail, Context};
use serde_json::{json, Value};

use graphprod_core::barcomplex::{check_acyclic_full, tor_dims_bar, Variant};
use graphprod_core::complex::{set_of, vertices_of};
use graphprod_core::exactmath::TruncatedSeries;
use graphprod_core::galg::GraphProductAlgebra;
use graphprod_core::groupprod::{oracle_classes, GraphProduct, NormalFormWord};
use graphprod_core::homology::{reduced_euler_from_simplices, reduced_homology, HomologyProfile};
use graphprod_core::torform::{
    ep_series_ak, ep_series_aprime, is_free_aprime, is_free_h_groups, min_generators_aprime, pat_identity_holds,
    tor_ak_closed, tor_aprime_closed, SeriesRegistry, TorRegistry,
};

use crate::report::tor_value;
use crate::spec::{GroupPayload, Job};

/// Which vertex payload a command consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Needs {
    Complex,
    Groups,
    Algebras,
    Any,
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn needs(&self) -> Needs;
    /// Structured results and whether every internal check passed.
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)>;
}

pub struct Registry {
    commands: Vec<Box<dyn Command>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { commands: Vec::new() }
    }

    pub fn register(&mut self, c: Box<dyn Command>) -> anyhow::Result<()> {
        if self.get(c.name()).is_some() {
            bail!("command '{}' registered twice", c.name());
        }
        self.commands.push(c);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.iter().map(|c| c.as_ref()).find(|c| c.name() == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Command> {
        self.commands.iter().map(|c| c.as_ref())
    }

    pub fn dispatch(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let cmd = self.get(&job.command).ok_or_else(|| {
            let names: Vec<_> = self.iter().map(|c| c.name()).collect();
            anyhow!(graphprod_core::Error::Invalid(format!(
                "unknown command '{}' (known: {})",
                job.command,
                names.join(", ")
            )))
        })?;
        let needs = cmd.needs();
        if needs != Needs::Any && job.groups.is_some() && job.algebras.is_some() {
            invalid("a job may carry both groups and algebras only for verify-all")?;
        }
        match needs {
            Needs::Groups if job.groups.is_none() => invalid(format!("{} needs vertex groups", cmd.name()))?,
            Needs::Algebras if job.algebras.is_none() => invalid(format!("{} needs vertex algebras", cmd.name()))?,
            _ => {}
        }
        cmd.run(job)
    }
}

impl Default for Registry {
    fn default() -> Self {
        let commands: Vec<Box<dyn Command>> = vec![
            Box::new(Normalize),
            Box::new(Multiply),
            Box::new(Invert),
            Box::new(Project),
            Box::new(Split),
            Box::new(KernelGens),
            Box::new(EqualOracle),
            Box::new(LengthCensus),
            Box::new(Chordal),
            Box::new(Homology),
            Box::new(LexOrder),
            Box::new(GpBasis),
            Box::new(Hilbert),
            Box::new(TorClosed),
            Box::new(TorOracle),
            Box::new(EpSeries),
            Box::new(MinGenerators),
            Box::new(IsFree),
            Box::new(CheckAcyclic),
            Box::new(VerifyAll),
        ];
        Registry { commands }
    }
}

fn invalid<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(graphprod_core::Error::Invalid(msg.into()).into())
}

fn groups(job: &Job) -> &GroupPayload {
    job.groups.as_ref().expect("checked by dispatch")
}

fn algebras(job: &Job) -> &GraphProductAlgebra {
    job.algebras.as_ref().expect("checked by dispatch")
}

fn arg_str<'a>(job: &'a Job, key: &str) -> anyhow::Result<&'a str> {
    match job.args.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => invalid(format!("argument '{key}' must be a string")),
        None => invalid(format!("missing argument '{key}'")),
    }
}

fn arg_usize(job: &Job, key: &str) -> anyhow::Result<Option<usize>> {
    match job.args.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|x| Some(x as usize))
            .ok_or_else(|| anyhow!(graphprod_core::Error::Invalid(format!("argument '{key}' must be a nonnegative integer")))),
    }
}

fn word(job: &Job, key: &str) -> anyhow::Result<NormalFormWord> {
    let gp = &groups(job).product;
    let text = arg_str(job, key)?;
    let raw = gp.parse_word(text).with_context(|| format!("argument '{key}'"))?;
    Ok(gp.normalize(&raw)?)
}

fn word_value(gp: &GraphProduct, w: &NormalFormWord) -> Value {
    json!({"word": gp.render(w), "length": w.len()})
}

fn series_value(s: &TruncatedSeries) -> Value {
    match s.integer_coeffs() {
        Some(c) => json!(c),
        None => json!(s.coeffs().iter().map(graphprod_core::exactmath::render_rational).collect::<Vec<_>>()),
    }
}

fn profile_value(h: &HomologyProfile) -> Value {
    let dims: serde_json::Map<String, Value> = h.dims.iter().map(|(d, b)| (d.to_string(), json!(b))).collect();
    json!({
        "reduced_betti": dims,
        "empty_complex": h.empty_complex,
        "acyclic": h.is_acyclic(),
        "reduced_euler": h.euler_characteristic(),
    })
}

fn variant(job: &Job) -> anyhow::Result<Variant> {
    let t = job
        .target
        .as_deref()
        .or_else(|| job.args.get("variant").and_then(Value::as_str))
        .unwrap_or("aprime");
    Ok(t.parse()?)
}

struct Normalize;
struct Multiply;
struct Invert;
struct Project;
struct Split;
struct KernelGens;
struct EqualOracle;
struct LengthCensus;
struct Chordal;
struct Homology;
struct LexOrder;
struct GpBasis;
struct Hilbert;
struct TorClosed;
struct TorOracle;
struct EpSeries;
struct MinGenerators;
struct IsFree;
struct CheckAcyclic;
struct VerifyAll;

impl Command for Normalize {
    fn name(&self) -> &'static str {
        "normalize"
    }
    fn about(&self) -> &'static str {
        "normal form of args.word"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let w = word(job, "word")?;
        Ok((json!({"input": arg_str(job, "word")?, "normal_form": word_value(gp, &w)}), true))
    }
}

impl Command for Multiply {
    fn name(&self) -> &'static str {
        "multiply"
    }
    fn about(&self) -> &'static str {
        "product of args.left and args.right"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let p = gp.multiply(&word(job, "left")?, &word(job, "right")?)?;
        Ok((json!({"product": word_value(gp, &p)}), true))
    }
}

impl Command for Invert {
    fn name(&self) -> &'static str {
        "invert"
    }
    fn about(&self) -> &'static str {
        "inverse of args.word"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let x = gp.invert(&word(job, "word")?)?;
        Ok((json!({"inverse": word_value(gp, &x)}), true))
    }
}

impl Command for Project {
    fn name(&self) -> &'static str {
        "project"
    }
    fn about(&self) -> &'static str {
        "vertex projections of args.word (all vertices unless args.vertex)"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let w = word(job, "word")?;
        let verts = match arg_usize(job, "vertex")? {
            Some(v) => vec![v as u32],
            None => job.complex.vertices(),
        };
        let mut out = Vec::new();
        for v in verts {
            let e = gp.project(&w, v)?;
            out.push(json!({"vertex": v, "element": gp.group(v).name(e)}));
        }
        Ok((json!({"word": gp.render(&w), "projections": out}), true))
    }
}

impl Command for Split {
    fn name(&self) -> &'static str {
        "split"
    }
    fn about(&self) -> &'static str {
        "kernel part and vertex components of args.word"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let w = word(job, "word")?;
        let s = gp.split(&w)?;
        let back = gp.reconstruct(&s)?;
        let gammas: Vec<Value> = s
            .gammas
            .iter()
            .enumerate()
            .map(|(i, &g)| json!(gp.group(i as u32 + 1).name(g)))
            .collect();
        let ok = back == w && gp.in_kernel(&s.h);
        Ok((
            json!({
                "word": gp.render(&w),
                "kernel_part": word_value(gp, &s.h),
                "gammas": gammas,
                "kernel_part_in_kernel": gp.in_kernel(&s.h),
                "reconstructs": back == w,
            }),
            ok,
        ))
    }
}

impl Command for KernelGens {
    fn name(&self) -> &'static str {
        "kernel-gens"
    }
    fn about(&self) -> &'static str {
        "iterated commutators generating the kernel of the abelianization"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let g = groups(job);
        let gp = &g.product;
        let gens = gp.kernel_generators(g.generators.as_deref())?;
        let all_in_kernel = gens.iter().all(|k| gp.in_kernel(&k.word));
        let list: Vec<Value> = gens
            .iter()
            .map(|k| {
                json!({
                    "subset": k.subset,
                    "t": k.t,
                    "choices": k.choices.iter().map(|l| gp.render_letter(l)).collect::<Vec<_>>(),
                    "word": gp.render(&k.word),
                    "length": k.word.len(),
                })
            })
            .collect();
        Ok((json!({"count": gens.len(), "all_in_kernel": all_in_kernel, "generators": list}), all_in_kernel))
    }
}

impl Command for EqualOracle {
    fn name(&self) -> &'static str {
        "equal-oracle"
    }
    fn about(&self) -> &'static str {
        "decides args.left = args.right by bounded search, and compares with normal forms"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let u = gp.parse_word(arg_str(job, "left")?)?;
        let v = gp.parse_word(arg_str(job, "right")?)?;
        let oracle = gp.equal_oracle(&u, &v)?;
        let nf = gp.normalize(&u)? == gp.normalize(&v)?;
        Ok((json!({"oracle_equal": oracle, "normal_forms_equal": nf, "agree": oracle == nf}), oracle == nf))
    }
}

impl Command for LengthCensus {
    fn name(&self) -> &'static str {
        "length-census"
    }
    fn about(&self) -> &'static str {
        "element counts by length, enumerated and predicted"
    }
    fn needs(&self) -> Needs {
        Needs::Groups
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = &groups(job).product;
        let n = arg_usize(job, "n")?.unwrap_or(job.n_max);
        let c = gp.length_census(n)?;
        Ok((
            json!({"enumerated": c.enumerated, "predicted": c.predicted, "agrees": c.agrees()}),
            c.agrees(),
        ))
    }
}

impl Command for Chordal {
    fn name(&self) -> &'static str {
        "chordal"
    }
    fn about(&self) -> &'static str {
        "chordality of the 1-skeleton"
    }
    fn needs(&self) -> Needs {
        Needs::Complex
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        Ok((json!({"chordal": job.complex.is_chordal(), "lex_bfs": job.complex.lex_bfs()}), true))
    }
}

impl Command for Homology {
    fn name(&self) -> &'static str {
        "homology"
    }
    fn about(&self) -> &'static str {
        "reduced homology of K, of K_I for args.subset, or of every K_I with args.all_subsets"
    }
    fn needs(&self) -> Needs {
        Needs::Complex
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let k = &job.complex;
        if job.args.get("all_subsets").and_then(Value::as_bool) == Some(true) {
            let mut out = Vec::new();
            for set in 1u64..(1u64 << k.ambient_size()) {
                let h = reduced_homology(&k.full_subcomplex(set)?, job.field)?;
                let mut v = profile_value(&h);
                v.as_object_mut()
                    .expect("object")
                    .insert("subset".into(), json!(vertices_of(set)));
                out.push(v);
            }
            return Ok((json!({"subcomplexes": out}), true));
        }
        let sub = match job.args.get("subset") {
            None => k.clone(),
            Some(v) => {
                let verts: Vec<u32> = serde_json::from_value(v.clone())
                    .map_err(|_| anyhow!(graphprod_core::Error::Invalid("subset must be a list of vertices".into())))?;
                k.full_subcomplex(set_of(&verts))?
            }
        };
        let h = reduced_homology(&sub, job.field)?;
        Ok((json!({"vertices": sub.vertices(), "homology": profile_value(&h)}), true))
    }
}

impl Command for LexOrder {
    fn name(&self) -> &'static str {
        "lex-order"
    }
    fn about(&self) -> &'static str {
        "simplices of K in lexicographic order"
    }
    fn needs(&self) -> Needs {
        Needs::Complex
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let s: Vec<String> = job.complex.lex_order_simplices().iter().map(|s| s.to_string()).collect();
        Ok((json!({"count": s.len(), "simplices": s}), true))
    }
}

impl Command for GpBasis {
    fn name(&self) -> &'static str {
        "gp-basis"
    }
    fn about(&self) -> &'static str {
        "normal monomial basis of the graph product in args.degree (default: every degree)"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = algebras(job);
        let degrees: Vec<usize> = match arg_usize(job, "degree")? {
            Some(d) => vec![d],
            None => (0..=job.n_max).collect(),
        };
        let mut out = Vec::new();
        for d in degrees {
            let b = gp.basis(d)?;
            let names: Vec<String> = b.iter().map(|m| gp.render(m)).collect();
            out.push(json!({"degree": d, "count": b.len(), "monomials": names}));
        }
        Ok((json!({"degrees": out}), true))
    }
}

impl Command for Hilbert {
    fn name(&self) -> &'static str {
        "hilbert"
    }
    fn about(&self) -> &'static str {
        "Hilbert series of the graph product by args.route (census, ep-formula, rational or all)"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = algebras(job);
        let reg = SeriesRegistry::default();
        let route = job.args.get("route").and_then(Value::as_str).unwrap_or("census");
        if route != "all" {
            let s = reg.get(route)?.series(gp, job.n_max, job.field)?;
            return Ok((json!({"route": route, "coefficients": series_value(&s)}), true));
        }
        let mut per = serde_json::Map::new();
        let mut first: Option<TruncatedSeries> = None;
        let mut agree = true;
        for r in reg.iter() {
            let s = r.series(gp, job.n_max, job.field)?;
            per.insert(r.name().into(), series_value(&s));
            match &first {
                Some(f) => agree &= *f == s,
                None => first = Some(s),
            }
        }
        let coeffs = series_value(first.as_ref().expect("routes registered"));
        Ok((json!({"coefficients": coeffs, "routes": per, "routes_agree": agree}), agree))
    }
}

fn tor_by(job: &Job, prefix: &str) -> anyhow::Result<(Value, bool)> {
    let v = variant(job)?;
    let name = format!("{prefix}-{}", if v == Variant::APrime { "aprime" } else { "ak" });
    let t = TorRegistry::default()
        .get(&name)?
        .compute(algebras(job), job.s_max, job.n_max, job.field)?;
    Ok((json!({"variant": v.to_string(), "route": name, "tor": tor_value(&t)}), true))
}

impl Command for TorClosed {
    fn name(&self) -> &'static str {
        "tor-closed"
    }
    fn about(&self) -> &'static str {
        "closed-form Tor table of A' (aprime) or A^K (ak)"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        tor_by(job, "closed")
    }
}

impl Command for TorOracle {
    fn name(&self) -> &'static str {
        "tor-oracle"
    }
    fn about(&self) -> &'static str {
        "Tor table of A' (aprime) or A^K (ak) from the polyhedral bar complex"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        tor_by(job, "oracle")
    }
}

impl Command for EpSeries {
    fn name(&self) -> &'static str {
        "ep-series"
    }
    fn about(&self) -> &'static str {
        "1/P(A'), P(A') and P(A^K) from reduced homology of full subcomplexes"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = algebras(job);
        let ep = ep_series_aprime(gp, job.n_max, job.field)?;
        let ak = ep_series_ak(gp, job.n_max, job.field)?;
        let consistent = ep.inverse.mul(&ep.series).is_one();
        Ok((
            json!({
                "aprime_inverse": series_value(&ep.inverse),
                "aprime": series_value(&ep.series),
                "ak": series_value(&ak),
                "inverse_times_series_is_one": consistent,
            }),
            consistent,
        ))
    }
}

impl Command for MinGenerators {
    fn name(&self) -> &'static str {
        "min-generators"
    }
    fn about(&self) -> &'static str {
        "iterated brackets generating A' up to n_max"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let gp = algebras(job);
        let g = min_generators_aprime(gp, job.n_max)?;
        let list: Vec<Value> = g
            .entries
            .iter()
            .map(|e| json!({"subset": e.subset, "t": e.t, "degree": e.degree, "bracket": e.expression}))
            .collect();
        Ok((
            json!({"count": list.len(), "counts_by_degree": g.counts(job.n_max), "generators": list}),
            true,
        ))
    }
}

impl Command for IsFree {
    fn name(&self) -> &'static str {
        "is-free"
    }
    fn about(&self) -> &'static str {
        "freeness of A' (algebra) or of the commutator kernel (group)"
    }
    fn needs(&self) -> Needs {
        Needs::Complex
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let k = &job.complex;
        match job.target.as_deref() {
            Some("algebra") => Ok((json!({"algebra_free": is_free_aprime(k, job.field)?}), true)),
            Some("group") => Ok((json!({"group_free": is_free_h_groups(k)}), true)),
            None => {
                let a = is_free_aprime(k, job.field)?;
                let g = is_free_h_groups(k);
                Ok((json!({"algebra_free": a, "group_free": g, "agree": a == g}), a == g))
            }
            Some(t) => invalid(format!("is-free takes 'algebra' or 'group', not '{t}'")),
        }
    }
}

impl Command for CheckAcyclic {
    fn name(&self) -> &'static str {
        "check-acyclic"
    }
    fn about(&self) -> &'static str {
        "homology of the graph-product bar resolution (should be k in degree 0)"
    }
    fn needs(&self) -> Needs {
        Needs::Algebras
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let r = check_acyclic_full(algebras(job), job.s_max, job.n_max, job.field)?;
        let failures: Vec<Value> = r
            .failures
            .iter()
            .map(|&(s, n, d)| json!({"s": s, "n": n, "dim": d}))
            .collect();
        Ok((
            json!({"acyclic": r.passed(), "failures": failures, "homology": tor_value(&r.homology)}),
            r.passed(),
        ))
    }
}

struct Check {
    name: &'static str,
    passed: bool,
    count: usize,
    note: Option<String>,
}

impl Check {
    fn new(name: &'static str, passed: bool, count: usize) -> Self {
        Check { name, passed, count, note: None }
    }

    fn skipped(name: &'static str, why: impl Into<String>) -> Self {
        Check { name, passed: true, count: 0, note: Some(why.into()) }
    }

    fn value(&self) -> Value {
        let mut v = json!({"check": self.name, "passed": self.passed, "count": self.count});
        if let Some(n) = &self.note {
            v.as_object_mut().expect("object").insert("note".into(), json!(n));
        }
        v
    }
}

fn complex_checks(job: &Job) -> anyhow::Result<Vec<Check>> {
    let k = &job.complex;
    let mut euler_ok = true;
    let mut all_h1_zero = true;
    let subsets = (1u64 << k.ambient_size()) - 1;
    for set in 1..=subsets {
        let sub = k.full_subcomplex(set)?;
        let h = reduced_homology(&sub, job.field)?;
        euler_ok &= h.euler_characteristic() == reduced_euler_from_simplices(&sub);
        all_h1_zero &= h.get(1) == 0;
    }
    Ok(vec![
        Check::new("euler-characteristic", euler_ok, subsets as usize),
        Check::new("chordal-vs-homology", all_h1_zero == k.is_chordal(), 1),
    ])
}

/// Largest length `<= 4` whose word space the union-find oracle can hold.
fn oracle_length(letters: usize) -> usize {
    (1..=4).rev().find(|&l| (letters + 1).pow(l as u32) <= 1 << 20).unwrap_or(1)
}

fn group_checks(job: &Job, g: &GroupPayload) -> anyhow::Result<Vec<Check>> {
    let gp = &g.product;
    let mut out = Vec::new();

    let gens = gp.kernel_generators(g.generators.as_deref())?;
    out.push(Check::new("kernel-generators-in-kernel", gens.iter().all(|k| gp.in_kernel(&k.word)), gens.len()));

    if gp.groups().iter().any(|x| !x.is_finite()) {
        for name in ["normal-forms-vs-oracle", "normalize-idempotent", "length-census", "split-reconstruct", "projections-multiplicative"] {
            out.push(Check::skipped(name, "needs finite vertex groups"));
        }
        return Ok(out);
    }

    let letters = gp.all_letters()?.len();
    let oc = oracle_classes(gp, oracle_length(letters))?;
    let mut by_class: HashMap<usize, NormalFormWord> = HashMap::new();
    let mut by_form: HashMap<NormalFormWord, usize> = HashMap::new();
    let (mut agree, mut idem, mut count) = (true, true, 0usize);
    for w in oc.words() {
        let nf = gp.normalize(&w)?;
        let class = oc.class_of(&w).expect("word within the bound");
        agree &= by_class.entry(class).or_insert_with(|| nf.clone()) == &nf;
        agree &= *by_form.entry(nf.clone()).or_insert(class) == class;
        idem &= gp.normalize(nf.letters())? == nf;
        count += 1;
    }
    out.push(Check::new("normal-forms-vs-oracle", agree, count));
    out.push(Check::new("normalize-idempotent", idem, count));

    let c = gp.length_census(job.n_max.min(5))?;
    out.push(Check::new("length-census", c.agrees(), c.enumerated.iter().sum()));

    let ball: Vec<NormalFormWord> = gp.ball(3)?.into_iter().flatten().collect();
    let mut ok = true;
    let mut seen = HashSet::new();
    for x in &ball {
        let s = gp.split(x)?;
        ok &= gp.in_kernel(&s.h) && gp.reconstruct(&s)? == *x;
        ok &= seen.insert(s);
    }
    out.push(Check::new("split-reconstruct", ok, ball.len()));

    let small: Vec<&NormalFormWord> = ball.iter().filter(|x| x.len() <= 2).collect();
    let mut ok = true;
    for a in &small {
        for b in &small {
            let ab = gp.multiply(a, b)?;
            for v in job.complex.vertices() {
                let g = gp.group(v);
                ok &= gp.project(&ab, v)? == g.mul(gp.project(a, v)?, gp.project(b, v)?);
            }
        }
    }
    out.push(Check::new("projections-multiplicative", ok, small.len() * small.len()));
    Ok(out)
}

fn algebra_checks(job: &Job, gp: &GraphProductAlgebra) -> anyhow::Result<Vec<Check>> {
    let (s_max, n_max, field) = (job.s_max, job.n_max, job.field);
    let mut out = Vec::new();

    let reg = SeriesRegistry::default();
    let census = gp.hilbert_series(n_max)?;
    let mut agree = true;
    let mut routes = 0;
    for r in reg.iter() {
        match r.series(gp, n_max, field) {
            Ok(s) => {
                agree &= s == census;
                routes += 1;
            }
            Err(graphprod_core::Error::Invalid(_)) if r.name() == "rational" => {}
            Err(e) => return Err(e.into()),
        }
    }
    out.push(Check::new("series-routes", agree, routes));

    let ep = ep_series_aprime(gp, n_max, field)?;
    out.push(Check::new("ep-inverse", ep.inverse.mul(&ep.series).is_one(), n_max + 1));

    let tor = TorRegistry::default();
    for (name, v) in [("tor-aprime", Variant::APrime), ("tor-ak", Variant::AK)] {
        let tables = tor
            .for_variant(v)
            .iter()
            .map(|r| r.compute(gp, s_max, n_max, field))
            .collect::<graphprod_core::Result<Vec<_>>>()?;
        let ok = tables.windows(2).all(|w| w[0].same_dims(&w[1]));
        out.push(Check::new(name, ok, (s_max + 1) * (n_max + 1)));
    }

    let aprime = tor_aprime_closed(gp, 1, n_max, field)?;
    let gens = min_generators_aprime(gp, n_max)?;
    out.push(Check::new("generator-count", gens.counts(n_max) == aprime.rows()[1], gens.entries.len()));

    // the alternating sum needs every s with Tor_s nonzero below n_max
    let d_min = gp.algebras().iter().filter_map(|a| a.min_degree()).min().unwrap_or(1).max(1);
    let s_all = n_max / d_min;
    let mut ok = true;
    for a in gp.algebras() {
        let t = tor_dims_bar(a, s_all, n_max, field)?;
        ok &= pat_identity_holds(&a.hilbert_series(n_max)?, &t)?;
    }
    let t = tor_ak_closed(gp, s_all, n_max, field)?;
    ok &= pat_identity_holds(&census, &t)?;
    out.push(Check::new("pat-identity", ok, gp.algebras().len() + 1));

    let r = check_acyclic_full(gp, s_max, n_max, field)?;
    out.push(Check::new("acyclicity", r.passed(), (s_max + 1) * (n_max + 1)));
    Ok(out)
}

impl Command for VerifyAll {
    fn name(&self) -> &'static str {
        "verify-all"
    }
    fn about(&self) -> &'static str {
        "runs every cross-check the payload allows"
    }
    fn needs(&self) -> Needs {
        Needs::Any
    }
    fn run(&self, job: &Job) -> anyhow::Result<(Value, bool)> {
        let mut checks = complex_checks(job)?;
        if let Some(g) = &job.groups {
            checks.extend(group_checks(job, g)?);
        }
        if let Some(a) = &job.algebras {
            checks.extend(algebra_checks(job, a)?);
        }
        let failed = checks.iter().filter(|c| !c.passed).count();
        let summary = if failed == 0 {
            "all checks passed".to_string()
        } else {
            format!("{failed} of {} checks failed", checks.len())
        };
        let list: Vec<Value> = checks.iter().map(Check::value).collect();
        Ok((json!({"summary": summary, "checks": list}), failed == 0))
    }
}

