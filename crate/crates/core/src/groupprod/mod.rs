//! Graph products of discrete groups over a flag complex.
//!
//! Elements are kept as normal-form words: reduced (no two letters at the same
//! vertex can be brought together by commuting moves) and lexicographically
//! least in their commutation class, comparing letters by vertex.

mod local;
mod oracle;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

pub use local::{FiniteGroup, GroupElem, LocalGroup};
pub use oracle::{oracle_classes, OracleClasses, ORACLE_MAX_LEN};

use crate::complex::{vertices_of, FlagComplex};
use crate::error::{Error, Result};
use crate::trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: u32,
    pub elem: GroupElem,
}

impl Letter {
    pub fn new(vertex: u32, elem: GroupElem) -> Self {
        Letter { vertex, elem }
    }
}

/// A group element in normal form. Only [`GraphProduct`] constructs these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalFormWord(Vec<Letter>);

impl NormalFormWord {
    pub fn identity() -> Self {
        NormalFormWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.vertex).collect()
    }
}

/// `g = h · γ_m ⋯ γ_1` with `h` in the kernel of the abelianization map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitForm {
    pub h: NormalFormWord,
    /// `gammas[i - 1]` is the vertex-`i` component.
    pub gammas: Vec<GroupElem>,
}

/// One iterated commutator generating the kernel of the abelianization map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelGenerator {
    /// The vertex subset `I` whose full subcomplex is disconnected.
    pub subset: Vec<u32>,
    /// Smallest vertex of a component of `K_I` avoiding `max I`.
    pub t: u32,
    /// The chosen nonidentity element at each vertex of `I`, in vertex order.
    pub choices: Vec<Letter>,
    pub word: NormalFormWord,
}

/// Element counts by normal-form length, enumerated and predicted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthCensus {
    pub enumerated: Vec<usize>,
    pub predicted: Vec<usize>,
}

impl LengthCensus {
    pub fn agrees(&self) -> bool {
        self.enumerated == self.predicted
    }
}

/// A flag complex with one group per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProduct {
    complex: FlagComplex,
    groups: Vec<LocalGroup>,
}

impl GraphProduct {
    pub fn new(complex: FlagComplex, groups: Vec<LocalGroup>) -> Result<Self> {
        if groups.len() != complex.ambient_size() {
            return Err(Error::invalid(format!(
                "{} vertex groups given for {} vertices",
                groups.len(),
                complex.ambient_size()
            )));
        }
        Ok(GraphProduct { complex, groups })
    }

    /// The same group at every vertex.
    pub fn uniform(complex: FlagComplex, group: LocalGroup) -> Self {
        let groups = vec![group; complex.ambient_size()];
        GraphProduct { complex, groups }
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn group(&self, v: u32) -> &LocalGroup {
        &self.groups[v as usize - 1]
    }

    pub fn groups(&self) -> &[LocalGroup] {
        &self.groups
    }

    pub fn vertex_count(&self) -> usize {
        self.groups.len()
    }

    pub fn check_letter(&self, l: &Letter) -> Result<()> {
        if !self.complex.has_vertex(l.vertex) {
            return Err(Error::invalid(format!("vertex {} is not in the complex", l.vertex)));
        }
        if !self.group(l.vertex).contains(l.elem) {
            return Err(Error::invalid(format!(
                "{} is not an element of the group at vertex {}",
                l.elem, l.vertex
            )));
        }
        Ok(())
    }

    /// The letter as a one-letter word (empty if it is the identity).
    pub fn letter(&self, vertex: u32, elem: GroupElem) -> Result<NormalFormWord> {
        self.normalize(&[Letter::new(vertex, elem)])
    }

    /// Rewrites any word into normal form. Identity letters are dropped.
    pub fn normalize(&self, word: &[Letter]) -> Result<NormalFormWord> {
        for l in word {
            self.check_letter(l)?;
        }
        let mut w: Vec<Letter> = word
            .iter()
            .copied()
            .filter(|l| !self.group(l.vertex).is_identity(l.elem))
            .collect();
        loop {
            let vs: Vec<u32> = w.iter().map(|l| l.vertex).collect();
            let Some((i, j)) = trace::find_mergeable(&vs, &self.complex) else {
                break;
            };
            let g = self.group(w[i].vertex);
            let merged = g.mul(w[i].elem, w[j].elem);
            if g.is_identity(merged) {
                w.remove(j);
            } else {
                w[j].elem = merged;
            }
            w.remove(i);
        }
        let vs: Vec<u32> = w.iter().map(|l| l.vertex).collect();
        let order = trace::lex_min_order(&vs, &self.complex);
        Ok(NormalFormWord(order.into_iter().map(|i| w[i]).collect()))
    }

    pub fn is_normal(&self, word: &[Letter]) -> bool {
        word.iter().all(|l| {
            self.check_letter(l).is_ok() && !self.group(l.vertex).is_identity(l.elem)
        }) && trace::is_normal_support(&word.iter().map(|l| l.vertex).collect::<Vec<_>>(), &self.complex)
    }

    fn check_word(&self, w: &NormalFormWord) -> Result<()> {
        if !self.is_normal(&w.0) {
            return Err(Error::invalid("word does not belong to this graph product"));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &NormalFormWord, b: &NormalFormWord) -> Result<NormalFormWord> {
        self.check_word(a)?;
        self.check_word(b)?;
        let mut w = a.0.clone();
        w.extend_from_slice(&b.0);
        self.normalize(&w)
    }

    pub fn product(&self, factors: &[&NormalFormWord]) -> Result<NormalFormWord> {
        let mut w = Vec::new();
        for f in factors {
            self.check_word(f)?;
            w.extend_from_slice(&f.0);
        }
        self.normalize(&w)
    }

    pub fn invert(&self, a: &NormalFormWord) -> Result<NormalFormWord> {
        self.check_word(a)?;
        let w: Vec<Letter> = a
            .0
            .iter()
            .rev()
            .map(|l| Letter::new(l.vertex, self.group(l.vertex).inv(l.elem)))
            .collect();
        self.normalize(&w)
    }

    /// The commutator `L_g(h) = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: &NormalFormWord, h: &NormalFormWord) -> Result<NormalFormWord> {
        let gi = self.invert(g)?;
        let hi = self.invert(h)?;
        self.product(&[&gi, &hi, g, h])
    }

    /// The product of the vertex-`i` letters, in order.
    pub fn project(&self, a: &NormalFormWord, i: u32) -> Result<GroupElem> {
        if !self.complex.has_vertex(i) {
            return Err(Error::invalid(format!("vertex {i} is not in the complex")));
        }
        let g = self.group(i);
        Ok(a
            .0
            .iter()
            .filter(|l| l.vertex == i)
            .fold(g.identity(), |acc, l| g.mul(acc, l.elem)))
    }

    /// `(π_1(a), …, π_m(a))`.
    pub fn ab(&self, a: &NormalFormWord) -> Vec<GroupElem> {
        (1..=self.groups.len() as u32)
            .map(|i| {
                let g = self.group(i);
                a.0.iter()
                    .filter(|l| l.vertex == i)
                    .fold(g.identity(), |acc, l| g.mul(acc, l.elem))
            })
            .collect()
    }

    pub fn in_kernel(&self, a: &NormalFormWord) -> bool {
        self.ab(a)
            .iter()
            .enumerate()
            .all(|(i, &x)| self.groups[i].is_identity(x))
    }

    /// `h = g γ_1⁻¹ ⋯ γ_m⁻¹` with `γ_i = π_i(g)`.
    pub fn split(&self, g: &NormalFormWord) -> Result<SplitForm> {
        self.check_word(g)?;
        let gammas = self.ab(g);
        let mut w = g.0.clone();
        for (i, &gamma) in gammas.iter().enumerate() {
            w.push(Letter::new(i as u32 + 1, self.groups[i].inv(gamma)));
        }
        Ok(SplitForm {
            h: self.normalize(&w)?,
            gammas,
        })
    }

    /// `h · γ_m ⋯ γ_1`.
    pub fn reconstruct(&self, s: &SplitForm) -> Result<NormalFormWord> {
        let mut w = s.h.0.clone();
        for i in (0..s.gammas.len()).rev() {
            w.push(Letter::new(i as u32 + 1, s.gammas[i]));
        }
        self.normalize(&w)
    }

    fn default_gens(&self, v: u32) -> Result<Vec<GroupElem>> {
        self.group(v).nonidentity_elements().ok_or_else(|| {
            Error::invalid(format!(
                "vertex {v} carries an infinite group; supply a finite generating subset"
            ))
        })
    }

    /// Iterated commutators generating the kernel of `ab`.
    ///
    /// For each `I` with `K_I` disconnected (listed `i_1 < … < i_n`) and each
    /// component of `K_I` avoiding `i_n`, with `t` its smallest vertex, emits
    /// `L_{g_{i_1}} ∘ … ∘ L_{g_{i_n}}(g_t)` (skipping `t` in the composition) for
    /// every choice of `g_{i_l}` from the generating subsets. `gen_subsets[v - 1]`
    /// overrides the default of all nonidentity elements.
    pub fn kernel_generators(&self, gen_subsets: Option<&[Vec<GroupElem>]>) -> Result<Vec<KernelGenerator>> {
        let m = self.groups.len();
        let mut gens_at: BTreeMap<u32, Vec<GroupElem>> = BTreeMap::new();
        let mut subset_gens = |v: u32| -> Result<Vec<GroupElem>> {
            if let Some(g) = gens_at.get(&v) {
                return Ok(g.clone());
            }
            let list = match gen_subsets.and_then(|s| s.get(v as usize - 1)) {
                Some(list) => {
                    for &x in list {
                        self.check_letter(&Letter::new(v, x))?;
                        if self.group(v).is_identity(x) {
                            return Err(Error::invalid(format!(
                                "generating subset at vertex {v} contains the identity"
                            )));
                        }
                    }
                    list.clone()
                }
                None => self.default_gens(v)?,
            };
            if list.is_empty() {
                return Err(Error::invalid(format!("empty generating subset at vertex {v}")));
            }
            gens_at.insert(v, list.clone());
            Ok(list)
        };

        let mut out = Vec::new();
        for set in 1u64..(1u64 << m) {
            let sub = self.complex.full_subcomplex(set)?;
            let comps = sub.components();
            if comps.len() < 2 {
                continue;
            }
            let verts = vertices_of(set);
            let last = *verts.last().expect("nonempty");
            let choices_per_vertex: Vec<Vec<GroupElem>> =
                verts.iter().map(|&v| subset_gens(v)).collect::<Result<_>>()?;
            for comp in comps.iter().filter(|c| !c.contains(&last)) {
                let t = comp[0];
                for choice in cartesian(&choices_per_vertex) {
                    let letters: Vec<Letter> =
                        verts.iter().zip(&choice).map(|(&v, &e)| Letter::new(v, e)).collect();
                    let pos_t = verts.iter().position(|&v| v == t).expect("t in I");
                    let mut x = self.letter(t, choice[pos_t])?;
                    for (l, &v) in verts.iter().enumerate().rev() {
                        if v == t {
                            continue;
                        }
                        let g = self.letter(v, choice[l])?;
                        x = self.commutator(&g, &x)?;
                    }
                    out.push(KernelGenerator {
                        subset: verts.clone(),
                        t,
                        choices: letters,
                        word: x,
                    });
                }
            }
        }
        Ok(out)
    }

    /// All nonidentity letters, vertex by vertex. Errors for infinite groups.
    pub fn all_letters(&self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for v in self.complex.vertices() {
            for e in self.default_gens(v)? {
                out.push(Letter::new(v, e));
            }
        }
        Ok(out)
    }

    /// Every element of normal-form length at most `n_max`, grouped by length,
    /// found by multiplying shorter elements by single letters.
    pub fn ball(&self, n_max: usize) -> Result<Vec<Vec<NormalFormWord>>> {
        let letters = self.all_letters()?;
        let mut levels: Vec<Vec<NormalFormWord>> = vec![vec![NormalFormWord::identity()]];
        let mut seen: HashSet<NormalFormWord> = HashSet::from([NormalFormWord::identity()]);
        for n in 1..=n_max {
            let mut next = Vec::new();
            for w in &levels[n - 1] {
                for l in &letters {
                    let mut x = w.0.clone();
                    x.push(*l);
                    let y = self.normalize(&x)?;
                    if y.len() == n && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        Ok(levels)
    }

    /// Counts elements by length two ways: by enumerating the ball, and as
    /// Σ over normal support words `w` of length n of ∏ (|G_{w_k}| - 1).
    pub fn length_census(&self, n_max: usize) -> Result<LengthCensus> {
        let mut sizes = Vec::new();
        for v in 1..=self.groups.len() as u32 {
            let order = self.group(v).order().ok_or_else(|| {
                Error::invalid(format!("length census needs finite groups; vertex {v} carries Z"))
            })?;
            sizes.push(order as usize - 1);
        }
        let enumerated = self.ball(n_max)?.iter().map(|l| l.len()).collect();
        let predicted = (0..=n_max)
            .map(|n| {
                trace::normal_support_words(&self.complex, n)
                    .iter()
                    .map(|w| w.iter().map(|&v| sizes[v as usize - 1]).product::<usize>())
                    .sum()
            })
            .collect();
        Ok(LengthCensus {
            enumerated,
            predicted,
        })
    }

    pub fn render_letter(&self, l: &Letter) -> String {
        format!("{}_{}", self.group(l.vertex).name(l.elem), l.vertex)
    }

    pub fn render(&self, w: &NormalFormWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter().map(|l| self.render_letter(l)).collect::<Vec<_>>().join(" ")
    }

    /// Reads the output of [`render`](Self::render): space-separated `name_vertex`
    /// tokens, `1` for the empty word. The result is not normalized.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|tok| {
                let (name, v) = split_token(tok)?;
                if !self.complex.has_vertex(v) {
                    return Err(Error::invalid(format!("'{tok}': no vertex {v}")));
                }
                let l = Letter::new(v, self.group(v).parse(name)?);
                self.check_letter(&l)?;
                Ok(l)
            })
            .collect()
    }
}

impl fmt::Display for NormalFormWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("({},{})", l.vertex, l.elem)).collect();
        f.write_str(&parts.join(""))
    }
}

/// Splits `name_vertex` at the last underscore.
pub(crate) fn split_token(tok: &str) -> Result<(&str, u32)> {
    let bad = || Error::invalid(format!("'{tok}' is not of the form name_vertex"));
    let (name, v) = tok.rsplit_once('_').ok_or_else(bad)?;
    if name.is_empty() {
        return Err(bad());
    }
    Ok((name, v.parse().map_err(|_| bad())?))
}

fn cartesian(lists: &[Vec<GroupElem>]) -> Vec<Vec<GroupElem>> {
    let mut out: Vec<Vec<GroupElem>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}
