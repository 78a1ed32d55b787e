//! Flag complexes: simplicial complexes whose simplices are the cliques of a
//! graph. Vertices carry their original labels `1..=m` through every
//! full-subcomplex restriction, so a vertex set is a bit mask over the ambient
//! labels.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ambient vertex count; vertex sets are `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// A bit mask over vertex labels: bit `v - 1` stands for vertex `v`.
pub type VertexSet = u64;

pub fn vertex_bit(v: u32) -> VertexSet {
    1u64 << (v - 1)
}

pub fn vertices_of(set: VertexSet) -> Vec<u32> {
    (0..64).filter(|b| set >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn set_of(vertices: &[u32]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | vertex_bit(v))
}

/// A simplex, stored as its strictly increasing vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Geometric dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn mask(&self) -> VertexSet {
        set_of(&self.0)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The flag complex of a graph, restricted to a vertex subset of `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagComplex {
    m: usize,
    vertices: VertexSet,
    /// `adj[v - 1]` is the neighbourhood of `v` inside `vertices`.
    adj: Vec<VertexSet>,
}

impl FlagComplex {
    /// Builds the flag complex on vertices `1..=m` with the given edges.
    pub fn new(m: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "at most {MAX_VERTICES} vertices are supported, got {m}"
            )));
        }
        let mut adj = vec![0u64; m];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v as usize > m {
                    return Err(Error::invalid(format!(
                        "edge {{{a},{b}}} references vertex {v} outside 1..={m}"
                    )));
                }
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            adj[a as usize - 1] |= vertex_bit(b);
            adj[b as usize - 1] |= vertex_bit(a);
        }
        let vertices = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        Ok(FlagComplex { m, vertices, adj })
    }

    /// The complete graph on `m` vertices, i.e. the full simplex.
    pub fn simplex(m: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 1..=m as u32 {
            for b in a + 1..=m as u32 {
                edges.push((a, b));
            }
        }
        Self::new(m, &edges)
    }

    /// The cycle `1-2-...-m-1` (`m >= 3`).
    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        let mut edges: Vec<(u32, u32)> = (1..m as u32).map(|v| (v, v + 1)).collect();
        edges.push((1, m as u32));
        Self::new(m, &edges)
    }

    /// The path `1-2-...-m`.
    pub fn path(m: usize) -> Result<Self> {
        let edges: Vec<(u32, u32)> = (1..m as u32).map(|v| (v, v + 1)).collect();
        Self::new(m, &edges)
    }

    /// `m` vertices and no edges.
    pub fn discrete(m: usize) -> Result<Self> {
        Self::new(m, &[])
    }

    /// Number of ambient vertex labels.
    pub fn ambient_size(&self) -> usize {
        self.m
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertices(&self) -> Vec<u32> {
        vertices_of(self.vertices)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones() as usize
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        v >= 1 && v as usize <= self.m && self.vertices & vertex_bit(v) != 0
    }

    pub fn neighbours(&self, v: u32) -> VertexSet {
        if self.has_vertex(v) {
            self.adj[v as usize - 1]
        } else {
            0
        }
    }

    /// Whether `{a, b}` is an edge. Distinct vertices only.
    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.neighbours(a) & vertex_bit(b) != 0
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in vertices_of(self.neighbours(a)) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_set(&self, set: VertexSet) -> Result<()> {
        let ambient = if self.m == 64 { u64::MAX } else { (1u64 << self.m) - 1 };
        if set & !ambient != 0 {
            return Err(Error::invalid(format!(
                "vertex set contains labels outside 1..={}",
                self.m
            )));
        }
        Ok(())
    }

    /// The full subcomplex on `set ∩ vertices`. Labels outside `1..=m` are an error.
    pub fn full_subcomplex(&self, set: VertexSet) -> Result<Self> {
        self.check_set(set)?;
        let vertices = self.vertices & set;
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, nb)| {
                if vertices >> i & 1 == 1 {
                    nb & vertices
                } else {
                    0
                }
            })
            .collect();
        Ok(FlagComplex {
            m: self.m,
            vertices,
            adj,
        })
    }

    pub fn full_subcomplex_on(&self, vertices: &[u32]) -> Result<Self> {
        for &v in vertices {
            if v == 0 || v as usize > self.m {
                return Err(Error::invalid(format!("vertex {v} outside 1..={}", self.m)));
            }
        }
        self.full_subcomplex(set_of(vertices))
    }

    /// Whether `set` spans a simplex (a clique).
    pub fn is_simplex(&self, set: VertexSet) -> bool {
        if set & !self.vertices != 0 {
            return false;
        }
        let mut rest = set;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            if (set & !(1u64 << b)) & !self.adj[b as usize] != 0 {
                return false;
            }
        }
        true
    }

    /// Calls `f` on every simplex (including the empty one) as a vertex mask.
    ///
    /// Enumeration is depth-first over cliques, extending by larger vertices only.
    pub fn for_each_simplex(&self, mut f: impl FnMut(VertexSet)) {
        fn extend(cx: &FlagComplex, clique: VertexSet, candidates: VertexSet, f: &mut impl FnMut(VertexSet)) {
            f(clique);
            let mut rest = candidates;
            while rest != 0 {
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                // only larger vertices remain candidates, so each clique is visited once
                extend(cx, clique | 1u64 << b, rest & cx.adj[b as usize], f);
            }
        }
        extend(self, 0, self.vertices, &mut f);
    }

    pub fn simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        self.for_each_simplex(|s| out.push(Simplex(vertices_of(s))));
        out
    }

    pub fn simplex_count(&self) -> usize {
        let mut n = 0;
        self.for_each_simplex(|_| n += 1);
        n
    }

    /// Simplices of a given cardinality (`k = 0` gives only the empty simplex).
    pub fn simplices_of_size(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        self.for_each_simplex(|s| {
            if s.count_ones() as usize == k {
                out.push(Simplex(vertices_of(s)));
            }
        });
        out.sort();
        out
    }

    /// Largest simplex dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        let mut best = 0u32;
        self.for_each_simplex(|s| best = best.max(s.count_ones()));
        best as isize - 1
    }

    /// Connected components of the 1-skeleton, each sorted, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen: VertexSet = 0;
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen & vertex_bit(v) != 0 {
                continue;
            }
            let mut comp: VertexSet = vertex_bit(v);
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                let fresh = self.neighbours(u) & !comp;
                comp |= fresh;
                queue.extend(vertices_of(fresh));
            }
            seen |= comp;
            out.push(vertices_of(comp));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Whether every cycle of length at least 4 in the 1-skeleton has a chord.
    ///
    /// Lexicographic breadth-first search produces an ordering whose reverse is a
    /// perfect elimination ordering exactly when the graph is chordal.
    pub fn is_chordal(&self) -> bool {
        let order = self.lex_bfs();
        let mut position = vec![usize::MAX; self.m];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize - 1] = i;
        }
        // in the reverse order, the earlier-visited neighbours of v must form a clique
        // together with v's parent, the latest-visited of them
        for &v in &order {
            let pv = position[v as usize - 1];
            let earlier: Vec<u32> = vertices_of(self.neighbours(v))
                .into_iter()
                .filter(|u| position[*u as usize - 1] < pv)
                .collect();
            let Some(&parent) = earlier.iter().max_by_key(|u| position[**u as usize - 1]) else {
                continue;
            };
            let need = set_of(&earlier) & !vertex_bit(parent);
            if need & !self.neighbours(parent) != 0 {
                return false;
            }
        }
        true
    }

    /// Lexicographic BFS by partition refinement; ties go to the smallest label.
    pub fn lex_bfs(&self) -> Vec<u32> {
        let mut classes: Vec<Vec<u32>> = vec![self.vertices()];
        classes.retain(|c| !c.is_empty());
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(first) = classes.first_mut() {
            let v = first.remove(0);
            if first.is_empty() {
                classes.remove(0);
            }
            order.push(v);
            let nb = self.neighbours(v);
            let mut refined = Vec::with_capacity(classes.len() * 2);
            for class in classes {
                let (inside, outside): (Vec<u32>, Vec<u32>) =
                    class.into_iter().partition(|u| nb & vertex_bit(*u) != 0);
                if !inside.is_empty() {
                    refined.push(inside);
                }
                if !outside.is_empty() {
                    refined.push(outside);
                }
            }
            classes = refined;
        }
        order
    }

    /// All simplices, the empty one first, then by size, then lexicographically.
    pub fn lex_order_simplices(&self) -> Vec<Simplex> {
        let mut all = self.simplices();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
        all
    }

    /// Splits off the closed star of `v`: returns the full subcomplexes on
    /// `{v} ∪ N(v)`, on the vertices other than `v`, and on `N(v)`.
    pub fn split_star(&self, v: u32) -> Result<StarSplit> {
        if !self.has_vertex(v) {
            return Err(Error::invalid(format!("vertex {v} is not in the complex")));
        }
        let nb = self.neighbours(v);
        Ok(StarSplit {
            star: self.full_subcomplex(nb | vertex_bit(v))?,
            complement: self.full_subcomplex(self.vertices & !vertex_bit(v))?,
            intersection: self.full_subcomplex(nb)?,
        })
    }
}

impl fmt::Display for FlagComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.edges().iter().map(|(a, b)| format!("{a}{b}")).collect();
        write!(f, "K(vertices [{}], edges [{}])", vs.join(","), es.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSplit {
    pub star: FlagComplex,
    pub complement: FlagComplex,
    pub intersection: FlagComplex,
}
