//! Simplicial complexes on at most 64 vertices, the Stanley–Reisner
//! correspondence, the stepwise complex filtration, homology and Hochster's
//! formula for multigraded Betti numbers.

mod homology;
mod koszul;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{low_bits, MonomialIdeal};

pub use homology::{betti_numbers, reduced_betti_numbers, Field, ReducedBetti};
pub use koszul::{
    betti_at, betti_at_lower, lower_koszul, sensitive_corners, upper_koszul, BettiEntry,
    BettiTable,
};

/// A simplicial complex stored by its facets as vertex bitmasks.
///
/// The void complex has no facets; the irrelevant complex has the single
/// facet `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    nvertices: usize,
    facets: Vec<u64>,
}

/// Orders by size, then lexicographically by sorted vertex list.
fn sort_key(mask: u64) -> (u32, std::cmp::Reverse<u64>) {
    (mask.count_ones(), std::cmp::Reverse(mask.reverse_bits()))
}

fn maximal_sets(sets: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = sets.into_iter().collect::<HashSet<_>>().into_iter().collect();
    v.sort_by_key(|&m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u64> = Vec::new();
    for m in v {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    kept.sort_by_key(|&m| sort_key(m));
    kept
}

fn minimal_sets(sets: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = sets.into_iter().collect::<HashSet<_>>().into_iter().collect();
    v.sort_by_key(|&m| m.count_ones());
    let mut kept: Vec<u64> = Vec::new();
    for m in v {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    kept
}

/// Maximal subsets of `ground` containing no edge of the hypergraph: the
/// complements of its minimal transversals, built edge by edge.
fn maximal_independent_sets(ground: u64, edges: &[u64]) -> Vec<u64> {
    let mut transversals: Vec<u64> = vec![0];
    for &e in edges {
        let e = e & ground;
        let mut next = Vec::with_capacity(transversals.len());
        for &t in &transversals {
            if t & e != 0 {
                next.push(t);
            } else {
                let mut rest = e;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    next.push(t | v);
                    rest &= rest - 1;
                }
            }
        }
        transversals = minimal_sets(next);
    }
    maximal_sets(transversals.into_iter().map(|t| ground & !t))
}

pub(crate) fn vertices_of(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

/// All subsets of `mask`, including `∅` and `mask`.
pub(crate) fn subsets_of(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let s = sub?;
        sub = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

impl SimplicialComplex {
    /// Builds a complex from arbitrary generating faces, keeping the maximal
    /// ones.
    pub fn new(nvertices: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        if nvertices > 64 {
            return Err(Error::TooManyVertices(nvertices));
        }
        let ground = low_bits(nvertices);
        let faces: Vec<u64> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|&&f| f & !ground != 0) {
            return Err(Error::Invalid(format!(
                "face {bad:#b} uses a vertex outside 1..{nvertices}"
            )));
        }
        Ok(Self {
            nvertices,
            facets: maximal_sets(faces),
        })
    }

    /// Complex from 0-based vertex lists.
    pub fn from_faces(nvertices: usize, faces: &[&[usize]]) -> Result<Self> {
        let mut masks = Vec::with_capacity(faces.len());
        for f in faces {
            let mut m = 0u64;
            for &v in *f {
                if v >= nvertices {
                    return Err(Error::Invalid(format!(
                        "vertex {} outside 1..{nvertices}",
                        v + 1
                    )));
                }
                m |= 1 << v;
            }
            masks.push(m);
        }
        Self::new(nvertices, masks)
    }

    pub fn void(nvertices: usize) -> Self {
        Self {
            nvertices,
            facets: Vec::new(),
        }
    }

    pub fn irrelevant(nvertices: usize) -> Self {
        Self {
            nvertices,
            facets: vec![0],
        }
    }

    pub fn simplex(nvertices: usize) -> Self {
        Self {
            nvertices,
            facets: vec![low_bits(nvertices)],
        }
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [0]
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.facets.iter().all(|&f| other.contains(f))
    }

    /// Vertices lying in some face.
    pub fn vertex_mask(&self) -> u64 {
        self.facets.iter().fold(0, |a, &f| a | f)
    }

    /// Dimension of the largest facet; `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets
            .iter()
            .map(|f| f.count_ones() as isize - 1)
            .max()
    }

    /// Every face, sorted by size and then by vertex list.
    pub fn faces(&self) -> Vec<u64> {
        let mut all: HashSet<u64> = HashSet::new();
        for &f in &self.facets {
            all.extend(subsets_of(f));
        }
        let mut v: Vec<u64> = all.into_iter().collect();
        v.sort_by_key(|&m| sort_key(m));
        v
    }

    /// Faces grouped by cardinality; entry `k` holds faces with `k` vertices.
    pub fn faces_by_size(&self) -> Vec<Vec<u64>> {
        let faces = self.faces();
        let top = faces.last().map_or(0, |f| f.count_ones() as usize);
        let mut out = vec![Vec::new(); if faces.is_empty() { 0 } else { top + 1 }];
        for f in faces {
            out[f.count_ones() as usize].push(f);
        }
        out
    }

    /// `(f_{-1}, f_0, f_1, ...)`.
    pub fn f_vector(&self) -> Result<Vec<u64>> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        Ok(self
            .faces_by_size()
            .iter()
            .map(|g| g.len() as u64)
            .collect())
    }

    /// Alternating face count `Σ (-1)^d f_d` over `d ≥ 0`.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let f = self.f_vector()?;
        Ok(f.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum())
    }

    /// Induced subcomplex on the vertex set `mask`.
    pub fn restrict(&self, mask: u64) -> Self {
        Self {
            nvertices: self.nvertices,
            facets: maximal_sets(self.facets.iter().map(|&f| f & mask)),
        }
    }

    /// Inclusion-minimal subsets of the ground set that are not faces.
    pub fn minimal_nonfaces(&self) -> Result<Vec<u64>> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        let ground = low_bits(self.nvertices);
        let mut out = HashSet::new();
        for face in self.faces() {
            for v in vertices_of(ground & !face) {
                let cand = face | 1 << v;
                if !self.contains(cand)
                    && vertices_of(cand).all(|w| self.contains(cand & !(1 << w)))
                {
                    out.insert(cand);
                }
            }
        }
        let mut v: Vec<u64> = out.into_iter().collect();
        v.sort_by_key(|&m| sort_key(m));
        Ok(v)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            nvertices: self.nvertices,
            facets: self
                .facets
                .iter()
                .map(|&f| vertices_of(f).map(|v| v + 1).collect())
                .collect(),
        }
    }

    /// Facets as 1-based vertex lists, e.g. `{12, 13, 23}`.
    pub fn format_facets(&self) -> String {
        let parts: Vec<String> = self
            .facets
            .iter()
            .map(|&f| {
                let vs: Vec<String> = vertices_of(f).map(|v| (v + 1).to_string()).collect();
                if self.nvertices < 10 {
                    vs.concat()
                } else {
                    vs.join(",")
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            f.write_str("void")
        } else {
            f.write_str(&self.format_facets())
        }
    }
}

/// `{"nvertices": int, "facets": [[int...]...]}` with 1-based vertices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub nvertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexJson {
    pub fn load(&self) -> Result<SimplicialComplex> {
        let mut masks = Vec::with_capacity(self.facets.len());
        if self.nvertices > 64 {
            return Err(Error::TooManyVertices(self.nvertices));
        }
        for f in &self.facets {
            let mut m = 0u64;
            for &v in f {
                if v == 0 || v > self.nvertices {
                    return Err(Error::Invalid(format!(
                        "vertex {v} outside 1..{}",
                        self.nvertices
                    )));
                }
                m |= 1 << (v - 1);
            }
            masks.push(m);
        }
        SimplicialComplex::new(self.nvertices, masks)
    }
}

/// A named complex, as stored in fixture files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NamedComplexJson {
    pub name: String,
    #[serde(flatten)]
    pub complex: ComplexJson,
}

/// Reads either a single complex or a list of named complexes.
pub fn parse_complexes(text: &str) -> Result<Vec<(String, SimplicialComplex)>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Doc {
        One(ComplexJson),
        Many(Vec<NamedComplexJson>),
        Wrapped { complexes: Vec<NamedComplexJson> },
    }
    let named = match serde_json::from_str::<Doc>(text)? {
        Doc::One(c) => return Ok(vec![("complex".to_string(), c.load()?)]),
        Doc::Many(v) | Doc::Wrapped { complexes: v } => v,
    };
    named
        .into_iter()
        .map(|n| Ok((n.name, n.complex.load()?)))
        .collect()
}

/// The Stanley–Reisner ideal: generated by the minimal non-faces.
pub fn sr_ideal(delta: &SimplicialComplex) -> Result<MonomialIdeal> {
    Ok(MonomialIdeal::from_masks(
        delta.nvertices,
        delta.minimal_nonfaces()?,
    ))
}

/// The Stanley–Reisner complex of a squarefree ideal: all vertex sets whose
/// indicator monomial lies outside the ideal.
pub fn sr_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let n = ideal.nvars();
    if n > 64 {
        return Err(Error::TooManyVertices(n));
    }
    let masks = ideal.masks().ok_or(Error::NotSquarefree)?;
    Ok(SimplicialComplex {
        nvertices: n,
        facets: maximal_independent_sets(low_bits(n), &masks),
    })
}

/// One step of the stepwise complex filtration: adds every vertex set that
/// contains at most one minimal non-face of `delta`. This is the complex
/// counterpart of taking pairwise lcms of the Stanley–Reisner generators.
pub fn stepwise_complex_step(delta: &SimplicialComplex) -> Result<SimplicialComplex> {
    let nonfaces = delta.minimal_nonfaces()?;
    let ground = low_bits(delta.nvertices);
    let mut faces = delta.facets.clone();
    // Sets containing exactly the non-face `m`: `m` plus any set avoiding
    // every other non-face after removing the vertices of `m`.
    for (i, &m) in nonfaces.iter().enumerate() {
        let others: Vec<u64> = nonfaces
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &o)| o & !m)
            .collect();
        for s in maximal_independent_sets(ground & !m, &others) {
            faces.push(m | s);
        }
    }
    Ok(SimplicialComplex {
        nvertices: delta.nvertices,
        facets: maximal_sets(faces),
    })
}

/// Boundary-count variant of the step: adds each `F` for which at most one of its
/// `(|F|-1)`-subsets is missing from `delta`. This is a strictly smaller
/// step than [`stepwise_complex_step`] in general; for example it does not
/// add `abe` to the complex with facets `{ab, ac, ad, bc}` on `a..e`.
pub fn literal_boundary_step(delta: &SimplicialComplex) -> Result<SimplicialComplex> {
    if delta.is_void() {
        return Ok(SimplicialComplex::irrelevant(delta.nvertices));
    }
    let ground = low_bits(delta.nvertices);
    let mut faces = delta.facets.clone();
    let mut frontier: HashSet<u64> = HashSet::new();
    for face in delta.faces() {
        for v in vertices_of(ground & !face) {
            frontier.insert(face | 1 << v);
        }
    }
    for f in frontier {
        if delta.contains(f) {
            continue;
        }
        let missing = vertices_of(f)
            .filter(|&w| !delta.contains(f & !(1 << w)))
            .count();
        if missing <= 1 {
            faces.push(f);
        }
    }
    Ok(SimplicialComplex {
        nvertices: delta.nvertices,
        facets: maximal_sets(faces),
    })
}

/// The stepwise filtration of a complex, ending at the first complex with at
/// most one minimal non-face (mirroring the ideal side, which stops at the
/// first principal step).
pub fn stepwise_complex_filtration(delta: &SimplicialComplex) -> Result<Vec<SimplicialComplex>> {
    let mut out = vec![delta.clone()];
    loop {
        let last = out.last().unwrap();
        if last.minimal_nonfaces()?.len() <= 1 {
            return Ok(out);
        }
        let next = stepwise_complex_step(last)?;
        if &next == last {
            return Ok(out);
        }
        out.push(next);
    }
}
