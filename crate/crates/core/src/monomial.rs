//! Monomials, monomial ideals and the operations every other module builds on:
//! lcm, divisibility, minimal generating sets, polarization and squarefree
//! degree counting.
//!
//! Monomials are exponent vectors. Squarefree monomials in at most 64
//! variables can also be handled as `u64` support masks; the algorithms in
//! [`crate::lattice`] and [`crate::filtration`] are generic over [`LcmElem`]
//! and pick the mask form when it applies.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x^a` stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Self { exps }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: vec![0; nvars],
        }
    }

    /// The squarefree monomial with the given (0-based) support.
    pub fn from_support(nvars: usize, support: &[usize]) -> Self {
        let mut exps = vec![0; nvars];
        for &i in support {
            exps[i] = 1;
        }
        Self { exps }
    }

    pub fn from_mask(nvars: usize, mask: u64) -> Self {
        let exps = (0..nvars).map(|i| ((mask >> i) & 1) as u16).collect();
        Self { exps }
    }

    /// Support mask, if the monomial is squarefree and has at most 64 variables.
    pub fn to_mask(&self) -> Option<u64> {
        if self.exps.len() > 64 {
            return None;
        }
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => mask |= 1 << i,
                _ => return None,
            }
        }
        Some(mask)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.exps.len(),
                found: other.exps.len(),
            });
        }
        Ok(())
    }

    /// Least common multiple: entrywise maximum of exponents.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.lcm_unchecked(other))
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Self) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Self { exps }
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Formats the monomial with the given variable names (`x1, x2, ...` when
    /// `names` is `None`). Single-character names are juxtaposed, longer
    /// names are joined with `*`.
    pub fn format_with(&self, names: Option<&[String]>) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let default: Vec<String>;
        let names = match names {
            Some(n) if n.len() == self.exps.len() => n,
            _ => {
                default = (1..=self.exps.len()).map(|i| format!("x{i}")).collect();
                &default
            }
        };
        let short = names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        parts.join(if short { "" } else { "*" })
    }
}

/// Graded lexicographic order: total degree first, then the exponent vectors
/// compared left to right (a larger exponent of `x1` is bigger).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(None))
    }
}

/// Elements supporting lcm and divisibility. Implemented for [`Monomial`]
/// and for `u64` squarefree support masks.
pub trait LcmElem: Clone + Eq + Hash + Send + Sync {
    fn lcm(&self, other: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn degree(&self) -> u64;
}

impl LcmElem for Monomial {
    fn lcm(&self, other: &Self) -> Self {
        self.lcm_unchecked(other)
    }
    fn divides(&self, other: &Self) -> bool {
        self.divides_unchecked(other)
    }
    fn degree(&self) -> u64 {
        Monomial::degree(self)
    }
}

impl LcmElem for u64 {
    fn lcm(&self, other: &Self) -> Self {
        self | other
    }
    fn divides(&self, other: &Self) -> bool {
        self & !other == 0
    }
    fn degree(&self) -> u64 {
        self.count_ones() as u64
    }
}

/// Reduces a generating set to its minimal antichain. Output order is by
/// ascending degree; callers canonicalize further as needed.
pub(crate) fn minimal_antichain<T: LcmElem>(gens: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut gens: Vec<T> = gens.into_iter().collect();
    gens.sort_by_key(|g| g.degree());
    let mut kept: Vec<T> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// The unique minimal generating set of the ideal generated by `gens`, in
/// canonical (descending graded lexicographic) order. All monomials must have
/// the same number of variables.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out = minimal_antichain(gens.iter().cloned());
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A monomial ideal, stored as its minimal generating set.
///
/// An empty generating set encodes the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, reducing to the minimal generators.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Self {
            nvars,
            gens: minimalize(&gens),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            gens: Vec::new(),
        }
    }

    /// Squarefree ideal from generator supports (0-based variable indices).
    pub fn from_supports(nvars: usize, supports: &[&[usize]]) -> Result<Self> {
        let gens = supports
            .iter()
            .map(|s| {
                if let Some(&bad) = s.iter().find(|&&v| v >= nvars) {
                    return Err(Error::Invalid(format!("variable index {bad} out of range")));
                }
                Ok(Monomial::from_support(nvars, s))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, gens)
    }

    pub(crate) fn from_masks(nvars: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        let mut gens: Vec<Monomial> = minimal_antichain(masks)
            .into_iter()
            .map(|m| Monomial::from_mask(nvars, m))
            .collect();
        gens.sort_by(|a, b| b.cmp(a));
        Self { nvars, gens }
    }

    /// Generator supports as masks, if squarefree in at most 64 variables.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.nvars > 64 {
            return None;
        }
        self.gens.iter().map(Monomial::to_mask).collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else {
            Ok(())
        }
    }

    /// Ideal membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        Ok(self.gens.iter().any(|g| g.divides_unchecked(m)))
    }

    pub fn max_degree(&self) -> u64 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// lcm of all minimal generators (the constant monomial for the zero ideal).
    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars), |acc, g| acc.lcm_unchecked(g))
    }

    /// Ideal containment `self ⊆ other`: every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.nvars == other.nvars
            && self
                .gens
                .iter()
                .all(|g| other.gens.iter().any(|h| h.divides_unchecked(g)))
    }

    pub fn format_with(&self, names: Option<&[String]>) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| g.format_with(names)).collect();
        format!("<{}>", gens.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(None))
    }
}

/// Result of polarizing a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `var_map[j]` is the original variable of polarized variable `j`.
    pub var_map: Vec<usize>,
    /// `offsets[i]` is the first polarized variable of original variable `i`.
    pub offsets: Vec<usize>,
}

impl Polarization {
    /// Polarized image of a monomial whose exponents do not exceed the
    /// polarization levels: `x_i^a` becomes `x_(i,1) ... x_(i,a)`.
    pub fn polarize_monomial(&self, m: &Monomial) -> Result<Monomial> {
        let n = self.offsets.len();
        if m.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.nvars(),
            });
        }
        let total = self.var_map.len();
        let mut exps = vec![0u16; total];
        for (i, &e) in m.exponents().iter().enumerate() {
            let end = if i + 1 < n { self.offsets[i + 1] } else { total };
            let levels = end - self.offsets[i];
            if e as usize > levels {
                return Err(Error::Invalid(format!(
                    "exponent {e} of variable {} exceeds polarization depth {levels}",
                    i + 1
                )));
            }
            for slot in &mut exps[self.offsets[i]..self.offsets[i] + e as usize] {
                *slot = 1;
            }
        }
        Ok(Monomial::new(exps))
    }

    /// Collapses each fiber of the variable map: the exponent of `x_i` is the
    /// number of polarized variables over `i` in the support.
    pub fn depolarize_monomial(&self, m: &Monomial) -> Monomial {
        let mut exps = vec![0u16; self.offsets.len()];
        for (j, &e) in m.exponents().iter().enumerate() {
            exps[self.var_map[j]] += e;
        }
        Monomial::new(exps)
    }

    pub fn depolarize(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        let gens = ideal
            .generators()
            .iter()
            .map(|g| self.depolarize_monomial(g))
            .collect();
        MonomialIdeal::new(self.offsets.len(), gens)
    }
}

/// Polarizes a nonzero monomial ideal into a squarefree one. Each variable
/// `x_i` with largest exponent `e_i` is split into `max(e_i, 1)` variables,
/// so squarefree ideals map to themselves under the identity map.
pub fn polarize(ideal: &MonomialIdeal) -> Result<Polarization> {
    ideal.require_nonzero()?;
    let n = ideal.nvars();
    let mut levels = vec![1usize; n];
    for g in ideal.generators() {
        for (i, &e) in g.exponents().iter().enumerate() {
            levels[i] = levels[i].max(e as usize);
        }
    }
    let mut offsets = Vec::with_capacity(n);
    let mut var_map = Vec::new();
    for (i, &l) in levels.iter().enumerate() {
        offsets.push(var_map.len());
        var_map.extend(std::iter::repeat_n(i, l));
    }
    let mut pol = Polarization {
        ideal: MonomialIdeal::zero(var_map.len()),
        var_map,
        offsets,
    };
    let gens = ideal
        .generators()
        .iter()
        .map(|g| pol.polarize_monomial(g))
        .collect::<Result<Vec<_>>>()?;
    pol.ideal = MonomialIdeal::new(pol.var_map.len(), gens)?;
    Ok(pol)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of squarefree monomials of degree `d` in the ideal, i.e. the
/// number of `d`-subsets of the variables containing the support of some
/// generator.
pub fn count_squarefree_multiples(ideal: &MonomialIdeal, d: usize) -> Result<u128> {
    let masks = ideal.masks().ok_or(Error::NotSquarefree)?;
    let n = ideal.nvars();
    if d > n {
        return Err(Error::Invalid(format!("degree {d} exceeds {n} variables")));
    }
    if masks.is_empty() {
        return Ok(0);
    }
    Ok(binomial(n as u64, d as u64) - count_avoiding(&masks, n, d))
}

/// Counts `d`-subsets of `{0..n}` containing no generator mask. Walks the
/// include/exclude tree and short-circuits with a binomial once no generator
/// fits inside the chosen set plus the undecided tail.
fn count_avoiding(masks: &[u64], n: usize, d: usize) -> u128 {
    fn go(masks: &[u64], n: usize, next: usize, chosen: u64, left: usize) -> u128 {
        let remaining = n - next;
        if left > remaining {
            return 0;
        }
        let tail = (if next >= 64 { 0 } else { !0u64 << next }) & low_bits(n);
        let reach = chosen | tail;
        if !masks.iter().any(|&m| m & !reach == 0) {
            return binomial(remaining as u64, left as u64);
        }
        if left == 0 {
            return 1;
        }
        let with = chosen | (1 << next);
        let mut total = 0;
        if !masks.iter().any(|&m| m & !with == 0) {
            total += go(masks, n, next + 1, with, left - 1);
        }
        total + go(masks, n, next + 1, chosen, left)
    }
    if masks.contains(&0) {
        return 0;
    }
    go(masks, n, 0, 0, d)
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Ideal JSON schema: `{"nvars": int, "vars": [string...]?, "generators": [[int...]...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdealJson {
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub generators: Vec<Vec<u16>>,
}

/// An ideal read from JSON, with its variable names and whether the input
/// generators had to be reduced.
#[derive(Clone, Debug)]
pub struct LoadedIdeal {
    pub ideal: MonomialIdeal,
    pub vars: Option<Vec<String>>,
    pub reduced: bool,
}

impl IdealJson {
    pub fn from_ideal(ideal: &MonomialIdeal, vars: Option<Vec<String>>) -> Self {
        Self {
            nvars: ideal.nvars(),
            vars,
            generators: ideal
                .generators()
                .iter()
                .map(|g| g.exponents().to_vec())
                .collect(),
        }
    }

    pub fn load(self) -> Result<LoadedIdeal> {
        if self.nvars == 0 {
            return Err(Error::Invalid("nvars must be positive".into()));
        }
        if let Some(v) = &self.vars {
            if v.len() != self.nvars {
                return Err(Error::Invalid(format!(
                    "{} variable names for {} variables",
                    v.len(),
                    self.nvars
                )));
            }
        }
        let input_len = self.generators.len();
        let gens: Vec<Monomial> = self.generators.into_iter().map(Monomial::new).collect();
        let ideal = MonomialIdeal::new(self.nvars, gens)?;
        Ok(LoadedIdeal {
            reduced: ideal.num_generators() != input_len,
            ideal,
            vars: self.vars,
        })
    }

    pub fn parse(text: &str) -> Result<LoadedIdeal> {
        serde_json::from_str::<IdealJson>(text)?.load()
    }
}
