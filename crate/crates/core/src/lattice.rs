//! lcm-lattices and poset density.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::monomial::{LcmElem, Monomial, MonomialIdeal};

/// The set of lcms of all subsets of the minimal generators, including
/// lcm(∅) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmLattice {
    nvars: usize,
    atoms: usize,
    /// Ascending graded lexicographic order; the bottom element 1 comes first.
    elements: Vec<Monomial>,
}

impl LcmLattice {
    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn top(&self) -> &Monomial {
        self.elements.last().expect("lattice contains the bottom element")
    }

    pub fn density(&self) -> PosetDensity {
        PosetDensity {
            lattice_size: self.size(),
            atoms: self.atoms,
        }
    }

    pub fn to_json(&self, include_elements: bool) -> LatticeJson {
        LatticeJson {
            atoms: self.atoms,
            size: self.size(),
            elements: include_elements
                .then(|| self.elements.iter().map(|m| m.exponents().to_vec()).collect()),
        }
    }
}

/// Lattice export schema.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LatticeJson {
    pub atoms: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<u16>>>,
}

/// Lattice size over the size of the Taylor lattice, `|L_I| / 2^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetDensity {
    pub lattice_size: usize,
    pub atoms: usize,
}

impl PosetDensity {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.lattice_size),
            BigInt::one() << self.atoms,
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.lattice_size as f64 / 2f64.powi(self.atoms as i32)
    }

    pub fn is_taylor(&self) -> bool {
        self.atoms < usize::BITS as usize && self.lattice_size == 1usize << self.atoms
    }
}

/// Closes `{1}` under joins with each atom in turn. Every element after
/// step `t` is the lcm of a subset of the first `t` atoms, so the cost is
/// the output size times the number of atoms.
pub(crate) fn lcm_closure<T: LcmElem>(bottom: T, atoms: &[T]) -> HashSet<T> {
    let mut elements: HashSet<T> = HashSet::new();
    elements.insert(bottom);
    for atom in atoms {
        let joined: Vec<T> = elements.iter().map(|e| e.lcm(atom)).collect();
        elements.extend(joined);
    }
    elements
}

fn check_guard(ideal: &MonomialIdeal, guards: &Guards) -> Result<()> {
    ideal.require_nonzero()?;
    let r = ideal.num_generators();
    if r > guards.lattice_atoms {
        return Err(Error::GuardExceeded {
            what: "lcm-lattice atom count",
            actual: r,
            limit: guards.lattice_atoms,
        });
    }
    Ok(())
}

pub fn build_lcm_lattice(ideal: &MonomialIdeal, guards: &Guards) -> Result<LcmLattice> {
    check_guard(ideal, guards)?;
    let n = ideal.nvars();
    let mut elements: Vec<Monomial> = match ideal.masks() {
        Some(masks) => lcm_closure(0u64, &masks)
            .into_iter()
            .map(|m| Monomial::from_mask(n, m))
            .collect(),
        None => lcm_closure(Monomial::one(n), ideal.generators())
            .into_iter()
            .collect(),
    };
    elements.sort();
    Ok(LcmLattice {
        nvars: n,
        atoms: ideal.num_generators(),
        elements,
    })
}

/// Size of the lcm-lattice without materializing it as monomials.
pub fn lattice_size(ideal: &MonomialIdeal, guards: &Guards) -> Result<usize> {
    check_guard(ideal, guards)?;
    Ok(match ideal.masks() {
        Some(masks) => lcm_closure(0u64, &masks).len(),
        None => lcm_closure(Monomial::one(ideal.nvars()), ideal.generators()).len(),
    })
}

pub fn poset_density(ideal: &MonomialIdeal, guards: &Guards) -> Result<PosetDensity> {
    Ok(PosetDensity {
        lattice_size: lattice_size(ideal, guards)?,
        atoms: ideal.num_generators(),
    })
}

pub fn is_taylor(ideal: &MonomialIdeal, guards: &Guards) -> Result<bool> {
    Ok(poset_density(ideal, guards)?.is_taylor())
}

impl std::fmt::Display for PosetDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.ratio())
    }
}
