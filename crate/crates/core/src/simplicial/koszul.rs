use rayon::prelude::*;
use serde::Serialize;

use super::homology::{reduced_or_zero, Field};
use super::{subsets_of, SimplicialComplex};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::lattice::build_lcm_lattice;
use crate::monomial::{polarize, Monomial, MonomialIdeal};

const MAX_KOSZUL_SUPPORT: usize = 30;

fn support_mask(ideal: &MonomialIdeal, mu: &Monomial) -> Result<u64> {
    if mu.nvars() != ideal.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ideal.nvars(),
            found: mu.nvars(),
        });
    }
    if ideal.nvars() > 64 {
        return Err(Error::TooManyVertices(ideal.nvars()));
    }
    let supp = mu.support();
    if supp.len() > MAX_KOSZUL_SUPPORT {
        return Err(Error::GuardExceeded {
            what: "Koszul complex support size",
            actual: supp.len(),
            limit: MAX_KOSZUL_SUPPORT,
        });
    }
    Ok(supp.iter().fold(0, |m, &v| m | 1 << v))
}

/// `x^mu` shifted by the 0/1 vector `tau`, up (`+1`) or down (`-1`).
fn shifted(mu: &Monomial, tau: u64, up: bool) -> Monomial {
    let exps = mu
        .exponents()
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            if tau >> i & 1 == 1 {
                if up {
                    e + 1
                } else {
                    e - 1
                }
            } else {
                e
            }
        })
        .collect();
    Monomial::new(exps)
}

/// Upper Koszul complex `K^μ(I) = {τ ⊆ supp(μ) : x^{μ−τ} ∈ I}`.
pub fn upper_koszul(ideal: &MonomialIdeal, mu: &Monomial) -> Result<SimplicialComplex> {
    let supp = support_mask(ideal, mu)?;
    let n = ideal.nvars();
    let faces: Vec<u64> = match (ideal.masks(), mu.to_mask()) {
        (Some(gens), Some(m)) => subsets_of(supp)
            .filter(|&tau| gens.iter().any(|&g| g & !(m & !tau) == 0))
            .collect(),
        _ => subsets_of(supp)
            .filter(|&tau| ideal.contains(&shifted(mu, tau, false)).unwrap_or(false))
            .collect(),
    };
    SimplicialComplex::new(n, faces)
}

/// Lower Koszul complex `K_μ(I) = {τ ⊆ supp(μ) : x^{μ'+τ} ∉ I}` with
/// `μ' = μ − supp(μ)`.
pub fn lower_koszul(ideal: &MonomialIdeal, mu: &Monomial) -> Result<SimplicialComplex> {
    let supp = support_mask(ideal, mu)?;
    let n = ideal.nvars();
    let base = shifted(mu, supp, false);
    let faces: Vec<u64> = match (ideal.masks(), mu.to_mask()) {
        (Some(gens), Some(_)) => subsets_of(supp)
            .filter(|&tau| !gens.iter().any(|&g| g & !tau == 0))
            .collect(),
        _ => subsets_of(supp)
            .filter(|&tau| !ideal.contains(&shifted(&base, tau, true)).unwrap_or(true))
            .collect(),
    };
    SimplicialComplex::new(n, faces)
}

/// `β_{i,μ}(I) = dim H̃_{i−1}(K^μ(I))`.
pub fn betti_at(ideal: &MonomialIdeal, mu: &Monomial, i: usize, field: Field) -> Result<usize> {
    let k = upper_koszul(ideal, mu)?;
    Ok(reduced_or_zero(&k, field).get(i as isize - 1))
}

/// `β_{i,μ}(I) = dim H̃_{|μ|−i−2}(K_μ(I))`, evaluated on the polarization
/// when the ideal or the multidegree is not squarefree.
pub fn betti_at_lower(
    ideal: &MonomialIdeal,
    mu: &Monomial,
    i: usize,
    field: Field,
) -> Result<usize> {
    if ideal.is_squarefree() && mu.is_squarefree() {
        let k = lower_koszul(ideal, mu)?;
        let d = mu.degree() as isize - i as isize - 2;
        return Ok(reduced_or_zero(&k, field).get(d));
    }
    if ideal.is_zero() {
        return Ok(0);
    }
    let pol = polarize(ideal)?;
    match pol.polarize_monomial(mu) {
        Ok(pmu) => betti_at_lower(&pol.ideal, &pmu, i, field),
        // Exponents beyond every generator's: the multidegree is not in the
        // lcm-lattice, so the Betti number vanishes.
        Err(Error::Invalid(_)) => Ok(0),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub i: usize,
    pub multidegree: Monomial,
    pub value: usize,
}

/// Nonzero multigraded Betti numbers, sorted by homological index and then
/// by multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
    /// The input was not squarefree and the table was computed on its
    /// polarization; multidegrees are reported in the original variables.
    pub polarized: bool,
    pub field: Field,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    i: usize,
    multidegree: &'a [u16],
    beta: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, mu: &Monomial) -> usize {
        self.entries
            .iter()
            .find(|e| e.i == i && &e.multidegree == mu)
            .map_or(0, |e| e.value)
    }

    /// Total Betti numbers `β_i = Σ_μ β_{i,μ}`.
    pub fn totals(&self) -> Vec<usize> {
        let top = self.entries.iter().map(|e| e.i + 1).max().unwrap_or(0);
        let mut out = vec![0; top];
        for e in &self.entries {
            out[e.i] += e.value;
        }
        out
    }

    /// Distinct multidegrees carrying some nonzero Betti number.
    pub fn corners(&self) -> Vec<&Monomial> {
        let mut v: Vec<&Monomial> = self.entries.iter().map(|e| &e.multidegree).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|e| EntryJson {
                i: e.i,
                multidegree: e.multidegree.exponents(),
                beta: e.value,
            })
            .collect();
        serde_json::json!({
            "field": self.field.to_string(),
            "polarized": self.polarized,
            "entries": entries,
        })
    }
}

/// All `(i, μ)` with `μ` in the lcm-lattice and `β_{i,μ}(I) > 0`.
pub fn sensitive_corners(ideal: &MonomialIdeal, field: Field, guards: &Guards) -> Result<BettiTable> {
    ideal.require_nonzero()?;
    let pol = if ideal.is_squarefree() {
        None
    } else {
        Some(polarize(ideal)?)
    };
    let work = pol.as_ref().map_or(ideal, |p| &p.ideal);
    let lattice = build_lcm_lattice(work, guards)?;
    let per_degree: Vec<Vec<BettiEntry>> = lattice
        .elements()
        .par_iter()
        .map(|mu| -> Result<Vec<BettiEntry>> {
            let h = reduced_or_zero(&upper_koszul(work, mu)?, field);
            let md = pol
                .as_ref()
                .map_or_else(|| mu.clone(), |p| p.depolarize_monomial(mu));
            Ok(h.ranks()
                .iter()
                .enumerate()
                .filter(|&(_, &r)| r > 0)
                .map(|(i, &r)| BettiEntry {
                    i,
                    multidegree: md.clone(),
                    value: r,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut entries: Vec<BettiEntry> = per_degree.into_iter().flatten().collect();
    entries.sort_by(|a, b| (a.i, &a.multidegree).cmp(&(b.i, &b.multidegree)));
    Ok(BettiTable {
        entries,
        polarized: pol.is_some(),
        field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_ideal() -> MonomialIdeal {
        MonomialIdeal::from_supports(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap()
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn upper_koszul_three_points() {
        let k = upper_koszul(&triangle_ideal(), &mono(&[1, 1, 1])).unwrap();
        assert_eq!(k.facets(), &[0b001, 0b010, 0b100]);
        assert_eq!(betti_at(&triangle_ideal(), &mono(&[1, 1, 1]), 1, Field::Rationals).unwrap(), 2);
    }

    #[test]
    fn upper_koszul_edge_cases() {
        let i = triangle_ideal();
        assert!(upper_koszul(&i, &mono(&[1, 0, 0])).unwrap().is_void());
        assert!(upper_koszul(&i, &mono(&[1, 1, 0])).unwrap().is_irrelevant());
        assert_eq!(betti_at(&i, &mono(&[1, 1, 0]), 0, Field::Rationals).unwrap(), 1);
        assert!(matches!(
            upper_koszul(&i, &mono(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lower_koszul_examples() {
        let k = lower_koszul(&triangle_ideal(), &mono(&[1, 1, 1])).unwrap();
        assert_eq!(k.facets(), &[0b001, 0b010, 0b100]);
        let x = MonomialIdeal::from_supports(1, &[&[0]]).unwrap();
        assert!(lower_koszul(&x, &mono(&[1])).unwrap().is_irrelevant());
        assert!(lower_koszul(&triangle_ideal(), &mono(&[0, 0, 0]))
            .unwrap()
            .is_irrelevant());
        assert_eq!(
            betti_at_lower(&triangle_ideal(), &mono(&[1, 1, 1]), 1, Field::Rationals).unwrap(),
            2
        );
    }

    #[test]
    fn corners_of_triangle_ideal() {
        let t = sensitive_corners(&triangle_ideal(), Field::Rationals, &Guards::default()).unwrap();
        assert_eq!(t.totals(), vec![3, 2]);
        assert_eq!(t.get(1, &mono(&[1, 1, 1])), 2);
        assert_eq!(t.entries.len(), 4);
        assert!(!t.polarized);
    }

    #[test]
    fn corners_of_principal_and_two_variables() {
        let p = MonomialIdeal::from_supports(3, &[&[0, 2]]).unwrap();
        let t = sensitive_corners(&p, Field::Rationals, &Guards::default()).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(0, &mono(&[1, 0, 1])), 1);
        let xy = MonomialIdeal::from_supports(2, &[&[0], &[1]]).unwrap();
        let t = sensitive_corners(&xy, Field::Prime(2), &Guards::default()).unwrap();
        assert_eq!(t.totals(), vec![2, 1]);
        assert_eq!(t.get(1, &mono(&[1, 1])), 1);
    }

    #[test]
    fn non_squarefree_input_is_polarized() {
        // <x^2, xy, y^2>: resolution 0 <- S^3 <- S^2 with syzygies at x^2y, xy^2.
        let i = MonomialIdeal::new(
            2,
            vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])],
        )
        .unwrap();
        let t = sensitive_corners(&i, Field::Rationals, &Guards::default()).unwrap();
        assert!(t.polarized);
        assert_eq!(t.totals(), vec![3, 2]);
        assert_eq!(t.get(1, &mono(&[2, 1])), 1);
        assert_eq!(t.get(1, &mono(&[1, 2])), 1);
        for e in &t.entries {
            assert_eq!(betti_at(&i, &e.multidegree, e.i, Field::Rationals).unwrap(), e.value);
            assert_eq!(
                betti_at_lower(&i, &e.multidegree, e.i, Field::Rationals).unwrap(),
                e.value
            );
        }
    }
}
