//! The usual lcm-filtration `I = I_1 ⊇ I_2 ⊇ ... ⊇ I_r` and the stepwise
//! lcm-filtration, where each step is generated by the pairwise lcms of the
//! previous step's minimal generators.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::monomial::{binomial, minimal_antichain, IdealJson, LcmElem, Monomial, MonomialIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiltrationKind {
    Usual,
    Stepwise,
}

impl fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiltrationKind::Usual => "usual",
            FiltrationKind::Stepwise => "stepwise",
        })
    }
}

impl std::str::FromStr for FiltrationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "usual" | "lcm" => Ok(Self::Usual),
            "stepwise" => Ok(Self::Stepwise),
            other => Err(Error::Invalid(format!("unknown filtration kind {other:?}"))),
        }
    }
}

/// A descending chain of monomial ideals; `steps[0]` is the input ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFiltration {
    kind: FiltrationKind,
    nvars: usize,
    steps: Vec<MonomialIdeal>,
}

impl IdealFiltration {
    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn steps(&self) -> &[MonomialIdeal] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Step `k`, 1-based.
    pub fn step(&self, k: usize) -> Option<&MonomialIdeal> {
        k.checked_sub(1).and_then(|i| self.steps.get(i))
    }

    /// Nominal number of lcm evaluations needed for each step: `C(r, k)` for
    /// the usual filtration and `C(|G(previous)|, 2)` for the stepwise one.
    /// Step 1 costs nothing.
    pub fn lcm_evaluations(&self) -> Vec<u128> {
        let r = self.steps[0].num_generators() as u64;
        (0..self.steps.len())
            .map(|i| match (i, self.kind) {
                (0, _) => 0,
                (_, FiltrationKind::Usual) => binomial(r, i as u64 + 1),
                (_, FiltrationKind::Stepwise) => {
                    binomial(self.steps[i - 1].num_generators() as u64, 2)
                }
            })
            .collect()
    }

    pub fn to_json(&self, vars: Option<Vec<String>>) -> FiltrationJson {
        FiltrationJson {
            kind: self.kind,
            steps: self
                .steps
                .iter()
                .map(|s| IdealJson::from_ideal(s, vars.clone()))
                .collect(),
        }
    }

    /// Rows of the CSV summary: step, generators, max degree, lcm evaluations.
    pub fn summary_rows(&self) -> Vec<StepSummary> {
        self.steps
            .iter()
            .zip(self.lcm_evaluations())
            .enumerate()
            .map(|(i, (s, evals))| StepSummary {
                step: i + 1,
                generators: s.num_generators(),
                max_degree: s.max_degree(),
                lcm_evaluations: evals,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FiltrationJson {
    pub kind: FiltrationKind,
    pub steps: Vec<IdealJson>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepSummary {
    pub step: usize,
    pub generators: usize,
    pub max_degree: u64,
    pub lcm_evaluations: u128,
}

/// Streams the k-subsets of `atoms` and returns the minimal antichain of
/// their lcms. A prefix whose running lcm is already a multiple of an
/// emitted candidate is skipped together with all of its extensions, since
/// every completion lies in the ideal generated so far.
fn k_fold_generators<T: LcmElem>(atoms: &[T], k: usize, one: T) -> Vec<T> {
    struct Walk<'a, T> {
        atoms: &'a [T],
        k: usize,
        emitted: Vec<T>,
        seen: HashSet<T>,
    }
    impl<T: LcmElem> Walk<'_, T> {
        fn go(&mut self, start: usize, depth: usize, running: &T) {
            if depth == self.k {
                if self.seen.insert(running.clone()) {
                    self.emitted.push(running.clone());
                }
                return;
            }
            let need = self.k - depth;
            for i in start..=self.atoms.len() - need {
                let next = running.lcm(&self.atoms[i]);
                if depth + 1 < self.k && self.emitted.iter().any(|e| e.divides(&next)) {
                    continue;
                }
                self.go(i + 1, depth + 1, &next);
            }
        }
    }
    if k == 0 || k > atoms.len() {
        return Vec::new();
    }
    let mut walk = Walk {
        atoms,
        k,
        emitted: Vec::new(),
        seen: HashSet::new(),
    };
    walk.go(0, 0, &one);
    minimal_antichain(walk.emitted)
}

fn sort_canonical(nvars: usize, gens: Vec<Monomial>) -> MonomialIdeal {
    MonomialIdeal::new(nvars, gens).expect("generators share the ambient dimension")
}

fn k_fold_unchecked(ideal: &MonomialIdeal, k: usize) -> MonomialIdeal {
    let n = ideal.nvars();
    match ideal.masks() {
        Some(masks) => MonomialIdeal::from_masks(n, k_fold_generators(&masks, k, 0u64)),
        None => sort_canonical(
            n,
            k_fold_generators(ideal.generators(), k, Monomial::one(n)),
        ),
    }
}

/// The k-fold lcm-ideal `I_k`, generated by the lcms of all k-subsets of the
/// minimal generators. Returns the zero ideal when `k` exceeds the number
/// of generators.
pub fn k_fold_ideal(ideal: &MonomialIdeal, k: usize, guards: &Guards) -> Result<MonomialIdeal> {
    ideal.require_nonzero()?;
    if k == 0 {
        return Err(Error::Invalid("k-fold index starts at 1".into()));
    }
    let r = ideal.num_generators();
    let subsets = binomial(r as u64, k as u64);
    if subsets > guards.kfold_subsets {
        return Err(Error::GuardExceeded {
            what: "k-subset count",
            actual: usize::try_from(subsets).unwrap_or(usize::MAX),
            limit: usize::try_from(guards.kfold_subsets).unwrap_or(usize::MAX),
        });
    }
    if k == 1 {
        return Ok(ideal.clone());
    }
    Ok(k_fold_unchecked(ideal, k))
}

/// The usual lcm-filtration: steps `I_1, ..., I_r`.
pub fn lcm_filtration(ideal: &MonomialIdeal, guards: &Guards) -> Result<IdealFiltration> {
    ideal.require_nonzero()?;
    let r = ideal.num_generators();
    if r > guards.filtration_generators {
        return Err(Error::GuardExceeded {
            what: "generator count for the usual lcm-filtration",
            actual: r,
            limit: guards.filtration_generators,
        });
    }
    let steps: Vec<MonomialIdeal> = (1..=r)
        .into_par_iter()
        .map(|k| {
            if k == 1 {
                ideal.clone()
            } else {
                k_fold_unchecked(ideal, k)
            }
        })
        .collect();
    Ok(IdealFiltration {
        kind: FiltrationKind::Usual,
        nvars: ideal.nvars(),
        steps,
    })
}

fn pairwise_step<T: LcmElem>(gens: &[T]) -> Vec<T> {
    let mut lcms = HashSet::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            lcms.insert(a.lcm(b));
        }
    }
    minimal_antichain(lcms)
}

/// One stepwise step: the ideal generated by the pairwise lcms of distinct
/// minimal generators. Requires at least two generators.
pub fn stepwise_next(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.num_generators() < 2 {
        return Err(Error::Invalid(
            "a stepwise step needs at least two generators".into(),
        ));
    }
    let n = ideal.nvars();
    Ok(match ideal.masks() {
        Some(masks) => MonomialIdeal::from_masks(n, pairwise_step(&masks)),
        None => sort_canonical(n, pairwise_step(ideal.generators())),
    })
}

/// The stepwise lcm-filtration, stopping at the first principal step.
pub fn stepwise_filtration(ideal: &MonomialIdeal) -> Result<IdealFiltration> {
    ideal.require_nonzero()?;
    let mut steps = vec![ideal.clone()];
    while steps.last().is_some_and(|s| s.num_generators() >= 2) {
        let next = stepwise_next(steps.last().unwrap())?;
        steps.push(next);
    }
    Ok(IdealFiltration {
        kind: FiltrationKind::Stepwise,
        nvars: ideal.nvars(),
        steps,
    })
}

pub fn filtration(
    ideal: &MonomialIdeal,
    kind: FiltrationKind,
    guards: &Guards,
) -> Result<IdealFiltration> {
    match kind {
        FiltrationKind::Usual => lcm_filtration(ideal, guards),
        FiltrationKind::Stepwise => stepwise_filtration(ideal),
    }
}

/// Step-by-step comparison of the two filtrations of one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub usual_generators: Vec<usize>,
    pub stepwise_generators: Vec<usize>,
    /// Pairs `(j, k)`, 1-based, with stepwise step `j` equal to usual step `k`.
    pub equal_steps: Vec<(usize, usize)>,
    /// Usual steps equal to no stepwise step.
    pub unmatched_usual: Vec<usize>,
    /// Stepwise steps equal to no usual step.
    pub unmatched_stepwise: Vec<usize>,
    pub usual_lcm_evaluations: u128,
    pub stepwise_lcm_evaluations: u128,
}

impl ComparisonReport {
    pub fn from_filtrations(usual: &IdealFiltration, stepwise: &IdealFiltration) -> Self {
        let mut equal_steps = Vec::new();
        for (j, s) in stepwise.steps().iter().enumerate() {
            for (k, u) in usual.steps().iter().enumerate() {
                if s == u {
                    equal_steps.push((j + 1, k + 1));
                }
            }
        }
        let unmatched_usual = (1..=usual.len())
            .filter(|k| !equal_steps.iter().any(|&(_, kk)| kk == *k))
            .collect();
        let unmatched_stepwise = (1..=stepwise.len())
            .filter(|j| !equal_steps.iter().any(|&(jj, _)| jj == *j))
            .collect();
        Self {
            usual_generators: usual.steps().iter().map(|s| s.num_generators()).collect(),
            stepwise_generators: stepwise
                .steps()
                .iter()
                .map(|s| s.num_generators())
                .collect(),
            equal_steps,
            unmatched_usual,
            unmatched_stepwise,
            usual_lcm_evaluations: usual.lcm_evaluations().iter().sum(),
            stepwise_lcm_evaluations: stepwise.lcm_evaluations().iter().sum(),
        }
    }

    /// Usual steps matched by stepwise step `j`.
    pub fn matches_of(&self, j: usize) -> Vec<usize> {
        self.equal_steps
            .iter()
            .filter(|&&(jj, _)| jj == j)
            .map(|&(_, k)| k)
            .collect()
    }
}

pub fn compare_filtrations(ideal: &MonomialIdeal, guards: &Guards) -> Result<ComparisonReport> {
    let usual = lcm_filtration(ideal, guards)?;
    let stepwise = stepwise_filtration(ideal)?;
    Ok(ComparisonReport::from_filtrations(&usual, &stepwise))
}

/// Distinct ideals among the steps, in order of first appearance.
pub fn distinct_steps(f: &IdealFiltration) -> Vec<&MonomialIdeal> {
    let mut out: Vec<&MonomialIdeal> = Vec::new();
    for s in f.steps() {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}
