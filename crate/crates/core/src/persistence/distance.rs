use std::fmt;
use std::str::FromStr;

use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;
use rayon::prelude::*;

use super::{complexes_of, persistence_diagram, Pair, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::filtration::{filtration, FiltrationKind};
use crate::guard::Guards;
use crate::numfmt::decimal;
use crate::simplicial::{sr_ideal, SimplicialComplex};

/// How per-dimension distances combine into one number.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Aggregate {
    #[default]
    Sum,
    Max,
}

impl FromStr for Aggregate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Aggregate::Sum),
            "max" => Ok(Aggregate::Max),
            other => Err(Error::Invalid(format!("unknown aggregate {other:?}"))),
        }
    }
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregate::Sum => "sum",
            Aggregate::Max => "max",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Bottleneck,
    Wasserstein,
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bottleneck" => Ok(Metric::Bottleneck),
            "wasserstein" => Ok(Metric::Wasserstein),
            other => Err(Error::Invalid(format!("unknown metric {other:?}"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Bottleneck => "bottleneck",
            Metric::Wasserstein => "wasserstein",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DistanceOptions {
    pub aggregate: Aggregate,
    /// Wasserstein order, at least 1.
    pub q: u32,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            aggregate: Aggregate::Sum,
            q: 1,
        }
    }
}

/// Diagram points split into finite pairs and essential births.
fn split(pairs: &[Pair]) -> (Vec<(i64, i64)>, Vec<i64>) {
    let mut finite = Vec::new();
    let mut essential = Vec::new();
    for p in pairs {
        match p.death {
            Some(d) => finite.push((p.birth as i64, d as i64)),
            None => essential.push(p.birth as i64),
        }
    }
    essential.sort_unstable();
    (finite, essential)
}

/// Augmented cost matrix in half-step units: real points of either side
/// may be matched to each other at twice their L∞ distance, or to the
/// diagonal at their persistence `death − birth`.
fn half_unit_costs(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let size = a.len() + b.len();
    let mut rows = vec![vec![0i64; size]; size];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = match (a.get(i), b.get(j)) {
                (Some(p), Some(q)) => 2 * (p.0 - q.0).abs().max((p.1 - q.1).abs()),
                (Some(p), None) => p.1 - p.0,
                (None, Some(q)) => q.1 - q.0,
                (None, None) => 0,
            };
        }
    }
    rows
}

fn min_assignment(costs: &[Vec<i128>]) -> i128 {
    if costs.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(costs.to_vec()).expect("square cost matrix");
    kuhn_munkres_min(&m).0
}

/// Smallest threshold (in half units) admitting a perfect matching.
fn bottleneck_half_units(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let costs = half_unit_costs(a, b);
    let mut candidates: Vec<i64> = costs.iter().flatten().copied().collect();
    candidates.push(0);
    candidates.sort_unstable();
    candidates.dedup();
    let feasible = |t: i64| {
        let blocked: Vec<Vec<i128>> = costs
            .iter()
            .map(|r| r.iter().map(|&c| i128::from(c > t)).collect())
            .collect();
        min_assignment(&blocked) == 0
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn aggregate(values: impl Iterator<Item = f64>, how: Aggregate) -> f64 {
    match how {
        Aggregate::Sum => values.sum(),
        Aggregate::Max => values.fold(0.0, f64::max),
    }
}

fn all_dims(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Vec<usize> {
    let mut dims: Vec<usize> = d1.dims.keys().chain(d2.dims.keys()).copied().collect();
    dims.sort_unstable();
    dims.dedup();
    dims
}

/// Bottleneck distance with the L∞ ground cost and diagonal cost
/// `(death − birth) / 2`. Essential classes are matched among themselves in
/// birth order at cost `|Δbirth|`; if their counts differ in some dimension
/// the distance is infinite.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram, opts: &DistanceOptions) -> f64 {
    let per_dim = all_dims(d1, d2).into_iter().map(|dim| {
        let (a, ea) = split(d1.pairs(dim));
        let (b, eb) = split(d2.pairs(dim));
        if ea.len() != eb.len() {
            return f64::INFINITY;
        }
        let ess = ea.iter().zip(&eb).map(|(x, y)| 2 * (x - y).abs()).max().unwrap_or(0);
        bottleneck_half_units(&a, &b).max(ess) as f64 / 2.0
    });
    aggregate(per_dim, opts.aggregate)
}

/// q-Wasserstein distance with the same ground cost, diagonal projections
/// and essential-class matching as [`bottleneck`].
pub fn wasserstein(d1: &PersistenceDiagram, d2: &PersistenceDiagram, opts: &DistanceOptions) -> f64 {
    let q = opts.q.max(1);
    let per_dim = all_dims(d1, d2).into_iter().map(|dim| {
        let (a, ea) = split(d1.pairs(dim));
        let (b, eb) = split(d2.pairs(dim));
        if ea.len() != eb.len() {
            return f64::INFINITY;
        }
        let powered: Vec<Vec<i128>> = half_unit_costs(&a, &b)
            .iter()
            .map(|r| r.iter().map(|&c| i128::from(c).pow(q)).collect())
            .collect();
        let ess: i128 = ea
            .iter()
            .zip(&eb)
            .map(|(x, y)| i128::from(2 * (x - y).abs()).pow(q))
            .sum();
        let total = (min_assignment(&powered) + ess) as f64;
        total.powf(1.0 / f64::from(q)) / 2.0
    });
    aggregate(per_dim, opts.aggregate)
}

/// Diagram of the Stanley–Reisner filtration of each complex.
pub fn diagrams_for(
    complexes: &[SimplicialComplex],
    kind: FiltrationKind,
    guards: &Guards,
) -> Result<Vec<PersistenceDiagram>> {
    complexes
        .par_iter()
        .map(|c| {
            let f = filtration(&sr_ideal(c)?, kind, guards)?;
            Ok(persistence_diagram(&complexes_of(&f)?, None))
        })
        .collect()
}

/// Pairwise distances between the diagrams of the given complexes.
pub fn distance_matrix(
    complexes: &[SimplicialComplex],
    kind: FiltrationKind,
    metric: Metric,
    opts: &DistanceOptions,
    guards: &Guards,
) -> Result<Vec<Vec<f64>>> {
    let diagrams = diagrams_for(complexes, kind, guards)?;
    let n = diagrams.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = match metric {
                Metric::Bottleneck => bottleneck(&diagrams[i], &diagrams[j], opts),
                Metric::Wasserstein => wasserstein(&diagrams[i], &diagrams[j], opts),
            };
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    Ok(m)
}

/// Matrix as CSV with labels on the header row and first column.
pub fn matrix_csv(labels: &[String], m: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push(',');
    out.push_str(&labels.join(","));
    out.push('\n');
    for (label, row) in labels.iter().zip(m) {
        out.push_str(label);
        for &x in row {
            out.push(',');
            out.push_str(&decimal(x));
        }
        out.push('\n');
    }
    out
}
