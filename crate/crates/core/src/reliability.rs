//! Failure ideals of k-out-of-n and consecutive systems, signatures and
//! k-fold signatures, and the lattice-ratio curve.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filtration::k_fold_ideal;
use crate::guard::Guards;
use crate::lattice::lattice_size;
use crate::monomial::{binomial, count_squarefree_multiples, MonomialIdeal};
use crate::numfmt::decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SystemKind {
    /// Fails once at least `k` of the `n` components have failed.
    #[serde(rename = "kofn")]
    KOfN,
    /// Fails once `k` consecutive components on a line have failed.
    #[serde(rename = "clin")]
    ConsecutiveLinear,
    /// Fails once `k` consecutive components on a circle have failed.
    #[serde(rename = "ccirc")]
    ConsecutiveCircular,
}

impl SystemKind {
    pub const ALL: [SystemKind; 3] = [
        SystemKind::KOfN,
        SystemKind::ConsecutiveLinear,
        SystemKind::ConsecutiveCircular,
    ];
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::KOfN => "kofn",
            SystemKind::ConsecutiveLinear => "clin",
            SystemKind::ConsecutiveCircular => "ccirc",
        })
    }
}

impl FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kofn" | "k-out-of-n" => Ok(SystemKind::KOfN),
            "clin" | "consecutive-linear" => Ok(SystemKind::ConsecutiveLinear),
            "ccirc" | "consecutive-circular" => Ok(SystemKind::ConsecutiveCircular),
            other => Err(Error::Invalid(format!("unknown system kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SystemSpec {
    pub kind: SystemKind,
    pub n: usize,
    pub k: usize,
}

impl SystemSpec {
    pub fn new(kind: SystemKind, n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        if n > 64 {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Self { kind, n, k })
    }
}

/// The ideal whose minimal generators are the minimal failure sets.
pub fn failure_ideal(spec: &SystemSpec) -> Result<MonomialIdeal> {
    let SystemSpec { kind, n, k } = *spec;
    let window = |start: usize| (0..k).fold(0u64, |m, i| m | 1 << ((start + i) % n));
    let masks: Vec<u64> = match kind {
        SystemKind::KOfN => {
            let count = binomial(n as u64, k as u64);
            if count > 1 << 24 {
                return Err(Error::GuardExceeded {
                    what: "k-out-of-n generator count",
                    actual: usize::try_from(count).unwrap_or(usize::MAX),
                    limit: 1 << 24,
                });
            }
            let mut out = Vec::with_capacity(count as usize);
            let mut pick: Vec<usize> = (0..k).collect();
            loop {
                out.push(pick.iter().fold(0u64, |m, &i| m | 1 << i));
                let Some(i) = (0..k).rev().find(|&i| pick[i] < n - k + i) else {
                    break;
                };
                pick[i] += 1;
                for t in i + 1..k {
                    pick[t] = pick[t - 1] + 1;
                }
            }
            out
        }
        SystemKind::ConsecutiveLinear => (0..=n - k).map(window).collect(),
        SystemKind::ConsecutiveCircular => (0..n).map(window).collect(),
    };
    Ok(MonomialIdeal::from_masks(n, masks))
}

/// Exact probability vector `s_1..s_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureVector {
    pub values: Vec<BigRational>,
}

#[derive(Serialize)]
struct SignatureJson {
    s: Vec<String>,
}

fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl SignatureVector {
    /// `Σ s_i`; equals 1 exactly when the all-failed state is a failure.
    pub fn total(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Partial sums `Σ_{j ≤ i} s_j`.
    pub fn cumulative(&self) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        self.values
            .iter()
            .map(|v| {
                acc += v;
                acc.clone()
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ratio_string).collect()
    }

    /// `{"s": ["p/q", ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SignatureJson {
            s: self.to_strings(),
        })
        .expect("plain strings")
    }
}

/// `s_i = f_i / C(n, i) − f_{i−1} / C(n, i−1)` where `f_d` counts the
/// failed `d`-subsets (squarefree degree-`d` multiples of a generator) and
/// `f_0 = 0`.
pub fn signature(ideal: &MonomialIdeal, n: usize) -> Result<SignatureVector> {
    if ideal.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ideal.nvars(),
        });
    }
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut prev = BigRational::zero();
    let mut values = Vec::with_capacity(n);
    for d in 1..=n {
        let f = count_squarefree_multiples(ideal, d)?;
        let cur = BigRational::new(
            BigInt::from(f),
            BigInt::from(binomial(n as u64, d as u64)),
        );
        values.push(&cur - &prev);
        prev = cur;
    }
    Ok(SignatureVector { values })
}

/// The signature of the `fold`-fold lcm-ideal: `s_i` is the probability
/// that the `fold`-th distinct minimal failure set is completed exactly at
/// the `i`-th component failure. Not conditioned on that ever happening.
pub fn kfold_signature(
    ideal: &MonomialIdeal,
    n: usize,
    fold: usize,
    guards: &Guards,
) -> Result<SignatureVector> {
    let ik = k_fold_ideal(ideal, fold, guards)?;
    signature(&ik, n)
}

/// One point of the lattice-ratio curve. Lattice fields are `None` beyond
/// the lattice guard.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub kind: SystemKind,
    pub k: usize,
    pub generators: usize,
    pub lattice_size: Option<usize>,
    pub ratio: Option<f64>,
}

/// For `k = 2..n−1` and each kind: generator count, lcm-lattice size and
/// `lattice_size / 2^r`, ordered by `(kind, k)`.
pub fn lattice_ratio_curve(
    n: usize,
    kinds: &[SystemKind],
    guards: &Guards,
) -> Result<Vec<CurvePoint>> {
    let mut jobs: Vec<(SystemKind, usize)> = Vec::new();
    for &kind in kinds {
        for k in 2..n {
            jobs.push((kind, k));
        }
    }
    jobs.sort();
    jobs.dedup();
    jobs.par_iter()
        .map(|&(kind, k)| {
            let spec = SystemSpec::new(kind, n, k)?;
            let r = match kind {
                SystemKind::KOfN => usize::try_from(binomial(n as u64, k as u64)).unwrap_or(usize::MAX),
                _ => failure_ideal(&spec)?.num_generators(),
            };
            let size = if r > guards.lattice_atoms {
                None
            } else {
                Some(lattice_size(&failure_ideal(&spec)?, guards)?)
            };
            Ok(CurvePoint {
                kind,
                k,
                generators: r,
                lattice_size: size,
                ratio: size.map(|s| s as f64 / 2f64.powi(r as i32)),
            })
        })
        .collect()
}

/// Curve CSV with columns `kind, k, generators, lattice_size, ratio`; null
/// entries are empty fields.
pub fn write_curve_csv<W: Write>(
    points: &[CurvePoint],
    meta: &[(&str, String)],
    mut out: W,
) -> Result<()> {
    for (k, v) in meta {
        writeln!(out, "# {k}={v}").map_err(csv::Error::from)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", "k", "generators", "lattice_size", "ratio"])?;
    for p in points {
        w.write_record([
            p.kind.to_string(),
            p.k.to_string(),
            p.generators.to_string(),
            p.lattice_size.map_or(String::new(), |s| s.to_string()),
            p.ratio.map_or(String::new(), decimal),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
