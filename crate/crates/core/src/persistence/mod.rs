//! Persistent homology of the ascending complex sequences induced by
//! descending ideal filtrations, and distances between diagrams.

mod distance;

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filtration::IdealFiltration;
use crate::monomial::{polarize, MonomialIdeal};
use crate::simplicial::{sr_complex, SimplicialComplex};

pub use distance::{
    bottleneck, distance_matrix, matrix_csv, wasserstein, Aggregate, DistanceOptions, Metric,
};

/// A nested ascending sequence of complexes on a common vertex set; step
/// `t` (1-based) is `steps[t - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFiltration {
    steps: Vec<SimplicialComplex>,
}

impl ComplexFiltration {
    pub fn new(steps: Vec<SimplicialComplex>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Invalid("a filtration needs at least one step".into()));
        }
        for (t, w) in steps.windows(2).enumerate() {
            if w[0].nvertices() != w[1].nvertices() || !w[0].is_subcomplex_of(&w[1]) {
                return Err(Error::NotNested(t + 1));
            }
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[SimplicialComplex] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Nonempty faces with the step at which each first appears, ordered
    /// by birth, then size, then vertex list.
    fn births(&self) -> Vec<(u64, usize)> {
        let mut birth: HashMap<u64, usize> = HashMap::new();
        for (t, c) in self.steps.iter().enumerate() {
            for f in c.faces() {
                if f != 0 {
                    birth.entry(f).or_insert(t + 1);
                }
            }
        }
        let mut v: Vec<(u64, usize)> = birth.into_iter().collect();
        v.sort_by_key(|&(f, b)| (b, f.count_ones(), std::cmp::Reverse(f.reverse_bits())));
        v
    }
}

/// Stanley–Reisner complexes of the filtration steps. Non-squarefree
/// filtrations are polarized with the variable map of the first step, which
/// covers every later step since their generators are lcms of the first.
pub fn complexes_of(f: &IdealFiltration) -> Result<ComplexFiltration> {
    let steps = f.steps();
    let squarefree: Vec<MonomialIdeal> = if steps.iter().all(MonomialIdeal::is_squarefree) {
        steps.to_vec()
    } else {
        let pol = polarize(&steps[0])?;
        steps
            .iter()
            .map(|s| {
                let gens = s
                    .generators()
                    .iter()
                    .map(|g| pol.polarize_monomial(g))
                    .collect::<Result<Vec<_>>>()?;
                MonomialIdeal::new(pol.var_map.len(), gens)
            })
            .collect::<Result<_>>()?
    };
    let complexes = squarefree
        .iter()
        .map(sr_complex)
        .collect::<Result<Vec<_>>>()?;
    ComplexFiltration::new(complexes)
}

/// A persistence pair; `death == None` marks an essential class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub birth: usize,
    pub death: Option<usize>,
}

impl Pair {
    pub fn is_essential(&self) -> bool {
        self.death.is_none()
    }
}

/// Birth/death pairs per homology dimension, each list sorted. Classes that
/// are born and die at the same step are not recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistenceDiagram {
    pub dims: BTreeMap<usize, Vec<Pair>>,
}

impl PersistenceDiagram {
    pub fn pairs(&self, dim: usize) -> &[Pair] {
        self.dims.get(&dim).map_or(&[], Vec::as_slice)
    }

    pub fn essential_count(&self, dim: usize) -> usize {
        self.pairs(dim).iter().filter(|p| p.is_essential()).count()
    }

    /// `{"dims": {"0": [[b, d], [b, "inf"], ...], ...}}`.
    pub fn to_json(&self) -> Value {
        let dims: serde_json::Map<String, Value> = self
            .dims
            .iter()
            .map(|(d, ps)| {
                let arr: Vec<Value> = ps
                    .iter()
                    .map(|p| match p.death {
                        Some(x) => json!([p.birth, x]),
                        None => json!([p.birth, "inf"]),
                    })
                    .collect();
                (d.to_string(), Value::Array(arr))
            })
            .collect();
        json!({ "dims": dims })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Invalid("malformed diagram JSON".into());
        let dims = v.get("dims").and_then(Value::as_object).ok_or_else(bad)?;
        let mut out = BTreeMap::new();
        for (k, arr) in dims {
            let d: usize = k.parse().map_err(|_| bad())?;
            let mut pairs = Vec::new();
            for p in arr.as_array().ok_or_else(bad)? {
                let p = p.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                let birth = p[0].as_u64().ok_or_else(bad)? as usize;
                let death = match &p[1] {
                    Value::String(s) if s == "inf" => None,
                    x => Some(x.as_u64().ok_or_else(bad)? as usize),
                };
                if death.is_some_and(|x| x <= birth) || birth == 0 {
                    return Err(Error::Invalid(format!(
                        "pair ({birth}, {death:?}) violates 1 <= birth < death"
                    )));
                }
                pairs.push(Pair { birth, death });
            }
            pairs.sort();
            out.insert(d, pairs);
        }
        Ok(Self { dims: out })
    }
}

/// Standard persistence over GF(2): reduce the boundary matrix of the faces
/// in birth order, pairing each column's lowest row with it. Dimensions
/// above `maxdim` are skipped (all dimensions when `None`).
pub fn persistence_diagram(cf: &ComplexFiltration, maxdim: Option<usize>) -> PersistenceDiagram {
    let births = cf.births();
    let limit = maxdim.map_or(usize::MAX, |m| m + 2);
    let faces: Vec<(u64, usize)> = births
        .into_iter()
        .filter(|&(f, _)| (f.count_ones() as usize) <= limit)
        .collect();
    let index: HashMap<u64, usize> = faces.iter().enumerate().map(|(i, &(f, _))| (f, i)).collect();

    let mut columns: Vec<Vec<usize>> = faces
        .iter()
        .map(|&(f, _)| {
            if f.count_ones() < 2 {
                return Vec::new();
            }
            let mut col: Vec<usize> = (0..64)
                .filter(|v| f >> v & 1 == 1)
                .map(|v| index[&(f & !(1u64 << v))])
                .collect();
            col.sort_unstable();
            col
        })
        .collect();

    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    let mut paired = vec![false; faces.len()];
    let mut dims: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
    for j in 0..faces.len() {
        while let Some(&low) = columns[j].last() {
            let Some(&k) = low_owner.get(&low) else { break };
            let other = std::mem::take(&mut columns[k]);
            columns[j] = symmetric_difference(&columns[j], &other);
            columns[k] = other;
        }
        if let Some(&low) = columns[j].last() {
            low_owner.insert(low, j);
            paired[low] = true;
            paired[j] = true;
            let (f, b) = faces[low];
            let d = faces[j].1;
            if b != d {
                dims.entry(f.count_ones() as usize - 1)
                    .or_default()
                    .push(Pair {
                        birth: b,
                        death: Some(d),
                    });
            }
        }
    }
    for (i, &(f, b)) in faces.iter().enumerate() {
        let dim = f.count_ones() as usize - 1;
        if !paired[i] && maxdim.is_none_or(|m| dim <= m) {
            dims.entry(dim).or_default().push(Pair {
                birth: b,
                death: None,
            });
        }
    }
    for ps in dims.values_mut() {
        ps.sort();
    }
    PersistenceDiagram { dims }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
