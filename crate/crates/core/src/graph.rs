//! Graphs, j-cuts, cut ideals and the Erdős–Rényi edge-deletion experiment.

use std::fmt;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::k_fold_ideal;
use crate::guard::Guards;
use crate::lattice::poset_density;
use crate::monomial::{binomial, low_bits, Monomial, MonomialIdeal};
use crate::numfmt::decimal;
use crate::simplicial::SimplicialComplex;

/// A simple undirected graph on vertices `0..n`. Edges are kept in
/// lexicographic order of `(min, max)`, and edge `k` is ideal variable `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    nvertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(nvertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if nvertices > 64 {
            return Err(Error::TooManyVertices(nvertices));
        }
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {}", u + 1)));
            }
            if u >= nvertices || v >= nvertices {
                return Err(Error::Invalid(format!(
                    "edge {}-{} outside 1..{nvertices}",
                    u + 1,
                    v + 1
                )));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        let before = es.len();
        es.dedup();
        if es.len() != before {
            return Err(Error::Invalid("repeated edge".into()));
        }
        if es.len() > 64 {
            return Err(Error::TooManyVertices(es.len()));
        }
        Ok(Self {
            nvertices,
            edges: es,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph on at most 11 vertices")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn edgeless(n: usize) -> Self {
        Self {
            nvertices: n,
            edges: Vec::new(),
        }
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// `|E| / C(n, 2)`.
    pub fn density(&self) -> f64 {
        let pairs = binomial(self.nvertices as u64, 2);
        if pairs == 0 {
            0.0
        } else {
            self.edges.len() as f64 / pairs as f64
        }
    }

    /// Edge variable names `e12, e13, ...` (with `_` between endpoints once
    /// vertex labels reach two digits).
    pub fn edge_names(&self) -> Vec<String> {
        let sep = if self.nvertices >= 10 { "_" } else { "" };
        self.edges
            .iter()
            .map(|&(u, v)| format!("e{}{sep}{}", u + 1, v + 1))
            .collect()
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.nvertices];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    /// Whether the vertex set `mask` induces a connected subgraph.
    pub fn induces_connected(&self, mask: u64) -> bool {
        connected_in(&self.adjacency(), mask)
    }

    pub fn is_forest(&self) -> bool {
        is_acyclic(self.nvertices, self.edges.iter().copied())
    }

    pub fn without_edge(&self, index: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self {
            nvertices: self.nvertices,
            edges,
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            nvertices: self.nvertices,
            edges: self.edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        }
    }
}

/// `{"nvertices": int, "edges": [[u, v]...]}` with 1-based vertices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub nvertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn load(&self) -> Result<Graph> {
        let mut es = Vec::with_capacity(self.edges.len());
        for &[u, v] in &self.edges {
            if u == 0 || v == 0 {
                return Err(Error::Invalid("vertices are numbered from 1".into()));
            }
            es.push((u - 1, v - 1));
        }
        Graph::new(self.nvertices, es)
    }
}

fn connected_in(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut seen = mask & mask.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

fn is_acyclic(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// A set partition of `0..n`, blocks ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    nvertices: usize,
    blocks: Vec<u64>,
}

impl Partition {
    pub fn new(nvertices: usize, blocks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut bs: Vec<u64> = blocks.into_iter().collect();
        let mut seen = 0u64;
        for &b in &bs {
            if b == 0 || b & seen != 0 {
                return Err(Error::Invalid("blocks must be nonempty and disjoint".into()));
            }
            seen |= b;
        }
        if nvertices > 64 || seen != low_bits(nvertices) {
            return Err(Error::Invalid("blocks must cover the vertex set".into()));
        }
        bs.sort_by_key(|b| b.trailing_zeros());
        Ok(Self {
            nvertices,
            blocks: bs,
        })
    }

    /// Partition from 0-based block lists.
    pub fn from_blocks(nvertices: usize, blocks: &[&[usize]]) -> Result<Self> {
        Self::new(
            nvertices,
            blocks.iter().map(|b| b.iter().fold(0u64, |m, &v| m | 1 << v)),
        )
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.nvertices];
        for (i, &b) in self.blocks.iter().enumerate() {
            for (v, slot) in out.iter_mut().enumerate() {
                if b >> v & 1 == 1 {
                    *slot = i;
                }
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.nvertices >= 10 { "," } else { "" };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                (0..self.nvertices)
                    .filter(|v| b >> v & 1 == 1)
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// Same number of blocks, and every block of `delta` is comparable under
/// inclusion with some block of `tau`.
pub fn partitions_compatible(delta: &Partition, tau: &Partition) -> bool {
    delta.nvertices == tau.nvertices
        && delta.len() == tau.len()
        && delta
            .blocks
            .iter()
            .all(|&d| tau.blocks.iter().any(|&t| d & !t == 0 || t & !d == 0))
}

/// `delta` has more blocks than `tau`, each inside a block of `tau`.
pub fn partition_refines(delta: &Partition, tau: &Partition) -> bool {
    delta.nvertices == tau.nvertices
        && tau.len() < delta.len()
        && delta
            .blocks
            .iter()
            .all(|&d| tau.blocks.iter().any(|&t| d & !t == 0))
}

/// Union of compatible partitions: the coarsest common refinement, whose
/// blocks are the nonempty intersections of a block of each.
pub fn partition_union(delta: &Partition, tau: &Partition) -> Result<Partition> {
    if !partitions_compatible(delta, tau) {
        return Err(Error::IncompatiblePartitions);
    }
    let blocks = delta
        .blocks
        .iter()
        .flat_map(|&d| tau.blocks.iter().map(move |&t| d & t))
        .filter(|&b| b != 0);
    Partition::new(delta.nvertices, blocks)
}

/// All partitions of `0..n` into exactly `j` blocks, as block-index vectors
/// in restricted-growth order.
fn set_partitions(n: usize, j: usize) -> Vec<Vec<u64>> {
    fn go(v: usize, n: usize, j: usize, blocks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if v == n {
            if blocks.len() == j {
                out.push(blocks.clone());
            }
            return;
        }
        if j - blocks.len() > n - v {
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << v;
            go(v + 1, n, j, blocks, out);
            blocks[b] &= !(1 << v);
        }
        if blocks.len() < j {
            blocks.push(1 << v);
            go(v + 1, n, j, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    if j >= 1 && j <= n {
        go(0, n, j, &mut Vec::with_capacity(j), &mut out);
    }
    out
}

/// All `j`-cuts: `j`-partitions whose blocks each induce a connected
/// subgraph.
pub fn enumerate_cuts(g: &Graph, j: usize) -> Vec<Partition> {
    let adj = g.adjacency();
    set_partitions(g.nvertices, j)
        .into_iter()
        .filter(|bs| bs.iter().all(|&b| connected_in(&adj, b)))
        .map(|bs| Partition::new(g.nvertices, bs).expect("set partition"))
        .collect()
}

fn crossing_mask(g: &Graph, block_of: &[usize]) -> u64 {
    g.edges
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v))| block_of[u] != block_of[v])
        .fold(0, |m, (k, _)| m | 1 << k)
}

/// `m_C`: the product of the edge variables crossing between blocks.
pub fn cut_monomial(g: &Graph, c: &Partition) -> Result<Monomial> {
    if c.nvertices != g.nvertices {
        return Err(Error::DimensionMismatch {
            expected: g.nvertices,
            found: c.nvertices,
        });
    }
    Ok(Monomial::from_mask(
        g.num_edges(),
        crossing_mask(g, &c.block_of()),
    ))
}

/// The cut ideal, generated by the crossing monomials of all 2-partitions
/// with at least one crossing edge.
pub fn cut_ideal(g: &Graph) -> Result<MonomialIdeal> {
    let n = g.nvertices;
    if g.edges.is_empty() || n < 2 {
        return Err(Error::NoCuts);
    }
    if n > 30 {
        return Err(Error::GuardExceeded {
            what: "vertex count for 2-partition enumeration",
            actual: n,
            limit: 30,
        });
    }
    let mut masks = Vec::new();
    // Vertex 0 always lies on the first side.
    for s in 0..(1u64 << (n - 1)) - 1 {
        let side = 1 | s << 1;
        let m = g
            .edges
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| (side >> u & 1) != (side >> v & 1))
            .fold(0u64, |m, (k, _)| m | 1 << k);
        if m != 0 {
            masks.push(m);
        }
    }
    Ok(MonomialIdeal::from_masks(g.num_edges(), masks))
}

/// `P_{i,j}`: generated by the crossing monomials of all `j`-cuts.
pub fn partition_ideal(g: &Graph, j: usize) -> Result<MonomialIdeal> {
    let masks: Vec<u64> = enumerate_cuts(g, j)
        .iter()
        .map(|c| crossing_mask(g, &c.block_of()))
        .collect();
    if masks.is_empty() {
        return Err(Error::NoCuts);
    }
    Ok(MonomialIdeal::from_masks(g.num_edges(), masks))
}

/// Complex on the edge set whose facets are the complements of the
/// `size`-edge acyclic subsets.
pub fn acyclic_complement_complex(g: &Graph, size: usize) -> Result<SimplicialComplex> {
    let m = g.num_edges();
    let all = low_bits(m);
    let mut facets = Vec::new();
    let mut pick: Vec<usize> = (0..size).collect();
    if size <= m {
        loop {
            if is_acyclic(g.nvertices, pick.iter().map(|&k| g.edges[k])) {
                facets.push(all & !pick.iter().fold(0u64, |s, &k| s | 1 << k));
            }
            // Next combination in lexicographic order.
            let Some(i) = (0..size).rev().find(|&i| pick[i] < m - size + i) else {
                break;
            };
            pick[i] += 1;
            for t in i + 1..size {
                pick[t] = pick[t - 1] + 1;
            }
        }
    }
    SimplicialComplex::new(m, facets)
}

/// Complements of the spanning trees of `K_i`.
pub fn spanning_tree_complement_facets(i: usize) -> Result<SimplicialComplex> {
    if i < 2 {
        return Err(Error::Invalid("need at least two vertices".into()));
    }
    acyclic_complement_complex(&Graph::complete(i), i - 1)
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// One checked equality `I_t = P_{i,k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutTheoremCheck {
    pub k: usize,
    pub t: usize,
    pub holds: bool,
}

/// Checks `I_{2^(k-1)} = ... = I_{2^k - 1} = P_{i,k+1}` for the cut ideal of
/// `K_i` and every feasible `k ≤ kmax` (all feasible `k` when `None`).
pub fn cut_theorem_checks(
    i: usize,
    kmax: Option<usize>,
    guards: &Guards,
) -> Result<Vec<CutTheoremCheck>> {
    let g = Graph::complete(i);
    let ideal = cut_ideal(&g)?;
    let r = ideal.num_generators();
    if r > guards.filtration_generators {
        return Err(Error::GuardExceeded {
            what: "generator count for the usual lcm-filtration",
            actual: r,
            limit: guards.filtration_generators,
        });
    }
    let feasible = i - 1;
    let top = kmax.map_or(feasible, |k| k.min(feasible));
    let mut out = Vec::new();
    for k in 1..=top {
        let p = partition_ideal(&g, k + 1)?;
        for t in (1 << (k - 1))..(1 << k) {
            let it = k_fold_ideal(&ideal, t, guards)?;
            out.push(CutTheoremCheck {
                k,
                t,
                holds: it == p,
            });
        }
    }
    Ok(out)
}

pub fn verify_cut_theorem(i: usize, kmax: Option<usize>, guards: &Guards) -> Result<bool> {
    Ok(cut_theorem_checks(i, kmax, guards)?.iter().all(|c| c.holds))
}

/// Each possible edge of `K_n` is kept with probability `p`; edge `k` in
/// lexicographic order draws from ChaCha stream `k` of `seed`, so the graph
/// depends only on `(n, p, seed)`.
pub fn er_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let k = Graph::complete(n);
    let kept = k.edges.iter().enumerate().filter(|&(idx, _)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        rng.gen::<f64>() < p
    });
    Graph::new(n, kept.map(|(_, &e)| e).collect::<Vec<_>>())
}

/// One row of the deletion experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub run: usize,
    pub step: usize,
    pub edges_remaining: usize,
    pub density: f64,
    pub generators: Option<usize>,
    pub pden: Option<f64>,
}

/// Starts from `K_n` and deletes edges one at a time in a random order,
/// recording graph density and the poset density of the cut ideal at every
/// step. Run `r` shuffles with ChaCha stream `r` of `seed`. `pden` is null
/// when the cut ideal is undefined (no edges) or exceeds the lattice guard.
pub fn deletion_experiment(
    n: usize,
    runs: usize,
    seed: u64,
    guards: &Guards,
) -> Result<Vec<ExperimentRow>> {
    if !(2..=11).contains(&n) {
        return Err(Error::Invalid(format!("n = {n} outside 2..=11")));
    }
    let per_run: Vec<Vec<ExperimentRow>> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(run as u64);
            let mut g = Graph::complete(n);
            let mut order = g.edges.clone();
            order.shuffle(&mut rng);
            let mut rows = Vec::with_capacity(order.len() + 1);
            for step in 0..=order.len() {
                if step > 0 {
                    let (u, v) = order[step - 1];
                    g = g.without_edge(g.edge_index(u, v).expect("edge present"));
                }
                let (generators, pden) = match cut_ideal(&g) {
                    Ok(ideal) => {
                        let r = ideal.num_generators();
                        let pden = poset_density(&ideal, guards).ok().map(|d| d.to_f64());
                        (Some(r), pden)
                    }
                    Err(_) => (None, None),
                };
                rows.push(ExperimentRow {
                    run,
                    step,
                    edges_remaining: g.num_edges(),
                    density: g.density(),
                    generators,
                    pden,
                });
            }
            rows
        })
        .collect();
    Ok(per_run.into_iter().flatten().collect())
}

/// Writes experiment rows as CSV after `# key=value` metadata lines.
pub fn write_experiment_csv<W: Write>(
    rows: &[ExperimentRow],
    meta: &[(&str, String)],
    mut out: W,
) -> Result<()> {
    for (k, v) in meta {
        writeln!(out, "# {k}={v}").map_err(csv::Error::from)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["run", "step", "edges_remaining", "density", "generators", "pden"])?;
    for r in rows {
        w.write_record([
            r.run.to_string(),
            r.step.to_string(),
            r.edges_remaining.to_string(),
            decimal(r.density),
            r.generators.map_or(String::new(), |g| g.to_string()),
            r.pden.map_or(String::new(), decimal),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with tied values given their average rank.
/// `None` when fewer than two points or either side is constant.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        None
    } else {
        Some(sxy / (sxx * syy).sqrt())
    }
}

/// Spearman correlation of density against pden within one run, over the
/// steps where pden is defined.
pub fn run_spearman(rows: &[ExperimentRow], run: usize) -> Option<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.run == run)
        .filter_map(|r| r.pden.map(|p| (r.density, p)))
        .unzip();
    spearman(&xs, &ys)
}
