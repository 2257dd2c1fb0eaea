//! Acceptance checks. Each test writes one `criterion N: PASS|FAIL` line to
//! the real stdout (bypassing the harness capture) before asserting.

use std::collections::BTreeSet;
use std::io::Write;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcmfilt::filtration::{
    compare_filtrations, lcm_filtration, stepwise_filtration, FiltrationKind,
};
use lcmfilt::graph::{
    cut_ideal, cut_theorem_checks, deletion_experiment, enumerate_cuts, partition_ideal,
    run_spearman, spanning_tree_complement_facets, stirling2, write_experiment_csv, Graph,
};
use lcmfilt::lattice::build_lcm_lattice;
use lcmfilt::monomial::IdealJson;
use lcmfilt::persistence::{
    bottleneck, distance_matrix, wasserstein, Aggregate, DistanceOptions, Metric, Pair,
    PersistenceDiagram,
};
use lcmfilt::reliability::{
    failure_ideal, kfold_signature, lattice_ratio_curve, signature, SystemKind, SystemSpec,
};
use lcmfilt::simplicial::{
    betti_at, betti_at_lower, literal_boundary_step, parse_complexes, reduced_betti_numbers,
    sr_complex, sr_ideal, stepwise_complex_filtration, Field, SimplicialComplex,
};
use lcmfilt::{Guards, Monomial, MonomialIdeal};

const TOL: f64 = 1e-9;

fn report(n: usize, ok: bool, detail: &str) {
    let line = format!(
        "criterion {n:>2}: {} {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn names(vars: &Option<Vec<String>>) -> Option<&[String]> {
    vars.as_deref()
}

fn random_squarefree(rng: &mut ChaCha8Rng, max_n: usize, max_r: usize) -> MonomialIdeal {
    let n = rng.gen_range(2..=max_n);
    let r = rng.gen_range(1..=max_r);
    let masks: Vec<u64> = (0..r).map(|_| rng.gen_range(1..(1u64 << n))).collect();
    let gens = masks.iter().map(|&m| Monomial::from_mask(n, m)).collect();
    MonomialIdeal::new(n, gens).unwrap()
}

#[test]
fn criterion_01_five_variable_example() {
    let loaded = IdealJson::parse(&fixture("five_var_ideal.json")).unwrap();
    let vars = names(&loaded.vars);
    let usual = lcm_filtration(&loaded.ideal, &Guards::default()).unwrap();
    let stepwise = stepwise_filtration(&loaded.ideal).unwrap();
    let u: Vec<String> = usual.steps().iter().map(|s| s.format_with(vars)).collect();
    let s: Vec<String> = stepwise.steps().iter().map(|s| s.format_with(vars)).collect();
    let ok = u == ["<abc, bd, cd, e>", "<abce, bcd, bde, cde>", "<abcd, bcde>", "<abcde>"]
        && s == ["<abc, bd, cd, e>", "<abce, bcd, bde, cde>", "<bcde>"];
    report(1, ok, &format!("usual {u:?}; stepwise {s:?}"));
    assert!(ok);
}

#[test]
fn criterion_02_seven_variable_example() {
    let facets = SimplicialComplex::from_faces(
        7,
        &[&[0, 1, 2], &[0, 3], &[0, 4], &[2, 3], &[3, 4], &[5, 6]],
    )
    .unwrap();
    let ideal = IdealJson::parse(&fixture("seven_var_ideal.json")).unwrap().ideal;
    let from_complex = sr_ideal(&facets).unwrap() == ideal;
    let rep = compare_filtrations(&ideal, &Guards::default()).unwrap();
    let stated_equalities = [(1, 1), (2, 2), (5, 9), (5, 10), (6, 12), (6, 13), (6, 14), (6, 15)];
    let pattern_ok = stated_equalities.iter().all(|p| rep.equal_steps.contains(p));
    let counts_ok = rep.usual_generators.len() == 15 && rep.stepwise_generators.len() == 6;
    let unmatched_ok = rep.unmatched_usual == [3, 4, 5, 6, 7, 8, 11];
    let ok = from_complex && counts_ok && pattern_ok && unmatched_ok;
    report(
        2,
        ok,
        &format!(
            "ideal from complex {from_complex}; steps {}/{}; stated equalities present {pattern_ok}; \
             all equalities {:?}; unmatched usual {:?} (stated [3, 4, 5, 6, 7, 8, 11])",
            rep.usual_generators.len(),
            rep.stepwise_generators.len(),
            rep.equal_steps,
            rep.unmatched_usual
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_03_stirling_table() {
    let printed: [&[u128]; 9] = [
        &[1],
        &[3, 1],
        &[7, 6, 1],
        &[15, 25, 10, 1],
        &[31, 90, 65, 15, 1],
        &[63, 301, 350, 140, 21, 1],
        &[127, 966, 1701, 1050, 266, 28, 1],
        &[255, 3025, 7770, 6951, 2646, 462, 36, 1],
        &[511, 9330, 34105, 42525, 22827, 5880, 750, 45, 1],
    ];
    let mut bad = Vec::new();
    for (row, values) in printed.iter().enumerate() {
        let i = row + 2;
        for (col, &expected) in values.iter().enumerate() {
            let j = col + 2;
            let computed = if i <= 8 {
                let g = Graph::complete(i);
                let by_cuts = enumerate_cuts(&g, j).len() as u128;
                let gens = partition_ideal(&g, j).unwrap().num_generators() as u128;
                if by_cuts != gens {
                    bad.push(format!("P({i},{j}) has {gens} generators but {by_cuts} cuts"));
                }
                gens
            } else {
                stirling2(i, j)
            };
            if computed != expected {
                bad.push(format!("({i},{j}) computed {computed}, printed {expected}"));
            }
        }
    }
    let ok = bad.is_empty();
    report(3, ok, &format!("45 entries, mismatches {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_04_kfold_cut_ideals() {
    let mut lines = Vec::new();
    let mut ok = true;
    for i in 3..=5 {
        let checks = cut_theorem_checks(i, None, &Guards::default()).unwrap();
        let failed: Vec<(usize, usize)> =
            checks.iter().filter(|c| !c.holds).map(|c| (c.k, c.t)).collect();
        ok &= failed.is_empty() && !checks.is_empty();
        lines.push(format!("K{i}: {} checks, failing {failed:?}", checks.len()));
    }
    report(4, ok, &lines.join("; "));
    assert!(ok);
}

/// Spanning trees of `K_i` by brute force over (i-1)-edge subsets.
fn spanning_tree_masks(i: usize) -> BTreeSet<u64> {
    let g = Graph::complete(i);
    let m = g.num_edges();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << m) {
        if mask.count_ones() as usize != i - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..i).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut acyclic = true;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> e & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    acyclic = false;
                    break;
                }
                parent[a] = b;
            }
        }
        if acyclic {
            out.insert(mask);
        }
    }
    out
}

#[test]
fn criterion_05_cut_complex_spanning_trees() {
    let mut ok = true;
    let mut lines = Vec::new();
    for i in 3..=5 {
        let g = Graph::complete(i);
        let m = g.num_edges();
        let complex = sr_complex(&cut_ideal(&g).unwrap()).unwrap();
        let expected = spanning_tree_complement_facets(i).unwrap();
        let trees = spanning_tree_masks(i);
        let complements: BTreeSet<u64> =
            trees.iter().map(|t| !t & ((1u64 << m) - 1)).collect();
        let facets: BTreeSet<u64> = complex.facets().iter().copied().collect();
        let this = complex == expected && facets == complements;
        ok &= this;
        lines.push(format!("K{i}: {} facets, {} spanning trees", facets.len(), trees.len()));
    }
    ok &= spanning_tree_masks(4).len() == 16;
    report(5, ok, &lines.join("; "));
    assert!(ok);
}

#[test]
fn criterion_06_stepwise_ideal_complex_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut disagreements = 0;
    let mut literal_differs = 0;
    let mut literal_checked = 0;
    for _ in 0..200 {
        let ideal = random_squarefree(&mut rng, 7, 7);
        let ideal_side = stepwise_filtration(&ideal).unwrap();
        let delta = sr_complex(&ideal).unwrap();
        let complex_side = stepwise_complex_filtration(&delta).unwrap();
        let agree = complex_side.len() == ideal_side.len()
            && complex_side
                .iter()
                .zip(ideal_side.steps())
                .all(|(c, s)| &sr_ideal(c).unwrap() == s);
        if !agree {
            disagreements += 1;
        }
        if ideal_side.len() > 1 {
            literal_checked += 1;
            let literal = sr_ideal(&literal_boundary_step(&delta).unwrap()).unwrap();
            if &literal != ideal_side.step(2).unwrap() {
                literal_differs += 1;
            }
        }
    }
    let ok = disagreements == 0;
    report(
        6,
        ok,
        &format!(
            "200 ideals, {disagreements} disagreements; boundary-count step differs from the \
             ideal step in {literal_differs} of {literal_checked}"
        ),
    );
    assert!(ok);
}

/// Exact distribution of the step at which `fold` minimal failure sets are
/// first all failed, over every failure order.
fn permutation_oracle(gens: &[u64], n: usize, fold: usize) -> Vec<BigRational> {
    let mut counts = vec![0u64; n + 1];
    let mut total = 0u64;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut visit = |p: &[usize]| {
        total += 1;
        let mut failed = 0u64;
        for (step, &v) in p.iter().enumerate() {
            failed |= 1 << v;
            if gens.iter().filter(|&&g| g & !failed == 0).count() >= fold {
                counts[step + 1] += 1;
                return;
            }
        }
    };
    // Heap's algorithm.
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    counts[1..]
        .iter()
        .map(|&k| BigRational::new(k.into(), total.into()))
        .collect()
}

#[test]
fn criterion_07_signature_oracle() {
    let guards = Guards::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for kind in SystemKind::ALL {
        for n in 1..=7 {
            for k in 1..=n {
                let ideal = failure_ideal(&SystemSpec::new(kind, n, k).unwrap()).unwrap();
                let gens = ideal.masks().unwrap();
                let s = signature(&ideal, n).unwrap();
                if s.values != permutation_oracle(&gens, n, 1) {
                    bad.push(format!("{kind} n={n} k={k}"));
                }
                if kind == SystemKind::KOfN {
                    let unit = (1..=n).all(|i| {
                        s.values[i - 1]
                            == if i == k { BigRational::one() } else { BigRational::zero() }
                    });
                    if !unit {
                        bad.push(format!("kofn n={n} k={k} not a unit vector"));
                    }
                }
                for fold in 1..=3 {
                    let kf = kfold_signature(&ideal, n, fold, &guards).unwrap();
                    checked += 1;
                    if kf.values != permutation_oracle(&gens, n, fold) {
                        bad.push(format!("{kind} n={n} k={k} fold={fold}"));
                    }
                }
            }
        }
    }
    let ok = bad.is_empty();
    report(7, ok, &format!("{checked} k-fold signatures, mismatches {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_08_lattice_ratio_trends() {
    let guards = Guards::default();
    let pts = lattice_ratio_curve(15, &SystemKind::ALL, &guards).unwrap();
    let of = |kind| pts.iter().filter(move |p| p.kind == kind);
    let circ: Vec<_> = of(SystemKind::ConsecutiveCircular).collect();
    let circ_gens = circ.iter().all(|p| p.generators == 15);
    let ratios: Vec<f64> = circ.iter().filter_map(|p| p.ratio).collect();
    let decreasing = ratios.len() == circ.len() && ratios.windows(2).all(|w| w[1] < w[0]);
    let lin_ok = of(SystemKind::ConsecutiveLinear)
        .all(|p| (p.generators <= 25) == p.ratio.is_some());
    let kofn_ok = of(SystemKind::KOfN).all(|p| {
        (p.generators > guards.lattice_atoms) == (p.lattice_size.is_none() && p.ratio.is_none())
    });
    let kofn_nulls = of(SystemKind::KOfN).filter(|p| p.ratio.is_none()).count();
    let ok = circ_gens && decreasing && lin_ok && kofn_ok && !circ.is_empty();
    report(
        8,
        ok,
        &format!(
            "circular: 15 generators for all k {circ_gens}, strictly decreasing {decreasing}; \
             linear computed {lin_ok}; k-out-of-n nulls {kofn_nulls} consistent {kofn_ok}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_09_deletion_experiment() {
    let guards = Guards::default().with_lattice_atoms(31);
    let seed = 42;
    let mut ok = true;
    let mut lines = Vec::new();
    for n in [5usize, 6] {
        let rows = deletion_experiment(n, 10, seed, &guards).unwrap();
        let mut forest_ok = true;
        let mut replay_ok = true;
        let mut complete_pden = 0.0f64;
        for r in &rows {
            let g = replay(r.run, r.step, n, seed);
            replay_ok &= g.num_edges() == r.edges_remaining;
            if r.step == 0 {
                complete_pden = complete_pden.max(r.pden.unwrap_or(1.0));
            }
            if g.num_edges() > 0 && g.is_forest() {
                forest_ok &= r.pden.is_some_and(|p| (p - 1.0).abs() < TOL);
            }
        }
        let rhos: Vec<f64> = (0..10).map(|run| run_spearman(&rows, run).unwrap_or(0.0)).collect();
        let worst = rhos.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_experiment_csv(&rows, &[("seed", seed.to_string())], &mut a).unwrap();
        let again = deletion_experiment(n, 10, seed, &guards).unwrap();
        write_experiment_csv(&again, &[("seed", seed.to_string())], &mut b).unwrap();
        let this = forest_ok && replay_ok && complete_pden < 0.2 && worst <= -0.8 && a == b;
        ok &= this;
        lines.push(format!(
            "n={n}: forest pden=1 {forest_ok}, complete-graph pden {complete_pden:.4}, \
             max spearman {worst:.3}, deterministic {}",
            a == b
        ));
    }
    report(9, ok, &lines.join("; "));
    assert!(ok);
}

/// The graph of `run` after `step` deletions, rebuilt by rerunning the
/// experiment's shuffle.
fn replay(run: usize, step: usize, n: usize, seed: u64) -> Graph {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run as u64);
    let mut order = Graph::complete(n).edges().to_vec();
    order.shuffle(&mut rng);
    Graph::new(n, order[step..].to_vec()).unwrap()
}

fn fig_complexes() -> (Vec<String>, Vec<SimplicialComplex>) {
    parse_complexes(&fixture("same_fvector_complexes.json"))
        .unwrap()
        .into_iter()
        .unzip()
}

type Matrix = [[f64; 4]; 4];

const BOTTLENECK_USUAL: Matrix = [
    [0.0, 3.0, 4.5, 3.5],
    [3.0, 0.0, 4.5, 3.5],
    [4.5, 4.5, 0.0, 4.5],
    [3.5, 3.5, 4.5, 0.0],
];
const WASSERSTEIN_USUAL: Matrix = [
    [0.0, 5.0, 15.5, 20.5],
    [5.0, 0.0, 17.0, 20.5],
    [15.5, 17.0, 0.0, 16.5],
    [20.5, 20.5, 16.5, 0.0],
];
const BOTTLENECK_STEPWISE: Matrix = [
    [0.0, 0.5, 1.0, 1.0],
    [0.5, 0.0, 1.0, 1.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
];
const WASSERSTEIN_STEPWISE: Matrix = [
    [0.0, 0.5, 2.5, 2.5],
    [0.5, 0.0, 2.0, 2.0],
    [2.5, 2.0, 0.0, 0.0],
    [2.5, 2.0, 0.0, 0.0],
];

fn mismatches(labels: &[String], computed: &[Vec<f64>], printed: &Matrix) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if (computed[i][j] - printed[i][j]).abs() > TOL {
                out.push(format!(
                    "{}{}={} (printed {})",
                    labels[i], labels[j], computed[i][j], printed[i][j]
                ));
            }
        }
    }
    out
}

#[test]
fn criterion_10_distance_tables() {
    let (labels, complexes) = fig_complexes();
    let guards = Guards::default();
    let cases = [
        (FiltrationKind::Usual, Metric::Bottleneck, &BOTTLENECK_USUAL),
        (FiltrationKind::Usual, Metric::Wasserstein, &WASSERSTEIN_USUAL),
        (FiltrationKind::Stepwise, Metric::Bottleneck, &BOTTLENECK_STEPWISE),
        (FiltrationKind::Stepwise, Metric::Wasserstein, &WASSERSTEIN_STEPWISE),
    ];
    let opts = DistanceOptions::default();
    let mut computed = Vec::new();
    let mut properties = true;
    let mut notes = Vec::new();
    for (kind, metric, printed) in cases {
        let m = distance_matrix(&complexes, kind, metric, &opts, &guards).unwrap();
        for i in 0..4 {
            properties &= m[i][i] == 0.0;
            for j in 0..4 {
                properties &= (m[i][j] - m[j][i]).abs() < TOL;
            }
        }
        let miss = mismatches(&labels, &m, printed);
        notes.push(format!("{kind}/{metric}: {} mismatches {miss:?}", miss.len()));
        computed.push(m);
    }
    for metric in 0..2 {
        for i in 0..4 {
            for j in 0..4 {
                properties &= computed[metric + 2][i][j] <= computed[metric][i][j] + TOL;
            }
        }
    }
    let usual_exact = mismatches(&labels, &computed[0], &BOTTLENECK_USUAL).is_empty()
        && mismatches(&labels, &computed[1], &WASSERSTEIN_USUAL).is_empty();

    let mut exact_knob = None;
    for aggregate in [Aggregate::Sum, Aggregate::Max] {
        let o = DistanceOptions { aggregate, q: 1 };
        let all = cases.iter().all(|&(kind, metric, printed)| {
            let m = distance_matrix(&complexes, kind, metric, &o, &guards).unwrap();
            mismatches(&labels, &m, printed).is_empty()
        });
        if all && exact_knob.is_none() {
            exact_knob = Some(aggregate);
        }
    }
    let ok = properties && usual_exact;
    report(
        10,
        ok,
        &format!(
            "symmetric/zero-diagonal/stepwise<=lcm {properties}; lcm tables exact {usual_exact}; \
             knob reproducing all 32 entries {exact_knob:?}; {}",
            notes.join("; ")
        ),
    );
    assert!(ok);
}

fn random_diagram(rng: &mut ChaCha8Rng) -> PersistenceDiagram {
    let mut d = PersistenceDiagram::default();
    for dim in 0..2 {
        let mut pairs = vec![Pair {
            birth: rng.gen_range(1..4),
            death: None,
        }];
        for _ in 0..rng.gen_range(0..5) {
            let b = rng.gen_range(1..8);
            pairs.push(Pair {
                birth: b,
                death: Some(b + rng.gen_range(1..6)),
            });
        }
        pairs.sort();
        d.dims.insert(dim, pairs);
    }
    d
}

#[test]
fn criterion_11_invariant_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let guards = Guards::default();
    let mut failures: Vec<String> = Vec::new();
    let instances = 500;
    for case in 0..instances {
        // Antichain, idempotence, and the stepwise steps inside the usual ones.
        let ideal = random_squarefree(&mut rng, 7, 8);
        let gens = ideal.generators();
        let antichain = gens.iter().enumerate().all(|(a, g)| {
            gens.iter()
                .enumerate()
                .all(|(b, h)| a == b || !g.divides(h).unwrap())
        });
        let idempotent = MonomialIdeal::new(ideal.nvars(), gens.to_vec()).unwrap() == ideal;
        let usual = lcm_filtration(&ideal, &guards).unwrap();
        let stepwise = stepwise_filtration(&ideal).unwrap();
        let nested = stepwise.steps().iter().enumerate().all(|(j, s)| {
            j >= usual.len() || s.is_subset_of(usual.step(j + 1).unwrap())
        }) && (usual.len() < 2 || stepwise.step(2) == usual.step(2));
        if !(antichain && idempotent && nested) {
            failures.push(format!("ideal case {case}"));
        }

        // Hochster upper/lower agreement on every lattice element, including
        // a non-squarefree ideal evaluated through its polarization.
        let small = if case % 5 == 0 {
            let n = rng.gen_range(2..=3);
            let g: Vec<Monomial> = (0..rng.gen_range(1..=4))
                .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..3)).collect()))
                .filter(|m| !m.is_one())
                .collect();
            if g.is_empty() {
                random_squarefree(&mut rng, 5, 5)
            } else {
                MonomialIdeal::new(n, g).unwrap()
            }
        } else {
            random_squarefree(&mut rng, 5, 5)
        };
        let lattice = build_lcm_lattice(&small, &guards).unwrap();
        for mu in lattice.elements().iter().skip(1) {
            for i in 0..=small.num_generators() {
                let up = betti_at(&small, mu, i, Field::Rationals).unwrap();
                let low = betti_at_lower(&small, mu, i, Field::Rationals).unwrap();
                if up != low {
                    failures.push(format!("hochster case {case} at {mu} i={i}: {up} vs {low}"));
                }
            }
        }

        // Euler characteristic against Betti numbers.
        let delta = sr_complex(&random_squarefree(&mut rng, 7, 6)).unwrap();
        for field in [Field::Rationals, Field::prime(2).unwrap()] {
            let b = reduced_betti_numbers(&delta, field).unwrap();
            let alt: i64 = b
                .ranks()
                .iter()
                .enumerate()
                .map(|(d, &x)| if d % 2 == 0 { -(x as i64) } else { x as i64 })
                .sum();
            if alt != delta.euler_characteristic().unwrap() - 1 {
                failures.push(format!("euler case {case}"));
            }
        }

        // Pseudometric properties and bottleneck <= Wasserstein.
        let (x, y, z) = (
            random_diagram(&mut rng),
            random_diagram(&mut rng),
            random_diagram(&mut rng),
        );
        let o = DistanceOptions::default();
        for dist in [bottleneck, wasserstein] {
            let (xy, yz, xz) = (dist(&x, &y, &o), dist(&y, &z, &o), dist(&x, &z, &o));
            if dist(&x, &x, &o) != 0.0
                || (xy - dist(&y, &x, &o)).abs() > TOL
                || xz > xy + yz + TOL
            {
                failures.push(format!("pseudometric case {case}"));
            }
        }
        if bottleneck(&x, &y, &o) > wasserstein(&x, &y, &o) + TOL {
            failures.push(format!("bottleneck above wasserstein, case {case}"));
        }
    }
    let ok = failures.is_empty();
    report(
        11,
        ok,
        &format!("{instances} instances per suite, failures {:?}", &failures[..failures.len().min(5)]),
    );
    assert!(ok);
}
