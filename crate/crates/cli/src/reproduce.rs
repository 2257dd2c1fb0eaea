//! Published reference values, recomputed and compared.

use lcmfilt::filtration::{
    compare_filtrations, distinct_steps, lcm_filtration, stepwise_filtration, FiltrationKind,
};
use lcmfilt::graph::{cut_ideal, partition_ideal, spanning_tree_complement_facets, stirling2, Graph};
use lcmfilt::monomial::IdealJson;
use lcmfilt::numfmt::decimal;
use lcmfilt::persistence::{distance_matrix, DistanceOptions, Metric};
use lcmfilt::reliability::{failure_ideal, lattice_ratio_curve, SystemKind, SystemSpec};
use lcmfilt::simplicial::{
    betti_numbers, parse_complexes, sr_complex, sr_ideal, stepwise_complex_step, Field,
    SimplicialComplex,
};
use lcmfilt::{Guards, MonomialIdeal};

const FIVE_VAR: &str = include_str!("../../core/fixtures/five_var_ideal.json");
const SEVEN_VAR: &str = include_str!("../../core/fixtures/seven_var_ideal.json");
const COMPLEXES: &str = include_str!("../../core/fixtures/same_fvector_complexes.json");
const TOL: f64 = 1e-9;

type DistTable = [[f64; 4]; 4];

const BOTTLENECK_USUAL: DistTable = [
    [0.0, 3.0, 4.5, 3.5],
    [3.0, 0.0, 4.5, 3.5],
    [4.5, 4.5, 0.0, 4.5],
    [3.5, 3.5, 4.5, 0.0],
];
const WASSERSTEIN_USUAL: DistTable = [
    [0.0, 5.0, 15.5, 20.5],
    [5.0, 0.0, 17.0, 20.5],
    [15.5, 17.0, 0.0, 16.5],
    [20.5, 20.5, 16.5, 0.0],
];
const BOTTLENECK_STEPWISE: DistTable = [
    [0.0, 0.5, 1.0, 1.0],
    [0.5, 0.0, 1.0, 1.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
];
const WASSERSTEIN_STEPWISE: DistTable = [
    [0.0, 0.5, 2.5, 2.5],
    [0.5, 0.0, 2.0, 2.0],
    [2.5, 2.0, 0.0, 0.0],
    [2.5, 2.0, 0.0, 0.0],
];

const STIRLING_ROWS: [&[u128]; 9] = [
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

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {}: {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        s.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            self.failures()
        ));
        s
    }

    fn add(&mut self, name: &'static str, result: lcmfilt::Result<(bool, String)>) {
        let (pass, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { name, pass, detail });
    }
}

fn five_var() -> lcmfilt::Result<(MonomialIdeal, Vec<String>)> {
    let l = IdealJson::parse(FIVE_VAR)?;
    Ok((l.ideal, l.vars.unwrap_or_default()))
}

fn formatted(steps: &[MonomialIdeal], vars: &[String]) -> Vec<String> {
    steps.iter().map(|s| s.format_with(Some(vars))).collect()
}

fn five_var_usual() -> lcmfilt::Result<(bool, String)> {
    let (i, vars) = five_var()?;
    let got = formatted(lcm_filtration(&i, &Guards::default())?.steps(), &vars);
    let want = ["<abc, bd, cd, e>", "<abce, bcd, bde, cde>", "<abcd, bcde>", "<abcde>"];
    Ok((got == want, got.join(" ⊇ ")))
}

fn five_var_stepwise() -> lcmfilt::Result<(bool, String)> {
    let (i, vars) = five_var()?;
    let got = formatted(stepwise_filtration(&i)?.steps(), &vars);
    let want = ["<abc, bd, cd, e>", "<abce, bcd, bde, cde>", "<bcde>"];
    Ok((got == want, got.join(" ⊇ ")))
}

fn five_var_complex() -> lcmfilt::Result<(bool, String)> {
    let (i, vars) = five_var()?;
    let delta = sr_complex(&i)?;
    let facets = SimplicialComplex::from_faces(5, &[&[0, 1], &[0, 2], &[0, 3], &[1, 2]])?;
    let stepped = sr_ideal(&stepwise_complex_step(&delta)?)?;
    let i2 = stepwise_filtration(&i)?.step(2).cloned().unwrap_or(i.clone());
    Ok((
        delta == facets && stepped == i2,
        format!(
            "facets {}, one complex step gives {}",
            delta,
            stepped.format_with(Some(&vars))
        ),
    ))
}

fn seven_var() -> lcmfilt::Result<MonomialIdeal> {
    Ok(IdealJson::parse(SEVEN_VAR)?.ideal)
}

fn seven_var_from_complex() -> lcmfilt::Result<(bool, String)> {
    let delta = SimplicialComplex::from_faces(
        7,
        &[&[0, 1, 2], &[0, 3], &[0, 4], &[2, 3], &[3, 4], &[5, 6]],
    )?;
    let i = sr_ideal(&delta)?;
    Ok((i == seven_var()?, format!("{} generators", i.num_generators())))
}

fn seven_var_lengths() -> lcmfilt::Result<(bool, String)> {
    let rep = compare_filtrations(&seven_var()?, &Guards::default())?;
    let (u, s) = (rep.usual_generators.len(), rep.stepwise_generators.len());
    Ok((u == 15 && s == 6, format!("usual {u} steps, stepwise {s} steps")))
}

fn seven_var_equalities() -> lcmfilt::Result<(bool, String)> {
    let rep = compare_filtrations(&seven_var()?, &Guards::default())?;
    let stated = [(1, 1), (2, 2), (5, 9), (5, 10), (6, 12), (6, 13), (6, 14), (6, 15)];
    let ok = stated.iter().all(|p| rep.equal_steps.contains(p));
    Ok((ok, format!("equal (stepwise, usual) pairs {:?}", rep.equal_steps)))
}

fn seven_var_unmatched() -> lcmfilt::Result<(bool, String)> {
    let rep = compare_filtrations(&seven_var()?, &Guards::default())?;
    let stated = [3, 4, 5, 6, 7, 8, 11];
    Ok((
        rep.unmatched_usual == stated,
        format!(
            "computed {:?}, reference {:?}",
            rep.unmatched_usual, stated
        ),
    ))
}

fn stirling_table() -> lcmfilt::Result<(bool, String)> {
    let mut bad = Vec::new();
    for (row, values) in STIRLING_ROWS.iter().enumerate() {
        let i = row + 2;
        for (col, &want) in values.iter().enumerate() {
            let j = col + 2;
            let got = if i <= 8 {
                partition_ideal(&Graph::complete(i), j)?.num_generators() as u128
            } else {
                stirling2(i, j)
            };
            if got != want {
                bad.push(format!("({i},{j}): {got} vs {want}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("45 entries, mismatches: {bad:?}")))
}

fn tree_cut_ideal() -> lcmfilt::Result<(bool, String)> {
    let ok = (2..=8).all(|i| {
        cut_ideal(&Graph::path(i)).is_ok_and(|c| {
            c.num_generators() == i - 1 && c.generators().iter().all(|g| g.degree() == 1)
        })
    });
    Ok((ok, "paths on 2..8 vertices".into()))
}

fn spanning_tree_facets() -> lcmfilt::Result<(bool, String)> {
    let mut ok = true;
    let mut counts = Vec::new();
    for i in 3..=6 {
        let delta = sr_complex(&cut_ideal(&Graph::complete(i))?)?;
        ok &= delta == spanning_tree_complement_facets(i)?;
        counts.push(delta.facets().len());
    }
    Ok((ok, format!("facet counts for K3..K6: {counts:?}")))
}

fn same_distinct_steps() -> lcmfilt::Result<(bool, String)> {
    let i = cut_ideal(&Graph::complete(4))?;
    let usual = lcm_filtration(&i, &Guards::default())?;
    let stepwise = stepwise_filtration(&i)?;
    let (a, b) = (distinct_steps(&usual), distinct_steps(&stepwise));
    let ok = a.len() == b.len() && a.iter().all(|x| b.contains(x));
    Ok((ok, format!("{} distinct ideals in each", a.len())))
}

fn circular_generators() -> lcmfilt::Result<(bool, String)> {
    let mut ok = true;
    for k in 1..15 {
        let spec = SystemSpec::new(SystemKind::ConsecutiveCircular, 15, k)?;
        ok &= failure_ideal(&spec)?.num_generators() == 15;
    }
    let pts = lattice_ratio_curve(15, &[SystemKind::ConsecutiveCircular], &Guards::default())?;
    let ratios: Vec<f64> = pts.iter().filter_map(|p| p.ratio).collect();
    let decreasing = ratios.len() == pts.len() && ratios.windows(2).all(|w| w[1] < w[0]);
    Ok((
        ok && decreasing,
        format!("15 generators for k = 1..14: {ok}; ratio decreasing in k: {decreasing}"),
    ))
}

fn complexes() -> lcmfilt::Result<(Vec<String>, Vec<SimplicialComplex>)> {
    Ok(parse_complexes(COMPLEXES)?.into_iter().unzip())
}

fn shared_invariants() -> lcmfilt::Result<(bool, String)> {
    let (_, cs) = complexes()?;
    let mut ok = true;
    for c in &cs {
        ok &= c.f_vector()? == [1, 7, 7];
        ok &= betti_numbers(c, Field::Rationals)? == [2, 2];
    }
    Ok((ok, "f-vector (1, 7, 7), Betti numbers (2, 2)".into()))
}

fn table(kind: FiltrationKind, metric: Metric, want: &DistTable) -> lcmfilt::Result<(bool, String)> {
    let (labels, cs) = complexes()?;
    let m = distance_matrix(&cs, kind, metric, &DistanceOptions::default(), &Guards::default())?;
    let mut cells = Vec::new();
    let mut ok = true;
    for i in 0..4 {
        for j in i + 1..4 {
            let hit = (m[i][j] - want[i][j]).abs() <= TOL;
            ok &= hit;
            cells.push(format!(
                "{}{}={}{}",
                labels[i],
                labels[j],
                decimal(m[i][j]),
                if hit {
                    String::new()
                } else {
                    format!(" (reference {}, convention mismatch)", decimal(want[i][j]))
                }
            ));
        }
    }
    Ok((ok, cells.join(", ")))
}

fn amplification() -> lcmfilt::Result<(bool, String)> {
    let (_, cs) = complexes()?;
    let opts = DistanceOptions::default();
    let g = Guards::default();
    let mut ok = true;
    for metric in [Metric::Bottleneck, Metric::Wasserstein] {
        let u = distance_matrix(&cs, FiltrationKind::Usual, metric, &opts, &g)?;
        let s = distance_matrix(&cs, FiltrationKind::Stepwise, metric, &opts, &g)?;
        for i in 0..cs.len() {
            for j in 0..cs.len() {
                ok &= s[i][j] <= u[i][j] + TOL;
            }
        }
    }
    Ok((ok, "stepwise distances <= lcm distances entrywise".into()))
}

pub fn run() -> Report {
    let mut r = Report { checks: Vec::new() };
    r.add("five-variable usual filtration", five_var_usual());
    r.add("five-variable stepwise filtration", five_var_stepwise());
    r.add("five-variable complex and step", five_var_complex());
    r.add("seven-variable ideal from facets", seven_var_from_complex());
    r.add("seven-variable filtration lengths", seven_var_lengths());
    r.add("seven-variable stated equalities", seven_var_equalities());
    r.add("seven-variable unmatched usual steps", seven_var_unmatched());
    r.add("j-cut generator table", stirling_table());
    r.add("tree cut ideals are generated by variables", tree_cut_ideal());
    r.add("cut complexes are spanning-tree complements", spanning_tree_facets());
    r.add("K4 cut ideal: same distinct ideals in both filtrations", same_distinct_steps());
    r.add("circular systems at n = 15", circular_generators());
    r.add("four complexes share f-vector and Betti numbers", shared_invariants());
    r.add(
        "bottleneck, lcm-filtration",
        table(FiltrationKind::Usual, Metric::Bottleneck, &BOTTLENECK_USUAL),
    );
    r.add(
        "Wasserstein, lcm-filtration",
        table(FiltrationKind::Usual, Metric::Wasserstein, &WASSERSTEIN_USUAL),
    );
    r.add(
        "bottleneck, stepwise filtration",
        table(FiltrationKind::Stepwise, Metric::Bottleneck, &BOTTLENECK_STEPWISE),
    );
    r.add(
        "Wasserstein, stepwise filtration",
        table(FiltrationKind::Stepwise, Metric::Wasserstein, &WASSERSTEIN_STEPWISE),
    );
    r.add("amplification", amplification());
    r
}
