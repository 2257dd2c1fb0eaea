use proptest::prelude::*;

use lcmfilt::filtration::{
    k_fold_ideal, lcm_filtration, stepwise_filtration, stepwise_next, FiltrationKind,
};
use lcmfilt::lattice::build_lcm_lattice;
use lcmfilt::monomial::{minimalize, polarize};
use lcmfilt::persistence::{
    bottleneck, complexes_of, persistence_diagram, wasserstein, Aggregate, ComplexFiltration,
    DistanceOptions, Pair, PersistenceDiagram,
};
use lcmfilt::simplicial::{
    betti_at, betti_at_lower, betti_numbers, reduced_betti_numbers, sr_complex, sr_ideal,
    stepwise_complex_step, Field, SimplicialComplex,
};
use lcmfilt::{Guards, Monomial, MonomialIdeal};

fn squarefree_ideal(max_n: usize, max_r: usize) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 1..=max_r).prop_map(move |masks| {
            let gens = masks.iter().map(|&m| Monomial::from_mask(n, m)).collect();
            MonomialIdeal::new(n, gens).unwrap()
        })
    })
}

fn general_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1..=3usize).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0u16..3, n), 1..=4).prop_filter_map(
            "needs a non-constant generator",
            move |exps| {
                let gens: Vec<Monomial> = exps
                    .into_iter()
                    .map(Monomial::new)
                    .filter(|m| !m.is_one())
                    .collect();
                (!gens.is_empty()).then(|| MonomialIdeal::new(n, gens).unwrap())
            },
        )
    })
}

fn complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), 1..6)
            .prop_map(move |faces| SimplicialComplex::new(n, faces).unwrap())
    })
}

fn diagram() -> impl Strategy<Value = PersistenceDiagram> {
    let pair = (1usize..8, 1usize..6).prop_map(|(b, l)| Pair {
        birth: b,
        death: Some(b + l),
    });
    (
        prop::collection::vec(pair.clone(), 0..5),
        prop::collection::vec(pair, 0..4),
        1usize..4,
    )
        .prop_map(|(d0, d1, ess)| {
            let mut d = PersistenceDiagram::default();
            let mut p0 = d0;
            p0.push(Pair {
                birth: ess,
                death: None,
            });
            p0.sort();
            let mut p1 = d1;
            p1.sort();
            d.dims.insert(0, p0);
            d.dims.insert(1, p1);
            d
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generators_form_an_antichain(ideal in general_ideal()) {
        let g = ideal.generators();
        for (i, a) in g.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                prop_assert!(i == j || !a.divides(b).unwrap());
            }
        }
        prop_assert_eq!(minimalize(g), g.to_vec());
    }

    #[test]
    fn second_steps_agree_and_stepwise_is_inside(ideal in squarefree_ideal(6, 7)) {
        let usual = lcm_filtration(&ideal, &Guards::default()).unwrap();
        let stepwise = stepwise_filtration(&ideal).unwrap();
        if ideal.num_generators() >= 2 {
            prop_assert_eq!(stepwise.step(2), usual.step(2));
        }
        for (j, s) in stepwise.steps().iter().enumerate() {
            if let Some(u) = usual.step(j + 1) {
                prop_assert!(s.is_subset_of(u));
            }
        }
        for w in usual.steps().windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]));
        }
    }

    #[test]
    fn stepwise_shrinks_strictly(ideal in squarefree_ideal(6, 7)) {
        let f = stepwise_filtration(&ideal).unwrap();
        for w in f.steps().windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]) && w[1] != w[0]);
        }
        prop_assert!(f.steps().last().unwrap().is_principal());
    }

    #[test]
    fn k_fold_is_the_usual_step(ideal in general_ideal(), k in 1usize..5) {
        let f = lcm_filtration(&ideal, &Guards::default()).unwrap();
        let ik = k_fold_ideal(&ideal, k, &Guards::default()).unwrap();
        match f.step(k) {
            Some(s) => prop_assert_eq!(s, &ik),
            None => prop_assert!(ik.is_zero()),
        }
    }

    #[test]
    fn stanley_reisner_round_trips(ideal in squarefree_ideal(7, 6), delta in complex(6)) {
        prop_assert_eq!(sr_ideal(&sr_complex(&ideal).unwrap()).unwrap(), ideal);
        prop_assert_eq!(sr_complex(&sr_ideal(&delta).unwrap()).unwrap(), delta);
    }

    #[test]
    fn complex_step_tracks_ideal_step(ideal in squarefree_ideal(7, 7)) {
        prop_assume!(ideal.num_generators() >= 2);
        let stepped = stepwise_complex_step(&sr_complex(&ideal).unwrap()).unwrap();
        prop_assert_eq!(sr_ideal(&stepped).unwrap(), stepwise_next(&ideal).unwrap());
    }

    #[test]
    fn upper_and_lower_koszul_agree(ideal in general_ideal()) {
        let lattice = build_lcm_lattice(&ideal, &Guards::default()).unwrap();
        for mu in lattice.elements() {
            for i in 0..=ideal.num_generators() {
                prop_assert_eq!(
                    betti_at(&ideal, mu, i, Field::Rationals).unwrap(),
                    betti_at_lower(&ideal, mu, i, Field::Rationals).unwrap()
                );
            }
        }
    }

    #[test]
    fn polarization_round_trips(ideal in general_ideal()) {
        let p = polarize(&ideal).unwrap();
        prop_assert!(p.ideal.is_squarefree());
        prop_assert_eq!(p.depolarize(&p.ideal).unwrap(), ideal);
    }

    #[test]
    fn euler_characteristic_matches_betti(delta in complex(7)) {
        let chi = delta.euler_characteristic().unwrap();
        for field in [Field::Rationals, Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let reduced = reduced_betti_numbers(&delta, field).unwrap();
            let alt: i64 = reduced
                .ranks()
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { -(b as i64) } else { b as i64 })
                .sum();
            prop_assert_eq!(alt, chi - 1);
            let plain: i64 = betti_numbers(&delta, field)
                .unwrap()
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            prop_assert_eq!(plain, chi);
        }
    }

    #[test]
    fn diagram_counts_match_step_homology(ideal in squarefree_ideal(6, 6), usual in any::<bool>()) {
        let kind = if usual { FiltrationKind::Usual } else { FiltrationKind::Stepwise };
        let f = lcmfilt::filtration::filtration(&ideal, kind, &Guards::default()).unwrap();
        let cf = complexes_of(&f).unwrap();
        check_step_homology(&cf)?;
    }

    #[test]
    fn diagram_of_random_nested_sequence(base in complex(6), extra in prop::collection::vec(0u64..64, 1..5)) {
        let n = base.nvertices();
        let mut steps = vec![base.clone()];
        let mut faces: Vec<u64> = base.facets().to_vec();
        for e in extra {
            faces.push(e & ((1u64 << n) - 1));
            steps.push(SimplicialComplex::new(n, faces.clone()).unwrap());
        }
        check_step_homology(&ComplexFiltration::new(steps).unwrap())?;
    }

    #[test]
    fn distances_are_pseudometrics(x in diagram(), y in diagram(), z in diagram(), max in any::<bool>(), q in 1u32..3) {
        let o = DistanceOptions {
            aggregate: if max { Aggregate::Max } else { Aggregate::Sum },
            q,
        };
        for d in [bottleneck, wasserstein] {
            prop_assert_eq!(d(&x, &x, &o), 0.0);
            prop_assert!((d(&x, &y, &o) - d(&y, &x, &o)).abs() < 1e-9);
            prop_assert!(d(&x, &z, &o) <= d(&x, &y, &o) + d(&y, &z, &o) + 1e-9);
        }
        prop_assert!(bottleneck(&x, &y, &o) <= wasserstein(&x, &y, &o) + 1e-9);
    }
}

/// XOR basis over GF(2); returns the rank after inserting every vector.
fn gf2_rank(vectors: impl IntoIterator<Item = u128>) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Rank of `H_d(K_s) -> H_d(K_t)` over GF(2), from cycle and boundary
/// spaces written in the face basis of `K_t`.
fn persistent_betti(ks: &SimplicialComplex, kt: &SimplicialComplex, d: usize) -> usize {
    let by_size = kt.faces_by_size();
    let layer = |k: usize| by_size.get(k).cloned().unwrap_or_default();
    let (lower, here, upper) = (layer(d), layer(d + 1), layer(d + 2));
    let pos = |faces: &[u64], f: u64| faces.iter().position(|&g| g == f).unwrap();
    let boundary = |f: u64, faces: &[u64]| -> u128 {
        if f.count_ones() < 2 {
            return 0;
        }
        (0..64)
            .filter(|v| f >> v & 1 == 1)
            .fold(0u128, |acc, v| acc | 1u128 << pos(faces, f & !(1 << v)))
    };
    // Cycles of K_s: kernel of the boundary map on its d-faces.
    let mut pivots: Vec<(u128, u128)> = Vec::new();
    let mut cycles: Vec<u128> = Vec::new();
    for &f in here.iter().filter(|&&f| ks.contains(f)) {
        let (mut b, mut combo) = (boundary(f, &lower), 1u128 << pos(&here, f));
        loop {
            let Some(&(pb, pc)) = pivots
                .iter()
                .find(|(pb, _)| b != 0 && pb.leading_zeros() == b.leading_zeros())
            else {
                break;
            };
            b ^= pb;
            combo ^= pc;
        }
        if b == 0 {
            cycles.push(combo);
        } else {
            pivots.push((b, combo));
        }
    }
    let boundaries: Vec<u128> = upper.iter().map(|&f| boundary(f, &here)).collect();
    let b_rank = gf2_rank(boundaries.iter().copied());
    let sum_rank = gf2_rank(cycles.iter().chain(&boundaries).copied());
    sum_rank - b_rank
}

/// Every persistent Betti number equals the number of diagram points born
/// by `s` and still alive at `t`.
fn check_step_homology(cf: &ComplexFiltration) -> Result<(), TestCaseError> {
    let d = persistence_diagram(cf, None);
    let steps = cf.steps();
    for s in 1..=steps.len() {
        for t in s..=steps.len() {
            let top = steps[t - 1].dim().unwrap_or(-1).max(0) as usize;
            for dim in 0..=top + 1 {
                let alive = d
                    .pairs(dim)
                    .iter()
                    .filter(|p| p.birth <= s && p.death.is_none_or(|x| x > t))
                    .count();
                let rank = persistent_betti(&steps[s - 1], &steps[t - 1], dim);
                prop_assert_eq!(alive, rank, "s {} t {} dim {}", s, t, dim);
            }
        }
        let k = &steps[s - 1];
        if !k.is_irrelevant() {
            let betti = betti_numbers(k, Field::Rationals).unwrap();
            for (dim, &b) in betti.iter().enumerate() {
                let alive = d
                    .pairs(dim)
                    .iter()
                    .filter(|p| p.birth <= s && p.death.is_none_or(|x| x > s))
                    .count();
                prop_assert_eq!(alive, b);
            }
        }
    }
    Ok(())
}
