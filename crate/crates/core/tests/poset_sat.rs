use gf2bell::poset::{encode_poly, export_dot, hasse_edges, SubsetMask};
use gf2bell::satcheck::{brute_force_sat, count_models, expand_contradiction, CnfFormula, Literal};
use gf2bell::Caps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn encoding_is_a_bijection_onto_low_degree_polys() {
    let images: std::collections::BTreeSet<u64> = SubsetMask::all().map(|s| encode_poly(s).bits()).collect();
    assert_eq!(images, (0..8).collect());
}

#[test]
fn complement_duality() {
    for s in SubsetMask::all() {
        assert_eq!(encode_poly(s) + encode_poly(s.complement()), "x^2+x+1".parse().unwrap());
        for t in SubsetMask::all() {
            assert_eq!(s.is_subset_of(t), t.complement().is_subset_of(s.complement()));
        }
    }
}

#[test]
fn dot_export_matches_golden() {
    let golden = include_str!("golden/hasse.dot");
    assert_eq!(export_dot(&hasse_edges()), golden);
}

fn random_formula(rng: &mut ChaCha8Rng) -> CnfFormula {
    let vars = rng.random_range(1..=8u32);
    let clauses = (0..rng.random_range(1..=12))
        .map(|_| {
            (0..rng.random_range(1..=3))
                .map(|_| Literal { var: rng.random_range(0..vars), positive: rng.random() })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, clauses).unwrap()
}

#[test]
fn solver_agrees_with_clause_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let caps = Caps::default();
    for _ in 0..1000 {
        let f = random_formula(&mut rng);
        // independent oracle: evaluate clause by clause on the raw literals
        let first = (0..1u64 << f.variable_count()).find(|&a| {
            f.clauses().iter().all(|c| c.iter().any(|l| ((a >> l.var) & 1 == 1) == l.positive))
        });
        let out = brute_force_sat(&f, &caps).unwrap();
        assert_eq!(out.satisfiable, first.is_some(), "{f}");
        if let (Some(w), Some(a)) = (out.witness, first) {
            assert!(w.iter().enumerate().all(|(i, &b)| b == ((a >> i) & 1 == 1)));
        }
        let parsed = CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap();
        assert_eq!(parsed, f);
    }
}

#[test]
fn contradictions_are_unsat_and_deletions_unique() {
    let caps = Caps::default();
    for n in 1..=12 {
        let f = expand_contradiction(n).unwrap();
        assert_eq!(f.clauses().len(), 1 << n);
        assert!(!brute_force_sat(&f, &caps).unwrap().satisfiable);
        if n <= 6 {
            for k in 0..f.clauses().len() {
                assert_eq!(count_models(&f.without_clause(k), &caps).unwrap(), 1);
            }
        }
    }
}

#[test]
fn sat_cap_is_enforced() {
    let caps = Caps { sat_variables: 4, ..Caps::default() };
    assert!(brute_force_sat(&expand_contradiction(5).unwrap(), &caps).is_err());
}

#[cfg(feature = "parallel")]
#[test]
fn parallel_and_sequential_backends_agree() {
    use gf2bell::satcheck::{brute_force_sat_parallel, brute_force_sat_sequential};
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let caps = Caps::default();
    for _ in 0..300 {
        let f = random_formula(&mut rng);
        assert_eq!(brute_force_sat_parallel(&f, &caps).unwrap(), brute_force_sat_sequential(&f, &caps).unwrap());
    }
}
