use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stosskit::ideal::{lcm_lattice, realize};
use stosskit::lattice::Lattice;
use stosskit::simplicial::stoss_betti_formula;
use stosskit::stoss::{amalgamate, detect_amalgamation, enumerate_stoss, maximal_lattice};
use stosskit::{Complex, Field, VertexSet};

fn corpus(max_k: usize) -> Vec<Complex> {
    let mut out = Vec::new();
    for k in 2..=max_k {
        for d in 0..=(k as i32 - 2) {
            out.extend(enumerate_stoss(k, d, Field::Rational).unwrap());
        }
    }
    out
}

/// Intersection closure of `seeds` together with `∅` and the top.
fn closure(k: usize, seeds: &[VertexSet]) -> Vec<VertexSet> {
    let mut family: Vec<VertexSet> = vec![VertexSet::EMPTY, VertexSet::full(k)];
    family.extend_from_slice(seeds);
    loop {
        let mut grew = false;
        for i in 0..family.len() {
            for j in 0..i {
                let m = family[i].intersection(family[j]);
                if !family.contains(&m) {
                    family.push(m);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    family
}

#[test]
fn hochster_betti_matches_closed_formula() {
    for c in corpus(6) {
        let k = c.k();
        let p = (c.dim().unwrap() + 1) as usize;
        for field in [Field::Rational, Field::F2] {
            if !c.is_acyclic(field) {
                continue;
            }
            let table = c.hochster_graded_betti(field);
            for (&(i, j), &b) in &table {
                if i == 0 {
                    assert_eq!((j, b), (0, 1));
                } else {
                    assert_eq!(j, i + p - 1, "{:?}", c.facets());
                    assert_eq!(b as u64, stoss_betti_formula(k, p, i));
                }
            }
            for i in 1..=k - p {
                assert_eq!(table.get(&(i, i + p - 1)).copied().unwrap_or(0) as u64, stoss_betti_formula(k, p, i));
            }
        }
    }
}

#[test]
fn path_on_five_vertices() {
    let path = Complex::from_digits(5, "12 23 34 45").unwrap();
    let table = path.hochster_graded_betti(Field::Rational);
    let nonzero: Vec<((usize, usize), usize)> = table.into_iter().filter(|(ij, _)| ij.0 > 0).collect();
    assert_eq!(nonzero, vec![((1, 2), 6), ((2, 3), 8), ((3, 4), 3)]);
}

#[test]
fn realized_ideals_recover_their_lattices() {
    // a single point on k >= 2 vertices has a non-atomistic L_Δ
    for c in corpus(6).into_iter().filter(|c| c.dim() > Some(0)) {
        let m = maximal_lattice(&c, Field::Rational).unwrap();
        let back = lcm_lattice(&realize(&m.lattice).unwrap()).unwrap().lattice;
        assert!(back.is_isomorphic(&m.lattice).unwrap(), "{:?}", c.facets());
    }
}

#[test]
fn alexander_dual_is_stoss_in_the_dual_dimension() {
    for c in corpus(6) {
        let k = c.k() as i32;
        let d = c.dim().unwrap();
        let dual = c.alexander_dual();
        assert_eq!(dual.alexander_dual(), c);
        assert!(dual.is_stoss(k - d - 2, Field::Rational), "{:?}", c.facets());
    }
}

#[test]
fn amalgamation_betti_additivity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k = 5;
        let mut seeds: Vec<VertexSet> = (0..k).map(VertexSet::singleton).collect();
        for _ in 0..rng.gen_range(0..6) {
            seeds.push(VertexSet(rng.gen_range(1..31)));
        }
        let f1 = closure(k, &seeds);
        let picked: Vec<VertexSet> = f1.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        let f2 = closure(k, &picked);
        let l1 = Lattice::from_elements(k, f1).unwrap();
        let l2 = Lattice::from_elements(k, f2).unwrap();
        let joined = amalgamate(&l1, &l2).unwrap();
        let b = |l: &Lattice| l.lattice_betti(Field::Rational).unwrap().totals;
        let (bj, b1, b2) = (b(&joined), b(&l1), b(&l2));
        for i in 0..=7 {
            let shifted = if i == 0 { 0 } else { b2.get(i - 1) };
            assert_eq!(bj.get(i), b1.get(i) + shifted, "i = {i}");
        }
    }
}

#[test]
fn detected_splits_reassemble() {
    let mut splits = 0;
    for c in corpus(6).into_iter().filter(|c| c.dim() > Some(0)) {
        let l = maximal_lattice(&c, Field::Rational).unwrap().lattice;
        if let Some(s) = detect_amalgamation(&l).unwrap() {
            assert_eq!(s.reassemble().unwrap(), l);
            splits += 1;
        }
    }
    assert!(splits > 0);
}

fn arb_complex() -> impl Strategy<Value = Complex> {
    (1usize..=6).prop_flat_map(|k| {
        prop::collection::vec(1u16..(1 << k), 0..8)
            .prop_map(move |fs| Complex::new(k, fs.into_iter().map(VertexSet)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(c in arb_complex()) {
        prop_assert_eq!(c.alexander_dual().alexander_dual(), c);
    }

    #[test]
    fn canonical_form_ignores_labels(c in arb_complex(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..c.k()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let moved = c.permute(&perm).unwrap();
        prop_assert_eq!(moved.canonicalize().unwrap(), c.canonicalize().unwrap());
    }

    #[test]
    fn crosscut_and_order_complex_agree(seeds in prop::collection::vec(1u16..63, 0..8)) {
        let k = 6;
        let mut s: Vec<VertexSet> = (0..k).map(VertexSet::singleton).collect();
        s.extend(seeds.into_iter().map(VertexSet));
        let l = Lattice::from_elements(k, closure(k, &s)).unwrap();
        // lattice_betti errors if the two routes disagree anywhere
        prop_assert!(l.lattice_betti(Field::Rational).is_ok());
        prop_assert!(l.lattice_betti(Field::F2).is_ok());
    }
}
