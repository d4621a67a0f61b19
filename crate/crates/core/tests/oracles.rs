use std::time::Instant;

use metric_dim::embed::{embed_sequence, kmers, SequenceAlphabet};
use metric_dim::generators::{self, RngSeed};
use metric_dim::hamming::{
    augment, verify_hamming_resolving, HammingResolvingSet, HammingSpace, Verdict,
    VerifyMode,
};
use metric_dim::ich::ich;
use metric_dim::resolve::{
    is_resolving, is_resolving_in_graph, min_resolving_bruteforce, min_resolving_bruteforce_with_cap, phi,
};
use metric_dim::tree::{classify_tree, tree_metric_dimension};
use metric_dim::{apsp, Error};

fn labels(space: &HammingSpace) -> Vec<String> {
    (0..space.vertex_count().unwrap())
        .map(|i| space.decode(&space.word_at(i)))
        .collect()
}

#[test]
fn large_random_trees_verify() {
    for (n, seed) in [(100, 1), (1000, 2), (10_000, 3)] {
        let t = generators::uniform_random_tree(n, RngSeed(seed)).unwrap();
        let b = tree_metric_dimension(&t).unwrap();
        assert!(b.verified);
        assert!(is_resolving_in_graph(&t, &b.vertices).unwrap());
    }
}

#[test]
fn tree_classification_is_roughly_linear() {
    let time = |n: usize| {
        let t = generators::uniform_random_tree(n, RngSeed(n as u64)).unwrap();
        let start = Instant::now();
        for _ in 0..5 {
            classify_tree(&t).unwrap();
        }
        start.elapsed().as_secs_f64()
    };
    time(10_000);
    let small = time(10_000);
    let large = time(40_000);
    // linear growth gives 4x; quadratic would give 16x
    assert!(large / small < 10.0, "10k: {small}, 40k: {large}");
}

#[test]
fn non_trees_are_rejected() {
    assert!(matches!(classify_tree(&generators::cycle(5).unwrap()), Err(Error::NotATree(_))));
    assert!(matches!(classify_tree(&generators::empty(3).unwrap()), Err(Error::NotATree(_))));
    let weighted = metric_dim::build_graph(3, [(0, 1, Some(2)), (1, 2, None)]).unwrap();
    assert!(matches!(classify_tree(&weighted), Err(Error::NotATree(_))));
}

#[test]
fn ich_sets_verify_on_implicit_spaces() {
    for (k, a) in [(2, 3), (3, 2), (3, 3), (2, 6), (4, 3)] {
        let space = HammingSpace::new(k, a).unwrap();
        let all = labels(&space);
        let s = ich(&apsp(&generators::hamming_graph(k, a).unwrap())).unwrap();
        let set = HammingResolvingSet::new(space, s.vertices.iter().map(|&v| all[v].clone()).collect()).unwrap();
        assert_eq!(verify_hamming_resolving(&set, VerifyMode::default()).unwrap(), Verdict::Resolving);
    }
}

#[test]
fn implicit_verifier_agrees_with_materialized_check() {
    let space = HammingSpace::new(2, 4).unwrap();
    let all = labels(&space);
    let d = apsp(&generators::hamming_graph(2, 4).unwrap());
    // every 3-subset, resolving or not
    for a in 0..16 {
        for b in a + 1..16 {
            for c in b + 1..16 {
                let set = HammingResolvingSet::new(space.clone(), vec![all[a].clone(), all[b].clone(), all[c].clone()])
                    .unwrap();
                let verdict = verify_hamming_resolving(&set, VerifyMode::default()).unwrap();
                assert_eq!(verdict == Verdict::Resolving, is_resolving(&d, &[a, b, c]).unwrap());
                if let Verdict::Counterexample { u, v } = &verdict {
                    assert_eq!(set.signature(u).unwrap(), set.signature(v).unwrap());
                    // exhaustive mode reports the lexicographically smallest pair
                    let first = (0..16)
                        .flat_map(|x| (x + 1..16).map(move |y| (x, y)))
                        .find(|&(x, y)| set.signature(&all[x]).unwrap() == set.signature(&all[y]).unwrap())
                        .unwrap();
                    assert_eq!((u, v), (&all[first.0], &all[first.1]));
                }
            }
        }
    }
}

/// A resolving set of `H_{2,a}` must leave at most one row (and one column)
/// empty: two empty rows `i`, `i'` make `(i,j)` and `(i',j)` collide.
#[test]
fn resolving_sets_of_h2_cover_all_but_one_row() {
    for a in 3..=4 {
        let d = apsp(&generators::hamming_graph(2, a).unwrap());
        let n = a * a;
        let mut resolving = 0;
        for mask in 0u32..1 << n {
            if (mask.count_ones() as usize) > 2 * (2 * a - 1) / 3 + 1 {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.is_empty() || !is_resolving(&d, &set).unwrap() {
                continue;
            }
            resolving += 1;
            let rows = set.iter().map(|v| v / a).collect::<std::collections::BTreeSet<_>>();
            let cols = set.iter().map(|v| v % a).collect::<std::collections::BTreeSet<_>>();
            assert!(rows.len() >= a - 1 && cols.len() >= a - 1, "a={a} set={set:?}");
        }
        assert!(resolving > 0);
    }
}

#[test]
fn embedding_matches_phi_on_materialized_space() {
    for (alphabet, k) in [(SequenceAlphabet::dna(), 2), (SequenceAlphabet::dna(), 3), (SequenceAlphabet::custom("xyz").unwrap(), 4)] {
        let space = alphabet.space(k).unwrap();
        let all = labels(&space);
        let d = apsp(&generators::hamming_graph(k, alphabet.a()).unwrap());
        let basis = ich(&d).unwrap();
        let set = HammingResolvingSet::new(space, basis.vertices.iter().map(|&v| all[v].clone()).collect())
            .unwrap()
            .verified(VerifyMode::default())
            .unwrap()
            .0;
        let sigs = phi(&d, &basis.vertices).unwrap();
        let sequence: String = all.concat();
        let e = embed_sequence("s", &sequence, k, &alphabet, &set).unwrap();
        assert_eq!(e.vectors.len(), sequence.len() - k + 1);
        for (i, word) in all.iter().enumerate() {
            let v = &e.vectors[i * k];
            let want: Vec<usize> = sigs[i].coords.iter().map(|&x| x as usize).collect();
            assert_eq!(v, &want, "{word}");
            assert!(v.iter().all(|&x| x <= k));
        }
    }
}

#[test]
fn embedding_injective_on_all_kmers() {
    let dna = SequenceAlphabet::dna();
    for k in 1..=6 {
        let space = dna.space(k).unwrap();
        let mut set = HammingResolvingSet::new(HammingSpace::with_alphabet(1, dna.symbols.clone()).unwrap(), vec!["A".into(), "C".into(), "G".into()])
            .unwrap()
            .verified(VerifyMode::default())
            .unwrap()
            .0;
        while set.space.k() < k {
            set = augment(&set, VerifyMode::default()).unwrap();
        }
        assert_eq!(set.space, space);
        let mut seen = std::collections::HashSet::new();
        for w in labels(&space) {
            assert!(seen.insert(set.signature(&w).unwrap()), "k={k} {w}");
        }
    }
}

#[test]
fn embedding_rejects_bad_input() {
    let dna = SequenceAlphabet::dna();
    let set = HammingResolvingSet::new(dna.space(2).unwrap(), vec!["AA".into()]).unwrap();
    assert!(matches!(embed_sequence("s", "ACGT", 2, &dna, &set), Err(Error::Unverified)));
    assert!(matches!(kmers("ACNT", 2, &dna), Err(Error::ForeignSymbol('N'))));
    assert!(matches!(kmers("A", 2, &dna), Err(Error::ShortSequence { len: 1, k: 2 })));
    let protein = SequenceAlphabet::protein();
    assert!(matches!(embed_sequence("s", "ACDE", 2, &protein, &set), Err(Error::SpaceMismatch { .. })));
}

#[test]
fn brute_force_cap_is_enforced() {
    let d = apsp(&generators::path(40).unwrap());
    assert!(matches!(min_resolving_bruteforce(&d), Err(Error::CapExceeded { n: 40, cap: 32 })));
}

#[test]
fn six_cube_dimension_is_five() {
    let b = min_resolving_bruteforce_with_cap(&apsp(&generators::hypercube(6).unwrap()), 64).unwrap();
    assert_eq!(b.len(), 5);
}
