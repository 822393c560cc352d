//! Cross-module invariants: self-similarity, checker equivalences, the
//! triangle bijection, and the Maximum/Minimum coupling, exercised on
//! presets and seeded random regular rules.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use grundylab::fractal::{
    associated_array, check_fractal, check_interspersion_array, check_interspersion_prefix,
    check_restriction_periodicity, from_column_sums, lambda_op, relabel, sequence_from_triangle,
    triangle_of,
};
use grundylab::maxnim::{canonical_rule, fast_grundy, first_instances, naive_grundy};
use grundylab::minnim::{
    fast_min_grundy, min_from_max, naive_min_grundy, pair_decode, pair_decode_via_chain,
    build_arrays, q_of, PairTable,
};
use grundylab::rule::RuleSequence;

fn random_regular_rule(rng: &mut StdRng, len: usize) -> RuleSequence {
    let mut table = vec![0u64];
    for n in 1..len {
        let step = rng.gen_range(0..=1u64);
        table.push(table[n - 1] + step);
    }
    RuleSequence::from_table(table).expect("regular tables are valid")
}

fn presets(horizon: u64) -> [RuleSequence; 3] {
    [
        RuleSequence::half(horizon),
        RuleSequence::sqrt(horizon),
        RuleSequence::pow2(horizon),
    ]
}

#[test]
fn fast_equals_naive_on_random_regular_rules() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..25 {
        let rule = random_regular_rule(&mut rng, 512);
        let fast = fast_grundy(&rule, 512).unwrap();
        let naive = naive_grundy(&rule, 512).unwrap();
        assert_eq!(fast.values(), naive.values());

        let fast_min = fast_min_grundy(&rule, 512).unwrap();
        let naive_min = naive_min_grundy(&rule, 512).unwrap();
        assert_eq!(fast_min.values(), naive_min.values());
    }
}

#[test]
fn lambda_fixes_grundy_sequences_of_regular_rules() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut rules: Vec<RuleSequence> = presets(2048).to_vec();
    for _ in 0..10 {
        rules.push(random_regular_rule(&mut rng, 2048));
    }
    for rule in rules {
        let g = fast_grundy(&rule, 2048).unwrap();
        let deleted = lambda_op(g.values());
        assert_eq!(
            &g.values()[..deleted.len()],
            &deleted[..],
            "rule {rule} is not a lambda fixed point"
        );
    }
}

#[test]
fn regularization_preserves_grundy_for_weakly_increasing_rules() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..25 {
        // Weakly increasing with occasional jumps of up to 3.
        let mut table = vec![0u64];
        for n in 1..256usize {
            let step = rng.gen_range(0..=3u64);
            table.push((table[n - 1] + step).min(n as u64));
        }
        let rule = RuleSequence::from_table(table).unwrap();
        let reg = rule.regularize(255).unwrap();
        assert!(reg.is_regular(255).unwrap());
        let a = naive_grundy(&rule, 256).unwrap();
        let b = naive_grundy(&reg, 256).unwrap();
        assert_eq!(a.values(), b.values());
    }
}

/// A fractal prefix, from the Grundy sequence of a random regular rule.
fn random_fractal_prefix(rng: &mut StdRng, len: usize) -> Vec<u64> {
    let rule = random_regular_rule(rng, len);
    fast_grundy(&rule, len).unwrap().into_values()
}

#[test]
fn fractal_check_agrees_with_canonical_rule_roundtrip() {
    let mut rng = StdRng::seed_from_u64(29);
    for round in 0..60 {
        let mut prefix = random_fractal_prefix(&mut rng, 192);
        if round % 3 != 0 {
            // Corrupt one position with an arbitrary small value.
            let pos = rng.gen_range(1..prefix.len());
            prefix[pos] = rng.gen_range(0..=prefix[pos] + 2);
        }
        let fractal = check_fractal(&prefix).passed();
        let reproduces = match canonical_rule(&prefix) {
            Ok(rule) => {
                naive_grundy(&rule, prefix.len()).unwrap().values() == prefix.as_slice()
            }
            Err(_) => false,
        };
        assert_eq!(fractal, reproduces, "prefix: {prefix:?}");
    }
}

#[test]
fn prefix_and_array_interspersion_checks_agree() {
    let mut rng = StdRng::seed_from_u64(31);
    for round in 0..60 {
        let mut prefix = random_fractal_prefix(&mut rng, 192);
        if round % 3 != 0 {
            // Corruption that keeps first instances intact: overwrite a
            // non-first position with a value already introduced.
            let firsts: BTreeSet<u64> = first_instances(&prefix).into_iter().collect();
            let candidates: Vec<usize> = (1..prefix.len())
                .filter(|&p| !firsts.contains(&(p as u64)))
                .collect();
            let pos = candidates[rng.gen_range(0..candidates.len())];
            let introduced = prefix[..pos].iter().copied().max().unwrap();
            prefix[pos] = rng.gen_range(0..=introduced);
        }
        let by_prefix = check_interspersion_prefix(&prefix).passed();
        let by_array = check_interspersion_array(&associated_array(&prefix)).passed();
        assert_eq!(by_prefix, by_array, "prefix: {prefix:?}");
    }
}

#[test]
fn restrictions_are_periodic_and_relabelings_are_interspersions() {
    let g = fast_grundy(&RuleSequence::half(1 << 11), 1 << 11)
        .unwrap()
        .into_values();
    let sqrt = fast_grundy(&RuleSequence::sqrt(1 << 11), 1 << 11)
        .unwrap()
        .into_values();

    for m_size in 2..=5usize {
        let m: BTreeSet<u64> = (0..m_size as u64).collect();
        let (_, period) = check_restriction_periodicity(&g, &m).unwrap();
        assert_eq!(period, m_size);
        let (_, period) = check_restriction_periodicity(&sqrt, &m).unwrap();
        assert_eq!(period, m_size);
    }

    // Infinite-style restrictions, relabeled.
    let max = *g.iter().max().unwrap();
    let evens: BTreeSet<u64> = (0..=max).filter(|v| v % 2 == 0).collect();
    let positives: BTreeSet<u64> = (1..=max).collect();
    let thirds: BTreeSet<u64> = (0..=max).filter(|v| v % 3 == 0).collect();
    for m in [evens, positives, thirds] {
        let relabeled = relabel(&g, &m);
        assert!(check_interspersion_prefix(&relabeled).passed());
        let relabeled = relabel(&sqrt, &m);
        assert!(check_interspersion_prefix(&relabeled).passed());
    }
}

#[test]
fn triangle_bijection_roundtrips() {
    let mut rng = StdRng::seed_from_u64(47);
    for _ in 0..50 {
        let prefix = random_fractal_prefix(&mut rng, 300);
        let triangle = triangle_of(&prefix).unwrap();

        // Column sums determine the triangle.
        let sums = triangle.column_sums();
        assert_eq!(from_column_sums(&sums).unwrap(), triangle);

        // The triangle determines the sequence back to its last first
        // instance, and that sequence has the same triangle.
        let determined = sums.last().map_or(1, |&c| c as usize + 2);
        let restored = sequence_from_triangle(&triangle, determined).unwrap();
        assert_eq!(&prefix[..determined], restored.as_slice());
        assert_eq!(triangle_of(&restored).unwrap(), triangle);
    }
}

#[test]
fn first_instance_positions_follow_column_sums() {
    let mut rng = StdRng::seed_from_u64(53);
    for _ in 0..20 {
        let prefix = random_fractal_prefix(&mut rng, 256);
        let triangle = triangle_of(&prefix).unwrap();
        let firsts = first_instances(&prefix);
        for (j, &cj) in triangle.column_sums().iter().enumerate() {
            assert_eq!(firsts[j + 1], cj + 1);
        }
    }
}

#[test]
fn pair_bijection_holds_for_random_regular_rules() {
    let mut rng = StdRng::seed_from_u64(61);
    let mut rules: Vec<RuleSequence> = vec![
        RuleSequence::half(2048),
        RuleSequence::sqrt(2048),
        RuleSequence::pow2(2048).regularize(2047).unwrap(),
    ];
    for _ in 0..10 {
        rules.push(random_regular_rule(&mut rng, 2048));
    }
    for rule in rules {
        let table = PairTable::build(&rule, 2048).unwrap();
        assert_eq!(table.injectivity_witness(), None, "rule {rule}");
        assert_eq!(table.surjectivity_witness(), None, "rule {rule}");
    }
}

#[test]
fn left_justified_pair_array_is_an_interspersion() {
    for rule in [RuleSequence::half(4096), RuleSequence::sqrt(4096)] {
        let (_, left) = build_arrays(&rule, 6, 8).unwrap();
        assert!(check_interspersion_array(&left).passed(), "rule {rule}");
    }
}

#[test]
fn decode_chain_agrees_with_scan_on_random_rules() {
    let mut rng = StdRng::seed_from_u64(67);
    for _ in 0..5 {
        let rule = random_regular_rule(&mut rng, 1024);
        let g = fast_grundy(&rule, 512).unwrap();
        let h = fast_min_grundy(&rule, 512).unwrap();
        for n in (0..512).step_by(37) {
            let (i, j) = (g.values()[n], h.values()[n]);
            assert_eq!(pair_decode(&rule, i, j, 1023).unwrap(), n as u64);
            assert_eq!(pair_decode_via_chain(&rule, i, j, 1023).unwrap(), n as u64);
        }
    }
}

#[test]
fn q_disperses_max_values_and_counts_min_values() {
    let mut rng = StdRng::seed_from_u64(71);
    for _ in 0..10 {
        let rule = random_regular_rule(&mut rng, 1024);
        let g = fast_grundy(&rule, 1024).unwrap();
        let h = fast_min_grundy(&rule, 1024).unwrap();

        // Dispersion: q preserves Maximum-Nim values.
        for n in 0..512u64 {
            if let Ok(q) = q_of(&rule, n) {
                if (q as usize) < 1024 {
                    assert_eq!(g.values()[q as usize], g.values()[n as usize]);
                }
            }
        }

        // Coupling: h counts the zeros of g.
        assert_eq!(min_from_max(&g).values(), h.values());
    }
}

#[test]
fn row_chains_follow_q_empirically() {
    // Within each row of the pair array, consecutive entries look like
    // q-iterates; observed on presets, asserted nowhere else.
    for rule in [RuleSequence::half(4096), RuleSequence::sqrt(4096)] {
        let (prime, _) = build_arrays(&rule, 5, 7).unwrap();
        for row in &prime.rows {
            for w in row.entries.windows(2) {
                assert_eq!(q_of(&rule, w[0]).unwrap(), w[1], "rule {rule}");
            }
        }
    }
}
