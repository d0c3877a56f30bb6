//! Level quotients: orders, element orders, transitivity, Hausdorff
//! sequences.

use num_bigint::BigUint;
use num_rational::BigRational;
use treenv::exact::BigCount;
use treenv::permgrp::*;
use treenv::selfsim::{builtin_group, parse_group_file, zoo_names};

fn caps() -> LevelCaps {
    LevelCaps::default()
}

fn rational(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn level_permutation_examples() {
    let g = builtin_group("grigorchuk").unwrap();
    let a = g.parse_word("a").unwrap();
    let p = level_permutation(&g, &a, 2).unwrap();
    // the involution (11 <-> 21)(12 <-> 22)
    assert_eq!(p.mapping(), &[2, 3, 0, 1]);

    let od = builtin_group("odometer").unwrap();
    let tau = od.parse_word("tau").unwrap();
    let p = level_permutation(&od, &tau, 3).unwrap();
    assert_eq!(p.cycle_lengths(), vec![8]);
}

#[test]
fn order_examples() {
    let g = builtin_group("grigorchuk").unwrap();
    assert_eq!(
        group_order_at_level(&g, 3, &caps()).unwrap(),
        BigCount::from(128u32)
    );
    let od = builtin_group("odometer").unwrap();
    for n in 1..=8 {
        assert_eq!(
            group_order_at_level(&od, n, &caps()).unwrap(),
            BigUint::from(2u32).pow(n as u32)
        );
    }
    // computed value; the level-shifted printed form would claim 2187,
    // impossible inside Sym(9) whose Sylow 3-subgroup has order 81
    let gs = builtin_group("gupta_sidki").unwrap();
    assert_eq!(
        group_order_at_level(&gs, 2, &caps()).unwrap(),
        BigCount::from(27u32)
    );
    assert_eq!(
        group_order_at_level(&gs, 3, &caps()).unwrap(),
        BigCount::from(2187u32)
    );
}

#[test]
fn degree_cap_guard() {
    let g = builtin_group("grigorchuk").unwrap();
    let err = group_order_at_level(&g, 13, &caps()).unwrap_err();
    assert!(matches!(err, treenv::Error::ResourceLimit(_)));
    let wide = LevelCaps { max_degree: 1 << 14 };
    assert!(group_order_at_level(&g, 13, &wide).is_ok());
}

#[test]
fn element_order_examples() {
    let g = builtin_group("grigorchuk").unwrap();
    let ad = g.parse_word("ad").unwrap();
    for n in 1..=8 {
        let o = element_order_at_level(&g, &ad, n, &caps()).unwrap();
        assert!(
            (BigCount::from(4u32) % &o).bits() == 0,
            "order of ad at level {n} is {o}, must divide 4"
        );
    }
    assert_eq!(
        element_order_at_level(&g, &g.parse_word("1").unwrap(), 5, &caps()).unwrap(),
        BigCount::from(1u32)
    );
    let od = builtin_group("odometer").unwrap();
    let tau = od.parse_word("tau").unwrap();
    for n in 1..=9 {
        assert_eq!(
            element_order_at_level(&od, &tau, n, &caps()).unwrap(),
            BigUint::from(2u32).pow(n as u32)
        );
    }
}

#[test]
fn transitivity() {
    for name in ["grigorchuk", "lamplighter"] {
        let rec = builtin_group(name).unwrap();
        for n in 1..=8 {
            assert!(is_level_transitive(&rec, n, &caps()).unwrap(), "{name}@{n}");
        }
    }
    // one generator acting as the identity
    let trivial = parse_group_file("trivial", "alphabet 2\ngen e - () 1 1\n").unwrap();
    assert!(!is_level_transitive(&trivial, 1, &caps()).unwrap());
}

#[test]
fn hausdorff_sequences() {
    let g = builtin_group("grigorchuk").unwrap();
    let seq = group_hausdorff_sequence(&g, 2, 8, &caps()).unwrap();
    // (5*2^(n-3) + 2)/(2^n - 1) for n >= 3
    assert_eq!(seq[4], rational(22, 31));
    assert_eq!(seq[7], rational(162, 255)); // = 54/85 in lowest terms
    assert_eq!(seq[7], rational(54, 85));
    for n in 3..=8usize {
        let e = 5 * (1i64 << (n - 3)) + 2;
        assert_eq!(seq[n - 1], rational(e, (1i64 << n) - 1), "n={n}");
    }

    let od = builtin_group("odometer").unwrap();
    let seq = group_hausdorff_sequence(&od, 2, 10, &caps()).unwrap();
    for n in 1..=10usize {
        assert_eq!(seq[n - 1], rational(n as i64, (1i64 << n) - 1));
    }

    // q != p rejected
    assert!(group_hausdorff_sequence(&g, 3, 3, &caps()).is_err());
    // a transposition inside Sym(3) is not in the 3-cycle closure
    let bad = parse_group_file("swap3", "alphabet 3\ngen s - (1,2) 1 1 1\n").unwrap();
    let err = group_hausdorff_sequence(&bad, 3, 2, &caps()).unwrap_err();
    assert!(matches!(err, treenv::Error::InvalidArgument(_)), "{err}");
}

#[test]
fn orders_monotone_and_divisible() {
    for name in zoo_names() {
        let rec = builtin_group(name).unwrap();
        let top = if rec.alphabet().size() == 2 { 7 } else { 5 };
        let mut prev = BigCount::from(1u32);
        for n in 1..=top {
            let o = group_order_at_level(&rec, n, &caps()).unwrap();
            assert!(o >= prev, "{name}@{n}");
            assert_eq!(&o % &prev, BigCount::from(0u32), "{name}@{n} divisibility");
            prev = o;
        }
    }
}

#[test]
fn bsgs_matches_exhaustive_closure_on_small_cases() {
    // degree <= 64 cases whose closure actually fits in memory
    let cases: &[(&str, usize)] = &[
        ("odometer", 6),
        ("grigorchuk", 3),
        ("gupta_sidki", 2),
        ("fabrykowski_gupta_bg", 2),
        ("bsv", 4),
        ("basilica", 4),
        ("lamplighter", 4),
    ];
    for &(name, max_level) in cases {
        let rec = builtin_group(name).unwrap();
        for n in 1..=max_level {
            let fast = group_order_at_level(&rec, n, &caps()).unwrap();
            let slow = exhaustive_order(&rec, n, 1 << 16, &caps()).unwrap();
            assert_eq!(fast, slow, "{name}@{n}");
        }
    }
}
