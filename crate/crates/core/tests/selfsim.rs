//! Section/action calculus and zoo behavior.

use proptest::prelude::*;
use treenv::selfsim::*;
use treenv::Vertex;

fn grig() -> WreathRecursion {
    builtin_group("grigorchuk").unwrap()
}

#[test]
fn zoo_matches_printed_recursions() {
    let g = grig();
    assert_eq!(g.alphabet().size(), 2);
    assert_eq!(g.generators().len(), 4);
    let d = &g.generators()[3];
    assert!(d.involutive);
    assert_eq!(d.perm, vec![0, 1]); // trivial root permutation
    assert!(d.sections[0].is_empty());
    assert_eq!(g.word_to_string(&d.sections[1]), "b");

    let b = builtin_group("basilica").unwrap();
    let a = &b.generators()[0];
    assert_eq!(a.perm, vec![1, 0]);
    assert!(a.sections[0].is_empty());
    assert_eq!(b.word_to_string(&a.sections[1]), "b");

    let o = builtin_group("odometer").unwrap();
    assert_eq!(o.generators().len(), 1);
    assert_eq!(o.word_to_string(&o.generators()[0].sections[1]), "tau");

    let gs = builtin_group("gupta_sidki").unwrap();
    assert!(!gs.generators()[1].involutive);
    assert_eq!(gs.word_to_string(&gs.generators()[1].sections[2]), "x'");

    assert!(builtin_group("nosuch").is_err());
}

#[test]
fn section_examples() {
    let g = grig();
    let b = g.parse_word("b").unwrap();
    assert_eq!(
        g.section(&b, &Vertex::parse("2").unwrap()).unwrap(),
        g.parse_word("c").unwrap()
    );
    let bd = g.parse_word("bd").unwrap();
    assert_eq!(g.section(&bd, &Vertex::root()).unwrap(), bd);
    assert_eq!(
        g.section(&bd, &Vertex::parse("2").unwrap()).unwrap(),
        g.parse_word("cb").unwrap()
    );
    // out-of-range letter
    assert!(g.section(&b, &Vertex::new(vec![2])).is_err());
}

#[test]
fn act_examples() {
    let g = grig();
    let a = g.parse_word("a").unwrap();
    assert_eq!(
        g.act(&a, &Vertex::parse("1,1,2").unwrap()).unwrap(),
        Vertex::parse("2,1,2").unwrap()
    );
    let id = GroupWord::identity();
    for idx in 0..16 {
        let v = Vertex::from_index(idx, 2, 4);
        assert_eq!(g.act(&id, &v).unwrap(), v);
    }
    let d = g.parse_word("d").unwrap();
    assert_eq!(
        g.act(&d, &Vertex::parse("2,1").unwrap()).unwrap(),
        Vertex::parse("2,1").unwrap()
    );
}

#[test]
fn involutive_generators_square_to_identity_up_to_level_8() {
    for name in zoo_names() {
        let rec = builtin_group(name).unwrap();
        rec.validate_involutive(8.min(match rec.alphabet().size() {
            2 => 8,
            _ => 7,
        }))
        .unwrap();
        for (i, gen) in rec.generators().iter().enumerate() {
            if !gen.involutive {
                continue;
            }
            let sym = GeneratorSymbol::new(i as u16);
            let g2 = rec.mul_words(
                &rec.word_from_symbols([sym]),
                &rec.word_from_symbols([sym]),
            );
            // free reduction already kills g*g for involutive g
            assert!(g2.is_empty(), "{name}:{}", gen.name);
            for n in 1..=6 {
                for idx in 0..rec.alphabet().size().pow(n as u32) {
                    let v = Vertex::from_index(idx, rec.alphabet().size(), n);
                    let w = rec.word_from_symbols([sym]);
                    let once = rec.act(&w, &v).unwrap();
                    let twice = rec.act(&w, &once).unwrap();
                    assert_eq!(twice, v, "{name}:{} at {v}", gen.name);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    /// (g@v)@u = g@(vu) and (gh)@v = (g@v) (h@(v^g)), plus the action
    /// consistency act(w, v.x) = act(w, v).(x^(w@v)).
    #[test]
    fn bimodule_identities(
        seed in any::<u64>(),
        name_idx in 0usize..7,
        len_a in 0usize..12,
        len_b in 0usize..12,
        level_v in 0usize..4,
        level_u in 0usize..3,
    ) {
        use rand::{Rng, SeedableRng};
        let rec = builtin_group(zoo_names()[name_idx]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = rec.alphabet().size();
        let mut rand_word = |len: usize| {
            let syms: Vec<GeneratorSymbol> = (0..len)
                .map(|_| GeneratorSymbol {
                    index: rng.gen_range(0..rec.generators().len()) as u16,
                    inverse: rng.gen_bool(0.5),
                })
                .collect();
            rec.word_from_symbols(syms)
        };
        let g = rand_word(len_a);
        let h = rand_word(len_b);
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b9);
        let v = Vertex::new((0..level_v).map(|_| rng2.gen_range(0..q) as u8).collect());
        let u = Vertex::new((0..level_u).map(|_| rng2.gen_range(0..q) as u8).collect());

        // (g@v)@u = g@(vu)
        let lhs = rec.section(&rec.section(&g, &v).unwrap(), &u).unwrap();
        let vu = Vertex::new([v.letters(), u.letters()].concat());
        prop_assert_eq!(lhs, rec.section(&g, &vu).unwrap());

        // (gh)@v = (g@v)(h@(v^g))
        let gh = rec.mul_words(&g, &h);
        let lhs = rec.section(&gh, &v).unwrap();
        let rhs = rec.mul_words(
            &rec.section(&g, &v).unwrap(),
            &rec.section(&h, &rec.act(&g, &v).unwrap()).unwrap(),
        );
        prop_assert_eq!(lhs, rhs);

        // v^(gh) = (v^g)^h
        prop_assert_eq!(
            rec.act(&gh, &v).unwrap(),
            rec.act(&h, &rec.act(&g, &v).unwrap()).unwrap()
        );

        // act on an extension agrees with section semantics:
        // (v.x)^g = (v^g).(x^(g@v))
        let x = rng2.gen_range(0..q) as u8;
        let vx = Vertex::new([v.letters(), &[x]].concat());
        let img = rec.act(&g, &vx).unwrap();
        let head = rec.act(&g, &v).unwrap();
        let tail = rec.act(&rec.section(&g, &v).unwrap(), &Vertex::new(vec![x])).unwrap();
        prop_assert_eq!(img, Vertex::new([head.letters(), tail.letters()].concat()));
    }

    /// Free reduction is confluent: reducing symbol pushes in any
    /// (randomized) insertion order gives the canonical form.
    #[test]
    fn free_reduction_confluent(seed in any::<u64>(), len in 0usize..24) {
        use rand::{Rng, SeedableRng};
        let rec = builtin_group("grigorchuk").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let syms: Vec<GeneratorSymbol> = (0..len)
            .map(|_| GeneratorSymbol::new(rng.gen_range(0..4) as u16))
            .collect();
        let canonical = rec.word_from_symbols(syms.iter().copied());
        // reduce by repeatedly cancelling a random adjacent cancellable pair
        let mut work: Vec<GeneratorSymbol> = syms;
        loop {
            let cancellable: Vec<usize> = work
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0].index == w[1].index)
                .map(|(i, _)| i)
                .collect();
            if cancellable.is_empty() {
                break;
            }
            let at = cancellable[rng.gen_range(0..cancellable.len())];
            work.drain(at..at + 2);
        }
        let via_random = rec.word_from_symbols(work);
        prop_assert_eq!(canonical, via_random);
    }
}
