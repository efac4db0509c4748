use boson_core::got::{convert_ordering, got_transform, Block, BlockSequence, GotEngine};
use boson_core::kernel::rat;
use boson_core::operator::{word_antinormal_order, word_normal_order, Letter};
use boson_core::{
    Bindings, FormalSeries, Monomial, MultiPoly, OrderedMonomial, OrderedPolynomial, OrderingParam,
    Rational, Symbol, Word,
};
use proptest::prelude::*;

const SYMBOLS: [&str; 3] = ["s", "t", "u"];

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..=2, 3).prop_map(|exps| {
        let mut m = Monomial::one();
        for (sym, e) in SYMBOLS.iter().zip(exps) {
            m = m.mul(&Monomial::power(Symbol::new(*sym), e));
        }
        m
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((monomial(), rational()), 0..5).prop_map(MultiPoly::from_terms)
}

fn concrete_ordering() -> impl Strategy<Value = OrderingParam> {
    prop::sample::select(vec![
        rat(-1, 1),
        rat(-1, 2),
        rat(0, 1),
        rat(1, 2),
        rat(1, 1),
    ])
    .prop_map(|v| OrderingParam::value(v).unwrap())
}

fn ordered_poly() -> impl Strategy<Value = OrderedPolynomial> {
    (
        concrete_ordering(),
        prop::collection::vec(((0u32..4, 0u32..4), poly()), 0..5),
    )
        .prop_map(|(ordering, terms)| {
            OrderedPolynomial::from_terms(
                ordering,
                terms
                    .into_iter()
                    .map(|((m, n), c)| (OrderedMonomial::new(m, n), c)),
            )
        })
}

fn bindings() -> impl Strategy<Value = Bindings> {
    prop::collection::vec(rational(), 3).prop_map(|vals| {
        SYMBOLS
            .iter()
            .zip(vals)
            .map(|(s, v)| (Symbol::new(*s), v))
            .collect()
    })
}

/// Up to three blocks, each `(dag, ann, ordering index)`, with a small total
/// letter count.
fn blocks(max_blocks: usize) -> impl Strategy<Value = Vec<(u32, u32, usize)>> {
    prop::collection::vec((0u32..3, 0u32..3, 0usize..5), 1..=max_blocks)
        .prop_filter("letter budget", |bs| {
            bs.iter().map(|(m, n, _)| m + n).sum::<u32>() <= 8
        })
}

const VALUES: [(i64, i64); 5] = [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)];

fn value(i: usize) -> OrderingParam {
    OrderingParam::value(rat(VALUES[i].0, VALUES[i].1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &MultiPoly::zero()).terms().next().is_none());
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), env in bindings()) {
        let ea = a.eval(&env).unwrap();
        let eb = b.eval(&env).unwrap();
        prop_assert_eq!((&a * &b).eval(&env).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&env).unwrap(), ea + eb);
    }

    #[test]
    fn exp_of_negation_is_inverse(coeffs in prop::collection::vec(poly(), 1..6)) {
        let order = coeffs.len();
        let a = FormalSeries::from_coeffs(order, std::iter::once(MultiPoly::zero()).chain(coeffs));
        let product = a.exp().unwrap().try_mul(&a.neg().exp().unwrap()).unwrap();
        prop_assert_eq!(product, FormalSeries::one(order));
    }

    #[test]
    fn conversion_round_trips(p in ordered_poly(), target in concrete_ordering()) {
        let there = convert_ordering(&p, &target);
        prop_assert_eq!(convert_ordering(&there, p.ordering()), p);
    }

    #[test]
    fn specialization_commutes(shape in blocks(3), t in 0usize..5) {
        let names = ["s1", "s2", "s3"];
        let symbolic = BlockSequence::new(
            shape.iter()
                .zip(names)
                .map(|(&(m, n, _), name)| Block::new(m, n, OrderingParam::symbol(name)))
                .collect(),
            OrderingParam::symbol("t"),
        ).unwrap();
        let mut env = Bindings::new();
        for (&(_, _, idx), name) in shape.iter().zip(names) {
            env.insert(Symbol::new(name), rat(VALUES[idx].0, VALUES[idx].1));
        }
        env.insert(Symbol::new("t"), rat(VALUES[t].0, VALUES[t].1));

        let after = got_transform(&symbolic).unwrap().substitute(&env).unwrap();
        let before = got_transform(&symbolic.substitute(&env).unwrap()).unwrap();
        prop_assert_eq!(after, before);
    }

    #[test]
    fn three_blocks_compose_in_two_stages(shape in blocks(3).prop_filter("three", |b| b.len() == 3), t in 0usize..5) {
        let target = value(t);
        let block = |i: usize| Block::new(shape[i].0, shape[i].1, value(shape[i].2));
        let whole = BlockSequence::new(vec![block(0), block(1), block(2)], target.clone()).unwrap();
        let engine = GotEngine::default();
        let left = engine
            .transform(&BlockSequence::new(vec![block(0), block(1)], target.clone()).unwrap())
            .unwrap();
        let single = |b: Block| OrderedPolynomial::monomial(b.ordering.clone(), b.mono, MultiPoly::one());
        let staged = engine.multiply(&left, &single(block(2)), &target).unwrap();
        prop_assert_eq!(engine.transform(&whole).unwrap(), staged);
    }

    #[test]
    fn excess_is_graded(shape in blocks(3), t in 0usize..5) {
        let seq = BlockSequence::new(
            shape.iter().map(|&(m, n, s)| Block::new(m, n, value(s))).collect(),
            value(t),
        ).unwrap();
        let excess = seq.excess();
        let p = got_transform(&seq).unwrap();
        prop_assert!(p.terms().all(|(m, _)| m.excess() == excess));
    }

    #[test]
    fn dynamic_program_matches_explicit_enumeration(shape in blocks(3), t in 0usize..5) {
        let seq = BlockSequence::new(
            shape.iter().map(|&(m, n, s)| Block::new(m, n, value(s))).collect(),
            value(t),
        ).unwrap();
        let engine = GotEngine::default();
        prop_assert_eq!(engine.transform(&seq).unwrap(), engine.transform_reference(&seq).unwrap());
    }
}

fn words(max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(|len| {
        (0u32..1 << len).map(move |bits| {
            (0..len)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Letter::Creation
                    } else {
                        Letter::Annihilation
                    }
                })
                .collect()
        })
    })
}

#[test]
fn canonical_forms_convert_into_each_other() {
    for word in words(8) {
        let normal = word_normal_order(&word).unwrap();
        let anti = word_antinormal_order(&word).unwrap();
        assert_eq!(
            convert_ordering(&normal, &OrderingParam::anti_normal()),
            anti,
            "{word}"
        );
        assert_eq!(
            convert_ordering(&anti, &OrderingParam::normal()),
            normal,
            "{word}"
        );
    }
}

#[test]
fn weyl_conversion_matches_symmetrization() {
    // {a†^m a^n}_0 is the average over all arrangements of the letters
    for m in 0..4usize {
        for n in 0..4usize {
            let len = m + n;
            let mut sum = OrderedPolynomial::zero(OrderingParam::normal());
            let mut count = 0i64;
            for bits in 0u32..1 << len {
                if bits.count_ones() as usize != m {
                    continue;
                }
                let word: Word = (0..len)
                    .map(|i| {
                        if bits >> i & 1 == 1 {
                            Letter::Creation
                        } else {
                            Letter::Annihilation
                        }
                    })
                    .collect();
                sum = sum.try_add(&word_normal_order(&word).unwrap()).unwrap();
                count += 1;
            }
            let average = sum.scale(&MultiPoly::constant(rat(1, count)));
            let weyl = OrderedPolynomial::monomial(
                OrderingParam::weyl(),
                OrderedMonomial::new(m as u32, n as u32),
                MultiPoly::one(),
            );
            assert_eq!(
                convert_ordering(&weyl, &OrderingParam::normal()),
                average,
                "m={m} n={n}"
            );
        }
    }
}
