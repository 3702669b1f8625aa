use num_bigint::BigInt;
use proptest::prelude::*;
use shuffle_lattice::lattices::{build_shuffle_lattice, indel_successors, interval_factor_map};
use shuffle_lattice::polyalg::{integer, series_reciprocal};
use shuffle_lattice::triangles::{char_poly_formula, h_triangle_formula, m_triangle_formula, BRUTE_SIZE_CAP};
use shuffle_lattice::words::{enumerate_shuffle_words, interval_shape, rank, validate, DEFAULT_SIZE_CAP};
use shuffle_lattice::{BivarPoly, ExactRational, ShuffleParams, ShuffleWord, TruncatedSeries2};

fn poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..20), 0..6).prop_map(BivarPoly::from_terms)
}

fn small_params() -> impl Strategy<Value = ShuffleParams> {
    (0usize..4, 0usize..4).prop_map(|(m, n)| ShuffleParams::new(m, n))
}

fn word_in(params: ShuffleParams) -> impl Strategy<Value = ShuffleWord> {
    let words = enumerate_shuffle_words(params, DEFAULT_SIZE_CAP).unwrap();
    (0..words.len()).prop_map(move |i| words[i].clone())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, BivarPoly::zero());
        prop_assert_eq!(&a * &BivarPoly::one(), a.clone());
        prop_assert!((&a - &a).terms().next().is_none());
    }

    #[test]
    fn negate_vars_is_involutive_homomorphism(a in poly(), b in poly()) {
        prop_assert_eq!(a.negate_vars().negate_vars(), a.clone());
        prop_assert_eq!((&a * &b).negate_vars(), &a.negate_vars() * &b.negate_vars());
        prop_assert_eq!((&a + &b).negate_vars(), &a.negate_vars() + &b.negate_vars());
        prop_assert_eq!(a.swap_vars().swap_vars(), a);
    }

    #[test]
    fn eval_commutes_with_arithmetic(a in poly(), b in poly(), q in -5i64..5, t in -5i64..5) {
        let (q, t): (ExactRational, ExactRational) = (integer(q), integer(t));
        prop_assert_eq!((&a * &b).eval(&q, &t), a.eval(&q, &t) * b.eval(&q, &t));
        prop_assert_eq!((&a + &b).eval(&q, &t), a.eval(&q, &t) + b.eval(&q, &t));
        prop_assert_eq!(a.negate_vars().eval(&q, &t), a.eval(&-q.clone(), &-t.clone()));
    }

    #[test]
    fn partial_evaluation_agrees_with_eval(a in poly(), q in -4i64..4, t in -4i64..4) {
        let full = a.eval(&integer(q), &integer(t));
        let partial = a.at_q(&BigInt::from(q)).at_t(&BigInt::from(t));
        prop_assert_eq!(partial.eval(&integer(0), &integer(0)), full);
    }

    #[test]
    fn polynomial_json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: BivarPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn reciprocal_inverts(a in poly(), max_x in 0usize..4, max_y in 0usize..4) {
        let mut terms: Vec<(usize, usize, BivarPoly)> = vec![(0, 0, BivarPoly::one())];
        terms.push((1, 0, a.clone()));
        terms.push((1, 1, a.swap_vars()));
        let d = TruncatedSeries2::from_terms(max_x, max_y, terms);
        let r = series_reciprocal(&d, max_x, max_y).unwrap();
        prop_assert!(d.mul(&r).is_one());
    }

    #[test]
    fn words_round_trip_through_text((params, word) in small_params().prop_flat_map(|p| (Just(p), word_in(p)))) {
        prop_assert_eq!(ShuffleWord::parse(&word.to_string(), params).unwrap(), word.clone());
        prop_assert!(validate(word.letters(), params).is_ok());
    }

    #[test]
    fn indel_steps_raise_rank((params, word) in small_params().prop_flat_map(|p| (Just(p), word_in(p)))) {
        for next in indel_successors(&word, params) {
            prop_assert_eq!(rank(&next, params), rank(&word, params) + 1);
        }
    }

    #[test]
    fn interval_shape_partitions_letters((params, word) in small_params().prop_flat_map(|p| (Just(p), word_in(p)))) {
        let shape = interval_shape(&word, params);
        prop_assert_eq!(shape.eta.len(), shape.k + 1);
        prop_assert_eq!(shape.lambda.len(), shape.k + 1);
        prop_assert_eq!(shape.eta.iter().sum::<usize>(), word.count_x());
        prop_assert_eq!(shape.lambda.iter().sum::<usize>() + shape.k, params.n);
        let top = params.top();
        let image = interval_factor_map(&word, params, &top).unwrap();
        let expected: Vec<ShuffleWord> = shape.factors().map(|p| p.top()).collect();
        prop_assert_eq!(image, expected);
    }

    #[test]
    fn triangle_formulas_are_symmetric(m in 0usize..7, n in 0usize..7) {
        let (p, s) = (ShuffleParams::new(m, n), ShuffleParams::new(n, m));
        prop_assert_eq!(m_triangle_formula(p), m_triangle_formula(s));
        prop_assert_eq!(h_triangle_formula(p), h_triangle_formula(s));
        prop_assert_eq!(char_poly_formula(p), char_poly_formula(s));
    }

    #[test]
    fn h_counts_words(m in 0usize..7, n in 0usize..7) {
        let p = ShuffleParams::new(m, n);
        let one = BigInt::from(1);
        prop_assert_eq!(h_triangle_formula(p).at_q(&one).at_t(&one), BivarPoly::constant(BigInt::from(p.cardinality())));
    }
}

#[test]
fn lattice_bounds_are_canonical_words() {
    for m in 0..4 {
        for n in 0..4 {
            let p = ShuffleParams::new(m, n);
            let lattice = build_shuffle_lattice(p, BRUTE_SIZE_CAP).unwrap();
            assert_eq!(lattice.label(lattice.bottom().unwrap()), &p.bottom());
            assert_eq!(lattice.label(lattice.top().unwrap()), &p.top());
            assert_eq!(lattice.height(), m + n);
        }
    }
}
