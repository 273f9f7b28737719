use proptest::prelude::*;

use polyzeta::algebra::{circled_star, star_expand, stuffle, stuffle_sums, KyIndex};
use polyzeta::finite::{circled_partial_sum, eval_formal_sum, ky_partial_sum, mhs_eval, mhss_eval};
use polyzeta::identities::exact::random_lemma54_input;
use polyzeta::identities::{invert_lemma54, lemma54_forward};
use polyzeta::poset::Poset;
use polyzeta::rational::{int, rat};
use polyzeta::word::{argumented_to_word, word_to_index, Letter};
use polyzeta::{ArgumentedIndex, FormalSum, Rational, SignedIndex};

fn arb_index(max_depth: usize) -> impl Strategy<Value = SignedIndex> {
    prop::collection::vec((1i64..=3, any::<bool>()), 1..=max_depth).prop_map(|v| {
        SignedIndex::from_signed(&v.into_iter().map(|(e, s)| if s { -e } else { e }).collect::<Vec<_>>()).unwrap()
    })
}

fn arb_arg() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![int(1), int(-1), rat(1, 2), rat(-1, 2), rat(2, 3), rat(-1, 3)])
}

fn sign_pow(k: &SignedIndex, n: u64) -> Rational {
    let p = k.parts()[0];
    let s = if p.sign.is_minus() && n % 2 == 1 { -1 } else { 1 };
    rat(s, 1) / Rational::from_integer(n.pow(p.exponent).into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stuffle_is_multiplicative(u in arb_index(3), v in arb_index(3), n in 0u64..=12) {
        prop_assert_eq!(eval_formal_sum(n, &stuffle(&u, &v)), mhs_eval(n, &u) * mhs_eval(n, &v));
    }

    #[test]
    fn stuffle_is_commutative(u in arb_index(3), v in arb_index(3)) {
        prop_assert_eq!(stuffle(&u, &v), stuffle(&v, &u));
    }

    #[test]
    fn stuffle_is_associative(u in arb_index(2), v in arb_index(2), w in arb_index(2)) {
        let left = stuffle_sums(&stuffle(&u, &v), &FormalSum::single(w.clone()));
        let right = stuffle_sums(&FormalSum::single(u.clone()), &stuffle(&v, &w));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_expansion_shape(k in arb_index(5)) {
        let fs = star_expand(&k);
        let terms = 1u64 << (k.depth() - 1);
        prop_assert_eq!(fs.len() as u64, terms);
        prop_assert_eq!(fs.total_weight(), int(terms as i64));
        prop_assert!(fs.iter().all(|(t, _)| t.weight() == k.weight()));
    }

    #[test]
    fn star_expansion_is_exact(k in arb_index(4), n in 0u64..=15) {
        prop_assert_eq!(mhss_eval(n, &k), eval_formal_sum(n, &star_expand(&k)));
    }

    #[test]
    fn nested_sum_recursion(k in arb_index(4), n in 1u64..=15) {
        let step = mhs_eval(n, &k) - mhs_eval(n - 1, &k);
        prop_assert_eq!(step, sign_pow(&k, n) * mhs_eval(n - 1, &k.tail()));
    }

    #[test]
    fn truncated_products(k in arb_index(3), l in arb_index(3), n in 0u64..=10) {
        let ky = KyIndex::new(k.clone(), l.clone()).unwrap();
        prop_assert_eq!(circled_partial_sum(n, &ky), eval_formal_sum(n, &circled_star(&k, &l).unwrap()));
        prop_assert_eq!(ky_partial_sum(n, &ky), eval_formal_sum(n, &ky.expand_terms()));
    }

    #[test]
    fn triangular_inversion_round_trip(p in 1usize..=8, seed in any::<u64>()) {
        let (a, c) = random_lemma54_input(p, seed);
        let b = invert_lemma54(&a, &c).unwrap();
        prop_assert_eq!(lemma54_forward(&a, &b).unwrap(), c);
    }

    #[test]
    fn word_index_round_trip(exps in prop::collection::vec(1u32..=3, 1..=4), args in prop::collection::vec(arb_arg(), 4)) {
        let args = args[..exps.len()].to_vec();
        let idx = ArgumentedIndex::new(exps, args).unwrap();
        prop_assume!(idx.is_admissible());
        let (w, prod) = argumented_to_word(&idx);
        let (back, factor) = word_to_index(&w).unwrap();
        prop_assert_eq!(back, idx);
        prop_assert_eq!(factor * prod, int(1));
    }

    #[test]
    fn two_chains_interleave_binomially(a in 1usize..=5, b in 1usize..=5) {
        let labels = vec![Letter::Omega0; a + b];
        let mut rel: Vec<(usize, usize)> = (1..a).map(|i| (i - 1, i)).collect();
        rel.extend((a + 1..a + b).map(|i| (i - 1, i)));
        let p = Poset::new(labels, &rel).unwrap();
        let binom = (1..=b as u64).fold(1u64, |acc, i| acc * (a as u64 + i) / i);
        prop_assert_eq!(p.count_extensions(), binom);
    }
}
