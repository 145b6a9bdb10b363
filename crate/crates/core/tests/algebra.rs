use std::collections::HashMap;

use mgk_core::milnor::{equal, is_magnus_trivial};
use mgk_core::{Letter, RingElement, Word, conjugation_action, magnus, normal_form, r_inverse, r_map};
use mgk_core::random::{self, case_rng};
use proptest::prelude::*;

fn word_strategy(s: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..s, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

fn ring_strategy(s: usize) -> impl Strategy<Value = RingElement> {
    any::<u64>().prop_map(move |seed| random::ring_element(&mut case_rng(seed, 0), s, 4, s))
}

/// Magnus expansion into the free power series ring, truncated above
/// `deg`. Equal truncations at `deg ≥ s` force equality in `M(F_s)`.
fn free_magnus(word: &Word, deg: usize) -> HashMap<Vec<usize>, i64> {
    let mut u: HashMap<Vec<usize>, i64> = HashMap::from([(vec![], 1)]);
    for l in word.letters() {
        let mut next = u.clone();
        let series: Vec<(usize, i64)> = if l.inverse {
            (1..=deg).map(|k| (k, if k % 2 == 1 { -1 } else { 1 })).collect()
        } else {
            vec![(1, 1)]
        };
        for (mono, c) in &u {
            for &(k, sgn) in &series {
                if mono.len() + k <= deg {
                    let mut mm = mono.clone();
                    mm.extend(std::iter::repeat_n(l.gen, k));
                    *next.entry(mm).or_insert(0) += c * sgn;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        u = next;
    }
    u
}

/// Square-free part of a free expansion.
fn square_free(u: &HashMap<Vec<usize>, i64>, s: usize) -> RingElement {
    let terms = u.iter().filter_map(|(m, c)| {
        mgk_core::Monomial::from_indices(m).map(|mono| (mono, num_bigint::BigInt::from(*c)))
    });
    RingElement::from_terms(s, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in ring_strategy(4), b in ring_strategy(4), c in ring_strategy(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&b + &c) * &a, &(&b * &a) + &(&c * &a));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in ring_strategy(5)) {
        prop_assert_eq!(RingElement::parse(&a.to_string(), 5, None).unwrap(), a);
    }

    #[test]
    fn magnus_is_a_homomorphism(u in word_strategy(4, 10), v in word_strategy(4, 10)) {
        prop_assert_eq!(magnus(&u.concat(&v), 4).unwrap(), &magnus(&u, 4).unwrap() * &magnus(&v, 4).unwrap());
        prop_assert!(magnus(&u.concat(&u.inverse()), 4).unwrap().is_one());
    }

    #[test]
    fn square_free_expansion_matches_free_oracle(u in word_strategy(4, 10)) {
        // the square-free ring is the free ring modulo repeated indices
        prop_assert_eq!(square_free(&free_magnus(&u, 4), 4), magnus(&u, 4).unwrap());
    }

    #[test]
    fn normal_form_is_a_homomorphism(u in word_strategy(4, 10), v in word_strategy(4, 10)) {
        let (nu, nv) = (normal_form(&u, 4).unwrap(), normal_form(&v, 4).unwrap());
        prop_assert_eq!(normal_form(&u.concat(&v), 4).unwrap(), nu.mul(&nv));
        prop_assert_eq!(normal_form(&u.inverse(), 4).unwrap(), nu.inverse());
        prop_assert_eq!(normal_form(&nu.to_word(), 4).unwrap(), nu);
    }

    #[test]
    fn free_oracle_agreement_forces_equality(
        u in word_strategy(4, 8), seed in any::<u64>(), at in 0usize..9,
    ) {
        // splice a weight-5 commutator into u: invisible to the degree-4 oracle
        let c = random::commutator(&mut case_rng(seed, 1), 4, 5, 3);
        let at = at.min(u.len());
        let mut letters = u.letters()[..at].to_vec();
        letters.extend_from_slice(c.letters());
        letters.extend_from_slice(&u.letters()[at..]);
        let w = Word::from_letters(letters);
        prop_assert_eq!(free_magnus(&u, 4), free_magnus(&w, 4));
        prop_assert!(equal(&u, &w, 4).unwrap());
    }

    #[test]
    fn magnus_trivial_iff_normal_form_identity(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 0);
        let s = 1 + (seed % 4) as usize;
        // mixtures of relations, high-weight commutators and short words
        let mut w = Word::empty();
        for t in 0..3 {
            let part = match (seed >> (8 * t)) % 4 {
                0 => {
                    let m = Word::gen((seed as usize >> 20) % s);
                    let u = random::word(&mut rng, s, 4);
                    let v = random::word(&mut rng, s, 4);
                    m.conjugate_by(&u).commutator(&m.conjugate_by(&v))
                }
                1 => random::commutator(&mut rng, s, s + 1, 2),
                2 => random::commutator(&mut rng, s, s, 2),
                _ => random::word(&mut rng, s, 2),
            };
            w.extend(&part);
        }
        prop_assert_eq!(is_magnus_trivial(&w, s).unwrap(), normal_form(&w, s).unwrap().is_identity());
    }

    #[test]
    fn split_sequence(rho in ring_strategy(3), g in word_strategy(3, 6)) {
        prop_assert_eq!(&r_inverse(&r_map(&rho), 4).unwrap(), &rho);
        let conj = r_map(&rho).conjugate_by(&g);
        prop_assert_eq!(r_inverse(&conj, 4).unwrap(), conjugation_action(&g, &rho).unwrap());
    }

    #[test]
    fn conjugation_keeps_leading_terms(w in word_strategy(4, 12), g in word_strategy(4, 6)) {
        let a = magnus(&w, 4).unwrap();
        let b = magnus(&w.conjugate_by(&g), 4).unwrap();
        prop_assert_eq!(a.min_positive_degree(), b.min_positive_degree());
        if let Some(d) = a.min_positive_degree() {
            let low = |x: &RingElement| {
                x.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>()
            };
            prop_assert_eq!(low(&a), low(&b));
        }
    }
}
