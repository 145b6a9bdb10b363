//! Seeded generators for property sweeps.

use num_bigint::BigInt;
use rand::Rng;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::grope::{ClosedGropeTree, GropeTree};
use crate::ring::{Monomial, RingElement};
use crate::word::{Letter, Word};

/// Independent stream for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform word of length `0..=max_len` over `ngens` generators.
pub fn word<R: Rng>(rng: &mut R, ngens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..ngens), rng.gen_bool(0.5))).collect())
}

/// Random bracketing of `weight` random nonempty words.
pub fn commutator<R: Rng>(rng: &mut R, ngens: usize, weight: usize, max_len: usize) -> Word {
    assert!(weight >= 1);
    if weight == 1 {
        let mut w = word(rng, ngens, max_len.saturating_sub(1));
        w.push(Letter::new(rng.gen_range(0..ngens), rng.gen_bool(0.5)));
        return w;
    }
    let left = rng.gen_range(1..weight);
    let a = commutator(rng, ngens, left, max_len);
    let b = commutator(rng, ngens, weight - left, max_len);
    a.commutator(&b)
}

/// Up to `max_terms` terms of degree `≤ max_degree`, coefficients in
/// `-3..=3`.
pub fn ring_element<R: Rng>(rng: &mut R, nvars: usize, max_terms: usize, max_degree: usize) -> RingElement {
    let mut out = RingElement::zero(nvars);
    let top = max_degree.min(nvars);
    let vars: Vec<usize> = (0..nvars).collect();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let d = rng.gen_range(0..=top);
        let idx: Vec<usize> = vars.choose_multiple(rng, d).copied().collect();
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        out.add_term(Monomial::from_indices(&idx).expect("distinct"), BigInt::from(c));
    }
    out
}

/// Tree of class exactly `k`. Every pair sums to at least `k` and one pair
/// sums to exactly `k`; surfaces have genus 1 or, with probability
/// `extra_genus`, 2.
pub fn grope_of_class<R: Rng>(rng: &mut R, k: usize, extra_genus: f64) -> GropeTree {
    if k == 1 {
        return GropeTree::Leaf;
    }
    let genus = if rng.gen_bool(extra_genus) { 2 } else { 1 };
    let tight = rng.gen_range(0..genus);
    let pairs = (0..genus)
        .map(|g| {
            let sum = if g == tight { k } else { k + rng.gen_range(0..=1) };
            let p = rng.gen_range(1..sum);
            let (p, q) = (p.min(k - 1), sum - p.min(k - 1));
            (grope_of_class(rng, p, extra_genus), grope_of_class(rng, q, extra_genus))
        })
        .collect();
    GropeTree::surface(pairs).expect("nonempty")
}

/// Closed tree of class exactly `k ≥ 2`.
pub fn closed_grope_of_class<R: Rng>(rng: &mut R, k: usize, extra_genus: f64) -> ClosedGropeTree {
    assert!(k >= 2);
    ClosedGropeTree::new(grope_of_class(rng, k, extra_genus)).expect("class ≥ 2 is a surface")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = word(&mut case_rng(7, 3), 4, 20);
        let b = word(&mut case_rng(7, 3), 4, 20);
        assert_eq!(a, b);
    }

    #[test]
    fn grope_classes_are_exact() {
        let mut rng = case_rng(1, 0);
        for k in 1..=8 {
            for _ in 0..20 {
                assert_eq!(grope_of_class(&mut rng, k, 0.3).class(), k);
            }
        }
    }
}
