//! Free Milnor groups `M(F_s)` and their Magnus expansion.
//!
//! Setting the last generator to 1 gives a split extension
//!
//! ```text
//! 1 → (R(y_1..y_{s-1}), +) --r--> M(F_s) → M(F_{s-1}) → 1
//! ```
//!
//! where `r(y_{j1}⋯y_{jk}) = [m_{j1},[m_{j2},…,[m_{jk},m_s]…]]` and `m_i`
//! acts on the kernel by left multiplication with `1 + y_i`. Iterating the
//! splitting writes every element uniquely as
//!
//! ```text
//! r_{s-1}(ρ_{s-1}) · r_{s-2}(ρ_{s-2}) ⋯ r_1(ρ_1) · m_1^e
//! ```
//!
//! with `ρ_t ∈ R(y_1..y_t)`, which is the normal form computed here.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Monomial, RingElement};
use crate::word::{Alphabet, Letter, Word, WordExpr};

fn check_letters(word: &Word, rank: usize) -> Result<()> {
    match word.max_gen() {
        Some(g) if g >= rank => Err(Error::UnknownGenerator(format!("generator #{} of {rank}", g + 1))),
        _ => Ok(()),
    }
}

/// Magnus expansion `m_i ↦ 1 + y_i`, `m_i⁻¹ ↦ 1 − y_i` into `R(y_1..y_nvars)`.
pub fn magnus(word: &Word, nvars: usize) -> Result<RingElement> {
    magnus_truncated(word, nvars, usize::MAX)
}

/// Magnus expansion with every term of degree above `max_degree` dropped.
pub fn magnus_truncated(word: &Word, nvars: usize, max_degree: usize) -> Result<RingElement> {
    check_letters(word, nvars)?;
    let mut u = RingElement::one(nvars);
    for l in word.letters() {
        u.mul_letter_right(l.gen, l.inverse, max_degree);
    }
    Ok(u)
}

/// Smallest degree of a nonconstant term of `magnus(word)`; `None` when the
/// expansion is exactly 1.
pub fn lcs_degree(word: &Word, nvars: usize) -> Result<Option<usize>> {
    check_letters(word, nvars)?;
    let mut seen = 0u64;
    for l in word.letters() {
        seen |= 1 << l.gen;
    }
    let top = seen.count_ones() as usize;
    let mut d = 1;
    while d <= top {
        let u = magnus_truncated(word, nvars, d)?;
        if let Some(k) = u.min_positive_degree() {
            return Ok(Some(k));
        }
        d *= 2;
    }
    // all degrees up to `top` are covered once d reaches it
    let u = magnus_truncated(word, nvars, top)?;
    Ok(u.min_positive_degree())
}

/// `r(ρ)`: the kernel element of `M(F_{s+1})` for `ρ ∈ R(y_1..y_s)`.
/// Basis terms are emitted in monomial order, each `|c|` times, inverted
/// when `c < 0`.
pub fn r_map(rho: &RingElement) -> Word {
    let s = rho.nvars();
    let mut w = Word::empty();
    for (m, c) in rho.terms() {
        let base = r_monomial(m, s);
        let piece = if c.is_negative() { base.inverse() } else { base };
        let times: usize = c.magnitude().try_into().expect("coefficient too large for a word");
        for _ in 0..times {
            w.extend(&piece);
        }
    }
    w
}

fn r_monomial(m: &Monomial, last: usize) -> Word {
    let idx: Vec<usize> = m.indices().collect();
    idx.iter().rev().fold(Word::gen(last), |acc, &j| Word::gen(j).commutator(&acc))
}

/// Same as [`r_map`] but keeping commutator brackets, with generator names
/// taken from `alphabet` (which must have `s + 1` letters).
pub fn r_map_expr(rho: &RingElement, alphabet: &Alphabet) -> WordExpr {
    let last = rho.nvars();
    let mut items = Vec::new();
    for (m, c) in rho.terms() {
        let idx: Vec<usize> = m.indices().collect();
        let base = idx.iter().rev().fold(WordExpr::gen(alphabet.name(last)), |acc, &j| {
            WordExpr::commutator(WordExpr::gen(alphabet.name(j)), acc)
        });
        let base = if c.is_negative() { base.inverse() } else { base };
        let times: usize = c.magnitude().try_into().expect("coefficient too large for a word");
        items.extend(std::iter::repeat_n(base, times));
    }
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        WordExpr::Product(items)
    }
}

/// Canonical form of an element of `M(F_rank)`.
///
/// `components[t]` lives in `R(y_1..y_t)`; `components[0]` is the integer
/// exponent of `m_1` stored as a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MilnorElement {
    components: Vec<RingElement>,
}

impl MilnorElement {
    pub fn identity(rank: usize) -> Self {
        MilnorElement { components: (0..rank).map(RingElement::zero).collect() }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(RingElement::is_zero)
    }

    pub fn exponent(&self) -> BigInt {
        self.components.first().map(RingElement::constant_term).unwrap_or_default()
    }

    /// `ρ_t ∈ R(y_1..y_t)` for `1 ≤ t < rank`.
    pub fn component(&self, t: usize) -> &RingElement {
        &self.components[t]
    }

    pub fn components(&self) -> &[RingElement] {
        &self.components
    }

    /// A word representing this element: `r(ρ_{s-1}) ⋯ r(ρ_1) · m_1^e`.
    pub fn to_word(&self) -> Word {
        let mut w = Word::empty();
        for rho in self.components.iter().rev() {
            w.extend(&r_map(rho));
        }
        w
    }

    pub fn mul(&self, other: &MilnorElement) -> MilnorElement {
        assert_eq!(self.rank(), other.rank());
        let w = self.to_word().concat(&other.to_word());
        normal_form(&w, self.rank()).expect("letters are in range")
    }

    pub fn inverse(&self) -> MilnorElement {
        normal_form(&self.to_word().inverse(), self.rank()).expect("letters are in range")
    }

    /// The projection to `M(F_{rank-1})` (delete the last generator).
    pub fn project(&self) -> MilnorElement {
        let mut c = self.components.clone();
        c.pop();
        MilnorElement { components: c }
    }
}

impl fmt::Display for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("()");
        }
        for t in (1..self.components.len()).rev() {
            write!(f, "rho{t} = {}; ", self.components[t])?;
        }
        write!(f, "e = {}", self.exponent())
    }
}

impl Serialize for MilnorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MilnorElement", 3)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("exponent", &self.exponent().to_string())?;
        let comps: Vec<String> = self.components.iter().skip(1).map(ToString::to_string).collect();
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

/// Incremental normal-form scanner: right-multiplies letters onto an
/// element, keeping the Magnus image of each tail alongside.
struct Scanner {
    components: Vec<RingElement>,
    // tails[t] = magnus of the part of the element living in M(F_t)
    tails: Vec<RingElement>,
}

impl Scanner {
    fn new(rank: usize) -> Self {
        Scanner {
            components: (0..rank).map(RingElement::zero).collect(),
            tails: (0..rank).map(RingElement::one).collect(),
        }
    }

    fn push(&mut self, l: Letter) {
        let j = l.gen;
        if l.inverse {
            let neg = -&self.tails[j];
            self.components[j].add_assign_ref(&neg);
        } else {
            let t = self.tails[j].clone();
            self.components[j].add_assign_ref(&t);
        }
        for u in &mut self.tails[j + 1..] {
            u.mul_letter_right(j, l.inverse, usize::MAX);
        }
    }
}

/// Normal form of `word` in `M(F_rank)`. Generator `i` of the word is `m_{i+1}`.
pub fn normal_form(word: &Word, rank: usize) -> Result<MilnorElement> {
    check_letters(word, rank)?;
    let mut sc = Scanner::new(rank);
    for &l in word.free_reduce().letters() {
        sc.push(l);
    }
    Ok(MilnorElement { components: sc.components })
}

/// Whether two words define the same element of `M(F_rank)`.
pub fn equal(a: &Word, b: &Word, rank: usize) -> Result<bool> {
    Ok(normal_form(a, rank)? == normal_form(b, rank)?)
}

/// `r⁻¹(w)` for `w ∈ M(F_{s+1})` lying in the kernel of deleting `m_{s+1}`;
/// `rank = s + 1`.
pub fn r_inverse(word: &Word, rank: usize) -> Result<RingElement> {
    if rank == 0 {
        return Err(Error::TooFewComponents { needed: 1, got: 0 });
    }
    let nf = normal_form(word, rank)?;
    if !nf.project().is_identity() {
        return Err(Error::NotInKernel);
    }
    Ok(nf.components[rank - 1].clone())
}

/// Action of `g ∈ M(F_s)` on the kernel `R(y_1..y_s)`: `magnus(g) · ρ`.
pub fn conjugation_action(g: &Word, rho: &RingElement) -> Result<RingElement> {
    magnus(g, rho.nvars())?.checked_mul(rho)
}

/// Whether the Magnus expansion of `word` is exactly 1.
pub fn is_magnus_trivial(word: &Word, nvars: usize) -> Result<bool> {
    Ok(magnus(word, nvars)?.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn m(n: usize) -> Alphabet {
        Alphabet::numbered("m", n)
    }

    fn w(s: &str, n: usize) -> Word {
        Word::parse(s, &m(n)).unwrap()
    }

    fn ring(s: &str, n: usize) -> RingElement {
        RingElement::parse(s, n, None).unwrap()
    }

    /// Free Magnus expansion into Z⟨X⟩ truncated above `deg`, repeated
    /// indices allowed. Two words agreeing here agree modulo Γ^{deg+1},
    /// hence in M(F_s) when deg ≥ s.
    fn free_magnus(word: &Word, deg: usize) -> HashMap<Vec<usize>, i64> {
        let mut u: HashMap<Vec<usize>, i64> = HashMap::from([(vec![], 1)]);
        for l in word.letters() {
            let mut next = u.clone();
            // (1 ± y)⁻¹ = Σ (∓y)^k: the inverse letter has an infinite series
            let series: Vec<(usize, i64)> = if l.inverse {
                (1..=deg).map(|k| (k, if k % 2 == 1 { -1 } else { 1 })).collect()
            } else {
                vec![(1, 1)]
            };
            for (mono, c) in &u {
                for &(k, sgn) in &series {
                    if mono.len() + k > deg {
                        continue;
                    }
                    let mut mm = mono.clone();
                    mm.extend(std::iter::repeat_n(l.gen, k));
                    *next.entry(mm).or_insert(0) += c * sgn;
                }
            }
            next.retain(|_, c| *c != 0);
            u = next;
        }
        u
    }

    #[test]
    fn magnus_of_generators() {
        assert_eq!(magnus(&w("m2", 3), 3).unwrap(), ring("1 + y2", 3));
        assert_eq!(magnus(&w("m2'", 3), 3).unwrap(), ring("1 - y2", 3));
        assert_eq!(magnus(&w("[m2,m3]", 3), 3).unwrap(), ring("1 + y2*y3 - y3*y2", 3));
        assert!(magnus(&w("m3", 3), 2).is_err());
    }

    #[test]
    fn lcs_degree_examples() {
        assert_eq!(lcs_degree(&w("m1", 1), 1).unwrap(), Some(1));
        assert_eq!(lcs_degree(&w("[m2,m3]", 3), 3).unwrap(), Some(2));
        assert_eq!(lcs_degree(&w("[m1,[m2,m3]]", 3), 3).unwrap(), Some(3));
        assert_eq!(lcs_degree(&w("m1 m1'", 3), 3).unwrap(), None);
        // a Milnor relation has trivial expansion
        assert_eq!(lcs_degree(&w("[m1, m2 m1 m2']", 2), 2).unwrap(), None);
    }

    #[test]
    fn r_map_examples() {
        let al = m(3);
        assert!(r_map(&RingElement::zero(2)).is_empty());
        assert_eq!(r_map(&RingElement::one(2)), Word::gen(2));
        let y2 = RingElement::var(2, 1).unwrap();
        assert_eq!(r_map(&y2), w("[m2,m3]", 3));
        assert_eq!(r_map_expr(&y2, &al).to_string(), "[m2,m3]");
        assert_eq!(r_map_expr(&ring("y1*y2 - 1", 2), &al).to_string(), "m3'[m1,[m2,m3]]");
    }

    #[test]
    fn identity_and_milnor_relation() {
        assert!(normal_form(&Word::empty(), 3).unwrap().is_identity());
        let rel = w("[m1 m2 m1', m3 m2 m3']", 3);
        assert!(normal_form(&rel, 3).unwrap().is_identity());
        // but it is not trivial in the free group
        assert!(!rel.free_reduce().is_empty());
    }

    #[test]
    fn rewritings_of_a_weight_three_commutator_agree() {
        let a = w("[m1,[m2,m3]]", 3);
        let b = w("[m2,m3]' m1 [m2,m3] m1'", 3);
        // oracle: agreement in F/Γ⁴ forces equality in M(F_3)
        let fa = free_magnus(&a, 3);
        let fb = free_magnus(&b, 3);
        assert_eq!(fa, fb);
        assert!(equal(&a, &b, 3).unwrap());
        assert!(!equal(&a, &w("[m1,[m3,m2]]", 3), 3).unwrap());
    }

    #[test]
    fn normal_form_of_generators() {
        let nf = normal_form(&w("m3 m1 m1", 3), 3).unwrap();
        assert_eq!(nf.component(2), &ring("1", 2));
        assert_eq!(nf.exponent(), BigInt::from(2));
        assert!(nf.component(1).is_zero());
        let back = normal_form(&nf.to_word(), 3).unwrap();
        assert_eq!(back, nf);
    }

    #[test]
    fn r_inverse_examples() {
        assert_eq!(r_inverse(&w("m3", 3), 3).unwrap(), RingElement::one(2));
        assert_eq!(r_inverse(&w("[m2,m3]", 3), 3).unwrap(), ring("y2", 2));
        assert_eq!(r_inverse(&w("m1 m3 m1'", 3), 3).unwrap(), ring("1 + y1", 2));
        assert_eq!(r_inverse(&w("m1 m3", 3), 3).unwrap_err(), Error::NotInKernel);
    }

    #[test]
    fn conjugation_examples() {
        let one = RingElement::one(4);
        assert_eq!(conjugation_action(&w("m2", 4), &one).unwrap(), ring("1 + y2", 4));
        let rho = ring("y1 - 2*y3*y4", 4);
        assert_eq!(conjugation_action(&Word::empty(), &rho).unwrap(), rho);
        let y4 = ring("y4", 4);
        let got = conjugation_action(&w("m2 m3", 4), &y4).unwrap();
        assert_eq!(got, &(&ring("1 + y2", 4) * &ring("1 + y3", 4)) * &y4);
        assert_eq!(got.to_string(), "y4 + y2*y4 + y3*y4 + y2*y3*y4");
    }

    #[test]
    fn group_operations_on_normal_forms() {
        let a = normal_form(&w("m1 m2' [m1,m3]", 3), 3).unwrap();
        let b = normal_form(&w("m3 m2 m2 m1'", 3), 3).unwrap();
        let ab = normal_form(&w("m1 m2' [m1,m3] m3 m2 m2 m1'", 3), 3).unwrap();
        assert_eq!(a.mul(&b), ab);
        assert!(a.mul(&a.inverse()).is_identity());
    }
}
