//! The ring `R(y_1, …, y_s)`: the free associative ring modulo every
//! monomial with a repeated variable. Additively it is free abelian on the
//! monomials with pairwise distinct indices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Variables are tracked in a 64-bit mask.
pub const MAX_VARIABLES: usize = 64;

/// A product of pairwise-distinct variables, `y_{i_1} ⋯ y_{i_r}` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: Vec<u8>,
    mask: u64,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { vars: Vec::new(), mask: 0 }
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARIABLES);
        Monomial { vars: vec![i as u8], mask: 1 << i }
    }

    /// `None` when an index repeats: such monomials are zero in the ring.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u64;
        let mut vars = Vec::with_capacity(indices.len());
        for &i in indices {
            assert!(i < MAX_VARIABLES);
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
            vars.push(i as u8);
        }
        Some(Monomial { vars, mask })
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vars.iter().map(|&v| v as usize)
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn max_index(&self) -> Option<usize> {
        self.vars.iter().map(|&v| v as usize).max()
    }

    pub fn concat(&self, other: &Monomial) -> Option<Monomial> {
        if self.mask & other.mask != 0 {
            return None;
        }
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        vars.extend_from_slice(&self.vars);
        vars.extend_from_slice(&other.vars);
        Some(Monomial { vars, mask: self.mask | other.mask })
    }

    fn map_vars(&self, map: &[usize]) -> Monomial {
        let idx: Vec<usize> = self.indices().map(|i| map[i]).collect();
        Monomial::from_indices(&idx).expect("variable map must be injective")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// graded lexicographic
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vars.len().cmp(&other.vars.len()).then_with(|| self.vars.cmp(&other.vars))
    }
}

/// Element of `R(y_1, …, y_nvars)` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARIABLES, "at most {MAX_VARIABLES} ring variables");
        RingElement { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut r = Self::zero(nvars);
        r.add_term(Monomial::one(), c.into());
        r
    }

    /// The variable `y_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::VariableOutOfRange { index: i + 1, nvars });
        }
        let mut r = Self::zero(nvars);
        r.add_term(Monomial::var(i), BigInt::one());
        Ok(r)
    }

    /// `1 + sign · y_{i+1}`, the image of a generator or its inverse.
    pub fn unit_of_letter(nvars: usize, i: usize, inverse: bool) -> Self {
        let mut r = Self::one(nvars);
        r.add_term(Monomial::var(i), if inverse { -BigInt::one() } else { BigInt::one() });
        r
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut r = Self::zero(nvars);
        for (m, c) in terms {
            if let Some(i) = m.max_index().filter(|&i| i >= nvars) {
                return Err(Error::VariableOutOfRange { index: i + 1, nvars });
            }
            r.add_term(m, c);
        }
        Ok(r)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::one()).is_one()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, indices: &[usize]) -> BigInt {
        Monomial::from_indices(indices).map(|m| self.coeff(&m)).unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Largest variable index used, 0-based.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_universe(&self, other: &RingElement) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::UniverseMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_universe(other)?;
        let mut r = self.clone();
        r.add_assign_ref(other);
        Ok(r)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_universe(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_universe(other)?;
        Ok(self.mul_bounded(other, usize::MAX))
    }

    /// Product with every term of degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &RingElement, max_degree: usize) -> Result<RingElement> {
        self.check_universe(other)?;
        Ok(self.mul_bounded(other, max_degree))
    }

    fn mul_bounded(&self, other: &RingElement, max_degree: usize) -> RingElement {
        let mut r = RingElement::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > max_degree {
                    continue;
                }
                if let Some(m) = ma.concat(mb) {
                    r.add_term(m, ca * cb);
                }
            }
        }
        r
    }

    pub(crate) fn add_assign_ref(&mut self, other: &RingElement) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self ← self · (1 + sign·y_i)`, the update for appending one letter.
    pub(crate) fn mul_letter_right(&mut self, i: usize, inverse: bool, max_degree: usize) {
        let bit = 1u64 << i;
        let extra: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.mask & bit == 0 && m.degree() < max_degree)
            .map(|(m, c)| {
                let mut vars = m.vars.clone();
                vars.push(i as u8);
                (Monomial { vars, mask: m.mask | bit }, if inverse { -c } else { c.clone() })
            })
            .collect();
        for (m, c) in extra {
            self.add_term(m, c);
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        if k.is_zero() {
            return RingElement::zero(self.nvars);
        }
        RingElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Keep only terms of degree at most `d`.
    pub fn truncate(&self, d: usize) -> RingElement {
        RingElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest degree of a nonzero term of positive degree.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).filter(|&d| d > 0).min()
    }

    /// Same element viewed in a ring with more variables.
    pub fn widen(&self, nvars: usize) -> Result<RingElement> {
        if nvars < self.nvars {
            if let Some(i) = self.max_var().filter(|&i| i >= nvars) {
                return Err(Error::VariableOutOfRange { index: i + 1, nvars });
            }
        }
        Ok(RingElement { nvars, terms: self.terms.clone() })
    }

    /// Rename variable `i` to `map[i]` in a ring over `nvars` variables.
    /// `map` must be injective on the variables that occur.
    pub fn remap(&self, map: &[usize], nvars: usize) -> RingElement {
        let mut r = RingElement::zero(nvars);
        for (m, c) in &self.terms {
            let mm = m.map_vars(map);
            assert!(mm.max_index().is_none_or(|i| i < nvars));
            r.add_term(mm, c.clone());
        }
        r
    }

    /// Set every variable whose bit is in `mask` to zero.
    pub fn kill_variables(&self, mask: u64) -> RingElement {
        RingElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.mask & mask == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> RingDisplay<'a, S> {
        RingDisplay { ring: self, names }
    }

    /// Parse a signed sum like `1 + y1*y2 - 3*y2*y1`. Variables are `y<k>`
    /// (1-based) unless `names` is given.
    pub fn parse(text: &str, nvars: usize, names: Option<&[String]>) -> Result<RingElement> {
        let default: Vec<String>;
        let names = match names {
            Some(n) => n,
            None => {
                default = (1..=nvars).map(|i| format!("y{i}")).collect();
                &default
            }
        };
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let mut r = RingElement::zero(nvars);
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1
            }
        };
        let mut first = true;
        loop {
            skip(&mut pos);
            if pos == bytes.len() {
                if first {
                    return Err(err(pos, "empty ring element"));
                }
                return Ok(r);
            }
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(err(pos, "expected `+` or `-`"));
            }
            first = false;
            let mut coeff = BigInt::one();
            let mut factors: Vec<usize> = Vec::new();
            loop {
                skip(&mut pos);
                let start = pos;
                if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let n: BigInt = text[start..pos].parse().map_err(|_| err(start, "bad number"))?;
                    coeff *= n;
                } else if pos < bytes.len() && (bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_') {
                    while pos < bytes.len() && (bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_') {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let name = &text[start..pos];
                    let i = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                    factors.push(i);
                } else {
                    return Err(err(pos, "expected number or variable"));
                }
                skip(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                } else {
                    break;
                }
            }
            if let Some(m) = Monomial::from_indices(&factors) {
                r.add_term(m, sign * coeff);
            }
        }
    }
}

/// `Σ_{k=0..s} s!/(s−k)!`: the number of monomials with distinct indices.
pub fn basis_rank(s: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut falling = BigUint::one();
    for k in 0..=s {
        total += &falling;
        falling *= BigUint::from(s - k);
    }
    total
}

pub struct RingDisplay<'a, S> {
    ring: &'a RingElement,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for RingDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ring.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.ring.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            for (j, i) in m.indices().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                f.write_str(self.names[i].as_ref())?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("y{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator forms panic on mismatched universes; use the `checked_*`
// methods where that can happen.

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring universes differ")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("ring universes differ")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring universes differ")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-BigInt::one())
    }
}
