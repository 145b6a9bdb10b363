//! Group words over a named alphabet.
//!
//! Text grammar (whitespace-insensitive):
//!
//! ```text
//! product := factor*
//! factor  := atom ( "'" | "^" int )*
//! atom    := name | "1" | "[" product "," product "]" | "(" product ")"
//! name    := letter+ digit*            e.g. m1, z2, lambda
//! ```
//!
//! `'` inverts, juxtaposition multiplies and `[g,h] = g h g' h'`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered list of distinct generator names; position is the generator index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(n));
            }
            owned.push(n);
        }
        Ok(Alphabet { names: owned, index })
    }

    /// `prefix1, prefix2, ..., prefix{n}`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Alphabet::new(&names).expect("numbered names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.position(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in generator indices. Stored as written; nothing is reduced
/// unless [`Word::free_reduce`] is called.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn gen(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, false)] }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`
    pub fn commutator(&self, other: &Word) -> Word {
        let mut w = self.concat(other);
        w.extend(&self.inverse());
        w.extend(&other.inverse());
        w
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Word) -> Word {
        let mut w = g.concat(self);
        w.extend(&g.inverse());
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Delete every occurrence of `gen` (the quotient setting it to 1).
    pub fn erase(&self, gen: usize) -> Word {
        Word { letters: self.letters.iter().copied().filter(|l| l.gen != gen).collect() }
    }

    /// Replace each letter of `gen` by `image` (inverted for inverse letters).
    pub fn substitute(&self, gen: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let mut out = Word::empty();
        for &l in &self.letters {
            if l.gen != gen {
                out.push(l);
            } else if l.inverse {
                out.extend(&inv);
            } else {
                out.extend(image);
            }
        }
        out
    }

    /// Simultaneous substitution: generator `g` becomes `images[g]`.
    pub fn map_letters(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for &l in &self.letters {
            if l.inverse {
                out.extend(&images[l.gen].inverse());
            } else {
                out.extend(&images[l.gen]);
            }
        }
        out
    }

    /// Rewrite generator indices through `map` (indexed by old generator).
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word {
            letters: self.letters.iter().map(|l| Letter::new(map[l.gen], l.inverse)).collect(),
        }
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.letters.iter().any(|l| l.gen == gen)
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        WordExpr::parse(text)?.flatten(alphabet)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.gen))?;
            if l.inverse {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

/// Structured word keeping commutator and power sugar for printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordExpr {
    Gen(String),
    Product(Vec<WordExpr>),
    Inverse(Box<WordExpr>),
    Commutator(Box<WordExpr>, Box<WordExpr>),
    Power(Box<WordExpr>, i64),
}

impl WordExpr {
    pub fn gen(name: impl Into<String>) -> Self {
        WordExpr::Gen(name.into())
    }

    pub fn identity() -> Self {
        WordExpr::Product(Vec::new())
    }

    pub fn commutator(a: WordExpr, b: WordExpr) -> Self {
        WordExpr::Commutator(Box::new(a), Box::new(b))
    }

    pub fn inverse(self) -> Self {
        WordExpr::Inverse(Box::new(self))
    }

    pub fn parse(text: &str) -> Result<WordExpr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.product()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(e)
    }

    pub fn flatten(&self, alphabet: &Alphabet) -> Result<Word> {
        let mut w = Word::empty();
        self.flatten_into(alphabet, &mut w)?;
        Ok(w)
    }

    fn flatten_into(&self, alphabet: &Alphabet, out: &mut Word) -> Result<()> {
        match self {
            WordExpr::Gen(n) => out.push(Letter::new(alphabet.lookup(n)?, false)),
            WordExpr::Product(items) => {
                for i in items {
                    i.flatten_into(alphabet, out)?;
                }
            }
            WordExpr::Inverse(e) => out.extend(&e.flatten(alphabet)?.inverse()),
            WordExpr::Commutator(a, b) => {
                out.extend(&a.flatten(alphabet)?.commutator(&b.flatten(alphabet)?))
            }
            WordExpr::Power(e, n) => out.extend(&e.flatten(alphabet)?.pow(*n)),
        }
        Ok(())
    }

    /// Generator names in order of first appearance.
    pub fn names(&self) -> Vec<String> {
        fn walk(e: &WordExpr, out: &mut Vec<String>) {
            match e {
                WordExpr::Gen(n) => {
                    if !out.contains(n) {
                        out.push(n.clone())
                    }
                }
                WordExpr::Product(items) => items.iter().for_each(|i| walk(i, out)),
                WordExpr::Inverse(e) | WordExpr::Power(e, _) => walk(e, out),
                WordExpr::Commutator(a, b) => {
                    walk(a, out);
                    walk(b, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    fn is_bracketed(&self) -> bool {
        matches!(self, WordExpr::Commutator(..))
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Gen(n) => f.write_str(n),
            WordExpr::Product(items) if items.is_empty() => f.write_str("1"),
            WordExpr::Product(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 && !item.is_bracketed() && !items[i - 1].is_bracketed() {
                        f.write_str(" ")?;
                    }
                    match item {
                        WordExpr::Product(inner) if inner.len() > 1 => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
            WordExpr::Inverse(e) => match **e {
                WordExpr::Gen(_) | WordExpr::Commutator(..) => write!(f, "{e}'"),
                _ => write!(f, "({e})'"),
            },
            WordExpr::Commutator(a, b) => write!(f, "[{a},{b}]"),
            WordExpr::Power(e, n) => match **e {
                WordExpr::Gen(_) | WordExpr::Commutator(..) => write!(f, "{e}^{n}"),
                _ => write!(f, "({e})^{n}"),
            },
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn product(&mut self) -> Result<WordExpr> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == b']' || c == b')' || c == b',' {
                break;
            }
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { WordExpr::Product(items) })
    }

    fn factor(&mut self) -> Result<WordExpr> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    e = e.inverse();
                }
                Some(b'^') => {
                    self.pos += 1;
                    let n = self.integer()?;
                    e = WordExpr::Power(Box::new(e), n);
                }
                _ => return Ok(e),
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse { pos: start, msg: "expected integer exponent".into() })
    }

    fn atom(&mut self) -> Result<WordExpr> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.product()?;
                self.expect(b',')?;
                let b = self.product()?;
                self.expect(b']')?;
                Ok(WordExpr::commutator(a, b))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.product()?;
                self.expect(b')')?;
                Ok(match e {
                    WordExpr::Product(_) => e,
                    other => WordExpr::Product(vec![other]),
                })
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(WordExpr::identity())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                Ok(WordExpr::Gen(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
            }
            Some(_) => Err(self.error("expected generator, `[`, `(` or `1`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(&["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn commutator_sugar_expands() {
        let w = Word::parse("[a,b]", &abc()).unwrap();
        assert_eq!(w.display(&abc()).to_string(), "a b a' b'");
    }

    #[test]
    fn juxtaposed_numbered_names_split() {
        let al = Alphabet::numbered("m", 3);
        let w = Word::parse("m1m2'm3", &al).unwrap();
        assert_eq!(w.display(&al).to_string(), "m1 m2' m3");
    }

    #[test]
    fn powers_and_group_inverse() {
        let al = abc();
        let w = Word::parse("(a b)^-2", &al).unwrap();
        assert_eq!(w.display(&al).to_string(), "b' a' b' a'");
        let w = Word::parse("(a b)'", &al).unwrap();
        assert_eq!(w.display(&al).to_string(), "b' a'");
        assert!(Word::parse("[a,1]", &al).unwrap().free_reduce().is_empty());
    }

    #[test]
    fn expr_display_keeps_brackets() {
        for s in ["[a,b]", "[[a,b],c]", "[a,b][c,d]", "a b' [a,c]'", "(a b)^3"] {
            assert_eq!(WordExpr::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parse_errors_report_position() {
        let err = WordExpr::parse("[a,b").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 4, .. }));
        assert!(matches!(WordExpr::parse("a $"), Err(Error::Parse { pos: 2, .. })));
        assert_eq!(
            Word::parse("q", &abc()).unwrap_err(),
            Error::UnknownGenerator("q".into())
        );
    }

    #[test]
    fn substitution_inverts_image() {
        let al = abc();
        let w = Word::parse("a c' b", &al).unwrap();
        let img = Word::parse("[a,b]", &al).unwrap();
        let s = w.substitute(2, &img);
        assert_eq!(s.display(&al).to_string(), "a b a b' a' b");
        assert_eq!(s.erase(1).free_reduce().display(&al).to_string(), "a");
    }

    #[test]
    fn duplicate_alphabet_rejected() {
        assert!(Alphabet::new(&["x", "x"]).is_err());
    }
}
