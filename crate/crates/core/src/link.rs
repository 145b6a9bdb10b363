//! Links presented by longitude words in the meridians.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milnor::{magnus, normal_form};
use crate::word::{Alphabet, Word, WordExpr};

/// Name of the solid-torus core; in a solid-torus link it is the meridian of
/// the extra component whose longitude is the wedge.
pub const CORE_SYMBOL: &str = "lambda";

/// Component `i` is named after its meridian; its longitude is a word in the
/// meridians of the other components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkModel {
    alphabet: Alphabet,
    longitudes: Vec<Word>,
}

fn check_name(name: &str) -> Result<()> {
    match WordExpr::parse(name) {
        Ok(WordExpr::Gen(g)) if g == name => Ok(()),
        _ => Err(Error::LinkFile(format!("`{name}` is not a generator name"))),
    }
}

impl LinkModel {
    pub fn new<S: AsRef<str>>(names: &[S], longitudes: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::TooFewComponents { needed: 1, got: 0 });
        }
        for n in names {
            check_name(n.as_ref())?;
        }
        let alphabet = Alphabet::new(names)?;
        if longitudes.len() != names.len() {
            return Err(Error::LinkFile(format!(
                "{} components but {} longitudes",
                names.len(),
                longitudes.len()
            )));
        }
        for (i, w) in longitudes.iter().enumerate() {
            if let Some(g) = w.max_gen() {
                if g >= names.len() {
                    return Err(Error::UnknownGenerator(format!("generator #{}", g + 1)));
                }
            }
            if w.mentions(i) {
                return Err(Error::SelfLongitude(alphabet.name(i).to_string()));
            }
        }
        Ok(LinkModel { alphabet, longitudes })
    }

    /// Build from `(name, longitude text)` pairs; words may only use the
    /// listed names.
    pub fn from_words(spec: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<&str> = spec.iter().map(|p| p.0).collect();
        let alphabet = Alphabet::new(&names)?;
        let words = spec.iter().map(|p| Word::parse(p.1, &alphabet)).collect::<Result<Vec<_>>>()?;
        LinkModel::new(&names, words)
    }

    /// `n`-component unlink with meridians `m1..mn`.
    pub fn unlink(n: usize) -> Result<Self> {
        let alphabet = Alphabet::numbered("m", n);
        LinkModel::new(alphabet.names(), vec![Word::empty(); n])
    }

    pub fn len(&self) -> usize {
        self.longitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.longitudes.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn names(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn longitude(&self, i: usize) -> &Word {
        &self.longitudes[i]
    }

    pub fn longitudes(&self) -> &[Word] {
        &self.longitudes
    }

    /// Component index from a name or a 1-based number.
    pub fn component(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.alphabet.position(key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(k) if (1..=self.len()).contains(&k) => Ok(k - 1),
            _ => Err(Error::UnknownComponent(key.to_string())),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownComponent(format!("#{}", i + 1)))
        }
    }

    /// Keep the components whose bit is set in `mask`, erasing the
    /// meridians of the others.
    pub fn sublink(&self, mask: u64) -> Result<LinkModel> {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut map = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let names: Vec<&str> = keep.iter().map(|&i| self.alphabet.name(i)).collect();
        let words = keep
            .iter()
            .map(|&i| {
                let w = Word::from_letters(
                    self.longitudes[i].letters().iter().copied().filter(|l| map[l.gen] != usize::MAX).collect(),
                );
                w.relabel(&map)
            })
            .collect();
        LinkModel::new(&names, words)
    }

    /// Remove component `i`; its meridian is set to 1 in the other longitudes.
    pub fn delete_component(&self, i: usize) -> Result<LinkModel> {
        self.check_index(i)?;
        if self.len() == 1 {
            return Err(Error::TooFewComponents { needed: 2, got: 1 });
        }
        self.sublink(full_mask(self.len()) & !(1 << i))
    }

    /// Same link with components listed in `order` (a permutation).
    pub fn reorder(&self, order: &[usize]) -> Result<LinkModel> {
        let mut map = vec![usize::MAX; self.len()];
        for (new, &old) in order.iter().enumerate() {
            self.check_index(old)?;
            map[old] = new;
        }
        if order.len() != self.len() || map.contains(&usize::MAX) {
            return Err(Error::LinkFile("reorder needs a permutation".into()));
        }
        let names: Vec<&str> = order.iter().map(|&i| self.alphabet.name(i)).collect();
        let words = order.iter().map(|&i| self.longitudes[i].relabel(&map)).collect();
        LinkModel::new(&names, words)
    }

    /// `μ̄(i₁…i_k j)`: the coefficient of `y_{i₁}⋯y_{i_k}` in the Magnus
    /// expansion of the longitude of `j`, one variable per component.
    pub fn mu_bar(&self, idx: &MuIndex) -> Result<BigInt> {
        for &i in &idx.0 {
            self.check_index(i)?;
        }
        let (&j, rest) = idx.0.split_last().expect("validated index");
        Ok(magnus(&self.longitudes[j], self.len())?.coeff_of(rest))
    }

    /// Link-homotopy triviality: every proper sublink is trivial and each
    /// longitude is the identity in the free Milnor group of the other
    /// meridians.
    pub fn is_homotopically_trivial(&self) -> bool {
        let mut memo = HashMap::new();
        self.trivial_mask(full_mask(self.len()), &mut memo)
    }

    fn trivial_mask(&self, mask: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if mask.count_ones() <= 1 {
            return true;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let members: Vec<usize> = (0..self.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut ok = members.iter().all(|&i| self.trivial_mask(mask & !(1 << i), memo));
        if ok {
            ok = members.iter().all(|&i| {
                // relabel the other members as 0..n-2, dropping everything else
                let others = mask & !(1 << i);
                let mut map = vec![usize::MAX; self.len()];
                for (new, old) in (0..self.len()).filter(|&t| others >> t & 1 == 1).enumerate() {
                    map[old] = new;
                }
                let w = Word::from_letters(
                    self.longitudes[i].letters().iter().copied().filter(|l| map[l.gen] != usize::MAX).collect(),
                )
                .relabel(&map);
                normal_form(&w, members.len() - 1).expect("relabelled into range").is_identity()
            });
        }
        memo.insert(mask, ok);
        ok
    }

    /// Every sublink with one component removed is homotopically trivial.
    /// Two-component links count as almost trivial.
    pub fn is_almost_trivial(&self) -> Result<bool> {
        if self.len() < 2 {
            return Err(Error::TooFewComponents { needed: 2, got: self.len() });
        }
        let mut memo = HashMap::new();
        let full = full_mask(self.len());
        Ok((0..self.len()).all(|i| self.trivial_mask(full & !(1 << i), &mut memo)))
    }

    pub fn to_file(&self) -> LinkFile {
        LinkFile {
            components: self.names().to_vec(),
            longitudes: self
                .names()
                .iter()
                .zip(&self.longitudes)
                .map(|(n, w)| (n.clone(), w.display(&self.alphabet).to_string()))
                .collect(),
            wedge: None,
        }
    }
}

impl fmt::Display for LinkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.longitudes.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}: {}", self.alphabet.name(i), w.display(&self.alphabet))?;
        }
        Ok(())
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A link in the solid torus `S¹×D²`. Stored as its hat: the link plus one
/// more component, named [`CORE_SYMBOL`], whose meridian is the core of the
/// solid torus and whose longitude is the wedge (the meridian curve
/// `{1}×∂D²`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolidTorusLink {
    hat: LinkModel,
}

impl SolidTorusLink {
    /// `spec` lists `(name, longitude)`; longitudes may mention `lambda`.
    pub fn from_words(spec: &[(&str, &str)], wedge: &str) -> Result<Self> {
        let mut all: Vec<(&str, &str)> = spec.to_vec();
        all.push((CORE_SYMBOL, wedge));
        SolidTorusLink::from_hat(LinkModel::from_words(&all)?)
    }

    /// Wrap a link whose last component is the core symbol.
    pub fn from_hat(hat: LinkModel) -> Result<Self> {
        if hat.names().last().map(String::as_str) != Some(CORE_SYMBOL) {
            return Err(Error::MissingWedge);
        }
        if hat.len() < 2 {
            return Err(Error::TooFewComponents { needed: 1, got: 0 });
        }
        Ok(SolidTorusLink { hat })
    }

    pub fn hat(&self) -> &LinkModel {
        &self.hat
    }

    /// Number of components in the solid torus.
    pub fn len(&self) -> usize {
        self.hat.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> &[String] {
        &self.hat.names()[..self.len()]
    }

    /// Index of the core symbol in the hat alphabet.
    pub fn core_index(&self) -> usize {
        self.len()
    }

    /// Wedge word over the hat alphabet; never mentions the core.
    pub fn wedge(&self) -> &Word {
        self.hat.longitude(self.len())
    }

    pub fn longitude(&self, i: usize) -> &Word {
        self.hat.longitude(i)
    }

    pub fn to_file(&self) -> LinkFile {
        let mut f = self.hat.to_file();
        f.components.pop();
        f.wedge = f.longitudes.remove(CORE_SYMBOL);
        f
    }
}

impl fmt::Display for SolidTorusLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.hat.alphabet();
        for i in 0..self.len() {
            writeln!(f, "{}: {}", a.name(i), self.longitude(i).display(a))?;
        }
        write!(f, "wedge: {}", self.wedge().display(a))
    }
}

/// Either kind of link, as read from a file or the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyLink {
    Plain(LinkModel),
    SolidTorus(SolidTorusLink),
}

impl AnyLink {
    /// The link viewed in `S³`: solid-torus links become their hats.
    pub fn as_model(&self) -> &LinkModel {
        match self {
            AnyLink::Plain(l) => l,
            AnyLink::SolidTorus(q) => q.hat(),
        }
    }

    pub fn to_file(&self) -> LinkFile {
        match self {
            AnyLink::Plain(l) => l.to_file(),
            AnyLink::SolidTorus(q) => q.to_file(),
        }
    }
}

impl fmt::Display for AnyLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyLink::Plain(l) => l.fmt(f),
            AnyLink::SolidTorus(q) => q.fmt(f),
        }
    }
}

/// On-disk link format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkFile {
    pub components: Vec<String>,
    #[serde(default)]
    pub longitudes: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wedge: Option<String>,
}

impl LinkFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::LinkFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("link files serialize")
    }

    /// Missing longitudes are empty words.
    pub fn into_link(self) -> Result<AnyLink> {
        for key in self.longitudes.keys() {
            if !self.components.contains(key) {
                return Err(Error::UnknownComponent(key.clone()));
            }
        }
        let mut pairs: Vec<(&str, &str)> = self
            .components
            .iter()
            .map(|c| (c.as_str(), self.longitudes.get(c).map_or("", String::as_str)))
            .collect();
        match &self.wedge {
            None => Ok(AnyLink::Plain(LinkModel::from_words(&pairs)?)),
            Some(w) => {
                if self.components.iter().any(|c| c == CORE_SYMBOL) {
                    return Err(Error::AlphabetCollision(CORE_SYMBOL.into()));
                }
                pairs.push((CORE_SYMBOL, w.as_str()));
                let hat = LinkModel::from_words(&pairs).map_err(|e| match e {
                    Error::SelfLongitude(_) => Error::LinkFile("wedge mentions the core".into()),
                    e => e,
                })?;
                Ok(AnyLink::SolidTorus(SolidTorusLink::from_hat(hat)?))
            }
        }
    }
}

/// Multi-index `(i₁, …, i_k, j)` of distinct components, `k ≥ 1`, stored
/// 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MuIndex(Vec<usize>);

impl MuIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::Parse { pos: 0, msg: "a multi-index needs at least two entries".into() });
        }
        let mut seen = 0u128;
        for &i in &indices {
            if i >= 128 || seen >> i & 1 == 1 {
                return Err(Error::RepeatedIndex(i + 1));
            }
            seen |= 1 << i;
        }
        Ok(MuIndex(indices))
    }

    /// From 1-based entries.
    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::UnknownComponent("0".into()));
        }
        MuIndex::new(indices.iter().map(|i| i - 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// The component whose longitude is expanded.
    pub fn target(&self) -> usize {
        *self.0.last().unwrap()
    }
}

impl FromStr for MuIndex {
    type Err = Error;

    /// Comma-separated, 1-based: `2,3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let idx = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad index `{p}`") }))
            .collect::<Result<Vec<_>>>()?;
        MuIndex::from_one_based(&idx)
    }
}

impl fmt::Display for MuIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

const FIXTURES: &str = include_str!("../tests/fixtures/catalog_longitudes.json");

#[derive(Deserialize)]
struct FixtureLink {
    components: Vec<String>,
    longitudes: BTreeMap<String, String>,
}

fn fixture(name: &str) -> FixtureLink {
    let all: BTreeMap<String, serde_json::Value> = serde_json::from_str(FIXTURES).expect("fixture json");
    serde_json::from_value(all[name].clone()).expect("fixture entry")
}

fn fixture_link(name: &str) -> LinkModel {
    let f = fixture(name);
    let pairs: Vec<(&str, &str)> = f.components.iter().map(|c| (c.as_str(), f.longitudes[c].as_str())).collect();
    LinkModel::from_words(&pairs).expect("fixture link is valid")
}

/// Substitute meridian names in a fixture word.
fn rename(word: &str, from: &[&str], to: &[&str]) -> String {
    word.split_whitespace()
        .map(|tok| {
            let (base, tail) = tok.split_at(tok.trim_end_matches('\'').len());
            let base = from.iter().position(|f| *f == base).map_or(base, |i| to[i]);
            format!("{base}{tail}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub const CATALOG: [&str; 6] = ["unlink(n)", "hopf", "borromean", "whitehead_pattern", "core", "bing_double"];

/// Built-in examples. Longitudes come from Wirtinger presentations of
/// standard diagrams (see `oracle/wirtinger.py`).
///
/// - `unlink(n)` or `unlinkN`: trivial `n`-component link
/// - `hopf`, `borromean`: meridians `m1..`
/// - `whitehead_pattern`: the Whitehead link; each longitude is a Milnor
///   relation in the other meridian
/// - `core`: the core circle of the solid torus
/// - `bing_double`: Bing double of the core; its hat is the Borromean rings
pub fn catalog(name: &str) -> Result<AnyLink> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    if let Some(rest) = name.strip_prefix("unlink") {
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let n: usize = if digits.is_empty() { 2 } else { digits.parse().map_err(|_| unknown())? };
        if n == 0 {
            return Err(unknown());
        }
        return Ok(AnyLink::Plain(LinkModel::unlink(n)?));
    }
    let link = match name {
        "hopf" => AnyLink::Plain(fixture_link("hopf")),
        "borromean" => AnyLink::Plain(fixture_link("borromean")),
        "whitehead_pattern" => AnyLink::Plain(fixture_link("whitehead")),
        "core" => AnyLink::SolidTorus(SolidTorusLink::from_words(&[("z1", CORE_SYMBOL)], "z1")?),
        "bing_double" => {
            // Borromean rings with the third ring as the wedge circle
            let f = fixture("borromean");
            let from = ["m1", "m2", "m3"];
            let to = ["z1", "z2", CORE_SYMBOL];
            let l = |c: &str| rename(&f.longitudes[c], &from, &to);
            let (z1, z2, wedge) = (l("m1"), l("m2"), l("m3"));
            AnyLink::SolidTorus(SolidTorusLink::from_words(&[("z1", &z1), ("z2", &z2)], &wedge)?)
        }
        _ => return Err(unknown()),
    };
    Ok(link)
}

/// Catalog entry that must be an ordinary link.
pub fn catalog_link(name: &str) -> Result<LinkModel> {
    match catalog(name)? {
        AnyLink::Plain(l) => Ok(l),
        AnyLink::SolidTorus(q) => Ok(q.hat().clone()),
    }
}

/// Catalog entry that must be a solid-torus link.
pub fn catalog_solid_torus(name: &str) -> Result<SolidTorusLink> {
    match catalog(name)? {
        AnyLink::SolidTorus(q) => Ok(q),
        AnyLink::Plain(_) => Err(Error::MissingWedge),
    }
}
