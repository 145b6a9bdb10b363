//! Rooted paired trees of gropes.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! GROPE := "*" | "(" PAIR+ ")"
//! PAIR  := "{" GROPE GROPE "}"
//! ```
//!
//! A `*` is a tip (a circle with no stage attached); a parenthesised group is
//! a surface stage whose symplectic pairs are the braces.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word, WordExpr};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GropeTree {
    Leaf,
    Surface(Surface),
}

/// A surface stage: one or more symplectic pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surface {
    pairs: Vec<(GropeTree, GropeTree)>,
}

impl Surface {
    pub fn new(pairs: Vec<(GropeTree, GropeTree)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "surface with no pairs".into() });
        }
        Ok(Surface { pairs })
    }

    pub fn pairs(&self) -> &[(GropeTree, GropeTree)] {
        &self.pairs
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Steps `(pair index, side)` from the bottom surface to a vertex.
/// Text form: `0L/1R`; the empty string is the bottom itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TipPath(pub Vec<(usize, Side)>);

impl TipPath {
    pub fn steps(&self) -> &[(usize, Side)] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for TipPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, s)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char('/')?;
            }
            write!(f, "{p}{}", if *s == Side::Left { 'L' } else { 'R' })?;
        }
        Ok(())
    }
}

impl FromStr for TipPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TipPath::default());
        }
        let bad = || Error::InvalidTip(s.to_string());
        let mut steps = Vec::new();
        for part in s.split('/') {
            let part = part.trim();
            let (num, side) = part.split_at(part.len().checked_sub(1).ok_or_else(bad)?);
            let side = match side {
                "L" | "l" => Side::Left,
                "R" | "r" => Side::Right,
                _ => return Err(bad()),
            };
            steps.push((num.parse().map_err(|_| bad())?, side));
        }
        Ok(TipPath(steps))
    }
}

impl GropeTree {
    pub fn surface(pairs: Vec<(GropeTree, GropeTree)>) -> Result<GropeTree> {
        Ok(GropeTree::Surface(Surface::new(pairs)?))
    }

    /// Genus-1 surface with the two given subtrees.
    pub fn pair(left: GropeTree, right: GropeTree) -> GropeTree {
        GropeTree::Surface(Surface { pairs: vec![(left, right)] })
    }

    pub fn parse(text: &str) -> Result<GropeTree> {
        let mut p = TreeParser { src: text.as_bytes(), pos: 0 };
        let t = p.grope()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, GropeTree::Leaf)
    }

    /// Leaf ↦ 1; surface ↦ min over pairs of class(left) + class(right).
    pub fn class(&self) -> usize {
        match self {
            GropeTree::Leaf => 1,
            GropeTree::Surface(s) => s.pairs.iter().map(|(a, b)| a.class() + b.class()).min().unwrap(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            GropeTree::Leaf => 1,
            GropeTree::Surface(s) => s.pairs.iter().map(|(a, b)| a.leaf_count() + b.leaf_count()).sum(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GropeTree::Leaf => 1,
            GropeTree::Surface(s) => {
                1 + s.pairs.iter().map(|(a, b)| a.vertex_count() + b.vertex_count()).sum::<usize>()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            GropeTree::Leaf => 0,
            GropeTree::Surface(s) => {
                1 + s.pairs.iter().map(|(a, b)| a.depth().max(b.depth())).max().unwrap()
            }
        }
    }

    /// Whether every surface stage has genus 1.
    pub fn all_genus_one(&self) -> bool {
        match self {
            GropeTree::Leaf => true,
            GropeTree::Surface(s) => {
                s.pairs.len() == 1 && s.pairs[0].0.all_genus_one() && s.pairs[0].1.all_genus_one()
            }
        }
    }

    /// Paths to every leaf, depth first, left before right.
    pub fn tips(&self) -> Vec<TipPath> {
        fn walk(t: &GropeTree, prefix: &mut Vec<(usize, Side)>, out: &mut Vec<TipPath>) {
            match t {
                GropeTree::Leaf => out.push(TipPath(prefix.clone())),
                GropeTree::Surface(s) => {
                    for (i, (a, b)) in s.pairs.iter().enumerate() {
                        prefix.push((i, Side::Left));
                        walk(a, prefix, out);
                        prefix.pop();
                        prefix.push((i, Side::Right));
                        walk(b, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn resolve(&self, path: &TipPath) -> Option<&GropeTree> {
        let mut t = self;
        for &(p, side) in &path.0 {
            let GropeTree::Surface(s) = t else { return None };
            let (a, b) = s.pairs.get(p)?;
            t = if side == Side::Left { a } else { b };
        }
        Some(t)
    }

    /// Boundary curve as a word in the tip generators: a leaf is its own
    /// generator and a surface is `∏ [w(left), w(right)]` over its pairs.
    /// `names` are assigned to leaves in [`GropeTree::tips`] order.
    pub fn boundary_expr<S: AsRef<str>>(&self, names: &[S]) -> Result<WordExpr> {
        let n = self.leaf_count();
        if names.len() != n {
            return Err(Error::TipNaming(format!("{n} tips but {} names", names.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for name in names {
            if !seen.insert(name.as_ref()) {
                return Err(Error::TipNaming(format!("duplicate name `{}`", name.as_ref())));
            }
        }
        fn build<S: AsRef<str>>(t: &GropeTree, names: &mut std::slice::Iter<'_, S>) -> WordExpr {
            match t {
                GropeTree::Leaf => WordExpr::gen(names.next().unwrap().as_ref()),
                GropeTree::Surface(s) => {
                    let mut items: Vec<WordExpr> = s
                        .pairs
                        .iter()
                        .map(|(a, b)| {
                            let wa = build(a, names);
                            let wb = build(b, names);
                            WordExpr::commutator(wa, wb)
                        })
                        .collect();
                    if items.len() == 1 {
                        items.pop().unwrap()
                    } else {
                        WordExpr::Product(items)
                    }
                }
            }
        }
        Ok(build(self, &mut names.iter()))
    }

    /// [`GropeTree::boundary_expr`] flattened over the alphabet of tip names.
    pub fn boundary_word<S: AsRef<str>>(&self, names: &[S]) -> Result<(Alphabet, Word)> {
        let expr = self.boundary_expr(names)?;
        let alphabet = Alphabet::new(names)?;
        let word = expr.flatten(&alphabet)?;
        Ok((alphabet, word))
    }

    /// Representative of the isomorphism class: pair members sorted, then
    /// pairs sorted, by (class, canonical text).
    pub fn canonical(&self) -> GropeTree {
        match self {
            GropeTree::Leaf => GropeTree::Leaf,
            GropeTree::Surface(s) => {
                let key = |t: &GropeTree| (t.class(), t.to_string());
                let mut pairs: Vec<(GropeTree, GropeTree)> = s
                    .pairs
                    .iter()
                    .map(|(a, b)| {
                        let (a, b) = (a.canonical(), b.canonical());
                        if key(&a) <= key(&b) {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    })
                    .collect();
                pairs.sort_by_cached_key(|(a, b)| (key(a), key(b)));
                GropeTree::Surface(Surface { pairs })
            }
        }
    }

    pub fn is_isomorphic(&self, other: &GropeTree) -> bool {
        self.canonical() == other.canonical()
    }

    /// Swap the members of pair `pair` in the surface at `at`.
    pub fn swap_pair(&self, at: &TipPath, pair: usize) -> Option<GropeTree> {
        self.edit(at.steps(), &|s: &mut Surface| {
            let p = s.pairs.get_mut(pair)?;
            std::mem::swap(&mut p.0, &mut p.1);
            Some(())
        })
    }

    /// Reverse the pair order in the surface at `at`.
    pub fn reverse_pairs(&self, at: &TipPath) -> Option<GropeTree> {
        self.edit(at.steps(), &|s: &mut Surface| {
            s.pairs.reverse();
            Some(())
        })
    }

    fn edit(&self, steps: &[(usize, Side)], f: &dyn Fn(&mut Surface) -> Option<()>) -> Option<GropeTree> {
        let GropeTree::Surface(s) = self else { return None };
        let mut s = s.clone();
        match steps.split_first() {
            None => f(&mut s)?,
            Some((&(p, side), rest)) => {
                let pair = s.pairs.get_mut(p)?;
                let child = if side == Side::Left { &mut pair.0 } else { &mut pair.1 };
                *child = child.edit(rest, f)?;
            }
        }
        Some(GropeTree::Surface(s))
    }

    pub fn to_dot(&self) -> String {
        dot(self, false)
    }
}

impl fmt::Display for GropeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GropeTree::Leaf => f.write_char('*'),
            GropeTree::Surface(s) => {
                f.write_char('(')?;
                for (i, (a, b)) in s.pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_char(' ')?;
                    }
                    write!(f, "{{{a} {b}}}")?;
                }
                f.write_char(')')
            }
        }
    }
}

impl FromStr for GropeTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GropeTree::parse(s)
    }
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
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

    fn grope(&mut self) -> Result<GropeTree> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(GropeTree::Leaf)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let mut pairs = Vec::new();
                while self.peek() == Some(b'{') {
                    self.pos += 1;
                    let a = self.grope()?;
                    let b = self.grope()?;
                    self.expect(b'}')?;
                    pairs.push((a, b));
                }
                if pairs.is_empty() {
                    if self.peek().is_none() {
                        return Err(self.error("unexpected end of input"));
                    }
                    return Err(Error::Parse { pos: open, msg: "surface with no pairs".into() });
                }
                self.expect(b')')?;
                Ok(GropeTree::Surface(Surface { pairs }))
            }
            Some(_) => Err(self.error("expected `*` or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Tree of a closed grope: the body plus an extra edge below its bottom
/// surface standing for the deleted 2-cell. The free end of that edge is
/// the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedGropeTree {
    body: GropeTree,
}

impl ClosedGropeTree {
    pub fn new(body: GropeTree) -> Result<Self> {
        if body.is_leaf() {
            return Err(Error::ClosedLeaf);
        }
        Ok(ClosedGropeTree { body })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(GropeTree::parse(text)?)
    }

    pub fn body(&self) -> &GropeTree {
        &self.body
    }

    pub fn class(&self) -> usize {
        self.body.class()
    }

    /// Tips of the closed grope; their number is the rank of `H_1`.
    pub fn free_tips(&self) -> Vec<TipPath> {
        self.body.tips()
    }

    fn check_tip(&self, tip: &TipPath) -> Result<()> {
        match self.body.resolve(tip) {
            Some(GropeTree::Leaf) => Ok(()),
            _ => Err(Error::InvalidTip(tip.to_string())),
        }
    }

    /// Partner subtree of each child on the path, listed from the bottom
    /// surface up to the tip's parent.
    fn partners(&self, tip: &TipPath) -> Result<Vec<&GropeTree>> {
        self.check_tip(tip)?;
        let mut t = &self.body;
        let mut out = Vec::with_capacity(tip.depth());
        for &(p, side) in tip.steps() {
            let GropeTree::Surface(s) = t else { unreachable!() };
            let (a, b) = &s.pairs[p];
            let (next, partner) = if side == Side::Left { (a, b) } else { (b, a) };
            out.push(partner);
            t = next;
        }
        Ok(out)
    }

    /// Tree of the grope Alexander-dual to `tip`.
    ///
    /// Along the path from the tip down to the root, every branch at a path
    /// vertex is erased except the edge just traversed and its partner. The
    /// survivor is redrawn with the tip as root, so the path vertices become
    /// a chain of genus-1 surfaces: left child continues the chain toward the
    /// old root (ending in a leaf for the old root edge), right child is the
    /// retained partner subtree.
    pub fn dual_tree(&self, tip: &TipPath) -> Result<ClosedGropeTree> {
        let partners = self.partners(tip)?;
        let body = partners
            .into_iter()
            .fold(GropeTree::Leaf, |chain, partner| GropeTree::pair(chain, partner.clone()));
        Ok(ClosedGropeTree { body })
    }

    /// `1 + Σ class(partner)` over the path vertices.
    pub fn dual_class(&self, tip: &TipPath) -> Result<usize> {
        Ok(1 + self.partners(tip)?.iter().map(|p| p.class()).sum::<usize>())
    }

    /// One dual tree per free tip, in tip order.
    pub fn duals(&self) -> Vec<(TipPath, ClosedGropeTree)> {
        self.free_tips()
            .into_iter()
            .map(|t| {
                let d = self.dual_tree(&t).expect("tips resolve to leaves");
                (t, d)
            })
            .collect()
    }

    pub fn canonical(&self) -> ClosedGropeTree {
        ClosedGropeTree { body: self.body.canonical() }
    }

    pub fn is_isomorphic(&self, other: &ClosedGropeTree) -> bool {
        self.body.is_isomorphic(&other.body)
    }

    pub fn to_dot(&self) -> String {
        dot(&self.body, true)
    }
}

impl fmt::Display for ClosedGropeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

const PAIR_COLORS: [&str; 8] =
    ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

fn dot(tree: &GropeTree, closed: bool) -> String {
    fn node(t: &GropeTree, id: &mut usize, out: &mut String, color: &mut usize) -> usize {
        let me = *id;
        *id += 1;
        match t {
            GropeTree::Leaf => {
                let _ = writeln!(out, "  n{me} [shape=point];");
            }
            GropeTree::Surface(s) => {
                let _ = writeln!(out, "  n{me} [shape=circle, label=\"\", width=0.15];");
                for (a, b) in &s.pairs {
                    let c = PAIR_COLORS[*color % PAIR_COLORS.len()];
                    *color += 1;
                    let ia = node(a, id, out, color);
                    let ib = node(b, id, out, color);
                    let _ = writeln!(out, "  n{me} -> n{ia} [color=\"{c}\", arrowhead=none];");
                    let _ = writeln!(out, "  n{me} -> n{ib} [color=\"{c}\", arrowhead=none];");
                }
            }
        }
        me
    }
    let mut out = String::from("digraph grope {\n  rankdir=BT;\n");
    let mut id = 0;
    let mut color = 0;
    if closed {
        out.push_str("  root [shape=point, xlabel=\"root\"];\n");
        let body = node(tree, &mut id, &mut out, &mut color);
        let _ = writeln!(out, "  root -> n{body} [style=bold, arrowhead=none];");
    } else {
        node(tree, &mut id, &mut out, &mut color);
    }
    out.push_str("}\n");
    out
}
