//! Replacing a component of a link by a link carried in its tubular
//! neighbourhood, at the level of longitude words.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::link::{CORE_SYMBOL, LinkModel, SolidTorusLink};
use crate::milnor::{r_inverse, r_map};
use crate::random;
use crate::ring::RingElement;
use crate::word::Word;

/// Ambient link `L̂` with `k + 1` components, a solid-torus link `Q` with
/// `m` components, and the component of `L̂` that `Q` replaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSpec {
    lhat: LinkModel,
    q: SolidTorusLink,
    target: usize,
}

impl CompositionSpec {
    /// Replace the last component of `lhat`.
    pub fn new(lhat: LinkModel, q: SolidTorusLink) -> Result<Self> {
        let target = lhat.len() - 1;
        CompositionSpec::with_target(lhat, q, target)
    }

    pub fn with_target(lhat: LinkModel, q: SolidTorusLink, target: usize) -> Result<Self> {
        if target >= lhat.len() {
            return Err(Error::UnknownComponent(format!("#{}", target + 1)));
        }
        for (i, name) in lhat.names().iter().enumerate() {
            if i != target && (q.names().contains(name) || name == CORE_SYMBOL) {
                return Err(Error::AlphabetCollision(name.clone()));
            }
        }
        // move the target to the end so that it plays the role of m_{k+1}
        let mut order: Vec<usize> = (0..lhat.len()).filter(|&i| i != target).collect();
        order.push(target);
        let lhat = lhat.reorder(&order)?;
        let target = lhat.len() - 1;
        Ok(CompositionSpec { lhat, q, target })
    }

    /// Ambient link with the replaced component last.
    pub fn lhat(&self) -> &LinkModel {
        &self.lhat
    }

    pub fn q(&self) -> &SolidTorusLink {
        &self.q
    }

    /// `k`: components of `L̂` that survive.
    pub fn k(&self) -> usize {
        self.target
    }

    /// `m`: components of `Q`.
    pub fn m(&self) -> usize {
        self.q.len()
    }

    /// Composed alphabet index of `L̂` generator `g` (not the target).
    fn ambient_index(&self, g: usize) -> usize {
        g
    }

    /// Composed alphabet index of `Q` component `j`.
    fn q_index(&self, j: usize) -> usize {
        self.k() + j
    }

    fn wedge_composed(&self) -> Word {
        let map: Vec<usize> = (0..=self.m()).map(|j| self.q_index(j)).collect();
        self.q.wedge().relabel(&map)
    }

    /// `lc`: `m_{k+1} ↦ ∧`, other meridians renamed into the composed
    /// alphabet.
    pub fn lc(&self, word: &Word) -> Word {
        let wedge = self.wedge_composed();
        let images: Vec<Word> = (0..=self.k())
            .map(|g| if g == self.target { wedge.clone() } else { Word::gen(self.ambient_index(g)) })
            .collect();
        word.map_letters(&images)
    }

    /// Ambient longitude of the replaced component, in the composed alphabet.
    fn core_image(&self) -> Word {
        self.lc(self.lhat.longitude(self.target))
    }
}

/// `L ∪ φ(Q)`: components `l_1..l_k` followed by the components of `Q`.
pub fn compose(spec: &CompositionSpec) -> Result<LinkModel> {
    let mut names: Vec<&str> = spec.lhat.names()[..spec.k()].iter().map(String::as_str).collect();
    names.extend(spec.q.names().iter().map(String::as_str));
    let mut words: Vec<Word> = (0..spec.k()).map(|a| spec.lc(spec.lhat.longitude(a))).collect();
    let core = spec.core_image();
    let images: Vec<Word> = (0..=spec.m())
        .map(|j| if j == spec.q.core_index() { core.clone() } else { Word::gen(spec.q_index(j)) })
        .collect();
    words.extend((0..spec.m()).map(|j| spec.q.longitude(j).map_letters(&images)));
    LinkModel::new(&names, words)
}

/// `∧_R = r⁻¹(∧)` with component `deleted` of `Q` as the distinguished last
/// meridian. Variables are the other components of `Q` in order.
pub fn wedge_ring_element(q: &SolidTorusLink, deleted: usize) -> Result<RingElement> {
    if deleted >= q.len() {
        return Err(Error::UnknownComponent(format!("#{}", deleted + 1)));
    }
    let mut map = vec![0; q.len() + 1];
    let mut next = 0;
    for (j, slot) in map.iter_mut().enumerate().take(q.len()) {
        if j != deleted {
            *slot = next;
            next += 1;
        }
    }
    map[deleted] = q.len() - 1;
    r_inverse(&q.wedge().relabel(&map), q.len())
}

/// Working alphabet for σ and the certificate: `m_2..m_k, z_2..z_m, z_1`,
/// as a relabelling of the composed alphabet (with `l_1` dropped).
fn sigma_map(spec: &CompositionSpec) -> Vec<usize> {
    let (k, m) = (spec.k(), spec.m());
    let mut map = vec![usize::MAX; k + m];
    for (a, slot) in map.iter_mut().enumerate().take(k).skip(1) {
        *slot = a - 1;
    }
    for j in 1..m {
        map[k + j] = k - 1 + j - 1;
    }
    map[k] = k + m - 2;
    map
}

fn sigma_rank(spec: &CompositionSpec) -> usize {
    spec.k() + spec.m() - 1
}

/// Embed `ρ ∈ R(y_2..y_k)` into the working ring.
fn widen_y(rho: &RingElement, spec: &CompositionSpec) -> RingElement {
    let map: Vec<usize> = (0..rho.nvars()).collect();
    rho.remap(&map, sigma_rank(spec) - 1)
}

/// Embed `ρ ∈ R(z_2..z_m)` into the working ring.
fn widen_z(rho: &RingElement, spec: &CompositionSpec) -> RingElement {
    let map: Vec<usize> = (0..rho.nvars()).map(|j| spec.k() - 1 + j).collect();
    rho.remap(&map, sigma_rank(spec) - 1)
}

/// `r̄(ρ)` for `ρ ∈ R(y_2..y_k)`: a word in the ambient alphabet with
/// `m_{k+1}` as the last meridian.
fn ambient_r(rho: &RingElement, spec: &CompositionSpec) -> Word {
    // r_map works over y_1..y_{k-1}, last = k-1; shift past l_1
    let map: Vec<usize> = (0..spec.k()).map(|g| g + 1).collect();
    r_map(rho).relabel(&map)
}

/// `σ(ρ) = r⁻¹(lc(r̄(ρ)))` in `R(y_2..y_k, z_2..z_m)`.
pub fn sigma(spec: &CompositionSpec, rho: &RingElement) -> Result<RingElement> {
    if rho.nvars() + 1 != spec.k() {
        return Err(Error::UniverseMismatch { left: rho.nvars(), right: spec.k().saturating_sub(1) });
    }
    let w = spec.lc(&ambient_r(rho, spec)).relabel(&sigma_map(spec));
    r_inverse(&w, sigma_rank(spec))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCase {
    pub rho: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub variables: Vec<String>,
    pub wedge_r: String,
    pub cases: Vec<SigmaCase>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

fn sigma_names(spec: &CompositionSpec) -> Vec<String> {
    let mut v: Vec<String> = spec.lhat.names()[1..spec.k()].to_vec();
    v.extend(spec.q.names()[1..].iter().cloned());
    v
}

/// Check `σ(ρ) = ρ · ∧_R` on `1`, every variable and `trials` random `ρ`.
/// Needs `k ≥ 1` so that `l_1` exists.
pub fn verify_sigma(spec: &CompositionSpec, trials: usize, seed: u64) -> Result<SigmaReport> {
    if spec.k() == 0 {
        return Err(Error::TooFewComponents { needed: 2, got: spec.lhat.len() });
    }
    let s = spec.k() - 1;
    let names = sigma_names(spec);
    let wedge = widen_z(&wedge_ring_element(&spec.q, 0)?, spec);
    let mut inputs = vec![RingElement::one(s)];
    for i in 0..s {
        inputs.push(RingElement::var(s, i)?);
    }
    for t in 0..trials {
        let mut rng = random::case_rng(seed, t as u64);
        inputs.push(random::ring_element(&mut rng, s, 3, s));
    }
    let mut cases = Vec::with_capacity(inputs.len());
    for rho in inputs {
        let lhs = sigma(spec, &rho)?;
        let rhs = widen_y(&rho, spec).checked_mul(&wedge)?;
        cases.push(SigmaCase {
            rho: rho.display_with(&names[..s]).to_string(),
            lhs: lhs.display_with(&names).to_string(),
            rhs: rhs.display_with(&names).to_string(),
            pass: lhs == rhs,
        });
    }
    Ok(SigmaReport { variables: names.clone(), wedge_r: wedge.display_with(&names).to_string(), cases })
}

/// Distinguished coefficients: `a` of `L̂`, `b` of `Q`, `c` of the composed
/// link, with `c = a·b` expected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.c == &self.a * &self.b
    }
}

/// `a` = coefficient of `y_2⋯y_k` in `r̄⁻¹(l_1)`, `b` = coefficient of
/// `z_2⋯z_m` in `∧_R`, `c` = coefficient of `y_2⋯y_k z_2⋯z_m` in
/// `r⁻¹` of the composed first longitude. Refused unless `L̂` and `Q̂` are
/// almost homotopically trivial.
pub fn essentiality_certificate(spec: &CompositionSpec) -> Result<Certificate> {
    if spec.lhat.len() < 2 || !spec.lhat.is_almost_trivial()? {
        return Err(Error::NotAlmostTrivial("the ambient link"));
    }
    if !spec.q.hat().is_almost_trivial()? {
        return Err(Error::NotAlmostTrivial("the hat of the pattern"));
    }
    let (k, m) = (spec.k(), spec.m());
    let ys: Vec<usize> = (0..k - 1).collect();
    let zs: Vec<usize> = (0..m - 1).collect();

    // l_1 over m_2..m_{k+1}
    let map: Vec<usize> = (0..=k).map(|g| g.saturating_sub(1)).collect();
    let l1 = spec.lhat.longitude(0).relabel(&map);
    let a = r_inverse(&l1, k)?.coeff_of(&ys);

    let b = wedge_ring_element(&spec.q, 0)?.coeff_of(&zs);

    let composed = compose(spec)?;
    let w = composed.longitude(0).relabel(&sigma_map(spec));
    let both: Vec<usize> = ys.iter().copied().chain(zs.iter().map(|j| k - 1 + j)).collect();
    let c = r_inverse(&w, sigma_rank(spec))?.coeff_of(&both);
    Ok(Certificate { a, b, c })
}
