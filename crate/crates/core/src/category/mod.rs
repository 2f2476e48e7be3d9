//! Finite data of coloured concrete coboundary categories: multiplicity
//! sets, underlying sets, associators, the monoidal structure of the
//! forgetful functor and commutors, together with validators, extraction
//! from crystals and the passage to and from operadic coverings.

mod covering;
mod crystals;
mod mutation;
mod tree;
mod validate;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use covering::{category_from_covering, covering_from_category, roundtrip, CoveringCheck, FiberSummary, FiberSystem, FibreAction, GluingMap, RoundtripReport};
pub use crystals::{colour_levels, from_crystals};
pub use mutation::{mutate, mutation_test, Mutation, MutationReport};
pub use tree::{Engine, Shape, TreeElem};
pub use validate::{validate, AxiomFailure, AxiomSummary, ValidationReport};

/// Index into [`CategoryData::colours`].
pub type Colour = usize;

/// `(μ, l, c)` with `l ∈ (L(x) ⊗ L(y))_μ` and `c ∈ CL(μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiKey {
    pub mu: Colour,
    pub l: usize,
    pub c: usize,
}

/// An element of `(L(x) ⊗ L(y))_γ × (L(γ) ⊗ L(z))_ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftKey {
    pub gamma: Colour,
    pub l: usize,
    pub rho: Colour,
    pub l2: usize,
}

/// An element of `(L(x) ⊗ L(τ))_ρ × (L(y) ⊗ L(z))_τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RightKey {
    pub rho: Colour,
    pub tau: Colour,
    pub m: usize,
    pub m2: usize,
}

/// Multiplicity sets of one ordered pair, by output colour.
pub type MultTable = BTreeMap<Colour, Vec<String>>;

/// The data of a coloured concrete coboundary category, restricted to the
/// colours and pairs it stores. Only non-empty multiplicity sets are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryData {
    pub(crate) colours: Vec<String>,
    pub(crate) base: Vec<Colour>,
    pub(crate) sets: Vec<Vec<String>>,
    pub(crate) mult: BTreeMap<(Colour, Colour), MultTable>,
    pub(crate) phi: BTreeMap<(Colour, Colour), BTreeMap<PhiKey, (usize, usize)>>,
    pub(crate) sigma: BTreeMap<(Colour, Colour), BTreeMap<(usize, usize), (usize, usize)>>,
    pub(crate) assoc: BTreeMap<(Colour, Colour, Colour), BTreeMap<LeftKey, RightKey>>,
}

impl CategoryData {
    /// One colour `*`, all sets singletons, all maps identities.
    pub fn terminal() -> Self {
        CategoryData {
            colours: vec!["*".into()],
            base: vec![0],
            sets: vec![vec!["*".into()]],
            mult: BTreeMap::from([((0, 0), BTreeMap::from([(0, vec!["*".to_string()])]))]),
            phi: BTreeMap::from([((0, 0), BTreeMap::from([(PhiKey { mu: 0, l: 0, c: 0 }, (0, 0))]))]),
            sigma: BTreeMap::from([((0, 0), BTreeMap::from([((0, 0), (0, 0))]))]),
            assoc: BTreeMap::from([(
                (0, 0, 0),
                BTreeMap::from([(LeftKey { gamma: 0, l: 0, rho: 0, l2: 0 }, RightKey { rho: 0, tau: 0, m: 0, m2: 0 })]),
            )]),
        }
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn colour_name(&self, c: Colour) -> &str {
        &self.colours[c]
    }

    pub fn colour_index(&self, name: &str) -> Result<Colour> {
        self.colours.iter().position(|c| c == name).ok_or_else(|| Error::InvalidCategory(format!("unknown colour {name}")))
    }

    /// The colour list the data was built for.
    pub fn base(&self) -> &[Colour] {
        &self.base
    }

    /// A copy whose base colour list is `base`.
    pub fn with_base(&self, base: Vec<Colour>) -> Result<Self> {
        if let Some(&c) = base.iter().find(|&&c| c >= self.colours.len()) {
            return Err(Error::InvalidCategory(format!("colour index {c} out of range")));
        }
        Ok(CategoryData { base, ..self.clone() })
    }

    /// `CL(λ)`.
    pub fn set(&self, c: Colour) -> &[String] {
        &self.sets[c]
    }

    pub fn mult(&self, x: Colour, y: Colour) -> Option<&MultTable> {
        self.mult.get(&(x, y))
    }

    /// `(L(x) ⊗ L(y))_z`, empty when not stored.
    pub fn mult_set(&self, x: Colour, y: Colour, z: Colour) -> &[String] {
        self.mult.get(&(x, y)).and_then(|t| t.get(&z)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn phi(&self, x: Colour, y: Colour) -> Option<&BTreeMap<PhiKey, (usize, usize)>> {
        self.phi.get(&(x, y))
    }

    pub fn commutor(&self, x: Colour, y: Colour) -> Option<&BTreeMap<(usize, usize), (usize, usize)>> {
        self.sigma.get(&(x, y))
    }

    pub fn assoc(&self, x: Colour, y: Colour, z: Colour) -> Option<&BTreeMap<LeftKey, RightKey>> {
        self.assoc.get(&(x, y, z))
    }

    pub fn mult_pairs(&self) -> impl Iterator<Item = (Colour, Colour)> + '_ {
        self.mult.keys().copied()
    }

    pub fn phi_pairs(&self) -> impl Iterator<Item = (Colour, Colour)> + '_ {
        self.phi.keys().copied()
    }

    pub fn commutor_pairs(&self) -> impl Iterator<Item = (Colour, Colour)> + '_ {
        self.sigma.keys().copied()
    }

    pub fn assoc_triples(&self) -> impl Iterator<Item = (Colour, Colour, Colour)> + '_ {
        self.assoc.keys().copied()
    }

    /// Runs all validators over the base colour list.
    pub fn validate(&self) -> ValidationReport {
        validate(self, &self.base).expect("base colours are in range")
    }

    /// Human-readable differences from `other`; empty iff equal.
    pub fn diff(&self, other: &CategoryData) -> Vec<String> {
        let mut out = Vec::new();
        if self.colours != other.colours {
            out.push(format!("colours {:?} vs {:?}", self.colours, other.colours));
            return out;
        }
        if self.base != other.base {
            out.push("base colour lists differ".into());
        }
        for (c, (a, b)) in self.sets.iter().zip(&other.sets).enumerate() {
            if a != b {
                out.push(format!("CL({}) differs", self.colours[c]));
            }
        }
        diff_maps(&mut out, "multiplicity sets", &self.mult, &other.mult, |&(x, y)| self.pair_name(x, y));
        diff_maps(&mut out, "phi", &self.phi, &other.phi, |&(x, y)| self.pair_name(x, y));
        diff_maps(&mut out, "commutor", &self.sigma, &other.sigma, |&(x, y)| self.pair_name(x, y));
        diff_maps(&mut out, "associator", &self.assoc, &other.assoc, |&(x, y, z)| {
            format!("({}, {}, {})", self.colours[x], self.colours[y], self.colours[z])
        });
        out
    }

    pub(crate) fn pair_name(&self, x: Colour, y: Colour) -> String {
        format!("({}, {})", self.colours[x], self.colours[y])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_wire())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(s)?;
        Self::from_wire(wire)
    }

    fn to_wire(&self) -> Wire {
        let name = |c: Colour| self.colours[c].clone();
        let el = |c: Colour, k: usize| self.sets[c][k].clone();
        let ml = |x: Colour, y: Colour, z: Colour, k: usize| self.mult_set(x, y, z)[k].clone();
        Wire {
            colours: self.colours.clone(),
            base: self.base.iter().map(|&c| name(c)).collect(),
            sets: self.sets.iter().enumerate().map(|(c, s)| WireSet { colour: name(c), elements: s.clone() }).collect(),
            mult: self
                .mult
                .iter()
                .flat_map(|(&(x, y), t)| {
                    t.iter().map(move |(&z, els)| WireMult { left: name(x), right: name(y), out: name(z), elements: els.clone() })
                })
                .collect(),
            phi: self
                .phi
                .iter()
                .map(|(&(x, y), m)| WirePair {
                    left: name(x),
                    right: name(y),
                    map: m.iter().map(|(k, &(c1, c2))| ((name(k.mu), ml(x, y, k.mu, k.l), el(k.mu, k.c)), (el(x, c1), el(y, c2)))).collect(),
                })
                .collect(),
            commutor: self
                .sigma
                .iter()
                .map(|(&(x, y), m)| WirePair {
                    left: name(x),
                    right: name(y),
                    map: m.iter().map(|(&(a, b), &(c, d))| ((el(x, a), el(y, b)), (el(y, c), el(x, d)))).collect(),
                })
                .collect(),
            assoc: self
                .assoc
                .iter()
                .map(|(&(x, y, z), m)| WireAssoc {
                    colours: [name(x), name(y), name(z)],
                    map: m
                        .iter()
                        .map(|(l, r)| {
                            (
                                (name(l.gamma), ml(x, y, l.gamma, l.l), name(l.rho), ml(l.gamma, z, l.rho, l.l2)),
                                (name(r.rho), name(r.tau), ml(x, r.tau, r.rho, r.m), ml(y, z, r.tau, r.m2)),
                            )
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    fn from_wire(w: Wire) -> Result<Self> {
        let bad = |m: String| Error::InvalidCategory(m);
        let colour_ix: HashMap<&str, Colour> = w.colours.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        if colour_ix.len() != w.colours.len() {
            return Err(bad("duplicate colour names".into()));
        }
        let col = |s: &str| colour_ix.get(s).copied().ok_or_else(|| bad(format!("unknown colour {s}")));
        let base = w.base.iter().map(|s| col(s)).collect::<Result<Vec<_>>>()?;

        let mut sets: Vec<Option<Vec<String>>> = vec![None; w.colours.len()];
        for s in w.sets {
            let c = col(&s.colour)?;
            if sets[c].is_some() {
                return Err(bad(format!("CL({}) given twice", s.colour)));
            }
            if s.elements.is_empty() {
                return Err(bad(format!("CL({}) is empty", s.colour)));
            }
            check_unique(&s.elements, &format!("CL({})", s.colour))?;
            sets[c] = Some(s.elements);
        }
        let sets: Vec<Vec<String>> = sets
            .into_iter()
            .enumerate()
            .map(|(c, s)| s.ok_or_else(|| bad(format!("CL({}) missing", w.colours[c]))))
            .collect::<Result<_>>()?;
        let set_ix: Vec<HashMap<&str, usize>> = sets.iter().map(|s| s.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect()).collect();
        let el = |c: Colour, s: &str| {
            set_ix[c].get(s).copied().ok_or_else(|| bad(format!("{s} is not in CL({})", w.colours[c])))
        };

        let mut mult: BTreeMap<(Colour, Colour), MultTable> = BTreeMap::new();
        for m in w.mult {
            let (x, y, z) = (col(&m.left)?, col(&m.right)?, col(&m.out)?);
            check_unique(&m.elements, &format!("L({},{};{})", m.left, m.right, m.out))?;
            if m.elements.is_empty() {
                continue;
            }
            if mult.entry((x, y)).or_default().insert(z, m.elements).is_some() {
                return Err(bad(format!("multiplicity set ({}, {}; {}) given twice", m.left, m.right, m.out)));
            }
        }
        let mult_ix: HashMap<(Colour, Colour, Colour), HashMap<String, usize>> = mult
            .iter()
            .flat_map(|(&(x, y), t)| t.iter().map(move |(&z, v)| ((x, y, z), v.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect())))
            .collect();
        let ml = |x: Colour, y: Colour, z: Colour, s: &str| {
            mult_ix
                .get(&(x, y, z))
                .and_then(|m| m.get(s))
                .copied()
                .ok_or_else(|| bad(format!("{s} is not in L({},{};{})", w.colours[x], w.colours[y], w.colours[z])))
        };

        let mut phi = BTreeMap::new();
        for p in w.phi {
            let (x, y) = (col(&p.left)?, col(&p.right)?);
            let mut m = BTreeMap::new();
            for ((mu, l, c), (c1, c2)) in p.map {
                let mu = col(&mu)?;
                let key = PhiKey { mu, l: ml(x, y, mu, &l)?, c: el(mu, &c)? };
                if m.insert(key, (el(x, &c1)?, el(y, &c2)?)).is_some() {
                    return Err(bad(format!("phi({}, {}) has a repeated argument", p.left, p.right)));
                }
            }
            if phi.insert((x, y), m).is_some() {
                return Err(bad(format!("phi({}, {}) given twice", p.left, p.right)));
            }
        }

        let mut sigma = BTreeMap::new();
        for p in w.commutor {
            let (x, y) = (col(&p.left)?, col(&p.right)?);
            let mut m = BTreeMap::new();
            for ((a, b), (c, d)) in p.map {
                if m.insert((el(x, &a)?, el(y, &b)?), (el(y, &c)?, el(x, &d)?)).is_some() {
                    return Err(bad(format!("commutor({}, {}) has a repeated argument", p.left, p.right)));
                }
            }
            if sigma.insert((x, y), m).is_some() {
                return Err(bad(format!("commutor({}, {}) given twice", p.left, p.right)));
            }
        }

        let mut assoc = BTreeMap::new();
        for a in w.assoc {
            let [xs, ys, zs] = &a.colours;
            let (x, y, z) = (col(xs)?, col(ys)?, col(zs)?);
            let mut m = BTreeMap::new();
            for ((g, l, r, l2), (r2, t, mm, m2)) in a.map {
                let (gamma, rho, rho2, tau) = (col(&g)?, col(&r)?, col(&r2)?, col(&t)?);
                let lk = LeftKey { gamma, l: ml(x, y, gamma, &l)?, rho, l2: ml(gamma, z, rho, &l2)? };
                let rk = RightKey { rho: rho2, tau, m: ml(x, tau, rho2, &mm)?, m2: ml(y, z, tau, &m2)? };
                if m.insert(lk, rk).is_some() {
                    return Err(bad(format!("associator({xs}, {ys}, {zs}) has a repeated argument")));
                }
            }
            if assoc.insert((x, y, z), m).is_some() {
                return Err(bad(format!("associator({xs}, {ys}, {zs}) given twice")));
            }
        }
        Ok(CategoryData { colours: w.colours, base, sets, mult, phi, sigma, assoc })
    }
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::InvalidCategory(format!("{what} repeats {n}")));
        }
    }
    Ok(())
}

fn diff_maps<K: Ord, V: PartialEq>(out: &mut Vec<String>, what: &str, a: &BTreeMap<K, V>, b: &BTreeMap<K, V>, name: impl Fn(&K) -> String) {
    for (k, v) in a {
        match b.get(k) {
            None => out.push(format!("{what} {} missing on the right", name(k))),
            Some(w) if w != v => out.push(format!("{what} {} differs", name(k))),
            _ => {}
        }
    }
    for k in b.keys() {
        if !a.contains_key(k) {
            out.push(format!("{what} {} missing on the left", name(k)));
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    colours: Vec<String>,
    base: Vec<String>,
    sets: Vec<WireSet>,
    mult: Vec<WireMult>,
    phi: Vec<WirePair<(String, String, String)>>,
    commutor: Vec<WirePair<(String, String)>>,
    assoc: Vec<WireAssoc>,
}

#[derive(Serialize, Deserialize)]
struct WireSet {
    colour: String,
    elements: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct WireMult {
    left: String,
    right: String,
    out: String,
    elements: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct WirePair<K> {
    left: String,
    right: String,
    map: Vec<(K, (String, String))>,
}

#[derive(Serialize, Deserialize)]
struct WireAssoc {
    colours: [String; 3],
    map: Vec<((String, String, String, String), (String, String, String, String))>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_json_roundtrip() {
        let t = CategoryData::terminal();
        let s = t.to_json().unwrap();
        assert_eq!(CategoryData::from_json(&s).unwrap(), t);
        assert!(t.diff(&t).is_empty());
    }

    #[test]
    fn json_rejects_unknown_names() {
        let s = CategoryData::terminal().to_json().unwrap();
        let broken = s.replacen("\"base\": [\n    \"*\"", "\"base\": [\n    \"?\"", 1);
        assert!(CategoryData::from_json(&broken).is_err());
        assert!(CategoryData::from_json("{}").is_err());
    }
}
