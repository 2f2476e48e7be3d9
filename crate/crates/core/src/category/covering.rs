//! Truncated operadic coverings built from category data, and the way back.
//!
//! Fibres are stored up to three marked points. `E` fibres sit over the
//! point `∞` and are products of underlying sets; `X` fibres are iterated
//! multiplicity sets in the left-comb bracketing. Transport bijections are
//! stored explicitly: from the point `0` to `∞` over two points, and from
//! the right-comb to the left-comb trivialization over three points.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::tree::{Engine, Shape, TreeElem};
use super::{CategoryData, Colour, LeftKey, PhiKey, RightKey};
use crate::crystal::{join_id, split_id};
use crate::error::{Error, Result};
use crate::groups::{defining_relations, Generator, GroupKind, GroupWord};

pub const TRUNCATION: usize = 3;

/// A generator acting between two fibres, as an index map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreAction {
    pub generator: String,
    pub source: Vec<Colour>,
    pub target: Vec<Colour>,
    /// Output colour for `X` fibres.
    pub root: Option<Colour>,
    pub map: Vec<usize>,
}

/// Entries `((inner colour, first index, second index), image)`.
///
/// * `alpha`: `E(λ_1..λ_k) × E(λ_k+1..λ_n) -> E(λ)`.
/// * `beta`: `E(λ_1..λ_k, μ) × X(λ_k+1..λ_n; μ) -> E(λ)`.
/// * `beta0_zero`: `E(μ) × X(λ_1, λ_2; μ) -> E_0(λ_1, λ_2)`, over the point `0`.
/// * `gamma`: `X(.., γ, ..; ρ) × X(λ_k+1, λ_k+2; γ) -> X(λ; ρ)`; for `k = 1`
///   the target is the right-comb trivialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingMap {
    pub name: String,
    pub k: usize,
    pub labels: Vec<Colour>,
    pub outer: Option<Colour>,
    pub map: Vec<((Option<Colour>, usize, usize), usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSystem {
    pub truncation: usize,
    pub colours: Vec<String>,
    pub base: Vec<Colour>,
    pub e_fibres: BTreeMap<Vec<Colour>, Vec<String>>,
    pub e_actions: Vec<FibreAction>,
    pub e2_zero: BTreeMap<Vec<Colour>, Vec<String>>,
    /// From the point `0` to `∞`.
    pub e2_transport: BTreeMap<Vec<Colour>, Vec<usize>>,
    pub x_fibres: BTreeMap<(Vec<Colour>, Colour), Vec<String>>,
    pub x_actions: Vec<FibreAction>,
    pub x4_right: BTreeMap<(Vec<Colour>, Colour), Vec<String>>,
    /// From the right-comb to the left-comb trivialization.
    pub x4_transport: BTreeMap<(Vec<Colour>, Colour), Vec<usize>>,
    pub gluings: Vec<GluingMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub truncation: usize,
    pub colours: usize,
    pub e_fibres: usize,
    pub e_points: usize,
    pub e_actions: usize,
    pub x_fibres: usize,
    pub x_points: usize,
    pub x_actions: usize,
    pub gluing_maps: usize,
    pub gluing_entries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringCheck {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub colours: Vec<String>,
    pub summary: FiberSummary,
    pub checks: Vec<CoveringCheck>,
    pub differences: Vec<String>,
    pub fibres_reproduced: bool,
    pub passed: bool,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFiberSystem(msg.into())
}

fn tuples(base: &[Colour], n: usize) -> Vec<Vec<Colour>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                base.iter().map(move |&c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect()
    })
}

fn index_of<T: PartialEq>(v: &[T], x: &T) -> Result<usize> {
    v.iter().position(|y| y == x).ok_or_else(|| bad("element not found in its fibre"))
}

struct Builder<'a> {
    data: &'a CategoryData,
    en: Engine<'a>,
}

impl Builder<'_> {
    fn sizes(&self, t: &[Colour]) -> Vec<usize> {
        t.iter().map(|&c| self.data.sets[c].len()).collect()
    }

    fn points(&self, t: &[Colour]) -> usize {
        self.sizes(t).iter().product()
    }

    fn e_names(&self, t: &[Colour]) -> Vec<String> {
        let sizes = self.sizes(t);
        (0..self.points(t))
            .map(|p| split_id(p, &sizes).iter().zip(t).map(|(&k, &c)| self.data.sets[c][k].as_str()).collect::<Vec<_>>().join(" | "))
            .collect()
    }

    /// `s_ij` (1-based, `i < j`) on `E(λ)`, or `None` if a commutor is missing.
    fn e_cactus(&self, t: &[Colour], i: usize, j: usize) -> Result<Option<FibreAction>> {
        let seg = &t[i - 1..j];
        let table = self.en.unflatten_table(&Shape::left_comb(seg.len()), seg)?;
        let mut target = t.to_vec();
        target[i - 1..j].reverse();
        let (sizes, tsizes) = (self.sizes(t), self.sizes(&target));
        let mut map = Vec::with_capacity(self.points(t));
        for p in 0..self.points(t) {
            let v = split_id(p, &sizes);
            let (e, c) = &table[&v[i - 1..j]];
            let Ok(r) = self.en.long(e) else { return Ok(None) };
            let mut w = v[..i - 1].to_vec();
            w.extend(self.en.flatten(&r, *c)?);
            w.extend(&v[j..]);
            map.push(join_id(&w, &tsizes));
        }
        Ok(Some(FibreAction { generator: format!("s{i}{j}"), source: t.to_vec(), target, root: None, map }))
    }

    /// `w_i` swapping entries `i` and `i + 1` (1-based).
    fn e_swap(&self, t: &[Colour], i: usize) -> FibreAction {
        let mut target = t.to_vec();
        target.swap(i - 1, i);
        let (sizes, tsizes) = (self.sizes(t), self.sizes(&target));
        let map = (0..self.points(t))
            .map(|p| {
                let mut v = split_id(p, &sizes);
                v.swap(i - 1, i);
                join_id(&v, &tsizes)
            })
            .collect();
        FibreAction { generator: format!("w{i}"), source: t.to_vec(), target, root: None, map }
    }

    fn x_elements(&self, t: &[Colour], root: Colour) -> Result<Vec<TreeElem>> {
        self.en.elements_to(&Shape::left_comb(t.len()), t, root)
    }

    /// `s_ij` on a left-comb element with at most three leaves.
    fn x_cactus(&self, e: &TreeElem, i: usize, j: usize) -> Result<TreeElem> {
        let n = e.leaves().len();
        let long = |s: &TreeElem| self.en.long(s);
        let r = if i == 1 {
            self.en.at(e, &vec![false; n - j], &long)?
        } else if n == 3 && i == 2 && j == 3 {
            self.en.at(&self.en.alpha(e)?, &[true], &long)?
        } else {
            return Err(bad(format!("s{i}{j} on {n} leaves")));
        };
        self.en.to_left_comb(&r)
    }
}

/// The truncated covering of valid category data.
pub fn covering_from_category(data: &CategoryData) -> Result<FiberSystem> {
    let report = data.validate();
    if !report.passed {
        return Err(Error::InvalidCategory(format!("validation failed with {} failures", report.failure_count())));
    }
    let b = Builder { data, en: Engine::new(data) };
    if let Some(((x, y), why)) = b.en.unnatural().iter().next() {
        return Err(Error::InvalidCategory(format!("commutor{}: {why}", data.pair_name(*x, *y))));
    }
    let n_colours = data.colours.len();
    let phi_pairs: Vec<Vec<Colour>> = data.phi.keys().map(|&(x, y)| vec![x, y]).collect();
    let base3 = tuples(&data.base, 3);

    let mut e_tuples: Vec<Vec<Colour>> = (0..n_colours).map(|c| vec![c]).collect();
    e_tuples.extend(phi_pairs.iter().cloned());
    e_tuples.extend(base3.iter().cloned());
    let e_fibres: BTreeMap<Vec<Colour>, Vec<String>> = e_tuples.par_iter().map(|t| (t.clone(), b.e_names(t))).collect();

    let action_tuples: Vec<&Vec<Colour>> = phi_pairs.iter().chain(&base3).collect();
    let e_actions: Vec<FibreAction> = action_tuples
        .par_iter()
        .map(|t| {
            let n = t.len();
            let mut out = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    if let Some(a) = b.e_cactus(t, i, j)? {
                        out.push(a);
                    }
                }
            }
            for i in 1..n {
                out.push(b.e_swap(t, i));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut e2_zero = BTreeMap::new();
    let mut e2_transport = BTreeMap::new();
    let mut gluings = Vec::new();
    for t in &phi_pairs {
        let (x, y) = (t[0], t[1]);
        let phi = &data.phi[&(x, y)];
        let sizes = b.sizes(t);
        let (mut names, mut transport, mut entries) = (Vec::new(), Vec::new(), Vec::new());
        for (&mu, els) in data.mult.get(&(x, y)).into_iter().flatten() {
            for (l, lname) in els.iter().enumerate() {
                for (c, cname) in data.sets[mu].iter().enumerate() {
                    let &(c1, c2) = phi.get(&PhiKey { mu, l, c }).ok_or_else(|| bad(format!("phi{} undefined", data.pair_name(x, y))))?;
                    entries.push(((Some(mu), c, l), names.len()));
                    names.push(format!("{lname} ; {cname}"));
                    transport.push(join_id(&[c1, c2], &sizes));
                }
            }
        }
        e2_zero.insert(t.clone(), names);
        e2_transport.insert(t.clone(), transport);
        gluings.push(GluingMap { name: "beta0_zero".into(), k: 0, labels: t.clone(), outer: None, map: entries });
    }

    let mut x_fibres = BTreeMap::new();
    let mut x_elems: HashMap<(Vec<Colour>, Colour), Vec<TreeElem>> = HashMap::new();
    for c in 0..n_colours {
        x_fibres.insert((vec![c], c), vec!["*".to_string()]);
        x_elems.insert((vec![c], c), vec![TreeElem::Leaf(c)]);
    }
    for (&(x, y), table) in &data.mult {
        for &mu in table.keys() {
            let els = b.x_elements(&[x, y], mu)?;
            x_fibres.insert((vec![x, y], mu), els.iter().map(|e| b.en.label(e)).collect());
            x_elems.insert((vec![x, y], mu), els);
        }
    }
    let assoc_triples: Vec<Vec<Colour>> = data.assoc.keys().map(|&(x, y, z)| vec![x, y, z]).collect();
    let mut x4_right = BTreeMap::new();
    let mut x4_transport = BTreeMap::new();
    for t in &assoc_triples {
        let mut left: BTreeMap<Colour, Vec<TreeElem>> = BTreeMap::new();
        for e in b.en.elements(&Shape::left_comb(3), t)? {
            left.entry(e.colour()).or_default().push(e);
        }
        let mut right: BTreeMap<Colour, Vec<TreeElem>> = BTreeMap::new();
        for e in b.en.elements(&Shape::right_comb(3), t)? {
            right.entry(e.colour()).or_default().push(e);
        }
        for (&rho, els) in &left {
            let rels = right.get(&rho).map(|v| v.as_slice()).unwrap_or(&[]);
            let transport = rels.iter().map(|r| index_of(els, &b.en.to_left_comb(r)?)).collect::<Result<Vec<_>>>()?;
            let mut g0 = Vec::new();
            for (j, e) in els.iter().enumerate() {
                let TreeElem::Node { l: l2, left: inner, .. } = e else { unreachable!() };
                let TreeElem::Node { out: gamma, l, .. } = inner.as_ref() else { unreachable!() };
                g0.push(((Some(*gamma), *l2, *l), j));
            }
            let mut g1 = Vec::new();
            for (j, r) in rels.iter().enumerate() {
                let TreeElem::Node { l: m, right: inner, .. } = r else { unreachable!() };
                let TreeElem::Node { out: tau, l: m2, .. } = inner.as_ref() else { unreachable!() };
                g1.push(((Some(*tau), *m, *m2), j));
            }
            gluings.push(GluingMap { name: "gamma".into(), k: 0, labels: t.clone(), outer: Some(rho), map: g0 });
            gluings.push(GluingMap { name: "gamma".into(), k: 1, labels: t.clone(), outer: Some(rho), map: g1 });
            x_fibres.insert((t.clone(), rho), els.iter().map(|e| b.en.label(e)).collect());
            x4_right.insert((t.clone(), rho), rels.iter().map(|e| b.en.label(e)).collect());
            x4_transport.insert((t.clone(), rho), transport);
            x_elems.insert((t.clone(), rho), els.clone());
        }
    }

    let mut x_actions = Vec::new();
    for &(x, y) in data.sigma.keys() {
        for &mu in data.mult.get(&(x, y)).map(|t| t.keys().copied().collect::<Vec<_>>()).unwrap_or_default().iter() {
            let src = &x_elems[&(vec![x, y], mu)];
            let dst = x_elems.get(&(vec![y, x], mu)).ok_or_else(|| bad("reversed multiplicity set missing"))?;
            let map = src.iter().map(|e| index_of(dst, &b.x_cactus(e, 1, 2)?)).collect::<Result<Vec<_>>>()?;
            x_actions.push(FibreAction { generator: "s12".into(), source: vec![x, y], target: vec![y, x], root: Some(mu), map });
        }
    }
    for t in &base3 {
        let roots: Vec<Colour> = x_elems.keys().filter(|(s, _)| s == t).map(|&(_, r)| r).collect();
        let mut roots = roots;
        roots.sort();
        for rho in roots {
            for (i, j) in [(1, 2), (2, 3), (1, 3)] {
                let mut target = t.clone();
                target[i - 1..j].reverse();
                let src = &x_elems[&(t.clone(), rho)];
                let dst = x_elems.get(&(target.clone(), rho)).ok_or_else(|| bad("permuted fibre missing"))?;
                let map = src.iter().map(|e| index_of(dst, &b.x_cactus(e, i, j)?)).collect::<Result<Vec<_>>>()?;
                x_actions.push(FibreAction { generator: format!("s{i}{j}"), source: t.clone(), target, root: Some(rho), map });
            }
        }
    }

    // alpha: concatenation.
    let alpha_tuples: Vec<&Vec<Colour>> = phi_pairs.iter().chain(&base3).collect();
    for t in &alpha_tuples {
        let n = t.len();
        let sizes = b.sizes(t);
        for k in 1..n {
            let (a, c) = t.split_at(k);
            let (sa, sc) = (b.sizes(a), b.sizes(c));
            let mut map = Vec::new();
            for i1 in 0..b.points(a) {
                for i2 in 0..b.points(c) {
                    let mut v = split_id(i1, &sa);
                    v.extend(split_id(i2, &sc));
                    map.push(((None, i1, i2), join_id(&v, &sizes)));
                }
            }
            gluings.push(GluingMap { name: "alpha".into(), k, labels: t.to_vec(), outer: None, map });
        }
    }

    // beta: expansion of the last n - k points through phi.
    for t in &alpha_tuples {
        let n = t.len();
        let sizes = b.sizes(t);
        for k in 0..n {
            let tail = &t[k..];
            let mut map = Vec::new();
            let mut roots: Vec<Colour> = x_elems.keys().filter(|(s, _)| s == tail).map(|&(_, r)| r).collect();
            roots.sort();
            for mu in roots {
                let mut head = t[..k].to_vec();
                head.push(mu);
                if !e_fibres.contains_key(&head) {
                    return Err(bad(format!("E fibre over {head:?} missing")));
                }
                let hsizes = b.sizes(&head);
                for ie in 0..b.points(&head) {
                    let v = split_id(ie, &hsizes);
                    for (ix, e) in x_elems[&(tail.to_vec(), mu)].iter().enumerate() {
                        let mut w = v[..k].to_vec();
                        w.extend(b.en.flatten(e, v[k])?);
                        map.push(((Some(mu), ie, ix), join_id(&w, &sizes)));
                    }
                }
            }
            gluings.push(GluingMap { name: "beta".into(), k, labels: t.to_vec(), outer: None, map });
        }
    }

    Ok(FiberSystem {
        truncation: TRUNCATION,
        colours: data.colours.clone(),
        base: data.base.clone(),
        e_fibres,
        e_actions,
        e2_zero,
        e2_transport,
        x_fibres,
        x_actions,
        x4_right,
        x4_transport,
        gluings,
    })
}

type GluingIndex<'a> = HashMap<(&'a str, usize, &'a [Colour], Option<Colour>), HashMap<(Option<Colour>, usize, usize), usize>>;
type ActionIndex<'a> = HashMap<(&'a str, &'a [Colour], Option<Colour>), &'a FibreAction>;

impl FiberSystem {
    fn gluing_index(&self) -> GluingIndex<'_> {
        self.gluings
            .iter()
            .map(|g| ((g.name.as_str(), g.k, g.labels.as_slice(), g.outer), g.map.iter().copied().collect()))
            .collect()
    }

    fn action_index(actions: &[FibreAction]) -> ActionIndex<'_> {
        actions.iter().map(|a| ((a.generator.as_str(), a.source.as_slice(), a.root), a)).collect()
    }

    pub fn summary(&self) -> FiberSummary {
        FiberSummary {
            truncation: self.truncation,
            colours: self.colours.len(),
            e_fibres: self.e_fibres.len(),
            e_points: self.e_fibres.values().map(|v| v.len()).sum(),
            e_actions: self.e_actions.len(),
            x_fibres: self.x_fibres.len() + self.x4_right.len(),
            x_points: self.x_fibres.values().chain(self.x4_right.values()).map(|v| v.len()).sum(),
            x_actions: self.x_actions.len(),
            gluing_maps: self.gluings.len(),
            gluing_entries: self.gluings.iter().map(|g| g.map.len()).sum(),
        }
    }

    /// Consistency of the stored bijections: transport against `beta_0`,
    /// block equivariance of the gluing maps, and the defining relations of
    /// `vC_n` on `E` fibres and of `C_n` on `X` fibres.
    pub fn check(&self) -> Vec<CoveringCheck> {
        let g = self.gluing_index();
        let ea = Self::action_index(&self.e_actions);
        let xa = Self::action_index(&self.x_actions);
        let base2 = tuples(&self.base, 2);
        let base3 = tuples(&self.base, 3);
        let mut out = Vec::new();
        let mut run = |name: &str, results: Vec<std::result::Result<(), String>>| {
            let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
            out.push(CoveringCheck {
                name: name.into(),
                instances: results.len(),
                failures: failures.len(),
                first_failure: failures.first().map(|s| s.to_string()),
            });
        };
        let act = |idx: &ActionIndex, gen: &str, t: &[Colour], root: Option<Colour>, p: usize| -> std::result::Result<(Vec<Colour>, usize), String> {
            let a = idx.get(&(gen, t, root)).ok_or_else(|| format!("{gen} missing on {t:?}"))?;
            Ok((a.target.clone(), *a.map.get(p).ok_or_else(|| format!("{gen} on {t:?} undefined at {p}"))?))
        };
        let glue = |name: &str, k: usize, t: &[Colour], outer: Option<Colour>, key: (Option<Colour>, usize, usize)| -> std::result::Result<usize, String> {
            g.get(&(name, k, t, outer))
                .and_then(|m| m.get(&key))
                .copied()
                .ok_or_else(|| format!("{name}_{k} on {t:?} undefined at {key:?}"))
        };

        // beta_0 over ∞ agrees with transport from 0.
        let mut res = Vec::new();
        for (t, transport) in &self.e2_transport {
            let Some(zero) = g.get(&("beta0_zero", 0, t.as_slice(), None)) else {
                res.push(Err(format!("beta0_zero on {t:?} missing")));
                continue;
            };
            for (&key, &z) in zero {
                res.push(glue("beta", 0, t, None, key).and_then(|v| {
                    (transport.get(z) == Some(&v)).then_some(()).ok_or_else(|| format!("transport on {t:?} at {key:?}"))
                }));
            }
        }
        run("beta0 transport", res);

        // alpha_k is equivariant for generators acting inside either block.
        let mut res = Vec::new();
        for t in &base3 {
            for k in 1..3 {
                let (a, c) = t.split_at(k);
                let gens = |m: usize| -> Vec<String> {
                    let mut v: Vec<String> = (1..m).map(|i| format!("w{i}")).collect();
                    for i in 1..=m {
                        for j in i + 1..=m {
                            v.push(format!("s{i}{j}"));
                        }
                    }
                    v
                };
                for i1 in 0..self.e_fibres[a].len() {
                    for i2 in 0..self.e_fibres[c].len() {
                        let Ok(p) = glue("alpha", k, t, None, (None, i1, i2)) else {
                            res.push(Err(format!("alpha_{k} on {t:?} missing")));
                            continue;
                        };
                        for gen in gens(a.len()) {
                            res.push((|| {
                                let (ta, j1) = act(&ea, &gen, a, None, i1)?;
                                let lhs = glue("alpha", k, &[ta.as_slice(), c].concat(), None, (None, j1, i2))?;
                                let (_, rhs) = act(&ea, &gen, t, None, p)?;
                                (lhs == rhs).then_some(()).ok_or_else(|| format!("alpha_{k} on {t:?} and {gen} on the left block"))
                            })());
                        }
                        for gen in gens(c.len()) {
                            res.push((|| {
                                let (tc, j2) = act(&ea, &gen, c, None, i2)?;
                                let lhs = glue("alpha", k, &[a, tc.as_slice()].concat(), None, (None, i1, j2))?;
                                let (_, rhs) = act(&ea, &shift(&gen, k), t, None, p)?;
                                (lhs == rhs).then_some(()).ok_or_else(|| format!("alpha_{k} on {t:?} and {gen} on the right block"))
                            })());
                        }
                    }
                }
            }
        }
        run("alpha equivariance", res);

        // beta_k: S_k on the E factor, C_(n-k) on the X factor.
        let mut res = Vec::new();
        let beta_tuples: Vec<&Vec<Colour>> = self.e2_transport.keys().chain(&base3).collect();
        for t in &beta_tuples {
            let n = t.len();
            for k in 0..n {
                let Some(m) = g.get(&("beta", k, t.as_slice(), None)) else {
                    res.push(Err(format!("beta_{k} on {t:?} missing")));
                    continue;
                };
                let tail = &t[k..];
                for (&(mu, ie, ix), &p) in m {
                    let mut head = t[..k].to_vec();
                    head.push(mu.unwrap_or_default());
                    for i in 1..k {
                        let gen = format!("w{i}");
                        res.push((|| {
                            let (th, je) = act(&ea, &gen, &head, None, ie)?;
                            let mut t2 = th[..k].to_vec();
                            t2.extend_from_slice(tail);
                            let lhs = glue("beta", k, &t2, None, (mu, je, ix))?;
                            let (_, rhs) = act(&ea, &gen, t, None, p)?;
                            (lhs == rhs).then_some(()).ok_or_else(|| format!("beta_{k} on {t:?} and {gen}"))
                        })());
                    }
                    for i in 1..=tail.len() {
                        for j in i + 1..=tail.len() {
                            let gen = format!("s{i}{j}");
                            res.push((|| {
                                let (tt, jx) = act(&xa, &gen, tail, mu, ix)?;
                                let mut t2 = t[..k].to_vec();
                                t2.extend_from_slice(&tt);
                                let lhs = glue("beta", k, &t2, None, (mu, ie, jx))?;
                                let (_, rhs) = act(&ea, &format!("s{}{}", k + i, k + j), t, None, p)?;
                                (lhs == rhs).then_some(()).ok_or_else(|| format!("beta_{k} on {t:?} and {gen}"))
                            })());
                        }
                    }
                }
            }
        }
        run("beta equivariance", res);

        // gamma_0 with s12 and gamma_1 with s23 through the transport.
        let mut res = Vec::new();
        for t in &base3 {
            let (x, y, z) = (t[0], t[1], t[2]);
            for &(_, rho) in self.x_fibres.range((t.clone(), 0)..).map(|(k, _)| k).take_while(|(s, _)| s == t) {
                if let Some(m) = g.get(&("gamma", 0, t.as_slice(), Some(rho))) {
                    for (&(gamma, l2, l), &j) in m {
                        res.push((|| {
                            let (_, l_new) = act(&xa, "s12", &[x, y], gamma, l)?;
                            let lhs = glue("gamma", 0, &[y, x, z], Some(rho), (gamma, l2, l_new))?;
                            let (_, rhs) = act(&xa, "s12", t, Some(rho), j)?;
                            (lhs == rhs).then_some(()).ok_or_else(|| format!("gamma_0 on {t:?} and s12"))
                        })());
                    }
                }
                if let Some(m) = g.get(&("gamma", 1, t.as_slice(), Some(rho))) {
                    for (&(tau, mm, m2), &r) in m {
                        res.push((|| {
                            let (_, m2_new) = act(&xa, "s12", &[y, z], tau, m2)?;
                            let r2 = glue("gamma", 1, &[x, z, y], Some(rho), (tau, mm, m2_new))?;
                            let tr = |u: &[Colour], i: usize| {
                                self.x4_transport.get(&(u.to_vec(), rho)).and_then(|v| v.get(i).copied()).ok_or_else(|| format!("transport on {u:?} missing"))
                            };
                            let lhs = tr(&[x, z, y], r2)?;
                            let (_, rhs) = act(&xa, "s23", t, Some(rho), tr(t, r)?)?;
                            (lhs == rhs).then_some(()).ok_or_else(|| format!("gamma_1 on {t:?} and s23"))
                        })());
                    }
                }
            }
        }
        run("gamma equivariance", res);

        // vC_n relations on E, C_n relations on X.
        let mut res = Vec::new();
        let mut xres = Vec::new();
        for (n, ts) in [(2, &base2), (3, &base3)] {
            let Ok(vc) = defining_relations(GroupKind::VC, n) else { continue };
            let Ok(c) = defining_relations(GroupKind::C, n) else { continue };
            for t in ts.iter() {
                for p in 0..self.e_fibres.get(t).map(|v| v.len()).unwrap_or(0) {
                    for (lhs, rhs) in &vc {
                        res.push((|| {
                            let a = apply_word(&ea, lhs, t, None, p)?;
                            let b = apply_word(&ea, rhs, t, None, p)?;
                            (a == b).then_some(()).ok_or_else(|| format!("{lhs} = {rhs} on {t:?} at {p}"))
                        })());
                    }
                }
                for ((s, rho), els) in self.x_fibres.range((t.clone(), 0)..).take_while(|((s, _), _)| s == t) {
                    for p in 0..els.len() {
                        for (lhs, rhs) in &c {
                            xres.push((|| {
                                let a = apply_word(&xa, lhs, s, Some(*rho), p)?;
                                let b = apply_word(&xa, rhs, s, Some(*rho), p)?;
                                (a == b).then_some(()).ok_or_else(|| format!("{lhs} = {rhs} on {s:?}, {rho} at {p}"))
                            })());
                        }
                    }
                }
            }
        }
        run("vC relations on E", res);
        run("C relations on X", xres);
        out
    }
}

/// Shifts the indices of `s_ij` or `w_i` by `k`.
fn shift(gen: &str, k: usize) -> String {
    let digits: Vec<usize> = gen[1..].chars().map(|c| c.to_digit(10).expect("single-digit generator") as usize + k).collect();
    format!("{}{}", &gen[..1], digits.iter().map(|d| d.to_string()).collect::<String>())
}

fn apply_word(idx: &ActionIndex, w: &GroupWord, t: &[Colour], root: Option<Colour>, p: usize) -> std::result::Result<(Vec<Colour>, usize), String> {
    let mut cur = (t.to_vec(), p);
    let step = |gen: String, cur: &mut (Vec<Colour>, usize)| -> std::result::Result<(), String> {
        let a = idx.get(&(gen.as_str(), cur.0.as_slice(), root)).ok_or_else(|| format!("{gen} missing on {:?}", cur.0))?;
        *cur = (a.target.clone(), a.map[cur.1]);
        Ok(())
    };
    for letter in w.letters().iter().rev() {
        match letter {
            Generator::Cactus(i, j) => step(format!("s{i}{j}"), &mut cur)?,
            Generator::Perm(perm) => {
                for i in perm.reduced_word().into_iter().rev() {
                    step(format!("w{}", i + 1), &mut cur)?;
                }
            }
            other => return Err(format!("generator {other} has no action")),
        }
    }
    Ok(cur)
}

/// Reads category data back from a covering.
pub fn category_from_covering(fs: &FiberSystem) -> Result<CategoryData> {
    if fs.truncation < TRUNCATION {
        return Err(bad(format!("truncation {} is below {TRUNCATION}", fs.truncation)));
    }
    let g = fs.gluing_index();
    let n = fs.colours.len();
    let sets: Vec<Vec<String>> = (0..n)
        .map(|c| {
            let f = fs.e_fibres.get(&vec![c]).ok_or_else(|| bad(format!("E fibre over {} missing", fs.colours[c])))?;
            Ok(f.clone())
        })
        .collect::<Result<_>>()?;

    let mut mult: BTreeMap<(Colour, Colour), BTreeMap<Colour, Vec<String>>> = BTreeMap::new();
    for ((t, mu), names) in &fs.x_fibres {
        if let [x, y] = t[..] {
            mult.entry((x, y)).or_default().insert(*mu, names.clone());
        }
    }

    let alpha_inv = |t: &[Colour]| -> Result<HashMap<usize, (usize, usize)>> {
        let m = g.get(&("alpha", 1, t, None)).ok_or_else(|| bad(format!("alpha_1 on {t:?} missing")))?;
        Ok(m.iter().map(|(&(_, a, b), &v)| (v, (a, b))).collect())
    };

    let mut phi = BTreeMap::new();
    for (t, transport) in &fs.e2_transport {
        let zero = g.get(&("beta0_zero", 0, t.as_slice(), None)).ok_or_else(|| bad(format!("beta0_zero on {t:?} missing")))?;
        let inv = alpha_inv(t)?;
        let mut m = BTreeMap::new();
        for (&(mu, c, l), &z) in zero {
            let mu = mu.ok_or_else(|| bad("beta0_zero entry without a colour"))?;
            let v = transport.get(z).ok_or_else(|| bad("transport undefined"))?;
            let &(c1, c2) = inv.get(v).ok_or_else(|| bad("alpha_1 not onto"))?;
            m.insert(PhiKey { mu, l, c }, (c1, c2));
        }
        phi.insert((t[0], t[1]), m);
    }

    let mut sigma = BTreeMap::new();
    for a in fs.e_actions.iter().filter(|a| a.generator == "s12" && a.source.len() == 2) {
        let (x, y) = (a.source[0], a.source[1]);
        let fwd = g.get(&("alpha", 1, a.source.as_slice(), None)).ok_or_else(|| bad("alpha_1 missing"))?;
        let back = alpha_inv(&a.target)?;
        let mut m = BTreeMap::new();
        for (&(_, c1, c2), &p) in fwd {
            let q = a.map[p];
            m.insert((c1, c2), *back.get(&q).ok_or_else(|| bad("alpha_1 not onto"))?);
        }
        sigma.insert((x, y), m);
    }

    let mut assoc: BTreeMap<(Colour, Colour, Colour), BTreeMap<LeftKey, RightKey>> = BTreeMap::new();
    for ((t, rho), transport) in &fs.x4_transport {
        let (x, y, z) = (t[0], t[1], t[2]);
        let inv: HashMap<usize, usize> = transport.iter().enumerate().map(|(r, &l)| (l, r)).collect();
        let g0 = g.get(&("gamma", 0, t.as_slice(), Some(*rho))).ok_or_else(|| bad("gamma_0 missing"))?;
        let g1 = g.get(&("gamma", 1, t.as_slice(), Some(*rho))).ok_or_else(|| bad("gamma_1 missing"))?;
        let g1_inv: HashMap<usize, (Option<Colour>, usize, usize)> = g1.iter().map(|(&k, &v)| (v, k)).collect();
        let m = assoc.entry((x, y, z)).or_default();
        for (&(gamma, l2, l), &j) in g0 {
            let r = inv.get(&j).ok_or_else(|| bad("transport not onto"))?;
            let &(tau, mm, m2) = g1_inv.get(r).ok_or_else(|| bad("gamma_1 not onto"))?;
            let (gamma, tau) = (gamma.ok_or_else(|| bad("gamma_0 entry without a colour"))?, tau.ok_or_else(|| bad("gamma_1 entry without a colour"))?);
            m.insert(LeftKey { gamma, l, rho: *rho, l2 }, RightKey { rho: *rho, tau, m: mm, m2 });
        }
    }
    Ok(CategoryData { colours: fs.colours.clone(), base: fs.base.clone(), sets, mult, phi, sigma, assoc })
}

/// Category -> covering -> category, compared by identity on all sets,
/// plus the covering rebuilt from the result and the covering checks.
pub fn roundtrip(data: &CategoryData) -> Result<RoundtripReport> {
    let fs = covering_from_category(data)?;
    let back = category_from_covering(&fs)?;
    let differences = data.diff(&back);
    let fibres_reproduced = covering_from_category(&back).map(|f| f == fs).unwrap_or(false);
    let checks = fs.check();
    let passed = differences.is_empty() && fibres_reproduced && checks.iter().all(|c| c.failures == 0);
    Ok(RoundtripReport { colours: data.colours.clone(), summary: fs.summary(), checks, differences, fibres_reproduced, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_covering() {
        let t = CategoryData::terminal();
        let fs = covering_from_category(&t).unwrap();
        assert!(fs.e_fibres.values().all(|v| v.len() == 1));
        assert!(fs.x_fibres.values().all(|v| v.len() == 1));
        assert!(fs.e_actions.iter().chain(&fs.x_actions).all(|a| a.map == vec![0]));
        assert_eq!(category_from_covering(&fs).unwrap(), t);
        let r = roundtrip(&t).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn shifting_generators() {
        assert_eq!(shift("s12", 1), "s23");
        assert_eq!(shift("w1", 2), "w3");
    }

    #[test]
    fn tuples_enumerate_products() {
        assert_eq!(tuples(&[0, 1], 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
