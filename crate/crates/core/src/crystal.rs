//! Finite crystal graphs: type-A irreducibles on tableaux, JSON import,
//! tensor products, component decomposition and normality.
//!
//! Tensor products follow the rule: `e_i` acts on the left factor iff
//! `ε_i(b1) > φ_i(b2)`, `f_i` acts on the left factor iff `ε_i(b1) ≥ φ_i(b2)`.
//! Element `(b1, b2)` of `B1 ⊗ B2` has id `b1 * |B2| + b2`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, CartanKind, Weight};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    cartan: CartanData,
    weights: Vec<Weight>,
    e: Vec<Vec<Option<usize>>>,
    f: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<u32>>,
    phi: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

/// A connected component together with its unique highest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub highest: usize,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    NotNormal(String),
    /// No reference `B(λ)` is available for this Cartan type.
    Unverifiable,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    id: usize,
    wt: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    i: usize,
    from: usize,
    to: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    op: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CrystalJson {
    cartan: CartanData,
    elements: Vec<ElementJson>,
    edges: Vec<EdgeJson>,
}

impl CrystalGraph {
    /// Builds a crystal from weights and `f_i` edges, inferring `e_i`.
    pub fn from_f_edges(cartan: CartanData, weights: Vec<Weight>, edges: &[(usize, usize, usize)]) -> Result<Self> {
        Self::from_edges(cartan, weights, edges, &[])
    }

    /// Builds a crystal from `f_i` and optional explicit `e_i` edges
    /// `(i, from, to)`, checking the four crystal axioms.
    pub fn from_edges(
        cartan: CartanData,
        weights: Vec<Weight>,
        f_edges: &[(usize, usize, usize)],
        e_edges: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let r = cartan.rank();
        let n = weights.len();
        for w in &weights {
            cartan.check_weight(w)?;
        }
        let mut f = vec![vec![None; n]; r];
        let mut e = vec![vec![None; n]; r];
        let fill = |table: &mut Vec<Vec<Option<usize>>>, edges: &[(usize, usize, usize)], name: &str| -> Result<()> {
            for &(i, from, to) in edges {
                if i >= r {
                    return Err(Error::NodeOutOfRange { node: i, rank: r });
                }
                if from >= n || to >= n {
                    return Err(Error::InvalidCrystal(format!("{name}_{} edge {from} -> {to} leaves the element set", i + 1)));
                }
                if table[i][from].replace(to).is_some() {
                    return Err(Error::InvalidCrystal(format!("element {from} has two {name}_{} edges", i + 1)));
                }
            }
            Ok(())
        };
        fill(&mut f, f_edges, "f")?;
        fill(&mut e, e_edges, "e")?;
        if e_edges.is_empty() {
            // Infer e_i as the inverse of f_i; a non-injective f_i breaks axiom (4).
            for i in 0..r {
                for b in 0..n {
                    if let Some(c) = f[i][b] {
                        if let Some(prev) = e[i][c] {
                            return Err(Error::CrystalAxiom {
                                axiom: 4,
                                element: b,
                                node: i + 1,
                                detail: format!("f_{0}({b}) = f_{0}({prev}) = {c}, so e_{0}(f_{0}({b})) cannot equal {b}", i + 1),
                            });
                        }
                        e[i][c] = Some(b);
                    }
                }
            }
        }
        let mut g = CrystalGraph { cartan, weights, e, f, eps: Vec::new(), phi: Vec::new(), labels: None };
        g.check_axioms()?;
        g.compute_strings();
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let r = self.cartan.rank();
        let violation = |axiom: u8, element: usize, i: usize, detail: String| Error::CrystalAxiom { axiom, element, node: i + 1, detail };
        for i in 0..r {
            let alpha = self.cartan.simple_root(i);
            for b in 0..self.len() {
                if let Some(c) = self.e[i][b] {
                    let expected = &self.weights[b] + &alpha;
                    if self.weights[c] != expected {
                        return Err(violation(1, b, i, format!("wt(e_{}({b})) = {} but wt({b}) + α = {expected}", i + 1, self.weights[c])));
                    }
                }
            }
        }
        for i in 0..r {
            let alpha = self.cartan.simple_root(i);
            for b in 0..self.len() {
                if let Some(c) = self.f[i][b] {
                    let expected = &self.weights[b] - &alpha;
                    if self.weights[c] != expected {
                        return Err(violation(2, b, i, format!("wt(f_{}({b})) = {} but wt({b}) - α = {expected}", i + 1, self.weights[c])));
                    }
                }
            }
        }
        for i in 0..r {
            for b in 0..self.len() {
                if let Some(c) = self.e[i][b] {
                    if self.f[i][c] != Some(b) {
                        return Err(violation(3, b, i, format!("f_{0}(e_{0}({b})) = {1:?}", i + 1, self.f[i][c])));
                    }
                }
            }
        }
        for i in 0..r {
            for b in 0..self.len() {
                if let Some(c) = self.f[i][b] {
                    if self.e[i][c] != Some(b) {
                        return Err(violation(4, b, i, format!("e_{0}(f_{0}({b})) = {1:?}", i + 1, self.e[i][c])));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_strings(&mut self) {
        let count = |table: &Vec<Option<usize>>, b: usize| -> u32 {
            let mut k = 0;
            let mut cur = b;
            while let Some(next) = table[cur] {
                cur = next;
                k += 1;
            }
            k
        };
        self.eps = self.e.iter().map(|t| (0..t.len()).map(|b| count(t, b)).collect()).collect();
        self.phi = self.f.iter().map(|t| (0..t.len()).map(|b| count(t, b)).collect()).collect();
    }

    /// `B(λ)` for type A, realized on semistandard tableaux. Element 0 is the
    /// highest element; ids follow breadth-first order along `f_1, .., f_r`.
    pub fn irreducible(cartan: &CartanData, lambda: &Weight) -> Result<Self> {
        if cartan.kind() != CartanKind::A {
            return Err(Error::UnsupportedType(cartan.tag()));
        }
        cartan.check_weight(lambda)?;
        let shape = cartan.partition_of(lambda)?;
        let r = cartan.rank();
        let top: Vec<Vec<u8>> = shape.iter().enumerate().map(|(k, &len)| vec![(k + 1) as u8; len]).collect();
        let mut index: HashMap<Vec<Vec<u8>>, usize> = HashMap::from([(top.clone(), 0)]);
        let mut tableaux = vec![top];
        let mut f_edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(b) = queue.pop_front() {
            for i in 0..r {
                if let Some(t) = tableau_f(&tableaux[b], i) {
                    let next = tableaux.len();
                    let id = *index.entry(t.clone()).or_insert(next);
                    if id == next {
                        tableaux.push(t);
                        queue.push_back(id);
                    }
                    f_edges.push((i, b, id));
                }
            }
        }
        let weights = tableaux.iter().map(|t| tableau_weight(t, r)).collect();
        let mut g = Self::from_f_edges(cartan.clone(), weights, &f_edges)?;
        g.labels = Some(tableaux.iter().map(|t| tableau_label(t)).collect());
        Ok(g)
    }

    pub fn import_json(json: &str) -> Result<Self> {
        let parsed: CrystalJson = serde_json::from_str(json)?;
        let n = parsed.elements.len();
        let mut weights = vec![None; n];
        for el in parsed.elements {
            if el.id >= n || weights[el.id].is_some() {
                return Err(Error::InvalidCrystal(format!("element ids must be 0..{n} without repeats (saw {})", el.id)));
            }
            weights[el.id] = Some(Weight(el.wt));
        }
        let weights: Vec<Weight> = weights.into_iter().map(|w| w.unwrap()).collect();
        let mut f_edges = Vec::new();
        let mut e_edges = Vec::new();
        for edge in parsed.edges {
            if edge.i == 0 {
                return Err(Error::InvalidCrystal("edge labels are 1-based".into()));
            }
            let triple = (edge.i - 1, edge.from, edge.to);
            match edge.op.as_deref() {
                None | Some("f") => f_edges.push(triple),
                Some("e") => e_edges.push(triple),
                Some(other) => return Err(Error::InvalidCrystal(format!("unknown edge op {other:?}"))),
            }
        }
        if !e_edges.is_empty() {
            // Explicit e-edges: f-edges must be explicit as well.
            return Self::from_edges(parsed.cartan, weights, &f_edges, &e_edges);
        }
        Self::from_f_edges(parsed.cartan, weights, &f_edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = CrystalJson {
            cartan: self.cartan.clone(),
            elements: self.weights.iter().enumerate().map(|(id, w)| ElementJson { id, wt: w.0.clone() }).collect(),
            edges: self.f_edges().map(|(i, from, to)| EdgeJson { i: i + 1, from, to, op: None }).collect(),
        };
        serde_json::to_value(doc).expect("crystal JSON is serializable")
    }

    pub fn to_dot(&self) -> String {
        const COLOURS: [&str; 6] = ["blue", "red", "darkgreen", "orange", "purple", "brown"];
        let mut out = String::from("digraph crystal {\n");
        for b in 0..self.len() {
            let _ = writeln!(out, "  {b} [label=\"{b}:{}\"];", self.weights[b].label());
        }
        for (i, from, to) in self.f_edges() {
            let _ = writeln!(out, "  {from} -> {to} [label=\"f_{}\", color={}];", i + 1, COLOURS[i % COLOURS.len()]);
        }
        out.push_str("}\n");
        out
    }

    pub fn f_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.f.iter().enumerate().flat_map(|(i, t)| t.iter().enumerate().filter_map(move |(b, c)| c.map(|c| (i, b, c))))
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn e(&self, i: usize, b: usize) -> Option<usize> {
        self.e[i][b]
    }

    pub fn f(&self, i: usize, b: usize) -> Option<usize> {
        self.f[i][b]
    }

    pub fn epsilon(&self, i: usize, b: usize) -> u32 {
        self.eps[i][b]
    }

    pub fn phi(&self, i: usize, b: usize) -> u32 {
        self.phi[i][b]
    }

    pub fn label(&self, b: usize) -> String {
        match &self.labels {
            Some(l) => l[b].clone(),
            None => b.to_string(),
        }
    }

    pub fn is_highest(&self, b: usize) -> bool {
        (0..self.cartan.rank()).all(|i| self.e[i][b].is_none())
    }

    pub fn is_lowest(&self, b: usize) -> bool {
        (0..self.cartan.rank()).all(|i| self.f[i][b].is_none())
    }

    pub fn highest_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.is_highest(b)).collect()
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &CrystalGraph) -> Result<Self> {
        if self.cartan != other.cartan {
            return Err(Error::MismatchedCartan);
        }
        let r = self.cartan.rank();
        let m = other.len();
        let n = self.len() * m;
        let mut weights = Vec::with_capacity(n);
        for b1 in 0..self.len() {
            for b2 in 0..m {
                weights.push(&self.weights[b1] + &other.weights[b2]);
            }
        }
        let mut e = vec![vec![None; n]; r];
        let mut f = vec![vec![None; n]; r];
        for i in 0..r {
            for b1 in 0..self.len() {
                for b2 in 0..m {
                    let id = b1 * m + b2;
                    e[i][id] = if self.eps[i][b1] > other.phi[i][b2] {
                        self.e[i][b1].map(|c| c * m + b2)
                    } else {
                        other.e[i][b2].map(|c| b1 * m + c)
                    };
                    f[i][id] = if self.eps[i][b1] >= other.phi[i][b2] {
                        self.f[i][b1].map(|c| c * m + b2)
                    } else {
                        other.f[i][b2].map(|c| b1 * m + c)
                    };
                }
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) if n <= 4096 => {
                Some((0..n).map(|id| format!("{}⊗{}", a[id / m], b[id % m])).collect())
            }
            _ => None,
        };
        let mut g = CrystalGraph { cartan: self.cartan.clone(), weights, e, f, eps: Vec::new(), phi: Vec::new(), labels };
        g.compute_strings();
        Ok(g)
    }

    /// Left-nested tensor product of a non-empty list of crystals.
    pub fn tensor_all(factors: &[&CrystalGraph]) -> Result<Self> {
        let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidCrystal("empty tensor product".into()))?;
        let mut acc = (*first).clone();
        for b in rest {
            acc = acc.tensor(b)?;
        }
        Ok(acc)
    }

    /// The trivial crystal `B(0)`.
    pub fn trivial(cartan: &CartanData) -> Self {
        let mut g = Self::from_f_edges(cartan.clone(), vec![cartan.zero_weight()], &[]).expect("trivial crystal is valid");
        g.labels = Some(vec!["[]".into()]);
        g
    }

    /// Connected components, each with its unique highest element, ordered by
    /// smallest element id; elements within a component in increasing order.
    pub fn components(&self) -> Result<Vec<Component>> {
        let n = self.len();
        let r = self.cartan.rank();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let k = out.len();
            comp[start] = k;
            let mut elements = vec![start];
            let mut stack = vec![start];
            while let Some(b) = stack.pop() {
                for i in 0..r {
                    for c in [self.e[i][b], self.f[i][b]].into_iter().flatten() {
                        if comp[c] == usize::MAX {
                            comp[c] = k;
                            elements.push(c);
                            stack.push(c);
                        }
                    }
                }
            }
            elements.sort_unstable();
            let highest: Vec<usize> = elements.iter().copied().filter(|&b| self.is_highest(b)).collect();
            if highest.len() != 1 {
                return Err(Error::NotNormal(format!(
                    "component containing {start} has {} highest elements",
                    highest.len()
                )));
            }
            out.push(Component { highest: highest[0], elements });
        }
        Ok(out)
    }

    /// The sub-crystal on a union of components, with the list mapping new
    /// ids to old ids.
    pub fn subcrystal(&self, elements: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut new_id = HashMap::new();
        for (k, &b) in elements.iter().enumerate() {
            new_id.insert(b, k);
        }
        let weights = elements.iter().map(|&b| self.weights[b].clone()).collect();
        let mut f_edges = Vec::new();
        for i in 0..self.cartan.rank() {
            for (k, &b) in elements.iter().enumerate() {
                if let Some(c) = self.f[i][b] {
                    let target = new_id
                        .get(&c)
                        .ok_or_else(|| Error::InvalidCrystal(format!("element set not closed: f_{}({b}) = {c}", i + 1)))?;
                    f_edges.push((i, k, *target));
                }
            }
        }
        let mut g = Self::from_f_edges(self.cartan.clone(), weights, &f_edges)?;
        g.labels = self.labels.as_ref().map(|l| elements.iter().map(|&b| l[b].clone()).collect());
        Ok((g, elements.to_vec()))
    }

    /// Simultaneous breadth-first walk from `other_start` in `other` and
    /// `self_start` in `self` along all `e_i`, `f_i`. Returns the map
    /// `other-element -> self-element` if the two components match exactly.
    pub fn match_component(&self, self_start: usize, other: &CrystalGraph, other_start: usize) -> Option<BTreeMap<usize, usize>> {
        if self.cartan != other.cartan {
            return None;
        }
        let r = self.cartan.rank();
        let mut map = BTreeMap::from([(other_start, self_start)]);
        let mut used = HashMap::from([(self_start, other_start)]);
        let mut queue = VecDeque::from([(other_start, self_start)]);
        while let Some((o, s)) = queue.pop_front() {
            if other.weights[o] != self.weights[s] {
                return None;
            }
            for i in 0..r {
                for (on, sn) in [(other.f[i][o], self.f[i][s]), (other.e[i][o], self.e[i][s])] {
                    match (on, sn) {
                        (None, None) => {}
                        (Some(on), Some(sn)) => match map.get(&on) {
                            Some(&prev) if prev != sn => return None,
                            Some(_) => {}
                            None => {
                                if used.contains_key(&sn) {
                                    return None;
                                }
                                map.insert(on, sn);
                                used.insert(sn, on);
                                queue.push_back((on, sn));
                            }
                        },
                        _ => return None,
                    }
                }
            }
        }
        Some(map)
    }

    pub fn normality(&self) -> Normality {
        for i in 0..self.cartan.rank() {
            for b in 0..self.len() {
                if self.phi[i][b] as i32 - self.eps[i][b] as i32 != self.weights[b].0[i] {
                    return Normality::NotNormal(format!("φ_{0}({b}) - ε_{0}({b}) differs from the weight pairing", i + 1));
                }
            }
        }
        let comps = match self.components() {
            Ok(c) => c,
            Err(e) => return Normality::NotNormal(e.to_string()),
        };
        if self.cartan.kind() != CartanKind::A {
            return Normality::Unverifiable;
        }
        for comp in comps {
            let lambda = &self.weights[comp.highest];
            let reference = match CrystalGraph::irreducible(&self.cartan, lambda) {
                Ok(g) => g,
                Err(e) => return Normality::NotNormal(format!("component at {}: {e}", comp.highest)),
            };
            match self.match_component(comp.highest, &reference, 0) {
                Some(map) if map.len() == reference.len() && map.len() == comp.elements.len() => {}
                _ => {
                    return Normality::NotNormal(format!(
                        "component at {} is not isomorphic to B{}",
                        comp.highest, lambda
                    ))
                }
            }
        }
        Normality::Normal
    }

    pub fn is_normal(&self) -> bool {
        self.normality() == Normality::Normal
    }

    /// Highest elements of weight `mu`.
    pub fn highest_of_weight(&self, mu: &Weight) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.is_highest(b) && &self.weights[b] == mu).collect()
    }

    /// The lowest element reached from `b` by applying `f_i` greedily.
    pub fn lowest_from(&self, b: usize) -> usize {
        let mut cur = b;
        'outer: loop {
            for i in 0..self.cartan.rank() {
                if let Some(c) = self.f[i][cur] {
                    cur = c;
                    continue 'outer;
                }
            }
            return cur;
        }
    }
}

/// Splits a tensor id into factor ids (mixed radix, first factor most significant).
pub fn split_id(mut id: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (k, &m) in sizes.iter().enumerate().rev() {
        out[k] = id % m;
        id /= m;
    }
    out
}

pub fn join_id(parts: &[usize], sizes: &[usize]) -> usize {
    parts.iter().zip(sizes).fold(0, |acc, (&b, &m)| acc * m + b)
}

/// The highest elements of weight `mu` in `B(λ1) ⊗ B(λ2)`.
pub fn multiplicity_set(cartan: &CartanData, l1: &Weight, l2: &Weight, mu: &Weight) -> Result<Vec<(usize, usize)>> {
    let b1 = CrystalGraph::irreducible(cartan, l1)?;
    let b2 = CrystalGraph::irreducible(cartan, l2)?;
    let t = b1.tensor(&b2)?;
    let m = b2.len();
    Ok(t.highest_of_weight(mu).into_iter().map(|id| (id / m, id % m)).collect())
}

/// Shared cache of irreducible crystals for one Cartan datum.
#[derive(Debug)]
pub struct CrystalFamily {
    cartan: CartanData,
    cache: Mutex<HashMap<Weight, Arc<CrystalGraph>>>,
}

impl CrystalFamily {
    pub fn new(cartan: CartanData) -> Self {
        CrystalFamily { cartan, cache: Mutex::new(HashMap::new()) }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn get(&self, lambda: &Weight) -> Result<Arc<CrystalGraph>> {
        if let Some(g) = self.cache.lock().unwrap().get(lambda) {
            return Ok(g.clone());
        }
        let g = Arc::new(if lambda.is_zero() && self.cartan.check_weight(lambda).is_ok() {
            CrystalGraph::trivial(&self.cartan)
        } else {
            CrystalGraph::irreducible(&self.cartan, lambda)?
        });
        self.cache.lock().unwrap().insert(lambda.clone(), g.clone());
        Ok(g)
    }
}

fn reading_word(t: &[Vec<u8>]) -> Vec<(usize, usize)> {
    let mut word = Vec::new();
    for (row, entries) in t.iter().enumerate().rev() {
        for col in 0..entries.len() {
            word.push((row, col));
        }
    }
    word
}

/// Positions of the uncancelled letters `i` (0-based node, letters `i+1`,
/// `i+2` in 1-based tableau entries): a letter `i+2` cancels a later `i+1`.
fn signature(t: &[Vec<u8>], i: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let lo = (i + 1) as u8;
    let hi = lo + 1;
    let mut open_hi: Vec<(usize, usize)> = Vec::new();
    let mut free_lo = Vec::new();
    for (row, col) in reading_word(t) {
        let x = t[row][col];
        if x == hi {
            open_hi.push((row, col));
        } else if x == lo && open_hi.pop().is_none() {
            free_lo.push((row, col));
        }
    }
    (free_lo, open_hi)
}

fn tableau_f(t: &[Vec<u8>], i: usize) -> Option<Vec<Vec<u8>>> {
    let (free_lo, _) = signature(t, i);
    let &(row, col) = free_lo.last()?;
    let mut out = t.to_vec();
    out[row][col] += 1;
    Some(out)
}

#[cfg(test)]
fn tableau_e(t: &[Vec<u8>], i: usize) -> Option<Vec<Vec<u8>>> {
    let (_, open_hi) = signature(t, i);
    let &(row, col) = open_hi.first()?;
    let mut out = t.to_vec();
    out[row][col] -= 1;
    Some(out)
}

fn tableau_weight(t: &[Vec<u8>], rank: usize) -> Weight {
    let mut content = vec![0i32; rank + 2];
    for row in t {
        for &x in row {
            content[x as usize] += 1;
        }
    }
    Weight((0..rank).map(|i| content[i + 1] - content[i + 2]).collect())
}

fn tableau_label(t: &[Vec<u8>]) -> String {
    let rows: Vec<String> = t
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}
