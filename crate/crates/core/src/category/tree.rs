//! Elements of iterated multiplicity sets, indexed by bracketings, and the
//! structure maps acting on them.

use std::collections::{BTreeMap, HashMap};

use super::{CategoryData, Colour, LeftKey, PhiKey, RightKey};
use crate::error::{Error, Result};

/// A bracketing of a tensor product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(a: Shape, b: Shape) -> Shape {
        Shape::Node(Box::new(a), Box::new(b))
    }

    /// `((x1 x2) x3) ... xn`.
    pub fn left_comb(n: usize) -> Shape {
        assert!(n >= 1);
        (1..n).fold(Shape::Leaf, |acc, _| Shape::node(acc, Shape::Leaf))
    }

    /// `x1 (x2 (... xn))`.
    pub fn right_comb(n: usize) -> Shape {
        assert!(n >= 1);
        (1..n).fold(Shape::Leaf, |acc, _| Shape::node(Shape::Leaf, acc))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(a, b) => a.leaves() + b.leaves(),
        }
    }
}

/// An element of an iterated multiplicity set: each node carries its output
/// colour and an element of the multiplicity set of its two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeElem {
    Leaf(Colour),
    Node { out: Colour, l: usize, left: Box<TreeElem>, right: Box<TreeElem> },
}

impl TreeElem {
    pub fn node(out: Colour, l: usize, left: TreeElem, right: TreeElem) -> TreeElem {
        TreeElem::Node { out, l, left: Box::new(left), right: Box::new(right) }
    }

    pub fn colour(&self) -> Colour {
        match self {
            TreeElem::Leaf(c) => *c,
            TreeElem::Node { out, .. } => *out,
        }
    }

    pub fn leaves(&self) -> Vec<Colour> {
        match self {
            TreeElem::Leaf(c) => vec![*c],
            TreeElem::Node { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            TreeElem::Leaf(_) => Shape::Leaf,
            TreeElem::Node { left, right, .. } => Shape::node(left.shape(), right.shape()),
        }
    }
}

fn missing(what: String) -> Error {
    Error::InvalidCategory(what)
}

/// Structure maps of a [`CategoryData`] extended to bracketed products.
/// Commutors on multiplicity sets are induced from the commutors on
/// underlying sets through `phi`; pairs where this fails are recorded.
pub struct Engine<'a> {
    data: &'a CategoryData,
    phi_inv: HashMap<(Colour, Colour), HashMap<(usize, usize), PhiKey>>,
    assoc_inv: HashMap<(Colour, Colour, Colour), HashMap<RightKey, LeftKey>>,
    sigma_l: HashMap<(Colour, Colour), HashMap<(Colour, usize), usize>>,
    unnatural: BTreeMap<(Colour, Colour), String>,
}

impl<'a> Engine<'a> {
    pub fn new(data: &'a CategoryData) -> Self {
        let phi_inv = data.phi.iter().map(|(&k, m)| (k, m.iter().map(|(&a, &b)| (b, a)).collect())).collect();
        let assoc_inv = data.assoc.iter().map(|(&k, m)| (k, m.iter().map(|(&a, &b)| (b, a)).collect())).collect();
        let mut engine = Engine { data, phi_inv, assoc_inv, sigma_l: HashMap::new(), unnatural: BTreeMap::new() };
        for &(x, y) in data.sigma.keys() {
            match engine.induce_sigma(x, y) {
                Ok(m) => {
                    engine.sigma_l.insert((x, y), m);
                }
                Err(why) => {
                    engine.unnatural.insert((x, y), why);
                }
            }
        }
        engine
    }

    pub fn data(&self) -> &CategoryData {
        self.data
    }

    /// Commutor pairs whose underlying-set commutor does not come from a map
    /// of multiplicity sets, with the reason.
    pub fn unnatural(&self) -> &BTreeMap<(Colour, Colour), String> {
        &self.unnatural
    }

    /// The commutor on multiplicity sets `(x ⊗ y)_μ -> (y ⊗ x)_μ`.
    fn induce_sigma(&self, x: Colour, y: Colour) -> std::result::Result<HashMap<(Colour, usize), usize>, String> {
        let d = self.data;
        let pn = d.pair_name(x, y);
        let phi = d.phi.get(&(x, y)).ok_or(format!("phi{pn} missing"))?;
        let inv = self.phi_inv.get(&(y, x)).ok_or(format!("phi{} missing", d.pair_name(y, x)))?;
        let sigma = &d.sigma[&(x, y)];
        let table = d.mult.get(&(x, y)).ok_or(format!("multiplicity sets {pn} missing"))?;
        let mut out = HashMap::new();
        for (&mu, els) in table {
            for l in 0..els.len() {
                let mut image = None;
                for c in 0..d.sets[mu].len() {
                    let p = phi.get(&PhiKey { mu, l, c }).ok_or(format!("phi{pn} undefined at ({}, {}, {})", d.colours[mu], els[l], d.sets[mu][c]))?;
                    let q = sigma.get(p).ok_or(format!("commutor{pn} undefined at {p:?}"))?;
                    let k = inv.get(q).ok_or(format!("{q:?} is not in the image of phi{}", d.pair_name(y, x)))?;
                    if k.mu != mu || k.c != c {
                        return Err(format!(
                            "commutor{pn} moves the underlying element {} of CL({}) in the block of {}",
                            d.sets[mu][c], d.colours[mu], els[l]
                        ));
                    }
                    match image {
                        None => image = Some(k.l),
                        Some(prev) if prev != k.l => {
                            return Err(format!("commutor{pn} does not act blockwise on the block of {}", els[l]));
                        }
                        _ => {}
                    }
                }
                out.insert((mu, l), image.expect("CL sets are non-empty"));
            }
        }
        Ok(out)
    }

    /// All elements of a bracketing of the given leaf colours, sorted.
    pub fn elements(&self, shape: &Shape, leaves: &[Colour]) -> Result<Vec<TreeElem>> {
        if shape.leaves() != leaves.len() {
            return Err(missing(format!("shape with {} leaves for {} colours", shape.leaves(), leaves.len())));
        }
        let mut out = self.elements_rec(shape, leaves)?;
        out.sort();
        Ok(out)
    }

    fn elements_rec(&self, shape: &Shape, leaves: &[Colour]) -> Result<Vec<TreeElem>> {
        match shape {
            Shape::Leaf => Ok(vec![TreeElem::Leaf(leaves[0])]),
            Shape::Node(a, b) => {
                let (la, lb) = leaves.split_at(a.leaves());
                let left = self.elements_rec(a, la)?;
                let right = self.elements_rec(b, lb)?;
                let mut out = Vec::new();
                for ea in &left {
                    for eb in &right {
                        let (x, y) = (ea.colour(), eb.colour());
                        let table = self.data.mult.get(&(x, y)).ok_or_else(|| missing(format!("multiplicity sets {} missing", self.data.pair_name(x, y))))?;
                        for (&z, els) in table {
                            for l in 0..els.len() {
                                out.push(TreeElem::node(z, l, ea.clone(), eb.clone()));
                            }
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Elements of a bracketing with a fixed root colour.
    pub fn elements_to(&self, shape: &Shape, leaves: &[Colour], root: Colour) -> Result<Vec<TreeElem>> {
        Ok(self.elements(shape, leaves)?.into_iter().filter(|e| e.colour() == root).collect())
    }

    /// The associator at the root: `(X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`.
    pub fn alpha(&self, e: &TreeElem) -> Result<TreeElem> {
        let TreeElem::Node { out: rho, l: l2, left, right: z } = e else {
            return Err(missing("associator applied to a leaf".into()));
        };
        let TreeElem::Node { out: gamma, l, left: x, right: y } = left.as_ref() else {
            return Err(missing("associator needs a left-nested node".into()));
        };
        let key = (x.colour(), y.colour(), z.colour());
        let r = self
            .data
            .assoc
            .get(&key)
            .ok_or_else(|| missing(format!("associator{} missing", self.triple_name(key))))?
            .get(&LeftKey { gamma: *gamma, l: *l, rho: *rho, l2: *l2 })
            .ok_or_else(|| missing(format!("associator{} undefined", self.triple_name(key))))?;
        if r.rho != *rho {
            return Err(missing(format!("associator{} changes the outer colour", self.triple_name(key))));
        }
        Ok(TreeElem::node(*rho, r.m, x.as_ref().clone(), TreeElem::node(r.tau, r.m2, y.as_ref().clone(), z.as_ref().clone())))
    }

    /// The inverse associator at the root: `X ⊗ (Y ⊗ Z) -> (X ⊗ Y) ⊗ Z`.
    pub fn alpha_inv(&self, e: &TreeElem) -> Result<TreeElem> {
        let TreeElem::Node { out: rho, l: m, left: x, right } = e else {
            return Err(missing("associator applied to a leaf".into()));
        };
        let TreeElem::Node { out: tau, l: m2, left: y, right: z } = right.as_ref() else {
            return Err(missing("inverse associator needs a right-nested node".into()));
        };
        let key = (x.colour(), y.colour(), z.colour());
        let k = self
            .assoc_inv
            .get(&key)
            .ok_or_else(|| missing(format!("associator{} missing", self.triple_name(key))))?
            .get(&RightKey { rho: *rho, tau: *tau, m: *m, m2: *m2 })
            .ok_or_else(|| missing(format!("associator{} not onto", self.triple_name(key))))?;
        if k.rho != *rho {
            return Err(missing(format!("associator{} changes the outer colour", self.triple_name(key))));
        }
        Ok(TreeElem::node(*rho, k.l2, TreeElem::node(k.gamma, k.l, x.as_ref().clone(), y.as_ref().clone()), z.as_ref().clone()))
    }

    /// The commutor at the root: `X ⊗ Y -> Y ⊗ X`.
    pub fn sigma(&self, e: &TreeElem) -> Result<TreeElem> {
        let TreeElem::Node { out, l, left, right } = e else {
            return Ok(e.clone());
        };
        let key = (left.colour(), right.colour());
        let table = self.sigma_l.get(&key).ok_or_else(|| {
            let why = self.unnatural.get(&key).cloned().unwrap_or_else(|| "missing".into());
            missing(format!("commutor{}: {why}", self.data.pair_name(key.0, key.1)))
        })?;
        let l2 = *table.get(&(*out, *l)).ok_or_else(|| missing(format!("commutor{} undefined", self.data.pair_name(key.0, key.1))))?;
        Ok(TreeElem::node(*out, l2, right.as_ref().clone(), left.as_ref().clone()))
    }

    /// The cactus long element, reversing all leaves.
    pub fn long(&self, e: &TreeElem) -> Result<TreeElem> {
        match e {
            TreeElem::Leaf(_) => Ok(e.clone()),
            TreeElem::Node { out, l, left, right } => self.sigma(&TreeElem::node(*out, *l, self.long(left)?, self.long(right)?)),
        }
    }

    /// Applies `f` to the subtree at `path` (`false` = left, `true` = right).
    pub fn at(&self, e: &TreeElem, path: &[bool], f: &dyn Fn(&TreeElem) -> Result<TreeElem>) -> Result<TreeElem> {
        let Some((&step, rest)) = path.split_first() else {
            return f(e);
        };
        let TreeElem::Node { out, l, left, right } = e else {
            return Err(missing("path leaves the tree".into()));
        };
        Ok(if step {
            TreeElem::node(*out, *l, left.as_ref().clone(), self.at(right, rest, f)?)
        } else {
            TreeElem::node(*out, *l, self.at(left, rest, f)?, right.as_ref().clone())
        })
    }

    /// Rebrackets into the left comb by inverse associators.
    pub fn to_left_comb(&self, e: &TreeElem) -> Result<TreeElem> {
        match e {
            TreeElem::Leaf(_) => Ok(e.clone()),
            TreeElem::Node { right, .. } if matches!(right.as_ref(), TreeElem::Node { .. }) => self.to_left_comb(&self.alpha_inv(e)?),
            TreeElem::Node { out, l, left, right } => Ok(TreeElem::node(*out, *l, self.to_left_comb(left)?, right.as_ref().clone())),
        }
    }

    /// The image under the forgetful functor: an element of `CL(root)` and
    /// a tree element give a tuple in the product of the leaf sets.
    pub fn flatten(&self, e: &TreeElem, c: usize) -> Result<Vec<usize>> {
        match e {
            TreeElem::Leaf(_) => Ok(vec![c]),
            TreeElem::Node { out, l, left, right } => {
                let key = (left.colour(), right.colour());
                let &(c1, c2) = self
                    .data
                    .phi
                    .get(&key)
                    .ok_or_else(|| missing(format!("phi{} missing", self.data.pair_name(key.0, key.1))))?
                    .get(&PhiKey { mu: *out, l: *l, c })
                    .ok_or_else(|| missing(format!("phi{} undefined", self.data.pair_name(key.0, key.1))))?;
                let mut v = self.flatten(left, c1)?;
                v.extend(self.flatten(right, c2)?);
                Ok(v)
            }
        }
    }

    /// Inverse table of [`Engine::flatten`] on one bracketing.
    pub fn unflatten_table(&self, shape: &Shape, leaves: &[Colour]) -> Result<HashMap<Vec<usize>, (TreeElem, usize)>> {
        let mut out = HashMap::new();
        for e in self.elements(shape, leaves)? {
            for c in 0..self.data.sets[e.colour()].len() {
                let t = self.flatten(&e, c)?;
                if out.insert(t.clone(), (e.clone(), c)).is_some() {
                    return Err(missing(format!("phi is not injective on {t:?}")));
                }
            }
        }
        Ok(out)
    }

    /// Names the node labels of an element, children first.
    pub fn label(&self, e: &TreeElem) -> String {
        let mut parts = Vec::new();
        self.label_rec(e, &mut parts);
        parts.join(" ; ")
    }

    fn label_rec(&self, e: &TreeElem, parts: &mut Vec<String>) {
        if let TreeElem::Node { out, l, left, right } = e {
            self.label_rec(left, parts);
            self.label_rec(right, parts);
            parts.push(self.data.mult_set(left.colour(), right.colour(), *out)[*l].clone());
        }
    }

    /// A full description with colours, for reports.
    pub fn describe(&self, e: &TreeElem) -> String {
        match e {
            TreeElem::Leaf(c) => self.data.colours[*c].clone(),
            TreeElem::Node { out, l, left, right } => format!(
                "({} ⊗ {})_{}[{}]",
                self.describe(left),
                self.describe(right),
                self.data.colours[*out],
                self.data.mult_set(left.colour(), right.colour(), *out).get(*l).map(|s| s.as_str()).unwrap_or("?")
            ),
        }
    }

    fn triple_name(&self, (x, y, z): (Colour, Colour, Colour)) -> String {
        let c = &self.data.colours;
        format!("({}, {}, {})", c[x], c[y], c[z])
    }
}
