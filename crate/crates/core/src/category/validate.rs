//! Axiom checks for [`CategoryData`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::tree::{Engine, Shape};
use super::{CategoryData, Colour, PhiKey, RightKey};
use crate::error::{Error, Result};

/// Listed failures are capped; counts are not.
const MAX_LISTED: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct AxiomSummary {
    pub axiom: String,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub colours: Vec<String>,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub colours: Vec<String>,
    pub axioms: Vec<AxiomSummary>,
    pub failures: Vec<AxiomFailure>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn failure_count(&self) -> usize {
        self.axioms.iter().map(|a| a.failures).sum()
    }
}

struct Fail {
    element: String,
    lhs: String,
    rhs: String,
}

fn fail(element: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Fail {
    Fail { element: element.into(), lhs: lhs.into(), rhs: rhs.into() }
}

fn err_fail(e: Error) -> Fail {
    fail("", e.to_string(), "")
}

/// Checks structure, pentagon, the collapsed pentagon for the monoidal
/// structure, naturality and involutivity of the commutor, and the
/// coboundary hexagon, exhaustively over tuples drawn from `colours`.
/// Structure, naturality and involutivity are also checked on every stored
/// map.
pub fn validate(data: &CategoryData, colours: &[Colour]) -> Result<ValidationReport> {
    if let Some(&c) = colours.iter().find(|&&c| c >= data.colours.len()) {
        return Err(Error::InvalidCategory(format!("colour index {c} out of range")));
    }
    let engine = Engine::new(data);
    let names = |cs: &[Colour]| cs.iter().map(|&c| data.colours[c].clone()).collect::<Vec<_>>();
    let mut axioms = Vec::new();
    let mut failures = Vec::new();
    let mut record = |axiom: &str, results: Vec<(Vec<Colour>, Option<Fail>)>| {
        let count = results.iter().filter(|r| r.1.is_some()).count();
        axioms.push(AxiomSummary { axiom: axiom.into(), instances: results.len(), failures: count });
        for (cs, f) in results {
            if let Some(f) = f {
                if failures.len() < MAX_LISTED {
                    failures.push(AxiomFailure { axiom: axiom.into(), colours: names(&cs), element: f.element, lhs: f.lhs, rhs: f.rhs });
                }
            }
        }
    };

    record("structure", structure(data));

    let pairs: BTreeSet<(Colour, Colour)> = colours.iter().flat_map(|&a| colours.iter().map(move |&b| (a, b))).collect();
    let sigma_pairs: BTreeSet<(Colour, Colour)> = data.sigma.keys().copied().chain(pairs.iter().copied()).collect();
    let naturality = sigma_pairs
        .iter()
        .map(|&(x, y)| {
            let f = if !data.sigma.contains_key(&(x, y)) {
                Some(fail("", format!("commutor{} missing", data.pair_name(x, y)), ""))
            } else {
                engine.unnatural().get(&(x, y)).map(|why| fail("", why.clone(), ""))
            };
            (vec![x, y], f)
        })
        .collect();
    record("naturality", naturality);

    let involutive = sigma_pairs.par_iter().map(|&(x, y)| (vec![x, y], involutivity(data, x, y))).collect();
    record("involutivity", involutive);

    let triples: Vec<[Colour; 3]> = colours.iter().flat_map(|&a| colours.iter().flat_map(move |&b| colours.iter().map(move |&c| [a, b, c]))).collect();
    let quads: Vec<[Colour; 4]> = triples.iter().flat_map(|t| colours.iter().map(move |&d| [t[0], t[1], t[2], d])).collect();

    let pent = quads.par_iter().map(|q| (q.to_vec(), pentagon(&engine, q).unwrap_or_else(|e| Some(err_fail(e))))).collect();
    record("pentagon", pent);
    let mono = triples.par_iter().map(|t| (t.to_vec(), monoidal(&engine, t).unwrap_or_else(|e| Some(err_fail(e))))).collect();
    record("monoidal", mono);
    let hex = triples.par_iter().map(|t| (t.to_vec(), hexagon(&engine, t).unwrap_or_else(|e| Some(err_fail(e))))).collect();
    record("hexagon", hex);

    let passed = axioms.iter().all(|a| a.failures == 0);
    Ok(ValidationReport { colours: names(colours), axioms, failures, passed })
}

/// Every stored map is total on its domain and a bijection onto its
/// codomain, and associators preserve the outer colour.
fn structure(d: &CategoryData) -> Vec<(Vec<Colour>, Option<Fail>)> {
    let mut out = Vec::new();
    for (c, s) in d.sets.iter().enumerate() {
        if s.is_empty() {
            out.push((vec![c], Some(fail("", format!("CL({}) is empty", d.colours[c]), ""))));
        }
    }
    for (&(x, y), m) in &d.phi {
        out.push((vec![x, y], check_phi(d, x, y, m)));
    }
    for (&(x, y), m) in &d.sigma {
        let (nx, ny) = (d.sets[x].len(), d.sets[y].len());
        let f = if m.len() != nx * ny {
            Some(fail("", format!("commutor{} has {} entries", d.pair_name(x, y), m.len()), format!("{} expected", nx * ny)))
        } else {
            let images: BTreeSet<_> = m.values().collect();
            let in_range = m.iter().all(|(&(a, b), &(c, e))| a < nx && b < ny && c < ny && e < nx);
            (!in_range || images.len() != m.len()).then(|| fail("", format!("commutor{} is not a bijection", d.pair_name(x, y)), ""))
        };
        out.push((vec![x, y], f));
    }
    for (&(x, y, z), m) in &d.assoc {
        out.push((vec![x, y, z], check_assoc(d, x, y, z, m)));
    }
    out
}

fn check_phi(d: &CategoryData, x: Colour, y: Colour, m: &BTreeMap<PhiKey, (usize, usize)>) -> Option<Fail> {
    let pn = d.pair_name(x, y);
    let Some(table) = d.mult.get(&(x, y)) else {
        return Some(fail("", format!("phi{pn} without multiplicity sets"), ""));
    };
    let domain: usize = table.iter().map(|(&mu, els)| els.len() * d.sets[mu].len()).sum();
    let codomain = d.sets[x].len() * d.sets[y].len();
    if domain != codomain {
        return Some(fail("", format!("phi{pn}: domain has {domain} elements"), format!("codomain has {codomain}")));
    }
    if m.len() != domain {
        return Some(fail("", format!("phi{pn} has {} entries", m.len()), format!("{domain} expected")));
    }
    for k in m.keys() {
        if k.l >= d.mult_set(x, y, k.mu).len() || k.c >= d.sets[k.mu].len() {
            return Some(fail(format!("{k:?}"), format!("phi{pn} has an argument outside its domain"), ""));
        }
    }
    let images: BTreeSet<_> = m.values().collect();
    if images.len() != m.len() || images.iter().any(|&&(a, b)| a >= d.sets[x].len() || b >= d.sets[y].len()) {
        return Some(fail("", format!("phi{pn} is not a bijection"), ""));
    }
    None
}

fn check_assoc(d: &CategoryData, x: Colour, y: Colour, z: Colour, m: &BTreeMap<super::LeftKey, RightKey>) -> Option<Fail> {
    let tn = format!("({}, {}, {})", d.colours[x], d.colours[y], d.colours[z]);
    let mut left = 0usize;
    let Some(xy) = d.mult.get(&(x, y)) else {
        return Some(fail("", format!("associator{tn}: multiplicity sets {} missing", d.pair_name(x, y)), ""));
    };
    for (&g, els) in xy {
        let Some(gz) = d.mult.get(&(g, z)) else {
            return Some(fail("", format!("associator{tn}: multiplicity sets {} missing", d.pair_name(g, z)), ""));
        };
        left += els.len() * gz.values().map(|v| v.len()).sum::<usize>();
    }
    let mut right = 0usize;
    let Some(yz) = d.mult.get(&(y, z)) else {
        return Some(fail("", format!("associator{tn}: multiplicity sets {} missing", d.pair_name(y, z)), ""));
    };
    for (&t, els) in yz {
        let Some(xt) = d.mult.get(&(x, t)) else {
            return Some(fail("", format!("associator{tn}: multiplicity sets {} missing", d.pair_name(x, t)), ""));
        };
        right += els.len() * xt.values().map(|v| v.len()).sum::<usize>();
    }
    if left != right || m.len() != left {
        return Some(fail("", format!("associator{tn} has {} entries", m.len()), format!("domain {left}, codomain {right}")));
    }
    for (l, r) in m {
        if l.l >= d.mult_set(x, y, l.gamma).len() || l.l2 >= d.mult_set(l.gamma, z, l.rho).len() {
            return Some(fail(format!("{l:?}"), format!("associator{tn} has an argument outside its domain"), ""));
        }
        if r.m >= d.mult_set(x, r.tau, r.rho).len() || r.m2 >= d.mult_set(y, z, r.tau).len() {
            return Some(fail(format!("{l:?}"), format!("associator{tn} has a value outside its codomain"), format!("{r:?}")));
        }
        if r.rho != l.rho {
            return Some(fail(format!("{l:?}"), format!("associator{tn} changes the outer colour"), format!("{r:?}")));
        }
    }
    let images: BTreeSet<_> = m.values().collect();
    (images.len() != m.len()).then(|| fail("", format!("associator{tn} is not injective"), ""))
}

fn involutivity(d: &CategoryData, x: Colour, y: Colour) -> Option<Fail> {
    let (Some(s), Some(t)) = (d.sigma.get(&(x, y)), d.sigma.get(&(y, x))) else {
        return Some(fail("", format!("commutor{} or its reverse missing", d.pair_name(x, y)), ""));
    };
    for (p, q) in s {
        let back = t.get(q);
        if back != Some(p) {
            let name = |(a, b): (usize, usize), u: Colour, v: Colour| format!("{} ⊗ {}", d.sets[u][a], d.sets[v][b]);
            return Some(fail(name(*p, x, y), back.map(|&r| name(r, x, y)).unwrap_or_else(|| "undefined".into()), name(*p, x, y)));
        }
    }
    None
}

fn pentagon(en: &Engine, q: &[Colour; 4]) -> Result<Option<Fail>> {
    let shape = Shape::node(Shape::left_comb(3), Shape::Leaf);
    for e in en.elements(&shape, q)? {
        // ((ab)c)d -> (ab)(cd) -> a(b(cd))
        let one = en.alpha(&en.alpha(&e)?)?;
        // ((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd))
        let two = en.at(&en.alpha(&en.at(&e, &[false], &|s| en.alpha(s))?)?, &[true], &|s| en.alpha(s))?;
        if one != two {
            return Ok(Some(fail(en.describe(&e), en.describe(&one), en.describe(&two))));
        }
    }
    Ok(None)
}

/// Both ways from `((a b) c)_ρ × CL(ρ)` to `CL(a) × CL(b) × CL(c)`.
fn monoidal(en: &Engine, t: &[Colour; 3]) -> Result<Option<Fail>> {
    let d = en.data();
    for e in en.elements(&Shape::left_comb(3), t)? {
        let r = en.alpha(&e)?;
        for c in 0..d.sets[e.colour()].len() {
            let one = en.flatten(&e, c)?;
            let two = en.flatten(&r, c)?;
            if one != two {
                let show = |v: &[usize]| v.iter().zip(t).map(|(&k, &col)| d.sets[col][k].clone()).collect::<Vec<_>>().join(" ⊗ ");
                return Ok(Some(fail(format!("{} with {}", en.describe(&e), d.sets[e.colour()][c]), show(&one), show(&two))));
            }
        }
    }
    Ok(None)
}

fn hexagon(en: &Engine, t: &[Colour; 3]) -> Result<Option<Fail>> {
    for e in en.elements(&Shape::left_comb(3), t)? {
        // (ab)c -> a(bc) -> (bc)a -> (cb)a
        let one = en.at(&en.sigma(&en.alpha(&e)?)?, &[false], &|s| en.sigma(s))?;
        // (ab)c -> c(ab) -> c(ba) -> (cb)a
        let two = en.alpha_inv(&en.at(&en.sigma(&e)?, &[true], &|s| en.sigma(s))?)?;
        if one != two {
            return Ok(Some(fail(en.describe(&e), en.describe(&one), en.describe(&two))));
        }
    }
    Ok(None)
}
