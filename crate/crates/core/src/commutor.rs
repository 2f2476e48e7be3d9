//! The Schützenberger involution and the crystal commutor.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::crystal::{join_id, split_id, CrystalGraph, Normality};
use crate::error::{Error, Result};

/// A bijection between element sets of two crystals, stored as `map[b]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrystalBijection {
    map: Vec<usize>,
}

impl CrystalBijection {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &b in &map {
            if b >= n || seen[b] {
                return Err(Error::InvalidCrystal(format!("map {map:?} is not a bijection")));
            }
            seen[b] = true;
        }
        Ok(CrystalBijection { map })
    }

    pub fn identity(n: usize) -> Self {
        CrystalBijection { map: (0..n).collect() }
    }

    pub fn apply(&self, b: usize) -> usize {
        self.map[b]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        CrystalBijection { map: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CrystalBijection) -> Self {
        CrystalBijection { map: other.map.iter().map(|&b| self.map[b]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(a, &b)| a == b)
    }

    /// True iff the map intertwines `wt`, `e_i` and `f_i`.
    pub fn is_morphism(&self, dom: &CrystalGraph, cod: &CrystalGraph) -> bool {
        if dom.len() != self.len() || cod.len() != self.len() || dom.cartan() != cod.cartan() {
            return false;
        }
        (0..dom.len()).all(|b| {
            let c = self.map[b];
            dom.weight(b) == cod.weight(c)
                && (0..dom.cartan().rank()).all(|i| {
                    dom.e(i, b).map(|x| self.map[x]) == cod.e(i, c) && dom.f(i, b).map(|x| self.map[x]) == cod.f(i, c)
                })
        })
    }
}

impl Serialize for CrystalBijection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, usize)> = self.map.iter().copied().enumerate().collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CrystalBijection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut pairs = Vec::<(usize, usize)>::deserialize(d)?;
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(k, &(a, _))| a != k) {
            return Err(serde::de::Error::custom("pairs must cover 0..n exactly once"));
        }
        CrystalBijection::new(pairs.into_iter().map(|(_, b)| b).collect()).map_err(serde::de::Error::custom)
    }
}

/// `ξ`: on each component, `ξ(b⁺) = b⁻` and `ξ(f_i b) = e_{i*}(ξ b)`.
pub fn schutzenberger(b: &CrystalGraph) -> Result<CrystalBijection> {
    if let Normality::NotNormal(why) = b.normality() {
        return Err(Error::NotNormal(why));
    }
    let cartan = b.cartan();
    let r = cartan.rank();
    let mut xi = vec![usize::MAX; b.len()];
    for comp in b.components()? {
        let lows: Vec<usize> = comp.elements.iter().copied().filter(|&x| b.is_lowest(x)).collect();
        if lows.len() != 1 {
            return Err(Error::NotNormal(format!("component at {} has {} lowest elements", comp.highest, lows.len())));
        }
        xi[comp.highest] = lows[0];
        let mut queue = VecDeque::from([comp.highest]);
        while let Some(x) = queue.pop_front() {
            for i in 0..r {
                let Some(y) = b.f(i, x) else { continue };
                let target = b.e(cartan.star(i), xi[x]).ok_or_else(|| {
                    Error::RecursionInconsistency(format!("e_{}(ξ({x})) undefined while f_{}({x}) = {y}", cartan.star(i) + 1, i + 1))
                })?;
                if xi[y] == usize::MAX {
                    xi[y] = target;
                    queue.push_back(y);
                } else if xi[y] != target {
                    return Err(Error::RecursionInconsistency(format!("ξ({y}) reached as both {} and {target}", xi[y])));
                }
            }
        }
    }
    let xi = CrystalBijection::new(xi).map_err(|e| Error::RecursionInconsistency(e.to_string()))?;
    for x in 0..b.len() {
        let y = xi.apply(x);
        if xi.apply(y) != x {
            return Err(Error::RecursionInconsistency(format!("ξ is not involutive at {x}")));
        }
        for i in 0..r {
            if b.weight(y).0[i] != -b.weight(x).0[cartan.star(i)] {
                return Err(Error::RecursionInconsistency(format!("wt(ξ({x})) is not w0·wt({x})")));
            }
            let s = cartan.star(i);
            if b.e(i, x).map(|z| xi.apply(z)) != b.f(s, y) || b.f(i, x).map(|z| xi.apply(z)) != b.e(s, y) {
                return Err(Error::RecursionInconsistency(format!("ξ does not swap e_{} and f_{} at {x}", i + 1, s + 1)));
            }
        }
    }
    Ok(xi)
}

/// `σ(b1 ⊗ b2) = ξ_{B2⊗B1}(ξ b2 ⊗ ξ b1)`, a map `B1 ⊗ B2 -> B2 ⊗ B1`.
pub fn commutor(b1: &CrystalGraph, b2: &CrystalGraph) -> Result<CrystalBijection> {
    if b1.cartan() != b2.cartan() {
        return Err(Error::MismatchedCartan);
    }
    let xi1 = schutzenberger(b1)?;
    let xi2 = schutzenberger(b2)?;
    let swapped = b2.tensor(b1)?;
    let xi21 = schutzenberger(&swapped)?;
    Ok(commutor_from_parts(&xi1, &xi2, &xi21))
}

fn commutor_from_parts(xi1: &CrystalBijection, xi2: &CrystalBijection, xi21: &CrystalBijection) -> CrystalBijection {
    let (n1, n2) = (xi1.len(), xi2.len());
    let mut map = vec![0; n1 * n2];
    for x in 0..n1 {
        for y in 0..n2 {
            map[x * n2 + y] = xi21.apply(xi2.apply(y) * n1 + xi1.apply(x));
        }
    }
    CrystalBijection { map }
}

/// The reversal `σ⁽ᵐ⁾: B1 ⊗ .. ⊗ Bm -> Bm ⊗ .. ⊗ B1`, with
/// `σ⁽ᵐ⁾ = σ_{B1, Bm⊗..⊗B2} ∘ (id ⊗ σ⁽ᵐ⁻¹⁾)`.
pub fn internal_cactus(factors: &[&CrystalGraph]) -> Result<CrystalBijection> {
    match factors {
        [] => Err(Error::InvalidCrystal("internal cactus needs at least one factor".into())),
        [b] => {
            if let Normality::NotNormal(why) = b.normality() {
                return Err(Error::NotNormal(why));
            }
            Ok(CrystalBijection::identity(b.len()))
        }
        [first, rest @ ..] => {
            let inner = internal_cactus(rest)?;
            let reversed: Vec<&CrystalGraph> = rest.iter().rev().copied().collect();
            let x = CrystalGraph::tensor_all(&reversed)?;
            let outer = commutor(first, &x)?;
            let m = inner.len();
            let map = (0..first.len() * m).map(|id| outer.apply((id / m) * m + inner.apply(id % m))).collect();
            Ok(CrystalBijection { map })
        }
    }
}

/// Reorders the factor ids of a tensor element: output factor `k` is input
/// factor `order[k]`.
pub fn permute_factors(id: usize, sizes: &[usize], order: &[usize]) -> usize {
    let parts = split_id(id, sizes);
    let new_parts: Vec<usize> = order.iter().map(|&k| parts[k]).collect();
    let new_sizes: Vec<usize> = order.iter().map(|&k| sizes[k]).collect();
    join_id(&new_parts, &new_sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanData, Weight};

    fn irr(r: usize, l: &[i32]) -> CrystalGraph {
        CrystalGraph::irreducible(&CartanData::type_a(r).unwrap(), &Weight(l.to_vec())).unwrap()
    }

    /// Oracle: brute-force the unique crystal isomorphism `B1⊗B2 -> B2⊗B1`
    /// fixing the chosen matching of highest elements, by walking components.
    fn iso_matching_highest(src: &CrystalGraph, dst: &CrystalGraph) -> Vec<usize> {
        let mut map = vec![usize::MAX; src.len()];
        let mut free: Vec<usize> = dst.highest_elements();
        for comp in src.components().unwrap() {
            let pos = free.iter().position(|&h| dst.weight(h) == src.weight(comp.highest)).unwrap();
            let h = free.remove(pos);
            let m = dst.match_component(h, src, comp.highest).unwrap();
            for (a, b) in m {
                map[a] = b;
            }
        }
        map
    }

    /// Oracle for the reversal: `ξ_{Bm⊗..⊗B1}(ξ bm ⊗ .. ⊗ ξ b1)`.
    fn closed_form_reversal(factors: &[&CrystalGraph]) -> Vec<usize> {
        let sizes: Vec<usize> = factors.iter().map(|b| b.len()).collect();
        let xis: Vec<CrystalBijection> = factors.iter().map(|b| schutzenberger(b).unwrap()).collect();
        let rev: Vec<&CrystalGraph> = factors.iter().rev().copied().collect();
        let rev_sizes: Vec<usize> = sizes.iter().rev().copied().collect();
        let xi_rev = schutzenberger(&CrystalGraph::tensor_all(&rev).unwrap()).unwrap();
        let total: usize = sizes.iter().product();
        (0..total)
            .map(|id| {
                let parts = split_id(id, &sizes);
                let img: Vec<usize> = (0..parts.len()).rev().map(|k| xis[k].apply(parts[k])).collect();
                xi_rev.apply(join_id(&img, &rev_sizes))
            })
            .collect()
    }

    #[test]
    fn xi_examples() {
        let b = irr(1, &[1]);
        assert_eq!(schutzenberger(&b).unwrap().map(), &[1, 0]);

        let t = b.tensor(&b).unwrap();
        let xi = schutzenberger(&t).unwrap();
        // B(2ω1) = {0 -> 1 -> 3}, B(0) = {2}
        assert_eq!(xi.map(), &[3, 1, 2, 0]);

        let v = irr(2, &[1, 0]);
        let xi = schutzenberger(&v).unwrap();
        assert_eq!(xi.apply(0), 2);
        let c = v.cartan();
        for x in 0..3 {
            for i in 0..2 {
                assert_eq!(c.pairing(v.weight(xi.apply(x)), i).unwrap(), -c.pairing(v.weight(x), c.star(i)).unwrap());
            }
        }
    }

    #[test]
    fn xi_rejects_non_normal_input() {
        let g = CrystalGraph::import_json(r#"{"cartan":{"type":"A","rank":1},"elements":[{"id":0,"wt":[1]}],"edges":[]}"#).unwrap();
        assert!(matches!(schutzenberger(&g), Err(Error::NotNormal(_))));
    }

    #[test]
    fn commutor_examples() {
        let b = irr(1, &[1]);
        let s = commutor(&b, &b).unwrap();
        assert!(s.is_identity());
        assert_eq!(s.map(), iso_matching_highest(&b.tensor(&b).unwrap(), &b.tensor(&b).unwrap()).as_slice());

        let c2 = CartanData::type_a(2).unwrap();
        let unit = CrystalGraph::trivial(&c2);
        let v = irr(2, &[1, 1]);
        let s = commutor(&v, &unit).unwrap();
        for x in 0..v.len() {
            assert_eq!(s.apply(x), x);
        }

        let (v1, v2) = (irr(2, &[1, 0]), irr(2, &[0, 1]));
        let s = commutor(&v1, &v2).unwrap();
        let t12 = v1.tensor(&v2).unwrap();
        let t21 = v2.tensor(&v1).unwrap();
        let zero = Weight(vec![0, 0]);
        let h12 = t12.highest_of_weight(&zero);
        let h21 = t21.highest_of_weight(&zero);
        assert_eq!((h12.len(), h21.len()), (1, 1));
        assert_eq!(s.apply(h12[0]), h21[0]);
        assert!(s.is_morphism(&t12, &t21));
        assert_eq!(s.map(), iso_matching_highest(&t12, &t21).as_slice());
    }

    fn family() -> Vec<CrystalGraph> {
        vec![irr(2, &[1, 0]), irr(2, &[0, 1]), irr(2, &[1, 1]), irr(2, &[0, 0])]
    }

    #[test]
    fn commutor_axioms_on_family() {
        let fam = family();
        for x in &fam {
            for y in &fam {
                let sxy = commutor(x, y).unwrap();
                let syx = commutor(y, x).unwrap();
                assert!(syx.compose(&sxy).is_identity());
                assert!(sxy.is_morphism(&x.tensor(y).unwrap(), &y.tensor(x).unwrap()));
            }
        }
    }

    #[test]
    fn internal_cactus_cases() {
        let b = irr(1, &[1]);
        assert!(internal_cactus(&[&b]).unwrap().is_identity());
        assert_eq!(internal_cactus(&[&b, &b]).unwrap(), commutor(&b, &b).unwrap());

        // Alternative split: σ_{B1⊗B2, B3} ∘ (σ⁽²⁾ ⊗ id).
        let peel_first = internal_cactus(&[&b, &b, &b]).unwrap();
        let s12 = commutor(&b, &b).unwrap();
        let b12 = b.tensor(&b).unwrap();
        let outer = commutor(&b12, &b).unwrap();
        let peel_last: Vec<usize> = (0..8).map(|id| outer.apply(s12.apply(id / 2) * 2 + id % 2)).collect();
        assert_eq!(peel_first.map(), peel_last.as_slice());
    }

    #[test]
    fn internal_cactus_matches_closed_form() {
        let (v1, v2, v3) = (irr(2, &[1, 0]), irr(2, &[0, 1]), irr(1, &[2]));
        let b1 = irr(1, &[1]);
        let cases: Vec<Vec<&CrystalGraph>> =
            vec![vec![&v1, &v2, &v1], vec![&v2, &v1, &v1, &v2], vec![&b1, &v3, &b1, &v3], vec![&v1, &v2]];
        for factors in cases {
            let sig = internal_cactus(&factors).unwrap();
            assert_eq!(sig.map(), closed_form_reversal(&factors).as_slice());
            let dom = CrystalGraph::tensor_all(&factors).unwrap();
            let rev: Vec<&CrystalGraph> = factors.iter().rev().copied().collect();
            assert!(sig.is_morphism(&dom, &CrystalGraph::tensor_all(&rev).unwrap()));
        }
    }

    #[test]
    fn bijection_json_roundtrip() {
        let s = CrystalBijection::new(vec![1, 2, 0]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[[0,1],[1,2],[2,0]]");
        assert_eq!(serde_json::from_str::<CrystalBijection>(&text).unwrap(), s);
        assert!(CrystalBijection::new(vec![0, 0]).is_err());
    }

    #[test]
    fn permute_factors_reverses() {
        let sizes = [2, 3, 4];
        let id = join_id(&[1, 2, 3], &sizes);
        assert_eq!(split_id(permute_factors(id, &sizes, &[2, 1, 0]), &[4, 3, 2]), vec![3, 2, 1]);
    }

    proptest::proptest! {
        #[test]
        fn hexagon_on_type_a1(a in 1i32..4, b in 1i32..4, c in 0i32..3) {
            let (x, y, z) = (irr(1, &[a]), irr(1, &[b]), irr(1, &[c]));
            let (nx, ny, nz) = (x.len(), y.len(), z.len());
            // σ_{A,B⊗C} ∘ (id ⊗ σ_{B,C})
            let yz = y.tensor(&z).unwrap();
            let zy = z.tensor(&y).unwrap();
            let s_bc = commutor(&y, &z).unwrap();
            let s_a_cb = commutor(&x, &zy).unwrap();
            // σ_{A⊗B,C} ∘ (σ_{A,B} ⊗ id)
            let s_ab = commutor(&x, &y).unwrap();
            let s_ba_c = commutor(&y.tensor(&x).unwrap(), &z).unwrap();
            for id in 0..nx * ny * nz {
                let (a1, bc) = (id / (ny * nz), id % (ny * nz));
                let lhs = s_a_cb.apply(a1 * yz.len() + s_bc.apply(bc));
                let (ab, c1) = (id / nz, id % nz);
                let rhs = s_ba_c.apply(s_ab.apply(ab) * nz + c1);
                proptest::prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
