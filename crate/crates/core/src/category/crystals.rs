//! Category data of normal crystals: `CL(λ) = B(λ)`, multiplicity sets of
//! highest elements, component embeddings and crystal commutors.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{CategoryData, Colour, LeftKey, PhiKey, RightKey};
use crate::cartan::{CartanData, Weight};
use crate::commutor::commutor;
use crate::crystal::{join_id, split_id, CrystalFamily, CrystalGraph};
use crate::error::{Error, Result};

/// Colours are stored up to this many tensor factors.
const MAX_LEVEL: usize = 4;

/// Decomposition of `B(x) ⊗ B(y)`.
struct PairInfo {
    /// Highest elements of the product, grouped by weight.
    hw: BTreeMap<Colour, Vec<usize>>,
    /// For each product element: `(μ, l, c)`; only for pairs carrying `phi`.
    embed: Option<Vec<PhiKey>>,
}

/// Each colour's level: the least number of factors from `base` whose
/// product contains it, capped at `max_level`. Returned in order of
/// discovery, base first.
pub fn colour_levels(cartan: &CartanData, base: &[Weight], max_level: usize) -> Result<Vec<(Weight, usize)>> {
    let family = CrystalFamily::new(cartan.clone());
    let mut levels: Vec<(Weight, usize)> = Vec::new();
    for w in base {
        check_colour(cartan, w)?;
        if !levels.iter().any(|(v, _)| v == w) {
            levels.push((w.clone(), 1));
        }
    }
    for k in 2..=max_level {
        let snapshot = levels.clone();
        for (x, lx) in &snapshot {
            for (y, ly) in &snapshot {
                if lx + ly != k {
                    continue;
                }
                let t = family.get(x)?.tensor(&*family.get(y)?)?;
                for comp in t.components()? {
                    let w = t.weight(comp.highest).clone();
                    if !levels.iter().any(|(v, _)| *v == w) {
                        levels.push((w, k));
                    }
                }
            }
        }
    }
    Ok(levels)
}

fn check_colour(cartan: &CartanData, w: &Weight) -> Result<()> {
    cartan.check_weight(w)?;
    if !cartan.is_dominant(w) {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok(())
}

/// Category data of the crystals `B(λ)` for the given dominant weights.
/// Colours produced by tensoring are added with their level; multiplicity
/// sets are stored for pairs whose levels sum to at most 4, `phi` and
/// commutors for level sums up to 3, associators for level sums up to 4.
pub fn from_crystals(cartan: &CartanData, colours: &[Weight]) -> Result<CategoryData> {
    if colours.is_empty() {
        return Err(Error::InvalidCategory("no colours given".into()));
    }
    let levels = colour_levels(cartan, colours, MAX_LEVEL)?;
    let family = CrystalFamily::new(cartan.clone());
    let weights: Vec<Weight> = levels.iter().map(|(w, _)| w.clone()).collect();
    let lv: Vec<usize> = levels.iter().map(|&(_, l)| l).collect();
    let index: HashMap<Weight, Colour> = weights.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let crystals: Vec<_> = weights.iter().map(|w| family.get(w)).collect::<Result<_>>()?;
    let names: Vec<String> = weights.iter().map(|w| w.label()).collect();
    let base: Vec<Colour> = colours.iter().map(|w| index[w]).collect::<Vec<_>>();
    let mut base_dedup = Vec::new();
    for c in base {
        if !base_dedup.contains(&c) {
            base_dedup.push(c);
        }
    }
    let sets: Vec<Vec<String>> = crystals.iter().map(|b| (0..b.len()).map(|k| format!("b{k}")).collect()).collect();
    let n = weights.len();

    let pairs: Vec<(Colour, Colour)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| lv[x] + lv[y] <= MAX_LEVEL).collect();
    let infos: Vec<((Colour, Colour), PairInfo)> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let info = pair_info(&crystals[x], &crystals[y], &index, &crystals, lv[x] + lv[y] <= 3)?;
            Ok(((x, y), info))
        })
        .collect::<Result<_>>()?;
    let infos: HashMap<(Colour, Colour), PairInfo> = infos.into_iter().collect();

    let hw_name = |x: Colour, y: Colour, h: usize| {
        let p = split_id(h, &[crystals[x].len(), crystals[y].len()]);
        format!("b{}⊗b{}", p[0], p[1])
    };
    let mut mult = BTreeMap::new();
    for &(x, y) in &pairs {
        let table: BTreeMap<Colour, Vec<String>> = infos[&(x, y)].hw.iter().map(|(&mu, hs)| (mu, hs.iter().map(|&h| hw_name(x, y, h)).collect())).collect();
        mult.insert((x, y), table);
    }

    let mut phi = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    for &(x, y) in &pairs {
        let Some(embed) = &infos[&(x, y)].embed else { continue };
        let sizes = [crystals[x].len(), crystals[y].len()];
        let m: BTreeMap<PhiKey, (usize, usize)> = embed
            .iter()
            .enumerate()
            .map(|(t, &k)| {
                let p = split_id(t, &sizes);
                (k, (p[0], p[1]))
            })
            .collect();
        phi.insert((x, y), m);
    }
    let sigma_pairs: Vec<(Colour, Colour)> = pairs.iter().copied().filter(|&(x, y)| lv[x] + lv[y] <= 3).collect();
    let sigmas: Vec<_> = sigma_pairs
        .par_iter()
        .map(|&(x, y)| {
            let s = commutor(&crystals[x], &crystals[y])?;
            let (nx, ny) = (crystals[x].len(), crystals[y].len());
            let m: BTreeMap<(usize, usize), (usize, usize)> = (0..nx * ny)
                .map(|t| {
                    let p = split_id(t, &[nx, ny]);
                    let q = split_id(s.apply(t), &[ny, nx]);
                    ((p[0], p[1]), (q[0], q[1]))
                })
                .collect();
            Ok(((x, y), m))
        })
        .collect::<Result<_>>()?;
    sigma.extend(sigmas);

    let triples: Vec<(Colour, Colour, Colour)> = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .filter(|&(x, y, z)| lv[x] + lv[y] + lv[z] <= MAX_LEVEL)
        .collect();
    let assoc: BTreeMap<_, _> = triples
        .par_iter()
        .map(|&(x, y, z)| Ok(((x, y, z), associator(x, y, z, &infos, &crystals)?)))
        .collect::<Result<_>>()?;

    Ok(CategoryData { colours: names, base: base_dedup, sets, mult, phi, sigma, assoc })
}

fn pair_info(bx: &CrystalGraph, by: &CrystalGraph, index: &HashMap<Weight, Colour>, crystals: &[std::sync::Arc<CrystalGraph>], with_embed: bool) -> Result<PairInfo> {
    let t = bx.tensor(by)?;
    let comps = t.components()?;
    let mut hw: BTreeMap<Colour, Vec<usize>> = BTreeMap::new();
    for comp in &comps {
        let w = t.weight(comp.highest);
        let mu = *index.get(w).ok_or_else(|| Error::InvalidCategory(format!("weight {w} outside the colour set")))?;
        hw.entry(mu).or_default().push(comp.highest);
    }
    let embed = if with_embed {
        let mut out = vec![PhiKey { mu: 0, l: 0, c: 0 }; t.len()];
        for (&mu, hs) in &hw {
            for (l, &h) in hs.iter().enumerate() {
                let m = crystals[mu]
                    .match_component(0, &t, h)
                    .ok_or_else(|| Error::NotNormal(format!("component at {h} does not match B({})", t.weight(h))))?;
                for (tb, c) in m {
                    out[tb] = PhiKey { mu, l, c };
                }
            }
        }
        Some(out)
    } else {
        None
    };
    Ok(PairInfo { hw, embed })
}

/// `(l, l')` is sent to the highest element `(ι_l(g), b3)` of the triple
/// product, which is then decomposed from the right.
fn associator(
    x: Colour,
    y: Colour,
    z: Colour,
    infos: &HashMap<(Colour, Colour), PairInfo>,
    crystals: &[std::sync::Arc<CrystalGraph>],
) -> Result<BTreeMap<LeftKey, RightKey>> {
    let size = |c: Colour| crystals[c].len();
    let xy = &infos[&(x, y)];
    let yz = &infos[&(y, z)];
    let xy_embed = xy.embed.as_ref().expect("pairs below a triple carry phi");
    let yz_embed = yz.embed.as_ref().expect("pairs below a triple carry phi");
    // Inverse of the embedding of (x, y): (γ, l, g) -> product element.
    let mut xy_of: HashMap<PhiKey, usize> = HashMap::new();
    for (t, &k) in xy_embed.iter().enumerate() {
        xy_of.insert(k, t);
    }
    let mut out = BTreeMap::new();
    for (&gamma, ls) in &xy.hw {
        for l in 0..ls.len() {
            for (&rho, hs) in &infos[&(gamma, z)].hw {
                for (l2, &h) in hs.iter().enumerate() {
                    let gb = split_id(h, &[size(gamma), size(z)]);
                    let b12 = split_id(xy_of[&PhiKey { mu: gamma, l, c: gb[0] }], &[size(x), size(y)]);
                    let (b1, b2, b3) = (b12[0], b12[1], gb[1]);
                    let k = yz_embed[join_id(&[b2, b3], &[size(y), size(z)])];
                    let top = join_id(&[b1, k.c], &[size(x), size(k.mu)]);
                    let m = infos[&(x, k.mu)].hw.get(&rho).and_then(|v| v.iter().position(|&q| q == top)).ok_or_else(|| {
                        Error::InvalidCategory("rebracketed element is not highest".into())
                    })?;
                    out.insert(LeftKey { gamma, l, rho, l2 }, RightKey { rho, tau: k.mu, m, m2: k.l });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(r: usize) -> CartanData {
        CartanData::type_a(r).unwrap()
    }

    fn w(v: &[i32]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn a1_single_colour() {
        let d = from_crystals(&a(1), &[w(&[1])]).unwrap();
        let one = d.colour_index("1").unwrap();
        let two = d.colour_index("2").unwrap();
        let zero = d.colour_index("0").unwrap();
        assert_eq!(d.mult_set(one, one, two).len(), 1);
        assert_eq!(d.mult_set(one, one, zero).len(), 1);
        // The trivial component is spanned by b1 ⊗ b0.
        let phi = d.phi(one, one).unwrap();
        assert_eq!(phi[&PhiKey { mu: zero, l: 0, c: 0 }], (1, 0));
        assert_eq!(d.mult_set(one, one, zero)[0], "b1⊗b0");
    }

    #[test]
    fn a2_dual_pair() {
        let d = from_crystals(&a(2), &[w(&[1, 0]), w(&[0, 1])]).unwrap();
        let x = d.colour_index("1,0").unwrap();
        let y = d.colour_index("0,1").unwrap();
        let zero = d.colour_index("0,0").unwrap();
        assert_eq!(d.mult_set(x, y, zero).len(), 1);
        assert_eq!(d.mult(x, y).unwrap().values().map(|v| v.len()).sum::<usize>(), 2);
    }

    #[test]
    fn levels_of_a1() {
        let lv = colour_levels(&a(1), &[w(&[1])], 3).unwrap();
        assert_eq!(lv, vec![(w(&[1]), 1), (w(&[2]), 2), (w(&[0]), 2), (w(&[3]), 3)]);
    }

    #[test]
    fn rejects_non_dominant() {
        assert!(matches!(from_crystals(&a(1), &[w(&[-1])]), Err(Error::NotDominant(_))));
        let b2 = CartanData::explicit(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert!(from_crystals(&b2, &[w(&[1, 0])]).is_err());
    }
}
