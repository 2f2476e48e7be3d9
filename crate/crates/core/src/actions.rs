//! Cactus group actions on labeled points of products of crystals.
//!
//! `PermGen(w)` moves the entry (and label) in position `k` to position
//! `w(k)`; `s_ij` applies the internal cactus reversal to positions `i..j`.
//! `t_i` acts as the transposition `w_i`, and the affine generators act
//! through their images in `vC_n`. Words act with the rightmost letter first.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::commutor::{internal_cactus, CrystalBijection};
use crate::crystal::{join_id, split_id, CrystalFamily, CrystalGraph};
use crate::error::{Error, Result};
use crate::groups::{defining_relations, hom_ac_to_vc, vc_to_mc_word, Generator, GroupKind, GroupWord};
use crate::perm::{Permutation, PermutationGroup};

pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

/// A point of `B(λ_1) × .. × B(λ_n)` together with its label tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub labels: Vec<Weight>,
    pub entries: Vec<usize>,
}

impl fmt::Display for LabeledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().zip(&self.entries).map(|(l, b)| format!("{b}@{}", l.label())).collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

#[derive(Debug)]
pub struct ActionContext {
    family: CrystalFamily,
    labels: Vec<Weight>,
    max_points: usize,
    cactus_cache: RwLock<HashMap<Vec<Weight>, Arc<CrystalBijection>>>,
}

impl ActionContext {
    pub fn new(cartan: CartanData, labels: Vec<Weight>) -> Result<Self> {
        for l in &labels {
            cartan.check_weight(l)?;
            if !cartan.is_dominant(l) {
                return Err(Error::NotDominant(l.label()));
            }
        }
        if labels.is_empty() {
            return Err(Error::InvalidPoint("empty label tuple".into()));
        }
        let ctx = ActionContext {
            family: CrystalFamily::new(cartan),
            labels,
            max_points: DEFAULT_MAX_POINTS,
            cactus_cache: RwLock::new(HashMap::new()),
        };
        for l in &ctx.labels {
            let b = ctx.family.get(l)?;
            if !b.is_normal() {
                return Err(Error::NotNormal(format!("B{l}")));
            }
        }
        Ok(ctx)
    }

    pub fn with_max_points(mut self, max_points: usize) -> Self {
        self.max_points = max_points;
        self
    }

    pub fn cartan(&self) -> &CartanData {
        self.family.cartan()
    }

    pub fn labels(&self) -> &[Weight] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn factor(&self, label: &Weight) -> Result<Arc<CrystalGraph>> {
        self.family.get(label)
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    fn cactus(&self, labels: &[Weight]) -> Result<Arc<CrystalBijection>> {
        if let Some(m) = self.cactus_cache.read().unwrap().get(labels) {
            return Ok(m.clone());
        }
        let factors = labels.iter().map(|l| self.family.get(l)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&CrystalGraph> = factors.iter().map(|b| b.as_ref()).collect();
        let map = Arc::new(internal_cactus(&refs)?);
        self.cactus_cache.write().unwrap().insert(labels.to_vec(), map.clone());
        Ok(map)
    }

    fn check_point(&self, p: &LabeledPoint) -> Result<()> {
        if p.labels.len() != self.n() || p.entries.len() != self.n() {
            return Err(Error::InvalidPoint(format!("point {p} has the wrong length for n = {}", self.n())));
        }
        let mut a = p.labels.clone();
        let mut b = self.labels.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::InvalidPoint(format!("labels of {p} are not a reordering of the context labels")));
        }
        for (l, &x) in p.labels.iter().zip(&p.entries) {
            if x >= self.family.get(l)?.len() {
                return Err(Error::InvalidPoint(format!("entry {x} out of range for B{l}")));
            }
        }
        Ok(())
    }

    /// The point with the context's label order and the given entries.
    pub fn point(&self, entries: Vec<usize>) -> Result<LabeledPoint> {
        let p = LabeledPoint { labels: self.labels.clone(), entries };
        self.check_point(&p)?;
        Ok(p)
    }

    /// Every point of the disjoint union over distinct reorderings of the
    /// labels, in lexicographic order.
    pub fn all_points(&self) -> Result<Vec<LabeledPoint>> {
        let mut orderings: BTreeSet<Vec<Weight>> = BTreeSet::new();
        for w in Permutation::all(self.n()) {
            orderings.insert(w.images().iter().map(|&k| self.labels[k].clone()).collect());
        }
        let mut out = Vec::new();
        for labels in orderings {
            out.extend(self.points_with_labels(&labels)?);
        }
        Ok(out)
    }

    /// Every point of `B(λ_1) × .. × B(λ_n)` for the given label order.
    pub fn points_with_labels(&self, labels: &[Weight]) -> Result<Vec<LabeledPoint>> {
        let sizes = labels.iter().map(|l| Ok(self.family.get(l)?.len())).collect::<Result<Vec<_>>>()?;
        let total = sizes.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m)).unwrap_or(usize::MAX);
        if total > self.max_points {
            return Err(Error::CeilingExceeded { ceiling: self.max_points, needed: total });
        }
        Ok((0..total).map(|id| LabeledPoint { labels: labels.to_vec(), entries: split_id(id, &sizes) }).collect())
    }

    /// Points with the context's label order and total weight `mu`.
    pub fn points_of_weight(&self, mu: &Weight) -> Result<Vec<LabeledPoint>> {
        let mut out = Vec::new();
        for p in self.points_with_labels(&self.labels)? {
            if &self.total_weight(&p)? == mu {
                out.push(p);
            }
        }
        Ok(out)
    }

    pub fn total_weight(&self, p: &LabeledPoint) -> Result<Weight> {
        let mut acc = self.cartan().zero_weight();
        for (l, &b) in p.labels.iter().zip(&p.entries) {
            acc = &acc + self.family.get(l)?.weight(b);
        }
        Ok(acc)
    }

    fn permute(&self, w: &Permutation, p: &LabeledPoint) -> LabeledPoint {
        let mut labels = p.labels.clone();
        let mut entries = p.entries.clone();
        for k in 0..p.entries.len() {
            labels[w.image(k)] = p.labels[k].clone();
            entries[w.image(k)] = p.entries[k];
        }
        LabeledPoint { labels, entries }
    }

    fn reverse_block(&self, i: usize, j: usize, p: &LabeledPoint) -> Result<LabeledPoint> {
        let (a, b) = (i - 1, j);
        let block_labels = &p.labels[a..b];
        let sigma = self.cactus(block_labels)?;
        let sizes = block_labels.iter().map(|l| Ok(self.family.get(l)?.len())).collect::<Result<Vec<_>>>()?;
        let id = join_id(&p.entries[a..b], &sizes);
        let rev_sizes: Vec<usize> = sizes.iter().rev().copied().collect();
        let image = split_id(sigma.apply(id), &rev_sizes);
        let mut out = p.clone();
        out.entries[a..b].copy_from_slice(&image);
        out.labels[a..b].reverse();
        Ok(out)
    }

    /// Applies one generator of a group of the given kind.
    pub fn act(&self, kind: GroupKind, g: &Generator, p: &LabeledPoint) -> Result<LabeledPoint> {
        let n = self.n();
        g.check(kind, n)?;
        match g {
            Generator::Perm(w) => Ok(self.permute(w, p)),
            Generator::Cactus(i, j) => self.reverse_block(*i, *j, p),
            Generator::T(i) if kind == GroupKind::MC => Ok(self.permute(&Permutation::transposition(n, i - 1, *i), p)),
            Generator::AffineS(..) | Generator::AffineR => {
                let image = hom_ac_to_vc(&GroupWord::new(GroupKind::AC, n, vec![g.clone()])?)?;
                self.act_word(&image, p)
            }
            Generator::T(_) => Err(Error::UnsupportedKind(kind.to_string())),
        }
    }

    /// Applies a word, rightmost letter first.
    pub fn act_word(&self, word: &GroupWord, p: &LabeledPoint) -> Result<LabeledPoint> {
        if word.n() != self.n() {
            return Err(Error::InvalidPoint(format!("word for n = {} on a point of length {}", word.n(), self.n())));
        }
        let mut cur = p.clone();
        for g in word.letters().iter().rev() {
            cur = self.act(word.kind(), g, &cur)?;
        }
        Ok(cur)
    }

    /// The relation pairs checked for a kind; `MC_n` uses the `vC_n`
    /// relations with permutations rewritten as words in the `t_i`.
    pub fn relations(&self, kind: GroupKind) -> Result<Vec<(GroupWord, GroupWord)>> {
        let n = self.n();
        match kind {
            GroupKind::MC => defining_relations(GroupKind::VC, n)?
                .iter()
                .map(|(l, r)| Ok((vc_to_mc_word(l)?, vc_to_mc_word(r)?)))
                .collect(),
            _ => defining_relations(kind, n),
        }
    }

    /// Checks every defining relation on every point.
    pub fn verify_relations(&self, kind: GroupKind) -> Result<RelationReport> {
        let relations = self.relations(kind)?;
        let points = self.all_points()?;
        let failures: Vec<RelationFailure> = relations
            .par_iter()
            .map(|(lhs, rhs)| -> Result<Option<RelationFailure>> {
                for p in &points {
                    let a = self.act_word(lhs, p)?;
                    let b = self.act_word(rhs, p)?;
                    if a != b {
                        return Ok(Some(RelationFailure {
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                            point: p.clone(),
                            lhs_image: a,
                            rhs_image: b,
                        }));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(RelationReport {
            kind,
            n: self.n(),
            relations: relations.len(),
            points: points.len(),
            passed: failures.is_empty(),
            failures,
        })
    }

    /// The closure of `start` under the generators, in sorted order.
    pub fn orbit(&self, kind: GroupKind, generators: &[Generator], start: &LabeledPoint) -> Result<BTreeSet<LabeledPoint>> {
        self.check_point(start)?;
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = self.act(kind, g, &p)?;
                if seen.insert(q.clone()) {
                    if seen.len() > self.max_points {
                        return Err(Error::CeilingExceeded { ceiling: self.max_points, needed: seen.len() });
                    }
                    queue.push_back(q);
                }
            }
        }
        Ok(seen)
    }

    /// The permutation group induced by the generators on an invariant subset.
    pub fn permutation_image(&self, kind: GroupKind, generators: &[Generator], subset: &[LabeledPoint]) -> Result<PermutationGroup> {
        let maps: Vec<Box<dyn Fn(&LabeledPoint) -> Result<LabeledPoint> + '_>> =
            generators.iter().map(|g| Box::new(move |p: &LabeledPoint| self.act(kind, g, p)) as Box<dyn Fn(&_) -> _>).collect();
        image_group(subset, &maps)
    }
}

/// The subgroup of `Sym(subset)` generated by the given maps; errors if a
/// map leaves the subset.
pub fn image_group<P: Ord + Clone + fmt::Debug>(subset: &[P], maps: &[Box<dyn Fn(&P) -> Result<P> + '_>]) -> Result<PermutationGroup> {
    let index: BTreeMap<&P, usize> = subset.iter().enumerate().map(|(k, p)| (p, k)).collect();
    if index.len() != subset.len() {
        return Err(Error::InvalidPoint("subset has repeated points".into()));
    }
    let mut gens = Vec::new();
    for m in maps {
        let mut images = Vec::with_capacity(subset.len());
        for p in subset {
            let q = m(p)?;
            let k = index.get(&q).ok_or_else(|| Error::NotInvariant(format!("{p:?} maps to {q:?}")))?;
            images.push(*k);
        }
        gens.push(Permutation::from_images(images).map_err(|e| Error::NotInvariant(e.to_string()))?);
    }
    Ok(PermutationGroup::new(subset.len(), gens))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub lhs: String,
    pub rhs: String,
    pub point: LabeledPoint,
    pub lhs_image: LabeledPoint,
    pub rhs_image: LabeledPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: GroupKind,
    pub n: usize,
    pub relations: usize,
    pub points: usize,
    pub passed: bool,
    pub failures: Vec<RelationFailure>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::reversal;

    fn ctx(r: usize, labels: &[&[i32]]) -> ActionContext {
        ActionContext::new(CartanData::type_a(r).unwrap(), labels.iter().map(|l| Weight(l.to_vec())).collect()).unwrap()
    }

    fn word(kind: GroupKind, n: usize, text: &str) -> GroupWord {
        GroupWord::parse(kind, n, text).unwrap()
    }

    #[test]
    fn act_examples() {
        let c = ctx(1, &[&[1], &[1]]);
        let p = c.point(vec![0, 1]).unwrap();
        assert_eq!(c.act_word(&word(GroupKind::VC, 2, "s12"), &p).unwrap(), p);
        assert_eq!(c.act_word(&word(GroupKind::VC, 2, "w[2,1]"), &p).unwrap().entries, vec![1, 0]);

        let c = ctx(1, &[&[1], &[2], &[0]]);
        let p = c.point(vec![1, 2, 0]).unwrap();
        let q = c.act_word(&word(GroupKind::AC, 3, "r"), &p).unwrap();
        assert_eq!(q.entries, vec![0, 1, 2]);
        assert_eq!(q.labels, vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]);

        for i in 1..3 {
            let t = c.act_word(&GroupWord::parse(GroupKind::MC, 3, &format!("t{i}")).unwrap(), &p).unwrap();
            let w = Permutation::transposition(3, i - 1, i);
            let via = c.act_word(&GroupWord::new(GroupKind::VC, 3, vec![Generator::Perm(w)]).unwrap(), &p).unwrap();
            assert_eq!(t, via);
        }
    }

    #[test]
    fn act_word_examples() {
        let c = ctx(1, &[&[1], &[1], &[1]]);
        for p in c.all_points().unwrap() {
            assert_eq!(c.act_word(&GroupWord::empty(GroupKind::VC, 3), &p).unwrap(), p);
            assert_eq!(c.act_word(&word(GroupKind::VC, 3, "s12 s12"), &p).unwrap(), p);
            assert_eq!(c.act_word(&word(GroupKind::AC, 3, "r r r"), &p).unwrap(), p);
        }
    }

    #[test]
    fn words_act_right_to_left() {
        let c = ctx(1, &[&[1], &[2], &[0]]);
        let p = c.point(vec![1, 2, 0]).unwrap();
        let a = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let b = Permutation::from_one_line(&[1, 3, 2]).unwrap();
        let two = GroupWord::new(GroupKind::VC, 3, vec![Generator::Perm(a.clone()), Generator::Perm(b.clone())]).unwrap();
        let one = GroupWord::new(GroupKind::VC, 3, vec![Generator::Perm(a.compose(&b))]).unwrap();
        assert_eq!(c.act_word(&two, &p).unwrap(), c.act_word(&one, &p).unwrap());
    }

    #[test]
    fn verify_examples() {
        let c = ctx(1, &[&[1], &[1], &[1]]);
        let rep = c.verify_relations(GroupKind::VC).unwrap();
        assert!(rep.passed, "{:?}", rep.failures.first());
        assert_eq!(rep.points, 8);
        assert!(c.verify_relations(GroupKind::AC).unwrap().passed);
        assert!(c.verify_relations(GroupKind::MC).unwrap().passed);

        let c = ctx(2, &[&[1, 0], &[1, 0], &[0, 1]]);
        let rep = c.verify_relations(GroupKind::VC).unwrap();
        assert!(rep.passed, "{:?}", rep.failures.first());
        assert_eq!(rep.points, 81);
    }

    #[test]
    fn cactus_generators_differ_from_reversals() {
        let c = ctx(1, &[&[1], &[1], &[1]]);
        let s = word(GroupKind::VC, 3, "s13");
        let w = GroupWord::new(GroupKind::VC, 3, vec![Generator::Perm(reversal(3, 1, 3))]).unwrap();
        let differ = c.all_points().unwrap().iter().any(|p| c.act_word(&s, p).unwrap() != c.act_word(&w, p).unwrap());
        assert!(differ);
    }

    #[test]
    fn orbit_examples() {
        let c = ctx(1, &[&[1], &[1]]);
        let p = c.point(vec![0, 1]).unwrap();
        assert_eq!(c.orbit(GroupKind::VC, &[], &p).unwrap().len(), 1);
        let w12 = Generator::Perm(Permutation::from_one_line(&[2, 1]).unwrap());
        let orb = c.orbit(GroupKind::VC, &[w12], &p).unwrap();
        assert_eq!(orb.iter().map(|q| q.entries.clone()).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn orbit_matches_permutation_closure() {
        let c = ctx(1, &[&[1], &[1], &[1]]);
        let gens: Vec<Generator> = vec![
            Generator::Cactus(1, 2),
            Generator::Cactus(2, 3),
            Generator::Cactus(1, 3),
            Generator::Perm(Permutation::from_one_line(&[2, 1, 3]).unwrap()),
            Generator::Perm(Permutation::from_one_line(&[1, 3, 2]).unwrap()),
        ];
        let subset = c.points_of_weight(&Weight(vec![1])).unwrap();
        assert_eq!(subset.len(), 3);
        let start = subset[0].clone();
        let orbit = c.orbit(GroupKind::VC, &gens, &start).unwrap();
        // Oracle: BFS closure of the induced permutations, applied to start.
        let group = c.permutation_image(GroupKind::VC, &gens, &subset).unwrap();
        let elements = crate::perm::closure(subset.len(), group.generators(), 10_000).unwrap();
        let reached: BTreeSet<LabeledPoint> = elements.iter().map(|g| subset[g.image(0)].clone()).collect();
        assert_eq!(orbit, reached);
    }

    #[test]
    fn image_examples() {
        let c = ctx(1, &[&[1], &[1]]);
        let all = c.all_points().unwrap();
        assert_eq!(c.permutation_image(GroupKind::VC, &[], &all).unwrap().order(), 1);

        let n = 3;
        let c = ActionContext::new(CartanData::type_a(n - 1).unwrap(), vec![Weight(vec![1, 0]); n]).unwrap();
        let subset = c.points_of_weight(&Weight(vec![0, 0])).unwrap();
        assert_eq!(subset.len(), 6);
        let gens: Vec<Generator> = (0..n - 1).map(|i| Generator::Perm(Permutation::transposition(n, i, i + 1))).collect();
        assert_eq!(c.permutation_image(GroupKind::VC, &gens, &subset).unwrap().order(), 6);

        let not_closed = vec![subset[0].clone()];
        assert!(matches!(c.permutation_image(GroupKind::VC, &gens, &not_closed), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn ceiling_is_enforced() {
        let c = ctx(1, &[&[1], &[1], &[1]]).with_max_points(4);
        assert!(matches!(c.all_points(), Err(Error::CeilingExceeded { .. })));
    }

    #[test]
    fn generators_are_bijections_and_commute_with_crystal_operators() {
        let c = ctx(2, &[&[1, 0], &[0, 1], &[1, 0]]);
        let labels = c.labels().to_vec();
        let factors: Vec<Arc<CrystalGraph>> = labels.iter().map(|l| c.factor(l).unwrap()).collect();
        let refs: Vec<&CrystalGraph> = factors.iter().map(|b| b.as_ref()).collect();
        let product = CrystalGraph::tensor_all(&refs).unwrap();
        let sizes: Vec<usize> = refs.iter().map(|b| b.len()).collect();
        let points = c.points_with_labels(&labels).unwrap();
        for (i, j) in [(1, 2), (2, 3), (1, 3)] {
            let g = Generator::Cactus(i, j);
            let images: BTreeSet<LabeledPoint> = points.iter().map(|p| c.act(GroupKind::VC, &g, p).unwrap()).collect();
            assert_eq!(images.len(), points.len());
            if (i, j) != (1, 3) {
                continue;
            }
            // s_13 maps B1⊗B2⊗B3 to B3⊗B2⊗B1 as a crystal morphism.
            let rev: Vec<&CrystalGraph> = refs.iter().rev().copied().collect();
            let target = CrystalGraph::tensor_all(&rev).unwrap();
            let rev_sizes: Vec<usize> = sizes.iter().rev().copied().collect();
            for p in &points {
                let id = join_id(&p.entries, &sizes);
                let q = c.act(GroupKind::VC, &g, p).unwrap();
                let qid = join_id(&q.entries, &rev_sizes);
                for k in 0..2 {
                    if let Some(fid) = product.f(k, id) {
                        let fp = LabeledPoint { labels: labels.clone(), entries: split_id(fid, &sizes) };
                        let fq = c.act(GroupKind::VC, &g, &fp).unwrap();
                        assert_eq!(target.f(k, qid), Some(join_id(&fq.entries, &rev_sizes)));
                    }
                }
                assert_eq!(c.total_weight(p).unwrap(), c.total_weight(&q).unwrap());
            }
        }
    }
}
