//! Permutations of `{0, .., n-1}` and permutation groups given by generators.
//!
//! Permutations are stored in functional form: `p.image(a)` is where `a` goes.
//! Text and JSON use 1-based one-line notation, so `[2,3,1]` sends 1 to 2.
//! Products are ordinary composition: `a.compose(&b)` applies `b` first.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &a in &images {
            if a >= n || seen[a] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[a] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{one_line:?}: one-line entries are 1-based")));
        }
        Self::from_images(one_line.iter().map(|&a| a - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&a| a + 1).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, a: usize) -> usize {
        self.0[a]
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation(other.0.iter().map(|&a| self.0[a]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            inv[b] = a;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(a, &b)| a == b)
    }

    /// The involution reversing the 0-based interval `[i, j]`.
    pub fn interval_reversal(n: usize, i: usize, j: usize) -> Permutation {
        assert!(i <= j && j < n);
        Permutation((0..n).map(|a| if a >= i && a <= j { i + j - a } else { a }).collect())
    }

    /// The transposition of `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Permutation(v)
    }

    /// The long cycle `a -> a + 1 mod n`.
    pub fn long_cycle(n: usize) -> Permutation {
        Permutation((0..n).map(|a| (a + 1) % n).collect())
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                a = self.0[a];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// All permutations of degree `n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation(current.clone()));
                return;
            }
            for a in 0..n {
                if !used[a] {
                    used[a] = true;
                    current.push(a);
                    rec(n, current, used, out);
                    current.pop();
                    used[a] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    /// A reduced word in adjacent transpositions: returns 0-based `i` for each
    /// factor `(i, i+1)`, with `self` equal to the left-to-right product.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Bubble sort the one-line notation; each swap at positions (i, i+1)
        // multiplies on the right by that transposition.
        let mut v = self.0.clone();
        let mut swaps = Vec::new();
        let n = v.len();
        loop {
            let mut changed = false;
            for i in 0..n.saturating_sub(1) {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    swaps.push(i);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        swaps.reverse();
        swaps
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// One level of a stabilizer chain: a base point and a transversal of its orbit.
#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// `transversal[a]` maps `base` to `a` for every `a` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

/// A permutation group with a deterministic Schreier–Sims stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        let generators: Vec<Permutation> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let mut group = PermutationGroup {
            degree,
            generators: generators.clone(),
            strong: generators,
            levels: Vec::new(),
        };
        group.build();
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn fixes_base_prefix(&self, g: &Permutation, depth: usize) -> bool {
        self.levels[..depth].iter().all(|l| g.image(l.base) == l.base)
    }

    fn push_base_point_for(&mut self, g: &Permutation) {
        let base = (0..self.degree).find(|&a| g.image(a) != a).expect("non-identity permutation moves a point");
        self.levels.push(Level { base, transversal: vec![None; self.degree] });
    }

    /// Recomputes the orbit of the base point at `depth` under the strong
    /// generators fixing all earlier base points.
    fn rebuild_level(&mut self, depth: usize) {
        let gens: Vec<Permutation> =
            self.strong.iter().filter(|g| self.fixes_base_prefix(g, depth)).cloned().collect();
        let base = self.levels[depth].base;
        let mut transversal = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        let mut queue = VecDeque::from([base]);
        while let Some(a) = queue.pop_front() {
            let t = transversal[a].clone().expect("orbit point has a representative");
            for g in &gens {
                let b = g.image(a);
                if transversal[b].is_none() {
                    transversal[b] = Some(g.compose(&t));
                    queue.push_back(b);
                }
            }
        }
        self.levels[depth].transversal = transversal;
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level it stopped at.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (depth, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.base);
            match &level.transversal[b] {
                Some(t) => g = t.inverse().compose(&g),
                None => return (g, depth),
            }
        }
        (g, self.levels.len())
    }

    fn build(&mut self) {
        for g in self.strong.clone() {
            if self.fixes_base_prefix(&g, self.levels.len()) {
                self.push_base_point_for(&g);
            }
        }
        for depth in 0..self.levels.len() {
            self.rebuild_level(depth);
        }
        let mut depth = self.levels.len();
        'outer: while depth > 0 {
            let level = depth - 1;
            let gens: Vec<Permutation> =
                self.strong.iter().filter(|g| self.fixes_base_prefix(g, level)).cloned().collect();
            let transversal = self.levels[level].transversal.clone();
            for t in transversal.iter().flatten() {
                for s in &gens {
                    let st = s.compose(t);
                    let b = st.image(self.levels[level].base);
                    let tb = transversal[b].as_ref().expect("orbit closed under generators");
                    let schreier = tb.inverse().compose(&st);
                    let (residue, stop) = self.sift(schreier, level + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        self.push_base_point_for(&residue);
                    }
                    self.strong.push(residue);
                    for d in level + 1..=stop {
                        self.rebuild_level(d);
                    }
                    depth = stop + 1;
                    continue 'outer;
                }
            }
            depth -= 1;
        }
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.transversal.iter().filter(|t| t.is_some()).count() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    /// Whether the group contains the alternating group on all `degree` points.
    pub fn contains_alternating(&self) -> bool {
        if self.degree < 3 {
            return true;
        }
        // The 3-cycles (0 1 k) generate A_n.
        (2..self.degree).all(|k| {
            let mut v: Vec<usize> = (0..self.degree).collect();
            v[0] = 1;
            v[1] = k;
            v[k] = 0;
            self.contains(&Permutation(v))
        })
    }
}

/// Breadth-first closure of the group generated by `generators`, as a set of elements.
/// Returns `None` if the group exceeds `limit` elements.
pub fn closure(degree: usize, generators: &[Permutation], limit: usize) -> Option<BTreeSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}
