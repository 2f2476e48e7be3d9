//! Cactus groups as words: `C_n`, the virtual cactus group `vC_n`, the
//! mirabolic group `MC_n`, the extended affine group `ÃC_n`, and `C_{n+1}`
//! written in the generators `t_0, .., t_{n-1}`.
//!
//! Indices are 1-based, as in the text format. A word `g1 g2 .. gk` denotes
//! the product `g1 ∘ g2 ∘ .. ∘ gk`; acting on a point, `gk` is applied first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "C")]
    C,
    #[serde(rename = "vC")]
    VC,
    #[serde(rename = "MC")]
    MC,
    #[serde(rename = "AC")]
    AC,
    /// `C_{n+1}` on the points `0..n`, in the generators `t_0..t_{n-1}`.
    #[serde(rename = "CT")]
    CT,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::C => "C",
            GroupKind::VC => "vC",
            GroupKind::MC => "MC",
            GroupKind::AC => "AC",
            GroupKind::CT => "CT",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(GroupKind::C),
            "vC" | "vc" | "VC" => Ok(GroupKind::VC),
            "MC" | "mc" => Ok(GroupKind::MC),
            "AC" | "ac" | "AC~" => Ok(GroupKind::AC),
            "CT" | "ct" => Ok(GroupKind::CT),
            other => Err(Error::WordParse(format!("unknown group kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `s_ij`, `1 ≤ i < j ≤ n`.
    Cactus(usize, usize),
    /// A permutation in `S_n ⊂ vC_n`.
    Perm(Permutation),
    /// `t_i`: `1 ≤ i ≤ n-1` in `MC_n`, `0 ≤ i ≤ n-1` in `C_{n+1}`.
    T(usize),
    /// `s_ij` on the cyclic interval from `i` to `j`, `i ≠ j`.
    AffineS(usize, usize),
    AffineR,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cactus(i, j) | Generator::AffineS(i, j) => {
                if *i < 10 && *j < 10 {
                    write!(f, "s{i}{j}")
                } else {
                    write!(f, "s{i}_{j}")
                }
            }
            Generator::Perm(w) => write!(f, "w{w}"),
            Generator::T(i) => write!(f, "t{i}"),
            Generator::AffineR => f.write_str("r"),
        }
    }
}

impl Generator {
    /// Checks that the generator is legal for the kind and `n`.
    pub fn check(&self, kind: GroupKind, n: usize) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidGenerator(format!("{self} in {kind}_{n}: {why}")));
        match (self, kind) {
            (Generator::Cactus(i, j), GroupKind::C | GroupKind::VC | GroupKind::MC) => {
                if !(1 <= *i && i < j && *j <= n) {
                    return bad("need 1 ≤ i < j ≤ n".into());
                }
            }
            (Generator::Perm(w), GroupKind::VC) => {
                if w.degree() != n {
                    return bad(format!("permutation has degree {}", w.degree()));
                }
            }
            (Generator::T(i), GroupKind::MC) => {
                if !(1 <= *i && *i < n) {
                    return bad("need 1 ≤ i ≤ n-1".into());
                }
            }
            (Generator::T(i), GroupKind::CT) => {
                if *i >= n {
                    return bad("need 0 ≤ i ≤ n-1".into());
                }
            }
            (Generator::AffineS(i, j), GroupKind::AC) => {
                if !(1 <= *i && *i <= n && 1 <= *j && *j <= n && i != j) {
                    return bad("need 1 ≤ i, j ≤ n with i ≠ j".into());
                }
            }
            (Generator::AffineR, GroupKind::AC) => {}
            _ => return bad("not a generator of this group".into()),
        }
        Ok(())
    }

    fn parse(token: &str, kind: GroupKind) -> Result<Self> {
        let err = || Error::WordParse(format!("bad token {token:?}"));
        if token == "r" {
            return Ok(Generator::AffineR);
        }
        if let Some(rest) = token.strip_prefix('w') {
            let inner = rest.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(err)?;
            let one_line: Vec<usize> =
                inner.split(',').map(|x| x.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| err())?;
            return Ok(Generator::Perm(Permutation::from_one_line(&one_line)?));
        }
        if let Some(rest) = token.strip_prefix('t') {
            return rest.parse().map(Generator::T).map_err(|_| err());
        }
        if let Some(rest) = token.strip_prefix('s') {
            let rest = rest.trim_start_matches('{');
            let (a, b) = if let Some((a, b)) = rest.split_once('_') {
                (a.trim_end_matches('}'), b.trim_start_matches('{').trim_end_matches('}'))
            } else if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) {
                rest.split_at(1)
            } else {
                return Err(err());
            };
            let i: usize = a.parse().map_err(|_| err())?;
            let j: usize = b.parse().map_err(|_| err())?;
            return Ok(if kind == GroupKind::AC { Generator::AffineS(i, j) } else { Generator::Cactus(i, j) });
        }
        Err(err())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    kind: GroupKind,
    n: usize,
    letters: Vec<Generator>,
}

impl GroupWord {
    pub fn new(kind: GroupKind, n: usize, letters: Vec<Generator>) -> Result<Self> {
        for g in &letters {
            g.check(kind, n)?;
        }
        Ok(GroupWord { kind, n, letters })
    }

    pub fn empty(kind: GroupKind, n: usize) -> Self {
        GroupWord { kind, n, letters: Vec::new() }
    }

    /// Parses whitespace-separated tokens `s{i}_{j}` (or `s13`), `t{i}`, `r`, `w[..]`.
    pub fn parse(kind: GroupKind, n: usize, text: &str) -> Result<Self> {
        let letters = text.split_whitespace().map(|t| Generator::parse(t, kind)).collect::<Result<Vec<_>>>()?;
        Self::new(kind, n, letters)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        assert_eq!((self.kind, self.n), (other.kind, other.n), "words from different groups");
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GroupWord { kind: self.kind, n: self.n, letters }
    }

    fn of(kind: GroupKind, n: usize, letters: Vec<Generator>) -> GroupWord {
        GroupWord { kind, n, letters }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    kind: GroupKind,
    n: usize,
    word: String,
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordJson { kind: self.kind, n: self.n, word: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WordJson::deserialize(d)?;
        GroupWord::parse(w.kind, w.n, &w.word).map_err(serde::de::Error::custom)
    }
}

/// Whether `w(i+k) = w(i)+k` for `k = 1..j-i` (1-based).
pub fn is_translation(w: &Permutation, i: usize, j: usize) -> bool {
    (1..=j - i).all(|k| w.image(i - 1 + k) == w.image(i - 1) + k)
}

/// The cabling of `u ∈ S_{n-(j-i)}` to a translation on `[i, j]` in `S_n`.
pub fn cabling(u: &Permutation, i: usize, j: usize, n: usize) -> Result<Permutation> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidPermutation(format!("cabling needs 1 ≤ i < j ≤ n, got i={i} j={j} n={n}")));
    }
    let q = j - i;
    if u.degree() != n - q {
        return Err(Error::InvalidPermutation(format!("cabling on [{i},{j}] in S_{n} needs u of degree {}", n - q)));
    }
    let u1 = |a: usize| u.image(a - 1) + 1;
    let p = u1(i);
    let lift = |v: usize| if v < p { v } else { v + q };
    let one_line: Vec<usize> = (1..=n)
        .map(|a| {
            if a < i {
                lift(u1(a))
            } else if a <= j {
                p + a - i
            } else {
                lift(u1(a - q))
            }
        })
        .collect();
    let w = Permutation::from_one_line(&one_line)?;
    if !is_translation(&w, i, j) {
        return Err(Error::InvalidPermutation(format!("cabling produced {w}, not a translation on [{i},{j}]")));
    }
    Ok(w)
}

/// All translations on `[i, j]` in `S_n`, enumerated by cabling.
pub fn translations(i: usize, j: usize, n: usize) -> Result<Vec<Permutation>> {
    Permutation::all(n - (j - i)).iter().map(|u| cabling(u, i, j, n)).collect()
}

/// `w_ij`, the reversal of `[i, j]` (1-based).
pub fn reversal(n: usize, i: usize, j: usize) -> Permutation {
    Permutation::interval_reversal(n, i - 1, j - 1)
}

fn cactus_relations(kind: GroupKind, n: usize) -> Vec<(GroupWord, GroupWord)> {
    let s = |i, j| Generator::Cactus(i, j);
    let w = |l: Vec<Generator>| GroupWord::of(kind, n, l);
    let intervals: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for &(i, j) in &intervals {
        out.push((w(vec![s(i, j), s(i, j)]), w(vec![])));
    }
    for &(i, j) in &intervals {
        for &(k, l) in &intervals {
            if (i, j) < (k, l) && (j < k || l < i) {
                out.push((w(vec![s(i, j), s(k, l)]), w(vec![s(k, l), s(i, j)])));
            }
        }
    }
    for &(i, j) in &intervals {
        for &(k, l) in &intervals {
            if i <= k && l <= j && (k, l) != (i, j) {
                out.push((w(vec![s(i, j), s(k, l), s(i, j)]), w(vec![s(i + j - l, i + j - k)])));
            }
        }
    }
    out
}

/// A cyclic interval of `Z/n`, by 1-based start and length `2..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cyclic {
    start: usize,
    len: usize,
}

impl Cyclic {
    fn end(&self, n: usize) -> usize {
        (self.start - 1 + self.len - 1) % n + 1
    }

    fn offset_of(&self, point: usize, n: usize) -> usize {
        (point + n - self.start) % n
    }

    fn contains_interval(&self, other: &Cyclic, n: usize) -> bool {
        other.len <= self.len && self.offset_of(other.start, n) + other.len <= self.len
    }

    fn disjoint(&self, other: &Cyclic, n: usize) -> bool {
        (0..other.len).all(|k| self.offset_of((other.start - 1 + k) % n + 1, n) >= self.len)
    }

    fn generator(&self, n: usize) -> Generator {
        Generator::AffineS(self.start, self.end(n))
    }
}

fn affine_relations(n: usize) -> Vec<(GroupWord, GroupWord)> {
    let w = |l: Vec<Generator>| GroupWord::of(GroupKind::AC, n, l);
    let intervals: Vec<Cyclic> = (2..=n).flat_map(|len| (1..=n).map(move |start| Cyclic { start, len })).collect();
    let wrap = |x: isize| -> usize { (x - 1).rem_euclid(n as isize) as usize + 1 };
    let mut out = Vec::new();
    for a in &intervals {
        out.push((w(vec![a.generator(n), a.generator(n)]), w(vec![])));
    }
    for (x, a) in intervals.iter().enumerate() {
        for b in &intervals[x + 1..] {
            if a.disjoint(b, n) {
                out.push((w(vec![a.generator(n), b.generator(n)]), w(vec![b.generator(n), a.generator(n)])));
            }
        }
    }
    for a in &intervals {
        for b in &intervals {
            if a != b && a.contains_interval(b, n) {
                let (i, j) = (a.start as isize, a.end(n) as isize);
                let (k, l) = (b.start as isize, b.end(n) as isize);
                let image = Generator::AffineS(wrap(i + j - l), wrap(i + j - k));
                out.push((w(vec![a.generator(n), b.generator(n), a.generator(n)]), w(vec![image])));
            }
        }
    }
    out.push((w(vec![Generator::AffineR; n]), w(vec![])));
    for a in &intervals {
        let (i, j) = (a.start, a.end(n));
        let mut lhs = vec![Generator::AffineR, a.generator(n)];
        lhs.extend(std::iter::repeat(Generator::AffineR).take(n - 1));
        out.push((w(lhs), w(vec![Generator::AffineS(i % n + 1, j % n + 1)])));
    }
    out
}

/// The defining relations of the group, as pairs of words that must be equal.
pub fn defining_relations(kind: GroupKind, n: usize) -> Result<Vec<(GroupWord, GroupWord)>> {
    if n < 2 {
        return Err(Error::InvalidGenerator(format!("relations need n ≥ 2, got {n}")));
    }
    match kind {
        GroupKind::C => Ok(cactus_relations(kind, n)),
        GroupKind::VC => {
            let mut out = cactus_relations(kind, n);
            let w = |l: Vec<Generator>| GroupWord::of(kind, n, l);
            let all = Permutation::all(n);
            for a in &all {
                for b in &all {
                    out.push((w(vec![Generator::Perm(a.clone()), Generator::Perm(b.clone())]), w(vec![Generator::Perm(a.compose(b))])));
                }
            }
            out.push((w(vec![Generator::Perm(Permutation::identity(n))]), w(vec![])));
            for i in 1..=n {
                for j in i + 1..=n {
                    for t in translations(i, j, n)? {
                        let (ti, tj) = (t.image(i - 1) + 1, t.image(j - 1) + 1);
                        out.push((
                            w(vec![Generator::Perm(t.clone()), Generator::Cactus(i, j), Generator::Perm(t.inverse())]),
                            w(vec![Generator::Cactus(ti, tj)]),
                        ));
                    }
                }
            }
            Ok(out)
        }
        GroupKind::AC => Ok(affine_relations(n)),
        GroupKind::MC | GroupKind::CT => Err(Error::UnsupportedKind(kind.to_string())),
    }
}

/// `C_n -> vC_n`, generator-wise.
pub fn hom_c_to_vc(word: &GroupWord) -> Result<GroupWord> {
    if word.kind != GroupKind::C {
        return Err(Error::UnsupportedKind(word.kind.to_string()));
    }
    Ok(GroupWord::of(GroupKind::VC, word.n, word.letters.clone()))
}

/// `MC_n -> vC_n`: `t_i ↦ w_i`, `s_ij ↦ s_ij`.
pub fn hom_mc_to_vc(word: &GroupWord) -> Result<GroupWord> {
    if word.kind != GroupKind::MC {
        return Err(Error::UnsupportedKind(word.kind.to_string()));
    }
    let n = word.n;
    let letters = word
        .letters
        .iter()
        .map(|g| match g {
            Generator::T(i) => Generator::Perm(Permutation::transposition(n, i - 1, *i)),
            other => other.clone(),
        })
        .collect();
    Ok(GroupWord::of(GroupKind::VC, n, letters))
}

/// `ÃC_n -> vC_n`: `r ↦ c = (1 2 .. n)`, `s_ij ↦ s_ij` for `i < j`, and a
/// wrapping interval `[i, j]` (`i > j`) to `c^j s_{i-j, n} c^{-j}`.
pub fn hom_ac_to_vc(word: &GroupWord) -> Result<GroupWord> {
    if word.kind != GroupKind::AC {
        return Err(Error::UnsupportedKind(word.kind.to_string()));
    }
    let n = word.n;
    let c = Permutation::long_cycle(n);
    let mut letters = Vec::new();
    for g in &word.letters {
        match g {
            Generator::AffineR => letters.push(Generator::Perm(c.clone())),
            Generator::AffineS(i, j) if i < j => letters.push(Generator::Cactus(*i, *j)),
            Generator::AffineS(i, j) => {
                letters.push(Generator::Perm(c.pow(*j)));
                letters.push(Generator::Cactus(i - j, n));
                letters.push(Generator::Perm(c.pow(n - j)));
            }
            other => return Err(Error::InvalidGenerator(format!("{other} is not in AC_{n}"))),
        }
    }
    Ok(GroupWord::of(GroupKind::VC, n, letters))
}

/// The word `t_0 (t_1 t_0) .. (t_{j-1} .. t_1 t_0)` in `C_{n+1}`, equal to `s_{0j}`.
pub fn mc_s0j_word(j: usize, n: usize) -> Result<GroupWord> {
    if !(1 <= j && j <= n) {
        return Err(Error::InvalidGenerator(format!("s_0{j} needs 1 ≤ j ≤ n = {n}")));
    }
    let letters = (0..j).flat_map(|k| (0..=k).rev().map(Generator::T)).collect();
    Ok(GroupWord::of(GroupKind::CT, n, letters))
}

/// The image in `S_n` (`S_{n+1}` on `0..n` for `CT` words).
pub fn project_to_symmetric(word: &GroupWord) -> Result<Permutation> {
    let n = word.n;
    let degree = if word.kind == GroupKind::CT { n + 1 } else { n };
    let vc;
    let letters = match word.kind {
        GroupKind::AC => {
            vc = hom_ac_to_vc(word)?;
            &vc.letters
        }
        _ => &word.letters,
    };
    let mut acc = Permutation::identity(degree);
    for g in letters {
        let p = match (g, word.kind) {
            (Generator::Cactus(i, j), _) => reversal(n, *i, *j),
            (Generator::Perm(w), _) => w.clone(),
            (Generator::T(i), GroupKind::CT) => Permutation::transposition(degree, *i, i + 1),
            (Generator::T(i), _) => Permutation::transposition(degree, i - 1, *i),
            (other, _) => return Err(Error::InvalidGenerator(format!("cannot project {other}"))),
        };
        acc = acc.compose(&p);
    }
    Ok(acc)
}

/// A word in `t_1..t_{n-1}` for a permutation of `S_n`, from a reduced word.
pub fn t_word(w: &Permutation) -> GroupWord {
    let letters = w.reduced_word().into_iter().map(|k| Generator::T(k + 1)).collect();
    GroupWord::of(GroupKind::MC, w.degree(), letters)
}

/// Rewrites a `vC_n` word as an `MC_n` word with the same image, replacing
/// each permutation by a reduced word in the `t_i`.
pub fn vc_to_mc_word(word: &GroupWord) -> Result<GroupWord> {
    if word.kind != GroupKind::VC {
        return Err(Error::UnsupportedKind(word.kind.to_string()));
    }
    let mut letters = Vec::new();
    for g in &word.letters {
        match g {
            Generator::Perm(w) => letters.extend(t_word(w).letters),
            other => letters.push(other.clone()),
        }
    }
    Ok(GroupWord::of(GroupKind::MC, word.n, letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    fn word(kind: GroupKind, n: usize, text: &str) -> GroupWord {
        GroupWord::parse(kind, n, text).unwrap()
    }

    #[test]
    fn cabling_examples() {
        assert_eq!(cabling(&Permutation::identity(3), 2, 3, 4).unwrap(), Permutation::identity(4));
        assert_eq!(cabling(&perm(&[2, 3, 1]), 2, 3, 4).unwrap(), perm(&[2, 3, 4, 1]));
        let count = Permutation::all(4).iter().filter(|w| is_translation(w, 2, 3)).count();
        assert_eq!(count, 6);
        assert!(cabling(&perm(&[1, 2]), 2, 3, 4).is_err());
    }

    #[test]
    fn translation_examples() {
        assert!(is_translation(&perm(&[2, 3, 4, 1]), 2, 3));
        assert!(!is_translation(&perm(&[3, 2, 1]), 1, 2));
        assert!(is_translation(&Permutation::identity(5), 2, 5));
    }

    #[test]
    fn cabling_is_a_bijection_onto_translations() {
        for n in 2..=6 {
            let all = Permutation::all(n);
            for i in 1..=n {
                for j in i + 1..=n {
                    let mut image = translations(i, j, n).unwrap();
                    let len = image.len();
                    image.sort();
                    image.dedup();
                    assert_eq!(image.len(), len, "cabling not injective for n={n} [{i},{j}]");
                    let expected: Vec<Permutation> = all.iter().filter(|w| is_translation(w, i, j)).cloned().collect();
                    assert_eq!(image, expected);
                }
            }
        }
    }

    #[test]
    fn parsing_and_display() {
        let w = word(GroupKind::VC, 3, "s13 s1_2 w[2,1,3] s{2}_{3}");
        assert_eq!(w.to_string(), "s13 s12 w[2,1,3] s23");
        assert_eq!(word(GroupKind::AC, 3, "s31 r").letters(), &[Generator::AffineS(3, 1), Generator::AffineR]);
        assert!(GroupWord::parse(GroupKind::C, 3, "s31").is_err());
        assert!(GroupWord::parse(GroupKind::C, 3, "w[2,1,3]").is_err());
        assert!(GroupWord::parse(GroupKind::MC, 3, "t0").is_err());
        assert!(GroupWord::parse(GroupKind::CT, 3, "t0").is_ok());
        assert!(GroupWord::parse(GroupKind::VC, 3, "x1").is_err());
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<GroupWord>(&json).unwrap(), w);
    }

    #[test]
    fn relation_examples() {
        let c3 = defining_relations(GroupKind::C, 3).unwrap();
        assert!(c3.contains(&(word(GroupKind::C, 3, "s13 s12 s13"), word(GroupKind::C, 3, "s23"))));

        let vc4 = defining_relations(GroupKind::VC, 4).unwrap();
        let t = perm(&[2, 3, 4, 1]);
        let lhs = GroupWord::new(
            GroupKind::VC,
            4,
            vec![Generator::Perm(t.clone()), Generator::Cactus(2, 3), Generator::Perm(t.inverse())],
        )
        .unwrap();
        assert!(vc4.contains(&(lhs, word(GroupKind::VC, 4, "s34"))));

        let ac3 = defining_relations(GroupKind::AC, 3).unwrap();
        assert!(ac3.contains(&(word(GroupKind::AC, 3, "r r r"), GroupWord::empty(GroupKind::AC, 3))));
        assert!(ac3.contains(&(word(GroupKind::AC, 3, "r s12 r r"), word(GroupKind::AC, 3, "s23"))));
        assert!(matches!(defining_relations(GroupKind::MC, 3), Err(Error::UnsupportedKind(_))));
    }

    #[test]
    fn relations_project_to_equal_permutations() {
        for n in 2..=4 {
            for kind in [GroupKind::C, GroupKind::VC, GroupKind::AC] {
                for (l, r) in defining_relations(kind, n).unwrap() {
                    assert_eq!(project_to_symmetric(&l).unwrap(), project_to_symmetric(&r).unwrap(), "{kind}_{n}: {l} = {r}");
                }
            }
        }
    }

    #[test]
    fn homomorphism_examples() {
        let s = word(GroupKind::C, 3, "s12");
        assert_eq!(hom_c_to_vc(&s).unwrap(), word(GroupKind::VC, 3, "s12"));
        assert!(hom_c_to_vc(&GroupWord::empty(GroupKind::C, 3)).unwrap().is_empty());
        assert_eq!(hom_c_to_vc(&word(GroupKind::C, 3, "s13 s12")).unwrap().to_string(), "s13 s12");

        assert_eq!(hom_mc_to_vc(&word(GroupKind::MC, 3, "t1")).unwrap(), word(GroupKind::VC, 3, "w[2,1,3]"));
        assert_eq!(hom_mc_to_vc(&word(GroupKind::MC, 3, "s23")).unwrap(), word(GroupKind::VC, 3, "s23"));
        assert_eq!(hom_mc_to_vc(&word(GroupKind::MC, 3, "t1 t2")).unwrap(), word(GroupKind::VC, 3, "w[2,1,3] w[1,3,2]"));

        assert_eq!(hom_ac_to_vc(&word(GroupKind::AC, 3, "r")).unwrap(), word(GroupKind::VC, 3, "w[2,3,1]"));
        assert_eq!(hom_ac_to_vc(&word(GroupKind::AC, 3, "s12")).unwrap(), word(GroupKind::VC, 3, "s12"));
        assert_eq!(hom_ac_to_vc(&word(GroupKind::AC, 3, "s31")).unwrap(), word(GroupKind::VC, 3, "w[2,3,1] s23 w[3,1,2]"));
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_to_symmetric(&word(GroupKind::VC, 3, "s13")).unwrap(), perm(&[3, 2, 1]));
        assert_eq!(project_to_symmetric(&word(GroupKind::AC, 3, "r")).unwrap(), perm(&[2, 3, 1]));
        // the cyclic interval {3, 1} reversed
        assert_eq!(project_to_symmetric(&word(GroupKind::AC, 3, "s31")).unwrap(), perm(&[3, 2, 1]));
    }

    #[test]
    fn s0j_words_project_to_reversals() {
        assert_eq!(mc_s0j_word(1, 3).unwrap().to_string(), "t0");
        assert_eq!(mc_s0j_word(2, 3).unwrap().to_string(), "t0 t1 t0");
        assert_eq!(mc_s0j_word(3, 3).unwrap().to_string(), "t0 t1 t0 t2 t1 t0");
        assert!(mc_s0j_word(0, 3).is_err());
        assert!(mc_s0j_word(4, 3).is_err());
        for n in 1..=6 {
            for j in 1..=n {
                let p = project_to_symmetric(&mc_s0j_word(j, n).unwrap()).unwrap();
                assert_eq!(p, Permutation::interval_reversal(n + 1, 0, j));
            }
        }
    }

    #[test]
    fn t_words_project_back() {
        for w in Permutation::all(4) {
            let mc = t_word(&w);
            assert_eq!(project_to_symmetric(&mc).unwrap(), w);
            assert_eq!(project_to_symmetric(&hom_mc_to_vc(&mc).unwrap()).unwrap(), w);
        }
    }

    proptest::proptest! {
        #[test]
        fn cabling_is_always_a_translation(seed in 0usize..720, i in 1usize..6, len in 1usize..5) {
            let n = 6;
            let j = (i + len).min(n);
            proptest::prop_assume!(i < j);
            let all = Permutation::all(n - (j - i));
            let u = &all[seed % all.len()];
            let w = cabling(u, i, j, n).unwrap();
            proptest::prop_assert!(is_translation(&w, i, j));
        }
    }
}
