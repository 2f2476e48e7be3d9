//! Young tableaux: RSK, evacuation, the Berenstein–Kirillov cactus action
//! by partial evacuations, Bender–Knuth involutions, and the comparison of
//! the crystal action on `B(ω_1)^n` with RSK.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::actions::{image_group, ActionContext};
use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::groups::{Generator, GroupKind};
use crate::perm::{Permutation, PermutationGroup};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A semistandard tableau, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau(Vec<Vec<usize>>);

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.0
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.0).unwrap())
    }
}

impl Tableau {
    /// Checks shape and semistandardness.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        Partition::new(rows.iter().map(|r| r.len()).collect())?;
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == 0 {
                    return Err(Error::InvalidTableau("entries are positive".into()));
                }
                if c > 0 && row[c - 1] > x {
                    return Err(Error::InvalidTableau(format!("row {} decreases at column {}", r + 1, c + 1)));
                }
                if r > 0 && rows[r - 1][c] >= x {
                    return Err(Error::InvalidTableau(format!("column {} does not increase at row {}", c + 1, r + 1)));
                }
            }
        }
        Ok(Tableau(rows))
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn shape(&self) -> Partition {
        Partition(self.0.iter().map(|r| r.len()).collect())
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|r| r.len()).sum()
    }

    /// Entries are exactly `1..=size`, each once.
    pub fn is_standard(&self) -> bool {
        let mut seen = vec![false; self.size() + 1];
        for &x in self.0.iter().flatten() {
            if x > self.size() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    fn require_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::InvalidTableau(format!("{self} is not standard")))
        }
    }

    /// Multiplicities of `1..=max`.
    pub fn content(&self, max: usize) -> Vec<usize> {
        let mut c = vec![0; max];
        for &x in self.0.iter().flatten() {
            if x >= 1 && x <= max {
                c[x - 1] += 1;
            }
        }
        c
    }
}

/// Row insertion of `w(1), .., w(n)`: returns `(P, Q)`.
pub fn rsk(w: &Permutation) -> (Tableau, Tableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (k, x) in w.one_line().into_iter().enumerate() {
        let mut x = x;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![k + 1]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(c) => {
                    std::mem::swap(&mut p[row][c], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(k + 1);
                    break;
                }
            }
        }
    }
    (Tableau(p), Tableau(q))
}

/// The inverse of [`rsk`].
pub fn rsk_inverse(p: &Tableau, q: &Tableau) -> Result<Permutation> {
    p.require_standard()?;
    q.require_standard()?;
    if p.shape() != q.shape() {
        return Err(Error::InvalidTableau(format!("shapes of {p} and {q} differ")));
    }
    let n = p.size();
    let mut p = p.0.clone();
    let mut q = q.0.clone();
    let mut one_line = vec![0; n];
    for k in (1..=n).rev() {
        let row = q.iter().position(|r| r.last() == Some(&k)).expect("recording tableau is standard");
        q[row].pop();
        let mut x = p[row].pop().unwrap();
        if p[row].is_empty() {
            p.pop();
            q.pop();
        }
        for r in (0..row).rev() {
            let c = p[r].iter().rposition(|&y| y < x).expect("bumping is reversible");
            std::mem::swap(&mut p[r][c], &mut x);
        }
        one_line[k - 1] = x;
    }
    Permutation::from_one_line(&one_line)
}

/// Evacuation of the cells holding `1..=m` of a standard tableau; cells with
/// larger entries are untouched.
fn evacuate_prefix(t: &Tableau, m: usize) -> Tableau {
    let mut work: Vec<Vec<Option<usize>>> = t.0.iter().map(|r| r.iter().map(|&x| (x <= m).then_some(x)).collect()).collect();
    let mut out = t.0.clone();
    for step in 1..=m {
        let (mut r, mut c) = (0, 0);
        // The smallest remaining entry sits in the corner (0, 0).
        work[0][0] = None;
        loop {
            let right = work[r].get(c + 1).copied().flatten();
            let below = work.get(r + 1).and_then(|row| row.get(c)).copied().flatten();
            let (nr, nc) = match (right, below) {
                (Some(a), Some(b)) if a < b => (r, c + 1),
                (Some(_), Some(_)) | (None, Some(_)) => (r + 1, c),
                (Some(_), None) => (r, c + 1),
                (None, None) => break,
            };
            work[r][c] = work[nr][nc].take();
            (r, c) = (nr, nc);
        }
        out[r][c] = m + 1 - step;
    }
    Tableau(out)
}

/// Schützenberger evacuation of a standard tableau.
pub fn evacuation(t: &Tableau) -> Result<Tableau> {
    t.require_standard()?;
    Ok(evacuate_prefix(t, t.size()))
}

/// Evacuation of the sub-tableau with entries `1..=j`.
pub fn partial_evacuation(j: usize, t: &Tableau) -> Result<Tableau> {
    t.require_standard()?;
    if j == 0 || j > t.size() {
        return Err(Error::InvalidTableau(format!("partial evacuation needs 1 ≤ j ≤ {}", t.size())));
    }
    Ok(evacuate_prefix(t, j))
}

/// The cactus generator `s_ij` on standard tableaux: `s_1j` is partial
/// evacuation, and `s_ij = s_1j s_{1,j-i+1} s_1j`.
pub fn bk_cactus_act(i: usize, j: usize, t: &Tableau) -> Result<Tableau> {
    if !(1 <= i && i < j && j <= t.size()) {
        return Err(Error::InvalidGenerator(format!("s{i}_{j} on a tableau of size {}", t.size())));
    }
    let a = partial_evacuation(j, t)?;
    if i == 1 {
        return Ok(a);
    }
    let b = partial_evacuation(j - i + 1, &a)?;
    partial_evacuation(j, &b)
}

/// The Bender–Knuth involution `t_i` on a semistandard tableau.
pub fn bender_knuth(i: usize, t: &Tableau) -> Result<Tableau> {
    if i == 0 {
        return Err(Error::InvalidGenerator("Bender–Knuth index starts at 1".into()));
    }
    let rows = &t.0;
    let mut out = rows.clone();
    for (r, row) in rows.iter().enumerate() {
        let is_free = |c: usize| -> bool {
            match row[c] {
                x if x == i => rows.get(r + 1).and_then(|b| b.get(c)) != Some(&(i + 1)),
                x if x == i + 1 => r == 0 || rows[r - 1].get(c) != Some(&i),
                _ => false,
            }
        };
        let free: Vec<usize> = (0..row.len()).filter(|&c| is_free(c)).collect();
        let highs = free.iter().filter(|&&c| row[c] == i + 1).count();
        for (k, &c) in free.iter().enumerate() {
            out[r][c] = if k < highs { i } else { i + 1 };
        }
    }
    Tableau::new(out)
}

/// Standard tableaux of a shape, in lexicographic order of rows.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let n = shape.size();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = shape.0.iter().map(|_| Vec::new()).collect();
    fn rec(shape: &[usize], k: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if k > n {
            out.push(Tableau(rows.clone()));
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(shape, k + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(&shape.0, 1, n, &mut rows, &mut out);
    out.sort();
    out
}

/// Semistandard tableaux of a shape with entries at most `max`.
pub fn semistandard_tableaux(shape: &Partition, max: usize) -> Vec<Tableau> {
    let cells: Vec<(usize, usize)> = shape.0.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut rows: Vec<Vec<usize>> = shape.0.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fn rec(cells: &[(usize, usize)], k: usize, max: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(Tableau(rows.clone()));
            return;
        }
        let (r, c) = cells[k];
        let lo = {
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            left.max(above)
        };
        for x in lo..=max {
            rows[r][c] = x;
            rec(cells, k + 1, max, rows, out);
        }
        rows[r][c] = 0;
    }
    rec(&cells, 0, max, &mut rows, &mut out);
    out
}

/// The image of `C_n` acting on `Tab(shape)` by [`bk_cactus_act`].
pub fn cactus_image(shape: &Partition) -> Result<(Vec<Tableau>, PermutationGroup)> {
    let tabs = standard_tableaux(shape);
    let n = shape.size();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let maps: Vec<Box<dyn Fn(&Tableau) -> Result<Tableau>>> =
        pairs.iter().map(|&(i, j)| Box::new(move |t: &Tableau| bk_cactus_act(i, j, t)) as Box<dyn Fn(&Tableau) -> Result<Tableau>>).collect();
    let group = image_group(&tabs, &maps)?;
    Ok((tabs, group))
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidSearchReport {
    pub max_cells: usize,
    pub max_entry: usize,
    pub searched: usize,
    pub involution_failures: usize,
    pub witness: Option<BraidWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidWitness {
    pub i: usize,
    pub tableau: Tableau,
    /// `t_i t_{i+1} t_i (T)`.
    pub lhs: Tableau,
    /// `t_{i+1} t_i t_{i+1} (T)`.
    pub rhs: Tableau,
}

/// Searches all semistandard tableaux with at most `max_cells` cells and
/// entries at most `max_entry` for a failure of the braid relation among
/// Bender–Knuth involutions, checking `t_i² = id` along the way. With a
/// seed, the candidates are visited in a shuffled order.
pub fn braid_search(max_cells: usize, max_entry: usize, seed: Option<u64>) -> Result<BraidSearchReport> {
    let mut candidates = Vec::new();
    for size in 1..=max_cells {
        for shape in Partition::all(size) {
            candidates.extend(semistandard_tableaux(&shape, max_entry));
        }
    }
    if let Some(s) = seed {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    let mut involution_failures = 0;
    let mut witness = None;
    for t in &candidates {
        for i in 1..max_entry {
            if bender_knuth(i, &bender_knuth(i, t)?)? != *t {
                involution_failures += 1;
            }
        }
        if witness.is_none() {
            for i in 1..max_entry.saturating_sub(1) {
                let j = i + 1;
                let lhs = bender_knuth(i, &bender_knuth(j, &bender_knuth(i, t)?)?)?;
                let rhs = bender_knuth(j, &bender_knuth(i, &bender_knuth(j, t)?)?)?;
                if lhs != rhs {
                    witness = Some(BraidWitness { i, tableau: t.clone(), lhs, rhs });
                    break;
                }
            }
        }
    }
    Ok(BraidSearchReport { max_cells, max_entry, searched: candidates.len(), involution_failures, witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeSummary {
    pub shape: Partition,
    pub pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub points: usize,
    /// How a point `(a_1, .., a_n)` is read as a permutation.
    pub identification: String,
    pub left_multiplication: bool,
    pub p_consistent: bool,
    pub q_consistent: bool,
    /// The RSK factor carrying the cactus action, if exactly one does.
    pub factor: Option<String>,
    pub shapes: Vec<ShapeSummary>,
    pub passed: bool,
}

/// Compares the `vC_n` action on the weight-zero part of `B(ω_1)^n` (type
/// `A_{n-1}`) with left multiplication and with the tableau cactus action
/// on the RSK factors. A point `(a_1, .., a_n)` is read as the permutation
/// `π` with `π(a_k) = k`.
pub fn rsk_crosscheck(n: usize) -> Result<CrosscheckReport> {
    if n < 2 {
        return Err(Error::InvalidGenerator(format!("crosscheck needs n ≥ 2, got {n}")));
    }
    let cartan = CartanData::type_a(n - 1)?;
    let omega1 = cartan.fundamental(0);
    let ctx = ActionContext::new(cartan.clone(), vec![omega1; n])?;
    let points = ctx.points_of_weight(&cartan.zero_weight())?;
    // B(ω_1) has ids 0..n in the order of the letters 1..n.
    let to_perm = |entries: &[usize]| -> Result<Permutation> { Ok(Permutation::from_one_line(&entries.iter().map(|&b| b + 1).collect::<Vec<_>>())?.inverse()) };

    let mut left_multiplication = true;
    for w in Permutation::all(n) {
        let g = Generator::Perm(w.clone());
        for p in &points {
            let q = ctx.act(GroupKind::VC, &g, p)?;
            if to_perm(&q.entries)? != w.compose(&to_perm(&p.entries)?) {
                left_multiplication = false;
            }
        }
    }

    let (mut p_consistent, mut q_consistent) = (true, true);
    for i in 1..=n {
        for j in i + 1..=n {
            let g = Generator::Cactus(i, j);
            for p in &points {
                let before = rsk(&to_perm(&p.entries)?);
                let after = rsk(&to_perm(&ctx.act(GroupKind::VC, &g, p)?.entries)?);
                if !(after.1 == before.1 && after.0 == bk_cactus_act(i, j, &before.0)?) {
                    p_consistent = false;
                }
                if !(after.0 == before.0 && after.1 == bk_cactus_act(i, j, &before.1)?) {
                    q_consistent = false;
                }
            }
        }
    }
    let factor = match (p_consistent, q_consistent) {
        (true, false) => Some("P".to_string()),
        (false, true) => Some("Q".to_string()),
        _ => None,
    };
    let shapes = Partition::all(n)
        .into_iter()
        .map(|shape| {
            let k = standard_tableaux(&shape).len();
            ShapeSummary { shape, pairs: k * k }
        })
        .collect();
    Ok(CrosscheckReport {
        n,
        points: points.len(),
        identification: "pi(a_k) = k".into(),
        left_multiplication,
        p_consistent,
        q_consistent,
        passed: left_multiplication && factor.is_some(),
        factor,
        shapes,
    })
}

/// Content of a tableau as a type-A weight of rank `rank`.
pub fn tableau_weight(t: &Tableau, rank: usize) -> Weight {
    let c = t.content(rank + 1);
    Weight((0..rank).map(|i| c[i] as i32 - c[i + 1] as i32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    /// Oracle for shapes: the hook length formula.
    fn hook_count(shape: &[usize]) -> usize {
        let n: usize = shape.iter().sum();
        let mut denom = 1usize;
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = shape.iter().skip(r + 1).filter(|&&l| l > c).count();
                denom *= arm + leg + 1;
            }
        }
        (1..=n).product::<usize>() / denom
    }

    #[test]
    fn rsk_examples() {
        let (p, q) = rsk(&Permutation::identity(3));
        assert_eq!((p.clone(), q.clone()), (tab(&[&[1, 2, 3]]), tab(&[&[1, 2, 3]])));
        let w = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let (p, q) = rsk(&w);
        assert_eq!(p, tab(&[&[1, 3], &[2]]));
        assert_eq!(q, tab(&[&[1, 3], &[2]]));
        assert_eq!(rsk_inverse(&p, &q).unwrap(), w);
        let total: usize = Partition::all(4).iter().map(|s| standard_tableaux(s).len().pow(2)).sum();
        assert_eq!(total, 24);
    }

    #[test]
    fn rsk_is_a_bijection() {
        for n in 1..=6 {
            let mut seen = std::collections::BTreeSet::new();
            for w in Permutation::all(n) {
                let (p, q) = rsk(&w);
                assert!(p.is_standard() && q.is_standard());
                assert_eq!(p.shape(), q.shape());
                assert_eq!(rsk_inverse(&p, &q).unwrap(), w);
                assert!(seen.insert((p, q)));
            }
        }
    }

    #[test]
    fn standard_counts_match_hook_formula() {
        for n in 1..=7 {
            for shape in Partition::all(n) {
                assert_eq!(standard_tableaux(&shape).len(), hook_count(shape.parts()), "{shape}");
            }
        }
    }

    #[test]
    fn evacuation_examples() {
        let col = tab(&[&[1], &[2], &[3]]);
        assert_eq!(evacuation(&col).unwrap(), col);
        assert_eq!(evacuation(&tab(&[&[1, 2], &[3]])).unwrap(), tab(&[&[1, 3], &[2]]));
        let row = tab(&[&[1, 2, 3, 4]]);
        assert_eq!(evacuation(&row).unwrap(), row);
        assert!(evacuation(&tab(&[&[1, 1]])).is_err());
    }

    #[test]
    fn partial_evacuation_examples() {
        let t = tab(&[&[1, 3, 4], &[2, 5]]);
        assert_eq!(partial_evacuation(1, &t).unwrap(), t);
        assert_eq!(partial_evacuation(5, &t).unwrap(), evacuation(&t).unwrap());
        let u = tab(&[&[1, 3], &[2]]);
        assert_eq!(partial_evacuation(2, &u).unwrap(), u);
    }

    #[test]
    fn bk_cactus_examples() {
        for t in standard_tableaux(&part(&[2, 2, 1])) {
            assert_eq!(bk_cactus_act(1, 5, &t).unwrap(), evacuation(&t).unwrap());
            for i in 1..=5 {
                for j in i + 1..=5 {
                    assert_eq!(bk_cactus_act(i, j, &bk_cactus_act(i, j, &t).unwrap()).unwrap(), t);
                }
            }
        }
        for t in standard_tableaux(&part(&[2, 1])) {
            let lhs = bk_cactus_act(1, 3, &bk_cactus_act(1, 2, &bk_cactus_act(1, 3, &t).unwrap()).unwrap()).unwrap();
            assert_eq!(lhs, bk_cactus_act(2, 3, &t).unwrap());
        }
    }

    #[test]
    fn bk_cactus_satisfies_cactus_relations() {
        use crate::groups::{defining_relations, GroupKind};
        for n in 2..=6 {
            let rels = defining_relations(GroupKind::C, n).unwrap();
            for shape in Partition::all(n) {
                for t in standard_tableaux(&shape) {
                    let run = |w: &crate::groups::GroupWord| -> Tableau {
                        let mut cur = t.clone();
                        for g in w.letters().iter().rev() {
                            let Generator::Cactus(i, j) = g else { unreachable!() };
                            cur = bk_cactus_act(*i, *j, &cur).unwrap();
                        }
                        cur
                    };
                    for (l, r) in &rels {
                        assert_eq!(run(l), run(r), "{l} = {r} on {t}");
                    }
                    assert_eq!(run(&rels[0].0).shape(), shape);
                }
            }
        }
    }

    #[test]
    fn bender_knuth_examples() {
        assert_eq!(bender_knuth(1, &tab(&[&[1, 1, 2]])).unwrap(), tab(&[&[1, 2, 2]]));
        let fixed = tab(&[&[1, 1], &[2, 2]]);
        assert_eq!(bender_knuth(1, &fixed).unwrap(), fixed);
        let report = braid_search(4, 3, None).unwrap();
        assert_eq!(report.involution_failures, 0);
        let w = report.witness.expect("braid relation fails somewhere");
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn bender_knuth_swaps_content() {
        for shape in Partition::all(4) {
            for t in semistandard_tableaux(&shape, 3) {
                for i in 1..3 {
                    let b = bender_knuth(i, &t).unwrap();
                    let (c, d) = (t.content(3), b.content(3));
                    assert_eq!((c[i - 1], c[i]), (d[i], d[i - 1]));
                    assert_eq!(b.shape(), t.shape());
                    assert_eq!(bender_knuth(i, &b).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn image_on_two_two_one() {
        let (tabs, g) = cactus_image(&part(&[2, 2, 1])).unwrap();
        assert_eq!(tabs.len(), 5);
        assert!(g.order() >= 60);
        assert!(g.contains_alternating());
    }

    #[test]
    fn crosscheck_small() {
        let rep = rsk_crosscheck(3).unwrap();
        assert_eq!(rep.points, 6);
        assert!(rep.left_multiplication);
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.factor.as_deref(), Some("P"));
    }

    #[test]
    fn tableau_validation() {
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1, 2], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
        let t: Tableau = serde_json::from_str("[[1,3],[2]]").unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[1,3],[2]]");
        assert!(serde_json::from_str::<Tableau>("[[2,1]]").is_err());
    }

    proptest::proptest! {
        #[test]
        fn evacuations_are_involutions(seed in 0usize..1000, size in 1usize..8) {
            let shapes = Partition::all(size);
            let shape = &shapes[seed % shapes.len()];
            let tabs = standard_tableaux(shape);
            let t = &tabs[(seed / 7) % tabs.len()];
            proptest::prop_assert_eq!(&evacuation(&evacuation(t).unwrap()).unwrap(), t);
            for j in 1..=size {
                let e = partial_evacuation(j, t).unwrap();
                proptest::prop_assert_eq!(e.shape(), t.shape());
                proptest::prop_assert_eq!(&partial_evacuation(j, &e).unwrap(), t);
            }
        }
    }
}
