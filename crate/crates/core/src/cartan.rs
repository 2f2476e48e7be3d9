//! Cartan data, weights in the fundamental-weight basis, and the diagram
//! involution `i -> i*` induced by `-w0`.
//!
//! Nodes are 0-based in the API; serialized forms and the CLI are 1-based.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight, stored as its coefficients on the fundamental weights.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ω_{i+1}` (0-based `i`).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Comma-joined coefficients, e.g. `1,0`. Used as a colour label.
    pub fn label(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn scaled(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanKind {
    /// Type `A_r`.
    A,
    /// A user-supplied matrix of finite type.
    Explicit,
}

/// Serialized form: `{"type":"A","rank":2}` or `{"type":"explicit","matrix":[[2,-1],[-1,2]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type")]
enum CartanSpec {
    A { rank: usize },
    #[serde(rename = "explicit")]
    Explicit { matrix: Vec<Vec<i32>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CartanSpec", into = "CartanSpec")]
pub struct CartanData {
    kind: CartanKind,
    matrix: Vec<Vec<i32>>,
    star: Vec<usize>,
}

impl From<CartanData> for CartanSpec {
    fn from(c: CartanData) -> Self {
        match c.kind {
            CartanKind::A => CartanSpec::A { rank: c.rank() },
            CartanKind::Explicit => CartanSpec::Explicit { matrix: c.matrix },
        }
    }
}

impl TryFrom<CartanSpec> for CartanData {
    type Error = Error;
    fn try_from(spec: CartanSpec) -> Result<Self> {
        match spec {
            CartanSpec::A { rank } => CartanData::type_a(rank),
            CartanSpec::Explicit { matrix } => CartanData::explicit(matrix),
        }
    }
}

impl CartanData {
    pub fn type_a(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidCartan("type A needs rank >= 1".into()));
        }
        let matrix = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let star = (0..rank).map(|i| rank - 1 - i).collect();
        Ok(CartanData { kind: CartanKind::A, matrix, star })
    }

    pub fn explicit(matrix: Vec<Vec<i32>>) -> Result<Self> {
        check_finite_type(&matrix)?;
        let star = star_from_longest_element(&matrix);
        Ok(CartanData { kind: CartanKind::Explicit, matrix, star })
    }

    /// Parses a type tag such as `A2`.
    pub fn parse_type(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        let rest = tag
            .strip_prefix('A')
            .or_else(|| tag.strip_prefix('a'))
            .ok_or_else(|| Error::InvalidCartan(format!("unsupported type tag {tag:?}")))?;
        let rank = rest.parse().map_err(|_| Error::InvalidCartan(format!("bad rank in {tag:?}")))?;
        CartanData::type_a(rank)
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.matrix[i][j]
    }

    pub fn tag(&self) -> String {
        match self.kind {
            CartanKind::A => format!("A{}", self.rank()),
            CartanKind::Explicit => format!("explicit{:?}", self.matrix),
        }
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::NodeOutOfRange { node: i, rank: self.rank() });
        }
        Ok(())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::WeightLength { got: w.rank(), rank: self.rank() });
        }
        Ok(())
    }

    /// `<w, α_i^∨>`: the `i`-th fundamental-weight coefficient.
    pub fn pairing(&self, w: &Weight, i: usize) -> Result<i32> {
        self.check_node(i)?;
        self.check_weight(w)?;
        Ok(w.0[i])
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.rank() == self.rank() && w.0.iter().all(|&c| c >= 0)
    }

    /// The simple root `α_i`, i.e. column `i` of the Cartan matrix.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| self.matrix[j][i]).collect())
    }

    /// The diagram involution `i -> i*` with `α_{i*} = -w0(α_i)`.
    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    /// The simple reflection `s_i` acting on a weight.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let root = self.simple_root(i).scaled(w.0[i]);
        w - &root
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank())
    }

    /// The partition of a type-A dominant weight: `λ_k = Σ_{i ≥ k} c_i`.
    pub fn partition_of(&self, w: &Weight) -> Result<Vec<usize>> {
        if self.kind != CartanKind::A {
            return Err(Error::UnsupportedType(self.tag()));
        }
        self.check_weight(w)?;
        if !self.is_dominant(w) {
            return Err(Error::NotDominant(w.label()));
        }
        let mut parts = Vec::new();
        let mut acc = 0usize;
        for &c in w.0.iter().rev() {
            acc += c as usize;
            parts.push(acc);
        }
        parts.reverse();
        parts.retain(|&p| p > 0);
        Ok(parts)
    }
}

fn check_finite_type(matrix: &[Vec<i32>]) -> Result<()> {
    let r = matrix.len();
    if r == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    if matrix.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidCartan("matrix is not square".into()));
    }
    for i in 0..r {
        if matrix[i][i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry a_{i}{i} is not 2")));
        }
        for j in 0..r {
            if i != j {
                if matrix[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry a_{i}{j} is positive")));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!("a_{i}{j} and a_{j}{i} are not both zero")));
                }
            }
        }
    }
    // Symmetrize: find d with d_i a_ij = d_j a_ji.
    let mut d: Vec<Option<f64>> = vec![None; r];
    for root in 0..r {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(1.0);
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..r {
                if i == j || matrix[i][j] == 0 {
                    continue;
                }
                let dj = di * matrix[i][j] as f64 / matrix[j][i] as f64;
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if (existing - dj).abs() > 1e-9 * existing.abs().max(1.0) => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let sym: Vec<Vec<f64>> =
        (0..r).map(|i| (0..r).map(|j| d[i].unwrap() * matrix[i][j] as f64).collect()).collect();
    // Sylvester: all leading principal minors positive.
    for k in 1..=r {
        let minor: Vec<Vec<f64>> = sym[..k].iter().map(|row| row[..k].to_vec()).collect();
        if determinant(minor) <= 1e-9 {
            return Err(Error::InvalidCartan("matrix is not of finite type".into()));
        }
    }
    Ok(())
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        if m[pivot][col].abs() < 1e-12 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det
}

/// Computes `i*` by walking `ρ` to `-ρ` with simple reflections (a reduced
/// word for `w0`), then applying that word to each simple root.
fn star_from_longest_element(matrix: &[Vec<i32>]) -> Vec<usize> {
    let r = matrix.len();
    let root = |i: usize| Weight((0..r).map(|j| matrix[j][i]).collect());
    let reflect = |w: &Weight, i: usize| -> Weight { w - &root(i).scaled(w.0[i]) };
    let mut rho = Weight(vec![1; r]);
    let mut word = Vec::new();
    while let Some(i) = (0..r).find(|&i| rho.0[i] > 0) {
        rho = reflect(&rho, i);
        word.push(i);
    }
    (0..r)
        .map(|i| {
            // w0 = s_{word[last]} ... s_{word[0]}; apply rightmost first.
            let mut w = root(i);
            for &k in &word {
                w = reflect(&w, k);
            }
            let target = -&w;
            (0..r).find(|&j| root(j) == target).expect("-w0 permutes the simple roots")
        })
        .collect()
}
