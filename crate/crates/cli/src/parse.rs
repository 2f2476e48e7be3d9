use cactus_core::groups::{Generator, GroupKind};
use cactus_core::tableaux::{Partition, Tableau};
use cactus_core::{CartanData, Error, Permutation, Result, Weight};

fn numbers<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::InvalidPoint(format!("cannot parse {what} entry {s:?}"))))
        .collect()
}

/// One weight: a coefficient vector on the fundamental weights.
pub fn weight(cartan: &CartanData, text: &str) -> Result<Weight> {
    let w = Weight(numbers(text, "weight")?);
    cartan.check_weight(&w)?;
    Ok(w)
}

/// A tuple of weights. Tokens are separated by whitespace; a token of rank
/// length is a coefficient vector. A comma list of another length is a list
/// of weights: in rank 1 each entry is a coefficient of `ω_1`, in higher
/// rank each entry `k` names `ω_k` (`0` for the zero weight).
pub fn weights(cartan: &CartanData, text: &str) -> Result<Vec<Weight>> {
    let r = cartan.rank();
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let v: Vec<i32> = numbers(token, "weight")?;
        if v.len() == r {
            out.push(Weight(v));
        } else if r == 1 {
            out.extend(v.into_iter().map(|c| Weight(vec![c])));
        } else {
            for k in v {
                let k = usize::try_from(k).map_err(|_| Error::InvalidPoint(format!("fundamental weight index {k}")))?;
                if k == 0 {
                    out.push(cartan.zero_weight());
                } else if k <= r {
                    out.push(cartan.fundamental(k - 1));
                } else {
                    return Err(Error::NodeOutOfRange { node: k, rank: r });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidPoint("empty weight list".into()));
    }
    for w in &out {
        cartan.check_weight(w)?;
    }
    Ok(out)
}

pub fn entries(text: &str) -> Result<Vec<usize>> {
    numbers(text, "point")
}

pub fn permutation(text: &str) -> Result<Permutation> {
    Permutation::from_one_line(&numbers::<usize>(text, "permutation")?)
}

pub fn partition(text: &str) -> Result<Partition> {
    Partition::new(numbers(text, "partition")?)
}

pub fn tableau(text: &str) -> Result<Tableau> {
    Ok(serde_json::from_str(text)?)
}

/// Every generator of the kind for `n` strands, for orbit computations.
pub fn all_generators(kind: GroupKind, n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    match kind {
        GroupKind::AC => {
            out.push(Generator::AffineR);
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        out.push(Generator::AffineS(i, j));
                    }
                }
            }
        }
        _ => {
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(Generator::Cactus(i, j));
                }
            }
        }
    }
    match kind {
        GroupKind::VC => out.extend((1..n).map(|i| Generator::Perm(Permutation::transposition(n, i - 1, i)))),
        GroupKind::MC => out.extend((1..n).map(Generator::T)),
        _ => {}
    }
    out
}
