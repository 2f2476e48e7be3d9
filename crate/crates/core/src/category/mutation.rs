//! Single-transposition mutations of category data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{CategoryData, Colour};
use crate::error::{Error, Result};

/// Two keys of one stored bijection whose values are exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    /// `phi`, `commutor` or `associator`.
    pub map: String,
    pub colours: Vec<Colour>,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationOutcome {
    pub mutation: String,
    pub detected: bool,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub seed: u64,
    pub mutations: usize,
    pub detected: usize,
    pub undetected: Vec<String>,
    pub passed: bool,
}

/// Applies a mutation; `first` and `second` index the map's keys in order.
pub fn mutate(data: &CategoryData, m: &Mutation) -> Result<CategoryData> {
    let bad = || Error::InvalidCategory(format!("mutation {m:?} does not apply"));
    let mut out = data.clone();
    match (m.map.as_str(), m.colours.as_slice()) {
        ("phi", &[x, y]) => swap(out.phi.get_mut(&(x, y)).ok_or_else(bad)?, m.first, m.second).ok_or_else(bad)?,
        ("commutor", &[x, y]) => swap(out.sigma.get_mut(&(x, y)).ok_or_else(bad)?, m.first, m.second).ok_or_else(bad)?,
        ("associator", &[x, y, z]) => swap(out.assoc.get_mut(&(x, y, z)).ok_or_else(bad)?, m.first, m.second).ok_or_else(bad)?,
        _ => return Err(bad()),
    }
    Ok(out)
}

fn swap<K: Ord + Clone, V>(map: &mut std::collections::BTreeMap<K, V>, i: usize, j: usize) -> Option<()> {
    if i == j {
        return None;
    }
    let a = map.keys().nth(i)?.clone();
    let b = map.keys().nth(j)?.clone();
    let va = map.remove(&a)?;
    let vb = map.insert(b, va)?;
    map.insert(a, vb);
    Some(())
}

fn describe(data: &CategoryData, m: &Mutation) -> String {
    let names: Vec<&str> = m.colours.iter().map(|&c| data.colour_name(c)).collect();
    format!("{}({}) keys {} <-> {}", m.map, names.join(", "), m.first, m.second)
}

/// Draws `count` mutations among the bijections whose colours all lie in
/// the base list, and checks that each makes validation fail.
pub fn mutation_test(data: &CategoryData, count: usize, seed: u64) -> Result<MutationReport> {
    let base = data.base();
    let in_base = |cs: &[Colour]| cs.iter().all(|c| base.contains(c));
    let mut targets: Vec<(String, Vec<Colour>, usize)> = Vec::new();
    targets.extend(data.phi.iter().map(|(&(x, y), m)| ("phi".to_string(), vec![x, y], m.len())));
    targets.extend(data.sigma.iter().map(|(&(x, y), m)| ("commutor".to_string(), vec![x, y], m.len())));
    targets.extend(data.assoc.iter().map(|(&(x, y, z), m)| ("associator".to_string(), vec![x, y, z], m.len())));
    targets.retain(|(_, cs, n)| in_base(cs) && *n >= 2);
    if targets.is_empty() {
        return Err(Error::InvalidCategory("no bijection with two or more elements over the base colours".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mutations: Vec<Mutation> = (0..count)
        .map(|_| {
            let (map, colours, n) = targets.choose(&mut rng).expect("non-empty").clone();
            let first = rng.gen_range(0..n);
            let second = (first + rng.gen_range(1..n)) % n;
            Mutation { map, colours, first, second }
        })
        .collect();
    let outcomes: Vec<MutationOutcome> = mutations
        .par_iter()
        .map(|m| {
            let mutated = mutate(data, m)?;
            let report = mutated.validate();
            Ok(MutationOutcome { mutation: describe(data, m), detected: !report.passed, failures: report.failure_count() })
        })
        .collect::<Result<_>>()?;
    let detected = outcomes.iter().filter(|o| o.detected).count();
    let undetected: Vec<String> = outcomes.into_iter().filter(|o| !o.detected).map(|o| o.mutation).collect();
    Ok(MutationReport { seed, mutations: count, detected, passed: undetected.is_empty(), undetected })
}
