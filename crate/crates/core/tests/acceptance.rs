use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cactus_core::actions::ActionContext;
use cactus_core::category::{from_crystals, mutation_test, roundtrip};
use cactus_core::commutor::commutor;
use cactus_core::groups::{cabling, is_translation, mc_s0j_word, project_to_symmetric, GroupKind};
use cactus_core::tableaux::{braid_search, cactus_image, rsk_crosscheck, standard_tableaux, Partition};
use cactus_core::{CartanData, CrystalGraph, Permutation, Result, Weight};

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn a(r: usize) -> CartanData {
    CartanData::type_a(r).unwrap()
}

fn w(v: &[i32]) -> Weight {
    Weight(v.to_vec())
}

/// Label multisets of size `n` drawn from `choices`.
fn multisets(choices: &[Weight], n: usize) -> Vec<Vec<Weight>> {
    fn rec(choices: &[Weight], n: usize, start: usize, cur: &mut Vec<Weight>, out: &mut Vec<Vec<Weight>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..choices.len() {
            cur.push(choices[k].clone());
            rec(choices, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(choices, n, 0, &mut Vec::new(), &mut out);
    out
}

fn coboundary_axioms() -> Result<Outcome> {
    let mut families = vec![(1..=3).chain([0]).map(|k| CrystalGraph::irreducible(&a(1), &w(&[k]))).collect::<Result<Vec<_>>>()?];
    families.push([w(&[1, 0]), w(&[0, 1]), w(&[1, 1])].iter().map(|l| CrystalGraph::irreducible(&a(2), l)).collect::<Result<Vec<_>>>()?);
    let (mut pairs, mut triples, mut failures) = (0, 0, 0);
    for fam in &families {
        for x in fam {
            for y in fam {
                pairs += 1;
                if !commutor(y, x)?.compose(&commutor(x, y)?).is_identity() {
                    failures += 1;
                }
                for z in fam {
                    triples += 1;
                    let (ny, nz) = (y.len(), z.len());
                    let yz = ny * nz;
                    let s_bc = commutor(y, z)?;
                    let s_a_cb = commutor(x, &z.tensor(y)?)?;
                    let s_ab = commutor(x, y)?;
                    let s_ba_c = commutor(&y.tensor(x)?, z)?;
                    let bad = (0..x.len() * yz).any(|id| {
                        let lhs = s_a_cb.apply((id / yz) * yz + s_bc.apply(id % yz));
                        let rhs = s_ba_c.apply(s_ab.apply(id / nz) * nz + id % nz);
                        lhs != rhs
                    });
                    failures += bad as usize;
                }
            }
        }
    }
    ok(failures == 0, format!("{pairs} pairs, {triples} triples, {failures} failures"))
}

fn relation_suite(kind: GroupKind, cases: &[(usize, Vec<Weight>, usize)]) -> Result<Outcome> {
    let (mut points, mut relations, mut failures) = (0, 0, 0);
    for (rank, choices, n) in cases {
        for labels in multisets(choices, *n) {
            let r = ActionContext::new(a(*rank), labels)?.verify_relations(kind)?;
            points += r.points;
            relations += r.relations;
            failures += r.failures.len();
        }
    }
    ok(failures == 0, format!("{relations} relation checks over {points} points, {failures} failures"))
}

fn cabling_bijection() -> Result<Outcome> {
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 2..=6 {
        let all = Permutation::all(n);
        for i in 1..=n {
            for j in i + 1..=n {
                cases += 1;
                let image: Vec<Permutation> = Permutation::all(n - (j - i)).iter().map(|u| cabling(u, i, j, n)).collect::<Result<_>>()?;
                let distinct: BTreeSet<&Permutation> = image.iter().collect();
                let expected: BTreeSet<&Permutation> = all.iter().filter(|w| is_translation(w, i, j)).collect();
                if distinct.len() != image.len() || distinct != expected {
                    bad.push(format!("n={n} [{i},{j}]"));
                }
            }
        }
    }
    ok(bad.is_empty(), format!("{cases} intervals, failures: {bad:?}"))
}

fn rsk_proposition() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for n in [3, 4] {
        let r = rsk_crosscheck(n)?;
        passed &= r.passed && r.left_multiplication;
        parts.push(format!("n={n}: {} points, factor {}", r.points, r.factor.as_deref().unwrap_or("none")));
    }
    ok(passed, parts.join("; "))
}

fn alternating_image() -> Result<Outcome> {
    let shape = Partition::new(vec![2, 2, 1])?;
    let (tabs, group) = cactus_image(&shape)?;
    let order = group.order();
    let alt = group.contains_alternating();
    ok(tabs.len() == 5 && standard_tableaux(&shape).len() == 5 && order >= 60 && alt, format!("{} tableaux, order {order}, contains A_5: {alt}", tabs.len()))
}

fn braid_failure() -> Result<Outcome> {
    let r = braid_search(6, 4, None)?;
    let witness = r.witness.as_ref().map(|x| format!("t{} on {}", x.i, x.tableau)).unwrap_or_else(|| "none".into());
    ok(r.witness.is_some() && r.involution_failures == 0, format!("{} tableaux searched, involution failures {}, witness {witness}", r.searched, r.involution_failures))
}

fn mirabolic() -> Result<Outcome> {
    let mut words = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        for j in 1..=n {
            words += 1;
            if project_to_symmetric(&mc_s0j_word(j, n)?)? != Permutation::interval_reversal(n + 1, 0, j) {
                bad.push(format!("n={n} j={j}"));
            }
        }
    }
    let rel = relation_suite(GroupKind::MC, &[(1, vec![w(&[1]), w(&[2])], 3), (1, vec![w(&[1])], 4)])?;
    ok(bad.is_empty() && rel.passed, format!("{words} words projected, failures {bad:?}; MC: {}", rel.detail))
}

fn category_roundtrip() -> Result<Outcome> {
    let a1 = from_crystals(&a(1), &[w(&[0]), w(&[1]), w(&[2])])?;
    let a2 = from_crystals(&a(2), &[w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[1, 1])])?;
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, d, seed) in [("A1", &a1, 1), ("A2", &a2, 2)] {
        let r = roundtrip(d)?;
        let m = mutation_test(d, 100, seed)?;
        passed &= r.passed && m.passed;
        parts.push(format!(
            "{name}: roundtrip {} ({} differences, {} E points, {} X points), mutations {}/{} detected",
            if r.passed { "exact" } else { "failed" },
            r.differences.len(),
            r.summary.e_points,
            r.summary.x_points,
            m.detected,
            m.mutations
        ));
    }
    ok(passed, parts.join("; "))
}

fn decomposition() -> Result<Outcome> {
    let highest = |t: &CrystalGraph| -> Result<Vec<(Weight, usize)>> {
        let mut v: Vec<(Weight, usize)> = t.components()?.iter().map(|c| (t.weight(c.highest).clone(), c.elements.len())).collect();
        v.sort();
        Ok(v)
    };
    let b1 = CrystalGraph::irreducible(&a(1), &w(&[1]))?;
    let t1 = b1.tensor(&b1)?;
    let ok1 = highest(&t1)? == vec![(w(&[0]), 1), (w(&[2]), 3)];
    let (v, vd) = (CrystalGraph::irreducible(&a(2), &w(&[1, 0]))?, CrystalGraph::irreducible(&a(2), &w(&[0, 1]))?);
    let t2 = v.tensor(&vd)?;
    let ok2 = highest(&t2)? == vec![(w(&[0, 0]), 1), (w(&[1, 1]), 8)];
    let mut family: Vec<CrystalGraph> = (0..=3).map(|k| CrystalGraph::irreducible(&a(1), &w(&[k]))).collect::<Result<_>>()?;
    let a2: Vec<CrystalGraph> = [w(&[1, 0]), w(&[0, 1]), w(&[1, 1])].iter().map(|l| CrystalGraph::irreducible(&a(2), l)).collect::<Result<_>>()?;
    let mut products = 0;
    let mut normal = true;
    for fam in [&mut family, &mut a2.clone()] {
        for x in fam.iter() {
            for y in fam.iter() {
                products += 1;
                normal &= x.tensor(y)?.is_normal();
            }
        }
    }
    products += 1;
    normal &= CrystalGraph::tensor_all(&[&b1, &b1, &b1])?.is_normal();
    ok(ok1 && ok2 && normal, format!("A1 ω1⊗ω1 = B(2)+B(0): {ok1}; A2 ω1⊗ω2 = 8+1: {ok2}; {products} products normal: {normal}"))
}

type Criterion = (&'static str, u64, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("coboundary axioms", 60, coboundary_axioms),
        ("vC_n relation suite", 300, || {
            relation_suite(GroupKind::VC, &[(1, vec![w(&[1]), w(&[2])], 3), (1, vec![w(&[1]), w(&[2])], 4), (2, vec![w(&[1, 0]), w(&[0, 1])], 3)])
        }),
        ("cabling bijection", 30, cabling_bijection),
        ("RSK and Berenstein-Kirillov", 60, rsk_proposition),
        ("image on Tab(2,2,1)", 10, alternating_image),
        ("Bender-Knuth braid failure", 10, braid_failure),
        ("extended affine action", 120, || relation_suite(GroupKind::AC, &[(1, vec![w(&[1]), w(&[2])], 3), (1, vec![w(&[1]), w(&[2])], 4)])),
        ("mirabolic consistency", 30, mirabolic),
        ("category roundtrip and mutations", 120, category_roundtrip),
        ("normality and decomposition", 30, decomposition),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (passed, detail) = match result {
            Ok(o) => (o.passed && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += (!passed) as usize;
        println!(
            "[{}] {:>2}. {name}: {detail} ({:.2}s, limit {limit}s{})",
            if passed { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
