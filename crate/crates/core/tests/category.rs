use cactus_core::actions::{ActionContext, LabeledPoint};
use cactus_core::category::{category_from_covering, covering_from_category, from_crystals, mutate, mutation_test, roundtrip, CategoryData, Mutation, PhiKey};
use cactus_core::crystal::split_id;
use cactus_core::groups::{Generator, GroupKind};
use cactus_core::{CartanData, Permutation, Weight};

fn a1_data() -> CategoryData {
    from_crystals(&CartanData::type_a(1).unwrap(), &[Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]).unwrap()
}

fn a2_data() -> CategoryData {
    let ws = [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
    from_crystals(&CartanData::type_a(2).unwrap(), &ws.map(Weight)).unwrap()
}

#[test]
fn a1_data_validates() {
    let d = a1_data();
    let r = d.validate();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.axioms.len(), 6);
    assert!(r.axioms.iter().all(|a| a.instances > 0));
}

#[test]
fn a2_dual_pair_validates() {
    let d = from_crystals(&CartanData::type_a(2).unwrap(), &[Weight(vec![1, 0]), Weight(vec![0, 1])]).unwrap();
    assert!(d.validate().passed);
}

#[test]
fn json_roundtrip_of_crystal_data() {
    let d = a1_data();
    let back = CategoryData::from_json(&d.to_json().unwrap()).unwrap();
    assert!(d.diff(&back).is_empty());
    assert_eq!(back, d);
}

#[test]
fn block_swap_in_commutor_is_caught() {
    // Exchange the images of a point in the B(2) block and the point b1 ⊗ b0
    // spanning the trivial block of B(1) ⊗ B(1).
    let d = a1_data();
    let one = d.colour_index("1").unwrap();
    let zero = d.colour_index("0").unwrap();
    let two = d.colour_index("2").unwrap();
    let phi = d.phi(one, one).unwrap();
    let trivial = phi[&PhiKey { mu: zero, l: 0, c: 0 }];
    let in_two = phi[&PhiKey { mu: two, l: 0, c: 1 }];
    let keys: Vec<(usize, usize)> = d.commutor(one, one).unwrap().keys().copied().collect();
    let m = Mutation {
        map: "commutor".into(),
        colours: vec![one, one],
        first: keys.iter().position(|&k| k == trivial).unwrap(),
        second: keys.iter().position(|&k| k == in_two).unwrap(),
    };
    let r = mutate(&d, &m).unwrap().validate();
    assert!(!r.passed);
    assert!(r.failures.iter().any(|f| f.axiom == "involutivity" || f.axiom == "hexagon" || f.axiom == "naturality"));
}

#[test]
fn mutations_are_detected() {
    let r = mutation_test(&a1_data(), 40, 7).unwrap();
    assert!(r.passed, "{:?}", r.undetected);
    assert_eq!(r.detected, 40);
}

#[test]
fn a1_two_point_fibre() {
    let d = from_crystals(&CartanData::type_a(1).unwrap(), &[Weight(vec![1])]).unwrap();
    let one = d.colour_index("1").unwrap();
    let fs = covering_from_category(&d).unwrap();
    assert_eq!(fs.e_fibres[&vec![one, one]].len(), 4);
    let act = |g: &str| fs.e_actions.iter().find(|a| a.generator == g && a.source == vec![one, one]).unwrap().map.clone();
    // s12 fixes every point; w1 swaps the two factors.
    assert_eq!(act("s12"), vec![0, 1, 2, 3]);
    assert_eq!(act("w1"), vec![0, 2, 1, 3]);
}

#[test]
fn beta0_matches_phi() {
    let d = a1_data();
    let fs = covering_from_category(&d).unwrap();
    for ((x, y), phi) in d.phi_pairs().map(|p| (p, d.phi(p.0, p.1).unwrap())) {
        let transport = &fs.e2_transport[&vec![x, y]];
        let beta0 = fs.gluings.iter().find(|g| g.name == "beta0_zero" && g.labels == vec![x, y]).unwrap();
        let ny = d.set(y).len();
        for &((mu, c, l), z) in &beta0.map {
            let (c1, c2) = phi[&PhiKey { mu: mu.unwrap(), l, c }];
            assert_eq!(transport[z], c1 * ny + c2);
        }
    }
}

#[test]
fn cactus_on_fibres_matches_crystal_action() {
    let cartan = CartanData::type_a(1).unwrap();
    let d = a1_data();
    let fs = covering_from_category(&d).unwrap();
    let weight = |c: usize| Weight(vec![d.colour_name(c).parse().unwrap()]);
    let mut checked = 0;
    for a in fs.e_actions.iter().filter(|a| a.source.len() == 3) {
        let labels: Vec<Weight> = a.source.iter().map(|&c| weight(c)).collect();
        let ctx = ActionContext::new(cartan.clone(), labels.clone()).unwrap();
        let sizes: Vec<usize> = a.source.iter().map(|&c| d.set(c).len()).collect();
        let tsizes: Vec<usize> = a.target.iter().map(|&c| d.set(c).len()).collect();
        let gen = if let Some(i) = a.generator.strip_prefix('w') {
            let i: usize = i.parse().unwrap();
            Generator::Perm(Permutation::transposition(3, i - 1, i))
        } else {
            let ij: Vec<usize> = a.generator[1..].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            Generator::Cactus(ij[0], ij[1])
        };
        for (p, &q) in a.map.iter().enumerate() {
            let point = LabeledPoint { labels: labels.clone(), entries: split_id(p, &sizes) };
            let image = ctx.act(GroupKind::VC, &gen, &point).unwrap();
            assert_eq!(image.entries, split_id(q, &tsizes), "{} on {point}", a.generator);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn covering_checks_pass() {
    let fs = covering_from_category(&a1_data()).unwrap();
    for c in fs.check() {
        assert_eq!(c.failures, 0, "{}: {:?}", c.name, c.first_failure);
        assert!(c.instances > 0, "{}", c.name);
    }
}

#[test]
fn a1_roundtrip() {
    let d = a1_data();
    let r = roundtrip(&d).unwrap();
    assert!(r.passed, "{r:?}");
    let back = category_from_covering(&covering_from_category(&d).unwrap()).unwrap();
    assert_eq!(back, d);
}

#[test]
fn a2_roundtrip() {
    let r = roundtrip(&a2_data()).unwrap();
    assert!(r.passed, "{:?} {:?}", r.differences, r.checks);
}

#[test]
fn invalid_data_has_no_covering() {
    let d = a1_data();
    let one = d.colour_index("1").unwrap();
    let m = Mutation { map: "commutor".into(), colours: vec![one, one], first: 0, second: 3 };
    assert!(covering_from_category(&mutate(&d, &m).unwrap()).is_err());
}
