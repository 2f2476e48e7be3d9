//! `cactus`: crystals, cactus group actions, tableaux and category data
//! from the command line.

mod parse;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use cactus_core::actions::ActionContext;
use cactus_core::category::{from_crystals, mutation_test, roundtrip, CategoryData};
use cactus_core::commutor::commutor;
use cactus_core::groups::{defining_relations, project_to_symmetric, GroupKind, GroupWord};
use cactus_core::tableaux::{bender_knuth, braid_search, cactus_image, evacuation, partial_evacuation, rsk, rsk_crosscheck, rsk_inverse};
use cactus_core::{CartanData, CrystalGraph, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "cactus", version, about = "Crystals, cactus group actions, tableaux and coboundary category data")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Table)]
    emit: Emit,
    /// Write a DOT rendering to this file (crystal, tensor, commutor).
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Table,
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Cartan type, e.g. A2.
    #[arg(long = "type", default_value = "A1")]
    cartan: String,
}

impl TypeArg {
    fn cartan(&self) -> Result<CartanData> {
        CartanData::parse_type(&self.cartan)
    }
}

#[derive(Args, Debug)]
struct ActionArgs {
    /// Group kind: C, vC, MC or AC.
    #[arg(long)]
    kind: String,
    #[command(flatten)]
    cartan: TypeArg,
    /// Label weights, e.g. `1,1,1` in A1 or `"1,0 0,1"` in A2.
    #[arg(long)]
    weights: String,
    /// Expected number of labels.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The crystal B(λ), or an imported crystal graph.
    Crystal {
        #[command(flatten)]
        cartan: TypeArg,
        #[arg(long, required_unless_present = "import")]
        weight: Option<String>,
        /// Crystal graph JSON to import instead.
        #[arg(long)]
        import: Option<String>,
    },
    /// Decomposition of a tensor product of crystals.
    Tensor {
        #[command(flatten)]
        cartan: TypeArg,
        #[arg(long)]
        weights: String,
    },
    /// The crystal commutor B(left) ⊗ B(right) -> B(right) ⊗ B(left).
    Commutor {
        #[command(flatten)]
        cartan: TypeArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Cactus-type groups.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Applies a word to a point.
    Act {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        word: String,
        /// Entries of the point, in the order of the labels.
        #[arg(long)]
        point: String,
    },
    /// Checks every defining relation on every point.
    Verify {
        #[command(flatten)]
        action: ActionArgs,
    },
    /// The orbit of a point under all generators.
    Orbit {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        point: String,
    },
    /// The image of the cactus group on standard tableaux of a shape.
    Image {
        #[arg(long)]
        shape: String,
        /// Comma list of `order`, `contains-alternating`.
        #[arg(long, default_value = "order")]
        report: String,
    },
    /// RSK insertion of a permutation in one-line notation.
    Rsk {
        #[arg(long)]
        perm: String,
    },
    /// Evacuation of a tableau, or partial evacuation of its entries up to j.
    Evac {
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        partial: Option<usize>,
    },
    /// A Bender-Knuth involution, or a search for a braid relation failure.
    Bk {
        #[arg(long, required_unless_present = "search")]
        i: Option<usize>,
        #[arg(long, required_unless_present = "search")]
        tableau: Option<String>,
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 6)]
        max_cells: usize,
        #[arg(long, default_value_t = 4)]
        max_entry: usize,
        /// Visit candidates in a shuffled order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compares the action on standard points with RSK and the tableau action.
    Crosscheck {
        #[arg(long)]
        n: usize,
    },
    /// Coboundary category data.
    Category {
        #[command(subcommand)]
        op: CategoryOp,
    },
}

#[derive(Subcommand, Debug)]
enum GroupOp {
    /// Lists the defining relations.
    Relations {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
    },
    /// The image of a word in the symmetric group.
    Project {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum CategoryOp {
    /// Runs all axiom checks over the data's base colours.
    Validate {
        #[arg(long)]
        input: String,
    },
    /// Extracts data from crystals and writes it with `--output`.
    FromCrystals {
        #[command(flatten)]
        cartan: TypeArg,
        #[arg(long)]
        colours: String,
        /// File for the category data JSON.
        #[arg(long)]
        output: Option<String>,
    },
    /// Category -> covering -> category.
    Roundtrip {
        #[arg(long)]
        input: String,
    },
    /// Single-transposition mutations, each of which must fail validation.
    Mutate {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn context(a: &ActionArgs) -> Result<(GroupKind, ActionContext)> {
    let kind: GroupKind = a.kind.parse()?;
    let cartan = a.cartan.cartan()?;
    let labels = parse::weights(&cartan, &a.weights)?;
    if let Some(n) = a.n {
        if n != labels.len() {
            return Err(Error::InvalidPoint(format!("--n {n} but {} labels given", labels.len())));
        }
    }
    let mut ctx = ActionContext::new(cartan, labels)?;
    if let Ok(v) = std::env::var("CACTUS_CRYSTAL_MAX_POINTS") {
        let max = v.trim().parse().map_err(|_| Error::InvalidPoint(format!("CACTUS_CRYSTAL_MAX_POINTS={v}")))?;
        ctx = ctx.with_max_points(max);
    }
    Ok((kind, ctx))
}

fn labels_of(ws: &[cactus_core::Weight]) -> Vec<String> {
    ws.iter().map(|w| w.label()).collect()
}

fn components(t: &CrystalGraph) -> Result<Vec<serde_json::Value>> {
    let mut comps: Vec<(String, usize)> = t.components()?.iter().map(|c| (t.weight(c.highest).label(), c.elements.len())).collect();
    comps.sort();
    Ok(comps.into_iter().map(|(w, n)| json!({"highest_weight": w, "size": n})).collect())
}

fn load_category(path: &str) -> Result<CategoryData> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidCategory(format!("{path}: {e}")))?;
    CategoryData::from_json(&text)
}

fn run(cli: &Cli, r: &mut RunReport) -> Result<Option<String>> {
    let mut dot = None;
    match &cli.command {
        Command::Crystal { cartan, weight, import } => {
            let b = match import {
                Some(path) => CrystalGraph::import_json(&fs::read_to_string(path).map_err(|e| Error::InvalidCrystal(format!("{path}: {e}")))?)?,
                None => {
                    let c = cartan.cartan()?;
                    let w = parse::weight(&c, weight.as_deref().unwrap_or_default())?;
                    if !c.is_dominant(&w) {
                        return Err(Error::NotDominant(w.label()));
                    }
                    CrystalGraph::irreducible(&c, &w)?
                }
            };
            let mut character: BTreeMap<String, usize> = BTreeMap::new();
            for x in 0..b.len() {
                *character.entry(b.weight(x).label()).or_default() += 1;
            }
            r.set("size", b.len());
            r.set("highest", b.highest_elements());
            r.set("character", character);
            if cli.emit == Emit::Json {
                r.set("crystal", b.to_json());
            }
            let normal = b.is_normal();
            r.check("normal", normal, None);
            dot = Some(b.to_dot());
        }
        Command::Tensor { cartan, weights } => {
            let c = cartan.cartan()?;
            let ws = parse::weights(&c, weights)?;
            let factors = ws.iter().map(|w| CrystalGraph::irreducible(&c, w)).collect::<Result<Vec<_>>>()?;
            let t = CrystalGraph::tensor_all(&factors.iter().collect::<Vec<_>>())?;
            r.set("factors", labels_of(&ws));
            r.set("size", t.len());
            r.set("components", components(&t)?);
            r.check("normal", t.is_normal(), None);
            dot = Some(t.to_dot());
        }
        Command::Commutor { cartan, left, right } => {
            let c = cartan.cartan()?;
            let (x, y) = (parse::weight(&c, left)?, parse::weight(&c, right)?);
            let (bx, by) = (CrystalGraph::irreducible(&c, &x)?, CrystalGraph::irreducible(&c, &y)?);
            let s = commutor(&bx, &by)?;
            let back = commutor(&by, &bx)?;
            r.set("left", x.label());
            r.set("right", y.label());
            r.set("map", &s);
            r.check("involutive", back.compose(&s).is_identity(), None);
            r.check("morphism", s.is_morphism(&bx.tensor(&by)?, &by.tensor(&bx)?), None);
            let mut d = String::from("digraph commutor {\n  rankdir=LR;\n");
            for (a, b) in s.map().iter().enumerate() {
                d.push_str(&format!("  \"l{a}\" -> \"r{b}\";\n"));
            }
            d.push_str("}\n");
            dot = Some(d);
        }
        Command::Group { op } => match op {
            GroupOp::Relations { kind, n } => {
                let kind: GroupKind = kind.parse()?;
                let rels = defining_relations(kind, *n)?;
                r.set("kind", kind);
                r.set("n", n);
                r.set("count", rels.len());
                r.set("relations", rels.iter().map(|(a, b)| format!("{a} = {b}")).collect::<Vec<_>>());
            }
            GroupOp::Project { kind, n, word } => {
                let kind: GroupKind = kind.parse()?;
                let w = GroupWord::parse(kind, *n, word)?;
                r.set("word", w.to_string());
                r.set("permutation", project_to_symmetric(&w)?.one_line());
            }
        },
        Command::Act { action, word, point } => {
            let (kind, ctx) = context(action)?;
            let w = GroupWord::parse(kind, ctx.n(), word)?;
            let p = ctx.point(parse::entries(point)?)?;
            let image = ctx.act_word(&w, &p)?;
            r.set("word", w.to_string());
            r.set("point", p.to_string());
            r.set("image", image.to_string());
            r.set("image_labels", labels_of(&image.labels));
            r.set("image_entries", &image.entries);
        }
        Command::Verify { action } => {
            let (kind, ctx) = context(action)?;
            let rep = ctx.verify_relations(kind)?;
            r.set("kind", kind);
            r.set("labels", labels_of(ctx.labels()));
            r.set("relations", rep.relations);
            r.set("points", rep.points);
            r.set("failures", rep.failures.iter().take(10).collect::<Vec<_>>());
            let detail = (!rep.passed).then(|| format!("{} relations fail", rep.failures.len()));
            r.check("relations", rep.passed, detail);
        }
        Command::Orbit { action, point } => {
            let (kind, ctx) = context(action)?;
            let p = ctx.point(parse::entries(point)?)?;
            let gens = parse::all_generators(kind, ctx.n());
            let orbit = ctx.orbit(kind, &gens, &p)?;
            r.set("generators", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
            r.set("size", orbit.len());
            r.set("orbit", orbit.iter().map(|q| q.to_string()).collect::<Vec<_>>());
        }
        Command::Image { shape, report } => {
            let shape = parse::partition(shape)?;
            let (tabs, group) = cactus_image(&shape)?;
            r.set("shape", shape.parts());
            r.set("tableaux", tabs.len());
            for item in report.split(',').map(|s| s.trim()) {
                match item {
                    "order" => r.set("order", group.order() as u64),
                    "contains-alternating" => {
                        let alt = group.contains_alternating();
                        r.set("order", group.order() as u64);
                        r.set("contains_alternating", alt);
                        r.check("contains alternating group", alt, None);
                    }
                    other => return Err(Error::InvalidPoint(format!("unknown report item {other:?}"))),
                }
            }
        }
        Command::Rsk { perm } => {
            let w = parse::permutation(perm)?;
            let (p, q) = rsk(&w);
            r.check("inverse", rsk_inverse(&p, &q)? == w, None);
            r.set("P", &p);
            r.set("Q", &q);
        }
        Command::Evac { tableau, partial } => {
            let t = parse::tableau(tableau)?;
            let e = match partial {
                Some(j) => partial_evacuation(*j, &t)?,
                None => evacuation(&t)?,
            };
            let back = match partial {
                Some(j) => partial_evacuation(*j, &e)?,
                None => evacuation(&e)?,
            };
            r.set("tableau", &t);
            r.set("image", &e);
            r.check("involution", back == t, None);
        }
        Command::Bk { i, tableau, search, max_cells, max_entry, seed } => {
            if *search {
                let rep = braid_search(*max_cells, *max_entry, *seed)?;
                r.check("involutions", rep.involution_failures == 0, None);
                r.check("braid relation fails", rep.witness.is_some(), None);
                r.extend(rep);
            } else {
                let t = parse::tableau(tableau.as_deref().unwrap_or_default())?;
                let i = i.unwrap_or_default();
                let image = bender_knuth(i, &t)?;
                r.check("involution", bender_knuth(i, &image)? == t, None);
                r.set("tableau", &t);
                r.set("image", &image);
            }
        }
        Command::Crosscheck { n } => {
            let rep = rsk_crosscheck(*n)?;
            r.check("crosscheck", rep.passed, rep.factor.as_ref().map(|f| format!("acts on {f}")));
            r.extend(rep);
        }
        Command::Category { op } => match op {
            CategoryOp::Validate { input } => {
                let d = load_category(input)?;
                let rep = d.validate();
                for a in &rep.axioms {
                    r.check(&a.axiom, a.failures == 0, Some(format!("{} instances, {} failures", a.instances, a.failures)));
                }
                r.extend(rep);
            }
            CategoryOp::FromCrystals { cartan, colours, output } => {
                let c = cartan.cartan()?;
                let d = from_crystals(&c, &parse::weights(&c, colours)?)?;
                if let Some(path) = output {
                    fs::write(path, d.to_json()?).map_err(|e| Error::InvalidCategory(format!("{path}: {e}")))?;
                }
                let rep = d.validate();
                r.set("colours", d.colours());
                r.set("base", d.base().iter().map(|&c| d.colour_name(c)).collect::<Vec<_>>());
                r.set("multiplicity_pairs", d.mult_pairs().count());
                r.set("commutor_pairs", d.commutor_pairs().count());
                r.set("associator_triples", d.assoc_triples().count());
                if cli.emit == Emit::Json && output.is_none() {
                    r.set("data", serde_json::from_str::<serde_json::Value>(&d.to_json()?)?);
                }
                r.check("validate", rep.passed, Some(format!("{} failures", rep.failure_count())));
            }
            CategoryOp::Roundtrip { input } => {
                let d = load_category(input)?;
                let rep = roundtrip(&d)?;
                r.check("identity on all sets", rep.differences.is_empty(), rep.differences.first().cloned());
                r.check("covering reproduced", rep.fibres_reproduced, None);
                for c in &rep.checks {
                    r.check(&c.name, c.failures == 0, c.first_failure.clone());
                }
                r.extend(rep);
            }
            CategoryOp::Mutate { input, count, seed } => {
                let d = load_category(input)?;
                let rep = mutation_test(&d, *count, *seed)?;
                r.check("mutations detected", rep.passed, Some(format!("{}/{}", rep.detected, rep.mutations)));
                r.extend(rep);
            }
        },
    }
    Ok(dot)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut report = RunReport::new(argv[1..].to_vec());
    let dot = match run(&cli, &mut report) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    report.duration = start.elapsed();
    if let (Some(path), Some(d)) = (&cli.out, &dot) {
        if let Err(e) = fs::write(path, d) {
            eprintln!("error: {path}: {e}");
            return ExitCode::from(2);
        }
    }
    match cli.emit {
        Emit::Json => println!("{}", serde_json::to_string(&report.to_json()).expect("report serializes")),
        Emit::Dot => match &dot {
            Some(d) => print!("{d}"),
            None => {
                eprintln!("error: this command has no DOT rendering");
                return ExitCode::from(2);
            }
        },
        Emit::Table => print!("{}", report.to_table()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
