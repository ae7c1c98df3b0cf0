//! Command dispatch for the `toric-gale` binary.
//!
//! Every command reads JSON inputs and writes one JSON document. Exit codes:
//! 0 computed, 1 negative answer to a yes/no check, 2 input error, 3 cap
//! exceeded.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use toric_gale::abelian::{is_admissible, Admissibility};
use toric_gale::classify::{
    build_maximal_fan, classify_pair, enumerate_connected_gsets, gset_from_subfan,
    is_big_open_subfan, is_connected_gset, semisimple_shape, subfan_from_gset,
};
use toric_gale::fans::{
    he_connected_pairs, is_strongly_regular, is_suitable, one_skeleton_strongly_regular,
    root_exists_connecting, roots_in_box, validate_fan,
};
use toric_gale::gale::{
    canonical_form, inverse_gale_transform, lattice_gale_transform, linear_gale_transform,
    pairs_equivalent,
};
use toric_gale::io::{self, FanJson};
use toric_gale::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toric-gale", version, about = "Gale duality for toric fans and admissible collections")]
pub struct Cli {
    /// Run the built-in example fixtures and report pass/fail per fixture.
    #[arg(long)]
    pub fixtures: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice and linear Gale transforms.
    #[command(subcommand)]
    Gale(GaleCmd),
    /// Yes/no checks; exit 1 on a negative answer.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Maximal fans and Demazure roots.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Families of generating subcollections.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Classification reports.
    #[command(subcommand)]
    Classify(ClassifyCmd),
}

/// One JSON input: a file path, or `-` for standard input.
#[derive(Args, Debug)]
pub struct Input {
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum GaleCmd {
    /// Configuration -> pair (P, A).
    Transform(Input),
    /// Pair -> configuration.
    Inverse(Input),
    /// Configuration -> rational Gale vectors.
    Linear(Input),
    /// Configuration -> canonical representative up to lattice automorphism.
    Canonical(Input),
    /// Are two pairs equivalent?
    Equivalent { first: String, second: String },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Pair: generating, and each element reachable from the others.
    Admissible(Input),
    /// Configuration: each vector has a separating covector.
    Suitable(Input),
    /// Fan: every fan axiom.
    Fan(Input),
    /// Fan: every nonzero cone connected with a facet by a root.
    StronglyRegular(Input),
    /// Configuration: the fan of its rays and the zero cone.
    OneSkeleton(Input),
}

#[derive(Subcommand, Debug)]
pub enum FanCmd {
    /// Pair -> maximal strongly regular fan.
    BuildMax(Input),
    /// Fan -> every root with coordinates bounded by B.
    Roots {
        input: String,
        #[arg(long)]
        bound: u64,
    },
    /// Fan, cone and facet (1-based JSON arrays) -> connecting root.
    Connect { input: String, sigma: String, tau: String },
    /// Fan and root -> pairs (facet, cone) joined by the root.
    HePairs { input: String, root: String },
}

#[derive(Subcommand, Debug)]
pub enum GsetCmd {
    /// G-set: conditions (C1)-(C3).
    Check(Input),
    /// G-set -> fan on the inverse Gale rays.
    ToFan(Input),
    /// Fan and pair -> G-set.
    FromFan { fan: String, pair: String },
    /// Pair -> every connected G-set.
    Enumerate(Input),
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    /// Pair -> classification report.
    Pair(Input),
    /// Pair -> value groups and the semisimple shape test.
    Semisimple(Input),
    /// Fan and maximal fan: same rays and contained.
    BigOpen { fan: String, maximal: String },
}

/// Exit code and standard output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::InvalidGroup(_) => "invalid_group",
        Error::OwnerMismatch => "owner_mismatch",
        Error::ZeroVector { .. } => "zero_vector",
        Error::DegenerateConfiguration { .. } => "degenerate_configuration",
        Error::NotGenerating => "not_generating",
        Error::NotAdmissible { .. } => "not_admissible",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::IndexOverlap { .. } => "index_overlap",
        Error::NotSimplicial { .. } => "not_simplicial",
        Error::NotAFacet { .. } => "not_a_facet",
        Error::InvalidFan(_) => "invalid_fan",
        Error::InvalidRoot(_) => "invalid_root",
        Error::InvalidGSet(_) => "invalid_gset",
        Error::ConfigurationMismatch => "configuration_mismatch",
        Error::NotSubfan { .. } => "not_subfan",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::SearchBudgetExhausted { .. } => "search_budget_exhausted",
        Error::Inconsistent(_) => "inconsistent",
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::CapExceeded { .. } | Error::SearchBudgetExhausted { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    };
    Outcome {
        code,
        stdout: io::render(&json!({"error": error_kind(e), "message": e.to_string()})),
    }
}

fn read_path(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    }
}

/// Parses the arguments and runs the command, reading inputs from files.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                },
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: io::render(&json!({"error": "usage", "message": e.to_string()})),
                },
            };
        }
    };
    if cli.fixtures {
        return run_fixtures();
    }
    match cli.command {
        Some(cmd) => run(&cmd, &mut read_path),
        None => Outcome {
            code: EXIT_INPUT,
            stdout: io::render(&json!({"error": "usage", "message": "no command given"})),
        },
    }
}

/// Runs a parsed command; `load` turns an input argument into JSON text.
pub fn run(cmd: &Command, load: &mut dyn FnMut(&str) -> Result<String>) -> Outcome {
    match execute(cmd, load) {
        Ok((positive, value)) => Outcome {
            code: if positive { EXIT_OK } else { EXIT_NEGATIVE },
            stdout: io::render(&value),
        },
        Err(e) => error_outcome(&e),
    }
}

type Loader<'a> = &'a mut dyn FnMut(&str) -> Result<String>;

fn load_pair(load: Loader, path: &str) -> Result<toric_gale::abelian::ElementCollection> {
    io::decode_pair(io::parse(&load(path)?)?)
}

fn load_config(load: Loader, path: &str) -> Result<toric_gale::fans::VectorConfiguration> {
    io::decode_config(io::parse(&load(path)?)?)
}

fn load_fan(load: Loader, path: &str) -> Result<toric_gale::fans::SimplicialFan> {
    io::decode_fan(io::parse::<FanJson>(&load(path)?)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn execute(cmd: &Command, load: Loader) -> Result<(bool, Value)> {
    Ok(match cmd {
        Command::Gale(g) => match g {
            GaleCmd::Transform(i) => {
                let c = load_config(load, &i.input)?;
                (true, to_value(&io::encode_pair(&lattice_gale_transform(&c))))
            }
            GaleCmd::Inverse(i) => {
                let p = load_pair(load, &i.input)?;
                (true, to_value(&io::encode_config(&inverse_gale_transform(&p)?)))
            }
            GaleCmd::Linear(i) => {
                let c = load_config(load, &i.input)?;
                (true, to_value(&io::encode_linear_gale(&linear_gale_transform(&c)?)))
            }
            GaleCmd::Canonical(i) => {
                let c = load_config(load, &i.input)?;
                (true, to_value(&io::encode_config(&canonical_form(&c))))
            }
            GaleCmd::Equivalent { first, second } => {
                let a = load_pair(load, first)?;
                let b = load_pair(load, second)?;
                let eq = pairs_equivalent(&a, &b)?;
                (eq, json!({ "equivalent": eq }))
            }
        },
        Command::Check(c) => match c {
            CheckCmd::Admissible(i) => {
                let p = load_pair(load, &i.input)?;
                match is_admissible(&p)? {
                    Admissibility::Admissible => (true, json!({ "admissible": true })),
                    Admissibility::NotGenerating => (
                        false,
                        json!({ "admissible": false, "reason": "not_generating" }),
                    ),
                    Admissibility::Unreachable { index } => (
                        false,
                        json!({ "admissible": false, "reason": "unreachable", "failing_index": index + 1 }),
                    ),
                }
            }
            CheckCmd::Suitable(i) => {
                let cfg = load_config(load, &i.input)?;
                let s = is_suitable(&cfg)?;
                let witnesses: Vec<Value> = s
                    .witnesses
                    .iter()
                    .map(|w| match w {
                        Some(e) => to_value(&e.iter().cloned().map(io::JsonInt).collect::<Vec<_>>()),
                        None => Value::Null,
                    })
                    .collect();
                let mut out = json!({ "suitable": s.is_suitable(), "witnesses": witnesses });
                if let Some(i) = s.first_failure() {
                    out["failing_index"] = json!(i + 1);
                }
                (s.is_suitable(), out)
            }
            CheckCmd::Fan(i) => {
                let fan = load_fan(load, &i.input)?;
                let report = validate_fan(&fan)?;
                let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                (report.is_valid(), json!({ "valid": report.is_valid(), "violations": violations }))
            }
            CheckCmd::StronglyRegular(i) => {
                let fan = load_fan(load, &i.input)?;
                let s = is_strongly_regular(&fan)?;
                let certificates: Vec<Value> = s
                    .certificates
                    .iter()
                    .map(|c| {
                        json!({
                            "cone": io::encode_index_set(c.cone),
                            "facet": io::encode_index_set(c.facet),
                            "root": to_value(&io::encode_root(&c.root)),
                        })
                    })
                    .collect();
                let mut out = json!({
                    "strongly_regular": s.is_strongly_regular(),
                    "certificates": certificates,
                });
                if let Some(c) = s.failing_cone {
                    out["failing_cone"] = json!(io::encode_index_set(c));
                }
                (s.is_strongly_regular(), out)
            }
            CheckCmd::OneSkeleton(i) => {
                let cfg = load_config(load, &i.input)?;
                let ok = one_skeleton_strongly_regular(&cfg)?;
                (ok, json!({ "strongly_regular": ok }))
            }
        },
        Command::Fan(f) => match f {
            FanCmd::BuildMax(i) => {
                let p = load_pair(load, &i.input)?;
                (true, to_value(&io::encode_fan(&build_maximal_fan(&p)?)))
            }
            FanCmd::Roots { input, bound } => {
                let fan = load_fan(load, input)?;
                if *bound == 0 {
                    return Err(Error::Parse("--bound must be at least 1".into()));
                }
                let roots: Vec<Value> = roots_in_box(&fan, *bound)?
                    .iter()
                    .map(|r| to_value(&io::encode_root(r)))
                    .collect();
                (true, Value::Array(roots))
            }
            FanCmd::Connect { input, sigma, tau } => {
                let fan = load_fan(load, input)?;
                let r = fan.num_rays();
                let sigma = io::decode_index_set(&io::parse::<Vec<usize>>(sigma)?, r)?;
                let tau = io::decode_index_set(&io::parse::<Vec<usize>>(tau)?, r)?;
                match root_exists_connecting(&fan, sigma, tau)? {
                    Some(root) => (true, json!({ "connected": true, "root": to_value(&io::encode_root(&root)) })),
                    None => (false, json!({ "connected": false })),
                }
            }
            FanCmd::HePairs { input, root } => {
                let fan = load_fan(load, input)?;
                let root = io::decode_root(io::parse(&load(root)?)?)?;
                let pairs: Vec<Value> = he_connected_pairs(&fan, &root)?
                    .into_iter()
                    .map(|(facet, cone)| {
                        json!({ "facet": io::encode_index_set(facet), "cone": io::encode_index_set(cone) })
                    })
                    .collect();
                (true, Value::Array(pairs))
            }
        },
        Command::Gset(g) => match g {
            GsetCmd::Check(i) => {
                let gset = io::decode_gset(io::parse(&load(&i.input)?)?)?;
                let c = is_connected_gset(&gset)?;
                let mut out = json!({ "connected": c.is_connected() });
                if !c.is_connected() {
                    out["violation"] = json!(c.to_string());
                }
                (c.is_connected(), out)
            }
            GsetCmd::ToFan(i) => {
                let gset = io::decode_gset(io::parse(&load(&i.input)?)?)?;
                let rays = inverse_gale_transform(gset.collection())?;
                (true, to_value(&io::encode_fan(&subfan_from_gset(&gset, &rays)?)))
            }
            GsetCmd::FromFan { fan, pair } => {
                let fan = load_fan(load, fan)?;
                let p = load_pair(load, pair)?;
                (true, to_value(&io::encode_gset(&gset_from_subfan(&fan, &p)?)))
            }
            GsetCmd::Enumerate(i) => {
                let p = load_pair(load, &i.input)?;
                let all: Vec<Value> = enumerate_connected_gsets(&p)?
                    .iter()
                    .map(|g| json!(g.members().iter().map(|m| io::encode_index_set(*m)).collect::<Vec<_>>()))
                    .collect();
                (true, Value::Array(all))
            }
        },
        Command::Classify(c) => match c {
            ClassifyCmd::Pair(i) => {
                let p = load_pair(load, &i.input)?;
                (true, to_value(&io::encode_report(&classify_pair(&p)?)))
            }
            ClassifyCmd::Semisimple(i) => {
                let p = load_pair(load, &i.input)?;
                (true, to_value(&io::encode_shape(&semisimple_shape(&p)?)))
            }
            ClassifyCmd::BigOpen { fan, maximal } => {
                let f = load_fan(load, fan)?;
                let m = load_fan(load, maximal)?;
                let ok = is_big_open_subfan(&f, &m)?;
                (ok, json!({ "big_open": ok }))
            }
        },
    })
}

/// A stored invocation: arguments after the program name, inline inputs
/// referenced as `@0`, `@1`, ..., and the expected result.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub inputs: Vec<Value>,
    pub exit: i32,
    pub expect: Value,
}

pub const FIXTURES: &[(&str, &str)] = &[
    ("gale_transform_z2", include_str!("../fixtures/gale_transform_z2.json")),
    ("gale_linear_z2", include_str!("../fixtures/gale_linear_z2.json")),
    ("gale_inverse_p2", include_str!("../fixtures/gale_inverse_p2.json")),
    ("build_max_p2", include_str!("../fixtures/build_max_p2.json")),
    ("build_max_z3_regular_locus", include_str!("../fixtures/build_max_z3_regular_locus.json")),
    ("build_max_affine_plane", include_str!("../fixtures/build_max_affine_plane.json")),
    ("admissible_single_one", include_str!("../fixtures/admissible_single_one.json")),
    ("admissible_z2_pair", include_str!("../fixtures/admissible_z2_pair.json")),
    ("suitable_sign_contradiction", include_str!("../fixtures/suitable_sign_contradiction.json")),
    ("strongly_regular_p2_skeleton", include_str!("../fixtures/strongly_regular_p2_skeleton.json")),
    ("one_skeleton_p1", include_str!("../fixtures/one_skeleton_p1.json")),
    ("connect_p2", include_str!("../fixtures/connect_p2.json")),
    ("roots_p1", include_str!("../fixtures/roots_p1.json")),
    ("gset_p2_skeleton", include_str!("../fixtures/gset_p2_skeleton.json")),
    ("classify_p1_times_p2", include_str!("../fixtures/classify_p1_times_p2.json")),
    ("classify_weighted_projective", include_str!("../fixtures/classify_weighted_projective.json")),
    ("semisimple_elementary_two_group", include_str!("../fixtures/semisimple_elementary_two_group.json")),
    ("malformed_input", include_str!("../fixtures/malformed_input.json")),
];

/// Runs one fixture and returns what it produced.
pub fn run_fixture(f: &Fixture) -> Outcome {
    let mut argv = vec!["toric-gale".to_string()];
    argv.extend(f.args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: EXIT_INPUT,
                stdout: io::render(&json!({"error": "usage", "message": e.to_string()})),
            }
        }
    };
    let Some(cmd) = cli.command else {
        return Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
        };
    };
    let inputs = &f.inputs;
    let mut load = |arg: &str| -> Result<String> {
        let k: usize = arg
            .strip_prefix('@')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("fixture input reference {arg:?}")))?;
        let v = inputs
            .get(k)
            .ok_or_else(|| Error::Parse(format!("fixture input {k} missing")))?;
        // raw strings stand for unparsed text, e.g. malformed JSON
        Ok(match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    };
    run(&cmd, &mut load)
}

/// Does the outcome match the fixture? Error outputs are compared on their
/// `error` field only.
pub fn fixture_passes(f: &Fixture, out: &Outcome) -> bool {
    if out.code != f.exit {
        return false;
    }
    let Ok(got) = serde_json::from_str::<Value>(&out.stdout) else {
        return false;
    };
    if f.exit == EXIT_INPUT || f.exit == EXIT_CAP {
        return got.get("error") == f.expect.get("error");
    }
    got == f.expect
}

pub fn run_fixtures() -> Outcome {
    let mut lines = Vec::new();
    let mut failed = 0;
    for (name, text) in FIXTURES {
        let ok = match serde_json::from_str::<Fixture>(text) {
            Ok(f) => fixture_passes(&f, &run_fixture(&f)),
            Err(_) => false,
        };
        if !ok {
            failed += 1;
        }
        lines.push(format!("{} {name}", if ok { "PASS" } else { "FAIL" }));
    }
    lines.push(format!("{} of {} fixtures passed", FIXTURES.len() - failed, FIXTURES.len()));
    Outcome {
        code: if failed == 0 { EXIT_OK } else { EXIT_NEGATIVE },
        stdout: lines.join("\n") + "\n",
    }
}
