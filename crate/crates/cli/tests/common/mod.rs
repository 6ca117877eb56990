//! Fixture corpus shared by the CLI tests and the acceptance run.
//!
//! Inputs are built with the library writer; derived files are whatever the
//! `linkhom` binary produces from them. `UPDATE_FIXTURES=1` rewrites the
//! directory instead of comparing against it.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linkhom::artifact::{self, Artifact};
use linkhom::diskledger::{DiskKind, DiskRecord};
use linkhom::kirk::{make_kirk, JkInput};
use linkhom::{LaurentPoly, PairRecord, Presentation, SphereClass, ZPoly};

pub const BIN: &str = env!("CARGO_BIN_EXE_linkhom");

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixture_dir().join(name)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

pub fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

/// f₂ = S_{A⁺₁} with one self-intersection: the Fenn–Rolfsen link map.
pub fn fenn_rolfsen() -> Presentation {
    let f2 = SphereClass::from_pm(vec![LaurentPoly::one()], vec![LaurentPoly::zero()]).unwrap();
    Presentation::new(vec![PairRecord::new(1, 1)], f2).unwrap()
}

/// f₂ = −(1 − x)·S_{W₁} + z·S_{A₁}: trivial invariants, but the Whitney
/// pairing is not divisible by z, so an isometry is needed.
pub fn whitney_example() -> Presentation {
    let a = -&LaurentPoly::one_minus_x();
    let f2 = SphereClass::from_wa(vec![a], vec![LaurentPoly::z()]).unwrap();
    Presentation::new(vec![PairRecord::new(1, 0)], f2).unwrap()
}

pub fn inputs() -> Vec<(&'static str, Artifact)> {
    let z2 = LaurentPoly::z().pow(2);
    vec![
        ("laurent_z_squared.json", Artifact::Laurent(z2)),
        (
            "laurent_asymmetric.json",
            Artifact::Laurent(lp(&[(0, 1), (2, -1), (5, 3)])),
        ),
        (
            "zpoly.json",
            Artifact::Zpoly(ZPoly::from_ints(&[0, 1, -2, 3])),
        ),
        (
            "kirk_pair.json",
            Artifact::KirkPair(
                make_kirk(
                    ZPoly::from_ints(&[0, 1, -2]),
                    ZPoly::from_ints(&[0, 1, 0, 5]),
                )
                .unwrap(),
            ),
        ),
        (
            "jk_input.json",
            Artifact::JkInput(JkInput::from_ints(&[1, 2], &[1, -1])),
        ),
        ("fenn_rolfsen.json", Artifact::Presentation(fenn_rolfsen())),
        (
            "whitney_example.json",
            Artifact::Presentation(whitney_example()),
        ),
        (
            "disk_record.json",
            Artifact::DiskRecord(DiskRecord::new(
                DiskKind::Whitney,
                lp(&[(0, 2), (1, -3), (-2, 1)]),
                -1,
            )),
        ),
    ]
}

/// Output file and the command line producing it, `{in}`-relative names
/// resolved against the fixture directory.
pub fn derived() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        (
            "fenn_rolfsen.invariants.json",
            vec!["invariants", "fenn_rolfsen.json"],
        ),
        (
            "fenn_rolfsen.verdict.json",
            vec!["classify", "fenn_rolfsen.json"],
        ),
        (
            "whitney_example.verdict.json",
            vec!["classify", "whitney_example.json"],
        ),
        (
            "whitney_example.witness.json",
            vec!["isometry", "whitney_example.json"],
        ),
        (
            "whitney_example.certificate.json",
            vec![
                "classify",
                "whitney_example.json",
                "-o",
                "/dev/null",
                "--certificate",
                "-",
            ],
        ),
        ("kirk_pair.realized.json", vec!["realize", "kirk_pair.json"]),
        ("jk_input.kirk.json", vec!["jk", "jk_input.json"]),
        (
            "laurent_z_squared.expansion.json",
            vec![
                "expand",
                "laurent_z_squared.json",
                "--depth",
                "6",
                "--k",
                "2",
            ],
        ),
        (
            "laurent_asymmetric.expansion.json",
            vec!["expand", "laurent_asymmetric.json", "--depth", "4"],
        ),
    ]
}

/// Runs a derivation from inside the fixture directory.
pub fn derive(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(fixture_dir())
        .output()
        .expect("binary runs")
}

/// Brings the fixture directory up to date when asked, then returns every
/// fixture file name.
pub fn corpus() -> Vec<String> {
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        for (name, a) in inputs() {
            fs::write(fixture(name), artifact::write(&a)).unwrap();
        }
        for (name, args) in derived() {
            let out = derive(&args);
            assert!(
                out.status.success(),
                "{name}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            fs::write(fixture(name), &out.stdout).unwrap();
        }
    }
    let mut names: Vec<String> = inputs()
        .into_iter()
        .map(|(n, _)| n.to_string())
        .chain(derived().into_iter().map(|(n, _)| n.to_string()))
        .collect();
    names.sort();
    names
}

/// Files with recomputable content, so that any single-entry change is
/// inconsistent with the rest of the file.
pub const CORRUPTIBLE: &[&str] = &[
    "fenn_rolfsen.invariants.json",
    "fenn_rolfsen.verdict.json",
    "whitney_example.witness.json",
    "whitney_example.certificate.json",
    "laurent_z_squared.expansion.json",
    "laurent_asymmetric.expansion.json",
];

/// JSON pointers of every computed integer leaf. The schema version and the
/// embedded inputs (`presentation`, `poly`) are excluded: changing an input
/// yields a different but equally consistent file.
pub fn integer_leaves(v: &serde_json::Value) -> Vec<String> {
    fn walk(v: &serde_json::Value, path: String, out: &mut Vec<String>) {
        match v {
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => out.push(path),
            serde_json::Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    walk(item, format!("{path}/{i}"), out);
                }
            }
            serde_json::Value::Object(map) => {
                for (k, item) in map {
                    if !(path.is_empty() && matches!(k.as_str(), "v" | "presentation" | "poly")) {
                        walk(item, format!("{path}/{k}"), out);
                    }
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

/// The `seed`-th corruption: one integer entry of one corruptible fixture
/// moved by ±1. Returns the file, the pointer and the corrupted text.
pub fn corruption(seed: u64) -> (String, String, String) {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let name = *CORRUPTIBLE.choose(&mut rng).unwrap();
    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
    let leaves = integer_leaves(&value);
    let pointer = leaves.choose(&mut rng).unwrap().clone();
    let delta: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let slot = value.pointer_mut(&pointer).unwrap();
    let old = slot.as_i64().unwrap();
    // unsigned fields stay non-negative
    let new = if old == 0 && slot.is_u64() {
        1
    } else {
        old + delta
    };
    *slot = serde_json::Value::from(new);
    (
        name.to_string(),
        pointer,
        serde_json::to_string_pretty(&value).unwrap(),
    )
}
