//! Versioned JSON artifact files.
//!
//! Every file is one object carrying `"v": 1` and a `"type"` tag followed by
//! the payload fields. Writing is canonical (pretty-printed, trailing
//! newline), so write → read → write is byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::diskledger::{multiplicities, pair_expansions, DiskRecord};
use crate::json::{JsonInt, SCHEMA_VERSION};
use crate::kirk::{jk_kirk, JkInput, KirkPair};
use crate::laurent::{IAdicOrder, LaurentPoly, ZPoly};
use crate::realize::{invariants_of, realization_checks, Presentation};
use crate::report::Check;
use crate::unlink::{
    verify_certificate, verify_verdict, verify_witness_for, IsometryWitness, UnlinkCertificate,
    Verdict,
};

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing or malformed header: {0}")]
    Header(String),
}

/// Per-pair multiplicity row of an invariants report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub pair: usize,
    pub sign: i8,
    pub m: u64,
    pub m_plus: JsonInt,
    pub n_plus: JsonInt,
    pub m_minus: JsonInt,
    pub n_minus: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub presentation: Presentation,
    pub kirk: KirkPair,
    pub table: Vec<PairRow>,
}

impl InvariantsReport {
    pub fn compute(p: &Presentation) -> Self {
        let table = pair_expansions(p)
            .into_iter()
            .zip(p.pairs())
            .enumerate()
            .map(|(i, ([plus, minus], rec))| PairRow {
                pair: i + 1,
                sign: rec.sign,
                m: rec.m,
                m_plus: JsonInt(plus.0),
                n_plus: JsonInt(plus.1),
                m_minus: JsonInt(minus.0),
                n_minus: JsonInt(minus.1),
            })
            .collect();
        InvariantsReport {
            presentation: p.clone(),
            kirk: invariants_of(p),
            table,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub presentation: Presentation,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub presentation: Presentation,
    pub witness: IsometryWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZDecomposition {
    pub k: u32,
    pub p: ZPoly,
}

/// I-adic coefficients of a Laurent polynomial and, when requested or
/// applicable, its z-decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub poly: LaurentPoly,
    pub depth: usize,
    pub coefficients: Vec<JsonInt>,
    /// I-adic order; `null` for the zero polynomial.
    pub order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_decomposition: Option<ZDecomposition>,
}

impl ExpansionReport {
    /// `k = None` decomposes with k = 0 when the polynomial is symmetric.
    pub fn compute(
        poly: &LaurentPoly,
        depth: usize,
        k: Option<u32>,
    ) -> Result<Self, crate::laurent::LaurentError> {
        let z_decomposition = match k {
            Some(k) => Some(ZDecomposition {
                k,
                p: poly.z_decompose(k)?,
            }),
            None => poly.z_decompose(0).ok().map(|p| ZDecomposition { k: 0, p }),
        };
        let order = match poly.i_adic_order() {
            IAdicOrder::Finite(o) | IAdicOrder::AtLeast(o) => Some(o),
            IAdicOrder::Infinite => None,
        };
        Ok(ExpansionReport {
            poly: poly.clone(),
            depth,
            coefficients: poly.i_adic_expand(depth).into_iter().map(JsonInt).collect(),
            order,
            z_decomposition,
        })
    }
}

/// The payload of an artifact file, tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Artifact {
    Laurent(LaurentPoly),
    Zpoly(ZPoly),
    KirkPair(KirkPair),
    JkInput(JkInput),
    Presentation(Presentation),
    DiskRecord(DiskRecord),
    Invariants(InvariantsReport),
    Verdict(VerdictReport),
    IsometryWitness(WitnessReport),
    UnlinkCertificate(UnlinkCertificate),
    Expansion(ExpansionReport),
}

impl Artifact {
    pub fn type_name(&self) -> &'static str {
        match self {
            Artifact::Laurent(_) => "laurent",
            Artifact::Zpoly(_) => "zpoly",
            Artifact::KirkPair(_) => "kirk_pair",
            Artifact::JkInput(_) => "jk_input",
            Artifact::Presentation(_) => "presentation",
            Artifact::DiskRecord(_) => "disk_record",
            Artifact::Invariants(_) => "invariants",
            Artifact::Verdict(_) => "verdict",
            Artifact::IsometryWitness(_) => "isometry_witness",
            Artifact::UnlinkCertificate(_) => "unlink_certificate",
            Artifact::Expansion(_) => "expansion",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArtifactFile {
    v: u32,
    #[serde(flatten)]
    artifact: Artifact,
}

/// Canonical file text.
pub fn write(artifact: &Artifact) -> String {
    let file = ArtifactFile {
        v: SCHEMA_VERSION,
        artifact: artifact.clone(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("artifacts always serialize");
    s.push('\n');
    s
}

/// Parses the header and returns the type tag.
pub fn read_header(text: &str) -> Result<(Value, String), ArtifactError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| ArtifactError::Header("top level is not an object".into()))?;
    match obj.get("v").and_then(Value::as_u64) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => {
            return Err(ArtifactError::Header(format!(
                "unsupported schema version {v}"
            )))
        }
        None => return Err(ArtifactError::Header("missing \"v\"".into())),
    }
    let ty = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| ArtifactError::Header("missing \"type\"".into()))?
        .to_string();
    Ok((value, ty))
}

/// Parses a whole file. Header problems and content problems are both
/// reported as errors; use [`read_header`] to tell them apart.
pub fn read(text: &str) -> Result<Artifact, ArtifactError> {
    let (value, _) = read_header(text)?;
    let file: ArtifactFile = serde_json::from_value(value)?;
    Ok(file.artifact)
}

/// Re-runs every invariant check for the file's type. Unparseable JSON or a
/// bad header is an error; content that fails to parse as its declared type
/// is a failed check.
pub fn verify_text(text: &str) -> Result<Vec<Check>, ArtifactError> {
    let (value, ty) = read_header(text)?;
    match serde_json::from_value::<ArtifactFile>(value.clone()) {
        Ok(file) => {
            // key order and whitespace are free; entry order, zero terms and
            // number spelling are not
            let canonical =
                serde_json::to_value(&file).expect("artifacts always serialize") == value;
            let mut checks = vec![Check::new(
                format!("{ty} entries are in canonical form"),
                canonical,
            )];
            checks.extend(verify(&file.artifact));
            Ok(checks)
        }
        Err(e) => Ok(vec![Check::new(
            format!("{ty} content is well-formed ({e})"),
            false,
        )]),
    }
}

pub fn verify(artifact: &Artifact) -> Vec<Check> {
    match artifact {
        Artifact::Laurent(p) => vec![Check::new(format!("{p} is an element of Λ"), true)],
        Artifact::Zpoly(p) => vec![Check::new(format!("{p} is an element of Z[z]"), true)],
        Artifact::KirkPair(k) => vec![
            Check::new(format!("{k} lies in z·Z[z] ⊕ z·Z[z]"), true),
            Check::new("z¹ coefficients of σ₁ and σ₂ agree", true),
        ],
        Artifact::JkInput(j) => vec![Check::new(
            "β¹ agrees on both components (Sato–Levine symmetry)",
            jk_kirk(j).is_ok(),
        )],
        Artifact::Presentation(p) => {
            let k = invariants_of(p);
            vec![
                Check::new(
                    format!("{} pairs carry matching accessory augmentations", p.n()),
                    true,
                ),
                Check::new(format!("σ₁ − σ₂ ∈ z²·Z[z] for {k}"), true),
            ]
        }
        Artifact::DiskRecord(d) => {
            let m = multiplicities(&d.lambda_f2);
            vec![Check::new(
                format!(
                    "λ(D, f₂) = {} + {}·(1 − x) + P with P ∈ I²",
                    m.primary, m.secondary
                ),
                m.residual.i_adic_order().at_least(2),
            )]
        }
        Artifact::Invariants(r) => {
            let fresh = InvariantsReport::compute(&r.presentation);
            vec![
                Check::new(
                    format!("Kirk invariants = {}", r.kirk),
                    fresh.kirk == r.kirk,
                ),
                Check::new(
                    "multiplicity table matches the presentation",
                    fresh.table == r.table,
                ),
            ]
        }
        Artifact::Verdict(r) => verify_verdict(&r.presentation, &r.verdict),
        Artifact::IsometryWitness(r) => verify_witness_for(&r.presentation, &r.witness),
        Artifact::UnlinkCertificate(c) => verify_certificate(c),
        Artifact::Expansion(r) => {
            let k = r.z_decomposition.as_ref().map(|d| d.k);
            match ExpansionReport::compute(&r.poly, r.depth, k) {
                Ok(fresh) => vec![
                    Check::new(
                        format!("I-adic coefficients to depth {}", r.depth),
                        fresh.coefficients == r.coefficients,
                    ),
                    Check::new("I-adic order", fresh.order == r.order),
                    Check::new(
                        "z-decomposition",
                        fresh.z_decomposition == r.z_decomposition,
                    ),
                ],
                Err(e) => vec![Check::new(format!("z-decomposition exists ({e})"), false)],
            }
        }
    }
}

/// Checks for a realization transcript.
pub fn realization_transcript(target: &KirkPair, p: &Presentation) -> Vec<Check> {
    realization_checks(target, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ZPoly;

    #[test]
    fn header_and_tag_come_first() {
        let k =
            crate::kirk::make_kirk(ZPoly::from_ints(&[0, 1]), ZPoly::from_ints(&[0, 1])).unwrap();
        let text = write(&Artifact::KirkPair(k.clone()));
        assert!(
            text.starts_with("{\n  \"v\": 1,\n  \"type\": \"kirk_pair\","),
            "{text}"
        );
        assert_eq!(read(&text).unwrap(), Artifact::KirkPair(k));
        assert_eq!(write(&read(&text).unwrap()), text);
    }

    #[test]
    fn bad_headers_are_errors_and_bad_content_fails_checks() {
        assert!(matches!(verify_text("{"), Err(ArtifactError::Json(_))));
        assert!(matches!(
            verify_text(r#"{"type":"laurent"}"#),
            Err(ArtifactError::Header(_))
        ));
        assert!(matches!(
            verify_text(r#"{"v":2,"type":"laurent"}"#),
            Err(ArtifactError::Header(_))
        ));
        let bad =
            r#"{"v":1,"type":"kirk_pair","sigma1":{"zcoeffs":[0,1]},"sigma2":{"zcoeffs":[0,2]}}"#;
        let checks = verify_text(bad).unwrap();
        assert!(checks.iter().any(|c| !c.ok));
    }

    #[test]
    fn non_canonical_entries_fail_verification() {
        for text in [
            r#"{"v":1,"type":"laurent","coeffs":[[1,2],[0,1]]}"#,
            r#"{"v":1,"type":"laurent","coeffs":[[0,0]]}"#,
            r#"{"v":1,"type":"zpoly","zcoeffs":[1,0]}"#,
        ] {
            let checks = verify_text(text).unwrap();
            assert!(checks.iter().any(|c| !c.ok), "{text}");
        }
        let ok = verify_text(r#"{"type":"laurent","coeffs":[[0,1],[1,2]],"v":1}"#).unwrap();
        assert!(ok.iter().all(|c| c.ok));
    }

    #[test]
    fn big_integers_are_strings() {
        let big = num_bigint::BigInt::from(1u64 << 60);
        let p = LaurentPoly::monomial(3, big);
        let text = write(&Artifact::Laurent(p.clone()));
        assert!(text.contains("\"1152921504606846976\""));
        assert_eq!(read(&text).unwrap(), Artifact::Laurent(p));
    }
}
