//! The algebraic unlinking pipeline.
//!
//! For a presentation whose f₂ satisfies λ(f₂, f₂) = 0 and has every Whitney
//! pairing in zΛ, two finger moves later there is an isometry Φ of π₂ with
//! Φ ≡ id mod z carrying a combination g of Whitney spheres to f₂. The
//! images S_{V_i} = Φ(S_{W_i}) then span an isotropic sublattice, and f₂ is
//! shrunk away one Λ-multiple α_i·S_{V_i} at a time.
//!
//! Φ is a single Eichler transvection of λ. With c the accessory part of f₂
//! divided by z and g its Whitney part (plus S_{W_{n+1}} from the linking
//! finger move), take
//!
//! ```text
//! u = S_{A_{n+1}} + x^k (S_{A_{n+2}} − S_{W_{n+2}}),   w = −c + t·u
//! ```
//!
//! Then u is isotropic, λ(g, u) = z and u ⊥ c, and T_{u,w,a}(g) = g + z·c
//! exactly when a + ι(a) = −λ(c, c) and t − ι(t) = a − λ(g, c)/z; both
//! equations are solvable because λ(f₂, f₂) = 0. Every λ-transvection is
//! ≡ id mod z since λ itself is divisible by z.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{
    div_by_z, eichler_transvection, is_congruent_to_identity_mod_z, verify_isometry, IsometryMatrix,
};
use crate::kirk::KirkPair;
use crate::laurent::LaurentPoly;
use crate::pi2::{
    check_unlinking_conditions, lambda, metabolic_form, whitney_disk_pairing, BasisKind,
    SphereClass,
};
use crate::realize::{invariants_of, PairRecord, Presentation};
use crate::report::{first_failure, Check};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0;

/// Exponents tried for u_k after k = 0, in seeded order.
const FALLBACK_SPAN: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnlinkError {
    #[error("unlinking conditions not met: {0}")]
    ConditionsNotMet(String),
    #[error("no verified isometry found: {0}")]
    ConstructionFailed(String),
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
}

/// An isometry Φ ≡ id mod z with Φ(g) = f₂ over the stabilized presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryWitness {
    pub n_before: usize,
    pub n_after: usize,
    pub phi: IsometryMatrix,
    /// Σ α_i S_{W_i}, in the WA basis over n_after pairs.
    pub g: SphereClass,
    /// The stabilized f₂, in the WA basis.
    pub f2: SphereClass,
}

/// One Whitney homotopy: f₂ ↦ f₂ − α_i·S_{V_i}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub index: usize,
    pub alpha: LaurentPoly,
    pub before: SphereClass,
    pub term: SphereClass,
    pub after: SphereClass,
}

/// Everything needed to replay an unlinking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnlinkCertificate {
    pub presentation: Presentation,
    pub witness: IsometryWitness,
    /// S_{V_i} = Φ(S_{W_i}).
    pub v_classes: Vec<SphereClass>,
    /// V_i† = Φ(S_{A_i}).
    pub dual_classes: Vec<SphereClass>,
    /// T_i = (Φ(S_{W_i}) − S_{W_i}) / z.
    pub t_classes: Vec<SphereClass>,
    pub alphas: Vec<LaurentPoly>,
    pub trace: Vec<ReductionStep>,
    pub transcript: Vec<String>,
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub trivial: bool,
    pub kirk: KirkPair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<UnlinkCertificate>,
}

/// One more finger move on f₁. With `link_once` the move's arc links f₂
/// once, adding S_{W_{n+1}} to f₂ (a balanced pair with m = 1); otherwise the
/// new pair has m = 0 and f₂ is unchanged.
pub fn stabilize(p: &Presentation, link_once: bool) -> Presentation {
    let (rec, plus, minus) = if link_once {
        (
            PairRecord::new(1, 1),
            LaurentPoly::one(),
            LaurentPoly::one(),
        )
    } else {
        (
            PairRecord::new(1, 0),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
        )
    };
    p.with_appended_pair(rec, plus, minus)
        .expect("a finger-move pair is always valid")
}

fn unit(n: usize, j: usize) -> Vec<LaurentPoly> {
    let mut v = vec![LaurentPoly::zero(); 2 * n];
    v[j] = LaurentPoly::one();
    v
}

fn wa_class(coeffs: Vec<LaurentPoly>) -> SphereClass {
    let n = coeffs.len() / 2;
    SphereClass::new(BasisKind::wa(n), coeffs).expect("even length")
}

fn apply(phi: &IsometryMatrix, c: &SphereClass) -> SphereClass {
    wa_class(phi.apply(c.to_wa().coeffs()).expect("dimensions checked"))
}

/// Builds and verifies Φ. Fails with `ConditionsNotMet` unless condition
/// (iii) holds. When condition (ii) already holds the identity works and no
/// finger moves are needed. `seed` orders the fallback candidates.
pub fn construct_isometry(p: &Presentation, seed: u64) -> Result<IsometryWitness, UnlinkError> {
    let report = check_unlinking_conditions(p);
    if !report.condition_iii {
        return Err(UnlinkError::ConditionsNotMet(
            "need λ(f₂, f₂) = 0 and every Whitney pairing in zΛ".into(),
        ));
    }
    let n = p.n();
    let f2 = p.f2().to_wa();
    if report.condition_ii {
        let w = IsometryWitness {
            n_before: n,
            n_after: n,
            phi: IsometryMatrix::identity(2 * n),
            g: f2.clone(),
            f2,
        };
        return finish(p, w);
    }

    let c_old: Vec<LaurentPoly> = whitney_disk_pairing(&f2)
        .iter()
        .map(|b| div_by_z(b).expect("condition (iii)"))
        .collect();
    let stabilized = stabilize(&stabilize(p, true), false);
    let big_n = n + 2;
    let f2_new = stabilized.f2().to_wa();
    let g = f2_new.whitney_part();
    let c = wa_class(
        std::iter::repeat_n(LaurentPoly::zero(), big_n)
            .chain(c_old)
            .chain([LaurentPoly::zero(), LaurentPoly::zero()])
            .collect(),
    );
    debug_assert_eq!(g.add(&c.scale(&LaurentPoly::z())).unwrap(), f2_new);

    let cc = lambda(&c, &c).expect("same rank");
    let gc = lambda(&g, &c).expect("same rank");
    let a = (-cc)
        .symmetric_half()
        .ok_or_else(|| UnlinkError::ConstructionFailed("λ(c, c) has odd constant term".into()))?;
    let gc_over_z =
        div_by_z(&gc).ok_or_else(|| UnlinkError::ConstructionFailed("λ(g, c) ∉ zΛ".into()))?;
    let t = (&a - &gc_over_z).antisymmetric_half().ok_or_else(|| {
        UnlinkError::ConstructionFailed("a − λ(g, c)/z is not antisymmetric".into())
    })?;

    let form = metabolic_form(BasisKind::wa(big_n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fallback: Vec<i64> = (-FALLBACK_SPAN..=FALLBACK_SPAN)
        .filter(|&k| k != 0)
        .collect();
    fallback.shuffle(&mut rng);
    let mut last_err = String::from("no candidates");
    for k in std::iter::once(0).chain(fallback) {
        let xk = LaurentPoly::monomial(k, 1);
        let mut u = unit(big_n, big_n + n);
        u[big_n + n + 1] = xk.clone();
        u[n + 1] = -xk;
        let w: Vec<LaurentPoly> = c
            .coeffs()
            .iter()
            .zip(&u)
            .map(|(ci, ui)| &(&t * ui) - ci)
            .collect();
        match eichler_transvection(&form, &u, &w, &a) {
            Ok(phi) => {
                let witness = IsometryWitness {
                    n_before: n,
                    n_after: big_n,
                    phi,
                    g: g.clone(),
                    f2: f2_new.clone(),
                };
                match finish(p, witness) {
                    Ok(w) => return Ok(w),
                    Err(e) => last_err = format!("u_{k}: {e}"),
                }
            }
            Err(e) => last_err = format!("u_{k}: {e}"),
        }
    }
    Err(UnlinkError::ConstructionFailed(last_err))
}

fn finish(p: &Presentation, w: IsometryWitness) -> Result<IsometryWitness, UnlinkError> {
    let checks = verify_witness_for(p, &w);
    match first_failure(&checks) {
        None => Ok(w),
        Some(c) => Err(UnlinkError::ConstructionFailed(format!(
            "check failed: {}",
            c.claim
        ))),
    }
}

/// The presentation after the finger moves a witness records.
fn stabilized_for(p: &Presentation, w: &IsometryWitness) -> Option<Presentation> {
    if w.n_before != p.n() {
        return None;
    }
    if w.n_after == w.n_before {
        Some(p.clone())
    } else if w.n_after == w.n_before + 2 {
        Some(stabilize(&stabilize(p, true), false))
    } else {
        None
    }
}

/// The three witness invariants, checked from scratch.
pub fn verify_witness(w: &IsometryWitness) -> Vec<Check> {
    let n = w.n_after;
    let shape_ok = w.phi.dim() == 2 * n
        && w.g.n() == n
        && w.f2.n() == n
        && (w.n_after == w.n_before || w.n_after == w.n_before + 2);
    let mut checks = vec![Check::new(
        format!(
            "Φ acts on π₂ of rank {} after {} finger moves",
            2 * n,
            n - n.min(w.n_before)
        ),
        shape_ok,
    )];
    if !shape_ok {
        return checks;
    }
    let form = metabolic_form(BasisKind::wa(n));
    checks.push(Check::new(
        "Φ is an isometry of λ",
        verify_isometry(&form, &w.phi).unwrap_or(false),
    ));
    checks.push(Check::new(
        "Φ ≡ id mod z",
        is_congruent_to_identity_mod_z(&w.phi),
    ));
    let g = w.g.to_wa();
    checks.push(Check::new(
        "g lies in the span of the Whitney spheres",
        g.second_half().iter().all(LaurentPoly::is_zero),
    ));
    checks.push(Check::new("Φ(g) = f₂", apply(&w.phi, &g) == w.f2.to_wa()));
    checks
}

/// [`verify_witness`] plus agreement with the presentation it came from.
pub fn verify_witness_for(p: &Presentation, w: &IsometryWitness) -> Vec<Check> {
    let stab = stabilized_for(p, w).map(|s| s.f2().to_wa());
    let mut checks = vec![Check::new(
        "witness f₂ is the stabilized f₂ of the presentation",
        stab.as_ref() == Some(&w.f2.to_wa()),
    )];
    checks.extend(verify_witness(w));
    checks
}

/// The reduction: V_i = Φ(S_{W_i}), α_i from g, then
/// subtracts α_i·S_{V_i} in order.
pub fn reduce(p: &Presentation, w: &IsometryWitness) -> Result<UnlinkCertificate, UnlinkError> {
    let witness_checks = verify_witness_for(p, w);
    if let Some(c) = first_failure(&witness_checks) {
        return Err(UnlinkError::WitnessInvalid(c.claim.clone()));
    }
    let n = w.n_after;
    let v_classes: Vec<SphereClass> = (0..n)
        .map(|i| apply(&w.phi, &SphereClass::whitney(n, i)))
        .collect();
    let dual_classes: Vec<SphereClass> = (0..n)
        .map(|i| apply(&w.phi, &SphereClass::accessory(n, i)))
        .collect();
    let mut t_classes = Vec::with_capacity(n);
    for (i, v) in v_classes.iter().enumerate() {
        let diff = v.sub(&SphereClass::whitney(n, i)).expect("same rank");
        let coeffs: Option<Vec<LaurentPoly>> = diff.coeffs().iter().map(div_by_z).collect();
        let coeffs = coeffs.ok_or_else(|| {
            UnlinkError::WitnessInvalid(format!("Φ(S_W{}) − S_W{} ∉ z·π₂", i + 1, i + 1))
        })?;
        t_classes.push(wa_class(coeffs));
    }
    let alphas = w.g.to_wa().first_half().to_vec();
    let trace = build_trace(&w.f2.to_wa(), &alphas, &v_classes);

    let mut checks = witness_checks;
    checks.extend(certificate_law_checks(
        &v_classes,
        &dual_classes,
        &t_classes,
        &trace,
        &w.f2,
    ));
    if let Some(c) = first_failure(&checks) {
        return Err(UnlinkError::WitnessInvalid(c.claim.clone()));
    }
    Ok(UnlinkCertificate {
        presentation: p.clone(),
        witness: w.clone(),
        v_classes,
        dual_classes,
        t_classes,
        alphas,
        trace,
        transcript: checks.iter().map(Check::to_string).collect(),
    })
}

fn build_trace(f2: &SphereClass, alphas: &[LaurentPoly], v: &[SphereClass]) -> Vec<ReductionStep> {
    let mut cur = f2.clone();
    let mut trace = Vec::new();
    for (i, (alpha, vi)) in alphas.iter().zip(v).enumerate() {
        if alpha.is_zero() {
            continue;
        }
        let term = vi.scale(alpha);
        let after = cur.sub(&term).expect("same rank");
        trace.push(ReductionStep {
            index: i,
            alpha: alpha.clone(),
            before: cur,
            term,
            after: after.clone(),
        });
        cur = after;
    }
    trace
}

/// Checks that depend only on the classes recorded in a certificate.
fn certificate_law_checks(
    v: &[SphereClass],
    dual: &[SphereClass],
    t: &[SphereClass],
    trace: &[ReductionStep],
    f2: &SphereClass,
) -> Vec<Check> {
    let n = v.len();
    let lam = |a: &SphereClass, b: &SphereClass| lambda(a, b).ok();
    let mut isotropic = true;
    let mut dual_ok = dual.len() == n;
    for i in 0..n {
        for j in 0..n {
            isotropic &= lam(&v[i], &v[j]).is_some_and(|l| l.is_zero());
            if dual_ok {
                let want = if i == j {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                };
                dual_ok &= lam(&v[i], &dual[j])
                    .and_then(|l| div_by_z(&l).or_else(|| l.is_zero().then(LaurentPoly::zero)))
                    .is_some_and(|l| l == want);
            }
        }
    }
    let t_ok = t.len() == n
        && (0..n).all(|i| {
            SphereClass::whitney(n, i)
                .add(&t[i].scale(&LaurentPoly::z()))
                .is_ok_and(|s| s == v[i].to_wa())
        });
    let mut replay_ok = true;
    let mut cur = f2.to_wa();
    for step in trace {
        let term_ok = step.index < n && v[step.index].scale(&step.alpha) == step.term;
        let arith_ok = step.before == cur && cur.sub(&step.term).is_ok_and(|a| a == step.after);
        replay_ok &= term_ok && arith_ok;
        cur = step.after.clone();
    }
    vec![
        Check::new(format!("λ(S_Vi, S_Vj) = 0 for all {n}² pairs"), isotropic),
        Check::new("λ(V_i, V_j†) = δ_ij with V_j† = Φ(S_Aj)", dual_ok),
        Check::new("S_Vi = S_Wi + z·T_i", t_ok),
        Check::new(
            format!("trace of {} Whitney homotopies replays", trace.len()),
            replay_ok,
        ),
        Check::new("f₂ after the last step = 0", cur.is_zero()),
    ]
}

/// Re-derives a certificate from its presentation and witness and compares
/// every recorded field.
pub fn verify_certificate(cert: &UnlinkCertificate) -> Vec<Check> {
    let mut checks = verify_witness_for(&cert.presentation, &cert.witness);
    let n = cert.witness.n_after;
    if first_failure(&checks).is_some() || cert.v_classes.len() != n {
        checks.push(Check::new("certificate classes match the witness", false));
        return checks;
    }
    checks.extend(certificate_law_checks(
        &cert.v_classes,
        &cert.dual_classes,
        &cert.t_classes,
        &cert.trace,
        &cert.witness.f2,
    ));
    match reduce(&cert.presentation, &cert.witness) {
        Ok(fresh) => {
            checks.push(Check::new(
                "S_Vi = Φ(S_Wi)",
                fresh.v_classes == cert.v_classes,
            ));
            checks.push(Check::new(
                "V_i† = Φ(S_Ai)",
                fresh.dual_classes == cert.dual_classes,
            ));
            checks.push(Check::new(
                "α_i are the Whitney coefficients of g",
                fresh.alphas == cert.alphas,
            ));
            checks.push(Check::new(
                "trace matches the replay",
                fresh.trace == cert.trace,
            ));
            checks.push(Check::new(
                "transcript matches the replay",
                fresh.transcript == cert.transcript,
            ));
        }
        Err(e) => checks.push(Check::new(format!("reduction replays ({e})"), false)),
    }
    checks
}

/// Kirk invariants decide triviality; a certificate is attached when the
/// link map is trivial and condition (iii) already holds.
pub fn classify(p: &Presentation, seed: u64) -> Verdict {
    let kirk = invariants_of(p);
    let trivial = kirk.is_trivial();
    let certificate = if trivial && check_unlinking_conditions(p).condition_iii {
        construct_isometry(p, seed)
            .ok()
            .and_then(|w| reduce(p, &w).ok())
    } else {
        None
    };
    Verdict {
        trivial,
        kirk,
        certificate,
    }
}

/// Checks for a stored verdict against the presentation it describes.
pub fn verify_verdict(p: &Presentation, v: &Verdict) -> Vec<Check> {
    let kirk = invariants_of(p);
    let mut checks = vec![
        Check::new(format!("Kirk invariants = {}", v.kirk), kirk == v.kirk),
        Check::new(
            format!("trivial = {} ⟺ (σ₁, σ₂) = (0, 0)", v.trivial),
            v.trivial == v.kirk.is_trivial(),
        ),
    ];
    if let Some(cert) = &v.certificate {
        checks.push(Check::new(
            "certificate is for this presentation",
            &cert.presentation == p,
        ));
        checks.extend(verify_certificate(cert));
    }
    checks
}
