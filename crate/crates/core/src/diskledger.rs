//! Multiplicity and twisting bookkeeping for Whitney and accessory disks.
//!
//! A disk D meeting f₂ has λ(D, f₂) = m + n(1 − x) + P with P ∈ I². The
//! integers m and n are its primary and secondary multiplicities, read off
//! from the I-adic expansion. Modulo I³ one has z ≡ −(1 − x)², because
//! z = −x⁻¹(1 − x)² and x⁻¹ ≡ 1 mod I; so an accessory coefficient
//! α = c₀ + c₁(1 − x) + c₂(1 − x)² + … is α ≡ m + n(1 − x) + q·z mod I³ with
//! m = c₀, n = c₁, q = −c₂.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::pi2::lambda;
use crate::realize::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiskError {
    #[error("expected a disk of kind {expected}, found {found}")]
    KindMismatch { expected: String, found: DiskKind },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiskKind {
    #[serde(rename = "W")]
    Whitney,
    #[serde(rename = "A+")]
    AccessoryPlus,
    #[serde(rename = "A-")]
    AccessoryMinus,
}

impl DiskKind {
    pub fn is_accessory(self) -> bool {
        !matches!(self, DiskKind::Whitney)
    }
}

impl fmt::Display for DiskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiskKind::Whitney => "W",
            DiskKind::AccessoryPlus => "A+",
            DiskKind::AccessoryMinus => "A-",
        })
    }
}

/// A disk reduced to its pairing with f₂ and its twisting ω.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskRecord {
    pub kind: DiskKind,
    pub lambda_f2: LaurentPoly,
    pub twisting: i64,
}

/// λ = primary + secondary·(1 − x) + residual with residual ∈ I².
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicities {
    pub primary: BigInt,
    pub secondary: BigInt,
    pub residual: LaurentPoly,
}

impl DiskRecord {
    pub fn new(kind: DiskKind, lambda_f2: LaurentPoly, twisting: i64) -> Self {
        DiskRecord {
            kind,
            lambda_f2,
            twisting,
        }
    }

    pub fn primary(&self) -> BigInt {
        self.lambda_f2.augment()
    }

    pub fn secondary(&self) -> BigInt {
        self.lambda_f2.i_adic_expand(2).swap_remove(1)
    }

    pub fn is_framed(&self) -> bool {
        self.twisting == 0
    }
}

pub fn multiplicities(lambda_f2: &LaurentPoly) -> Multiplicities {
    let c = lambda_f2.i_adic_expand(2);
    let (primary, secondary) = (c[0].clone(), c[1].clone());
    let linear =
        &LaurentPoly::constant(primary.clone()) + &LaurentPoly::one_minus_x().scale(&secondary);
    let residual = lambda_f2 - &linear;
    assert!(residual.i_adic_order().at_least(2), "residual lies in I²");
    Multiplicities {
        primary,
        secondary,
        residual,
    }
}

/// λ(D′, f₂) = (1 − x)·λ(U, f₂) for the disk D′ produced by a Whitney move
/// across U. Its primary multiplicity is 0 and its secondary multiplicity is
/// the primary multiplicity of U.
pub fn whitney_move_effect(u_lambda: &LaurentPoly) -> LaurentPoly {
    let out = &LaurentPoly::one_minus_x() * u_lambda;
    debug_assert!(out.augment().is_zero());
    debug_assert_eq!(multiplicities(&out).secondary, u_lambda.augment());
    out
}

fn expect_kind(d: &DiskRecord, ok: bool, expected: &str) -> Result<(), DiskError> {
    if ok {
        Ok(())
    } else {
        Err(DiskError::KindMismatch {
            expected: expected.into(),
            found: d.kind,
        })
    }
}

/// k oppositely-handed boundary twists of the Whitney disk `w` around the
/// accessory disk `a`. Primary multiplicity and twisting are unchanged; the
/// secondary multiplicity moves by k·m(a).
pub fn double_boundary_twist(
    w: &DiskRecord,
    a: &DiskRecord,
    k: i64,
) -> Result<DiskRecord, DiskError> {
    expect_kind(w, w.kind == DiskKind::Whitney, "W")?;
    expect_kind(a, a.kind.is_accessory(), "A+ or A-")?;
    let shift = whitney_move_effect(&a.lambda_f2).scale(&BigInt::from(k));
    Ok(DiskRecord {
        kind: DiskKind::Whitney,
        lambda_f2: &w.lambda_f2 + &shift,
        twisting: w.twisting,
    })
}

/// ω(W) = ω(A⁺) + ω(A⁻) for the Whitney disk made from two accessory disks.
pub fn join_accessory_twists(a_plus: &DiskRecord, a_minus: &DiskRecord) -> Result<i64, DiskError> {
    expect_kind(a_plus, a_plus.kind == DiskKind::AccessoryPlus, "A+")?;
    expect_kind(a_minus, a_minus.kind == DiskKind::AccessoryMinus, "A-")?;
    Ok(a_plus.twisting + a_minus.twisting)
}

/// The twisting of the accessory disk split off from W alongside `a`:
/// ω(W) + ω(a).
pub fn derive_accessory_twist(w: &DiskRecord, a: &DiskRecord) -> Result<i64, DiskError> {
    expect_kind(w, w.kind == DiskKind::Whitney, "W")?;
    expect_kind(a, a.kind.is_accessory(), "A+ or A-")?;
    Ok(w.twisting + a.twisting)
}

/// (m, n, q) with α ≡ m + n(1 − x) + q·z mod I³.
pub fn truncated_expansion(alpha: &LaurentPoly) -> (BigInt, BigInt, BigInt) {
    let c = alpha.i_adic_expand(3);
    (c[0].clone(), c[1].clone(), -c[2].clone())
}

/// Per-pair data (m⁺, n⁺, q⁺, m⁻, n⁻, q⁻) from the accessory coefficients.
pub fn pair_expansions(p: &Presentation) -> Vec<[(BigInt, BigInt, BigInt); 2]> {
    let (plus, minus) = p.alphas();
    plus.iter()
        .zip(&minus)
        .map(|(a, b)| [truncated_expansion(a), truncated_expansion(b)])
        .collect()
}

/// Σ ± [n² + m·n + 2m·q] over the accessory coefficients α_i^±, which is the
/// z²-coefficient of λ(f₂, f₂): α·ι(α) ≡ m² + (n² + m·n + 2m·q)·z mod z².
/// When m⁺ = m⁻ = m_i it reads Σ[(n⁺)² − (n⁻)² + (n⁺ − n⁻)m_i + 2m_i(q⁺ − q⁻)].
pub fn step8_z2_coefficient(p: &Presentation) -> BigInt {
    let term = |(m, n, q): &(BigInt, BigInt, BigInt)| n * n + m * n + BigInt::from(2) * m * q;
    pair_expansions(p)
        .iter()
        .map(|[plus, minus]| term(plus) - term(minus))
        .sum()
}

/// z²-coefficient of λ(f₂, f₂) computed directly, for cross-checks.
pub fn sigma2_z2_coefficient(p: &Presentation) -> BigInt {
    let l = lambda(p.f2(), p.f2()).expect("same class");
    l.z_decompose(0).expect("hermitian").coeff(2)
}

/// Parity of Σ (n_i⁺ − n_i⁻). Preconditions: λ(f₂, f₂) = 0; each pair has
/// ε(α_i⁺) = ε(α_i⁻) = m_i ∈ {0, 1}; d_i = n_i⁺ − n_i⁻ ∈ {0, ±1}; and
/// d_i = 0 whenever m_i = 1. The z²-coefficient then reduces to Σ d_i mod 2,
/// so the sum is even; the implication is asserted.
pub fn parity_claim(p: &Presentation) -> Result<bool, DiskError> {
    let self_pairing = lambda(p.f2(), p.f2()).expect("same class");
    if !self_pairing.is_zero() {
        return Err(DiskError::PreconditionViolated("λ(f₂, f₂) ≠ 0".into()));
    }
    let mut sum = BigInt::zero();
    for (i, [plus, minus]) in pair_expansions(p).into_iter().enumerate() {
        let (m, d) = (&plus.0, &plus.1 - &minus.1);
        if &minus.0 != m || !(m.is_zero() || m.is_one()) {
            return Err(DiskError::PreconditionViolated(format!(
                "pair {}: need ε(α⁺) = ε(α⁻) ∈ {{0, 1}}, found ({}, {})",
                i + 1,
                plus.0,
                minus.0
            )));
        }
        if d.abs() > BigInt::one() || (m.is_one() && !d.is_zero()) {
            return Err(DiskError::PreconditionViolated(format!(
                "pair {}: n⁺ − n⁻ = {d} with m = {m}",
                i + 1
            )));
        }
        sum += d;
    }
    let even = (&sum % 2u32).is_zero();
    assert!(even, "a vanishing z²-coefficient forces Σ(n⁺ − n⁻) even");
    Ok(even)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi2::SphereClass;
    use crate::realize::PairRecord;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn multiplicities_examples() {
        let m = multiplicities(&LaurentPoly::z());
        assert_eq!(
            (m.primary, m.secondary, m.residual),
            (int(0), int(0), LaurentPoly::z())
        );

        let z2 = LaurentPoly::z().pow(2);
        let l = &(&LaurentPoly::constant(2) + &LaurentPoly::one_minus_x().scale(&int(3))) + &z2;
        let m = multiplicities(&l);
        assert_eq!((m.primary, m.secondary, m.residual), (int(2), int(3), z2));

        for k in [-2i64, -1, 1, 2] {
            let m = multiplicities(&LaurentPoly::monomial(k, 1));
            assert_eq!((m.primary, m.secondary), (int(1), int(-k)));
            // oracle: x^k − 1 + k(1 − x) is divisible by (1 − x)²
            let r = &(&LaurentPoly::monomial(k, 1) - &LaurentPoly::one())
                + &LaurentPoly::one_minus_x().scale(&int(k));
            let q = r
                .exact_div_one_minus_x()
                .unwrap()
                .exact_div_one_minus_x()
                .unwrap();
            assert_eq!(m.residual, &q * &LaurentPoly::one_minus_x().pow(2));
        }
    }

    #[test]
    fn whitney_move_examples() {
        let d = whitney_move_effect(&LaurentPoly::one());
        assert_eq!(d, LaurentPoly::one_minus_x());
        let m = multiplicities(&d);
        assert_eq!((m.primary, m.secondary), (int(0), int(1)));
        assert!(m.residual.is_zero());
        assert!(whitney_move_effect(&LaurentPoly::zero()).is_zero());
        let d = whitney_move_effect(&LaurentPoly::monomial(-1, 1));
        assert_eq!(d, lp(&[(-1, 1), (0, -1)]));
        assert_eq!(multiplicities(&d).secondary, int(1));
    }

    #[test]
    fn double_boundary_twist_examples() {
        let w = DiskRecord::new(
            DiskKind::Whitney,
            LaurentPoly::one_minus_x().scale(&int(5)),
            0,
        );
        let a = DiskRecord::new(DiskKind::AccessoryPlus, LaurentPoly::one(), 3);
        let v = double_boundary_twist(&w, &a, -5).unwrap();
        assert_eq!(v.secondary(), int(0));
        assert_eq!(v.primary(), w.primary());
        assert_eq!(v.twisting, 0);
        assert_eq!(double_boundary_twist(&w, &a, 0).unwrap(), w);
        let a0 = DiskRecord::new(DiskKind::AccessoryMinus, LaurentPoly::z(), 0);
        assert_eq!(
            double_boundary_twist(&w, &a0, 7).unwrap().secondary(),
            int(5)
        );
        assert!(matches!(
            double_boundary_twist(&a, &w, 1),
            Err(DiskError::KindMismatch { .. })
        ));
    }

    #[test]
    fn twisting_examples() {
        let ap = |t| DiskRecord::new(DiskKind::AccessoryPlus, LaurentPoly::zero(), t);
        let am = |t| DiskRecord::new(DiskKind::AccessoryMinus, LaurentPoly::zero(), t);
        let w = |t| DiskRecord::new(DiskKind::Whitney, LaurentPoly::zero(), t);
        assert_eq!(join_accessory_twists(&ap(0), &am(0)).unwrap(), 0);
        assert_eq!(join_accessory_twists(&ap(2), &am(-2)).unwrap(), 0);
        assert_eq!(join_accessory_twists(&ap(1), &am(0)).unwrap(), 1);
        assert_eq!(derive_accessory_twist(&w(0), &ap(0)).unwrap(), 0);
        assert_eq!(derive_accessory_twist(&w(3), &ap(1)).unwrap(), 4);
        assert_eq!(derive_accessory_twist(&w(1), &ap(0)).unwrap(), 1);
        assert_eq!(join_accessory_twists(&ap(0), &am(1)).unwrap(), 1);
        assert!(join_accessory_twists(&am(0), &ap(0)).is_err());
        assert!(derive_accessory_twist(&ap(0), &ap(0)).is_err());
    }

    #[test]
    fn step8_examples() {
        assert_eq!(step8_z2_coefficient(&Presentation::empty()), int(0));

        let f2 = SphereClass::accessory_plus(1, 0).scale(&LaurentPoly::one_minus_x());
        let p = Presentation::new(vec![PairRecord::new(1, 0)], f2).unwrap();
        assert_eq!(step8_z2_coefficient(&p), int(1));
        assert_eq!(sigma2_z2_coefficient(&p), int(1));

        let f2 = SphereClass::accessory_plus(1, 0)
            .add(&SphereClass::accessory_minus(1, 0))
            .unwrap();
        let p = Presentation::new(vec![PairRecord::new(1, 1)], f2).unwrap();
        assert_eq!(step8_z2_coefficient(&p), int(0));
        assert_eq!(sigma2_z2_coefficient(&p), int(0));
    }

    #[test]
    fn parity_examples() {
        assert!(parity_claim(&Presentation::empty()).unwrap());

        // two mirrored pairs, d = +1 and −1
        let a = LaurentPoly::one_minus_x();
        let f2 = SphereClass::from_pm(
            vec![a.clone(), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), a],
        )
        .unwrap();
        let p = Presentation::new(vec![PairRecord::new(1, 0); 2], f2).unwrap();
        assert!(parity_claim(&p).unwrap());

        let fr = Presentation::new(
            vec![PairRecord::new(1, 1)],
            SphereClass::accessory_plus(1, 0),
        )
        .unwrap();
        assert!(matches!(
            parity_claim(&fr),
            Err(DiskError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn disk_record_json() {
        let d = DiskRecord::new(DiskKind::AccessoryMinus, LaurentPoly::one(), -2);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"A-","lambda_f2":{"coeffs":[[0,1]]},"twisting":-2}"#
        );
        assert_eq!(serde_json::from_str::<DiskRecord>(&s).unwrap(), d);
    }
}
