//! Kirk invariants as coordinates on the group of link maps S² ⊔ S² → S⁴.
//!
//! A pair (σ₁, σ₂) of elements of z·Z[z] is realized by a link map exactly
//! when σ₁ − σ₂ ∈ z²·Z[z], i.e. when the two z¹ coefficients agree. That is
//! the exact sequence
//!
//! ```text
//! 0 → LM → z·Z[z] ⊕ z·Z[z] → Z → 0,   (σ₁, σ₂) ↦ [σ₁]_{z¹} − [σ₂]_{z¹}
//! ```
//!
//! and since the Kirk invariants are injective, a link map is represented
//! here by its pair.

use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json::JsonInt;
use crate::laurent::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KirkError {
    #[error("invalid Kirk pair: σ{component} has nonzero constant term {value}")]
    NonzeroConstant { component: u8, value: BigInt },
    #[error("invalid Kirk pair: z¹ coefficients differ (σ₁ has {sigma1}, σ₂ has {sigma2})")]
    SymmetryViolation { sigma1: BigInt, sigma2: BigInt },
}

/// A validated pair of Kirk invariants.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "KirkPairRepr", into = "KirkPairRepr")]
pub struct KirkPair {
    sigma1: ZPoly,
    sigma2: ZPoly,
}

#[derive(Serialize, Deserialize)]
struct KirkPairRepr {
    sigma1: ZPoly,
    sigma2: ZPoly,
}

impl From<KirkPair> for KirkPairRepr {
    fn from(k: KirkPair) -> Self {
        KirkPairRepr {
            sigma1: k.sigma1,
            sigma2: k.sigma2,
        }
    }
}

impl TryFrom<KirkPairRepr> for KirkPair {
    type Error = KirkError;
    fn try_from(r: KirkPairRepr) -> Result<Self, KirkError> {
        make_kirk(r.sigma1, r.sigma2)
    }
}

impl fmt::Debug for KirkPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KirkPair({self})")
    }
}

impl fmt::Display for KirkPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sigma1, self.sigma2)
    }
}

/// Validates (σ₁, σ₂): both in z·Z[z] with equal z¹ coefficients.
pub fn make_kirk(sigma1: ZPoly, sigma2: ZPoly) -> Result<KirkPair, KirkError> {
    for (component, s) in [(1u8, &sigma1), (2, &sigma2)] {
        let c0 = s.coeff(0);
        if !c0.is_zero() {
            return Err(KirkError::NonzeroConstant {
                component,
                value: c0,
            });
        }
    }
    let (a, b) = (sigma1.coeff(1), sigma2.coeff(1));
    if a != b {
        return Err(KirkError::SymmetryViolation {
            sigma1: a,
            sigma2: b,
        });
    }
    Ok(KirkPair { sigma1, sigma2 })
}

impl KirkPair {
    pub fn zero() -> Self {
        KirkPair {
            sigma1: ZPoly::zero(),
            sigma2: ZPoly::zero(),
        }
    }

    pub fn sigma1(&self) -> &ZPoly {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &ZPoly {
        &self.sigma2
    }

    /// Vanishing Kirk invariants: the link map is link homotopically trivial.
    pub fn is_trivial(&self) -> bool {
        self.sigma1.is_zero() && self.sigma2.is_zero()
    }

    /// Largest z-degree among the two components.
    pub fn z_degree(&self) -> Option<usize> {
        self.sigma1.degree().max(self.sigma2.degree())
    }
}

impl Add for &KirkPair {
    type Output = KirkPair;
    fn add(self, rhs: &KirkPair) -> KirkPair {
        let out = KirkPair {
            sigma1: &self.sigma1 + &rhs.sigma1,
            sigma2: &self.sigma2 + &rhs.sigma2,
        };
        debug_assert!(make_kirk(out.sigma1.clone(), out.sigma2.clone()).is_ok());
        out
    }
}

impl Add for KirkPair {
    type Output = KirkPair;
    fn add(self, rhs: KirkPair) -> KirkPair {
        &self + &rhs
    }
}

impl Neg for &KirkPair {
    type Output = KirkPair;
    fn neg(self) -> KirkPair {
        KirkPair {
            sigma1: -&self.sigma1,
            sigma2: -&self.sigma2,
        }
    }
}

impl Neg for KirkPair {
    type Output = KirkPair;
    fn neg(self) -> KirkPair {
        -&self
    }
}

pub fn add(a: &KirkPair, b: &KirkPair) -> KirkPair {
    a + b
}

/// Reflection of S⁴ changes the sign of both invariants.
pub fn negate(a: &KirkPair) -> KirkPair {
    -a
}

pub fn is_trivial(a: &KirkPair) -> bool {
    a.is_trivial()
}

/// [σ₁]_{z¹} − [σ₂]_{z¹}: the map z·Z[z] ⊕ z·Z[z] → z·Z[z]/z²·Z[z] ≅ Z.
/// Defined on arbitrary pairs; its kernel is the set of valid Kirk pairs.
pub fn difference_map(sigma1: &ZPoly, sigma2: &ZPoly) -> BigInt {
    sigma1.coeff(1) - sigma2.coeff(1)
}

/// β-invariants of the two components of a two-component classical link,
/// 1-indexed: `beta1[0]` is β¹ of component 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JkInput {
    pub beta1: Vec<JsonInt>,
    pub beta2: Vec<JsonInt>,
}

impl JkInput {
    pub fn from_ints(beta1: &[i64], beta2: &[i64]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&b| JsonInt(BigInt::from(b))).collect();
        JkInput {
            beta1: conv(beta1),
            beta2: conv(beta2),
        }
    }

    fn series(beta: &[JsonInt]) -> ZPoly {
        let mut coeffs = vec![BigInt::zero()];
        coeffs.extend(beta.iter().map(|b| b.0.clone()));
        ZPoly::new(coeffs)
    }
}

/// σᵢ(JK(L)) = Σ_{i≥1} βⁱ(L)·zⁱ for each component. The β¹ entries are the
/// Sato–Levine invariant, symmetric in the components, so a mismatch is
/// reported as an invalid pair.
pub fn jk_kirk(input: &JkInput) -> Result<KirkPair, KirkError> {
    make_kirk(JkInput::series(&input.beta1), JkInput::series(&input.beta2))
}
