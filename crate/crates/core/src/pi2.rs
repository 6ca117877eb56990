//! π₂ of the complement of a standard-position sphere with n pairs of
//! self-intersections: a free Λ-module of rank 2n with two distinguished
//! bases.
//!
//! * Whitney/accessory (`WA`): S_{W_1..W_n}, S_{A_1..A_n}, Gram matrix
//!   `[[0, zI], [zI, zI]]`.
//! * Positive/negative accessory (`PM`): S_{A_1^+..A_n^+}, S_{A_1^-..A_n^-},
//!   Gram matrix `diag(zI, −zI)`.
//!
//! The two are related by S_{W_i} = S_{A_i^+} + S_{A_i^-} and
//! S_{A_i} = S_{A_i^+}. Both signs of S_{A_i^-} fit the two Gram matrices;
//! this one makes the Whitney disk W_i dual to S_{A_i^+} and −S_{A_i^-}, so
//! λ(W_i, f₂) = α_i^+ − α_i^- and λ(S_{W_i}, S_{A_i^-}) = −z. Cross pairings
//! λ(S_{A_i^+}, S_{A_j^-}) vanish because the accessory spheres are
//! disjointly immersed.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{is_divisible_by_z, HermitianForm, Matrix};
use crate::laurent::LaurentPoly;
use crate::realize::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi2Error {
    #[error("sphere classes live over different numbers of pairs ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("coefficient vector has length {found}, expected 2·{n}")]
    BadLength { n: usize, found: usize },
    #[error("pair index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    #[serde(rename = "WA")]
    WhitneyAccessory,
    #[serde(rename = "PM")]
    AccessoryPM,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisTag::WhitneyAccessory => "WA",
            BasisTag::AccessoryPM => "PM",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisKind {
    pub tag: BasisTag,
    pub n: usize,
}

impl BasisKind {
    pub fn wa(n: usize) -> Self {
        BasisKind {
            tag: BasisTag::WhitneyAccessory,
            n,
        }
    }

    pub fn pm(n: usize) -> Self {
        BasisKind {
            tag: BasisTag::AccessoryPM,
            n,
        }
    }

    pub fn rank(&self) -> usize {
        2 * self.n
    }

    /// Human label of the j-th basis vector, e.g. `S_W2` or `S_A1-`.
    pub fn label(&self, j: usize) -> String {
        let (first, i) = if j < self.n {
            (true, j + 1)
        } else {
            (false, j - self.n + 1)
        };
        match (self.tag, first) {
            (BasisTag::WhitneyAccessory, true) => format!("S_W{i}"),
            (BasisTag::WhitneyAccessory, false) => format!("S_A{i}"),
            (BasisTag::AccessoryPM, true) => format!("S_A{i}+"),
            (BasisTag::AccessoryPM, false) => format!("S_A{i}-"),
        }
    }
}

/// A class in π₂M written in one of the two bases.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SphereClassRepr", into = "SphereClassRepr")]
pub struct SphereClass {
    basis: BasisKind,
    coeffs: Vec<LaurentPoly>,
}

#[derive(Serialize, Deserialize)]
struct SphereClassRepr {
    basis: BasisTag,
    n: usize,
    coeffs: Vec<LaurentPoly>,
}

impl From<SphereClass> for SphereClassRepr {
    fn from(c: SphereClass) -> Self {
        SphereClassRepr {
            basis: c.basis.tag,
            n: c.basis.n,
            coeffs: c.coeffs,
        }
    }
}

impl TryFrom<SphereClassRepr> for SphereClass {
    type Error = Pi2Error;
    fn try_from(r: SphereClassRepr) -> Result<Self, Pi2Error> {
        SphereClass::new(
            BasisKind {
                tag: r.basis,
                n: r.n,
            },
            r.coeffs,
        )
    }
}

impl fmt::Debug for SphereClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SphereClass[{}]({self})", self.basis.tag)
    }
}

impl fmt::Display for SphereClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", self.basis.label(j))?;
            } else {
                write!(f, "({c})·{}", self.basis.label(j))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl SphereClass {
    pub fn new(basis: BasisKind, coeffs: Vec<LaurentPoly>) -> Result<Self, Pi2Error> {
        if coeffs.len() != basis.rank() {
            return Err(Pi2Error::BadLength {
                n: basis.n,
                found: coeffs.len(),
            });
        }
        Ok(SphereClass { basis, coeffs })
    }

    pub fn zero(basis: BasisKind) -> Self {
        SphereClass {
            basis,
            coeffs: vec![LaurentPoly::zero(); basis.rank()],
        }
    }

    fn unit(basis: BasisKind, j: usize) -> Self {
        let mut c = SphereClass::zero(basis);
        c.coeffs[j] = LaurentPoly::one();
        c
    }

    /// S_{W_i} (0-based i) in the WA basis.
    pub fn whitney(n: usize, i: usize) -> Self {
        assert!(i < n, "pair index out of range");
        SphereClass::unit(BasisKind::wa(n), i)
    }

    /// S_{A_i} (0-based i) in the WA basis.
    pub fn accessory(n: usize, i: usize) -> Self {
        assert!(i < n, "pair index out of range");
        SphereClass::unit(BasisKind::wa(n), n + i)
    }

    /// S_{A_i^+} in the PM basis.
    pub fn accessory_plus(n: usize, i: usize) -> Self {
        assert!(i < n, "pair index out of range");
        SphereClass::unit(BasisKind::pm(n), i)
    }

    /// S_{A_i^-} in the PM basis.
    pub fn accessory_minus(n: usize, i: usize) -> Self {
        assert!(i < n, "pair index out of range");
        SphereClass::unit(BasisKind::pm(n), n + i)
    }

    /// Σ a_i S_{W_i} + b_i S_{A_i}.
    pub fn from_wa(a: Vec<LaurentPoly>, b: Vec<LaurentPoly>) -> Result<Self, Pi2Error> {
        if a.len() != b.len() {
            return Err(Pi2Error::DimensionMismatch(a.len(), b.len()));
        }
        let n = a.len();
        SphereClass::new(BasisKind::wa(n), a.into_iter().chain(b).collect())
    }

    /// Σ α_i^+ S_{A_i^+} + α_i^- S_{A_i^-}.
    pub fn from_pm(plus: Vec<LaurentPoly>, minus: Vec<LaurentPoly>) -> Result<Self, Pi2Error> {
        if plus.len() != minus.len() {
            return Err(Pi2Error::DimensionMismatch(plus.len(), minus.len()));
        }
        let n = plus.len();
        SphereClass::new(BasisKind::pm(n), plus.into_iter().chain(minus).collect())
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<LaurentPoly> {
        self.coeffs
    }

    /// Coefficients on the first half of the basis (S_W or S_{A^+}).
    pub fn first_half(&self) -> &[LaurentPoly] {
        &self.coeffs[..self.basis.n]
    }

    /// Coefficients on the second half of the basis (S_A or S_{A^-}).
    pub fn second_half(&self) -> &[LaurentPoly] {
        &self.coeffs[self.basis.n..]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn scale(&self, s: &LaurentPoly) -> Self {
        SphereClass {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&LaurentPoly::constant(-1))
    }

    /// Sum; `rhs` is converted into this class's basis first.
    pub fn add(&self, rhs: &SphereClass) -> Result<Self, Pi2Error> {
        let rhs = self.aligned(rhs)?;
        Ok(SphereClass {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &SphereClass) -> Result<Self, Pi2Error> {
        self.add(&rhs.neg())
    }

    fn aligned(&self, other: &SphereClass) -> Result<SphereClass, Pi2Error> {
        if other.basis.n != self.basis.n {
            return Err(Pi2Error::DimensionMismatch(self.basis.n, other.basis.n));
        }
        Ok(change_basis(other, self.basis.tag))
    }

    pub fn to_wa(&self) -> SphereClass {
        change_basis(self, BasisTag::WhitneyAccessory)
    }

    pub fn to_pm(&self) -> SphereClass {
        change_basis(self, BasisTag::AccessoryPM)
    }

    /// The same class viewed in π₂ after `extra` further (trivial) finger
    /// moves: zero coefficients on the new basis vectors.
    pub fn extend(&self, extra: usize) -> SphereClass {
        let n = self.basis.n;
        let pad = std::iter::repeat_n(LaurentPoly::zero(), extra);
        let mut coeffs = Vec::with_capacity(2 * (n + extra));
        coeffs.extend(self.coeffs[..n].iter().cloned());
        coeffs.extend(pad.clone());
        coeffs.extend(self.coeffs[n..].iter().cloned());
        coeffs.extend(pad);
        SphereClass {
            basis: BasisKind {
                tag: self.basis.tag,
                n: n + extra,
            },
            coeffs,
        }
    }

    /// The Whitney part Σ a_i S_{W_i} of the WA expansion.
    pub fn whitney_part(&self) -> SphereClass {
        let wa = self.to_wa();
        let n = wa.n();
        let mut coeffs = wa.coeffs;
        for c in &mut coeffs[n..] {
            *c = LaurentPoly::zero();
        }
        SphereClass {
            basis: BasisKind::wa(n),
            coeffs,
        }
    }
}

/// The Gram matrix of λ in the given basis.
pub fn metabolic_form(basis: BasisKind) -> HermitianForm {
    let n = basis.n;
    let z = LaurentPoly::z();
    let mut g = Matrix::zeros(2 * n);
    for i in 0..n {
        match basis.tag {
            BasisTag::WhitneyAccessory => {
                g.set(i, n + i, z.clone());
                g.set(n + i, i, z.clone());
                g.set(n + i, n + i, z.clone());
            }
            BasisTag::AccessoryPM => {
                g.set(i, i, z.clone());
                g.set(n + i, n + i, -z.clone());
            }
        }
    }
    HermitianForm::new(g).expect("metabolic Gram matrices are hermitian")
}

/// Rewrites a class in the target basis using S_{W_i} = S_{A_i^+} + S_{A_i^-}
/// and S_{A_i} = S_{A_i^+}.
pub fn change_basis(c: &SphereClass, target: BasisTag) -> SphereClass {
    if c.basis.tag == target {
        return c.clone();
    }
    let n = c.basis.n;
    let (first, second) = (c.first_half(), c.second_half());
    let mut coeffs = Vec::with_capacity(2 * n);
    match target {
        BasisTag::AccessoryPM => {
            // a S_W + b S_A = (a + b) S_{A+} + a S_{A-}
            coeffs.extend(first.iter().zip(second).map(|(a, b)| a + b));
            coeffs.extend(first.iter().cloned());
        }
        BasisTag::WhitneyAccessory => {
            // α⁺ S_{A+} + α⁻ S_{A-} = α⁻ S_W + (α⁺ − α⁻) S_A
            coeffs.extend(second.iter().cloned());
            coeffs.extend(first.iter().zip(second).map(|(p, m)| p - m));
        }
    }
    SphereClass {
        basis: BasisKind { tag: target, n },
        coeffs,
    }
}

/// λ(a, b), computed blockwise (linear in `a`, conjugate-linear in `b`).
/// Classes in different bases are compared in the WA basis.
pub fn lambda(a: &SphereClass, b: &SphereClass) -> Result<LaurentPoly, Pi2Error> {
    if a.n() != b.n() {
        return Err(Pi2Error::DimensionMismatch(a.n(), b.n()));
    }
    let converted;
    let (a, b) = if a.basis.tag == b.basis.tag {
        (a, b)
    } else {
        converted = (a.to_wa(), b.to_wa());
        (&converted.0, &converted.1)
    };
    let n = a.n();
    let mut acc = LaurentPoly::zero();
    let mut pair =
        |x: &LaurentPoly, y: &LaurentPoly, negate: bool| acc.add_product_conj(x, y, negate);
    match a.basis.tag {
        BasisTag::WhitneyAccessory => {
            for i in 0..n {
                let (aw, aa) = (&a.coeffs[i], &a.coeffs[n + i]);
                let (bw, ba) = (&b.coeffs[i], &b.coeffs[n + i]);
                pair(aw, ba, false);
                pair(aa, bw, false);
                pair(aa, ba, false);
            }
        }
        BasisTag::AccessoryPM => {
            for i in 0..n {
                pair(&a.coeffs[i], &b.coeffs[i], false);
                pair(&a.coeffs[n + i], &b.coeffs[n + i], true);
            }
        }
    }
    Ok(&acc * &LaurentPoly::z())
}

/// λ(c, W_i) for each Whitney disk: the S_{A_i}-coefficient b_i of c in the
/// WA basis. This is the surjection Λ^{2n} → Λⁿ whose kernel is the Whitney
/// span, and λ(c, S_{W_i}) = z·b_i.
pub fn whitney_disk_pairing(c: &SphereClass) -> Vec<LaurentPoly> {
    c.to_wa().second_half().to_vec()
}

/// Outcome of the unlinking-condition checks on a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnlinkingReport {
    /// Every Whitney disk pairing λ(W_i, f₂) vanishes.
    pub condition_ii: bool,
    /// λ(f₂, f₂) = 0 and every λ(W_i, f₂) lies in zΛ.
    pub condition_iii: bool,
}

pub fn check_unlinking_conditions(p: &Presentation) -> UnlinkingReport {
    let f2 = p.f2();
    let pairing = whitney_disk_pairing(f2);
    let condition_ii = pairing.iter().all(LaurentPoly::is_zero);
    let self_pairing = lambda(f2, f2).expect("same class");
    let condition_iii =
        self_pairing.is_zero() && pairing.iter().all(|b| b.is_zero() || is_divisible_by_z(b));
    assert!(
        !condition_ii || condition_iii,
        "condition (ii) implies condition (iii)"
    );
    UnlinkingReport {
        condition_ii,
        condition_iii,
    }
}

/// The Λ-valued intersection data of a collection of Whitney disks W_i and
/// positive accessory disks A_j: `ww[i][j] = λ(W_i, W_j)`,
/// `wa[i][j] = λ(W_i, A_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskIntersectionLedger {
    pub ww: Vec<Vec<LaurentPoly>>,
    pub wa: Vec<Vec<LaurentPoly>>,
}

impl DiskIntersectionLedger {
    /// The standard collection: all pairings zero.
    pub fn standard(n: usize) -> Self {
        let zeros = vec![vec![LaurentPoly::zero(); n]; n];
        DiskIntersectionLedger {
            ww: zeros.clone(),
            wa: zeros,
        }
    }
}

/// A metabolic collection has λ(W_i, W_j) = 0 = λ(W_i, A_j) for all i, j.
pub fn check_metabolic_collection(ledger: &DiskIntersectionLedger) -> bool {
    ledger
        .ww
        .iter()
        .chain(&ledger.wa)
        .all(|row| row.iter().all(LaurentPoly::is_zero))
}
