//! Accessory-sphere presentations of link maps and the constructive half of
//! the classification: every valid Kirk pair is realized.
//!
//! A presentation records a standard-position first component with n pairs
//! of self-intersections and the class of the second component,
//!
//! ```text
//! f₂ = Σ α_i^+ · S_{A_i^+} + α_i^- · S_{A_i^-}.
//! ```
//!
//! The double point of f₁ carried by an accessory sphere has group element
//! x^{ε(α)}, so pair i contributes q(ε(α_i^+)) − q(ε(α_i^-)) to σ₁ with
//! q(k) = 2 − x^k − x^{−k} = z·P_k·ι(P_k). Its contribution to σ₂ = λ(f₂, f₂)
//! is z·(α_i^+ ι(α_i^+) − α_i^- ι(α_i^-)). The two agree modulo z², which is
//! the symmetry relation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kirk::KirkPair;
use crate::laurent::{LaurentPoly, ZPoly};
use crate::pi2::{lambda, BasisTag, SphereClass};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("f₂ is written over {found} pairs but {expected} pair records are given")]
    CountMismatch { expected: usize, found: usize },
    #[error("pair {pair}: sign must be 1 or -1, found {sign}")]
    BadSign { pair: usize, sign: i64 },
    #[error(
        "pair {pair}: accessory augmentations (ε(α+), ε(α-)) = ({plus}, {minus}) do not match sign {sign}, m = {m}"
    )]
    Multiplicity {
        pair: usize,
        sign: i8,
        m: u64,
        plus: BigInt,
        minus: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("target {0} is not in z·Z[z] (nonzero constant term)")]
    NotInCone(String),
    #[error("target {0} is not in z²·Z[z]")]
    NotInSquareCone(String),
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
}

/// Record of one pair of self-intersections of the standard-position f₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairRecord {
    pub sign: i8,
    pub m: u64,
}

impl PairRecord {
    pub fn new(sign: i8, m: u64) -> Self {
        PairRecord { sign, m }
    }
}

/// How a pair's accessory coefficients carry its primary multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairShape {
    /// Only the accessory sphere named by the sign has augmentation ±m; the
    /// pair contributes sign·q(m) to σ₁.
    OneSided,
    /// Both accessory coefficients have augmentation ±m; the pair contributes
    /// nothing to σ₁.
    Balanced,
}

/// A validated link-map presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct Presentation {
    pairs: Vec<PairRecord>,
    f2: SphereClass,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    sign: i64,
    m: u64,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    pairs: Vec<PairRepr>,
    f2: SphereClass,
}

impl From<Presentation> for PresentationRepr {
    fn from(p: Presentation) -> Self {
        PresentationRepr {
            pairs: p
                .pairs
                .into_iter()
                .map(|r| PairRepr {
                    sign: r.sign as i64,
                    m: r.m,
                })
                .collect(),
            f2: p.f2,
        }
    }
}

impl TryFrom<PresentationRepr> for Presentation {
    type Error = PresentationError;
    fn try_from(r: PresentationRepr) -> Result<Self, PresentationError> {
        let mut pairs = Vec::with_capacity(r.pairs.len());
        for (pair, p) in r.pairs.into_iter().enumerate() {
            if p.sign != 1 && p.sign != -1 {
                return Err(PresentationError::BadSign { pair, sign: p.sign });
            }
            pairs.push(PairRecord::new(p.sign as i8, p.m));
        }
        Presentation::new(pairs, r.f2)
    }
}

fn matches_multiplicity(eps: &BigInt, m: u64) -> bool {
    eps.abs() == BigInt::from(m)
}

impl Presentation {
    pub fn new(pairs: Vec<PairRecord>, f2: SphereClass) -> Result<Self, PresentationError> {
        if f2.n() != pairs.len() {
            return Err(PresentationError::CountMismatch {
                expected: pairs.len(),
                found: f2.n(),
            });
        }
        let p = Presentation { pairs, f2 };
        for (i, (plus, minus)) in p.all_augmentations().into_iter().enumerate() {
            shape_of(i, p.pairs[i], plus, minus)?;
        }
        Ok(p)
    }

    pub fn empty() -> Self {
        Presentation {
            pairs: Vec::new(),
            f2: SphereClass::zero(crate::pi2::BasisKind::pm(0)),
        }
    }

    pub fn pairs(&self) -> &[PairRecord] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn f2(&self) -> &SphereClass {
        &self.f2
    }

    /// (α_i^+, α_i^-) in the positive/negative accessory basis.
    pub fn alphas(&self) -> (Vec<LaurentPoly>, Vec<LaurentPoly>) {
        let pm = self.f2.to_pm();
        (pm.first_half().to_vec(), pm.second_half().to_vec())
    }

    /// (ε(α_i^+), ε(α_i^-)) for pair i.
    pub fn augmentations(&self, i: usize) -> (BigInt, BigInt) {
        let n = self.n();
        let c = self.f2.coeffs();
        match self.f2.basis().tag {
            BasisTag::AccessoryPM => (c[i].augment(), c[n + i].augment()),
            // a S_W + b S_A = (a + b) S_{A+} + a S_{A-}
            BasisTag::WhitneyAccessory => {
                let (a, b) = (c[i].augment(), c[n + i].augment());
                (&a + &b, a)
            }
        }
    }

    /// [`Presentation::augmentations`] for every pair.
    pub fn all_augmentations(&self) -> Vec<(BigInt, BigInt)> {
        (0..self.n()).map(|i| self.augmentations(i)).collect()
    }

    pub fn pair_shape(&self, i: usize) -> Result<PairShape, PresentationError> {
        let (plus, minus) = self.augmentations(i);
        shape_of(i, self.pairs[i], plus, minus)
    }
}

fn shape_of(
    i: usize,
    rec: PairRecord,
    plus: BigInt,
    minus: BigInt,
) -> Result<PairShape, PresentationError> {
    if rec.sign != 1 && rec.sign != -1 {
        return Err(PresentationError::BadSign {
            pair: i,
            sign: rec.sign as i64,
        });
    }
    let (own, other) = if rec.sign > 0 {
        (&plus, &minus)
    } else {
        (&minus, &plus)
    };
    if matches_multiplicity(own, rec.m) && other.is_zero() {
        return Ok(PairShape::OneSided);
    }
    if matches_multiplicity(&plus, rec.m) && matches_multiplicity(&minus, rec.m) {
        return Ok(PairShape::Balanced);
    }
    Err(PresentationError::Multiplicity {
        pair: i,
        sign: rec.sign,
        m: rec.m,
        plus,
        minus,
    })
}

/// q(k) = 2 − x^k − x^{−k} as an element of Z[z]; its top coefficient is
/// (−1)^{k+1} in degree k.
pub fn sigma1_generator(k: u64) -> ZPoly {
    let k = k as i64;
    let q = LaurentPoly::from_terms([(0, 2), (k, -1), (-k, -1)]);
    q.z_decompose(0).expect("q(k) is symmetric")
}

/// σ₁ of the presented link map, Σ_i q(ε(α_i^+)) − q(ε(α_i^-)).
pub fn sigma1_of(p: &Presentation) -> ZPoly {
    let mut counts: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (plus, minus) in p.all_augmentations() {
        for (eps, s) in [(plus, 1), (minus, -1)] {
            let k = eps.abs().to_u64().expect("augmentation fits in u64");
            if k != 0 {
                *counts.entry(k).or_default() += s;
            }
        }
    }
    counts
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .fold(ZPoly::zero(), |acc, (k, c)| {
            &acc + &sigma1_generator(k).scale(&c)
        })
}

/// σ₂ = λ(f₂, f₂), written in Z[z].
pub fn sigma2_of(p: &Presentation) -> ZPoly {
    let l = lambda(p.f2(), p.f2()).expect("same class");
    l.z_decompose(0)
        .expect("a hermitian self-pairing is fixed by the involution")
}

/// Both Kirk invariants of a presentation. Always a valid pair.
pub fn invariants_of(p: &Presentation) -> KirkPair {
    crate::kirk::make_kirk(sigma1_of(p), sigma2_of(p))
        .expect("Kirk invariants of a presentation satisfy the symmetry relation")
}

/// Signed pairs whose σ₁ contributions sum to `target`, by greedy
/// elimination of the top z-degree with q(k).
pub fn realize_sigma1(target: &ZPoly) -> Result<Vec<PairRecord>, RealizeError> {
    if !target.coeff(0).is_zero() {
        return Err(RealizeError::NotInCone(target.to_string()));
    }
    let mut counts: BTreeMap<(u64, i8), u64> = BTreeMap::new();
    let mut rest = target.clone();
    while let Some(d) = rest.degree() {
        let c = rest.coeff(d);
        let top_sign: i8 = if d % 2 == 1 { 1 } else { -1 };
        let sign = if c.is_positive() { top_sign } else { -top_sign };
        let copies = c.abs().to_u64().expect("coefficient count fits in u64");
        let gen = sigma1_generator(d as u64);
        rest = &rest - &gen.scale(&BigInt::from(sign as i64 * copies as i64));
        *counts.entry((d as u64, -sign)).or_default() += copies;
    }
    // ascending m, positive before negative
    Ok(counts
        .into_iter()
        .flat_map(|((m, neg_sign), copies)| {
            std::iter::repeat_n(PairRecord::new(-neg_sign, m), copies as usize)
        })
        .collect())
}

/// One σ₂ correction summand: an extra pair with m = 0 and
/// α = (1 − x)·β on the accessory sphere named by `sign`, contributing
/// sign·β·ι(β)·z² to σ₂ and nothing to σ₁.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionTerm {
    pub sign: i8,
    pub beta: LaurentPoly,
}

impl CorrectionTerm {
    pub fn contribution(&self) -> ZPoly {
        let bb = &self.beta * &self.beta.involute();
        let v = bb.z_decompose(0).expect("β·ι(β) is symmetric").shift(2);
        if self.sign > 0 {
            v
        } else {
            -v
        }
    }
}

/// β-list realizing `target` ∈ z²·Z[z] with β = 1 (giving z²) and
/// β = 1 − x^k (giving q(k)·z², top coefficient (−1)^{k+1} in degree k + 2).
pub fn realize_sigma2_correction(target: &ZPoly) -> Result<Vec<CorrectionTerm>, RealizeError> {
    if !target.coeff(0).is_zero() || !target.coeff(1).is_zero() {
        return Err(RealizeError::NotInSquareCone(target.to_string()));
    }
    let mut out = Vec::new();
    let mut rest = target.clone();
    while let Some(d) = rest.degree() {
        let c = rest.coeff(d);
        let k = (d - 2) as u64;
        let top_sign: i8 = if k == 0 || k % 2 == 1 { 1 } else { -1 };
        let sign = if c.is_positive() { top_sign } else { -top_sign };
        let copies = c.abs().to_u64().expect("coefficient count fits in u64");
        let beta = if k == 0 {
            LaurentPoly::one()
        } else {
            LaurentPoly::from_terms([(0, 1), (k as i64, -1)])
        };
        let term = CorrectionTerm { sign, beta };
        rest = &rest - &term.contribution().scale(&BigInt::from(copies));
        out.extend(std::iter::repeat_n(term, copies as usize));
    }
    Ok(out)
}

/// A presentation whose Kirk invariants are exactly `target`.
///
/// σ₁ is realized by one-sided pairs with α = P_m on the accessory sphere of
/// the pair's sign; these contribute the same amount to σ₂. The remaining
/// σ₂ − σ₁ lies in z²·Z[z] and is realized by m = 0 correction pairs. The
/// result is re-verified before it is returned.
pub fn realize(target: &KirkPair) -> Result<Presentation, RealizeError> {
    let base = realize_sigma1(target.sigma1())?;
    let residual = target.sigma2() - target.sigma1();
    let corrections = realize_sigma2_correction(&residual)?;
    let n = base.len() + corrections.len();
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    let mut pairs = Vec::with_capacity(n);
    let mut place = |sign: i8, m: u64, alpha: LaurentPoly| {
        pairs.push(PairRecord::new(sign, m));
        if sign > 0 {
            plus.push(alpha);
            minus.push(LaurentPoly::zero());
        } else {
            plus.push(LaurentPoly::zero());
            minus.push(alpha);
        }
    };
    for rec in &base {
        place(rec.sign, rec.m, LaurentPoly::geometric_sum(rec.m as i64));
    }
    for term in &corrections {
        place(term.sign, 0, &LaurentPoly::one_minus_x() * &term.beta);
    }
    let f2 = SphereClass::from_pm(plus, minus).expect("equal lengths");
    let p = Presentation::new(pairs, f2)
        .map_err(|e| RealizeError::InternalVerificationFailure(e.to_string()))?;
    let (s1, s2) = (sigma1_of(&p), sigma2_of(&p));
    if &s1 != target.sigma1() || &s2 != target.sigma2() {
        return Err(RealizeError::InternalVerificationFailure(format!(
            "realized ({s1}, {s2}) instead of {target}"
        )));
    }
    Ok(p)
}

/// Transcript of the checks backing a realization.
pub fn realization_checks(target: &KirkPair, p: &Presentation) -> Vec<Check> {
    let (s1, s2) = (sigma1_of(p), sigma2_of(p));
    let mut checks = vec![
        Check::new(
            format!("σ₁(f) = {}", target.sigma1()),
            &s1 == target.sigma1(),
        ),
        Check::new(
            format!("σ₂(f) = {}", target.sigma2()),
            &s2 == target.sigma2(),
        ),
        Check::new(
            "σ₁ − σ₂ ∈ z²·Z[z]",
            (&s1 - &s2).coeff(0).is_zero() && (&s1 - &s2).coeff(1).is_zero(),
        ),
    ];
    let shapes_ok = p
        .all_augmentations()
        .into_iter()
        .enumerate()
        .all(|(i, (plus, minus))| shape_of(i, p.pairs()[i], plus, minus).is_ok());
    checks.push(Check::new(
        format!("{} pairs carry matching accessory augmentations", p.n()),
        shapes_ok,
    ));
    checks
}

/// ε(α) = m for P_m; used by the convention note in transcripts.
pub fn accessory_convention_note() -> &'static str {
    "convention: a σ₁ pair {sign, m} puts α = 1 + x + … + x^{m−1} on its signed accessory sphere \
     and 0 on the other; σ₂ corrections use m = 0 pairs with α = (1 − x)·β"
}

/// The identity q(k) = z·P_k·ι(P_k) behind every σ₁ summand.
pub fn sigma1_summand_via_geometric_sum(k: u64) -> LaurentPoly {
    let pk = LaurentPoly::geometric_sum(k as i64);
    &(&LaurentPoly::z() * &pk) * &pk.involute()
}

impl Presentation {
    /// Appends a pair (used by stabilization) without revalidating earlier
    /// pairs.
    pub(crate) fn with_appended_pair(
        &self,
        rec: PairRecord,
        alpha_plus: LaurentPoly,
        alpha_minus: LaurentPoly,
    ) -> Result<Presentation, PresentationError> {
        let (mut plus, mut minus) = self.alphas();
        plus.push(alpha_plus);
        minus.push(alpha_minus);
        let mut pairs = self.pairs.clone();
        pairs.push(rec);
        let f2 = SphereClass::from_pm(plus, minus).expect("equal lengths");
        let f2 = match self.f2.basis().tag {
            BasisTag::WhitneyAccessory => f2.to_wa(),
            BasisTag::AccessoryPM => f2,
        };
        Presentation::new(pairs, f2)
    }
}
