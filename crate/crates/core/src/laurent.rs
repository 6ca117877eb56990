//! Exact arithmetic in the group ring Λ = Z[x, x⁻¹] of the infinite cyclic
//! group, together with the structure the rest of the crate leans on:
//!
//! * the involution ι(x) = x⁻¹ ([`LaurentPoly::involute`]),
//! * the augmentation ε (sum of coefficients, [`LaurentPoly::augment`]),
//! * the augmentation ideal I = (1 − x)Λ and its powers ([`LaurentPoly::i_adic_order`],
//!   [`LaurentPoly::i_adic_expand`]),
//! * the symmetric subring Z[z] with z = (1 − x)(1 − x⁻¹) = 2 − x − x⁻¹
//!   ([`ZPoly`], [`LaurentPoly::z_decompose`]).
//!
//! Two identities are used throughout: (1 − x)² = −x·z, so I² = zΛ, and an
//! ι-fixed element of I^{2k} is exactly an element of z^k·Z[z].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json::JsonInt;

/// Default cap for [`LaurentPoly::i_adic_order`].
pub const DEFAULT_ORDER_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("not in z^{k}·Z[z]: {reason}")]
    NotInCone { k: u32, reason: String },
    #[error("malformed polynomial encoding: {0}")]
    Malformed(String),
}

/// An element of Λ = Z[x^±1], stored as a sparse map exponent → nonzero
/// coefficient. Zero coefficients are never stored, so derived equality is
/// ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LaurentRepr", try_from = "LaurentRepr")]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    coeffs: Vec<(i64, JsonInt)>,
}

impl From<LaurentPoly> for LaurentRepr {
    fn from(p: LaurentPoly) -> Self {
        LaurentRepr {
            coeffs: p.coeffs.into_iter().map(|(e, c)| (e, JsonInt(c))).collect(),
        }
    }
}

impl TryFrom<LaurentRepr> for LaurentPoly {
    type Error = LaurentError;

    fn try_from(r: LaurentRepr) -> Result<Self, Self::Error> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in r.coeffs {
            if coeffs.insert(e, c.0).is_some() {
                return Err(LaurentError::Malformed(format!(
                    "exponent {e} listed twice"
                )));
            }
        }
        coeffs.retain(|_, c: &mut BigInt| !c.is_zero());
        Ok(LaurentPoly { coeffs })
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// The group element x.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    /// c·x^exp.
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds a polynomial from (exponent, coefficient) terms; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, &c.into());
        }
        p
    }

    /// 1 − x, the generator of the augmentation ideal.
    pub fn one_minus_x() -> Self {
        Self::from_terms([(0, 1), (1, -1)])
    }

    /// 1 − x⁻¹.
    pub fn one_minus_x_inv() -> Self {
        Self::from_terms([(0, 1), (-1, -1)])
    }

    /// z = (1 − x)(1 − x⁻¹) = 2 − x − x⁻¹.
    pub fn z() -> Self {
        Self::from_terms([(-1, -1), (0, 2), (1, -1)])
    }

    /// P_k = 1 + x + … + x^{k−1}, so that 1 − x^k = (1 − x)·P_k.
    /// For negative k this is −(x⁻¹ + … + x^k), which keeps the identity.
    pub fn geometric_sum(k: i64) -> Self {
        if k >= 0 {
            Self::from_terms((0..k).map(|e| (e, 1)))
        } else {
            Self::from_terms((k..0).map(|e| (e, -1)))
        }
    }

    fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// self += ±a·ι(b), without building the intermediate product.
    pub(crate) fn add_product_conj(&mut self, a: &LaurentPoly, b: &LaurentPoly, negate: bool) {
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                // machine-word products skip the BigInt temporary
                let small = ca
                    .to_i64()
                    .zip(cb.to_i64())
                    .and_then(|(x, y)| x.checked_mul(y));
                match small {
                    Some(t) => {
                        let slot = self.coeffs.entry(ea - eb).or_insert_with(BigInt::zero);
                        *slot += if negate { -t } else { t };
                        if slot.is_zero() {
                            self.coeffs.remove(&(ea - eb));
                        }
                    }
                    None => {
                        let t = ca * cb;
                        self.add_term(ea - eb, &if negate { -t } else { t });
                    }
                }
            }
        }
    }

    /// ι: x ↦ x⁻¹ (exponent negation). A ring automorphism of order two.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// ε: Λ → Z, the sum of the coefficients.
    pub fn augment(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// A unit of Λ is ±x^k: exactly one term with coefficient ±1.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.values().all(|c| c.abs().is_one())
    }

    /// Exact quotient by 1 − x. Divisible iff ε(a) = 0; the quotient
    /// coefficients are the prefix sums of the coefficients of `a`.
    pub fn exact_div_one_minus_x(&self) -> Result<Self, LaurentError> {
        let eps = self.augment();
        if !eps.is_zero() {
            return Err(LaurentError::NotDivisible(format!(
                "augmentation of {self} is {eps}, not 0, so 1 - x does not divide it"
            )));
        }
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(Self::zero()),
        };
        let mut q = LaurentPoly::zero();
        let mut running = BigInt::zero();
        for e in lo..hi {
            if let Some(c) = self.coeffs.get(&e) {
                running += c;
            }
            q.add_term(e, &running);
        }
        Ok(q)
    }

    /// Exact quotient by 1 − x⁻¹ = −x⁻¹(1 − x).
    pub fn exact_div_one_minus_x_inv(&self) -> Result<Self, LaurentError> {
        Ok(-self.exact_div_one_minus_x()?.shift(1))
    }

    /// Exact quotient `self / d` in Λ, or `None` if `d` does not divide `self`
    /// (or `d` is zero). Both sides are shifted to genuine polynomials with
    /// nonzero constant term and divided in Z[x].
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d_lo = d.min_exp()?;
        let d_hi = d.max_exp()?;
        let lead = d.coeffs[&d_hi].clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        // Each step cancels the top term of the remainder. The quotient's
        // lowest exponent is min(self) - d_lo, so once the remainder's top
        // drops below min(self) + (d_hi - d_lo) without vanishing, we fail.
        let floor = self.min_exp()? - d_lo + d_hi;
        while let Some(top) = rem.max_exp() {
            if top < floor {
                return None;
            }
            let (q, r) = rem.coeffs[&top].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let shift = top - d_hi;
            quot.add_term(shift, &q);
            rem = &rem - &d.shift(shift).scale(&q);
        }
        Some(quot)
    }

    /// Largest k with self ∈ I^k, capped at `cap`.
    pub fn i_adic_order_capped(&self, cap: u32) -> IAdicOrder {
        if self.is_zero() {
            return IAdicOrder::Infinite;
        }
        let mut cur = self.clone();
        for k in 0..cap {
            match cur.exact_div_one_minus_x() {
                Ok(q) => cur = q,
                Err(_) => return IAdicOrder::Finite(k),
            }
        }
        IAdicOrder::AtLeast(cap)
    }

    pub fn i_adic_order(&self) -> IAdicOrder {
        self.i_adic_order_capped(DEFAULT_ORDER_CAP)
    }

    /// Integers c₀ … c_{depth−1} with self ≡ Σ c_j (1 − x)^j mod I^depth.
    pub fn i_adic_expand(&self, depth: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(depth);
        let mut cur = self.clone();
        for _ in 0..depth {
            let c = cur.augment();
            cur = (&cur - &LaurentPoly::constant(c.clone()))
                .exact_div_one_minus_x()
                .expect("subtracting the augmentation leaves an element of I");
            out.push(c);
        }
        out
    }

    /// Writes self = z^k · p(z) with p ∈ Z[z]. Exists iff self is ι-fixed and
    /// lies in I^{2k}.
    pub fn z_decompose(&self, k: u32) -> Result<ZPoly, LaurentError> {
        if !self.is_symmetric() {
            return Err(LaurentError::NotInCone {
                k,
                reason: format!("{self} is not fixed by the involution"),
            });
        }
        let mut cur = self.clone();
        for _ in 0..k {
            let step = cur
                .exact_div_one_minus_x()
                .and_then(|q| q.exact_div_one_minus_x_inv());
            cur = step.map_err(|_| LaurentError::NotInCone {
                k,
                reason: format!("{self} is not divisible by z^{k}"),
            })?;
        }
        Ok(symmetric_to_zpoly(&cur))
    }

    /// Canonical h with h + ι(h) = self, for ι-fixed self with even constant
    /// term: h = c₀/2 + Σ_{k>0} c_k x^k.
    pub fn symmetric_half(&self) -> Option<Self> {
        if !self.is_symmetric() || self.coeff(0).is_odd() {
            return None;
        }
        let mut h = LaurentPoly::zero();
        for (e, c) in self.terms() {
            if e > 0 {
                h.add_term(e, c);
            } else if e == 0 {
                h.add_term(0, &(c / 2));
            }
        }
        Some(h)
    }

    /// Canonical t with t − ι(t) = self, for self with ι(self) = −self:
    /// t = Σ_{k>0} c_k x^k.
    pub fn antisymmetric_half(&self) -> Option<Self> {
        if self.involute() != -self.clone() {
            return None;
        }
        Some(LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        })
    }
}

/// Result of [`LaurentPoly::i_adic_order_capped`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IAdicOrder {
    Finite(u32),
    /// The search hit its cap; the element is nonzero.
    AtLeast(u32),
    /// Only the zero element.
    Infinite,
}

impl IAdicOrder {
    /// True when the element is known to lie in I^k.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            IAdicOrder::Finite(o) | IAdicOrder::AtLeast(o) => o >= k,
            IAdicOrder::Infinite => true,
        }
    }
}

// z^n has extreme terms (-1)^n x^{±n}, so reducing from the top degree needs
// only a sign.
fn symmetric_to_zpoly(sym: &LaurentPoly) -> ZPoly {
    let Some(top) = sym.max_exp() else {
        return ZPoly::zero();
    };
    let top = top.max(0) as usize;
    let mut zpows = Vec::with_capacity(top + 1);
    zpows.push(LaurentPoly::one());
    let z = LaurentPoly::z();
    for i in 1..=top {
        let next = &zpows[i - 1] * &z;
        zpows.push(next);
    }
    let mut out = vec![BigInt::zero(); top + 1];
    let mut cur = sym.clone();
    while let Some(n) = cur.max_exp() {
        debug_assert!(
            n >= 0,
            "symmetric polynomial has a nonnegative top exponent"
        );
        let n = n as usize;
        let mut c = cur.coeff(n as i64);
        if n % 2 == 1 {
            c = -c;
        }
        cur = &cur - &zpows[n].scale(&c);
        out[n] = c;
    }
    ZPoly::new(out)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if *e == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &-c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.coeffs.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// An element of the symmetric subring Z[z] ⊂ Λ, stored densely in powers of
/// z (index j holds the coefficient of z^j). Trailing zeros are trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ZPolyRepr", from = "ZPolyRepr")]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct ZPolyRepr {
    zcoeffs: Vec<JsonInt>,
}

impl From<ZPoly> for ZPolyRepr {
    fn from(p: ZPoly) -> Self {
        ZPolyRepr {
            zcoeffs: p.coeffs.into_iter().map(JsonInt).collect(),
        }
    }
}

impl From<ZPolyRepr> for ZPoly {
    fn from(r: ZPolyRepr) -> Self {
        ZPoly::new(r.zcoeffs.into_iter().map(|c| c.0).collect())
    }
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        ZPoly::from_ints(&[1])
    }

    /// c·z^j.
    pub fn monomial(j: usize, c: impl Into<BigInt>) -> Self {
        let mut v = vec![BigInt::zero(); j + 1];
        v[j] = c.into();
        ZPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree in z; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest j with a nonzero z^j coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        ZPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by z^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly::new(v)
    }

    /// The image of p(z) in Λ.
    pub fn embed(&self) -> LaurentPoly {
        let z = LaurentPoly::z();
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &z) + &LaurentPoly::constant(c.clone());
        }
        acc
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if j == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if j == 1 {
                    f.write_str("z")?;
                } else {
                    write!(f, "z^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

fn zip_with(a: &ZPoly, b: &ZPoly, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> ZPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = BigInt::zero();
    ZPoly::new(
        (0..n)
            .map(|j| {
                op(
                    a.coeffs.get(j).unwrap_or(&zero),
                    b.coeffs.get(j).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl<'a> Add<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &'a ZPoly) -> ZPoly {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Add for ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: ZPoly) -> ZPoly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &'a ZPoly) -> ZPoly {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Sub for ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: ZPoly) -> ZPoly {
        &self - &rhs
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &'a ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::new(v)
    }
}

impl Mul for ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: ZPoly) -> ZPoly {
        &self * &rhs
    }
}
