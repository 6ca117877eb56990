//! Seeded random instances for property tests, acceptance runs and benches.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::kirk::{make_kirk, KirkPair};
use crate::laurent::{LaurentPoly, ZPoly};
use crate::pi2::{lambda, SphereClass};
use crate::realize::{PairRecord, Presentation};
use crate::unlink::stabilize;

/// Random element with exponents in [−span, span] and |coeff| ≤ bound.
pub fn laurent<R: Rng>(rng: &mut R, span: i64, bound: i64) -> LaurentPoly {
    let terms = rng.gen_range(0..=(2 * span + 1) as usize);
    LaurentPoly::from_terms(
        (0..terms).map(|_| (rng.gen_range(-span..=span), rng.gen_range(-bound..=bound))),
    )
}

/// Random element of Z[z] of degree ≤ deg with coefficients of index below
/// `valuation` forced to zero.
pub fn zpoly<R: Rng>(rng: &mut R, deg: usize, bound: i64, valuation: usize) -> ZPoly {
    ZPoly::new(
        (0..=deg)
            .map(|j| {
                if j < valuation {
                    BigInt::zero()
                } else {
                    BigInt::from(rng.gen_range(-bound..=bound))
                }
            })
            .collect(),
    )
}

/// A valid Kirk pair of z-degree ≤ deg.
pub fn kirk_pair<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> KirkPair {
    let s1 = zpoly(rng, deg, bound, 1);
    let mut s2 = zpoly(rng, deg, bound, 2);
    s2 = &s2 + &ZPoly::monomial(1, s1.coeff(1));
    make_kirk(s1, s2).expect("z¹ coefficients agree by construction")
}

/// A random element with augmentation exactly `eps`.
pub fn with_augmentation<R: Rng>(rng: &mut R, eps: i64, span: i64, bound: i64) -> LaurentPoly {
    let shift = rng.gen_range(-span..=span);
    let base = LaurentPoly::monomial(shift, eps);
    &base + &(&LaurentPoly::one_minus_x() * &laurent(rng, span, bound))
}

/// A valid pair record for the given accessory coefficients, if one exists.
pub fn pair_for<R: Rng>(
    rng: &mut R,
    plus: &LaurentPoly,
    minus: &LaurentPoly,
) -> Option<PairRecord> {
    let (ep, em) = (plus.augment().abs(), minus.augment().abs());
    let m = |e: &BigInt| e.to_u64();
    if ep == em {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        Some(PairRecord::new(sign, m(&ep)?))
    } else if em.is_zero() {
        Some(PairRecord::new(1, m(&ep)?))
    } else if ep.is_zero() {
        Some(PairRecord::new(-1, m(&em)?))
    } else {
        None
    }
}

/// A random valid presentation with n ≤ n_max pairs, multiplicities ≤ m_max
/// and coefficient exponents within ±span.
pub fn presentation<R: Rng>(rng: &mut R, n_max: usize, m_max: u64, span: i64) -> Presentation {
    let n = rng.gen_range(0..=n_max);
    let mut pairs = Vec::with_capacity(n);
    let (mut plus, mut minus) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let m = rng.gen_range(0..=m_max) as i64;
        let sgn = |rng: &mut R| if rng.gen_bool(0.5) { 1 } else { -1 };
        let (ep, em) = match rng.gen_range(0..3) {
            0 => (sgn(rng) * m, 0),
            1 => (0, sgn(rng) * m),
            _ => (sgn(rng) * m, sgn(rng) * m),
        };
        let a = with_augmentation(rng, ep, span / 2, 3);
        let b = with_augmentation(rng, em, span / 2, 3);
        pairs.push(pair_for(rng, &a, &b).expect("augmentations chosen to fit"));
        plus.push(a);
        minus.push(b);
    }
    let f2 = SphereClass::from_pm(plus, minus).expect("equal lengths");
    let f2 = if rng.gen_bool(0.5) { f2.to_wa() } else { f2 };
    Presentation::new(pairs, f2).expect("valid by construction")
}

/// A presentation satisfying condition (iii) but, typically, not (ii):
/// f₂ = Σ a_i S_{W_i} + z·c_i S_{A_i} with λ(f₂, f₂) = 0, possibly followed by
/// some finger moves.
pub fn condition_iii<R: Rng>(rng: &mut R, n: usize, span: i64) -> Presentation {
    assert!(n >= 1);
    let mut a: Vec<LaurentPoly> = (0..n).map(|_| laurent(rng, span, 2)).collect();
    let mut c: Vec<LaurentPoly> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.3) {
                LaurentPoly::zero()
            } else {
                laurent(rng, span, 2)
            }
        })
        .collect();
    // one unit c_0 = ±x^j so that a_0 can absorb the self-pairing
    let unit_sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    c[0] = LaurentPoly::monomial(rng.gen_range(-span..=span), unit_sign);
    // need Σ a_i ι(c_i) + ι(a_i) c_i = −z Σ c_i ι(c_i)
    let z = LaurentPoly::z();
    let mut rhs = LaurentPoly::zero();
    for ci in &c {
        rhs -= &(&z * &(ci * &ci.involute()));
    }
    for (ai, ci) in a.iter().zip(&c).skip(1) {
        let y = ai * &ci.involute();
        rhs -= &(&y + &y.involute());
    }
    let h = rhs.symmetric_half().expect("even constant term");
    let s = laurent(rng, span, 2);
    let target = &(&h + &s) - &s.involute();
    // a_0 ι(c_0) = target, and 1/ι(c_0) = c_0 for c_0 = ±x^j
    a[0] = &target * &c[0];
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..n).collect();
        o.shuffle(rng);
        o
    };
    let a: Vec<LaurentPoly> = order.iter().map(|&i| a[i].clone()).collect();
    let b: Vec<LaurentPoly> = order.iter().map(|&i| &z * &c[i]).collect();
    let f2 = SphereClass::from_wa(a, b).expect("equal lengths");
    debug_assert!(lambda(&f2, &f2).unwrap().is_zero());
    let pm = f2.to_pm();
    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        pairs.push(pair_for(rng, &pm.coeffs()[i], &pm.coeffs()[n + i]).expect("balanced"));
    }
    let mut p = Presentation::new(pairs, f2).expect("valid by construction");
    for _ in 0..rng.gen_range(0..=1) {
        p = stabilize(&p, rng.gen_bool(0.5));
    }
    p
}

/// A presentation whose accessory coefficients are m + n(1 − x) + q·z.
pub fn truncated<R: Rng>(rng: &mut R, n_max: usize, bound: i64) -> Presentation {
    let n = rng.gen_range(0..=n_max);
    let coeff = |rng: &mut R, m: i64| {
        let n1 = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(-bound..=bound);
        &(&LaurentPoly::constant(m) + &LaurentPoly::one_minus_x().scale(&BigInt::from(n1)))
            + &LaurentPoly::z().scale(&BigInt::from(q))
    };
    let mut pairs = Vec::with_capacity(n);
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let m = rng.gen_range(-bound..=bound);
        let (mp, mm) = match rng.gen_range(0..3) {
            0 => (m, 0),
            1 => (0, m),
            _ => (m, if rng.gen_bool(0.5) { m } else { -m }),
        };
        let (a, b) = (coeff(rng, mp), coeff(rng, mm));
        pairs.push(pair_for(rng, &a, &b).expect("augmentations chosen to fit"));
        plus.push(a);
        minus.push(b);
    }
    let f2 = SphereClass::from_pm(plus, minus).expect("equal lengths");
    Presentation::new(pairs, f2).expect("valid by construction")
}

/// An instance meeting every hypothesis of the parity claim: mirrored pairs
/// (α, β) and (β, α) with ε(α) = ε(β) = m ∈ {0, 1}, n⁺ − n⁻ ∈ {0, ±1} and no
/// difference when m = 1.
pub fn parity_instance<R: Rng>(rng: &mut R, halves: usize, span: i64) -> Presentation {
    let mut cols: Vec<(LaurentPoly, LaurentPoly)> = Vec::new();
    for _ in 0..halves {
        let m = rng.gen_range(0..=1i64);
        let d = if m == 1 { 0 } else { rng.gen_range(-1..=1i64) };
        let n_minus = rng.gen_range(-3..=3i64);
        let build = |rng: &mut R, n1: i64| {
            let tail = &LaurentPoly::one_minus_x().pow(2) * &laurent(rng, span, 2);
            &(&LaurentPoly::constant(m) + &LaurentPoly::one_minus_x().scale(&BigInt::from(n1)))
                + &tail
        };
        let a = build(rng, n_minus + d);
        let b = build(rng, n_minus);
        cols.push((a.clone(), b.clone()));
        cols.push((b, a));
    }
    cols.shuffle(rng);
    let mut pairs = Vec::with_capacity(cols.len());
    for (a, _) in &cols {
        let m = a.augment().to_u64().expect("m ∈ {0, 1}");
        pairs.push(PairRecord::new(if rng.gen_bool(0.5) { 1 } else { -1 }, m));
    }
    let (plus, minus): (Vec<_>, Vec<_>) = cols.into_iter().unzip();
    let f2 = SphereClass::from_pm(plus, minus).expect("equal lengths");
    Presentation::new(pairs, f2).expect("balanced pairs are valid")
}

/// A random class over n pairs in a random basis.
pub fn sphere_class<R: Rng>(rng: &mut R, n: usize, span: i64, bound: i64) -> SphereClass {
    let a = (0..n).map(|_| laurent(rng, span, bound)).collect();
    let b = (0..n).map(|_| laurent(rng, span, bound)).collect();
    if rng.gen_bool(0.5) {
        SphereClass::from_wa(a, b).expect("equal lengths")
    } else {
        SphereClass::from_pm(a, b).expect("equal lengths")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi2::check_unlinking_conditions;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = kirk_pair(&mut rng, 5, 9);
            assert!(k.z_degree().unwrap_or(0) <= 5);
            let n = rng.gen_range(1..=3);
            let p = condition_iii(&mut rng, n, 2);
            assert!(check_unlinking_conditions(&p).condition_iii);
            let p = parity_instance(&mut rng, 2, 2);
            assert!(lambda(p.f2(), p.f2()).unwrap().is_zero());
            let _ = presentation(&mut rng, 4, 4, 6);
            let _ = truncated(&mut rng, 4, 3);
        }
    }
}
