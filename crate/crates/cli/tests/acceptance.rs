//! The acceptance run: ten criteria, one PASS/FAIL line each, each with a
//! wall-clock budget. Runs without the libtest harness so the lines always
//! print.

mod common;

use std::fs;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linkhom::artifact;
use linkhom::diskledger::{
    derive_accessory_twist, double_boundary_twist, join_accessory_twists, multiplicities,
    parity_claim, step8_z2_coefficient, whitney_move_effect, DiskError, DiskKind, DiskRecord,
};
use linkhom::forms::Matrix;
use linkhom::kirk::{difference_map, make_kirk};
use linkhom::pi2::{lambda, metabolic_form, BasisKind};
use linkhom::realize::realization_checks;
use linkhom::samples;
use linkhom::unlink::{reduce, DEFAULT_SEED};
use linkhom::{
    classify, construct_isometry, invariants_of, realize, sigma1_of, sigma2_of, stabilize,
    LaurentPoly, Presentation, SphereClass, ZPoly,
};

type Outcome = Result<String, String>;

/// Name, time budget and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z() -> LaurentPoly {
    LaurentPoly::z()
}

/// Σ p_j·z^j evaluated by Horner's rule in Λ.
fn eval_in_lambda(p: &ZPoly) -> LaurentPoly {
    p.coeffs().iter().rev().fold(LaurentPoly::zero(), |acc, c| {
        &(&acc * &z()) + &LaurentPoly::constant(c.clone())
    })
}

/// Divisibility by z through (1 − x)², since z = −x⁻¹(1 − x)².
fn divisible_by_z(a: &LaurentPoly) -> bool {
    a.exact_div_one_minus_x()
        .and_then(|q| q.exact_div_one_minus_x())
        .is_ok()
}

fn z_decompose_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..1000 {
        let deg = rng.gen_range(0..=8);
        let p = samples::zpoly(&mut rng, deg, 100, 0);
        let k = rng.gen_range(0..=4u32);
        let value = &eval_in_lambda(&p) * &z().pow(k);
        let back = value
            .z_decompose(k)
            .map_err(|e| format!("sample {i}: {e}"))?;
        ensure(back == p, || format!("sample {i}: {back} ≠ {p}"))?;
    }
    let mut rejected = 0;
    while rejected < 1000 {
        let f = samples::laurent(&mut rng, 6, 100);
        if f.is_symmetric() {
            continue;
        }
        let k = rng.gen_range(0..=4u32);
        ensure(f.z_decompose(k).is_err(), || {
            format!("{f} accepted with k = {k}")
        })?;
        rejected += 1;
    }
    Ok("1000 round trips, 1000 asymmetric rejections".into())
}

fn metabolic_values() -> Outcome {
    for n in 1..=5 {
        let g = metabolic_form(BasisKind::wa(n));
        let gp = metabolic_form(BasisKind::pm(n));
        for i in 0..n {
            for j in 0..n {
                let d = if i == j { z() } else { LaurentPoly::zero() };
                let pair = |a: &SphereClass, b: &SphereClass| lambda(a, b).unwrap();
                let (wi, wj) = (SphereClass::whitney(n, i), SphereClass::whitney(n, j));
                let (ai, aj) = (SphereClass::accessory(n, i), SphereClass::accessory(n, j));
                let (pi, pj) = (
                    SphereClass::accessory_plus(n, i),
                    SphereClass::accessory_plus(n, j),
                );
                let (mi, mj) = (
                    SphereClass::accessory_minus(n, i),
                    SphereClass::accessory_minus(n, j),
                );
                ensure(pair(&wi, &wj).is_zero(), || {
                    format!("n={n}: λ(W{i},W{j}) ≠ 0")
                })?;
                ensure(pair(&ai, &aj) == d, || format!("n={n}: λ(A{i},A{j})"))?;
                ensure(pair(&wi, &aj) == d, || format!("n={n}: λ(W{i},A{j})"))?;
                ensure(pair(&pi, &pj) == d, || format!("n={n}: λ(A+{i},A+{j})"))?;
                ensure(pair(&mi, &mj) == -&d, || format!("n={n}: λ(A-{i},A-{j})"))?;
                // the Gram matrices themselves
                ensure(g.gram().get(i, j).is_zero(), || {
                    format!("n={n}: WA Gram W block")
                })?;
                ensure(g.gram().get(n + i, n + j) == &d, || {
                    format!("n={n}: WA Gram A block")
                })?;
                ensure(g.gram().get(i, n + j) == &d, || {
                    format!("n={n}: WA Gram W/A block")
                })?;
                ensure(
                    gp.gram().get(i, j) == &d && gp.gram().get(n + i, n + j) == &-&d,
                    || format!("n={n}: PM Gram"),
                )?;
            }
        }
    }
    Ok("n = 1..5 in both bases".into())
}

fn symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..500 {
        let p = samples::presentation(&mut rng, 4, 4, 6);
        let diff = &sigma1_of(&p) - &sigma2_of(&p);
        ensure(diff.coeff(0).is_zero() && diff.coeff(1).is_zero(), || {
            format!("sample {i}: σ₁ − σ₂ = {diff}")
        })?;
    }
    Ok("500 presentations".into())
}

fn exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..500 {
        let k = samples::kirk_pair(&mut rng, 6, 20);
        let p = realize(&k).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(invariants_of(&p) == k, || {
            format!("pair {i}: realize∘invariants ≠ id at {k}")
        })?;
        ensure(realization_checks(&k, &p).iter().all(|c| c.ok), || {
            format!("pair {i}: transcript")
        })?;
    }
    let mut valid = 0;
    for i in 0..1000 {
        let s1 = samples::zpoly(&mut rng, 6, 5, 1);
        let mut s2 = samples::zpoly(&mut rng, 6, 5, 1);
        if rng.gen_bool(0.5) {
            s2 = &s2 + &ZPoly::monomial(1, s1.coeff(1) - s2.coeff(1));
        }
        let kernel = difference_map(&s1, &s2).is_zero();
        valid += kernel as usize;
        ensure(kernel == make_kirk(s1, s2).is_ok(), || {
            format!("pair {i}: kernel and make_kirk disagree")
        })?;
    }
    Ok(format!(
        "500 realizations; 1000 pairs, {valid} in the kernel"
    ))
}

fn fenn_rolfsen() -> Outcome {
    let p = common::fenn_rolfsen();
    let k = invariants_of(&p);
    // σ₂ = α·ᾱ·z with α = 1, σ₁ = 2 − x − x⁻¹
    let expected = make_kirk(ZPoly::from_ints(&[0, 1]), ZPoly::from_ints(&[0, 1])).unwrap();
    ensure(k == expected, || format!("got {k}"))?;
    ensure(
        eval_in_lambda(k.sigma1()) == LaurentPoly::from_terms([(0, 2), (1, -1), (-1, -1)]),
        || "σ₁ is not 2 − x − x⁻¹".into(),
    )?;
    let v = classify(&p, DEFAULT_SEED);
    ensure(!v.trivial, || "classified as trivial".into())?;
    Ok(format!("{k}, nontrivial"))
}

/// Re-checks a witness from its matrix alone: ΦᵀGι(Φ) = G over the WA
/// Gram matrix built here, Φ − I ∈ z·M, Φ(g) = f₂ with g Whitney-only, and
/// f₂ is the input after the stated stabilizations.
fn recheck_witness(p: &Presentation, w: &linkhom::IsometryWitness) -> Result<(), String> {
    let n = w.n_after;
    let mut gram = Matrix::zeros(2 * n);
    for i in 0..n {
        gram.set(i, n + i, z());
        gram.set(n + i, i, z());
        gram.set(n + i, n + i, z());
    }
    let phi = w.phi.matrix();
    let lhs = phi
        .transpose()
        .mul(&gram)
        .unwrap()
        .mul(&phi.involute())
        .unwrap();
    ensure(lhs == gram, || "Φ does not preserve the form".into())?;
    for i in 0..2 * n {
        for j in 0..2 * n {
            let mut e = phi.get(i, j).clone();
            if i == j {
                e = &e - &LaurentPoly::one();
            }
            ensure(divisible_by_z(&e), || {
                format!("Φ − I not divisible by z at ({i}, {j})")
            })?;
        }
    }
    ensure(w.g.second_half().iter().all(LaurentPoly::is_zero), || {
        "g has accessory terms".into()
    })?;
    let image = phi.apply(w.g.to_wa().coeffs()).unwrap();
    ensure(image == w.f2.to_wa().coeffs(), || "Φ(g) ≠ f₂".into())?;
    let f2 = p.f2().to_wa();
    let extra = n - p.n();
    let mut a = f2.first_half().to_vec();
    let mut b = f2.second_half().to_vec();
    match extra {
        0 => {}
        2 => {
            a.extend([LaurentPoly::one(), LaurentPoly::zero()]);
            b.extend([LaurentPoly::zero(), LaurentPoly::zero()]);
        }
        _ => return Err(format!("unexpected stabilization count {extra}")),
    }
    ensure(SphereClass::from_wa(a, b).unwrap() == w.f2.to_wa(), || {
        "f₂ is not the stabilized input".into()
    })
}

fn witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let base = common::whitney_example();
    let mut suite = vec![
        base.clone(),
        stabilize(&base, true),
        stabilize(&base, false),
        stabilize(&stabilize(&base, false), true),
        stabilize(&stabilize(&base, true), true),
        stabilize(&stabilize(&stabilize(&base, true), false), true),
    ];
    while suite.len() < 60 {
        let n = rng.gen_range(1..=3);
        suite.push(samples::condition_iii(&mut rng, n, 2));
    }
    let mut stabilized = 0;
    for (i, p) in suite.iter().enumerate() {
        ensure(p.n() <= 4, || format!("instance {i} has n = {}", p.n()))?;
        let w = construct_isometry(p, DEFAULT_SEED).map_err(|e| format!("instance {i}: {e}"))?;
        recheck_witness(p, &w).map_err(|e| format!("instance {i}: {e}"))?;
        stabilized += (w.n_after > w.n_before) as usize;
        let cert = reduce(p, &w).map_err(|e| format!("instance {i}: {e}"))?;
        let last = cert
            .trace
            .last()
            .map(|s| s.after.clone())
            .unwrap_or_else(|| cert.witness.f2.clone());
        ensure(last.is_zero(), || {
            format!("instance {i}: reduction ends at {last:?}")
        })?;
        for (a, v) in cert.v_classes.iter().enumerate() {
            for (b, d) in cert.dual_classes.iter().enumerate() {
                let expect = if a == b { z() } else { LaurentPoly::zero() };
                ensure(lambda(v, d).unwrap() == expect, || {
                    format!("instance {i}: λ(V{a}, V{b}†) ≠ z·δ")
                })?;
            }
        }
    }
    Ok(format!(
        "{} instances, {stabilized} needed stabilization, 0 failures",
        suite.len()
    ))
}

fn whitney_move_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let u = samples::laurent(&mut rng, 6, 20);
        let moved = whitney_move_effect(&u);
        ensure(moved == &u - &u.shift(1), || {
            format!("sample {i}: λ(D′, f₂) ≠ (1 − x)·λ(U, f₂)")
        })?;
        let m = multiplicities(&moved);
        ensure(m.primary.is_zero() && m.secondary == u.augment(), || {
            format!(
                "sample {i}: multiplicities ({}, {})",
                m.primary, m.secondary
            )
        })?;
    }
    Ok("1000 samples".into())
}

fn step8_and_parity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut in_scope = 0;
    for i in 0..500 {
        let p = samples::truncated(&mut rng, 4, 6);
        let s = step8_z2_coefficient(&p);
        ensure(s == sigma2_of(&p).coeff(2), || {
            format!("sample {i}: step 8 gives {s}")
        })?;
        match parity_claim(&p) {
            Ok(true) => in_scope += 1,
            Ok(false) => return Err(format!("sample {i}: parity fails")),
            Err(DiskError::PreconditionViolated(_)) => {}
            Err(e) => return Err(format!("sample {i}: {e}")),
        }
    }
    for i in 0..200 {
        let halves = rng.gen_range(1..=3);
        let p = samples::parity_instance(&mut rng, halves, 2);
        ensure(step8_z2_coefficient(&p) == sigma2_of(&p).coeff(2), || {
            format!("parity {i}: step 8")
        })?;
        ensure(matches!(parity_claim(&p), Ok(true)), || {
            format!("parity {i}: claim fails")
        })?;
        in_scope += 1;
    }
    Ok(format!(
        "500 truncated presentations; parity on {in_scope} in-scope instances"
    ))
}

fn twisting_laws() -> Outcome {
    let lam = LaurentPoly::from_terms([(0, 1), (2, -1)]);
    let rec = |kind, w| DiskRecord::new(kind, lam.clone(), w);
    for a in -10..=10 {
        for b in -10..=10 {
            let plus = rec(DiskKind::AccessoryPlus, a);
            let minus = rec(DiskKind::AccessoryMinus, b);
            let joined = join_accessory_twists(&plus, &minus).unwrap();
            ensure(joined == a + b, || format!("join({a}, {b}) = {joined}"))?;
            let w = rec(DiskKind::Whitney, joined);
            // derive then join returns ω(W) + 2ω(A)
            let other = derive_accessory_twist(&w, &plus).unwrap();
            let back = join_accessory_twists(&plus, &rec(DiskKind::AccessoryMinus, other)).unwrap();
            ensure(back == joined + 2 * a, || {
                format!("derive/join at ({a}, {b})")
            })?;
            let w0 = rec(DiskKind::Whitney, a);
            let zero = rec(DiskKind::AccessoryMinus, 0);
            ensure(derive_accessory_twist(&w0, &zero).unwrap() == a, || {
                format!("identity at {a}")
            })?;
            let once = double_boundary_twist(&w, &plus, a).unwrap();
            let twice = double_boundary_twist(&once, &plus, b).unwrap();
            let sum = double_boundary_twist(&w, &plus, a + b).unwrap();
            ensure(
                twice == sum && sum.twisting == w.twisting && sum.primary() == w.primary(),
                || format!("double boundary twists at ({a}, {b})"),
            )?;
            ensure(
                sum.secondary() - w.secondary() == BigInt::from(a + b) * plus.primary(),
                || format!("secondary shift at ({a}, {b})"),
            )?;
        }
    }
    ensure(
        matches!(
            join_accessory_twists(
                &rec(DiskKind::Whitney, 0),
                &rec(DiskKind::AccessoryMinus, 0)
            ),
            Err(DiskError::KindMismatch { .. })
        ),
        || "kind mismatch accepted".into(),
    )?;
    Ok("|ω| ≤ 10 grid".into())
}

fn cli_round_trip() -> Outcome {
    let names = common::corpus();
    for name in &names {
        let text = fs::read_to_string(common::fixture(name)).map_err(|e| format!("{name}: {e}"))?;
        let a = artifact::read(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(artifact::write(&a) == text, || {
            format!("{name}: write∘read changes bytes")
        })?;
    }
    for (name, args) in common::derived() {
        let out = common::derive(&args);
        ensure(out.status.success(), || {
            format!("{name}: exit {:?}", out.status.code())
        })?;
        let stored = fs::read(common::fixture(name)).unwrap();
        ensure(out.stdout == stored, || {
            format!("{name}: CLI output differs from the fixture")
        })?;
    }
    for seed in 0..20 {
        let (name, pointer, text) = common::corruption(seed);
        let dir = std::env::temp_dir().join(format!("linkhom-acceptance-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("corrupt-{seed}.json"));
        fs::write(&path, text).unwrap();
        let out = common::run(&["verify", path.to_str().unwrap()]);
        fs::remove_file(&path).ok();
        ensure(out.status.code() == Some(1), || {
            format!("seed {seed}: {name} at {pointer} not detected")
        })?;
    }
    Ok(format!(
        "{} fixtures byte-identical, 20/20 corruptions detected",
        names.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "z-decomposition round trip",
            Duration::from_secs(5),
            z_decompose_round_trip,
        ),
        (
            "metabolic form values",
            Duration::from_secs(1),
            metabolic_values,
        ),
        ("σ₁ − σ₂ ∈ z²·Z[z]", Duration::from_secs(10), symmetry),
        ("realization exactness", Duration::from_secs(30), exactness),
        (
            "Fenn–Rolfsen datum",
            Duration::from_millis(100),
            fenn_rolfsen,
        ),
        (
            "isometry witnesses and reduction",
            Duration::from_secs(60),
            witnesses,
        ),
        (
            "Whitney move multiplicities",
            Duration::from_secs(1),
            whitney_move_law,
        ),
        (
            "step-8 identity and parity",
            Duration::from_secs(10),
            step8_and_parity,
        ),
        ("twisting laws", Duration::from_millis(100), twisting_laws),
        (
            "CLI round trip and corruption detection",
            Duration::from_secs(5),
            cli_round_trip,
        ),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= budget => Ok(detail),
            Ok(detail) => Err(format!(
                "{detail}, but took {elapsed:.2?} against a budget of {budget:?}"
            )),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(e) => {
                println!("FAIL criterion {}: {name} ({e})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
