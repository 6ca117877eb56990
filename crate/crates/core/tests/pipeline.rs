use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linkhom::diskledger::{parity_claim, step8_z2_coefficient};
use linkhom::pi2::check_unlinking_conditions;
use linkhom::unlink::{verify_certificate, verify_verdict, DEFAULT_SEED};
use linkhom::{classify, construct_isometry, reduce, samples, sigma2_of, LaurentPoly};

#[test]
fn trivial_maps_meeting_the_conditions_come_with_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3);
        let p = samples::condition_iii(&mut rng, n, 2);
        assert!(check_unlinking_conditions(&p).condition_iii);
        let v = classify(&p, DEFAULT_SEED);
        assert!(v.trivial);
        let cert = v.certificate.as_ref().expect("certificate");
        assert!(verify_certificate(cert).iter().all(|c| c.ok));
        assert!(verify_verdict(&p, &v).iter().all(|c| c.ok));
    }
}

#[test]
fn seeds_change_nothing_when_k_zero_works() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let p = samples::condition_iii(&mut rng, 2, 2);
    let a = construct_isometry(&p, 0).unwrap();
    let b = construct_isometry(&p, 99).unwrap();
    assert_eq!(a, b);
    assert_eq!(reduce(&p, &a).unwrap(), reduce(&p, &b).unwrap());
}

#[test]
fn tampered_certificates_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = samples::condition_iii(&mut rng, 2, 2);
    let cert = classify(&p, DEFAULT_SEED).certificate.unwrap();
    let mut bad = cert.clone();
    bad.alphas[0] = &bad.alphas[0] + &LaurentPoly::one();
    assert!(verify_certificate(&bad).iter().any(|c| !c.ok));
    let mut bad = cert;
    bad.transcript.pop();
    assert!(verify_certificate(&bad).iter().any(|c| !c.ok));
}

#[test]
fn generic_presentations_obey_the_step8_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let p = samples::presentation(&mut rng, 4, 3, 4);
        assert_eq!(step8_z2_coefficient(&p), sigma2_of(&p).coeff(2));
        let halves = rng.gen_range(1..=3);
        let q = samples::parity_instance(&mut rng, halves, 3);
        assert!(parity_claim(&q).unwrap());
    }
}
