//! The same machinery over a prime field.
//!
//! Coefficients are residues mod 7; everything (rank check, change of
//! variables, rewrite engine, oracle) runs with exact modular arithmetic.
//!
//! Run with: cargo run --example prime_field

use magnus::certify::{certify_freeness, CertifyOptions};
use magnus::oracle::{dependency_search_bounded, OracleLimits};
use magnus::sample::{certifiable_instance, normalized_system, random_presentation, TailParams};
use magnus::{Alphabet, EngineLimits, FieldDesc};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let gf7 = FieldDesc::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20260808);

    // a certifiable instance over GF(7)
    let (algebra, candidates) = certifiable_instance(&mut rng, gf7, 2, 1, None);
    let x = Alphabet::numbered("x", algebra.alphabet_size());
    println!("random instance over {gf7}:");
    for (i, h) in algebra.relations().iter().enumerate() {
        println!("  h{} = {}", i + 1, h.display(&x));
    }
    for (i, g) in candidates.candidates().iter().enumerate() {
        println!("  g{} = {}", i + 1, g.display(&x));
    }

    let certificate = certify_freeness(&algebra, &candidates, None, CertifyOptions::default());
    println!("verdict: {}", certificate.verdict.as_str());

    let limits = OracleLimits::default();
    for degree in 1..=4 {
        let dep = dependency_search_bounded(&algebra, &candidates, degree, &limits).unwrap();
        assert!(dep.is_none());
    }
    println!("oracle agrees: no dependency up to degree 4");

    // the rewrite engine over GF(7): sample until a presentation needs steps
    let system = normalized_system(&mut rng, gf7, 4, 2, &TailParams::default());
    let x4 = Alphabet::numbered("x", 4);
    for _ in 0..100 {
        let presentation = random_presentation(&mut rng, &system, 5, 2, true);
        if presentation.evaluate().is_zero() {
            continue;
        }
        let cert = presentation
            .certify_min_monomial(&EngineLimits::default())
            .unwrap();
        if cert.steps == 0 {
            continue;
        }
        println!("\nrandom presentation over GF(7), parameter trace:");
        for tau in &cert.tau_trace {
            println!("  {}", tau.display(&x4));
        }
        println!(
            "{} rewrite steps to reach the minimal monomial {}",
            cert.steps,
            cert.min_monomial.display(&x4)
        );
        break;
    }
}
