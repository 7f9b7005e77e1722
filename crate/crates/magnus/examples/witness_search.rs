//! Bounded search for generation witnesses.
//!
//! A witness expresses every variable as a polynomial in the candidates plus
//! an ideal element. For the candidate x1 in k<x1,x2>/(x2 - x1*x1) the search
//! finds x1 = z1 and x2 = z1*z1 + (x2 - x1*x1) at degree 2 and verifies it
//! exactly. For x1 + x2 every truncated system is solvable (a power-series
//! artifact) but never exactly, so the search honestly reports nothing.
//!
//! Run with: cargo run --example witness_search

use magnus::certify::verify_generation_witness;
use magnus::oracle::{generation_search_bounded, OracleLimits};
use magnus::{AlgebraPresentation, Alphabet, CandidateSystem, FieldDesc, NcPoly, Scalar, Word};

fn main() {
    let q = FieldDesc::Rational;
    let x = Alphabet::numbered("x", 2);
    let z = Alphabet::numbered("z", 1);
    let limits = OracleLimits::default();

    let relation = NcPoly::from_terms(
        q,
        [
            (Word::var(2), Scalar::one(q)),
            (Word::from_letters(vec![1, 1]), -&Scalar::one(q)),
        ],
    );
    let algebra = AlgebraPresentation::new(q, 2, vec![relation]).unwrap();

    let generating = CandidateSystem::new(vec![NcPoly::var(q, 1)]).unwrap();
    println!("candidates: {{ x1 }}");
    match generation_search_bounded(&algebra, &generating, 2, &limits).unwrap() {
        Some(witness) => {
            println!("witness found at degree 2:");
            for (i, entry) in witness.entries.iter().enumerate() {
                print!("  {} = {}", x.name(i as u32 + 1), entry.phi.display(&z));
                if entry.ideal_part.is_empty() {
                    println!();
                } else {
                    println!(" plus the ideal part:");
                    for term in entry.ideal_part.terms() {
                        println!("    {}", term.display(&x));
                    }
                }
            }
            assert!(verify_generation_witness(&witness, &algebra, &generating));
            println!("witness verifies exactly");
        }
        None => println!("no witness up to degree 2"),
    }

    // x1 + x2 generates a free subalgebra but not the whole algebra
    let shifted = CandidateSystem::new(vec![NcPoly::from_terms(
        q,
        [(Word::var(1), Scalar::one(q)), (Word::var(2), Scalar::one(q))],
    )])
    .unwrap();
    println!("\ncandidates: {{ x1 + x2 }}");
    for degree in [2, 4, 6] {
        let result = generation_search_bounded(&algebra, &shifted, degree, &limits).unwrap();
        println!(
            "degree {degree}: {}",
            match result {
                Some(_) => "witness found",
                None => "nothing (truncated solutions never verify exactly)",
            }
        );
    }
}
