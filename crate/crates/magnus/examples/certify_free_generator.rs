//! End-to-end freeness certification through the library API.
//!
//! The algebra is k<x1, x2> modulo x2 - x1*x1. It is freely generated by the
//! image of x1 alone: x2 is just the square of x1. The certifier proves this
//! from the rank of the stacked linear parts, and a generation witness
//! upgrades the verdict to full freeness of rank 1.
//!
//! Run with: cargo run --example certify_free_generator

use std::sync::Arc;

use magnus::certify::{certify_freeness, CertifyOptions};
use magnus::{
    AlgebraPresentation, Alphabet, CandidateSystem, FieldDesc, GenerationWitness, NcPoly,
    Presentation, PresentationTerm, Scalar, Word, WitnessEntry,
};

fn main() {
    let q = FieldDesc::Rational;
    let x = Alphabet::numbered("x", 2);
    let y = Alphabet::numbered("y", 2);

    // x2 - x1*x1
    let relation = NcPoly::from_terms(
        q,
        [
            (Word::var(2), Scalar::one(q)),
            (Word::from_letters(vec![1, 1]), -&Scalar::one(q)),
        ],
    );
    let algebra = AlgebraPresentation::new(q, 2, vec![relation]).unwrap();
    let candidates = CandidateSystem::new(vec![NcPoly::var(q, 1)]).unwrap();

    println!("algebra: k<x1,x2> / ({})", algebra.relations()[0].display(&x));
    println!(
        "candidate generators: {}",
        candidates.candidates()[0].display(&x)
    );

    // without any generation information only the subalgebra claim is made
    let partial = certify_freeness(&algebra, &candidates, None, CertifyOptions::default());
    println!("\nwithout a witness: {}", partial.verdict.as_str());

    // witness: x1 = z1 (no ideal part), x2 = z1*z1 + (x2 - x1*x1)
    let system = algebra.relation_system();
    let witness = GenerationWitness {
        entries: vec![
            WitnessEntry {
                phi: NcPoly::var(q, 1),
                ideal_part: Presentation::new(Arc::clone(&system), vec![]).unwrap(),
            },
            WitnessEntry {
                phi: NcPoly::from_terms(
                    q,
                    [(Word::from_letters(vec![1, 1]), Scalar::one(q))],
                ),
                ideal_part: Presentation::new(
                    Arc::clone(&system),
                    vec![PresentationTerm::new(
                        Scalar::one(q),
                        Word::empty(),
                        1,
                        Word::empty(),
                    )],
                )
                .unwrap(),
            },
        ],
    };

    let full = certify_freeness(&algebra, &candidates, Some(&witness), CertifyOptions::default());
    println!("with the witness:  {}", full.verdict.as_str());

    println!("\nrank: {} of {}", full.rank, algebra.alphabet_size());
    for (i, p) in full.phi_candidates.iter().enumerate() {
        println!("phi(g{}) = {}", i + 1, p.display(&y));
    }
    for (i, p) in full.phi_relations.iter().enumerate() {
        println!("phi(h{}) = {}", i + 1, p.display(&y));
    }
    for note in &full.assumptions {
        println!("note: {note}");
    }
}
