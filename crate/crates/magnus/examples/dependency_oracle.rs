//! Brute-force dependency search at bounded degree.
//!
//! In k<x1, x2> modulo the commutator x1*x2 - x2*x1, the images of x1 and x2
//! commute, so z1*z2 - z2*z1 annihilates them: they are algebraically
//! dependent. The oracle finds this by exact linear algebra in the space of
//! words of degree at most D, and re-verifies the membership exactly. On a
//! free pair of generators it finds nothing at any degree.
//!
//! Run with: cargo run --example dependency_oracle

use magnus::oracle::{dependency_search_bounded, ideal_span_up_to, OracleLimits};
use magnus::{AlgebraPresentation, Alphabet, CandidateSystem, FieldDesc, NcPoly, Scalar, Word};

fn main() {
    let q = FieldDesc::Rational;
    let x = Alphabet::numbered("x", 2);
    let z = Alphabet::numbered("z", 2);
    let limits = OracleLimits::default();

    let commutator = NcPoly::from_terms(
        q,
        [
            (Word::from_letters(vec![1, 2]), Scalar::one(q)),
            (Word::from_letters(vec![2, 1]), -&Scalar::one(q)),
        ],
    );
    let algebra = AlgebraPresentation::new(q, 2, vec![commutator]).unwrap();
    let candidates =
        CandidateSystem::new(vec![NcPoly::var(q, 1), NcPoly::var(q, 2)]).unwrap();

    println!(
        "algebra: k<x1,x2> / ({})",
        algebra.relations()[0].display(&x)
    );

    let space = ideal_span_up_to(&algebra, 2, &limits, false).unwrap();
    println!(
        "truncated ideal span at degree 2: dimension {} of {}",
        space.dimension(),
        space.ambient_dimension()
    );

    match dependency_search_bounded(&algebra, &candidates, 2, &limits).unwrap() {
        Some(dependency) => {
            println!("\ndependency found: {}", dependency.phi.display(&z));
            println!("exact: {}", dependency.exact);
            println!("membership presentation of phi(g1, g2):");
            for term in dependency.membership.terms() {
                println!("  {}", term.display(&x));
            }
        }
        None => println!("no dependency up to degree 2"),
    }

    // negative control: the free algebra on two generators
    let free = AlgebraPresentation::new(q, 2, vec![]).unwrap();
    for degree in 1..=4 {
        let result = dependency_search_bounded(&free, &candidates, degree, &limits).unwrap();
        println!(
            "free algebra, degree {degree}: {}",
            if result.is_none() { "nothing found" } else { "?" }
        );
    }
}
