//! The parameter-raising rewrite on ideal-membership presentations.
//!
//! An element of the two-sided ideal of a normalized relation system
//! (every relation's linear part is its own variable) is given as a sum
//! sum c * p * f_i * q. The parameter of such a presentation is the smallest
//! word appearing among the expanded products; rewriting pushes it up until
//! it equals the minimal monomial of the presented element, which therefore
//! always contains a relation variable.
//!
//! Run with: cargo run --example presentation_rewriting

use std::sync::Arc;

use magnus::{
    Alphabet, EngineLimits, FieldDesc, NcPoly, Presentation, PresentationTerm, RelationSystem,
    Scalar, Word,
};

fn main() {
    let q = FieldDesc::Rational;
    let x = Alphabet::numbered("x", 3);

    // f1 = x1 + x3*x3, f2 = x2 over three variables
    let f1 = NcPoly::from_terms(
        q,
        [
            (Word::var(1), Scalar::one(q)),
            (Word::from_letters(vec![3, 3]), Scalar::one(q)),
        ],
    );
    let f2 = NcPoly::var(q, 2);
    let system = Arc::new(RelationSystem::new(q, 3, vec![f1, f2]).unwrap());
    println!("relations:");
    for (i, f) in system.relations().iter().enumerate() {
        println!("  f{} = {}", i + 1, f.display(&x));
    }

    // f1 * x2 - x1 * f2, which evaluates to x3*x3*x2
    let presentation = Presentation::new(
        Arc::clone(&system),
        vec![
            PresentationTerm::new(Scalar::one(q), Word::empty(), 1, Word::var(2)),
            PresentationTerm::new(-&Scalar::one(q), Word::var(1), 2, Word::empty()),
        ],
    )
    .unwrap();

    let value = presentation.evaluate();
    println!("\npresentation terms (coeff ; left ; relation ; right):");
    for term in presentation.terms() {
        println!("  {}", term.display(&x));
    }
    println!("evaluates to: {}", value.display(&x));
    println!(
        "minimal monomial m(s) = {}",
        value.min_monomial().unwrap().display(&x)
    );
    println!(
        "initial parameter tau = {}",
        presentation.parameter_tau().unwrap().display(&x)
    );

    // one rewrite step in detail
    let improved = presentation.improve_once().unwrap();
    println!("\nafter one rewrite step:");
    for term in improved.terms() {
        println!("  {}", term.display(&x));
    }
    println!(
        "parameter rose to {}",
        improved.parameter_tau().unwrap().display(&x)
    );

    // the full loop, with the visited parameters
    let certificate = presentation
        .certify_min_monomial(&EngineLimits::default())
        .unwrap();
    println!("\nfull run: {} steps, parameter trace:", certificate.steps);
    for tau in &certificate.tau_trace {
        println!("  {}", tau.display(&x));
    }
    println!(
        "certified: the minimal monomial {} contains a relation variable",
        certificate.min_monomial.display(&x)
    );
}
