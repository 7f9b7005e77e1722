//! Freeness certificates for finitely presented associative algebras
//! without unity, over the rationals or a prime field.
//!
//! Given an algebra on `n + k` generators with `k` relations and an
//! `n`-element candidate generating system, the certifier checks that the
//! stacked linear parts of candidates and relations are linearly independent,
//! builds the exact linear change of variables, and certifies that the
//! candidates are algebraically independent in the quotient, so they generate
//! a free subalgebra of rank `n`. With a verified generation witness (or an
//! explicit assumption) the algebra itself is certified free of rank `n`.
//!
//! The crate also contains:
//!
//! * exact noncommutative polynomial arithmetic over deg-lex ordered words
//!   ([`poly`], [`word`], [`scalar`]);
//! * the presentation rewrite engine that pushes the parameter of an
//!   ideal-membership presentation up to the minimal monomial of the
//!   presented element ([`presentation`]);
//! * a truncated brute-force oracle for bounded dependency and generation
//!   searches, independent of the certifier ([`oracle`]);
//! * a small input language and a command-line front end ([`parse`],
//!   [`cli`], [`report`]).
//!
//! The `examples/` directory demonstrates each capability; the `magnus`
//! binary exposes the `check`, `member`, `oracle`, and `gen-witness`
//! subcommands.
//!
//! ```
//! use magnus::{AlgebraPresentation, CandidateSystem, FieldDesc, NcPoly, Scalar, Word};
//! use magnus::certify::{certify_freeness, CertifyOptions, Verdict};
//!
//! let q = FieldDesc::Rational;
//! // A = k<x1, x2> / (x2 - x1*x1), candidate {x1}
//! let relation = NcPoly::from_terms(q, [
//!     (Word::var(2), Scalar::one(q)),
//!     (Word::from_letters(vec![1, 1]), -&Scalar::one(q)),
//! ]);
//! let algebra = AlgebraPresentation::new(q, 2, vec![relation]).unwrap();
//! let candidates = CandidateSystem::new(vec![NcPoly::var(q, 1)]).unwrap();
//! let certificate = certify_freeness(&algebra, &candidates, None, CertifyOptions::default());
//! assert_eq!(certificate.verdict, Verdict::FreeSubalgebraCertified);
//! ```

pub mod certify;
pub mod cli;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod word;

pub use certify::{
    AlgebraPresentation, CandidateSystem, Certificate, GenerationWitness, Verdict, WitnessEntry,
};
pub use linalg::LinearMap;
pub use oracle::{Dependency, OracleLimits, TruncatedSpace};
pub use poly::NcPoly;
pub use presentation::{
    EngineLimits, MinMonomialCertificate, Presentation, PresentationTerm, RelationSystem,
};
pub use scalar::{FieldDesc, Scalar};
pub use word::{deglex_cmp, Alphabet, Word};
