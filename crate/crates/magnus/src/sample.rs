//! Randomized instance generators for self-tests and fuzzing.
//!
//! Everything takes the RNG as a parameter so callers control seeding and
//! reproducibility.

use std::sync::Arc;

use rand::Rng;

use crate::certify::{AlgebraPresentation, CandidateSystem};
use crate::linalg::{invert_matrix, Matrix};
use crate::poly::NcPoly;
use crate::presentation::{Presentation, PresentationTerm, RelationSystem};
use crate::scalar::{FieldDesc, Scalar};
use crate::word::Word;

pub fn random_word(rng: &mut impl Rng, n_vars: u32, degree: usize) -> Word {
    Word::from_letters((0..degree).map(|_| rng.random_range(1..=n_vars)).collect())
}

pub fn random_nonzero_scalar(rng: &mut impl Rng, field: FieldDesc, bound: i64) -> Scalar {
    match field {
        FieldDesc::Rational => loop {
            let v = rng.random_range(-bound..=bound);
            if v != 0 {
                return Scalar::from_i64(field, v);
            }
        },
        FieldDesc::Prime(p) => Scalar::from_i64(field, rng.random_range(1..i64::from(p))),
    }
}

/// Shape of the higher-degree tails attached to generated polynomials.
#[derive(Debug, Clone, Copy)]
pub struct TailParams {
    pub max_terms: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub coeff_bound: i64,
}

impl Default for TailParams {
    fn default() -> Self {
        TailParams {
            max_terms: 4,
            min_degree: 2,
            max_degree: 3,
            coeff_bound: 3,
        }
    }
}

/// A sum of up to `max_terms` random scaled words of the given degrees
/// (possibly zero after coincidental cancellation).
pub fn random_tail(rng: &mut impl Rng, field: FieldDesc, n_vars: u32, params: &TailParams) -> NcPoly {
    let n_terms = rng.random_range(0..=params.max_terms);
    NcPoly::from_terms(
        field,
        (0..n_terms).map(|_| {
            let degree = rng.random_range(params.min_degree..=params.max_degree);
            (
                random_word(rng, n_vars, degree),
                random_nonzero_scalar(rng, field, params.coeff_bound),
            )
        }),
    )
}

/// A normalized relation system: `f_i = x_i + tail_i` with tails of degree
/// at least 2, so the linear part of `f_i` is exactly `x_i`.
pub fn normalized_system(
    rng: &mut impl Rng,
    field: FieldDesc,
    n_vars: u32,
    k: usize,
    params: &TailParams,
) -> Arc<RelationSystem> {
    let relations = (0..k)
        .map(|i| {
            let head = NcPoly::var(field, i as u32 + 1);
            &head + &random_tail(rng, field, n_vars, params)
        })
        .collect();
    Arc::new(RelationSystem::new(field, n_vars, relations).expect("generated system is valid"))
}

/// A random presentation over the system. With `force_collision` an extra
/// pair of terms with a shared minimal candidate word and cancelling
/// coefficients is appended, which usually drives the parameter strictly
/// below the minimal monomial and forces actual rewrite steps.
pub fn random_presentation(
    rng: &mut impl Rng,
    system: &Arc<RelationSystem>,
    max_terms: usize,
    max_side_degree: usize,
    force_collision: bool,
) -> Presentation {
    let field = system.field();
    let n_vars = system.alphabet_size();
    let k = system.len();
    // with a forced collision, longer side words keep the colliding pair at
    // the parameter minimum often enough to drive actual rewrite steps
    let min_side = usize::from(force_collision).min(max_side_degree);
    let n_terms = rng.random_range(1..=max_terms);
    let mut terms: Vec<PresentationTerm> = (0..n_terms)
        .map(|_| {
            let left_degree = rng.random_range(min_side..=max_side_degree);
            let right_degree = rng.random_range(min_side..=max_side_degree);
            PresentationTerm::new(
                random_nonzero_scalar(rng, field, 3),
                random_word(rng, n_vars, left_degree),
                rng.random_range(1..=k),
                random_word(rng, n_vars, right_degree),
            )
        })
        .collect();
    if force_collision && k >= 1 {
        let left_degree = rng.random_range(0..=1);
        let left = random_word(rng, n_vars, left_degree);
        let right_degree = rng.random_range(0..=1);
        let right = random_word(rng, n_vars, right_degree);
        let a = rng.random_range(1..=k) as u32;
        let b = rng.random_range(1..=k) as u32;
        let coeff = random_nonzero_scalar(rng, field, 3);
        // both terms have tau candidate left * x_a * x_b * right
        terms.push(PresentationTerm::new(
            coeff.clone(),
            left.clone(),
            a as usize,
            Word::var(b).concat(&right),
        ));
        terms.push(PresentationTerm::new(
            -&coeff,
            left.concat(&Word::var(a)),
            b as usize,
            right,
        ));
    }
    Presentation::new(Arc::clone(system), terms).expect("generated terms are valid")
}

/// A random invertible matrix with small integer entries, by rejection.
pub fn random_invertible_matrix(
    rng: &mut impl Rng,
    field: FieldDesc,
    n: usize,
    bound: i64,
) -> Matrix {
    loop {
        let candidate: Matrix = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Scalar::from_i64(field, rng.random_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        if invert_matrix(field, &candidate).is_ok() {
            return candidate;
        }
    }
}

/// A certifiable instance: relations `h_j = x_{n+j} - w_j` with a single
/// word `w_j` of degree 2..=3, and candidates that are invertible linear
/// combinations of all variables (optionally with random tails). The stacked
/// linear parts always have full rank.
pub fn certifiable_instance(
    rng: &mut impl Rng,
    field: FieldDesc,
    n: usize,
    k: usize,
    candidate_tails: Option<&TailParams>,
) -> (AlgebraPresentation, CandidateSystem) {
    if let Some(params) = candidate_tails {
        assert!(params.min_degree >= 2, "tails must not disturb linear parts");
    }
    let n_vars = (n + k) as u32;
    let relations: Vec<NcPoly> = (0..k)
        .map(|j| {
            let head = NcPoly::var(field, (n + j) as u32 + 1);
            let degree = rng.random_range(2..=3);
            let word = random_word(rng, n_vars, degree);
            let tail = NcPoly::from_terms(field, [(word, Scalar::one(field))]);
            &head - &tail
        })
        .collect();
    let algebra = AlgebraPresentation::new(field, n_vars, relations).expect("instance is valid");

    // rank of [candidate rows; relation rows] is full iff the first n columns
    // of the candidate rows are invertible, since relation rows are the unit
    // vectors e_{n+1}..e_{n+k}
    let candidates: Vec<NcPoly> = loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..n_vars as usize)
                    .map(|_| Scalar::from_i64(field, rng.random_range(-2..=2)))
                    .collect()
            })
            .collect();
        let block: Matrix = rows.iter().map(|r| r[..n].to_vec()).collect();
        if n > 0 && invert_matrix(field, &block).is_err() {
            continue;
        }
        break rows
            .into_iter()
            .map(|row| {
                let linear = NcPoly::from_terms(
                    field,
                    row.into_iter()
                        .enumerate()
                        .map(|(i, c)| (Word::var(i as u32 + 1), c)),
                );
                match candidate_tails {
                    Some(params) => &linear + &random_tail(rng, field, n_vars, params),
                    None => linear,
                }
            })
            .collect();
    };
    let candidates = CandidateSystem::new(candidates).expect("candidates are nonzero");
    (algebra, candidates)
}
