//! The freeness certifier: linear-part rank check, exact change of variables,
//! transformed instance, and the resulting certificate.
//!
//! Given an algebra on `n + k` generators with `k` relations and an
//! `n`-element candidate system, the pipeline stacks the linear parts of
//! candidates and relations into a square matrix, inverts it exactly, and
//! rewrites the instance in the new coordinates, where every transformed
//! polynomial has its own variable as linear part. That establishes that the
//! candidates are algebraically independent in the quotient, i.e. generate a
//! free subalgebra of rank `n`. With a verified generation witness (or an
//! explicit assumption) the verdict upgrades to full freeness of the algebra.

use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{invert_matrix, LinearMap, Matrix};
use crate::poly::NcPoly;
use crate::presentation::{EngineError, Presentation, PresentationTerm, RelationSystem};
use crate::scalar::{FieldDesc, Scalar};
use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("need at least one variable")]
    EmptyAlphabet,
    #[error("{relations} relations require fewer relations than the {alphabet} variables")]
    TooManyRelations { relations: usize, alphabet: u32 },
    #[error("relation {index} is zero")]
    ZeroRelation { index: usize },
    #[error("candidate {index} is zero")]
    ZeroCandidate { index: usize },
    #[error("polynomial uses variable {letter} outside the alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },
    #[error("polynomial is over {found}, expected {expected}")]
    FieldMismatch {
        expected: FieldDesc,
        found: FieldDesc,
    },
    #[error("{candidates} candidates and {relations} relations do not match {alphabet} variables")]
    UnbalancedCounts {
        candidates: usize,
        relations: usize,
        alphabet: u32,
    },
}

/// A finitely presented algebra without unity: the free algebra on
/// `alphabet_size` variables modulo the two-sided ideal of the relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    field: FieldDesc,
    alphabet_size: u32,
    relations: Vec<NcPoly>,
}

impl AlgebraPresentation {
    pub fn new(
        field: FieldDesc,
        alphabet_size: u32,
        relations: Vec<NcPoly>,
    ) -> Result<Self, InstanceError> {
        if alphabet_size == 0 {
            return Err(InstanceError::EmptyAlphabet);
        }
        if relations.len() >= alphabet_size as usize {
            return Err(InstanceError::TooManyRelations {
                relations: relations.len(),
                alphabet: alphabet_size,
            });
        }
        for (i, h) in relations.iter().enumerate() {
            if h.is_zero() {
                return Err(InstanceError::ZeroRelation { index: i + 1 });
            }
            check_poly(h, field, alphabet_size)?;
        }
        Ok(AlgebraPresentation {
            field,
            alphabet_size,
            relations,
        })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// Number of relations, `k`.
    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    /// The relations packaged for presentation building (over the original
    /// variables; not normalized in general).
    pub fn relation_system(&self) -> Arc<RelationSystem> {
        Arc::new(
            RelationSystem::new(self.field, self.alphabet_size, self.relations.clone())
                .expect("validated at construction"),
        )
    }
}

fn check_poly(p: &NcPoly, field: FieldDesc, alphabet_size: u32) -> Result<(), InstanceError> {
    if p.field() != field {
        return Err(InstanceError::FieldMismatch {
            expected: field,
            found: p.field(),
        });
    }
    if p.max_letter() > alphabet_size {
        return Err(InstanceError::LetterOutOfRange {
            letter: p.max_letter(),
            alphabet: alphabet_size,
        });
    }
    Ok(())
}

/// Candidate generators `g_1..g_n` over the algebra's alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSystem {
    candidates: Vec<NcPoly>,
}

impl CandidateSystem {
    pub fn new(candidates: Vec<NcPoly>) -> Result<Self, InstanceError> {
        for (i, g) in candidates.iter().enumerate() {
            if g.is_zero() {
                return Err(InstanceError::ZeroCandidate { index: i + 1 });
            }
        }
        Ok(CandidateSystem { candidates })
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn candidates(&self) -> &[NcPoly] {
        &self.candidates
    }

    /// Replaces the candidates by invertible linear combinations of
    /// themselves: `g'_i = sum_j t[i][j] g_j`.
    pub fn transformed(&self, t: &[Vec<Scalar>]) -> CandidateSystem {
        assert!(t.len() == self.candidates.len(), "dimension mismatch");
        let field = self.candidates[0].field();
        let candidates = t
            .iter()
            .map(|row| {
                let mut acc = NcPoly::zero(field);
                for (g, c) in self.candidates.iter().zip(row) {
                    acc = &acc + &g.scale(c);
                }
                acc
            })
            .collect();
        CandidateSystem { candidates }
    }
}

/// Checks that the counts fit the certifier's hypothesis `n + k = N`.
pub fn check_balanced(
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
) -> Result<(), InstanceError> {
    let n = candidates.len();
    let k = algebra.relation_count();
    if n + k != algebra.alphabet_size() as usize {
        return Err(InstanceError::UnbalancedCounts {
            candidates: n,
            relations: k,
            alphabet: algebra.alphabet_size(),
        });
    }
    Ok(())
}

/// Witness data expressing every variable through the candidates modulo the
/// relation ideal: `x_i = phi_i(g_1..g_n) + d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationWitness {
    /// Entry `i` (0-based) witnesses variable `x_{i+1}`.
    pub entries: Vec<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessEntry {
    /// Polynomial in slot variables `z1..zn`, one slot per candidate.
    pub phi: NcPoly,
    /// Presentation of the ideal part `d_i` over the algebra's relations.
    pub ideal_part: Presentation,
}

/// Verifies a witness exactly: for every variable,
/// `phi_i(g) + evaluate(d_i) == x_i`.
pub fn verify_generation_witness(
    witness: &GenerationWitness,
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
) -> bool {
    if witness.entries.len() != algebra.alphabet_size() as usize {
        return false;
    }
    witness.entries.iter().enumerate().all(|(i, entry)| {
        if entry.phi.max_letter() as usize > candidates.len() {
            return false;
        }
        let built = &entry.phi.substitute(candidates.candidates()) + &entry.ideal_part.evaluate();
        built == NcPoly::var(algebra.field(), i as u32 + 1)
    })
}

/// Stacks the linear parts of the candidates (rows `1..n`) and relations
/// (rows `n+1..n+k`) as coordinate rows in the variable basis, together with
/// the linear-part polynomials themselves. Zero rows are permitted here; the
/// rank check happens next.
pub fn linear_parts_matrix(
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
) -> (Matrix, Vec<NcPoly>) {
    let field = algebra.field();
    let n_vars = algebra.alphabet_size();
    let linear_parts: Vec<NcPoly> = candidates
        .candidates()
        .iter()
        .chain(algebra.relations())
        .map(NcPoly::linear_part)
        .collect();
    let matrix = linear_parts
        .iter()
        .map(|y| {
            (1..=n_vars)
                .map(|r| {
                    y.coeff(&Word::var(r))
                        .cloned()
                        .unwrap_or_else(|| Scalar::zero(field))
                })
                .collect()
        })
        .collect();
    (matrix, linear_parts)
}

/// Exact Gaussian elimination on the stacked linear-part matrix. On full rank
/// returns the change of variables (matrix = the inverse, with the original
/// matrix cached as its inverse); otherwise reports the deficient rank.
pub fn rank_and_invert(field: FieldDesc, beta: &Matrix) -> Result<LinearMap, usize> {
    let alpha = invert_matrix(field, beta)?;
    Ok(LinearMap::from_parts(field, alpha, Some(beta.clone())))
}

/// Applies the change of variables to every candidate and relation. The
/// results are read over the new coordinates: candidate `j` has linear part
/// equal to variable `j`, relation `j` to variable `n + j`.
pub fn build_phi(
    map: &LinearMap,
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
) -> (Vec<NcPoly>, Vec<NcPoly>) {
    let phi_candidates = candidates.candidates().iter().map(|g| map.apply(g)).collect();
    let phi_relations = algebra.relations().iter().map(|h| map.apply(h)).collect();
    (phi_candidates, phi_relations)
}

/// Checks that in the new coordinates every transformed polynomial has
/// exactly its own variable as linear part. This must hold whenever the rank
/// check passed; a `false` here indicates an internal error.
pub fn verify_eq3(field: FieldDesc, phi_candidates: &[NcPoly], phi_relations: &[NcPoly]) -> bool {
    phi_candidates
        .iter()
        .chain(phi_relations)
        .enumerate()
        .all(|(j, p)| p.linear_part() == NcPoly::var(field, j as u32 + 1))
}

/// Verdict of the certifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The candidates are algebraically independent in the algebra: they
    /// generate a free subalgebra of rank `n`.
    FreeSubalgebraCertified,
    /// Additionally the candidates generate the algebra (witnessed or
    /// assumed), so the algebra itself is free of rank `n`.
    FullFreenessCertified,
    /// The stacked linear parts are rank deficient; no candidate system
    /// containing these linear parts can generate the algebra.
    Rejected,
    /// The pipeline could not reach a verdict.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FreeSubalgebraCertified => "FREE_SUBALGEBRA_CERTIFIED",
            Verdict::FullFreenessCertified => "FULL_FREENESS_CERTIFIED",
            Verdict::Rejected => "REJECTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// The auditable outcome of the pipeline: the stacked linear-part matrix, its
/// inverse, all transformed polynomials, and the recorded assumptions, so a
/// third party can replay every check.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub verdict: Verdict,
    pub rank: usize,
    pub beta: Matrix,
    pub alpha: Option<Matrix>,
    pub phi_candidates: Vec<NcPoly>,
    pub phi_relations: Vec<NcPoly>,
    pub eq3_verified: bool,
    pub assumptions: Vec<String>,
    pub rejection_reason: Option<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CertifyOptions {
    pub assume_generation: bool,
}

/// Runs the full pipeline. Panics if `candidates.len() + relations != alphabet`;
/// use [`check_balanced`] to validate user input first.
pub fn certify_freeness(
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
    witness: Option<&GenerationWitness>,
    options: CertifyOptions,
) -> Certificate {
    check_balanced(algebra, candidates).expect("candidate and relation counts must match the alphabet");
    let field = algebra.field();
    let n_vars = algebra.alphabet_size() as usize;
    let (beta, _linear_parts) = linear_parts_matrix(algebra, candidates);

    let map = match rank_and_invert(field, &beta) {
        Ok(map) => map,
        Err(rank) => {
            return Certificate {
                verdict: Verdict::Rejected,
                rank,
                beta,
                alpha: None,
                phi_candidates: Vec::new(),
                phi_relations: Vec::new(),
                eq3_verified: false,
                assumptions: Vec::new(),
                rejection_reason: Some(format!(
                    "linear parts of candidates and relations have rank {rank} < {n_vars}"
                )),
            };
        }
    };

    let (phi_candidates, phi_relations) = build_phi(&map, algebra, candidates);
    let eq3_verified = verify_eq3(field, &phi_candidates, &phi_relations);
    assert!(
        eq3_verified,
        "internal error: transformed linear parts disagree with the change of variables"
    );

    let mut assumptions = Vec::new();
    let mut verdict = Verdict::FreeSubalgebraCertified;
    if let Some(w) = witness {
        if verify_generation_witness(w, algebra, candidates) {
            assumptions.push("generation witnessed and verified".to_string());
            verdict = Verdict::FullFreenessCertified;
        } else {
            assumptions.push(
                "supplied generation witness failed verification; verdict limited to the free subalgebra claim"
                    .to_string(),
            );
        }
    }
    if verdict != Verdict::FullFreenessCertified && options.assume_generation {
        assumptions.push("generation assumed without verification".to_string());
        verdict = Verdict::FullFreenessCertified;
    }
    if verdict == Verdict::FreeSubalgebraCertified && assumptions.is_empty() {
        assumptions.push("generation neither witnessed nor assumed".to_string());
    }

    Certificate {
        verdict,
        rank: n_vars,
        beta,
        alpha: Some(map.matrix().to_vec()),
        phi_candidates,
        phi_relations,
        eq3_verified,
        assumptions,
        rejection_reason: None,
    }
}

/// The transformed relation system in engine coordinates: after the change of
/// variables, relation `j` has linear part `y_{n+j}`; swapping the variable
/// blocks `{1..n}` and `{n+1..n+k}` renames it to variable `j`, which is the
/// normalized shape the rewrite engine expects.
///
/// Returns the composite substitution (change of variables followed by the
/// block swap) and the resulting normalized system.
pub fn normalized_transformed_system(
    map: &LinearMap,
    algebra: &AlgebraPresentation,
    n_candidates: usize,
) -> (LinearMap, Arc<RelationSystem>) {
    let field = algebra.field();
    let n_vars = algebra.alphabet_size() as usize;
    let k = algebra.relation_count();
    let n = n_candidates;
    assert!(n + k == n_vars, "counts must be balanced");

    let swap = |r: usize| if r < n { r + k } else { r - n };
    let composite: Matrix = map
        .matrix()
        .iter()
        .map(|row| {
            let mut new_row = vec![Scalar::zero(field); n_vars];
            for (r, c) in row.iter().enumerate() {
                new_row[swap(r)] = c.clone();
            }
            new_row
        })
        .collect();
    let composite = LinearMap::from_matrix(field, composite);

    let relations: Vec<NcPoly> = algebra
        .relations()
        .iter()
        .map(|h| composite.apply(h))
        .collect();
    let system = Arc::new(
        RelationSystem::new(field, algebra.alphabet_size(), relations)
            .expect("transformed relations are valid"),
    );
    debug_assert!(system.is_normalized());
    (composite, system)
}

/// Pushes a presentation through a substitution: each factor word expands
/// into the image polynomial, so one term becomes a sum of terms. The result
/// presents the image of the original element over the transformed system.
pub fn transform_presentation(
    substitution: &LinearMap,
    presentation: &Presentation,
    new_system: Arc<RelationSystem>,
) -> Result<Presentation, EngineError> {
    let field = new_system.field();
    let one = Scalar::one(field);
    let mut terms = Vec::new();
    for t in presentation.terms() {
        let left_terms: Vec<(Word, Scalar)> = if t.left.is_empty() {
            vec![(Word::empty(), one.clone())]
        } else {
            substitution
                .apply_word(&t.left)
                .terms()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect()
        };
        let right_terms: Vec<(Word, Scalar)> = if t.right.is_empty() {
            vec![(Word::empty(), one.clone())]
        } else {
            substitution
                .apply_word(&t.right)
                .terms()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect()
        };
        for (lw, lc) in &left_terms {
            for (rw, rc) in &right_terms {
                terms.push(PresentationTerm::new(
                    &(&t.coeff * lc) * rc,
                    lw.clone(),
                    t.rel_index,
                    rw.clone(),
                ));
            }
        }
    }
    Presentation::new(new_system, terms)
}
