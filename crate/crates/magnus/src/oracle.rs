//! Independent brute-force verification at bounded degree.
//!
//! Everything here works in the finite-dimensional space spanned by the words
//! of degree `1..=D`: the relation ideal becomes the row space of all
//! truncated products `p * h_j * q`, and bounded dependency and generation
//! questions become exact kernel and solve problems against that row space.
//!
//! Verdicts are honest about truncation: `None` always means "nothing found
//! up to this degree", and any returned dependency or witness is re-checked
//! exactly before being reported.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::certify::{
    verify_generation_witness, AlgebraPresentation, CandidateSystem, GenerationWitness,
    WitnessEntry,
};
use crate::poly::NcPoly;
use crate::presentation::{Presentation, PresentationTerm, RelationSystem};
use crate::scalar::Scalar;
use crate::word::{count_words_up_to, words_of_degree, words_up_to_degree, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("degree bound must be at least 1")]
    DegreeZero,
    #[error("ambient dimension {required} exceeds the configured cap {cap}")]
    AmbientTooLarge { required: u128, cap: usize },
}

/// Resource limits for the truncated spaces.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Maximum number of coordinates (words of degree `1..=D`).
    pub max_coordinates: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_coordinates: 200_000,
        }
    }
}

/// A sparse vector over the coordinate words, sorted by coordinate index.
type SparseVec = Vec<(usize, Scalar)>;

fn sparse_scale(v: &mut SparseVec, factor: &Scalar) {
    for (_, c) in v.iter_mut() {
        *c = &*c * factor;
    }
}

/// Merges `acc += factor * add` for combination bookkeeping lists keyed by `K`.
fn combo_axpy<K: Ord + Clone>(
    acc: &mut Vec<(K, Scalar)>,
    factor: &Scalar,
    add: &[(K, Scalar)],
    negate: bool,
) {
    for (key, c) in add {
        let delta = if negate { -&(factor * c) } else { factor * c };
        match acc.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(pos) => {
                acc[pos].1 = &acc[pos].1 + &delta;
                if acc[pos].1.is_zero() {
                    acc.remove(pos);
                }
            }
            Err(pos) => {
                if !delta.is_zero() {
                    acc.insert(pos, (key.clone(), delta));
                }
            }
        }
    }
}

type GeneratorKey = (Word, usize, Word);

struct SpanRow {
    vec: SparseVec,
    /// Combination of original generators `(p, j, q)` whose truncated sum
    /// equals `vec`; present only when certificate tracking is on.
    combo: Option<Vec<(GeneratorKey, Scalar)>>,
}

/// The truncated shadow of the relation ideal: coordinates are the words of
/// degree `1..=degree_bound` in deg-lex order, and `rows` is a row echelon
/// basis of the span of all truncated products `p * h_j * q`, with pivots
/// fixed by the deterministic insertion order.
pub struct TruncatedSpace {
    degree_bound: usize,
    coords: Vec<Word>,
    coord_index: HashMap<Word, usize>,
    rows: Vec<SpanRow>,
    /// pivot coordinate -> row index
    pivots: HashMap<usize, usize>,
    system: Arc<RelationSystem>,
    tracked: bool,
}

impl TruncatedSpace {
    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Dimension of the ambient truncated space.
    pub fn ambient_dimension(&self) -> usize {
        self.coords.len()
    }

    /// Rank of the truncated ideal span.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn to_sparse(&self, p: &NcPoly) -> SparseVec {
        p.terms()
            .filter(|(w, _)| w.degree() <= self.degree_bound)
            .map(|(w, c)| (self.coord_index[w], c.clone()))
            .collect()
    }

    /// Reduces a vector against the basis (row echelon form: rows are
    /// pivot-monic, inserted pivots are fixed by insertion order, and the
    /// residue never touches a pivot coordinate, so it is unique for the row
    /// space). Returns the residue and, when certificate tracking is on, the
    /// generator combination that was subtracted:
    /// `v = residue + truncate(evaluate(combination))`.
    fn reduce(&self, v: SparseVec, track: bool) -> (SparseVec, Vec<(GeneratorKey, Scalar)>) {
        let field = self.system.field();
        let mut used: Vec<(GeneratorKey, Scalar)> = Vec::new();
        let mut pending: std::collections::BTreeMap<usize, Scalar> = v.into_iter().collect();
        let mut residue: SparseVec = Vec::new();
        while let Some((&coord, _)) = pending.first_key_value() {
            let coeff = pending.remove(&coord).expect("key exists");
            if coeff.is_zero() {
                continue;
            }
            if let Some(&row_idx) = self.pivots.get(&coord) {
                let row = &self.rows[row_idx];
                // subtract coeff * row; the row is monic with pivot `coord`
                for (c, rc) in row.vec[1..].iter() {
                    let entry = pending.entry(*c).or_insert_with(|| Scalar::zero(field));
                    *entry = &*entry - &(&coeff * rc);
                }
                if track {
                    if let Some(combo) = &row.combo {
                        combo_axpy(&mut used, &coeff, combo, false);
                    }
                }
            } else {
                residue.push((coord, coeff));
            }
        }
        (residue, used)
    }

    /// Inserts a truncated generator into the echelon basis.
    fn insert(&mut self, vec: SparseVec, key: Option<GeneratorKey>) {
        let track = key.is_some();
        let combo = key.map(|k| vec![(k, Scalar::one(self.system.field()))]);
        let (mut residue, used) = self.reduce(vec, track);
        if residue.is_empty() {
            return;
        }
        let mut combo = combo.map(|mut c| {
            // residue = original - used, so the residue's combination is
            // combo - used
            combo_axpy(&mut c, &Scalar::one(self.system.field()), &used, true);
            c
        });
        let lead = residue[0].1.clone();
        let inv = lead.inv().expect("leading coefficient is nonzero");
        sparse_scale(&mut residue, &inv);
        if let Some(c) = &mut combo {
            for (_, coeff) in c.iter_mut() {
                *coeff = &*coeff * &inv;
            }
        }
        let pivot = residue[0].0;
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(SpanRow {
            vec: residue,
            combo,
        });
    }

    /// Tests membership of `p`'s truncation in the span. On success returns
    /// the presentation recovered from the bookkeeping, whose evaluation
    /// agrees with `p` up to the degree bound.
    ///
    /// Panics if the space was built without certificate tracking.
    pub fn membership(&self, p: &NcPoly) -> Option<Presentation> {
        assert!(
            self.tracked,
            "membership presentations need a space built with certificate tracking"
        );
        let (residue, used) = self.reduce(self.to_sparse(p), true);
        if !residue.is_empty() {
            return None;
        }
        let terms = used
            .into_iter()
            .map(|((left, rel, right), coeff)| PresentationTerm::new(coeff, left, rel, right))
            .collect();
        Some(
            Presentation::new(Arc::clone(&self.system), terms)
                .expect("bookkeeping terms are valid"),
        )
    }
}

fn ambient_check(
    n_vars: u32,
    degree_bound: usize,
    limits: &OracleLimits,
) -> Result<(), OracleError> {
    if degree_bound == 0 {
        return Err(OracleError::DegreeZero);
    }
    let required = count_words_up_to(n_vars, degree_bound);
    if required > limits.max_coordinates as u128 {
        return Err(OracleError::AmbientTooLarge {
            required,
            cap: limits.max_coordinates,
        });
    }
    Ok(())
}

/// Builds the truncated ideal span: enumerates all sandwiches `p * h_j * q`
/// whose minimal word fits inside the bound, truncates them, and row-reduces.
///
/// `track_certificates` keeps per-row generator combinations so that
/// [`TruncatedSpace::membership`] can return presentations; building without
/// tracking is faster.
pub fn ideal_span_up_to(
    algebra: &AlgebraPresentation,
    degree_bound: usize,
    limits: &OracleLimits,
    track_certificates: bool,
) -> Result<TruncatedSpace, OracleError> {
    let n_vars = algebra.alphabet_size();
    ambient_check(n_vars, degree_bound, limits)?;

    let coords: Vec<Word> = words_up_to_degree(n_vars, degree_bound).collect();
    let coord_index: HashMap<Word, usize> = coords
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();

    let mut space = TruncatedSpace {
        degree_bound,
        coords,
        coord_index,
        rows: Vec::new(),
        pivots: HashMap::new(),
        system: algebra.relation_system(),
        tracked: track_certificates,
    };

    for (j, relation) in algebra.relations().iter().enumerate() {
        let min_degree = relation.min_degree().expect("relations are nonzero");
        if min_degree > degree_bound {
            continue;
        }
        let budget = degree_bound - min_degree;
        for total in 0..=budget {
            for left_degree in 0..=total {
                let right_degree = total - left_degree;
                for left in words_of_degree(n_vars, left_degree) {
                    for right in words_of_degree(n_vars, right_degree) {
                        let product = relation.sandwich(&left, &right).truncate(degree_bound);
                        let vec = space.to_sparse(&product);
                        let key = track_certificates.then(|| (left.clone(), j + 1, right.clone()));
                        space.insert(vec, key);
                    }
                }
            }
        }
    }
    Ok(space)
}

/// Row reduction with tags: rows remember their expression in terms of the
/// inserted slot words, so a vanishing insertion yields a kernel combination
/// and a solved target yields its preimage.
struct TaggedRref {
    rows: Vec<(SparseVec, Vec<(Word, Scalar)>)>,
    pivots: HashMap<usize, usize>,
}

impl TaggedRref {
    fn new() -> Self {
        TaggedRref {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    fn reduce(
        &self,
        v: SparseVec,
        mut tags: Vec<(Word, Scalar)>,
        field: crate::scalar::FieldDesc,
    ) -> (SparseVec, Vec<(Word, Scalar)>) {
        let mut pending: std::collections::BTreeMap<usize, Scalar> = v.into_iter().collect();
        let mut residue: SparseVec = Vec::new();
        while let Some((&coord, _)) = pending.first_key_value() {
            let coeff = pending.remove(&coord).expect("key exists");
            if coeff.is_zero() {
                continue;
            }
            if let Some(&row_idx) = self.pivots.get(&coord) {
                let (row_vec, row_tags) = &self.rows[row_idx];
                for (c, rc) in row_vec[1..].iter() {
                    let entry = pending.entry(*c).or_insert_with(|| Scalar::zero(field));
                    *entry = &*entry - &(&coeff * rc);
                }
                combo_axpy(&mut tags, &coeff, row_tags, true);
            } else {
                residue.push((coord, coeff));
            }
        }
        (residue, tags)
    }

    /// Inserts a reduced-against-the-ideal vector tagged by its slot word.
    /// Returns the kernel combination if the vector is dependent on the rows
    /// inserted so far.
    fn insert(&mut self, v: SparseVec, tag: Word, one: &Scalar) -> Option<Vec<(Word, Scalar)>> {
        let field = one.field();
        let (mut residue, mut tags) = self.reduce(v, vec![(tag, one.clone())], field);
        if residue.is_empty() {
            return Some(tags);
        }
        let inv = residue[0].1.inv().expect("leading coefficient is nonzero");
        sparse_scale(&mut residue, &inv);
        for (_, c) in tags.iter_mut() {
            *c = &*c * &inv;
        }
        let pivot = residue[0].0;
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push((residue, tags));
        None
    }

    /// Expresses `target` as a combination of the inserted rows, returning
    /// the slot-word combination, or `None` if the target is not in the span.
    fn solve(&self, target: SparseVec, field: crate::scalar::FieldDesc) -> Option<Vec<(Word, Scalar)>> {
        let (residue, tags) = self.reduce(target, Vec::new(), field);
        if residue.is_empty() {
            // reduce subtracts rows, so the representation carries a sign flip
            Some(tags.into_iter().map(|(w, c)| (w, -&c)).collect())
        } else {
            None
        }
    }
}

/// A dependency found by the bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependency {
    /// Nonzero polynomial in slot variables `z1..zn`, normalized so that its
    /// minimal monomial has coefficient 1, with
    /// `truncate(phi(g1..gn), D)` inside the truncated ideal span.
    pub phi: NcPoly,
    /// Presentation whose truncated evaluation matches `phi(g)`.
    pub membership: Presentation,
    /// True when `evaluate(membership) == phi(g)` exactly, so the dependency
    /// holds in the algebra, not only up to the degree bound.
    pub exact: bool,
}

fn slot_images(
    candidates: &CandidateSystem,
    degree_bound: usize,
    space: &TruncatedSpace,
) -> Vec<(Word, SparseVec)> {
    let n_slots = candidates.len() as u32;
    // extend products letter by letter, reusing the previous degree
    let mut previous: HashMap<Word, NcPoly> = HashMap::new();
    let mut out = Vec::new();
    for degree in 1..=degree_bound {
        let mut current: HashMap<Word, NcPoly> = HashMap::new();
        for word in words_of_degree(n_slots, degree) {
            let last = word.letters()[degree - 1];
            let arg = &candidates.candidates()[(last - 1) as usize];
            let image = if degree == 1 {
                arg.truncate(degree_bound)
            } else {
                let prefix = Word::from_letters(word.letters()[..degree - 1].to_vec());
                previous[&prefix].mul_truncated(arg, degree_bound)
            };
            out.push((word.clone(), space.to_sparse(&image)));
            current.insert(word, image);
        }
        previous = current;
    }
    out
}

fn combo_to_poly(
    field: crate::scalar::FieldDesc,
    combo: Vec<(Word, Scalar)>,
) -> NcPoly {
    NcPoly::from_terms(field, combo)
}

/// Searches for a nonzero `phi` of degree at most `degree_bound` with
/// `phi(g1..gn)` in the relation ideal modulo words of degree beyond the
/// bound. `None` means no dependency exists up to this degree (the question
/// stays open beyond it). A returned dependency carries a membership
/// presentation and says whether it verified exactly.
pub fn dependency_search_bounded(
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
    degree_bound: usize,
    limits: &OracleLimits,
) -> Result<Option<Dependency>, OracleError> {
    ambient_check(candidates.len() as u32, degree_bound, limits)?;
    let field = algebra.field();
    let space = ideal_span_up_to(algebra, degree_bound, limits, false)?;
    let one = Scalar::one(field);

    let mut tracker = TaggedRref::new();
    for (w, vec) in slot_images(candidates, degree_bound, &space) {
        let (residue, _) = space.reduce(vec, false);
        if let Some(kernel) = tracker.insert(residue, w, &one) {
            let mut phi = combo_to_poly(field, kernel);
            // normalize: monic at the minimal monomial
            let lead = phi
                .min_monomial()
                .and_then(|m| phi.coeff(m))
                .cloned()
                .expect("kernel combinations are nonzero");
            phi = phi.scale(&lead.inv().expect("nonzero"));

            // re-check by exhibiting membership of phi(g) in the tracked span
            let image = phi.substitute(candidates.candidates());
            let tracked = ideal_span_up_to(algebra, degree_bound, limits, true)?;
            let membership = tracked
                .membership(&image)
                .expect("kernel vectors yield truncated members");
            let exact = membership.evaluate() == image;
            return Ok(Some(Dependency {
                phi,
                membership,
                exact,
            }));
        }
    }
    Ok(None)
}

/// Searches for a generation witness of degree at most `degree_bound`: for
/// every variable a slot polynomial with `x_i - phi_i(g)` in the truncated
/// ideal span, with the ideal parts recovered from the row-reduction
/// bookkeeping. Whatever the truncated solve produces is verified exactly;
/// anything that fails exact verification is discarded and the search
/// reports `None` (inconclusive).
pub fn generation_search_bounded(
    algebra: &AlgebraPresentation,
    candidates: &CandidateSystem,
    degree_bound: usize,
    limits: &OracleLimits,
) -> Result<Option<GenerationWitness>, OracleError> {
    ambient_check(candidates.len() as u32, degree_bound, limits)?;
    let field = algebra.field();
    let space = ideal_span_up_to(algebra, degree_bound, limits, true)?;
    let one = Scalar::one(field);

    let mut tracker = TaggedRref::new();
    for (w, vec) in slot_images(candidates, degree_bound, &space) {
        let (residue, _) = space.reduce(vec, false);
        // dependent slot words add nothing to the solvable span
        let _ = tracker.insert(residue, w, &one);
    }

    let mut entries = Vec::with_capacity(algebra.alphabet_size() as usize);
    for i in 1..=algebra.alphabet_size() {
        let target = NcPoly::var(field, i);
        let (target_residue, _) = space.reduce(space.to_sparse(&target), false);
        let Some(combo) = tracker.solve(target_residue, field) else {
            return Ok(None);
        };
        let phi = combo_to_poly(field, combo);
        let ideal_part = &target - &phi.substitute(candidates.candidates());
        let presentation = if ideal_part.is_zero() {
            Presentation::new(space.system.clone(), Vec::new()).expect("empty is valid")
        } else {
            match space.membership(&ideal_part) {
                Some(p) => p,
                None => return Ok(None),
            }
        };
        // exactness: the recovered presentation must reproduce the ideal
        // part in full, not only up to the degree bound
        if presentation.evaluate() != ideal_part {
            return Ok(None);
        }
        entries.push(WitnessEntry {
            phi,
            ideal_part: presentation,
        });
    }

    let witness = GenerationWitness { entries };
    debug_assert!(verify_generation_witness(&witness, algebra, candidates));
    if !verify_generation_witness(&witness, algebra, candidates) {
        return Ok(None);
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldDesc;

    const Q: FieldDesc = FieldDesc::Rational;

    fn int(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn w(letters: &[u32]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    fn poly(terms: &[(i64, &[u32])]) -> NcPoly {
        NcPoly::from_terms(Q, terms.iter().map(|&(c, ls)| (w(ls), int(c))))
    }

    fn commutator_algebra() -> AlgebraPresentation {
        AlgebraPresentation::new(Q, 2, vec![poly(&[(1, &[1, 2]), (-1, &[2, 1])])]).unwrap()
    }

    fn square_algebra() -> AlgebraPresentation {
        AlgebraPresentation::new(Q, 2, vec![poly(&[(1, &[2]), (-1, &[1, 1])])]).unwrap()
    }

    #[test]
    fn ideal_span_examples() {
        let limits = OracleLimits::default();
        // only p = q = empty fits at D = 2
        let space = ideal_span_up_to(&commutator_algebra(), 2, &limits, false).unwrap();
        assert_eq!(space.dimension(), 1);
        assert_eq!(space.ambient_dimension(), 2 + 4);

        // no relations: zero subspace
        let free = AlgebraPresentation::new(Q, 2, vec![]).unwrap();
        let space = ideal_span_up_to(&free, 3, &limits, false).unwrap();
        assert_eq!(space.dimension(), 0);

        // x2 - x1*x1 at D = 2: sandwiches contribute x2 - x1x1, x1x2, x2x1,
        // x2x2; rank 4 by the row-reduction oracle
        let space = ideal_span_up_to(&square_algebra(), 2, &limits, false).unwrap();
        assert_eq!(space.dimension(), 4);
    }

    #[test]
    fn membership_returns_presentations() {
        let algebra = square_algebra();
        let space = ideal_span_up_to(&algebra, 3, &OracleLimits::default(), true).unwrap();
        let h = &algebra.relations()[0];
        // x1*h + h*x2 is in the ideal
        let element = &h.sandwich(&w(&[1]), &Word::empty()) + &h.sandwich(&Word::empty(), &w(&[2]));
        let presentation = space.membership(&element).unwrap();
        assert_eq!(presentation.evaluate(), element);
        // x1 alone is not
        assert!(space.membership(&poly(&[(1, &[1])])).is_none());
    }

    #[test]
    fn dependency_found_for_commutator() {
        let algebra = commutator_algebra();
        let candidates =
            CandidateSystem::new(vec![poly(&[(1, &[1])]), poly(&[(1, &[2])])]).unwrap();
        let dep = dependency_search_bounded(&algebra, &candidates, 2, &OracleLimits::default())
            .unwrap()
            .expect("the commutator is a dependency");
        assert_eq!(dep.phi, poly(&[(1, &[1, 2]), (-1, &[2, 1])]));
        assert!(dep.exact);
        assert_eq!(
            dep.membership.evaluate(),
            dep.phi.substitute(candidates.candidates())
        );
    }

    #[test]
    fn no_dependency_in_the_free_algebra() {
        let free = AlgebraPresentation::new(Q, 2, vec![]).unwrap();
        let candidates =
            CandidateSystem::new(vec![poly(&[(1, &[1])]), poly(&[(1, &[2])])]).unwrap();
        for d in 1..=4 {
            let dep =
                dependency_search_bounded(&free, &candidates, d, &OracleLimits::default()).unwrap();
            assert!(dep.is_none());
        }
    }

    #[test]
    fn no_dependency_for_certified_instance() {
        let algebra = square_algebra();
        let candidates = CandidateSystem::new(vec![poly(&[(1, &[1])])]).unwrap();
        for d in 1..=5 {
            let dep = dependency_search_bounded(&algebra, &candidates, d, &OracleLimits::default())
                .unwrap();
            assert!(dep.is_none(), "unexpected dependency at degree {d}");
        }
    }

    #[test]
    fn generation_witness_found() {
        let algebra = square_algebra();
        let candidates = CandidateSystem::new(vec![poly(&[(1, &[1])])]).unwrap();
        let witness = generation_search_bounded(&algebra, &candidates, 2, &OracleLimits::default())
            .unwrap()
            .expect("x1 generates");
        assert_eq!(witness.entries[0].phi, poly(&[(1, &[1])]));
        assert_eq!(witness.entries[1].phi, poly(&[(1, &[1, 1])]));
        assert!(verify_generation_witness(&witness, &algebra, &candidates));
    }

    #[test]
    fn generation_search_rejects_truncation_artifacts() {
        // g = x1 + x2 solves every truncated system (power-series inversion)
        // but never exactly; the exactness check must turn that into None
        let algebra = square_algebra();
        let candidates = CandidateSystem::new(vec![poly(&[(1, &[1]), (1, &[2])])]).unwrap();
        for d in [2, 4, 6] {
            let witness =
                generation_search_bounded(&algebra, &candidates, d, &OracleLimits::default())
                    .unwrap();
            assert!(witness.is_none(), "no witness must exist at degree {d}");
        }
    }

    #[test]
    fn trivial_witness_for_variables() {
        let free = AlgebraPresentation::new(Q, 2, vec![]).unwrap();
        let candidates =
            CandidateSystem::new(vec![poly(&[(1, &[1])]), poly(&[(1, &[2])])]).unwrap();
        let witness = generation_search_bounded(&free, &candidates, 1, &OracleLimits::default())
            .unwrap()
            .expect("variables generate the free algebra");
        assert_eq!(witness.entries[0].phi, poly(&[(1, &[1])]));
        assert_eq!(witness.entries[1].phi, poly(&[(1, &[2])]));
        assert!(witness.entries.iter().all(|e| e.ideal_part.is_empty()));
    }

    #[test]
    fn degree_one_dependency_matches_rank() {
        // degree-1 candidates with no relations: dependency at D = 1 iff the
        // coefficient matrix is rank deficient
        let free = AlgebraPresentation::new(Q, 3, vec![]).unwrap();
        let dependent = CandidateSystem::new(vec![
            poly(&[(1, &[1]), (1, &[2])]),
            poly(&[(1, &[2]), (1, &[3])]),
            poly(&[(1, &[1]), (2, &[2]), (1, &[3])]),
        ])
        .unwrap();
        let dep = dependency_search_bounded(&free, &dependent, 1, &OracleLimits::default())
            .unwrap()
            .expect("rows are dependent");
        assert!(dep.exact);
        // check the dependency annihilates the candidates
        assert!(dep.phi.substitute(dependent.candidates()).is_zero());

        let independent = CandidateSystem::new(vec![
            poly(&[(1, &[1]), (1, &[2])]),
            poly(&[(1, &[2])]),
            poly(&[(1, &[3])]),
        ])
        .unwrap();
        assert!(
            dependency_search_bounded(&free, &independent, 1, &OracleLimits::default())
                .unwrap()
                .is_none()
        );
    }

    /// An exact dependency found at one degree stays found at every larger
    /// degree (truncated-only findings carry a caveat instead).
    #[test]
    fn exact_dependencies_are_upward_monotone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x30A0);
        let limits = OracleLimits::default();
        for trial in 0..30 {
            let n_vars = rng.random_range(2..=3u32);
            let algebra = AlgebraPresentation::new(
                Q,
                n_vars,
                vec![&NcPoly::var(Q, 1) - &NcPoly::var(Q, 2)],
            )
            .unwrap();
            let tails = crate::sample::TailParams {
                max_terms: 1,
                min_degree: 2,
                max_degree: 2,
                coeff_bound: 2,
            };
            let g = &NcPoly::var(Q, rng.random_range(1..=n_vars))
                + &crate::sample::random_tail(&mut rng, Q, n_vars, &tails);
            let scaled = g.scale(&crate::sample::random_nonzero_scalar(&mut rng, Q, 3));
            let candidates = CandidateSystem::new(vec![g, scaled]).unwrap();

            let mut found_at = None;
            for degree in 1..=4 {
                let dep = dependency_search_bounded(&algebra, &candidates, degree, &limits)
                    .unwrap();
                match (&found_at, dep) {
                    (None, Some(d)) if d.exact => found_at = Some(degree),
                    (None, Some(_)) => {}
                    (None, None) => {}
                    (Some(first), other) => assert!(
                        other.is_some(),
                        "trial {trial}: found at {first}, lost at {degree}"
                    ),
                }
            }
            assert!(found_at.is_some(), "trial {trial}: scalar multiples must be dependent");
        }
    }

    /// On systems of the shape `x_{n+j} - w_j` with `w_j` over the candidate
    /// block, the bounded search always assembles a witness and that witness
    /// verifies exactly.
    #[test]
    fn witness_round_trip_on_shaped_systems() {
        use rand::{Rng, SeedableRng};
        use crate::certify::verify_generation_witness;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x30A1);
        let limits = OracleLimits::default();
        for trial in 0..30 {
            let n = rng.random_range(1..=3usize);
            let k = rng.random_range(1..=2usize);
            let n_vars = (n + k) as u32;
            // relation words over the first n variables only, so the
            // variables are expressible through the candidates
            let relations: Vec<NcPoly> = (0..k)
                .map(|j| {
                    let degree = rng.random_range(2..=3);
                    let word = crate::sample::random_word(&mut rng, n as u32, degree);
                    &NcPoly::var(Q, (n + j) as u32 + 1)
                        - &NcPoly::from_terms(Q, [(word, Scalar::one(Q))])
                })
                .collect();
            let algebra = AlgebraPresentation::new(Q, n_vars, relations).unwrap();
            let t = crate::sample::random_invertible_matrix(&mut rng, Q, n, 2);
            let candidates: Vec<NcPoly> = t
                .iter()
                .map(|row| {
                    NcPoly::from_terms(
                        Q,
                        row.iter()
                            .enumerate()
                            .map(|(r, c)| (Word::var(r as u32 + 1), c.clone())),
                    )
                })
                .collect();
            let candidates = CandidateSystem::new(candidates).unwrap();
            let witness = generation_search_bounded(&algebra, &candidates, 3, &limits)
                .unwrap()
                .unwrap_or_else(|| panic!("trial {trial}: witness must exist at degree 3"));
            assert!(verify_generation_witness(&witness, &algebra, &candidates));
        }
    }

    #[test]
    fn memory_cap_is_enforced() {
        let algebra = square_algebra();
        let candidates = CandidateSystem::new(vec![poly(&[(1, &[1])])]).unwrap();
        let tight = OracleLimits { max_coordinates: 4 };
        assert_eq!(
            dependency_search_bounded(&algebra, &candidates, 3, &tight),
            matches_cap_error()
        );
        assert_eq!(
            ideal_span_up_to(&algebra, 3, &tight, false).err(),
            Some(OracleError::AmbientTooLarge {
                required: 2 + 4 + 8,
                cap: 4
            })
        );
    }

    fn matches_cap_error() -> Result<Option<Dependency>, OracleError> {
        Err(OracleError::AmbientTooLarge {
            required: 2 + 4 + 8,
            cap: 4,
        })
    }
}
