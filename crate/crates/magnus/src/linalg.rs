//! Exact dense linear algebra over the coefficient field, and linear changes
//! of variables acting on noncommutative polynomials.
//!
//! Elimination always picks the leftmost available pivot, so results are
//! deterministic; no pivot-size heuristics are used (or needed at these
//! dimensions).

use crate::poly::NcPoly;
use crate::scalar::{FieldDesc, Scalar};
use crate::word::Word;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity_matrix(field: FieldDesc, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::one(field)
                    } else {
                        Scalar::zero(field)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let field = a[0][0].field();
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let mut acc = Scalar::zero(field);
                    for k in 0..inner {
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row, in order.
// index loops: the elimination reads one row while writing another
#[allow(clippy::needless_range_loop)]
pub fn rref_in_place(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let n_cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..n_cols {
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row][col].inv().expect("pivot is nonzero");
        for entry in rows[next_row][col..].iter_mut() {
            *entry = &*entry * &inv;
        }
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..n_cols {
                    let delta = &factor * &rows[next_row][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

pub fn matrix_rank(matrix: &[Vec<Scalar>]) -> usize {
    let mut work: Matrix = matrix.to_vec();
    rref_in_place(&mut work).len()
}

/// Inverts a square matrix by Gauss-Jordan elimination on `[M | I]`.
/// Returns the deficient rank on failure.
pub fn invert_matrix(field: FieldDesc, matrix: &[Vec<Scalar>]) -> Result<Matrix, usize> {
    let n = matrix.len();
    let mut work: Matrix = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert!(row.len() == n, "matrix must be square");
            let mut augmented = row.clone();
            for j in 0..n {
                augmented.push(if i == j {
                    Scalar::one(field)
                } else {
                    Scalar::zero(field)
                });
            }
            augmented
        })
        .collect();
    let pivots = rref_in_place(&mut work);
    let rank = pivots.iter().take_while(|&&c| c < n).count();
    if rank < n {
        return Err(rank);
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// An exact linear change of variables on the free algebra: variable `i` maps
/// to the linear form with coefficients in row `i` of the matrix.
///
/// When an inverse is cached, `matrix * inverse` is exactly the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    field: FieldDesc,
    matrix: Matrix,
    inverse: Option<Matrix>,
}

impl LinearMap {
    pub fn identity(field: FieldDesc, n: usize) -> Self {
        let id = identity_matrix(field, n);
        LinearMap {
            field,
            matrix: id.clone(),
            inverse: Some(id),
        }
    }

    /// Wraps a square matrix without computing an inverse.
    pub fn from_matrix(field: FieldDesc, matrix: Matrix) -> Self {
        for row in &matrix {
            assert!(row.len() == matrix.len(), "matrix must be square");
        }
        LinearMap {
            field,
            matrix,
            inverse: None,
        }
    }

    /// Wraps a square matrix, computing and caching its inverse.
    /// Returns the deficient rank if the matrix is singular.
    pub fn invertible(field: FieldDesc, matrix: Matrix) -> Result<Self, usize> {
        let inverse = invert_matrix(field, &matrix)?;
        Ok(LinearMap {
            field,
            matrix,
            inverse: Some(inverse),
        })
    }

    pub(crate) fn from_parts(field: FieldDesc, matrix: Matrix, inverse: Option<Matrix>) -> Self {
        if let Some(inv) = &inverse {
            debug_assert_eq!(
                mat_mul(&matrix, inv),
                identity_matrix(field, matrix.len()),
                "cached inverse must be exact"
            );
        }
        LinearMap {
            field,
            matrix,
            inverse,
        }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn inverse(&self) -> Option<&[Vec<Scalar>]> {
        self.inverse.as_deref()
    }

    /// The map given by the cached inverse matrix, if any.
    pub fn inverse_map(&self) -> Option<LinearMap> {
        self.inverse.as_ref().map(|inv| LinearMap {
            field: self.field,
            matrix: inv.clone(),
            inverse: Some(self.matrix.clone()),
        })
    }

    /// The image of variable `index` (1-based): the linear form of row `index`.
    pub fn image_of_var(&self, index: u32) -> NcPoly {
        let row = &self.matrix[(index - 1) as usize];
        NcPoly::from_terms(
            self.field,
            row.iter()
                .enumerate()
                .map(|(r, c)| (Word::var(r as u32 + 1), c.clone())),
        )
    }

    /// Substitutes every variable by its image and expands. Every monomial
    /// degree is preserved.
    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        assert!(
            p.max_letter() as usize <= self.dim(),
            "dimension mismatch: polynomial uses variable {} but the map has dimension {}",
            p.max_letter(),
            self.dim()
        );
        let images: Vec<NcPoly> = (1..=self.dim() as u32)
            .map(|i| self.image_of_var(i))
            .collect();
        p.substitute(&images)
    }

    /// The image of a single word, as a polynomial.
    pub fn apply_word(&self, w: &Word) -> NcPoly {
        assert!(!w.is_empty(), "the empty word has no polynomial image");
        let mut acc: Option<NcPoly> = None;
        for &letter in w.letters() {
            let img = self.image_of_var(letter);
            acc = Some(match acc {
                None => img,
                Some(prev) => &prev * &img,
            });
        }
        acc.unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    const Q: FieldDesc = FieldDesc::Rational;

    fn int(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    fn poly(terms: &[(i64, &[u32])]) -> NcPoly {
        NcPoly::from_terms(
            Q,
            terms
                .iter()
                .map(|&(c, ls)| (Word::from_letters(ls.to_vec()), int(c))),
        )
    }

    #[test]
    fn invert_2x2_by_hand() {
        let beta = mat(&[&[1, 1], &[0, 1]]);
        let alpha = invert_matrix(Q, &beta).unwrap();
        assert_eq!(alpha, mat(&[&[1, -1], &[0, 1]]));
        assert_eq!(mat_mul(&beta, &alpha), identity_matrix(Q, 2));
    }

    #[test]
    fn singular_matrix_reports_rank() {
        let m = mat(&[&[1, 0], &[0, 0]]);
        assert_eq!(invert_matrix(Q, &m), Err(1));
        assert_eq!(matrix_rank(&m), 1);
        assert_eq!(matrix_rank(&mat(&[&[1, 2], &[2, 4], &[0, 1]])), 2);
    }

    #[test]
    fn identity_map_is_identity() {
        let id = LinearMap::identity(Q, 3);
        let p = poly(&[(2, &[1, 3]), (-1, &[2])]);
        assert_eq!(id.apply(&p), p);
    }

    #[test]
    fn apply_worked_example() {
        // x1 -> y1 - y2, x2 -> y2 applied to x2 - x1*x1
        let t = LinearMap::from_matrix(Q, mat(&[&[1, -1], &[0, 1]]));
        let p = poly(&[(1, &[2]), (-1, &[1, 1])]);
        let image = t.apply(&p);
        let expected = poly(&[
            (1, &[2]),
            (-1, &[1, 1]),
            (1, &[1, 2]),
            (1, &[2, 1]),
            (-1, &[2, 2]),
        ]);
        assert_eq!(image, expected);
        let alpha = Alphabet::numbered("y", 2);
        assert_eq!(
            image.display(&alpha).to_string(),
            "y2 - y1*y1 + y1*y2 + y2*y1 - y2*y2"
        );
    }

    #[test]
    fn linear_part_commutes_with_linear_maps() {
        let t = LinearMap::invertible(Q, mat(&[&[2, 1], &[1, 1]])).unwrap();
        let p = poly(&[(1, &[1]), (3, &[2]), (-2, &[1, 2]), (1, &[2, 2, 1])]);
        assert_eq!(t.apply(&p).linear_part(), t.apply(&p.linear_part()));
    }

    #[test]
    fn linear_part_commutes_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x11A6);
        for _ in 0..100 {
            let n = rng.random_range(1..=4usize);
            let t = LinearMap::invertible(
                Q,
                crate::sample::random_invertible_matrix(&mut rng, Q, n, 3),
            )
            .unwrap();
            let n_terms = rng.random_range(0..=5usize);
            let p = NcPoly::from_terms(
                Q,
                (0..n_terms).map(|_| {
                    let degree = rng.random_range(1..=3usize);
                    (
                        crate::sample::random_word(&mut rng, n as u32, degree),
                        crate::sample::random_nonzero_scalar(&mut rng, Q, 3),
                    )
                }),
            );
            assert_eq!(t.apply(&p).linear_part(), t.apply(&p.linear_part()));
        }
    }

    #[test]
    fn gf7_inverse() {
        let f = FieldDesc::prime(7).unwrap();
        let m: Matrix = vec![
            vec![Scalar::from_i64(f, 2), Scalar::from_i64(f, 3)],
            vec![Scalar::from_i64(f, 1), Scalar::from_i64(f, 4)],
        ];
        let inv = invert_matrix(f, &m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity_matrix(f, 2));
    }
}
