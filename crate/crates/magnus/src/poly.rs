//! Noncommutative polynomials without constant term: elements of the free
//! associative algebra without unity.
//!
//! A polynomial is a finite map from nonempty words to nonzero scalars. The
//! map is kept in deg-lex order with zero coefficients pruned, so structural
//! equality coincides with mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{FieldDesc, Scalar};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly {
    field: FieldDesc,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(field: FieldDesc) -> Self {
        NcPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The polynomial `1 * x_index`.
    pub fn var(field: FieldDesc, index: u32) -> Self {
        Self::monomial(field, Scalar::one(field), Word::var(index))
    }

    /// A single scaled word. A zero coefficient yields the zero polynomial.
    pub fn monomial(field: FieldDesc, coeff: Scalar, word: Word) -> Self {
        assert!(!word.is_empty(), "constant terms do not exist in the non-unital algebra");
        assert!(coeff.field() == field, "field mismatch: {} vs {}", coeff.field(), field);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly { field, terms }
    }

    /// Sums an arbitrary collection of scaled words into canonical form.
    pub fn from_terms<I>(field: FieldDesc, iter: I) -> Self
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut poly = NcPoly::zero(field);
        for (word, coeff) in iter {
            poly.add_term(word, coeff);
        }
        poly
    }

    fn add_term(&mut self, word: Word, coeff: Scalar) {
        assert!(!word.is_empty(), "constant terms do not exist in the non-unital algebra");
        assert!(
            coeff.field() == self.field,
            "field mismatch: {} vs {}",
            coeff.field(),
            self.field
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in deg-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> Option<&Scalar> {
        self.terms.get(word)
    }

    /// The largest variable index occurring in any word (0 for zero).
    pub fn max_letter(&self) -> u32 {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    /// The deg-lex–least word with nonzero coefficient; `None` for zero
    /// (the minimal monomial is undefined for 0).
    pub fn min_monomial(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    /// The homogeneous part of degree 1.
    pub fn linear_part(&self) -> NcPoly {
        NcPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .take_while(|(w, _)| w.degree() == 1)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The sum of all terms of minimal occurring degree; `None` for zero.
    pub fn min_homogeneous_part(&self) -> Option<NcPoly> {
        let d = self.min_degree()?;
        Some(NcPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .take_while(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        })
    }

    /// Drops all words of degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> NcPoly {
        NcPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .take_while(|(w, _)| w.degree() <= max_degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        assert!(
            c.field() == self.field,
            "field mismatch: {} vs {}",
            c.field(),
            self.field
        );
        if c.is_zero() {
            return NcPoly::zero(self.field);
        }
        NcPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a * c))
                .collect(),
        }
    }

    /// Product with every output word of degree greater than `max_degree`
    /// dropped. Equals `(self * other).truncate(max_degree)` because degrees
    /// only grow under multiplication.
    pub fn mul_truncated(&self, other: &NcPoly, max_degree: usize) -> NcPoly {
        check_poly_fields(self, other);
        let mut out = NcPoly::zero(self.field);
        for (wa, ca) in &self.terms {
            if wa.degree() >= max_degree {
                continue;
            }
            for (wb, cb) in &other.terms {
                if wa.degree() + wb.degree() > max_degree {
                    break;
                }
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// The two-sided product `left * self * right` where the factors are
    /// words; empty words act as absent factors.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NcPoly {
        NcPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    /// Evaluates `self`, read over slot variables `z1..zn`, at polynomial
    /// arguments: the word `z_{i1}..z_{il}` maps to `args[i1]*..*args[il]`,
    /// extended linearly. This is the unique homomorphism of non-unital
    /// algebras sending `z_i` to `args[i]`.
    pub fn substitute(&self, args: &[NcPoly]) -> NcPoly {
        self.substitute_impl(args, None)
    }

    /// `substitute` with all intermediate products truncated at `max_degree`.
    pub fn substitute_truncated(&self, args: &[NcPoly], max_degree: usize) -> NcPoly {
        self.substitute_impl(args, Some(max_degree))
    }

    fn substitute_impl(&self, args: &[NcPoly], max_degree: Option<usize>) -> NcPoly {
        assert!(
            self.max_letter() as usize <= args.len(),
            "arity mismatch: polynomial uses slot variable {} but {} arguments were given",
            self.max_letter(),
            args.len()
        );
        for arg in args {
            assert!(
                arg.field() == self.field,
                "field mismatch: {} vs {}",
                arg.field(),
                self.field
            );
        }
        let mut out = NcPoly::zero(self.field);
        for (word, coeff) in &self.terms {
            let mut product: Option<NcPoly> = None;
            for &letter in word.letters() {
                let arg = &args[(letter - 1) as usize];
                product = Some(match product {
                    None => arg.clone(),
                    Some(acc) => match max_degree {
                        Some(d) => acc.mul_truncated(arg, d),
                        None => &acc * arg,
                    },
                });
                if product.as_ref().is_some_and(NcPoly::is_zero) {
                    break;
                }
            }
            let product = product.expect("polynomial words are nonempty");
            for (w, c) in &product.terms {
                out.add_term(w.clone(), coeff * c);
            }
        }
        out
    }

    /// Renders the polynomial over the given variable names.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            alphabet,
        }
    }
}

fn check_poly_fields(a: &NcPoly, b: &NcPoly) {
    assert!(
        a.field == b.field,
        "field mismatch: {} vs {}",
        a.field,
        b.field
    );
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        check_poly_fields(self, rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        check_poly_fields(self, rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        check_poly_fields(self, rhs);
        let mut out = NcPoly::zero(self.field);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a NcPoly,
    alphabet: &'a Alphabet,
}

/// Terms ascending in deg-lex order; unit coefficients are omitted; over the
/// rationals negative coefficients fold into the separator sign.
impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (word, coeff)) in self.poly.terms().enumerate() {
            let (sign_negative, magnitude) = if coeff.is_negative() {
                (true, coeff.abs())
            } else {
                (false, coeff.clone())
            };
            if i == 0 {
                if sign_negative {
                    write!(f, "-")?;
                }
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{}", word.display(self.alphabet))?;
        }
        Ok(())
    }
}
