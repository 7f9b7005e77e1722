//! Words of the free monoid on a finite alphabet, ordered degree-lexicographically.
//!
//! A word is a finite sequence of 1-based variable indices. The `Ord`
//! implementation is the deg-lex order (shorter words first, then first
//! differing letter), so ordered maps keyed by `Word` are automatically in
//! canonical monomial order.

use std::cmp::Ordering;
use std::fmt;

/// A monomial of the free monoid: a sequence of 1-based variable indices.
///
/// The empty word is allowed; it only ever appears as an absent factor in
/// presentation terms, never inside a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

/// Compares two words degree-lexicographically: the shorter word is smaller;
/// words of equal length compare by the first differing letter.
pub fn deglex_cmp(a: &Word, b: &Word) -> Ordering {
    a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The length-1 word consisting of variable `index` (1-based).
    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variable indices are 1-based");
        Word(vec![index])
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        assert!(
            letters.iter().all(|&i| i >= 1),
            "variable indices are 1-based"
        );
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// The degree of the word, i.e. its length.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The largest variable index occurring in the word (0 for the empty word).
    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Renders the word over the given alphabet; the empty word prints as `e`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (pos, &letter) in self.word.letters().iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.alphabet.name(letter))?;
        }
        Ok(())
    }
}

/// An ordered list of variable names; the order fixes the deg-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from explicit names. Names must be unique.
    pub fn from_names(names: Vec<String>) -> Option<Self> {
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return None;
            }
        }
        Some(Alphabet { names })
    }

    /// The alphabet `prefix1, prefix2, ..., prefixN`.
    pub fn numbered(prefix: &str, n: u32) -> Self {
        Alphabet {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn len(&self) -> u32 {
        self.names.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The name of variable `index` (1-based).
    pub fn name(&self, index: u32) -> &str {
        &self.names[(index - 1) as usize]
    }

    /// Looks up a variable name, returning its 1-based index.
    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32 + 1)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Iterates over all words of exactly `degree` letters over `n_vars`
/// variables, in lexicographic order (which matches deg-lex within a fixed
/// degree). Degree 0 yields the empty word once.
pub fn words_of_degree(n_vars: u32, degree: usize) -> WordsOfDegree {
    WordsOfDegree {
        n_vars,
        state: if n_vars == 0 && degree > 0 {
            None
        } else {
            Some(vec![1; degree])
        },
    }
}

pub struct WordsOfDegree {
    n_vars: u32,
    state: Option<Vec<u32>>,
}

impl Iterator for WordsOfDegree {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let state = self.state.as_mut()?;
        let word = Word(state.clone());
        // odometer increment, most significant letter first
        let mut pos = state.len();
        loop {
            if pos == 0 {
                self.state = None;
                break;
            }
            pos -= 1;
            if state[pos] < self.n_vars {
                state[pos] += 1;
                for later in state[pos + 1..].iter_mut() {
                    *later = 1;
                }
                break;
            }
        }
        Some(word)
    }
}

/// All words of degree 1 through `max_degree`, in deg-lex order.
pub fn words_up_to_degree(n_vars: u32, max_degree: usize) -> impl Iterator<Item = Word> {
    (1..=max_degree).flat_map(move |d| words_of_degree(n_vars, d))
}

/// Number of words of degree 1 through `max_degree` over `n_vars` variables,
/// saturating at `u128::MAX`.
pub fn count_words_up_to(n_vars: u32, max_degree: usize) -> u128 {
    let n = u128::from(n_vars);
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 1..=max_degree {
        pow = pow.saturating_mul(n);
        total = total.saturating_add(pow);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(letters: &[u32]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    #[test]
    fn deglex_examples() {
        // equal degree, first letters 1 < 2
        assert_eq!(deglex_cmp(&w(&[1, 3]), &w(&[2, 2])), Ordering::Less);
        // degree 1 < degree 2
        assert_eq!(deglex_cmp(&w(&[2]), &w(&[1, 1])), Ordering::Less);
        // identity case
        assert_eq!(deglex_cmp(&w(&[1, 2]), &w(&[1, 2])), Ordering::Equal);
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all: Vec<Word> = words_up_to_degree(3, 3).collect();
        assert_eq!(all.len() as u128, count_words_up_to(3, 3));
        assert_eq!(all.len(), 3 + 9 + 27);
        for pair in all.windows(2) {
            assert_eq!(deglex_cmp(&pair[0], &pair[1]), Ordering::Less);
        }
        let empties: Vec<Word> = words_of_degree(4, 0).collect();
        assert_eq!(empties, [Word::empty()]);
    }

    #[test]
    fn display_words() {
        let alpha = Alphabet::numbered("x", 3);
        assert_eq!(w(&[1, 3]).display(&alpha).to_string(), "x1*x3");
        assert_eq!(Word::empty().display(&alpha).to_string(), "e");
        assert_eq!(alpha.index_of("x2"), Some(2));
        assert_eq!(alpha.index_of("y1"), None);
    }

    fn arb_word(n_vars: u32) -> impl Strategy<Value = Word> {
        proptest::collection::vec(1..=n_vars, 0..6).prop_map(Word::from_letters)
    }

    proptest! {
        // deg-lex is a strict total order compatible with concatenation
        #[test]
        fn order_is_total_and_monomial_compatible(
            a in arb_word(4),
            b in arb_word(4),
            c in arb_word(4),
        ) {
            // antisymmetry / totality
            match deglex_cmp(&a, &b) {
                Ordering::Equal => prop_assert_eq!(&a, &b),
                Ordering::Less => prop_assert_eq!(deglex_cmp(&b, &a), Ordering::Greater),
                Ordering::Greater => prop_assert_eq!(deglex_cmp(&b, &a), Ordering::Less),
            }
            // translation invariance on both sides
            if deglex_cmp(&a, &b) == Ordering::Less {
                prop_assert_eq!(deglex_cmp(&c.concat(&a), &c.concat(&b)), Ordering::Less);
                prop_assert_eq!(deglex_cmp(&a.concat(&c), &b.concat(&c)), Ordering::Less);
            }
        }

        #[test]
        fn order_is_transitive(a in arb_word(3), b in arb_word(3), c in arb_word(3)) {
            let mut sorted = [a, b, c];
            sorted.sort();
            prop_assert!(deglex_cmp(&sorted[0], &sorted[1]) != Ordering::Greater);
            prop_assert!(deglex_cmp(&sorted[1], &sorted[2]) != Ordering::Greater);
            prop_assert!(deglex_cmp(&sorted[0], &sorted[2]) != Ordering::Greater);
        }
    }
}
