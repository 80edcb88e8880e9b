//! Finite words over integer alphabets: mirror images, palindromes, Parikh
//! vectors, periods and exponents.

use std::fmt;
use std::ops::{Add, AddAssign, Index};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational numbers, used for exponents and ratios `|w|/|r|`.
pub type Rational = BigRational;

/// A letter of an alphabet `{0, 1, ..., k-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub u32);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word together with the size of its alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidArgument("alphabet size must be positive".into()));
        }
        if let Some(bad) = letters.iter().find(|l| l.index() >= alphabet_size) {
            return Err(Error::LetterOutOfRange {
                letter: bad.0,
                alphabet_size,
            });
        }
        Ok(Word { letters, alphabet_size })
    }

    pub fn empty(alphabet_size: usize) -> Self {
        Word {
            letters: Vec::new(),
            alphabet_size: alphabet_size.max(1),
        }
    }

    pub fn from_indices<I>(indices: I, alphabet_size: usize) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        Word::new(indices.into_iter().map(Letter).collect(), alphabet_size)
    }

    /// Parses a string of decimal digits, e.g. `"0102"`.
    pub fn from_digits(s: &str, alphabet_size: usize) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(Letter)
                    .ok_or_else(|| Error::InvalidArgument(format!("not a digit: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, alphabet_size)
    }

    /// Encodes arbitrary symbols, numbering them by first appearance.
    /// `"magma"` becomes `0 1 2 0 1` over a 3-letter alphabet.
    pub fn from_symbols(s: &str) -> Self {
        let mut seen: Vec<char> = Vec::new();
        let letters = s
            .chars()
            .map(|c| {
                let idx = seen.iter().position(|&x| x == c).unwrap_or_else(|| {
                    seen.push(c);
                    seen.len() - 1
                });
                Letter(idx as u32)
            })
            .collect();
        Word {
            letters,
            alphabet_size: seen.len().max(1),
        }
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>, alphabet_size: usize) -> Self {
        debug_assert!(letters.iter().all(|l| l.index() < alphabet_size));
        Word { letters, alphabet_size }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn to_indices(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.0).collect()
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word {
            letters: self.letters[start..start + len].to_vec(),
            alphabet_size: self.alphabet_size,
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.factor(0, len.min(self.len()))
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if letter.index() >= self.alphabet_size {
            return Err(Error::LetterOutOfRange {
                letter: letter.0,
                alphabet_size: self.alphabet_size,
            });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Concatenation; the result lives over the larger of the two alphabets.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
        }
    }

    pub fn is_factor_of(&self, text: &[Letter]) -> bool {
        find_occurrences(text, &self.letters).next().is_some()
    }
}

/// Serialized as the array of letter indices.
impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

impl Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.letters[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet_size <= 10 {
            for l in &self.letters {
                write!(f, "{}", l.0)?;
            }
        } else {
            for (i, l) in self.letters.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", l.0)?;
            }
        }
        Ok(())
    }
}

/// Letter counts of a word, indexed by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector(Vec<BigInt>);

impl ParikhVector {
    pub fn zeros(dim: usize) -> Self {
        ParikhVector(vec![BigInt::zero(); dim])
    }

    /// The unit vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn from_counts(counts: Vec<BigInt>) -> Result<Self> {
        if counts.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidArgument("Parikh vector with a negative entry".into()));
        }
        Ok(ParikhVector(counts))
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        ParikhVector(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_counts(self) -> Vec<BigInt> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Length of any word with this Parikh vector.
    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// `h · v` for a row vector of letter weights.
    pub fn weighted(&self, weights: &[BigInt]) -> BigInt {
        assert_eq!(weights.len(), self.dim());
        self.0.iter().zip(weights).map(|(c, w)| c * w).sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &ParikhVector) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Serialize for ParikhVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl Index<usize> for ParikhVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.dim(), rhs.dim());
        ParikhVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: ParikhVector) -> ParikhVector {
        &self + &rhs
    }
}

impl AddAssign<&ParikhVector> for ParikhVector {
    fn add_assign(&mut self, rhs: &ParikhVector) {
        assert_eq!(self.dim(), rhs.dim());
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serializes a rational as the string `"p/q"` (or `"p"`).
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn mirror(w: &Word) -> Word {
    let mut letters = w.letters.clone();
    letters.reverse();
    Word {
        letters,
        alphabet_size: w.alphabet_size,
    }
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    let n = w.len();
    (0..n / 2).all(|i| w[i] == w[n - 1 - i])
}

pub fn parikh(w: &Word) -> ParikhVector {
    let mut counts = vec![0u64; w.alphabet_size];
    for l in &w.letters {
        counts[l.index()] += 1;
    }
    ParikhVector::from_u64s(&counts)
}

/// `border[j]` is the length of the longest proper border of `w[..j]`.
pub fn border_array(w: &[Letter]) -> Vec<usize> {
    let mut border = vec![0usize; w.len() + 1];
    let mut k = 0;
    for j in 1..w.len() {
        while k > 0 && w[j] != w[k] {
            k = border[k];
        }
        if w[j] == w[k] {
            k += 1;
        }
        border[j + 1] = k;
    }
    border
}

pub fn minimal_period(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(period_of(w.letters()))
}

pub(crate) fn period_of(w: &[Letter]) -> usize {
    w.len() - border_array(w)[w.len()]
}

pub fn exponent(w: &Word) -> Result<Rational> {
    let q = minimal_period(w)?;
    Ok(Rational::new(BigInt::from(w.len()), BigInt::from(q)))
}

/// Starting positions of `pattern` in `text` (Knuth–Morris–Pratt).
pub fn find_occurrences<'a>(text: &'a [Letter], pattern: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
    let border = border_array(pattern);
    let m = pattern.len();
    let mut k = 0usize;
    let mut j = 0usize;
    let mut empty_done = false;
    std::iter::from_fn(move || {
        if m == 0 {
            if empty_done || j > text.len() {
                return None;
            }
            j += 1;
            if j > text.len() {
                empty_done = true;
            }
            return Some(j - 1);
        }
        while j < text.len() {
            let c = text[j];
            j += 1;
            while k > 0 && (k == m || pattern[k] != c) {
                k = border[k];
            }
            if pattern[k] == c {
                k += 1;
            }
            if k == m {
                return Some(j - m);
            }
        }
        None
    })
}

/// How [`max_factor_exponent_with`] scans the prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentScan {
    /// Failure function of every suffix: all `O(n²)` factors, one by one.
    Naive,
    /// Maximal periodic stretches per candidate period, with early cut-off.
    Indexed,
}

/// The factor of highest exponent found in a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxRepetition {
    pub exponent: Rational,
    pub start: usize,
    pub period: usize,
    pub witness: Word,
}

/// Maximum exponent over factors of length at least `min_len`. Ties go to
/// the shortest witness, then the leftmost one.
pub fn max_factor_exponent(prefix: &Word, min_len: usize) -> Result<MaxRepetition> {
    max_factor_exponent_with(prefix, min_len, ExponentScan::Indexed)
}

pub fn max_factor_exponent_with(prefix: &Word, min_len: usize, scan: ExponentScan) -> Result<MaxRepetition> {
    let n = prefix.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if min_len == 0 || min_len > n {
        return Err(Error::InvalidArgument(format!(
            "min_len must lie in 1..={n}, got {min_len}"
        )));
    }
    let best = match scan {
        ExponentScan::Naive => scan_naive(prefix.letters(), min_len),
        ExponentScan::Indexed => scan_stretches(prefix.letters(), min_len),
    };
    Ok(MaxRepetition {
        exponent: Rational::new(BigInt::from(best.len), BigInt::from(best.period)),
        start: best.start,
        period: best.period,
        witness: prefix.factor(best.start, best.len),
    })
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    start: usize,
    len: usize,
    period: usize,
}

impl Candidate {
    /// Ordering: larger exponent first, then shorter, then further left.
    fn beats(&self, other: &Candidate) -> bool {
        let lhs = self.len as u128 * other.period as u128;
        let rhs = other.len as u128 * self.period as u128;
        lhs > rhs || (lhs == rhs && (self.len, self.start) < (other.len, other.start))
    }
}

fn scan_naive(w: &[Letter], min_len: usize) -> Candidate {
    let n = w.len();
    let mut best = Candidate {
        start: 0,
        len: min_len,
        period: period_of(&w[..min_len]),
    };
    let mut border = vec![0usize; n + 1];
    for i in 0..n {
        let s = &w[i..];
        let mut k = 0;
        border[1] = 0;
        for j in 1..s.len() {
            while k > 0 && s[j] != s[k] {
                k = border[k];
            }
            if s[j] == s[k] {
                k += 1;
            }
            border[j + 1] = k;
        }
        for len in min_len..=s.len() {
            let cand = Candidate {
                start: i,
                len,
                period: len - border[len],
            };
            if cand.beats(&best) {
                best = cand;
            }
        }
    }
    best
}

// A factor of maximal exponent is a maximal stretch with period equal to its
// minimal period: any longer stretch with the same period would beat it.
fn scan_stretches(w: &[Letter], min_len: usize) -> Candidate {
    let n = w.len();
    let mut best: Option<Candidate> = None;
    for q in 1..=n {
        if let Some(b) = best {
            // No factor with period q can exceed n / q.
            if (n as u128) * (b.period as u128) < (b.len as u128) * (q as u128) {
                break;
            }
        }
        let span = n - q;
        let mut a = 0usize;
        while a <= span {
            let mut b = a;
            while b < span && w[b] == w[b + q] {
                b += 1;
            }
            let len = b - a + q;
            if len >= min_len {
                let cand = Candidate {
                    start: a,
                    len,
                    period: q,
                };
                if best.map_or(true, |cur| cand.beats(&cur)) {
                    best = Some(cand);
                }
            }
            a = b + 1;
        }
    }
    best.expect("min_len ≤ n guarantees a candidate")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s, 10).unwrap()
    }

    fn ratio(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(&w("012")), w("210"));
        assert_eq!(mirror(&w("")), w(""));
        assert_eq!(mirror(&w("0102010")), w("0102010"));
    }

    #[test]
    fn palindrome_examples() {
        assert!(is_palindrome(w("0102010").letters()));
        assert!(!is_palindrome(w("01").letters()));
        assert!(is_palindrome(&[]));
    }

    #[test]
    fn parikh_examples() {
        let v = parikh(&Word::from_digits("0102010", 3).unwrap());
        assert_eq!(v, ParikhVector::from_u64s(&[4, 2, 1]));
        assert_eq!(parikh(&Word::empty(3)), ParikhVector::zeros(3));
        assert_eq!(
            parikh(&Word::from_digits("022", 3).unwrap()),
            ParikhVector::from_u64s(&[1, 0, 2])
        );
    }

    #[test]
    fn periods_and_exponents() {
        let magma = Word::from_symbols("magma");
        assert_eq!(magma.alphabet_size(), 3);
        assert_eq!(minimal_period(&magma).unwrap(), 3);
        assert_eq!(exponent(&magma).unwrap(), ratio(5, 3));
        let aaa = Word::from_symbols("aaa");
        assert_eq!(minimal_period(&aaa).unwrap(), 1);
        assert_eq!(exponent(&aaa).unwrap(), ratio(3, 1));
        assert_eq!(minimal_period(&w("0102010")).unwrap(), 4);
        assert_eq!(exponent(&w("0102010")).unwrap(), ratio(7, 4));
        assert_eq!(minimal_period(&w("")), Err(Error::EmptyWord));
    }

    #[test]
    fn max_exponent_examples() {
        for scan in [ExponentScan::Naive, ExponentScan::Indexed] {
            let r = max_factor_exponent_with(&w("010201022"), 1, scan).unwrap();
            assert_eq!(r.exponent, ratio(2, 1));
            assert_eq!(r.witness, w("22"));
            let r = max_factor_exponent_with(&w("01"), 1, scan).unwrap();
            assert_eq!(r.exponent, ratio(1, 1));
            assert_eq!(r.witness, w("0"));
            let r = max_factor_exponent_with(&Word::from_symbols("aaa"), 1, scan).unwrap();
            assert_eq!(r.exponent, ratio(3, 1));
            assert_eq!(r.witness.len(), 3);
        }
    }

    #[test]
    fn max_exponent_rejects_bad_min_len() {
        assert!(max_factor_exponent(&w("01"), 0).is_err());
        assert!(max_factor_exponent(&w("01"), 3).is_err());
        assert_eq!(max_factor_exponent(&w(""), 1).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn min_len_restricts_witness() {
        // "0101" has exponent 2, "01010" 5/2 at length 5.
        let r = max_factor_exponent(&w("0010100"), 5).unwrap();
        assert_eq!(r.exponent, ratio(5, 2));
        assert_eq!(r.witness, w("01010"));
    }

    #[test]
    fn occurrences() {
        let text = w("0102010");
        assert_eq!(
            find_occurrences(text.letters(), w("010").letters()).collect::<Vec<_>>(),
            vec![0, 4]
        );
        assert_eq!(find_occurrences(text.letters(), w("0").letters()).count(), 4);
        assert_eq!(
            find_occurrences(w("000").letters(), w("00").letters()).collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert_eq!(find_occurrences(w("01").letters(), &[]).count(), 3);
    }

    #[test]
    fn word_validation() {
        assert!(Word::from_digits("03", 3).is_err());
        assert!(Word::new(vec![], 0).is_err());
        let mut x = Word::empty(2);
        assert!(x.push(Letter(2)).is_err());
        x.push(Letter(1)).unwrap();
        assert_eq!(x.to_string(), "1");
    }
}
