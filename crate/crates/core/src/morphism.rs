//! Morphisms over integer alphabets, the family `φ_D`, fixed points, the
//! weighted morphism `π` and its decoder.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::word::{find_occurrences, is_palindrome, Letter, Word};

/// Incidence matrix of a morphism: entry `(i, j)` is `|ψ(j)|_i`.
pub type IncidenceMatrix = IntMatrix;

/// A non-erasing morphism `{0..k-1}* → {0..m-1}*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MorphismDoc", into = "MorphismDoc")]
pub struct Morphism {
    images: Vec<Word>,
    target_size: usize,
}

#[derive(Serialize, Deserialize)]
struct MorphismDoc {
    source_size: usize,
    target_size: usize,
    images: Vec<Vec<u32>>,
}

impl TryFrom<MorphismDoc> for Morphism {
    type Error = Error;

    fn try_from(doc: MorphismDoc) -> Result<Self> {
        if doc.images.len() != doc.source_size {
            return Err(Error::Dimension(format!(
                "source_size is {} but {} images were given",
                doc.source_size,
                doc.images.len()
            )));
        }
        Morphism::from_indices(doc.images, doc.target_size)
    }
}

impl From<Morphism> for MorphismDoc {
    fn from(m: Morphism) -> Self {
        MorphismDoc {
            source_size: m.source_size(),
            target_size: m.target_size,
            images: m.images.iter().map(Word::to_indices).collect(),
        }
    }
}

impl Morphism {
    pub fn new(images: Vec<Word>, target_size: usize) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidArgument("a morphism needs at least one letter".into()));
        }
        if target_size == 0 {
            return Err(Error::InvalidArgument("target alphabet must be non-empty".into()));
        }
        let mut checked = Vec::with_capacity(images.len());
        for (i, img) in images.into_iter().enumerate() {
            if img.is_empty() {
                return Err(Error::ErasingImage(i as u32));
            }
            checked.push(Word::new(img.into_letters(), target_size)?);
        }
        Ok(Morphism {
            images: checked,
            target_size,
        })
    }

    pub fn from_indices<I, J>(images: I, target_size: usize) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = u32>,
    {
        let words = images
            .into_iter()
            .map(|img| Word::from_indices(img, target_size.max(1)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(words, target_size)
    }

    pub fn identity(k: usize) -> Result<Self> {
        Morphism::from_indices((0..k as u32).map(|i| [i]), k)
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Letter) -> Result<&Word> {
        self.images.get(a.index()).ok_or(Error::LetterOutOfRange {
            letter: a.0,
            alphabet_size: self.source_size(),
        })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source_size() == self.target_size
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        Ok(Word::from_letters_unchecked(
            self.apply_letters(w.letters())?,
            self.target_size,
        ))
    }

    pub(crate) fn apply_letters(&self, w: &[Letter]) -> Result<Vec<Letter>> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &a in w {
            out.extend_from_slice(self.image(a)?.letters());
        }
        Ok(out)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut m = IntMatrix::zeros(self.target_size, self.source_size());
        for (j, img) in self.images.iter().enumerate() {
            for a in img.letters() {
                let v = m.get(a.index(), j) + 1u32;
                m.set(a.index(), j, v);
            }
        }
        m
    }

    /// Injectivity on finite words (Sardinas–Patterson test on the images).
    pub fn is_injective(&self) -> bool {
        let code: Vec<&[Letter]> = self.images.iter().map(Word::letters).collect();
        let distinct: HashSet<&[Letter]> = code.iter().copied().collect();
        if distinct.len() != code.len() {
            return false;
        }
        let quotients = |xs: &HashSet<Vec<Letter>>, ys: &[&[Letter]]| -> HashSet<Vec<Letter>> {
            let mut out = HashSet::new();
            for x in xs {
                for y in ys {
                    if y.len() > x.len() && y.starts_with(x) {
                        out.insert(y[x.len()..].to_vec());
                    }
                    if x.len() > y.len() && x.starts_with(y) {
                        out.insert(x[y.len()..].to_vec());
                    }
                }
            }
            out
        };
        let base: HashSet<Vec<Letter>> = code.iter().map(|c| c.to_vec()).collect();
        let mut current = HashSet::new();
        for (i, x) in code.iter().enumerate() {
            for (j, y) in code.iter().enumerate() {
                if i != j && y.len() > x.len() && y.starts_with(x) {
                    current.insert(y[x.len()..].to_vec());
                }
            }
        }
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        while !current.is_empty() {
            if current.iter().any(|s| base.contains(s)) {
                return false;
            }
            let fresh: HashSet<Vec<Letter>> = current.difference(&seen).cloned().collect();
            if fresh.is_empty() {
                return true;
            }
            seen.extend(fresh.iter().cloned());
            current = quotients(&fresh, &code);
        }
        true
    }
}

/// `φ_D`: `i ↦ 0(i+1)` for `i ≤ D-2` and `D-1 ↦ 0(D-1)(D-1)`.
pub fn make_phi(d: usize) -> Result<Morphism> {
    if d < 3 {
        return Err(Error::PhiTooSmall(d));
    }
    let last = (d - 1) as u32;
    let images = (0..last)
        .map(|i| vec![0, i + 1])
        .chain(std::iter::once(vec![0, last, last]));
    Morphism::from_indices(images, d)
}

/// Primitivity via Wielandt's bound: a primitive `n×n` matrix has
/// `M^((n-1)²+1) > 0`.
pub fn is_primitive(m: &IntMatrix) -> bool {
    use num_traits::Signed;
    if !m.is_square() || m.rows() == 0 || !m.is_nonnegative() {
        return false;
    }
    let n = m.rows();
    let pattern: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).is_positive()).collect())
        .collect();
    let product = |a: &Vec<Vec<bool>>, b: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
            .collect()
    };
    let mut e = (n - 1) * (n - 1) + 1;
    let mut base = pattern;
    let mut acc: Option<Vec<Vec<bool>>> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => product(&a, &base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = product(&base, &base);
        }
    }
    acc.map_or(false, |a| a.iter().all(|row| row.iter().all(|&x| x)))
}

/// `F_0 = ε`, `F_k = ψ(F_{k-1})·0`, each checked to be a palindrome.
pub fn f_chain(m: &Morphism, k: usize) -> Result<Word> {
    if !m.is_endomorphism() {
        return Err(Error::InvalidArgument("f_chain needs an endomorphism".into()));
    }
    let mut f: Vec<Letter> = Vec::new();
    for j in 1..=k {
        f = m.apply_letters(&f)?;
        f.push(Letter(0));
        if !is_palindrome(&f) {
            return Err(Error::ChainNotPalindromic { k: j });
        }
    }
    Ok(Word::from_letters_unchecked(f, m.target_size()))
}

/// A growing prefix of the fixed point of a morphism prolongable at 0.
///
/// The prefix is generated letter by letter from `u = ψ(u)`: every letter
/// already known contributes its image to the tail.
#[derive(Clone, Debug)]
pub struct FixedPointPrefix {
    morphism: Morphism,
    letters: Vec<Letter>,
    read: usize,
}

impl FixedPointPrefix {
    pub fn new(morphism: Morphism) -> Result<Self> {
        if !morphism.is_endomorphism() {
            return Err(Error::NotProlongable);
        }
        let first = morphism.images()[0].letters();
        if first[0] != Letter(0) || first.len() < 2 {
            return Err(Error::NotProlongable);
        }
        let letters = first.to_vec();
        Ok(FixedPointPrefix {
            morphism,
            letters,
            read: 1,
        })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.letters.len() < n {
            let a = self.letters[self.read];
            self.read += 1;
            let img = self.morphism.images[a.index()].letters();
            self.letters.extend_from_slice(img);
        }
    }

    pub fn prefix(&mut self, n: usize) -> Word {
        self.extend_to(n);
        Word::from_letters_unchecked(self.letters[..n].to_vec(), self.morphism.target_size())
    }

    /// Largest `k` such that `ψ^k(0)` is entirely known.
    pub fn generation(&self) -> usize {
        let mut len = 1usize;
        let mut k = 0usize;
        loop {
            if len > self.letters.len() {
                return k.saturating_sub(1);
            }
            let next: usize = self.letters[..len]
                .iter()
                .map(|a| self.morphism.images[a.index()].len())
                .sum();
            if next > self.letters.len() {
                return k;
            }
            len = next;
            k += 1;
        }
    }
}

pub fn fixed_point_prefix(m: &Morphism, n: usize) -> Result<Word> {
    let mut fp = FixedPointPrefix::new(m.clone())?;
    Ok(fp.prefix(n))
}

/// A letter-to-letter-block morphism whose images are palindromes of
/// prescribed lengths over pairwise disjoint alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMorphism {
    base: Morphism,
    weights: Vec<u64>,
    /// For each target letter: source letter and its positions in the image.
    owner: Vec<(Letter, Vec<usize>)>,
}

impl WeightedMorphism {
    /// Canonical construction: fresh target letters in increasing order,
    /// `x_1…x_m x_m…x_1` for even weights and `x_1…x_m c x_m…x_1` for odd.
    pub fn with_weights(weights: &[u64]) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        let mut next = 0u32;
        let mut images = Vec::with_capacity(weights.len());
        for &h in weights {
            let m = h.div_ceil(2) as u32;
            let half: Vec<u32> = (next..next + m).collect();
            next += m;
            let mut img = half.clone();
            let skip = (h % 2) as usize;
            img.extend(half.iter().rev().skip(skip));
            images.push(img);
        }
        let target = next as usize;
        let base = Morphism::from_indices(images, target)?;
        let mut owner = vec![(Letter(0), Vec::new()); target];
        for (i, img) in base.images().iter().enumerate() {
            for (p, a) in img.letters().iter().enumerate() {
                owner[a.index()].0 = Letter(i as u32);
                owner[a.index()].1.push(p);
            }
        }
        Ok(WeightedMorphism {
            base,
            weights: weights.to_vec(),
            owner,
        })
    }

    pub fn base(&self) -> &Morphism {
        &self.base
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.base.apply(w)
    }

    /// Source letter whose image contains `b`.
    pub fn source_of(&self, b: Letter) -> Result<Letter> {
        self.owner.get(b.index()).map(|o| o.0).ok_or(Error::NotInCodomain(b.0))
    }
}

/// `π` with weights `(1,…,1, 2^0, 2^1, …, 2^d)` on `2d+1` letters.
pub fn make_weighted_pi(d: usize) -> Result<WeightedMorphism> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "weighted morphism needs d ≥ 2, got {d}"
        )));
    }
    if d > 40 {
        return Err(Error::InvalidArgument(format!("weights 2^{d} are too large")));
    }
    let weights: Vec<u64> = std::iter::repeat(1).take(d).chain((0..=d).map(|j| 1u64 << j)).collect();
    WeightedMorphism::with_weights(&weights)
}

/// A parse `w = x·π(v)·y` of a factor of an image under a weighted morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decoding {
    /// Position of `w[0]` inside the image of `covering[0]` (0-based).
    pub offset: usize,
    /// Leading letters of `w` lying in an image that starts before `w`.
    pub head: usize,
    /// Source letters whose images lie entirely inside `w`.
    pub pre_image: Vec<Letter>,
    /// Trailing letters of `w` forming a proper prefix of an image.
    pub tail: usize,
    /// All source letters whose images meet `w`, in order.
    pub covering: Vec<Letter>,
}

/// Every parse of `w` against images of `π`.
pub fn parses(pi: &WeightedMorphism, w: &Word) -> Result<Vec<Decoding>> {
    let letters = w.letters();
    for &b in letters {
        if b.index() >= pi.owner.len() {
            return Err(Error::NotInCodomain(b.0));
        }
    }
    let Some(&first) = letters.first() else {
        return Ok(Vec::new());
    };
    let (src, positions) = &pi.owner[first.index()];
    let mut out = Vec::new();
    'cand: for &p in positions {
        let mut dec = Decoding {
            offset: p,
            head: 0,
            pre_image: Vec::new(),
            tail: 0,
            covering: Vec::new(),
        };
        let mut j = 0usize;
        let mut source = *src;
        let mut start = p;
        while j < letters.len() {
            let img = pi.base.images[source.index()].letters();
            let take = (img.len() - start).min(letters.len() - j);
            if letters[j..j + take] != img[start..start + take] {
                continue 'cand;
            }
            dec.covering.push(source);
            let complete = start + take == img.len();
            if start > 0 {
                dec.head = take;
            } else if complete {
                dec.pre_image.push(source);
            } else {
                dec.tail = take;
            }
            j += take;
            if j < letters.len() {
                let (next, pos) = &pi.owner[letters[j].index()];
                if pos[0] != 0 {
                    continue 'cand;
                }
                source = *next;
                start = 0;
            }
        }
        out.push(dec);
    }
    Ok(out)
}

/// The unique parse of `w`, or `None` when `w` admits several.
pub fn decode(pi: &WeightedMorphism, w: &Word) -> Result<Option<Decoding>> {
    let mut all = parses(pi, w)?;
    Ok(if all.len() == 1 { all.pop() } else { None })
}

/// Witness `p` that `m` belongs to the class of morphisms with images
/// `p·q_i`, `q_i` palindromes, and `ψ(i)·p` a complete return word to `p`.
/// Returns the shortest such palindrome `p`.
pub fn p_ret_witness(m: &Morphism) -> Option<Word> {
    if !m.is_injective() {
        return None;
    }
    let shortest = m.images().iter().map(Word::len).min()?;
    let first = m.images()[0].letters();
    'len: for plen in 0..=shortest {
        let p = &first[..plen];
        if !is_palindrome(p) {
            continue;
        }
        for img in m.images() {
            let img = img.letters();
            if !img.starts_with(p) || !is_palindrome(&img[plen..]) {
                continue 'len;
            }
            let mut ret = img.to_vec();
            ret.extend_from_slice(p);
            if find_occurrences(&ret, p).count() != 2 {
                continue 'len;
            }
        }
        return Some(Word::from_letters_unchecked(p.to_vec(), m.target_size()));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::mirror;

    fn w(s: &str, k: usize) -> Word {
        Word::from_digits(s, k).unwrap()
    }

    #[test]
    fn phi_images() {
        let phi = make_phi(3).unwrap();
        let imgs: Vec<String> = phi.images().iter().map(ToString::to_string).collect();
        assert_eq!(imgs, ["01", "02", "022"]);
        let phi7 = make_phi(7).unwrap();
        assert_eq!(phi7.images()[5].to_string(), "06");
        assert_eq!(phi7.images()[6].to_string(), "066");
        assert_eq!(make_phi(2).unwrap_err(), Error::PhiTooSmall(2));
        assert_eq!(make_phi(2).unwrap_err().to_string(), "phi defined for d ≥ 3, got 2");
    }

    #[test]
    fn apply_examples() {
        let phi = make_phi(3).unwrap();
        assert_eq!(phi.apply(&w("0102", 3)).unwrap(), w("010201022", 3));
        assert_eq!(phi.apply(&w("", 3)).unwrap(), w("", 3));
        assert_eq!(phi.apply(&w("2", 3)).unwrap(), w("022", 3));
        assert!(matches!(phi.apply(&w("3", 4)), Err(Error::LetterOutOfRange { .. })));
    }

    #[test]
    fn fixed_point_examples() {
        let phi3 = make_phi(3).unwrap();
        assert_eq!(fixed_point_prefix(&phi3, 9).unwrap(), w("010201022", 3));
        assert_eq!(fixed_point_prefix(&phi3, 1).unwrap(), w("0", 3));
        assert_eq!(fixed_point_prefix(&make_phi(7).unwrap(), 8).unwrap(), w("01020103", 7));
        let bad = Morphism::from_indices([vec![1], vec![0]], 2).unwrap();
        assert_eq!(fixed_point_prefix(&bad, 3).unwrap_err(), Error::NotProlongable);
    }

    #[test]
    fn fixed_point_is_fixed() {
        let phi = make_phi(5).unwrap();
        let mut fp = FixedPointPrefix::new(phi.clone()).unwrap();
        let u = fp.prefix(500);
        let img = phi.apply(&u).unwrap();
        assert_eq!(img.prefix(500), u);
        // |φ^k(0)| for φ_5: 1, 2, 4, 8, 16, 31, ...
        let mut g = FixedPointPrefix::new(phi).unwrap();
        g.extend_to(16);
        assert_eq!(g.len(), 16);
        assert_eq!(g.generation(), 4);
    }

    #[test]
    fn incidence_examples() {
        let m = make_phi(3).unwrap().incidence_matrix();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 2]]));
        assert!(Morphism::identity(4).unwrap().incidence_matrix().is_identity());
        let m7 = make_phi(7).unwrap().incidence_matrix();
        for j in 0..7 {
            assert_eq!(m7.get(0, j), &1.into());
        }
        for i in 1..7 {
            assert_eq!(m7.get(i, i - 1), &1.into());
        }
        assert_eq!(m7.get(6, 6), &2.into());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&make_phi(3).unwrap().incidence_matrix()));
        assert!(is_primitive(&make_phi(9).unwrap().incidence_matrix()));
        assert!(!is_primitive(&IntMatrix::identity(2)));
        // irreducible but periodic
        assert!(!is_primitive(&IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])));
    }

    #[test]
    fn f_chain_examples() {
        let phi = make_phi(3).unwrap();
        assert_eq!(f_chain(&phi, 0).unwrap(), w("", 3));
        assert_eq!(f_chain(&phi, 2).unwrap(), w("010", 3));
        assert_eq!(f_chain(&phi, 3).unwrap(), w("0102010", 3));
        let skew = Morphism::from_indices([vec![0, 1], vec![1, 1]], 2).unwrap();
        assert_eq!(f_chain(&skew, 3).unwrap_err(), Error::ChainNotPalindromic { k: 3 });
    }

    #[test]
    fn weighted_pi_examples() {
        let pi = make_weighted_pi(2).unwrap();
        let imgs: Vec<String> = pi.base().images().iter().map(ToString::to_string).collect();
        assert_eq!(imgs, ["0", "1", "2", "33", "4554"]);
        assert_eq!(pi.base().target_size(), 6);
        let pi3 = make_weighted_pi(3).unwrap();
        let lens: Vec<usize> = pi3.base().images().iter().map(Word::len).collect();
        assert_eq!(lens, [1, 1, 1, 1, 2, 4, 8]);
        let distinct: Vec<usize> = pi3
            .base()
            .images()
            .iter()
            .map(|img| img.letters().iter().collect::<HashSet<_>>().len())
            .collect();
        assert_eq!(distinct, [1, 1, 1, 1, 1, 2, 4]);
        assert_eq!(pi3.base().target_size(), 11);
        assert!(make_weighted_pi(1).is_err());
    }

    #[test]
    fn odd_weights() {
        let pi = WeightedMorphism::with_weights(&[3, 5]).unwrap();
        assert_eq!(pi.base().images()[0], w("010", 5));
        assert_eq!(pi.base().images()[1], w("23432", 5));
    }

    #[test]
    fn decode_examples() {
        let pi = make_weighted_pi(2).unwrap();
        assert_eq!(decode(&pi, &w("5", 6)).unwrap(), None);
        let d = decode(&pi, &w("55", 6)).unwrap().unwrap();
        assert_eq!(
            (d.offset, d.pre_image.len(), d.covering.clone()),
            (1, 0, vec![Letter(4)])
        );
        let d = decode(&pi, &w("334554", 6)).unwrap().unwrap();
        assert_eq!((d.offset, d.head, d.tail), (0, 0, 0));
        assert_eq!(d.pre_image, vec![Letter(3), Letter(4)]);
        let d = decode(&pi, &w("5540334", 6)).unwrap().unwrap();
        assert_eq!((d.offset, d.head, d.tail), (1, 3, 1));
        assert_eq!(d.pre_image, vec![Letter(0), Letter(3)]);
        assert!(matches!(decode(&pi, &w("6", 7)), Err(Error::NotInCodomain(6))));
        // "33" is both π(3) and a suffix-prefix pair of π(3)π(3).
        assert_eq!(parses(&pi, &w("33", 6)).unwrap().len(), 2);
    }

    #[test]
    fn p_ret_examples() {
        let m = Morphism::from_indices([vec![0], vec![1]], 2).unwrap();
        assert_eq!(p_ret_witness(&m), Some(Word::empty(2)));
        let m = Morphism::from_indices([vec![0, 1, 0], vec![0, 1, 1, 0]], 2).unwrap();
        assert_eq!(p_ret_witness(&m), None);
        let m = Morphism::from_indices([vec![0, 1], vec![0]], 2).unwrap();
        assert_eq!(p_ret_witness(&m), Some(w("0", 2)));
        let not_injective = Morphism::from_indices([vec![0], vec![0, 0], vec![1]], 2).unwrap();
        assert_eq!(p_ret_witness(&not_injective), None);
    }

    #[test]
    fn injectivity() {
        assert!(make_phi(5).unwrap().is_injective());
        assert!(Morphism::from_indices([vec![0], vec![0, 1], vec![1, 1]], 2)
            .unwrap()
            .is_injective());
        assert!(!Morphism::from_indices([vec![0], vec![0, 1], vec![1, 0]], 2)
            .unwrap()
            .is_injective());
    }

    #[test]
    fn json_round_trip() {
        let phi = make_phi(3).unwrap();
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(s, r#"{"source_size":3,"target_size":3,"images":[[0,1],[0,2],[0,2,2]]}"#);
        let back: Morphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi);
        assert!(serde_json::from_str::<Morphism>(r#"{"source_size":1,"target_size":1,"images":[[]]}"#).is_err());
    }

    #[test]
    fn chain_is_concatenation_of_iterates() {
        let phi = make_phi(5).unwrap();
        let mut powers = vec![w("0", 5)];
        for _ in 0..12 {
            let next = phi.apply(powers.last().unwrap()).unwrap();
            powers.push(next);
        }
        for k in 1..=12 {
            let mut expect = Word::empty(5);
            for j in (0..k).rev() {
                expect = expect.concat(&powers[j]);
            }
            let f = f_chain(&phi, k).unwrap();
            assert_eq!(f, expect, "k = {k}");
            assert_eq!(mirror(&f), f);
        }
    }
}
