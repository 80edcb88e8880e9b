//! Extension structure of a finite prefix: special and bispecial factors,
//! bilateral orders, return words and the bispecial estimate of the
//! critical exponent.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{border_array, is_palindrome, parikh, Letter, ParikhVector, Rational, Word};

/// Suffix array with LCP over a prefix, plus the trusted factor-length
/// cutoff. Extension sets only use occurrences with both neighbours inside
/// the prefix.
#[derive(Clone, Debug)]
pub struct FactorIndex {
    prefix: Word,
    cutoff: usize,
    sa: Vec<u32>,
    /// `lcp[i]` = longest common prefix of suffixes `sa[i-1]` and `sa[i]`.
    lcp: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BispecialRecord {
    pub factor: Word,
    pub lext: BTreeSet<Letter>,
    pub rext: BTreeSet<Letter>,
    pub bext: BTreeSet<(Letter, Letter)>,
    pub bilateral_order: i64,
    pub palindromic: bool,
}

impl BispecialRecord {
    pub fn parikh(&self) -> ParikhVector {
        parikh(&self.factor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnWordSet {
    pub target: Word,
    /// Distinct return words with their multiplicities, shortest first,
    /// ties broken lexicographically.
    pub words: Vec<(Word, usize)>,
    pub shortest: Word,
}

impl ReturnWordSet {
    pub fn distinct(&self) -> usize {
        self.words.len()
    }
}

/// Extension sets of a factor from its trusted occurrences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extensions {
    pub lext: BTreeSet<Letter>,
    pub rext: BTreeSet<Letter>,
    pub bext: BTreeSet<(Letter, Letter)>,
}

impl Extensions {
    pub fn bilateral_order(&self) -> i64 {
        self.bext.len() as i64 - self.lext.len() as i64 - self.rext.len() as i64 + 1
    }

    pub fn is_bispecial(&self) -> bool {
        self.lext.len() >= 2 && self.rext.len() >= 2
    }
}

/// Builds the index; requires `max_factor_len ≤ |prefix| / 10`.
pub fn build_index(prefix: &Word, max_factor_len: usize) -> Result<FactorIndex> {
    let limit = prefix.len() / 10;
    if max_factor_len > limit {
        return Err(Error::UntrustedCutoff {
            cutoff: max_factor_len,
            limit,
            len: prefix.len(),
        });
    }
    Ok(build_index_unguarded(prefix, max_factor_len))
}

/// [`build_index`] without the trust margin; for short words.
pub fn build_index_unguarded(prefix: &Word, max_factor_len: usize) -> FactorIndex {
    let sa = suffix_array(prefix.letters());
    let lcp = lcp_array(prefix.letters(), &sa);
    FactorIndex {
        prefix: prefix.clone(),
        cutoff: max_factor_len,
        sa,
        lcp,
    }
}

impl FactorIndex {
    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn text(&self) -> &[Letter] {
        self.prefix.letters()
    }

    fn compare_suffix(&self, start: usize, w: &[Letter]) -> Ordering {
        let s = &self.text()[start..];
        let m = s.len().min(w.len());
        match s[..m].cmp(&w[..m]) {
            Ordering::Equal if s.len() < w.len() => Ordering::Less,
            Ordering::Equal => Ordering::Equal,
            other => other,
        }
    }

    /// Suffix-array range of suffixes starting with `w`.
    fn range(&self, w: &[Letter]) -> (usize, usize) {
        let lo = self
            .sa
            .partition_point(|&s| self.compare_suffix(s as usize, w) == Ordering::Less);
        let hi = self
            .sa
            .partition_point(|&s| self.compare_suffix(s as usize, w) != Ordering::Greater);
        (lo, hi)
    }

    /// Sorted starting positions of `w` in the prefix.
    pub fn occurrences(&self, w: &Word) -> Vec<usize> {
        let (lo, hi) = self.range(w.letters());
        let mut occ: Vec<usize> = self.sa[lo..hi].iter().map(|&s| s as usize).collect();
        occ.sort_unstable();
        occ
    }

    fn collect_extensions(&self, positions: impl Iterator<Item = usize>, len: usize) -> Extensions {
        let t = self.text();
        let mut ext = Extensions::default();
        for i in positions {
            if i >= 1 && i + len < t.len() {
                let (a, b) = (t[i - 1], t[i + len]);
                ext.lext.insert(a);
                ext.rext.insert(b);
                ext.bext.insert((a, b));
            }
        }
        ext
    }

    pub fn extensions(&self, w: &Word) -> Result<Extensions> {
        if w.len() > self.cutoff {
            return Err(Error::BeyondCutoff {
                len: w.len(),
                cutoff: self.cutoff,
            });
        }
        let (lo, hi) = self.range(w.letters());
        if lo == hi {
            return Err(Error::NotAFactor(w.to_string()));
        }
        Ok(self.collect_extensions(self.sa[lo..hi].iter().map(|&s| s as usize), w.len()))
    }

    /// Right-special candidates: branching lcp-intervals `(depth, lb, rb)`
    /// with depth within the cutoff.
    fn branching_intervals(&self) -> Vec<(usize, usize, usize)> {
        let n = self.sa.len();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        for i in 1..=n {
            let l = if i < n { self.lcp[i] as usize } else { 0 };
            let mut lb = i - 1;
            while l < stack.last().unwrap().0 {
                let (depth, start) = stack.pop().unwrap();
                lb = start;
                out.push((depth, start, i - 1));
            }
            if l > stack.last().unwrap().0 {
                stack.push((l, lb));
            }
        }
        let (depth, start) = stack.pop().unwrap();
        out.push((depth, start, n - 1));
        out.retain(|&(d, _, _)| d <= self.cutoff);
        out
    }

    /// All bispecial factors of length at most the cutoff, ordered by length
    /// and then lexicographically.
    pub fn bispecials(&self) -> Vec<BispecialRecord> {
        let mut out = Vec::new();
        for (depth, lb, rb) in self.branching_intervals() {
            let ext = self.collect_extensions(self.sa[lb..=rb].iter().map(|&s| s as usize), depth);
            if !ext.is_bispecial() {
                continue;
            }
            let factor = self.prefix.factor(self.sa[lb] as usize, depth);
            out.push(BispecialRecord {
                palindromic: is_palindrome(factor.letters()),
                bilateral_order: ext.bilateral_order(),
                factor,
                lext: ext.lext,
                rext: ext.rext,
                bext: ext.bext,
            });
        }
        out.sort_by(|a, b| (a.factor.len(), a.factor.letters()).cmp(&(b.factor.len(), b.factor.letters())));
        out
    }

    pub fn bilateral_order(&self, w: &Word) -> Result<i64> {
        Ok(self.extensions(w)?.bilateral_order())
    }

    pub fn return_words(&self, w: &Word) -> Result<ReturnWordSet> {
        let occ = self.occurrences(w);
        if occ.len() < 2 {
            return Err(Error::InsufficientOccurrences(occ.len()));
        }
        let mut counts: BTreeMap<(usize, Vec<Letter>), usize> = BTreeMap::new();
        for pair in occ.windows(2) {
            let r = self.text()[pair[0]..pair[1]].to_vec();
            *counts.entry((r.len(), r)).or_default() += 1;
        }
        let k = self.prefix.alphabet_size();
        let words: Vec<(Word, usize)> = counts
            .into_iter()
            .map(|((_, r), c)| (Word::from_letters_unchecked(r, k), c))
            .collect();
        Ok(ReturnWordSet {
            target: w.clone(),
            shortest: words[0].0.clone(),
            words,
        })
    }

    /// Smallest period `q ≤ cutoff` of the second half of the prefix, if any.
    pub fn tail_period(&self) -> Option<usize> {
        let t = self.text();
        let half = &t[t.len() / 2..];
        if half.is_empty() {
            return None;
        }
        let q = half.len() - border_array(half)[half.len()];
        (q <= self.cutoff.max(1) && q < half.len()).then_some(q)
    }
}

/// The bispecial factor realizing the estimate and its shortest return word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentEstimate {
    #[serde(serialize_with = "crate::word::serialize_rational")]
    pub value: Rational,
    pub bispecial: Word,
    pub shortest_return: Word,
}

/// `1 + max |w| / |r|` over trusted bispecials `w` with shortest return
/// word `r`; a lower bound for the critical exponent.
pub fn critical_exponent_estimate(idx: &FactorIndex) -> Result<ExponentEstimate> {
    if let Some(q) = idx.tail_period() {
        return Err(Error::Periodic(q));
    }
    let mut best: Option<ExponentEstimate> = None;
    for b in idx.bispecials() {
        let Ok(ret) = idx.return_words(&b.factor) else { continue };
        let value = Rational::new(
            BigInt::from(b.factor.len() + ret.shortest.len()),
            BigInt::from(ret.shortest.len()),
        );
        if best.as_ref().map_or(true, |cur| value > cur.value) {
            best = Some(ExponentEstimate {
                value,
                bispecial: b.factor,
                shortest_return: ret.shortest,
            });
        }
    }
    best.ok_or(Error::NoBispecial)
}

/// Suffix array by prefix doubling.
pub(crate) fn suffix_array(t: &[Letter]) -> Vec<u32> {
    let n = t.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = t.iter().map(|c| c.0).collect();
    let mut tmp = vec![0u32; n];
    let mut k = 1usize;
    while n > 1 {
        let key = |i: u32| {
            let i = i as usize;
            (rank[i], if i + k < n { rank[i + k] as i64 } else { -1 })
        };
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0] as usize] = 0;
        for j in 1..n {
            let bump = (key(sa[j - 1]) != key(sa[j])) as u32;
            tmp[sa[j] as usize] = tmp[sa[j - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's algorithm.
pub(crate) fn lcp_array(t: &[Letter], sa: &[u32]) -> Vec<u32> {
    let n = t.len();
    let mut rank = vec![0usize; n];
    for (i, &s) in sa.iter().enumerate() {
        rank[s as usize] = i;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1] as usize;
            while i + h < n && j + h < n && t[i + h] == t[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}
