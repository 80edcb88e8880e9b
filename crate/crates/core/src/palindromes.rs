//! Palindromic factors via the eertree: distinct-palindrome counts, richness
//! and defect, palindromic extensions and the complete-return-word test.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{is_palindrome, Letter, Word};

const IMAGINARY_ROOT: usize = 0;
const EMPTY_ROOT: usize = 1;

/// Palindromic tree of a word, built online.
///
/// Node 0 is the root of length −1, node 1 the empty palindrome. An edge
/// labelled `c` from the node of `p` leads to the node of `cpc`.
#[derive(Clone, Debug)]
pub struct Eertree {
    len: Vec<i64>,
    link: Vec<usize>,
    edges: Vec<Vec<(Letter, usize)>>,
    /// End position of the first occurrence of each node's palindrome.
    first_end: Vec<usize>,
    text: Vec<Letter>,
    /// Longest palindromic suffix after each appended position.
    suffix_node: Vec<usize>,
    created: Vec<bool>,
    last: usize,
}

impl Default for Eertree {
    fn default() -> Self {
        Self::new()
    }
}

impl Eertree {
    pub fn new() -> Self {
        Eertree {
            len: vec![-1, 0],
            link: vec![IMAGINARY_ROOT, IMAGINARY_ROOT],
            edges: vec![Vec::new(), Vec::new()],
            first_end: vec![0, 0],
            text: Vec::new(),
            suffix_node: Vec::new(),
            created: Vec::new(),
            last: EMPTY_ROOT,
        }
    }

    pub fn build(w: &[Letter]) -> Self {
        let mut t = Eertree::new();
        for &c in w {
            t.push(c);
        }
        t
    }

    fn edge(&self, node: usize, c: Letter) -> Option<usize> {
        self.edges[node].iter().find(|e| e.0 == c).map(|e| e.1)
    }

    /// Walks suffix links from `node` until `c·p·c` is a suffix at `i`.
    fn extendable(&self, mut node: usize, i: usize, c: Letter) -> usize {
        loop {
            let l = self.len[node];
            let before = i as i64 - 1 - l;
            if before >= 0 && self.text[before as usize] == c {
                return node;
            }
            node = self.link[node];
        }
    }

    /// Appends a letter; returns `true` when a new palindrome appeared.
    pub fn push(&mut self, c: Letter) -> bool {
        let i = self.text.len();
        self.text.push(c);
        let parent = self.extendable(self.last, i, c);
        if let Some(node) = self.edge(parent, c) {
            self.last = node;
            self.suffix_node.push(node);
            self.created.push(false);
            return false;
        }
        let node = self.len.len();
        let new_len = self.len[parent] + 2;
        let link = if new_len == 1 {
            EMPTY_ROOT
        } else {
            let p = self.extendable(self.link[parent], i, c);
            self.edge(p, c).expect("proper palindromic suffix already present")
        };
        self.len.push(new_len);
        self.link.push(link);
        self.edges.push(Vec::new());
        self.first_end.push(i);
        self.edges[parent].push((c, node));
        self.last = node;
        self.suffix_node.push(node);
        self.created.push(true);
        true
    }

    pub fn text(&self) -> &[Letter] {
        &self.text
    }

    pub fn node_count(&self) -> usize {
        self.len.len()
    }

    /// Distinct non-empty palindromic factors.
    pub fn distinct_nonempty(&self) -> usize {
        self.len.len() - 2
    }

    /// Whether position `i` created a new palindrome.
    pub fn created_at(&self, i: usize) -> bool {
        self.created[i]
    }

    /// Length of the longest palindromic suffix of `text[..=i]`.
    pub fn longest_suffix_len(&self, i: usize) -> usize {
        self.len[self.suffix_node[i]] as usize
    }

    pub(crate) fn node_len(&self, node: usize) -> usize {
        self.len[node].max(0) as usize
    }

    pub(crate) fn suffix_link(&self, node: usize) -> usize {
        self.link[node]
    }

    pub(crate) fn suffix_node(&self, i: usize) -> usize {
        self.suffix_node[i]
    }

    /// Node of the palindrome `p`, if it is a factor.
    pub fn find(&self, p: &[Letter]) -> Option<usize> {
        if !is_palindrome(p) {
            return None;
        }
        let mut node = if p.len() % 2 == 1 { IMAGINARY_ROOT } else { EMPTY_ROOT };
        for &c in &p[p.len() / 2..] {
            node = self.edge(node, c)?;
        }
        Some(node)
    }

    /// Letters `c` with `c·p·c` a factor, for the palindrome at `node`.
    pub fn extensions(&self, node: usize) -> BTreeSet<Letter> {
        self.edges[node].iter().map(|e| e.0).collect()
    }

    /// All distinct non-empty palindromic factors, in order of discovery.
    pub fn palindromes(&self) -> Vec<Vec<Letter>> {
        (2..self.len.len())
            .map(|v| {
                let end = self.first_end[v] + 1;
                self.text[end - self.len[v] as usize..end].to_vec()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichnessReport {
    pub length: usize,
    /// Distinct palindromic factors, the empty word included.
    pub palindromes: usize,
    /// `length + 1 - palindromes`.
    pub defect: usize,
    /// First position that did not create a new palindrome.
    pub first_defect_position: Option<usize>,
}

impl RichnessReport {
    pub fn is_rich(&self) -> bool {
        self.defect == 0
    }
}

pub fn richness(w: &Word) -> RichnessReport {
    let tree = Eertree::build(w.letters());
    let palindromes = tree.distinct_nonempty() + 1;
    RichnessReport {
        length: w.len(),
        palindromes,
        defect: w.len() + 1 - palindromes,
        first_defect_position: (0..w.len()).find(|&i| !tree.created_at(i)),
    }
}

/// Letters `i` such that `i·p·i` is a factor of `prefix`.
pub fn pext(prefix: &Word, p: &Word) -> Result<BTreeSet<Letter>> {
    if !is_palindrome(p.letters()) {
        return Err(Error::NotPalindrome(p.to_string()));
    }
    let tree = Eertree::build(prefix.letters());
    let node = tree.find(p.letters()).ok_or_else(|| Error::NotAFactor(p.to_string()))?;
    Ok(tree.extensions(node))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrwCounterexample {
    pub palindrome: Word,
    pub return_word: Word,
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrwReport {
    pub max_len: usize,
    /// Complete return words inspected.
    pub checked: usize,
    pub counterexample: Option<CrwCounterexample>,
}

impl CrwReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that every complete return word to a non-empty palindromic
/// factor of length at most `max_len` is a palindrome. Requires
/// `max_len ≤ |prefix| / 4`.
pub fn richness_via_crw(prefix: &Word, max_len: usize) -> Result<CrwReport> {
    let limit = prefix.len() / 4;
    if max_len > limit {
        return Err(Error::UntrustedCutoff {
            cutoff: max_len,
            limit,
            len: prefix.len(),
        });
    }
    Ok(richness_via_crw_unguarded(prefix, max_len))
}

/// [`richness_via_crw`] without the length margin; for short words.
pub fn richness_via_crw_unguarded(prefix: &Word, max_len: usize) -> CrwReport {
    let w = prefix.letters();
    let tree = Eertree::build(w);
    let mut last_end: Vec<Option<usize>> = vec![None; tree.node_count()];
    let mut checked = 0;
    for j in 0..w.len() {
        let mut node = tree.suffix_node(j);
        while node > EMPTY_ROOT {
            let plen = tree.node_len(node);
            if plen <= max_len {
                if let Some(prev) = last_end[node] {
                    let start = prev + 1 - plen;
                    checked += 1;
                    if !is_palindrome(&w[start..=j]) {
                        return CrwReport {
                            max_len,
                            checked,
                            counterexample: Some(CrwCounterexample {
                                palindrome: prefix.factor(j + 1 - plen, plen),
                                return_word: prefix.factor(start, j + 1 - start),
                                start,
                            }),
                        };
                    }
                }
                last_end[node] = Some(j);
            }
            node = tree.suffix_link(node);
        }
    }
    CrwReport {
        max_len,
        checked,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sym(s: &str) -> Word {
        Word::from_symbols(s)
    }

    fn brute(w: &[Letter]) -> HashSet<Vec<Letter>> {
        let mut set = HashSet::new();
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                if is_palindrome(&w[i..j]) {
                    set.insert(w[i..j].to_vec());
                }
            }
        }
        set
    }

    #[test]
    fn counts_examples() {
        assert_eq!(Eertree::build(sym("aba").letters()).distinct_nonempty(), 3);
        assert_eq!(Eertree::build(&[]).distinct_nonempty(), 0);
        let w = Word::from_digits("0102010", 3).unwrap();
        let t = Eertree::build(w.letters());
        let found: HashSet<Vec<Letter>> = t.palindromes().into_iter().collect();
        assert_eq!(found, brute(w.letters()));
        assert_eq!(found.len(), 7);
    }

    #[test]
    fn richness_examples() {
        let r = richness(&Word::from_digits("0102010", 3).unwrap());
        assert_eq!((r.palindromes, r.defect, r.first_defect_position), (8, 0, None));
        let r = richness(&Word::empty(1));
        assert_eq!((r.palindromes, r.defect), (1, 0));
        let r = richness(&sym("abcab"));
        assert_eq!(r.defect, 2);
        assert_eq!(r.first_defect_position, Some(3));
    }

    #[test]
    fn pext_examples() {
        let aba = Word::from_digits("010", 2).unwrap();
        assert_eq!(
            pext(&aba, &Word::from_digits("1", 2).unwrap()).unwrap(),
            BTreeSet::from([Letter(0)])
        );
        let w = Word::from_digits("0110", 2).unwrap();
        assert_eq!(pext(&w, &Word::empty(2)).unwrap(), BTreeSet::from([Letter(1)]));
        assert!(matches!(
            pext(&w, &Word::from_digits("01", 2).unwrap()),
            Err(Error::NotPalindrome(_))
        ));
        assert!(matches!(
            pext(&w, &Word::from_digits("00", 2).unwrap()),
            Err(Error::NotAFactor(_))
        ));
    }

    #[test]
    fn find_palindromes() {
        let w = Word::from_digits("0102010", 3).unwrap();
        let t = Eertree::build(w.letters());
        assert!(t.find(Word::from_digits("10201", 3).unwrap().letters()).is_some());
        assert!(t.find(Word::from_digits("101", 3).unwrap().letters()).is_none());
        assert_eq!(t.find(&[]), Some(EMPTY_ROOT));
    }

    #[test]
    fn crw_examples() {
        assert!(richness_via_crw_unguarded(&sym("aab"), 1).passed());
        let r = richness_via_crw_unguarded(&sym("abca"), 1);
        let c = r.counterexample.unwrap();
        assert_eq!(
            (c.palindrome.to_indices(), c.return_word.to_indices()),
            (vec![0], vec![0, 1, 2, 0])
        );
        assert!(matches!(
            richness_via_crw(&sym("abca"), 2),
            Err(Error::UntrustedCutoff { .. })
        ));
    }

    #[test]
    fn defect_is_monotone_on_prefixes() {
        let w = sym("aabbaabcabbcacbabca");
        let mut prev = 0;
        for n in 0..=w.len() {
            let d = richness(&w.prefix(n)).defect;
            assert!(d >= prev);
            prev = d;
        }
    }
}
