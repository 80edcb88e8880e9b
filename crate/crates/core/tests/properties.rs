use std::collections::HashSet;

use proptest::prelude::*;
use richrt::word::{max_factor_exponent_with, ExponentScan};
use richrt::{
    border_array, decode, exponent, f_closed_form, f_vector, find_occurrences, is_palindrome, make_phi,
    make_weighted_pi, minimal_period, mirror, parikh, parses, richness, series, Eertree, Family, Letter, Word,
};

fn word(k: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(move |v| Word::from_indices(v, k as usize).unwrap())
}

fn nonempty_word(k: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 1..=max_len).prop_map(move |v| Word::from_indices(v, k as usize).unwrap())
}

fn naive_period(w: &[Letter]) -> usize {
    (1..=w.len())
        .find(|&p| (p..w.len()).all(|i| w[i] == w[i - p]))
        .unwrap_or(w.len())
}

fn naive_palindromes(w: &[Letter]) -> usize {
    let mut seen = HashSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if is_palindrome(&w[i..j]) {
                seen.insert(&w[i..j]);
            }
        }
    }
    seen.len()
}

proptest! {
    #[test]
    fn mirror_is_involution(w in word(5, 40)) {
        prop_assert_eq!(mirror(&mirror(&w)), w.clone());
        prop_assert_eq!(parikh(&mirror(&w)), parikh(&w));
    }

    #[test]
    fn parikh_is_additive(x in word(4, 30), y in word(4, 30)) {
        prop_assert_eq!(parikh(&x.concat(&y)), parikh(&x) + parikh(&y));
    }

    #[test]
    fn border_array_gives_period(w in nonempty_word(3, 40)) {
        let b = border_array(w.letters());
        let p = minimal_period(&w).unwrap();
        prop_assert_eq!(p, w.len() - b[w.len()]);
        prop_assert_eq!(p, naive_period(w.letters()));
        prop_assert_eq!(exponent(&w).unwrap() * num_rational::BigRational::from_integer(p.into()),
            num_rational::BigRational::from_integer(w.len().into()));
    }

    #[test]
    fn eertree_counts_palindromes(w in word(3, 60)) {
        let tree = Eertree::build(w.letters());
        prop_assert_eq!(tree.distinct_nonempty(), naive_palindromes(w.letters()));
        let r = richness(&w);
        prop_assert_eq!(r.defect, w.len() - tree.distinct_nonempty());
        for p in tree.palindromes() {
            prop_assert!(is_palindrome(&p));
            prop_assert!(tree.find(&p).is_some());
        }
    }

    #[test]
    fn occurrences_match_naive(text in word(2, 60), pat in nonempty_word(2, 4)) {
        let got: Vec<usize> = find_occurrences(text.letters(), pat.letters()).collect();
        let want: Vec<usize> = text.letters().windows(pat.len()).enumerate()
            .filter(|(_, w)| *w == pat.letters()).map(|(i, _)| i).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn exponent_scans_agree(w in nonempty_word(3, 50), min_len in 1usize..4) {
        prop_assume!(min_len <= w.len());
        let a = max_factor_exponent_with(&w, min_len, ExponentScan::Naive).unwrap();
        let b = max_factor_exponent_with(&w, min_len, ExponentScan::Indexed).unwrap();
        prop_assert_eq!(a.exponent, b.exponent);
    }

    #[test]
    fn phi_is_a_homomorphism(d in 1usize..5, x in word(3, 20), y in word(3, 20)) {
        let m = make_phi(2 * d + 1).unwrap();
        let (x, y) = (Word::from_indices(x.to_indices(), 2 * d + 1).unwrap(), Word::from_indices(y.to_indices(), 2 * d + 1).unwrap());
        let lhs = m.apply(&x.concat(&y)).unwrap();
        prop_assert_eq!(lhs.clone(), m.apply(&x).unwrap().concat(&m.apply(&y).unwrap()));
        prop_assert_eq!(parikh(&lhs), m.incidence_matrix().apply(&parikh(&x.concat(&y))));
    }

    #[test]
    fn aligned_parse_is_found(d in 2usize..5, v in prop::collection::vec(0u32..9, 1..15), cut in 0usize..6) {
        let big_d = 2 * d + 1;
        let v = Word::from_indices(v.into_iter().map(|x| x % big_d as u32), big_d).unwrap();
        let pi = make_weighted_pi(d).unwrap();
        let image = pi.apply(&v).unwrap();
        let start = cut.min(image.len() - 1);
        let w = image.factor(start, image.len() - start);
        let all = parses(&pi, &w).unwrap();
        prop_assert!(!all.is_empty());
        if start == 0 {
            prop_assert!(all.iter().any(|p| p.offset == 0 && p.tail == 0 && p.pre_image == v.letters()));
        }
        if let Some(unique) = decode(&pi, &w).unwrap() {
            prop_assert_eq!(all.len(), 1);
            prop_assert_eq!(&unique, &all[0]);
        }
    }

    #[test]
    fn closed_form_matches_recurrence(d in 1usize..6, n in 0usize..60) {
        prop_assert_eq!(f_vector(d, n).unwrap(), f_closed_form(d, n).unwrap());
    }

    #[test]
    fn type_one_series_grows(d in 2usize..5, n in 0usize..30) {
        let s = series(Family::TypeI, d, n).unwrap();
        prop_assert_eq!(s.len(), n + 1);
        for pair in s.windows(2) {
            prop_assert!(pair[0].w.le(&pair[1].w));
        }
    }
}
