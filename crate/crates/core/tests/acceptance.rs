//! Acceptance runner: one PASS/FAIL line per criterion, each against its
//! stated tolerance and time budget. Exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use richrt::factors::build_index;
use richrt::morphism::{fixed_point_prefix, make_phi, make_weighted_pi};
use richrt::palindromes::{richness, richness_via_crw, Eertree};
use richrt::recurrence::{
    census, closed_form_sweep, hamilton_cayley_check, type_one_bound_check, verify_dominance, verify_explicit_bs,
    verify_weight_inequality,
};
use richrt::spectral::{
    asymptotic_ce, beta_factor, char_poly, eigenvector_check, h_orthogonality, lambda_factor, phi_matrix,
    recurrence_solution_check, threshold_poly, udotv_check, AlgebraicNumber, PolyInt,
};
use richrt::word::{border_array, is_palindrome, mirror, parikh, Letter, Word};
use richrt::{critical_exponent_estimate, max_factor_exponent, Error};

type Outcome = Result<String, String>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn u(big_d: usize, n: usize) -> Word {
    fixed_point_prefix(&make_phi(big_d).unwrap(), n).unwrap()
}

fn pi_image(d: usize, n: usize) -> Word {
    let pi = make_weighted_pi(d).unwrap();
    pi.apply(&u(2 * d + 1, n)).unwrap().prefix(n)
}

/// Real root of `x³ − 2x² − 1` by Newton's method in f64.
fn mu() -> f64 {
    let mut x = 2.2f64;
    for _ in 0..50 {
        x -= (x * x * x - 2.0 * x * x - 1.0) / (3.0 * x * x - 4.0 * x);
    }
    x
}

fn timed_ce(big_d: usize, width: &BigRational) -> Result<richrt::Interval, String> {
    let start = Instant::now();
    let e = asymptotic_ce(big_d, width).map_err(err)?;
    ensure(
        start.elapsed() < Duration::from_secs(1),
        format!("E*({big_d}) took over 1s"),
    )?;
    Ok(e)
}

fn spectral_constants() -> Outcome {
    let width = rat(1, 1_000_000_000_000);
    let e3 = timed_ce(3, &width)?;
    // 2 + √2/2 ∈ [lo, hi]  ⇔  (2(lo − 2))² ≤ 2 ≤ (2(hi − 2))²
    let two = rat(2, 1);
    let lo = (e3.lo() - &two) * &two;
    let hi = (e3.hi() - &two) * &two;
    ensure(&lo * &lo <= two && two <= &hi * &hi, format!("2+√2/2 not in {e3}"))?;
    ensure(e3.width() <= rat(1, 1_000_000_000), "D=3 interval wider than 1e-9")?;

    let e5 = timed_ce(5, &width)?;
    let target = 1.0 + 1.0 / (3.0 - mu());
    ensure(
        e5.contains_f64(target, 1e-12),
        format!("1+1/(3−μ) = {target} not in {e5}"),
    )?;
    let (a, b) = e5.to_f64_pair();
    ensure(
        (a - 2.259).abs() < 5e-4 && (b - 2.259).abs() < 5e-4,
        format!("D=5 value {a} not within 5e-4 of 2.259"),
    )?;

    let e7 = timed_ce(7, &width)?;
    ensure(
        e7.contains_f64(2.119_719_68, 1e-7),
        format!("2.11971968 not within 1e-7 of {e7}"),
    )?;
    Ok(format!("E*(3)={e3}, E*(5)={e5}, E*(7)={e7}"))
}

fn factorization_identity() -> Outcome {
    let t_minus_one = PolyInt::from_i64s(&[-1, 1]);
    for d in 1..=8 {
        let fg = &lambda_factor(d) * &beta_factor(d);
        ensure(
            &t_minus_one * &fg == threshold_poly(2 * d + 1),
            format!("(t−1)fg mismatch at d={d}"),
        )?;
        let chi = char_poly(&phi_matrix(d).map_err(err)?).map_err(err)?;
        ensure(chi == fg, format!("char poly mismatch at d={d}: {chi}"))?;
    }
    Ok("d = 1..8".into())
}

fn hamilton_cayley() -> Outcome {
    for d in 1..=8 {
        hamilton_cayley_check(d).map_err(err)?;
    }
    Ok("d = 1..8".into())
}

fn closed_form() -> Outcome {
    for d in 3..=6 {
        closed_form_sweep(d, 200).map_err(err)?;
    }
    Ok("d = 3..6, n ≤ 200".into())
}

fn series_identities() -> Outcome {
    for d in 3..=6 {
        verify_explicit_bs(d, 100).map_err(err)?;
    }
    let idx = build_index(&u(7, 100_000), 400).map_err(err)?;
    let report = census(3, &idx).map_err(err)?;
    ensure(
        report.is_bijective(),
        format!(
            "unmatched observed {:?}, unmatched predicted {:?}",
            report.unmatched_observed.len(),
            report.unmatched_predicted
        ),
    )?;
    ensure(
        report.return_mismatches.is_empty(),
        format!("{} return-word mismatches", report.return_mismatches.len()),
    )?;
    Ok(format!(
        "explicit forms d = 3..6, n ≤ 100; u_7 census {} observed = {} predicted, {} return words checked",
        report.observed, report.predicted, report.returns_checked
    ))
}

fn dominance() -> Outcome {
    let mut states = 0;
    for d in 3..=6 {
        states += verify_dominance(d, 200).map_err(err)?.checked;
    }
    Ok(format!("{states} candidate comparisons"))
}

fn main_inequality() -> Outcome {
    let mut rows = 0;
    let mut min_margin: Option<BigRational> = None;
    let mut max_lhs = 0.0f64;
    for d in 3..=6 {
        let lambda = AlgebraicNumber::isolate_ints(&lambda_factor(d), 2, 3).map_err(err)?;
        let report = verify_weight_inequality(d, 500, &lambda).map_err(err)?;
        if let Some(bad) = report.failures().next() {
            return Err(format!("d={d} {} n={} margin {}", bad.family, bad.n, bad.margin));
        }
        let m = report.min_margin.clone().ok_or("empty report")?;
        ensure(
            m > BigRational::from_integer(0.into()),
            format!("non-positive margin at d={d}"),
        )?;
        min_margin = Some(min_margin.map_or(m.clone(), |x| x.min(m)));
        rows += report.rows.len();
        let bound = type_one_bound_check(d, 500).map_err(err)?;
        ensure(
            bound.min_rhs >= bound.rhs_bound,
            format!("right side below 3^d/(3^d−1) at d={d}"),
        )?;
        max_lhs = max_lhs.max(bound.max_abs_lhs);
    }
    let m = min_margin.unwrap().to_f64().unwrap_or(f64::NAN);
    Ok(format!(
        "{rows} rows, min margin {m:.3e}, max |Type I left| {max_lhs:.4} ≤ 27/28"
    ))
}

fn richness_checks() -> Outcome {
    let mut words: Vec<(String, Word)> = [3, 5, 7, 9]
        .iter()
        .map(|&dd| (format!("u_{dd}"), u(dd, 10_000)))
        .collect();
    words.push(("π(u_7)".into(), pi_image(3, 20_000)));
    words.push(("π(u_9)".into(), pi_image(4, 20_000)));
    for (name, w) in &words {
        let r = richness(w);
        ensure(
            r.is_rich(),
            format!("{name}: defect {} at {:?}", r.defect, r.first_defect_position),
        )?;
        let crw = richness_via_crw(w, 50).map_err(err)?;
        ensure(
            crw.passed(),
            format!("{name}: complete return word {:?} not a palindrome", crw.counterexample),
        )?;
    }
    Ok(format!(
        "{} prefixes rich, complete return words up to 50 palindromic",
        words.len()
    ))
}

fn exponent_bound() -> Outcome {
    let w = pi_image(3, 50_000);
    let best = max_factor_exponent(&w, 1).map_err(err)?;
    let e = best.exponent.to_f64().unwrap();
    ensure(e > 2.0 && e < 2.1198, format!("max exponent {e} outside (2.0, 2.1198)"))?;
    let mut prev: Option<BigRational> = None;
    let mut values = Vec::new();
    for cutoff in [50, 100, 200, 400, 800, 1600, 3200, 5000] {
        let idx = build_index(&w, cutoff).map_err(err)?;
        let est = critical_exponent_estimate(&idx).map_err(err)?;
        if let Some(p) = &prev {
            ensure(&est.value >= p, format!("estimate decreased at cutoff {cutoff}"))?;
        }
        ensure(
            est.value.to_f64().unwrap() < 2.1198,
            format!("estimate {} above the bound", est.value),
        )?;
        values.push(format!("{:.5}", est.value.to_f64().unwrap()));
        prev = Some(est.value);
    }
    Ok(format!("max exponent {e:.6}; estimates {}", values.join(" ≤ ")))
}

fn symbolic_identities() -> Outcome {
    for d in 2..=8 {
        eigenvector_check(d).map_err(err)?;
        udotv_check(d).map_err(err)?;
        h_orthogonality(d).map_err(err)?;
    }
    Ok("d = 2..8".into())
}

fn recurrence_numeric() -> Outcome {
    let mut worst = 0.0f64;
    for d in 3..=6 {
        let r = recurrence_solution_check(d, 100, &rat(1, 1_000_000)).map_err(err)?;
        worst = worst.max(r.worst_relative_error);
    }
    Ok(format!("worst relative error {worst:.2e}"))
}

fn all_words(k: u32, len: usize) -> impl Iterator<Item = Vec<Letter>> {
    let total = (k as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let c = Letter((code % k as u64) as u32);
                code /= k as u64;
                c
            })
            .collect()
    })
}

fn brute_period(w: &[Letter]) -> usize {
    (1..=w.len())
        .find(|&p| (p..w.len()).all(|i| w[i] == w[i - p]))
        .unwrap_or(w.len())
}

fn brute_palindromes(w: &[Letter]) -> usize {
    let mut set = HashSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if is_palindrome(&w[i..j]) {
                set.insert(&w[i..j]);
            }
        }
    }
    set.len()
}

fn property_suites() -> Outcome {
    let mut words = 0usize;
    for len in 0..=8 {
        for a in all_words(3, len) {
            let w = Word::new(a.clone(), 3).unwrap();
            ensure(mirror(&mirror(&w)) == w, "mirror is not an involution")?;
            let split = len / 2;
            let (x, y) = (w.prefix(split), w.factor(split, len - split));
            ensure(parikh(&x) + parikh(&y) == parikh(&w), "Parikh vector not additive")?;
        }
    }
    for len in 1..=12 {
        for a in all_words(3, len) {
            let period = len - border_array(&a)[len];
            ensure(period == brute_period(&a), format!("period mismatch on {a:?}"))?;
            words += 1;
        }
    }
    for (k, max_len) in [(2, 14), (3, 10)] {
        for len in 0..=max_len {
            for a in all_words(k, len) {
                let tree = Eertree::build(&a);
                ensure(
                    tree.distinct_nonempty() == brute_palindromes(&a),
                    format!("palindrome count mismatch on {a:?}"),
                )?;
                words += 1;
            }
        }
    }
    for big_d in [3, 5, 7] {
        let w = u(big_d, 1_000_000);
        let idx = build_index(&w, 60).map_err(err)?;
        for len in 1..=50 {
            let factors: BTreeSet<&[Letter]> = w.letters()[..50_000].windows(len).collect();
            for f in factors {
                let fw = Word::new(f.to_vec(), big_d).unwrap();
                let count = idx.return_words(&fw).map_err(err)?.distinct();
                ensure(
                    count == big_d,
                    format!("u_{big_d}: factor {fw} has {count} return words"),
                )?;
            }
        }
    }
    Ok(format!(
        "{words} exhaustive words; return words = D for u_3, u_5, u_7 up to length 50"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("spectral constants", 3, spectral_constants),
        ("factorization identity", 1, factorization_identity),
        ("Hamilton–Cayley", 5, hamilton_cayley),
        ("closed-form equivalence", 30, closed_form),
        ("series identities and u_7 census", 120, series_identities),
        ("dominance", 30, dominance),
        ("weighted inequality and Type I bound", 120, main_inequality),
        ("richness", 60, richness_checks),
        ("exponent bound", 180, exponent_bound),
        ("symbolic identities", 30, symbolic_identities),
        ("recurrence solution numeric", 30, recurrence_numeric),
        ("property suites", 120, property_suites),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (tag, detail) = match (&outcome, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("over budget of {budget}s; {msg}")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name} [{:.2}s] {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
