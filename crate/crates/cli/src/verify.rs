use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::thread;

use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use richrt::recurrence::{verify_dominance_with, verify_explicit_bs_with, verify_weight_inequality_capped, WeightRow};
use richrt::spectral::{beta_factor, lambda_factor, phi_matrix, threshold_poly};
use richrt::{
    build_index, census, char_poly, closed_form_sweep, eigenvector_check, fixed_point_prefix, h_orthogonality,
    hamilton_cayley_check, make_phi, make_weighted_pi, pisot_roots, recurrence_solution_check, richness,
    richness_via_crw, type_one_bound_check, udotv_check, AlgebraicNumber, Error, Perturbation, PolyInt, Verdict,
    WeightInequalityReport, Word,
};

use crate::args::{Format, PerturbKind, VerifyArgs};
use crate::{output, Failure, EXIT_FAIL, EXIT_PASS, EXIT_UNDECIDED, SCHEMA_VERSION};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    anchor: &'static str,
    status: Status,
    detail: String,
    margin: Option<String>,
}

type Found = richrt::Result<(String, Option<String>)>;

fn check(name: &'static str, anchor: &'static str, found: Found) -> Check {
    let (status, detail, margin) = match found {
        Ok((detail, margin)) => (Status::Pass, detail, margin),
        Err(Error::Undecided(m)) => (Status::Undecided, m, None),
        Err(e) => (Status::Fail, e.to_string(), None),
    };
    Check {
        name,
        anchor,
        status,
        detail,
        margin,
    }
}

fn failed(msg: String) -> Error {
    Error::InvariantBreach(msg)
}

#[derive(Serialize)]
struct FamilySummary {
    family: String,
    rows: usize,
    min_margin: String,
    worst_n: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a VerifyArgs,
    status: Status,
    checks: Vec<Check>,
    weighted_inequality: Option<WeightSummary>,
}

#[derive(Serialize)]
struct WeightSummary {
    lambda: richrt::Interval,
    min_margin: Option<String>,
    families: Vec<FamilySummary>,
}

#[derive(Serialize)]
struct CsvRow {
    d: usize,
    family: String,
    n: usize,
    hw: String,
    hr: String,
    margin_lo: String,
    margin_hi: String,
    verdict: String,
}

fn summarize(report: &WeightInequalityReport) -> WeightSummary {
    let mut by_family: BTreeMap<String, (usize, &WeightRow)> = BTreeMap::new();
    let mut order = Vec::new();
    for row in &report.rows {
        let key = row.family.to_string();
        match by_family.get_mut(&key) {
            Some((count, worst)) => {
                *count += 1;
                if row.margin.lo() < worst.margin.lo() {
                    *worst = row;
                }
            }
            None => {
                order.push(key.clone());
                by_family.insert(key, (1, row));
            }
        }
    }
    let families = order
        .into_iter()
        .map(|family| {
            let (rows, worst) = by_family[&family];
            FamilySummary {
                family,
                rows,
                min_margin: worst.margin.decimal_bounds(12).0,
                worst_n: worst.n,
            }
        })
        .collect();
    WeightSummary {
        lambda: report.lambda.clone(),
        min_margin: report
            .min_margin
            .as_ref()
            .map(|m| format!("{:.12}", m.to_f64().unwrap_or(f64::NAN))),
        families,
    }
}

fn validate(a: &VerifyArgs) -> Result<(), Failure> {
    if a.d < 3 {
        return Err(Failure::Usage(format!(
            "verify requires d ≥ 3 (the threshold result is stated for d ≥ 3), got d = {}",
            a.d
        )));
    }
    if a.cutoff == 0 || a.cutoff > a.prefix / 10 {
        return Err(Failure::Usage(format!(
            "--cutoff must lie in 1..={} for a prefix of {}",
            a.prefix / 10,
            a.prefix
        )));
    }
    if a.crw_max_len > a.prefix / 4 {
        return Err(Failure::Usage(format!(
            "--crw-max-len must be at most {}",
            a.prefix / 4
        )));
    }
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Failure::Usage("--tol must lie in (0, 1)".into()));
    }
    Ok(())
}

fn perturbation(a: &VerifyArgs) -> Perturbation {
    match a.perturb {
        None => Perturbation::none(),
        Some(PerturbKind::Seed) => Perturbation {
            seed: true,
            matrix: false,
        },
        Some(PerturbKind::Matrix) => Perturbation {
            seed: false,
            matrix: true,
        },
        Some(PerturbKind::Both) => Perturbation {
            seed: true,
            matrix: true,
        },
    }
}

fn algebraic_checks(d: usize, n_max: usize, tol: f64) -> Vec<Check> {
    let factorization = (|| {
        let fg = &lambda_factor(d) * &beta_factor(d);
        let chi = char_poly(&phi_matrix(d)?)?;
        if chi != fg {
            return Err(failed(format!("characteristic polynomial {chi} differs from f·g")));
        }
        if &PolyInt::from_i64s(&[-1, 1]) * &fg != threshold_poly(2 * d + 1) {
            return Err(failed("(t−1)·f·g differs from t^{2d}(t−2)²−1".into()));
        }
        Ok(("char poly = f·g; (t−1)·f·g = t^{2d}(t−2)²−1".into(), None))
    })();
    let tol_q = BigRational::from_f64(tol).unwrap_or_else(BigRational::zero);
    vec![
        check(
            "characteristic polynomial factorization",
            "char-poly-factorization",
            factorization,
        ),
        check(
            "M^{2d}(M−2I)² = I",
            "hamilton-cayley",
            hamilton_cayley_check(d).map(|_| ("exact".into(), None)),
        ),
        check(
            "closed form of f_n",
            "closed-form",
            closed_form_sweep(d, n_max).map(|_| (format!("n ≤ {n_max}, exact"), None)),
        ),
        check(
            "Pisot conjugates inside the unit disk",
            "pisot",
            pisot_roots(d, &BigRational::new(1.into(), 1_000_000_000.into())).map(|p| {
                let beta = p
                    .beta_conjugate_radius
                    .map_or("none".into(), |r| format!("{:.6}", r.to_f64().unwrap_or(f64::NAN)));
                (
                    format!(
                        "Λ ∈ {}, conjugate radius {:.6}; β conjugate radius {beta}",
                        p.lambda.interval(),
                        p.lambda_conjugate_radius.to_f64().unwrap_or(f64::NAN)
                    ),
                    None,
                )
            }),
        ),
        check(
            "right eigenvectors",
            "eigenvector",
            eigenvector_check(d).map(|_| ("exact in Z[t]/(f), Z[t]/(g)".into(), None)),
        ),
        check(
            "u·v normalization",
            "u-dot-v",
            udotv_check(d).map(|_| ("exact in Z[t]/(f), Z[t]/(g)".into(), None)),
        ),
        check(
            "h orthogonal to the β-eigenvector",
            "h-orthogonality",
            h_orthogonality(d).map(|_| ("exact".into(), None)),
        ),
        check(
            "spectral solution of the f_n recurrence",
            "recurrence-solution",
            recurrence_solution_check(d, n_max, &tol_q).map(|r| {
                (
                    format!(
                        "{} terms, worst relative error {:.3e} at n = {}",
                        r.checked, r.worst_relative_error, r.worst_n
                    ),
                    None,
                )
            }),
        ),
    ]
}

fn series_checks(d: usize, n_max: usize, p: Perturbation, bits: u32) -> (Vec<Check>, Option<WeightInequalityReport>) {
    let explicit = verify_explicit_bs_with(d, n_max, p).map(|r| (format!("{} states", r.checked), None));
    let dominance = verify_dominance_with(d, n_max, p).map(|r| (format!("{} candidate comparisons", r.checked), None));
    let mut weights = None;
    let weight = AlgebraicNumber::isolate_ints(&lambda_factor(d), 2, 3)
        .and_then(|lambda| verify_weight_inequality_capped(d, n_max, &lambda, p, bits))
        .and_then(|report| {
            let found = match report.verdict {
                Verdict::Pass => Ok((
                    format!("{} rows", report.rows.len()),
                    report
                        .min_margin
                        .as_ref()
                        .map(|m| format!("{:.12}", m.to_f64().unwrap_or(f64::NAN))),
                )),
                _ => {
                    let first = report.failures().next();
                    Err(failed(first.map_or("failed".into(), |r| {
                        format!("{} fails at n = {}: margin {}", r.family, r.n, r.margin)
                    })))
                }
            };
            weights = Some(report);
            found
        });
    let bound = if p.is_none() {
        type_one_bound_check(d, n_max).map(|r| {
            let slack = (r.lhs_bound.to_f64().unwrap_or(f64::NAN) - r.max_abs_lhs).abs();
            (
                format!(
                    "max |left| {:.6} ≤ {}, min right {} ≥ {}",
                    r.max_abs_lhs, r.lhs_bound, r.min_rhs, r.rhs_bound
                ),
                Some(format!("{slack:.12}")),
            )
        })
    } else {
        Ok(("skipped under perturbation".into(), None))
    };
    let checks = vec![
        check("explicit series forms", "explicit-series", explicit),
        check("return-word dominance", "dominance", dominance),
        check("weighted inequality h·r/(3−Λ) > h·w", "weighted-inequality", weight),
        check("Type I bound", "type-one-bound", bound),
    ];
    (checks, weights)
}

fn word_checks(a: &VerifyArgs) -> Vec<Check> {
    let big_d = 2 * a.d + 1;
    let u = make_phi(big_d).and_then(|phi| fixed_point_prefix(&phi, a.prefix));
    let u = match u {
        Ok(u) => u,
        Err(e) => return vec![check("prefix generation", "prefix", Err(e))],
    };
    let rich_u = {
        let r = richness(&u);
        if r.is_rich() {
            Ok((format!("u_{big_d} prefix of {} has defect 0", u.len()), None))
        } else {
            Err(failed(format!(
                "defect {} at position {:?}",
                r.defect, r.first_defect_position
            )))
        }
    };
    let rich_pi = make_weighted_pi(a.d)
        .and_then(|pi| pi.apply(&u))
        .map(|w| w.prefix(a.prefix))
        .and_then(|w| {
            let r = richness(&w);
            if r.is_rich() {
                Ok((format!("π(u_{big_d}) prefix of {} has defect 0", w.len()), None))
            } else {
                Err(failed(format!(
                    "defect {} at position {:?}",
                    r.defect, r.first_defect_position
                )))
            }
        });
    let crw = richness_via_crw(&u, a.crw_max_len).and_then(|r| match r.counterexample {
        None => Ok((format!("{} complete return words palindromic", r.checked), None)),
        Some(c) => Err(failed(format!(
            "return word {} to {} at {}",
            c.return_word, c.palindrome, c.start
        ))),
    });
    let idx = build_index(&u, a.cutoff);
    let census_found = idx.as_ref().map_err(Clone::clone).and_then(|idx| {
        let r = census(a.d, idx)?;
        if !r.unmatched_observed.is_empty() || !r.return_mismatches.is_empty() {
            return Err(failed(format!(
                "{} observed bispecials unpredicted, {} return-word mismatches",
                r.unmatched_observed.len(),
                r.return_mismatches.len()
            )));
        }
        let unseen = if r.unmatched_predicted.is_empty() {
            String::new()
        } else {
            format!("; {} predicted not yet seen in the prefix", r.unmatched_predicted.len())
        };
        Ok((
            format!(
                "{} observed bispecials all predicted, {} return words checked{unseen}",
                r.observed, r.returns_checked
            ),
            None,
        ))
    });
    let sampled = idx.as_ref().map_err(Clone::clone).and_then(|idx| {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let max_len = a.cutoff.min(50);
        let mut short = 0;
        for _ in 0..a.samples {
            let len = rng.gen_range(1..=max_len);
            let start = rng.gen_range(0..u.len() / 2);
            let f: Word = u.factor(start, len);
            let count = idx.return_words(&f)?.distinct();
            if count > big_d {
                return Err(failed(format!("factor {f} has {count} > {big_d} return words")));
            }
            if count < big_d {
                short += 1;
            }
        }
        let complete = a.samples - short;
        let mut detail = format!(
            "{complete} of {} sampled factors (seed {}) show exactly {big_d} return words",
            a.samples, a.seed
        );
        if short > 0 {
            let _ = write!(
                detail,
                "; {short} show fewer, their remaining return words lie beyond the prefix"
            );
        }
        Ok((detail, None))
    });
    vec![
        check("palindromic richness of u", "richness", rich_u),
        check("palindromic richness of π(u)", "richness-pi", rich_pi),
        check("complete return words are palindromes", "complete-return-words", crw),
        check("bispecial census", "bispecial-census", census_found),
        check("return-word count", "return-word-count", sampled),
    ]
}

pub fn run(a: VerifyArgs) -> Result<i32, Failure> {
    validate(&a)?;
    let p = perturbation(&a);
    let (algebraic, (series, weights), words) = thread::scope(|s| {
        let alg = s.spawn(|| algebraic_checks(a.d, a.n_max, a.tol));
        let ser = s.spawn(|| series_checks(a.d, a.n_max, p, a.precision_bits));
        let words = word_checks(&a);
        (
            alg.join().expect("algebraic checks panicked"),
            ser.join().expect("series checks panicked"),
            words,
        )
    });
    let checks: Vec<Check> = algebraic.into_iter().chain(series).chain(words).collect();
    let status = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Undecided) {
        Status::Undecided
    } else {
        Status::Pass
    };
    if a.format == Format::Csv {
        for c in &checks {
            eprintln!("{:?} {}: {}", c.status, c.anchor, c.detail);
        }
    }
    let bytes = match a.format {
        Format::Json => output::json(&Report {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            config: &a,
            status,
            weighted_inequality: weights.as_ref().map(summarize),
            checks,
        })?,
        Format::Csv => output::csv(weights.iter().flat_map(|w| &w.rows).map(|r| {
            let (lo, hi) = r.margin.decimal_bounds(12);
            CsvRow {
                d: r.d,
                family: r.family.to_string(),
                n: r.n,
                hw: r.hw.to_string(),
                hr: r.hr.to_string(),
                margin_lo: lo,
                margin_hi: hi,
                verdict: r.verdict.to_string(),
            }
        }))?,
    };
    output::emit(a.out.as_deref(), &bytes)?;
    Ok(match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Undecided => EXIT_UNDECIDED,
    })
}
