//! Command-line front end for the `richrt` library.

pub mod args;
mod output;
mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::Parser;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use richrt::spectral::asymptotic_ce_report;
use richrt::{
    build_index, critical_exponent_estimate, fixed_point_prefix, make_phi, make_weighted_pi, max_factor_exponent,
    richness, richness_via_crw, Morphism, Rational, Word,
};

use args::{BispecialsArgs, Cli, Command, ExponentArgs, Format, GenArgs, RichnessArgs, RtTableArgs, Source};
pub use output::SCHEMA_VERSION;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_FAIL,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify::run(a),
        Command::RtTable(a) => rt_table(a),
        Command::Richness(a) => richness_cmd(a),
        Command::Bispecials(a) => bispecials(a),
        Command::Exponent(a) => exponent(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("richrt: {f}");
            f.code()
        }
    }
}

struct Prefix {
    label: String,
    morphism: Morphism,
    word: Word,
}

fn prefix(source: &Source, len: usize) -> Result<Prefix, Failure> {
    match (source.big_d, source.pi, source.d) {
        (Some(big_d), false, None) => {
            let phi = make_phi(big_d).map_err(usage)?;
            let word = fixed_point_prefix(&phi, len).map_err(usage)?;
            Ok(Prefix {
                label: format!("u_{big_d}"),
                morphism: phi,
                word,
            })
        }
        (None, true, Some(d)) => {
            let pi = make_weighted_pi(d).map_err(usage)?;
            let u = fixed_point_prefix(&make_phi(2 * d + 1).map_err(usage)?, len.max(1)).map_err(usage)?;
            let word = pi.apply(&u).map_err(usage)?.prefix(len);
            Ok(Prefix {
                label: format!("pi(u_{})", 2 * d + 1),
                morphism: pi.base().clone(),
                word,
            })
        }
        _ => Err(Failure::Usage("give either --D <D> or --pi --d <d>".into())),
    }
}

fn gen(a: GenArgs) -> Result<i32, Failure> {
    let p = prefix(&a.source, a.len)?;
    let header = json!({
        "schema_version": SCHEMA_VERSION,
        "sequence": p.label,
        "alphabet_size": p.word.alphabet_size(),
        "morphism": p.morphism,
        "length": p.word.len(),
    });
    let mut text = serde_json::to_string(&header).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    if !p.word.is_empty() {
        for (i, x) in p.word.to_indices().iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            let _ = write!(text, "{x}");
        }
        text.push('\n');
    }
    output::emit(a.out.as_deref(), text.as_bytes())?;
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct RtRow {
    #[serde(rename = "D")]
    big_d: usize,
    lambda_lo: String,
    lambda_hi: String,
    estar_lo: String,
    estar_hi: String,
    digits: u32,
}

fn rt_table(a: RtTableArgs) -> Result<i32, Failure> {
    if let Some(&bad) = a.big_d.iter().find(|&&d| d < 3 || d % 2 == 0) {
        return Err(Failure::Usage(format!(
            "alphabet sizes must be odd and at least 3, got {bad}"
        )));
    }
    if a.digits == 0 || a.digits > 200 {
        return Err(Failure::Usage("--digits must lie in 1..=200".into()));
    }
    let width = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(a.digits));
    let mut rows = Vec::new();
    for &big_d in &a.big_d {
        let r = asymptotic_ce_report(big_d, &width).map_err(usage)?;
        let shown = a.digits + 2;
        let (lambda_lo, lambda_hi) = r.lambda.decimal_bounds(shown);
        let (estar_lo, estar_hi) = r.estar.decimal_bounds(shown);
        rows.push(RtRow {
            big_d,
            lambda_lo,
            lambda_hi,
            estar_lo,
            estar_hi,
            digits: r.digits,
        });
    }
    let bytes = match a.format {
        Format::Csv => output::csv(&rows)?,
        Format::Json => output::json(&json!({ "schema_version": SCHEMA_VERSION, "rows": rows }))?,
    };
    output::emit(a.out.as_deref(), &bytes)?;
    Ok(EXIT_PASS)
}

fn richness_cmd(a: RichnessArgs) -> Result<i32, Failure> {
    let p = prefix(&a.source, a.len)?;
    let rich = richness(&p.word);
    let crw = richness_via_crw(&p.word, a.crw_max_len).map_err(usage)?;
    let passed = rich.is_rich() && crw.passed();
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "sequence": p.label,
        "length": p.word.len(),
        "status": if passed { "pass" } else { "fail" },
        "richness": rich,
        "complete_return_words": crw,
    });
    output::emit(a.out.as_deref(), &output::json(&report)?)?;
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct BispecialRow {
    length: usize,
    shortest_return: usize,
    ratio: String,
    palindromic: bool,
    bilateral_order: i64,
    factor: String,
}

fn bispecials(a: BispecialsArgs) -> Result<i32, Failure> {
    let p = prefix(&a.source, a.len)?;
    let idx = build_index(&p.word, a.cutoff).map_err(usage)?;
    let mut rows = Vec::new();
    for b in idx.bispecials() {
        let Ok(ret) = idx.return_words(&b.factor) else {
            continue;
        };
        rows.push(BispecialRow {
            length: b.factor.len(),
            shortest_return: ret.shortest.len(),
            ratio: format!("{:.6}", b.factor.len() as f64 / ret.shortest.len() as f64),
            palindromic: b.palindromic,
            bilateral_order: b.bilateral_order,
            factor: b
                .factor
                .to_indices()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        });
    }
    rows.sort_by(|x, y| (x.length, &x.factor).cmp(&(y.length, &y.factor)));
    let bytes = match a.format {
        Format::Csv => output::csv(&rows)?,
        Format::Json => output::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "sequence": p.label,
            "length": p.word.len(),
            "cutoff": a.cutoff,
            "bispecials": rows,
        }))?,
    };
    output::emit(a.out.as_deref(), &bytes)?;
    Ok(EXIT_PASS)
}

fn exponent(a: ExponentArgs) -> Result<i32, Failure> {
    let p = prefix(&a.source, a.len)?;
    if p.word.is_empty() {
        return Err(Failure::Usage("--len must be positive".into()));
    }
    let best = max_factor_exponent(&p.word, 1).map_err(usage)?;
    let mut cutoffs = a.cutoffs.clone();
    cutoffs.sort_unstable();
    let mut estimates = Vec::new();
    let mut monotone = true;
    let mut prev: Option<Rational> = None;
    for c in cutoffs {
        let idx = build_index(&p.word, c).map_err(usage)?;
        let est = critical_exponent_estimate(&idx).map_err(usage)?;
        monotone &= prev.as_ref().map_or(true, |q| &est.value >= q);
        estimates.push(json!({
            "cutoff": c,
            "value": est.value.to_string(),
            "approx": est.value.to_f64(),
            "bispecial_length": est.bispecial.len(),
            "return_length": est.shortest_return.len(),
        }));
        prev = Some(est.value);
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "sequence": p.label,
        "length": p.word.len(),
        "max_exponent": {
            "value": best.exponent.to_string(),
            "approx": best.exponent.to_f64(),
            "start": best.start,
            "period": best.period,
            "length": best.witness.len(),
        },
        "estimates": estimates,
        "estimates_monotone": monotone,
    });
    output::emit(a.out.as_deref(), &output::json(&report)?)?;
    Ok(if monotone { EXIT_PASS } else { EXIT_FAIL })
}
