//! Exact certificates for repetition thresholds of palindrome-rich
//! sequences.

pub mod error;
pub mod factors;
pub mod matrix;
pub mod morphism;
pub mod palindromes;
pub mod recurrence;
pub mod spectral;
pub mod word;

pub use error::{Error, Result};
pub use factors::{
    build_index, critical_exponent_estimate, BispecialRecord, ExponentEstimate, Extensions, FactorIndex, ReturnWordSet,
};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use morphism::{
    decode, f_chain, fixed_point_prefix, is_primitive, make_phi, make_weighted_pi, p_ret_witness, parses, Decoding,
    FixedPointPrefix, IncidenceMatrix, Morphism, WeightedMorphism,
};
pub use palindromes::{pext, richness, richness_via_crw, CrwReport, Eertree, RichnessReport};
pub use recurrence::{
    census, closed_form_sweep, f_closed_form, f_vector, hamilton_cayley_check, predicted_bispecials, series,
    series_step, type_one_bound_check, verify_dominance, verify_explicit_bs, verify_weight_inequality, CensusReport,
    ClosedFormKit, Family, Perturbation, SeriesState, Verdict, WeightInequalityReport,
};
pub use spectral::{
    asymptotic_ce, char_poly, eigenvector_check, h_orthogonality, pisot_roots, recurrence_solution_check,
    spectral_decompose, udotv_check, AlgebraicNumber, Interval, PolyInt, QuotientElement,
};
pub use word::{
    border_array, exponent, find_occurrences, is_palindrome, max_factor_exponent, max_factor_exponent_with,
    minimal_period, mirror, parikh, ExponentScan, Letter, MaxRepetition, ParikhVector, Rational, Word,
};
