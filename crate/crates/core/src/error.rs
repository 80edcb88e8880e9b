use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter {letter} out of range for alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: u32, alphabet_size: usize },

    #[error("empty word has no period")]
    EmptyWord,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("phi defined for d ≥ 3, got {0}")]
    PhiTooSmall(usize),

    #[error("morphism has an empty image for letter {0}")]
    ErasingImage(u32),

    #[error("not prolongable at 0")]
    NotProlongable,

    #[error("F_{k} is not a palindrome")]
    ChainNotPalindromic { k: usize },

    #[error("letter {0} is not in the codomain of the weighted morphism")]
    NotInCodomain(u32),

    #[error("{0} is not a palindrome")]
    NotPalindrome(String),

    #[error("{0} is not a factor")]
    NotAFactor(String),

    #[error("untrusted cutoff: {cutoff} exceeds {limit} for a prefix of length {len}")]
    UntrustedCutoff { cutoff: usize, limit: usize, len: usize },

    #[error("factor of length {len} is beyond the index cutoff {cutoff}")]
    BeyondCutoff { len: usize, cutoff: usize },

    #[error("insufficient occurrences: {0} found, 2 required")]
    InsufficientOccurrences(usize),

    #[error("prefix looks periodic (period {0}); the estimate needs an aperiodic sequence")]
    Periodic(usize),

    #[error("no bispecial factor found")]
    NoBispecial,

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    #[error("{family} fails at n = {n}: {detail}")]
    CheckFailed { family: String, n: usize, detail: String },

    #[error("undecided at max precision: {0}")]
    Undecided(String),

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("near-degenerate spectrum: eigenvalues {0} apart")]
    DegenerateSpectrum(String),
}
