use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation {word:?}: {reason}")]
    InvalidPermutation { word: Vec<usize>, reason: String },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("need at least {needed} linear orders, got {got}")]
    TooFewLines { needed: usize, got: usize },

    #[error("ground set must be non-empty")]
    EmptyGroundSet,

    #[error("element {label} is outside the ground set 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("cover relations contain a cycle through element {0}")]
    Cycle(usize),

    #[error("map is not a bijection of 1..={0}")]
    NotBijection(usize),

    #[error("layer index {index} out of range for a poset of rank {rank}")]
    LayerOutOfRange { index: usize, rank: usize },

    #[error("chains of unequal length {0} and {1} cannot be compared")]
    ChainLengthMismatch(usize, usize),

    #[error("shelling construction needs {0}")]
    Precondition(String),

    #[error("facet {0:?} appears more than once")]
    DuplicateFacet(Vec<usize>),

    #[error("facet {inner:?} is contained in facet {outer:?}")]
    NestedFacet {
        inner: Vec<usize>,
        outer: Vec<usize>,
    },

    #[error("brute-force shelling search is capped at {cap} facets, got {got}")]
    TooManyFacets { cap: usize, got: usize },

    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),

    #[error("the void complex has no homology")]
    VoidComplex,

    #[error("field modulus {0} is not prime")]
    NonPrimeModulus(u64),

    #[error("unknown field `{0}` (expected gf<p> or rat)")]
    UnknownField(String),
}
