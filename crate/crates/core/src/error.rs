use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} occurs twice (position {position})")]
    DuplicateLetter { letter: String, position: usize },

    #[error("letter {letter} at position {position} breaks the increasing order of its alphabet")]
    OrderViolation { letter: String, position: usize },

    #[error("letter {letter} at position {position} is outside the alphabet (m = {m}, n = {n})")]
    IndexOutOfRange { letter: String, position: usize, m: usize, n: usize },

    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("predicted size {predicted} exceeds the cap of {cap}")]
    SizeLimitExceeded { predicted: String, cap: u64 },

    #[error("cover relation contains a cycle")]
    CycleDetected,

    #[error("cover {lower} -> {upper} does not raise the rank by exactly one")]
    NotGraded { lower: usize, upper: usize },

    #[error("cover references element {index} but the poset has {len} elements")]
    InvalidIndex { index: usize, len: usize },

    #[error("label of element {index} occurs more than once")]
    DuplicateLabel { index: usize },

    #[error("elements {lower} and {upper} are not comparable")]
    NotComparable { lower: usize, upper: usize },

    #[error("poset has no unique minimal element")]
    NoBottom,

    #[error("Möbius value overflowed i64 at element {element}")]
    MobiusOverflow { element: usize },

    #[error("series constant term must be 1")]
    NonUnitConstantTerm,

    #[error("evaluation point {point} is excluded (a denominator vanishes)")]
    ExcludedPoint { point: String },
}
