//! Nanoword encodings of plane curves and fronts, word-pairing invariants,
//! elementary moves and surface genus.

pub mod algebra;
pub mod certify;
pub mod genus;
pub mod invariants;
pub mod moves;
pub mod pairing;
pub mod word;

pub use algebra::{ParamExpr, Rational, RingElem, RingVar};
pub use word::{
    base_curve, parse_word, CurveClass, EtaleWord, Family, Letter, LetterKind, Projection,
};
