//! Exact quaternion skew fields, Clifford and Clifford-like parallelisms on
//! their projective spaces, and the semilinear maps preserving them.
//!
//! Base fields are `Q`, `Q(sqrt m)` and `F2(t,u)`; all arithmetic is exact.

pub mod field;
pub mod geometry;
pub mod linalg;
pub mod norm_search;
pub mod parallelism;
pub mod parse;
pub mod quaternion;
pub mod sample;
pub mod semilinear;

pub use field::{
    F2Poly, F2RatFun, FieldConfig, FieldElem, FieldError, FieldKind, QuadElem, Rational,
};
pub use geometry::{GeometryError, Line, ProjPoint, Side};
pub use norm_search::is_norm_of_k_bounded;
pub use parallelism::{
    conjugacy_witness, conjugate_lines, validate_defining_set, CliffordLikeParallelism,
    DefiningSet, Parallelism, ParallelismError, SeparabilityFlag,
};
pub use parse::{ParseError, Parser};
pub use quaternion::{AlgebraError, Flavor, Quaternion, QuaternionAlgebra};
pub use sample::Sampler;
pub use semilinear::{
    classify, factorize, preservation_verdict, preserves_parallelism, FieldAuto, MapClassification,
    MapError, MapKind, PreservationVerdict, SemilinearMap,
};
