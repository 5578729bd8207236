//! Exact classification of structured matrices by their linear
//! complementarity properties, with a brute-force LCP oracle and
//! symmetric-cone extensions on Euclidean Jordan algebras.

pub mod classifier;
pub mod error;
pub mod generate;
pub mod jordan;
pub mod lcp;
pub mod matrix;
pub mod pattern;
pub mod permutation;
pub mod pivot;
pub mod scalar;
pub mod structure;
pub mod verdict;

pub use classifier::{
    classify, classify_2x2, classify_bdsw_type1, classify_bdsw_type2, classify_bdsw_type3, classify_bdsw_type4,
    classify_triangular, classify_triangular_plus_row, classify_with, ClassifyOptions,
};
pub use error::{Error, Result};
pub use generate::{generate, EntryRange, GenKind, MatrixGenerator};
pub use matrix::{parse_matrix, MatrixFormat, RationalMatrix};
pub use pattern::{sign_pattern, SignPattern};
pub use permutation::{antidiagonal_conjugate, rotate_conjugate, Permutation};
pub use pivot::{ppt, schur_complement, BlockSplit};
pub use scalar::{Scalar, Sign};
pub use structure::{bdsw_determinant, detect_structure, BdswType, StructureClass, StructureNote, StructureTag};
pub use verdict::{Answer, Certificate, ClassVerdict, Rule, Witness};
