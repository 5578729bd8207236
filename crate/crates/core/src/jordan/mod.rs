//! Euclidean Jordan algebras (`R^n` and real symmetric matrices), Jordan
//! frames, and matrix-based linear transformations on them.

mod algebra;
mod checks;
mod cone;
mod frame;
mod transform;

pub use algebra::{
    in_cone, in_interior, jordan_product, spectral_decomposition, trace_inner_product, AlgebraSpec, JordanElement,
};
pub use checks::{identity_residuals, IdentityReport};
pub use cone::{
    classify_rank_one_q, cone_image_sample, embed_solve, embed_solve_with, min_image_eigenvalue,
    strict_copositivity_sample, verify_sc_solution, EmbedOutcome, EmbeddedSolution, SampleOutcome,
    ScLcpSolutionCheck, RANK_ONE_TOL, VERIFY_TOL,
};
pub use frame::{bracket, hat_vector, peirce_decompose, random_orthogonal, JordanFrame, PeirceDecomposition, FRAME_TOL};
pub use transform::{
    conjugate_transform, hat_transform, quadratic_representation, r_ab_transform, rank_one, to_real, LinearTransform,
};
