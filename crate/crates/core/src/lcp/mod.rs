//! Brute-force LCP solving, class membership tests, degree and the Q-oracle.

pub mod classes;
pub mod degree;
pub mod feasibility;
pub mod oracle;
pub mod solve;

pub use classes::{
    is_e, is_e0, is_e0_capped, is_e_capped, is_p, is_p0, is_p0_capped, is_p_capped, is_r0, is_r0_capped, is_rd,
    is_rd_capped, is_rstar, is_rstar_capped, is_s, is_z,
};
pub use degree::{degree, degree_at, degree_capped, DEFAULT_RESAMPLE_BUDGET};
pub use feasibility::{solve_feasibility, FeasibilitySystem, LinearRow};
pub use oracle::{find_unsolvable, q_oracle, q_oracle_capped};
pub use solve::{
    is_lcp_solution, solve_lcp, solve_lcp_capped, EnumCap, LcpInstance, LcpSolution, SupportTable, DEFAULT_ENUM_CAP,
};
