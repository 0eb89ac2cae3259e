//! Simultaneous reduction of code-trellises and error-trellises for binary
//! convolutional codes.
//!
//! A generator matrix `G(D)` and parity-check matrix `H(D)` are rescaled
//! column by column with powers of `D` so that both overall constraint
//! lengths drop while the code and error subsequences stay aligned. The
//! crate builds both trellises before and after the rescaling and checks
//! that they describe the same (shifted) paths.

pub mod block;
pub mod error;
pub mod gf2poly;
pub mod oracle;
pub mod sequences;
pub mod transform;
pub mod trellis;

pub use block::BlockSequence;
pub use error::{Error, Result, Side};
pub use gf2poly::{check_gh_relation, GhPair, Poly, PolyMatrix};
pub use oracle::{assert_equal_path_sets, brute_codewords, brute_errors, EquivalenceReport, OracleConfig};
pub use sequences::{
    boundary_masks, reconstruct_code_paths, shift_code, shift_received, shifted_horizon, syndrome,
    unshift_received, verify_simultaneous_reduction, BoundaryMasks, MaskSide, PathSetComparison, ShiftedFrame,
    VerificationReport,
};
pub use transform::{
    apply_plan, reduce_rows_equivalent, search_plans, simultaneous_reduce, suggest_backward_shift,
    ColumnShift, PlanSearch, ReductionReport, ShiftPlan,
};
pub use trellis::{
    build_code_trellis, build_code_trellis_masked, build_error_trellis, build_error_trellis_masked,
    default_error_masks, enumerate_paths, min_weight_path, state_space_dimension, Branch, Trellis,
    TrellisKind,
};
