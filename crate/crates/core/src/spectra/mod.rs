//! Dense state vectors and density matrices, a cyclic Jacobi eigensolver,
//! and the exact combinatorics of the twin-ensemble difference matrix.
//!
//! Every construction whose size grows like `2^{nt}` is bounded by a
//! dimension cap, [`DEFAULT_DIM_CAP`] unless the caller passes another one.
//! Exceeding it is a capability error.

mod census;
mod closed_form;
mod difference;
mod jacobi;
mod matrix;
mod state;
mod threefold;
mod tuples;

pub use census::{census_components, component_census, CensusEntry, Component};
pub use closed_form::{
    binomial, n_closed, ratio_pow2, star_term_exact, t_closed, trace_norm_closed_form, x1_plus_x2, x1_x2_split,
    ClosedFormNorm, ClosedFormParams,
};
pub use difference::{build_difference_matrix, decode_tuple, twin_average_difference};
pub use jacobi::{eigen_symmetric, helstrom_from_trace_norm, helstrom_success, trace_norm, Eigen};
pub use matrix::DensityMatrix;
pub use state::{ensemble_average, function_state, phase_state, StateVector};
pub use threefold::{
    distinct_projector_check, projection_gap_formula, projection_gap_matrix, threefold_ensembles,
    ThreeFoldMethod, ThreeFoldReport,
};
pub use tuples::{compatible, compatible_direct, pair_parity, tuple_stats, PairLookup, TupleStats};

use crate::error::{Error, Result};

pub const DEFAULT_DIM_CAP: usize = 4096;

/// Environment variable overriding the dimension cap.
pub const DIM_CAP_ENV: &str = "QPT_DIM_CAP";

/// `QPT_DIM_CAP` if set and valid, else [`DEFAULT_DIM_CAP`].
pub fn dim_cap_from_env() -> Result<usize> {
    match std::env::var(DIM_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::InvalidParameter(format!("{DIM_CAP_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_DIM_CAP),
    }
}

pub(crate) fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        return Err(Error::Capability(format!("dimension {dim} exceeds the cap {cap}")));
    }
    Ok(())
}
