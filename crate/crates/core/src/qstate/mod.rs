//! Measurement statistics of function states, phase states and subset
//! states. Nothing here tracks amplitudes: every primitive computes the exact
//! outcome law from truth tables and samples it.

mod ledger;
mod rng;
mod sampling;
mod subset;
mod transform;

pub use ledger::CopyLedger;
pub use rng::{stream_id, RngStream};
pub use sampling::{
    classical_histogram, fourier_sample, sample_classical, symmetric_accept_probability,
    symmetric_subspace_measure, FourierSampler,
};
pub use subset::{
    all_blocks_succeed, estimate_joint_membership, estimate_overlap, joint_attempts,
    joint_copy_count, joint_membership_with_counts, joint_swap_count, overlap_from_swap_tests, overlap_test_count,
    postselect_copies, postselect_subset, swap_accept_probability, swap_test, JointEstimate,
    JointMembership, SubsetState,
};
pub use transform::{ip_transform, shift_by_index, shift_function};

pub(crate) use subset::check_unit;
