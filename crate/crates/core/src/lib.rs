//! Exact rational R-matrix presentation of the Yangians of so(M), sp(N) and
//! osp(M|N), with mechanical verification of the identities it satisfies on
//! finite evaluation representations.
//!
//! Everything here is `no_std` + `alloc` and uses exact rational arithmetic
//! only. The `parallel` feature fans sample points out over rayon.

#![cfg_attr(not(feature = "parallel"), no_std)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boundary;
pub mod error;
pub mod family;
pub mod grading;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod rmatrix;
pub mod rtt;
pub mod sampling;

pub use boundary::{check_rsrs, check_s_eq_cb, compare_s_and_cb, reflection_generator, tau, tau_entrywise, twisted_generator, Generator};
pub use error::{Error, Result};
pub use family::{Identity, RationalOperatorFamily};
pub use grading::SuperSpace;
pub use matrix::{super_commutator, GradedMatrix, LinearSpan};
pub use rational::Rational;
pub use report::{CheckReport, IdentityResult, Witness};
pub use rmatrix::{check_crossing, check_crossing_unitarity, check_pk_algebra, check_pk_relations3, check_unitarity, check_ybe, k_op, permutation_op, RMatrix};
pub use rtt::{central_element, check_center, check_centrality, check_modes, check_order1, check_relcomm, check_rtt, order1_algebra, Entries, ModeSeries, MonodromyRep};
pub use sampling::{AffineForm, Grid, PoleBound};
