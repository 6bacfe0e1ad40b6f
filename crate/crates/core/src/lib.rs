//! Curvature criteria for piecewise-Euclidean flag 2-complexes, metric search,
//! integral homology and the group theory of right-angled Artin kernels.
// `!(x > y)` is how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod complex;
pub mod homology;
pub mod metric;
pub mod raag;
pub mod search;
pub mod weighted;
