//! Exact Jacobian-ring computations over prime fields: graded pieces,
//! multiplication maps by general forms, and the maximal-variation criteria
//! for hypersurfaces and double covers of projective space built on them.

pub mod cli;
pub mod exactla;
pub mod jacobian;
pub mod lefschetz;
pub mod polyring;
pub mod variation;
