//! Exact second fundamental forms, secant invariants and Clifford modules of
//! secant-defective projective varieties.
//!
//! The pipeline runs from a polynomial [`varieties::Chart`] through
//! [`sff::second_fundamental_form`] and [`secantgeom::key_identity_check`] to
//! [`clifford::build_clifford_module`]. All arithmetic is exact over Q(i).

pub mod clifford;
pub mod exactla;
pub mod poly;
pub mod sampling;
pub mod secantgeom;
pub mod sff;
pub mod varieties;
