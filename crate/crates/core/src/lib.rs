//! Exact-arithmetic toolkit for triangulations of point configurations and
//! their free sums: construction, verification, decomposition, and counting.

pub mod complex;
pub mod io;
pub mod stabbing;
pub mod starballs;
pub mod sumtri;
pub mod symmetry;
pub mod webs;
pub mod geom;
