//! Canonical point-configuration families used throughout the test corpus
//! and the CLI `gen` command.

use super::PointConfiguration;
use crate::geom::{rat, zero_vec, Rat, RatVec};
use num_traits::One;

/// ±e₁, …, ±e_d plus the origin: the cross-polytope configuration.
/// Point order: e₁..e_d, −e₁..−e_d, 0.
pub fn cross(d: usize) -> PointConfiguration {
    assert!(d >= 1);
    let mut points: Vec<RatVec> = Vec::with_capacity(2 * d + 1);
    for i in 0..d {
        let mut v = zero_vec(d);
        v[i] = Rat::one();
        points.push(v);
    }
    for i in 0..d {
        let mut v = zero_vec(d);
        v[i] = -Rat::one();
        points.push(v);
    }
    points.push(zero_vec(d));
    PointConfiguration::new(points).expect("cross-polytope points are valid")
}

/// ±e₁, …, ±e_d, ±(1,…,1) plus the origin.
/// Point order: e₁..e_d, −e₁..−e_d, +𝟙, −𝟙, 0.
pub fn dp(d: usize) -> PointConfiguration {
    assert!(d >= 1);
    let mut points = cross(d).points().to_vec();
    let origin = points.pop().unwrap();
    points.push(vec![Rat::one(); d]);
    points.push(vec![-Rat::one(); d]);
    points.push(origin);
    PointConfiguration::new(points).expect("dp points are valid")
}

/// dp(d) with the all-ones point removed.
/// Point order: e₁..e_d, −e₁..−e_d, −𝟙, 0.
pub fn dp_minus(d: usize) -> PointConfiguration {
    assert!(d >= 1);
    let mut points = cross(d).points().to_vec();
    let origin = points.pop().unwrap();
    points.push(vec![-Rat::one(); d]);
    points.push(origin);
    PointConfiguration::new(points).expect("dp_minus points are valid")
}

/// A one-dimensional configuration from a list of integers, in the given
/// order.
pub fn interval(values: &[i64]) -> PointConfiguration {
    let points: Vec<RatVec> = values.iter().map(|&v| vec![rat(v)]).collect();
    PointConfiguration::new(points).expect("interval points must be distinct and nonzero-spanning")
}
