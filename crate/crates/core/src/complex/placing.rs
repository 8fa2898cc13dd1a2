//! Placing triangulations via the beneath-and-beyond incremental hull
//! algorithm, in exact arithmetic.

use super::{ComplexError, PointConfiguration, Simplex, Triangulation};
use crate::geom::{affine_hull_equations, affinely_independent, centroid, dot, Rat, RatVec};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Build the placing triangulation for the given insertion order (a
/// duplicate-free list of point indices; it may omit points).
///
/// Points are inserted one at a time; each new point is joined to every
/// boundary facet it strictly sees. Points inside (or on) the current hull
/// add nothing and end up unused. If the leading points are affinely
/// dependent, the seed simplex is chosen greedily: walk the order and take
/// each point that strictly increases the affine rank; remaining points are
/// then inserted in their original order.
pub fn placing_triangulation(
    config: &Arc<PointConfiguration>,
    order: &[usize],
) -> Result<Triangulation, ComplexError> {
    let d = config.dim();
    let mut seen = vec![false; config.len()];
    for &i in order {
        if i >= config.len() {
            return Err(ComplexError::IndexOutOfRange(i, config.len()));
        }
        if seen[i] {
            return Err(ComplexError::DuplicateOrderIndex(i));
        }
        seen[i] = true;
    }

    // Greedy seed: first d+1 order points that increase affine rank.
    let mut seed: Vec<usize> = Vec::with_capacity(d + 1);
    for &i in order {
        if seed.len() == d + 1 {
            break;
        }
        let mut candidate: Vec<RatVec> = seed.iter().map(|&j| config.point(j).clone()).collect();
        candidate.push(config.point(i).clone());
        if affinely_independent(&candidate) {
            seed.push(i);
        }
    }
    if seed.len() != d + 1 {
        return Err(ComplexError::OrderDoesNotSpan);
    }

    let mut cells: Vec<Simplex> = vec![Simplex::new(seed.clone())];
    // A fixed point interior to the seed cell (hence to every later hull)
    // orients boundary facets consistently.
    let inner = centroid(&config.coords_of(&cells[0]));

    for &i in order {
        if seed.contains(&i) {
            continue;
        }
        let p = config.point(i);
        // Current boundary facets: (d−1)-faces lying in exactly one cell.
        let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
        for cell in &cells {
            for f in cell.facets() {
                *counts.entry(f).or_insert(0) += 1;
            }
        }
        let mut new_cells = Vec::new();
        for (facet, count) in &counts {
            if *count != 1 {
                continue;
            }
            let (normal, offset) = outward_equation(config, facet, &inner);
            // Strictly visible: the new point lies beyond the facet's
            // supporting hyperplane.
            if dot(&normal, p) > offset {
                new_cells.push(facet.join(&Simplex::new(vec![i])));
            }
        }
        cells.extend(new_cells);
    }

    Triangulation::new(config.clone(), cells)
}

/// Supporting hyperplane (n, b) of a boundary facet with n·inner < b, so
/// n·x > b means "outside".
fn outward_equation(
    config: &Arc<PointConfiguration>,
    facet: &Simplex,
    inner: &[Rat],
) -> (RatVec, Rat) {
    let pts = config.coords_of(facet);
    let eqs = affine_hull_equations(&pts);
    debug_assert_eq!(eqs.len(), 1, "hull facet must span a hyperplane");
    let (mut normal, mut offset) = eqs.into_iter().next().unwrap();
    let side = dot(&normal, inner);
    debug_assert!(side != offset, "interior reference on a facet hyperplane");
    if side > offset {
        for c in &mut normal {
            *c = -c.clone();
        }
        offset = -offset;
    }
    (normal, offset)
}

/// The placing triangulation over all indices in configuration order.
pub fn placing_default(config: &Arc<PointConfiguration>) -> Result<Triangulation, ComplexError> {
    let order: Vec<usize> = (0..config.len()).collect();
    placing_triangulation(config, &order)
}

/// The placing triangulation over all indices in reversed order; used as an
/// independent volume oracle by the verifier.
pub fn placing_reversed(config: &Arc<PointConfiguration>) -> Result<Triangulation, ComplexError> {
    let order: Vec<usize> = (0..config.len()).rev().collect();
    placing_triangulation(config, &order)
}

#[cfg(test)]
mod tests {
    use super::super::generators::interval;
    use super::*;
    use crate::geom::{rat, rvec};

    fn pc(rows: &[&[i64]]) -> Arc<PointConfiguration> {
        Arc::new(PointConfiguration::new(rows.iter().map(|r| rvec(r)).collect()).unwrap())
    }

    fn cell_sets(t: &Triangulation) -> Vec<Vec<usize>> {
        t.cells().iter().map(|c| c.vertices().to_vec()).collect()
    }

    #[test]
    fn test_placing_line() {
        let c = Arc::new(interval(&[-1, 0, 1, 2]));
        let t = placing_triangulation(&c, &[0, 1, 2, 3]).unwrap();
        assert_eq!(cell_sets(&t), vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn test_placing_line_scrambled_order() {
        // Insert the middle points last: they fall inside and are unused.
        let c = Arc::new(interval(&[-1, 0, 1, 2]));
        let t = placing_triangulation(&c, &[0, 3, 1, 2]).unwrap();
        assert_eq!(cell_sets(&t), vec![vec![0, 3]]);
    }

    #[test]
    fn test_placing_square_center_last() {
        // Center added last is beneath every facet: result is 2 triangles
        // and the center point goes unused.
        let c = pc(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1]]);
        let t = placing_triangulation(&c, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(t.cells().len(), 2);
        assert!(!t.used_vertices().contains(&4));
        assert_eq!(t.total_volume(), rat(4));
    }

    #[test]
    fn test_placing_single_simplex() {
        let c = pc(&[&[0, 0], &[1, 0], &[0, 1]]);
        let t = placing_triangulation(&c, &[0, 1, 2]).unwrap();
        assert_eq!(cell_sets(&t), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn test_placing_degenerate_prefix_reorders() {
        // First three points collinear: seed must skip to the spanning one.
        let c = pc(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]);
        let t = placing_triangulation(&c, &[0, 1, 2, 3]).unwrap();
        // Seed = {0,1,3}; then 2 is beyond facet {1,3}.
        assert_eq!(cell_sets(&t), vec![vec![0, 1, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn test_placing_requires_span() {
        let c = pc(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]);
        assert!(matches!(
            placing_triangulation(&c, &[0, 1, 2]),
            Err(ComplexError::OrderDoesNotSpan)
        ));
        assert!(matches!(
            placing_triangulation(&c, &[0, 1, 1]),
            Err(ComplexError::DuplicateOrderIndex(1))
        ));
    }

    #[test]
    fn test_placing_collinear_extension() {
        // A point collinear with an existing hull edge: the edge's facet is
        // not strictly visible, neighbors cover the wedge.
        let c = pc(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0]]);
        let t = placing_triangulation(&c, &[0, 1, 2, 3]).unwrap();
        assert_eq!(cell_sets(&t), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(t.total_volume(), rat(1));
    }
}
