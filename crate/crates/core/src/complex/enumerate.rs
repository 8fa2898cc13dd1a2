//! Exhaustive enumeration of all triangulations of a small configuration
//! (not only the regular ones), by depth-first completion of compatible
//! cell sets.
//!
//! A generic interior witness point anchors the search: every triangulation
//! contains exactly one cell whose interior holds the witness, so those
//! cells partition the search space at the root. After that, the
//! lexicographically smallest unresolved interior ridge is completed on its
//! other side in every compatible way; each triangulation is reached by
//! exactly one branch sequence (at every step the continuation is the
//! unique cell of the final triangulation across the chosen ridge).

use super::verify::verify_triangulation;
use super::{ComplexError, PointConfiguration, Simplex, Triangulation};
use crate::geom::predicates::{point_in_simplex, simplices_intersect_properly};
use crate::geom::{
    affine_hull_equations, affinely_independent, centroid, dot, rat, ratio, Rat, RatVec,
};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error(
        "configuration too large for brute force ({points} points, dim {dim}); \
         the default guard allows up to {max_points} points and dim {max_dim} — \
         raise the guard explicitly or ingest triangulations from files"
    )]
    GuardExceeded { points: usize, dim: usize, max_points: usize, max_dim: usize },
    #[error("no generic witness point found (tried {0} perturbations)")]
    NoWitness(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationGuard {
    pub max_points: usize,
    pub max_dim: usize,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard { max_points: 10, max_dim: 2 }
    }
}

impl EnumerationGuard {
    /// A guard that admits everything; enumeration cost grows steeply, use
    /// with care.
    pub fn unlimited() -> Self {
        EnumerationGuard { max_points: usize::MAX, max_dim: usize::MAX }
    }
}

/// All triangulations of the configuration, in a deterministic order
/// (sorted by their sorted cell lists).
pub fn brute_force_triangulations(
    config: &Arc<PointConfiguration>,
    guard: EnumerationGuard,
) -> Result<Vec<Triangulation>, EnumerateError> {
    if config.len() > guard.max_points || config.dim() > guard.max_dim {
        return Err(EnumerateError::GuardExceeded {
            points: config.len(),
            dim: config.dim(),
            max_points: guard.max_points,
            max_dim: guard.max_dim,
        });
    }
    let mut search = Search::prepare(config)?;
    let mut found: Vec<Vec<usize>> = Vec::new();
    let roots: Vec<usize> = (0..search.candidates.len())
        .filter(|&i| point_in_simplex(&search.witness, &search.coords[i]))
        .collect();
    for root in roots {
        search.extend(&mut vec![root], &mut found);
    }
    found.sort();
    found.dedup(); // same triangulation cannot appear twice; cheap safety net
    let mut out = Vec::with_capacity(found.len());
    for cells in found {
        let t = Triangulation::new(
            config.clone(),
            cells.iter().map(|&i| search.candidates[i].clone()).collect(),
        )?;
        debug_assert!(verify_triangulation(&t).is_valid());
        out.push(t);
    }
    Ok(out)
}

struct Search {
    candidates: Vec<Simplex>,
    coords: Vec<Vec<RatVec>>,
    volumes: Vec<Rat>,
    hull_volume: Rat,
    /// ridge → candidate cells having it as a facet
    by_ridge: BTreeMap<Simplex, Vec<usize>>,
    /// ridge → lies on the hull boundary?
    ridge_on_hull: BTreeMap<Simplex, bool>,
    witness: RatVec,
    compat: HashMap<(usize, usize), bool>,
}

impl Search {
    fn prepare(config: &Arc<PointConfiguration>) -> Result<Self, EnumerateError> {
        let d = config.dim();
        let n = config.len();
        let mut candidates = Vec::new();
        let mut pick = Vec::new();
        collect_subsets(n, d + 1, 0, &mut pick, &mut candidates);
        candidates.retain(|s: &Simplex| affinely_independent(&config.coords_of(s)));
        let coords: Vec<Vec<RatVec>> = candidates.iter().map(|s| config.coords_of(s)).collect();
        let volumes: Vec<Rat> = coords.iter().map(|c| crate::geom::simplex_volume(c)).collect();

        let mut by_ridge: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        for (i, cell) in candidates.iter().enumerate() {
            for f in cell.facets() {
                by_ridge.entry(f).or_default().push(i);
            }
        }
        let mut ridge_on_hull = BTreeMap::new();
        for ridge in by_ridge.keys() {
            ridge_on_hull.insert(ridge.clone(), ridge_supports_hull(config, ridge));
        }

        let hull_volume = super::placing::placing_reversed(config)?.total_volume();
        let witness = generic_interior_witness(config)?;

        Ok(Search {
            candidates,
            coords,
            volumes,
            hull_volume,
            by_ridge,
            ridge_on_hull,
            witness,
            compat: HashMap::new(),
        })
    }

    fn compatible(&mut self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        if let Some(&v) = self.compat.get(&key) {
            return v;
        }
        let v = simplices_intersect_properly(&self.coords[key.0], &self.coords[key.1]);
        self.compat.insert(key, v);
        v
    }

    /// Smallest ridge occurring exactly once among chosen cells and not on
    /// the hull boundary; None when the cell set is ridge-complete.
    fn open_ridge(&self, chosen: &[usize]) -> Option<Simplex> {
        let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
        for &i in chosen {
            for f in self.candidates[i].facets() {
                *counts.entry(f).or_insert(0) += 1;
            }
        }
        counts
            .into_iter()
            .find(|(ridge, count)| *count == 1 && !self.ridge_on_hull[ridge])
            .map(|(ridge, _)| ridge)
    }

    fn extend(&mut self, chosen: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        match self.open_ridge(chosen) {
            None => {
                // Complete: covering follows from properness + no open
                // interior ridges, but assert the exact volume identity.
                let total: Rat = chosen.iter().map(|&i| self.volumes[i].clone()).sum();
                assert_eq!(
                    total, self.hull_volume,
                    "ridge-complete compatible cell set must cover the hull"
                );
                let mut cells = chosen.clone();
                cells.sort_unstable();
                found.push(cells);
            }
            Some(ridge) => {
                let continuations: Vec<usize> = self.by_ridge[&ridge].clone();
                for cand in continuations {
                    if chosen.contains(&cand) {
                        continue;
                    }
                    if chosen.iter().any(|&c| !self.compatible(c, cand)) {
                        continue;
                    }
                    chosen.push(cand);
                    self.extend(chosen, found);
                    chosen.pop();
                }
            }
        }
    }
}

fn collect_subsets(
    n: usize,
    take: usize,
    start: usize,
    pick: &mut Vec<usize>,
    out: &mut Vec<Simplex>,
) {
    if pick.len() == take {
        out.push(Simplex::new(pick.clone()));
        return;
    }
    for i in start..n {
        pick.push(i);
        collect_subsets(n, take, i + 1, pick, out);
        pick.pop();
    }
}

/// Does the affine hull of the ridge support the whole configuration on one
/// closed side?
fn ridge_supports_hull(config: &Arc<PointConfiguration>, ridge: &Simplex) -> bool {
    let eqs = affine_hull_equations(&config.coords_of(ridge));
    if eqs.len() != 1 {
        return false;
    }
    let (normal, offset) = &eqs[0];
    let mut below = false;
    let mut above = false;
    for p in config.points() {
        let v = dot(normal, p);
        if v < *offset {
            below = true;
        } else if v > *offset {
            above = true;
        }
        if below && above {
            return false;
        }
    }
    true
}

/// An interior point of conv(config) avoiding every hyperplane spanned by
/// configuration points: the centroid nudged by a deterministic perturbation
/// (δ, δ/k, δ/k², …) with k and δ varied until the exact genericity check
/// passes.
fn generic_interior_witness(config: &Arc<PointConfiguration>) -> Result<RatVec, EnumerateError> {
    let d = config.dim();
    let n = config.len();
    // Hyperplane pool: affine hulls of d-subsets spanning dimension d−1.
    let mut hyperplanes: Vec<(RatVec, Rat)> = Vec::new();
    let mut pick = Vec::new();
    let mut subsets = Vec::new();
    collect_subsets(n, d, 0, &mut pick, &mut subsets);
    for s in &subsets {
        let pts = config.coords_of(s);
        if crate::geom::affine_dim(&pts) == d as isize - 1 {
            let eqs = affine_hull_equations(&pts);
            debug_assert_eq!(eqs.len(), 1);
            hyperplanes.push(eqs.into_iter().next().unwrap());
        }
    }
    let center = centroid(config.points());
    let mut tried = 0;
    for k in [2i64, 3, 5, 7, 11, 13] {
        let mut delta = ratio(1, 64);
        for _ in 0..24 {
            tried += 1;
            let mut w = center.clone();
            let mut step = delta.clone();
            for coord in w.iter_mut() {
                *coord += &step;
                step /= rat(k);
            }
            let generic = hyperplanes
                .iter()
                .all(|(normal, offset)| dot(normal, &w) != *offset);
            if generic && super::point_in_convex_hull(&w, config.points()) {
                return Ok(w);
            }
            delta /= rat(2);
        }
    }
    Err(EnumerateError::NoWitness(tried))
}

#[cfg(test)]
mod tests {
    use super::super::generators::{cross, interval};
    use super::*;

    fn cell_sets(t: &Triangulation) -> Vec<Vec<usize>> {
        t.cells().iter().map(|c| c.vertices().to_vec()).collect()
    }

    #[test]
    fn test_enumerate_line_four_points() {
        // {−1,0,1,2}: one triangulation per subset of interior points kept.
        let c = Arc::new(interval(&[-1, 0, 1, 2]));
        let all = brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        let sets: Vec<Vec<Vec<usize>>> = all.iter().map(cell_sets).collect();
        assert_eq!(all.len(), 4);
        assert!(sets.contains(&vec![vec![0, 1], vec![1, 2], vec![2, 3]]));
        assert!(sets.contains(&vec![vec![0, 1], vec![1, 3]]));
        assert!(sets.contains(&vec![vec![0, 2], vec![2, 3]]));
        assert!(sets.contains(&vec![vec![0, 3]]));
    }

    #[test]
    fn test_enumerate_single_triangle() {
        let c = Arc::new(
            PointConfiguration::new(vec![
                crate::geom::rvec(&[0, 0]),
                crate::geom::rvec(&[1, 0]),
                crate::geom::rvec(&[0, 1]),
            ])
            .unwrap(),
        );
        let all = brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(cell_sets(&all[0]), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn test_enumerate_square() {
        // 4 corners: the two diagonals.
        let c = Arc::new(
            PointConfiguration::new(vec![
                crate::geom::rvec(&[0, 0]),
                crate::geom::rvec(&[1, 0]),
                crate::geom::rvec(&[1, 1]),
                crate::geom::rvec(&[0, 1]),
            ])
            .unwrap(),
        );
        let all = brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn test_enumerate_square_with_center() {
        // 4 corners + center: 2 diagonal triangulations + 1 center fan.
        let c = Arc::new(
            PointConfiguration::new(vec![
                crate::geom::rvec(&[-1, -1]),
                crate::geom::rvec(&[1, -1]),
                crate::geom::rvec(&[1, 1]),
                crate::geom::rvec(&[-1, 1]),
                crate::geom::rvec(&[0, 0]),
            ])
            .unwrap(),
        );
        let all = brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        assert_eq!(all.len(), 3);
        let with_center = all
            .iter()
            .filter(|t| t.used_vertices().contains(&4))
            .count();
        assert_eq!(with_center, 1);
    }

    #[test]
    fn test_enumerate_guard() {
        let c = Arc::new(cross(4));
        assert!(matches!(
            brute_force_triangulations(&c, EnumerationGuard::default()),
            Err(EnumerateError::GuardExceeded { .. })
        ));
    }

    #[test]
    fn test_enumerate_cross_polytope_2d() {
        // cross(2): 4 outer vertices + center. Exactly three triangulations:
        // the 4-cell fan through the center, and the two diagonal splits
        // (each leaves the center unused on an interior edge).
        let c = Arc::new(cross(2));
        let all = brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        assert_eq!(all.len(), 3);
        let cell_counts: Vec<usize> = all.iter().map(|t| t.cells().len()).collect();
        assert_eq!(cell_counts.iter().filter(|&&k| k == 4).count(), 1);
        assert_eq!(cell_counts.iter().filter(|&&k| k == 2).count(), 2);
    }

    #[test]
    fn test_all_enumerated_pass_verification() {
        let c = Arc::new(interval(&[-2, -1, 0, 1, 2]));
        for t in brute_force_triangulations(&c, EnumerationGuard::default()).unwrap() {
            assert!(verify_triangulation(&t).is_valid());
        }
    }
}
