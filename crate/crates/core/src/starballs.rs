//! Strictly star-shaped balls around the origin inside a fixed
//! triangulation: recognition, enumeration, and the cone construction.
//!
//! A set of full-dimensional cells forms such a ball when the union of the
//! cells is a full-dimensional ball whose every radial segment from the
//! origin leaves through exactly one boundary point. The recognizer checks
//! four exact conditions:
//!
//! (a) the set is nonempty and ridge-connected;
//! (b) it contains every cell whose closed simplex holds the origin;
//! (c) no boundary facet's affine hull passes through the origin;
//! (d) the cones from the origin over the boundary facets have total volume
//!     equal to the cells' total volume.
//!
//! (d) is the radial bijection certificate: a region that some ray exits
//! and re-enters makes the cone total strictly exceed the region volume,
//! so exact equality rules out any folding.

use crate::complex::{ComplexError, PointConfiguration, Simplex, Triangulation};
use crate::geom::predicates::point_in_simplex;
use crate::geom::{
    affine_hull_equations, affine_hull_membership, barycentric_coords, dot, simplex_volume,
    zero_vec, Rat, RatVec,
};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StarBallError {
    #[error("star-shaped balls require the origin interior to the configuration")]
    OriginNotInterior,
    #[error("configuration has no origin point, cannot build cones at it")]
    NoOriginVertex,
    #[error("cone over facet {0} is degenerate: its affine hull passes through the origin")]
    ConeDegenerate(Simplex),
    #[error("exhaustive subset scan limited to 20 cells, triangulation has {0}")]
    TooManyCellsForExhaustive(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Why a cell set fails to be a strictly star-shaped ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarBallDefect {
    Empty,
    Disconnected,
    MissingStarCell(Simplex),
    BoundaryThroughOrigin(Simplex),
    RadialVolumeMismatch,
}

/// Boundary facets of the cell set: (d−1)-faces lying in exactly one of the
/// chosen cells.
pub fn boundary_facets(t: &Triangulation, cells: &[usize]) -> Vec<Simplex> {
    let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
    for &i in cells {
        for f in t.cells()[i].facets() {
            *counts.entry(f).or_insert(0) += 1;
        }
    }
    counts.into_iter().filter(|(_, k)| *k == 1).map(|(f, _)| f).collect()
}

/// Detailed strictly-star-shaped check; None means the set is a ball.
pub fn star_ball_defect(t: &Triangulation, cells: &[usize]) -> Option<StarBallDefect> {
    if cells.is_empty() {
        return Some(StarBallDefect::Empty);
    }
    let config = t.config();
    let d = config.dim();
    let origin = zero_vec(d);

    // (a) ridge-connectivity.
    let mut by_ridge: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (slot, &i) in cells.iter().enumerate() {
        for f in t.cells()[i].facets() {
            by_ridge.entry(f).or_default().push(slot);
        }
    }
    let mut seen = vec![false; cells.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(slot) = queue.pop_front() {
        for f in t.cells()[cells[slot]].facets() {
            for &other in &by_ridge[&f] {
                if !seen[other] {
                    seen[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Some(StarBallDefect::Disconnected);
    }

    // (b) the full-dimensional star of the origin is forced.
    let chosen: BTreeSet<usize> = cells.iter().copied().collect();
    for (i, cell) in t.cells().iter().enumerate() {
        if point_in_simplex(&origin, &config.coords_of(cell)) && !chosen.contains(&i) {
            return Some(StarBallDefect::MissingStarCell(cell.clone()));
        }
    }

    // (c) no boundary facet through the origin.
    let facets = boundary_facets(t, cells);
    for f in &facets {
        if affine_hull_membership(&origin, &config.coords_of(f)) {
            return Some(StarBallDefect::BoundaryThroughOrigin(f.clone()));
        }
    }

    // (d) radial volume identity.
    let cell_volume: Rat = cells
        .iter()
        .map(|&i| simplex_volume(&config.coords_of(&t.cells()[i])))
        .sum();
    let cone_volume: Rat = facets
        .iter()
        .map(|f| {
            let mut pts = vec![origin.clone()];
            pts.extend(config.coords_of(f));
            simplex_volume(&pts)
        })
        .sum();
    if cone_volume != cell_volume {
        return Some(StarBallDefect::RadialVolumeMismatch);
    }
    None
}

pub fn is_strictly_star_shaped(t: &Triangulation, cells: &[usize]) -> bool {
    star_ball_defect(t, cells).is_none()
}

/// The family of all strictly star-shaped balls of a triangulation,
/// including the empty one, each ball a sorted list of cell indices.
/// Balls are ordered by (size, lexicographic cells), so index 0 is always
/// the empty ball and index 1 the star of the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarBallFamily {
    balls: Vec<Vec<usize>>,
    star: Vec<usize>,
    n_cells: usize,
}

impl StarBallFamily {
    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn ball(&self, i: usize) -> &[usize] {
        &self.balls[i]
    }

    pub fn balls(&self) -> &[Vec<usize>] {
        &self.balls
    }

    pub fn empty_index(&self) -> usize {
        0
    }

    /// Index of the star of the origin, the unique minimal nonempty ball.
    pub fn star_index(&self) -> usize {
        1
    }

    pub fn star_cells(&self) -> &[usize] {
        &self.star
    }

    pub fn index_of(&self, cells: &[usize]) -> Option<usize> {
        self.balls.iter().position(|b| b == cells)
    }

    /// Inclusion of balls by family index.
    pub fn included(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.balls[i], &self.balls[j]);
        a.iter().all(|x| b.binary_search(x).is_ok())
    }

    /// Number of cells of the underlying triangulation.
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
}

/// Enumerate every strictly star-shaped ball by breadth-first growth: start
/// from the star of the origin and repeatedly adjoin one ridge-adjacent
/// cell, keeping exactly the sets the recognizer accepts.
pub fn enumerate_star_balls(t: &Triangulation) -> Result<StarBallFamily, StarBallError> {
    let config = t.config();
    if !config.has_interior_origin() {
        return Err(StarBallError::OriginNotInterior);
    }
    let origin = zero_vec(config.dim());
    let star: Vec<usize> = (0..t.cells().len())
        .filter(|&i| point_in_simplex(&origin, &config.coords_of(&t.cells()[i])))
        .collect();
    assert!(
        is_strictly_star_shaped(t, &star),
        "the star of an interior origin must itself be a ball"
    );

    // Ridge adjacency between cells of t.
    let mut by_ridge: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, cell) in t.cells().iter().enumerate() {
        for f in cell.facets() {
            by_ridge.entry(f).or_default().push(i);
        }
    }
    let neighbors = |ball: &[usize]| -> BTreeSet<usize> {
        let inside: BTreeSet<usize> = ball.iter().copied().collect();
        let mut out = BTreeSet::new();
        for &i in ball {
            for f in t.cells()[i].facets() {
                for &j in &by_ridge[&f] {
                    if !inside.contains(&j) {
                        out.insert(j);
                    }
                }
            }
        }
        out
    };

    let mut accepted: BTreeSet<Vec<usize>> = BTreeSet::new();
    accepted.insert(star.clone());
    let mut queue = VecDeque::from([star.clone()]);
    while let Some(ball) = queue.pop_front() {
        for j in neighbors(&ball) {
            let mut candidate = ball.clone();
            candidate.push(j);
            candidate.sort_unstable();
            if accepted.contains(&candidate) {
                continue;
            }
            if is_strictly_star_shaped(t, &candidate) {
                accepted.insert(candidate.clone());
                queue.push_back(candidate);
            }
        }
    }

    let mut balls: Vec<Vec<usize>> = accepted.into_iter().collect();
    balls.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    balls.insert(0, Vec::new());
    Ok(StarBallFamily { balls, star, n_cells: t.cells().len() })
}

/// Reference enumeration scanning every subset of cells; exponential, for
/// cross-examination of the frontier search on small inputs only.
pub fn enumerate_star_balls_exhaustive(t: &Triangulation) -> Result<StarBallFamily, StarBallError> {
    let config = t.config();
    if !config.has_interior_origin() {
        return Err(StarBallError::OriginNotInterior);
    }
    let n = t.cells().len();
    if n > 20 {
        return Err(StarBallError::TooManyCellsForExhaustive(n));
    }
    let origin = zero_vec(config.dim());
    let star: Vec<usize> = (0..n)
        .filter(|&i| point_in_simplex(&origin, &config.coords_of(&t.cells()[i])))
        .collect();
    let mut balls = Vec::new();
    for mask in 1u32..(1 << n) {
        let cells: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if is_strictly_star_shaped(t, &cells) {
            balls.push(cells);
        }
    }
    balls.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    balls.insert(0, Vec::new());
    Ok(StarBallFamily { balls, star, n_cells: n })
}

/// Cells of the cone from the origin over a family of (d−1)-simplices:
/// each facet joined with the origin vertex. Fails when the configuration
/// has no origin point or a facet's affine hull passes through the origin.
pub fn cone_over(
    config: &PointConfiguration,
    facets: &[Simplex],
) -> Result<Vec<Simplex>, StarBallError> {
    let Some(origin_idx) = config.origin_index() else {
        return Err(StarBallError::NoOriginVertex);
    };
    let origin = zero_vec(config.dim());
    let mut cells = Vec::with_capacity(facets.len());
    for f in facets {
        if affine_hull_membership(&origin, &config.coords_of(f)) {
            return Err(StarBallError::ConeDegenerate(f.clone()));
        }
        cells.push(f.join(&Simplex::new(vec![origin_idx])));
    }
    cells.sort_unstable();
    Ok(cells)
}

/// How many boundary facets of the ball the open ray from the origin in
/// direction `u` crosses transversally through their relative interior;
/// None when the direction is degenerate for this ball (a hit lands on a
/// facet's boundary or the ray runs inside a facet's hull). A strictly
/// star-shaped ball crosses exactly once for every generic direction.
pub fn ray_boundary_crossings(
    t: &Triangulation,
    cells: &[usize],
    u: &RatVec,
) -> Option<usize> {
    let config = t.config();
    let mut crossings = 0;
    for f in boundary_facets(t, cells) {
        let pts = config.coords_of(&f);
        let eqs = affine_hull_equations(&pts);
        debug_assert_eq!(eqs.len(), 1);
        let (normal, offset) = &eqs[0];
        let speed = dot(normal, u);
        if speed.is_zero() {
            if offset.is_zero() {
                return None; // ray inside the facet hyperplane
            }
            continue;
        }
        let tparam = offset / &speed;
        if tparam <= Rat::zero() {
            continue;
        }
        let hit: RatVec = u.iter().map(|c| c * &tparam).collect();
        match barycentric_coords(&hit, &pts) {
            None => continue,
            Some(coords) => {
                if coords.iter().any(|c| c.is_zero()) {
                    return None; // grazing a facet boundary
                }
                if coords.iter().all(|c| *c > Rat::zero()) {
                    crossings += 1;
                }
            }
        }
    }
    Some(crossings)
}
