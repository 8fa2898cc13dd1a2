//! The stabbing order on full-dimensional cells of a triangulation whose
//! configuration has the origin as an interior point.
//!
//! Cell σ strictly precedes τ when every hyperplane weakly separating the
//! two keeps σ on the same closed side as the origin, and at least one
//! separating hyperplane misses the origin. Intuitively: any ray from the
//! origin that passes through both cells meets σ first.
//!
//! Two independent decision routes are kept deliberately:
//!
//! * [`cell_precedes`] — a six-step exact geometric test (origin membership,
//!   shared-face affine hull, cone stabbing, segment classification). This
//!   is the production path.
//! * [`cell_precedes_lp`] — three feasibility problems (a separator
//!   missing the origin must exist, its mirrored violator must not, and
//!   the cone over σ must reach τ). Used to cross-examine the tree on
//!   randomized inputs; never a substitute.

use crate::complex::{Simplex, Triangulation};
use crate::geom::lp::{lp_feasible, Constraint, Feasibility};
use crate::geom::predicates::{
    point_in_simplex, relative_interior_point, segment_simplex_intersection, SegmentMeet,
};
use crate::geom::{affine_hull_membership, rat, zero_vec, Rat};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StabbingError {
    #[error("stabbing order requires the origin interior to the configuration")]
    OriginNotInterior,
    #[error("antisymmetry violated: cells {0} and {1} precede each other")]
    Antisymmetry(Simplex, Simplex),
    #[error("transitivity violated: {0} precedes {1} precedes {2}, but {0} does not precede {2}")]
    Transitivity(Simplex, Simplex, Simplex),
    #[error(
        "minimal cells are not exactly the full-dimensional star of the origin \
         (minimal: {minimal:?}, star: {star:?})"
    )]
    MinimalNotStar { minimal: Vec<Simplex>, star: Vec<Simplex> },
}

/// Strict stabbing comparison of two full-dimensional cells, by the exact
/// geometric decision tree.
pub fn cell_precedes(t: &Triangulation, s: &Simplex, u: &Simplex) -> bool {
    if s == u {
        return false;
    }
    let config = t.config();
    let origin = zero_vec(config.dim());
    let sp = config.coords_of(s);
    let up = config.coords_of(u);

    // 1. Nothing strictly follows a cell containing the origin: a
    //    separating hyperplane would have the origin weakly on the far
    //    side, never strictly beyond it.
    if point_in_simplex(&origin, &up) {
        return false;
    }
    // 2. Every separating hyperplane contains the common face; if its
    //    affine hull meets the origin, no separator can miss the origin.
    let shared = s.meet(u);
    if !shared.is_empty() && affine_hull_membership(&origin, &config.coords_of(&shared)) {
        return false;
    }
    // 3. A ray from the origin must pass through s and then u: the cone
    //    over s must reach u at all.
    let Some(r) = relative_interior_point(&sp, &up) else {
        return false;
    };
    // 4–6. Classify how the segment from the origin to the stabbed point
    //      meets s. Meeting in a segment, or in a single point short of r,
    //      certifies that s is pierced strictly first; missing s entirely,
    //      or touching it only at r itself, refutes it.
    match segment_simplex_intersection(&origin, &r, &sp) {
        SegmentMeet::Empty => false,
        SegmentMeet::Segment(_, _) => true,
        SegmentMeet::Point(x) => x != r,
    }
}

/// Strict stabbing comparison by pure feasibility problems: s precedes u
/// iff
///
/// 1. some functional a has a·x ≤ 1 on s and a·y ≥ 1 on u — a separator
///    missing the origin with the origin on s's side;
/// 2. no functional has a·x ≤ −1 on s and a·y ≥ −1 on u — no separator
///    leaves the origin strictly on u's side (orientation-symmetric:
///    a reversed-orientation violator is (−a, +1) here); and
/// 3. the cone over s reaches u — some nonnegative combination of s's
///    vertices equals a convex combination of u's vertices.
///
/// Condition 3 is implied by 1 ∧ 2 whenever the origin is outside s (a
/// separator family with the origin weakly on s's side forces a common
/// ray), but it is decisive when the origin lies in s: there conditions
/// 1–2 are vacuously generous, yet no ray through s's relative interior
/// ever reaches a cell behind the origin.
pub fn cell_precedes_lp(t: &Triangulation, s: &Simplex, u: &Simplex) -> bool {
    if s == u {
        return false;
    }
    separator_exists(t, s, u, rat(1))
        && !separator_exists(t, s, u, rat(-1))
        && cone_reaches(t, s, u)
}

fn separator_exists(t: &Triangulation, s: &Simplex, u: &Simplex, level: Rat) -> bool {
    let config = t.config();
    let d = config.dim();
    let mut constraints = Vec::new();
    for &i in s.vertices() {
        constraints.push(Constraint::le(config.point(i).clone(), level.clone()));
    }
    for &j in u.vertices() {
        constraints.push(Constraint::ge(config.point(j).clone(), level.clone()));
    }
    matches!(lp_feasible(d, &constraints), Feasibility::Feasible(_))
}

/// Does cone(s) meet u? Feasibility of Σᵢ λᵢ sᵢ = Σⱼ νⱼ uⱼ with λ ≥ 0,
/// ν ≥ 0, Σ ν = 1 in the variables (λ, ν).
fn cone_reaches(t: &Triangulation, s: &Simplex, u: &Simplex) -> bool {
    let config = t.config();
    let d = config.dim();
    let k = s.vertices().len();
    let m = u.vertices().len();
    let nv = k + m;
    let mut constraints = Vec::new();
    for row in 0..d {
        let mut coeffs = vec![rat(0); nv];
        for (col, &i) in s.vertices().iter().enumerate() {
            coeffs[col] = config.point(i)[row].clone();
        }
        for (col, &j) in u.vertices().iter().enumerate() {
            coeffs[k + col] = -config.point(j)[row].clone();
        }
        constraints.push(Constraint::eq(coeffs, rat(0)));
    }
    let mut sum_nu = vec![rat(0); nv];
    for col in 0..m {
        sum_nu[k + col] = rat(1);
    }
    constraints.push(Constraint::eq(sum_nu, rat(1)));
    for var in 0..nv {
        let mut coeffs = vec![rat(0); nv];
        coeffs[var] = rat(1);
        constraints.push(Constraint::ge(coeffs, rat(0)));
    }
    matches!(lp_feasible(nv, &constraints), Feasibility::Feasible(_))
}

/// Reflexive stabbing comparison.
pub fn cell_precedes_eq(t: &Triangulation, s: &Simplex, u: &Simplex) -> bool {
    s == u || cell_precedes(t, s, u)
}

/// The stabbing order of all full-dimensional cells, with its poset
/// structure validated on construction: antisymmetry and transitivity are
/// checked pair-by-pair (violations are hard errors naming witnesses), and
/// the minimal elements must be exactly the cells containing the origin.
#[derive(Debug, Clone)]
pub struct StabbingPoset {
    cells: Vec<Simplex>,
    /// lt[i][j] ⟺ cells[i] strictly precedes cells[j].
    lt: Vec<Vec<bool>>,
    minimal: Vec<usize>,
    hasse: Vec<(usize, usize)>,
}

pub fn stabbing_poset(t: &Triangulation) -> Result<StabbingPoset, StabbingError> {
    let config = t.config();
    if !config.has_interior_origin() {
        return Err(StabbingError::OriginNotInterior);
    }
    let cells: Vec<Simplex> = t.cells().to_vec();
    let n = cells.len();

    let lt: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| cell_precedes(t, &cells[i], &cells[j])).collect())
        .collect();

    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && lt[j][i] {
                return Err(StabbingError::Antisymmetry(cells[i].clone(), cells[j].clone()));
            }
            if !lt[i][j] {
                continue;
            }
            for k in 0..n {
                if lt[j][k] && !lt[i][k] && i != k {
                    return Err(StabbingError::Transitivity(
                        cells[i].clone(),
                        cells[j].clone(),
                        cells[k].clone(),
                    ));
                }
            }
        }
    }

    let minimal: Vec<usize> = (0..n).filter(|&j| (0..n).all(|i| !lt[i][j])).collect();
    let origin = zero_vec(config.dim());
    let star_cells: Vec<Simplex> = cells
        .iter()
        .filter(|c| point_in_simplex(&origin, &config.coords_of(c)))
        .cloned()
        .collect();
    let minimal_cells: Vec<Simplex> = minimal.iter().map(|&i| cells[i].clone()).collect();
    if minimal_cells != star_cells {
        return Err(StabbingError::MinimalNotStar { minimal: minimal_cells, star: star_cells });
    }

    let mut hasse = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && !(0..n).any(|k| lt[i][k] && lt[k][j]) {
                hasse.push((i, j));
            }
        }
    }

    Ok(StabbingPoset { cells, lt, minimal, hasse })
}

impl StabbingPoset {
    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, cell: &Simplex) -> Option<usize> {
        self.cells.iter().position(|c| c == cell)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt[i][j]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt[i][j]
    }

    /// Indices of the minimal cells (always exactly the star of the
    /// origin).
    pub fn minimal_elements(&self) -> &[usize] {
        &self.minimal
    }

    /// Covering pairs (i, j): i strictly precedes j with nothing between.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// A deterministic linear extension: repeatedly emit the
    /// smallest-index cell all of whose strict predecessors were emitted.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.cells.len();
        let mut emitted = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&j| {
                    !emitted[j] && (0..n).all(|i| !self.lt[i][j] || emitted[i])
                })
                .expect("validated poset always has an emittable element");
            emitted[next] = true;
            out.push(next);
        }
        out
    }

    /// Strict predecessors of j.
    pub fn predecessors(&self, j: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.lt[i][j]).collect()
    }
}
