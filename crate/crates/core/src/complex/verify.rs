//! The triangulation verifier: pairwise proper intersections, exact volume
//! covering against an independent hull triangulation, and ridge-multiplicity
//! checks.

use super::placing::placing_reversed;
use super::{Simplex, Triangulation};
use crate::geom::predicates::simplices_intersect_properly;
use crate::geom::{affine_hull_equations, dot, Rat};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Pairs of maximal cells whose intersection is not a common face.
    pub improper_pairs: Vec<(Simplex, Simplex)>,
    /// Σ of cell volumes, exactly.
    #[serde(serialize_with = "crate::geom::serde_rat::serialize")]
    pub cell_volume: Rat,
    /// Volume of the convex hull of the configuration, from an
    /// independently built placing triangulation.
    #[serde(serialize_with = "crate::geom::serde_rat::serialize")]
    pub hull_volume: Rat,
    /// Ridges in more than two cells: (ridge, multiplicity).
    pub overcrowded_ridges: Vec<(Simplex, usize)>,
    /// Ridges in exactly one cell that are not on the hull boundary, or in
    /// two cells while lying on the hull boundary.
    pub misplaced_ridges: Vec<(Simplex, usize)>,
}

impl VerificationReport {
    pub fn proper(&self) -> bool {
        self.improper_pairs.is_empty()
    }

    pub fn covers(&self) -> bool {
        self.cell_volume == self.hull_volume
    }

    pub fn ridges_ok(&self) -> bool {
        self.overcrowded_ridges.is_empty() && self.misplaced_ridges.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.proper() && self.covers() && self.ridges_ok()
    }

    /// Hull volume minus covered volume (0 for coverings; positive when
    /// cells are missing).
    pub fn covering_deficit(&self) -> Rat {
        &self.hull_volume - &self.cell_volume
    }
}

/// Full verification: every check is exact.
pub fn verify_triangulation(t: &Triangulation) -> VerificationReport {
    let config = t.config();
    let cells = t.cells();

    // (a) pairwise proper intersections, in parallel
    let pairs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|i| ((i + 1)..cells.len()).map(move |j| (i, j)))
        .collect();
    let mut improper_pairs: Vec<(Simplex, Simplex)> = pairs
        .par_iter()
        .filter(|(i, j)| {
            !simplices_intersect_properly(
                &config.coords_of(&cells[*i]),
                &config.coords_of(&cells[*j]),
            )
        })
        .map(|(i, j)| (cells[*i].clone(), cells[*j].clone()))
        .collect();
    improper_pairs.sort();

    // (b) exact covering: compare against an independently constructed
    // placing triangulation of the full configuration (reversed insertion
    // order, so even verifying a placing output uses a different build).
    let cell_volume = t.total_volume();
    let hull_volume = match placing_reversed(config) {
        Ok(reference) => reference.total_volume(),
        Err(_) => Rat::zero(), // configuration cannot be triangulated at all
    };

    // (c) ridge multiplicities: ≤ 2 everywhere; exactly 1 iff on the hull
    // boundary.
    let mut overcrowded_ridges = Vec::new();
    let mut misplaced_ridges = Vec::new();
    for (ridge, count) in t.ridge_counts() {
        if count > 2 {
            overcrowded_ridges.push((ridge, count));
        } else {
            let on_hull = ridge_on_hull_boundary(t, &ridge);
            if (count == 1) != on_hull {
                misplaced_ridges.push((ridge, count));
            }
        }
    }

    VerificationReport {
        improper_pairs,
        cell_volume,
        hull_volume,
        overcrowded_ridges,
        misplaced_ridges,
    }
}

/// Is the ridge contained in the hull boundary? Its affine hull is a
/// hyperplane; the ridge lies on the boundary iff the whole configuration
/// sits weakly on one side.
fn ridge_on_hull_boundary(t: &Triangulation, ridge: &Simplex) -> bool {
    let pts = t.config().coords_of(ridge);
    let eqs = affine_hull_equations(&pts);
    if eqs.len() != 1 {
        return false; // ridge degenerate for its dimension; cannot support
    }
    let (normal, offset) = &eqs[0];
    let mut saw_below = false;
    let mut saw_above = false;
    for p in t.config().points() {
        let v = dot(normal, p);
        if v < *offset {
            saw_below = true;
        } else if v > *offset {
            saw_above = true;
        }
        if saw_below && saw_above {
            return false;
        }
    }
    true
}
