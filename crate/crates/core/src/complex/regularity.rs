//! Regularity testing: does a height function induce the triangulation?
//!
//! Encoded as one exact LP over heights for every configuration point plus a
//! uniform fold gap g, maximized subject to g ≤ 1. The triangulation is
//! regular iff the optimum is strictly positive.

use super::{Simplex, Triangulation};
use crate::geom::lp::{maximize, Constraint, LpResult};
use crate::geom::predicates::point_in_simplex;
use crate::geom::{barycentric_coords, zero_vec, Rat, RatVec};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct RegularityCertificate {
    /// Height per configuration point (meaningful when regular).
    pub heights: RatVec,
    /// The maximized uniform fold gap.
    pub gap: Rat,
}

/// Decide regularity; on success the certificate's heights induce the
/// triangulation with every interior fold strictly convex.
///
/// Constraints, with h the height vector and g the gap:
///  - for every interior ridge R shared by cells S = R∪{u}, T = R∪{w}:
///    the lift of w stays above the affine extension of the lift of S by at
///    least g (w = Σ γ_v v affinely over v ∈ S, so h_w − Σ γ_v h_v ≥ g);
///  - every unused point p lies strictly above the lifted surface: for each
///    cell S containing p with barycentric weights λ, h_p − Σ λ_v h_v ≥ g.
pub fn is_regular(t: &Triangulation) -> (bool, RegularityCertificate) {
    let config = t.config();
    let n = config.len();
    let nv = n + 1; // heights + gap
    let mut cons: Vec<Constraint> = Vec::new();

    for (ridge, count) in t.ridge_counts() {
        if count != 2 {
            continue;
        }
        let sharing: Vec<&Simplex> = t
            .cells()
            .iter()
            .filter(|c| ridge.is_face_of(c))
            .collect();
        debug_assert_eq!(sharing.len(), 2);
        let s = sharing[0];
        let w = *sharing[1]
            .vertices()
            .iter()
            .find(|v| !ridge.contains_vertex(**v))
            .unwrap();
        // w as an affine combination of the vertices of s (s spans).
        let gamma = barycentric_affine(config.point(w), &config.coords_of(s));
        let mut row = zero_vec(nv);
        row[w] = Rat::one();
        for (v, coef) in s.vertices().iter().zip(&gamma) {
            row[*v] -= coef;
        }
        row[n] = -Rat::one();
        cons.push(Constraint::ge(row, Rat::zero()));
    }

    let used = t.used_vertices();
    for p in 0..n {
        if used.binary_search(&p).is_ok() {
            continue;
        }
        let point = config.point(p);
        for cell in t.cells() {
            let coords = config.coords_of(cell);
            if !point_in_simplex(point, &coords) {
                continue;
            }
            let lambda = barycentric_coords(point, &coords)
                .expect("membership implies coordinates");
            let mut row = zero_vec(nv);
            row[p] = Rat::one();
            for (v, coef) in cell.vertices().iter().zip(&lambda) {
                row[*v] -= coef;
            }
            row[n] = -Rat::one();
            cons.push(Constraint::ge(row, Rat::zero()));
        }
    }

    let mut g_row = zero_vec(nv);
    g_row[n] = Rat::one();
    cons.push(Constraint::le(g_row, Rat::one()));
    let mut objective = zero_vec(nv);
    objective[n] = Rat::one();

    match maximize(nv, &objective, &cons) {
        LpResult::Optimal { value, point } => {
            let heights = point[..n].to_vec();
            let regular = value.is_positive();
            (regular, RegularityCertificate { heights, gap: value })
        }
        _ => unreachable!("the gap LP is feasible (h = 0, g = min slack) and capped"),
    }
}

/// Coefficients expressing p as an affine combination of the affinely
/// independent, spanning vertex list `verts` (barycentric coordinates
/// without the nonnegativity requirement).
fn barycentric_affine(p: &[Rat], verts: &[RatVec]) -> RatVec {
    // Solve Σ γᵢ vᵢ = p, Σ γᵢ = 1 exactly.
    let d = p.len();
    let k = verts.len();
    let mut matrix: Vec<RatVec> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        let row: RatVec = verts.iter().map(|v| v[coord].clone()).collect();
        matrix.push(row);
    }
    matrix.push(vec![Rat::one(); k]);
    let mut rhs = p.to_vec();
    rhs.push(Rat::one());
    crate::geom::solve_linear(&matrix, &rhs)
        .expect("cell vertices affinely span the ambient space")
}
