//! Geometric predicates built on exact rational arithmetic and the LP
//! kernel: simplex membership, segment/simplex meets, cone queries, relative
//! interior points, and proper-intersection tests.

use super::lp::{feasible_point, maximize, Constraint, LpResult};
use super::{
    barycentric_coords, dot, rat, vadd, vscale, vsub, zero_vec, Rat, RatVec,
};
use num_traits::{One, Signed, Zero};

/// Is `p` in the (closed) simplex spanned by `verts`?
/// The vertex set must be affinely independent.
pub fn point_in_simplex(p: &[Rat], verts: &[RatVec]) -> bool {
    match barycentric_coords(p, verts) {
        Some(coords) => coords.iter().all(|c| !c.is_negative()),
        None => false,
    }
}

/// Indices of the minimal face of the simplex `verts` containing `p`: the
/// vertices with strictly positive barycentric coordinate. `None` if `p` is
/// outside the simplex.
pub fn minimal_face_support(p: &[Rat], verts: &[RatVec]) -> Option<Vec<usize>> {
    let coords = barycentric_coords(p, verts)?;
    if coords.iter().any(|c| c.is_negative()) {
        return None;
    }
    Some(
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_positive())
            .map(|(i, _)| i)
            .collect(),
    )
}

/// How the closed segment [a, b] meets the simplex spanned by `verts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentMeet {
    Empty,
    /// A single point, returned explicitly.
    Point(RatVec),
    /// A nondegenerate segment, returned by its endpoints.
    Segment(RatVec, RatVec),
}

impl SegmentMeet {
    pub fn dim(&self) -> isize {
        match self {
            SegmentMeet::Empty => -1,
            SegmentMeet::Point(_) => 0,
            SegmentMeet::Segment(..) => 1,
        }
    }
}

/// Exact intersection of the segment from `a` to `b` with the simplex on
/// `verts`. The meet of a segment with a convex set is empty, a point, or a
/// subsegment; we find the t-interval {t ∈ [0,1] : a + t(b−a) ∈ simplex} by
/// minimizing and maximizing t over the joint system in (t, μ).
pub fn segment_simplex_intersection(a: &[Rat], b: &[Rat], verts: &[RatVec]) -> SegmentMeet {
    let d = a.len();
    assert_eq!(b.len(), d);
    assert!(verts.iter().all(|v| v.len() == d));
    let k = verts.len();
    // Variables: t, μ₁..μ_k. Constraints:
    //   a + t(b−a) = Σ μᵢ vᵢ   (d equalities)
    //   Σ μᵢ = 1, μ ≥ 0, 0 ≤ t ≤ 1.
    let nv = 1 + k;
    let dir = vsub(b, a);
    let mut cons = Vec::new();
    for coord in 0..d {
        let mut row = zero_vec(nv);
        row[0] = dir[coord].clone();
        for (i, v) in verts.iter().enumerate() {
            row[1 + i] = -v[coord].clone();
        }
        cons.push(Constraint::eq(row, -a[coord].clone()));
    }
    let mut sum_row = zero_vec(nv);
    for item in sum_row.iter_mut().skip(1) {
        *item = Rat::one();
    }
    cons.push(Constraint::eq(sum_row, Rat::one()));
    for i in 0..k {
        let mut row = zero_vec(nv);
        row[1 + i] = Rat::one();
        cons.push(Constraint::ge(row, Rat::zero()));
    }
    let mut t_row = zero_vec(nv);
    t_row[0] = Rat::one();
    cons.push(Constraint::ge(t_row.clone(), Rat::zero()));
    cons.push(Constraint::le(t_row, Rat::one()));

    let mut objective = zero_vec(nv);
    objective[0] = Rat::one();
    let t_max = match maximize(nv, &objective, &cons) {
        LpResult::Optimal { value, .. } => value,
        LpResult::Infeasible => return SegmentMeet::Empty,
        LpResult::Unbounded => unreachable!("t is bounded by [0,1]"),
    };
    objective[0] = -Rat::one();
    let t_min = match maximize(nv, &objective, &cons) {
        LpResult::Optimal { value, .. } => -value,
        _ => unreachable!("feasibility already established"),
    };
    let at = |t: &Rat| vadd(a, &vscale(t, &vsub(b, a)));
    if t_min == t_max {
        SegmentMeet::Point(at(&t_min))
    } else {
        SegmentMeet::Segment(at(&t_min), at(&t_max))
    }
}

/// Dimension (−1, 0, or 1) of the meet of segment [a, b] with the simplex.
pub fn segment_face_intersection_dim(a: &[Rat], b: &[Rat], verts: &[RatVec]) -> isize {
    segment_simplex_intersection(a, b, verts).dim()
}

/// Does the cone {Σ λᵢ gᵢ : λ ≥ 0} over `gens` meet the simplex on `verts`?
pub fn cone_intersects_simplex(gens: &[RatVec], verts: &[RatVec]) -> bool {
    cone_simplex_system(gens, verts)
        .map(|(nv, cons)| feasible_point(nv, &cons).is_some())
        .unwrap_or(false)
}

/// Shared constraint system for cone ∩ simplex queries.
/// Variables: λ₁..λ_g (cone weights), μ₁..μ_k (simplex weights).
/// Returns `None` when either generator list is empty (empty meet).
fn cone_simplex_system(
    gens: &[RatVec],
    verts: &[RatVec],
) -> Option<(usize, Vec<Constraint>)> {
    if gens.is_empty() || verts.is_empty() {
        return None;
    }
    let d = gens[0].len();
    assert!(gens.iter().all(|g| g.len() == d));
    assert!(verts.iter().all(|v| v.len() == d));
    let (g, k) = (gens.len(), verts.len());
    let nv = g + k;
    let mut cons = Vec::new();
    // Σ λᵢ gᵢ − Σ μⱼ vⱼ = 0 per coordinate.
    for coord in 0..d {
        let mut row = zero_vec(nv);
        for (i, gen) in gens.iter().enumerate() {
            row[i] = gen[coord].clone();
        }
        for (j, v) in verts.iter().enumerate() {
            row[g + j] = -v[coord].clone();
        }
        cons.push(Constraint::eq(row, Rat::zero()));
    }
    // Σ μⱼ = 1.
    let mut sum_row = zero_vec(nv);
    for item in sum_row.iter_mut().skip(g) {
        *item = Rat::one();
    }
    cons.push(Constraint::eq(sum_row, Rat::one()));
    // Nonnegativity.
    for i in 0..nv {
        let mut row = zero_vec(nv);
        row[i] = Rat::one();
        cons.push(Constraint::ge(row, Rat::zero()));
    }
    Some((nv, cons))
}

/// A point in the relative interior of cone(gens) ∩ simplex(verts), or
/// `None` when the meet is empty.
///
/// The meet is the image of the polyhedron
///   F = {(λ, μ) ≥ 0 : Σ λg = Σ μv, Σ μ = 1}
/// under (λ, μ) ↦ Σ μⱼ vⱼ, and the image of a relative-interior point of F
/// lies in the relative interior of the image. In F we find such a point by
/// first detecting the implied-zero coordinates (those that cannot be made
/// positive) and then pushing all remaining coordinates uniformly away from
/// zero.
pub fn relative_interior_point(gens: &[RatVec], verts: &[RatVec]) -> Option<RatVec> {
    let (nv, cons) = cone_simplex_system(gens, verts)?;
    feasible_point(nv, &cons)?;
    let g = gens.len();

    // A coordinate is implied zero iff its maximum over F is 0. (Unbounded
    // or positive maximum means some feasible point has it positive.)
    let mut implied_zero = vec![false; nv];
    for i in 0..nv {
        let mut objective = zero_vec(nv);
        objective[i] = Rat::one();
        implied_zero[i] = match maximize(nv, &objective, &cons) {
            LpResult::Optimal { value, .. } => value.is_zero(),
            LpResult::Unbounded => false,
            LpResult::Infeasible => unreachable!("system already known feasible"),
        };
    }

    // Maximize a uniform margin t ≤ 1 with zᵢ ≥ t on every coordinate that
    // is not implied zero; by convexity the optimum has all of them > 0.
    let nv2 = nv + 1;
    let mut cons2: Vec<Constraint> = cons
        .iter()
        .map(|c| {
            let mut row = c.coeffs.clone();
            row.push(Rat::zero());
            Constraint { coeffs: row, op: c.op, rhs: c.rhs.clone() }
        })
        .collect();
    for i in 0..nv {
        if !implied_zero[i] {
            let mut row = zero_vec(nv2);
            row[i] = Rat::one();
            row[nv] = -Rat::one();
            cons2.push(Constraint::ge(row, Rat::zero()));
        }
    }
    let mut t_row = zero_vec(nv2);
    t_row[nv] = Rat::one();
    cons2.push(Constraint::le(t_row, Rat::one()));
    let mut objective = zero_vec(nv2);
    objective[nv] = Rat::one();
    let point = match maximize(nv2, &objective, &cons2) {
        LpResult::Optimal { value, point } => {
            assert!(
                value.is_positive() || implied_zero.iter().all(|&z| z),
                "margin should be positive when any coordinate can move"
            );
            point
        }
        _ => unreachable!("bounded and feasible by construction"),
    };
    let mu = &point[g..nv];
    let d = verts[0].len();
    let mut x = zero_vec(d);
    for (j, v) in verts.iter().enumerate() {
        x = vadd(&x, &vscale(&mu[j], v));
    }
    Some(x)
}

/// Do two simplices intersect *properly*, i.e. in a (possibly empty) common
/// face of both?
///
/// For simplices of a point configuration with all vertices distinct, the
/// candidate common face is spanned by the shared vertices C = A ∩ B. The
/// intersection is proper iff some affine functional is: equal to its bound
/// on C, strictly below on A∖C, and strictly above on B∖C. We maximize the
/// separation margin; properness is margin > 0. Simplices sharing all
/// vertices are equal, which is proper.
pub fn simplices_intersect_properly(averts: &[RatVec], bverts: &[RatVec]) -> bool {
    let d = averts[0].len();
    let shared: Vec<&RatVec> = averts.iter().filter(|v| bverts.contains(v)).collect();
    let a_only: Vec<&RatVec> = averts.iter().filter(|v| !bverts.contains(v)).collect();
    let b_only: Vec<&RatVec> = bverts.iter().filter(|v| !averts.contains(v)).collect();
    if a_only.is_empty() && b_only.is_empty() {
        return true;
    }
    // Variables: a₁..a_d (functional), b (offset), t (margin).
    let nv = d + 2;
    let mut cons = Vec::new();
    let row_for = |v: &RatVec, t_coeff: i64| -> RatVec {
        let mut row = v.clone();
        row.push(-Rat::one()); // −b
        row.push(rat(t_coeff));
        row
    };
    for v in &shared {
        cons.push(Constraint::eq(row_for(v, 0), Rat::zero()));
    }
    for v in &a_only {
        // a·v − b + t ≤ 0.
        cons.push(Constraint::le(row_for(v, 1), Rat::zero()));
    }
    for v in &b_only {
        // a·v − b − t ≥ 0.
        cons.push(Constraint::ge(row_for(v, -1), Rat::zero()));
    }
    let mut t_row = zero_vec(nv);
    t_row[nv - 1] = Rat::one();
    cons.push(Constraint::le(t_row, Rat::one()));
    let mut objective = zero_vec(nv);
    objective[nv - 1] = Rat::one();
    match maximize(nv, &objective, &cons) {
        LpResult::Optimal { value, .. } => value.is_positive(),
        LpResult::Unbounded => unreachable!("margin capped at 1"),
        LpResult::Infeasible => unreachable!("t = −M is always feasible"),
    }
}

/// Does the open ray from the origin through each generator stay weakly on
/// the origin side of the affine hull of `verts`? Helper for hull-support
/// tests: checks a·g ≤ b for every generator given hull equation (a, b).
pub fn all_on_closed_side(normal: &[Rat], offset: &Rat, points: &[RatVec]) -> bool {
    points.iter().all(|p| dot(normal, p) <= *offset)
}
