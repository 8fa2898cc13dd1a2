//! Linear symmetries of point configurations and orbit bookkeeping.
//!
//! An automorphism is an invertible linear map sending the point set onto
//! itself; since the configurations here span their space, each is
//! determined by where it sends a fixed linearly independent basis of
//! points. The search walks over candidate basis images, forcing the image
//! of every point whose basis expansion is already fully assigned; the
//! survivors are exactly the automorphisms.

pub mod census;

use crate::complex::{PointConfiguration, Simplex, Triangulation};
use crate::geom::{dot, rank, solve_linear, vadd, vscale, zero_vec, Rat, RatVec};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("permutation of length {perm} cannot act on simplices over {points} points")]
    WrongIndexSet { perm: usize, points: usize },
}

/// One linear symmetry: the permutation it induces on point indices and
/// the matrix (rows) realizing it, with `matrix · p_i = p_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSymmetry {
    pub perm: Vec<usize>,
    pub matrix: Vec<RatVec>,
}

/// The full group of linear symmetries, every element materialized
/// (orders stay in the thousands at this scale), sorted by permutation
/// with the identity first.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    elements: Vec<LinearSymmetry>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[LinearSymmetry] {
        &self.elements
    }

    pub fn permutations(&self) -> impl Iterator<Item = &[usize]> {
        self.elements.iter().map(|g| g.perm.as_slice())
    }

    /// The group with only the identity on `n` points.
    pub fn trivial(n: usize, dim: usize) -> SymmetryGroup {
        let eye = (0..dim)
            .map(|i| {
                let mut row = zero_vec(dim);
                row[i] = Rat::one();
                row
            })
            .collect();
        SymmetryGroup { elements: vec![LinearSymmetry { perm: (0..n).collect(), matrix: eye }] }
    }
}

use num_traits::One;

/// All linear maps permuting the configuration's points, as a group.
pub fn automorphism_group(c: &PointConfiguration) -> SymmetryGroup {
    let dim = c.dim();
    let n = c.len();

    // Greedy linearly independent basis of points; configurations always
    // span their space, so it fills up.
    let mut basis: Vec<usize> = Vec::new();
    let mut span: Vec<RatVec> = Vec::new();
    for i in 0..n {
        if basis.len() == dim {
            break;
        }
        span.push(c.point(i).to_vec());
        if rank(&span) == span.len() {
            basis.push(i);
        } else {
            span.pop();
        }
    }
    assert_eq!(basis.len(), dim, "a point configuration spans its space");

    // Basis coordinates of every point: λ with Σ λ_k · p_{basis[k]} = p_j.
    // The solve sees the basis points as columns.
    let basis_columns: Vec<RatVec> = (0..dim)
        .map(|row| basis.iter().map(|&b| c.point(b)[row].clone()).collect())
        .collect();
    let coords: Vec<RatVec> = (0..n)
        .map(|j| solve_linear(&basis_columns, c.point(j)).expect("basis spans all points"))
        .collect();
    // A point is forced as soon as every basis vector its expansion
    // touches has an image: `level` is 1 + the last touched slot.
    let level: Vec<usize> = coords
        .iter()
        .map(|l| l.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1))
        .collect();
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); dim + 1];
    for j in 0..n {
        by_level[level[j]].push(j);
    }

    let lookup: HashMap<&RatVec, usize> = (0..n).map(|j| (c.point(j), j)).collect();

    struct Search<'a> {
        c: &'a PointConfiguration,
        coords: &'a [RatVec],
        by_level: &'a [Vec<usize>],
        lookup: &'a HashMap<&'a RatVec, usize>,
        images: Vec<RatVec>,
        perm: Vec<usize>,
        claimed: Vec<bool>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        /// Claim images for every point forced at this depth; returns the
        /// claimed targets for rollback, or None on any clash.
        fn force(&mut self, depth: usize) -> Option<Vec<usize>> {
            let mut claims = Vec::new();
            for &j in &self.by_level[depth] {
                let mut y = zero_vec(self.c.dim());
                for (k, lam) in self.coords[j].iter().enumerate().take(depth) {
                    if !lam.is_zero() {
                        y = vadd(&y, &vscale(lam, &self.images[k]));
                    }
                }
                let Some(&t) = self.lookup.get(&y) else {
                    self.rollback(&claims);
                    return None;
                };
                if self.claimed[t] {
                    self.rollback(&claims);
                    return None;
                }
                self.claimed[t] = true;
                self.perm[j] = t;
                claims.push(t);
            }
            Some(claims)
        }

        fn rollback(&mut self, claims: &[usize]) {
            for &t in claims {
                self.claimed[t] = false;
            }
        }

        fn walk(&mut self, depth: usize) {
            if depth == self.images.capacity() {
                self.found.push(self.perm.clone());
                return;
            }
            for t in 0..self.c.len() {
                if self.claimed[t] {
                    continue;
                }
                self.images.push(self.c.point(t).to_vec());
                // Candidate images must stay linearly independent.
                if rank(&self.images) == self.images.len() {
                    if let Some(claims) = self.force(depth + 1) {
                        self.walk(depth + 1);
                        self.rollback(&claims);
                    }
                }
                self.images.pop();
            }
        }
    }

    let mut search = Search {
        c,
        coords: &coords,
        by_level: &by_level,
        lookup: &lookup,
        images: Vec::with_capacity(dim),
        perm: vec![usize::MAX; n],
        claimed: vec![false; n],
        found: Vec::new(),
    };
    // Points touching no basis vector (only the zero point can) are fixed.
    let zero_claims = search.force(0).expect("the zero point maps to itself");
    search.walk(0);
    search.rollback(&zero_claims);

    let mut perms = search.found;
    perms.sort();
    let elements: Vec<LinearSymmetry> = perms
        .into_iter()
        .map(|perm| {
            let matrix = realizing_matrix(c, &basis, &basis_columns, &perm);
            debug_assert!((0..n).all(|i| {
                &matrix.iter().map(|row| dot(row, c.point(i))).collect::<RatVec>()
                    == c.point(perm[i])
            }));
            LinearSymmetry { perm, matrix }
        })
        .collect();

    // A finite set of permutations closed under composition is a group;
    // the brute force must have found one.
    let keys: std::collections::HashSet<&[usize]> =
        elements.iter().map(|g| g.perm.as_slice()).collect();
    for g in &elements {
        for h in &elements {
            let gh: Vec<usize> = (0..n).map(|i| g.perm[h.perm[i]]).collect();
            assert!(
                keys.contains(gh.as_slice()),
                "automorphism search produced a set not closed under composition"
            );
        }
    }

    SymmetryGroup { elements }
}

/// The matrix A with A · p_{basis[k]} = p_{perm[basis[k]]}: each row r of
/// A solves basisᵀ · row = (target coordinates at position r).
fn realizing_matrix(
    c: &PointConfiguration,
    basis: &[usize],
    basis_columns: &[RatVec],
    perm: &[usize],
) -> Vec<RatVec> {
    // basis_columns[r][k] = p_{basis[k]}[r]; transposing gives the system
    // rows (one per basis point) for each coordinate of the images.
    let transposed: Vec<RatVec> = (0..basis.len())
        .map(|k| (0..c.dim()).map(|r| basis_columns[r][k].clone()).collect())
        .collect();
    (0..c.dim())
        .map(|r| {
            let rhs: RatVec = basis.iter().map(|&b| c.point(perm[b])[r].clone()).collect();
            solve_linear(&transposed, &rhs).expect("basis matrix is invertible")
        })
        .collect()
}

/// Relabel cells through a point-index permutation, re-sorting.
pub fn apply_permutation(perm: &[usize], cells: &[Simplex]) -> Vec<Simplex> {
    let mut out: Vec<Simplex> = cells
        .iter()
        .map(|s| Simplex::new(s.vertices().iter().map(|&v| perm[v]).collect()))
        .collect();
    out.sort();
    out
}

/// The lexicographically smallest relabeling of the cell set over the
/// group: equal keys exactly for cell sets in the same orbit.
pub fn canonical_cells(
    cells: &[Simplex],
    g: &SymmetryGroup,
) -> Result<Vec<Simplex>, SymmetryError> {
    let points = g.elements[0].perm.len();
    if let Some(v) = cells.iter().flat_map(|s| s.vertices()).find(|&&v| v >= points) {
        return Err(SymmetryError::WrongIndexSet { perm: points, points: *v + 1 });
    }
    Ok(g.permutations()
        .map(|perm| apply_permutation(perm, cells))
        .min()
        .expect("a group has at least the identity"))
}

/// Indices of one representative per orbit (the first of each canonical
/// key, in input order).
pub fn orbit_classes(
    tris: &[Triangulation],
    g: &SymmetryGroup,
) -> Result<Vec<usize>, SymmetryError> {
    let mut seen: BTreeMap<Vec<Simplex>, usize> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        seen.entry(canonical_cells(t.cells(), g)?).or_insert(i);
    }
    let mut reps: Vec<usize> = seen.into_values().collect();
    reps.sort();
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::enumerate::{brute_force_triangulations, EnumerationGuard};
    use crate::complex::generators::{cross, dp, interval};
    use crate::complex::free_sum;
    use crate::geom::rat;
    use std::sync::Arc;

    #[test]
    fn test_interval_symmetries() {
        // {−1,0,1} admits the identity and the sign flip.
        let c = interval(&[-1, 0, 1]);
        let g = automorphism_group(&c);
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements()[0].perm, vec![0, 1, 2]);
        assert_eq!(g.elements()[1].perm, vec![2, 1, 0]);
        // An asymmetric interval has no sign flip.
        let c = interval(&[-1, 0, 1, 2]);
        let g = automorphism_group(&c);
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn test_cross_polytope_group_order() {
        // Signed permutations of the axes: 2^d · d!.
        assert_eq!(automorphism_group(&cross(2)).order(), 8);
        assert_eq!(automorphism_group(&cross(3)).order(), 48);
    }

    #[test]
    fn test_dp2_group_order_is_twelve() {
        let g = automorphism_group(&dp(2));
        assert_eq!(g.order(), 12);
        // Matrices genuinely realize their permutations on all points.
        let c = dp(2);
        for sym in g.elements() {
            for i in 0..c.len() {
                let image: RatVec =
                    sym.matrix.iter().map(|row| dot(row, c.point(i))).collect();
                assert_eq!(&image, c.point(sym.perm[i]));
            }
        }
    }

    #[test]
    fn test_degenerate_configuration_unbuildable() {
        // Collinear points in the plane never reach the symmetry search:
        // the configuration type itself rejects them.
        let err = PointConfiguration::new(vec![
            vec![rat(1), rat(0)],
            vec![rat(2), rat(0)],
            vec![rat(0), rat(0)],
        ])
        .unwrap_err();
        assert!(matches!(err, crate::complex::ComplexError::DoesNotSpan { rank: 1, dim: 2 }));
    }

    #[test]
    fn test_block_group_divides_sum_group() {
        let p = Arc::new(interval(&[-1, 0, 1]));
        let q = Arc::new(interval(&[-1, 0, 1]));
        let st = free_sum(p.clone(), q.clone()).unwrap();
        let gp = automorphism_group(&p).order();
        let gq = automorphism_group(&q).order();
        let gs = automorphism_group(&st.sum).order();
        assert_eq!(gs % (gp * gq), 0);
        // cross(2) = {±e_1} ⊕ {±e_2} up to the origin bookkeeping: the sum
        // group (order 8) strictly exceeds the block product (order 4).
        assert_eq!(gs, 8);
    }

    #[test]
    fn test_canonical_cells_constant_on_orbits() {
        let c = Arc::new(cross(2));
        let g = automorphism_group(&c);
        let tris =
            brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        assert_eq!(tris.len(), 3);
        for t in &tris {
            let key = canonical_cells(t.cells(), &g).unwrap();
            for sym in g.elements() {
                let moved = apply_permutation(&sym.perm, t.cells());
                assert_eq!(canonical_cells(&moved, &g).unwrap(), key);
            }
        }
        // The two diagonal splits are one class; the origin fan another.
        let reps = orbit_classes(&tris, &g).unwrap();
        assert_eq!(reps.len(), 2);
        // With the trivial group nothing merges.
        let trivial = SymmetryGroup::trivial(c.len(), c.dim());
        assert_eq!(orbit_classes(&tris, &trivial).unwrap().len(), 3);
    }

    #[test]
    fn test_canonical_cells_rejects_foreign_indices() {
        let g = automorphism_group(&interval(&[-1, 0, 1]));
        let err = canonical_cells(&[Simplex::new(vec![0, 7])], &g).unwrap_err();
        assert!(matches!(err, SymmetryError::WrongIndexSet { .. }));
    }

    #[test]
    fn test_dp2_triangulation_classes() {
        // 32 raw triangulations, 8 classes under the order-12 group.
        let c = Arc::new(dp(2));
        let tris =
            brute_force_triangulations(&c, EnumerationGuard::default()).unwrap();
        assert_eq!(tris.len(), 32);
        let g = automorphism_group(&c);
        let reps = orbit_classes(&tris, &g).unwrap();
        assert_eq!(reps.len(), 8);
    }
}
