//! Exact rational linear algebra: vectors, matrices, determinants, affine
//! hulls, barycentric coordinates and simplex volumes.
//!
//! Every value in this module is an arbitrary-precision rational and every
//! operation is exact. The predicates downstream (stabbing comparisons,
//! star-shape recognition, regularity) are all degenerate-sensitive, so there
//! is deliberately no floating-point fast path anywhere.

pub mod lp;
pub mod predicates;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Serde adapters rendering exact rationals as strings ("3/4", "-2") so
/// reports stay exact without inventing a numeric encoding.
pub mod serde_rat {
    use super::Rat;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn serialize_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }
}

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (guaranteed by `num_rational`).
pub type Rat = BigRational;

/// A point or direction with rational coordinates.
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rvec(coords: &[i64]) -> RatVec {
    coords.iter().map(|&c| rat(c)).collect()
}

pub fn zero_vec(dim: usize) -> RatVec {
    vec![Rat::zero(); dim]
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> RatVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> RatVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Rat, v: &[Rat]) -> RatVec {
    v.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Arithmetic mean of a nonempty point list.
pub fn centroid(points: &[RatVec]) -> RatVec {
    assert!(!points.is_empty(), "centroid of an empty point list");
    let n = rat(points.len() as i64);
    let dim = points[0].len();
    let mut sum = zero_vec(dim);
    for p in points {
        sum = vadd(&sum, p);
    }
    sum.into_iter().map(|c| c / &n).collect()
}

/// Exact determinant of a square matrix by Gaussian elimination.
pub fn determinant(m: &[RatVec]) -> Rat {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut a: Vec<RatVec> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Rat::zero(),
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Row echelon reduction in place. Returns the pivot column of each pivot row;
/// the number of pivots is the rank.
fn row_echelon(a: &mut Vec<RatVec>) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let pivot = a[r][c].clone();
        for x in &mut a[r] {
            *x /= &pivot;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[RatVec]) -> usize {
    let mut a = m.to_vec();
    row_echelon(&mut a).len()
}

/// One exact solution of `A x = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve_linear(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    assert_eq!(a.len(), b.len());
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut aug);
    // A pivot in the augmented column means 0 = 1: inconsistent.
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = zero_vec(cols);
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// A basis of the kernel `{x : A x = 0}`.
pub fn nullspace(a: &[RatVec]) -> Vec<RatVec> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.to_vec();
    let pivots = row_echelon(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = zero_vec(cols);
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Dimension of the affine hull of the points; −1 for the empty list.
pub fn affine_dim(points: &[RatVec]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| vsub(p, &points[0])).collect();
    rank(&diffs) as isize
}

pub fn affinely_independent(points: &[RatVec]) -> bool {
    affine_dim(points) == points.len() as isize - 1
}

/// Does `x` lie in the affine hull of the generators? The hull of an empty
/// list is empty.
pub fn affine_hull_membership(x: &[Rat], generators: &[RatVec]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let base_dim = affine_dim(generators);
    let mut extended: Vec<RatVec> = generators.to_vec();
    extended.push(x.to_vec());
    affine_dim(&extended) == base_dim
}

/// Coefficients `λ` with `Σ λ_i v_i = x` and `Σ λ_i = 1`, for affinely
/// independent `verts`; `None` when `x` is outside their affine hull.
pub fn barycentric_coords(x: &[Rat], verts: &[RatVec]) -> Option<Vec<Rat>> {
    assert!(
        affinely_independent(verts),
        "barycentric coordinates need affinely independent vertices"
    );
    let dim = x.len();
    // Rows: one per coordinate, then the normalization row.
    let mut a: Vec<RatVec> = Vec::with_capacity(dim + 1);
    for c in 0..dim {
        a.push(verts.iter().map(|v| v[c].clone()).collect());
    }
    a.push(vec![Rat::one(); verts.len()]);
    let mut b: Vec<Rat> = x.to_vec();
    b.push(Rat::one());
    solve_linear(&a, &b)
}

fn factorial(k: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    f
}

/// Square root of a rational that is known to be a perfect square;
/// panics otherwise (volumes of the simplices this crate builds are always
/// rational, so a failure here is a caller bug worth hearing about).
fn rational_sqrt(x: &Rat) -> Rat {
    assert!(!x.is_negative(), "square root of a negative rational");
    let num = x.numer();
    let den = x.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    assert!(
        &(&sn * &sn) == num && &(&sd * &sd) == den,
        "irrational simplex volume: Gram determinant {x} is not a perfect square"
    );
    BigRational::new(sn, sd)
}

/// k-dimensional volume of the simplex on `k+1` vertices; 0 when the
/// vertices are affinely dependent. For full-dimensional simplices this is
/// |det| / k!; lower-dimensional volumes go through the Gram determinant.
pub fn simplex_volume(verts: &[RatVec]) -> Rat {
    assert!(!verts.is_empty(), "volume of an empty vertex list");
    let k = verts.len() - 1;
    if k == 0 {
        return Rat::one() * Rat::one(); // a point has 0-volume 1 (empty product)
    }
    let dim = verts[0].len();
    assert!(k <= dim, "more simplex vertices than dimension allows");
    let edges: Vec<RatVec> = verts[1..].iter().map(|v| vsub(v, &verts[0])).collect();
    if rank(&edges) < k {
        return Rat::zero();
    }
    let kfact = BigRational::from_integer(factorial(k));
    if k == dim {
        return determinant(&edges).abs() / kfact;
    }
    // Gram determinant: det(E Eᵀ) = (k! · vol)².
    let gram: Vec<RatVec> = edges
        .iter()
        .map(|ei| edges.iter().map(|ej| dot(ei, ej)).collect())
        .collect();
    rational_sqrt(&determinant(&gram)) / kfact
}

/// Equations `n · x = c` cutting out the affine hull of the points
/// (one pair per codimension; empty when the hull is all of space).
pub fn affine_hull_equations(points: &[RatVec]) -> Vec<(RatVec, Rat)> {
    assert!(!points.is_empty());
    let dim = points[0].len();
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| vsub(p, &points[0])).collect();
    // Normals are the kernel of the difference matrix (as row vectors):
    // n with diffs · n = 0. A single point is cut out by the full standard
    // basis (the empty matrix carries no column count for `nullspace`).
    let normals: Vec<RatVec> = if diffs.is_empty() {
        (0..dim)
            .map(|i| {
                let mut v = zero_vec(dim);
                v[i] = Rat::one();
                v
            })
            .collect()
    } else {
        nullspace(&diffs)
    };
    normals
        .into_iter()
        .map(|n| {
            let c = dot(&n, &points[0]);
            (n, c)
        })
        .collect()
}
