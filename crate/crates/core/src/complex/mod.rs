//! Point configurations, triangulations, and subcomplex operators: star,
//! link, boundary, restriction, plus free sums of configurations.

pub mod enumerate;
pub mod generators;
pub mod placing;
pub mod regularity;
pub mod verify;

use crate::geom::lp::{maximize, Constraint, LpResult};
use crate::geom::predicates::{minimal_face_support, point_in_simplex};
use crate::geom::{
    affine_dim, affinely_independent, rank, simplex_volume, zero_vec, Rat, RatVec,
};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("configuration is empty")]
    EmptyConfiguration,
    #[error("points have mixed dimensions: {0} and {1}")]
    MixedDimensions(usize, usize),
    #[error("duplicate point at indices {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("points do not linearly span the ambient space (rank {rank} < {dim})")]
    DoesNotSpan { rank: usize, dim: usize },
    #[error("point index {0} out of range (configuration has {1} points)")]
    IndexOutOfRange(usize, usize),
    #[error("cell {0} has dimension {1}, expected {2}")]
    WrongCellDimension(Simplex, usize, usize),
    #[error("cell {0} is degenerate (vertices affinely dependent)")]
    DegenerateCell(Simplex),
    #[error("triangulation has no cells")]
    NoCells,
    #[error("point not covered")]
    PointNotCovered,
    #[error("subcomplex is not pure: generators of dimensions {0} and {1}")]
    NotPure(usize, usize),
    #[error("empty subcomplex has no boundary")]
    EmptyBoundary,
    #[error("origin is not an interior point of the configuration")]
    OriginNotInterior,
    #[error("configuration does not contain the origin")]
    NoOrigin,
    #[error("insertion order must be a set of valid indices, got duplicate {0}")]
    DuplicateOrderIndex(usize),
    #[error("ordered points do not affinely span the ambient space")]
    OrderDoesNotSpan,
}

/// A finite list of pairwise-distinct rational points spanning ℝᵈ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<RatVec>,
    dim: usize,
    origin_index: Option<usize>,
}

impl PointConfiguration {
    pub fn new(points: Vec<RatVec>) -> Result<Self, ComplexError> {
        let Some(first) = points.first() else {
            return Err(ComplexError::EmptyConfiguration);
        };
        let dim = first.len();
        for p in &points {
            if p.len() != dim {
                return Err(ComplexError::MixedDimensions(dim, p.len()));
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(ComplexError::DuplicatePoint(i, j));
                }
            }
        }
        let r = rank(&points);
        if r < dim {
            return Err(ComplexError::DoesNotSpan { rank: r, dim });
        }
        let origin_index = points.iter().position(|p| p.iter().all(|c| c.is_zero()));
        Ok(PointConfiguration { points, dim, origin_index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &RatVec {
        &self.points[i]
    }

    pub fn points(&self) -> &[RatVec] {
        &self.points
    }

    pub fn origin_index(&self) -> Option<usize> {
        self.origin_index
    }

    pub fn coords_of(&self, s: &Simplex) -> Vec<RatVec> {
        s.vertices().iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Is the origin a point of the configuration lying in the interior of
    /// the convex hull? Decided exactly: the configuration must affinely
    /// span, and 0 must be a convex combination of the other points with
    /// every coefficient strictly positive (the maximum uniform lower bound
    /// on the coefficients is positive).
    pub fn has_interior_origin(&self) -> bool {
        let Some(oi) = self.origin_index else {
            return false;
        };
        if affine_dim(&self.points) != self.dim as isize {
            return false;
        }
        let others: Vec<&RatVec> = self
            .points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != oi)
            .map(|(_, p)| p)
            .collect();
        let n = others.len();
        // Variables λ₁..λ_n, t: Σλp = 0, Σλ = 1, λᵢ ≥ t, t ≤ 1; max t.
        let nv = n + 1;
        let mut cons = Vec::new();
        for coord in 0..self.dim {
            let mut row = zero_vec(nv);
            for (j, p) in others.iter().enumerate() {
                row[j] = p[coord].clone();
            }
            cons.push(Constraint::eq(row, Rat::zero()));
        }
        let mut sum_row = zero_vec(nv);
        for item in sum_row.iter_mut().take(n) {
            *item = Rat::one();
        }
        cons.push(Constraint::eq(sum_row, Rat::one()));
        for j in 0..n {
            let mut row = zero_vec(nv);
            row[j] = Rat::one();
            row[n] = -Rat::one();
            cons.push(Constraint::ge(row, Rat::zero()));
        }
        let mut t_row = zero_vec(nv);
        t_row[n] = Rat::one();
        cons.push(Constraint::le(t_row, Rat::one()));
        let mut objective = zero_vec(nv);
        objective[n] = Rat::one();
        match maximize(nv, &objective, &cons) {
            LpResult::Optimal { value, .. } => value.is_positive(),
            _ => false,
        }
    }
}

/// A simplex of a configuration, stored as sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Simplex(indices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn meet(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    pub fn join(&self, other: &Simplex) -> Simplex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Simplex::new(v)
    }

    pub fn without(&self, v: usize) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All faces of the given dimension (k+1 vertices).
    pub fn faces_of_dim(&self, k: isize) -> Vec<Simplex> {
        if k < -1 || k > self.dim() {
            return Vec::new();
        }
        let take = (k + 1) as usize;
        let mut out = Vec::new();
        let mut pick = vec![0usize; take];
        subsets(&self.0, take, 0, &mut pick, 0, &mut out);
        out
    }

    /// The (dim−1)-faces.
    pub fn facets(&self) -> Vec<Simplex> {
        (0..self.0.len()).map(|i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        }).collect()
    }
}

fn subsets(
    items: &[usize],
    take: usize,
    start: usize,
    pick: &mut [usize],
    depth: usize,
    out: &mut Vec<Simplex>,
) {
    if depth == take {
        out.push(Simplex(pick.to_vec()));
        return;
    }
    for i in start..items.len() {
        pick[depth] = items[i];
        subsets(items, take, i + 1, pick, depth + 1, out);
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A triangulation: full-dimensional simplices over a configuration.
/// The constructor checks dimensions and nondegeneracy; properness and
/// covering are the verifier's job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    config: Arc<PointConfiguration>,
    cells: Vec<Simplex>,
}

impl Triangulation {
    pub fn new(
        config: Arc<PointConfiguration>,
        mut cells: Vec<Simplex>,
    ) -> Result<Self, ComplexError> {
        if cells.is_empty() {
            return Err(ComplexError::NoCells);
        }
        let d = config.dim();
        for cell in &cells {
            for &v in cell.vertices() {
                if v >= config.len() {
                    return Err(ComplexError::IndexOutOfRange(v, config.len()));
                }
            }
            if cell.dim() != d as isize {
                return Err(ComplexError::WrongCellDimension(
                    cell.clone(),
                    cell.dim().max(0) as usize,
                    d,
                ));
            }
            if !affinely_independent(&config.coords_of(cell)) {
                return Err(ComplexError::DegenerateCell(cell.clone()));
            }
        }
        cells.sort();
        cells.dedup();
        Ok(Triangulation { config, cells })
    }

    pub fn config(&self) -> &Arc<PointConfiguration> {
        &self.config
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn total_volume(&self) -> Rat {
        let mut v = Rat::zero();
        for cell in &self.cells {
            v += simplex_volume(&self.config.coords_of(cell));
        }
        v
    }

    /// Indices of configuration points appearing as vertices of some cell.
    pub fn used_vertices(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.cells.iter().flat_map(|c| c.vertices().iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// The whole triangulation as a subcomplex of itself.
    pub fn as_subcomplex(&self) -> Subcomplex {
        Subcomplex::new(self.config.clone(), self.cells.clone())
    }

    /// The minimal face of the complex whose relative interior contains x.
    pub fn minimal_face_containing(&self, x: &[Rat]) -> Result<Simplex, ComplexError> {
        for cell in &self.cells {
            if let Some(support) = minimal_face_support(x, &self.config.coords_of(cell)) {
                let verts = cell.vertices();
                return Ok(Simplex::new(support.into_iter().map(|i| verts[i]).collect()));
            }
        }
        Err(ComplexError::PointNotCovered)
    }

    /// map of (d−1)-face → number of maximal cells containing it.
    pub fn ridge_counts(&self) -> BTreeMap<Simplex, usize> {
        let mut counts = BTreeMap::new();
        for cell in &self.cells {
            for facet in cell.facets() {
                *counts.entry(facet).or_insert(0) += 1;
            }
        }
        counts
    }
}

/// A subcomplex stored by its inclusion-maximal generators. All faces of
/// generators are implicitly members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    config: Arc<PointConfiguration>,
    generators: Vec<Simplex>,
}

impl Subcomplex {
    /// Build from any generating set; non-maximal and duplicate generators
    /// are dropped.
    pub fn new(config: Arc<PointConfiguration>, mut gens: Vec<Simplex>) -> Self {
        gens.sort();
        gens.dedup();
        let maximal: Vec<Simplex> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| *g != h && g.is_face_of(h)))
            .cloned()
            .collect();
        Subcomplex { config, generators: maximal }
    }

    pub fn empty(config: Arc<PointConfiguration>) -> Self {
        Subcomplex { config, generators: Vec::new() }
    }

    pub fn config(&self) -> &Arc<PointConfiguration> {
        &self.config
    }

    pub fn generators(&self) -> &[Simplex] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Largest generator dimension; −1 for the empty subcomplex.
    pub fn dim(&self) -> isize {
        self.generators.iter().map(|g| g.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.generators.iter().all(|g| g.dim() == d)
    }

    /// Membership: a simplex belongs to the subcomplex iff it is a face of
    /// some generator.
    pub fn contains(&self, s: &Simplex) -> bool {
        self.generators.iter().any(|g| s.is_face_of(g))
    }

    /// All faces of the given dimension, deduplicated and sorted.
    pub fn faces_of_dim(&self, k: isize) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self
            .generators
            .iter()
            .flat_map(|g| g.faces_of_dim(k))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Generators of exactly the given dimension.
    pub fn generators_of_dim(&self, k: isize) -> Vec<Simplex> {
        self.generators.iter().filter(|g| g.dim() == k).cloned().collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .generators
            .iter()
            .flat_map(|g| g.vertices().iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Σ volume of the generators (meaningful for pure subcomplexes).
    pub fn total_volume(&self) -> Rat {
        let mut v = Rat::zero();
        for g in &self.generators {
            v += simplex_volume(&self.config.coords_of(g));
        }
        v
    }
}

/// Star of a point: the minimal face σ containing x, then every maximal
/// cell having σ as a face (with all their faces implicitly).
pub fn star(t: &Triangulation, x: &[Rat]) -> Result<Subcomplex, ComplexError> {
    let sigma = t.minimal_face_containing(x)?;
    let gens: Vec<Simplex> = t
        .cells()
        .iter()
        .filter(|c| sigma.is_face_of(c))
        .cloned()
        .collect();
    Ok(Subcomplex::new(t.config().clone(), gens))
}

/// Star of a simplex σ of the complex: maximal cells containing σ.
pub fn star_of_simplex(t: &Triangulation, sigma: &Simplex) -> Subcomplex {
    let gens: Vec<Simplex> = t
        .cells()
        .iter()
        .filter(|c| sigma.is_face_of(c))
        .cloned()
        .collect();
    Subcomplex::new(t.config().clone(), gens)
}

/// Link of a point: faces of star cells disjoint from the minimal face
/// containing x. Generated by τ ∖ σ over the star's maximal cells τ.
pub fn link(t: &Triangulation, x: &[Rat]) -> Result<Subcomplex, ComplexError> {
    let sigma = t.minimal_face_containing(x)?;
    Ok(link_of_simplex(t, &sigma))
}

pub fn link_of_simplex(t: &Triangulation, sigma: &Simplex) -> Subcomplex {
    let gens: Vec<Simplex> = t
        .cells()
        .iter()
        .filter(|c| sigma.is_face_of(c))
        .map(|c| c.minus(sigma))
        .collect();
    Subcomplex::new(t.config().clone(), gens)
}

/// Boundary of a pure k-subcomplex: the (k−1)-faces lying in exactly one
/// generator.
pub fn boundary(s: &Subcomplex) -> Result<Subcomplex, ComplexError> {
    if s.is_empty() {
        return Err(ComplexError::EmptyBoundary);
    }
    if !s.is_pure() {
        let d = s.dim();
        let other = s
            .generators()
            .iter()
            .map(|g| g.dim())
            .find(|&k| k != d)
            .unwrap();
        return Err(ComplexError::NotPure(d as usize, other.max(0) as usize));
    }
    let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
    for g in s.generators() {
        for f in g.facets() {
            *counts.entry(f).or_insert(0) += 1;
        }
    }
    let gens: Vec<Simplex> = counts
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|(f, _)| f)
        .collect();
    Ok(Subcomplex::new(s.config().clone(), gens))
}

/// Restriction of t to the region covered by a subcomplex of the same
/// complex: the cells of t contained in the region are exactly the faces of
/// the region's generators.
pub fn restriction(t: &Triangulation, region: &Subcomplex) -> Subcomplex {
    let gens: Vec<Simplex> = t
        .cells()
        .iter()
        .filter(|c| region.contains(c))
        .cloned()
        .collect();
    if !gens.is_empty() {
        return Subcomplex::new(t.config().clone(), gens);
    }
    // No maximal cell fits; fall back to the largest faces that do.
    let mut out: Vec<Simplex> = Vec::new();
    for cell in t.cells() {
        let mut k = cell.dim();
        'dims: while k >= 0 {
            let mut found = false;
            for f in cell.faces_of_dim(k) {
                if region.contains(&f) {
                    out.push(f);
                    found = true;
                }
            }
            if found {
                break 'dims;
            }
            k -= 1;
        }
    }
    Subcomplex::new(t.config().clone(), out)
}

/// Restriction of t to a convex region given by hull-defining points: the
/// faces of t with every vertex inside the hull (convexity makes vertex
/// membership sufficient).
pub fn restriction_to_convex_hull(t: &Triangulation, hull_points: &[RatVec]) -> Subcomplex {
    let inside: Vec<bool> = (0..t.config().len())
        .map(|i| point_in_convex_hull(t.config().point(i), hull_points))
        .collect();
    let gens: Vec<Simplex> = t
        .cells()
        .iter()
        .map(|c| Simplex::new(c.vertices().iter().copied().filter(|&v| inside[v]).collect()))
        .filter(|s| !s.is_empty())
        .collect();
    Subcomplex::new(t.config().clone(), gens)
}

/// Exact convex-hull membership via LP feasibility of the convex-combination
/// system.
pub fn point_in_convex_hull(p: &[Rat], hull_points: &[RatVec]) -> bool {
    if hull_points.is_empty() {
        return false;
    }
    if affinely_independent(hull_points) {
        return point_in_simplex(p, hull_points);
    }
    let n = hull_points.len();
    let d = p.len();
    let mut cons = Vec::new();
    for coord in 0..d {
        let row: RatVec = hull_points.iter().map(|h| h[coord].clone()).collect();
        cons.push(Constraint::eq(row, p[coord].clone()));
    }
    cons.push(Constraint::eq(vec![Rat::one(); n], Rat::one()));
    for j in 0..n {
        let mut row = zero_vec(n);
        row[j] = Rat::one();
        cons.push(Constraint::ge(row, Rat::zero()));
    }
    crate::geom::lp::feasible_point(n, &cons).is_some()
}

/// The free sum of two configurations with interior origins: P-points padded
/// with zeros, Q-points prefixed with zeros, origins merged.
#[derive(Debug, Clone)]
pub struct SumStructure {
    pub sum: Arc<PointConfiguration>,
    pub p: Arc<PointConfiguration>,
    pub q: Arc<PointConfiguration>,
    /// summand index → sum index
    pub p_index: Vec<usize>,
    pub q_index: Vec<usize>,
    /// sum index → summand index (None on the other block)
    pub to_p: Vec<Option<usize>>,
    pub to_q: Vec<Option<usize>>,
    /// sum index of the merged origin
    pub origin: usize,
}

pub fn free_sum(
    p: Arc<PointConfiguration>,
    q: Arc<PointConfiguration>,
) -> Result<SumStructure, ComplexError> {
    for c in [&p, &q] {
        if c.origin_index().is_none() {
            return Err(ComplexError::NoOrigin);
        }
        if !c.has_interior_origin() {
            return Err(ComplexError::OriginNotInterior);
        }
    }
    let (d, e) = (p.dim(), q.dim());
    let po = p.origin_index().unwrap();
    let qo = q.origin_index().unwrap();
    let mut points: Vec<RatVec> = Vec::with_capacity(p.len() + q.len() - 1);
    let mut p_index = Vec::with_capacity(p.len());
    let mut to_p: Vec<Option<usize>> = Vec::new();
    let mut to_q: Vec<Option<usize>> = Vec::new();
    for (i, pt) in p.points().iter().enumerate() {
        let mut v = pt.clone();
        v.extend(zero_vec(e));
        p_index.push(points.len());
        to_p.push(Some(i));
        to_q.push(if i == po { Some(qo) } else { None });
        points.push(v);
    }
    let origin = p_index[po];
    let mut q_index = vec![usize::MAX; q.len()];
    q_index[qo] = origin;
    for (j, qt) in q.points().iter().enumerate() {
        if j == qo {
            continue;
        }
        let mut v = zero_vec(d);
        v.extend(qt.iter().cloned());
        q_index[j] = points.len();
        to_p.push(None);
        to_q.push(Some(j));
        points.push(v);
    }
    let sum = Arc::new(PointConfiguration::new(points)?);
    debug_assert_eq!(sum.origin_index(), Some(origin));
    Ok(SumStructure { sum, p, q, p_index, q_index, to_p, to_q, origin })
}

impl SumStructure {
    pub fn d(&self) -> usize {
        self.p.dim()
    }

    pub fn e(&self) -> usize {
        self.q.dim()
    }

    /// Map a simplex of the P-summand into sum indices.
    pub fn lift_p(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&i| self.p_index[i]).collect())
    }

    /// Map a simplex of the Q-summand into sum indices.
    pub fn lift_q(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&j| self.q_index[j]).collect())
    }

    /// Pull a sum simplex supported on the P-block back to P indices.
    /// Returns None if any vertex lies strictly in the Q-block.
    pub fn project_p(&self, s: &Simplex) -> Option<Simplex> {
        let mut v = Vec::with_capacity(s.vertices().len());
        for &i in s.vertices() {
            v.push(self.to_p[i]?);
        }
        Some(Simplex::new(v))
    }

    pub fn project_q(&self, s: &Simplex) -> Option<Simplex> {
        let mut v = Vec::with_capacity(s.vertices().len());
        for &i in s.vertices() {
            v.push(self.to_q[i]?);
        }
        Some(Simplex::new(v))
    }
}
