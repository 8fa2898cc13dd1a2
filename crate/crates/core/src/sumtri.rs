//! Sum triangulations: building a triangulation of a free sum P ⊕ Q from a
//! proper pinned web, and decomposing a triangulation of the sum back into
//! factor triangulations with the web pair that generates it.
//!
//! Every maximal cell of a triangulation of P ⊕ Q splits as the join of a
//! simplex in the P-block and one in the Q-block (the shared origin, when
//! present, belongs to both). The block parts of all cells, with a cone
//! refinement of the region around the origin on one side, yield factor
//! triangulations Δ_P and Δ_Q; the radial extent each P-cell reaches into
//! the Q-block is a strictly star-shaped ball, and recording it per cell
//! recovers a web. Conversely, a proper pinned web α (with complement
//! transpose β) generates the triangulation with maximal cells
//!
//!     { σ_P join F : F a boundary facet of α(σ_P) }  over P-cells σ_P,
//!     { G join τ_Q : G a boundary facet of β(τ_Q) }  over Q-cells τ_Q,
//!
//! skipping empty assignments on either side.

use crate::complex::{ComplexError, Simplex, SumStructure, Triangulation};
use crate::geom::predicates::point_in_simplex;
use crate::geom::{centroid, zero_vec};
use crate::starballs::{boundary_facets, cone_over, StarBallError};
use crate::webs::{
    complement_transpose, is_compatible_pair, is_order_preserving, is_pinned, validate_web, Web,
    WebError, WebSetting,
};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SumError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    StarBall(#[from] StarBallError),
    #[error("the minimal face holding the origin mixes both blocks: {0}")]
    MixedOriginFace(Simplex),
    #[error("cell {cell} splits into parts of dimensions {p_dim} and {q_dim}, which fit no sum cell")]
    CellPartDims { cell: Simplex, p_dim: isize, q_dim: isize },
    #[error("cells at the origin disagree on the region they span on the far side")]
    LinkMismatch,
    #[error("radial region of cell {cell} is not a star-shaped ball of the far triangulation")]
    RegionNotBall { cell: Simplex },
    #[error("radial region of cell {cell} has the wrong boundary")]
    BoundaryMismatch { cell: Simplex },
    #[error("web is not anchored: neither it nor its transpose sends every minimal cell to the star")]
    WebNotAnchored,
    #[error("web is not proper: its complement transpose is not an order-preserving ball assignment")]
    WebNotProper,
    #[error("origin lies in the {actual} block, cannot decompose relative to {requested}")]
    SideUnavailable { requested: &'static str, actual: &'static str },
}

/// Where the origin of the sum sits inside a given triangulation of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginSide {
    /// The origin is a vertex of the triangulation.
    Vertex,
    /// The minimal face holding the origin lies in the P-block.
    P,
    /// The minimal face holding the origin lies in the Q-block.
    Q,
}

/// Split a sum simplex into its P-block and Q-block parts, in factor
/// indices. The merged origin vertex, when present, appears in both parts.
pub fn split_cell(st: &SumStructure, cell: &Simplex) -> (Simplex, Simplex) {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for &v in cell.vertices() {
        if let Some(i) = st.to_p[v] {
            p.push(i);
        }
        if let Some(j) = st.to_q[v] {
            q.push(j);
        }
    }
    (Simplex::new(p), Simplex::new(q))
}

/// Classify where the origin sits in a triangulation of the sum.
pub fn origin_side(st: &SumStructure, t: &Triangulation) -> Result<OriginSide, SumError> {
    let zero = zero_vec(st.sum.dim());
    let face = t.minimal_face_containing(&zero)?;
    if face.vertices() == [st.origin] {
        return Ok(OriginSide::Vertex);
    }
    let (p_part, q_part) = split_cell(st, &face);
    match (p_part.is_empty(), q_part.is_empty()) {
        (false, true) => Ok(OriginSide::P),
        (true, false) => Ok(OriginSide::Q),
        _ => Err(SumError::MixedOriginFace(face)),
    }
}

/// Build the triangulation of the sum generated by a proper web. The web
/// must be anchored: either α itself or its complement transpose sends
/// every stabbing-minimal cell exactly to the star of the origin.
pub fn construct(
    st: &SumStructure,
    setting: &WebSetting,
    alpha: &Web,
) -> Result<Triangulation, SumError> {
    validate_web(setting, alpha)?;
    let Some(beta) = complement_transpose(setting, alpha) else {
        return Err(SumError::WebNotProper);
    };
    if is_order_preserving(setting.p_poset(), setting.q_balls(), alpha).is_err()
        || is_order_preserving(setting.q_poset(), setting.p_balls(), &beta).is_err()
    {
        return Err(SumError::WebNotProper);
    }
    if !is_pinned(setting, alpha) && !is_pinned(&setting.reversed(), &beta) {
        return Err(SumError::WebNotAnchored);
    }

    let mut cells: BTreeSet<Simplex> = BTreeSet::new();
    for (i, cell) in setting.p().cells().iter().enumerate() {
        let ball = setting.q_balls().ball(alpha[i]);
        if ball.is_empty() {
            continue;
        }
        let lifted_p = st.lift_p(cell);
        for facet in boundary_facets(setting.q(), ball) {
            cells.insert(lifted_p.join(&st.lift_q(&facet)));
        }
    }
    for (j, cell) in setting.q().cells().iter().enumerate() {
        let ball = setting.p_balls().ball(beta[j]);
        if ball.is_empty() {
            continue;
        }
        let lifted_q = st.lift_q(cell);
        for facet in boundary_facets(setting.p(), ball) {
            cells.insert(st.lift_p(&facet).join(&lifted_q));
        }
    }
    Ok(Triangulation::new(st.sum.clone(), cells.into_iter().collect())?)
}

/// A triangulation of the sum, decomposed: the two factor triangulations
/// (one side cone-refined around the origin when the origin is not a
/// vertex) and the web pair that regenerates it via [`construct`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub side: OriginSide,
    pub setting: WebSetting,
    /// P-cells → Δ_Q-balls; pinned unless the decomposition anchors on Q.
    pub alpha: Web,
    /// Q-cells → Δ_P-balls; the complement transpose of `alpha`.
    pub beta: Web,
}

/// Which side the extracted web pair anchors on (which factor's minimal
/// cells are pinned to the far star).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    P,
    Q,
}

/// Decompose with the anchor chosen automatically: on the block holding
/// the origin, or on P when the origin is a vertex.
pub fn decompose(st: &SumStructure, t: &Triangulation) -> Result<Decomposition, SumError> {
    let side = origin_side(st, t)?;
    let anchor = match side {
        OriginSide::Q => Anchor::Q,
        _ => Anchor::P,
    };
    decompose_anchored(st, t, anchor)
}

/// Decompose with an explicit anchor. Anchoring on P requires the origin
/// to be a vertex or in the P-block; mirrored for Q.
pub fn decompose_anchored(
    st: &SumStructure,
    t: &Triangulation,
    anchor: Anchor,
) -> Result<Decomposition, SumError> {
    let side = origin_side(st, t)?;
    match (side, anchor) {
        (OriginSide::P, Anchor::Q) => {
            return Err(SumError::SideUnavailable { requested: "Q", actual: "P" })
        }
        (OriginSide::Q, Anchor::P) => {
            return Err(SumError::SideUnavailable { requested: "P", actual: "Q" })
        }
        _ => {}
    }

    let d = st.d() as isize;
    let e = st.e() as isize;
    let p_origin = st.p.origin_index().expect("sum factor carries an origin");
    let q_origin = st.q.origin_index().expect("sum factor carries an origin");

    // Split every maximal cell and collect, per full-dimensional block
    // part, the far-side facets it is joined with ("links"). Cells holding
    // the origin vertex have both parts full-dimensional; their links drop
    // the shared origin.
    let mut p_cells: BTreeSet<Simplex> = BTreeSet::new();
    let mut q_cells: BTreeSet<Simplex> = BTreeSet::new();
    let mut p_links: BTreeMap<Simplex, BTreeSet<Simplex>> = BTreeMap::new();
    let mut q_links: BTreeMap<Simplex, BTreeSet<Simplex>> = BTreeMap::new();
    for cell in t.cells() {
        let (p_part, q_part) = split_cell(st, cell);
        match (p_part.dim(), q_part.dim()) {
            (pd, qd) if pd == d && qd == e - 1 => {
                p_links.entry(p_part.clone()).or_default().insert(q_part);
                p_cells.insert(p_part);
            }
            (pd, qd) if pd == d - 1 && qd == e => {
                q_links.entry(q_part.clone()).or_default().insert(p_part);
                q_cells.insert(q_part);
            }
            (pd, qd) if pd == d && qd == e => {
                p_links
                    .entry(p_part.clone())
                    .or_default()
                    .insert(q_part.without(q_origin));
                q_links
                    .entry(q_part.clone())
                    .or_default()
                    .insert(p_part.without(p_origin));
                p_cells.insert(p_part);
                q_cells.insert(q_part);
            }
            (pd, qd) => {
                return Err(SumError::CellPartDims { cell: cell.clone(), p_dim: pd, q_dim: qd })
            }
        }
    }

    // Cone-refine the side missing the region around the origin: the
    // links of the origin-holding cells on the covered side all bound it.
    match side {
        OriginSide::Vertex => {}
        OriginSide::P => {
            let link = shared_origin_link(st, t, &p_links, true)?;
            for c in cone_over(&st.q, &link.into_iter().collect::<Vec<_>>())? {
                q_cells.insert(c);
            }
        }
        OriginSide::Q => {
            let link = shared_origin_link(st, t, &q_links, false)?;
            for c in cone_over(&st.p, &link.into_iter().collect::<Vec<_>>())? {
                p_cells.insert(c);
            }
        }
    }

    let p_tri = Triangulation::new(st.p.clone(), p_cells.into_iter().collect())?;
    let q_tri = Triangulation::new(st.q.clone(), q_cells.into_iter().collect())?;
    let setting = WebSetting::new(p_tri, q_tri)?;

    let alpha = extract_web(&setting, &p_links, anchor == Anchor::P, /* p_side: */ true)?;
    let beta = extract_web(&setting, &q_links, anchor == Anchor::Q, /* p_side: */ false)?;

    // The pair must be mutually determined and well-behaved; these are
    // consequences of the theory, revalidated rather than trusted.
    if !is_compatible_pair(&setting, &alpha, &beta) {
        return Err(SumError::WebNotProper);
    }
    if is_order_preserving(setting.p_poset(), setting.q_balls(), &alpha).is_err()
        || is_order_preserving(setting.q_poset(), setting.p_balls(), &beta).is_err()
    {
        return Err(SumError::WebNotProper);
    }
    match anchor {
        Anchor::P => {
            if !is_pinned(&setting, &alpha) {
                return Err(SumError::WebNotAnchored);
            }
        }
        Anchor::Q => {
            if !is_pinned(&setting.reversed(), &beta) {
                return Err(SumError::WebNotAnchored);
            }
        }
    }

    Ok(Decomposition { side, setting, alpha, beta })
}

/// The far-side facets bounding the uncovered region around the origin,
/// read off the origin-holding cells; all such cells must agree (their
/// block parts all carry the same link).
fn shared_origin_link(
    st: &SumStructure,
    t: &Triangulation,
    links: &BTreeMap<Simplex, BTreeSet<Simplex>>,
    p_side: bool,
) -> Result<BTreeSet<Simplex>, SumError> {
    let zero = zero_vec(st.sum.dim());
    let sum_config = t.config();
    let mut shared: Option<BTreeSet<Simplex>> = None;
    for cell in t.cells() {
        if !point_in_simplex(&zero, &sum_config.coords_of(cell)) {
            continue;
        }
        let (p_part, q_part) = split_cell(st, cell);
        let own = if p_side { p_part } else { q_part };
        if own.dim() != if p_side { st.d() as isize } else { st.e() as isize } {
            // A cell at the origin whose near part is not full-dimensional
            // contradicts the classification of the origin's side.
            return Err(SumError::LinkMismatch);
        }
        let link = links.get(&own).cloned().unwrap_or_default();
        match &shared {
            None => shared = Some(link),
            Some(existing) if *existing == link => {}
            Some(_) => return Err(SumError::LinkMismatch),
        }
    }
    shared.ok_or(SumError::LinkMismatch)
}

/// Read one direction of the web off the link data: every source cell is
/// assigned the ball of far-side cells its radial region covers. Source
/// cells holding the origin map to the far star when this side is
/// anchored, and to the empty ball otherwise.
fn extract_web(
    setting: &WebSetting,
    links: &BTreeMap<Simplex, BTreeSet<Simplex>>,
    anchored: bool,
    p_side: bool,
) -> Result<Web, SumError> {
    let (source, target, target_balls) = if p_side {
        (setting.p(), setting.q(), setting.q_balls())
    } else {
        (setting.q(), setting.p(), setting.p_balls())
    };
    let target_config = target.config();
    let own_config = source.config();
    let origin = zero_vec(own_config.dim());
    let target_origin = zero_vec(target_config.dim());

    let mut web = Vec::with_capacity(source.cells().len());
    for cell in source.cells() {
        let holds_origin = point_in_simplex(&origin, &own_config.coords_of(cell));
        if holds_origin && !anchored {
            web.push(target_balls.empty_index());
            continue;
        }
        let Some(facets) = links.get(cell) else {
            // Cone-refined cells have no link data; anchored ones are at
            // the origin and pinned below via the region equality.
            if holds_origin {
                web.push(target_balls.star_index());
                continue;
            }
            return Err(SumError::RegionNotBall { cell: cell.clone() });
        };
        // The region reached radially: cones from the origin over the
        // link facets. A far cell belongs iff its centroid lies in one.
        let regions: Vec<Vec<crate::geom::RatVec>> = facets
            .iter()
            .map(|f| {
                let mut pts = vec![target_origin.clone()];
                pts.extend(target_config.coords_of(f));
                pts
            })
            .collect();
        let mut covered: Vec<usize> = Vec::new();
        for (j, far_cell) in target.cells().iter().enumerate() {
            let c = centroid(&target_config.coords_of(far_cell));
            if regions.iter().any(|r| point_in_simplex(&c, r)) {
                covered.push(j);
            }
        }
        let Some(ball) = target_balls.index_of(&covered) else {
            return Err(SumError::RegionNotBall { cell: cell.clone() });
        };
        // The covered cells must fill the region exactly: same boundary.
        let boundary: BTreeSet<Simplex> = boundary_facets(target, &covered).into_iter().collect();
        if boundary != *facets {
            return Err(SumError::BoundaryMismatch { cell: cell.clone() });
        }
        if holds_origin && ball != target_balls.star_index() {
            return Err(SumError::BoundaryMismatch { cell: cell.clone() });
        }
        web.push(ball);
    }
    Ok(web)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generators::interval;
    use crate::complex::{free_sum, verify::verify_triangulation, PointConfiguration};
    use crate::geom::rat;
    use std::sync::Arc;

    fn tri(c: &Arc<PointConfiguration>, cells: &[&[usize]]) -> Triangulation {
        Triangulation::new(c.clone(), cells.iter().map(|v| Simplex::new(v.to_vec())).collect())
            .unwrap()
    }

    /// P = {−1,0,1,2}, Q = {−1,0,1}: the 2-dimensional sum has P along the
    /// first axis (indices 0..3, origin 1) and ±1 on the second (indices
    /// 4, 5).
    fn line_sum() -> SumStructure {
        let p = Arc::new(interval(&[-1, 0, 1, 2]));
        let q = Arc::new(interval(&[-1, 0, 1]));
        free_sum(p, q).unwrap()
    }

    #[test]
    fn test_split_cell() {
        let st = line_sum();
        // Cell {(−1,0),(0,0),(0,1)}: sum indices — P block 0..3 with
        // origin at 1, Q block −1 ↦ 4, 1 ↦ 5.
        let (p, q) = split_cell(&st, &Simplex::new(vec![0, 1, 5]));
        assert_eq!(p, Simplex::new(vec![0, 1]));
        assert_eq!(q, Simplex::new(vec![1, 2])); // q-origin index 1, 1 ↦ 2
        let (p, q) = split_cell(&st, &Simplex::new(vec![0, 4]));
        assert_eq!(p, Simplex::new(vec![0]));
        assert_eq!(q, Simplex::new(vec![0]));
    }

    #[test]
    fn test_construct_full_chain() {
        // Δ_P the full 3-chain, Δ_Q the full 2-chain, web ≡ full ball:
        // six maximal cells; the origin is a vertex.
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 1], &[1, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 1], &[1, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        let full = setting.q_balls().len() - 1;
        let t = construct(&st, &setting, &vec![full, full, full]).unwrap();
        assert_eq!(t.cells().len(), 6);
        assert!(verify_triangulation(&t).is_valid());
        assert_eq!(origin_side(&st, &t).unwrap(), OriginSide::Vertex);
        // Hull is the quadrilateral (−1,0),(0,1),(2,0),(0,−1) of area 3.
        assert_eq!(t.total_volume(), rat(3));
    }

    #[test]
    fn test_construct_rejects_unanchored() {
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 1], &[1, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 1], &[1, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        // Sending a minimal P-cell to ∅ breaks both anchorings (the
        // transpose then sends some Q-cell to a non-star ball).
        let err = construct(&st, &setting, &vec![0, 0, 0]).unwrap_err();
        assert!(matches!(err, SumError::WebNotAnchored | SumError::WebNotProper));
    }

    #[test]
    fn test_roundtrip_vertex_side() {
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 1], &[1, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 1], &[1, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        let full = setting.q_balls().len() - 1;
        let alpha = vec![full, full, full];
        let t = construct(&st, &setting, &alpha).unwrap();

        let dec = decompose(&st, &t).unwrap();
        assert_eq!(dec.side, OriginSide::Vertex);
        assert_eq!(dec.setting.p().cells(), setting.p().cells());
        assert_eq!(dec.setting.q().cells(), setting.q().cells());
        assert_eq!(dec.alpha, alpha);
        assert_eq!(dec.beta, vec![0, 0]);
        let again = construct(&st, &dec.setting, &dec.alpha).unwrap();
        assert_eq!(again.cells(), t.cells());
    }

    #[test]
    fn test_roundtrip_origin_in_p_block() {
        // Δ_P = ⟨[−1,1],[1,2]⟩ leaves the origin inside a cell: the
        // decomposition runs through the cone refinement of the Q side.
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 1], &[1, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        let full = setting.q_balls().len() - 1;
        let alpha = vec![full, full];
        let t = construct(&st, &setting, &alpha).unwrap();
        assert_eq!(t.cells().len(), 4);
        assert!(verify_triangulation(&t).is_valid());
        assert_eq!(origin_side(&st, &t).unwrap(), OriginSide::P);

        let dec = decompose(&st, &t).unwrap();
        assert_eq!(dec.side, OriginSide::P);
        // Δ_Q is reconstructed as the cone over the region boundary: the
        // full 2-chain again.
        assert_eq!(
            dec.setting.q().cells(),
            &[Simplex::new(vec![0, 1]), Simplex::new(vec![1, 2])]
        );
        assert_eq!(dec.setting.p().cells(), setting.p().cells());
        assert!(is_pinned(&dec.setting, &dec.alpha));
        let again = construct(&st, &dec.setting, &dec.alpha).unwrap();
        assert_eq!(again.cells(), t.cells());
    }

    #[test]
    fn test_roundtrip_origin_in_q_block() {
        // The anchored side is Q: Δ_Q = ⟨[−1,1]⟩ with the origin interior,
        // web pinned through the transpose, α vanishing on the P-star.
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 1], &[1, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        // α: the star cells of Δ_P to ∅, the far cell [1,2] to the full
        // single-cell ball.
        let full = setting.q_balls().len() - 1;
        let alpha = vec![0, 0, full];
        let t = construct(&st, &setting, &alpha).unwrap();
        assert_eq!(t.cells().len(), 4);
        assert!(verify_triangulation(&t).is_valid());
        assert_eq!(origin_side(&st, &t).unwrap(), OriginSide::Q);

        let dec = decompose(&st, &t).unwrap();
        assert_eq!(dec.side, OriginSide::Q);
        assert_eq!(dec.alpha, alpha);
        // β sends the single Δ_Q cell to the star of Δ_P.
        assert_eq!(dec.beta[0], dec.setting.p_balls().star_index());
        let again = construct(&st, &dec.setting, &dec.alpha).unwrap();
        assert_eq!(again.cells(), t.cells());
    }

    #[test]
    fn test_decompose_anchor_unavailable() {
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 1], &[1, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        let full = setting.q_balls().len() - 1;
        let t = construct(&st, &setting, &vec![full, full]).unwrap();
        assert!(matches!(
            decompose_anchored(&st, &t, Anchor::Q),
            Err(SumError::SideUnavailable { .. })
        ));
    }

    #[test]
    fn test_vertex_side_admits_both_anchors() {
        // With the origin a vertex, both anchorings decompose, giving the
        // two distinct web pairs describing the same triangulation.
        let st = line_sum();
        let tp = tri(&st.p, &[&[0, 1], &[1, 2], &[2, 3]]);
        let tq = tri(&st.q, &[&[0, 1], &[1, 2]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        let full = setting.q_balls().len() - 1;
        let alpha = vec![full, full, full];
        let t = construct(&st, &setting, &alpha).unwrap();

        let as_p = decompose_anchored(&st, &t, Anchor::P).unwrap();
        assert_eq!(as_p.alpha, alpha);
        assert_eq!(as_p.beta, vec![0, 0]);

        let as_q = decompose_anchored(&st, &t, Anchor::Q).unwrap();
        // Mirrored web: α vanishes on the star cells of Δ_P ([−1,0] and
        // [0,1], cells 0 and 1) and reaches the whole Δ_Q from [1,2];
        // β pins both Δ_Q cells to the star of Δ_P.
        assert_eq!(as_q.alpha, vec![0, 0, full]);
        let star_p = as_q.setting.p_balls().star_index();
        assert_eq!(as_q.beta, vec![star_p, star_p]);
        let again = construct(&st, &as_q.setting, &as_q.alpha).unwrap();
        assert_eq!(again.cells(), t.cells());
    }

    #[test]
    fn test_pentagon_grid_sum() {
        // P: a pentagon with an interior origin, fanned from (0,1) so the
        // origin is interior to one cell. Q: the 3×3 lattice square with a
        // 4-cell triangulation leaving the origin interior to one cell.
        let p = Arc::new(
            PointConfiguration::new(vec![
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(-1), rat(1)],
                vec![rat(-1), rat(0)],
                vec![rat(1), rat(-1)],
                vec![rat(0), rat(0)],
            ])
            .unwrap(),
        );
        let q = Arc::new(
            PointConfiguration::new(
                (-1..=1)
                    .flat_map(|y| (-1..=1).map(move |x| vec![rat(x), rat(y)]))
                    .collect(),
            )
            .unwrap(),
        );
        let st = free_sum(p, q).unwrap();
        let tp = tri(&st.p, &[&[1, 2, 3], &[1, 3, 4], &[0, 1, 4]]);
        let tq = tri(&st.q, &[&[0, 6, 7], &[0, 5, 7], &[5, 7, 8], &[0, 2, 5]]);
        let setting = WebSetting::new(tp, tq).unwrap();
        // Sorted P-cells: {0,1,4}, {1,2,3}, {1,3,4} (the origin interior
        // to the last). Sorted Q-cells: {0,2,5}, {0,5,7}, {0,6,7}, {5,7,8}
        // with the origin interior to {0,5,7}.
        let at = |cells: &[usize]| setting.q_balls().index_of(cells).unwrap();
        let alpha: Web = vec![at(&[0, 1, 3]), at(&[1, 2, 3]), at(&[1])];
        assert!(is_pinned(&setting, &alpha));
        let t = construct(&st, &setting, &alpha).unwrap();
        assert_eq!(t.cells().len(), 24);
        assert_eq!(t.used_vertices().len(), 11);
        assert!(verify_triangulation(&t).is_valid());

        // The web's transpose on the Q side: the origin cell reaches
        // nothing, the rest reach across as dictated by complementarity.
        let beta = complement_transpose(&setting, &alpha).unwrap();
        let pat = |cells: &[usize]| setting.p_balls().index_of(cells).unwrap();
        assert_eq!(beta, vec![pat(&[1, 2]), pat(&[]), pat(&[0, 2]), pat(&[2])]);

        // Decomposing regenerates the web over a cone-refined Δ_Q: the
        // origin cell {0,5,7} splits into three cells at the origin.
        let dec = decompose(&st, &t).unwrap();
        assert_eq!(dec.side, OriginSide::P);
        assert_eq!(dec.setting.q().cells().len(), 6);
        assert_eq!(dec.setting.p().cells(), setting.p().cells());
        let again = construct(&st, &dec.setting, &dec.alpha).unwrap();
        assert_eq!(again.cells(), t.cells());
    }

    #[test]
    fn test_twisted_web_constructs_known_diamond() {
        // P = Q = {−2,−1,0,1,2}, both chains fully subdivided, with the
        // web reaching across asymmetrically; the resulting 12-cell
        // triangulation is the standard non-regular diamond witness.
        let p = Arc::new(interval(&[-2, -1, 0, 1, 2]));
        let q = Arc::new(interval(&[-2, -1, 0, 1, 2]));
        let st = free_sum(p, q).unwrap();
        let chain: Vec<&[usize]> = vec![&[0, 1], &[1, 2], &[2, 3], &[3, 4]];
        let tp = tri(&st.p, &chain);
        let tq = tri(&st.q, &chain);
        let setting = WebSetting::new(tp, tq).unwrap();
        let at = |cells: &[usize]| setting.q_balls().index_of(cells).unwrap();
        let star = at(&[1, 2]);
        let left = at(&[0, 1, 2]);
        let right = at(&[1, 2, 3]);
        let alpha: Web = vec![right, star, star, left];
        let t = construct(&st, &setting, &alpha).unwrap();
        assert_eq!(t.cells().len(), 12);
        assert!(verify_triangulation(&t).is_valid());

        let dec = decompose(&st, &t).unwrap();
        assert_eq!(dec.side, OriginSide::Vertex);
        assert_eq!(dec.alpha, alpha);
        let again = construct(&st, &dec.setting, &dec.alpha).unwrap();
        assert_eq!(again.cells(), t.cells());
    }
}
