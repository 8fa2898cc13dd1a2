//! Counting webs and sum triangulations over all pairs of summand
//! triangulation classes.
//!
//! For each ordered pair of class representatives (Δ_P, Δ_Q) the census
//! counts proper pinned webs in both orientations (anchored on the P side
//! and on the Q side). Several counting conventions are reported side by
//! side; the headline `homomorphisms` figure counts P-anchored webs up to
//! the symmetries of their source: two webs are identified when a linear
//! symmetry of P fixing Δ_P (as a cell set) carries one to the other by
//! relabeling the domain cells. That single-side reduction is the
//! convention that reproduces the published counts — the raw totals and
//! the stronger both-factor reduction bracket it and are included so the
//! choice stays visible in the data rather than baked in. Optionally
//! every web is materialized into its sum triangulation, deduplicated by
//! canonical form under the symmetry group of the sum, and tested for
//! regularity.
//!
//! Class counting is streaming: a web is counted when it is the
//! lexicographic minimum of its orbit, so counting-only runs keep memory
//! proportional to the backtracking frontier, never the web total.

use super::{
    apply_permutation, automorphism_group, canonical_cells, SymmetryError, SymmetryGroup,
};
use crate::complex::regularity::is_regular;
use crate::complex::{ComplexError, Simplex, SumStructure, Triangulation};
use crate::starballs::StarBallFamily;
use crate::sumtri::{construct, SumError};
use crate::webs::{complement_transpose, walk_pinned_webs, Web, WebError, WebSetting};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Enumerate(#[from] crate::complex::enumerate::EnumerateError),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Sum(#[from] SumError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("memory use {used} bytes exceeds the budget of {budget} bytes")]
    MemoryBudget { used: u64, budget: u64, partial: Box<CountReport> },
}

#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    /// Construct, deduplicate, and regularity-test the sum triangulations
    /// (off: counting only, memory stays proportional to the frontier).
    pub materialize: bool,
    /// Worker threads for the pair loop (None: rayon's default).
    pub threads: Option<usize>,
    /// Abort cleanly when resident memory exceeds this many bytes.
    pub memory_budget: Option<u64>,
}

/// Web counts for one ordered pair of class representatives.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PairCount {
    pub p_class: usize,
    pub q_class: usize,
    /// Proper webs anchored on the P side (minimal P-cells pinned to the
    /// Q-star), raw.
    pub psum: u64,
    /// P-anchored webs up to the source triangulation's stabilizer
    /// relabeling its cells — the headline convention.
    pub psum_source_classes: u64,
    /// P-anchored webs up to both factors' stabilizers acting jointly
    /// (source cells and image balls).
    pub psum_pair_classes: u64,
    /// Proper webs anchored on the Q side, raw.
    pub qsum: u64,
    pub qsum_source_classes: u64,
    pub qsum_pair_classes: u64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CountReport {
    pub p_classes: usize,
    pub q_classes: usize,
    /// Headline: P-anchored webs over ordered class pairs, each pair
    /// counted up to the stabilizer of the source triangulation. This is
    /// the convention that matches the published sum tables.
    pub homomorphisms: u64,
    /// The mirror count (Q-anchored webs under the same reduction).
    pub homomorphisms_reversed: u64,
    /// Raw web totals (no symmetry reduction), for comparison.
    pub psum_ordered: u64,
    pub qsum_ordered: u64,
    pub both_ordered: u64,
    /// Totals under the stronger both-factor stabilizer reduction.
    pub psum_pair_classes: u64,
    pub qsum_pair_classes: u64,
    /// Orbits of (pair, orientation, web) under swapping the two factors;
    /// only defined when the factor configurations are identical.
    pub swap_classes: Option<u64>,
    /// Distinct sum triangulations up to the sum's linear symmetries
    /// (materializing runs only).
    pub distinct_triangulations: Option<u64>,
    /// How many of the distinct sum triangulations are regular.
    pub regular_triangulations: Option<u64>,
    pub pairs: Vec<PairCount>,
}

/// Resident set size in bytes, from /proc/self/statm (None off Linux).
pub fn current_rss_bytes() -> Option<u64> {
    let statm = std::fs::read_to_string("/proc/self/statm").ok()?;
    let pages: u64 = statm.split_whitespace().nth(1)?.parse().ok()?;
    Some(pages * 4096)
}

struct PairOutcome {
    count: PairCount,
    /// Canonical key → one concrete representative, when materializing.
    reps: BTreeMap<Vec<Simplex>, Triangulation>,
}

pub fn census(
    st: &SumStructure,
    p_reps: &[Triangulation],
    q_reps: &[Triangulation],
    opts: &CensusOptions,
) -> Result<CountReport, CensusError> {
    let sum_group = if opts.materialize {
        Some(automorphism_group(&st.sum))
    } else {
        None
    };
    let p_group = automorphism_group(&st.p);
    let q_group = automorphism_group(&st.q);

    let pairs: Vec<(usize, usize)> = (0..p_reps.len())
        .flat_map(|i| (0..q_reps.len()).map(move |j| (i, j)))
        .collect();
    let aborted = AtomicBool::new(false);

    let work = |&(i, j): &(usize, usize)| -> Result<PairOutcome, CensusError> {
        if let Some(budget) = opts.memory_budget {
            if aborted.load(Ordering::Relaxed) {
                // A sibling already tripped the budget; produce nothing.
                return Ok(PairOutcome {
                    count: PairCount {
                        p_class: i,
                        q_class: j,
                        psum: 0,
                        psum_source_classes: 0,
                        psum_pair_classes: 0,
                        qsum: 0,
                        qsum_source_classes: 0,
                        qsum_pair_classes: 0,
                    },
                    reps: BTreeMap::new(),
                });
            }
            if let Some(used) = current_rss_bytes() {
                if used > budget {
                    aborted.store(true, Ordering::Relaxed);
                    return Err(CensusError::MemoryBudget {
                        used,
                        budget,
                        partial: Box::new(empty_report(p_reps.len(), q_reps.len())),
                    });
                }
            }
        }
        pair_outcome(
            st,
            p_reps,
            q_reps,
            i,
            j,
            &p_group,
            &q_group,
            sum_group.as_ref(),
            opts.materialize,
        )
    };

    let results: Vec<Result<PairOutcome, CensusError>> = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(|| pairs.par_iter().map(work).collect()),
        None => pairs.par_iter().map(work).collect(),
    };

    // Fold deterministically; on a budget abort, report what completed.
    let mut pair_counts: Vec<PairCount> = Vec::with_capacity(pairs.len());
    let mut all_reps: BTreeMap<Vec<Simplex>, Triangulation> = BTreeMap::new();
    let mut budget_hit: Option<(u64, u64)> = None;
    for r in results {
        match r {
            Ok(outcome) => {
                pair_counts.push(outcome.count);
                for (k, v) in outcome.reps {
                    all_reps.entry(k).or_insert(v);
                }
            }
            Err(CensusError::MemoryBudget { used, budget, .. }) => {
                budget_hit = Some((used, budget));
            }
            Err(e) => return Err(e),
        }
    }

    let mut report = empty_report(p_reps.len(), q_reps.len());
    report.homomorphisms = pair_counts.iter().map(|p| p.psum_source_classes).sum();
    report.homomorphisms_reversed = pair_counts.iter().map(|p| p.qsum_source_classes).sum();
    report.psum_pair_classes = pair_counts.iter().map(|p| p.psum_pair_classes).sum();
    report.qsum_pair_classes = pair_counts.iter().map(|p| p.qsum_pair_classes).sum();
    report.psum_ordered = pair_counts.iter().map(|p| p.psum).sum();
    report.qsum_ordered = pair_counts.iter().map(|p| p.qsum).sum();
    report.both_ordered = report.psum_ordered + report.qsum_ordered;
    if st.p.points() == st.q.points() {
        // Swapping the factors is a fixed-point-free involution on the
        // both-orientation stream (it flips the orientation).
        debug_assert_eq!(report.both_ordered % 2, 0);
        report.swap_classes = Some(report.both_ordered / 2);
    }
    report.pairs = pair_counts;

    if let Some((used, budget)) = budget_hit {
        return Err(CensusError::MemoryBudget { used, budget, partial: Box::new(report) });
    }

    if opts.materialize {
        let distinct: Vec<&Triangulation> = all_reps.values().collect();
        let regular = distinct
            .par_iter()
            .filter(|t| is_regular(t).0)
            .count() as u64;
        report.distinct_triangulations = Some(distinct.len() as u64);
        report.regular_triangulations = Some(regular);
    }
    Ok(report)
}

fn empty_report(p_classes: usize, q_classes: usize) -> CountReport {
    CountReport {
        p_classes,
        q_classes,
        homomorphisms: 0,
        homomorphisms_reversed: 0,
        psum_ordered: 0,
        qsum_ordered: 0,
        both_ordered: 0,
        psum_pair_classes: 0,
        qsum_pair_classes: 0,
        swap_classes: None,
        distinct_triangulations: None,
        regular_triangulations: None,
        pairs: Vec::new(),
    }
}

/// Index permutation a point permutation induces on a sorted cell list.
fn induced_cell_perm(perm: &[usize], cells: &[Simplex]) -> Vec<usize> {
    cells
        .iter()
        .map(|s| {
            let moved = Simplex::new(s.vertices().iter().map(|&v| perm[v]).collect());
            cells.binary_search(&moved).expect("stabilizer permutes the cells")
        })
        .collect()
}

/// Index permutation a cell permutation induces on a ball family.
fn induced_ball_perm(cell_perm: &[usize], family: &StarBallFamily) -> Vec<usize> {
    family
        .balls()
        .iter()
        .map(|ball| {
            let mut moved: Vec<usize> = ball.iter().map(|&c| cell_perm[c]).collect();
            moved.sort_unstable();
            family.index_of(&moved).expect("stabilizer permutes the balls")
        })
        .collect()
}

/// Cell relabelings induced by the symmetries of the factor that fix the
/// triangulation as a set.
fn stabilizer_cell_perms(group: &SymmetryGroup, t: &Triangulation) -> Vec<Vec<usize>> {
    group
        .permutations()
        .filter(|perm| apply_permutation(perm, t.cells()) == t.cells())
        .map(|perm| induced_cell_perm(perm, t.cells()))
        .collect()
}

/// Whether `web` is the lexicographic minimum of its orbit under the
/// source stabilizer (relabeling domain cells) and, when `ball_perms` is
/// given, the joint action that also permutes the image balls. Counting
/// minima counts orbits without storing the webs.
fn is_orbit_minimum(
    web: &[usize],
    cell_perms: &[Vec<usize>],
    ball_perms: Option<&[Vec<usize>]>,
    image: &mut Vec<usize>,
) -> bool {
    image.resize(web.len(), 0);
    for cp in cell_perms {
        match ball_perms {
            None => {
                for (c, &b) in web.iter().enumerate() {
                    image[cp[c]] = b;
                }
                if image.as_slice() < web {
                    return false;
                }
            }
            Some(bps) => {
                for bp in bps {
                    for (c, &b) in web.iter().enumerate() {
                        image[cp[c]] = bp[b];
                    }
                    if image.as_slice() < web {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Raw, source-reduced, and pair-reduced counts for one anchoring
/// direction; webs are streamed through `build` when materializing.
fn count_direction(
    setting: &WebSetting,
    source_cell_perms: &[Vec<usize>],
    target_ball_perms: &[Vec<usize>],
    mut build: Option<&mut dyn FnMut(&Web) -> Result<(), CensusError>>,
) -> Result<(u64, u64, u64), CensusError> {
    let mut raw = 0u64;
    let mut source_classes = 0u64;
    let mut pair_classes = 0u64;
    let mut scratch = Vec::new();
    let mut first_err: Option<CensusError> = None;
    walk_pinned_webs(setting, &mut |web| {
        raw += 1;
        if is_orbit_minimum(web, source_cell_perms, None, &mut scratch) {
            source_classes += 1;
        }
        if is_orbit_minimum(web, source_cell_perms, Some(target_ball_perms), &mut scratch) {
            pair_classes += 1;
        }
        if first_err.is_none() {
            if let Some(f) = &mut build {
                if let Err(e) = f(web) {
                    first_err = Some(e);
                }
            }
        }
    });
    match first_err {
        Some(e) => Err(e),
        None => Ok((raw, source_classes, pair_classes)),
    }
}

#[allow(clippy::too_many_arguments)]
fn pair_outcome(
    st: &SumStructure,
    p_reps: &[Triangulation],
    q_reps: &[Triangulation],
    i: usize,
    j: usize,
    p_group: &SymmetryGroup,
    q_group: &SymmetryGroup,
    sum_group: Option<&SymmetryGroup>,
    materialize: bool,
) -> Result<PairOutcome, CensusError> {
    let setting = WebSetting::new(p_reps[i].clone(), q_reps[j].clone())?;
    let reversed = setting.reversed();
    let mut reps: BTreeMap<Vec<Simplex>, Triangulation> = BTreeMap::new();

    let p_cell_perms = stabilizer_cell_perms(p_group, setting.p());
    let q_cell_perms = stabilizer_cell_perms(q_group, setting.q());
    let p_ball_perms: Vec<Vec<usize>> = p_cell_perms
        .iter()
        .map(|cp| induced_ball_perm(cp, setting.p_balls()))
        .collect();
    let q_ball_perms: Vec<Vec<usize>> = q_cell_perms
        .iter()
        .map(|cp| induced_ball_perm(cp, setting.q_balls()))
        .collect();

    let (psum, psum_source_classes, psum_pair_classes) = {
        let mut build = |web: &Web| -> Result<(), CensusError> {
            insert_rep(&mut reps, sum_group, construct(st, &setting, web)?);
            Ok(())
        };
        count_direction(
            &setting,
            &p_cell_perms,
            &q_ball_perms,
            if materialize { Some(&mut build) } else { None },
        )?
    };

    let (qsum, qsum_source_classes, qsum_pair_classes) = {
        let mut build = |web: &Web| -> Result<(), CensusError> {
            // A Q-anchored web maps Δ_Q cells to Δ_P balls; its complement
            // transpose is the α the forward construction consumes.
            let alpha = complement_transpose(&reversed, web)
                .ok_or(CensusError::Sum(SumError::WebNotProper))?;
            insert_rep(&mut reps, sum_group, construct(st, &setting, &alpha)?);
            Ok(())
        };
        count_direction(
            &reversed,
            &q_cell_perms,
            &p_ball_perms,
            if materialize { Some(&mut build) } else { None },
        )?
    };

    Ok(PairOutcome {
        count: PairCount {
            p_class: i,
            q_class: j,
            psum,
            psum_source_classes,
            psum_pair_classes,
            qsum,
            qsum_source_classes,
            qsum_pair_classes,
        },
        reps,
    })
}

/// Record one materialized sum triangulation under its canonical key.
fn insert_rep(
    reps: &mut BTreeMap<Vec<Simplex>, Triangulation>,
    sum_group: Option<&SymmetryGroup>,
    t: Triangulation,
) {
    let key = canonical_cells(t.cells(), sum_group.expect("group built"))
        .expect("group acts on the sum's points");
    reps.entry(key).or_insert(t);
}

/// Brute-force the factor's triangulations and reduce to class
/// representatives under its linear symmetries: the standard way census
/// inputs are produced for generator shapes.
pub fn class_representatives(
    config: &std::sync::Arc<crate::complex::PointConfiguration>,
    guard: crate::complex::enumerate::EnumerationGuard,
) -> Result<Vec<Triangulation>, CensusError> {
    let all = crate::complex::enumerate::brute_force_triangulations(config, guard)?;
    let group = automorphism_group(config);
    let reps = super::orbit_classes(&all, &group)?;
    Ok(reps.into_iter().map(|i| all[i].clone()).collect())
}
