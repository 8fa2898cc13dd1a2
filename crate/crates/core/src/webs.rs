//! Webs of stars: monotone assignments from the full-dimensional cells of
//! one triangulation to the strictly star-shaped balls of another.
//!
//! Fix triangulations Δ_P and Δ_Q of two configurations, each with the
//! origin interior. A web is a map α sending every full-dimensional cell of
//! Δ_P to a ball of Δ_Q; the web is order-preserving when cells lower in
//! the stabbing order receive included balls. Every web α induces a
//! companion map β in the opposite direction by complement transposition:
//!
//!     β(τ) is generated by the cells σ of Δ_P with τ ∉ α(σ),
//!
//! and the pair is compatible exactly when membership is anti-symmetric:
//! σ ∈ β(τ) ⟺ τ ∉ α(σ). A web is *proper* when every transposed value is
//! empty or again a ball and β is itself order-preserving.
//!
//! The *pinned* webs single out the sum-triangulation generators: every
//! stabbing-minimal cell (the star of the origin) must map exactly onto the
//! star of the origin on the far side. [`enumerate_pinned_webs`] streams
//! all proper pinned webs deterministically.

use crate::complex::Triangulation;
use crate::stabbing::{stabbing_poset, StabbingError, StabbingPoset};
use crate::starballs::{enumerate_star_balls, StarBallError, StarBallFamily};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WebError {
    #[error(transparent)]
    Stabbing(#[from] StabbingError),
    #[error(transparent)]
    StarBall(#[from] StarBallError),
    #[error("web assigns {got} values to a triangulation with {cells} cells")]
    LengthMismatch { cells: usize, got: usize },
    #[error("web refers to ball index {index}, family has {len}")]
    BallIndexOutOfRange { index: usize, len: usize },
}

/// A web as a dense assignment: `web[i]` is the index (in the target
/// [`StarBallFamily`]) of the ball assigned to source cell `i` (in the
/// source triangulation's sorted cell order).
pub type Web = Vec<usize>;

/// The two triangulations with their stabbing posets and ball families,
/// oriented so webs run Δ_P-cells → Δ_Q-balls.
#[derive(Debug, Clone)]
pub struct WebSetting {
    p: Triangulation,
    q: Triangulation,
    p_poset: StabbingPoset,
    q_poset: StabbingPoset,
    p_balls: StarBallFamily,
    q_balls: StarBallFamily,
}

impl WebSetting {
    pub fn new(p: Triangulation, q: Triangulation) -> Result<Self, WebError> {
        let p_poset = stabbing_poset(&p)?;
        let q_poset = stabbing_poset(&q)?;
        let p_balls = enumerate_star_balls(&p)?;
        let q_balls = enumerate_star_balls(&q)?;
        Ok(WebSetting { p, q, p_poset, q_poset, p_balls, q_balls })
    }

    /// The same data with the two sides swapped: webs then run
    /// Δ_Q-cells → Δ_P-balls.
    pub fn reversed(&self) -> WebSetting {
        WebSetting {
            p: self.q.clone(),
            q: self.p.clone(),
            p_poset: self.q_poset.clone(),
            q_poset: self.p_poset.clone(),
            p_balls: self.q_balls.clone(),
            q_balls: self.p_balls.clone(),
        }
    }

    pub fn p(&self) -> &Triangulation {
        &self.p
    }

    pub fn q(&self) -> &Triangulation {
        &self.q
    }

    pub fn p_poset(&self) -> &StabbingPoset {
        &self.p_poset
    }

    pub fn q_poset(&self) -> &StabbingPoset {
        &self.q_poset
    }

    pub fn p_balls(&self) -> &StarBallFamily {
        &self.p_balls
    }

    pub fn q_balls(&self) -> &StarBallFamily {
        &self.q_balls
    }

    fn check_web(&self, web: &Web) -> Result<(), WebError> {
        if web.len() != self.p_poset.len() {
            return Err(WebError::LengthMismatch { cells: self.p_poset.len(), got: web.len() });
        }
        for &b in web {
            if b >= self.q_balls.len() {
                return Err(WebError::BallIndexOutOfRange { index: b, len: self.q_balls.len() });
            }
        }
        Ok(())
    }
}

/// Does the web respect the stabbing order? Checked on covering pairs,
/// which suffices because ball inclusion is transitive. On failure the
/// violating covering pair (lower cell, upper cell) is returned.
pub fn is_order_preserving(
    poset: &StabbingPoset,
    balls: &StarBallFamily,
    web: &Web,
) -> Result<(), (usize, usize)> {
    for &(i, j) in poset.hasse_edges() {
        if !balls.included(web[i], web[j]) {
            return Err((i, j));
        }
    }
    Ok(())
}

/// Every stabbing-minimal cell maps exactly onto the star of the origin.
pub fn is_pinned(setting: &WebSetting, web: &Web) -> bool {
    let star = setting.q_balls.star_index();
    setting.p_poset.minimal_elements().iter().all(|&i| web[i] == star)
}

/// The complement transpose: target cell τ is sent to the set of source
/// cells whose assigned ball misses τ. Returns the induced web on the
/// reversed setting, or None when some transposed set is neither empty nor
/// a ball of Δ_P.
pub fn complement_transpose(setting: &WebSetting, web: &Web) -> Option<Web> {
    let nq = setting.q_poset.len();
    let np = setting.p_poset.len();
    let mut out = Vec::with_capacity(nq);
    for tau in 0..nq {
        let cells: Vec<usize> = (0..np)
            .filter(|&sigma| setting.q_balls.ball(web[sigma]).binary_search(&tau).is_err())
            .collect();
        if cells.is_empty() {
            out.push(setting.p_balls.empty_index());
        } else {
            out.push(setting.p_balls.index_of(&cells)?);
        }
    }
    Some(out)
}

/// Full compatibility biconditional between a web and a candidate reverse
/// web: σ ∈ β(τ) ⟺ τ ∉ α(σ), over every cell pair.
pub fn is_compatible_pair(setting: &WebSetting, alpha: &Web, beta: &Web) -> bool {
    let np = setting.p_poset.len();
    let nq = setting.q_poset.len();
    for sigma in 0..np {
        for tau in 0..nq {
            let in_beta = setting.p_balls.ball(beta[tau]).binary_search(&sigma).is_ok();
            let in_alpha = setting.q_balls.ball(alpha[sigma]).binary_search(&tau).is_ok();
            if in_beta == in_alpha {
                return false;
            }
        }
    }
    true
}

/// Proper: the complement transpose lands in balls and is itself
/// order-preserving.
pub fn is_proper(setting: &WebSetting, web: &Web) -> bool {
    let Some(beta) = complement_transpose(setting, web) else {
        return false;
    };
    is_order_preserving(&setting.q_poset, &setting.p_balls, &beta).is_ok()
}

/// Walk all proper pinned webs, calling `emit` on each. Backtracks along
/// a linear extension of the stabbing order: minimal cells are forced to
/// the star, later cells range over balls including every strict
/// predecessor's ball. Visit order follows the linear extension, not the
/// cell order; collect and sort for a canonical sequence.
pub fn walk_pinned_webs(setting: &WebSetting, emit: &mut dyn FnMut(&Web)) {
    let order = setting.p_poset.linear_extension();
    let np = setting.p_poset.len();
    let star = setting.q_balls.star_index();
    let n_balls = setting.q_balls.len();
    let mut web: Web = vec![usize::MAX; np];

    fn assign(
        setting: &WebSetting,
        order: &[usize],
        depth: usize,
        star: usize,
        n_balls: usize,
        web: &mut Web,
        emit: &mut dyn FnMut(&Web),
    ) {
        if depth == order.len() {
            if is_proper(setting, web) {
                emit(web);
            }
            return;
        }
        let cell = order[depth];
        let choices: Vec<usize> = if setting.p_poset.minimal_elements().contains(&cell) {
            vec![star]
        } else {
            // Any nonempty ball including the balls of all already-assigned
            // strict predecessors (every predecessor precedes `cell` in a
            // linear extension, so all are assigned).
            (1..n_balls)
                .filter(|&b| {
                    setting
                        .p_poset
                        .predecessors(cell)
                        .iter()
                        .all(|&pred| setting.q_balls.included(web[pred], b))
                })
                .collect()
        };
        for b in choices {
            web[cell] = b;
            assign(setting, order, depth + 1, star, n_balls, web, emit);
        }
        web[cell] = usize::MAX;
    }

    assign(setting, &order, 0, star, n_balls, &mut web, emit);
}

/// All proper pinned webs, in deterministic (lexicographic over the cell
/// order) sequence.
pub fn enumerate_pinned_webs(setting: &WebSetting) -> Vec<Web> {
    let mut found = Vec::new();
    walk_pinned_webs(setting, &mut |w| found.push(w.clone()));
    found.sort();
    found
}

/// Validate an externally supplied web against a setting (length and ball
/// indices), returning it checked.
pub fn validate_web(setting: &WebSetting, web: &Web) -> Result<(), WebError> {
    setting.check_web(web)
}
