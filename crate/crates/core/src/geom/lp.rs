//! Exact linear programming over the rationals.
//!
//! Two-phase primal simplex on a dense tableau with Bland's anti-cycling
//! pivot rule, so every solve terminates and is deterministic. Variables are
//! free (each is split into a difference of two nonnegative ones
//! internally); constraints may mix ≤, =, ≥. Infeasibility comes with a
//! Farkas certificate that is verified before it is returned.

use super::{dot, zero_vec, Rat, RatVec};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelOp {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: RatVec,
    pub op: RelOp,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: RatVec, rhs: Rat) -> Self {
        Constraint { coeffs, op: RelOp::Le, rhs }
    }
    pub fn ge(coeffs: RatVec, rhs: Rat) -> Self {
        Constraint { coeffs, op: RelOp::Ge, rhs }
    }
    pub fn eq(coeffs: RatVec, rhs: Rat) -> Self {
        Constraint { coeffs, op: RelOp::Eq, rhs }
    }

    /// Slack of the constraint at `x`: distance to the bound, nonnegative
    /// exactly when the constraint is satisfied (zero for equalities).
    pub fn slack_at(&self, x: &[Rat]) -> Rat {
        let lhs = dot(&self.coeffs, x);
        match self.op {
            RelOp::Le => &self.rhs - lhs,
            RelOp::Ge => lhs - &self.rhs,
            RelOp::Eq => -(lhs - &self.rhs).abs(),
        }
    }

    pub fn satisfied_at(&self, x: &[Rat]) -> bool {
        match self.op {
            RelOp::Eq => dot(&self.coeffs, x) == self.rhs,
            _ => !self.slack_at(x).is_negative(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum LpResult {
    Optimal { value: Rat, point: RatVec },
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug)]
pub enum Feasibility {
    /// A rational point satisfying every constraint.
    Feasible(RatVec),
    /// Farkas multipliers, one per constraint: nonnegative on ≤ rows,
    /// nonpositive on ≥ rows, free on = rows, with Σ yᵢ·rowᵢ = 0 and
    /// Σ yᵢ·rhsᵢ < 0. Aggregating the constraints with these weights yields
    /// the contradiction 0 < 0, proving that no feasible point exists.
    Infeasible(RatVec),
}

/// Dense simplex tableau in equality form `A z = b`, `z ≥ 0`, `b ≥ 0`.
struct Tableau {
    rows: Vec<RatVec>, // m × (ncols + 1); last column is the rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot = self.rows[r][c].clone();
        debug_assert!(!pivot.is_zero());
        for x in &mut self.rows[r] {
            *x /= &pivot;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let sub = &factor * &self.rows[r][j];
                self.rows[i][j] -= sub;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced cost of column `c` under objective `cost`:
    /// cost[c] − Σᵢ cost[basis[i]] · T[i][c].
    fn reduced_cost(&self, cost: &[Rat], c: usize) -> Rat {
        let mut rc = cost[c].clone();
        for (i, row) in self.rows.iter().enumerate() {
            if !cost[self.basis[i]].is_zero() && !row[c].is_zero() {
                rc -= &cost[self.basis[i]] * &row[c];
            }
        }
        rc
    }

    fn objective_value(&self, cost: &[Rat]) -> Rat {
        let mut v = Rat::zero();
        for (i, _) in self.rows.iter().enumerate() {
            if !cost[self.basis[i]].is_zero() {
                v += &cost[self.basis[i]] * self.rhs(i);
            }
        }
        v
    }

    /// Run simplex (maximization) with Bland's rule. `allowed` masks columns
    /// that may enter the basis. Returns false on unboundedness.
    fn optimize(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        loop {
            // Bland: entering column = smallest index with positive reduced cost.
            let mut entering = None;
            for c in 0..self.ncols {
                if allowed[c] && self.reduced_cost(cost, c).is_positive() {
                    entering = Some(c);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            // Ratio test; Bland tie-break on the smallest basis index.
            let mut best: Option<(Rat, usize, usize)> = None; // (ratio, basis var, row)
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let ratio = self.rhs(r) / &self.rows[r][c];
                    let candidate = (ratio, self.basis[r], r);
                    best = match best {
                        None => Some(candidate),
                        Some(cur) => {
                            if candidate.0 < cur.0 || (candidate.0 == cur.0 && candidate.1 < cur.1)
                            {
                                Some(candidate)
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
            }
            match best {
                Some((_, _, r)) => self.pivot(r, c),
                None => return false, // unbounded in direction c
            }
        }
    }
}

struct StandardForm {
    tableau: Tableau,
    nvars: usize,
    artificial_start: usize,
    /// Identity column installed for each row (slack or artificial), used to
    /// read off dual values.
    row_identity: Vec<usize>,
    /// Sign flip applied to each input row to make its rhs nonnegative.
    row_sign: Vec<Rat>,
}

/// Build the equality-form tableau. Column layout:
/// [u₁..u_n | v₁..v_n | slacks/surpluses | artificials | rhs]
/// with x = u − v.
fn standardize(num_vars: usize, constraints: &[Constraint]) -> StandardForm {
    let m = constraints.len();
    let mut n_slack = 0;
    for c in constraints {
        if c.op != RelOp::Eq {
            n_slack += 1;
        }
    }
    // Worst case every row needs an artificial.
    let ncols = 2 * num_vars + n_slack + m;
    let mut rows: Vec<RatVec> = Vec::with_capacity(m);
    let mut basis = vec![usize::MAX; m];
    let mut row_identity = vec![usize::MAX; m];
    let mut row_sign = Vec::with_capacity(m);
    let mut next_slack = 2 * num_vars;
    let artificial_start = 2 * num_vars + n_slack;
    let mut next_artificial = artificial_start;

    for (r, con) in constraints.iter().enumerate() {
        assert!(
            con.coeffs.len() == num_vars,
            "constraint arity {} does not match variable count {num_vars}",
            con.coeffs.len()
        );
        let flip = con.rhs.is_negative();
        let sign = if flip { -Rat::one() } else { Rat::one() };
        let op = match (con.op, flip) {
            (RelOp::Eq, _) => RelOp::Eq,
            (RelOp::Le, false) | (RelOp::Ge, true) => RelOp::Le,
            (RelOp::Ge, false) | (RelOp::Le, true) => RelOp::Ge,
        };
        let mut row = zero_vec(ncols + 1);
        for (j, a) in con.coeffs.iter().enumerate() {
            let val = &sign * a;
            row[num_vars + j] = -val.clone();
            row[j] = val;
        }
        row[ncols] = &sign * &con.rhs;
        match op {
            RelOp::Le => {
                row[next_slack] = Rat::one();
                basis[r] = next_slack;
                row_identity[r] = next_slack;
                next_slack += 1;
            }
            RelOp::Ge => {
                row[next_slack] = -Rat::one();
                next_slack += 1;
                row[next_artificial] = Rat::one();
                basis[r] = next_artificial;
                row_identity[r] = next_artificial;
                next_artificial += 1;
            }
            RelOp::Eq => {
                row[next_artificial] = Rat::one();
                basis[r] = next_artificial;
                row_identity[r] = next_artificial;
                next_artificial += 1;
            }
        }
        rows.push(row);
        row_sign.push(sign);
    }

    StandardForm {
        tableau: Tableau { rows, basis, ncols },
        nvars: num_vars,
        artificial_start,
        row_identity,
        row_sign,
    }
}

/// Maximize `objective · x` subject to the constraints; all variables free.
pub fn maximize(num_vars: usize, objective: &[Rat], constraints: &[Constraint]) -> LpResult {
    assert_eq!(objective.len(), num_vars);
    let mut sf = standardize(num_vars, constraints);
    let ncols = sf.tableau.ncols;

    // Phase 1: maximize −Σ artificials; feasible iff the optimum is 0.
    let mut phase1_cost = zero_vec(ncols);
    for c in sf.artificial_start..ncols {
        phase1_cost[c] = -Rat::one();
    }
    let all_allowed = vec![true; ncols];
    let ok = sf.tableau.optimize(&phase1_cost, &all_allowed);
    debug_assert!(ok, "phase 1 is bounded by construction");
    if sf.tableau.objective_value(&phase1_cost).is_negative() {
        return LpResult::Infeasible;
    }

    // Drive remaining artificials out of the basis (their value is zero).
    // A row with no usable pivot is a redundant constraint and is dropped.
    let mut r = 0;
    while r < sf.tableau.rows.len() {
        if sf.tableau.basis[r] >= sf.artificial_start {
            let c = (0..sf.artificial_start).find(|&c| !sf.tableau.rows[r][c].is_zero());
            match c {
                Some(c) => sf.tableau.pivot(r, c),
                None => {
                    sf.tableau.rows.remove(r);
                    sf.tableau.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2: the real objective on u/v columns, artificials banned.
    let mut cost = zero_vec(ncols);
    for j in 0..num_vars {
        cost[j] = objective[j].clone();
        cost[num_vars + j] = -objective[j].clone();
    }
    let mut allowed = vec![true; ncols];
    for c in sf.artificial_start..ncols {
        allowed[c] = false;
    }
    if !sf.tableau.optimize(&cost, &allowed) {
        return LpResult::Unbounded;
    }

    let point = extract_point(&sf);
    let value = dot(objective, &point);
    debug_assert!(constraints.iter().all(|c| c.satisfied_at(&point)));
    LpResult::Optimal { value, point }
}

fn extract_point(sf: &StandardForm) -> RatVec {
    let mut z = zero_vec(sf.tableau.ncols);
    for (r, &b) in sf.tableau.basis.iter().enumerate() {
        z[b] = sf.tableau.rhs(r).clone();
    }
    (0..sf.nvars).map(|j| &z[j] - &z[sf.nvars + j]).collect()
}

/// Exact feasibility test. Returns a feasible point or a verified Farkas
/// certificate of infeasibility.
pub fn lp_feasible(num_vars: usize, constraints: &[Constraint]) -> Feasibility {
    let mut sf = standardize(num_vars, constraints);
    let ncols = sf.tableau.ncols;
    let mut phase1_cost = zero_vec(ncols);
    for c in sf.artificial_start..ncols {
        phase1_cost[c] = -Rat::one();
    }
    let all_allowed = vec![true; ncols];
    let ok = sf.tableau.optimize(&phase1_cost, &all_allowed);
    debug_assert!(ok, "phase 1 is bounded by construction");

    if !sf.tableau.objective_value(&phase1_cost).is_negative() {
        let point = extract_point(&sf);
        debug_assert!(constraints.iter().all(|c| c.satisfied_at(&point)));
        return Feasibility::Feasible(point);
    }

    // Farkas multipliers from the phase-1 dual: for input row r with
    // identity column id_r and sign flip s_r, take
    //   y_r = s_r · Σᵢ cost₁[basis[i]] · T[i][id_r].
    let mut y = Vec::with_capacity(constraints.len());
    for r in 0..constraints.len() {
        let id = sf.row_identity[r];
        let mut dual = Rat::zero();
        for (i, row) in sf.tableau.rows.iter().enumerate() {
            if !phase1_cost[sf.tableau.basis[i]].is_zero() && !row[id].is_zero() {
                dual += &phase1_cost[sf.tableau.basis[i]] * &row[id];
            }
        }
        y.push(&sf.row_sign[r] * dual);
    }
    assert!(
        verify_farkas(num_vars, constraints, &y),
        "internal error: Farkas certificate failed verification"
    );
    Feasibility::Infeasible(y)
}

/// Check a Farkas certificate: sign conditions, zero aggregate row, negative
/// aggregate rhs.
pub fn verify_farkas(num_vars: usize, constraints: &[Constraint], y: &[Rat]) -> bool {
    if y.len() != constraints.len() {
        return false;
    }
    for (c, yi) in constraints.iter().zip(y) {
        match c.op {
            RelOp::Le if yi.is_negative() => return false,
            RelOp::Ge if yi.is_positive() => return false,
            _ => {}
        }
    }
    let mut agg = zero_vec(num_vars);
    let mut rhs = Rat::zero();
    for (c, yi) in constraints.iter().zip(y) {
        for j in 0..num_vars {
            agg[j] += yi * &c.coeffs[j];
        }
        rhs += yi * &c.rhs;
    }
    agg.iter().all(|a| a.is_zero()) && rhs.is_negative()
}

/// Convenience wrapper returning just the feasible point.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<RatVec> {
    match lp_feasible(num_vars, constraints) {
        Feasibility::Feasible(p) => Some(p),
        Feasibility::Infeasible(_) => None,
    }
}

/// `t`-interval endpoints: minimize and maximize `objective · x`. Returns
/// `None` when infeasible; an unbounded side is reported as `None` inside
/// the pair.
pub fn minimize(num_vars: usize, objective: &[Rat], constraints: &[Constraint]) -> LpResult {
    let neg: RatVec = objective.iter().map(|c| -c).collect();
    match maximize(num_vars, &neg, constraints) {
        LpResult::Optimal { value, point } => LpResult::Optimal { value: -value, point },
        other => other,
    }
}
