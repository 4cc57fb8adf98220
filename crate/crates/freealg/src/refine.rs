//! Constructive common refinement of two product factorizations of
//! T-ideals: given left factors V1..Vk whose product contains the product
//! of right factors V'1..V'l up to the bound, produce factor lists I1..Ik
//! and I'1..I'l with equal products such that each Ii sits inside Vi and
//! each V'j sits inside I'j.
//!
//! The construction follows the separator/annihilator recursion: find the
//! pivot position j where the partial product stops containing V'1, split
//! off W1 = V'1 ÷ (V1..V_{j-1}) and W2 = (Vj : W1), recurse on one fewer
//! right factor, and reassemble. Every intermediate handle is materialized
//! as a generator list, so a solution is a self-contained certificate that
//! `verify_refinement` can replay without re-running the construction.

use crate::error::{EngineError, Result};
use crate::ideal::{includes, InclusionVerdict, ProductIdeal, TIdeal};
use crate::quotient::{annihilator, separator};

#[derive(Debug, Clone)]
pub struct RefinementProblem {
    pub left: Vec<TIdeal>,
    pub right: Vec<TIdeal>,
    pub bound: u32,
    pub window: u32,
}

impl RefinementProblem {
    pub fn left_product(&self) -> ProductIdeal {
        ProductIdeal::product(self.left.clone())
    }

    pub fn right_product(&self) -> ProductIdeal {
        ProductIdeal::product(self.right.clone())
    }
}

/// Outcome of the pivot search for one recursion level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PivotOutcome {
    /// The whole left product already contains the first right factor.
    NotNeeded,
    /// 1-based least index j with V1..V_{j-1} containing V'1 but
    /// V1..Vj not containing it.
    Pivot(usize),
}

/// Transcript of one recursion level that took the pivot branch.
#[derive(Debug, Clone)]
pub struct RefinementStep {
    /// 0-based recursion depth.
    pub level: usize,
    /// 1-based pivot position within this level's left factors.
    pub j: usize,
    /// This level's left factors.
    pub left_context: Vec<TIdeal>,
    /// The right factor consumed at this level.
    pub right_head: TIdeal,
    /// Product of the left factors before the pivot (unit when j = 1).
    pub u: ProductIdeal,
    pub w1: TIdeal,
    pub w2: TIdeal,
}

/// A solved refinement: factor lists plus the per-level transcript.
#[derive(Debug, Clone)]
pub struct RefinementSolution {
    pub problem: RefinementProblem,
    pub left_parts: Vec<ProductIdeal>,
    pub right_parts: Vec<ProductIdeal>,
    pub steps: Vec<RefinementStep>,
}

fn unit_product(field: crate::scalar::Field) -> ProductIdeal {
    ProductIdeal::single(TIdeal::unit(field))
}

fn prefix_product(factors: &[TIdeal], upto: usize) -> ProductIdeal {
    if upto == 0 {
        unit_product(factors[0].field())
    } else {
        ProductIdeal::product(factors[..upto].to_vec())
    }
}

/// Least pivot position for the first right factor, or NotNeeded when the
/// full left product contains it.
pub fn find_pivot(
    left: &[TIdeal],
    first_right: &TIdeal,
    bound: u32,
    window: u32,
) -> Result<PivotOutcome> {
    let target = ProductIdeal::single(first_right.clone());
    if includes(&prefix_product(left, left.len()), &target, bound, window)?.holds() {
        return Ok(PivotOutcome::NotNeeded);
    }
    let mut prev_holds = true; // the empty product is the unit ideal
    for j in 1..=left.len() {
        let cur = includes(&prefix_product(left, j), &target, bound, window)?.holds();
        if prev_holds && !cur {
            return Ok(PivotOutcome::Pivot(j));
        }
        prev_holds = cur;
    }
    Err(EngineError::InconsistentTruncation { bound })
}

/// Run the construction. Requires the left product to contain the right
/// product up to the bound.
pub fn construct(problem: &RefinementProblem) -> Result<RefinementSolution> {
    let precondition = includes(
        &problem.left_product(),
        &problem.right_product(),
        problem.bound,
        problem.window,
    )?;
    if let Some((w, key)) = precondition.witness {
        return Err(EngineError::RecursionInclusionFailed {
            degree: key.total(),
            witness: w.to_string(),
        });
    }
    let mut steps = Vec::new();
    let (left_parts, right_parts) = construct_rec(
        &problem.left,
        &problem.right,
        problem.bound,
        problem.window,
        0,
        &mut steps,
    )?;
    Ok(RefinementSolution {
        problem: problem.clone(),
        left_parts,
        right_parts,
        steps,
    })
}

fn construct_rec(
    left: &[TIdeal],
    right: &[TIdeal],
    bound: u32,
    window: u32,
    level: usize,
    steps: &mut Vec<RefinementStep>,
) -> Result<(Vec<ProductIdeal>, Vec<ProductIdeal>)> {
    let field = left[0].field();

    // zero base case: all left parts zero, right parts unchanged
    if right.iter().any(|r| r.is_zero()) {
        let left_parts = left
            .iter()
            .map(|_| ProductIdeal::single(TIdeal::zero(field)))
            .collect();
        let right_parts = right.iter().cloned().map(ProductIdeal::single).collect();
        return Ok((left_parts, right_parts));
    }

    let v = prefix_product(left, left.len());
    let first_right = ProductIdeal::single(right[0].clone());

    if includes(&v, &first_right, bound, window)?.holds() {
        // easy branch: push the remaining right factors into the last left slot
        let k = left.len();
        let mut left_parts: Vec<ProductIdeal> = left[..k - 1]
            .iter()
            .cloned()
            .map(ProductIdeal::single)
            .collect();
        let mut tail = vec![left[k - 1].clone()];
        tail.extend(right[1..].iter().cloned());
        left_parts.push(ProductIdeal::product(tail));
        let mut right_parts = vec![v];
        right_parts.extend(right[1..].iter().cloned().map(ProductIdeal::single));
        return Ok((left_parts, right_parts));
    }

    if right.len() == 1 {
        // the precondition forces the easy branch for a single right factor
        let verdict = includes(&v, &first_right, bound, window)?;
        let (w, key) = verdict.witness.expect("non-inclusion has a witness");
        return Err(EngineError::RecursionInclusionFailed {
            degree: key.total(),
            witness: w.to_string(),
        });
    }

    let PivotOutcome::Pivot(j) = find_pivot(left, &right[0], bound, window)? else {
        unreachable!("inclusion was rejected above");
    };
    let u = prefix_product(left, j - 1);
    let w1 = separator(&first_right, &u, bound, window)?;
    let w2 = annihilator(
        &ProductIdeal::single(left[j - 1].clone()),
        &ProductIdeal::single(w1.clone()),
        bound,
        window,
    )?;

    let mut sub_left: Vec<TIdeal> = vec![w2.clone()];
    sub_left.extend(left[j..].iter().cloned());
    let sub_right: Vec<TIdeal> = right[1..].to_vec();

    // the recursion precondition must hold before descending
    let verdict = includes(
        &ProductIdeal::product(sub_left.clone()),
        &ProductIdeal::product(sub_right.clone()),
        bound,
        window,
    )?;
    if let Some((w, key)) = verdict.witness {
        return Err(EngineError::RecursionInclusionFailed {
            degree: key.total(),
            witness: w.to_string(),
        });
    }

    steps.push(RefinementStep {
        level,
        j,
        left_context: left.to_vec(),
        right_head: right[0].clone(),
        u: u.clone(),
        w1: w1.clone(),
        w2: w2.clone(),
    });

    let (sub_left_parts, sub_right_parts) =
        construct_rec(&sub_left, &sub_right, bound, window, level + 1, steps)?;

    // reassemble: untouched prefix, W1 * L_j in the pivot slot, recursion
    // results after it, and the first right part becomes U * W1
    let mut left_parts: Vec<ProductIdeal> = left[..j - 1]
        .iter()
        .cloned()
        .map(ProductIdeal::single)
        .collect();
    left_parts.push(ProductIdeal::single(w1.clone()).then(&sub_left_parts[0]));
    left_parts.extend(sub_left_parts[1..].iter().cloned());

    let mut right_parts = vec![u.then(&ProductIdeal::single(w1))];
    right_parts.extend(sub_right_parts);

    Ok((left_parts, right_parts))
}

/// One verification clause with its outcome.
#[derive(Debug, Clone)]
pub struct ClauseReport {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl ClauseReport {
    fn from_verdict(name: String, verdict: InclusionVerdict) -> ClauseReport {
        let witness = verdict
            .witness
            .as_ref()
            .map(|(w, key)| format!("{w} at key {key}"));
        ClauseReport {
            name,
            holds: verdict.holds(),
            witness,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub clauses: Vec<ClauseReport>,
}

impl VerifyReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }
}

/// Replay every clause of the refinement statement on a solution: equality
/// of the two assembled products, the factorwise inclusions on both sides,
/// and the transcript inclusions W1 * W2 inside the pivot factor and
/// U * W1 containing the consumed right factor.
pub fn verify_refinement(solution: &RefinementSolution, bound: u32, window: u32) -> Result<VerifyReport> {
    let mut clauses = Vec::new();
    let flatten = |parts: &[ProductIdeal]| -> ProductIdeal {
        let mut factors = Vec::new();
        for p in parts {
            factors.extend(p.factors().iter().cloned());
        }
        ProductIdeal::product(factors)
    };
    let left_total = flatten(&solution.left_parts);
    let right_total = flatten(&solution.right_parts);
    clauses.push(ClauseReport::from_verdict(
        "product(I) contains product(I')".into(),
        includes(&left_total, &right_total, bound, window)?,
    ));
    clauses.push(ClauseReport::from_verdict(
        "product(I') contains product(I)".into(),
        includes(&right_total, &left_total, bound, window)?,
    ));
    for (i, (part, v)) in solution
        .left_parts
        .iter()
        .zip(&solution.problem.left)
        .enumerate()
    {
        clauses.push(ClauseReport::from_verdict(
            format!("I{} inside V{}", i + 1, i + 1),
            includes(&ProductIdeal::single(v.clone()), part, bound, window)?,
        ));
    }
    for (j, (part, v)) in solution
        .right_parts
        .iter()
        .zip(&solution.problem.right)
        .enumerate()
    {
        clauses.push(ClauseReport::from_verdict(
            format!("V'{} inside I'{}", j + 1, j + 1),
            includes(part, &ProductIdeal::single(v.clone()), bound, window)?,
        ));
    }
    for step in &solution.steps {
        let vj = ProductIdeal::single(step.left_context[step.j - 1].clone());
        let w1w2 = ProductIdeal::product(vec![step.w1.clone(), step.w2.clone()]);
        clauses.push(ClauseReport::from_verdict(
            format!("level {}: W1*W2 inside V{}", step.level, step.j),
            includes(&vj, &w1w2, bound, window)?,
        ));
        let uw1 = step.u.then(&ProductIdeal::single(step.w1.clone()));
        clauses.push(ClauseReport::from_verdict(
            format!("level {}: U*W1 contains the consumed right factor", step.level),
            includes(
                &uw1,
                &ProductIdeal::single(step.right_head.clone()),
                bound,
                window,
            )?,
        ));
    }
    Ok(VerifyReport { clauses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{commutator_ideal, grassmann_ideal};
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn pivot_for_grassmann_inside_cc() {
        let c = commutator_ideal(q());
        let g = grassmann_ideal(q());
        // C contains G but C*C does not, so the pivot is the second factor
        let outcome = find_pivot(&[c.clone(), c.clone()], &g, 4, 4).unwrap();
        assert_eq!(outcome, PivotOutcome::Pivot(2));
    }

    #[test]
    fn pivot_not_needed_when_included() {
        let c = commutator_ideal(q());
        let g = grassmann_ideal(q());
        assert_eq!(
            find_pivot(&[c.clone()], &g, 4, 4).unwrap(),
            PivotOutcome::NotNeeded
        );
        assert_eq!(
            find_pivot(&[c], &TIdeal::zero(q()), 3, 3).unwrap(),
            PivotOutcome::NotNeeded
        );
    }

    #[test]
    fn easy_branch_single_factors() {
        let problem = RefinementProblem {
            left: vec![commutator_ideal(q())],
            right: vec![grassmann_ideal(q())],
            bound: 4,
            window: 4,
        };
        let solution = construct(&problem).unwrap();
        assert!(solution.steps.is_empty());
        assert_eq!(solution.left_parts.len(), 1);
        assert_eq!(solution.right_parts.len(), 1);
        let report = verify_refinement(&solution, 4, 4).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn zero_base_case() {
        let problem = RefinementProblem {
            left: vec![commutator_ideal(q()), commutator_ideal(q())],
            right: vec![grassmann_ideal(q()), TIdeal::zero(q())],
            bound: 4,
            window: 4,
        };
        let solution = construct(&problem).unwrap();
        assert!(solution.left_parts.iter().all(|p| p.is_zero()));
        let report = verify_refinement(&solution, 4, 4).unwrap();
        assert!(report.all_hold());
    }
}
