//! The union-of-images set operator, its iteration, and fixed points.
//!
//! For a system `f_1, …, f_k` the operator sends a compact set `A` to
//! `f_1(A) ∪ … ∪ f_k(A)`.  On grid bitmaps the realization is an outer
//! approximation (every raster step covers the true image), which gives
//! the two facts the fixed-point machinery leans on: the operator is
//! monotone on bitmaps, and iterating from any set containing its own
//! image produces an exactly nested chain.

use crate::error::{Error, Result};
use crate::maps::IFSystem;
use crate::sets::{
    hausdorff, nested_limit, one_sided, ConvergenceReport, ConvergenceStatus, GridSet,
    IterationSample,
};

/// A set together with how close it is to being fixed by the operator.
#[derive(Debug, Clone)]
pub struct FixedPointRecord {
    pub set: GridSet,
    /// Hausdorff distance between the set and its operator image.
    pub residual: f64,
    /// Whether the operator image is contained in the set.
    pub is_forward_invariant: bool,
    /// Whether the residual is within the tolerance the record was
    /// computed at.
    pub is_fixed_within_tolerance: bool,
}

/// One application of the operator: the union of all map images.
pub fn bh_apply(system: &IFSystem, a: &GridSet) -> Result<GridSet> {
    let mut out = system.maps()[0].image_of_gridset(a)?;
    for f in &system.maps()[1..] {
        out.union_with(&f.image_of_gridset(a)?)?;
    }
    Ok(out)
}

/// Iterates the operator, tracing Hausdorff distances between successive
/// iterates.  Stops early once the distance stays within `tol` for three
/// consecutive steps; `converged_since` then names the first step of that
/// run.
pub fn bh_iterate(system: &IFSystem, a: &GridSet, n: usize, tol: f64) -> Result<ConvergenceReport> {
    assert!(n >= 1, "iteration needs at least one step");
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut current = a.clone();
    let mut iterations = Vec::new();
    let mut run = 0usize;
    for step in 1..=n {
        let next = bh_apply(system, &current)?;
        let forward = one_sided(&next, &current)?;
        let backward = one_sided(&current, &next)?;
        let d_h = forward.max(backward);
        iterations.push(IterationSample { step, d_h, forward, backward });
        run = if d_h <= tol { run + 1 } else { 0 };
        current = next;
        if run == 3 {
            let since = step - 2;
            return Ok(ConvergenceReport {
                iterations,
                status: ConvergenceStatus::Converged,
                final_set: current,
                converged_since: Some(since),
            });
        }
    }
    Ok(ConvergenceReport {
        iterations,
        status: ConvergenceStatus::BudgetExhausted,
        final_set: current,
        converged_since: None,
    })
}

/// Decreasing operator iteration from a set containing its own image:
/// collects the nested chain, intersects it, and reports the trace
/// toward the limit.
fn nested_fixed_point(
    system: &IFSystem,
    start: GridSet,
    budget: usize,
    tol: f64,
) -> Result<(FixedPointRecord, ConvergenceReport)> {
    let mut chain = vec![start];
    let mut run = 0usize;
    for _ in 0..budget {
        let current = chain.last().unwrap();
        let next = bh_apply(system, current)?;
        if &next == current {
            break;
        }
        let d = hausdorff(&next, current)?;
        run = if d <= tol { run + 1 } else { 0 };
        chain.push(next);
        if run == 3 {
            break;
        }
    }
    let mut report = nested_limit(&chain)?;
    let limit = report.final_set.clone();
    let image = bh_apply(system, &limit)?;
    let residual = hausdorff(&image, &limit)?;
    let is_forward_invariant = image.is_subset_of(&limit)?;
    let is_fixed_within_tolerance = residual <= tol;
    report.status = if is_fixed_within_tolerance {
        ConvergenceStatus::Converged
    } else {
        ConvergenceStatus::BudgetExhausted
    };
    let record = FixedPointRecord { set: limit, residual, is_forward_invariant, is_fixed_within_tolerance };
    Ok((record, report))
}

/// The largest fixed set reachable from the whole domain: the limit of
/// applying the operator to the full grid.  Always an over-approximation
/// of the true maximal fixed set; the record's residual says how far the
/// iteration got within the budget.
pub fn max_fixed_point(
    system: &IFSystem,
    res: [usize; 2],
    budget: usize,
    tol: f64,
) -> Result<(FixedPointRecord, ConvergenceReport)> {
    let full = GridSet::full(system.domain(), res);
    nested_fixed_point(system, full, budget, tol)
}

/// The nested intersection of operator iterates of `a`, which must
/// contain its own image (checked; the witness cell names the escape).
pub fn a_star(
    system: &IFSystem,
    a: &GridSet,
    budget: usize,
    tol: f64,
) -> Result<(FixedPointRecord, ConvergenceReport)> {
    let image = bh_apply(system, a)?;
    if let Some(cell) = image.first_cell_not_in(a) {
        return Err(Error::NotForwardInvariant { cell });
    }
    nested_fixed_point(system, a.clone(), budget, tol)
}
