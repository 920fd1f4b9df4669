//! Attraction and invariance checks for candidate limit sets.
//!
//! The checks here are finite-budget experiments on grid bitmaps, so
//! every verdict names its evidence: a step count at which distances
//! settled, a concrete cell that refuses to leave a neighborhood, or an
//! explicit admission that the budget ran out first.

use std::fmt;

use crate::error::{Error, Result};
use crate::hutchinson::{bh_apply, bh_iterate, max_fixed_point, FixedPointRecord};
use crate::maps::IFSystem;
use crate::rng;
use crate::sets::{dilate, hausdorff, one_sided, GridSet, Point};
use crate::symbolic::{semifractal_approx, target_sample};

/// Does a neighborhood of the candidate collapse back onto it?
#[derive(Debug, Clone)]
pub enum ConleyVerdict {
    /// Iterates of the dilated set came within tolerance of the
    /// candidate and stayed there; `steps` is when the run ended.
    HoldsAtBudget { steps: usize },
    /// A cell of the dilated neighborhood survived every iteration
    /// while keeping its distance from the candidate.
    FailsWithWitness { cell: usize, point: Point, distance: f64 },
    /// The budget ended with neither convergence nor a stable witness.
    UndeterminedAtBudget { last_dh: f64 },
}

impl fmt::Display for ConleyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConleyVerdict::HoldsAtBudget { steps } => write!(f, "HoldsAtBudget(steps {steps})"),
            ConleyVerdict::FailsWithWitness { cell, point, distance } => write!(
                f,
                "FailsWithWitness(cell {cell} at ({}, {}), distance {distance})",
                point[0], point[1]
            ),
            ConleyVerdict::UndeterminedAtBudget { last_dh } => {
                write!(f, "UndeterminedAtBudget(last distance {last_dh})")
            }
        }
    }
}

/// Does some starting neighborhood keep all its iterates inside a
/// prescribed neighborhood?
#[derive(Debug, Clone)]
pub enum StabilityVerdict {
    /// Iterates of the radius-`v0_eps` dilation stayed inside the
    /// enclosing neighborhood and closed a cycle, so they stay forever.
    StableWitness { v0_eps: f64, shrink_index: usize },
    UndeterminedAtBudget,
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityVerdict::StableWitness { v0_eps, shrink_index } => {
                write!(f, "StableWitness(start radius {v0_eps}, shrink step {shrink_index})")
            }
            StabilityVerdict::UndeterminedAtBudget => write!(f, "UndeterminedAtBudget"),
        }
    }
}

/// One named pass/fail line of a check report.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl fmt::Display for CheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {} — {}", self.name, status, self.details)
    }
}

/// A bundle of check items; passes only when every item does.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|item| item.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

/// Largest distance from a cell of `set` to `reference`, read off a
/// precomputed distance field of `reference`.
fn max_field_over(set: &GridSet, field: &[f64]) -> f64 {
    set.iter_cells().fold(0.0f64, |acc, c| acc.max(field[c]))
}

/// Checks that the candidate limit set sits inside every fixed set it is
/// offered.  Candidates whose residual exceeds `tol` are not fixed
/// points at this resolution and are reported as skipped.
pub fn check_sf_minimum(
    semifractal: &GridSet,
    candidates: &[FixedPointRecord],
    tol: f64,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for (i, cand) in candidates.iter().enumerate() {
        semifractal.check_compatible(&cand.set)?;
        if cand.residual > tol {
            report.items.push(CheckItem {
                name: format!("minimum-vs-candidate-{i}"),
                passed: true,
                details: format!(
                    "candidate is not fixed at tolerance (residual {:.3e}); skipped",
                    cand.residual
                ),
            });
            continue;
        }
        let slack = 2.0 * cand.set.cell_diagonal();
        let fattened = dilate(&cand.set, slack);
        let (passed, details) = match semifractal.first_cell_not_in(&fattened) {
            None => (true, format!("contained within {slack:.3e} of the candidate")),
            Some(cell) => (
                false,
                format!("cell {cell} of the candidate limit set escapes the fixed set"),
            ),
        };
        report.items.push(CheckItem { name: format!("minimum-vs-candidate-{i}"), passed, details });
    }
    Ok(report)
}

/// Iterates random non-empty subsets of the candidate limit set and
/// checks they converge back to it.
pub fn check_sf_attraction(
    system: &IFSystem,
    semifractal: &GridSet,
    trials: usize,
    n: usize,
    tol: f64,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let cells: Vec<usize> = semifractal.iter_cells().collect();
    for trial in 0..trials {
        let mut subset = GridSet::empty(semifractal.domain(), semifractal.res());
        for &cell in &cells {
            if rng::unit_f64(seed.wrapping_add(trial as u64), cell as u64) < 0.35 {
                subset.insert_cell(cell);
            }
        }
        if subset.is_empty() {
            subset.insert_cell(cells[0]);
        }
        let rep = bh_iterate(system, &subset, n, tol)?;
        let d = hausdorff(&rep.final_set, semifractal)?;
        let slack = tol + 2.0 * semifractal.cell_diagonal();
        report.items.push(CheckItem {
            name: format!("attraction-trial-{trial}"),
            passed: d <= slack,
            details: format!("subset of {} cells settled at distance {d:.3e}", subset.cell_count()),
        });
    }
    Ok(report)
}

/// Distance traces of operator iterates of `start` against a reference
/// set: `forward[i]` is the one-sided distance from the reference to the
/// i-th iterate (how well the iterate covers the reference), `full[i]`
/// the symmetric distance.
#[derive(Debug, Clone)]
pub struct AsymmetryTrace {
    pub forward: Vec<f64>,
    pub full: Vec<f64>,
    /// First step from which every later forward distance is within the
    /// tolerance the trace was computed at; `None` if that never happens.
    pub threshold: Option<usize>,
}

/// Iterates `start` and records how the one-sided distance from the
/// reference set decays, independent of whether the symmetric distance
/// does.  This is the one-sided attraction property: every compact set's
/// iterates eventually cover the candidate limit set.
pub fn check_one_sided_attraction(
    system: &IFSystem,
    reference: &GridSet,
    start: &GridSet,
    n: usize,
    tol: f64,
) -> Result<AsymmetryTrace> {
    reference.check_compatible(start)?;
    let mut forward = Vec::with_capacity(n + 1);
    let mut full = Vec::with_capacity(n + 1);
    let mut current = start.clone();
    for step in 0..=n {
        let fwd = one_sided(reference, &current)?;
        let back = one_sided(&current, reference)?;
        forward.push(fwd);
        full.push(fwd.max(back));
        if step < n {
            current = bh_apply(system, &current)?;
        }
    }
    let mut threshold = None;
    for i in (0..forward.len()).rev() {
        if forward[i] <= tol {
            threshold = Some(i);
        } else {
            break;
        }
    }
    Ok(AsymmetryTrace { forward, full, threshold })
}

/// Iterates an `eps`-neighborhood of the candidate and watches whether
/// it collapses onto the candidate or leaves behind a persistent cell
/// that keeps its distance.
pub fn check_conley(
    system: &IFSystem,
    candidate: &GridSet,
    eps: f64,
    budget: usize,
    tol: f64,
) -> Result<ConleyVerdict> {
    assert!(
        eps >= 2.0 * candidate.cell_diagonal(),
        "neighborhood radius must span at least two cells"
    );
    let field = candidate.distance_field();
    let mut current = dilate(candidate, eps);
    let mut persistent = current.clone();
    let mut run = 0usize;
    let mut last_dh = f64::INFINITY;
    for step in 1..=budget {
        current = bh_apply(system, &current)?;
        persistent = persistent.intersection(&current)?;
        let fwd = max_field_over(&current, &field);
        let back = if candidate.is_subset_of(&current)? {
            0.0
        } else {
            one_sided(candidate, &current)?
        };
        last_dh = fwd.max(back);
        run = if last_dh <= tol { run + 1 } else { 0 };
        if run == 3 {
            return Ok(ConleyVerdict::HoldsAtBudget { steps: step });
        }
    }
    let witness = persistent
        .iter_cells()
        .map(|c| (c, field[c]))
        .filter(|&(_, d)| d > tol)
        .max_by(|a, b| a.1.total_cmp(&b.1));
    match witness {
        Some((cell, distance)) => Ok(ConleyVerdict::FailsWithWitness {
            cell,
            point: persistent.cell_center(cell),
            distance,
        }),
        None => Ok(ConleyVerdict::UndeterminedAtBudget { last_dh }),
    }
}

/// Searches for a starting neighborhood of `k` whose iterates stay
/// inside the radius-`v_eps` neighborhood forever.  The start is the
/// same neighborhood, halved up to `shrink_steps` times; a verdict is
/// only issued when the iterates close a cycle (repeat a bitmap), since
/// from then on the orbit provably repeats inside the neighborhood.
pub fn check_stability(
    system: &IFSystem,
    k: &GridSet,
    v_eps: f64,
    budget: usize,
    shrink_steps: usize,
) -> Result<StabilityVerdict> {
    let v = dilate(k, v_eps);
    for j in 0..=shrink_steps {
        let v0_eps = v_eps / (1u64 << j) as f64;
        let v0 = dilate(k, v0_eps);
        let mut seen: Vec<GridSet> = vec![v0.clone()];
        let mut current = v0;
        let mut escaped = false;
        for _ in 0..budget {
            current = bh_apply(system, &current)?;
            if !current.is_subset_of(&v)? {
                escaped = true;
                break;
            }
            if seen.contains(&current) {
                return Ok(StabilityVerdict::StableWitness { v0_eps, shrink_index: j });
            }
            seen.push(current.clone());
        }
        let _ = escaped;
    }
    Ok(StabilityVerdict::UndeterminedAtBudget)
}

/// Budgets for the global-behavior comparison.
#[derive(Debug, Clone, Copy)]
pub struct GlobalCheckParams {
    pub res: [usize; 2],
    /// Certification diameter for the target-point search.
    pub eps: f64,
    /// Longest word tried during the target-point search.
    pub max_len: usize,
    /// Iteration budget for each limit computation.
    pub budget: usize,
    pub tol: f64,
    /// Number of random starting sets for the attraction side.
    pub trials: usize,
    pub seed: u64,
}

/// Two faces of global behavior measured independently: whether the
/// smallest limit set equals the largest fixed set, and whether random
/// starting sets are attracted to that largest fixed set.  The theory
/// says the answers agree; `consistent` records whether they did here.
#[derive(Debug, Clone)]
pub struct GlobalEquivalenceReport {
    pub minimum_is_maximum: bool,
    pub global_attraction: bool,
    pub consistent: bool,
    pub d_min_max: f64,
    pub worst_trial_distance: f64,
    pub semifractal: GridSet,
    pub max_set: GridSet,
}

/// Compares the limit grown from one certified target point with the
/// limit shrunk from the whole domain, then tests attraction of random
/// spanning sets to the latter.  Needs at least one certified target
/// point to exist.
pub fn check_global_equivalences(
    system: &IFSystem,
    params: GlobalCheckParams,
) -> Result<GlobalEquivalenceReport> {
    let sample = target_sample(system, params.max_len, params.eps, params.res)?;
    let seed_point = sample.first().ok_or(Error::NoCertificate)?;
    let semifractal =
        semifractal_approx(system, seed_point, params.res, params.budget, params.tol)?.final_set;
    let (max_rec, _) = max_fixed_point(system, params.res, params.budget, params.tol)?;

    let slack = params.tol + 2.0 * semifractal.cell_diagonal();
    let d_min_max = hausdorff(&semifractal, &max_rec.set)?;
    let minimum_is_maximum = d_min_max <= slack;

    let ncells = semifractal.ncells();
    let sample_cells = 256.min(ncells);
    let mut worst = 0.0f64;
    let mut all_attracted = true;
    for trial in 0..params.trials {
        let mut start = GridSet::empty(system.domain(), params.res);
        for i in 0..sample_cells {
            let cell = (rng::mix(params.seed ^ trial as u64, i as u64) % ncells as u64) as usize;
            start.insert_cell(cell);
        }
        let rep = bh_iterate(system, &start, params.budget, params.tol)?;
        let d = hausdorff(&rep.final_set, &max_rec.set)?;
        worst = worst.max(d);
        if d > slack {
            all_attracted = false;
        }
    }

    Ok(GlobalEquivalenceReport {
        minimum_is_maximum,
        global_attraction: all_attracted,
        consistent: minimum_is_maximum == all_attracted,
        d_min_max,
        worst_trial_distance: worst,
        semifractal,
        max_set: max_rec.set,
    })
}
