//! Random-iteration orbits and the chaos-game approximation of limit
//! sets.
//!
//! An orbit applies maps in the order the stream hands them out:
//! `points[n+1] = f_{symbols[n]}(points[n])`, so the FIRST symbol acts
//! FIRST.  This is the reverse of the word-coding convention, where the
//! last symbol acts first; an orbit along `w` visits the same point as
//! the coded composition of `w` reversed.
//!
//! The verification routine rebuilds the expected limit set from
//! certified target points, checks the stability hypothesis that makes
//! orbit tails converge, and then measures tail sets against the limit.

use crate::attractors::{check_stability, StabilityVerdict};
use crate::error::{Error, Result};
use crate::maps::IFSystem;
use crate::sets::{hausdorff, GridSet, Point};
use crate::symbolic::{semifractal_approx, target_sample, SymbolStream};

/// A finite random-iteration orbit: `points` has one more entry than
/// `symbols`, and `points[i+1]` is map `symbols[i]` applied to
/// `points[i]`.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub start: Point,
    pub symbols: Vec<u8>,
    pub points: Vec<Point>,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Runs the orbit of `x` for `n` steps along the stream.
pub fn chaos_orbit(
    system: &IFSystem,
    x: Point,
    stream: &SymbolStream,
    n: usize,
) -> Result<OrbitRecord> {
    if !system.domain().contains(x) {
        return Err(Error::PointOutsideDomain { x: x[0], y: x[1] });
    }
    let mut symbols = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n + 1);
    points.push(x);
    let mut p = x;
    for i in 0..n {
        let sym = stream.symbol(i)?;
        p = system.map(sym)?.eval(p)?;
        symbols.push(sym);
        points.push(p);
    }
    Ok(OrbitRecord { start: x, symbols, points })
}

/// Rasterizes the orbit points from index `ell` on.
pub fn tail_set(system: &IFSystem, orbit: &OrbitRecord, ell: usize, res: [usize; 2]) -> Result<GridSet> {
    if ell >= orbit.points.len() {
        return Err(Error::TailOutOfRange { start: ell, len: orbit.points.len() });
    }
    let mut set = GridSet::empty(system.domain(), res);
    for &p in &orbit.points[ell..] {
        let cell = set.cell_of(p)?;
        set.insert_cell(cell);
    }
    Ok(set)
}

/// Budgets and thresholds for the chaos-game verification.
#[derive(Debug, Clone)]
pub struct ChaosGameParams {
    pub res: [usize; 2],
    /// Orbit length.
    pub n: usize,
    /// Tail starting indices to measure; when empty, powers of two up to
    /// half the orbit length are used.
    pub ell_schedule: Vec<usize>,
    /// Distance the final tail must reach.
    pub tol: f64,
    /// Certification diameter for the target-point search.
    pub eps: f64,
    /// Longest word tried during the target-point search.
    pub max_len: usize,
    /// Budget for growing the reference limit set.
    pub iterate_budget: usize,
    /// Neighborhood radius for the stability hypothesis check.
    pub stability_eps: f64,
    pub stability_budget: usize,
    pub stability_shrink: usize,
    /// Run the tail measurement even when stability was not witnessed.
    pub override_hypothesis: bool,
}

/// Outcome of the chaos-game verification.
#[derive(Debug, Clone)]
pub struct ChaosGameReport {
    pub semifractal: GridSet,
    pub stability: StabilityVerdict,
    /// Present when the stability hypothesis was overridden.
    pub caveat: Option<String>,
    /// `(tail start, distance of tail set to the limit set)` per
    /// schedule entry.
    pub trace: Vec<(usize, f64)>,
    /// The final tail is within tolerance and the trace never got worse
    /// by more than grid noise.
    pub passed: bool,
}

/// Verifies that late tails of a random orbit approximate the limit set
/// grown from certified target points.  The stability of the limit set
/// is the hypothesis that licenses the conclusion; without a witness the
/// check refuses to proceed unless explicitly overridden.
pub fn verify_chaos_game(
    system: &IFSystem,
    x: Point,
    stream: &SymbolStream,
    params: &ChaosGameParams,
) -> Result<ChaosGameReport> {
    let sample = target_sample(system, params.max_len, params.eps, params.res)?;
    let seed_point = sample.first().ok_or_else(|| {
        Error::HypothesisUnmet(
            "no weakly hyperbolic prefix certified at budget: no semifractal".into(),
        )
    })?;
    let semifractal =
        semifractal_approx(system, seed_point, params.res, params.iterate_budget, params.tol)?
            .final_set;

    let stability = check_stability(
        system,
        &semifractal,
        params.stability_eps,
        params.stability_budget,
        params.stability_shrink,
    )?;
    let caveat = match (&stability, params.override_hypothesis) {
        (StabilityVerdict::StableWitness { .. }, _) => None,
        (StabilityVerdict::UndeterminedAtBudget, true) => Some(
            "stability hypothesis not witnessed; tail convergence is not guaranteed".to_string(),
        ),
        (StabilityVerdict::UndeterminedAtBudget, false) => {
            return Err(Error::HypothesisUnmet(
                "limit-set stability not witnessed at budget".into(),
            ))
        }
    };

    let orbit = chaos_orbit(system, x, stream, params.n)?;
    let schedule = if params.ell_schedule.is_empty() {
        let mut s = Vec::new();
        let mut ell = 1usize;
        while ell <= params.n / 2 {
            s.push(ell);
            ell *= 2;
        }
        s
    } else {
        params.ell_schedule.clone()
    };

    let mut trace = Vec::with_capacity(schedule.len());
    for &ell in &schedule {
        let tail = tail_set(system, &orbit, ell, params.res)?;
        let d = hausdorff(&tail, &semifractal)?;
        trace.push((ell, d));
    }

    let noise = 2.0 * semifractal.cell_diagonal();
    let monotone_enough =
        trace.windows(2).all(|w| w[1].1 <= w[0].1 + noise);
    let final_ok = trace.last().map(|&(_, d)| d <= params.tol).unwrap_or(false);
    let passed = monotone_enough && final_ok;

    Ok(ChaosGameReport { semifractal, stability, caveat, trace, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapDescriptor;
    use crate::sets::BoxDomain;
    use crate::symbolic::{coding_composition_image, Word};
    use proptest::prelude::*;

    fn unit() -> BoxDomain {
        BoxDomain::new_1d(0.0, 1.0).unwrap()
    }

    fn cantor_system() -> IFSystem {
        let maps = vec![
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap(),
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 2.0 / 3.0).unwrap(),
        ];
        IFSystem::new(unit(), maps, None).unwrap()
    }

    fn involution_system() -> IFSystem {
        let maps = vec![
            MapDescriptor::affine_1d(unit(), 1.0, 0.0).unwrap(),
            MapDescriptor::affine_1d(unit(), -1.0, 1.0).unwrap(),
        ];
        IFSystem::new(unit(), maps, None).unwrap()
    }

    #[test]
    fn orbit_applies_first_symbol_first() {
        let s = involution_system();
        let stream = SymbolStream::explicit(vec![2, 2]);
        let orbit = chaos_orbit(&s, [0.25, 0.0], &stream, 2).unwrap();
        let xs: Vec<f64> = orbit.points.iter().map(|p| p[0]).collect();
        assert_eq!(xs, vec![0.25, 0.75, 0.25]);
    }

    #[test]
    fn orbit_on_thirds_maps() {
        let s = cantor_system();
        let stream = SymbolStream::explicit(vec![2]);
        let orbit = chaos_orbit(&s, [0.0, 0.0], &stream, 1).unwrap();
        assert_eq!(orbit.points[1][0], 2.0 / 3.0);
    }

    #[test]
    fn orbit_endpoint_matches_reversed_composition() {
        // Bit-for-bit: running the orbit along w applies the same f64
        // operations as evaluating the coded composition of w reversed.
        let s = cantor_system();
        let w = [1u8, 2, 2, 1, 2];
        let orbit = chaos_orbit(&s, [0.37, 0.0], &SymbolStream::explicit(w.to_vec()), w.len())
            .unwrap();
        let mut p = [0.37, 0.0];
        let reversed: Vec<u8> = w.iter().rev().copied().collect();
        for &sym in reversed.iter().rev() {
            p = s.map(sym).unwrap().eval(p).unwrap();
        }
        assert_eq!(orbit.points.last().unwrap()[0].to_bits(), p[0].to_bits());
    }

    #[test]
    fn orbit_stays_in_composition_enclosure() {
        let s = cantor_system();
        let w = vec![2u8, 1, 2, 2];
        let orbit = chaos_orbit(&s, [0.5, 0.0], &SymbolStream::explicit(w.clone()), w.len())
            .unwrap();
        // The endpoint lies in the enclosure of the reversed word.
        let enc = coding_composition_image(&s, &Word::new(w.into_iter().rev().collect()))
            .unwrap();
        assert!(enc.contains(*orbit.points.last().unwrap()));
    }

    #[test]
    fn tails_shrink_as_the_start_advances() {
        let s = cantor_system();
        let stream = SymbolStream::random(3, vec![0.5, 0.5]).unwrap();
        let orbit = chaos_orbit(&s, [0.9, 0.0], &stream, 500).unwrap();
        let t1 = tail_set(&s, &orbit, 1, [729, 1]).unwrap();
        let t100 = tail_set(&s, &orbit, 100, [729, 1]).unwrap();
        assert!(t100.is_subset_of(&t1).unwrap());
        assert!(matches!(
            tail_set(&s, &orbit, 501, [729, 1]),
            Err(Error::TailOutOfRange { start: 501, len: 501 })
        ));
    }

    #[test]
    fn same_seed_reruns_identically() {
        let s = cantor_system();
        let stream = SymbolStream::random(99, vec![0.5, 0.5]).unwrap();
        let a = chaos_orbit(&s, [0.1, 0.0], &stream, 200).unwrap();
        let b = chaos_orbit(&s, [0.1, 0.0], &stream, 200).unwrap();
        let bits = |o: &OrbitRecord| o.points.iter().map(|p| p[0].to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        assert_eq!(a.symbols, b.symbols);
    }

    #[test]
    fn chaos_game_verifies_on_a_contracting_system() {
        let s = cantor_system();
        let params = ChaosGameParams {
            res: [729, 1],
            n: 20_000,
            ell_schedule: vec![64, 512, 4096],
            tol: 3.0 / 729.0,
            eps: 1e-3,
            max_len: 12,
            iterate_budget: 60,
            stability_eps: 0.02,
            stability_budget: 60,
            stability_shrink: 3,
            override_hypothesis: false,
        };
        let stream = SymbolStream::random(7, vec![0.5, 0.5]).unwrap();
        let report = verify_chaos_game(&s, [0.5, 0.0], &stream, &params).unwrap();
        assert!(matches!(report.stability, StabilityVerdict::StableWitness { .. }));
        assert!(report.caveat.is_none());
        assert!(report.passed, "trace: {:?}", report.trace);
    }

    #[test]
    fn chaos_game_refuses_without_certified_points() {
        let s = involution_system();
        let params = ChaosGameParams {
            res: [512, 1],
            n: 1000,
            ell_schedule: vec![],
            tol: 0.01,
            eps: 0.05,
            max_len: 10,
            iterate_budget: 20,
            stability_eps: 0.05,
            stability_budget: 20,
            stability_shrink: 2,
            override_hypothesis: false,
        };
        let stream = SymbolStream::random(1, vec![0.5, 0.5]).unwrap();
        match verify_chaos_game(&s, [0.25, 0.0], &stream, &params) {
            Err(Error::HypothesisUnmet(msg)) => {
                assert!(msg.contains("no semifractal"), "message: {msg}");
            }
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn orbits_match_reversed_codings_bitwise(
            w in prop::collection::vec(1u8..=2, 1..20),
            x in 0.0f64..=1.0,
        ) {
            let s = cantor_system();
            let orbit =
                chaos_orbit(&s, [x, 0.0], &SymbolStream::explicit(w.clone()), w.len()).unwrap();
            // Evaluate the coding composition of the reversed word:
            // its last symbol (= w[0]) is applied first.
            let rev: Vec<u8> = w.iter().rev().copied().collect();
            let mut p = [x, 0.0];
            for &sym in rev.iter().rev() {
                p = s.map(sym).unwrap().eval(p).unwrap();
            }
            prop_assert_eq!(orbit.points.last().unwrap()[0].to_bits(), p[0].to_bits());
        }
    }
}
