//! Ready-to-load example systems with per-example hypothesis verifiers.
//!
//! Each entry records where its numbers come from: `stated` parameters
//! are part of the example's standard definition, while `chosen`
//! parameters were picked here to satisfy the example's qualitative
//! conditions, with the rationale written out.  The verifier for each
//! example re-checks every condition numerically — fixed-point counts
//! and types by sign scans and secant slopes, contraction claims by
//! interval Lipschitz bounds, covering claims by interval-image unions —
//! so a bad instantiation fails loudly in the test suite.

use crate::attractors::{CheckItem, CheckReport};
use crate::error::{Error, Result};
use crate::maps::{IFSystem, MapDescriptor};
use crate::sets::{BoxDomain, IntervalBox};

/// Where a parameter value comes from.
#[derive(Debug, Clone)]
pub struct ParamNote {
    pub param: String,
    pub value: f64,
    /// True when the value is part of the example's standard
    /// definition; false when it was chosen during instantiation.
    pub stated: bool,
    pub rationale: String,
}

/// A named example system with its parameter notes and behavior tags.
#[derive(Debug, Clone)]
pub struct ExampleEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub system: IFSystem,
    pub notes: Vec<ParamNote>,
    /// Machine-checkable behaviors exercised elsewhere in the suite.
    pub claims: Vec<&'static str>,
}

/// All catalog names, in a stable order.
pub const CATALOG: [&str; 7] = [
    "cantor_classic",
    "cantor_stable",
    "bony",
    "porcupine",
    "involution",
    "nonregular",
    "sierpinski",
];

fn note(param: &str, value: f64, stated: bool, rationale: &str) -> ParamNote {
    ParamNote { param: param.into(), value, stated, rationale: rationale.into() }
}

/// Loads one catalog entry by name.
pub fn load_example(name: &str) -> Result<ExampleEntry> {
    match name {
        "cantor_classic" => {
            let dom = BoxDomain::new_1d(0.0, 1.0)?;
            let f1 = MapDescriptor::affine_1d(dom, 1.0 / 3.0, 0.0)?;
            let f2 = MapDescriptor::affine_1d(dom, 1.0 / 3.0, 2.0 / 3.0)?;
            Ok(ExampleEntry {
                name: "cantor_classic",
                summary: "Two thirds-scale contractions on [0,1]; the limit set is the middle-thirds set.",
                system: IFSystem::new(dom, vec![f1, f2], None)?,
                notes: vec![
                    note("ratio", 1.0 / 3.0, true, "both maps scale by one third"),
                    note("offset_2", 2.0 / 3.0, true, "second map shifts to the upper third"),
                ],
                claims: vec!["contracting", "unique-fixed-set", "global-attraction"],
            })
        }
        "cantor_stable" => {
            let dom = BoxDomain::new_1d(0.0, 2.0)?;
            let f1 = MapDescriptor::affine_1d(dom, 1.0 / 3.0, 0.0)?;
            let f2 = MapDescriptor::piecewise_linear(
                dom,
                vec![(0.0, 2.0 / 3.0), (1.0, 1.0), (2.0, 2.0)],
            )?;
            Ok(ExampleEntry {
                name: "cantor_stable",
                summary: "Middle-thirds maps on [0,1] extended by an identity piece on [1,2]: \
                          the minimal limit set is stable but no neighborhood collapses onto it.",
                system: IFSystem::new(dom, vec![f1, f2], None)?,
                notes: vec![
                    note("ratio_1", 1.0 / 3.0, true, "first map scales by one third"),
                    note(
                        "f2_knee",
                        1.0,
                        true,
                        "second map is x/3 + 2/3 below 1 and the identity above 1, joined at 1",
                    ),
                ],
                claims: vec![
                    "minimal-limit-is-middle-thirds",
                    "stable",
                    "no-neighborhood-collapse",
                    "one-sided-attraction-only",
                    "deterministic-chaos-game",
                ],
            })
        }
        "bony" => {
            let dom = BoxDomain::new_1d(0.0, 1.0)?;
            let f1 = MapDescriptor::piecewise_linear(
                dom,
                vec![(0.0, 0.0), (0.6, 0.2), (1.0, 0.8)],
            )?;
            let f2 = MapDescriptor::piecewise_linear(
                dom,
                vec![(0.0, 0.15), (0.4, 0.8), (1.0, 1.0)],
            )?;
            Ok(ExampleEntry {
                name: "bony",
                summary: "Two piecewise-linear maps, each with an expanding piece, yet every \
                          word over the block set {111, 112, 221, 22222} contracts and the \
                          block images cover [0,1].",
                system: IFSystem::new(dom, vec![f1, f2], None)?,
                notes: vec![
                    note("f1_vertex_mid_x", 0.6, true, "first map bends at (0.6, 0.2)"),
                    note("f1_vertex_end_y", 0.8, true, "first map ends at (1, 0.8)"),
                    note("f2_vertex_mid_x", 0.4, true, "second map bends at (0.4, 0.8)"),
                    note("f2_vertex_start_y", 0.15, true, "second map starts at (0, 0.15)"),
                ],
                claims: vec!["block-contractions", "block-cover", "composed-expansion"],
            })
        }
        "porcupine" => {
            let dom = BoxDomain::new_1d(0.0, 1.0)?;
            let lambda = 0.8;
            let f1 = MapDescriptor::affine_1d(dom, -lambda, lambda)?;
            let f2 = MapDescriptor::piecewise_linear(
                dom,
                vec![(0.0, 0.0), (0.5, 0.7), (1.0, 1.0)],
            )?;
            Ok(ExampleEntry {
                name: "porcupine",
                summary: "An orientation-reversing contraction f1 = 0.8(1-x) paired with an \
                          increasing map fixing 0 (repelling) and 1 (attracting); the limit \
                          set is all of [0,1] but 1 is never coded.",
                system: IFSystem::new(dom, vec![f1, f2], None)?,
                notes: vec![
                    note(
                        "lambda",
                        lambda,
                        false,
                        "the definition leaves the contraction factor open; 0.8 keeps the \
                         base point 4/9 simple and satisfies the contraction condition on \
                         the upper interval",
                    ),
                    note(
                        "f2_knee",
                        0.5,
                        false,
                        "a two-piece increasing map with slopes 1.4 and 0.6: 0 repelling, 1 \
                         attracting at a uniform rate, so composed images approach 1 slowly \
                         enough to stay measurably below it at word budgets",
                    ),
                    note(
                        "base_point",
                        4.0 / 9.0,
                        true,
                        "the fixed point of f1 is lambda/(1+lambda)",
                    ),
                ],
                claims: vec!["full-interval-limit", "top-point-never-coded", "global-attraction"],
            })
        }
        "involution" => {
            let dom = BoxDomain::new_1d(0.0, 1.0)?;
            let f1 = MapDescriptor::affine_1d(dom, 1.0, 0.0)?;
            let f2 = MapDescriptor::affine_1d(dom, -1.0, 1.0)?;
            Ok(ExampleEntry {
                name: "involution",
                summary: "The identity and the mirror x -> 1-x: no composition ever \
                          contracts, so there is no coded target set and no minimum fixed \
                          set — mirror-symmetric pairs are all fixed.",
                system: IFSystem::new(dom, vec![f1, f2], None)?,
                notes: vec![note("mirror_center", 0.5, true, "the second map reflects about 1/2")],
                claims: vec!["no-certified-words", "many-disjoint-fixed-sets"],
            })
        }
        "nonregular" => {
            let dom = BoxDomain::new_1d(0.0, 1.0)?;
            let f1 = MapDescriptor::quadratic(dom, -1.0, 2.0, 0.0)?;
            let f2 = MapDescriptor::piecewise_linear(
                dom,
                vec![(0.0, 0.3), (0.4, 0.66), (0.75, 0.695), (0.85, 0.945), (1.0, 0.95)],
            )?;
            Ok(ExampleEntry {
                name: "nonregular",
                summary: "A parabola fixing 0 (repelling) and 1 (attracting) paired with a \
                          five-piece map with three fixed points; iterates of the second \
                          map's image under the first eventually split away from it.",
                system: IFSystem::new(dom, vec![f1, f2], None)?,
                notes: vec![
                    note(
                        "f1_coeffs",
                        2.0,
                        false,
                        "2x - x^2 is the simplest increasing self-map with 0 repelling and 1 \
                         attracting",
                    ),
                    note(
                        "f2_vertices",
                        5.0,
                        false,
                        "five vertices are the minimum that give three interior fixed points \
                         of alternating type while keeping the single crossing with f1 \
                         inside (image-min, first-fixed-point); four-vertex graphs cannot",
                    ),
                ],
                claims: vec!["two-fixed-sets", "splitting"],
            })
        }
        "sierpinski" => {
            let dom = BoxDomain::new_2d([0.0, 0.0], [1.0, 1.0])?;
            let half = [[0.5, 0.0], [0.0, 0.5]];
            let f1 = MapDescriptor::affine_2d(dom, half, [0.0, 0.0])?;
            let f2 = MapDescriptor::affine_2d(dom, half, [0.5, 0.0])?;
            let f3 = MapDescriptor::affine_2d(dom, half, [0.0, 0.5])?;
            Ok(ExampleEntry {
                name: "sierpinski",
                summary: "Three half-scale contractions toward the corners (0,0), (1,0), \
                          (0,1); the limit set is the right-angled gasket.",
                system: IFSystem::new(dom, vec![f1, f2, f3], None)?,
                notes: vec![note("ratio", 0.5, true, "all three maps scale by one half")],
                claims: vec!["contracting", "unique-fixed-set", "global-attraction"],
            })
        }
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// A located fixed point of a 1D map with a secant slope measured on a
/// small bracket around it.
#[derive(Debug, Clone, Copy)]
struct FixedPoint {
    x: f64,
    slope: f64,
}

/// Finds all fixed points of a 1D map by a sign scan of f(x) − x with
/// bisection refinement; exact zeros at the domain endpoints are caught
/// separately.
fn fixed_points_1d(map: &MapDescriptor, lo: f64, hi: f64, samples: usize) -> Result<Vec<FixedPoint>> {
    let g = |x: f64| -> Result<f64> { Ok(map.eval([x, 0.0])?[0] - x) };
    let slope_at = |x: f64| -> Result<f64> {
        let d = 1e-6 * (hi - lo);
        let a = (x - d).max(lo);
        let b = (x + d).min(hi);
        Ok((map.eval([b, 0.0])?[0] - map.eval([a, 0.0])?[0]) / (b - a))
    };
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if !roots.iter().any(|&p| (p - r).abs() < 1e-7 * (hi - lo)) {
            roots.push(r);
        }
    };
    let step = (hi - lo) / samples as f64;
    let mut prev_x = lo;
    let mut prev_g = g(lo)?;
    if prev_g == 0.0 {
        push(lo, &mut roots);
    }
    for i in 1..=samples {
        let x = if i == samples { hi } else { lo + i as f64 * step };
        let gx = g(x)?;
        if gx == 0.0 {
            push(x, &mut roots);
        } else if prev_g != 0.0 && (gx > 0.0) != (prev_g > 0.0) {
            let (mut a, mut b) = (prev_x, x);
            let mut ga = prev_g;
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                let gm = g(m)?;
                if gm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (gm > 0.0) == (ga > 0.0) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            push(0.5 * (a + b), &mut roots);
        }
        prev_x = x;
        prev_g = gx;
    }
    roots.sort_by(f64::total_cmp);
    roots.into_iter().map(|x| Ok(FixedPoint { x, slope: slope_at(x)? })).collect()
}

fn item(name: &str, passed: bool, details: String) -> CheckItem {
    CheckItem { name: name.into(), passed, details }
}

fn check_fixed_point_profile(
    report: &mut CheckReport,
    label: &str,
    map: &MapDescriptor,
    lo: f64,
    hi: f64,
    expected: &[(f64, bool)],
) -> Result<()> {
    let found = fixed_points_1d(map, lo, hi, 4096)?;
    let count_ok = found.len() == expected.len();
    report.items.push(item(
        &format!("{label}-fixed-point-count"),
        count_ok,
        format!(
            "expected {} fixed points, found {} at {:?}",
            expected.len(),
            found.len(),
            found.iter().map(|p| p.x).collect::<Vec<_>>()
        ),
    ));
    if count_ok {
        for (fp, &(x_expect, attracting)) in found.iter().zip(expected) {
            let near = (fp.x - x_expect).abs() <= 1e-6;
            let type_ok = if attracting { fp.slope.abs() < 1.0 } else { fp.slope.abs() > 1.0 };
            report.items.push(item(
                &format!("{label}-fixed-point-at-{x_expect}"),
                near && type_ok,
                format!(
                    "root {:.9} (expected {:.9}), secant slope {:.4} ({})",
                    fp.x,
                    x_expect,
                    fp.slope,
                    if attracting { "want attracting" } else { "want repelling" }
                ),
            ));
        }
    }
    Ok(())
}

fn box_1d(lo: f64, hi: f64) -> IntervalBox {
    IntervalBox::new_1d(lo, hi)
}

/// Re-checks every enumerated hypothesis of a catalog entry.  A failing
/// item means the instantiation itself is wrong.
pub fn verify_example_conditions(name: &str) -> Result<CheckReport> {
    let entry = load_example(name)?;
    let sys = &entry.system;
    let mut report = CheckReport::default();
    match name {
        "cantor_classic" => {
            for (i, f) in sys.maps().iter().enumerate() {
                let l = f.lipschitz_bound(&box_1d(0.0, 1.0))?;
                report.items.push(item(
                    &format!("map-{}-contracts", i + 1),
                    l < 1.0,
                    format!("Lipschitz bound {l}"),
                ));
            }
            let i1 = sys.maps()[0].interval_image(&box_1d(0.0, 1.0))?;
            let i2 = sys.maps()[1].interval_image(&box_1d(0.0, 1.0))?;
            report.items.push(item(
                "images-disjoint",
                i1.hi[0] < i2.lo[0],
                format!("images [{}, {}] and [{}, {}]", i1.lo[0], i1.hi[0], i2.lo[0], i2.hi[0]),
            ));
        }
        "cantor_stable" => {
            let l1 = sys.maps()[0].lipschitz_bound(&box_1d(0.0, 2.0))?;
            report.items.push(item("map-1-contracts", l1 < 1.0, format!("Lipschitz bound {l1}")));
            // Probe strictly below the knee: the bound over a box counts
            // every piece it touches, including the one starting at 1.
            let low = sys.maps()[1].lipschitz_bound(&box_1d(0.0, 1.0 - 1e-9))?;
            report.items.push(item(
                "map-2-contracts-below-knee",
                (low - 1.0 / 3.0).abs() < 1e-12,
                format!("Lipschitz bound {low} below the knee"),
            ));
            let mut identity_ok = true;
            for i in 0..=8 {
                let x = 1.0 + i as f64 / 8.0;
                if sys.maps()[1].eval([x, 0.0])?[0] != x {
                    identity_ok = false;
                }
            }
            report.items.push(item(
                "map-2-identity-above-knee",
                identity_ok,
                "pointwise identity on [1,2] at dyadic samples".into(),
            ));
            let at0 = sys.maps()[1].eval([0.0, 0.0])?[0];
            report.items.push(item(
                "map-2-start",
                (at0 - 2.0 / 3.0).abs() < 1e-15,
                format!("f2(0) = {at0}"),
            ));
        }
        "bony" => {
            // Each single map has an expanding piece.
            for (i, seg) in [(0usize, box_1d(0.6, 1.0)), (1usize, box_1d(0.0, 0.4))] {
                let l = sys.maps()[i].lipschitz_bound(&seg)?;
                report.items.push(item(
                    &format!("map-{}-has-expanding-piece", i + 1),
                    l > 1.0,
                    format!("Lipschitz bound {l} on [{}, {}]", seg.lo[0], seg.hi[0]),
                ));
            }
            // The four blocks contract and their images cover [0,1].
            let blocks = ["111", "112", "221", "22222"];
            let mut images: Vec<(f64, f64)> = Vec::new();
            for b in blocks {
                let parts: Vec<MapDescriptor> = b
                    .chars()
                    .map(|c| sys.maps()[c.to_digit(10).unwrap() as usize - 1].clone())
                    .collect();
                let comp = MapDescriptor::composite(parts)?;
                let l = comp.lipschitz_bound(&box_1d(0.0, 1.0))?;
                report.items.push(item(
                    &format!("block-{b}-contracts"),
                    l < 1.0,
                    format!("chained Lipschitz bound {l}"),
                ));
                let im = comp.interval_image(&box_1d(0.0, 1.0))?;
                images.push((im.lo[0], im.hi[0]));
            }
            images.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut cover_hi = images[0].0;
            let mut covered = images[0].0 <= 1e-12;
            for (lo, hi) in images {
                if lo <= cover_hi + 1e-12 {
                    cover_hi = cover_hi.max(hi);
                } else {
                    covered = false;
                }
            }
            covered = covered && cover_hi >= 1.0 - 1e-12;
            report.items.push(item(
                "block-images-cover",
                covered,
                format!("sweep reached {cover_hi}"),
            ));
            // The composition f1 after f2 has an expanding fixed point.
            let comp =
                MapDescriptor::composite(vec![sys.maps()[0].clone(), sys.maps()[1].clone()])?;
            let fps = fixed_points_1d(&comp, 0.0, 1.0, 8192)?;
            let expanding = fps.iter().find(|fp| fp.slope.abs() > 1.0);
            report.items.push(item(
                "composed-map-expanding-fixed-point",
                expanding.is_some(),
                format!(
                    "fixed points {:?}",
                    fps.iter().map(|p| (p.x, p.slope)).collect::<Vec<_>>()
                ),
            ));
        }
        "porcupine" => {
            let lambda = 0.8;
            let l1 = sys.maps()[0].lipschitz_bound(&box_1d(0.0, 1.0))?;
            report.items.push(item(
                "map-1-contraction-factor",
                (l1 - lambda).abs() < 1e-12,
                format!("Lipschitz bound {l1}"),
            ));
            check_fixed_point_profile(
                &mut report,
                "map-2",
                &sys.maps()[1],
                0.0,
                1.0,
                &[(0.0, false), (1.0, true)],
            )?;
            // Monotone: positive secant on every sample pair.
            let mut increasing = true;
            for i in 0..256 {
                let a = i as f64 / 256.0;
                let b = (i + 1) as f64 / 256.0;
                if sys.maps()[1].eval([b, 0.0])?[0] <= sys.maps()[1].eval([a, 0.0])?[0] {
                    increasing = false;
                }
            }
            report.items.push(item("map-2-increasing", increasing, "secants positive".into()));
            // Uniform contraction from the preimage of lambda up to 1.
            let pre = 2.0 / 3.0;
            let at_pre = sys.maps()[1].eval([pre, 0.0])?[0];
            report.items.push(item(
                "map-2-preimage-of-lambda",
                (at_pre - lambda).abs() < 1e-12,
                format!("f2({pre}) = {at_pre}"),
            ));
            let upper = sys.maps()[1].lipschitz_bound(&box_1d(pre, 1.0))?;
            report.items.push(item(
                "map-2-contracts-above-preimage",
                upper < 1.0,
                format!("Lipschitz bound {upper} on [{pre}, 1]"),
            ));
            let p = lambda / (1.0 + lambda);
            let at_p = sys.maps()[0].eval([p, 0.0])?[0];
            report.items.push(item(
                "base-point-fixed",
                (at_p - p).abs() < 1e-15,
                format!("f1({p}) = {at_p}"),
            ));
        }
        "involution" => {
            let mut id_ok = true;
            let mut invol_ok = true;
            for i in 0..=64 {
                let x = i as f64 / 64.0;
                if sys.maps()[0].eval([x, 0.0])?[0] != x {
                    id_ok = false;
                }
                let y = sys.maps()[1].eval([x, 0.0])?[0];
                if sys.maps()[1].eval([y, 0.0])?[0] != x {
                    invol_ok = false;
                }
            }
            report.items.push(item("map-1-identity", id_ok, "pointwise at 65 samples".into()));
            report
                .items
                .push(item("map-2-involution", invol_ok, "f2(f2(x)) = x at 65 samples".into()));
            for (i, f) in sys.maps().iter().enumerate() {
                let l = f.lipschitz_bound(&box_1d(0.0, 1.0))?;
                report.items.push(item(
                    &format!("map-{}-isometry", i + 1),
                    (l - 1.0).abs() < 1e-12,
                    format!("Lipschitz bound {l}"),
                ));
            }
        }
        "nonregular" => {
            check_fixed_point_profile(
                &mut report,
                "map-1",
                &sys.maps()[0],
                0.0,
                1.0,
                &[(0.0, false), (1.0, true)],
            )?;
            let p1 = 0.62 / 0.9;
            let p2 = 1.18 / 1.5;
            let p3 = 0.91666666666666666 * 30.0 / 29.0;
            check_fixed_point_profile(
                &mut report,
                "map-2",
                &sys.maps()[1],
                0.0,
                1.0,
                &[(p1, true), (p2, false), (p3, true)],
            )?;
            let image = sys.maps()[1].interval_image(&box_1d(0.0, 1.0))?;
            let (alpha, beta) = (image.lo[0], image.hi[0]);
            report.items.push(item(
                "map-2-image-interior",
                alpha > 0.0 && beta < 1.0,
                format!("image [{alpha}, {beta}]"),
            ));
            let f1_at_p1 = sys.maps()[0].eval([p1, 0.0])?[0];
            report.items.push(item(
                "first-fixed-point-moves-up",
                p1 < f1_at_p1 && f1_at_p1 < beta,
                format!("f1({p1:.6}) = {f1_at_p1:.6}, image top {beta}"),
            ));
            // Exactly one crossing of the two graphs, inside (alpha, p1).
            let mut crossings = Vec::new();
            let samples = 8192;
            let mut prev = sys.maps()[0].eval([0.0, 0.0])?[0] - sys.maps()[1].eval([0.0, 0.0])?[0];
            for i in 1..=samples {
                let x = i as f64 / samples as f64;
                let d = sys.maps()[0].eval([x, 0.0])?[0] - sys.maps()[1].eval([x, 0.0])?[0];
                if d == 0.0 || (d > 0.0) != (prev > 0.0) {
                    crossings.push(x);
                }
                prev = d;
            }
            let unique_inside = crossings.len() == 1
                && crossings[0] > alpha
                && crossings[0] < p1;
            report.items.push(item(
                "single-crossing-in-window",
                unique_inside,
                format!("crossings near {crossings:?}, window ({alpha}, {p1:.6})"),
            ));
            // Splitting: some forward image of the second map's image
            // under the first map clears that image entirely.
            let mut current = image;
            let mut split_at = None;
            for n in 1..=8 {
                current = sys.maps()[0].interval_image(&current)?;
                if current.lo[0] > beta || current.hi[0] < alpha {
                    split_at = Some(n);
                    break;
                }
            }
            report.items.push(item(
                "iterates-split-off",
                split_at.is_some(),
                format!("first separated iterate: {split_at:?}"),
            ));
        }
        "sierpinski" => {
            let full = IntervalBox::new_2d([0.0, 0.0], [1.0, 1.0]);
            for (i, f) in sys.maps().iter().enumerate() {
                let l = f.lipschitz_bound(&full)?;
                report.items.push(item(
                    &format!("map-{}-halves", i + 1),
                    (l - 0.5).abs() < 1e-12,
                    format!("Lipschitz bound {l}"),
                ));
            }
        }
        other => return Err(Error::UnknownExample(other.to_string())),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads_and_passes_its_conditions() {
        for name in CATALOG {
            let entry = load_example(name).unwrap();
            assert_eq!(entry.name, name);
            assert!(!entry.claims.is_empty());
            let report = verify_example_conditions(name).unwrap();
            assert!(report.passed(), "{name} conditions:\n{report}");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(load_example("koch"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn every_parameter_note_has_a_rationale() {
        for name in CATALOG {
            let entry = load_example(name).unwrap();
            assert!(!entry.notes.is_empty(), "{name} has no parameter notes");
            for n in &entry.notes {
                assert!(!n.rationale.is_empty(), "{name}:{} lacks a rationale", n.param);
            }
        }
    }

    #[test]
    fn steep_piece_of_the_bony_second_map() {
        let entry = load_example("bony").unwrap();
        let l = entry.system.maps()[1]
            .lipschitz_bound(&IntervalBox::new_1d(0.0, 0.4))
            .unwrap();
        assert!((l - 1.625).abs() < 1e-12, "bound {l}");
    }

    #[test]
    fn porcupine_base_point_is_fixed_by_the_first_map() {
        let entry = load_example("porcupine").unwrap();
        let p = 4.0 / 9.0;
        let image = entry.system.maps()[0].eval([p, 0.0]).unwrap()[0];
        assert!((image - p).abs() < 1e-15, "f1(4/9) = {image}");
    }

    #[test]
    fn involution_maps_preserve_distances() {
        let entry = load_example("involution").unwrap();
        assert_eq!(entry.system.k(), 2);
        for f in entry.system.maps() {
            let l = f.lipschitz_bound(&IntervalBox::new_1d(0.0, 1.0)).unwrap();
            assert!((l - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stated_and_chosen_parameters_are_distinguished() {
        let entry = load_example("porcupine").unwrap();
        assert!(entry.notes.iter().any(|n| n.stated));
        assert!(entry.notes.iter().any(|n| !n.stated));
    }
}
