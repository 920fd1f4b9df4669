//! Map models: evaluation, interval enclosures, Lipschitz bounds, and
//! raster images of grid sets.
//!
//! Every map is a validated continuous self-map of its box domain.  Four
//! families are supported — affine, piecewise-linear (1D), quadratic
//! (1D), and compositions of the other three — chosen so that the image
//! of an axis-aligned box can be *enclosed exactly* (up to f64 rounding)
//! by evaluating finitely many candidate points.  That enclosure
//! discipline is what makes every downstream set computation an outer
//! approximation.

use crate::error::{Error, Result};
use crate::sets::{BoxDomain, GridSet, IntervalBox, Point};

/// Grid used by the construction-time self-map check on 1D domains.
const SELF_MAP_CHECK_1D: usize = 1024;
/// Per-axis grid used by the self-map check on 2D domains.
const SELF_MAP_CHECK_2D: usize = 64;
/// Sub-boxes per axis when bounding the Lipschitz constant of a
/// composition (1D).
const LIPSCHITZ_SUBDIV_1D: usize = 256;
/// Sub-boxes per axis for 2D compositions.
const LIPSCHITZ_SUBDIV_2D: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    Affine { matrix: [[f64; 2]; 2], offset: [f64; 2] },
    PiecewiseLinear1D { vertices: Vec<(f64, f64)> },
    Quadratic1D { a: f64, b: f64, c: f64 },
    /// Parts are applied right-to-left: `parts[0]` acts last.
    Composite { parts: Vec<MapDescriptor> },
}

/// A continuous self-map of a box domain, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MapDescriptor {
    kind: MapKind,
    domain: BoxDomain,
}

impl MapDescriptor {
    /// One-dimensional affine map `x ↦ a·x + b`.
    pub fn affine_1d(domain: BoxDomain, a: f64, b: f64) -> Result<Self> {
        if domain.dim() != 1 {
            return Err(Error::InvalidMap("1D affine map needs a 1D domain".into()));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidMap("affine coefficients must be finite".into()));
        }
        Self::finish(MapKind::Affine { matrix: [[a, 0.0], [0.0, 0.0]], offset: [b, 0.0] }, domain)
    }

    /// Planar affine map `p ↦ M·p + b`.
    pub fn affine_2d(domain: BoxDomain, matrix: [[f64; 2]; 2], offset: [f64; 2]) -> Result<Self> {
        if domain.dim() != 2 {
            return Err(Error::InvalidMap("2D affine map needs a 2D domain".into()));
        }
        let finite = matrix.iter().flatten().chain(offset.iter()).all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidMap("affine coefficients must be finite".into()));
        }
        Self::finish(MapKind::Affine { matrix, offset }, domain)
    }

    /// Piecewise-linear interpolant of the given vertices.  The x
    /// coordinates must be strictly increasing and span the domain
    /// exactly; the y coordinates must lie inside the domain.
    pub fn piecewise_linear(domain: BoxDomain, vertices: Vec<(f64, f64)>) -> Result<Self> {
        if domain.dim() != 1 {
            return Err(Error::InvalidMap("piecewise-linear map needs a 1D domain".into()));
        }
        if vertices.len() < 2 {
            return Err(Error::InvalidMap("piecewise-linear map needs at least 2 vertices".into()));
        }
        if vertices.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidMap("vertices must be finite".into()));
        }
        for w in vertices.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidMap(format!(
                    "vertex x-coordinates must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        let b = domain.bounds();
        if vertices[0].0 != b.lo[0] || vertices.last().unwrap().0 != b.hi[0] {
            return Err(Error::InvalidMap(format!(
                "vertices must span the domain [{}, {}] exactly",
                b.lo[0], b.hi[0]
            )));
        }
        if vertices.iter().any(|&(_, y)| y < b.lo[0] || y > b.hi[0]) {
            return Err(Error::InvalidMap("vertex values must lie inside the domain".into()));
        }
        Self::finish(MapKind::PiecewiseLinear1D { vertices }, domain)
    }

    /// Quadratic map `x ↦ a·x² + b·x + c`.
    pub fn quadratic(domain: BoxDomain, a: f64, b: f64, c: f64) -> Result<Self> {
        if domain.dim() != 1 {
            return Err(Error::InvalidMap("quadratic map needs a 1D domain".into()));
        }
        if !a.is_finite() || !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidMap("quadratic coefficients must be finite".into()));
        }
        Self::finish(MapKind::Quadratic1D { a, b, c }, domain)
    }

    /// Composition of the given maps, applied right-to-left (`parts[0]`
    /// outermost), all sharing one domain.
    pub fn composite(parts: Vec<MapDescriptor>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidMap("composition needs at least one part".into()))?;
        let domain = first.domain;
        if parts.iter().any(|p| p.domain != domain) {
            return Err(Error::InvalidMap("composition parts must share one domain".into()));
        }
        Self::finish(MapKind::Composite { parts }, domain)
    }

    fn finish(kind: MapKind, domain: BoxDomain) -> Result<Self> {
        let desc = MapDescriptor { kind, domain };
        desc.self_map_check()?;
        Ok(desc)
    }

    /// Verifies cell by cell, on a fixed coarse grid, that the enclosure
    /// of every cell stays inside the domain.
    fn self_map_check(&self) -> Result<()> {
        let res = if self.domain.dim() == 1 {
            [SELF_MAP_CHECK_1D, 1]
        } else {
            [SELF_MAP_CHECK_2D, SELF_MAP_CHECK_2D]
        };
        let grid = GridSet::empty(self.domain, res);
        let bounds = self.domain.bounds();
        for cell in 0..grid.ncells() {
            let image = self.interval_image(&grid.cell_box(cell))?;
            if !bounds.contains_box(&image) {
                return Err(Error::NotSelfMap { cell });
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> BoxDomain {
        self.domain
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// Exact map evaluation.
    pub fn eval(&self, p: Point) -> Result<Point> {
        if !self.domain.contains(p) {
            return Err(Error::PointOutsideDomain { x: p[0], y: p[1] });
        }
        Ok(self.eval_unchecked(p))
    }

    fn eval_unchecked(&self, p: Point) -> Point {
        match &self.kind {
            MapKind::Affine { matrix, offset } => {
                let mut out = [0.0; 2];
                for a in 0..self.domain.dim() {
                    let mut acc = offset[a];
                    for b in 0..self.domain.dim() {
                        acc += matrix[a][b] * p[b];
                    }
                    out[a] = acc;
                }
                out
            }
            MapKind::PiecewiseLinear1D { vertices } => [pwl_eval(vertices, p[0]), 0.0],
            MapKind::Quadratic1D { a, b, c } => [(a * p[0] + b) * p[0] + c, 0.0],
            MapKind::Composite { parts } => {
                let mut q = p;
                for part in parts.iter().rev() {
                    q = part.eval_unchecked(q);
                }
                q
            }
        }
    }

    /// A box containing the image of `b`, computed from exact candidate
    /// evaluations (endpoints, overlapped vertices, the critical point).
    /// Compositions chain the enclosures, so their result is a superset
    /// of the true image but not necessarily tight.
    pub fn interval_image(&self, b: &IntervalBox) -> Result<IntervalBox> {
        let bounds = self.domain.bounds();
        if !bounds.contains_box(b) {
            return Err(Error::BoxOutsideDomain);
        }
        let img = match &self.kind {
            MapKind::Affine { matrix, offset } => {
                let d = self.domain.dim();
                let mut lo = [0.0; 2];
                let mut hi = [0.0; 2];
                for a in 0..d {
                    let (mut l, mut h) = (offset[a], offset[a]);
                    for bb in 0..d {
                        let p = matrix[a][bb] * b.lo[bb];
                        let q = matrix[a][bb] * b.hi[bb];
                        l += p.min(q);
                        h += p.max(q);
                    }
                    lo[a] = l;
                    hi[a] = h;
                }
                IntervalBox { dim: d, lo, hi }
            }
            MapKind::PiecewiseLinear1D { vertices } => {
                let (x0, x1) = (b.lo[0], b.hi[0]);
                let mut lo = pwl_eval(vertices, x0);
                let mut hi = lo;
                for v in [pwl_eval(vertices, x1)]
                    .into_iter()
                    .chain(vertices.iter().filter(|&&(x, _)| x0 <= x && x <= x1).map(|&(_, y)| y))
                {
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                IntervalBox::new_1d(lo, hi)
            }
            MapKind::Quadratic1D { a, b: bc, c } => {
                let f = |x: f64| (a * x + bc) * x + c;
                let (mut lo, mut hi) = (f(b.lo[0]), f(b.hi[0]));
                if lo > hi {
                    std::mem::swap(&mut lo, &mut hi);
                }
                if *a != 0.0 {
                    let crit = -bc / (2.0 * a);
                    if b.lo[0] < crit && crit < b.hi[0] {
                        let v = f(crit);
                        lo = lo.min(v);
                        hi = hi.max(v);
                    }
                }
                IntervalBox::new_1d(lo, hi)
            }
            MapKind::Composite { parts } => {
                let mut acc = *b;
                for part in parts.iter().rev() {
                    acc = part.interval_image(&acc)?;
                    // A validated self-map keeps enclosures inside the
                    // domain; intersecting strips only rounding fuzz.
                    acc = bounds.intersect(&acc).unwrap_or(acc);
                }
                acc
            }
        };
        Ok(img)
    }

    /// An upper bound for the Lipschitz constant of the map on `b`.
    ///
    /// Simple kinds use closed forms (operator norm, maximal overlapped
    /// slope, endpoint derivative).  Compositions subdivide the box,
    /// chain per-step bounds through the propagated enclosures, and take
    /// the maximum — subdividing is essential: a single chained product
    /// over the whole box can wildly overestimate mixed-slope maps.
    pub fn lipschitz_bound(&self, b: &IntervalBox) -> Result<f64> {
        let bounds = self.domain.bounds();
        if !bounds.contains_box(b) {
            return Err(Error::BoxOutsideDomain);
        }
        let bound = match &self.kind {
            MapKind::Affine { matrix, .. } => {
                if self.domain.dim() == 1 {
                    matrix[0][0].abs()
                } else {
                    spectral_norm(matrix)
                }
            }
            MapKind::PiecewiseLinear1D { vertices } => {
                let mut worst = 0.0f64;
                for w in vertices.windows(2) {
                    let (piece_lo, piece_hi) = (w[0].0, w[1].0);
                    if piece_lo <= b.hi[0] && piece_hi >= b.lo[0] {
                        worst = worst.max(((w[1].1 - w[0].1) / (piece_hi - piece_lo)).abs());
                    }
                }
                worst
            }
            MapKind::Quadratic1D { a, b: bc, .. } => {
                let d = |x: f64| (2.0 * a * x + bc).abs();
                d(b.lo[0]).max(d(b.hi[0]))
            }
            MapKind::Composite { parts } => {
                let per_axis = if self.domain.dim() == 1 {
                    [LIPSCHITZ_SUBDIV_1D, 1]
                } else {
                    [LIPSCHITZ_SUBDIV_2D, LIPSCHITZ_SUBDIV_2D]
                };
                let mut worst = 0.0f64;
                for sub in subdivide(b, self.domain.dim(), per_axis) {
                    let mut acc = sub;
                    let mut product = 1.0;
                    for part in parts.iter().rev() {
                        product *= part.lipschitz_bound(&acc)?;
                        acc = part.interval_image(&acc)?;
                        acc = bounds.intersect(&acc).unwrap_or(acc);
                    }
                    worst = worst.max(product);
                }
                worst
            }
        };
        Ok(bound)
    }

    /// Outer raster of the image of a grid set: the union over set cells
    /// of the rasterized enclosure of each cell box.
    pub fn image_of_gridset(&self, set: &GridSet) -> Result<GridSet> {
        if set.domain() != self.domain {
            return Err(Error::IncompatibleGrids);
        }
        let bounds = self.domain.bounds();
        let mut out = GridSet::empty(set.domain(), set.res());
        for cell in set.iter_cells() {
            let img = self.interval_image(&set.cell_box(cell))?;
            if let Some(clipped) = bounds.intersect(&img) {
                out.mark_box(&clipped)?;
            }
        }
        Ok(out)
    }
}

/// Evaluates a piecewise-linear vertex list.  Vertex x-coordinates return
/// the stored y exactly, and interpolated values are clamped to the
/// piece's y-range so rounding can never push an evaluation past a vertex
/// value.
fn pwl_eval(vertices: &[(f64, f64)], x: f64) -> f64 {
    let mut lo = 0;
    let mut hi = vertices.len() - 1;
    // Invariant: vertices[lo].0 <= x <= vertices[hi].0.
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if vertices[mid].0 <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (xa, ya) = vertices[lo];
    let (xb, yb) = vertices[hi];
    if x == xa {
        return ya;
    }
    if x == xb {
        return yb;
    }
    let y = ya + (x - xa) / (xb - xa) * (yb - ya);
    y.max(ya.min(yb)).min(ya.max(yb))
}

/// Largest singular value of a 2×2 matrix.
fn spectral_norm(m: &[[f64; 2]; 2]) -> f64 {
    let s1 = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (s1 * s1 - 4.0 * det * det).max(0.0);
    (0.5 * (s1 + disc.sqrt())).sqrt()
}

/// Regular partition of a box into sub-boxes, row-major.
fn subdivide(b: &IntervalBox, dim: usize, per_axis: [usize; 2]) -> Vec<IntervalBox> {
    let nx = per_axis[0];
    let ny = if dim == 2 { per_axis[1] } else { 1 };
    let hx = (b.hi[0] - b.lo[0]) / nx as f64;
    let hy = if dim == 2 { (b.hi[1] - b.lo[1]) / ny as f64 } else { 0.0 };
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let lo = [b.lo[0] + i as f64 * hx, b.lo[1] + j as f64 * hy];
            let hi = [
                if i + 1 == nx { b.hi[0] } else { b.lo[0] + (i + 1) as f64 * hx },
                if dim == 2 {
                    if j + 1 == ny {
                        b.hi[1]
                    } else {
                        b.lo[1] + (j + 1) as f64 * hy
                    }
                } else {
                    0.0
                },
            ];
            out.push(IntervalBox { dim, lo, hi });
        }
    }
    out
}

/// A finite family of maps over one domain, optionally weighted for
/// random orbit sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct IFSystem {
    domain: BoxDomain,
    maps: Vec<MapDescriptor>,
    weights: Option<Vec<f64>>,
}

impl IFSystem {
    pub fn new(
        domain: BoxDomain,
        maps: Vec<MapDescriptor>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidMap("a system needs at least one map".into()));
        }
        if maps.iter().any(|m| m.domain() != domain) {
            return Err(Error::InvalidMap("all maps must share the system domain".into()));
        }
        if let Some(w) = &weights {
            if w.len() != maps.len() {
                return Err(Error::InvalidWeights(format!(
                    "{} weights for {} maps",
                    w.len(),
                    maps.len()
                )));
            }
            if w.iter().any(|&p| !(p > 0.0)) {
                return Err(Error::InvalidWeights("weights must be strictly positive".into()));
            }
            let sum: f64 = w.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidWeights(format!("weights sum {sum}")));
            }
        }
        Ok(IFSystem { domain, maps, weights })
    }

    pub fn domain(&self) -> BoxDomain {
        self.domain
    }

    /// Number of maps.
    pub fn k(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[MapDescriptor] {
        &self.maps
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// The map for a 1-based symbol.
    pub fn map(&self, symbol: u8) -> Result<&MapDescriptor> {
        if symbol == 0 || symbol as usize > self.maps.len() {
            return Err(Error::SymbolOutOfRange { symbol, k: self.maps.len() });
        }
        Ok(&self.maps[symbol as usize - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> BoxDomain {
        BoxDomain::new_1d(0.0, 1.0).unwrap()
    }

    fn bony_f1() -> MapDescriptor {
        MapDescriptor::piecewise_linear(unit(), vec![(0.0, 0.0), (0.6, 0.2), (1.0, 0.8)]).unwrap()
    }

    fn bony_f2() -> MapDescriptor {
        MapDescriptor::piecewise_linear(unit(), vec![(0.0, 0.15), (0.4, 0.8), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn affine_eval() {
        let f = MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap();
        assert_eq!(f.eval([1.0, 0.0]).unwrap()[0], 1.0 / 3.0);
        assert!(f.eval([1.5, 0.0]).is_err());
    }

    #[test]
    fn pwl_eval_hits_vertices_exactly() {
        let f = bony_f1();
        assert_eq!(f.eval([0.6, 0.0]).unwrap()[0], 0.2);
        assert_eq!(f.eval([0.0, 0.0]).unwrap()[0], 0.0);
        assert_eq!(f.eval([1.0, 0.0]).unwrap()[0], 0.8);
    }

    #[test]
    fn pwl_eval_clamps_to_piece_range() {
        // Interpolation rounding must never push a value past a vertex.
        let f = MapDescriptor::piecewise_linear(
            unit(),
            vec![(0.0, 0.0), (0.4, 0.8), (1.0, 1.0)],
        )
        .unwrap();
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            let y = f.eval([x, 0.0]).unwrap()[0];
            assert!((0.0..=1.0).contains(&y), "f({x}) = {y}");
        }
    }

    #[test]
    fn quadratic_eval_fixed_point() {
        let f = MapDescriptor::quadratic(unit(), -1.0, 2.0, 0.0).unwrap();
        assert_eq!(f.eval([1.0, 0.0]).unwrap()[0], 1.0);
        assert_eq!(f.eval([0.0, 0.0]).unwrap()[0], 0.0);
    }

    #[test]
    fn quadratic_never_escapes_unit_interval() {
        let f = MapDescriptor::quadratic(unit(), -1.0, 2.0, 0.0).unwrap();
        for i in 0..=100_000 {
            let x = i as f64 / 100_000.0;
            let y = f.eval([x, 0.0]).unwrap()[0];
            assert!(y <= 1.0, "f({x}) = {y} escaped");
        }
    }

    #[test]
    fn composite_applies_right_to_left() {
        let g = MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap();
        let f = MapDescriptor::affine_1d(unit(), 0.5, 0.5).unwrap();
        // [g, f] means g ∘ f.
        let gf = MapDescriptor::composite(vec![g.clone(), f.clone()]).unwrap();
        assert_eq!(gf.eval([1.0, 0.0]).unwrap()[0], 1.0 / 3.0);
        let fg = MapDescriptor::composite(vec![f, g]).unwrap();
        assert_eq!(fg.eval([1.0, 0.0]).unwrap()[0], 0.5 + 0.5 / 3.0);
    }

    #[test]
    fn interval_image_affine() {
        let f = MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap();
        let img = f.interval_image(&IntervalBox::new_1d(0.0, 1.0)).unwrap();
        assert_eq!(img.lo[0], 0.0);
        assert_eq!(img.hi[0], 1.0 / 3.0);
    }

    #[test]
    fn interval_image_pwl_full_domain() {
        let img = bony_f1().interval_image(&IntervalBox::new_1d(0.0, 1.0)).unwrap();
        assert_eq!((img.lo[0], img.hi[0]), (0.0, 0.8));
        let img2 = bony_f2().interval_image(&IntervalBox::new_1d(0.0, 1.0)).unwrap();
        assert_eq!((img2.lo[0], img2.hi[0]), (0.15, 1.0));
    }

    #[test]
    fn interval_image_quadratic_excludes_outside_critical_point() {
        // On [0.4, 0.9] the critical point x = 1 is outside the box, so
        // the max is at the right endpoint: 2·0.9 − 0.81 = 0.99.
        let f = MapDescriptor::quadratic(unit(), -1.0, 2.0, 0.0).unwrap();
        let img = f.interval_image(&IntervalBox::new_1d(0.4, 0.9)).unwrap();
        assert!((img.lo[0] - 0.64).abs() < 1e-15);
        assert!((img.hi[0] - 0.99).abs() < 1e-15);
        // On [0.5, 1.0] the critical point is the endpoint 1: max 1.
        let img = f.interval_image(&IntervalBox::new_1d(0.5, 1.0)).unwrap();
        assert!((img.hi[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lipschitz_closed_forms() {
        let f = MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap();
        assert_eq!(f.lipschitz_bound(&IntervalBox::new_1d(0.2, 0.9)).unwrap(), 1.0 / 3.0);

        let q = MapDescriptor::quadratic(unit(), -1.0, 2.0, 0.0).unwrap();
        assert_eq!(q.lipschitz_bound(&IntervalBox::new_1d(0.0, 1.0)).unwrap(), 2.0);

        // Middle piece of the steep map: (0.8 − 0.15) / 0.4 = 1.625.
        let s = bony_f2().lipschitz_bound(&IntervalBox::new_1d(0.0, 1.0)).unwrap();
        assert!((s - 1.625).abs() < 1e-12);
        // Restricted to the flat piece only.
        let s = bony_f2().lipschitz_bound(&IntervalBox::new_1d(0.5, 1.0)).unwrap();
        assert!((s - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_cases() {
        assert!((spectral_norm(&[[0.5, 0.0], [0.0, 0.5]]) - 0.5).abs() < 1e-15);
        assert!((spectral_norm(&[[0.0, 1.0], [1.0, 0.0]]) - 1.0).abs() < 1e-15);
        // Rotation by 90° scaled by 2.
        assert!((spectral_norm(&[[0.0, -2.0], [2.0, 0.0]]) - 2.0).abs() < 1e-12);
        // Shear: norm of [[1,1],[0,1]] is the golden ratio.
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((spectral_norm(&[[1.0, 1.0], [0.0, 1.0]]) - phi).abs() < 1e-12);
    }

    /// Reference Lipschitz estimate: maximal secant slope over a dense
    /// sample.  A valid bound can never fall below it.
    fn secant_floor(f: &MapDescriptor, lo: f64, hi: f64, n: usize) -> f64 {
        let mut worst = 0.0f64;
        let mut prev = f.eval([lo, 0.0]).unwrap()[0];
        let h = (hi - lo) / n as f64;
        for i in 1..=n {
            let x = lo + i as f64 * h;
            let y = f.eval([x, 0.0]).unwrap()[0];
            worst = worst.max(((y - prev) / h).abs());
            prev = y;
        }
        worst
    }

    #[test]
    fn composite_lipschitz_chains_through_enclosures() {
        let f1 = bony_f1();
        let f2 = bony_f2();
        // Triple application of the shallow-then-steep map contracts.
        let www = MapDescriptor::composite(vec![f1.clone(), f1.clone(), f1.clone()]).unwrap();
        let b = IntervalBox::new_1d(0.0, 1.0);
        let bound = www.lipschitz_bound(&b).unwrap();
        assert!((bound - 0.75).abs() < 1e-9, "bound = {bound}");

        // Mixed composition: a whole-box chained product would multiply
        // the worst slopes (1.625 · 1.5 · 1.5 ≈ 3.66) and miss the
        // contraction entirely; subdivision recovers it.
        let w112 = MapDescriptor::composite(vec![f1.clone(), f1.clone(), f2.clone()]).unwrap();
        let bound = w112.lipschitz_bound(&b).unwrap();
        assert!((bound - 0.8125).abs() < 1e-9, "bound = {bound}");
        assert!(bound >= secant_floor(&w112, 0.0, 1.0, 4096) - 1e-12);

        let w221 = MapDescriptor::composite(vec![f2.clone(), f2.clone(), f1.clone()]).unwrap();
        let bound = w221.lipschitz_bound(&b).unwrap();
        assert!(bound < 1.0, "bound = {bound}");
        assert!(bound >= secant_floor(&w221, 0.0, 1.0, 4096) - 1e-12);

        let w22222 = MapDescriptor::composite(vec![f2; 5].into_iter().chain([]).collect::<Vec<_>>())
            .unwrap();
        let bound = w22222.lipschitz_bound(&b).unwrap();
        assert!(bound < 0.5, "bound = {bound}");
    }

    #[test]
    fn image_of_gridset_identity_is_exact() {
        let f = MapDescriptor::affine_1d(unit(), 1.0, 0.0).unwrap();
        let a = GridSet::from_cells(unit(), [64, 1], &[0, 10, 63]).unwrap();
        let img = f.image_of_gridset(&a).unwrap();
        assert_eq!(img, a);
    }

    #[test]
    fn image_of_gridset_matches_direct_raster() {
        let f = MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap();
        let full = GridSet::full(unit(), [30, 1]);
        let img = f.image_of_gridset(&full).unwrap();
        let direct = GridSet::from_intervals_1d(unit(), [30, 1], &[(0.0, 1.0 / 3.0)]).unwrap();
        assert_eq!(img, direct);
    }

    #[test]
    fn image_of_gridset_two_piece_map() {
        // The map fixing [1,2] pointwise and contracting [0,1] by 1/3
        // toward 2/3: image of the full domain is [2/3, 2].
        let dom = BoxDomain::new_1d(0.0, 2.0).unwrap();
        let f = MapDescriptor::piecewise_linear(
            dom,
            vec![(0.0, 2.0 / 3.0), (1.0, 1.0), (2.0, 2.0)],
        )
        .unwrap();
        let full = GridSet::full(dom, [512, 1]);
        let img = f.image_of_gridset(&full).unwrap();
        let direct = GridSet::from_intervals_1d(dom, [512, 1], &[(2.0 / 3.0, 2.0)]).unwrap();
        assert_eq!(img, direct);
    }

    #[test]
    fn self_map_violations_fail_construction() {
        assert!(matches!(
            MapDescriptor::affine_1d(unit(), 1.0, 0.5),
            Err(Error::NotSelfMap { .. })
        ));
        assert!(matches!(
            MapDescriptor::quadratic(unit(), 0.0, 2.0, 0.0),
            Err(Error::NotSelfMap { .. })
        ));
    }

    #[test]
    fn pwl_construction_rejects_bad_vertex_lists() {
        assert!(MapDescriptor::piecewise_linear(unit(), vec![(0.0, 0.0)]).is_err());
        assert!(MapDescriptor::piecewise_linear(
            unit(),
            vec![(0.0, 0.0), (0.7, 0.5), (0.4, 0.6), (1.0, 1.0)]
        )
        .is_err());
        // Must span the domain exactly.
        assert!(MapDescriptor::piecewise_linear(unit(), vec![(0.1, 0.0), (1.0, 0.5)]).is_err());
        assert!(MapDescriptor::piecewise_linear(unit(), vec![(0.0, 0.0), (0.9, 0.5)]).is_err());
    }

    #[test]
    fn weights_validation() {
        let maps = vec![
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap(),
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 2.0 / 3.0).unwrap(),
        ];
        assert!(IFSystem::new(unit(), maps.clone(), Some(vec![0.5, 0.5])).is_ok());
        let err = IFSystem::new(unit(), maps.clone(), Some(vec![0.5, 0.6])).unwrap_err();
        assert!(err.to_string().contains("weights sum 1.1"), "got: {err}");
        assert!(IFSystem::new(unit(), maps.clone(), Some(vec![1.0, -0.0])).is_err());
        assert!(IFSystem::new(unit(), maps, Some(vec![1.0])).is_err());
    }

    #[test]
    fn symbol_lookup_is_one_based() {
        let maps = vec![
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 0.0).unwrap(),
            MapDescriptor::affine_1d(unit(), 1.0 / 3.0, 2.0 / 3.0).unwrap(),
        ];
        let s = IFSystem::new(unit(), maps, None).unwrap();
        assert_eq!(s.map(1).unwrap().eval([0.0, 0.0]).unwrap()[0], 0.0);
        assert_eq!(s.map(2).unwrap().eval([0.0, 0.0]).unwrap()[0], 2.0 / 3.0);
        assert!(matches!(s.map(0), Err(Error::SymbolOutOfRange { .. })));
        assert!(matches!(s.map(3), Err(Error::SymbolOutOfRange { .. })));
    }

    proptest! {
        #[test]
        fn enclosure_contains_dense_samples(
            a in -1.0f64..1.0,
            b in -0.5f64..0.5,
            lo in 0.0f64..0.45,
            width in 0.05f64..0.5,
        ) {
            // Clamp the quadratic into a self-map of [-2, 2] by centering.
            let dom = BoxDomain::new_1d(-2.0, 2.0).unwrap();
            let Ok(f) = MapDescriptor::quadratic(dom, a * 0.3, b, 0.1) else {
                return Ok(());
            };
            let hi = lo + width;
            let bx = IntervalBox::new_1d(lo, hi);
            let img = f.interval_image(&bx).unwrap();
            for i in 0..=200 {
                let x = lo + (hi - lo) * i as f64 / 200.0;
                let y = f.eval([x, 0.0]).unwrap()[0];
                prop_assert!(img.lo[0] - 1e-12 <= y && y <= img.hi[0] + 1e-12,
                    "f({x}) = {y} outside [{}, {}]", img.lo[0], img.hi[0]);
            }
        }

        #[test]
        fn lipschitz_bound_dominates_secants(
            ys in prop::collection::vec(0.0f64..1.0, 3..6),
            pairs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 20),
        ) {
            let n = ys.len();
            let mut vertices: Vec<(f64, f64)> = ys
                .iter()
                .enumerate()
                .map(|(i, &y)| (i as f64 / (n - 1) as f64, y))
                .collect();
            vertices.last_mut().unwrap().0 = 1.0;
            let f = MapDescriptor::piecewise_linear(unit(), vertices).unwrap();
            let bound = f.lipschitz_bound(&IntervalBox::new_1d(0.0, 1.0)).unwrap();
            for (p, q) in pairs {
                if p != q {
                    let fp = f.eval([p, 0.0]).unwrap()[0];
                    let fq = f.eval([q, 0.0]).unwrap()[0];
                    prop_assert!((fp - fq).abs() <= bound * (p - q).abs() + 1e-12);
                }
            }
        }

        #[test]
        fn image_raster_covers_point_images(
            cells in prop::collection::btree_set(0usize..128, 1..12),
            offsets in prop::collection::vec(0.0f64..1.0, 30),
        ) {
            let f = MapDescriptor::piecewise_linear(
                unit(),
                vec![(0.0, 0.15), (0.4, 0.8), (1.0, 1.0)],
            )
            .unwrap();
            let a = GridSet::from_cells(unit(), [128, 1], &cells.iter().copied().collect::<Vec<_>>())
                .unwrap();
            let img = f.image_of_gridset(&a).unwrap();
            // Any point inside a set cell maps into a set cell of the image.
            for (i, &cell) in cells.iter().cycle().take(offsets.len()).enumerate() {
                let b = a.cell_box(cell);
                let x = b.lo[0] + (b.hi[0] - b.lo[0]) * offsets[i];
                let y = f.eval([x, 0.0]).unwrap();
                let target = img.cell_of(y).unwrap();
                prop_assert!(img.contains_cell(target), "image cell not set for x = {x}");
            }
        }
    }
}
