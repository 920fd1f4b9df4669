//! Compact sets as occupancy bitmaps over a regular grid.
//!
//! A [`GridSet`] partitions a box domain into `res[0] * res[1]` congruent
//! cells and stores one bit per cell.  A cell being set means "the
//! represented compact set meets this cell".  All metric quantities
//! (Hausdorff distance, one-sided distances, dilation radii) are computed
//! between cell *centers*, so they agree with the underlying continuous
//! quantities up to one cell diagonal per set involved.
//!
//! Rasterization uses a positive-measure rule: a box marks exactly the
//! cells it overlaps in a set of positive length/area, so an interval
//! ending exactly on a cell boundary does not bleed into the next cell.

use crate::error::{Error, Result};

/// A point of the plane.  One-dimensional problems put the coordinate in
/// slot 0 and keep slot 1 at zero.
pub type Point = [f64; 2];

/// An axis-aligned closed box, degenerate boxes allowed (`lo == hi`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalBox {
    pub dim: usize,
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl IntervalBox {
    pub fn new_1d(lo: f64, hi: f64) -> Self {
        IntervalBox { dim: 1, lo: [lo, 0.0], hi: [hi, 0.0] }
    }

    pub fn new_2d(lo: [f64; 2], hi: [f64; 2]) -> Self {
        IntervalBox { dim: 2, lo, hi }
    }

    pub fn center(&self) -> Point {
        let mut c = [0.0; 2];
        for a in 0..self.dim {
            c[a] = 0.5 * (self.lo[a] + self.hi[a]);
        }
        c
    }

    /// Euclidean diameter: the length of the main diagonal.
    pub fn diameter(&self) -> f64 {
        let mut s = 0.0;
        for a in 0..self.dim {
            let w = self.hi[a] - self.lo[a];
            s += w * w;
        }
        s.sqrt()
    }

    pub fn contains(&self, p: Point) -> bool {
        (0..self.dim).all(|a| self.lo[a] <= p[a] && p[a] <= self.hi[a])
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        (0..self.dim).all(|a| self.lo[a] <= other.lo[a] && other.hi[a] <= self.hi[a])
    }

    /// Intersection, or `None` when the boxes are disjoint.
    pub fn intersect(&self, other: &IntervalBox) -> Option<IntervalBox> {
        debug_assert_eq!(self.dim, other.dim);
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        for a in 0..self.dim {
            lo[a] = self.lo[a].max(other.lo[a]);
            hi[a] = self.hi[a].min(other.hi[a]);
            if lo[a] > hi[a] {
                return None;
            }
        }
        Some(IntervalBox { dim: self.dim, lo, hi })
    }
}

/// A validated non-degenerate box domain: the space every set and map in a
/// given problem lives on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxDomain(IntervalBox);

impl BoxDomain {
    pub fn new_1d(lo: f64, hi: f64) -> Result<Self> {
        Self::validate(IntervalBox::new_1d(lo, hi))
    }

    pub fn new_2d(lo: [f64; 2], hi: [f64; 2]) -> Result<Self> {
        Self::validate(IntervalBox::new_2d(lo, hi))
    }

    fn validate(b: IntervalBox) -> Result<Self> {
        for a in 0..b.dim {
            if !b.lo[a].is_finite() || !b.hi[a].is_finite() {
                return Err(Error::InvalidDomain("bounds must be finite".into()));
            }
            if b.lo[a] >= b.hi[a] {
                return Err(Error::InvalidDomain(format!(
                    "axis {a} is empty: [{}, {}]",
                    b.lo[a], b.hi[a]
                )));
            }
        }
        Ok(BoxDomain(b))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn bounds(&self) -> IntervalBox {
        self.0
    }

    pub fn contains(&self, p: Point) -> bool {
        self.0.contains(p)
    }
}

/// A compact subset of a box domain, discretized on a regular grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSet {
    domain: BoxDomain,
    res: [usize; 2],
    bits: Vec<u64>,
}

impl GridSet {
    /// The empty set on the given grid.
    ///
    /// `res[1]` must be 1 when the domain is one-dimensional; both entries
    /// must be nonzero.  Grid shape is a programming decision, not user
    /// input, so violations panic.
    pub fn empty(domain: BoxDomain, res: [usize; 2]) -> Self {
        assert!(res[0] > 0 && res[1] > 0, "grid resolution must be nonzero");
        assert!(
            domain.dim() == 2 || res[1] == 1,
            "one-dimensional grids must have res[1] == 1"
        );
        let ncells = res[0] * res[1];
        GridSet { domain, res, bits: vec![0; ncells.div_ceil(64)] }
    }

    /// The whole domain.
    pub fn full(domain: BoxDomain, res: [usize; 2]) -> Self {
        let mut s = Self::empty(domain, res);
        for w in s.bits.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    /// Zeroes the unused bits of the last word so whole-word scans stay
    /// honest.
    fn clear_tail(&mut self) {
        let rem = self.ncells() & 63;
        if rem != 0 {
            if let Some(w) = self.bits.last_mut() {
                *w &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn from_cells(domain: BoxDomain, res: [usize; 2], cells: &[usize]) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut s = Self::empty(domain, res);
        for &c in cells {
            if c >= s.ncells() {
                return Err(Error::SetFile(format!("cell index {c} out of range")));
            }
            s.insert_cell(c);
        }
        Ok(s)
    }

    /// The single grid cell containing `p`.
    pub fn singleton(domain: BoxDomain, res: [usize; 2], p: Point) -> Result<Self> {
        let mut s = Self::empty(domain, res);
        let c = s.cell_of(p)?;
        s.insert_cell(c);
        Ok(s)
    }

    /// Rasterizes a union of closed intervals on a one-dimensional domain.
    /// Degenerate intervals (`a == b`) mark the single cell containing the
    /// point.
    pub fn from_intervals_1d(
        domain: BoxDomain,
        res: [usize; 2],
        intervals: &[(f64, f64)],
    ) -> Result<Self> {
        let mut s = Self::empty(domain, res);
        for &(a, b) in intervals {
            if a > b {
                return Err(Error::InvalidDomain(format!("interval [{a}, {b}] is reversed")));
            }
            s.mark_box(&IntervalBox::new_1d(a, b))?;
        }
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(s)
    }

    /// Rasterizes a union of boxes.
    pub fn rasterize_boxes(
        domain: BoxDomain,
        res: [usize; 2],
        boxes: &[IntervalBox],
    ) -> Result<Self> {
        let mut s = Self::empty(domain, res);
        for b in boxes {
            s.mark_box(b)?;
        }
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(s)
    }

    /// Marks every cell sharing a positive-measure overlap with `b`, which
    /// must be contained in the domain.  Degenerate axes mark the single
    /// cell containing the coordinate, so isolated points are kept.
    pub(crate) fn mark_box(&mut self, b: &IntervalBox) -> Result<()> {
        let bounds = self.domain.bounds();
        if !bounds.contains_box(b) {
            return Err(Error::BoxOutsideDomain);
        }
        let [ix0, ix1] = self.axis_range(0, b.lo[0], b.hi[0]);
        let [iy0, iy1] = if self.domain.dim() == 2 {
            self.axis_range(1, b.lo[1], b.hi[1])
        } else {
            [0, 0]
        };
        for j in iy0..=iy1 {
            for i in ix0..=ix1 {
                self.insert_cell(j * self.res[0] + i);
            }
        }
        Ok(())
    }

    /// Cell index range `[lo, hi]` covered with positive measure by the
    /// coordinate interval `[e0, e1]` on one axis.
    fn axis_range(&self, axis: usize, e0: f64, e1: f64) -> [usize; 2] {
        let lo = self.domain.bounds().lo[axis];
        let h = self.cell_width()[axis];
        let n = self.res[axis];
        let t0 = ((e0 - lo) / h).floor();
        let t1 = ((e1 - lo) / h).ceil() - 1.0;
        let i0 = (t0.max(0.0) as usize).min(n - 1);
        let i1 = (t1.max(0.0) as usize).min(n - 1);
        [i0, i0.max(i1)]
    }

    pub fn domain(&self) -> BoxDomain {
        self.domain
    }

    pub fn res(&self) -> [usize; 2] {
        self.res
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Total number of grid cells (set or not).
    pub fn ncells(&self) -> usize {
        self.res[0] * self.res[1]
    }

    /// Number of cells in the set.
    pub fn cell_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains_cell(&self, idx: usize) -> bool {
        debug_assert!(idx < self.ncells());
        self.bits[idx >> 6] & (1u64 << (idx & 63)) != 0
    }

    pub fn insert_cell(&mut self, idx: usize) {
        debug_assert!(idx < self.ncells());
        self.bits[idx >> 6] |= 1u64 << (idx & 63);
    }

    /// Cell widths per axis; slot 1 is zero on one-dimensional grids.
    pub fn cell_width(&self) -> [f64; 2] {
        let b = self.domain.bounds();
        let mut h = [0.0; 2];
        for a in 0..self.domain.dim() {
            h[a] = (b.hi[a] - b.lo[a]) / self.res[a] as f64;
        }
        h
    }

    /// Length of a cell's main diagonal: the resolution floor for every
    /// metric statement made on this grid.
    pub fn cell_diagonal(&self) -> f64 {
        let h = self.cell_width();
        (h[0] * h[0] + h[1] * h[1]).sqrt()
    }

    pub fn cell_center(&self, idx: usize) -> Point {
        let b = self.cell_box(idx);
        b.center()
    }

    pub fn cell_box(&self, idx: usize) -> IntervalBox {
        debug_assert!(idx < self.ncells());
        let bounds = self.domain.bounds();
        let h = self.cell_width();
        let i = idx % self.res[0];
        let j = idx / self.res[0];
        // Clamp against the domain edges: at resolutions whose cell width
        // is not exactly representable the product can round a hair past
        // the boundary, and cells must stay inside the domain they tile.
        if self.domain.dim() == 1 {
            let lo = (bounds.lo[0] + i as f64 * h[0]).max(bounds.lo[0]);
            IntervalBox::new_1d(lo, (lo + h[0]).min(bounds.hi[0]).max(lo))
        } else {
            let lo = [
                (bounds.lo[0] + i as f64 * h[0]).max(bounds.lo[0]),
                (bounds.lo[1] + j as f64 * h[1]).max(bounds.lo[1]),
            ];
            let hi = [
                (lo[0] + h[0]).min(bounds.hi[0]).max(lo[0]),
                (lo[1] + h[1]).min(bounds.hi[1]).max(lo[1]),
            ];
            IntervalBox::new_2d(lo, hi)
        }
    }

    /// Index of the cell containing `p`; points on interior cell
    /// boundaries belong to the higher cell, the domain's upper edge to
    /// the last cell.
    pub fn cell_of(&self, p: Point) -> Result<usize> {
        if !self.domain.contains(p) {
            return Err(Error::PointOutsideDomain { x: p[0], y: p[1] });
        }
        let bounds = self.domain.bounds();
        let h = self.cell_width();
        let mut idx = [0usize; 2];
        for a in 0..self.domain.dim() {
            let t = ((p[a] - bounds.lo[a]) / h[a]).floor();
            idx[a] = (t.max(0.0) as usize).min(self.res[a] - 1);
        }
        Ok(idx[1] * self.res[0] + idx[0])
    }

    /// Set cells in increasing (row-major) index order.
    pub fn iter_cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub(crate) fn check_compatible(&self, other: &GridSet) -> Result<()> {
        if self.domain != other.domain || self.res != other.res {
            return Err(Error::IncompatibleGrids);
        }
        Ok(())
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, &o) in out.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(out)
    }

    /// In-place union; the accumulating form of [`GridSet::union`].
    pub fn union_with(&mut self, other: &GridSet) -> Result<()> {
        self.check_compatible(other)?;
        for (w, &o) in self.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(())
    }

    pub fn intersection(&self, other: &GridSet) -> Result<GridSet> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, &o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
        Ok(out)
    }

    pub fn is_subset_of(&self, other: &GridSet) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0))
    }

    /// First cell (row-major) present here but absent from `other`; the
    /// witness used by nesting and invariance diagnostics.
    pub(crate) fn first_cell_not_in(&self, other: &GridSet) -> Option<usize> {
        for (wi, (&a, &b)) in self.bits.iter().zip(&other.bits).enumerate() {
            let gained = a & !b;
            if gained != 0 {
                return Some(wi * 64 + gained.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Distance from every cell center to the nearest set cell center
    /// (`INFINITY` everywhere when the set is empty), indexed like cells.
    ///
    /// One-dimensional grids use an exact two-pass integer scan; planar
    /// grids a two-pass lower-envelope-of-parabolas transform with the
    /// axis spacings as weights, exact up to f64 rounding.
    pub fn distance_field(&self) -> Vec<f64> {
        let h = self.cell_width();
        if self.domain.dim() == 1 {
            let n = self.res[0];
            let mut steps = vec![usize::MAX; n];
            for i in 0..n {
                if self.contains_cell(i) {
                    steps[i] = 0;
                } else if i > 0 && steps[i - 1] != usize::MAX {
                    steps[i] = steps[i - 1] + 1;
                }
            }
            for i in (0..n.saturating_sub(1)).rev() {
                if steps[i + 1] != usize::MAX && steps[i + 1] + 1 < steps[i] {
                    steps[i] = steps[i + 1] + 1;
                }
            }
            return steps
                .into_iter()
                .map(|s| if s == usize::MAX { f64::INFINITY } else { s as f64 * h[0] })
                .collect();
        }

        let (nx, ny) = (self.res[0], self.res[1]);
        let mut f = vec![f64::INFINITY; nx * ny];
        for c in self.iter_cells() {
            f[c] = 0.0;
        }
        // Rows, weighted by the x spacing squared.
        let wx = h[0] * h[0];
        let mut row = vec![0.0; nx];
        for j in 0..ny {
            row.copy_from_slice(&f[j * nx..(j + 1) * nx]);
            let d = squared_dt_1d(&row, wx);
            f[j * nx..(j + 1) * nx].copy_from_slice(&d);
        }
        // Columns, weighted by the y spacing squared.
        let wy = h[1] * h[1];
        let mut col = vec![0.0; ny];
        for i in 0..nx {
            for j in 0..ny {
                col[j] = f[j * nx + i];
            }
            let d = squared_dt_1d(&col, wy);
            for j in 0..ny {
                f[j * nx + i] = d[j];
            }
        }
        f.into_iter().map(f64::sqrt).collect()
    }

    /// Largest distance between any two points of the union of set cell
    /// boxes (the outer diameter of the rasterization).
    pub fn outer_diameter(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let h = self.cell_width();
        // Per-row occupied column extremes; the diameter is attained at
        // outer corners of extreme cells, so rows' [min, max] suffice.
        let nx = self.res[0];
        let mut rows: Vec<(usize, usize, usize)> = Vec::new(); // (j, imin, imax)
        for c in self.iter_cells() {
            let (i, j) = (c % nx, c / nx);
            match rows.last_mut() {
                Some(r) if r.0 == j => {
                    r.1 = r.1.min(i);
                    r.2 = r.2.max(i);
                }
                _ => rows.push((j, i, i)),
            }
        }
        let mut best = 0.0f64;
        for (ai, &(j1, lo1, hi1)) in rows.iter().enumerate() {
            for &(j2, lo2, hi2) in &rows[ai..] {
                let di = (hi1.max(hi2) - lo1.min(lo2) + 1) as f64 * h[0];
                let dj = (j2 - j1 + 1) as f64 * h[1];
                let d = if self.domain.dim() == 1 {
                    di
                } else {
                    (di * di + dj * dj).sqrt()
                };
                best = best.max(d);
            }
        }
        Ok(best)
    }
}

/// Lower envelope of the parabolas `q ↦ w (p − q)² + f[q]`, skipping
/// infinite samples.  Returns the envelope evaluated at every index.
fn squared_dt_1d(f: &[f64], w: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![f64::INFINITY; n];
    let mut sites: Vec<usize> = Vec::with_capacity(n);
    let mut left: Vec<f64> = Vec::with_capacity(n + 1);
    for q in 0..n {
        if !f[q].is_finite() {
            continue;
        }
        loop {
            match sites.last() {
                None => {
                    left.push(f64::NEG_INFINITY);
                    break;
                }
                Some(&r) => {
                    let qf = q as f64;
                    let rf = r as f64;
                    let s = ((f[q] + w * qf * qf) - (f[r] + w * rf * rf))
                        / (2.0 * w * (qf - rf));
                    if s <= *left.last().unwrap() {
                        sites.pop();
                        left.pop();
                    } else {
                        left.push(s);
                        break;
                    }
                }
            }
        }
        sites.push(q);
    }
    if sites.is_empty() {
        return d;
    }
    left.push(f64::INFINITY);
    let mut k = 0;
    for (p, slot) in d.iter_mut().enumerate() {
        while left[k + 1] < p as f64 {
            k += 1;
        }
        let q = sites[k];
        let dq = p as f64 - q as f64;
        *slot = w * dq * dq + f[q];
    }
    d
}

/// Distance from a point to the nearest cell center of a non-empty set.
pub fn point_set_distance(p: Point, set: &GridSet) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best = f64::INFINITY;
    for c in set.iter_cells() {
        let q = set.cell_center(c);
        let (dx, dy) = (p[0] - q[0], p[1] - q[1]);
        best = best.min((dx * dx + dy * dy).sqrt());
    }
    Ok(best)
}

/// One-sided (directed) distance: how far the worst point of `a` is from
/// the set `b`.  Zero exactly when `a ⊆ b` on the grid.
pub fn one_sided(a: &GridSet, b: &GridSet) -> Result<f64> {
    a.check_compatible(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let field = b.distance_field();
    Ok(a.iter_cells().fold(0.0f64, |acc, c| acc.max(field[c])))
}

/// Symmetric Hausdorff distance: the larger of the two one-sided
/// distances.
pub fn hausdorff(a: &GridSet, b: &GridSet) -> Result<f64> {
    Ok(one_sided(a, b)?.max(one_sided(b, a)?))
}

/// All cells within `radius` of the set (center-to-center); the grid
/// analogue of a closed `radius`-neighborhood.
pub fn dilate(set: &GridSet, radius: f64) -> GridSet {
    debug_assert!(radius >= 0.0);
    let field = set.distance_field();
    let mut out = GridSet::empty(set.domain(), set.res());
    for (c, &d) in field.iter().enumerate() {
        if d <= radius {
            out.insert_cell(c);
        }
    }
    out
}

/// One step of a set-valued iteration trace.  `forward` is the one-sided
/// distance from the current set to the reference (how far current points
/// stray); `backward` the reverse; `d_h` their maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationSample {
    pub step: usize,
    pub d_h: f64,
    pub forward: f64,
    pub backward: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceStatus {
    /// The trace distance stayed within tolerance for three consecutive
    /// samples.
    Converged,
    /// The iteration budget ran out first.
    BudgetExhausted,
}

/// Outcome of an iteration together with its step-by-step trace.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub iterations: Vec<IterationSample>,
    pub status: ConvergenceStatus,
    pub final_set: GridSet,
    /// First step of the run of in-tolerance samples that triggered
    /// convergence, when it did.
    pub converged_since: Option<usize>,
}

/// Intersection of a decreasing chain of sets together with the distance
/// trace toward it.  Errors if the chain is not actually nested or its
/// limit is empty.
pub fn nested_limit(sets: &[GridSet]) -> Result<ConvergenceReport> {
    let last = sets.last().ok_or(Error::EmptySet)?;
    for (i, pair) in sets.windows(2).enumerate() {
        pair[0].check_compatible(&pair[1])?;
        if let Some(cell) = pair[1].first_cell_not_in(&pair[0]) {
            return Err(Error::NotNested { step: i + 1, cell });
        }
    }
    if last.is_empty() {
        return Err(Error::EmptySet);
    }
    let limit = last.clone();
    let mut iterations = Vec::with_capacity(sets.len());
    let mut converged_since = None;
    for (i, s) in sets.iter().enumerate() {
        let forward = one_sided(s, &limit)?;
        let backward = one_sided(&limit, s)?; // zero: limit ⊆ every set
        let d_h = forward.max(backward);
        if d_h == 0.0 {
            converged_since.get_or_insert(i);
        } else {
            converged_since = None;
        }
        iterations.push(IterationSample { step: i, d_h, forward, backward });
    }
    Ok(ConvergenceReport {
        iterations,
        status: ConvergenceStatus::Converged,
        final_set: limit,
        converged_since,
    })
}
