//! The hexagonal norm and the polygon geometry measured with it.
//!
//! `D(x, y) = max(|x| + |y|/√3, 2|y|/√3)`. Its unit ball is the regular
//! hexagon with vertices `(±1, 0)`, `(±1/2, ±√3/2)`, so the six unit vectors
//! at multiples of 60° (the lattice directions) all have `D`-length one.
//! Lengths of polygonal chains are sums of `D` over their edges.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{self, FRAC_1_SQRT3, SQRT3};
use crate::{Error, Result};

/// Absolute tolerance (plane units) for collinearity and shared-edge detection.
pub const GEOM_TOL: f64 = 1e-9;

/// Sides shorter than this are dropped when tracing lattice polygons.
pub const MIN_SIDE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    /// Unit vector along lattice direction `k` (angle `k · 60°`, taken mod 6).
    pub fn lattice(k: usize) -> Self {
        const H: f64 = 0.866_025_403_784_438_6;
        match k % 6 {
            0 => PlanePoint::new(1.0, 0.0),
            1 => PlanePoint::new(0.5, H),
            2 => PlanePoint::new(-0.5, H),
            3 => PlanePoint::new(-1.0, 0.0),
            4 => PlanePoint::new(-0.5, -H),
            _ => PlanePoint::new(0.5, -H),
        }
    }

    pub fn cross(self, other: PlanePoint) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: PlanePoint) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn euclid(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = PlanePoint;
    fn mul(self, t: f64) -> PlanePoint {
        PlanePoint::new(self.x * t, self.y * t)
    }
}

impl Neg for PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-self.x, -self.y)
    }
}

/// `D(p)`.
pub fn hex_norm(p: PlanePoint) -> f64 {
    let ax = math::abs(p.x);
    let ay = math::abs(p.y);
    (ax + ay * FRAC_1_SQRT3).max(2.0 * ay * FRAC_1_SQRT3)
}

/// Index in `1..=6` of the closed 60° sector containing `p`; sector `k`
/// spans angles `[(k-1)·60°, k·60°]`. Points on a shared ray go to the
/// smaller index (the positive x-axis belongs to sector 1).
pub fn sextant(p: PlanePoint) -> Result<u8> {
    if p.x == 0.0 && p.y == 0.0 {
        return Err(Error::UndefinedSector);
    }
    let mut theta = math::atan2(p.y, p.x);
    if theta < 0.0 {
        theta += 2.0 * core::f64::consts::PI;
    }
    let t = theta / (core::f64::consts::PI / 3.0);
    let nearest = math::round(t);
    if math::abs(t - nearest) <= 1e-12 {
        // on a boundary ray
        let k = nearest as i64;
        return Ok(if k == 0 || k == 6 { 1 } else { k as u8 });
    }
    Ok((math::floor(t) as u8).min(5) + 1)
}

/// A `D`-geodesic from `p` to `q`: at most two segments, each parallel to one
/// of the two lattice directions bounding the sextant of `q - p`.
pub fn geodesic_path(p: PlanePoint, q: PlanePoint) -> PolyChain {
    let d = q - p;
    let Ok(k) = sextant(d) else {
        return PolyChain::point(p);
    };
    let u = PlanePoint::lattice(k as usize - 1);
    let v = PlanePoint::lattice(k as usize);
    // d = a·u + b·v with a, b ≥ 0; cross(u, v) = √3/2
    let denom = u.cross(v);
    let a = d.cross(v) / denom;
    let b = u.cross(d) / denom;
    if a <= MIN_SIDE * (1.0 + b) || b <= MIN_SIDE * (1.0 + a) {
        return PolyChain::from_parts(alloc::vec![p, q], false);
    }
    PolyChain::from_parts(alloc::vec![p, p + u * a, q], false)
}

/// Ordered vertices; a closed chain has an implicit edge from the last vertex
/// back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyChain {
    vertices: Vec<PlanePoint>,
    closed: bool,
}

impl PolyChain {
    /// Validated constructor: at least two vertices, consecutive vertices
    /// distinct, and closed chains need three vertices and no self-intersection.
    pub fn new(vertices: Vec<PlanePoint>, closed: bool) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidChain("fewer than two vertices"));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidChain("non-finite coordinate"));
        }
        let chain = PolyChain { vertices, closed };
        if chain.edges().any(|(a, b)| (b - a).euclid() <= MIN_SIDE) {
            return Err(Error::InvalidChain("repeated consecutive vertex"));
        }
        if closed {
            if chain.vertices.len() < 3 {
                return Err(Error::InvalidChain("closed chain needs three vertices"));
            }
            if !chain.is_simple() {
                return Err(Error::InvalidChain("closed chain self-intersects"));
            }
        }
        Ok(chain)
    }

    pub fn open(vertices: Vec<PlanePoint>) -> Result<Self> {
        Self::new(vertices, false)
    }

    pub fn closed(vertices: Vec<PlanePoint>) -> Result<Self> {
        Self::new(vertices, true)
    }

    /// The degenerate chain of a single point (length zero).
    pub fn point(p: PlanePoint) -> Self {
        PolyChain { vertices: alloc::vec![p], closed: false }
    }

    pub(crate) fn from_parts(vertices: Vec<PlanePoint>, closed: bool) -> Self {
        PolyChain { vertices, closed }
    }

    pub fn vertices(&self) -> &[PlanePoint] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (PlanePoint, PlanePoint)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace sum without the absolute value; positive when counterclockwise.
    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        let mut s = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            s += a.cross(b);
        }
        0.5 * s
    }

    pub fn is_counterclockwise(&self) -> bool {
        self.signed_area() > 0.0
    }

    pub fn to_counterclockwise(mut self) -> Self {
        if self.closed && self.signed_area() < 0.0 {
            self.vertices.reverse();
        }
        self
    }

    pub fn translated(&self, by: PlanePoint) -> Self {
        PolyChain {
            vertices: self.vertices.iter().map(|&v| v + by).collect(),
            closed: self.closed,
        }
    }

    /// Mirror image across the x-axis; closed chains keep their orientation.
    pub fn reflected_x(&self) -> Self {
        let mut vertices: Vec<PlanePoint> =
            self.vertices.iter().map(|v| PlanePoint::new(v.x, -v.y)).collect();
        if self.closed {
            vertices.reverse();
        }
        PolyChain { vertices, closed: self.closed }
    }

    /// Leftmost vertex, ties broken by the lowest y.
    pub fn leftmost_lowest(&self) -> PlanePoint {
        let mut best = self.vertices[0];
        for &v in &self.vertices[1..] {
            if v.x < best.x - MIN_SIDE || (math::abs(v.x - best.x) <= MIN_SIDE && v.y < best.y) {
                best = v;
            }
        }
        best
    }

    pub fn centroid_of_vertices(&self) -> PlanePoint {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold(PlanePoint::ORIGIN, |acc, &v| acc + v);
        s * (1.0 / n)
    }

    fn scale(&self) -> f64 {
        let mut m: f64 = 1.0;
        for v in &self.vertices {
            m = m.max(math::abs(v.x)).max(math::abs(v.y));
        }
        m
    }

    fn is_simple(&self) -> bool {
        let edges: Vec<_> = self.edges().collect();
        let n = edges.len();
        let tol = MIN_SIDE * self.scale();
        for i in 0..n {
            // adjacent edges may only meet at their common vertex
            let (a0, a1) = edges[i];
            let (_, b1) = edges[(i + 1) % n];
            let d1 = a1 - a0;
            let d2 = b1 - a1;
            if math::abs(d1.cross(d2)) <= GEOM_TOL * d1.euclid() * d2.euclid() && d1.dot(d2) < 0.0 {
                return false;
            }
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c0, c1) = edges[j];
                if segment_distance(a0, a1, c0, c1) <= tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds vertices by walking from `start` along lattice directions.
/// Steps shorter than [`MIN_SIDE`] are skipped. For closed outlines the
/// final return to `start` is dropped.
pub fn trace_lattice(start: PlanePoint, steps: &[(usize, f64)], closed: bool) -> Vec<PlanePoint> {
    let mut out = alloc::vec![start];
    let mut cur = start;
    for &(dir, len) in steps {
        if len <= MIN_SIDE {
            continue;
        }
        cur = cur + PlanePoint::lattice(dir) * len;
        out.push(cur);
    }
    if closed && out.len() > 1 {
        let last = *out.last().unwrap();
        if (last - start).euclid() <= 1e-9 * (1.0 + start.euclid()) {
            out.pop();
        }
    }
    out
}

/// `ρ(c)`: the sum of `D` over the edges of the chain (closing edge included).
pub fn polyline_length(c: &PolyChain) -> f64 {
    c.edges().map(|(a, b)| hex_norm(b - a)).sum()
}

/// Euclidean area enclosed by a closed chain (shoelace, orientation-free).
pub fn polygon_area(c: &PolyChain) -> Result<f64> {
    if !c.is_closed() {
        return Err(Error::NotClosed);
    }
    Ok(math::abs(c.signed_area()))
}

/// Tight supporting values of one family of parallel lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    /// Smallest intercept of the family meeting the set.
    pub lower: f64,
    /// Largest intercept of the family meeting the set.
    pub upper: f64,
}

/// Intersection of three slabs bounded by lines of slope `√3`, `-√3` and `0`.
///
/// Rising lines are `y = √3·x + b`, falling lines `y = -√3·x + b` and level
/// lines `y = b`; each support stores the range of intercepts `b` spanned by
/// the region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexRegion {
    pub rising: Support,
    pub falling: Support,
    pub level: Support,
}

impl HexRegion {
    pub fn new(rising: Support, falling: Support, level: Support) -> Result<Self> {
        for s in [rising, falling, level] {
            if !(s.lower <= s.upper) {
                return Err(Error::Domain("support lower bound exceeds upper bound"));
            }
        }
        let region = HexRegion { rising, falling, level };
        if region.polygon_vertices().len() < 3 {
            return Err(Error::Domain("empty or degenerate hexagonal region"));
        }
        Ok(region)
    }

    fn constraints(&self) -> [(f64, f64, f64); 6] {
        // a·x + b·y + c ≥ 0
        [
            (0.0, 1.0, -self.level.lower),
            (SQRT3, 1.0, -self.falling.lower),
            (-SQRT3, 1.0, -self.rising.lower),
            (0.0, -1.0, self.level.upper),
            (-SQRT3, -1.0, self.falling.upper),
            (SQRT3, -1.0, self.rising.upper),
        ]
    }

    pub fn contains(&self, p: PlanePoint) -> bool {
        self.constraints()
            .iter()
            .all(|&(a, b, c)| a * p.x + b * p.y + c >= -GEOM_TOL)
    }

    /// Counterclockwise corner list (sides of zero length collapsed).
    pub fn polygon_vertices(&self) -> Vec<PlanePoint> {
        let (ylo, yhi) = (self.level.lower, self.level.upper);
        let xlo = (ylo - self.rising.upper) / SQRT3 - 1.0;
        let xhi = (yhi - self.rising.lower) / SQRT3 + 1.0;
        let mut poly = alloc::vec![
            PlanePoint::new(xlo, ylo - 1.0),
            PlanePoint::new(xhi, ylo - 1.0),
            PlanePoint::new(xhi, yhi + 1.0),
            PlanePoint::new(xlo, yhi + 1.0),
        ];
        for (a, b, c) in self.constraints() {
            poly = clip_half_plane(&poly, a, b, c);
            if poly.is_empty() {
                return poly;
            }
        }
        simplify_ring(poly)
    }

    pub fn polygon(&self) -> Result<PolyChain> {
        PolyChain::closed(self.polygon_vertices())
    }

    /// `D`-lengths of the six sides, counterclockwise from the bottom:
    /// bottom, lower-right, upper-right, top, upper-left, lower-left.
    pub fn side_lengths(&self) -> [f64; 6] {
        let verts = self.polygon_vertices();
        let mut sides = [0.0; 6];
        let n = verts.len();
        for i in 0..n {
            let d = verts[(i + 1) % n] - verts[i];
            if let Some(k) = lattice_direction(d) {
                sides[k] += hex_norm(d);
            }
        }
        sides
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    pub fn area(&self) -> f64 {
        let v = self.polygon_vertices();
        let n = v.len();
        let mut s = 0.0;
        for i in 0..n {
            s += v[i].cross(v[(i + 1) % n]);
        }
        0.5 * math::abs(s)
    }
}

/// The smallest region bounded by lattice-direction lines that contains every
/// vertex of the chain (the "A-hexagon").
pub fn circumscribing_hexagon(c: &PolyChain) -> Result<HexRegion> {
    if c.len() < 3 {
        return Err(Error::InvalidChain("need at least three vertices"));
    }
    let mut rising = Support { lower: f64::INFINITY, upper: f64::NEG_INFINITY };
    let mut falling = rising;
    let mut level = rising;
    for v in c.vertices() {
        let r = v.y - SQRT3 * v.x;
        let f = v.y + SQRT3 * v.x;
        rising.lower = rising.lower.min(r);
        rising.upper = rising.upper.max(r);
        falling.lower = falling.lower.min(f);
        falling.upper = falling.upper.max(f);
        level.lower = level.lower.min(v.y);
        level.upper = level.upper.max(v.y);
    }
    HexRegion::new(rising, falling, level)
}

/// Index `k` of the lattice direction parallel to `d`, if any.
pub fn lattice_direction(d: PlanePoint) -> Option<usize> {
    let len = d.euclid();
    if len == 0.0 {
        return None;
    }
    (0..6).find(|&k| {
        let u = PlanePoint::lattice(k);
        math::abs(u.cross(d)) <= GEOM_TOL * len.max(1.0) && u.dot(d) > 0.0
    })
}

fn clip_half_plane(poly: &[PlanePoint], a: f64, b: f64, c: f64) -> Vec<PlanePoint> {
    let g = |p: PlanePoint| a * p.x + b * p.y + c;
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (gp, gq) = (g(p), g(q));
        if gp >= 0.0 {
            out.push(p);
        }
        if (gp >= 0.0) != (gq >= 0.0) {
            let t = gp / (gp - gq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

fn simplify_ring(poly: Vec<PlanePoint>) -> Vec<PlanePoint> {
    let mut pts: Vec<PlanePoint> = Vec::with_capacity(poly.len());
    for p in poly {
        if pts.last().is_none_or(|&l: &PlanePoint| (p - l).euclid() > MIN_SIDE * 1e3) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && (pts[0] - *pts.last().unwrap()).euclid() <= MIN_SIDE * 1e3 {
        pts.pop();
    }
    // drop vertices lying on a straight run
    let mut changed = true;
    while changed && pts.len() > 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let next = pts[(i + 1) % n];
            let d1 = pts[i] - prev;
            let d2 = next - pts[i];
            if math::abs(d1.cross(d2)) <= GEOM_TOL * d1.euclid() * d2.euclid() && d1.dot(d2) > 0.0 {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

/// Euclidean distance between segments `[p0, p1]` and `[q0, q1]`.
pub fn segment_distance(p0: PlanePoint, p1: PlanePoint, q0: PlanePoint, q1: PlanePoint) -> f64 {
    if segments_cross(p0, p1, q0, q1) {
        return 0.0;
    }
    point_segment_distance(p0, q0, q1)
        .min(point_segment_distance(p1, q0, q1))
        .min(point_segment_distance(q0, p0, p1))
        .min(point_segment_distance(q1, p0, p1))
}

pub fn point_segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return (p - a).euclid();
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).euclid()
}

/// Strict crossing: the open segments meet in a single interior point.
fn segments_cross(p0: PlanePoint, p1: PlanePoint, q0: PlanePoint, q1: PlanePoint) -> bool {
    let d1 = (p1 - p0).cross(q0 - p0);
    let d2 = (p1 - p0).cross(q1 - p0);
    let d3 = (q1 - q0).cross(p0 - q0);
    let d4 = (q1 - q0).cross(p1 - q0);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Where a point sits relative to a closed chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

pub fn locate(c: &PolyChain, p: PlanePoint) -> Location {
    if c.edges().any(|(a, b)| point_segment_distance(p, a, b) <= GEOM_TOL) {
        return Location::Boundary;
    }
    let mut inside = false;
    for (a, b) in c.edges() {
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// A point strictly inside a closed chain, close to one of its edges.
fn interior_witness(c: &PolyChain) -> Option<PlanePoint> {
    let sign = if c.signed_area() >= 0.0 { 1.0 } else { -1.0 };
    let delta = 1e-6 * c.scale();
    c.edges().find_map(|(a, b)| {
        let d = b - a;
        let len = d.euclid();
        if len < 10.0 * delta {
            return None;
        }
        let inward = PlanePoint::new(-d.y, d.x) * (sign / len);
        let w = (a + b) * 0.5 + inward * delta;
        (locate(c, w) == Location::Inside).then_some(w)
    })
}

/// Result of measuring a pair of bubbles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubblePerimeter {
    /// `ρ(∂A) + ρ(∂B) − joint`
    pub total: f64,
    /// `D`-length of the shared boundary.
    pub joint: f64,
}

/// Maximal collinear overlaps between edges of `a` and edges of `b`.
pub fn shared_segments(a: &PolyChain, b: &PolyChain) -> Result<Vec<(PlanePoint, PlanePoint)>> {
    let mut out = Vec::new();
    for (a0, a1) in a.edges() {
        let da = a1 - a0;
        let la = da.euclid();
        let u = da * (1.0 / la);
        for (b0, b1) in b.edges() {
            let db = b1 - b0;
            if math::abs(u.cross(db)) > GEOM_TOL {
                continue;
            }
            if math::abs(u.cross(b0 - a0)) > GEOM_TOL {
                continue;
            }
            let (mut t0, mut t1) = (u.dot(b0 - a0), u.dot(b1 - a0));
            if t0 > t1 {
                core::mem::swap(&mut t0, &mut t1);
            }
            let lo = t0.max(0.0);
            let hi = t1.min(la);
            if hi - lo <= GEOM_TOL {
                continue;
            }
            if lattice_direction(da).is_none() {
                return Err(Error::NonLatticeOverlap);
            }
            out.push((a0 + u * lo, a0 + u * hi));
        }
    }
    Ok(out)
}

/// `ρ_DB(A, B) = ρ(∂A) + ρ(∂B) − ρ(∂A ∩ ∂B)` for two closed simple chains
/// with disjoint interiors.
pub fn double_bubble_perimeter(a: &PolyChain, b: &PolyChain) -> Result<BubblePerimeter> {
    if !a.is_closed() || !b.is_closed() {
        return Err(Error::NotClosed);
    }
    check_disjoint_interiors(a, b)?;
    let joint: f64 = shared_segments(a, b)?
        .iter()
        .map(|&(p, q)| hex_norm(q - p))
        .sum();
    Ok(BubblePerimeter {
        total: polyline_length(a) + polyline_length(b) - joint,
        joint,
    })
}

fn check_disjoint_interiors(a: &PolyChain, b: &PolyChain) -> Result<()> {
    for (a0, a1) in a.edges() {
        for (b0, b1) in b.edges() {
            if segments_cross(a0, a1, b0, b1) {
                // a crossing point that is not near any endpoint
                let ends = [a0, a1, b0, b1];
                let near_end = ends.iter().any(|&e| {
                    point_segment_distance(e, a0, a1) <= GEOM_TOL
                        && point_segment_distance(e, b0, b1) <= GEOM_TOL
                });
                if !near_end {
                    return Err(Error::OverlappingInteriors);
                }
            }
        }
    }
    for (outer, inner) in [(a, b), (b, a)] {
        for (p, q) in inner.edges() {
            for probe in [p, (p + q) * 0.5] {
                if locate(outer, probe) == Location::Inside {
                    return Err(Error::OverlappingInteriors);
                }
            }
        }
        if let Some(w) = interior_witness(inner) {
            if locate(outer, w) == Location::Inside {
                return Err(Error::OverlappingInteriors);
            }
        }
    }
    Ok(())
}
