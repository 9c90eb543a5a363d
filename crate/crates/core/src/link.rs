//! Links in 3-space with exact rational coordinates.
//!
//! A link is a tuple of closed oriented polygonal curves with pairwise
//! disjoint images. The pairwise linking number is computed as the signed
//! count of crossings where the first curve passes over the second in the
//! projection to the horizontal plane. All predicates are exact; degenerate
//! projections are retried under a fixed schedule of rational rotations and
//! reported as errors if the schedule is exhausted, never approximated.
//!
//! Sign convention (fixed once): a counted crossing contributes `+1` when
//! the over-strand direction followed by the under-strand direction is a
//! positively oriented basis of the plane, `-1` otherwise. Only crossings
//! with the first curve on top are counted, which keeps the count an integer
//! without dividing the total signed crossing number by two.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forested::forested_form_auto;
use crate::graph::{CompleteGraph, EdgeVector};
use crate::ring::{Ring, RingElement};

pub type Rat = BigRational;

/// A point (or vector) of 3-space with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Point3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Point3 {
        Point3 { x, y, z }
    }

    pub fn from_integers(x: i64, y: i64, z: i64) -> Point3 {
        Point3 {
            x: Rat::from_integer(BigInt::from(x)),
            y: Rat::from_integer(BigInt::from(y)),
            z: Rat::from_integer(BigInt::from(z)),
        }
    }

    fn sub(&self, other: &Point3) -> Point3 {
        Point3 {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
            z: &self.z - &other.z,
        }
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

fn cross3(u: &Point3, v: &Point3) -> Point3 {
    Point3 {
        x: &u.y * &v.z - &u.z * &v.y,
        y: &u.z * &v.x - &u.x * &v.z,
        z: &u.x * &v.y - &u.y * &v.x,
    }
}

fn dot3(u: &Point3, v: &Point3) -> Rat {
    &u.x * &v.x + &u.y * &v.y + &u.z * &v.z
}

/// Planar cross product of the horizontal projections.
fn cross2(u: &Point3, v: &Point3) -> Rat {
    &u.x * &v.y - &u.y * &v.x
}

/// A closed oriented polygonal curve: a cyclic list of at least three
/// points with distinct consecutive points (including the wrap-around).
/// Repeated non-consecutive points are allowed here; simplicity is an
/// additional requirement imposed by [`PolylineLink`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    points: Vec<Point3>,
}

impl Polyline {
    pub fn new(points: Vec<Point3>) -> Result<Polyline> {
        if points.len() < 3 {
            return Err(Error::InvalidLink(format!(
                "a closed curve needs at least 3 points, got {}",
                points.len()
            )));
        }
        for i in 0..points.len() {
            let j = (i + 1) % points.len();
            if points[i] == points[j] {
                return Err(Error::InvalidLink(format!(
                    "consecutive points {i} and {j} coincide"
                )));
            }
        }
        Ok(Polyline { points })
    }

    pub fn from_integer_points(coords: &[[i64; 3]]) -> Result<Polyline> {
        Polyline::new(
            coords
                .iter()
                .map(|&[x, y, z]| Point3::from_integers(x, y, z))
                .collect(),
        )
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    /// The closed segments of the curve, in traversal order.
    pub fn segments(&self) -> impl Iterator<Item = (&Point3, &Point3)> + '_ {
        let m = self.points.len();
        (0..m).map(move |i| (&self.points[i], &self.points[(i + 1) % m]))
    }

    /// Apply an affine map with rational coefficients. Fails if the image
    /// violates the curve invariants (e.g. a non-injective linear part).
    pub fn transform(&self, linear: &[[Rat; 3]; 3], translation: &Point3) -> Result<Polyline> {
        let points = self
            .points
            .iter()
            .map(|p| apply_affine(linear, translation, p))
            .collect();
        Polyline::new(points)
    }

    /// Subdivide every segment at its midpoint; the image is unchanged.
    pub fn subdivided(&self) -> Polyline {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let m = self.points.len();
        let mut points = Vec::with_capacity(2 * m);
        for i in 0..m {
            let a = &self.points[i];
            let b = &self.points[(i + 1) % m];
            points.push(a.clone());
            points.push(Point3 {
                x: (&a.x + &b.x) * &half,
                y: (&a.y + &b.y) * &half,
                z: (&a.z + &b.z) * &half,
            });
        }
        Polyline { points }
    }

    /// Traverse the curve twice: the concatenation of the loop with itself.
    pub fn doubled(&self) -> Polyline {
        let mut points = self.points.clone();
        points.extend(self.points.iter().cloned());
        Polyline { points }
    }
}

fn apply_affine(linear: &[[Rat; 3]; 3], translation: &Point3, p: &Point3) -> Point3 {
    let row = |r: &[Rat; 3]| -> Rat { &r[0] * &p.x + &r[1] * &p.y + &r[2] * &p.z };
    Point3 {
        x: row(&linear[0]) + &translation.x,
        y: row(&linear[1]) + &translation.y,
        z: row(&linear[2]) + &translation.z,
    }
}

pub fn identity_matrix() -> [[Rat; 3]; 3] {
    let o = Rat::one;
    let z = Rat::zero;
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

pub fn origin() -> Point3 {
    Point3::new(Rat::zero(), Rat::zero(), Rat::zero())
}

// Pythagorean (sin, cos) pairs with exact rational values, used to build the
// deterministic perturbation schedule.
const PYTHAGOREAN: [(i64, i64, i64); 10] = [
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (9, 40, 41),
    (12, 35, 37),
    (28, 45, 53),
    (33, 56, 65),
    (48, 55, 73),
];

fn axis_rotation(axis: usize, sin: Rat, cos: Rat) -> [[Rat; 3]; 3] {
    let mut m = identity_matrix();
    let (a, b) = match axis {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    m[a][a] = cos.clone();
    m[a][b] = -sin.clone();
    m[b][a] = sin;
    m[b][b] = cos;
    m
}

fn mat_mul(lhs: &[[Rat; 3]; 3], rhs: &[[Rat; 3]; 3]) -> [[Rat; 3]; 3] {
    let mut out = identity_matrix();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| &lhs[i][k] * &rhs[k][j]).sum();
        }
    }
    out
}

/// Number of projection attempts: the identity plus the rotation schedule.
pub const PROJECTION_ATTEMPTS: usize = 13;

/// The exact rotation applied to both curves on projection attempt `k`;
/// attempt 0 is the identity. Rigid rotations preserve linking, so any
/// attempt with a generic horizontal projection gives the answer.
pub fn schedule_rotation(k: usize) -> [[Rat; 3]; 3] {
    if k == 0 {
        return identity_matrix();
    }
    let pair = |idx: usize| -> (Rat, Rat) {
        let (s, c, h) = PYTHAGOREAN[idx % PYTHAGOREAN.len()];
        (
            Rat::new(BigInt::from(s), BigInt::from(h)),
            Rat::new(BigInt::from(c), BigInt::from(h)),
        )
    };
    let (sx, cx) = pair(k - 1);
    let (sy, cy) = pair(k + 2);
    let (sz, cz) = pair(k + 5);
    let rx = axis_rotation(0, sx, cx);
    let ry = axis_rotation(1, sy, cy);
    let rz = axis_rotation(2, sz, cz);
    mat_mul(&rz, &mat_mul(&ry, &rx))
}

/// Exact test for intersection of two closed segments in 3-space.
fn segments_intersect_3d(a0: &Point3, a1: &Point3, b0: &Point3, b1: &Point3) -> bool {
    let d1 = a1.sub(a0);
    let d2 = b1.sub(b0);
    let w = b0.sub(a0);
    let normal = cross3(&d1, &d2);
    if !normal.is_zero() {
        if !dot3(&w, &normal).is_zero() {
            return false; // skew lines
        }
        // Coplanar, non-parallel: solve a0 + t d1 = b0 + u d2 using a
        // coordinate where the cross product does not vanish.
        let wxd2 = cross3(&w, &d2);
        let wxd1 = cross3(&w, &d1);
        let (num_t, num_u, den) = if !normal.x.is_zero() {
            (wxd2.x, wxd1.x, normal.x)
        } else if !normal.y.is_zero() {
            (wxd2.y, wxd1.y, normal.y)
        } else {
            (wxd2.z, wxd1.z, normal.z)
        };
        let t = num_t / den.clone();
        let u = num_u / den;
        let zero = Rat::zero();
        let one = Rat::one();
        t >= zero && t <= one && u >= zero && u <= one
    } else {
        // Parallel lines: disjoint unless collinear with overlapping spans.
        if !cross3(&w, &d1).is_zero() {
            return false;
        }
        let param = |p: &Point3| -> Rat {
            let v = p.sub(a0);
            if !d1.x.is_zero() {
                v.x / d1.x.clone()
            } else if !d1.y.is_zero() {
                v.y / d1.y.clone()
            } else {
                v.z / d1.z.clone()
            }
        };
        let (tb0, tb1) = (param(b0), param(b1));
        let (lo, hi) = if tb0 <= tb1 { (tb0, tb1) } else { (tb1, tb0) };
        !(hi < Rat::zero() || lo > Rat::one())
    }
}

/// True when the two curves share a point in 3-space.
pub fn curves_intersect(c1: &Polyline, c2: &Polyline) -> bool {
    for (a0, a1) in c1.segments() {
        for (b0, b1) in c2.segments() {
            if segments_intersect_3d(a0, a1, b0, b1) {
                return true;
            }
        }
    }
    false
}

/// An `n`-component link: component images are pairwise disjoint and each
/// component is simple (no self-intersection beyond shared joints).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolylineLink {
    components: Vec<Polyline>,
}

impl PolylineLink {
    pub fn new(components: Vec<Polyline>) -> Result<PolylineLink> {
        if components.is_empty() {
            return Err(Error::InvalidLink("a link needs at least one component".into()));
        }
        for (i, c) in components.iter().enumerate() {
            validate_simple(c)
                .map_err(|e| Error::InvalidLink(format!("component {i}: {e}")))?;
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if curves_intersect(&components[i], &components[j]) {
                    return Err(Error::InvalidLink(format!(
                        "components {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(PolylineLink { components })
    }

    pub fn components(&self) -> &[Polyline] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// A closed polyline is simple when non-adjacent segments are disjoint and
/// adjacent segments share only their joint (collinear continuations are
/// fine, doubling back is not).
fn validate_simple(c: &Polyline) -> Result<()> {
    let pts = c.points();
    let m = pts.len();
    let seg = |i: usize| (&pts[i], &pts[(i + 1) % m]);
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            let (a0, a1) = seg(i);
            let (b0, b1) = seg(j);
            if adjacent {
                // Shared joint: reject only a doubling-back overlap.
                let (joint, prev, next) = if j == i + 1 {
                    (b0, a0, b1)
                } else {
                    (a0, b0, a1)
                };
                let incoming = joint.sub(prev);
                let outgoing = next.sub(joint);
                if cross3(&incoming, &outgoing).is_zero()
                    && dot3(&incoming, &outgoing).is_negative()
                {
                    return Err(Error::InvalidLink(format!(
                        "curve doubles back at point {j}"
                    )));
                }
            } else if segments_intersect_3d(a0, a1, b0, b1) {
                return Err(Error::InvalidLink(format!(
                    "segments {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(())
}

enum PairClass {
    NoCrossing,
    /// Proper transversal crossing of the projections; `first_over` says the
    /// first curve has the larger height there, `sign` is the planar
    /// orientation of (first direction, second direction).
    Crossing {
        first_over: bool,
        sign: i64,
    },
    Degenerate,
}

fn sign_of(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn classify_pair(p0: &Point3, p1: &Point3, q0: &Point3, q1: &Point3) -> Result<PairClass> {
    let d1 = p1.sub(p0);
    let d2 = q1.sub(q0);
    if (d1.x.is_zero() && d1.y.is_zero()) || (d2.x.is_zero() && d2.y.is_zero()) {
        return Ok(PairClass::Degenerate); // segment projects to a point
    }
    let o1 = cross2(&d1, &q0.sub(p0));
    let o2 = cross2(&d1, &q1.sub(p0));
    let o3 = cross2(&d2, &p0.sub(q0));
    let o4 = cross2(&d2, &p1.sub(q0));
    let (s1, s2, s3, s4) = (sign_of(&o1), sign_of(&o2), sign_of(&o3), sign_of(&o4));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        // Proper crossing: compare heights at the intersection point.
        let denom = cross2(&d1, &d2);
        let w = q0.sub(p0);
        let t = cross2(&w, &d2) / denom.clone();
        let u = -cross2(&d1, &w) / denom.clone();
        let z1 = &p0.z + &t * (&p1.z - &p0.z);
        let z2 = &q0.z + &u * (&q1.z - &q0.z);
        if z1 == z2 {
            return Err(Error::CurvesIntersect(
                "curves meet at a projected crossing".into(),
            ));
        }
        return Ok(PairClass::Crossing {
            first_over: z1 > z2,
            sign: if denom.is_positive() { 1 } else { -1 },
        });
    }
    if s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0 {
        // Collinear projections: overlapping spans are degenerate.
        let axis_x = !d1.x.is_zero();
        let param = |p: &Point3| -> Rat {
            let v = p.sub(p0);
            if axis_x {
                v.x / d1.x.clone()
            } else {
                v.y / d1.y.clone()
            }
        };
        let (t0, t1) = (param(q0), param(q1));
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if hi < Rat::zero() || lo > Rat::one() {
            return Ok(PairClass::NoCrossing);
        }
        return Ok(PairClass::Degenerate);
    }
    if s1 * s2 <= 0 && s3 * s4 <= 0 {
        // Touching configuration (an endpoint on the other segment).
        return Ok(PairClass::Degenerate);
    }
    Ok(PairClass::NoCrossing)
}

/// Signed count of crossings where `c1` passes over `c2` in a generic
/// horizontal projection. The curves must have disjoint images; either curve
/// may revisit its own points (a doubled curve doubles the count).
///
/// Degenerate projections are retried by rotating both curves through the
/// fixed schedule; if every attempt stays degenerate an error is reported.
pub fn linking_number(c1: &Polyline, c2: &Polyline) -> Result<i64> {
    if curves_intersect(c1, c2) {
        return Err(Error::CurvesIntersect(
            "the two curves share a point in 3-space".into(),
        ));
    }
    'attempt: for k in 0..PROJECTION_ATTEMPTS {
        let (r1, r2);
        let (v1, v2) = if k == 0 {
            (c1, c2)
        } else {
            let m = schedule_rotation(k);
            r1 = c1.transform(&m, &origin()).expect("rotation preserves validity");
            r2 = c2.transform(&m, &origin()).expect("rotation preserves validity");
            (&r1, &r2)
        };
        let mut total: i64 = 0;
        for (p0, p1) in v1.segments() {
            for (q0, q1) in v2.segments() {
                match classify_pair(p0, p1, q0, q1)? {
                    PairClass::Degenerate => continue 'attempt,
                    PairClass::Crossing { first_over: true, sign } => total += sign,
                    _ => {}
                }
            }
        }
        return Ok(total);
    }
    Err(Error::DegenerateProjection(format!(
        "no generic projection found in {PROJECTION_ATTEMPTS} attempts"
    )))
}

/// Symmetric matrix of pairwise linking numbers mapped into a ring. The
/// diagonal is unused and normalized to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkingMatrix {
    ring: Ring,
    entries: Vec<Vec<RingElement>>,
}

impl LinkingMatrix {
    /// Build from explicit entries; requires a square symmetric array whose
    /// entries belong to the ring. The diagonal is replaced by zeros.
    pub fn new(ring: Ring, entries: Vec<Vec<RingElement>>) -> Result<LinkingMatrix> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty linking matrix".into()));
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "matrix is not square: row of length {} in size {n}",
                    row.len()
                )));
            }
            for v in row {
                ring.validate(v)?;
            }
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, value) in row.iter().enumerate().skip(i + 1) {
                if *value != entries[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let mut entries = entries;
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = ring.zero();
        }
        Ok(LinkingMatrix { ring, entries })
    }

    pub fn zero(ring: Ring, n: usize) -> Result<LinkingMatrix> {
        if n == 0 {
            return Err(Error::InvalidInput("empty linking matrix".into()));
        }
        let entries = vec![vec![ring.zero(); n]; n];
        Ok(LinkingMatrix { ring, entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<&RingElement> {
        self.entries
            .get(i)
            .and_then(|row| row.get(j))
            .ok_or_else(|| Error::Bounds(format!("matrix index ({i},{j}) out of range")))
    }

    pub fn rows(&self) -> &[Vec<RingElement>] {
        &self.entries
    }

    /// Replace the symmetric pair of entries at `(i, j)`, `i != j`.
    pub fn with_entry(&self, i: usize, j: usize, value: RingElement) -> Result<LinkingMatrix> {
        if i == j {
            return Err(Error::InvalidInput("diagonal entries are unused".into()));
        }
        self.entry(i, j)?;
        self.ring.validate(&value)?;
        let mut out = self.clone();
        out.entries[i][j] = value.clone();
        out.entries[j][i] = value;
        Ok(out)
    }

    /// The edge vector on the complete graph whose coefficient at `{i,j}` is
    /// the matrix entry.
    pub fn to_edge_vector(&self) -> Result<EdgeVector> {
        let graph = CompleteGraph::new(self.n())?;
        EdgeVector::from_fn(graph, self.ring.clone(), |e| {
            self.entries[e.lo()][e.hi()].clone()
        })
    }

    pub fn from_edge_vector(a: &EdgeVector) -> Result<LinkingMatrix> {
        let n = a.graph().vertex_count();
        let ring = a.ring().clone();
        let mut entries = vec![vec![ring.zero(); n]; n];
        for e in a.graph().edges() {
            let v = a.coeff(e)?.clone();
            entries[e.lo()][e.hi()] = v.clone();
            entries[e.hi()][e.lo()] = v;
        }
        Ok(LinkingMatrix { ring, entries })
    }

    /// Simultaneous row/column permutation: entry `(i,j)` moves to
    /// `(sigma[i], sigma[j])`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<LinkingMatrix> {
        let n = self.n();
        if sigma.len() != n {
            return Err(Error::Bounds("permutation length mismatch".into()));
        }
        let mut out = LinkingMatrix::zero(self.ring.clone(), n)?;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.entries[sigma[i]][sigma[j]] = self.entries[i][j].clone();
                }
            }
        }
        Ok(out)
    }

    /// Merge rows and columns `i` and `j` by ring addition: the merged index
    /// takes the lower label, higher indices shift down, and the entry
    /// between the merged index and any other `k` is the sum of the two old
    /// entries. This is the matrix form of the edge-vector pushforward along
    /// the contraction of `{i,j}`.
    pub fn merge_rows(&self, i: usize, j: usize) -> Result<LinkingMatrix> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Bounds("nothing to merge in a 1x1 matrix".into()));
        }
        if i == j || i >= n || j >= n {
            return Err(Error::Bounds(format!("bad merge pair ({i},{j}) for size {n}")));
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let relabel = |k: usize| -> usize {
            if k == hi {
                lo
            } else if k > hi {
                k - 1
            } else {
                k
            }
        };
        let mut out = LinkingMatrix::zero(self.ring.clone(), n - 1)?;
        for a in 0..n {
            for b in a + 1..n {
                if (a, b) == (lo, hi) {
                    continue;
                }
                let (na, nb) = (relabel(a), relabel(b));
                let sum = self.ring.add(&out.entries[na][nb], &self.entries[a][b])?;
                out.entries[na][nb] = sum.clone();
                out.entries[nb][na] = sum;
            }
        }
        Ok(out)
    }
}

/// The linking matrix of a link: entry `(i,j)` is the image in the ring of
/// the integer linking number of components `i` and `j`.
pub fn linking_matrix(link: &PolylineLink, ring: &Ring) -> Result<LinkingMatrix> {
    let n = link.component_count();
    let mut m = LinkingMatrix::zero(ring.clone(), n)?;
    for i in 0..n {
        for j in i + 1..n {
            let lk = linking_number(&link.components()[i], &link.components()[j])?;
            m = m.with_entry(i, j, ring.from_int(lk))?;
        }
    }
    Ok(m)
}

/// The self-linking weight: the forested form evaluated on the matrix's edge
/// vector. One component gives the ring unit; two components give the single
/// pairwise linking number.
pub fn self_linking_weight(m: &LinkingMatrix) -> Result<RingElement> {
    forested_form_auto(&m.to_edge_vector()?)
}
