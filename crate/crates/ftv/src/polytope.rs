//! Exact polytopes: H-representations, rational and lattice polytopes.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{FtvError, Result};
use crate::linalg::{
    self, integer_kernel, integral, lp, positively_spanning, primitive, primitive_rational, rank,
    rat, rat_vec, IntMatrix, IntVector, RatVector,
};

/// Inequalities `normalᵣ · x ≥ boundᵣ`, one per row of `normals`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    normals: IntMatrix,
    bounds: IntVector,
}

impl HRep {
    pub fn new(normals: IntMatrix, bounds: IntVector) -> Result<Self> {
        if normals.rows() != bounds.len() {
            return Err(FtvError::DimensionMismatch(format!(
                "{} normals but {} bounds",
                normals.rows(),
                bounds.len()
            )));
        }
        Ok(HRep { normals, bounds })
    }

    /// `{m : Vᵀ m ≥ −a}`.
    pub fn from_fan(v: &IntMatrix, a: &[BigInt]) -> Result<Self> {
        if v.cols() != a.len() {
            return Err(FtvError::DimensionMismatch(format!(
                "{} rays but framing of length {}",
                v.cols(),
                a.len()
            )));
        }
        HRep::new(v.transpose(), a.iter().map(|x| -x).collect())
    }

    pub fn dim(&self) -> usize {
        self.normals.cols()
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn normals(&self) -> &IntMatrix {
        &self.normals
    }

    pub fn bounds(&self) -> &[BigInt] {
        &self.bounds
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        HRep { normals: self.normals.clone(), bounds: self.bounds.iter().map(|b| b * k).collect() }
    }

    pub fn slack(&self, row: usize, x: &[BigRational]) -> BigRational {
        let s: BigRational = self.normals.row(row).iter().zip(x).map(|(c, v)| rat(c) * v).sum();
        s - rat(&self.bounds[row])
    }

    pub fn slack_int(&self, row: usize, x: &[BigInt]) -> BigInt {
        linalg::dot(self.normals.row(row), x) - &self.bounds[row]
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        (0..self.len()).all(|r| !self.slack(r, x).is_negative())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        (0..self.len()).all(|r| !self.slack_int(r, x).is_negative())
    }

    /// Rows that define facets of the polytope with the given vertices,
    /// one row per distinct facet.
    pub fn facet_rows(&self, vertices: &[RatVector]) -> Vec<usize> {
        let n = self.dim();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for r in 0..self.len() {
            let tight: BTreeSet<usize> =
                (0..vertices.len()).filter(|&i| self.slack(r, &vertices[i]).is_zero()).collect();
            if tight.len() < n {
                continue;
            }
            let pts: Vec<RatVector> = tight.iter().map(|&i| vertices[i].clone()).collect();
            if affine_rank(&pts) + 1 == n && seen.insert(tight) {
                out.push(r);
            }
        }
        out
    }
}

/// Polytope with rational vertices, optionally carrying the H-representation
/// it was built from.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<RatVector>,
    hrep: Option<HRep>,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl RationalPolytope {
    /// Vertices of a bounded, non-empty H-polyhedron.
    pub fn from_hrep(h: HRep) -> Result<Self> {
        let vertices = vertices_from_hrep(&h)?;
        Ok(RationalPolytope { dim: h.dim(), vertices, hrep: Some(h) })
    }

    /// Convex hull of a finite point set.
    pub fn from_points(dim: usize, points: &[RatVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(FtvError::Empty);
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(FtvError::DimensionMismatch("point of wrong length".into()));
        }
        Ok(RationalPolytope { dim, vertices: hull_vertices(points), hrep: None })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn stored_hrep(&self) -> Option<&HRep> {
        self.hrep.as_ref()
    }

    /// H-representation, computed from the vertices when not stored.
    pub fn hrep(&self) -> Result<HRep> {
        match &self.hrep {
            Some(h) => Ok(h.clone()),
            None => facets_from_vertices(self.dim, &self.vertices),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let kr = rat(k);
        let mut vertices: Vec<RatVector> =
            self.vertices.iter().map(|v| v.iter().map(|x| x * &kr).collect()).collect();
        if k.is_negative() {
            vertices.sort();
        }
        RationalPolytope { dim: self.dim, vertices, hrep: self.hrep.as_ref().map(|h| h.scaled(k)) }
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| integral(v).is_some())
    }

    /// Affine dimension of the polytope.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.vertices)
    }

    pub fn contains_origin_interior(&self) -> bool {
        if let Some(h) = &self.hrep {
            return h.bounds.iter().all(|b| b.is_negative());
        }
        origin_interior_of(&self.vertices)
    }
}

/// Lattice polytope with its full list of lattice points.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
    points: Vec<IntVector>,
    hrep: Option<HRep>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl LatticePolytope {
    /// Convex hull of integer points. The points need not be vertices.
    pub fn from_vertices(dim: usize, vertices: &[IntVector]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(FtvError::Empty);
        }
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(FtvError::DimensionMismatch("vertex of wrong length".into()));
        }
        let rv: Vec<RatVector> = vertices.iter().map(|v| rat_vec(v)).collect();
        let verts = hull_vertices(&rv);
        let hrep = if affine_rank(&verts) == dim { Some(facets_from_vertices(dim, &verts)?) } else { None };
        let points = match &hrep {
            Some(h) => scan_lattice(h, &verts),
            None => scan_by_membership(&verts),
        };
        let vertices = verts.iter().map(|v| integral(v).expect("integral")).collect();
        Ok(LatticePolytope { dim, vertices, points, hrep })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn num_lattice_points(&self) -> usize {
        self.points.len()
    }

    pub fn as_rational(&self) -> RationalPolytope {
        RationalPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| rat_vec(v)).collect(),
            hrep: self.hrep.clone(),
        }
    }

    pub fn hrep(&self) -> Result<HRep> {
        match &self.hrep {
            Some(h) => Ok(h.clone()),
            None => facets_from_vertices(self.dim, &self.rational_vertices()),
        }
    }

    pub fn rational_vertices(&self) -> Vec<RatVector> {
        self.vertices.iter().map(|v| rat_vec(v)).collect()
    }

    pub fn vertex_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.vertices)
    }

    pub fn points_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.points)
    }

    pub fn scale(&self, k: &BigInt) -> Result<Self> {
        let v: Vec<IntVector> = self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        Self::from_vertices(self.dim, &v)
    }

    pub fn contains_origin_interior(&self) -> bool {
        origin_interior_of(&self.rational_vertices())
    }

    pub fn contains_point(&self, p: &[BigInt]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// True when every lattice point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &LatticePolytope) -> bool {
        self.points.iter().all(|p| other.contains_point(p))
    }

    /// Affine dimension.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.rational_vertices())
    }
}

/// Integer part `[P] = conv(P ∩ ℤⁿ)`.
pub fn integer_part(p: &RationalPolytope) -> Result<LatticePolytope> {
    let h = p.hrep()?;
    let points = scan_lattice(&h, &p.vertices);
    if points.is_empty() {
        return Err(FtvError::EmptyLattice);
    }
    let vertices: Vec<IntVector> = if p.is_lattice() {
        p.vertices.iter().map(|v| integral(v).expect("integral")).collect()
    } else {
        lattice_hull_vertices(&points)
    };
    let hrep = if p.is_lattice() { Some(h) } else { None };
    Ok(LatticePolytope { dim: p.dim, vertices, points, hrep })
}

/// Polar `{y : ⟨x, y⟩ ≥ −1 for all x ∈ P}`; the origin must be interior.
pub fn polar(p: &RationalPolytope) -> Result<RationalPolytope> {
    if !p.contains_origin_interior() {
        return Err(FtvError::OriginNotInterior);
    }
    let mut rows = Vec::with_capacity(p.vertices.len());
    let mut bounds = Vec::with_capacity(p.vertices.len());
    for v in &p.vertices {
        let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        rows.push(v.iter().map(|x| (x * rat(&l)).to_integer()).collect::<IntVector>());
        bounds.push(-l);
    }
    RationalPolytope::from_hrep(HRep::new(IntMatrix::from_rows(rows)?, bounds)?)
}

pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    if p.dim != q.dim {
        return Err(FtvError::DimensionMismatch("Minkowski summands of different dimension".into()));
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for v in &p.vertices {
        for w in &q.vertices {
            pts.push(v.iter().zip(w).map(|(a, b)| a + b).collect::<RatVector>());
        }
    }
    RationalPolytope::from_points(p.dim, &pts)
}

/// Columns are the distinct primitive generators of the vertex rays,
/// sorted lexicographically. The origin must be interior.
pub fn primitive_vertex_matrix(p: &LatticePolytope) -> Result<IntMatrix> {
    if !p.contains_origin_interior() {
        return Err(FtvError::OriginNotInterior);
    }
    Ok(primitive_columns(p.dim, &p.vertices))
}

/// As [`primitive_vertex_matrix`] but drops a vertex at the origin and
/// does not require the origin to be interior.
pub fn nonzero_primitive_vertex_matrix(p: &LatticePolytope) -> IntMatrix {
    primitive_columns(p.dim, &p.vertices)
}

fn primitive_columns(dim: usize, verts: &[IntVector]) -> IntMatrix {
    let cols: BTreeSet<IntVector> =
        verts.iter().filter(|v| v.iter().any(|x| !x.is_zero())).map(|v| primitive(v)).collect();
    IntMatrix::from_columns(dim, &cols.into_iter().collect::<Vec<_>>())
}

/// For each facet row of `h`, the number of lattice points of `p` lying in
/// the relative interior of that facet.
pub fn facet_interior_counts(p: &LatticePolytope, h: &HRep) -> Vec<(usize, usize)> {
    let rows = h.facet_rows(&p.rational_vertices());
    rows.iter()
        .map(|&r| {
            let count = p
                .points
                .iter()
                .filter(|x| {
                    h.slack_int(r, x).is_zero()
                        && rows.iter().all(|&s| s == r || h.slack_int(s, x).is_positive())
                })
                .count();
            (r, count)
        })
        .collect()
}

/// Vertices of `{Ax ≥ b}` from the feasible basic solutions.
pub fn vertices_from_hrep(h: &HRep) -> Result<Vec<RatVector>> {
    let n = h.dim();
    if n == 0 {
        return Err(FtvError::DimensionMismatch("zero-dimensional ambient space".into()));
    }
    if h.len() < n + 1 || !positively_spanning(&h.normals.transpose()) {
        return Err(FtvError::Unbounded);
    }
    let rows: Vec<RatVector> = h.normals.to_rows().iter().map(|r| rat_vec(r)).collect();
    let subsets: Vec<Vec<usize>> = (0..h.len()).combinations(n).collect();
    let found: BTreeSet<RatVector> = subsets
        .par_iter()
        .filter_map(|idx| {
            let m: Vec<RatVector> = idx.iter().map(|&i| rows[i].clone()).collect();
            let b: RatVector = idx.iter().map(|&i| rat(&h.bounds[i])).collect();
            let x = linalg::solve_rational(m, b)?;
            h.contains(&x).then_some(x)
        })
        .collect();
    if found.is_empty() {
        return Err(FtvError::Empty);
    }
    Ok(found.into_iter().collect())
}

/// Irredundant H-representation of a full-dimensional polytope given by its
/// vertices. Normals are primitive.
pub fn facets_from_vertices(dim: usize, vertices: &[RatVector]) -> Result<HRep> {
    if affine_rank(vertices) != dim {
        return Err(FtvError::InvariantViolated("facets requested for a lower-dimensional polytope".into()));
    }
    let subsets: Vec<Vec<usize>> = (0..vertices.len()).combinations(dim).collect();
    let facets: BTreeSet<(IntVector, BigInt)> = subsets
        .par_iter()
        .filter_map(|idx| {
            let base = &vertices[idx[0]];
            let diffs: Vec<IntVector> = idx[1..]
                .iter()
                .map(|&i| {
                    let d: RatVector = vertices[i].iter().zip(base).map(|(a, b)| a - b).collect();
                    primitive_rational(&d)
                })
                .collect();
            let c = if dim == 1 {
                vec![BigInt::one()]
            } else {
                let k = integer_kernel(&IntMatrix::from_rows(diffs).ok()?);
                if k.rows() != 1 {
                    return None;
                }
                k.row_vec(0)
            };
            let beta: BigRational = c.iter().zip(base).map(|(x, y)| rat(x) * y).sum();
            let vals: Vec<BigRational> =
                vertices.iter().map(|v| c.iter().zip(v).map(|(x, y)| rat(x) * y).sum()).collect();
            let (c, beta) = if vals.iter().all(|v| *v >= beta) {
                (c, beta)
            } else if vals.iter().all(|v| *v <= beta) {
                (c.iter().map(|x| -x).collect(), -beta)
            } else {
                return None;
            };
            // Scale to an integral inequality with coprime coefficients.
            let den = beta.denom().clone();
            let mut row: IntVector = c.iter().map(|x| x * &den).collect();
            let mut b = (beta * rat(&den)).to_integer();
            let g = row.iter().fold(b.clone(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                row = row.iter().map(|x| x / &g).collect();
                b /= &g;
            }
            Some((row, b))
        })
        .collect();
    let (rows, bounds): (Vec<IntVector>, Vec<BigInt>) = facets.into_iter().unzip();
    HRep::new(IntMatrix::from_rows(rows)?, bounds)
}

/// Dimension of the affine hull.
pub fn affine_rank(points: &[RatVector]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<IntVector> = points[1..]
        .iter()
        .map(|p| primitive_rational(&p.iter().zip(base).map(|(a, b)| a - b).collect::<RatVector>()))
        .collect();
    rank(&IntMatrix::from_rows(rows).expect("rows"))
}

fn origin_interior_of(vertices: &[RatVector]) -> bool {
    let Some(first) = vertices.first() else { return false };
    let cols: Vec<IntVector> = vertices.iter().map(|v| primitive_rational(v)).collect();
    if cols.iter().any(|c| c.iter().all(Zero::is_zero)) {
        return false;
    }
    positively_spanning(&IntMatrix::from_columns(first.len(), &cols))
}

/// Is `p` a convex combination of `others`?
pub fn in_convex_hull(p: &[BigRational], others: &[RatVector]) -> bool {
    if others.is_empty() {
        return false;
    }
    let n = p.len();
    let mut rows: Vec<RatVector> = (0..n).map(|i| others.iter().map(|o| o[i].clone()).collect()).collect();
    rows.push(vec![BigRational::one(); others.len()]);
    let mut rhs = p.to_vec();
    rhs.push(BigRational::one());
    lp::feasible(&rows, &rhs).is_some()
}

/// Extreme points of a finite set, sorted.
pub fn hull_vertices(points: &[RatVector]) -> Vec<RatVector> {
    let pts: Vec<RatVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.len() <= 2 {
        return pts;
    }
    let keep: Vec<bool> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let others: Vec<RatVector> =
                pts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            !in_convex_hull(&pts[i], &others)
        })
        .collect();
    pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

/// Vertices of the convex hull of a set of lattice points.
fn lattice_hull_vertices(points: &[IntVector]) -> Vec<IntVector> {
    let n = points.first().map_or(0, Vec::len);
    let set: HashSet<&IntVector> = points.iter().collect();
    // Along every axis-parallel line only the two end points can be extreme.
    let mut cand: Vec<&IntVector> = points.iter().collect();
    for axis in 0..n {
        let mut ends: BTreeMap<Vec<&BigInt>, (&IntVector, &IntVector)> = BTreeMap::new();
        for p in &cand {
            let key: Vec<&BigInt> = p.iter().enumerate().filter(|(i, _)| *i != axis).map(|(_, x)| x).collect();
            ends.entry(key)
                .and_modify(|e| {
                    if p[axis] < e.0[axis] {
                        e.0 = p;
                    }
                    if p[axis] > e.1[axis] {
                        e.1 = p;
                    }
                })
                .or_insert((p, p));
        }
        let keep: BTreeSet<&IntVector> = ends.values().flat_map(|(a, b)| [*a, *b]).collect();
        cand = keep.into_iter().collect();
    }
    // A midpoint of two lattice points of the set is not extreme.
    let cand: Vec<&IntVector> = cand
        .into_iter()
        .filter(|p| {
            !points.iter().any(|q| {
                if q == *p {
                    return false;
                }
                let r: IntVector = p.iter().zip(q).map(|(a, b)| a * 2 - b).collect();
                set.contains(&r)
            })
        })
        .collect();
    let rv: Vec<RatVector> = cand.iter().map(|p| rat_vec(p)).collect();
    hull_vertices(&rv).iter().map(|v| integral(v).expect("integral")).collect()
}

fn bounding_box(vertices: &[RatVector]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let n = vertices.first()?.len();
    let lo = (0..n).map(|i| vertices.iter().map(|v| v[i].floor().to_integer()).min().expect("vertex")).collect();
    let hi = (0..n).map(|i| vertices.iter().map(|v| v[i].ceil().to_integer()).max().expect("vertex")).collect();
    Some((lo, hi))
}

/// Lattice points of `{h}` inside the bounding box of `vertices`, sorted.
fn scan_lattice(h: &HRep, vertices: &[RatVector]) -> Vec<IntVector> {
    let Some((lo, hi)) = bounding_box(vertices) else { return Vec::new() };
    let n = lo.len();
    let small = |x: &BigInt| x.to_i64().is_some_and(|v| v.abs() < (1 << 20));
    let fits = lo.iter().chain(&hi).all(small)
        && h.normals.entries().iter().all(small)
        && h.bounds.iter().all(|b| b.to_i64().is_some_and(|v| v.abs() < (1 << 40)));
    if fits {
        let normals: Vec<Vec<i64>> = h.normals.to_i64_rows().expect("fits");
        let bounds: Vec<i64> = h.bounds.iter().map(|b| b.to_i64().expect("fits")).collect();
        let lo: Vec<i64> = lo.iter().map(|x| x.to_i64().expect("fits")).collect();
        let hi: Vec<i64> = hi.iter().map(|x| x.to_i64().expect("fits")).collect();
        let out: Vec<Vec<i64>> = (lo[0]..=hi[0])
            .into_par_iter()
            .flat_map_iter(|x0| {
                let mut found = Vec::new();
                let mut x = lo.clone();
                x[0] = x0;
                loop {
                    let ok = normals
                        .iter()
                        .zip(&bounds)
                        .all(|(row, b)| row.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>() >= *b);
                    if ok {
                        found.push(x.clone());
                    }
                    if !odometer(&mut x, &lo, &hi, 1) {
                        break;
                    }
                }
                found
            })
            .collect();
        return out.into_iter().map(|p| p.into_iter().map(BigInt::from).collect()).collect();
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if h.contains_int(&x) {
            out.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i].clone();
        }
    }
}

/// Advances `x[from..]` in lexicographic order; false when exhausted.
fn odometer(x: &mut [i64], lo: &[i64], hi: &[i64], from: usize) -> bool {
    let mut i = x.len();
    while i > from {
        i -= 1;
        if x[i] < hi[i] {
            x[i] += 1;
            return true;
        }
        x[i] = lo[i];
    }
    false
}

/// Lattice points of a lower-dimensional lattice polytope by hull membership.
fn scan_by_membership(vertices: &[RatVector]) -> Vec<IntVector> {
    let Some((lo, hi)) = bounding_box(vertices) else { return Vec::new() };
    let mut out = Vec::new();
    let mut x = lo.clone();
    let n = lo.len();
    loop {
        if in_convex_hull(&rat_vec(&x), vertices) {
            out.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i].clone();
        }
    }
}

fn rational_pair(x: &BigRational) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

impl Serialize for RationalPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let verts: Vec<Vec<[String; 2]>> =
            self.vertices.iter().map(|v| v.iter().map(rational_pair).collect()).collect();
        let mut st = s.serialize_struct("RationalPolytope", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("vertices", &verts)?;
        st.end()
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let verts: Vec<Vec<String>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("LatticePolytope", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("lattice_vertices", &verts)?;
        st.serialize_field("lattice_points", &self.points.len())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_bigint_vec;
    use proptest::prelude::*;

    fn pn_fan(n: usize) -> IntMatrix {
        let mut cols: Vec<IntVector> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        cols.push(vec![BigInt::from(-1); n]);
        IntMatrix::from_columns(n, &cols)
    }

    fn ones(n: usize) -> IntVector {
        vec![BigInt::one(); n]
    }

    #[test]
    fn anticanonical_polytope_of_p2() {
        let h = HRep::from_fan(&pn_fan(2), &ones(3)).unwrap();
        let p = RationalPolytope::from_hrep(h).unwrap();
        let want: Vec<RatVector> =
            [[-1, -1], [-1, 2], [2, -1]].iter().map(|v| rat_vec(&to_bigint_vec(v))).collect();
        assert_eq!(p.vertices(), &want[..]);
        let l = integer_part(&p).unwrap();
        assert_eq!(l.num_lattice_points(), 10);
        assert!(l.contains_origin_interior());
        let counts = facet_interior_counts(&l, &l.hrep().unwrap());
        assert_eq!(counts.iter().map(|c| c.1).sum::<usize>(), 6);
    }

    #[test]
    fn rational_polytope_integer_part() {
        // {x ≥ -1/2 ...} style: P2 with framing (1,1,2) scaled by 1/2 is not integral.
        let v = IntMatrix::from_i64_rows(&[[1, 2, -1], [0, 5, -2]]);
        let h = HRep::from_fan(&v, &to_bigint_vec(&[2, 1, 1])).unwrap();
        let p = RationalPolytope::from_hrep(h).unwrap();
        assert!(!p.is_lattice());
        let l = integer_part(&p).unwrap();
        assert!(!l.contains_origin_interior());
        let l2 = integer_part(&p.scale(&BigInt::from(2))).unwrap();
        assert!(l2.contains_origin_interior());
    }

    #[test]
    fn unbounded_and_empty_are_reported() {
        let h = HRep::new(IntMatrix::from_i64_rows(&[[1, 0], [0, 1]]), to_bigint_vec(&[0, 0])).unwrap();
        assert_eq!(RationalPolytope::from_hrep(h).unwrap_err(), FtvError::Unbounded);
        let h = HRep::new(IntMatrix::from_i64_rows(&[[1], [-1]]), to_bigint_vec(&[1, 0])).unwrap();
        assert_eq!(RationalPolytope::from_hrep(h).unwrap_err(), FtvError::Empty);
    }

    #[test]
    fn polar_of_p2_triangle_is_the_fan_triangle() {
        let h = HRep::from_fan(&pn_fan(2), &ones(3)).unwrap();
        let p = RationalPolytope::from_hrep(h).unwrap();
        let q = polar(&p).unwrap();
        let want: Vec<RatVector> =
            [[-1, -1], [0, 1], [1, 0]].iter().map(|v| rat_vec(&to_bigint_vec(v))).collect();
        assert_eq!(q.vertices(), &want[..]);
        assert_eq!(polar(&q).unwrap(), p);
    }

    #[test]
    fn minkowski_sum_of_segments_is_a_square() {
        let a = RationalPolytope::from_points(2, &[rat_vec(&to_bigint_vec(&[0, 0])), rat_vec(&to_bigint_vec(&[1, 0]))]).unwrap();
        let b = RationalPolytope::from_points(2, &[rat_vec(&to_bigint_vec(&[0, 0])), rat_vec(&to_bigint_vec(&[0, 1]))]).unwrap();
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s.vertices().len(), 4);
    }

    #[test]
    fn lower_dimensional_hrep() {
        // Segment {x ≥ 0, -x ≥ -2, y ≥ 0, -y ≥ 0}.
        let h = HRep::new(
            IntMatrix::from_i64_rows(&[[1, 0], [-1, 0], [0, 1], [0, -1]]),
            to_bigint_vec(&[0, -2, 0, 0]),
        )
        .unwrap();
        let p = RationalPolytope::from_hrep(h).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(integer_part(&p).unwrap().num_lattice_points(), 3);
    }

    fn random_points() -> impl Strategy<Value = Vec<IntVector>> {
        prop::collection::vec(prop::collection::vec(-4i64..5, 2), 3..9)
            .prop_map(|pts| pts.into_iter().map(|p| to_bigint_vec(&p)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hull_round_trip(points in random_points()) {
            let rv: Vec<RatVector> = points.iter().map(|p| rat_vec(p)).collect();
            prop_assume!(affine_rank(&rv) == 2);
            let l = LatticePolytope::from_vertices(2, &points).unwrap();
            let h = l.hrep().unwrap();
            let again = RationalPolytope::from_hrep(h.clone()).unwrap();
            prop_assert_eq!(again.vertices().to_vec(), l.rational_vertices());
            for p in &points {
                prop_assert!(l.contains_point(p));
            }
            for p in l.lattice_points() {
                prop_assert!(h.contains_int(p));
            }
        }

        #[test]
        fn polar_is_an_involution(points in random_points()) {
            let rv: Vec<RatVector> = points.iter().map(|p| rat_vec(p)).collect();
            let p = RationalPolytope::from_points(2, &rv).unwrap();
            prop_assume!(p.contains_origin_interior());
            let q = polar(&p).unwrap();
            prop_assert!(q.contains_origin_interior());
            prop_assert_eq!(polar(&q).unwrap(), p);
        }

        #[test]
        fn lattice_hull_agrees_with_rational_hull(points in random_points()) {
            let rv: Vec<RatVector> = points.iter().map(|p| rat_vec(p)).collect();
            let fast = lattice_hull_vertices(&points);
            let slow: Vec<IntVector> = hull_vertices(&rv).iter().map(|v| integral(v).unwrap()).collect();
            prop_assert_eq!(fast, slow);
        }
    }
}
