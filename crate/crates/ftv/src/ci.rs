//! Partitioned framings and the partitioned f-process for complete
//! intersections.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::duality::{column_permutation, dual_framing, FramedToricVariety};
use crate::error::{FtvError, Result};
use crate::linalg::{rat_vec, ser, IntMatrix, IntVector, RatVector};
use crate::mirror::{family_monomials, mirror_monomials, ExponentMatrix};
use crate::polytope::{
    integer_part, minkowski_sum, primitive_vertex_matrix, vertices_from_hrep, HRep, LatticePolytope,
    RationalPolytope,
};

/// `a = a_1 + … + a_l` with `a_k` supported on the index set `I_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedFraming {
    fan: IntMatrix,
    parts: Vec<Vec<usize>>,
    framings: Vec<IntVector>,
}

impl PartitionedFraming {
    /// Index sets and full-length sub-framings. The sets must partition the
    /// rays, entries outside a part must vanish and the total must be
    /// strictly positive.
    pub fn new(fan: IntMatrix, parts: Vec<Vec<usize>>, framings: Vec<IntVector>) -> Result<Self> {
        let m = fan.cols();
        if parts.len() != framings.len() || parts.is_empty() {
            return Err(FtvError::InvalidPartition("one index set per sub-framing is required".into()));
        }
        let mut owner = vec![None; m];
        for (k, idx) in parts.iter().enumerate() {
            if idx.is_empty() {
                return Err(FtvError::InvalidPartition(format!("part {} is empty", k + 1)));
            }
            for &i in idx {
                if i >= m {
                    return Err(FtvError::InvalidPartition(format!("index {i} out of range")));
                }
                if owner[i].replace(k).is_some() {
                    return Err(FtvError::InvalidPartition(format!("ray {i} lies in two parts")));
                }
            }
        }
        if let Some(i) = owner.iter().position(Option::is_none) {
            return Err(FtvError::InvalidPartition(format!("ray {i} lies in no part")));
        }
        for (k, a) in framings.iter().enumerate() {
            if a.len() != m {
                return Err(FtvError::DimensionMismatch(format!("sub-framing {} has length {}", k + 1, a.len())));
            }
            for (i, x) in a.iter().enumerate() {
                if x.is_negative() || (!x.is_zero() && owner[i] != Some(k)) {
                    return Err(FtvError::InvalidPartition(format!("entry {i} of sub-framing {} is {x}", k + 1)));
                }
            }
        }
        let total = sum_vectors(&framings, m);
        FramedToricVariety::new(fan.clone(), total)?;
        Ok(PartitionedFraming { fan, parts, framings })
    }

    /// Parts read off the supports of the sub-framings.
    pub fn from_framings(fan: IntMatrix, framings: Vec<IntVector>) -> Result<Self> {
        let parts = framings
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect())
            .collect();
        Self::new(fan, parts, framings)
    }

    pub fn fan(&self) -> &IntMatrix {
        &self.fan
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn framings(&self) -> &[IntVector] {
        &self.framings
    }

    pub fn total(&self) -> IntVector {
        sum_vectors(&self.framings, self.fan.cols())
    }
}

fn sum_vectors(vs: &[IntVector], len: usize) -> IntVector {
    let mut out = vec![BigInt::zero(); len];
    for v in vs {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x;
        }
    }
    out
}

fn componentwise_min(vs: &[IntVector]) -> IntVector {
    (0..vs[0].len()).map(|i| vs.iter().map(|v| v[i].clone()).min().expect("non-empty")).collect()
}

fn sorted(mut v: Vec<RatVector>) -> Vec<RatVector> {
    v.sort();
    v
}

/// `{Mᵀx ≥ −b_k}` for every `k`, after checking that the pieces meet only
/// at the origin and add up to `{Mᵀx ≥ −Σb_k}`.
fn split_polytopes(m: &IntMatrix, framings: &[IntVector], err: fn(String) -> FtvError) -> Result<Vec<RationalPolytope>> {
    let pieces: Vec<RationalPolytope> = framings
        .iter()
        .map(|b| RationalPolytope::from_hrep(HRep::from_fan(m, b)?))
        .collect::<Result<_>>()?;
    if framings.len() >= 2 {
        let meet = vertices_from_hrep(&HRep::from_fan(m, &componentwise_min(framings))?)?;
        if meet.len() != 1 || meet[0].iter().any(|x| !x.is_zero()) {
            return Err(err("the part polytopes meet outside the origin".into()));
        }
    }
    let mut sum = pieces[0].clone();
    for p in &pieces[1..] {
        sum = minkowski_sum(&sum, p)?;
    }
    let whole = RationalPolytope::from_hrep(HRep::from_fan(m, &sum_vectors(framings, m.cols()))?)?;
    if sorted(sum.vertices().to_vec()) != sorted(whole.vertices().to_vec()) {
        return Err(err("the Minkowski sum of the parts differs from the total polytope".into()));
    }
    Ok(pieces)
}

/// The polytopes `Δ_{a_k}`.
pub fn partition_polytopes(p: &PartitionedFraming) -> Result<Vec<RationalPolytope>> {
    split_polytopes(&p.fan, &p.framings, FtvError::InvalidPartition)
}

/// Smallest `k ≤ cap` with the origin interior to `[k·P]`.
fn first_interior_multiple(p: &RationalPolytope, cap: u64) -> Result<(u64, LatticePolytope)> {
    for k in 1..=cap {
        match integer_part(&p.scale(&BigInt::from(k))) {
            Ok(l) if l.contains_origin_interior() => return Ok((k, l)),
            Ok(_) | Err(FtvError::EmptyLattice) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FtvError::KCapExceeded { cap })
}

fn hull_of(dim: usize, parts: &[RationalPolytope]) -> Result<RationalPolytope> {
    let pts: Vec<RatVector> = parts.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    RationalPolytope::from_points(dim, &pts)
}

/// All data of the partitioned f-process.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionedDual {
    #[serde(skip)]
    pub framing: PartitionedFraming,
    pub part_polytopes: Vec<RationalPolytope>,
    pub k0: u64,
    /// `[k₀·conv(Δ_{a_1}, …, Δ_{a_l})]`.
    pub hull: LatticePolytope,
    pub lambda_a: IntMatrix,
    /// Induced partition of the dual rays.
    pub induced: Vec<Vec<usize>>,
    #[serde(serialize_with = "ser::rows")]
    pub b: Vec<IntVector>,
    pub dual_part_polytopes: Vec<RationalPolytope>,
    pub h1: u64,
    pub dual_hull: LatticePolytope,
    pub lambda_b: IntMatrix,
    #[serde(serialize_with = "ser::rows")]
    pub c: Vec<IntVector>,
    /// `perm[i] = j`: ray `i` of `V` is column `j` of `lambda_b`.
    pub permutation: Option<Vec<usize>>,
    pub calibrated: bool,
    pub warnings: Vec<String>,
}

impl PartitionedDual {
    /// `b̄ = Σ b_k`.
    pub fn b_bar(&self) -> IntVector {
        sum_vectors(&self.b, self.lambda_a.cols())
    }
}

pub fn partitioned_dual(p: &PartitionedFraming, k_cap: u64) -> Result<PartitionedDual> {
    let n = p.fan.rows();
    let mut warnings = Vec::new();
    let part_polytopes = partition_polytopes(p)?;
    let (k0, hull) = first_interior_multiple(&hull_of(n, &part_polytopes)?, k_cap)?;
    let lambda_a = primitive_vertex_matrix(&hull)?;
    let mbar = lambda_a.cols();

    let b: Vec<IntVector> = p
        .parts
        .iter()
        .map(|idx| dual_framing(&p.fan.select_columns(idx).transpose().mul(&lambda_a).expect("dimensions"), &BigInt::zero()))
        .collect();
    for (k, bk) in b.iter().enumerate() {
        if bk.iter().all(Zero::is_zero) {
            return Err(FtvError::InvalidPartition(format!("dual sub-framing {} vanishes", k + 1)));
        }
    }
    let mut induced = vec![Vec::new(); p.len()];
    for j in 0..mbar {
        let owners: Vec<usize> = (0..p.len()).filter(|&k| !b[k][j].is_zero()).collect();
        match owners.as_slice() {
            [] => {
                warnings.push(format!("dual ray {j} has no positive entry; assigned to part 1"));
                induced[0].push(j);
            }
            [k] => induced[*k].push(j),
            _ => {
                return Err(FtvError::InvalidPartition(format!(
                    "dual ray {j} is positive in several parts: {:?}",
                    owners.iter().map(|k| k + 1).collect::<Vec<_>>()
                )))
            }
        }
    }

    let dual_part_polytopes = split_polytopes(&lambda_a, &b, FtvError::InvariantViolated)?;
    let (h1, dual_hull) = first_interior_multiple(&hull_of(n, &dual_part_polytopes)?, k_cap)?;
    let lambda_b = primitive_vertex_matrix(&dual_hull)?;
    let c: Vec<IntVector> = induced
        .iter()
        .map(|jk| {
            dual_framing(&lambda_a.select_columns(jk).transpose().mul(&lambda_b).expect("dimensions"), &BigInt::zero())
        })
        .collect();

    let permutation = column_permutation(&p.fan, &lambda_b);
    let calibrated = permutation.as_ref().is_some_and(|perm| {
        p.framings
            .iter()
            .zip(&c)
            .all(|(ak, ck)| perm.iter().enumerate().all(|(i, &j)| ck[j] == ak[i]))
    });
    if calibrated && h1 != 1 {
        warnings.push(format!("calibrated with h1 = {h1}"));
    }
    Ok(PartitionedDual {
        framing: p.clone(),
        part_polytopes,
        k0,
        hull,
        lambda_a,
        induced,
        b,
        dual_part_polytopes,
        h1,
        dual_hull,
        lambda_b,
        c,
        permutation,
        calibrated,
        warnings,
    })
}

pub fn partitioned_calibrated(r: &PartitionedDual) -> bool {
    r.calibrated
}

/// `V_{I_k}`-side polynomial of the `k`-th hypersurface: `Vᵀ·[Δ_{a_k}] + a_k`.
pub fn ci_family_monomials(r: &PartitionedDual, k: usize) -> Result<ExponentMatrix> {
    let part = r.part_polytopes.get(k).ok_or_else(|| FtvError::Input(format!("no part {}", k + 1)))?;
    let points = lattice_points(part)?;
    family_monomials(r.framing.fan(), &r.framing.framings()[k], &points)
}

/// Dual polynomial of the `k`-th hypersurface: `Λ̄_aᵀ·[Δ̄_{b_k}] + b_k`.
pub fn ci_mirror_monomials(r: &PartitionedDual, k: usize) -> Result<ExponentMatrix> {
    let part = r.dual_part_polytopes.get(k).ok_or_else(|| FtvError::Input(format!("no part {}", k + 1)))?;
    let points = lattice_points(part)?;
    mirror_monomials(&r.lambda_a, &r.b[k], &points)
}

fn lattice_points(p: &RationalPolytope) -> Result<Vec<IntVector>> {
    match integer_part(p) {
        Ok(l) => Ok(l.lattice_points().to_vec()),
        Err(FtvError::EmptyLattice) => Ok(vec![]),
        Err(e) => Err(e),
    }
}

/// Vertices as rational vectors, for comparisons in tests and reports.
pub fn vertex_set(p: &RationalPolytope) -> Vec<RatVector> {
    sorted(p.vertices().to_vec())
}

/// Integer vectors as rational points.
pub fn as_rational(points: &[IntVector]) -> Vec<RatVector> {
    sorted(points.iter().map(|p| rat_vec(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{f_process, fans};
    use crate::linalg::to_bigint_vec;
    use crate::mirror::MirrorPair;

    fn v(x: &[i64]) -> IntVector {
        to_bigint_vec(x)
    }

    fn line_and_conic() -> PartitionedFraming {
        PartitionedFraming::from_framings(fans::projective_space(2), vec![v(&[1, 0, 0]), v(&[0, 1, 2])]).unwrap()
    }

    /// Reorders `values` (indexed by columns of `fan`) into the column
    /// order of `reference`.
    fn reorder(fan: &IntMatrix, values: &[BigInt], reference: &IntMatrix) -> IntVector {
        column_permutation(reference, fan).unwrap().iter().map(|&j| values[j].clone()).collect()
    }

    #[test]
    fn line_and_conic_parts() {
        let parts = partition_polytopes(&line_and_conic()).unwrap();
        assert_eq!(vertex_set(&parts[0]), as_rational(&[v(&[0, 0]), v(&[-1, 1]), v(&[-1, 0])]));
        assert_eq!(vertex_set(&parts[1]), as_rational(&[v(&[3, -1]), v(&[0, 2]), v(&[0, -1])]));
    }

    #[test]
    fn line_and_conic_dual() {
        let r = partitioned_dual(&line_and_conic(), 100).unwrap();
        let reference = IntMatrix::from_i64_rows(&[[-1, -1, 3, 0, 0], [1, 0, -1, 1, -1]]);
        assert_eq!(reorder(&r.lambda_a, &r.b[0], &reference), v(&[1, 1, 0, 0, 0]));
        assert_eq!(reorder(&r.lambda_a, &r.b[1], &reference), v(&[0, 0, 2, 1, 1]));
        assert_eq!(r.k0, 1);
        assert_eq!(r.h1, 1);
        assert!(r.calibrated, "{:?}", r.warnings);
        assert!(r.warnings.is_empty());

        // Dual variables in the column order of `reference`.
        let perm = column_permutation(&r.lambda_a, &reference).unwrap();
        let relabel = |e: &ExponentMatrix| -> Vec<IntVector> {
            let mut out: Vec<IntVector> = e
                .columns()
                .iter()
                .map(|c| {
                    let mut o = vec![BigInt::zero(); c.len()];
                    for (i, x) in c.iter().enumerate() {
                        o[perm[i]] = x.clone();
                    }
                    o
                })
                .collect();
            out.sort();
            out
        };
        let mut f1 = vec![v(&[0, 0, 3, 0, 0]), v(&[1, 1, 0, 0, 0])];
        f1.sort();
        assert_eq!(relabel(&ci_mirror_monomials(&r, 0).unwrap()), f1);
        let mut f2 = vec![v(&[1, 0, 1, 2, 0]), v(&[0, 1, 0, 0, 2]), v(&[0, 0, 2, 1, 1])];
        f2.sort();
        assert_eq!(relabel(&ci_mirror_monomials(&r, 1).unwrap()), f2);

        let line = ci_family_monomials(&r, 0).unwrap();
        assert_eq!(line.columns(), &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])][..]);
    }

    #[test]
    fn trivial_partition_is_plain_duality() {
        for a in [[1, 1, 2], [1, 1, 1], [1, 2, 2]] {
            let a = v(&a);
            let p = PartitionedFraming::from_framings(fans::projective_space(2), vec![a.clone()]).unwrap();
            let r = partitioned_dual(&p, 100).unwrap();
            let x = FramedToricVariety::new(fans::projective_space(2), a).unwrap();
            let fp = f_process(&x, 100).unwrap();
            assert_eq!(&r.lambda_a, fp.lambda_a());
            assert_eq!(r.b[0], fp.b());
            assert_eq!(r.calibrated, fp.calibrated());
            let pair = MirrorPair::of_process(&fp).unwrap();
            if fp.k0() == 1 && fp.k1() == 1 {
                assert_eq!(ci_mirror_monomials(&r, 0).unwrap(), pair.mirror);
                assert_eq!(ci_family_monomials(&r, 0).unwrap(), pair.family);
            }
        }
    }

    #[test]
    fn anticanonical_nef_partition() {
        let p = PartitionedFraming::from_framings(
            fans::projective_space(2),
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])],
        )
        .unwrap();
        let r = partitioned_dual(&p, 100).unwrap();
        assert_eq!(r.b_bar().len(), r.lambda_a.cols());
        let _ = partitioned_calibrated(&r);
    }

    #[test]
    fn invalid_partitions() {
        let fan = fans::projective_space(2);
        let overlap = PartitionedFraming::new(fan.clone(), vec![vec![0, 1], vec![1, 2]], vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert!(matches!(overlap, Err(FtvError::InvalidPartition(_))));
        let missing = PartitionedFraming::new(fan.clone(), vec![vec![0], vec![1]], vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(matches!(missing, Err(FtvError::InvalidPartition(_))));
        let outside = PartitionedFraming::new(fan, vec![vec![0], vec![1, 2]], vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(matches!(outside, Err(FtvError::InvalidPartition(_))));
    }
}
