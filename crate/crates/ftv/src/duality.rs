//! f-duality, the f-process and calibration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{FtvError, Result};
use crate::linalg::{is_f_matrix, is_reduced, ser, IntMatrix, IntVector};
use crate::polytope::{
    integer_part, nonzero_primitive_vertex_matrix, primitive_vertex_matrix, HRep, LatticePolytope,
    RationalPolytope,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A complete toric variety given by its fan matrix, with a framing of its
/// rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedToricVariety {
    fan: IntMatrix,
    framing: IntVector,
}

impl FramedToricVariety {
    /// Strictly positive framing on a reduced F-matrix.
    pub fn new(fan: IntMatrix, framing: IntVector) -> Result<Self> {
        check_fan(&fan, &framing)?;
        if let Some((i, a)) = framing.iter().enumerate().find(|(_, a)| !a.is_positive()) {
            return Err(FtvError::NonPositiveFraming { index: i, value: a.to_string() });
        }
        Ok(FramedToricVariety { fan, framing })
    }

    /// Non-negative framing, not identically zero.
    pub fn weak(fan: IntMatrix, framing: IntVector) -> Result<Self> {
        check_fan(&fan, &framing)?;
        if framing.iter().any(Signed::is_negative) || framing.iter().all(Zero::is_zero) {
            return Err(FtvError::InvalidWeakFraming);
        }
        Ok(FramedToricVariety { fan, framing })
    }

    pub fn from_i64(fan: &[&[i64]], framing: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(fan), framing.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn fan(&self) -> &IntMatrix {
        &self.fan
    }

    pub fn framing(&self) -> &[BigInt] {
        &self.framing
    }

    pub fn dim(&self) -> usize {
        self.fan.rows()
    }

    pub fn num_rays(&self) -> usize {
        self.fan.cols()
    }

    pub fn is_weak(&self) -> bool {
        self.framing.iter().any(Zero::is_zero)
    }

    /// `Δ_a = {m : Vᵀm ≥ −a}` as an H-representation.
    pub fn divisor_hrep(&self) -> HRep {
        HRep::from_fan(&self.fan, &self.framing).expect("checked dimensions")
    }

    pub fn divisor_polytope(&self) -> Result<RationalPolytope> {
        RationalPolytope::from_hrep(self.divisor_hrep())
    }

    /// Same fan with the all-ones framing.
    pub fn anticanonical(&self) -> Self {
        FramedToricVariety { fan: self.fan.clone(), framing: vec![BigInt::one(); self.fan.cols()] }
    }
}

fn check_fan(fan: &IntMatrix, framing: &[BigInt]) -> Result<()> {
    if fan.cols() != framing.len() {
        return Err(FtvError::DimensionMismatch(format!(
            "fan has {} rays but framing has {} entries",
            fan.cols(),
            framing.len()
        )));
    }
    is_f_matrix(fan)?;
    if !is_reduced(fan) {
        return Err(FtvError::NotFMatrix("ray generators must be primitive".into()));
    }
    Ok(())
}

/// One f-dual step: `[kΔ_a]`, its primitive vertex matrix `Λ`, the pairing
/// `M = VᵀΛ` and the dual framing.
#[derive(Clone, Debug, Serialize)]
pub struct FDual {
    pub k: u64,
    pub polytope: LatticePolytope,
    pub lambda: IntMatrix,
    pub pairing: IntMatrix,
    #[serde(serialize_with = "ser::vec")]
    pub framing: IntVector,
}

impl FDual {
    pub fn dual_variety(&self) -> Result<FramedToricVariety> {
        if self.framing.iter().all(Signed::is_positive) {
            FramedToricVariety::new(self.lambda.clone(), self.framing.clone())
        } else {
            FramedToricVariety::weak(self.lambda.clone(), self.framing.clone())
        }
    }
}

/// Smallest `k ≤ cap` with the origin interior to `[kΔ_a]`, and the f-dual
/// data built from it.
pub fn f_dual(x: &FramedToricVariety, k_cap: u64) -> Result<FDual> {
    if x.is_weak() {
        return Err(FtvError::NonPositiveFraming {
            index: x.framing.iter().position(Zero::is_zero).unwrap_or(0),
            value: "0".into(),
        });
    }
    let base = x.divisor_polytope()?;
    for k in 1..=k_cap {
        let scaled = base.scale(&BigInt::from(k));
        let lattice = match integer_part(&scaled) {
            Ok(l) => l,
            Err(FtvError::EmptyLattice) => continue,
            Err(e) => return Err(e),
        };
        if !lattice.contains_origin_interior() {
            continue;
        }
        let lambda = primitive_vertex_matrix(&lattice)?;
        return Ok(assemble(x, k, lattice, lambda, &BigInt::one()));
    }
    Err(FtvError::KCapExceeded { cap: k_cap })
}

/// f-dual of a weak framing: no rescaling, the origin vertex is dropped and
/// the dual framing is clipped at zero.
pub fn weak_f_dual(x: &FramedToricVariety) -> Result<FDual> {
    let lattice = integer_part(&x.divisor_polytope()?)?;
    let lambda = nonzero_primitive_vertex_matrix(&lattice);
    if lambda.cols() == 0 {
        return Err(FtvError::InvariantViolated("divisor polytope has no non-zero vertex".into()));
    }
    Ok(assemble(x, 1, lattice, lambda, &BigInt::zero()))
}

fn assemble(x: &FramedToricVariety, k: u64, polytope: LatticePolytope, lambda: IntMatrix, floor: &BigInt) -> FDual {
    let pairing = x.fan.transpose().mul(&lambda).expect("dimensions");
    let framing = dual_framing(&pairing, floor);
    FDual { k, polytope, lambda, pairing, framing }
}

/// `b_j = max(floor, max_i −M_ij)`.
pub fn dual_framing(pairing: &IntMatrix, floor: &BigInt) -> IntVector {
    (0..pairing.cols())
        .map(|j| {
            (0..pairing.rows()).map(|i| -&pairing[(i, j)]).fold(floor.clone(), |m, v| m.max(v))
        })
        .collect()
}

/// Why a process is, or is not, calibrated.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CalibrationEvidence {
    pub k0_is_one: bool,
    pub k1_is_one: bool,
    /// `Λ_b` equals `V` up to a permutation of columns.
    pub fan_recovered: bool,
    /// `permutation[i]` is the column of `Λ_b` equal to the i-th ray of `V`.
    pub permutation: Option<Vec<usize>>,
    /// `min_j ⟨v_i, λ_j⟩ = −a_i` for every ray.
    pub min_pairing_attained: bool,
    /// `c` equals `a` once aligned by the permutation.
    pub framing_recovered: bool,
    pub failures: Vec<String>,
}

/// Both f-dual steps applied to a framed toric variety.
#[derive(Clone, Debug)]
pub struct FProcess {
    pub input: FramedToricVariety,
    pub first: FDual,
    pub second: FDual,
    pub evidence: CalibrationEvidence,
}

impl FProcess {
    pub fn k0(&self) -> u64 {
        self.first.k
    }
    pub fn k1(&self) -> u64 {
        self.second.k
    }
    pub fn lambda_a(&self) -> &IntMatrix {
        &self.first.lambda
    }
    pub fn m_a(&self) -> &IntMatrix {
        &self.first.pairing
    }
    pub fn b(&self) -> &[BigInt] {
        &self.first.framing
    }
    pub fn lambda_b(&self) -> &IntMatrix {
        &self.second.lambda
    }
    /// `M_ab = Λ_aᵀΛ_b`.
    pub fn m_ab(&self) -> &IntMatrix {
        &self.second.pairing
    }
    pub fn c(&self) -> &[BigInt] {
        &self.second.framing
    }
    pub fn calibrated(&self) -> bool {
        is_calibrated(self)
    }
    /// The f-dual `(𝕏_a, b)` as a framed variety.
    pub fn dual(&self) -> Result<FramedToricVariety> {
        self.first.dual_variety()
    }
}

pub fn f_process(x: &FramedToricVariety, k_cap: u64) -> Result<FProcess> {
    let first = f_dual(x, k_cap)?;
    let second = f_dual(&first.dual_variety()?, k_cap)?;
    let evidence = calibration_evidence(x, &first, &second);
    Ok(FProcess { input: x.clone(), first, second, evidence })
}

fn calibration_evidence(x: &FramedToricVariety, first: &FDual, second: &FDual) -> CalibrationEvidence {
    let mut failures = Vec::new();
    let k0_is_one = first.k == 1;
    if !k0_is_one {
        failures.push(format!("k0 = {}", first.k));
    }
    let k1_is_one = second.k == 1;
    if !k1_is_one {
        failures.push(format!("k1 = {}", second.k));
    }
    let permutation = column_permutation(&x.fan, &second.lambda);
    let fan_recovered = permutation.is_some();
    if !fan_recovered {
        failures.push("Lambda_b differs from V".into());
    }
    let mut min_pairing_attained = true;
    for i in 0..x.num_rays() {
        let min = first.pairing.row(i).iter().min().cloned().unwrap_or_default();
        if min != -&x.framing[i] {
            min_pairing_attained = false;
            failures.push(format!("ray {i}: min pairing {min}, framing {}", x.framing[i]));
        }
    }
    let framing_recovered = permutation
        .as_ref()
        .is_some_and(|p| p.iter().enumerate().all(|(i, &j)| second.framing[j] == x.framing[i]));
    if fan_recovered && !framing_recovered {
        failures.push("c differs from a".into());
    }
    CalibrationEvidence {
        k0_is_one,
        k1_is_one,
        fan_recovered,
        permutation,
        min_pairing_attained,
        framing_recovered,
        failures,
    }
}

/// `(X, a)` is calibrated when `k₀ = k₁ = 1`, `Λ_b = V` up to order and the
/// minimum pairing of every ray with `Λ_a` equals `−a_i`.
pub fn is_calibrated(p: &FProcess) -> bool {
    let e = &p.evidence;
    e.k0_is_one && e.k1_is_one && e.fan_recovered && e.min_pairing_attained
}

/// Framed duality of `(X, a)` and `(𝕏_a, b)` checked on the pairing
/// matrices: `Λ_aᵀΛ_b` must be `(VᵀΛ_a)ᵀ` up to a permutation of columns.
pub fn is_k_dual(p: &FProcess) -> bool {
    let lhs = p.first.lambda.transpose().mul(&p.second.lambda).expect("dimensions");
    let rhs = p.first.lambda.transpose().mul(&p.input.fan).expect("dimensions");
    lhs.shape() == rhs.shape() && column_permutation(&rhs, &lhs).is_some()
}

/// `perm[i] = j` when column `i` of `a` equals column `j` of `b`, provided
/// the column multisets agree.
pub fn column_permutation(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    if a.shape() != b.shape() {
        return None;
    }
    let mut pool: BTreeMap<IntVector, Vec<usize>> = BTreeMap::new();
    for (j, c) in b.columns().into_iter().enumerate() {
        pool.entry(c).or_default().push(j);
    }
    let mut perm = Vec::with_capacity(a.cols());
    for c in a.columns() {
        let slot = pool.get_mut(&c)?;
        perm.push(slot.remove(0));
        if slot.is_empty() {
            pool.remove(&c);
        }
    }
    Some(perm)
}

/// Fan matrices of standard varieties.
pub mod fans {
    use super::*;
    use crate::quotient::wps_fan_matrix;

    /// `(I_n | −1)`.
    pub fn projective_space(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n + 1);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
            m[(i, n)] = BigInt::from(-1);
        }
        m
    }

    pub fn weighted_projective(q: &[BigInt]) -> Result<IntMatrix> {
        wps_fan_matrix(q)
    }

    /// Rays `(1,0), (−1,r), (0,1), (0,−1)`.
    pub fn hirzebruch(r: i64) -> IntMatrix {
        IntMatrix::from_i64_rows(&[[1, -1, 0, 0], [0, r, 1, -1]])
    }

    pub fn product(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a.block_diagonal(b)
    }
}

/// Serialized process record.
#[derive(Serialize)]
pub struct ProcessRecord<'a> {
    pub version: &'a str,
    pub k0: u64,
    #[serde(rename = "Lambda_a")]
    pub lambda_a: &'a IntMatrix,
    #[serde(rename = "M_a")]
    pub m_a: &'a IntMatrix,
    pub b: Vec<String>,
    pub k1: u64,
    #[serde(rename = "Lambda_b")]
    pub lambda_b: &'a IntMatrix,
    pub c: Vec<String>,
    pub calibrated: bool,
    pub k_dual: bool,
    pub evidence: &'a CalibrationEvidence,
    #[serde(rename = "Delta_a")]
    pub delta_a: &'a LatticePolytope,
    #[serde(rename = "Delta_b")]
    pub delta_b: &'a LatticePolytope,
}

pub fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

impl FProcess {
    pub fn record(&self) -> ProcessRecord<'_> {
        ProcessRecord {
            version: VERSION,
            k0: self.k0(),
            lambda_a: self.lambda_a(),
            m_a: self.m_a(),
            b: strings(self.b()),
            k1: self.k1(),
            lambda_b: self.lambda_b(),
            c: strings(self.c()),
            calibrated: self.calibrated(),
            k_dual: is_k_dual(self),
            evidence: &self.evidence,
            delta_a: &self.first.polytope,
            delta_b: &self.second.polytope,
        }
    }
}
