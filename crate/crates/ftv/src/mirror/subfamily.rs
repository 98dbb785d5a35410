//! Dual subfamilies cut out by a lattice sub-polytope `Δ ⊆ Δ(X, a)`, and
//! their vertex-only restrictions.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{family_monomials, mirror_monomials, ExponentMatrix};
use crate::duality::{dual_framing, f_process, FramedToricVariety};
use crate::error::{FtvError, Result};
use crate::linalg::{ser, IntMatrix, IntVector};
use crate::polytope::{primitive_vertex_matrix, LatticePolytope};

#[derive(Clone, Debug, Serialize)]
pub struct SubfamilyReport {
    /// Fan of `𝕏_Δ`.
    pub v_delta: IntMatrix,
    #[serde(serialize_with = "ser::vec")]
    pub v: IntVector,
    pub lambda_v: IntMatrix,
    #[serde(serialize_with = "ser::vec")]
    pub w: IntVector,
    /// `[Δ_w] = Δ`.
    pub delta_w_equals_delta: bool,
    /// `Vᵀ·Δ + a`.
    pub family: ExponentMatrix,
    /// `V_Δᵀ·[Δ_b] + v`.
    pub dual_family: ExponentMatrix,
    /// Restrictions to the vertices of `Δ` and `[Δ_b]`.
    pub vertex_family: ExponentMatrix,
    pub vertex_dual_family: ExponentMatrix,
}

/// Checks the four assumptions in order and fails with the index of the
/// first one that does not hold:
/// 1. `(X, a)` is calibrated;
/// 2. `Δ ⊆ Δ(X, a)` with the origin interior;
/// 3. `(𝕏_Δ, v)` is calibrated;
/// 4. `[Δ_b] ⊆ [Δ_v]`.
pub fn subfamily_dual(x: &FramedToricVariety, delta: &LatticePolytope, k_cap: u64) -> Result<SubfamilyReport> {
    let p = f_process(x, k_cap)?;
    if !p.calibrated() {
        return Err(FtvError::AssumptionFailed(1));
    }
    if delta.dim() != x.dim() || !delta.contains_origin_interior() || !delta.is_subset_of(&p.first.polytope) {
        return Err(FtvError::AssumptionFailed(2));
    }
    let v_delta = primitive_vertex_matrix(delta)?;
    let pairing = x.fan().transpose().mul(&v_delta)?;
    let v = dual_framing(&pairing, &BigInt::one());
    let xd = FramedToricVariety::new(v_delta.clone(), v.clone()).map_err(|_| FtvError::AssumptionFailed(3))?;
    let pd = match f_process(&xd, k_cap) {
        Ok(pd) if pd.calibrated() => pd,
        Ok(_) | Err(FtvError::KCapExceeded { .. }) => return Err(FtvError::AssumptionFailed(3)),
        Err(e) => return Err(e),
    };
    let delta_b = &p.second.polytope;
    if !delta_b.is_subset_of(&pd.first.polytope) {
        return Err(FtvError::AssumptionFailed(4));
    }
    Ok(SubfamilyReport {
        delta_w_equals_delta: pd.second.polytope == *delta,
        family: family_monomials(x.fan(), x.framing(), delta.lattice_points())?,
        dual_family: mirror_monomials(&v_delta, &v, delta_b.lattice_points())?,
        vertex_family: family_monomials(x.fan(), x.framing(), delta.vertices())?,
        vertex_dual_family: mirror_monomials(&v_delta, &v, delta_b.vertices())?,
        lambda_v: pd.lambda_a().clone(),
        w: pd.b().to_vec(),
        v_delta,
        v,
    })
}
