//! Framings of projective space: closed-form dual data, the calibration
//! criterion and the canonical mirror polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Degree, ExponentMatrix, Grading, RenderFormat};
use crate::duality::{column_permutation, f_process, fans, FramedToricVariety};
use crate::error::{FtvError, Result};
use crate::linalg::{gcd_of, rat, ser, IntMatrix, IntVector, RatVector};
use crate::polytope::{integer_part, LatticePolytope, RationalPolytope};
use crate::quotient::{check_pn_convention, kernel_weight_vector, pn_dual_fan, reduce_weights, torsion_matrix, TorsionData};

/// Closed-form f-dual of `(ℙⁿ, a)` for a sorted framing with gcd one,
/// next to the result of running the process.
#[derive(Clone, Debug, Serialize)]
pub struct PnMirror {
    #[serde(serialize_with = "ser::vec")]
    pub a: IntVector,
    /// `d_i = gcd(a_j : j ≠ i)`.
    #[serde(serialize_with = "ser::vec")]
    pub d: IntVector,
    /// Reduced weights of the dual fan.
    #[serde(serialize_with = "ser::vec")]
    pub q: IntVector,
    /// Dual framing in the order of `lambda`.
    #[serde(serialize_with = "ser::vec")]
    pub b: IntVector,
    pub lambda: IntMatrix,
    pub torsion: TorsionData,
    pub condition_a: bool,
    pub condition_b: bool,
    /// Both conditions hold.
    pub predicted_calibrated: bool,
    /// Calibration as computed by the f-process.
    pub calibrated: bool,
    /// The process framing agrees with `b` after matching fans.
    pub b_matches_process: bool,
    /// `⌊a_n / a_1⌋ = 1`.
    pub a_mirror: bool,
}

pub fn pn_mirror(a: &[BigInt], k_cap: u64) -> Result<PnMirror> {
    check_pn_convention(a)?;
    let n1 = a.len();
    let n = n1 - 1;
    let d: IntVector = (0..n1)
        .map(|i| {
            let rest: IntVector = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
            gcd_of(&rest)
        })
        .collect();
    let lambda = pn_dual_fan(a)?;
    let kq = kernel_weight_vector(&lambda)?;
    let q = reduce_weights(&kq);
    let torsion = torsion_matrix(&kq, &lambda)?;
    let mut b: IntVector = (0..n).map(|i| &a[n] / &d[i]).collect();
    b.push(&a[n - 1] / &d[n]);

    let condition_a = condition_a(a)?;
    let condition_b = d.iter().filter(|x| x.is_one()).count() >= 2;

    let x = FramedToricVariety::new(fans::projective_space(n), a.to_vec())?;
    let p = f_process(&x, k_cap)?;
    let b_matches_process = column_permutation(&lambda, p.lambda_a())
        .is_some_and(|perm| perm.iter().enumerate().all(|(i, &j)| p.b()[j] == b[i]));
    Ok(PnMirror {
        a: a.to_vec(),
        d,
        q,
        b,
        lambda,
        torsion,
        predicted_calibrated: condition_a && condition_b,
        condition_a,
        condition_b,
        calibrated: p.calibrated(),
        b_matches_process,
        a_mirror: (&a[n - 1] / &a[0]).is_one(),
    })
}

/// `[∇′] = conv(0, ⌊c_i⌋e_i)` for `∇′ = conv(0, c_i e_i)`,
/// `c_i = a_n / a_{n−i+1}`.
fn condition_a(a: &[BigInt]) -> Result<bool> {
    let n = a.len() - 1;
    let mut pts: Vec<RatVector> = vec![vec![rat(&BigInt::zero()); n]];
    let mut floors: Vec<IntVector> = vec![vec![BigInt::zero(); n]];
    for i in 0..n {
        let num = &a[n - 1];
        let den = &a[n - 1 - i];
        let mut p = vec![rat(&BigInt::zero()); n];
        p[i] = num_rational::BigRational::new(num.clone(), den.clone());
        pts.push(p);
        let mut f = vec![BigInt::zero(); n];
        f[i] = num.div_floor(den);
        floors.push(f);
    }
    let nabla = RationalPolytope::from_points(n, &pts)?;
    let hull = integer_part(&nabla)?;
    let expected = LatticePolytope::from_vertices(n, &floors)?;
    Ok(hull == expected)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientRole {
    /// Rescaled to one; the index is the position in the closed form.
    Unit(usize),
    Modulus,
}

/// Mirror polynomial of degree `d` hypersurfaces in `ℙⁿ` on `𝕏_{a₀}`,
/// `a₀ = (1_n, d − n)`: `n + 1` unit monomials and one modulus `ψ`.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalPolynomial {
    pub n: usize,
    pub d: usize,
    pub lambda: IntMatrix,
    pub exponents: ExponentMatrix,
    /// Aligned with `exponents.columns()`.
    pub roles: Vec<CoefficientRole>,
    pub degree: Degree,
}

impl CanonicalPolynomial {
    pub fn render(&self, format: RenderFormat) -> String {
        let names: Vec<Option<String>> = self
            .roles
            .iter()
            .map(|r| match r {
                CoefficientRole::Unit(_) => None,
                CoefficientRole::Modulus => Some("psi".to_string()),
            })
            .collect();
        super::render_terms(self.exponents.columns(), &names, format)
    }
}

pub fn canonical_mirror_polynomial(n: usize, d: usize) -> Result<CanonicalPolynomial> {
    if n == 0 || d < n + 1 {
        return Err(FtvError::DegreeTooSmall { d: d as i64, min: n as i64 + 1 });
    }
    let big = |x: usize| BigInt::from(x);
    let mut tagged: Vec<(IntVector, CoefficientRole)> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let mut c = vec![big(d - n - 1); n + 1];
        c[i] = big(d + d - n - 1);
        c[n] = BigInt::zero();
        tagged.push((c, CoefficientRole::Unit(i)));
    }
    let mut last = vec![BigInt::zero(); n + 1];
    last[n] = big(n + 1);
    tagged.push((last, CoefficientRole::Unit(n)));
    let mut psi = vec![big(d - n); n + 1];
    psi[n] = BigInt::one();
    tagged.push((psi, CoefficientRole::Modulus));
    tagged.sort_by(|x, y| y.0.cmp(&x.0));

    let mut a0 = vec![BigInt::one(); n];
    a0.push(big(d - n));
    let lambda = pn_dual_fan(&a0)?;
    let exponents = ExponentMatrix::new(n + 1, tagged.iter().map(|t| t.0.clone()).collect())?;
    let degree = exponents.degree(&Grading::of_fan(&lambda))?;
    Ok(CanonicalPolynomial { n, d, lambda, exponents, roles: tagged.into_iter().map(|t| t.1).collect(), degree })
}
