//! Landau–Ginzburg superpotentials from weak framings, and the match with
//! Givental's mirrors of degree `d ≤ n` hypersurfaces in `ℙⁿ`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{laurent_superpotential, mirror_monomials, ExponentMatrix, LaurentExponentMatrix};
use crate::duality::{column_permutation, fans, weak_f_dual, FDual, FramedToricVariety};
use crate::error::{FtvError, Result};
use crate::linalg::{ser, IntMatrix, IntVector};
use crate::polytope::LatticePolytope;

/// Weak f-dual of `(X, a)` with the mirror polynomial supported on
/// `conv(V)` and its Laurent form.
#[derive(Clone, Debug, Serialize)]
pub struct LgModel {
    pub dual: FDual,
    pub mirror: ExponentMatrix,
    pub superpotential: LaurentExponentMatrix,
}

pub fn weak_superpotential(x: &FramedToricVariety) -> Result<LgModel> {
    let dual = weak_f_dual(x)?;
    let newton = LatticePolytope::from_vertices(x.dim(), &x.fan().columns())?;
    let mirror = mirror_monomials(&dual.lambda, &dual.framing, newton.lattice_points())?;
    let superpotential = laurent_superpotential(&mirror, &dual.framing)?;
    Ok(LgModel { dual, mirror, superpotential })
}

#[derive(Clone, Debug, Serialize)]
pub struct GiventalReport {
    pub n: usize,
    pub d: usize,
    #[serde(serialize_with = "ser::vec")]
    pub a: IntVector,
    /// Closed-form dual fan; variables below follow its columns.
    pub lambda: IntMatrix,
    #[serde(serialize_with = "ser::vec")]
    pub b: IntVector,
    /// The weak f-dual has the closed-form fan and framing up to order.
    pub weak_dual_matches: bool,
    pub superpotential: LaurentExponentMatrix,
    /// Exponents of `u_1, …, u_N` in `(x_1, …, x_N, ψ)`.
    #[serde(serialize_with = "ser::rows")]
    pub u: Vec<IntVector>,
    /// `Π u_i = ψ^{−N}`.
    pub product_is_constant: bool,
    /// `Σ u_i = f∨/ψ − 1` as monomial sets.
    pub sum_matches: bool,
}

impl GiventalReport {
    pub fn holds(&self) -> bool {
        self.weak_dual_matches && self.product_is_constant && self.sum_matches
    }
}

/// Weak f-dual data of `(ℙⁿ, (1_d, 0_{n+1−d}))` checked against the
/// Givental mirror, `1 ≤ d ≤ n`.
pub fn givental_pn(n: usize, d: usize) -> Result<GiventalReport> {
    if d == 0 || d > n {
        return Err(FtvError::DegreeOutOfRange { n, d });
    }
    let mut a = vec![BigInt::one(); d];
    a.resize(n + 1, BigInt::zero());
    let x = FramedToricVariety::weak(fans::projective_space(n), a.clone())?;
    let model = weak_superpotential(&x)?;

    let (lambda, b) = closed_form(n, d);
    let weak_dual_matches = column_permutation(&lambda, &model.dual.lambda)
        .is_some_and(|perm| perm.iter().enumerate().all(|(i, &j)| model.dual.framing[j] == b[i]));

    let newton = LatticePolytope::from_vertices(n, &fans::projective_space(n).columns())?;
    let cols: Vec<IntVector> =
        newton.lattice_points().iter().map(|p| lambda.tmul_vec(p)).collect::<Result<_>>()?;
    let superpotential = LaurentExponentMatrix::new(lambda.cols(), cols)?;

    let vars = lambda.cols();
    let u = u_monomials(n, d);
    let mut total = vec![BigInt::zero(); vars + 1];
    for e in &u {
        for (t, x) in total.iter_mut().zip(e) {
            *t += x;
        }
    }
    let product_is_constant =
        total[..vars].iter().all(Zero::is_zero) && total[vars] == -BigInt::from(u.len());

    let zero_columns = superpotential.columns().iter().filter(|c| c.iter().all(Zero::is_zero)).count();
    let terms: BTreeSet<IntVector> = superpotential
        .columns()
        .iter()
        .filter(|c| !c.iter().all(Zero::is_zero))
        .map(|c| {
            let mut e = c.clone();
            e.push(-BigInt::one());
            e
        })
        .collect();
    let us: BTreeSet<IntVector> = u.iter().cloned().collect();
    let sum_matches = zero_columns == 1 && us.len() == u.len() && terms == us;

    Ok(GiventalReport { n, d, a, lambda, b, weak_dual_matches, superpotential, u, product_is_constant, sum_matches })
}

/// `d = 1`: rows `(−1, …, −1)` over `(I_{n−1} | 0)`, `b = 1_n`.
/// `d ≥ 2`: columns `d·e_j − Σ_{i≤d} e_i` and `−Σ_{i≤d} e_i`, `b = 1_{n+1}`.
fn closed_form(n: usize, d: usize) -> (IntMatrix, IntVector) {
    if d == 1 {
        let mut m = IntMatrix::zeros(n, n);
        for j in 0..n {
            m[(0, j)] = -BigInt::one();
        }
        for i in 1..n {
            m[(i, i - 1)] = BigInt::one();
        }
        return (m, vec![BigInt::one(); n]);
    }
    let mut m = IntMatrix::zeros(n, n + 1);
    for j in 0..=n {
        for i in 0..d {
            m[(i, j)] = -BigInt::one();
        }
        if j < n {
            m[(j, j)] += BigInt::from(d);
        }
    }
    (m, vec![BigInt::one(); n + 1])
}

/// Exponent vectors in `(x_1, …, x_N, ψ)` of the reparametrization
/// monomials.
fn u_monomials(n: usize, d: usize) -> Vec<IntVector> {
    let big = |x: i64| BigInt::from(x);
    if d == 1 {
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n + 1];
            e[i] = big(1);
            e[n] = big(-1);
            out.push(e);
        }
        let mut last = vec![big(-1); n + 1];
        last[n] = big(-1);
        out.push(last);
        return out;
    }
    let vars = n + 1;
    (0..vars)
        .map(|i| {
            let mut e = vec![BigInt::zero(); vars + 1];
            if i < d {
                for x in e.iter_mut().take(vars) {
                    *x = big(-1);
                }
            }
            e[i] += big(d as i64);
            e[vars] = big(-1);
            e
        })
        .collect()
}
