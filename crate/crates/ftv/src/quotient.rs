//! Rank one class groups: weight vectors, weighted projective fans and the
//! torsion data presenting a fan as a finite quotient of a weighted
//! projective space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{FtvError, Result};
use crate::linalg::{
    gcd_of, hnf, ser, integer_kernel, inverse_unimodular, snf, solve_integer, IntMatrix, IntVector,
};

/// Reduced weight vector of a rank one fan.
pub fn weight_vector_rank1(lambda: &IntMatrix) -> Result<IntVector> {
    Ok(reduce_weights(&kernel_weight_vector(lambda)?))
}

/// Primitive positive generator of the relations among the columns of
/// `lambda`, before reduction. This is the vector the torsion computation
/// works with, since `lambda · q = 0` holds for it.
pub fn kernel_weight_vector(lambda: &IntMatrix) -> Result<IntVector> {
    let k = integer_kernel(lambda);
    if k.rows() != 1 {
        return Err(FtvError::NotRankOne(k.rows()));
    }
    let mut q = k.row_vec(0);
    if q.iter().all(|x| !x.is_positive()) {
        q = q.iter().map(|x| -x).collect();
    }
    if !q.iter().all(Signed::is_positive) {
        return Err(FtvError::NotPositiveWeights(format!("{q:?}")));
    }
    Ok(q)
}

/// Well-formed weights: divide out the overall gcd, then divide each `q_i`
/// by the gcd of the remaining weights' common factors.
pub fn reduce_weights(q: &[BigInt]) -> IntVector {
    let g = gcd_of(q);
    let q: IntVector = if g.is_zero() { q.to_vec() } else { q.iter().map(|x| x / &g).collect() };
    let n = q.len();
    if n < 2 {
        return q;
    }
    // d_j = gcd of all weights but q_j; the d_j are pairwise coprime.
    let d: Vec<BigInt> = (0..n)
        .map(|j| q.iter().enumerate().filter(|(i, _)| *i != j).fold(BigInt::zero(), |g, (_, x)| g.gcd(x)))
        .collect();
    (0..n)
        .map(|i| {
            let l = d.iter().enumerate().filter(|(j, _)| *j != i).fold(BigInt::one(), |l, (_, x)| l.lcm(x));
            &q[i] / l
        })
        .collect()
}

fn check_weights(q: &[BigInt]) -> Result<()> {
    if q.len() < 2 || !q.iter().all(Signed::is_positive) {
        return Err(FtvError::NotPositiveWeights(format!("{q:?}")));
    }
    if !gcd_of(q).is_one() {
        return Err(FtvError::NotPositiveWeights("weights must have gcd 1".into()));
    }
    Ok(())
}

/// HNF transform of the column `qᵀ`: its first row `u` has `u·q = 1`, the
/// remaining rows are a lattice basis of `q^⊥`.
fn weight_transform(q: &[BigInt]) -> Result<IntMatrix> {
    check_weights(q)?;
    let col = IntMatrix::from_columns(q.len(), &[q.to_vec()]);
    let (h, u) = hnf(&col);
    debug_assert!(h[(0, 0)].is_one());
    Ok(u)
}

/// Fan matrix of `ℙ(q)`: rows form a basis of the lattice `q^⊥ ⊂ ℤⁿ⁺¹`, so
/// the columns satisfy `Σ q_i λ̃_i = 0`. Columns are not primitivized.
pub fn wps_fan_matrix(q: &[BigInt]) -> Result<IntMatrix> {
    let u = weight_transform(q)?;
    let rows: Vec<usize> = (1..q.len()).collect();
    Ok(u.select_rows(&rows))
}

/// Base change `B` with `B·Λ̃ = Λ`.
fn base_change(lambda: &IntMatrix, lambda_tilde: &IntMatrix) -> Result<IntMatrix> {
    if lambda.shape() != lambda_tilde.shape() {
        return Err(FtvError::DimensionMismatch("fan matrices of different shape".into()));
    }
    let t = lambda_tilde.transpose();
    let rows = (0..lambda.rows())
        .map(|i| solve_integer(&t, lambda.row(i)))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| FtvError::InvariantViolated("fan rows are not in the span of the weight lattice".into()))?;
    IntMatrix::from_rows(rows)
}

/// Torsion coefficients `τ₁ | … | τ_s` (all `> 1`) of `B` with `B·Λ̃ = Λ`.
pub fn torsion_coefficients(lambda: &IntMatrix, lambda_tilde: &IntMatrix) -> Result<Vec<BigInt>> {
    let b = base_change(lambda, lambda_tilde)?;
    let (d, _, _) = snf(&b);
    let diag: Vec<BigInt> = (0..d.rows()).map(|i| d[(i, i)].clone()).collect();
    if diag.iter().any(Zero::is_zero) {
        return Err(FtvError::InvariantViolated("fan matrix is not of full rank".into()));
    }
    Ok(diag.into_iter().filter(|t| !t.is_one()).collect())
}

/// A finite abelian group `⊕ ℤ/τ_k` acting diagonally on the homogeneous
/// coordinates of `ℙ(q)`: generator `k` multiplies `x_j` by `ζ_{τ_k}^{Γ_kj}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TorsionData {
    #[serde(serialize_with = "ser::vec")]
    pub q: IntVector,
    #[serde(serialize_with = "ser::vec")]
    pub taus: Vec<BigInt>,
    #[serde(serialize_with = "ser::rows")]
    pub gamma: Vec<IntVector>,
    #[serde(serialize_with = "ser::big")]
    pub order: BigInt,
    /// `u` with `u·q = 1`, first row of the weight transform.
    #[serde(skip)]
    pub u: IntVector,
    /// `witnesses[k]`: `x` with `q·x = 0` and `Γx ≡ e_k`.
    #[serde(skip)]
    pub witnesses: Vec<IntVector>,
}

impl TorsionData {
    pub fn is_trivial(&self) -> bool {
        self.taus.is_empty()
    }

    /// `Γ` with multiples of `q` added to each row so that column `j`
    /// vanishes; the action on `ℙ(q)` is unchanged. Needs `q_j = 1`.
    pub fn gamma_vanishing_at(&self, j: usize) -> Result<Vec<IntVector>> {
        if !self.q.get(j).is_some_and(One::is_one) {
            return Err(FtvError::Input(format!("weight {j} is not one")));
        }
        Ok(self
            .gamma
            .iter()
            .zip(&self.taus)
            .map(|(row, tau)| {
                let c = row[j].clone();
                row.iter().zip(&self.q).map(|(g, w)| (g - &c * w).mod_floor(tau)).collect()
            })
            .collect())
    }
}

/// Torsion data of the rank one fan `lambda` with weight vector `q`
/// (columns of `lambda` indexed like `q`). The result is checked against
/// the three defining properties before it is returned.
pub fn torsion_matrix(q: &[BigInt], lambda: &IntMatrix) -> Result<TorsionData> {
    let n1 = q.len();
    if lambda.cols() != n1 || lambda.rows() + 1 != n1 {
        return Err(FtvError::DimensionMismatch(format!(
            "fan is {}x{}, weights have length {n1}",
            lambda.rows(),
            lambda.cols()
        )));
    }
    if !lambda.mul_vec(q)?.iter().all(Zero::is_zero) {
        return Err(FtvError::InvariantViolated("weights are not a relation of the fan".into()));
    }
    let uq0 = weight_transform(q)?;
    let u = uq0.row_vec(0);
    let tilde0 = uq0.select_rows(&(1..n1).collect::<Vec<_>>());
    let b = base_change(lambda, &tilde0)?;
    let (beta, _, qm) = snf(&b);
    let n = n1 - 1;
    let diag: Vec<BigInt> = (0..n).map(|i| beta[(i, i)].clone()).collect();
    if diag.iter().any(Zero::is_zero) {
        return Err(FtvError::InvariantViolated("fan matrix is not of full rank".into()));
    }
    let taus: Vec<BigInt> = diag.iter().filter(|t| !t.is_one()).cloned().collect();
    let s = taus.len();
    let order: BigInt = taus.iter().product();
    if s == 0 {
        return Ok(TorsionData { q: q.to_vec(), taus, gamma: vec![], order, u, witnesses: vec![] });
    }
    // Λ̃ = Q⁻¹·Λ̃₀ so that P·Λ = β·Λ̃.
    let tilde = inverse_unimodular(&qm)?.mul(&tilde0)?;
    let uq = IntMatrix::from_rows(vec![u.clone()])?.vstack(&tilde)?;
    let top: Vec<usize> = (0..n1 - s).collect();
    let x = uq.select_rows(&top).transpose();
    let (_, w) = hnf(&x);
    let bottom: Vec<usize> = (n1 - s..n1).collect();
    let ws = w.select_rows(&bottom);
    let ls = tilde.select_rows(&(n - s..n).collect::<Vec<_>>());
    let g = ls.mul(&ws.transpose())?;
    let (_, ug) = hnf(&g.transpose());
    let gamma_raw = ug.mul(&ws)?;
    let gamma: Vec<IntVector> = (0..s)
        .map(|k| gamma_raw.row(k).iter().map(|x| x.mod_floor(&taus[k])).collect())
        .collect();
    let mut data = TorsionData { q: q.to_vec(), taus, gamma, order, u, witnesses: vec![] };
    validate(&mut data, lambda)?;
    Ok(data)
}

fn validate(t: &mut TorsionData, lambda: &IntMatrix) -> Result<()> {
    let s = t.taus.len();
    let n1 = t.q.len();
    for k in 0..s {
        let r = crate::linalg::dot(&t.gamma[k], &t.u);
        if !r.is_multiple_of(&t.taus[k]) {
            return Err(FtvError::ValidationFailed { property: 2, detail: format!("row {k} pairs to {r} with u") });
        }
        for j in 0..lambda.rows() {
            let r = crate::linalg::dot(&t.gamma[k], lambda.row(j));
            if !r.is_multiple_of(&t.taus[k]) {
                return Err(FtvError::ValidationFailed {
                    property: 3,
                    detail: format!("row {k} pairs to {r} with fan row {j}"),
                });
            }
        }
    }
    // x ↦ (q·x, Γx mod τ) must be onto ℤ ⊕ ⊕ℤ/τ_k.
    let mut m = IntMatrix::zeros(1 + s, n1 + s);
    for j in 0..n1 {
        m[(0, j)] = t.q[j].clone();
        for k in 0..s {
            m[(1 + k, j)] = t.gamma[k][j].clone();
        }
    }
    for k in 0..s {
        m[(1 + k, n1 + k)] = t.taus[k].clone();
    }
    let (d, _, _) = snf(&m);
    if !(0..1 + s).all(|i| d[(i, i)].is_one()) {
        return Err(FtvError::ValidationFailed { property: 4, detail: "action map is not surjective".into() });
    }
    let mut witnesses = Vec::with_capacity(s);
    for k in 0..s {
        let mut rhs = vec![BigInt::zero(); 1 + s];
        rhs[1 + k] = BigInt::one();
        let sol = solve_integer(&m, &rhs)
            .map_err(|_| FtvError::ValidationFailed { property: 4, detail: format!("no preimage of generator {k}") })?;
        witnesses.push(sol[..n1].to_vec());
    }
    t.witnesses = witnesses;
    Ok(())
}

/// Do two diagonal actions generate the same subgroup of the torus, up to
/// the ℂ* of weights `q` when `modulo_weights` is set? Rows are taken
/// modulo their own `τ`.
pub fn same_action(
    g1: &[IntVector],
    t1: &[BigInt],
    g2: &[IntVector],
    t2: &[BigInt],
    q: &[BigInt],
    modulo_weights: bool,
) -> bool {
    let n = q.len();
    let big_n = t1.iter().chain(t2).fold(BigInt::one(), |l, t| l.lcm(t));
    let lattice = |g: &[IntVector], t: &[BigInt]| -> IntMatrix {
        let mut rows: Vec<IntVector> = g
            .iter()
            .zip(t)
            .map(|(r, tk)| r.iter().map(|x| x * (&big_n / tk)).collect())
            .collect();
        if modulo_weights {
            rows.push(q.to_vec());
        }
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = big_n.clone();
            rows.push(e);
        }
        let (h, _) = hnf(&IntMatrix::from_rows(rows).expect("rows"));
        h.select_rows(&(0..n).collect::<Vec<_>>())
    };
    lattice(g1, t1) == lattice(g2, t2)
}

/// Dual fan of `(ℙⁿ, a)` in the standard order: column `i` is the primitive
/// generator of the vertex of `Δ_a` off the facet of ray `i`.
pub fn pn_dual_fan(a: &[BigInt]) -> Result<IntMatrix> {
    let n1 = a.len();
    if n1 < 2 {
        return Err(FtvError::DimensionMismatch("framing of projective space needs n + 1 ≥ 2 entries".into()));
    }
    let n = n1 - 1;
    let total: BigInt = a.iter().sum();
    let head = &a[..n];
    let mut cols = Vec::with_capacity(n1);
    for i in 0..n {
        let mut v: IntVector = head.iter().map(|x| -x).collect();
        v[i] += &total;
        cols.push(crate::linalg::primitive(&v));
    }
    cols.push(crate::linalg::primitive(&head.iter().map(|x| -x).collect::<IntVector>()));
    Ok(IntMatrix::from_columns(n, &cols))
}

/// Order of the group `G` in `𝕏_a ≅ ℙ(q)/G` for a framing of ℙⁿ given in
/// non-decreasing order with gcd one.
pub fn group_order(a: &[BigInt]) -> Result<BigInt> {
    check_pn_convention(a)?;
    let lambda = pn_dual_fan(a)?;
    let q = kernel_weight_vector(&lambda)?;
    let taus = torsion_coefficients(&lambda, &wps_fan_matrix(&q)?)?;
    let order: BigInt = taus.iter().product();
    let total: BigInt = a.iter().sum();
    let expected = num_traits::pow(total, a.len() - 2);
    if order != expected {
        return Err(FtvError::InvariantViolated(format!("group order {order}, expected {expected}")));
    }
    Ok(order)
}

pub fn check_pn_convention(a: &[BigInt]) -> Result<()> {
    if !a.iter().all(Signed::is_positive) {
        return Err(FtvError::ConventionViolated("entries must be positive".into()));
    }
    if !a.windows(2).all(|w| w[0] <= w[1]) {
        return Err(FtvError::ConventionViolated("entries must be non-decreasing".into()));
    }
    if !gcd_of(a).is_one() {
        return Err(FtvError::ConventionViolated("entries must have gcd 1".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_bigint_vec;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVector {
        to_bigint_vec(x)
    }

    #[test]
    fn weights_of_example_fan() {
        let lambda = IntMatrix::from_i64_rows(&[[1, 2, -1], [0, 5, -2]]);
        assert_eq!(weight_vector_rank1(&lambda).unwrap(), v(&[1, 2, 5]));
        let f0 = IntMatrix::from_i64_rows(&[[1, -1, 0, 0], [0, 0, 1, -1]]);
        assert_eq!(weight_vector_rank1(&f0).unwrap_err(), FtvError::NotRankOne(2));
    }

    #[test]
    fn reduction_of_weights() {
        assert_eq!(reduce_weights(&v(&[1, 2, 2])), v(&[1, 1, 1]));
        assert_eq!(reduce_weights(&v(&[2, 4, 6])), v(&[1, 2, 3]));
        assert_eq!(reduce_weights(&v(&[6, 10, 15])), v(&[1, 1, 1]));
        assert_eq!(reduce_weights(&v(&[1, 1, 2])), v(&[1, 1, 2]));
    }

    #[test]
    fn quartic_torsion() {
        let a = v(&[1, 1, 2]);
        let lambda = pn_dual_fan(&a).unwrap();
        assert_eq!(lambda, IntMatrix::from_i64_rows(&[[3, -1, -1], [-1, 3, -1]]));
        let q = weight_vector_rank1(&lambda).unwrap();
        assert_eq!(q, v(&[1, 1, 2]));
        let t = torsion_matrix(&q, &lambda).unwrap();
        assert_eq!(t.taus, v(&[4]));
        assert!(same_action(&t.gamma, &t.taus, &[v(&[1, 0, 3])], &v(&[4]), &q, true));
        let g = t.gamma_vanishing_at(1).unwrap();
        assert!(g == [v(&[1, 0, 3])] || g == [v(&[3, 0, 1])], "{g:?}");
        assert!(same_action(&g, &t.taus, &t.gamma, &t.taus, &q, true));
        assert!(t.gamma_vanishing_at(2).is_err());
    }

    #[test]
    fn group_order_requires_convention() {
        assert_eq!(group_order(&v(&[1, 1, 1, 1, 1])).unwrap(), BigInt::from(125));
        assert!(matches!(group_order(&v(&[2, 1, 1])), Err(FtvError::ConventionViolated(_))));
        assert!(matches!(group_order(&v(&[2, 2, 2])), Err(FtvError::ConventionViolated(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn wps_fan_annihilates_weights(q in prop::collection::vec(1i64..12, 2..5)) {
            let q = to_bigint_vec(&q);
            prop_assume!(gcd_of(&q).is_one());
            let f = wps_fan_matrix(&q).unwrap();
            prop_assert!(f.mul_vec(&q).unwrap().iter().all(Zero::is_zero));
            prop_assert_eq!(kernel_weight_vector(&f).unwrap(), q);
        }

        #[test]
        fn torsion_data_validates(a in prop::collection::vec(1i64..6, 3..5)) {
            let mut a = a;
            a.sort();
            let a = to_bigint_vec(&a);
            prop_assume!(gcd_of(&a).is_one());
            let lambda = pn_dual_fan(&a).unwrap();
            let q = kernel_weight_vector(&lambda).unwrap();
            prop_assert_eq!(&q, &weight_vector_rank1(&lambda).unwrap());
            let t = torsion_matrix(&q, &lambda).unwrap();
            prop_assert_eq!(group_order(&a).unwrap(), t.order.clone());
            // |det Λ with column i removed| = q_i·|a|^(n−1)
            let total: BigInt = a.iter().sum();
            for i in 0..q.len() {
                let cols: Vec<usize> = (0..q.len()).filter(|&j| j != i).collect();
                let minor = crate::linalg::det(&lambda.select_columns(&cols)).unwrap().abs();
                prop_assert_eq!(minor, &q[i] * num_traits::pow(total.clone(), a.len() - 2));
            }
            let taus = torsion_coefficients(&lambda, &wps_fan_matrix(&q).unwrap()).unwrap();
            prop_assert_eq!(&t.taus, &taus);
            let b = base_change(&lambda, &wps_fan_matrix(&q).unwrap()).unwrap();
            prop_assert_eq!(t.order.clone(), crate::linalg::det(&b).unwrap().abs());
        }
    }
}
