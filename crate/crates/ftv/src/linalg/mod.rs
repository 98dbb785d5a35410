//! Exact integer linear algebra.

mod matrix;
pub mod lp;
mod normal_form;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer};

use crate::error::{FtvError, Result};

pub use matrix::{dot, to_bigint_vec, IntMatrix, IntVector};
pub use normal_form::{elementary_divisors, hnf, snf};

pub type RatVector = Vec<BigRational>;

/// `serialize_with` helpers writing integers as decimal strings.
pub mod ser {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn rows<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    }
}

/// Integer read from JSON as either a number or a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match &v {
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            serde_json::Value::String(s) => s.trim().to_string(),
            _ => return Err(serde::de::Error::custom(format!("expected an integer, got {v}"))),
        };
        s.parse::<BigInt>()
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("not an integer: {s}")))
    }
}

pub fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub fn rat_vec(v: &[BigInt]) -> RatVector {
    v.iter().map(rat).collect()
}

/// Returns the integer vector if every coordinate is integral.
pub fn integral(v: &[BigRational]) -> Option<IntVector> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(FtvError::DimensionMismatch(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Rank over ℚ.
pub fn rank(a: &IntMatrix) -> usize {
    let (h, _) = hnf(a);
    (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Lattice basis (as rows) of `{x ∈ ℤᵐ : A·x = 0}` for an `n×m` matrix `A`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(&a.transpose());
    let zero_rows: Vec<usize> =
        (0..h.rows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
    u.select_rows(&zero_rows)
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVector {
    let g = gcd_of(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive integer multiple of a rational vector (same direction).
pub fn primitive_rational(v: &[BigRational]) -> IntVector {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVector = v.iter().map(|x| (x * rat(&l)).to_integer()).collect();
    primitive(&scaled)
}

/// Solves `A·x = b` over ℚ for square non-singular `A`.
pub fn solve_square(a: &IntMatrix, b: &[BigInt]) -> Result<RatVector> {
    if !a.is_square() || a.rows() != b.len() {
        return Err(FtvError::DimensionMismatch("solve_square needs a square system".into()));
    }
    let rows: Vec<RatVector> = a.to_rows().iter().map(|r| rat_vec(r)).collect();
    solve_rational(rows, rat_vec(b)).ok_or(FtvError::Singular)
}

/// Gaussian elimination over ℚ; `None` if singular.
pub fn solve_rational(mut m: Vec<RatVector>, mut b: RatVector) -> Option<RatVector> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        b.swap(c, p);
        let piv = m[c][c].clone();
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                if !m[c][j].is_zero() {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
            let t = &f * &b[c];
            b[i] -= t;
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// Integer solution of `A·x = b` for an arbitrary `m×k` matrix, if any.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<IntVector> {
    if a.rows() != b.len() {
        return Err(FtvError::DimensionMismatch("right hand side length".into()));
    }
    // U·Aᵀ = H, so A·Uᵀ = Hᵀ and x = Uᵀ·y where yᵀ·H = bᵀ.
    let (h, u) = hnf(&a.transpose());
    let mut rem = b.to_vec();
    let mut y = vec![BigInt::zero(); h.rows()];
    for i in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) else {
            break;
        };
        let (q, r) = rem[p].div_rem(&h[(i, p)]);
        if !r.is_zero() {
            return Err(FtvError::NoIntegerSolution);
        }
        for j in p..h.cols() {
            let t = &q * &h[(i, j)];
            rem[j] -= t;
        }
        y[i] = q;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return Err(FtvError::NoIntegerSolution);
    }
    u.transpose().mul_vec(&y)
}

/// Inverse of a unimodular matrix.
pub fn inverse_unimodular(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.rows();
    if !det(a)?.abs().is_one() {
        return Err(FtvError::InvariantViolated("matrix is not unimodular".into()));
    }
    let rows: Vec<RatVector> = a.to_rows().iter().map(|r| rat_vec(r)).collect();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: RatVector = (0..n)
            .map(|i| if i == j { BigRational::one() } else { BigRational::zero() })
            .collect();
        let x = solve_rational(rows.clone(), e).ok_or(FtvError::Singular)?;
        cols.push(integral(&x).ok_or_else(|| FtvError::InvariantViolated("inverse is not integral".into()))?);
    }
    Ok(IntMatrix::from_columns(n, &cols))
}

/// True if the columns of `v` positively span ℝⁿ: full rank and some
/// strictly positive relation among the columns.
pub fn positively_spanning(v: &IntMatrix) -> bool {
    if rank(v) != v.rows() {
        return false;
    }
    // Σ μⱼ vⱼ = −Σ vⱼ with μ ≥ 0 gives the relation with coefficients 1 + μ.
    let rows: Vec<RatVector> = v.to_rows().iter().map(|r| rat_vec(r)).collect();
    let rhs: RatVector = (0..v.rows()).map(|i| -rat(&v.row(i).iter().sum())).collect();
    lp::feasible(&rows, &rhs).is_some()
}

/// Checks the F-matrix conditions: rank `n`, no zero column, columns
/// positively span ℝⁿ, and no two columns point in the same direction.
pub fn is_f_matrix(v: &IntMatrix) -> Result<()> {
    if v.rows() == 0 || v.cols() == 0 {
        return Err(FtvError::NotFMatrix("empty matrix".into()));
    }
    if rank(v) != v.rows() {
        return Err(FtvError::NotFMatrix(format!("rank is below {}", v.rows())));
    }
    let cols: Vec<IntVector> = v.columns();
    if let Some(j) = cols.iter().position(|c| c.iter().all(Zero::is_zero)) {
        return Err(FtvError::NotFMatrix(format!("column {j} is zero")));
    }
    let prims: Vec<IntVector> = cols.iter().map(|c| primitive(c)).collect();
    for i in 0..prims.len() {
        for j in i + 1..prims.len() {
            if prims[i] == prims[j] {
                return Err(FtvError::NotFMatrix(format!("columns {i} and {j} span the same ray")));
            }
        }
    }
    if !positively_spanning(v) {
        return Err(FtvError::NotFMatrix("columns do not positively span".into()));
    }
    Ok(())
}

/// True when every column is primitive.
pub fn is_reduced(v: &IntMatrix) -> bool {
    v.columns().iter().all(|c| gcd_of(c).is_one())
}

/// A non-negative integer matrix `Q` whose rows form a lattice basis of the
/// relations among the columns of `v`.
pub fn gale_dual(v: &IntMatrix) -> Result<IntMatrix> {
    let k = integer_kernel(v);
    if k.rows() == 0 {
        return Ok(k);
    }
    positivize(&k).ok_or(FtvError::PositivizationFailed)
}

fn nonneg(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// Unimodular row change making every entry non-negative, found by a bounded
/// search over small coefficient vectors.
fn positivize(k: &IntMatrix) -> Option<IntMatrix> {
    let r = k.rows();
    if k.to_rows().iter().all(|row| nonneg(row)) {
        return Some(k.clone());
    }
    if r == 1 {
        let neg: IntVector = k.row(0).iter().map(|x| -x).collect();
        return nonneg(&neg).then(|| IntMatrix::from_rows(vec![neg]).ok()).flatten();
    }
    let bound: i64 = match r {
        0..=4 => 3,
        5..=6 => 2,
        7..=10 => 1,
        _ => return None,
    };
    let width = (2 * bound + 1) as usize;
    let total = width.checked_pow(r as u32)?;
    let mut cands: Vec<(IntVector, IntVector)> = Vec::new();
    for idx in 0..total {
        let mut t = idx;
        let coeffs: IntVector = (0..r)
            .map(|_| {
                let c = (t % width) as i64 - bound;
                t /= width;
                BigInt::from(c)
            })
            .collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let row = k.tmul_vec(&coeffs).ok()?;
        if nonneg(&row) && gcd_of(&row).is_one() {
            cands.push((coeffs, row));
        }
    }
    cands.sort_by(|a, b| {
        let sa: BigInt = a.1.iter().sum();
        let sb: BigInt = b.1.iter().sum();
        sa.cmp(&sb).then_with(|| b.1.cmp(&a.1))
    });
    let mut chosen: Vec<usize> = Vec::new();
    let mut budget = 200_000usize;
    if pick_basis(&cands, r, 0, &mut chosen, &mut budget) {
        let rows: Vec<IntVector> = chosen.iter().map(|&i| cands[i].1.clone()).collect();
        return IntMatrix::from_rows(rows).ok();
    }
    None
}

fn pick_basis(
    cands: &[(IntVector, IntVector)],
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    budget: &mut usize,
) -> bool {
    if chosen.len() == r {
        let rows: Vec<IntVector> = chosen.iter().map(|&i| cands[i].0.clone()).collect();
        let c = IntMatrix::from_rows(rows).expect("square");
        return det(&c).map(|d| d.abs().is_one()).unwrap_or(false);
    }
    for i in start..cands.len() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        chosen.push(i);
        let rows: Vec<IntVector> = chosen.iter().map(|&j| cands[j].0.clone()).collect();
        let independent = rank(&IntMatrix::from_rows(rows).expect("rows")) == chosen.len();
        if independent && pick_basis(cands, r, i + 1, chosen, budget) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}
