//! Exact feasibility for `A·x = b, x ≥ 0` with Bland's rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Returns a non-negative solution of `A·x = b` if one exists.
///
/// `a` is given by rows; every row must have the same length.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let k = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![BigRational::zero(); k]);
    }
    let width = k + m + 1;
    let rhs = k + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); width];
        let flip = b[i].is_negative();
        for j in 0..k {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[k + i] = BigRational::from_integer(1.into());
        row[rhs] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    // Reduced costs of the phase one objective (sum of artificials).
    let mut z = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..k {
            z[j] -= &row[j];
        }
        z[rhs] -= &row[rhs];
    }

    loop {
        let Some(enter) = (0..k + m).find(|&j| z[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // Phase one objective is bounded below by zero.
            unreachable!("unbounded phase one");
        };
        pivot(&mut t, &mut z, r, enter);
        basis[r] = enter;
    }

    if !z[rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < k {
            x[bv] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], z: &mut [BigRational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        if !x.is_zero() {
            *x /= &p;
        }
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !z[c].is_zero() {
        let f = z[c].clone();
        for (x, y) in z.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}
