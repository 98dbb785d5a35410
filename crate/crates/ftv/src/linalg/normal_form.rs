//! Hermite and Smith normal forms over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

type Rows = Vec<Vec<BigInt>>;

fn to_rows(a: &IntMatrix) -> Rows {
    a.to_rows()
}

fn from_rows(rows: Rows, cols: usize) -> IntMatrix {
    let r = rows.len();
    IntMatrix::new(r, cols, rows.into_iter().flatten().collect()).expect("rectangular")
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Replaces rows `r`, `s` by `x·r + y·s` and `u·r + v·s`.
fn combine(rows: &mut Rows, r: usize, s: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    let n = rows[r].len();
    for j in 0..n {
        let a = rows[r][j].clone();
        let b = rows[s][j].clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        rows[r][j] = x * &a + y * &b;
        rows[s][j] = u * &a + v * &b;
    }
}

fn axpy_row(rows: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let n = rows[dst].len();
    for j in 0..n {
        if !rows[src][j].is_zero() {
            let t = q * &rows[src][j];
            rows[dst][j] -= t;
        }
    }
}

fn negate_row(rows: &mut Rows, r: usize) {
    for x in rows[r].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U·A = H`. `H` is upper echelon, pivots positive, and entries above each
/// pivot lie in `[0, pivot)`. Zero rows come last.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = a.shape();
    let mut h = to_rows(a);
    let mut u = identity_rows(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            let p = h[r][c].clone();
            let q = h[i][c].clone();
            let e = p.extended_gcd(&q);
            let g = e.gcd;
            let (x, y) = (e.x, e.y);
            let uu = -(&q / &g);
            let vv = &p / &g;
            combine(&mut h, r, i, &x, &y, &uu, &vv);
            combine(&mut u, r, i, &x, &y, &uu, &vv);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let piv = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&piv);
            axpy_row(&mut h, i, r, &q);
            axpy_row(&mut u, i, r, &q);
        }
        r += 1;
    }
    (from_rows(h, n), from_rows(u, m))
}

/// Smith normal form: returns `(D, P, Q)` with `P`, `Q` unimodular and
/// `P·A·Q = D`. The diagonal of `D` is non-negative with `d₁ | d₂ | …`.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = a.shape();
    let mut d = to_rows(a);
    let mut p = identity_rows(m);
    // Column operations are carried out on the transpose of Q.
    let mut qt = identity_rows(n);

    let col_axpy = |d: &mut Rows, qt: &mut Rows, dst: usize, src: usize, f: &BigInt| {
        for row in d.iter_mut() {
            if !row[src].is_zero() {
                let t = f * &row[src];
                row[dst] -= t;
            }
        }
        axpy_row(qt, dst, src, f);
    };

    for t in 0..m.min(n) {
        // Smallest non-zero entry in the trailing block becomes the pivot.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[bi][bj].abs() <= d[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(d, p, qt, m, n);
            };
            d.swap(t, bi);
            p.swap(t, bi);
            for row in d.iter_mut() {
                row.swap(t, bj);
            }
            qt.swap(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                axpy_row(&mut d, i, t, &q);
                axpy_row(&mut p, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, &mut qt, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            let piv = d[t][t].clone();
            let mut bad = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d[i][j].is_multiple_of(&piv) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    axpy_row(&mut d, t, i, &one);
                    axpy_row(&mut p, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut p, t);
        }
    }
    finish(d, p, qt, m, n)
}

fn finish(d: Rows, p: Rows, qt: Rows, m: usize, n: usize) -> (IntMatrix, IntMatrix, IntMatrix) {
    (from_rows(d, n), from_rows(p, m), from_rows(qt, n).transpose())
}

/// Diagonal of the Smith form.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = snf(a);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hnf_small_example() {
        let a = IntMatrix::from_i64_rows(&[[2, 4], [6, 8]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64_rows(&[[2, 0], [0, 4]]));
        assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn snf_of_quartic_base_change() {
        let b = IntMatrix::from_i64_rows(&[[3, -1, 1], [-1, 3, 1], [-1, -1, 1]]);
        let (d, p, q) = snf(&b);
        assert_eq!(d, IntMatrix::from_i64_rows(&[[1, 0, 0], [0, 4, 0], [0, 0, 4]]));
        assert_eq!(p.mul(&b).unwrap().mul(&q).unwrap(), d);
    }

    fn is_upper_echelon(h: &IntMatrix) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let piv = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            match piv {
                None => seen_zero = true,
                Some(j) => {
                    if seen_zero || last.is_some_and(|l| j <= l) || h[(i, j)].is_negative() {
                        return false;
                    }
                    for k in 0..i {
                        if h[(k, j)].is_negative() || h[(k, j)] >= h[(i, j)] {
                            return false;
                        }
                    }
                    last = Some(j);
                }
            }
        }
        true
    }

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..10, r * c).prop_map(move |v| {
                IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_is_a_unimodular_echelon_form(a in matrix_strategy()) {
            let (h, u) = hnf(&a);
            prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
            prop_assert!(super::super::det(&u).unwrap().abs().is_one());
            prop_assert!(is_upper_echelon(&h));
        }

        #[test]
        fn snf_is_diagonal_with_divisibility(a in matrix_strategy()) {
            let (d, p, q) = snf(&a);
            prop_assert_eq!(p.mul(&a).unwrap().mul(&q).unwrap(), d.clone());
            prop_assert!(super::super::det(&p).unwrap().abs().is_one());
            prop_assert!(super::super::det(&q).unwrap().abs().is_one());
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if i != j {
                        prop_assert!(d[(i, j)].is_zero());
                    }
                }
            }
            let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
            for w in diag.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
        }
    }
}
