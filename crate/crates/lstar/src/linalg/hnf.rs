//! Hermite and Smith normal forms over `Z`, and the kernel/saturation
//! primitives built from them. Everything here is exact; pivots are chosen
//! smallest-first to moderate coefficient growth.

use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nearest-integer quotient, so remainders satisfy `|r| <= |b|/2`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, _) = a.div_rem(b);
    let mut best_q = q.clone();
    let mut best_r = (a - &q * b).abs();
    for dq in [-1i32, 1i32] {
        let q2 = &q + dq;
        let r2 = (a - &q2 * b).abs();
        if r2 < best_r {
            best_r = r2;
            best_q = q2;
        }
    }
    best_q
}

/// Row Hermite normal form, in place; returns the rank.
///
/// After the call the first `rank` rows form the HNF basis (staircase of
/// positive pivots, entries above a pivot reduced into `[0, pivot)`), and
/// the remaining rows are zero. If `transform` is given it must start as a
/// square matrix (typically the identity) with the same number of rows and
/// receives the same row operations, so `transform_out · input = output`.
fn hnf_in_place(m: &mut IntMatrix, mut transform: Option<&mut IntMatrix>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below row r
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..rows {
                let v = &m[(i, c)];
                if !v.is_zero() {
                    let a = v.abs();
                    if best.as_ref().map_or(true, |(_, b)| a < *b) {
                        best = Some((i, a));
                    }
                }
            }
            let Some((i0, _)) = best else { break };
            m.swap_rows(r, i0);
            if let Some(t) = transform.as_deref_mut() {
                t.swap_rows(r, i0);
            }
            let mut clean = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = round_div(&m[(i, c)], &m[(r, c)]);
                row_submul(m, i, r, &q);
                if let Some(t) = transform.as_deref_mut() {
                    row_submul(t, i, r, &q);
                }
                if !m[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue; // column has no pivot
        }
        if m[(r, c)].is_negative() {
            row_negate(m, r);
            if let Some(t) = transform.as_deref_mut() {
                row_negate(t, r);
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for k in 0..r {
            let q = m[(k, c)].div_floor(&m[(r, c)]);
            if !q.is_zero() {
                row_submul(m, k, r, &q);
                if let Some(t) = transform.as_deref_mut() {
                    row_submul(t, k, r, &q);
                }
            }
        }
        r += 1;
    }
    r
}

fn row_submul(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let v = &m[(i, c)] - q * &m[(j, c)];
        m[(i, c)] = v;
    }
}

fn row_negate(m: &mut IntMatrix, i: usize) {
    for c in 0..m.cols() {
        let v = -&m[(i, c)];
        m[(i, c)] = v;
    }
}

/// Row HNF with the same shape as the input (zero rows at the bottom).
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    hnf_in_place(&mut h, None);
    h
}

/// Nonzero rows of the row HNF: a canonical basis of the row lattice.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let r = hnf_in_place(&mut h, None);
    IntMatrix::from_rows((0..r).map(|i| h.row_vec(i)).collect())
}

/// `(H, U)` with `U·m = H`, `U` unimodular, `H` the row HNF of `m`.
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// Saturated basis of the left kernel `{x : x·m = 0}`, as matrix rows.
///
/// The rows of the returned matrix span `ker ∩ Z^rows` exactly (a direct
/// summand of the ambient `Z^rows`, since they extend to a unimodular
/// matrix).
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let r = hnf_in_place(&mut h, Some(&mut u));
    // from_fn keeps the column count even when the kernel is trivial
    IntMatrix::from_fn(m.rows() - r, m.rows(), |i, j| u[(r + i, j)].clone())
}

/// `|det m|` for square `m`, via the HNF pivot product (0 if singular).
pub fn abs_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let mut h = m.clone();
    let r = hnf_in_place(&mut h, None);
    if r < m.rows() {
        return BigInt::zero();
    }
    let mut d = BigInt::one();
    for i in 0..m.rows() {
        d *= &h[(i, i)];
    }
    d
}

/// Smith normal form: `(S, U, V)` with `U·m·V = S`, `U`, `V` unimodular and
/// `S` diagonal with `d_1 | d_2 | …`, all `d_i >= 0`.
pub fn snf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (s, u, v, _) = snf_full(m);
    (s, u, v)
}

/// Diagonal of the Smith form only.
pub fn snf(m: &IntMatrix) -> IntMatrix {
    snf_full(m).0
}

/// Full Smith data: `(S, U, V, V_inv)` with `U·m·V = S` and `V·V_inv = I`.
///
/// `V_inv` is what saturation needs: the first `rank` rows of `V_inv` are a
/// saturated basis of the row space of `m`.
pub fn snf_full(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let (rows, cols) = (s.rows(), s.cols());
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut vinv = IntMatrix::identity(cols);
    let n = rows.min(cols);

    // column operation helpers keeping v, vinv in sync:
    // col_j -= q·col_i  ⇒  vinv: row_i += q·row_j
    // (right-multiplying s and v by E = I − q·e_{ij}; vinv ← E^{-1}·vinv)
    fn col_submul(
        s: &mut IntMatrix,
        v: &mut IntMatrix,
        vinv: &mut IntMatrix,
        j: usize,
        i: usize,
        q: &BigInt,
    ) {
        if q.is_zero() {
            return;
        }
        for r in 0..s.rows() {
            let x = &s[(r, j)] - q * &s[(r, i)];
            s[(r, j)] = x;
        }
        for r in 0..v.rows() {
            let x = &v[(r, j)] - q * &v[(r, i)];
            v[(r, j)] = x;
        }
        for c in 0..vinv.cols() {
            let x = &vinv[(i, c)] + q * &vinv[(j, c)];
            vinv[(i, c)] = x;
        }
    }
    fn col_swap(s: &mut IntMatrix, v: &mut IntMatrix, vinv: &mut IntMatrix, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..s.rows() {
            let a = s[(r, i)].clone();
            s[(r, i)] = s[(r, j)].clone();
            s[(r, j)] = a;
        }
        for r in 0..v.rows() {
            let a = v[(r, i)].clone();
            v[(r, i)] = v[(r, j)].clone();
            v[(r, j)] = a;
        }
        vinv.swap_rows(i, j);
    }
    fn col_negate(s: &mut IntMatrix, v: &mut IntMatrix, vinv: &mut IntMatrix, i: usize) {
        for r in 0..s.rows() {
            let a = -&s[(r, i)];
            s[(r, i)] = a;
        }
        for r in 0..v.rows() {
            let a = -&v[(r, i)];
            v[(r, i)] = a;
        }
        row_negate(vinv, i);
    }

    let mut t = 0usize;
    while t < n {
        // find smallest nonzero entry in the trailing submatrix
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &s[(i, j)];
                if !x.is_zero() {
                    let a = x.abs();
                    if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                        best = Some((i, j, a));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        col_swap(&mut s, &mut v, &mut vinv, t, pj);

        // clear row and column t alternately until both are clean
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let q = round_div(&s[(i, t)], &s[(t, t)]);
                    row_submul(&mut s, i, t, &q);
                    row_submul(&mut u, i, t, &q);
                    if !s[(i, t)].is_zero() {
                        // remainder becomes the new, smaller pivot
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let q = round_div(&s[(t, j)], &s[(t, t)]);
                    col_submul(&mut s, &mut v, &mut vinv, j, t, &q);
                    if !s[(t, j)].is_zero() {
                        col_swap(&mut s, &mut v, &mut vinv, t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if s[(t, t)].is_negative() {
            col_negate(&mut s, &mut v, &mut vinv, t);
        }
        // enforce divisibility: pivot must divide every remaining entry
        let mut offender: Option<usize> = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            // add the offending row; the next pass shrinks the pivot
            let one = BigInt::from(-1);
            row_submul(&mut s, t, i, &one);
            row_submul(&mut u, t, i, &one);
            continue;
        }
        t += 1;
    }
    (s, u, v, vinv)
}

/// Saturation of the row lattice of `m` inside `Z^cols`: a basis (rows) of
/// `span_Q(rows of m) ∩ Z^cols`.
pub fn saturate_rows(m: &IntMatrix) -> IntMatrix {
    let (s, _, _, vinv) = snf_full(m);
    let n = s.rows().min(s.cols());
    let rank = (0..n).take_while(|&i| !s[(i, i)].is_zero()).count();
    IntMatrix::from_rows((0..rank).map(|i| vinv.row_vec(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_simple() {
        let m = IntMatrix::from_i64(&[&[2, 3, 6, 2], &[5, 6, 1, 6], &[8, 3, 1, 1]]);
        let h = hnf_basis(&m);
        // staircase with positive pivots, rank 3
        assert_eq!(h.rows(), 3);
        let mut pivot_col = None;
        for i in 0..h.rows() {
            let c = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()).unwrap();
            if let Some(pc) = pivot_col {
                assert!(c > pc);
            }
            pivot_col = Some(c);
            assert!(h[(i, c)].is_positive());
        }
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let m = IntMatrix::from_i64(&[&[4, 6], &[2, 2], &[6, 10]]);
        let (h, u) = hnf_with_transform(&m);
        assert_eq!(u.mul(&m), h);
        assert_eq!(abs_det(&u), BigInt::one());
    }

    #[test]
    fn left_kernel_saturated() {
        // rows: r0 + r1 = r2, kernel spanned by (1, 1, -1)
        let m = IntMatrix::from_i64(&[&[1, 0, 3], &[0, 2, 1], &[1, 2, 4]]);
        let k = left_kernel(&m);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&m).is_zero());
        let g = num_integer::gcd(
            num_integer::gcd(k[(0, 0)].clone(), k[(0, 1)].clone()),
            k[(0, 2)].clone(),
        );
        assert_eq!(g, BigInt::one());
    }

    #[test]
    fn snf_examples() {
        // identity
        let s = snf(&IntMatrix::identity(3));
        assert_eq!(s, IntMatrix::identity(3));
        // diag(2,3) -> diag(1,6)
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = snf(&m);
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        // zero matrix stays zero
        let z = IntMatrix::zero(2, 3);
        assert_eq!(snf(&z), z);
    }

    #[test]
    fn snf_transforms_and_chain() {
        let m = IntMatrix::from_i64(&[&[6, 4, 2], &[4, 8, 0], &[2, 0, 10]]);
        let (s, u, v) = snf_with_transform(&m);
        assert_eq!(u.mul(&m).mul(&v), s);
        assert_eq!(abs_det(&u), BigInt::one());
        assert_eq!(abs_det(&v), BigInt::one());
        let mut prev = BigInt::one();
        for i in 0..3 {
            let d = s[(i, i)].clone();
            if !d.is_zero() {
                assert!((&d % &prev).is_zero(), "divisibility chain");
                prev = d;
            }
        }
    }

    #[test]
    fn saturation_examples() {
        // 2Z inside Z -> Z
        let m = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(saturate_rows(&m), IntMatrix::from_i64(&[&[1]]));
        // Z·(2,2) inside Z² -> Z·(1,1)
        let m = IntMatrix::from_i64(&[&[2, 2]]);
        let s = saturate_rows(&m);
        assert_eq!(s.rows(), 1);
        assert_eq!(s[(0, 0)].abs(), BigInt::one());
        assert_eq!(s[(0, 0)], s[(0, 1)]);
        // full lattice -> itself (as a lattice)
        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(hnf_basis(&saturate_rows(&m)), IntMatrix::identity(2));
    }

    #[test]
    fn saturation_membership_property() {
        // saturation contains the original rows with index a finite integer
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[0, 6, 9]]);
        let s = saturate_rows(&m);
        assert_eq!(s.rows(), 2);
        // each original row must be an integer combination of s's rows:
        // solve x·s = row exactly
        for i in 0..2 {
            let rhs = IntMatrix::from_rows(vec![m.row_vec(i)]);
            let sol = crate::linalg::solve_triangular(&hnf_basis(&s), &rhs).expect("in span");
            for j in 0..sol.cols() {
                assert!(sol[(0, j)].is_integer(), "saturation must contain rows");
            }
        }
    }
}
