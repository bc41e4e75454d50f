//! Exact rational solving and kernels.
//!
//! The workhorse is Dixon's p-adic lifting with Cramer-bound-driven
//! precision and a final exact verification, combined with mod-p rank
//! profiles to reduce kernel computations to square nonsingular solves.
//! Every fast path verifies its output exactly, retrying with a different
//! prime on failure, so unlucky primes cost time but never correctness.

use super::hnf::{left_kernel, saturate_rows};
use super::modp::{bigint_mod_u64, modular_primes, FpMat};
use super::{IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Solve `X · basis = rhs` over the rationals, where `basis` is a
/// row-staircase matrix (row HNF with its zero rows removed): pivot columns
/// strictly increase and each pivot has only zeros below it.
///
/// Returns one row of coefficients per row of `rhs`, or `None` if some row
/// of `rhs` lies outside the rational row span.
pub fn solve_triangular(basis: &IntMatrix, rhs: &IntMatrix) -> Option<RatMatrix> {
    assert_eq!(basis.cols(), rhs.cols(), "ambient dimension mismatch");
    let r = basis.rows();
    // locate the pivot column of each basis row
    let mut pivots = Vec::with_capacity(r);
    for i in 0..r {
        let c = (0..basis.cols()).find(|&j| !basis[(i, j)].is_zero())?;
        if let Some(&(_, prev)) = pivots.last() {
            assert!(c > prev, "rows are not in staircase form");
        }
        pivots.push((i, c));
    }
    let mut out = RatMatrix::zero(rhs.rows(), r);
    for k in 0..rhs.rows() {
        let mut residual: Vec<BigRational> = rhs
            .row(k)
            .iter()
            .map(|v| BigRational::from(v.clone()))
            .collect();
        for &(i, c) in &pivots {
            let coeff = &residual[c] / BigRational::from(basis[(i, c)].clone());
            if !coeff.is_zero() {
                for j in 0..basis.cols() {
                    let t = &coeff * BigRational::from(basis[(i, j)].clone());
                    residual[j] -= t;
                }
            }
            out[(k, i)] = coeff;
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return None;
        }
    }
    Some(out)
}

/// `⌈‖v‖₂⌉` as a `BigInt`, floored at 1.
fn col_norm_bound(m: &IntMatrix, col: usize) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..m.rows() {
        s += &m[(i, col)] * &m[(i, col)];
    }
    (s.sqrt() + 1u32).max(BigInt::one())
}

/// Solve `a · X = b` for square nonsingular `a`, with the columns of `b` as
/// right-hand sides, by p-adic lifting. Returns `None` when `a` is
/// singular. The result is verified exactly before being returned.
pub fn solve_dixon(a: &IntMatrix, b: &IntMatrix) -> Option<RatMatrix> {
    assert_eq!(a.rows(), a.cols(), "p-adic solver requires a square matrix");
    assert_eq!(a.rows(), b.rows(), "right-hand side has the wrong height");
    let n = a.rows();
    if n == 0 {
        return Some(RatMatrix::zero(0, b.cols()));
    }

    // Hadamard-style bounds: |den| <= prod of column norms of a;
    // |num| <= (same product) * max column norm of b.
    let mut den_bound = BigInt::one();
    for j in 0..n {
        den_bound *= col_norm_bound(a, j);
    }
    let mut b_norm = BigInt::one();
    for j in 0..b.cols() {
        b_norm = b_norm.max(col_norm_bound(b, j));
    }
    let num_bound = &den_bound * &b_norm;

    // Find a prime where a is invertible. If the first `k` primes with
    // product exceeding the Hadamard bound all fail, det(a) = 0 exactly.
    let max_tries = (den_bound.bits() as usize) / 61 + 2;
    let primes = modular_primes(max_tries);
    let mut chosen: Option<(u64, FpMat)> = None;
    for &p in &primes {
        if let Some(inv) = FpMat::from_int(a, p).inverse() {
            chosen = Some((p, inv));
            break;
        }
    }
    let (p, a_inv) = chosen?;
    let pb = BigInt::from(p);

    // p^iters must exceed twice num_bound * den_bound for rational
    // reconstruction to be unambiguous.
    let target: BigInt = &num_bound * &den_bound * 2u32 + 1u32;
    let iters = (target.bits() as usize) / 61 + 1;

    let mut solution = RatMatrix::zero(n, b.cols());
    for col in 0..b.cols() {
        let mut residue: Vec<BigInt> = (0..n).map(|i| b[(i, col)].clone()).collect();
        let mut x = vec![BigInt::zero(); n];
        let mut pk = BigInt::one();
        for _ in 0..iters {
            let r_mod: Vec<u64> = residue.iter().map(|v| bigint_mod_u64(v, p)).collect();
            let y = a_inv.mul_col(&r_mod);
            for i in 0..n {
                x[i] += &pk * BigInt::from(y[i]);
            }
            // residue = (residue - a·y) / p, exactly
            for i in 0..n {
                let mut acc = residue[i].clone();
                for j in 0..n {
                    acc -= &a[(i, j)] * BigInt::from(y[j]);
                }
                let (q, r) = acc.div_rem(&pb);
                debug_assert!(r.is_zero());
                residue[i] = q;
            }
            pk *= &pb;
        }
        for i in 0..n {
            let xi = x[i].mod_floor(&pk);
            let rec = rational_reconstruct(&xi, &pk, &num_bound, &den_bound)?;
            solution[(i, col)] = rec;
        }
    }

    // exact verification: a · solution == b
    let sol_int = solution.clear_denominators();
    let (num, den) = sol_int;
    let lhs = a.mul(&num);
    for i in 0..n {
        for j in 0..b.cols() {
            if lhs[(i, j)] != &b[(i, j)] * &den {
                return None;
            }
        }
    }
    Some(solution)
}

/// Rational reconstruction: the unique `n/d` with `x ≡ n·d⁻¹ (mod m)`,
/// `|n| <= nbound`, `0 < d <= dbound`, provided `2·nbound·dbound < m`.
fn rational_reconstruct(
    x: &BigInt,
    m: &BigInt,
    nbound: &BigInt,
    dbound: &BigInt,
) -> Option<BigRational> {
    let mut r0 = m.clone();
    let mut r1 = x.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1.abs() > *nbound {
        if r1.is_zero() {
            return None;
        }
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *dbound {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    if !r1.gcd(&t1).is_one() {
        // candidate not in lowest terms ⇒ m shares a factor with the
        // denominator; caller verifies and falls back
        let g = r1.gcd(&t1);
        r1 /= &g;
        t1 /= &g;
    }
    Some(BigRational::new(r1, t1))
}

/// Saturated integer basis (as rows) of the right kernel
/// `{v : m · vᵀ = 0}` of an integer matrix.
///
/// Fast path: mod-p rank profile + p-adic solve on the pivot submatrix,
/// verified exactly. Falls back to an HNF transform kernel when modular
/// information is inconsistent (which only unlucky primes can cause).
pub fn right_kernel_rational(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    if cols == 0 {
        return IntMatrix::zero(0, 0);
    }
    if m.rows() == 0 || m.is_zero() {
        return IntMatrix::identity(cols);
    }
    for &p in modular_primes(4).iter() {
        if let Some(kernel) = try_right_kernel(m, p) {
            return kernel;
        }
    }
    // unconditional fallback
    left_kernel(&m.transpose())
}

fn try_right_kernel(m: &IntMatrix, p: u64) -> Option<IntMatrix> {
    let cols = m.cols();
    let (rank, prows, pcols) = FpMat::from_int(m, p).pivot_profile();
    if rank == cols {
        // full column rank mod p forces full column rank over Q
        return Some(IntMatrix::zero(0, cols));
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pcols.contains(c)).collect();
    let mut vectors: Vec<Vec<BigInt>> = Vec::with_capacity(free.len());
    if rank == 0 {
        for &fc in &free {
            let mut v = vec![BigInt::zero(); cols];
            v[fc] = BigInt::one();
            vectors.push(v);
        }
    } else {
        let square = m.select_rows(&prows).select_cols(&pcols);
        let rhs_cols = m.select_rows(&prows).select_cols(&free);
        let rhs = rhs_cols.scale(&BigInt::from(-1));
        let x = solve_dixon(&square, &rhs)?;
        for (k, &fc) in free.iter().enumerate() {
            // assemble the rational kernel vector, then clear denominators
            let mut den = BigInt::one();
            for i in 0..rank {
                den = den.lcm(x[(i, k)].denom());
            }
            let mut v = vec![BigInt::zero(); cols];
            for i in 0..rank {
                v[pcols[i]] = (&x[(i, k)] * BigRational::from(den.clone())).to_integer();
            }
            v[fc] = den;
            vectors.push(v);
        }
    }
    // exact membership check: every vector annihilated by every row of m
    for v in &vectors {
        for i in 0..m.rows() {
            let dot: BigInt = (0..cols).map(|j| &m[(i, j)] * &v[j]).sum();
            if !dot.is_zero() {
                return None; // unlucky prime: rank mod p dropped
            }
        }
    }
    // rank certification: found cols - rank_p independent kernel vectors and
    // dim ker = cols - rank_Q <= cols - rank_p, so the basis is complete.
    let raw = IntMatrix::from_rows(vectors);
    Some(saturate_rows(&raw))
}

/// Saturated integer basis (as rows) of the left kernel `{x : x · m = 0}`.
pub fn left_kernel_rational(m: &IntMatrix) -> IntMatrix {
    right_kernel_rational(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hnf::hnf_basis;

    #[test]
    fn triangular_solver_finds_coordinates() {
        let basis = IntMatrix::from_i64(&[&[2, 1, 0], &[0, 0, 3]]);
        // rhs = 2·row0 + 1·row1 and a half-integer combination
        let rhs = IntMatrix::from_i64(&[&[4, 2, 3], &[1, 0, 0]]);
        let x = solve_triangular(&basis, &rhs);
        assert!(x.is_none(), "(1,0,0) is outside the span");
        let rhs = IntMatrix::from_i64(&[&[4, 2, 3], &[2, 1, -3]]);
        let x = solve_triangular(&basis, &rhs).unwrap();
        assert_eq!(x[(0, 0)], BigRational::from(BigInt::from(2)));
        assert_eq!(x[(0, 1)], BigRational::from(BigInt::from(1)));
        assert_eq!(x[(1, 0)], BigRational::from(BigInt::from(1)));
        assert_eq!(x[(1, 1)], BigRational::from(BigInt::from(-1)));
    }

    #[test]
    fn dixon_matches_cramer_2x2() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_i64(&[&[1], &[0]]);
        let x = solve_dixon(&a, &b).unwrap();
        assert_eq!(x[(0, 0)], BigRational::new(BigInt::from(-2), BigInt::one()));
        assert_eq!(
            x[(1, 0)],
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
    }

    #[test]
    fn dixon_detects_singular() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let b = IntMatrix::from_i64(&[&[1], &[1]]);
        assert!(solve_dixon(&a, &b).is_none());
    }

    #[test]
    fn dixon_roundtrip_random_like() {
        // fixed pseudo-random matrix; answer known by construction
        let a = IntMatrix::from_i64(&[
            &[7, -3, 2, 5],
            &[1, 9, -4, 0],
            &[6, 2, 11, -7],
            &[-2, 8, 3, 13],
        ]);
        // choose x with awkward denominators, b = a·x cleared
        let x_true = RatMatrix::from_fn(4, 1, |i, _| {
            BigRational::new(
                BigInt::from([3, -5, 7, 11][i]),
                BigInt::from([2, 3, 5, 7][i]),
            )
        });
        let (x_num, x_den) = x_true.clear_denominators();
        let b = a.mul(&x_num);
        let sol = solve_dixon(&a, &b).unwrap();
        for i in 0..4 {
            let expect = &x_true[(i, 0)] * BigRational::from(x_den.clone());
            assert_eq!(sol[(i, 0)], expect);
        }
    }

    #[test]
    fn right_kernel_agrees_with_hnf_kernel() {
        let cases = [
            IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]),
            IntMatrix::from_i64(&[&[2, 4, 6, 8], &[1, 2, 3, 4], &[0, 0, 1, 1]]),
            IntMatrix::from_i64(&[&[1, 0], &[0, 1]]),
            IntMatrix::from_i64(&[&[0, 0, 0]]),
            IntMatrix::from_i64(&[&[3, 6], &[6, 12], &[9, 18]]),
        ];
        for m in &cases {
            let fast = right_kernel_rational(m);
            let slow = left_kernel(&m.transpose());
            assert_eq!(
                hnf_basis(&fast),
                hnf_basis(&slow),
                "kernel mismatch for {m:?}"
            );
            // saturation: SNF diagonal of the kernel basis is all ones
            if fast.rows() > 0 {
                let s = crate::linalg::snf(&fast);
                for i in 0..fast.rows() {
                    assert!(s[(i, i)].is_one(), "kernel basis must be saturated");
                }
            }
        }
    }

    #[test]
    fn left_kernel_rational_orientation() {
        // row relation: r0 + r1 - r2 = 0
        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        let k = left_kernel_rational(&m);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn rational_reconstruction_basics() {
        // x = 3/7 mod 1000003 (prime)
        let m = BigInt::from(1000003);
        let inv7 = BigInt::from(crate::arith::inv_mod(7, 1000003));
        let x = (BigInt::from(3) * inv7).mod_floor(&m);
        let r = rational_reconstruct(&x, &m, &BigInt::from(100), &BigInt::from(100)).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(3), BigInt::from(7)));
    }
}
