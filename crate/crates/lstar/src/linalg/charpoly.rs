//! Characteristic polynomials of integer matrices, computed modulo a batch
//! of word-size primes and recombined by CRT.

use super::modp::{crt_symmetric, modular_primes, FpMat};
use super::IntMatrix;
use num_bigint::BigInt;
use num_traits::One;

/// Characteristic polynomial of a square integer matrix: monic, with the
/// coefficient of `x^k` at index `k`.
///
/// The coefficient of `x^(n-k)` is (up to sign) a sum of `k×k` principal
/// minors, so every coefficient is bounded by `(1 + ⌈√n⌉·A)^n` where `A` is
/// the largest entry in absolute value; enough 62-bit primes are used to
/// cover twice that bound.
pub fn charpoly(m: &IntMatrix) -> Vec<BigInt> {
    assert_eq!(
        m.rows(),
        m.cols(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let a = m.max_abs().max(BigInt::one());
    let sqrt_n = BigInt::from(n).sqrt() + 1u32;
    let bound: BigInt = (BigInt::one() + sqrt_n * a).pow(n as u32) * 2u32 + 1u32;
    let count = bound.bits() as usize / 61 + 1;
    let primes = modular_primes(count);
    let polys: Vec<Vec<u64>> = primes
        .iter()
        .map(|&p| FpMat::from_int(m, p).charpoly())
        .collect();
    (0..=n)
        .map(|k| {
            let residues: Vec<u64> = polys.iter().map(|cp| cp[k]).collect();
            crt_symmetric(&residues, &primes)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    /// Signed determinant by Laplace expansion — an independent (slow)
    /// oracle for evaluating det(xI − M) at integer points.
    fn det_laplace(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut det = BigInt::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
                m[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = &m[(0, j)] * det_laplace(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    fn eval_poly(p: &[BigInt], x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    #[test]
    fn companion_matrix() {
        // companion of x^3 - 2x - 5 with rows as images of basis vectors
        let m = IntMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[5, 2, 0]]);
        let cp = charpoly(&m);
        let expect: Vec<BigInt> = [-5i64, -2, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(cp, expect);
    }

    #[test]
    fn matches_laplace_oracle_at_sample_points() {
        let m = IntMatrix::from_i64(&[
            &[3, -1, 4, 1],
            &[-5, 9, -2, 6],
            &[5, -3, 5, 8],
            &[-9, 7, 9, 3],
        ]);
        let cp = charpoly(&m);
        assert_eq!(cp.len(), 5);
        assert!(cp[4].is_one());
        for x0 in -2i64..=2 {
            let x = BigInt::from(x0);
            // det(xI - M)
            let shifted =
                IntMatrix::from_fn(
                    4,
                    4,
                    |i, j| {
                        if i == j {
                            &x - &m[(i, j)]
                        } else {
                            -&m[(i, j)]
                        }
                    },
                );
            assert_eq!(eval_poly(&cp, &x), det_laplace(&shifted), "x = {x0}");
        }
    }

    #[test]
    fn huge_entries_need_many_primes() {
        // 2x2 with ~40-digit entries: charpoly = x² - tr·x + det
        let big = BigInt::parse_bytes(b"1234567890123456789012345678901234567890", 10).unwrap();
        let m = IntMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => big.clone(),
            (0, 1) => &big - 1,
            (1, 0) => -&big,
            _ => &big + 7,
        });
        let cp = charpoly(&m);
        let tr = &m[(0, 0)] + &m[(1, 1)];
        let det = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)];
        assert_eq!(cp, vec![det, -tr, BigInt::one()]);
    }

    #[test]
    fn trace_and_det_positions() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 2]]);
        // (x-1)(x-3) = x² - 4x + 3
        let cp = charpoly(&m);
        assert_eq!(cp[0], BigInt::from(3));
        assert_eq!(cp[1], BigInt::from(-4));
        assert!(cp[2].is_one());
        assert!(!cp[0].is_negative());
    }
}
