//! Primary (generalized-eigenspace) splitting of an integral operator
//! restricted to a stable saturated subspace, with exact integer output.

use num_traits::Zero;

use super::{charpoly, hnf_basis, left_kernel, solve_triangular, IntMatrix};
use crate::polyz::ZPoly;

/// Restriction of an integral operator to a stable saturated subspace given
/// by a staircase basis: the integral `X` with `X·basis = basis·op`.
pub fn restrict_to_subspace(basis: &IntMatrix, op: &IntMatrix) -> IntMatrix {
    let rhs = basis.mul(op);
    let x = solve_triangular(basis, &rhs).expect("operator must preserve the subspace");
    IntMatrix::from_fn(x.rows(), x.cols(), |i, j| {
        let e = &x[(i, j)];
        assert!(
            e.is_integer(),
            "restriction to a saturated stable subspace is integral"
        );
        e.to_integer()
    })
}

/// Evaluate a polynomial at a square matrix (Horner).
pub fn poly_at_matrix(p: &ZPoly, m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let cs = p.coeffs();
    if cs.is_empty() {
        return IntMatrix::zero(n, n);
    }
    let mut acc = IntMatrix::identity(n).scale(&cs[cs.len() - 1]);
    for k in (0..cs.len() - 1).rev() {
        acc = acc.mul(m);
        if !cs[k].is_zero() {
            acc = acc.add(&IntMatrix::identity(n).scale(&cs[k]));
        }
    }
    acc
}

pub fn mat_pow(m: &IntMatrix, e: usize) -> IntMatrix {
    let mut acc = IntMatrix::identity(m.rows());
    for _ in 0..e {
        acc = acc.mul(m);
    }
    acc
}

/// Split a stable subspace (saturated staircase basis) into the primary
/// subspaces of one integral operator. Pieces come back as saturated
/// staircase bases, ordered by the irreducible factor that cuts them out
/// (degree first, then coefficients).
pub fn split_primary(basis: IntMatrix, op: &IntMatrix) -> Vec<IntMatrix> {
    let t = restrict_to_subspace(&basis, op);
    let cp = ZPoly::new(charpoly(&t));
    let (_, mut factors) = cp.factor();
    if factors.len() <= 1 {
        return vec![basis];
    }
    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    let mut out = Vec::new();
    let mut total = 0;
    for (h, e) in factors {
        let ker = left_kernel(&mat_pow(&poly_at_matrix(&h, &t), e));
        let sub = hnf_basis(&ker.mul(&basis));
        total += sub.rows();
        out.push(sub);
    }
    assert_eq!(total, basis.rows(), "primary subspaces fill the space");
    out
}
