//! Rational lattices in `Q^n` with canonical bases, generalized lattice
//! indices, saturation, and the elementary number-theoretic functions the
//! index computations lean on.

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{self, abs_det, hnf_basis, saturate_rows, solve_triangular};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use crate::linalg::{IntMatrix, RatMatrix};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

pub use crate::arith::{class_number_unit, is_fundamental_discriminant, kronecker};

/// Smith normal form with transforms: `(S, U, V)` where `U·M·V = S`, the
/// diagonal of `S` satisfies `d₁ | d₂ | …`, and `U`, `V` are unimodular.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    linalg::snf_with_transform(m)
}

/// A finitely generated `Z`-submodule of `Q^n`, stored canonically: the
/// rows of `mat` are the Hermite-normal-form basis of `den·L`, with the
/// common factor of `den` and all entries removed. Two equal lattices have
/// identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    den: BigInt,
    mat: IntMatrix,
}

impl Lattice {
    /// Lattice generated by the rows of a rational matrix.
    pub fn from_rat_rows(rows: &RatMatrix) -> Lattice {
        let (mi, den) = rows.clear_denominators();
        Self::normalized(rows.cols(), den, hnf_basis(&mi))
    }

    /// Lattice generated by the rows of an integer matrix.
    pub fn from_int_rows(rows: &IntMatrix) -> Lattice {
        Self::normalized(rows.cols(), BigInt::one(), hnf_basis(rows))
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Lattice {
        Lattice {
            ambient: n,
            den: BigInt::one(),
            mat: IntMatrix::identity(n),
        }
    }

    fn normalized(ambient: usize, den: BigInt, mat: IntMatrix) -> Lattice {
        assert!(den.is_positive());
        let mut g = den.clone();
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                g = g.gcd(&mat[(i, j)]);
            }
        }
        if g.is_one() || mat.rows() == 0 {
            return Lattice { ambient, den, mat };
        }
        let mat = IntMatrix::from_fn(mat.rows(), mat.cols(), |i, j| &mat[(i, j)] / &g);
        Lattice {
            ambient,
            den: den / g,
            mat,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.mat.rows()
    }

    /// Basis as rational rows (rank × ambient_dim).
    pub fn basis(&self) -> RatMatrix {
        RatMatrix::from_fn(self.mat.rows(), self.ambient, |i, j| {
            BigRational::new(self.mat[(i, j)].clone(), self.den.clone())
        })
    }

    /// Integer matrix `M` and denominator `d` with the lattice spanned by
    /// the rows of `M/d`.
    pub fn scaled_basis(&self) -> (&IntMatrix, &BigInt) {
        (&self.mat, &self.den)
    }

    /// The lattice `c·L`.
    pub fn scale(&self, c: &Rat) -> Lattice {
        assert!(!c.is_zero(), "scaling a lattice by zero");
        let mat = self.mat.scale(&c.numer().abs());
        Self::normalized(self.ambient, &self.den * c.denom(), hnf_basis(&mat))
    }

    /// Membership test for a rational vector.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        // x·mat = den·v must have an integral solution x
        let mut dv = BigInt::one();
        for x in v {
            dv = dv.lcm(x.denom());
        }
        let rhs = IntMatrix::from_fn(1, self.ambient, |_, j| {
            (&v[j] * BigRational::from(&dv * &self.den)).to_integer()
        });
        match solve_triangular(&self.mat, &rhs) {
            None => false,
            Some(x) => {
                (0..x.cols()).all(|j| (&x[(0, j)] / BigRational::from(dv.clone())).is_integer())
            }
        }
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Lattice(dim {}, rank {}, 1/{} · {:?})",
            self.ambient,
            self.mat.rows(),
            self.den,
            self.mat
        )
    }
}

/// Generalized index `[L : M]` of two lattices with the same `Q`-span: the
/// absolute determinant of the change-of-basis matrix from `L` to `M`.
/// Equals the group index when `M ⊆ L`.
pub fn lattice_index(l: &Lattice, m: &Lattice) -> Result<Rat> {
    if l.ambient != m.ambient {
        return Err(Error::SpanMismatch);
    }
    if l.rank() != m.rank() {
        return Err(Error::SpanMismatch);
    }
    let r = l.rank();
    if r == 0 {
        return Ok(Rat::one());
    }
    // coordinates of m's basis in l's basis (as integer matrices; the
    // denominators contribute a scalar factor)
    let x = solve_triangular(&l.mat, &m.mat).ok_or(Error::SpanMismatch)?;
    let (num, den) = x.clear_denominators();
    let det_num = abs_det(&num);
    if det_num.is_zero() {
        return Err(Error::RankDeficient);
    }
    // change of basis from l to m: X · (l.den / m.den)
    let scale = BigRational::new(l.den.clone(), m.den.clone());
    let mut scale_pow = Rat::one();
    for _ in 0..r {
        scale_pow *= &scale;
    }
    let det = BigRational::new(det_num, den.pow(r as u32));
    Ok(det * scale_pow)
}

/// `ambient ∩ span_Q(L)`: the saturation of `L` inside `ambient`.
pub fn saturate(l: &Lattice, ambient: &Lattice) -> Result<Lattice> {
    if l.ambient != ambient.ambient {
        return Err(Error::SpanMismatch);
    }
    if l.rank() == 0 {
        return Ok(Lattice {
            ambient: l.ambient,
            den: BigInt::one(),
            mat: IntMatrix::zero(0, l.ambient),
        });
    }
    // coordinates of l in the ambient basis; failure means span ⊄ span
    let x = solve_triangular(&ambient.mat, &l.mat).ok_or(Error::SpanMismatch)?;
    let (xi, _) = x.clear_denominators();
    let sat_coords = saturate_rows(&xi);
    // map back to the ambient's coordinates in Q^n
    let mat = sat_coords.mul(&ambient.mat);
    Ok(Lattice::normalized(
        l.ambient,
        ambient.den.clone(),
        hnf_basis(&mat),
    ))
}

/// Strip all prime factors in `S` from numerator and denominator.
pub fn away_from(s: &[u64], x: &Rat) -> Result<Rat> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let strip = |mut n: BigInt| -> BigInt {
        let sign = if n.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        n = n.abs();
        for &p in s {
            let pb = BigInt::from(p);
            while (&n % &pb).is_zero() && !n.is_one() {
                n /= &pb;
            }
        }
        sign * n
    };
    Ok(Rat::new(strip(x.numer().clone()), strip(x.denom().clone())))
}

/// Convenience: `{2} ∪ {primes dividing d}` for "away from 2D" checks.
pub fn primes_with_two(d: u64) -> Vec<u64> {
    let mut s = vec![2];
    for p in arith::prime_divisors(d) {
        if p != 2 {
            s.push(p);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn snf_spec_examples() {
        let (s, u, v) = snf(&IntMatrix::identity(3));
        assert_eq!(s, IntMatrix::identity(3));
        assert_eq!(abs_det(&u), BigInt::one());
        assert_eq!(abs_det(&v), BigInt::one());

        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&m);
        assert_eq!(u.mul(&m).mul(&v), s);
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));

        let z = IntMatrix::zero(2, 2);
        assert_eq!(snf(&z).0, z);
    }

    #[test]
    fn lattice_index_spec_examples() {
        let z2 = Lattice::standard(2);
        assert_eq!(lattice_index(&z2, &z2).unwrap(), Rat::one());

        let m = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(lattice_index(&z2, &m).unwrap(), rat(6, 1));

        let m = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(lattice_index(&z2, &m).unwrap(), rat(2, 1));

        // generalized (non-nested) index: [2Z : 3Z] = 3/2
        let a = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[2]]));
        let b = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[3]]));
        assert_eq!(lattice_index(&a, &b).unwrap(), rat(3, 2));

        // span mismatch
        let line = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[1, 0]]));
        assert!(matches!(
            lattice_index(&z2, &line),
            Err(Error::SpanMismatch)
        ));
    }

    #[test]
    fn saturate_spec_examples() {
        let z1 = Lattice::standard(1);
        let two_z = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(saturate(&two_z, &z1).unwrap(), z1);

        let z2 = Lattice::standard(2);
        let l = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[2, 2]]));
        let expect = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(saturate(&l, &z2).unwrap(), expect);

        assert_eq!(saturate(&z2, &z2).unwrap(), z2);
    }

    #[test]
    fn away_from_spec_examples() {
        assert_eq!(away_from(&[2], &rat(12, 1)).unwrap(), rat(3, 1));
        assert_eq!(away_from(&[2, 3], &rat(8, 9)).unwrap(), rat(1, 1));
        assert_eq!(away_from(&[2, 11], &rat(352, 5)).unwrap(), rat(1, 5));
        assert!(matches!(
            away_from(&[2], &Rat::zero()),
            Err(Error::ZeroInput)
        ));
        // negative values keep their sign
        assert_eq!(away_from(&[2], &rat(-12, 1)).unwrap(), rat(-3, 1));
    }

    #[test]
    fn contains_and_membership() {
        let l = Lattice::from_rat_rows(&RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(0, 1)],
            vec![rat(0, 1), rat(1, 3)],
        ]));
        assert!(l.contains(&[rat(1, 2), rat(1, 3)]));
        assert!(l.contains(&[rat(3, 2), rat(-2, 3)]));
        assert!(!l.contains(&[rat(1, 4), rat(0, 1)]));
        assert!(l.contains(&[rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn index_vs_elementary_divisors_oracle() {
        // when M ⊆ L, the index equals the product of elementary divisors
        // of the integer coordinate matrix of M in a basis of L
        let l = Lattice::from_int_rows(&IntMatrix::from_i64(&[&[1, 2, 0], &[0, 3, 1]]));
        let coords = IntMatrix::from_i64(&[&[2, 4], &[6, 2]]);
        let m_mat = coords.mul(l.scaled_basis().0);
        let m = Lattice::from_int_rows(&m_mat);
        let idx = lattice_index(&l, &m).unwrap();
        let s = linalg::snf(&coords);
        let divisor_product = &s[(0, 0)] * &s[(1, 1)];
        assert_eq!(idx, Rat::from(divisor_product));
    }

    #[test]
    fn class_number_reexport_sanity() {
        assert_eq!(class_number_unit(23).unwrap(), (3, 1));
        assert_eq!(kronecker(-7, 11), 1);
        assert!(is_fundamental_discriminant(-4));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn snf_properties(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
            // deterministic small pseudo-random matrix
            let mut state = seed | 1;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 41) as i64 - 20
            };
            let m = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(next()));
            let (s, u, v) = snf(&m);
            prop_assert_eq!(u.mul(&m).mul(&v), s.clone());
            prop_assert_eq!(abs_det(&u), BigInt::one());
            prop_assert_eq!(abs_det(&v), BigInt::one());
            let mut prev = BigInt::one();
            for i in 0..rows.min(cols) {
                let d = s[(i, i)].clone();
                prop_assert!(!d.is_negative());
                if !d.is_zero() {
                    prop_assert_eq!(&d % &prev, BigInt::zero());
                    prev = d;
                }
            }
        }

        #[test]
        fn index_multiplicativity(seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 7) as i64 - 3
            };
            let mut nonsingular = || loop {
                let m = IntMatrix::from_fn(3, 3, |_, _| BigInt::from(next()));
                if !abs_det(&m).is_zero() {
                    return m;
                }
            };
            let a = nonsingular();
            let b = nonsingular();
            let c = nonsingular();
            let l = Lattice::from_int_rows(&a);
            let k = Lattice::from_int_rows(&b.mul(&a));
            let m = Lattice::from_int_rows(&c.mul(&b).mul(&a));
            let lm = lattice_index(&l, &m).unwrap();
            let lk = lattice_index(&l, &k).unwrap();
            let km = lattice_index(&k, &m).unwrap();
            prop_assert_eq!(lm, lk * km);
        }

        #[test]
        fn away_from_squares_stay_square(n in -40i64..40, d in 1i64..40) {
            prop_assume!(n != 0);
            let x = rat(n, d);
            let sq = &x * &x;
            let stripped = away_from(&[2, 3, 5], &sq).unwrap();
            // perfect square test on numerator and denominator
            let num = stripped.numer().clone();
            let den = stripped.denom().clone();
            prop_assert!(!num.is_negative());
            let ns = num.sqrt();
            let ds = den.sqrt();
            prop_assert_eq!(&ns * &ns, num);
            prop_assert_eq!(&ds * &ds, den);
        }
    }
}
