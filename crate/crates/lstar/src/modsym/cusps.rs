//! Cusps of X₀(N): reduced representatives and the classical equivalence
//! criterion, collected into indexed classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A point of P¹(ℚ): a reduced fraction p/q with q ≥ 0, where q = 0
/// (and p = 1) encodes the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    p: BigInt,
    q: BigInt,
}

impl Cusp {
    pub fn infinity() -> Cusp {
        Cusp {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn zero() -> Cusp {
        Cusp {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn new(p: BigInt, q: BigInt) -> Cusp {
        if q.is_zero() {
            assert!(!p.is_zero(), "0/0 is not a point of the projective line");
            return Cusp::infinity();
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Cusp { p, q }
    }

    pub fn from_i64(p: i64, q: i64) -> Cusp {
        Cusp::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn from_rat(x: &crate::ratlattice::Rat) -> Cusp {
        Cusp::new(x.numer().clone(), x.denom().clone())
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    /// Image under an integer matrix [[a,b],[c,d]] of nonzero determinant.
    pub fn apply(&self, m: &[BigInt; 4]) -> Cusp {
        let p = &m[0] * &self.p + &m[1] * &self.q;
        let q = &m[2] * &self.p + &m[3] * &self.q;
        Cusp::new(p, q)
    }
}

/// Whether two cusps are identified on X₀(N): p₁/q₁ ~ p₂/q₂ exactly when
/// s₁q₂ ≡ s₂q₁ (mod gcd(q₁q₂, N)) with pⱼsⱼ ≡ 1 (mod qⱼ).
pub fn cusps_equivalent(n: u64, a: &Cusp, b: &Cusp) -> bool {
    let nb = BigInt::from(n);
    let s = |c: &Cusp| -> BigInt {
        if c.q.is_zero() {
            // inverse mod 0 is an exact inverse, and p = ±1
            return c.p.clone();
        }
        if c.q.is_one() {
            return BigInt::zero();
        }
        let eg = c.p.extended_gcd(&c.q);
        assert!(eg.gcd.is_one(), "cusp fractions are reduced");
        eg.x.mod_floor(&c.q)
    };
    let modulus = (&a.q * &b.q).gcd(&nb);
    let lhs = s(a) * &b.q - s(b) * &a.q;
    if modulus.is_zero() {
        lhs.is_zero()
    } else {
        lhs.mod_floor(&modulus).is_zero()
    }
}

/// Cusps of X₀(N) collected into equivalence classes as they appear.
pub struct CuspClasses {
    n: u64,
    reps: Vec<Cusp>,
}

impl CuspClasses {
    pub fn new(n: u64) -> CuspClasses {
        CuspClasses {
            n,
            reps: Vec::new(),
        }
    }

    /// Class index of a cusp, registering a new class when unseen.
    pub fn classify(&mut self, c: &Cusp) -> usize {
        for (i, r) in self.reps.iter().enumerate() {
            if cusps_equivalent(self.n, r, c) {
                return i;
            }
        }
        self.reps.push(c.clone());
        self.reps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Cusp] {
        &self.reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;

    #[test]
    fn equivalence_matches_class_count_formula() {
        // classify every cusp a/c arising from the projective line and
        // compare against the divisor-sum formula
        for n in [1u64, 11, 12, 24, 36, 45, 49, 54] {
            let p1 = super::super::p1::P1List::new(n);
            let mut classes = CuspClasses::new(n);
            for i in 0..p1.len() {
                let [a, b, c, d] = p1.sl2_lift(i);
                classes.classify(&Cusp::new(a, c));
                classes.classify(&Cusp::new(b, d));
            }
            assert_eq!(classes.len() as u64, arith::num_cusps(n), "N = {n}");
        }
    }

    #[test]
    fn infinity_and_zero_classes() {
        // ∞ ~ 1/N for every N; 0 ~ ∞ only at level 1
        for n in [2u64, 11, 30] {
            assert!(cusps_equivalent(
                n,
                &Cusp::infinity(),
                &Cusp::from_i64(1, n as i64)
            ));
            assert!(!cusps_equivalent(n, &Cusp::infinity(), &Cusp::zero()));
        }
        assert!(cusps_equivalent(1, &Cusp::infinity(), &Cusp::zero()));
    }

    #[test]
    fn matrix_action_is_projective() {
        let c = Cusp::from_i64(3, 7);
        let m = [
            BigInt::from(2),
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(1),
        ];
        // (2·3 + 7)/(3 + 7) = 13/10
        assert_eq!(c.apply(&m), Cusp::from_i64(13, 10));
        let inf = Cusp::infinity();
        assert_eq!(inf.apply(&m), Cusp::from_i64(2, 1));
    }

    #[test]
    fn fractions_reduce_on_construction() {
        assert_eq!(Cusp::from_i64(6, -4), Cusp::from_i64(-3, 2));
        assert_eq!(Cusp::from_i64(0, 5), Cusp::zero());
        assert_eq!(Cusp::from_i64(7, 0), Cusp::infinity());
    }
}
