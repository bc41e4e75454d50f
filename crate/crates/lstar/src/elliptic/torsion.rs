//! Rational torsion order via reduction bounds confirmed by exact division
//! polynomials on a reduced short model.

use super::EllipticCurve;
use crate::arith;
use crate::polyz::ZPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A division polynomial `u(x)·y^e` on `y² = x³ + Ax + B`.
#[derive(Clone)]
struct DivPoly {
    u: ZPoly,
    has_y: bool,
}

impl DivPoly {
    fn mul(&self, other: &DivPoly, f: &ZPoly) -> DivPoly {
        let mut u = self.u.mul(&other.u);
        if self.has_y && other.has_y {
            u = u.mul(f); // y² = f(x)
        }
        DivPoly {
            u,
            has_y: self.has_y ^ other.has_y,
        }
    }

    fn sub(&self, other: &DivPoly) -> DivPoly {
        assert_eq!(
            self.has_y, other.has_y,
            "mixed parity in division-polynomial subtraction"
        );
        DivPoly {
            u: self.u.sub(&other.u),
            has_y: self.has_y,
        }
    }

    fn div_2y(&self, f: &ZPoly) -> DivPoly {
        assert!(!self.has_y);
        // (w, y⁰) / 2y = (w / 2f, y¹)
        let q = self
            .u
            .div_exact(f)
            .expect("even-index division polynomial divisible by f");
        let half = q
            .div_exact(&ZPoly::constant(BigInt::from(2)))
            .expect("even-index division polynomial has even content");
        DivPoly {
            u: half,
            has_y: true,
        }
    }
}

/// `ψ_0 … ψ_nmax` for `y² = x³ + Ax + B`.
fn psi_table(a: &BigInt, b: &BigInt, nmax: usize) -> Vec<DivPoly> {
    let f = short_cubic(a, b);
    let a2 = a * a;
    let a3 = &a2 * a;
    let b2 = b * b;
    let mut psi: Vec<DivPoly> = Vec::with_capacity(nmax + 1);
    psi.push(DivPoly {
        u: ZPoly::zero(),
        has_y: false,
    });
    psi.push(DivPoly {
        u: ZPoly::one(),
        has_y: false,
    });
    psi.push(DivPoly {
        u: ZPoly::constant(BigInt::from(2)),
        has_y: true,
    });
    psi.push(DivPoly {
        u: ZPoly::new(vec![
            -&a2,
            12 * b,
            6 * a.clone(),
            BigInt::zero(),
            BigInt::from(3),
        ]),
        has_y: false,
    });
    psi.push(DivPoly {
        u: ZPoly::new(vec![
            -8 * &b2 - &a3,
            -4 * a * b,
            -5 * &a2,
            20 * b.clone(),
            5 * a.clone(),
            BigInt::zero(),
            BigInt::one(),
        ])
        .mul_scalar(&BigInt::from(4)),
        has_y: true,
    });
    for n in 5..=nmax {
        let next = if n % 2 == 1 {
            let m = (n - 1) / 2;
            let lhs = psi[m + 2]
                .mul(&psi[m], &f)
                .mul(&psi[m], &f)
                .mul(&psi[m], &f);
            let rhs = psi[m - 1]
                .mul(&psi[m + 1], &f)
                .mul(&psi[m + 1], &f)
                .mul(&psi[m + 1], &f);
            lhs.sub(&rhs)
        } else {
            let m = n / 2;
            let lhs = psi[m + 2].mul(&psi[m - 1], &f).mul(&psi[m - 1], &f);
            let rhs = psi[m - 2].mul(&psi[m + 1], &f).mul(&psi[m + 1], &f);
            psi[m].mul(&lhs.sub(&rhs), &f).div_2y(&f)
        };
        psi.push(next);
    }
    psi
}

fn short_cubic(a: &BigInt, b: &BigInt) -> ZPoly {
    ZPoly::new(vec![b.clone(), a.clone(), BigInt::zero(), BigInt::one()])
}

/// All integer roots of a nonzero polynomial.
fn integer_roots(p: &ZPoly) -> Vec<BigInt> {
    let mut roots = Vec::new();
    if p.is_zero() {
        return roots;
    }
    let (_, factors) = p.factor();
    for (f, _) in factors {
        if f.degree() == Some(1) && f.leading().abs().is_one() {
            let root = -f.coeff(0) * f.leading(); // leading ∈ {±1}
            roots.push(root);
        }
    }
    roots.sort();
    roots
}

/// Is there a point of exact order `n` on `y² = f(x)`? `u_n` is the
/// x-part of `ψ_n` and `proper` the x-parts for the maximal proper
/// divisors of `n` that must not vanish.
fn has_exact_order(f: &ZPoly, u_n: &ZPoly, proper: &[&ZPoly], need_nonzero_y: bool) -> bool {
    'candidates: for x0 in integer_roots(u_n) {
        let v = f.eval(&x0);
        if v.is_negative() {
            continue;
        }
        let s = v.sqrt();
        if &s * &s != v {
            continue;
        }
        if need_nonzero_y && v.is_zero() {
            continue;
        }
        for d in proper {
            if d.eval(&x0).is_zero() {
                continue 'candidates;
            }
        }
        return true;
    }
    false
}

/// Order of the rational torsion subgroup.
pub fn torsion_order(e: &EllipticCurve) -> u64 {
    let m = e.minimal_model();
    let disc = m.disc();

    // bound: torsion injects into E(F_p) for odd primes of good reduction
    let mut bound: u64 = 0;
    let mut used = 0;
    for p in arith::primes_up_to(1000).into_iter().skip(1) {
        if super::val_p(&disc, p) > 0 {
            continue;
        }
        bound = bound.gcd(&m.count_points_fp(p));
        used += 1;
        if bound == 1 || used >= 12 {
            break;
        }
    }
    assert!(
        used >= 8 || bound == 1,
        "not enough good primes for the torsion bound"
    );
    if bound == 1 {
        return 1;
    }

    let (a, b) = m.short_model();
    let f = short_cubic(&a, &b);

    // 2-part: 2-torsion x-coordinates are the integer roots of f
    let two_torsion_roots = integer_roots(&f).len();
    let t2 = 1 + two_torsion_roots as u64;
    let mut order = 1u64;
    if t2 > 1 {
        let psi = psi_table(&a, &b, if bound % 8 == 0 { 8 } else { 4 });
        order = t2;
        if t2 == 2 {
            // cyclic 2-part: Z/2 ⊂ Z/4 ⊂ Z/8
            if bound % 4 == 0 && has_exact_order(&f, &psi[4].u, &[], true) {
                order = 4;
                if bound % 8 == 0 && has_exact_order(&f, &psi[8].u, &[&psi[4].u], true) {
                    order = 8;
                }
            }
        } else {
            // full 2-torsion: Z/2×Z/2 ⊂ Z/2×Z/4 ⊂ Z/2×Z/8
            if bound % 8 == 0 && has_exact_order(&f, &psi[4].u, &[], true) {
                order = 8;
                if bound % 16 == 0 && has_exact_order(&f, &psi[8].u, &[&psi[4].u], true) {
                    order = 16;
                }
            }
        }
    }

    // odd part
    for l in [3u64, 5, 7] {
        if bound % l != 0 {
            continue;
        }
        let psi = psi_table(
            &a,
            &b,
            if l == 3 && bound % 9 == 0 {
                9
            } else {
                l as usize
            },
        );
        if has_exact_order(&f, &psi[l as usize].u, &[], false) {
            order *= l;
            if l == 3 && bound % 9 == 0 && has_exact_order(&f, &psi[9].u, &[&psi[3].u], false) {
                order *= 3;
            }
        }
    }

    assert!(
        matches!(order, 1..=10 | 12 | 16),
        "torsion order {order} outside the rational range"
    );
    assert!(
        bound % order == 0,
        "confirmed torsion must divide the reduction bound"
    );
    order
}

#[cfg(test)]
mod tests {
    use super::super::EllipticCurve;
    use super::*;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::new(a).unwrap()
    }

    #[test]
    fn division_polynomial_shapes() {
        // ψ_n has x-degree (n²-1)/2 with leading n (n odd),
        // and y·(degree (n²-4)/2 with leading n) for n even
        let psi = psi_table(&BigInt::from(-7), &BigInt::from(11), 9);
        for n in 1..=9usize {
            let expect_deg = if n % 2 == 1 {
                (n * n - 1) / 2
            } else {
                (n * n - 4) / 2
            };
            assert_eq!(psi[n].u.degree(), Some(expect_deg), "ψ_{n} degree");
            assert_eq!(psi[n].u.leading(), BigInt::from(n as i64), "ψ_{n} leading");
            assert_eq!(psi[n].has_y, n % 2 == 0);
        }
    }

    #[test]
    fn division_polynomial_roots_on_lemniscatic_curve() {
        // y² = x³ - x: 2-torsion at x ∈ {-1, 0, 1}; 4-torsion needs x² ∓ 2x - 1,
        // which has no rational roots, but x = ±(1+√2)... none integral
        let f = short_cubic(&BigInt::from(-1), &BigInt::from(0));
        assert_eq!(
            integer_roots(&f),
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)]
        );
        let psi = psi_table(&BigInt::from(-1), &BigInt::from(0), 4);
        assert!(!has_exact_order(&f, &psi[4].u, &[], true));
        assert!(!has_exact_order(&f, &psi[3].u, &[], false));
    }

    #[test]
    fn torsion_of_reference_curves() {
        assert_eq!(torsion_order(&curve([0, -1, 1, -10, -20])), 5); // conductor 11
        assert_eq!(torsion_order(&curve([1, 0, 1, 4, -6])), 6); // conductor 14
        assert_eq!(torsion_order(&curve([1, 1, 1, -10, -10])), 8); // conductor 15
        assert_eq!(torsion_order(&curve([1, -1, 1, -1, -14])), 4); // conductor 17
        assert_eq!(torsion_order(&curve([0, 0, 1, 0, -7])), 3); // conductor 27
        assert_eq!(torsion_order(&curve([0, 0, 0, -1, 0])), 4); // Z/2 × Z/2
        assert_eq!(torsion_order(&curve([0, 0, 0, 0, 1])), 6); // conductor 36
        assert_eq!(torsion_order(&curve([0, 0, 1, -1, 0])), 1); // conductor 37
        assert_eq!(torsion_order(&curve([0, 1, 1, -23, -50])), 3); // 37, second class
    }

    #[test]
    fn torsion_of_twists_from_reference_table() {
        let t = curve([1, 0, 1, 4, -6]).quadratic_twist(-3).unwrap();
        assert_eq!(torsion_order(&t), 6);
        let t = curve([0, 0, 1, 0, -7]).quadratic_twist(-3).unwrap();
        assert_eq!(torsion_order(&t), 3);
        let t = curve([1, 0, 0, -4, -1]).quadratic_twist(-7).unwrap();
        assert_eq!(torsion_order(&t), 4);
    }

    #[test]
    fn torsion_divides_good_reduction_counts() {
        for a in [
            [0i64, -1, 1, -10, -20],
            [1, 1, 1, -10, -10],
            [0, 0, 0, -1, 0],
        ] {
            let e = curve(a);
            let t = torsion_order(&e);
            let disc = e.disc();
            let mut checked = 0;
            for p in arith::primes_up_to(200).into_iter().skip(1) {
                if super::super::val_p(&disc, p) == 0 {
                    assert_eq!(e.count_points_fp(p) % t, 0, "{a:?} at {p}");
                    checked += 1;
                }
            }
            assert!(checked > 20);
        }
    }
}
