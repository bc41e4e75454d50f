//! Tate's algorithm: local reduction data (Kodaira type, local conductor
//! exponent, Tamagawa number) at a prime, for arbitrary integral models.

use super::val_p;
use crate::arith;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Kodaira reduction type. `I(0)` is good reduction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl std::fmt::Display for Kodaira {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Kodaira {
    /// Number of irreducible components of the special fiber (with
    /// multiplicity one each, counted over the algebraic closure).
    pub fn components(&self) -> u32 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => *n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => 5 + n,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }
}

/// Local reduction data of a curve at a prime `p`.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub p: u64,
    pub kodaira: Kodaira,
    /// `ord_p` of the discriminant of a model minimal at `p`.
    pub ord_disc: u32,
    /// Tamagawa number `c_p ≥ 1`.
    pub tamagawa: u64,
    /// Exponent of `p` in the conductor.
    pub ord_conductor: u32,
    /// For multiplicative reduction: whether it is split.
    pub split: Option<bool>,
}

impl LocalData {
    /// `a_p` coefficient of the L-series at a bad prime
    /// (+1 split multiplicative, -1 nonsplit, 0 additive).
    pub fn bad_ap(&self) -> i64 {
        match (self.kodaira, self.split) {
            (Kodaira::I(n), Some(true)) if n > 0 => 1,
            (Kodaira::I(n), Some(false)) if n > 0 => -1,
            (Kodaira::I(0), _) => panic!("good reduction has no bad a_p"),
            _ => 0,
        }
    }
}

/// Working model; all transforms here have u = 1 so stay integral.
struct Model {
    a1: BigInt,
    a2: BigInt,
    a3: BigInt,
    a4: BigInt,
    a6: BigInt,
}

const INF: u32 = 1 << 20;

impl Model {
    fn b2(&self) -> BigInt {
        &self.a1 * &self.a1 + 4 * &self.a2
    }
    fn b6(&self) -> BigInt {
        &self.a3 * &self.a3 + 4 * &self.a6
    }
    fn b8(&self) -> BigInt {
        &self.a1 * &self.a1 * &self.a6 + 4 * &self.a2 * &self.a6 - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4
    }
    fn disc(&self) -> BigInt {
        let b2 = self.b2();
        let b4 = 2 * &self.a4 + &self.a1 * &self.a3;
        let b6 = self.b6();
        let b8 = self.b8();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    fn shift(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let a1 = &self.a1 + 2 * s;
        let a2 = &self.a2 - s * &self.a1 + 3 * r - s * s;
        let a3 = &self.a3 + r * &self.a1 + 2 * t;
        let a4 = &self.a4 - s * &self.a3 + 2 * r * &self.a2 - (t + r * s) * &self.a1 + 3 * r * r
            - 2 * s * t;
        let a6 = &self.a6 + r * &self.a4 + r * r * &self.a2 + r * r * r
            - t * &self.a3
            - t * t
            - r * t * &self.a1;
        *self = Model { a1, a2, a3, a4, a6 };
    }

    /// Divide out `u = p` (valid once all valuations are high enough).
    fn descale(&mut self, p: u64) {
        let pb = BigInt::from(p);
        let exact = |x: &BigInt, e: u32| -> BigInt {
            let (q, r) = x.div_rem(&pb.pow(e));
            assert!(r.is_zero(), "descale requires exact divisibility");
            q
        };
        *self = Model {
            a1: exact(&self.a1, 1),
            a2: exact(&self.a2, 2),
            a3: exact(&self.a3, 3),
            a4: exact(&self.a4, 4),
            a6: exact(&self.a6, 6),
        };
    }
}

fn vp(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        INF
    } else {
        val_p(x, p)
    }
}

/// `x / p^k` reduced into `0..p` (requires `p^k | x`).
fn quot_mod_p(x: &BigInt, p: u64, k: u32) -> i128 {
    let pk = BigInt::from(p).pow(k);
    let (q, r) = x.div_rem(&pk);
    assert!(r.is_zero());
    q.mod_floor(&BigInt::from(p)).to_i128().unwrap()
}

fn inv_mod_i128(a: i128, m: i128) -> i128 {
    let (g, x, _) = arith::ext_gcd((a.rem_euclid(m)) as i64, m as i64);
    assert_eq!(g, 1);
    (x as i128).rem_euclid(m)
}

/// Root structure of a monic cubic `T³ + c2T² + c1T + c0` over `F_p`.
enum Cubic {
    Separable { nroots: u32 },
    Double { theta: i128 },
    Triple { theta: i128 },
}

fn cubic_roots(c2: i128, c1: i128, c0: i128, p: i128) -> Cubic {
    let mut nroots = 0;
    let mut double = None;
    for t in 0..p {
        if (((t + c2) * t % p + c1) * t % p + c0).rem_euclid(p) == 0 {
            nroots += 1;
            // synthetic division by (T - t), then test the quotient at t
            let q1 = (c2 + t).rem_euclid(p);
            let q0 = (c1 + t * q1).rem_euclid(p);
            if ((t + q1) * t % p + q0).rem_euclid(p) == 0 {
                if (2 * t + q1).rem_euclid(p) == 0 {
                    return Cubic::Triple { theta: t };
                }
                double = Some(t);
            }
        }
    }
    match double {
        Some(theta) => Cubic::Double { theta },
        None => Cubic::Separable { nroots },
    }
}

/// Monic quadratic `Y² + bY + c` over `F_p`.
struct Quad {
    separable: bool,
    has_root: bool,
    /// the double root when inseparable
    double_root: i128,
}

fn monic_quad(b: i128, c: i128, p: i128) -> Quad {
    if p == 2 {
        let (b, c) = (b.rem_euclid(2), c.rem_euclid(2));
        Quad {
            separable: b == 1,
            has_root: c == 0, // both G(0) and G(1) reduce to c when b is odd
            double_root: c,   // Y² + c = (Y + c)² over F_2
        }
    } else {
        let disc = (b * b - 4 * c).rem_euclid(p);
        Quad {
            separable: disc != 0,
            has_root: disc != 0 && arith::kronecker(disc as i64, p as i64) == 1,
            double_root: (-b).rem_euclid(p) * inv_mod_i128(2, p) % p,
        }
    }
}

/// General quadratic `aX² + bX + c` over `F_p` with `a ≠ 0`.
fn general_quad(a: i128, b: i128, c: i128, p: i128) -> Quad {
    if p == 2 {
        let (a, b, c) = (a.rem_euclid(2), b.rem_euclid(2), c.rem_euclid(2));
        assert_eq!(a, 1);
        Quad {
            separable: b == 1,
            has_root: c == 0 || (a + b + c) % 2 == 0,
            double_root: c, // X² + c over F_2
        }
    } else {
        let disc = (b * b - 4 * a * c).rem_euclid(p);
        Quad {
            separable: disc != 0,
            has_root: disc != 0 && arith::kronecker(disc as i64, p as i64) == 1,
            double_root: (-b).rem_euclid(p) * inv_mod_i128((2 * a).rem_euclid(p), p) % p,
        }
    }
}

/// Move the unique singular point of the reduction mod `p` to the origin.
fn move_singular_point(m: &mut Model, p: u64) {
    let pi = p as i128;
    let c = |x: &BigInt| -> i128 { x.mod_floor(&BigInt::from(p)).to_i128().unwrap() };
    let (a1, a2, a3, a4, a6) = (c(&m.a1), c(&m.a2), c(&m.a3), c(&m.a4), c(&m.a6));
    let f = |x: i128, y: i128| -> i128 {
        (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6).rem_euclid(pi)
    };
    let fx = |x: i128, y: i128| -> i128 { (a1 * y - 3 * x * x - 2 * a2 * x - a4).rem_euclid(pi) };
    let fy = |x: i128, y: i128| -> i128 { (2 * y + a1 * x + a3).rem_euclid(pi) };

    let mut found = None;
    if p == 2 {
        'outer: for x in 0..2 {
            for y in 0..2 {
                if f(x, y) == 0 && fx(x, y) == 0 && fy(x, y) == 0 {
                    found = Some((x, y));
                    break 'outer;
                }
            }
        }
    } else {
        let inv2 = inv_mod_i128(2, pi);
        for x in 0..pi {
            let y = ((-(a1 * x + a3)).rem_euclid(pi) * inv2) % pi;
            if f(x, y) == 0 && fx(x, y) == 0 {
                found = Some((x, y));
                break;
            }
        }
    }
    let (x0, y0) = found.expect("reduction mod p of a curve with p | disc has a singular point");
    m.shift(&BigInt::from(x0), &BigInt::zero(), &BigInt::from(y0));
}

/// Arrange `p | a1, a2`, `p² | a3, a4`, `p³ | a6` (possible in the additive,
/// non-II/III/IV cases) without moving the singular point off the origin.
fn normalize_additive(m: &mut Model, p: u64) {
    let normal = |m: &Model| -> bool {
        vp(&m.a1, p) >= 1
            && vp(&m.a2, p) >= 1
            && vp(&m.a3, p) >= 2
            && vp(&m.a4, p) >= 2
            && vp(&m.a6, p) >= 3
    };
    if p == 2 {
        for r in [0i64, 2, 4, 6] {
            for s in [0i64, 1] {
                for t in [0i64, 2, 4, 6] {
                    let mut cand = Model {
                        a1: m.a1.clone(),
                        a2: m.a2.clone(),
                        a3: m.a3.clone(),
                        a4: m.a4.clone(),
                        a6: m.a6.clone(),
                    };
                    cand.shift(&BigInt::from(r), &BigInt::from(s), &BigInt::from(t));
                    if normal(&cand) {
                        *m = cand;
                        return;
                    }
                }
            }
        }
        unreachable!("additive model at 2 always normalizes within the searched window");
    } else {
        let pi = p as i128;
        let c = |x: &BigInt, modulus: i128| -> i128 {
            x.mod_floor(&BigInt::from(modulus)).to_i128().unwrap()
        };
        let s = (-c(&m.a1, pi)).rem_euclid(pi) * inv_mod_i128(2, pi) % pi;
        m.shift(&BigInt::zero(), &BigInt::from(s), &BigInt::zero());
        let p2 = pi * pi;
        let t = (-c(&m.a3, p2)).rem_euclid(p2) * inv_mod_i128(2, p2) % p2;
        m.shift(&BigInt::zero(), &BigInt::zero(), &BigInt::from(t));
        debug_assert!(normal(m), "odd-p normalization must land all valuations");
    }
}

/// Local data at the prime `p`. The input model need not be minimal at `p`;
/// the algorithm rescales as needed and reports data of a model minimal
/// at `p`.
pub fn tate_local(e: &super::EllipticCurve, p: u64) -> LocalData {
    let a = e.a_invariants();
    let mut m = Model {
        a1: a[0].clone(),
        a2: a[1].clone(),
        a3: a[2].clone(),
        a4: a[3].clone(),
        a6: a[4].clone(),
    };
    loop {
        if let Some(data) = tate_pass(&mut m, p) {
            if p >= 5 {
                debug_assert!(
                    data.ord_conductor <= 2,
                    "no wild ramification away from 2 and 3"
                );
            }
            debug_assert!(data.tamagawa >= 1);
            // component-count consistency of the conductor exponent
            if data.ord_disc > 0 {
                debug_assert_eq!(
                    data.ord_conductor,
                    data.ord_disc + 1 - data.kodaira.components()
                );
            }
            return data;
        }
    }
}

/// One pass of the step chain; `None` means the model was rescaled (it was
/// non-minimal at `p`) and the caller should run another pass.
fn tate_pass(m: &mut Model, p: u64) -> Option<LocalData> {
    let pi = p as i128;
    let done = |kodaira: Kodaira, n: u32, f: u32, c: u64, split: Option<bool>| {
        Some(LocalData {
            p,
            kodaira,
            ord_disc: n,
            tamagawa: c,
            ord_conductor: f,
            split,
        })
    };

    let n = vp(&m.disc(), p);
    if n == 0 {
        return done(Kodaira::I(0), 0, 0, 1, None);
    }
    move_singular_point(m, p);

    // multiplicative case: the tangent cone at the node splits or not
    if vp(&m.b2(), p) == 0 {
        let split = if p == 2 {
            m.a2.is_even()
        } else {
            let b2 = m.b2().mod_floor(&BigInt::from(p)).to_i64().unwrap();
            arith::kronecker(b2, p as i64) == 1
        };
        let c = if split {
            n as u64
        } else if n % 2 == 0 {
            2
        } else {
            1
        };
        return done(Kodaira::I(n), n, 1, c, Some(split));
    }

    if vp(&m.a6, p) < 2 {
        return done(Kodaira::II, n, n, 1, None);
    }
    if vp(&m.b8(), p) < 3 {
        return done(Kodaira::III, n, n - 1, 2, None);
    }
    if vp(&m.b6(), p) < 3 {
        // type IV: component count depends on Y² + (a3/p)Y - a6/p²
        let g = monic_quad(quot_mod_p(&m.a3, p, 1), -quot_mod_p(&m.a6, p, 2), pi);
        debug_assert!(g.separable);
        let c = if g.has_root { 3 } else { 1 };
        return done(Kodaira::IV, n, n - 2, c, None);
    }

    normalize_additive(m, p);
    let cubic = cubic_roots(
        quot_mod_p(&m.a2, p, 1),
        quot_mod_p(&m.a4, p, 2),
        quot_mod_p(&m.a6, p, 3),
        pi,
    );
    match cubic {
        Cubic::Separable { nroots } => {
            return done(Kodaira::IStar(0), n, n - 4, 1 + nroots as u64, None);
        }
        Cubic::Double { theta } => {
            m.shift(&(BigInt::from(theta) * p), &BigInt::zero(), &BigInt::zero());
            // now ord(a2) = 1, ord(a4) ≥ 3, ord(a6) ≥ 4; walk the I_ν* chain
            let mut q = 2u32;
            loop {
                let g = monic_quad(quot_mod_p(&m.a3, p, q), -quot_mod_p(&m.a6, p, 2 * q), pi);
                if g.separable {
                    let nu = 2 * q - 3;
                    let c = if g.has_root { 4 } else { 2 };
                    return done(Kodaira::IStar(nu), n, n - 4 - nu, c, None);
                }
                let t = BigInt::from(g.double_root) * BigInt::from(p).pow(q);
                m.shift(&BigInt::zero(), &BigInt::zero(), &t);

                let h = general_quad(
                    quot_mod_p(&m.a2, p, 1),
                    quot_mod_p(&m.a4, p, q + 1),
                    quot_mod_p(&m.a6, p, 2 * q + 1),
                    pi,
                );
                if h.separable {
                    let nu = 2 * q - 2;
                    let c = if h.has_root { 4 } else { 2 };
                    return done(Kodaira::IStar(nu), n, n - 4 - nu, c, None);
                }
                let r = BigInt::from(h.double_root) * BigInt::from(p).pow(q);
                m.shift(&r, &BigInt::zero(), &BigInt::zero());
                q += 1;
                assert!(q <= n + 2, "I_nu* chain exceeded the discriminant bound");
            }
        }
        Cubic::Triple { theta } => {
            m.shift(&(BigInt::from(theta) * p), &BigInt::zero(), &BigInt::zero());
            // now ord(a2) ≥ 2, ord(a4) ≥ 3, ord(a6) ≥ 4
            let g = monic_quad(quot_mod_p(&m.a3, p, 2), -quot_mod_p(&m.a6, p, 4), pi);
            if g.separable {
                let c = if g.has_root { 3 } else { 1 };
                return done(Kodaira::IVStar, n, n - 6, c, None);
            }
            let t = BigInt::from(g.double_root) * BigInt::from(p).pow(2u32);
            m.shift(&BigInt::zero(), &BigInt::zero(), &t);

            if vp(&m.a4, p) < 4 {
                return done(Kodaira::IIIStar, n, n - 7, 2, None);
            }
            if vp(&m.a6, p) < 6 {
                return done(Kodaira::IIStar, n, n - 8, 1, None);
            }
            // non-minimal at p: rescale and rerun
            m.descale(p);
            None
        }
    }
}
