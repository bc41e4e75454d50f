//! Configurable-precision binary floating point on top of `BigInt`
//! mantissas: just enough real analysis (AGM, π, ln 2, e^{-x}, square
//! roots) for period lattices and L-value series, with explicit control of
//! working precision. Values are `mant · 2^exp` and every context
//! operation rounds the mantissa back to the context's bit size.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::unsync::OnceCell;
use std::cmp::Ordering;

/// A binary float `mant · 2^exp`; zero is represented by `mant = 0`.
#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Position of the leading bit: the value's magnitude lies in
    /// `[2^(top-1), 2^top)`. Meaningless for zero.
    fn top_exp(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Exact conversion (every binary float is a dyadic rational).
    pub fn to_rat(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Lossy conversion for diagnostics and coarse tolerance checks.
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let m = self.mant.to_f64().unwrap_or(if self.mant.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let e1 = (self.exp / 2).clamp(-1000, 1000) as i32;
        let e2 = (self.exp - e1 as i64).clamp(-1000, 1000) as i32;
        m * 2f64.powi(e1) * 2f64.powi(e2)
    }

    /// Exact total order.
    pub fn cmp(&self, other: &BigFloat) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => return Ordering::Equal,
            (a, b) if a != b => {
                return if self.mant < other.mant {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            _ => {}
        }
        // same nonzero sign: compare aligned mantissas
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }

    /// Largest integer not exceeding the value.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            // arithmetic right shift floors for negative values too
            &self.mant >> (-self.exp) as usize
        }
    }
}

/// Arithmetic context carrying the working precision in bits and lazily
/// computed constants at that precision.
pub struct Ctx {
    bits: u64,
    pi_cache: OnceCell<BigFloat>,
    ln2_cache: OnceCell<BigFloat>,
}

impl Ctx {
    pub fn new(bits: u64) -> Ctx {
        Ctx {
            bits: bits.max(64),
            pi_cache: OnceCell::new(),
            ln2_cache: OnceCell::new(),
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    fn normalize(&self, mant: BigInt, exp: i64) -> BigFloat {
        if mant.is_zero() {
            return BigFloat { mant, exp: 0 };
        }
        let nbits = mant.bits();
        if nbits <= self.bits {
            return BigFloat { mant, exp };
        }
        let drop = (nbits - self.bits) as usize;
        let neg = mant.is_negative();
        let mag = mant.abs();
        let half = BigInt::one() << (drop - 1);
        let rem = &mag & ((BigInt::one() << drop) - 1u32);
        let mut q = mag >> drop;
        if rem >= half {
            q += 1u32;
        }
        BigFloat {
            mant: if neg { -q } else { q },
            exp: exp + drop as i64,
        }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one(&self) -> BigFloat {
        BigFloat {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_i64(&self, n: i64) -> BigFloat {
        BigFloat {
            mant: BigInt::from(n),
            exp: 0,
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> BigFloat {
        self.normalize(n.clone(), 0)
    }

    pub fn from_rat(&self, r: &BigRational) -> BigFloat {
        self.div(&self.from_bigint(r.numer()), &self.from_bigint(r.denom()))
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        if a.is_zero() {
            return self.normalize(b.mant.clone(), b.exp);
        }
        if b.is_zero() {
            return self.normalize(a.mant.clone(), a.exp);
        }
        // when the magnitudes are too far apart to interact, keep the larger
        let (ta, tb) = (a.top_exp(), b.top_exp());
        let margin = self.bits as i64 + 8;
        if ta > tb + margin {
            return self.normalize(a.mant.clone(), a.exp);
        }
        if tb > ta + margin {
            return self.normalize(b.mant.clone(), b.exp);
        }
        let e = a.exp.min(b.exp);
        let ma = &a.mant << (a.exp - e) as usize;
        let mb = &b.mant << (b.exp - e) as usize;
        self.normalize(ma + mb, e)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.add(a, &b.neg())
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.normalize(&a.mant * &b.mant, a.exp + b.exp)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return self.zero();
        }
        let s = (self.bits + 2 + b.mant.bits()) as usize;
        let q = (&a.mant << s) / &b.mant;
        self.normalize(q, a.exp - b.exp - s as i64)
    }

    pub fn mul_i64(&self, a: &BigFloat, n: i64) -> BigFloat {
        self.normalize(&a.mant * BigInt::from(n), a.exp)
    }

    pub fn div_u64(&self, a: &BigFloat, n: u64) -> BigFloat {
        assert!(n != 0);
        self.div(a, &self.from_i64(n as i64))
    }

    /// Halve exactly (exponent shift, no rounding).
    pub fn half(&self, a: &BigFloat) -> BigFloat {
        if a.is_zero() {
            return self.zero();
        }
        BigFloat {
            mant: a.mant.clone(),
            exp: a.exp - 1,
        }
    }

    /// Square root of a nonnegative value, floor-rounded at working precision.
    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        assert!(!a.is_negative(), "square root of a negative value");
        if a.is_zero() {
            return self.zero();
        }
        let target = 2 * self.bits + 4;
        let mut s = target.saturating_sub(a.mant.bits()) as i64;
        if (a.exp - s) % 2 != 0 {
            s += 1;
        }
        let m = &a.mant << s as usize;
        self.normalize(m.sqrt(), (a.exp - s) / 2)
    }

    /// Arithmetic–geometric mean of two positive values.
    pub fn agm(&self, a0: &BigFloat, b0: &BigFloat) -> BigFloat {
        assert!(!a0.is_zero() && !a0.is_negative());
        assert!(!b0.is_zero() && !b0.is_negative());
        let mut a = a0.clone();
        let mut b = b0.clone();
        for _ in 0..300 {
            let diff = self.sub(&a, &b);
            if diff.is_zero() || diff.top_exp() <= a.top_exp() - (self.bits as i64 - 4) {
                return self.half(&self.add(&a, &b));
            }
            let an = self.half(&self.add(&a, &b));
            let bn = self.sqrt(&self.mul(&a, &b));
            a = an;
            b = bn;
        }
        unreachable!("AGM failed to converge — quadratic convergence bound exceeded");
    }

    /// π by the Brent–Salamin (Gauss–Legendre) iteration.
    pub fn pi(&self) -> BigFloat {
        self.pi_cache
            .get_or_init(|| {
                let mut a = self.one();
                let mut b =
                    self.sqrt(&self.from_rat(&BigRational::new(BigInt::one(), BigInt::from(2))));
                let mut t = self.from_rat(&BigRational::new(BigInt::one(), BigInt::from(4)));
                let mut p = self.one();
                let iters = (64 - self.bits.leading_zeros() as u64) + 3;
                for _ in 0..iters {
                    let an = self.half(&self.add(&a, &b));
                    let bn = self.sqrt(&self.mul(&a, &b));
                    let d = self.sub(&a, &an);
                    t = self.sub(&t, &self.mul(&p, &self.mul(&d, &d)));
                    a = an;
                    b = bn;
                    p = self.mul_i64(&p, 2);
                }
                let s = self.add(&a, &b);
                self.div(&self.mul(&s, &s), &self.mul_i64(&t, 4))
            })
            .clone()
    }

    /// ln 2 = Σ_{k≥1} 1/(k·2^k), summed exactly in scaled integers.
    pub fn ln2(&self) -> BigFloat {
        self.ln2_cache
            .get_or_init(|| {
                let p = (self.bits + 16) as usize;
                let top = BigInt::one() << p;
                let mut acc = BigInt::zero();
                for k in 1..=(p as u64) {
                    acc += &top / (BigInt::from(k) << k as usize);
                }
                self.normalize(acc, -(p as i64))
            })
            .clone()
    }

    /// e^{-x} for x ≥ 0, by range reduction x = k·ln2 + r and a Taylor sum.
    pub fn exp_neg(&self, x: &BigFloat) -> BigFloat {
        assert!(!x.is_negative(), "exp_neg expects a nonnegative argument");
        if x.is_zero() {
            return self.one();
        }
        let ln2 = self.ln2();
        let mut k = self.div(x, &ln2).floor_bigint();
        if k.is_negative() {
            k = BigInt::zero();
        }
        let mut r = self.sub(x, &self.mul(&ln2, &self.from_bigint(&k)));
        while r.is_negative() {
            k -= 1u32;
            r = self.add(&r, &ln2);
        }
        while r.cmp(&ln2) != Ordering::Less {
            k += 1u32;
            r = self.sub(&r, &ln2);
        }
        // e^{-r} = Σ (-r)^j / j!, r ∈ [0, ln 2)
        let mut sum = self.one();
        let mut term = self.one();
        let cutoff = -(self.bits as i64 + 8);
        for j in 1..10_000u64 {
            term = self.div_u64(&self.mul(&term, &r), j);
            if term.is_zero() || term.top_exp() < cutoff {
                break;
            }
            if j % 2 == 1 {
                sum = self.sub(&sum, &term);
            } else {
                sum = self.add(&sum, &term);
            }
        }
        let shift = k.to_i64().expect("exponent shift out of range");
        BigFloat {
            mant: sum.mant,
            exp: sum.exp - shift,
        }
    }

    /// Nearest integer and the absolute rounding residual (ties round up).
    pub fn round_nearest(&self, x: &BigFloat) -> (BigInt, BigFloat) {
        // exact floor(x + 1/2): align without rounding, then shift back
        let e = x.exp.min(-1);
        let shifted = (&x.mant << (x.exp - e) as usize) + (BigInt::one() << (-1 - e) as usize);
        let n = shifted >> (-e) as usize;
        let residual = self.sub(x, &self.from_bigint(&n));
        (n, residual.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Parse a decimal string (optionally with `e±k` exponent) exactly.
    fn rat_from_decimal(s: &str) -> BigRational {
        let (mant, exp10) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i64>().unwrap()),
            None => (s, 0),
        };
        let neg = mant.starts_with('-');
        let mant = mant.trim_start_matches(['-', '+']);
        let (int_part, frac_part) = match mant.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant, ""),
        };
        let digits: BigInt = format!("{int_part}{frac_part}").parse().unwrap();
        let scale = exp10 - frac_part.len() as i64;
        let ten = BigInt::from(10);
        let mut r = BigRational::from(digits);
        if scale >= 0 {
            r *= BigRational::from(ten.pow(scale as u32));
        } else {
            r /= BigRational::from(ten.pow((-scale) as u32));
        }
        if neg {
            -r
        } else {
            r
        }
    }

    fn assert_close(x: &BigFloat, reference: &str, tol_exp10: i64) {
        let r = rat_from_decimal(reference);
        let diff = (x.to_rat() - &r).abs();
        let tol = rat_from_decimal(&format!("1e{tol_exp10}"));
        assert!(
            diff < tol,
            "value {} differs from {} by ~1e{}",
            x.to_f64(),
            reference,
            diff.to_f64().map(|d| d.log10() as i64).unwrap_or(0)
        );
    }

    #[test]
    fn sqrt_reference_digits() {
        let ctx = Ctx::new(256);
        let s2 = ctx.sqrt(&ctx.from_i64(2));
        assert_close(
            &s2,
            "1.41421356237309504880168872420969807856967187537694",
            -45,
        );
        let s = ctx.sqrt(&ctx.from_i64(144));
        assert_close(&s, "12", -45);
    }

    #[test]
    fn pi_reference_digits() {
        let ctx = Ctx::new(256);
        assert_close(
            &ctx.pi(),
            "3.14159265358979323846264338327950288419716939937510582097",
            -45,
        );
    }

    #[test]
    fn ln2_reference_digits() {
        let ctx = Ctx::new(256);
        assert_close(
            &ctx.ln2(),
            "0.69314718055994530941723212145817656807550013436026",
            -45,
        );
    }

    #[test]
    fn exp_neg_reference_values() {
        let ctx = Ctx::new(256);
        assert_close(&ctx.exp_neg(&ctx.zero()), "1", -45);
        assert_close(
            &ctx.exp_neg(&ctx.one()),
            "0.36787944117144232159552377016146086744581113103177",
            -45,
        );
        assert_close(
            &ctx.exp_neg(&ctx.from_i64(10)),
            "4.5399929762484851535591515560550610237918088866565e-5",
            -45,
        );
        assert_close(
            &ctx.exp_neg(&ctx.from_i64(100)),
            "3.7200759760208359629596958038631183373588922923768e-44",
            -60,
        );
    }

    #[test]
    fn lemniscate_constant_from_agm() {
        // π / agm(1, √2) is the lemniscate constant
        let ctx = Ctx::new(256);
        let agm = ctx.agm(&ctx.one(), &ctx.sqrt(&ctx.from_i64(2)));
        let lem = ctx.div(&ctx.pi(), &agm);
        assert_close(
            &lem,
            "2.62205755429211981046483958989111941368275495143162",
            -45,
        );
    }

    #[test]
    fn alignment_keeps_tiny_differences() {
        let ctx = Ctx::new(256);
        let tiny = BigFloat {
            mant: BigInt::one(),
            exp: -200,
        };
        let x = ctx.add(&ctx.one(), &tiny);
        let back = ctx.sub(&x, &ctx.one());
        assert_eq!(back.to_rat(), tiny.to_rat());
    }

    #[test]
    fn rounding_and_floor() {
        let ctx = Ctx::new(128);
        let x = ctx.from_rat(&BigRational::new(BigInt::from(7), BigInt::from(2)));
        let (n, res) = ctx.round_nearest(&x);
        assert_eq!(n, BigInt::from(4));
        assert_close(&res, "0.5", -30);

        let y = ctx.from_rat(&BigRational::new(BigInt::from(-27), BigInt::from(10)));
        let (n, res) = ctx.round_nearest(&y);
        assert_eq!(n, BigInt::from(-3));
        assert_close(&res, "0.3", -30);

        assert_eq!(y.floor_bigint(), BigInt::from(-3));
        assert_eq!(x.floor_bigint(), BigInt::from(3));
    }

    #[test]
    fn comparisons_are_exact() {
        let ctx = Ctx::new(128);
        let a = ctx.from_i64(5);
        let b = ctx.from_rat(&BigRational::new(
            BigInt::from(5000000001i64),
            BigInt::from(10i64).pow(9),
        ));
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert_eq!(b.cmp(&a), Ordering::Greater);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
        assert_eq!(ctx.from_i64(-3).cmp(&ctx.from_i64(2)), Ordering::Less);
        assert_eq!(ctx.zero().cmp(&ctx.zero()), Ordering::Equal);
    }

    #[test]
    fn dyadic_roundtrip_is_exact() {
        let ctx = Ctx::new(128);
        let r = BigRational::new(BigInt::from(-355), BigInt::from(128));
        let x = ctx.from_rat(&r);
        assert_eq!(x.to_rat(), r);
        assert!((x.to_f64() - (-355.0 / 128.0)).abs() < 1e-12);
    }
}
