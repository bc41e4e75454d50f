//! Real and imaginary periods via AGM on exactly isolated cubic roots,
//! numeric special values of the L-series, and the analytic sha quotient.

use super::{tate, torsion, EllipticCurve};
use crate::bigfloat::{BigFloat, Ctx};
use crate::error::{Error, Result};
use crate::ratlattice::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Periods of a minimal model: `omega_plus` is the least positive real
/// period, `omega_minus_im` the imaginary part of the pure-imaginary
/// period (normalized so twisting satisfies `Ω⁺(E_{-D})·√D = ω⁻(E)`),
/// `c_infinity` the number of real components, and
/// `omega_total = c_infinity · omega_plus`.
#[derive(Clone, Debug)]
pub struct RealPeriodData {
    pub omega_plus: BigFloat,
    pub omega_minus_im: BigFloat,
    pub c_infinity: u32,
    pub omega_total: BigFloat,
}

/// Sign of `g(x) = 4x³ + b2·x² + 2b4·x + b6` at the dyadic point
/// `num / 2^k`, computed exactly in integers.
fn sign_g(b2: &BigInt, b4: &BigInt, b6: &BigInt, num: &BigInt, k: u32) -> i32 {
    let v = ((num * num * num) << 2u32)
        + ((b2 * num * num) << k)
        + (((b4 << 1u32) * num) << (2 * k))
        + (b6.clone() << (3 * k));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Bisect a strict sign-change bracket `[lo, hi]` at scale `2^-k` down to
/// width `2^-(k+steps)`; returns the midpoint as an exact dyadic.
fn bisect_root(
    b2: &BigInt,
    b4: &BigInt,
    b6: &BigInt,
    mut lo: BigInt,
    mut hi: BigInt,
    mut k: u32,
    steps: u32,
) -> (BigInt, u32) {
    let slo = sign_g(b2, b4, b6, &lo, k);
    debug_assert!(slo != 0 && sign_g(b2, b4, b6, &hi, k) == -slo);
    for _ in 0..steps {
        lo <<= 1;
        hi <<= 1;
        k += 1;
        let mid = (&lo + &hi) >> 1;
        match sign_g(b2, b4, b6, &mid, k) {
            0 => return (mid, k), // landed exactly on a dyadic root
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
    ((lo + hi) >> 1, k)
}

fn dyadic_to_float(ctx: &Ctx, num: BigInt, k: u32) -> BigFloat {
    ctx.from_rat(&Rat::new(num, BigInt::from(1) << k))
}

/// Outer bound `M` with `g(-M) < 0 < g(M)` strictly.
fn outer_bound(b2: &BigInt, b4: &BigInt, b6: &BigInt) -> BigInt {
    let mut m = BigInt::from(2) + b2.abs().max((b4 << 1u32).abs()).max(b6.abs());
    for _ in 0..64 {
        if sign_g(b2, b4, b6, &(-m.clone()), 0) < 0 && sign_g(b2, b4, b6, &m, 0) > 0 {
            return m;
        }
        m *= 2;
    }
    unreachable!("Cauchy bound brackets all real roots");
}

/// Real and imaginary periods of the minimal model of `e`, to roughly
/// `bits` of precision.
pub fn real_periods(e: &EllipticCurve, bits: u64) -> Result<RealPeriodData> {
    let m = e.minimal_model();
    let disc = m.disc();
    let (b2, b4, b6) = (m.b2(), m.b4(), m.b6());
    let ctx = Ctx::new(bits + 32);
    let steps = (bits + 24) as u32;
    let bound = outer_bound(&b2, &b4, &b6);
    let pi = ctx.pi();

    let (omega_plus, omega_minus_im, c_infinity) = if disc.is_positive() {
        // three real roots: split the line at the critical points of g
        let c4 = m.c4();
        assert!(c4.is_positive(), "three real roots force c4 > 0");
        let mut split = None;
        let mut k = 16u32;
        while k <= 1 << 13 {
            let sq = (c4.clone() << (2 * k)).sqrt();
            let xm = (-(&b2 << k) - &sq).div_floor(&BigInt::from(12));
            let xp = (-(&b2 << k) + &sq).div_floor(&BigInt::from(12));
            if sign_g(&b2, &b4, &b6, &xm, k) > 0 && sign_g(&b2, &b4, &b6, &xp, k) < 0 {
                split = Some((xm, xp, k));
                break;
            }
            k *= 2;
        }
        let (xm, xp, k) = split.ok_or_else(|| {
            Error::PrecisionLoss("could not separate the three real roots".into())
        })?;
        let lo = -(&bound << k);
        let hi = bound << k;
        let (n3, k3) = bisect_root(&b2, &b4, &b6, lo, xm.clone(), k, steps);
        let (n2, k2) = bisect_root(&b2, &b4, &b6, xm, xp.clone(), k, steps);
        let (n1, k1) = bisect_root(&b2, &b4, &b6, xp, hi, k, steps);
        let e3 = dyadic_to_float(&ctx, n3, k3);
        let e2 = dyadic_to_float(&ctx, n2, k2);
        let e1 = dyadic_to_float(&ctx, n1, k1);

        let s13 = ctx.sqrt(&ctx.sub(&e1, &e3));
        let s12 = ctx.sqrt(&ctx.sub(&e1, &e2));
        let s23 = ctx.sqrt(&ctx.sub(&e2, &e3));
        let om = ctx.div(&pi, &ctx.agm(&s13, &s12));
        let y = ctx.div(&pi, &ctx.agm(&s13, &s23));
        (om, y, 2)
    } else {
        // one real root e1 and a complex pair β ± γi
        let (n1, k1) = bisect_root(&b2, &b4, &b6, -bound.clone(), bound, 0, steps);
        let e1 = dyadic_to_float(&ctx, n1, k1);
        let quarter_b2 = ctx.from_rat(&Rat::new(b2.clone(), BigInt::from(4)));
        let half_b4 = ctx.from_rat(&Rat::new(b4.clone(), BigInt::from(2)));
        let p = ctx.add(&e1, &quarter_b2);
        let q = ctx.add(&half_b4, &ctx.mul(&e1, &p));
        let beta = ctx.half(&p).neg();
        let gamma2 = ctx.sub(&q, &ctx.mul(&beta, &beta));
        assert!(
            !gamma2.is_negative(),
            "negative discriminant forces a complex pair (e1={}, gamma2={})",
            e1.to_f64(),
            gamma2.to_f64()
        );
        let delta = ctx.sub(&e1, &beta);
        let r = ctx.sqrt(&ctx.add(&ctx.mul(&delta, &delta), &gamma2));
        let two_sqrt_r = ctx.mul_i64(&ctx.sqrt(&r), 2);
        let two_r = ctx.mul_i64(&r, 2);
        let two_delta = ctx.mul_i64(&delta, 2);
        let two_pi = ctx.mul_i64(&pi, 2);
        let om = ctx.div(
            &two_pi,
            &ctx.agm(&two_sqrt_r, &ctx.sqrt(&ctx.add(&two_r, &two_delta))),
        );
        let y = ctx.div(
            &two_pi,
            &ctx.agm(&two_sqrt_r, &ctx.sqrt(&ctx.sub(&two_r, &two_delta))),
        );
        (om, y, 1)
    };

    assert!(!omega_plus.is_negative() && !omega_plus.is_zero());
    assert!(!omega_minus_im.is_negative() && !omega_minus_im.is_zero());
    let omega_total = ctx.mul_i64(&omega_plus, c_infinity as i64);
    Ok(RealPeriodData {
        omega_plus,
        omega_minus_im,
        c_infinity,
        omega_total,
    })
}

/// L-series coefficients `a_1 … a_M` of the minimal model.
fn series_coefficients(m: &EllipticCurve, len: usize) -> Vec<i64> {
    let disc = m.disc();
    // smallest-prime-factor sieve
    let mut spf = vec![0u32; len + 1];
    let mut p = 2usize;
    while p <= len {
        if spf[p] == 0 {
            let mut q = p;
            while q <= len {
                if spf[q] == 0 {
                    spf[q] = p as u32;
                }
                q += p;
            }
        }
        p += 1;
    }

    let mut a = vec![0i64; len + 1];
    if len >= 1 {
        a[1] = 1;
    }
    for n in 2..=len {
        let p = spf[n] as usize;
        let mut pk = p;
        let mut mrest = n / p;
        while mrest % p == 0 {
            pk *= p;
            mrest /= p;
        }
        if mrest > 1 {
            a[n] = a[pk] * a[mrest];
            continue;
        }
        // n = p^k: fill from the prime
        if pk == p {
            let good = super::val_p(&disc, p as u64) == 0;
            a[n] = if good {
                p as i64 + 1 - m.count_points_fp(p as u64) as i64
            } else {
                tate::tate_local(m, p as u64).bad_ap()
            };
        } else {
            let good = super::val_p(&disc, p as u64) == 0;
            let ap = a[p];
            a[n] = ap * a[n / p] - if good { (p as i64) * a[n / p / p] } else { 0 };
        }
    }
    a
}

/// `Σ_{n ≤ len} (a_n/n)·exp(-2πn·t/√N)` for rational `t = tn/td`.
fn theta_sum(ctx: &Ctx, a: &[i64], sqrt_n: &BigFloat, tn: i64, td: i64) -> BigFloat {
    let two_pi = ctx.mul_i64(&ctx.pi(), 2);
    let x = ctx.div(&ctx.mul_i64(&two_pi, tn), &ctx.mul_i64(sqrt_n, td));
    let q1 = ctx.exp_neg(&x);
    let mut qpow = ctx.one();
    let mut sum = ctx.zero();
    for (n, &an) in a.iter().enumerate().skip(1) {
        qpow = ctx.mul(&qpow, &q1);
        if an != 0 {
            let term = ctx.div_u64(&ctx.mul_i64(&qpow, an), n as u64);
            sum = ctx.add(&sum, &term);
        }
    }
    sum
}

/// `L(E, 1)` to within `target_accuracy`, together with the sign of the
/// functional equation (+1 or -1; -1 forces the value 0 exactly).
pub fn numeric_l1_with_sign(e: &EllipticCurve, target_accuracy: f64) -> Result<(BigFloat, i8)> {
    assert!(target_accuracy > 0.0 && target_accuracy < 0.1);
    let m = e.minimal_model();
    let n_big = m.conductor();
    let n = n_big.to_u64().ok_or_else(|| {
        Error::PrecisionLoss(format!("conductor {n_big} too large for the series bound"))
    })? as f64;

    // tail: |a_k/k| ≤ d(k)/√k ≤ 2, so the tail beyond M is at most
    // 2·e^{-c(M+1)}/(1-e^{-c}) with c = 2π·t_min/√N and t_min = 5/6
    let c = 2.0 * std::f64::consts::PI * (5.0 / 6.0) / n.sqrt();
    let tail_target = target_accuracy / 8.0;
    let len = ((2.0 / ((1.0 - (-c).exp()) * tail_target)).ln() / c).ceil() as usize;
    let len = len.max(20);

    let bits = ((-target_accuracy.log2()).ceil() as u64 + 48).max(96);
    let ctx = Ctx::new(bits);
    let a = series_coefficients(&m, len);
    let sqrt_n = ctx.sqrt(&ctx.from_bigint(&n_big));

    let s1 = theta_sum(&ctx, &a, &sqrt_n, 1, 1);
    let sp = theta_sum(&ctx, &a, &sqrt_n, 6, 5);
    let sm = theta_sum(&ctx, &a, &sqrt_n, 5, 6);

    // for sign w: S(t) + w·S(1/t) is independent of t
    let r_plus = ctx
        .sub(&ctx.add(&sp, &sm), &ctx.mul_i64(&s1, 2))
        .abs()
        .to_f64()
        .abs();
    let r_minus = ctx.sub(&sp, &sm).abs().to_f64().abs();
    let tol = target_accuracy;
    if r_plus.min(r_minus) > tol {
        return Err(Error::PrecisionLoss(format!(
            "functional-equation sign undetermined (residuals {r_plus:.3e}, {r_minus:.3e})"
        )));
    }
    if r_plus <= r_minus {
        Ok((ctx.mul_i64(&s1, 2), 1))
    } else {
        Ok((ctx.zero(), -1))
    }
}

/// `L(E, 1)` to within `target_accuracy`.
pub fn numeric_l1(e: &EllipticCurve, target_accuracy: f64) -> Result<BigFloat> {
    numeric_l1_with_sign(e, target_accuracy).map(|(l, _)| l)
}

/// Analytic sha: `(L/Ω_total)·torsion²/∏c_p`, rounded to the nearest
/// rational with denominator dividing `4·∏c_p·torsion²` and verified to
/// sit within 10⁻³ of it. Errors with `RankPositive` when `L(E,1) ≈ 0`.
pub fn sha_an(e: &EllipticCurve) -> Result<Rat> {
    let m = e.minimal_model();
    let periods = real_periods(&m, 128)?;
    let torsion = torsion::torsion_order(&m) as i64;
    let cp: u64 = m
        .bad_primes()
        .iter()
        .map(|&p| tate::tate_local(&m, p).tamagawa)
        .product();
    let den = BigInt::from(4 * cp * (torsion * torsion) as u64);

    let omega = periods.omega_total.to_f64();
    let den_f = 4.0 * (cp as f64) * (torsion as f64).powi(2);
    let target =
        (1e-4 * omega * (cp as f64) / (den_f * (torsion as f64).powi(2))).clamp(1e-14, 1e-8);
    let (l, _sign) = numeric_l1_with_sign(&m, target)?;

    let ctx = Ctx::new(160);
    if l.abs().to_f64() <= 1e-6 * omega {
        return Err(Error::RankPositive);
    }
    let x = ctx.div(
        &ctx.mul_i64(&l, torsion * torsion),
        &ctx.mul_i64(&periods.omega_total, cp as i64),
    );
    let v = ctx.mul(&x, &ctx.from_bigint(&den));
    let (num, residual) = ctx.round_nearest(&v);
    let resid = residual.to_f64();
    if resid >= 1e-3 {
        return Err(Error::RoundingAmbiguous {
            value: format!("{:.9}", v.to_f64()),
            denominator: den.to_string(),
            residual: format!("{resid:.3e}"),
        });
    }
    if num.is_zero() || num.is_negative() {
        return Err(Error::RankPositive);
    }
    Ok(Rat::new(num, den))
}
