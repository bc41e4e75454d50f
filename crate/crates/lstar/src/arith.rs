//! Elementary number theory over machine integers: primality, factorization,
//! Kronecker symbols, fundamental discriminants, class numbers of imaginary
//! quadratic orders by reduced-forms enumeration.

use crate::{Error, Result};

/// Deterministic Miller–Rabin for `u64` (witness set valid for all 64-bit n).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `a * b mod n` without overflow.
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `a^e mod n`.
pub fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse mod prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

/// All primes `<= bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

fn pollard_rho(n: u64) -> u64 {
    // n odd, composite, not a prime power on the small side.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Prime factorization of `n >= 1` as sorted `(p, multiplicity)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut found: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            found.push(m);
        } else if m < 37 * 37 {
            unreachable!("small factors already removed");
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    found.sort_unstable();
    let mut i = 0;
    while i < found.len() {
        let p = found[i];
        let mut e = 0;
        while i < found.len() && found[i] == p {
            e += 1;
            i += 1;
        }
        out.push((p, e));
    }
    out.sort_unstable();
    out
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// `true` iff `n` has no square factor.
pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Kronecker symbol `(a|n)`, with the standard extensions to `n <= 0`
/// and even `n`.
pub fn kronecker(mut a: i64, mut n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    // strip twos from n, using (a|2) = (2|a) table
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    let mut k = if v % 2 == 0 {
        1
    } else {
        match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0, // a even: handled above unless n was odd originally
        }
    };
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // now n odd positive; standard Jacobi loop
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                3 | 5 => k = -k,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            k = -k;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// `true` iff `d` is a fundamental discriminant: `d ≡ 1 mod 4` squarefree,
/// or `d = 4m` with `m ≡ 2, 3 mod 4` squarefree; `d != 1`.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        is_squarefree(d.unsigned_abs())
    } else if r == 0 {
        let m = d / 4;
        let rm = m.rem_euclid(4);
        (rm == 2 || rm == 3) && is_squarefree(m.unsigned_abs())
    } else {
        false
    }
}

/// Negative fundamental discriminants `-D` with `3 <= D <= dmax`,
/// returned as the positive `D` in increasing order.
pub fn negative_fundamental_d(dmax: u64) -> Vec<u64> {
    (3..=dmax)
        .filter(|&d| is_fundamental_discriminant(-(d as i64)))
        .collect()
}

/// Class number `h(-D)` and unit index `u(-D) = |O*_{-D} / ±1|` for a
/// fundamental discriminant `-D < 0`.
///
/// `h` is counted by enumerating reduced primitive positive-definite binary
/// quadratic forms `(a, b, c)` of discriminant `b² − 4ac = −D`:
/// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn class_number_unit(d: u64) -> Result<(u64, u64)> {
    if !is_fundamental_discriminant(-(d as i64)) {
        return Err(Error::NotFundamental(-(d as i64)));
    }
    let mut h = 0u64;
    let mut b = if d % 2 == 0 { 0i64 } else { 1i64 };
    while b * b <= d as i64 / 3 {
        let m = (b * b + d as i64) / 4; // = a*c
        let mut a = if b == 0 { 1 } else { b };
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                // forms (a, ±b, c) with |b| <= a <= c
                if b == 0 || a == b || a == c {
                    if gcd_u64(gcd_u64(a as u64, b as u64), c as u64) == 1 {
                        h += 1;
                    }
                } else if gcd_u64(gcd_u64(a as u64, b as u64), c as u64) == 1 {
                    h += 2;
                }
            }
            a += 1;
        }
        b += 2;
    }
    let u = match d {
        3 => 3,
        4 => 2,
        _ => 1,
    };
    Ok((h, u))
}

/// Euler phi.
pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Number of cusps of `X_0(N)`: `Σ_{d | N} φ(gcd(d, N/d))`.
pub fn num_cusps(n: u64) -> u64 {
    divisors(n)
        .iter()
        .map(|&d| euler_phi(gcd_u64(d, n / d)))
        .sum()
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let f = factor(n);
    let mut out = vec![1u64];
    for (p, e) in f {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Genus of `X_0(N)` by the standard index/elliptic-point/cusp formula.
pub fn genus_x0(n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let fac = factor(n);
    // index mu = N * prod (1 + 1/p)
    let mut mu = n;
    for &(p, _) in &fac {
        mu = mu / p * (p + 1);
    }
    // elliptic-point counts: the local factor at p is 1 + χ(p) where χ is
    // the quadratic character mod 4 (resp. mod 3), which vanishes at the
    // ramified prime itself
    let nu2: u64 = if n % 4 == 0 {
        0
    } else {
        fac.iter()
            .map(|&(p, _)| {
                if p == 2 {
                    1
                } else {
                    (1 + kronecker(-1, p as i64)) as u64
                }
            })
            .product()
    };
    let nu3: u64 = if n % 9 == 0 {
        0
    } else {
        fac.iter()
            .map(|&(p, _)| {
                if p == 3 {
                    1
                } else {
                    (1 + kronecker(-3, p as i64)) as u64
                }
            })
            .product()
    };
    let nu_inf = num_cusps(n);
    // g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2, an integer
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nu_inf;
    debug_assert_eq!(twelve_g % 12, 0);
    twelve_g / 12
}

/// Extended gcd for i64: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}
