//! The projective line over ℤ/N: canonical representatives, index lookup,
//! and lifts to SL₂(ℤ).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::HashMap;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Modular inverse for u64 (m > 0, gcd(a, m) = 1).
fn inv_mod_u64(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible");
    t.rem_euclid(m as i128) as u64
}

/// Canonical representative of (u : v) in P¹(ℤ/N), or None when
/// gcd(u, v, N) > 1 (not a projective point).
pub fn p1_normalize(n: u64, u: u64, v: u64) -> Option<(u64, u64)> {
    if n == 1 {
        return Some((0, 0));
    }
    let u = u % n;
    let v = v % n;
    if u == 0 {
        return if gcd(v, n) == 1 { Some((0, 1)) } else { None };
    }
    let g = gcd(u, n);
    if gcd(g, v) != 1 {
        return None;
    }
    // scale u to its gcd with n: s·u ≡ g (mod n) with s a unit. The inverse
    // is only determined mod n/g and every lift keeps s·u ≡ g, so bump by
    // n/g until the lift is a unit mod n (one exists by CRT).
    let step = n / g;
    let mut s = inv_mod_u64(u / g, step);
    let mut guard = 0;
    while gcd(s, n) != 1 {
        s = (s + step) % n;
        guard += 1;
        assert!(guard <= n, "a coprime lift of the inverse exists");
    }
    let v1 = (s as u128 * v as u128 % n as u128) as u64;
    // the stabilizer of g under unit scaling is {t ≡ 1 mod n/g}; take the
    // smallest unit multiple of v1
    let mut best = u64::MAX;
    let mut t = 1u64;
    for _ in 0..g {
        if gcd(t, n) == 1 {
            let cand = (t as u128 * v1 as u128 % n as u128) as u64;
            if cand < best {
                best = cand;
            }
        }
        t = (t + step) % n;
    }
    assert!(
        best != u64::MAX,
        "some scaling of v is a valid representative"
    );
    Some((g, best))
}

/// Indexed list of the points of P¹(ℤ/N).
pub struct P1List {
    n: u64,
    reps: Vec<(u64, u64)>,
    index: HashMap<(u64, u64), u32>,
}

impl P1List {
    pub fn new(n: u64) -> P1List {
        assert!(n >= 1);
        let mut reps = Vec::new();
        let mut index = HashMap::new();
        if n == 1 {
            reps.push((0, 0));
            index.insert((0, 0), 0);
            return P1List { n, reps, index };
        }
        for c in 0..n {
            let dividing = gcd(c, n);
            for d in 0..n {
                if gcd(dividing, d) != 1 {
                    continue;
                }
                let rep = p1_normalize(n, c, d).unwrap();
                let next = reps.len() as u32;
                index.entry(rep).or_insert_with(|| {
                    reps.push(rep);
                    next
                });
            }
        }
        P1List { n, reps, index }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    pub fn reps(&self) -> &[(u64, u64)] {
        &self.reps
    }

    /// Index of (u : v); None when not a point of P¹.
    pub fn lookup(&self, u: u64, v: u64) -> Option<usize> {
        let rep = p1_normalize(self.n, u, v)?;
        Some(self.index[&rep] as usize)
    }

    /// Index of (u : v) for signed inputs.
    pub fn lookup_signed(&self, u: i64, v: i64) -> Option<usize> {
        let n = self.n as i64;
        self.lookup(u.rem_euclid(n) as u64, v.rem_euclid(n) as u64)
    }

    pub fn lookup_bigint(&self, u: &BigInt, v: &BigInt) -> Option<usize> {
        let n = BigInt::from(self.n);
        let ur = u.mod_floor(&n).to_u64().unwrap();
        let vr = v.mod_floor(&n).to_u64().unwrap();
        self.lookup(ur, vr)
    }

    /// Image of the i-th point under the order-2 matrix [[0,-1],[1,0]]:
    /// (c : d) ↦ (d : -c).
    pub fn s_image(&self, i: usize) -> usize {
        let (c, d) = self.reps[i];
        self.lookup_signed(d as i64, -(c as i64)).unwrap()
    }

    /// Image under the order-3 matrix [[0,-1],[1,-1]]: (c : d) ↦ (d : -c-d).
    pub fn t_image(&self, i: usize) -> usize {
        let (c, d) = self.reps[i];
        self.lookup_signed(d as i64, -(c as i64) - d as i64)
            .unwrap()
    }

    /// Image under negating the first coordinate: (c : d) ↦ (-c : d),
    /// induced by conjugating paths through the imaginary axis.
    pub fn star_image(&self, i: usize) -> usize {
        let (c, d) = self.reps[i];
        self.lookup_signed(-(c as i64), d as i64).unwrap()
    }

    /// A matrix [[a, b], [c0, d0]] in SL₂(ℤ) whose bottom row reduces to
    /// the i-th point mod N.
    pub fn sl2_lift(&self, i: usize) -> [BigInt; 4] {
        let (c, d) = self.reps[i];
        let n = self.n as i64;
        let (c0, d0) = if self.n == 1 {
            (0i64, 1i64)
        } else if c == 0 {
            (0, 1)
        } else {
            // adjust d by multiples of n until coprime to c
            let c0 = c as i64;
            let mut d0 = d as i64;
            let mut guard = 0;
            while crate::arith::ext_gcd(c0, d0).0.abs() != 1 {
                d0 += n;
                guard += 1;
                assert!(guard < 10_000, "lift search terminates");
            }
            (c0, d0)
        };
        // s·c0 + t·d0 = 1  →  [t, -s; c0, d0] has determinant 1
        let (g, s, t) = crate::arith::ext_gcd(c0, d0);
        let (s, t) = if g < 0 { (-s, -t) } else { (s, t) };
        [
            BigInt::from(t),
            BigInt::from(-s),
            BigInt::from(c0),
            BigInt::from(d0),
        ]
    }
}

/// Size of P¹(ℤ/N): N·∏_{p|N}(1 + 1/p).
pub fn p1_size(n: u64) -> u64 {
    let mut size = n;
    for (p, _) in crate::arith::factor(n) {
        size = size / p * (p + 1);
    }
    size
}
