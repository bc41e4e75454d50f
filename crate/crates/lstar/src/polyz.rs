//! Univariate polynomials over `Z`: exact arithmetic, modular gcd and
//! resultant, Yun squarefree decomposition, and factorization into
//! irreducibles by Hensel lifting with subset recombination.
//!
//! Everything that relies on modular images verifies its output exactly, so
//! unlucky primes can only cost time.

use crate::arith::next_prime;
use crate::linalg::{bigint_mod_u64, crt_symmetric, FpPoly};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with big-integer coefficients; index `k` holds the
/// coefficient of `x^k` and trailing zeros are trimmed (zero = empty).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        ZPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut c = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[k] += a;
        }
        for (k, b) in other.coeffs.iter().enumerate() {
            c[k] += b;
        }
        ZPoly::new(c)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::new(c)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn deriv(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * BigInt::from(k))
                .collect(),
        )
    }

    /// `self(c·x)` (scaling the variable).
    pub fn compose_scale(&self, c: &BigInt) -> ZPoly {
        let mut power = BigInt::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &power;
                power *= c;
                v
            })
            .collect();
        ZPoly::new(coeffs)
    }

    /// Content: gcd of the coefficients, with the sign of the leading
    /// coefficient (so the primitive part always has positive lead).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let c = self.content();
        ZPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division over `Z`; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &ZPoly) -> Option<ZPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = other.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); self.coeffs.len() - dd];
        let lead = other.leading();
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[k - dd + j] -= t;
            }
            quo[k - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(quo))
    }

    /// Reduction mod a word-size prime.
    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        FpPoly::new(
            self.coeffs.iter().map(|c| bigint_mod_u64(c, p)).collect(),
            p,
        )
    }

    /// `⌈‖self‖₂⌉`, floored at 1.
    fn norm2_bound(&self) -> BigInt {
        let mut s = BigInt::zero();
        for c in &self.coeffs {
            s += c * c;
        }
        (s.sqrt() + 1u32).max(BigInt::one())
    }

    /// Greatest common divisor (content included), normalized to a positive
    /// leading coefficient; computed from modular images and verified by
    /// exact division.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let content_gcd = self.content().gcd(&other.content());
        let f = self.primitive_part();
        let g = other.primitive_part();
        if f.degree() == Some(0) || g.degree() == Some(0) {
            return ZPoly::constant(content_gcd);
        }
        let lead_gcd = f.leading().gcd(&g.leading());
        let mut p = (1u64 << 62) - 1;
        let mut best_deg = usize::MAX;
        let mut residues: Vec<Vec<u64>> = Vec::new();
        let mut moduli: Vec<u64> = Vec::new();
        for _ in 0..64 {
            p = next_prime_below(p);
            if bigint_mod_u64(&f.leading(), p) == 0 || bigint_mod_u64(&g.leading(), p) == 0 {
                continue;
            }
            let gp = f.reduce_mod(p).gcd(&g.reduce_mod(p));
            let dg = gp.degree().unwrap_or(0);
            if dg == 0 {
                return ZPoly::constant(content_gcd);
            }
            if dg > best_deg {
                continue; // unlucky prime
            }
            if dg < best_deg {
                best_deg = dg;
                residues.clear();
                moduli.clear();
            }
            // scale the monic modular gcd so its lead matches lead_gcd
            let scaled = gp.monic().scale(bigint_mod_u64(&lead_gcd, p));
            let mut coeffs = scaled.coeffs().to_vec();
            coeffs.resize(dg + 1, 0);
            residues.push(coeffs);
            moduli.push(p);
            // attempt reconstruction
            let lifted: Vec<BigInt> = (0..=dg)
                .map(|k| {
                    let rs: Vec<u64> = residues.iter().map(|r| r[k]).collect();
                    crt_symmetric(&rs, &moduli)
                })
                .collect();
            let candidate = ZPoly::new(lifted).primitive_part();
            if f.div_exact(&candidate).is_some() && g.div_exact(&candidate).is_some() {
                return candidate.mul_scalar(&content_gcd);
            }
        }
        panic!("polynomial gcd failed to stabilize");
    }

    /// Resultant of `self` and `other`, by CRT over word-size primes that
    /// preserve both leading coefficients.
    pub fn resultant(&self, other: &ZPoly) -> BigInt {
        match (self.degree(), other.degree()) {
            (None, _) | (_, None) => return BigInt::zero(),
            (Some(0), Some(dg)) => return self.coeffs[0].clone().pow(dg as u32),
            (Some(df), Some(0)) => return other.coeffs[0].clone().pow(df as u32),
            _ => {}
        }
        let df = self.degree().unwrap() as u32;
        let dg = other.degree().unwrap() as u32;
        let bound: BigInt = self.norm2_bound().pow(dg) * other.norm2_bound().pow(df) * 2u32 + 1u32;
        let mut p = (1u64 << 62) - 1;
        let mut residues = Vec::new();
        let mut moduli = Vec::new();
        let mut product = BigInt::one();
        while product < bound {
            p = next_prime_below(p);
            if bigint_mod_u64(&self.leading(), p) == 0 || bigint_mod_u64(&other.leading(), p) == 0 {
                continue;
            }
            residues.push(self.reduce_mod(p).resultant(&other.reduce_mod(p)));
            moduli.push(p);
            product *= BigInt::from(p);
        }
        crt_symmetric(&residues, &moduli)
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        self.gcd(&self.deriv()).degree() == Some(0)
    }

    /// Yun's squarefree decomposition of the primitive part:
    /// returns pairwise-coprime primitive squarefree `f_i` with
    /// `pp(self) = ± ∏ f_i^i` (multiplicities attached).
    pub fn squarefree_decomposition(&self) -> Vec<(ZPoly, usize)> {
        assert!(!self.is_zero());
        let f = normalize_sign(self.primitive_part());
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let fp = f.deriv();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides derivative");
        let mut d = c.sub(&b.deriv());
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.degree().map_or(false, |deg| deg > 0) {
            let h = b.gcd(&d);
            if h.degree().map_or(false, |deg| deg > 0) {
                out.push((h.clone(), i));
            }
            b = b.div_exact(&h).expect("Yun invariant");
            c = d.div_exact(&h).expect("Yun invariant");
            d = c.sub(&b.deriv());
            i += 1;
        }
        out
    }

    /// Full factorization: `(unit·content, irreducible primitive factors
    /// with positive leading coefficients and multiplicities)`. The product
    /// of `content · ∏ f_i^{e_i}` reproduces `self` exactly.
    pub fn factor(&self) -> (BigInt, Vec<(ZPoly, usize)>) {
        assert!(!self.is_zero(), "factorization of the zero polynomial");
        let mut content = self.content();
        let f = self.primitive_part();
        if f.degree() == Some(0) {
            return (content, Vec::new());
        }
        let mut out: Vec<(ZPoly, usize)> = Vec::new();
        // strip powers of x first (zero constant coefficient)
        let mut f = f;
        if f.coeffs[0].is_zero() {
            let k = f.coeffs.iter().take_while(|c| c.is_zero()).count();
            f = ZPoly::new(f.coeffs[k..].to_vec());
            out.push((ZPoly::x(), k));
        }
        for (sf, mult) in f.squarefree_decomposition() {
            for irr in factor_squarefree_primitive(&sf) {
                out.push((irr, mult));
            }
        }
        out.sort_by(|a, b| {
            a.0.coeffs
                .len()
                .cmp(&b.0.coeffs.len())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        // exact reconstruction check fixes the unit
        let mut prod = ZPoly::one();
        for (g, e) in &out {
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        let scaled = prod.mul_scalar(&content);
        if &scaled == self {
            return (content, out);
        }
        content = -content;
        let scaled = prod.mul_scalar(&content);
        assert_eq!(&scaled, self, "factor product must reproduce the input");
        (content, out)
    }
}

fn normalize_sign(f: ZPoly) -> ZPoly {
    if f.leading().is_negative() {
        f.neg()
    } else {
        f
    }
}

fn next_prime_below(p: u64) -> u64 {
    let mut c = p - 2;
    while !crate::arith::is_prime(c) {
        c -= 2;
    }
    c
}

/// Factor a primitive squarefree polynomial of degree ≥ 1 into primitive
/// irreducibles with positive leading coefficients.
fn factor_squarefree_primitive(f: &ZPoly) -> Vec<ZPoly> {
    let f = normalize_sign(f.clone());
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return vec![f];
    }
    let lc = f.leading();
    // monic transformation: F(y) = lc^(n-1) · f(y/lc) is monic in y
    let monic = if lc.is_one() {
        f.clone()
    } else {
        // coefficient of y^n is 1, of y^k (k < n) is a_k · lc^(n-1-k)
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut power = BigInt::one();
        for k in (0..n).rev() {
            coeffs[k] = &f.coeffs[k] * &power;
            power *= &lc;
        }
        ZPoly::new(coeffs)
    };
    assert!(monic.is_monic());

    let mut factors = factor_monic_squarefree(&monic);
    if !lc.is_one() {
        // map back: g(x) = pp(ĝ(lc·x))
        factors = factors
            .into_iter()
            .map(|g| normalize_sign(g.compose_scale(&lc).primitive_part()))
            .collect();
    }
    factors
}

/// Zassenhaus: factor a monic squarefree integer polynomial.
fn factor_monic_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.clone()];
    }

    // pick a small odd prime where f stays squarefree, preferring few
    // modular factors
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut p = 2u64;
    let mut good_seen = 0;
    while good_seen < 3 && p < 2000 {
        p = next_prime(p);
        let fp = f.reduce_mod(p);
        if fp.degree() != Some(n) {
            continue; // cannot happen for monic f, but keep the guard
        }
        if fp.gcd(&fp.deriv()).degree() != Some(0) {
            continue; // not squarefree mod p
        }
        let facs: Vec<FpPoly> = fp.factor().into_iter().map(|(g, _)| g).collect();
        good_seen += 1;
        if facs.len() == 1 {
            return vec![f.clone()]; // irreducible mod p ⇒ irreducible over Z
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, modular_factors) = best.expect("no squarefree reduction found");

    // Mignotte bound: coefficients of any monic divisor are below
    // 2^n · ‖f‖₂; lift beyond twice that for symmetric representatives.
    let bound: BigInt = (BigInt::one() << n) * f.norm2_bound() * 2u32 + 1u32;
    let mut modulus = BigInt::from(p);
    while modulus < bound {
        modulus = &modulus * &modulus;
    }

    let lifted = hensel_lift_tree(&f.coeffs, &modular_factors, p, &modulus);

    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.clone();
    let mut out = Vec::new();
    'outer: loop {
        let k = remaining.len();
        if k == 0 {
            break;
        }
        if k == 1 {
            out.push(current.clone());
            break;
        }
        for size in 1..=(k / 2) {
            for subset in (0..k).combinations(size) {
                let mut prod = poly_one_mod();
                for &i in &subset {
                    prod = pmul_mod(&prod, &remaining[i], &modulus);
                }
                let candidate =
                    ZPoly::new(prod.iter().map(|c| symmetric_rep(c, &modulus)).collect());
                if let Some(quotient) = current.div_exact(&candidate) {
                    out.push(candidate);
                    current = quotient;
                    let mut keep = Vec::new();
                    for (i, g) in remaining.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(g);
                        }
                    }
                    remaining = keep;
                    continue 'outer;
                }
            }
        }
        // nothing smaller splits off: the rest multiplies to one factor
        out.push(current.clone());
        break;
    }
    out
}

// -- arithmetic on coefficient vectors mod a BigInt modulus ---------------

fn poly_one_mod() -> Vec<BigInt> {
    vec![BigInt::one()]
}

fn ptrim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    a
}

fn pmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    ptrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn padd_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len().max(b.len())];
    for (k, x) in a.iter().enumerate() {
        c[k] += x;
    }
    for (k, x) in b.iter().enumerate() {
        c[k] += x;
    }
    pmod(&c, m)
}

fn psub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len().max(b.len())];
    for (k, x) in a.iter().enumerate() {
        c[k] += x;
    }
    for (k, x) in b.iter().enumerate() {
        c[k] -= x;
    }
    pmod(&c, m)
}

fn pmul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    pmod(&c, m)
}

/// Division by a monic polynomial, coefficients mod `m`.
fn pdivrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(
        b.last().map_or(false, |c| c.is_one()),
        "divisor must be monic"
    );
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), pmod(a, m));
    }
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (db..rem.len()).rev() {
        let q = rem[k].mod_floor(m);
        if q.is_zero() {
            rem[k] = BigInt::zero();
            continue;
        }
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[k - db + j] -= t;
        }
        rem[k] = BigInt::zero(); // monic: exact cancellation
        quo[k - db] = q;
    }
    (pmod(&quo, m), pmod(&rem[..db.min(rem.len())].to_vec(), m))
}

fn symmetric_rep(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2u32 > *m {
        r - m
    } else {
        r
    }
}

/// Extended gcd of two coprime polynomials mod p: `s·a + t·b ≡ 1`.
fn fp_bezout(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let p = a.modulus();
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = FpPoly::one(p);
    let mut s1 = FpPoly::zero(p);
    let mut t0 = FpPoly::zero(p);
    let mut t1 = FpPoly::one(p);
    while !r1.is_zero() {
        let (q, r2) = r0.divrem(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.degree(), Some(0), "inputs must be coprime");
    let inv = crate::arith::inv_mod(r0.coeffs()[0], p);
    (s0.scale(inv), t0.scale(inv))
}

fn fp_to_big(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f ≡ ∏ factors (mod p)` (all monic, pairwise coprime mod p) to a
/// monic factorization mod `modulus` (a power of p), recursively splitting
/// the factor list and lifting each two-factor split quadratically.
fn hensel_lift_tree(
    f: &[BigInt],
    factors: &[FpPoly],
    p: u64,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![pmod(f, modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(FpPoly::one(p), |acc, h| acc.mul(h));
    let h0 = right.iter().fold(FpPoly::one(p), |acc, h| acc.mul(h));
    let (s0, t0) = fp_bezout(&g0, &h0);

    // quadratic lifting of f ≡ g·h from p up past `modulus`
    let mut m = BigInt::from(p);
    let mut g = fp_to_big(&g0);
    let mut h = fp_to_big(&h0);
    let mut s = fp_to_big(&s0);
    let mut t = fp_to_big(&t0);
    while m < *modulus {
        let m2 = &m * &m;
        let e = psub_mod(&pmod(f, &m2), &pmul_mod(&g, &h, &m2), &m2);
        let se = pmul_mod(&s, &e, &m2);
        let (_, r) = pdivrem_monic_mod(&se, &h, &m2);
        let h_new = padd_mod(&h, &r, &m2);
        // recover g as the exact quotient f / h_new mod m²
        let (g_new, rem) = pdivrem_monic_mod(&pmod(f, &m2), &h_new, &m2);
        debug_assert!(
            rem.iter().all(|c| c.is_zero()),
            "Hensel step lost exactness"
        );
        // refresh the Bezout pair to mod m²
        let b = psub_mod(
            &padd_mod(&pmul_mod(&s, &g_new, &m2), &pmul_mod(&t, &h_new, &m2), &m2),
            &poly_one_mod(),
            &m2,
        );
        let sb = pmul_mod(&s, &b, &m2);
        let (c, d) = pdivrem_monic_mod(&sb, &h_new, &m2);
        let s_new = psub_mod(&s, &d, &m2);
        let t_new = psub_mod(
            &psub_mod(&t, &pmul_mod(&t, &b, &m2), &m2),
            &pmul_mod(&c, &g_new, &m2),
            &m2,
        );
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    let g = pmod(&g, modulus);
    let h = pmod(&h, modulus);
    let mut out = hensel_lift_tree(&g, left, p, modulus);
    out.extend(hensel_lift_tree(&h, right, p, modulus));
    out
}

impl std::fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}·x"),
                _ => format!("{c}·x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_i64(coeffs)
    }

    #[test]
    fn arithmetic_basics() {
        let f = zp(&[1, 2, 1]); // (x+1)²
        let g = zp(&[1, 1]);
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.div_exact(&g), Some(g.clone()));
        assert_eq!(f.div_exact(&zp(&[1, 3])), None);
        assert_eq!(f.eval(&BigInt::from(2)), BigInt::from(9));
        assert_eq!(f.deriv(), zp(&[2, 2]));
    }

    #[test]
    fn content_and_primitive() {
        let f = zp(&[-6, -12, -18]);
        assert_eq!(f.content(), BigInt::from(-6));
        assert_eq!(f.primitive_part(), zp(&[1, 2, 3]));
    }

    #[test]
    fn gcd_with_known_common_factor() {
        let h = zp(&[2, 1, 3]); // primitive, positive lead
        let f = h.mul(&zp(&[-1, 1])).mul_scalar(&BigInt::from(6));
        let g = h.mul(&zp(&[7, 1])).mul_scalar(&BigInt::from(4));
        let d = f.gcd(&g);
        assert_eq!(d, h.mul_scalar(&BigInt::from(2)));
        // coprime case
        assert_eq!(zp(&[-1, 1]).gcd(&zp(&[7, 1])), ZPoly::one());
    }

    #[test]
    fn resultant_oracles() {
        // res(x-3, x²+1) = 3²+1
        assert_eq!(zp(&[-3, 1]).resultant(&zp(&[1, 0, 1])), BigInt::from(10));
        // res(x²+1, x²-2) = 9
        assert_eq!(zp(&[1, 0, 1]).resultant(&zp(&[-2, 0, 1])), BigInt::from(9));
        // res(f, f') = -disc for monic quadratic: x²-5x+6 has disc 1
        let f = zp(&[6, -5, 1]);
        assert_eq!(f.resultant(&f.deriv()), BigInt::from(-1));
        // swap antisymmetry for odd·odd degrees: res(g,f) = -res(f,g)
        let a = zp(&[-3, 1]);
        let b = zp(&[5, 2]);
        assert_eq!(a.resultant(&b), -b.resultant(&a));
    }

    #[test]
    fn squarefree_decomposition_yun() {
        // f = (x-1)(x+2)²(x²+1)³
        let f = zp(&[-1, 1])
            .mul(&zp(&[2, 1]))
            .mul(&zp(&[2, 1]))
            .mul(&zp(&[1, 0, 1]))
            .mul(&zp(&[1, 0, 1]))
            .mul(&zp(&[1, 0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(zp(&[-1, 1]), 1), (zp(&[2, 1]), 2), (zp(&[1, 0, 1]), 3)]
        );
        assert!(!f.is_squarefree());
        assert!(zp(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn factor_products_of_quadratics() {
        // (x²+1)(x²-2)(x+3)²
        let f = zp(&[1, 0, 1]).mul(&zp(&[-2, 0, 1])).mul(&zp(&[9, 6, 1]));
        let (unit, factors) = f.factor();
        assert_eq!(unit, BigInt::one());
        assert_eq!(
            factors,
            vec![(zp(&[3, 1]), 2), (zp(&[-2, 0, 1]), 1), (zp(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn factor_non_monic() {
        // 6x² + 5x + 1 = (2x+1)(3x+1)
        let f = zp(&[1, 5, 6]);
        let (unit, factors) = f.factor();
        assert_eq!(unit, BigInt::one());
        assert_eq!(factors, vec![(zp(&[1, 2]), 1), (zp(&[1, 3]), 1)]);
        // with content and sign: -12x² - 10x - 2
        let g = f.mul_scalar(&BigInt::from(-2));
        let (unit, factors) = g.factor();
        assert_eq!(unit, BigInt::from(-2));
        assert_eq!(factors, vec![(zp(&[1, 2]), 1), (zp(&[1, 3]), 1)]);
    }

    #[test]
    fn factor_x4_plus_1_needs_recombination() {
        // x⁴+1 is irreducible over Z but splits mod every prime
        let f = zp(&[1, 0, 0, 0, 1]);
        let (unit, factors) = f.factor();
        assert_eq!(unit, BigInt::one());
        assert_eq!(factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn factor_cyclotomic_like_products() {
        // x⁴+x²+1 = (x²+x+1)(x²-x+1)
        let f = zp(&[1, 0, 1, 0, 1]);
        let (_, factors) = f.factor();
        assert_eq!(factors, vec![(zp(&[1, -1, 1]), 1), (zp(&[1, 1, 1]), 1)]);
        // (x³-2)(x³-3), both irreducible
        let g = zp(&[-2, 0, 0, 1]).mul(&zp(&[-3, 0, 0, 1]));
        let (_, factors) = g.factor();
        assert_eq!(
            factors,
            vec![(zp(&[-3, 0, 0, 1]), 1), (zp(&[-2, 0, 0, 1]), 1)]
        );
    }

    #[test]
    fn factor_with_x_powers() {
        // x³(x-5)
        let f = ZPoly::x()
            .mul(&ZPoly::x())
            .mul(&ZPoly::x())
            .mul(&zp(&[-5, 1]));
        let (_, factors) = f.factor();
        assert_eq!(factors, vec![(zp(&[-5, 1]), 1), (ZPoly::x(), 3)]);
    }

    #[test]
    fn compose_scale_substitutes() {
        // f(x) = x² + 3x + 5, f(2x) = 4x² + 6x + 5
        let f = zp(&[5, 3, 1]);
        assert_eq!(f.compose_scale(&BigInt::from(2)), zp(&[5, 6, 4]));
    }
}
