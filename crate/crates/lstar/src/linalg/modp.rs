//! Dense linear algebra and univariate polynomial arithmetic over a prime
//! field `F_p` with `p < 2^62`. These are the modular engines behind the
//! exact routines: multimodular characteristic polynomials, p-adic solving,
//! rank profiles, and polynomial factorization.

use crate::arith::{inv_mod, is_prime, mul_mod, pow_mod};
use crate::linalg::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic list of distinct primes just below `2^62`, for
/// multimodular computations.
pub(crate) fn modular_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = (1u64 << 62) - 57;
    while primes.len() < count {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        primes.push(candidate);
        candidate -= 2;
    }
    primes
}

/// Symmetric-range CRT: the unique `x` with `x ≡ r_i (mod q_i)` and
/// `|x| <= M/2`, where `M` is the product of the (pairwise coprime) moduli.
pub(crate) fn crt_symmetric(residues: &[u64], moduli: &[u64]) -> BigInt {
    assert_eq!(residues.len(), moduli.len());
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &q) in residues.iter().zip(moduli) {
        // lift x to a solution mod m*q: x + m * t, t ≡ (r - x)/m (mod q)
        let qb = BigInt::from(q);
        let x_mod_q = ((&x % &qb) + &qb) % &qb;
        let diff = (BigInt::from(r) - x_mod_q).mod_floor(&qb);
        let m_mod_q = (&m % &qb).to_u64().unwrap();
        let t = mul_mod(diff.to_u64().unwrap(), inv_mod(m_mod_q, q), q);
        x += &m * BigInt::from(t);
        m *= qb;
    }
    let half = &m >> 1;
    if x > half {
        x -= &m;
    }
    x
}

pub(crate) fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

// ---------------------------------------------------------------------------
// Matrices over F_p
// ---------------------------------------------------------------------------

/// Dense matrix over `F_p`. Same row-vector conventions as [`IntMatrix`].
#[derive(Clone, PartialEq, Eq)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zero(rows: usize, cols: usize, p: u64) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = FpMat::zero(n, n, p);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Entrywise reduction of an integer matrix.
    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let mut out = FpMat::zero(m.rows(), m.cols(), p);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = bigint_mod_u64(&m[(i, j)], p);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = FpMat::zero(self.rows, other.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out[(i, j)] as u128
                        + (a as u128) * (other[(k, j)] as u128) % (p as u128))
                        % (p as u128);
                    out[(i, j)] = v as u64;
                }
            }
        }
        out
    }

    /// `v · M` for a row vector `v`.
    pub fn act_on_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u128;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = ((out[j] as u128 + (a as u128) * (self[(k, j)] as u128) % p) % p) as u64;
            }
        }
        out
    }

    /// `M · v` for a column vector `v` (used by the p-adic solver).
    pub fn mul_col(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u128;
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u128;
            for j in 0..self.cols {
                acc = (acc + (self[(i, j)] as u128) * (v[j] as u128) % p) % p;
            }
            out[i] = acc as u64;
        }
        out
    }

    /// Row echelon pivot profile without destroying `self`:
    /// `(rank, pivot_rows, pivot_cols)`, where `pivot_rows[k]` is the index
    /// (in the original matrix) of the row providing the `k`-th pivot and
    /// `pivot_cols[k]` its column. The square submatrix on those rows and
    /// columns is invertible mod p.
    pub fn pivot_profile(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let p = self.p;
        let mut work = self.clone();
        let mut row_ids: Vec<usize> = (0..self.rows).collect();
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            let Some(pin) = (r..self.rows).find(|&i| work[(i, c)] != 0) else {
                continue;
            };
            work.data.swap_rows_raw(self.cols, r, pin);
            row_ids.swap(r, pin);
            let inv = inv_mod(work[(r, c)], p);
            for i in r + 1..self.rows {
                let f = mul_mod(work[(i, c)], inv, p);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = mul_mod(f, work[(r, j)], p);
                    work[(i, j)] = sub_mod(work[(i, j)], sub, p);
                }
            }
            pivot_rows.push(row_ids[r]);
            pivot_cols.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (r, pivot_rows, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.pivot_profile().0
    }

    /// Inverse of a square matrix, or `None` if singular mod p.
    pub fn inverse(&self) -> Option<FpMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut a = self.clone();
        let mut inv = FpMat::identity(n, p);
        for c in 0..n {
            let pin = (c..n).find(|&i| a[(i, c)] != 0)?;
            a.data.swap_rows_raw(n, c, pin);
            inv.data.swap_rows_raw(n, c, pin);
            let f = inv_mod(a[(c, c)], p);
            for j in 0..n {
                a[(c, j)] = mul_mod(a[(c, j)], f, p);
                inv[(c, j)] = mul_mod(inv[(c, j)], f, p);
            }
            for i in 0..n {
                if i == c || a[(i, c)] == 0 {
                    continue;
                }
                let f = a[(i, c)];
                for j in 0..n {
                    let s = mul_mod(f, a[(c, j)], p);
                    a[(i, j)] = sub_mod(a[(i, j)], s, p);
                    let s = mul_mod(f, inv[(c, j)], p);
                    inv[(i, j)] = sub_mod(inv[(i, j)], s, p);
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial mod p via Hessenberg reduction;
    /// coefficient of `x^k` at index `k`, monic of degree `rows`.
    pub fn charpoly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for m in 0..n.saturating_sub(2) {
            let Some(pin) = (m + 1..n).find(|&i| h[(i, m)] != 0) else {
                continue;
            };
            if pin != m + 1 {
                h.data.swap_rows_raw(n, m + 1, pin);
                for r in 0..n {
                    let t = h[(r, m + 1)];
                    h[(r, m + 1)] = h[(r, pin)];
                    h[(r, pin)] = t;
                }
            }
            let inv = inv_mod(h[(m + 1, m)], p);
            for i in m + 2..n {
                let f = mul_mod(h[(i, m)], inv, p);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = mul_mod(f, h[(m + 1, j)], p);
                    h[(i, j)] = sub_mod(h[(i, j)], s, p);
                }
                for r in 0..n {
                    let s = mul_mod(f, h[(r, i)], p);
                    h[(r, m + 1)] = add_mod(h[(r, m + 1)], s, p);
                }
            }
        }
        // recurrence on leading principal minors of the Hessenberg form
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let a = h[(m - 1, m - 1)];
            let prev = &polys[m - 1];
            let mut pm = vec![0u64; m + 1];
            for (k, &c) in prev.iter().enumerate() {
                pm[k + 1] = add_mod(pm[k + 1], c, p);
                pm[k] = sub_mod(pm[k], mul_mod(a, c, p), p);
            }
            let mut prod = 1u64;
            for i in 1..m {
                prod = mul_mod(prod, h[(m - i, m - i - 1)], p);
                let coef = mul_mod(h[(m - 1 - i, m - 1)], prod, p);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[m - 1 - i].iter().enumerate() {
                    pm[k] = sub_mod(pm[k], mul_mod(coef, c, p), p);
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }
}

impl std::ops::Index<(usize, usize)> for FpMat {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for FpMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMat {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

trait SwapRowsRaw {
    fn swap_rows_raw(&mut self, cols: usize, i: usize, j: usize);
}

impl SwapRowsRaw for Vec<u64> {
    fn swap_rows_raw(&mut self, cols: usize, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..cols {
            self.swap(i * cols + c, j * cols + c);
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

// ---------------------------------------------------------------------------
// Polynomials over F_p
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over `F_p`; coefficient of `x^k` at index
/// `k`, with no trailing zeros (the zero polynomial has an empty vector).
#[derive(Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self
            .coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (k, &a) in self.coeffs.iter().enumerate() {
            c[k] = a;
        }
        for (k, &b) in other.coeffs.iter().enumerate() {
            c[k] = add_mod(c[k], b, p);
        }
        FpPoly::new(c, p)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (k, &a) in self.coeffs.iter().enumerate() {
            c[k] = a;
        }
        for (k, &b) in other.coeffs.iter().enumerate() {
            c[k] = sub_mod(c[k], b, p);
        }
        FpPoly::new(c, p)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(a, b, p), p);
            }
        }
        FpPoly::new(c, p)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(self.coeffs.iter().map(|&c| mul_mod(c, s, p)).collect(), p)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn divrem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len() - dd];
        let lead_inv = inv_mod(divisor.leading(), p);
        for k in (dd..rem.len()).rev() {
            let f = mul_mod(rem[k], lead_inv, p);
            if f == 0 {
                continue;
            }
            quo[k - dd] = f;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = sub_mod(rem[k - dd + j], mul_mod(f, dc, p), p);
            }
        }
        (FpPoly::new(quo, p), FpPoly::new(rem, p))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divrem(divisor).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn deriv(&self) -> FpPoly {
        let p = self.p;
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(p);
        }
        let c = (1..self.coeffs.len())
            .map(|k| mul_mod(self.coeffs[k], (k as u64) % p, p))
            .collect();
        FpPoly::new(c, p)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x, p), c, p);
        }
        acc
    }

    /// `self^exp mod modulus` by repeated squaring.
    pub fn powmod(&self, exp: &BigInt, modulus: &FpPoly) -> FpPoly {
        assert!(!exp.is_negative());
        let mut result = FpPoly::one(self.p);
        let mut base = self.rem(modulus);
        let bits = exp.bits();
        for k in 0..bits {
            if exp.bit(k) {
                result = result.mul(&base).rem(modulus);
            }
            if k + 1 < bits {
                base = base.mul(&base).rem(modulus);
            }
        }
        result
    }

    /// Resultant of `self` and `other`.
    pub fn resultant(&self, other: &FpPoly) -> u64 {
        let p = self.p;
        let mut f = self.clone();
        let mut g = other.clone();
        match (f.degree(), g.degree()) {
            (None, _) | (_, None) => {
                // res(0, g) = 0 unless both have no roots to speak of
                return 0;
            }
            (Some(0), Some(dg)) => return pow_mod(f.coeffs[0], dg as u64, p),
            (Some(df), Some(0)) => return pow_mod(g.coeffs[0], df as u64, p),
            _ => {}
        }
        let mut res = 1u64;
        loop {
            let df = f.degree().unwrap();
            let dg = g.degree().unwrap();
            if dg == 0 {
                return mul_mod(res, pow_mod(g.coeffs[0], df as u64, p), p);
            }
            let r = f.rem(&g);
            if r.is_zero() {
                return 0;
            }
            // res(f,g) = (-1)^(df·dg) · lc(g)^(df-dr) · res(g, f mod g)
            let dr = r.degree().unwrap_or(0);
            let mut step = pow_mod(g.leading(), (df - dr) as u64, p);
            if (df & 1) == 1 && (dg & 1) == 1 {
                step = sub_mod(0, step, p);
            }
            res = mul_mod(res, step, p);
            f = g;
            g = r;
        }
    }

    /// Distinct roots in `F_p`.
    pub fn roots(&self) -> Vec<u64> {
        let p = self.p;
        if self.is_zero() {
            return Vec::new();
        }
        // split off the product of linear factors: gcd(x^p - x, f)
        let f = self.monic();
        let xp = FpPoly::x(p).powmod(&BigInt::from(p), &f);
        let lin = xp.sub(&FpPoly::x(p)).gcd(&f);
        let mut roots = Vec::new();
        let mut rng = DetRng::new(0x5eed_1234_abcd_0001);
        split_linear(&lin, &mut roots, &mut rng);
        roots.sort_unstable();
        roots
    }

    /// Factorization into monic irreducibles with multiplicities,
    /// deterministic across runs (fixed-seed splitting).
    pub fn factor(&self) -> Vec<(FpPoly, usize)> {
        assert!(!self.is_zero());
        let mut rng = DetRng::new(0x5eed_5678_dcba_0002);
        let mut out = self.factor_with(&mut rng);
        out.sort_by(|a, b| {
            a.0.coeffs
                .len()
                .cmp(&b.0.coeffs.len())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        out
    }

    fn factor_with(&self, rng: &mut DetRng) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out: Vec<(FpPoly, usize)> = Vec::new();
        let f = self.monic();
        if f.degree().map_or(true, |d| d == 0) {
            return out;
        }
        let d = f.deriv();
        if d.is_zero() {
            // f(x) = g(x^p) = g(x)^p, since c^p = c for every c in F_p
            let g = FpPoly::new(f.coeffs.iter().step_by(p as usize).copied().collect(), p);
            for (h, e) in g.factor_with(rng) {
                out.push((h, e * p as usize));
            }
            return out;
        }
        // squarefree part contains each irreducible of multiplicity not
        // divisible by p exactly once
        let sf = f.divrem(&f.gcd(&d)).0;
        let mut rest = f;
        for irr in factor_squarefree(&sf, rng) {
            let mut m = 0usize;
            loop {
                let (q, r) = rest.divrem(&irr);
                if !r.is_zero() {
                    break;
                }
                m += 1;
                rest = q;
            }
            out.push((irr, m));
        }
        // leftover = factors whose multiplicity is divisible by p
        if rest.degree().map_or(false, |dd| dd > 0) {
            out.extend(rest.factor_with(rng));
        }
        out
    }
}

/// Factor a squarefree monic polynomial into monic irreducibles
/// (distinct-degree splitting followed by Cantor–Zassenhaus).
fn factor_squarefree(f: &FpPoly, rng: &mut DetRng) -> Vec<FpPoly> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut rest = f.monic();
    if rest.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let mut xq = FpPoly::x(p).powmod(&BigInt::from(p), &rest);
    let mut d = 1usize;
    while rest.degree().map_or(false, |dd| dd >= 2 * d) {
        let g = xq.sub(&FpPoly::x(p)).gcd(&rest);
        if g.degree().map_or(false, |dd| dd > 0) {
            out.extend(equal_degree_split(&g, d, rng));
            rest = rest.divrem(&g).0;
            if rest.degree().map_or(true, |dd| dd == 0) {
                break;
            }
            xq = xq.rem(&rest);
        }
        d += 1;
        if rest.degree().map_or(false, |dd| dd >= 2 * d) {
            xq = xq.powmod(&BigInt::from(p), &rest);
        }
    }
    if rest.degree().map_or(false, |dd| dd > 0) {
        out.push(rest);
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting of a product of irreducibles of
/// degree `d`.
fn equal_degree_split(f: &FpPoly, d: usize, rng: &mut DetRng) -> Vec<FpPoly> {
    let p = f.modulus();
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    assert!(p > 2, "equal-degree splitting requires an odd modulus");
    let exp: BigInt = (BigInt::from(p).pow(d as u32) - 1) >> 1;
    loop {
        let deg = n - 1;
        let coeffs: Vec<u64> = (0..=deg).map(|_| rng.below(p)).collect();
        let r = FpPoly::new(coeffs, p);
        if r.degree().map_or(true, |dd| dd == 0) {
            continue;
        }
        let s = r.powmod(&exp, f).sub(&FpPoly::one(p));
        let g = s.gcd(f);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.divrem(&g).0;
                let mut out = equal_degree_split(&g, d, rng);
                out.extend(equal_degree_split(&h, d, rng));
                return out;
            }
        }
    }
}

fn split_linear(f: &FpPoly, roots: &mut Vec<u64>, rng: &mut DetRng) {
    let p = f.modulus();
    match f.degree() {
        None | Some(0) => {}
        Some(1) => {
            // monic x + c: root is -c
            let f = f.monic();
            roots.push(sub_mod(0, f.coeffs[0], p));
        }
        Some(_) => {
            for g in equal_degree_split(&f.monic(), 1, rng) {
                split_linear(&g, roots, rng);
            }
        }
    }
}

/// Small deterministic xorshift generator so factorizations are
/// reproducible run to run.
pub(crate) struct DetRng {
    state: u64,
}

impl DetRng {
    pub(crate) fn new(seed: u64) -> Self {
        DetRng { state: seed.max(1) }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    pub(crate) fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

impl std::fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FpPoly(mod {}; {:?})", self.p, self.coeffs)
    }
}
