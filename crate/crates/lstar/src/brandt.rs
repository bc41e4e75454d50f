//! Second, independent route to the special-value indices: ideal classes of
//! a maximal order in the definite rational quaternion algebra ramified at a
//! single finite prime.
//!
//! The ideal classes carry a family of commuting integer operators — Brandt
//! matrices, computed from counts of lattice points of prescribed norm —
//! whose eigenvalue systems on the degree-zero subspace match those of the
//! Hecke operators on cuspidal symbols of the same level. Because the two
//! constructions share no code beyond basic linear algebra, agreement of the
//! indices computed on both sides is a genuine cross-check. Class-field
//! embedding counts assemble into a degree-zero rational vector whose image
//! in an eigenform factor measures the base-changed special value as a
//! lattice index.
//!
//! Conventions: quaternions are stored as coordinate rows `(x, y, z, w)`
//! with respect to `1, i, j, k` where `i² = −a`, `j² = −b`, `k = ij = −ji`;
//! lattices are row spans; operators act on row vectors from the right; the
//! Gram matrix of a lattice is the trace form `Tr(e_r · conj(e_c))`, so a
//! maximal order of reduced discriminant `N` has Gram determinant `N²`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{
    abs_det, charpoly, restrict_to_subspace, solve_dixon, solve_triangular, split_primary,
    IntMatrix, RatMatrix,
};
use crate::modsym::winding_multiple;
use crate::newform::{span_closure, NewformFactor};
use crate::polyz::ZPoly;
use crate::ratlattice::{lattice_index, Lattice, Rat};

/// Quaternion as a coordinate row over `1, i, j, k`.
type Quat = [Rat; 4];

/// Structure constants of the algebra: `i² = −a`, `j² = −b`.
#[derive(Clone)]
struct Alg {
    a: Rat,
    b: Rat,
}

impl Alg {
    fn new(a: u64, b: u64) -> Self {
        Alg {
            a: Rat::from_integer(BigInt::from(a)),
            b: Rat::from_integer(BigInt::from(b)),
        }
    }

    fn mul(&self, u: &Quat, v: &Quat) -> Quat {
        let (a, b) = (&self.a, &self.b);
        let x = &u[0] * &v[0]
            - a * (&u[1] * &v[1])
            - b * (&u[2] * &v[2])
            - a * b * (&u[3] * &v[3]);
        let y = &u[0] * &v[1] + &u[1] * &v[0] + b * (&u[2] * &v[3]) - b * (&u[3] * &v[2]);
        let z = &u[0] * &v[2] + &u[2] * &v[0] + a * (&u[3] * &v[1]) - a * (&u[1] * &v[3]);
        let w = &u[0] * &v[3] + &u[3] * &v[0] + (&u[1] * &v[2]) - (&u[2] * &v[1]);
        [x, y, z, w]
    }

    fn conj(u: &Quat) -> Quat {
        [u[0].clone(), -u[1].clone(), -u[2].clone(), -u[3].clone()]
    }

    fn trace(u: &Quat) -> Rat {
        &u[0] + &u[0]
    }

    fn norm(&self, u: &Quat) -> Rat {
        let (a, b) = (&self.a, &self.b);
        &u[0] * &u[0] + a * (&u[1] * &u[1]) + b * (&u[2] * &u[2]) + a * b * (&u[3] * &u[3])
    }

    /// Polarization `Tr(u · conj(v)) = nr(u+v) − nr(u) − nr(v)`.
    fn polar(&self, u: &Quat, v: &Quat) -> Rat {
        let (a, b) = (&self.a, &self.b);
        let s = &u[0] * &v[0] + a * (&u[1] * &v[1]) + b * (&u[2] * &v[2]) + a * b * (&u[3] * &v[3]);
        &s + &s
    }
}

fn row_quat(m: &RatMatrix, i: usize) -> Quat {
    [
        m[(i, 0)].clone(),
        m[(i, 1)].clone(),
        m[(i, 2)].clone(),
        m[(i, 3)].clone(),
    ]
}

fn lattice_rows(l: &Lattice) -> Vec<Quat> {
    let b = l.basis();
    (0..b.rows()).map(|i| row_quat(&b, i)).collect()
}

fn lat_eq(x: &Lattice, y: &Lattice) -> bool {
    let (mx, dx) = x.scaled_basis();
    let (my, dy) = y.scaled_basis();
    dx == dy && mx == my
}

/// Product lattice: the span of all pairwise products of basis elements.
fn lat_mul(alg: &Alg, l: &Lattice, m: &Lattice) -> Lattice {
    let lr = lattice_rows(l);
    let mr = lattice_rows(m);
    let mut rows = Vec::with_capacity(lr.len() * mr.len());
    for u in &lr {
        for v in &mr {
            rows.push(alg.mul(u, v).to_vec());
        }
    }
    Lattice::from_rat_rows(&RatMatrix::from_rows(rows))
}

fn lat_conj(l: &Lattice) -> Lattice {
    let rows: Vec<Vec<Rat>> = lattice_rows(l)
        .iter()
        .map(|u| Alg::conj(u).to_vec())
        .collect();
    Lattice::from_rat_rows(&RatMatrix::from_rows(rows))
}

/// Positive gcd of a set of rationals (the generator of the ℤ-module they
/// span). Zeros are skipped; at least one value must be nonzero.
fn rat_gcd(values: &[Rat]) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        // gcd(num/den, p/q) = gcd(num·q, p·den) / (den·q)
        let p = v.numer();
        let q = v.denom();
        num = (&num * q).gcd(&(p * &den));
        den *= q;
    }
    assert!(!num.is_zero(), "gcd of all-zero norm values");
    Rat::new(num, den)
}

/// Generator of the ℤ-module of norm values on the lattice.
fn norm_gcd(alg: &Alg, l: &Lattice) -> Rat {
    let rows = lattice_rows(l);
    let mut vals = Vec::new();
    for (r, u) in rows.iter().enumerate() {
        vals.push(alg.norm(u));
        for v in rows.iter().skip(r + 1) {
            vals.push(alg.polar(u, v));
        }
    }
    rat_gcd(&vals)
}

/// Trace-form Gram matrix of the basis rows, if integral.
fn trace_gram(alg: &Alg, rows: &[Quat]) -> Option<IntMatrix> {
    let k = rows.len();
    let mut g = IntMatrix::zero(k, k);
    for r in 0..k {
        for c in r..k {
            let p = alg.polar(&rows[r], &rows[c]);
            if !p.is_integer() {
                return None;
            }
            g[(r, c)] = p.to_integer();
            g[(c, r)] = g[(r, c)].clone();
        }
    }
    Some(g)
}

/// Gram of the norm form divided by the norm gcd: an integral matrix with
/// even diagonal whose determinant equals the squared reduced discriminant
/// for any invertible ideal of a maximal order.
fn normalized_gram(alg: &Alg, l: &Lattice) -> (IntMatrix, Rat) {
    let s = norm_gcd(alg, l);
    let rows = lattice_rows(l);
    let k = rows.len();
    let g = IntMatrix::from_fn(k, k, |r, c| {
        let p = &alg.polar(&rows[r], &rows[c]) / &s;
        assert!(p.is_integer(), "norm gcd must divide every polar value");
        p.to_integer()
    });
    for r in 0..k {
        assert!(g[(r, r)].is_even(), "norm-form diagonal must be even");
    }
    (g, s)
}

/// Rescale so the basis is integral and primitive (content one). The ideal
/// class is unchanged; norms scale by the square of the applied factor.
fn content_reduce(l: &Lattice) -> Lattice {
    let (mat, den) = l.scaled_basis();
    let mut g = BigInt::zero();
    for r in 0..mat.rows() {
        for c in 0..mat.cols() {
            g = g.gcd(&mat[(r, c)]);
        }
    }
    assert!(!g.is_zero(), "content of the zero lattice");
    l.scale(&Rat::new(den.clone(), g))
}

/// Floor of the square root of a nonnegative rational.
fn floor_sqrt_rat(x: &Rat) -> BigInt {
    assert!(!x.is_negative(), "square root of a negative bound");
    let p = x.numer();
    let q = x.denom();
    (p * q).sqrt().div_floor(q)
}

/// Rational Cholesky data for `Q(x) = xᵀGx = Σ dᵢ (xᵢ + Σ_{j>i} uᵢⱼ xⱼ)²`.
/// Returns `None` when the form is not positive definite.
fn cholesky(g: &IntMatrix) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let n = g.rows();
    assert_eq!(n, g.cols());
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| (0..n).map(|c| Rat::from_integer(g[(r, c)].clone())).collect())
        .collect();
    let mut d = vec![Rat::zero(); n];
    let mut u = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        if !a[i][i].is_positive() {
            return None;
        }
        d[i] = a[i][i].clone();
        for j in (i + 1)..n {
            u[i][j] = &a[i][j] / &d[i];
        }
        for r in (i + 1)..n {
            for c in r..n {
                let t = &a[r][c] - &a[i][r] * &a[i][c] / &d[i];
                a[r][c] = t;
            }
        }
    }
    Some((d, u))
}

/// All integer vectors with `xᵀ G x = target` for a positive-definite
/// symmetric integer `G`. With `G` the trace-form Gram of a lattice basis
/// this enumerates lattice elements of norm `target / 2`.
fn enumerate_by_norm(g: &IntMatrix, target: &BigInt) -> Vec<Vec<BigInt>> {
    let n = g.rows();
    if target.is_negative() {
        return Vec::new();
    }
    if n == 0 {
        return if target.is_zero() {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let (d, u) = cholesky(g).expect("norm form must be positive definite");
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    descend(
        &d,
        &u,
        n - 1,
        Rat::from_integer(target.clone()),
        &mut x,
        &mut out,
    );
    out
}

fn descend(
    d: &[Rat],
    u: &[Vec<Rat>],
    i: usize,
    budget: Rat,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = d.len();
    let mut center = Rat::zero();
    for j in (i + 1)..n {
        if !u[i][j].is_zero() {
            let t = &center + &u[i][j] * Rat::from_integer(x[j].clone());
            center = t;
        }
    }
    // |x_i + center| <= sqrt(budget / d_i); pad by one and filter exactly
    let reach = floor_sqrt_rat(&(&budget / &d[i])) + BigInt::one();
    let base = (-&center).floor().to_integer();
    let mut k = &base - &reach;
    let hi = &base + &reach + BigInt::one();
    while k <= hi {
        let v = &center + Rat::from_integer(k.clone());
        let term = &d[i] * &v * &v;
        if term <= budget {
            let rem = &budget - &term;
            x[i] = k.clone();
            if i == 0 {
                if rem.is_zero() {
                    out.push(x.clone());
                }
            } else {
                descend(d, u, i - 1, rem, x, out);
            }
        }
        k += BigInt::one();
    }
    x[i] = BigInt::zero();
}

fn count_by_norm(g: &IntMatrix, target: &BigInt) -> usize {
    enumerate_by_norm(g, target).len()
}

/// The definite quaternion algebra of prime reduced discriminant together
/// with a certified maximal order.
#[derive(Clone)]
pub struct QuaternionData {
    n: u64,
    a: u64,
    b: u64,
    alg: Alg,
    order: Lattice,
    gram: IntMatrix,
}

impl QuaternionData {
    pub fn level(&self) -> u64 {
        self.n
    }

    /// `(a, b)` with `i² = −a`, `j² = −b`.
    pub fn structure_constants(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// Basis rows of the maximal order in `1, i, j, k` coordinates.
    pub fn maximal_order_basis(&self) -> RatMatrix {
        self.order.basis()
    }

    pub fn order(&self) -> &Lattice {
        &self.order
    }

    /// Trace-form Gram matrix of the order basis; its determinant is the
    /// square of the level.
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }
}

/// Reduced discriminant of an order presented by an integral trace Gram.
fn reduced_discriminant(gram: &IntMatrix) -> BigInt {
    let det = abs_det(gram);
    let s = det.sqrt();
    assert_eq!(&s * &s, det, "trace-form determinant must be a square");
    s
}

/// Multiplicative closure of a lattice containing `1`. Returns the closed
/// lattice with its Gram when every stage stays integral, `None` otherwise
/// (an enlargement whose closure leaves the integral elements can never be
/// part of an order).
fn close_ring(alg: &Alg, start: &Lattice) -> Option<(Lattice, IntMatrix)> {
    let mut cur = start.clone();
    for _ in 0..40 {
        let rows = lattice_rows(&cur);
        trace_gram(alg, &rows)?;
        let mut all: Vec<Vec<Rat>> = rows.iter().map(|u| u.to_vec()).collect();
        for u in &rows {
            for v in &rows {
                all.push(alg.mul(u, v).to_vec());
            }
        }
        let next = Lattice::from_rat_rows(&RatMatrix::from_rows(all));
        if lat_eq(&next, &cur) {
            let g = trace_gram(alg, &rows).expect("checked integral");
            return Some((cur, g));
        }
        cur = next;
    }
    panic!("ring closure did not stabilize");
}

/// Construct the rational quaternion algebra ramified exactly at the given
/// prime and at infinity, with a maximal order certified by its Gram
/// determinant.
pub fn build_quaternion(n: u64) -> Result<QuaternionData> {
    if !arith::is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let (a, b) = if n == 2 {
        (1, 1)
    } else if n % 4 == 3 {
        (1, n)
    } else if n % 8 == 5 {
        (2, n)
    } else {
        // n ≡ 1 (mod 8): auxiliary prime q ≡ 3 (mod 4) that is inert in
        // ℚ(√n), making (−q, −n) ramified exactly at n and infinity.
        let mut q = 3u64;
        while !(q % 4 == 3 && arith::is_prime(q) && arith::kronecker(n as i64, q as i64) == -1) {
            q += 2;
        }
        (q, n)
    };
    let alg = Alg::new(a, b);
    let target = BigInt::from(n);
    let (mut order, mut gram) =
        close_ring(&alg, &Lattice::standard(4)).expect("integral structure constants");
    let mut disc = reduced_discriminant(&gram);
    while disc != target {
        let ratio = u64::try_from(&disc / &target).expect("small index");
        let r = arith::prime_divisors(ratio)[0];
        let rows = lattice_rows(&order);
        let rb = Rat::from_integer(BigInt::from(r));
        let mut best: Option<(Lattice, IntMatrix, BigInt)> = None;
        let mut digits = [0u64; 4];
        'cand: loop {
            // next vector in {0..r−1}^4, skipping zero
            let mut pos = 0;
            loop {
                digits[pos] += 1;
                if digits[pos] < r {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
                if pos == 4 {
                    break 'cand;
                }
            }
            let mut y = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            for (t, row) in rows.iter().enumerate() {
                if digits[t] == 0 {
                    continue;
                }
                let c = Rat::from_integer(BigInt::from(digits[t]));
                for (yc, rc) in y.iter_mut().zip(row.iter()) {
                    let s = &*yc + &c * rc;
                    *yc = s;
                }
            }
            for yc in y.iter_mut() {
                let s = &*yc / &rb;
                *yc = s;
            }
            if !Alg::trace(&y).is_integer() || !alg.norm(&y).is_integer() {
                continue;
            }
            if order.contains(&y) {
                continue;
            }
            let mut stacked: Vec<Vec<Rat>> = rows.iter().map(|u| u.to_vec()).collect();
            stacked.push(y.to_vec());
            let seed = Lattice::from_rat_rows(&RatMatrix::from_rows(stacked));
            if let Some((bigger, g2)) = close_ring(&alg, &seed) {
                let d2 = reduced_discriminant(&g2);
                if d2 < disc {
                    best = Some((bigger, g2, d2));
                    break;
                }
            }
        }
        let (o2, g2, d2) = best.expect("a maximal order exists above any order");
        order = o2;
        gram = g2;
        disc = d2;
    }
    assert!(cholesky(&gram).is_some(), "norm form must be definite");
    assert!(
        order.contains(&[Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()]),
        "order must contain one"
    );
    assert_eq!(&abs_det(&gram), &(&target * &target));
    Ok(QuaternionData {
        n,
        a,
        b,
        alg,
        order,
        gram,
    })
}

/// Representatives of the left ideal classes of the maximal order, with the
/// unit groups of their right orders.
pub struct IdealClassSet {
    classes: Vec<Lattice>,
    weights: Vec<u64>,
    right_orders: Vec<Lattice>,
    units: Vec<Vec<Quat>>,
}

impl IdealClassSet {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Lattice] {
        &self.classes
    }

    /// `w_i`: half the number of units of the right order of class `i`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn right_order(&self, i: usize) -> &Lattice {
        &self.right_orders[i]
    }

    /// `Σ 1/w_i`, which equals `(N − 1)/12` exactly.
    pub fn mass(&self) -> Rat {
        let mut m = Rat::zero();
        for w in &self.weights {
            let t = &m + Rat::new(BigInt::one(), BigInt::from(*w));
            m = t;
        }
        m
    }
}

/// Right order `O_r(I) = (1/nr I) · conj(I)·I`, certified by its Gram.
fn right_order(q: &QuaternionData, ideal: &Lattice) -> Lattice {
    let prod = lat_mul(&q.alg, &lat_conj(ideal), ideal);
    let s = norm_gcd(&q.alg, &prod);
    let ro = prod.scale(&s.recip());
    let rows = lattice_rows(&ro);
    let g = trace_gram(&q.alg, &rows).expect("right order must be integral");
    let t = BigInt::from(q.n);
    assert_eq!(abs_det(&g), &t * &t, "right order must be maximal");
    assert!(
        ro.contains(&[Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()]),
        "right order must contain one"
    );
    ro
}

/// Norm-one elements of an order, in ambient coordinates.
fn order_units(q: &QuaternionData, ord: &Lattice) -> Vec<Quat> {
    let (g, s) = normalized_gram(&q.alg, ord);
    assert!(s.is_one(), "an order has norm gcd one");
    let b = ord.basis();
    enumerate_by_norm(&g, &BigInt::from(2u32))
        .into_iter()
        .map(|coords| {
            let mut u = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            for (r, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cr = Rat::from_integer(c.clone());
                for (uc, bc) in u.iter_mut().zip(row_quat(&b, r).iter()) {
                    let t = &*uc + &cr * bc;
                    *uc = t;
                }
            }
            u
        })
        .collect()
}

/// Test whether two left ideals are right-equivalent: the normalized norm
/// form on `conj(J)·I` represents one exactly when `I ~ J`.
fn equivalent_ideals(q: &QuaternionData, i: &Lattice, j: &Lattice) -> bool {
    let m = lat_mul(&q.alg, &lat_conj(j), i);
    let (g, _) = normalized_gram(&q.alg, &m);
    count_by_norm(&g, &BigInt::from(2u32)) > 0
}

/// Reduced row-echelon representatives of the 2-dimensional subspaces of
/// `𝔽_ℓ⁴`.
fn planes_mod(l: u64) -> Vec<[[u64; 4]; 2]> {
    let total = l * l * l * l;
    let decode = |mut v: u64| {
        let mut row = [0u64; 4];
        for rc in row.iter_mut() {
            *rc = v % l;
            v /= l;
        }
        row
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v1 in 1..total {
        for v2 in 1..total {
            if let Some(e) = echelon2(decode(v1), decode(v2), l) {
                let key: Vec<u64> = e.iter().flatten().copied().collect();
                if seen.insert(key) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Reduced row-echelon form of a pair of vectors over `𝔽_ℓ`, or `None` when
/// they are dependent.
fn echelon2(r1: [u64; 4], r2: [u64; 4], l: u64) -> Option<[[u64; 4]; 2]> {
    let mut m = [r1, r2];
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        let mut sel = None;
        for r in row..2 {
            if m[r][col] % l != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sr) = sel else { continue };
        m.swap(row, sr);
        let inv = arith::inv_mod(m[row][col] % l, l);
        for c in 0..4 {
            m[row][c] = arith::mul_mod(m[row][c] % l, inv, l);
        }
        for r in 0..2 {
            if r != row && m[r][col] % l != 0 {
                let f = m[r][col] % l;
                for c in 0..4 {
                    let sub = arith::mul_mod(f, m[row][c], l);
                    m[r][c] = (m[r][c] % l + l - sub) % l;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == 2 {
            break;
        }
    }
    if row == 2 {
        Some(m)
    } else {
        None
    }
}

/// The `ℓ+1` index-`ℓ²` sublattices of a left ideal that remain left ideals
/// and multiply the norm by `ℓ`: preimages of the isotropic, left-stable
/// planes of the reduced norm form on `I/ℓI`.
fn neighbors(q: &QuaternionData, ideal: &Lattice, l: u64) -> Vec<Lattice> {
    assert!(q.n % l != 0, "neighbor prime must not divide the level");
    let (mat, den) = ideal.scaled_basis();
    let mat = mat.clone();
    let den = den.clone();
    let (gnorm, s) = normalized_gram(&q.alg, ideal);
    let lb = BigInt::from(l);
    // quadratic form mod ℓ: Q(x) = Σ (g_rr/2) x_r² + Σ_{r<c} g_rc x_r x_c
    let red = |x: &BigInt| -> u64 { u64::try_from(x.mod_floor(&lb)).expect("small residue") };
    let mut qdiag = [0u64; 4];
    let mut qoff = [[0u64; 4]; 4];
    for r in 0..4 {
        qdiag[r] = red(&(&gnorm[(r, r)] / BigInt::from(2u32)));
        for c in (r + 1)..4 {
            qoff[r][c] = red(&gnorm[(r, c)]);
        }
    }
    let qval = |v: &[u64; 4]| -> u64 {
        let mut acc = 0u64;
        for r in 0..4 {
            acc = (acc + arith::mul_mod(qdiag[r], arith::mul_mod(v[r], v[r], l), l)) % l;
            for c in (r + 1)..4 {
                acc = (acc + arith::mul_mod(qoff[r][c], arith::mul_mod(v[r], v[c], l), l)) % l;
            }
        }
        acc
    };
    // left-multiplication by the order basis on I/ℓI
    let ib = ideal.basis();
    let ob = q.order.basis();
    let mut actions = Vec::new();
    for gi in 0..4 {
        let g = row_quat(&ob, gi);
        let mut rows = Vec::new();
        for r in 0..4 {
            let p = q.alg.mul(&g, &row_quat(&ib, r));
            rows.push(p.to_vec());
        }
        let prod = RatMatrix::from_rows(rows);
        let (pint, pden) = prod.clear_denominators();
        let sol = solve_triangular(&mat, &pint).expect("products stay in the ideal");
        let mut act = [[0u64; 4]; 4];
        for (r, ar) in act.iter_mut().enumerate() {
            for (c, av) in ar.iter_mut().enumerate() {
                let x = &sol[(r, c)] * Rat::new(den.clone(), pden.clone());
                assert!(x.is_integer(), "left ideal closed under the order");
                *av = red(&x.to_integer());
            }
        }
        actions.push(act);
    }
    let apply = |v: &[u64; 4], act: &[[u64; 4]; 4]| -> [u64; 4] {
        let mut out = [0u64; 4];
        for (c, oc) in out.iter_mut().enumerate() {
            for (r, vr) in v.iter().enumerate() {
                *oc = (*oc + arith::mul_mod(*vr, act[r][c], l)) % l;
            }
        }
        out
    };
    let in_plane = |v: &[u64; 4], w: &[[u64; 4]; 2]| -> bool {
        // eliminate v against the echelon rows and check the residue is zero
        let mut v = *v;
        for wr in w {
            let pivot = (0..4).find(|&c| wr[c] % l != 0).expect("nonzero row");
            if v[pivot] % l != 0 {
                let f = v[pivot] % l;
                for c in 0..4 {
                    let sub = arith::mul_mod(f, wr[c], l);
                    v[c] = (v[c] % l + l - sub) % l;
                }
            }
        }
        v.iter().all(|&x| x % l == 0)
    };
    let mut found = Vec::new();
    'plane: for w in planes_mod(l) {
        for c1 in 0..l {
            for c2 in 0..l {
                if c1 == 0 && c2 == 0 {
                    continue;
                }
                let mut v = [0u64; 4];
                for t in 0..4 {
                    v[t] = (arith::mul_mod(c1, w[0][t], l) + arith::mul_mod(c2, w[1][t], l)) % l;
                }
                if qval(&v) != 0 {
                    continue 'plane;
                }
            }
        }
        for act in &actions {
            for wr in &w {
                if !in_plane(&apply(wr, act), &w) {
                    continue 'plane;
                }
            }
        }
        // J = ℓ·I + lifts of the plane
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for r in 0..4 {
            rows.push(mat.row_vec(r).iter().map(|x| x * &lb).collect());
        }
        for wr in &w {
            let mut lift = vec![BigInt::zero(); 4];
            for (r, &coef) in wr.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let cb = BigInt::from(coef);
                for (lc, mc) in lift.iter_mut().zip(mat.row_vec(r)) {
                    *lc += &cb * &mc;
                }
            }
            rows.push(lift);
        }
        let j = Lattice::from_int_rows(&IntMatrix::from_rows(rows))
            .scale(&Rat::new(BigInt::one(), den.clone()));
        let sj = norm_gcd(&q.alg, &j);
        assert_eq!(sj, &s * Rat::from_integer(lb.clone()), "neighbor norm");
        found.push(content_reduce(&j));
    }
    assert_eq!(found.len(), (l + 1) as usize, "neighbor count");
    found
}

/// Enumerate the left ideal classes by neighbor expansion from the order,
/// stopping exactly when the mass identity is saturated.
pub fn ideal_classes(q: &QuaternionData) -> Result<IdealClassSet> {
    let target = Rat::new(BigInt::from(q.n - 1), BigInt::from(12u32));
    let mut set = IdealClassSet {
        classes: vec![q.order.clone()],
        weights: Vec::new(),
        right_orders: Vec::new(),
        units: Vec::new(),
    };
    let ro = right_order(q, &q.order);
    assert!(lat_eq(&ro, &q.order), "the order is its own right order");
    let units = order_units(q, &ro);
    assert!(units.len() % 2 == 0 && !units.is_empty());
    set.weights.push((units.len() / 2) as u64);
    set.right_orders.push(ro);
    set.units.push(units);
    let mut mass = set.mass();
    let l = if q.n == 2 { 3 } else { 2 };
    let mut queue = VecDeque::from([0usize]);
    while mass < target {
        let i = queue.pop_front().expect("neighbor graph is connected");
        let rep = set.classes[i].clone();
        for j in neighbors(q, &rep, l) {
            if set.classes.iter().any(|c| equivalent_ideals(q, &j, c)) {
                continue;
            }
            let ro = right_order(q, &j);
            let units = order_units(q, &ro);
            assert!(units.len() % 2 == 0 && !units.is_empty());
            let w = (units.len() / 2) as u64;
            set.classes.push(j);
            set.weights.push(w);
            set.right_orders.push(ro);
            set.units.push(units);
            queue.push_back(set.classes.len() - 1);
            let t = &mass + Rat::new(BigInt::one(), BigInt::from(w));
            mass = t;
            if mass > target {
                return Err(Error::MassOverflow);
            }
        }
    }
    assert_eq!(mass, target, "mass identity");
    Ok(set)
}

/// Embedding counts of the quadratic order of discriminant `−d` into the
/// right orders of the ideal classes, modulo unit conjugation.
pub struct GrossVector {
    pub d: u64,
    /// `(1/2u(−d)) · Σ h_i(−d) [E_i]` as coordinates over the classes.
    pub chi: Vec<Rat>,
    /// The degree-zero part: `chi − (12/(N−1)) · deg(chi) · a_E`.
    pub chi0: Vec<Rat>,
    pub embedding_numbers: Vec<u64>,
}

/// The ideal classes together with cached Brandt matrices.
pub struct BrandtModule {
    quat: QuaternionData,
    classes: IdealClassSet,
    /// `[i][j]`: normalized Gram of `conj(I_j)·I_i`, whose vectors of
    /// normalized norm `m` are counted by the `(i, j)` Brandt entry.
    pair_grams: Vec<Vec<IntMatrix>>,
    cache: Mutex<BTreeMap<u64, IntMatrix>>,
}

impl BrandtModule {
    pub fn new(n: u64) -> Result<Self> {
        let quat = build_quaternion(n)?;
        let classes = ideal_classes(&quat)?;
        let g1 = classes.count();
        let t = BigInt::from(n);
        let mut pair_grams = Vec::with_capacity(g1);
        for i in 0..g1 {
            let mut row = Vec::with_capacity(g1);
            for j in 0..g1 {
                let m = lat_mul(
                    &quat.alg,
                    &lat_conj(&classes.classes[j]),
                    &classes.classes[i],
                );
                let (g, _) = normalized_gram(&quat.alg, &m);
                assert_eq!(abs_det(&g), &t * &t, "pair lattice must be invertible");
                row.push(g);
            }
            pair_grams.push(row);
        }
        Ok(BrandtModule {
            quat,
            classes,
            pair_grams,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn level(&self) -> u64 {
        self.quat.n
    }

    pub fn quaternion(&self) -> &QuaternionData {
        &self.quat
    }

    pub fn class_set(&self) -> &IdealClassSet {
        &self.classes
    }

    pub fn count(&self) -> usize {
        self.classes.count()
    }

    pub fn mass(&self) -> Rat {
        self.classes.mass()
    }

    /// The Brandt matrix `B(m)`: entry `(i, j)` counts elements of
    /// `conj(I_j)·I_i` of normalized norm `m`, divided by `2w_j`. Acts on
    /// row vectors of class coordinates from the right.
    pub fn brandt_matrix(&self, m: u64) -> IntMatrix {
        assert!(m >= 1, "matrix index must be positive");
        if let Some(hit) = self.cache.lock().unwrap().get(&m) {
            return hit.clone();
        }
        let g1 = self.count();
        let target = BigInt::from(2 * m);
        let mat = IntMatrix::from_fn(g1, g1, |i, j| {
            let c = count_by_norm(&self.pair_grams[i][j], &target);
            let w2 = 2 * self.classes.weights[j] as usize;
            assert_eq!(c % w2, 0, "unit group acts freely on the count");
            BigInt::from(c / w2)
        });
        self.cache.lock().unwrap().insert(m, mat.clone());
        mat
    }

    /// All-ones functional on class coordinates.
    pub fn deg(v: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for x in v {
            let t = &s + x;
            s = t;
        }
        s
    }

    /// The weight-reciprocal vector `a_E`, a row eigenvector of every
    /// `B(m)` with eigenvalue `σ₁(m)`.
    pub fn a_e(&self) -> Vec<Rat> {
        self.classes
            .weights
            .iter()
            .map(|w| Rat::new(BigInt::one(), BigInt::from(*w)))
            .collect()
    }

    /// Saturated staircase basis of the degree-zero subspace.
    pub fn degree_zero_basis(&self) -> IntMatrix {
        let g1 = self.count();
        assert!(g1 >= 1);
        IntMatrix::from_fn(g1 - 1, g1, |r, c| {
            if c == r {
                BigInt::one()
            } else if c == r + 1 {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Optimal embedding counts `h_i(−d)` of the maximal quadratic order of
    /// fundamental discriminant `−d` into each right order, modulo unit
    /// conjugation. Computed by counting trace-zero images `2x − tr(x)` of
    /// norm `d` and partitioning them into unit orbits.
    pub fn embedding_numbers(&self, d: u64) -> Result<Vec<u64>> {
        arith::class_number_unit(d)?;
        if arith::gcd_u64(d, self.quat.n) != 1 {
            return Err(Error::NotCoprime(d, self.quat.n));
        }
        let alg = &self.quat.alg;
        let mut out = Vec::with_capacity(self.count());
        for i in 0..self.count() {
            let ord = &self.classes.right_orders[i];
            let b = ord.basis();
            let mut rows = Vec::new();
            for r in 0..4 {
                let u = row_quat(&b, r);
                let t = Alg::trace(&u);
                let z = [
                    &u[0] + &u[0] - &t,
                    &u[1] + &u[1],
                    &u[2] + &u[2],
                    &u[3] + &u[3],
                ];
                rows.push(z.to_vec());
            }
            let tz = Lattice::from_rat_rows(&RatMatrix::from_rows(rows));
            assert_eq!(tz.rank(), 3, "trace-zero image has rank three");
            let zb = tz.basis();
            let zrows: Vec<Quat> = (0..3).map(|r| row_quat(&zb, r)).collect();
            let g =
                trace_gram(alg, &zrows).expect("trace-zero image of an order has integral Gram");
            let sols = enumerate_by_norm(&g, &BigInt::from(2 * d));
            // ambient coordinates of each solution
            let points: Vec<Quat> = sols
                .iter()
                .map(|coords| {
                    let mut z = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
                    for (r, c) in coords.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let cr = Rat::from_integer(c.clone());
                        for (zc, bc) in z.iter_mut().zip(zrows[r].iter()) {
                            let t = &*zc + &cr * bc;
                            *zc = t;
                        }
                    }
                    z
                })
                .collect();
            let index: BTreeMap<Vec<Rat>, usize> = points
                .iter()
                .enumerate()
                .map(|(k, z)| (z.to_vec(), k))
                .collect();
            // orbits under conjugation by the unit group
            let mut seen = vec![false; points.len()];
            let mut orbits = 0u64;
            for start in 0..points.len() {
                if seen[start] {
                    continue;
                }
                orbits += 1;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(k) = stack.pop() {
                    for u in &self.classes.units[i] {
                        let zu = alg.mul(&alg.mul(&Alg::conj(u), &points[k]), u);
                        let t = index[zu.as_slice()];
                        if !seen[t] {
                            seen[t] = true;
                            stack.push(t);
                        }
                    }
                }
            }
            out.push(orbits);
        }
        Ok(out)
    }

    /// The degree-zero class vector built from the embedding counts of
    /// discriminant `−d`.
    pub fn gross_vector(&self, d: u64) -> Result<GrossVector> {
        let h = self.embedding_numbers(d)?;
        let (_, u) = arith::class_number_unit(d)?;
        let chi: Vec<Rat> = h
            .iter()
            .map(|hi| Rat::new(BigInt::from(*hi), BigInt::from(2 * u)))
            .collect();
        let degchi = Self::deg(&chi);
        let ae = self.a_e();
        let f = &degchi * Rat::new(BigInt::from(12u32), BigInt::from(self.quat.n - 1));
        let chi0: Vec<Rat> = chi
            .iter()
            .zip(ae.iter())
            .map(|(c, a)| c - &f * a)
            .collect();
        assert!(Self::deg(&chi0).is_zero(), "degree-zero projection");
        Ok(GrossVector {
            d,
            chi,
            chi0,
            embedding_numbers: h,
        })
    }
}

fn row_mul(v: &[Rat], m: &RatMatrix) -> Vec<Rat> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![Rat::zero(); m.cols()];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, oj) in out.iter_mut().enumerate() {
            let a = &m[(i, j)];
            if !a.is_zero() {
                let t = &*oj + vi * a;
                *oj = t;
            }
        }
    }
    out
}

/// Index of the projected span of the winding multiple of the degree-zero
/// class vector inside the projected degree-zero lattice, computed entirely
/// on the quaternionic side. The factor `f` selects the isotypic piece by
/// matching its eigenvalue polynomials against the Brandt action; the value
/// is meaningful away from `2` and the primes of `d`.
pub fn brandt_index(f: &NewformFactor<'_>, m: &BrandtModule, d: u64) -> Result<Rat> {
    let n = m.level();
    if f.level() != n {
        return Err(Error::EigenvalueMismatch);
    }
    let g1 = m.count();
    let p0 = m.degree_zero_basis();
    let g = p0.rows();
    let bound = std::cmp::max(13, crate::newform::sturm_index(n));
    let primes: Vec<u64> = arith::primes_up_to(bound)
        .into_iter()
        .filter(|l| n % l != 0)
        .collect();
    let mut restricted = BTreeMap::new();
    for &l in &primes {
        restricted.insert(l, restrict_to_subspace(&p0, &m.brandt_matrix(l)));
    }
    let mut pieces = vec![IntMatrix::identity(g)];
    for op in restricted.values() {
        let mut next = Vec::new();
        for piece in pieces {
            next.extend(split_primary(piece, op));
        }
        pieces = next;
    }
    let matches: Vec<usize> = (0..pieces.len())
        .filter(|&k| {
            primes.iter().all(|l| match f.eigen_charpoly(*l) {
                None => true,
                Some(want) => {
                    let cp = charpoly(&restrict_to_subspace(&pieces[k], &restricted[l]));
                    ZPoly::new(cp) == *want
                }
            })
        })
        .collect();
    if matches.is_empty() {
        return Err(Error::EigenvalueMismatch);
    }
    assert_eq!(matches.len(), 1, "eigenvalue systems determine the piece");
    let sel = matches[0];
    let dim = pieces[sel].rows();
    assert_eq!(dim, f.dim(), "matched piece has the factor's dimension");
    let mut stacked = pieces[sel].clone();
    for (k, piece) in pieces.iter().enumerate() {
        if k != sel {
            stacked = stacked.stack(piece);
        }
    }
    assert_eq!(stacked.rows(), g);
    let ident = IntMatrix::from_fn(g, dim, |r, c| {
        if r == c {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let proj = solve_dixon(&stacked, &ident).expect("pieces stack to an invertible matrix");
    // express the class vector in degree-zero coordinates
    let gv = m.gross_vector(d)?;
    let nw = winding_multiple(n)?;
    let v: Vec<Rat> = gv
        .chi0
        .iter()
        .map(|c| c * Rat::from_integer(BigInt::from(nw)))
        .collect();
    assert_eq!(v.len(), g1);
    let vm = RatMatrix::from_rows(vec![v]);
    let (vint, vden) = vm.clear_denominators();
    let sol = solve_triangular(&p0, &vint).expect("degree-zero vectors lie in the staircase span");
    let vp0: Vec<Rat> = (0..g)
        .map(|c| &sol[(0, c)] / Rat::from_integer(vden.clone()))
        .collect();
    let vproj = row_mul(&vp0, &proj);
    if vproj.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let ops: Vec<IntMatrix> = restricted
        .values()
        .map(|t| restrict_to_subspace(&pieces[sel], t))
        .collect();
    let span = span_closure(&vproj, ops.iter());
    let image = Lattice::from_rat_rows(&proj);
    lattice_index(&image, &span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsym;
    use crate::newform;
    use crate::ratlattice::{away_from, primes_with_two};

    #[test]
    fn probe_hurwitz_product() {
        let q = build_quaternion(2).unwrap();
        println!("order basis:\n{:?}", q.order.basis());
        let c = lat_conj(&q.order);
        println!("conj basis:\n{:?}", c.basis());
        let prod = lat_mul(&q.alg, &c, &q.order);
        println!("prod basis:\n{:?}", prod.basis());
        let s = norm_gcd(&q.alg, &prod);
        println!("norm gcd: {s}");
        let scaled = prod.scale(&s.recip());
        println!("scaled basis:\n{:?}", scaled.basis());
        let rows = lattice_rows(&prod);
        for (r, u) in rows.iter().enumerate() {
            for v in rows.iter() {
                let p = q.alg.polar(u, v);
                if !p.is_integer() {
                    println!("non-integral polar at row {r}: {p}");
                }
            }
        }
    }

    fn sigma1(m: u64) -> u64 {
        arith::divisors(m).into_iter().sum()
    }

    #[test]
    fn constructor_rejects_composite_levels() {
        assert!(matches!(build_quaternion(1), Err(Error::NotPrime(1))));
        assert!(matches!(build_quaternion(12), Err(Error::NotPrime(12))));
        assert!(matches!(build_quaternion(91), Err(Error::NotPrime(91))));
    }

    #[test]
    fn orders_are_certified_across_residue_classes() {
        // covers 2, 3 mod 4, 5 mod 8, and 1 mod 8 (including an auxiliary
        // prime larger than three)
        for n in [2u64, 3, 11, 17, 37, 41, 89, 97, 101, 193] {
            let q = build_quaternion(n).unwrap();
            let t = BigInt::from(n);
            assert_eq!(abs_det(q.gram()), &t * &t, "level {n}");
            // the norm form takes the value n (ramification witness)
            if n <= 43 {
                let (g, s) = normalized_gram(&q.alg, q.order());
                assert!(s.is_one());
                assert!(count_by_norm(&g, &BigInt::from(2 * n)) > 0, "level {n}");
            }
        }
    }

    #[test]
    fn gram_determinant_matches_the_level_squared_at_eleven() {
        let q = build_quaternion(11).unwrap();
        assert_eq!(abs_det(q.gram()), BigInt::from(121));
        assert_eq!(q.structure_constants(), (1, 11));
    }

    #[test]
    fn class_counts_weights_and_mass_at_small_levels() {
        let q2 = build_quaternion(2).unwrap();
        let c2 = ideal_classes(&q2).unwrap();
        assert_eq!(c2.count(), 1);
        assert_eq!(c2.weights(), &[12]);

        let q3 = build_quaternion(3).unwrap();
        let c3 = ideal_classes(&q3).unwrap();
        assert_eq!(c3.count(), 1);
        assert_eq!(c3.weights(), &[6]);

        let q11 = build_quaternion(11).unwrap();
        let c11 = ideal_classes(&q11).unwrap();
        assert_eq!(c11.count(), 2);
        let mut w = c11.weights().to_vec();
        w.sort_unstable();
        assert_eq!(w, vec![2, 3]);
        assert_eq!(c11.mass(), Rat::new(BigInt::from(10), BigInt::from(12)));

        let q37 = build_quaternion(37).unwrap();
        let c37 = ideal_classes(&q37).unwrap();
        assert_eq!(c37.count(), 3);
    }

    #[test]
    fn class_counts_match_the_genus_formula() {
        for n in [11u64, 17, 19, 23, 29, 31, 37] {
            let q = build_quaternion(n).unwrap();
            let c = ideal_classes(&q).unwrap();
            assert_eq!(
                c.count() as u64,
                arith::genus_x0(n) + 1,
                "class count at level {n}"
            );
        }
    }

    #[test]
    fn mass_identity_holds_for_primes_up_to_fifty() {
        for n in arith::primes_up_to(50) {
            let q = build_quaternion(n).unwrap();
            let c = ideal_classes(&q).unwrap();
            assert_eq!(
                c.mass(),
                Rat::new(BigInt::from(n - 1), BigInt::from(12u32)),
                "mass at level {n}"
            );
        }
    }

    #[test]
    fn unit_matrix_is_the_identity() {
        for n in [11u64, 37] {
            let m = BrandtModule::new(n).unwrap();
            assert_eq!(m.brandt_matrix(1), IntMatrix::identity(m.count()));
        }
    }

    #[test]
    fn second_matrix_at_level_eleven_has_the_expected_spectrum() {
        let m = BrandtModule::new(11).unwrap();
        let b2 = m.brandt_matrix(2);
        // eigenvalues 3 (weight vector) and −2: charpoly x² − x − 6
        assert_eq!(
            charpoly(&b2),
            vec![BigInt::from(-6), BigInt::from(-1), BigInt::from(1)]
        );
    }

    #[test]
    fn row_sums_symmetry_commutativity_and_composite_indices() {
        for n in [11u64, 37] {
            let m = BrandtModule::new(n).unwrap();
            let w = m.class_set().weights().to_vec();
            for l in [2u64, 3, 5, 7, 4, 6] {
                let b = m.brandt_matrix(l);
                for i in 0..m.count() {
                    let sum: BigInt = (0..m.count()).map(|j| b[(i, j)].clone()).sum();
                    assert_eq!(sum, BigInt::from(sigma1(l)), "row sum at ({n}, {l})");
                }
                for i in 0..m.count() {
                    for j in 0..m.count() {
                        assert_eq!(
                            &b[(i, j)] * BigInt::from(w[j]),
                            &b[(j, i)] * BigInt::from(w[i]),
                            "weighted symmetry at ({n}, {l})"
                        );
                    }
                }
            }
            let b2 = m.brandt_matrix(2);
            let b3 = m.brandt_matrix(3);
            assert_eq!(b2.mul(&b3), b3.mul(&b2));
            assert_eq!(b2.mul(&b3), m.brandt_matrix(6));
            // B(ℓ)² = B(ℓ²) + ℓ·B(1)
            let lhs = b2.mul(&b2);
            let rhs = m
                .brandt_matrix(4)
                .add(&IntMatrix::identity(m.count()).scale(&BigInt::from(2)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn weight_vector_is_a_row_eigenvector() {
        let m = BrandtModule::new(37).unwrap();
        let ae = m.a_e();
        for l in [2u64, 3, 5, 7] {
            let b = m.brandt_matrix(l).to_rat();
            let img = row_mul(&ae, &b);
            let want: Vec<Rat> = ae
                .iter()
                .map(|x| x * Rat::from_integer(BigInt::from(l + 1)))
                .collect();
            assert_eq!(img, want, "eigenvalue at {l}");
        }
    }

    #[test]
    fn eigenvalue_systems_match_the_symbol_route() {
        for n in [11u64, 37, 43] {
            let m = BrandtModule::new(n).unwrap();
            let p0 = m.degree_zero_basis();
            let sp = modsym::build_space(n).unwrap();
            for l in [2u64, 3] {
                let quat_side = charpoly(&restrict_to_subspace(&p0, &m.brandt_matrix(l)));
                let symbol_side = charpoly(&sp.hecke_on_cuspidal(l).unwrap());
                let q = ZPoly::new(quat_side);
                assert_eq!(
                    q.mul(&q),
                    ZPoly::new(symbol_side),
                    "spectra at level {n}, operator {l}"
                );
            }
        }
    }

    #[test]
    fn embedding_counts_vanish_in_the_split_case() {
        let m = BrandtModule::new(11).unwrap();
        assert_eq!(arith::kronecker(-7, 11), 1);
        assert_eq!(m.embedding_numbers(7).unwrap(), vec![0, 0]);
    }

    #[test]
    fn embedding_count_totals_match_the_class_number() {
        for n in [11u64, 37] {
            let m = BrandtModule::new(n).unwrap();
            for d in [3u64, 4, 8, 19, 23] {
                let h = m.embedding_numbers(d).unwrap();
                let total: u64 = h.iter().sum();
                let (hd, _) = arith::class_number_unit(d).unwrap();
                let factor = 1 - arith::kronecker(-(d as i64), n as i64);
                assert_eq!(
                    total,
                    factor as u64 * hd,
                    "embedding total at ({n}, {d})"
                );
            }
        }
    }

    #[test]
    fn embedding_numbers_respect_their_preconditions() {
        let m = BrandtModule::new(11).unwrap();
        assert!(matches!(
            m.embedding_numbers(5),
            Err(Error::NotFundamental(-5))
        ));
        assert!(matches!(
            m.embedding_numbers(11),
            Err(Error::NotCoprime(11, 11))
        ));
    }

    #[test]
    fn class_vectors_have_degree_zero_and_integral_multiples() {
        for n in [11u64, 37, 67] {
            let m = BrandtModule::new(n).unwrap();
            let nw = winding_multiple(n).unwrap();
            for d in [3u64, 4, 7, 8] {
                if arith::kronecker(-(d as i64), n as i64) != -1 {
                    continue;
                }
                let gv = m.gross_vector(d).unwrap();
                assert!(BrandtModule::deg(&gv.chi0).is_zero());
                assert!(!gv.chi.iter().all(|x| x.is_zero()), "({n}, {d})");
                for c in &gv.chi0 {
                    assert!(
                        (c * Rat::from_integer(BigInt::from(nw))).is_integer(),
                        "integral multiple at ({n}, {d})"
                    );
                }
            }
        }
    }

    #[test]
    fn split_case_gives_the_zero_class_vector() {
        let m = BrandtModule::new(11).unwrap();
        let gv = m.gross_vector(7).unwrap();
        assert!(gv.chi.iter().all(|x| x.is_zero()));
        assert!(gv.chi0.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn index_route_matches_the_symbol_route() {
        for (n, d) in [(11u64, 3u64), (11, 4), (17, 3)] {
            let sp = modsym::build_space(n).unwrap();
            let factors = newform::decompose(&sp);
            assert_eq!(factors.len(), 1);
            let f = &factors[0];
            let m = BrandtModule::new(n).unwrap();
            let idx = brandt_index(f, &m, d).unwrap();
            assert!(idx.is_positive());
            let lp = newform::lratio_plus(f).unwrap();
            let tw = newform::twisted_index(f, d).unwrap();
            let nw = Rat::from_integer(BigInt::from(winding_multiple(n).unwrap()));
            let lhs = &lp.value * &tw.value * &nw * &nw;
            let bad = primes_with_two(d);
            let l = away_from(&bad, &lhs).unwrap();
            let r = away_from(&bad, &(&idx * &idx)).unwrap();
            assert_eq!(l, r, "cross-route identity at ({n}, {d})");
            // the shared value is a perfect square away from 2 and d
            assert_eq!(away_from(&bad, &idx).unwrap().pow(2), l);
        }
    }

    #[test]
    fn index_route_signals_vanishing_and_mismatches() {
        let sp = modsym::build_space(11).unwrap();
        let factors = newform::decompose(&sp);
        let f = &factors[0];
        let m11 = BrandtModule::new(11).unwrap();
        assert!(matches!(
            brandt_index(f, &m11, 7),
            Err(Error::ZeroVector)
        ));
        let m37 = BrandtModule::new(37).unwrap();
        assert!(matches!(
            brandt_index(f, &m37, 3),
            Err(Error::EigenvalueMismatch)
        ));
    }

    #[test]
    fn index_route_separates_the_factors_at_thirty_seven() {
        // at level 37 the rank-one factor pairs to zero against every
        // class vector while the rank-zero factor gives a positive index
        let sp = modsym::build_space(37).unwrap();
        let factors = newform::decompose(&sp);
        assert_eq!(factors.len(), 2);
        let m = BrandtModule::new(37).unwrap();
        let mut zero = 0;
        let mut positive = 0;
        for f in &factors {
            match brandt_index(f, &m, 3) {
                Err(Error::ZeroVector) => zero += 1,
                Ok(v) => {
                    assert!(v.is_positive());
                    positive += 1;
                }
                other => panic!("unexpected outcome {other:?}"),
            }
        }
        assert_eq!((zero, positive), (1, 1));
    }
}
