//! Weight-two symbol spaces for Γ₀(N).
//!
//! The space is presented by generators indexed by P¹(ℤ/N) subject to the
//! two- and three-term relations; elements are rational coordinate vectors
//! over the surviving free generators. The module provides the boundary map
//! to cusp classes, the integral structure, the star involution, Hecke
//! operators, the winding element {0,∞}, and twisted winding elements.
//!
//! Orientation conventions, fixed once and used everywhere: the generator
//! indexed by (c:d) with unimodular lift [a, b; c, d] is the class of the
//! geodesic path from b/d to a/c, and the boundary of a path from α to β is
//! (α) − (β). Operators act on row vectors by right multiplication.

pub mod cusps;
pub(crate) mod heilbronn;
pub mod p1;
pub(crate) mod relations;

pub use cusps::Cusp;

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{
    hnf_basis, left_kernel, solve_dixon, solve_triangular, split_primary, IntMatrix, RatMatrix,
};
use crate::ratlattice::{Lattice, Rat};
use cusps::CuspClasses;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use p1::P1List;
use relations::SparseVec;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// The symbol space for one level, immutable after construction apart from
/// internal caches (which fill concurrently and idempotently).
pub struct ModSymSpace {
    level: u64,
    p1: P1List,
    dim: usize,
    free: Vec<usize>,
    classes: Vec<SparseVec>,
    cusp_reps: Vec<Cusp>,
    /// dim × (number of cusp classes); row k is the boundary of generator k.
    boundary: RatMatrix,
    /// ℤ-span of all generator classes; contains ℤ^dim with finite index.
    image: Lattice,
    /// Integral homology model: kernel of the boundary inside `image`.
    cuspidal: Lattice,
    /// Star involution on the free-generator coordinates.
    star_full: RatMatrix,
    /// Star involution in the basis of `image` (integral by construction).
    star_int: IntMatrix,
    pm: OnceLock<(Lattice, Lattice)>,
    /// Rows: cuspidal scaled basis, then a basis of the complementary
    /// generalized eigenspace; stored transposed for column solves.
    splitter: OnceLock<IntMatrix>,
    eis: OnceLock<IntMatrix>,
    hecke_cache: RwLock<HashMap<u64, Arc<RatMatrix>>>,
}

/// An element of the space: rational coordinates over the free generators.
#[derive(Clone)]
pub struct SymElt<'a> {
    space: &'a ModSymSpace,
    coords: Vec<Rat>,
}

impl PartialEq for SymElt<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.space, other.space) && self.coords == other.coords
    }
}

impl Eq for SymElt<'_> {}

impl std::fmt::Debug for SymElt<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SymElt(level {}, [{}])",
            self.space.level,
            self.coords
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl<'a> SymElt<'a> {
    fn new(space: &'a ModSymSpace, coords: Vec<Rat>) -> Self {
        debug_assert_eq!(coords.len(), space.dim);
        SymElt { space, coords }
    }

    pub fn space(&self) -> &'a ModSymSpace {
        self.space
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    fn assert_same_space(&self, other: &SymElt<'_>) {
        assert!(
            std::ptr::eq(self.space, other.space),
            "elements belong to different spaces"
        );
    }

    pub fn add(&self, other: &SymElt<'a>) -> SymElt<'a> {
        self.assert_same_space(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        SymElt::new(self.space, coords)
    }

    pub fn sub(&self, other: &SymElt<'a>) -> SymElt<'a> {
        self.assert_same_space(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        SymElt::new(self.space, coords)
    }

    pub fn neg(&self) -> SymElt<'a> {
        SymElt::new(self.space, self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Rat) -> SymElt<'a> {
        SymElt::new(self.space, self.coords.iter().map(|a| a * k).collect())
    }

    /// Coefficient vector of the boundary divisor over the cusp classes.
    pub fn boundary_vec(&self) -> Vec<Rat> {
        rat_row_mul(&self.coords, &self.space.boundary)
    }

    pub fn is_cuspidal(&self) -> bool {
        self.boundary_vec().iter().all(|x| x.is_zero())
    }

    /// Apply a full-space operator matrix (e.g. a Hecke matrix).
    pub fn apply(&self, m: &RatMatrix) -> SymElt<'a> {
        SymElt::new(self.space, rat_row_mul(&self.coords, m))
    }
}

/// Row vector times rational matrix.
fn rat_row_mul(v: &[Rat], m: &RatMatrix) -> Vec<Rat> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![Rat::zero(); m.cols()];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for j in 0..m.cols() {
            let a = &m[(i, j)];
            if !a.is_zero() {
                let t = &out[j] + vi * a;
                out[j] = t;
            }
        }
    }
    out
}

/// Exact division of a solved rational matrix by a scalar, asserting that
/// the result is integral.
fn rat_div_to_int(x: &RatMatrix, den: &BigInt, what: &str) -> IntMatrix {
    let d = Rat::from_integer(den.clone());
    IntMatrix::from_fn(x.rows(), x.cols(), |i, j| {
        let q = &x[(i, j)] / &d;
        assert!(q.is_integer(), "{what}: non-integral entry");
        q.to_integer()
    })
}

impl ModSymSpace {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Representatives of the generator index set P¹(ℤ/N).
    pub fn generators(&self) -> &[(u64, u64)] {
        self.p1.reps()
    }

    pub fn full_space_dim(&self) -> usize {
        self.dim
    }

    pub fn cuspidal(&self) -> &Lattice {
        &self.cuspidal
    }

    pub fn boundary(&self) -> &RatMatrix {
        &self.boundary
    }

    /// Star involution in the basis of the integral structure.
    pub fn star_matrix(&self) -> &IntMatrix {
        &self.star_int
    }

    /// ℤ-span of all generator classes.
    pub fn integral_structure(&self) -> &Lattice {
        &self.image
    }

    pub fn cusp_representatives(&self) -> &[Cusp] {
        &self.cusp_reps
    }

    pub fn cusp_class_index(&self, c: &Cusp) -> Option<usize> {
        self.cusp_reps
            .iter()
            .position(|r| cusps::cusps_equivalent(self.level, r, c))
    }

    /// Class of one generator as an element.
    pub fn generator_class(&self, i: usize) -> SymElt<'_> {
        SymElt::new(self, self.dense_class(i))
    }

    /// Oriented path `(start, end)` of the k-th free generator: the class of
    /// the k-th basis vector is the path `{start → end}`.
    pub fn free_generator_path(&self, k: usize) -> (Cusp, Cusp) {
        let g = self.p1.sl2_lift(self.free[k]);
        (
            Cusp::new(g[1].clone(), g[3].clone()),
            Cusp::new(g[0].clone(), g[2].clone()),
        )
    }

    fn dense_class(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        for (col, c) in &self.classes[i] {
            v[*col as usize] = c.clone();
        }
        v
    }

    /// Accumulate `sign · class(symbol index)` into a dense coordinate row.
    fn add_class(&self, row: &mut [Rat], i: usize, sign: i64) {
        if sign == 0 {
            return;
        }
        let s = Rat::from_integer(BigInt::from(sign));
        for (col, c) in &self.classes[i] {
            let t = &row[*col as usize] + c * &s;
            row[*col as usize] = t;
        }
    }

    /// Path from ∞ to p/q (q ≥ 0, reduced), emitted as signed generator
    /// indices via the continued-fraction expansion. q = 0 emits nothing.
    fn push_inf_to(&self, p: &BigInt, q: &BigInt, sign: i64, out: &mut Vec<(usize, i64)>) {
        debug_assert!(!q.is_negative());
        if q.is_zero() {
            return;
        }
        let mut num = p.clone();
        let mut den = q.clone();
        // Denominators of consecutive convergents, seeded at k = −2, −1.
        let mut q_prevprev = BigInt::one();
        let mut q_prev = BigInt::zero();
        let mut sgn = -1i64; // (−1)^(k−1) at the current step k
        loop {
            let ak = num.div_floor(&den);
            let r = &num - &ak * &den;
            let qk = &ak * &q_prev + &q_prevprev;
            let d_val = if sgn < 0 { -&q_prev } else { q_prev.clone() };
            let idx = self
                .p1
                .lookup_bigint(&qk, &d_val)
                .expect("consecutive convergent denominators are coprime");
            out.push((idx, sign));
            if r.is_zero() {
                break;
            }
            num = den;
            den = r;
            q_prevprev = std::mem::replace(&mut q_prev, qk);
            sgn = -sgn;
        }
    }

    /// Signed generator indices for the path from α to β.
    fn path_indices(&self, alpha: &Cusp, beta: &Cusp, out: &mut Vec<(usize, i64)>) {
        self.push_inf_to(beta.numer(), beta.denom(), 1, out);
        self.push_inf_to(alpha.numer(), alpha.denom(), -1, out);
    }

    fn indices_to_elt(&self, idx: &[(usize, i64)]) -> SymElt<'_> {
        let mut row = vec![Rat::zero(); self.dim];
        for &(i, s) in idx {
            self.add_class(&mut row, i, s);
        }
        SymElt::new(self, row)
    }

    /// Class of the geodesic path {α, β}.
    pub fn path_symbol(&self, alpha: &Cusp, beta: &Cusp) -> SymElt<'_> {
        let mut idx = Vec::new();
        self.path_indices(alpha, beta, &mut idx);
        self.indices_to_elt(&idx)
    }

    /// The element {0, ∞}.
    pub fn winding_symbol(&self) -> SymElt<'_> {
        self.path_symbol(&Cusp::zero(), &Cusp::infinity())
    }

    /// Star involution σ, induced by z ↦ −z̄ on the upper half plane.
    pub fn star(&self, x: &SymElt<'_>) -> SymElt<'_> {
        assert!(std::ptr::eq(x.space, self), "element from another space");
        SymElt::new(self, rat_row_mul(&x.coords, &self.star_full))
    }

    /// Hecke matrix on the full space: T_ℓ for ℓ ∤ N, U_ℓ for ℓ | N.
    /// Results are cached; concurrent calls are safe.
    pub fn hecke(&self, l: u64) -> Result<Arc<RatMatrix>> {
        if !arith::is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        if let Some(t) = self.hecke_cache.read().unwrap().get(&l) {
            return Ok(t.clone());
        }
        let computed = Arc::new(self.compute_hecke(l));
        let mut cache = self.hecke_cache.write().unwrap();
        Ok(cache.entry(l).or_insert(computed).clone())
    }

    fn compute_hecke(&self, l: u64) -> RatMatrix {
        if self.level % l != 0 {
            // Determinant-ℓ matrices act directly on generator indices:
            // they are invertible mod N, so every image is a valid index.
            let hs = heilbronn::full_family(l);
            let n = self.level;
            let mut rows = Vec::with_capacity(self.dim);
            for &sym in &self.free {
                let (c, d) = self.p1.reps()[sym];
                let (c, d) = (c as i64, d as i64);
                let mut row = vec![Rat::zero(); self.dim];
                for h in &hs {
                    let u = (c * h[0] + d * h[2]).rem_euclid(n as i64);
                    let v = (c * h[1] + d * h[3]).rem_euclid(n as i64);
                    let idx = self
                        .p1
                        .lookup_signed(u, v)
                        .expect("determinant coprime to the level");
                    self.add_class(&mut row, idx, 1);
                }
                rows.push(row);
            }
            RatMatrix::from_rows(rows)
        } else {
            // ℓ | N: sum over the ℓ cosets [1, r; 0, ℓ] acting on paths.
            let lb = BigInt::from(l);
            let mut rows = Vec::with_capacity(self.dim);
            for &sym in &self.free {
                let g = self.p1.sl2_lift(sym);
                let mut idx = Vec::new();
                for r in 0..l {
                    let rb = BigInt::from(r);
                    let start = Cusp::new(&g[1] + &rb * &g[3], &lb * &g[3]);
                    let end = Cusp::new(&g[0] + &rb * &g[2], &lb * &g[2]);
                    self.path_indices(&start, &end, &mut idx);
                }
                let mut row = vec![Rat::zero(); self.dim];
                for (i, s) in idx {
                    self.add_class(&mut row, i, s);
                }
                rows.push(row);
            }
            RatMatrix::from_rows(rows)
        }
    }

    /// Hecke matrix restricted to the cuspidal lattice, in its basis.
    /// Integral because the operator preserves the lattice.
    pub fn hecke_on_cuspidal(&self, l: u64) -> Result<IntMatrix> {
        let t = self.hecke(l)?;
        let (cs, _) = self.cuspidal.scaled_basis();
        let (r, rden) = cs.to_rat().mul(&t).clear_denominators();
        let x = solve_triangular(cs, &r).expect("Hecke preserves the cuspidal space");
        Ok(rat_div_to_int(&x, &rden, "Hecke on cuspidal lattice"))
    }

    /// Sublattices of the cuspidal lattice on which σ acts as +1 and −1.
    pub fn plus_minus_lattices(&self) -> &(Lattice, Lattice) {
        self.pm.get_or_init(|| {
            let (cs, cden) = self.cuspidal.scaled_basis();
            let rank = cs.rows();
            if rank == 0 {
                let l = Lattice::from_int_rows(&IntMatrix::zero(0, self.dim));
                return (l.clone(), l);
            }
            let (r, rden) = cs.to_rat().mul(&self.star_full).clear_denominators();
            let x = solve_triangular(cs, &r).expect("star preserves the cuspidal space");
            let sig = rat_div_to_int(&x, &rden, "star on cuspidal lattice");
            let eye = IntMatrix::identity(rank);
            let make = |k: &IntMatrix| {
                let b = k.mul(cs);
                let rows = RatMatrix::from_fn(b.rows(), b.cols(), |i, j| {
                    Rat::new(b[(i, j)].clone(), cden.clone())
                });
                Lattice::from_rat_rows(&rows)
            };
            let plus = make(&left_kernel(&sig.sub(&eye)));
            let minus = make(&left_kernel(&sig.add(&eye)));
            debug_assert_eq!(plus.rank() + minus.rank(), rank);
            (plus, minus)
        })
    }

    /// Rows spanning the Hecke-stable complement of the cuspidal space in
    /// the full space (cached). Primary pieces of the full space under
    /// successive good-prime operators are classified by their boundary:
    /// zero boundary means the piece lies in the cuspidal kernel, trivial
    /// intersection with that kernel makes it part of the complement, and
    /// anything mixed is split further. Eigenvalues on the boundary part
    /// have absolute value at least ℓ−1, which exceeds the cuspidal bound
    /// 2√ℓ once ℓ ≥ 7, so the iteration stops within a few primes.
    pub fn noncuspidal_complement(&self) -> &IntMatrix {
        self.eis.get_or_init(|| {
            let rank = self.cuspidal.rank();
            if rank == self.dim {
                return IntMatrix::zero(0, self.dim);
            }
            if rank == 0 {
                return IntMatrix::identity(self.dim);
            }
            let (cs, _) = self.cuspidal.scaled_basis();
            let mut undecided = vec![IntMatrix::identity(self.dim)];
            let mut complement: Vec<IntMatrix> = Vec::new();
            let mut l = 1u64;
            while !undecided.is_empty() {
                l = arith::next_prime(l);
                if self.level % l == 0 {
                    continue;
                }
                assert!(l < 100, "complement classification did not stop");
                let t = self.hecke(l).expect("good prime");
                let (ti, _) = t.clear_denominators();
                let mut next = Vec::new();
                for piece in undecided {
                    for sub in split_primary(piece, &ti) {
                        if sub.to_rat().mul(&self.boundary).is_zero() {
                            // inside the cuspidal kernel: not complement
                        } else if hnf_basis(&sub.stack(cs)).rows() == sub.rows() + rank {
                            complement.push(sub);
                        } else {
                            next.push(sub);
                        }
                    }
                }
                undecided = next;
            }
            let mut ek = IntMatrix::zero(0, self.dim);
            for c in &complement {
                ek = ek.stack(c);
            }
            assert_eq!(ek.rows(), self.dim - rank, "complement dimension mismatch");
            ek
        })
    }

    /// Square matrix whose first `rank(cuspidal)` columns span the cuspidal
    /// space and whose remaining columns span the complementary generalized
    /// eigenspace of a Hecke operator (transposed basis-stack, cached).
    fn splitter(&self) -> &IntMatrix {
        self.splitter.get_or_init(|| {
            let (cs, _) = self.cuspidal.scaled_basis();
            if cs.rows() == self.dim {
                return cs.transpose();
            }
            let st = cs.stack(self.noncuspidal_complement());
            st.transpose()
        })
    }

    /// Projection onto the cuspidal part, annihilating the complementary
    /// Hecke eigenspace. Identity on cuspidal elements; Hecke-equivariant.
    pub fn cuspidal_projection(&self, v: &SymElt<'_>) -> SymElt<'_> {
        assert!(std::ptr::eq(v.space, self), "element from another space");
        let rank = self.cuspidal.rank();
        if self.dim == 0 || rank == self.dim {
            return SymElt::new(self, v.coords.clone());
        }
        if v.is_zero() {
            return SymElt::new(self, v.coords.clone());
        }
        let st_t = self.splitter();
        let vr = RatMatrix::from_rows(vec![v.coords.clone()]);
        let (vi, vden) = vr.clear_denominators();
        let sol = solve_dixon(st_t, &vi.transpose()).expect("splitter is nonsingular");
        let (cs, _) = self.cuspidal.scaled_basis();
        let dv = Rat::from_integer(vden);
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..rank {
            let xi = &sol[(i, 0)] / &dv;
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let b = &cs[(i, j)];
                if !b.is_zero() {
                    let t = &out[j] + &xi * Rat::from_integer(b.clone());
                    out[j] = t;
                }
            }
        }
        SymElt::new(self, out)
    }

    /// Twisted winding element e_D = Σ_b χ_{−D}(b)·{−b/D, ∞} for a positive
    /// D with −D a fundamental discriminant coprime to the level.
    pub fn twisted_element(&self, d: u64) -> Result<SymElt<'_>> {
        let md = -(d as i64);
        if !arith::is_fundamental_discriminant(md) {
            return Err(Error::NotFundamental(md));
        }
        if arith::gcd_u64(d, self.level) != 1 {
            return Err(Error::NotCoprime(d, self.level));
        }
        let db = BigInt::from(d);
        let mut idx = Vec::new();
        for b in 0..d {
            let chi = arith::kronecker(md, b as i64);
            if chi == 0 {
                continue;
            }
            // {−b/D, ∞} = −(path from ∞ to −b/D)
            self.push_inf_to(&BigInt::from(-(b as i64)), &db, -chi, &mut idx);
        }
        Ok(self.indices_to_elt(&idx))
    }
}

/// Build the symbol space at level `n ≥ 1`.
pub fn build_space(n: u64) -> Result<ModSymSpace> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let p1 = P1List::new(n);
    let pres = relations::manin_quotient(&p1);
    let dim = pres.dim;

    // Cusp classes: seed with ∞ and 0, then classify the endpoints of every
    // free generator (these exhaust the classes, since the boundary image
    // spans all degree-zero divisors).
    let mut cc = CuspClasses::new(n);
    cc.classify(&Cusp::infinity());
    cc.classify(&Cusp::zero());
    let mut ends = Vec::with_capacity(pres.free.len());
    for &sym in &pres.free {
        let g = p1.sl2_lift(sym);
        let start = Cusp::new(g[1].clone(), g[3].clone());
        let end = Cusp::new(g[0].clone(), g[2].clone());
        ends.push((cc.classify(&start), cc.classify(&end)));
    }
    let ncusp = cc.len();
    assert_eq!(ncusp as u64, arith::num_cusps(n), "cusp class count");
    assert_eq!(
        dim as u64,
        2 * arith::genus_x0(n) + arith::num_cusps(n) - 1,
        "full-space dimension"
    );

    // Boundary of a path from α to β is (α) − (β).
    let one = Rat::one();
    let mut boundary = RatMatrix::zero(dim, ncusp);
    for (k, &(s, e)) in ends.iter().enumerate() {
        if s != e {
            let t = &boundary[(k, s)] + &one;
            boundary[(k, s)] = t;
            let t = &boundary[(k, e)] - &one;
            boundary[(k, e)] = t;
        }
    }

    // Star involution: the generator class of (c:d) maps to that of (−c:d).
    let dense = |i: usize| {
        let mut v = vec![Rat::zero(); dim];
        for (col, c) in &pres.classes[i] {
            v[*col as usize] = c.clone();
        }
        v
    };
    let star_full = RatMatrix::from_rows(
        pres.free
            .iter()
            .map(|&sym| dense(p1.star_image(sym)))
            .collect(),
    );

    // Integral structure: ℤ-span of all generator classes. Free generators
    // give unit vectors, so only classes with denominators add anything.
    let mut mrows: Vec<Vec<Rat>> = (0..dim)
        .map(|k| {
            let mut v = vec![Rat::zero(); dim];
            v[k] = Rat::one();
            v
        })
        .collect();
    for i in 0..p1.len() {
        if pres.classes[i].iter().any(|(_, c)| !c.is_integer()) {
            mrows.push(dense(i));
        }
    }
    let image = Lattice::from_rat_rows(&RatMatrix::from_rows(mrows));
    debug_assert_eq!(image.rank(), dim);

    // Star in the basis of the integral structure (integral: σ permutes the
    // generator classes).
    let (ms, _) = image.scaled_basis();
    let star_int = if dim == 0 {
        IntMatrix::zero(0, 0)
    } else {
        let (r, rden) = ms.to_rat().mul(&star_full).clear_denominators();
        let x = solve_triangular(ms, &r).expect("star preserves the integral structure");
        rat_div_to_int(&x, &rden, "star on integral structure")
    };

    // Cuspidal lattice: kernel of the boundary inside the integral
    // structure (saturated, since integer kernels of integer matrices are).
    let cuspidal = if dim == 0 {
        Lattice::from_int_rows(&IntMatrix::zero(0, 0))
    } else {
        let (b_int, _) = ms.to_rat().mul(&boundary).clear_denominators();
        let k = left_kernel(&b_int);
        let kb = k.mul(ms);
        let (_, mden) = image.scaled_basis();
        let rows = RatMatrix::from_fn(kb.rows(), kb.cols(), |i, j| {
            Rat::new(kb[(i, j)].clone(), mden.clone())
        });
        Lattice::from_rat_rows(&rows)
    };
    assert_eq!(
        cuspidal.rank() as u64,
        2 * arith::genus_x0(n),
        "cuspidal rank"
    );

    Ok(ModSymSpace {
        level: n,
        p1,
        dim,
        free: pres.free,
        classes: pres.classes,
        cusp_reps: cc.reps().to_vec(),
        boundary,
        image,
        cuspidal,
        star_full,
        star_int,
        pm: OnceLock::new(),
        splitter: OnceLock::new(),
        eis: OnceLock::new(),
        hecke_cache: RwLock::new(HashMap::new()),
    })
}

/// Class of the geodesic path {α, β} in the given space.
pub fn path_symbol<'a>(space: &'a ModSymSpace, alpha: &Cusp, beta: &Cusp) -> SymElt<'a> {
    space.path_symbol(alpha, beta)
}

/// Star involution applied to an element.
pub fn star<'a>(space: &'a ModSymSpace, x: &SymElt<'a>) -> SymElt<'a> {
    space.star(x)
}

/// (H⁺, H⁻): σ-fixed and σ-negated sublattices of the cuspidal lattice.
pub fn plus_minus_lattices(space: &ModSymSpace) -> &(Lattice, Lattice) {
    space.plus_minus_lattices()
}

/// Hecke matrix on the full space.
pub fn hecke(space: &ModSymSpace, l: u64) -> Result<Arc<RatMatrix>> {
    space.hecke(l)
}

/// The element {0, ∞}.
pub fn winding_symbol(space: &ModSymSpace) -> SymElt<'_> {
    space.winding_symbol()
}

/// Numerator of (N−1)/12 for prime N: the scalar that clears the
/// denominator of the cuspidal projection of {0, ∞}.
pub fn winding_multiple(n: u64) -> Result<u64> {
    if !arith::is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    Ok((n - 1) / arith::gcd_u64(n - 1, 12))
}

/// Twisted winding element e_D.
pub fn twisted_element(space: &ModSymSpace, d: u64) -> Result<SymElt<'_>> {
    space.twisted_element(d)
}
