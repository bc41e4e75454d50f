//! Splitting of the cuspidal symbol space into its ℚ-irreducible pieces
//! under the Hecke action, projections onto those pieces, and exact
//! lattice-index formulas for the algebraic parts of special L-values.
//!
//! A factor collects one Galois-conjugacy class of eigenforms: the quotient
//! map `proj` sends the full symbol space onto a 2d-dimensional coordinate
//! space on which every Hecke operator acts integrally. The algebraic part
//! of the central L-value is the index of the Hecke span of the (possibly
//! twisted) winding image inside the image of the appropriate half-integral
//! homology, exactly for the untwisted value and up to a power of two for
//! twists by odd quadratic characters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::elliptic::EllipticCurve;
use crate::error::{Error, Result};
use crate::linalg::{
    charpoly, hnf_basis, restrict_to_subspace, solve_dixon, split_primary, IntMatrix, RatMatrix,
};
use crate::modsym::{self, Cusp, ModSymSpace, SymElt};
use crate::polyz::ZPoly;
use crate::ratlattice::{away_from, lattice_index, Lattice, Rat};

/// Prime bound used when matching a curve's local point-count data against
/// the stored eigenvalue polynomials.
pub const MATCH_BOUND: u64 = 13;

/// Exact algebraic part of a special L-value. `two_ambiguity` marks values
/// that are only determined up to a power of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LRatio {
    pub value: Rat,
    pub two_ambiguity: bool,
}

impl LRatio {
    fn exact(value: Rat) -> LRatio {
        assert!(!value.is_negative(), "algebraic parts are non-negative");
        LRatio {
            value,
            two_ambiguity: false,
        }
    }

    fn up_to_two(value: Rat) -> LRatio {
        assert!(!value.is_negative(), "algebraic parts are non-negative");
        LRatio {
            value,
            two_ambiguity: true,
        }
    }

    /// The value with every factor of two removed from numerator and
    /// denominator (zero stays zero).
    pub fn odd_part(&self) -> Rat {
        if self.value.is_zero() {
            return Rat::zero();
        }
        away_from(&[2], &self.value).expect("nonzero value")
    }
}

/// One ℚ-irreducible Hecke constituent of the space of classes that vanish
/// at every properly lower level, together with the projection onto it.
pub struct NewformFactor<'a> {
    space: &'a ModSymSpace,
    level: u64,
    /// Half the coordinate dimension: the degree of the eigenvalue field.
    dim: usize,
    /// Basis of the factor inside the cuspidal coordinate space (saturated,
    /// in row-staircase form).
    basis_cusp: IntMatrix,
    /// Eigenvalue polynomials at the good primes; evaluated on the Hecke
    /// operators these cut the factor out of the cuspidal space.
    annihilator: Vec<(u64, ZPoly)>,
    /// Matrix of the projection: full coordinates → factor coordinates,
    /// acting on row vectors from the right.
    proj: RatMatrix,
    /// Degree-`dim` eigenvalue polynomial of each stored Hecke operator.
    eigen_charpolys: BTreeMap<u64, ZPoly>,
    /// Integral action of each stored Hecke operator on factor coordinates.
    action: BTreeMap<u64, IntMatrix>,
    /// Projection image of the +1 half of the integral homology.
    plus_image: Lattice,
    /// Projection image of the −1 half of the integral homology.
    minus_image: Lattice,
}

impl<'a> NewformFactor<'a> {
    pub fn space(&self) -> &'a ModSymSpace {
        self.space
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Degree of the eigenvalue field (the factor is 2·dim dimensional).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn proj(&self) -> &RatMatrix {
        &self.proj
    }

    /// Saturated integral basis of the factor inside the cuspidal
    /// coordinate space (row-staircase form).
    pub fn cuspidal_basis(&self) -> &IntMatrix {
        &self.basis_cusp
    }

    pub fn annihilator(&self) -> &[(u64, ZPoly)] {
        &self.annihilator
    }

    /// Degree-`dim` eigenvalue polynomial of the operator at `l`, when `l`
    /// is among the stored primes.
    pub fn eigen_charpoly(&self, l: u64) -> Option<&ZPoly> {
        self.eigen_charpolys.get(&l)
    }

    /// Integral matrix of the operator at `l` on factor coordinates.
    pub fn action(&self, l: u64) -> Option<&IntMatrix> {
        self.action.get(&l)
    }

    pub fn plus_image(&self) -> &Lattice {
        &self.plus_image
    }

    pub fn minus_image(&self) -> &Lattice {
        &self.minus_image
    }

    /// Factor coordinates of the image of a full-space element.
    pub fn project(&self, v: &SymElt<'_>) -> Vec<Rat> {
        assert!(
            std::ptr::eq(v.space(), self.space),
            "element from another space"
        );
        rat_row_mul(v.coords(), &self.proj)
    }

    /// ℤ-module generated by `v` under the stored operators: the closure of
    /// the span of `v` under every stored Hecke action.
    fn hecke_span_with<'m>(
        &self,
        v: &[Rat],
        ops: impl Iterator<Item = &'m IntMatrix> + Clone,
    ) -> Lattice {
        span_closure(v, ops)
    }

    /// Hecke span under the full stored generator set.
    fn hecke_span(&self, v: &[Rat]) -> Lattice {
        self.hecke_span_with(v, self.action.values())
    }
}

/// ℤ-module generated by a row vector under repeated application of the
/// given integer operators (acting from the right).
pub(crate) fn span_closure<'m>(
    v: &[Rat],
    ops: impl Iterator<Item = &'m IntMatrix> + Clone,
) -> Lattice {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let w: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let cols = w.len();
    let mut basis = hnf_basis(&IntMatrix::from_rows(vec![w]));
    loop {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..basis.rows() {
            rows.push(basis.row_vec(i));
        }
        for op in ops.clone() {
            for i in 0..basis.rows() {
                rows.push(op.act_on_row(&basis.row_vec(i)));
            }
        }
        let next = hnf_basis(&IntMatrix::from_rows(rows));
        if next == basis {
            break;
        }
        basis = next;
    }
    let dv = den.clone();
    Lattice::from_rat_rows(&RatMatrix::from_fn(basis.rows(), cols, |i, j| {
        Rat::new(basis[(i, j)].clone(), dv.clone())
    }))
}

impl std::fmt::Debug for NewformFactor<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "NewformFactor(level {}, dim {}, a-polys {:?})",
            self.level,
            self.dim,
            self.eigen_charpolys
                .iter()
                .map(|(l, p)| (*l, p.coeffs().to_vec()))
                .collect::<Vec<_>>()
        )
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

/// Index bound: operators (equivalently, coefficients) up to this index
/// generate the full Hecke ring as a ℤ-module in weight two.
pub(crate) fn sturm_index(n: u64) -> u64 {
    let mut mu = n;
    for p in arith::prime_divisors(n) {
        mu = mu / p * (p + 1);
    }
    (mu + 5) / 6
}

/// Primes coprime to the level, up to the larger of the generation bound
/// and the curve-matching bound.
fn anemic_primes(n: u64) -> Vec<u64> {
    let bound = sturm_index(n).max(MATCH_BOUND);
    arith::primes_up_to(bound)
        .into_iter()
        .filter(|&p| n % p != 0)
        .collect()
}

/// Exact square root of a polynomial all of whose irreducible factors occur
/// with even multiplicity.
fn sqrt_poly(p: &ZPoly) -> ZPoly {
    let (content, factors) = p.factor();
    assert!(content.is_one(), "square root of a monic polynomial");
    let mut out = ZPoly::one();
    for (h, e) in factors {
        assert!(e % 2 == 0, "factor multiplicities must be even");
        for _ in 0..e / 2 {
            out = out.mul(&h);
        }
    }
    out
}

/// Matrix of the level-lowering map induced by `z ↦ t·z`, from the full
/// space of `high` to the full space of `low`.
fn lowering_map(high: &ModSymSpace, low: &ModSymSpace, t: u64) -> RatMatrix {
    let tb = BigInt::from(t);
    let mut rows = Vec::with_capacity(high.full_space_dim());
    for k in 0..high.full_space_dim() {
        let (s, e) = high.free_generator_path(k);
        let sm = Cusp::new(s.numer() * &tb, s.denom().clone());
        let em = Cusp::new(e.numer() * &tb, e.denom().clone());
        rows.push(low.path_symbol(&sm, &em).coords().to_vec());
    }
    RatMatrix::from_rows(rows)
}

/// Constraint matrices (cuspidal coordinates × lower-space coordinates)
/// whose joint kernel is the part of the cuspidal space that dies at every
/// properly lower level.
fn lowering_constraints(space: &ModSymSpace) -> Vec<RatMatrix> {
    let n = space.level();
    let (cs, _) = space.cuspidal().scaled_basis();
    let mut out = Vec::new();
    for p in arith::prime_divisors(n) {
        let low = modsym::build_space(n / p).expect("positive divisor level");
        if low.cuspidal().rank() == 0 {
            continue;
        }
        for t in [1, p] {
            let map = lowering_map(space, &low, t);
            out.push(cs.to_rat().mul(&map));
        }
    }
    out
}

/// Decompose the part of the cuspidal space that is genuinely of the given
/// level into its ℚ-irreducible Hecke constituents.
pub fn decompose(space: &ModSymSpace) -> Vec<NewformFactor<'_>> {
    let n = space.level();
    let cusp = space.cuspidal();
    let twog = cusp.rank();
    if twog == 0 {
        return Vec::new();
    }
    let anemic = anemic_primes(n);
    let bad = arith::prime_divisors(n);

    let mut ops: BTreeMap<u64, IntMatrix> = BTreeMap::new();
    for &l in anemic.iter().chain(bad.iter()) {
        ops.insert(l, space.hecke_on_cuspidal(l).expect("prime index"));
    }

    // Joint primary decomposition under the operators away from the level.
    let mut pieces = vec![IntMatrix::identity(twog)];
    for &l in &anemic {
        pieces = pieces
            .into_iter()
            .flat_map(|p| split_primary(p, &ops[&l]))
            .collect();
    }

    // A piece survives at this level exactly when it dies under every
    // lowering map; pieces never straddle the two cases.
    let constraints = lowering_constraints(space);
    let is_new = |piece: &IntMatrix| constraints.iter().all(|c| piece.to_rat().mul(c).is_zero());
    let (mut new_pieces, old_pieces): (Vec<_>, Vec<_>) =
        pieces.into_iter().partition(|p| is_new(p));

    // The operators at the level's own primes act semisimply on the part
    // that is genuinely of this level and refine it further.
    for &l in &bad {
        new_pieces = new_pieces
            .into_iter()
            .flat_map(|p| split_primary(p, &ops[&l]))
            .collect();
    }

    let (cs, cden) = cusp.scaled_basis();
    let ek = space.noncuspidal_complement();
    // Images of 1 ± star on the integral cuspidal lattice. Their factor
    // projections are the lattices that normalize the special values: the
    // plus image corresponds to the full real-period measure of the
    // attached abelian variety (both real components when there are two).
    let star = space.star_matrix();
    let plus_full = cs.add(&cs.mul(star));
    let minus_full = cs.sub(&cs.mul(star));
    let cden_r = Rat::from_integer(cden.clone());

    let mut factors: Vec<NewformFactor<'_>> = Vec::new();
    for (fi, piece) in new_pieces.iter().enumerate() {
        let vf = piece.rows();
        assert!(vf % 2 == 0, "factors pair up under the star involution");
        let d = vf / 2;

        let mut action = BTreeMap::new();
        let mut eigen = BTreeMap::new();
        let mut annihilator = Vec::new();
        for (&l, op) in &ops {
            let tf = restrict_to_subspace(piece, op);
            let h = sqrt_poly(&ZPoly::new(charpoly(&tf)));
            assert_eq!(h.degree(), Some(d), "eigenvalue polynomial degree");
            if n % l != 0 {
                annihilator.push((l, h.clone()));
            }
            eigen.insert(l, h);
            action.insert(l, tf);
        }

        // Square change of basis: this piece first, then every other piece,
        // then the complement of the cuspidal space.
        let mut s = piece.mul(cs);
        for (oi, other) in new_pieces.iter().enumerate() {
            if oi != fi {
                s = s.stack(&other.mul(cs));
            }
        }
        for other in &old_pieces {
            s = s.stack(&other.mul(cs));
        }
        s = s.stack(ek);
        assert_eq!(s.rows(), space.full_space_dim(), "full change of basis");
        let sel = IntMatrix::from_fn(s.rows(), vf, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let proj = solve_dixon(&s, &sel).expect("change of basis is invertible");

        let project_lattice = |rows: &IntMatrix| {
            let img = rows.to_rat().mul(&proj);
            Lattice::from_rat_rows(&RatMatrix::from_fn(img.rows(), img.cols(), |i, j| {
                &img[(i, j)] / &cden_r
            }))
        };
        let plus_image = project_lattice(&plus_full);
        let minus_image = project_lattice(&minus_full);
        assert_eq!(plus_image.rank(), d, "plus image has full factor rank");
        assert_eq!(minus_image.rank(), d, "minus image has full factor rank");

        factors.push(NewformFactor {
            space,
            level: n,
            dim: d,
            basis_cusp: piece.clone(),
            annihilator,
            proj,
            eigen_charpolys: eigen,
            action,
            plus_image,
            minus_image,
        });
    }

    factors.sort_by(|a, b| {
        let ka: Vec<&ZPoly> = a.eigen_charpolys.values().collect();
        let kb: Vec<&ZPoly> = b.eigen_charpolys.values().collect();
        a.dim.cmp(&b.dim).then_with(|| {
            for (x, y) in ka.iter().zip(kb.iter()) {
                let c = x.coeffs().cmp(y.coeffs());
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    factors
}

/// The unique one-dimensional factor whose eigenvalue data matches the
/// point counts of the given curve at every good prime up to the matching
/// bound.
pub fn match_curve<'f, 'a>(
    factors: &'f [NewformFactor<'a>],
    e: &EllipticCurve,
) -> Result<&'f NewformFactor<'a>> {
    let mut found: Option<&NewformFactor> = None;
    for f in factors {
        if f.dim != 1 || e.conductor() != BigInt::from(f.level) {
            continue;
        }
        let mut ok = true;
        for l in arith::primes_up_to(MATCH_BOUND) {
            if f.level % l == 0 {
                continue;
            }
            let al = e.ap(l)?;
            let h = f.eigen_charpoly(l).expect("matching primes are stored");
            if *h != ZPoly::from_i64(&[-al, 1]) {
                ok = false;
                break;
            }
        }
        if ok {
            if found.is_some() {
                return Err(Error::NoMatch);
            }
            found = Some(f);
        }
    }
    found.ok_or(Error::NoMatch)
}

/// Algebraic part of the central L-value: the index of the Hecke span of
/// the winding image inside the plus half of the projected homology,
/// normalized by the winding multiple. Exact, with no two-ambiguity.
pub fn lratio_plus(f: &NewformFactor<'_>) -> Result<LRatio> {
    let e = f.space.winding_symbol();
    let pe = f.project(&e);
    if pe.iter().all(|x| x.is_zero()) {
        return Ok(LRatio::exact(Rat::zero()));
    }
    if f.dim == 1 {
        // The winding image lies on the line spanned by the plus-homology
        // image; its coefficient against a generator is the exact value.
        let basis = f.plus_image.basis();
        let j = (0..basis.cols())
            .find(|&j| !basis[(0, j)].is_zero())
            .expect("plus image has rank one");
        let c = &pe[j] / &basis[(0, j)];
        for jj in 0..basis.cols() {
            let expect = &c * &basis[(0, jj)];
            assert_eq!(expect, pe[jj], "winding image lies on the plus line");
        }
        let v = if c.is_negative() { -c } else { c };
        return Ok(LRatio::exact(v));
    }
    let n = f.level;
    if !arith::is_prime(n) {
        return Err(Error::NotPrimeLevel(n));
    }
    let nw = modsym::winding_multiple(n)?;
    let nwr = Rat::from_integer(BigInt::from(nw));
    let scaled: Vec<Rat> = pe.iter().map(|x| x * &nwr).collect();
    let lat = f.hecke_span(&scaled);
    let idx = lattice_index(&f.plus_image, &lat)?;
    Ok(LRatio::exact(idx / nwr))
}

/// Algebraic part of the twisted central L-value for the odd quadratic
/// character of conductor `d` (`−d` a fundamental discriminant): the index
/// of the Hecke span of the twisted winding image inside the minus half of
/// the projected homology. Determined up to a power of two.
pub fn twisted_index(f: &NewformFactor<'_>, d: u64) -> Result<LRatio> {
    let ed = f.space.twisted_element(d)?;
    let pe = f.project(&ed);
    if pe.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroTwist);
    }
    let lat = f.hecke_span(&pe);
    let idx = lattice_index(&f.minus_image, &lat)?;
    Ok(LRatio::up_to_two(idx))
}

/// Pairs of distinct factors whose eigenvalue polynomials share a root
/// modulo `q` at every stored good prime — the resultant criterion for a
/// congruence of eigenforms. Returned as index pairs into `decompose`.
pub fn eigenform_congruences(space: &ModSymSpace, q: u64) -> Result<Vec<((usize, usize), u64)>> {
    if q < 3 || !arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let factors = decompose(space);
    let qb = BigInt::from(q);
    let mut out = Vec::new();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let collide = factors[i].annihilator.iter().all(|(l, hi)| {
                let hj = factors[j]
                    .eigen_charpoly(*l)
                    .expect("stored prime sets agree");
                hi.resultant(hj).mod_floor(&qb).is_zero()
            });
            if collide {
                out.push(((i, j), q));
            }
        }
    }
    Ok(out)
}

/// Order of `q` in a nonzero rational.
fn ord_at(q: u64, x: &Rat) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    let qb = BigInt::from(q);
    let mut ord = 0i64;
    let mut n = x.numer().abs();
    while (&n % &qb).is_zero() {
        n /= &qb;
        ord += 1;
    }
    let mut d = x.denom().abs();
    while (&d % &qb).is_zero() {
        d /= &qb;
        ord -= 1;
    }
    ord
}

/// Smallest `D ≤ dmax` with `−D` fundamental, coprime to the level, whose
/// twisted value is nonzero with odd part not divisible by `q`.
pub fn hypothesis_star_search(f: &NewformFactor<'_>, q: u64, dmax: u64) -> Result<Option<u64>> {
    if q < 3 || !arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if !arith::is_prime(f.level) {
        return Err(Error::NotPrimeLevel(f.level));
    }
    let nw = modsym::winding_multiple(f.level)?;
    if nw % q == 0 {
        return Err(Error::Validation {
            label: "search prime".into(),
            msg: format!("{q} divides the winding multiple {nw}"),
        });
    }
    for dd in 1..=dmax {
        if !arith::is_fundamental_discriminant(-(dd as i64)) {
            continue;
        }
        if arith::gcd_u64(dd, f.level) != 1 {
            continue;
        }
        match twisted_index(f, dd) {
            Ok(r) => {
                if ord_at(q, &r.value) == 0 {
                    return Ok(Some(dd));
                }
            }
            Err(Error::ZeroTwist) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsym::build_space;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::new(a).expect("valid model")
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decompose_is_empty_when_nothing_survives() {
        // genus zero, and a level whose classes all come from lower levels
        for n in [1u64, 2, 3, 10, 13, 22] {
            let s = build_space(n).unwrap();
            assert!(decompose(&s).is_empty(), "level {n}");
        }
    }

    #[test]
    fn decompose_counts_factors_and_dimensions() {
        // (level, expected multiset of factor degrees)
        let cases: [(u64, &[usize]); 7] = [
            (11, &[1]),
            (26, &[1, 1]),
            (33, &[1]),
            (37, &[1, 1]),
            (44, &[1]),
            (45, &[1]),
            (67, &[1, 2, 2]),
        ];
        for (n, dims) in cases {
            let s = build_space(n).unwrap();
            let f = decompose(&s);
            let mut got: Vec<usize> = f.iter().map(|x| x.dim()).collect();
            got.sort();
            assert_eq!(got, dims, "level {n}");
            for x in &f {
                assert_eq!(x.level(), n);
            }
        }
    }

    #[test]
    fn factors_match_point_counts_of_known_curves() {
        // independent oracle: point counts through the curve arithmetic
        let s11 = build_space(11).unwrap();
        let f11 = decompose(&s11);
        let e11 = curve([0, -1, 1, -10, -20]);
        let m = match_curve(&f11, &e11).unwrap();
        for l in [2u64, 3, 5, 7, 13] {
            let al = e11.ap(l).unwrap();
            assert_eq!(
                m.eigen_charpoly(l).unwrap(),
                &ZPoly::from_i64(&[-al, 1]),
                "l = {l}"
            );
        }

        let s37 = build_space(37).unwrap();
        let f37 = decompose(&s37);
        let e37a = curve([0, 0, 1, -1, 0]);
        let e37b = curve([0, 1, 1, -23, -50]);
        let ma = match_curve(&f37, &e37a).unwrap();
        let mb = match_curve(&f37, &e37b).unwrap();
        assert_eq!(ma.eigen_charpoly(2).unwrap(), &ZPoly::from_i64(&[2, 1]));
        assert_eq!(mb.eigen_charpoly(2).unwrap(), &ZPoly::from_i64(&[0, 1]));
        assert!(!std::ptr::eq(ma, mb));

        // wrong level: no factor matches
        assert!(matches!(match_curve(&f37, &e11), Err(Error::NoMatch)));
        assert!(matches!(match_curve(&[], &e11), Err(Error::NoMatch)));
    }

    #[test]
    fn projection_commutes_with_every_stored_operator() {
        for n in [11u64, 37, 45] {
            let s = build_space(n).unwrap();
            for f in decompose(&s) {
                for l in arith::primes_up_to(13) {
                    let Some(tf) = f.action(l) else { continue };
                    let full = s.hecke(l).unwrap();
                    let lhs = full.mul(&f.proj);
                    let rhs = f.proj.mul(&tf.to_rat());
                    assert_eq!(lhs, rhs, "level {n}, l = {l}");
                }
            }
        }
    }

    #[test]
    fn untwisted_values_for_the_smallest_prime_levels() {
        // exact values cross-checked below against independent numerics
        let expect = [(11u64, rat(1, 5)), (17, rat(1, 4)), (19, rat(1, 3))];
        for (n, v) in expect {
            let s = build_space(n).unwrap();
            let f = decompose(&s);
            assert_eq!(f.len(), 1);
            let r = lratio_plus(&f[0]).unwrap();
            assert_eq!(r.value, v, "level {n}");
            assert!(!r.two_ambiguity);
        }
    }

    #[test]
    fn untwisted_value_vanishes_exactly_on_the_positive_rank_factor() {
        let s = build_space(37).unwrap();
        let f = decompose(&s);
        let e_rank1 = curve([0, 0, 1, -1, 0]);
        let e_rank0 = curve([0, 1, 1, -23, -50]);
        let r1 = lratio_plus(match_curve(&f, &e_rank1).unwrap()).unwrap();
        let r0 = lratio_plus(match_curve(&f, &e_rank0).unwrap()).unwrap();
        assert!(r1.value.is_zero());
        assert!(!r1.two_ambiguity);
        assert_eq!(r0.value, rat(1, 3));
    }

    #[test]
    fn untwisted_values_agree_with_independent_numerics() {
        use crate::elliptic::{numeric_l1, real_periods};
        // rank-zero optimal curves across prime and composite levels
        let curves: [[i64; 5]; 6] = [
            [0, -1, 1, -10, -20], // 11
            [1, 0, 1, 4, -6],     // 14
            [1, 1, 1, -10, -10],  // 15
            [1, -1, 1, -1, -14],  // 17
            [0, 1, 1, -23, -50],  // 37, second factor
            [1, 0, 1, -5, -8],    // 26, first isogeny class
        ];
        for a in curves {
            let e = curve(a);
            let n = u64::try_from(e.conductor()).unwrap();
            let s = build_space(n).unwrap();
            let f = decompose(&s);
            let m = match_curve(&f, &e).unwrap();
            let exact = lratio_plus(m).unwrap();
            let num = numeric_l1(&e, 1e-10).unwrap().to_f64();
            let per = real_periods(&e, 128).unwrap().omega_total.to_f64();
            let approx = num / per;
            let ex = exact.value.numer().to_string().parse::<f64>().unwrap()
                / exact.value.denom().to_string().parse::<f64>().unwrap();
            assert!(
                (approx - ex).abs() <= 1e-6 * ex.abs().max(1.0),
                "level {n}: exact {ex} vs numeric {approx}"
            );
        }
    }

    #[test]
    fn one_dimensional_path_agrees_with_the_span_index_route() {
        // independent route: the generic span-index formula specialized to
        // degree one must reproduce the coefficient computation
        for n in [11u64, 17, 19, 37] {
            let s = build_space(n).unwrap();
            for f in decompose(&s) {
                let r = lratio_plus(&f).unwrap();
                let e = s.winding_symbol();
                let pe = f.project(&e);
                if pe.iter().all(|x| x.is_zero()) {
                    assert!(r.value.is_zero());
                    continue;
                }
                let nw = modsym::winding_multiple(n).unwrap();
                let nwr = Rat::from_integer(BigInt::from(nw));
                let scaled: Vec<Rat> = pe.iter().map(|x| x * &nwr).collect();
                let lat = f.hecke_span(&scaled);
                let idx = lattice_index(f.plus_image(), &lat).unwrap();
                assert_eq!(idx / nwr, r.value, "level {n}");
            }
        }
    }

    #[test]
    fn value_denominators_divide_the_winding_numerator() {
        for n in [11u64, 17, 19, 37, 67] {
            let s = build_space(n).unwrap();
            let nw = BigInt::from(modsym::winding_multiple(n).unwrap());
            for f in decompose(&s) {
                let r = lratio_plus(&f).unwrap();
                if r.value.is_zero() {
                    continue;
                }
                assert!(
                    nw.mod_floor(r.value.denom()).is_zero(),
                    "level {n}: denominator {} vs winding multiple {nw}",
                    r.value.denom()
                );
            }
        }
    }

    #[test]
    fn twisted_values_against_sign_predictions_and_numerics() {
        use crate::elliptic::{numeric_l1, real_periods};
        let s = build_space(11).unwrap();
        let f = decompose(&s);
        let e = curve([0, -1, 1, -10, -20]);

        // vanishing twist: the sign of the twisted functional equation is −1
        assert!(matches!(twisted_index(&f[0], 7), Err(Error::ZeroTwist)));
        // malformed inputs
        assert!(matches!(
            twisted_index(&f[0], 5),
            Err(Error::NotFundamental(-5))
        ));
        assert!(matches!(
            twisted_index(&f[0], 11),
            Err(Error::NotCoprime(11, 11))
        ));

        for d in [3u64, 4] {
            let r = twisted_index(&f[0], d).unwrap();
            assert!(r.two_ambiguity);
            let odd = r.odd_part();
            assert!(odd.is_integer() && odd.is_positive(), "D = {d}");

            // numeric oracle: twisted central value over the imaginary
            // period, rescaled by √D, agrees up to a power of two
            let tw = e.quadratic_twist(-(d as i64)).unwrap();
            let num = numeric_l1(&tw, 1e-10).unwrap().to_f64();
            let per = real_periods(&e, 128).unwrap().omega_minus_im.to_f64();
            let approx = num * (d as f64).sqrt() / per;
            let ex = r.value.numer().to_string().parse::<f64>().unwrap()
                / r.value.denom().to_string().parse::<f64>().unwrap();
            let log2 = (ex / approx).log2();
            assert!(
                (log2 - log2.round()).abs() < 1e-5,
                "D = {d}: exact {ex} vs numeric {approx}"
            );
        }
    }

    #[test]
    fn per_factor_twists_vanish_by_sign_even_when_the_element_does_not() {
        let s = build_space(37).unwrap();
        let f = decompose(&s);
        let rank1 = match_curve(&f, &curve([0, 0, 1, -1, 0])).unwrap();
        let rank0 = match_curve(&f, &curve([0, 1, 1, -23, -50])).unwrap();
        // the twisted class itself is nonzero at this level
        assert!(!s.twisted_element(3).unwrap().is_zero());
        // sign +1 on the rank-one form's twist: a genuine value
        let r = twisted_index(rank1, 3).unwrap();
        assert!(r.value.is_positive());
        // sign −1 on the rank-zero form's twist: the projection dies
        assert!(matches!(twisted_index(rank0, 3), Err(Error::ZeroTwist)));
    }

    #[test]
    fn twisted_index_is_independent_of_extra_generators() {
        let s = build_space(37).unwrap();
        let f = decompose(&s);
        let rank1 = match_curve(&f, &curve([0, 0, 1, -1, 0])).unwrap();
        let pe = rank1.project(&s.twisted_element(3).unwrap());

        let base = rank1.hecke_span(&pe);
        let mut extra: Vec<IntMatrix> = rank1.action.values().cloned().collect();
        for l in [17u64, 19, 23] {
            extra.push(restrict_to_subspace(
                rank1.cuspidal_basis(),
                &s.hecke_on_cuspidal(l).unwrap(),
            ));
        }
        let wide = rank1.hecke_span_with(&pe, extra.iter());
        assert_eq!(
            lattice_index(rank1.minus_image(), &base).unwrap(),
            lattice_index(rank1.minus_image(), &wide).unwrap()
        );
    }

    #[test]
    fn sampled_twisted_odd_parts_are_positive_integers() {
        // deterministic sample of (prime level, twist) pairs
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let levels: Vec<u64> = arith::primes_up_to(100)
            .into_iter()
            .filter(|&p| p >= 11)
            .collect();
        let mut spaces: std::collections::HashMap<u64, ModSymSpace> =
            std::collections::HashMap::new();
        let mut checked = 0;
        while checked < 15 {
            let n = levels[(rng() % levels.len() as u64) as usize];
            let d = 3 + rng() % 38;
            if !arith::is_fundamental_discriminant(-(d as i64)) || d % n == 0 {
                continue;
            }
            let s = spaces.entry(n).or_insert_with(|| build_space(n).unwrap());
            // local borrow: decompose per draw (cheap at these levels)
            let factors = decompose(s);
            for f in &factors {
                match twisted_index(f, d) {
                    Ok(r) => {
                        let odd = r.odd_part();
                        assert!(
                            odd.is_integer() && odd.is_positive(),
                            "N = {n}, D = {d}, odd part {odd}"
                        );
                        checked += 1;
                    }
                    Err(Error::ZeroTwist) => {}
                    Err(e) => panic!("N = {n}, D = {d}: {e:?}"),
                }
            }
        }
    }

    #[test]
    fn congruence_scan_is_empty_without_a_partner() {
        let s = build_space(11).unwrap();
        for q in [3u64, 7, 11] {
            assert!(eigenform_congruences(&s, q).unwrap().is_empty());
        }
        assert!(matches!(
            eigenform_congruences(&s, 4),
            Err(Error::NotPrime(4))
        ));
        // the two rational eigenforms at level 37 differ at l = 2 by 2,
        // so no odd congruence can relate them
        let s37 = build_space(37).unwrap();
        for q in [3u64, 5, 7] {
            assert!(eigenform_congruences(&s37, q).unwrap().is_empty());
        }
    }

    #[test]
    fn search_respects_its_preconditions() {
        let s = build_space(11).unwrap();
        let f = decompose(&s);
        assert!(matches!(
            hypothesis_star_search(&f[0], 9, 50),
            Err(Error::NotPrime(9))
        ));
        // 5 divides the winding multiple of level 11
        assert!(matches!(
            hypothesis_star_search(&f[0], 5, 50),
            Err(Error::Validation { .. })
        ));
        assert_eq!(hypothesis_star_search(&f[0], 7, 0).unwrap(), None);
    }

    #[test]
    fn search_returns_the_smallest_qualifying_twist() {
        let s = build_space(11).unwrap();
        let f = decompose(&s);
        // independent expectation: walk the discriminants by hand
        let mut expected = None;
        for d in 1..=100u64 {
            if !arith::is_fundamental_discriminant(-(d as i64)) || d % 11 == 0 {
                continue;
            }
            match twisted_index(&f[0], d) {
                Ok(r) => {
                    if ord_at(7, &r.value) == 0 {
                        expected = Some(d);
                        break;
                    }
                }
                Err(Error::ZeroTwist) => continue,
                Err(e) => panic!("{e:?}"),
            }
        }
        assert_eq!(hypothesis_star_search(&f[0], 7, 100).unwrap(), expected);
        assert!(expected.is_some());
    }

    #[test]
    fn qualifying_searches_come_with_even_valuations() {
        // whenever the search succeeds at q, the q-order of the untwisted
        // value is even (in particular never exactly one)
        for n in arith::primes_up_to(100) {
            if n < 11 {
                continue;
            }
            let s = build_space(n).unwrap();
            let nw = modsym::winding_multiple(n).unwrap();
            for f in decompose(&s) {
                let r = lratio_plus(&f).unwrap();
                if r.value.is_zero() {
                    continue;
                }
                for q in [3u64, 5, 7, 11, 13] {
                    if nw % q == 0 {
                        continue;
                    }
                    if hypothesis_star_search(&f, q, 40).unwrap().is_some() {
                        let ord = ord_at(q, &r.value);
                        assert!(
                            ord >= 0 && ord % 2 == 0,
                            "N = {n}, q = {q}, value {}",
                            r.value
                        );
                    }
                }
            }
        }
    }
}
