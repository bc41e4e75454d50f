//! Quotient of the free module on P¹(ℤ/N) by the two- and three-term
//! symbol relations, via sparse exact elimination.

use super::p1::P1List;
use crate::ratlattice::Rat;
use num_traits::{One, Zero};
use std::collections::{HashMap, HashSet};

/// Sparse rational vector: sorted, nonzero entries only.
pub type SparseVec = Vec<(u32, Rat)>;

/// a + s·b, sparse merge.
pub fn add_scaled(a: &SparseVec, b: &SparseVec, s: &Rat) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// The presentation of the quotient space: a free basis (a subset of the
/// symbols) and, for every symbol, its class written in that basis.
pub struct Presentation {
    pub dim: usize,
    pub free: Vec<usize>,
    pub classes: Vec<SparseVec>,
}

#[derive(Clone, Copy, PartialEq)]
enum Stage1 {
    Rep,
    Zero,
    AliasNeg(u32),
}

pub fn manin_quotient(p1: &P1List) -> Presentation {
    let n_sym = p1.len();

    // two-term relations x + xS = 0 by direct pairing
    let mut stage1 = vec![Stage1::Rep; n_sym];
    for i in 0..n_sym {
        let j = p1.s_image(i);
        if j == i {
            stage1[i] = Stage1::Zero;
        } else if j < i {
            stage1[i] = Stage1::AliasNeg(j as u32);
        }
    }

    // three-term relations x + xT + xT² = 0, one per rotation orbit,
    // rewritten through the pairing
    let mut relations: Vec<SparseVec> = Vec::new();
    let mut seen = vec![false; n_sym];
    for i in 0..n_sym {
        if seen[i] {
            continue;
        }
        let orbit = [i, p1.t_image(i), p1.t_image(p1.t_image(i))];
        let mut coeffs: HashMap<u32, i64> = HashMap::new();
        for &m in &orbit {
            seen[m] = true;
            match stage1[m] {
                Stage1::Zero => {}
                Stage1::Rep => *coeffs.entry(m as u32).or_insert(0) += 1,
                Stage1::AliasNeg(r) => *coeffs.entry(r).or_insert(0) -= 1,
            }
        }
        let mut rel: SparseVec = coeffs
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(v, c)| (v, Rat::from_integer(c.into())))
            .collect();
        rel.sort_by_key(|&(v, _)| v);
        if !rel.is_empty() {
            relations.push(rel);
        }
    }

    // sparse exact elimination, smallest rows first, pivots chosen to
    // limit fill-in
    let mut occurrences: HashMap<u32, HashSet<usize>> = HashMap::new();
    for (r, rel) in relations.iter().enumerate() {
        for &(v, _) in rel {
            occurrences.entry(v).or_default().insert(r);
        }
    }
    let mut rows: Vec<Option<SparseVec>> = relations.into_iter().map(Some).collect();
    let mut active: HashSet<usize> = (0..rows.len()).collect();
    let mut eliminated: Vec<(u32, SparseVec)> = Vec::new();
    let mut is_pivot: HashSet<u32> = HashSet::new();

    while let Some(&row_id) = active
        .iter()
        .min_by_key(|&&r| rows[r].as_ref().map_or(0, |v| v.len()))
    {
        active.remove(&row_id);
        let row = rows[row_id].take().unwrap();
        for &(v, _) in &row {
            occurrences.get_mut(&v).unwrap().remove(&row_id);
        }
        if row.is_empty() {
            continue;
        }
        // pivot: fewest other occurrences, unit coefficients preferred
        let (pv, pc) = row
            .iter()
            .min_by_key(|(v, c)| {
                let occ = occurrences.get(v).map_or(0, |s| s.len());
                let unit = if c.numer().magnitude() == &1u32.into() {
                    0
                } else {
                    1
                };
                (occ, unit, *v)
            })
            .map(|(v, c)| (*v, c.clone()))
            .unwrap();
        // x_pv = -(rest)/pc
        let scale = -pc.recip();
        let expr: SparseVec = row
            .iter()
            .filter(|&&(v, _)| v != pv)
            .map(|(v, c)| (*v, &scale * c))
            .collect();
        is_pivot.insert(pv);

        let touched: Vec<usize> = occurrences
            .get(&pv)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for r in touched {
            let old = rows[r].take().unwrap();
            let coeff = old
                .iter()
                .find(|&&(v, _)| v == pv)
                .map(|(_, c)| c.clone())
                .unwrap();
            for &(v, _) in &old {
                occurrences.get_mut(&v).unwrap().remove(&r);
            }
            // old + coeff·(expr − x_pv) removes the pivot variable
            let mut sub = expr.clone();
            sub.push((pv, -Rat::one()));
            sub.sort_by_key(|&(v, _)| v);
            let new_row = add_scaled(&old, &sub, &coeff);
            debug_assert!(new_row.iter().all(|&(v, _)| v != pv));
            for &(v, _) in &new_row {
                occurrences.entry(v).or_default().insert(r);
            }
            rows[r] = Some(new_row);
        }
        eliminated.push((pv, expr));
    }

    // free basis: the surviving representatives, in symbol order
    let mut free: Vec<usize> = Vec::new();
    let mut column: HashMap<u32, usize> = HashMap::new();
    for i in 0..n_sym {
        if stage1[i] == Stage1::Rep && !is_pivot.contains(&(i as u32)) {
            column.insert(i as u32, free.len());
            free.push(i);
        }
    }
    let dim = free.len();

    // back-substitute eliminated variables in reverse order
    let mut resolved: HashMap<u32, SparseVec> = HashMap::new();
    for (&v, &col) in &column {
        resolved.insert(v, vec![(col as u32, Rat::one())]);
    }
    for (v, expr) in eliminated.into_iter().rev() {
        let mut acc: SparseVec = Vec::new();
        for (w, c) in expr {
            let basis = resolved
                .get(&w)
                .expect("referenced variable resolved later in reverse order");
            acc = add_scaled(&acc, basis, &c);
        }
        resolved.insert(v, acc);
    }

    let classes: Vec<SparseVec> = (0..n_sym)
        .map(|i| match stage1[i] {
            Stage1::Zero => Vec::new(),
            Stage1::Rep => resolved[&(i as u32)].clone(),
            Stage1::AliasNeg(r) => {
                let minus_one = -Rat::one();
                add_scaled(&Vec::new(), &resolved[&r], &minus_one)
            }
        })
        .collect();

    Presentation { dim, free, classes }
}
