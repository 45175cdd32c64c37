//! Sparse row-reduced spans of coefficient vectors.
//!
//! Homogeneous components of ideals are finite-dimensional; many questions
//! (is `I_d` everything, is a form in `I_d`) reduce to rank computations on
//! the coefficient vectors of generators in the monomial basis of degree `d`.

use std::collections::HashMap;

use crate::polyring::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::Field;

/// Index of the monomials of one degree.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    mons: Vec<Monomial>,
    pos: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn of_degree(n: usize, d: u32) -> Self {
        Self::from_monomials(monomials_of_degree(n, d))
    }

    pub fn from_monomials(mons: Vec<Monomial>) -> Self {
        let pos = mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialIndex { mons, pos }
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mons.is_empty()
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.pos.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.mons[i]
    }

    /// Coefficient vector of `p`; `None` if a term falls outside the index.
    pub fn vector<F: Field>(&self, p: &Polynomial<F>) -> Option<Vec<(usize, F)>> {
        let mut v: Vec<(usize, F)> = Vec::with_capacity(p.num_terms());
        for t in p.terms() {
            v.push((self.get(&t.mon)?, t.coeff.clone()));
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    }
}

/// A subspace of `F^dim` kept in fully reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Span<F> {
    dim: usize,
    rows: Vec<Vec<(usize, F)>>,
    pivot_row: HashMap<usize, usize>,
    scratch: Vec<F>,
}

impl<F: Field> Span<F> {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new(), pivot_row: HashMap::new(), scratch: vec![F::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[Vec<(usize, F)>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `v` against the span; the result is zero iff `v` lies in it.
    pub fn reduce(&mut self, v: &[(usize, F)]) -> Vec<(usize, F)> {
        let mut touched: Vec<usize> = Vec::with_capacity(v.len() * 2);
        for (c, x) in v {
            if self.scratch[*c].is_zero() {
                touched.push(*c);
            }
            self.scratch[*c] = self.scratch[*c].clone() + x.clone();
        }
        for (c, _) in v {
            let Some(&r) = self.pivot_row.get(c) else { continue };
            let factor = self.scratch[*c].clone();
            if factor.is_zero() {
                continue;
            }
            for (cc, y) in &self.rows[r] {
                if self.scratch[*cc].is_zero() {
                    touched.push(*cc);
                }
                self.scratch[*cc] = self.scratch[*cc].clone() - factor.clone() * y.clone();
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::new();
        for c in touched {
            let x = std::mem::replace(&mut self.scratch[c], F::zero());
            if !x.is_zero() {
                out.push((c, x));
            }
        }
        out
    }

    pub fn contains(&mut self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let pc = r[0].0;
        let inv = r[0].1.inv();
        for e in r.iter_mut() {
            e.1 = e.1.clone() * inv.clone();
        }
        for row in self.rows.iter_mut() {
            let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) else { continue };
            let factor = row[k].1.clone();
            *row = axpy(row, &factor, &r);
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// `a - f * b` for sorted sparse vectors.
fn axpy<F: Field>(a: &[(usize, F)], f: &F, b: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let x = a[i].1.clone() - f.clone() * b[j].1.clone();
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a dense matrix over a field.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() * inv.clone();
                for k in c..ncols {
                    let v = m[rank][k].clone();
                    m[r][k] = m[r][k].clone() - f.clone() * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Zp};
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn span_basics() {
        let mut s = Span::<Rational>::new(3);
        assert!(s.insert(&[(0, q(1)), (1, q(1))]));
        assert!(s.insert(&[(1, q(2)), (2, q(1))]));
        assert!(!s.insert(&[(0, q(2)), (1, q(4)), (2, q(1))]));
        assert!(s.contains(&[(0, q(1)), (1, q(-3)), (2, q(-2))]));
        assert!(!s.contains(&[(0, q(1)), (1, q(-1)), (2, q(-2))]));
        assert_eq!(s.rank(), 2);
        assert!(s.insert(&[(2, q(1))]));
        assert!(s.is_full());
    }

    proptest! {
        #[test]
        fn span_rank_matches_dense_rank(m in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 1..7)) {
            let dense: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let mut s = Span::<Rational>::new(5);
            for r in &dense {
                let v: Vec<(usize, Rational)> = r.iter().cloned().enumerate().filter(|(_, x)| *x != q(0)).collect();
                s.insert(&v);
            }
            prop_assert_eq!(s.rank(), rank(&dense));
            let dz: Vec<Vec<Zp>> = m.iter().map(|r| r.iter().map(|&x| Zp::new(x)).collect()).collect();
            prop_assert!(rank(&dz) <= rank(&dense));
        }
    }
}
