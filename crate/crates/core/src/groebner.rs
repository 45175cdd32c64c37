//! Multivariate division and Buchberger's algorithm.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::budget;
use crate::error::{Error, Result};
use crate::polyring::{minimalize, same_ring, Monomial, MonomialOrder, Polynomial, RingContext, Term};
use crate::scalar::Field;

/// A reduced Groebner basis: monic elements sorted by descending leading
/// monomial, no term of any element divisible by another leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F> {
    ring: Arc<RingContext>,
    elements: Vec<Polynomial<F>>,
    /// Set for bases of homogeneous ideals computed only up to this degree.
    degree_bound: Option<u32>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect()
    }

    /// Minimal generators of the initial ideal.
    pub fn leading_term_ideal(&self) -> Vec<Monomial> {
        minimalize(self.leading_monomials())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !f.ring().same_variables(&self.ring) {
            return Err(Error::ContextMismatch);
        }
        let f = f.to_ring(&self.ring);
        Reducer::new(&self.elements).normal_form(&f, true)
    }

    pub fn member(&self, f: &Polynomial<F>) -> Result<bool> {
        if let Some(d) = self.degree_bound {
            if f.degree().is_some_and(|e| e > d) || !f.is_homogeneous() {
                return Err(Error::InvalidArgument(format!("basis is truncated at degree {d}; membership undecidable for this element")));
            }
        }
        Ok(self.normal_form(f)?.is_zero())
    }
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.elements.iter()).finish()
    }
}

/// Division of `f` by `basis`: returns the remainder and one quotient per
/// basis element, with `f = sum q_i b_i + r`.
pub fn reduce<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<(Polynomial<F>, Vec<Polynomial<F>>)> {
    let ring = f.ring().clone();
    for b in basis {
        if !same_ring(b.ring(), &ring) {
            return Err(Error::ContextMismatch);
        }
        if b.is_zero() {
            return Err(Error::InvalidArgument("zero divisor in basis".into()));
        }
    }
    let mut quotients: Vec<Vec<Term<F>>> = vec![Vec::new(); basis.len()];
    let mut rem: Vec<Term<F>> = Vec::new();
    let mut p = f.clone();
    while let Some(lt) = p.leading_term().cloned() {
        let hit = basis.iter().enumerate().find_map(|(i, b)| {
            let bl = b.leading_term().expect("nonzero");
            bl.mon.divide_into(&lt.mon).map(|m| (i, m, lt.coeff.clone() / bl.coeff.clone()))
        });
        match hit {
            Some((i, m, c)) => {
                p = p.sub_mul_term(&c, &m, &basis[i]);
                quotients[i].push(Term { coeff: c, mon: m });
            }
            None => {
                rem.push(lt.clone());
                p = p.sub_mul_term(&F::one(), &Monomial::one(ring.num_vars()), &Polynomial::term(&ring, lt.coeff, lt.mon));
            }
        }
    }
    let qs = quotients.into_iter().map(|ts| Polynomial::from_terms(&ring, ts.into_iter().map(|t| (t.coeff, t.mon)))).collect();
    Ok((Polynomial::from_sorted_terms(&ring, rem), qs))
}

struct Reducer<'a, F> {
    basis: Vec<&'a Polynomial<F>>,
    masks: Vec<u64>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(basis: &'a [Polynomial<F>]) -> Self {
        Self::from_refs(basis.iter().collect())
    }

    fn from_refs(basis: Vec<&'a Polynomial<F>>) -> Self {
        let masks = basis.iter().map(|b| b.leading_monomial().expect("nonzero").divmask()).collect();
        Reducer { basis, masks }
    }

    fn find(&self, m: &Monomial, mask: u64) -> Option<(usize, Monomial)> {
        for (i, b) in self.basis.iter().enumerate() {
            if self.masks[i] & !mask == 0 {
                if let Some(q) = b.leading_monomial().expect("nonzero").divide_into(m) {
                    return Some((i, q));
                }
            }
        }
        None
    }

    /// Normal form; with `full == false` only the leading term is reduced.
    fn normal_form(&self, f: &Polynomial<F>, full: bool) -> Result<Polynomial<F>> {
        let ring = f.ring().clone();
        let order = ring.order().clone();
        let mut p: Vec<Term<F>> = f.terms().to_vec();
        // p[..k] is irreducible and final
        let mut k = 0usize;
        let mut steps = 0u32;
        while k < p.len() {
            steps += 1;
            if steps % 512 == 0 {
                budget::check()?;
            }
            let m = &p[k].mon;
            match self.find(m, m.divmask()) {
                Some((i, q)) => {
                    let g = self.basis[i];
                    let c = p[k].coeff.clone() / g.terms()[0].coeff.clone();
                    let tail = sub_scaled_tail(&order, &p[k + 1..], &c, &q, &g.terms()[1..]);
                    p.truncate(k);
                    p.extend(tail);
                }
                None if full => k += 1,
                None => break,
            }
        }
        Ok(Polynomial::from_sorted_terms(&ring, p))
    }
}

/// `a - c * m * b` on sorted term slices.
fn sub_scaled_tail<F: Field>(order: &MonomialOrder, a: &[Term<F>], c: &F, m: &Monomial, b: &[Term<F>]) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|t| Term { coeff: -(t.coeff.clone() * c.clone()), mon: t.mon.mul(m) }).peekable();
    while i < a.len() {
        match bi.peek() {
            None => break,
            Some(t) => match order.cmp(&a[i].mon, &t.mon) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(bi.next().expect("peeked")),
                Ordering::Equal => {
                    let t = bi.next().expect("peeked");
                    let s = a[i].coeff.clone() + t.coeff;
                    if !s.is_zero() {
                        out.push(Term { coeff: s, mon: t.mon });
                    }
                    i += 1;
                }
            },
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi);
    out
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<F> {
    ring: Arc<RingContext>,
    polys: Vec<Polynomial<F>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> Builder<F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.lm(i).lcm(self.lm(j));
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        Pair { i, j, lcm, sugar: si.max(sj) }
    }

    /// Gebauer-Moeller update for the new element `t`.
    fn update(&mut self, t: usize) {
        let lt = self.lm(t).clone();
        let cands: Vec<Pair> = (0..t).filter(|&i| self.active[i]).map(|i| self.pair(i, t)).collect();

        // chain criterion among the new pairs
        let mut d: Vec<Pair> = Vec::new();
        for (k, p) in cands.iter().enumerate() {
            let coprime = self.lm(p.i).is_coprime(&lt);
            let dominated = cands[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm)) || d.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p.clone());
            }
        }
        // product criterion
        d.retain(|p| !self.lm(p.i).is_coprime(&lt));

        // old pairs made redundant by the new leading monomial
        let pairs = std::mem::take(&mut self.pairs);
        let kept: Vec<Pair> =
            pairs.into_iter().filter(|p| !lt.divides(&p.lcm) || self.lm(p.i).lcm(&lt) == p.lcm || self.lm(p.j).lcm(&lt) == p.lcm).collect();
        self.pairs = kept;
        self.pairs.extend(d);

        for i in 0..t {
            if self.active[i] && lt.divides(self.lm(i)) {
                self.active[i] = false;
            }
        }
        self.active.push(true);
        let order = self.ring.order().clone();
        // pop from the back: smallest sugar, then smallest lcm
        self.pairs.sort_by(|a, b| b.sugar.cmp(&a.sugar).then_with(|| order.cmp(&b.lcm, &a.lcm)));
    }

    fn add(&mut self, f: Polynomial<F>, sugar: u32) {
        self.polys.push(f.monic());
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1);
    }

    fn active_refs(&self) -> Vec<&Polynomial<F>> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` in `order`.
pub fn buchberger<F: Field>(ring: &Arc<RingContext>, gens: &[Polynomial<F>], order: &MonomialOrder) -> Result<GroebnerBasis<F>> {
    compute(ring, gens, order, None)
}

/// Groebner basis of a homogeneous ideal valid for membership of homogeneous
/// elements of degree at most `max_degree`.
pub fn buchberger_truncated<F: Field>(ring: &Arc<RingContext>, gens: &[Polynomial<F>], max_degree: u32) -> Result<GroebnerBasis<F>> {
    if !gens.iter().all(|g| g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    compute(ring, gens, &MonomialOrder::DegRevLex, Some(max_degree))
}

fn compute<F: Field>(
    ring: &Arc<RingContext>,
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
    bound: Option<u32>,
) -> Result<GroebnerBasis<F>> {
    let ring = ring.with_order(order.clone());
    let mut input: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if !g.ring().same_variables(&ring) {
            return Err(Error::ContextMismatch);
        }
        if !g.is_zero() {
            input.push(g.to_ring(&ring).monic());
        }
    }
    if input.iter().any(|g| g.is_constant()) {
        return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(&ring)], degree_bound: None });
    }
    if input.iter().all(|g| g.is_monomial()) {
        let mons = minimalize(input.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect());
        let mut elements: Vec<Polynomial<F>> = mons.into_iter().map(|m| Polynomial::monomial(&ring, m)).collect();
        sort_desc(&mut elements);
        return Ok(GroebnerBasis { ring, elements, degree_bound: None });
    }
    // smaller leading monomials first tends to give fewer pairs
    input.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut b = Builder { ring: ring.clone(), polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in input {
        let nf = Reducer::from_refs(b.active_refs()).normal_form(&g, true)?;
        if !nf.is_zero() {
            let s = nf.degree().expect("nonzero");
            b.add(nf, s);
        }
    }
    while let Some(p) = b.pairs.pop() {
        budget::check()?;
        if let Some(d) = bound {
            if p.lcm.degree() > d {
                continue;
            }
        }
        let (gi, gj) = (&b.polys[p.i], &b.polys[p.j]);
        let mi = gi.leading_monomial().unwrap().divide_into(&p.lcm).expect("lcm");
        let mj = gj.leading_monomial().unwrap().divide_into(&p.lcm).expect("lcm");
        let s = gi.mul_term(&F::one(), &mi).sub_mul_term(&F::one(), &mj, gj);
        let nf = Reducer::from_refs(b.active_refs()).normal_form(&s, true)?;
        if !nf.is_zero() {
            if nf.is_constant() {
                return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(&ring)], degree_bound: None });
            }
            b.add(nf, p.sugar);
        }
    }

    let active: Vec<Polynomial<F>> = b.active_refs().into_iter().cloned().collect();
    let mut elements = Vec::with_capacity(active.len());
    for k in 0..active.len() {
        let others: Vec<&Polynomial<F>> = active.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let lead = Polynomial::from_sorted_terms(&ring, active[k].terms()[..1].to_vec());
        let tail = Polynomial::from_sorted_terms(&ring, active[k].terms()[1..].to_vec());
        let tail = Reducer::from_refs(others).normal_form(&tail, true)?;
        elements.push((lead + tail).monic());
    }
    sort_desc(&mut elements);
    Ok(GroebnerBasis { ring, elements, degree_bound: bound })
}

fn sort_desc<F: Field>(v: &mut [Polynomial<F>]) {
    if let Some(first) = v.first() {
        let order = first.ring().order().clone();
        v.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    }
}

/// Checks that every S-polynomial of `gb` reduces to zero.
pub fn satisfies_buchberger_criterion<F: Field>(gb: &GroebnerBasis<F>) -> Result<bool> {
    let els = gb.elements();
    let red = Reducer::new(els);
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let li = els[i].leading_monomial().unwrap();
            let lj = els[j].leading_monomial().unwrap();
            let l = li.lcm(lj);
            let s = els[i].mul_term(&F::one(), &li.divide_into(&l).unwrap()).sub_mul_term(
                &(els[i].leading_coeff().unwrap().clone() / els[j].leading_coeff().unwrap().clone()),
                &lj.divide_into(&l).unwrap(),
                &els[j],
            );
            if !red.normal_form(&s, true)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the reducedness conditions.
pub fn is_reduced<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let els = gb.elements();
    els.iter().enumerate().all(|(i, g)| {
        g.leading_coeff().is_some_and(|c| c.is_one())
            && els.iter().enumerate().all(|(j, h)| {
                i == j || {
                    let lm = h.leading_monomial().unwrap();
                    g.terms().iter().all(|t| !lm.divides(&t.mon))
                }
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;
    use crate::scalar::Rational;

    type P = Polynomial<Rational>;

    fn ps(r: &Arc<RingContext>, s: &[&str]) -> Vec<P> {
        s.iter().map(|x| parse_polynomial(r, x).unwrap()).collect()
    }

    #[test]
    fn division_examples() {
        let r = RingContext::with_names(["x", "y"]).unwrap();
        let f = ps(&r, &["x^2*y", "x", "y", "x^2-y"]);
        let (nf, q) = reduce(&f[0], &f[1..2]).unwrap();
        assert!(nf.is_zero());
        assert_eq!(q[0], ps(&r, &["x*y"])[0]);
        let (nf, q) = reduce(&f[2], &f[1..2]).unwrap();
        assert_eq!(nf, f[2]);
        assert!(q[0].is_zero());
        let (nf, q) = reduce(&f[3], &f[3..4]).unwrap();
        assert!(nf.is_zero());
        assert_eq!(q[0], P::one(&r));
    }

    #[test]
    fn elimination_of_twisted_cubic_parameter() {
        let r = RingContext::with_names(["x", "y", "z"]).unwrap();
        let gens = ps(&r, &["x^2-y", "x^3-z"]);
        let gb = buchberger(&r, &gens, &MonomialOrder::Lex).unwrap();
        let target = ps(&r, &["y^3-z^2"])[0].clone();
        assert!(gb.elements().iter().any(|g| *g == target));
        assert!(satisfies_buchberger_criterion(&gb).unwrap());
        assert!(is_reduced(&gb));
    }

    #[test]
    fn trivial_bases() {
        let r = RingContext::with_names(["x", "y", "z"]).unwrap();
        let gb = buchberger(&r, &ps(&r, &["x", "y"]), &MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.leading_term_ideal().len(), 2);
        let empty = buchberger::<Rational>(&r, &[], &MonomialOrder::DegRevLex).unwrap();
        assert!(empty.is_empty());
        let lex = buchberger(&r, &ps(&r, &["x^2-y"]), &MonomialOrder::Lex).unwrap();
        assert_eq!(lex.leading_term_ideal(), vec![Monomial::from_slice(&[2, 0, 0])]);
        let unit = buchberger(&r, &ps(&r, &["x*y-1", "x"]), &MonomialOrder::DegRevLex).unwrap();
        assert!(unit.is_unit());
    }
}
