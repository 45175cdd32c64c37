use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::linalg::{MonomialIndex, Span};
use crate::polyring::{minimalize, Monomial, MonomialOrder, Polynomial, RingContext};
use crate::scalar::Field;

/// An ideal given by generators, with lazily computed Groebner bases.
pub struct Ideal<F> {
    ring: Arc<RingContext>,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(cache) }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<F: Field> Ideal<F> {
    /// Ideal generated by `gens`; zero generators are dropped and the rest
    /// are moved into `ring`.
    pub fn new(ring: &Arc<RingContext>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if !g.ring().same_variables(ring) {
                return Err(Error::ContextMismatch);
            }
            if !g.is_zero() {
                out.push(g.to_ring(ring));
            }
        }
        Ok(Self::from_parts(ring, out))
    }

    fn from_parts(ring: &Arc<RingContext>, gens: Vec<Polynomial<F>>) -> Self {
        Ideal { ring: ring.clone(), gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn parse(ring: &Arc<RingContext>, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| crate::polyring::parse_polynomial(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, ps)
    }

    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Self::from_parts(ring, Vec::new())
    }

    pub fn from_monomials(ring: &Arc<RingContext>, mons: impl IntoIterator<Item = Monomial>) -> Self {
        let gens = minimalize(mons.into_iter().collect()).into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Self::from_parts(ring, gens)
    }

    /// The maximal ideal of the origin.
    pub fn maximal(ring: &Arc<RingContext>) -> Self {
        let n = ring.num_vars();
        Self::from_monomials(ring, (0..n).map(|i| Monomial::var(n, i)))
    }

    /// `m^d`.
    pub fn maximal_power(ring: &Arc<RingContext>, d: u32) -> Self {
        Self::from_monomials(ring, crate::polyring::monomials_of_degree(ring.num_vars(), d))
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Leading monomials of monomial generators (only meaningful when
    /// `is_monomial`).
    pub fn monomial_generators(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect()
    }

    fn check(&self, other: &Ideal<F>) -> Result<()> {
        if self.ring.same_variables(&other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Reduced Groebner basis in the ring's own order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.gb_in(&self.ring.order().clone())
    }

    pub fn gb_in(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis<F>>> {
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some(gb) = cache.get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.ring, &self.gens, order)?);
        cache.insert(order.clone(), gb.clone());
        Ok(gb)
    }

    /// Installs a basis computed elsewhere.
    pub fn seed_gb(&self, gb: GroebnerBasis<F>) {
        let mut cache = self.cache.lock().expect("cache lock");
        cache.insert(gb.order().clone(), Arc::new(gb));
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        if self.is_homogeneous() || self.is_monomial() {
            return Ok(false);
        }
        Ok(self.gb()?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if !f.ring().same_variables(&self.ring) {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_monomial() {
            let mons = self.monomial_generators();
            return Ok(f.terms().iter().all(|t| mons.iter().any(|m| m.divides(&t.mon))));
        }
        let fm = f.monic();
        if self.gens.iter().any(|g| g.monic() == fm) {
            return Ok(true);
        }
        self.gb()?.member(f)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.check(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Cheap generator cleanup: minimal generators for monomial ideals,
    /// otherwise monic, deduplicated, and linearly independent within each
    /// degree for homogeneous generators.
    pub fn interreduce(&self) -> Ideal<F> {
        if self.is_monomial() {
            return Self::from_monomials(&self.ring, self.monomial_generators());
        }
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.monic()).collect();
        let order = self.ring.order().clone();
        gens.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| b.is_monomial().cmp(&a.is_monomial()))
                .then_with(|| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
        });
        gens.dedup_by(|a, b| a == b);
        if gens.iter().any(|g| g.is_constant()) {
            return Self::from_parts(&self.ring, vec![Polynomial::one(&self.ring)]);
        }
        if !self.is_homogeneous() {
            return Self::from_parts(&self.ring, gens);
        }
        let mut out = Vec::new();
        let mut k = 0;
        while k < gens.len() {
            let d = gens[k].degree().unwrap();
            let end = gens[k..].iter().position(|g| g.degree() != Some(d)).map_or(gens.len(), |p| k + p);
            let group = &gens[k..end];
            // monomials come first in each group; strip them from the rest
            let covered: HashSet<&Monomial> = group.iter().filter(|g| g.is_monomial()).map(|g| g.leading_monomial().unwrap()).collect();
            out.extend(group.iter().filter(|g| g.is_monomial()).cloned());
            let rest: Vec<Polynomial<F>> = group
                .iter()
                .filter(|g| !g.is_monomial())
                .map(|g| {
                    let terms = g.terms().iter().filter(|t| !covered.contains(&t.mon)).map(|t| (t.coeff.clone(), t.mon.clone()));
                    Polynomial::from_terms(&self.ring, terms.collect::<Vec<_>>())
                })
                .filter(|g| !g.is_zero())
                .collect();
            let idx = MonomialIndex::from_monomials({
                let mut ms: Vec<Monomial> = rest.iter().flat_map(|g| g.terms().iter().map(|t| t.mon.clone())).collect();
                ms.sort_by(|a, b| a.exponents().cmp(b.exponents()));
                ms.dedup();
                ms
            });
            let mut span = Span::<F>::new(idx.len());
            for g in rest {
                if span.insert(&idx.vector(&g).expect("indexed")) {
                    out.push(g.monic());
                }
            }
            k = end;
        }
        Self::from_parts(&self.ring, out)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let gens = self.gens.iter().cloned().chain(other.gens.iter().map(|g| g.to_ring(&self.ring)));
        Ok(Self::from_parts(&self.ring, gens.collect()).interreduce())
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        if self.is_monomial() && other.is_monomial() {
            let a = self.monomial_generators();
            let b = other.monomial_generators();
            let prods = a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y)));
            return Ok(Self::from_monomials(&self.ring, prods.collect::<Vec<_>>()));
        }
        let others: Vec<Polynomial<F>> = other.gens.iter().map(|g| g.to_ring(&self.ring)).collect();
        let mut mons: HashSet<Monomial> = HashSet::new();
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &others {
                if f.is_monomial() && g.is_monomial() {
                    mons.insert(f.leading_monomial().unwrap().mul(g.leading_monomial().unwrap()));
                } else {
                    gens.push(f * g);
                }
            }
        }
        gens.extend(mons.into_iter().map(|m| Polynomial::monomial(&self.ring, m)));
        Ok(Self::from_parts(&self.ring, gens).interreduce())
    }

    pub fn power(&self, t: u32) -> Result<Ideal<F>> {
        if t == 0 {
            return Err(Error::InvalidArgument("ideal power t = 0 is the unit ideal".into()));
        }
        let base = self.interreduce();
        let mut acc = base.clone();
        for _ in 1..t {
            acc = acc.product(&base)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if self.is_monomial() && other.is_monomial() {
            let a = self.monomial_generators();
            let b = other.monomial_generators();
            let lcms = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y)));
            return Ok(Self::from_monomials(&self.ring, lcms.collect::<Vec<_>>()));
        }
        self.intersect_by_elimination(other)
    }

    /// `A ∩ B` as `(w A + (1 - w) B) ∩ k[x]`.
    pub fn intersect_by_elimination(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let n = self.ring.num_vars();
        let mut names = vec![fresh_name(&self.ring, "w")];
        names.extend(self.ring.var_names().iter().cloned());
        let big = RingContext::new(names, MonomialOrder::elimination(1))?;
        let shift: Vec<usize> = (1..=n).collect();
        let w = Polynomial::<F>::var(&big, 0)?;
        let one_minus_w = &Polynomial::one(&big) - &w;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(&w * &f.map_variables(&big, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_w * &g.map_variables(&big, &shift));
        }
        let gb = buchberger(&big, &gens, big.order())?;
        let back: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
        let out = gb.elements().iter().filter(|g| g.terms().iter().all(|t| t.mon.exp(0) == 0)).map(|g| g.restrict(&self.ring, &back));
        Ok(Self::from_parts(&self.ring, out.collect()))
    }

    /// `A : f`.
    pub fn colon(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("colon by the zero polynomial".into()));
        }
        if !f.ring().same_variables(&self.ring) {
            return Err(Error::ContextMismatch);
        }
        let f = f.to_ring(&self.ring);
        if self.is_monomial() && f.is_monomial() {
            let m = f.leading_monomial().unwrap();
            let quots = self.monomial_generators().into_iter().map(|g| g.gcd(m).divide_into(&g).expect("gcd divides"));
            return Ok(Self::from_monomials(&self.ring, quots.collect::<Vec<_>>()));
        }
        let principal = Self::from_parts(&self.ring, vec![f.clone()]);
        let inter = self.intersect(&principal)?;
        let mut gens = Vec::new();
        for g in inter.generators() {
            let (r, q) = crate::groebner::reduce(g, std::slice::from_ref(&f))?;
            debug_assert!(r.is_zero());
            gens.push(q.into_iter().next().expect("one quotient"));
        }
        Ok(Self::from_parts(&self.ring, gens))
    }

    /// `A : B`.
    pub fn colon_ideal(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let c = self.colon(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Self::from_parts(&self.ring, vec![Polynomial::one(&self.ring)])))
    }

    /// `A ∩ k[x_{k+1}, ..., x_n]`, kept in the same ring.
    pub fn eliminate(&self, k: usize) -> Result<Ideal<F>> {
        if k > self.ring.num_vars() {
            return Err(Error::VariableOutOfRange { index: k, num_vars: self.ring.num_vars() });
        }
        let gb = self.gb_in(&MonomialOrder::elimination(k))?;
        let out = gb
            .elements()
            .iter()
            .filter(|g| g.terms().iter().all(|t| t.mon.exponents()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.to_ring(&self.ring));
        Ok(Self::from_parts(&self.ring, out.collect()))
    }

    /// Image under the substitution sending variable `i` to `var_map[i]` in
    /// `target`, or to zero.
    pub fn restrict(&self, target: &Arc<RingContext>, var_map: &[Option<usize>]) -> Ideal<F> {
        let gens = self.gens.iter().map(|g| g.restrict(target, var_map)).filter(|g| !g.is_zero());
        Self::from_parts(target, gens.collect())
    }

    /// Leading monomials of a degrevlex Groebner basis.
    pub fn initial_monomials(&self) -> Result<Vec<Monomial>> {
        if self.is_monomial() {
            return Ok(minimalize(self.monomial_generators()));
        }
        Ok(self.gb_in(&MonomialOrder::DegRevLex)?.leading_term_ideal())
    }

    /// Height, read off the initial ideal as a minimum vertex cover of the
    /// supports of its generators.
    pub fn codimension(&self) -> Result<usize> {
        if self.is_zero() {
            return Ok(0);
        }
        let init = self.initial_monomials()?;
        if init.iter().any(|m| m.is_one()) {
            return Err(Error::UnitIdeal);
        }
        let edges: Vec<Vec<usize>> = init.iter().map(|m| m.support().collect()).collect();
        Ok(super::cover::min_hitting_set(self.ring.num_vars(), &edges).len())
    }

    /// Krull dimension of the quotient ring.
    pub fn dimension(&self) -> Result<usize> {
        Ok(self.ring.num_vars() - self.codimension()?)
    }

    /// Whether the quotient is zero-dimensional (every variable has a pure
    /// power in the initial ideal).
    pub fn is_m_primary(&self) -> Result<bool> {
        let n = self.ring.num_vars();
        if self.is_homogeneous() && self.gens.iter().all(|g| g.degree() == self.gens[0].degree()) && !self.gens.is_empty() {
            let d = self.gens[0].degree().unwrap();
            if d > 0 && self.degree_component_is_full(d)? {
                return Ok(true);
            }
        }
        let init = self.initial_monomials()?;
        Ok((0..n).all(|i| init.iter().any(|m| m.support().collect::<Vec<_>>() == [i])))
    }

    /// Whether every monomial of degree `d` lies in the ideal, for
    /// homogeneous ideals with all generators of degree `d`.
    fn degree_component_is_full(&self, d: u32) -> Result<bool> {
        let idx = MonomialIndex::of_degree(self.ring.num_vars(), d);
        if self.gens.len() < idx.len() {
            return Ok(false);
        }
        // a full rank modulo p forces full rank over the rationals
        let mut modp = Span::<crate::scalar::Zp>::new(idx.len());
        let mut exact_needed = false;
        for g in &self.gens {
            match g.map_coeffs(|c| c.to_zp()) {
                Some(gp) => {
                    modp.insert(&idx.vector(&gp).expect("degree d"));
                }
                None => exact_needed = true,
            }
            if modp.is_full() {
                return Ok(true);
            }
        }
        if !exact_needed && modp.is_full() {
            return Ok(true);
        }
        let mut span = Span::<F>::new(idx.len());
        for g in &self.gens {
            span.insert(&idx.vector(g).expect("degree d"));
        }
        Ok(span.is_full())
    }

    /// Whether every monomial of degree `c` lies in the ideal.
    pub fn contains_m_power(&self, c: u32) -> Result<bool> {
        Ok(self.m_power_test(c, true)?.unwrap_or(false))
    }

    /// `Some(true)` when `m^c` is contained, `Some(false)` when it is not,
    /// `None` when only the modular test ran and it was not conclusive.
    pub(crate) fn m_power_test(&self, c: u32, exact: bool) -> Result<Option<bool>> {
        let n = self.ring.num_vars();
        let mons = self.gens.iter().filter(|g| g.is_monomial()).map(|g| g.leading_monomial().unwrap().clone());
        let mons = minimalize(mons.collect());
        let uncovered: Vec<Monomial> =
            crate::polyring::monomials_of_degree(n, c).into_iter().filter(|m| !mons.iter().any(|g| g.divides(m))).collect();
        if uncovered.is_empty() {
            return Ok(Some(true));
        }
        if self.is_monomial() {
            return Ok(Some(false));
        }
        if !self.is_homogeneous() {
            let gb = self.gb()?;
            for m in uncovered {
                if !gb.member(&Polynomial::monomial(&self.ring, m))? {
                    return Ok(Some(false));
                }
            }
            return Ok(Some(true));
        }
        // only the uncovered monomials matter: project the degree-c
        // component onto their coordinates
        let idx = MonomialIndex::from_monomials(uncovered);
        let mut multiples = Vec::new();
        for g in self.gens.iter().filter(|g| !g.is_monomial()) {
            let dg = g.degree().unwrap();
            if dg > c {
                continue;
            }
            for m in crate::polyring::monomials_of_degree(n, c - dg) {
                multiples.push(g.mul_term(&F::one(), &m));
            }
        }
        fn project<G: Field>(idx: &MonomialIndex, p: &Polynomial<G>) -> Vec<(usize, G)> {
            let mut v: Vec<(usize, G)> = p.terms().iter().filter_map(|t| idx.get(&t.mon).map(|i| (i, t.coeff.clone()))).collect();
            v.sort_by_key(|e| e.0);
            v
        }
        let mut modp = Span::<crate::scalar::Zp>::new(idx.len());
        let mut lifted = true;
        for p in &multiples {
            crate::budget::check()?;
            match p.map_coeffs(|c| c.to_zp()) {
                Some(pp) => {
                    if modp.insert(&project(&idx, &pp)) && modp.is_full() {
                        return Ok(Some(true));
                    }
                }
                None => lifted = false,
            }
        }
        if lifted && !exact {
            return Ok(None);
        }
        let mut span = Span::<F>::new(idx.len());
        for p in &multiples {
            crate::budget::check()?;
            if span.insert(&project(&idx, p)) && span.is_full() {
                return Ok(Some(true));
            }
        }
        Ok(Some(false))
    }

    /// Whether this ideal equals `m^r`.
    pub fn equals_m_power(&self, r: u32) -> Result<bool> {
        if self.gens.iter().any(|g| g.min_degree().is_some_and(|d| d < r)) {
            return Ok(false);
        }
        if self.is_homogeneous() {
            let deg_r: Vec<Polynomial<F>> = self.gens.iter().filter(|g| g.degree() == Some(r)).cloned().collect();
            if deg_r.is_empty() {
                return Ok(false);
            }
            return Self::from_parts(&self.ring, deg_r).degree_component_is_full(r);
        }
        let gb = self.gb()?;
        for m in crate::polyring::monomials_of_degree(self.ring.num_vars(), r) {
            if !gb.member(&Polynomial::monomial(&self.ring, m))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn fresh_name(ring: &RingContext, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}
