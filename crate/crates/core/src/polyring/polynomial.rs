use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::ring::same_ring;
use super::{Monomial, RingContext};
use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub coeff: C,
    pub mon: Monomial,
}

/// A polynomial: nonzero terms sorted strictly descending in the ring order.
#[derive(Clone)]
pub struct Polynomial<C> {
    ring: Arc<RingContext>,
    terms: Vec<Term<C>>,
}

impl<C: Coefficient> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_variables(&other.ring)
            && if *self.ring.order() == *other.ring.order() {
                self.terms == other.terms
            } else {
                self.terms.len() == other.terms.len() && (self - &other.to_ring(&self.ring)).is_zero()
            }
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<RingContext>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Arc<RingContext>, c: C) -> Self {
        Self::term(ring, c, Monomial::one(ring.num_vars()))
    }

    pub fn term(ring: &Arc<RingContext>, c: C, mon: Monomial) -> Self {
        debug_assert_eq!(mon.num_vars(), ring.num_vars());
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { coeff: c, mon }] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<RingContext>, mon: Monomial) -> Self {
        Self::term(ring, C::one(), mon)
    }

    pub fn var(ring: &Arc<RingContext>, i: usize) -> Result<Self> {
        if i >= ring.num_vars() {
            return Err(Error::VariableOutOfRange { index: i, num_vars: ring.num_vars() });
        }
        Ok(Self::monomial(ring, Monomial::var(ring.num_vars(), i)))
    }

    /// Builds a normalized polynomial from arbitrary terms.
    pub fn from_terms(ring: &Arc<RingContext>, terms: impl IntoIterator<Item = (C, Monomial)>) -> Self {
        let order = ring.order();
        let mut raw: Vec<Term<C>> = terms.into_iter().filter(|(c, _)| !c.is_zero()).map(|(coeff, mon)| Term { coeff, mon }).collect();
        raw.sort_by(|a, b| order.cmp(&b.mon, &a.mon));
        let mut terms: Vec<Term<C>> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mon == t.mon => {
                    let c = std::mem::replace(&mut last.coeff, C::zero());
                    last.coeff = c + t.coeff;
                    if last.coeff.is_zero() {
                        terms.pop();
                    }
                }
                _ => terms.push(t),
            }
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms already sorted strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<RingContext>, terms: Vec<Term<C>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].mon, &w[1].mon) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mon.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mon.degree() == t.mon.degree()),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|t| t.mon.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Union of the supports of all terms.
    pub fn variables(&self) -> Vec<usize> {
        let n = self.ring.num_vars();
        (0..n).filter(|&i| self.terms.iter().any(|t| t.mon.exp(i) > 0)).collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |t: &Term<C>| {
            if negate_other {
                Term { coeff: -t.coeff.clone(), mon: t.mon.clone() }
            } else {
                t.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].mon, &b[j].mon) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(take_b(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { a[i].coeff.clone() - b[j].coeff.clone() } else { a[i].coeff.clone() + b[j].coeff.clone() };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mon: a[i].mon.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(take_b));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].coeff, &self.terms[0].mon);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].coeff, &other.terms[0].mon);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                raw.push((s.coeff.clone() * t.coeff.clone(), s.mon.mul(&t.mon)));
            }
        }
        Self::from_terms(&self.ring, raw)
    }

    /// `c * m * self`; the term order is preserved so no re-sorting happens.
    pub fn mul_term(&self, c: &C, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let coeff = t.coeff.clone() * c.clone();
                (!coeff.is_zero()).then(|| Term { coeff, mon: t.mon.mul(m) })
            })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(c, &Monomial::one(self.ring.num_vars()))
    }

    /// `self - c * m * g`.
    pub fn sub_mul_term(&self, c: &C, m: &Monomial, g: &Self) -> Self {
        self.merge(&g.mul_term(c, m), true)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        let n = self.ring.num_vars();
        if i >= n {
            return Err(Error::VariableOutOfRange { index: i, num_vars: n });
        }
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.mon.exp(i);
            if e == 0 {
                return None;
            }
            let mut mon = t.mon.clone();
            mon.set_exp(i, e - 1);
            let coeff = t.coeff.clone() * C::from_u32(e as u32).expect("small integer");
            Some((coeff, mon))
        });
        Ok(Self::from_terms(&self.ring, terms.collect::<Vec<_>>()))
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::LengthMismatch(point.len(), self.ring.num_vars()));
        }
        let mut acc = C::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mon.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            acc = acc + v;
        }
        Ok(acc)
    }

    /// The same polynomial re-sorted for a ring with identical variables.
    pub fn to_ring(&self, target: &Arc<RingContext>) -> Self {
        assert!(self.ring.same_variables(target), "target ring has different variables");
        if same_ring(&self.ring, target) {
            return Polynomial { ring: target.clone(), terms: self.terms.clone() };
        }
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.mon, &a.mon));
        Polynomial { ring: target.clone(), terms }
    }

    /// Renames variables: variable `i` becomes `var_map[i]` in `target`.
    pub fn map_variables(&self, target: &Arc<RingContext>, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ring.num_vars());
        let n = target.num_vars();
        let terms = self.terms.iter().map(|t| {
            let mut e = vec![0u16; n];
            for (i, &x) in t.mon.exponents().iter().enumerate() {
                e[var_map[i]] += x;
            }
            (t.coeff.clone(), Monomial::from_slice(&e))
        });
        Self::from_terms(target, terms.collect::<Vec<_>>())
    }

    /// Image under the map sending variable `i` to `var_map[i]` when it is
    /// `Some`, and to zero otherwise.
    pub fn restrict(&self, target: &Arc<RingContext>, var_map: &[Option<usize>]) -> Self {
        assert_eq!(var_map.len(), self.ring.num_vars());
        let n = target.num_vars();
        let terms = self.terms.iter().filter_map(|t| {
            let mut e = vec![0u16; n];
            for (i, &x) in t.mon.exponents().iter().enumerate() {
                if x > 0 {
                    e[var_map[i]?] += x;
                }
            }
            Some((t.coeff.clone(), Monomial::from_slice(&e)))
        });
        Self::from_terms(target, terms.collect::<Vec<_>>())
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> Option<D>) -> Option<Polynomial<D>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = f(&t.coeff)?;
            if !c.is_zero() {
                terms.push(Term { coeff: c, mon: t.mon.clone() });
            }
        }
        Some(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Coefficient of a monomial.
    pub fn coeff_of(&self, m: &Monomial) -> C {
        let order = self.ring.order();
        self.terms.binary_search_by(|t| order.cmp(m, &t.mon)).map(|i| self.terms[i].coeff.clone()).unwrap_or_else(|_| C::zero())
    }
}

impl<F: Field> Polynomial<F> {
    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Exact division by a constant.
    pub fn div_constant(&self, c: &F) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(self.scale(&c.inv()))
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (k, t) in self.terms.iter().enumerate() {
            let s = t.coeff.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if t.mon.is_one() {
                write!(f, "{body}")?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                t.mon.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! poly_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl<C: Coefficient> $Trait<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl<C: Coefficient> $Trait<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coefficient> $Trait<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        let terms = self.terms.iter().map(|t| Term { coeff: -t.coeff.clone(), mon: t.mon.clone() }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
