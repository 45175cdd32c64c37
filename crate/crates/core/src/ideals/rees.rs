use std::sync::Arc;

use super::ideal::fresh_name;
use super::Ideal;
use crate::error::{Error, Result};
use crate::groebner::buchberger;
use crate::polyring::{MonomialOrder, Polynomial, RingContext};
use crate::scalar::Field;

/// Defining ideal of a Rees algebra inside `R[T_1, ..., T_m]`.
///
/// The extended ring lists `T_1..T_m` first and then the variables of `R`.
#[derive(Clone, Debug)]
pub struct ReesIdeal<F: Field> {
    pub ring: Arc<RingContext>,
    pub num_t: usize,
    pub ideal: Ideal<F>,
}

impl<F: Field> ReesIdeal<F> {
    /// Degree in the `T` variables of a homogeneous element.
    pub fn t_degree(&self, f: &Polynomial<F>) -> u32 {
        f.leading_monomial().map_or(0, |m| m.exponents()[..self.num_t].iter().map(|&e| e as u32).sum())
    }

    /// Index of `T_i` (1-based) in the extended ring.
    pub fn t_var(&self, i: usize) -> usize {
        i - 1
    }

    /// Index of a variable of the base ring in the extended ring.
    pub fn base_var(&self, i: usize) -> usize {
        self.num_t + i
    }
}

/// Kernel of `R[T] -> R[u]`, `T_i -> u f_i`, plus `modulo` when given, as
/// `((T_i - u f_i) + modulo) ∩ R[T]`.
pub fn rees_ideal<F: Field>(a: &Ideal<F>, modulo: Option<&Ideal<F>>) -> Result<ReesIdeal<F>> {
    let base = a.ring();
    if let Some(m) = modulo {
        if !m.ring().same_variables(base) {
            return Err(Error::ContextMismatch);
        }
    }
    let n = base.num_vars();
    let gens = a.generators();
    let m = gens.len();
    let u = fresh_name(base, "u");
    let mut t_names = Vec::with_capacity(m);
    for i in 1..=m {
        let mut name = format!("T{i}");
        while base.var_index(&name).is_some() || name == u {
            name.push('_');
        }
        t_names.push(name);
    }
    let mut names = vec![u];
    names.extend(t_names.iter().cloned());
    names.extend(base.var_names().iter().cloned());
    let big = RingContext::new(names, MonomialOrder::elimination(1))?;
    let embed: Vec<usize> = (0..n).map(|i| 1 + m + i).collect();
    let uvar = Polynomial::<F>::var(&big, 0)?;
    let mut sys = Vec::new();
    for (i, f) in gens.iter().enumerate() {
        let t = Polynomial::var(&big, 1 + i)?;
        sys.push(&t - &(&uvar * &f.map_variables(&big, &embed)));
    }
    if let Some(md) = modulo {
        for g in md.generators() {
            sys.push(g.map_variables(&big, &embed));
        }
    }
    let gb = buchberger(&big, &sys, big.order())?;
    let mut out_names = t_names;
    out_names.extend(base.var_names().iter().cloned());
    let ring = RingContext::with_names(out_names)?;
    let back: Vec<Option<usize>> = std::iter::once(None).chain((0..m + n).map(Some)).collect();
    let elims = gb.elements().iter().filter(|g| g.terms().iter().all(|t| t.mon.exp(0) == 0)).map(|g| g.restrict(&ring, &back));
    let ideal = Ideal::new(&ring, elims.collect::<Vec<_>>())?;
    Ok(ReesIdeal { ring, num_t: m, ideal })
}

/// A minimal generating set of `(I + J) / J` chosen from the generators of
/// `I`: generators already in `J` are dropped, then each remaining one is
/// dropped when it lies in `J` plus the others.
pub fn minimal_generators_modulo<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Vec<Polynomial<F>>> {
    let mut cands: Vec<Polynomial<F>> = Vec::new();
    for g in i.interreduce().generators() {
        if !j.contains(g)? {
            cands.push(g.clone());
        }
    }
    // drop from the top: high-degree generators are the likeliest redundancies
    cands.sort_by_key(|g| g.degree());
    let mut k = cands.len();
    while k > 0 {
        k -= 1;
        let others: Vec<Polynomial<F>> =
            j.generators().iter().cloned().chain(cands.iter().enumerate().filter(|(x, _)| *x != k).map(|(_, g)| g.clone())).collect();
        let rest = Ideal::new(i.ring(), others)?;
        if rest.contains(&cands[k])? {
            cands.remove(k);
        }
    }
    Ok(cands)
}

/// Relation type of `(I + J)/J`: the largest `T`-degree of a minimal
/// generator of its Rees ideal.
pub fn relation_type<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<u32> {
    for g in j.generators() {
        if !i.contains(g)? {
            return Err(Error::NotContained(g.to_string()));
        }
    }
    let gens = minimal_generators_modulo(i, j)?;
    if gens.len() <= 1 {
        return Ok(1);
    }
    let quotient_gens = Ideal::new(i.ring(), gens)?;
    let rees = rees_ideal(&quotient_gens, Some(j))?;
    let mut by_degree: Vec<(u32, Polynomial<F>)> = rees.ideal.generators().iter().map(|g| (rees.t_degree(g), g.clone())).collect();
    by_degree.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.degree().cmp(&b.1.degree())));
    let max_t = by_degree.last().map_or(0, |x| x.0);
    let mut result = 1;
    for d in 2..=max_t {
        let lower: Vec<Polynomial<F>> = by_degree.iter().filter(|x| x.0 < d).map(|x| x.1.clone()).collect();
        let lower = Ideal::new(&rees.ring, lower)?;
        for (_, g) in by_degree.iter().filter(|x| x.0 == d) {
            if !lower.contains(g)? {
                result = d;
                break;
            }
        }
    }
    Ok(result)
}
