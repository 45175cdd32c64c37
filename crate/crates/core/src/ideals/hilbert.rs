use std::fmt;

use serde::{Deserialize, Serialize};

use super::Ideal;
use crate::error::{Error, Result};
use crate::polyring::{binomial, minimalize, Monomial};
use crate::scalar::Field;

/// `numerator(v) / (1 - v)^denominator_exponent` with `numerator(1) != 0`
/// unless the exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator_exponent: u32,
}

impl HilbertSeries {
    /// Brings `num / (1-v)^e` to canonical form.
    pub fn new(num: Vec<i64>, e: u32) -> Self {
        let mut num = num;
        let mut e = e;
        while e > 0 && !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - v)
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0i64;
            for &c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = q;
            e -= 1;
        }
        while num.last() == Some(&0) {
            num.pop();
        }
        HilbertSeries { numerator: num, denominator_exponent: e }
    }

    /// Dimension of the degree-`d` component.
    pub fn coefficient(&self, d: u32) -> i64 {
        let e = self.denominator_exponent as u64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| *k as u32 <= d)
            .map(|(k, &c)| {
                let m = d as u64 - k as u64;
                let b = if e == 0 { u64::from(m == 0) } else { binomial(m + e - 1, e - 1) };
                c * b as i64
            })
            .sum()
    }

    /// Krull dimension of the graded ring.
    pub fn dimension(&self) -> u32 {
        self.denominator_exponent
    }

    /// Multiplicity `numerator(1)`.
    pub fn degree(&self) -> i64 {
        self.numerator.iter().sum()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.unsigned_abs();
            let coeff = if a == 1 && k > 0 { String::new() } else { a.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "v".to_string(),
                _ => format!("v^{k}"),
            };
            write!(f, "{sign}{coeff}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")/(1-v)^{}", self.denominator_exponent)
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// Numerator of the Hilbert series of `S/(mons)` over `(1-v)^n`.
pub fn kpoly(mons: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(mons.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let n = gens[0].num_vars();
    let mut count = vec![0usize; n];
    let mut coprime = true;
    let mut seen = vec![false; n];
    for m in &gens {
        for v in m.support() {
            count[v] += 1;
            if seen[v] {
                coprime = false;
            }
            seen[v] = true;
        }
    }
    if coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            let mut f = vec![0i64; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    let pivot = (0..n).max_by_key(|&v| count[v]).expect("variables");
    let p = Monomial::var(n, pivot);
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(pivot) == 0).cloned().collect();
    plus.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|m| m.div_var(pivot).unwrap_or_else(|| m.clone())).collect();
    let mut out = kpoly(&plus);
    poly_add_shifted(&mut out, &kpoly(&colon), 1);
    out
}

pub fn hilbert_series_of_monomials(n: usize, mons: &[Monomial]) -> HilbertSeries {
    HilbertSeries::new(kpoly(mons), n as u32)
}

/// Number of monomials of degree `d` outside the monomial ideal.
pub fn count_standard_monomials(n: usize, mons: &[Monomial], d: u32) -> u64 {
    crate::polyring::monomials_of_degree(n, d).into_iter().filter(|m| !mons.iter().any(|g| g.divides(m))).count() as u64
}

impl<F: Field> Ideal<F> {
    /// Hilbert series of `S / A` for a homogeneous ideal.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let init = self.initial_monomials()?;
        Ok(hilbert_series_of_monomials(self.ring().num_vars(), &init))
    }
}
