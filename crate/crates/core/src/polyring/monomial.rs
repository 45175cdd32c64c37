use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 16]>;

/// A power product `x_1^a_1 ... x_n^a_n` with its total degree cached.
#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, n), deg: 0 }
    }

    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        Self::new(Exponents::from_slice(exps))
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::var_pow(n, i, 1)
    }

    pub fn var_pow(n: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// Bit `k` set when some variable `i` with `i % 32 == k` has exponent at
    /// least 1 (low half) or at least 2 (high half). `a | b` implies
    /// `mask(a) & !mask(b) == 0`.
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 32);
                if e > 1 {
                    m |= 1 << (32 + i % 32);
                }
            }
        }
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    pub fn pow(&self, e: u16) -> Monomial {
        Monomial { exps: self.exps.iter().map(|a| a * e).collect(), deg: self.deg * e as u32 }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect::<Exponents>())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect::<Exponents>())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponents restricted to a sub-slice of variables.
    pub fn select(&self, vars: &[usize]) -> Monomial {
        Monomial::new(vars.iter().map(|&i| self.exps[i]).collect::<Exponents>())
    }

    /// Divides by `x_i` once, if possible.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.deg -= 1;
        Some(m)
    }

    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
    }

    pub fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// All monomials of total degree `d` in `n` variables, lexicographically
/// descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_slice(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Removes monomials divisible by another one in the list (keeping one copy
/// of duplicates).
pub fn minimalize(mut mons: Vec<Monomial>) -> Vec<Monomial> {
    mons.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps.cmp(&b.exps)));
    mons.dedup();
    let mut kept: Vec<(u64, Monomial)> = Vec::new();
    for m in mons {
        let mask = m.divmask();
        if !kept.iter().any(|(k, g)| k & !mask == 0 && g.divides(&m)) {
            kept.push((mask, m));
        }
    }
    kept.into_iter().map(|(_, m)| m).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
