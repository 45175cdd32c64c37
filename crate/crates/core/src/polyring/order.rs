use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// Term orders on exponent vectors. Variable 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Block order: compare the first `k` variables by `inner`, break ties
    /// on the remaining variables by `inner`.
    Elimination {
        k: usize,
        inner: Box<MonomialOrder>,
    },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::DegRevLex
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Elimination { k, inner } => write!(f, "elim({k},{inner})"),
        }
    }
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    a.cmp(b)
}

fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    /// Block order eliminating the first `k` variables, degrevlex inside.
    pub fn elimination(k: usize) -> Self {
        MonomialOrder::Elimination { k, inner: Box::new(MonomialOrder::DegRevLex) }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    pub fn cmp_exps(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Elimination { k, inner } => {
                let k = (*k).min(a.len());
                inner.cmp_exps(&a[..k], &b[..k]).then_with(|| inner.cmp_exps(&a[k..], &b[k..]))
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| revlex_tail(a.exponents(), b.exponents())),
            _ => self.cmp_exps(a.exponents(), b.exponents()),
        }
    }

    /// Checked comparison.
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        if u.num_vars() != v.num_vars() {
            return Err(Error::LengthMismatch(u.num_vars(), v.num_vars()));
        }
        Ok(self.cmp(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_slice(e)
    }

    #[test]
    fn named_comparisons() {
        assert_eq!(MonomialOrder::Lex.compare(&m(&[2, 1]), &m(&[1, 2])).unwrap(), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Less);
        assert_eq!(MonomialOrder::elimination(1).compare(&m(&[0, 5]), &m(&[1, 0])).unwrap(), Ordering::Less);
        assert!(MonomialOrder::Lex.compare(&m(&[1]), &m(&[1, 0])).is_err());
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(MonomialOrder::DegRevLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::DegRevLex,
            MonomialOrder::elimination(1),
            MonomialOrder::elimination(2),
            MonomialOrder::Elimination { k: 2, inner: Box::new(MonomialOrder::Lex) },
        ]
    }

    fn exps() -> impl Strategy<Value = Vec<u16>> {
        prop::collection::vec(0u16..4, 4)
    }

    proptest! {
        #[test]
        fn order_axioms(a in exps(), b in exps(), c in exps()) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let one = Monomial::one(4);
            for o in orders() {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), o.cmp(&a, &b));
                prop_assert_ne!(o.cmp(&one, &a), Ordering::Greater);
                if let MonomialOrder::Elimination { k, .. } = o {
                    let a_uses = a.exponents()[..k].iter().any(|&e| e > 0);
                    let b_free = b.exponents()[..k].iter().all(|&e| e == 0);
                    if a_uses && b_free {
                        prop_assert_eq!(o.cmp(&a, &b), Ordering::Greater);
                    }
                }
            }
        }
    }
}
