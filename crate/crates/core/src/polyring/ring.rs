use std::collections::HashSet;
use std::sync::Arc;

use super::MonomialOrder;
use crate::error::{Error, Result};

/// Variable names plus the term order used to sort polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
    order: MonomialOrder,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !valid_name(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidRing("too many variables".into()));
        }
        Ok(Arc::new(RingContext { names, order }))
    }

    /// Degrevlex ring on the given names.
    pub fn with_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::new(names, MonomialOrder::DegRevLex)
    }

    /// Ring on `x1..xn`, degrevlex.
    pub fn indexed(prefix: &str, n: usize) -> Arc<Self> {
        Self::with_names((1..=n).map(|i| format!("{prefix}{i}"))).expect("valid generated names")
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<Self> {
        if self.order == order {
            self.clone()
        } else {
            Arc::new(RingContext { names: self.names.clone(), order })
        }
    }

    /// Same variables, ignoring the order.
    pub fn same_variables(&self, other: &RingContext) -> bool {
        self.names == other.names
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<RingContext>, b: &Arc<RingContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(RingContext::with_names(["x", "x"]).is_err());
        assert!(RingContext::with_names(["1x"]).is_err());
        assert!(RingContext::with_names(Vec::<String>::new()).is_err());
        let r = RingContext::with_names(["x", "y_1"]).unwrap();
        assert_eq!(r.var_index("y_1"), Some(1));
        let l = r.with_order(MonomialOrder::Lex);
        assert!(l.same_variables(&r) && *l != *r);
    }
}
