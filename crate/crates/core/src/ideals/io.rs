//! Ideal files: a `ring: x,y,z` header followed by one generator per line.
//! Blank lines and lines starting with `#` are ignored.

use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::polyring::{parse_polynomial, RingContext};
use crate::scalar::Field;

pub fn parse_ideal_file<F: Field>(text: &str) -> Result<Ideal<F>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty ideal file".into()))?;
    let names = header.strip_prefix("ring:").ok_or_else(|| Error::Parse("ideal file must start with `ring: x,y,...`".into()))?;
    let names: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let ring = RingContext::with_names(names)?;
    let gens = lines
        .enumerate()
        .map(|(k, l)| parse_polynomial(&ring, l).map_err(|e| Error::Parse(format!("generator {}: {e}", k + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

/// Parses an ideal file into an existing ring (the header must list the same
/// variables).
pub fn parse_ideal_file_in<F: Field>(ring: &Arc<RingContext>, text: &str) -> Result<Ideal<F>> {
    let ideal: Ideal<F> = parse_ideal_file(text)?;
    if !ideal.ring().same_variables(ring) {
        return Err(Error::ContextMismatch);
    }
    Ideal::new(ring, ideal.generators().to_vec())
}

pub fn format_ideal_file<F: Field>(ideal: &Ideal<F>) -> String {
    let mut s = format!("ring: {}\n", ideal.ring().var_names().join(","));
    for g in ideal.generators() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn round_trip() {
        let text = "# curve\nring: x,y,z\nx^4 - y*z\n\ny^2 - x*z\nx^3*y - z^2\n";
        let i: Ideal<Rational> = parse_ideal_file(text).unwrap();
        assert_eq!(i.num_generators(), 3);
        let again: Ideal<Rational> = parse_ideal_file(&format_ideal_file(&i)).unwrap();
        assert_eq!(again.generators(), i.generators());
        assert!(parse_ideal_file::<Rational>("x^2\n").is_err());
        assert!(parse_ideal_file::<Rational>("ring: x\nx+q\n").is_err());
    }
}
