use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Ideal;
use crate::budget;
use crate::error::{Error, Result};
use crate::linalg::{MonomialIndex, Span};
use crate::polyring::{Monomial, Polynomial, RingContext};
use crate::scalar::{Coefficient, Field, Zp};

/// A matrix of polynomials over one ring.
#[derive(Clone)]
pub struct SymbolicMatrix<C> {
    ring: Arc<RingContext>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<C>>,
}

impl<C: Coefficient> SymbolicMatrix<C> {
    pub fn new(ring: &Arc<RingContext>, rows: usize, cols: usize, entries: Vec<Polynomial<C>>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!("{rows}x{cols} matrix needs {} entries", rows * cols)));
        }
        let mut out = Vec::with_capacity(entries.len());
        for e in entries {
            if !e.ring().same_variables(ring) {
                return Err(Error::ContextMismatch);
            }
            out.push(e.to_ring(ring));
        }
        Ok(SymbolicMatrix { ring: ring.clone(), rows, cols, entries: out })
    }

    pub fn from_rows(ring: &Arc<RingContext>, rows: Vec<Vec<Polynomial<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial<C>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::InvalidArgument("row counts differ".into()));
        }
        let mut rows = Vec::new();
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.extend(other.row(i).iter().map(|p| p.to_ring(&self.ring)));
            rows.push(r);
        }
        Self::from_rows(&self.ring, rows)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<Vec<Vec<C>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.eval(point)).collect()).collect()
    }

    pub fn restrict(&self, target: &Arc<RingContext>, var_map: &[Option<usize>]) -> Self {
        let entries = self.entries.iter().map(|p| p.restrict(target, var_map)).collect();
        SymbolicMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> Option<D>) -> Option<SymbolicMatrix<D>> {
        let entries = self.entries.iter().map(|p| p.map_coeffs(&f)).collect::<Option<Vec<_>>>()?;
        Some(SymbolicMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<C> {
        assert_eq!(rows.len(), cols.len());
        let mut level = vec![(0u64, Polynomial::one(&self.ring))];
        for (k, &c) in cols.iter().enumerate() {
            level = self.extend_level(&level, c, rows, k);
        }
        level.into_iter().next().map(|(_, p)| p).unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Expands the partial determinants on the first `k` chosen columns by
    /// one more column `c`, over the row pool `pool`.
    fn extend_level(&self, level: &[(u64, Polynomial<C>)], c: usize, pool: &[usize], k: usize) -> Vec<(u64, Polynomial<C>)> {
        let mut next: std::collections::BTreeMap<u64, Polynomial<C>> = std::collections::BTreeMap::new();
        let nz: Vec<usize> = pool.iter().copied().filter(|&i| !self.get(i, c).is_zero()).collect();
        for (mask, val) in level {
            for &i in &nz {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let below = (mask & ((1u64 << i) - 1)).count_ones() as usize;
                let prod = self.get(i, c) * val;
                let term = if (below + k) % 2 == 1 { -prod } else { prod };
                let key = mask | 1 << i;
                match next.get_mut(&key) {
                    Some(acc) => *acc = &*acc + &term,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Visits every nonzero `r`-minor as `(row mask, columns, value)`.
    ///
    /// Columns are chosen depth first; partial determinants on a column
    /// prefix are shared by all extensions, and empty prefixes are pruned.
    /// A `seed` shuffles the column order.
    pub fn for_each_minor(
        &self,
        r: usize,
        seed: Option<u64>,
        mut visit: impl FnMut(u64, &[usize], &Polynomial<C>) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(Error::InvalidArgument(format!("minor size {r} out of range for a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows > 64 {
            return Err(Error::InvalidArgument("at most 64 rows supported".into()));
        }
        let mut cols: Vec<usize> = (0..self.cols).filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero())).collect();
        if let Some(s) = seed {
            cols.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
        }
        let pool: Vec<usize> = (0..self.rows).collect();
        let mut chosen = Vec::with_capacity(r);
        let start = vec![(0u64, Polynomial::one(&self.ring))];
        self.dfs(r, &cols, 0, &pool, &start, &mut chosen, &mut visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        r: usize,
        cols: &[usize],
        from: usize,
        pool: &[usize],
        level: &[(u64, Polynomial<C>)],
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(u64, &[usize], &Polynomial<C>) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let k = chosen.len();
        if k == r {
            for (mask, p) in level {
                if visit(*mask, chosen, p).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            return Ok(ControlFlow::Continue(()));
        }
        budget::check()?;
        for idx in from..cols.len() {
            if cols.len() - idx < r - k {
                break;
            }
            let c = cols[idx];
            let next = self.extend_level(level, c, pool, k);
            if next.is_empty() {
                continue;
            }
            // the columns of a minor are reported in increasing order
            chosen.push(c);
            let flow = self.dfs(r, cols, idx + 1, pool, &next, chosen, visit)?;
            chosen.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// All nonzero `r`-minors.
    pub fn minors(&self, r: usize) -> Result<Vec<Polynomial<C>>> {
        let mut out = Vec::new();
        let _ = self.for_each_minor(r, None, |_, _, p| {
            out.push(p.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }
}

impl<C: Coefficient> fmt::Debug for SymbolicMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The `n x s` matrix with entry `(i, j) = d f_j / d x_i`.
pub fn jacobian_matrix<C: Coefficient>(ring: &Arc<RingContext>, gens: &[Polynomial<C>]) -> Result<SymbolicMatrix<C>> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("jacobian of an empty generator list".into()));
    }
    let n = ring.num_vars();
    let mut entries = Vec::with_capacity(n * gens.len());
    for i in 0..n {
        for f in gens {
            entries.push(f.to_ring(ring).partial_derivative(i)?);
        }
    }
    SymbolicMatrix::new(ring, n, gens.len(), entries)
}

/// Outcome of streaming the `r`-minors of a matrix into the degree-`d`
/// component.
pub enum MinorSpan<F> {
    /// The minors span every form of degree `d`.
    Full,
    /// The exact span, as a list of independent forms; every monomial that
    /// occurs as a minor is among them.
    Partial(Vec<Polynomial<F>>),
}

/// Decides whether the `r`-minors span all forms of degree `d` (the entries
/// of the matrix are assumed homogeneous so that every minor has degree `d`).
/// A full rank modulo a prime settles the question early; otherwise the span
/// is computed exactly from all minors.
pub fn minor_span<F: Field>(m: &SymbolicMatrix<F>, r: usize, d: u32, want_basis: bool) -> Result<MinorSpan<F>> {
    let n = m.ring().num_vars();
    let idx = MonomialIndex::of_degree(n, d);
    if let Some(mp) = m.map_coeffs(|c| c.to_zp()) {
        let mut span = Span::<Zp>::new(idx.len());
        let flow = mp.for_each_minor(r, Some(0x5eed), |_, _, p| {
            if let Some(v) = idx.vector(p) {
                span.insert(&v);
            }
            if span.is_full() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if flow.is_break() {
            return Ok(MinorSpan::Full);
        }
    }
    let mut span = Span::<F>::new(idx.len());
    let mut mons: HashSet<Monomial> = HashSet::new();
    let mut forms = Vec::new();
    let flow = m.for_each_minor(r, None, |_, _, p| {
        if p.is_monomial() {
            mons.insert(p.leading_monomial().unwrap().clone());
        }
        if let Some(v) = idx.vector(p) {
            if span.insert(&v) && want_basis {
                forms.push(p.monic());
            }
        }
        if span.is_full() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    if flow.is_break() {
        return Ok(MinorSpan::Full);
    }
    if !want_basis {
        return Ok(MinorSpan::Partial(Vec::new()));
    }
    // rebuild the basis with the monomial minors in front
    let mut mons: Vec<Monomial> = mons.into_iter().collect();
    mons.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    let mut basis = Span::<F>::new(idx.len());
    let mut out = Vec::new();
    for p in mons.into_iter().map(|mon| Polynomial::monomial(m.ring(), mon)).chain(forms) {
        if basis.insert(&idx.vector(&p).expect("degree d")) {
            out.push(p);
        }
    }
    Ok(MinorSpan::Partial(out))
}

/// The Jacobian ideal `(J, I_r(Θ))` with `r` the height of `J`.
pub fn jacobian_ideal<F: Field>(j: &Ideal<F>) -> Result<Ideal<F>> {
    let r = j.codimension()?;
    jacobian_ideal_with_height(j, r)
}

pub fn jacobian_ideal_with_height<F: Field>(j: &Ideal<F>, r: usize) -> Result<Ideal<F>> {
    if j.is_zero() || r == 0 {
        return Err(Error::InvalidArgument("the Jacobian ideal needs a nonzero proper ideal".into()));
    }
    let ring = j.ring();
    let theta = jacobian_matrix(ring, j.generators())?;
    let mut gens: Vec<Polynomial<F>> = j.generators().to_vec();
    if j.is_monomial() {
        let mut mons: HashSet<Monomial> = HashSet::new();
        let _ = theta.for_each_minor(r, None, |_, _, p| {
            if p.is_monomial() {
                mons.insert(p.leading_monomial().unwrap().clone());
            } else {
                gens.push(p.clone());
            }
            ControlFlow::Continue(())
        })?;
        gens.extend(mons.into_iter().map(|m| Polynomial::monomial(ring, m)));
        return Ok(Ideal::new(ring, gens)?.interreduce());
    }
    let degs: HashSet<Option<u32>> = j.generators().iter().map(|g| g.degree()).collect();
    if j.is_homogeneous() && degs.len() == 1 {
        let dg = j.generators()[0].degree().unwrap();
        let d = (r as u32) * (dg - 1);
        match minor_span(&theta, r, d, true)? {
            MinorSpan::Full => {
                let n = ring.num_vars();
                gens.extend(crate::polyring::monomials_of_degree(n, d).into_iter().map(|m| Polynomial::monomial(ring, m)));
            }
            MinorSpan::Partial(forms) => gens.extend(forms),
        }
        return Ok(Ideal::new(ring, gens)?.interreduce());
    }
    gens.extend(theta.minors(r)?);
    Ok(Ideal::new(ring, gens)?.interreduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;
    use crate::scalar::Rational;

    type P = Polynomial<Rational>;

    fn p(r: &Arc<RingContext>, s: &str) -> P {
        parse_polynomial(r, s).unwrap()
    }

    fn laplace(m: &SymbolicMatrix<Rational>, rows: &[usize], cols: &[usize]) -> P {
        if rows.len() == 1 {
            return m.get(rows[0], cols[0]).clone();
        }
        let mut acc = P::zero(m.ring());
        for (k, &i) in rows.iter().enumerate() {
            let sub: Vec<usize> = rows.iter().copied().filter(|&x| x != i).collect();
            let t = m.get(i, cols[0]) * &laplace(m, &sub, &cols[1..]);
            acc = if k % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }

    #[test]
    fn two_by_two_and_hankel() {
        let r = RingContext::with_names(["x", "y", "z", "w"]).unwrap();
        let m = SymbolicMatrix::from_rows(&r, vec![vec![p(&r, "x"), p(&r, "y")], vec![p(&r, "z"), p(&r, "w")]]).unwrap();
        assert_eq!(m.minors(2).unwrap(), vec![p(&r, "x*w - y*z")]);
        let s = RingContext::with_names(["z0", "z1", "z2"]).unwrap();
        let h = SymbolicMatrix::from_rows(&s, vec![vec![p(&s, "z1"), p(&s, "z2")], vec![p(&s, "z0"), p(&s, "z1")]]).unwrap();
        assert_eq!(h.minors(2).unwrap(), vec![p(&s, "z1^2 - z0*z2")]);
        assert!(h.minors(3).is_err());
    }

    #[test]
    fn jacobian_orientation() {
        let r = RingContext::with_names(["x", "y", "z"]).unwrap();
        let gens = vec![p(&r, "x^4 - y*z"), p(&r, "y^2 - x*z")];
        let th = jacobian_matrix(&r, &gens).unwrap();
        assert_eq!((th.rows(), th.cols()), (3, 2));
        assert_eq!(*th.get(0, 0), p(&r, "4x^3"));
        assert_eq!(*th.get(1, 0), p(&r, "-z"));
        assert_eq!(*th.get(2, 0), p(&r, "-y"));
    }

    #[test]
    fn streamed_minors_match_laplace() {
        let r = RingContext::with_names(["a", "b", "c", "d"]).unwrap();
        let cells = ["a", "b", "0", "c+d", "a*b", "1", "d", "b-c", "c", "0", "a", "b", "d^2", "a", "c", "2"];
        let m = SymbolicMatrix::new(&r, 4, 4, cells.iter().map(|s| p(&r, s)).collect()).unwrap();
        for k in 1..=4 {
            let mut seen = 0;
            let _ = m
                .for_each_minor(k, Some(3), |mask, cols, val| {
                    let rows: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
                    assert_eq!(*val, laplace(&m, &rows, cols));
                    seen += 1;
                    ControlFlow::Continue(())
                })
                .unwrap();
            assert!(seen > 0);
        }
        assert_eq!(m.minor(&[0, 1, 2, 3], &[0, 1, 2, 3]), laplace(&m, &[0, 1, 2, 3], &[0, 1, 2, 3]));
    }

    #[test]
    fn jacobian_ideal_of_two_squares() {
        let r = RingContext::with_names(["x", "y"]).unwrap();
        let j = Ideal::<Rational>::parse(&r, &["x^2", "y^2"]).unwrap();
        let i = jacobian_ideal(&j).unwrap();
        assert!(i.equals(&Ideal::maximal_power(&r, 2)).unwrap());
    }
}
