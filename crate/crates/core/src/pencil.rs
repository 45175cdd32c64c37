//! Pencils of 2×n matrices of linear forms in Kronecker–Weierstrass normal
//! form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::aluffi::{aluffi_torsion_free, AluffiVerdict, VerdictRecord};
use crate::error::{Error, Result};
use crate::ideals::{jacobian_matrix, minor_span, Ideal, MinorSpan, SymbolicMatrix};
use crate::linalg::{MonomialIndex, Span};
use crate::polyring::{Monomial, Polynomial, RingContext};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    /// `n` variables over `n + 1` columns.
    Nilpotent(u32),
    /// `m` columns with the given eigenvalue.
    Jordan(u32, Rational),
    /// `l` columns over `l + 1` variables.
    Scroll(u32),
}

impl Block {
    pub fn columns(&self) -> usize {
        match self {
            Block::Nilpotent(n) => *n as usize + 1,
            Block::Jordan(m, _) => *m as usize,
            Block::Scroll(l) => *l as usize,
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            Block::Nilpotent(n) => *n as usize,
            Block::Jordan(m, _) => *m as usize,
            Block::Scroll(l) => *l as usize + 1,
        }
    }

    fn length(&self) -> u32 {
        match self {
            Block::Nilpotent(n) | Block::Jordan(n, _) | Block::Scroll(n) => *n,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Nilpotent(n) => write!(f, "N({n})"),
            Block::Jordan(m, l) => write!(f, "J({m};{l})"),
            Block::Scroll(l) => write!(f, "S({l})"),
        }
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad block {s:?}, expected N(n), J(m;λ) or S(l)"));
        let s = s.trim();
        let kind = s.chars().next().ok_or_else(bad)?;
        let inner = s[1..].trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (len, eig) = match inner.split_once(';') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (inner.trim(), None),
        };
        let len: u32 = len.parse().map_err(|_| bad())?;
        if len == 0 {
            return Err(Error::Parse(format!("block {s:?} has length 0")));
        }
        match (kind.to_ascii_uppercase(), eig) {
            ('N', None) => Ok(Block::Nilpotent(len)),
            ('S', None) => Ok(Block::Scroll(len)),
            ('J', None) => Ok(Block::Jordan(len, Rational::from_integer(0))),
            ('J', Some(e)) => Ok(Block::Jordan(len, e.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// An ordered list of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PencilSpec {
    pub blocks: Vec<Block>,
}

impl PencilSpec {
    pub fn new(blocks: Vec<Block>) -> Self {
        PencilSpec { blocks }
    }

    pub fn columns(&self) -> usize {
        self.blocks.iter().map(Block::columns).sum()
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.iter().map(Block::num_vars).sum()
    }

    pub fn has_jordan(&self) -> bool {
        self.blocks.iter().any(|b| matches!(b, Block::Jordan(..)))
    }

    /// Variable names in block order: `x{i}_{j}`, `y{i}_{j}`, `z{i}_{j}`
    /// with `i` counting blocks of the same kind.
    pub fn var_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        let (mut nx, mut ny, mut nz) = (0, 0, 0);
        for b in &self.blocks {
            match b {
                Block::Nilpotent(n) => {
                    nx += 1;
                    names.extend((1..=*n).map(|j| format!("x{nx}_{j}")));
                }
                Block::Jordan(m, _) => {
                    ny += 1;
                    names.extend((1..=*m).map(|j| format!("y{ny}_{j}")));
                }
                Block::Scroll(l) => {
                    nz += 1;
                    names.extend((0..=*l).map(|j| format!("z{nz}_{j}")));
                }
            }
        }
        names
    }

    /// Index of the first variable of each block.
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for b in &self.blocks {
            out.push(acc);
            acc += b.num_vars();
        }
        out
    }
}

impl fmt::Display for PencilSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for PencilSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let end = rest.find(')').ok_or_else(|| Error::Parse(format!("unterminated block in {s:?}")))?;
            blocks.push(rest[..=end].parse()?);
            rest = rest[end + 1..].trim_start();
        }
        if blocks.is_empty() {
            return Err(Error::Parse("empty pencil spec".into()));
        }
        Ok(PencilSpec { blocks })
    }
}

/// The 2×n matrix of the spec over a fresh ring.
pub fn build_matrix(spec: &PencilSpec) -> Result<(SymbolicMatrix<Rational>, Arc<RingContext>)> {
    if spec.blocks.is_empty() {
        return Err(Error::InvalidArgument("empty pencil spec".into()));
    }
    let ring = RingContext::with_names(spec.var_names())?;
    let zero = Polynomial::zero(&ring);
    let var = |i: usize| Polynomial::var(&ring, i);
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for (b, off) in spec.blocks.iter().zip(spec.offsets()) {
        match b {
            Block::Nilpotent(n) => {
                let n = *n as usize;
                for j in 0..=n {
                    top.push(if j < n { var(off + j)? } else { zero.clone() });
                    bottom.push(if j > 0 { var(off + j - 1)? } else { zero.clone() });
                }
            }
            Block::Jordan(m, lambda) => {
                for j in 0..*m as usize {
                    let y = var(off + j)?;
                    let mut below = y.scale(lambda);
                    if j > 0 {
                        below = &below + &var(off + j - 1)?;
                    }
                    top.push(y);
                    bottom.push(below);
                }
            }
            Block::Scroll(l) => {
                for j in 1..=*l as usize {
                    top.push(var(off + j)?);
                    bottom.push(var(off + j - 1)?);
                }
            }
        }
    }
    let m = SymbolicMatrix::from_rows(&ring, vec![top, bottom])?;
    Ok((m, ring))
}

/// The ideal of 2×2 minors of a two-row matrix, one generator per nonzero
/// minor up to scaling.
pub fn two_minor_ideal<F: Field>(m: &SymbolicMatrix<F>) -> Result<Ideal<F>> {
    if m.rows() != 2 {
        return Err(Error::InvalidArgument(format!("expected 2 rows, got {}", m.rows())));
    }
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    for p in m.minors(2)? {
        if p.is_zero() {
            continue;
        }
        let p = p.monic();
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
    Ideal::new(m.ring(), gens)
}

/// Jordan blocks grouped by eigenvalue: the largest group size.
fn gamma(spec: &PencilSpec) -> usize {
    let mut groups: BTreeMap<&Rational, usize> = BTreeMap::new();
    for b in &spec.blocks {
        if let Block::Jordan(_, l) = b {
            *groups.entry(l).or_default() += 1;
        }
    }
    groups.values().copied().max().unwrap_or(0)
}

/// The height of the 2-minor ideal from the block sizes.
pub fn predicted_height(spec: &PencilSpec) -> usize {
    let (mut n, mut m, mut l) = (0usize, 0usize, 0usize);
    let mut scrolls = 0;
    for b in &spec.blocks {
        match b {
            Block::Nilpotent(k) => n += *k as usize,
            Block::Jordan(k, _) => m += *k as usize,
            Block::Scroll(k) => {
                l += *k as usize;
                scrolls += 1;
            }
        }
    }
    if spec.has_jordan() {
        n + l + m - gamma(spec)
    } else if scrolls > 0 {
        n + l - 1
    } else {
        n
    }
}

/// The block criterion for torsion-freeness: no Jordan block at all, or
/// only nilpotent blocks and Jordan blocks of length 1.
pub fn predicted_atf(spec: &PencilSpec) -> Result<bool> {
    let h = predicted_height(spec);
    if h <= 1 {
        return Err(Error::Hypothesis(format!("height {h}, expected at least 2")));
    }
    if !spec.has_jordan() {
        return Ok(true);
    }
    Ok(spec.blocks.iter().all(|b| matches!(b, Block::Nilpotent(_) | Block::Jordan(1, _))))
}

/// `I_2(M)`, its height `r`, and the data of `I_r(Θ)` for a spec.
pub struct PencilIdeals {
    pub ring: Arc<RingContext>,
    pub matrix: SymbolicMatrix<Rational>,
    pub j: Ideal<Rational>,
    pub r: usize,
    pub theta: SymbolicMatrix<Rational>,
    /// `I_r(Θ)`: either all of `m^r` or an exact basis of its forms.
    pub minors: MinorSpan<Rational>,
}

impl PencilIdeals {
    pub fn new(spec: &PencilSpec) -> Result<Self> {
        let (matrix, ring) = build_matrix(spec)?;
        let j = two_minor_ideal(&matrix)?;
        let r = j.codimension()?;
        if r < 2 {
            return Err(Error::Hypothesis(format!("height {r}, expected at least 2")));
        }
        let theta = jacobian_matrix(&ring, j.generators())?;
        let minors = minor_span(&theta, r, r as u32, true)?;
        Ok(PencilIdeals { ring, matrix, j, r, theta, minors })
    }

    /// `I_r(Θ)` as an ideal.
    pub fn minor_ideal(&self) -> Result<Ideal<Rational>> {
        match &self.minors {
            MinorSpan::Full => Ok(Ideal::maximal_power(&self.ring, self.r as u32)),
            MinorSpan::Partial(forms) => Ideal::new(&self.ring, forms.iter().cloned()),
        }
    }

    /// The Jacobian ideal `(J, I_r(Θ))`.
    pub fn jacobian_ideal(&self) -> Result<Ideal<Rational>> {
        Ok(self.j.sum(&self.minor_ideal()?)?.interreduce())
    }

    /// Whether `v^r` is a combination of the `r`-minors.
    pub fn power_in_minors(&self, v: usize) -> Result<bool> {
        let mon = Monomial::var_pow(self.ring.num_vars(), v, self.r as u16);
        match &self.minors {
            MinorSpan::Full => Ok(true),
            MinorSpan::Partial(forms) => {
                let idx = MonomialIndex::of_degree(self.ring.num_vars(), self.r as u32);
                let mut span = Span::<Rational>::new(idx.len());
                for f in forms {
                    span.insert(&idx.vector(f).expect("degree r"));
                }
                let target = idx.vector(&Polynomial::monomial(&self.ring, mon)).expect("degree r");
                Ok(span.contains(&target))
            }
        }
    }
}

/// The three conditions of the block criterion, computed separately.
#[derive(Clone, Debug)]
pub struct Theorem24Record {
    pub spec: PencilSpec,
    pub r: usize,
    /// `I_r(Θ) = m^r`.
    pub a: bool,
    /// The block-shape predicate.
    pub b: bool,
    /// The torsion-free verdict for `I_2(M) ⊆ (I_2(M), I_r(Θ))`.
    pub c_verdict: AluffiVerdict<Rational>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem24Summary {
    pub spec: String,
    pub r: usize,
    pub a: bool,
    pub b: bool,
    pub c: VerdictRecord,
    pub consistent: bool,
}

impl Theorem24Record {
    pub fn summary(&self) -> Theorem24Summary {
        Theorem24Summary {
            spec: self.spec.to_string(),
            r: self.r,
            a: self.a,
            b: self.b,
            c: self.c_verdict.record(),
            consistent: self.consistent,
        }
    }
}

pub fn verify_theorem24(spec: &PencilSpec) -> Result<Theorem24Record> {
    verify_theorem24_with(spec, None, false)
}

pub fn verify_theorem24_with(spec: &PencilSpec, max_t: Option<u32>, certify: bool) -> Result<Theorem24Record> {
    let data = PencilIdeals::new(spec)?;
    let a = data.minor_ideal()?.equals_m_power(data.r as u32)?;
    let b = predicted_atf(spec)?;
    let i = data.jacobian_ideal()?;
    let c_verdict = aluffi_torsion_free(&data.j, &i, max_t, certify)?;
    let c = if c_verdict.is_torsion_free() {
        Some(true)
    } else if c_verdict.is_not_torsion_free() {
        Some(false)
    } else {
        None
    };
    let consistent = c == Some(a) && a == b;
    Ok(Theorem24Record { spec: spec.clone(), r: data.r, a, b, c_verdict, consistent })
}

/// Concatenated `n×n` Hankel blocks in disjoint variables `x1, x2, ...`.
pub fn build_generalized_hankel(sizes: &[usize]) -> Result<SymbolicMatrix<Rational>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("no Hankel blocks".into()));
    }
    let rows = sizes[0];
    if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidArgument(format!("Hankel block of size {n}, expected at least 2")));
    }
    if sizes.iter().any(|&n| n != rows) {
        return Err(Error::InvalidArgument("Hankel blocks must share their row count".into()));
    }
    let total: usize = sizes.iter().map(|n| 2 * n - 1).sum();
    let ring = RingContext::indexed("x", total);
    let mut out: Vec<Vec<Polynomial<Rational>>> = vec![Vec::new(); rows];
    let mut off = 0;
    for &n in sizes {
        for (i, row) in out.iter_mut().enumerate() {
            for j in 0..n {
                row.push(Polynomial::var(&ring, off + i + j)?);
            }
        }
        off += 2 * n - 1;
    }
    SymbolicMatrix::from_rows(&ring, out)
}

/// Whether `I_2(M) : v` is generated by the variables of the second row.
pub fn colon_lemma_holds(m: &SymbolicMatrix<Rational>, v: usize) -> Result<bool> {
    let ring = m.ring();
    let j = two_minor_ideal(m)?;
    let colon = j.colon(&Polynomial::var(ring, v)?)?;
    let mut vars: Vec<usize> = m.row(1).iter().flat_map(|p| p.variables()).collect();
    vars.sort_unstable();
    vars.dedup();
    let n = ring.num_vars();
    let row_ideal = Ideal::from_monomials(ring, vars.into_iter().map(|i| Monomial::var(n, i)).collect::<Vec<_>>());
    colon.equals(&row_ideal)
}

/// The colon lemma for the first variable of the shortest Jordan block with
/// eigenvalue zero.
pub fn check_colon_lemma(spec: &PencilSpec) -> Result<bool> {
    let zero = Rational::from_integer(0);
    let pick = spec
        .blocks
        .iter()
        .zip(spec.offsets())
        .filter(|(b, _)| matches!(b, Block::Jordan(_, l) if *l == zero))
        .min_by_key(|(b, _)| b.length());
    let Some((_, off)) = pick else {
        return Err(Error::Hypothesis("no Jordan block with eigenvalue zero".into()));
    };
    let (m, _) = build_matrix(spec)?;
    colon_lemma_holds(&m, off)
}

/// The matrix `[y1 y2 w1 w2 w3; 0 y1 0 w1 w2]` together with the index of
/// `w1`, the first variable of its longer Jordan block.
pub fn colon_counterexample() -> Result<(SymbolicMatrix<Rational>, usize)> {
    let ring = RingContext::with_names(["y1", "y2", "w1", "w2", "w3"])?;
    let v = |i| Polynomial::var(&ring, i);
    let z = Polynomial::zero(&ring);
    let m = SymbolicMatrix::from_rows(&ring, vec![vec![v(0)?, v(1)?, v(2)?, v(3)?, v(4)?], vec![z.clone(), v(0)?, z, v(2)?, v(3)?]])?;
    Ok((m, 2))
}

/// Every spec with at most `max_columns` columns and Jordan eigenvalues
/// from `eigenvalues`, as multisets of blocks listed nilpotent, Jordan,
/// scroll.
pub fn family(max_columns: usize, eigenvalues: &[Rational]) -> Vec<PencilSpec> {
    let mut kinds = Vec::new();
    for c in (2..=max_columns).rev() {
        kinds.push(Block::Nilpotent(c as u32 - 1));
    }
    for c in (1..=max_columns).rev() {
        for l in eigenvalues {
            kinds.push(Block::Jordan(c as u32, l.clone()));
        }
    }
    for c in (1..=max_columns).rev() {
        kinds.push(Block::Scroll(c as u32));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(kinds: &[Block], start: usize, left: usize, current: &mut Vec<Block>, out: &mut Vec<PencilSpec>) {
        if !current.is_empty() {
            out.push(PencilSpec::new(current.clone()));
        }
        for k in start..kinds.len() {
            let c = kinds[k].columns();
            if c <= left {
                current.push(kinds[k].clone());
                rec(kinds, k, left - c, current, out);
                current.pop();
            }
        }
    }
    rec(&kinds, 0, max_columns, &mut current, &mut out);
    out.sort_by(|a, b| a.num_vars().cmp(&b.num_vars()).then_with(|| a.to_string().cmp(&b.to_string())));
    out
}

/// The family used for the block-criterion sweep: up to six columns with
/// eigenvalues 0, 1, 2.
pub fn standard_family() -> Vec<PencilSpec> {
    family(6, &[Rational::from_integer(0), Rational::from_integer(1), Rational::from_integer(2)])
}
