//! The Valabrega–Valla test `(J ∩ I^t) / (J I^{t-1})` and the Aluffi
//! torsion-free verdict built on it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideals::{jacobian_matrix, minor_span, relation_type, Ideal, MinorSpan};
use crate::linalg::{rank, MonomialIndex, Span};
use crate::polyring::{Monomial, Polynomial, RingContext};
use crate::scalar::Field;

/// Largest support of a candidate product tried by the witness search.
const SEARCH_SUPPORT: usize = 4;

/// One graded piece of the Valabrega–Valla module.
#[derive(Clone, Debug)]
pub struct VVComponent<F: Field> {
    pub t: u32,
    /// Elements of `J ∩ I^t` outside `J I^{t-1}`, reduced modulo a Groebner
    /// basis of `J I^{t-1}`.
    pub witnesses: Vec<Polynomial<F>>,
    pub is_zero: bool,
}

/// Why a pair was declared torsion-free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// `I ⊆ J`, so every piece vanishes.
    Equal,
    /// `m^c ⊆ I`, `J` generated in degrees `≤ d`, the rest of `I` in degrees
    /// `≥ e`, with `e ≥ c` and `2e ≥ c + d`.
    DegreeWindow { c: u32, d: u32, e: u32 },
    /// Every piece up to `max(2, N)` vanishes, `N` the relation type of `I/J`.
    RelationType(u32),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Equal => write!(f, "I = J"),
            Certificate::DegreeWindow { c, d, e } => write!(f, "degree window c={c} d={d} e={e}"),
            Certificate::RelationType(n) => write!(f, "relation type {n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Status<F: Field> {
    TorsionFree { certificate: Certificate },
    NotTorsionFree { t: u32, witness: Polynomial<F> },
    Inconclusive { checked: u32 },
}

#[derive(Clone, Debug)]
pub struct AluffiVerdict<F: Field> {
    pub status: Status<F>,
    pub timings: Vec<(String, Duration)>,
}

impl<F: Field> AluffiVerdict<F> {
    pub fn is_torsion_free(&self) -> bool {
        matches!(self.status, Status::TorsionFree { .. })
    }

    pub fn is_not_torsion_free(&self) -> bool {
        matches!(self.status, Status::NotTorsionFree { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.status, Status::Inconclusive { .. })
    }

    pub fn witness(&self) -> Option<(u32, &Polynomial<F>)> {
        match &self.status {
            Status::NotTorsionFree { t, witness } => Some((*t, witness)),
            _ => None,
        }
    }

    pub fn record(&self) -> VerdictRecord {
        let timings = self.timings.iter().map(|(k, d)| (k.clone(), d.as_secs_f64())).collect();
        let mut rec = VerdictRecord { status: String::new(), t: None, witness: None, bound: None, certificate: None, timings };
        match &self.status {
            Status::TorsionFree { certificate } => {
                rec.status = "torsion_free".into();
                if let Certificate::RelationType(n) = certificate {
                    rec.bound = Some((*n).max(2));
                }
                rec.certificate = Some(certificate.clone());
            }
            Status::NotTorsionFree { t, witness } => {
                rec.status = "not_torsion_free".into();
                rec.t = Some(*t);
                rec.witness = Some(witness.to_string());
            }
            Status::Inconclusive { checked } => {
                rec.status = "inconclusive".into();
                rec.bound = Some(*checked);
            }
        }
        rec
    }
}

/// Flat serializable form of a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub status: String,
    pub t: Option<u32>,
    pub witness: Option<String>,
    pub bound: Option<u32>,
    pub certificate: Option<Certificate>,
    /// Seconds per phase.
    pub timings: BTreeMap<String, f64>,
}

fn ensure_contained<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<()> {
    if !j.ring().same_variables(i.ring()) {
        return Err(Error::ContextMismatch);
    }
    for g in j.generators() {
        if !i.contains(g)? {
            return Err(Error::NotContained(g.to_string()));
        }
    }
    Ok(())
}

/// The degree-`t` piece `(J ∩ I^t) / (J I^{t-1})`.
///
/// With `I = J + K` and `K` reduced modulo `J`, `I^t = J I^{t-1} + K^t`,
/// so `J ∩ I^t = J I^{t-1} + J ∩ K^t` and only `J ∩ K^t` is computed.
pub fn vv_component<F: Field>(j: &Ideal<F>, i: &Ideal<F>, t: u32) -> Result<VVComponent<F>> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t = {t}, expected t >= 2")));
    }
    ensure_contained(j, i)?;
    let k = residual(j, i)?;
    if k.is_zero() {
        return Ok(VVComponent { t, is_zero: true, witnesses: Vec::new() });
    }
    let jip = j.product(&split_power(j, i, &k, t - 1)?)?;
    let inter = j.intersect(&k.power(t)?)?;
    let mut witnesses: Vec<Polynomial<F>> = Vec::new();
    if jip.is_monomial() && inter.is_monomial() {
        for g in inter.generators() {
            if !jip.contains(g)? {
                witnesses.push(g.clone());
            }
        }
    } else {
        let gb = jip.gb()?;
        for g in inter.generators() {
            let nf = gb.normal_form(g)?;
            if !nf.is_zero() {
                let nf = nf.monic();
                if !witnesses.contains(&nf) {
                    witnesses.push(nf);
                }
            }
        }
    }
    Ok(VVComponent { t, is_zero: witnesses.is_empty(), witnesses })
}

/// The generators of `I` outside `J`, reduced modulo `J`, so that
/// `I = J + K`.
fn residual<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<Ideal<F>> {
    let gb = j.gb()?;
    let mut out = Vec::new();
    for g in i.generators() {
        let nf = gb.normal_form(g)?;
        if !nf.is_zero() {
            out.push(nf);
        }
    }
    Ok(Ideal::new(i.ring(), out)?.interreduce())
}

/// `I^s` as `J I^{s-1} + K^s`.
fn split_power<F: Field>(j: &Ideal<F>, i: &Ideal<F>, k: &Ideal<F>, s: u32) -> Result<Ideal<F>> {
    if s == 1 {
        return Ok(i.clone());
    }
    j.product(&split_power(j, i, k, s - 1)?)?.sum(&k.power(s)?)
}

/// Re-checks a witness from scratch: `w ∈ J`, `w ∈ I^t`, `w ∉ J I^{t-1}`.
pub fn check_witness<F: Field>(j: &Ideal<F>, i: &Ideal<F>, t: u32, w: &Polynomial<F>) -> Result<bool> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t = {t}, expected t >= 2")));
    }
    if !j.contains(w)? {
        return Ok(false);
    }
    let k = residual(j, i)?;
    if k.is_zero() {
        return Ok(false);
    }
    let jip = j.product(&split_power(j, i, &k, t - 1)?)?;
    Ok(jip.sum(&k.power(t)?)?.contains(w)? && !jip.contains(w)?)
}

/// Generators of `I` that are not in `J`.
fn extra_generators<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    for g in i.generators() {
        if !j.contains(g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Tries to prove `J ∩ I^t = J I^{t-1}` for every `t` by degrees alone.
///
/// Write `I = J + K`. Then `J ∩ I^t = J I^{t-1} + J ∩ K^t`, and a form of
/// `J` of degree `D` lies in `J m^{D-d}`. So `m^c ⊆ I` and
/// `t e - d ≥ c (t - 1)` give `J ∩ K^t ⊆ J m^{c(t-1)} ⊆ J I^{t-1}`.
pub fn degree_window<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<Option<Certificate>> {
    if j.is_zero() || !j.is_homogeneous() || !i.is_homogeneous() {
        return Ok(None);
    }
    let extra = extra_generators(j, i)?;
    if extra.is_empty() {
        return Ok(Some(Certificate::Equal));
    }
    let d = j.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let e = extra.iter().filter_map(|g| g.degree()).min().unwrap_or(0);
    if 2 * e <= d {
        return Ok(None);
    }
    let c = e.min(2 * e - d);
    match i.m_power_test(c, false)? {
        Some(true) => Ok(Some(Certificate::DegreeWindow { c, d, e })),
        _ => Ok(None),
    }
}

/// Searches products `g h` of monomial generators of `I` for an element of
/// `J` outside `J I`, a witness that the degree-two piece is nonzero.
///
/// Non-membership in `J I` is decided after setting every variable outside
/// the support of `g h` to zero: the substitution fixes `g h` and maps `J I`
/// onto the product of the images of `J` and `I`.
pub fn search_witness<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<Option<Polynomial<F>>> {
    let ring = i.ring().clone();
    let n = ring.num_vars();
    if n > 64 {
        return Ok(None);
    }
    let monomial_j = j.is_monomial();
    let j_mons = if monomial_j { j.monomial_generators() } else { Vec::new() };
    let in_j = |m: &Monomial| -> Result<bool> {
        if monomial_j {
            Ok(j_mons.iter().any(|a| a.divides(m)))
        } else {
            j.contains(&Polynomial::monomial(&ring, m.clone()))
        }
    };
    let mut cands: Vec<Monomial> = Vec::new();
    for g in i.generators().iter().filter(|g| g.is_monomial()) {
        let m = g.leading_monomial().unwrap();
        if !in_j(m)? {
            cands.push(m.clone());
        }
    }
    let mut by_mask: Vec<(u64, Vec<Monomial>)> = Vec::new();
    {
        let mut groups: HashMap<u64, Vec<Monomial>> = HashMap::new();
        for m in cands {
            groups.entry(m.support_mask()).or_default().push(m);
        }
        by_mask.extend(groups);
        by_mask.sort_by_key(|(mask, _)| *mask);
    }
    let monomial_pair = monomial_j && i.is_monomial();
    let i_mons = if monomial_pair { i.monomial_generators() } else { Vec::new() };
    let mut restricted: HashMap<u64, Arc<GroebnerBasis<F>>> = HashMap::new();
    for size in 1..=SEARCH_SUPPORT.min(n) {
        for a in 0..by_mask.len() {
            for b in a..by_mask.len() {
                let mask = by_mask[a].0 | by_mask[b].0;
                if mask.count_ones() as usize != size {
                    continue;
                }
                for (ia, g) in by_mask[a].1.iter().enumerate() {
                    let start = if a == b { ia } else { 0 };
                    for h in &by_mask[b].1[start..] {
                        crate::budget::check()?;
                        let w = g.mul(h);
                        if !in_j(&w)? {
                            continue;
                        }
                        let outside = if monomial_pair {
                            !j_mons.iter().any(|x| x.divides(&w) && i_mons.iter().any(|y| x.mul(y).divides(&w)))
                        } else {
                            let gb = match restricted.get(&mask) {
                                Some(gb) => gb.clone(),
                                None => {
                                    let gb = Arc::new(restricted_product_gb(j, i, mask)?);
                                    restricted.insert(mask, gb.clone());
                                    gb
                                }
                            };
                            let local = Polynomial::monomial(&ring, w.clone()).restrict(gb.ring(), &local_map(n, mask));
                            !gb.member(&local)?
                        };
                        if outside {
                            return Ok(Some(Polynomial::monomial(&ring, w)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Looks for a witness at `t = 2` in the lowest degree `D` of `K^2`, where
/// `I = J + K` with `K` reduced modulo `J`.
///
/// `(K^2)_D` is spanned by products of generators. Each product is recorded
/// as its normal form modulo `J` followed by its normal form modulo `J I`;
/// eliminating on the first part leaves combinations that lie in `J`, and a
/// nonzero second part means the combination is outside `J I`.
pub fn lowest_degree_witness<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<Option<Polynomial<F>>> {
    if !j.is_homogeneous() || !i.is_homogeneous() {
        return Ok(None);
    }
    let k = residual(j, i)?;
    if k.is_zero() {
        return Ok(None);
    }
    let square = k.power(2)?;
    let Some(d) = square.generators().iter().filter_map(|g| g.degree()).min() else {
        return Ok(None);
    };
    let gb_j = j.gb()?;
    let gb_ji = j.product(i)?.gb()?;
    let mut rows = Vec::new();
    for g in square.generators().iter().filter(|g| g.degree() == Some(d)) {
        crate::budget::check()?;
        rows.push((gb_j.normal_form(g)?, gb_ji.normal_form(g)?));
    }
    let sorted = |ps: &mut dyn Iterator<Item = &Polynomial<F>>| {
        let mut ms: Vec<Monomial> = ps.flat_map(|p| p.terms().iter().map(|t| t.mon.clone())).collect();
        ms.sort_by(|a, b| a.exponents().cmp(b.exponents()));
        ms.dedup();
        MonomialIndex::from_monomials(ms)
    };
    let left = sorted(&mut rows.iter().map(|r| &r.0));
    let right = sorted(&mut rows.iter().map(|r| &r.1));
    let offset = left.len();
    let mut span = Span::<F>::new(offset + right.len());
    for (a, b) in &rows {
        crate::budget::check()?;
        let mut v = left.vector(a).expect("indexed");
        v.extend(right.vector(b).expect("indexed").into_iter().map(|(c, x)| (c + offset, x)));
        let r = span.reduce(&v);
        if r.first().is_some_and(|e| e.0 >= offset) {
            let terms: Vec<(F, Monomial)> = r.into_iter().map(|(c, x)| (x, right.monomial(c - offset).clone())).collect();
            return Ok(Some(Polynomial::from_terms(j.ring(), terms).monic()));
        }
        span.insert(&v);
    }
    Ok(None)
}

fn local_map(n: usize, mask: u64) -> Vec<Option<usize>> {
    let mut next = 0;
    (0..n)
        .map(|v| {
            if mask >> v & 1 == 1 {
                next += 1;
                Some(next - 1)
            } else {
                None
            }
        })
        .collect()
}

/// Groebner basis of `φ(J) φ(I)` where `φ` kills the variables outside `mask`.
fn restricted_product_gb<F: Field>(j: &Ideal<F>, i: &Ideal<F>, mask: u64) -> Result<GroebnerBasis<F>> {
    let ring = i.ring();
    let n = ring.num_vars();
    let names: Vec<String> = (0..n).filter(|v| mask >> v & 1 == 1).map(|v| ring.var_names()[v].clone()).collect();
    let local = RingContext::new(names, ring.order().clone())?;
    let map = local_map(n, mask);
    let prod = j.restrict(&local, &map).product(&i.restrict(&local, &map))?;
    buchberger(&local, prod.generators(), local.order())
}

/// Decides whether `J ⊆ I` is Aluffi torsion-free.
///
/// Cheap certificates come first (`I ⊆ J`, the degree window, a product
/// witness at `t = 2`); then the pieces `t = 2, 3, ...` are computed
/// explicitly. With `certify`, the bound is `max(2, N)` for `N` the relation
/// type of `I/J` and a clean run proves the property; otherwise the bound is
/// `max_t` (default 4) and a clean run is inconclusive. Running out of time
/// also yields an inconclusive verdict.
pub fn aluffi_torsion_free<F: Field>(j: &Ideal<F>, i: &Ideal<F>, max_t: Option<u32>, certify: bool) -> Result<AluffiVerdict<F>> {
    ensure_contained(j, i)?;
    let mut timings = Vec::new();
    let mut checked = 1;
    match decide(j, i, max_t, certify, &mut timings, &mut checked) {
        Ok(status) => Ok(AluffiVerdict { status, timings }),
        Err(Error::Interrupted) => Ok(AluffiVerdict { status: Status::Inconclusive { checked }, timings }),
        Err(e) => Err(e),
    }
}

fn decide<F: Field>(
    j: &Ideal<F>,
    i: &Ideal<F>,
    max_t: Option<u32>,
    certify: bool,
    timings: &mut Vec<(String, Duration)>,
    checked: &mut u32,
) -> Result<Status<F>> {
    let clock = Instant::now();
    let window = degree_window(j, i)?;
    timings.push(("degree_window".into(), clock.elapsed()));
    if let Some(certificate) = window {
        return Ok(Status::TorsionFree { certificate });
    }
    if j.is_homogeneous() && i.is_homogeneous() {
        let clock = Instant::now();
        let found = search_witness(j, i)?;
        timings.push(("witness_search".into(), clock.elapsed()));
        if let Some(witness) = found {
            return Ok(Status::NotTorsionFree { t: 2, witness });
        }
        let clock = Instant::now();
        let found = lowest_degree_witness(j, i)?;
        timings.push(("lowest_degree_witness".into(), clock.elapsed()));
        if let Some(witness) = found {
            return Ok(Status::NotTorsionFree { t: 2, witness });
        }
    } else if extra_generators(j, i)?.is_empty() {
        return Ok(Status::TorsionFree { certificate: Certificate::Equal });
    }
    let relation = if certify {
        let clock = Instant::now();
        let n = relation_type(j, i)?;
        timings.push(("relation_type".into(), clock.elapsed()));
        Some(n)
    } else {
        None
    };
    let bound = match relation {
        Some(n) => n.max(2),
        None => max_t.unwrap_or(4).max(2),
    };
    for t in 2..=bound {
        let clock = Instant::now();
        let piece = vv_component(j, i, t)?;
        timings.push((format!("vv_{t}"), clock.elapsed()));
        if let Some(w) = piece.witnesses.into_iter().next() {
            return Ok(Status::NotTorsionFree { t, witness: w });
        }
        *checked = t;
    }
    Ok(match relation {
        Some(n) => Status::TorsionFree { certificate: Certificate::RelationType(n) },
        None => Status::Inconclusive { checked: bound },
    })
}

/// One instance of the comparison between `I_r(Θ) = m^r` and `I_r(Θ)` being
/// `m`-primary, for an ideal generated by quadrics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture1Evidence {
    pub r: usize,
    pub m_primary: bool,
    pub equals_power: bool,
    pub consistent: bool,
}

pub fn conjecture1_evidence<F: Field>(j: &Ideal<F>) -> Result<Conjecture1Evidence> {
    if j.is_zero() || !j.generators().iter().all(|g| g.is_homogeneous() && g.degree() == Some(2)) {
        return Err(Error::Hypothesis("J must be generated by quadrics".into()));
    }
    let r = j.codimension()?;
    if r < 2 {
        return Err(Error::Hypothesis(format!("height {r}, expected at least 2")));
    }
    let theta = jacobian_matrix(j.ring(), j.generators())?;
    let (m_primary, equals_power) = match minor_span(&theta, r, r as u32, true)? {
        MinorSpan::Full => (true, true),
        MinorSpan::Partial(forms) => {
            let m_primary = !has_coordinate_zero(&theta, r)? && !forms.is_empty() && Ideal::new(j.ring(), forms)?.is_m_primary()?;
            (m_primary, false)
        }
    };
    Ok(Conjecture1Evidence { r, m_primary, equals_power, consistent: m_primary == equals_power })
}

/// Whether some coordinate point `e_v` kills every `r`-minor, i.e. the
/// matrix evaluated there has rank below `r`. Such a point lies on the
/// zero set of the minors, so their ideal is not `m`-primary; equivalently
/// `x_v^r` is not a combination of the minors.
pub fn has_coordinate_zero<F: Field>(m: &crate::ideals::SymbolicMatrix<F>, r: usize) -> Result<bool> {
    let n = m.ring().num_vars();
    for v in 0..n {
        if coordinate_rank(m, v)? < r {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rank of the matrix at the coordinate point `e_v`.
pub fn coordinate_rank<F: Field>(m: &crate::ideals::SymbolicMatrix<F>, v: usize) -> Result<usize> {
    let n = m.ring().num_vars();
    let mut point = vec![F::zero(); n];
    point[v] = F::one();
    Ok(rank(&m.evaluate(&point)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::jacobian_ideal;
    use crate::polyring::RingContext;
    use crate::scalar::Rational;

    fn ring(names: &[&str]) -> Arc<RingContext> {
        RingContext::with_names(names.iter().copied()).unwrap()
    }

    #[test]
    fn linear_type_pair() {
        let r = ring(&["x", "y"]);
        let j = Ideal::<Rational>::parse(&r, &["x"]).unwrap();
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert!(vv_component(&j, &i, 2).unwrap().is_zero);
        assert!(vv_component(&j, &i, 1).is_err());
        let v = aluffi_torsion_free(&j, &i, None, true).unwrap();
        assert!(v.is_torsion_free());
    }

    #[test]
    fn equal_ideals() {
        let r = ring(&["x", "y", "z"]);
        let j = Ideal::<Rational>::parse(&r, &["x^2 - y*z", "x*y"]).unwrap();
        let v = aluffi_torsion_free(&j, &j, None, false).unwrap();
        assert!(matches!(v.status, Status::TorsionFree { certificate: Certificate::Equal }));
    }

    #[test]
    fn not_contained() {
        let r = ring(&["x", "y"]);
        let j = Ideal::<Rational>::parse(&r, &["x"]).unwrap();
        let i = Ideal::parse(&r, &["y"]).unwrap();
        assert!(matches!(aluffi_torsion_free(&j, &i, None, false), Err(Error::NotContained(_))));
    }

    #[test]
    fn five_cycle() {
        let r = RingContext::indexed("x", 5);
        let j = Ideal::<Rational>::parse(&r, &["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x1"]).unwrap();
        let i = jacobian_ideal(&j).unwrap();
        let piece = vv_component(&j, &i, 2).unwrap();
        assert!(!piece.is_zero);
        for w in &piece.witnesses {
            assert!(check_witness(&j, &i, 2, w).unwrap());
        }
        let v = aluffi_torsion_free(&j, &i, None, false).unwrap();
        let (t, w) = v.witness().unwrap();
        assert_eq!(t, 2);
        assert!(check_witness(&j, &i, 2, w).unwrap());
    }

    #[test]
    fn restricted_witness_for_a_binomial_pair() {
        let r = ring(&["x", "y", "z"]);
        let j = Ideal::<Rational>::parse(&r, &["x^2 - y*z"]).unwrap();
        let i = Ideal::parse(&r, &["x^2 - y*z", "x*y", "y^2"]).unwrap();
        let direct = vv_component(&j, &i, 2).unwrap();
        let v = aluffi_torsion_free(&j, &i, Some(2), false).unwrap();
        assert_eq!(direct.is_zero, !v.is_not_torsion_free());
        if let Some((t, w)) = v.witness() {
            assert!(check_witness(&j, &i, t, w).unwrap());
        }
    }

    #[test]
    fn record_round_trip() {
        let r = RingContext::indexed("x", 5);
        let j = Ideal::<Rational>::parse(&r, &["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x1"]).unwrap();
        let i = jacobian_ideal(&j).unwrap();
        let rec = aluffi_torsion_free(&j, &i, None, false).unwrap().record();
        let text = serde_json::to_string(&rec).unwrap();
        let back: VerdictRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
        assert_eq!(rec.status, "not_torsion_free");
    }

    #[test]
    fn scroll_evidence() {
        let r = ring(&["z0", "z1", "z2", "z3"]);
        let j = Ideal::<Rational>::parse(&r, &["z1^2 - z0*z2", "z1*z2 - z0*z3", "z2^2 - z1*z3"]).unwrap();
        let ev = conjecture1_evidence(&j).unwrap();
        assert_eq!(ev, Conjecture1Evidence { r: 2, m_primary: true, equals_power: true, consistent: true });
        let i = jacobian_ideal(&j).unwrap();
        let v = aluffi_torsion_free(&j, &i, None, false).unwrap();
        assert!(v.is_torsion_free());
    }
}
