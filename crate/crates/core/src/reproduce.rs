//! A catalogue of worked examples with their known answers, recomputed from
//! scratch. Examples are grouped: pencils (2), graphs (3) and curves and
//! arrangements (4).

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aluffi::{aluffi_torsion_free, vv_component, AluffiVerdict, Status};
use crate::budget;
use crate::error::{Error, Result};
use crate::graphs::{self, Family};
use crate::ideals::{jacobian_ideal, relation_type, Ideal, SymbolicMatrix};
use crate::pencil::{self, PencilIdeals, PencilSpec};
use crate::polyring::{parse_polynomial, RingContext};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub name: String,
    pub section: u32,
    pub expected: String,
    pub computed: String,
    pub agree: bool,
    /// Seconds.
    pub elapsed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub items: Vec<ReportItem>,
    pub total: usize,
    pub agreed: usize,
}

impl RunReport {
    pub fn all_agree(&self) -> bool {
        self.agreed == self.total
    }

    /// The report with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> RunReport {
        let mut r = self.clone();
        for it in &mut r.items {
            it.elapsed = 0.0;
        }
        r
    }
}

/// One catalogue entry. `run` returns the computed answer as a string in the
/// same vocabulary as `expected`.
pub struct Example {
    pub name: &'static str,
    pub section: u32,
    pub expected: &'static str,
    pub run: fn() -> Result<String>,
}

const TF: &str = "torsion-free";
const NOT_TF: &str = "not torsion-free";

fn word<F: crate::scalar::Field>(v: &AluffiVerdict<F>) -> String {
    match &v.status {
        Status::TorsionFree { .. } => TF.into(),
        Status::NotTorsionFree { .. } => NOT_TF.into(),
        Status::Inconclusive { checked } => format!("inconclusive (checked t <= {checked})"),
    }
}

fn pencil_verdict(spec: &str) -> Result<String> {
    let spec: PencilSpec = spec.parse()?;
    let rec = pencil::verify_theorem24_with(&spec, None, true)?;
    Ok(word(&rec.c_verdict))
}

fn pencil_triple(spec: &str) -> Result<String> {
    let spec: PencilSpec = spec.parse()?;
    let rec = pencil::verify_theorem24_with(&spec, None, true)?;
    Ok(format!("a={} b={} c={}", rec.a, rec.b, word(&rec.c_verdict)))
}

fn pencil_height(spec: &str) -> Result<String> {
    let spec: PencilSpec = spec.parse()?;
    let p = PencilIdeals::new(&spec)?;
    Ok(p.j.codimension()?.to_string())
}

fn graph_verdict(family: &str) -> Result<String> {
    let g = graphs::family_generator(&family.parse::<Family>()?)?;
    let oracle = graphs::graph_oracle(&g, None, true)?;
    let combinatorial = if graphs::vertex_cover_number(&g)? <= 1 {
        NOT_TF.to_string()
    } else {
        match graphs::theorem34_witness(&g)? {
            Some(w) => format!("{NOT_TF} {w}"),
            None => TF.to_string(),
        }
    };
    let agree = match oracle.status {
        Status::TorsionFree { .. } => combinatorial == TF,
        Status::NotTorsionFree { .. } => combinatorial != TF,
        Status::Inconclusive { .. } => false,
    };
    if agree {
        Ok(combinatorial)
    } else {
        Ok(format!("conflict: combinatorial {combinatorial}, algebraic {}", word(&oracle)))
    }
}

fn ring(names: &[&str]) -> Result<Arc<RingContext>> {
    RingContext::with_names(names.iter().copied())
}

/// The ideal of partial derivatives of `q`.
fn partials(r: &Arc<RingContext>, q: &str) -> Result<Ideal<Rational>> {
    let q = parse_polynomial::<Rational>(r, q)?;
    let ds = (0..r.num_vars()).map(|k| q.partial_derivative(k)).collect::<Result<Vec<_>>>()?;
    Ideal::new(r, ds)
}

/// Jacobian ideal equals `stated`, and the pair is torsion-free.
fn curve(names: &[&str], j: &[&str], stated: &[&str]) -> Result<String> {
    let r = ring(names)?;
    let j = Ideal::<Rational>::parse(&r, j)?;
    let i = jacobian_ideal(&j)?;
    let eq = i.equals(&Ideal::parse(&r, stated)?)?;
    let v = aluffi_torsion_free(&j, &i, None, true)?;
    Ok(format!("jacobian ideal {}; {}", if eq { "as stated" } else { "differs" }, word(&v)))
}

fn scroll_pair() -> Result<String> {
    let r = ring(&["x0", "x1", "x2", "x3", "x4"])?;
    let j = Ideal::<Rational>::parse(&r, &["x2^2 - x0*x1", "x2*x3 - x0*x4", "x2*x4 - x1*x3"])?;
    let entries = [["x2", "x1", "x4"], ["x0", "x2", "x3"]];
    let rows = entries
        .iter()
        .map(|row| row.iter().map(|e| parse_polynomial::<Rational>(&r, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = SymbolicMatrix::from_rows(&r, rows)?;
    let minors = pencil::two_minor_ideal(&m)?;
    let eq = minors.equals(&j)?;
    let i = jacobian_ideal(&j)?;
    let v = aluffi_torsion_free(&j, &i, None, true)?;
    Ok(format!("minors {}; {}", if eq { "equal" } else { "differ" }, word(&v)))
}

fn hankel3() -> Result<String> {
    let m = pencil::build_generalized_hankel(&[3])?;
    let j = Ideal::new(m.ring(), m.minors(2)?.into_iter().filter(|p| !p.is_zero()))?;
    let i = jacobian_ideal(&j)?;
    Ok(word(&aluffi_torsion_free(&j, &i, None, true)?))
}

fn colon_counterexample() -> Result<String> {
    let (m, v) = pencil::colon_counterexample()?;
    Ok(if pencil::colon_lemma_holds(&m, v)? { "colon holds" } else { "colon fails" }.into())
}

fn arrangement_plane() -> Result<String> {
    let r = ring(&["x", "y", "z"])?;
    let j = partials(&r, "(x - y - z)*(y - x - z)*(z - x - y)")?;
    let i = jacobian_ideal(&j)?;
    let m2 = i.equals(&Ideal::maximal_power(&r, 2))?;
    let v = aluffi_torsion_free(&j, &i, None, true)?;
    Ok(format!("jacobian ideal {}; {}", if m2 { "m^2" } else { "not m^2" }, word(&v)))
}

fn arrangement_space() -> Result<String> {
    let r = ring(&["x1", "x2", "x3", "x4"])?;
    let j = partials(&r, "(x1 - x2)*(x2 - x3)*(x3 - x4)*(x4 - x1)")?;
    let h = j.codimension()?;
    let i = jacobian_ideal(&j)?;
    let rt = relation_type(&j, &i)?;
    let vv2 = vv_component(&j, &i, 2)?.is_zero;
    let v = aluffi_torsion_free(&j, &i, None, true)?;
    Ok(format!("height {h}; relation type {rt}; J∩I^2 {} JI; {}", if vv2 { "=" } else { "≠" }, word(&v)))
}

pub fn catalogue() -> Vec<Example> {
    vec![
        Example { name: "rational normal scroll S(4)", section: 2, expected: TF, run: || pencil_verdict("S(4)") },
        Example {
            name: "two-block scroll in P4: quadrics are the 2-minors",
            section: 2,
            expected: "minors equal; torsion-free",
            run: scroll_pair,
        },
        Example { name: "3x3 Hankel matrix", section: 2, expected: TF, run: hankel3 },
        Example { name: "height of N(2) N(3)", section: 2, expected: "5", run: || pencil_height("N(2) N(3)") },
        Example { name: "height of S(2) S(3)", section: 2, expected: "4", run: || pencil_height("S(2) S(3)") },
        Example { name: "height of S(2) J(2;0) J(1;0)", section: 2, expected: "3", run: || pencil_height("S(2) J(2;0) J(1;0)") },
        Example {
            name: "long nilpotent Jordan block J(2;0) N(1)",
            section: 2,
            expected: "a=false b=false c=not torsion-free",
            run: || pencil_triple("J(2;0) N(1)"),
        },
        Example {
            name: "distinct eigenvalues N(1) J(1;1) J(1;2)",
            section: 2,
            expected: "a=true b=true c=torsion-free",
            run: || pencil_triple("N(1) J(1;1) J(1;2)"),
        },
        Example {
            name: "colon identity fails for [y1 y2 w1 w2 w3; 0 y1 0 w1 w2]",
            section: 2,
            expected: "colon fails",
            run: colon_counterexample,
        },
        Example { name: "complete graph K5", section: 3, expected: TF, run: || graph_verdict("complete:5") },
        Example { name: "complete tripartite K(2,2,2)", section: 3, expected: TF, run: || graph_verdict("multipartite:2,2,2") },
        Example { name: "K6 minus a perfect matching", section: 3, expected: TF, run: || graph_verdict("kmm:6,3") },
        Example { name: "triangle C3", section: 3, expected: TF, run: || graph_verdict("cycle:3") },
        Example { name: "square C4", section: 3, expected: TF, run: || graph_verdict("cycle:4") },
        Example { name: "pentagon C5", section: 3, expected: "not torsion-free (v1, v2, {v4})", run: || graph_verdict("cycle:5") },
        Example { name: "hexagon C6", section: 3, expected: "not torsion-free (v1, v2, {v4})", run: || graph_verdict("cycle:6") },
        Example { name: "path P6", section: 3, expected: "not torsion-free (v1, v2, {v4})", run: || graph_verdict("path:6") },
        Example { name: "star on 5 vertices", section: 3, expected: NOT_TF, run: || graph_verdict("star:5") },
        Example {
            name: "monomial curve (t^3, t^5, t^7)",
            section: 4,
            expected: "jacobian ideal as stated; torsion-free",
            run: || curve(&["x", "y", "z"], &["x^4 - y*z", "y^2 - x*z", "x^3*y - z^2"], &["x^4", "x^3*y", "y^2", "x*z", "y*z", "z^2"]),
        },
        Example {
            name: "monomial curve (t^3, t^4, t^5, t^7)",
            section: 4,
            expected: "jacobian ideal as stated; torsion-free",
            run: || {
                curve(
                    &["x", "y", "z", "w"],
                    &["x^3 - y*z", "y^2 - x*z", "z^2 - x*w", "x^2*z - y*w", "x*y - w"],
                    &["x*w", "z^2", "y*z", "x*z", "y^2", "x*y - w", "x^3"],
                )
            },
        },
        Example { name: "three lines in P2", section: 4, expected: "jacobian ideal m^2; torsion-free", run: arrangement_plane },
        Example {
            name: "four planes in P3",
            section: 4,
            expected: "height 2; relation type 2; J∩I^2 = JI; torsion-free",
            run: arrangement_space,
        },
    ]
}

/// Runs the catalogue, optionally restricted to one group, with a per-item
/// time limit. Items run on the current rayon pool; the report keeps
/// catalogue order.
pub fn reproduce(section: Option<u32>, timeout: Option<Duration>) -> RunReport {
    let chosen: Vec<Example> = catalogue().into_iter().filter(|e| section.is_none_or(|s| s == e.section)).collect();
    let items: Vec<ReportItem> = chosen
        .into_par_iter()
        .map(|e| {
            let start = Instant::now();
            let computed = match budget::with_deadline(timeout, e.run) {
                Ok(s) => s,
                Err(Error::Interrupted) => "timed out".to_string(),
                Err(err) => format!("error: {err}"),
            };
            ReportItem {
                name: e.name.to_string(),
                section: e.section,
                expected: e.expected.to_string(),
                agree: computed == e.expected,
                computed,
                elapsed: start.elapsed().as_secs_f64(),
            }
        })
        .collect();
    let agreed = items.iter().filter(|i| i.agree).count();
    RunReport { total: items.len(), agreed, items }
}
