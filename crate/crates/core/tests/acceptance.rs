//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! The process exits 0 even when a criterion fails, so that a known failure
//! is reported rather than hidden behind a red test run; set
//! `ACCEPTANCE_STRICT=1` to turn any failure into a nonzero exit.
//! `ACCEPTANCE_PENCIL_BUDGET` (seconds) caps the time spent on each pencil
//! in the block-criterion sweep; specs over budget count as unresolved.
//! `ACCEPTANCE_VERBOSE=1` logs each pencil to stderr.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use aluffi::aluffi::{aluffi_torsion_free, Status};
use aluffi::budget;
use aluffi::graphs::{self, Family, Graph};
use aluffi::groebner::{buchberger, is_reduced, satisfies_buchberger_criterion};
use aluffi::ideals::{jacobian_ideal, relation_type, HilbertSeries, Ideal};
use aluffi::linalg::{MonomialIndex, Span};
use aluffi::pencil::{self, Block, PencilSpec};
use aluffi::polyring::{monomials_of_degree, Monomial, Polynomial};
use aluffi::vv_component;
use aluffi::{parse_polynomial, Error, MonomialOrder, QIdeal, Rational, RingContext};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

fn verbose() -> bool {
    std::env::var("ACCEPTANCE_VERBOSE").is_ok_and(|v| v == "1")
}

fn err(e: Error) -> String {
    e.to_string()
}

struct GraphRow {
    graph: Graph,
    combinatorial: bool,
    status: &'static str,
    minors_are_power: bool,
    max_terms: usize,
}

fn status_word(s: &Status<Rational>) -> &'static str {
    match s {
        Status::TorsionFree { .. } => "tf",
        Status::NotTorsionFree { .. } => "ntf",
        Status::Inconclusive { .. } => "inconclusive",
    }
}

fn graph_sweep() -> std::result::Result<Vec<GraphRow>, String> {
    let mut rows = Vec::new();
    for g in graphs::connected_graphs(7).map_err(err)? {
        if g.num_edges() == 0 {
            continue;
        }
        let r = graphs::vertex_cover_number(&g).map_err(err)?;
        if r <= 1 {
            continue;
        }
        let combinatorial = graphs::is_graph_atf(&g).map_err(err)?;
        let (j, _, i) = graphs::graph_pair(&g).map_err(err)?;
        let verdict = aluffi_torsion_free(&j, &i, None, true).map_err(err)?;
        let theta_minors = pencil_free_minor_ideal(&j, r)?;
        let minors_are_power = theta_minors.equals_m_power(r as u32).map_err(err)?;
        let max_terms = graphs::max_minor_terms(&g).map_err(err)?;
        rows.push(GraphRow { graph: g, combinatorial, status: status_word(&verdict.status), minors_are_power, max_terms });
    }
    Ok(rows)
}

/// `I_r(Θ)` on its own, for the `m^r` comparison.
fn pencil_free_minor_ideal(j: &QIdeal, r: usize) -> std::result::Result<QIdeal, String> {
    let theta = aluffi::ideals::jacobian_matrix(j.ring(), j.generators()).map_err(err)?;
    let minors: Vec<Polynomial<Rational>> = theta.minors(r).map_err(err)?.into_iter().filter(|p| !p.is_zero()).collect();
    Ideal::new(j.ring(), minors).map_err(err)
}

fn criterion1() -> Outcome {
    let mut cases: Vec<(String, bool)> = Vec::new();
    for n in 3..=7 {
        cases.push((format!("complete:{n}"), true));
    }
    for n in 2..=7usize {
        for parts in partitions(n, n) {
            if parts.len() < 2 {
                continue;
            }
            // K_{1,m} is a star
            let star = parts.len() == 2 && parts.contains(&1);
            let spec = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            cases.push((format!("multipartite:{spec}"), !star));
        }
    }
    for n in 4..=7 {
        for m in 0..=n / 2 {
            cases.push((format!("kmm:{n},{m}"), true));
        }
    }
    cases.push(("cycle:3".into(), true));
    cases.push(("cycle:4".into(), true));
    for n in 5..=8 {
        cases.push((format!("cycle:{n}"), false));
    }
    for n in 3..=8 {
        cases.push((format!("path:{n}"), false));
    }
    for n in 3..=8 {
        cases.push((format!("star:{n}"), false));
    }
    let mut bad = Vec::new();
    for (name, want) in &cases {
        let g = graphs::family_generator(&name.parse::<Family>().map_err(err)?).map_err(err)?;
        let got = graphs::is_graph_atf(&g).map_err(err)?;
        let mut ok = got == *want;
        if !want && graphs::vertex_cover_number(&g).map_err(err)? > 1 {
            match graphs::theorem34_witness(&g).map_err(err)? {
                Some(w) => ok &= graphs::check_witness34(&g, &w).map_err(err)?,
                None => ok = false,
            }
        }
        if !ok {
            bad.push(name.clone());
        }
    }
    if bad.is_empty() {
        Ok(format!("{} family members match", cases.len()))
    } else {
        Err(format!("mismatches: {}", bad.join(" ")))
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criterion2(rows: &[GraphRow]) -> Outcome {
    let mut disagree = Vec::new();
    let mut inconclusive = 0;
    for row in rows {
        match row.status {
            "inconclusive" => inconclusive += 1,
            s => {
                if (s == "tf") != row.combinatorial {
                    disagree.push(row.graph.to_file().replace('\n', " "));
                }
            }
        }
    }
    let atf = rows.iter().filter(|r| r.combinatorial).count();
    let summary = format!("{} graphs, {atf} torsion-free, {inconclusive} inconclusive, {} disagreements", rows.len(), disagree.len());
    if disagree.is_empty() && inconclusive == 0 {
        Ok(summary)
    } else {
        Err(format!("{summary}; first: {}", disagree.first().cloned().unwrap_or_default()))
    }
}

/// `I_2(M)`, the zero ideal when the pencil has a single column.
fn minor_ideal(spec: &PencilSpec) -> std::result::Result<QIdeal, String> {
    let (m, ring) = pencil::build_matrix(spec).map_err(err)?;
    if spec.columns() < 2 {
        return Ok(Ideal::zero(&ring));
    }
    pencil::two_minor_ideal(&m).map_err(err)
}

struct PencilRow {
    spec: PencilSpec,
    predicted: usize,
    height: usize,
    /// `(a, b, c)`; `c` is `None` when unresolved.
    conditions: Option<(bool, bool, Option<bool>)>,
    colon: Option<bool>,
    elapsed: Duration,
}

fn pencil_sweep(budget_per_spec: Option<Duration>) -> std::result::Result<Vec<PencilRow>, String> {
    let mut rows = Vec::new();
    for spec in pencil::standard_family() {
        let start = Instant::now();
        let height = minor_ideal(&spec)?.codimension().map_err(err)?;
        let predicted = pencil::predicted_height(&spec);
        let conditions = if predicted > 1 && height > 1 {
            let run = budget::with_deadline(budget_per_spec, || -> aluffi::Result<(bool, bool, Option<bool>)> {
                let rec = pencil::verify_theorem24_with(&spec, None, false)?;
                let c = match rec.c_verdict.status {
                    Status::TorsionFree { .. } => Some(true),
                    Status::NotTorsionFree { .. } => Some(false),
                    Status::Inconclusive { .. } => None,
                };
                Ok((rec.a, rec.b, c))
            });
            match run {
                Ok(x) => Some(x),
                Err(Error::Interrupted) => None,
                Err(e) => return Err(format!("{spec}: {e}")),
            }
        } else {
            None
        };
        let colon =
            if spec.columns() >= 2 && spec.blocks.iter().any(|b| matches!(b, Block::Jordan(_, l) if *l == Rational::from_integer(0))) {
                Some(pencil::check_colon_lemma(&spec).map_err(err)?)
            } else {
                None
            };
        if verbose() {
            eprintln!("{spec}: {conditions:?} {:.2}s", start.elapsed().as_secs_f64());
        }
        rows.push(PencilRow { spec, predicted, height, conditions, colon, elapsed: start.elapsed() });
    }
    Ok(rows)
}

fn criterion3(rows: &[PencilRow]) -> Outcome {
    let bad: Vec<String> =
        rows.iter().filter(|r| r.predicted != r.height).map(|r| format!("{} ({} vs {})", r.spec, r.predicted, r.height)).collect();
    if bad.is_empty() {
        Ok(format!("{} specs, all heights match", rows.len()))
    } else {
        Err(format!("{} mismatches, e.g. {}", bad.len(), bad[0]))
    }
}

fn criterion4(rows: &[PencilRow]) -> Outcome {
    let eligible: Vec<&PencilRow> = rows.iter().filter(|r| r.predicted > 1 && r.height > 1).collect();
    let unresolved: Vec<&&PencilRow> = eligible.iter().filter(|r| !matches!(r.conditions, Some((_, _, Some(_))))).collect();
    let mut patterns: BTreeMap<String, usize> = BTreeMap::new();
    let mut example = None;
    for r in &eligible {
        if let Some((a, b, Some(c))) = r.conditions {
            if !(a == b && b == c) {
                *patterns.entry(format!("a={a} b={b} c={c}")).or_default() += 1;
                example.get_or_insert_with(|| r.spec.to_string());
            }
        }
    }
    let ac_split = eligible.iter().filter(|r| matches!(r.conditions, Some((a, _, Some(c))) if a != c)).count();
    let disagreements: usize = patterns.values().sum();
    let slowest = eligible.iter().map(|r| r.elapsed).max().unwrap_or_default();
    let summary = format!(
        "{} specs, {disagreements} disagreements {:?}, {} unresolved, (a) vs (c) differ on {ac_split}, slowest {:.1}s",
        eligible.len(),
        patterns,
        unresolved.len(),
        slowest.as_secs_f64()
    );
    if disagreements == 0 && unresolved.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; e.g. {}", example.unwrap_or_else(|| unresolved[0].spec.to_string())))
    }
}

/// Dimension of `(S/A)_d` by linear algebra on the degree-`d` multiples of
/// the generators.
fn brute_force_hilbert(a: &QIdeal, d: u32) -> u64 {
    let n = a.ring().num_vars();
    let idx = MonomialIndex::of_degree(n, d);
    let mut span = Span::<Rational>::new(idx.len());
    for g in a.generators() {
        let e = g.degree().unwrap();
        if e > d {
            continue;
        }
        for m in monomials_of_degree(n, d - e) {
            let v = idx.vector(&g.mul_term(&Rational::from_integer(1), &m)).expect("degree d");
            span.insert(&v);
        }
    }
    (idx.len() - span.rank()) as u64
}

fn criterion5() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for spec in pencil::standard_family() {
        if !spec.blocks.iter().all(|b| matches!(b, Block::Scroll(_))) {
            continue;
        }
        let m = spec.columns() as i64;
        let t = spec.blocks.len() as u32;
        let want = HilbertSeries::new(vec![1, m - 1], t + 1);
        let got = minor_ideal(&spec)?.hilbert_series().map_err(err)?;
        checked += 1;
        if got != want {
            bad.push(format!("{spec}: {got} vs {want}"));
        }
    }
    let mut ideals: Vec<(String, QIdeal)> = Vec::new();
    for spec in ["S(3)", "S(2) S(2)", "N(2) J(1;0)", "J(2;0) N(1)", "N(1) J(1;1) J(1;2)", "S(2) J(2;0)", "J(3;1) S(1)"] {
        let s: PencilSpec = spec.parse().map_err(err)?;
        ideals.push((spec.to_string(), minor_ideal(&s)?));
    }
    for fam in ["cycle:5", "path:5", "complete:4", "star:4"] {
        let g = graphs::family_generator(&fam.parse().map_err(err)?).map_err(err)?;
        ideals.push((fam.to_string(), graphs::edge_ideal(&g).map_err(err)?));
    }
    let r = RingContext::with_names(["x", "y", "z", "w"]).map_err(err)?;
    for gens in [vec!["x^2", "y^2", "z^2", "w^2"], vec!["x*y - z*w", "x^3 - y^2*z"], vec!["x^2 + y*z", "x*y*z - w^3", "z^2*w"]] {
        ideals.push((gens.join(", "), Ideal::parse(&r, &gens).map_err(err)?));
    }
    for (name, a) in &ideals {
        let hs = a.hilbert_series().map_err(err)?;
        for d in 0..=8 {
            checked += 1;
            let brute = brute_force_hilbert(a, d);
            if hs.coefficient(d) as u64 != brute {
                bad.push(format!("{name} degree {d}: series {} vs count {brute}", hs.coefficient(d)));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{checked} comparisons"))
    } else {
        Err(format!("{} mismatches, e.g. {}", bad.len(), bad[0]))
    }
}

fn certified(j: &QIdeal, i: &QIdeal) -> std::result::Result<bool, String> {
    let v = aluffi_torsion_free(j, i, None, true).map_err(err)?;
    Ok(v.is_torsion_free())
}

fn criterion6() -> Outcome {
    let mut notes = Vec::new();
    let r = RingContext::with_names(["x", "y", "z"]).map_err(err)?;
    let start = Instant::now();
    let j = Ideal::<Rational>::parse(&r, &["x^4 - y*z", "y^2 - x*z", "x^3*y - z^2"]).map_err(err)?;
    let i = jacobian_ideal(&j).map_err(err)?;
    let stated = Ideal::parse(&r, &["x^4", "x^3*y", "y^2", "x*z", "y*z", "z^2"]).map_err(err)?;
    let first = i.equals(&stated).map_err(err)? && certified(&j, &i)?;
    notes.push(format!("(3,5,7): {first} in {:.2}s", start.elapsed().as_secs_f64()));
    let r = RingContext::with_names(["x", "y", "z", "w"]).map_err(err)?;
    let start = Instant::now();
    let j = Ideal::<Rational>::parse(&r, &["x^3 - y*z", "y^2 - x*z", "z^2 - x*w", "x^2*z - y*w", "x*y - w"]).map_err(err)?;
    let i = jacobian_ideal(&j).map_err(err)?;
    let second = certified(&j, &i)?;
    let secs = start.elapsed().as_secs_f64();
    notes.push(format!("(3,4,5,7): {second} in {secs:.2}s"));
    if first && second && secs < 60.0 {
        Ok(notes.join(", "))
    } else {
        Err(notes.join(", "))
    }
}

fn partials(r: &std::sync::Arc<RingContext>, q: &str) -> std::result::Result<QIdeal, String> {
    let q = parse_polynomial::<Rational>(r, q).map_err(err)?;
    let ds = (0..r.num_vars()).map(|k| q.partial_derivative(k)).collect::<aluffi::Result<Vec<_>>>().map_err(err)?;
    Ideal::new(r, ds).map_err(err)
}

fn criterion7() -> Outcome {
    let r = RingContext::with_names(["x", "y", "z"]).map_err(err)?;
    let j = partials(&r, "(x - y - z)*(y - x - z)*(z - x - y)")?;
    let i = jacobian_ideal(&j).map_err(err)?;
    let plane = i.equals(&Ideal::maximal_power(&r, 2)).map_err(err)? && certified(&j, &i)?;
    let r = RingContext::with_names(["x1", "x2", "x3", "x4"]).map_err(err)?;
    let j = partials(&r, "(x1 - x2)*(x2 - x3)*(x3 - x4)*(x4 - x1)")?;
    let i = jacobian_ideal(&j).map_err(err)?;
    let rt = relation_type(&j, &i).map_err(err)?;
    let vv2 = vv_component(&j, &i, 2).map_err(err)?.is_zero;
    let space = rt == 2 && vv2 && certified(&j, &i)?;
    let note = format!("plane arrangement {plane}, space arrangement relation type {rt}, VV_2 = 0: {vv2}");
    if plane && space {
        Ok(note)
    } else {
        Err(note)
    }
}

fn criterion8(rows: &[PencilRow]) -> Outcome {
    let qualifying: Vec<&PencilRow> = rows.iter().filter(|r| r.colon.is_some()).collect();
    let failing: Vec<String> = qualifying.iter().filter(|r| r.colon == Some(false)).map(|r| r.spec.to_string()).collect();
    let (m, v) = pencil::colon_counterexample().map_err(err)?;
    let counter_fails = !pencil::colon_lemma_holds(&m, v).map_err(err)?;
    let note =
        format!("{} qualifying specs, {} failures; counterexample shows inequality: {counter_fails}", qualifying.len(), failing.len());
    if failing.is_empty() && counter_fails {
        Ok(note)
    } else {
        Err(format!("{note}; e.g. {}", failing.first().cloned().unwrap_or_default()))
    }
}

fn criterion9(graph_rows: &[GraphRow], pencil_rows: &[PencilRow]) -> Outcome {
    let many_terms = graph_rows.iter().filter(|r| r.max_terms > 1).count();
    let mut premises = 0;
    let mut counter = Vec::new();
    for r in graph_rows {
        if r.minors_are_power {
            premises += 1;
            if r.status != "tf" {
                counter.push(r.graph.to_file().replace('\n', " "));
            }
        }
    }
    for r in pencil_rows {
        if let Some((true, _, c)) = r.conditions {
            premises += 1;
            if c != Some(true) {
                counter.push(r.spec.to_string());
            }
        }
    }
    let note = format!(
        "{} edge-ideal Jacobians, {many_terms} with a minor of more than one term; {premises} pairs with I_r(Θ) = m^r, {} not torsion-free",
        graph_rows.len(),
        counter.len()
    );
    if many_terms == 0 && counter.is_empty() {
        Ok(note)
    } else {
        Err(note)
    }
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<RingContext>) -> Polynomial<Rational> {
    let n = ring.num_vars();
    let terms = rng.gen_range(1..=4);
    let mut out = Vec::new();
    for _ in 0..terms {
        let d = rng.gen_range(0..=3u32);
        let mut e = vec![0u16; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-5i64..=5);
        if c != 0 {
            out.push((Rational::from_integer(c), Monomial::from_slice(&e)));
        }
    }
    Polynomial::from_terms(ring, out)
}

fn criterion10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(2..=4usize);
        let ring = RingContext::new((0..n).map(|i| format!("x{i}")), MonomialOrder::DegRevLex).map_err(err)?;
        let k = rng.gen_range(2..=4);
        let gens: Vec<_> = (0..k).map(|_| random_poly(&mut rng, &ring)).filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        done += 1;
        let base = buchberger(&ring, &gens, ring.order()).map_err(err)?;
        let mut ok = satisfies_buchberger_criterion(&base).map_err(err)? && is_reduced(&base);
        let key = |gb: &aluffi::groebner::GroebnerBasis<Rational>| {
            let mut v: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
            v.sort();
            v
        };
        let want = key(&base);
        for _ in 0..3 {
            let mut perm = gens.clone();
            perm.shuffle(&mut rng);
            let gb = buchberger(&ring, &perm, ring.order()).map_err(err)?;
            ok &= key(&gb) == want;
        }
        if !ok {
            failures.push(gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
        }
    }
    if failures.is_empty() {
        Ok("50 random ideals: reduced bases unique, all S-polynomials reduce to zero".into())
    } else {
        Err(format!("{} failures, e.g. [{}]", failures.len(), failures[0]))
    }
}

fn report(n: u32, title: &str, start: Instant, out: Outcome, failed: &mut bool) {
    let secs = start.elapsed().as_secs_f64();
    match out {
        Ok(note) => println!("criterion {n:2} PASS  {title}: {note} [{secs:.1}s]"),
        Err(note) => {
            *failed = true;
            println!("criterion {n:2} FAIL  {title}: {note} [{secs:.1}s]");
        }
    }
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let pencil_budget = std::env::var("ACCEPTANCE_PENCIL_BUDGET").ok().and_then(|s| s.parse::<f64>().ok()).map(Duration::from_secs_f64);
    let mut failed = false;

    let t = Instant::now();
    report(1, "graph families", t, criterion1(), &mut failed);

    let t = Instant::now();
    let graph_rows = graph_sweep();
    let sweep_time = t.elapsed();
    let t2 = Instant::now() - sweep_time;
    report(
        2,
        "graph criterion vs algebraic verdict",
        t2,
        graph_rows.as_ref().map_err(Clone::clone).and_then(|r| criterion2(r)),
        &mut failed,
    );

    let t = Instant::now();
    let pencil_rows = pencil_sweep(pencil_budget);
    let pencil_time = t.elapsed();
    let t3 = Instant::now() - pencil_time;
    report(3, "pencil heights", t3, pencil_rows.as_ref().map_err(Clone::clone).and_then(|r| criterion3(r)), &mut failed);
    report(4, "block criterion", t3, pencil_rows.as_ref().map_err(Clone::clone).and_then(|r| criterion4(r)), &mut failed);

    let t = Instant::now();
    report(5, "Hilbert series", t, criterion5(), &mut failed);
    let t = Instant::now();
    report(6, "monomial curves", t, criterion6(), &mut failed);
    let t = Instant::now();
    report(7, "hyperplane arrangements", t, criterion7(), &mut failed);
    let t = Instant::now();
    report(8, "colon lemma", t, pencil_rows.as_ref().map_err(Clone::clone).and_then(|r| criterion8(r)), &mut failed);
    let t = Instant::now();
    let nine = match (&graph_rows, &pencil_rows) {
        (Ok(g), Ok(p)) => criterion9(g, p),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    report(9, "monomial minors and power criterion", t, nine, &mut failed);
    let t = Instant::now();
    report(10, "Groebner core", t, criterion10(), &mut failed);

    if failed && strict {
        std::process::exit(1);
    }
}
