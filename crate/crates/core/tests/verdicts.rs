use aluffi::graphs::{self, Graph};
use aluffi::ideals::io::{format_ideal_file, parse_ideal_file};
use aluffi::pencil::{self, PencilSpec};
use aluffi::{aluffi_torsion_free, jacobian_ideal, Ideal, QIdeal, Rational, RingContext, Status};
use proptest::prelude::*;

fn pair(names: &[&str], gens: &[&str]) -> (QIdeal, QIdeal) {
    let r = RingContext::with_names(names.iter().copied()).unwrap();
    let j = Ideal::<Rational>::parse(&r, gens).unwrap();
    let i = jacobian_ideal(&j).unwrap();
    (j, i)
}

fn assert_valid_witness(j: &QIdeal, i: &QIdeal, t: u32, w: &aluffi::Poly) {
    assert!(j.contains(w).unwrap());
    assert!(i.power(t).unwrap().contains(w).unwrap());
    let below = j.product(&i.power(t - 1).unwrap()).unwrap();
    assert!(!below.contains(w).unwrap());
}

#[test]
fn five_cycle_witness_is_genuine() {
    let g: Graph = graphs::parse_graph("cycle:5").unwrap();
    let (j, _, i) = graphs::graph_pair(&g).unwrap();
    let v = aluffi_torsion_free(&j, &i, None, true).unwrap();
    let (t, w) = v.witness().expect("five-cycle is not torsion-free");
    assert_valid_witness(&j, &i, t, w);
}

#[test]
fn pencil_witness_is_genuine() {
    let spec: PencilSpec = "J(2;0) N(1)".parse().unwrap();
    let data = pencil::PencilIdeals::new(&spec).unwrap();
    let i = data.jacobian_ideal().unwrap();
    let v = aluffi_torsion_free(&data.j, &i, None, false).unwrap();
    let (t, w) = v.witness().expect("not torsion-free");
    assert_valid_witness(&data.j, &i, t, w);
}

#[test]
fn verdict_survives_variable_reordering() {
    let gens = ["x*y", "y*z", "z*w", "w*u", "u*x"];
    let a = pair(&["x", "y", "z", "w", "u"], &gens);
    let b = pair(&["u", "w", "z", "y", "x"], &gens);
    let va = aluffi_torsion_free(&a.0, &a.1, None, true).unwrap();
    let vb = aluffi_torsion_free(&b.0, &b.1, None, true).unwrap();
    assert!(va.is_not_torsion_free() && vb.is_not_torsion_free());

    let gens = ["x*y", "y*z", "z*x"];
    let a = pair(&["x", "y", "z"], &gens);
    let b = pair(&["z", "x", "y"], &gens);
    assert!(aluffi_torsion_free(&a.0, &a.1, None, true).unwrap().is_torsion_free());
    assert!(aluffi_torsion_free(&b.0, &b.1, None, true).unwrap().is_torsion_free());
}

#[test]
fn jordan_block_with_foreign_eigenvalue() {
    // the long block's eigenvalue is not the most repeated one
    let spec: PencilSpec = "J(2;0) J(1;1) J(1;1)".parse().unwrap();
    let rec = pencil::verify_theorem24(&spec).unwrap();
    assert!(rec.a);
    assert!(!rec.b);
    assert!(matches!(rec.c_verdict.status, Status::TorsionFree { .. }));
}

#[test]
fn jordan_obstruction() {
    for s in ["J(2;0) N(1)", "J(3;0) N(1)", "J(2;0) S(1)"] {
        let spec: PencilSpec = s.parse().unwrap();
        assert!(!pencil::predicted_atf(&spec).unwrap(), "{s}");
    }
    let spec: PencilSpec = "N(1) J(1;1) J(1;2)".parse().unwrap();
    assert!(pencil::predicted_atf(&spec).unwrap());
}

#[test]
fn ideal_file_round_trip() {
    let text = "ring: x,y,z\nx^2 - y*z\ny^3 + 2/3*x*z^2\n";
    let a: QIdeal = parse_ideal_file(text).unwrap();
    let b: QIdeal = parse_ideal_file(&format_ideal_file(&a)).unwrap();
    assert_eq!(format_ideal_file(&a), format_ideal_file(&b));
    assert_eq!(b.num_generators(), 2);
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (3usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n).unwrap();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        g.add_edge(a + 1, b + 1).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_always_check(g in small_graph()) {
        prop_assume!(g.num_edges() > 0 && g.is_connected());
        prop_assume!(graphs::vertex_cover_number(&g).unwrap() > 1);
        if let Some(w) = graphs::theorem34_witness(&g).unwrap() {
            prop_assert!(graphs::check_witness34(&g, &w).unwrap());
            prop_assert!(!graphs::is_graph_atf(&g).unwrap());
        }
    }

    #[test]
    fn transversals_on_independent_sets(g in small_graph(), mask in 1u32..64) {
        prop_assume!(g.num_edges() > 0);
        let n = g.num_vertices();
        let set: Vec<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        prop_assume!(!set.is_empty() && g.is_independent(&set));
        let nb = graphs::neighborhood(&g, &set).unwrap().len();
        for r in 1..=nb + 1 {
            let mut found = false;
            for exps in bounded_vectors(&set.iter().map(|&v| g.degree(v) as u16).collect::<Vec<_>>(), r as u16) {
                let mut full = vec![0u16; n];
                for (k, &v) in set.iter().enumerate() {
                    full[v - 1] = exps[k];
                }
                if graphs::is_r_transversal(&g, &aluffi::Monomial::from_slice(&full), r).unwrap() {
                    found = true;
                    break;
                }
            }
            prop_assert_eq!(found, nb >= r, "r = {}", r);
        }
    }

    #[test]
    fn graph_file_round_trip(g in small_graph()) {
        let back = Graph::parse_file(&g.to_file()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }
}

/// Vectors `a` with `a[k] <= caps[k]` and entries summing to `total`.
fn bounded_vectors(caps: &[u16], total: u16) -> Vec<Vec<u16>> {
    if caps.is_empty() {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=caps[0].min(total) {
        for mut rest in bounded_vectors(&caps[1..], total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
