mod common;

use common::{all_names, load, path, vertex};
use noloop_core::structure::{
    arrows_from, check_distributive, detect_penny_farthings, distributivity_witness, minimal_loop_power,
    neighborhood, PennyFarthingType,
};
use noloop_core::text::parse_algebra;
use noloop_core::AlgebraBasis;

fn arrow(a: &AlgebraBasis, name: &str) -> usize {
    a.quiver().arrow_named(name).unwrap()
}

#[test]
fn distributivity() {
    let k = load("kronecker");
    assert_eq!(distributivity_witness(&k), Some((vertex(&k, "x"), vertex(&k, "y"))));
    assert!(check_distributive(&load("loopnil3")));
    assert!(check_distributive(&load("example1")));
}

#[test]
fn loop_powers_and_out_arrows() {
    let a = load("example1");
    let r = minimal_loop_power(&a, arrow(&a, "a")).unwrap().unwrap();
    assert_eq!(r.exponent, 2);
    assert_eq!(r.other, path(&a, "b1.b2.b3"));
    assert_eq!(r.coefficient, a.field().from_i64(2));
    let names: Vec<&str> = arrows_from(&a, vertex(&a, "x")).iter().map(|&i| a.quiver().arrow(i).name.as_str()).collect();
    assert_eq!(names, ["a", "b1", "c1"]);
    assert!(minimal_loop_power(&a, arrow(&a, "b1")).is_err());

    let l3 = load("loopnil3");
    assert_eq!(minimal_loop_power(&l3, arrow(&l3, "a")).unwrap(), None);
    let pf = load("pf-case-1");
    assert_eq!(minimal_loop_power(&pf, arrow(&pf, "a")).unwrap().unwrap().exponent, 2);
}

#[test]
fn neighborhood_rules() {
    let one = load("loopnil3");
    let n = neighborhood(&one, 0).unwrap();
    assert_eq!(n.dim(), one.dim());

    let text = "noloopwb/1\n[vertices]\nx y z w\n[arrows]\nb: x -> y\nc: z -> x\nd: w -> y\n[bound]\n3\n";
    let a = AlgebraBasis::build(&parse_algebra(text).unwrap().presentation).unwrap();
    let n = neighborhood(&a, vertex(&a, "x")).unwrap();
    assert_eq!(n.vertices, [vertex(&a, "x"), vertex(&a, "y"), vertex(&a, "z")]);
    assert!(!n.contains(vertex(&a, "w")));

    let e2 = load("example2-ambient");
    let n = neighborhood(&e2, vertex(&e2, "x")).unwrap();
    let names: Vec<&str> = n.vertices.iter().map(|&v| e2.quiver().vertex_name(v)).collect();
    assert_eq!(names, ["x", "y", "z", "zp"]);
}

#[test]
fn neighborhood_is_idempotent_on_corpus() {
    for name in all_names() {
        let a = load(name);
        for x in 0..a.quiver().vertex_count() {
            let n = neighborhood(&a, x).unwrap();
            let again = n.rule_closure(&a);
            assert!(again.iter().all(|v| n.contains(*v)), "{name} at {x}");
            for &v in &n.vertices {
                assert!(!a.hom_space(x, v).is_empty() || n.contains(v));
            }
        }
    }
}

#[test]
fn penny_farthings_on_corpus() {
    for (name, f) in [("pf-case-1", vec![1]), ("pf-case-2", vec![1]), ("pf-case-3", vec![1, 2])] {
        let a = load(name);
        let scan = detect_penny_farthings(&a);
        assert_eq!(scan.found.len(), 1, "{name}");
        assert!(scan.malformed.is_empty(), "{name}");
        let pf = &scan.found[0];
        assert_eq!(pf.kind, PennyFarthingType::One);
        assert_eq!(pf.base, vertex(&a, "x"));
        assert_eq!(pf.f, f, "{name}");
    }
    let a = load("pf2-type2");
    let scan = detect_penny_farthings(&a);
    assert_eq!(scan.found.len(), 1);
    assert_eq!(scan.found[0].kind, PennyFarthingType::Two);
    assert_eq!(scan.found[0].f, [2]);
    let e1 = detect_penny_farthings(&load("example1"));
    assert!(e1.found.is_empty());
    assert_eq!(e1.malformed.len(), 1, "{:?}", e1.malformed);
    for name in ["a2", "example1", "loopnil2", "loopnil3", "kronecker"] {
        assert!(detect_penny_farthings(&load(name)).found.is_empty(), "{name}");
    }
}

#[test]
fn recovered_f_is_non_decreasing() {
    for name in all_names() {
        for pf in detect_penny_farthings(&load(name)).found {
            assert!(pf.f.windows(2).all(|w| w[0] <= w[1]));
            assert!(pf.f.iter().all(|&v| (1..=pf.rho.len()).contains(&v)));
        }
    }
}
