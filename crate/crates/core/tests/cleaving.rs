mod common;

use common::load;
use noloop_core::cleaving::{
    cleaving_violation, representation_infinite_witness, underlying_graph_type, verify_cleaving, Condition,
    Diagram, Family, GraphType, RayFunctor, WitnessOutcome,
};
use noloop_core::raycat::RayCategory;
use noloop_core::{corpus, Error, Quiver};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape(name: &str) -> Quiver {
    corpus::diagram(name).unwrap().unwrap().quiver
}

fn reverse(q: &Quiver) -> Quiver {
    let arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| (a.name.clone(), q.vertex_name(a.target).to_string(), q.vertex_name(a.source).to_string()))
        .collect();
    Quiver::new(q.vertices().to_vec(), arrows).unwrap()
}

#[test]
fn shapes_from_the_proofs() {
    let cases = [
        ("square", GraphType::Euclidean(Family::A, 3)),
        ("shape-d4", GraphType::Euclidean(Family::D, 4)),
        ("shape-d5", GraphType::Euclidean(Family::D, 5)),
        ("shape-e6", GraphType::Euclidean(Family::E, 6)),
        ("shape-e7", GraphType::Euclidean(Family::E, 7)),
    ];
    for (name, want) in cases {
        let q = shape(name);
        assert_eq!(underlying_graph_type(&q), want, "{name}");
        assert_eq!(underlying_graph_type(&reverse(&q)), want, "{name} reversed");
    }
}

/// Random orientation and labelling of a tree given by parent pointers.
fn tree(rng: &mut ChaCha8Rng, edges: &[(usize, usize)], n: usize) -> Quiver {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let names: Vec<String> = labels.iter().map(|l| format!("v{l}")).collect();
    let arrows: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| {
            let (s, t) = if rng.gen_bool(0.5) { (s, t) } else { (t, s) };
            (format!("e{i}"), names[s].clone(), names[t].clone())
        })
        .collect();
    Quiver::new(names, arrows).unwrap()
}

fn arms(lengths: &[usize]) -> (Vec<(usize, usize)>, usize) {
    let mut edges = Vec::new();
    let mut n = 1;
    for &l in lengths {
        let mut prev = 0;
        for _ in 0..l {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
    }
    (edges, n)
}

#[test]
fn dynkin_graphs_are_not_euclidean() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let (lengths, want) = match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..9);
                (vec![n - 1], GraphType::Dynkin(Family::A, n))
            }
            1 => {
                let k = rng.gen_range(1..5);
                (vec![1, 1, k], GraphType::Dynkin(Family::D, k + 3))
            }
            _ => {
                let k = rng.gen_range(2..5);
                (vec![1, 2, k], GraphType::Dynkin(Family::E, k + 4))
            }
        };
        let (edges, n) = arms(&lengths);
        let q = tree(&mut rng, &edges, n);
        let got = underlying_graph_type(&q);
        assert_eq!(got, want);
        assert!(!got.is_euclidean());
    }
}

#[test]
fn other_graphs() {
    let (edges, n) = arms(&[2, 2, 3]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert_eq!(underlying_graph_type(&tree(&mut rng, &edges, n)), GraphType::Other);
    let kron = Quiver::new(["x", "y"], [("a", "x", "y"), ("b", "x", "y")]).unwrap();
    assert_eq!(underlying_graph_type(&kron), GraphType::Euclidean(Family::A, 1));
    let two = Quiver::new(["x", "y"], Vec::<(&str, &str, &str)>::new()).unwrap();
    assert_eq!(underlying_graph_type(&two), GraphType::Other);
}

fn functor(rc: &RayCategory, name: &str) -> (Diagram, Result<RayFunctor, Error>) {
    let f = corpus::diagram(name).unwrap().unwrap();
    let d = Diagram::from_file(&f).unwrap();
    let func = RayFunctor::from_file(rc, &d, &f);
    (d, func)
}

#[test]
fn square_cleaves_over_the_witness_algebra() {
    let a = load("cleave-witness");
    let rc = RayCategory::build(&a).unwrap();
    let (d, f) = functor(&rc, "square");
    let f = f.unwrap();
    assert!(verify_cleaving(&rc, &d, &f).unwrap());
    let eta = rc.ray_of_path(&a.quiver().parse_path("a.a").unwrap()).unwrap();
    assert!(rc.is_long(eta));
    let w = representation_infinite_witness(&rc, &d, &f, Some(eta)).unwrap();
    assert_eq!(w, WitnessOutcome::Witness { graph: GraphType::Euclidean(Family::A, 3), quotient: Some(eta) });
    // quotienting by a long morphism outside the image leaves the verdict alone
    for l in rc.long_morphisms() {
        let q = rc.quotient_by_ray(l).unwrap();
        assert!(verify_cleaving(&q, &d, &f).unwrap());
    }
}

#[test]
fn square_is_rejected_over_example1() {
    let rc = RayCategory::build(&load("example1")).unwrap();
    let (_, f) = functor(&rc, "square-example1");
    assert!(matches!(f, Err(Error::IllFormedFunctor(_))));
}

#[test]
fn single_arrow_and_zero_reflection() {
    let a = load("example1");
    let rc = RayCategory::build(&a).unwrap();
    let q = Quiver::new(["s", "t"], [("m", "s", "t")]).unwrap();
    let d = Diagram::new(q, &[], &[]).unwrap();
    for r in rc.irreducible_rays() {
        let f = RayFunctor { vertices: vec![rc.source(r), rc.target(r)], arrows: vec![r] };
        assert!(verify_cleaving(&rc, &d, &f).unwrap());
    }
    // two arrows whose composite is nonzero in the diagram but zero in the algebra
    let q = Quiver::new(["s", "m", "t"], [("f", "s", "m"), ("g", "m", "t")]).unwrap();
    let d = Diagram::new(q.clone(), &[], &[]).unwrap();
    let ray = |p: &str| rc.ray_of_path(&a.quiver().parse_path(p).unwrap()).unwrap();
    let (x, z, y1) = (a.quiver().vertex("x").unwrap(), a.quiver().vertex("z").unwrap(), a.quiver().vertex("y1").unwrap());
    let f = RayFunctor { vertices: vec![x, x, z], arrows: vec![ray("a"), ray("c1")] };
    let v = cleaving_violation(&rc, &d, &f).unwrap().unwrap();
    assert_eq!(v.condition, Condition::ReflectsZero);
    // declaring the composite zero makes it a functor; a . b1 is nonzero so it is not
    let zero = vec![q.parse_path("f.g").unwrap()];
    let d = Diagram::new(q, &zero, &[]).unwrap();
    assert!(cleaving_violation(&rc, &d, &f).unwrap().is_none_or(|v| v.condition != Condition::ReflectsZero));
    let g = RayFunctor { vertices: vec![x, x, y1], arrows: vec![ray("a"), ray("b1")] };
    assert!(matches!(cleaving_violation(&rc, &d, &g), Err(Error::IllFormedFunctor(_))));
}

#[test]
fn cyclic_diagrams_are_refused() {
    let q = Quiver::new(["s", "t"], [("m", "s", "t"), ("n", "t", "s")]).unwrap();
    assert!(matches!(Diagram::new(q, &[], &[]), Err(Error::CyclicDiagram)));
}
