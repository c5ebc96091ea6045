mod common;

use common::{all_names, load, oracle_class, path, vertex};
use noloop_core::{AlgebraBasis, Element, Field, Relation};

#[test]
fn normal_forms_match_rewriting_oracle() {
    for name in all_names() {
        let a = load(name);
        for p in a.all_paths() {
            let got = a.scalar_class(p).map(|(b, c)| (a.basis_path(b).clone(), c));
            let nf = a.path_normal_form(p);
            assert!(nf.is_zero() || nf.len() == 1, "{name}: binomial algebras have monomial normal forms");
            assert_eq!(got, oracle_class(a.presentation(), p), "{name}: {}", a.quiver().display_path(p));
        }
    }
}

#[test]
fn associativity_and_idempotents() {
    for name in all_names() {
        let a = load(name);
        let f = a.field();
        let basis: Vec<Element> = (0..a.dim()).map(|i| Element::basis(i, f)).collect();
        for u in &basis {
            for v in &basis {
                let uv = a.multiply(u, v);
                for w in &basis {
                    assert_eq!(a.multiply(&uv, w), a.multiply(u, &a.multiply(v, w)), "{name}");
                }
            }
        }
        let vc = a.quiver().vertex_count();
        let mut one = Element::zero();
        for x in 0..vc {
            one.add_term(a.trivial(x), f.one());
            for y in 0..vc {
                let exy = a.product(a.trivial(x), a.trivial(y));
                if x == y {
                    assert_eq!(exy, Element::basis(a.trivial(x), f));
                } else {
                    assert!(exy.is_zero());
                }
            }
        }
        for u in &basis {
            assert_eq!(&a.multiply(&one, u), u);
            assert_eq!(&a.multiply(u, &one), u);
        }
        let total: usize = (0..vc).flat_map(|x| (0..vc).map(move |y| (x, y))).map(|(x, y)| a.hom_space(x, y).len()).sum();
        assert_eq!(total, a.dim());
    }
}

#[test]
fn relations_normalize_to_zero() {
    for name in all_names() {
        let a = load(name);
        for r in a.presentation().relations() {
            let e = match r {
                Relation::Monomial(m) => a.path_normal_form(m),
                Relation::Binomial { left, right, coefficient } => {
                    a.normal_form(&[(a.field().one(), left.clone()), (-coefficient, right.clone())])
                }
            };
            assert!(e.is_zero(), "{name}");
        }
        for p in a.all_paths().iter().filter(|p| p.len() == a.bound()) {
            assert!(a.path_normal_form(p).is_zero());
        }
    }
}

#[test]
fn larger_bound_gives_same_algebra() {
    for name in all_names() {
        let a = load(name);
        let b = AlgebraBasis::build(&a.presentation().with_bound(a.bound() + 1).unwrap()).unwrap();
        assert_eq!(a.basis(), b.basis(), "{name}");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(a.product(i, j), b.product(i, j));
            }
        }
    }
}

#[test]
fn example1_normal_forms() {
    let a = load("example1");
    let x = vertex(&a, "x");
    let q = Field::Rational;
    assert_eq!(a.row_space(x).len(), 7);
    let names: Vec<String> = a.hom_space(x, x).iter().map(|&b| a.display_basis(b)).collect();
    assert_eq!(names, ["e[x]", "a", "a.a"]);
    let aa = a.basis_index(&path(&a, "a.a")).unwrap();
    // a.a = 2 b1.b2.b3
    assert_eq!(a.path_normal_form(&path(&a, "b1.b2.b3")), Element::term(aa, q.from_fraction(&1.into(), &2.into()).unwrap()));
    let ab1 = a.basis_index(&path(&a, "a.b1")).unwrap();
    let alpha = a.basis_index(&path(&a, "a")).unwrap();
    let b1 = a.basis_index(&path(&a, "b1")).unwrap();
    assert_eq!(a.product(alpha, b1), Element::basis(ab1, q));
    assert!(a.basis_index(&path(&a, "c1.c2")).is_none());
    let b1 = Element::basis(b1, q);
    let b2b3 = Element::basis(a.basis_index(&path(&a, "b2.b3")).unwrap(), q);
    assert_eq!(a.multiply(&b1, &b2b3), Element::term(aa, q.from_fraction(&1.into(), &2.into()).unwrap()));
    let v = a.to_vector(&Element::basis(aa, q));
    assert!(a.radical_power(2).contains(&v));
    assert!(a.radical_power(3).contains(&v));
    assert!(!a.radical_power(4).contains(&v));
    assert!(a.radical_power(a.bound()).is_zero());
    assert_eq!(a.radical_power(0).dim(), a.dim());
}

#[test]
fn small_hom_spaces() {
    let a = load("a2");
    assert_eq!(a.dim(), 3);
    let (x, y) = (vertex(&a, "x"), vertex(&a, "y"));
    assert_eq!(a.hom_space(x, y).len(), 1);
    assert_eq!(a.radical_power(1).dim(), 1);
    assert!(a.radical_power(2).is_zero());
    let k = load("kronecker");
    assert_eq!(k.hom_space(vertex(&k, "x"), vertex(&k, "y")).len(), 2);
    let l = load("loopnil3");
    assert!(l.path_normal_form(&path(&l, "a.a.a")).is_zero());
}
