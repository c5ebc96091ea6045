mod common;

use std::sync::Arc;

use common::{all_names, gen, load, px, vertex};
use noloop_core::certifier::{
    certify_no_loop, enumerate_alpha_chains, search_alpha_filtration, verify_alpha_filtration, Branch, CertifyOptions,
    Conclusion, PredicateValue, Verdict,
};
use noloop_core::module::{RightModule, Submodule};
use noloop_core::random::{random_monomial, MonomialShape};
use noloop_core::resolution::{projective_dimension, PdOutcome};
use noloop_core::text::expectations;
use noloop_core::{corpus, AlgebraBasis, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEPTH: usize = 20;

fn arrow(a: &AlgebraBasis, name: &str) -> usize {
    a.quiver().arrow_named(name).unwrap()
}

fn whole(p: &Arc<RightModule>) -> Submodule {
    Submodule::whole(p)
}

fn zero(p: &Arc<RightModule>) -> Submodule {
    Submodule::zero(p)
}

#[test]
fn example1_chain_through_a_and_c1() {
    let a = load("example1");
    let p = px(&a, "x");
    let chain = vec![whole(&p), gen(&p, &["a", "c1"]), gen(&p, &["a.a"]), zero(&p)];
    let cert = verify_alpha_filtration(&p, arrow(&a, "a"), &chain, DEPTH).unwrap();
    assert_eq!(cert.reports.len(), 2);
    assert_eq!(cert.reports[0].outcome, PdOutcome::Finite(1));
    assert_eq!(cert.reports[1].outcome, PdOutcome::Exceeds(DEPTH));
    assert_eq!(cert.verdict, Verdict::Inconclusive(DEPTH));
}

#[test]
fn loop_power_chains_on_penny_farthings() {
    for name in ["pf-case-1", "pf-case-2", "pf-case-3", "pf2-type2"] {
        let a = load(name);
        let p = px(&a, "x");
        let chain = vec![whole(&p), gen(&p, &["a"]), gen(&p, &["a.a"]), gen(&p, &["a.a.a"]), zero(&p)];
        let cert = verify_alpha_filtration(&p, arrow(&a, "a"), &chain, DEPTH).unwrap();
        assert_eq!(cert.reports.len(), 3, "{name}");
    }
}

#[test]
fn loopnil2_has_only_inconclusive_chains() {
    let a = load("loopnil2");
    let p = px(&a, "x");
    let alpha = arrow(&a, "a");
    let cert = verify_alpha_filtration(&p, alpha, &[whole(&p), gen(&p, &["a"]), zero(&p)], DEPTH).unwrap();
    assert_eq!(cert.verdict, Verdict::Inconclusive(DEPTH));
    assert_eq!(search_alpha_filtration(&p, alpha, DEPTH, 1000).unwrap(), None);
    let report = certify_no_loop(&a, 0, &CertifyOptions::default()).unwrap();
    assert_eq!(report.conclusion, Conclusion::Consistent(DEPTH));
    assert_eq!(report.branch, Branch::Search);
}

#[test]
fn perturbed_chains_are_rejected() {
    let a = load("example1");
    let p = px(&a, "x");
    let alpha = arrow(&a, "a");
    let m1 = gen(&p, &["a", "c1"]);
    let m2 = gen(&p, &["a.a"]);
    let check = |chain: &[Submodule]| verify_alpha_filtration(&p, alpha, chain, DEPTH);

    // α · P_x = <a> does not lie in <a.a>.
    assert!(matches!(check(&[whole(&p), m2.clone(), zero(&p)]), Err(Error::NotAlphaStable { index: 0, .. })));
    assert!(matches!(check(&[m1.clone(), m2.clone(), zero(&p)]), Err(Error::NotAChain(0))));
    assert!(matches!(check(&[whole(&p), m1.clone(), m2.clone()]), Err(Error::NotAChain(2))));
    assert!(matches!(check(&[whole(&p), m1.clone(), m1.clone(), zero(&p)]), Err(Error::NotAChain(2))));
    // <c1> is not above <a.a>.
    let c1 = gen(&p, &["c1"]);
    assert!(check(&[whole(&p), m1, c1, zero(&p)]).is_err());
    assert!(check(&[whole(&p)]).is_err());
    assert!(verify_alpha_filtration(&p, arrow(&a, "b1"), &[whole(&p), m2, zero(&p)], DEPTH).is_err());
}

#[test]
fn example2_submodule_of_g_has_one_chain() {
    let a = load("example2-ambient");
    let p = px(&a, "x");
    let alpha = arrow(&a, "a");
    let g = gen(&p, &["g"]);
    assert_eq!(g.describe(), ["g", "a.g"]);
    let chains = enumerate_alpha_chains(&g, alpha, 10_000).unwrap();
    assert_eq!(chains.len(), 1);
    assert_eq!(chains[0].iter().map(Submodule::dim).collect::<Vec<_>>(), [2, 1, 0]);

    // Every α-chain of P_x passes through a term with S_z as a composition factor.
    let z = vertex(&a, "z");
    let all = enumerate_alpha_chains(&whole(&p), alpha, 10_000).unwrap();
    assert!(!all.is_empty());
    for c in &all {
        let inner = &c[1..c.len() - 1];
        assert!(inner.iter().any(|m| m.dimension_vector()[z] > 0));
    }
}

fn chain_is_finite(chain: &[Submodule]) -> bool {
    chain[1..chain.len() - 1].iter().all(|m| projective_dimension(&m.to_module(), DEPTH).outcome.is_finite())
}

#[test]
fn search_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = MonomialShape { max_vertices: 3, max_arrows: 5, max_bound: 4, zero_pair: 0.4 };
    let mut checked = 0;
    let mut found = 0;
    for _ in 0..400 {
        let pres = random_monomial(&mut rng, &shape);
        let a = Arc::new(AlgebraBasis::build(&pres).unwrap());
        for x in 0..a.quiver().vertex_count() {
            let Some(alpha) = a.quiver().loops_at(x).next() else { continue };
            let p = Arc::new(RightModule::projective(&a, x).unwrap());
            // The submodule lattice grows exponentially with dim P_x.
            if p.dim() > 8 {
                continue;
            }
            let Ok(all) = enumerate_alpha_chains(&whole(&p), alpha, 5_000) else { continue };
            let expected = all.iter().any(|c| chain_is_finite(c));
            let got = search_alpha_filtration(&p, alpha, DEPTH, 50_000).unwrap();
            assert_eq!(got.is_some(), expected);
            if let Some(chain) = got {
                let cert = verify_alpha_filtration(&p, alpha, &chain, DEPTH).unwrap();
                assert!(matches!(cert.verdict, Verdict::AllFinite(_)));
                found += 1;
            }
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} looped vertices drawn");
    // A loop with pd S_x finite would be needed for a finite chain.
    assert_eq!(found, 0);
}

#[test]
fn predicates_on_example1_and_loopnil3() {
    let a = load("example1");
    let r = certify_no_loop(&a, vertex(&a, "x"), &CertifyOptions::default()).unwrap();
    assert_eq!(r.t, Some(2));
    assert_eq!(r.out.len(), 3);
    // The long morphism a.a lies in {a^2, a b1, a c1}.
    assert_eq!(r.branch, Branch::ThreeArrowsShortLong);
    assert!(r.predicates.iter().all(|p| p.value != PredicateValue::Fails), "{:?}", r.predicates);
    assert!(r.predicates.iter().filter(|p| p.value == PredicateValue::Holds).count() >= 6);

    let l3 = load("loopnil3");
    let r = certify_no_loop(&l3, 0, &CertifyOptions::default()).unwrap();
    assert!(r.predicates.iter().all(|p| matches!(p.value, PredicateValue::NotApplicable(_))));
}

#[test]
fn corpus_conclusions() {
    let opts = CertifyOptions { always_search: true, ..CertifyOptions::default() };
    for name in all_names() {
        let a = load(name);
        let file = corpus::algebra(name).unwrap().unwrap();
        let expect = expectations(&file);
        for x in 0..a.quiver().vertex_count() {
            let r = certify_no_loop(&a, x, &opts).unwrap();
            let has_loop = !r.loops.is_empty();
            assert_eq!(r.conclusion == Conclusion::NoLoop, !has_loop, "{name} {x}");
            // A loop and a finite α-filtration never occur together.
            assert!(!(has_loop && r.all_finite()), "{name} {x}");
            if has_loop {
                assert!(!r.pd_simple.outcome.is_finite(), "{name} {x}");
            }
            let key = format!("certify {}", a.quiver().vertex_name(x));
            if let Some(&want) = expect.get(key.as_str()) {
                assert_eq!(r.conclusion.to_string(), want, "{name} {x}");
            }
        }
    }
}
