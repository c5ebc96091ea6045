//! Acceptance criteria. Runs without the test harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use noloop_core::certifier::{
    certify_no_loop, enumerate_alpha_chains, search_alpha_filtration, verify_alpha_filtration, CertifyOptions, Conclusion,
};
use noloop_core::cleaving::{
    cleaving_violation, representation_infinite_witness, underlying_graph_type, Diagram, Family, GraphType, RayFunctor,
};
use noloop_core::module::{RightModule, Submodule};
use noloop_core::random::{random_monomial, MonomialShape};
use noloop_core::raycat::{verify_multiplicative_basis, RayCategory};
use noloop_core::resolution::{projective_dimension, PdOutcome};
use noloop_core::structure::{detect_penny_farthings, PennyFarthingType};
use noloop_core::{corpus, AlgebraBasis, Error, Path, Presentation, Quiver};
use noloopwb::graph::StructureGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Depth for projective dimensions unless a criterion says otherwise.
const DEPTH: usize = 20;
/// Depth for the random sweep; resolutions there are short or periodic early.
const SWEEP_DEPTH: usize = 12;
const SWEEP_SIZE: usize = 200;
const SWEEP_SEED: u64 = 2024;
/// Search budget per vertex in the random sweep.
const SWEEP_BUDGET: usize = 2_000;
const RANDOM_DYNKIN: usize = 20;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(name: &str) -> Arc<AlgebraBasis> {
    let f = corpus::algebra(name).expect("bundled").expect("parses");
    Arc::new(AlgebraBasis::build(&f.presentation).expect("builds"))
}

fn px(a: &Arc<AlgebraBasis>, x: &str) -> Arc<RightModule> {
    Arc::new(RightModule::projective(a, a.quiver().vertex(x).unwrap()).unwrap())
}

fn sub(p: &Arc<RightModule>, gens: &[&str]) -> Submodule {
    let q = p.algebra().quiver();
    let paths: Vec<Path> = gens.iter().map(|g| q.parse_path(g).unwrap()).collect();
    Submodule::generated_by_paths(p, &paths).unwrap()
}

fn sweep() -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let shape = MonomialShape { max_vertices: 4, max_arrows: 6, max_bound: 6, zero_pair: 0.4 };
    (0..SWEEP_SIZE).map(|_| random_monomial(&mut rng, &shape)).collect()
}

fn example1_reproduction() -> Outcome {
    let a = load("example1");
    let p = px(&a, "x");
    ensure!(p.dim() == 7, "dim e_x A = {}", p.dim());
    let figure: BTreeSet<(String, String, String)> = [
        ("e[x]", "a", "a"),
        ("e[x]", "b1", "b1"),
        ("e[x]", "c1", "c1"),
        ("a", "a.a", "a"),
        ("a", "a.b1", "b1"),
        ("b1", "b1.b2", "b2"),
        ("c1", "a.b1", "c2"),
        ("b1.b2", "a.a", "b3"),
    ]
    .iter()
    .map(|(s, t, l)| (s.to_string(), t.to_string(), l.to_string()))
    .collect();
    let g = StructureGraph::of_module("P_x", &p);
    ensure!(g.labelled_edges() == figure, "graph edges {:?}", g.labelled_edges());
    let b1 = sub(&p, &["b1"]);
    let c1 = sub(&p, &["c1"]);
    let a2 = sub(&p, &["a.a"]);
    ensure!(b1.intersect(&c1).unwrap().is_zero(), "<b1> and <c1> meet");
    ensure!(a2.intersect(&c1).unwrap().is_zero(), "<a^2> and <c1> meet");
    let chain = [Submodule::whole(&p), sub(&p, &["a", "c1"]), a2, Submodule::zero(&p)];
    let alpha = a.quiver().arrow_named("a").unwrap();
    let cert = verify_alpha_filtration(&p, alpha, &chain, DEPTH).map_err(|e| e.to_string())?;
    Ok(format!("dim 7, 8 graph edges, chain verified ({})", cert.verdict))
}

fn example2_obstruction() -> Outcome {
    let a = load("example2-ambient");
    let p = px(&a, "x");
    ensure!(p.dim() == 6, "dim P_x = {}", p.dim());
    let alpha = a.quiver().arrow_named("a").unwrap();
    let z = a.quiver().vertex("z").unwrap();
    let chains = enumerate_alpha_chains(&Submodule::whole(&p), alpha, 100_000).map_err(|e| e.to_string())?;
    ensure!(!chains.is_empty(), "no alpha-chains at all");
    for c in &chains {
        let inner = &c[1..c.len() - 1];
        ensure!(inner.iter().any(|m| m.dimension_vector()[z] > 0), "a chain avoids S_z");
    }
    let g = sub(&p, &["g"]);
    ensure!(g.describe() == ["g", "a.g"], "<g> has basis {:?}", g.describe());
    let from_g = enumerate_alpha_chains(&g, alpha, 1000).map_err(|e| e.to_string())?;
    ensure!(from_g.len() == 1, "<g> has {} alpha-chains", from_g.len());
    let dims: Vec<usize> = from_g[0].iter().map(Submodule::dim).collect();
    ensure!(dims == [2, 1, 0], "the chain of <g> is not its composition series: {dims:?}");
    let found = search_alpha_filtration(&p, alpha, DEPTH, 100_000).map_err(|e| e.to_string())?;
    ensure!(found.is_none(), "search found a finite chain");
    Ok(format!("{} alpha-chains, all through S_z; <g> has only its composition series", chains.len()))
}

fn penny_farthing_suite() -> Outcome {
    let cases = [
        ("pf-case-1", PennyFarthingType::One),
        ("pf-case-2", PennyFarthingType::One),
        ("pf-case-3", PennyFarthingType::One),
        ("pf2-type2", PennyFarthingType::Two),
    ];
    for (name, kind) in cases {
        let a = load(name);
        let scan = detect_penny_farthings(&a);
        ensure!(scan.found.len() == 1, "{name}: {} findings", scan.found.len());
        let pf = &scan.found[0];
        ensure!(pf.kind == kind, "{name}: type {}", pf.kind);
        ensure!(pf.f.windows(2).all(|w| w[0] <= w[1]), "{name}: f {:?} decreases", pf.f);
        let x = a.quiver().vertex("x").unwrap();
        ensure!(a.quiver().loops_at(x).next().is_some() && pf.base == x, "{name}: base is not x");
        let p = px(&a, "x");
        let chain = [Submodule::whole(&p), sub(&p, &["a"]), sub(&p, &["a.a"]), sub(&p, &["a.a.a"]), Submodule::zero(&p)];
        let alpha = a.quiver().arrow_named("a").unwrap();
        verify_alpha_filtration(&p, alpha, &chain, DEPTH).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("one finding each with the expected type, base x, chains alpha-stable".into())
}

fn ray_category_properties() -> Outcome {
    let mut checked = Vec::new();
    for (name, _) in corpus::ALGEBRAS {
        let a = load(name);
        if !verify_multiplicative_basis(&a) {
            continue;
        }
        let rc = RayCategory::build(&a).map_err(|e| format!("{name}: {e}"))?;
        ensure!(rc.check_cancellation(), "{name}: cancellation fails");
        let n = a.quiver().vertex_count();
        for x in 0..n {
            for y in 0..n {
                ensure!(rc.hom(x, y).len() == a.hom_space(x, y).len(), "{name}: ray count differs at ({x},{y})");
            }
        }
        ensure!(rc.functor_witness().is_none(), "{name}: path functor not multiplicative");
        checked.push(*name);
    }
    Ok(format!("{} standard algebras checked", checked.len()))
}

fn homology_oracle(algebras: &[Presentation]) -> Outcome {
    let mut finite = 0;
    let mut modules = 0;
    for (i, p) in algebras.iter().enumerate() {
        let a = Arc::new(AlgebraBasis::build(p).map_err(|e| format!("#{i}: {e}"))?);
        let n = a.quiver().vertex_count();
        for x in 0..n {
            let r = projective_dimension(&RightModule::simple(&a, x).unwrap(), SWEEP_DEPTH);
            modules += 1;
            ensure!(r.minimal, "#{i} S_{x}: a syzygy leaves the radical");
            if let PdOutcome::Finite(_) = r.outcome {
                let mut want = vec![0i128; n];
                want[x] = 1;
                ensure!(r.euler_sum(&a) == want, "#{i} S_{x}: Euler sum {:?}", r.euler_sum(&a));
                finite += 1;
            }
        }
    }
    Ok(format!("{modules} simples over {} algebras, {finite} finite, all exact", algebras.len()))
}

fn tree(rng: &mut ChaCha8Rng, arms: &[usize]) -> Quiver {
    let mut edges = Vec::new();
    let mut n = 1;
    for &l in arms {
        let mut prev = 0;
        for _ in 0..l {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
    }
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

fn euclidean_recognizer() -> Outcome {
    let shapes = [
        ("square", GraphType::Euclidean(Family::A, 3)),
        ("shape-d4", GraphType::Euclidean(Family::D, 4)),
        ("shape-d5", GraphType::Euclidean(Family::D, 5)),
        ("shape-e6", GraphType::Euclidean(Family::E, 6)),
        ("shape-e7", GraphType::Euclidean(Family::E, 7)),
    ];
    for (name, want) in shapes {
        let f = corpus::diagram(name).unwrap().map_err(|e| e.to_string())?;
        let got = underlying_graph_type(&f.quiver);
        ensure!(got == want, "{name}: {got}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..RANDOM_DYNKIN {
        let arms = match rng.gen_range(0..3) {
            0 => vec![rng.gen_range(0..8)],
            1 => vec![1, 1, rng.gen_range(1..5)],
            _ => vec![1, 2, rng.gen_range(2..5)],
        };
        let got = underlying_graph_type(&tree(&mut rng, &arms));
        ensure!(matches!(got, GraphType::Dynkin(..)), "arms {arms:?}: {got}");
    }
    Ok(format!("5 shapes recognised, {RANDOM_DYNKIN} random Dynkin graphs non-Euclidean"))
}

fn cleaving_checker() -> Outcome {
    let a = load("cleave-witness");
    let rc = RayCategory::build(&a).map_err(|e| e.to_string())?;
    let file = corpus::diagram("square").unwrap().map_err(|e| e.to_string())?;
    let d = Diagram::from_file(&file).map_err(|e| e.to_string())?;
    let f = RayFunctor::from_file(&rc, &d, &file).map_err(|e| e.to_string())?;
    ensure!(cleaving_violation(&rc, &d, &f).map_err(|e| e.to_string())?.is_none(), "square is not cleaving");
    let long = rc.long_morphisms();
    ensure!(!long.is_empty(), "no long morphism");
    let eta = long[0];
    let w = representation_infinite_witness(&rc, &d, &f, Some(eta)).map_err(|e| e.to_string())?;
    ensure!(w.is_witness(), "no witness after the quotient: {w:?}");

    let b = load("example1");
    let rb = RayCategory::build(&b).map_err(|e| e.to_string())?;
    let file = corpus::diagram("square-example1").unwrap().map_err(|e| e.to_string())?;
    let d = Diagram::from_file(&file).map_err(|e| e.to_string())?;
    let rejected = match RayFunctor::from_file(&rb, &d, &file) {
        Err(Error::IllFormedFunctor(_)) => true,
        Err(e) => return Err(e.to_string()),
        Ok(f) => !matches!(cleaving_violation(&rb, &d, &f), Ok(None)),
    };
    ensure!(rejected, "square accepted over example1");
    Ok(format!("witness after setting {} to zero; example1 rejects the square", rc.display(eta)))
}

fn mutual_exclusion(algebras: &[Presentation]) -> Outcome {
    let opts = CertifyOptions { depth: SWEEP_DEPTH, budget: SWEEP_BUDGET, always_search: false };
    let mut runs = 0;
    let mut looped = 0;
    let mut check = |a: &Arc<AlgebraBasis>, label: &str, opts: &CertifyOptions| -> Result<(), String> {
        for x in 0..a.quiver().vertex_count() {
            let r = certify_no_loop(a, x, opts).map_err(|e| format!("{label} {x}: {e}"))?;
            runs += 1;
            let has_loop = !r.loops.is_empty();
            looped += has_loop as usize;
            ensure!(
                !(has_loop && r.all_finite() && r.pd_simple.outcome.is_finite()),
                "{label} {x}: loop, AllFinite certificate and finite pd together"
            );
            ensure!(r.conclusion != Conclusion::Contradiction, "{label} {x}: contradiction reported");
        }
        Ok(())
    };
    let corpus_opts = CertifyOptions { depth: DEPTH, ..CertifyOptions::default() };
    for (name, _) in corpus::ALGEBRAS {
        check(&load(name), name, &corpus_opts)?;
    }
    for (i, p) in algebras.iter().enumerate() {
        let a = Arc::new(AlgebraBasis::build(p).map_err(|e| e.to_string())?);
        check(&a, &format!("#{i}"), &opts)?;
    }
    let l2 = load("loopnil2");
    for d in 1..=50 {
        let r = certify_no_loop(&l2, 0, &CertifyOptions { depth: d, ..CertifyOptions::default() }).map_err(|e| e.to_string())?;
        ensure!(r.pd_simple.outcome == PdOutcome::Exceeds(d), "loopnil2 at depth {d}: {}", r.pd_simple.outcome);
        ensure!(r.conclusion == Conclusion::Consistent(d), "loopnil2 at depth {d}: {}", r.conclusion);
        ensure!(d < 2 || r.pd_simple.periodicity.is_some(), "loopnil2 at depth {d}: no periodicity hint");
    }
    Ok(format!("{runs} runs, {looped} with a loop; loopnil2 Exceeds(D) for D = 1..50 with periodicity"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let algebras = sweep();
    let criteria: Vec<Criterion> = vec![
        ("example-1 reproduction", Box::new(example1_reproduction)),
        ("example-2 obstruction", Box::new(example2_obstruction)),
        ("penny-farthing suite", Box::new(penny_farthing_suite)),
        ("ray-category properties", Box::new(ray_category_properties)),
        ("homology oracle equivalence", Box::new(|| homology_oracle(&algebras))),
        ("euclidean recognizer", Box::new(euclidean_recognizer)),
        ("cleaving checker", Box::new(cleaving_checker)),
        ("certifier mutual exclusion", Box::new(|| mutual_exclusion(&algebras))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
