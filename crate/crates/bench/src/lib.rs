//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use noloop_core::random::{random_monomial, MonomialShape};
use noloop_core::{corpus, AlgebraBasis, Presentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_algebra(name: &str) -> Arc<AlgebraBasis> {
    let f = corpus::algebra(name).expect("bundled").expect("parses");
    Arc::new(AlgebraBasis::build(&f.presentation).expect("builds"))
}

pub fn presentation(name: &str) -> Presentation {
    corpus::algebra(name).expect("bundled").expect("parses").presentation
}

/// A fixed batch of random monomial presentations.
pub fn random_batch(n: usize, seed: u64) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_monomial(&mut rng, &MonomialShape::default())).collect()
}
