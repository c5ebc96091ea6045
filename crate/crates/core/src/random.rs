//! Random monomial algebras for property tests and the acceptance sweep.

use rand::Rng;

use crate::field::Field;
use crate::quiver::{Path, Presentation, Quiver, Relation};

#[derive(Clone, Copy, Debug)]
pub struct MonomialShape {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_bound: usize,
    /// Chance that a composable pair of arrows is declared zero.
    pub zero_pair: f64,
}

impl Default for MonomialShape {
    fn default() -> Self {
        MonomialShape { max_vertices: 4, max_arrows: 6, max_bound: 6, zero_pair: 0.4 }
    }
}

/// Surviving paths of length `len`: those avoiding every zero pair.
fn surviving(q: &Quiver, zero: &[(usize, usize)], len: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
    let mut layer: Vec<Vec<usize>> = (0..q.arrows().len()).map(|a| vec![a]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &layer {
            let last = *p.last().expect("nonempty");
            for b in q.arrows_from(q.arrow(last).target) {
                if !zero.contains(&(last, b)) {
                    let mut e = p.clone();
                    e.push(b);
                    next.push(e);
                    if next.len() > cap {
                        return None;
                    }
                }
            }
        }
        layer = next;
    }
    Some(layer)
}

/// A random admissible monomial presentation over the rationals. Zero pairs
/// are drawn first; every path of length `N` that survives them becomes a
/// further zero relation. Draws needing more than 64 such relations are
/// rejected and redrawn.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, shape: &MonomialShape) -> Presentation {
    loop {
        let n = rng.gen_range(1..=shape.max_vertices);
        let m = rng.gen_range(1..=shape.max_arrows);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let arrows: Vec<(String, String, String)> = (0..m)
            .map(|i| (format!("a{i}"), names[rng.gen_range(0..n)].clone(), names[rng.gen_range(0..n)].clone()))
            .collect();
        let q = Quiver::new(names.clone(), arrows).expect("distinct generated names");
        let mut zero = Vec::new();
        for a in 0..m {
            for b in q.arrows_from(q.arrow(a).target).collect::<Vec<_>>() {
                if rng.gen_bool(shape.zero_pair) {
                    zero.push((a, b));
                }
            }
        }
        let bound = rng.gen_range(2..=shape.max_bound.max(2));
        let Some(long) = surviving(&q, &zero, bound, 64) else {
            continue;
        };
        let path = |arrows: &[usize]| -> Path { q.path(arrows).expect("composable") };
        let mut relations: Vec<Relation> = zero.iter().map(|&(a, b)| Relation::Monomial(path(&[a, b]))).collect();
        relations.extend(long.iter().map(|p| Relation::Monomial(path(p))));
        match Presentation::new(q.clone(), relations, bound, Field::Rational) {
            Ok(p) => return p,
            Err(_) => continue,
        }
    }
}
